//! Non-existence certificates for data with at least four points and two spaces.
//!
//! A quadric through two codimension-two spaces and three points exists for dimension reasons.
//! A curve satisfying the datum would meet it in a scheme of degree at least `2n + 1`, above the
//! Bezout bound `2n`, so the curve would lie on the quadric. A fourth point off the quadric rules
//! the curve out.

use std::fmt;

use crate::datum::Datum;
use crate::error::{Error, Result};
use crate::kernel::{linsolve, normalize_last, Matrix};
use crate::projective::{quadric_monomials, quadric_polar_row, quadric_row, Pencil, ProjPoint, Quadric};
use crate::scalar::Field;

/// Rows whose vanishing on a quadric's coefficients means the quadric contains the space.
fn containment_rows<F: Field>(lam: &Pencil<F>) -> Vec<Vec<F>> {
    let w = lam.spanning_points();
    let mut rows = Vec::new();
    for r in 0..w.len() {
        rows.push(quadric_row(&w[r]));
        for s in r + 1..w.len() {
            rows.push(quadric_polar_row(&w[r], &w[s]));
        }
    }
    rows
}

/// Whether `q = f*a + g*b` for some linear forms `a`, `b`, with `(f, g)` the pencil's forms.
pub fn quadric_contains_pencil<F: Field>(q: &Quadric<F>, lam: &Pencil<F>) -> bool {
    let n = q.dim();
    if lam.dim() != n {
        return false;
    }
    let monomials = quadric_monomials(n);
    let [f, g] = lam.canonical_forms();
    // unknowns: a_0..a_n, b_0..b_n
    let system = Matrix::from_fn(monomials.len(), 2 * (n + 1), |m, k| {
        let (i, j) = monomials[m];
        let (form, v) = if k <= n { (&f, k) } else { (&g, k - n - 1) };
        let c = form.coeffs();
        if i == j {
            if v == i {
                c[i].clone()
            } else {
                F::zero()
            }
        } else if v == i {
            c[j].clone()
        } else if v == j {
            c[i].clone()
        } else {
            F::zero()
        }
    });
    linsolve(&system, q.coeffs()).is_some()
}

/// The quadric containing `l1`, `l2` and the three points, normalized so that its last nonzero
/// coefficient (monomials in lexicographic order) is one.
pub fn obstruction_quadric<F: Field>(
    l1: &Pencil<F>,
    l2: &Pencil<F>,
    p1: &ProjPoint<F>,
    p2: &ProjPoint<F>,
    p3: &ProjPoint<F>,
) -> Result<Quadric<F>> {
    let n = l1.dim();
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    Error::check_dim(n, l2.dim())?;
    for p in [p1, p2, p3] {
        Error::check_dim(n, p.dim())?;
    }
    let mut rows = containment_rows(l1);
    rows.extend(containment_rows(l2));
    for p in [p1, p2, p3] {
        rows.push(quadric_row(p.coords()));
    }
    let width = quadric_monomials(n).len();
    let kernel = Matrix::from_rows(rows, width).nullspace();
    if kernel.len() != 1 {
        return Err(Error::not_generic(
            "obstruction quadric",
            format!("space of quadrics through the spaces and points has dimension {}", kernel.len()),
        ));
    }
    Quadric::new(n, normalize_last(&kernel[0]))
}

/// `3 + 2(n-1) = 2n + 1` against `2 * deg C = 2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeLedger {
    pub n: usize,
    pub intersection_lower_bound: usize,
    pub bezout_bound: usize,
}

impl DegreeLedger {
    pub fn new(n: usize) -> Self {
        DegreeLedger { n, intersection_lower_bound: 3 + 2 * (n - 1), bezout_bound: 2 * n }
    }

    pub fn holds(&self) -> bool {
        self.intersection_lower_bound == 2 * self.n + 1
            && self.bezout_bound == 2 * self.n
            && self.intersection_lower_bound > self.bezout_bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub spaces: [bool; 2],
    pub points: [bool; 3],
}

impl Containment {
    pub fn all(&self) -> bool {
        self.spaces.iter().chain(&self.points).all(|&b| b)
    }
}

/// Checkable evidence that no curve satisfies a datum.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionCertificate<F> {
    pub quadric: Quadric<F>,
    pub spaces: [Pencil<F>; 2],
    pub points: [ProjPoint<F>; 3],
    pub contains: Containment,
    pub excluded_point: ProjPoint<F>,
    pub excluded_value: F,
    pub ledger: DegreeLedger,
}

impl<F: Field> ObstructionCertificate<F> {
    pub fn dim(&self) -> usize {
        self.quadric.dim()
    }

    fn containment(&self) -> Containment {
        Containment {
            spaces: [0, 1].map(|i| quadric_contains_pencil(&self.quadric, &self.spaces[i])),
            points: [0, 1, 2].map(|i| self.quadric.eval(&self.points[i]).is_zero()),
        }
    }

    /// Recomputes every checkable claim from the stored data.
    pub fn verify(&self) -> bool {
        let contains = self.containment();
        let value = self.quadric.eval(&self.excluded_point);
        contains.all()
            && contains == self.contains
            && !value.is_zero()
            && value == self.excluded_value
            && self.ledger == DegreeLedger::new(self.dim())
            && self.ledger.holds()
    }
}

impl<F: Field> fmt::Display for ObstructionCertificate<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let yes = |b: bool| if b { "yes" } else { "NO" };
        writeln!(f, "non-existence certificate in P^{n}")?;
        writeln!(f, "  quadric Q = {}", self.quadric)?;
        for (i, s) in self.spaces.iter().enumerate() {
            writeln!(f, "  Q contains L{} = {s}: {}", i + 1, yes(self.contains.spaces[i]))?;
        }
        for (i, p) in self.points.iter().enumerate() {
            writeln!(f, "  Q(P{}) = 0 for P{} = {p}: {}", i + 1, i + 1, yes(self.contains.points[i]))?;
        }
        writeln!(f, "  Q(P4) = {} for P4 = {}", self.excluded_value, self.excluded_point)?;
        writeln!(
            f,
            "  a curve through P1, P2, P3 and (n-1)-secant to L1, L2 meets Q in degree >= 3 + 2(n-1) = {}",
            self.ledger.intersection_lower_bound
        )?;
        writeln!(f, "  Bezout: a curve of degree {n} not on Q meets it in degree <= {}", self.ledger.bezout_bound)?;
        write!(f, "  so the curve lies on Q, which is impossible since Q(P4) != 0")
    }
}

/// Builds the certificate from the first two spaces and the first four points.
pub fn nonexistence_certificate<F: Field>(d: &Datum<F>) -> Result<ObstructionCertificate<F>> {
    let (p, l) = d.shape();
    if p < 4 || l < 2 {
        return Err(Error::Unsupported(format!(
            "an obstruction needs at least four points and two spaces, got (p, l) = ({p}, {l})"
        )));
    }
    let s = d.spaces();
    let pts = d.points();
    let quadric = obstruction_quadric(&s[0], &s[1], &pts[0], &pts[1], &pts[2])?;
    let excluded_value = quadric.eval(&pts[3]);
    if excluded_value.is_zero() {
        return Err(Error::ObstructionFails { value: excluded_value.to_string() });
    }
    let mut cert = ObstructionCertificate {
        quadric,
        spaces: [s[0].clone(), s[1].clone()],
        points: [pts[0].clone(), pts[1].clone(), pts[2].clone()],
        contains: Containment { spaces: [false; 2], points: [false; 3] },
        excluded_point: pts[3].clone(),
        excluded_value,
        ledger: DegreeLedger::new(d.dim()),
    };
    cert.contains = cert.containment();
    if !cert.contains.all() {
        return Err(Error::not_generic("obstruction quadric", "containment check failed"));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use num_traits::Zero;
    use rand::Rng;
    use crate::scalar::ints;
    use crate::Scalar;

    type P = ProjPoint<Scalar>;

    fn lines() -> (Pencil<Scalar>, Pencil<Scalar>) {
        (
            Pencil::from_ints(&[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap(),
            Pencil::from_ints(&[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap(),
        )
    }

    fn base_points() -> Vec<P> {
        vec![P::from_ints(&[1, 1, 1, 1]), P::from_ints(&[1, 2, 4, 8]), P::from_ints(&[1, 3, 9, 27])]
    }

    #[test]
    fn quadric_through_two_lines_and_three_points() {
        let (a, b) = lines();
        let pts = base_points();
        let q = obstruction_quadric(&a, &b, &pts[0], &pts[1], &pts[2]).unwrap();
        // x1*x2 - x0*x3
        let mut want = vec![Scalar::from_i64(0); 10];
        want[3] = Scalar::from_i64(-1);
        want[5] = Scalar::from_i64(1);
        assert_eq!(q.coeffs(), &want[..]);
        assert!(quadric_contains_pencil(&q, &a) && quadric_contains_pencil(&q, &b));
    }

    #[test]
    fn quadric_vanishes_on_sampled_line_points() {
        let (a, b) = lines();
        let pts = base_points();
        let q = obstruction_quadric(&a, &b, &pts[0], &pts[1], &pts[2]).unwrap();
        let mut rng = random::rng(3);
        for lam in [&a, &b] {
            let w = lam.spanning_points();
            for _ in 0..20 {
                let s = Scalar::from_i64(rng.gen_range(-50..=50));
                let x: Vec<Scalar> = w[0].iter().zip(&w[1]).map(|(u, v)| s.clone() * u.clone() + v.clone()).collect();
                assert!(q.eval_coords(&x).is_zero());
            }
        }
        for p in &pts {
            assert!(q.eval(p).is_zero());
        }
    }

    #[test]
    fn certificate_examples() {
        let (a, b) = lines();
        let mut pts = base_points();
        pts.push(P::from_ints(&[1, 1, 2, 3]));
        let d = Datum::new(3, vec![a.clone(), b.clone()], pts.clone()).unwrap();
        let cert = nonexistence_certificate(&d).unwrap();
        assert_eq!(cert.excluded_value, Scalar::from_i64(-1));
        assert_eq!((cert.ledger.intersection_lower_bound, cert.ledger.bezout_bound), (7, 6));
        assert!(cert.verify());

        pts[3] = P::from_ints(&[1, 5, 25, 125]);
        let d = Datum::new(3, vec![a, b], pts).unwrap();
        assert!(matches!(nonexistence_certificate(&d), Err(Error::ObstructionFails { .. })));
    }

    #[test]
    fn tampered_certificate_fails() {
        let (a, b) = lines();
        let mut pts = base_points();
        pts.push(P::from_ints(&[1, 1, 2, 3]));
        let cert = nonexistence_certificate(&Datum::new(3, vec![a, b], pts).unwrap()).unwrap();
        let mut bad = cert.clone();
        bad.excluded_value = Scalar::from_i64(5);
        assert!(!bad.verify());
        let mut bad = cert;
        bad.quadric = Quadric::new(3, ints(&[0, 0, 0, 0, 0, 1, 0, 0, 0, 0])).unwrap();
        assert!(!bad.verify());
    }

    #[test]
    fn generic_quadric_space_is_one_dimensional() {
        for n in 3..=6 {
            for seed in 0..5 {
                let d = random::generic_datum::<Scalar>(n, 4, 2, seed);
                let s = d.spaces();
                let p = d.points();
                let q = obstruction_quadric(&s[0], &s[1], &p[0], &p[1], &p[2]).unwrap();
                assert!(!q.is_zero());
            }
        }
    }
}
