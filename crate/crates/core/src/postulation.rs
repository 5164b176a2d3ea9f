//! Hilbert functions of double points and doubled codimension-two spaces.
//!
//! A form of degree `d` is singular at a point iff its first partials vanish there; the value
//! condition follows from Euler's relation and is not repeated. A form is singular along a space
//! `{y0 = y1 = 0}` iff it has no monomial of degree at most one in `(y0, y1)`; other spaces are
//! moved there first.

use std::collections::HashMap;
use std::fmt;

use crate::construct::{construct_np2_one_space, construct_through_points};
use crate::curve::ParamRnc;
use crate::error::{Error, Result};
use crate::kernel::{ff_rank, Matrix};
use crate::projective::{Pencil, ProjPoint, ProjTransform, Transformable};
use crate::random::generic_points;
use crate::scalar::Field;

/// A scheme of double points and doubled codimension-two spaces, with the degree at which its
/// Hilbert function is evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeSpec<F> {
    n: usize,
    double_points: Vec<ProjPoint<F>>,
    double_spaces: Vec<Pencil<F>>,
    degree: usize,
}

impl<F: Field> SchemeSpec<F> {
    pub fn new(n: usize, double_points: Vec<ProjPoint<F>>, double_spaces: Vec<Pencil<F>>, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Unsupported("degree must be at least 1".into()));
        }
        for p in &double_points {
            Error::check_dim(n, p.dim())?;
        }
        for lam in &double_spaces {
            Error::check_dim(n, lam.dim())?;
        }
        Ok(SchemeSpec { n, double_points, double_spaces, degree })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn double_points(&self) -> &[ProjPoint<F>] {
        &self.double_points
    }

    pub fn double_spaces(&self) -> &[Pencil<F>] {
        &self.double_spaces
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `n + 2` double points and one double space in degree 4.
    pub fn is_secant_shape(&self) -> bool {
        self.degree == 4 && self.double_points.len() == self.n + 2 && self.double_spaces.len() == 1
    }
}

impl<F: Field> Transformable<F> for SchemeSpec<F> {
    fn transformed(&self, t: &ProjTransform<F>) -> Result<Self> {
        SchemeSpec::new(
            self.n,
            self.double_points.iter().map(|p| p.transformed(t)).collect::<Result<_>>()?,
            self.double_spaces.iter().map(|l| l.transformed(t)).collect::<Result<_>>()?,
            self.degree,
        )
    }
}

/// Exponent vectors of the degree-`d` monomials in `n + 1` variables, lexicographically
/// decreasing (`x0^d` first).
pub fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn fill(rest: usize, vars: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if vars == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=rest).rev() {
            prefix.push(e);
            fill(rest - e, vars - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(d, n + 1, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn pow<F: Field>(x: &F, e: usize) -> F {
    (0..e).fold(F::one(), |acc, _| acc * x.clone())
}

/// Rows `d/dx_i` of the monomial basis at `p`, for `i = 0..=n`.
fn point_rows<F: Field>(basis: &[Vec<usize>], p: &ProjPoint<F>) -> Vec<Vec<F>> {
    let x = p.coords();
    (0..x.len())
        .map(|i| {
            basis
                .iter()
                .map(|a| {
                    if a[i] == 0 {
                        return F::zero();
                    }
                    let mut v = F::from_i64(a[i] as i64);
                    for (k, (xk, &ek)) in x.iter().zip(a).enumerate() {
                        v = v * pow(xk, if k == i { ek - 1 } else { ek });
                    }
                    v
                })
                .collect()
        })
        .collect()
}

type Poly<F> = HashMap<Vec<usize>, F>;

fn mul_linear<F: Field>(f: &Poly<F>, l: &[F]) -> Poly<F> {
    let mut out: Poly<F> = HashMap::new();
    for (mono, c) in f {
        for (j, lj) in l.iter().enumerate() {
            if lj.is_zero() {
                continue;
            }
            let mut m = mono.clone();
            m[j] += 1;
            let e = out.entry(m).or_insert_with(F::zero);
            *e = e.clone() + c.clone() * lj.clone();
        }
    }
    out
}

/// A transform sending `lam` to `{x0 = x1 = 0}`.
pub fn adapted_transform<F: Field>(lam: &Pencil<F>) -> ProjTransform<F> {
    let n = lam.dim();
    let canonical = lam.canonical();
    let (_, pivots) = canonical.rref();
    let mut rows = vec![canonical.row(0).to_vec(), canonical.row(1).to_vec()];
    for j in (0..=n).filter(|j| !pivots.contains(j)) {
        let mut e = vec![F::zero(); n + 1];
        e[j] = F::one();
        rows.push(e);
    }
    ProjTransform::new(Matrix::from_rows(rows, n + 1)).expect("pivot completion is invertible")
}

/// Rows for a doubled space: in adapted coordinates `y = Bx`, the coefficient of each
/// `y`-monomial of `(y0, y1)`-degree at most one in `F(B^-1 y)`.
fn space_rows<F: Field>(basis: &[Vec<usize>], lam: &Pencil<F>) -> Vec<Vec<F>> {
    let n = lam.dim();
    let d = basis[0].iter().sum::<usize>();
    let a = adapted_transform(lam).inverse_matrix().clone();
    // powers[i][e] = (row i of A . y)^e
    let powers: Vec<Vec<Poly<F>>> = (0..=n)
        .map(|i| {
            let mut p: Poly<F> = HashMap::from([(vec![0; n + 1], F::one())]);
            let mut out = vec![p.clone()];
            for _ in 0..d {
                p = mul_linear(&p, a.row(i));
                out.push(p.clone());
            }
            out
        })
        .collect();
    let images: Vec<Poly<F>> = basis
        .iter()
        .map(|exps| {
            let mut acc: Poly<F> = HashMap::from([(vec![0; n + 1], F::one())]);
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut next: Poly<F> = HashMap::new();
                for (m1, c1) in &acc {
                    for (m2, c2) in &powers[i][e] {
                        let m: Vec<usize> = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
                        let entry = next.entry(m).or_insert_with(F::zero);
                        *entry = entry.clone() + c1.clone() * c2.clone();
                    }
                }
                acc = next;
            }
            acc
        })
        .collect();
    basis
        .iter()
        .filter(|m| m[0] + m[1] <= 1)
        .map(|m| images.iter().map(|img| img.get(m).cloned().unwrap_or_else(F::zero)).collect())
        .collect()
}

fn point_condition_count(n: usize) -> usize {
    n + 1
}

fn space_condition_count(n: usize, d: usize) -> usize {
    let plain = |deg: usize| binomial(deg + n - 2, n - 2);
    plain(d) + if d >= 1 { 2 * plain(d - 1) } else { 0 }
}

/// The linear conditions imposed by the scheme on the degree-`d` forms, columns indexed by
/// [`monomials`].
pub fn conditions_rows<F: Field>(spec: &SchemeSpec<F>) -> Matrix<F> {
    let basis = monomials(spec.n, spec.degree);
    let mut rows = Vec::new();
    for p in &spec.double_points {
        rows.extend(point_rows(&basis, p));
    }
    for lam in &spec.double_spaces {
        rows.extend(space_rows(&basis, lam));
    }
    Matrix::from_rows(rows, basis.len())
}

/// `(n+2)(n+1) + C(n+2, 4) + 2 C(n+1, 3)`, the naive count for `n + 2` double points and one
/// double space in degree 4.
pub fn secant_shape_count(n: usize) -> usize {
    (n + 2) * (n + 1) + binomial(n + 2, 4) + 2 * binomial(n + 1, 3)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PostulationReport {
    pub n: usize,
    pub degree: usize,
    pub total_monomials: usize,
    /// Conditions per item: the points first, then the spaces.
    pub item_conditions: Vec<usize>,
    pub conditions: usize,
    /// `min(total_monomials, conditions)`.
    pub expected: usize,
    /// Present for `n + 2` double points and one double space in degree 4.
    pub h_formula_value: Option<usize>,
    pub actual_hf: usize,
    pub deficit: usize,
    pub note: Option<String>,
}

impl fmt::Display for PostulationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {} forms on P^{}: {} monomials", self.degree, self.n, self.total_monomials)?;
        writeln!(f, "conditions {} (expected rank {})", self.conditions, self.expected)?;
        if let Some(h) = self.h_formula_value {
            writeln!(f, "h = {h}")?;
        }
        write!(f, "H(X, {}) = {}, deficit {}", self.degree, self.actual_hf, self.deficit)?;
        if let Some(note) = &self.note {
            write!(f, "\n{note}")?;
        }
        Ok(())
    }
}

pub fn hilbert_function<F: Field>(spec: &SchemeSpec<F>) -> PostulationReport {
    let (n, d) = (spec.n, spec.degree);
    let total_monomials = binomial(n + d, d);
    let item_conditions: Vec<usize> = std::iter::repeat_n(point_condition_count(n), spec.double_points.len())
        .chain(std::iter::repeat_n(space_condition_count(n, d), spec.double_spaces.len()))
        .collect();
    let conditions = item_conditions.iter().sum();
    let expected = total_monomials.min(conditions);
    let actual_hf = ff_rank(&conditions_rows(spec));
    let deficit = expected - actual_hf;
    let h_formula_value = spec.is_secant_shape().then(|| secant_shape_count(n));
    let note = (spec.is_secant_shape() && deficit > 0)
        .then(|| format!("the associated Segre-Veronese variety is {}-defective", n + 1));
    PostulationReport {
        n,
        degree: d,
        total_monomials,
        item_conditions,
        conditions,
        expected,
        h_formula_value,
        actual_hf,
        deficit,
        note,
    }
}

/// An intersection count on a curve exceeding what Bezout allows, forcing the hypersurface to
/// contain the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLedger {
    pub terms: Vec<usize>,
    pub bound: usize,
}

impl IntersectionLedger {
    pub fn total(&self) -> usize {
        self.terms.iter().sum()
    }

    pub fn holds(&self) -> bool {
        self.total() > self.bound
    }
}

impl fmt::Display for IntersectionLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(usize::to_string).collect();
        let cmp = if self.holds() { ">" } else { "<=" };
        write!(f, "{} = {} {cmp} {}", terms.join(" + "), self.total(), self.bound)
    }
}

/// The curve behind a Hilbert deficit.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectWitness<F> {
    pub curve: ParamRnc<F>,
    pub ledger: IntersectionLedger,
}

/// For `n + 2` double points and one double space in degree 4, the curve through the points
/// secant to the space: a quartic singular along the scheme restricts to it with
/// `1 + 2(n+1) + 2(n-1) > 4n` zeros. For seven double points in P^4 and cubics, the curve
/// through the seven points: `7 * 2 > 3 * 4`.
pub fn defect_explanation<F: Field>(spec: &SchemeSpec<F>) -> Result<DefectWitness<F>> {
    let n = spec.n;
    if spec.is_secant_shape() {
        let cert = construct_np2_one_space(&spec.double_points, &spec.double_spaces[0])?;
        let ledger = IntersectionLedger { terms: vec![1, 2 * (n + 1), 2 * (n - 1)], bound: 4 * n };
        Ok(DefectWitness { curve: cert.curve, ledger })
    } else if (n, spec.double_points.len(), spec.degree) == (4, 7, 3) && spec.double_spaces.is_empty() {
        let cert = construct_through_points(&spec.double_points)?;
        let ledger = IntersectionLedger { terms: vec![2; 7], bound: 3 * n };
        Ok(DefectWitness { curve: cert.curve, ledger })
    } else {
        Err(Error::Unsupported(
            "a curve witness exists only for n+2 double points with one double space in degree 4, or 7 double points in P^4 in degree 3"
                .into(),
        ))
    }
}

/// One line of [`ah_exceptions_suite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePointRow {
    pub n: usize,
    pub p: usize,
    pub d: usize,
    pub total_monomials: usize,
    pub conditions: usize,
    pub expected: usize,
    pub actual: usize,
    pub deficit: usize,
    /// False for control cases.
    pub exceptional: bool,
}

impl fmt::Display for DoublePointRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} p={} d={}: expected {} actual {} deficit {}{}",
            self.n,
            self.p,
            self.d,
            self.expected,
            self.actual,
            self.deficit,
            if self.exceptional { "" } else { " (control)" }
        )
    }
}

/// `p` seeded generic double points in P^n, degree `d`.
pub fn double_points_row<F: Field>(n: usize, p: usize, d: usize, seed: u64, exceptional: bool) -> DoublePointRow {
    let spec = SchemeSpec::<F>::new(n, generic_points(n, p, seed), Vec::new(), d).expect("dimensions agree by construction");
    let r = hilbert_function(&spec);
    DoublePointRow {
        n,
        p,
        d,
        total_monomials: r.total_monomials,
        conditions: r.conditions,
        expected: r.expected,
        actual: r.actual_hf,
        deficit: r.deficit,
        exceptional,
    }
}

/// The exceptional double-point cases with `d >= 3`, plus one control.
pub const AH_CASES: [(usize, usize, usize, bool); 5] =
    [(2, 5, 4, true), (3, 9, 4, true), (4, 14, 4, true), (4, 7, 3, true), (2, 5, 3, false)];

pub fn ah_exceptions_suite<F: Field>() -> Vec<DoublePointRow> {
    AH_CASES.iter().map(|&(n, p, d, exceptional)| double_points_row::<F>(n, p, d, 0, exceptional)).collect()
}
