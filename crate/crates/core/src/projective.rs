//! Points, linear forms, codimension-two spaces and projective transformations of P^n.
//!
//! A codimension-two space is stored as a pencil of linear forms `{f = g = 0}`; two pencils are
//! equal when the reduced row echelon forms of their coefficient stacks agree.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{dot, Matrix};
use crate::scalar::Field;

/// A point of P^n in a canonical scaling: its first nonzero coordinate is one, then
/// [`Field::primitive`] is applied (for big rationals: coprime integers, first nonzero
/// coordinate positive).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint<F> {
    coords: Vec<F>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(coords: Vec<F>) -> Result<Self> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::ZeroVector);
        };
        let inv = first.inv();
        let scaled: Vec<F> = coords.iter().map(|c| c.clone() * inv.clone()).collect();
        Ok(ProjPoint { coords: F::primitive(&scaled) })
    }

    /// Panics if all coordinates are zero.
    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(crate::scalar::ints(coords)).expect("zero point")
    }

    /// The coordinate point `e_i` of P^n.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coords = vec![F::zero(); n + 1];
        coords[i] = F::one();
        ProjPoint { coords }
    }

    /// The unit point `(1:...:1)`.
    pub fn unit(n: usize) -> Self {
        ProjPoint { coords: vec![F::one(); n + 1] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// A linear form `sum c_i x_i` on P^n.
#[derive(Clone, Debug, PartialEq)]
pub struct LinForm<F> {
    coeffs: Vec<F>,
}

impl<F: Field> LinForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a linear form needs at least one coefficient");
        LinForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(crate::scalar::ints(coeffs))
    }

    /// The coordinate function `x_i` on P^n.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[i] = F::one();
        LinForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        LinForm { coeffs: vec![F::zero(); n + 1] }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, p: &ProjPoint<F>) -> F {
        dot(&self.coeffs, p.coords())
    }

    pub fn eval_coords(&self, x: &[F]) -> F {
        dot(&self.coeffs, x)
    }

    /// A convenient nonzero multiple; see [`Field::primitive`].
    pub fn primitive(&self) -> Self {
        LinForm { coeffs: F::primitive(&self.coeffs) }
    }

    pub fn scale(&self, c: &F) -> Self {
        LinForm { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "adding linear forms on different spaces");
        LinForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    /// `a*self + b*other`.
    pub fn combine(&self, a: &F, other: &Self, b: &F) -> Self {
        self.scale(a).add(&other.scale(b))
    }

    /// `sum weights[i] * forms[i]`.
    pub fn sum(n: usize, weights: &[F], forms: &[LinForm<F>]) -> Self {
        forms.iter().zip(weights).fold(Self::zero(n), |acc, (f, w)| acc.add(&f.scale(w)))
    }
}

impl<F: Field> fmt::Display for LinForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    format!("x{i}")
                } else if *c == -F::one() {
                    format!("-x{i}")
                } else {
                    format!("({c})*x{i}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// A codimension-two linear space `{f = g = 0}`.
#[derive(Clone, Debug)]
pub struct Pencil<F> {
    f: LinForm<F>,
    g: LinForm<F>,
    canonical: Matrix<F>,
}

impl<F: Field> Pencil<F> {
    pub fn new(f: LinForm<F>, g: LinForm<F>) -> Result<Self> {
        Error::check_dim(f.dim(), g.dim())?;
        let stack = Matrix::from_rows(vec![f.coeffs.clone(), g.coeffs.clone()], f.dim() + 1);
        let (canonical, pivots) = stack.rref();
        if pivots.len() != 2 {
            return Err(Error::DegeneratePencil);
        }
        Ok(Pencil { f: f.primitive(), g: g.primitive(), canonical })
    }

    pub fn from_ints(f: &[i64], g: &[i64]) -> Result<Self> {
        Self::new(LinForm::from_ints(f), LinForm::from_ints(g))
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn f(&self) -> &LinForm<F> {
        &self.f
    }

    pub fn g(&self) -> &LinForm<F> {
        &self.g
    }

    /// The reduced row echelon form of the 2 x (n+1) coefficient stack.
    pub fn canonical(&self) -> &Matrix<F> {
        &self.canonical
    }

    pub fn canonical_forms(&self) -> [LinForm<F>; 2] {
        [LinForm::new(self.canonical.row(0).to_vec()), LinForm::new(self.canonical.row(1).to_vec())]
    }

    pub fn contains_point(&self, p: &ProjPoint<F>) -> bool {
        self.f.eval(p).is_zero() && self.g.eval(p).is_zero()
    }

    /// Whether `h` lies in the span of the pencil's two forms.
    pub fn contains_form(&self, h: &LinForm<F>) -> bool {
        let row = Matrix::from_rows(vec![h.coeffs.clone()], h.coeffs.len());
        self.canonical.vstack(&row).rank() == 2
    }

    /// `n - 1` coordinate vectors spanning the zero locus.
    pub fn spanning_points(&self) -> Vec<Vec<F>> {
        self.canonical.nullspace().iter().map(|v| F::primitive(v)).collect()
    }

    /// The member `g(p) f - f(p) g` of the pencil that vanishes at `p`.
    pub fn member_through(&self, p: &ProjPoint<F>) -> Option<LinForm<F>> {
        let fp = self.f.eval(p);
        let gp = self.g.eval(p);
        if fp.is_zero() && gp.is_zero() {
            return None;
        }
        Some(self.f.combine(&gp, &self.g, &-fp).primitive())
    }
}

impl<F: PartialEq> PartialEq for Pencil<F> {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl<F: Field> fmt::Display for Pencil<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.canonical_forms();
        write!(f, "{{{a} = {b} = 0}}")
    }
}

/// Codimension-two space spanned by `n - 1` points.
pub fn pencil_from_points<F: Field>(points: &[ProjPoint<F>]) -> Result<Pencil<F>> {
    let Some(first) = points.first() else {
        return Err(Error::DegenerateSpan);
    };
    let n = first.dim();
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    Error::check_dim(n - 1, points.len())?;
    for p in points {
        Error::check_dim(n, p.dim())?;
    }
    let m = Matrix::from_rows(points.iter().map(|p| p.coords.clone()).collect(), n + 1);
    let kernel = m.nullspace();
    if kernel.len() != 2 {
        return Err(Error::DegenerateSpan);
    }
    let mut it = kernel.into_iter();
    let f = LinForm::new(it.next().unwrap());
    let g = LinForm::new(it.next().unwrap());
    Pencil::new(f, g)
}

/// A quadric hypersurface, coefficients over the monomials `x_i x_j` with `i <= j` in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadric<F> {
    n: usize,
    coeffs: Vec<F>,
}

impl<F: Field> Quadric<F> {
    pub fn new(n: usize, coeffs: Vec<F>) -> Result<Self> {
        Error::check_dim(quadric_monomials(n).len(), coeffs.len())?;
        Ok(Quadric { n, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval_coords(&self, x: &[F]) -> F {
        dot(&self.coeffs, &quadric_row(x))
    }

    pub fn eval(&self, p: &ProjPoint<F>) -> F {
        self.eval_coords(p.coords())
    }
}

impl<F: Field> fmt::Display for Quadric<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = quadric_monomials(self.n)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), c)| {
                let mono = format!("x{i}*x{j}");
                if c.is_one() {
                    mono
                } else if *c == -F::one() {
                    format!("-{mono}")
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Index pairs `(i, j)`, `i <= j`, of the quadratic monomials on P^n.
pub fn quadric_monomials(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for i in 0..=n {
        for j in i..=n {
            out.push((i, j));
        }
    }
    out
}

/// Values of the quadratic monomials at `x`.
pub fn quadric_row<F: Field>(x: &[F]) -> Vec<F> {
    let n = x.len() - 1;
    quadric_monomials(n).into_iter().map(|(i, j)| x[i].clone() * x[j].clone()).collect()
}

/// Values of the polarized quadratic monomials at `(x, y)`: the row `r` such that
/// `q(x + y) - q(x) - q(y) = r . coeffs`.
pub fn quadric_polar_row<F: Field>(x: &[F], y: &[F]) -> Vec<F> {
    let n = x.len() - 1;
    quadric_monomials(n)
        .into_iter()
        .map(|(i, j)| {
            if i == j {
                F::from_i64(2) * x[i].clone() * y[i].clone()
            } else {
                x[i].clone() * y[j].clone() + x[j].clone() * y[i].clone()
            }
        })
        .collect()
}

/// An automorphism of P^n given by an invertible matrix acting on coordinate columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjTransform<F> {
    matrix: Matrix<F>,
    inverse: Matrix<F>,
}

impl<F: Field> ProjTransform<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rows() < 2 {
            return Err(Error::Singular);
        }
        let inverse = matrix.inverse().ok_or(Error::Singular)?;
        Ok(ProjTransform { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        ProjTransform { matrix: Matrix::identity(n + 1), inverse: Matrix::identity(n + 1) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix<F> {
        &self.inverse
    }

    pub fn inverse(&self) -> Self {
        ProjTransform { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        ProjTransform { matrix: self.matrix.mul(&other.matrix), inverse: other.inverse.mul(&self.inverse) }
    }

    pub fn map_coords(&self, x: &[F]) -> Vec<F> {
        self.matrix.mul_vec(x)
    }

    /// Forms transform by the inverse transpose, so `(t.l)(t.p) = l(p)`.
    pub fn map_form_coeffs(&self, c: &[F]) -> Vec<F> {
        self.inverse.vec_mul(c)
    }
}

/// Objects a projective transformation acts on.
pub trait Transformable<F: Field>: Sized {
    fn transformed(&self, t: &ProjTransform<F>) -> Result<Self>;
}

pub fn apply_transform<F: Field, T: Transformable<F>>(t: &ProjTransform<F>, x: &T) -> Result<T> {
    x.transformed(t)
}

impl<F: Field> Transformable<F> for ProjPoint<F> {
    fn transformed(&self, t: &ProjTransform<F>) -> Result<Self> {
        Error::check_dim(t.dim(), self.dim())?;
        ProjPoint::new(t.map_coords(&self.coords))
    }
}

impl<F: Field> Transformable<F> for LinForm<F> {
    fn transformed(&self, t: &ProjTransform<F>) -> Result<Self> {
        Error::check_dim(t.dim(), self.dim())?;
        Ok(LinForm::new(t.map_form_coeffs(&self.coeffs)))
    }
}

impl<F: Field> Transformable<F> for Pencil<F> {
    fn transformed(&self, t: &ProjTransform<F>) -> Result<Self> {
        Pencil::new(self.f.transformed(t)?, self.g.transformed(t)?)
    }
}

/// The transform sending `points[0..=n]` to the coordinate points and `points[n+1]` to the unit
/// point. Requires every `n + 1` of the `n + 2` points to be independent.
pub fn frame_map<F: Field>(points: &[ProjPoint<F>]) -> Result<ProjTransform<F>> {
    let Some(first) = points.first() else {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    };
    let n = first.dim();
    Error::check_dim(n + 2, points.len())?;
    for p in points {
        Error::check_dim(n, p.dim())?;
    }
    // Columns are the first n+1 points.
    let basis = Matrix::from_fn(n + 1, n + 1, |i, j| points[j].coords[i].clone());
    let weights = match basis.inverse() {
        Some(inv) => inv.mul_vec(&points[n + 1].coords),
        None => {
            return Err(Error::not_generic("frame", format!("points {:?} are dependent", (0..=n).collect::<Vec<_>>())))
        }
    };
    if let Some(i) = weights.iter().position(|w| w.is_zero()) {
        let subset: Vec<usize> = (0..=n + 1).filter(|&j| j != i).collect();
        return Err(Error::not_generic("frame", format!("points {subset:?} are dependent")));
    }
    // basis * diag(weights) sends e_i to a multiple of P_i and the unit point to P_{n+1}.
    let to_frame = basis.mul(&Matrix::diagonal(&weights));
    Ok(ProjTransform::new(to_frame)?.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, ints};
    use crate::Scalar;
    use num_traits::Zero;

    type P = ProjPoint<Scalar>;

    fn standard_frame(n: usize) -> Vec<P> {
        let mut pts: Vec<P> = (0..=n).map(|i| P::coordinate(n, i)).collect();
        pts.push(P::unit(n));
        pts
    }

    #[test]
    fn points_are_canonical() {
        let p = P::new(ints(&[0, 2, 4, -6])).unwrap();
        assert_eq!(p.coords(), &ints::<Scalar>(&[0, 1, 2, -3])[..]);
        assert_eq!(P::new(ints(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn frame_map_of_standard_frame_is_identity() {
        let t = frame_map(&standard_frame(3)).unwrap();
        assert_eq!(t, ProjTransform::identity(3));
    }

    #[test]
    fn frame_map_rescales_to_unit_point() {
        let mut pts = standard_frame(3);
        pts[4] = P::from_ints(&[1, 2, 3, 4]);
        let t = frame_map(&pts).unwrap();
        let expected = Matrix::diagonal(&[frac(1, 1), frac(1, 2), frac(1, 3), frac(1, 4)]);
        assert_eq!(t.matrix(), &expected);
        for (i, p) in pts.iter().enumerate() {
            let img = p.transformed(&t).unwrap();
            let want = if i <= 3 { P::coordinate(3, i) } else { P::unit(3) };
            assert_eq!(img, want);
        }
    }

    #[test]
    fn frame_map_rejects_coplanar_points() {
        // e0, e1, e2 and (1:1:1:0) lie in x3 = 0
        let pts = vec![
            P::coordinate(3, 0),
            P::coordinate(3, 1),
            P::coordinate(3, 2),
            P::from_ints(&[1, 2, 3, 4]),
            P::from_ints(&[1, 1, 1, 0]),
        ];
        match frame_map(&pts) {
            Err(Error::NotGeneric { witness, .. }) => assert!(witness.contains("[0, 1, 2, 4]"), "{witness}"),
            other => panic!("expected NotGeneric, got {other:?}"),
        }
    }

    #[test]
    fn pencil_examples() {
        let pencil = pencil_from_points(&[P::from_ints(&[1, 0, 0, 0]), P::from_ints(&[1, 1, 1, 1])]).unwrap();
        assert_eq!(pencil, Pencil::from_ints(&[0, 1, -1, 0], &[0, 0, 1, -1]).unwrap());

        let pencil = pencil_from_points(&[P::from_ints(&[1, 2, 4, 8]), P::from_ints(&[1, 3, 9, 27])]).unwrap();
        assert_eq!(pencil, Pencil::from_ints(&[6, -5, 1, 0], &[30, -19, 0, 1]).unwrap());

        let p = P::from_ints(&[1, 2, 4, 8]);
        assert_eq!(pencil_from_points(&[p.clone(), p]), Err(Error::DegenerateSpan));
    }

    #[test]
    fn pencil_equality_ignores_basis() {
        let a = Pencil::<Scalar>::from_ints(&[1, 2, 0, 3], &[0, 1, 1, 1]).unwrap();
        let b = Pencil::from_ints(&[2, 5, 1, 7], &[-1, -1, 1, -2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(Pencil::<Scalar>::from_ints(&[1, 0, 0, 0], &[2, 0, 0, 0]), Err(Error::DegeneratePencil));
    }

    #[test]
    fn incidence_is_preserved() {
        let t = ProjTransform::new(Matrix::from_ints(&[&[1, 2, 0, 0], &[0, 1, 3, 0], &[1, 0, 1, 1], &[0, 0, 2, 1]]))
            .unwrap();
        let p = P::from_ints(&[1, 1, 1, -3]);
        let l = LinForm::from_ints(&[1, 1, 1, 1]);
        assert!(l.eval(&p).is_zero());
        let tp = p.transformed(&t).unwrap();
        let tl = l.transformed(&t).unwrap();
        assert!(tl.eval(&tp).is_zero());
        let back = tp.transformed(&t.inverse()).unwrap();
        assert_eq!(back, p);
        let pencil = Pencil::from_ints(&[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        let tp = pencil.transformed(&t).unwrap();
        assert_eq!(tp.canonical().rank(), 2);
        assert_eq!(tp.transformed(&t.inverse()).unwrap(), pencil);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let t = ProjTransform::<Scalar>::identity(3);
        let p = P::from_ints(&[1, 2, 3]);
        assert_eq!(p.transformed(&t), Err(Error::DimensionMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn member_through_point() {
        let pencil = Pencil::from_ints(&[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        let p = P::from_ints(&[1, 2, 5, 7]);
        let h = pencil.member_through(&p).unwrap();
        assert!(h.eval(&p).is_zero());
        assert!(pencil.contains_form(&h));
        assert!(pencil.member_through(&P::from_ints(&[0, 0, 1, 1])).is_none());
    }
}
