//! Rational normal curves: parametrized and determinantal representations, incidence and
//! secancy.
//!
//! A [`ParamRnc`] is `n + 1` binary forms of degree `n` with an invertible coefficient matrix
//! `C`, so that `phi(s, u) = C * (u^n, s u^(n-1), ..., s^n)`. A [`DetRnc`] is a 2 x n matrix of
//! linear forms whose rank-one locus is the curve.
//!
//! Parameter convention shared by both representations: at the curve point with parameter
//! `(s:u)`, every column `(m1, m2)` of the determinantal matrix satisfies `s*m1 - u*m2 = 0`,
//! so the parameter is read off any nonvanishing column as `(m2 : m1)`. For the moment curve
//! and the Hankel matrix `((x0..x_{n-1}), (x1..x_n))` this gives `phi(s:u) = (u^n : ... : s^n)`.

use std::fmt;

use crate::datum::Datum;
use crate::error::{Error, Result};
use crate::kernel::{binary_gcd, is_squarefree, normalize_last, proportional, BinaryForm, Matrix};
use crate::projective::{
    pencil_from_points, quadric_monomials, LinForm, Pencil, ProjPoint, ProjTransform, Transformable,
};
use crate::scalar::Field;

/// A point `(s:u)` of P^1, stored as `(t:1)` or `(1:0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Param<F> {
    s: F,
    u: F,
}

impl<F: Field> Param<F> {
    pub fn new(s: F, u: F) -> Result<Self> {
        if u.is_zero() {
            if s.is_zero() {
                return Err(Error::ZeroParameter);
            }
            return Ok(Self::infinity());
        }
        Ok(Param { s: s / u, u: F::one() })
    }

    /// The affine parameter `(t:1)`.
    pub fn affine(t: F) -> Self {
        Param { s: t, u: F::one() }
    }

    pub fn from_int(t: i64) -> Self {
        Self::affine(F::from_i64(t))
    }

    /// The parameter `(1:0)`.
    pub fn infinity() -> Self {
        Param { s: F::one(), u: F::zero() }
    }

    pub fn s(&self) -> &F {
        &self.s
    }

    pub fn u(&self) -> &F {
        &self.u
    }

    pub fn is_infinity(&self) -> bool {
        self.u.is_zero()
    }

    /// The affine value `s/u`, or `None` at infinity.
    pub fn affine_value(&self) -> Option<&F> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.s)
        }
    }
}

impl<F: Field> fmt::Display for Param<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.s, self.u)
    }
}

/// A rational normal curve given by its parametrization.
#[derive(Clone, Debug)]
pub struct ParamRnc<F> {
    forms: Vec<BinaryForm<F>>,
    coefficients: Matrix<F>,
    /// A nonzero multiple of the inverse coefficient matrix.
    inverse: Matrix<F>,
}

impl<F: Field> ParamRnc<F> {
    pub fn new(forms: Vec<BinaryForm<F>>) -> Result<Self> {
        if forms.len() < 2 {
            return Err(Error::InvalidCurve { reason: "need at least two coordinate forms".into() });
        }
        let n = forms.len() - 1;
        if let Some(bad) = forms.iter().position(|f| f.degree() != n) {
            return Err(Error::InvalidCurve {
                reason: format!("form {bad} has degree {} instead of {n}", forms[bad].degree()),
            });
        }
        let coefficients = Matrix::from_rows(forms.iter().map(|f| f.coeffs().to_vec()).collect(), n + 1);
        let inverse = coefficients.inverse().ok_or_else(|| Error::InvalidCurve {
            reason: "coefficient matrix is singular (image is degenerate)".into(),
        })?;
        let inverse = Matrix::from_rows(
            F::primitive(inverse.entries()).chunks(n + 1).map(|r| r.to_vec()).collect(),
            n + 1,
        );
        Ok(ParamRnc { forms, coefficients, inverse })
    }

    /// The curve with coefficient matrix `c` (row i holds the coefficients of form i).
    pub fn from_coefficients(c: &Matrix<F>) -> Result<Self> {
        Self::new(c.row_vecs().into_iter().map(BinaryForm::new).collect())
    }

    /// The same parametrization with all forms multiplied by one convenient scalar; see
    /// [`Field::primitive`].
    pub fn normalized(&self) -> Self {
        let n = self.dim();
        let flat = F::primitive(self.coefficients.entries());
        Self::new(flat.chunks(n + 1).map(|c| BinaryForm::new(c.to_vec())).collect())
            .expect("a nonzero multiple of an invertible matrix is invertible")
    }

    /// `(u^n, s u^(n-1), ..., s^n)`.
    pub fn moment(n: usize) -> Self {
        Self::from_coefficients(&Matrix::identity(n + 1)).expect("identity is invertible")
    }

    pub fn dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn forms(&self) -> &[BinaryForm<F>] {
        &self.forms
    }

    pub fn coefficient_matrix(&self) -> &Matrix<F> {
        &self.coefficients
    }

    /// Reparametrizes by `(s, u) -> (a s + b u, c s + d u)`. Same image.
    pub fn reparametrized(&self, a: &F, b: &F, c: &F, d: &F) -> Result<Self> {
        Self::new(self.forms.iter().map(|f| f.substitute(a, b, c, d)).collect())
    }

    /// The same curve reparametrized so that parameters `t0, t1, t2` move to `0, 1, infinity`,
    /// then [`normalized`](Self::normalized).
    pub fn anchored(&self, t0: &Param<F>, t1: &Param<F>, t2: &Param<F>) -> Result<Self> {
        let [a, b, c, d] = normalizing_mobius(t0, t1, t2)?;
        Ok(self.reparametrized(&d, &-b, &-c, &a)?.normalized())
    }

    /// [`anchored`](Self::anchored) at the parameters of three points on the curve.
    pub fn anchored_at_points(&self, points: &[ProjPoint<F>]) -> Result<Self> {
        let params = points
            .iter()
            .take(3)
            .map(|p| param_of_point(self, p).ok_or_else(|| Error::InvalidCurve { reason: format!("{p} is not on the curve") }))
            .collect::<Result<Vec<_>>>()?;
        if params.len() < 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: params.len() });
        }
        self.anchored(&params[0], &params[1], &params[2])
    }

    pub fn point_at(&self, param: &Param<F>) -> ProjPoint<F> {
        ProjPoint::new(self.coords_at(param)).expect("invertible coefficient matrix never maps to zero")
    }

    /// Coordinates of some representative of the point at `param`.
    fn coords_at(&self, param: &Param<F>) -> Vec<F> {
        let su = F::primitive(&[param.s.clone(), param.u.clone()]);
        self.forms.iter().map(|f| f.eval(&su[0], &su[1])).collect()
    }
}

impl<F: PartialEq> PartialEq for ParamRnc<F> {
    fn eq(&self, other: &Self) -> bool {
        self.forms == other.forms
    }
}

impl<F: Field> Transformable<F> for ParamRnc<F> {
    fn transformed(&self, t: &ProjTransform<F>) -> Result<Self> {
        Error::check_dim(t.dim(), self.dim())?;
        Self::from_coefficients(&t.matrix().mul(&self.coefficients))
    }
}

impl<F: Field> fmt::Display for ParamRnc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.forms.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A rational normal curve given as the rank-one locus of a 2 x n matrix of linear forms.
#[derive(Clone, Debug, PartialEq)]
pub struct DetRnc<F> {
    top: Vec<LinForm<F>>,
    bottom: Vec<LinForm<F>>,
}

impl<F: Field> DetRnc<F> {
    /// Validates shapes and that the matrix defines a rational normal curve.
    pub fn new(top: Vec<LinForm<F>>, bottom: Vec<LinForm<F>>) -> Result<Self> {
        Ok(Self::with_param(top, bottom)?.0)
    }

    /// Validates like [`DetRnc::new`] and returns the parametrization computed on the way.
    pub fn with_param(top: Vec<LinForm<F>>, bottom: Vec<LinForm<F>>) -> Result<(Self, ParamRnc<F>)> {
        let n = top.len();
        Error::check_dim(n, bottom.len())?;
        if n < 2 {
            return Err(Error::NotGenericMatrix { reason: "need at least two columns".into() });
        }
        for form in top.iter().chain(&bottom) {
            Error::check_dim(n, form.dim())?;
        }
        let det = DetRnc { top, bottom };
        let param = det_to_param(&det)?;
        Ok((det, param))
    }

    /// Builds from columns `(top_j, bottom_j)`.
    pub fn from_columns(columns: Vec<(LinForm<F>, LinForm<F>)>) -> Result<Self> {
        let (top, bottom) = columns.into_iter().unzip();
        Self::new(top, bottom)
    }

    /// `((x0, ..., x_{n-1}), (x1, ..., x_n))`.
    pub fn hankel(n: usize) -> Self {
        let top = (0..n).map(|j| LinForm::coordinate(n, j)).collect();
        let bottom = (0..n).map(|j| LinForm::coordinate(n, j + 1)).collect();
        DetRnc { top, bottom }
    }

    pub fn dim(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[LinForm<F>] {
        &self.top
    }

    pub fn bottom(&self) -> &[LinForm<F>] {
        &self.bottom
    }

    pub fn column(&self, j: usize) -> (&LinForm<F>, &LinForm<F>) {
        (&self.top[j], &self.bottom[j])
    }

    /// The scalar 2 x n matrix at a point.
    pub fn eval_coords(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        Matrix::from_fn(2, n, |r, j| if r == 0 { self.top[j].eval_coords(x) } else { self.bottom[j].eval_coords(x) })
    }
}

impl<F: Field> Transformable<F> for DetRnc<F> {
    fn transformed(&self, t: &ProjTransform<F>) -> Result<Self> {
        let top = self.top.iter().map(|f| f.transformed(t)).collect::<Result<_>>()?;
        let bottom = self.bottom.iter().map(|f| f.transformed(t)).collect::<Result<_>>()?;
        Ok(DetRnc { top, bottom })
    }
}

impl<F: Field> fmt::Display for DetRnc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |forms: &[LinForm<F>]| forms.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" | ");
        writeln!(f, "[ {} ]", row(&self.top))?;
        write!(f, "[ {} ]", row(&self.bottom))
    }
}

/// Parametrization of the rank-one locus.
///
/// The point with parameter `(s:u)` solves the n x (n+1) system `s*m1_j - u*m2_j = 0`; its
/// coordinates are the signed maximal minors, binary forms of degree n. They are recovered by
/// evaluating at `n + 1` affine parameters and interpolating. At each node the minors are a
/// kernel vector scaled by a single minor.
pub fn det_to_param<F: Field>(det: &DetRnc<F>) -> Result<ParamRnc<F>> {
    let n = det.dim();
    let singular = || Error::NotGenericMatrix { reason: "the matrix drops rank along the whole parameter line".into() };
    let nodes: Vec<F> = (0..=n as i64).map(F::from_i64).collect();
    // values[k][node] = x_k at parameter (node:1)
    let mut values = vec![vec![F::zero(); n + 1]; n + 1];
    for (ti, t) in nodes.iter().enumerate() {
        let system = Matrix::from_fn(n, n + 1, |j, k| {
            t.clone() * det.top[j].coeffs()[k].clone() - det.bottom[j].coeffs()[k].clone()
        });
        let kernel = system.kernel_with_free_columns();
        let [(free, v)] = &kernel[..] else {
            return Err(singular());
        };
        let free = *free;
        let cols: Vec<usize> = (0..=n).filter(|&c| c != free).collect();
        let minor = system.select_columns(&cols).determinant();
        let scale = if free % 2 == 0 { minor } else { -minor };
        for k in 0..=n {
            values[k][ti] = scale.clone() * v[k].clone();
        }
    }
    let vandermonde = Matrix::from_fn(n + 1, n + 1, |i, m| pow(&nodes[i], m));
    let vinv = vandermonde.inverse().expect("distinct interpolation nodes");
    let n1 = n + 1;
    let flat: Vec<F> = values.iter().flat_map(|v| vinv.mul_vec(v)).collect();
    let flat = F::primitive(&flat);
    let forms = flat.chunks(n1).map(|c| BinaryForm::new(c.to_vec())).collect();
    ParamRnc::new(forms).map_err(|e| match e {
        Error::InvalidCurve { reason } => Error::NotGenericMatrix { reason },
        other => other,
    })
}

/// Determinantal form: the Hankel matrix transported by the coefficient matrix.
pub fn param_to_det<F: Field>(c: &ParamRnc<F>) -> DetRnc<F> {
    let n = c.dim();
    let top = (0..n).map(|j| LinForm::new(c.inverse.row(j).to_vec())).collect();
    let bottom = (0..n).map(|j| LinForm::new(c.inverse.row(j + 1).to_vec())).collect();
    DetRnc { top, bottom }
}

pub fn point_at<F: Field>(c: &ParamRnc<F>, s: F, u: F) -> Result<ProjPoint<F>> {
    Ok(c.point_at(&Param::new(s, u)?))
}

/// The parameter of `p` on the curve, or `None` when `p` is not on it.
pub fn param_of_point<F: Field>(c: &ParamRnc<F>, p: &ProjPoint<F>) -> Option<Param<F>> {
    if p.dim() != c.dim() {
        return None;
    }
    let m = param_to_det(c).eval_coords(p.coords());
    if m.rank() > 1 {
        return None;
    }
    let j = (0..m.cols()).find(|&j| !m.get(0, j).is_zero() || !m.get(1, j).is_zero())?;
    let param = Param::new(m.get(1, j).clone(), m.get(0, j).clone()).ok()?;
    proportional(&c.coords_at(&param), p.coords()).then_some(param)
}

/// The Möbius transformation `(s, u) -> (a s + b u, c s + d u)` sending `t1, t2, t3` to
/// `0, 1, infinity`, as `[a, b, c, d]`.
pub fn normalizing_mobius<F: Field>(t1: &Param<F>, t2: &Param<F>, t3: &Param<F>) -> Result<[F; 4]> {
    let (s1, u1) = (t1.s().clone(), t1.u().clone());
    let (s2, u2) = (t2.s().clone(), t2.u().clone());
    let (s3, u3) = (t3.s().clone(), t3.u().clone());
    let k1 = s2.clone() * u3.clone() - s3.clone() * u2.clone();
    let k2 = s2 * u1.clone() - s1.clone() * u2;
    let k3 = s3.clone() * u1.clone() - s1.clone() * u3.clone();
    if k1.is_zero() || k2.is_zero() || k3.is_zero() {
        return Err(Error::RepeatedParameter(format!("{t1}, {t2}, {t3}")));
    }
    Ok([u1 * k1.clone(), -(s1 * k1), u3 * k2.clone(), -(s3 * k2)])
}

/// `l` composed with the parametrization, a binary form of degree n.
pub fn restrict<F: Field>(c: &ParamRnc<F>, l: &LinForm<F>) -> Result<BinaryForm<F>> {
    Error::check_dim(c.dim(), l.dim())?;
    let mut out = BinaryForm::zero(c.dim());
    for (coef, form) in l.coeffs().iter().zip(&c.forms) {
        if !coef.is_zero() {
            out = out.add(&form.scale(coef));
        }
    }
    Ok(out)
}

/// Intersection of a curve with a codimension-two space, carried as the gcd form `D` of the
/// two restricted forms.
#[derive(Clone, Debug, PartialEq)]
pub struct SecancyResult<F> {
    pub degree: usize,
    pub d_form: BinaryForm<F>,
    pub smooth: bool,
    pub is_n_minus_1_secant: bool,
}

pub fn secancy<F: Field>(c: &ParamRnc<F>, lam: &Pencil<F>) -> Result<SecancyResult<F>> {
    let rf = restrict(c, lam.f())?;
    let rg = restrict(c, lam.g())?;
    let d_form = binary_gcd(&rf, &rg)?;
    let degree = d_form.degree();
    let smooth = is_squarefree(&d_form)?;
    Ok(SecancyResult { degree, smooth, is_n_minus_1_secant: smooth && degree + 1 == c.dim(), d_form })
}

/// A vector `lambda` such that `(sum lambda_i top_i, sum lambda_i bottom_i)` spans `lam`, if any.
///
/// A form lies in the pencil's span iff it vanishes at the points spanning its zero locus, so
/// the conditions are `2(n-1)` linear equations in `lambda`. The result is scaled so its last
/// nonzero entry is one.
pub fn generalized_column_for<F: Field>(det: &DetRnc<F>, lam: &Pencil<F>) -> Option<Vec<F>> {
    let n = det.dim();
    if lam.dim() != n {
        return None;
    }
    let spanning = lam.spanning_points();
    let mut rows = Vec::with_capacity(2 * spanning.len());
    for w in &spanning {
        rows.push(det.top.iter().map(|f| f.eval_coords(w)).collect());
        rows.push(det.bottom.iter().map(|f| f.eval_coords(w)).collect());
    }
    let kernel = Matrix::from_rows(rows, n).nullspace();
    kernel.into_iter().find_map(|lambda| {
        let h1 = LinForm::sum(n, &lambda, &det.top);
        let h2 = LinForm::sum(n, &lambda, &det.bottom);
        match Pencil::new(h1, h2) {
            Ok(p) if p == *lam => Some(normalize_last(&lambda)),
            _ => None,
        }
    })
}

/// The codimension-two space spanned by the curve points at `n - 1` distinct parameters.
pub fn chord_space<F: Field>(c: &ParamRnc<F>, params: &[Param<F>]) -> Result<Pencil<F>> {
    let n = c.dim();
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    Error::check_dim(n - 1, params.len())?;
    for (i, a) in params.iter().enumerate() {
        if params[..i].contains(a) {
            return Err(Error::RepeatedParameter(a.to_string()));
        }
    }
    let points: Vec<_> = params.iter().map(|t| c.point_at(t)).collect();
    pencil_from_points(&points)
}

/// Anything that can produce a parametrization of its curve.
pub trait Curve<F: Field> {
    fn parametrization(&self) -> Result<ParamRnc<F>>;
}

impl<F: Field> Curve<F> for ParamRnc<F> {
    fn parametrization(&self) -> Result<ParamRnc<F>> {
        Ok(self.clone())
    }
}

impl<F: Field> Curve<F> for DetRnc<F> {
    fn parametrization(&self) -> Result<ParamRnc<F>> {
        det_to_param(self)
    }
}

/// Basis (as rows) of the quadrics vanishing on the curve. Its dimension is
/// `C(n+2, 2) - (2n + 1)`.
pub fn quadric_space<F: Field>(c: &ParamRnc<F>) -> Matrix<F> {
    let n = c.dim();
    let monomials = quadric_monomials(n);
    let products: Vec<BinaryForm<F>> = monomials.iter().map(|&(i, j)| c.forms[i].mul(&c.forms[j])).collect();
    let conditions = Matrix::from_fn(2 * n + 1, monomials.len(), |k, m| products[m].coeff(k).clone());
    let basis = conditions.nullspace();
    Matrix::from_rows(basis, monomials.len())
}

/// Whether two curves have the same image.
///
/// Two distinct rational normal curves share at most `n + 2` points, so it suffices that
/// `n + 3` points of `b` lie on `a`.
pub fn curve_equals<F: Field>(a: &impl Curve<F>, b: &impl Curve<F>) -> Result<bool> {
    let a = a.parametrization()?;
    let b = b.parametrization()?;
    Error::check_dim(a.dim(), b.dim())?;
    Ok((0..a.dim() as i64 + 3).all(|t| param_of_point(&a, &b.point_at(&Param::from_int(t))).is_some()))
}

/// Same answer as [`curve_equals`], by comparing the spaces of quadrics containing each curve.
pub fn curve_equals_by_quadrics<F: Field>(a: &impl Curve<F>, b: &impl Curve<F>) -> Result<bool> {
    let a = a.parametrization()?;
    let b = b.parametrization()?;
    Error::check_dim(a.dim(), b.dim())?;
    let qa = quadric_space(&a);
    let qb = quadric_space(&b);
    let ra = qa.rank();
    Ok(ra == qb.rank() && qa.vstack(&qb).rank() == ra)
}

/// Outcome of checking a curve against a datum.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<F> {
    /// Parameter of each datum point on the curve; `None` marks a point off the curve.
    pub point_params: Vec<Option<Param<F>>>,
    pub spaces: Vec<SecancyResult<F>>,
    pub passed: bool,
}

impl<F: Field> VerificationReport<F> {
    pub fn failing_points(&self) -> Vec<usize> {
        (0..self.point_params.len()).filter(|&i| self.point_params[i].is_none()).collect()
    }

    pub fn failing_spaces(&self) -> Vec<usize> {
        (0..self.spaces.len()).filter(|&i| !self.spaces[i].is_n_minus_1_secant).collect()
    }
}

impl<F: Field> fmt::Display for VerificationReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.point_params.iter().enumerate() {
            match t {
                Some(t) => writeln!(f, "  P{} on the curve at t = {t}", i + 1)?,
                None => writeln!(f, "  P{} NOT on the curve", i + 1)?,
            }
        }
        for (i, s) in self.spaces.iter().enumerate() {
            let mark = if s.is_n_minus_1_secant { "" } else { " NOT (n-1)-secant" };
            writeln!(f, "  L{} meets the curve in D = {} (degree {}){mark}", i + 1, s.d_form, s.degree)?;
        }
        write!(f, "  {}", if self.passed { "passed" } else { "FAILED" })
    }
}

pub fn verify_datum<F: Field>(c: &ParamRnc<F>, d: &Datum<F>) -> Result<VerificationReport<F>> {
    Error::check_dim(c.dim(), d.dim())?;
    let point_params: Vec<_> = d.points().iter().map(|p| param_of_point(c, p)).collect();
    let spaces = d.spaces().iter().map(|lam| secancy(c, lam)).collect::<Result<Vec<_>>>()?;
    let passed = point_params.iter().all(Option::is_some) && spaces.iter().all(|s| s.is_n_minus_1_secant);
    Ok(VerificationReport { point_params, spaces, passed })
}

fn pow<F: Field>(x: &F, e: usize) -> F {
    (0..e).fold(F::one(), |acc, _| acc * x.clone())
}
