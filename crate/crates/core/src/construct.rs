//! Exact constructors for every existence case, the expected-count analysis, and generators
//! of special data.

use std::fmt;

use crate::curve::{det_to_param, param_to_det, verify_datum, DetRnc, ParamRnc, VerificationReport};
use crate::error::{Error, Result};
use crate::kernel::{binary_gcd, BinaryForm, Matrix};
use crate::obstruction::{nonexistence_certificate, ObstructionCertificate};
use crate::projective::{frame_map, LinForm, Pencil, ProjPoint, Transformable};
use crate::random;
use crate::scalar::Field;

pub use crate::datum::Datum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Overdetermined,
    FiniteExpected,
    PositiveDimensional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    ExistsUnique,
    ExistsNonunique { count: usize },
    NotExists,
    Open,
    /// `p + l != n + 3`: not one of the balanced shapes.
    Trivial,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Overdetermined => "overdetermined",
            Verdict::FiniteExpected => "finite_expected",
            Verdict::PositiveDimensional => "positive_dimensional",
        })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::ExistsUnique => f.write_str("exists_unique"),
            Classification::ExistsNonunique { count } => write!(f, "exists_nonunique({count})"),
            Classification::NotExists => f.write_str("not_exists"),
            Classification::Open => f.write_str("open"),
            Classification::Trivial => f.write_str("trivial"),
        }
    }
}

/// Parameter count for curves through `p` points and `(n-1)`-secant to `l` spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountAnalysis {
    pub n: usize,
    pub p: usize,
    pub l: usize,
    /// Dimension of the family of rational normal curves in P^n.
    pub dim_h: usize,
    /// Each point and each space imposes `n - 1` conditions.
    pub conditions: usize,
    pub verdict: Verdict,
    pub classification: Classification,
}

pub fn expected_count(n: usize, p: usize, l: usize) -> Result<CountAnalysis> {
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    let dim_h = (n - 1) * (n + 3);
    let conditions = (p + l) * (n - 1);
    let verdict = match conditions.cmp(&dim_h) {
        std::cmp::Ordering::Greater => Verdict::Overdetermined,
        std::cmp::Ordering::Equal => Verdict::FiniteExpected,
        std::cmp::Ordering::Less => Verdict::PositiveDimensional,
    };
    let classification = if p + l != n + 3 {
        Classification::Trivial
    } else if p == n + 3 || p == n + 2 || (1..=3).contains(&p) {
        Classification::ExistsUnique
    } else if p == 0 {
        if n == 3 {
            Classification::ExistsNonunique { count: 6 }
        } else {
            Classification::Open
        }
    } else {
        Classification::NotExists
    };
    Ok(CountAnalysis { n, p, l, dim_h, conditions, verdict, classification })
}

/// Which constructor produced a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    FrameFit,
    CremonaPullback,
    QuadricSystem,
    Steiner,
    TwoPointAnchored,
    OnePointAnchored,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::FrameFit => "frame-fit",
            Method::CremonaPullback => "cremona-pullback",
            Method::QuadricSystem => "quadric-system",
            Method::Steiner => "steiner",
            Method::TwoPointAnchored => "two-point-anchored",
            Method::OnePointAnchored => "one-point-anchored",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [
            Method::FrameFit,
            Method::CremonaPullback,
            Method::QuadricSystem,
            Method::Steiner,
            Method::TwoPointAnchored,
            Method::OnePointAnchored,
        ]
        .into_iter()
        .find(|m| m.tag() == tag)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A curve satisfying a datum, in both representations, with its verification report.
#[derive(Clone, Debug, PartialEq)]
pub struct ExistenceCertificate<F> {
    pub datum: Datum<F>,
    pub curve: ParamRnc<F>,
    pub det: DetRnc<F>,
    pub report: VerificationReport<F>,
    pub method: Method,
}

impl<F: Field> ExistenceCertificate<F> {
    /// Re-checks the datum against the curve and the two representations against each other.
    pub fn verify(&self) -> Result<bool> {
        let report = verify_datum(&self.curve, &self.datum)?;
        Ok(report.passed && crate::curve::curve_equals(&self.curve, &self.det)?)
    }
}

impl<F: Field> fmt::Display for ExistenceCertificate<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, l) = self.datum.shape();
        writeln!(f, "rational normal curve in P^{} through {p} points, (n-1)-secant to {l} spaces ({})", self.datum.dim(), self.method)?;
        writeln!(f, "  parametrization {}", self.curve)?;
        writeln!(f, "  determinantal   {}", self.det.to_string().replace('\n', "\n                  "))?;
        write!(f, "{}", self.report)
    }
}

impl fmt::Display for CountAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(n, p, l) = ({}, {}, {})", self.n, self.p, self.l)?;
        writeln!(f, "  dim H = {}, conditions = {}: {}", self.dim_h, self.conditions, self.verdict)?;
        write!(f, "  {}", self.classification)
    }
}

fn certify<F: Field>(datum: Datum<F>, curve: ParamRnc<F>, det: DetRnc<F>, method: Method) -> Result<ExistenceCertificate<F>> {
    let report = verify_datum(&curve, &datum)?;
    if !report.passed {
        return Err(Error::not_generic(
            "verification",
            format!(
                "constructed curve misses points {:?} and spaces {:?}",
                one_based(&report.failing_points()),
                one_based(&report.failing_spaces())
            ),
        ));
    }
    Ok(ExistenceCertificate { datum, curve, det, report, method })
}

fn certify_curve<F: Field>(datum: Datum<F>, curve: ParamRnc<F>, method: Method) -> Result<ExistenceCertificate<F>> {
    let det = param_to_det(&curve);
    certify(datum, curve, det, method)
}

fn certify_det<F: Field>(
    datum: Datum<F>,
    stage: &str,
    top: Vec<LinForm<F>>,
    bottom: Vec<LinForm<F>>,
    method: Method,
) -> Result<ExistenceCertificate<F>> {
    let (top, bottom): (Vec<_>, Vec<_>) = top
        .iter()
        .zip(&bottom)
        .map(|(a, b)| {
            let joint: Vec<F> = a.coeffs().iter().chain(b.coeffs()).cloned().collect();
            let joint = F::primitive(&joint);
            let (x, y) = joint.split_at(a.dim() + 1);
            (LinForm::new(x.to_vec()), LinForm::new(y.to_vec()))
        })
        .unzip();
    let (det, curve) = DetRnc::with_param(top, bottom).map_err(|e| match e {
        Error::NotGenericMatrix { reason } => Error::not_generic(stage, reason),
        other => other,
    })?;
    certify(datum, curve, det, method)
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn ambient<F: Field>(points: &[ProjPoint<F>], spaces: &[Pencil<F>]) -> Result<usize> {
    let n = match (points.first(), spaces.first()) {
        (Some(p), _) => p.dim(),
        (None, Some(s)) => s.dim(),
        (None, None) => return Err(Error::DimensionMismatch { expected: 1, found: 0 }),
    };
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    Ok(n)
}

/// The unique curve through `n + 3` points in linearly general position.
///
/// After moving the first `n + 2` points to the standard frame, the last point is
/// `(q_0 : ... : q_n)` and the curve is `phi_i = q_i * prod_{j != i} (q_j s + u)`.
pub fn construct_through_points<F: Field>(points: &[ProjPoint<F>]) -> Result<ExistenceCertificate<F>> {
    let n = ambient(points, &[])?;
    Error::check_dim(n + 3, points.len())?;
    let datum = Datum::new(n, Vec::new(), points.to_vec())?;
    let t = frame_map(&points[..n + 2])?;
    let q = t.map_coords(points[n + 2].coords());
    check_frame_coordinates(n, &q)?;
    let forms = (0..=n)
        .map(|i| {
            (0..=n).filter(|&j| j != i).fold(BinaryForm::constant(q[i].clone()), |acc, j| {
                acc.mul(&BinaryForm::linear(q[j].clone(), F::one()))
            })
        })
        .collect();
    let curve = ParamRnc::new(forms)?.transformed(&t.inverse())?.normalized();
    certify_curve(datum, curve, Method::FrameFit)
}

/// `q_i != 0` and `q_i != q_j`: otherwise `n + 1` of the points lie in a hyperplane.
fn check_frame_coordinates<F: Field>(n: usize, q: &[F]) -> Result<()> {
    let last = n + 2;
    if let Some(i) = q.iter().position(|x| x.is_zero()) {
        let subset: Vec<usize> = (0..=n).filter(|&j| j != i).chain([last]).collect();
        return Err(Error::not_generic("frame fit", format!("points {subset:?} are dependent")));
    }
    for i in 0..=n {
        for j in i + 1..=n {
            if q[i] == q[j] {
                let subset: Vec<usize> = (0..=n).filter(|&k| k != i && k != j).chain([n + 1, last]).collect();
                return Err(Error::not_generic("frame fit", format!("points {subset:?} are dependent")));
            }
        }
    }
    Ok(())
}

/// The standard Cremona involution `x_i -> prod_{j != i} x_j`.
pub fn cremona_apply<F: Field>(x: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    let c = x.coords();
    let image = (0..c.len())
        .map(|i| (0..c.len()).filter(|&j| j != i).fold(F::one(), |acc, j| acc * c[j].clone()))
        .collect();
    ProjPoint::new(image).map_err(|_| Error::FundamentalLocus)
}

/// The curve that the Cremona involution makes of the line through `a` and `b`, parametrized
/// as `(u - s) a + s b`. It passes through the coordinate points.
pub fn cremona_pullback_line<F: Field>(a: &ProjPoint<F>, b: &ProjPoint<F>) -> Result<ParamRnc<F>> {
    Error::check_dim(a.dim(), b.dim())?;
    let line: Vec<BinaryForm<F>> = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| BinaryForm::linear(y.clone() - x.clone(), x.clone()))
        .collect();
    let forms: Vec<BinaryForm<F>> = (0..line.len())
        .map(|i| {
            (0..line.len()).filter(|&j| j != i).fold(BinaryForm::constant(F::one()), |acc, j| acc.mul(&line[j]))
        })
        .collect();
    let mut common: Option<BinaryForm<F>> = None;
    for f in forms.iter().filter(|f| !f.is_zero()) {
        common = Some(match common {
            None => f.monic(),
            Some(g) => binary_gcd(&g, f)?,
        });
    }
    let common = common.ok_or(Error::FundamentalLocus)?;
    let reduced = forms
        .iter()
        .map(|f| if f.is_zero() { BinaryForm::zero(f.degree() - common.degree()) } else { f.div_exact(&common) })
        .collect();
    ParamRnc::new(reduced).map_err(|_| Error::FundamentalLocus)
}

/// Same curve as [`construct_through_points`], through the Cremona involution: the frame
/// points go to the coordinate points, and the curve is the pullback of the line through the
/// images of the last two points.
pub fn construct_through_points_cremona<F: Field>(points: &[ProjPoint<F>]) -> Result<ExistenceCertificate<F>> {
    let n = ambient(points, &[])?;
    Error::check_dim(n + 3, points.len())?;
    let datum = Datum::new(n, Vec::new(), points.to_vec())?;
    let t = frame_map(&points[..n + 2])?;
    let q = t.map_coords(points[n + 2].coords());
    check_frame_coordinates(n, &q)?;
    let a = cremona_apply(&ProjPoint::unit(n))?;
    let b = cremona_apply(&ProjPoint::new(q)?)?;
    let curve = cremona_pullback_line(&a, &b)?.transformed(&t.inverse())?.normalized();
    certify_curve(datum, curve, Method::CremonaPullback)
}

/// The unique curve through `n + 2` points and `(n-1)`-secant to `lam`.
///
/// Pairs of linear forms `(a, b)` with `f a + g b` vanishing at every point give the quadrics
/// through the space and the points; modulo the trivial pair `(g, -f)` there are `n - 1` of
/// them, and the columns `(-b, a)` together with `(f, g)` form the determinantal matrix.
pub fn construct_np2_one_space<F: Field>(points: &[ProjPoint<F>], lam: &Pencil<F>) -> Result<ExistenceCertificate<F>> {
    let n = ambient(points, std::slice::from_ref(lam))?;
    Error::check_dim(n + 2, points.len())?;
    let datum = Datum::new(n, vec![lam.clone()], points.to_vec())?;
    let (f, g) = (lam.f(), lam.g());
    let rows: Vec<Vec<F>> = points
        .iter()
        .map(|p| {
            let (fp, gp) = (f.eval(p), g.eval(p));
            let x = p.coords();
            x.iter().map(|c| fp.clone() * c.clone()).chain(x.iter().map(|c| gp.clone() * c.clone())).collect()
        })
        .collect();
    let kernel = Matrix::from_rows(rows, 2 * (n + 1)).nullspace();
    if kernel.len() != n {
        return Err(Error::not_generic(
            "quadric system",
            format!("{} independent quadrics through the space and points, expected {}", kernel.len() as i64 - 1, n - 1),
        ));
    }
    let trivial: Vec<F> = g.coeffs().iter().cloned().chain(f.coeffs().iter().map(|c| -c.clone())).collect();
    let mut chosen = Matrix::from_rows(vec![trivial], 2 * (n + 1));
    let mut top = vec![f.clone()];
    let mut bottom = vec![g.clone()];
    for v in kernel {
        let candidate = chosen.vstack(&Matrix::from_rows(vec![v.clone()], 2 * (n + 1)));
        if candidate.rank() > chosen.rank() {
            chosen = candidate;
            let (a, b) = v.split_at(n + 1);
            top.push(LinForm::new(b.iter().map(|c| -c.clone()).collect()));
            bottom.push(LinForm::new(a.to_vec()));
        }
    }
    if top.len() != n {
        return Err(Error::not_generic("quadric system", "quadric space does not complement the trivial pair"));
    }
    certify_det(datum, "quadric system", top, bottom, Method::QuadricSystem)
}

fn members_through<F: Field>(stage: &str, spaces: &[Pencil<F>], p: &ProjPoint<F>, label: &str) -> Result<Vec<LinForm<F>>> {
    spaces
        .iter()
        .enumerate()
        .map(|(i, lam)| {
            lam.member_through(p)
                .ok_or_else(|| Error::not_generic(stage, format!("{label} lies on space {}", i + 1)))
        })
        .collect()
}

/// Kernel of `e -> sum e_i h_i` restricted to `lam`: the combinations lying in the pencil.
fn combinations_in<F: Field>(forms: &[LinForm<F>], lam: &Pencil<F>) -> Vec<Vec<F>> {
    let rows = lam.spanning_points().iter().map(|w| forms.iter().map(|h| h.eval_coords(w)).collect()).collect();
    Matrix::from_rows(rows, forms.len()).nullspace()
}

/// The unique curve through three points and `(n-1)`-secant to `n` spaces.
///
/// Column `i` is `(H1_i, c_i H2_i)` where `Hk_i` is the member of pencil `i` through `P_k` and
/// `c_i` makes the two rows agree at `P_3`.
pub fn construct_three_points<F: Field>(points: &[ProjPoint<F>], spaces: &[Pencil<F>]) -> Result<ExistenceCertificate<F>> {
    let n = ambient(points, spaces)?;
    Error::check_dim(3, points.len())?;
    Error::check_dim(n, spaces.len())?;
    let datum = Datum::new(n, spaces.to_vec(), points.to_vec())?;
    let stage = "three points";
    let first = members_through(stage, spaces, &points[0], "P1")?;
    let second = members_through(stage, spaces, &points[1], "P2")?;
    let mut bottom = Vec::with_capacity(n);
    for (i, (h1, h2)) in first.iter().zip(&second).enumerate() {
        let a = h1.eval(&points[2]);
        let b = h2.eval(&points[2]);
        if a.is_zero() || b.is_zero() {
            let k = if a.is_zero() { 1 } else { 2 };
            return Err(Error::not_generic(stage, format!("P3 lies on the hyperplane of space {} through P{k}", i + 1)));
        }
        bottom.push(h2.scale(&(a / b)));
    }
    certify_det(datum, stage, first, bottom, Method::Steiner)
}

/// The unique curve through two points and `(n-1)`-secant to `n + 1` spaces.
///
/// The first `n` spaces are columns `(k_i H1_i, m_i H2_i)`; the last space is the generalized
/// column with all weights one, which determines `k` and `m` up to scale.
pub fn construct_two_points<F: Field>(points: &[ProjPoint<F>], spaces: &[Pencil<F>]) -> Result<ExistenceCertificate<F>> {
    let n = ambient(points, spaces)?;
    Error::check_dim(2, points.len())?;
    Error::check_dim(n + 1, spaces.len())?;
    let datum = Datum::new(n, spaces.to_vec(), points.to_vec())?;
    let stage = "two points";
    let first = members_through(stage, &spaces[..n], &points[0], "P1")?;
    let second = members_through(stage, &spaces[..n], &points[1], "P2")?;
    let mut rows = [Vec::new(), Vec::new()];
    for (r, (forms, label)) in [(&first, "P1"), (&second, "P2")].into_iter().enumerate() {
        let kernel = combinations_in(forms, &spaces[n]);
        if kernel.len() != 1 {
            return Err(Error::not_generic(
                stage,
                format!("combinations of the members through {label} in the last space: dimension {}", kernel.len()),
            ));
        }
        let weights = &kernel[0];
        if let Some(i) = weights.iter().position(|w| w.is_zero()) {
            return Err(Error::not_generic(stage, format!("space {} drops out of the combination through {label}", i + 1)));
        }
        rows[r] = forms.iter().zip(weights).map(|(h, w)| h.scale(w)).collect();
    }
    let [top, bottom] = rows;
    certify_det(datum, stage, top, bottom, Method::TwoPointAnchored)
}

type OnePointSystem<F> = (Vec<LinForm<F>>, Vec<Vec<F>>, Vec<F>);

/// The linear system for the second row in [`construct_one_point`]: the members through the
/// point, a basis of the solutions `(gamma, delta)`, and the solution reproducing the first row.
pub(crate) fn one_point_system<F: Field>(
    point: &ProjPoint<F>,
    spaces: &[Pencil<F>],
) -> Result<OnePointSystem<F>> {
    let n = point.dim();
    let stage = "one point";
    let anchored = &spaces[..n];
    // unscaled members, so that the first row has coordinates (g_i(P), -f_i(P))
    let top = anchored
        .iter()
        .enumerate()
        .map(|(i, lam)| {
            let (fp, gp) = (lam.f().eval(point), lam.g().eval(point));
            if fp.is_zero() && gp.is_zero() {
                Err(Error::not_generic(stage, format!("P1 lies on space {}", i + 1)))
            } else {
                Ok(lam.f().combine(&gp, lam.g(), &-fp))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for (k, extra) in spaces[n..].iter().enumerate() {
        let kernel = combinations_in(&top, extra);
        if kernel.len() != 1 {
            return Err(Error::not_generic(
                stage,
                format!("combinations of the first row in space {}: dimension {}", n + k + 1, kernel.len()),
            ));
        }
        let e = &kernel[0];
        for w in extra.spanning_points() {
            let gammas = anchored.iter().zip(e).map(|(lam, ei)| ei.clone() * lam.f().eval_coords(&w));
            let deltas = anchored.iter().zip(e).map(|(lam, ei)| ei.clone() * lam.g().eval_coords(&w));
            rows.push(gammas.chain(deltas).collect());
        }
    }
    let solutions = Matrix::from_rows(rows, 2 * n).nullspace();
    let first_row = anchored
        .iter()
        .map(|lam| lam.g().eval(point))
        .chain(anchored.iter().map(|lam| -lam.f().eval(point)))
        .collect();
    Ok((top, solutions, first_row))
}

/// The unique curve through one point and `(n-1)`-secant to `n + 2` spaces.
///
/// The first row is anchored at the point on the first `n` spaces. The second row has column
/// `i` equal to `gamma_i f_i + delta_i g_i`; the two extra spaces impose `2(n - 1)` linear
/// conditions on `(gamma, delta)`, leaving a plane that contains the first row. Any other
/// solution gives the curve.
pub fn construct_one_point<F: Field>(points: &[ProjPoint<F>], spaces: &[Pencil<F>]) -> Result<ExistenceCertificate<F>> {
    let n = ambient(points, spaces)?;
    Error::check_dim(1, points.len())?;
    Error::check_dim(n + 2, spaces.len())?;
    let datum = Datum::new(n, spaces.to_vec(), points.to_vec())?;
    let stage = "one point";
    let (top, solutions, first_row) = one_point_system(&points[0], spaces)?;
    if solutions.len() != 2 {
        return Err(Error::not_generic(stage, format!("second-row solutions: dimension {}, expected 2", solutions.len())));
    }
    let base = Matrix::from_rows(vec![first_row], 2 * n);
    let v = solutions
        .into_iter()
        .find(|v| base.vstack(&Matrix::from_rows(vec![v.clone()], 2 * n)).rank() == 2)
        .ok_or_else(|| Error::not_generic(stage, "every second-row solution repeats the first row"))?;
    let bottom = spaces[..n]
        .iter()
        .enumerate()
        .map(|(i, lam)| lam.f().combine(&v[i], lam.g(), &v[n + i]))
        .collect();
    certify_det(datum, stage, top, bottom, Method::OnePointAnchored)
}

/// Result of [`construct`].
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome<F> {
    Exists(Box<ExistenceCertificate<F>>),
    Obstructed(Box<ObstructionCertificate<F>>),
    Unsupported(String),
}

/// Dispatches on the shape `(p, l)` of a datum with `p + l = n + 3`.
pub fn construct<F: Field>(d: &Datum<F>) -> Result<Outcome<F>> {
    let n = d.dim();
    let (p, l) = d.shape();
    let analysis = expected_count(n, p, l)?;
    let pts = d.points();
    let spaces = d.spaces();
    let exists = |mut c: ExistenceCertificate<F>| {
        if c.datum != *d {
            c.report = verify_datum(&c.curve, d)?;
            c.datum = d.clone();
        }
        Ok(Outcome::Exists(Box::new(c)))
    };
    match analysis.classification {
        Classification::Trivial => Err(Error::BadShape { analysis: Box::new(analysis) }),
        Classification::NotExists => Ok(Outcome::Obstructed(Box::new(nonexistence_certificate(d)?))),
        Classification::ExistsNonunique { count } => Ok(Outcome::Unsupported(format!(
            "{count} curves are (n-1)-secant to six lines in P^3; no constructor is implemented for this case"
        ))),
        Classification::Open => Ok(Outcome::Unsupported(format!(
            "existence for n + 3 = {} spaces and no points in P^{n} is an open problem",
            n + 3
        ))),
        Classification::ExistsUnique => match p {
            _ if p == n + 3 => exists(construct_through_points(pts)?),
            _ if p == n + 2 => exists(construct_np2_one_space(pts, &spaces[0])?),
            3 => exists(rotating(spaces, |sp| construct_three_points(pts, sp))?),
            2 => exists(rotating(spaces, |sp| construct_two_points(pts, sp))?),
            _ => exists(rotating(spaces, |sp| construct_one_point(pts, sp))?),
        },
    }
}

/// Runs an anchored constructor on each cyclic reordering of the spaces until one is generic
/// enough. Reports the first failure otherwise.
fn rotating<F: Field, T>(spaces: &[Pencil<F>], mut f: impl FnMut(&[Pencil<F>]) -> Result<T>) -> Result<T> {
    let mut first = None;
    for r in 0..spaces.len() {
        let mut order = spaces.to_vec();
        order.rotate_left(r);
        match f(&order) {
            Ok(v) => return Ok(v),
            Err(e @ Error::NotGeneric { .. }) => {
                first.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(first.expect("at least one space"))
}

fn common_zero<F: Field>(forms: &[LinForm<F>]) -> Option<ProjPoint<F>> {
    let n = forms[0].dim();
    let kernel = Matrix::from_rows(forms.iter().map(|f| f.coeffs().to_vec()).collect(), n + 1).nullspace();
    if kernel.len() == 1 {
        ProjPoint::new(kernel.into_iter().next()?).ok()
    } else {
        None
    }
}

fn sum_column<F: Field>(det: &DetRnc<F>, indices: &[usize]) -> Option<Pencil<F>> {
    let n = det.dim();
    let pick = |forms: &[LinForm<F>]| indices.iter().fold(LinForm::zero(n), |acc, &i| acc.add(&forms[i]));
    Pencil::new(pick(det.top()), pick(det.bottom())).ok()
}

fn special_attempt<F: Field>(n: usize, p: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Option<(Datum<F>, ParamRnc<F>)> {
    let det: DetRnc<F> = random::random_det(rng, n);
    let curve = det_to_param(&det).ok()?;
    let columns: Vec<Pencil<F>> =
        (0..n).map(|j| Pencil::new(det.top()[j].clone(), det.bottom()[j].clone())).collect::<Result<_>>().ok()?;
    let row_point = |a: &F, b: &F| {
        let forms: Vec<LinForm<F>> = (0..n).map(|j| det.top()[j].combine(a, &det.bottom()[j], b)).collect();
        common_zero(&forms)
    };
    let combos = |count: usize, rng: &mut rand_chacha::ChaCha8Rng| -> Option<Vec<ProjPoint<F>>> {
        random::distinct_params::<F>(rng, count)
            .iter()
            .map(|t| row_point(t.s(), &-F::one()))
            .collect()
    };
    let (points, spaces) = if p == n + 3 {
        (combos(n + 3, rng)?, Vec::new())
    } else if p == n + 2 {
        (combos(n + 2, rng)?, vec![columns[0].clone()])
    } else {
        let one = F::one();
        let zero = F::zero();
        let f_point = row_point(&one, &zero)?;
        let g_point = row_point(&zero, &one)?;
        let all: Vec<usize> = (0..n).collect();
        match p {
            3 => (vec![f_point, g_point, row_point(&one, &one)?], columns),
            2 => {
                let mut spaces = columns;
                spaces.push(sum_column(&det, &all)?);
                (vec![f_point, g_point], spaces)
            }
            _ => {
                let (first, second): (Vec<usize>, Vec<usize>) = if n % 2 == 1 {
                    let m = n.div_ceil(2);
                    ((0..m).collect(), (m - 1..n).collect())
                } else {
                    let m = (n + 2) / 2;
                    ((0..m).collect(), std::iter::once(0).chain(m - 1..n).collect())
                };
                let mut spaces = columns;
                spaces.push(sum_column(&det, &first)?);
                spaces.push(sum_column(&det, &second)?);
                (vec![f_point], spaces)
            }
        }
    };
    let datum = Datum::new(n, spaces, points).ok()?;
    verify_datum(&curve, &datum).ok()?.passed.then_some((datum, curve))
}

/// A datum built from a seeded random determinantal matrix the way the existence proofs build
/// theirs, together with the curve of that matrix.
pub fn special_datum<F: Field>(n: usize, p: usize, l: usize, seed: u64) -> Result<(Datum<F>, ParamRnc<F>)> {
    let analysis = expected_count(n, p, l)?;
    if analysis.classification != Classification::ExistsUnique {
        return Err(Error::Unsupported(format!("no special datum for shape ({p}, {l}) in P^{n}")));
    }
    let mut rng = random::rng(seed);
    for _ in 0..32 {
        if let Some(found) = special_attempt(n, p, &mut rng) {
            return Ok(found);
        }
    }
    Err(Error::not_generic("special datum", format!("no generic matrix found for seed {seed}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{chord_space, curve_equals, Param};
    use crate::Scalar;

    type P = ProjPoint<Scalar>;

    fn moment(n: usize) -> ParamRnc<Scalar> {
        ParamRnc::moment(n)
    }

    fn at(c: &ParamRnc<Scalar>, t: i64) -> P {
        c.point_at(&Param::from_int(t))
    }

    fn inf(c: &ParamRnc<Scalar>) -> P {
        c.point_at(&Param::infinity())
    }

    fn chord(c: &ParamRnc<Scalar>, params: &[i64]) -> Pencil<Scalar> {
        chord_space(c, &params.iter().map(|&t| Param::from_int(t)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn expected_count_examples() {
        let a = expected_count(3, 6, 0).unwrap();
        assert_eq!((a.dim_h, a.conditions), (12, 12));
        assert_eq!(a.verdict, Verdict::FiniteExpected);
        assert_eq!(a.classification, Classification::ExistsUnique);
        assert_eq!(expected_count(4, 4, 3).unwrap().classification, Classification::NotExists);
        assert_eq!(expected_count(3, 0, 6).unwrap().classification, Classification::ExistsNonunique { count: 6 });
        assert_eq!(expected_count(5, 0, 8).unwrap().classification, Classification::Open);
        let over = expected_count(3, 7, 0).unwrap();
        assert_eq!((over.verdict, over.classification), (Verdict::Overdetermined, Classification::Trivial));
        assert_eq!(expected_count(4, 1, 1).unwrap().verdict, Verdict::PositiveDimensional);
        assert_eq!(expected_count(2, 5, 0), Err(Error::BadDimension(2)));
    }

    #[test]
    fn expected_count_shapes_for_every_n() {
        for n in 3..=8 {
            for p in 0..=n + 3 {
                let a = expected_count(n, p, n + 3 - p).unwrap();
                assert_eq!(a.verdict, Verdict::FiniteExpected);
                let exists = matches!(a.classification, Classification::ExistsUnique);
                assert_eq!(exists, p == n + 3 || p == n + 2 || (1..=3).contains(&p), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn through_points_frame_example() {
        let points: Vec<P> = [&[1, 0, 0, 0][..], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 1, 1], &[1, 2, 3, 4]]
            .iter()
            .map(|c| P::from_ints(c))
            .collect();
        let cert = construct_through_points(&points).unwrap();
        assert!(cert.report.passed);
        assert_eq!(cert.report.point_params.len(), 6);
        assert_eq!(cert.method, Method::FrameFit);
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn through_points_recovers_moment_curve() {
        let c = moment(3);
        let mut points: Vec<P> = (0..5).map(|t| at(&c, t)).collect();
        points.push(inf(&c));
        let cert = construct_through_points(&points).unwrap();
        assert!(curve_equals(&cert.curve, &c).unwrap());
    }

    #[test]
    fn through_points_rejects_coplanar() {
        let points: Vec<P> = [&[1, 0, 0, 0][..], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 0], &[1, 2, 3, 0], &[1, 2, 3, 4]]
            .iter()
            .map(|c| P::from_ints(c))
            .collect();
        assert!(matches!(construct_through_points(&points), Err(Error::NotGeneric { .. })));
    }

    #[test]
    fn frame_fit_witness_names_hyperplane() {
        // last point (1:1:0:1) in the frame coordinates lies on x2 = 0 with e0, e1, e3
        let points: Vec<P> = [&[1, 0, 0, 0][..], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 1, 1], &[1, 2, 0, 4]]
            .iter()
            .map(|c| P::from_ints(c))
            .collect();
        match construct_through_points(&points) {
            Err(Error::NotGeneric { witness, .. }) => assert!(witness.contains("[0, 1, 3, 5]"), "{witness}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cremona_examples() {
        let x = P::from_ints(&[1, 2, 3, 4]);
        assert_eq!(cremona_apply(&x).unwrap(), P::from_ints(&[24, 12, 8, 6]));
        assert_eq!(cremona_apply(&cremona_apply(&x).unwrap()).unwrap(), x);
        assert_eq!(cremona_apply(&P::from_ints(&[1, 0, 0, 1])), Err(Error::FundamentalLocus));

        let a = cremona_apply(&P::from_ints(&[1, 1, 1, 1])).unwrap();
        let b = cremona_apply(&x).unwrap();
        let pulled = cremona_pullback_line(&a, &b).unwrap();
        let points: Vec<P> = [&[1, 0, 0, 0][..], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 1, 1], &[1, 2, 3, 4]]
            .iter()
            .map(|c| P::from_ints(c))
            .collect();
        let fitted = construct_through_points(&points).unwrap();
        assert!(curve_equals(&pulled, &fitted.curve).unwrap());
        let via = construct_through_points_cremona(&points).unwrap();
        assert!(curve_equals(&via.curve, &fitted.curve).unwrap());
    }

    #[test]
    fn cremona_line_through_fundamental_locus() {
        // the line x2 = x3 = 0 lies in the fundamental locus
        let a = P::from_ints(&[1, 2, 0, 0]);
        let b = P::from_ints(&[3, 1, 0, 0]);
        assert_eq!(cremona_pullback_line(&a, &b), Err(Error::FundamentalLocus));
    }

    #[test]
    fn np2_one_space_recovers_moment_curve() {
        for n in 3..=6 {
            let c = moment(n);
            let mut points: Vec<P> = (0..=n as i64).map(|t| at(&c, t)).collect();
            points.push(inf(&c));
            let lam = chord(&c, &((n as i64 + 1)..(2 * n as i64)).collect::<Vec<_>>());
            let cert = construct_np2_one_space(&points, &lam).unwrap();
            assert!(curve_equals(&cert.curve, &c).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn np2_one_space_rejects_incident_point() {
        let c = moment(3);
        let mut points: Vec<P> = (0..4).map(|t| at(&c, t)).collect();
        points.push(inf(&c));
        let lam = chord(&c, &[0, 5]);
        assert!(matches!(construct_np2_one_space(&points, &lam), Err(Error::NotGeneric { .. })));
    }

    #[test]
    fn three_points_recovers_moment_curve() {
        let c = moment(3);
        let points = vec![P::from_ints(&[1, 0, 0, 0]), P::from_ints(&[0, 0, 0, 1]), P::from_ints(&[1, 1, 1, 1])];
        let spaces = vec![chord(&c, &[2, 3]), chord(&c, &[4, 5]), chord(&c, &[-1, 6])];
        let cert = construct_three_points(&points, &spaces).unwrap();
        assert!(curve_equals(&cert.curve, &c).unwrap());
        for (j, lam) in spaces.iter().enumerate() {
            let column = Pencil::new(cert.det.top()[j].clone(), cert.det.bottom()[j].clone()).unwrap();
            assert_eq!(&column, lam);
        }
        for n in 4..=5 {
            let c = moment(n);
            let points = vec![at(&c, 0), inf(&c), at(&c, 1)];
            let spaces: Vec<_> = (0..n as i64)
                .map(|k| chord(&c, &((2 + k * n as i64)..(2 + k * n as i64 + n as i64 - 1)).collect::<Vec<_>>()))
                .collect();
            let cert = construct_three_points(&points, &spaces).unwrap();
            assert!(curve_equals(&cert.curve, &c).unwrap());
        }
    }

    #[test]
    fn three_points_rejects_point_on_space() {
        let c = moment(3);
        let points = vec![at(&c, 0), inf(&c), at(&c, 2)];
        let spaces = vec![chord(&c, &[2, 3]), chord(&c, &[4, 5]), chord(&c, &[-1, 6])];
        assert!(matches!(construct_three_points(&points, &spaces), Err(Error::NotGeneric { .. })));
    }

    #[test]
    fn two_points_recovers_moment_curve() {
        for n in 3..=4 {
            let c = moment(n);
            let points = vec![at(&c, 0), inf(&c)];
            let step = n as i64 - 1;
            let spaces: Vec<_> = (0..=n as i64)
                .map(|k| chord(&c, &((1 + k * step)..(1 + (k + 1) * step)).collect::<Vec<_>>()))
                .collect();
            let cert = construct_two_points(&points, &spaces).unwrap();
            assert!(curve_equals(&cert.curve, &c).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn two_points_rejects_fat_kernel() {
        // two anchored spaces share the member through P1, so the last space sees a fat kernel
        let c = moment(3);
        let points = vec![at(&c, 0), inf(&c)];
        let shared = LinForm::from_ints(&[0, 1, 1, 1]);
        let a = Pencil::new(shared.clone(), LinForm::from_ints(&[1, 0, 2, 0])).unwrap();
        let b = Pencil::new(shared.clone(), LinForm::from_ints(&[1, 3, 0, 1])).unwrap();
        let spaces = vec![a, b, chord(&c, &[5, 6]), Pencil::new(shared, LinForm::from_ints(&[2, 0, 1, 5])).unwrap()];
        assert!(matches!(construct_two_points(&points, &spaces), Err(Error::NotGeneric { .. })));
    }

    #[test]
    fn one_point_recovers_moment_curve() {
        for n in 3..=5 {
            let c = moment(n);
            let step = n as i64 - 1;
            let spaces: Vec<_> = (0..n as i64 + 2)
                .map(|k| chord(&c, &((1 + k * step)..(1 + (k + 1) * step)).collect::<Vec<_>>()))
                .collect();
            let cert = construct_one_point(&[at(&c, 0)], &spaces).unwrap();
            assert!(curve_equals(&cert.curve, &c).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn one_point_solution_space_is_a_plane() {
        for seed in 0..100 {
            let n = 3 + (seed as usize % 4);
            let (d, _) = random::forward_datum::<Scalar>(n, 1, n + 2, seed).unwrap();
            let (_, solutions, _) = one_point_system(&d.points()[0], d.spaces()).unwrap();
            assert_eq!(solutions.len(), 2, "seed {seed}");
        }
    }

    #[test]
    fn dispatch() {
        let c = moment(3);
        let mut points: Vec<P> = (0..5).map(|t| at(&c, t)).collect();
        points.push(inf(&c));
        let d = Datum::new(3, vec![], points).unwrap();
        match construct(&d).unwrap() {
            Outcome::Exists(cert) => assert_eq!(cert.method, Method::FrameFit),
            other => panic!("unexpected {other:?}"),
        }

        let d = random::generic_datum::<Scalar>(3, 4, 2, 1);
        assert!(matches!(construct(&d).unwrap(), Outcome::Obstructed(_)));

        let d = random::generic_datum::<Scalar>(3, 0, 6, 1);
        assert!(matches!(construct(&d).unwrap(), Outcome::Unsupported(_)));

        let d = random::generic_datum::<Scalar>(3, 2, 2, 1);
        assert!(matches!(construct(&d), Err(Error::BadShape { .. })));
    }

    #[test]
    fn special_data_reconstruct() {
        for n in 3..=5 {
            for p in [n + 3, n + 2, 3, 2, 1] {
                let l = n + 3 - p;
                let (d, c) = special_datum::<Scalar>(n, p, l, 11).unwrap();
                assert_eq!(d.shape(), (p, l));
                match construct(&d).unwrap() {
                    Outcome::Exists(cert) => assert!(curve_equals(&cert.curve, &c).unwrap(), "n={n} p={p}"),
                    other => panic!("unexpected {other:?}"),
                }
            }
        }
    }

    #[test]
    fn special_datum_shapes_follow_the_matrix() {
        let (d, c) = special_datum::<Scalar>(4, 3, 4, 5).unwrap();
        let det = param_to_det(&c);
        // every space is a generalized column of some matrix of the curve
        for lam in d.spaces() {
            assert!(crate::curve::generalized_column_for(&det, lam).is_some());
        }
        assert!(matches!(special_datum::<Scalar>(3, 4, 2, 0), Err(Error::Unsupported(_))));
    }
}
