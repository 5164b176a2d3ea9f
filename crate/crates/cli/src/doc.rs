//! JSON documents for data, curves, certificates and reports.
//!
//! Every rational is written as an exact string such as `"-22/7"`. On input, plain JSON integers
//! are accepted as well. Each document converts losslessly to and from its core counterpart.

use std::fmt;
use std::str::FromStr;

use rnc_core::construct::{Classification, CountAnalysis, Method, Verdict};
use rnc_core::curve::det_to_param;
use rnc_core::obstruction::{Containment, DegreeLedger};
use rnc_core::postulation::{DoublePointRow, IntersectionLedger, PostulationReport};
use rnc_core::projective::pencil_from_points;
use rnc_core::{
    BinaryForm, Datum, DefectWitness, DetRnc, ExistenceCertificate, LinForm, ObstructionCertificate, Param, ParamRnc, Pencil,
    ProjPoint, Quadric, Scalar, SchemeSpec, SecancyResult, Signature, VerificationReport,
};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

pub const VERSION: u32 = 1;

type Res<T> = Result<T, CliError>;

#[derive(Clone, Debug, PartialEq)]
pub struct Rat(pub Scalar);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

struct RatVisitor;

impl Visitor<'_> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or an exact rational string like \"-22/7\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat(Scalar::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat(Scalar::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rat, E> {
        Err(E::custom(format!("floating point value {v} is not exact; write it as a string \"p/q\"")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        Scalar::from_str(v.trim()).map(Rat).map_err(|e| E::custom(format!("invalid rational {v:?}: {e}")))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

pub fn rats(v: &[Scalar]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn scalars(v: &[Rat]) -> Vec<Scalar> {
    v.iter().map(|r| r.0.clone()).collect()
}

fn check_len(loc: &str, what: &str, expected: usize, found: usize) -> Res<()> {
    if expected == found {
        Ok(())
    } else {
        Err(CliError::parse(loc, format!("expected {expected} {what}, found {found}")))
    }
}

fn point(loc: &str, n: usize, coords: &[Rat]) -> Res<ProjPoint> {
    check_len(loc, "coordinates", n + 1, coords.len())?;
    ProjPoint::new(scalars(coords)).map_err(|e| CliError::invalid(loc, e))
}

fn points(loc: &str, n: usize, list: &[Vec<Rat>]) -> Res<Vec<ProjPoint>> {
    list.iter().enumerate().map(|(i, c)| point(&format!("{loc}[{i}]"), n, c)).collect()
}

fn lin_forms(loc: &str, n: usize, list: &[Vec<Rat>]) -> Res<Vec<LinForm>> {
    list.iter()
        .enumerate()
        .map(|(i, c)| {
            check_len(&format!("{loc}[{i}]"), "coefficients", n + 1, c.len())?;
            Ok(LinForm::new(scalars(c)))
        })
        .collect()
}

fn param(loc: &str, p: &[Rat; 2]) -> Res<Param> {
    Param::new(p[0].0.clone(), p[1].0.clone()).map_err(|e| CliError::invalid(loc, e))
}

fn param_doc(t: &Param) -> [Rat; 2] {
    [Rat(t.s().clone()), Rat(t.u().clone())]
}

fn binary_form(f: &[Rat]) -> BinaryForm {
    BinaryForm::new(scalars(f))
}

/// A codimension-two space, by two linear forms or by `n - 1` spanning points.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forms: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span_points: Option<Vec<Vec<Rat>>>,
}

impl SpaceDoc {
    pub fn from_core(lam: &Pencil) -> Self {
        SpaceDoc { forms: Some(vec![rats(lam.f().coeffs()), rats(lam.g().coeffs())]), span_points: None }
    }

    pub fn to_core(&self, loc: &str, n: usize) -> Res<Pencil> {
        match (&self.forms, &self.span_points) {
            (Some(forms), None) => {
                check_len(&format!("{loc}.forms"), "forms", 2, forms.len())?;
                let mut fs = lin_forms(&format!("{loc}.forms"), n, forms)?;
                let g = fs.pop().unwrap();
                let f = fs.pop().unwrap();
                Pencil::new(f, g).map_err(|e| CliError::invalid(loc, e))
            }
            (None, Some(pts)) => {
                let at = format!("{loc}.span_points");
                check_len(&at, "points", n.saturating_sub(1), pts.len())?;
                pencil_from_points(&points(&at, n, pts)?).map_err(|e| CliError::invalid(at, e))
            }
            _ => Err(CliError::parse(loc, "a space needs exactly one of \"forms\" or \"span_points\"")),
        }
    }
}

/// A curve, by its parametrizing forms or by the two rows of its determinantal matrix.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    /// Coefficient `k` of each form multiplies `s^k u^(n-k)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forms: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<Vec<Vec<Rat>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveRep {
    Param(ParamRnc),
    Det(DetRnc),
}

impl CurveRep {
    pub fn into_param(self) -> rnc_core::Result<ParamRnc> {
        match self {
            CurveRep::Param(c) => Ok(c),
            CurveRep::Det(d) => det_to_param(&d),
        }
    }
}

impl CurveDoc {
    pub fn from_param(c: &ParamRnc) -> Self {
        CurveDoc { forms: Some(c.forms().iter().map(|f| rats(f.coeffs())).collect()), ..Default::default() }
    }

    pub fn from_det(d: &DetRnc) -> Self {
        let row = |forms: &[LinForm]| forms.iter().map(|l| rats(l.coeffs())).collect();
        CurveDoc { forms: None, top: Some(row(d.top())), bottom: Some(row(d.bottom())) }
    }

    pub fn to_core(&self, loc: &str, n: usize) -> Res<CurveRep> {
        match (&self.forms, &self.top, &self.bottom) {
            (Some(forms), None, None) => {
                let at = format!("{loc}.forms");
                check_len(&at, "forms", n + 1, forms.len())?;
                for (i, f) in forms.iter().enumerate() {
                    check_len(&format!("{at}[{i}]"), "coefficients", n + 1, f.len())?;
                }
                let forms = forms.iter().map(|f| binary_form(f)).collect();
                ParamRnc::new(forms).map(CurveRep::Param).map_err(|e| CliError::invalid(at, e))
            }
            (None, Some(top), Some(bottom)) => {
                check_len(&format!("{loc}.top"), "forms", n, top.len())?;
                check_len(&format!("{loc}.bottom"), "forms", n, bottom.len())?;
                let top = lin_forms(&format!("{loc}.top"), n, top)?;
                let bottom = lin_forms(&format!("{loc}.bottom"), n, bottom)?;
                DetRnc::new(top, bottom).map(CurveRep::Det).map_err(|e| CliError::invalid(loc, e))
            }
            _ => Err(CliError::parse(loc, "a curve needs either \"forms\" or both \"top\" and \"bottom\"")),
        }
    }

    pub fn param(&self, loc: &str, n: usize) -> Res<ParamRnc> {
        self.to_core(loc, n)?.into_param().map_err(|e| CliError::invalid(loc, e))
    }
}

/// Input document: a datum, optionally with a curve and command parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub n: usize,
    #[serde(default)]
    pub points: Vec<Vec<Rat>>,
    #[serde(default)]
    pub spaces: Vec<SpaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveDoc>,
}

impl DatumDoc {
    pub fn from_core(d: &Datum) -> Self {
        DatumDoc {
            version: None,
            n: d.dim(),
            points: d.points().iter().map(|p| rats(p.coords())).collect(),
            spaces: d.spaces().iter().map(SpaceDoc::from_core).collect(),
            seed: None,
            degree: None,
            curve: None,
        }
    }

    fn check_version(&self) -> Res<()> {
        match self.version {
            None | Some(VERSION) => Ok(()),
            Some(v) => Err(CliError::parse("version", format!("unsupported document version {v}, expected {VERSION}"))),
        }
    }

    fn parts(&self) -> Res<(Vec<ProjPoint>, Vec<Pencil>)> {
        self.check_version()?;
        let pts = points("points", self.n, &self.points)?;
        let spaces = self.spaces.iter().enumerate().map(|(i, s)| s.to_core(&format!("spaces[{i}]"), self.n)).collect::<Res<_>>()?;
        Ok((pts, spaces))
    }

    pub fn datum(&self) -> Res<Datum> {
        let (pts, spaces) = self.parts()?;
        Datum::new(self.n, spaces, pts).map_err(|e| CliError::invalid("datum", e))
    }

    pub fn scheme(&self, degree: Option<usize>) -> Res<SchemeSpec> {
        let degree = degree.or(self.degree).ok_or_else(|| CliError::parse("degree", "no degree given"))?;
        let (pts, spaces) = self.parts()?;
        SchemeSpec::new(self.n, pts, spaces, degree).map_err(|e| CliError::invalid("degree", e))
    }

    pub fn curve(&self) -> Res<ParamRnc> {
        self.check_version()?;
        self.curve.as_ref().ok_or_else(|| CliError::parse("curve", "the document has no curve"))?.param("curve", self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecancyDoc {
    pub degree: usize,
    pub d_form: Vec<Rat>,
    pub smooth: bool,
    pub secant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub point_params: Vec<Option<[Rat; 2]>>,
    pub spaces: Vec<SecancyDoc>,
    pub passed: bool,
}

impl ReportDoc {
    pub fn from_core(r: &VerificationReport) -> Self {
        ReportDoc {
            point_params: r.point_params.iter().map(|t| t.as_ref().map(param_doc)).collect(),
            spaces: r
                .spaces
                .iter()
                .map(|s| SecancyDoc { degree: s.degree, d_form: rats(s.d_form.coeffs()), smooth: s.smooth, secant: s.is_n_minus_1_secant })
                .collect(),
            passed: r.passed,
        }
    }

    pub fn to_core(&self) -> Res<VerificationReport> {
        let point_params = self
            .point_params
            .iter()
            .enumerate()
            .map(|(i, t)| t.as_ref().map(|t| param(&format!("report.point_params[{i}]"), t)).transpose())
            .collect::<Res<_>>()?;
        let spaces = self
            .spaces
            .iter()
            .map(|s| SecancyResult { degree: s.degree, d_form: binary_form(&s.d_form), smooth: s.smooth, is_n_minus_1_secant: s.secant })
            .collect();
        Ok(VerificationReport { point_params, spaces, passed: self.passed })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExistenceDoc {
    pub method: String,
    pub datum: DatumDoc,
    pub curve: CurveDoc,
    pub det: CurveDoc,
    pub report: ReportDoc,
}

impl ExistenceDoc {
    pub fn from_core(c: &ExistenceCertificate) -> Self {
        ExistenceDoc {
            method: c.method.tag().into(),
            datum: DatumDoc::from_core(&c.datum),
            curve: CurveDoc::from_param(&c.curve),
            det: CurveDoc::from_det(&c.det),
            report: ReportDoc::from_core(&c.report),
        }
    }

    pub fn to_core(&self) -> Res<ExistenceCertificate> {
        let n = self.datum.n;
        let method = Method::from_tag(&self.method).ok_or_else(|| CliError::parse("method", format!("unknown method {:?}", self.method)))?;
        let curve = match self.curve.to_core("curve", n)? {
            CurveRep::Param(c) => c,
            CurveRep::Det(_) => return Err(CliError::parse("curve", "expected parametrizing forms")),
        };
        let det = match self.det.to_core("det", n)? {
            CurveRep::Det(d) => d,
            CurveRep::Param(_) => return Err(CliError::parse("det", "expected \"top\" and \"bottom\"")),
        };
        Ok(ExistenceCertificate { datum: self.datum.datum()?, curve, det, report: self.report.to_core()?, method })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContainmentDoc {
    pub spaces: [bool; 2],
    pub points: [bool; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeLedgerDoc {
    pub n: usize,
    pub intersection_lower_bound: usize,
    pub bezout_bound: usize,
    #[serde(default, skip_deserializing)]
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionDoc {
    pub n: usize,
    /// Human-readable form of `quadric`; ignored on input.
    #[serde(default, skip_deserializing)]
    pub equation: String,
    /// Coefficients of `x_i x_j` for `i <= j`, in lexicographic order.
    pub quadric: Vec<Rat>,
    pub spaces: Vec<SpaceDoc>,
    pub points: Vec<Vec<Rat>>,
    pub contains: ContainmentDoc,
    pub excluded_point: Vec<Rat>,
    pub excluded_value: Rat,
    pub ledger: DegreeLedgerDoc,
}

impl ObstructionDoc {
    pub fn from_core(c: &ObstructionCertificate) -> Self {
        ObstructionDoc {
            n: c.dim(),
            equation: c.quadric.to_string(),
            quadric: rats(c.quadric.coeffs()),
            spaces: c.spaces.iter().map(SpaceDoc::from_core).collect(),
            points: c.points.iter().map(|p| rats(p.coords())).collect(),
            contains: ContainmentDoc { spaces: c.contains.spaces, points: c.contains.points },
            excluded_point: rats(c.excluded_point.coords()),
            excluded_value: Rat(c.excluded_value.clone()),
            ledger: DegreeLedgerDoc {
                n: c.ledger.n,
                intersection_lower_bound: c.ledger.intersection_lower_bound,
                bezout_bound: c.ledger.bezout_bound,
                holds: c.ledger.holds(),
            },
        }
    }

    pub fn to_core(&self) -> Res<ObstructionCertificate> {
        let n = self.n;
        let quadric = Quadric::new(n, scalars(&self.quadric)).map_err(|e| CliError::invalid("quadric", e))?;
        check_len("spaces", "spaces", 2, self.spaces.len())?;
        check_len("points", "points", 3, self.points.len())?;
        let spaces: Vec<Pencil> =
            self.spaces.iter().enumerate().map(|(i, s)| s.to_core(&format!("spaces[{i}]"), n)).collect::<Res<_>>()?;
        let pts = points("points", n, &self.points)?;
        Ok(ObstructionCertificate {
            quadric,
            spaces: spaces.try_into().expect("length checked"),
            points: pts.try_into().expect("length checked"),
            contains: Containment { spaces: self.contains.spaces, points: self.contains.points },
            excluded_point: point("excluded_point", n, &self.excluded_point)?,
            excluded_value: self.excluded_value.0.clone(),
            ledger: DegreeLedger {
                n: self.ledger.n,
                intersection_lower_bound: self.ledger.intersection_lower_bound,
                bezout_bound: self.ledger.bezout_bound,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountDoc {
    pub n: usize,
    pub p: usize,
    pub l: usize,
    pub dim_h: usize,
    pub conditions: usize,
    pub verdict: String,
    pub classification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

impl CountDoc {
    pub fn from_core(a: &CountAnalysis) -> Self {
        let (classification, count) = match a.classification {
            Classification::ExistsNonunique { count } => ("exists_nonunique".to_string(), Some(count)),
            c => (c.to_string(), None),
        };
        CountDoc { n: a.n, p: a.p, l: a.l, dim_h: a.dim_h, conditions: a.conditions, verdict: a.verdict.to_string(), classification, count }
    }

    pub fn to_core(&self) -> Res<CountAnalysis> {
        let verdict = [Verdict::Overdetermined, Verdict::FiniteExpected, Verdict::PositiveDimensional]
            .into_iter()
            .find(|v| v.to_string() == self.verdict)
            .ok_or_else(|| CliError::parse("verdict", format!("unknown verdict {:?}", self.verdict)))?;
        let classification = match (self.classification.as_str(), self.count) {
            ("exists_nonunique", Some(count)) => Classification::ExistsNonunique { count },
            ("exists_unique", None) => Classification::ExistsUnique,
            ("not_exists", None) => Classification::NotExists,
            ("open", None) => Classification::Open,
            ("trivial", None) => Classification::Trivial,
            (c, _) => return Err(CliError::parse("classification", format!("unknown classification {c:?}"))),
        };
        Ok(CountAnalysis { n: self.n, p: self.p, l: self.l, dim_h: self.dim_h, conditions: self.conditions, verdict, classification })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerDoc {
    pub terms: Vec<usize>,
    pub bound: usize,
    #[serde(default, skip_deserializing)]
    pub total: usize,
    #[serde(default, skip_deserializing)]
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub curve: CurveDoc,
    pub ledger: LedgerDoc,
}

impl WitnessDoc {
    pub fn from_core(w: &DefectWitness) -> Self {
        WitnessDoc {
            curve: CurveDoc::from_param(&w.curve),
            ledger: LedgerDoc { terms: w.ledger.terms.clone(), bound: w.ledger.bound, total: w.ledger.total(), holds: w.ledger.holds() },
        }
    }

    pub fn to_core(&self, n: usize) -> Res<DefectWitness> {
        Ok(DefectWitness {
            curve: self.curve.param("witness.curve", n)?,
            ledger: IntersectionLedger { terms: self.ledger.terms.clone(), bound: self.ledger.bound },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PostulationDoc {
    pub n: usize,
    pub degree: usize,
    pub total_monomials: usize,
    pub item_conditions: Vec<usize>,
    pub conditions: usize,
    pub expected: usize,
    pub h_formula_value: Option<usize>,
    pub actual_hf: usize,
    pub deficit: usize,
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

impl PostulationDoc {
    pub fn from_core(r: &PostulationReport) -> Self {
        PostulationDoc {
            n: r.n,
            degree: r.degree,
            total_monomials: r.total_monomials,
            item_conditions: r.item_conditions.clone(),
            conditions: r.conditions,
            expected: r.expected,
            h_formula_value: r.h_formula_value,
            actual_hf: r.actual_hf,
            deficit: r.deficit,
            note: r.note.clone(),
            witness: None,
        }
    }

    pub fn to_core(&self) -> PostulationReport {
        PostulationReport {
            n: self.n,
            degree: self.degree,
            total_monomials: self.total_monomials,
            item_conditions: self.item_conditions.clone(),
            conditions: self.conditions,
            expected: self.expected,
            h_formula_value: self.h_formula_value,
            actual_hf: self.actual_hf,
            deficit: self.deficit,
            note: self.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowDoc {
    pub n: usize,
    pub p: usize,
    pub d: usize,
    pub total_monomials: usize,
    pub conditions: usize,
    pub expected: usize,
    pub actual: usize,
    pub deficit: usize,
    pub exceptional: bool,
}

impl From<&DoublePointRow> for RowDoc {
    fn from(r: &DoublePointRow) -> Self {
        RowDoc {
            n: r.n,
            p: r.p,
            d: r.d,
            total_monomials: r.total_monomials,
            conditions: r.conditions,
            expected: r.expected,
            actual: r.actual,
            deficit: r.deficit,
            exceptional: r.exceptional,
        }
    }
}

impl From<&RowDoc> for DoublePointRow {
    fn from(r: &RowDoc) -> Self {
        DoublePointRow {
            n: r.n,
            p: r.p,
            d: r.d,
            total_monomials: r.total_monomials,
            conditions: r.conditions,
            expected: r.expected,
            actual: r.actual,
            deficit: r.deficit,
            exceptional: r.exceptional,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignatureDoc {
    pub point_params: Vec<[Rat; 2]>,
    pub space_forms: Vec<Vec<Rat>>,
}

impl SignatureDoc {
    pub fn from_core(s: &Signature) -> Self {
        SignatureDoc {
            point_params: s.point_params.iter().map(param_doc).collect(),
            space_forms: s.space_forms.iter().map(|f| rats(f.coeffs())).collect(),
        }
    }

    pub fn to_core(&self) -> Res<Signature> {
        let point_params =
            self.point_params.iter().enumerate().map(|(i, t)| param(&format!("point_params[{i}]"), t)).collect::<Res<_>>()?;
        Ok(Signature { point_params, space_forms: self.space_forms.iter().map(|f| binary_form(f)).collect() })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalentDoc {
    pub equivalent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signatures: Option<[SignatureDoc; 2]>,
}

/// Reads a document, reporting the JSON path of the first problem.
pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Res<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let location = if path == "." || path == "?" { format!("line {} column {}", inner.line(), inner.column()) } else { path };
        let message = inner.to_string();
        let message = message.rsplit_once(" at line ").map_or(message.clone(), |(m, _)| m.to_string());
        CliError::parse(location, message)
    })
}
