//! Projective equivalence of ordered configurations, read off on the interpolating curve.
//!
//! Two generic data of the same shape are equivalent iff their point parameters and the
//! intersection forms of their spaces agree up to one Möbius transformation. Normalizing the
//! first three point parameters to `0, 1, infinity` leaves no freedom, so the normalized values
//! are a complete invariant.

use std::fmt;

use crate::construct::{construct, Datum, Outcome};
use crate::curve::{normalizing_mobius, verify_datum, Param, ParamRnc};
use crate::error::{Error, Result};
use crate::kernel::BinaryForm;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Signature<F> {
    /// Starts with `(0:1), (1:1), (1:0)`.
    pub point_params: Vec<Param<F>>,
    /// Monic, degree `n - 1`.
    pub space_forms: Vec<BinaryForm<F>>,
}

impl<F: Field> fmt::Display for Signature<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.point_params.iter().map(ToString::to_string).collect();
        write!(f, "points [{}]", params.join(", "))?;
        for (i, form) in self.space_forms.iter().enumerate() {
            write!(f, "\nL{}: {form}", i + 1)?;
        }
        Ok(())
    }
}

fn apply_mobius<F: Field>(m: &[F; 4], t: &Param<F>) -> Result<Param<F>> {
    let [a, b, c, d] = m;
    Param::new(a.clone() * t.s().clone() + b.clone() * t.u().clone(), c.clone() * t.s().clone() + d.clone() * t.u().clone())
}

/// The form whose roots are the images of the roots of `f`.
fn transport<F: Field>(m: &[F; 4], f: &BinaryForm<F>) -> BinaryForm<F> {
    let [a, b, c, d] = m;
    f.substitute(d, &-b.clone(), &-c.clone(), a).monic()
}

pub fn signature<F: Field>(datum: &Datum<F>) -> Result<Signature<F>> {
    let (p, _) = datum.shape();
    if p < 3 {
        return Err(Error::Unsupported(format!(
            "equivalence needs at least three points to fix a parametrization, got {p}"
        )));
    }
    let cert = match construct(datum)? {
        Outcome::Exists(cert) => cert,
        Outcome::Obstructed(_) => return Err(Error::Unsupported("no curve exists for this datum".into())),
        Outcome::Unsupported(why) => return Err(Error::Unsupported(why)),
    };
    signature_on(&cert.curve, datum)
}

/// The signature read off a given curve through the datum. Any parametrization of the
/// interpolating curve gives the same result.
pub fn signature_on<F: Field>(curve: &ParamRnc<F>, datum: &Datum<F>) -> Result<Signature<F>> {
    let report = verify_datum(curve, datum)?;
    if !report.passed {
        return Err(Error::not_generic("signature", "the curve does not satisfy the datum"));
    }
    let params: Vec<Param<F>> = report.point_params.iter().flatten().cloned().collect();
    if params.len() < 3 {
        return Err(Error::Unsupported(format!(
            "equivalence needs at least three points to fix a parametrization, got {}",
            params.len()
        )));
    }
    let m = normalizing_mobius(&params[0], &params[1], &params[2])?;
    Ok(Signature {
        point_params: params.iter().map(|t| apply_mobius(&m, t)).collect::<Result<_>>()?,
        space_forms: report.spaces.iter().map(|s| transport(&m, &s.d_form)).collect(),
    })
}

/// Ordered projective equivalence. Data of different shapes are never equivalent.
pub fn are_equivalent<F: Field>(a: &Datum<F>, b: &Datum<F>) -> Result<bool> {
    if a.dim() != b.dim() || a.shape() != b.shape() {
        return Ok(false);
    }
    Ok(signature(a)? == signature(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::chord_space;
    use crate::projective::{Pencil, ProjPoint};
    use crate::Scalar;

    type T = Param<Scalar>;

    fn moment_points(params: &[Option<i64>]) -> Vec<ProjPoint<Scalar>> {
        let c = ParamRnc::<Scalar>::moment(3);
        params.iter().map(|t| c.point_at(&t.map_or_else(T::infinity, T::from_int))).collect()
    }

    #[test]
    fn mobius_sends_triple_to_frame() {
        let m = normalizing_mobius(&T::from_int(2), &T::from_int(-1), &T::from_int(7)).unwrap();
        assert_eq!(apply_mobius(&m, &T::from_int(2)).unwrap(), T::from_int(0));
        assert_eq!(apply_mobius(&m, &T::from_int(-1)).unwrap(), T::from_int(1));
        assert_eq!(apply_mobius(&m, &T::from_int(7)).unwrap(), T::infinity());
        assert!(normalizing_mobius(&T::from_int(2), &T::from_int(2), &T::from_int(7)).is_err());
    }

    #[test]
    fn normalized_points_are_unchanged() {
        let d = Datum::new(3, vec![], moment_points(&[Some(0), Some(1), None, Some(2), Some(3), Some(4)])).unwrap();
        let sig = signature(&d).unwrap();
        let expected: Vec<T> = [Some(0), Some(1), None, Some(2), Some(3), Some(4)]
            .iter()
            .map(|t| t.map_or_else(T::infinity, T::from_int))
            .collect();
        assert_eq!(sig.point_params, expected);
    }

    #[test]
    fn three_points_example() {
        let c = ParamRnc::<Scalar>::moment(3);
        let chord = |a, b| chord_space(&c, &[T::from_int(a), T::from_int(b)]).unwrap();
        let d = Datum::new(3, vec![chord(2, 3), chord(4, 5), chord(6, -1)], moment_points(&[Some(0), None, Some(1)])).unwrap();
        let sig = signature(&d).unwrap();
        assert_eq!(sig.point_params, vec![T::from_int(0), T::from_int(1), T::infinity()]);
        // t -> t / (t - 1)
        let image = |t: i64| (Scalar::from_i64(t), Scalar::from_i64(t - 1));
        let root_form = |a: i64, b: i64| {
            let (sa, ua) = image(a);
            let (sb, ub) = image(b);
            BinaryForm::vanishing_at(sa, ua).mul(&BinaryForm::vanishing_at(sb, ub)).monic()
        };
        assert_eq!(sig.space_forms, vec![root_form(2, 3), root_form(4, 5), root_form(6, -1)]);
        assert_eq!(sig.space_forms[0], BinaryForm::new(vec![Scalar::from_i64(3), "-7/2".parse().unwrap(), Scalar::from_i64(1)]));
    }

    #[test]
    fn discriminates_last_point() {
        let a = Datum::new(3, vec![], moment_points(&[Some(0), Some(1), None, Some(2), Some(3), Some(4)])).unwrap();
        let b = Datum::new(3, vec![], moment_points(&[Some(0), Some(1), None, Some(2), Some(3), Some(5)])).unwrap();
        assert!(!are_equivalent(&a, &b).unwrap());
        assert!(are_equivalent(&a, &a).unwrap());
    }

    #[test]
    fn reparametrization_does_not_matter() {
        let c = ParamRnc::<Scalar>::moment(3);
        let chord = |a, b| chord_space(&c, &[T::from_int(a), T::from_int(b)]).unwrap();
        let d = Datum::new(3, vec![chord(2, 3)], moment_points(&[Some(0), None, Some(1), Some(-3), Some(7)])).unwrap();
        let sig = signature(&d).unwrap();
        let q = |x: i64| Scalar::from_i64(x);
        let other = c.reparametrized(&q(2), &q(1), &q(-1), &q(3)).unwrap();
        assert_eq!(signature_on(&other, &d).unwrap(), sig);
    }

    #[test]
    fn two_points_unsupported() {
        let c = ParamRnc::<Scalar>::moment(3);
        let spaces: Vec<Pencil<Scalar>> =
            [(2, 3), (4, 5), (6, 7), (8, 9)].iter().map(|&(a, b)| chord_space(&c, &[T::from_int(a), T::from_int(b)]).unwrap()).collect();
        let d = Datum::new(3, spaces, moment_points(&[Some(0), Some(1)])).unwrap();
        assert!(matches!(signature(&d), Err(Error::Unsupported(_))));
    }

    #[test]
    fn shape_mismatch_is_inequivalent() {
        let a = Datum::new(3, vec![], moment_points(&[Some(0), Some(1), None, Some(2), Some(3), Some(4)])).unwrap();
        let c = ParamRnc::<Scalar>::moment(3);
        let lam = chord_space(&c, &[T::from_int(5), T::from_int(6)]).unwrap();
        let b = Datum::new(3, vec![lam], moment_points(&[Some(0), Some(1), None, Some(2), Some(3)])).unwrap();
        assert!(!are_equivalent(&a, &b).unwrap());
    }
}
