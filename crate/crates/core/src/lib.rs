//! Exact constructions of rational normal curves through points and secant to
//! codimension-two spaces, with obstruction certificates, Hilbert functions of the related
//! double schemes, and projective equivalence of configurations.
//!
//! Everything is generic over a [`Field`]; the aliases below fix it to [`Scalar`].

pub mod construct;
pub mod curve;
mod datum;
pub mod equivalence;
pub mod error;
pub mod kernel;
pub mod obstruction;
pub mod postulation;
pub mod projective;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Field;

/// The production scalar: arbitrary-precision rationals.
pub type Scalar = scalar::Rational;

pub type Matrix = kernel::Matrix<Scalar>;
pub type BinaryForm = kernel::BinaryForm<Scalar>;
pub type ProjPoint = projective::ProjPoint<Scalar>;
pub type LinForm = projective::LinForm<Scalar>;
pub type Pencil = projective::Pencil<Scalar>;
pub type Quadric = projective::Quadric<Scalar>;
pub type ProjTransform = projective::ProjTransform<Scalar>;
pub type Param = curve::Param<Scalar>;
pub type ParamRnc = curve::ParamRnc<Scalar>;
pub type DetRnc = curve::DetRnc<Scalar>;
pub type SecancyResult = curve::SecancyResult<Scalar>;
pub type VerificationReport = curve::VerificationReport<Scalar>;
pub type Datum = datum::Datum<Scalar>;
pub type ExistenceCertificate = construct::ExistenceCertificate<Scalar>;
pub type Outcome = construct::Outcome<Scalar>;
pub type ObstructionCertificate = obstruction::ObstructionCertificate<Scalar>;
pub type SchemeSpec = postulation::SchemeSpec<Scalar>;
pub type DefectWitness = postulation::DefectWitness<Scalar>;
pub type Signature = equivalence::Signature<Scalar>;
