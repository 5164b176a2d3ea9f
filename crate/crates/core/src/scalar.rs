//! Scalar field abstraction.
//!
//! Every algorithm in this crate is exact, so the scalar type must be a field with exact
//! arithmetic. [`Rational`] is the production choice; fixed-width rationals are handy for
//! small hand-checked cases.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use crate::kernel::integer::{integer_row, reduced};
use num_rational::{BigRational, Ratio};
use num_rational::ParseRatioError;
use num_traits::{Num, One, Zero};

use crate::kernel::{Elimination, Matrix};

/// An exact field.
pub trait Field:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// A nonzero multiple of `v` that is cheap to compute with. Only the scale changes, so the
    /// result represents the same projective object. The default keeps `v` as is.
    fn primitive(v: &[Self]) -> Vec<Self> {
        v.to_vec()
    }

    /// Elimination specialized to the representation. `None` selects the generic algorithms.
    #[doc(hidden)]
    fn eliminate(_m: &Matrix<Self>, _full: bool) -> Option<Elimination<Self>> {
        None
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    /// Clears denominators and divides out the content.
    fn primitive(v: &[Self]) -> Vec<Self> {
        if v.iter().all(|x| x.is_zero()) {
            return v.to_vec();
        }
        integer_row(v).0.into_iter().map(BigRational::from_integer).collect()
    }

    fn eliminate(m: &Matrix<Self>, full: bool) -> Option<Elimination<Self>> {
        Some(crate::kernel::integer::eliminate(m, full))
    }
}

/// An arbitrary-precision rational.
///
/// Wraps [`BigRational`], whose operations always reduce by a gcd. Most values met here are
/// integers (primitive vectors, fraction-free elimination), and for those the sum, difference
/// and product are computed without the reduction.
#[derive(Clone, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics on a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        Rational(reduced(numer, denom))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big_rational(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

// Both sides are kept reduced with a positive denominator, so equality is structural.
impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        self.0.numer() == other.0.numer() && self.0.denom() == other.0.denom()
    }
}

impl Eq for Rational {}

impl std::hash::Hash for Rational {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.numer().hash(state);
        self.0.denom().hash(state);
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRatioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(Rational)
    }
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            Rational::from_integer(self.0.to_integer() + rhs.0.to_integer())
        } else {
            let (a, b) = (self.0, rhs.0);
            Rational(reduced(a.numer() * b.denom() + b.numer() * a.denom(), a.denom() * b.denom()))
        }
    }
}

impl Sub for Rational {
    type Output = Rational;

    fn sub(self, rhs: Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            Rational::from_integer(self.0.to_integer() - rhs.0.to_integer())
        } else {
            let (a, b) = (self.0, rhs.0);
            Rational(reduced(a.numer() * b.denom() - b.numer() * a.denom(), a.denom() * b.denom()))
        }
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            Rational::from_integer(self.0.to_integer() * rhs.0.to_integer())
        } else {
            let (a, b) = (self.0, rhs.0);
            Rational(reduced(a.numer() * b.numer(), a.denom() * b.denom()))
        }
    }
}

impl Div for Rational {
    type Output = Rational;

    fn div(self, rhs: Rational) -> Rational {
        let (a, b) = (self.0, rhs.0);
        if b.numer().is_zero() {
            panic!("division by zero");
        }
        Rational(reduced(a.numer() * b.denom(), a.denom() * b.numer()))
    }
}

impl Rem for Rational {
    type Output = Rational;

    fn rem(self, rhs: Rational) -> Rational {
        Rational(self.0 % rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.numer().is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Num for Rational {
    type FromStrRadixErr = ParseRatioError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Rational)
    }
}

impl Field for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }

    fn inv(&self) -> Self {
        Rational(reduced(self.0.denom().clone(), self.0.numer().clone()))
    }

    fn primitive(v: &[Self]) -> Vec<Self> {
        let inner: Vec<BigRational> = v.iter().map(|x| x.0.clone()).collect();
        BigRational::primitive(&inner).into_iter().map(Rational).collect()
    }

    fn eliminate(m: &Matrix<Self>, full: bool) -> Option<Elimination<Self>> {
        let inner = Matrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).0.clone());
        let e = crate::kernel::integer::eliminate(&inner, full);
        Some(Elimination {
            rref: e.rref.map(|r| Matrix::from_fn(r.rows(), r.cols(), |i, j| Rational(r.get(i, j).clone()))),
            pivots: e.pivots,
            det: e.det.map(Rational),
        })
    }
}

impl Field for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Field for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}

/// Shorthand for building a vector of field elements from small integers.
pub fn ints<F: Field>(values: &[i64]) -> Vec<F> {
    values.iter().map(|&v| F::from_i64(v)).collect()
}

/// `num / den` as a field element. Panics on a zero denominator.
pub fn frac<F: Field>(num: i64, den: i64) -> F {
    assert!(den != 0, "zero denominator");
    F::from_i64(num) / F::from_i64(den)
}
