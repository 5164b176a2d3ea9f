//! Dense univariate polynomials, coefficients low-to-high. Only what binary-form gcd needs.

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(lead) => {
                let inv = lead.inv();
                Poly { coeffs: self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect() }
            }
            None => self.clone(),
        }
    }

    /// A nonzero multiple with small coefficients; see [`Field::primitive`].
    pub fn primitive(&self) -> Self {
        Poly { coeffs: F::primitive(&self.coeffs) }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn rem(&self, divisor: &Poly<F>) -> Poly<F> {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let q = r[top].clone() * lead_inv.clone();
            if !q.is_zero() {
                let shift = top - dd;
                for (k, d) in divisor.coeffs.iter().enumerate() {
                    r[shift + k] = r[shift + k].clone() - q.clone() * d.clone();
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Monic gcd by Euclid. `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Poly<F>) -> Poly<F> {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }
}
