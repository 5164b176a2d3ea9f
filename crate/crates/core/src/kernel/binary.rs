//! Binary forms: homogeneous polynomials in `(s, u)`.
//!
//! A form of degree `d` is stored as `d + 1` coefficients where index `k` holds the coefficient
//! of `s^k u^(d-k)`. A point of P^1 is a root `(s:u)`; the root `(1:0)` corresponds to a factor
//! `u` and shows up as vanishing top coefficients, the root `(0:1)` to a factor `s` and shows up
//! as vanishing bottom coefficients.
//!
//! "Monic" means the highest-index nonzero coefficient is one.

use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<F> {
    coeffs: Vec<F>,
}

impl<F: Field> BinaryForm<F> {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(crate::scalar::ints(coeffs))
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![F::zero(); degree + 1] }
    }

    pub fn constant(c: F) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// `c * s^k * u^(degree - k)`.
    pub fn monomial(degree: usize, k: usize, c: F) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[k] = c;
        f
    }

    /// The linear form `a*s + b*u`.
    pub fn linear(a: F, b: F) -> Self {
        BinaryForm { coeffs: vec![b, a] }
    }

    /// The linear form vanishing at `(s:u)`, namely `u0*s - s0*u`.
    pub fn vanishing_at(s0: F, u0: F) -> Self {
        Self::linear(u0, -s0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &F, u: &F) -> F {
        // Horner in s with compensating powers of u.
        let d = self.degree();
        let mut upow = vec![F::one(); d + 1];
        for k in 1..=d {
            upow[k] = upow[k - 1].clone() * u.clone();
        }
        let mut acc = F::zero();
        for k in (0..=d).rev() {
            acc = acc * s.clone() + self.coeffs[k].clone() * upow[d - k].clone();
        }
        acc
    }

    pub fn scale(&self, c: &F) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// Sum of two forms of the same degree. Panics on a degree mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding binary forms of different degree");
        BinaryForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(F::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Index of the highest nonzero coefficient.
    pub fn leading_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Scaled so the highest nonzero coefficient is one; the zero form is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_index() {
            Some(k) => self.scale(&self.coeffs[k].inv()),
            None => self.clone(),
        }
    }

    /// Multiplicity of the root `(1:0)`, i.e. the power of `u` dividing the form.
    pub fn u_multiplicity(&self) -> usize {
        match self.leading_index() {
            Some(k) => self.degree() - k,
            None => self.degree(),
        }
    }

    /// Multiplicity of the root `(0:1)`, i.e. the power of `s` dividing the form.
    pub fn s_multiplicity(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.degree())
    }

    /// `f(a*s + b*u, c*s + d*u)`, a form of the same degree.
    pub fn substitute(&self, a: &F, b: &F, c: &F, d: &F) -> Self {
        let deg = self.degree();
        let s_img = Self::linear(a.clone(), b.clone());
        let u_img = Self::linear(c.clone(), d.clone());
        let mut s_pows = vec![Self::constant(F::one())];
        let mut u_pows = vec![Self::constant(F::one())];
        for k in 1..=deg {
            s_pows.push(s_pows[k - 1].mul(&s_img));
            u_pows.push(u_pows[k - 1].mul(&u_img));
        }
        let mut out = Self::zero(deg);
        for (k, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            out = out.add(&s_pows[k].mul(&u_pows[deg - k]).scale(coeff));
        }
        out
    }

    /// True if `divisor` divides `self` exactly (as binary forms).
    pub fn is_divisible_by(&self, divisor: &Self) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        if self.is_zero() {
            return true;
        }
        if divisor.degree() > self.degree()
            || divisor.u_multiplicity() > self.u_multiplicity()
        {
            return false;
        }
        let p = Poly::new(self.coeffs.clone());
        let q = Poly::new(divisor.coeffs.clone());
        p.rem(&q).is_zero()
    }

    /// Exact quotient by a divisor; panics if the division is not exact.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(self.is_divisible_by(divisor), "inexact binary form division");
        let deg = self.degree() - divisor.degree();
        let lead = divisor.leading_index().expect("zero divisor");
        let lead_inv = divisor.coeffs[lead].inv();
        // Long division on the dehomogenized polynomials, then rehomogenize to `deg`.
        let mut r: Vec<F> = self.coeffs.clone();
        let top = self.leading_index().unwrap_or(0);
        r.truncate(top + 1);
        let mut q = vec![F::zero(); deg + 1];
        while r.len() > lead {
            let t = r.len() - 1;
            let c = r[t].clone() * lead_inv.clone();
            let shift = t - lead;
            for (k, dcoef) in divisor.coeffs.iter().take(lead + 1).enumerate() {
                r[shift + k] = r[shift + k].clone() - c.clone() * dcoef.clone();
            }
            q[shift] = c;
            r.pop();
        }
        BinaryForm { coeffs: q }
    }
}

/// Monic greatest common divisor of two binary forms.
///
/// The forms are dehomogenized at `u = 1`; the `s`-power and `u`-power factors are split off
/// and tracked separately so that roots at `(0:1)` and `(1:0)` are counted exactly.
pub fn binary_gcd<F: Field>(f: &BinaryForm<F>, g: &BinaryForm<F>) -> Result<BinaryForm<F>> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::BothZero),
        (true, false) => return Ok(g.monic()),
        (false, true) => return Ok(f.monic()),
        _ => {}
    }
    let s_mult = f.s_multiplicity().min(g.s_multiplicity());
    let u_mult = f.u_multiplicity().min(g.u_multiplicity());
    let core = |h: &BinaryForm<F>| {
        let lo = h.s_multiplicity();
        let hi = h.leading_index().expect("nonzero");
        Poly::new(h.coeffs[lo..=hi].to_vec())
    };
    let common = core(f).gcd(&core(g));
    let core_deg = common.degree().unwrap_or(0);
    let degree = s_mult + core_deg + u_mult;
    let mut coeffs = vec![F::zero(); degree + 1];
    for (k, c) in common.coeffs().iter().enumerate() {
        coeffs[s_mult + k] = c.clone();
    }
    Ok(BinaryForm { coeffs })
}

/// True iff the form has no repeated root in P^1.
pub fn is_squarefree<F: Field>(f: &BinaryForm<F>) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if f.u_multiplicity() > 1 {
        return Ok(false);
    }
    let p = Poly::new(f.coeffs.clone());
    let dp = p.derivative();
    if dp.is_zero() {
        // constant after dehomogenizing
        return Ok(true);
    }
    Ok(p.gcd(&dp).degree() == Some(0))
}

impl<F: Field> fmt::Display for BinaryForm<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut mono = String::new();
            match k {
                0 => {}
                1 => mono.push('s'),
                _ => mono.push_str(&format!("s^{k}")),
            }
            match d - k {
                0 => {}
                1 => mono.push('u'),
                e => mono.push_str(&format!("u^{e}")),
            }
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -F::one() {
                format!("-{mono}")
            } else {
                format!("({c})*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(out, "0")
        } else {
            write!(out, "{}", terms.join(" + "))
        }
    }
}
