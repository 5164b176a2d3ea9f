//! Fraction-free elimination for big rationals.
//!
//! Rows are cleared to primitive integer vectors and reduced by Bareiss-style Gauss-Jordan
//! steps. Every entry stays a minor of the cleared matrix, so each division is exact and no
//! gcd is taken inside the loop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Matrix;

/// Output of a specialized elimination.
#[doc(hidden)]
pub struct Elimination<F> {
    /// Reduced row echelon form, when requested.
    pub rref: Option<Matrix<F>>,
    pub pivots: Vec<usize>,
    /// Determinant, for square input.
    pub det: Option<F>,
}

/// Gcd of magnitudes. The binary algorithm is slow when one argument is much shorter than
/// the other, so a single division step evens them out first.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = (a.magnitude().clone(), b.magnitude().clone());
    if x < y {
        std::mem::swap(&mut x, &mut y);
    }
    if y.is_zero() {
        return BigInt::from(x);
    }
    if x.bits() > y.bits() + 64 {
        x = &x % &y;
        if x.is_zero() {
            return BigInt::from(y);
        }
    }
    BigInt::from(x.gcd(&y))
}

pub(crate) fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_one() {
        return b.abs();
    }
    if b.is_one() {
        return a.abs();
    }
    (a / gcd(a, b) * b).abs()
}

/// `numer / denom` in lowest terms. Panics on a zero denominator.
pub(crate) fn reduced(numer: BigInt, denom: BigInt) -> BigRational {
    assert!(!denom.is_zero(), "zero denominator");
    if numer.is_zero() {
        return BigRational::zero();
    }
    let g = gcd(&numer, &denom);
    let (mut n, mut d) = if g.is_one() { (numer, denom) } else { (numer / &g, denom / &g) };
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    BigRational::new_raw(n, d)
}

/// The row as primitive integers, and the factor it was multiplied by.
pub(crate) fn integer_row(row: &[BigRational]) -> (Vec<BigInt>, BigRational) {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| lcm(&acc, x.denom()));
    let scaled: Vec<BigInt> =
        row.iter().map(|x| if x.denom().is_one() { x.numer() * &lcm } else { x.numer() * (&lcm / x.denom()) }).collect();
    let mut content = BigInt::zero();
    for x in &scaled {
        if !x.is_zero() {
            content = gcd(&content, x);
            if content.is_one() {
                break;
            }
        }
    }
    if content.is_zero() || content.is_one() {
        return (scaled, BigRational::from_integer(lcm));
    }
    let ints = scaled.into_iter().map(|x| x / &content).collect();
    (ints, reduced(lcm, content))
}

pub(crate) fn eliminate(m: &Matrix<BigRational>, full: bool) -> Elimination<BigRational> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut scale = BigRational::one();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let (v, s) = integer_row(m.row(i));
            scale *= s;
            v
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0usize;
    for col in 0..cols {
        let prow = pivots.len();
        if prow == rows {
            break;
        }
        let Some(found) = (prow..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if found != prow {
            a.swap(found, prow);
            swaps += 1;
        }
        let pivot_row = a[prow].clone();
        let p = pivot_row[col].clone();
        let start = if full { 0 } else { prow + 1 };
        for (i, row) in a.iter_mut().enumerate().skip(start) {
            if i == prow {
                continue;
            }
            let lead = row[col].clone();
            for j in 0..cols {
                if j == col {
                    continue;
                }
                let v = &p * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[col] = BigInt::zero();
        }
        prev = p;
        pivots.push(col);
    }
    let det = (rows == cols).then(|| {
        if pivots.len() < rows {
            BigRational::zero()
        } else {
            let d = BigRational::from_integer(prev.clone()) / &scale;
            if swaps % 2 == 1 {
                -d
            } else {
                d
            }
        }
    });
    let rref = full.then(|| {
        let mut out = Matrix::zeros(rows, cols);
        for (r, &c) in pivots.iter().enumerate() {
            let mut p = a[r][c].clone();
            let mut row = a[r].clone();
            if p.is_negative() {
                p = -p;
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            for (j, x) in row.into_iter().enumerate() {
                if !x.is_zero() {
                    out.set(r, j, reduced(x, p.clone()));
                }
            }
        }
        out
    });
    Elimination { rref, pivots, det }
}
