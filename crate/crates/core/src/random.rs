//! Seeded pseudo-random generators for curves and data. Same seed, same output.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve::{chord_space, DetRnc, Param, ParamRnc};
use crate::datum::Datum;
use crate::error::Result;
use crate::kernel::Matrix;
use crate::projective::{LinForm, Pencil, ProjPoint, ProjTransform};
use crate::scalar::Field;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small<F: Field>(rng: &mut impl Rng, bound: i64) -> F {
    F::from_i64(rng.gen_range(-bound..=bound))
}

fn vector<F: Field>(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<F> {
    (0..len).map(|_| small(rng, bound)).collect()
}

pub fn random_point<F: Field>(rng: &mut impl Rng, n: usize) -> ProjPoint<F> {
    loop {
        if let Ok(p) = ProjPoint::new(vector(rng, n + 1, 9)) {
            return p;
        }
    }
}

pub fn random_form<F: Field>(rng: &mut impl Rng, n: usize) -> LinForm<F> {
    LinForm::new(vector(rng, n + 1, 9))
}

pub fn random_pencil<F: Field>(rng: &mut impl Rng, n: usize) -> Pencil<F> {
    loop {
        if let Ok(p) = Pencil::new(random_form(rng, n), random_form(rng, n)) {
            return p;
        }
    }
}

pub fn random_transform<F: Field>(rng: &mut impl Rng, n: usize) -> ProjTransform<F> {
    loop {
        let m = Matrix::from_fn(n + 1, n + 1, |_, _| small(rng, 5));
        if let Ok(t) = ProjTransform::new(m) {
            return t;
        }
    }
}

/// A curve with a random invertible coefficient matrix.
pub fn random_curve<F: Field>(rng: &mut impl Rng, n: usize) -> ParamRnc<F> {
    loop {
        let m = Matrix::from_fn(n + 1, n + 1, |_, _| small(rng, 5));
        if let Ok(c) = ParamRnc::from_coefficients(&m) {
            return c;
        }
    }
}

/// A random 2 x n matrix of linear forms defining a rational normal curve.
pub fn random_det<F: Field>(rng: &mut impl Rng, n: usize) -> DetRnc<F> {
    loop {
        let top = (0..n).map(|_| random_form(rng, n)).collect();
        let bottom = (0..n).map(|_| random_form(rng, n)).collect();
        if let Ok(d) = DetRnc::new(top, bottom) {
            return d;
        }
    }
}

/// `count` pairwise distinct affine parameters.
pub fn distinct_params<F: Field>(rng: &mut impl Rng, count: usize) -> Vec<Param<F>> {
    let mut values: Vec<i64> = Vec::with_capacity(count);
    while values.len() < count {
        let v = rng.gen_range(-60..=60);
        if !values.contains(&v) {
            values.push(v);
        }
    }
    values.into_iter().map(Param::from_int).collect()
}

/// A datum satisfied by a random curve: `p` curve points and `l` chord spaces, all at distinct
/// parameters. Returns the curve alongside.
pub fn forward_datum<F: Field>(n: usize, p: usize, l: usize, seed: u64) -> Result<(Datum<F>, ParamRnc<F>)> {
    let mut rng = rng(seed);
    let curve = random_curve(&mut rng, n);
    let params = loop {
        let params = distinct_params(&mut rng, p + l * (n - 1));
        if n != 3 || !involutive_chords(&params[p..]) {
            break params;
        }
    };
    let points = params[..p].iter().map(|t| curve.point_at(t)).collect();
    let spaces = params[p..]
        .chunks(n - 1)
        .map(|chunk| chord_space(&curve, chunk))
        .collect::<Result<_>>()?;
    Ok((Datum::new(n, spaces, points)?, curve))
}

/// In `P^3`, three chords whose parameter pairs lie in one involution are lines of one ruling
/// of a quadric containing the cubic, and the datum then has a pencil of solutions.
fn involutive_chords<F: Field>(params: &[Param<F>]) -> bool {
    let rows: Vec<Vec<F>> = params
        .chunks(2)
        .map(|pair| {
            let (a, b) = (pair[0].s().clone(), pair[1].s().clone());
            vec![F::one(), a.clone() + b.clone(), a * b]
        })
        .collect();
    let k = rows.len();
    (0..k).any(|i| {
        (i + 1..k).any(|j| {
            (j + 1..k).any(|m| {
                Matrix::from_rows(vec![rows[i].clone(), rows[j].clone(), rows[m].clone()], 3).determinant().is_zero()
            })
        })
    })
}

/// `p` random points in linear general position: every `n + 1` of them are independent.
pub fn generic_points<F: Field>(n: usize, p: usize, seed: u64) -> Vec<ProjPoint<F>> {
    let mut rng = rng(seed);
    loop {
        let points: Vec<ProjPoint<F>> = (0..p).map(|_| random_point(&mut rng, n)).collect();
        if in_general_position(&points, n) {
            return points;
        }
    }
}

fn in_general_position<F: Field>(points: &[ProjPoint<F>], n: usize) -> bool {
    let k = (n + 1).min(points.len());
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let rows = subset.iter().map(|&i| points[i].coords().to_vec()).collect();
        if Matrix::from_rows(rows, n + 1).rank() < k {
            return false;
        }
        // next k-subset in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| subset[i] < points.len() - k + i) else {
            return true;
        };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Random points and random spaces, with no curve behind them.
pub fn generic_datum<F: Field>(n: usize, p: usize, l: usize, seed: u64) -> Datum<F> {
    let mut rng = rng(seed);
    let points = (0..p).map(|_| random_point(&mut rng, n)).collect();
    let spaces = (0..l).map(|_| random_pencil(&mut rng, n)).collect();
    Datum::new(n, spaces, points).expect("dimensions agree by construction")
}
