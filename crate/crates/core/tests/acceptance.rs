//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rnc_core::construct::{construct, construct_through_points, construct_through_points_cremona, expected_count, Classification, Outcome, Verdict};
use rnc_core::curve::{chord_space, curve_equals, generalized_column_for, param_to_det, secancy, verify_datum};
use rnc_core::equivalence::{are_equivalent, signature, signature_on};
use rnc_core::obstruction::nonexistence_certificate;
use rnc_core::postulation::{ah_exceptions_suite, hilbert_function, secant_shape_count};
use rnc_core::projective::Transformable;
use rnc_core::random::{distinct_params, forward_datum, generic_datum, generic_points, random_curve, random_pencil, random_transform, rng};
use rnc_core::{Datum, Field, Pencil, ProjPoint, Quadric, Scalar, SchemeSpec};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn castelnuovo() -> Check {
    for n in 3..=6 {
        for seed in 0..100 {
            let points = generic_points::<Scalar>(n, n + 3, seed);
            let at = || format!("n={n} seed={seed}");
            let frame = construct_through_points(&points).map_err(|e| format!("{}: {e}", at()))?;
            let d = Datum::new(n, vec![], points.clone()).unwrap();
            ensure(verify_datum(&frame.curve, &d).unwrap().passed, || format!("{}: verification failed", at()))?;
            let cremona = construct_through_points_cremona(&points).map_err(|e| format!("{}: cremona {e}", at()))?;
            ensure(curve_equals(&frame.curve, &cremona.curve).unwrap(), || format!("{}: methods disagree", at()))?;
        }
    }
    Ok("400 point sets, frame-fit and Cremona agree".into())
}

fn reconstruction() -> Check {
    let mut count = 0;
    for n in 3..=6 {
        for (p, l) in [(n + 2, 1), (3, n), (2, n + 1), (1, n + 2)] {
            for seed in 0..100 {
                let at = || format!("n={n} (p,l)=({p},{l}) seed={seed}");
                let (d, oracle) = forward_datum::<Scalar>(n, p, l, seed).map_err(|e| format!("{}: {e}", at()))?;
                let cert = match construct(&d) {
                    Ok(Outcome::Exists(c)) => c,
                    Ok(_) => return Err(format!("{}: no curve", at())),
                    Err(e) => return Err(format!("{}: {e}", at())),
                };
                ensure(curve_equals(&cert.curve, &oracle).unwrap(), || format!("{}: wrong curve", at()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} forward data reconstructed"))
}

fn obstruction() -> Check {
    let points = [[1, 1, 1, 1], [1, 2, 4, 8], [1, 3, 9, 27], [1, 1, 2, 3]].iter().map(|c| ProjPoint::from_ints(c)).collect();
    let spaces = vec![
        Pencil::from_ints(&[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap(),
        Pencil::from_ints(&[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap(),
    ];
    let d = Datum::new(3, spaces, points).unwrap();
    let cert = nonexistence_certificate(&d).map_err(|e| e.to_string())?;
    let expected = Quadric::new(3, [0, 0, 0, -1, 0, 1, 0, 0, 0, 0].iter().map(|&c| Scalar::from_i64(c)).collect()).unwrap();
    let proportional = (0..10).all(|k| {
        cert.quadric.coeffs()[k].clone() * expected.coeffs()[5].clone() == expected.coeffs()[k].clone() * cert.quadric.coeffs()[5].clone()
    });
    ensure(proportional, || format!("quadric {} is not x1*x2 - x0*x3", cert.quadric))?;
    let scale = cert.quadric.coeffs()[5].clone();
    ensure(cert.excluded_value.clone() / scale == Scalar::from_i64(-1), || format!("Q(P4) = {}", cert.excluded_value))?;
    ensure(cert.verify(), || "concrete certificate does not verify".into())?;
    let mut count = 0;
    for n in 3..=5 {
        let shapes: Vec<(usize, usize)> = (4..=n + 1).map(|p| (p, n + 3 - p)).collect();
        for seed in 0..100u64 {
            let (p, l) = shapes[seed as usize % shapes.len()];
            let d = generic_datum::<Scalar>(n, p, l, seed);
            let cert = nonexistence_certificate(&d).map_err(|e| format!("n={n} ({p},{l}) seed={seed}: {e}"))?;
            ensure(cert.verify(), || format!("n={n} ({p},{l}) seed={seed}: certificate invalid"))?;
            let ledger = &cert.ledger;
            ensure(
                ledger.intersection_lower_bound == 2 * n + 1 && ledger.bezout_bound == 2 * n && ledger.holds(),
                || format!("n={n}: ledger {ledger:?}"),
            )?;
            count += 1;
        }
    }
    Ok(format!("concrete P^3 quadric x1*x2 - x0*x3 with Q(P4) = -1; {count} generic certificates"))
}

fn postulation() -> Check {
    let suite = ah_exceptions_suite::<Scalar>();
    let seven = suite.iter().find(|r| (r.n, r.p, r.d) == (4, 7, 3)).unwrap();
    ensure((seven.actual, seven.expected) == (34, 35), || format!("(4,7,3): {seven}"))?;
    for (n, p, d, actual, expected) in [(2, 5, 4, 14, 15), (3, 9, 4, 34, 35), (4, 14, 4, 69, 70)] {
        let r = suite.iter().find(|r| (r.n, r.p, r.d) == (n, p, d)).unwrap();
        ensure((r.actual, r.expected) == (actual, expected), || format!("({n},{p},{d}): {r}"))?;
    }
    let control = suite.iter().find(|r| !r.exceptional).unwrap();
    ensure(control.deficit == 0, || format!("control: {control}"))?;
    let mut lemma = Vec::new();
    for (n, h) in [(3, 33), (4, 65)] {
        let mut r = rng(n as u64);
        let spec = SchemeSpec::new(n, generic_points(n, n + 2, n as u64), vec![random_pencil(&mut r, n)], 4).unwrap();
        let report = hilbert_function(&spec);
        ensure(secant_shape_count(n) == h && report.h_formula_value == Some(h), || format!("n={n}: h = {:?}", report.h_formula_value))?;
        ensure(report.actual_hf < h, || format!("n={n}: H = {} not below h = {h}", report.actual_hf))?;
        lemma.push(format!("n={n} h={h} H={}", report.actual_hf));
    }
    Ok(format!("(4,7,3) 34/35, AH exceptions 14/15 34/35 69/70, control deficit 0, {}", lemma.join(", ")))
}

fn generalized_columns() -> Check {
    for n in 3..=6 {
        let mut r = rng(500 + n as u64);
        for k in 0..100 {
            let curve = random_curve::<Scalar>(&mut r, n);
            let det = param_to_det(&curve);
            let chord = chord_space(&curve, &distinct_params(&mut r, n - 1)).unwrap();
            let pencil = random_pencil::<Scalar>(&mut r, n);
            for (kind, lam) in [("chord", &chord), ("pencil", &pencil)] {
                let has_column = generalized_column_for(&det, lam).is_some();
                let secant = secancy(&curve, lam).unwrap().degree == n - 1;
                ensure(has_column == secant, || format!("n={n} {kind} {k}: column {has_column}, secant {secant}"))?;
            }
            ensure(generalized_column_for(&det, &chord).is_some(), || format!("n={n} chord {k}: no column"))?;
        }
    }
    Ok("800 spaces, column exists iff (n-1)-secant".into())
}

fn equivalence() -> Check {
    let mut same = 0;
    let mut different = 0;
    for k in 0..100u64 {
        let n = 3 + (k % 3) as usize;
        let (p, l) = [(n + 3, 0), (n + 2, 1), (3, n)][(k / 3 % 3) as usize];
        let at = || format!("pair {k}: n={n} ({p},{l})");
        let (d, curve) = forward_datum::<Scalar>(n, p, l, k).map_err(|e| format!("{}: {e}", at()))?;
        let t = random_transform(&mut rng(1000 + k), n);
        let image = d.transformed(&t).unwrap();
        ensure(are_equivalent(&d, &image).map_err(|e| format!("{}: {e}", at()))?, || format!("{}: image not equivalent", at()))?;
        same += 1;
        let mut points = image.points().to_vec();
        let last = points.len() - 1;
        let mut coords = points[last].coords().to_vec();
        coords[0] = coords[0].clone() + Scalar::from_i64(1);
        points[last] = ProjPoint::new(coords).unwrap();
        let perturbed = Datum::new(n, image.spaces().to_vec(), points).unwrap();
        ensure(!are_equivalent(&d, &perturbed).map_err(|e| format!("{}: perturbed {e}", at()))?, || format!("{}: perturbed still equivalent", at()))?;
        different += 1;
        let sig = signature(&d).unwrap();
        let q = |x: i64| Scalar::from_i64(x);
        let (a, b, c, e) = (q(1 + (k % 4) as i64), q(2), q(-1), q(3 + (k % 5) as i64));
        let reparam = curve.reparametrized(&a, &b, &c, &e).unwrap();
        ensure(signature_on(&reparam, &d).unwrap() == sig, || format!("{}: signature changed under reparametrization", at()))?;
    }
    Ok(format!("{same} images equivalent, {different} perturbations inequivalent, signatures reparametrization invariant"))
}

fn classification() -> Check {
    for n in 3..=12 {
        for p in 0..=n + 3 {
            let l = n + 3 - p;
            let a = expected_count(n, p, l).map_err(|e| e.to_string())?;
            let want = match (n, p) {
                (3, 0) => Classification::ExistsNonunique { count: 6 },
                (_, 0) => Classification::Open,
                _ if p <= 3 || p >= n + 2 => Classification::ExistsUnique,
                _ => Classification::NotExists,
            };
            ensure(a.verdict == Verdict::FiniteExpected && a.classification == want, || format!("({n},{p},{l}): {:?}", a.classification))?;
        }
    }
    let six = expected_count(3, 0, 6).unwrap().classification;
    ensure(six == Classification::ExistsNonunique { count: 6 }, || format!("(3,0,6): {six:?}"))?;
    Ok("n = 3..12 classified; (3,0,6) -> 6, (0,n+3) open for n > 3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("castelnuovo", castelnuovo, 10),
        ("reconstruction", reconstruction, 60),
        ("obstruction", obstruction, 10),
        ("postulation", postulation, 30),
        ("generalized-column", generalized_columns, 10),
        ("equivalence", equivalence, 20),
        ("classification", classification, 1),
    ];
    let results: Vec<(Check, Duration)> = criteria
        .iter()
        .map(|&(_, f, _)| {
            let start = Instant::now();
            let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
            (out, start.elapsed())
        })
        .collect();
    let mut failed = 0;
    for (i, ((name, _, target), (result, elapsed))) in criteria.iter().zip(results).enumerate() {
        let secs = elapsed.as_secs_f64();
        match result {
            Ok(msg) => println!("PASS {} {name} ({secs:.1}s, target {target}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s, target {target}s): {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
