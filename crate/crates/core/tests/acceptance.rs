//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{
    family, p, props, random_family_member, random_linear_change, random_right_equivalence,
};
use lctkit::engine::{
    equality_certificate_2d, is_normalised, lct, lct_bracket, lct_product_sum, normalize,
    weight_bound, LctOptions, Status,
};
use lctkit::milnor::milnor_number;
use lctkit::newton::{newton_polygon, Point};
use lctkit::poly::{rat, Rational, SparsePoly, WeightVector};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const THIRD: &str = "x^2*y^2*(x+y)^2 + x^9 + y^7";
const TWO_21STS: &str = "(x*y*(x+y))^7 + (x*y)^4*(x+y)^6*(x^8+y^8) + x*y*(x^22+y^22)";

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:?}, limit {limit:?}")
    })
}

fn exact_lct(f: &SparsePoly) -> Result<Rational, String> {
    let r = lct(f, &LctOptions::default()).map_err(|e| format!("lct({f}): {e}"))?;
    ensure(r.status == Status::Exact, || {
        format!("lct({f}) is {}", r.status)
    })?;
    Ok(r.value)
}

fn diagonal_c(f: &SparsePoly) -> Rational {
    newton_polygon(f).unwrap().diagonal().c
}

fn one_third() -> Outcome {
    let f = p(THIRD);
    let t = Instant::now();
    let v = exact_lct(&f)?;
    within(t.elapsed(), Duration::from_secs(1), "lct")?;
    ensure(v == rat(1, 3), || format!("value {v}"))?;
    let verts = newton_polygon(&f).unwrap().vertices().to_vec();
    let want = [(0, 7), (2, 4), (4, 2), (9, 0)].map(|(x, y)| Point::new(x, y));
    ensure(verts == want, || format!("vertices {verts:?}"))?;
    Ok(format!("exact 1/3 in {:?}", t.elapsed()))
}

fn two_21sts() -> Outcome {
    let f = p(TWO_21STS);
    let t = Instant::now();
    let v = exact_lct(&f)?;
    within(t.elapsed(), Duration::from_secs(10), "lct")?;
    ensure(v == rat(2, 21), || format!("value {v}"))?;
    Ok(format!("exact 2/21 in {:?}", t.elapsed()))
}

fn milnor_values() -> Outcome {
    let mut notes = Vec::new();
    for (s, want) in [(THIRD, 30), (TWO_21STS, 454)] {
        let t = Instant::now();
        let mu = milnor_number(&p(s)).map_err(|e| e.to_string())?;
        within(t.elapsed(), Duration::from_secs(60), "milnor_number")?;
        ensure(mu == want, || format!("μ = {mu}, expected {want}"))?;
        notes.push(format!("{mu} in {:?}", t.elapsed()));
    }
    Ok(notes.join(", "))
}

fn smooth_curves() -> Outcome {
    for d in 1..=9u64 {
        let f = p(&format!("x + y^{d}"));
        let v = exact_lct(&f)?;
        ensure(v == rat(1, 1), || format!("lct(x + y^{d}) = {v}"))?;
        let w = WeightVector::new(&[d, 1]).unwrap();
        let b = weight_bound(&f, &w).map_err(|e| e.to_string())?;
        ensure(b == rat(d as i64 + 1, d as i64), || {
            format!("bound {b} for d = {d}")
        })?;
        let polygon = newton_polygon(&f).unwrap();
        let facet = polygon
            .facets()
            .iter()
            .find(|fc| (fc.wx(), fc.wy()) == (d, 1))
            .ok_or_else(|| format!("no facet ({d}, 1)"))?;
        let cert = equality_certificate_2d(&f, facet).map_err(|e| e.to_string())?;
        ensure(!cert, || format!("certificate holds for d = {d}"))?;
    }
    Ok("d = 1..9".into())
}

fn a_k_family() -> Outcome {
    for n in 3..=5usize {
        for k in 1..=4i64 {
            let mut terms: Vec<String> = (1..n).map(|i| format!("x{i}^2")).collect();
            terms.push(format!("x{n}^{}", k + 1));
            let f = p(&terms.join(" + "));
            let mut ws = vec![rat(1, 2); n - 1];
            ws.push(rat(1, k + 1));
            let w = WeightVector::from_rationals(&ws).map_err(|e| e.to_string())?;
            let b = weight_bound(&f, &w).map_err(|e| e.to_string())?;
            let want = rat(n as i64 - 1, 2) + rat(1, k + 1);
            ensure(b == want, || format!("n = {n}, k = {k}: {b} vs {want}"))?;
        }
    }
    Ok("n = 3..5, k = 1..4".into())
}

fn closed_form_family() -> Outcome {
    let t = Instant::now();
    let mut cases = 0;
    for bmax in [5u64, 8] {
        for a1 in 0..=3 {
            for a2 in 0..=3 {
                for b1 in 1..=bmax {
                    for b2 in 1..=bmax {
                        let want =
                            lct_product_sum(&[a1, a2], &[b1, b2]).map_err(|e| e.to_string())?;
                        let got = exact_lct(&family([a1, a2], [b1, b2]))?;
                        ensure(got == want, || {
                            format!("a = ({a1},{a2}), b = ({b1},{b2}): {got} vs {want}")
                        })?;
                        cases += 1;
                    }
                }
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(30), "family sweep")?;
    Ok(format!(
        "{cases} cases (400 on b ≤ 5, 1024 on b ≤ 8) in {:?}",
        t.elapsed()
    ))
}

/// Family members under random coordinate changes; the closed form is the oracle.
fn known_fixtures(seed: u64, count: usize) -> Vec<(SparsePoly, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (a, b) = random_family_member(&mut rng);
            let v = lct_product_sum(&a, &b).unwrap();
            (random_right_equivalence(&mut rng, &family(a, b)), v)
        })
        .collect()
}

fn bracket_soundness() -> Outcome {
    let mut checked = 0;
    for (f, want) in known_fixtures(7, 50) {
        let got = exact_lct(&f)?;
        ensure(got == want, || {
            format!("lct({f}) = {got}, closed form {want}")
        })?;
        for d in 1..=f.total_degree().unwrap() {
            if f.truncate(d).is_zero() {
                continue;
            }
            let Ok((lo, hi)) = lct_bracket(&f, d) else {
                continue;
            };
            ensure(hi.clone() - lo.clone() <= rat(4, d as i64 + 1), || {
                format!("width at d = {d}")
            })?;
            ensure(lo <= want && want <= hi, || {
                format!("d = {d}: [{lo}, {hi}] misses {want} for {f}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} brackets"))
}

fn normalization_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 50 {
        let (a, b) = random_family_member(&mut rng);
        let base = family(a, b);
        let polygon = newton_polygon(&base).unwrap();
        let mut normalised = true;
        for fc in polygon.compact_facets() {
            normalised &= is_normalised(&base, fc).unwrap();
        }
        if !normalised {
            continue;
        }
        let f = random_linear_change(&mut rng, &base);
        let (out, trail) = normalize(&f, 64, None).map_err(|e| format!("normalize({f}): {e}"))?;
        let out_polygon = newton_polygon(&out).unwrap();
        for fc in out_polygon.compact_facets() {
            ensure(is_normalised(&out, fc).unwrap(), || {
                format!("{out} not normalised")
            })?;
        }
        let replayed = trail.replay(&f).map_err(|e| e.to_string())?;
        ensure(replayed == out, || format!("replay differs for {f}"))?;
        ensure(diagonal_c(&out) >= diagonal_c(&f), || {
            format!("c decreased for {f}")
        })?;
        done += 1;
    }
    Ok(format!("{done} inputs"))
}

fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut fixtures: Vec<SparsePoly> =
        known_fixtures(17, 46).into_iter().map(|(f, _)| f).collect();
    fixtures.extend([THIRD, TWO_21STS, "y^3*(x+y)^2", "x^2 + y^4"].map(p));
    for f in &fixtures {
        let v = exact_lct(f)?;
        let swapped = exact_lct(&f.swap_vars(0, 1))?;
        ensure(swapped == v, || format!("swap changes lct({f})"))?;
        let s = [
            common::nonzero_rational(&mut rng),
            common::nonzero_rational(&mut rng),
        ];
        let scaled = exact_lct(&f.scale_vars(&s).unwrap())?;
        ensure(scaled == v, || format!("scaling changes lct({f})"))?;
    }
    Ok(format!("{} fixtures", fixtures.len()))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    TestRunner::new_with_rng(config, rng)
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Outcome {
    let t = Instant::now();
    let poly = || props::poly(2, 6, 6);
    run_property("ring laws", (poly(), poly(), poly()), props::ring_laws)?;
    run_property(
        "ring laws, 3 variables",
        (
            props::poly(3, 4, 4),
            props::poly(3, 4, 4),
            props::poly(3, 4, 4),
        ),
        props::ring_laws,
    )?;
    run_property("saturation", props::poly(3, 6, 6), props::saturation)?;
    run_property(
        "substitution inverse",
        (poly(), props::step(2)),
        props::substitution_inverse,
    )?;
    run_property("Yun reconstruction", props::yun_input(), props::yun)?;
    run_property(
        "weighted-homogeneous round trip",
        props::wh_input(),
        props::wh_round_trip,
    )?;
    within(t.elapsed(), Duration::from_secs(60), "property suites")?;
    Ok(format!("1000 cases per property in {:?}", t.elapsed()))
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("threshold 1/3 and its Newton vertices", one_third),
        ("threshold 2/21", two_21sts),
        ("Milnor numbers", milnor_values),
        ("smooth curves x + y^d", smooth_curves),
        ("A_k weight bounds", a_k_family),
        ("closed-form family", closed_form_family),
        ("truncation bracket soundness", bracket_soundness),
        ("normalization properties", normalization_properties),
        ("swap and scaling invariance", invariance),
        ("arithmetic and factorisation properties", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        match outcome {
            Ok(note) => println!("PASS {:>2} {name}: {note}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
