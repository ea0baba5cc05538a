//! Strategies and property bodies for the arithmetic and factorisation layers.

use lctkit::newton::newton_polygon;
use lctkit::poly::{rat, ExponentVector, Rational, SparsePoly, SubstitutionStep};
use lctkit::univariate::UnivariatePoly;
use lctkit::whfactor::facet_profile;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Rationals with numerators up to 256 bits.
pub fn big_rational() -> impl Strategy<Value = Rational> {
    (
        prop::collection::vec(any::<u8>(), 1..=32),
        any::<bool>(),
        1u32..=1000,
    )
        .prop_map(|(bytes, neg, den)| {
            let sign = if neg { Sign::Minus } else { Sign::Plus };
            Rational::new(BigInt::from_bytes_le(sign, &bytes), BigInt::from(den))
        })
}

pub fn poly(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), big_rational()),
        0..=max_terms,
    )
    .prop_map(move |terms| SparsePoly::from_terms(nvars, terms).unwrap())
}

pub fn small_nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, any::<bool>(), 1i64..=5).prop_map(|(n, neg, d)| rat(if neg { -n } else { n }, d))
}

pub fn step(nvars: usize) -> impl Strategy<Value = SubstitutionStep> {
    (0..nvars, 1..nvars, 1u32..=3, small_nonzero_rational())
        .prop_map(move |(t, off, k, c)| SubstitutionStep::new(t, (t + off) % nvars, k, c).unwrap())
}

fn check(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

#[allow(clippy::eq_op)]
pub fn ring_laws((a, b, c): (SparsePoly, SparsePoly, SparsePoly)) -> Result<(), TestCaseError> {
    check(
        &(&a + &b) + &c == &a + &(&b + &c),
        "addition is associative",
    )?;
    check(&a + &b == &b + &a, "addition commutes")?;
    check(
        &(&a * &b) * &c == &a * &(&b * &c),
        "multiplication is associative",
    )?;
    check(&a * &b == &b * &a, "multiplication commutes")?;
    check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity")?;
    check((&a - &a).is_zero(), "a - a = 0")?;
    check(a.terms().all(|(_, v)| !v.is_zero()), "no stored zero")?;
    Ok(())
}

pub fn saturation(f: SparsePoly) -> Result<(), TestCaseError> {
    if f.is_zero() {
        return Ok(());
    }
    let (s, e) = f.saturate().unwrap();
    check(s.mul_monomial(&e) == f, "sat(f)·x^a = f")?;
    for v in 0..f.nvars() {
        check(
            s.support().any(|m| m[v] == 0),
            "saturation leaves no common monomial factor",
        )?;
    }
    Ok(())
}

pub fn substitution_inverse((f, st): (SparsePoly, SubstitutionStep)) -> Result<(), TestCaseError> {
    let g = f.substitute(&st).unwrap();
    check(g.substitute(&st.inverse()).unwrap() == f, "σ⁻¹(σ(f)) = f")?;
    check(
        f.truncate(f.total_degree().unwrap_or(0)) == f,
        "truncation above the degree",
    )
}

pub fn univariate_factor() -> impl Strategy<Value = UnivariatePoly> {
    prop::collection::vec(-6i64..=6, 2..=4).prop_filter_map("needs degree ≥ 1", |c| {
        let p = UnivariatePoly::from_ints(&c);
        (p.degree().unwrap_or(0) >= 1).then_some(p)
    })
}

pub fn yun((lc, factors): (i64, Vec<(UnivariatePoly, u32)>)) -> Result<(), TestCaseError> {
    let mut p = UnivariatePoly::constant(Rational::from_integer(lc.into()));
    for (q, m) in &factors {
        p = p.mul(&q.pow(*m));
    }
    let dec = p.squarefree_decompose().unwrap();
    check(dec.reconstruct() == p, "lc·∏ qᵢ^mᵢ = p")?;
    for (i, fi) in dec.factors.iter().enumerate() {
        check(
            fi.factor.leading_coeff().is_some_and(|c| c.is_one()),
            "monic",
        )?;
        let sq = fi.factor.gcd(&fi.factor.derivative());
        check(sq.degree() == Some(0), "squarefree")?;
        for fj in &dec.factors[i + 1..] {
            check(
                fi.multiplicity < fj.multiplicity,
                "increasing multiplicities",
            )?;
            check(
                fi.factor.gcd(&fj.factor).degree() == Some(0),
                "pairwise coprime",
            )?;
        }
    }
    Ok(())
}

pub fn yun_input() -> impl Strategy<Value = (i64, Vec<(UnivariatePoly, u32)>)> {
    (
        prop_oneof![-7i64..=-1, 1i64..=7],
        prop::collection::vec((univariate_factor(), 1u32..=4), 1..=5),
    )
}

/// `(wx, wy, a, b, [(c_i, m_i)])` for `x^a y^b ∏ (y^wx − c_i x^wy)^m_i`.
pub type WhInput = (u64, u64, u32, u32, Vec<(Rational, u32)>);

pub fn wh_input() -> impl Strategy<Value = WhInput> {
    (
        1u64..=5,
        1u64..=5,
        0u32..=3,
        0u32..=3,
        prop::collection::vec((small_nonzero_rational(), 1u32..=4), 1..=3),
    )
        .prop_filter("coprime weights", |(wx, wy, ..)| wx.gcd(wy) == 1)
        .prop_map(|(wx, wy, a, b, mut cs)| {
            cs.sort_by(|l, r| l.0.cmp(&r.0));
            cs.dedup_by(|l, r| l.0 == r.0);
            (wx, wy, a, b, cs)
        })
}

pub fn wh_round_trip((wx, wy, a, b, cs): WhInput) -> Result<(), TestCaseError> {
    let x = SparsePoly::var(2, 0);
    let y = SparsePoly::var(2, 1);
    let mut f = &x.pow(a) * &y.pow(b);
    for (c, m) in &cs {
        let binomial = &y.pow(wx as u32) - &x.pow(wy as u32).scale(c);
        f = &f * &binomial.pow(*m);
    }
    let polygon = newton_polygon(&f).unwrap();
    let facet = polygon
        .compact_facets()
        .find(|fc| (fc.wx(), fc.wy()) == (wx, wy))
        .ok_or_else(|| TestCaseError::fail("no facet with the built normal"))?;
    let prof = facet_profile(&f, facet).unwrap();
    let d = cs.iter().map(|(_, m)| *m).max().unwrap();
    check(
        (prof.a(), prof.b(), prof.d()) == (a, b, d),
        "(a, b, d) recovered",
    )?;
    let rebuilt = prof
        .saturated
        .mul_monomial(&ExponentVector::new(vec![prof.a(), prof.b()]));
    check(rebuilt == prof.leading, "x^a·y^b·sat(f_w) = f_w")
}
