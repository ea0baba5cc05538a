//! Local intersection multiplicity at the origin.
//!
//! Two exact methods are implemented. [`fulton_multiplicity`] is the classical
//! axiomatic recursion on primitive integer polynomials. Its reductions swell
//! quickly on curves of degree twenty or more, so [`intersection_multiplicity`]
//! first shears the pair until the line `x = 0` meets both curves only at the
//! origin and the leading `y` coefficients are constants; then `I₀` is the
//! order in `x` of `Res_y(p, q)`. The resultant is interpolated modulo enough
//! primes that a coefficient vanishing modulo all of them is provably zero.
//! Fulton's recursion remains the fallback when no small shear is admissible.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat_int, Rational, SparsePoly, SubstitutionStep};
use crate::univariate::UnivariatePoly;

pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

/// Terms keyed by `(y exponent, x exponent)`, so the `y = 0` part comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly(BTreeMap<(u32, u32), BigInt>);

impl IntPoly {
    fn from_poly(p: &SparsePoly) -> Self {
        let lcm = p.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let terms = p
            .terms()
            .map(|(e, c)| ((e[1], e[0]), c.numer() * (&lcm / c.denom())))
            .collect();
        let mut out = IntPoly(terms);
        out.make_primitive();
        out
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_unit_at_origin(&self) -> bool {
        self.0.contains_key(&(0, 0))
    }

    /// `(degree, leading coefficient, order)` of `p(x, 0)`, `None` if it vanishes.
    fn on_x_axis(&self) -> Option<(u32, &BigInt, u32)> {
        let mut it = self.0.range((0, 0)..(1, 0));
        let (&(_, lo), _) = it.next()?;
        let (&(_, hi), lc) = self.0.range((0, 0)..(1, 0)).next_back()?;
        Some((hi, lc, lo))
    }

    /// Divides by `y`; every term must contain it.
    fn div_y(&self) -> IntPoly {
        IntPoly(
            self.0
                .iter()
                .map(|(&(ey, ex), c)| ((ey - 1, ex), c.clone()))
                .collect(),
        )
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for c in self.0.values() {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for c in self.0.values_mut() {
            *c /= &g;
        }
    }

    /// `s·self − t·x^shift·other`, made primitive.
    fn combine(&self, s: &BigInt, t: &BigInt, shift: u32, other: &IntPoly) -> IntPoly {
        let mut out: BTreeMap<(u32, u32), BigInt> =
            self.0.iter().map(|(&k, c)| (k, c * s)).collect();
        for (&(ey, ex), c) in &other.0 {
            let key = (ey, ex + shift);
            let v = out.entry(key).or_insert_with(BigInt::zero);
            *v -= c * t;
            if v.is_zero() {
                out.remove(&key);
            }
        }
        let mut p = IntPoly(out);
        p.make_primitive();
        p
    }
}

/// `I₀(p, q)` with the default step limit.
pub fn intersection_multiplicity(p: &SparsePoly, q: &SparsePoly) -> Result<u64> {
    intersection_multiplicity_with_limit(p, q, DEFAULT_STEP_LIMIT)
}

/// `I₀(p, q)`. Curves sharing a component through the origin give
/// [`Error::NonFiniteMultiplicity`]; `max_steps` bounds the Fulton fallback.
pub fn intersection_multiplicity_with_limit(
    p: &SparsePoly,
    q: &SparsePoly,
    max_steps: u64,
) -> Result<u64> {
    check_bivariate(p, q)?;
    if !p.constant_term().is_zero() || !q.constant_term().is_zero() {
        return Ok(0);
    }
    if p.is_zero() || q.is_zero() {
        return Err(Error::NonFiniteMultiplicity);
    }
    match resultant_order(p, q, max_steps) {
        Some(order) => order,
        None => fulton_multiplicity(p, q, max_steps),
    }
}

fn check_bivariate(p: &SparsePoly, q: &SparsePoly) -> Result<()> {
    if p.nvars() != 2 || q.nvars() != 2 {
        return Err(Error::structural(
            "intersection multiplicity needs bivariate polynomials",
        ));
    }
    Ok(())
}

/// `I₀(p, q)` by Fulton's recursion alone.
///
/// A finite local multiplicity never exceeds `deg p · deg q` (Bézout after
/// removing common components away from the origin), so a running total
/// beyond that proves a shared component.
pub fn fulton_multiplicity(p: &SparsePoly, q: &SparsePoly, max_steps: u64) -> Result<u64> {
    check_bivariate(p, q)?;
    let bezout = p.total_degree().unwrap_or(0) * q.total_degree().unwrap_or(0);
    let mut f = IntPoly::from_poly(p);
    let mut g = IntPoly::from_poly(q);
    let mut total: u64 = 0;
    for _ in 0..max_steps {
        if total > bezout {
            return Err(Error::NonFiniteMultiplicity);
        }
        if f.is_unit_at_origin() || g.is_unit_at_origin() {
            return Ok(total);
        }
        if f.is_zero() || g.is_zero() {
            return Err(Error::NonFiniteMultiplicity);
        }
        match (f.on_x_axis(), g.on_x_axis()) {
            (None, None) => return Err(Error::NonFiniteMultiplicity),
            (None, Some((_, _, ord))) => {
                // I(y·f', g) = ord_x g(x, 0) + I(f', g)
                total += ord as u64;
                f = f.div_y();
            }
            (Some((_, _, ord)), None) => {
                total += ord as u64;
                g = g.div_y();
            }
            (Some((r, lf, _)), Some((s, lg, _))) => {
                if r <= s {
                    g = g.combine(lf, lg, s - r, &f);
                } else {
                    f = f.combine(lg, lf, r - s, &g);
                }
            }
        }
    }
    Err(Error::NonFiniteMultiplicity)
}

const MAX_SHEAR: i64 = 32;

/// `ord_x Res_y` after the first admissible shear `x ↦ x + t·y`; `None` when
/// no shear in range is admissible.
///
/// An identically vanishing resultant means a common factor. Its leading `y`
/// coefficient divides the constant ones of `p` and `q`, so it meets `x = 0`,
/// and by admissibility only at the origin: the multiplicity is infinite.
fn resultant_order(p: &SparsePoly, q: &SparsePoly, max_steps: u64) -> Option<Result<u64>> {
    let dp = p.total_degree()? as u32;
    let dq = q.total_degree()? as u32;
    let sheared = |f: &SparsePoly, t: i64| {
        let step = SubstitutionStep::new(0, 1, 1, rat_int(t)).expect("distinct variables");
        f.substitute(&step).expect("bivariate substitution")
    };
    for k in 0..=2 * MAX_SHEAR {
        let t = if k % 2 == 0 { -k / 2 } else { (k + 1) / 2 };
        let (ps, qs) = if t == 0 {
            (p.clone(), q.clone())
        } else {
            (sheared(p, t), sheared(q, t))
        };
        if ps.coeff(&[0, dp]).is_zero() || qs.coeff(&[0, dq]).is_zero() {
            continue;
        }
        if !meets_axis_only_at_origin(&ps, &qs) {
            // A common component can block every shear; split it off.
            match monic_gcd_y(&ps, &qs) {
                Some(g) if g.degree_in(1) > Some(0) => {
                    return Some(split_common_factor(&ps, &qs, &g, max_steps));
                }
                _ => continue,
            }
        }
        let order = modular_order(&IntPoly::from_poly(&ps), dp, &IntPoly::from_poly(&qs), dq);
        return Some(order.ok_or(Error::NonFiniteMultiplicity));
    }
    None
}

/// `f(a, y)`.
fn at_x(f: &SparsePoly, a: &Rational) -> UnivariatePoly {
    let mut c = vec![Rational::zero(); f.degree_in(1).unwrap_or(0) as usize + 1];
    for (e, v) in f.terms() {
        c[e[1] as usize] += v * num_traits::pow(a.clone(), e[0] as usize);
    }
    UnivariatePoly::new(c)
}

/// Whether `p(0, y)` and `q(0, y)` have no common root besides `y = 0`.
fn meets_axis_only_at_origin(p: &SparsePoly, q: &SparsePoly) -> bool {
    let zero = Rational::zero();
    let g = at_x(p, &zero).gcd(&at_x(q, &zero));
    match g.degree() {
        Some(d) => g.coeffs()[..d].iter().all(|c| c.is_zero()),
        None => false,
    }
}

/// `gcd(p, q)` scaled to be monic in `y`, for `p`, `q` with constant leading
/// `y` coefficients.
///
/// Every factor then has a constant leading coefficient too, so `gcd(p, q)(a, y)`
/// divides `gcd(p(a, y), q(a, y))` with equality for all but finitely many
/// `a`. The coefficients are interpolated from specialisations of minimal
/// degree and the candidate is accepted only if it divides both exactly.
fn monic_gcd_y(p: &SparsePoly, q: &SparsePoly) -> Option<SparsePoly> {
    let bound = p.total_degree()?.min(q.total_degree()?) as usize;
    let mut samples: Vec<(Rational, UnivariatePoly)> = Vec::new();
    for a in 0..(4 * bound as i64 + 16) {
        let a = rat_int(a);
        let g = at_x(p, &a).gcd(&at_x(q, &a));
        let deg = g.degree()?;
        if deg == 0 {
            return Some(SparsePoly::one(2));
        }
        match samples.first().map(|(_, s)| s.degree()) {
            Some(cur) if Some(deg) > cur => continue,
            Some(cur) if Some(deg) < cur => samples.clear(),
            _ => {}
        }
        samples.push((a, g));
        if samples.len() == bound + 1 {
            let candidate = interpolate_in_x(&samples);
            if div_monic_y(p, &candidate).is_some() && div_monic_y(q, &candidate).is_some() {
                return Some(candidate);
            }
            samples.remove(0);
        }
    }
    None
}

/// The bivariate polynomial whose `y^i` coefficient interpolates the `y^i`
/// coefficients of the samples (Newton's divided differences).
fn interpolate_in_x(samples: &[(Rational, UnivariatePoly)]) -> SparsePoly {
    let m = samples[0].1.degree().unwrap_or(0);
    let xs: Vec<&Rational> = samples.iter().map(|(a, _)| a).collect();
    let mut terms = Vec::new();
    for i in 0..=m {
        let mut c: Vec<Rational> = samples.iter().map(|(_, g)| g.coeffs()[i].clone()).collect();
        let n = c.len();
        for j in 1..n {
            for k in (j..n).rev() {
                c[k] = (&c[k] - &c[k - 1]) / (xs[k] - xs[k - j]);
            }
        }
        let mut poly = UnivariatePoly::constant(c[n - 1].clone());
        for k in (0..n - 1).rev() {
            let root = UnivariatePoly::linear_root(xs[k]);
            poly = poly.mul(&root).add(&UnivariatePoly::constant(c[k].clone()));
        }
        for (ex, v) in poly.coeffs().iter().enumerate() {
            terms.push((vec![ex as u32, i as u32], v.clone()));
        }
    }
    SparsePoly::from_terms(2, terms).expect("bivariate terms")
}

/// `p / g` when `g` is monic in `y` and divides `p` exactly.
fn div_monic_y(p: &SparsePoly, g: &SparsePoly) -> Option<SparsePoly> {
    let m = g.degree_in(1)?;
    let mut quotient = SparsePoly::zero(2);
    let mut rest = p.clone();
    while let Some(dy) = rest.degree_in(1) {
        if rest.is_zero() || dy < m {
            break;
        }
        let lead = SparsePoly::from_terms(
            2,
            rest.terms()
                .filter(|(e, _)| e[1] == dy)
                .map(|(e, v)| (vec![e[0], dy - m], v.clone())),
        )
        .expect("bivariate terms");
        rest = &rest - &(&lead * g);
        quotient = &quotient + &lead;
    }
    rest.is_zero().then_some(quotient)
}

fn split_common_factor(
    p: &SparsePoly,
    q: &SparsePoly,
    g: &SparsePoly,
    max_steps: u64,
) -> Result<u64> {
    if g.constant_term().is_zero() {
        return Err(Error::NonFiniteMultiplicity);
    }
    let p = div_monic_y(p, g).expect("verified divisor");
    let q = div_monic_y(q, g).expect("verified divisor");
    intersection_multiplicity_with_limit(&p, &q, max_steps)
}

/// Lowest `k` with a nonzero `x^k` coefficient in `Res_y(p, q)`, where both
/// leading `y` coefficients are constants.
///
/// Every coefficient of the resultant is bounded by `‖p‖₁^dq · ‖q‖₁^dp`, so
/// once the primes multiply past twice that bound, a coefficient that is zero
/// modulo each of them is zero.
fn modular_order(p: &IntPoly, dp: u32, q: &IntPoly, dq: u32) -> Option<u64> {
    let norm_bits = |f: &IntPoly| {
        f.0.values()
            .fold(BigUint::zero(), |s, c| s + c.magnitude())
            .bits()
    };
    let bound_bits = norm_bits(p) * dq as u64 + norm_bits(q) * dp as u64 + 2;
    let lc_p = &p.0[&(dp, 0)];
    let lc_q = &q.0[&(dq, 0)];
    let degree = (dp as u64) * (dq as u64);

    let mut first_nonzero: Option<u64> = None;
    let mut covered: u64 = 0;
    let mut candidate = PRIME_START;
    while covered < bound_bits {
        let m = next_prime_below(candidate);
        candidate = m - 1;
        let big_m = BigInt::from(m);
        if (lc_p % &big_m).is_zero() || (lc_q % &big_m).is_zero() {
            continue;
        }
        covered += 61;
        let coeffs = modp::resultant_coefficients(p, dp, q, dq, degree, m);
        if let Some(k) = coeffs.iter().position(|&c| c != 0) {
            let k = k as u64;
            first_nonzero = Some(first_nonzero.map_or(k, |f| f.min(k)));
        }
    }
    first_nonzero
}

const PRIME_START: u64 = (1 << 62) - 1;

fn next_prime_below(mut n: u64) -> u64 {
    if n.is_multiple_of(2) {
        n -= 1;
    }
    while !modp::is_prime(n) {
        n -= 2;
    }
    n
}

mod modp {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    use super::IntPoly;

    fn mul(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }

    fn pow(mut a: u64, mut e: u64, m: u64) -> u64 {
        let mut r = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a, m);
            }
            a = mul(a, a, m);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64, m: u64) -> u64 {
        pow(a, m - 2, m)
    }

    fn sub(a: u64, b: u64, m: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (m - b)
        }
    }

    /// Deterministic Miller–Rabin for 64-bit inputs.
    pub(super) fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        for &b in &BASES {
            if n.is_multiple_of(b) {
                return n == b;
            }
        }
        let s = (n - 1).trailing_zeros();
        let d = (n - 1) >> s;
        'bases: for &b in &BASES {
            let mut x = pow(b, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mul(x, x, n);
                if x == n - 1 {
                    continue 'bases;
                }
            }
            return false;
        }
        true
    }

    fn reduce(c: &BigInt, m: u64) -> u64 {
        let r = c % BigInt::from(m);
        let r = if r.sign() == num_bigint::Sign::Minus {
            r + BigInt::from(m)
        } else {
            r
        };
        r.to_u64().expect("reduced residue")
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// `a mod b` for trimmed, nonzero `b`.
    fn rem(mut a: Vec<u64>, b: &[u64], m: u64) -> Vec<u64> {
        let n = b.len() - 1;
        let lc_inv = inv(b[n], m);
        while a.len() > n {
            let top = a.len() - 1;
            let f = mul(a[top], lc_inv, m);
            if f != 0 {
                let shift = top - n;
                for (i, &bi) in b.iter().enumerate() {
                    a[shift + i] = sub(a[shift + i], mul(f, bi, m), m);
                }
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    /// Resultant of two univariate polynomials given low-to-high.
    fn resultant(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> u64 {
        trim(&mut a);
        trim(&mut b);
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        let mut acc = 1u64;
        loop {
            let da = (a.len() - 1) as u64;
            let db = (b.len() - 1) as u64;
            if db == 0 {
                return mul(acc, pow(b[0], da, m), m);
            }
            if da == 0 {
                return mul(acc, pow(a[0], db, m), m);
            }
            let r = rem(a, &b, m);
            if r.is_empty() {
                return 0;
            }
            let dr = (r.len() - 1) as u64;
            if da % 2 == 1 && db % 2 == 1 {
                acc = sub(0, acc, m);
            }
            acc = mul(acc, pow(b[db as usize], da - dr, m), m);
            a = b;
            b = r;
        }
    }

    /// `f(x, y)` at `x = t`, as coefficients in `y`.
    fn specialise(terms: &[((u32, u32), u64)], deg_y: u32, powers: &[u64], m: u64) -> Vec<u64> {
        let mut out = vec![0u64; deg_y as usize + 1];
        for &((ey, ex), c) in terms {
            let v = &mut out[ey as usize];
            *v = (*v + mul(c, powers[ex as usize], m)) % m;
        }
        out
    }

    /// Coefficients of `Res_y(p, q)(x)` modulo `m`, by interpolation at
    /// `x = 0, 1, …, degree`.
    pub(super) fn resultant_coefficients(
        p: &IntPoly,
        dp: u32,
        q: &IntPoly,
        dq: u32,
        degree: u64,
        m: u64,
    ) -> Vec<u64> {
        let pt: Vec<_> = p.0.iter().map(|(&k, c)| (k, reduce(c, m))).collect();
        let qt: Vec<_> = q.0.iter().map(|(&k, c)| (k, reduce(c, m))).collect();
        let n = degree as usize + 1;
        let max_ex = dp.max(dq) as usize;
        let mut values = Vec::with_capacity(n);
        let mut powers = vec![0u64; max_ex + 1];
        for t in 0..n as u64 {
            powers[0] = 1;
            for i in 1..=max_ex {
                powers[i] = mul(powers[i - 1], t % m, m);
            }
            let a = specialise(&pt, dp, &powers, m);
            let b = specialise(&qt, dq, &powers, m);
            values.push(resultant(a, b, m));
        }
        // Newton divided differences on the nodes 0..n, then expansion.
        let mut c = values;
        for j in 1..n {
            let ij = inv(j as u64 % m, m);
            for i in (j..n).rev() {
                c[i] = mul(sub(c[i], c[i - 1], m), ij, m);
            }
        }
        let mut poly = vec![0u64; n];
        for i in (0..n).rev() {
            // poly = poly·(x − i) + c[i]
            for k in (1..n).rev() {
                poly[k] = sub(poly[k - 1], mul(poly[k], i as u64 % m, m), m);
            }
            poly[0] = sub(c[i], mul(poly[0], i as u64 % m, m), m);
            poly[0] %= m;
        }
        poly
    }
}

/// `μ(f) = I₀(∂f/∂x, ∂f/∂y)`.
pub fn milnor_number(f: &SparsePoly) -> Result<u64> {
    milnor_number_with_limit(f, DEFAULT_STEP_LIMIT)
}

pub fn milnor_number_with_limit(f: &SparsePoly, max_steps: u64) -> Result<u64> {
    if f.nvars() != 2 {
        return Err(Error::structural(
            "Milnor numbers are computed for two variables",
        ));
    }
    if f.is_zero() {
        return Err(Error::domain("Milnor number of the zero polynomial"));
    }
    intersection_multiplicity_with_limit(&f.derivative(0), &f.derivative(1), max_steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn p(s: &str) -> SparsePoly {
        parse(s).unwrap()
    }

    #[test]
    fn axioms() {
        assert_eq!(intersection_multiplicity(&p("x"), &p("y")).unwrap(), 1);
        assert_eq!(intersection_multiplicity(&p("x + 1"), &p("y")).unwrap(), 0);
        assert_eq!(
            intersection_multiplicity(&p("y"), &p("y - x^5")).unwrap(),
            5
        );
        assert_eq!(
            intersection_multiplicity(&p("y^2 - x^3"), &p("y^3 - x^2")).unwrap(),
            4
        );
        assert_eq!(
            intersection_multiplicity(&p("x*y"), &p("x + y")).unwrap(),
            2
        );
    }

    #[test]
    fn shared_component() {
        assert_eq!(
            intersection_multiplicity(&p("x*(x+y)"), &p("(x+y)*y^2")),
            Err(Error::NonFiniteMultiplicity)
        );
        assert_eq!(
            intersection_multiplicity(&p("x*y"), &p("y")),
            Err(Error::NonFiniteMultiplicity)
        );
        assert_eq!(
            milnor_number(&p("(x+y)^2*x")),
            Err(Error::NonFiniteMultiplicity)
        );
        // a doubled parabola meets every sheared axis away from the origin
        assert_eq!(
            milnor_number(&p("(x - 2*y^2)^2*(y + x^3) + (x - 2*y^2)^3")),
            Err(Error::NonFiniteMultiplicity)
        );
    }

    #[test]
    fn component_away_from_origin() {
        // x − 1 is a unit at the origin
        assert_eq!(
            intersection_multiplicity(&p("y*(x-1)"), &p("(x-1)*(y-x^2)")).unwrap(),
            2
        );
    }

    #[test]
    fn sheared_pairs_agree_with_fulton() {
        let pairs = [
            ("y^2 - x^3", "y^3 - x^2"),
            ("x*y", "x + y"),
            ("x^2 + y^3 + x*y^2", "y^2 - x^5 + x^2*y"),
            ("(x-y)^3 + x^4", "(x+y)^2 - y^5"),
            ("x*y*(x+y) + y^5", "x^3 - 2*x*y^2 + y^4"),
        ];
        for (a, b) in pairs {
            let (a, b) = (p(a), p(b));
            let fast = intersection_multiplicity(&a, &b).unwrap();
            assert_eq!(
                fast,
                fulton_multiplicity(&a, &b, DEFAULT_STEP_LIMIT).unwrap()
            );
            assert_eq!(fast, intersection_multiplicity(&b, &a).unwrap());
        }
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&p("x^2 + y^3")).unwrap(), 2);
        assert_eq!(milnor_number(&p("x^2 + y^2")).unwrap(), 1);
        assert_eq!(milnor_number(&p("x^3 + y^4")).unwrap(), 6);
        assert_eq!(milnor_number(&p("x + y^2")).unwrap(), 0);
        // D4: x^2 y + y^3
        assert_eq!(milnor_number(&p("x^2*y + y^3")).unwrap(), 4);
        assert_eq!(
            milnor_number(&p("x^2*y^2*(x+y)^2 + x^9 + y^7")).unwrap(),
            30
        );
    }

    #[test]
    fn larger_example() {
        let f = p("(x*y*(x+y))^7 + (x*y)^4*(x+y)^6*(x^8+y^8) + x*y*(x^22+y^22)");
        assert_eq!(milnor_number(&f).unwrap(), 454);
    }
}
