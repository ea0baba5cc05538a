//! Dense univariate polynomials over Q, Yun's squarefree decomposition, and
//! rational root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat_int, Rational};

/// Coefficients in increasing degree; no trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as u64))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * &lc_inv;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; the caller knows `divisor` divides `self`.
    fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's algorithm. The factors are monic, squarefree, pairwise coprime and
    /// listed with strictly increasing multiplicity.
    pub fn squarefree_decompose(&self) -> Result<SquarefreeDecomposition> {
        let unit = self
            .leading_coeff()
            .cloned()
            .ok_or_else(|| Error::domain("squarefree decomposition of zero"))?;
        let f = self.monic();
        let mut factors = Vec::new();
        if f.degree() == Some(0) {
            return Ok(SquarefreeDecomposition { unit, factors });
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut a = f.exact_div(&g);
        let mut b = df.exact_div(&g);
        let mut multiplicity = 1u32;
        loop {
            let c = b.sub(&a.derivative());
            if c.is_zero() {
                if a.degree() > Some(0) {
                    factors.push(SquarefreeFactor {
                        factor: a,
                        multiplicity,
                    });
                }
                break;
            }
            let d = a.gcd(&c);
            if d.degree() > Some(0) {
                factors.push(SquarefreeFactor {
                    factor: d.clone(),
                    multiplicity,
                });
            }
            a = a.exact_div(&d);
            b = c.exact_div(&d);
            if a.degree() == Some(0) {
                break;
            }
            multiplicity += 1;
        }
        Ok(SquarefreeDecomposition { unit, factors })
    }

    /// Distinct rational roots, sorted increasingly.
    ///
    /// Clears denominators and peels off the root at zero. The remaining roots
    /// `u/v` satisfy `u | a0` and `v | an`; they are found by lifting the
    /// simple roots modulo a small prime `p` until `p^k > 2|a0 an|`, then
    /// rationally reconstructing and checking each candidate exactly.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut ints = primitive_integer_coeffs(&self.coeffs);
        let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            roots.push(Rational::zero());
            ints.drain(..lead_zeros);
        }
        if ints.len() >= 2 {
            let found = match padic_roots(&ints, Some(64)) {
                Some(found) => found,
                None => {
                    // Every prime sees a repeated root: work with the squarefree part.
                    let p = UnivariatePoly::new(ints.iter().map(|c| rat_int(c.clone())).collect());
                    let sqf = p.exact_div(&p.gcd(&p.derivative()));
                    padic_roots(&primitive_integer_coeffs(&sqf.coeffs), None)
                        .expect("a squarefree polynomial has a good prime")
                }
            };
            roots.extend(found);
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

fn primitive_integer_coeffs(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !content.is_zero() {
        for c in ints.iter_mut() {
            *c /= &content;
        }
    }
    ints
}

fn small_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn eval_mod(ints: &[BigInt], r: &BigInt, m: &BigInt) -> BigInt {
    ints.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * r + c).mod_floor(m))
}

fn derivative_ints(ints: &[BigInt]) -> Vec<BigInt> {
    ints.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Rational roots of a primitive integer polynomial with nonzero constant
/// term. `None` when `max_primes` primes in a row had a repeated root modulo
/// `p`; with no cap this only terminates for squarefree input.
fn padic_roots(ints: &[BigInt], max_primes: Option<usize>) -> Option<Vec<Rational>> {
    let n = ints.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    if n == 1 {
        return Some(vec![Rational::new(-ints[0].clone(), ints[1].clone())]);
    }
    let a0 = ints[0].abs();
    let an = ints[n].abs();
    let bound = BigInt::from(2) * &a0 * &an;
    let deriv = derivative_ints(ints);
    let mut tried = 0;
    let mut p = 2u64;
    'prime: loop {
        p += 1;
        if !small_prime(p) || (&an % p).is_zero() {
            continue;
        }
        if max_primes.is_some_and(|cap| tried >= cap) {
            return None;
        }
        tried += 1;
        let pm = BigInt::from(p);
        let mut simple = Vec::new();
        for r in 0..p {
            let r = BigInt::from(r);
            if eval_mod(ints, &r, &pm).is_zero() {
                if eval_mod(&deriv, &r, &pm).is_zero() {
                    continue 'prime;
                }
                simple.push(r);
            }
        }
        let mut out = Vec::new();
        for mut r in simple {
            let mut m = pm.clone();
            while m <= bound {
                m = &m * &m;
                let fr = eval_mod(ints, &r, &m);
                let inv = eval_mod(&deriv, &r, &m).extended_gcd(&m).x;
                r = (&r - fr * inv).mod_floor(&m);
            }
            if let Some(c) = reconstruct(&r, &m, &a0, &an) {
                if ints
                    .iter()
                    .rev()
                    .fold(Rational::zero(), |acc, k| acc * &c + rat_int(k.clone()))
                    .is_zero()
                {
                    out.push(c);
                }
            }
        }
        return Some(out);
    }
}

/// The fraction `u/v ≡ r (mod m)` with `|u| ≤ a` and `0 < v ≤ b`, if any.
fn reconstruct(r: &BigInt, m: &BigInt, a: &BigInt, b: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > a {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > b {
        return None;
    }
    Some(Rational::new(r1, t1))
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquarefreeFactor {
    pub factor: UnivariatePoly,
    pub multiplicity: u32,
}

/// `unit · ∏ factor^multiplicity`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    pub factors: Vec<SquarefreeFactor>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> UnivariatePoly {
        self.factors
            .iter()
            .fold(UnivariatePoly::constant(self.unit.clone()), |acc, sf| {
                acc.mul(&sf.factor.pow(sf.multiplicity))
            })
    }

    /// Largest multiplicity of a root over C; zero for constants.
    pub fn max_multiplicity(&self) -> u32 {
        self.factors
            .iter()
            .map(|f| f.multiplicity)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn t_minus(r: i64) -> UnivariatePoly {
        UnivariatePoly::linear_root(&rat_int(r))
    }

    #[test]
    fn pure_power() {
        let p = UnivariatePoly::from_ints(&[0, 1]).pow(7);
        let d = p.squarefree_decompose().unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].factor, UnivariatePoly::from_ints(&[0, 1]));
        assert_eq!(d.factors[0].multiplicity, 7);
    }

    #[test]
    fn mixed_multiplicities() {
        // (y-1)^2 (y+2)
        let p = t_minus(1).pow(2).mul(&t_minus(-2));
        let d = p.squarefree_decompose().unwrap();
        assert_eq!(
            d.factors,
            vec![
                SquarefreeFactor {
                    factor: t_minus(-2),
                    multiplicity: 1
                },
                SquarefreeFactor {
                    factor: t_minus(1),
                    multiplicity: 2
                },
            ]
        );
        assert_eq!(d.reconstruct(), p);
    }

    #[test]
    fn squarefree_input_is_one_factor() {
        let p = UnivariatePoly::from_ints(&[1, 0, 3]);
        let d = p.squarefree_decompose().unwrap();
        assert_eq!(d.unit, rat_int(3));
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].factor, p.monic());
        assert_eq!(d.factors[0].multiplicity, 1);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(UnivariatePoly::zero().squarefree_decompose().is_err());
        assert!(UnivariatePoly::one()
            .div_rem(&UnivariatePoly::zero())
            .is_err());
    }

    #[test]
    fn rational_roots_sieve() {
        // (t - 1/2)(t + 2/3)(t^2 + 1) t
        let p = UnivariatePoly::linear_root(&rat(1, 2))
            .mul(&UnivariatePoly::linear_root(&rat(-2, 3)))
            .mul(&UnivariatePoly::from_ints(&[1, 0, 1]))
            .mul(&UnivariatePoly::from_ints(&[0, 1]));
        assert_eq!(p.rational_roots(), vec![rat(-2, 3), rat(0, 1), rat(1, 2)]);
        assert!(UnivariatePoly::from_ints(&[1, 0, 1])
            .rational_roots()
            .is_empty());
        assert!(UnivariatePoly::from_ints(&[-2, 0, 1])
            .rational_roots()
            .is_empty());
    }

    #[test]
    fn rational_roots_with_large_coefficients() {
        // Roots with numerators and denominators far past trial division.
        let big = |s: &str| rat_int(s.parse::<BigInt>().unwrap());
        let r1 = big("1000000000000000000000000000057") / big("99999999999999999999999999977");
        let r2 = -big("340282366920938463463374607431768211297") / rat(7, 1);
        let p = UnivariatePoly::linear_root(&r1)
            .pow(2)
            .mul(&UnivariatePoly::linear_root(&r2))
            .mul(&UnivariatePoly::from_ints(&[3, 0, 0, 1]));
        let mut want = vec![r1.clone(), r2.clone()];
        want.sort();
        assert_eq!(p.rational_roots(), want);
        assert_eq!(UnivariatePoly::linear_root(&r1).rational_roots(), vec![r1]);
    }

    #[test]
    fn gcd_is_monic() {
        let a = t_minus(1).mul(&t_minus(2)).scale(&rat(3, 1));
        let b = t_minus(1).mul(&t_minus(5)).scale(&rat(-7, 2));
        assert_eq!(a.gcd(&b), t_minus(1));
    }
}
