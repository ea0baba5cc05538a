//! Sparse multivariate polynomials over Q.
//!
//! A polynomial is a finite map from exponent vectors to nonzero rationals.
//! Zero coefficients are never stored, so structural equality is polynomial
//! equality. Exponent vectors are dense, one entry per variable, with at most
//! [`MAX_VARS`] variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest supported number of variables.
pub const MAX_VARS: usize = 8;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Exponents of a monomial `x_1^{e_1} ... x_n^{e_n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// `w · e`; cannot overflow for at most eight variables.
    pub fn dot(&self, w: &WeightVector) -> u128 {
        self.0
            .iter()
            .zip(w.as_slice())
            .map(|(&e, &wi)| e as u128 * wi as u128)
            .sum()
    }

    pub fn checked_add(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Componentwise `self - other`, if `other` divides `self`.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl Deref for ExponentVector {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// Non-negative integer weights, not all zero, with gcd 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    /// Canonicalizes by dividing out the gcd.
    pub fn new(weights: &[u64]) -> Result<Self> {
        if weights.is_empty() || weights.len() > MAX_VARS {
            return Err(Error::structural(format!(
                "weight vector must have between 1 and {MAX_VARS} entries, got {}",
                weights.len()
            )));
        }
        let g = weights.iter().fold(0u64, |g, &w| g.gcd(&w));
        if g == 0 {
            return Err(Error::domain("weight vector is identically zero"));
        }
        Ok(WeightVector(weights.iter().map(|w| w / g).collect()))
    }

    /// Scales non-negative rational weights to the canonical integer form.
    pub fn from_rationals(weights: &[Rational]) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::domain("weights must be non-negative"));
        }
        let lcm = weights.iter().fold(BigInt::one(), |l, w| l.lcm(w.denom()));
        let ints = weights
            .iter()
            .map(|w| {
                (w.numer() * (&lcm / w.denom()))
                    .to_u64()
                    .ok_or_else(|| Error::domain("weight too large"))
            })
            .collect::<Result<Vec<_>>>()?;
        // Dividing by the gcd may bring oversized entries back in range, but
        // u64 entries are plenty for anything a Newton polygon produces.
        WeightVector::new(&ints)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u128 {
        self.0.iter().map(|&w| w as u128).sum()
    }

    pub fn has_zero_entry(&self) -> bool {
        self.0.contains(&0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// The coordinate change `x_target ↦ x_target + coefficient · x_source^exponent`.
///
/// This is an algebra automorphism; [`SubstitutionStep::inverse`] negates the
/// coefficient. A zero coefficient is the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubstitutionStep {
    pub target: usize,
    pub source: usize,
    pub exponent: u32,
    pub coefficient: Rational,
}

impl SubstitutionStep {
    pub fn new(target: usize, source: usize, exponent: u32, coefficient: Rational) -> Result<Self> {
        if target == source {
            return Err(Error::structural(
                "substitution target and source must be different variables",
            ));
        }
        if exponent == 0 {
            return Err(Error::structural("substitution exponent must be positive"));
        }
        Ok(SubstitutionStep {
            target,
            source,
            exponent,
            coefficient,
        })
    }

    pub fn inverse(&self) -> Self {
        SubstitutionStep {
            coefficient: -self.coefficient.clone(),
            ..self.clone()
        }
    }
}

impl fmt::Display for SubstitutionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Variable names depend on the ambient count; assume the planar case
        // when the indices allow it.
        let n = self.target.max(self.source) + 1;
        let n = if n <= 2 { 2 } else { n };
        let t = var_name(n, self.target);
        let s = var_name(n, self.source);
        let c = &self.coefficient;
        let pow = if self.exponent == 1 {
            s
        } else {
            format!("{s}^{}", self.exponent)
        };
        if c.is_negative() {
            write!(f, "{t} -> {t} - {}*{pow}", -c)
        } else {
            write!(f, "{t} -> {t} + {c}*{pow}")
        }
    }
}

pub(crate) fn var_name(nvars: usize, i: usize) -> String {
    if nvars <= 2 {
        ["x", "y"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// A polynomial in `nvars` variables with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&nvars),
            "variable count must be between 1 and {MAX_VARS}"
        );
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, ExponentVector::zero(nvars), c)
    }

    /// The variable `x_var` (0-based).
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        Self::monomial(nvars, ExponentVector::unit(nvars, var), Rational::one())
    }

    pub fn monomial(nvars: usize, exponents: ExponentVector, coeff: Rational) -> Self {
        let mut p = Self::zero(nvars);
        assert_eq!(exponents.len(), nvars, "exponent vector length mismatch");
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// repeated monomials and dropping zero sums.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        if !(1..=MAX_VARS).contains(&nvars) {
            return Err(Error::structural(format!(
                "variable count must be between 1 and {MAX_VARS}, got {nvars}"
            )));
        }
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::structural(format!(
                    "exponent vector of length {} in a polynomial of {nvars} variables",
                    e.len()
                )));
            }
            p.add_term(ExponentVector(e), c);
        }
        Ok(p)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat_int(*c))))
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms
            .get(&ExponentVector(e.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    /// Lowest total degree of a term (the multiplicity at the origin).
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.total_degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Bit length of the largest numerator or denominator.
    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    fn check_same(&self, other: &SparsePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::structural(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Product; fails on a variable-count mismatch or exponent overflow.
    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_same(other)?;
        let mut out = SparsePoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1
                    .checked_add(e2)
                    .ok_or_else(|| Error::domain("exponent overflow"))?;
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn mul_monomial(&self, e: &ExponentVector) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (t.checked_add(e).expect("exponent overflow"), v.clone()))
                .collect(),
        }
    }

    /// Divides by `x^e`, which must divide every term.
    pub fn div_monomial(&self, e: &ExponentVector) -> Option<SparsePoly> {
        let terms = self
            .terms
            .iter()
            .map(|(t, v)| t.checked_sub(e).map(|q| (q, v.clone())))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(SparsePoly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn pow(&self, mut k: u32) -> SparsePoly {
        let mut base = self.clone();
        let mut acc = SparsePoly::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The `w`-weight: least `w · e` over the support, `None` for zero.
    pub fn weight(&self, w: &WeightVector) -> Option<u128> {
        assert_eq!(w.len(), self.nvars, "weight vector length mismatch");
        self.terms.keys().map(|e| e.dot(w)).min()
    }

    /// Sum of the terms of least `w`-weight.
    pub fn leading_term(&self, w: &WeightVector) -> Result<SparsePoly> {
        if w.len() != self.nvars {
            return Err(Error::structural("weight vector length mismatch"));
        }
        let m = self
            .weight(w)
            .ok_or_else(|| Error::domain("leading term of the zero polynomial"))?;
        Ok(SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.dot(w) == m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// Splits off the largest monomial factor: returns `(sat, a)` with
    /// `self = sat · x^a`.
    pub fn saturate(&self) -> Result<(SparsePoly, ExponentVector)> {
        let mut it = self.terms.keys();
        let first = it
            .next()
            .ok_or_else(|| Error::domain("saturation of the zero polynomial"))?;
        let mut a = first.0.clone();
        for e in it {
            for (ai, ei) in a.iter_mut().zip(e.iter()) {
                *ai = (*ai).min(*ei);
            }
        }
        let a = ExponentVector(a);
        let sat = self.div_monomial(&a).expect("monomial content divides");
        Ok((sat, a))
    }

    /// Terms of total degree at most `d`.
    pub fn truncate(&self, d: u64) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Image under `x_t ↦ x_t + c·x_s^k`, expanded binomially.
    pub fn substitute(&self, step: &SubstitutionStep) -> Result<SparsePoly> {
        let (t, s, k) = (step.target, step.source, step.exponent);
        if t == s {
            return Err(Error::structural(
                "substitution target and source must be different variables",
            ));
        }
        if t >= self.nvars || s >= self.nvars {
            return Err(Error::structural(
                "substitution variable index out of range",
            ));
        }
        if step.coefficient.is_zero() {
            return Ok(self.clone());
        }
        let max_et = self.terms.keys().map(|e| e[t]).max().unwrap_or(0);
        let mut cpow = Vec::with_capacity(max_et as usize + 1);
        cpow.push(Rational::one());
        for j in 1..=max_et as usize {
            let next = &cpow[j - 1] * &step.coefficient;
            cpow.push(next);
        }
        let mut out = SparsePoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let et = e[t];
            let mut binom = BigInt::one();
            for j in 0..=et {
                let mut ne = e.0.clone();
                ne[t] = et - j;
                let shift = (k as u64) * (j as u64);
                ne[s] = u32::try_from(ne[s] as u64 + shift)
                    .map_err(|_| Error::domain("exponent overflow in substitution"))?;
                let coeff = c * &cpow[j as usize] * Rational::from_integer(binom.clone());
                out.add_term(ExponentVector(ne), coeff);
                binom = binom * BigInt::from(et - j) / BigInt::from(j + 1);
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to `x_var`.
    pub fn derivative(&self, var: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut ne = e.0.clone();
                ne[var] -= 1;
                out.add_term(ExponentVector(ne), c * rat_int(e[var]));
            }
        }
        out
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.0.clone();
                    ne.swap(i, j);
                    (ExponentVector(ne), c.clone())
                })
                .collect(),
        }
    }

    /// Image under `x_i ↦ scales[i]·x_i`.
    pub fn scale_vars(&self, scales: &[Rational]) -> Result<SparsePoly> {
        if scales.len() != self.nvars {
            return Err(Error::structural("scale vector length mismatch"));
        }
        if scales.iter().any(|s| s.is_zero()) {
            return Err(Error::domain("axis scalings must be nonzero"));
        }
        Ok(SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let factor = e
                        .iter()
                        .zip(scales)
                        .fold(Rational::one(), |acc, (&k, s)| acc * pow_rat(s, k));
                    (e.clone(), c * factor)
                })
                .collect(),
        })
    }

    /// Re-embeds into a ring with more variables (new ones appended).
    pub fn extend_vars(&self, nvars: usize) -> Result<SparsePoly> {
        if nvars < self.nvars || nvars > MAX_VARS {
            return Err(Error::structural("cannot shrink the variable count"));
        }
        Ok(SparsePoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.0.clone();
                    ne.resize(nvars, 0);
                    (ExponentVector(ne), c.clone())
                })
                .collect(),
        })
    }

    /// Terms in graded-lexicographic order, highest first.
    pub fn terms_grlex(&self) -> Vec<(&ExponentVector, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            b.total_degree()
                .cmp(&a.total_degree())
                .then_with(|| b.cmp(a))
        });
        v
    }
}

pub(crate) fn pow_rat(r: &Rational, k: u32) -> Rational {
    num_traits::pow::pow(r.clone(), k as usize)
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms_grlex().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !mag.is_one() || is_const {
                factors.push(mag.to_string());
            }
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(var_name(self.nvars, v)),
                    _ => factors.push(format!("{}^{k}", var_name(self.nvars, v))),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    /// Panics on a variable-count mismatch; see [`SparsePoly::checked_add`].
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> SparsePoly {
        SparsePoly::var(2, 0)
    }

    fn y() -> SparsePoly {
        SparsePoly::var(2, 1)
    }

    fn example1() -> SparsePoly {
        let xy = &x() * &y();
        let s = &x() + &y();
        &(&xy.pow(2) * &s.pow(2)) + &(&x().pow(9) + &y().pow(7))
    }

    #[test]
    fn ring_examples() {
        let p = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(p, &x().pow(2) - &y().pow(2));
        let q = &(&x() + &y()) + &(-&(&x() + &y()));
        assert!(q.is_zero());
        let sq = (&x() + &y()).pow(2);
        let expected =
            SparsePoly::from_int_terms(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn mismatched_variable_counts() {
        let a = SparsePoly::var(2, 0);
        let b = SparsePoly::var(3, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::Structural(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::Structural(_))));
    }

    #[test]
    fn weights() {
        let f = SparsePoly::from_int_terms(2, &[(&[4, 1], 1)]).unwrap();
        let w = WeightVector::new(&[2, 3]).unwrap();
        assert_eq!(f.weight(&w), Some(11));
        assert_eq!(
            example1().weight(&WeightVector::new(&[1, 1]).unwrap()),
            Some(6)
        );
        assert_eq!(SparsePoly::zero(2).weight(&w), None);
    }

    #[test]
    fn leading_terms() {
        let f = &x().pow(2) + &y().pow(3);
        let w32 = WeightVector::new(&[3, 2]).unwrap();
        assert_eq!(f.leading_term(&w32).unwrap(), f);
        let w11 = WeightVector::new(&[1, 1]).unwrap();
        assert_eq!(f.leading_term(&w11).unwrap(), x().pow(2));
        let m = x().pow(3).scale(&rat(5, 2));
        assert_eq!(m.leading_term(&w32).unwrap(), m);
        assert!(matches!(
            SparsePoly::zero(2).leading_term(&w11),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn saturation() {
        let f = &(&x().pow(2) * &y().pow(3)) * &(&x() + &y());
        let (sat, a) = f.saturate().unwrap();
        assert_eq!(sat, &x() + &y());
        assert_eq!(&a[..], &[2, 3]);
        let (sat, a) = (&x() + &y()).saturate().unwrap();
        assert_eq!(sat, &x() + &y());
        assert_eq!(&a[..], &[0, 0]);
        let (sat, a) = x().pow(9).saturate().unwrap();
        assert_eq!(sat, SparsePoly::one(2));
        assert_eq!(&a[..], &[9, 0]);
        assert!(SparsePoly::zero(2).saturate().is_err());
    }

    #[test]
    fn truncation() {
        let f = &x().pow(2) + &y().pow(3);
        assert_eq!(f.truncate(2), x().pow(2));
        assert_eq!(f.truncate(3), f);
        assert!(f.truncate(1).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let f = (&x() + &y()).pow(2);
        let step = SubstitutionStep::new(1, 0, 1, rat(-1, 1)).unwrap();
        assert_eq!(f.substitute(&step).unwrap(), y().pow(2));

        let id = SubstitutionStep::new(0, 1, 1, rat(0, 1)).unwrap();
        assert_eq!(x().substitute(&id).unwrap(), x());

        let g = &y().pow(2) + &x().pow(5);
        let step = SubstitutionStep::new(1, 0, 2, rat(1, 1)).unwrap();
        let expected = SparsePoly::from_int_terms(
            2,
            &[(&[0, 2], 1), (&[2, 1], 2), (&[4, 0], 1), (&[5, 0], 1)],
        )
        .unwrap();
        assert_eq!(g.substitute(&step).unwrap(), expected);

        assert!(SubstitutionStep::new(0, 0, 1, rat(1, 1)).is_err());
    }

    #[test]
    fn weight_vectors_are_canonical() {
        assert_eq!(WeightVector::new(&[4, 6]).unwrap().as_slice(), &[2, 3]);
        assert!(WeightVector::new(&[0, 0]).is_err());
        let w = WeightVector::from_rationals(&[rat(1, 2), rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(w.as_slice(), &[3, 3, 2]);
    }

    #[test]
    fn display_is_graded_lex() {
        let f = &(&x().pow(2) + &y().pow(3).scale(&rat(-3, 2))) + &SparsePoly::one(2);
        assert_eq!(f.to_string(), "-3/2*y^3 + x^2 + 1");
        assert_eq!(SparsePoly::zero(2).to_string(), "0");
    }

    #[test]
    fn derivatives() {
        let f = &x().pow(2) + &y().pow(3);
        assert_eq!(f.derivative(0), x().scale(&rat(2, 1)));
        assert_eq!(f.derivative(1), y().pow(2).scale(&rat(3, 1)));
    }
}
