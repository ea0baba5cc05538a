//! Log canonical thresholds from the Newton polygon.
//!
//! For a bivariate `f` the threshold is `1/c`, `(c, c)` being where the
//! diagonal leaves the Newton polygon, as soon as `(c, c)` is a vertex or `f`
//! is weakly normalised with respect to the facet through it. Otherwise
//! [`lct`] changes coordinates by `y ↦ y + c·x^k` or `x ↦ x + c·y^k` until
//! one of those holds, and reports a certified upper bound when it cannot.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::milnor;
use crate::newton::{distance_nd, newton_polygon, Facet};
use crate::poly::{rat, Rational, SparsePoly, SubstitutionStep, WeightVector};
use crate::whfactor::{facet_profile, plan_step, FacetProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Exact,
    UpperBoundOnly,
    Bracket,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::UpperBoundOnly => "upper-bound-only",
            Status::Bracket => "bracket",
        })
    }
}

/// Why a result holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// `(c, c)` is a vertex of the polygon.
    Corner,
    /// The diagonal facet has a normal with a zero entry.
    W1,
    /// `d ≤ max(a, b)` on the diagonal facet.
    W2,
    /// Both weights of the diagonal facet exceed one.
    W3,
    /// Every component of `V(f_w)` off the blown-up centre has multiplicity
    /// at most `c`.
    MultiplicityBound,
    OneVariable,
    /// Every compact facet is normalised (output of [`normalize`]).
    Normalised,
    /// No exactness argument applies; `1/c` is only an upper bound.
    UpperBound,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Corner => "corner",
            Clause::W1 => "W1",
            Clause::W2 => "W2",
            Clause::W3 => "W3",
            Clause::MultiplicityBound => "multiplicity-bound",
            Clause::OneVariable => "one-variable",
            Clause::Normalised => "normalised",
            Clause::UpperBound => "upper-bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTrail {
    /// The facet of `normalised` the clause refers to.
    pub facet: Option<Facet>,
    pub clause: Clause,
    pub steps: Vec<SubstitutionStep>,
    /// Degree the polynomial was truncated to after every step.
    pub truncation: Option<u64>,
    pub normalised: SparsePoly,
}

impl CertificateTrail {
    /// Applies the recorded steps (and truncations) to `original`.
    pub fn replay(&self, original: &SparsePoly) -> Result<SparsePoly> {
        let mut g = original.clone();
        for step in &self.steps {
            g = g.substitute(step)?;
            if let Some(d) = self.truncation {
                g = g.truncate(d);
            }
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LctResult {
    pub status: Status,
    /// The threshold when exact, otherwise the best upper bound `1/c` found.
    pub value: Rational,
    pub bracket: Option<(Rational, Rational)>,
    /// Diagonal distance of `certificate.normalised`.
    pub c: Rational,
    pub certificate: CertificateTrail,
    pub milnor: Option<u64>,
}

/// When the normalisation loop may truncate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// At degree `μ + 1` if the singularity is isolated, never otherwise.
    Auto,
    Never,
    Degree(u64),
}

#[derive(Clone, Debug)]
pub struct LctOptions {
    pub max_iter: usize,
    /// Degree of the truncation used to bracket results that are not exact.
    pub bracket_degree: Option<u64>,
    pub truncation: Truncation,
    pub milnor_step_limit: u64,
    /// Report the Milnor number even when normalisation did not need it.
    pub with_milnor: bool,
}

impl Default for LctOptions {
    fn default() -> Self {
        LctOptions {
            max_iter: 64,
            bracket_degree: None,
            truncation: Truncation::Auto,
            milnor_step_limit: milnor::DEFAULT_STEP_LIMIT,
            with_milnor: false,
        }
    }
}

/// Polynomials larger than this stop the substitution loops.
const MAX_TERMS: usize = 5_000;

/// A provisional degree is doubled at most this many times.
const MAX_WIDENINGS: u32 = 4;

/// Resolves the truncation degree lazily: the Milnor number is only
/// computed once a substitution is actually needed.
///
/// Under `Auto` an isolated singularity is truncated at `μ + 1`, which is
/// safe by finite determinacy. Otherwise, if `provisional` is allowed, the
/// degree is a guess and `verify` is set: every facet read off a truncated
/// polynomial must pass [`survives_truncation`], or the caller widens and
/// starts over.
struct Truncator {
    policy: Truncation,
    step_limit: u64,
    provisional: bool,
    resolved: Option<Option<u64>>,
    verify: bool,
    widenings: u32,
    milnor: Option<u64>,
}

impl Truncator {
    fn new(policy: Truncation, step_limit: u64, provisional: bool) -> Self {
        Truncator {
            policy,
            step_limit,
            provisional,
            resolved: None,
            verify: false,
            widenings: 0,
            milnor: None,
        }
    }

    fn degree(&mut self, original: &SparsePoly) -> Option<u64> {
        if let Some(d) = self.resolved {
            return d;
        }
        let d = match self.policy {
            Truncation::Never => None,
            Truncation::Degree(d) => Some(d),
            Truncation::Auto => {
                self.milnor = self
                    .milnor
                    .or_else(|| milnor::milnor_number_with_limit(original, self.step_limit).ok());
                match self.milnor {
                    Some(mu) => Some(mu + 1),
                    None if self.provisional => {
                        self.verify = true;
                        Some(2 * original.total_degree().unwrap_or(0) + 2)
                    }
                    None => None,
                }
            }
        };
        self.resolved = Some(d);
        d
    }

    /// Doubles a provisional degree, or gives up truncating.
    fn widen(&mut self) {
        match self.resolved {
            Some(Some(d)) if self.widenings < MAX_WIDENINGS => {
                self.widenings += 1;
                self.resolved = Some(Some(2 * d));
            }
            _ => {
                self.resolved = Some(None);
                self.verify = false;
            }
        }
    }
}

/// Whether `facet` of a polynomial truncated at degree `d` is also a facet,
/// with the same terms on it, of the untruncated one.
///
/// Substitutions `x_t ↦ x_t + c·x_s^k` with `k ≥ 1` never lower the total
/// degree of a term, so everything dropped has degree above `d` and weight
/// above `min(w)·d`. If that is at least the facet constant, the dropped
/// terms lie strictly on the far side of the facet's supporting line.
fn survives_truncation(facet: &Facet, d: u64) -> bool {
    let m = facet.wx().min(facet.wy()) as u128;
    m > 0 && m * (d as u128 + 1) > facet.constant()
}

fn check_germ(f: &SparsePoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::domain("the zero polynomial has no threshold"));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::domain(
            "the polynomial does not vanish at the origin",
        ));
    }
    Ok(())
}

fn check_plane_germ(f: &SparsePoly) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::structural(format!(
            "expected two variables, got {}",
            f.nvars()
        )));
    }
    check_germ(f)
}

fn weak_clause(p: &FacetProfile) -> Option<Clause> {
    if p.w.has_zero_entry() {
        Some(Clause::W1)
    } else if p.d() <= p.a().max(p.b()) {
        Some(Clause::W2)
    } else if p.wx() > 1 && p.wy() > 1 {
        Some(Clause::W3)
    } else {
        None
    }
}

/// The multiplicity bound of the clause N2, N3 or N4 that applies, or
/// `None` under N1 and N5, which hold unconditionally.
fn normal_threshold(p: &FacetProfile) -> Option<u32> {
    match (p.wx(), p.wy()) {
        (0, _) | (_, 0) => None,
        (1, 1) => Some(p.a().min(p.b())),
        (1, _) => Some(p.b()),
        (_, 1) => Some(p.a()),
        _ => None,
    }
}

fn certificate_holds(p: &FacetProfile, c: &Rational) -> bool {
    let a = if p.wy() > 0 { p.a() } else { 0 };
    let b = if p.wx() > 0 { p.b() } else { 0 };
    let m = a.max(b).max(p.d());
    Rational::from_integer(m.into()) <= *c
}

/// Clauses W1–W3 on `facet`.
pub fn is_weakly_normalised(f: &SparsePoly, facet: &Facet) -> Result<bool> {
    Ok(weak_clause(&facet_profile(f, facet)?).is_some())
}

/// Clauses N1–N5 on `facet`.
pub fn is_normalised(f: &SparsePoly, facet: &Facet) -> Result<bool> {
    let p = facet_profile(f, facet)?;
    Ok(normal_threshold(&p).is_none_or(|t| p.d() <= t))
}

/// Whether `max(a·[V(x) ⊄ C], b·[V(y) ⊄ C], d) ≤ c` on `facet`, where `C`
/// is the centre `V(x_i : w_i > 0)` and `c` the diagonal value of the facet.
/// On the diagonal facet this certifies `lct = 1/c`.
pub fn equality_certificate_2d(f: &SparsePoly, facet: &Facet) -> Result<bool> {
    let p = facet_profile(f, facet)?;
    Ok(certificate_holds(&p, &facet.diagonal_value()))
}

/// Changes coordinates until every compact facet is normalised.
///
/// With `trunc_degree = None` the polynomial is truncated at `μ + 1` after
/// each substitution when the singularity is isolated, and kept exact
/// otherwise.
pub fn normalize(
    f: &SparsePoly,
    max_iter: usize,
    trunc_degree: Option<u64>,
) -> Result<(SparsePoly, CertificateTrail)> {
    let policy = match trunc_degree {
        Some(d) => Truncation::Degree(d),
        None => Truncation::Auto,
    };
    normalize_with(f, max_iter, policy, milnor::DEFAULT_STEP_LIMIT)
}

pub fn normalize_with(
    f: &SparsePoly,
    max_iter: usize,
    truncation: Truncation,
    milnor_step_limit: u64,
) -> Result<(SparsePoly, CertificateTrail)> {
    check_plane_germ(f)?;
    let mut trunc = Truncator::new(truncation, milnor_step_limit, false);
    let mut g = f.clone();
    let mut steps = Vec::new();
    for iter in 0..=max_iter {
        let polygon = newton_polygon(&g)?;
        let mut worst: Option<(FacetProfile, u32)> = None;
        for facet in polygon.compact_facets() {
            let p = facet_profile(&g, facet)?;
            let Some(t) = normal_threshold(&p) else {
                continue;
            };
            if p.d() <= t {
                continue;
            }
            let key = |p: &FacetProfile| (p.wx().max(p.wy()), p.wx());
            if worst.as_ref().is_none_or(|(q, _)| key(&p) < key(q)) {
                worst = Some((p, t));
            }
        }
        let Some((profile, threshold)) = worst else {
            let trail = CertificateTrail {
                facet: None,
                clause: Clause::Normalised,
                steps,
                truncation: trunc.resolved.flatten(),
                normalised: g.clone(),
            };
            return Ok((g, trail));
        };
        if iter == max_iter || g.len() > MAX_TERMS {
            return Err(Error::IterationCap(iter));
        }
        let step = plan_step(&profile, threshold)?;
        let d = trunc.degree(f);
        g = apply(&g, &step, d)?;
        steps.push(step);
    }
    unreachable!("the loop returns by its last iteration")
}

fn apply(g: &SparsePoly, step: &SubstitutionStep, trunc: Option<u64>) -> Result<SparsePoly> {
    let mut h = g.substitute(step)?;
    if let Some(d) = trunc {
        h = h.truncate(d);
    }
    if h.is_zero() {
        return Err(Error::Inconclusive(
            "truncation removed every term; the degree is too low".into(),
        ));
    }
    Ok(h)
}

pub fn lct(f: &SparsePoly, opts: &LctOptions) -> Result<LctResult> {
    check_germ(f)?;
    match f.nvars() {
        1 => Ok(lct_one_variable(f)),
        2 => lct_plane(f, opts),
        _ => {
            let c = distance_nd(f)?;
            Ok(LctResult {
                status: Status::UpperBoundOnly,
                value: c.recip(),
                bracket: None,
                c,
                certificate: CertificateTrail {
                    facet: None,
                    clause: Clause::UpperBound,
                    steps: Vec::new(),
                    truncation: None,
                    normalised: f.clone(),
                },
                milnor: None,
            })
        }
    }
}

fn lct_one_variable(f: &SparsePoly) -> LctResult {
    let ord = f.order().expect("nonzero");
    let c = Rational::from_integer(ord.into());
    LctResult {
        status: Status::Exact,
        value: c.recip(),
        bracket: None,
        c,
        certificate: CertificateTrail {
            facet: None,
            clause: Clause::OneVariable,
            steps: Vec::new(),
            truncation: None,
            normalised: f.clone(),
        },
        milnor: None,
    }
}

/// Outcome of one run of the focused loop.
enum Pass {
    Exact(Box<LctResult>),
    /// Largest `c` seen, with the steps and polynomial it came from.
    Bound(Rational, Vec<SubstitutionStep>, SparsePoly, Facet),
}

/// `g(x, y) ↦ g(y, −x)` as three shears.
fn rotation() -> Vec<SubstitutionStep> {
    let s = |t, src, c| SubstitutionStep::new(t, src, 1, rat(c, 1)).expect("distinct variables");
    vec![s(0, 1, 1), s(1, 0, -1), s(0, 1, 1)]
}

/// Which of the two variables a substitution loop eliminates first depends on
/// the orientation, and one orientation may need an infinite series where the
/// other needs finitely many steps. A pass that certifies nothing is retried
/// on the rotated polynomial; both give valid bounds.
fn lct_plane(f: &SparsePoly, opts: &LctOptions) -> Result<LctResult> {
    let mut trunc = Truncator::new(opts.truncation, opts.milnor_step_limit, true);
    if opts.with_milnor {
        trunc.milnor = milnor::milnor_number_with_limit(f, opts.milnor_step_limit).ok();
    }
    let first = focused_pass(f, &[], opts, &mut trunc)?;
    let (c, steps, normalised, facet) = match first {
        Pass::Exact(r) => return Ok(*r),
        Pass::Bound(c, steps, g, facet) => match focused_pass(f, &rotation(), opts, &mut trunc)? {
            Pass::Exact(r) => return Ok(*r),
            Pass::Bound(c2, steps2, g2, facet2) if c2 > c => (c2, steps2, g2, facet2),
            Pass::Bound(..) => (c, steps, g, facet),
        },
    };
    let value = c.recip();
    let bracket = match opts.bracket_degree {
        Some(d) => {
            let inner = LctOptions {
                bracket_degree: None,
                with_milnor: false,
                ..opts.clone()
            };
            lct_bracket_with(f, d, &inner)
                .ok()
                .map(|(lo, hi)| (lo, if hi > value { value.clone() } else { hi }))
        }
        None => None,
    };
    Ok(LctResult {
        status: if bracket.is_some() {
            Status::Bracket
        } else {
            Status::UpperBoundOnly
        },
        value,
        bracket,
        c,
        certificate: CertificateTrail {
            facet: Some(facet),
            clause: Clause::UpperBound,
            steps,
            truncation: trunc.resolved.flatten(),
            normalised,
        },
        milnor: trunc.milnor,
    })
}

/// Substitutes on the diagonal facet until a clause certifies `1/c`, after
/// applying `prefix` to `f`. Restarts with a wider truncation whenever a
/// provisional one cannot be trusted.
fn focused_pass(
    f: &SparsePoly,
    prefix: &[SubstitutionStep],
    opts: &LctOptions,
    trunc: &mut Truncator,
) -> Result<Pass> {
    'attempt: loop {
        let mut g = f.clone();
        let mut steps: Vec<SubstitutionStep> = Vec::new();
        for step in prefix {
            g = apply(&g, step, trunc.degree(f))?;
            steps.push(step.clone());
        }
        let mut best: Option<(Rational, usize, SparsePoly, Facet)> = None;
        for iter in 0..=opts.max_iter {
            let polygon = newton_polygon(&g)?;
            let diag = polygon.diagonal();
            let facet = diag.facet().clone();
            if trunc.verify && !steps.is_empty() {
                let d = trunc.degree(f).expect("provisional degrees are finite");
                if !survives_truncation(&facet, d) {
                    trunc.widen();
                    continue 'attempt;
                }
            }
            let clause = if diag.is_corner {
                Clause::Corner
            } else {
                let profile = facet_profile(&g, &facet)?;
                let clause = weak_clause(&profile).or_else(|| {
                    certificate_holds(&profile, &diag.c).then_some(Clause::MultiplicityBound)
                });
                match clause {
                    Some(clause) => clause,
                    None => {
                        if best.as_ref().is_none_or(|(c, ..)| diag.c > *c) {
                            best = Some((diag.c.clone(), steps.len(), g.clone(), facet));
                        }
                        let threshold = profile.a().max(profile.b());
                        if iter == opts.max_iter || g.len() > MAX_TERMS {
                            break;
                        }
                        let Ok(step) = plan_step(&profile, threshold) else {
                            break;
                        };
                        g = apply(&g, &step, trunc.degree(f))?;
                        steps.push(step);
                        continue;
                    }
                }
            };
            return Ok(Pass::Exact(Box::new(LctResult {
                status: Status::Exact,
                value: diag.c.recip(),
                bracket: None,
                c: diag.c,
                certificate: CertificateTrail {
                    facet: Some(facet),
                    clause,
                    steps,
                    truncation: trunc.resolved.flatten(),
                    normalised: g,
                },
                milnor: trunc.milnor,
            })));
        }
        let (c, n, g, facet) = best.expect("recorded before leaving the loop");
        steps.truncate(n);
        return Ok(Pass::Bound(c, steps, g, facet));
    }
}

/// `Σw / wt_w(f)`, an upper bound for the threshold.
pub fn weight_bound(f: &SparsePoly, w: &WeightVector) -> Result<Rational> {
    if w.len() != f.nvars() {
        return Err(Error::structural("weight vector length mismatch"));
    }
    let wt = f
        .weight(w)
        .ok_or_else(|| Error::domain("weight of the zero polynomial"))?;
    if wt == 0 {
        return Err(Error::domain("the polynomial has weight zero"));
    }
    Ok(Rational::new(w.sum().into(), wt.into()))
}

/// `1 + λ·wt_w(f) − Σw`, the log discrepancy of the exceptional divisor of
/// the `w`-weighted blowup.
pub fn discrepancy(lambda: &Rational, w: &WeightVector, f: &SparsePoly) -> Result<Rational> {
    if w.len() != f.nvars() {
        return Err(Error::structural("weight vector length mismatch"));
    }
    let wt = f
        .weight(w)
        .ok_or_else(|| Error::domain("weight of the zero polynomial"))?;
    Ok(Rational::one() + lambda * Rational::from_integer(wt.into())
        - Rational::from_integer(w.sum().into()))
}

/// Interval around the exact threshold of `f_{≤d}` of half-width `n/(d+1)`,
/// clipped to `[0, 1]`.
pub fn lct_bracket(f: &SparsePoly, d: u64) -> Result<(Rational, Rational)> {
    lct_bracket_with(f, d, &LctOptions::default())
}

pub fn lct_bracket_with(f: &SparsePoly, d: u64, opts: &LctOptions) -> Result<(Rational, Rational)> {
    check_germ(f)?;
    let t = f.truncate(d);
    if t.is_zero() {
        return Err(Error::domain(format!(
            "the truncation to degree {d} is zero"
        )));
    }
    let inner = LctOptions {
        bracket_degree: None,
        ..opts.clone()
    };
    let r = lct(&t, &inner)?;
    if r.status != Status::Exact {
        return Err(Error::Inconclusive(format!(
            "the threshold of the degree-{d} truncation is not known exactly"
        )));
    }
    let half = Rational::new((f.nvars() as u64).into(), (d + 1).into());
    let mut lo = &r.value - &half;
    if lo.is_negative() {
        lo = Rational::zero();
    }
    let hi = (&r.value + &half).min(Rational::one());
    Ok((lo, hi))
}

/// Threshold of `(∏ x_i^{a_i})·(Σ x_i^{b_i})` in closed form:
/// `min(1, (Σ 1/b_i)/(1 + Σ a_i/b_i), 1/a_j for a_j > 0)`.
pub fn lct_product_sum(a: &[u64], b: &[u64]) -> Result<Rational> {
    if a.len() != b.len() {
        return Err(Error::domain("exponent lists differ in length"));
    }
    if a.len() < 2 {
        return Err(Error::domain(
            "the closed form needs at least two variables",
        ));
    }
    if b.contains(&0) {
        return Err(Error::domain("the exponents b_i must be positive"));
    }
    let inv_b: Rational = b.iter().map(|&bi| Rational::new(1.into(), bi.into())).sum();
    let a_over_b: Rational = a
        .iter()
        .zip(b)
        .map(|(&ai, &bi)| Rational::new(ai.into(), bi.into()))
        .sum();
    let mut best = Rational::one().min(inv_b / (Rational::one() + a_over_b));
    for &ai in a.iter().filter(|&&ai| ai > 0) {
        best = best.min(Rational::new(1.into(), ai.into()));
    }
    Ok(best)
}
