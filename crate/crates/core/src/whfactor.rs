//! Multiplicity data of the weighted-homogeneous leading form on a facet.
//!
//! For a facet with coprime positive normal `(wx, wy)` the saturated leading
//! form factors over C as `∏ (y^wx − cᵢ x^wy)^mᵢ` with distinct nonzero `cᵢ`,
//! so the root multiplicities of its dehomogenization `sat(1, y)` are exactly
//! the `mᵢ`. A squarefree decomposition over Q gives them without ever
//! finding the roots.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::newton::{newton_polygon, Facet};
use crate::poly::{Rational, SparsePoly, SubstitutionStep, WeightVector};
use crate::univariate::{SquarefreeDecomposition, UnivariatePoly};

#[derive(Clone, Debug)]
pub struct FacetProfile {
    pub facet: Facet,
    pub w: WeightVector,
    /// `f_w`, the sum of the terms of least `w`-weight.
    pub leading: SparsePoly,
    pub saturated: SparsePoly,
    /// `(a, b)` with `f_w = x^a y^b · saturated`.
    pub sat_exponents: (u32, u32),
    /// Largest multiplicity of an irreducible factor of `saturated`; zero
    /// for normals with a zero entry and for constant saturations.
    pub max_multiplicity: u32,
    /// Decomposition of `saturated(1, y)`; `None` for zero-entry normals.
    pub squarefree_parts: Option<SquarefreeDecomposition>,
}

impl FacetProfile {
    pub fn a(&self) -> u32 {
        self.sat_exponents.0
    }

    pub fn b(&self) -> u32 {
        self.sat_exponents.1
    }

    pub fn d(&self) -> u32 {
        self.max_multiplicity
    }

    pub fn wx(&self) -> u64 {
        self.w.as_slice()[0]
    }

    pub fn wy(&self) -> u64 {
        self.w.as_slice()[1]
    }
}

/// `p(1, y)` when `var == 1`, `p(x, 1)` when `var == 0`, as a polynomial in
/// the remaining variable `var`.
fn dehomogenize(p: &SparsePoly, var: usize) -> UnivariatePoly {
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (e, c) in p.terms() {
        coeffs[e[var] as usize] += c;
    }
    UnivariatePoly::new(coeffs)
}

pub fn facet_profile(f: &SparsePoly, facet: &Facet) -> Result<FacetProfile> {
    let polygon = newton_polygon(f)?;
    if !polygon.facets().contains(facet) {
        return Err(Error::structural(
            "facet does not belong to the Newton polygon of the polynomial",
        ));
    }
    let w = facet.normal().clone();
    let leading = f.leading_term(&w)?;
    let (saturated, e) = leading.saturate()?;
    let sat_exponents = (e[0], e[1]);
    let (max_multiplicity, squarefree_parts) = if w.has_zero_entry() {
        (0, None)
    } else {
        let dec = dehomogenize(&saturated, 1).squarefree_decompose()?;
        (dec.max_multiplicity(), Some(dec))
    };
    Ok(FacetProfile {
        facet: facet.clone(),
        w,
        leading,
        saturated,
        sat_exponents,
        max_multiplicity,
        squarefree_parts,
    })
}

/// A factor `(v − c·u^k)^m` of the saturated leading form, where `v` is
/// `variable` and `u` the other coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactor {
    pub variable: usize,
    pub root: Rational,
    pub exponent: u32,
    pub multiplicity: u32,
}

impl RationalFactor {
    /// The coordinate change `v ↦ v + c·u^k` that turns the factor into `v`.
    pub fn elimination_step(&self) -> SubstitutionStep {
        SubstitutionStep::new(
            self.variable,
            1 - self.variable,
            self.exponent,
            self.root.clone(),
        )
        .expect("distinct variables and positive exponent")
    }
}

/// Rational factors `y − c·x^wy` (for `wx = 1`) or `x − c·y^wx` (for
/// `wy = 1`, `wx > 1`), most repeated first, ties by increasing `c`.
///
/// Simple factors are listed too. Empty for zero-entry normals and when
/// neither weight is one.
pub fn rational_repeated_factors(profile: &FacetProfile) -> Vec<RationalFactor> {
    let (wx, wy) = (profile.wx(), profile.wy());
    if profile.w.has_zero_entry() || (wx != 1 && wy != 1) {
        return Vec::new();
    }
    let (variable, exponent, dec) = if wx == 1 {
        (1, wy, profile.squarefree_parts.clone())
    } else {
        let dec = dehomogenize(&profile.saturated, 0)
            .squarefree_decompose()
            .ok();
        (0, wx, dec)
    };
    let Some(dec) = dec else {
        return Vec::new();
    };
    let mut out: Vec<RationalFactor> = dec
        .factors
        .iter()
        .flat_map(|sf| {
            sf.factor
                .rational_roots()
                .into_iter()
                .map(move |root| RationalFactor {
                    variable,
                    root,
                    exponent: exponent as u32,
                    multiplicity: sf.multiplicity,
                })
        })
        .collect();
    out.sort_by(|p, q| {
        q.multiplicity
            .cmp(&p.multiplicity)
            .then_with(|| p.root.cmp(&q.root))
    });
    out
}

/// Whether every compact facet has a reduced saturated leading form.
pub fn is_newton_nondegenerate(f: &SparsePoly) -> Result<bool> {
    let polygon = newton_polygon(f)?;
    if !polygon.meets_both_axes() {
        return Err(Error::domain(
            "Newton non-degeneracy needs a polygon meeting both axes",
        ));
    }
    for facet in polygon.compact_facets() {
        if facet_profile(f, facet)?.max_multiplicity > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The substitution that removes the most repeated rational factor with
/// multiplicity above `threshold`, oriented so that the factor becomes a
/// coordinate axis.
///
/// On a `(1, 1)` facet the factor `y − c·x` is turned into `y` when
/// `b ≤ a` and into `x` otherwise, which always raises the smaller of the
/// two exponents past the old multiplicity bound.
pub(crate) fn plan_step(
    profile: &FacetProfile,
    threshold: u32,
) -> std::result::Result<SubstitutionStep, Error> {
    let blocked = || Error::IrrationalFactor {
        multiplicity: profile.d(),
        wx: profile.wx(),
        wy: profile.wy(),
    };
    let factor = rational_repeated_factors(profile)
        .into_iter()
        .find(|rf| rf.multiplicity > threshold)
        .ok_or_else(blocked)?;
    if profile.wx() == 1 && profile.wy() == 1 && profile.b() > profile.a() {
        // y − c·x under x ↦ x + y/c becomes −c·x.
        return Ok(
            SubstitutionStep::new(0, 1, 1, Rational::one() / &factor.root).expect("valid step"),
        );
    }
    Ok(factor.elimination_step())
}
