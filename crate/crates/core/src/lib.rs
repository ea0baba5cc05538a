//! Exact log canonical thresholds of plane curve germs.
//!
//! Everything here works over the rationals with arbitrary precision. The
//! pipeline is: build a [`SparsePoly`], read its Newton polygon
//! ([`newton`]), profile the weighted-homogeneous leading forms of its facets
//! ([`whfactor`]), then let [`engine`] decide whether `1/c` is the exact
//! threshold, change coordinates until it is, or fall back to a certified
//! upper bound and truncation bracket.
//!
//! ```
//! use lctkit::{engine, parse::parse};
//! use num_rational::BigRational;
//!
//! let f = parse("x^2*y^2*(x+y)^2 + x^9 + y^7").unwrap();
//! let r = engine::lct(&f, &engine::LctOptions::default()).unwrap();
//! assert_eq!(r.value, BigRational::new(1.into(), 3.into()));
//! ```

pub mod engine;
pub mod error;
pub mod milnor;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod simplex;
pub mod univariate;
pub mod whfactor;

pub use error::{Error, Result};
pub use poly::{ExponentVector, Rational, SparsePoly, SubstitutionStep, WeightVector};
