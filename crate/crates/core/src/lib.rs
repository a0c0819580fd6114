//! Exact construction and verification of trigonometric vee-systems.
//!
//! A configuration is a finite list of covectors with rational
//! multiplicities. It defines a trigonometric solution of the WDVV equations
//! exactly when it satisfies the vee-condition (checked series by series) and
//! two canonical forms on the exterior square are proportional; the
//! proportionality constant is `l2 / 4`. This crate checks both sides exactly
//! over the rationals, generates the standard families, restricts
//! configurations to intersections of hyperplanes, and verifies the WDVV
//! equations independently in floating point.

pub mod arith;
pub mod catalog;
pub mod configuration;
pub mod equivalence;
pub mod error;
pub mod families;
pub mod io;
pub mod restriction;
pub mod series;
pub mod veesystem;
pub mod wdvv;
pub mod wedge;

pub use arith::{frac, invert, parse_rational, rat, CoVec, Matrix, Rational, SymMat};
pub use configuration::{
    c_delta, collinear_classes, dual, gram, normalize_positive, CollinearClass, Configuration,
    Functional,
};
pub use error::{Error, Result};
pub use restriction::{restrict, RestrictionResult};
pub use series::{alpha_series, SeriesDecomposition};
pub use veesystem::{g1, g2, lambda_sq, m_operator, subsystem, vee_check, VeeReport};
pub use wedge::{wedge_eval, wedge_square, WedgeForm, WedgeIndex};
