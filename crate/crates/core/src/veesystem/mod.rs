//! The vee-condition: for every covector `a` and every `a`-series `S`,
//! `sum_{b in S} c_b a(b^vee) a ^ b = 0`.
//!
//! Inside a series all `a ^ b` agree up to sign (see [`crate::series`]), so
//! the condition reduces to one signed scalar sum per series.

mod forms;
mod subsystem;

pub use forms::{g1, g2, g2_over, lambda_sq, lambda_sq_from};
pub use subsystem::{m_operator, subsystem, EigenDecomposition, SubsystemHandle};

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{format_rational, CoVec, Matrix, Rational};
use crate::configuration::{
    c_delta, collinear_classes, normalize_positive, powers, search_functional, Configuration, Duality,
    Functional,
};
use crate::error::{Error, Result};
use crate::series::{alpha_series_with, SeriesMode};

/// Residual of one `(a, series)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesResidual {
    pub alpha: usize,
    pub members: Vec<usize>,
    #[serde(serialize_with = "ser_rat")]
    pub residual: Rational,
}

/// A subset of a collinearity class on which `C = sum c k^2` vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CDeltaWarning {
    pub anchor: usize,
    pub subset: Vec<usize>,
}

/// Outcome of [`vee_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeeReport {
    pub is_vee: bool,
    pub series: Vec<SeriesResidual>,
    pub c_delta_warnings: Vec<CDeltaWarning>,
    #[serde(serialize_with = "ser_opt_rat")]
    pub lambda_sq: Option<Rational>,
    pub proportionality_ok: bool,
    pub g2_zero: bool,
    pub g2_positive_independent: bool,
    /// Covectors dropped by positive normalization (merged multiplicity 0).
    pub zero_multiplicity_dropped: Vec<CoVec>,
}

impl VeeReport {
    pub fn failing_series(&self) -> impl Iterator<Item = &SeriesResidual> {
        self.series.iter().filter(|s| !s.residual.is_zero())
    }

    /// Both sides of the correspondence with WDVV hold. In dimension one both
    /// forms vanish and any coupling works.
    pub fn passes(&self) -> bool {
        self.is_vee && self.proportionality_ok
    }
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn ser_opt_rat<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

/// Options for [`vee_check_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct VeeOptions {
    pub mode: SeriesMode,
    /// Skip the positive-system independence probe of `G2`.
    pub skip_independence_probe: bool,
}

/// Pairwise values `a(b^vee)` for all covectors.
pub fn pairing_matrix(cfg: &Configuration, duality: &Duality) -> Matrix {
    let duals: Vec<Vec<Rational>> = cfg.covectors().iter().map(|a| duality.dual(a)).collect();
    let n = cfg.len();
    let mut k = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = cfg.covector(i).eval(&duals[j]);
            k[(j, i)] = v.clone();
            k[(i, j)] = v;
        }
    }
    k
}

/// Checks the vee-condition, computes `l2` and records the hypotheses
/// (vanishing `C` on class subsets) under which the two agree with WDVV.
pub fn vee_check(cfg: &Configuration) -> Result<VeeReport> {
    vee_check_with(cfg, VeeOptions::default())
}

pub fn vee_check_with(cfg: &Configuration, opts: VeeOptions) -> Result<VeeReport> {
    let duality = Duality::new(cfg)?;
    let k = pairing_matrix(cfg, &duality);

    let mut series = Vec::new();
    for alpha in 0..cfg.len() {
        let dec = alpha_series_with(cfg, alpha, opts.mode);
        for s in dec.series {
            let mut acc = Rational::zero();
            for (&b, &sign) in s.members.iter().zip(&s.signs) {
                let term = cfg.multiplicity(b) * &k[(alpha, b)];
                if sign > 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            series.push(SeriesResidual { alpha, members: s.members, residual: acc });
        }
    }
    let is_vee = series.iter().all(|s| s.residual.is_zero());

    let c_delta_warnings = c_delta_zero_subsets(cfg);

    let normalized = normalize_positive(cfg, &Functional::Auto)?;
    let form1 = g1(cfg);
    let form2 = g2_over(&normalized.config)?;
    let g2_zero = form2.is_zero();
    let ratio = lambda_sq_from(&form1, &form2);
    let proportionality_ok = match &ratio {
        Ok(_) => true,
        Err(Error::ZeroG2) => form1.is_zero(),
        Err(_) => false,
    };
    let lambda_sq = ratio.ok();

    let g2_positive_independent = if opts.skip_independence_probe {
        true
    } else {
        independence_probe(cfg, &form2)?
    };

    Ok(VeeReport {
        is_vee,
        series,
        c_delta_warnings,
        lambda_sq,
        proportionality_ok,
        g2_zero,
        g2_positive_independent,
        zero_multiplicity_dropped: normalized.dropped_zero,
    })
}

/// Every nonempty subset of a collinearity class with `sum c k^2 = 0`.
/// Classes larger than 16 members are scanned only as a whole.
pub fn c_delta_zero_subsets(cfg: &Configuration) -> Vec<CDeltaWarning> {
    let mut out = Vec::new();
    for class in collinear_classes(cfg) {
        let idx: Vec<usize> = class.indices().collect();
        let subsets: Box<dyn Iterator<Item = Vec<usize>>> = if idx.len() <= 16 {
            Box::new((1u32..(1 << idx.len())).map(|mask| {
                idx.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect()
            }))
        } else {
            Box::new(std::iter::once(idx.clone()))
        };
        for subset in subsets {
            let c = c_delta(cfg, &subset, class.anchor).expect("subset of one class");
            if c.is_zero() {
                out.push(CDeltaWarning { anchor: class.anchor, subset });
            }
        }
    }
    out
}

/// Recomputes `G2` over the positive halves cut out by two other generic
/// functionals (coordinates reversed, and alternating signs) and compares
/// with `reference`.
fn independence_probe(cfg: &Configuration, reference: &crate::wedge::WedgeForm) -> Result<bool> {
    let n = cfg.dim();
    let reversed = search_functional(cfg, |e| powers(e, n).into_iter().rev().collect())?;
    let alternating = search_functional(cfg, |e| {
        powers(e, n).into_iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x }).collect()
    })?;
    for f in [reversed, alternating] {
        if &g2_with(cfg, &Functional::Given(f))? != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `G2` over the positive half selected by `functional`.
pub fn g2_with(cfg: &Configuration, functional: &Functional) -> Result<crate::wedge::WedgeForm> {
    g2_over(&normalize_positive(cfg, functional)?.config)
}
