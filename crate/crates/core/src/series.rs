//! alpha-series: the classes of the relation `g1 + g2 = m a` or
//! `g1 - g2 = m a` (integer `m`) on the covectors not collinear with `a`.
//!
//! Writing `g = t a + r` with `r` vanishing on a fixed pivot coordinate of
//! `a`, and flipping the sign of `(r, t)` so that `r` has a positive leading
//! entry, the relation holds exactly when the normalized `r` agree and the
//! normalized `t` differ by an integer. The relation is thus already an
//! equivalence and grouping by the key `(r, frac(t))` yields the series.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::arith::{CoVec, Rational};
use crate::configuration::Configuration;

/// How the multiple `m` in the series relation is constrained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SeriesMode {
    /// `m` must be an integer (relative to `a` itself).
    #[default]
    Integral,
    /// Any rational `m`; exploration only.
    Rational,
}

/// One series together with the orientation of each member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    /// Covector indices, increasing.
    pub members: Vec<usize>,
    /// `signs[k] = +1` if `a ^ g_k` equals `a ^ g_0` times a positive
    /// number, `-1` otherwise (`a ^ g_k = signs[k] * |..| a ^ r`).
    pub signs: Vec<i8>,
}

/// Partition of the non-collinear covectors into `a`-series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesDecomposition {
    pub alpha: usize,
    /// Ordered by smallest member.
    pub series: Vec<Series>,
    /// Indices collinear with `a` (including `a`).
    pub collinear: Vec<usize>,
}

impl SeriesDecomposition {
    pub fn index_sets(&self) -> Vec<Vec<usize>> {
        self.series.iter().map(|s| s.members.clone()).collect()
    }
}

#[derive(Debug)]
pub(crate) struct SeriesKey {
    /// Normalized transverse part; `None` when collinear with `a`.
    pub r: Option<CoVec>,
    pub t: Rational,
    pub sign: i8,
}

pub(crate) fn series_key(alpha: &CoVec, pivot: usize, gamma: &CoVec) -> SeriesKey {
    let t = &gamma.0[pivot] / &alpha.0[pivot];
    let r = gamma.sub(&alpha.scale(&t));
    if r.is_zero() {
        return SeriesKey { r: None, t, sign: 1 };
    }
    let lead = r.0.iter().find(|x| !x.is_zero()).expect("nonzero");
    if lead.is_negative() {
        SeriesKey { r: Some(r.neg()), t: -t, sign: -1 }
    } else {
        SeriesKey { r: Some(r), t, sign: 1 }
    }
}

fn frac_part(t: &Rational) -> Rational {
    t - t.floor()
}

/// The `a`-series decomposition for `a = covector[alpha]`.
pub fn alpha_series(cfg: &Configuration, alpha: usize) -> SeriesDecomposition {
    alpha_series_with(cfg, alpha, SeriesMode::Integral)
}

pub fn alpha_series_with(cfg: &Configuration, alpha: usize, mode: SeriesMode) -> SeriesDecomposition {
    let a = cfg.covector(alpha);
    let pivot = a.0.iter().position(|x| !x.is_zero()).expect("covectors are nonzero");
    let mut slot: HashMap<(CoVec, Rational), usize> = HashMap::new();
    let mut series: Vec<Series> = Vec::new();
    let mut collinear = Vec::new();
    for (i, g) in cfg.covectors().iter().enumerate() {
        let key = series_key(a, pivot, g);
        let Some(r) = key.r else {
            collinear.push(i);
            continue;
        };
        let tkey = match mode {
            SeriesMode::Integral => frac_part(&key.t),
            SeriesMode::Rational => Rational::zero(),
        };
        let k = (r, tkey);
        match slot.get(&k) {
            Some(&s) => {
                series[s].members.push(i);
                series[s].signs.push(key.sign);
            }
            None => {
                slot.insert(k, series.len());
                series.push(Series { members: vec![i], signs: vec![key.sign] });
            }
        }
    }
    // Orient each series relative to its first member.
    for s in &mut series {
        let s0 = s.signs[0];
        for x in &mut s.signs {
            *x *= s0;
        }
    }
    SeriesDecomposition { alpha, series, collinear }
}

/// `true` when `g1 + g2` or `g1 - g2` is an integer multiple of `a` (including 0).
pub fn related(a: &CoVec, g1: &CoVec, g2: &CoVec) -> bool {
    let is_int_multiple = |v: &CoVec| v.is_zero() || v.ratio_to(a).is_some_and(|m| m.is_integer());
    is_int_multiple(&g1.add(g2)) || is_int_multiple(&g1.sub(g2))
}
