//! The constants `gamma` and `gamma~` of the alternative (highest-root)
//! normalization of root system prepotentials.
//!
//! `gamma~^2 = -(1/8)(a_0 <t,t> + sum a_i n_i^2 <a_i,a_i>)` with per-family
//! tables `a_i`, and the direct route `gamma^2 = -4 h^3 / l2` where the Gram
//! form equals `h` times the invariant inner product.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{Family, RootData};
use crate::arith::{rat, Rational};
use crate::configuration::{Configuration, Duality};
use crate::error::{Error, Result};
use crate::veesystem::lambda_sq;

/// Multiplicities of a reduced root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaMult {
    Constant(Rational),
    /// `p` on short roots, `q` on long roots.
    ShortLong { p: Rational, q: Rational },
}

impl GammaMult {
    fn short_long(&self) -> (Rational, Rational) {
        match self {
            GammaMult::Constant(t) => (t.clone(), t.clone()),
            GammaMult::ShortLong { p, q } => (p.clone(), q.clone()),
        }
    }
}

/// `(a_0, [a_1..a_N])` for the supported families.
fn a_table(rd: &RootData, mult: &GammaMult) -> Result<(Rational, Vec<Rational>)> {
    let (p, q) = mult.short_long();
    let n = rd.rank;
    let pq = &p * &q;
    if rd.is_simply_laced() {
        if p != q {
            return Err(Error::NoATable(format!("{} with two multiplicities", rd.family)));
        }
        let t2 = &p * &p;
        return Ok((t2.clone(), vec![t2; n]));
    }
    match rd.family {
        Family::B | Family::C => {
            let middle = if rd.family == Family::B { &q * &q } else { &p * &p };
            let a = (1..=n).map(|i| if i == 1 || i == n { pq.clone() } else { middle.clone() }).collect();
            Ok((pq, a))
        }
        Family::F4 => Ok((pq.clone(), vec![&p * &p, pq.clone(), &q * &q, pq])),
        Family::G2 => Ok((&p * &p, vec![pq, &q * &q])),
        other => Err(Error::NoATable(other.to_string())),
    }
}

/// Highest-root formula.
pub fn gamma_tilde_sq(rd: &RootData, mult: &GammaMult) -> Result<Rational> {
    let (a0, a) = a_table(rd, mult)?;
    let mut acc = &a0 * &rd.theta_norm;
    for ((ai, ni), norm) in a.iter().zip(&rd.highest).zip(&rd.simple_norms) {
        acc += ai * rat(ni * ni) * norm;
    }
    Ok(-acc / rat(8))
}

/// Dual-root formula, `-(<t,t>^2 / 32)(a_0 <t',t'> + sum nbar_i^2 a_i <a_i',a_i'>)`
/// with `b' = 2b/<b,b>` and `nbar_i = n_i <a_i,a_i> / <t,t>`.
pub fn gamma_tilde_sq_dual(rd: &RootData, mult: &GammaMult) -> Result<Rational> {
    let (a0, a) = a_table(rd, mult)?;
    let dual_norm = |x: &Rational| rat(4) / x;
    let theta = &rd.theta_norm;
    let mut acc = &a0 * dual_norm(theta);
    for ((ai, ni), norm) in a.iter().zip(&rd.highest).zip(&rd.simple_norms) {
        let nbar = rat(*ni) * norm / theta;
        acc += &nbar * &nbar * ai * dual_norm(norm);
    }
    Ok(-(theta * theta) / rat(32) * acc)
}

/// `h` in `G = h <.,.>`, via `h = (1/N) sum c_a <a,a>`, with the norms
/// identified by matching the values `a(a^vee)` (proportional to `<a,a>`)
/// against the census of `rd`.
pub fn gram_factor(cfg: &Configuration, rd: &RootData) -> Result<Rational> {
    let duality = Duality::new(cfg)?;
    let mut groups: BTreeMap<Rational, (usize, Rational)> = BTreeMap::new();
    for (a, c) in cfg.iter() {
        let k = duality.inner(a, a);
        let e = groups.entry(k).or_insert((0, Rational::zero()));
        e.0 += 1;
        e.1 += c;
    }
    let mismatch = || Error::InvalidConfig(format!("configuration does not match the {} census", rd.family));
    if groups.len() != rd.census.len() {
        return Err(mismatch());
    }
    // `a(a^vee) = <a,a> / h`, so ordering by absolute value matches the
    // census order whatever the sign of `h`.
    let mut groups: Vec<(Rational, (usize, Rational))> = groups.into_iter().collect();
    groups.sort_by_key(|g| g.0.abs());
    let base = groups.first().map(|g| g.0.clone()).ok_or_else(mismatch)?;
    let mut total = Rational::zero();
    for ((k, (count, csum)), entry) in groups.iter().zip(&rd.census) {
        if *count != entry.count || k / &base != &entry.norm / &rd.census[0].norm {
            return Err(mismatch());
        }
        total += csum * &entry.norm;
    }
    Ok(total / rat(cfg.dim() as i64))
}

/// `gamma^2 = -4 h^3 / l2` for a positive half with invariant multiplicities.
pub fn gamma_sq_direct(cfg: &Configuration, rd: &RootData) -> Result<Rational> {
    let h = gram_factor(cfg, rd)?;
    let l2 = lambda_sq(cfg)?;
    if l2.is_zero() {
        return Err(Error::DegenerateParams("l2 vanishes".into()));
    }
    Ok(-rat(4) * &h * &h * &h / l2)
}
