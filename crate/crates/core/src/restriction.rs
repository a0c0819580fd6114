//! Restriction of a configuration to `W_B = ∩_{b in B} ker b`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::arith::{CoVec, Matrix, Rational};
use crate::configuration::{c_delta, collinear_classes, gram, Configuration};
use crate::error::{Error, Result};
use crate::veesystem::SubsystemHandle;

/// A restricted configuration together with the data to map back to the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionResult {
    pub child: Configuration,
    /// Basis `u_1..u_d` of `W_B` in parent coordinates; child coordinates of
    /// a restricted covector `a` are `(a(u_1), ..., a(u_d))`.
    pub basis: Vec<Vec<Rational>>,
    /// Parent indices merged into each child covector.
    pub provenance: Vec<Vec<usize>>,
}

/// Restricts `cfg` to the common kernel of the covectors spanning `sub`.
///
/// The caller is expected to pass a vee-system with a defined `l2`; this is
/// not rechecked here. The two hypotheses that concern the restriction itself
/// are checked: `C != 0` on the class of every spanning covector, and a
/// nondegenerate Gram form on `W_B`.
pub fn restrict(cfg: &Configuration, sub: &SubsystemHandle) -> Result<RestrictionResult> {
    let classes = collinear_classes(cfg);
    for &i in &sub.span_indices {
        let class = classes
            .iter()
            .find(|c| c.indices().any(|k| k == i))
            .expect("every index is in a class");
        let subset: Vec<usize> = class.indices().collect();
        if c_delta(cfg, &subset, class.anchor)?.is_zero() {
            return Err(Error::CDeltaZero { index: i });
        }
    }
    restrict_to_kernel(cfg, &sub.span_basis)
}

/// Restriction along the common kernel of arbitrary covectors (no class check).
pub fn restrict_to_kernel(cfg: &Configuration, kernel_of: &[CoVec]) -> Result<RestrictionResult> {
    let b = Matrix::from_rows(kernel_of.iter().map(|c| c.0.clone()).collect());
    let basis = b.nullspace();
    let d = basis.len();
    if d == 0 {
        return Err(Error::EmptyChild);
    }
    let u = Matrix::from_rows(basis.clone()).transpose();
    let g_w = u.transpose().mul(gram(cfg).matrix()).mul(&u);
    if g_w.determinant().is_zero() {
        return Err(Error::DegenerateRestrictedGram);
    }

    let mut slot: HashMap<CoVec, usize> = HashMap::new();
    let mut covs: Vec<CoVec> = Vec::new();
    let mut mults: Vec<Rational> = Vec::new();
    let mut provenance: Vec<Vec<usize>> = Vec::new();
    for (i, (a, c)) in cfg.iter().enumerate() {
        let r = CoVec(basis.iter().map(|x| a.eval(x)).collect());
        if r.is_zero() {
            continue;
        }
        match slot.get(&r) {
            Some(&k) => {
                mults[k] += c;
                provenance[k].push(i);
            }
            None => {
                slot.insert(r.clone(), covs.len());
                covs.push(r);
                mults.push(c.clone());
                provenance.push(vec![i]);
            }
        }
    }
    if covs.is_empty() {
        return Err(Error::EmptyChild);
    }
    let mut child = Configuration::new(d, covs, mults)?;
    if let Some(name) = &cfg.name {
        child.name = Some(format!("{name}|restricted"));
    }
    Ok(RestrictionResult { child, basis, provenance })
}
