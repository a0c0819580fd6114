//! Enumeration of restrictions of a configuration to the flats of its
//! hyperplane arrangement, up to the reflection symmetries of the
//! configuration.
//!
//! A flat of rank `k` is a subspace of `V*` spanned by covectors, recorded by
//! its member set `A ∩ span`. Flats of rank `k + 1` are reached from one
//! representative of each orbit of rank `k`; orbits are closed under the
//! reflections `s_a` that permute the configuration (up to sign) preserving
//! multiplicities.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{CoVec, Matrix, Rational};
use crate::configuration::{normalize_positive, Configuration, Duality, Functional};
use crate::equivalence::{invariant_digest, linear_equivalence};
use crate::error::Result;
use crate::io::config_to_value;
use crate::restriction::restrict;
use crate::veesystem::{lambda_sq, subsystem, vee_check};

type Flat = Vec<usize>;

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    /// Label of the parent configuration.
    pub source: String,
    /// Rank of the flat, i.e. the codimension of the child.
    pub corank: usize,
    /// Parent covectors spanning the flat.
    pub span: Vec<CoVec>,
    /// Number of parent covectors in the flat.
    pub members: usize,
    /// Number of flats in the symmetry orbit(s) merged into this entry.
    pub orbit_size: usize,
    pub child_dim: usize,
    pub covector_count: usize,
    pub digest: String,
    #[serde(serialize_with = "crate::arith::serde_rational_opt::serialize")]
    pub lambda_sq: Option<Rational>,
    pub is_vee: bool,
    /// `l2` of the child equals that of the parent (vacuous in dimension one,
    /// where `l2` is not defined).
    pub lambda_preserved: bool,
    pub child: serde_json::Value,
    #[serde(skip)]
    pub child_config: Configuration,
}

/// A flat whose restriction is not defined.
#[derive(Clone, Debug, Serialize)]
pub struct SkippedFlat {
    pub corank: usize,
    pub span: Vec<CoVec>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Catalog {
    pub source: String,
    pub max_corank: usize,
    #[serde(serialize_with = "crate::arith::serde_rational_opt::serialize")]
    pub parent_lambda_sq: Option<Rational>,
    /// Number of reflection symmetries found.
    pub symmetries: usize,
    pub entries: Vec<CatalogEntry>,
    pub skipped: Vec<SkippedFlat>,
}

/// Index permutations (with the sign flips forgotten) induced by reflections
/// `b -> b - 2 <a,b>/<a,a> a` that map the configuration onto itself.
pub fn reflection_symmetries(cfg: &Configuration) -> Result<Vec<Vec<usize>>> {
    let duality = Duality::new(cfg)?;
    let mut lookup: HashMap<CoVec, usize> = HashMap::new();
    for (i, a) in cfg.covectors().iter().enumerate() {
        lookup.insert(a.clone(), i);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for a in cfg.covectors() {
        let aa = duality.inner(a, a);
        if aa.is_zero() {
            continue;
        }
        let mut perm = Vec::with_capacity(cfg.len());
        for (b, c) in cfg.iter() {
            let k = Rational::from_integer(2.into()) * duality.inner(a, b) / &aa;
            let img = b.sub(&a.scale(&k));
            let j = lookup.get(&img).or_else(|| lookup.get(&img.neg()));
            match j {
                Some(&j) if cfg.multiplicity(j) == c => perm.push(j),
                _ => break,
            }
        }
        if perm.len() == cfg.len() && perm.iter().enumerate().any(|(i, &j)| i != j) && seen.insert(perm.clone()) {
            out.push(perm);
        }
    }
    Ok(out)
}

/// Members of the span of the covectors at `indices`.
fn closure(cfg: &Configuration, indices: &[usize]) -> Flat {
    let rows = Matrix::from_rows(indices.iter().map(|&i| cfg.covector(i).0.clone()).collect());
    let annihilator = rows.nullspace();
    (0..cfg.len()).filter(|&i| annihilator.iter().all(|x| cfg.covector(i).eval(x).is_zero())).collect()
}

fn apply(perm: &[usize], flat: &Flat) -> Flat {
    let mut v: Vec<usize> = flat.iter().map(|&i| perm[i]).collect();
    v.sort_unstable();
    v
}

/// Orbit representatives of the flats of rank `1..=max_rank`, with orbit sizes.
pub fn flat_orbits(cfg: &Configuration, max_rank: usize, symmetries: &[Vec<usize>]) -> Vec<Vec<(Flat, usize)>> {
    let mut seen: HashSet<Flat> = HashSet::new();
    let mut levels: Vec<Vec<(Flat, usize)>> = Vec::new();
    let mut previous: Vec<Flat> = vec![Vec::new()];
    for _ in 0..max_rank.min(cfg.dim()) {
        let mut level = Vec::new();
        for base in &previous {
            let inside: BTreeSet<usize> = base.iter().copied().collect();
            for a in 0..cfg.len() {
                if inside.contains(&a) {
                    continue;
                }
                let mut gens: Vec<usize> = base.clone();
                gens.push(a);
                let flat = closure(cfg, &gens);
                if seen.contains(&flat) {
                    continue;
                }
                let mut size = 0;
                let mut queue = VecDeque::from([flat.clone()]);
                seen.insert(flat.clone());
                while let Some(f) = queue.pop_front() {
                    size += 1;
                    for p in symmetries {
                        let g = apply(p, &f);
                        if seen.insert(g.clone()) {
                            queue.push_back(g);
                        }
                    }
                }
                level.push((flat, size));
            }
        }
        previous = level.iter().map(|(f, _)| f.clone()).collect();
        levels.push(level);
    }
    levels
}

/// All restrictions of `cfg` to flats of rank at most `max_corank`, one per
/// symmetry orbit, with linearly equivalent children merged.
pub fn catalog(cfg: &Configuration, source: &str, max_corank: usize) -> Result<Catalog> {
    let parent_l2 = lambda_sq(cfg).ok();
    let symmetries = reflection_symmetries(cfg)?;
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut skipped = Vec::new();
    let push = |entry: CatalogEntry, entries: &mut Vec<CatalogEntry>| -> Result<()> {
        for e in entries.iter_mut() {
            if e.corank == entry.corank
                && e.digest == entry.digest
                && linear_equivalence(&e.child_config, &entry.child_config)?.is_some()
            {
                e.orbit_size += entry.orbit_size;
                return Ok(());
            }
        }
        entries.push(entry);
        Ok(())
    };
    let make = |span: Vec<CoVec>, corank: usize, members: usize, orbit_size: usize, child: Configuration| {
        let child = normalize_positive(&child, &Functional::Auto)?.config;
        let report = vee_check(&child)?;
        let l2 = report.lambda_sq.clone();
        Ok::<_, crate::Error>(CatalogEntry {
            source: source.to_string(),
            corank,
            span,
            members,
            orbit_size,
            child_dim: child.dim(),
            covector_count: child.len(),
            digest: invariant_digest(&child)?,
            lambda_preserved: match &l2 {
                Some(_) => l2 == parent_l2,
                None => child.dim() < 2,
            },
            lambda_sq: l2,
            is_vee: report.passes(),
            child: config_to_value(&child),
            child_config: child,
        })
    };
    let whole = make(Vec::new(), 0, 0, 1, cfg.clone())?;
    push(whole, &mut entries)?;
    for (rank, level) in flat_orbits(cfg, max_corank, &symmetries).into_iter().enumerate() {
        for (flat, size) in level {
            let sub = subsystem(cfg, &flat)?;
            let span = sub.span_basis.clone();
            match restrict(cfg, &sub) {
                Ok(res) => {
                    let entry = make(span, rank + 1, flat.len(), size, res.child)?;
                    push(entry, &mut entries)?;
                }
                Err(e) => skipped.push(SkippedFlat { corank: rank + 1, span, reason: e.to_string() }),
            }
        }
    }
    Ok(Catalog {
        source: source.to_string(),
        max_corank,
        parent_lambda_sq: parent_l2,
        symmetries: symmetries.len(),
        entries,
        skipped,
    })
}
