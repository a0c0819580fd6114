//! Comparing configurations up to invertible linear changes of coordinates
//! and the choice of positive half.
//!
//! Two tools: a digest of coordinate-free invariants (multiplicities and the
//! values `a(b^vee)`, up to the sign ambiguity of a positive half) and an
//! exact search for a linear map carrying one configuration onto the other.

use std::collections::HashMap;

use num_traits::Signed;
use sha2::{Digest, Sha256};

use crate::arith::{CoVec, Matrix, Rational};
use crate::configuration::{normalize_positive, Configuration, Duality, Functional};
use crate::error::Result;
use crate::veesystem::pairing_matrix;

fn positive(cfg: &Configuration) -> Result<Configuration> {
    Ok(normalize_positive(cfg, &Functional::Auto)?.config)
}

/// Hex SHA-256 over the dimension, the size, and for every covector the
/// sorted profile of `(c_b, b(b^vee), |a(b^vee)|)` over all `b`, headed by
/// `(c_a, a(a^vee))`. Invariant under linear coordinate changes, reordering
/// and sign flips of covectors.
pub fn invariant_digest(cfg: &Configuration) -> Result<String> {
    let pos = positive(cfg)?;
    let k = pairing_matrix(&pos, &Duality::new(&pos)?);
    let n = pos.len();
    let mut profiles: Vec<String> = (0..n)
        .map(|i| {
            let mut row: Vec<String> = (0..n)
                .filter(|&j| j != i)
                .map(|j| format!("{}:{}:{}", pos.multiplicity(j), k[(j, j)], k[(i, j)].abs()))
                .collect();
            row.sort();
            format!("{}:{}|{}", pos.multiplicity(i), k[(i, i)], row.join(","))
        })
        .collect();
    profiles.sort();
    let mut h = Sha256::new();
    h.update(format!("dim={};n={};", pos.dim(), n));
    for p in &profiles {
        h.update(p.as_bytes());
        h.update(b";");
    }
    Ok(hex::encode(h.finalize()))
}

/// An invertible `X` with `{(a X, c_a)} = {(+-b, c_b)}` after positive
/// normalization of both sides, if one exists.
pub fn linear_equivalence(a: &Configuration, b: &Configuration) -> Result<Option<Matrix>> {
    let (a, b) = (positive(a)?, positive(b)?);
    if a.dim() != b.dim() || a.len() != b.len() {
        return Ok(None);
    }
    let ka = pairing_matrix(&a, &Duality::new(&a)?);
    let kb = pairing_matrix(&b, &Duality::new(&b)?);
    let basis = a.covector_matrix().independent_rows();
    if basis.len() != a.dim() {
        return Ok(None);
    }
    let mut targets: HashMap<CoVec, Rational> = HashMap::new();
    for (v, c) in b.iter() {
        targets.insert(v.clone(), c.clone());
    }
    let mut search = Search { a: &a, b: &b, ka: &ka, kb: &kb, basis: &basis, targets: &targets, chosen: vec![] };
    Ok(search.run())
}

struct Search<'a> {
    a: &'a Configuration,
    b: &'a Configuration,
    ka: &'a Matrix,
    kb: &'a Matrix,
    basis: &'a [usize],
    targets: &'a HashMap<CoVec, Rational>,
    /// `(index in b, sign)` for each assigned basis element.
    chosen: Vec<(usize, i8)>,
}

impl Search<'_> {
    fn run(&mut self) -> Option<Matrix> {
        let depth = self.chosen.len();
        if depth == self.basis.len() {
            return self.complete();
        }
        let i = self.basis[depth];
        for j in 0..self.b.len() {
            if self.chosen.iter().any(|&(jj, _)| jj == j) {
                continue;
            }
            if self.a.multiplicity(i) != self.b.multiplicity(j) || self.ka[(i, i)] != self.kb[(j, j)] {
                continue;
            }
            for sign in [1i8, -1] {
                let ok = self.chosen.iter().zip(self.basis).all(|(&(jj, ss), &ii)| {
                    let v = &self.kb[(j, jj)];
                    if sign * ss > 0 { self.ka[(i, ii)] == *v } else { self.ka[(i, ii)] == -v }
                });
                if !ok {
                    continue;
                }
                self.chosen.push((j, sign));
                if let Some(x) = self.run() {
                    return Some(x);
                }
                self.chosen.pop();
            }
        }
        None
    }

    fn complete(&self) -> Option<Matrix> {
        let rows_a = Matrix::from_rows(self.basis.iter().map(|&i| self.a.covector(i).0.clone()).collect());
        let rows_b = Matrix::from_rows(
            self.chosen
                .iter()
                .map(|&(j, s)| {
                    let v = self.b.covector(j);
                    if s > 0 { v.0.clone() } else { v.neg().0 }
                })
                .collect(),
        );
        let x = rows_a.inverse().ok()?.mul(&rows_b);
        if x.determinant() == Rational::from_integer(0.into()) {
            return None;
        }
        let xt = x.transpose();
        let mut used = vec![false; self.b.len()];
        for (v, c) in self.a.iter() {
            let img = CoVec(xt.mul_vec(v.coords()));
            let hit = self
                .targets
                .get(&img)
                .map(|m| (img.clone(), m))
                .or_else(|| {
                    let n = img.neg();
                    self.targets.get(&n).map(|m| (n, m))
                });
            let (w, m) = hit?;
            if m != c {
                return None;
            }
            let j = self.b.covectors().iter().position(|u| *u == w)?;
            if used[j] {
                return None;
            }
            used[j] = true;
        }
        Some(x)
    }
}
