//! Subsystems `B = A ∩ W` and the operator `M = sum_{b in B} c_b b (x) b^vee`.

use num_traits::Zero;

use crate::arith::{CoVec, Matrix, Rational};
use crate::configuration::{Configuration, Duality};
use crate::error::{Error, Result};

/// The members of a configuration lying in a subspace `W` of `V*`.
#[derive(Clone, Debug)]
pub struct SubsystemHandle {
    pub parent: Configuration,
    /// Parent indices of every covector lying in `W`, increasing.
    pub member_indices: Vec<usize>,
    /// Independent parent covectors spanning `W`.
    pub span_basis: Vec<CoVec>,
    /// Parent indices of `span_basis`.
    pub span_indices: Vec<usize>,
    /// Duals of `span_basis`; a basis of `W^vee`.
    pub dual_basis: Vec<Vec<Rational>>,
    /// `G_B` restricted to `W^vee` is degenerate.
    pub is_isotropic: bool,
}

impl SubsystemHandle {
    pub fn rank(&self) -> usize {
        self.span_basis.len()
    }

    /// Matrix of `G_B(u_a, u_b)` in the basis `dual_basis`.
    pub fn restricted_gram(&self) -> Matrix {
        let k = self.rank();
        let vals: Vec<Vec<Rational>> = self
            .member_indices
            .iter()
            .map(|&i| self.dual_basis.iter().map(|u| self.parent.covector(i).eval(u)).collect())
            .collect();
        let mut g = Matrix::zeros(k, k);
        for (row, &i) in vals.iter().zip(&self.member_indices) {
            let c = self.parent.multiplicity(i);
            for a in 0..k {
                for b in 0..k {
                    g[(a, b)] += c * &row[a] * &row[b];
                }
            }
        }
        g
    }

    /// Coordinates of a member covector in the basis `dual_basis` of `W^vee`:
    /// `b -> (b(u_1), ..., b(u_k))`.
    pub fn member_coords(&self, b: &CoVec) -> CoVec {
        CoVec(self.dual_basis.iter().map(|u| b.eval(u)).collect())
    }

    /// Coordinates of a vector of `W^vee` in the basis `dual_basis`.
    pub fn vector_coords(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let basis_t = Matrix::from_rows(self.dual_basis.clone()).transpose();
        let ext = augmented_solve(&basis_t, v)?;
        Ok(ext)
    }

    /// The subsystem as a standalone configuration on `W^vee`.
    pub fn standalone(&self) -> Result<Configuration> {
        let covs = self.member_indices.iter().map(|&i| self.member_coords(self.parent.covector(i))).collect();
        let mults = self.member_indices.iter().map(|&i| self.parent.multiplicity(i).clone()).collect();
        Configuration::new(self.rank(), covs, mults)
    }
}

/// Solves the overdetermined consistent system `a x = b` (full column rank).
fn augmented_solve(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let (r, pivots) = Matrix::from_rows(rows).rref();
    if pivots.contains(&a.cols()) || pivots.len() < a.cols() {
        return Err(Error::InvalidConfig("vector is not in the subspace".into()));
    }
    Ok((0..a.cols()).map(|k| r[(k, a.cols())].clone()).collect())
}

/// `B = A ∩ W` with `W` spanned by the covectors at `span_indices`.
pub fn subsystem(cfg: &Configuration, span_indices: &[usize]) -> Result<SubsystemHandle> {
    if span_indices.is_empty() {
        return Err(Error::InvalidConfig("subsystem needs at least one spanning covector".into()));
    }
    if let Some(&bad) = span_indices.iter().find(|&&i| i >= cfg.len()) {
        return Err(Error::InvalidConfig(format!("covector index {bad} out of range")));
    }
    let chosen = Matrix::from_rows(span_indices.iter().map(|&i| cfg.covector(i).0.clone()).collect());
    let span_indices: Vec<usize> = chosen.independent_rows().into_iter().map(|r| span_indices[r]).collect();
    let span_basis: Vec<CoVec> = span_indices.iter().map(|&i| cfg.covector(i).clone()).collect();
    // a lies in W exactly when it kills the annihilator of W.
    let annihilator = Matrix::from_rows(span_basis.iter().map(|c| c.0.clone()).collect()).nullspace();
    let member_indices: Vec<usize> = (0..cfg.len())
        .filter(|&i| annihilator.iter().all(|x| cfg.covector(i).eval(x).is_zero()))
        .collect();
    let duality = Duality::new(cfg)?;
    let dual_basis: Vec<Vec<Rational>> = span_basis.iter().map(|b| duality.dual(b)).collect();
    let mut handle = SubsystemHandle {
        parent: cfg.clone(),
        member_indices,
        span_basis,
        span_indices,
        dual_basis,
        is_isotropic: false,
    };
    handle.is_isotropic = handle.restricted_gram().determinant().is_zero();
    Ok(handle)
}

/// Eigenvalues of `M` on `W^vee` and a basis of each eigenspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenDecomposition {
    /// Distinct, in order of first appearance over the members.
    pub eigenvalues: Vec<Rational>,
    /// Vectors of `V` (duals of members) spanning each eigenspace.
    pub eigenspaces: Vec<Vec<Vec<Rational>>>,
    /// `(member index, eigenvalue position)` for every member.
    pub member_eigenvalue: Vec<(usize, usize)>,
}

/// `M(v) = sum_{b in B} c_b b(v) b^vee`, applied to every member dual.
pub fn m_operator(cfg: &Configuration, sub: &SubsystemHandle) -> Result<EigenDecomposition> {
    let duality = Duality::new(cfg)?;
    let duals: Vec<Vec<Rational>> =
        sub.member_indices.iter().map(|&i| duality.dual(cfg.covector(i))).collect();
    let n = cfg.dim();
    let apply = |v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (k, &i) in sub.member_indices.iter().enumerate() {
            let w = cfg.multiplicity(i) * cfg.covector(i).eval(v);
            if w.is_zero() {
                continue;
            }
            for (o, d) in out.iter_mut().zip(&duals[k]) {
                *o += &w * d;
            }
        }
        out
    };
    let mut dec = EigenDecomposition { eigenvalues: vec![], eigenspaces: vec![], member_eigenvalue: vec![] };
    for (k, &i) in sub.member_indices.iter().enumerate() {
        let image = CoVec(apply(&duals[k]));
        let mu = image.ratio_to(&CoVec(duals[k].clone())).ok_or(Error::NotEigen { index: i })?;
        let pos = match dec.eigenvalues.iter().position(|e| *e == mu) {
            Some(p) => p,
            None => {
                dec.eigenvalues.push(mu);
                dec.eigenspaces.push(Vec::new());
                dec.eigenvalues.len() - 1
            }
        };
        dec.member_eigenvalue.push((i, pos));
        let space = &mut dec.eigenspaces[pos];
        let mut trial = space.clone();
        trial.push(duals[k].clone());
        if Matrix::from_rows(trial).rank() > space.len() {
            space.push(duals[k].clone());
        }
    }
    Ok(dec)
}
