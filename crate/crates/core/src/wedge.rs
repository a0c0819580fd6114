//! Bilinear forms on the exterior square of `V`.
//!
//! Basis bivectors are `e_i ^ e_j = e_i (x) e_j - e_j (x) e_i` for `i < j`,
//! ordered lexicographically. A pair of covectors `(a, b)` defines the
//! functional `B_{a,b}(u (x) v) = a(u) b(v) - a(v) b(u)`, whose value on a basis
//! bivector is therefore `2 (a_i b_j - a_j b_i)`.

use num_traits::Zero;

use crate::arith::{CoVec, Matrix, Rational};
use crate::error::{Error, Result};

/// A basis bivector `e_i ^ e_j` with `i < j` (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeIndex {
    pub i: usize,
    pub j: usize,
}

impl WedgeIndex {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "wedge index requires i < j");
        WedgeIndex { i, j }
    }

    /// Position of this pair in the lexicographic order for dimension `n`.
    pub fn position(&self, n: usize) -> usize {
        // Pairs starting with k < i contribute (n - 1 - k) each.
        self.i * (2 * n - self.i - 1) / 2 + (self.j - self.i - 1)
    }

    /// Inverse of [`WedgeIndex::position`].
    pub fn from_position(n: usize, mut pos: usize) -> Self {
        for i in 0..n {
            let row = n - 1 - i;
            if pos < row {
                return WedgeIndex { i, j: i + 1 + pos };
            }
            pos -= row;
        }
        panic!("wedge position out of range")
    }

    /// All pairs in order.
    pub fn all(n: usize) -> Vec<WedgeIndex> {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| WedgeIndex { i, j })).collect()
    }
}

pub fn wedge_dim(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `B_{alpha,beta}(e_i ^ e_j) = 2 (alpha_i beta_j - alpha_j beta_i)`.
pub fn wedge_eval(alpha: &CoVec, beta: &CoVec, z: WedgeIndex) -> Result<Rational> {
    check_dims(alpha, beta)?;
    if z.j >= alpha.dim() {
        return Err(Error::DimensionMismatch { expected: alpha.dim(), found: z.j + 1 });
    }
    let (a, b) = (alpha.coords(), beta.coords());
    let v = &a[z.i] * &b[z.j] - &a[z.j] * &b[z.i];
    Ok(v * Rational::from_integer(2.into()))
}

/// Coefficients of `alpha ^ beta` on every basis bivector, in order.
pub fn wedge_vector(alpha: &CoVec, beta: &CoVec) -> Result<Vec<Rational>> {
    check_dims(alpha, beta)?;
    let n = alpha.dim();
    WedgeIndex::all(n).into_iter().map(|z| wedge_eval(alpha, beta, z)).collect()
}

/// The rank-one form `(alpha ^ beta)^2`.
pub fn wedge_square(alpha: &CoVec, beta: &CoVec) -> Result<WedgeForm> {
    let w = wedge_vector(alpha, beta)?;
    let mut f = WedgeForm::zero(alpha.dim());
    f.add_outer(&Rational::from_integer(1.into()), &w);
    Ok(f)
}

fn check_dims(alpha: &CoVec, beta: &CoVec) -> Result<()> {
    if alpha.dim() != beta.dim() {
        return Err(Error::DimensionMismatch { expected: alpha.dim(), found: beta.dim() });
    }
    Ok(())
}

/// Symmetric form on the exterior square, as a `C(N,2) x C(N,2)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeForm {
    n: usize,
    m: Matrix,
}

impl WedgeForm {
    pub fn zero(n: usize) -> Self {
        let d = wedge_dim(n);
        WedgeForm { n, m: Matrix::zeros(d, d) }
    }

    pub fn from_matrix(n: usize, m: Matrix) -> Result<Self> {
        let d = wedge_dim(n);
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: m.rows() });
        }
        Ok(WedgeForm { n, m })
    }

    /// Ambient dimension `N` (not the size of the matrix).
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn get(&self, z: WedgeIndex, w: WedgeIndex) -> &Rational {
        &self.m[(z.position(self.n), w.position(self.n))]
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// `self += k * w w^T`.
    pub fn add_outer(&mut self, k: &Rational, w: &[Rational]) {
        for (a, wa) in w.iter().enumerate() {
            if wa.is_zero() {
                continue;
            }
            let ka = k * wa;
            for (b, wb) in w.iter().enumerate() {
                if !wb.is_zero() {
                    self.m[(a, b)] += &ka * wb;
                }
            }
        }
    }

    pub fn add(&self, other: &WedgeForm) -> WedgeForm {
        WedgeForm { n: self.n, m: self.m.add(&other.m) }
    }

    pub fn scale(&self, k: &Rational) -> WedgeForm {
        WedgeForm { n: self.n, m: self.m.scale(k) }
    }

    /// `Some(k)` with `self = k * other` exactly; `None` if not proportional
    /// or `other` is zero.
    pub fn ratio_to(&self, other: &WedgeForm) -> Option<Rational> {
        let pos = other.m.entries().iter().position(|x| !x.is_zero())?;
        let k = &self.m.entries()[pos] / &other.m.entries()[pos];
        let ok = self.m.entries().iter().zip(other.m.entries()).all(|(a, b)| *a == &k * b);
        ok.then_some(k)
    }
}
