//! The forms `G1 = sum c_a c_b (a ^ b)^2` and
//! `G2 = sum c_a c_b a(b^vee) (a ^ b)^2` on the exterior square, and their ratio.
//!
//! Both are evaluated by contracting small tensors instead of summing over
//! pairs of covectors: with `P_ikm = sum c_a a_i a_k a_m` and `H = G^{-1}`,
//! `T_{ik,jl} = sum_{mn} H_mn P_ikm P_jln` and
//! `G2_{(ij),(kl)} = 4 (T_{ik,jl} - T_{il,jk} - T_{jk,il} + T_{jl,ik})`,
//! while `G1_{(ij),(kl)} = 8 (G_ik G_jl - G_il G_jk)`.

use num_traits::Zero;

use crate::arith::{rat, Matrix, Rational};
use crate::configuration::{gram, normalize_positive, Configuration, Functional};
use crate::error::{Error, Result};
use crate::wedge::{WedgeForm, WedgeIndex};

/// `sum_{a,b} c_a c_b (a ^ b)^2` over the configuration as supplied.
pub fn g1(cfg: &Configuration) -> WedgeForm {
    let n = cfg.dim();
    let g = gram(cfg);
    let pairs = WedgeIndex::all(n);
    let mut m = Matrix::zeros(pairs.len(), pairs.len());
    let eight = rat(8);
    for (a, z) in pairs.iter().enumerate() {
        for (b, w) in pairs.iter().enumerate().skip(a) {
            let (i, j, k, l) = (z.i, z.j, w.i, w.j);
            let v = &g[(i, k)] * &g[(j, l)] - &g[(i, l)] * &g[(j, k)];
            if !v.is_zero() {
                let v = &v * &eight;
                m[(b, a)] = v.clone();
                m[(a, b)] = v;
            }
        }
    }
    WedgeForm::from_matrix(n, m).expect("shape")
}

/// `sum_{a,b} c_a c_b a(b^vee) (a ^ b)^2` over the covectors exactly as
/// supplied (no positive normalization).
pub fn g2_over(cfg: &Configuration) -> Result<WedgeForm> {
    let n = cfg.dim();
    let h = crate::arith::invert(&gram(cfg))?;
    // P[i][k][m]
    let mut p = vec![Rational::zero(); n * n * n];
    let idx = |i: usize, k: usize, m: usize| (i * n + k) * n + m;
    for (a, c) in cfg.iter() {
        let v = a.coords();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            let ci = c * &v[i];
            for k in i..n {
                if v[k].is_zero() {
                    continue;
                }
                let cik = &ci * &v[k];
                for m in k..n {
                    if !v[m].is_zero() {
                        p[idx(i, k, m)] += &cik * &v[m];
                    }
                }
            }
        }
    }
    // Fill the remaining permutations of the symmetric tensor.
    for i in 0..n {
        for k in i..n {
            for m in k..n {
                let v = p[idx(i, k, m)].clone();
                for (a, b, c) in [(i, m, k), (k, i, m), (k, m, i), (m, i, k), (m, k, i)] {
                    p[idx(a, b, c)] = v.clone();
                }
            }
        }
    }
    // Q[(j,l)][m] = sum_n H_mn P_jln, so T_{ik,jl} = sum_m P_ikm Q_jlm.
    let mut q = vec![Rational::zero(); n * n * n];
    for j in 0..n {
        for l in j..n {
            for m in 0..n {
                let mut acc = Rational::zero();
                for nn in 0..n {
                    let a = &h[(m, nn)];
                    let b = &p[idx(j, l, nn)];
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                q[idx(j, l, m)] = acc.clone();
                q[idx(l, j, m)] = acc;
            }
        }
    }
    let t = |i: usize, k: usize, j: usize, l: usize| -> Rational {
        let mut acc = Rational::zero();
        for m in 0..n {
            let a = &p[idx(i, k, m)];
            let b = &q[idx(j, l, m)];
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    };
    let pairs = WedgeIndex::all(n);
    let mut out = Matrix::zeros(pairs.len(), pairs.len());
    let four = rat(4);
    for (a, z) in pairs.iter().enumerate() {
        for (b, w) in pairs.iter().enumerate().skip(a) {
            let (i, j, k, l) = (z.i, z.j, w.i, w.j);
            let v = t(i, k, j, l) - t(i, l, j, k) - t(j, k, i, l) + t(j, l, i, k);
            if !v.is_zero() {
                let v = &v * &four;
                out[(b, a)] = v.clone();
                out[(a, b)] = v;
            }
        }
    }
    Ok(WedgeForm::from_matrix(n, out).expect("shape"))
}

/// `G2` over the positive normalization of the configuration.
pub fn g2(cfg: &Configuration) -> Result<WedgeForm> {
    let pos = normalize_positive(cfg, &Functional::Auto)?;
    g2_over(&pos.config)
}

/// The ratio `l2` with `G1 = (l2 / 4) G2`, checked on every entry.
pub fn lambda_sq(cfg: &Configuration) -> Result<Rational> {
    lambda_sq_from(&g1(cfg), &g2(cfg)?)
}

pub fn lambda_sq_from(g1: &WedgeForm, g2: &WedgeForm) -> Result<Rational> {
    if g2.is_zero() {
        return Err(Error::ZeroG2);
    }
    let k = g1.ratio_to(g2).ok_or(Error::NotProportional)?;
    Ok(k * rat(4))
}
