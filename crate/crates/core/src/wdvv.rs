//! Floating-point verification of the WDVV equations for the prepotential
//! `F = y^3/3 + sum c_a a(x)^2 y + l sum c_a f(a(x))` with `f''' = cot`.
//!
//! Everything here is independent of the exact vee-condition machinery: the
//! only inputs are the covectors, the multiplicities and `l2`.
//!
//! `l` enters linearly, so every matrix is stored as `l * trig + poly`. When
//! `l2 < 0` the coupling is imaginary and the products are evaluated over the
//! complex numbers; the verdict only depends on `l2`.

use nalgebra::{Complex, DMatrix, DVector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{to_f64, Rational};
use crate::configuration::{gram, Configuration};
use crate::error::{Error, Result};
use crate::restriction::RestrictionResult;

type C64 = Complex<f64>;

/// Default lower bound on `|sin a(x)|` at sample points.
pub const POLE_GUARD: f64 = 1.0 / 20.0;
const MAX_RESAMPLES: usize = 100_000;

/// Float copy of a configuration with its Gram form and duals.
struct FloatConfig {
    dim: usize,
    covs: Vec<DVector<f64>>,
    mults: Vec<f64>,
    gram: DMatrix<f64>,
    gram_inv: DMatrix<f64>,
    duals: Vec<DVector<f64>>,
}

impl FloatConfig {
    fn new(cfg: &Configuration) -> Result<Self> {
        let n = cfg.dim();
        let covs: Vec<DVector<f64>> =
            cfg.covectors().iter().map(|a| DVector::from_iterator(n, a.coords().iter().map(to_f64))).collect();
        let mults: Vec<f64> = cfg.multiplicities().iter().map(to_f64).collect();
        let g = gram(cfg);
        let gram = DMatrix::from_fn(n, n, |i, j| to_f64(&g[(i, j)]));
        let exact_inv = g.matrix().inverse()?;
        let gram_inv = DMatrix::from_fn(n, n, |i, j| to_f64(&exact_inv[(i, j)]));
        let duals = covs.iter().map(|a| &gram_inv * a).collect();
        Ok(FloatConfig { dim: n, covs, mults, gram, gram_inv, duals })
    }

    fn min_sine(&self, x: &DVector<f64>) -> f64 {
        self.covs.iter().map(|a| a.dot(x).sin().abs()).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplePoint {
    pub x: Vec<f64>,
    pub y: f64,
    /// `min |sin a(x)|` over the configuration.
    pub min_sine: f64,
}

/// Draws `count` points uniform in `(-2, 2)^N`, resampling until the pole
/// guard holds.
pub fn sample_points(cfg: &Configuration, count: usize, seed: u64, guard: f64) -> Result<Vec<SamplePoint>> {
    let fc = FloatConfig::new(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| draw_point(&fc, &mut rng, guard)).collect()
}

fn draw_point(fc: &FloatConfig, rng: &mut ChaCha8Rng, guard: f64) -> Result<SamplePoint> {
    let mut best = 0.0f64;
    for _ in 0..MAX_RESAMPLES {
        let x = DVector::from_fn(fc.dim, |_, _| rng.gen_range(-2.0..2.0));
        let s = fc.min_sine(&x);
        if s >= guard {
            return Ok(SamplePoint { x: x.iter().copied().collect(), y: rng.gen_range(-2.0..2.0), min_sine: s });
        }
        best = best.max(s);
    }
    Err(Error::PoleTooClose { min_sine: best })
}

fn check_point(fc: &FloatConfig, pt: &SamplePoint, guard: f64) -> Result<DVector<f64>> {
    if pt.x.len() != fc.dim {
        return Err(Error::DimensionMismatch { expected: fc.dim, found: pt.x.len() });
    }
    let x = DVector::from_column_slice(&pt.x);
    let s = fc.min_sine(&x);
    if s < guard {
        return Err(Error::PoleTooClose { min_sine: s });
    }
    Ok(x)
}

/// The matrices `F_1..F_{N+1}` at a point, split as `F_i = l * trig_i + poly_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThirdDerivSet {
    pub lambda_sq: f64,
    pub trig: Vec<DMatrix<f64>>,
    pub poly: Vec<DMatrix<f64>>,
}

impl ThirdDerivSet {
    /// `F_i` over the complex numbers, `l = sqrt(l2)` (principal root).
    pub fn matrix(&self, i: usize) -> DMatrix<C64> {
        let l = lambda_c(self.lambda_sq);
        self.trig[i].map(|t| l * t) + self.poly[i].map(C64::from)
    }

    /// `F_i` as a real matrix; `None` when `l2 < 0`.
    pub fn real_matrix(&self, i: usize) -> Option<DMatrix<f64>> {
        (self.lambda_sq >= 0.0).then(|| self.lambda_sq.sqrt() * &self.trig[i] + &self.poly[i])
    }

    pub fn len(&self) -> usize {
        self.trig.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trig.is_empty()
    }
}

fn lambda_c(lambda_sq: f64) -> C64 {
    C64::new(lambda_sq, 0.0).sqrt()
}

/// Third derivatives of the prepotential at `pt`.
pub fn third_derivs(cfg: &Configuration, lambda_sq: f64, pt: &SamplePoint) -> Result<ThirdDerivSet> {
    third_derivs_guarded(cfg, lambda_sq, pt, POLE_GUARD)
}

pub fn third_derivs_guarded(cfg: &Configuration, lambda_sq: f64, pt: &SamplePoint, guard: f64) -> Result<ThirdDerivSet> {
    let fc = FloatConfig::new(cfg)?;
    let x = check_point(&fc, pt, guard)?;
    Ok(assemble(&fc, lambda_sq, &x))
}

fn assemble(fc: &FloatConfig, lambda_sq: f64, x: &DVector<f64>) -> ThirdDerivSet {
    let n = fc.dim;
    let mut trig = vec![DMatrix::zeros(n + 1, n + 1); n + 1];
    let mut poly = vec![DMatrix::zeros(n + 1, n + 1); n + 1];
    for (a, &c) in fc.covs.iter().zip(&fc.mults) {
        let w = c / a.dot(x).tan();
        for i in 0..n {
            for p in 0..n {
                for q in 0..n {
                    trig[i][(p, q)] += w * a[i] * a[p] * a[q];
                }
            }
        }
    }
    for i in 0..n {
        for p in 0..n {
            let g = 2.0 * fc.gram[(i, p)];
            poly[i][(p, n)] = g;
            poly[i][(n, p)] = g;
            poly[n][(i, p)] = g;
        }
    }
    poly[n][(n, n)] = 2.0;
    ThirdDerivSet { lambda_sq, trig, poly }
}

/// `(F_{N+1})^{-1} = (1/2) blockdiag(G^{-1}, 1)`.
fn f_last_inverse(fc: &FloatConfig) -> DMatrix<f64> {
    let n = fc.dim;
    let mut m = DMatrix::zeros(n + 1, n + 1);
    m.view_mut((0, 0), (n, n)).copy_from(&(0.5 * &fc.gram_inv));
    m[(n, n)] = 0.5;
    m
}

#[derive(Clone, Debug, Default)]
pub struct WdvvOptions {
    pub points: usize,
    pub seed: u64,
    pub tol: f64,
    pub guard: f64,
}

impl WdvvOptions {
    pub fn new(points: usize, seed: u64, tol: f64) -> Self {
        WdvvOptions { points, seed, tol, guard: POLE_GUARD }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WdvvReport {
    #[serde(with = "crate::arith::serde_rational")]
    pub lambda_sq: Rational,
    /// Maximum scaled commutator norm over points and pairs.
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub points: usize,
    pub seed: u64,
    /// Smallest `|sin a(x)|` over all sample points.
    pub min_sine: f64,
}

fn fro(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn commutator_residual(fc: &FloatConfig, set: &ThirdDerivSet) -> f64 {
    let kinv = f_last_inverse(fc);
    let kinv_c = kinv.map(C64::from);
    let k_norm = kinv.norm();
    let mats: Vec<DMatrix<C64>> = (0..set.len()).map(|i| set.matrix(i)).collect();
    let norms: Vec<f64> = mats.iter().map(fro).collect();
    let mut worst = 0.0f64;
    for i in 0..fc.dim {
        let left = &mats[i] * &kinv_c;
        for j in i + 1..fc.dim {
            let right = &mats[j] * &kinv_c;
            let d = &left * &mats[j] - &right * &mats[i];
            worst = worst.max(fro(&d) / (1.0 + norms[i] * k_norm * norms[j]));
        }
    }
    worst
}

/// Max over sample points and pairs `(i, j)` of
/// `|F_i K F_j - F_j K F_i| / (1 + |F_i| |K| |F_j|)`, `K = F_{N+1}^{-1}`,
/// Frobenius norms throughout.
pub fn wdvv_residual(cfg: &Configuration, lambda_sq: &Rational, opts: &WdvvOptions) -> Result<WdvvReport> {
    let fc = FloatConfig::new(cfg)?;
    let pts = sample_points(cfg, opts.points, opts.seed, opts.guard)?;
    let l2 = to_f64(lambda_sq);
    let mut residual = 0.0f64;
    for pt in &pts {
        let set = assemble(&fc, l2, &DVector::from_column_slice(&pt.x));
        residual = residual.max(commutator_residual(&fc, &set));
    }
    Ok(WdvvReport {
        lambda_sq: lambda_sq.clone(),
        residual,
        tol: opts.tol,
        pass: residual < opts.tol,
        points: pts.len(),
        seed: opts.seed,
        min_sine: pts.iter().map(|p| p.min_sine).fold(f64::INFINITY, f64::min),
    })
}

/// `a * b` for `a, b` in `V + U` (last coordinate along `E`).
fn product_c(fc: &FloatConfig, l: C64, x: &DVector<f64>, a: &[C64], b: &[C64]) -> Vec<C64> {
    let n = fc.dim;
    let mut out = vec![C64::from(0.0); n + 1];
    for ((al, &c), dual) in fc.covs.iter().zip(&fc.mults).zip(&fc.duals) {
        let aa: C64 = (0..n).map(|k| a[k] * al[k]).sum();
        let ab: C64 = (0..n).map(|k| b[k] * al[k]).sum();
        let w = aa * ab * c;
        let t = w * l * 0.5 / al.dot(x).tan();
        for k in 0..n {
            out[k] += t * dual[k];
        }
        out[n] += w;
    }
    // E is the unit.
    let (ay, by) = (a[n], b[n]);
    for k in 0..n {
        out[k] += ay * b[k] + by * a[k];
    }
    out[n] += ay * by;
    out
}

/// `a * b = sum c_a a(a) a(b) (l/2 cot a(x) a^vee + E)`, extended so that `E`
/// is the identity. Requires `l` real.
pub fn product(cfg: &Configuration, lambda: f64, pt: &SamplePoint, a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let fc = FloatConfig::new(cfg)?;
    let x = check_point(&fc, pt, POLE_GUARD)?;
    for v in [a, b] {
        if v.len() != fc.dim + 1 {
            return Err(Error::DimensionMismatch { expected: fc.dim + 1, found: v.len() });
        }
    }
    let to_c = |v: &[f64]| v.iter().map(|&t| C64::from(t)).collect::<Vec<_>>();
    Ok(product_c(&fc, C64::from(lambda), &x, &to_c(a), &to_c(b)).into_iter().map(|z| z.re).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssociativityReport {
    /// Max over points and basis triples of `|(ab)c - a(bc)| / (1 + |(ab)c| + |a(bc)|)`.
    pub residual: f64,
    pub pass: bool,
    /// The WDVV commutator residual at the same points.
    pub wdvv_residual: f64,
    pub wdvv_pass: bool,
    pub agrees: bool,
    /// Max of `|a*b - b*a|` (should vanish up to rounding).
    pub commutativity: f64,
    pub points: usize,
    pub seed: u64,
}

/// Associativity of `*` at seeded sample points. The product is trilinear, so
/// all triples of basis vectors of `V + U` are checked.
pub fn associativity_residual(cfg: &Configuration, lambda_sq: &Rational, opts: &WdvvOptions) -> Result<AssociativityReport> {
    let fc = FloatConfig::new(cfg)?;
    let pts = sample_points(cfg, opts.points, opts.seed, opts.guard)?;
    let l2 = to_f64(lambda_sq);
    let l = lambda_c(l2);
    let n1 = fc.dim + 1;
    let basis: Vec<Vec<C64>> =
        (0..n1).map(|i| (0..n1).map(|k| C64::from(if i == k { 1.0 } else { 0.0 })).collect()).collect();
    let norm = |v: &[C64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let (mut residual, mut wdvv, mut comm) = (0.0f64, 0.0f64, 0.0f64);
    for pt in &pts {
        let x = DVector::from_column_slice(&pt.x);
        let table: Vec<Vec<Vec<C64>>> =
            (0..n1).map(|i| (0..n1).map(|j| product_c(&fc, l, &x, &basis[i], &basis[j])).collect()).collect();
        for (i, row) in table.iter().enumerate() {
            for (j, ij) in row.iter().enumerate() {
                let d: Vec<C64> = ij.iter().zip(&table[j][i]).map(|(u, v)| u - v).collect();
                comm = comm.max(norm(&d));
                for k in 0..n1 {
                    let left = product_c(&fc, l, &x, ij, &basis[k]);
                    let right = product_c(&fc, l, &x, &basis[i], &table[j][k]);
                    let d: Vec<C64> = left.iter().zip(&right).map(|(u, v)| u - v).collect();
                    residual = residual.max(norm(&d) / (1.0 + norm(&left) + norm(&right)));
                }
            }
        }
        wdvv = wdvv.max(commutator_residual(&fc, &assemble(&fc, l2, &x)));
    }
    let pass = residual < opts.tol;
    let wdvv_pass = wdvv < opts.tol;
    Ok(AssociativityReport {
        residual,
        pass,
        wdvv_residual: wdvv,
        wdvv_pass,
        agrees: pass == wdvv_pass,
        commutativity: comm,
        points: pts.len(),
        seed: opts.seed,
    })
}

/// Max relative deviation between `F_ijk` (trigonometric part, `l = 1`) and a
/// central difference in `x_k` of `S_ij = sum c_a a_i a_j ln|sin a(x)|`.
pub fn finite_difference_check(cfg: &Configuration, pt: &SamplePoint, h: f64) -> Result<f64> {
    let fc = FloatConfig::new(cfg)?;
    let x = check_point(&fc, pt, POLE_GUARD)?;
    let n = fc.dim;
    let set = assemble(&fc, 1.0, &x);
    let second = |y: &DVector<f64>| -> DMatrix<f64> {
        let mut s = DMatrix::zeros(n, n);
        for (a, &c) in fc.covs.iter().zip(&fc.mults) {
            let w = c * a.dot(y).sin().abs().ln();
            s += w * a * a.transpose();
        }
        s
    };
    let scale = set.trig.iter().map(|m| m.amax()).fold(0.0, f64::max).max(1.0);
    let mut worst = 0.0f64;
    for k in 0..n {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[k] += h;
        xm[k] -= h;
        let fd = (second(&xp) - second(&xm)) / (2.0 * h);
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((fd[(i, j)] - set.trig[k][(i, j)]).abs() / scale);
            }
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangencyReport {
    /// Relative size of the component of the parent limit product normal to `W`.
    pub normal_component: f64,
    /// Relative difference between the child product and the parent limit
    /// product (projected to `W`).
    pub child_mismatch: f64,
    pub points: usize,
}

/// Compares the child product of a restriction with the limit of the parent
/// product, `sum_{a not in B} c_a a(u) a(v) (l/2 cot a(x) a^vee + E)`, at
/// points of `W`. The parent product is taken with the full dual `a^vee`; it
/// must already be tangent to `W`, and after mapping to `W` it must agree
/// with the product of the child.
pub fn tangency_check(
    parent: &Configuration,
    res: &RestrictionResult,
    lambda_sq: &Rational,
    points: usize,
    seed: u64,
) -> Result<TangencyReport> {
    let pf = FloatConfig::new(parent)?;
    let cf = FloatConfig::new(&res.child)?;
    let (n, d) = (pf.dim, cf.dim);
    let u = DMatrix::from_fn(n, d, |i, k| to_f64(&res.basis[k][i]));
    // G-orthogonal projection onto W.
    let gw = u.transpose() * &pf.gram * &u;
    let gw_inv = gw.try_inverse().ok_or(Error::DegenerateRestrictedGram)?;
    let proj = &u * &gw_inv * u.transpose() * &pf.gram;
    let l = lambda_c(to_f64(lambda_sq));
    let child_pts = sample_points(&res.child, points, seed, POLE_GUARD)?;
    let outside: Vec<usize> = (0..parent.len())
        .filter(|&i| res.basis.iter().any(|b| !parent.covector(i).eval(b).is_zero()))
        .collect();
    let embed = |v: &[C64]| -> Vec<C64> {
        let mut out: Vec<C64> = (0..n).map(|i| (0..d).map(|k| v[k] * u[(i, k)]).sum()).collect();
        out.push(v[d]);
        out
    };
    let norm = |v: &[C64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let (mut normal, mut mismatch) = (0.0f64, 0.0f64);
    for pt in &child_pts {
        let xi = DVector::from_column_slice(&pt.x);
        let x0 = &u * &xi;
        for a in 0..=d {
            for b in a..=d {
                let ea: Vec<C64> = (0..=d).map(|k| C64::from(if k == a { 1.0 } else { 0.0 })).collect();
                let eb: Vec<C64> = (0..=d).map(|k| C64::from(if k == b { 1.0 } else { 0.0 })).collect();
                let child = embed(&product_c(&cf, l, &xi, &ea, &eb));
                let (ua, ub) = (embed(&ea), embed(&eb));
                let mut limit = vec![C64::from(0.0); n + 1];
                for &i in &outside {
                    let (al, c, dual) = (&pf.covs[i], pf.mults[i], &pf.duals[i]);
                    let w = (0..n).map(|k| ua[k] * al[k]).sum::<C64>() * (0..n).map(|k| ub[k] * al[k]).sum::<C64>() * c;
                    let t = w * l * 0.5 / al.dot(&x0).tan();
                    for k in 0..n {
                        limit[k] += t * dual[k];
                    }
                    limit[n] += w;
                }
                for k in 0..n {
                    limit[k] += ua[n] * ub[k] + ub[n] * ua[k];
                }
                limit[n] += ua[n] * ub[n];
                let scale = 1.0 + norm(&limit);
                let projected: Vec<C64> = (0..n)
                    .map(|i| (0..n).map(|k| limit[k] * proj[(i, k)]).sum())
                    .chain(std::iter::once(limit[n]))
                    .collect();
                let off: Vec<C64> = limit.iter().zip(&projected).map(|(p, q)| p - q).collect();
                normal = normal.max(norm(&off) / scale);
                let diff: Vec<C64> = child.iter().zip(&projected).map(|(p, q)| p - q).collect();
                mismatch = mismatch.max(norm(&diff) / scale);
            }
        }
    }
    Ok(TangencyReport { normal_component: normal, child_mismatch: mismatch, points: child_pts.len() })
}
