//! The pair (covectors, multiplicities) and the data derived from it: the
//! weighted Gram form, dual vectors, collinearity classes and positive halves.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{invert, CoVec, Matrix, Rational, SymMat};
use crate::error::{Error, Result};

/// A finite list of nonzero covectors in `V*` with rational multiplicities.
///
/// Library routines expect positive halves (as every generated family is);
/// `g1` and the series checks use the list as supplied, `g2` normalizes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    dim: usize,
    covectors: Vec<CoVec>,
    multiplicities: Vec<Rational>,
    pub name: Option<String>,
}

impl Configuration {
    pub fn new(dim: usize, covectors: Vec<CoVec>, multiplicities: Vec<Rational>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfig("dimension must be positive".into()));
        }
        if covectors.len() != multiplicities.len() {
            return Err(Error::InvalidConfig(format!(
                "{} covectors but {} multiplicities",
                covectors.len(),
                multiplicities.len()
            )));
        }
        for (i, c) in covectors.iter().enumerate() {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
            }
            if c.is_zero() {
                return Err(Error::InvalidConfig(format!("covector {i} is zero")));
            }
        }
        Ok(Configuration { dim, covectors, multiplicities, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn covectors(&self) -> &[CoVec] {
        &self.covectors
    }

    pub fn multiplicities(&self) -> &[Rational] {
        &self.multiplicities
    }

    pub fn covector(&self, i: usize) -> &CoVec {
        &self.covectors[i]
    }

    pub fn multiplicity(&self, i: usize) -> &Rational {
        &self.multiplicities[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CoVec, &Rational)> {
        self.covectors.iter().zip(&self.multiplicities)
    }

    /// Matrix whose rows are the covectors.
    pub fn covector_matrix(&self) -> Matrix {
        Matrix::from_rows(self.covectors.iter().map(|c| c.0.clone()).collect())
    }

    /// Same configuration with every covector replaced by `alpha * t` (row
    /// vector times matrix), i.e. the pull-back along the linear map `t`.
    pub fn transform(&self, t: &Matrix) -> Result<Configuration> {
        if t.rows() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: t.rows() });
        }
        let tt = t.transpose();
        let covs = self.covectors.iter().map(|c| CoVec(tt.mul_vec(c.coords()))).collect();
        let mut out = Configuration::new(t.cols(), covs, self.multiplicities.clone())?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// Multiplicities scaled by `k`.
    pub fn scale_multiplicities(&self, k: &Rational) -> Configuration {
        let mut out = self.clone();
        out.multiplicities = self.multiplicities.iter().map(|m| m * k).collect();
        out
    }
}

/// `G = sum c_a a (x) a`.
pub fn gram(cfg: &Configuration) -> SymMat {
    let n = cfg.dim();
    let mut g = Matrix::zeros(n, n);
    for (a, c) in cfg.iter() {
        let v = a.coords();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            let ci = c * &v[i];
            for j in i..n {
                if !v[j].is_zero() {
                    g[(i, j)] += &ci * &v[j];
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            g[(i, j)] = g[(j, i)].clone();
        }
    }
    SymMat::new(g).expect("gram is symmetric by construction")
}

/// The Gram form together with its inverse, for repeated dual computations.
#[derive(Clone, Debug)]
pub struct Duality {
    pub gram: SymMat,
    pub inverse: SymMat,
}

impl Duality {
    pub fn new(cfg: &Configuration) -> Result<Self> {
        let gram = gram(cfg);
        let inverse = invert(&gram)?;
        Ok(Duality { gram, inverse })
    }

    /// `gamma^vee = G^{-1} gamma^T`.
    pub fn dual(&self, gamma: &CoVec) -> Vec<Rational> {
        self.inverse.matrix().mul_vec(gamma.coords())
    }

    /// `G(u, v)`.
    pub fn pairing(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.gram.form(u, v)
    }

    /// `a(b^vee) = a G^{-1} b^T`.
    pub fn inner(&self, a: &CoVec, b: &CoVec) -> Rational {
        self.inverse.form(a.coords(), b.coords())
    }
}

/// The unique `gamma^vee` with `G(gamma^vee, v) = gamma(v)` for all `v`.
pub fn dual(cfg: &Configuration, gamma: &CoVec) -> Result<Vec<Rational>> {
    if gamma.dim() != cfg.dim() {
        return Err(Error::DimensionMismatch { expected: cfg.dim(), found: gamma.dim() });
    }
    Ok(Duality::new(cfg)?.dual(gamma))
}

/// A maximal set of mutually proportional covectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearClass {
    /// Smallest index in the class.
    pub anchor: usize,
    /// `(index, k)` with `covector[index] = k * covector[anchor]`, by index.
    pub members: Vec<(usize, Rational)>,
}

impl CollinearClass {
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|(i, _)| *i)
    }
}

/// Primitive integer direction with positive leading entry; equal for two
/// covectors exactly when they are proportional.
pub(crate) fn direction_key(a: &CoVec) -> Vec<BigInt> {
    a.primitive()
}

/// Partition of the indices into proportionality classes, ordered by anchor.
pub fn collinear_classes(cfg: &Configuration) -> Vec<CollinearClass> {
    let mut by_dir: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut classes: Vec<CollinearClass> = Vec::new();
    for (i, a) in cfg.covectors().iter().enumerate() {
        let key = direction_key(a);
        match by_dir.get(&key) {
            Some(&k) => {
                let anchor = classes[k].anchor;
                let ratio = a.ratio_to(cfg.covector(anchor)).expect("same direction");
                classes[k].members.push((i, ratio));
            }
            None => {
                by_dir.insert(key, classes.len());
                classes.push(CollinearClass { anchor: i, members: vec![(i, Rational::one())] });
            }
        }
    }
    classes
}

/// `C = sum_{g in subset} c_g k_g^2` with `g = k_g * covector[anchor]`.
pub fn c_delta(cfg: &Configuration, subset: &[usize], anchor: usize) -> Result<Rational> {
    let a0 = cfg.covector(anchor);
    let mut acc = Rational::zero();
    for &i in subset {
        let k = cfg.covector(i).ratio_to(a0).ok_or(Error::MixedClass)?;
        acc += cfg.multiplicity(i) * &k * &k;
    }
    Ok(acc)
}

/// Which functional decides positivity in [`normalize_positive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functional {
    /// `(1, e, e^2, ...)` with `e = 1/P` for increasing primes `P` until generic.
    Auto,
    /// A vector in `V`; covectors are flipped to make their value positive.
    Given(Vec<Rational>),
}

/// Result of [`normalize_positive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub config: Configuration,
    /// Covectors whose merged multiplicity summed to zero and were dropped.
    pub dropped_zero: Vec<CoVec>,
    /// The functional actually used.
    pub functional: Vec<Rational>,
}

impl Normalized {
    pub fn has_zero_warning(&self) -> bool {
        !self.dropped_zero.is_empty()
    }
}

fn is_generic(cfg: &Configuration, f: &[Rational]) -> bool {
    cfg.covectors().iter().all(|a| !a.eval(f).is_zero())
}

/// The first generic functional of the form `(1, e, e^2, ...)`, `e = 1/P`.
pub fn auto_functional(cfg: &Configuration) -> Result<Vec<Rational>> {
    search_functional(cfg, |eps| powers(eps, cfg.dim()))
}

/// `(1, e, ..., e^(n-1))`.
pub fn powers(eps: &Rational, n: usize) -> Vec<Rational> {
    let mut f = Vec::with_capacity(n);
    let mut pow = Rational::one();
    for _ in 0..n {
        f.push(pow.clone());
        pow *= eps;
    }
    f
}

/// The first generic functional `make(1/P)` over increasing primes `P`.
/// `make` should be polynomial in `e` with coordinates of distinct degrees,
/// so that each covector vanishes for finitely many `e`.
pub fn search_functional(cfg: &Configuration, make: impl Fn(&Rational) -> Vec<Rational>) -> Result<Vec<Rational>> {
    if cfg.covectors().iter().any(CoVec::is_zero) {
        return Err(Error::NoGenericFunctional);
    }
    let mut p: u64 = 2;
    for _ in 0..10_000 {
        let f = make(&Rational::new(BigInt::one(), BigInt::from(p)));
        if is_generic(cfg, &f) {
            return Ok(f);
        }
        p = next_prime(p);
    }
    Err(Error::NoGenericFunctional)
}

fn next_prime(p: u64) -> u64 {
    (p + 1..).find(|&q| (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)).unwrap()
}

/// Flips every covector to the positive side of `functional`, merges exact
/// duplicates (summing multiplicities, first occurrence keeps its slot) and
/// drops merged multiplicities that vanish.
pub fn normalize_positive(cfg: &Configuration, functional: &Functional) -> Result<Normalized> {
    let f = match functional {
        Functional::Auto => auto_functional(cfg)?,
        Functional::Given(f) => {
            if f.len() != cfg.dim() {
                return Err(Error::DimensionMismatch { expected: cfg.dim(), found: f.len() });
            }
            if !is_generic(cfg, f) {
                return Err(Error::NoGenericFunctional);
            }
            f.clone()
        }
    };
    let mut slot: HashMap<CoVec, usize> = HashMap::new();
    let mut covs: Vec<CoVec> = Vec::new();
    let mut mults: Vec<Rational> = Vec::new();
    for (a, c) in cfg.iter() {
        let a = if a.eval(&f).is_negative() { a.neg() } else { a.clone() };
        match slot.get(&a) {
            Some(&k) => mults[k] += c,
            None => {
                slot.insert(a.clone(), covs.len());
                covs.push(a);
                mults.push(c.clone());
            }
        }
    }
    let mut dropped = Vec::new();
    let mut kept_c = Vec::new();
    let mut kept_m = Vec::new();
    for (a, m) in covs.into_iter().zip(mults) {
        if m.is_zero() {
            dropped.push(a);
        } else {
            kept_c.push(a);
            kept_m.push(m);
        }
    }
    let mut config = Configuration::new(cfg.dim(), kept_c, kept_m)?;
    config.name = cfg.name.clone();
    Ok(Normalized { config, dropped_zero: dropped, functional: f })
}
