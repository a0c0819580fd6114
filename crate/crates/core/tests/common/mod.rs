//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trigvee_core::families::{generate, Family, FamilySpec};
use trigvee_core::{frac, rat, restrict, subsystem, CoVec, Configuration, Rational, RestrictionResult};

pub fn spec(f: Family, rank: usize, params: &[(&str, Rational)]) -> FamilySpec {
    params.iter().fold(FamilySpec::new(f, rank), |s, (k, v)| s.with(k, v.clone()))
}

pub fn gen(f: Family, rank: usize, params: &[(&str, Rational)]) -> Configuration {
    generate(&spec(f, rank, params)).unwrap()
}

/// A random nonzero rational `n/d` with `|n| <= 9`, `1 <= d <= 6`.
pub fn random_rational(rng: &mut ChaCha8Rng, allow_negative: bool) -> Rational {
    loop {
        let lo = if allow_negative { -9 } else { 1 };
        let n: i64 = rng.gen_range(lo..=9);
        if n != 0 {
            return frac(n, rng.gen_range(1..=6));
        }
    }
}

/// Covectors with their first nonzero coordinate made positive and equal
/// ones merged, as a sorted map: a canonical form up to signs and order.
pub fn canonical(cfg: &Configuration) -> BTreeMap<CoVec, Rational> {
    let mut out: BTreeMap<CoVec, Rational> = BTreeMap::new();
    for (a, c) in cfg.iter() {
        let lead = a.coords().iter().find(|x| !x.is_zero()).unwrap();
        let a = if lead.is_negative() { a.neg() } else { a.clone() };
        *out.entry(a).or_insert_with(Rational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn index_of(cfg: &Configuration, v: &CoVec) -> usize {
    let neg = v.neg();
    cfg.covectors().iter().position(|a| a == v || *a == neg).unwrap_or_else(|| panic!("{v:?} not in configuration"))
}

/// Pairs `(a, a+1)` of consecutive coordinates inside each block of `m`.
pub fn block_neighbours(m: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for &len in m {
        out.extend((start..start + len - 1).map(|a| (a, a + 1)));
        start += len;
    }
    out
}

/// All compositions of `n` (ordered partitions into positive parts).
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn restrict_along(cfg: &Configuration, kernel: &[CoVec]) -> RestrictionResult {
    let idx: Vec<usize> = kernel.iter().map(|v| index_of(cfg, v)).collect();
    restrict(cfg, &subsystem(cfg, &idx).unwrap()).unwrap()
}

/// `BC_N` restricted to the subspace where coordinates agree within blocks of `m`.
pub fn bc_partition(n: usize, r: &Rational, s: &Rational, q: &Rational, m: &[usize]) -> (Configuration, RestrictionResult) {
    let cfg = gen(Family::BC, n, &[("r", r.clone()), ("s", s.clone()), ("q", q.clone())]);
    let kernel: Vec<CoVec> =
        block_neighbours(m).into_iter().map(|(a, b)| CoVec::unit(n, a).sub(&CoVec::unit(n, b))).collect();
    let res = restrict_along(&cfg, &kernel);
    (cfg, res)
}

/// `e^i - e^j` of `A_N` in the coordinates of the generator (basis
/// `e_k - e_{N+1}` of the sum-zero hyperplane).
pub fn a_root(n: usize, i: usize, j: usize) -> CoVec {
    let e = |x: usize, k: usize| -> i64 { (x == k) as i64 - (x == n) as i64 };
    CoVec::from_ints(&(0..n).map(|k| e(i, k) - e(j, k)).collect::<Vec<_>>())
}

pub fn a_partition(n: usize, t: &Rational, m: &[usize]) -> (Configuration, RestrictionResult) {
    let cfg = gen(Family::A, n, &[("t", t.clone())]);
    let kernel: Vec<CoVec> = block_neighbours(m).into_iter().map(|(a, b)| a_root(n, a, b)).collect();
    let res = restrict_along(&cfg, &kernel);
    (cfg, res)
}

/// Indices of three roots of `cfg` forming an `A_3` chain (`a.b = b.c = -1`,
/// `a.c = 0` for the invariant inner product, up to scale).
pub fn a3_chain(cfg: &Configuration) -> Vec<usize> {
    let d = trigvee_core::configuration::Duality::new(cfg).unwrap();
    let n = cfg.len();
    let norm = d.inner(cfg.covector(0), cfg.covector(0));
    let ip = |i: usize, j: usize| d.inner(cfg.covector(i), cfg.covector(j)) / &norm * rat(2);
    for a in 0..n {
        for b in 0..n {
            if ip(a, b).abs() != rat(1) {
                continue;
            }
            for c in 0..n {
                if a != c && ip(a, c).is_zero() && ip(b, c).abs() == rat(1) {
                    return vec![a, b, c];
                }
            }
        }
    }
    panic!("no A3 chain");
}

pub fn e7_along_a3() -> (Configuration, RestrictionResult) {
    let cfg = gen(Family::E7, 7, &[("t", rat(1))]);
    let idx = a3_chain(&cfg);
    let sub = subsystem(&cfg, &idx).unwrap();
    assert_eq!(sub.member_indices.len(), 6, "A3 has six positive roots");
    let res = restrict(&cfg, &sub).unwrap();
    (cfg, res)
}

/// Checks the eigen-decomposition of `M` for the subsystem spanned by `idx`
/// against direct computation. Returns `None` for isotropic subsystems.
pub fn check_subsystem(cfg: &Configuration, idx: &[usize]) -> Option<Result<(), String>> {
    use trigvee_core::configuration::Duality;
    use trigvee_core::{m_operator, vee_check, Matrix};

    let sub = subsystem(cfg, idx).unwrap();
    if sub.is_isotropic {
        return None;
    }
    let fail = |what: &str| Some(Err(format!("{what} (span {idx:?})")));
    let standalone = sub.standalone().unwrap();
    if !vee_check(&standalone).unwrap().is_vee {
        return fail("standalone subsystem is not a vee-system");
    }
    let dec = match m_operator(cfg, &sub) {
        Ok(d) => d,
        Err(e) => return Some(Err(format!("{e} (span {idx:?})"))),
    };
    if dec.eigenvalues.iter().any(|l| l.is_zero()) {
        return fail("zero eigenvalue");
    }
    let all: Vec<Vec<Rational>> = dec.eigenspaces.iter().flatten().cloned().collect();
    if all.len() != sub.rank() || Matrix::from_rows(all).rank() != sub.rank() {
        return fail("eigenspaces do not decompose the dual of the span");
    }
    let n = cfg.dim();
    let g_a = |u: &[Rational], v: &[Rational]| -> Rational { cfg.iter().map(|(a, c)| c * a.eval(u) * a.eval(v)).sum() };
    let g_b = |u: &[Rational], v: &[Rational]| -> Rational {
        sub.member_indices.iter().map(|&i| cfg.multiplicity(i) * cfg.covector(i).eval(u) * cfg.covector(i).eval(v)).sum()
    };
    let duality = Duality::new(cfg).unwrap();
    let m_apply = |v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for &i in &sub.member_indices {
            let w = cfg.multiplicity(i) * cfg.covector(i).eval(v);
            for (o, d) in out.iter_mut().zip(duality.dual(cfg.covector(i))) {
                *o += &w * d;
            }
        }
        out
    };
    for u in &sub.dual_basis {
        for v in &sub.dual_basis {
            if g_a(u, &m_apply(v)) != g_b(u, v) {
                return fail("G_A(u, M v) differs from G_B(u, v)");
            }
        }
    }
    let units: Vec<Vec<Rational>> = (0..n).map(|k| CoVec::unit(n, k).0).collect();
    for (l, space) in dec.eigenvalues.iter().zip(&dec.eigenspaces) {
        for u in space {
            for v in &units {
                if g_b(u, v) != l * g_a(u, v) {
                    return fail("G_B is not a multiple of G_A on an eigenspace");
                }
            }
        }
    }
    for (a, sa) in dec.eigenspaces.iter().enumerate() {
        for sb in &dec.eigenspaces[a + 1..] {
            for u in sa {
                for v in sb {
                    if !g_b(u, v).is_zero() {
                        return fail("distinct eigenspaces are not G_B-orthogonal");
                    }
                }
            }
        }
    }
    let local = Duality::new(&standalone).unwrap();
    for &(i, pos) in &dec.member_eigenvalue {
        let b = cfg.covector(i);
        let inside = local.dual(&sub.member_coords(b));
        let outside = sub.vector_coords(&duality.dual(b)).unwrap();
        let l = &dec.eigenvalues[pos];
        if inside.iter().zip(&outside).any(|(x, y)| x * l != *y) {
            return fail("subsystem dual is not the rescaled dual");
        }
    }
    Some(Ok(()))
}

/// `count` random non-isotropic subsystems of rank 1 to 4, each checked.
pub fn random_subsystems(cfg: &Configuration, count: usize, seed: u64) -> Result<usize, String> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut tries = 0;
    while done < count {
        tries += 1;
        if tries > 20 * count {
            return Err(format!("only {done} non-isotropic subsystems in {tries} tries"));
        }
        let k = rng.gen_range(1..=4);
        let idx: Vec<usize> = (0..k).map(|_| rng.gen_range(0..cfg.len())).collect();
        match check_subsystem(cfg, &idx) {
            Some(Ok(())) => done += 1,
            Some(Err(e)) => return Err(e),
            None => {}
        }
    }
    Ok(done)
}
