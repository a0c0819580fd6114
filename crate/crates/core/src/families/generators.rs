//! Rational realizations of every family as positive halves.
//!
//! Covectors whose multiplicity is exactly zero are omitted.

use num_traits::{Signed, Zero};

use super::{Family, FamilySpec};
use crate::arith::{frac, rat, CoVec, Matrix, Rational};
use crate::configuration::{auto_functional, Configuration};
use crate::error::{Error, Result};

struct Builder {
    dim: usize,
    covs: Vec<CoVec>,
    mults: Vec<Rational>,
}

impl Builder {
    fn new(dim: usize) -> Self {
        Builder { dim, covs: Vec::new(), mults: Vec::new() }
    }

    fn push(&mut self, v: CoVec, m: Rational) {
        if !m.is_zero() {
            self.covs.push(v);
            self.mults.push(m);
        }
    }

    fn push_ints(&mut self, v: &[i64], m: &Rational) {
        self.push(CoVec::from_ints(v), m.clone());
    }

    fn finish(self, name: String) -> Result<Configuration> {
        Ok(Configuration::new(self.dim, self.covs, self.mults)?.with_name(name))
    }
}

fn unit(n: usize, i: usize) -> CoVec {
    CoVec::unit(n, i)
}

/// Covectors of `roots` with positive value on a generic functional.
pub fn positive_half(dim: usize, roots: &[CoVec]) -> Result<Vec<CoVec>> {
    let probe = Configuration::new(dim, roots.to_vec(), vec![rat(1); roots.len()])?;
    let f = auto_functional(&probe)?;
    Ok(roots.iter().filter(|r| r.eval(&f).is_positive()).cloned().collect())
}

/// The configuration of a family at the given parameters.
pub fn generate(spec: &FamilySpec) -> Result<Configuration> {
    spec.validate()?;
    let n = spec.rank;
    let label = spec.label();
    match spec.family {
        Family::A => a_series(n, &spec.param("t")?, label),
        Family::B => bc(n, &spec.param("p")?, &rat(0), &spec.param("q")?, label),
        Family::C => bc(n, &rat(0), &spec.param("q")?, &spec.param("p")?, label),
        Family::D => bc(n, &rat(0), &rat(0), &spec.param("t")?, label),
        Family::BC => bc(n, &spec.param("r")?, &spec.param("s")?, &spec.param("q")?, label),
        Family::E6 | Family::E7 | Family::E8 => e_series(spec.family, &spec.param("t")?, label),
        Family::F4 => f4(&spec.param("r")?, &spec.param("s")?, label),
        Family::G2 => g2(&spec.param("p")?, &spec.param("q")?, label),
        Family::FourDim | Family::FourDimA1 | Family::FourDimA2 => four_dim(spec, label),
        Family::Planar6 => planar6(&spec.param("a")?, &spec.param("b")?, label),
        Family::Planar8 => planar8(&spec.param("a")?, &spec.param("b")?, label),
        Family::Planar9 => planar9(&spec.param("a")?, &spec.param("b")?, label),
        Family::Planar10 => planar10(&spec.param("a")?, label),
        Family::RestrictedBC | Family::RestrictedA => restricted_family(spec),
    }
}

/// `e^i - e^j` (`i < j <= N+1`) on the sum-zero hyperplane, written in the
/// basis `v_k = e_k - e_{N+1}`.
fn a_series(n: usize, t: &Rational, label: String) -> Result<Configuration> {
    let mut b = Builder::new(n);
    for i in 0..=n {
        for j in i + 1..=n {
            let v: Vec<Rational> = (0..n)
                .map(|k| {
                    // e^x(v_k) = [x == k] - [x == N+1]
                    let ei = |x: usize| i64::from(x == k) - i64::from(x == n);
                    rat(ei(i) - ei(j))
                })
                .collect();
            b.push(CoVec(v), t.clone());
        }
    }
    b.finish(format!("{label} basis e_k-e_{}", n + 1))
}

fn bc(n: usize, r: &Rational, s: &Rational, q: &Rational, label: String) -> Result<Configuration> {
    let mut b = Builder::new(n);
    for i in 0..n {
        b.push(unit(n, i), r.clone());
    }
    for i in 0..n {
        b.push(unit(n, i).scale(&rat(2)), s.clone());
    }
    for i in 0..n {
        for j in i + 1..n {
            b.push(unit(n, i).sub(&unit(n, j)), q.clone());
            b.push(unit(n, i).add(&unit(n, j)), q.clone());
        }
    }
    b.finish(label)
}

/// The 240 roots of `E8`: `+-e_i +- e_j` and `(1/2)(+-1, ..., +-1)` with an
/// even number of minus signs.
pub(crate) fn e8_roots() -> Vec<CoVec> {
    let mut roots = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0i64; 8];
                v[i] = si;
                v[j] = sj;
                roots.push(CoVec::from_ints(&v));
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let v = (0..8).map(|k| if mask >> k & 1 == 1 { frac(-1, 2) } else { frac(1, 2) }).collect();
            roots.push(CoVec(v));
        }
    }
    roots
}

/// `E7` and `E6` are the `E8` roots orthogonal to `e7+e8`, respectively to
/// `e6+e7` and `e7+e8`; a root is recorded by its inner products with a
/// basis of the orthogonal complement.
fn e_series(family: Family, t: &Rational, label: String) -> Result<Configuration> {
    let constraints: Vec<Vec<i64>> = match family {
        Family::E8 => vec![],
        Family::E7 => vec![vec![0, 0, 0, 0, 0, 0, 1, 1]],
        Family::E6 => vec![vec![0, 0, 0, 0, 0, 1, 1, 0], vec![0, 0, 0, 0, 0, 0, 1, 1]],
        _ => unreachable!(),
    };
    let all = e8_roots();
    let roots: Vec<CoVec> = all
        .into_iter()
        .filter(|r| constraints.iter().all(|c| r.eval(&CoVec::from_ints(c).0).is_zero()))
        .collect();
    let dim = 8 - constraints.len();
    let coords: Vec<CoVec> = if constraints.is_empty() {
        roots
    } else {
        let c = Matrix::from_rows(constraints.iter().map(|c| CoVec::from_ints(c).0).collect());
        let basis = c.nullspace();
        roots.iter().map(|r| CoVec(basis.iter().map(|u| r.eval(u)).collect())).collect()
    };
    let pos = positive_half(dim, &coords)?;
    let mut b = Builder::new(dim);
    for v in pos {
        b.push(v, t.clone());
    }
    b.finish(label)
}

/// Short roots `e^i`, `(1/2)(e^1 +- e^2 +- e^3 +- e^4)` with multiplicity `s`,
/// long roots `e^i +- e^j` with multiplicity `r`.
fn f4(r: &Rational, s: &Rational, label: String) -> Result<Configuration> {
    let mut b = Builder::new(4);
    for i in 0..4 {
        b.push(unit(4, i), s.clone());
    }
    for i in 0..4 {
        for j in i + 1..4 {
            b.push(unit(4, i).sub(&unit(4, j)), r.clone());
            b.push(unit(4, i).add(&unit(4, j)), r.clone());
        }
    }
    for mask in 0u32..8 {
        let v: Vec<Rational> = std::iter::once(frac(1, 2))
            .chain((0..3).map(|k| if mask >> k & 1 == 1 { frac(-1, 2) } else { frac(1, 2) }))
            .collect();
        b.push(CoVec(v), s.clone());
    }
    b.finish(label)
}

/// Short roots `e_i - e_j` (multiplicity `p`) and long roots
/// `+-(2e_i - e_j - e_k)` (multiplicity `q`) in the sum-zero plane of three
/// coordinates, written in the basis `v_k = e_k - e_3`.
fn g2(p: &Rational, q: &Rational, label: String) -> Result<Configuration> {
    let mut roots3: Vec<(Vec<i64>, bool)> = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut v = vec![0; 3];
                v[i] = 1;
                v[j] = -1;
                roots3.push((v, false));
            }
        }
        let mut v = vec![-1; 3];
        v[i] = 2;
        roots3.push((v.clone(), true));
        roots3.push((v.iter().map(|x| -x).collect(), true));
    }
    let to_basis = |v: &[i64]| CoVec::from_ints(&[v[0] - v[2], v[1] - v[2]]);
    let all: Vec<CoVec> = roots3.iter().map(|(v, _)| to_basis(v)).collect();
    let pos = positive_half(2, &all)?;
    let mut b = Builder::new(2);
    for (v, long) in &roots3 {
        let c = to_basis(v);
        if pos.contains(&c) {
            b.push(c, if *long { q.clone() } else { p.clone() });
        }
    }
    b.finish(format!("{label} basis e_k-e_3"))
}

fn four_dim_pq(spec: &FamilySpec) -> Result<(Rational, Rational, Rational, Rational)> {
    let r = spec.param("r")?;
    let s = spec.param("s")?;
    let denom = rat(4) * &r + &s;
    if denom.is_zero() {
        return Err(Error::UnsupportedParams("4r+s must be nonzero".into()));
    }
    let p = match spec.params.get("p") {
        Some(p) => p.clone(),
        None => rat(2) * &r + &s,
    };
    let q = match spec.params.get("q") {
        Some(q) => q.clone(),
        None => &s * (&s - rat(2) * &r) / denom,
    };
    Ok((p, q, r, s))
}

fn four_dim(spec: &FamilySpec, label: String) -> Result<Configuration> {
    let (p, q, r, s) = four_dim_pq(spec)?;
    let h = frac(1, 2);
    match spec.family {
        Family::FourDim => {
            let mut b = Builder::new(4);
            for i in 0..3 {
                b.push(unit(4, i), p.clone());
            }
            b.push(unit(4, 3), q.clone());
            for i in 0..3 {
                for j in i + 1..3 {
                    b.push(unit(4, i).sub(&unit(4, j)), r.clone());
                    b.push(unit(4, i).add(&unit(4, j)), r.clone());
                }
            }
            for mask in 0u32..8 {
                let v: Vec<Rational> = std::iter::once(h.clone())
                    .chain((0..3).map(|k| if mask >> k & 1 == 1 { -h.clone() } else { h.clone() }))
                    .collect();
                b.push(CoVec(v), s.clone());
            }
            b.finish(label)
        }
        Family::FourDimA1 => {
            let mut b = Builder::new(3);
            b.push_ints(&[2, 0, 0], &r);
            b.push_ints(&[1, 0, 0], &(rat(2) * &p));
            b.push_ints(&[0, 1, 0], &p);
            b.push_ints(&[0, 0, 1], &q);
            b.push_ints(&[1, 1, 0], &(rat(2) * &r));
            b.push_ints(&[1, -1, 0], &(rat(2) * &r));
            b.push(CoVec(vec![rat(0), h.clone(), h.clone()]), rat(2) * &s);
            b.push(CoVec(vec![rat(0), h.clone(), -h.clone()]), rat(2) * &s);
            for (a, c) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                b.push(CoVec(vec![rat(1), &h * rat(a), &h * rat(c)]), s.clone());
            }
            b.finish(label)
        }
        Family::FourDimA2 => {
            let mut b = Builder::new(3);
            for i in 0..3 {
                b.push(unit(3, i), &p + &s);
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    b.push(unit(3, i).add(&unit(3, j)), &r + &s);
                }
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    b.push(unit(3, i).sub(&unit(3, j)), r.clone());
                }
            }
            b.push_ints(&[1, 1, 1], &(&q + &s));
            b.finish(label)
        }
        _ => unreachable!(),
    }
}

fn planar6(a: &Rational, b_: &Rational, label: String) -> Result<Configuration> {
    let d = rat(4) * a - rat(3) * b_;
    if d.is_zero() {
        return Err(Error::UnsupportedParams("4a-3b must be nonzero".into()));
    }
    let mut b = Builder::new(2);
    b.push_ints(&[1, 0], &(rat(4) * a));
    b.push_ints(&[2, 0], a);
    b.push_ints(&[0, 1], &(rat(2) * a));
    b.push_ints(&[1, 1], &(rat(2) * a));
    b.push_ints(&[1, -1], &(rat(2) * (a - b_)));
    b.push_ints(&[2, 1], &(rat(2) * a * b_ / d));
    b.finish(label)
}

fn planar8(a: &Rational, b_: &Rational, label: String) -> Result<Configuration> {
    let mut b = Builder::new(2);
    b.push_ints(&[1, 0], &(rat(2) * a));
    b.push_ints(&[2, 0], &(a / rat(2) - b_ / rat(4)));
    b.push_ints(&[0, 1], &(rat(2) * b_));
    b.push_ints(&[0, 2], a);
    b.push_ints(&[1, 1], b_);
    b.push_ints(&[1, -1], b_);
    b.push_ints(&[1, 2], &(a - b_ / rat(2)));
    b.push_ints(&[1, -2], &(a - b_ / rat(2)));
    b.finish(label)
}

fn planar9(a: &Rational, b_: &Rational, label: String) -> Result<Configuration> {
    let mut b = Builder::new(2);
    let h = frac(1, 2);
    b.push_ints(&[1, 0], a);
    b.push_ints(&[2, 0], b_);
    b.push_ints(&[0, 1], &(a / rat(3)));
    b.push_ints(&[1, 1], b_);
    b.push_ints(&[1, -1], b_);
    b.push(CoVec(vec![frac(3, 2), h.clone()]), a / rat(3));
    b.push(CoVec(vec![frac(3, 2), -h.clone()]), a / rat(3));
    b.push(CoVec(vec![h.clone(), h.clone()]), a.clone());
    b.push(CoVec(vec![h.clone(), -h]), a.clone());
    b.finish(label)
}

fn planar10(a: &Rational, label: String) -> Result<Configuration> {
    let mut b = Builder::new(2);
    b.push_ints(&[1, 0], &(rat(6) * a));
    b.push_ints(&[2, 0], &(frac(3, 2) * a));
    b.push_ints(&[0, 1], &(rat(6) * a));
    b.push_ints(&[0, 2], &(frac(3, 2) * a));
    b.push_ints(&[1, 1], &(rat(4) * a));
    b.push_ints(&[1, -1], &(rat(4) * a));
    b.push_ints(&[1, 2], a);
    b.push_ints(&[1, -2], a);
    b.push_ints(&[2, 1], a);
    b.push_ints(&[2, -1], a);
    b.finish(label)
}

/// The closed-form multiplicity tables of restricted `BC` and `A` systems,
/// built directly (not via restriction).
///
/// `BC(r,s,q; m)`: `f^i` with `r m_i`, `2f^i` with `s m_i + q m_i (m_i - 1)/2`,
/// `f^i +- f^j` with `q m_i m_j`. `A(t; m)`: `f^i - f^j` with `t m_i m_j` on
/// the hyperplane `sum m_i y_i = 0` (rank one less than the partition length).
pub fn restricted_family(spec: &FamilySpec) -> Result<Configuration> {
    spec.validate()?;
    let m = &spec.partition;
    let n = m.len();
    let label = spec.label();
    match spec.family {
        Family::RestrictedBC => {
            let (r, s, q) = (spec.param("r")?, spec.param("s")?, spec.param("q")?);
            let mut b = Builder::new(n);
            for (i, mi) in m.iter().enumerate() {
                b.push(unit(n, i), &r * mi);
            }
            for (i, mi) in m.iter().enumerate() {
                b.push(unit(n, i).scale(&rat(2)), &s * mi + &q * mi * (mi - rat(1)) / rat(2));
            }
            for i in 0..n {
                for j in i + 1..n {
                    let c = &q * &m[i] * &m[j];
                    b.push(unit(n, i).add(&unit(n, j)), c.clone());
                    b.push(unit(n, i).sub(&unit(n, j)), c);
                }
            }
            b.finish(label)
        }
        Family::RestrictedA => {
            // Points of the restriction satisfy sum m_i y_i = 0; use the basis
            // w_k = m_n e_k - m_k e_n (k < n) of that hyperplane.
            let t = spec.param("t")?;
            let last = n - 1;
            let mut b = Builder::new(last);
            for i in 0..n {
                for j in i + 1..n {
                    let f = |x: usize, k: usize| -> Rational {
                        let mut v = rat(0);
                        if x == k {
                            v += &m[last];
                        }
                        if x == last {
                            v -= &m[k];
                        }
                        v
                    };
                    let v: Vec<Rational> = (0..last).map(|k| f(i, k) - f(j, k)).collect();
                    b.push(CoVec(v), &t * &m[i] * &m[j]);
                }
            }
            b.finish(format!("{label} basis m_n e_k - m_k e_n"))
        }
        other => Err(Error::UnsupportedParams(format!("{other} is not a restricted family"))),
    }
}
