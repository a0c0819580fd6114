//! Realization-independent root data: simple root norms, highest root
//! coefficients and the census of positive roots by norm.

use super::Family;
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    /// `<a, a>` of the roots in this class.
    pub norm: Rational,
    /// Number of positive roots in the class.
    pub count: usize,
    pub label: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    pub family: Family,
    pub rank: usize,
    /// `<a_i, a_i>` for the simple roots (empty for `BC`).
    pub simple_norms: Vec<Rational>,
    /// `theta = sum n_i a_i` (empty for `BC`).
    pub highest: Vec<i64>,
    pub theta_norm: Rational,
    /// Positive roots grouped by norm, increasing norm.
    pub census: Vec<CensusEntry>,
}

impl RootData {
    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E6 | Family::E7 | Family::E8)
    }

    pub fn positive_roots(&self) -> usize {
        self.census.iter().map(|c| c.count).sum()
    }

    /// Root data in the standard normalization (long roots of norm 2, except
    /// `C_N` whose long roots `2e^i` have norm 4 and `G2` with norms 1 and 3).
    pub fn for_family(family: Family, rank: usize) -> Result<RootData> {
        let n = rank;
        let two = || rat(2);
        let simply_laced = |highest: Vec<i64>, count: usize| RootData {
            family,
            rank: n,
            simple_norms: vec![two(); n],
            highest,
            theta_norm: two(),
            census: vec![CensusEntry { norm: two(), count, label: "root" }],
        };
        let unsupported = || Error::UnsupportedParams(format!("no root data for {family} of rank {rank}"));
        Ok(match family {
            Family::A if n >= 1 => simply_laced(vec![1; n], n * (n + 1) / 2),
            Family::D if n >= 3 => {
                let mut h = vec![1];
                h.extend(std::iter::repeat_n(2, n - 3));
                h.extend([1, 1]);
                simply_laced(h, n * (n - 1))
            }
            Family::E6 => simply_laced(vec![1, 2, 2, 3, 2, 1], 36),
            Family::E7 => simply_laced(vec![2, 2, 3, 4, 3, 2, 1], 63),
            Family::E8 => simply_laced(vec![2, 3, 4, 6, 5, 4, 3, 2], 120),
            Family::B if n >= 2 => {
                let mut norms = vec![two(); n - 1];
                norms.push(rat(1));
                let mut h = vec![1];
                h.extend(std::iter::repeat_n(2, n - 1));
                RootData {
                    family,
                    rank: n,
                    simple_norms: norms,
                    highest: h,
                    theta_norm: two(),
                    census: vec![
                        CensusEntry { norm: rat(1), count: n, label: "short" },
                        CensusEntry { norm: two(), count: n * (n - 1), label: "long" },
                    ],
                }
            }
            Family::C if n >= 2 => {
                let mut norms = vec![two(); n - 1];
                norms.push(rat(4));
                let mut h = vec![2; n - 1];
                h.push(1);
                RootData {
                    family,
                    rank: n,
                    simple_norms: norms,
                    highest: h,
                    theta_norm: rat(4),
                    census: vec![
                        CensusEntry { norm: two(), count: n * (n - 1), label: "short" },
                        CensusEntry { norm: rat(4), count: n, label: "long" },
                    ],
                }
            }
            Family::BC if n >= 1 => RootData {
                family,
                rank: n,
                simple_norms: vec![],
                highest: vec![],
                theta_norm: rat(4),
                census: {
                    let mut c = vec![CensusEntry { norm: rat(1), count: n, label: "r" }];
                    if n >= 2 {
                        c.push(CensusEntry { norm: two(), count: n * (n - 1), label: "q" });
                    }
                    c.push(CensusEntry { norm: rat(4), count: n, label: "s" });
                    c
                },
            },
            Family::F4 => RootData {
                family,
                rank: 4,
                simple_norms: vec![two(), two(), rat(1), rat(1)],
                highest: vec![2, 3, 4, 2],
                theta_norm: two(),
                census: vec![
                    CensusEntry { norm: rat(1), count: 12, label: "short" },
                    CensusEntry { norm: two(), count: 12, label: "long" },
                ],
            },
            Family::G2 => RootData {
                family,
                rank: 2,
                simple_norms: vec![rat(3), rat(1)],
                highest: vec![2, 3],
                theta_norm: rat(3),
                census: vec![
                    CensusEntry { norm: rat(1), count: 3, label: "short" },
                    CensusEntry { norm: rat(3), count: 3, label: "long" },
                ],
            },
            _ => return Err(unsupported()),
        })
    }
}
