//! Named families of vee-systems in rational realizations, their closed-form
//! `l2`, root data and the `gamma` constants of the alternative prepotential.

mod gamma;
mod generators;
mod lambda;
mod rootdata;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};

pub use gamma::{gamma_sq_direct, gamma_tilde_sq, gamma_tilde_sq_dual, GammaMult};
pub use generators::{generate, positive_half, restricted_family};
pub use lambda::expected_lambda_sq;
pub use rootdata::{CensusEntry, RootData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
    E6,
    E7,
    E8,
    F4,
    G2,
    FourDim,
    FourDimA1,
    FourDimA2,
    Planar6,
    Planar8,
    Planar9,
    Planar10,
    RestrictedBC,
    RestrictedA,
}

impl Family {
    pub const ALL: [Family; 19] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::BC,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
        Family::FourDim,
        Family::FourDimA1,
        Family::FourDimA2,
        Family::Planar6,
        Family::Planar8,
        Family::Planar9,
        Family::Planar10,
        Family::RestrictedBC,
        Family::RestrictedA,
    ];

    /// Rank for families defined in one dimension only.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 | Family::FourDim => Some(4),
            Family::FourDimA1 | Family::FourDimA2 => Some(3),
            Family::G2 | Family::Planar6 | Family::Planar8 | Family::Planar9 | Family::Planar10 => Some(2),
            _ => None,
        }
    }

    /// Parameter names; the first group is required, `optional` may be omitted.
    pub fn param_names(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Family::A | Family::D | Family::E6 | Family::E7 | Family::E8 | Family::RestrictedA => (&["t"], &[]),
            Family::B | Family::C | Family::G2 => (&["p", "q"], &[]),
            Family::BC | Family::RestrictedBC => (&["r", "s", "q"], &[]),
            Family::F4 => (&["r", "s"], &[]),
            Family::FourDim | Family::FourDimA1 | Family::FourDimA2 => (&["r", "s"], &["p", "q"]),
            Family::Planar6 | Family::Planar8 | Family::Planar9 => (&["a", "b"], &[]),
            Family::Planar10 => (&["a"], &[]),
        }
    }

    pub fn uses_partition(self) -> bool {
        matches!(self, Family::RestrictedBC | Family::RestrictedA)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
            Family::FourDim => "FourDim",
            Family::FourDimA1 => "FourDimA1",
            Family::FourDimA2 => "FourDimA2",
            Family::Planar6 => "Planar6",
            Family::Planar8 => "Planar8",
            Family::Planar9 => "Planar9",
            Family::Planar10 => "Planar10",
            Family::RestrictedBC => "RestrictedBC",
            Family::RestrictedA => "RestrictedA",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnsupportedParams(format!("unknown family {s:?}")))
    }
}

/// A family together with its rank, parameters and (for restricted
/// families) partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub rank: usize,
    pub params: BTreeMap<String, Rational>,
    pub partition: Vec<Rational>,
    /// Accept non-integer partition entries.
    pub rational_partition: bool,
}

impl FamilySpec {
    /// A spec with no parameters set; fixed-rank families take their own rank.
    pub fn new(family: Family, rank: usize) -> Self {
        let rank = family.fixed_rank().unwrap_or(rank);
        FamilySpec { family, rank, params: BTreeMap::new(), partition: Vec::new(), rational_partition: false }
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    /// Sets the partition; the rank becomes its length (one less for `A`).
    pub fn with_partition(mut self, m: Vec<Rational>) -> Self {
        self.rank = if self.family == Family::RestrictedA { m.len().saturating_sub(1) } else { m.len() };
        self.partition = m;
        self
    }

    /// Parses `name=value` assignments.
    pub fn with_assignment(mut self, assignment: &str) -> Result<Self> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=value, got {assignment:?}")))?;
        self.params.insert(k.trim().to_string(), parse_rational(v)?);
        Ok(self)
    }

    pub fn param(&self, name: &str) -> Result<Rational> {
        self.params
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnsupportedParams(format!("{} needs parameter {name}", self.family)))
    }

    /// Checks parameter names, rank and partition.
    pub fn validate(&self) -> Result<()> {
        let (required, optional) = self.family.param_names();
        for name in required {
            self.param(name)?;
        }
        if let Some(bad) = self.params.keys().find(|k| !required.contains(&k.as_str()) && !optional.contains(&k.as_str())) {
            return Err(Error::UnsupportedParams(format!("{} has no parameter {bad}", self.family)));
        }
        if let Some(r) = self.family.fixed_rank() {
            if self.rank != r {
                return Err(Error::UnsupportedParams(format!("{} has rank {r}, not {}", self.family, self.rank)));
            }
        }
        let min_rank = match self.family {
            Family::A => 1,
            Family::B | Family::C | Family::BC => 1,
            Family::D => 3,
            _ => 1,
        };
        if self.rank < min_rank {
            return Err(Error::UnsupportedParams(format!("{} needs rank at least {min_rank}", self.family)));
        }
        if self.family.uses_partition() {
            if self.partition.is_empty() {
                return Err(Error::UnsupportedParams(format!("{} needs a partition", self.family)));
            }
            let expected = if self.family == Family::RestrictedA { self.rank + 1 } else { self.rank };
            if self.partition.len() != expected || self.rank == 0 {
                return Err(Error::UnsupportedParams(format!(
                    "{} of rank {} needs a partition of length {expected}",
                    self.family, self.rank
                )));
            }
            for m in &self.partition {
                if !m.is_positive() && !self.rational_partition {
                    return Err(Error::UnsupportedParams("partition entries must be positive".into()));
                }
                if !self.rational_partition && !m.denom().is_one() {
                    return Err(Error::UnsupportedParams("partition entries must be integers".into()));
                }
                if m.is_zero() {
                    return Err(Error::UnsupportedParams("partition entries must be nonzero".into()));
                }
            }
        } else if !self.partition.is_empty() {
            return Err(Error::UnsupportedParams(format!("{} takes no partition", self.family)));
        }
        Ok(())
    }

    /// Human readable `FamilyRank(k=v,...)[m=...]`.
    pub fn label(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let rank = if self.family.fixed_rank().is_some() || self.family.uses_partition() {
            String::new()
        } else {
            self.rank.to_string()
        };
        let mut s = format!("{}{rank}({})", self.family, params.join(","));
        if !self.partition.is_empty() {
            let m: Vec<String> = self.partition.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("[m={}]", m.join(",")));
        }
        s
    }
}
