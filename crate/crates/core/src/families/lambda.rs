//! Closed forms for `l2` (squares of the published `lambda`).

use num_traits::Zero;

use super::{Family, FamilySpec};
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

fn nonzero(d: Rational, what: &str) -> Result<Rational> {
    if d.is_zero() {
        Err(Error::DegenerateParams(format!("{what} vanishes")))
    } else {
        Ok(d)
    }
}

/// `2 h^3 / (q (r + 8s + 2(N-2) q))` with `h = r + 4s + 2q(N-1)`; `N` may be
/// rational for restricted families with non-integer partitions.
fn bc_formula(n: &Rational, r: &Rational, s: &Rational, q: &Rational) -> Result<Rational> {
    let h = r + rat(4) * s + rat(2) * q * (n - rat(1));
    let d = nonzero(q * (r + rat(8) * s + rat(2) * (n - rat(2)) * q), "q(r+8s+2(N-2)q)")?;
    Ok(rat(2) * &h * &h * &h / d)
}

/// `108 (2r+s)^2 / (4r+s)`.
fn f4_formula(r: &Rational, s: &Rational) -> Result<Rational> {
    let d = nonzero(rat(4) * r + s, "4r+s")?;
    let a = rat(2) * r + s;
    Ok(rat(108) * &a * &a / d)
}

/// The published `l2` for a family; exact, with all radicals squared away.
///
/// For the four-dimensional families the formula assumes the parameter
/// constraints `p = 2r+s`, `q = s(s-2r)/(4r+s)`; explicit overrides of `p`, `q`
/// are ignored here.
pub fn expected_lambda_sq(spec: &FamilySpec) -> Result<Rational> {
    spec.validate()?;
    let n = spec.rank;
    let big_n = rat(n as i64);
    let p = |name: &str| spec.param(name);
    match spec.family {
        Family::A => Ok(rat(4) * rat((n as i64 + 1).pow(2)) * p("t")?),
        Family::B => bc_formula(&big_n, &p("p")?, &rat(0), &p("q")?),
        Family::C => bc_formula(&big_n, &rat(0), &p("q")?, &p("p")?),
        Family::D => bc_formula(&big_n, &rat(0), &rat(0), &p("t")?),
        Family::BC => bc_formula(&big_n, &p("r")?, &p("s")?, &p("q")?),
        Family::E6 => Ok(rat(288) * p("t")?),
        Family::E7 => Ok(rat(486) * p("t")?),
        Family::E8 => Ok(rat(900) * p("t")?),
        Family::F4 | Family::FourDim | Family::FourDimA1 | Family::FourDimA2 => f4_formula(&p("r")?, &p("s")?),
        Family::G2 => {
            let (pp, q) = (p("p")?, p("q")?);
            let d = nonzero(&pp + rat(9) * &q, "p+9q")?;
            let a = &pp + rat(3) * &q;
            Ok(rat(36) * &a * &a / d)
        }
        Family::Planar6 => {
            let (a, b) = (p("a")?, p("b")?);
            let d = nonzero(rat(4) * &a - rat(3) * &b, "4a-3b")?;
            let x = rat(2) * &a - &b;
            Ok(rat(108) * &x * &x / d)
        }
        Family::Planar8 => {
            let (a, b) = (p("a")?, p("b")?);
            let d = nonzero(rat(4) * &a - &b, "4a-b")?;
            Ok(rat(216) * &a * &a / d)
        }
        Family::Planar9 => {
            let (a, b) = (p("a")?, p("b")?);
            let d = nonzero(&a + rat(4) * &b, "a+4b")?;
            let x = &a + rat(2) * &b;
            Ok(rat(36) * &x * &x / d)
        }
        Family::Planar10 => Ok(rat(225) * p("a")?),
        Family::RestrictedBC => {
            let total: Rational = spec.partition.iter().sum();
            bc_formula(&total, &p("r")?, &p("s")?, &p("q")?)
        }
        Family::RestrictedA => {
            let total: Rational = spec.partition.iter().sum();
            Ok(rat(4) * &total * &total * p("t")?)
        }
    }
}
