//! Exact orders of the finite groups that occur in the audit, together with
//! p-adic valuations and defining-characteristic Sylow exponents.

mod descriptor;
mod table;
mod valuation;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::error::{Error, Result};

pub use descriptor::parse_descriptor;
pub use table::{
    cross_check, exceptional_table, export_csv, import_csv, ExceptionalTableRow, KNOWN_SIMPLE,
};
pub use valuation::{factorial_valuation, is_nontrivial_power, p_valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    PSL,
    SU,
    PSU,
    Sp,
    PSp,
    OmegaPlus,
    OmegaMinus,
    OmegaOdd,
    Sym,
    Alt,
    SporadicOrCover,
}

impl Family {
    pub fn is_lie_type(self) -> bool {
        !matches!(self, Family::Sym | Family::Alt | Family::SporadicOrCover)
    }

    fn keyword(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PSL => "PSL",
            Family::SU => "SU",
            Family::PSU => "PSU",
            Family::Sp => "Sp",
            Family::PSp => "PSp",
            Family::OmegaPlus => "Omega+",
            Family::OmegaMinus => "Omega-",
            Family::OmegaOdd => "Omega",
            Family::Sym => "Sym",
            Family::Alt => "A",
            Family::SporadicOrCover => "",
        }
    }
}

/// A finite group named by family, matrix size or permutation degree, field
/// size and central cover multiplier.
///
/// For the symplectic and orthogonal families `n` is the dimension of the
/// natural module, so `Sp(8, q)` is `n = 8`. Sporadic and table groups carry
/// their label in `name` and set `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub n: u32,
    pub q: Option<u64>,
    pub cover: u64,
    pub name: Option<String>,
}

impl GroupSpec {
    pub fn classical(family: Family, n: u32, q: u64) -> GroupSpec {
        GroupSpec { family, n, q: Some(q), cover: 1, name: None }
    }

    pub fn sym(n: u32) -> GroupSpec {
        GroupSpec { family: Family::Sym, n, q: None, cover: 1, name: None }
    }

    pub fn alt(n: u32) -> GroupSpec {
        GroupSpec { family: Family::Alt, n, q: None, cover: 1, name: None }
    }

    /// A named simple group from [`KNOWN_SIMPLE`], optionally covered. The
    /// label keeps any subscript index of the cover, e.g. `12_2.L3(4)`.
    pub fn named(label: &str) -> Result<GroupSpec> {
        parse_descriptor(label)
    }

    pub fn with_cover(mut self, cover: u64) -> GroupSpec {
        self.cover = cover;
        self
    }

    pub fn order(&self) -> Result<BigUint> {
        order(self)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            return write!(f, "{name}");
        }
        if self.cover != 1 {
            write!(f, "{}.", self.cover)?;
        }
        match (self.family, self.q) {
            (Family::Alt, _) => write!(f, "A{}", self.n),
            (Family::Sym, _) => write!(f, "Sym({})", self.n),
            (family, Some(q)) => write!(f, "{}({},{})", family.keyword(), self.n, q),
            (family, None) => write!(f, "{}({})", family.keyword(), self.n),
        }
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// `prod_{i in range} (q^(step*i) - sign^i)`, where `sign = -1` flips to `+`
/// on odd `i`.
fn cyclotomic_product(q: &BigUint, range: std::ops::RangeInclusive<u32>, step: u32, unitary: bool) -> BigUint {
    range.fold(BigUint::one(), |acc, i| {
        let power = Pow::pow(q, step * i);
        let term = if unitary && i % 2 == 1 { power + 1u32 } else { power - 1u32 };
        acc * term
    })
}

fn half_dimension(spec: &GroupSpec, odd: bool) -> Result<u32> {
    let n = spec.n;
    let ok = if odd { n % 2 == 1 && n >= 3 } else { n % 2 == 0 && n >= 2 };
    if !ok {
        let parity = if odd { "odd and at least 3" } else { "even and at least 2" };
        return Err(Error::InvalidGroup(format!("{spec}: dimension must be {parity}")));
    }
    Ok(n / 2)
}

fn factorial(n: u32) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// Exact group order.
pub fn order(spec: &GroupSpec) -> Result<BigUint> {
    if spec.cover == 0 {
        return Err(Error::InvalidGroup(format!("{spec}: cover must be at least 1")));
    }
    if spec.n == 0 {
        return Err(Error::InvalidGroup(format!("{spec}: n must be at least 1")));
    }
    let simple = match spec.family {
        Family::Sym => factorial(spec.n),
        Family::Alt if spec.n < 2 => BigUint::one(),
        Family::Alt => factorial(spec.n) / 2u32,
        Family::SporadicOrCover => {
            let label = spec.name.as_deref().unwrap_or("");
            let base = table::strip_cover(label).1;
            table::known_simple_order(base)
                .ok_or_else(|| Error::InvalidGroup(format!("unknown named group {label:?}")))?
        }
        _ => lie_order(spec)?,
    };
    Ok(simple * spec.cover)
}

fn lie_order(spec: &GroupSpec) -> Result<BigUint> {
    let qv = spec
        .q
        .ok_or_else(|| Error::InvalidGroup(format!("{spec}: missing field size")))?;
    if prime_power(qv).is_none() {
        return Err(Error::InvalidGroup(format!("{spec}: {qv} is not a prime power")));
    }
    let q = big(qv);
    let n = spec.n;
    let gcd2 = if qv % 2 == 1 { 2u64 } else { 1 };
    let triangle = n * (n - 1) / 2;
    let value = match spec.family {
        Family::GL | Family::SL | Family::PSL => {
            let gl = Pow::pow(&q, triangle) * cyclotomic_product(&q, 1..=n, 1, false);
            match spec.family {
                Family::GL => gl,
                Family::SL => gl / (qv - 1),
                _ => gl / (qv - 1) / (n as u64).gcd(&(qv - 1)),
            }
        }
        Family::SU | Family::PSU => {
            let su = Pow::pow(&q, triangle) * cyclotomic_product(&q, 2..=n, 1, true);
            if spec.family == Family::SU {
                su
            } else {
                su / (n as u64).gcd(&(qv + 1))
            }
        }
        Family::Sp | Family::PSp => {
            let m = half_dimension(spec, false)?;
            let sp = Pow::pow(&q, m * m) * cyclotomic_product(&q, 1..=m, 2, false);
            if spec.family == Family::Sp {
                sp
            } else {
                sp / gcd2
            }
        }
        Family::OmegaPlus | Family::OmegaMinus => {
            let m = half_dimension(spec, false)?;
            let qm = Pow::pow(&q, m);
            let middle = if spec.family == Family::OmegaPlus { qm - 1u32 } else { qm + 1u32 };
            Pow::pow(&q, m * (m - 1)) * middle * cyclotomic_product(&q, 1..=m - 1, 2, false) / gcd2
        }
        Family::OmegaOdd => {
            let m = half_dimension(spec, true)?;
            Pow::pow(&q, m * m) * cyclotomic_product(&q, 1..=m, 2, false) / gcd2
        }
        Family::Sym | Family::Alt | Family::SporadicOrCover => unreachable!(),
    };
    Ok(value)
}

/// Number of positive roots of the Lie type, i.e. the exponent of `q` in the
/// defining-characteristic Sylow subgroup of the group over `GF(q)`.
pub fn positive_roots(spec: &GroupSpec) -> Result<u32> {
    let n = spec.n;
    match spec.family {
        Family::GL | Family::SL | Family::PSL | Family::SU | Family::PSU => Ok(n * (n - 1) / 2),
        Family::Sp | Family::PSp => {
            let m = half_dimension(spec, false)?;
            Ok(m * m)
        }
        Family::OmegaOdd => {
            let m = half_dimension(spec, true)?;
            Ok(m * m)
        }
        Family::OmegaPlus | Family::OmegaMinus => {
            let m = half_dimension(spec, false)?;
            Ok(m * (m - 1))
        }
        _ => Err(Error::InvalidGroup(format!("{spec} is not of Lie type"))),
    }
}

/// Exponent of `base` in the order of a Sylow subgroup in defining
/// characteristic, where the field size of `spec` is `base^m`.
pub fn sylow_exponent_defining(spec: &GroupSpec, base: u64) -> Result<u32> {
    let roots = positive_roots(spec)?;
    let q = spec.q.ok_or_else(|| Error::InvalidGroup(format!("{spec}: missing field size")))?;
    let m = log_exact(q, base)
        .ok_or_else(|| Error::InvalidGroup(format!("{spec}: {q} is not a power of {base}")))?;
    Ok(m * roots)
}

/// `Some(m)` with `base^m = q`.
pub fn log_exact(q: u64, base: u64) -> Option<u32> {
    if base < 2 {
        return None;
    }
    let mut m = 0;
    let mut acc = 1u64;
    while acc < q {
        acc = acc.checked_mul(base)?;
        m += 1;
    }
    (acc == q).then_some(m)
}
