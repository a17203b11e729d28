//! The embedded oracle-equivalence suite behind `h4audit selftest`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_power};
use crate::audit::{closed_form_profile_count, tensor_search};
use crate::field::make_field;
use crate::groups::{cross_check, exceptional_table, factorial_valuation, is_nontrivial_power, order, p_valuation, Family, GroupSpec};
use crate::oracle::{enumerate_order, factorial_valuation_by_factoring, perfect_power_sieve, sieve_least_irreducible, TableField};

/// Matrix count bound for the order enumeration: every `(n, q)` with
/// `q^(n^2)` at most this many matrices over the entry field is checked.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

pub const CLASSICAL_FAMILIES: [Family; 10] = [
    Family::GL,
    Family::SL,
    Family::PSL,
    Family::SU,
    Family::PSU,
    Family::Sp,
    Family::PSp,
    Family::OmegaPlus,
    Family::OmegaMinus,
    Family::OmegaOdd,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfTestCase {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub detail: String,
}

impl SelfTestCase {
    fn new(name: &str, checked: u64, failures: Vec<String>) -> SelfTestCase {
        SelfTestCase {
            name: name.to_string(),
            passed: failures.is_empty(),
            checked,
            detail: failures.into_iter().take(5).collect::<Vec<_>>().join("; "),
        }
    }
}

/// One enumeration comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderComparison {
    pub group: String,
    pub formula: u64,
    pub enumerated: u64,
}

/// The `(family, n, q)` grid that [`enumerate_order`] can count within `limit`.
pub fn order_grid(limit: u64) -> Vec<(Family, u32, u64)> {
    let mut grid = Vec::new();
    for family in CLASSICAL_FAMILIES {
        for n in 2..=6u32 {
            for q in 2..=limit.min(4000) {
                if q.checked_pow(n * n).is_none_or(|t| t > limit) {
                    break;
                }
                if prime_power(q).is_none() {
                    continue;
                }
                let (p, k) = prime_power(q).unwrap();
                let entry = if matches!(family, Family::SU | Family::PSU) { p.pow(2 * k) } else { q };
                match entry.checked_pow(n * n) {
                    Some(t) if t <= limit => {}
                    _ => continue,
                }
                let shape_ok = match family {
                    Family::Sp | Family::PSp => n % 2 == 0,
                    Family::OmegaPlus | Family::OmegaMinus => n % 2 == 0 && p != 2,
                    Family::OmegaOdd => n % 2 == 1 && n >= 3 && p != 2,
                    _ => true,
                };
                if shape_ok {
                    grid.push((family, n, q));
                }
            }
        }
    }
    grid
}

/// Formula order against exhaustive enumeration for each grid point.
pub fn compare_orders(points: &[(Family, u32, u64)], limit: u64) -> Vec<OrderComparison> {
    points
        .par_iter()
        .filter_map(|&(family, n, q)| {
            let spec = GroupSpec::classical(family, n, q);
            let formula = u64::try_from(order(&spec).ok()?).ok()?;
            let enumerated = enumerate_order(family, n, q, limit)?;
            Some(OrderComparison { group: spec.to_string(), formula, enumerated })
        })
        .collect()
}

fn orders_case(limit: u64) -> SelfTestCase {
    let grid = order_grid(limit);
    let results = compare_orders(&grid, limit);
    let mut failures: Vec<String> = results
        .iter()
        .filter(|c| c.formula != c.enumerated)
        .map(|c| format!("{}: formula {} enumerated {}", c.group, c.formula, c.enumerated))
        .collect();
    if results.len() != grid.len() {
        failures.push(format!("{} of {} grid points enumerated", results.len(), grid.len()));
    }
    SelfTestCase::new("order formula = matrix enumeration", results.len() as u64, failures)
}

fn small_fields() -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (2..=31).filter(|&p| is_prime(p)) {
        for k in 1..=6 {
            if p.pow(k) <= 400 {
                out.push((p, k));
            }
        }
    }
    out
}

fn field_case() -> SelfTestCase {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (p, k) in small_fields() {
        let field = make_field(p, k).expect("small field");
        if k > 1 && sieve_least_irreducible(p, k) != field.modulus() {
            failures.push(format!("GF({p}^{k}) modulus"));
        }
        let table = TableField::new(p, k);
        for x in 1..field.size() {
            checked += 1;
            let e = field.from_index(x);
            if e.order().ok() != table.order(x as u32) {
                failures.push(format!("GF({p}^{k}) order of index {x}"));
            }
            let brute_degree = (1..=k).find(|&d| k % d == 0 && table.pow(x as u32, p.pow(d)) == x as u32);
            if brute_degree != Some(e.degree()) {
                failures.push(format!("GF({p}^{k}) degree of index {x}"));
            }
        }
    }
    SelfTestCase::new("field order and degree = table brute force", checked, failures)
}

fn factorial_case() -> SelfTestCase {
    let mut failures = Vec::new();
    let mut checked = 0;
    for p in (2..=100).filter(|&p| is_prime(p)) {
        let mut fact = BigUint::from(1u32);
        for n in 0..=100u64 {
            if n > 0 {
                fact *= n;
            }
            checked += 1;
            let formula = factorial_valuation(n, p);
            let by_factoring = factorial_valuation_by_factoring(n, p);
            let by_bigint = p_valuation(&fact, p).map(u64::from).ok();
            if formula != by_factoring || Some(formula) != by_bigint {
                failures.push(format!("v_{p}({n}!)"));
            }
        }
    }
    SelfTestCase::new("factorial valuation = direct factorization", checked, failures)
}

fn perfect_power_case(n: u64) -> SelfTestCase {
    let sieve = perfect_power_sieve(n);
    let failures: Vec<String> = (2..=n)
        .filter(|&m| is_nontrivial_power(m).ok() != Some(sieve[m as usize]))
        .map(|m| m.to_string())
        .collect();
    SelfTestCase::new("perfect-power test = sieve", n - 1, failures)
}

fn table_case() -> SelfTestCase {
    let rows = exceptional_table();
    let failures = rows.iter().filter(|r| !cross_check(r)).map(|r| r.group.to_string()).collect();
    SelfTestCase::new("exceptional table = cover x simple order", rows.len() as u64, failures)
}

fn sylow_case() -> SelfTestCase {
    let mut failures = Vec::new();
    let mut checked = 0;
    for p in [2u64, 3, 5, 7, 11, 13, 19] {
        for k in 1..=3u32 {
            for n in 2..=8u32 {
                checked += 1;
                let spec = GroupSpec::classical(Family::SL, n, p.pow(k));
                let v = p_valuation(&order(&spec).expect("valid"), p).expect("nonzero");
                if v != k * n * (n - 1) / 2 {
                    failures.push(spec.to_string());
                }
            }
        }
    }
    SelfTestCase::new("p-part of |SL(n,p^k)| = k n(n-1)/2", checked, failures)
}

fn tensor_case() -> SelfTestCase {
    let s = tensor_search(48, 36);
    let mut failures = Vec::new();
    if s.profiles_examined != closed_form_profile_count(48) {
        failures.push(format!("examined {} closed form {}", s.profiles_examined, s.closed_form_count));
    }
    if !s.is_infeasible() {
        failures.push("feasible profile at 36".into());
    }
    if tensor_search(48, 1).is_infeasible() {
        failures.push("threshold 1 infeasible".into());
    }
    SelfTestCase::new("tensor search count = closed form", s.profiles_examined, failures)
}

/// Runs the suite with the given enumeration bound.
pub fn run_selftest_with_limit(limit: u64) -> Vec<SelfTestCase> {
    vec![
        orders_case(limit),
        field_case(),
        factorial_case(),
        perfect_power_case(1_000_000),
        table_case(),
        sylow_case(),
        tensor_case(),
    ]
}

pub fn run_selftest() -> Vec<SelfTestCase> {
    run_selftest_with_limit(ENUMERATION_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_contains_named_groups() {
        let grid = order_grid(ENUMERATION_LIMIT);
        for point in [(Family::SL, 3, 2), (Family::SU, 2, 2), (Family::Sp, 2, 3), (Family::OmegaOdd, 3, 5)] {
            assert!(grid.contains(&point), "{point:?}");
        }
    }

    #[test]
    fn quick_suite_passes() {
        for case in run_selftest_with_limit(10_000) {
            assert!(case.passed, "{}: {}", case.name, case.detail);
            assert!(case.checked > 0, "{}", case.name);
        }
    }
}
