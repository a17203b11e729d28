//! Acceptance criteria 1 to 11, one line each. Runs without the libtest
//! harness so the lines are always printed.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use h4audit::arith::{is_prime, multiplicative_order_mod};
use h4audit::audit::{revalidate, revalidate_json, revalidate_text, tensor_search, closed_form_profile_count, AuditReport};
use h4audit::field::element_degree;
use h4audit::groups::{
    cross_check, exceptional_table, factorial_valuation, is_nontrivial_power, order, p_valuation, sylow_exponent_defining,
    Family, GroupSpec,
};
use h4audit::oracle::{enumerate_order, factorial_valuation_by_factoring, perfect_power_sieve};
use h4audit::params::{
    admissible, embedding_trace, minimal_admissible_scan, scan_points, subgroup_triple, Admission, BlockTraces, PremiseId,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn big(mantissa: u64, exponent: u32) -> BigUint {
    BigUint::from(mantissa) * BigUint::from(10u32).pow(exponent)
}

fn ord(family: Family, n: u32, q: u64) -> BigUint {
    order(&GroupSpec::classical(family, n, q)).expect("valid group")
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let groups = [
        (Family::SL, 2, 2),
        (Family::SL, 2, 3),
        (Family::GL, 2, 2),
        (Family::GL, 2, 3),
        (Family::SL, 3, 2),
        (Family::SU, 2, 2),
        (Family::Sp, 2, 3),
    ];
    let mut shown = Vec::new();
    for (family, n, q) in groups {
        let spec = GroupSpec::classical(family, n, q);
        let formula = order(&spec).map_err(|e| e.to_string())?;
        let counted = enumerate_order(family, n, q, 10_000_000).ok_or(format!("{spec} not enumerable"))?;
        if formula != BigUint::from(counted) {
            return Err(format!("{spec}: formula {formula}, enumeration {counted}"));
        }
        shown.push(format!("{spec}={counted}"));
    }
    within(start, Duration::from_secs(5))?;
    Ok(shown.join(" "))
}

fn criterion_2() -> Outcome {
    let q3 = ord(Family::SL, 3, 19).max(ord(Family::SL, 3, 361));
    let q4 = ord(Family::SL, 4, 19).max(ord(Family::SU, 4, 11));
    let q5 = ord(Family::SL, 5, 19).max(ord(Family::SU, 5, 11));
    let (b3, b4, b5, bt) = (big(15, 18), big(4, 15), big(97, 23), big(58, 58));
    let checks = [
        (q3 >= b3, "Q3 >= 15e18"),
        (q4 >= b4, "Q4 >= 4e15"),
        (q5 >= b5, "Q5 >= 97e23"),
        (&b3 * &b4 * &b5 >= bt, "15e18 * 4e15 * 97e23 >= 58e58"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, label)) => Err(format!("{label} fails")),
        None => Ok(format!("Q3={q3} Q4={q4} Q5={q5}")),
    }
}

fn criterion_3() -> Outcome {
    let rows = exceptional_table();
    if rows.len() != 15 {
        return Err(format!("{} rows", rows.len()));
    }
    let bound = big(58, 58);
    for row in &rows {
        if !cross_check(row) {
            return Err(format!("row {} ({}) does not recompute", row.index, row.group));
        }
        if row.order >= bound {
            return Err(format!("row {} order not below 58e58", row.index));
        }
    }
    let largest = rows.iter().map(|r| &r.order).max().expect("nonempty");
    Ok(format!("15 rows recomputed, largest order {largest}"))
}

fn criterion_4() -> Outcome {
    let generic = 2u64 * 100 * (100 * 100 - 1);
    if generic != 1_999_800 || generic > 2_000_000 {
        return Err(format!("2*100*(100^2-1) = {generic}"));
    }
    let mut values = BTreeMap::new();
    for p in (7..=50u64).filter(|&p| is_prime(p)) {
        let v = factorial_valuation(50, p);
        if v != factorial_valuation_by_factoring(50, p) {
            return Err(format!("v_{p}(50!) disagrees with factoring"));
        }
        if v > 10 || v >= 19 {
            return Err(format!("v_{p}(50!) = {v}"));
        }
        values.insert(p, v);
    }
    let max = values.values().max().copied().unwrap_or(0);
    if max != 8 {
        return Err(format!("exact maximum {max}, expected 8"));
    }
    let listing: Vec<String> = values.iter().map(|(p, v)| format!("{p}:{v}")).collect();
    Ok(format!("2*100*(100^2-1)={generic}, v_p(50!) {} (max 8 <= 10 < 19)", listing.join(" ")))
}

/// Every `(q, e)` with `q = p^k <= q_max`, `p > 5`, `e | q - 1`, `e` dividing
/// none of 20, 30, 48, and `p^j != 1 mod e` for `j < k`, by direct search.
fn brute_force_admissible(q_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for q in 2..=q_max {
        let p = (2..=q).find(|d| q % d == 0).expect("q >= 2 has a prime factor");
        let (mut r, mut k) = (q, 0);
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        if r != 1 || p <= 5 {
            continue;
        }
        for e in (2..q).filter(|e| (q - 1) % e == 0 && [20, 30, 48].iter().all(|b| b % e != 0)) {
            let mut x = 1;
            let first = (1..=k).find(|_| {
                x = x * p % e;
                x == 1
            });
            if first == Some(k) {
                out.push((q, e));
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let scan = minimal_admissible_scan(500);
    let brute = brute_force_admissible(500);
    let listed: Vec<(u64, u64)> = scan.entries.iter().map(|s| (s.q, s.e)).collect();
    if listed != brute {
        return Err(format!("scan lists {} points, direct search {}", listed.len(), brute.len()));
    }
    let min_square = brute.iter().map(|&(q, _)| q).find(|&q| {
        let r = (q as f64).sqrt().round() as u64;
        (r.saturating_sub(1)..=r + 1).any(|s| s * s == q)
    });
    if scan.min_q != Some(19) || scan.min_square_q != Some(121) || min_square != Some(121) {
        return Err(format!("min q {:?}, min square q {:?}", scan.min_q, scan.min_square_q));
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{} admissible points, min q 19, min square q 121", listed.len()))
}

fn criterion_6() -> Outcome {
    let points = scan_points(500).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for pt in &points {
        let triple = subgroup_triple(pt);
        let min_exp = triple
            .factors()
            .map(|g| p_valuation(&order(g).expect("valid"), pt.p).expect("nonzero"))
            .min()
            .expect("nonempty") as u64;
        for s in (2..=24u64).filter(|s| 48 % s == 0) {
            checked += 1;
            let v = factorial_valuation_by_factoring(s, pt.p);
            if v >= min_exp {
                return Err(format!("p={} e={} s={s}: v_p(s!)={v} >= {min_exp}", pt.p, pt.e));
            }
        }
    }
    Ok(format!("{} points, {checked} (point, s) pairs", points.len()))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let at36 = tensor_search(48, 36);
    let at1 = tensor_search(48, 1);
    within(start, Duration::from_secs(1))?;
    if at36.feasible_count != 0 {
        return Err(format!("{} feasible profiles at 36", at36.feasible_count));
    }
    if at1.feasible_count == 0 {
        return Err("no feasible profile at threshold 1".into());
    }
    if at36.profiles_examined != closed_form_profile_count(48) {
        return Err(format!("examined {} vs closed form {}", at36.profiles_examined, closed_form_profile_count(48)));
    }
    Ok(format!(
        "{} profiles = closed form, max trivial bound {}, {} feasible at threshold 1",
        at36.profiles_examined, at36.max_trivial_bound, at1.feasible_count
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4844_5f48_3438);
    let mut points = Vec::new();
    while points.len() < 100 {
        let p = rng.gen_range(7..400u64);
        let e = rng.gen_range(2..5000u64);
        // Keep the fields small enough that building them stays cheap.
        let small = multiplicative_order_mod(p, e).and_then(|k| p.checked_pow(k as u32)).is_some_and(|q| q <= 1_000_000);
        if !is_prime(p) || !small {
            continue;
        }
        if let Ok(Admission::Accepted(pt)) = admissible(p, e) {
            points.push(pt);
        }
    }
    for pt in &points {
        let sum = pt.alpha_sum();
        let closed = sum.scale(4) + pt.field().from_int(40);
        if element_degree(&closed) != element_degree(&sum) {
            return Err(format!("p={} e={}: degree changes under 4x+40", pt.p, pt.e));
        }
        let field = pt.field();
        let one = field.one();
        let ident = |n| vec![one.clone(); n];
        let (a, ai) = (pt.alpha.clone(), pt.alpha_inverse());
        let in_q3 = BlockTraces::from_diagonals(pt, &[a.clone(), ai.clone(), one.clone()], &ident(4), &ident(5));
        let in_q5 = BlockTraces::from_diagonals(pt, &ident(3), &ident(4), &[a, ai, one.clone(), one.clone(), one.clone()]);
        for (name, traces) in [("Q3 element", in_q3), ("Q5 element", in_q5)] {
            let t = embedding_trace(&traces.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            if t != closed {
                return Err(format!("p={} e={}: {name} trace {t} != {closed}", pt.p, pt.e));
            }
        }
    }
    let max_q = points.iter().map(|pt| pt.q()).max().unwrap_or(0);
    Ok(format!("100 seeded points (largest q {max_q}), both test elements"))
}

fn criterion_9() -> Outcome {
    let g = 19;
    let groups = [
        (Family::SL, 3, 3),
        (Family::SL, 7, 21),
        (Family::OmegaOdd, 7, 9),
        (Family::PSp, 8, 16),
    ];
    let mut shown = Vec::new();
    for (family, n, expected) in groups {
        let spec = GroupSpec::classical(family, n, g);
        let by_roots = sylow_exponent_defining(&spec, g).map_err(|e| e.to_string())?;
        let by_order = p_valuation(&order(&spec).map_err(|e| e.to_string())?, g).map_err(|e| e.to_string())?;
        if by_roots != expected || by_order != expected || expected >= 22 {
            return Err(format!("{spec}: roots {by_roots}, valuation {by_order}, expected {expected}"));
        }
        shown.push(format!("{spec}:{expected}"));
    }
    Ok(format!("{} all < 22", shown.join(" ")))
}

fn run_cli(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_h4audit"))
        .args(args)
        .env_remove("H4AUDIT_FORMAT")
        .output()
        .expect("binary runs");
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_10() -> Outcome {
    let mut inequalities = 0;
    for (p, e, group) in [("19", "9", "Omega+(48,19)"), ("13", "14", "Omega+(48,13)")] {
        let (code, json) = run_cli(&["audit", "--p", p, "--e", e, "--format", "json"]);
        if code != Some(0) {
            return Err(format!("audit {p} {e} exited {code:?}"));
        }
        let report = AuditReport::from_json(&json).map_err(|e| e.to_string())?;
        if !json.contains(&format!("\"group\": \"{group}\"")) || !report.is_concluded() {
            return Err(format!("audit {p} {e} did not conclude {group}"));
        }
        let independent = revalidate_json(&json).map_err(|e| e.to_string())?;
        let typed = revalidate(&report);
        let (_, text) = run_cli(&["audit", "--p", p, "--e", e]);
        let from_text = revalidate_text(&text).map_err(|e| e.to_string())?;
        if !(independent.passed() && typed.passed() && from_text.passed()) {
            return Err(format!("audit {p} {e} fails re-validation"));
        }
        if independent.inequalities_checked == 0 || independent.inequalities_checked != from_text.inequalities_checked {
            return Err(format!("audit {p} {e}: inequality counts differ"));
        }
        inequalities += independent.inequalities_checked;
        for id in PremiseId::ALL {
            let (code, json) = run_cli(&["audit", "--p", p, "--e", e, "--format", "json", "--withdraw", id.as_str()]);
            let withdrawn = AuditReport::from_json(&json).map_err(|e| e.to_string())?;
            if code != Some(1) || withdrawn.is_concluded() {
                return Err(format!("audit {p} {e} without {id} still concludes"));
            }
        }
    }
    Ok(format!("both concluded, {inequalities} inequalities re-validated, 5 withdrawals each flip"))
}

fn criterion_11() -> Outcome {
    let n = 1_000_000;
    let sieve = perfect_power_sieve(n);
    for m in 2..=n {
        if is_nontrivial_power(m).map_err(|e| e.to_string())? != sieve[m as usize] {
            return Err(format!("disagreement at {m}"));
        }
    }
    if is_nontrivial_power(48).map_err(|e| e.to_string())? {
        return Err("48 reported as a power".into());
    }
    let count = sieve.iter().filter(|&&b| b).count();
    Ok(format!("2..10^6 agree ({count} perfect powers), 48 is not a power"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("order formulas = matrix enumeration", criterion_1),
        ("subgroup order bounds", criterion_2),
        ("exceptional table orders", criterion_3),
        ("generic S bounds", criterion_4),
        ("scan minima", criterion_5),
        ("C2 Sylow suite", criterion_6),
        ("C4 tensor search", criterion_7),
        ("C5 trace suite", criterion_8),
        ("defining-characteristic Sylow exponents", criterion_9),
        ("end-to-end audits", criterion_10),
        ("perfect-power check", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{took:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{took:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
