//! One checker per Aschbacher class. Each returns verdicts whose inequality
//! records are instantiated at the parameter point.

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::Pow;

use super::evidence::{ClassTag, ExclusionVerdict, Inequality, Relation, VerdictBuilder, Witness};
use super::tensor::tensor_search;
use crate::groups::{
    cross_check, factorial_valuation, is_nontrivial_power, order, sylow_exponent_defining, ExceptionalTableRow,
    Family, GroupSpec,
};
use crate::params::{
    embedding_trace, min_sylow_exponent_p, sylow_sum_p, BlockTraces, ParameterPoint, PremiseId, PremiseSet,
    SubgroupTriple,
};

pub const DIMENSION: u32 = 48;

/// Trivial constituents of the `Q3`-module that a tensor decomposition would
/// have to account for.
pub const TRIVIAL_MULTIPLICITY: u32 = 36;

/// Generic `PSL2(m)` cases have `m <= 2 * 48 + 1`.
pub const PSL2_SHARP_M: u64 = 2 * DIMENSION as u64 + 1;
pub const PSL2_RELAXED_M: u64 = 100;

/// Lower bound on the Sylow exponent of `Q3 x Q4 x Q5` in powers of `p`.
pub const TRIPLE_SYLOW_FLOOR_P: u64 = 19;

/// Bound `v_p(50!) <= 2 + 8` stated for `p >= 7`.
pub const FACTORIAL_50_STATED_BOUND: u64 = 10;

pub fn scaled_power_of_ten(mantissa: u64, exponent: u32) -> BigUint {
    BigUint::from(mantissa) * Pow::pow(BigUint::from(10u32), exponent)
}

/// `15 x 10^18`, the stated lower bound for `|Q3|`.
pub fn q3_bound() -> BigUint {
    scaled_power_of_ten(15, 18)
}

/// `4 x 10^15`, the stated lower bound for `|Q4|`.
pub fn q4_bound() -> BigUint {
    scaled_power_of_ten(4, 15)
}

/// `97 x 10^23`, the stated lower bound for `|Q5|`.
pub fn q5_bound() -> BigUint {
    scaled_power_of_ten(97, 23)
}

/// `58 x 10^58`, the stated lower bound for `|Q3 x Q4 x Q5|`.
pub fn triple_bound() -> BigUint {
    scaled_power_of_ten(58, 58)
}

/// `2 x 10^6`, the stated bound for the generic `2.PSL2(m)` cases.
pub fn psl2_bound() -> BigUint {
    scaled_power_of_ten(2, 6)
}

fn ord(spec: &GroupSpec) -> BigUint {
    order(spec).expect("fixed specs are valid")
}

/// The global order bounds evaluated at the least admissible fields
/// (`q = 19` and square `q = 121`).
pub fn reference_bounds() -> Vec<Inequality> {
    let sl = |n, q| ord(&GroupSpec::classical(Family::SL, n, q));
    let su = |n, q| ord(&GroupSpec::classical(Family::SU, n, q));
    let cite = "order lower bounds at q = 19 and square q = 121";
    vec![
        Inequality::new("max(|SL3(19)|, |SL3(19^2)|) >= 15e18", sl(3, 19).max(sl(3, 361)), Relation::Ge, q3_bound(), cite),
        Inequality::new("max(|SL4(19)|, |SU4(11)|) >= 4e15", sl(4, 19).max(su(4, 11)), Relation::Ge, q4_bound(), cite),
        Inequality::new("max(|SL5(19)|, |SU5(11)|) >= 97e23", sl(5, 19).max(su(5, 11)), Relation::Ge, q5_bound(), cite),
        Inequality::new(
            "15e18 * 4e15 * 97e23 >= 58e58",
            q3_bound() * q4_bound() * q5_bound(),
            Relation::Ge,
            triple_bound(),
            cite,
        ),
    ]
}

pub fn check_c1(premises: &PremiseSet) -> ExclusionVerdict {
    VerdictBuilder::new(ClassTag::C1)
        .premise(premises, PremiseId::AbsolutelyIrreducible)
        .finish()
}

/// Imprimitive class: `V = V1 + ... + Vs` permuted by `Sym(s)`.
pub fn check_c2(pt: &ParameterPoint, triple: &SubgroupTriple) -> ExclusionVerdict {
    let mut v = VerdictBuilder::new(ClassTag::C2);
    let sylow = min_sylow_exponent_p(triple, pt.p);
    v.fact(
        "each Q_k is quasisimple, so its map to Sym(s) is trivial or embeds a Sylow p-subgroup",
        "imprimitive class, wreath product GL_v(r) wr Sym(s)",
    );
    for s in (2..=DIMENSION / 2).filter(|s| DIMENSION % s == 0) {
        v.require(Inequality::new(
            format!("s={s}, v={}: v_{}(s!) < least p-Sylow exponent of Q3, Q4, Q5", DIMENSION / s, pt.p),
            factorial_valuation(s as u64, pt.p),
            Relation::Lt,
            sylow,
            "imprimitive class, Sylow p-subgroups of Sym(s)",
        ));
    }
    if pt.p == 7 {
        v.fact(
            "p = 7: the shortcut p >= 11 does not apply; Sylow exponents compared exactly at this point",
            "imprimitive class",
        );
    }
    v.fact(
        "a trivial image in Sym(s) for all Q_k makes G stabilise each V_i, contradicting irreducibility",
        "imprimitive class",
    );
    v.finish()
}

/// Extension-field class.
pub fn check_c3(premises: &PremiseSet) -> ExclusionVerdict {
    VerdictBuilder::new(ClassTag::C3)
        .fact("Q3 x Q4 x Q5 is perfect, its image inside C_m is trivial", "extension-field class, SL_h(s).C_m")
        .premise(premises, PremiseId::NormallyGenerated)
        .fact("G < SL_h(GF(s)) with h < 48", "extension-field class")
        .premise(premises, PremiseId::AbsolutelyIrreducible)
        .finish()
}

/// Tensor-product class, decided by exhaustive profile search.
pub fn check_c4(pt: &ParameterPoint, premises: &PremiseSet) -> ExclusionVerdict {
    check_c4_with_threshold(pt, premises, TRIVIAL_MULTIPLICITY)
}

pub fn check_c4_with_threshold(pt: &ParameterPoint, premises: &PremiseSet, threshold: u32) -> ExclusionVerdict {
    let search = tensor_search(DIMENSION, threshold);
    let cite = "tensor-product class, trivial constituents of W1 (x) W2";
    let mut v = VerdictBuilder::new(ClassTag::C4);
    v.premise(premises, PremiseId::SemisimpleFactorsC4)
        .require(Inequality::new("48 mod p != 0", DIMENSION as u64 % pt.p, Relation::Ne, 0u32, "p is not 2 or 3"))
        .premise(premises, PremiseId::Q3RestrictionPattern)
        .fact("Q3 is perfect, so every nontrivial simple constituent has dimension >= 2", cite)
        .require(Inequality::new(
            "profiles examined == sum over splits of (d1 - 1)(d2 - 1)",
            search.profiles_examined,
            Relation::Eq,
            search.closed_form_count,
            "exhaustiveness of the profile search",
        ))
        .require(Inequality::new(
            "max over profiles of m1 m2 + S1 S2 < required trivial multiplicity",
            search.max_trivial_bound,
            Relation::Lt,
            threshold,
            cite,
        ))
        .require(Inequality::new(
            "dim W < 4 x (required trivial multiplicity - 1)",
            DIMENSION,
            Relation::Lt,
            4 * threshold.saturating_sub(1),
            cite,
        ));
    if !search.is_infeasible() {
        v.gap(format!("search found {} feasible profiles", search.feasible_count));
    }
    v.witness(Witness::TensorSearch(search)).finish()
}

/// Subfield class: the trace of a test element generates GF(g).
pub fn check_c5(pt: &ParameterPoint, premises: &PremiseSet) -> ExclusionVerdict {
    let cite = "subfield class, trace field of the block embedding";
    let trace = embedding_trace(&BlockTraces::subfield_test_element(pt)).expect("test element lives in the point's field");
    let closed_form = pt.alpha_sum().scale(4) + pt.field().from_int(40);
    let element = match pt.case {
        crate::params::Case::Case1 => "q5 = diag(a, 1/a, 1, 1, 1)",
        crate::params::Case::Case2 => "q3 = diag(a, 1/a, 1)",
    };
    let mut v = VerdictBuilder::new(ClassTag::C5);
    v.fact("Q3 x Q4 x Q5 is perfect, so its image lies in SL_48(GF(s))", cite)
        .premise(premises, PremiseId::NormallyGenerated)
        .fact(format!("test element {element} has trace {trace}"), cite)
        .require(Inequality::new(
            "trace equals 4(a + 1/a) + 40",
            u64::from(trace == closed_form),
            Relation::Eq,
            1u32,
            cite,
        ))
        .require(Inequality::new(
            "degree of the trace over GF(p) == degree of GF(g)",
            trace.degree(),
            Relation::Eq,
            pt.g_exponent,
            cite,
        ))
        .require(Inequality::new(
            "degree of the trace == degree of a + 1/a",
            trace.degree(),
            Relation::Eq,
            pt.alpha_sum().degree(),
            "affine invariance of the degree",
        ))
        .vacuous(pt.g_exponent == 1);
    if pt.g_exponent == 1 {
        v.fact("g is prime, so GF(g) has no proper subfield", cite);
    }
    v.finish()
}

/// Tensor-induced and extraspecial-normaliser classes for a given dimension.
pub fn check_c6_c7_for_dimension(dimension: u64) -> [ExclusionVerdict; 2] {
    let power = is_nontrivial_power(dimension).unwrap_or(true);
    [ClassTag::C6, ClassTag::C7].map(|tag| {
        let mut v = VerdictBuilder::new(tag);
        // dimension is not a b-th power iff floor(d^(1/b))^b < d < (floor + 1)^b.
        let max_exp = 63 - dimension.max(2).leading_zeros();
        for b in 2..=max_exp {
            let root = dimension.nth_root(b);
            let below = Pow::pow(BigUint::from(root), b);
            let above = Pow::pow(BigUint::from(root + 1), b);
            let cite = "C6 and C7 require a dimension of the form a^b";
            let d = BigUint::from(dimension);
            v.require(Inequality::new(format!("{root}^{b} < {dimension}"), below, Relation::Lt, d.clone(), cite));
            v.require(Inequality::new(format!("{dimension} < {}^{b}", root + 1), d, Relation::Lt, above, cite));
        }
        if power {
            v.gap(format!("{dimension} is a non-trivial power"));
        }
        v.finish()
    })
}

pub fn check_c6_c7() -> [ExclusionVerdict; 2] {
    check_c6_c7_for_dimension(DIMENSION as u64)
}

/// Almost-simple groups in non-defining characteristic: the exceptional
/// table, the generic `PSL2(m)` family and `Alt(49)`, `Alt(50)`.
pub fn check_s_nondefining(
    pt: &ParameterPoint,
    triple: &SubgroupTriple,
    table: &[ExceptionalTableRow],
) -> [ExclusionVerdict; 3] {
    let product = &triple.min_order_product;

    let mut a = VerdictBuilder::new(ClassTag::SNondefTable);
    for bound in reference_bounds() {
        a.require(bound);
    }
    a.require(Inequality::new(
        "|Q3| |Q4| |Q5| at this point >= 58e58",
        product.clone(),
        Relation::Ge,
        triple_bound(),
        "order of the subgroup triple",
    ));
    if table.is_empty() {
        a.gap("exceptional table is empty");
    }
    for row in table {
        let name = format!("({}) {}", row.index, row.group);
        let cite = "exceptional 48-dimensional cases, dismissed by order";
        a.require(Inequality::new(
            format!("{name}: stored order == cover x simple order"),
            u64::from(cross_check(row)),
            Relation::Eq,
            1u32,
            cite,
        ));
        a.require(Inequality::new(format!("{name}: |G| < 58e58"), row.order.clone(), Relation::Lt, triple_bound(), cite));
        a.require(Inequality::new(format!("{name}: |G| < |Q3||Q4||Q5|"), row.order.clone(), Relation::Lt, product.clone(), cite));
    }

    let psl2 = |m: u64| BigUint::from(2 * m * (m * m - 1));
    let cite = "generic 2.PSL2(m) cases";
    let mut b = VerdictBuilder::new(ClassTag::SNondefGenericPsl2);
    b.fact(format!("m <= 2 x 48 + 1 = {PSL2_SHARP_M}, relaxed to {PSL2_RELAXED_M}"), cite)
        .require(Inequality::new("2 x 97 x (97^2 - 1) <= 2 x 100 x (100^2 - 1)", psl2(PSL2_SHARP_M), Relation::Le, psl2(PSL2_RELAXED_M), cite))
        .require(Inequality::new("2 x 100 x (100^2 - 1) <= 2e6", psl2(PSL2_RELAXED_M), Relation::Le, psl2_bound(), cite))
        .require(Inequality::new("2e6 < 58e58", psl2_bound(), Relation::Lt, triple_bound(), cite))
        .require(Inequality::new("2 x 100 x (100^2 - 1) < |Q3||Q4||Q5|", psl2(PSL2_RELAXED_M), Relation::Lt, product.clone(), cite));

    let sylow_sum = sylow_sum_p(triple, pt.p);
    let cite = "alternating groups Alt(49), Alt(50)";
    let mut c = VerdictBuilder::new(ClassTag::SNondefAlternating);
    c.require(Inequality::new(
        format!("Sylow exponent of Q3 x Q4 x Q5 in powers of {} >= 19", pt.p),
        sylow_sum,
        Relation::Ge,
        TRIPLE_SYLOW_FLOOR_P,
        cite,
    ));
    c.require(Inequality::new(
        format!("v_{}(50!) <= 10", pt.p),
        factorial_valuation(50, pt.p),
        Relation::Le,
        FACTORIAL_50_STATED_BOUND,
        cite,
    ));
    for n in [49u64, 50] {
        let v = factorial_valuation(n, pt.p);
        c.require(Inequality::new(format!("v_{}({n}!) < 19", pt.p), v, Relation::Lt, TRIPLE_SYLOW_FLOOR_P, cite));
        c.require(Inequality::new(
            format!("v_{}({n}!) < Sylow exponent of Q3 x Q4 x Q5", pt.p),
            v,
            Relation::Lt,
            sylow_sum,
            cite,
        ));
    }
    [a.finish(), b.finish(), c.finish()]
}

/// The 48-dimensional modules in defining characteristic, other than the
/// natural ones, that survive `p` odd.
pub fn defining_candidates(g: u64) -> [(&'static str, GroupSpec, &'static str); 4] {
    [
        ("A2", GroupSpec::classical(Family::SL, 3, g), "p != 7"),
        ("A6", GroupSpec::classical(Family::SL, 7, g), "p != 7"),
        ("B3", GroupSpec::classical(Family::OmegaOdd, 7, g), "p != 7"),
        ("C4", GroupSpec::classical(Family::PSp, 8, g), "p != 3"),
    ]
}

pub fn check_s_defining(pt: &ParameterPoint, triple: &SubgroupTriple) -> ExclusionVerdict {
    let g = pt.g();
    let total = triple.sylow_sum_g();
    let cite = "48-dimensional modules in defining characteristic";
    let mut v = VerdictBuilder::new(ClassTag::SDefining);
    v.require(Inequality::new(
        "Sylow exponent of Q3 x Q4 x Q5 in powers of g == 6 + 6 + 10",
        total,
        Relation::Eq,
        22u32,
        "Sylow subgroups of the subgroup triple",
    ));
    for (lie_type, spec, condition) in defining_candidates(g) {
        let exponent = sylow_exponent_defining(&spec, g).expect("candidates are of Lie type over GF(g)");
        v.require(Inequality::new(
            format!("{lie_type} ({condition}): Sylow exponent of {spec} in powers of g < 22"),
            exponent,
            Relation::Lt,
            total,
            cite,
        ));
    }
    v.fact(
        "A1: a rank-one group has abelian Sylow p-subgroups, while SL3 inside Q3 contains the non-abelian Heisenberg group",
        cite,
    );
    for pruned in ["B4", "C3", "D4"] {
        v.require(Inequality::new(format!("{pruned} occurs only for p = 2"), pt.p, Relation::Ne, 2u32, cite));
    }
    v.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{admissible, subgroup_triple};

    fn point(p: u64, e: u64) -> ParameterPoint {
        admissible(p, e).unwrap().accepted().unwrap()
    }

    #[test]
    fn reference_bounds_hold() {
        assert!(reference_bounds().iter().all(Inequality::holds));
    }

    #[test]
    fn c1_follows_premise() {
        assert!(check_c1(&PremiseSet::default()).excluded);
        let v = check_c1(&PremiseSet::default().withdraw(PremiseId::AbsolutelyIrreducible));
        assert!(!v.excluded);
        assert_eq!(v.inequalities().count(), 0);
    }

    #[test]
    fn c2_at_eleven_and_seven() {
        let pt = point(11, 40);
        let v = check_c2(&pt, &subgroup_triple(&pt));
        assert!(v.excluded);
        let s24 = v.inequalities().find(|i| i.label.starts_with("s=24")).unwrap();
        assert_eq!(s24.lhs, BigUint::from(2u32));

        let pt = point(7, 19);
        assert_eq!(pt.q(), 343);
        let triple = subgroup_triple(&pt);
        assert!(min_sylow_exponent_p(&triple, 7) >= 9);
        let v = check_c2(&pt, &triple);
        assert!(v.excluded);
        let s24 = v.inequalities().find(|i| i.label.starts_with("s=24")).unwrap();
        assert_eq!(s24.lhs, BigUint::from(3u32));
    }

    #[test]
    fn c3_gating() {
        assert!(check_c3(&PremiseSet::default()).excluded);
        let v = check_c3(&PremiseSet::default().withdraw(PremiseId::NormallyGenerated));
        assert!(!v.excluded);
        assert!(v.evidence.iter().any(|e| matches!(e, super::super::Evidence::Fact { statement, .. } if statement.contains("is perfect"))));
    }

    #[test]
    fn c4_thresholds() {
        let pt = point(19, 9);
        assert!(check_c4(&pt, &PremiseSet::default()).excluded);
        assert!(!check_c4_with_threshold(&pt, &PremiseSet::default(), 1).excluded);
        assert!(!check_c4(&pt, &PremiseSet::default().withdraw(PremiseId::SemisimpleFactorsC4)).excluded);
    }

    #[test]
    fn c5_cases() {
        let pt = point(19, 9);
        let v = check_c5(&pt, &PremiseSet::default());
        assert!(v.excluded && v.vacuous);
        let pt = point(13, 14);
        let v = check_c5(&pt, &PremiseSet::default());
        assert!(v.excluded && v.vacuous);
        let pt = point(11, 40);
        let v = check_c5(&pt, &PremiseSet::default());
        assert!(v.excluded && !v.vacuous);
    }

    #[test]
    fn c6_c7_dimensions() {
        assert!(check_c6_c7().iter().all(|v| v.excluded));
        assert!(check_c6_c7_for_dimension(64).iter().all(|v| !v.excluded));
        assert!(check_c6_c7_for_dimension(49).iter().all(|v| !v.excluded));
        assert!(check_c6_c7().iter().all(|v| v.inequalities().all(Inequality::holds)));
    }

    #[test]
    fn s_nondefining_parts() {
        let pt = point(7, 19);
        let triple = subgroup_triple(&pt);
        let [a, b, c] = check_s_nondefining(&pt, &triple, &crate::groups::exceptional_table());
        assert!(a.excluded && b.excluded && c.excluded);
        let v50 = c.inequalities().find(|i| i.label == "v_7(50!) < 19").unwrap();
        assert_eq!(v50.lhs, BigUint::from(8u32));
        let [a, ..] = check_s_nondefining(&pt, &triple, &[]);
        assert!(!a.excluded);
    }

    #[test]
    fn s_defining_exponents() {
        let pt = point(19, 9);
        let v = check_s_defining(&pt, &subgroup_triple(&pt));
        assert!(v.excluded);
        let exps: Vec<u32> = defining_candidates(19)
            .iter()
            .map(|(_, spec, _)| sylow_exponent_defining(spec, 19).unwrap())
            .collect();
        assert_eq!(exps, [3, 21, 9, 16]);
    }
}
