//! Admissible parameters `(p, ord alpha)`, the two field cases, the subgroup
//! triple `Q3 x Q4 x Q5` and its block embedding into dimension 48.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime, multiplicative_order_mod};
use crate::error::{Error, Result};
use crate::field::{condition_one_sim_two, make_field, FieldElement, FieldHandle};
use crate::groups::{order, sylow_exponent_defining, Family, GroupSpec};

/// The three integers `ord alpha` must not divide.
pub const FORBIDDEN_ORDER_DIVISORS: [u64; 3] = [20, 30, 48];
pub const EXCLUDED_PRIMES: [u64; 3] = [2, 3, 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// `GF(p)(alpha) = GF(p)(alpha + alpha^-1)`, so `g = q`.
    Case1,
    /// `[GF(p)(alpha) : GF(p)(alpha + alpha^-1)] = 2`, so `g^2 = q`.
    Case2,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Case1 => "case 1",
            Case::Case2 => "case 2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterPoint {
    pub p: u64,
    pub e: u64,
    /// Degree of alpha over GF(p), so `q = p^k`.
    pub k: u32,
    /// Degree of alpha + alpha^-1 over GF(p), so `g = p^g_exponent`.
    pub g_exponent: u32,
    pub case: Case,
    pub one_sim_two: bool,
    pub alpha: FieldElement,
}

impl ParameterPoint {
    pub fn q(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn g(&self) -> u64 {
        self.p.pow(self.g_exponent)
    }

    pub fn field(&self) -> &FieldHandle {
        self.alpha.field()
    }

    pub fn alpha_inverse(&self) -> FieldElement {
        self.alpha.inverse().expect("alpha has finite order, so it is nonzero")
    }

    /// `alpha + alpha^-1`, the generator of GF(g).
    pub fn alpha_sum(&self) -> FieldElement {
        &self.alpha + &self.alpha_inverse()
    }

    /// The automorphism written `x -> x̄`: the generator of
    /// `Gal(GF(q)/GF(g))`, trivial in case 1.
    pub fn phi(&self, x: &FieldElement) -> FieldElement {
        x.frobenius(self.g_exponent as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    ExcludedCharacteristic { p: u64 },
    OrderDivides { e: u64, bound: u64 },
    /// `p | e`, so no element of any GF(p^k) has order `e`.
    NoSuchOrder { p: u64, e: u64 },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::ExcludedCharacteristic { p } => write!(f, "characteristic {p} lies in {{2, 3, 5}}"),
            Rejection::OrderDivides { e, bound } => write!(f, "{e} divides {bound}"),
            Rejection::NoSuchOrder { p, e } => write!(f, "no element of order {e} exists in characteristic {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admission {
    Accepted(ParameterPoint),
    Rejected(Rejection),
}

impl Admission {
    pub fn accepted(self) -> Option<ParameterPoint> {
        match self {
            Admission::Accepted(pt) => Some(pt),
            Admission::Rejected(_) => None,
        }
    }
}

fn admissibility_rejection(p: u64, e: u64) -> Option<Rejection> {
    if EXCLUDED_PRIMES.contains(&p) {
        return Some(Rejection::ExcludedCharacteristic { p });
    }
    if let Some(&bound) = FORBIDDEN_ORDER_DIVISORS.iter().find(|&&b| b % e == 0) {
        return Some(Rejection::OrderDivides { e, bound });
    }
    if e % p == 0 {
        return Some(Rejection::NoSuchOrder { p, e });
    }
    None
}

/// Checks admissibility of `(p, e)` and, when admissible, builds the point
/// with the canonical alpha of order `e` in `GF(p^k)`, `k = ord_e(p)`.
pub fn admissible(p: u64, e: u64) -> Result<Admission> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::OutOfRange(0));
    }
    if let Some(rejection) = admissibility_rejection(p, e) {
        return Ok(Admission::Rejected(rejection));
    }
    let k = multiplicative_order_mod(p, e).expect("gcd(p, e) = 1 was checked") as u32;
    let field = make_field(p, k)?;
    point_in_field(&field, e).map(Admission::Accepted)
}

/// Builds the point for an admissible `e` whose degree equals the field
/// degree of `field`.
fn point_in_field(field: &FieldHandle, e: u64) -> Result<ParameterPoint> {
    let p = field.characteristic();
    let k = field.degree();
    // Least power of the generator with exact order e.
    let alpha = field.generator().pow((field.size() - 1) / e);
    debug_assert_eq!(alpha.order(), Ok(e));
    debug_assert_eq!(alpha.degree(), k);
    let sum = &alpha + &alpha.inverse()?;
    let g_exponent = sum.degree();
    let case = if g_exponent == k {
        Case::Case1
    } else {
        assert_eq!(k, 2 * g_exponent, "alpha has degree at most 2 over GF(p)(alpha + alpha^-1)");
        Case::Case2
    };
    let one_sim_two = condition_one_sim_two(&alpha)?;
    Ok(ParameterPoint { p, e, k, g_exponent, case, one_sim_two, alpha })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub p: u64,
    pub e: u64,
    pub q: u64,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub q_max: u64,
    pub entries: Vec<ScanEntry>,
    pub min_q: Option<u64>,
    pub min_square_q: Option<u64>,
}

/// Admissible `(p, q)` prime powers up to `q_max` with `p` outside {2,3,5}.
fn candidate_fields(q_max: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (7..=q_max).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut k = 1;
        while q <= q_max {
            out.push((p, k));
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
            k += 1;
        }
    }
    out
}

fn admissible_orders(p: u64, k: u32) -> Vec<u64> {
    let q = p.pow(k);
    divisors(q - 1)
        .into_iter()
        .filter(|&e| admissibility_rejection(p, e).is_none())
        .filter(|&e| multiplicative_order_mod(p, e) == Some(k as u64))
        .collect()
}

/// Enumerates every admissible `(p, e)` with `q = p^ord_e(p) <= q_max`,
/// sorted by `(q, e)`, together with the least `q` and least square `q`.
pub fn minimal_admissible_scan(q_max: u64) -> ScanResult {
    let mut entries: Vec<ScanEntry> = candidate_fields(q_max)
        .into_par_iter()
        .flat_map_iter(|(p, k)| {
            admissible_orders(p, k).into_iter().map(move |e| ScanEntry { p, e, q: p.pow(k), k })
        })
        .collect();
    entries.sort_by_key(|s| (s.q, s.e));
    let min_q = entries.first().map(|s| s.q);
    let min_square_q = entries.iter().find(|s| s.k % 2 == 0).map(|s| s.q);
    ScanResult { q_max, entries, min_q, min_square_q }
}

/// Full parameter points for every scan entry, sharing one field per `q`.
pub fn scan_points(q_max: u64) -> Result<Vec<ParameterPoint>> {
    let fields = candidate_fields(q_max);
    let mut points: Vec<ParameterPoint> = fields
        .into_par_iter()
        .map(|(p, k)| {
            let orders = admissible_orders(p, k);
            if orders.is_empty() {
                return Ok(Vec::new());
            }
            let field = make_field(p, k)?;
            orders.into_iter().map(|e| point_in_field(&field, e)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    points.sort_by_key(|pt| (pt.q(), pt.e));
    Ok(points)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupTriple {
    pub q3: GroupSpec,
    /// `SL4(q)`, always available.
    pub q4a: GroupSpec,
    /// `SU4(sqrt q)`, present only when `q` is a square.
    pub q4b: Option<GroupSpec>,
    pub q5: GroupSpec,
    /// Sylow exponents of `Q3, Q4, Q5` in units of `g`.
    pub sylow_exponents_g: [u32; 3],
    /// `|Q3| * min |Q4| * |Q5|` at the point's own field size.
    pub min_order_product: BigUint,
}

impl SubgroupTriple {
    pub fn q4_options(&self) -> impl Iterator<Item = &GroupSpec> {
        std::iter::once(&self.q4a).chain(self.q4b.as_ref())
    }

    pub fn factors(&self) -> impl Iterator<Item = &GroupSpec> {
        std::iter::once(&self.q3).chain(self.q4_options()).chain(std::iter::once(&self.q5))
    }

    pub fn sylow_sum_g(&self) -> u32 {
        self.sylow_exponents_g.iter().sum()
    }
}

/// Least defining-characteristic Sylow exponent, in powers of `p`, over each
/// of `Q3`, the `Q4` options and `Q5`.
pub fn min_sylow_exponent_p(triple: &SubgroupTriple, p: u64) -> u32 {
    triple
        .factors()
        .map(|g| sylow_exponent_defining(g, p).expect("triple factors are of Lie type over GF(p^m)"))
        .min()
        .expect("the triple is nonempty")
}

/// Sum over `Q3, Q4, Q5` of the Sylow exponent in powers of `p`, taking the
/// smaller `Q4` option.
pub fn sylow_sum_p(triple: &SubgroupTriple, p: u64) -> u32 {
    let exp = |g: &GroupSpec| sylow_exponent_defining(g, p).expect("Lie type over GF(p^m)");
    let q4 = triple.q4_options().map(exp).min().expect("SL4(q) is always present");
    exp(&triple.q3) + q4 + exp(&triple.q5)
}

pub fn subgroup_triple(pt: &ParameterPoint) -> SubgroupTriple {
    let q = pt.q();
    let root = (pt.k % 2 == 0).then(|| pt.p.pow(pt.k / 2));
    let q4a = GroupSpec::classical(Family::SL, 4, q);
    let q4b = root.map(|r| GroupSpec::classical(Family::SU, 4, r));
    let (q3, q5) = match pt.case {
        Case::Case1 => (GroupSpec::classical(Family::SL, 3, q * q), GroupSpec::classical(Family::SL, 5, q)),
        Case::Case2 => {
            let r = root.expect("case 2 fields have even degree");
            (GroupSpec::classical(Family::SL, 3, q), GroupSpec::classical(Family::SU, 5, r))
        }
    };
    // Q4 pairs with the case the same way Q5 does: SL4(q) in case 1 and
    // SU4(sqrt q) in case 2.
    let q4_paired = match pt.case {
        Case::Case1 => &q4a,
        Case::Case2 => q4b.as_ref().expect("case 2 fields have even degree"),
    };
    let g = pt.g();
    let exp = |spec: &GroupSpec| sylow_exponent_defining(spec, g).expect("field sizes are powers of g");
    let sylow_exponents_g = [exp(&q3), exp(q4_paired), exp(&q5)];

    let ord = |spec: &GroupSpec| order(spec).expect("triple factors are valid");
    let min_q4 = std::iter::once(&q4a).chain(q4b.as_ref()).map(ord).min().expect("nonempty");
    let min_order_product = ord(&q3) * min_q4 * ord(&q5);
    SubgroupTriple { q3, q4a, q4b, q5, sylow_exponents_g, min_order_product }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PremiseId {
    AbsolutelyIrreducible,
    NormallyGenerated,
    ContainedInOmega,
    SemisimpleFactorsC4,
    Q3RestrictionPattern,
}

impl PremiseId {
    pub const ALL: [PremiseId; 5] = [
        PremiseId::AbsolutelyIrreducible,
        PremiseId::NormallyGenerated,
        PremiseId::ContainedInOmega,
        PremiseId::SemisimpleFactorsC4,
        PremiseId::Q3RestrictionPattern,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PremiseId::AbsolutelyIrreducible => "absolutely_irreducible",
            PremiseId::NormallyGenerated => "normally_generated",
            PremiseId::ContainedInOmega => "contained_in_omega",
            PremiseId::SemisimpleFactorsC4 => "semisimple_factors_c4",
            PremiseId::Q3RestrictionPattern => "q3_restriction_pattern",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            PremiseId::AbsolutelyIrreducible => {
                "G acts absolutely irreducibly on the 48-dimensional module [Esterle thesis, Prop. 8.2.2]"
            }
            PremiseId::NormallyGenerated => {
                "the image of Q3 x Q4 x Q5 normally generates G [Esterle thesis, Lemma 8.2.1]"
            }
            PremiseId::ContainedInOmega => {
                "G is contained in Omega+_48(g), realised over GF(g) [Esterle thesis, Lemma 3.2.5, Prop. 2.1.2]"
            }
            PremiseId::SemisimpleFactorsC4 => {
                "p does not divide 48, so tensor factors of a semisimple Q3-module are semisimple [Serre, Thm 2.4]"
            }
            PremiseId::Q3RestrictionPattern => {
                "as a Q3-module W = U + Ubar + U* + Ubar* + 36.1 with U, Ubar, U*, Ubar* pairwise non-isomorphic [Esterle thesis, Thm 8.1.1, Table 8.3]"
            }
        }
    }
}

impl fmt::Display for PremiseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for PremiseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PremiseId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Report(format!("unknown premise {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Premise {
    pub id: PremiseId,
    pub asserted: bool,
    pub citation: String,
}

/// Imported facts the audit relies on but does not prove.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PremiseSet {
    pub premises: Vec<Premise>,
}

impl Default for PremiseSet {
    fn default() -> Self {
        PremiseSet {
            premises: PremiseId::ALL
                .into_iter()
                .map(|id| Premise { id, asserted: true, citation: id.citation().to_string() })
                .collect(),
        }
    }
}

impl PremiseSet {
    pub fn withdraw(mut self, id: PremiseId) -> Self {
        for premise in self.premises.iter_mut().filter(|p| p.id == id) {
            premise.asserted = false;
        }
        self
    }

    pub fn is_asserted(&self, id: PremiseId) -> bool {
        self.premises.iter().any(|p| p.id == id && p.asserted)
    }

    pub fn missing(&self) -> Vec<PremiseId> {
        PremiseId::ALL.into_iter().filter(|&id| !self.is_asserted(id)).collect()
    }
}

/// Traces of the twelve diagonal blocks of the 48-dimensional embedding
/// `(q3, q̄3, q3^-T, q̄3^-T, q4, q4, q4^-T, q4^-T, q5, q5, q5^-T, q5^-T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTraces {
    pub q3: FieldElement,
    pub q3_conj: FieldElement,
    pub q3_dual: FieldElement,
    pub q3_conj_dual: FieldElement,
    pub q4: FieldElement,
    pub q4_dual: FieldElement,
    pub q5: FieldElement,
    pub q5_dual: FieldElement,
}

impl BlockTraces {
    /// Block traces for diagonal `q3`, `q4`, `q5` (sizes 3, 4, 5).
    pub fn from_diagonals(
        pt: &ParameterPoint,
        q3: &[FieldElement],
        q4: &[FieldElement],
        q5: &[FieldElement],
    ) -> Result<BlockTraces> {
        if q3.len() != 3 || q4.len() != 4 || q5.len() != 5 {
            return Err(Error::InvalidGroup("diagonal blocks must have sizes 3, 4, 5".into()));
        }
        let field = pt.field();
        if q3.iter().chain(q4).chain(q5).any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let trace = |d: &[FieldElement]| d.iter().fold(field.zero(), |acc, x| acc + x);
        let dual = |d: &[FieldElement]| -> Result<FieldElement> {
            d.iter().try_fold(field.zero(), |acc, x| Ok(acc + x.inverse()?))
        };
        let t3 = trace(q3);
        let t3_dual = dual(q3)?;
        Ok(BlockTraces {
            q3_conj: pt.phi(&t3),
            q3_conj_dual: pt.phi(&t3_dual),
            q3: t3,
            q3_dual: t3_dual,
            q4: trace(q4),
            q4_dual: dual(q4)?,
            q5: trace(q5),
            q5_dual: dual(q5)?,
        })
    }

    /// The element used to rule out subfield subgroups: `diag(alpha,
    /// alpha^-1, 1)` in `Q3` for case 2, `diag(alpha, alpha^-1, 1, 1, 1)` in
    /// `Q5` for case 1, identity elsewhere.
    pub fn subfield_test_element(pt: &ParameterPoint) -> BlockTraces {
        let one = pt.field().one();
        let (a, ai) = (pt.alpha.clone(), pt.alpha_inverse());
        let ident = |n| vec![one.clone(); n];
        let result = match pt.case {
            Case::Case2 => Self::from_diagonals(pt, &[a, ai, one.clone()], &ident(4), &ident(5)),
            Case::Case1 => {
                Self::from_diagonals(pt, &ident(3), &ident(4), &[a, ai, one.clone(), one.clone(), one.clone()])
            }
        };
        result.expect("test elements are well formed")
    }
}

/// Trace of the 48x48 block-diagonal image.
pub fn embedding_trace(t: &BlockTraces) -> Result<FieldElement> {
    let all = [&t.q3, &t.q3_conj, &t.q3_dual, &t.q3_conj_dual, &t.q4, &t.q4_dual, &t.q5, &t.q5_dual];
    let field = t.q3.field();
    if all.iter().any(|x| x.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let doubled = (&t.q4 + &t.q4_dual) + (&t.q5 + &t.q5_dual);
    Ok(&t.q3 + &t.q3_conj + &t.q3_dual + &t.q3_conj_dual + doubled.scale(2))
}
