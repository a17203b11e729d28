//! Full audit of one parameter point, its canonical JSON and text forms, and
//! the re-evaluation passes used to check emitted certificates.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::checks::{check_c1, check_c2, check_c3, check_c4, check_c5, check_c6_c7, check_s_defining, check_s_nondefining};
use super::evidence::{ClassTag, Evidence, ExclusionVerdict, Relation};
use crate::error::{Error, Result};
use crate::groups::{exceptional_table, order, Family, GroupSpec};
use crate::params::{admissible, subgroup_triple, Case, ParameterPoint, PremiseId, PremiseSet, SubgroupTriple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub p: u64,
    pub e: u64,
    pub k: u32,
    pub q: u64,
    pub g: u64,
    pub g_exponent: u32,
    pub case: Case,
    pub one_sim_two: bool,
    /// Coefficients of alpha in the power basis, ascending.
    pub alpha: Vec<u64>,
    /// Ascending coefficients of the monic field modulus.
    pub modulus: Vec<u64>,
}

impl From<&ParameterPoint> for PointRecord {
    fn from(pt: &ParameterPoint) -> Self {
        PointRecord {
            p: pt.p,
            e: pt.e,
            k: pt.k,
            q: pt.q(),
            g: pt.g(),
            g_exponent: pt.g_exponent,
            case: pt.case,
            one_sim_two: pt.one_sim_two,
            alpha: pt.alpha.coeffs().to_vec(),
            modulus: pt.field().modulus().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub label: String,
    #[serde(with = "crate::decimal")]
    pub order: BigUint,
}

impl From<&GroupSpec> for GroupRecord {
    fn from(spec: &GroupSpec) -> Self {
        GroupRecord { label: spec.to_string(), order: order(spec).expect("triple factors are valid") }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRecord {
    pub q3: GroupRecord,
    pub q4: Vec<GroupRecord>,
    pub q5: GroupRecord,
    pub sylow_exponents_g: [u32; 3],
    #[serde(with = "crate::decimal")]
    pub min_order_product: BigUint,
}

impl From<&SubgroupTriple> for TripleRecord {
    fn from(t: &SubgroupTriple) -> Self {
        TripleRecord {
            q3: (&t.q3).into(),
            q4: t.q4_options().map(GroupRecord::from).collect(),
            q5: (&t.q5).into(),
            sylow_exponents_g: t.sylow_exponents_g,
            min_order_product: t.min_order_product.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Conclusion {
    Concluded { group: String },
    Inconclusive { gaps: Vec<String> },
}

impl Conclusion {
    pub fn is_concluded(&self) -> bool {
        matches!(self, Conclusion::Concluded { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub point: PointRecord,
    pub triple: TripleRecord,
    pub premises: PremiseSet,
    pub verdicts: Vec<ExclusionVerdict>,
    pub notes: Vec<String>,
    pub conclusion: Conclusion,
}

/// Runs every class check at `pt` under `premises`.
pub fn run_full_audit(pt: &ParameterPoint, premises: &PremiseSet) -> AuditReport {
    let triple = subgroup_triple(pt);
    let table = exceptional_table();
    let [c6, c7] = check_c6_c7();
    let [s_table, s_psl2, s_alt] = check_s_nondefining(pt, &triple, &table);
    let verdicts = vec![
        check_c1(premises),
        check_c2(pt, &triple),
        check_c3(premises),
        check_c4(pt, premises),
        check_c5(pt, premises),
        c6,
        c7,
        s_table,
        s_psl2,
        s_alt,
        check_s_defining(pt, &triple),
    ];
    let mut notes = Vec::new();
    if pt.p == 7 {
        notes.push("p = 7 lies below the p >= 11 shortcut; C2 compares exact Sylow exponents instead".to_string());
    }
    if pt.g_exponent == 1 {
        notes.push(format!("g = {} is prime, so the subfield class is vacuous", pt.g()));
    }
    let conclusion = conclude(pt.one_sim_two, pt.g(), premises, &verdicts);
    AuditReport {
        point: pt.into(),
        triple: (&triple).into(),
        premises: premises.clone(),
        verdicts,
        notes,
        conclusion,
    }
}

fn target_group(g: u64) -> String {
    GroupSpec::classical(Family::OmegaPlus, 48, g).to_string()
}

fn conclude(one_sim_two: bool, g: u64, premises: &PremiseSet, verdicts: &[ExclusionVerdict]) -> Conclusion {
    let mut gaps = Vec::new();
    if !one_sim_two {
        gaps.push("condition 1~2 fails: GF(p)(a, xi + 1/xi) != GF(p)(a + 1/a, xi + 1/xi)".to_string());
    }
    for id in premises.missing() {
        gaps.push(format!("premise withdrawn: {id}"));
    }
    for tag in ClassTag::ALL {
        match verdicts.iter().filter(|v| v.class_tag == tag).count() {
            1 => {}
            0 => gaps.push(format!("{tag} verdict missing")),
            n => gaps.push(format!("{tag} verdict appears {n} times")),
        }
    }
    if verdicts.len() != ClassTag::ALL.len() {
        gaps.push(format!("expected {} verdicts, found {}", ClassTag::ALL.len(), verdicts.len()));
    }
    for v in verdicts {
        if !v.is_consistent() {
            gaps.push(format!("{} verdict is inconsistent with its evidence", v.class_tag));
        }
        if !v.excluded {
            if v.gaps.is_empty() {
                gaps.push(format!("{} not excluded", v.class_tag));
            }
            gaps.extend(v.gaps.iter().cloned());
        }
    }
    if gaps.is_empty() {
        Conclusion::Concluded { group: target_group(g) }
    } else {
        Conclusion::Inconclusive { gaps }
    }
}

impl AuditReport {
    pub fn is_concluded(&self) -> bool {
        self.conclusion.is_concluded()
    }

    /// Canonical JSON: fields in declaration order, big integers as decimal
    /// strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<AuditReport> {
        serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let pt = &self.point;
        let _ = writeln!(out, "audit report");
        let _ = writeln!(
            out,
            "point: p={} e={} k={} q={} g={} {} one_sim_two={}",
            pt.p, pt.e, pt.k, pt.q, pt.g, pt.case, pt.one_sim_two
        );
        let _ = writeln!(out, "alpha: {:?} modulo {:?}", pt.alpha, pt.modulus);
        let t = &self.triple;
        let q4: Vec<&str> = t.q4.iter().map(|g| g.label.as_str()).collect();
        let _ = writeln!(out, "triple: Q3={} Q4 in {{{}}} Q5={}", t.q3.label, q4.join(", "), t.q5.label);
        let [a, b, c] = t.sylow_exponents_g;
        let _ = writeln!(out, "sylow exponents in powers of g: {a} + {b} + {c} = {}", a + b + c);
        let _ = writeln!(out, "min |Q3||Q4||Q5|: {}", t.min_order_product);
        for premise in &self.premises.premises {
            let state = if premise.asserted { "asserted" } else { "WITHDRAWN" };
            let _ = writeln!(out, "premise {}: {state} | {}", premise.id, premise.citation);
        }
        for v in &self.verdicts {
            let state = match (v.excluded, v.vacuous) {
                (true, true) => "excluded (vacuous)",
                (true, false) => "excluded",
                (false, _) => "NOT EXCLUDED",
            };
            let _ = writeln!(out, "verdict {}: {state}", v.class_tag);
            for e in &v.evidence {
                match e {
                    Evidence::Inequality(i) => {
                        let _ = writeln!(out, "  ineq {} {} {} | {} | {}", i.lhs, i.relation, i.rhs, i.label, i.citation);
                    }
                    Evidence::Premise { id, asserted } => {
                        let _ = writeln!(out, "  premise {id} {}", if *asserted { "asserted" } else { "withdrawn" });
                    }
                    Evidence::Fact { statement, citation } => {
                        let _ = writeln!(out, "  fact {statement} | {citation}");
                    }
                }
            }
            if let Some(super::Witness::TensorSearch(s)) = &v.witness {
                let _ = writeln!(
                    out,
                    "  witness profiles={} closed_form={} max_bound={} feasible={}",
                    s.profiles_examined, s.closed_form_count, s.max_trivial_bound, s.feasible_count
                );
            }
            for gap in &v.gaps {
                let _ = writeln!(out, "  gap {gap}");
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        match &self.conclusion {
            Conclusion::Concluded { group } => {
                let _ = writeln!(out, "conclusion: CONCLUDED G = {group}");
            }
            Conclusion::Inconclusive { gaps } => {
                let _ = writeln!(out, "conclusion: INCONCLUSIVE");
                for gap in gaps {
                    let _ = writeln!(out, "  gap {gap}");
                }
            }
        }
        out
    }

    /// Re-runs the audit from `(p, e)` and the recorded premises.
    pub fn rederive(&self) -> Result<AuditReport> {
        let pt = admissible(self.point.p, self.point.e)?
            .accepted()
            .ok_or_else(|| Error::Report(format!("point ({}, {}) is not admissible", self.point.p, self.point.e)))?;
        Ok(run_full_audit(&pt, &self.premises))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Revalidation {
    pub inequalities_checked: usize,
    pub failures: Vec<String>,
}

impl Revalidation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Typed re-evaluation of every inequality and of the conclusion.
pub fn revalidate(report: &AuditReport) -> Revalidation {
    let mut out = Revalidation::default();
    for v in &report.verdicts {
        for i in v.inequalities() {
            out.inequalities_checked += 1;
            if v.excluded && !i.holds() {
                out.failures.push(format!("{}: {} does not hold", v.class_tag, i.label));
            }
        }
        if v.excluded && v.evidence.is_empty() {
            out.failures.push(format!("{} is excluded without evidence", v.class_tag));
        }
    }
    let expected = conclude(report.point.one_sim_two, report.point.g, &report.premises, &report.verdicts);
    if expected.is_concluded() != report.is_concluded() {
        out.failures.push("conclusion does not follow from the verdicts".to_string());
    }
    out
}

fn json_decimal(v: &Value, field: &str) -> std::result::Result<BigUint, String> {
    let text = v.get(field).and_then(Value::as_str).ok_or_else(|| format!("missing string field {field}"))?;
    crate::decimal::parse(text)
}

/// Re-evaluates a JSON report without going through the typed decoder: every
/// object tagged `"kind": "inequality"` is parsed and compared afresh, and
/// the verdict/conclusion structure is checked.
pub fn revalidate_json(text: &str) -> Result<Revalidation> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))?;
    let verdicts = root
        .get("verdicts")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Report("missing verdicts array".into()))?;
    let mut out = Revalidation::default();
    let mut all_excluded = true;
    let mut tags = Vec::new();
    for verdict in verdicts {
        let tag = verdict.get("class_tag").and_then(Value::as_str).unwrap_or("?").to_string();
        let excluded = verdict.get("excluded").and_then(Value::as_bool).unwrap_or(false);
        all_excluded &= excluded;
        let evidence = verdict.get("evidence").and_then(Value::as_array).cloned().unwrap_or_default();
        if excluded && evidence.is_empty() {
            out.failures.push(format!("{tag} is excluded without evidence"));
        }
        for record in evidence.iter().filter(|r| r.get("kind").and_then(Value::as_str) == Some("inequality")) {
            out.inequalities_checked += 1;
            let relation = record
                .get("relation")
                .and_then(Value::as_str)
                .and_then(|r| Relation::ALL.into_iter().find(|rel| serde_json::to_value(rel).ok().as_ref().and_then(Value::as_str) == Some(r)));
            let parsed = json_decimal(record, "lhs").and_then(|l| json_decimal(record, "rhs").map(|r| (l, r)));
            match (relation, parsed) {
                (Some(rel), Ok((lhs, rhs))) => {
                    if excluded && !rel.holds(&lhs, &rhs) {
                        let label = record.get("label").and_then(Value::as_str).unwrap_or("");
                        out.failures.push(format!("{tag}: {label} does not hold"));
                    }
                }
                (None, _) => out.failures.push(format!("{tag}: unknown relation")),
                (_, Err(e)) => out.failures.push(format!("{tag}: {e}")),
            }
        }
        tags.push(tag);
    }
    tags.sort();
    let mut expected: Vec<String> = ClassTag::ALL.iter().map(|t| t.as_str().to_string()).collect();
    expected.sort();
    let status = root.pointer("/conclusion/status").and_then(Value::as_str);
    let premises_ok = root
        .pointer("/premises/premises")
        .and_then(Value::as_array)
        .map(|ps| {
            PremiseId::ALL.iter().all(|id| {
                ps.iter().any(|p| {
                    p.get("id").and_then(Value::as_str) == Some(id.as_str())
                        && p.get("asserted").and_then(Value::as_bool) == Some(true)
                })
            })
        })
        .unwrap_or(false);
    let one_sim_two = root.pointer("/point/one_sim_two").and_then(Value::as_bool).unwrap_or(false);
    if status == Some("concluded") {
        if tags != expected {
            out.failures.push("concluded report does not carry exactly one verdict per class".into());
        }
        if !all_excluded || !premises_ok || !one_sim_two {
            out.failures.push("concluded report has an open verdict, premise or hypothesis".into());
        }
    } else if status != Some("inconclusive") {
        out.failures.push("unknown conclusion status".into());
    }
    Ok(out)
}

/// Re-evaluates the `ineq` lines of a text report. Returns the number of
/// lines checked and the ones that fail to hold.
pub fn revalidate_text(text: &str) -> Result<Revalidation> {
    let mut out = Revalidation::default();
    let mut excluded = false;
    let mut saw_conclusion = false;
    for (lineno, line) in text.lines().enumerate() {
        if let Some(rest) = line.strip_prefix("verdict ") {
            excluded = rest.contains(": excluded");
            continue;
        }
        if line.starts_with("conclusion: ") {
            saw_conclusion = true;
        }
        let Some(rest) = line.trim_start().strip_prefix("ineq ") else { continue };
        let head = rest.split(" | ").next().unwrap_or("");
        let tokens: Vec<&str> = head.split(' ').collect();
        let [lhs, rel, rhs] = tokens.as_slice() else {
            return Err(Error::Report(format!("line {}: malformed inequality", lineno + 1)));
        };
        let rel = Relation::from_symbol(rel)
            .ok_or_else(|| Error::Report(format!("line {}: unknown relation {rel:?}", lineno + 1)))?;
        let lhs = crate::decimal::parse(lhs).map_err(|e| Error::Report(format!("line {}: {e}", lineno + 1)))?;
        let rhs = crate::decimal::parse(rhs).map_err(|e| Error::Report(format!("line {}: {e}", lineno + 1)))?;
        out.inequalities_checked += 1;
        if excluded && !rel.holds(&lhs, &rhs) {
            out.failures.push(format!("line {}: {} does not hold", lineno + 1, head));
        }
    }
    if !saw_conclusion {
        return Err(Error::Report("no conclusion line".into()));
    }
    Ok(out)
}
