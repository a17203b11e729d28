//! The fifteen exceptional quasisimple groups with a 48-dimensional
//! irreducible representation in non-defining characteristic, with orders.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{order, parse_descriptor, GroupSpec};
use crate::error::{Error, Result};

/// Simple groups stored by name, with their orders.
pub const KNOWN_SIMPLE: &[(&str, u64)] = &[
    ("L3(4)", 20_160),
    ("U3(5)", 126_000),
    ("S6(2)", 1_451_520),
    ("O8+(2)", 174_182_400),
    ("Sz(8)", 29_120),
    ("M22", 443_520),
];

pub(crate) fn known_simple_order(base: &str) -> Option<BigUint> {
    KNOWN_SIMPLE
        .iter()
        .find(|(name, _)| name.eq_ignore_ascii_case(base))
        .map(|&(_, order)| BigUint::from(order))
}

/// Splits `12_2.L3(4)` into `(Some("12_2"), "L3(4)")`.
pub(crate) fn strip_cover(label: &str) -> (Option<&str>, &str) {
    match label.split_once('.') {
        Some((head, tail)) if head.bytes().all(|b| b.is_ascii_digit() || b == b'_') => (Some(head), tail),
        _ => (None, label),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalTableRow {
    pub index: u8,
    pub group: GroupSpec,
    pub ell_condition: String,
    pub field_condition: String,
    #[serde(with = "crate::decimal")]
    pub order: BigUint,
}

const ROWS: &[(&str, &str, &str, u64)] = &[
    ("2.A8", "≠ 2", "", 40_320),
    ("A9", "0,2", "", 181_440),
    ("2.A9", "3", "", 362_880),
    ("2.A9", "≠ 2,3", "i6", 362_880),
    ("A10", "2", "", 1_814_400),
    ("2.A10", "3", "", 3_628_800),
    ("2.A10", "≠ 2,3", "i6", 3_628_800),
    ("12_1.L3(4)", "0,7", "z12,b5", 241_920),
    ("12_2.L3(4)", "0,7", "z12,b5", 241_920),
    ("12_2.L3(4)", "5", "z12", 241_920),
    ("3.U3(5)", "≠ 3,5", "z3", 378_000),
    ("2.S6(2)", "≠ 2,7", "", 2_903_040),
    ("O8+(2)", "3", "", 174_182_400),
    ("2.Sz(8)", "5", "c13", 58_240),
    ("12.M22", "5", "z12,b11", 5_322_240),
];

pub fn exceptional_table() -> Vec<ExceptionalTableRow> {
    ROWS.iter()
        .enumerate()
        .map(|(i, &(label, ell, field, order))| ExceptionalTableRow {
            index: i as u8 + 1,
            group: parse_descriptor(label).expect("embedded labels parse"),
            ell_condition: ell.to_string(),
            field_condition: field.to_string(),
            order: BigUint::from(order),
        })
        .collect()
}

/// Whether the stored order equals cover times the simple order.
pub fn cross_check(row: &ExceptionalTableRow) -> bool {
    order(&row.group).map(|o| o == row.order).unwrap_or(false)
}

const HEADER: [&str; 6] = ["index", "name", "cover", "ell_condition", "field_condition", "order"];

pub fn export_csv(rows: &[ExceptionalTableRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(HEADER).expect("in-memory write");
    for row in rows {
        writer
            .write_record([
                row.index.to_string(),
                row.group.to_string(),
                row.group.cover.to_string(),
                row.ell_condition.clone(),
                row.field_condition.clone(),
                row.order.to_string(),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// Reads rows written by [`export_csv`]. The order column is taken as given;
/// use [`cross_check`] to validate it.
pub fn import_csv(text: &str) -> Result<Vec<ExceptionalTableRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Table(e.to_string()))?;
    if headers.iter().ne(HEADER) {
        return Err(Error::Table(format!("unexpected header {headers:?}")));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Table(e.to_string()))?;
        if record.len() != HEADER.len() {
            return Err(Error::Table(format!("expected 6 columns, got {}", record.len())));
        }
        let index: u8 = record[0].parse().map_err(|_| Error::Table(format!("bad index {:?}", &record[0])))?;
        let group = parse_descriptor(&record[1]).map_err(|e| Error::Table(e.to_string()))?;
        let cover: u64 = record[2].parse().map_err(|_| Error::Table(format!("bad cover {:?}", &record[2])))?;
        if cover != group.cover {
            return Err(Error::Table(format!("cover column {cover} disagrees with {}", &record[1])));
        }
        let order = crate::decimal::parse(&record[5]).map_err(Error::Table)?;
        rows.push(ExceptionalTableRow {
            index,
            group,
            ell_condition: record[3].to_string(),
            field_condition: record[4].to_string(),
            order,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Family;

    #[test]
    fn fifteen_rows_cross_check() {
        let rows = exceptional_table();
        assert_eq!(rows.len(), 15);
        assert!(rows.iter().all(cross_check));
        assert_eq!(rows[12].order, BigUint::from(174_182_400u64));
        let max = rows.iter().map(|r| r.order.clone()).max().unwrap();
        assert_eq!(max, BigUint::from(174_182_400u64));
    }

    #[test]
    fn named_orders_match_lie_formulas() {
        let lie = |family, n, q| order(&GroupSpec::classical(family, n, q)).unwrap();
        let named = |s: &str| known_simple_order(s).unwrap();
        assert_eq!(named("L3(4)"), lie(Family::PSL, 3, 4));
        assert_eq!(named("U3(5)"), lie(Family::PSU, 3, 5));
        assert_eq!(named("S6(2)"), lie(Family::PSp, 6, 2));
        assert_eq!(named("O8+(2)"), lie(Family::OmegaPlus, 8, 2));
        // |Sz(q)| = q^2 (q^2 + 1)(q - 1)
        assert_eq!(named("Sz(8)"), BigUint::from(64u32 * 65 * 7));
        assert_eq!(named("M22"), BigUint::from(2u64.pow(7) * 9 * 5 * 7 * 11));
    }

    #[test]
    fn csv_roundtrip() {
        let rows = exceptional_table();
        let text = export_csv(&rows);
        assert!(text.contains("\"z12,b5\""));
        assert_eq!(import_csv(&text).unwrap(), rows);
    }

    #[test]
    fn csv_rejects_inconsistent_cover() {
        let text = "index,name,cover,ell_condition,field_condition,order\n1,2.A8,3,,,40320\n";
        assert!(import_csv(text).is_err());
        assert!(import_csv("a,b\n1,2\n").is_err());
        let bad_order = "index,name,cover,ell_condition,field_condition,order\n1,2.A8,2,,,-4\n";
        assert!(import_csv(bad_order).is_err());
    }

    #[test]
    fn tampered_order_fails_cross_check() {
        let mut row = exceptional_table().remove(0);
        row.order += 1u32;
        assert!(!cross_check(&row));
    }
}
