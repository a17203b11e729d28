//! Group descriptor grammar, case-insensitive:
//!
//! ```text
//! descriptor := [cover "."] body
//! cover      := digits ["_" digits]        subscript digits are accepted for "_"
//! body       := family "(" n "," q ")"    GL SL PSL SU PSU Sp PSp Omega+ Omega- Omega
//!             | ("Sym" | "Alt") "(" n ")"
//!             | "A" n
//!             | known simple name          L3(4) U3(5) S6(2) O8+(2) Sz(8) M22
//! ```
//!
//! A cover index such as the `2` in `12_2.L3(4)` is only meaningful for the
//! named groups and is rejected elsewhere.

use super::table::KNOWN_SIMPLE;
use super::{Family, GroupSpec};
use crate::arith::prime_power;
use crate::error::{Error, Result};

pub const MAX_RANK: u32 = 256;
pub const MAX_FIELD: u64 = 1 << 40;
pub const MAX_COVER: u64 = 1_000_000;

fn fail(input: &str, reason: impl Into<String>) -> Error {
    Error::Descriptor { input: input.to_string(), reason: reason.into() }
}

fn normalize(input: &str) -> String {
    let mut out = String::with_capacity(input.len());
    let mut in_subscript = false;
    for ch in input.chars() {
        if ch.is_whitespace() {
            continue;
        }
        if let Some(d) = ('\u{2080}'..='\u{2089}').position(|s| s == ch) {
            if !in_subscript {
                out.push('_');
            }
            out.push(char::from(b'0' + d as u8));
            in_subscript = true;
        } else {
            out.push(ch);
            in_subscript = false;
        }
    }
    out
}

fn parse_int<T: std::str::FromStr>(input: &str, text: &str, what: &str) -> Result<T> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(fail(input, format!("{what} must be a decimal integer, got {text:?}")));
    }
    text.parse().map_err(|_| fail(input, format!("{what} out of range")))
}

fn family_keyword(word: &str) -> Option<Family> {
    Some(match word {
        "GL" => Family::GL,
        "SL" => Family::SL,
        "PSL" => Family::PSL,
        "SU" => Family::SU,
        "PSU" => Family::PSU,
        "SP" => Family::Sp,
        "PSP" => Family::PSp,
        "OMEGA+" | "OMEGAPLUS" | "O+" => Family::OmegaPlus,
        "OMEGA-" | "OMEGAMINUS" | "O-" => Family::OmegaMinus,
        "OMEGA" | "OMEGAODD" | "O" => Family::OmegaOdd,
        "SYM" => Family::Sym,
        "ALT" => Family::Alt,
        _ => return None,
    })
}

/// Parses a group descriptor such as `SU(5,11)`, `2.A8` or `12_2.L3(4)`.
pub fn parse_descriptor(input: &str) -> Result<GroupSpec> {
    let text = normalize(input);
    if text.is_empty() {
        return Err(fail(input, "empty descriptor"));
    }
    let (cover_label, body) = match text.split_once('.') {
        Some((head, tail)) => (Some(head), tail),
        None => (None, text.as_str()),
    };
    let (cover, indexed) = match cover_label {
        None => (1, false),
        Some(label) => {
            let (digits, index) = match label.split_once('_') {
                Some((d, i)) => (d, Some(i)),
                None => (label, None),
            };
            let cover: u64 = parse_int(input, digits, "cover")?;
            if let Some(index) = index {
                parse_int::<u32>(input, index, "cover index")?;
            }
            if cover == 0 || cover > MAX_COVER {
                return Err(fail(input, format!("cover must lie in 1..={MAX_COVER}")));
            }
            (cover, index.is_some())
        }
    };
    let upper = body.to_ascii_uppercase();

    if let Some((base, _)) = KNOWN_SIMPLE.iter().find(|(name, _)| name.to_ascii_uppercase() == upper) {
        let name = match cover_label {
            Some(label) if label != "1" => format!("{label}.{base}"),
            _ => base.to_string(),
        };
        return Ok(GroupSpec { family: Family::SporadicOrCover, n: 1, q: None, cover, name: Some(name) });
    }
    if indexed {
        return Err(fail(input, "a cover index is only allowed on named groups"));
    }

    if let Some(rest) = upper.strip_prefix('A') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            let n = parse_int::<u32>(input, rest, "degree")?;
            return finish(input, GroupSpec::alt(n).with_cover(cover));
        }
    }

    let open = upper.find('(').ok_or_else(|| fail(input, "expected FAMILY(n,q) or a known group name"))?;
    let args = upper[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| fail(input, "missing closing parenthesis"))?;
    let family = family_keyword(&upper[..open])
        .ok_or_else(|| fail(input, format!("unknown family {:?}", &body[..open])))?;
    let parts: Vec<&str> = args.split(',').collect();
    let spec = match (family, parts.as_slice()) {
        (Family::Sym, [n]) => GroupSpec::sym(parse_int(input, n, "degree")?),
        (Family::Alt, [n]) => GroupSpec::alt(parse_int(input, n, "degree")?),
        (Family::Sym | Family::Alt, _) => return Err(fail(input, "expected a single degree argument")),
        (family, [n, q]) => {
            let n = parse_int(input, n, "rank")?;
            let q: u64 = parse_int(input, q, "field size")?;
            if q > MAX_FIELD || prime_power(q).is_none() {
                return Err(fail(input, format!("field size {q} is not a supported prime power")));
            }
            GroupSpec::classical(family, n, q)
        }
        _ => return Err(fail(input, "expected two arguments (n,q)")),
    };
    finish(input, spec.with_cover(cover))
}

fn finish(input: &str, spec: GroupSpec) -> Result<GroupSpec> {
    if spec.n == 0 || spec.n > MAX_RANK {
        return Err(fail(input, format!("n must lie in 1..={MAX_RANK}")));
    }
    Ok(spec)
}
