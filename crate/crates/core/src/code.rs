//! Signed Gauss code text: `O<label><sign>` for an over passage (chord tail),
//! `U<label><sign>` for an under passage (chord head). Whitespace between
//! tokens is ignored.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::diagram::{ChordId, Endpoint, GaussDiagram, Role, Sign};
use crate::error::{Error, Result};

pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut tokens: Vec<(u32, Role, Sign)> = Vec::new();
    let syntax = |offset: usize, message: &str| Error::Syntax { offset, message: message.to_string() };

    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let role = match b {
            b'O' => Role::Tail,
            b'U' => Role::Head,
            _ => return Err(syntax(i, "expected 'O' or 'U'")),
        };
        i += 1;
        let start = i;
        if i >= bytes.len() || !(b'1'..=b'9').contains(&bytes[i]) {
            return Err(syntax(i, "expected label starting with 1-9"));
        }
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let label: u32 = text[start..i]
            .parse()
            .map_err(|_| syntax(start, "label out of range"))?;
        let sign = bytes
            .get(i)
            .and_then(|&c| Sign::from_char(c as char))
            .ok_or_else(|| syntax(i, "expected sign '+' or '-'"))?;
        i += 1;
        tokens.push((label, role, sign));
    }

    let mut occurrences: BTreeMap<u32, Vec<(Role, Sign)>> = BTreeMap::new();
    for &(label, role, sign) in &tokens {
        occurrences.entry(label).or_default().push((role, sign));
    }
    let mut signs = BTreeMap::new();
    for (&label, occ) in &occurrences {
        if occ.len() != 2 {
            return Err(Error::LabelCount { label, count: occ.len() });
        }
        if occ[0].0 == occ[1].0 {
            return Err(Error::LabelRole { label, over: occ[0].0 == Role::Tail });
        }
        if occ[0].1 != occ[1].1 {
            return Err(Error::SignMismatch { label });
        }
        signs.insert(ChordId(label), occ[0].1);
    }
    let endpoints = tokens
        .into_iter()
        .map(|(label, role, _)| Endpoint::new(ChordId(label), role))
        .collect();
    GaussDiagram::new(endpoints, signs)
}

/// Gauss code with chords relabelled `1..n` in order of first occurrence.
pub fn serialize(d: &GaussDiagram) -> String {
    let mut out = String::with_capacity(d.len() * 3);
    for (label, role, sign) in d.normalized_word() {
        let _ = write!(out, "{}{}{}", role.code_letter(), label, sign);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_codes() {
        assert!(parse_gauss_code("").unwrap().is_empty());
        let d = parse_gauss_code("O1+U1+").unwrap();
        assert_eq!(d.chord_count(), 1);
        assert_eq!(d.at(0), Endpoint::tail(1));
        assert_eq!(d.at(1), Endpoint::head(1));
        assert_eq!(d.sign(ChordId(1)), Some(Sign::Plus));
        let t = parse_gauss_code(" O1+ U2+ O3+\tU1+ O2+ U3+ ").unwrap();
        assert_eq!(t.chord_count(), 3);
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(matches!(parse_gauss_code("O1+U2+"), Err(Error::LabelCount { label: 1, count: 1 })));
        assert!(matches!(parse_gauss_code("O1+O1+"), Err(Error::LabelRole { label: 1, over: true })));
        assert!(matches!(parse_gauss_code("O1+U1-"), Err(Error::SignMismatch { label: 1 })));
        assert!(matches!(parse_gauss_code("O1+U1+U1+"), Err(Error::LabelCount { count: 3, .. })));
        for bad in ["X1+", "O0+U0+", "O1U1", "O+", "O1*U1*", "O99999999999+"] {
            assert!(matches!(parse_gauss_code(bad), Err(Error::Syntax { .. })), "{bad}");
        }
    }

    #[test]
    fn serializes_with_relabelling() {
        assert_eq!(serialize(&GaussDiagram::empty()), "");
        assert_eq!(serialize(&parse_gauss_code("U1+O1+").unwrap()), "U1+O1+");
        assert_eq!(serialize(&parse_gauss_code("O5-O3+U5-U3+").unwrap()), "O1-O2+U1-U2+");
    }
}
