//! Static renderings: a linear ASCII chord diagram and a Graphviz graph of
//! chord interleaving.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::diagram::{interleaved, ChordId, GaussDiagram, Role};

const CELL: usize = 5;

/// Relabels chords `1..n` by first occurrence, matching the serialized code.
fn labels(d: &GaussDiagram) -> BTreeMap<ChordId, u32> {
    let mut out = BTreeMap::new();
    for e in d.endpoints() {
        let next = out.len() as u32 + 1;
        out.entry(e.chord).or_insert(next);
    }
    out
}

/// One column per endpoint, one row per chord running from `T` to `H`.
pub fn render_ascii(d: &GaussDiagram) -> String {
    if d.is_empty() {
        return "(empty diagram)\n".to_string();
    }
    let labels = labels(d);
    let mut out = String::new();
    let _ = write!(out, "{:<6}", "pos");
    for i in 0..d.len() {
        let _ = write!(out, "{:<CELL$}", i);
    }
    out.push('\n');
    let _ = write!(out, "{:<6}", "code");
    for e in d.endpoints() {
        let token = format!("{}{}{}", e.role.code_letter(), labels[&e.chord], d.sign(e.chord).expect("valid"));
        let _ = write!(out, "{token:<CELL$}");
    }
    out.push('\n');
    let mut rows: Vec<(u32, ChordId)> = labels.iter().map(|(&c, &l)| (l, c)).collect();
    rows.sort();
    for (label, chord) in rows {
        let (t, h) = d.chord_positions(chord).expect("valid");
        let (lo, hi) = (t.min(h), t.max(h));
        let mut row = vec![' '; d.len() * CELL];
        for cell in row.iter_mut().take(hi * CELL + 1).skip(lo * CELL) {
            *cell = '-';
        }
        row[t * CELL] = Role::Tail.short();
        row[h * CELL] = Role::Head.short();
        let line: String = row.into_iter().collect();
        let _ = writeln!(out, "{:<6}{}", format!("{label}{}", d.sign(chord).expect("valid")), line.trim_end());
    }
    out
}

/// Undirected graph with one node per chord and an edge per interleaved pair.
pub fn render_dot(d: &GaussDiagram) -> String {
    let labels = labels(d);
    let mut nodes: Vec<(u32, ChordId)> = labels.iter().map(|(&c, &l)| (l, c)).collect();
    nodes.sort();
    let mut out = String::from("graph interleaving {\n");
    for &(label, chord) in &nodes {
        let _ = writeln!(out, "  c{label} [label=\"{label}{}\"];", d.sign(chord).expect("valid"));
    }
    for (i, &(la, a)) in nodes.iter().enumerate() {
        for &(lb, b) in &nodes[i + 1..] {
            if interleaved(d, a, b).unwrap_or(false) {
                let _ = writeln!(out, "  c{la} -- c{lb};");
            }
        }
    }
    out.push_str("}\n");
    out
}
