//! Oriented variants of moves II and III, loaded from a JSON table.
//!
//! A variant is a list of arcs (runs of two cyclically adjacent endpoints),
//! each endpoint naming a role and a chord tag, plus sign constraints between
//! tags. Move II variants have two arcs over two chords; move III variants
//! have three arcs over three chords, each pair of chords sharing one arc.
//! Applying a III variant reverses every arc, so the table must also contain
//! the reversed pattern of each III entry.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagram::{ChordId, GaussDiagram, Role, Sign};
use crate::error::{Error, Result};

const DEFAULT_TABLE: &str = include_str!("../data/variants.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TableFile {
    r2_variants: Vec<VariantFile>,
    r3_variants: Vec<VariantFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct VariantFile {
    id: String,
    pattern: Vec<Vec<EndpointFile>>,
    #[serde(default)]
    signs: Vec<ConstraintFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EndpointFile {
    role: String,
    chord: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ConstraintFile {
    Relation { chords: [String; 2], relation: String },
    Fixed { chord: String, fixed: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PatternPoint {
    pub tag: usize,
    pub role: Role,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Constraint {
    Equal(usize, usize),
    Opposite(usize, usize),
    Fixed(usize, Sign),
}

impl Constraint {
    fn holds(&self, signs: &[Sign]) -> bool {
        match *self {
            Constraint::Equal(a, b) => signs[a] == signs[b],
            Constraint::Opposite(a, b) => signs[a] != signs[b],
            Constraint::Fixed(a, s) => signs[a] == s,
        }
    }

}

/// One compiled table entry. Tags are numbered in order of first appearance
/// in the pattern.
#[derive(Clone, Debug)]
pub struct Variant {
    pub id: String,
    pub tags: Vec<String>,
    pub arcs: Vec<[PatternPoint; 2]>,
    pub constraints: Vec<Constraint>,
}

impl Variant {
    pub fn signs_ok(&self, signs: &[Sign]) -> bool {
        self.constraints.iter().all(|c| c.holds(signs))
    }

    /// Sign of every tag given the sign of tag 0, when the constraints
    /// determine it.
    pub fn derive_signs(&self, first: Sign) -> Option<Vec<Sign>> {
        let mut signs: Vec<Option<Sign>> = vec![None; self.tags.len()];
        signs[0] = Some(first);
        let mut changed = true;
        while changed {
            changed = false;
            for c in &self.constraints {
                let (a, b, same) = match *c {
                    Constraint::Equal(a, b) => (a, b, true),
                    Constraint::Opposite(a, b) => (a, b, false),
                    Constraint::Fixed(a, s) => {
                        if signs[a].is_none() {
                            signs[a] = Some(s);
                            changed = true;
                        }
                        continue;
                    }
                };
                let rel = |s: Sign| if same { s } else { s.flip() };
                match (signs[a], signs[b]) {
                    (Some(s), None) => {
                        signs[b] = Some(rel(s));
                        changed = true;
                    }
                    (None, Some(s)) => {
                        signs[a] = Some(rel(s));
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let signs: Option<Vec<Sign>> = signs.into_iter().collect();
        signs.filter(|s| self.signs_ok(s))
    }

    /// Matches the variant against `d` with arc `k` starting at `starts[k]`.
    /// Returns the chord bound to each tag.
    pub fn match_at(&self, d: &GaussDiagram, starts: &[usize]) -> Option<Vec<ChordId>> {
        if starts.len() != self.arcs.len() || d.len() < 2 * self.arcs.len() {
            return None;
        }
        let mut used = BTreeSet::new();
        let mut bound: Vec<Option<ChordId>> = vec![None; self.tags.len()];
        for (arc, &start) in self.arcs.iter().zip(starts) {
            if start >= d.len() {
                return None;
            }
            for (k, point) in arc.iter().enumerate() {
                let pos = if k == 0 { start } else { d.next(start) };
                if !used.insert(pos) {
                    return None;
                }
                let e = d.at(pos);
                if e.role != point.role {
                    return None;
                }
                match bound[point.tag] {
                    None => {
                        if bound.contains(&Some(e.chord)) {
                            return None;
                        }
                        bound[point.tag] = Some(e.chord);
                    }
                    Some(c) if c != e.chord => return None,
                    Some(_) => {}
                }
            }
        }
        let chords: Vec<ChordId> = bound.into_iter().collect::<Option<_>>()?;
        let signs: Vec<Sign> = chords.iter().map(|&c| d.sign(c)).collect::<Option<_>>()?;
        self.signs_ok(&signs).then_some(chords)
    }

    /// Pattern with every arc reversed, in comparable form.
    fn reversed_key(&self) -> PatternKey {
        let arcs: Vec<[PatternPoint; 2]> = self.arcs.iter().map(|a| [a[1], a[0]]).collect();
        self.key_of(&arcs)
    }

    fn key(&self) -> PatternKey {
        self.key_of(&self.arcs)
    }

    /// Tags renumbered by first appearance in `arcs`; constraints compared by
    /// the set of sign assignments they admit.
    fn key_of(&self, arcs: &[[PatternPoint; 2]]) -> PatternKey {
        let n = self.tags.len();
        let mut map = vec![usize::MAX; n];
        let mut next = 0;
        for p in arcs.iter().flatten() {
            if map[p.tag] == usize::MAX {
                map[p.tag] = next;
                next += 1;
            }
        }
        let arcs = arcs
            .iter()
            .map(|a| a.map(|p| PatternPoint { tag: map[p.tag], role: p.role }))
            .collect();
        let admitted = (0..1u32 << n)
            .filter_map(|bits| {
                let signs: Vec<Sign> = (0..n)
                    .map(|t| if bits >> t & 1 == 0 { Sign::Plus } else { Sign::Minus })
                    .collect();
                self.signs_ok(&signs).then(|| {
                    let mut renamed = vec![Sign::Plus; n];
                    for (t, s) in signs.into_iter().enumerate() {
                        renamed[map[t]] = s;
                    }
                    renamed
                })
            })
            .collect();
        (arcs, admitted)
    }
}

type PatternKey = (Vec<[PatternPoint; 2]>, BTreeSet<Vec<Sign>>);

/// Immutable catalogue of move II and move III variants.
#[derive(Clone, Debug)]
pub struct VariantTable {
    r2: Vec<Variant>,
    r3: Vec<Variant>,
}

impl Default for VariantTable {
    fn default() -> Self {
        VariantTable::from_json(DEFAULT_TABLE).expect("built-in variant table is valid")
    }
}

impl VariantTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| Error::Table(e.to_string()))?;
        let r2 = file.r2_variants.iter().map(compile).collect::<Result<Vec<_>>>()?;
        let r3 = file.r3_variants.iter().map(compile).collect::<Result<Vec<_>>>()?;
        let table = VariantTable { r2, r3 };
        table.check()?;
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Table(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Text of the built-in table.
    pub fn default_json() -> &'static str {
        DEFAULT_TABLE
    }

    pub fn r2_variants(&self) -> &[Variant] {
        &self.r2
    }

    pub fn r3_variants(&self) -> &[Variant] {
        &self.r3
    }

    pub fn r2(&self, id: &str) -> Option<&Variant> {
        self.r2.iter().find(|v| v.id == id)
    }

    pub fn r3(&self, id: &str) -> Option<&Variant> {
        self.r3.iter().find(|v| v.id == id)
    }

    fn check(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        for v in self.r2.iter().chain(&self.r3) {
            if !ids.insert(v.id.as_str()) {
                return Err(Error::Table(format!("duplicate variant id {:?}", v.id)));
            }
        }
        for v in &self.r2 {
            if v.arcs.len() != 2 || v.tags.len() != 2 {
                return Err(Error::Table(format!("{}: move II needs two arcs over two chords", v.id)));
            }
            if v.arcs.iter().any(|a| a[0].tag == a[1].tag) {
                return Err(Error::Table(format!("{}: each arc must meet both chords", v.id)));
            }
            if v.derive_signs(Sign::Plus).is_none() && v.derive_signs(Sign::Minus).is_none() {
                return Err(Error::Table(format!(
                    "{}: sign constraints must fix the second chord's sign from the first",
                    v.id
                )));
            }
        }
        for v in &self.r3 {
            if v.arcs.len() != 3 || v.tags.len() != 3 {
                return Err(Error::Table(format!("{}: move III needs three arcs over three chords", v.id)));
            }
            let mut pairs = BTreeSet::new();
            for a in &v.arcs {
                if a[0].tag == a[1].tag {
                    return Err(Error::Table(format!("{}: an arc repeats a chord", v.id)));
                }
                pairs.insert((a[0].tag.min(a[1].tag), a[0].tag.max(a[1].tag)));
            }
            if pairs.len() != 3 {
                return Err(Error::Table(format!("{}: each pair of chords must share one arc", v.id)));
            }
            let reversed = v.reversed_key();
            if !self.r3.iter().any(|w| w.key() == reversed) {
                return Err(Error::Table(format!(
                    "{}: no variant matches the reversed pattern",
                    v.id
                )));
            }
        }
        Ok(())
    }
}

fn compile(v: &VariantFile) -> Result<Variant> {
    let err = |m: String| Error::Table(format!("{}: {m}", v.id));
    let mut tags: Vec<String> = Vec::new();
    let mut arcs = Vec::new();
    let mut roles: BTreeMap<usize, Vec<Role>> = BTreeMap::new();
    for arc in &v.pattern {
        if arc.len() != 2 {
            return Err(err("every arc has exactly two endpoints".into()));
        }
        let mut points = [PatternPoint { tag: 0, role: Role::Tail }; 2];
        for (k, p) in arc.iter().enumerate() {
            let role = match p.role.as_str() {
                "T" => Role::Tail,
                "H" => Role::Head,
                other => return Err(err(format!("unknown role {other:?} (expected \"T\" or \"H\")"))),
            };
            let tag = match tags.iter().position(|t| *t == p.chord) {
                Some(i) => i,
                None => {
                    tags.push(p.chord.clone());
                    tags.len() - 1
                }
            };
            roles.entry(tag).or_default().push(role);
            points[k] = PatternPoint { tag, role };
        }
        arcs.push(points);
    }
    for (tag, r) in &roles {
        let mut r = r.clone();
        r.sort();
        if r != [Role::Tail, Role::Head] {
            return Err(err(format!("chord {:?} needs exactly one T and one H", tags[*tag])));
        }
    }
    let tag_index = |name: &str| {
        tags.iter()
            .position(|t| t == name)
            .ok_or_else(|| err(format!("constraint names unknown chord {name:?}")))
    };
    let mut constraints = Vec::new();
    for c in &v.signs {
        constraints.push(match c {
            ConstraintFile::Relation { chords, relation } => {
                let (a, b) = (tag_index(&chords[0])?, tag_index(&chords[1])?);
                match relation.as_str() {
                    "equal" => Constraint::Equal(a, b),
                    "opposite" => Constraint::Opposite(a, b),
                    other => return Err(err(format!("unknown relation {other:?}"))),
                }
            }
            ConstraintFile::Fixed { chord, fixed } => {
                let sign = match fixed.as_str() {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    other => return Err(err(format!("unknown sign {other:?}"))),
                };
                Constraint::Fixed(tag_index(chord)?, sign)
            }
        });
    }
    Ok(Variant { id: v.id.clone(), tags, arcs, constraints })
}
