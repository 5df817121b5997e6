//! Gauss diagrams: an oriented circle of chord endpoints, each chord directed
//! from its overcrossing passage (tail) to its undercrossing passage (head) and
//! carrying the sign of its crossing.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;

/// Local writhe of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Which passage of a crossing an endpoint records. The chord points from
/// `Tail` (over) to `Head` (under).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Tail,
    Head,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::Tail => Role::Head,
            Role::Head => Role::Tail,
        }
    }

    /// Gauss code letter: `O` for the over passage, `U` for the under passage.
    pub fn code_letter(self) -> char {
        match self {
            Role::Tail => 'O',
            Role::Head => 'U',
        }
    }

    /// Short letter used in traces and variant tables.
    pub fn short(self) -> char {
        match self {
            Role::Tail => 'T',
            Role::Head => 'H',
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.short())
    }
}

/// Chord label. Labels are addressing only and carry no meaning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordId(pub u32);

impl fmt::Display for ChordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub chord: ChordId,
    pub role: Role,
}

impl Endpoint {
    pub fn new(chord: ChordId, role: Role) -> Self {
        Endpoint { chord, role }
    }

    pub fn tail(chord: u32) -> Self {
        Endpoint::new(ChordId(chord), Role::Tail)
    }

    pub fn head(chord: u32) -> Self {
        Endpoint::new(ChordId(chord), Role::Head)
    }
}

/// A single broken invariant, reported by [`GaussDiagram::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The chord does not occur exactly twice among the endpoints.
    OccurrenceCount { chord: ChordId, count: usize },
    /// Both occurrences of the chord carry the same role.
    RepeatedRole { chord: ChordId, role: Role, positions: [usize; 2] },
    MissingSign { chord: ChordId },
    /// A sign is recorded for a chord that has no endpoints.
    OrphanSign { chord: ChordId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OccurrenceCount { chord, count } => {
                write!(f, "chord {chord} occurs {count} times (expected 2)")
            }
            Violation::RepeatedRole { chord, role, positions } => write!(
                f,
                "chord {chord} has two {} endpoints (positions {} and {})",
                match role {
                    Role::Tail => "tail",
                    Role::Head => "head",
                },
                positions[0],
                positions[1]
            ),
            Violation::MissingSign { chord } => write!(f, "chord {chord} has no sign"),
            Violation::OrphanSign { chord } => {
                write!(f, "sign recorded for chord {chord} which has no endpoints")
            }
        }
    }
}

/// Oriented circle of `2n` endpoints read from a basepoint, plus one sign per
/// chord.
///
/// Equality (`==`) ignores chord labels but respects the basepoint: two
/// diagrams are equal when their words agree position by position after
/// relabelling chords in order of first occurrence. Rotation-insensitive
/// equality is [`diagrams_equal`].
#[derive(Clone, Debug, Default)]
pub struct GaussDiagram {
    endpoints: Vec<Endpoint>,
    signs: BTreeMap<ChordId, Sign>,
}

impl GaussDiagram {
    pub fn empty() -> Self {
        GaussDiagram::default()
    }

    /// Builds a diagram and checks every invariant.
    pub fn new(endpoints: Vec<Endpoint>, signs: BTreeMap<ChordId, Sign>) -> Result<Self, Error> {
        let d = GaussDiagram { endpoints, signs };
        let violations = d.validate();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    /// Builds a diagram without checking it; pair with [`validate`](Self::validate).
    pub fn from_parts_unchecked(endpoints: Vec<Endpoint>, signs: BTreeMap<ChordId, Sign>) -> Self {
        GaussDiagram { endpoints, signs }
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    pub fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        &self.signs
    }

    /// Number of endpoints, `2n`.
    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    pub fn chords(&self) -> impl Iterator<Item = ChordId> + '_ {
        self.signs.keys().copied()
    }

    pub fn contains(&self, chord: ChordId) -> bool {
        self.signs.contains_key(&chord)
    }

    pub fn sign(&self, chord: ChordId) -> Option<Sign> {
        self.signs.get(&chord).copied()
    }

    pub fn at(&self, pos: usize) -> Endpoint {
        self.endpoints[pos]
    }

    /// Position following `pos` on the circle.
    pub fn next(&self, pos: usize) -> usize {
        (pos + 1) % self.len()
    }

    pub fn prev(&self, pos: usize) -> usize {
        (pos + self.len() - 1) % self.len()
    }

    pub fn position(&self, chord: ChordId, role: Role) -> Option<usize> {
        self.endpoints
            .iter()
            .position(|e| e.chord == chord && e.role == role)
    }

    /// Positions of the tail and head of `chord`.
    pub fn chord_positions(&self, chord: ChordId) -> Option<(usize, usize)> {
        Some((
            self.position(chord, Role::Tail)?,
            self.position(chord, Role::Head)?,
        ))
    }

    /// Label for a new chord: one more than the largest label in use.
    pub fn fresh_label(&self) -> ChordId {
        ChordId(self.signs.keys().next_back().map_or(1, |c| c.0 + 1))
    }

    pub(crate) fn with_endpoints(&self, endpoints: Vec<Endpoint>) -> GaussDiagram {
        GaussDiagram { endpoints, signs: self.signs.clone() }
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut Vec<Endpoint>, &mut BTreeMap<ChordId, Sign>) {
        (&mut self.endpoints, &mut self.signs)
    }

    /// Returns every broken invariant; an empty list means the diagram is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut seen: BTreeMap<ChordId, Vec<(usize, Role)>> = BTreeMap::new();
        for (i, e) in self.endpoints.iter().enumerate() {
            seen.entry(e.chord).or_default().push((i, e.role));
        }
        let mut out = Vec::new();
        for (&chord, occ) in &seen {
            if occ.len() != 2 {
                out.push(Violation::OccurrenceCount { chord, count: occ.len() });
            } else if occ[0].1 == occ[1].1 {
                out.push(Violation::RepeatedRole {
                    chord,
                    role: occ[0].1,
                    positions: [occ[0].0, occ[1].0],
                });
            }
            if !self.signs.contains_key(&chord) {
                out.push(Violation::MissingSign { chord });
            }
        }
        for &chord in self.signs.keys() {
            if !seen.contains_key(&chord) {
                out.push(Violation::OrphanSign { chord });
            }
        }
        out
    }

    /// Word with chords relabelled `1..n` by first occurrence.
    pub(crate) fn normalized_word(&self) -> Vec<(u32, Role, Sign)> {
        let mut relabel: BTreeMap<ChordId, u32> = BTreeMap::new();
        self.endpoints
            .iter()
            .map(|e| {
                let next = relabel.len() as u32 + 1;
                let label = *relabel.entry(e.chord).or_insert(next);
                (label, e.role, self.signs[&e.chord])
            })
            .collect()
    }

    /// The same diagram read from a basepoint `k` steps further along.
    pub fn rotated(&self, k: usize) -> GaussDiagram {
        if self.is_empty() {
            return self.clone();
        }
        let mut endpoints = self.endpoints.clone();
        endpoints.rotate_left(k % self.len());
        self.with_endpoints(endpoints)
    }

    /// Swaps the endpoints at `pos` and its cyclic successor.
    pub fn transposed(&self, pos: usize) -> GaussDiagram {
        let mut endpoints = self.endpoints.clone();
        let next = self.next(pos);
        endpoints.swap(pos, next);
        self.with_endpoints(endpoints)
    }

    /// Deletes every endpoint of `chord`.
    pub fn without_chord(&self, chord: ChordId) -> GaussDiagram {
        let mut d = self.clone();
        d.endpoints.retain(|e| e.chord != chord);
        d.signs.remove(&chord);
        d
    }

    /// Uniformly random diagram with `n` chords, deterministic in `(n, seed)`.
    pub fn random(n: usize, seed: u64) -> GaussDiagram {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut slots: Vec<u32> = (1..=n as u32).flat_map(|c| [c, c]).collect();
        slots.shuffle(&mut rng);
        let mut tail_first = BTreeMap::new();
        let mut signs = BTreeMap::new();
        for c in 1..=n as u32 {
            tail_first.insert(c, rng.gen::<bool>());
            signs.insert(ChordId(c), if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus });
        }
        let mut first_seen = BTreeMap::new();
        let endpoints = slots
            .into_iter()
            .map(|c| {
                let is_first = first_seen.insert(c, ()).is_none();
                let role = if is_first == tail_first[&c] { Role::Tail } else { Role::Head };
                Endpoint::new(ChordId(c), role)
            })
            .collect();
        GaussDiagram { endpoints, signs }
    }
}

impl PartialEq for GaussDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self.chord_count() == other.chord_count()
            && self.normalized_word() == other.normalized_word()
    }
}

impl Eq for GaussDiagram {}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::code::serialize(self))
    }
}

/// Least serialization over all basepoint rotations. The circle's orientation
/// is never reversed.
pub fn canonical_form(d: &GaussDiagram) -> String {
    (0..d.len().max(1))
        .map(|k| crate::code::serialize(&d.rotated(k)))
        .min()
        .unwrap_or_default()
}

/// Equality up to basepoint rotation.
pub fn diagrams_equal(a: &GaussDiagram, b: &GaussDiagram) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

/// Whether the endpoint pairs of two distinct chords alternate around the
/// circle.
pub fn interleaved(d: &GaussDiagram, c1: ChordId, c2: ChordId) -> Result<bool, Error> {
    if c1 == c2 {
        return Err(Error::SameChord(c1));
    }
    let (t1, h1) = d.chord_positions(c1).ok_or(Error::UnknownChord(c1))?;
    let (t2, h2) = d.chord_positions(c2).ok_or(Error::UnknownChord(c2))?;
    let (lo, hi) = (t1.min(h1), t1.max(h1));
    let inside = |p: usize| lo < p && p < hi;
    Ok(inside(t2) != inside(h2))
}

/// Number of other chords interleaved with `chord`.
pub fn interleave_count(d: &GaussDiagram, chord: ChordId) -> usize {
    d.chords()
        .filter(|&other| other != chord && interleaved(d, chord, other).unwrap_or(false))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::parse_gauss_code;

    fn parse(s: &str) -> GaussDiagram {
        parse_gauss_code(s).unwrap()
    }

    #[test]
    fn validate_reports_repeated_tail() {
        let d = GaussDiagram::from_parts_unchecked(
            vec![Endpoint::tail(1), Endpoint::tail(1)],
            BTreeMap::from([(ChordId(1), Sign::Plus)]),
        );
        assert_eq!(
            d.validate(),
            vec![Violation::RepeatedRole { chord: ChordId(1), role: Role::Tail, positions: [0, 1] }]
        );
    }

    #[test]
    fn validate_reports_counts_and_signs() {
        let d = GaussDiagram::from_parts_unchecked(
            vec![Endpoint::tail(1), Endpoint::head(1), Endpoint::tail(2)],
            BTreeMap::from([(ChordId(1), Sign::Plus), (ChordId(3), Sign::Minus)]),
        );
        let v = d.validate();
        assert!(v.contains(&Violation::OccurrenceCount { chord: ChordId(2), count: 1 }));
        assert!(v.contains(&Violation::MissingSign { chord: ChordId(2) }));
        assert!(v.contains(&Violation::OrphanSign { chord: ChordId(3) }));
        assert!(GaussDiagram::empty().validate().is_empty());
        assert!(parse("O1+U2+O3+U1+O2+U3+").validate().is_empty());
    }

    #[test]
    fn equality_ignores_labels_but_not_basepoint() {
        assert_eq!(parse("O7+U7+"), parse("O1+U1+"));
        assert_ne!(parse("O1+U1+"), parse("U1+O1+"));
        assert!(diagrams_equal(&parse("O1+U1+"), &parse("U1+O1+")));
        assert!(!diagrams_equal(&parse("O1+U1+"), &parse("O1-U1-")));
        assert!(diagrams_equal(&GaussDiagram::empty(), &GaussDiagram::empty()));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&GaussDiagram::empty()), "");
        assert_eq!(canonical_form(&parse("U1+O1+")), "O1+U1+");
        assert_eq!(canonical_form(&parse("U2-O1+U1+O2-")), "O1+U1+O2-U2-");
    }

    #[test]
    fn interleaving() {
        let d = parse("O1+O2+U1+U2+");
        assert!(interleaved(&d, ChordId(1), ChordId(2)).unwrap());
        let d = parse("O1+U1+O2+U2+");
        assert!(!interleaved(&d, ChordId(1), ChordId(2)).unwrap());
        let t = parse("O1+U2+O3+U1+O2+U3+");
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            assert!(interleaved(&t, ChordId(a), ChordId(b)).unwrap());
        }
        assert!(matches!(interleaved(&t, ChordId(1), ChordId(9)), Err(Error::UnknownChord(_))));
        assert!(matches!(interleaved(&t, ChordId(1), ChordId(1)), Err(Error::SameChord(_))));
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        assert!(GaussDiagram::random(0, 3).is_empty());
        let a = GaussDiagram::random(5, 7);
        let b = GaussDiagram::random(5, 7);
        assert_eq!(crate::code::serialize(&a), crate::code::serialize(&b));
        assert_eq!(a.chord_count(), 5);
        for seed in 0..1000 {
            assert!(GaussDiagram::random(5, seed).validate().is_empty());
        }
    }

    #[test]
    fn fresh_label_is_max_plus_one() {
        assert_eq!(GaussDiagram::empty().fresh_label(), ChordId(1));
        assert_eq!(parse("O4+U4+O2-U2-").fresh_label(), ChordId(5));
    }
}
