//! Local rewrites on Gauss diagrams: Reidemeister moves I, II, III and the
//! forbidden moves FH, FT.
//!
//! Insertion sites are gaps. Gap `g` in `0..=2n` inserts before the endpoint
//! currently at `g` (gap `2n` appends). Gap `2n + 1` is the wrap-around gap:
//! the first inserted endpoint is appended and the second is prepended, so the
//! inserted pair straddles the basepoint. It exists only when `n >= 1`, since
//! on the empty circle it would duplicate gap 0.

use std::fmt;
use std::str::FromStr;

use crate::diagram::{ChordId, Endpoint, GaussDiagram, Role, Sign};
use crate::error::{Error, Result};
use crate::variants::{Variant, VariantTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    R1Insert,
    R1Remove,
    R2Insert,
    R2Remove,
    R3,
    FH,
    FT,
}

impl MoveKind {
    pub const ALL: [MoveKind; 7] = [
        MoveKind::R1Insert,
        MoveKind::R1Remove,
        MoveKind::R2Insert,
        MoveKind::R2Remove,
        MoveKind::R3,
        MoveKind::FH,
        MoveKind::FT,
    ];

    /// Mnemonic used in trace files.
    pub fn mnemonic(self) -> &'static str {
        match self {
            MoveKind::R1Insert => "R1I",
            MoveKind::R1Remove => "R1R",
            MoveKind::R2Insert => "R2I",
            MoveKind::R2Remove => "R2R",
            MoveKind::R3 => "R3",
            MoveKind::FH => "FH",
            MoveKind::FT => "FT",
        }
    }

    pub fn inverse(self) -> MoveKind {
        match self {
            MoveKind::R1Insert => MoveKind::R1Remove,
            MoveKind::R1Remove => MoveKind::R1Insert,
            MoveKind::R2Insert => MoveKind::R2Remove,
            MoveKind::R2Remove => MoveKind::R2Insert,
            k => k,
        }
    }

    pub fn is_forbidden(self) -> bool {
        matches!(self, MoveKind::FH | MoveKind::FT)
    }

    /// Change in chord count.
    pub fn chord_delta(self) -> isize {
        match self {
            MoveKind::R1Insert => 1,
            MoveKind::R1Remove => -1,
            MoveKind::R2Insert => 2,
            MoveKind::R2Remove => -2,
            _ => 0,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let k = match s {
            "R1I" | "R1Insert" => MoveKind::R1Insert,
            "R1R" | "R1Remove" => MoveKind::R1Remove,
            "R2I" | "R2Insert" => MoveKind::R2Insert,
            "R2R" | "R2Remove" => MoveKind::R2Remove,
            "R3" => MoveKind::R3,
            "FH" => MoveKind::FH,
            "FT" => MoveKind::FT,
            _ => {
                return Err(Error::TraceSyntax { line: 0, message: format!("unknown move kind {s:?}") })
            }
        };
        Ok(k)
    }
}

/// A move kind together with the site it acts on. Positions and chord labels
/// refer to the diagram the move is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveInstance {
    /// New chord at `gap`; `first` is the role of the endpoint that comes
    /// first along the circle.
    R1Insert { gap: usize, first: Role, sign: Sign },
    R1Remove { chord: ChordId },
    /// First arc of the variant at `gaps.0`, second at `gaps.1`; `sign` is the
    /// sign of the variant's first chord tag.
    R2Insert { gaps: (usize, usize), variant: String, sign: Sign },
    /// `chords` are bound to the variant's first and second tags.
    R2Remove { chords: (ChordId, ChordId), variant: String },
    /// Start positions of the variant's three arcs, in pattern order.
    R3 { arcs: [usize; 3], variant: String },
    FH { pos: usize },
    FT { pos: usize },
}

impl MoveInstance {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveInstance::R1Insert { .. } => MoveKind::R1Insert,
            MoveInstance::R1Remove { .. } => MoveKind::R1Remove,
            MoveInstance::R2Insert { .. } => MoveKind::R2Insert,
            MoveInstance::R2Remove { .. } => MoveKind::R2Remove,
            MoveInstance::R3 { .. } => MoveKind::R3,
            MoveInstance::FH { .. } => MoveKind::FH,
            MoveInstance::FT { .. } => MoveKind::FT,
        }
    }
}

impl fmt::Display for MoveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveInstance::R1Insert { gap, first, sign } => write!(f, "R1I {gap} {first} {sign}"),
            MoveInstance::R1Remove { chord } => write!(f, "R1R {chord}"),
            MoveInstance::R2Insert { gaps, variant, sign } => {
                write!(f, "R2I {} {} {variant} {sign}", gaps.0, gaps.1)
            }
            MoveInstance::R2Remove { chords, variant } => {
                write!(f, "R2R {} {} {variant}", chords.0, chords.1)
            }
            MoveInstance::R3 { arcs, variant } => {
                write!(f, "R3 {} {} {} {variant}", arcs[0], arcs[1], arcs[2])
            }
            MoveInstance::FH { pos } => write!(f, "FH {pos}"),
            MoveInstance::FT { pos } => write!(f, "FT {pos}"),
        }
    }
}

impl FromStr for MoveInstance {
    type Err = Error;

    /// Parses one trace line. Errors carry line 0; callers fill in the line.
    fn from_str(s: &str) -> Result<Self> {
        let err = |message: String| Error::TraceSyntax { line: 0, message };
        let fields: Vec<&str> = s.split_whitespace().collect();
        let Some((&head, args)) = fields.split_first() else {
            return Err(err("empty step".into()));
        };
        let kind: MoveKind = head.parse()?;
        let expect = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(err(format!("{head} takes {n} arguments, got {}", args.len())))
            }
        };
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("expected a number, got {s:?}")));
        let chord = |s: &str| {
            s.parse::<u32>()
                .ok()
                .filter(|&c| c > 0)
                .map(ChordId)
                .ok_or_else(|| err(format!("expected a chord label, got {s:?}")))
        };
        let sign = |s: &str| match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(err(format!("expected + or -, got {s:?}"))),
        };
        Ok(match kind {
            MoveKind::R1Insert => {
                expect(3)?;
                let first = match args[1] {
                    "T" => Role::Tail,
                    "H" => Role::Head,
                    other => return Err(err(format!("expected T or H, got {other:?}"))),
                };
                MoveInstance::R1Insert { gap: num(args[0])?, first, sign: sign(args[2])? }
            }
            MoveKind::R1Remove => {
                expect(1)?;
                MoveInstance::R1Remove { chord: chord(args[0])? }
            }
            MoveKind::R2Insert => {
                expect(4)?;
                MoveInstance::R2Insert {
                    gaps: (num(args[0])?, num(args[1])?),
                    variant: args[2].to_string(),
                    sign: sign(args[3])?,
                }
            }
            MoveKind::R2Remove => {
                expect(3)?;
                MoveInstance::R2Remove {
                    chords: (chord(args[0])?, chord(args[1])?),
                    variant: args[2].to_string(),
                }
            }
            MoveKind::R3 => {
                expect(4)?;
                MoveInstance::R3 {
                    arcs: [num(args[0])?, num(args[1])?, num(args[2])?],
                    variant: args[3].to_string(),
                }
            }
            MoveKind::FH => {
                expect(1)?;
                MoveInstance::FH { pos: num(args[0])? }
            }
            MoveKind::FT => {
                expect(1)?;
                MoveInstance::FT { pos: num(args[0])? }
            }
        })
    }
}

/// Start positions of the two arcs of a II configuration in the order used to
/// address it from the basepoint: an arc straddling the basepoint comes
/// second, otherwise the arc that starts earlier comes first.
fn arc_order(len: usize, x: usize, y: usize) -> (usize, usize) {
    if x == len - 1 {
        (y, x)
    } else if y == len - 1 || x < y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Applies moves against a variant table.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    table: VariantTable,
}

impl Engine {
    pub fn new(table: VariantTable) -> Self {
        Engine { table }
    }

    pub fn table(&self) -> &VariantTable {
        &self.table
    }

    fn r2_variant(&self, id: &str) -> std::result::Result<&Variant, String> {
        self.table.r2(id).ok_or_else(|| format!("unknown move II variant {id:?}"))
    }

    fn r3_variant(&self, id: &str) -> std::result::Result<&Variant, String> {
        self.table.r3(id).ok_or_else(|| format!("unknown move III variant {id:?}"))
    }

    /// Checks that `m` is legal on `d`; the error is a human-readable reason.
    pub fn check(&self, d: &GaussDiagram, m: &MoveInstance) -> std::result::Result<(), String> {
        let len = d.len();
        let wrap_ok = |g: usize| g <= len || (g == len + 1 && len > 0);
        match m {
            MoveInstance::R1Insert { gap, .. } => {
                if wrap_ok(*gap) {
                    Ok(())
                } else {
                    Err(format!("gap {gap} out of range for {len} endpoints"))
                }
            }
            MoveInstance::R1Remove { chord } => {
                let (t, h) = d
                    .chord_positions(*chord)
                    .ok_or_else(|| format!("no chord {chord}"))?;
                if d.next(t) == h || d.next(h) == t {
                    Ok(())
                } else {
                    Err(format!("chord {chord} is not a kink (endpoints {t} and {h} not adjacent)"))
                }
            }
            MoveInstance::R2Insert { gaps: (p, q), variant, sign } => {
                let v = self.r2_variant(variant)?;
                if *p > len || !((*p..=len).contains(q) || *q == len + 1) {
                    return Err(format!("gaps {p} {q} out of range for {len} endpoints"));
                }
                v.derive_signs(*sign)
                    .map(|_| ())
                    .ok_or_else(|| format!("sign {sign} violates the constraints of {variant}"))
            }
            MoveInstance::R2Remove { chords: (c1, c2), variant } => {
                let v = self.r2_variant(variant)?;
                self.r2_site(d, v, *c1, *c2).map(|_| ())
            }
            MoveInstance::R3 { arcs, variant } => {
                let v = self.r3_variant(variant)?;
                if v.match_at(d, arcs).is_some() {
                    Ok(())
                } else {
                    Err(format!("arcs {} {} {} do not match {variant}", arcs[0], arcs[1], arcs[2]))
                }
            }
            MoveInstance::FH { pos } => adjacent_pair(d, *pos, Role::Head),
            MoveInstance::FT { pos } => adjacent_pair(d, *pos, Role::Tail),
        }
    }

    /// Start positions of the variant's two arcs when `(c1, c2)` form it,
    /// addressed in the order [`arc_order`] gives.
    fn r2_site(
        &self,
        d: &GaussDiagram,
        v: &Variant,
        c1: ChordId,
        c2: ChordId,
    ) -> std::result::Result<(usize, usize), String> {
        if c1 == c2 {
            return Err(format!("chord {c1} given twice"));
        }
        let chords = [c1, c2];
        let mut starts = Vec::with_capacity(2);
        for arc in &v.arcs {
            let p0 = d
                .position(chords[arc[0].tag], arc[0].role)
                .ok_or_else(|| format!("no {} endpoint of chord {}", arc[0].role, chords[arc[0].tag]))?;
            let p1 = d
                .position(chords[arc[1].tag], arc[1].role)
                .ok_or_else(|| format!("no {} endpoint of chord {}", arc[1].role, chords[arc[1].tag]))?;
            if d.next(p0) != p1 {
                return Err(format!("chords {c1} {c2} do not form {}", v.id));
            }
            starts.push(p0);
        }
        if v.match_at(d, &starts).is_none() {
            return Err(format!("chords {c1} {c2} do not satisfy the sign constraints of {}", v.id));
        }
        let ordered = arc_order(d.len(), starts[0], starts[1]);
        if ordered != (starts[0], starts[1]) {
            return Err(format!(
                "chords {c1} {c2} match {} only with its arcs swapped relative to the basepoint",
                v.id
            ));
        }
        Ok(ordered)
    }

    /// Every legal instance of `kind` on `d`.
    pub fn enumerate_moves(&self, d: &GaussDiagram, kind: MoveKind) -> Vec<MoveInstance> {
        let len = d.len();
        let gaps = || 0..=(if len > 0 { len + 1 } else { 0 });
        let signs = [Sign::Plus, Sign::Minus];
        let mut out = Vec::new();
        match kind {
            MoveKind::R1Insert => {
                for gap in gaps() {
                    for first in [Role::Tail, Role::Head] {
                        for sign in signs {
                            out.push(MoveInstance::R1Insert { gap, first, sign });
                        }
                    }
                }
            }
            MoveKind::R1Remove => {
                for chord in d.chords() {
                    let m = MoveInstance::R1Remove { chord };
                    if self.check(d, &m).is_ok() {
                        out.push(m);
                    }
                }
            }
            MoveKind::R2Insert => {
                for v in self.table.r2_variants() {
                    for p in 0..=len {
                        for q in (p..=len).chain([len + 1]) {
                            for sign in signs {
                                if v.derive_signs(sign).is_some() {
                                    out.push(MoveInstance::R2Insert {
                                        gaps: (p, q),
                                        variant: v.id.clone(),
                                        sign,
                                    });
                                }
                            }
                        }
                    }
                }
            }
            MoveKind::R2Remove => {
                let chords: Vec<ChordId> = d.chords().collect();
                for &c1 in &chords {
                    for &c2 in &chords {
                        if c1 == c2 {
                            continue;
                        }
                        for v in self.table.r2_variants() {
                            if self.r2_site(d, v, c1, c2).is_ok() {
                                out.push(MoveInstance::R2Remove {
                                    chords: (c1, c2),
                                    variant: v.id.clone(),
                                });
                            }
                        }
                    }
                }
            }
            MoveKind::R3 => {
                for v in self.table.r3_variants() {
                    let candidates: Vec<Vec<usize>> = v
                        .arcs
                        .iter()
                        .map(|arc| {
                            (0..len)
                                .filter(|&p| {
                                    d.at(p).role == arc[0].role && d.at(d.next(p)).role == arc[1].role
                                })
                                .collect()
                        })
                        .collect();
                    if candidates.len() != 3 {
                        continue;
                    }
                    for &a in &candidates[0] {
                        for &b in &candidates[1] {
                            for &c in &candidates[2] {
                                if v.match_at(d, &[a, b, c]).is_some() {
                                    out.push(MoveInstance::R3 { arcs: [a, b, c], variant: v.id.clone() });
                                }
                            }
                        }
                    }
                }
            }
            MoveKind::FH | MoveKind::FT => {
                let role = if kind == MoveKind::FH { Role::Head } else { Role::Tail };
                for pos in 0..len {
                    if adjacent_pair(d, pos, role).is_ok() {
                        out.push(if kind == MoveKind::FH {
                            MoveInstance::FH { pos }
                        } else {
                            MoveInstance::FT { pos }
                        });
                    }
                }
            }
        }
        out
    }

    /// Applies a legal move. The result is valid and every endpoint outside
    /// the site keeps its relative order.
    pub fn apply_move(&self, d: &GaussDiagram, m: &MoveInstance) -> Result<GaussDiagram> {
        self.check(d, m)
            .map_err(|reason| Error::IllegalMove { step: m.clone(), reason })?;
        let out = match m {
            MoveInstance::R1Insert { gap, first, sign } => {
                let c = d.fresh_label();
                let piece = [Endpoint::new(c, *first), Endpoint::new(c, first.other())];
                let mut out = d.clone();
                let (endpoints, signs) = out.parts_mut();
                insert_piece(endpoints, *gap, piece);
                signs.insert(c, *sign);
                out
            }
            MoveInstance::R1Remove { chord } => d.without_chord(*chord),
            MoveInstance::R2Insert { gaps: (p, q), variant, sign } => {
                let v = self.table.r2(variant).expect("checked");
                let tag_signs = v.derive_signs(*sign).expect("checked");
                let base = d.fresh_label().0;
                let chord = |tag: usize| ChordId(base + tag as u32);
                let piece = |k: usize| v.arcs[k].map(|pt| Endpoint::new(chord(pt.tag), pt.role));
                let (a, b) = (piece(0), piece(1));
                let e = d.endpoints();
                let mut endpoints = Vec::with_capacity(e.len() + 4);
                if *q == e.len() + 1 {
                    endpoints.push(b[1]);
                    endpoints.extend_from_slice(&e[..*p]);
                    endpoints.extend(a);
                    endpoints.extend_from_slice(&e[*p..]);
                    endpoints.push(b[0]);
                } else {
                    endpoints.extend_from_slice(&e[..*p]);
                    endpoints.extend(a);
                    endpoints.extend_from_slice(&e[*p..*q]);
                    endpoints.extend(b);
                    endpoints.extend_from_slice(&e[*q..]);
                }
                let mut out = d.with_endpoints(endpoints);
                let (_, signs) = out.parts_mut();
                for (tag, s) in tag_signs.into_iter().enumerate() {
                    signs.insert(chord(tag), s);
                }
                out
            }
            MoveInstance::R2Remove { chords: (c1, c2), .. } => {
                d.without_chord(*c1).without_chord(*c2)
            }
            MoveInstance::R3 { arcs, .. } => {
                let mut endpoints = d.endpoints().to_vec();
                for &a in arcs {
                    endpoints.swap(a, d.next(a));
                }
                d.with_endpoints(endpoints)
            }
            MoveInstance::FH { pos } | MoveInstance::FT { pos } => d.transposed(*pos),
        };
        debug_assert!(out.validate().is_empty());
        Ok(out)
    }

    /// The move that undoes `m` when applied to `apply_move(d_before, m)`.
    pub fn invert_move(&self, d_before: &GaussDiagram, m: &MoveInstance) -> Result<MoveInstance> {
        self.check(d_before, m)
            .map_err(|reason| Error::IllegalMove { step: m.clone(), reason })?;
        let d = d_before;
        Ok(match m {
            MoveInstance::R1Insert { .. } => MoveInstance::R1Remove { chord: d.fresh_label() },
            MoveInstance::R1Remove { chord } => {
                let (t, h) = d.chord_positions(*chord).expect("checked");
                let len = d.len();
                let start = if len == 2 {
                    0
                } else if d.next(t) == h {
                    t
                } else {
                    h
                };
                let gap = if len > 2 && start == len - 1 { len - 1 } else { start };
                MoveInstance::R1Insert {
                    gap,
                    first: d.at(start).role,
                    sign: d.sign(*chord).expect("checked"),
                }
            }
            MoveInstance::R2Insert { variant, .. } => {
                let c = d.fresh_label();
                MoveInstance::R2Remove { chords: (c, ChordId(c.0 + 1)), variant: variant.clone() }
            }
            MoveInstance::R2Remove { chords: (c1, c2), variant } => {
                let v = self.table.r2(variant).expect("checked");
                let (first, second) = self.r2_site(d, v, *c1, *c2).expect("checked");
                let len = d.len();
                let gaps = if second == len - 1 {
                    (first - 1, len - 3)
                } else {
                    (first, second - 2)
                };
                MoveInstance::R2Insert {
                    gaps,
                    variant: variant.clone(),
                    sign: d.sign(*c1).expect("checked"),
                }
            }
            MoveInstance::R3 { arcs, .. } => {
                let after = self.apply_move(d, m)?;
                let variant = self
                    .table
                    .r3_variants()
                    .iter()
                    .find(|v| v.match_at(&after, arcs).is_some())
                    .ok_or_else(|| Error::Table(format!("no variant matches the result of {m}")))?;
                MoveInstance::R3 { arcs: *arcs, variant: variant.id.clone() }
            }
            MoveInstance::FH { pos } => MoveInstance::FH { pos: *pos },
            MoveInstance::FT { pos } => MoveInstance::FT { pos: *pos },
        })
    }

    /// The first listed variant matching an R3 site with arcs in any order.
    pub fn find_r3(&self, d: &GaussDiagram, arcs: [usize; 3]) -> Option<MoveInstance> {
        const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        self.table.r3_variants().iter().find_map(|v| {
            ORDERS.iter().find_map(|o| {
                let starts = [arcs[o[0]], arcs[o[1]], arcs[o[2]]];
                v.match_at(d, &starts)
                    .map(|_| MoveInstance::R3 { arcs: starts, variant: v.id.clone() })
            })
        })
    }

    /// The II removal instance for a chord pair, trying both tag orders.
    pub fn find_r2_removal(&self, d: &GaussDiagram, x: ChordId, y: ChordId) -> Option<MoveInstance> {
        self.table.r2_variants().iter().find_map(|v| {
            [(x, y), (y, x)].into_iter().find_map(|(c1, c2)| {
                self.r2_site(d, v, c1, c2)
                    .ok()
                    .map(|_| MoveInstance::R2Remove { chords: (c1, c2), variant: v.id.clone() })
            })
        })
    }
}

fn adjacent_pair(d: &GaussDiagram, pos: usize, role: Role) -> std::result::Result<(), String> {
    let what = match role {
        Role::Head => "head",
        Role::Tail => "tail",
    };
    if pos >= d.len() {
        return Err(format!("no adjacent {what} pair at {pos}"));
    }
    let (a, b) = (d.at(pos), d.at(d.next(pos)));
    if a.role != role || b.role != role || a.chord == b.chord {
        return Err(format!("no adjacent {what} pair at {pos}"));
    }
    Ok(())
}

fn insert_piece(endpoints: &mut Vec<Endpoint>, gap: usize, piece: [Endpoint; 2]) {
    if gap == endpoints.len() + 1 {
        endpoints.push(piece[0]);
        endpoints.insert(0, piece[1]);
    } else {
        endpoints.splice(gap..gap, piece);
    }
}
