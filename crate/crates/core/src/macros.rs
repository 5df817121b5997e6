//! The two five-step sequences that move an arrowhead past an adjacent
//! arrowtail using moves II, III and both forbidden moves.
//!
//! Write `a` for the chord whose head sits at the site and `b` for the chord
//! whose tail sits there. A helper pair `c`, `d` is created by an antiparallel
//! move II, with `c` carrying the sign of `a`: the tails of the pair go next to
//! the tail of `a` and the heads next to the head of `b`. The heads of `a`, `b`
//! and `c` then form a move III triangle (`a` top to middle, `c` top to bottom,
//! `b` middle to bottom) whose middle arc is exactly the site. Move III swaps
//! all three arcs; the forbidden moves pre-swap or post-swap the two outer arcs
//! so that only the site ends up transposed, and the helper pair is removed.
//!
//! Head before tail at the site, tails of the pair inserted as `Td Tc Ta` and
//! heads as `Hb Hc Hd`:
//!
//! ```text
//! FS: R2I, FT(Tc,Ta), FH(Hb,Hc), R3, R2R
//! FO: R2I, FH(Hb,Hc), R3, FT(Ta,Tc), R2R
//! ```
//!
//! Tail before head at the site, pair inserted as `Ta Tc Td` and `Hd Hc Hb`:
//!
//! ```text
//! FS: R2I, FT(Ta,Tc), FH(Hc,Hb), R3, R2R
//! FO: R2I, FH(Hc,Hb), R3, FT(Tc,Ta), R2R
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{ChordId, Endpoint, GaussDiagram, Role};
use crate::error::{Error, Result};
use crate::moves::{Engine, MoveInstance, MoveKind};
use crate::trace::Trace;

/// Head/tail transposition of equal signs (`FS`) or opposite signs (`FO`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MacroKind {
    FS,
    FO,
}

impl MacroKind {
    /// Primitive kinds of the expansion, in order.
    pub fn kinds(self) -> [MoveKind; 5] {
        match self {
            MacroKind::FS => [MoveKind::R2Insert, MoveKind::FT, MoveKind::FH, MoveKind::R3, MoveKind::R2Remove],
            MacroKind::FO => [MoveKind::R2Insert, MoveKind::FH, MoveKind::R3, MoveKind::FT, MoveKind::R2Remove],
        }
    }
}

impl fmt::Display for MacroKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MacroKind::FS => "FS",
            MacroKind::FO => "FO",
        })
    }
}

/// Transposition of the endpoints at `pos` and `pos + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Macro {
    pub kind: MacroKind,
    pub pos: usize,
}

/// The macro that transposes `pos` and its successor, when they are a head
/// and a tail of distinct chords.
pub fn macro_for(d: &GaussDiagram, pos: usize) -> Option<Macro> {
    if pos >= d.len() || d.len() < 2 {
        return None;
    }
    let (x, y) = (d.at(pos), d.at(d.next(pos)));
    if x.chord == y.chord || x.role == y.role {
        return None;
    }
    let kind = if d.sign(x.chord) == d.sign(y.chord) { MacroKind::FS } else { MacroKind::FO };
    Some(Macro { kind, pos })
}

/// Builds a primitive trace as it is applied, checking each step.
struct Builder<'a> {
    engine: &'a Engine,
    state: GaussDiagram,
    steps: Vec<MoveInstance>,
}

impl Builder<'_> {
    fn push(&mut self, m: MoveInstance) -> Result<()> {
        self.state = self.engine.apply_move(&self.state, &m)?;
        self.steps.push(m);
        Ok(())
    }

    fn pos(&self, chord: ChordId, role: Role) -> usize {
        self.state.position(chord, role).expect("chord present")
    }
}

impl Engine {
    /// Expands `m` into five primitive steps whose replay on `d` equals `d`
    /// with the endpoints at `m.pos` and `m.pos + 1` transposed.
    pub fn expand_macro(&self, d: &GaussDiagram, m: Macro) -> Result<Trace> {
        let fail = |s: String| Error::MacroPrecondition(s);
        if m.pos >= d.len() {
            return Err(fail(format!("position {} out of range", m.pos)));
        }
        let (first, second) = (d.at(m.pos), d.at(d.next(m.pos)));
        if first.chord == second.chord {
            return Err(fail(format!("positions {} and {} belong to the same chord", m.pos, d.next(m.pos))));
        }
        let head_first = match (first.role, second.role) {
            (Role::Head, Role::Tail) => true,
            (Role::Tail, Role::Head) => false,
            _ => return Err(fail(format!("positions {} and {} are not a head and a tail", m.pos, d.next(m.pos)))),
        };
        let (a, b) = if head_first { (first.chord, second.chord) } else { (second.chord, first.chord) };
        let (sa, sb) = (d.sign(a).expect("valid"), d.sign(b).expect("valid"));
        match (m.kind, sa == sb) {
            (MacroKind::FS, false) => return Err(fail("FS needs equal signs".into())),
            (MacroKind::FO, true) => return Err(fail("FO needs opposite signs".into())),
            _ => {}
        }

        // Place the helper pair by hand, then read the insertion off the
        // inverse of its removal.
        let c = d.fresh_label();
        let dd = ChordId(c.0 + 1);
        let (tc, td, hc, hd) = (
            Endpoint::new(c, Role::Tail),
            Endpoint::new(dd, Role::Tail),
            Endpoint::new(c, Role::Head),
            Endpoint::new(dd, Role::Head),
        );
        let mut placed = Vec::with_capacity(d.len() + 4);
        for &e in d.endpoints() {
            let is_ta = e == Endpoint::new(a, Role::Tail);
            let is_hb = e == Endpoint::new(b, Role::Head);
            if head_first {
                if is_ta {
                    placed.extend([td, tc]);
                }
                placed.push(e);
                if is_hb {
                    placed.extend([hc, hd]);
                }
            } else {
                if is_hb {
                    placed.extend([hd, hc]);
                }
                placed.push(e);
                if is_ta {
                    placed.extend([tc, td]);
                }
            }
        }
        let mut signs: BTreeMap<ChordId, _> = d.signs().clone();
        signs.insert(c, sa);
        signs.insert(dd, sa.flip());
        let with_pair = GaussDiagram::from_parts_unchecked(placed, signs);
        let removal = self
            .find_r2_removal(&with_pair, c, dd)
            .ok_or_else(|| Error::Table("no move II variant matches the helper pair".into()))?;
        let insertion = self.invert_move(&with_pair, &removal)?;

        let mut run = Builder { engine: self, state: d.clone(), steps: Vec::with_capacity(5) };
        run.push(insertion)?;
        debug_assert_eq!(run.state, with_pair);
        // The insertion may hand out the two fresh labels the other way round.
        let label_at = |e: Endpoint| run.state.at(with_pair.position(e.chord, e.role).expect("placed")).chord;
        let (c, dd) = (label_at(tc), label_at(td));
        let ta = |s: &Builder| s.pos(a, Role::Tail);
        let tc_pos = |s: &Builder| s.pos(c, Role::Tail);
        let hb = |s: &Builder| s.pos(b, Role::Head);
        let hc_pos = |s: &Builder| s.pos(c, Role::Head);
        let r3 = |s: &Builder| -> Result<MoveInstance> {
            let arcs = [
                first_of_pair(&s.state, ta(s), tc_pos(s)),
                first_of_pair(&s.state, s.pos(a, Role::Head), s.pos(b, Role::Tail)),
                first_of_pair(&s.state, hb(s), hc_pos(s)),
            ];
            self.find_r3(&s.state, arcs)
                .ok_or_else(|| Error::Table(format!("no move III variant matches arcs {arcs:?}")))
        };
        let ft = |p: usize| MoveInstance::FT { pos: p };
        let fh = |p: usize| MoveInstance::FH { pos: p };
        let outer_tail = |s: &Builder| first_of_pair(&s.state, ta(s), tc_pos(s));
        let outer_head = |s: &Builder| first_of_pair(&s.state, hb(s), hc_pos(s));

        match m.kind {
            MacroKind::FS => {
                let p = outer_tail(&run);
                run.push(ft(p))?;
                let p = outer_head(&run);
                run.push(fh(p))?;
                let step = r3(&run)?;
                run.push(step)?;
            }
            MacroKind::FO => {
                let p = outer_head(&run);
                run.push(fh(p))?;
                let step = r3(&run)?;
                run.push(step)?;
                let p = outer_tail(&run);
                run.push(ft(p))?;
            }
        }
        let removal = self
            .find_r2_removal(&run.state, c, dd)
            .ok_or_else(|| Error::Table("helper pair not removable".into()))?;
        run.push(removal)?;
        Ok(Trace::new(run.steps))
    }
}

/// Start of the two-endpoint arc holding positions `x` and `y`.
fn first_of_pair(d: &GaussDiagram, x: usize, y: usize) -> usize {
    if d.next(x) == y {
        x
    } else {
        debug_assert_eq!(d.next(y), x);
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{parse_gauss_code, serialize};

    fn parse(s: &str) -> GaussDiagram {
        parse_gauss_code(s).unwrap()
    }

    fn check_expansion(code: &str, pos: usize) {
        let e = Engine::default();
        let d = parse(code);
        let m = macro_for(&d, pos).unwrap();
        let t = e.expand_macro(&d, m).unwrap();
        let kinds: Vec<MoveKind> = t.steps().iter().map(|s| s.kind()).collect();
        assert_eq!(kinds, m.kind.kinds(), "{code} at {pos}");
        let out = e.replay(&d, &t).unwrap();
        assert_eq!(serialize(&out), serialize(&d.transposed(pos)), "{code} at {pos}");
    }

    #[test]
    fn all_small_sites() {
        for code in ["O1+U1+O2+U2+", "O1+U1+O2-U2-", "O1+O2+U1+U2+", "O1-O2+U1-U2+", "U1+O2-O1+U2-"] {
            let d = parse(code);
            for pos in 0..d.len() {
                if macro_for(&d, pos).is_some() {
                    check_expansion(code, pos);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_sites() {
        let e = Engine::default();
        let d = parse("O1+U1+O2-U2-");
        let fs_on_opposite = Macro { kind: MacroKind::FS, pos: 1 };
        assert!(matches!(e.expand_macro(&d, fs_on_opposite), Err(Error::MacroPrecondition(_))));
        assert!(e.expand_macro(&d, Macro { kind: MacroKind::FO, pos: 0 }).is_err());
        let d = parse("O1+O2+U1+U2+");
        assert!(e.expand_macro(&d, Macro { kind: MacroKind::FS, pos: 0 }).is_err());
    }
}
