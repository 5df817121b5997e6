//! Unknotting and transformation: any Gauss diagram can be rewritten into any
//! other once heads and tails can be moved past each other freely.
//!
//! Each chord is contracted by walking its head along the shorter side of the
//! circle toward its tail, one adjacent transposition at a time, and is then
//! removed as a kink. A diagram with `n` chords needs at most `n - 1`
//! transpositions per contraction, each at most five primitive steps, plus one
//! removal per chord, so an unknotting trace has at most
//! [`UNKNOT_LENGTH_FACTOR`]` * n^2` steps.

use std::collections::BTreeMap;

use crate::diagram::{ChordId, GaussDiagram, Role};
use crate::error::{Error, Result};
use crate::macros::macro_for;
use crate::moves::{Engine, MoveInstance};
use crate::trace::Trace;

/// Unknotting traces have at most this many primitive steps per squared chord.
pub const UNKNOT_LENGTH_FACTOR: usize = 6;

impl Engine {
    /// Swaps the endpoints at `pos` and its successor with a primitive trace.
    pub fn transpose_endpoints(&self, d: &GaussDiagram, pos: usize) -> Result<(Trace, GaussDiagram)> {
        if pos >= d.len() {
            return Err(Error::MacroPrecondition(format!("position {pos} out of range")));
        }
        let (x, y) = (d.at(pos), d.at(d.next(pos)));
        if x.chord == y.chord {
            return Err(Error::SameChord(x.chord));
        }
        let trace = match (x.role, y.role) {
            (Role::Head, Role::Head) => Trace::new(vec![MoveInstance::FH { pos }]),
            (Role::Tail, Role::Tail) => Trace::new(vec![MoveInstance::FT { pos }]),
            _ => self.expand_macro(d, macro_for(d, pos).expect("head and tail of distinct chords"))?,
        };
        let out = self.replay(d, &trace)?;
        Ok((trace, out))
    }

    /// Walks the head of `chord` next to its tail and removes the kink.
    pub fn contract_chord(&self, d: &GaussDiagram, chord: ChordId) -> Result<(Trace, GaussDiagram)> {
        let (tail, head) = d.chord_positions(chord).ok_or(Error::UnknownChord(chord))?;
        let len = d.len();
        let forward = (tail + len - head) % len;
        let backward = len - forward;
        let mut trace = Trace::default();
        let mut state = d.clone();
        let mut h = head;
        if forward <= backward {
            for _ in 1..forward {
                let (t, next) = self.transpose_endpoints(&state, h)?;
                trace.extend(t);
                state = next;
                h = state.next(h);
            }
        } else {
            for _ in 1..backward {
                let p = state.prev(h);
                let (t, next) = self.transpose_endpoints(&state, p)?;
                trace.extend(t);
                state = next;
                h = p;
            }
        }
        let removal = MoveInstance::R1Remove { chord };
        state = self.apply_move(&state, &removal)?;
        trace.push(removal);
        Ok((trace, state))
    }

    /// A trace taking `d` to the empty diagram.
    pub fn unknot(&self, d: &GaussDiagram) -> Trace {
        let mut trace = Trace::default();
        let mut state = d.clone();
        while let Some(chord) = shortest_chord(&state) {
            let (t, next) = self
                .contract_chord(&state, chord)
                .expect("contraction of a present chord succeeds");
            debug_assert_eq!(next.chord_count() + 1, state.chord_count());
            trace.extend(t);
            state = next;
        }
        trace
    }

    /// A trace taking `src` to `dst`: unknot `src`, then undo the unknotting
    /// of `dst` step by step.
    pub fn transform(&self, src: &GaussDiagram, dst: &GaussDiagram) -> Result<Trace> {
        let mut trace = self.unknot(src);
        let down = self.unknot(dst);
        let states = self.replay_states(dst, &down)?;
        let mut state = self.replay(src, &trace)?;
        for (i, step) in down.steps().iter().enumerate().rev() {
            let inverse = self.invert_move(&states[i], step)?;
            // `state` equals states[i + 1] up to chord labels; carry labels
            // across by position.
            let relabel: BTreeMap<ChordId, ChordId> = states[i + 1]
                .endpoints()
                .iter()
                .zip(state.endpoints())
                .map(|(from, to)| (from.chord, to.chord))
                .collect();
            let inverse = match inverse {
                MoveInstance::R1Remove { chord } => MoveInstance::R1Remove { chord: relabel[&chord] },
                MoveInstance::R2Remove { chords: (a, b), variant } => {
                    MoveInstance::R2Remove { chords: (relabel[&a], relabel[&b]), variant }
                }
                other => other,
            };
            state = self.apply_move(&state, &inverse)?;
            trace.push(inverse);
        }
        Ok(trace)
    }
}

/// Chord with the smallest head-to-tail distance along the shorter side; ties
/// go to the chord whose head comes first.
fn shortest_chord(d: &GaussDiagram) -> Option<ChordId> {
    let len = d.len();
    d.chords()
        .map(|c| {
            let (t, h) = d.chord_positions(c).expect("valid diagram");
            let forward = (t + len - h) % len;
            (forward.min(len - forward), h, c)
        })
        .min()
        .map(|(_, _, c)| c)
}
