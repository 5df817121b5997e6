//! Writhe and odd writhe. Moves I, II and III preserve the odd writhe; the
//! forbidden moves need not, which makes it a witness that they did the work.

use crate::diagram::{interleave_count, GaussDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantValue {
    pub writhe: i64,
    pub odd_writhe: i64,
}

impl InvariantValue {
    pub fn of(d: &GaussDiagram) -> Self {
        InvariantValue { writhe: writhe(d), odd_writhe: odd_writhe(d) }
    }
}

/// Sum of chord signs.
pub fn writhe(d: &GaussDiagram) -> i64 {
    d.signs().values().map(|s| s.value()).sum()
}

/// Sum of the signs of chords interleaved with an odd number of other chords.
pub fn odd_writhe(d: &GaussDiagram) -> i64 {
    d.signs()
        .iter()
        .filter(|&(&c, _)| interleave_count(d, c) % 2 == 1)
        .map(|(_, s)| s.value())
        .sum()
}
