//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's own notion of equality, transposition or invariants.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gaussdiag::{ChordId, Endpoint, GaussDiagram, Role, Sign};

/// A diagram as plain tokens: (label by first occurrence, role, sign).
pub type Word = Vec<(u32, Role, Sign)>;

pub fn word(d: &GaussDiagram) -> Word {
    word_of(d.endpoints(), |c| d.sign(c).unwrap())
}

fn word_of(endpoints: &[Endpoint], sign: impl Fn(ChordId) -> Sign) -> Word {
    let mut labels = BTreeMap::new();
    endpoints
        .iter()
        .map(|e| {
            let next = labels.len() as u32 + 1;
            let l = *labels.entry(e.chord).or_insert(next);
            (l, e.role, sign(e.chord))
        })
        .collect()
}

/// Builds a diagram from raw tokens, validating it.
pub fn build(tokens: &[(u32, Role, Sign)]) -> GaussDiagram {
    let endpoints = tokens.iter().map(|&(c, r, _)| Endpoint::new(ChordId(c), r)).collect();
    let signs = tokens.iter().map(|&(c, _, s)| (ChordId(c), s)).collect();
    GaussDiagram::new(endpoints, signs).expect("oracle builds valid diagrams")
}

pub fn code(w: &Word) -> String {
    w.iter()
        .map(|&(c, r, s)| format!("{}{c}{}", if r == Role::Tail { 'O' } else { 'U' }, if s == Sign::Plus { '+' } else { '-' }))
        .collect()
}

/// `d` with the endpoints at `p` and `p + 1` (cyclic) swapped.
pub fn swap_tokens(d: &GaussDiagram, p: usize) -> Word {
    let mut e = d.endpoints().to_vec();
    let q = (p + 1) % e.len();
    e.swap(p, q);
    word_of(&e, |c| d.sign(c).unwrap())
}

/// `d` with every endpoint of `chords` deleted.
pub fn drop_chords(d: &GaussDiagram, chords: &[ChordId]) -> Word {
    let e: Vec<Endpoint> = d.endpoints().iter().copied().filter(|e| !chords.contains(&e.chord)).collect();
    word_of(&e, |c| d.sign(c).unwrap())
}

/// Every diagram with exactly `n` chords, up to relabelling: each perfect
/// matching of `2n` positions, each choice of which end is the tail, each
/// sign assignment.
pub fn all_diagrams(n: usize) -> Vec<GaussDiagram> {
    let mut matchings = Vec::new();
    let mut slots = vec![0u32; 2 * n];
    fn fill(slots: &mut Vec<u32>, next: u32, out: &mut Vec<Vec<u32>>) {
        let Some(i) = slots.iter().position(|&s| s == 0) else {
            out.push(slots.clone());
            return;
        };
        slots[i] = next;
        for j in i + 1..slots.len() {
            if slots[j] == 0 {
                slots[j] = next;
                fill(slots, next + 1, out);
                slots[j] = 0;
            }
        }
        slots[i] = 0;
    }
    fill(&mut slots, 1, &mut matchings);
    let mut out = Vec::new();
    for m in matchings {
        for roles in 0u32..1 << n {
            for signs in 0u32..1 << n {
                let mut seen = BTreeSet::new();
                let tokens: Vec<_> = m
                    .iter()
                    .map(|&c| {
                        let first = seen.insert(c);
                        let tail_first = roles >> (c - 1) & 1 == 0;
                        let role = if first == tail_first { Role::Tail } else { Role::Head };
                        let sign = if signs >> (c - 1) & 1 == 0 { Sign::Plus } else { Sign::Minus };
                        (c, role, sign)
                    })
                    .collect();
                out.push(build(&tokens));
            }
        }
    }
    out
}

/// Interleaving by counting endpoints strictly between a chord's two ends.
pub fn odd_writhe_oracle(d: &GaussDiagram) -> i64 {
    let e = d.endpoints();
    let pos = |c: ChordId| {
        let v: Vec<usize> = (0..e.len()).filter(|&i| e[i].chord == c).collect();
        (v[0], v[1])
    };
    let chords: BTreeSet<ChordId> = e.iter().map(|x| x.chord).collect();
    chords
        .iter()
        .filter(|&&c| {
            let (a, b) = pos(c);
            let crossing = chords
                .iter()
                .filter(|&&o| o != c)
                .filter(|&&o| {
                    let (x, y) = pos(o);
                    (a < x && x < b) != (a < y && y < b)
                })
                .count();
            crossing % 2 == 1
        })
        .map(|&c| if d.sign(c).unwrap() == Sign::Plus { 1 } else { -1 })
        .sum()
}

type V2 = (f64, f64);

fn cross(a: V2, b: V2) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn crossing_sign(over: V2, under: V2) -> Sign {
    if cross(over, under) > 0.0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// All codes, read from any basepoint, of the local picture of three straight
/// strands at heights top > middle > bottom meeting in a triangle, before and
/// after one strand is slid across the crossing of the other two. Chords run
/// from the over strand to the under strand.
pub fn realizable_r3_words() -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let base: [(V2, V2); 3] = [((0.0, 0.0), (1.0, 0.0)), ((0.0, 0.0), (0.0, 1.0)), ((1.0, 0.0), (-1.0, 1.0))];
    for slide in [1.0, -1.0] {
        let lines = [base[0], base[1], ((slide, 0.0), (-1.0, 1.0))];
        for heights in permutations3() {
            for dirs in 0..8u32 {
                // Strand k of the picture, listed top, middle, bottom.
                let strand = |k: usize| {
                    let (p, v) = lines[heights[k]];
                    let s = if dirs >> k & 1 == 0 { 1.0 } else { -1.0 };
                    (p, (v.0 * s, v.1 * s))
                };
                let param = |k: usize, other: usize| {
                    let ((p, v), (q, w)) = (strand(k), strand(other));
                    cross((q.0 - p.0, q.1 - p.1), w) / cross(v, w)
                };
                // Chord labels 1 = top/middle, 2 = top/bottom, 3 = middle/bottom.
                let chord = |a: usize, b: usize| match (a.min(b), a.max(b)) {
                    (0, 1) => 1,
                    (0, 2) => 2,
                    _ => 3,
                };
                let sign = |a: usize, b: usize| {
                    let (hi, lo) = (a.min(b), a.max(b));
                    crossing_sign(strand(hi).1, strand(lo).1)
                };
                let arcs: Vec<Vec<(u32, Role, Sign)>> = (0..3)
                    .map(|k| {
                        let mut others: Vec<usize> = (0..3).filter(|&o| o != k).collect();
                        others.sort_by(|&a, &b| param(k, a).partial_cmp(&param(k, b)).unwrap());
                        others
                            .into_iter()
                            .map(|o| (chord(k, o), if k < o { Role::Tail } else { Role::Head }, sign(k, o)))
                            .collect()
                    })
                    .collect();
                for order in permutations3() {
                    let tokens: Vec<_> = order.iter().flat_map(|&k| arcs[k].clone()).collect();
                    add_rotations(&tokens, &mut out);
                }
            }
        }
    }
    out
}

/// All codes of the local picture of a bigon: a straight strand and a
/// parabola crossing it twice, either one on top, in either direction.
pub fn realizable_r2_words() -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for line_on_top in [true, false] {
        for dl in [1.0, -1.0] {
            for dp in [1.0, -1.0] {
                // Line y = 0 and parabola y = x^2 - 1 meet at x = -1 and x = 1.
                let crossings: Vec<(f64, u32, Sign)> = [-1.0f64, 1.0]
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let line = (dl, 0.0);
                        let parabola = (dp, 2.0 * x * dp);
                        let s = if line_on_top { crossing_sign(line, parabola) } else { crossing_sign(parabola, line) };
                        (x, i as u32 + 1, s)
                    })
                    .collect();
                let arc = |dir: f64, role: Role| {
                    let mut v: Vec<_> = crossings.iter().map(|&(x, c, s)| (x * dir, (c, role, s))).collect();
                    v.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                    v.into_iter().map(|(_, t)| t).collect::<Vec<_>>()
                };
                let (line_role, parabola_role) =
                    if line_on_top { (Role::Tail, Role::Head) } else { (Role::Head, Role::Tail) };
                let a = arc(dl, line_role);
                let b = arc(dp, parabola_role);
                for tokens in [[a.clone(), b.clone()].concat(), [b, a].concat()] {
                    add_rotations(&tokens, &mut out);
                }
            }
        }
    }
    out
}

fn add_rotations(tokens: &[(u32, Role, Sign)], out: &mut BTreeSet<Word>) {
    for r in 0..tokens.len() {
        let mut t = tokens.to_vec();
        t.rotate_left(r);
        out.insert(word(&build(&t)));
    }
}

fn permutations3() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

fn sign_counts(d: &GaussDiagram) -> (i64, i64) {
    let plus = d.signs().values().filter(|&&s| s == Sign::Plus).count() as i64;
    (plus, d.signs().len() as i64 - plus)
}

/// Reversibility, locality and chord/sign deltas of one legal move.
pub fn check_move_algebra(e: &gaussdiag::Engine, d: &GaussDiagram, m: &gaussdiag::MoveInstance) -> Result<(), String> {
    use gaussdiag::MoveInstance as M;
    let fail = |what: &str| Err(format!("{what}: {} on {}", m, code(&word(d))));
    let out = e.apply_move(d, m).map_err(|err| err.to_string())?;

    let inv = e.invert_move(d, m).map_err(|err| err.to_string())?;
    let back = e.apply_move(&out, &inv).map_err(|err| format!("inverse {inv} illegal: {err}"))?;
    if word(&back) != word(d) {
        return fail("inverse does not restore");
    }

    let fresh: Vec<ChordId> = out.signs().keys().copied().filter(|c| d.sign(*c).is_none()).collect();
    let local = match m {
        M::R1Insert { .. } | M::R2Insert { .. } => drop_chords(&out, &fresh) == word(d),
        M::R1Remove { chord } => word(&out) == drop_chords(d, &[*chord]),
        M::R2Remove { chords: (a, b), .. } => word(&out) == drop_chords(d, &[*a, *b]),
        M::R3 { arcs, .. } => {
            let mut expected = d.clone();
            for &a in arcs {
                expected = build(&swap_tokens(&expected, a));
            }
            word(&out) == word(&expected)
        }
        M::FH { pos } | M::FT { pos } => word(&out) == swap_tokens(d, *pos),
    };
    if !local {
        return fail("not local");
    }

    let delta = out.chord_count() as isize - d.chord_count() as isize;
    if delta != m.kind().chord_delta() {
        return fail("chord delta");
    }
    let ((p0, m0), (p1, m1)) = (sign_counts(d), sign_counts(&out));
    let signs_ok = match m {
        M::R1Insert { sign, .. } => (p1 - p0, m1 - m0) == if *sign == Sign::Plus { (1, 0) } else { (0, 1) },
        M::R1Remove { chord } => (p0 - p1, m0 - m1) == if d.sign(*chord) == Some(Sign::Plus) { (1, 0) } else { (0, 1) },
        M::R2Insert { .. } => (p1 - p0, m1 - m0) == (1, 1),
        M::R2Remove { .. } => (p0 - p1, m0 - m1) == (1, 1),
        _ => (p0, m0) == (p1, m1),
    };
    if !signs_ok {
        return fail("sign multiset delta");
    }
    Ok(())
}

/// Token transposition oracle for a macro site, plus the replay check.
pub fn check_macro_site(e: &gaussdiag::Engine, d: &GaussDiagram, pos: usize) -> Result<(), String> {
    use gaussdiag::{macro_for, MacroKind, MoveKind};
    let Some(m) = macro_for(d, pos) else { return Ok(()) };
    let t = e.expand_macro(d, m).map_err(|err| err.to_string())?;
    let out = e.replay(d, &t).map_err(|err| err.to_string())?;
    if word(&out) != swap_tokens(d, pos) {
        return Err(format!("{} at {pos}: net effect is not the transposition", code(&word(d))));
    }
    let kinds: Vec<MoveKind> = t.kinds().collect();
    let expected = match m.kind {
        MacroKind::FS => [MoveKind::R2Insert, MoveKind::FT, MoveKind::FH, MoveKind::R3, MoveKind::R2Remove],
        MacroKind::FO => [MoveKind::R2Insert, MoveKind::FH, MoveKind::R3, MoveKind::FT, MoveKind::R2Remove],
    };
    if kinds != expected {
        return Err(format!("{} at {pos}: kinds {kinds:?}", code(&word(d))));
    }
    let signs_equal = {
        let (a, b) = (d.at(pos).chord, d.at((pos + 1) % d.len()).chord);
        d.sign(a) == d.sign(b)
    };
    if signs_equal != (m.kind == MacroKind::FS) {
        return Err(format!("{} at {pos}: wrong macro for the signs", code(&word(d))));
    }
    Ok(())
}

pub fn head_tail_sites(d: &GaussDiagram) -> Vec<usize> {
    let e = d.endpoints();
    (0..e.len())
        .filter(|&p| {
            let (x, y) = (e[p], e[(p + 1) % e.len()]);
            x.chord != y.chord && x.role != y.role
        })
        .collect()
}
