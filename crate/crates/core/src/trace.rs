//! Move traces: the line-oriented file format, replay, and statistics.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::diagram::GaussDiagram;
use crate::error::{Error, Result};
use crate::macros::MacroKind;
use crate::moves::{Engine, MoveInstance, MoveKind};

/// Ordered list of primitive moves. Each step is addressed against the state
/// left by the steps before it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    steps: Vec<MoveInstance>,
}

impl Trace {
    pub fn new(steps: Vec<MoveInstance>) -> Self {
        Trace { steps }
    }

    pub fn steps(&self) -> &[MoveInstance] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, m: MoveInstance) {
        self.steps.push(m);
    }

    pub fn extend(&mut self, other: Trace) {
        self.steps.extend(other.steps);
    }

    pub fn kinds(&self) -> impl Iterator<Item = MoveKind> + '_ {
        self.steps.iter().map(MoveInstance::kind)
    }

    /// Trace text with `# start:` and `# final:` annotations.
    pub fn to_annotated(&self, start: &GaussDiagram, final_code: &str) -> String {
        format!("# start: {start}\n{self}# final: {final_code}\n")
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Trace {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Ok(TraceFile::parse(text)?.trace)
    }
}

/// A parsed trace file together with its optional annotations.
#[derive(Clone, Debug, Default)]
pub struct TraceFile {
    pub trace: Trace,
    pub start: Option<String>,
    pub final_code: Option<String>,
}

impl TraceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = TraceFile::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(code) = comment.strip_prefix("start:") {
                    out.start = Some(code.trim().to_string());
                } else if let Some(code) = comment.strip_prefix("final:") {
                    out.final_code = Some(code.trim().to_string());
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let step = line.parse::<MoveInstance>().map_err(|e| match e {
                Error::TraceSyntax { message, .. } => Error::TraceSyntax { line: i + 1, message },
                other => other,
            })?;
            out.trace.push(step);
        }
        Ok(out)
    }
}

/// Per-kind counts of a trace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceStats {
    pub counts: BTreeMap<MoveKind, usize>,
    pub total: usize,
    /// Transpositions: standalone FH/FT steps plus recognised FS/FO blocks.
    pub macro_transpositions: usize,
    /// Largest chord count along the replay, when a start diagram was given.
    pub peak_chords: Option<usize>,
}

impl TraceStats {
    pub fn count(&self, kind: MoveKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }
}

impl fmt::Display for TraceStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for kind in MoveKind::ALL {
            writeln!(f, "{:<4}{}", kind.mnemonic(), self.count(kind))?;
        }
        writeln!(f, "total {}", self.total)?;
        writeln!(f, "transpositions {}", self.macro_transpositions)?;
        if let Some(peak) = self.peak_chords {
            writeln!(f, "peak_chords {peak}")?;
        }
        Ok(())
    }
}

impl Engine {
    /// Applies every step in order, checking legality.
    pub fn replay(&self, d: &GaussDiagram, t: &Trace) -> Result<GaussDiagram> {
        let mut state = d.clone();
        for (index, step) in t.steps().iter().enumerate() {
            state = self.replay_step(&state, index, step)?;
        }
        Ok(state)
    }

    /// Every intermediate state, starting with `d`.
    pub fn replay_states(&self, d: &GaussDiagram, t: &Trace) -> Result<Vec<GaussDiagram>> {
        let mut states = Vec::with_capacity(t.len() + 1);
        states.push(d.clone());
        for (index, step) in t.steps().iter().enumerate() {
            let next = self.replay_step(states.last().expect("nonempty"), index, step)?;
            states.push(next);
        }
        Ok(states)
    }

    fn replay_step(&self, state: &GaussDiagram, index: usize, step: &MoveInstance) -> Result<GaussDiagram> {
        self.check(state, step).map_err(|reason| Error::IllegalStep {
            index,
            step: step.clone(),
            reason,
            state: state.to_string(),
        })?;
        self.apply_move(state, step)
    }

    pub fn trace_stats(&self, t: &Trace, start: Option<&GaussDiagram>) -> Result<TraceStats> {
        let mut stats = TraceStats { total: t.len(), ..TraceStats::default() };
        for k in t.kinds() {
            *stats.counts.entry(k).or_default() += 1;
        }
        stats.macro_transpositions = count_transpositions(t);
        if let Some(d) = start {
            let states = self.replay_states(d, t)?;
            stats.peak_chords = states.iter().map(GaussDiagram::chord_count).max();
        }
        Ok(stats)
    }
}

fn count_transpositions(t: &Trace) -> usize {
    let kinds: Vec<MoveKind> = t.kinds().collect();
    let blocks = [MacroKind::FS.kinds(), MacroKind::FO.kinds()];
    let mut i = 0;
    let mut count = 0;
    while i < kinds.len() {
        if kinds.len() - i >= 5 && blocks.iter().any(|b| kinds[i..i + 5] == b[..]) {
            count += 1;
            i += 5;
        } else {
            if kinds[i].is_forbidden() {
                count += 1;
            }
            i += 1;
        }
    }
    count
}
