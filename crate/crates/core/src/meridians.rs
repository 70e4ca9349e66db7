//! Replay of a construction schedule on Hirzebruch surfaces, tracking the
//! meridian words of the auxiliary lines.
//!
//! A type-1 step on a fiber raises the index and multiplies the fiber's
//! meridian on the left by the meridian of the exceptional section; a
//! type-2 step lowers the index and changes no word. The meridian of the
//! exceptional section stays the product of all line meridians.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructions::ConstructionSpec;
use crate::error::{Error, Result};
use crate::fpgroup::{line_generator, Word, CENTRAL_GENERATOR};

/// An auxiliary line through the blown-up point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberLabel {
    /// The single type-2 line of the general construction.
    P,
    /// The `j`-th type-2 line of the mixed construction (1-based).
    Pj(usize),
    /// The `i`-th type-1 line (1-based).
    Q(usize),
    /// The only line of the special construction.
    L,
}

impl FiberLabel {
    /// Name of the meridian generator of this line.
    pub fn generator(self) -> String {
        match self {
            FiberLabel::P => "beta".to_string(),
            FiberLabel::Pj(j) => format!("beta{j}"),
            FiberLabel::Q(i) => line_generator(i),
            FiberLabel::L => CENTRAL_GENERATOR.to_string(),
        }
    }
}

impl fmt::Display for FiberLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberLabel::P => f.write_str("P"),
            FiberLabel::Pj(j) => write!(f, "P{j}"),
            FiberLabel::Q(i) => write!(f, "Q{i}"),
            FiberLabel::L => f.write_str("L"),
        }
    }
}

impl FromStr for FiberLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let index = |rest: &str| -> Result<usize> {
            match rest.parse::<usize>() {
                Ok(i) if i >= 1 && !rest.starts_with('0') => Ok(i),
                _ => Err(Error::parse("fiber label", s)),
            }
        };
        match s {
            "P" => Ok(FiberLabel::P),
            "L" => Ok(FiberLabel::L),
            _ if s.starts_with('P') => Ok(FiberLabel::Pj(index(&s[1..])?)),
            _ if s.starts_with('Q') => Ok(FiberLabel::Q(index(&s[1..])?)),
            _ => Err(Error::parse("fiber label", s)),
        }
    }
}

crate::intser::serde_as_text!(FiberLabel);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    First,
    Second,
}

/// One elementary transformation, applied on `F_index`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub index: u64,
    pub kind: StepKind,
    pub fiber: FiberLabel,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            StepKind::First => "type1",
            StepKind::Second => "type2",
        };
        write!(f, "F{} {kind} {}", self.index, self.fiber)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeridianState {
    index: u64,
    exceptional: Word,
    fibers: Vec<(FiberLabel, Word)>,
    log: Vec<Step>,
}

/// State right after blowing up the common point of the lines, on `F_1`.
/// `labels` are in counterclockwise order around the point.
pub fn init_state(labels: &[FiberLabel]) -> Result<MeridianState> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument("at least one line is needed".into()));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::InvalidArgument(format!("line {l} listed twice")));
        }
    }
    let names: Vec<String> = labels.iter().map(|l| l.generator()).collect();
    Ok(MeridianState {
        index: 1,
        exceptional: Word::product_of(&names),
        fibers: labels.iter().map(|&l| (l, Word::generator(l.generator()))).collect(),
        log: Vec::new(),
    })
}

impl MeridianState {
    pub fn hirzebruch_index(&self) -> u64 {
        self.index
    }

    pub fn exceptional_meridian(&self) -> &Word {
        &self.exceptional
    }

    pub fn meridian(&self, fiber: FiberLabel) -> Option<&Word> {
        self.fibers.iter().find(|(l, _)| *l == fiber).map(|(_, w)| w)
    }

    /// `(label, word)` pairs in the initial label order.
    pub fn meridians(&self) -> &[(FiberLabel, Word)] {
        &self.fibers
    }

    pub fn log(&self) -> &[Step] {
        &self.log
    }

    fn position(&self, fiber: FiberLabel) -> Result<usize> {
        self.fibers
            .iter()
            .position(|(l, _)| *l == fiber)
            .ok_or_else(|| Error::UnknownFiber(fiber.to_string()))
    }

    /// Type-1 step on `fiber`.
    pub fn elem_first(&self, fiber: FiberLabel) -> Result<MeridianState> {
        let at = self.position(fiber)?;
        let mut out = self.clone();
        out.fibers[at].1 = &self.exceptional * &self.fibers[at].1;
        out.log.push(Step {
            index: self.index,
            kind: StepKind::First,
            fiber,
        });
        out.index += 1;
        Ok(out)
    }

    /// Type-2 step on `fiber`; not possible on `F_1`.
    pub fn elem_second(&self, fiber: FiberLabel) -> Result<MeridianState> {
        self.position(fiber)?;
        if self.index <= 1 {
            return Err(Error::Schedule {
                step: self.log.len() + 1,
                reason: format!("type-2 step on {fiber} would leave F_1"),
            });
        }
        let mut out = self.clone();
        out.log.push(Step {
            index: self.index,
            kind: StepKind::Second,
            fiber,
        });
        out.index -= 1;
        Ok(out)
    }

    /// Line-oriented trace: one step per line, then the word table.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for s in &self.log {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out.push_str(&format!("E = {}\n", self.exceptional));
        for (l, w) in &self.fibers {
            out.push_str(&format!("{l} = {w}\n"));
        }
        out
    }
}

/// Line labels of a construction, in counterclockwise order.
pub fn line_labels(spec: &ConstructionSpec) -> Vec<FiberLabel> {
    let k = spec.first_type_counts().len();
    let qs = (1..=k).map(FiberLabel::Q);
    match spec {
        ConstructionSpec::Uludag(_) | ConstructionSpec::General(_) => {
            std::iter::once(FiberLabel::P).chain(qs).collect()
        }
        ConstructionSpec::Mixed { m, .. } => (1..=m.len()).map(FiberLabel::Pj).chain(qs).collect(),
        ConstructionSpec::Special(_) => vec![FiberLabel::L],
    }
}

/// The elementary transformations of a construction, in order.
pub fn schedule(spec: &ConstructionSpec) -> Vec<(StepKind, FiberLabel)> {
    let mut out = Vec::new();
    match spec {
        ConstructionSpec::Special(n) => {
            out.extend((0..*n).map(|_| (StepKind::First, FiberLabel::L)));
            out.extend((0..*n).map(|_| (StepKind::Second, FiberLabel::L)));
        }
        _ => {
            let ns = spec.first_type_counts();
            for (i, &n) in ns.iter().enumerate() {
                out.extend((0..n).map(|_| (StepKind::First, FiberLabel::Q(i + 1))));
            }
            match spec {
                ConstructionSpec::Mixed { m, .. } => {
                    for (j, &mj) in m.iter().enumerate() {
                        out.extend((0..mj).map(|_| (StepKind::Second, FiberLabel::Pj(j + 1))));
                    }
                }
                _ => {
                    let total: u64 = ns.iter().sum();
                    out.extend((0..total).map(|_| (StepKind::Second, FiberLabel::P)));
                }
            }
        }
    }
    out
}

/// Outcome of [`run_schedule`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleRun {
    pub state: MeridianState,
    pub max_index: u64,
}

impl ScheduleRun {
    pub fn words(&self) -> &[(FiberLabel, Word)] {
        self.state.meridians()
    }
}

/// Replays the whole schedule of `spec` from `F_1` back to `F_1`.
pub fn run_schedule(spec: &ConstructionSpec) -> Result<ScheduleRun> {
    spec.validate()?;
    let mut state = init_state(&line_labels(spec))?;
    let mut max_index = state.index;
    for (kind, fiber) in schedule(spec) {
        state = match kind {
            StepKind::First => state.elem_first(fiber)?,
            StepKind::Second => state.elem_second(fiber)?,
        };
        max_index = max_index.max(state.index);
    }
    if state.index != 1 {
        return Err(Error::Schedule {
            step: state.log.len(),
            reason: format!("schedule ends on F_{} instead of F_1", state.index),
        });
    }
    Ok(ScheduleRun { state, max_index })
}
