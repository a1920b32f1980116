//! Witness words for winning configurations.
//!
//! A winning play fires vertices i_t, ..., i_1 in time order; read in
//! reverse it spells a word s_{i_1} ... s_{i_t} whose successive right
//! factors each lower the paired amplitude by firing it. The word is
//! minuscule in the integral sense when every fired amplitude is exactly
//! -1, and in the relaxed sense when each lies in [-1, 0). Whether these
//! words are automatically reduced expressions is not checked here; only
//! the amplitude conditions, cutoff legality, and dominance of the end
//! state are.

use crate::classify::{Certificate, Classifier, ClassifyError, Tag};
use crate::game::{fire_unchecked, Configuration, FiringTrace};
use crate::graph::{CoxeterGraph, VertexId};
use crate::rat::{Rat, NEG_ONE, ZERO};
use std::fmt;
use thiserror::Error;

/// A witness word. `reflections` lists the word left to right, so the
/// leftmost reflection is applied last; `amplitudes` are the fired values
/// in firing (reverse) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusculeWord {
    pub reflections: Vec<VertexId>,
    pub amplitudes: Vec<Rat>,
}

impl MinusculeWord {
    pub fn from_trace(trace: &FiringTrace) -> Self {
        let mut reflections: Vec<VertexId> = trace.steps.iter().map(|s| s.vertex).collect();
        reflections.reverse();
        MinusculeWord {
            reflections,
            amplitudes: trace
                .steps
                .iter()
                .map(|s| s.amplitude_before.clone())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.reflections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflections.is_empty()
    }

    /// The order in which vertices fire: the reverse of the word.
    pub fn firing_order(&self) -> Vec<VertexId> {
        self.reflections.iter().rev().copied().collect()
    }
}

impl fmt::Display for MinusculeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflections.is_empty() {
            return f.write_str("e");
        }
        for (k, i) in self.reflections.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s_{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("configuration is not winning (classified {0})")]
    NotWinning(Tag),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Extract a witness word for a winning configuration: classify, then read
/// the word off the winning play.
pub fn extract_witness(
    classifier: &Classifier,
    v: &Configuration,
) -> Result<MinusculeWord, WitnessError> {
    let verdict = classifier.classify(v)?;
    if verdict.tag != Tag::Winning {
        return Err(WitnessError::NotWinning(verdict.tag));
    }
    match verdict.certificate {
        Certificate::Witness(trace) => Ok(MinusculeWord::from_trace(&trace)),
        other => unreachable!("winning verdicts carry witness traces, got {other:?}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Integral mode: a fired amplitude differed from -1.
    AmplitudeNotNegativeOne(Rat),
    /// Non-integral mode: a fired amplitude fell outside [-1, 0).
    AmplitudeOutOfRange(Rat),
    /// An intermediate (or final) configuration was forbidden.
    ForbiddenState,
    /// The final configuration is not dominant.
    EndNotDominant,
    /// The word or configuration does not fit the graph.
    Malformed(String),
}

/// Why verification failed, and at which firing step.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("step {step}: {kind:?}")]
pub struct MinusculeViolation {
    pub step: usize,
    pub kind: ViolationKind,
}

/// Replay a word against `v` and check the per-step amplitude condition,
/// cutoff legality throughout, and dominance of the end state.
pub fn verify_minuscule(
    graph: &CoxeterGraph,
    word: &MinusculeWord,
    v: &Configuration,
    integral: bool,
) -> Result<(), MinusculeViolation> {
    let malformed = |step: usize, msg: String| MinusculeViolation {
        step,
        kind: ViolationKind::Malformed(msg),
    };
    if v.len() != graph.n_vertices() {
        return Err(malformed(0, "configuration does not fit the graph".into()));
    }
    let mut current = v.clone();
    for (step, &vertex) in word.firing_order().iter().enumerate() {
        if vertex >= graph.n_vertices() {
            return Err(malformed(step, format!("vertex {vertex} out of range")));
        }
        if current.is_forbidden() {
            return Err(MinusculeViolation {
                step,
                kind: ViolationKind::ForbiddenState,
            });
        }
        let amp = current.amps[vertex].clone();
        if integral {
            if amp != *NEG_ONE {
                return Err(MinusculeViolation {
                    step,
                    kind: ViolationKind::AmplitudeNotNegativeOne(amp),
                });
            }
        } else if amp < *NEG_ONE || amp >= *ZERO {
            return Err(MinusculeViolation {
                step,
                kind: ViolationKind::AmplitudeOutOfRange(amp),
            });
        }
        current = fire_unchecked(graph, &current, vertex);
    }
    let last = word.len();
    if current.is_forbidden() {
        return Err(MinusculeViolation {
            step: last,
            kind: ViolationKind::ForbiddenState,
        });
    }
    if !current.is_dominant() {
        return Err(MinusculeViolation {
            step: last,
            kind: ViolationKind::EndNotDominant,
        });
    }
    Ok(())
}
