//! The numbers game: configurations, the weighted firing move, the cutoff
//! discipline, and deterministic play.
//!
//! Firing vertex i replaces v_j by v_j - c_ij * v_i for every j, where the
//! fired vertex indexes the first coordinate of the Cartan matrix. Only
//! negative-amplitude vertices may fire. Under the cutoff discipline the
//! game additionally stops as soon as any amplitude drops below -1.

use crate::graph::{CoxeterGraph, GraphKind, MatrixClass, VertexId};
use crate::rat::{count_ints_below, rat, Rat, NEG_ONE, ZERO};
use crate::roots::{affine_test_roots, delta_root, positive_roots, Root};
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("cannot fire vertex {vertex}: amplitude {amplitude} is not negative")]
    FiringNotLegal { vertex: VertexId, amplitude: Rat },
    #[error("configuration has {found} amplitudes, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scripted move #{step} fires vertex {vertex}, which is not legal there")]
    ScriptIllegalMove { step: usize, vertex: VertexId },
}

/// A game position: one exact rational amplitude per vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub amps: Vec<Rat>,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.amps.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl Configuration {
    pub fn new(amps: Vec<Rat>) -> Self {
        Configuration { amps }
    }

    pub fn from_ints(amps: &[i64]) -> Self {
        Configuration {
            amps: amps.iter().map(|&a| rat(a)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Configuration {
            amps: vec![ZERO.clone(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// All amplitudes >= -1.
    pub fn is_allowed(&self) -> bool {
        self.amps.iter().all(|a| *a >= *NEG_ONE)
    }

    /// Some amplitude < -1. Always the complement of `is_allowed`.
    pub fn is_forbidden(&self) -> bool {
        !self.is_allowed()
    }

    /// All amplitudes nonnegative; the winning terminal states.
    pub fn is_dominant(&self) -> bool {
        self.amps.iter().all(|a| !a.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| a.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.amps.iter().all(|a| a.denom() == &num::BigInt::from(1))
    }

    /// Drop the coordinates outside `keep` (order taken from `keep`).
    pub fn restrict(&self, keep: &[VertexId]) -> Configuration {
        Configuration {
            amps: keep.iter().map(|&i| self.amps[i].clone()).collect(),
        }
    }

    pub fn neg(&self) -> Configuration {
        Configuration {
            amps: self.amps.iter().map(|a| -a).collect(),
        }
    }
}

/// The firing map as a linear map, with no legality check. This is also
/// the reflection action on coweights, used for Weyl orbits.
pub fn fire_unchecked(graph: &CoxeterGraph, v: &Configuration, i: VertexId) -> Configuration {
    let vi = v.amps[i].clone();
    let amps = graph
        .vertices()
        .map(|j| {
            let c = graph.entry(i, j);
            if c.is_zero() {
                v.amps[j].clone()
            } else {
                &v.amps[j] - c * &vi
            }
        })
        .collect();
    Configuration { amps }
}

/// Fire vertex i. Errors unless v_i < 0.
pub fn fire(
    graph: &CoxeterGraph,
    v: &Configuration,
    i: VertexId,
) -> Result<Configuration, GameError> {
    if v.len() != graph.n_vertices() {
        return Err(GameError::DimensionMismatch {
            expected: graph.n_vertices(),
            found: v.len(),
        });
    }
    if !v.amps[i].is_negative() {
        return Err(GameError::FiringNotLegal {
            vertex: i,
            amplitude: v.amps[i].clone(),
        });
    }
    Ok(fire_unchecked(graph, v, i))
}

/// Vertices that may fire. Cutoff mode refuses everything once the
/// configuration is forbidden.
pub fn legal_moves(graph: &CoxeterGraph, v: &Configuration, cutoff: bool) -> Vec<VertexId> {
    if cutoff && v.is_forbidden() {
        return Vec::new();
    }
    graph
        .vertices()
        .filter(|&i| v.amps[i].is_negative())
        .collect()
}

/// One recorded move: the fired vertex and its amplitude at firing time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub vertex: VertexId,
    pub amplitude_before: Rat,
}

/// An ordered record of play from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiringTrace {
    pub start: Configuration,
    pub steps: Vec<TraceStep>,
    pub end: Configuration,
}

impl FiringTrace {
    pub fn empty(v: Configuration) -> Self {
        FiringTrace {
            start: v.clone(),
            steps: Vec::new(),
            end: v,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn firing_order(&self) -> Vec<VertexId> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    /// Re-run the recorded moves from `start`; checks that the result
    /// reproduces `end`.
    pub fn replay(&self, graph: &CoxeterGraph) -> Result<Configuration, GameError> {
        let mut current = self.start.clone();
        for step in &self.steps {
            current = fire(graph, &current, step.vertex)?;
        }
        Ok(current)
    }

    /// All intermediate configurations, including start and end.
    pub fn states(&self, graph: &CoxeterGraph) -> Result<Vec<Configuration>, GameError> {
        let mut out = vec![self.start.clone()];
        for step in &self.steps {
            let next = fire(graph, out.last().unwrap(), step.vertex)?;
            out.push(next);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub enum Strategy {
    /// Always fire the smallest legal vertex index. The default.
    LowestIndex,
    /// Uniform choice among legal moves from a seeded generator.
    Random { seed: u64 },
    /// Follow a fixed vertex list; an illegal scripted move is an error.
    Scripted(Vec<VertexId>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlayOutcome {
    /// Reached a dominant configuration.
    Won,
    /// The configuration at hand is forbidden; the game is lost.
    Forbidden,
    /// Revisited an earlier configuration.
    Loop,
    /// Step budget (or script) exhausted before a terminal state.
    Budget,
}

impl fmt::Display for PlayOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PlayOutcome::Won => "Won",
            PlayOutcome::Forbidden => "Forbidden",
            PlayOutcome::Loop => "Loop",
            PlayOutcome::Budget => "Budget",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Play {
    pub trace: FiringTrace,
    pub outcome: PlayOutcome,
    /// For `Loop`: index (in states, 0 = start) where the revisited
    /// configuration first occurred.
    pub loop_start: Option<usize>,
}

/// Play the game from `v` with the given strategy. In cutoff mode the game
/// ends on dominant (Won), forbidden (Forbidden), a revisited configuration
/// (Loop), or the step budget (Budget). Without the cutoff, Forbidden never
/// occurs and firing below -1 is permitted.
pub fn play(
    graph: &CoxeterGraph,
    v: &Configuration,
    strategy: &Strategy,
    max_steps: usize,
    cutoff: bool,
) -> Result<Play, GameError> {
    if v.len() != graph.n_vertices() {
        return Err(GameError::DimensionMismatch {
            expected: graph.n_vertices(),
            found: v.len(),
        });
    }
    let mut rng = match strategy {
        Strategy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut script = match strategy {
        Strategy::Scripted(moves) => Some(moves.iter().copied()),
        _ => None,
    };
    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    seen.insert(v.clone(), 0);
    let mut current = v.clone();
    let mut steps = Vec::new();
    let outcome;
    let mut loop_start = None;
    loop {
        if current.is_dominant() {
            outcome = PlayOutcome::Won;
            break;
        }
        if cutoff && current.is_forbidden() {
            outcome = PlayOutcome::Forbidden;
            break;
        }
        if steps.len() >= max_steps {
            outcome = PlayOutcome::Budget;
            break;
        }
        let moves = legal_moves(graph, &current, cutoff);
        debug_assert!(!moves.is_empty());
        let chosen = match strategy {
            Strategy::LowestIndex => moves[0],
            Strategy::Random { .. } => {
                let rng = rng.as_mut().unwrap();
                moves[rng.gen_range(0..moves.len())]
            }
            Strategy::Scripted(_) => match script.as_mut().unwrap().next() {
                Some(vertex) => {
                    if !moves.contains(&vertex) {
                        return Err(GameError::ScriptIllegalMove {
                            step: steps.len(),
                            vertex,
                        });
                    }
                    vertex
                }
                None => {
                    outcome = PlayOutcome::Budget;
                    break;
                }
            },
        };
        steps.push(TraceStep {
            vertex: chosen,
            amplitude_before: current.amps[chosen].clone(),
        });
        current = fire_unchecked(graph, &current, chosen);
        if let Some(&first) = seen.get(&current) {
            outcome = PlayOutcome::Loop;
            loop_start = Some(first);
            break;
        }
        seen.insert(current.clone(), steps.len());
    }
    Ok(Play {
        trace: FiringTrace {
            start: v.clone(),
            steps,
            end: current,
        },
        outcome,
        loop_start,
    })
}

/// Whether the usual (cutoff-free) numbers game starting at `v` terminates,
/// and in how many moves when that count is available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    Terminates {
        moves: Option<u64>,
    },
    DoesNotTerminate,
    /// Depth-bounded root evidence was inconclusive.
    Unknown,
}

/// Decide termination of the usual numbers game. Dynkin kinds always
/// terminate; extended and affine kinds terminate exactly when
/// delta . v > 0; other kinds are decided from the projective count of
/// violated roots within the depth bound, with violations still appearing
/// at the bound reported as Unknown.
pub fn usual_game_terminates(graph: &CoxeterGraph, v: &Configuration, bound: u32) -> Termination {
    if v.is_dominant() {
        return Termination::Terminates { moves: Some(0) };
    }
    match graph.kind() {
        GraphKind::SimplyLacedDynkin => {
            let rs = positive_roots(graph, bound);
            let moves = if rs.complete() {
                Some(rs.roots().iter().filter(|r| r.dot(v).is_negative()).count() as u64)
            } else {
                None
            };
            Termination::Terminates { moves }
        }
        GraphKind::SimplyLacedExtendedDynkin => {
            let delta = delta_root(graph).expect("extended kind is affine");
            let dv = delta.dot(v);
            if !dv.is_positive() {
                return Termination::DoesNotTerminate;
            }
            // Roots are gamma + k*delta for gamma in the subgraph root
            // system and its negative; count the violated ones per class.
            let finite_count = affine_test_roots(graph).map(|test| {
                let half = test.len() / 2;
                let mut count = 0u64;
                for gamma in &test[..half] {
                    let gdot = gamma.dot(v);
                    // gamma + k delta, k >= 0
                    count += count_ints_below(&(-&gdot / &dv), 0);
                    // -gamma + k delta, k >= 1
                    count += count_ints_below(&(&gdot / &dv), 1);
                }
                count
            });
            Termination::Terminates {
                moves: finite_count.ok(),
            }
        }
        _ => match graph.class() {
            MatrixClass::Finite => {
                let rs = positive_roots(graph, bound);
                if !rs.complete() {
                    return Termination::Unknown;
                }
                Termination::Terminates {
                    moves: Some(projective_violations(rs.roots(), v).len() as u64),
                }
            }
            MatrixClass::Affine { .. } => {
                let delta = delta_root(graph).expect("affine class");
                let dv = delta.dot(v);
                if !dv.is_positive() {
                    return Termination::DoesNotTerminate;
                }
                let rs = positive_roots(graph, bound);
                let classes = projective_violations(rs.roots(), v);
                let last_layer_violated = rs
                    .iter()
                    .any(|(r, d)| d == rs.max_depth() && r.dot(v).is_negative());
                if rs.complete() || !last_layer_violated {
                    Termination::Terminates {
                        moves: Some(classes.len() as u64),
                    }
                } else {
                    Termination::Terminates { moves: None }
                }
            }
            MatrixClass::Indefinite => {
                let rs = positive_roots(graph, bound);
                let classes = projective_violations(rs.roots(), v);
                if rs.complete() {
                    return Termination::Terminates {
                        moves: Some(classes.len() as u64),
                    };
                }
                let last_layer_violated = rs
                    .iter()
                    .any(|(r, d)| d == rs.max_depth() && r.dot(v).is_negative());
                if last_layer_violated {
                    Termination::Unknown
                } else {
                    Termination::Terminates {
                        moves: Some(classes.len() as u64),
                    }
                }
            }
        },
    }
}

/// Violated roots modulo scalar multiples, keyed by the normalized
/// coordinate vector (first nonzero coordinate scaled to 1).
fn projective_violations(roots: &[Root], v: &Configuration) -> BTreeSet<Vec<Rat>> {
    let mut classes = BTreeSet::new();
    for r in roots {
        if r.dot(v).is_negative() {
            let scale = r
                .coords
                .iter()
                .find(|c| !c.is_zero())
                .expect("roots are nonzero")
                .clone();
            classes.insert(r.coords.iter().map(|c| c / &scale).collect::<Vec<Rat>>());
        }
    }
    classes
}

/// Closure of `v` under the reflection action on configurations, up to
/// `max_size` elements. None when the orbit is larger than the budget.
pub fn weyl_orbit(
    graph: &CoxeterGraph,
    v: &Configuration,
    max_size: usize,
) -> Option<BTreeSet<Configuration>> {
    let mut orbit = BTreeSet::new();
    orbit.insert(v.clone());
    let mut frontier = vec![v.clone()];
    while let Some(w) = frontier.pop() {
        for i in graph.vertices() {
            let next = fire_unchecked(graph, &w, i);
            if orbit.insert(next.clone()) {
                if orbit.len() > max_size {
                    return None;
                }
                frontier.push(next);
            }
        }
    }
    Some(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, build_general, CartanMatrix, Family};
    use crate::rat::frac;

    #[test]
    fn firing_on_a2() {
        let g = build_family(Family::A(2)).unwrap();
        let v = Configuration::from_ints(&[-1, 0]);
        let fired = fire(&g, &v, 0).unwrap();
        assert_eq!(fired, Configuration::from_ints(&[1, -1]));
        assert!(matches!(
            fire(&g, &v, 1),
            Err(GameError::FiringNotLegal { vertex: 1, .. })
        ));
    }

    #[test]
    fn weighted_firing_matches_rank2_point_values() {
        let c = CartanMatrix::from_rows(vec![vec![rat(2), rat(-2)], vec![frac(-1, 2), rat(2)]])
            .unwrap();
        let g = build_general(c, None).unwrap();
        let v = Configuration::new(vec![frac(-1, 2), frac(-1, 2)]);
        let fired2 = fire(&g, &v, 1).unwrap();
        assert_eq!(fired2, Configuration::new(vec![frac(-3, 4), frac(1, 2)]));
        let fired1 = fire(&g, &v, 0).unwrap();
        assert_eq!(fired1, Configuration::new(vec![frac(1, 2), frac(-3, 2)]));
        assert!(fired1.is_forbidden());
    }

    #[test]
    fn allowed_forbidden_dominant() {
        let v = Configuration::from_ints(&[-1, -1]);
        assert!(v.is_allowed() && !v.is_dominant());
        let w = Configuration::new(vec![frac(1, 2), frac(-3, 2)]);
        assert!(w.is_forbidden());
        assert!(Configuration::from_ints(&[0, 0]).is_dominant());
    }

    #[test]
    fn legal_move_sets() {
        let g = build_family(Family::A(2)).unwrap();
        assert_eq!(
            legal_moves(&g, &Configuration::from_ints(&[-1, 0]), true),
            vec![0]
        );
        assert_eq!(
            legal_moves(&g, &Configuration::from_ints(&[-2, -1]), true),
            Vec::<usize>::new()
        );
        assert_eq!(
            legal_moves(&g, &Configuration::from_ints(&[-2, -1]), false),
            vec![0, 1]
        );
    }

    #[test]
    fn lowest_index_play_wins_a2() {
        let g = build_family(Family::A(2)).unwrap();
        let p = play(
            &g,
            &Configuration::from_ints(&[-1, 0]),
            &Strategy::LowestIndex,
            100,
            true,
        )
        .unwrap();
        assert_eq!(p.outcome, PlayOutcome::Won);
        assert_eq!(p.trace.len(), 2);
        assert_eq!(p.trace.end, Configuration::from_ints(&[0, 1]));
    }

    #[test]
    fn a2_tilde_loops_with_cycle_length_3() {
        let g = build_family(Family::ATilde(2)).unwrap();
        let p = play(
            &g,
            &Configuration::from_ints(&[1, -1, 0]),
            &Strategy::LowestIndex,
            100,
            true,
        )
        .unwrap();
        assert_eq!(p.outcome, PlayOutcome::Loop);
        assert_eq!(p.loop_start, Some(0));
        assert_eq!(p.trace.len(), 3);
        let states = p.trace.states(&g).unwrap();
        assert_eq!(states[1], Configuration::from_ints(&[0, 1, -1]));
        assert_eq!(states[2], Configuration::from_ints(&[-1, 0, 1]));
        assert_eq!(states[3], Configuration::from_ints(&[1, -1, 0]));
    }

    #[test]
    fn scripted_play_on_asymmetric_rank2() {
        let c = CartanMatrix::from_rows(vec![vec![rat(2), rat(-2)], vec![frac(-1, 2), rat(2)]])
            .unwrap();
        let g = build_general(c, None).unwrap();
        let start = Configuration::new(vec![frac(-1, 2), frac(-1, 2)]);
        let p = play(&g, &start, &Strategy::Scripted(vec![1, 0, 1]), 100, true).unwrap();
        assert_eq!(p.outcome, PlayOutcome::Won);
        assert!(p.trace.end.is_dominant());
        // The trace replays deterministically.
        assert_eq!(p.trace.replay(&g).unwrap(), p.trace.end);

        let err = play(&g, &start, &Strategy::Scripted(vec![1, 1]), 100, true).unwrap_err();
        assert!(matches!(
            err,
            GameError::ScriptIllegalMove { step: 1, vertex: 1 }
        ));
    }

    #[test]
    fn termination_rules() {
        let a3 = build_family(Family::A(3)).unwrap();
        assert_eq!(
            usual_game_terminates(&a3, &Configuration::from_ints(&[-1, -1, -1]), 64),
            Termination::Terminates { moves: Some(6) }
        );

        let a2t = build_family(Family::ATilde(2)).unwrap();
        assert_eq!(
            usual_game_terminates(&a2t, &Configuration::from_ints(&[1, -1, 0]), 64),
            Termination::DoesNotTerminate
        );
        assert_eq!(
            usual_game_terminates(&a2t, &Configuration::from_ints(&[1, 1, 1]), 64),
            Termination::Terminates { moves: Some(0) }
        );
    }

    #[test]
    fn delta_invariance_along_play() {
        let g = build_family(Family::DTilde(4)).unwrap();
        let delta = delta_root(&g).unwrap();
        let start = Configuration::from_ints(&[-1, 2, -1, 0, -1]);
        let d0 = delta.dot(&start);
        let p = play(&g, &start, &Strategy::Random { seed: 7 }, 50, true).unwrap();
        for state in p.trace.states(&g).unwrap() {
            assert_eq!(delta.dot(&state), d0);
        }
    }
}
