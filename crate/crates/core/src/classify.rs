//! Root-theoretic classification of configurations, with certificates.
//!
//! Every verdict here is decided by inequalities against positive roots
//! (winning iff every root pairs to at least -1, with the delta pairing
//! separating winning from looping on affine graphs), never by searching
//! the game tree; the game-tree [`crate::oracle`] is the independent
//! cross-check. The one deliberate exception: on graphs without odd bond
//! symmetry the Losing tag is not available from the theorems, and the
//! classifier delegates to the oracle.

use crate::game::{fire, play, Configuration, FiringTrace, PlayOutcome, Strategy};
use crate::game::{usual_game_terminates, GameError, Termination};
use crate::graph::{CoxeterGraph, GraphError, GraphKind, MatrixClass, VertexId};
use crate::oracle::{explore, Budgets, OracleTag, OracleWitness};
use crate::rat::{rat, NEG_ONE, ONE, ZERO};
use crate::roots::{
    affine_test_roots, coroot_config, delta_root, dominates_simple, positive_roots, Root,
    RootError, RootSet,
};
use num::{Signed, Zero};
use std::fmt;
use thiserror::Error;

const PLAY_BUDGET: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("configuration has non-integral amplitudes")]
    NotIntegral,
    #[error("the minimum-move formula requires c_ij = c_ji at odd bonds; use the general formula")]
    OddSymmetryRequired,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Winning,
    Losing,
    Looping,
    Unknown,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::Winning => "Winning",
            Tag::Losing => "Losing",
            Tag::Looping => "Looping",
            Tag::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    /// A play from the configuration to a dominant end state.
    Witness(FiringTrace),
    /// A positive root pairing strictly below -1; its depth minus one is
    /// the minimum number of moves to a forbidden configuration.
    ViolatedRoot(Root),
    /// A representative of the finite orbit a looping configuration cycles
    /// through.
    OrbitRep(Configuration),
    /// The depth-bounded evidence ran out.
    Exhausted(String),
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub tag: Tag,
    pub certificate: Certificate,
}

impl Verdict {
    fn winning(trace: FiringTrace) -> Self {
        Verdict {
            tag: Tag::Winning,
            certificate: Certificate::Witness(trace),
        }
    }
}

/// Result of the minimum-move formulas m(v) and m'(v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinMoves {
    /// Minimum number of moves to reach a forbidden configuration.
    Reachable(u64),
    /// No forbidden configuration is reachable (complete enumeration).
    Unreachable,
    /// The depth-bounded enumeration found no violation but was truncated.
    Unknown,
}

/// Classifier for one graph: positive roots to the depth bound, the affine
/// test roots where they exist, and oracle budgets for the delegated cases.
/// All caches are computed at construction and only read afterwards, so a
/// classifier can be shared across threads.
pub struct Classifier<'g> {
    graph: &'g CoxeterGraph,
    roots: RootSet,
    test_roots: Option<Vec<Root>>,
    delta: Option<Root>,
    budgets: Budgets,
}

impl<'g> Classifier<'g> {
    pub fn new(graph: &'g CoxeterGraph) -> Self {
        Self::with_bound(graph, 64, Budgets::default())
    }

    pub fn with_bound(graph: &'g CoxeterGraph, bound: u32, budgets: Budgets) -> Self {
        let roots = positive_roots(graph, bound);
        let test_roots = affine_test_roots(graph).ok();
        let delta = delta_root(graph);
        Classifier {
            graph,
            roots,
            test_roots,
            delta,
            budgets,
        }
    }

    pub fn graph(&self) -> &CoxeterGraph {
        self.graph
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    fn check_dims(&self, v: &Configuration) -> Result<(), ClassifyError> {
        if v.len() != self.graph.n_vertices() {
            return Err(GameError::DimensionMismatch {
                expected: self.graph.n_vertices(),
                found: v.len(),
            }
            .into());
        }
        Ok(())
    }

    /// First root in (depth, lex) order with root . v < -1.
    fn first_violated(&self, v: &Configuration) -> Option<&Root> {
        self.roots.roots().iter().find(|r| r.dot(v) < *NEG_ONE)
    }

    fn losing_certificate(&self, v: &Configuration) -> Certificate {
        match self.first_violated(v) {
            Some(r) => Certificate::ViolatedRoot(r.clone()),
            None => Certificate::Exhausted(format!(
                "no violated root within depth {}",
                self.roots.max_depth()
            )),
        }
    }

    /// A winning play, for configurations the theorems certify as winning
    /// (any legal play then reaches a dominant state without ever passing a
    /// forbidden one).
    fn winning_trace(&self, v: &Configuration) -> FiringTrace {
        let p = play(self.graph, v, &Strategy::LowestIndex, PLAY_BUDGET, true)
            .expect("dimensions already checked");
        debug_assert_eq!(p.outcome, PlayOutcome::Won);
        p.trace
    }

    /// Winning iff every positive root pairs to at least -1 (Dynkin kinds).
    pub fn classify_dynkin(&self, v: &Configuration) -> Result<Verdict, ClassifyError> {
        self.require_kind(GraphKind::SimplyLacedDynkin)?;
        self.check_dims(v)?;
        debug_assert!(self.roots.complete());
        Ok(match self.first_violated(v) {
            Some(root) => Verdict {
                tag: Tag::Losing,
                certificate: Certificate::ViolatedRoot(root.clone()),
            },
            None => Verdict::winning(self.winning_trace(v)),
        })
    }

    /// Extended Dynkin trichotomy: the finitely many inequalities over the
    /// affine test roots, plus the sign of delta . v.
    pub fn classify_extended(&self, v: &Configuration) -> Result<Verdict, ClassifyError> {
        self.require_kind(GraphKind::SimplyLacedExtendedDynkin)?;
        self.check_dims(v)?;
        if v.is_zero() {
            // Already dominant; the trichotomy excludes zero, we classify it
            // as winning with the empty word.
            return Ok(Verdict::winning(FiringTrace::empty(v.clone())));
        }
        let delta = self.delta.as_ref().expect("extended kind is affine");
        let dv = delta.dot(v);
        let test_roots = self.test_roots.as_ref().expect("extended kind");
        let inequalities_hold =
            !dv.is_negative() && test_roots.iter().all(|r| r.dot(v) >= *NEG_ONE);
        Ok(if !inequalities_hold {
            Verdict {
                tag: Tag::Losing,
                certificate: self.losing_certificate(v),
            }
        } else if dv.is_zero() {
            Verdict {
                tag: Tag::Looping,
                certificate: self.looping_orbit_rep(v),
            }
        } else {
            Verdict::winning(self.winning_trace(v))
        })
    }

    /// A looping configuration cycles through a finite orbit; play until a
    /// configuration repeats and report the least one on the cycle.
    fn looping_orbit_rep(&self, v: &Configuration) -> Certificate {
        let p = play(self.graph, v, &Strategy::LowestIndex, PLAY_BUDGET, true)
            .expect("dimensions already checked");
        if p.outcome != PlayOutcome::Loop {
            return Certificate::Exhausted("loop not reached within the play budget".into());
        }
        let states = p.trace.states(self.graph).expect("trace replays");
        let rep = states[p.loop_start.unwrap()..]
            .iter()
            .min()
            .expect("cycle is nonempty")
            .clone();
        Certificate::OrbitRep(rep)
    }

    fn require_kind(&self, kind: GraphKind) -> Result<(), ClassifyError> {
        if self.graph.kind() != kind {
            return Err(GraphError::WrongKind {
                expected: match kind {
                    GraphKind::SimplyLacedDynkin => "simply-laced Dynkin",
                    GraphKind::SimplyLacedExtendedDynkin => "simply-laced extended Dynkin",
                    _ => "general",
                },
                found: self.graph.kind(),
            }
            .into());
        }
        Ok(())
    }

    /// Integral classification by the explicit conditions: amplitudes at
    /// least -1, no restriction of v equal to a negative coroot, and (on
    /// extended graphs) v distinct from -omega at extending vertices, with
    /// delta . v = 0 handled by playing the game on the complement of an
    /// extending vertex.
    pub fn classify_integral(&self, v: &Configuration) -> Result<Verdict, ClassifyError> {
        self.check_dims(v)?;
        if !v.is_integral() {
            return Err(ClassifyError::NotIntegral);
        }
        match self.graph.kind() {
            GraphKind::SimplyLacedDynkin => {
                let winning = v.amps.iter().all(|a| *a >= *NEG_ONE)
                    && self
                        .roots
                        .roots()
                        .iter()
                        .all(|r| !restriction_is_negative_coroot(self.graph, v, r));
                Ok(if winning {
                    Verdict::winning(self.winning_trace(v))
                } else {
                    Verdict {
                        tag: Tag::Losing,
                        certificate: self.losing_certificate(v),
                    }
                })
            }
            GraphKind::SimplyLacedExtendedDynkin => self.classify_integral_extended(v),
            kind => Err(GraphError::WrongKind {
                expected: "simply-laced",
                found: kind,
            }
            .into()),
        }
    }

    fn classify_integral_extended(&self, v: &Configuration) -> Result<Verdict, ClassifyError> {
        if v.is_zero() {
            return Ok(Verdict::winning(FiringTrace::empty(v.clone())));
        }
        let delta = self.delta.as_ref().expect("extended kind is affine");
        let dv = delta.dot(v);
        let extending = self.graph.extending_vertices()?;
        if dv.is_zero() {
            return self.integral_loop_test(v, extending[0]);
        }
        // Restrictions to negative coroots only need checking against the
        // finite test set: every root with a proper support, and every
        // fully supported root bounded by delta, appears there, and the
        // remaining fully supported roots repeat those conditions.
        let test_roots = self.test_roots.as_ref().expect("extended kind");
        let winning = v.amps.iter().all(|a| *a >= *NEG_ONE)
            && test_roots
                .iter()
                .all(|r| !restriction_is_negative_coroot(self.graph, v, r))
            && extending.iter().all(|&j| !is_neg_omega(v, j));
        Ok(if winning {
            Verdict::winning(self.winning_trace(v))
        } else {
            Verdict {
                tag: Tag::Losing,
                certificate: self.losing_certificate(v),
            }
        })
    }

    /// delta . v = 0, v nonzero: fire only vertices away from the chosen
    /// extending vertex. The usual game on the Dynkin complement terminates;
    /// if the full configuration never turns forbidden it has arrived at
    /// omega_{i'} - omega_{i0}, and v is looping.
    fn integral_loop_test(
        &self,
        v: &Configuration,
        i0: VertexId,
    ) -> Result<Verdict, ClassifyError> {
        let mut w = v.clone();
        for _ in 0..PLAY_BUDGET {
            if w.is_forbidden() {
                return Ok(Verdict {
                    tag: Tag::Losing,
                    certificate: self.losing_certificate(v),
                });
            }
            let Some(j) = self
                .graph
                .vertices()
                .find(|&j| j != i0 && w.amps[j].is_negative())
            else {
                break;
            };
            w = fire(self.graph, &w, j)?;
        }
        debug_assert!(
            w.amps[i0] == *NEG_ONE
                && self
                    .graph
                    .vertices()
                    .all(|j| j == i0 || !w.amps[j].is_negative()),
            "complement play must end with the sole negative amplitude -1 at {i0}"
        );
        Ok(Verdict {
            tag: Tag::Looping,
            certificate: Certificate::OrbitRep(w),
        })
    }

    /// Looping iff both v and -v are winning after removing an extending
    /// vertex (for delta . v = 0 and v nonzero).
    pub fn looping_subgraph_test(&self, v: &Configuration) -> Result<bool, ClassifyError> {
        self.require_kind(GraphKind::SimplyLacedExtendedDynkin)?;
        self.check_dims(v)?;
        let delta = self.delta.as_ref().expect("extended kind is affine");
        if v.is_zero() || !delta.dot(v).is_zero() {
            return Err(ClassifyError::Precondition(
                "looping_subgraph_test needs delta . v = 0 and v != 0".into(),
            ));
        }
        let i0 = self.graph.extending_vertices()?[0];
        let keep: Vec<VertexId> = self.graph.vertices().filter(|&j| j != i0).collect();
        let sub = self.graph.induced_subgraph(&keep)?;
        let sub_classifier = Classifier::with_bound(&sub, 64, self.budgets);
        let restricted = v.restrict(&keep);
        let forward = sub_classifier.classify_dynkin(&restricted)?;
        let backward = sub_classifier.classify_dynkin(&restricted.neg())?;
        Ok(forward.tag == Tag::Winning && backward.tag == Tag::Winning)
    }

    /// m(v): minimum moves to a forbidden configuration, as the least
    /// depth minus one over roots pairing below -1. Only valid under odd
    /// bond symmetry.
    pub fn min_moves_formula(&self, v: &Configuration) -> Result<MinMoves, ClassifyError> {
        if !self.graph.odd_symmetry() {
            return Err(ClassifyError::OddSymmetryRequired);
        }
        self.check_dims(v)?;
        Ok(self.scan_min_moves(v, false))
    }

    /// m'(v): as m(v) but restricted to roots above some simple root;
    /// valid for arbitrary Cartan data.
    pub fn min_moves_formula_general(&self, v: &Configuration) -> Result<MinMoves, ClassifyError> {
        self.check_dims(v)?;
        Ok(self.scan_min_moves(v, true))
    }

    fn scan_min_moves(&self, v: &Configuration, dominating_only: bool) -> MinMoves {
        for (root, depth) in self.roots.iter() {
            if root.dot(v) < *NEG_ONE {
                if dominating_only
                    && dominates_simple(self.graph, root)
                        .expect("enumerated roots are positive")
                        .is_none()
                {
                    continue;
                }
                return MinMoves::Reachable(u64::from(depth) - 1);
            }
        }
        if self.roots.complete() {
            MinMoves::Unreachable
        } else {
            MinMoves::Unknown
        }
    }

    /// Full classification for arbitrary kinds. Finite and affine Cartan
    /// classes get the trichotomy; the Losing tag is only claimed under odd
    /// bond symmetry, otherwise the oracle decides. Indefinite classes
    /// combine the termination test with the inequality scan and say
    /// Unknown when the depth bound is the limiting factor.
    pub fn classify_general(&self, v: &Configuration) -> Result<Verdict, ClassifyError> {
        self.check_dims(v)?;
        match self.graph.kind() {
            GraphKind::SimplyLacedDynkin => self.classify_dynkin(v),
            GraphKind::SimplyLacedExtendedDynkin => self.classify_extended(v),
            _ => match self.graph.class() {
                MatrixClass::Finite => self.classify_general_finite(v),
                MatrixClass::Affine { .. } => self.classify_general_affine(v),
                MatrixClass::Indefinite => self.classify_general_indefinite(v),
            },
        }
    }

    /// Kind-directed classification: the strongest theorem available for
    /// the graph.
    pub fn classify(&self, v: &Configuration) -> Result<Verdict, ClassifyError> {
        self.classify_general(v)
    }

    fn classify_general_finite(&self, v: &Configuration) -> Result<Verdict, ClassifyError> {
        if !self.roots.complete() {
            return Ok(Verdict {
                tag: Tag::Unknown,
                certificate: Certificate::Exhausted(format!(
                    "finite-class enumeration truncated at depth {}",
                    self.roots.max_depth()
                )),
            });
        }
        match self.first_violated(v) {
            None => Ok(Verdict::winning(self.winning_trace(v))),
            Some(root) => {
                if self.graph.odd_symmetry() {
                    Ok(Verdict {
                        tag: Tag::Losing,
                        certificate: Certificate::ViolatedRoot(root.clone()),
                    })
                } else {
                    Ok(self.oracle_delegate(v, Some(root.clone())))
                }
            }
        }
    }

    fn classify_general_affine(&self, v: &Configuration) -> Result<Verdict, ClassifyError> {
        let delta = self.delta.as_ref().expect("affine class");
        let dv = delta.dot(v);
        if v.is_zero() {
            return Ok(Verdict::winning(FiringTrace::empty(v.clone())));
        }
        let violated = self.first_violated(v).cloned();
        if let Some(root) = violated {
            return if self.graph.odd_symmetry() {
                Ok(Verdict {
                    tag: Tag::Losing,
                    certificate: Certificate::ViolatedRoot(root),
                })
            } else {
                Ok(self.oracle_delegate(v, Some(root)))
            };
        }
        if dv.is_negative() {
            // delta . v < 0 forces violations at some depth even if the
            // bounded scan missed them.
            return if self.graph.odd_symmetry() {
                Ok(Verdict {
                    tag: Tag::Losing,
                    certificate: self.losing_certificate(v),
                })
            } else {
                Ok(self.oracle_delegate(v, None))
            };
        }
        if !self.affine_scan_stabilized() {
            return Ok(Verdict {
                tag: Tag::Unknown,
                certificate: Certificate::Exhausted(format!(
                    "affine enumeration not delta-periodic at depth {}",
                    self.roots.max_depth()
                )),
            });
        }
        Ok(if dv.is_zero() {
            Verdict {
                tag: Tag::Looping,
                certificate: self.looping_orbit_rep(v),
            }
        } else {
            Verdict::winning(self.winning_trace(v))
        })
    }

    /// The deepest enumerated layer repeats earlier delta-classes, so the
    /// pairing values seen are the pairing values of the whole root system.
    fn affine_scan_stabilized(&self) -> bool {
        if self.roots.complete() {
            return true;
        }
        let delta = self.delta.as_ref().expect("affine class");
        let last = self.roots.max_depth();
        self.roots.iter().filter(|&(_, d)| d == last).all(|(r, _)| {
            let mut shifted = r.clone();
            (1..=3).any(|_| {
                shifted = shifted.sub(delta);
                self.roots.contains(&shifted)
            })
        })
    }

    fn classify_general_indefinite(&self, v: &Configuration) -> Result<Verdict, ClassifyError> {
        if self.roots.complete() {
            return self.classify_general_finite(v);
        }
        let violated = self.first_violated(v).cloned();
        match violated {
            None => Ok(Verdict {
                tag: Tag::Unknown,
                certificate: Certificate::Exhausted(format!(
                    "no violation within depth {} of a truncated enumeration",
                    self.roots.max_depth()
                )),
            }),
            Some(root) => {
                let term = usual_game_terminates(self.graph, v, self.roots.max_depth());
                if self.graph.odd_symmetry() && matches!(term, Termination::Terminates { .. }) {
                    Ok(Verdict {
                        tag: Tag::Losing,
                        certificate: Certificate::ViolatedRoot(root),
                    })
                } else {
                    Ok(self.oracle_delegate(v, Some(root)))
                }
            }
        }
    }

    /// Oracle-decided verdict for graphs where the theorems withhold a tag.
    /// A Mixed outcome (winnable but forcible into a forbidden state) maps
    /// to Winning: a play to a dominant configuration exists.
    fn oracle_delegate(&self, v: &Configuration, root: Option<Root>) -> Verdict {
        let e = explore(self.graph, v, self.budgets);
        match e.verdict.tag {
            OracleTag::Winning | OracleTag::Mixed => match e.verdict.witness {
                OracleWitness::Trace(t) => Verdict::winning(t),
                _ => Verdict::winning(FiringTrace::empty(v.clone())),
            },
            OracleTag::Losing => Verdict {
                tag: Tag::Losing,
                certificate: match root {
                    Some(r) => Certificate::ViolatedRoot(r),
                    None => self.losing_certificate(v),
                },
            },
            OracleTag::Looping => {
                let rep = match e.verdict.witness {
                    OracleWitness::Cycle { cycle, .. } => Certificate::OrbitRep(cycle.start),
                    _ => Certificate::Exhausted("cycle witness missing".into()),
                };
                Verdict {
                    tag: Tag::Looping,
                    certificate: rep,
                }
            }
            OracleTag::Unknown => Verdict {
                tag: Tag::Unknown,
                certificate: Certificate::Exhausted("oracle budgets exhausted".into()),
            },
        }
    }

    /// Integral configurations in the box that are losing on the whole
    /// graph yet winning on every proper connected subgraph.
    pub fn minimal_losing_catalog(
        &self,
        box_low: i64,
        box_high: i64,
    ) -> Result<Vec<Configuration>, ClassifyError> {
        if !self.graph.is_simply_laced() {
            return Err(GraphError::WrongKind {
                expected: "simply-laced",
                found: self.graph.kind(),
            }
            .into());
        }
        if box_low > box_high {
            return Err(ClassifyError::Precondition("empty box".into()));
        }
        let subsets = self.graph.connected_proper_subsets();
        let subgraphs: Vec<(Vec<VertexId>, CoxeterGraph)> = subsets
            .into_iter()
            .map(|s| {
                let g = self.graph.induced_subgraph(&s)?;
                Ok((s, g))
            })
            .collect::<Result<_, GraphError>>()?;
        let sub_classifiers: Vec<Classifier> = subgraphs
            .iter()
            .map(|(_, g)| Classifier::with_bound(g, 64, self.budgets))
            .collect();
        let mut out = Vec::new();
        let n = self.graph.n_vertices();
        let mut amps = vec![box_low; n];
        'outer: loop {
            let v = Configuration::from_ints(&amps);
            if self.classify_integral(&v)?.tag == Tag::Losing {
                let minimal = subgraphs.iter().zip(&sub_classifiers).all(|((s, _), c)| {
                    let r = v.restrict(s);
                    matches!(
                        c.classify_integral(&r).map(|verdict| verdict.tag),
                        Ok(Tag::Winning)
                    )
                });
                if minimal {
                    out.push(v);
                }
            }
            for k in 0..n {
                if amps[k] < box_high {
                    amps[k] += 1;
                    continue 'outer;
                }
                amps[k] = box_low;
            }
            break;
        }
        out.sort();
        Ok(out)
    }

    /// The closed-form catalog: -beta^vee for fully supported roots beta
    /// (bounded by delta in the extended case), -omega at extending
    /// vertices, and on the one-vertex graph the forbidden amplitudes.
    pub fn closed_form_catalog(
        &self,
        box_low: i64,
        box_high: i64,
    ) -> Result<Vec<Configuration>, ClassifyError> {
        if !self.graph.is_simply_laced() {
            return Err(GraphError::WrongKind {
                expected: "simply-laced",
                found: self.graph.kind(),
            }
            .into());
        }
        let n = self.graph.n_vertices();
        let in_box = |c: &Configuration| {
            c.amps
                .iter()
                .all(|a| *a >= rat(box_low) && *a <= rat(box_high))
        };
        let mut out = Vec::new();
        if n == 1 {
            let mut x = box_low;
            while x <= box_high.min(-2) {
                out.push(Configuration::from_ints(&[x]));
                x += 1;
            }
            return Ok(out);
        }
        match self.graph.kind() {
            GraphKind::SimplyLacedDynkin => {
                for root in self.roots.roots() {
                    if root.support().len() == n {
                        let cand = coroot_config(self.graph, root)?.neg();
                        if in_box(&cand) {
                            out.push(cand);
                        }
                    }
                }
            }
            GraphKind::SimplyLacedExtendedDynkin => {
                let delta = self.delta.as_ref().expect("extended kind is affine");
                for root in self.test_roots.as_ref().expect("extended kind") {
                    let bounded = root
                        .coords
                        .iter()
                        .zip(delta.coords.iter())
                        .all(|(c, d)| c <= d);
                    if root.support().len() == n && bounded {
                        let cand = coroot_config(self.graph, root)?.neg();
                        if in_box(&cand) {
                            out.push(cand);
                        }
                    }
                }
                for j in self.graph.extending_vertices()? {
                    let mut amps = vec![ZERO.clone(); n];
                    amps[j] = -ONE.clone();
                    let cand = Configuration::new(amps);
                    if in_box(&cand) {
                        out.push(cand);
                    }
                }
            }
            _ => unreachable!("checked simply-laced above"),
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Does v restricted to the support of `root` equal the negative of the
/// coroot configuration of `root` there?
fn restriction_is_negative_coroot(graph: &CoxeterGraph, v: &Configuration, root: &Root) -> bool {
    let coroot = coroot_config(graph, root).expect("simply-laced kinds only");
    root.support()
        .into_iter()
        .all(|i| v.amps[i] == -&coroot.amps[i])
}

fn is_neg_omega(v: &Configuration, j: VertexId) -> bool {
    v.amps
        .iter()
        .enumerate()
        .all(|(k, a)| if k == j { *a == *NEG_ONE } else { a.is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, build_general, CartanMatrix, Family};
    use crate::rat::frac;

    #[test]
    fn dynkin_examples() {
        let g = build_family(Family::A(2)).unwrap();
        let c = Classifier::new(&g);
        let losing = c
            .classify_dynkin(&Configuration::from_ints(&[-1, -1]))
            .unwrap();
        assert_eq!(losing.tag, Tag::Losing);
        match losing.certificate {
            Certificate::ViolatedRoot(r) => {
                assert_eq!(r, Root::from_ints(&[1, 1]));
                assert_eq!(r.dot(&Configuration::from_ints(&[-1, -1])), rat(-2));
            }
            other => panic!("expected violated root, got {other:?}"),
        }
        let winning = c
            .classify_dynkin(&Configuration::from_ints(&[-1, 0]))
            .unwrap();
        assert_eq!(winning.tag, Tag::Winning);
    }

    #[test]
    fn d4_non_integral_losing_point() {
        let g = build_family(Family::D(4)).unwrap();
        let c = Classifier::new(&g);
        let v = Configuration::new(vec![rat(-1), rat(-1), rat(-1), frac(3, 2)]);
        assert_eq!(c.classify_dynkin(&v).unwrap().tag, Tag::Losing);
    }

    #[test]
    fn extended_examples() {
        let g = build_family(Family::ATilde(2)).unwrap();
        let c = Classifier::new(&g);
        let losing = c
            .classify_extended(&Configuration::from_ints(&[-1, 0, 0]))
            .unwrap();
        assert_eq!(losing.tag, Tag::Losing);
        let looping = c
            .classify_extended(&Configuration::from_ints(&[1, -1, 0]))
            .unwrap();
        assert_eq!(looping.tag, Tag::Looping);
        let winning = c
            .classify_extended(&Configuration::from_ints(&[1, 0, 0]))
            .unwrap();
        assert_eq!(winning.tag, Tag::Winning);
        let zero = c
            .classify_extended(&Configuration::from_ints(&[0, 0, 0]))
            .unwrap();
        assert_eq!(zero.tag, Tag::Winning);
    }

    #[test]
    fn integral_examples() {
        let a2 = build_family(Family::A(2)).unwrap();
        let c = Classifier::new(&a2);
        assert_eq!(
            c.classify_integral(&Configuration::from_ints(&[-1, -1]))
                .unwrap()
                .tag,
            Tag::Losing
        );
        assert!(c
            .classify_integral(&Configuration::new(vec![frac(1, 2), rat(0)]))
            .is_err());

        let d4 = build_family(Family::D(4)).unwrap();
        let c4 = Classifier::new(&d4);
        let v = Configuration::from_ints(&[-1, -1, -1, 0]);
        assert_eq!(
            c4.classify_integral(&v).unwrap().tag,
            c4.classify_dynkin(&v).unwrap().tag
        );
    }

    #[test]
    fn integral_loop_test_reaches_mu() {
        let g = build_family(Family::ATilde(2)).unwrap();
        let c = Classifier::new(&g);
        let verdict = c
            .classify_integral(&Configuration::from_ints(&[1, -1, 0]))
            .unwrap();
        assert_eq!(verdict.tag, Tag::Looping);
        match verdict.certificate {
            Certificate::OrbitRep(mu) => {
                // omega_{i'} - omega_0 for some other extending vertex i'
                assert_eq!(mu.amps[0], rat(-1));
                assert_eq!(mu.amps.iter().filter(|a| **a == rat(1)).count(), 1);
            }
            other => panic!("expected orbit representative, got {other:?}"),
        }
    }

    #[test]
    fn looping_subgraph_test_examples() {
        let g = build_family(Family::ATilde(2)).unwrap();
        let c = Classifier::new(&g);
        assert!(c
            .looping_subgraph_test(&Configuration::from_ints(&[1, -1, 0]))
            .unwrap());
        assert!(!c
            .looping_subgraph_test(&Configuration::from_ints(&[2, -2, 0]))
            .unwrap());
        assert!(c
            .looping_subgraph_test(&Configuration::from_ints(&[0, 0, 0]))
            .is_err());
    }

    #[test]
    fn min_moves_examples() {
        let a2 = build_family(Family::A(2)).unwrap();
        let c = Classifier::new(&a2);
        assert_eq!(
            c.min_moves_formula(&Configuration::from_ints(&[-1, -1]))
                .unwrap(),
            MinMoves::Reachable(1)
        );
        assert_eq!(
            c.min_moves_formula(&Configuration::from_ints(&[0, 1]))
                .unwrap(),
            MinMoves::Unreachable
        );

        let a1 = build_family(Family::A(1)).unwrap();
        let c1 = Classifier::new(&a1);
        assert_eq!(
            c1.min_moves_formula(&Configuration::from_ints(&[-2]))
                .unwrap(),
            MinMoves::Reachable(0)
        );

        let asym = CartanMatrix::from_rows(vec![vec![rat(2), rat(-2)], vec![frac(-1, 2), rat(2)]])
            .unwrap();
        let g = build_general(asym, None).unwrap();
        let ca = Classifier::new(&g);
        let v = Configuration::new(vec![frac(-1, 2), frac(-1, 2)]);
        assert!(ca.min_moves_formula(&v).is_err());
        assert_eq!(
            ca.min_moves_formula_general(&v).unwrap(),
            MinMoves::Reachable(1)
        );
    }

    #[test]
    fn catalog_on_a2_box() {
        let g = build_family(Family::A(2)).unwrap();
        let c = Classifier::new(&g);
        let enumerated = c.minimal_losing_catalog(-1, 1).unwrap();
        assert_eq!(enumerated, vec![Configuration::from_ints(&[-1, -1])]);
        assert_eq!(enumerated, c.closed_form_catalog(-1, 1).unwrap());
    }

    #[test]
    fn classify_general_on_rank2_affine() {
        let c = CartanMatrix::from_ints(&[&[2, -2], &[-2, 2]]).unwrap();
        let g = build_general(c, None).unwrap();
        let cl = Classifier::new(&g);
        let verdict = cl
            .classify_general(&Configuration::from_ints(&[1, -1]))
            .unwrap();
        assert_eq!(verdict.tag, Tag::Looping);
        let losing = cl
            .classify_general(&Configuration::from_ints(&[-1, -1]))
            .unwrap();
        assert_eq!(losing.tag, Tag::Losing);
    }

    #[test]
    fn classify_general_delegates_on_asymmetric_graph() {
        let c = CartanMatrix::from_rows(vec![vec![rat(2), rat(-2)], vec![frac(-1, 2), rat(2)]])
            .unwrap();
        let g = build_general(c, None).unwrap();
        let cl = Classifier::new(&g);
        let v = Configuration::new(vec![frac(-1, 2), frac(-1, 2)]);
        let verdict = cl.classify_general(&v).unwrap();
        assert_eq!(verdict.tag, Tag::Winning);
        match verdict.certificate {
            Certificate::Witness(t) => assert!(t.end.is_dominant()),
            other => panic!("expected witness trace, got {other:?}"),
        }
    }
}
