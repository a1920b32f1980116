//! Brute-force ground truth: exhaustive breadth-first exploration of the
//! cutoff game graph, independent of every classification theorem. States
//! are memoized by their exact amplitude vectors, so cycle detection is
//! sound; exhaustion of the state or depth budget is reported as data, not
//! as an error.

use crate::game::{fire_unchecked, legal_moves, Configuration, FiringTrace, TraceStep};
use crate::graph::{CoxeterGraph, VertexId};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub max_states: usize,
    pub max_depth: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_states: 1_000_000,
            max_depth: 10_000,
        }
    }
}

/// What the exhaustive search saw from a start configuration.
#[derive(Clone, Debug)]
pub struct OutcomeSet {
    pub can_win: bool,
    pub can_reach_forbidden: bool,
    pub can_loop: bool,
    pub min_moves_to_win: Option<u64>,
    pub min_moves_to_forbidden: Option<u64>,
    /// True when a budget truncated the exploration; every `false` field
    /// above is then unconfirmed.
    pub exhausted: bool,
    pub states_explored: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleTag {
    Winning,
    Losing,
    Looping,
    /// Winning under some play but forced into a forbidden configuration
    /// under another; occurs only without odd bond symmetry.
    Mixed,
    Unknown,
}

impl fmt::Display for OracleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OracleTag::Winning => "Winning",
            OracleTag::Losing => "Losing",
            OracleTag::Looping => "Looping",
            OracleTag::Mixed => "Mixed",
            OracleTag::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub enum OracleWitness {
    /// A shortest play to a dominant (Winning/Mixed) or forbidden (Losing)
    /// configuration.
    Trace(FiringTrace),
    /// A shortest play into a cycle, plus the cycle itself (whose start and
    /// end configuration coincide).
    Cycle {
        lead_in: FiringTrace,
        cycle: FiringTrace,
    },
    None,
}

#[derive(Clone, Debug)]
pub struct OracleVerdict {
    pub tag: OracleTag,
    pub witness: OracleWitness,
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub outcome: OutcomeSet,
    pub verdict: OracleVerdict,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum NodeStatus {
    Dominant,
    Forbidden,
    Interior,
}

struct GameGraph {
    configs: Vec<Configuration>,
    status: Vec<NodeStatus>,
    depth: Vec<u64>,
    parent: Vec<Option<(usize, VertexId)>>,
    edges: Vec<Vec<(VertexId, usize)>>,
    exhausted: bool,
}

fn bfs(graph: &CoxeterGraph, start: &Configuration, budgets: Budgets) -> GameGraph {
    let mut ids: HashMap<Configuration, usize> = HashMap::new();
    let mut g = GameGraph {
        configs: Vec::new(),
        status: Vec::new(),
        depth: Vec::new(),
        parent: Vec::new(),
        edges: Vec::new(),
        exhausted: false,
    };
    let status_of = |c: &Configuration| {
        if c.is_dominant() {
            NodeStatus::Dominant
        } else if c.is_forbidden() {
            NodeStatus::Forbidden
        } else {
            NodeStatus::Interior
        }
    };
    ids.insert(start.clone(), 0);
    g.configs.push(start.clone());
    g.status.push(status_of(start));
    g.depth.push(0);
    g.parent.push(None);
    g.edges.push(Vec::new());
    let mut head = 0;
    while head < g.configs.len() {
        let id = head;
        head += 1;
        if g.status[id] != NodeStatus::Interior {
            continue; // terminal; no moves
        }
        if g.depth[id] as usize >= budgets.max_depth {
            g.exhausted = true;
            continue;
        }
        let here = g.configs[id].clone();
        for vertex in legal_moves(graph, &here, true) {
            let child = fire_unchecked(graph, &here, vertex);
            let child_id = match ids.get(&child) {
                Some(&cid) => cid,
                None => {
                    if g.configs.len() >= budgets.max_states {
                        g.exhausted = true;
                        continue;
                    }
                    let cid = g.configs.len();
                    ids.insert(child.clone(), cid);
                    g.status.push(status_of(&child));
                    g.depth.push(g.depth[id] + 1);
                    g.parent.push(Some((id, vertex)));
                    g.configs.push(child);
                    g.edges.push(Vec::new());
                    cid
                }
            };
            g.edges[id].push((vertex, child_id));
        }
    }
    g
}

impl GameGraph {
    fn trace_to(&self, target: usize) -> FiringTrace {
        let mut moves = Vec::new();
        let mut node = target;
        while let Some((p, vertex)) = self.parent[node] {
            moves.push((p, vertex));
            node = p;
        }
        moves.reverse();
        FiringTrace {
            start: self.configs[0].clone(),
            steps: moves
                .iter()
                .map(|&(p, vertex)| TraceStep {
                    vertex,
                    amplitude_before: self.configs[p].amps[vertex].clone(),
                })
                .collect(),
            end: self.configs[target].clone(),
        }
    }

    /// Depth-first search for a reachable cycle; returns the entry node and
    /// the fired vertices around the cycle.
    fn find_cycle(&self) -> Option<(usize, Vec<VertexId>)> {
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let mut color = vec![Color::White; self.configs.len()];
        // (node, next edge index, vertex fired to enter this node)
        let mut stack: Vec<(usize, usize, VertexId)> = vec![(0, 0, usize::MAX)];
        let mut pos: HashMap<usize, usize> = HashMap::new();
        color[0] = Color::Gray;
        pos.insert(0, 0);
        while let Some(&(node, edge_idx, _)) = stack.last() {
            if edge_idx >= self.edges[node].len() {
                color[node] = Color::Black;
                pos.remove(&node);
                stack.pop();
                continue;
            }
            stack.last_mut().unwrap().1 += 1;
            let (vertex, child) = self.edges[node][edge_idx];
            match color[child] {
                Color::White => {
                    color[child] = Color::Gray;
                    pos.insert(child, stack.len());
                    stack.push((child, 0, vertex));
                }
                Color::Gray => {
                    let p = pos[&child];
                    let mut cycle: Vec<VertexId> =
                        stack[p + 1..].iter().map(|&(_, _, via)| via).collect();
                    cycle.push(vertex);
                    return Some((child, cycle));
                }
                Color::Black => {}
            }
        }
        None
    }
}

/// Exhaustively explore the cutoff game from `v` and classify it by the
/// game-tree definitions alone.
pub fn explore(graph: &CoxeterGraph, v: &Configuration, budgets: Budgets) -> Exploration {
    let g = bfs(graph, v, budgets);
    let first = |wanted: NodeStatus| {
        g.status
            .iter()
            .enumerate()
            .filter(|&(_, s)| *s == wanted)
            .min_by_key(|&(id, _)| g.depth[id])
            .map(|(id, _)| id)
    };
    let win_node = first(NodeStatus::Dominant);
    let forbidden_node = first(NodeStatus::Forbidden);
    let cycle = g.find_cycle();
    let outcome = OutcomeSet {
        can_win: win_node.is_some(),
        can_reach_forbidden: forbidden_node.is_some(),
        can_loop: cycle.is_some(),
        min_moves_to_win: win_node.map(|id| g.depth[id]),
        min_moves_to_forbidden: forbidden_node.map(|id| g.depth[id]),
        exhausted: g.exhausted,
        states_explored: g.configs.len(),
    };
    let verdict = if g.exhausted {
        OracleVerdict {
            tag: OracleTag::Unknown,
            witness: match win_node {
                Some(id) => OracleWitness::Trace(g.trace_to(id)),
                None => OracleWitness::None,
            },
        }
    } else if let Some(id) = win_node {
        let tag = if forbidden_node.is_some() {
            OracleTag::Mixed
        } else {
            OracleTag::Winning
        };
        OracleVerdict {
            tag,
            witness: OracleWitness::Trace(g.trace_to(id)),
        }
    } else if let Some((entry, fired)) = cycle {
        let lead_in = g.trace_to(entry);
        let mut state = g.configs[entry].clone();
        let mut steps = Vec::new();
        for vertex in fired {
            steps.push(TraceStep {
                vertex,
                amplitude_before: state.amps[vertex].clone(),
            });
            state = fire_unchecked(graph, &state, vertex);
        }
        debug_assert_eq!(state, g.configs[entry]);
        OracleVerdict {
            tag: OracleTag::Looping,
            witness: OracleWitness::Cycle {
                lead_in,
                cycle: FiringTrace {
                    start: g.configs[entry].clone(),
                    steps,
                    end: state,
                },
            },
        }
    } else {
        let id =
            forbidden_node.expect("a complete exploration with no win and no cycle ends forbidden");
        OracleVerdict {
            tag: OracleTag::Losing,
            witness: OracleWitness::Trace(g.trace_to(id)),
        }
    };
    Exploration { outcome, verdict }
}

/// Fewest cutoff-game moves from `v` to a forbidden configuration, if one
/// is reachable.
pub fn min_moves_to_forbidden(
    graph: &CoxeterGraph,
    v: &Configuration,
    budgets: Budgets,
) -> Option<u64> {
    explore(graph, v, budgets).outcome.min_moves_to_forbidden
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, build_general, CartanMatrix, Family};
    use crate::rat::rat;

    fn budgets() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn a2_all_negative_ones_is_losing_in_one_move() {
        let g = build_family(Family::A(2)).unwrap();
        let e = explore(&g, &Configuration::from_ints(&[-1, -1]), budgets());
        assert_eq!(e.verdict.tag, OracleTag::Losing);
        assert_eq!(e.outcome.min_moves_to_forbidden, Some(1));
        assert!(!e.outcome.exhausted);
    }

    #[test]
    fn a2_winning_in_two_moves() {
        let g = build_family(Family::A(2)).unwrap();
        let e = explore(&g, &Configuration::from_ints(&[-1, 0]), budgets());
        assert_eq!(e.verdict.tag, OracleTag::Winning);
        assert_eq!(e.outcome.min_moves_to_win, Some(2));
        match &e.verdict.witness {
            OracleWitness::Trace(t) => {
                assert_eq!(t.firing_order(), vec![0, 1]);
                assert_eq!(t.end, Configuration::from_ints(&[0, 1]));
            }
            other => panic!("expected winning trace, got {other:?}"),
        }
    }

    #[test]
    fn a2_tilde_looping_with_three_cycle() {
        let g = build_family(Family::ATilde(2)).unwrap();
        let e = explore(&g, &Configuration::from_ints(&[1, -1, 0]), budgets());
        assert_eq!(e.verdict.tag, OracleTag::Looping);
        match &e.verdict.witness {
            OracleWitness::Cycle { cycle, .. } => {
                assert_eq!(cycle.len(), 3);
                assert_eq!(cycle.start, cycle.end);
            }
            other => panic!("expected cycle witness, got {other:?}"),
        }
    }

    #[test]
    fn single_vertex_forbidden_start() {
        let g = build_family(Family::A(1)).unwrap();
        let e = explore(&g, &Configuration::from_ints(&[-2]), budgets());
        assert_eq!(e.outcome.min_moves_to_forbidden, Some(0));
        assert_eq!(e.verdict.tag, OracleTag::Losing);
    }

    #[test]
    fn dominant_start_wins_immediately() {
        let g = build_family(Family::A(2)).unwrap();
        let e = explore(&g, &Configuration::from_ints(&[0, 0]), budgets());
        assert_eq!(e.verdict.tag, OracleTag::Winning);
        assert_eq!(e.outcome.min_moves_to_win, Some(0));
    }

    #[test]
    fn asymmetric_rank2_is_mixed() {
        let c = CartanMatrix::from_rows(vec![
            vec![rat(2), rat(-2)],
            vec![crate::rat::frac(-1, 2), rat(2)],
        ])
        .unwrap();
        let g = build_general(c, None).unwrap();
        let v = Configuration::new(vec![crate::rat::frac(-1, 2), crate::rat::frac(-1, 2)]);
        let e = explore(&g, &v, budgets());
        assert_eq!(e.verdict.tag, OracleTag::Mixed);
        assert!(e.outcome.can_win);
        assert_eq!(e.outcome.min_moves_to_forbidden, Some(1));
    }

    #[test]
    fn losing_extended_with_negative_delta_pairing_terminates() {
        // delta . v < 0: exploration must terminate with a Losing verdict.
        let g = build_family(Family::ATilde(2)).unwrap();
        let e = explore(&g, &Configuration::from_ints(&[-1, 0, 0]), budgets());
        assert_eq!(e.verdict.tag, OracleTag::Losing);
        assert!(!e.outcome.exhausted);
    }
}
