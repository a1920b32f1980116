//! Real roots in the simple-root basis: enumeration by depth, the simple
//! reflections, coroot configurations, and the graded partial order on
//! positive roots.

use crate::game::Configuration;
use crate::graph::{CoxeterGraph, GraphError, GraphKind, VertexId};
use crate::rat::{Rat, ONE, ZERO};
use num::{Signed, Zero};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("operation requires a simply-laced kind, graph has kind {0}")]
    NotSimplyLaced(GraphKind),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("root {0} is not positive")]
    NotPositive(Root),
    #[error("root {0} not found within depth bound {1}")]
    BoundExhausted(Root, u32),
}

/// A vector in the simple-root basis. Positive roots have nonnegative
/// coordinates; coordinates are integers on crystallographic kinds and
/// rationals in general.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub coords: Vec<Rat>,
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Root {
    pub fn new(coords: Vec<Rat>) -> Self {
        Root { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Root {
            coords: coords.iter().map(|&c| crate::rat::rat(c)).collect(),
        }
    }

    /// The simple root at vertex `i`.
    pub fn simple(n: usize, i: VertexId) -> Self {
        let mut coords = vec![ZERO.clone(); n];
        coords[i] = ONE.clone();
        Root { coords }
    }

    pub fn height(&self) -> Rat {
        self.coords.iter().fold(ZERO.clone(), |acc, c| acc + c)
    }

    pub fn support(&self) -> Vec<VertexId> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative()) && !self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Some(i) when this is exactly the simple root at i.
    pub fn as_simple(&self) -> Option<VertexId> {
        let mut found = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if *c != *ONE || found.is_some() {
                return None;
            }
            found = Some(i);
        }
        found
    }

    /// Standard dot product of root coordinates against amplitudes.
    pub fn dot(&self, v: &Configuration) -> Rat {
        self.coords
            .iter()
            .zip(v.amps.iter())
            .fold(ZERO.clone(), |acc, (c, a)| acc + c * a)
    }

    pub fn add(&self, other: &Root) -> Root {
        Root {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// Apply the simple reflection s_i: only coordinate i changes, to
/// -beta_i - sum_{k != i} c_ik beta_k.
pub fn reflect(graph: &CoxeterGraph, i: VertexId, beta: &Root) -> Root {
    let mut coords = beta.coords.clone();
    let mut acc = -&beta.coords[i];
    for k in graph.vertices() {
        if k != i && !beta.coords[k].is_zero() && !graph.entry(i, k).is_zero() {
            acc -= graph.entry(i, k) * &beta.coords[k];
        }
    }
    coords[i] = acc;
    Root { coords }
}

/// The symmetric Cartan form, exposed only for simply-laced kinds.
pub fn cartan_form(graph: &CoxeterGraph, a: &Root, b: &Root) -> Result<Rat, RootError> {
    if !graph.is_simply_laced() {
        return Err(RootError::NotSimplyLaced(graph.kind()));
    }
    let mut acc = ZERO.clone();
    for i in graph.vertices() {
        if a.coords[i].is_zero() {
            continue;
        }
        for j in graph.vertices() {
            if !b.coords[j].is_zero() && !graph.entry(i, j).is_zero() {
                acc += &a.coords[i] * graph.entry(i, j) * &b.coords[j];
            }
        }
    }
    Ok(acc)
}

/// The coroot configuration of a root: amplitudes (a^vee)_i = <a, alpha_i>.
pub fn coroot_config(graph: &CoxeterGraph, a: &Root) -> Result<Configuration, RootError> {
    if !graph.is_simply_laced() {
        return Err(RootError::NotSimplyLaced(graph.kind()));
    }
    let amps = graph
        .vertices()
        .map(|i| {
            let mut acc = ZERO.clone();
            for k in graph.vertices() {
                if !a.coords[k].is_zero() && !graph.entry(i, k).is_zero() {
                    acc += graph.entry(i, k) * &a.coords[k];
                }
            }
            acc
        })
        .collect();
    Ok(Configuration::new(amps))
}

/// Delta as a root-lattice vector, for affine matrix classes.
pub fn delta_root(graph: &CoxeterGraph) -> Option<Root> {
    graph.delta().map(|d| Root::new(d.to_vec()))
}

/// Positive roots enumerated breadth-first from the simple roots, layered
/// by depth. Layer d holds exactly the roots of depth d; within a layer
/// roots are in lexicographic coordinate order.
pub struct RootSet {
    roots: Vec<Root>,
    depths: Vec<u32>,
    index: HashMap<Vec<Rat>, usize>,
    complete: bool,
    max_depth: u32,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// True when the reflection closure stabilized below the depth bound,
    /// i.e. this is the entire set of positive roots.
    pub fn complete(&self) -> bool {
        self.complete
    }

    /// Largest depth layer enumerated.
    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Iterate (root, depth) in (depth, lex) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Root, u32)> {
        self.roots.iter().zip(self.depths.iter().copied())
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(&r.coords)
    }

    pub fn depth_of(&self, r: &Root) -> Option<u32> {
        self.index.get(&r.coords).map(|&k| self.depths[k])
    }
}

/// Breadth-first closure of the simple roots under reflections, keeping
/// positive roots, up to `depth_bound` reflection layers. Depths are then
/// computed exactly inside the closure by an upward search from its minimal
/// elements.
///
/// Without odd bond symmetry the closure can contain positive roots that
/// are proper scalar multiples of simple roots; those are the minimal
/// elements of depth 1 alongside the simples, and depths above them are
/// graded accordingly.
pub fn positive_roots(graph: &CoxeterGraph, depth_bound: u32) -> RootSet {
    let n = graph.n_vertices();
    // Stage 1: reflection closure.
    let mut seen: BTreeSet<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut frontier: Vec<Root> = seen.iter().cloned().collect();
    let mut complete = false;
    for _ in 1..depth_bound {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                let beta2 = reflect(graph, i, beta);
                if beta2 != *beta && beta2.is_positive() && seen.insert(beta2.clone()) {
                    next.push(beta2);
                }
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        frontier = next;
    }
    if !complete {
        complete = frontier.iter().all(|beta| {
            (0..n).all(|i| {
                let beta2 = reflect(graph, i, beta);
                beta2 == *beta || !beta2.is_positive() || seen.contains(&beta2)
            })
        });
    }
    // Stage 2: grade by depth. The minimal elements are exactly the roots
    // supported on a single vertex (s_i negates them); every other root
    // sits one up-reflection above a root of depth one less.
    let mut dp: HashMap<Vec<Rat>, u32> = HashMap::new();
    let mut layer: Vec<Root> = seen
        .iter()
        .filter(|r| r.support().len() == 1)
        .cloned()
        .collect();
    for r in &layer {
        dp.insert(r.coords.clone(), 1);
    }
    let mut d = 1;
    while !layer.is_empty() && d < depth_bound {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let beta2 = reflect(graph, i, beta);
                if beta2.coords[i] > beta.coords[i]
                    && seen.contains(&beta2)
                    && !dp.contains_key(&beta2.coords)
                {
                    dp.insert(beta2.coords.clone(), d + 1);
                    next.push(beta2);
                }
            }
        }
        layer = next;
        d += 1;
    }
    // Roots discovered but not graded within the bound are dropped; that
    // can only happen when the closure was truncated.
    let mut graded: Vec<(u32, Root)> = seen
        .into_iter()
        .filter_map(|r| dp.get(&r.coords).map(|&depth| (depth, r)))
        .collect();
    graded.sort();
    let mut roots = Vec::with_capacity(graded.len());
    let mut depths = Vec::with_capacity(graded.len());
    let mut index = HashMap::new();
    let mut max_depth = 1;
    for (depth, r) in graded {
        index.insert(r.coords.clone(), roots.len());
        roots.push(r);
        depths.push(depth);
        max_depth = max_depth.max(depth);
    }
    RootSet {
        roots,
        depths,
        index,
        complete,
        max_depth,
    }
}

/// Depth of a positive root, looked up in an enumeration to `bound`.
pub fn depth(graph: &CoxeterGraph, b: &Root, bound: u32) -> Result<u32, RootError> {
    if !b.is_positive() {
        return Err(RootError::NotPositive(b.clone()));
    }
    let rs = positive_roots(graph, bound);
    rs.depth_of(b)
        .ok_or_else(|| RootError::BoundExhausted(b.clone(), bound))
}

/// Independent route to the depth: breadth-first descent from `b`, counting
/// reflections until a negative root appears.
pub fn depth_by_descent(graph: &CoxeterGraph, b: &Root, bound: u32) -> Option<u32> {
    if !b.is_positive() {
        return None;
    }
    let n = graph.n_vertices();
    let mut seen = HashSet::new();
    seen.insert(b.coords.clone());
    let mut frontier = vec![b.clone()];
    for steps in 1..=bound {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                let beta2 = reflect(graph, i, beta);
                if beta2.coords[i].is_negative() {
                    // Reflections change one coordinate, so beta2 is negative
                    // only if it has no other support.
                    if beta2.coords.iter().all(|c| !c.is_positive()) {
                        return Some(steps);
                    }
                    continue;
                }
                if beta2.coords[i] < beta.coords[i] && seen.insert(beta2.coords.clone()) {
                    next.push(beta2);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    None
}

/// Strict graded order on positive roots: upward search from `a`, bounded
/// by the depth difference.
pub fn root_order_less(
    graph: &CoxeterGraph,
    a: &Root,
    b: &Root,
    bound: u32,
) -> Result<bool, RootError> {
    for r in [a, b] {
        if !r.is_positive() {
            return Err(RootError::NotPositive(r.clone()));
        }
    }
    if a == b {
        return Ok(false);
    }
    let rs = positive_roots(graph, bound);
    let da = rs
        .depth_of(a)
        .ok_or_else(|| RootError::BoundExhausted(a.clone(), bound))?;
    let db = rs
        .depth_of(b)
        .ok_or_else(|| RootError::BoundExhausted(b.clone(), bound))?;
    if db <= da {
        return Ok(false);
    }
    let n = graph.n_vertices();
    let mut frontier = HashSet::new();
    frontier.insert(a.coords.clone());
    for _ in 0..(db - da) {
        let mut next = HashSet::new();
        for coords in &frontier {
            let beta = Root::new(coords.clone());
            for i in 0..n {
                let beta2 = reflect(graph, i, &beta);
                if beta2.coords[i] > beta.coords[i] {
                    if beta2 == *b {
                        return Ok(true);
                    }
                    next.insert(beta2.coords);
                }
            }
        }
        frontier = next;
    }
    Ok(false)
}

/// Lowest vertex i with alpha_i <= b in the root order, if any. Scalar
/// multiples of simple roots do not count; only the exact simple root does.
pub fn dominates_simple(graph: &CoxeterGraph, b: &Root) -> Result<Option<VertexId>, RootError> {
    if !b.is_positive() {
        return Err(RootError::NotPositive(b.clone()));
    }
    let n = graph.n_vertices();
    let mut best = b.as_simple();
    let mut seen = HashSet::new();
    seen.insert(b.coords.clone());
    let mut queue = VecDeque::new();
    queue.push_back(b.clone());
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let beta2 = reflect(graph, i, &beta);
            if beta2.coords[i] < beta.coords[i]
                && beta2.is_positive()
                && seen.insert(beta2.coords.clone())
            {
                if let Some(j) = beta2.as_simple() {
                    best = Some(best.map_or(j, |k| k.min(j)));
                }
                queue.push_back(beta2);
            }
        }
    }
    Ok(best)
}

/// The finite inequality test set for an extended Dynkin graph: the
/// positive roots of the Dynkin subgraph left by deleting the least
/// extending vertex (embedded with coefficient 0 there), together with
/// their reflections delta - alpha.
pub fn affine_test_roots(graph: &CoxeterGraph) -> Result<Vec<Root>, RootError> {
    let ext = graph.extending_vertices()?;
    let i0 = ext[0];
    let keep: Vec<VertexId> = graph.vertices().filter(|&v| v != i0).collect();
    let sub = graph.induced_subgraph(&keep)?;
    let sub_roots = positive_roots(&sub, 64);
    debug_assert!(
        sub_roots.complete(),
        "Dynkin subgraph enumeration is finite"
    );
    let delta = delta_root(graph).expect("extended kind is affine");
    let n = graph.n_vertices();
    let mut out = Vec::with_capacity(2 * sub_roots.len());
    for (r, _) in sub_roots.iter() {
        let mut coords = vec![ZERO.clone(); n];
        for (k, &orig) in keep.iter().enumerate() {
            coords[orig] = r.coords[k].clone();
        }
        out.push(Root::new(coords));
    }
    for k in 0..sub_roots.len() {
        let embedded = out[k].clone();
        out.push(delta.sub(&embedded));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, Family};
    use crate::rat::{frac, rat};

    #[test]
    fn a2_positive_roots() {
        let g = build_family(Family::A(2)).unwrap();
        let rs = positive_roots(&g, 64);
        assert!(rs.complete());
        let got: BTreeSet<_> = rs.roots().iter().cloned().collect();
        let want: BTreeSet<_> = [
            Root::from_ints(&[1, 0]),
            Root::from_ints(&[0, 1]),
            Root::from_ints(&[1, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn d4_has_twelve_positive_roots() {
        let g = build_family(Family::D(4)).unwrap();
        let rs = positive_roots(&g, 64);
        assert!(rs.complete());
        assert_eq!(rs.len(), 12);
    }

    #[test]
    fn reflection_examples() {
        let g = build_family(Family::A(2)).unwrap();
        // s_0(alpha_1) = alpha_0 + alpha_1
        assert_eq!(
            reflect(&g, 0, &Root::from_ints(&[0, 1])),
            Root::from_ints(&[1, 1])
        );
        // s_i(alpha_i) = -alpha_i
        assert_eq!(
            reflect(&g, 0, &Root::from_ints(&[1, 0])),
            Root::from_ints(&[-1, 0])
        );
    }

    #[test]
    fn delta_is_fixed_by_all_reflections() {
        for family in [Family::ATilde(2), Family::DTilde(4), Family::ETilde(6)] {
            let g = build_family(family).unwrap();
            let d = delta_root(&g).unwrap();
            for i in g.vertices() {
                assert_eq!(reflect(&g, i, &d), d, "{family}, vertex {i}");
            }
        }
    }

    #[test]
    fn cartan_form_examples() {
        let g = build_family(Family::A(2)).unwrap();
        let r = Root::from_ints(&[1, 1]);
        assert_eq!(cartan_form(&g, &r, &r).unwrap(), rat(2));
        let a2t = build_family(Family::ATilde(2)).unwrap();
        let d = delta_root(&a2t).unwrap();
        let a1 = Root::simple(3, 1);
        assert_eq!(cartan_form(&a2t, &d, &a1).unwrap(), rat(0));
    }

    #[test]
    fn cartan_form_refused_off_simply_laced() {
        let c = crate::graph::CartanMatrix::from_ints(&[&[2, -2], &[-2, 2]]).unwrap();
        let g = crate::graph::build_general(c, None).unwrap();
        let r = Root::from_ints(&[1, 0]);
        assert!(cartan_form(&g, &r, &r).is_err());
    }

    #[test]
    fn depth_examples_and_descent_agreement() {
        let g = build_family(Family::A(2)).unwrap();
        assert_eq!(depth(&g, &Root::from_ints(&[1, 0]), 64).unwrap(), 1);
        assert_eq!(depth(&g, &Root::from_ints(&[1, 1]), 64).unwrap(), 2);
        for family in [Family::A(3), Family::D(4)] {
            let g = build_family(family).unwrap();
            let rs = positive_roots(&g, 64);
            for (r, d) in rs.iter() {
                assert_eq!(depth_by_descent(&g, r, 64), Some(d), "{family} {r}");
            }
        }
    }

    #[test]
    fn root_order_examples() {
        let g = build_family(Family::A(2)).unwrap();
        let a0 = Root::from_ints(&[1, 0]);
        let a1 = Root::from_ints(&[0, 1]);
        let high = Root::from_ints(&[1, 1]);
        assert!(root_order_less(&g, &a0, &high, 64).unwrap());
        assert!(!root_order_less(&g, &a0, &a1, 64).unwrap());
        assert!(!root_order_less(&g, &a0, &a0, 64).unwrap());
    }

    #[test]
    fn dominates_simple_ties_break_low() {
        let g = build_family(Family::A(2)).unwrap();
        let high = Root::from_ints(&[1, 1]);
        assert_eq!(dominates_simple(&g, &high).unwrap(), Some(0));
        assert_eq!(
            dominates_simple(&g, &Root::from_ints(&[0, 1])).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn asymmetric_orbit_contains_scaled_simple_not_dominating() {
        // C = [[2,-2],[-1/2,2]]: the orbit of alpha_0 passes through
        // (0, 1/2), a proper multiple of alpha_1, which must not count as
        // alpha_1 <= beta.
        let c = crate::graph::CartanMatrix::from_rows(vec![
            vec![rat(2), rat(-2)],
            vec![frac(-1, 2), rat(2)],
        ])
        .unwrap();
        let g = crate::graph::build_general(c, None).unwrap();
        let rs = positive_roots(&g, 16);
        assert!(rs.complete());
        let half_alpha1 = Root::new(vec![rat(0), frac(1, 2)]);
        assert!(rs.contains(&half_alpha1));
        assert_eq!(dominates_simple(&g, &half_alpha1).unwrap(), None);
    }

    #[test]
    fn truncated_a2_tilde_enumeration_contains_test_set() {
        let g = build_family(Family::ATilde(2)).unwrap();
        let rs = positive_roots(&g, 4);
        assert!(!rs.complete());
        for r in affine_test_roots(&g).unwrap() {
            assert!(rs.contains(&r), "{r} missing from the depth-4 set");
        }
    }

    #[test]
    fn affine_test_roots_counts() {
        let a2t = build_family(Family::ATilde(2)).unwrap();
        let roots = affine_test_roots(&a2t).unwrap();
        assert_eq!(roots.len(), 6);

        let d4t = build_family(Family::DTilde(4)).unwrap();
        let roots = affine_test_roots(&d4t).unwrap();
        assert_eq!(roots.len(), 24);
        let distinct: BTreeSet<_> = roots.iter().cloned().collect();
        assert_eq!(distinct.len(), 24, "both halves are disjoint");
        for r in &roots {
            assert_eq!(cartan_form(&d4t, r, r).unwrap(), rat(2));
        }
    }

    #[test]
    fn coroot_examples() {
        let g = build_family(Family::A(2)).unwrap();
        let v = coroot_config(&g, &Root::from_ints(&[1, 1])).unwrap();
        assert_eq!(v, Configuration::from_ints(&[1, 1]));

        // alpha_i^vee = 2 omega_i - sum of adjacent omegas
        let d4 = build_family(Family::D(4)).unwrap();
        let node = coroot_config(&d4, &Root::simple(4, 3)).unwrap();
        assert_eq!(node, Configuration::from_ints(&[-1, -1, -1, 2]));

        let a2t = build_family(Family::ATilde(2)).unwrap();
        let cor = coroot_config(&a2t, &Root::simple(3, 0)).unwrap();
        let d = delta_root(&a2t).unwrap();
        assert_eq!(d.dot(&cor), rat(0));
    }

    #[test]
    fn support_is_connected_on_d4() {
        let g = build_family(Family::D(4)).unwrap();
        let rs = positive_roots(&g, 64);
        for (r, _) in rs.iter() {
            let supp = r.support();
            let sub = g.induced_subgraph(&supp);
            assert!(sub.is_ok(), "support of {r} must induce a connected graph");
        }
    }

    #[test]
    fn extended_roots_lie_in_delta_shifted_classes() {
        let g = build_family(Family::ATilde(2)).unwrap();
        let rs = positive_roots(&g, 8);
        assert!(!rs.complete());
        let delta = delta_root(&g).unwrap();
        let finite: Vec<Root> = affine_test_roots(&g).unwrap().into_iter().take(3).collect(); // Delta_+ of the A_2 subgraph
        for (r, _) in rs.iter() {
            // r = gamma + k*delta with gamma in Delta_+ and k >= 0, or
            // r = -gamma + k*delta with k >= 1.
            let mut matched = false;
            let mut shifted = r.clone();
            for k in 0u32..8 {
                if finite.contains(&shifted) || (k >= 1 && finite.contains(&shifted.neg())) {
                    matched = true;
                    break;
                }
                shifted = shifted.sub(&delta);
            }
            assert!(matched, "{r} not of the form +-gamma + k delta");
        }
    }
}
