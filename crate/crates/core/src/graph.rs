//! Coxeter graphs with generalized Cartan data.
//!
//! A graph is a square rational Cartan matrix plus derived structure: the
//! bond exponents n_ij (recovered from the products c_ij*c_ji), a kind tag,
//! and the finite/affine/indefinite classification of the matrix. Only
//! rational Cartan data is accepted, which restricts finite bonds to
//! n_ij in {2,3,4,6}; odd n_ij >= 5 would force irrational entries and is
//! rejected outright.

use crate::rat::{rat, Rat, ONE, TWO, ZERO};
use num::bigint::BigInt;
use num::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("Cartan matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("empty graph")]
    Empty,
    #[error("diagonal entry at vertex {0} must be 2")]
    DiagonalNotTwo(VertexId),
    #[error("c[{i}][{j}] is zero but c[{j}][{i}] is not")]
    ZeroAsymmetry { i: VertexId, j: VertexId },
    #[error("adjacent pair ({i},{j}) must have both Cartan entries negative")]
    NonNegativeAdjacentEntry { i: VertexId, j: VertexId },
    #[error("pair ({i},{j}): product c_ij*c_ji = {product} is not 0, 1, 2, 3 or >= 4")]
    InvalidBondProduct {
        i: VertexId,
        j: VertexId,
        product: String,
    },
    #[error("pair ({i},{j}): declared exponent {given} does not match the Cartan product (expected {derived})")]
    ExponentMismatch {
        i: VertexId,
        j: VertexId,
        given: CoxeterExponent,
        derived: CoxeterExponent,
    },
    #[error("pair ({i},{j}): exponent {given} unsupported (rational Cartan data allows only 2, 3, 4, 6, inf)")]
    UnsupportedExponent {
        i: VertexId,
        j: VertexId,
        given: u32,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid rank {rank} for family {family}")]
    InvalidFamilyRank { family: String, rank: usize },
    #[error("operation requires kind {expected}, graph has kind {found}")]
    WrongKind {
        expected: &'static str,
        found: GraphKind,
    },
    #[error("vertex selection is empty")]
    EmptySelection,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
}

/// Bond order n_ij of the Coxeter relation (s_i s_j)^{n_ij}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoxeterExponent {
    Finite(u32),
    Infinite,
}

impl fmt::Display for CoxeterExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterExponent::Finite(n) => write!(f, "{n}"),
            CoxeterExponent::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    SimplyLacedDynkin,
    SimplyLacedExtendedDynkin,
    GeneralCrystallographic,
    GeneralRational,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphKind::SimplyLacedDynkin => "simply-laced Dynkin",
            GraphKind::SimplyLacedExtendedDynkin => "simply-laced extended Dynkin",
            GraphKind::GeneralCrystallographic => "general crystallographic",
            GraphKind::GeneralRational => "general rational",
        };
        f.write_str(s)
    }
}

/// Sign behaviour of the Cartan matrix, in the Vinberg trichotomy for
/// connected matrices with nonpositive off-diagonal entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixClass {
    /// All leading principal minors positive (nonsingular M-matrix).
    Finite,
    /// Singular with a one-dimensional kernel spanned by a strictly
    /// positive vector; `delta` is that vector, scaled to the primitive
    /// positive integer point on its ray.
    Affine {
        delta: Vec<Rat>,
    },
    Indefinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A(usize),
    D(usize),
    E(usize),
    ATilde(usize),
    DTilde(usize),
    ETilde(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(n) => write!(f, "A{n}"),
            Family::D(n) => write!(f, "D{n}"),
            Family::E(n) => write!(f, "E{n}"),
            Family::ATilde(n) => write!(f, "A~{n}"),
            Family::DTilde(n) => write!(f, "D~{n}"),
            Family::ETilde(n) => write!(f, "E~{n}"),
        }
    }
}

impl Family {
    /// Parse names like `A2`, `D~4`, `E~8`.
    pub fn parse(s: &str) -> Option<Family> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next()?.to_ascii_uppercase();
        let rest = chars.as_str();
        let (tilde, rank_str) = match rest.strip_prefix('~') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let rank: usize = rank_str.parse().ok()?;
        Some(match (letter, tilde) {
            ('A', false) => Family::A(rank),
            ('D', false) => Family::D(rank),
            ('E', false) => Family::E(rank),
            ('A', true) => Family::ATilde(rank),
            ('D', true) => Family::DTilde(rank),
            ('E', true) => Family::ETilde(rank),
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<Rat>>,
}

impl CartanMatrix {
    /// Wrap rows as a Cartan matrix. Only squareness is checked here;
    /// the Coxeter constraints are enforced by [`build_general`].
    pub fn from_rows(entries: Vec<Vec<Rat>>) -> Result<Self, GraphError> {
        let n = entries.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (row, r) in entries.iter().enumerate() {
            if r.len() != n {
                return Err(GraphError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
        }
        Ok(CartanMatrix { entries })
    }

    /// Convenience constructor from integer rows.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, GraphError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: VertexId, j: VertexId) -> &Rat {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn is_integral(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|e| e.denom() == &BigInt::from(1))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// All off-diagonal entries in {0, -1}.
    pub fn is_simply_laced(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            (0..n).all(|j| i == j || self.entries[i][j].is_zero() || self.entries[i][j] == rat(-1))
        })
    }
}

/// The rational products 4cos^2(pi/n) for the admitted bond orders.
fn exponent_for_product(product: &Rat) -> Option<CoxeterExponent> {
    if product.is_zero() {
        Some(CoxeterExponent::Finite(2))
    } else if *product == *ONE {
        Some(CoxeterExponent::Finite(3))
    } else if *product == *TWO {
        Some(CoxeterExponent::Finite(4))
    } else if *product == rat(3) {
        Some(CoxeterExponent::Finite(6))
    } else if *product >= rat(4) {
        Some(CoxeterExponent::Infinite)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct CoxeterGraph {
    cartan: CartanMatrix,
    kind: GraphKind,
    class: MatrixClass,
    family: Option<Family>,
}

impl CoxeterGraph {
    pub fn n_vertices(&self) -> usize {
        self.cartan.n()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n_vertices()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn entry(&self, i: VertexId, j: VertexId) -> &Rat {
        self.cartan.entry(i, j)
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn class(&self) -> &MatrixClass {
        &self.class
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn adjacent(&self, i: VertexId, j: VertexId) -> bool {
        i != j && !self.cartan.entry(i, j).is_zero()
    }

    pub fn neighbors(&self, i: VertexId) -> Vec<VertexId> {
        self.vertices().filter(|&j| self.adjacent(i, j)).collect()
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(
            self.kind,
            GraphKind::SimplyLacedDynkin | GraphKind::SimplyLacedExtendedDynkin
        )
    }

    /// Bond order, derived from the Cartan product.
    pub fn exponent(&self, i: VertexId, j: VertexId) -> CoxeterExponent {
        if i == j {
            return CoxeterExponent::Finite(1);
        }
        let product = self.entry(i, j) * self.entry(j, i);
        exponent_for_product(&product).expect("validated graph has admissible bond products")
    }

    /// Does c_ij = c_ji hold for every adjacent pair with odd finite n_ij?
    /// With rational Cartan data, the only odd finite bond order is 3.
    pub fn odd_symmetry(&self) -> bool {
        let n = self.n_vertices();
        (0..n).all(|i| {
            (i + 1..n).all(|j| match self.exponent(i, j) {
                CoxeterExponent::Finite(m) if m % 2 == 1 && m > 1 => {
                    self.entry(i, j) == self.entry(j, i)
                }
                _ => true,
            })
        })
    }

    /// The positive kernel generator of the Cartan matrix, for affine kinds.
    pub fn delta(&self) -> Option<&[Rat]> {
        match &self.class {
            MatrixClass::Affine { delta } => Some(delta),
            _ => None,
        }
    }

    /// Vertices with delta-coordinate 1 on an extended Dynkin graph.
    pub fn extending_vertices(&self) -> Result<Vec<VertexId>, GraphError> {
        if self.kind != GraphKind::SimplyLacedExtendedDynkin {
            return Err(GraphError::WrongKind {
                expected: "simply-laced extended Dynkin",
                found: self.kind,
            });
        }
        let delta = self.delta().expect("extended kind is affine");
        Ok(self.vertices().filter(|&i| delta[i] == *ONE).collect())
    }

    /// Validated induced subgraph on `keep` (order preserved). The result
    /// is re-classified from scratch, so deleting an extending vertex of an
    /// extended Dynkin graph yields kind `SimplyLacedDynkin`.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<CoxeterGraph, GraphError> {
        if keep.is_empty() {
            return Err(GraphError::EmptySelection);
        }
        for &v in keep {
            if v >= self.n_vertices() {
                return Err(GraphError::VertexOutOfRange(v));
            }
        }
        let rows = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.entry(i, j).clone()).collect())
            .collect();
        build_general(CartanMatrix::from_rows(rows)?, None)
    }

    /// All nonempty proper vertex subsets that induce a connected subgraph,
    /// each in increasing vertex order.
    pub fn connected_proper_subsets(&self) -> Vec<Vec<VertexId>> {
        let n = self.n_vertices();
        let mut out = Vec::new();
        for mask in 1u32..((1u32 << n) - 1) {
            let subset: Vec<VertexId> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if self.subset_connected(&subset) {
                out.push(subset);
            }
        }
        out
    }

    fn subset_connected(&self, subset: &[VertexId]) -> bool {
        let mut seen = vec![false; subset.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(p) = stack.pop() {
            for (q, &v) in subset.iter().enumerate() {
                if !seen[q] && self.adjacent(subset[p], v) {
                    seen[q] = true;
                    count += 1;
                    stack.push(q);
                }
            }
        }
        count == subset.len()
    }

    /// Human-readable labels for the canonical vertex order.
    pub fn vertex_labels(&self) -> Vec<String> {
        let n = self.n_vertices();
        match self.family {
            Some(Family::A(_)) => (0..n).map(|i| format!("path {i}")).collect(),
            Some(Family::D(rank)) => (0..n)
                .map(|i| {
                    if i + 1 == rank {
                        "node".to_string()
                    } else if i + 3 >= rank {
                        "fork leaf".to_string()
                    } else {
                        format!("arm {i}")
                    }
                })
                .collect(),
            Some(Family::E(_)) => (0..n).map(|i| format!("bourbaki {}", i + 1)).collect(),
            Some(Family::ATilde(_)) => (0..n).map(|i| format!("cycle {i}")).collect(),
            Some(Family::DTilde(_)) => (0..n)
                .map(|i| {
                    if i < 4 {
                        format!("exterior {i}")
                    } else {
                        "interior".to_string()
                    }
                })
                .collect(),
            Some(Family::ETilde(rank)) => (0..n)
                .map(|i| {
                    if i == rank {
                        "extending".to_string()
                    } else {
                        format!("bourbaki {}", i + 1)
                    }
                })
                .collect(),
            None => (0..n).map(|i| format!("v{i}")).collect(),
        }
    }
}

/// All leading principal minors positive, by Gaussian elimination without
/// pivoting (the k-th leading minor is the product of the first k pivots).
/// For matrices with nonpositive off-diagonal entries this is the
/// nonsingular M-matrix test.
fn leading_minors_positive(c: &CartanMatrix) -> bool {
    let n = c.n();
    let mut m: Vec<Vec<Rat>> = c.rows().to_vec();
    for k in 0..n {
        if m[k][k] <= *ZERO {
            return false;
        }
        for i in k + 1..n {
            let factor = &m[i][k] / &m[k][k];
            if factor.is_zero() {
                continue;
            }
            for j in k..n {
                let sub = &factor * &m[k][j];
                m[i][j] = &m[i][j] - &sub;
            }
        }
    }
    true
}

/// Basis of the right kernel {x : Cx = 0}, via row reduction.
fn kernel_basis(c: &CartanMatrix) -> Vec<Vec<Rat>> {
    let n = c.n();
    let mut m: Vec<Vec<Rat>> = c.rows().to_vec();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for j in 0..n {
            m[row][j] = &m[row][j] / &inv;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in 0..n {
                    let sub = &factor * &m[row][j];
                    m[r][j] = &m[r][j] - &sub;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![ZERO.clone(); n];
        v[free] = ONE.clone();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Scale a rational vector to the primitive integer point on its ray,
/// oriented positively. Returns None if entries have mixed sign or zeros.
fn primitive_positive(v: &[Rat]) -> Option<Vec<Rat>> {
    if v.iter().any(|x| x.is_zero()) {
        return None;
    }
    let flip = v[0].is_negative();
    let oriented: Vec<Rat> = v
        .iter()
        .map(|x| if flip { -x.clone() } else { x.clone() })
        .collect();
    if oriented.iter().any(|x| x.is_negative()) {
        return None;
    }
    let mut lcm = BigInt::from(1);
    for x in &oriented {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = oriented
        .iter()
        .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut gcd = BigInt::from(0);
    for x in &ints {
        gcd = num::integer::gcd(gcd, x.clone());
    }
    Some(
        ints.into_iter()
            .map(|x| Rat::from_integer(x / &gcd))
            .collect(),
    )
}

fn classify_matrix(c: &CartanMatrix) -> MatrixClass {
    if leading_minors_positive(c) {
        return MatrixClass::Finite;
    }
    let kernel = kernel_basis(c);
    if kernel.len() == 1 {
        if let Some(delta) = primitive_positive(&kernel[0]) {
            return MatrixClass::Affine { delta };
        }
    }
    MatrixClass::Indefinite
}

fn check_connected(c: &CartanMatrix) -> Result<(), GraphError> {
    let n = c.n();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && i != j && !c.entry(i, j).is_zero() {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    if count == n {
        Ok(())
    } else {
        Err(GraphError::Disconnected)
    }
}

/// Validate a Cartan matrix against the Coxeter-group constraints and
/// classify it. `exponents`, when given, must agree with the bond orders
/// derived from the Cartan products; pairs may be listed in either order.
pub fn build_general(
    cartan: CartanMatrix,
    exponents: Option<&BTreeMap<(VertexId, VertexId), CoxeterExponent>>,
) -> Result<CoxeterGraph, GraphError> {
    let n = cartan.n();
    for i in 0..n {
        if *cartan.entry(i, i) != *TWO {
            return Err(GraphError::DiagonalNotTwo(i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let a = cartan.entry(i, j);
            let b = cartan.entry(j, i);
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => {
                    return Err(GraphError::ZeroAsymmetry { i, j });
                }
                (false, false) => {
                    if !a.is_negative() || !b.is_negative() {
                        return Err(GraphError::NonNegativeAdjacentEntry { i, j });
                    }
                    let product = a * b;
                    if exponent_for_product(&product).is_none() {
                        return Err(GraphError::InvalidBondProduct {
                            i,
                            j,
                            product: product.to_string(),
                        });
                    }
                }
            }
        }
    }
    if let Some(map) = exponents {
        for (&(i, j), &given) in map {
            if i >= n || j >= n || i == j {
                return Err(GraphError::VertexOutOfRange(i.max(j)));
            }
            if let CoxeterExponent::Finite(m) = given {
                if !matches!(m, 2 | 3 | 4 | 6) {
                    return Err(GraphError::UnsupportedExponent { i, j, given: m });
                }
            }
            let product = cartan.entry(i, j) * cartan.entry(j, i);
            let derived = exponent_for_product(&product).expect("checked above");
            if given != derived {
                return Err(GraphError::ExponentMismatch {
                    i,
                    j,
                    given,
                    derived,
                });
            }
        }
    }
    check_connected(&cartan)?;
    let class = classify_matrix(&cartan);
    // Connected simply-laced graphs with positive (semi)definite Cartan
    // form are exactly the (extended) ADE diagrams.
    let kind = if cartan.is_simply_laced() {
        match class {
            MatrixClass::Finite => GraphKind::SimplyLacedDynkin,
            MatrixClass::Affine { .. } => GraphKind::SimplyLacedExtendedDynkin,
            MatrixClass::Indefinite => {
                if cartan.is_integral() {
                    GraphKind::GeneralCrystallographic
                } else {
                    GraphKind::GeneralRational
                }
            }
        }
    } else if cartan.is_integral() {
        GraphKind::GeneralCrystallographic
    } else {
        GraphKind::GeneralRational
    };
    Ok(CoxeterGraph {
        cartan,
        kind,
        class,
        family: None,
    })
}

/// Adjacency list -> simply-laced Cartan matrix.
fn simply_laced_cartan(n: usize, edges: &[(usize, usize)]) -> CartanMatrix {
    let mut rows = vec![vec![ZERO.clone(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = TWO.clone();
    }
    for &(a, b) in edges {
        rows[a][b] = rat(-1);
        rows[b][a] = rat(-1);
    }
    CartanMatrix::from_rows(rows).expect("square by construction")
}

/// Construct a named (extended) Dynkin family graph.
///
/// Canonical vertex orders:
/// - `A_n`: path 0..n-1.
/// - `D_n`: long arm 0..n-4, fork leaves n-3 and n-2, node last.
/// - `E_n`: Bourbaki numbering shifted to 0-based (vertex 1 is the short leaf).
/// - `A~n`: cycle 0..n.
/// - `D~n`: four exterior vertices 0..3, then the interior path.
/// - `E~n`: the E_n order with the extending vertex last.
pub fn build_family(family: Family) -> Result<CoxeterGraph, GraphError> {
    let bad = |name: &str, rank: usize| GraphError::InvalidFamilyRank {
        family: name.to_string(),
        rank,
    };
    let (n, edges, expected_kind) = match family {
        Family::A(rank) => {
            if rank < 1 {
                return Err(bad("A", rank));
            }
            let edges: Vec<_> = (0..rank.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            (rank, edges, GraphKind::SimplyLacedDynkin)
        }
        Family::D(rank) => {
            if rank < 4 {
                return Err(bad("D", rank));
            }
            let mut edges: Vec<_> = (0..rank - 4).map(|i| (i, i + 1)).collect();
            edges.push((rank - 4, rank - 1));
            edges.push((rank - 3, rank - 1));
            edges.push((rank - 2, rank - 1));
            (rank, edges, GraphKind::SimplyLacedDynkin)
        }
        Family::E(rank) => {
            if !(6..=8).contains(&rank) {
                return Err(bad("E", rank));
            }
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            for i in 3..rank - 1 {
                edges.push((i, i + 1));
            }
            (rank, edges, GraphKind::SimplyLacedDynkin)
        }
        Family::ATilde(rank) => {
            if rank < 2 {
                // A~1 is a double bond, not a simply-laced graph; build it
                // through build_general instead.
                return Err(bad("A~", rank));
            }
            let mut edges: Vec<_> = (0..rank).map(|i| (i, i + 1)).collect();
            edges.push((rank, 0));
            (rank + 1, edges, GraphKind::SimplyLacedExtendedDynkin)
        }
        Family::DTilde(rank) => {
            if rank < 4 {
                return Err(bad("D~", rank));
            }
            let n = rank + 1;
            let mut edges = vec![(0, 4), (1, 4), (2, n - 1), (3, n - 1)];
            for i in 4..n - 1 {
                edges.push((i, i + 1));
            }
            edges.sort_unstable();
            edges.dedup();
            (n, edges, GraphKind::SimplyLacedExtendedDynkin)
        }
        Family::ETilde(rank) => {
            if !(6..=8).contains(&rank) {
                return Err(bad("E~", rank));
            }
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            for i in 3..rank - 1 {
                edges.push((i, i + 1));
            }
            // Affine node: attached to bourbaki 2 for E6, bourbaki 1 for E7,
            // bourbaki 8 for E8.
            let attach = match rank {
                6 => 1,
                7 => 0,
                _ => 7,
            };
            edges.push((attach, rank));
            (rank + 1, edges, GraphKind::SimplyLacedExtendedDynkin)
        }
    };
    let mut graph = build_general(simply_laced_cartan(n, &edges), None)?;
    debug_assert_eq!(graph.kind, expected_kind, "family {family} misclassified");
    graph.family = Some(family);
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn a2_is_a_path() {
        let g = build_family(Family::A(2)).unwrap();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(*g.entry(0, 1), rat(-1));
        assert_eq!(*g.entry(1, 0), rat(-1));
        assert_eq!(g.kind(), GraphKind::SimplyLacedDynkin);
    }

    #[test]
    fn d4_is_a_star() {
        let g = build_family(Family::D(4)).unwrap();
        assert_eq!(g.n_vertices(), 4);
        let degrees: Vec<usize> = g.vertices().map(|v| g.neighbors(v).len()).collect();
        assert_eq!(degrees, vec![1, 1, 1, 3]);
    }

    #[test]
    fn a_tilde_2_is_a_triangle() {
        let g = build_family(Family::ATilde(2)).unwrap();
        assert_eq!(g.n_vertices(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.adjacent(i, j), i != j);
            }
        }
        assert_eq!(g.kind(), GraphKind::SimplyLacedExtendedDynkin);
    }

    #[test]
    fn invalid_family_ranks_rejected() {
        assert!(build_family(Family::D(3)).is_err());
        assert!(build_family(Family::E(5)).is_err());
        assert!(build_family(Family::ATilde(1)).is_err());
        assert!(build_family(Family::A(0)).is_err());
    }

    #[test]
    fn asymmetric_rank2_accepted_with_bond_3() {
        // c_01 * c_10 = 1 = 4cos^2(pi/3)
        let c = CartanMatrix::from_rows(vec![vec![rat(2), rat(-2)], vec![frac(-1, 2), rat(2)]])
            .unwrap();
        let mut exps = BTreeMap::new();
        exps.insert((0, 1), CoxeterExponent::Finite(3));
        let g = build_general(c, Some(&exps)).unwrap();
        assert_eq!(g.kind(), GraphKind::GeneralRational);
        assert_eq!(g.exponent(0, 1), CoxeterExponent::Finite(3));
        assert!(!g.odd_symmetry());
    }

    #[test]
    fn exponent_mismatch_rejected() {
        // product 1 forces n = 3, so declaring n = 4 is inconsistent.
        let c = CartanMatrix::from_ints(&[&[2, -1], &[-1, 2]]).unwrap();
        let mut exps = BTreeMap::new();
        exps.insert((0, 1), CoxeterExponent::Finite(4));
        let err = build_general(c, Some(&exps)).unwrap_err();
        assert!(matches!(
            err,
            GraphError::ExponentMismatch { i: 0, j: 1, .. }
        ));
    }

    #[test]
    fn product_four_boundary_is_affine_with_exponent_inf() {
        let c = CartanMatrix::from_ints(&[&[2, -2], &[-2, 2]]).unwrap();
        let g = build_general(c, None).unwrap();
        assert_eq!(g.kind(), GraphKind::GeneralCrystallographic);
        assert_eq!(g.exponent(0, 1), CoxeterExponent::Infinite);
        assert_eq!(g.delta().unwrap(), &[rat(1), rat(1)]);
    }

    #[test]
    fn vacuous_odd_symmetry_for_even_bond() {
        let c = CartanMatrix::from_ints(&[&[2, -1], &[-2, 2]]).unwrap();
        let g = build_general(c, None).unwrap();
        assert_eq!(g.exponent(0, 1), CoxeterExponent::Finite(4));
        assert!(g.odd_symmetry());
    }

    #[test]
    fn disconnected_rejected() {
        let c = CartanMatrix::from_ints(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(
            build_general(c, None).unwrap_err(),
            GraphError::Disconnected
        );
    }

    #[test]
    fn extending_vertices_of_small_affine_families() {
        let a2t = build_family(Family::ATilde(2)).unwrap();
        assert_eq!(a2t.extending_vertices().unwrap(), vec![0, 1, 2]);

        let d4t = build_family(Family::DTilde(4)).unwrap();
        assert_eq!(d4t.extending_vertices().unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(d4t.delta().unwrap()[4], rat(2));

        let e8t = build_family(Family::ETilde(8)).unwrap();
        assert_eq!(e8t.extending_vertices().unwrap(), vec![8]);
    }

    #[test]
    fn deleting_extending_vertex_gives_dynkin_of_matching_type() {
        // Determinant of the Cartan matrix, by rational elimination.
        fn det(c: &CartanMatrix) -> Rat {
            let n = c.n();
            let mut m = c.rows().to_vec();
            let mut d = ONE.clone();
            for k in 0..n {
                let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                    return ZERO.clone();
                };
                if p != k {
                    m.swap(p, k);
                    d = -d;
                }
                d = d * &m[k][k];
                for i in k + 1..n {
                    let factor = &m[i][k] / &m[k][k];
                    for j in k..n {
                        let sub = &factor * &m[k][j];
                        m[i][j] = &m[i][j] - &sub;
                    }
                }
            }
            d
        }
        // (vertex count, determinant) separates the simply-laced families:
        // det A_n = n+1, det D_n = 4, det E_6/7/8 = 3/2/1.
        for (family, base) in [
            (Family::ATilde(2), Family::A(2)),
            (Family::ATilde(3), Family::A(3)),
            (Family::DTilde(4), Family::D(4)),
            (Family::DTilde(5), Family::D(5)),
            (Family::ETilde(6), Family::E(6)),
            (Family::ETilde(7), Family::E(7)),
            (Family::ETilde(8), Family::E(8)),
        ] {
            let g = build_family(family).unwrap();
            let reference = build_family(base).unwrap();
            let mut ref_degrees: Vec<usize> = reference
                .vertices()
                .map(|v| reference.neighbors(v).len())
                .collect();
            ref_degrees.sort_unstable();
            for ext in g.extending_vertices().unwrap() {
                let keep: Vec<_> = g.vertices().filter(|&v| v != ext).collect();
                let sub = g.induced_subgraph(&keep).unwrap();
                assert_eq!(
                    sub.kind(),
                    GraphKind::SimplyLacedDynkin,
                    "{family} minus vertex {ext}"
                );
                assert_eq!(sub.n_vertices(), reference.n_vertices());
                assert_eq!(
                    det(sub.cartan()),
                    det(reference.cartan()),
                    "{family} minus vertex {ext} is not of type {base}"
                );
                let mut degrees: Vec<usize> =
                    sub.vertices().map(|v| sub.neighbors(v).len()).collect();
                degrees.sort_unstable();
                assert_eq!(degrees, ref_degrees, "{family} minus vertex {ext}");
            }
        }
    }

    #[test]
    fn family_graphs_roundtrip_build_general() {
        for family in [
            Family::A(1),
            Family::A(4),
            Family::D(5),
            Family::E(6),
            Family::E(7),
            Family::E(8),
            Family::ATilde(3),
            Family::DTilde(5),
            Family::ETilde(6),
        ] {
            let g = build_family(family).unwrap();
            let rebuilt = build_general(g.cartan().clone(), None).unwrap();
            assert_eq!(rebuilt.kind(), g.kind(), "{family}");
            assert!(g.odd_symmetry(), "{family}");
        }
    }
}
