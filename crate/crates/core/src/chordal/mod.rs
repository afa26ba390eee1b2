//! Specification-pattern graphs and the chordal machinery used to schedule
//! block completion: maximum cardinality search, perfect elimination
//! orderings, chordless-cycle witnesses, maximal cliques and clique trees.
//!
//! Vertices are 0-based row indices of the partial matrix.

mod cliques;

pub use cliques::{clique_tree, maximal_cliques, CliqueEdge, CliqueTree, MergeStep};

use std::collections::VecDeque;

use crate::completion::PartialHermitianMatrix;
use crate::error::{Error, Result};

/// Undirected simple graph on `n` vertices stored as a dense adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    n: usize,
    adj: Vec<bool>,
}

impl PatternGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.set(i, j, true);
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidPattern(format!(
                "edge ({i}, {j}) out of range for {} vertices",
                self.n
            )));
        }
        if i == j {
            return Err(Error::InvalidPattern(format!("self-loop at vertex {i}")));
        }
        self.set(i, j, true);
        Ok(())
    }

    fn set(&mut self, i: usize, j: usize, on: bool) {
        self.adj[i * self.n + j] = on;
        self.adj[j * self.n + i] = on;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(a, &x)| vs[a + 1..].iter().all(|&y| self.has_edge(x, y)))
    }

    /// Graph relabelled so that new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    g.set(i, j, true);
                }
            }
        }
        g
    }
}

/// The graph with an edge `(i, j)` for every specified off-diagonal entry.
pub fn pattern_graph(p: &PartialHermitianMatrix) -> Result<PatternGraph> {
    p.validate()?;
    let n = p.dim();
    let mut g = PatternGraph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if p.is_specified(i, j) {
                g.set(i, j, true);
            }
        }
    }
    Ok(g)
}

/// A vertex ordering; `order[t]` is the vertex in position `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    order: Vec<usize>,
}

impl EliminationOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= order.len() || seen[v] {
                return Err(Error::InvalidOrder(format!(
                    "{order:?} is not a permutation of 0..{}",
                    order.len()
                )));
            }
            seen[v] = true;
        }
        Ok(Self { order })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self {
            order: self.order.iter().rev().copied().collect(),
        }
    }

    /// `positions()[v]` is the position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (t, &v) in self.order.iter().enumerate() {
            pos[v] = t;
        }
        pos
    }
}

/// Maximum cardinality search: repeatedly visit the unvisited vertex with the
/// most visited neighbours, breaking ties by smallest index. Returns the
/// visit order.
pub fn mcs_order(g: &PatternGraph) -> EliminationOrder {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("an unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    EliminationOrder { order }
}

/// Outcome of a chordality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    /// The reverse MCS order, verified to be a perfect elimination ordering.
    Chordal { peo: EliminationOrder },
    /// A chordless cycle of length at least four, listed in cycle order.
    NotChordal { witness: Vec<usize> },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal { .. })
    }

    pub fn peo(&self) -> Option<&EliminationOrder> {
        match self {
            Chordality::Chordal { peo } => Some(peo),
            Chordality::NotChordal { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Chordality::Chordal { .. } => None,
            Chordality::NotChordal { witness } => Some(witness),
        }
    }
}

pub fn is_chordal(g: &PatternGraph) -> Chordality {
    let peo = mcs_order(g).reversed();
    match peo_violation(g, &peo) {
        None => Chordality::Chordal { peo },
        Some((v, x, y)) => {
            let witness = chordless_cycle_through(g, v, x, y)
                .or_else(|| find_any_chordless_cycle(g))
                .expect("a graph without a perfect elimination ordering has a chordless cycle");
            Chordality::NotChordal { witness }
        }
    }
}

/// First vertex whose later neighbours are not pairwise adjacent, together
/// with a non-adjacent pair among them.
pub(crate) fn peo_violation(
    g: &PatternGraph,
    peo: &EliminationOrder,
) -> Option<(usize, usize, usize)> {
    let pos = peo.positions();
    for &v in peo.as_slice() {
        let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                if !g.has_edge(x, y) {
                    return Some((v, x, y));
                }
            }
        }
    }
    None
}

/// For non-adjacent neighbours `x`, `y` of `v`, a shortest `x`–`y` path that
/// avoids `v` and the rest of its neighbourhood closes a chordless cycle.
fn chordless_cycle_through(g: &PatternGraph, v: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let blocked: Vec<bool> = (0..n)
        .map(|u| u == v || (g.has_edge(v, u) && u != x && u != y))
        .collect();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([x]);
    seen[x] = true;
    while let Some(u) = queue.pop_front() {
        if u == y {
            let mut path = vec![y];
            let mut cur = y;
            while cur != x {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            let mut cycle = vec![v];
            cycle.extend(path);
            return Some(cycle);
        }
        for w in g.neighbors(u) {
            if !seen[w] && !blocked[w] {
                seen[w] = true;
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

fn find_any_chordless_cycle(g: &PatternGraph) -> Option<Vec<usize>> {
    for v in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(v).collect();
        for (a, &x) in nb.iter().enumerate() {
            for &y in &nb[a + 1..] {
                if !g.has_edge(x, y) {
                    if let Some(c) = chordless_cycle_through(g, v, x, y) {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}
