use std::cmp::Reverse;
use std::collections::VecDeque;

use super::{peo_violation, EliminationOrder, PatternGraph};
use crate::error::{Error, Result};

/// Maximal cliques of a chordal graph read off a perfect elimination
/// ordering: every maximal clique is `{v} ∪ later(v)` for some `v`.
///
/// Each clique is sorted ascending and the list is sorted lexicographically.
pub fn maximal_cliques(g: &PatternGraph, peo: &EliminationOrder) -> Result<Vec<Vec<usize>>> {
    if peo.len() != g.n() {
        return Err(Error::InvalidOrder(format!(
            "order has {} vertices, graph has {}",
            peo.len(),
            g.n()
        )));
    }
    if let Some((v, x, y)) = peo_violation(g, peo) {
        return Err(Error::InvalidOrder(format!(
            "not a perfect elimination ordering: later neighbours {x} and {y} of {v} are not adjacent"
        )));
    }
    let pos = peo.positions();
    let mut candidates: Vec<Vec<usize>> = peo
        .as_slice()
        .iter()
        .map(|&v| {
            let mut c: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    candidates.sort();
    candidates.dedup();

    let cliques: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|c| {
            !candidates
                .iter()
                .any(|d| d.len() > c.len() && is_subset(c, d))
        })
        .cloned()
        .collect();
    Ok(cliques)
}

/// Both inputs sorted ascending.
fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

/// Edge between cliques `a < b` labelled with their intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueEdge {
    pub a: usize,
    pub b: usize,
    pub separator: Vec<usize>,
}

/// One step of the completion schedule: `clique` joins the cliques merged so
/// far, meeting them in exactly `separator`. `parent` is its clique-tree
/// neighbour, or `None` when it starts a new connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeStep {
    pub parent: Option<usize>,
    pub clique: usize,
    pub separator: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTree {
    /// Maximal cliques, lexicographically sorted.
    pub cliques: Vec<Vec<usize>>,
    /// Every pair of cliques with a non-empty intersection.
    pub intersection_edges: Vec<CliqueEdge>,
    /// Maximum-weight spanning forest of the intersection graph.
    pub edges: Vec<CliqueEdge>,
    /// The clique processed first.
    pub root: usize,
    /// Breadth-first schedule covering every clique except `root`.
    pub merge_order: Vec<MergeStep>,
}

impl CliqueTree {
    /// Same tree, scheduled breadth-first from a different root.
    pub fn rerooted(&self, root: usize) -> Result<Self> {
        if root >= self.cliques.len() {
            return Err(Error::NotCliqueTree(format!("no clique with index {root}")));
        }
        let merge_order = bfs_schedule(&self.cliques, &self.edges, root);
        check_running_intersection(&self.cliques, root, &merge_order)?;
        Ok(Self {
            root,
            merge_order,
            ..self.clone()
        })
    }

    /// Clique indices in processing order.
    pub fn visit_order(&self) -> Vec<usize> {
        std::iter::once(self.root)
            .chain(self.merge_order.iter().map(|s| s.clique))
            .collect()
    }
}

/// Builds a clique tree as a maximum-weight spanning forest of the clique
/// intersection graph (weight = separator size), with Kruskal tie-breaks by
/// clique index pair, and a breadth-first merge schedule from the
/// lexicographically smallest clique. Fails when the running-intersection
/// property does not hold, which happens only for cliques of a non-chordal graph.
pub fn clique_tree(cliques: &[Vec<usize>]) -> Result<CliqueTree> {
    if cliques.is_empty() {
        return Err(Error::NotCliqueTree("no cliques".into()));
    }
    let mut cliques: Vec<Vec<usize>> = cliques
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    cliques.sort();
    for (i, c) in cliques.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::NotCliqueTree("empty clique".into()));
        }
        if c.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotCliqueTree(format!(
                "clique {c:?} repeats a vertex"
            )));
        }
        if cliques
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && d.len() >= c.len() && is_subset(c, d))
        {
            return Err(Error::NotCliqueTree(format!("clique {c:?} is not maximal")));
        }
    }

    let m = cliques.len();
    let mut intersection_edges = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            let separator = intersect(&cliques[a], &cliques[b]);
            if !separator.is_empty() {
                intersection_edges.push(CliqueEdge { a, b, separator });
            }
        }
    }

    let mut ranked: Vec<&CliqueEdge> = intersection_edges.iter().collect();
    ranked.sort_by_key(|e| (Reverse(e.separator.len()), e.a, e.b));
    let mut uf = UnionFind::new(m);
    let mut edges = Vec::new();
    for e in ranked {
        if uf.union(e.a, e.b) {
            edges.push(e.clone());
        }
    }
    edges.sort_by_key(|e| (e.a, e.b));

    let root = 0;
    let merge_order = bfs_schedule(&cliques, &edges, root);
    check_running_intersection(&cliques, root, &merge_order)?;
    Ok(CliqueTree {
        cliques,
        intersection_edges,
        edges,
        root,
        merge_order,
    })
}

fn bfs_schedule(cliques: &[Vec<usize>], edges: &[CliqueEdge], root: usize) -> Vec<MergeStep> {
    let m = cliques.len();
    let mut adj: Vec<Vec<(usize, &[usize])>> = vec![Vec::new(); m];
    for e in edges {
        adj[e.a].push((e.b, &e.separator));
        adj[e.b].push((e.a, &e.separator));
    }
    for list in &mut adj {
        list.sort_by_key(|&(j, _)| j);
    }
    let mut seen = vec![false; m];
    let mut steps = Vec::with_capacity(m.saturating_sub(1));
    let starts = std::iter::once(root).chain((0..m).filter(|&i| i != root));
    for start in starts {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        if start != root {
            steps.push(MergeStep {
                parent: None,
                clique: start,
                separator: Vec::new(),
            });
        }
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(w, sep) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    steps.push(MergeStep {
                        parent: Some(u),
                        clique: w,
                        separator: sep.to_vec(),
                    });
                    queue.push_back(w);
                }
            }
        }
    }
    steps
}

fn check_running_intersection(
    cliques: &[Vec<usize>],
    root: usize,
    steps: &[MergeStep],
) -> Result<()> {
    let mut merged: Vec<usize> = cliques[root].clone();
    for step in steps {
        let c = &cliques[step.clique];
        let mut seen_part: Vec<usize> = c.iter().copied().filter(|v| merged.contains(v)).collect();
        seen_part.sort_unstable();
        if seen_part != step.separator {
            return Err(Error::NotCliqueTree(format!(
                "clique {c:?} meets the merged cliques in {seen_part:?}, but its tree separator is {:?}",
                step.separator
            )));
        }
        merged.extend(c.iter().copied().filter(|v| !seen_part.contains(v)));
    }
    Ok(())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
