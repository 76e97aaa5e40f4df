//! Undirected multigraphs with dense integer ids.
//!
//! Parallel edges are allowed and significant: two edges on the same
//! endpoint pair form a 2-cycle, so no induced forest can keep both
//! endpoints. Loops are rejected at construction — every downstream
//! argument assumes them away.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::union_find::UnionFind;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected multigraph. Edge endpoints are stored normalized as
/// (lower id, higher id); the edge *list* keeps insertion order, which is
/// what makes reductions and file round-trips deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}, m={}, edges={:?})", self.n, self.edges.len(), self.edges)
    }
}

/// One endpoint pair carrying at least two parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelPair {
    pub u: VertexId,
    pub v: VertexId,
    pub multiplicity: usize,
    /// All edge ids on this pair, ascending.
    pub edges: Vec<EdgeId>,
}

/// Every parallel pair of a graph, in lexicographic endpoint order.
/// `count()` is the quantity written `k` throughout the bound arithmetic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParallelPairSummary {
    pub pairs: Vec<ParallelPair>,
}

impl ParallelPairSummary {
    pub fn count(&self) -> usize {
        self.pairs.len()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity).max().unwrap_or(1)
    }

    pub fn all_multiplicity_two(&self) -> bool {
        self.pairs.iter().all(|p| p.multiplicity == 2)
    }
}

/// Result of restricting a graph to a vertex set: the reindexed graph plus
/// both directions of the dense index map.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Multigraph,
    pub old_to_new: BTreeMap<VertexId, VertexId>,
    pub new_to_old: Vec<VertexId>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: Vec::new() }
    }

    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<EdgeId> {
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexRange { vertex: x, n: self.n });
            }
        }
        let e = EdgeId(self.edges.len());
        self.edges.push((VertexId(u.min(v)), VertexId(u.max(v))));
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    /// (lower endpoint, higher endpoint)
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().enumerate().map(|(i, &(u, v))| (EdgeId(i), u, v))
    }

    /// Degree counting every parallel copy.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Distinct neighbors (multiplicity ignored).
    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.insert(b);
            } else if b == v {
                out.insert(a);
            }
        }
        out
    }

    pub fn parallel_pairs(&self) -> ParallelPairSummary {
        let mut by_pair: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
        for (e, u, v) in self.edges() {
            by_pair.entry((u, v)).or_default().push(e);
        }
        let pairs = by_pair
            .into_iter()
            .filter(|(_, es)| es.len() >= 2)
            .map(|((u, v), edges)| ParallelPair { u, v, multiplicity: edges.len(), edges })
            .collect();
        ParallelPairSummary { pairs }
    }

    pub fn is_simple(&self) -> bool {
        self.parallel_pairs().pairs.is_empty()
    }

    /// Three distinct vertices pairwise joined by at least one edge each.
    /// Parallel edges alone never form a triangle.
    pub fn has_triangle(&self) -> bool {
        let adj: Vec<BTreeSet<VertexId>> = (0..self.n).map(|v| self.neighbors(VertexId(v))).collect();
        for &(u, v) in &self.edges {
            if adj[u.0].intersection(&adj[v.0]).next().is_some() {
                return true;
            }
        }
        false
    }

    /// Concatenates the parts; vertex and edge ids of part `i` are offset by
    /// the totals of parts before it. Errors on an empty part list.
    pub fn disjoint_union(parts: &[Multigraph]) -> Result<Multigraph> {
        if parts.is_empty() {
            return Err(Error::EmptyUnion);
        }
        let mut g = Multigraph::new(parts.iter().map(|p| p.n).sum());
        let mut offset = 0;
        for part in parts {
            for &(u, v) in &part.edges {
                g.edges.push((VertexId(u.0 + offset), VertexId(v.0 + offset)));
            }
            offset += part.n;
        }
        Ok(g)
    }

    /// Subgraph induced by `keep`, with vertices reindexed densely in
    /// ascending order of their old ids. Duplicate entries in `keep` are
    /// harmless; out-of-range ones are an error.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<InducedSubgraph> {
        let mut set = BTreeSet::new();
        for &v in keep {
            if v.0 >= self.n {
                return Err(Error::VertexRange { vertex: v.0, n: self.n });
            }
            set.insert(v);
        }
        let new_to_old: Vec<VertexId> = set.iter().copied().collect();
        let old_to_new: BTreeMap<VertexId, VertexId> =
            new_to_old.iter().enumerate().map(|(new, &old)| (old, VertexId(new))).collect();
        let mut graph = Multigraph::new(new_to_old.len());
        for &(u, v) in &self.edges {
            if let (Some(&nu), Some(&nv)) = (old_to_new.get(&u), old_to_new.get(&v)) {
                graph.edges.push((nu.min(nv), nu.max(nv)));
            }
        }
        Ok(InducedSubgraph { graph, old_to_new, new_to_old })
    }

    /// Does `keep` induce a forest? A parallel pair inside `keep` is a
    /// 2-cycle, so it fails this test like any other cycle.
    pub fn is_induced_forest(&self, keep: &[VertexId]) -> Result<bool> {
        let mut set = BTreeSet::new();
        for &v in keep {
            if v.0 >= self.n {
                return Err(Error::VertexRange { vertex: v.0, n: self.n });
            }
            set.insert(v);
        }
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            if set.contains(&u) && set.contains(&v) && !uf.union(u.0 as u32, v.0 as u32) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Like `is_induced_forest` with the extra cap: every vertex of `keep`
    /// has at most 2 neighbors inside `keep` (counting multiplicity).
    pub fn is_induced_linear_forest(&self, keep: &[VertexId]) -> Result<bool> {
        if !self.is_induced_forest(keep)? {
            return Ok(false);
        }
        let set: BTreeSet<VertexId> = keep.iter().copied().collect();
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            if set.contains(&u) && set.contains(&v) {
                deg[u.0] += 1;
                deg[v.0] += 1;
            }
        }
        Ok(set.iter().all(|v| deg[v.0] <= 2))
    }

    /// No edge with both endpoints in `keep`.
    pub fn is_independent_set(&self, keep: &[VertexId]) -> Result<bool> {
        let mut set = BTreeSet::new();
        for &v in keep {
            if v.0 >= self.n {
                return Err(Error::VertexRange { vertex: v.0, n: self.n });
            }
            set.insert(v);
        }
        Ok(!self.edges.iter().any(|&(u, v)| set.contains(&u) && set.contains(&v)))
    }

    /// Connected components (isolated vertices are singleton components),
    /// ordered by their smallest vertex, each listed ascending.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u.0 as u32, v.0 as u32);
        }
        let mut by_root: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
        for v in 0..self.n {
            by_root.entry(uf.find(v as u32)).or_default().push(VertexId(v));
        }
        let mut comps: Vec<Vec<VertexId>> = by_root.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// component index (into `components()` order) per vertex
    pub fn component_index(&self) -> Vec<usize> {
        let comps = self.components();
        let mut idx = vec![0; self.n];
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                idx[v.0] = i;
            }
        }
        idx
    }
}
