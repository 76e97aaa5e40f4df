//! Exact solvers: maximum induced forest, maximum induced linear forest,
//! maximum independent set, and bounded-effort acyclic coloring.
//!
//! The vertex-set solvers run branch and bound per connected component,
//! deciding vertices in ascending order with the include branch first and
//! accepting only strict improvements. That discipline makes the first
//! optimum reached the lexicographically least one, so certificates are
//! deterministic. Parallel edges need no special casing anywhere: the
//! union-find cycle check rejects the second edge of a pair, which is
//! exactly the rule that both endpoints of a doubled edge cannot coexist
//! in a forest.

use std::collections::BTreeMap;

use crate::multigraph::{Multigraph, VertexId};
use crate::union_find::UnionFind;
use crate::{Error, Result};

/// What a vertex-set certificate claims about the set it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    InducedForest,
    InducedLinearForest,
    IndependentSet,
}

/// An optimal vertex set: `vertices` ascending, `value` its size. The set is
/// the lexicographically least optimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCertificate {
    pub kind: CertificateKind,
    pub vertices: Vec<VertexId>,
    pub value: usize,
}

impl ForestCertificate {
    /// Re-checks the certificate against a graph.
    pub fn verify(&self, g: &Multigraph) -> Result<bool> {
        let ok = match self.kind {
            CertificateKind::InducedForest => g.is_induced_forest(&self.vertices)?,
            CertificateKind::InducedLinearForest => g.is_induced_linear_forest(&self.vertices)?,
            CertificateKind::IndependentSet => g.is_independent_set(&self.vertices)?,
        };
        Ok(ok && self.vertices.len() == self.value)
    }
}

/// Largest vertex set inducing a forest (no cycle, where a parallel pair
/// already is a cycle).
pub fn max_induced_forest(g: &Multigraph) -> ForestCertificate {
    solve(g, Mode::Forest)
}

/// Largest vertex set inducing a disjoint union of paths.
pub fn max_induced_linear_forest(g: &Multigraph) -> ForestCertificate {
    solve(g, Mode::Linear)
}

/// Largest vertex set inducing no edge at all.
pub fn max_independent_set(g: &Multigraph) -> ForestCertificate {
    solve(g, Mode::Independent)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Forest,
    Linear,
    Independent,
}

fn solve(g: &Multigraph, mode: Mode) -> ForestCertificate {
    // incident edges as "other endpoint", with multiplicity
    let mut inc: Vec<Vec<VertexId>> = vec![Vec::new(); g.n()];
    for (_, u, v) in g.edges() {
        inc[u.0].push(v);
        inc[v.0].push(u);
    }
    let mut vertices: Vec<VertexId> = Vec::new();
    for comp in g.components() {
        let mut bb = Bb {
            inc: &inc,
            order: &comp,
            mode,
            in_set: vec![false; g.n()],
            deg_in: vec![0usize; g.n()],
            uf: UnionFind::new(g.n()),
            chosen: Vec::new(),
            best: Vec::new(),
        };
        bb.rec(0);
        vertices.extend(bb.best);
    }
    vertices.sort();
    let kind = match mode {
        Mode::Forest => CertificateKind::InducedForest,
        Mode::Linear => CertificateKind::InducedLinearForest,
        Mode::Independent => CertificateKind::IndependentSet,
    };
    ForestCertificate { value: vertices.len(), vertices, kind }
}

struct Bb<'a> {
    inc: &'a [Vec<VertexId>],
    order: &'a [VertexId],
    mode: Mode,
    in_set: Vec<bool>,
    deg_in: Vec<usize>,
    uf: UnionFind,
    chosen: Vec<VertexId>,
    best: Vec<VertexId>,
}

impl Bb<'_> {
    fn rec(&mut self, i: usize) {
        // only strict improvements are recorded, so the first optimum found
        // in include-first order is the lexicographically least one
        if self.chosen.len() + (self.order.len() - i) <= self.best.len() {
            return;
        }
        if i == self.order.len() {
            self.best = self.chosen.clone();
            return;
        }
        let v = self.order[i];
        if let Some(mark) = self.try_include(v) {
            self.chosen.push(v);
            self.rec(i + 1);
            self.chosen.pop();
            self.undo_include(v, mark);
        }
        self.rec(i + 1);
    }

    fn try_include(&mut self, v: VertexId) -> Option<usize> {
        let touching: Vec<VertexId> =
            self.inc[v.0].iter().copied().filter(|u| self.in_set[u.0]).collect();
        match self.mode {
            Mode::Independent => {
                if !touching.is_empty() {
                    return None;
                }
            }
            Mode::Linear => {
                if touching.len() > 2 {
                    return None;
                }
                for &u in &touching {
                    let mult = touching.iter().filter(|&&x| x == u).count();
                    if self.deg_in[u.0] + mult > 2 {
                        return None;
                    }
                }
            }
            Mode::Forest => {}
        }
        let mark = self.uf.mark();
        if self.mode != Mode::Independent {
            for &u in &touching {
                if !self.uf.union(v.0 as u32, u.0 as u32) {
                    self.uf.rollback(mark);
                    return None;
                }
            }
        }
        for &u in &touching {
            self.deg_in[u.0] += 1;
        }
        self.deg_in[v.0] = touching.len();
        self.in_set[v.0] = true;
        Some(mark)
    }

    fn undo_include(&mut self, v: VertexId, mark: usize) {
        self.uf.rollback(mark);
        self.in_set[v.0] = false;
        for u in self.inc[v.0].iter().copied().filter(|u| self.in_set[u.0]) {
            self.deg_in[u.0] -= 1;
        }
        self.deg_in[v.0] = 0;
    }
}

/// Default cap on assignment steps for the acyclic-coloring search.
pub const DEFAULT_COLORING_BUDGET: u64 = 100_000_000;

/// A vertex coloring claimed to be proper and acyclic (no cycle uses only
/// two colors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicColoring {
    pub colors: Vec<usize>,
    pub c: usize,
}

impl AcyclicColoring {
    /// Vertices holding each color, ascending per class.
    pub fn classes(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.c];
        for (v, &q) in self.colors.iter().enumerate() {
            out[q].push(VertexId(v));
        }
        out
    }
}

#[derive(Debug)]
pub enum ColoringOutcome {
    Found(AcyclicColoring),
    /// The whole space was searched; no acyclic coloring with c colors.
    NotColorable,
    BudgetExceeded,
}

/// Checks a coloring: right length, colors below `c`, proper, and every
/// two-color class union induces a forest (parallel pairs count as cycles).
pub fn verify_acyclic_coloring(g: &Multigraph, coloring: &AcyclicColoring) -> Result<()> {
    if coloring.colors.len() != g.n() {
        return Err(Error::Coloring(format!(
            "coloring covers {} vertices, graph has {}",
            coloring.colors.len(),
            g.n()
        )));
    }
    if let Some((v, &q)) = coloring.colors.iter().enumerate().find(|(_, &q)| q >= coloring.c) {
        return Err(Error::Coloring(format!("vertex {v} has color {q}, but c = {}", coloring.c)));
    }
    for (e, u, v) in g.edges() {
        if coloring.colors[u.0] == coloring.colors[v.0] {
            return Err(Error::Coloring(format!("edge {e} joins two vertices of color {}", coloring.colors[u.0])));
        }
    }
    let mut pair_uf: BTreeMap<(usize, usize), UnionFind> = BTreeMap::new();
    for (e, u, v) in g.edges() {
        let (a, b) = (coloring.colors[u.0], coloring.colors[v.0]);
        let key = (a.min(b), a.max(b));
        let uf = pair_uf.entry(key).or_insert_with(|| UnionFind::new(g.n()));
        if !uf.union(u.0 as u32, v.0 as u32) {
            return Err(Error::Coloring(format!(
                "colors {} and {} span a cycle through edge {e}",
                key.0, key.1
            )));
        }
    }
    Ok(())
}

/// Backtracking search for an acyclic `c`-coloring.
///
/// Vertices are colored in smallest-last order; each color pair keeps a
/// union-find over vertices so a bichromatic cycle is detected the moment
/// its closing edge is colored. Color classes are interchangeable, so a
/// vertex may only introduce at most one color index beyond those already
/// in use. The budget counts assignment steps.
pub fn find_acyclic_coloring(g: &Multigraph, c: usize, budget: u64) -> Result<ColoringOutcome> {
    if c == 0 {
        return Err(Error::Coloring("at least one color is required".into()));
    }
    let order = smallest_last_order(g);
    let mut inc: Vec<Vec<VertexId>> = vec![Vec::new(); g.n()];
    for (_, u, v) in g.edges() {
        inc[u.0].push(v);
        inc[v.0].push(u);
    }
    let pair_count = c * (c.saturating_sub(1)) / 2;
    let mut s = ColorSearch {
        inc: &inc,
        order: &order,
        c,
        colors: vec![usize::MAX; g.n()],
        pair_uf: (0..pair_count).map(|_| UnionFind::new(g.n())).collect(),
        budget,
        out_of_budget: false,
    };
    if s.rec(0, 0) {
        let colors = s.colors.clone();
        let coloring = AcyclicColoring { colors, c };
        verify_acyclic_coloring(g, &coloring)?;
        Ok(ColoringOutcome::Found(coloring))
    } else if s.out_of_budget {
        Ok(ColoringOutcome::BudgetExceeded)
    } else {
        Ok(ColoringOutcome::NotColorable)
    }
}

/// Smallest-last: repeatedly delete a minimum-degree vertex (ties to the
/// least id); coloring order is the reverse of deletion order.
fn smallest_last_order(g: &Multigraph) -> Vec<VertexId> {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; g.n()];
    let mut deletion = Vec::with_capacity(g.n());
    for _ in 0..g.n() {
        let v = (0..g.n())
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        deletion.push(VertexId(v));
        for (_, a, b) in g.edges() {
            let (a, b) = (a.0, b.0);
            if a == v && !removed[b] {
                deg[b] -= 1;
            } else if b == v && !removed[a] {
                deg[a] -= 1;
            }
        }
    }
    deletion.reverse();
    deletion
}

struct ColorSearch<'a> {
    inc: &'a [Vec<VertexId>],
    order: &'a [VertexId],
    c: usize,
    colors: Vec<usize>,
    pair_uf: Vec<UnionFind>,
    budget: u64,
    out_of_budget: bool,
}

impl ColorSearch<'_> {
    fn pair_index(&self, a: usize, b: usize) -> usize {
        let (i, j) = (a.min(b), a.max(b));
        // position of (i, j) among pairs in lexicographic order
        i * self.c - i * (i + 1) / 2 + (j - i - 1)
    }

    fn rec(&mut self, idx: usize, used: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let v = self.order[idx];
        let limit = self.c.min(used + 1);
        for q in 0..limit {
            if self.budget == 0 {
                self.out_of_budget = true;
                return false;
            }
            self.budget -= 1;
            if let Some(marks) = self.assign(v, q) {
                if self.rec(idx + 1, used.max(q + 1)) {
                    return true;
                }
                self.colors[v.0] = usize::MAX;
                for (p, &mk) in marks.iter().enumerate() {
                    self.pair_uf[p].rollback(mk);
                }
            }
            if self.out_of_budget {
                return false;
            }
        }
        false
    }

    /// Tries color q at v. On success returns the union-find marks taken
    /// before the vertex's unions, so the caller can roll them back.
    fn assign(&mut self, v: VertexId, q: usize) -> Option<Vec<usize>> {
        for &u in &self.inc[v.0] {
            if self.colors[u.0] == q {
                return None;
            }
        }
        let marks: Vec<usize> = self.pair_uf.iter().map(|uf| uf.mark()).collect();
        for &u in &self.inc[v.0] {
            let r = self.colors[u.0];
            if r == usize::MAX {
                continue;
            }
            let p = self.pair_index(q, r);
            if !self.pair_uf[p].union(v.0 as u32, u.0 as u32) {
                for (p, &mk) in marks.iter().enumerate() {
                    self.pair_uf[p].rollback(mk);
                }
                return None;
            }
        }
        self.colors[v.0] = q;
        Some(marks)
    }
}
