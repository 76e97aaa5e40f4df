//! Seeded random instance generation for the property suites: simple
//! graphs, multigraphs with controlled multiplicities, forests, and plane
//! drawings (forests accept any rotation; denser graphs are rejection
//! sampled against the per-component planarity count).
//!
//! Everything is driven by one explicitly seeded stream so suites are
//! reproducible byte for byte.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{Dart, Host, PlaneMultigraph};
use crate::multigraph::{Multigraph, VertexId};

/// Deterministic instance source.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Simple graph on 1..=max_n vertices with a random density.
    pub fn simple_graph(&mut self, max_n: usize) -> Multigraph {
        let n = self.rng.gen_range(1..=max_n.max(1));
        let density = self.rng.gen_range(0.15..0.6);
        let mut g = Multigraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if self.rng.gen_bool(density) {
                    g.add_edge(u, v).expect("distinct endpoints");
                }
            }
        }
        g
    }

    /// Multigraph: a simple base with random extra copies, so parallel
    /// pairs of multiplicity 2 to 4 appear.
    pub fn multigraph(&mut self, max_n: usize) -> Multigraph {
        let base = self.simple_graph(max_n);
        let mut g = Multigraph::new(base.n());
        for (_, u, v) in base.edges() {
            g.add_edge(u.0, v.0).expect("distinct endpoints");
            if self.rng.gen_bool(0.3) {
                let copies = self.rng.gen_range(1..=3);
                for _ in 0..copies {
                    g.add_edge(u.0, v.0).expect("distinct endpoints");
                }
            }
        }
        g
    }

    /// Multigraph in which every parallel pair has multiplicity exactly 2:
    /// a simple base with a random subset of edges doubled.
    pub fn paired_multigraph(&mut self, max_n: usize) -> Multigraph {
        let base = self.simple_graph(max_n);
        let mut g = Multigraph::new(base.n());
        for (_, u, v) in base.edges() {
            g.add_edge(u.0, v.0).expect("distinct endpoints");
            if self.rng.gen_bool(0.35) {
                g.add_edge(u.0, v.0).expect("distinct endpoints");
            }
        }
        g
    }

    /// Random forest: every vertex past the first attaches to an earlier
    /// vertex with probability 0.7, otherwise it starts a new tree.
    pub fn forest(&mut self, max_n: usize) -> Multigraph {
        let n = self.rng.gen_range(1..=max_n.max(1));
        let mut g = Multigraph::new(n);
        for v in 1..n {
            if self.rng.gen_bool(0.7) {
                let parent = self.rng.gen_range(0..v);
                g.add_edge(parent, v).expect("distinct endpoints");
            }
        }
        g
    }

    /// Random dart order around every vertex.
    fn random_rotations(&mut self, g: &Multigraph) -> Vec<Vec<Dart>> {
        let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); g.n()];
        for (e, u, v) in g.edges() {
            rotations[u.0].push(Dart(2 * e.0));
            rotations[v.0].push(Dart(2 * e.0 + 1));
        }
        // ChaCha8Rng implements the full Rng surface; shuffle wants it as is
        for rot in &mut rotations {
            rot.shuffle(&mut self.rng);
        }
        rotations
    }

    /// Random outward designations and an acyclic placement assignment
    /// (components only ever land inside earlier components).
    fn random_arrangement(
        &mut self,
        pm: &PlaneMultigraph,
    ) -> (BTreeMap<usize, usize>, BTreeMap<usize, Host>, BTreeMap<VertexId, Host>) {
        let comps = pm.edge_components();
        let mut outer = BTreeMap::new();
        let mut placements = BTreeMap::new();
        for (idx, &c) in comps.iter().enumerate() {
            let faces = pm.component_walks(c).len();
            outer.insert(c, self.rng.gen_range(0..faces));
            if idx > 0 && self.rng.gen_bool(0.5) {
                let host = comps[self.rng.gen_range(0..idx)];
                let face = self.rng.gen_range(0..pm.component_walks(host).len());
                placements.insert(c, Host::Face { component: host, face });
            }
        }
        let mut isolated = BTreeMap::new();
        for v in (0..pm.graph().n()).map(VertexId) {
            if pm.graph().degree(v) == 0 && !comps.is_empty() && self.rng.gen_bool(0.5) {
                let host = comps[self.rng.gen_range(0..comps.len())];
                if host != pm.component_of(v) {
                    let face = self.rng.gen_range(0..pm.component_walks(host).len());
                    isolated.insert(v, Host::Face { component: host, face });
                }
            }
        }
        (outer, placements, isolated)
    }

    /// Random plane forest: any rotation of a forest is planar, so this
    /// always succeeds, with random outward faces and placements.
    pub fn plane_forest(&mut self, max_n: usize) -> PlaneMultigraph {
        let g = self.forest(max_n);
        let rotations = self.random_rotations(&g);
        let flat = PlaneMultigraph::assemble(
            g.clone(),
            rotations.clone(),
            &default_outer(&g),
            &BTreeMap::new(),
            &BTreeMap::new(),
        )
        .expect("forests are planar under every rotation");
        let (outer, placements, isolated) = self.random_arrangement(&flat);
        PlaneMultigraph::assemble(g, rotations, &outer, &placements, &isolated)
            .expect("arrangement indices come from the flat drawing")
    }

    /// Rejection-sampled plane drawing of a random sparse multigraph (at
    /// most n + 2 edges). Returns None when no planar rotation shows up
    /// within the attempt budget.
    pub fn plane_multigraph(&mut self, max_n: usize, attempts: usize) -> Option<PlaneMultigraph> {
        let n = self.rng.gen_range(2..=max_n.max(2));
        let m = self.rng.gen_range(0..=n + 2);
        let mut g = Multigraph::new(n);
        for _ in 0..m {
            let u = self.rng.gen_range(0..n);
            let v = self.rng.gen_range(0..n - 1);
            let v = if v >= u { v + 1 } else { v };
            g.add_edge(u, v).expect("distinct endpoints");
        }
        for _ in 0..attempts {
            let rotations = self.random_rotations(&g);
            let flat = PlaneMultigraph::assemble(
                g.clone(),
                rotations.clone(),
                &default_outer(&g),
                &BTreeMap::new(),
                &BTreeMap::new(),
            );
            let Ok(flat) = flat else { continue };
            let (outer, placements, isolated) = self.random_arrangement(&flat);
            return Some(
                PlaneMultigraph::assemble(g, rotations, &outer, &placements, &isolated)
                    .expect("arrangement indices come from the flat drawing"),
            );
        }
        None
    }

    /// Uniform choice helper for suites built on top of the sampler.
    pub fn pick(&mut self, upper: usize) -> usize {
        self.rng.gen_range(0..upper)
    }

    /// Coin helper for suites built on top of the sampler.
    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }
}

/// Secondary stream for shuffling work orders without disturbing the
/// instance stream.
pub fn shuffle_seeded<T>(items: &mut [T], seed: u64) {
    items.shuffle(&mut StdRng::seed_from_u64(seed));
}

/// Face 0 as the outward face of every edge component: the designation
/// `assemble` demands before any random arrangement is chosen.
fn default_outer(g: &Multigraph) -> BTreeMap<usize, usize> {
    g.components()
        .iter()
        .enumerate()
        .filter(|(_, vs)| vs.iter().any(|&v| g.degree(v) > 0))
        .map(|(c, _)| (c, 0))
        .collect()
}
