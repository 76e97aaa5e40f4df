//! Deterministic constructors for the extremal families the bounds are
//! tight (or near-tight) on, each emitted as an embedded instance together
//! with its expected vertex, edge, pair, and forest counts.
//!
//! * `K4Copies`: disjoint simple K4 blocks; the forest number is n/2.
//! * `DoubledK4Copies`: disjoint K4 blocks with every edge doubled; the
//!   forest number drops to n/4 and every drawing of it carries 2-faces.
//! * `NestedTower`: the recursive tower. Level 1 is a single K4; level
//!   k + 1 wraps level k in a doubled triangle (u, v, w), putting a fresh
//!   K4 inside the u-w lens and the previous tower inside the v-w lens,
//!   with the u-v lens facing outward. From level 2 on the external face
//!   of the standalone tower is therefore a 2-face.
//! * `SealedTower`: the tower plus one more K4 drawn in the external
//!   region, which merges the outward lens away; no 2-face remains and the
//!   forest number is 3n/7 + 4/7.
//!
//! Lens faces used for placements and outward designations are located by
//! content (the degree-2 walk bounded by the two copies of the pair), not
//! by hard-coded face indices.

use std::collections::BTreeMap;
use std::fmt;

use crate::embedding::{Dart, Host, PlaneMultigraph, RotationSystem};
use crate::multigraph::{EdgeId, Multigraph};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    K4Copies,
    DoubledK4Copies,
    NestedTower,
    SealedTower,
}

impl Family {
    pub fn code(&self) -> &'static str {
        match self {
            Family::K4Copies => "k4",
            Family::DoubledK4Copies => "dk4",
            Family::NestedTower => "nk",
            Family::SealedTower => "mk",
        }
    }

    pub fn from_code(code: &str) -> Option<Family> {
        match code {
            "k4" => Some(Family::K4Copies),
            "dk4" => Some(Family::DoubledK4Copies),
            "nk" => Some(Family::NestedTower),
            "mk" => Some(Family::SealedTower),
            _ => None,
        }
    }

    pub const ALL: [Family; 4] =
        [Family::K4Copies, Family::DoubledK4Copies, Family::NestedTower, Family::SealedTower];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A generated instance with the counts it is expected to realize. The
/// constructor re-checks every expectation against the built drawing.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: Family,
    pub index: usize,
    pub pm: PlaneMultigraph,
    pub expected_n: usize,
    pub expected_m: usize,
    /// the exact maximum induced forest size of the instance
    pub expected_forest_value: usize,
    /// number of parallel pairs
    pub expected_pairs: usize,
    /// whether any drawing this generator produces carries a 2-face
    pub has_two_faces: bool,
}

pub fn generate(family: Family, k: usize) -> Result<FamilyInstance> {
    match family {
        Family::K4Copies => gen_k4_copies(k),
        Family::DoubledK4Copies => gen_doubled_k4_copies(k),
        Family::NestedTower => gen_nested_tower(k),
        Family::SealedTower => gen_sealed_tower(k),
    }
}

/// Rotation pattern of a plane K4 with vertices (a, a+1, a+2) on the outer
/// triangle and a+3 inside; dart values are relative to the block's first
/// dart. The first traced face is the outer triangle.
const K4_ROTATIONS: [[usize; 3]; 4] = [[0, 4, 2], [6, 8, 1], [3, 10, 7], [11, 5, 9]];

/// Incremental builder: components are appended in vertex order, so the
/// component index equals the creation order. Lens-dependent outward
/// designations and placements are recorded as pending pair lookups and
/// resolved against the traced faces at the end.
struct Assembly {
    n: usize,
    edges: Vec<(usize, usize)>,
    rotations: Vec<Vec<Dart>>,
    components: usize,
    outer: BTreeMap<usize, usize>,
    pending_outer: Vec<(usize, (EdgeId, EdgeId))>,
    pending_place: Vec<(usize, usize, (EdgeId, EdgeId))>,
}

/// Component and pair handles of one doubled triangle.
struct Triangle {
    comp: usize,
    uv: (EdgeId, EdgeId),
    uw: (EdgeId, EdgeId),
    vw: (EdgeId, EdgeId),
}

impl Assembly {
    fn new() -> Self {
        Assembly {
            n: 0,
            edges: Vec::new(),
            rotations: Vec::new(),
            components: 0,
            outer: BTreeMap::new(),
            pending_outer: Vec::new(),
            pending_place: Vec::new(),
        }
    }

    fn add_k4(&mut self) -> usize {
        let (b, base_dart) = (self.n, 2 * self.edges.len());
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            self.edges.push((b + i, b + j));
        }
        for rot in K4_ROTATIONS {
            self.rotations.push(rot.iter().map(|&d| Dart(base_dart + d)).collect());
        }
        self.n += 4;
        let comp = self.components;
        self.components += 1;
        // the first traced walk of the block is its outer triangle
        self.outer.insert(comp, 0);
        comp
    }

    fn add_doubled_k4(&mut self) -> usize {
        let (b, base_dart) = (self.n, 2 * self.edges.len());
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            self.edges.push((b + i, b + j));
            self.edges.push((b + i, b + j));
        }
        // double each angular slot: copies side by side at the low
        // endpoint, mirrored at the high one, so the copies bound a lens
        for rot in K4_ROTATIONS {
            let mut darts = Vec::with_capacity(6);
            for &d in &rot {
                let (e, s) = (d / 2, d % 2);
                if s == 0 {
                    darts.extend([Dart(base_dart + 4 * e), Dart(base_dart + 4 * e + 2)]);
                } else {
                    darts.extend([Dart(base_dart + 4 * e + 3), Dart(base_dart + 4 * e + 1)]);
                }
            }
            self.rotations.push(darts);
        }
        self.n += 4;
        let comp = self.components;
        self.components += 1;
        self.outer.insert(comp, 0);
        comp
    }

    fn add_doubled_triangle(&mut self) -> Triangle {
        let (b, base_e, base_dart) = (self.n, self.edges.len(), 2 * self.edges.len());
        for (i, j) in [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)] {
            self.edges.push((b + i, b + j));
        }
        // faces: two triangles (one per copy mix) and the three lenses
        for rot in [[2usize, 6, 4, 0], [1, 8, 10, 3], [9, 5, 7, 11]] {
            self.rotations.push(rot.iter().map(|&d| Dart(base_dart + d)).collect());
        }
        self.n += 3;
        let comp = self.components;
        self.components += 1;
        Triangle {
            comp,
            uv: (EdgeId(base_e), EdgeId(base_e + 1)),
            uw: (EdgeId(base_e + 2), EdgeId(base_e + 3)),
            vw: (EdgeId(base_e + 4), EdgeId(base_e + 5)),
        }
    }

    fn finish(mut self) -> Result<PlaneMultigraph> {
        let g = Multigraph::from_edges(self.n, &self.edges)?;
        let rs = RotationSystem::new(&g, self.rotations.clone())?;
        let locate = LensIndex::build(&g, &rs);
        for (comp, pair) in std::mem::take(&mut self.pending_outer) {
            let (c, local) = locate.lens(pair)?;
            if c != comp {
                return Err(Error::Structure(format!(
                    "lens of pair {}-{} sits in component {c}, expected {comp}",
                    pair.0, pair.1
                )));
            }
            self.outer.insert(comp, local);
        }
        let mut placements = BTreeMap::new();
        for (placed, host_comp, pair) in std::mem::take(&mut self.pending_place) {
            let (c, local) = locate.lens(pair)?;
            if c != host_comp {
                return Err(Error::Structure(format!(
                    "lens of pair {}-{} sits in component {c}, expected {host_comp}",
                    pair.0, pair.1
                )));
            }
            placements.insert(placed, Host::Face { component: c, face: local });
        }
        PlaneMultigraph::assemble(g, self.rotations, &self.outer, &placements, &BTreeMap::new())
    }
}

/// Walk lookup table: every degree-2 walk keyed by the pair bounding it,
/// valued by its component and local face index.
struct LensIndex {
    lenses: BTreeMap<(EdgeId, EdgeId), (usize, usize)>,
}

impl LensIndex {
    fn build(g: &Multigraph, rs: &RotationSystem) -> Self {
        let comp_of_vertex: BTreeMap<_, _> = g
            .components()
            .iter()
            .enumerate()
            .flat_map(|(c, vs)| vs.iter().map(move |&v| (v, c)))
            .collect();
        let mut lenses = BTreeMap::new();
        let mut local_counter: BTreeMap<usize, usize> = BTreeMap::new();
        for walk in rs.trace_faces() {
            let Some(&first) = walk.darts.first() else { continue };
            let (u, _) = g.endpoints(first.edge());
            let comp = comp_of_vertex[&u];
            let local = *local_counter
                .entry(comp)
                .and_modify(|l| *l += 1)
                .or_insert(0);
            if walk.degree() == 2 {
                let edges: Vec<EdgeId> = walk.edge_set().into_iter().collect();
                if edges.len() == 2 {
                    lenses.insert((edges[0], edges[1]), (comp, local));
                }
            }
        }
        LensIndex { lenses }
    }

    fn lens(&self, pair: (EdgeId, EdgeId)) -> Result<(usize, usize)> {
        self.lenses.get(&pair).copied().ok_or_else(|| {
            Error::Structure(format!("no lens face bounded by edges {} and {}", pair.0, pair.1))
        })
    }
}

impl FamilyInstance {
    /// Re-checks every expected count against the built drawing.
    fn validated(self) -> Result<Self> {
        let (family, index) = (self.family, self.index);
        let g = self.pm.graph();
        if g.n() != self.expected_n || g.m() != self.expected_m {
            return Err(Error::Structure(format!(
                "family {family} index {index} built n={} m={}, expected n={} m={}",
                g.n(),
                g.m(),
                self.expected_n,
                self.expected_m
            )));
        }
        let pairs = g.parallel_pairs();
        if pairs.count() != self.expected_pairs {
            return Err(Error::Structure(format!(
                "family {family} index {index} built {} pairs, expected {}",
                pairs.count(),
                self.expected_pairs
            )));
        }
        if self.expected_pairs > 0 && !pairs.all_multiplicity_two() {
            return Err(Error::Structure(format!(
                "family {family} index {index} built a multiplicity above 2"
            )));
        }
        if !self.pm.handshake_check() || !self.pm.euler_check() {
            return Err(Error::Structure(format!(
                "family {family} index {index} failed a face-count identity"
            )));
        }
        if self.pm.two_faces().is_empty() == self.has_two_faces {
            return Err(Error::Structure(format!(
                "family {family} index {index}: 2-face presence should be {}",
                self.has_two_faces
            )));
        }
        Ok(self)
    }
}

/// k disjoint plane K4 blocks: n = 4k and the forest number is 2k = n/2.
pub fn gen_k4_copies(k: usize) -> Result<FamilyInstance> {
    if k < 1 {
        return Err(Error::FamilyIndex(k));
    }
    let mut asm = Assembly::new();
    for _ in 0..k {
        asm.add_k4();
    }
    FamilyInstance {
        family: Family::K4Copies,
        index: k,
        pm: asm.finish()?,
        expected_n: 4 * k,
        expected_m: 6 * k,
        expected_forest_value: 2 * k,
        expected_pairs: 0,
        has_two_faces: false,
    }
    .validated()
}

/// k disjoint K4 blocks with every edge doubled: n = 4k, the forest number
/// collapses to k = n/4, and every drawing has lens 2-faces.
pub fn gen_doubled_k4_copies(k: usize) -> Result<FamilyInstance> {
    if k < 1 {
        return Err(Error::FamilyIndex(k));
    }
    let mut asm = Assembly::new();
    for _ in 0..k {
        asm.add_doubled_k4();
    }
    FamilyInstance {
        family: Family::DoubledK4Copies,
        index: k,
        pm: asm.finish()?,
        expected_n: 4 * k,
        expected_m: 12 * k,
        expected_forest_value: k,
        expected_pairs: 6 * k,
        has_two_faces: true,
    }
    .validated()
}

/// Builds the level-k tower into the assembly and returns the component
/// whose face touches the unbounded region.
fn tower(asm: &mut Assembly, k: usize) -> usize {
    let mut outer_comp = asm.add_k4();
    for _ in 2..=k {
        let t = asm.add_doubled_triangle();
        let fresh = asm.add_k4();
        asm.pending_outer.push((t.comp, t.uv));
        asm.pending_place.push((fresh, t.comp, t.uw));
        asm.pending_place.push((outer_comp, t.comp, t.vw));
        outer_comp = t.comp;
    }
    outer_comp
}

/// The standalone tower: n = 7k - 3 and the forest number is 3k - 1. From
/// level 2 on its external face is the outward lens, a 2-face.
pub fn gen_nested_tower(k: usize) -> Result<FamilyInstance> {
    if k < 1 {
        return Err(Error::FamilyIndex(k));
    }
    let mut asm = Assembly::new();
    tower(&mut asm, k);
    FamilyInstance {
        family: Family::NestedTower,
        index: k,
        pm: asm.finish()?,
        expected_n: 7 * k - 3,
        expected_m: 12 * k - 6,
        expected_forest_value: 3 * k - 1,
        expected_pairs: 3 * (k - 1),
        has_two_faces: k >= 2,
    }
    .validated()
}

/// The tower sealed by one more K4 drawn in the external region: n = 7k + 1,
/// no 2-faces, and the forest number is 3k + 1 = 3n/7 + 4/7.
pub fn gen_sealed_tower(k: usize) -> Result<FamilyInstance> {
    if k < 1 {
        return Err(Error::FamilyIndex(k));
    }
    let mut asm = Assembly::new();
    tower(&mut asm, k);
    asm.add_k4();
    FamilyInstance {
        family: Family::SealedTower,
        index: k,
        pm: asm.finish()?,
        expected_n: 7 * k + 1,
        expected_m: 12 * k,
        expected_forest_value: 3 * k + 1,
        expected_pairs: 3 * (k - 1),
        has_two_faces: false,
    }
    .validated()
}
