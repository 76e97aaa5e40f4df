//! Combinatorial plane embeddings.
//!
//! An embedding is a rotation system: a cyclic order of darts around every
//! vertex. Edge `e` owns darts `2e` (at its lower-id endpoint) and `2e+1`
//! (at the higher). Faces are traced by the successor rule
//! `next(d) = rotation-successor of twin(d)`; a rotation system is accepted
//! as planar exactly when every component with edges satisfies
//! `n_c - m_c + faces_c = 2`.
//!
//! Multi-component graphs additionally carry a placement forest: every edge
//! component either sits in the unbounded region or inside a face of
//! another component, and each component designates the face that opens
//! toward its host. A placement merges the host face with the placed
//! component's outer face into one global face whose degree is the sum of
//! the two; the global faces are what the counting identities and the
//! 2-cycle analysis operate on. Degree-0 vertices never contribute face
//! degree — they are annotated with the region holding them.

pub mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::multigraph::{EdgeId, Multigraph, VertexId};
use crate::union_find::UnionFind;
use crate::{Error, Result};

/// Half-edge. Dart `2e` sits at the lower-id endpoint of edge `e`,
/// dart `2e+1` at the higher-id endpoint.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl Dart {
    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 >> 1)
    }

    pub fn at_low_endpoint(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The vertex a dart is attached to.
pub fn dart_tail(g: &Multigraph, d: Dart) -> VertexId {
    let (lo, hi) = g.endpoints(d.edge());
    if d.at_low_endpoint() {
        lo
    } else {
        hi
    }
}

/// Cyclic dart order around every vertex. Construction validates that each
/// dart appears exactly once, in the rotation of its own tail vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    n: usize,
    m: usize,
    rotations: Vec<Vec<Dart>>,
    // succ[d] = dart after d in the rotation at d's tail
    succ: Vec<Dart>,
}

impl RotationSystem {
    pub fn new(g: &Multigraph, rotations: Vec<Vec<Dart>>) -> Result<Self> {
        if rotations.len() != g.n() {
            return Err(Error::Rotation(format!(
                "expected {} rotations, got {}",
                g.n(),
                rotations.len()
            )));
        }
        let dart_count = 2 * g.m();
        let mut seen = vec![false; dart_count];
        for (v, rot) in rotations.iter().enumerate() {
            for &d in rot {
                if d.0 >= dart_count {
                    return Err(Error::Rotation(format!("dart {} out of range", d)));
                }
                if seen[d.0] {
                    return Err(Error::Rotation(format!("dart {} listed twice", d)));
                }
                seen[d.0] = true;
                if dart_tail(g, d) != VertexId(v) {
                    return Err(Error::Rotation(format!(
                        "dart {} belongs at vertex {}, found at {}",
                        d,
                        dart_tail(g, d),
                        v
                    )));
                }
            }
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            return Err(Error::Rotation(format!("dart {} missing", d)));
        }
        let mut succ = vec![Dart(0); dart_count];
        for rot in &rotations {
            for (i, &d) in rot.iter().enumerate() {
                succ[d.0] = rot[(i + 1) % rot.len()];
            }
        }
        Ok(RotationSystem { n: g.n(), m: g.m(), rotations, succ })
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotations[v.0]
    }

    /// Face-walk successor: the rotation successor of the twin.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.succ[d.twin().0]
    }

    /// Traces every face walk, each started at its least dart, walks ordered
    /// by that least dart. An edgeless system yields the single degree-0
    /// face of the empty plane.
    pub fn trace_faces(&self) -> Vec<FaceWalk> {
        if self.m == 0 {
            return vec![FaceWalk { darts: Vec::new() }];
        }
        let mut walks = Vec::new();
        let mut visited = vec![false; 2 * self.m];
        for start in 0..2 * self.m {
            if visited[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = Dart(start);
            loop {
                visited[d.0] = true;
                darts.push(d);
                d = self.next_in_face(d);
                if d.0 == start {
                    break;
                }
            }
            walks.push(FaceWalk { darts });
        }
        walks
    }
}

/// One traced face: its darts in walk order, starting at the least dart in
/// the walk. The degree counts dart incidences, so an edge with both sides
/// on the same face contributes 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.darts.iter().map(|d| d.edge()).collect()
    }
}

/// Where a component (or an isolated vertex) lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Host {
    Unbounded,
    /// Inside local face `face` of component `component`.
    Face { component: usize, face: usize },
}

/// A face of the plane drawing after placements are merged. `walks` lists
/// the traced per-component faces glued into it; the face holding the
/// unbounded region is flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalFace {
    pub id: usize,
    pub walks: Vec<usize>,
    pub degree: usize,
    pub unbounded: bool,
}

/// A validated plane multigraph: graph + rotation system + outer-face
/// designation per edge component + placement forest + isolated-vertex
/// annotations. Everything derived (faces, components, global faces) is
/// computed once at assembly and immutable afterwards.
#[derive(Clone, Debug)]
pub struct PlaneMultigraph {
    graph: Multigraph,
    rotation: RotationSystem,
    components: Vec<Vec<VertexId>>,
    comp_of_vertex: Vec<usize>,
    /// traced face walks in canonical order (empty when m = 0)
    walks: Vec<FaceWalk>,
    walk_of_dart: Vec<usize>,
    /// component owning each walk
    walk_comp: Vec<usize>,
    /// walk id -> index among its component's walks
    walk_local: Vec<usize>,
    /// component -> its walk ids in trace order (edge components only)
    comp_walks: BTreeMap<usize, Vec<usize>>,
    /// edge component -> designated outer walk id
    outer_walk: BTreeMap<usize, usize>,
    /// edge component -> host
    placements: BTreeMap<usize, Host>,
    /// degree-0 vertex -> host
    isolated: BTreeMap<VertexId, Host>,
    global_faces: Vec<GlobalFace>,
    /// walk id -> global face id
    global_of_walk: Vec<usize>,
}

impl PlaneMultigraph {
    /// Assembles and validates a plane multigraph.
    ///
    /// `outer` must name a local face for every edge component. Components
    /// missing from `placements` default to the unbounded region, as do
    /// degree-0 vertices missing from `isolated`.
    pub fn assemble(
        graph: Multigraph,
        rotations: Vec<Vec<Dart>>,
        outer: &BTreeMap<usize, usize>,
        placements: &BTreeMap<usize, Host>,
        isolated: &BTreeMap<VertexId, Host>,
    ) -> Result<Self> {
        let rotation = RotationSystem::new(&graph, rotations)?;
        let components = graph.components();
        let comp_of_vertex = graph.component_index();

        let walks = if graph.m() == 0 { Vec::new() } else { rotation.trace_faces() };
        let mut walk_of_dart = vec![usize::MAX; 2 * graph.m()];
        for (w, walk) in walks.iter().enumerate() {
            for &d in &walk.darts {
                walk_of_dart[d.0] = w;
            }
        }
        let walk_comp: Vec<usize> =
            walks.iter().map(|w| comp_of_vertex[dart_tail(&graph, w.darts[0]).0]).collect();

        let mut comp_walks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (w, &c) in walk_comp.iter().enumerate() {
            comp_walks.entry(c).or_default().push(w);
        }
        let mut walk_local = vec![0usize; walks.len()];
        for ws in comp_walks.values() {
            for (local, &w) in ws.iter().enumerate() {
                walk_local[w] = local;
            }
        }

        // per-component planarity: n - m + faces = 2 for every edge component
        let mut comp_m = vec![0usize; components.len()];
        for (_, u, _) in graph.edges() {
            comp_m[comp_of_vertex[u.0]] += 1;
        }
        let edge_comps: Vec<usize> =
            (0..components.len()).filter(|&c| comp_m[c] > 0).collect();
        for &c in &edge_comps {
            let faces = comp_walks.get(&c).map_or(0, |w| w.len());
            let (n_c, m_c) = (components[c].len(), comp_m[c]);
            if n_c + faces != m_c + 2 {
                return Err(Error::Embedding(format!(
                    "component {c} has n={n_c} m={m_c} faces={faces}: rotation system is not planar"
                )));
            }
        }

        // outer designation: required, exactly for edge components
        let mut outer_walk = BTreeMap::new();
        for (&c, &f) in outer {
            let ws = comp_walks.get(&c).ok_or_else(|| {
                Error::Placement(format!("outer face named for component {c}, which has no edges"))
            })?;
            if f >= ws.len() {
                return Err(Error::Placement(format!(
                    "component {c} has {} faces, outer index {f} is out of range",
                    ws.len()
                )));
            }
            outer_walk.insert(c, ws[f]);
        }
        for &c in &edge_comps {
            if !outer_walk.contains_key(&c) {
                return Err(Error::Placement(format!("component {c} has no outer face designated")));
            }
        }

        // placement forest over edge components, rooted at the unbounded region
        let mut placement_map: BTreeMap<usize, Host> = BTreeMap::new();
        for (&c, &host) in placements {
            if !comp_walks.contains_key(&c) {
                return Err(Error::Placement(format!(
                    "placement given for component {c}, which has no edges"
                )));
            }
            placement_map.insert(c, host);
        }
        for &c in &edge_comps {
            placement_map.entry(c).or_insert(Host::Unbounded);
        }
        let check_host = |who: &str, host: Host| -> Result<Option<(usize, usize)>> {
            match host {
                Host::Unbounded => Ok(None),
                Host::Face { component, face } => {
                    let ws = comp_walks.get(&component).ok_or_else(|| {
                        Error::Placement(format!(
                            "{who} placed in component {component}, which has no faces"
                        ))
                    })?;
                    if face >= ws.len() {
                        return Err(Error::Placement(format!(
                            "{who} placed in face {face} of component {component}, which has only {} faces",
                            ws.len()
                        )));
                    }
                    Ok(Some((component, ws[face])))
                }
            }
        };
        for (&c, &host) in &placement_map {
            if let Some((hc, _)) = check_host(&format!("component {c}"), host)? {
                if hc == c {
                    return Err(Error::Placement(format!("component {c} placed inside itself")));
                }
            }
        }
        // walk each host chain; a chain longer than the component count is a cycle
        for &c in &edge_comps {
            let mut cur = c;
            let mut steps = 0;
            while let Host::Face { component, .. } = placement_map[&cur] {
                cur = component;
                steps += 1;
                if steps > edge_comps.len() {
                    return Err(Error::Placement(format!(
                        "placement of component {c} is cyclic"
                    )));
                }
            }
        }

        // isolated-vertex annotations
        let mut isolated_map: BTreeMap<VertexId, Host> = BTreeMap::new();
        for (&v, &host) in isolated {
            if v.0 >= graph.n() {
                return Err(Error::VertexRange { vertex: v.0, n: graph.n() });
            }
            if graph.degree(v) != 0 {
                return Err(Error::Placement(format!(
                    "vertex {v} has edges; only degree-0 vertices take isolated placements"
                )));
            }
            check_host(&format!("vertex {v}"), host)?;
            isolated_map.insert(v, host);
        }
        for v in graph.vertices() {
            if graph.degree(v) == 0 {
                isolated_map.entry(v).or_insert(Host::Unbounded);
            }
        }

        // glue faces: virtual unbounded node = index walks.len()
        let unb = walks.len();
        let mut uf = UnionFind::new(walks.len() + 1);
        for (&c, &host) in &placement_map {
            let ow = outer_walk[&c] as u32;
            match host {
                Host::Unbounded => {
                    uf.union(ow, unb as u32);
                }
                Host::Face { component, face } => {
                    uf.union(ow, comp_walks[&component][face] as u32);
                }
            }
        }
        let mut class_members: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for w in 0..=walks.len() {
            class_members.entry(uf.find(w as u32)).or_default().push(w);
        }
        let unb_root = uf.find(unb as u32);
        let mut ordered: Vec<(u32, Vec<usize>)> = class_members.into_iter().collect();
        // unbounded face first, the rest by least member walk
        ordered.sort_by_key(|(root, members)| (*root != unb_root, members[0]));
        let mut global_faces = Vec::new();
        let mut global_of_walk = vec![usize::MAX; walks.len()];
        for (id, (root, members)) in ordered.into_iter().enumerate() {
            let ws: Vec<usize> = members.into_iter().filter(|&w| w != unb).collect();
            for &w in &ws {
                global_of_walk[w] = id;
            }
            let degree = ws.iter().map(|&w| walks[w].degree()).sum();
            global_faces.push(GlobalFace { id, walks: ws, degree, unbounded: root == unb_root });
        }

        Ok(PlaneMultigraph {
            graph,
            rotation,
            components,
            comp_of_vertex,
            walks,
            walk_of_dart,
            walk_comp,
            walk_local,
            comp_walks,
            outer_walk,
            placements: placement_map,
            isolated: isolated_map,
            global_faces,
            global_of_walk,
        })
    }

    /// Single-edge-component shorthand: designate `outer_face` (a local face
    /// index) and place the component in the unbounded region.
    pub fn single(graph: Multigraph, rotations: Vec<Vec<Dart>>, outer_face: usize) -> Result<Self> {
        let comp_idx = graph.component_index();
        let mut edge_comps = BTreeSet::new();
        for (_, u, _) in graph.edges() {
            edge_comps.insert(comp_idx[u.0]);
        }
        if edge_comps.len() != 1 {
            return Err(Error::Placement(format!(
                "single() needs exactly one edge component, found {}",
                edge_comps.len()
            )));
        }
        let c = *edge_comps.iter().next().unwrap();
        let outer = BTreeMap::from([(c, outer_face)]);
        Self::assemble(graph, rotations, &outer, &BTreeMap::new(), &BTreeMap::new())
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn rotation_system(&self) -> &RotationSystem {
        &self.rotation
    }

    /// Traced per-component face walks, canonical order.
    pub fn walks(&self) -> &[FaceWalk] {
        &self.walks
    }

    pub fn components(&self) -> &[Vec<VertexId>] {
        &self.components
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.comp_of_vertex[v.0]
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Component indices that own at least one edge, ascending.
    pub fn edge_components(&self) -> Vec<usize> {
        self.comp_walks.keys().copied().collect()
    }

    /// Walk ids of one component's faces, in trace order (local face index
    /// = position in this list).
    pub fn component_walks(&self, c: usize) -> &[usize] {
        self.comp_walks.get(&c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn walk_component(&self, walk: usize) -> usize {
        self.walk_comp[walk]
    }

    pub fn walk_local_index(&self, walk: usize) -> usize {
        self.walk_local[walk]
    }

    pub fn walk_of_dart(&self, d: Dart) -> usize {
        self.walk_of_dart[d.0]
    }

    pub fn outer_walk(&self, c: usize) -> Option<usize> {
        self.outer_walk.get(&c).copied()
    }

    pub fn placement(&self, c: usize) -> Option<Host> {
        self.placements.get(&c).copied()
    }

    pub fn isolated_placements(&self) -> &BTreeMap<VertexId, Host> {
        &self.isolated
    }

    /// The plane's faces after placement merges. The unbounded face comes
    /// first; merged degrees add up.
    pub fn global_faces(&self) -> &[GlobalFace] {
        &self.global_faces
    }

    pub fn global_face_count(&self) -> usize {
        self.global_faces.len()
    }

    pub fn global_of_walk(&self, walk: usize) -> usize {
        self.global_of_walk[walk]
    }

    /// Global face on the given side of an edge.
    pub fn global_face_of_dart(&self, d: Dart) -> usize {
        self.global_of_walk[self.walk_of_dart[d.0]]
    }

    /// Global faces of degree exactly 2. Any parallel pair bounding an
    /// otherwise empty region shows up here.
    pub fn two_faces(&self) -> Vec<&GlobalFace> {
        self.global_faces.iter().filter(|f| f.degree == 2).collect()
    }

    /// Every edge contributes its two sides: 2m must equal the sum of
    /// global face degrees.
    pub fn handshake_check(&self) -> bool {
        2 * self.graph.m() == self.global_faces.iter().map(|f| f.degree).sum::<usize>()
    }

    /// Plane version of the Euler count for a possibly disconnected graph:
    /// n - m + faces = 1 + components.
    pub fn euler_check(&self) -> bool {
        self.graph.n() + self.global_face_count() == self.graph.m() + 1 + self.component_count()
    }

    /// With no 2-faces and n >= 3, every face has degree >= 3, so
    /// m <= 3n - 6. Preconditions are errors, a violated bound is `false`.
    pub fn edge_bound_check(&self) -> Result<bool> {
        if self.graph.n() < 3 {
            return Err(Error::TooFewVertices(self.graph.n()));
        }
        if !self.two_faces().is_empty() {
            return Err(Error::TwoFacePresent);
        }
        Ok(self.graph.m() <= 3 * self.graph.n() - 6)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// K4 with outer triangle 0-1-2 and vertex 3 inside. Faces come out as
    /// four triangles; face 0 is the one bounded by the outer triangle.
    pub fn k4_plane() -> PlaneMultigraph {
        let g = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let rot = k4_rotations();
        PlaneMultigraph::single(g, rot, 0).unwrap()
    }

    pub fn k4_rotations() -> Vec<Vec<Dart>> {
        vec![
            vec![Dart(0), Dart(4), Dart(2)],
            vec![Dart(6), Dart(8), Dart(1)],
            vec![Dart(3), Dart(10), Dart(7)],
            vec![Dart(11), Dart(5), Dart(9)],
        ]
    }

    /// Doubled edge on two vertices; both faces have degree 2.
    pub fn doubled_edge_plane() -> PlaneMultigraph {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let rot = vec![vec![Dart(0), Dart(2)], vec![Dart(1), Dart(3)]];
        PlaneMultigraph::single(g, rot, 0).unwrap()
    }
}
