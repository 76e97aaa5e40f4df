//! Certified transformations between multigraphs, with transport of forest
//! certificates and bounds across each one.
//!
//! The central reduction replaces each doubled edge by a path of length two
//! (`subdivide_parallel`): a graph whose parallel pairs all have
//! multiplicity 2 becomes simple, gains one vertex per pair, and its
//! maximum induced forest grows by exactly the pair count. Certificates
//! move in both directions (`lift_forest_subdivision`,
//! `project_forest_subdivision`), and any lower bound for simple graphs
//! transfers back through the same arithmetic (`schema_bound`).
//!
//! `normalize_multiplicity` prepares plane multigraphs for that pipeline:
//! it deletes surplus copies of any edge with multiplicity three or more.
//! Deleting such a copy merges its two sides, which are distinct faces of
//! degree at least 3 whenever the drawing has no 2-face, so the merged face
//! has degree at least 4 and 2-face-freeness is preserved; the surviving
//! pair keeps the endpoint constraint, so the maximum induced forest is
//! untouched.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::embedding::{Dart, Host, PlaneMultigraph, RotationSystem};
use crate::multigraph::{EdgeId, Multigraph, VertexId};
use crate::solvers::{AcyclicColoring, CertificateKind, ForestCertificate};
use crate::{Error, Result};

/// Names the transformation that produced a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    Dedup,
    TrimParallel,
    Double,
    SubdivideParallel,
    NormalizeMultiplicity,
}

/// One applied reduction: both graphs and how vertices travel across.
#[derive(Clone, Debug)]
pub struct ReductionRecord {
    pub kind: ReductionKind,
    pub input: Multigraph,
    pub output: Multigraph,
    /// input vertex -> output vertex (identity for all reductions here)
    pub vertex_map: Vec<VertexId>,
    /// output vertices that do not come from the input (subdivision points),
    /// ascending
    pub added_vertices: Vec<VertexId>,
    /// how many parallel pairs (or surplus copies) the reduction acted on
    pub k: usize,
}

/// Keeps the first edge of every endpoint pair, dropping the rest.
pub fn dedup(g: &Multigraph) -> ReductionRecord {
    let mut seen = BTreeMap::new();
    let mut out = Multigraph::new(g.n());
    let mut dropped = 0usize;
    for (_, u, v) in g.edges() {
        if seen.insert((u, v), ()).is_none() {
            out.add_edge(u.0, v.0).expect("edge was valid in the input");
        } else {
            dropped += 1;
        }
    }
    ReductionRecord {
        kind: ReductionKind::Dedup,
        input: g.clone(),
        output: out,
        vertex_map: g.vertices().collect(),
        added_vertices: Vec::new(),
        k: dropped,
    }
}

/// Caps every multiplicity at 2 by keeping the two least copies of each
/// over-full pair. A vertex set induces a forest before exactly when it
/// does after (the surviving pair keeps the endpoint constraint), so the
/// maximum induced forest is unchanged, and the result is ready for
/// `subdivide_parallel`. `k` counts the dropped copies.
pub fn trim_parallel(g: &Multigraph) -> ReductionRecord {
    let mut kept: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    let mut out = Multigraph::new(g.n());
    let mut dropped = 0usize;
    for (_, u, v) in g.edges() {
        let seen = kept.entry((u, v)).or_insert(0);
        if *seen < 2 {
            *seen += 1;
            out.add_edge(u.0, v.0).expect("edge was valid in the input");
        } else {
            dropped += 1;
        }
    }
    ReductionRecord {
        kind: ReductionKind::TrimParallel,
        input: g.clone(),
        output: out,
        vertex_map: g.vertices().collect(),
        added_vertices: Vec::new(),
        k: dropped,
    }
}

/// Replaces every edge of a simple graph by two parallel copies; edge `e`
/// becomes edges `2e` and `2e + 1`.
pub fn double(g: &Multigraph) -> Result<ReductionRecord> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut out = Multigraph::new(g.n());
    for (_, u, v) in g.edges() {
        out.add_edge(u.0, v.0)?;
        out.add_edge(u.0, v.0)?;
    }
    Ok(ReductionRecord {
        kind: ReductionKind::Double,
        input: g.clone(),
        output: out,
        vertex_map: g.vertices().collect(),
        added_vertices: Vec::new(),
        k: g.m(),
    })
}

/// Subdivides the lower-id edge of every parallel pair: pair `i` (pairs in
/// endpoint order) gains vertex `n + i`, and the graph becomes simple.
/// Surviving edges keep their input order, then the two half-edges of each
/// pair follow, pair by pair. Requires every multiplicity to be exactly 2.
pub fn subdivide_parallel(g: &Multigraph) -> Result<ReductionRecord> {
    let pairs = g.parallel_pairs();
    if let Some(p) = pairs.pairs.iter().find(|p| p.multiplicity != 2) {
        return Err(Error::MultiplicityNotTwo { u: p.u.0, v: p.v.0, mult: p.multiplicity });
    }
    let k = pairs.count();
    let subdivided: BTreeMap<EdgeId, usize> = pairs
        .pairs
        .iter()
        .enumerate()
        .map(|(i, p)| (p.edges[0], i))
        .collect();
    let mut out = Multigraph::new(g.n() + k);
    for (e, u, v) in g.edges() {
        if !subdivided.contains_key(&e) {
            out.add_edge(u.0, v.0)?;
        }
    }
    for (i, p) in pairs.pairs.iter().enumerate() {
        let w = g.n() + i;
        out.add_edge(p.u.0, w)?;
        out.add_edge(w, p.v.0)?;
    }
    debug_assert!(out.is_simple());
    Ok(ReductionRecord {
        kind: ReductionKind::SubdivideParallel,
        input: g.clone(),
        output: out,
        vertex_map: g.vertices().collect(),
        added_vertices: (g.n()..g.n() + k).map(VertexId).collect(),
        k,
    })
}

/// Lifts a forest certificate across `subdivide_parallel`: every
/// subdivision vertex joins the forest. A subdivision vertex sees at most
/// one chosen endpoint (both endpoints of a pair can never be in a forest
/// of the input), so it attaches as a leaf and the result is again a
/// forest, `k` vertices larger.
pub fn lift_forest_subdivision(
    record: &ReductionRecord,
    cert: &ForestCertificate,
) -> Result<ForestCertificate> {
    expect_kind(record, ReductionKind::SubdivideParallel)?;
    if cert.kind != CertificateKind::InducedForest || !cert.verify(&record.input)? {
        return Err(Error::Certificate(
            "lift needs a valid induced-forest certificate for the reduction input".into(),
        ));
    }
    let mut vertices = cert.vertices.clone();
    vertices.extend(record.added_vertices.iter().copied());
    vertices.sort();
    let lifted = ForestCertificate {
        kind: CertificateKind::InducedForest,
        value: vertices.len(),
        vertices,
    };
    if !lifted.verify(&record.output)? {
        return Err(Error::Certificate("lifted set is not a forest in the output".into()));
    }
    Ok(lifted)
}

/// Projects a forest certificate back across `subdivide_parallel`:
/// subdivision vertices are dropped, and for any pair with both endpoints
/// still present the higher endpoint is dropped (in the input they would
/// close a 2-cycle). Each pair accounts for at most one lost vertex, so the
/// projected value is at least `cert.value - k`.
pub fn project_forest_subdivision(
    record: &ReductionRecord,
    cert: &ForestCertificate,
) -> Result<ForestCertificate> {
    expect_kind(record, ReductionKind::SubdivideParallel)?;
    if cert.kind != CertificateKind::InducedForest || !cert.verify(&record.output)? {
        return Err(Error::Certificate(
            "projection needs a valid induced-forest certificate for the reduction output".into(),
        ));
    }
    let keep: Vec<VertexId> =
        cert.vertices.iter().copied().filter(|v| v.0 < record.input.n()).collect();
    let projected = repair_forest_by_removal(&record.input, &keep)?;
    if projected.value + record.k < cert.value {
        return Err(Error::Certificate(format!(
            "projection lost more than k = {} vertices: {} -> {}",
            record.k, cert.value, projected.value
        )));
    }
    Ok(projected)
}

/// Turns a forest of the underlying simple graph into a forest of the
/// multigraph: for every parallel pair with both endpoints present, the
/// higher endpoint is removed (endpoint order, skipping pairs an earlier
/// removal already broke).
pub fn repair_forest_by_removal(g: &Multigraph, set: &[VertexId]) -> Result<ForestCertificate> {
    let simple = dedup(g);
    if !simple.output.is_induced_forest(set)? {
        return Err(Error::Certificate(
            "repair needs a set inducing a forest in the underlying simple graph".into(),
        ));
    }
    let mut present = vec![false; g.n()];
    for &v in set {
        present[v.0] = true;
    }
    for pair in g.parallel_pairs().pairs {
        if present[pair.u.0] && present[pair.v.0] {
            present[pair.v.0.max(pair.u.0)] = false;
        }
    }
    let vertices: Vec<VertexId> = g.vertices().filter(|v| present[v.0]).collect();
    let cert = ForestCertificate {
        kind: CertificateKind::InducedForest,
        value: vertices.len(),
        vertices,
    };
    if !cert.verify(g)? {
        return Err(Error::Certificate("repaired set is not a forest in the multigraph".into()));
    }
    Ok(cert)
}

/// Extracts an induced forest from an acyclic coloring of the underlying
/// simple graph: the union of two color classes induces a forest there, and
/// `repair_forest_by_removal` breaks the parallel pairs inside it. Picks
/// the class pair maximizing `|C_i| + |C_j| - k_ij`, where `k_ij` counts
/// the parallel pairs with both endpoints in the union; ties go to the
/// first pair in index order. The certificate is at least that large.
pub fn extract_forest_from_coloring(
    g: &Multigraph,
    coloring: &AcyclicColoring,
) -> Result<ForestCertificate> {
    if coloring.c < 2 {
        return Err(Error::Coloring("forest extraction needs at least two colors".into()));
    }
    let simple = dedup(g);
    crate::solvers::verify_acyclic_coloring(&simple.output, coloring)?;
    let classes = coloring.classes();
    let pairs = g.parallel_pairs();
    let mut best: Option<(i64, (usize, usize))> = None;
    for i in 0..coloring.c {
        for j in i + 1..coloring.c {
            let inside = |v: VertexId| coloring.colors[v.0] == i || coloring.colors[v.0] == j;
            let k_ij =
                pairs.pairs.iter().filter(|p| inside(p.u) && inside(p.v)).count();
            let score = (classes[i].len() + classes[j].len()) as i64 - k_ij as i64;
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, (i, j)));
            }
        }
    }
    let (score, (i, j)) = best.expect("c >= 2 always yields a candidate pair");
    let mut union: Vec<VertexId> = classes[i].iter().chain(classes[j].iter()).copied().collect();
    union.sort();
    let cert = repair_forest_by_removal(g, &union)?;
    if (cert.value as i64) < score {
        return Err(Error::Certificate(format!(
            "extraction fell short of its own count: {} < {score}",
            cert.value
        )));
    }
    Ok(cert)
}

/// Lower bounds for the maximum induced forest of *simple* planar graphs,
/// usable as inputs to `schema_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleBound {
    /// a(G) >= 2n/5 holds for every simple planar graph.
    TwoFifths,
    /// a(G) >= n/2 is conjectural; anything derived from it is conditional.
    ConjecturalHalf,
}

impl SimpleBound {
    pub fn value(self, n: usize) -> Rational64 {
        match self {
            SimpleBound::TwoFifths => Rational64::new(2 * n as i64, 5),
            SimpleBound::ConjecturalHalf => Rational64::new(n as i64, 2),
        }
    }

    pub fn conditional(self) -> bool {
        matches!(self, SimpleBound::ConjecturalHalf)
    }
}

/// Transports a simple-planar lower bound through the subdivision
/// reduction: a plane multigraph with `n` vertices and `k` parallel pairs
/// (multiplicity 2) subdivides to a simple plane graph on `n + k` vertices,
/// and projecting back costs at most `k`, so `a >= bound(n + k) - k`.
pub fn schema_bound(bound: SimpleBound, n: usize, k: usize) -> Rational64 {
    bound.value(n + k) - Rational64::from_integer(k as i64)
}

/// Deletes surplus parallel copies until every multiplicity is exactly 2,
/// keeping the drawing planar and 2-face-free and the maximum induced
/// forest unchanged. Works on the lexicographically least over-full pair
/// each round, deleting its highest-id copy.
pub fn normalize_multiplicity(
    pm: &PlaneMultigraph,
) -> Result<(PlaneMultigraph, ReductionRecord)> {
    if !pm.two_faces().is_empty() {
        return Err(Error::TwoFacePresent);
    }
    let mut cur = pm.clone();
    let mut deletions = 0usize;
    loop {
        let target = cur
            .graph()
            .parallel_pairs()
            .pairs
            .into_iter()
            .find(|p| p.multiplicity > 2);
        let Some(pair) = target else { break };
        let e = *pair.edges.last().expect("an over-full pair has edges");
        cur = delete_parallel_copy(&cur, e)?;
        deletions += 1;
    }
    debug_assert!(cur.two_faces().is_empty());
    let record = ReductionRecord {
        kind: ReductionKind::NormalizeMultiplicity,
        input: pm.graph().clone(),
        output: cur.graph().clone(),
        vertex_map: pm.graph().vertices().collect(),
        added_vertices: Vec::new(),
        k: deletions,
    };
    Ok((cur, record))
}

/// Deletes one edge that has a parallel copy, rebuilding the embedding.
/// The two faces beside the edge merge; every face designation (outer
/// faces, placements, isolated hosts) is carried across by a surviving
/// representative dart.
fn delete_parallel_copy(pm: &PlaneMultigraph, e: EdgeId) -> Result<PlaneMultigraph> {
    let g = pm.graph();
    // a parallel copy keeps the edge off any bridge, so its sides differ
    let rep_of_walk = |walk: usize| -> Dart {
        pm.walks()[walk]
            .darts
            .iter()
            .copied()
            .find(|d| d.edge() != e)
            .expect("faces beside a parallel copy have degree >= 3, so a non-deleted dart exists")
    };
    let rep_host = |host: Host| -> Result<Host2> {
        Ok(match host {
            Host::Unbounded => Host2::Unbounded,
            Host::Face { component, face } => {
                let walk = pm.component_walks(component)[face];
                Host2::Face(component, rep_of_walk(walk))
            }
        })
    };
    let outer_reps: BTreeMap<usize, Dart> = pm
        .edge_components()
        .into_iter()
        .map(|c| (c, rep_of_walk(pm.outer_walk(c).expect("edge component has an outer walk"))))
        .collect();
    let mut placement_reps: BTreeMap<usize, Host2> = BTreeMap::new();
    for c in pm.edge_components() {
        placement_reps.insert(c, rep_host(pm.placement(c).expect("placement is defaulted"))?);
    }
    let mut isolated_reps: BTreeMap<VertexId, Host2> = BTreeMap::new();
    for (&v, &host) in pm.isolated_placements() {
        isolated_reps.insert(v, rep_host(host)?);
    }

    let mut out = Multigraph::new(g.n());
    for (eid, u, v) in g.edges() {
        if eid != e {
            out.add_edge(u.0, v.0)?;
        }
    }
    let remap = |d: Dart| -> Dart {
        if d.0 >= 2 * e.0 + 2 { Dart(d.0 - 2) } else { d }
    };
    let rotations: Vec<Vec<Dart>> = g
        .vertices()
        .map(|v| {
            pm.rotation_system()
                .rotation(v)
                .iter()
                .copied()
                .filter(|d| d.edge() != e)
                .map(remap)
                .collect()
        })
        .collect();

    // locate each representative dart's face in the new tracing
    let rs = RotationSystem::new(&out, rotations.clone())?;
    let walks = rs.trace_faces();
    let comp_of_vertex = out.component_index();
    let mut local_of_dart: BTreeMap<Dart, (usize, usize)> = BTreeMap::new();
    let mut next_local: BTreeMap<usize, usize> = BTreeMap::new();
    for walk in &walks {
        let c = comp_of_vertex[crate::embedding::dart_tail(&out, walk.darts[0]).0];
        let local = *next_local.entry(c).and_modify(|l| *l += 1).or_insert(0);
        for &d in &walk.darts {
            local_of_dart.insert(d, (c, local));
        }
    }
    let locate = |d: Dart| -> (usize, usize) {
        local_of_dart[&remap(d)]
    };

    let outer: BTreeMap<usize, usize> =
        outer_reps.into_iter().map(|(c, d)| (c, locate(d).1)).collect();
    let placements: BTreeMap<usize, Host> = placement_reps
        .into_iter()
        .map(|(c, h)| {
            let host = match h {
                Host2::Unbounded => Host::Unbounded,
                Host2::Face(hc, d) => Host::Face { component: hc, face: locate(d).1 },
            };
            (c, host)
        })
        .collect();
    let isolated: BTreeMap<VertexId, Host> = isolated_reps
        .into_iter()
        .map(|(v, h)| {
            let host = match h {
                Host2::Unbounded => Host::Unbounded,
                Host2::Face(hc, d) => Host::Face { component: hc, face: locate(d).1 },
            };
            (v, host)
        })
        .collect();
    PlaneMultigraph::assemble(out, rotations, &outer, &placements, &isolated)
}

/// Host with the face pinned by a dart instead of a (soon stale) index.
enum Host2 {
    Unbounded,
    Face(usize, Dart),
}

fn expect_kind(record: &ReductionRecord, kind: ReductionKind) -> Result<()> {
    if record.kind != kind {
        return Err(Error::Certificate(format!(
            "record of kind {:?} used where {kind:?} was required",
            record.kind
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{find_acyclic_coloring, max_induced_forest, ColoringOutcome};
    use std::collections::BTreeMap;

    fn k4() -> Multigraph {
        Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn doubled_k4() -> Multigraph {
        let mut g = Multigraph::new(4);
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            g.add_edge(u, v).unwrap();
            g.add_edge(u, v).unwrap();
        }
        g
    }

    /// `t` parallel edges on {0, 1} drawn as a fan, plus one K2 filler in
    /// each of the `t` regions so no face has degree 2.
    fn filled_fan(t: usize) -> PlaneMultigraph {
        let n = 2 + 2 * t;
        let mut g = Multigraph::new(n);
        for _ in 0..t {
            g.add_edge(0, 1).unwrap();
        }
        for i in 0..t {
            g.add_edge(2 + 2 * i, 3 + 2 * i).unwrap();
        }
        let mut rotations = vec![Vec::new(); n];
        rotations[0] = (0..t).map(|i| Dart(2 * i)).collect();
        rotations[1] = (0..t).rev().map(|i| Dart(2 * i + 1)).collect();
        for i in 0..t {
            rotations[2 + 2 * i] = vec![Dart(2 * t + 2 * i)];
            rotations[3 + 2 * i] = vec![Dart(2 * t + 2 * i + 1)];
        }
        // fan faces: local 0 pairs the first and last copies (the outer
        // side); local i pairs copies i-1 and i
        let mut outer = BTreeMap::from([(0, 0)]);
        let mut placements = BTreeMap::new();
        for i in 0..t {
            let c = 1 + i;
            outer.insert(c, 0);
            if i > 0 {
                placements.insert(c, Host::Face { component: 0, face: i });
            }
        }
        PlaneMultigraph::assemble(g, rotations, &outer, &placements, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn dedup_inverts_double() {
        let g = k4();
        let doubled = double(&g).unwrap();
        assert_eq!(doubled.output.m(), 12);
        assert_eq!(doubled.output, doubled_k4());
        let back = dedup(&doubled.output);
        assert_eq!(back.output, g);
        assert_eq!(back.k, 6);
        assert!(double(&doubled.output).is_err());
    }

    #[test]
    fn subdivision_structure() {
        let g = doubled_k4();
        let rec = subdivide_parallel(&g).unwrap();
        assert_eq!(rec.k, 6);
        assert_eq!(rec.output.n(), 10);
        assert_eq!(rec.output.m(), 18);
        assert!(rec.output.is_simple());
        assert_eq!(rec.added_vertices.len(), 6);
        // multiplicity other than two is refused
        let mut five = Multigraph::new(2);
        for _ in 0..5 {
            five.add_edge(0, 1).unwrap();
        }
        assert!(matches!(
            subdivide_parallel(&five),
            Err(Error::MultiplicityNotTwo { mult: 5, .. })
        ));
    }

    #[test]
    fn subdivision_shifts_the_optimum_by_k() {
        for g in [doubled_k4(), {
            let mut t = Multigraph::new(3);
            for (u, v) in [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)] {
                t.add_edge(u, v).unwrap();
            }
            t
        }] {
            let rec = subdivide_parallel(&g).unwrap();
            let a_in = max_induced_forest(&g);
            let a_out = max_induced_forest(&rec.output);
            assert_eq!(a_out.value, a_in.value + rec.k);

            let lifted = lift_forest_subdivision(&rec, &a_in).unwrap();
            assert_eq!(lifted.value, a_in.value + rec.k);
            assert!(lifted.verify(&rec.output).unwrap());

            let projected = project_forest_subdivision(&rec, &a_out).unwrap();
            assert!(projected.verify(&g).unwrap());
            assert!(projected.value + rec.k >= a_out.value);
            assert_eq!(projected.value, a_in.value);
        }
    }

    #[test]
    fn trimming_caps_multiplicities_without_moving_the_optimum() {
        let mut s = crate::sampler::Sampler::new(29);
        let mut trimmed_something = false;
        for _ in 0..40 {
            let g = s.multigraph(7);
            let rec = trim_parallel(&g);
            assert!(rec.output.parallel_pairs().all_multiplicity_two());
            assert_eq!(
                rec.output.parallel_pairs().count(),
                g.parallel_pairs().count()
            );
            assert_eq!(g.m(), rec.output.m() + rec.k);
            assert_eq!(
                max_induced_forest(&g).value,
                max_induced_forest(&rec.output).value
            );
            trimmed_something |= rec.k > 0;
        }
        assert!(trimmed_something);
    }

    #[test]
    fn lift_rejects_invalid_certificates() {
        let g = doubled_k4();
        let rec = subdivide_parallel(&g).unwrap();
        let bogus = ForestCertificate {
            kind: CertificateKind::InducedForest,
            vertices: vec![VertexId(0), VertexId(1)],
            value: 2,
        };
        assert!(lift_forest_subdivision(&rec, &bogus).is_err());
        let wrong_kind = ReductionRecord { kind: ReductionKind::Dedup, ..rec.clone() };
        let good = max_induced_forest(&g);
        assert!(lift_forest_subdivision(&wrong_kind, &good).is_err());
    }

    #[test]
    fn repair_breaks_each_pair_once() {
        let g = doubled_k4();
        // {0, 1} is a forest of the simple K4 but spans a doubled pair
        let cert = repair_forest_by_removal(&g, &[VertexId(0), VertexId(1)]).unwrap();
        assert_eq!(cert.vertices, vec![VertexId(0)]);
        // a set that is not even a simple-graph forest is refused
        assert!(repair_forest_by_removal(&g, &[VertexId(0), VertexId(1), VertexId(2)]).is_err());
    }

    #[test]
    fn extraction_from_coloring() {
        let g = doubled_k4();
        let simple = dedup(&g).output;
        let coloring = match find_acyclic_coloring(&simple, 4, 1_000_000).unwrap() {
            ColoringOutcome::Found(col) => col,
            other => panic!("expected coloring, got {other:?}"),
        };
        // every class pair scores |Ci| + |Cj| - k_ij = 2 - 1 = 1
        let cert = extract_forest_from_coloring(&g, &coloring).unwrap();
        assert_eq!(cert.value, 1);
        assert!(cert.verify(&g).unwrap());

        // on a simple graph the extraction is just the best two classes
        let p4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let coloring = match find_acyclic_coloring(&p4, 2, 1_000).unwrap() {
            ColoringOutcome::Found(col) => col,
            other => panic!("expected coloring, got {other:?}"),
        };
        let cert = extract_forest_from_coloring(&p4, &coloring).unwrap();
        assert_eq!(cert.value, 4);
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(schema_bound(SimpleBound::TwoFifths, 10, 0), Rational64::from_integer(4));
        // doubled K4: n = 4, k = 6 -> 2*10/5 - 6 = -2
        assert_eq!(schema_bound(SimpleBound::TwoFifths, 4, 6), Rational64::from_integer(-2));
        assert_eq!(
            schema_bound(SimpleBound::ConjecturalHalf, 4, 6),
            Rational64::from_integer(-1)
        );
        assert!(SimpleBound::ConjecturalHalf.conditional());
        assert!(!SimpleBound::TwoFifths.conditional());
    }

    #[test]
    fn normalization_trims_a_triple_edge() {
        let pm = filled_fan(3);
        assert!(pm.two_faces().is_empty());
        let before = max_induced_forest(pm.graph()).value;
        let (out, rec) = normalize_multiplicity(&pm).unwrap();
        assert_eq!(rec.k, 1);
        assert_eq!(out.graph().m(), pm.graph().m() - 1);
        assert!(out.graph().parallel_pairs().all_multiplicity_two());
        assert!(out.two_faces().is_empty());
        assert!(out.euler_check());
        assert!(out.handshake_check());
        assert_eq!(max_induced_forest(out.graph()).value, before);
    }

    #[test]
    fn normalization_trims_a_quintuple_edge() {
        let pm = filled_fan(5);
        assert!(pm.two_faces().is_empty());
        let before = max_induced_forest(pm.graph()).value;
        let (out, rec) = normalize_multiplicity(&pm).unwrap();
        assert_eq!(rec.k, 3);
        assert!(out.graph().parallel_pairs().all_multiplicity_two());
        assert!(out.two_faces().is_empty());
        assert!(out.euler_check());
        assert!(out.handshake_check());
        assert_eq!(max_induced_forest(out.graph()).value, before);
        // already-normal graphs pass through untouched
        let (again, rec2) = normalize_multiplicity(&out).unwrap();
        assert_eq!(rec2.k, 0);
        assert_eq!(again.graph(), out.graph());
    }

    #[test]
    fn normalization_requires_two_face_freeness() {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let rotations = vec![
            vec![Dart(0), Dart(2), Dart(4)],
            vec![Dart(5), Dart(3), Dart(1)],
        ];
        let pm = PlaneMultigraph::single(g, rotations, 0).unwrap();
        assert!(matches!(normalize_multiplicity(&pm), Err(Error::TwoFacePresent)));
    }
}
