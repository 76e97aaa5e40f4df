//! Exhaustive search for a plane embedding without degree-2 faces.
//!
//! The space is: per edge component, every rotation system (per-vertex
//! cyclic dart orders, the least dart of each vertex pinned as the cycle
//! start); per component, every outer-face designation; and every placement
//! forest. Rotation systems are quotiented by reflection at one anchor
//! vertex per component (maximum degree, ties to the least id): a mirror
//! image has the same face degrees, so only the lexicographically canonical
//! half of each mirror pair is visited.
//!
//! Enumeration order is fixed — components ascending, vertices ascending,
//! rotation tails in lexicographic order, outer faces ascending, placement
//! targets with `unbounded` first — so the witness returned is the first
//! valid embedding in that order, stable across runs.

use std::collections::BTreeMap;

use crate::embedding::{FaceWalk, Dart, Host, PlaneMultigraph};
use crate::multigraph::Multigraph;
use crate::union_find::UnionFind;

/// Default cap on candidates examined (rotation systems traced plus
/// placement assignments tested).
pub const DEFAULT_EMBEDDING_BUDGET: u64 = 10_000_000;

#[derive(Debug)]
pub enum SearchOutcome {
    /// First 2-face-free embedding in enumeration order.
    Found(Box<PlaneMultigraph>),
    /// The whole space was enumerated; no such embedding exists.
    NoWitness,
    /// Budget ran out before the space was exhausted.
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&PlaneMultigraph> {
        match self {
            SearchOutcome::Found(pm) => Some(pm),
            _ => None,
        }
    }
}

pub fn search_2face_free_embedding(g: &Multigraph, budget: u64) -> SearchOutcome {
    let comp_of_vertex = g.component_index();
    let components = g.components();

    let mut comp_m = vec![0usize; components.len()];
    for (_, u, _) in g.edges() {
        comp_m[comp_of_vertex[u.0]] += 1;
    }
    let edge_comps: Vec<usize> = (0..components.len()).filter(|&c| comp_m[c] > 0).collect();

    if edge_comps.is_empty() {
        // nothing bounds a face; the empty plane has no 2-face
        let rotations = vec![Vec::new(); g.n()];
        let pm = PlaneMultigraph::assemble(
            g.clone(),
            rotations,
            &BTreeMap::new(),
            &BTreeMap::new(),
            &BTreeMap::new(),
        )
        .expect("edgeless assembly cannot fail");
        return SearchOutcome::Found(Box::new(pm));
    }

    let mut comps = Vec::new();
    for &c in &edge_comps {
        let mut darts_at: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (e, u, v) in g.edges() {
            if comp_of_vertex[u.0] == c {
                darts_at.entry(u.0).or_default().push(2 * e.0 as u32);
                darts_at.entry(v.0).or_default().push(2 * e.0 as u32 + 1);
            }
        }
        let anchor = darts_at
            .iter()
            .max_by_key(|&(v, ds)| (ds.len(), std::cmp::Reverse(*v)))
            .map(|(v, _)| *v)
            .unwrap();
        let mut darts: Vec<u32> = darts_at.values().flatten().copied().collect();
        darts.sort_unstable();
        let slots: Vec<Slot> = darts_at
            .into_iter()
            .map(|(v, mut ds)| {
                ds.sort_unstable();
                Slot { rot: ds, is_anchor: v == anchor }
            })
            .collect();
        let n_c = components[c].len();
        comps.push(CompSearch { comp: c, slots, darts, expected_faces: 2 + comp_m[c] - n_c });
    }

    let mut s = Searcher {
        g,
        comps,
        succ: vec![0; 2 * g.m()],
        seen: vec![0; 2 * g.m()],
        stamp: 0,
        budget,
        out_of_budget: false,
        chosen_faces: Vec::new(),
        found: None,
    };
    let single = s.comps.len() == 1;
    s.comp_rec(0, single);
    if let Some(pm) = s.found {
        SearchOutcome::Found(Box::new(pm))
    } else if s.out_of_budget {
        SearchOutcome::BudgetExceeded
    } else {
        SearchOutcome::NoWitness
    }
}

struct Slot {
    /// rot[0] is the vertex's least dart and never moves; the tail is
    /// permuted in lexicographic order
    rot: Vec<u32>,
    is_anchor: bool,
}

struct CompSearch {
    comp: usize,
    slots: Vec<Slot>,
    darts: Vec<u32>,
    expected_faces: usize,
}

struct Searcher<'a> {
    g: &'a Multigraph,
    comps: Vec<CompSearch>,
    succ: Vec<u32>,
    seen: Vec<u64>,
    stamp: u64,
    budget: u64,
    out_of_budget: bool,
    /// face walks of the candidate chosen for each component so far
    chosen_faces: Vec<Vec<FaceWalk>>,
    found: Option<PlaneMultigraph>,
}

impl Searcher<'_> {
    fn spend(&mut self) -> bool {
        if self.budget == 0 {
            self.out_of_budget = true;
            return false;
        }
        self.budget -= 1;
        true
    }

    /// Returns true when the search should stop (witness found or budget out).
    fn comp_rec(&mut self, ci: usize, single: bool) -> bool {
        if ci == self.comps.len() {
            return self.placement_stage();
        }
        self.vertex_rec(ci, 0, single)
    }

    fn vertex_rec(&mut self, ci: usize, si: usize, single: bool) -> bool {
        if si == self.comps[ci].slots.len() {
            return self.eval_candidate(ci, single);
        }
        // fresh slot: restart its tail at the lexicographically first order
        self.comps[ci].slots[si].rot[1..].sort_unstable();
        loop {
            let slot = &self.comps[ci].slots[si];
            let admissible = !slot.is_anchor || tail_canonical(&slot.rot[1..]);
            if admissible {
                let rot = &self.comps[ci].slots[si].rot;
                let len = rot.len();
                for i in 0..len {
                    self.succ[rot[i] as usize] = rot[(i + 1) % len];
                }
                if self.vertex_rec(ci, si + 1, single) {
                    return true;
                }
            }
            if !next_permutation(&mut self.comps[ci].slots[si].rot[1..]) {
                return false;
            }
        }
    }

    fn eval_candidate(&mut self, ci: usize, single: bool) -> bool {
        if !self.spend() {
            return true;
        }
        self.stamp += 1;
        let mut faces = 0usize;
        {
            let comp = &self.comps[ci];
            for &start in &comp.darts {
                if self.seen[start as usize] == self.stamp {
                    continue;
                }
                let mut d = start;
                let mut len = 0usize;
                while self.seen[d as usize] != self.stamp {
                    self.seen[d as usize] = self.stamp;
                    len += 1;
                    d = self.succ[(d ^ 1) as usize];
                }
                // with a single edge component no merge can ever lift a
                // degree-2 face, so short walks kill the candidate outright
                if single && len < 3 {
                    return false;
                }
                faces += 1;
            }
            if faces != comp.expected_faces {
                return false;
            }
        }
        // planar candidate: collect its face walks and descend
        self.stamp += 1;
        let mut walks = Vec::new();
        let comp_darts = self.comps[ci].darts.clone();
        for &start in &comp_darts {
            if self.seen[start as usize] == self.stamp {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while self.seen[d as usize] != self.stamp {
                self.seen[d as usize] = self.stamp;
                darts.push(Dart(d as usize));
                d = self.succ[(d ^ 1) as usize];
            }
            walks.push(FaceWalk { darts });
        }
        self.chosen_faces.push(walks);
        let stop = self.comp_rec(ci + 1, single);
        if !stop {
            self.chosen_faces.pop();
        }
        stop
    }

    /// All components hold a planar candidate; enumerate outer designations
    /// and placement forests until the merged faces all avoid degree 2.
    fn placement_stage(&mut self) -> bool {
        let k = self.comps.len();
        let mut outer = vec![0usize; k];
        loop {
            let mut placement: Vec<Option<Host>> = vec![None; k];
            if self.place_rec(0, &outer, &mut placement) {
                return true;
            }
            // odometer over outer-face choices
            let mut i = 0;
            loop {
                if i == k {
                    return false;
                }
                outer[i] += 1;
                if outer[i] < self.chosen_faces[i].len() {
                    break;
                }
                outer[i] = 0;
                i += 1;
            }
        }
    }

    fn place_rec(&mut self, i: usize, outer: &[usize], placement: &mut Vec<Option<Host>>) -> bool {
        let k = self.comps.len();
        if i == k {
            return self.test_assignment(outer, placement);
        }
        // unbounded first, then faces of other components in order
        placement[i] = Some(Host::Unbounded);
        if self.place_rec(i + 1, outer, placement) {
            return true;
        }
        for j in 0..k {
            if j == i {
                continue;
            }
            // following already-assigned hosts from j must not lead back to i
            let mut cur = j;
            let cyclic = loop {
                if cur == i {
                    break true;
                }
                match placement[cur] {
                    Some(Host::Face { component, .. }) => {
                        cur = self.comps.iter().position(|c| c.comp == component).unwrap();
                    }
                    _ => break false,
                }
            };
            if cyclic {
                continue;
            }
            for f in 0..self.chosen_faces[j].len() {
                placement[i] = Some(Host::Face { component: self.comps[j].comp, face: f });
                if self.place_rec(i + 1, outer, placement) {
                    return true;
                }
            }
        }
        placement[i] = None;
        false
    }

    fn test_assignment(&mut self, outer: &[usize], placement: &[Option<Host>]) -> bool {
        if !self.spend() {
            return true;
        }
        let k = self.comps.len();
        // walk ids: faces of component i start at offset[i]; last id = unbounded
        let mut offset = vec![0usize; k + 1];
        for i in 0..k {
            offset[i + 1] = offset[i] + self.chosen_faces[i].len();
        }
        let total = offset[k];
        let mut uf = UnionFind::new(total + 1);
        for i in 0..k {
            let ow = (offset[i] + outer[i]) as u32;
            match placement[i].unwrap() {
                Host::Unbounded => {
                    uf.union(ow, total as u32);
                }
                Host::Face { component, face } => {
                    let j = self.comps.iter().position(|c| c.comp == component).unwrap();
                    uf.union(ow, (offset[j] + face) as u32);
                }
            }
        }
        let mut class_degree: BTreeMap<u32, usize> = BTreeMap::new();
        for (off, faces) in offset.iter().zip(&self.chosen_faces) {
            for (f, walk) in faces.iter().enumerate() {
                *class_degree.entry(uf.find((off + f) as u32)).or_default() += walk.degree();
            }
        }
        class_degree.entry(uf.find(total as u32)).or_default();
        if class_degree.values().any(|&d| d == 2) {
            return false;
        }

        // witness: assemble from the current slot rotations
        let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); self.g.n()];
        for comp in &self.comps {
            for slot in &comp.slots {
                let v = dart_vertex(self.g, slot.rot[0]);
                rotations[v] = slot.rot.iter().map(|&d| Dart(d as usize)).collect();
            }
        }
        let outer_map: BTreeMap<usize, usize> =
            (0..k).map(|i| (self.comps[i].comp, outer[i])).collect();
        let placement_map: BTreeMap<usize, Host> = (0..k)
            .filter_map(|i| placement[i].map(|h| (self.comps[i].comp, h)))
            .collect();
        let pm = PlaneMultigraph::assemble(
            self.g.clone(),
            rotations,
            &outer_map,
            &placement_map,
            &BTreeMap::new(),
        )
        .expect("searched candidate must assemble");
        debug_assert!(pm.two_faces().is_empty());
        self.found = Some(pm);
        true
    }
}

fn dart_vertex(g: &Multigraph, d: u32) -> usize {
    let (lo, hi) = g.endpoints(crate::multigraph::EdgeId((d >> 1) as usize));
    if d.is_multiple_of(2) {
        lo.0
    } else {
        hi.0
    }
}

/// tail <= reverse(tail) lexicographically: keeps one of each mirror pair
fn tail_canonical(tail: &[u32]) -> bool {
    let n = tail.len();
    for i in 0..n {
        match tail[i].cmp(&tail[n - 1 - i]) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    true
}

/// Lexicographic successor in place; false once the last permutation wraps.
fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
