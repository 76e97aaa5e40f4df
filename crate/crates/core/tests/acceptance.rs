//! Acceptance suite: one test per claimed guarantee, each printing a single
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).
//! Every comparison is exact — integer or rational — and the time budgets
//! are pinned as constants next to the criteria they gate.

use std::time::{Duration, Instant};

use num_rational::Rational64;

use ifl_core::discharging::{run_discharging, ChargeEntity, DischargeRule, WeightedRootedForest};
use ifl_core::discharging::forest_weight_check;
use ifl_core::embedding::search::{search_2face_free_embedding, SearchOutcome};
use ifl_core::embedding::PlaneMultigraph;
use ifl_core::generators::{
    gen_doubled_k4_copies, gen_sealed_tower, generate, Family,
};
use ifl_core::multigraph::Multigraph;
use ifl_core::reductions::{dedup, double, extract_forest_from_coloring, subdivide_parallel, trim_parallel};
use ifl_core::sampler::Sampler;
use ifl_core::solvers::{
    find_acyclic_coloring, max_independent_set, max_induced_forest, max_induced_linear_forest,
    ColoringOutcome,
};
use ifl_core::Error;

/// Prints the criterion's verdict line, then fails the test with the
/// collected evidence if anything went wrong.
fn conclude(number: usize, name: &str, elapsed: Duration, failures: Vec<String>) {
    let verdict = if failures.is_empty() { "pass" } else { "FAIL" };
    println!("criterion {number:02} {name}: {verdict} ({elapsed:.2?})");
    assert!(
        failures.is_empty(),
        "criterion {number:02} {name} failed:\n{}",
        failures.join("\n")
    );
}

fn check_time(elapsed: Duration, budget: Duration, failures: &mut Vec<String>) {
    if elapsed > budget {
        failures.push(format!("took {elapsed:.2?}, budget {budget:.2?}"));
    }
}

const C1_TIME: Duration = Duration::from_secs(5);

/// Doubled K4 blocks are exactly quarter-tight: k blocks have 4k vertices
/// and a largest induced forest of size k.
#[test]
fn acceptance_01_quarter_tight_family() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 1..=4 {
        let inst = gen_doubled_k4_copies(k).expect("family generates");
        let a = max_induced_forest(inst.pm.graph()).value;
        if a != k {
            failures.push(format!("k={k}: solver found {a}, expected {k}"));
        }
    }
    check_time(start.elapsed(), C1_TIME, &mut failures);
    conclude(1, "quarter-tight-family", start.elapsed(), failures);
}

const C2_TIME: Duration = Duration::from_secs(60);
const C2_INSTANCES: usize = 200;

/// Subdividing one copy of every doubled edge (after trimming higher
/// multiplicities to two) moves the optimum up by exactly the pair count.
#[test]
fn acceptance_02_subdivision_equality() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut sampler = Sampler::new(402);
    let mut tested = 0usize;
    let mut seedless_rounds = 0usize;
    while tested < C2_INSTANCES {
        let g = sampler.multigraph(9);
        let pairs = g.parallel_pairs().count();
        if pairs == 0 {
            seedless_rounds += 1;
            assert!(seedless_rounds < 10_000, "sampler starved of paired instances");
            continue;
        }
        let trimmed = trim_parallel(&g);
        let record = subdivide_parallel(&trimmed.output).expect("trimmed pairs are doubled");
        let a_orig = max_induced_forest(&g).value;
        let a_sub = max_induced_forest(&record.output).value;
        if a_sub != a_orig + pairs {
            failures.push(format!(
                "instance {tested}: a(subdivided)={a_sub}, a(original)={a_orig}, pairs={pairs}"
            ));
        }
        tested += 1;
    }
    check_time(start.elapsed(), C2_TIME, &mut failures);
    conclude(2, "subdivision-equality", start.elapsed(), failures);
}

const C3_TIME: Duration = Duration::from_secs(60);
const C3_INSTANCES: usize = 500;

/// Doubling every edge of a simple graph turns the maximum induced forest
/// into the maximum independent set.
#[test]
fn acceptance_03_doubling_equality() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut sampler = Sampler::new(403);
    for i in 0..C3_INSTANCES {
        let g = sampler.simple_graph(7);
        let doubled = double(&g).expect("sampled graph is simple");
        let alpha = max_independent_set(&g).value;
        let a = max_induced_forest(&doubled.output).value;
        if a != alpha {
            failures.push(format!("instance {i}: a(doubled)={a}, alpha={alpha}"));
        }
    }
    check_time(start.elapsed(), C3_TIME, &mut failures);
    conclude(3, "doubling-equality", start.elapsed(), failures);
}

const C4_TIME: Duration = Duration::from_secs(30);

/// The sealed towers hit a = 3n/7 + 4/7 with no 2-face anywhere.
#[test]
fn acceptance_04_sealed_tower_family() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 1..=3 {
        let inst = gen_sealed_tower(k).expect("family generates");
        let n = inst.pm.graph().n();
        if n != 7 * k + 1 {
            failures.push(format!("k={k}: n={n}, expected {}", 7 * k + 1));
        }
        if !inst.pm.two_faces().is_empty() {
            failures.push(format!("k={k}: drawing has 2-faces"));
        }
        let a = max_induced_forest(inst.pm.graph()).value;
        if a != 3 * k + 1 {
            failures.push(format!("k={k}: a={a}, expected {}", 3 * k + 1));
        }
        // 3n/7 + 4/7 lands exactly on the integer the solver returns
        let bound = Rational64::new(3 * n as i64 + 4, 7);
        if Rational64::from_integer(a as i64) != bound {
            failures.push(format!("k={k}: a={a} is not 3n/7+4/7={bound}"));
        }
    }
    check_time(start.elapsed(), C4_TIME, &mut failures);
    conclude(4, "sealed-tower-family", start.elapsed(), failures);
}

const C5_TIME: Duration = Duration::from_secs(120);
const C5_BUDGET: u64 = 200_000_000;

/// The doubled K4 admits no 2-face-free drawing: the rotation/placement
/// space is exhausted, not merely sampled.
#[test]
fn acceptance_05_doubled_k4_never_embeds_without_2faces() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let g = gen_doubled_k4_copies(1).expect("family generates").pm.graph().clone();
    match search_2face_free_embedding(&g, C5_BUDGET) {
        SearchOutcome::NoWitness => {}
        SearchOutcome::Found(pm) => {
            failures.push(format!("found a witness with faces {:?}", pm.global_faces()));
        }
        SearchOutcome::BudgetExceeded => {
            failures.push(format!("search did not exhaust the space within {C5_BUDGET}"));
        }
    }
    check_time(start.elapsed(), C5_TIME, &mut failures);
    conclude(5, "doubled-k4-never-embeds-without-2faces", start.elapsed(), failures);
}

const C6_TIME: Duration = Duration::from_secs(60);
const C6_MIN_INSTANCES: usize = 1000;

/// Handshake (2m equals the face-degree sum) and the Euler identity hold on
/// every generated and every randomly embedded instance.
#[test]
fn acceptance_06_counting_identities() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let check = |pm: &PlaneMultigraph, what: &str, failures: &mut Vec<String>| {
        if !pm.handshake_check() {
            failures.push(format!("{what}: handshake identity violated"));
        }
        if !pm.euler_check() {
            failures.push(format!("{what}: euler identity violated"));
        }
    };
    for family in Family::ALL {
        for k in 1..=3 {
            let inst = generate(family, k).expect("family generates");
            check(&inst.pm, &format!("{family}-{k}"), &mut failures);
            checked += 1;
        }
    }
    let mut sampler = Sampler::new(406);
    for i in 0..600 {
        let pm = sampler.plane_forest(10);
        check(&pm, &format!("forest sample {i}"), &mut failures);
        checked += 1;
    }
    let mut found = 0usize;
    let mut seed = 0u64;
    while found < 400 {
        seed += 1;
        assert!(seed < 20_000, "sampler starved of drawable multigraphs");
        if let Some(pm) = Sampler::new(1_000_000 + seed).plane_multigraph(9, 40) {
            check(&pm, &format!("drawing sample {seed}"), &mut failures);
            checked += 1;
            found += 1;
        }
    }
    if checked < C6_MIN_INSTANCES {
        failures.push(format!("only {checked} instances checked, need {C6_MIN_INSTANCES}"));
    }
    check_time(start.elapsed(), C6_TIME, &mut failures);
    conclude(6, "counting-identities", start.elapsed(), failures);
}

const C7_MIN_INSTANCES: usize = 100;

/// Every 2-face-free drawing on at least 3 vertices obeys m <= 3n-6,
/// whether it came from a generator or from the embedding search.
#[test]
fn acceptance_07_edge_bound() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let check = |pm: &PlaneMultigraph, what: &str, failures: &mut Vec<String>| {
        match pm.edge_bound_check() {
            Ok(true) => {}
            Ok(false) => failures.push(format!(
                "{what}: m={} exceeds 3n-6={}",
                pm.graph().m(),
                3 * pm.graph().n() as i64 - 6
            )),
            Err(Error::TooFewVertices(_)) => return false,
            Err(e) => failures.push(format!("{what}: {e}")),
        }
        true
    };
    for family in Family::ALL {
        for k in 1..=3 {
            let inst = generate(family, k).expect("family generates");
            if inst.pm.two_faces().is_empty() && check(&inst.pm, &format!("{family}-{k}"), &mut failures) {
                checked += 1;
            }
        }
    }
    let mut sampler = Sampler::new(407);
    for i in 0..300 {
        let g = if i % 2 == 0 { sampler.simple_graph(7) } else { sampler.paired_multigraph(6) };
        if let SearchOutcome::Found(pm) = search_2face_free_embedding(&g, 200_000) {
            assert!(pm.two_faces().is_empty());
            if check(&pm, &format!("searched witness {i}"), &mut failures) {
                checked += 1;
            }
        }
    }
    if checked < C7_MIN_INSTANCES {
        failures.push(format!("only {checked} instances checked, need {C7_MIN_INSTANCES}"));
    }
    conclude(7, "edge-bound", start.elapsed(), failures);
}

const C8_TIME: Duration = Duration::from_secs(30);
const C8_MAX_NODES: usize = 9;

/// With the least admissible weights (leaves 2, unary nodes 1, branching
/// nodes 0) every rooted forest on n nodes weighs at least n+1, and rooted
/// paths weigh exactly n+1. Parent vectors with parent[v] < v realize every
/// forest shape, so walking all of them is exhaustive up to relabeling.
/// Paths are not the only tight shapes: a root with two leaf children
/// weighs 0+2+2 = 4 = n+1 as well, so tightness is witnessed, not unique.
#[test]
fn acceptance_08_forest_weight_floor() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut tight_nonpath = 0usize;
    let mut total_forests = 0usize;
    for n in 1..=C8_MAX_NODES {
        // odometer over parent choices: 0 = root, 1..=v = parents 0..v-1
        let mut choice = vec![0usize; n];
        loop {
            let parent: Vec<Option<usize>> =
                choice.iter().map(|&c| c.checked_sub(1)).collect();
            let mut children = vec![0usize; n];
            for p in parent.iter().flatten() {
                children[*p] += 1;
            }
            let weight: Vec<u32> = children
                .iter()
                .map(|&c| match c {
                    0 => 2,
                    1 => 1,
                    _ => 0,
                })
                .collect();
            let is_path = children.iter().all(|&c| c <= 1)
                && parent.iter().filter(|p| p.is_none()).count() == 1;
            let forest = WeightedRootedForest { parent, weight };
            let check = forest_weight_check(&forest).expect("enumerated forest is well-formed");
            total_forests += 1;
            if !check.ok {
                failures.push(format!(
                    "n={n}, choices {choice:?}: total {} below floor {}",
                    check.total, check.bound
                ));
            } else if check.total == check.bound && !is_path {
                tight_nonpath += 1;
            }
            if is_path && check.total != check.bound {
                failures.push(format!(
                    "n={n}, choices {choice:?}: path weighs {} instead of {}",
                    check.total, check.bound
                ));
            }
            // advance the odometer
            let mut v = 0;
            loop {
                if v == n {
                    break;
                }
                choice[v] += 1;
                if choice[v] <= v {
                    break;
                }
                choice[v] = 0;
                v += 1;
            }
            if v == n {
                break;
            }
        }
    }
    // 1! + 2! + ... + 9! parent vectors
    if total_forests != 409_113 {
        failures.push(format!("enumerated {total_forests} forests, expected 409113"));
    }
    if tight_nonpath == 0 {
        failures.push("expected non-path forests attaining the floor (e.g. a root with two leaves)".into());
    }
    check_time(start.elapsed(), C8_TIME, &mut failures);
    conclude(8, "forest-weight-floor", start.elapsed(), failures);
}

const C9_MIN_AUDITS: usize = 25;
const C9_SEARCH_BUDGET: u64 = 2_000_000;

/// The discharging ledger balances to 3n-3k-4-3p at every snapshot, nothing
/// ends negative, and no donor is tapped twice — on the sealed towers and on
/// every 2-face-free doubled-pair drawing the search can exhibit.
#[test]
fn acceptance_09_discharging_audit() {
    let start = Instant::now();
    let mut failures = Vec::new();

    // a tower with a single block has no doubled edge to discharge against
    match run_discharging(&gen_sealed_tower(1).expect("family generates").pm) {
        Err(Error::NoParallelPairs) => {}
        other => failures.push(format!("tower 1: expected a clean rejection, got {other:?}")),
    }

    let audit_one = |pm: &PlaneMultigraph, what: &str, failures: &mut Vec<String>| {
        let audit = match run_discharging(pm) {
            Ok(a) => a,
            Err(e) => {
                failures.push(format!("{what}: audit refused: {e}"));
                return;
            }
        };
        let ledger = Rational64::from_integer(
            3 * audit.n as i64 - 3 * audit.k as i64 - 4 - 3 * audit.p as i64,
        );
        if audit.ledger_total != ledger {
            failures.push(format!("{what}: ledger {} != {ledger}", audit.ledger_total));
        }
        for (label, state) in [
            ("initial", &audit.initial),
            ("after stage one", &audit.after_stage_one),
            ("after stage two", &audit.after_stage_two),
        ] {
            if state.total() != ledger {
                failures.push(format!("{what}: {label} total {} != {ledger}", state.total()));
            }
        }
        let zero = Rational64::from_integer(0);
        let last = &audit.after_stage_two;
        if last.pot < zero {
            failures.push(format!("{what}: pot ended at {}", last.pot));
        }
        if let Some(q) = last
            .faces
            .iter()
            .chain(last.edges.iter())
            .chain(last.cycles.iter())
            .find(|q| **q < zero)
        {
            failures.push(format!("{what}: a final charge is negative ({q})"));
        }
        // stage-one donors are all distinct
        let mut donors: Vec<(u8, usize)> = audit
            .transfers
            .iter()
            .filter(|t| {
                matches!(
                    t.rule,
                    DischargeRule::GapFace
                        | DischargeRule::ExclusiveEdge
                        | DischargeRule::LeafEdge
                        | DischargeRule::LeafFace
                )
            })
            .map(|t| match t.from {
                ChargeEntity::Face(f) => (0, f),
                ChargeEntity::Edge(e) => (1, e.0),
                ChargeEntity::Cycle(c) => (2, c),
                ChargeEntity::Pot => (3, 0),
            })
            .collect();
        let before = donors.len();
        donors.sort_unstable();
        donors.dedup();
        if donors.len() != before {
            failures.push(format!("{what}: a donor was tapped twice"));
        }
    };

    let mut audited = 0usize;
    for k in 2..=3 {
        let inst = gen_sealed_tower(k).expect("family generates");
        audit_one(&inst.pm, &format!("tower {k}"), &mut failures);
        audited += 1;
    }

    let mut sampler = Sampler::new(409);
    let mut tries = 0usize;
    while audited < C9_MIN_AUDITS {
        tries += 1;
        assert!(tries < 5_000, "search starved of 2-face-free doubled-pair drawings");
        let g = sampler.paired_multigraph(8);
        let pairs = g.parallel_pairs();
        if pairs.count() == 0 || !pairs.all_multiplicity_two() {
            continue;
        }
        if let SearchOutcome::Found(pm) = search_2face_free_embedding(&g, C9_SEARCH_BUDGET) {
            audit_one(&pm, &format!("searched drawing (try {tries})"), &mut failures);
            audited += 1;
        }
    }
    conclude(9, "discharging-audit", start.elapsed(), failures);
}

const C10_MIN_FOUND: usize = 50;
const C10_INSTANCES: usize = 120;
const C10_COLORING_BUDGET: u64 = 5_000_000;

/// Whenever a 5-color acyclic coloring of the underlying simple graph is
/// found, two color classes yield an induced forest of size at least
/// ceil(2n/5 - k/10); budget exhaustion skips the instance, never fails it.
#[test]
fn acceptance_10_coloring_extraction_bound() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut sampler = Sampler::new(410);
    let mut found = 0usize;
    let mut skipped = 0usize;
    for i in 0..C10_INSTANCES {
        let g = sampler.multigraph(12);
        let simple = dedup(&g);
        match find_acyclic_coloring(&simple.output, 5, C10_COLORING_BUDGET)
            .expect("five colors is a valid request")
        {
            ColoringOutcome::Found(coloring) => {
                found += 1;
                let cert = match extract_forest_from_coloring(&g, &coloring) {
                    Ok(c) => c,
                    Err(e) => {
                        failures.push(format!("instance {i}: extraction refused: {e}"));
                        continue;
                    }
                };
                if !cert.verify(&g).unwrap_or(false) {
                    failures.push(format!("instance {i}: certificate does not verify"));
                }
                let n = g.n() as i64;
                let k = g.parallel_pairs().count() as i64;
                let floor = (Rational64::new(2 * n, 5) - Rational64::new(k, 10))
                    .ceil()
                    .to_integer();
                if (cert.value as i64) < floor {
                    failures.push(format!(
                        "instance {i}: extracted {} vertices, bound requires {floor}",
                        cert.value
                    ));
                }
            }
            ColoringOutcome::BudgetExceeded | ColoringOutcome::NotColorable => {
                skipped += 1;
            }
        }
    }
    if found < C10_MIN_FOUND {
        failures.push(format!(
            "only {found} colorings found ({skipped} skipped), need {C10_MIN_FOUND}"
        ));
    }
    conclude(10, "coloring-extraction-bound", start.elapsed(), failures);
}

const C11_PAIRS: usize = 250;

/// Solver invariants: independent sets are linear forests are forests, and
/// all three maxima add up across disjoint unions.
#[test]
fn acceptance_11_monotonicity_and_additivity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut sampler = Sampler::new(411);
    for i in 0..C11_PAIRS {
        let g1 = sampler.multigraph(7);
        let g2 = sampler.paired_multigraph(6);
        for (g, what) in [(&g1, "left"), (&g2, "right")] {
            let a = max_induced_forest(g).value;
            let al = max_induced_linear_forest(g).value;
            let alpha = max_independent_set(g).value;
            if !(a >= al && al >= alpha) {
                failures.push(format!(
                    "pair {i} ({what}): a={a}, al={al}, alpha={alpha} break the chain"
                ));
            }
        }
        let union = Multigraph::disjoint_union(&[g1.clone(), g2.clone()])
            .expect("two parts given");
        type Solver = fn(&Multigraph) -> usize;
        let solvers: [(&str, Solver); 3] = [
            ("forest", |g| max_induced_forest(g).value),
            ("linear", |g| max_induced_linear_forest(g).value),
            ("independent", |g| max_independent_set(g).value),
        ];
        for (what, solve) in solvers {
            let (u, s1, s2) = (solve(&union), solve(&g1), solve(&g2));
            if u != s1 + s2 {
                failures.push(format!("pair {i} ({what}): union {u} != {s1} + {s2}"));
            }
        }
    }
    conclude(11, "monotonicity-and-additivity", start.elapsed(), failures);
}
