//! Plain-text formats for multigraphs and plane embeddings.
//!
//! Graph file: the first significant line is `n m`, followed by `m` lines
//! `u v`, one per edge, in edge-id order. `#` starts a comment and blank
//! lines are skipped.
//!
//! Embedding file: the graph block followed by directives, one per line:
//!
//! ```text
//! rot v: d0 d1 ...          rotation at every vertex of positive degree
//! outer c f                 outer face (local index) per edge component
//! place c unbounded         where component c lives (defaults unbounded)
//! place c in c2.f
//! isolated v unbounded      region holding a degree-0 vertex
//! isolated v in c.f
//! ```
//!
//! Component indices refer to connected components ordered by their least
//! vertex; face indices are positions in the component's face-trace order.
//! Parsing an embedding file runs the full assembly validation, so a parsed
//! value is always a consistent plane multigraph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::embedding::{Dart, Host, PlaneMultigraph};
use crate::multigraph::{Multigraph, VertexId};
use crate::{Error, Result};

/// A parsed input: either a bare multigraph or a full plane embedding.
#[derive(Debug)]
pub enum Instance {
    Graph(Multigraph),
    Plane(Box<PlaneMultigraph>),
}

impl Instance {
    pub fn graph(&self) -> &Multigraph {
        match self {
            Instance::Graph(g) => g,
            Instance::Plane(pm) => pm.graph(),
        }
    }

    pub fn plane(&self) -> Option<&PlaneMultigraph> {
        match self {
            Instance::Graph(_) => None,
            Instance::Plane(pm) => Some(pm),
        }
    }
}

/// Parses either format: any embedding directive promotes the input to a
/// plane multigraph.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let is_plane = significant_lines(text)
        .iter()
        .any(|(_, toks)| matches!(toks[0], "rot" | "outer" | "place" | "isolated"));
    if is_plane {
        Ok(Instance::Plane(Box::new(parse_pmgraph(text)?)))
    } else {
        Ok(Instance::Graph(parse_mgraph(text)?))
    }
}

pub fn parse_mgraph(text: &str) -> Result<Multigraph> {
    let lines = significant_lines(text);
    let (g, rest) = parse_graph_block(&lines)?;
    if let Some((line, toks)) = rest.first() {
        return Err(Error::Parse {
            line: *line,
            msg: format!("unexpected line starting `{}` after the edge list", toks[0]),
        });
    }
    Ok(g)
}

pub fn write_mgraph(g: &Multigraph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", g.n(), g.m()).unwrap();
    for (_, u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn parse_pmgraph(text: &str) -> Result<PlaneMultigraph> {
    let lines = significant_lines(text);
    let (g, rest) = parse_graph_block(&lines)?;
    let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); g.n()];
    let mut rot_seen = vec![false; g.n()];
    let mut outer: BTreeMap<usize, usize> = BTreeMap::new();
    let mut placements: BTreeMap<usize, Host> = BTreeMap::new();
    let mut isolated: BTreeMap<VertexId, Host> = BTreeMap::new();

    for (line, toks) in rest {
        let line = *line;
        match toks[0] {
            "rot" => {
                let vtok = expect_tok(toks, 1, line, "rot needs a vertex")?;
                let vtok = vtok.strip_suffix(':').unwrap_or(vtok);
                let v = parse_num(vtok, line, "vertex")?;
                if v >= g.n() {
                    return Err(Error::Parse {
                        line,
                        msg: format!("rot vertex {v} out of range (n = {})", g.n()),
                    });
                }
                if rot_seen[v] {
                    return Err(Error::Parse { line, msg: format!("duplicate rot for vertex {v}") });
                }
                rot_seen[v] = true;
                rotations[v] = toks[2..]
                    .iter()
                    .map(|t| parse_num(t, line, "dart").map(Dart))
                    .collect::<Result<_>>()?;
            }
            "outer" => {
                if toks.len() != 3 {
                    return Err(Error::Parse { line, msg: "outer needs `outer c f`".into() });
                }
                let c = parse_num(toks[1], line, "component")?;
                let f = parse_num(toks[2], line, "face")?;
                if outer.insert(c, f).is_some() {
                    return Err(Error::Parse { line, msg: format!("duplicate outer for component {c}") });
                }
            }
            "place" => {
                let c = parse_num(expect_tok(toks, 1, line, "place needs a component")?, line, "component")?;
                let host = parse_host(&toks[2..], line)?;
                if placements.insert(c, host).is_some() {
                    return Err(Error::Parse { line, msg: format!("duplicate place for component {c}") });
                }
            }
            "isolated" => {
                let v = parse_num(expect_tok(toks, 1, line, "isolated needs a vertex")?, line, "vertex")?;
                let host = parse_host(&toks[2..], line)?;
                if isolated.insert(VertexId(v), host).is_some() {
                    return Err(Error::Parse { line, msg: format!("duplicate isolated for vertex {v}") });
                }
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown directive `{other}` (expected rot/outer/place/isolated)"),
                });
            }
        }
    }
    PlaneMultigraph::assemble(g, rotations, &outer, &placements, &isolated)
}

pub fn write_pmgraph(pm: &PlaneMultigraph) -> String {
    let mut s = write_mgraph(pm.graph());
    for v in pm.graph().vertices() {
        let rot = pm.rotation_system().rotation(v);
        if rot.is_empty() {
            continue;
        }
        let darts: Vec<String> = rot.iter().map(|d| d.to_string()).collect();
        writeln!(s, "rot {v}: {}", darts.join(" ")).unwrap();
    }
    for c in pm.edge_components() {
        let w = pm.outer_walk(c).expect("edge component always has an outer walk");
        writeln!(s, "outer {c} {}", pm.walk_local_index(w)).unwrap();
    }
    for c in pm.edge_components() {
        match pm.placement(c).expect("edge component always has a placement") {
            Host::Unbounded => writeln!(s, "place {c} unbounded").unwrap(),
            Host::Face { component, face } => writeln!(s, "place {c} in {component}.{face}").unwrap(),
        }
    }
    for (v, host) in pm.isolated_placements() {
        match host {
            Host::Unbounded => writeln!(s, "isolated {v} unbounded").unwrap(),
            Host::Face { component, face } => writeln!(s, "isolated {v} in {component}.{face}").unwrap(),
        }
    }
    s
}

/// A 1-based line number with the line's whitespace-split tokens.
type TokenLine<'a> = (usize, Vec<&'a str>);

/// Significant lines: comment-stripped, tokenized, 1-based line numbers.
fn significant_lines(text: &str) -> Vec<TokenLine<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                None
            } else {
                Some((i + 1, content.split_whitespace().collect()))
            }
        })
        .collect()
}

fn parse_num(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse { line, msg: format!("{what}: expected a number, got `{tok}`") })
}

fn expect_tok<'a>(toks: &[&'a str], idx: usize, line: usize, msg: &str) -> Result<&'a str> {
    toks.get(idx).copied().ok_or_else(|| Error::Parse { line, msg: msg.into() })
}

fn parse_host(toks: &[&str], line: usize) -> Result<Host> {
    match toks {
        ["unbounded"] => Ok(Host::Unbounded),
        ["in", target] => {
            let (c, f) = target.split_once('.').ok_or_else(|| Error::Parse {
                line,
                msg: format!("placement target `{target}` should be `component.face`"),
            })?;
            Ok(Host::Face {
                component: parse_num(c, line, "component")?,
                face: parse_num(f, line, "face")?,
            })
        }
        _ => Err(Error::Parse {
            line,
            msg: "placement must be `unbounded` or `in c.f`".into(),
        }),
    }
}

fn parse_graph_block<'a>(lines: &'a [TokenLine<'a>]) -> Result<(Multigraph, &'a [TokenLine<'a>])> {
    let (line0, head) = lines
        .first()
        .ok_or(Error::Parse { line: 1, msg: "empty input: expected `n m` header".into() })?;
    if head.len() != 2 {
        return Err(Error::Parse { line: *line0, msg: "header must be `n m`".into() });
    }
    let n = parse_num(head[0], *line0, "vertex count")?;
    let m = parse_num(head[1], *line0, "edge count")?;
    if lines.len() < 1 + m {
        return Err(Error::Parse {
            line: lines.last().map_or(*line0, |(l, _)| *l),
            msg: format!("expected {m} edge lines, found {}", lines.len() - 1),
        });
    }
    let mut g = Multigraph::new(n);
    for (line, toks) in &lines[1..1 + m] {
        if toks.len() != 2 {
            return Err(Error::Parse { line: *line, msg: "edge line must be `u v`".into() });
        }
        let u = parse_num(toks[0], *line, "endpoint")?;
        let v = parse_num(toks[1], *line, "endpoint")?;
        g.add_edge(u, v)
            .map_err(|e| Error::Parse { line: *line, msg: e.to_string() })?;
    }
    Ok((g, &lines[1 + m..]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doubled_k4() -> Multigraph {
        let mut g = Multigraph::new(4);
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            g.add_edge(u, v).unwrap();
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn mgraph_round_trip() {
        let g = doubled_k4();
        let text = write_mgraph(&g);
        assert!(text.starts_with("4 12\n"));
        assert_eq!(parse_mgraph(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let text = "# path on three vertices\n\n3 2\n0 1 # first\n1 2\n";
        let g = parse_mgraph(text).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
    }

    #[test]
    fn mgraph_parse_errors_carry_line_numbers() {
        assert!(matches!(
            parse_mgraph(""),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_mgraph("3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        // loop edge on line 3
        assert!(matches!(
            parse_mgraph("# c\n2 1\n1 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        // endpoint out of range
        assert!(matches!(
            parse_mgraph("2 1\n0 7\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        // missing edge line
        assert!(matches!(parse_mgraph("3 2\n0 1\n"), Err(Error::Parse { .. })));
        // trailing junk
        assert!(matches!(parse_mgraph("2 1\n0 1\n0 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn pmgraph_literal_with_placements() {
        // doubled edge, one K2 inside it, one K2 outside
        let text = "6 4\n0 1\n0 1\n2 3\n4 5\n\
                    rot 0: 0 2\nrot 1: 1 3\nrot 2: 4\nrot 3: 5\nrot 4: 6\nrot 5: 7\n\
                    outer 0 1\nouter 1 0\nouter 2 0\n\
                    place 1 in 0.0\n";
        let pm = parse_pmgraph(text).unwrap();
        assert_eq!(pm.global_face_count(), 2);
        assert!(pm.two_faces().is_empty());
        assert_eq!(pm.placement(1), Some(Host::Face { component: 0, face: 0 }));
        assert_eq!(pm.placement(2), Some(Host::Unbounded));
        assert!(pm.euler_check());
        assert!(pm.handshake_check());
    }

    #[test]
    fn pmgraph_round_trip() {
        let text = "6 4\n0 1\n0 1\n2 3\n4 5\n\
                    rot 0: 0 2\nrot 1: 1 3\nrot 2: 4\nrot 3: 5\nrot 4: 6\nrot 5: 7\n\
                    outer 0 1\nouter 1 0\nouter 2 0\n\
                    place 1 in 0.0\n";
        let pm = parse_pmgraph(text).unwrap();
        let written = write_pmgraph(&pm);
        let again = parse_pmgraph(&written).unwrap();
        assert_eq!(again.graph(), pm.graph());
        for v in pm.graph().vertices() {
            assert_eq!(
                again.rotation_system().rotation(v),
                pm.rotation_system().rotation(v)
            );
        }
        for c in pm.edge_components() {
            assert_eq!(again.outer_walk(c), pm.outer_walk(c));
            assert_eq!(again.placement(c), pm.placement(c));
        }
        assert_eq!(again.isolated_placements(), pm.isolated_placements());
        // canonical writer is a fixed point
        assert_eq!(write_pmgraph(&again), written);
    }

    #[test]
    fn pmgraph_with_isolated_vertices() {
        let text = "3 2\n0 1\n0 1\n\
                    rot 0: 0 2\nrot 1: 1 3\nouter 0 1\nisolated 2 in 0.0\n";
        let pm = parse_pmgraph(text).unwrap();
        assert_eq!(
            pm.isolated_placements()[&VertexId(2)],
            Host::Face { component: 0, face: 0 }
        );
        let written = write_pmgraph(&pm);
        assert!(written.contains("isolated 2 in 0.0"));
    }

    #[test]
    fn pmgraph_parse_errors() {
        // unknown directive
        assert!(matches!(
            parse_pmgraph("2 1\n0 1\nrot 0: 0\nrot 1: 1\nouter 0 0\nfoo 1\n"),
            Err(Error::Parse { line: 6, .. })
        ));
        // duplicate rotation
        assert!(matches!(
            parse_pmgraph("2 1\n0 1\nrot 0: 0\nrot 0: 0\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        // bad placement target
        assert!(matches!(
            parse_pmgraph("2 1\n0 1\nrot 0: 0\nrot 1: 1\nouter 0 0\nplace 0 in 3\n"),
            Err(Error::Parse { line: 6, .. })
        ));
        // semantic failure surfaces from assembly: dart 1 missing
        assert!(matches!(
            parse_pmgraph("2 1\n0 1\nrot 0: 0\nrot 1:\nouter 0 0\n"),
            Err(Error::Rotation(_))
        ));
    }

    #[test]
    fn instance_detection() {
        let g = parse_instance("2 1\n0 1\n").unwrap();
        assert!(g.plane().is_none());
        let p = parse_instance("2 1\n0 1\nrot 0: 0\nrot 1: 1\nouter 0 0\n").unwrap();
        assert!(p.plane().is_some());
        assert_eq!(p.graph().m(), 1);
    }

    mod roundtrip {
        use super::*;
        use crate::sampler::Sampler;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn graphs_survive_write_then_parse(
                n in 2usize..10,
                raw in proptest::collection::vec((0usize..10, 0usize..10), 0..16),
            ) {
                let mut g = Multigraph::new(n);
                for (u, v) in raw {
                    let (u, v) = (u % n, v % n);
                    if u != v {
                        g.add_edge(u, v).unwrap();
                    }
                }
                let parsed = parse_mgraph(&write_mgraph(&g)).unwrap();
                prop_assert_eq!(parsed.n(), g.n());
                prop_assert_eq!(parsed.m(), g.m());
                for e in g.edge_ids() {
                    prop_assert_eq!(parsed.endpoints(e), g.endpoints(e));
                }
            }

            #[test]
            fn drawings_survive_write_then_parse(seed in 0u64..256) {
                if let Some(pm) = Sampler::new(seed).plane_multigraph(8, 40) {
                    let text = write_pmgraph(&pm);
                    let parsed = parse_pmgraph(&text).unwrap();
                    prop_assert_eq!(parsed.global_face_count(), pm.global_face_count());
                    // a second trip is byte-identical
                    prop_assert_eq!(write_pmgraph(&parsed), text);
                }
            }
        }
    }
}
