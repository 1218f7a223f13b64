//! Certificate checker for Hamilton decompositions.
//!
//! Works on plain vertex sequences and vertex pairs against the graph's
//! adjacency; it shares nothing with the constructors in `decomp`. Edges are
//! identified by their unordered endpoint pair only.

use std::collections::HashMap;

use serde::Serialize;

use crate::cayley::{CayleyGraph, Cycle, LabeledEdge};
use crate::decomp::Decomposition;
use crate::dihedral::GroupElement;

/// A part of a decomposition, for locating findings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Cycle(usize),
    Matching,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    WrongLength {
        part: Part,
        expected: usize,
        actual: usize,
    },
    ForeignVertex {
        part: Part,
        vertex: GroupElement,
    },
    RepeatedVertex {
        part: Part,
        vertex: GroupElement,
    },
    NotAnEdge {
        part: Part,
        u: GroupElement,
        v: GroupElement,
    },
    MatchingVertexReused {
        vertex: GroupElement,
    },
    MatchingVertexUncovered {
        vertex: GroupElement,
    },
    EdgeReused {
        u: GroupElement,
        v: GroupElement,
        first: Part,
        second: Part,
    },
    EdgeUncovered {
        u: GroupElement,
        v: GroupElement,
    },
    WrongCycleCount {
        expected: usize,
        actual: usize,
    },
    MatchingPresence {
        expected: bool,
        actual: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub failures: Vec<Finding>,
}

impl VerificationReport {
    fn from_findings(failures: Vec<Finding>) -> Self {
        Self {
            ok: failures.is_empty(),
            failures,
        }
    }
}

fn key(u: &GroupElement, v: &GroupElement) -> (usize, usize) {
    let (a, b) = (u.index(), v.index());
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn cycle_findings(graph: &CayleyGraph, part: Part, vertices: &[GroupElement], out: &mut Vec<Finding>) {
    let order = graph.vertex_count();
    if vertices.len() != order {
        out.push(Finding::WrongLength {
            part,
            expected: order,
            actual: vertices.len(),
        });
    }
    let mut seen = vec![false; order];
    for v in vertices {
        if !graph.contains_vertex(v) {
            out.push(Finding::ForeignVertex { part, vertex: *v });
            continue;
        }
        if std::mem::replace(&mut seen[v.index()], true) {
            out.push(Finding::RepeatedVertex { part, vertex: *v });
        }
    }
    let len = vertices.len();
    for t in 0..len {
        let (u, v) = (vertices[t], vertices[(t + 1) % len]);
        if !graph.has_edge(&u, &v) {
            out.push(Finding::NotAnEdge { part, u, v });
        }
    }
}

fn matching_findings(graph: &CayleyGraph, pairs: &[(GroupElement, GroupElement)], out: &mut Vec<Finding>) {
    let order = graph.vertex_count();
    let mut uses = vec![0usize; order];
    for (u, v) in pairs {
        if !graph.has_edge(u, v) {
            out.push(Finding::NotAnEdge {
                part: Part::Matching,
                u: *u,
                v: *v,
            });
        }
        for w in [u, v] {
            if !graph.contains_vertex(w) {
                out.push(Finding::ForeignVertex {
                    part: Part::Matching,
                    vertex: *w,
                });
                continue;
            }
            uses[w.index()] += 1;
            if uses[w.index()] == 2 {
                out.push(Finding::MatchingVertexReused { vertex: *w });
            }
        }
    }
    for (i, &count) in uses.iter().enumerate() {
        if count == 0 {
            out.push(Finding::MatchingVertexUncovered {
                vertex: GroupElement::from_index(graph.n(), i),
            });
        }
    }
}

fn pairs_of(matching: &[LabeledEdge]) -> Vec<(GroupElement, GroupElement)> {
    matching.iter().map(LabeledEdge::endpoints).collect()
}

/// Whether `cycle` visits every vertex exactly once along graph edges.
pub fn is_hamilton_cycle(graph: &CayleyGraph, cycle: &Cycle) -> bool {
    let mut findings = Vec::new();
    cycle_findings(graph, Part::Cycle(0), cycle.vertices(), &mut findings);
    findings.is_empty()
}

/// Whether `edges` are graph edges covering every vertex exactly once.
pub fn is_perfect_matching(graph: &CayleyGraph, edges: &[LabeledEdge]) -> bool {
    let mut findings = Vec::new();
    matching_findings(graph, &pairs_of(edges), &mut findings);
    findings.is_empty()
}

/// Checks every condition of a Hamilton decomposition and reports all
/// violations found.
pub fn verify_decomposition(graph: &CayleyGraph, d: &Decomposition) -> VerificationReport {
    let mut out = Vec::new();

    for (t, cycle) in d.cycles.iter().enumerate() {
        cycle_findings(graph, Part::Cycle(t), cycle.vertices(), &mut out);
    }
    let matching = d.matching.as_deref().map(pairs_of);
    if let Some(pairs) = &matching {
        matching_findings(graph, pairs, &mut out);
    }

    // Edge-disjointness and coverage.
    let mut owner: HashMap<(usize, usize), Part> = HashMap::new();
    let mut claim = |part: Part, u: GroupElement, v: GroupElement, out: &mut Vec<Finding>| {
        if !graph.has_edge(&u, &v) {
            return;
        }
        if let Some(&first) = owner.get(&key(&u, &v)) {
            out.push(Finding::EdgeReused {
                u,
                v,
                first,
                second: part,
            });
        } else {
            owner.insert(key(&u, &v), part);
        }
    };
    for (t, cycle) in d.cycles.iter().enumerate() {
        let vs = cycle.vertices();
        for i in 0..vs.len() {
            claim(Part::Cycle(t), vs[i], vs[(i + 1) % vs.len()], &mut out);
        }
    }
    if let Some(pairs) = &matching {
        for &(u, v) in pairs {
            claim(Part::Matching, u, v, &mut out);
        }
    }
    for e in graph.edges().iter() {
        let (u, v) = e.endpoints();
        if !owner.contains_key(&key(&u, &v)) {
            out.push(Finding::EdgeUncovered { u, v });
        }
    }

    let valency = graph.valency();
    if d.cycles.len() != valency / 2 {
        out.push(Finding::WrongCycleCount {
            expected: valency / 2,
            actual: d.cycles.len(),
        });
    }
    if d.matching.is_some() != (valency % 2 == 1) {
        out.push(Finding::MatchingPresence {
            expected: valency % 2 == 1,
            actual: d.matching.is_some(),
        });
    }

    VerificationReport::from_findings(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_graph, ConnectionSet};

    fn r(n: u32, k: i64) -> GroupElement {
        GroupElement::rotation(n, k)
    }

    fn s(n: u32, k: i64) -> GroupElement {
        GroupElement::reflection(n, k)
    }

    fn k4() -> CayleyGraph {
        build_graph(&ConnectionSet::parse(2, "r1,s0,s1").unwrap())
    }

    fn k4_certificate() -> Decomposition {
        Decomposition {
            cycles: vec![Cycle::new(vec![r(2, 0), r(2, 1), s(2, 1), s(2, 0)])],
            matching: Some(vec![
                LabeledEdge::new(r(2, 0), s(2, 1)).unwrap(),
                LabeledEdge::new(r(2, 1), s(2, 0)).unwrap(),
            ]),
            ..Default::default()
        }
    }

    #[test]
    fn hamilton_cycle_predicate() {
        let g = k4();
        assert!(is_hamilton_cycle(&g, &Cycle::new(vec![r(2, 0), r(2, 1), s(2, 1), s(2, 0)])));
        assert!(!is_hamilton_cycle(&g, &Cycle::new(vec![r(2, 0), r(2, 1), s(2, 1)])));
        assert!(!is_hamilton_cycle(&g, &Cycle::new(vec![r(2, 0), r(2, 1), r(2, 0), s(2, 0)])));
        assert!(!is_hamilton_cycle(&g, &Cycle::new(vec![r(3, 0), r(3, 1), s(3, 1), s(3, 0)])));
    }

    #[test]
    fn perfect_matching_predicate() {
        let g = build_graph(&ConnectionSet::parse(7, "r1,r6,s0").unwrap());
        let class = g.edges_for_class(&s(7, 0)).unwrap().into_vec();
        assert!(is_perfect_matching(&g, &class));
        assert!(!is_perfect_matching(&g, &[]));
        assert!(!is_perfect_matching(&g, &class[..6]));
        let mut reused = class.clone();
        reused[0] = LabeledEdge::new(r(7, 1), r(7, 2)).unwrap();
        assert!(!is_perfect_matching(&g, &reused));
        let non_edge = vec![LabeledEdge::new(r(7, 0), s(7, 3)).unwrap()];
        assert!(!is_perfect_matching(&g, &non_edge));
    }

    #[test]
    fn accepts_k4_certificate() {
        let report = verify_decomposition(&k4(), &k4_certificate());
        assert!(report.ok, "{report:?}");
        assert!(report.failures.is_empty());
    }

    #[test]
    fn duplicate_cycle_reports_reuse_and_count() {
        let mut d = k4_certificate();
        d.cycles.push(d.cycles[0].clone());
        let report = verify_decomposition(&k4(), &d);
        assert!(!report.ok);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, Finding::EdgeReused { second: Part::Cycle(1), .. })));
        assert!(report.failures.contains(&Finding::WrongCycleCount { expected: 1, actual: 2 }));
    }

    #[test]
    fn non_edge_reports_hamiltonicity_and_partition() {
        let g = build_graph(&ConnectionSet::parse(7, "s0,s1").unwrap());
        let order: Vec<GroupElement> = (0..7).flat_map(|k| [r(7, -k), s(7, -k)]).collect();
        let mut d = Decomposition {
            cycles: vec![Cycle::new(order)],
            ..Default::default()
        };
        assert!(verify_decomposition(&g, &d).ok);
        // r0,s0 then r6: replace s0 by s3 so two steps stop being edges
        let mut vs = d.cycles[0].vertices().to_vec();
        vs[1] = s(7, 3);
        d.cycles[0] = Cycle::new(vs);
        let report = verify_decomposition(&g, &d);
        assert!(report.failures.iter().any(|f| matches!(f, Finding::NotAnEdge { .. })));
        assert!(report.failures.iter().any(|f| matches!(f, Finding::RepeatedVertex { .. })));
        assert!(report.failures.iter().any(|f| matches!(f, Finding::EdgeUncovered { .. })));
    }

    #[test]
    fn empty_certificate_is_rejected() {
        let report = verify_decomposition(&k4(), &Decomposition::default());
        assert!(report.failures.iter().filter(|f| matches!(f, Finding::EdgeUncovered { .. })).count() == 6);
        assert!(report.failures.contains(&Finding::MatchingPresence {
            expected: true,
            actual: false
        }));
    }

    #[test]
    fn report_serialises_witnesses() {
        let report = verify_decomposition(&k4(), &Decomposition::default());
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["ok"], false);
        assert!(json["failures"]
            .as_array()
            .unwrap()
            .iter()
            .any(|f| f["kind"] == "edge_uncovered" && f["u"] == "r0"));
    }
}
