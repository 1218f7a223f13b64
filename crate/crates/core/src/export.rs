//! Human-readable and Graphviz views of a decomposition.

use std::collections::HashMap;
use std::fmt::Write;

use crate::cayley::CayleyGraph;
use crate::decomp::Decomposition;
use crate::dihedral::GroupElement;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];
const MATCHING_COLOR: &str = "#7f7f7f";

pub fn to_text(graph: &CayleyGraph, d: &Decomposition) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}", graph.n()).unwrap();
    writeln!(out, "S = {{{}}}", graph.connection_set()).unwrap();
    writeln!(
        out,
        "{} vertices, {} edges, valency {}",
        graph.vertex_count(),
        graph.edge_count(),
        graph.valency()
    )
    .unwrap();
    for (t, cycle) in d.cycles.iter().enumerate() {
        let route = d.routes.get(t).map(|r| format!(" [{r}]")).unwrap_or_default();
        let vs: Vec<String> = cycle.vertices().iter().map(|v| v.to_string()).collect();
        writeln!(out, "H{}{route}: {}", t + 1, vs.join(" ")).unwrap();
    }
    if let Some(m) = &d.matching {
        let route = d.matching_route.map(|r| format!(" [{r}]")).unwrap_or_default();
        let es: Vec<String> = m.iter().map(|e| e.to_string()).collect();
        writeln!(out, "M{route}: {}", es.join(" ")).unwrap();
    }
    out
}

fn key(u: &GroupElement, v: &GroupElement) -> (usize, usize) {
    (u.index().min(v.index()), u.index().max(v.index()))
}

/// One node statement per vertex and one edge statement per graph edge; the
/// `part` attribute names the cycle (`H1`, `H2`, ...) or `M` owning the edge.
pub fn to_dot(graph: &CayleyGraph, d: &Decomposition) -> String {
    let mut owner: HashMap<(usize, usize), (String, &str)> = HashMap::new();
    for (t, cycle) in d.cycles.iter().enumerate() {
        for (u, v) in cycle.steps() {
            owner
                .entry(key(&u, &v))
                .or_insert((format!("H{}", t + 1), PALETTE[t % PALETTE.len()]));
        }
    }
    for e in d.matching.iter().flatten() {
        let (u, v) = e.endpoints();
        owner.entry(key(&u, &v)).or_insert(("M".to_string(), MATCHING_COLOR));
    }

    let mut out = String::new();
    writeln!(out, "graph cayley {{").unwrap();
    writeln!(out, "  label=\"Cay(D_{}, {{{}}})\";", 2 * graph.n(), graph.connection_set()).unwrap();
    for v in graph.vertices() {
        let shape = if v.is_reflection() { "box" } else { "ellipse" };
        writeln!(out, "  \"{v}\" [shape={shape}];").unwrap();
    }
    for e in graph.edges().iter() {
        let (u, v) = e.endpoints();
        let (part, color) = owner
            .get(&key(&u, &v))
            .map(|(p, c)| (p.as_str(), *c))
            .unwrap_or(("none", "black"));
        let style = if part == "M" { ", style=dashed" } else { "" };
        writeln!(
            out,
            "  \"{u}\" -- \"{v}\" [class=\"{}\", part=\"{part}\", color=\"{color}\"{style}];",
            e.label()
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
