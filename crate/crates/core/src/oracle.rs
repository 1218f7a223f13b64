//! Brute-force ground truth for small instances.
//!
//! [`InstanceSweep`] enumerates every connection set of `D_2n`;
//! [`brute_force_decomposition`] searches for a Hamilton decomposition by
//! backtracking, knowing nothing about the group structure.

use rand::Rng;
use thiserror::Error;

use crate::cayley::{validate_connection_set, CayleyGraph, ConnectionSet, Cycle, LabeledEdge};
use crate::decomp::Decomposition;
use crate::dihedral::GroupElement;

/// Largest vertex count the search accepts.
pub const MAX_VERTICES: usize = 14;
/// Largest edge count the search accepts (14 vertices of valency 7).
pub const MAX_EDGES: usize = 49;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for brute force: {vertices} vertices, {edges} edges")]
    InstanceTooLarge { vertices: usize, edges: usize },
    #[error("no Hamilton decomposition found")]
    NotFound,
}

/// Every connection set of `D_2n`, in a fixed order.
///
/// Candidates are unions of rotation inverse classes and arbitrary sets of
/// reflections; those that fail to generate are skipped. Candidate `idx`
/// takes its rotation classes from the low bits and its reflections from the
/// high bits, and the sweep yields candidates in increasing `idx`.
#[derive(Debug, Clone)]
pub struct InstanceSweep {
    n: u32,
    class_bits: u32,
    next: u64,
    end: u64,
}

impl InstanceSweep {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1);
        let class_bits = n / 2;
        let total_bits = class_bits + n;
        assert!(total_bits < 63, "D_{} is too large to enumerate", 2 * n);
        Self {
            n,
            class_bits,
            next: 0,
            end: 1u64 << total_bits,
        }
    }

    /// Number of raw candidates (valid or not).
    pub fn candidate_count(&self) -> u64 {
        self.end
    }

    /// The candidate with the given index, if it is a valid connection set.
    pub fn candidate(&self, idx: u64) -> Option<ConnectionSet> {
        let n = self.n;
        let mut elements = Vec::new();
        for c in 0..self.class_bits {
            if idx >> c & 1 == 1 {
                let g = GroupElement::rotation(n, c as i64 + 1);
                elements.push(g);
                elements.push(g.inverse());
            }
        }
        for k in 0..n {
            if idx >> (self.class_bits + k) & 1 == 1 {
                elements.push(GroupElement::reflection(n, k as i64));
            }
        }
        validate_connection_set(n, elements).ok()
    }
}

impl Iterator for InstanceSweep {
    type Item = ConnectionSet;

    fn next(&mut self) -> Option<ConnectionSet> {
        while self.next < self.end {
            let idx = self.next;
            self.next += 1;
            if let Some(cs) = self.candidate(idx) {
                return Some(cs);
            }
        }
        None
    }
}

pub fn enumerate_connection_sets(p: u32) -> InstanceSweep {
    InstanceSweep::new(p)
}

/// A connection set drawn uniformly from all valid ones, by rejection.
pub fn sample_connection_set<R: Rng + ?Sized>(n: u32, rng: &mut R) -> ConnectionSet {
    let sweep = InstanceSweep::new(n);
    loop {
        if let Some(cs) = sweep.candidate(rng.gen_range(0..sweep.candidate_count())) {
            return cs;
        }
    }
}

struct Search {
    order: usize,
    full: u64,
    adj: Vec<u64>,
}

impl Search {
    fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    fn connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.full
    }

    fn toggle_cycle(&mut self, cycle: &[usize]) {
        for t in 0..cycle.len() {
            let (u, v) = (cycle[t], cycle[(t + 1) % cycle.len()]);
            self.adj[u] ^= 1 << v;
            self.adj[v] ^= 1 << u;
        }
    }

    /// The remaining graph, read as one cycle through vertex 0, if it is one.
    fn remaining_cycle(&self) -> Option<Vec<usize>> {
        if (0..self.order).any(|v| self.degree(v) != 2) {
            return None;
        }
        let mut walk = vec![0usize];
        let mut prev = 0usize;
        let mut cur = self.adj[0].trailing_zeros() as usize;
        while cur != 0 {
            walk.push(cur);
            let next = (self.adj[cur] & !(1 << prev)).trailing_zeros() as usize;
            prev = cur;
            cur = next;
        }
        (walk.len() == self.order).then_some(walk)
    }

    /// Decomposes the remaining graph into `cycles_left` Hamilton cycles plus
    /// a matching when `matching` is set.
    fn solve(&mut self, cycles_left: usize, matching: bool, found: &mut Vec<Vec<usize>>) -> bool {
        if cycles_left == 0 {
            let want = matching as u32;
            return (0..self.order).all(|v| self.degree(v) == want);
        }
        if cycles_left == 1 && !matching {
            return match self.remaining_cycle() {
                Some(c) => {
                    found.push(c);
                    true
                }
                None => false,
            };
        }
        if !self.connected() {
            return false;
        }
        let mut path = vec![0usize];
        self.extend(&mut path, 1, cycles_left, matching, found)
    }

    fn extend(
        &mut self,
        path: &mut Vec<usize>,
        visited: u64,
        cycles_left: usize,
        matching: bool,
        found: &mut Vec<Vec<usize>>,
    ) -> bool {
        let last = *path.last().expect("path starts at vertex 0");
        if path.len() == self.order {
            // close the cycle; path[1] < last counts each cycle once
            if self.adj[last] & 1 == 0 || path[1] > last {
                return false;
            }
            let cycle = path.clone();
            self.toggle_cycle(&cycle);
            if self.solve(cycles_left - 1, matching, found) {
                found.push(cycle);
                return true;
            }
            self.toggle_cycle(&cycle);
            return false;
        }
        // every unvisited vertex needs two usable neighbours
        let open = !visited & self.full;
        let mut rest = open;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[v] & (open | 1 | 1 << last)).count_ones() < 2 {
                return false;
            }
        }
        let mut candidates = self.adj[last] & open;
        while candidates != 0 {
            let next = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            path.push(next);
            if self.extend(path, visited | 1 << next, cycles_left, matching, found) {
                return true;
            }
            path.pop();
        }
        false
    }
}

/// Searches for a Hamilton decomposition of `graph` by backtracking.
///
/// Cycles are grown from vertex 0 following neighbours in increasing vertex
/// index; each candidate cycle is removed and the rest decomposed recursively.
pub fn brute_force_decomposition(graph: &CayleyGraph) -> Result<Decomposition, OracleError> {
    let order = graph.vertex_count();
    let edges = graph.edge_count();
    if order > MAX_VERTICES || edges > MAX_EDGES {
        return Err(OracleError::InstanceTooLarge { vertices: order, edges });
    }
    let mut adj = vec![0u64; order];
    for e in graph.edges().iter() {
        let (u, v) = e.endpoints();
        adj[u.index()] |= 1 << v.index();
        adj[v.index()] |= 1 << u.index();
    }
    let mut search = Search {
        order,
        full: (1u64 << order) - 1,
        adj,
    };
    let valency = graph.valency();
    let matching = valency % 2 == 1;
    let mut found = Vec::new();
    if !search.solve(valency / 2, matching, &mut found) {
        return Err(OracleError::NotFound);
    }
    found.reverse();

    let n = graph.n();
    let vertex = |i: usize| GroupElement::from_index(n, i);
    let mut out = Decomposition {
        cycles: found
            .into_iter()
            .map(|c| Cycle::new(c.into_iter().map(vertex).collect()))
            .collect(),
        ..Default::default()
    };
    if matching {
        let mut pairs = Vec::new();
        for u in 0..order {
            let mut rest = search.adj[u] & !((1u64 << (u + 1)) - 1);
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                pairs.push(LabeledEdge::new(vertex(u), vertex(v)).expect("distinct endpoints"));
            }
        }
        out.matching = Some(pairs);
    }
    Ok(out)
}
