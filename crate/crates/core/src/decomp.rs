//! Explicit Hamilton decompositions of `Cay(D_2p, S)`.
//!
//! Each constructor follows one of the cycle-surgery constructions: the edge
//! classes of a rotation generator form two `n`-cycles (one per coset of
//! `<α>`), and taking the symmetric difference with a 4-cycle whose other two
//! edges are reflection edges splices them into one Hamilton cycle. The same
//! squares, taken against the reflection edges, leave either a perfect
//! matching or one more Hamilton cycle, provided the squares are placed
//! according to a [`BasePlan`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{build_graph, CayleyError, CayleyGraph, ConnectionSet, Cycle, EdgeSet, LabeledEdge};
use crate::dihedral::{gcd, is_prime, rotation_log, GroupElement, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("connection set is for n = {found}, expected {expected}")]
    WrongOrder { expected: u32, found: u32 },
    #[error("invalid exponent sequence: {0}")]
    BadExponents(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{context}: edge set is not a single Hamilton cycle ({detail})")]
    NotASingleCycle { context: String, detail: String },
    #[error("{context}: edge set is not a perfect matching")]
    NotAMatching { context: String },
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Which construction produced a part of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    OneReflection,
    AllReflections,
    Tetravalent,
    TwoReflections,
    D4Table,
}

impl Route {
    pub const ALL: [Route; 5] = [
        Route::OneReflection,
        Route::AllReflections,
        Route::Tetravalent,
        Route::TwoReflections,
        Route::D4Table,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Route::OneReflection => "one_reflection",
            Route::AllReflections => "all_reflections",
            Route::Tetravalent => "tetravalent",
            Route::TwoReflections => "two_reflections",
            Route::D4Table => "d4_table",
        }
    }

    pub fn from_name(name: &str) -> Option<Route> {
        Route::ALL.into_iter().find(|r| r.as_str() == name)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Hamilton cycles plus an optional perfect matching.
///
/// `routes[t]` records the construction that produced `cycles[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub cycles: Vec<Cycle>,
    pub matching: Option<Vec<LabeledEdge>>,
    pub routes: Vec<Route>,
    pub matching_route: Option<Route>,
}

impl Decomposition {
    fn push_cycle(&mut self, cycle: Cycle, route: Route) {
        self.cycles.push(cycle);
        self.routes.push(route);
    }

    fn set_matching(&mut self, matching: EdgeSet, route: Route) {
        self.matching = Some(matching.into_vec());
        self.matching_route = Some(route);
    }

    /// Appends the parts of `other`, which must be matching-free unless `self`
    /// has no matching yet.
    fn absorb(&mut self, other: Decomposition) {
        self.cycles.extend(other.cycles);
        self.routes.extend(other.routes);
        if other.matching.is_some() {
            debug_assert!(self.matching.is_none());
            self.matching = other.matching;
            self.matching_route = other.matching_route;
        }
    }
}

/// Anchor positions `m_t` for the surgery squares, one per exponent `i_t`.
///
/// The square for `t` occupies positions `m_t` and `m_t + i_t`; the closed
/// intervals `[m_t, m_t + i_t]` are pairwise disjoint or strictly nested and
/// never wrap around `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePlan {
    exponents: Vec<u32>,
    base_points: Vec<u32>,
}

impl BasePlan {
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn base_points(&self) -> &[u32] {
        &self.base_points
    }

    /// `(m_t, m_t + i_t)` for each `t`.
    pub fn intervals(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.base_points.iter().zip(&self.exponents).map(|(&m, &i)| (m, m + i))
    }
}

/// Edges in exactly one of the two sets.
pub fn symmetric_difference(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    a.symmetric_difference(b)
}

/// Places surgery squares for the folded exponents `1 <= i_1 < ... < i_s <= (p-1)/2`.
///
/// Alternate squares are nested inside `[0, (p-1)/2]` and `[(p+1)/2, p-1]`,
/// with the largest exponent always in the lower half.
pub fn choose_base_points(exponents: &[u32], p: u32) -> Result<BasePlan, DecompError> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(DecompError::NotOddPrime(p));
    }
    let half = (p - 1) / 2;
    if exponents.is_empty() {
        return Err(DecompError::BadExponents("no exponents".into()));
    }
    if let Some(&i) = exponents.iter().find(|&&i| i < 1 || i > half) {
        return Err(DecompError::BadExponents(format!("{i} outside [1, {half}]")));
    }
    if exponents.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DecompError::BadExponents(format!("{exponents:?} not strictly increasing")));
    }

    let s = exponents.len();
    let upper = p.div_ceil(2);
    // 1-based index t stored at t - 1.
    let mut m = vec![0u32; s];
    if s.is_multiple_of(2) {
        let k = (s / 2) as u32;
        for h in 1..=k {
            m[(2 * h - 1) as usize] = k - h;
            m[(2 * h - 2) as usize] = upper + (k - h);
        }
    } else {
        let k = ((s - 1) / 2) as u32;
        for h in 0..=k {
            m[(2 * h) as usize] = k - h;
        }
        for h in 1..=k {
            m[(2 * h - 1) as usize] = upper + (k - h);
        }
    }
    Ok(BasePlan {
        exponents: exponents.to_vec(),
        base_points: m,
    })
}

/// Walks a 2-regular edge set as one cycle of `expected_len` vertices.
///
/// The walk starts at the smallest vertex and leaves through its smaller
/// neighbour, so equal edge sets always give identical vertex sequences.
fn trace_cycle(edges: &EdgeSet, expected_len: usize, context: &str) -> Result<Cycle, DecompError> {
    let fail = |detail: String| DecompError::NotASingleCycle {
        context: context.to_string(),
        detail,
    };
    let mut adjacency: BTreeMap<GroupElement, Vec<GroupElement>> = BTreeMap::new();
    for e in edges.iter() {
        let (u, v) = e.endpoints();
        adjacency.entry(u).or_default().push(v);
        adjacency.entry(v).or_default().push(u);
    }
    if let Some((v, nbrs)) = adjacency.iter().find(|(_, nbrs)| nbrs.len() != 2) {
        return Err(fail(format!("{v} has degree {}", nbrs.len())));
    }
    if adjacency.len() != expected_len {
        return Err(fail(format!("covers {} of {expected_len} vertices", adjacency.len())));
    }
    let Some((&start, nbrs)) = adjacency.iter().next() else {
        return Err(fail("empty edge set".into()));
    };
    let mut walk = vec![start];
    let mut prev = start;
    let mut cur = *nbrs.iter().min().expect("degree two");
    while cur != start {
        walk.push(cur);
        let nbrs = &adjacency[&cur];
        let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
        prev = cur;
        cur = next;
    }
    if walk.len() != expected_len {
        return Err(fail(format!(
            "component through {start} has {} of {expected_len} vertices",
            walk.len()
        )));
    }
    Ok(Cycle::new(walk))
}

fn check_matching(edges: &EdgeSet, vertex_count: usize, context: &str) -> Result<(), DecompError> {
    let mut covered = BTreeMap::new();
    for e in edges.iter() {
        let (u, v) = e.endpoints();
        *covered.entry(u).or_insert(0) += 1;
        *covered.entry(v).or_insert(0) += 1;
    }
    if covered.len() != vertex_count || covered.values().any(|&d| d != 1) {
        return Err(DecompError::NotAMatching {
            context: context.to_string(),
        });
    }
    Ok(())
}

/// Splices the two coset cycles of a rotation class into one Hamilton cycle
/// by taking their symmetric difference with `square`.
pub fn join_cosets(graph: &CayleyGraph, class: &GroupElement, square: &Cycle) -> Result<Cycle, DecompError> {
    if square.len() != 4 {
        return Err(DecompError::Precondition(format!(
            "surgery square has {} vertices",
            square.len()
        )));
    }
    let cosets = graph.coset_cycles(class)?;
    let both = cosets.rotations.edge_set()?.union(&cosets.reflections.edge_set()?);
    let spliced = symmetric_difference(&both, &square.edge_set()?);
    trace_cycle(&spliced, graph.vertex_count(), "coset surgery")
}

fn require_odd_prime(p: u32) -> Result<(), DecompError> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(DecompError::NotOddPrime(p))
    }
}

/// Sorted folded exponents of the rotation classes in `rotations`, written as
/// powers of `base`.
fn folded_exponents(p: u32, rotations: &[GroupElement], base: &GroupElement) -> Result<Vec<u32>, DecompError> {
    let mut exps = Vec::new();
    for x in rotations {
        let e = rotation_log(base, x)?;
        exps.push(e.min(p - e));
    }
    exps.sort_unstable();
    exps.dedup();
    Ok(exps)
}

fn square(corner: GroupElement, step: GroupElement, bridge: GroupElement) -> Cycle {
    let far = corner * step;
    Cycle::new(vec![corner, far, bridge * far, bridge * corner])
}

/// `|S ∩ β<α>| = 1`: one Hamilton cycle per rotation class and a perfect
/// matching built from the `b`-edges.
pub fn decompose_one_reflection(
    p: u32,
    rotations: &[GroupElement],
    b: GroupElement,
) -> Result<Decomposition, DecompError> {
    require_odd_prime(p)?;
    if !b.is_reflection() || rotations.is_empty() || rotations.iter().any(GroupElement::is_reflection) {
        return Err(DecompError::Precondition(
            "expected a nonempty rotation set and one reflection".into(),
        ));
    }
    let cs = ConnectionSet::new(p, rotations.iter().copied().chain([b]))?;
    let graph = build_graph(&cs);
    let alpha = GroupElement::rotation(p, 1);
    let plan = choose_base_points(&folded_exponents(p, rotations, &alpha)?, p)?;

    let mut out = Decomposition::default();
    let mut matching = graph.edges_for_class(&b)?;
    for (m, far) in plan.intervals() {
        let step = GroupElement::rotation(p, (far - m) as i64);
        let sq = square(GroupElement::rotation(p, m as i64), step, b);
        out.push_cycle(join_cosets(&graph, &step.class_representative(), &sq)?, Route::OneReflection);
        matching = symmetric_difference(&matching, &sq.edge_set()?);
    }
    check_matching(&matching, graph.vertex_count(), "one-reflection matching")?;
    out.set_matching(matching, Route::OneReflection);
    Ok(out)
}

/// `S ⊆ β<α>`: consecutive pairs of reflections each give a Hamilton cycle;
/// an odd one out gives the matching.
pub fn decompose_all_reflections(p: u32, reflections: &[GroupElement]) -> Result<Decomposition, DecompError> {
    require_odd_prime(p)?;
    if reflections.len() < 2 || reflections.iter().any(GroupElement::is_rotation) {
        return Err(DecompError::Precondition("expected at least two reflections".into()));
    }
    let cs = ConnectionSet::new(p, reflections.iter().copied())?;
    if cs.len() != reflections.len() {
        return Err(DecompError::Precondition("repeated reflection".into()));
    }
    let graph = build_graph(&cs);
    let sorted = cs.reflections();

    let mut out = Decomposition::default();
    for pair in sorted.chunks_exact(2) {
        let edges = graph.edges_for_class(&pair[0])?.union(&graph.edges_for_class(&pair[1])?);
        out.push_cycle(
            trace_cycle(&edges, graph.vertex_count(), "reflection pair")?,
            Route::AllReflections,
        );
    }
    if sorted.len() % 2 == 1 {
        let last = sorted[sorted.len() - 1];
        out.set_matching(graph.edges_for_class(&last)?, Route::AllReflections);
    }
    Ok(out)
}

/// `S = {α^i, α^-i, βα^j, βα^k}` on `D_2n` for any `n >= 3`, with
/// `gcd(i, n) = gcd(k - j, n) = 1`: two Hamilton cycles.
pub fn decompose_tetravalent(n: u32, i: u32, j: u32, k: u32) -> Result<Decomposition, DecompError> {
    if n < 3 {
        return Err(DecompError::Precondition(format!("n = {n} < 3")));
    }
    if !(1..n).contains(&i) || j >= k || k >= n {
        return Err(DecompError::Precondition(format!(
            "need 1 <= i <= n-1 and 0 <= j < k <= n-1, got i={i} j={j} k={k}"
        )));
    }
    if gcd(i as u64, n as u64) != 1 || gcd((k - j) as u64, n as u64) != 1 {
        return Err(DecompError::Precondition(format!(
            "need gcd(i, n) = gcd(k - j, n) = 1, got i={i} k-j={} n={n}",
            k - j
        )));
    }
    let a = GroupElement::rotation(n, i as i64);
    let b = GroupElement::reflection(n, j as i64);
    let second = GroupElement::reflection(n, k as i64);
    let cs = ConnectionSet::new(n, [a, a.inverse(), b, second])?;
    let graph = build_graph(&cs);

    // βα^k = b a^s where i s ≡ k - j (mod n)
    let s = rotation_log(&a, &GroupElement::rotation(n, (k - j) as i64))?;
    if b * a.pow(s as u64) != second {
        return Err(DecompError::Precondition(format!("b a^{s} != {second}")));
    }

    let a_inv = a.inverse();
    let sq = Cycle::new(vec![a_inv, GroupElement::identity(n), b, b * a_inv]);
    let first = join_cosets(&graph, &a.class_representative(), &sq)?;
    let rest = symmetric_difference(graph.edges(), &first.edge_set()?);
    let second_cycle = trace_cycle(&rest, graph.vertex_count(), "tetravalent complement")?;

    let mut out = Decomposition::default();
    out.push_cycle(first, Route::Tetravalent);
    out.push_cycle(second_cycle, Route::Tetravalent);
    Ok(out)
}

/// Recognises `S = {α^i, α^-i, βα^j, βα^k}` satisfying the tetravalent
/// conditions and returns `(i, j, k)` with `i <= n/2` and `j < k`.
pub fn tetravalent_parameters(cs: &ConnectionSet) -> Option<(u32, u32, u32)> {
    let n = cs.n();
    let rot = cs.rotations();
    let refl = cs.reflections();
    if n < 3 || rot.len() != 2 || refl.len() != 2 {
        return None;
    }
    let i = rot[0].class_representative().exponent();
    let (j, k) = (refl[0].exponent(), refl[1].exponent());
    let ok = gcd(i as u64, n as u64) == 1 && gcd((k - j) as u64, n as u64) == 1;
    ok.then_some((i, j, k))
}

/// `|S ∩ β<α>| = 2`.
///
/// With `b`, `c` the two reflections ordered by exponent and `a = bc`, the
/// reflection edges form one Hamilton cycle `C`. Each rotation class yields a
/// Hamilton cycle by coset surgery, and `C` minus all the squares is the
/// final Hamilton cycle.
pub fn decompose_two_reflections(
    p: u32,
    rotations: &[GroupElement],
    b: GroupElement,
    c: GroupElement,
) -> Result<Decomposition, DecompError> {
    require_odd_prime(p)?;
    if !b.is_reflection() || !c.is_reflection() || b == c || rotations.iter().any(GroupElement::is_reflection) {
        return Err(DecompError::Precondition(
            "expected rotations and two distinct reflections".into(),
        ));
    }
    let (b, c) = if b < c { (b, c) } else { (c, b) };
    let cs = ConnectionSet::new(p, rotations.iter().copied().chain([b, c]))?;
    let graph = build_graph(&cs);
    let mut out = Decomposition::default();

    match cs.rotations().len() {
        0 => {
            out.push_cycle(
                trace_cycle(graph.edges(), graph.vertex_count(), "reflection cycle")?,
                Route::TwoReflections,
            );
            return Ok(out);
        }
        2 => {
            let i = cs.rotations()[0].class_representative().exponent();
            return decompose_tetravalent(p, i, b.exponent(), c.exponent());
        }
        _ => {}
    }

    let a = b * c;
    let plan = choose_base_points(&folded_exponents(p, &cs.rotations(), &a)?, p)?;
    let mut remainder = graph.edges_for_class(&b)?.union(&graph.edges_for_class(&c)?);
    for (m, far) in plan.intervals() {
        let step = a.pow((far - m) as u64);
        let sq = square(a.pow(m as u64), step, b);
        out.push_cycle(join_cosets(&graph, &step.class_representative(), &sq)?, Route::TwoReflections);
        remainder = symmetric_difference(&remainder, &sq.edge_set()?);
    }
    out.push_cycle(
        trace_cycle(&remainder, graph.vertex_count(), "reflection cycle after surgery")?,
        Route::TwoReflections,
    );
    Ok(out)
}

fn d4_table(cs: &ConnectionSet) -> Result<Decomposition, DecompError> {
    let r = |k| GroupElement::rotation(2, k);
    let s = |k| GroupElement::reflection(2, k);
    let mut out = Decomposition::default();
    match cs.tokens().join(",").as_str() {
        "r1,s0" => out.push_cycle(Cycle::new(vec![r(0), r(1), s(1), s(0)]), Route::D4Table),
        "r1,s1" => out.push_cycle(Cycle::new(vec![r(0), r(1), s(0), s(1)]), Route::D4Table),
        "s0,s1" => out.push_cycle(Cycle::new(vec![r(0), s(0), r(1), s(1)]), Route::D4Table),
        "r1,s0,s1" => {
            out.push_cycle(Cycle::new(vec![r(0), r(1), s(1), s(0)]), Route::D4Table);
            let matching = [LabeledEdge::new(r(0), s(1))?, LabeledEdge::new(r(1), s(0))?];
            out.set_matching(matching.into_iter().collect(), Route::D4Table);
        }
        other => {
            return Err(DecompError::Precondition(format!(
                "{{{other}}} is not a connection set of D_4"
            )))
        }
    }
    Ok(out)
}

/// Hamilton decomposition of `Cay(D_2p, S)` for prime `p`.
///
/// Sets with three or more reflections and some rotations are split: with an
/// even number of reflections, the two of smallest exponent go with the
/// rotations and the rest pair up; with an odd number, the smallest reflection
/// goes with the rotations and the rest pair up.
pub fn decompose(p: u32, cs: &ConnectionSet) -> Result<Decomposition, DecompError> {
    if cs.n() != p {
        return Err(DecompError::WrongOrder {
            expected: p,
            found: cs.n(),
        });
    }
    if !is_prime(p) {
        return Err(DecompError::NotPrime(p));
    }
    if p == 2 {
        return d4_table(cs);
    }
    let rotations = cs.rotations();
    let reflections = cs.reflections();
    match (rotations.len(), reflections.len()) {
        (_, 1) => decompose_one_reflection(p, &rotations, reflections[0]),
        (0, _) => decompose_all_reflections(p, &reflections),
        (_, 2) => decompose_two_reflections(p, &rotations, reflections[0], reflections[1]),
        (_, r) if r % 2 == 0 => {
            let mut out = decompose_two_reflections(p, &rotations, reflections[0], reflections[1])?;
            out.absorb(decompose_all_reflections(p, &reflections[2..])?);
            Ok(out)
        }
        _ => {
            let mut out = decompose_one_reflection(p, &rotations, reflections[0])?;
            out.absorb(decompose_all_reflections(p, &reflections[1..])?);
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn r(n: u32, k: i64) -> GroupElement {
        GroupElement::rotation(n, k)
    }

    fn s(n: u32, k: i64) -> GroupElement {
        GroupElement::reflection(n, k)
    }

    fn set(n: u32, text: &str) -> ConnectionSet {
        ConnectionSet::parse(n, text).unwrap()
    }

    /// Minimal structural check used inside this module; the real checker
    /// lives in `verify` and is exercised by the integration tests.
    fn assert_partition(graph: &CayleyGraph, d: &Decomposition) {
        let mut all = EdgeSet::new();
        let mut count = 0;
        for c in &d.cycles {
            assert_eq!(c.len(), graph.vertex_count());
            let distinct: BTreeSet<_> = c.vertices().iter().collect();
            assert_eq!(distinct.len(), c.len());
            for (u, v) in c.steps() {
                assert!(graph.has_edge(&u, &v), "{u}-{v} not an edge");
                all.insert(LabeledEdge::new(u, v).unwrap());
                count += 1;
            }
        }
        if let Some(m) = &d.matching {
            assert_eq!(m.len(), graph.n() as usize);
            for e in m {
                all.insert(*e);
                count += 1;
            }
        }
        assert_eq!(count, graph.edge_count());
        assert_eq!(&all, graph.edges());
        assert_eq!(d.cycles.len(), graph.valency() / 2);
        assert_eq!(d.matching.is_some(), graph.valency() % 2 == 1);
        assert_eq!(d.routes.len(), d.cycles.len());
    }

    fn plan(exps: &[u32], p: u32) -> Vec<u32> {
        choose_base_points(exps, p).unwrap().base_points().to_vec()
    }

    #[test]
    fn base_point_examples() {
        assert_eq!(plan(&[1, 2], 7), vec![4, 0]);
        assert_eq!(plan(&[1, 2, 3], 7), vec![1, 4, 0]);
        assert_eq!(plan(&[1, 2, 3, 4], 11), vec![7, 1, 6, 0]);
        assert_eq!(plan(&[2], 5), vec![0]);
    }

    #[test]
    fn base_point_errors() {
        assert!(matches!(choose_base_points(&[], 7), Err(DecompError::BadExponents(_))));
        assert!(matches!(choose_base_points(&[0, 1], 7), Err(DecompError::BadExponents(_))));
        assert!(matches!(choose_base_points(&[1, 4], 7), Err(DecompError::BadExponents(_))));
        assert!(matches!(choose_base_points(&[2, 1], 7), Err(DecompError::BadExponents(_))));
        assert!(matches!(choose_base_points(&[1, 1], 7), Err(DecompError::BadExponents(_))));
        assert_eq!(choose_base_points(&[1], 8), Err(DecompError::NotOddPrime(8)));
    }

    #[test]
    fn join_cosets_rotation_then_reflection() {
        let g = build_graph(&set(7, "r1,r6,s0"));
        let sq = Cycle::new(vec![r(7, 0), r(7, 1), s(7, 1), s(7, 0)]);
        let h = join_cosets(&g, &r(7, 1), &sq).unwrap();
        let expected: Vec<GroupElement> = (0..7)
            .map(|k| r(7, -k))
            .chain((0..7).map(|k| s(7, 1 + k)))
            .collect();
        // traced from r0 toward its smaller neighbour r6, down to r1, then across
        assert_eq!(h.vertices()[0], r(7, 0));
        assert_eq!(h.len(), 14);
        let rot_part: Vec<_> = h.vertices()[..7].to_vec();
        assert!(rot_part.iter().all(GroupElement::is_rotation));
        assert_eq!(h.vertices(), &expected[..]);
    }

    #[test]
    fn join_cosets_step_two() {
        let g = build_graph(&set(5, "r2,r3,s0"));
        let sq = Cycle::new(vec![r(5, 0), r(5, 2), s(5, 2), s(5, 0)]);
        let h = join_cosets(&g, &r(5, 2), &sq).unwrap();
        assert_eq!(h.len(), 10);
        let class_edges = g.edges_for_class(&r(5, 2)).unwrap();
        let used = h.edge_set().unwrap();
        let from_class = used.iter().filter(|e| class_edges.contains(e)).count();
        assert_eq!(from_class, 8);
        assert_eq!(used.len() - from_class, 2);
    }

    #[test]
    fn join_cosets_rejects_disjoint_square() {
        let g = build_graph(&set(7, "r1,r6,s0,s1"));
        let sq = Cycle::new(vec![r(7, 0), s(7, 0), r(7, 1), s(7, 1)]);
        assert!(matches!(
            join_cosets(&g, &r(7, 1), &sq),
            Err(DecompError::NotASingleCycle { .. })
        ));
        let tri = Cycle::new(vec![r(7, 0), r(7, 1), s(7, 1)]);
        assert!(matches!(join_cosets(&g, &r(7, 1), &tri), Err(DecompError::Precondition(_))));
    }

    #[test]
    fn one_reflection_examples() {
        for (p, text, b, cycles) in [
            (7, "r1,r6", 0, 1),
            (7, "r1,r2,r5,r6", 0, 2),
            (5, "r1,r2,r3,r4", 3, 2),
            (11, "r1,r10,r2,r9,r3,r8,r4,r7,r5,r6", 4, 5),
        ] {
            let rot = set(p, &format!("{text},s0")).rotations();
            let d = decompose_one_reflection(p, &rot, s(p, b)).unwrap();
            assert_eq!(d.cycles.len(), cycles);
            assert_eq!(d.matching.as_ref().unwrap().len(), p as usize);
            let g = build_graph(&ConnectionSet::new(p, rot.iter().copied().chain([s(p, b)])).unwrap());
            assert_partition(&g, &d);
        }
    }

    #[test]
    fn literal_anchor_squares_collide() {
        // squares anchored at α^1 (step 1) and α^2 (step 2) share α^2
        let first: BTreeSet<u32> = [1, 2].into();
        let second: BTreeSet<u32> = [2, 4].into();
        assert!(!first.is_disjoint(&second));
        let plan = choose_base_points(&[1, 2], 7).unwrap();
        let corners: Vec<u32> = plan.intervals().flat_map(|(a, b)| [a, b]).collect();
        let distinct: BTreeSet<u32> = corners.iter().copied().collect();
        assert_eq!(distinct.len(), corners.len());
    }

    #[test]
    fn all_reflection_examples() {
        let d = decompose_all_reflections(7, &[s(7, 0), s(7, 1)]).unwrap();
        assert_eq!(d.cycles.len(), 1);
        assert!(d.matching.is_none());

        let d = decompose_all_reflections(7, &[s(7, 4), s(7, 0), s(7, 1)]).unwrap();
        assert_eq!(d.cycles.len(), 1);
        let m = d.matching.unwrap();
        assert!(m.iter().all(|e| e.label() == s(7, 4)));

        let all: Vec<_> = (0..5).map(|k| s(5, k)).collect();
        let d = decompose_all_reflections(5, &all).unwrap();
        assert_partition(&build_graph(&ConnectionSet::new(5, all).unwrap()), &d);

        assert!(decompose_all_reflections(7, &[s(7, 0)]).is_err());
        assert!(decompose_all_reflections(7, &[s(7, 0), r(7, 1)]).is_err());
        assert!(decompose_all_reflections(7, &[s(7, 0), s(7, 0)]).is_err());
    }

    #[test]
    fn tetravalent_examples() {
        for (n, i, j, k) in [(7, 1, 0, 1), (12, 5, 1, 2), (7, 1, 0, 2), (4, 1, 0, 1), (9, 2, 3, 8)] {
            let d = decompose_tetravalent(n, i, j, k).unwrap();
            assert_eq!(d.cycles.len(), 2);
            let a = r(n, i as i64);
            let cs = ConnectionSet::new(n, [a, a.inverse(), s(n, j as i64), s(n, k as i64)]).unwrap();
            let g = build_graph(&cs);
            assert_partition(&g, &d);
            let union = d.cycles[0].edge_set().unwrap().union(&d.cycles[1].edge_set().unwrap());
            assert_eq!(union.len(), 4 * n as usize);
        }
    }

    #[test]
    fn tetravalent_errors() {
        assert!(decompose_tetravalent(12, 2, 0, 1).is_err());
        assert!(decompose_tetravalent(12, 1, 0, 2).is_err());
        assert!(decompose_tetravalent(7, 1, 2, 2).is_err());
        assert!(decompose_tetravalent(7, 0, 0, 1).is_err());
        assert!(decompose_tetravalent(2, 1, 0, 1).is_err());
    }

    #[test]
    fn tetravalent_recogniser() {
        assert_eq!(tetravalent_parameters(&set(12, "r5,r7,s1,s2")), Some((5, 1, 2)));
        assert_eq!(tetravalent_parameters(&set(12, "r5,r7,s1,s3,s2")), None);
        assert_eq!(tetravalent_parameters(&set(12, "r1,r11,s0,s3")), None);
    }

    #[test]
    fn two_reflection_examples() {
        let d = decompose_two_reflections(7, &[], s(7, 0), s(7, 3)).unwrap();
        assert_eq!(d.cycles.len(), 1);

        let rot = set(7, "r1,r6,r2,r5,s0").rotations();
        let d = decompose_two_reflections(7, &rot, s(7, 1), s(7, 0)).unwrap();
        assert_eq!(d.cycles.len(), 3);
        assert!(d.matching.is_none());
        assert_partition(&build_graph(&set(7, "r1,r6,r2,r5,s0,s1")), &d);

        let rot = set(11, "r1,r10,r2,r9,r3,r8,s0").rotations();
        let d = decompose_two_reflections(11, &rot, s(11, 0), s(11, 4)).unwrap();
        assert_eq!(d.cycles.len(), 4);
        assert_partition(&build_graph(&set(11, "r1,r10,r2,r9,r3,r8,s0,s4")), &d);

        let d = decompose_two_reflections(5, &[r(5, 2), r(5, 3)], s(5, 0), s(5, 2)).unwrap();
        assert!(d.routes.iter().all(|&r| r == Route::Tetravalent));
    }

    #[test]
    fn dispatcher_examples() {
        let full = set(3, "r1,r2,s0,s1,s2");
        let d = decompose(3, &full).unwrap();
        assert_eq!(d.cycles.len(), 2);
        assert_partition(&build_graph(&full), &d);
        assert_eq!(d.routes, vec![Route::OneReflection, Route::AllReflections]);

        let cs = set(5, "r1,r4,s0,s1,s2");
        let d = decompose(5, &cs).unwrap();
        assert_partition(&build_graph(&cs), &d);
        assert_eq!(d.matching_route, Some(Route::OneReflection));

        let cs = set(7, "r1,r6,r3,r4,s0,s2,s3,s5");
        let d = decompose(7, &cs).unwrap();
        assert_partition(&build_graph(&cs), &d);
        assert_eq!(
            d.routes,
            vec![Route::TwoReflections, Route::TwoReflections, Route::TwoReflections, Route::AllReflections]
        );

        let k4 = set(2, "r1,s0,s1");
        let d = decompose(2, &k4).unwrap();
        assert_partition(&build_graph(&k4), &d);
    }

    #[test]
    fn d4_table_is_complete() {
        for text in ["r1,s0", "r1,s1", "s0,s1", "r1,s0,s1"] {
            let cs = set(2, text);
            let d = decompose(2, &cs).unwrap();
            assert_partition(&build_graph(&cs), &d);
            assert!(d.routes.iter().all(|&r| r == Route::D4Table));
        }
    }

    #[test]
    fn dispatcher_errors() {
        let cs = set(9, "r1,r8,s0");
        assert_eq!(decompose(9, &cs), Err(DecompError::NotPrime(9)));
        assert_eq!(
            decompose(7, &set(5, "s0,s1")),
            Err(DecompError::WrongOrder { expected: 7, found: 5 })
        );
    }

    #[test]
    fn deterministic() {
        let cs = set(11, "r2,r9,r5,r6,s1,s3,s7");
        assert_eq!(decompose(11, &cs).unwrap(), decompose(11, &cs).unwrap());
    }

    #[test]
    fn route_names_round_trip() {
        for r in Route::ALL {
            assert_eq!(Route::from_name(r.as_str()), Some(r));
        }
        assert_eq!(Route::from_name("nope"), None);
    }
}
