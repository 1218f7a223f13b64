//! Cayley graphs `Cay(D_2n, S)` with generator-labelled edges.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dihedral::{gcd, generates, GroupElement, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("connection set contains the identity")]
    ContainsIdentity,
    #[error("connection set is not closed under inverses: {witness} is present but {} is not", witness.inverse())]
    NotInverseClosed { witness: GroupElement },
    #[error("connection set does not generate D_{}", 2 * n)]
    NotGenerating { n: u32 },
    #[error("element {element} does not belong to D_{}", 2 * n)]
    WrongGroup { element: GroupElement, n: u32 },
    #[error("duplicate element `{0}` in connection set")]
    Duplicate(String),
    #[error("edge endpoints must be distinct, got {0} twice")]
    DegenerateEdge(GroupElement),
    #[error("{0} is not an edge class of this graph")]
    UnknownClass(GroupElement),
    #[error("rotation class {0} does not generate the rotation subgroup")]
    ClassNotCosetGenerating(GroupElement),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A validated connection set: identity-free, inverse-closed and generating.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    n: u32,
    elements: BTreeSet<GroupElement>,
}

/// Checks the three connection-set axioms and returns the validated set.
pub fn validate_connection_set(
    n: u32,
    raw: impl IntoIterator<Item = GroupElement>,
) -> Result<ConnectionSet, CayleyError> {
    let cs = ConnectionSet::symmetric(n, raw)?;
    let list: Vec<GroupElement> = cs.elements().collect();
    if !generates(n, &list) {
        return Err(CayleyError::NotGenerating { n });
    }
    Ok(cs)
}

impl ConnectionSet {
    pub fn new(n: u32, raw: impl IntoIterator<Item = GroupElement>) -> Result<Self, CayleyError> {
        validate_connection_set(n, raw)
    }

    /// An identity-free, inverse-closed set that need not generate `D_2n`.
    /// Its Cayley graph may be disconnected; the decomposition routines
    /// expect a set from [`validate_connection_set`].
    pub fn symmetric(n: u32, raw: impl IntoIterator<Item = GroupElement>) -> Result<Self, CayleyError> {
        let elements: BTreeSet<GroupElement> = raw.into_iter().collect();
        if let Some(g) = elements.iter().find(|g| g.n() != n) {
            return Err(CayleyError::WrongGroup { element: *g, n });
        }
        if elements.iter().any(GroupElement::is_identity) {
            return Err(CayleyError::ContainsIdentity);
        }
        if let Some(g) = elements.iter().find(|g| !elements.contains(&g.inverse())) {
            return Err(CayleyError::NotInverseClosed { witness: *g });
        }
        Ok(ConnectionSet { n, elements })
    }

    /// Parses a comma-separated token list such as `r1,r6,s0`.
    pub fn parse(n: u32, text: &str) -> Result<Self, CayleyError> {
        let mut seen = BTreeSet::new();
        for token in text.split(',').map(str::trim) {
            let g = GroupElement::parse(token, n)?;
            if !seen.insert(g) {
                return Err(CayleyError::Duplicate(token.to_string()));
            }
        }
        validate_connection_set(n, seen)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.contains(g)
    }

    /// Elements in canonical order (rotations first).
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.elements.iter().copied()
    }

    /// `S ∩ <α>`.
    pub fn rotations(&self) -> Vec<GroupElement> {
        self.elements().filter(GroupElement::is_rotation).collect()
    }

    /// `S ∩ β<α>`.
    pub fn reflections(&self) -> Vec<GroupElement> {
        self.elements().filter(GroupElement::is_reflection).collect()
    }

    /// Edge classes: one canonical representative per `{s, s^-1}`.
    pub fn classes(&self) -> Vec<GroupElement> {
        let set: BTreeSet<GroupElement> = self.elements().map(|g| g.class_representative()).collect();
        set.into_iter().collect()
    }

    pub fn tokens(&self) -> Vec<String> {
        self.elements().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join(","))
    }
}

/// An undirected edge `{u, v}` tagged with the generator class producing it.
///
/// The label is determined by the endpoints: `hi * lo^-1` lies in the class.
/// Ordering and equality only look at the endpoints in practice, since the
/// label is a function of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledEdge {
    lo: GroupElement,
    hi: GroupElement,
    label: GroupElement,
}

impl LabeledEdge {
    pub fn new(u: GroupElement, v: GroupElement) -> Result<Self, CayleyError> {
        if u == v {
            return Err(CayleyError::DegenerateEdge(u));
        }
        let quotient = v.multiply(&u.inverse())?;
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        Ok(Self {
            lo,
            hi,
            label: quotient.class_representative(),
        })
    }

    pub fn endpoints(&self) -> (GroupElement, GroupElement) {
        (self.lo, self.hi)
    }

    pub fn label(&self) -> GroupElement {
        self.label
    }

    pub fn touches(&self, g: &GroupElement) -> bool {
        self.lo == *g || self.hi == *g
    }
}

impl fmt::Display for LabeledEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl Serialize for LabeledEdge {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.lo)?;
        seq.serialize_element(&self.hi)?;
        seq.end()
    }
}

/// A set of labelled edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet(BTreeSet<LabeledEdge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: LabeledEdge) -> bool {
        self.0.insert(e)
    }

    pub fn contains(&self, e: &LabeledEdge) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LabeledEdge> + '_ {
        self.0.iter()
    }

    /// Edges in exactly one of `self` and `other`.
    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn into_vec(self) -> Vec<LabeledEdge> {
        self.0.into_iter().collect()
    }
}

impl FromIterator<LabeledEdge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = LabeledEdge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl IntoIterator for EdgeSet {
    type Item = LabeledEdge;
    type IntoIter = std::collections::btree_set::IntoIter<LabeledEdge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// A closed walk given by its vertex sequence; the last vertex is joined to
/// the first. No validity is enforced here, the checker does that.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle(Vec<GroupElement>);

impl Cycle {
    pub fn new(vertices: Vec<GroupElement>) -> Self {
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive vertex pairs, including the closing pair.
    pub fn steps(&self) -> impl Iterator<Item = (GroupElement, GroupElement)> + '_ {
        let len = self.0.len();
        (0..len).map(move |i| (self.0[i], self.0[(i + 1) % len]))
    }

    pub fn edge_set(&self) -> Result<EdgeSet, CayleyError> {
        self.steps().map(|(u, v)| LabeledEdge::new(u, v)).collect()
    }

    pub fn into_vertices(self) -> Vec<GroupElement> {
        self.0
    }
}

impl Serialize for Cycle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// The two `n`-cycles traced by a coset-generating rotation class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetCycles {
    /// The cycle on `<α>`.
    pub rotations: Cycle,
    /// The cycle on `β<α>`.
    pub reflections: Cycle,
}

/// `Cay(D_2n, S)`: vertices are the `2n` group elements, `g ~ s*g` for `s ∈ S`.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    connection_set: ConnectionSet,
    edges: EdgeSet,
    neighbors: Vec<Vec<usize>>,
    pairs: HashSet<(usize, usize)>,
}

impl CayleyGraph {
    pub fn new(connection_set: &ConnectionSet) -> Self {
        let n = connection_set.n();
        let order = 2 * n as usize;
        let mut edges = EdgeSet::new();
        for g in GroupElement::all(n) {
            for s in connection_set.elements() {
                let e = LabeledEdge::new(g, s * g).expect("identity excluded from connection set");
                edges.insert(e);
            }
        }
        let mut neighbors = vec![Vec::new(); order];
        let mut pairs = HashSet::with_capacity(edges.len());
        for e in edges.iter() {
            let (u, v) = e.endpoints();
            neighbors[u.index()].push(v.index());
            neighbors[v.index()].push(u.index());
            pairs.insert((u.index(), v.index()));
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Self {
            connection_set: connection_set.clone(),
            edges,
            neighbors,
            pairs,
        }
    }

    pub fn n(&self) -> u32 {
        self.connection_set.n()
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.connection_set
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n() as usize
    }

    pub fn vertices(&self) -> impl Iterator<Item = GroupElement> {
        GroupElement::all(self.n())
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Valency `|S|`.
    pub fn valency(&self) -> usize {
        self.connection_set.len()
    }

    pub fn degree(&self, g: &GroupElement) -> usize {
        self.neighbors[g.index()].len()
    }

    pub fn neighbors(&self, g: &GroupElement) -> impl Iterator<Item = GroupElement> + '_ {
        let n = self.n();
        self.neighbors[g.index()].iter().map(move |&i| GroupElement::from_index(n, i))
    }

    pub fn contains_vertex(&self, g: &GroupElement) -> bool {
        g.n() == self.n()
    }

    pub fn has_edge(&self, u: &GroupElement, v: &GroupElement) -> bool {
        if !self.contains_vertex(u) || !self.contains_vertex(v) {
            return false;
        }
        let (a, b) = if u.index() < v.index() {
            (u.index(), v.index())
        } else {
            (v.index(), u.index())
        };
        self.pairs.contains(&(a, b))
    }

    /// Edges labelled with `class`, given by its canonical representative.
    pub fn edges_for_class(&self, class: &GroupElement) -> Result<EdgeSet, CayleyError> {
        self.check_class(class)?;
        Ok(self.edges.iter().filter(|e| e.label() == *class).copied().collect())
    }

    /// For a rotation class `{α^i, α^-i}` with `gcd(i, n) = 1`, the two
    /// `n`-cycles it traces on the two cosets of `<α>`.
    pub fn coset_cycles(&self, class: &GroupElement) -> Result<CosetCycles, CayleyError> {
        self.check_class(class)?;
        let n = self.n();
        if class.is_reflection() || gcd(class.exponent() as u64, n as u64) != 1 {
            return Err(CayleyError::ClassNotCosetGenerating(*class));
        }
        let step = class.exponent() as i64;
        let rotations = (0..n as i64).map(|t| GroupElement::rotation(n, t * step)).collect();
        let reflections = (0..n as i64).map(|t| GroupElement::reflection(n, t * step)).collect();
        Ok(CosetCycles {
            rotations: Cycle::new(rotations),
            reflections: Cycle::new(reflections),
        })
    }

    fn check_class(&self, class: &GroupElement) -> Result<(), CayleyError> {
        let known = class.n() == self.n()
            && class.class_representative() == *class
            && self.connection_set.elements().any(|s| s.class_representative() == *class);
        if known {
            Ok(())
        } else {
            Err(CayleyError::UnknownClass(*class))
        }
    }
}

/// Builds `Cay(D_2n, S)`.
pub fn build_graph(connection_set: &ConnectionSet) -> CayleyGraph {
    CayleyGraph::new(connection_set)
}
