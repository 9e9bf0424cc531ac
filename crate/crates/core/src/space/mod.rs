//! Network spaces: metric graphs whose points may sit in the interior of
//! edges, with exact geodesic distances.

mod ball;
mod path;
mod region;
mod surgery;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planarity;
use crate::rational::Rational;

pub use ball::{assign_balls, ball_extent, clip_ball_to_subspace, coverage, Ball, BallAssignment, BallField};
pub(crate) use ball::assign_fields;
pub use path::{tree_geodesic, PathLine};
pub use region::{Gap, Region, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Tree,
    Planar,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: NodeId,
    pub v: NodeId,
    pub len: Rational,
}

impl Edge {
    pub fn new(id: u32, u: u32, v: u32, len: Rational) -> Self {
        Edge { id: EdgeId(id), u: NodeId(u), v: NodeId(v), len }
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Offset of endpoint `x` measured from `u`.
    pub fn offset_of(&self, x: NodeId) -> Rational {
        if x == self.u {
            Rational::ZERO
        } else {
            self.len
        }
    }
}

/// A location on a network space. Offsets are measured from the edge's `u`
/// endpoint; offsets equal to `0` or the edge length are always stored as the
/// corresponding node, so equality is syntactic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointOnSpace {
    Node(NodeId),
    OnEdge { edge: EdgeId, offset: Rational },
}

#[derive(Clone, Debug, PartialEq)]
struct NodeEntry {
    incident: Vec<EdgeId>,
    coord: Option<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NetworkSpace {
    nodes: BTreeMap<NodeId, NodeEntry>,
    edges: BTreeMap<EdgeId, Edge>,
    kind: SpaceKind,
    surgery: bool,
}

/// Shortest-path distances from a fixed source point to every node.
pub type NodeDistances = BTreeMap<NodeId, Rational>;

impl NetworkSpace {
    /// Builds and validates a top-level space: connected, positive lengths, no
    /// node of degree 2, and the structural promise of `kind` holds.
    pub fn new(
        kind: SpaceKind,
        nodes: impl IntoIterator<Item = (NodeId, Option<(f64, f64)>)>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let space = Self::assemble(kind, nodes, edges, false)?;
        space.validate()?;
        Ok(space)
    }

    /// Convenience constructor without coordinates.
    pub fn from_edges(kind: SpaceKind, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: Vec<Edge> = edges.into_iter().collect();
        let nodes: BTreeSet<NodeId> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
        Self::new(kind, nodes.into_iter().map(|n| (n, None)), edges)
    }

    fn assemble(
        kind: SpaceKind,
        nodes: impl IntoIterator<Item = (NodeId, Option<(f64, f64)>)>,
        edges: impl IntoIterator<Item = Edge>,
        surgery: bool,
    ) -> Result<Self> {
        let mut node_map = BTreeMap::new();
        for (id, coord) in nodes {
            if node_map.insert(id, NodeEntry { incident: Vec::new(), coord }).is_some() {
                return Err(Error::DuplicateNode(id));
            }
        }
        let mut edge_map = BTreeMap::new();
        for e in edges {
            if e.u == e.v {
                return Err(Error::SelfLoop(e.id));
            }
            if !e.len.is_positive() {
                return Err(Error::NonPositiveLength(e.id));
            }
            for x in [e.u, e.v] {
                node_map.get_mut(&x).ok_or(Error::UnknownNode(x))?.incident.push(e.id);
            }
            let id = e.id;
            if edge_map.insert(id, e).is_some() {
                return Err(Error::DuplicateEdge(id));
            }
        }
        Ok(NetworkSpace { nodes: node_map, edges: edge_map, kind, surgery })
    }

    fn validate(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::Empty);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if let Some((&id, _)) = self.nodes.iter().find(|(_, n)| n.incident.len() == 2) {
            return Err(Error::DegreeTwo(id));
        }
        match self.kind {
            SpaceKind::Tree => {
                if self.edges.len() + 1 != self.nodes.len() {
                    return Err(Error::NotATree);
                }
            }
            SpaceKind::Planar => {
                if !self.passes_planarity_test() {
                    return Err(Error::NotPlanar);
                }
            }
            SpaceKind::General => {}
        }
        Ok(())
    }

    /// Runs the planarity test on the underlying abstract graph.
    pub fn passes_planarity_test(&self) -> bool {
        let index: BTreeMap<NodeId, usize> =
            self.nodes.keys().enumerate().map(|(i, &n)| (n, i)).collect();
        let pairs: Vec<(usize, usize)> =
            self.edges.values().map(|e| (index[&e.u], index[&e.v])).collect();
        planarity::is_planar(self.nodes.len(), &pairs)
    }

    fn is_connected(&self) -> bool {
        let Some(&start) = self.nodes.keys().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (_, y) in self.neighbors(x) {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() == self.nodes.len()
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn is_tree(&self) -> bool {
        self.kind == SpaceKind::Tree
    }

    /// Whether the space is known to be planar (trees are planar).
    pub fn is_planar(&self) -> bool {
        matches!(self.kind, SpaceKind::Tree | SpaceKind::Planar)
    }

    /// True when produced by surgery; such spaces may contain degree-2 nodes.
    pub fn from_surgery(&self) -> bool {
        self.surgery
    }

    pub fn has_degree_two(&self) -> bool {
        self.nodes.values().any(|n| n.incident.len() == 2)
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_node(&self, v: NodeId) -> bool {
        self.nodes.contains_key(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges.get(&e).ok_or(Error::UnknownEdge(e))
    }

    pub fn coord(&self, v: NodeId) -> Option<(f64, f64)> {
        self.nodes.get(&v).and_then(|n| n.coord)
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.nodes.get(&v).map_or(0, |n| n.incident.len())
    }

    pub fn incident(&self, v: NodeId) -> &[EdgeId] {
        self.nodes.get(&v).map_or(&[], |n| n.incident.as_slice())
    }

    /// `(edge, neighbor)` pairs around `v`.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = (EdgeId, NodeId)> + '_ {
        self.incident(v).iter().map(move |e| {
            let edge = &self.edges[e];
            (*e, edge.other(v))
        })
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.degree(v) == 1
    }

    pub fn is_internal(&self, v: NodeId) -> bool {
        self.degree(v) >= 3
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        self.node_ids().filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn internal_nodes(&self) -> Vec<NodeId> {
        self.node_ids().filter(|&v| self.is_internal(v)).collect()
    }

    /// Number of leaves.
    pub fn k(&self) -> usize {
        self.leaves().len()
    }

    /// Number of internal nodes.
    pub fn t(&self) -> usize {
        self.internal_nodes().len()
    }

    pub fn total_length(&self) -> Rational {
        self.edges.values().fold(Rational::ZERO, |acc, e| acc + e.len)
    }

    /// Validates `p` and returns its canonical form.
    pub fn check_point(&self, p: &PointOnSpace) -> Result<PointOnSpace> {
        match *p {
            PointOnSpace::Node(v) => {
                if self.has_node(v) {
                    Ok(*p)
                } else {
                    Err(Error::UnknownNode(v))
                }
            }
            PointOnSpace::OnEdge { edge, offset } => self.point(edge, offset),
        }
    }

    /// Canonical point at `offset` from `u` along `edge`.
    pub fn point(&self, edge: EdgeId, offset: Rational) -> Result<PointOnSpace> {
        let e = self.edge(edge)?;
        if offset.is_negative() || offset > e.len {
            return Err(Error::OffsetOutOfRange(edge));
        }
        Ok(if offset.is_zero() {
            PointOnSpace::Node(e.u)
        } else if offset == e.len {
            PointOnSpace::Node(e.v)
        } else {
            PointOnSpace::OnEdge { edge, offset }
        })
    }

    /// Whether point `p` lies in this (sub)space.
    pub fn contains_point(&self, p: &PointOnSpace) -> bool {
        match p {
            PointOnSpace::Node(v) => self.has_node(*v),
            PointOnSpace::OnEdge { edge, .. } => self.has_edge(*edge),
        }
    }

    /// Dijkstra from an arbitrary point; interior points act as temporary
    /// subdivision vertices.
    pub fn node_distances(&self, from: &PointOnSpace) -> Result<NodeDistances> {
        let from = self.check_point(from)?;
        let mut dist: NodeDistances = BTreeMap::new();
        let mut heap = BinaryHeap::new();
        match from {
            PointOnSpace::Node(v) => heap.push(Reverse((Rational::ZERO, v))),
            PointOnSpace::OnEdge { edge, offset } => {
                let e = &self.edges[&edge];
                heap.push(Reverse((offset, e.u)));
                heap.push(Reverse((e.len - offset, e.v)));
            }
        }
        while let Some(Reverse((d, x))) = heap.pop() {
            if dist.contains_key(&x) {
                continue;
            }
            dist.insert(x, d);
            for (e, y) in self.neighbors(x) {
                if !dist.contains_key(&y) {
                    heap.push(Reverse((d + self.edges[&e].len, y)));
                }
            }
        }
        Ok(dist)
    }

    /// Distance from the source of `dist` (which is `from`) to `to`.
    pub fn distance_with(
        &self,
        from: &PointOnSpace,
        dist: &NodeDistances,
        to: &PointOnSpace,
    ) -> Result<Rational> {
        let to = self.check_point(to)?;
        Ok(match to {
            PointOnSpace::Node(v) => dist[&v],
            PointOnSpace::OnEdge { edge, offset } => {
                let e = &self.edges[&edge];
                let mut d = (dist[&e.u] + offset).min(dist[&e.v] + e.len - offset);
                if let PointOnSpace::OnEdge { edge: fe, offset: fo } = *from {
                    if fe == edge {
                        d = d.min((offset - fo).abs());
                    }
                }
                d
            }
        })
    }

    /// Geodesic distance between two points.
    pub fn geodesic_distance(&self, p: &PointOnSpace, q: &PointOnSpace) -> Result<Rational> {
        let p = self.check_point(p)?;
        let dist = self.node_distances(&p)?;
        self.distance_with(&p, &dist, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    pub(crate) fn path_ab_bc() -> NetworkSpace {
        NetworkSpace::from_edges(
            SpaceKind::General,
            [Edge::new(0, 0, 1, q(2, 1)), Edge::new(1, 1, 2, q(3, 1)), Edge::new(2, 1, 3, q(1, 1))],
        )
        .unwrap()
    }

    fn k4() -> NetworkSpace {
        let mut edges = Vec::new();
        let mut id = 0;
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push(Edge::new(id, a, b, Rational::ONE));
                id += 1;
            }
        }
        NetworkSpace::from_edges(SpaceKind::Planar, edges).unwrap()
    }

    #[test]
    fn additive_path_metric() {
        let s = path_ab_bc();
        let p = s.point(EdgeId(0), q(1, 1)).unwrap();
        let r = s.point(EdgeId(1), q(1, 1)).unwrap();
        assert_eq!(s.geodesic_distance(&p, &r).unwrap(), q(2, 1));
        assert_eq!(s.geodesic_distance(&p, &p).unwrap(), Rational::ZERO);
    }

    #[test]
    fn k4_unit_distance() {
        let s = k4();
        let d = s.geodesic_distance(&PointOnSpace::Node(NodeId(1)), &PointOnSpace::Node(NodeId(3)));
        assert_eq!(d.unwrap(), Rational::ONE);
    }

    #[test]
    fn same_edge_shortcut() {
        let s = k4();
        let p = s.point(EdgeId(0), q(1, 4)).unwrap();
        let r = s.point(EdgeId(0), q(3, 4)).unwrap();
        assert_eq!(s.geodesic_distance(&p, &r).unwrap(), q(1, 2));
    }

    #[test]
    fn canonical_endpoints() {
        let s = path_ab_bc();
        assert_eq!(s.point(EdgeId(0), Rational::ZERO).unwrap(), PointOnSpace::Node(NodeId(0)));
        assert_eq!(s.point(EdgeId(0), q(2, 1)).unwrap(), PointOnSpace::Node(NodeId(1)));
        assert!(s.point(EdgeId(0), q(3, 1)).is_err());
        assert!(s.point(EdgeId(9), q(1, 1)).is_err());
    }

    #[test]
    fn rejects_bad_spaces() {
        let two = NetworkSpace::from_edges(
            SpaceKind::Tree,
            [Edge::new(0, 0, 1, q(1, 1)), Edge::new(1, 1, 2, q(1, 1))],
        );
        assert_eq!(two.unwrap_err(), Error::DegreeTwo(NodeId(1)));
        let zero = NetworkSpace::from_edges(SpaceKind::Tree, [Edge::new(0, 0, 1, Rational::ZERO)]);
        assert_eq!(zero.unwrap_err(), Error::NonPositiveLength(EdgeId(0)));
        let mut edges = Vec::new();
        let mut id = 0;
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push(Edge::new(id, a, b, Rational::ONE));
                id += 1;
            }
        }
        let k5 = NetworkSpace::from_edges(SpaceKind::Planar, edges);
        assert_eq!(k5.unwrap_err(), Error::NotPlanar);
    }
}
