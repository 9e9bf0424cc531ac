use std::collections::{BTreeMap, VecDeque};

use super::{EdgeId, NetworkSpace, NodeId, PointOnSpace, Region, Span};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A simple node path laid out on the real line, starting at position 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLine {
    nodes: Vec<NodeId>,
    /// `(edge, traversed from u to v)` between consecutive nodes.
    edges: Vec<(EdgeId, bool)>,
    /// Position of each node.
    pos: Vec<Rational>,
    lens: Vec<Rational>,
}

impl PathLine {
    pub fn from_nodes(space: &NetworkSpace, nodes: &[NodeId]) -> Result<PathLine> {
        if nodes.is_empty() {
            return Err(Error::Empty);
        }
        let mut edges = Vec::new();
        let mut pos = vec![Rational::ZERO];
        let mut lens = Vec::new();
        for w in nodes.windows(2) {
            let (e, _) = space
                .neighbors(w[0])
                .find(|&(_, y)| y == w[1])
                .ok_or(Error::UnknownNode(w[1]))?;
            let edge = space.edge(e)?;
            edges.push((e, edge.u == w[0]));
            lens.push(edge.len);
            pos.push(*pos.last().unwrap() + edge.len);
        }
        Ok(PathLine { nodes: nodes.to_vec(), edges, pos, lens })
    }

    /// The unique simple path between two nodes of a tree.
    pub fn tree_path(space: &NetworkSpace, a: NodeId, b: NodeId) -> Result<PathLine> {
        let mut parent: BTreeMap<NodeId, NodeId> = BTreeMap::new();
        let mut queue = VecDeque::from([a]);
        parent.insert(a, a);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for (_, y) in space.neighbors(x) {
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(y) {
                    slot.insert(x);
                    queue.push_back(y);
                }
            }
        }
        if !parent.contains_key(&b) {
            return Err(Error::UnknownNode(b));
        }
        let mut nodes = vec![b];
        while *nodes.last().unwrap() != a {
            nodes.push(parent[nodes.last().unwrap()]);
        }
        nodes.reverse();
        PathLine::from_nodes(space, &nodes)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|(e, _)| *e)
    }

    pub fn length(&self) -> Rational {
        *self.pos.last().unwrap()
    }

    fn along(&self, i: usize, offset: Rational) -> Rational {
        let (_, fwd) = self.edges[i];
        self.pos[i] + if fwd { offset } else { self.lens[i] - offset }
    }

    /// Position of `p` on the line, if it lies on the path.
    pub fn position(&self, p: &PointOnSpace) -> Option<Rational> {
        match *p {
            PointOnSpace::Node(v) => self.nodes.iter().position(|&x| x == v).map(|i| self.pos[i]),
            PointOnSpace::OnEdge { edge, offset } => {
                self.edges.iter().position(|(e, _)| *e == edge).map(|i| self.along(i, offset))
            }
        }
    }

    /// The point at line position `s`, with `0 <= s <= length`.
    pub fn point_at(&self, space: &NetworkSpace, s: Rational) -> Result<PointOnSpace> {
        let i = self.pos.iter().rposition(|&p| p <= s).ok_or(Error::Empty)?;
        if i == self.nodes.len() - 1 || self.pos[i] == s {
            return Ok(PointOnSpace::Node(self.nodes[i]));
        }
        let (e, fwd) = self.edges[i];
        let d = s - self.pos[i];
        space.point(e, if fwd { d } else { self.lens[i] - d })
    }

    /// Maximal closed intervals of `region` restricted to the path.
    pub fn project(&self, region: &Region) -> Vec<(Rational, Rational)> {
        let mut parts: Vec<(Rational, Rational)> = Vec::new();
        for (i, &v) in self.nodes.iter().enumerate() {
            if region.contains_node(v) {
                parts.push((self.pos[i], self.pos[i]));
            }
        }
        for (i, &(e, _)) in self.edges.iter().enumerate() {
            for s in region.spans_on(e) {
                let a = self.along(i, s.lo);
                let b = self.along(i, s.hi);
                parts.push((a.min(b), a.max(b)));
            }
        }
        parts.sort();
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        for (a, b) in parts {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        out
    }
}

/// The geodesic between two points of a tree space, as a region.
pub fn tree_geodesic(space: &NetworkSpace, p: &PointOnSpace, r: &PointOnSpace) -> Result<Region> {
    let p = space.check_point(p)?;
    let r = space.check_point(r)?;
    if let (PointOnSpace::OnEdge { edge: a, offset: x }, PointOnSpace::OnEdge { edge: b, offset: y }) = (p, r) {
        if a == b {
            return Ok(Region::build(space, [], [(a, Span::new(x.min(y), x.max(y)))]));
        }
    }
    let ends = |x: &PointOnSpace| -> Vec<(NodeId, Option<(EdgeId, Span)>)> {
        match *x {
            PointOnSpace::Node(v) => vec![(v, None)],
            PointOnSpace::OnEdge { edge, offset } => {
                let e = space.edge(edge).expect("checked point");
                vec![
                    (e.u, Some((edge, Span::new(Rational::ZERO, offset)))),
                    (e.v, Some((edge, Span::new(offset, e.len)))),
                ]
            }
        }
    };
    let mut best: Option<(Rational, Region)> = None;
    for (a, pa) in ends(&p) {
        let dist = space.node_distances(&PointOnSpace::Node(a))?;
        for (b, pb) in ends(&r) {
            let path = PathLine::tree_path(space, a, b)?;
            let mut len = dist[&b];
            let mut spans: Vec<(EdgeId, Span)> = Vec::new();
            for (e, s) in [pa, pb].into_iter().flatten() {
                len = len + s.len();
                spans.push((e, s));
            }
            if path.edges().any(|e| spans.iter().any(|(f, _)| *f == e)) {
                continue;
            }
            for e in path.edges() {
                let edge = space.edge(e)?;
                spans.push((e, Span::new(Rational::ZERO, edge.len)));
            }
            let region = Region::build(space, path.nodes().iter().copied(), spans);
            if best.as_ref().is_none_or(|(l, _)| len < *l) {
                best = Some((len, region));
            }
        }
    }
    best.map(|(_, r)| r).ok_or(Error::RequiresTree)
}
