use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{EdgeId, NetworkSpace, NodeId, PointOnSpace};
use crate::rational::Rational;

/// Closed offset interval `[lo, hi]` along an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub lo: Rational,
    pub hi: Rational,
}

impl Span {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Span { lo, hi }
    }

    pub fn len(&self) -> Rational {
        self.hi - self.lo
    }

    pub fn contains(&self, s: Rational) -> bool {
        self.lo <= s && s <= self.hi
    }
}

/// A maximal piece of an edge outside a region, in offsets along the edge.
/// An end is closed when it is an edge endpoint not in the region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gap {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Gap {
    pub fn contains(&self, s: Rational) -> bool {
        (self.lo < s && s < self.hi) || (s == self.lo && self.lo_closed) || (s == self.hi && self.hi_closed)
    }

    /// Closure of the intersection of `span` with the gap, if non-empty.
    pub fn clip(&self, span: &Span) -> Option<Span> {
        let lo = span.lo.max(self.lo);
        let hi = span.hi.min(self.hi);
        if lo > hi {
            return None;
        }
        let meets = lo < hi || self.contains(lo);
        meets.then_some(Span::new(lo, hi))
    }
}

/// A closed subset of a network space made of whole nodes and closed spans
/// on edges. Spans on one edge are sorted, pairwise disjoint and never touch;
/// a span reaching an edge end implies the endpoint node is in `nodes`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    nodes: BTreeSet<NodeId>,
    spans: BTreeMap<EdgeId, Vec<Span>>,
}

fn merge(mut spans: Vec<Span>) -> Vec<Span> {
    spans.sort();
    let mut out: Vec<Span> = Vec::with_capacity(spans.len());
    for s in spans {
        match out.last_mut() {
            Some(last) if s.lo <= last.hi => last.hi = last.hi.max(s.hi),
            _ => out.push(s),
        }
    }
    out
}

impl Region {
    /// Normalizes arbitrary parts. Spans are clamped to their edge; zero-length
    /// spans at an edge end collapse into the node.
    pub fn build(
        space: &NetworkSpace,
        nodes: impl IntoIterator<Item = NodeId>,
        spans: impl IntoIterator<Item = (EdgeId, Span)>,
    ) -> Region {
        let mut node_set: BTreeSet<NodeId> =
            nodes.into_iter().filter(|v| space.has_node(*v)).collect();
        let mut raw: BTreeMap<EdgeId, Vec<Span>> = BTreeMap::new();
        for (e, s) in spans {
            let Ok(edge) = space.edge(e) else { continue };
            let lo = s.lo.max(Rational::ZERO);
            let hi = s.hi.min(edge.len);
            if lo > hi {
                continue;
            }
            if lo.is_zero() {
                node_set.insert(edge.u);
            }
            if hi == edge.len {
                node_set.insert(edge.v);
            }
            if lo == hi && (lo.is_zero() || hi == edge.len) {
                continue;
            }
            raw.entry(e).or_default().push(Span { lo, hi });
        }
        let spans = raw.into_iter().map(|(e, v)| (e, merge(v))).collect();
        Region { nodes: node_set, spans }
    }

    pub fn point(space: &NetworkSpace, p: &PointOnSpace) -> Region {
        match *p {
            PointOnSpace::Node(v) => Region::build(space, [v], []),
            PointOnSpace::OnEdge { edge, offset } => {
                Region::build(space, [], [(edge, Span::new(offset, offset))])
            }
        }
    }

    /// The whole of `space`.
    pub fn full(space: &NetworkSpace) -> Region {
        Region::build(
            space,
            space.node_ids(),
            space.edges().map(|e| (e.id, Span::new(Rational::ZERO, e.len))),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.spans.is_empty()
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        self.nodes.contains(&v)
    }

    pub fn spans_on(&self, e: EdgeId) -> &[Span] {
        self.spans.get(&e).map_or(&[], |v| v.as_slice())
    }

    /// `(edge, span)` pairs, edges ascending.
    pub fn spans(&self) -> impl Iterator<Item = (EdgeId, Span)> + '_ {
        self.spans.iter().flat_map(|(&e, v)| v.iter().map(move |&s| (e, s)))
    }

    /// Edges carrying at least one span.
    pub fn touched_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.spans.keys().copied()
    }

    /// Edges the region meets in positive length.
    pub fn edges_with_length(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.spans
            .iter()
            .filter(|(_, v)| v.iter().any(|s| s.lo < s.hi))
            .map(|(&e, _)| e)
    }

    pub fn length_on(&self, e: EdgeId) -> Rational {
        self.spans_on(e).iter().fold(Rational::ZERO, |acc, s| acc + s.len())
    }

    pub fn total_length(&self) -> Rational {
        self.spans().fold(Rational::ZERO, |acc, (_, s)| acc + s.len())
    }

    pub fn contains(&self, p: &PointOnSpace) -> bool {
        match *p {
            PointOnSpace::Node(v) => self.nodes.contains(&v),
            PointOnSpace::OnEdge { edge, offset } => {
                self.spans_on(edge).iter().any(|s| s.contains(offset))
            }
        }
    }

    /// Whether the whole of `edge` (endpoints included) lies in the region.
    pub fn contains_edge(&self, space: &NetworkSpace, e: EdgeId) -> bool {
        let Ok(edge) = space.edge(e) else { return false };
        matches!(self.spans_on(e), [s] if s.lo.is_zero() && s.hi == edge.len)
    }

    pub fn union(&self, space: &NetworkSpace, other: &Region) -> Region {
        Region::build(
            space,
            self.nodes.iter().chain(other.nodes.iter()).copied(),
            self.spans().chain(other.spans()),
        )
    }

    pub fn intersection(&self, space: &NetworkSpace, other: &Region) -> Region {
        let nodes = self.nodes.intersection(&other.nodes).copied();
        let mut spans = Vec::new();
        for (&e, mine) in &self.spans {
            for a in mine {
                for b in other.spans_on(e) {
                    let lo = a.lo.max(b.lo);
                    let hi = a.hi.min(b.hi);
                    if lo <= hi {
                        spans.push((e, Span::new(lo, hi)));
                    }
                }
            }
        }
        Region::build(space, nodes, spans)
    }

    /// Drops every part not in `sub`; the result is expressed over `sub`.
    pub fn restrict_to(&self, sub: &NetworkSpace) -> Region {
        Region::build(
            sub,
            self.nodes.iter().copied(),
            self.spans().filter(|(e, _)| sub.has_edge(*e)),
        )
    }

    /// Whether the region lies inside the union of `cover`.
    pub fn is_covered_by<'a>(&self, cover: impl IntoIterator<Item = &'a Region> + Clone) -> bool {
        if !self.nodes.iter().all(|v| cover.clone().into_iter().any(|c| c.contains_node(*v))) {
            return false;
        }
        self.spans.iter().all(|(&e, mine)| {
            let union = merge(
                cover.clone().into_iter().flat_map(|c| c.spans_on(e).iter().copied()).collect(),
            );
            mine.iter().all(|s| union.iter().any(|u| u.lo <= s.lo && s.hi <= u.hi))
        })
    }

    /// Pieces of edge `e` outside the region.
    pub fn gaps_on(&self, space: &NetworkSpace, e: EdgeId) -> Vec<Gap> {
        let Ok(edge) = space.edge(e) else { return Vec::new() };
        let mut out = Vec::new();
        let mut cursor = Rational::ZERO;
        let mut closed = !self.contains_node(edge.u);
        for s in self.spans_on(e) {
            if s.lo > cursor {
                out.push(Gap { lo: cursor, hi: s.lo, lo_closed: closed, hi_closed: false });
            }
            cursor = s.hi;
            closed = false;
        }
        let end_closed = !self.contains_node(edge.v);
        if cursor < edge.len {
            out.push(Gap { lo: cursor, hi: edge.len, lo_closed: closed, hi_closed: end_closed });
        }
        out
    }

    /// Closure of `self` minus `other`.
    pub fn difference_closure(&self, space: &NetworkSpace, other: &Region) -> Region {
        let mut nodes = Vec::new();
        let mut spans = Vec::new();
        for &v in &self.nodes {
            if !other.contains_node(v) {
                nodes.push(v);
            }
        }
        for (&e, mine) in &self.spans {
            for g in other.gaps_on(space, e) {
                for s in mine {
                    if let Some(piece) = g.clip(s) {
                        spans.push((e, piece));
                    }
                }
            }
        }
        Region::build(space, nodes, spans)
    }

    /// Whether the region is a single point.
    pub fn is_point(&self) -> bool {
        match (self.nodes.len(), self.spans.len()) {
            (1, 0) => true,
            (0, 1) => matches!(self.spans.values().next().map(|v| v.as_slice()), Some([s]) if s.lo == s.hi),
            _ => false,
        }
    }

    /// Number of points of degree one: dangling span ends inside edges plus
    /// nodes with a single incident piece. A single point counts as one leaf.
    pub fn leaf_count(&self, space: &NetworkSpace) -> usize {
        if self.is_empty() {
            return 0;
        }
        if self.is_point() {
            return 1;
        }
        let mut count = 0;
        for (&e, spans) in &self.spans {
            let len = space.edge(e).map(|x| x.len).unwrap_or(Rational::ZERO);
            for s in spans {
                if s.lo.is_positive() {
                    count += 1;
                }
                if s.hi < len {
                    count += 1;
                }
            }
        }
        for &v in &self.nodes {
            if self.region_degree(space, v) == 1 {
                count += 1;
            }
        }
        count
    }

    /// Number of edges at `v` along which the region leaves `v`.
    pub fn region_degree(&self, space: &NetworkSpace, v: NodeId) -> usize {
        space
            .incident(v)
            .iter()
            .filter(|&&e| {
                let edge = space.edge(e).expect("incident edge exists");
                let at = edge.offset_of(v);
                self.spans_on(e).iter().any(|s| s.contains(at))
            })
            .count()
    }

    /// Whether the region is path-connected.
    pub fn is_connected(&self, space: &NetworkSpace) -> bool {
        if self.is_empty() {
            return false;
        }
        // Union-find over nodes and spans.
        let nodes: Vec<NodeId> = self.nodes.iter().copied().collect();
        let spans: Vec<(EdgeId, Span)> = self.spans().collect();
        let n = nodes.len() + spans.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let index: BTreeMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for (j, (e, s)) in spans.iter().enumerate() {
            let edge = space.edge(*e).expect("span edge exists");
            let me = nodes.len() + j;
            for (at, v) in [(Rational::ZERO, edge.u), (edge.len, edge.v)] {
                if s.contains(at) {
                    let a = find(&mut parent, me);
                    let b = find(&mut parent, index[&v]);
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, 0);
        (0..n).all(|x| find(&mut parent, x) == root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::space::{Edge, SpaceKind};

    fn star() -> NetworkSpace {
        NetworkSpace::from_edges(
            SpaceKind::Tree,
            [Edge::new(0, 0, 1, q(2, 1)), Edge::new(1, 0, 2, q(2, 1)), Edge::new(2, 0, 3, q(2, 1))],
        )
        .unwrap()
    }

    #[test]
    fn normalization_merges_and_collapses() {
        let s = star();
        let r = Region::build(
            &s,
            [],
            [
                (EdgeId(0), Span::new(q(0, 1), q(1, 1))),
                (EdgeId(0), Span::new(q(1, 1), q(3, 2))),
                (EdgeId(1), Span::new(q(0, 1), q(0, 1))),
            ],
        );
        assert_eq!(r.spans_on(EdgeId(0)), &[Span::new(q(0, 1), q(3, 2))]);
        assert!(r.spans_on(EdgeId(1)).is_empty());
        assert!(r.contains_node(NodeId(0)));
        assert_eq!(r.leaf_count(&s), 2);
        assert!(r.is_connected(&s));
    }

    #[test]
    fn star_leaves() {
        let s = star();
        let r = Region::build(
            &s,
            [],
            (0..3).map(|e| (EdgeId(e), Span::new(q(0, 1), q(1, 1)))),
        );
        assert_eq!(r.leaf_count(&s), 3);
        assert_eq!(Region::full(&s).leaf_count(&s), 3);
        assert_eq!(Region::point(&s, &PointOnSpace::Node(NodeId(0))).leaf_count(&s), 1);
    }

    #[test]
    fn covering() {
        let s = star();
        let a = Region::build(&s, [], [(EdgeId(0), Span::new(q(0, 1), q(1, 1)))]);
        let b = Region::build(&s, [], [(EdgeId(0), Span::new(q(1, 1), q(2, 1)))]);
        let full = Region::build(&s, [], [(EdgeId(0), Span::new(q(0, 1), q(2, 1)))]);
        assert!(full.is_covered_by([&a, &b]));
        assert!(!full.is_covered_by([&a]));
        let mid = a.intersection(&s, &b);
        assert!(mid.is_point());
        assert!(!a.union(&s, &b).intersection(&s, &full).is_empty());
    }
}
