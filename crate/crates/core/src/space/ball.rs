use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{NetworkSpace, NodeDistances, NodeId, PointOnSpace, Region, Span};
use crate::error::{Error, Result};
use crate::object::ObjectId;
use crate::rational::Rational;

/// Closed geodesic ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ball {
    pub id: ObjectId,
    pub center: PointOnSpace,
    pub radius: Rational,
}

impl Ball {
    pub fn new(id: u32, center: PointOnSpace, radius: Rational) -> Self {
        Ball { id: ObjectId(id), center, radius }
    }
}

/// A ball together with the distances from its center to every node.
#[derive(Clone, Debug)]
pub struct BallField {
    pub ball: Ball,
    pub dist: NodeDistances,
}

impl BallField {
    pub fn new(space: &NetworkSpace, ball: &Ball) -> Result<Self> {
        if ball.radius.is_negative() {
            return Err(Error::InvalidObject(ball.id.0, "negative radius".into()));
        }
        let center = space.check_point(&ball.center)?;
        let dist = space.node_distances(&center)?;
        Ok(BallField { ball: Ball { center, ..*ball }, dist })
    }

    /// `r - d(center, x)` if non-negative.
    pub fn coverage(&self, x: NodeId) -> Option<Rational> {
        let c = self.ball.radius - *self.dist.get(&x)?;
        (!c.is_negative()).then_some(c)
    }

    /// Signed slack `r - d(center, x)`.
    pub fn slack(&self, x: NodeId) -> Rational {
        self.ball.radius - self.dist[&x]
    }

    pub fn contains(&self, space: &NetworkSpace, p: &PointOnSpace) -> bool {
        space
            .distance_with(&self.ball.center, &self.dist, p)
            .is_ok_and(|d| d <= self.ball.radius)
    }

    pub fn extent(&self, space: &NetworkSpace) -> Region {
        let r = self.ball.radius;
        let mut nodes = Vec::new();
        let mut spans = Vec::new();
        if let PointOnSpace::Node(c) = self.ball.center {
            nodes.push(c);
        }
        for e in space.edges() {
            let ru = r - self.dist[&e.u];
            let rv = r - self.dist[&e.v];
            if !ru.is_negative() {
                spans.push((e.id, Span::new(Rational::ZERO, ru.min(e.len))));
            }
            if !rv.is_negative() {
                spans.push((e.id, Span::new((e.len - rv).max(Rational::ZERO), e.len)));
            }
            if let PointOnSpace::OnEdge { edge, offset } = self.ball.center {
                if edge == e.id {
                    spans.push((e.id, Span::new(offset - r, offset + r)));
                }
            }
        }
        Region::build(space, nodes, spans)
    }
}

pub fn ball_extent(space: &NetworkSpace, ball: &Ball) -> Result<Region> {
    Ok(BallField::new(space, ball)?.extent(space))
}

pub fn coverage(space: &NetworkSpace, ball: &Ball, x: NodeId) -> Result<Option<Rational>> {
    if !space.has_node(x) {
        return Err(Error::UnknownNode(x));
    }
    Ok(BallField::new(space, ball)?.coverage(x))
}

/// Per-node assigned ball: the ball of maximum coverage, ties to the smaller id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BallAssignment {
    assigned: BTreeMap<NodeId, (ObjectId, Rational)>,
}

impl BallAssignment {
    pub fn get(&self, x: NodeId) -> Option<ObjectId> {
        self.assigned.get(&x).map(|(b, _)| *b)
    }

    pub fn coverage(&self, x: NodeId) -> Option<Rational> {
        self.assigned.get(&x).map(|(_, c)| *c)
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, ObjectId, Rational)> + '_ {
        self.assigned.iter().map(|(&x, &(b, c))| (x, b, c))
    }

    /// Distinct assigned balls, ascending.
    pub fn core(&self) -> Vec<ObjectId> {
        let mut ids: Vec<ObjectId> = self.assigned.values().map(|(b, _)| *b).collect();
        ids.sort();
        ids.dedup();
        ids
    }
}

pub fn assign_balls(space: &NetworkSpace, balls: &[Ball]) -> Result<BallAssignment> {
    let fields = balls.iter().map(|b| BallField::new(space, b)).collect::<Result<Vec<_>>>()?;
    Ok(assign_fields(space, &fields))
}

pub(crate) fn assign_fields(space: &NetworkSpace, fields: &[BallField]) -> BallAssignment {
    let mut assigned: BTreeMap<NodeId, (ObjectId, Rational)> = BTreeMap::new();
    for x in space.node_ids() {
        for f in fields {
            let Some(c) = f.coverage(x) else { continue };
            let id = f.ball.id;
            match assigned.get(&x) {
                Some(&(b, best)) if best > c || (best == c && b < id) => {}
                _ => {
                    assigned.insert(x, (id, c));
                }
            }
        }
    }
    BallAssignment { assigned }
}

/// Restricts a ball to a subspace obtained by surgery. A ball centered
/// outside `sub` behaves inside it as a ball around the attachment node.
pub fn clip_ball_to_subspace(space: &NetworkSpace, sub: &NetworkSpace, ball: &Ball) -> Result<Ball> {
    if sub.contains_point(&ball.center) {
        return Ok(*ball);
    }
    let field = BallField::new(space, ball)?;
    let u = sub
        .node_ids()
        .min_by_key(|x| (field.dist[x], *x))
        .ok_or(Error::Empty)?;
    let cov = field
        .coverage(u)
        .ok_or_else(|| Error::InvalidObject(ball.id.0, "ball does not reach the subspace".into()))?;
    Ok(Ball { id: ball.id, center: PointOnSpace::Node(u), radius: cov })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::space::{Edge, EdgeId, SpaceKind};

    fn star10() -> NetworkSpace {
        NetworkSpace::from_edges(
            SpaceKind::Tree,
            [Edge::new(1, 0, 1, q(10, 1)), Edge::new(2, 0, 2, q(10, 1)), Edge::new(3, 0, 3, q(10, 1))],
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
    fn star_extent() {
        let s = star10();
        let b = Ball::new(0, s.point(EdgeId(1), q(2, 1)).unwrap(), q(5, 1));
        let r = ball_extent(&s, &b).unwrap();
        assert_eq!(r.spans_on(EdgeId(1)), &[Span::new(q(0, 1), q(7, 1))]);
        assert_eq!(r.spans_on(EdgeId(2)), &[Span::new(q(0, 1), q(3, 1))]);
        assert_eq!(r.spans_on(EdgeId(3)), &[Span::new(q(0, 1), q(3, 1))]);
        let zero = Ball::new(1, b.center, Rational::ZERO);
        assert!(ball_extent(&s, &zero).unwrap().is_point());
    }

    #[test]
    fn k4_two_thirds() {
        let s = k4();
        let balls: Vec<Ball> =
            (0..4).map(|v| Ball::new(v, PointOnSpace::Node(NodeId(v)), q(2, 3))).collect();
        let r = ball_extent(&s, &balls[0]).unwrap();
        assert_eq!(r.total_length(), q(2, 1));
        assert_eq!(r.leaf_count(&s), 3);
        let a = assign_balls(&s, &balls).unwrap();
        for v in 0..4 {
            assert_eq!(a.get(NodeId(v)), Some(ObjectId(v)));
            assert_eq!(a.coverage(NodeId(v)), Some(q(2, 3)));
        }
    }

    #[test]
    fn coverage_cases() {
        let s = star10();
        let b = Ball::new(0, PointOnSpace::Node(NodeId(1)), q(12, 1));
        assert_eq!(coverage(&s, &b, NodeId(0)).unwrap(), Some(q(2, 1)));
        assert_eq!(coverage(&s, &b, NodeId(2)).unwrap(), None);
        let edge = Ball::new(0, PointOnSpace::Node(NodeId(1)), q(10, 1));
        assert_eq!(coverage(&s, &edge, NodeId(0)).unwrap(), Some(Rational::ZERO));
    }

    #[test]
    fn ties_go_to_smaller_id() {
        let s = star10();
        let balls = [
            Ball::new(7, PointOnSpace::Node(NodeId(1)), q(10, 1)),
            Ball::new(3, PointOnSpace::Node(NodeId(2)), q(10, 1)),
        ];
        let a = assign_balls(&s, &balls).unwrap();
        assert_eq!(a.get(NodeId(0)), Some(ObjectId(3)));
        assert_eq!(a.get(NodeId(3)), None);
    }
}
