//! Colorings of balls on tree spaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::{cf_chain, nm_chain};
use crate::error::{Error, Result};
use crate::object::{Coloring, Interval, ObjectId};
use crate::space::assign_fields;
use crate::space::{Ball, BallAssignment, BallField, EdgeId, NetworkSpace, NodeId, PathLine, PointOnSpace, Region, Span};

fn require_tree(space: &NetworkSpace) -> Result<()> {
    if space.is_tree() {
        Ok(())
    } else {
        Err(Error::RequiresTree)
    }
}

fn check_ids(balls: &[Ball]) -> Result<()> {
    crate::object::check_distinct_ids(balls.iter().map(|b| b.id))
}

/// Two-coloring of balls on a tree such that every point covered by at
/// least two balls sees both colors.
pub fn nm_color_balls_tree(space: &NetworkSpace, balls: &[Ball]) -> Result<Coloring> {
    require_tree(space)?;
    check_ids(balls)?;
    let balls = balls
        .iter()
        .map(|b| Ok(BallField::new(space, b)?.ball))
        .collect::<Result<Vec<_>>>()?;
    nm_rec(space, balls)
}

fn other(c: u32) -> u32 {
    3 - c
}

/// Interval of a connected region along a path; `None` if they do not meet.
fn line_interval(line: &PathLine, region: &Region, id: ObjectId) -> Option<Interval> {
    let parts = line.project(region);
    let left = parts.first()?.0;
    let right = parts.last()?.1;
    Some(Interval { id, left, right })
}

/// Walks a space without nodes of degree 3 or more from its smallest end.
fn path_line(sub: &NetworkSpace) -> Result<PathLine> {
    let start = sub
        .node_ids()
        .find(|&v| sub.degree(v) <= 1)
        .ok_or(Error::NotATree)?;
    let mut nodes = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = sub.neighbors(cur).map(|(_, y)| y).find(|&y| Some(y) != prev);
        match next {
            Some(y) => {
                nodes.push(y);
                prev = Some(cur);
                cur = y;
            }
            None => break,
        }
    }
    PathLine::from_nodes(sub, &nodes)
}

fn chain_on_line(sub: &NetworkSpace, line: &PathLine, balls: &[Ball]) -> Result<Coloring> {
    let mut intervals = Vec::with_capacity(balls.len());
    for b in balls {
        let extent = BallField::new(sub, b)?.extent(sub);
        let iv = line_interval(line, &extent, b.id)
            .ok_or_else(|| Error::Invariant(format!("ball {} misses its path", b.id)))?;
        intervals.push(iv);
    }
    Ok(nm_chain(&intervals, (1, 2)))
}

/// Farthest node from `from`, ties to the smaller id.
fn deepest(sub: &NetworkSpace, from: NodeId) -> Result<NodeId> {
    let dist = sub.node_distances(&PointOnSpace::Node(from))?;
    Ok(dist
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&v, _)| v)
        .unwrap_or(from))
}

fn nm_rec(sub: &NetworkSpace, balls: Vec<Ball>) -> Result<Coloring> {
    if balls.is_empty() {
        return Ok(Coloring::new());
    }
    let internal: BTreeSet<NodeId> = sub.internal_nodes().into_iter().collect();
    match internal.len() {
        0 => return chain_on_line(sub, &path_line(sub)?, &balls),
        1 => return nm_star(sub, *internal.first().unwrap(), &balls),
        _ => {}
    }
    let u = find_centroid(sub, &internal)?;
    let (e, v) = heaviest_neighbor(sub, u, &internal);
    let (mut tu, mut tv) = sub.components_without_edge(e)?;
    if sub.edge(e)?.u != u {
        std::mem::swap(&mut tu, &mut tv);
    }
    // Each side also gets the cut edge and the deepest path into the other
    // side: a point across the cut meets the same balls of this side as the
    // point at equal distance on that path.
    let extend = |side: &NetworkSpace, far: &NetworkSpace, x: NodeId| -> Result<NetworkSpace> {
        let mut edges: BTreeSet<EdgeId> = side.edge_ids().collect();
        edges.insert(e);
        edges.extend(PathLine::tree_path(far, x, deepest(far, x)?)?.edges());
        sub.subspace(&edges)
    };
    let (su, sv) = (extend(&tu, &tv, v)?, extend(&tv, &tu, u)?);

    let fields = balls.iter().map(|b| BallField::new(sub, b)).collect::<Result<Vec<_>>>()?;
    let assignment = assign_fields(sub, &fields);
    let bu = assignment.get(u);
    let bv = assignment.get(v);

    let mut objects_u = Vec::new();
    let mut objects_v = Vec::new();
    let mut objects_e = Vec::new();
    for f in &fields {
        let b = f.ball;
        let in_u = tu.contains_point(&b.center) || bu == Some(b.id);
        let in_v = tv.contains_point(&b.center) || bv == Some(b.id);
        if in_u {
            objects_u.push(clip_field(&su, f)?);
        }
        if in_v {
            objects_v.push(clip_field(&sv, f)?);
        }
        if !in_u && !in_v {
            objects_e.push(b);
        }
    }

    let mut cu = nm_rec(&su, objects_u)?;
    let mut cv = nm_rec(&sv, objects_v)?;
    let mut coloring = Coloring::new();
    match (bu, bv) {
        (Some(a), Some(b)) if a == b => {
            let c = color_of(&cu, a)?;
            if color_of(&cv, a)? != c {
                swap_all(&mut cv);
            }
            for b in &objects_e {
                coloring.set(b.id, other(c));
            }
        }
        _ => {
            let a = deepest(&tu, u)?;
            let z = deepest(&tv, v)?;
            let line = PathLine::tree_path(sub, a, z)?;
            let mut on_line = objects_e.clone();
            for id in [bu, bv].into_iter().flatten() {
                on_line.push(fields.iter().find(|f| f.ball.id == id).unwrap().ball);
            }
            let chain = chain_on_line(sub, &line, &on_line)?;
            for (id, side) in [(bu, &mut cu), (bv, &mut cv)] {
                if let Some(id) = id {
                    if color_of(side, id)? != color_of(&chain, id)? {
                        swap_all(side);
                    }
                }
            }
            coloring.extend_from(&chain);
        }
    }
    coloring.extend_from(&cu);
    coloring.extend_from(&cv);
    Ok(coloring)
}

fn swap_all(c: &mut Coloring) {
    let ids: Vec<ObjectId> = c.iter().map(|(x, _)| x).collect();
    c.swap_labels(1, 2, ids);
}

/// Star around `u`. On every arm the balls through `u` nest, so only the
/// two reaching farthest along the arm matter; those pairs form a forest
/// plus parallel edges, which is two-colored first. Each arm is then
/// chained and aligned with it.
fn nm_star(sub: &NetworkSpace, u: NodeId, balls: &[Ball]) -> Result<Coloring> {
    let fields = balls.iter().map(|b| BallField::new(sub, b)).collect::<Result<Vec<_>>>()?;
    let extents: Vec<Region> = fields.iter().map(|f| f.extent(sub)).collect();
    let through: Vec<usize> = (0..balls.len()).filter(|&i| extents[i].contains_node(u)).collect();

    struct Arm {
        top: Vec<ObjectId>,
        own: Vec<Interval>,
        pair: Vec<Interval>,
    }
    let mut arms = Vec::new();
    for (_, y) in sub.neighbors(u) {
        let mut walk = vec![u, y];
        while let [.., a, b] = walk[..] {
            if sub.degree(b) != 2 {
                break;
            }
            let next = sub.neighbors(b).map(|(_, z)| z).find(|&z| z != a).unwrap();
            walk.push(next);
        }
        let line = PathLine::from_nodes(sub, &walk)?;
        let mut reach: Vec<Interval> = through
            .iter()
            .filter_map(|&i| line_interval(&line, &extents[i], balls[i].id))
            .collect();
        let cov = |id: ObjectId| fields.iter().find(|f| f.ball.id == id).and_then(|f| f.coverage(u));
        reach.sort_by(|a, b| {
            b.right
                .cmp(&a.right)
                .then(cov(b.id).cmp(&cov(a.id)))
                .then(a.id.cmp(&b.id))
        });
        reach.truncate(2);
        let own = (0..balls.len())
            .filter(|i| !through.contains(i))
            .filter_map(|i| line_interval(&line, &extents[i], balls[i].id))
            .collect();
        arms.push(Arm { top: reach.iter().map(|iv| iv.id).collect(), own, pair: reach });
    }

    let mut adj: BTreeMap<ObjectId, Vec<ObjectId>> = through.iter().map(|&i| (balls[i].id, Vec::new())).collect();
    for arm in &arms {
        if let [a, b] = arm.top[..] {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
    }
    let mut coloring = Coloring::new();
    for &start in adj.keys() {
        if coloring.contains(start) {
            continue;
        }
        coloring.set(start, 1);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let c = coloring.get(x).unwrap();
            for &y in &adj[&x] {
                match coloring.get(y) {
                    None => {
                        coloring.set(y, other(c));
                        stack.push(y);
                    }
                    Some(d) if d == c => {
                        return Err(Error::Invariant("star pairing is not bipartite".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    for arm in arms {
        let mut intervals = arm.pair.clone();
        intervals.extend(arm.own.iter().copied());
        let mut chain = nm_chain(&intervals, (1, 2));
        if let Some(&t) = arm.top.first() {
            if chain.get(t) != coloring.get(t) {
                swap_all(&mut chain);
            }
        }
        for iv in &arm.own {
            coloring.set(iv.id, chain.get(iv.id).unwrap());
        }
    }
    Ok(coloring)
}

fn color_of(c: &Coloring, id: ObjectId) -> Result<u32> {
    c.get(id).ok_or_else(|| Error::Invariant(format!("ball {id} left uncolored")))
}

/// Same as `clip_ball_to_subspace`, reusing the distances of `f`.
fn clip_field(part: &NetworkSpace, f: &BallField) -> Result<Ball> {
    if part.contains_point(&f.ball.center) {
        return Ok(f.ball);
    }
    let x = part
        .node_ids()
        .min_by_key(|x| (f.dist[x], *x))
        .ok_or(Error::Empty)?;
    let cov = f
        .coverage(x)
        .ok_or_else(|| Error::Invariant(format!("ball {} does not reach its part", f.ball.id)))?;
    Ok(Ball { id: f.ball.id, center: PointOnSpace::Node(x), radius: cov })
}

/// Nodes of `active` reachable from `start` without passing `blocked`.
fn active_behind(space: &NetworkSpace, start: NodeId, blocked: NodeId, active: &BTreeSet<NodeId>) -> usize {
    let mut seen = BTreeSet::from([blocked, start]);
    let mut stack = vec![start];
    let mut count = 0;
    while let Some(x) = stack.pop() {
        if active.contains(&x) {
            count += 1;
        }
        for (_, y) in space.neighbors(x) {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    count
}

/// Incident edge of `u` whose side holds the most active nodes, ties to the
/// smaller edge id.
fn heaviest_neighbor(space: &NetworkSpace, u: NodeId, active: &BTreeSet<NodeId>) -> (EdgeId, NodeId) {
    let mut best: Option<(usize, EdgeId, NodeId)> = None;
    for (e, y) in space.neighbors(u) {
        let w = active_behind(space, y, u, active);
        if best.is_none_or(|(bw, be, _)| w > bw || (w == bw && e < be)) {
            best = Some((w, e, y));
        }
    }
    let (_, e, y) = best.expect("centroid has neighbors");
    (e, y)
}

/// A node of `active` whose removal leaves components holding at most half
/// of `active` each. Among minimizers of the largest component, the
/// smallest id wins.
pub fn find_centroid(space: &NetworkSpace, active: &BTreeSet<NodeId>) -> Result<NodeId> {
    require_tree(space)?;
    let mut best: Option<(usize, NodeId)> = None;
    for &r in active {
        if !space.has_node(r) {
            return Err(Error::UnknownNode(r));
        }
        let worst = space
            .neighbors(r)
            .map(|(_, y)| active_behind(space, y, r, active))
            .max()
            .unwrap_or(0);
        if best.is_none_or(|(bw, _)| worst < bw) {
            best = Some((worst, r));
        }
    }
    let (worst, r) = best.ok_or(Error::Empty)?;
    if 2 * worst > active.len() {
        return Err(Error::Invariant(format!("no centroid among {} active nodes", active.len())));
    }
    Ok(r)
}

/// Conflict-free coloring of balls on a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeBallsCf {
    pub coloring: Coloring,
    /// Balls assigned to at least one internal node.
    pub core: BTreeSet<ObjectId>,
    /// Number of centroid levels that received a color.
    pub levels: u32,
}

/// Conflict-free coloring of balls on a tree. Core balls get one color per
/// centroid level and are unique-min colored; every other ball reaches
/// outside the core only inside the edge holding its center, where a
/// three-color chain takes over.
pub fn cf_color_balls_tree(space: &NetworkSpace, balls: &[Ball]) -> Result<TreeBallsCf> {
    require_tree(space)?;
    check_ids(balls)?;
    let fields = balls.iter().map(|b| BallField::new(space, b)).collect::<Result<Vec<_>>>()?;
    let assignment = assign_fields(space, &fields);
    let internal: BTreeSet<NodeId> = space.internal_nodes().into_iter().collect();
    let core: BTreeSet<ObjectId> = assignment
        .iter()
        .filter(|(x, _, _)| internal.contains(x))
        .map(|(_, b, _)| b)
        .collect();

    let mut coloring = Coloring::new();
    let centers: Vec<PointOnSpace> = fields
        .iter()
        .filter(|f| core.contains(&f.ball.id))
        .map(|f| f.ball.center)
        .collect();
    let mut levels = 0;
    core_levels(space, &assignment, internal, &centers, 1, &mut coloring, &mut levels)?;
    if core.iter().any(|id| !coloring.contains(*id)) {
        return Err(Error::Invariant("core ball left uncolored".into()));
    }

    let extents: BTreeMap<ObjectId, Region> =
        fields.iter().map(|f| (f.ball.id, f.extent(space))).collect();
    let mut covered = Region::default();
    for id in &core {
        covered = covered.union(space, &extents[id]);
    }

    let blue = levels + 1;
    let palette = (blue, blue + 1, blue + 2);
    let mut per_edge: BTreeMap<EdgeId, Vec<ObjectId>> = BTreeMap::new();
    for f in fields.iter().filter(|f| !core.contains(&f.ball.id)) {
        let id = f.ball.id;
        let rest = extents[&id].difference_closure(space, &covered);
        if rest.is_empty() {
            coloring.set(id, blue);
            continue;
        }
        let e = home_edge(space, &f.ball.center, &rest)
            .ok_or_else(|| Error::Invariant(format!("ball {id} is uncovered outside the edge of its center")))?;
        per_edge.entry(e).or_default().push(id);
    }
    for (e, ids) in per_edge {
        let edge = space.edge(e)?;
        let line = PathLine::from_nodes(space, &[edge.u, edge.v])?;
        let mut intervals = Vec::new();
        for g in covered.gaps_on(space, e) {
            for &id in &ids {
                let pieces: Vec<_> = line
                    .project(&extents[&id])
                    .into_iter()
                    .filter_map(|(lo, hi)| g.clip(&Span::new(lo, hi)))
                    .collect();
                if let (Some(first), Some(last)) = (pieces.first(), pieces.last()) {
                    intervals.push(Interval { id, left: first.lo, right: last.hi });
                }
            }
        }
        let mut seen = BTreeSet::new();
        if intervals.iter().any(|iv| !seen.insert(iv.id)) {
            return Err(Error::Invariant(format!("ball split across gaps of edge {e}")));
        }
        coloring.extend_from(&cf_chain(&intervals, palette));
    }
    Ok(TreeBallsCf { coloring, core, levels })
}

/// The edge holding `center` if every part of `rest` lies on it.
fn home_edge(space: &NetworkSpace, center: &PointOnSpace, rest: &Region) -> Option<EdgeId> {
    let e = match *center {
        PointOnSpace::OnEdge { edge, .. } => edge,
        PointOnSpace::Node(c) => {
            let mut inc = space.incident(c).iter();
            let e = *inc.next()?;
            if inc.next().is_some() {
                return None;
            }
            e
        }
    };
    let edge = space.edge(e).ok()?;
    let on_edge = rest.touched_edges().all(|f| f == e)
        && rest.nodes().iter().all(|&v| v == edge.u || v == edge.v);
    on_edge.then_some(e)
}

fn core_levels(
    sub: &NetworkSpace,
    assignment: &BallAssignment,
    active: BTreeSet<NodeId>,
    centers: &[PointOnSpace],
    level: u32,
    coloring: &mut Coloring,
    levels: &mut u32,
) -> Result<()> {
    if active.is_empty() || !centers.iter().any(|c| sub.contains_point(c)) {
        return Ok(());
    }
    let r = find_centroid(sub, &active)?;
    if let Some(b) = assignment.get(r) {
        if !coloring.contains(b) {
            coloring.set(b, level);
            *levels = (*levels).max(level);
        }
    }
    for part in sub.split_at_node(r)? {
        let rest: BTreeSet<NodeId> =
            active.iter().copied().filter(|&x| x != r && part.has_node(x)).collect();
        core_levels(&part, assignment, rest, centers, level + 1, coloring, levels)?;
    }
    Ok(())
}
