//! Lower-bound constructions and seeded random instances.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::object::{Interval, NetObject, SubtreeRegion};
use crate::rational::{q, Rational};
use crate::space::{tree_geodesic, Ball, Edge, EdgeId, NetworkSpace, NodeId, PointOnSpace, Region, SpaceKind, Span};

/// Largest `m` with `m choose 2 <= k`.
pub fn pair_capacity(k: usize) -> usize {
    let mut m = 1;
    while (m + 1) * m / 2 <= k {
        m += 1;
    }
    m
}

/// Star with `k` leaves and `m = min(l + 1, pair_capacity(k), n)` subtrees;
/// each pair of subtrees shares a private leaf edge. For `k < 3` the star
/// degenerates to a single edge.
pub fn gen_star_pairs(k: usize, l: usize, n: usize) -> Result<(NetworkSpace, Vec<SubtreeRegion>)> {
    if k == 0 || n == 0 {
        return Err(Error::Empty);
    }
    let m = (l + 1).min(pair_capacity(k)).min(n);
    let space = if k < 3 {
        NetworkSpace::new(
            SpaceKind::Tree,
            [(NodeId(0), Some((0.0, 0.0))), (NodeId(1), Some((1.0, 0.0)))],
            [Edge::new(0, 0, 1, Rational::ONE)],
        )?
    } else {
        let nodes = std::iter::once((NodeId(0), Some((0.0, 0.0)))).chain((1..=k).map(|i| {
            let a = std::f64::consts::TAU * (i - 1) as f64 / k as f64;
            (NodeId(i as u32), Some((a.cos(), a.sin())))
        }));
        let edges = (1..=k).map(|i| Edge::new(i as u32 - 1, 0, i as u32, Rational::ONE));
        NetworkSpace::new(SpaceKind::Tree, nodes, edges)?
    };
    let mut owned: Vec<Vec<EdgeId>> = vec![Vec::new(); m];
    let mut leaf = 0u32;
    for i in 0..m {
        for j in i + 1..m {
            owned[i].push(EdgeId(leaf));
            owned[j].push(EdgeId(leaf));
            leaf += 1;
        }
    }
    let objects = owned
        .into_iter()
        .enumerate()
        .map(|(i, edges)| {
            let anchor = [NodeId(0)];
            SubtreeRegion::new(
                &space,
                i as u32,
                edges.into_iter().map(|e| (e, Span::new(Rational::ZERO, Rational::ONE))),
                anchor,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((space, objects))
}

/// Complete binary tree with `h = floor(log2 min(k, n))` levels of nodes
/// (one level is a single node) and one root-to-leaf path per leaf. The
/// degree-2 root is merged into the edge joining its children, so it sits
/// at that edge's midpoint.
pub fn gen_binary_tree_paths(k: usize, n: usize) -> Result<(NetworkSpace, Vec<SubtreeRegion>)> {
    let m = k.min(n);
    if m == 0 {
        return Err(Error::Empty);
    }
    let h = (usize::BITS - 1 - m.leading_zeros()) as usize;
    if h <= 1 {
        let space = NetworkSpace::new(
            SpaceKind::Tree,
            [(NodeId(0), Some((0.0, 0.0))), (NodeId(1), Some((1.0, 0.0)))],
            [Edge::new(0, 0, 1, Rational::ONE)],
        )?;
        let path = SubtreeRegion::new(&space, 0, [], [NodeId(0)])?;
        return Ok((space, vec![path]));
    }
    // Heap numbering without the root: children of heap node i are 2i, 2i+1.
    let last_level = 1usize << (h - 1);
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for i in 2..2 * last_level {
        let depth = (usize::BITS - 1 - i.leading_zeros()) as usize;
        let span = (1usize << depth) as f64;
        let x = (i as f64 - span + 0.5) / span;
        nodes.push((NodeId(i as u32), Some((x, -(depth as f64)))));
    }
    // Merged root edge between nodes 2 and 3.
    edges.push(Edge::new(0, 2, 3, q(2, 1)));
    for i in 2..last_level {
        for c in [2 * i, 2 * i + 1] {
            edges.push(Edge::new(edges.len() as u32, i as u32, c as u32, Rational::ONE));
        }
    }
    let space = NetworkSpace::new(SpaceKind::Tree, nodes, edges)?;
    let root = space.point(EdgeId(0), Rational::ONE)?;
    let mut paths = Vec::new();
    for (idx, leaf) in (last_level..2 * last_level).enumerate() {
        let region = tree_geodesic(&space, &PointOnSpace::Node(NodeId(leaf as u32)), &root)?;
        paths.push(SubtreeRegion { id: crate::object::ObjectId(idx as u32), region });
    }
    Ok((space, paths))
}

/// Comb with `t` internal nodes and `t + 1` balls of radius `t + 2`. The
/// degree-2 spine ends are merged into their teeth.
pub fn gen_comb(t: usize) -> Result<(NetworkSpace, Vec<Ball>)> {
    let tt = t as i128;
    let tooth = q(tt + 2, 1);
    // Spine p_2 .. p_{t+1} are nodes 2..=t+1; tooth tips p'_i are 100 + i.
    let mut nodes: Vec<(NodeId, Option<(f64, f64)>)> = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=t + 2 {
        nodes.push((NodeId(100 + i as u32), Some((i as f64, (t + 2) as f64))));
    }
    let mut id = 0u32;
    let mut push = |edges: &mut Vec<Edge>, u: u32, v: u32, len: Rational| {
        edges.push(Edge { id: EdgeId(id), u: NodeId(u), v: NodeId(v), len });
        id += 1;
    };
    if t == 0 {
        push(&mut edges, 101, 102, tooth + tooth + Rational::ONE);
    } else {
        for i in 2..=t + 1 {
            nodes.push((NodeId(i as u32), Some((i as f64, 0.0))));
        }
        push(&mut edges, 101, 2, tooth + Rational::ONE);
        for i in 2..=t + 1 {
            push(&mut edges, i as u32, 100 + i as u32, tooth);
        }
        for i in 2..=t {
            push(&mut edges, i as u32, i as u32 + 1, Rational::ONE);
        }
        push(&mut edges, t as u32 + 1, 100 + t as u32 + 2, tooth + Rational::ONE);
    }
    let space = NetworkSpace::new(SpaceKind::Tree, nodes, edges)?;
    let mut balls = Vec::new();
    for i in 1..=t + 1 {
        // c_i sits two thirds along the spine segment p_i p_{i+1}.
        let center = if i == 1 {
            space.point(EdgeId(0), tooth + q(2, 3))?
        } else {
            let e = space
                .incident(NodeId(i as u32))
                .iter()
                .copied()
                .find(|&e| space.edge(e).is_ok_and(|x| x.u == NodeId(i as u32) && x.v != NodeId(100 + i as u32)))
                .ok_or(Error::Empty)?;
            space.point(e, q(2, 3))?
        };
        balls.push(Ball::new(i as u32 - 1, center, tooth));
    }
    Ok((space, balls))
}

/// `K4` with unit edges and one ball of the given radius at every node.
pub fn gen_k4(radius: Rational) -> Result<(NetworkSpace, Vec<Ball>)> {
    let coords = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.87), (0.5, 0.29)];
    let nodes = (0..4).map(|i| (NodeId(i), Some(coords[i as usize])));
    let mut edges = Vec::new();
    for a in 0..4u32 {
        for b in a + 1..4 {
            edges.push(Edge::new(edges.len() as u32, a, b, Rational::ONE));
        }
    }
    let space = NetworkSpace::new(SpaceKind::Planar, nodes, edges)?;
    let balls = (0..4).map(|v| Ball::new(v, PointOnSpace::Node(NodeId(v)), radius)).collect();
    Ok((space, balls))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    Balls,
    Subtrees,
}

/// Parameters of the random generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomParams {
    /// Internal nodes of the space.
    pub internal: usize,
    /// Additional pendant leaves beyond the minimum.
    pub extra_leaves: usize,
    /// Number of objects.
    pub objects: usize,
    /// Maximum leaves per subtree object.
    pub max_leaves: usize,
    /// Ball radii range up to this many average edge lengths, in quarters.
    pub radius_quarters: u32,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { internal: 6, extra_leaves: 3, objects: 12, max_leaves: 4, radius_quarters: 8 }
    }
}

fn random_len(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.random_range(1..=8), 2)
}

/// Random tree with `internal` nodes of degree at least 3.
pub fn random_tree_space(internal: usize, extra_leaves: usize, rng: &mut ChaCha8Rng) -> Result<NetworkSpace> {
    if internal == 0 {
        return NetworkSpace::new(
            SpaceKind::Tree,
            [(NodeId(0), Some((0.0, 0.0))), (NodeId(1), Some((1.0, 0.0)))],
            [Edge::new(0, 0, 1, random_len(rng))],
        );
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut degree = vec![0usize; internal];
    for i in 1..internal {
        let j = rng.random_range(0..i);
        edges.push((j as u32, i as u32));
        degree[i] += 1;
        degree[j] += 1;
    }
    let mut next = internal as u32;
    for (i, d) in degree.iter().enumerate() {
        for _ in *d..3 {
            edges.push((i as u32, next));
            next += 1;
        }
    }
    for _ in 0..extra_leaves {
        let i = rng.random_range(0..internal);
        edges.push((i as u32, next));
        next += 1;
    }
    let edges: Vec<Edge> = edges
        .into_iter()
        .enumerate()
        .map(|(id, (u, v))| Edge::new(id as u32, u, v, random_len(rng)))
        .collect();
    let coords = tree_layout(next as usize, &edges);
    NetworkSpace::new(SpaceKind::Tree, (0..next).map(|v| (NodeId(v), Some(coords[v as usize]))), edges)
}

/// Layered drawing rooted at node 0.
fn tree_layout(n: usize, edges: &[Edge]) -> Vec<(f64, f64)> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.u.0 as usize].push(e.v.0 as usize);
        adj[e.v.0 as usize].push(e.u.0 as usize);
    }
    let mut depth = vec![usize::MAX; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([0]);
    depth[0] = 0;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &adj[x] {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let mut per_level: BTreeMap<usize, usize> = BTreeMap::new();
    let mut coords = vec![(0.0, 0.0); n];
    for x in order {
        let slot = per_level.entry(depth[x]).or_default();
        coords[x] = (*slot as f64, -(depth[x] as f64));
        *slot += 1;
    }
    coords
}

/// Random planar space: stacked triangulation on `internal` points, random
/// edge deletions that keep degrees at least 3, then pendant leaves.
pub fn random_planar_space(internal: usize, extra_leaves: usize, rng: &mut ChaCha8Rng) -> Result<NetworkSpace> {
    let n = internal.max(4);
    let mut pts: Vec<(f64, f64)> = vec![(0.0, 0.0), (100.0, 0.0), (50.0, 87.0)];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::from([1, 2]), BTreeSet::from([0, 2]), BTreeSet::from([0, 1])];
    while pts.len() < n {
        let f = faces.swap_remove(rng.random_range(0..faces.len()));
        let w: [f64; 3] = [rng.random_range(1..=10) as f64, rng.random_range(1..=10) as f64, rng.random_range(1..=10) as f64];
        let s = w[0] + w[1] + w[2];
        let x = (0..3).map(|i| pts[f[i]].0 * w[i]).sum::<f64>() / s;
        let y = (0..3).map(|i| pts[f[i]].1 * w[i]).sum::<f64>() / s;
        let v = pts.len();
        pts.push((x, y));
        adj.push(BTreeSet::new());
        for &c in &f {
            adj[v].insert(c);
            adj[c].insert(v);
        }
        faces.push([f[0], f[1], v]);
        faces.push([f[1], f[2], v]);
        faces.push([f[0], f[2], v]);
    }
    let mut all: Vec<(usize, usize)> =
        (0..n).flat_map(|a| adj[a].iter().filter(move |&&b| b > a).map(move |&b| (a, b))).collect();
    all.shuffle(rng);
    for (a, b) in all {
        if adj[a].len() > 3 && adj[b].len() > 3 && rng.random_bool(0.5) {
            adj[a].remove(&b);
            adj[b].remove(&a);
            if !connected(&adj) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let mut edges: Vec<(usize, usize)> =
        (0..n).flat_map(|a| adj[a].iter().filter(move |&&b| b > a).map(move |&b| (a, b))).collect();
    for _ in 0..extra_leaves {
        let host = rng.random_range(0..n);
        let v = pts.len();
        let angle = rng.random_range(0..360) as f64 * std::f64::consts::PI / 180.0;
        pts.push((pts[host].0 + 6.0 * angle.cos(), pts[host].1 + 6.0 * angle.sin()));
        edges.push((host, v));
    }
    let edges: Vec<Edge> = edges
        .into_iter()
        .enumerate()
        .map(|(id, (a, b))| {
            let d = ((pts[a].0 - pts[b].0).powi(2) + (pts[a].1 - pts[b].1).powi(2)).sqrt();
            let halves = ((d / 5.0).round() as i128).max(1);
            Edge::new(id as u32, a as u32, b as u32, q(halves, 2))
        })
        .collect();
    NetworkSpace::new(
        SpaceKind::Planar,
        pts.iter().enumerate().map(|(i, &p)| (NodeId(i as u32), Some(p))),
        edges,
    )
}

fn connected(adj: &[BTreeSet<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A uniformly chosen edge and an offset on an eighth-grid of it.
pub fn random_point(space: &NetworkSpace, rng: &mut ChaCha8Rng) -> PointOnSpace {
    let edges: Vec<&Edge> = space.edges().collect();
    let e = edges[rng.random_range(0..edges.len())];
    let k = rng.random_range(0..=8);
    space.point(e.id, e.len * q(k, 8)).expect("offset within edge")
}

pub fn random_balls(space: &NetworkSpace, count: usize, radius_quarters: u32, rng: &mut ChaCha8Rng) -> Vec<Ball> {
    let mean = space.total_length() / Rational::from_int(space.edge_count() as i128);
    (0..count)
        .map(|i| {
            let center = random_point(space, rng);
            let r = mean * q(rng.random_range(0..=radius_quarters as i128), 4);
            Ball::new(i as u32, center, r)
        })
        .collect()
}

/// Unions of geodesics from a random anchor to at most `max_leaves - 1`
/// random targets, so every object has at most `max_leaves` leaves.
pub fn random_subtrees(
    space: &NetworkSpace,
    count: usize,
    max_leaves: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<SubtreeRegion>> {
    let mut out = Vec::new();
    for i in 0..count {
        let anchor = random_point(space, rng);
        let mut region = Region::point(space, &anchor);
        let targets = if max_leaves < 2 { 0 } else { rng.random_range(1..max_leaves) };
        for _ in 0..targets {
            let t = random_point(space, rng);
            region = region.union(space, &tree_geodesic(space, &anchor, &t)?);
        }
        out.push(SubtreeRegion { id: crate::object::ObjectId(i as u32), region });
    }
    Ok(out)
}

/// Deterministic random instance.
pub fn gen_random(
    kind: SpaceKind,
    objects: ObjectKind,
    params: &RandomParams,
    seed: u64,
) -> Result<(NetworkSpace, Vec<NetObject>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = match kind {
        SpaceKind::Tree => random_tree_space(params.internal, params.extra_leaves, &mut rng)?,
        SpaceKind::Planar => random_planar_space(params.internal, params.extra_leaves, &mut rng)?,
        SpaceKind::General => return Err(Error::RequiresPlanar),
    };
    let objs = match objects {
        ObjectKind::Balls => random_balls(&space, params.objects, params.radius_quarters, &mut rng)
            .into_iter()
            .map(NetObject::Ball)
            .collect(),
        ObjectKind::Subtrees => {
            if !space.is_tree() {
                return Err(Error::RequiresTree);
            }
            random_subtrees(&space, params.objects, params.max_leaves, &mut rng)?
                .into_iter()
                .map(NetObject::Subtree)
                .collect()
        }
    };
    Ok((space, objs))
}

/// `count` random closed intervals with endpoints on a quarter grid.
pub fn gen_random_intervals(count: usize, seed: u64) -> Vec<Interval> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 4 * count.max(1) as i128;
    (0..count as u32)
        .map(|id| {
            let a = rng.random_range(0..span);
            let len = rng.random_range(0..=span / 2);
            Interval::new(id, q(a, 4), q(a + len, 4))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_pairs_shape() {
        let (s, objs) = gen_star_pairs(6, 3, 4).unwrap();
        assert_eq!(s.k(), 6);
        assert_eq!(objs.len(), 4);
        for o in &objs {
            assert_eq!(o.leaf_count(&s), 3);
        }
        let (s, objs) = gen_star_pairs(1, 1, 2).unwrap();
        assert_eq!(s.edge_count(), 1);
        assert_eq!(objs.len(), 2);
        assert_eq!(pair_capacity(6), 4);
        assert_eq!(pair_capacity(10), 5);
        assert_eq!(pair_capacity(9), 4);
    }

    #[test]
    fn binary_tree_paths_shape() {
        let (s, p) = gen_binary_tree_paths(8, 8).unwrap();
        assert_eq!(s.k(), 4);
        assert_eq!(s.t(), 2);
        assert_eq!(p.len(), 4);
        let root = s.point(EdgeId(0), Rational::ONE).unwrap();
        assert!(p.iter().all(|x| x.region.contains(&root) && x.leaf_count(&s) == 2));
        assert_eq!(gen_binary_tree_paths(4, 4).unwrap().1.len(), 2);
        assert_eq!(gen_binary_tree_paths(2, 2).unwrap().1.len(), 1);
    }

    #[test]
    fn comb_shape() {
        for t in [0, 1, 3, 7] {
            let (s, b) = gen_comb(t).unwrap();
            assert_eq!(s.t(), t);
            assert_eq!(s.k(), t + 2);
            assert_eq!(b.len(), t + 1);
        }
    }

    #[test]
    fn random_is_deterministic() {
        let p = RandomParams::default();
        let a = gen_random(SpaceKind::Tree, ObjectKind::Subtrees, &p, 9).unwrap();
        let b = gen_random(SpaceKind::Tree, ObjectKind::Subtrees, &p, 9).unwrap();
        assert_eq!(a, b);
        let c = gen_random(SpaceKind::Planar, ObjectKind::Balls, &p, 9).unwrap();
        assert!(c.0.passes_planarity_test());
        for o in &a.1 {
            if let NetObject::Subtree(t) = o {
                assert!(t.region.is_connected(&a.0));
                assert!(t.leaf_count(&a.0) <= p.max_leaves);
            }
        }
    }
}
