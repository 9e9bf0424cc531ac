//! Colorings of balls on planar network spaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::{cf_chain, nm_chain};
use crate::error::{Error, Result};
use crate::object::{check_distinct_ids, Coloring, Interval, ObjectId};
use crate::planarity;
use crate::space::{assign_fields, Ball, BallAssignment, BallField, EdgeId, NetworkSpace, PathLine, Region, Span};
use crate::validator::decompose;

/// Exact 4-coloring is attempted up to this many vertices.
pub const EXACT_COLOR_LIMIT: usize = 64;
/// Exact maximum independent sets up to this many vertices.
pub const EXACT_MIS_LIMIT: usize = 40;
const SEARCH_BUDGET: u64 = 2_000_000;

/// Simple graph on ball ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BallGraph {
    pub vertices: BTreeSet<ObjectId>,
    pub edges: BTreeSet<(ObjectId, ObjectId)>,
}

/// Balls adjacent when they are assigned to the two ends of a space edge.
pub type AssignmentGraph = BallGraph;
/// Balls adjacent when some point lies in exactly those two.
pub type DelaunayGraph = BallGraph;

impl BallGraph {
    fn add_edge(&mut self, a: ObjectId, b: ObjectId) {
        if a != b {
            self.edges.insert((a.min(b), a.max(b)));
        }
    }

    fn index(&self) -> (Vec<ObjectId>, Vec<BTreeSet<usize>>) {
        let ids: Vec<ObjectId> = self.vertices.iter().copied().collect();
        let pos: BTreeMap<ObjectId, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut adj = vec![BTreeSet::new(); ids.len()];
        for (a, b) in &self.edges {
            adj[pos[a]].insert(pos[b]);
            adj[pos[b]].insert(pos[a]);
        }
        (ids, adj)
    }

    pub fn is_planar(&self) -> bool {
        let (ids, adj) = self.index();
        let pairs: Vec<(usize, usize)> =
            adj.iter().enumerate().flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect();
        planarity::is_planar(ids.len(), &pairs)
    }

    /// `|E| ≤ 3|V| − 6` for three or more vertices.
    pub fn euler_bound_holds(&self) -> bool {
        let n = self.vertices.len();
        n < 3 || self.edges.len() <= 3 * n - 6
    }

    fn check(self, what: &str) -> Result<Self> {
        if self.is_planar() && self.euler_bound_holds() {
            Ok(self)
        } else {
            Err(Error::Invariant(format!("{what} graph is not planar")))
        }
    }
}

fn require_planar(space: &NetworkSpace) -> Result<()> {
    if space.is_planar() {
        Ok(())
    } else {
        Err(Error::RequiresPlanar)
    }
}

fn fields_of(space: &NetworkSpace, balls: &[Ball]) -> Result<Vec<BallField>> {
    check_distinct_ids(balls.iter().map(|b| b.id))?;
    balls.iter().map(|b| BallField::new(space, b)).collect()
}

fn graph_from(space: &NetworkSpace, assignment: &BallAssignment) -> Result<AssignmentGraph> {
    let mut g = BallGraph::default();
    for (_, b, _) in assignment.iter() {
        g.vertices.insert(b);
    }
    for e in space.edges() {
        if let (Some(a), Some(b)) = (assignment.get(e.u), assignment.get(e.v)) {
            g.add_edge(a, b);
        }
    }
    g.check("assignment")
}

pub fn build_assignment_graph(space: &NetworkSpace, balls: &[Ball]) -> Result<AssignmentGraph> {
    require_planar(space)?;
    let fields = fields_of(space, balls)?;
    graph_from(space, &assign_fields(space, &fields))
}

/// Proper coloring of a planar graph and whether it came from the exact
/// search (minimum palette, at most 4) or the 5-coloring fallback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarColoring {
    pub coloring: Coloring,
    pub exact: bool,
}

pub fn planar_color(g: &BallGraph) -> Result<PlanarColoring> {
    planar_color_with(g, EXACT_COLOR_LIMIT)
}

pub fn planar_color_with(g: &BallGraph, exact_limit: usize) -> Result<PlanarColoring> {
    if !g.is_planar() {
        return Err(Error::Invariant("coloring a non-planar graph".into()));
    }
    let (ids, adj) = g.index();
    let colors = if ids.len() <= exact_limit {
        (1..=4).find_map(|k| {
            let mut budget = SEARCH_BUDGET;
            exact_coloring(&adj, k, &mut budget)
        })
    } else {
        None
    };
    let exact = colors.is_some();
    let colors = match colors {
        Some(c) => c,
        None => five_coloring(&adj)?,
    };
    Ok(PlanarColoring { coloring: ids.into_iter().zip(colors).collect(), exact })
}

/// Backtracking with the most constrained vertex first; `None` when no
/// `k`-coloring exists or the budget runs out.
fn exact_coloring(adj: &[BTreeSet<usize>], k: u32, budget: &mut u64) -> Option<Vec<u32>> {
    fn go(adj: &[BTreeSet<usize>], k: u32, colors: &mut [u32], left: usize, budget: &mut u64) -> Option<bool> {
        if left == 0 {
            return Some(true);
        }
        *budget = budget.checked_sub(1)?;
        let (v, _) = (0..adj.len())
            .filter(|&v| colors[v] == 0)
            .map(|v| {
                let seen: BTreeSet<u32> = adj[v].iter().map(|&w| colors[w]).filter(|&c| c > 0).collect();
                (v, (seen.len(), adj[v].len()))
            })
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))?;
        let used = colors.iter().copied().max().unwrap_or(0);
        for c in 1..=k.min(used + 1) {
            if adj[v].iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if go(adj, k, colors, left - 1, budget)? {
                    return Some(true);
                }
                colors[v] = 0;
            }
        }
        Some(false)
    }
    let mut colors = vec![0; adj.len()];
    match go(adj, k, &mut colors, adj.len(), budget) {
        Some(true) => Some(colors),
        _ => None,
    }
}

/// Removes a vertex of degree at most 4, or merges two non-adjacent
/// neighbors of a degree-5 vertex, colors the rest and puts it back.
fn five_coloring(adj: &[BTreeSet<usize>]) -> Result<Vec<u32>> {
    let graph: BTreeMap<usize, BTreeSet<usize>> = adj.iter().cloned().enumerate().collect();
    let colors = five_rec(graph)?;
    Ok((0..adj.len()).map(|v| colors[&v]).collect())
}

fn five_rec(mut g: BTreeMap<usize, BTreeSet<usize>>) -> Result<BTreeMap<usize, u32>> {
    let Some((&v, _)) = g.iter().min_by_key(|(v, ns)| (ns.len(), **v)) else {
        return Ok(BTreeMap::new());
    };
    let around = g.remove(&v).unwrap();
    for w in &around {
        g.get_mut(w).unwrap().remove(&v);
    }
    let merged = match around.len() {
        0..=4 => None,
        5 => {
            let pair = around
                .iter()
                .flat_map(|&x| around.iter().map(move |&y| (x, y)))
                .find(|&(x, y)| x < y && !g[&x].contains(&y))
                .ok_or(Error::Invariant("five neighbors pairwise adjacent".into()))?;
            let (x, y) = pair;
            let ys = g.remove(&y).unwrap();
            for w in ys {
                let s = g.get_mut(&w).unwrap();
                s.remove(&y);
                if w != x {
                    s.insert(x);
                    g.get_mut(&x).unwrap().insert(w);
                }
            }
            Some(pair)
        }
        _ => return Err(Error::Invariant("no vertex of degree at most 5".into())),
    };
    let mut colors = five_rec(g)?;
    if let Some((x, y)) = merged {
        colors.insert(y, colors[&x]);
    }
    let taken: BTreeSet<u32> = around.iter().map(|w| colors[w]).collect();
    colors.insert(v, (1..).find(|c| !taken.contains(c)).unwrap());
    Ok(colors)
}

/// Non-monochromatic coloring with its core and whether the core coloring
/// was exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarNm {
    pub coloring: Coloring,
    pub core: BTreeSet<ObjectId>,
    pub exact: bool,
}

/// Closure of the part of `extent` outside `covered`, if it lies on one edge.
fn lone_edge(rest: &Region, space: &NetworkSpace) -> Option<EdgeId> {
    let mut edges = rest.touched_edges();
    let Some(e) = edges.next() else {
        let mut nodes = rest.nodes().iter();
        let v = *nodes.next()?;
        return if nodes.next().is_none() { space.incident(v).first().copied() } else { None };
    };
    if edges.next().is_some() {
        return None;
    }
    let edge = space.edge(e).ok()?;
    rest.nodes().iter().all(|&v| v == edge.u || v == edge.v).then_some(e)
}

/// Interval of `extent` inside the single gap of `covered` on `e`, along
/// the line from `e.u` to `e.v`.
fn gap_interval(space: &NetworkSpace, e: EdgeId, covered: &Region, id: ObjectId, extent: &Region) -> Result<Option<Interval>> {
    let edge = space.edge(e)?;
    let line = PathLine::from_nodes(space, &[edge.u, edge.v])?;
    let mut pieces = Vec::new();
    let mut hit = 0;
    for g in covered.gaps_on(space, e) {
        let before = pieces.len();
        pieces.extend(line.project(extent).into_iter().filter_map(|(lo, hi)| g.clip(&Span::new(lo, hi))));
        hit += usize::from(pieces.len() > before);
    }
    if hit > 1 {
        return Err(Error::Invariant(format!("ball {id} meets two gaps of edge {e}")));
    }
    Ok(match (pieces.first(), pieces.last()) {
        (Some(a), Some(b)) => Some(Interval { id, left: a.lo, right: b.hi }),
        _ => None,
    })
}

struct Leftover {
    per_edge: BTreeMap<EdgeId, Vec<ObjectId>>,
    covered_balls: Vec<ObjectId>,
}

fn split_leftovers(
    space: &NetworkSpace,
    fields: &[BallField],
    extents: &BTreeMap<ObjectId, Region>,
    core: &BTreeSet<ObjectId>,
    covered: &Region,
) -> Result<Leftover> {
    let mut out = Leftover { per_edge: BTreeMap::new(), covered_balls: Vec::new() };
    for f in fields.iter().filter(|f| !core.contains(&f.ball.id)) {
        let id = f.ball.id;
        let rest = extents[&id].difference_closure(space, covered);
        if rest.is_empty() {
            out.covered_balls.push(id);
            continue;
        }
        let e = lone_edge(&rest, space)
            .ok_or_else(|| Error::Invariant(format!("ball {id} is uncovered on more than one edge")))?;
        out.per_edge.entry(e).or_default().push(id);
    }
    Ok(out)
}

/// Smallest set of at most three core balls whose union holds `ball`,
/// searched by size and then by ids.
pub fn cover_witness(
    space: &NetworkSpace,
    core: &BTreeMap<ObjectId, Region>,
    ball: &Region,
) -> Result<BTreeSet<ObjectId>> {
    let near: Vec<(ObjectId, &Region)> =
        core.iter().filter(|(_, r)| !r.intersection(space, ball).is_empty()).map(|(id, r)| (*id, r)).collect();
    let covers = |pick: &[usize]| {
        let union = pick.iter().fold(Region::default(), |acc, &i| acc.union(space, near[i].1));
        ball.difference_closure(space, &union).is_empty()
    };
    let n = near.len();
    for size in 1..=3usize.min(n) {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            if covers(&pick) {
                return Ok(pick.iter().map(|&i| near[i].0).collect());
            }
            let Some(j) = (0..size).rev().find(|&j| pick[j] < n - size + j) else { break };
            pick[j] += 1;
            for t in j + 1..size {
                pick[t] = pick[t - 1] + 1;
            }
        }
    }
    Err(Error::Invariant("ball is not covered by three core balls".into()))
}

/// Core balls are those assigned to some node. The core takes a proper
/// coloring of the assignment graph, balls sticking out of the core are
/// chained per edge with two colors other than those of the edge's end
/// balls, and balls inside the core avoid the colors of their witnesses.
pub fn nm_color_balls_planar(space: &NetworkSpace, balls: &[Ball]) -> Result<PlanarNm> {
    nm_color_balls_planar_with(space, balls, EXACT_COLOR_LIMIT)
}

/// As [`nm_color_balls_planar`], trying the exact core 4-coloring only when
/// the core has at most `exact_limit` balls.
pub fn nm_color_balls_planar_with(space: &NetworkSpace, balls: &[Ball], exact_limit: usize) -> Result<PlanarNm> {
    require_planar(space)?;
    let fields = fields_of(space, balls)?;
    let assignment = assign_fields(space, &fields);
    let graph = graph_from(space, &assignment)?;
    let PlanarColoring { mut coloring, exact } = planar_color_with(&graph, exact_limit)?;
    let core = graph.vertices.clone();
    let extents: BTreeMap<ObjectId, Region> = fields.iter().map(|f| (f.ball.id, f.extent(space))).collect();
    let core_extents: BTreeMap<ObjectId, Region> = core.iter().map(|id| (*id, extents[id].clone())).collect();
    let covered = core.iter().fold(Region::default(), |acc, id| acc.union(space, &extents[id]));
    let left = split_leftovers(space, &fields, &extents, &core, &covered)?;
    let top = coloring.palette().last().copied().unwrap_or(0).max(4);
    for (&e, ids) in &left.per_edge {
        let edge = space.edge(e)?;
        let ends: BTreeSet<u32> =
            [edge.u, edge.v].iter().filter_map(|&v| assignment.get(v)).filter_map(|b| coloring.get(b)).collect();
        let mut free = (1..=top).filter(|c| !ends.contains(c));
        let palette = (free.next().unwrap(), free.next().unwrap());
        let mut intervals = Vec::new();
        for &id in ids {
            if let Some(iv) = gap_interval(space, e, &covered, id, &extents[&id])? {
                intervals.push(iv);
            }
        }
        coloring.extend_from(&nm_chain(&intervals, palette));
    }
    for &id in &left.covered_balls {
        let taken: BTreeSet<u32> = cover_witness(space, &core_extents, &extents[&id])?
            .iter()
            .filter_map(|w| coloring.get(*w))
            .collect();
        coloring.set(id, (1..).find(|c| !taken.contains(c)).unwrap());
    }
    Ok(PlanarNm { coloring, core, exact })
}

pub fn build_delaunay_graph(space: &NetworkSpace, balls: &[(ObjectId, Region)]) -> Result<DelaunayGraph> {
    let mut g = BallGraph { vertices: balls.iter().map(|(id, _)| *id).collect(), ..Default::default() };
    for class in decompose(space, balls).classes {
        if class.members.len() == 2 {
            let mut m = class.members.iter();
            g.add_edge(*m.next().unwrap(), *m.next().unwrap());
        }
    }
    g.check("Delaunay")
}

/// Largest vertex set holding no hyperedge completely; `None` when the
/// search budget runs out. At most 64 vertices.
fn exact_independent(n: usize, hyper: &[u64], budget: &mut u64) -> Option<u64> {
    struct Search<'a> {
        hyper: &'a [u64],
        best: u64,
        budget: &'a mut u64,
    }
    impl Search<'_> {
        fn go(&mut self, chosen: u64, mut open: u64) -> Option<()> {
            *self.budget = self.budget.checked_sub(1)?;
            loop {
                let before = open;
                for &h in self.hyper {
                    let missing = h & !chosen;
                    if missing.count_ones() == 1 {
                        open &= !missing;
                    }
                }
                if open == before {
                    break;
                }
            }
            if (chosen | open).count_ones() <= self.best.count_ones() {
                return Some(());
            }
            if open == 0 {
                self.best = chosen;
                return Some(());
            }
            let v = (0..64)
                .filter(|&v| open >> v & 1 == 1)
                .max_by_key(|&v| (self.hyper.iter().filter(|&&h| h >> v & 1 == 1).count(), std::cmp::Reverse(v)))
                .unwrap();
            self.go(chosen | 1 << v, open & !(1 << v))?;
            self.go(chosen, open & !(1 << v))
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = Search { hyper, best: greedy_independent(n, hyper), budget };
    s.go(0, all)?;
    Some(s.best)
}

/// Adds vertices by ascending hyperedge degree, then id, while no
/// hyperedge gets filled.
fn greedy_independent(n: usize, hyper: &[u64]) -> u64 {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (hyper.iter().filter(|&&h| h >> v & 1 == 1).count(), v));
    let mut chosen = 0u64;
    for v in order {
        let next = chosen | 1 << v;
        if hyper.iter().all(|&h| h & next != h) {
            chosen = next;
        }
    }
    chosen
}

/// Conflict-free coloring with its core, round count and whether every
/// round used an exact maximum independent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarCf {
    pub coloring: Coloring,
    pub core: BTreeSet<ObjectId>,
    pub rounds: usize,
    pub exact_mis: bool,
    /// Point sets of two or more core balls holding no Delaunay edge,
    /// summed over rounds.
    pub unpinned: usize,
}

pub fn cf_color_balls_planar(space: &NetworkSpace, balls: &[Ball]) -> Result<PlanarCf> {
    cf_color_balls_planar_with(space, balls, EXACT_MIS_LIMIT)
}

/// Core balls are those assigned to internal nodes. Round `i` gives color
/// `i` to a largest set of uncolored core balls containing no full point
/// set of two or more of them; when every such point set holds a Delaunay
/// edge this is a maximum independent set of the Delaunay graph. Balls sticking out of the core are chained per edge with two fresh
/// colors and a dummy one; balls inside the core take the dummy.
pub fn cf_color_balls_planar_with(space: &NetworkSpace, balls: &[Ball], exact_limit: usize) -> Result<PlanarCf> {
    require_planar(space)?;
    let fields = fields_of(space, balls)?;
    let assignment = assign_fields(space, &fields);
    let core: BTreeSet<ObjectId> =
        assignment.iter().filter(|(x, _, _)| space.is_internal(*x)).map(|(_, b, _)| b).collect();
    let extents: BTreeMap<ObjectId, Region> = fields.iter().map(|f| (f.ball.id, f.extent(space))).collect();

    let mut coloring = Coloring::new();
    let mut rest: Vec<ObjectId> = core.iter().copied().collect();
    let mut rounds = 0u32;
    let mut exact_mis_used = true;
    let mut unpinned = 0;
    while !rest.is_empty() {
        rounds += 1;
        let regions: Vec<(ObjectId, Region)> = rest.iter().map(|id| (*id, extents[id].clone())).collect();
        let g = build_delaunay_graph(space, &regions)?;
        let ids: Vec<ObjectId> = rest.clone();
        let pos: BTreeMap<ObjectId, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let mut hyper = Vec::new();
        for set in decompose(space, &regions).sets(2) {
            let pairs = set.iter().flat_map(|a| set.iter().map(move |b| (*a, *b)));
            if !pairs.into_iter().any(|p| g.edges.contains(&p)) {
                unpinned += 1;
            }
            hyper.push(set.iter().fold(0u64, |m, id| m | 1 << pos[id]));
        }
        let exact = if ids.len() <= exact_limit.min(64) {
            let mut budget = SEARCH_BUDGET;
            exact_independent(ids.len(), &hyper, &mut budget)
        } else {
            None
        };
        exact_mis_used &= exact.is_some();
        let set = match exact {
            Some(set) => set,
            None if ids.len() <= 64 => greedy_independent(ids.len(), &hyper),
            None => return Err(Error::TooLarge(ids.len(), 64)),
        };
        let chosen: Vec<usize> = (0..ids.len()).filter(|&v| set >> v & 1 == 1).collect();
        for &v in &chosen {
            coloring.set(ids[v], rounds);
        }
        rest.retain(|id| !coloring.contains(*id));
    }

    let covered = core.iter().fold(Region::default(), |acc, id| acc.union(space, &extents[id]));
    let left = split_leftovers(space, &fields, &extents, &core, &covered)?;
    let (blue, red, dummy) = (rounds + 1, rounds + 2, rounds + 3);
    for &id in &left.covered_balls {
        coloring.set(id, dummy);
    }
    for (&e, ids) in &left.per_edge {
        let mut intervals = Vec::new();
        for &id in ids {
            if let Some(iv) = gap_interval(space, e, &covered, id, &extents[&id])? {
                intervals.push(iv);
            }
        }
        coloring.extend_from(&cf_chain(&intervals, (blue, red, dummy)));
    }
    Ok(PlanarCf { coloring, core, rounds: rounds as usize, exact_mis: exact_mis_used, unpinned })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_k4, gen_random, ObjectKind, RandomParams};
    use crate::object::NetObject;
    use crate::rational::q;
    use crate::space::SpaceKind;
    use crate::validator::{check, decompose_objects, Mode};

    fn balls_of(objs: &[NetObject]) -> Vec<Ball> {
        objs.iter().filter_map(|o| o.as_ball().copied()).collect()
    }

    #[test]
    fn k4_needs_four() {
        let (space, balls) = gen_k4(q(2, 3)).unwrap();
        let g = build_assignment_graph(&space, &balls).unwrap();
        assert_eq!(g.edges.len(), 6);
        let nm = nm_color_balls_planar(&space, &balls).unwrap();
        assert_eq!(nm.coloring.palette_size(), 4);
        assert!(nm.exact);
    }

    #[test]
    fn five_coloring_is_proper() {
        let (space, objs) = gen_random(SpaceKind::Planar, ObjectKind::Balls, &RandomParams::default(), 1).unwrap();
        let g = build_assignment_graph(&space, &balls_of(&objs)).unwrap();
        let c = planar_color_with(&g, 0).unwrap();
        assert!(!c.exact);
        assert!(c.coloring.palette_size() <= 5);
        for (a, b) in &g.edges {
            assert_ne!(c.coloring.get(*a), c.coloring.get(*b));
        }
    }

    #[test]
    fn random_planar_instances_are_valid() {
        for seed in 0..30 {
            let params = RandomParams { objects: 14, ..RandomParams::default() };
            let (space, objs) = gen_random(SpaceKind::Planar, ObjectKind::Balls, &params, seed).unwrap();
            let balls = balls_of(&objs);
            let decomp = decompose_objects(&space, &objs).unwrap();
            let nm = nm_color_balls_planar(&space, &balls).unwrap();
            assert!(check(&decomp, &nm.coloring, Mode::Nm).unwrap().valid, "nm seed {seed}");
            assert!(nm.coloring.palette_size() <= 4);
            let cf = cf_color_balls_planar(&space, &balls).unwrap();
            assert!(check(&decomp, &cf.coloring, Mode::Cf).unwrap().valid, "cf seed {seed}");
        }
    }
}
