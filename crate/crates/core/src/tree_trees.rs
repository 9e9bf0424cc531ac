//! Colorings of subtrees on tree spaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::{cf_chain, nm_chain};
use crate::error::{Error, Result};
use crate::object::{Coloring, Interval, ObjectId, SubtreeRegion};
use crate::rational::Rational;
use crate::space::{tree_geodesic, EdgeId, NetworkSpace, NodeId, PathLine, PointOnSpace, Region};
use crate::tree_balls::find_centroid;
use crate::validator::decompose;

/// Per (edge, non-leaf endpoint) the two objects through the endpoint
/// reaching farthest into the edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoreSelection {
    /// Ranked, best first.
    pub pairs: BTreeMap<(EdgeId, NodeId), Vec<ObjectId>>,
    pub core: BTreeSet<ObjectId>,
    /// `E(T)`: edges whose selection holds `T`.
    pub edges_of: BTreeMap<ObjectId, BTreeSet<EdgeId>>,
}

impl CoreSelection {
    pub fn on_edge(&self, e: EdgeId) -> BTreeSet<ObjectId> {
        self.pairs
            .range((e, NodeId(0))..=(e, NodeId(u32::MAX)))
            .flat_map(|(_, v)| v.iter().copied())
            .collect()
    }

    /// The object reaching farthest into `e` from `v`.
    pub fn top(&self, e: EdgeId, v: NodeId) -> Option<ObjectId> {
        self.pairs.get(&(e, v)).and_then(|v| v.first().copied())
    }
}

fn require_tree(space: &NetworkSpace) -> Result<()> {
    if space.is_tree() {
        Ok(())
    } else {
        Err(Error::RequiresTree)
    }
}

pub fn select_core(space: &NetworkSpace, objects: &[SubtreeRegion]) -> Result<CoreSelection> {
    require_tree(space)?;
    crate::object::check_distinct_ids(objects.iter().map(|o| o.id))?;
    let mut sel = CoreSelection::default();
    for e in space.edges() {
        for v in [e.u, e.v] {
            if space.is_leaf(v) {
                continue;
            }
            let mut through: Vec<(Rational, ObjectId)> = objects
                .iter()
                .filter(|o| o.region.contains_node(v))
                .map(|o| (o.region.length_on(e.id), o.id))
                .collect();
            through.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            through.truncate(2);
            if through.is_empty() {
                continue;
            }
            for &(_, id) in &through {
                sel.core.insert(id);
                sel.edges_of.entry(id).or_default().insert(e.id);
            }
            sel.pairs.insert((e.id, v), through.into_iter().map(|(_, id)| id).collect());
        }
    }
    Ok(sel)
}

/// Smallest subtree of `t` containing `t ∩ e` for every `e` in `edges`.
pub fn trim_tree(space: &NetworkSpace, t: &SubtreeRegion, edges: &BTreeSet<EdgeId>) -> Result<SubtreeRegion> {
    let mut points = Vec::new();
    for &e in edges {
        let edge = space.edge(e)?;
        for v in [edge.u, edge.v] {
            if t.region.contains_node(v) {
                points.push(PointOnSpace::Node(v));
            }
        }
        for s in t.region.spans_on(e) {
            points.push(space.point(e, s.lo)?);
            points.push(space.point(e, s.hi)?);
        }
    }
    let Some(anchor) = points.first().copied() else {
        return Err(Error::InvalidObject(t.id.0, "trimming to an empty edge set".into()));
    };
    let mut region = Region::point(space, &anchor);
    for p in &points[1..] {
        region = region.union(space, &tree_geodesic(space, &anchor, p)?);
    }
    Ok(SubtreeRegion { id: t.id, region })
}

/// Max leaves over the objects.
pub fn max_leaves(space: &NetworkSpace, objects: &[SubtreeRegion]) -> usize {
    objects.iter().map(|o| o.leaf_count(space)).max().unwrap_or(0)
}

/// `ℓ > 2√(6k)`: heavy core trees get singleton colors.
pub fn heavy_regime(k: usize, l: usize) -> bool {
    l * l > 24 * k
}

/// `|E(T)| ≥ √(6k)`.
pub fn is_heavy(edge_count: usize, k: usize) -> bool {
    edge_count * edge_count >= 6 * k
}

fn heavy_trees(sel: &CoreSelection, k: usize, l: usize) -> Vec<ObjectId> {
    if !heavy_regime(k, l) {
        return Vec::new();
    }
    sel.edges_of.iter().filter(|(_, es)| is_heavy(es.len(), k)).map(|(&id, _)| id).collect()
}

struct Rooted<'a> {
    space: &'a NetworkSpace,
    trees: &'a [(ObjectId, Region)],
    coloring: Coloring,
    colored: Vec<usize>,
    base: u32,
    check_zones: bool,
}

/// Colors trees that each contain an internal node so that the coloring is
/// non-monochromatic, rooted at the centroid and descending through
/// `split_at_node`. A tree takes the smallest color not held by a tree that
/// alone covers some point of it.
fn rooted_nm(space: &NetworkSpace, trees: &[(ObjectId, Region)], base: u32, check_zones: bool) -> Result<Coloring> {
    if trees.is_empty() {
        return Ok(Coloring::new());
    }
    let internal: BTreeSet<NodeId> = space.internal_nodes().into_iter().collect();
    if let Some((id, _)) = trees.iter().find(|(_, r)| !r.nodes().iter().any(|v| internal.contains(v))) {
        return Err(Error::Invariant(format!("tree {id} holds no internal node")));
    }
    let root = find_centroid(space, &internal)?;
    let mut st = Rooted { space, trees, coloring: Coloring::new(), colored: Vec::new(), base, check_zones };
    st.descend(space, root, None, (0..trees.len()).collect())?;
    Ok(st.coloring)
}

impl Rooted<'_> {
    fn forbidden(&self, i: usize) -> BTreeSet<u32> {
        let space = self.space;
        let (id, region) = &self.trees[i];
        let mut local = vec![(*id, region.clone())];
        for &j in &self.colored {
            let (other, r) = &self.trees[j];
            if !r.intersection(space, region).is_empty() {
                local.push((*other, r.clone()));
            }
        }
        decompose(space, &local)
            .classes
            .iter()
            .filter(|c| c.members.len() == 2 && c.members.contains(id))
            .filter_map(|c| c.members.iter().find(|m| *m != id))
            .filter_map(|m| self.coloring.get(*m))
            .collect()
    }

    fn descend(
        &mut self,
        sub: &NetworkSpace,
        root: NodeId,
        parent: Option<(EdgeId, NodeId)>,
        pending: Vec<usize>,
    ) -> Result<()> {
        let (mut here, rest): (Vec<usize>, Vec<usize>) =
            pending.into_iter().partition(|&i| self.trees[i].1.contains_node(root));
        here.sort_by(|&a, &b| {
            let (ia, ra) = &self.trees[a];
            let (ib, rb) = &self.trees[b];
            rb.total_length().cmp(&ra.total_length()).then(ia.cmp(ib))
        });
        if let Some((e, _)) = parent {
            let best = here
                .iter()
                .enumerate()
                .max_by(|(_, &a), (_, &b)| {
                    let (ia, ra) = &self.trees[a];
                    let (ib, rb) = &self.trees[b];
                    ra.length_on(e).cmp(&rb.length_on(e)).then(ib.cmp(ia))
                })
                .map(|(pos, _)| pos);
            if let Some(pos) = best {
                let first = here.remove(pos);
                here.insert(0, first);
            }
        }
        let mut reach = None;
        for (j, &i) in here.iter().enumerate() {
            let banned = self.forbidden(i);
            let color = (self.base..).find(|c| !banned.contains(c)).unwrap();
            self.coloring.set(self.trees[i].0, color);
            self.colored.push(i);
            if j == 0 {
                reach = parent.map(|(e, _)| self.trees[i].1.length_on(e));
            }
            if self.check_zones {
                self.check(sub, root, parent, reach)?;
            }
        }
        if rest.is_empty() {
            return Ok(());
        }
        for part in sub.split_at_node(root)? {
            let inside: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&i| {
                    let r = &self.trees[i].1;
                    r.nodes().iter().any(|&v| v != root && part.has_node(v))
                        || r.touched_edges().any(|e| part.has_edge(e))
                })
                .collect();
            if inside.is_empty() {
                continue;
            }
            let (e, child) = part.neighbors(root).next().ok_or(Error::Invariant("empty part".into()))?;
            if part.degree(child) < 2 {
                return Err(Error::Invariant(format!("trees left below leaf {child}")));
            }
            self.descend(&part, child, Some((e, root)), inside)?;
        }
        Ok(())
    }

    /// Every path from `root` must read: non-monochromatic, then covered by
    /// one colored tree, then uncolored. On the edge back to the previous
    /// root, up to the first tree colored here, only monochromatic points
    /// are rejected.
    fn check(&self, sub: &NetworkSpace, root: NodeId, parent: Option<(EdgeId, NodeId)>, reach: Option<Rational>) -> Result<()> {
        let mut lines = Vec::new();
        for leaf in sub.leaves() {
            if parent.is_some_and(|(_, old)| old == leaf) {
                continue;
            }
            lines.push((PathLine::tree_path(sub, root, leaf)?, None, true));
        }
        if let (Some((_, old)), Some(limit)) = (parent, reach) {
            lines.push((PathLine::from_nodes(sub, &[root, old])?, Some(limit), false));
        }
        for (line, limit, ordered) in lines {
            zones_in_order(&line, limit, ordered, &self.colored_intervals(&line))
                .map_err(|why| Error::Invariant(format!("zones from {root}: {why}")))?;
        }
        Ok(())
    }

    fn colored_intervals(&self, line: &PathLine) -> Vec<(Interval, u32)> {
        self.colored
            .iter()
            .filter_map(|&i| {
                let (id, r) = &self.trees[i];
                let parts = line.project(r);
                let (lo, hi) = (parts.first()?.0, parts.last()?.1);
                Some((Interval { id: *id, left: lo, right: hi }, self.coloring.get(*id)?))
            })
            .collect()
    }
}

fn zones_in_order(line: &PathLine, limit: Option<Rational>, ordered: bool, colored: &[(Interval, u32)]) -> std::result::Result<(), String> {
    let end = limit.unwrap_or(line.length());
    let mut events: BTreeSet<Rational> = BTreeSet::from([Rational::ZERO, end]);
    for (iv, _) in colored {
        for x in [iv.left, iv.right] {
            if x <= end {
                events.insert(x);
            }
        }
    }
    let events: Vec<Rational> = events.into_iter().collect();
    let mut samples = events.clone();
    samples.extend(events.windows(2).map(|w| w[0].midpoint(w[1])));
    samples.sort();
    let mut zone = 0;
    let mut single: Option<ObjectId> = None;
    for x in samples {
        let here: Vec<&(Interval, u32)> = colored.iter().filter(|(iv, _)| iv.contains(x)).collect();
        let z = match here.len() {
            0 => 2,
            1 => {
                let id = here[0].0.id;
                if ordered && single.is_some_and(|s| s != id) {
                    return Err(format!("two singly-colored parts at {x}"));
                }
                single = Some(id);
                1
            }
            _ => {
                let colors: BTreeSet<u32> = here.iter().map(|(_, c)| *c).collect();
                if colors.len() < 2 {
                    return Err(format!("monochromatic at {x}"));
                }
                0
            }
        };
        if ordered && z < zone {
            return Err(format!("zone order broken at {x}"));
        }
        zone = z;
    }
    Ok(())
}

/// Non-monochromatic coloring of the core: heavy trees first get singleton
/// colors, the remaining trimmed trees go through the rooted procedure.
pub fn nm_color_core(
    space: &NetworkSpace,
    objects: &[SubtreeRegion],
    sel: &CoreSelection,
    check_zones: bool,
) -> Result<Coloring> {
    let k = space.k();
    let l = max_leaves(space, objects);
    let heavy = heavy_trees(sel, k, l);
    let mut coloring: Coloring = heavy.iter().zip(1..).map(|(&id, c)| (id, c)).collect();
    let by_id: BTreeMap<ObjectId, &SubtreeRegion> = objects.iter().map(|o| (o.id, o)).collect();
    let mut trimmed = Vec::new();
    for &id in &sel.core {
        if coloring.contains(id) {
            continue;
        }
        let t = by_id.get(&id).ok_or(Error::Invariant(format!("core object {id} missing")))?;
        trimmed.push((id, trim_tree(space, t, &sel.edges_of[&id])?.region));
    }
    let rest = rooted_nm(space, &trimmed, heavy.len() as u32 + 1, check_zones)?;
    coloring.extend_from(&rest);
    Ok(coloring)
}

/// Non-core objects: those holding an internal node, and the rest grouped
/// by the single edge containing them.
struct Leftovers {
    through_internal: Vec<ObjectId>,
    per_edge: BTreeMap<EdgeId, Vec<usize>>,
}

fn classify(space: &NetworkSpace, objects: &[SubtreeRegion], core: &BTreeSet<ObjectId>) -> Result<Leftovers> {
    let mut out = Leftovers { through_internal: Vec::new(), per_edge: BTreeMap::new() };
    for (i, o) in objects.iter().enumerate() {
        if core.contains(&o.id) {
            continue;
        }
        if o.region.nodes().iter().any(|&v| space.is_internal(v)) {
            out.through_internal.push(o.id);
            continue;
        }
        let edges: Vec<EdgeId> = o.region.touched_edges().collect();
        let e = match edges[..] {
            [e] => e,
            [] => {
                let v = *o.region.nodes().first().ok_or(Error::InvalidObject(o.id.0, "empty".into()))?;
                *space.incident(v).first().ok_or(Error::Invariant(format!("isolated node {v}")))?
            }
            _ => return Err(Error::Invariant(format!("object {} is neither through an internal node nor in one edge", o.id))),
        };
        out.per_edge.entry(e).or_default().push(i);
    }
    Ok(out)
}

fn edge_interval(space: &NetworkSpace, e: EdgeId, id: ObjectId, region: &Region) -> Result<Option<Interval>> {
    let edge = space.edge(e)?;
    let line = PathLine::from_nodes(space, &[edge.u, edge.v])?;
    let parts = line.project(region);
    Ok(parts.first().map(|&(lo, _)| Interval { id, left: lo, right: parts.last().unwrap().1 }))
}

/// Nodes reachable from `start` without passing `blocked`.
fn side_nodes(space: &NetworkSpace, start: NodeId, blocked: NodeId) -> BTreeSet<NodeId> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for (_, y) in space.neighbors(x) {
            if y != blocked && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// Extends a non-monochromatic core coloring to all objects without new
/// colors when the core uses at least two.
pub fn nm_extend(
    space: &NetworkSpace,
    objects: &[SubtreeRegion],
    sel: &CoreSelection,
    core_coloring: &Coloring,
) -> Result<Coloring> {
    for id in &sel.core {
        if !core_coloring.contains(*id) {
            return Err(Error::InconsistentColoring(format!("core object {id} has no color")));
        }
    }
    let palette: Vec<u32> = core_coloring.palette().into_iter().collect();
    if palette.len() < 2 {
        return chain_from_leaf(space, objects);
    }
    let left = classify(space, objects, &sel.core)?;
    let by_id: BTreeMap<ObjectId, &SubtreeRegion> = objects.iter().map(|o| (o.id, o)).collect();
    let mut coloring = core_coloring.clone();
    for &id in &left.through_internal {
        coloring.set(id, palette[0]);
    }
    let mut swappable: BTreeSet<ObjectId> = sel.core.clone();
    let other_than = |c: u32| *palette.iter().find(|&&x| x != c).unwrap();

    for (&e, members) in &left.per_edge {
        let edge = space.edge(e)?.clone();
        let (r, r2) = (edge.u, edge.v);
        let t_r = sel.top(e, r);
        let t_r2 = sel.top(e, r2);
        let (c_r, c_r2) = match (t_r, t_r2) {
            (Some(a), b) => {
                let ca = coloring.get(a).unwrap();
                let cb = b.and_then(|b| coloring.get(b)).filter(|&c| c != ca).unwrap_or_else(|| other_than(ca));
                (ca, cb)
            }
            (None, Some(b)) => {
                let cb = coloring.get(b).unwrap();
                (other_than(cb), cb)
            }
            (None, None) => (palette[0], palette[1]),
        };
        let full = |t: Option<ObjectId>| t.is_some_and(|t| by_id[&t].region.contains_edge(space, e));
        let ids: Vec<ObjectId> = members.iter().map(|&i| objects[i].id).collect();
        if full(t_r) {
            ids.iter().for_each(|&id| coloring.set(id, c_r2));
        } else if full(t_r2) {
            ids.iter().for_each(|&id| coloring.set(id, c_r));
        } else {
            let mut intervals = Vec::new();
            for id in ids.iter().copied().chain(t_r).chain(t_r2) {
                if let Some(iv) = edge_interval(space, e, id, &by_id[&id].region)? {
                    intervals.push(iv);
                }
            }
            let chain = nm_chain(&intervals, (c_r, c_r2));
            if let Some(t) = t_r2 {
                if chain.get(t) != coloring.get(t) {
                    let side = side_nodes(space, r2, r);
                    let flip: Vec<ObjectId> = swappable
                        .iter()
                        .copied()
                        .filter(|&id| id != t)
                        .filter(|id| {
                            let reg = &by_id[id].region;
                            !reg.contains_node(r) && reg.nodes().iter().chain(touched_nodes(space, reg).iter()).any(|v| side.contains(v))
                        })
                        .collect();
                    coloring.swap_labels(c_r, c_r2, flip);
                    coloring.set(t, chain.get(t).unwrap());
                }
            }
            for &id in &ids {
                coloring.set(id, chain.get(id).unwrap());
            }
        }
        swappable.extend(ids);
    }
    Ok(coloring)
}

/// Endpoints of the edges a region touches, minus nodes it does not hold
/// whose side is decided by the edge alone.
fn touched_nodes(space: &NetworkSpace, region: &Region) -> Vec<NodeId> {
    region
        .touched_edges()
        .filter_map(|e| space.edge(e).ok())
        .flat_map(|edge| [edge.u, edge.v])
        .collect()
}

/// Chain along every path from the smallest leaf; first assignment wins.
fn chain_from_leaf(space: &NetworkSpace, objects: &[SubtreeRegion]) -> Result<Coloring> {
    let leaves = space.leaves();
    let Some(&start) = leaves.first() else { return Ok(Coloring::new()) };
    let mut coloring = Coloring::new();
    for &end in &leaves[1..] {
        let line = PathLine::tree_path(space, start, end)?;
        let intervals: Vec<Interval> = objects
            .iter()
            .filter_map(|o| {
                let parts = line.project(&o.region);
                Some(Interval { id: o.id, left: parts.first()?.0, right: parts.last()?.1 })
            })
            .collect();
        for (id, c) in nm_chain(&intervals, (1, 2)).iter() {
            if !coloring.contains(id) {
                coloring.set(id, c);
            }
        }
    }
    Ok(coloring)
}

/// Full non-monochromatic coloring: core selection, core coloring, extension.
pub fn nm_color_trees(space: &NetworkSpace, objects: &[SubtreeRegion]) -> Result<Coloring> {
    let sel = select_core(space, objects)?;
    let core = nm_color_core(space, objects, &sel, false)?;
    nm_extend(space, objects, &sel, &core)
}

/// Conflict-free coloring of subtrees with its counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreesCf {
    pub coloring: Coloring,
    pub singletons: usize,
    pub rounds: usize,
    /// Largest palette of a round's non-monochromatic coloring.
    pub round_palette: usize,
}

/// Heavy core trees get singleton colors. The rest of the core is colored
/// in rounds: color it non-monochromatically, give the largest class a
/// fresh color and drop it. Non-core objects through an internal node get
/// one dummy color; the others are chained per edge with three more colors.
pub fn cf_color_trees(space: &NetworkSpace, objects: &[SubtreeRegion]) -> Result<TreesCf> {
    let sel = select_core(space, objects)?;
    let k = space.k();
    let l = max_leaves(space, objects);
    let heavy = heavy_trees(&sel, k, l);
    let mut coloring: Coloring = heavy.iter().zip(1..).map(|(&id, c)| (id, c)).collect();
    let by_id: BTreeMap<ObjectId, &SubtreeRegion> = objects.iter().map(|o| (o.id, o)).collect();
    let mut rest: Vec<(ObjectId, Region)> = sel
        .core
        .iter()
        .filter(|id| !coloring.contains(**id))
        .map(|id| (*id, by_id[id].region.clone()))
        .collect();
    let mut next = heavy.len() as u32 + 1;
    let mut rounds = 0;
    let mut round_palette = 0;
    while !rest.is_empty() {
        let nm = rooted_nm(space, &rest, 1, false)?;
        round_palette = round_palette.max(nm.palette_size());
        let mut classes: BTreeMap<u32, usize> = BTreeMap::new();
        for (_, c) in nm.iter() {
            *classes.entry(c).or_default() += 1;
        }
        let (&pick, _) = classes
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .ok_or(Error::Invariant("empty round".into()))?;
        rest.retain(|(id, _)| {
            if nm.get(*id) == Some(pick) {
                coloring.set(*id, next);
                false
            } else {
                true
            }
        });
        next += 1;
        rounds += 1;
    }
    let left = classify(space, objects, &sel.core)?;
    let dummy = next;
    for &id in &left.through_internal {
        coloring.set(id, dummy);
    }
    for (&e, members) in &left.per_edge {
        let mut intervals = Vec::new();
        for &i in members {
            if let Some(iv) = edge_interval(space, e, objects[i].id, &objects[i].region)? {
                intervals.push(iv);
            }
        }
        coloring.extend_from(&cf_chain(&intervals, (dummy + 1, dummy + 2, dummy + 3)));
    }
    Ok(TreesCf { coloring, singletons: heavy.len(), rounds, round_palette })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_random, gen_star_pairs, ObjectKind, RandomParams};
    use crate::object::NetObject;
    use crate::space::SpaceKind;
    use crate::validator::{check, decompose_objects, Mode};

    fn subtrees(objs: &[NetObject]) -> Vec<SubtreeRegion> {
        objs.iter()
            .filter_map(|o| match o {
                NetObject::Subtree(s) => Some(s.clone()),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn random_instances_are_valid() {
        for seed in 0..40 {
            let params = RandomParams { objects: 16, ..RandomParams::default() };
            let (space, objs) = gen_random(SpaceKind::Tree, ObjectKind::Subtrees, &params, seed).unwrap();
            let trees = subtrees(&objs);
            let decomp = decompose_objects(&space, &objs).unwrap();
            let sel = select_core(&space, &trees).unwrap();
            assert!(sel.core.len() <= 6 * space.k() - 12);
            let core = nm_color_core(&space, &trees, &sel, true).unwrap();
            let nm = nm_extend(&space, &trees, &sel, &core).unwrap();
            assert!(check(&decomp, &nm, Mode::Nm).unwrap().valid, "nm seed {seed}");
            let l = max_leaves(&space, &trees);
            assert!(nm.palette_size() <= l + 1, "seed {seed}");
            let cf = cf_color_trees(&space, &trees).unwrap();
            assert!(check(&decomp, &cf.coloring, Mode::Cf).unwrap().valid, "cf seed {seed}");
        }
    }

    #[test]
    fn star_pairs_need_distinct_colors() {
        let (space, trees) = gen_star_pairs(6, 3, 4).unwrap();
        let nm = nm_color_trees(&space, &trees).unwrap();
        assert_eq!(nm.palette_size(), 4);
    }

    #[test]
    fn heavy_tree_gets_a_singleton() {
        use crate::space::{Edge, Span};
        let k = 30u32;
        let space = NetworkSpace::from_edges(
            SpaceKind::Tree,
            (1..=k).map(|i| Edge::new(i - 1, 0, i, Rational::ONE)),
        )
        .unwrap();
        let whole = |e: u32| (EdgeId(e), Span::new(Rational::ZERO, Rational::ONE));
        let trees = vec![
            SubtreeRegion::new(&space, 0, (0..k).map(whole), [NodeId(0)]).unwrap(),
            SubtreeRegion::new(&space, 1, (0..3).map(whole), [NodeId(0)]).unwrap(),
            SubtreeRegion::new(&space, 2, [(EdgeId(5), Span::new(Rational::ZERO, Rational::ONE))], [NodeId(0)]).unwrap(),
        ];
        assert!(heavy_regime(space.k(), max_leaves(&space, &trees)));
        let cf = cf_color_trees(&space, &trees).unwrap();
        assert_eq!(cf.singletons, 2);
        assert_eq!(cf.coloring.get(ObjectId(0)), Some(1));
        let objs: Vec<NetObject> = trees.iter().cloned().map(NetObject::Subtree).collect();
        let decomp = decompose_objects(&space, &objs).unwrap();
        assert!(check(&decomp, &cf.coloring, Mode::Cf).unwrap().valid);
        assert!(check(&decomp, &nm_color_trees(&space, &trees).unwrap(), Mode::Nm).unwrap().valid);
    }

    #[test]
    fn trimming_everything_is_identity() {
        let (space, objs) = gen_random(SpaceKind::Tree, ObjectKind::Subtrees, &RandomParams::default(), 3).unwrap();
        for t in subtrees(&objs) {
            let all: BTreeSet<EdgeId> = t.region.touched_edges().collect();
            if all.is_empty() {
                continue;
            }
            assert_eq!(trim_tree(&space, &t, &all).unwrap().region, t.region);
        }
    }
}
