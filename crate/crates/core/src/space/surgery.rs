use std::collections::{BTreeSet, VecDeque};

use super::{EdgeId, NetworkSpace, NodeId};
use crate::error::{Error, Result};

impl NetworkSpace {
    /// Subspace spanned by `edges`; node ids, edge ids and coordinates are kept.
    pub fn subspace(&self, edges: &BTreeSet<EdgeId>) -> Result<NetworkSpace> {
        let mut nodes = BTreeSet::new();
        for e in edges {
            let edge = self.edge(*e)?;
            nodes.insert(edge.u);
            nodes.insert(edge.v);
        }
        self.subspace_with_nodes(&nodes, edges)
    }

    pub(crate) fn subspace_with_nodes(
        &self,
        nodes: &BTreeSet<NodeId>,
        edges: &BTreeSet<EdgeId>,
    ) -> Result<NetworkSpace> {
        NetworkSpace::assemble(
            self.kind,
            nodes.iter().map(|&v| (v, self.coord(v))),
            edges.iter().map(|e| self.edges[e].clone()),
            true,
        )
    }

    /// Edges reachable from `start` without passing through `blocked`.
    fn reach(&self, start: NodeId, blocked: Option<NodeId>, skip: Option<EdgeId>) -> BTreeSet<EdgeId> {
        let mut seen_nodes = BTreeSet::from([start]);
        let mut edges = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            if Some(x) == blocked {
                continue;
            }
            for (e, y) in self.neighbors(x) {
                if Some(e) == skip {
                    continue;
                }
                edges.insert(e);
                if seen_nodes.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        edges
    }

    /// Closures of the connected components of the space minus `r`.
    pub fn split_at_node(&self, r: NodeId) -> Result<Vec<NetworkSpace>> {
        if !self.has_node(r) {
            return Err(Error::UnknownNode(r));
        }
        if self.degree(r) < 2 {
            return Err(Error::NotSplittable(r));
        }
        let mut done: BTreeSet<EdgeId> = BTreeSet::new();
        let mut parts = Vec::new();
        for &e in self.incident(r) {
            if done.contains(&e) {
                continue;
            }
            let y = self.edges[&e].other(r);
            let mut comp = self.reach(y, Some(r), None);
            comp.insert(e);
            done.extend(comp.iter().copied());
            parts.push(self.subspace(&comp)?);
        }
        Ok(parts)
    }

    /// For a tree, the two closed sides of `e = uv` with `e` removed:
    /// the side containing `u` and the side containing `v`. A side may be a
    /// single node.
    pub fn components_without_edge(&self, e: EdgeId) -> Result<(NetworkSpace, NetworkSpace)> {
        if !self.is_tree() {
            return Err(Error::RequiresTree);
        }
        let edge = self.edge(e)?.clone();
        let side = |x: NodeId| -> Result<NetworkSpace> {
            let edges = self.reach(x, None, Some(e));
            let mut nodes: BTreeSet<NodeId> =
                edges.iter().flat_map(|f| [self.edges[f].u, self.edges[f].v]).collect();
            nodes.insert(x);
            self.subspace_with_nodes(&nodes, &edges)
        };
        Ok((side(edge.u)?, side(edge.v)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::space::{Edge, SpaceKind};

    fn double_star() -> NetworkSpace {
        NetworkSpace::from_edges(
            SpaceKind::Tree,
            [
                Edge::new(0, 0, 1, q(1, 1)),
                Edge::new(1, 0, 2, q(1, 1)),
                Edge::new(2, 0, 3, q(1, 1)),
                Edge::new(3, 3, 4, q(1, 1)),
                Edge::new(4, 3, 5, q(1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn star_split() {
        let s = double_star();
        let parts = s.split_at_node(NodeId(0)).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts.iter().map(|p| p.edge_count()).sum::<usize>(), 5);
        assert!(parts.iter().all(|p| p.has_node(NodeId(0)) && p.from_surgery()));
        assert!(matches!(s.split_at_node(NodeId(1)), Err(Error::NotSplittable(_))));
    }

    #[test]
    fn detach_child() {
        let s = double_star();
        let parts = s.split_at_node(NodeId(0)).unwrap();
        let child = parts.iter().find(|p| p.has_node(NodeId(4))).unwrap();
        assert_eq!(child.edge_count(), 3);
        assert_eq!(child.degree(NodeId(0)), 1);
        let (a, b) = s.components_without_edge(EdgeId(2)).unwrap();
        assert_eq!((a.edge_count(), b.edge_count()), (2, 2));
        let (leaf, rest) = s.components_without_edge(EdgeId(0)).unwrap();
        assert_eq!(leaf.edge_count(), 4);
        assert_eq!(rest.node_count(), 1);
    }
}
