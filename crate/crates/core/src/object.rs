//! Colorable objects and colorings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{Ball, BallField, EdgeId, NetworkSpace, NodeId, Region, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub u32);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A closed interval of the real line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub id: ObjectId,
    pub left: Rational,
    pub right: Rational,
}

impl Interval {
    pub fn new(id: u32, left: Rational, right: Rational) -> Self {
        Interval { id: ObjectId(id), left, right }
    }

    pub fn len(&self) -> Rational {
        self.right - self.left
    }

    pub fn contains(&self, x: Rational) -> bool {
        self.left <= x && x <= self.right
    }
}

/// A connected closed subset given by edge fragments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreeRegion {
    pub id: ObjectId,
    pub region: Region,
}

impl SubtreeRegion {
    /// Builds and checks connectivity. Extra `nodes` allow single-node objects.
    pub fn new(
        space: &NetworkSpace,
        id: u32,
        fragments: impl IntoIterator<Item = (EdgeId, Span)>,
        nodes: impl IntoIterator<Item = NodeId>,
    ) -> Result<Self> {
        let fragments: Vec<(EdgeId, Span)> = fragments.into_iter().collect();
        for (e, s) in &fragments {
            let edge = space.edge(*e)?;
            if s.lo.is_negative() || s.hi > edge.len || s.lo > s.hi {
                return Err(Error::InvalidObject(id, format!("fragment out of range on {e}")));
            }
        }
        let nodes: Vec<NodeId> = nodes.into_iter().collect();
        if let Some(v) = nodes.iter().find(|v| !space.has_node(**v)) {
            return Err(Error::UnknownNode(*v));
        }
        let region = Region::build(space, nodes, fragments);
        if !region.is_connected(space) {
            return Err(Error::InvalidObject(id, "region is empty or disconnected".into()));
        }
        Ok(SubtreeRegion { id: ObjectId(id), region })
    }

    pub fn leaf_count(&self, space: &NetworkSpace) -> usize {
        self.region.leaf_count(space)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetObject {
    Ball(Ball),
    Subtree(SubtreeRegion),
}

impl NetObject {
    pub fn id(&self) -> ObjectId {
        match self {
            NetObject::Ball(b) => b.id,
            NetObject::Subtree(t) => t.id,
        }
    }

    pub fn extent(&self, space: &NetworkSpace) -> Result<Region> {
        match self {
            NetObject::Ball(b) => Ok(BallField::new(space, b)?.extent(space)),
            NetObject::Subtree(t) => Ok(t.region.clone()),
        }
    }

    pub fn as_subtree(&self) -> Option<&SubtreeRegion> {
        match self {
            NetObject::Subtree(t) => Some(t),
            NetObject::Ball(_) => None,
        }
    }

    pub fn as_ball(&self) -> Option<&Ball> {
        match self {
            NetObject::Ball(b) => Some(b),
            NetObject::Subtree(_) => None,
        }
    }
}

/// Rejects duplicate ids.
pub fn check_distinct_ids(ids: impl IntoIterator<Item = ObjectId>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::DuplicateObject(id.0));
        }
    }
    Ok(())
}

/// A map from object ids to positive colors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    colors: BTreeMap<ObjectId, u32>,
}

impl Coloring {
    pub fn new() -> Self {
        Coloring::default()
    }

    pub fn get(&self, id: ObjectId) -> Option<u32> {
        self.colors.get(&id).copied()
    }

    pub fn set(&mut self, id: ObjectId, color: u32) {
        self.colors.insert(id, color);
    }

    pub fn remove(&mut self, id: ObjectId) -> Option<u32> {
        self.colors.remove(&id)
    }

    pub fn contains(&self, id: ObjectId) -> bool {
        self.colors.contains_key(&id)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ObjectId, u32)> + '_ {
        self.colors.iter().map(|(&id, &c)| (id, c))
    }

    /// Distinct colors in use.
    pub fn palette(&self) -> BTreeSet<u32> {
        self.colors.values().copied().collect()
    }

    pub fn palette_size(&self) -> usize {
        self.palette().len()
    }

    /// Exchanges two color labels among the given objects.
    pub fn swap_labels(&mut self, a: u32, b: u32, among: impl IntoIterator<Item = ObjectId>) {
        for id in among {
            if let Some(c) = self.colors.get_mut(&id) {
                if *c == a {
                    *c = b;
                } else if *c == b {
                    *c = a;
                }
            }
        }
    }

    /// Overwrites with every assignment of `other`.
    pub fn extend_from(&mut self, other: &Coloring) {
        for (id, c) in other.iter() {
            self.set(id, c);
        }
    }

    pub fn restricted_to(&self, ids: &BTreeSet<ObjectId>) -> Coloring {
        Coloring {
            colors: self.colors.iter().filter(|(id, _)| ids.contains(id)).map(|(&a, &b)| (a, b)).collect(),
        }
    }
}

impl FromIterator<(ObjectId, u32)> for Coloring {
    fn from_iter<I: IntoIterator<Item = (ObjectId, u32)>>(iter: I) -> Self {
        Coloring { colors: iter.into_iter().collect() }
    }
}
