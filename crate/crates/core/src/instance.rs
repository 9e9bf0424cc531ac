//! JSON instance and coloring documents. Rationals are written as "p/q".

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::object::{check_distinct_ids, Coloring, Interval, NetObject, ObjectId, SubtreeRegion};
use crate::rational::Rational;
use crate::space::{Ball, Edge, EdgeId, NetworkSpace, NodeId, PointOnSpace, SpaceKind, Span};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: u32,
    pub u: u32,
    pub v: u32,
    pub len: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub kind: SpaceKind,
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentDoc {
    pub edge: u32,
    pub lo: Rational,
    pub hi: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectDoc {
    Ball {
        id: u32,
        center: PointOnSpace,
        radius: Rational,
    },
    Subtree {
        id: u32,
        #[serde(default)]
        nodes: Vec<u32>,
        #[serde(default)]
        fragments: Vec<FragmentDoc>,
    },
    Interval {
        id: u32,
        left: Rational,
        right: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceDoc>,
    pub objects: Vec<ObjectDoc>,
}

/// A parsed instance: objects on a network space, or intervals on a line.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Network { space: NetworkSpace, objects: Vec<NetObject> },
    Intervals(Vec<Interval>),
}

impl Instance {
    pub fn ids(&self) -> Vec<ObjectId> {
        match self {
            Instance::Network { objects, .. } => objects.iter().map(|o| o.id()).collect(),
            Instance::Intervals(ivs) => ivs.iter().map(|iv| iv.id).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Instance::Network { objects, .. } => objects.len(),
            Instance::Intervals(ivs) => ivs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_doc(&self) -> InstanceDoc {
        match self {
            Instance::Network { space, objects } => InstanceDoc {
                space: Some(space_doc(space)),
                objects: objects.iter().map(object_doc).collect(),
            },
            Instance::Intervals(ivs) => InstanceDoc {
                space: None,
                objects: ivs
                    .iter()
                    .map(|iv| ObjectDoc::Interval { id: iv.id.0, left: iv.left, right: iv.right })
                    .collect(),
            },
        }
    }

    pub fn from_doc(doc: &InstanceDoc) -> Result<Self> {
        let Some(sd) = &doc.space else {
            let ivs = doc
                .objects
                .iter()
                .map(|o| match *o {
                    ObjectDoc::Interval { id, left, right } if left <= right => Ok(Interval::new(id, left, right)),
                    ObjectDoc::Interval { id, .. } => Err(Error::InvalidObject(id, "left end exceeds right end".into())),
                    _ => Err(Error::Parse("objects other than intervals need a space".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            check_distinct_ids(ivs.iter().map(|iv| iv.id))?;
            return Ok(Instance::Intervals(ivs));
        };
        let space = NetworkSpace::new(
            sd.kind,
            sd.nodes.iter().map(|n| (NodeId(n.id), n.x.zip(n.y))),
            sd.edges.iter().map(|e| Edge::new(e.id, e.u, e.v, e.len)),
        )?;
        let objects = doc
            .objects
            .iter()
            .map(|o| match o {
                ObjectDoc::Ball { id, center, radius } => {
                    let center = space.check_point(center)?;
                    if radius.is_negative() {
                        return Err(Error::InvalidObject(*id, "negative radius".into()));
                    }
                    Ok(NetObject::Ball(Ball::new(*id, center, *radius)))
                }
                ObjectDoc::Subtree { id, nodes, fragments } => Ok(NetObject::Subtree(SubtreeRegion::new(
                    &space,
                    *id,
                    fragments.iter().map(|f| (EdgeId(f.edge), Span::new(f.lo, f.hi))),
                    nodes.iter().map(|&v| NodeId(v)),
                )?)),
                ObjectDoc::Interval { .. } => Err(Error::Parse("intervals cannot live on a network space".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        check_distinct_ids(objects.iter().map(|o| o.id()))?;
        Ok(Instance::Network { space, objects })
    }

    pub fn to_json(&self) -> String {
        to_pretty(&self.to_doc())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

pub fn space_doc(space: &NetworkSpace) -> SpaceDoc {
    SpaceDoc {
        kind: space.kind(),
        nodes: space
            .node_ids()
            .map(|v| {
                let c = space.coord(v);
                NodeDoc { id: v.0, x: c.map(|c| c.0), y: c.map(|c| c.1) }
            })
            .collect(),
        edges: space.edges().map(|e| EdgeDoc { id: e.id.0, u: e.u.0, v: e.v.0, len: e.len }).collect(),
    }
}

pub fn object_doc(o: &NetObject) -> ObjectDoc {
    match o {
        NetObject::Ball(b) => ObjectDoc::Ball { id: b.id.0, center: b.center, radius: b.radius },
        NetObject::Subtree(t) => ObjectDoc::Subtree {
            id: t.id.0,
            nodes: t.region.nodes().iter().map(|v| v.0).collect(),
            fragments: t.region.spans().map(|(e, s)| FragmentDoc { edge: e.0, lo: s.lo, hi: s.hi }).collect(),
        },
    }
}

/// A palette bound evaluated on the instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDoc {
    pub formula: String,
    pub value: usize,
    pub respected: bool,
}

/// Output of a coloring run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDoc {
    pub algorithm: String,
    pub palette_size: usize,
    pub colors: BTreeMap<u32, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundDoc>,
    /// Run details such as round counts or whether exact searches ran.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, String>,
}

impl ColoringDoc {
    pub fn coloring(&self) -> Coloring {
        self.colors.iter().map(|(&id, &c)| (ObjectId(id), c)).collect()
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}
