//! Runs a named colorer on an instance and evaluates its palette bound.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::bounds;
use crate::chain::{cf_chain, nm_chain};
use crate::error::{Error, Result};
use crate::instance::{BoundDoc, ColoringDoc, Instance};
use crate::object::{Coloring, NetObject, SubtreeRegion};
use crate::planar_balls::{cf_color_balls_planar_with, nm_color_balls_planar_with, EXACT_COLOR_LIMIT, EXACT_MIS_LIMIT};
use crate::space::{Ball, NetworkSpace};
use crate::tree_balls::{cf_color_balls_tree, nm_color_balls_tree};
use crate::tree_trees::{cf_color_trees, max_leaves, nm_color_trees};
use crate::validator::{self, Mode, RegionDecomposition, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    NmTrees,
    CfTrees,
    NmBallsTree,
    CfBallsTree,
    NmBallsPlanar,
    CfBallsPlanar,
    NmChain,
    CfChain,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::NmTrees,
        Algorithm::CfTrees,
        Algorithm::NmBallsTree,
        Algorithm::CfBallsTree,
        Algorithm::NmBallsPlanar,
        Algorithm::CfBallsPlanar,
        Algorithm::NmChain,
        Algorithm::CfChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::NmTrees => "nm-trees",
            Algorithm::CfTrees => "cf-trees",
            Algorithm::NmBallsTree => "nm-balls-tree",
            Algorithm::CfBallsTree => "cf-balls-tree",
            Algorithm::NmBallsPlanar => "nm-balls-planar",
            Algorithm::CfBallsPlanar => "cf-balls-planar",
            Algorithm::NmChain => "nm-chain",
            Algorithm::CfChain => "cf-chain",
        }
    }

    /// The property the output is guaranteed to have.
    pub fn mode(self) -> Mode {
        match self {
            Algorithm::NmTrees | Algorithm::NmBallsTree | Algorithm::NmBallsPlanar | Algorithm::NmChain => Mode::Nm,
            _ => Mode::Cf,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown algorithm `{s}`")))
    }
}

/// Size thresholds for the exact searches of the planar colorers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub exact_mis: usize,
    pub exact_4color: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { exact_mis: EXACT_MIS_LIMIT, exact_4color: EXACT_COLOR_LIMIT }
    }
}

/// Instance parameters: leaves `k`, largest object leaf count `ℓ`,
/// internal nodes `t` and object count `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub k: usize,
    pub l: usize,
    pub t: usize,
    pub n: usize,
}

pub fn params(instance: &Instance) -> Params {
    match instance {
        Instance::Network { space, objects } => {
            let trees: Vec<SubtreeRegion> = objects.iter().filter_map(|o| o.as_subtree().cloned()).collect();
            Params { k: space.k(), l: max_leaves(space, &trees), t: space.t(), n: objects.len() }
        }
        Instance::Intervals(ivs) => Params { n: ivs.len(), ..Params::default() },
    }
}

fn network(instance: &Instance, alg: Algorithm) -> Result<(&NetworkSpace, &[NetObject])> {
    match instance {
        Instance::Network { space, objects } => Ok((space, objects)),
        Instance::Intervals(_) => Err(Error::Parse(format!("{alg} needs a network space"))),
    }
}

fn subtrees(instance: &Instance, alg: Algorithm) -> Result<(&NetworkSpace, Vec<SubtreeRegion>)> {
    let (space, objects) = network(instance, alg)?;
    let trees = objects
        .iter()
        .map(|o| o.as_subtree().cloned().ok_or_else(|| Error::InvalidObject(o.id().0, format!("{alg} takes subtrees only"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((space, trees))
}

fn balls(instance: &Instance, alg: Algorithm) -> Result<(&NetworkSpace, Vec<Ball>)> {
    let (space, objects) = network(instance, alg)?;
    let balls = objects
        .iter()
        .map(|o| o.as_ball().cloned().ok_or_else(|| Error::InvalidObject(o.id().0, format!("{alg} takes balls only"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((space, balls))
}

/// Colors `instance` with `alg` and reports the palette against its bound.
pub fn color(instance: &Instance, alg: Algorithm, limits: Limits) -> Result<ColoringDoc> {
    let p = params(instance);
    let mut stats = BTreeMap::new();
    let (coloring, formula, value): (Coloring, String, usize) = match alg {
        Algorithm::NmTrees => {
            let (space, trees) = subtrees(instance, alg)?;
            let c = nm_color_trees(space, &trees)?;
            (c, "min(l+1, ceil(2*sqrt(6k)), n)".into(), bounds::nm_trees_bound(p.k, p.l, p.n))
        }
        Algorithm::CfTrees => {
            let (space, trees) = subtrees(instance, alg)?;
            let r = cf_color_trees(space, &trees)?;
            let round_bound = bounds::cf_trees_round_bound(p.k, p.l) as usize;
            stats.insert("singletons".into(), r.singletons.to_string());
            stats.insert("rounds".into(), r.rounds.to_string());
            stats.insert("round_bound".into(), round_bound.to_string());
            stats.insert("rounds_respected".into(), (r.rounds <= round_bound).to_string());
            let value = bounds::cf_trees_palette_bound(p.k, p.l, r.singletons, r.rounds);
            (r.coloring, "singletons + (min(l, floor(sqrt(6k)))+1)*rounds + 4".into(), value)
        }
        Algorithm::NmBallsTree => {
            let (space, balls) = balls(instance, alg)?;
            (nm_color_balls_tree(space, &balls)?, "2".into(), 2)
        }
        Algorithm::CfBallsTree => {
            let (space, balls) = balls(instance, alg)?;
            let r = cf_color_balls_tree(space, &balls)?;
            stats.insert("levels".into(), r.levels.to_string());
            stats.insert("core".into(), r.core.len().to_string());
            (r.coloring, "ceil(log2 t) + 3".into(), bounds::cf_balls_tree_bound(p.t))
        }
        Algorithm::NmBallsPlanar => {
            let (space, balls) = balls(instance, alg)?;
            let r = nm_color_balls_planar_with(space, &balls, limits.exact_4color)?;
            stats.insert("exact_4color".into(), r.exact.to_string());
            stats.insert("core".into(), r.core.len().to_string());
            let value = if r.exact { 4 } else { 5 };
            (r.coloring, if r.exact { "4" } else { "5 (exact 4-coloring skipped)" }.into(), value)
        }
        Algorithm::CfBallsPlanar => {
            let (space, balls) = balls(instance, alg)?;
            let r = cf_color_balls_planar_with(space, &balls, limits.exact_mis)?;
            let round_bound = bounds::planar_round_bound(p.t) as usize;
            stats.insert("exact_mis".into(), r.exact_mis.to_string());
            stats.insert("core".into(), r.core.len().to_string());
            stats.insert("rounds".into(), r.rounds.to_string());
            stats.insert("round_bound".into(), round_bound.to_string());
            stats.insert("rounds_respected".into(), (r.rounds <= round_bound).to_string());
            stats.insert("unpinned".into(), r.unpinned.to_string());
            (r.coloring, "ceil(log_{4/3} t) + 3".into(), bounds::cf_balls_planar_bound(p.t))
        }
        Algorithm::NmChain | Algorithm::CfChain => {
            let Instance::Intervals(ivs) = instance else {
                return Err(Error::Parse(format!("{alg} needs an interval instance")));
            };
            if alg == Algorithm::NmChain {
                (nm_chain(ivs, (1, 2)), "2".into(), 2)
            } else {
                (cf_chain(ivs, (1, 2, 3)), "3".into(), 3)
            }
        }
    };
    let palette_size = coloring.palette_size();
    Ok(ColoringDoc {
        algorithm: alg.name().into(),
        palette_size,
        colors: coloring.iter().map(|(id, c)| (id.0, c)).collect(),
        bound: Some(BoundDoc { formula, value, respected: palette_size <= value }),
        stats,
    })
}

pub fn decomposition(instance: &Instance) -> Result<RegionDecomposition> {
    match instance {
        Instance::Network { space, objects } => validator::decompose_objects(space, objects),
        Instance::Intervals(ivs) => Ok(validator::decompose_intervals(ivs)),
    }
}

/// Checks `coloring` on `instance`. Every object must be colored.
pub fn validate(instance: &Instance, coloring: &Coloring, mode: Mode) -> Result<Verdict> {
    for id in instance.ids() {
        if !coloring.contains(id) {
            return Err(Error::Parse(format!("object {id} has no color")));
        }
    }
    validator::check(&decomposition(instance)?, coloring, mode)
}

/// Exact minimum palette for `mode`.
pub fn oracle(instance: &Instance, mode: Mode, limit: usize) -> Result<usize> {
    validator::min_colors_bruteforce(&decomposition(instance)?, &instance.ids(), mode, limit)
}
