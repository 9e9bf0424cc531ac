//! Exact verification of colorings via region decomposition, plus
//! exhaustive minimum-palette search for small instances.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::object::{Coloring, Interval, NetObject, ObjectId};
use crate::rational::Rational;
use crate::space::{NetworkSpace, PointOnSpace, Region};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Nm,
    Cf,
    Unimin,
    Unimax,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nm" => Ok(Mode::Nm),
            "cf" => Ok(Mode::Cf),
            "unimin" => Ok(Mode::Unimin),
            "unimax" => Ok(Mode::Unimax),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Nm => "nm",
            Mode::Cf => "cf",
            Mode::Unimin => "unimin",
            Mode::Unimax => "unimax",
        })
    }
}

/// A sample location: a point of a network space, or a coordinate on the
/// real line for interval instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Point(PointOnSpace),
    Line(Rational),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Point(PointOnSpace::Node(v)) => write!(f, "node {}", v.0),
            Witness::Point(PointOnSpace::OnEdge { edge, offset }) => {
                write!(f, "edge {} at offset {}", edge.0, offset)
            }
            Witness::Line(x) => write!(f, "x = {x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionClass {
    pub witness: Witness,
    pub members: BTreeSet<ObjectId>,
}

/// Every distinct containing set, each with one representative point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegionDecomposition {
    pub classes: Vec<RegionClass>,
}

impl RegionDecomposition {
    fn push(&mut self, seen: &mut BTreeSet<BTreeSet<ObjectId>>, witness: Witness, members: BTreeSet<ObjectId>) {
        if seen.insert(members.clone()) {
            self.classes.push(RegionClass { witness, members });
        }
    }

    /// Distinct member sets of size at least `min`.
    pub fn sets(&self, min: usize) -> impl Iterator<Item = &BTreeSet<ObjectId>> + '_ {
        self.classes.iter().map(|c| &c.members).filter(move |m| m.len() >= min)
    }
}

/// Samples every node, every span endpoint strictly inside an edge, and the
/// midpoint between consecutive event offsets on every edge.
pub fn decompose(space: &NetworkSpace, objects: &[(ObjectId, Region)]) -> RegionDecomposition {
    let mut out = RegionDecomposition::default();
    let mut seen = BTreeSet::new();
    for v in space.node_ids() {
        let members = objects.iter().filter(|(_, r)| r.contains_node(v)).map(|(id, _)| *id).collect();
        out.push(&mut seen, Witness::Point(PointOnSpace::Node(v)), members);
    }
    for e in space.edges() {
        let here: Vec<&(ObjectId, Region)> =
            objects.iter().filter(|(_, r)| !r.spans_on(e.id).is_empty()).collect();
        let mut events: BTreeSet<Rational> = BTreeSet::from([Rational::ZERO, e.len]);
        for (_, r) in &here {
            for s in r.spans_on(e.id) {
                events.insert(s.lo);
                events.insert(s.hi);
            }
        }
        let events: Vec<Rational> = events.into_iter().collect();
        let mut samples: Vec<Rational> = events[1..events.len() - 1].to_vec();
        samples.extend(events.windows(2).map(|w| w[0].midpoint(w[1])));
        samples.sort();
        for s in samples {
            let p = PointOnSpace::OnEdge { edge: e.id, offset: s };
            let members = here.iter().filter(|(_, r)| r.contains(&p)).map(|(id, _)| *id).collect();
            out.push(&mut seen, Witness::Point(p), members);
        }
    }
    out
}

pub fn decompose_objects(space: &NetworkSpace, objects: &[NetObject]) -> Result<RegionDecomposition> {
    let regions = objects
        .iter()
        .map(|o| Ok((o.id(), o.extent(space)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(decompose(space, &regions))
}

/// The same decomposition for intervals on the real line.
pub fn decompose_intervals(intervals: &[Interval]) -> RegionDecomposition {
    let mut out = RegionDecomposition::default();
    let mut seen = BTreeSet::new();
    let events: BTreeSet<Rational> = intervals.iter().flat_map(|i| [i.left, i.right]).collect();
    let events: Vec<Rational> = events.into_iter().collect();
    let mut samples = events.clone();
    samples.extend(events.windows(2).map(|w| w[0].midpoint(w[1])));
    if let (Some(first), Some(last)) = (events.first(), events.last()) {
        samples.push(*first - Rational::ONE);
        samples.push(*last + Rational::ONE);
    }
    samples.sort();
    if samples.is_empty() {
        samples.push(Rational::ZERO);
    }
    for x in samples {
        let members = intervals.iter().filter(|i| i.contains(x)).map(|i| i.id).collect();
        out.push(&mut seen, Witness::Line(x), members);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub witness: Option<Witness>,
    pub members: Vec<ObjectId>,
}

fn set_ok(mode: Mode, colors: &[u32]) -> bool {
    if colors.is_empty() {
        return true;
    }
    let mut count: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in colors {
        *count.entry(c).or_default() += 1;
    }
    match mode {
        Mode::Nm => colors.len() < 2 || count.len() >= 2,
        Mode::Cf => count.values().any(|&n| n == 1),
        Mode::Unimin => count.values().next() == Some(&1),
        Mode::Unimax => count.values().next_back() == Some(&1),
    }
}

/// Checks `coloring` on every class of `decomp`.
pub fn check(decomp: &RegionDecomposition, coloring: &Coloring, mode: Mode) -> Result<Verdict> {
    for class in &decomp.classes {
        let colors = class
            .members
            .iter()
            .map(|id| {
                coloring
                    .get(*id)
                    .ok_or_else(|| Error::InconsistentColoring(format!("object {id} has no color")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if !set_ok(mode, &colors) {
            return Ok(Verdict {
                valid: false,
                witness: Some(class.witness),
                members: class.members.iter().copied().collect(),
            });
        }
    }
    Ok(Verdict { valid: true, witness: None, members: Vec::new() })
}

pub fn check_nm(decomp: &RegionDecomposition, coloring: &Coloring) -> Result<Verdict> {
    check(decomp, coloring, Mode::Nm)
}

pub fn check_cf(decomp: &RegionDecomposition, coloring: &Coloring) -> Result<Verdict> {
    check(decomp, coloring, Mode::Cf)
}

/// `max == false` checks the unique-minimum property.
pub fn check_unique_extremum(decomp: &RegionDecomposition, coloring: &Coloring, max: bool) -> Result<Verdict> {
    check(decomp, coloring, if max { Mode::Unimax } else { Mode::Unimin })
}

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 12;

/// Smallest palette admitting a coloring valid for `mode`. Objects are taken
/// in ascending id order; the first gets color 1 and new colors are
/// introduced in order.
pub fn min_colors_bruteforce(
    decomp: &RegionDecomposition,
    ids: &[ObjectId],
    mode: Mode,
    limit: usize,
) -> Result<usize> {
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();
    if ids.len() > limit {
        return Err(Error::TooLarge(ids.len(), limit));
    }
    if ids.is_empty() {
        return Ok(0);
    }
    let index: BTreeMap<ObjectId, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let min = if mode == Mode::Nm { 2 } else { 1 };
    // Constraints grouped by the index of their last member.
    let mut due: Vec<Vec<Vec<usize>>> = vec![Vec::new(); ids.len()];
    for set in decomp.sets(min) {
        let members: Vec<usize> = set.iter().filter_map(|id| index.get(id).copied()).collect();
        if members.len() >= min {
            let last = *members.iter().max().expect("non-empty");
            due[last].push(members);
        }
    }
    for palette in 1..=ids.len() {
        let mut colors = vec![0u32; ids.len()];
        if search(0, 0, palette as u32, &mut colors, &due, mode) {
            return Ok(palette);
        }
    }
    Ok(ids.len())
}

fn search(i: usize, used: u32, palette: u32, colors: &mut [u32], due: &[Vec<Vec<usize>>], mode: Mode) -> bool {
    if i == colors.len() {
        return true;
    }
    for c in 1..=(used + 1).min(palette) {
        colors[i] = c;
        let ok = due[i].iter().all(|set| {
            let cs: Vec<u32> = set.iter().map(|&j| colors[j]).collect();
            set_ok(mode, &cs)
        });
        if ok && search(i + 1, used.max(c), palette, colors, due, mode) {
            return true;
        }
    }
    false
}
