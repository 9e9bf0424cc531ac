#![allow(dead_code)]

use netcolor::generators::{gen_random, gen_random_intervals, ObjectKind, RandomParams};
use netcolor::{Ball, Interval, NetObject, NetworkSpace, SpaceKind, SubtreeRegion};

/// Seeded interval sets with 1 to 64 members.
pub fn interval_set(seed: u64) -> Vec<Interval> {
    gen_random_intervals(1 + (seed % 64) as usize, seed)
}

/// Trees on trees with k ≤ 32, ℓ ≤ 6, n ≤ 64. Spaces with too many leaves
/// are redrawn from a derived seed.
pub fn subtree_instance(seed: u64) -> (NetworkSpace, Vec<SubtreeRegion>) {
    let p = RandomParams {
        internal: 1 + (seed % 18) as usize,
        extra_leaves: (seed / 18 % 13) as usize,
        objects: 1 + (seed * 7 % 64) as usize,
        max_leaves: 1 + (seed % 6) as usize,
        radius_quarters: 0,
    };
    let mut draw = seed;
    loop {
        let (space, objs) = gen_random(SpaceKind::Tree, ObjectKind::Subtrees, &p, draw).unwrap();
        if space.k() <= 32 {
            return (space, objs.into_iter().filter_map(|o| o.as_subtree().cloned()).collect());
        }
        draw += 1 << 32;
    }
}

/// Balls on trees with t ≤ 64, n ≤ 64.
pub fn tree_ball_instance(seed: u64) -> (NetworkSpace, Vec<Ball>) {
    let p = RandomParams {
        internal: 1 + (seed % 64) as usize,
        extra_leaves: (seed % 5) as usize,
        objects: 1 + (seed * 11 % 64) as usize,
        max_leaves: 0,
        radius_quarters: 1 + (seed % 12) as u32,
    };
    let (space, objs) = gen_random(SpaceKind::Tree, ObjectKind::Balls, &p, seed).unwrap();
    (space, balls_of(&objs))
}

/// Balls on planar spaces with t ≤ 32, n ≤ 48.
pub fn planar_instance(seed: u64) -> (NetworkSpace, Vec<Ball>) {
    let p = RandomParams {
        internal: 1 + (seed % 32) as usize,
        extra_leaves: (seed % 4) as usize,
        objects: 1 + (seed * 13 % 48) as usize,
        max_leaves: 0,
        radius_quarters: 2 + (seed % 10) as u32,
    };
    let (space, objs) = gen_random(SpaceKind::Planar, ObjectKind::Balls, &p, seed).unwrap();
    (space, balls_of(&objs))
}

pub fn balls_of(objs: &[NetObject]) -> Vec<Ball> {
    objs.iter().filter_map(|o| o.as_ball().copied()).collect()
}

pub fn ball_objects(balls: &[Ball]) -> Vec<NetObject> {
    balls.iter().copied().map(NetObject::Ball).collect()
}

pub fn tree_objects(trees: &[SubtreeRegion]) -> Vec<NetObject> {
    trees.iter().cloned().map(NetObject::Subtree).collect()
}
