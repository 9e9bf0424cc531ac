mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use netcolor::bounds;
use netcolor::chain::{cf_chain, nm_chain};
use netcolor::generators::{gen_random, random_point, ObjectKind, RandomParams};
use netcolor::instance::Instance;
use netcolor::planar_balls::{build_assignment_graph, cf_color_balls_planar, cover_witness, nm_color_balls_planar};
use netcolor::tree_balls::{cf_color_balls_tree, nm_color_balls_tree};
use netcolor::tree_trees::{cf_color_trees, max_leaves, nm_color_trees, select_core};
use netcolor::validator::{check, decompose_intervals, decompose_objects, min_colors_bruteforce, Mode};
use netcolor::{assign_balls, ball_extent, Coloring, NetObject, ObjectId, PointOnSpace, Region, SpaceKind};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn valid(space: &netcolor::NetworkSpace, objs: &[NetObject], c: &Coloring, mode: Mode) -> bool {
    check(&decompose_objects(space, objs).unwrap(), c, mode).unwrap().valid
}

fn random_coloring(ids: impl IntoIterator<Item = ObjectId>, colors: u32, rng: &mut ChaCha8Rng) -> Coloring {
    use rand::Rng;
    let mut c = Coloring::new();
    for id in ids {
        c.set(id, rng.random_range(1..=colors));
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn geodesic_distance_is_a_metric(seed in any::<u64>(), planar in any::<bool>()) {
        let kind = if planar { SpaceKind::Planar } else { SpaceKind::Tree };
        let (space, _) = gen_random(kind, ObjectKind::Balls, &RandomParams { objects: 0, ..Default::default() }, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let (p, q, r) = (random_point(&space, &mut rng), random_point(&space, &mut rng), random_point(&space, &mut rng));
            let d = |a: &PointOnSpace, b: &PointOnSpace| space.geodesic_distance(a, b).unwrap();
            prop_assert!(d(&p, &p).is_zero());
            prop_assert_eq!(d(&p, &q).is_zero(), p == q);
            prop_assert_eq!(d(&p, &q), d(&q, &p));
            prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r));
        }
    }

    #[test]
    fn assigned_ball_holds_along_shortest_paths(seed in any::<u64>(), planar in any::<bool>()) {
        let (space, balls) = if planar { planar_instance(seed % 10_000) } else { tree_ball_instance(seed % 10_000) };
        let a = assign_balls(&space, &balls).unwrap();
        for (x, b, _) in a.iter() {
            let ball = balls.iter().find(|c| c.id == b).unwrap();
            let from_c = space.node_distances(&ball.center).unwrap();
            let from_x = space.node_distances(&PointOnSpace::Node(x)).unwrap();
            for y in space.node_ids().filter(|y| from_x[y] + from_c[y] == from_c[&x]) {
                prop_assert_eq!(a.get(y), Some(b));
            }
        }
    }

    #[test]
    fn assigned_ball_reaches_across_its_node(seed in any::<u64>()) {
        let (space, balls) = tree_ball_instance(seed % 10_000);
        let a = assign_balls(&space, &balls).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..16 {
            let p = random_point(&space, &mut rng);
            for b in &balls {
                let dc = space.node_distances(&b.center).unwrap();
                let dp = space.node_distances(&p).unwrap();
                let cp = space.geodesic_distance(&b.center, &p).unwrap();
                if cp > b.radius {
                    continue;
                }
                for x in space.node_ids().filter(|x| dc[x] + dp[x] == cp && a.get(*x).is_some()) {
                    let bx = balls.iter().find(|c| Some(c.id) == a.get(x)).unwrap();
                    prop_assert!(ball_extent(&space, bx).unwrap().contains(&p));
                }
            }
        }
    }

    #[test]
    fn ball_extents_are_connected_with_tight_ends(seed in any::<u64>(), planar in any::<bool>()) {
        let (space, balls) = if planar { planar_instance(seed % 10_000) } else { tree_ball_instance(seed % 10_000) };
        for b in &balls {
            let ext = ball_extent(&space, b).unwrap();
            prop_assert!(ext.is_connected(&space));
            for (e, s) in ext.spans() {
                let len = space.edge(e).unwrap().len;
                for end in [s.lo, s.hi].into_iter().filter(|&o| o.is_positive() && o < len) {
                    let q = space.point(e, end).unwrap();
                    prop_assert_eq!(space.geodesic_distance(&b.center, &q).unwrap(), b.radius);
                }
            }
        }
    }

    #[test]
    fn chains_are_valid_and_order_free(seed in any::<u64>()) {
        let mut ivs = interval_set(seed % 100_000);
        let d = decompose_intervals(&ivs);
        let nm = nm_chain(&ivs, (1, 2));
        let cf = cf_chain(&ivs, (1, 2, 3));
        prop_assert!(nm.palette_size() <= 2 && check(&d, &nm, Mode::Nm).unwrap().valid);
        prop_assert!(cf.palette_size() <= 3 && check(&d, &cf, Mode::Cf).unwrap().valid);
        ivs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(nm_chain(&ivs, (1, 2)), nm);
        prop_assert_eq!(cf_chain(&ivs, (1, 2, 3)), cf);
    }

    #[test]
    fn generated_instances_are_well_formed(seed in any::<u64>(), planar in any::<bool>()) {
        let (space, balls) = if planar { planar_instance(seed % 10_000) } else { tree_ball_instance(seed % 10_000) };
        prop_assert!(!space.has_degree_two());
        prop_assert!(space.passes_planarity_test());
        prop_assert!(balls.iter().all(|b| space.contains_point(&b.center)));
        let max = 1 + (seed % 6) as usize;
        let p = RandomParams { max_leaves: max, ..Default::default() };
        let (space, objs) = gen_random(SpaceKind::Tree, ObjectKind::Subtrees, &p, seed).unwrap();
        prop_assert!(space.is_tree() && !space.has_degree_two());
        for o in &objs {
            let t = o.as_subtree().unwrap();
            prop_assert!(t.region.is_connected(&space));
            prop_assert!(t.region.leaf_count(&space) <= max);
        }
        let inst = Instance::Network { space, objects: objs };
        prop_assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn core_selection_is_small(seed in any::<u64>()) {
        let (space, trees) = subtree_instance(seed % 10_000);
        let k = space.k();
        let sel = select_core(&space, &trees).unwrap();
        if k >= 3 {
            prop_assert!(sel.core.len() <= 6 * k - 12);
        }
    }

    #[test]
    fn trees_on_trees_colorings(seed in any::<u64>()) {
        let (space, trees) = subtree_instance(seed % 10_000);
        let objs = tree_objects(&trees);
        let (k, l, n) = (space.k(), max_leaves(&space, &trees), trees.len());
        let nm = nm_color_trees(&space, &trees).unwrap();
        prop_assert!(valid(&space, &objs, &nm, Mode::Nm));
        prop_assert!(nm.palette_size() <= bounds::nm_trees_bound(k, l, n));
        let cf = cf_color_trees(&space, &trees).unwrap();
        prop_assert!(valid(&space, &objs, &cf.coloring, Mode::Cf));
        prop_assert!(cf.rounds <= bounds::cf_trees_round_bound(k, l) as usize);
    }

    #[test]
    fn balls_on_trees_colorings(seed in any::<u64>()) {
        let (space, balls) = tree_ball_instance(seed % 10_000);
        let objs = ball_objects(&balls);
        let nm = nm_color_balls_tree(&space, &balls).unwrap();
        prop_assert!(nm.palette_size() <= 2 && valid(&space, &objs, &nm, Mode::Nm));
        let cf = cf_color_balls_tree(&space, &balls).unwrap();
        prop_assert!(valid(&space, &objs, &cf.coloring, Mode::Cf));
        let core: Vec<NetObject> = objs.iter().filter(|o| cf.core.contains(&o.id())).cloned().collect();
        let mut on_core = Coloring::new();
        for (id, c) in cf.coloring.iter().filter(|(id, _)| cf.core.contains(id)) {
            on_core.set(id, c);
        }
        prop_assert!(valid(&space, &core, &on_core, Mode::Unimin));
    }

    #[test]
    fn balls_on_planar_colorings(seed in any::<u64>()) {
        let (space, balls) = planar_instance(seed % 10_000);
        let objs = ball_objects(&balls);
        let g = build_assignment_graph(&space, &balls).unwrap();
        prop_assert!(g.is_planar() && g.euler_bound_holds());
        let nm = nm_color_balls_planar(&space, &balls).unwrap();
        prop_assert!(valid(&space, &objs, &nm.coloring, Mode::Nm));
        if nm.exact {
            prop_assert!(nm.coloring.palette_size() <= 4);
        }
        let cf = cf_color_balls_planar(&space, &balls).unwrap();
        prop_assert!(valid(&space, &objs, &cf.coloring, Mode::Cf));
        // Round i takes color i, so the last round at a point is unique.
        let core: Vec<NetObject> = objs.iter().filter(|o| cf.core.contains(&o.id())).cloned().collect();
        let mut on_core = Coloring::new();
        for (id, c) in cf.coloring.iter().filter(|(id, _)| cf.core.contains(id)) {
            on_core.set(id, c);
        }
        prop_assert!(valid(&space, &core, &on_core, Mode::Unimax));
    }

    #[test]
    fn cover_witnesses_cover(seed in any::<u64>()) {
        let (space, balls) = planar_instance(seed % 10_000);
        let extents: BTreeMap<ObjectId, Region> = balls.iter().map(|b| (b.id, ball_extent(&space, b).unwrap())).collect();
        let core: BTreeMap<ObjectId, Region> =
            build_assignment_graph(&space, &balls).unwrap().vertices.iter().map(|id| (*id, extents[id].clone())).collect();
        let union = core.values().fold(Region::default(), |acc, r| acc.union(&space, r));
        for (id, ext) in extents.iter().filter(|(id, _)| !core.contains_key(id)) {
            if !ext.difference_closure(&space, &union).is_empty() {
                continue;
            }
            let w = cover_witness(&space, &core, ext).unwrap();
            let cover = w.iter().fold(Region::default(), |acc, b| acc.union(&space, &core[b]));
            prop_assert!(ext.difference_closure(&space, &cover).is_empty(), "ball {}", id);
        }
    }

    #[test]
    fn decomposition_is_complete(seed in any::<u64>(), planar in any::<bool>()) {
        let (space, balls) = if planar { planar_instance(seed % 10_000) } else { tree_ball_instance(seed % 10_000) };
        let objs = ball_objects(&balls);
        let d = decompose_objects(&space, &objs).unwrap();
        let extents: Vec<(ObjectId, Region)> = balls.iter().map(|b| (b.id, ball_extent(&space, b).unwrap())).collect();
        let sets: BTreeSet<BTreeSet<ObjectId>> = d.classes.iter().map(|c| c.members.clone()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..32 {
            let p = random_point(&space, &mut rng);
            let here: BTreeSet<ObjectId> = extents.iter().filter(|(_, r)| r.contains(&p)).map(|(id, _)| *id).collect();
            prop_assert!(sets.contains(&here));
        }
    }

    #[test]
    fn verdicts_are_ordered(seed in any::<u64>()) {
        let (space, balls) = tree_ball_instance(seed % 10_000);
        let objs = ball_objects(&balls);
        let d = decompose_objects(&space, &objs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for colors in 1..=4 {
            let c = random_coloring(balls.iter().map(|b| b.id), colors, &mut rng);
            let v = |m| check(&d, &c, m).unwrap().valid;
            prop_assert!(!v(Mode::Cf) || v(Mode::Nm));
            prop_assert!(!v(Mode::Unimax) || v(Mode::Cf));
            prop_assert!(!v(Mode::Unimin) || v(Mode::Cf));
        }
    }

    #[test]
    fn cf_needs_at_least_as_many_colors_as_nm(seed in any::<u64>()) {
        let p = RandomParams { internal: 2, extra_leaves: 1, objects: 1 + (seed % 7) as usize, ..Default::default() };
        let (space, objs) = gen_random(SpaceKind::Tree, ObjectKind::Balls, &p, seed).unwrap();
        let d = decompose_objects(&space, &objs).unwrap();
        let ids: Vec<ObjectId> = objs.iter().map(|o| o.id()).collect();
        let nm = min_colors_bruteforce(&d, &ids, Mode::Nm, 12).unwrap();
        let cf = min_colors_bruteforce(&d, &ids, Mode::Cf, 12).unwrap();
        prop_assert!(cf >= nm);
    }
}
