//! Acceptance suite. Prints one PASS/FAIL line per criterion; every
//! tolerance is zero.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use netcolor::bounds;
use netcolor::chain::{cf_chain, nm_chain};
use netcolor::generators::{gen_binary_tree_paths, gen_comb, gen_k4, gen_star_pairs};
use netcolor::instance::Instance;
use netcolor::planar_balls::{build_assignment_graph, build_delaunay_graph, cf_color_balls_planar, nm_color_balls_planar};
use netcolor::run::{self, Algorithm, Limits};
use netcolor::tree_balls::{cf_color_balls_tree, nm_color_balls_tree};
use netcolor::tree_trees::{cf_color_trees, max_leaves, nm_color_trees};
use netcolor::validator::{check, decompose, decompose_intervals, decompose_objects, min_colors_bruteforce, Mode};
use netcolor::{assign_balls, ball_extent, q, Ball, Coloring, Error, NetObject, NetworkSpace, ObjectId, PointOnSpace, Region};

struct Report {
    lines: Vec<(bool, String)>,
}

impl Report {
    fn record(&mut self, ok: bool, name: &str, detail: String) {
        let line = format!("[{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push((ok, line));
    }
}

fn valid(space: &NetworkSpace, objects: &[NetObject], coloring: &Coloring, mode: Mode) -> bool {
    let d = decompose_objects(space, objects).unwrap();
    check(&d, coloring, mode).unwrap().valid
}

fn oracle(space: &NetworkSpace, objects: &[NetObject], mode: Mode) -> usize {
    let d = decompose_objects(space, objects).unwrap();
    let ids: Vec<ObjectId> = objects.iter().map(|o| o.id()).collect();
    min_colors_bruteforce(&d, &ids, mode, 12).unwrap()
}

fn restrict(coloring: &Coloring, keep: &BTreeSet<ObjectId>) -> Coloring {
    let mut c = Coloring::new();
    for (id, col) in coloring.iter().filter(|(id, _)| keep.contains(id)) {
        c.set(id, col);
    }
    c
}

fn criterion_1(r: &mut Report) {
    let (mut ok, mut nm_max, mut cf_max) = (0, 0, 0);
    for seed in 0..1000 {
        let ivs = interval_set(seed);
        let d = decompose_intervals(&ivs);
        let nm = nm_chain(&ivs, (1, 2));
        let cf = cf_chain(&ivs, (1, 2, 3));
        nm_max = nm_max.max(nm.palette_size());
        cf_max = cf_max.max(cf.palette_size());
        let good = check(&d, &nm, Mode::Nm).unwrap().valid
            && check(&d, &cf, Mode::Cf).unwrap().valid
            && nm.palette_size() <= 2
            && cf.palette_size() <= 3;
        ok += usize::from(good);
    }
    r.record(
        ok == 1000,
        "1 chain methods",
        format!("{ok}/1000 interval sets valid; max nm palette {nm_max} (<= 2), max cf palette {cf_max} (<= 3)"),
    );
}

/// Returns the line for criterion 4 so that it prints after criterion 3.
fn criteria_2_and_4(r: &mut Report) -> (bool, String) {
    let (mut nm_ok, mut cf_ok, mut rounds_ok, mut scope_ok) = (0, 0, 0, 0);
    let mut worst = String::new();
    for seed in 0..500 {
        let (space, trees) = subtree_instance(seed);
        let objs = tree_objects(&trees);
        let (k, l, n) = (space.k(), max_leaves(&space, &trees), trees.len());
        scope_ok += usize::from(k <= 32 && l <= 6 && n <= 64);
        let nm = nm_color_trees(&space, &trees).unwrap();
        let bound = bounds::nm_trees_bound(k, l, n);
        if valid(&space, &objs, &nm, Mode::Nm) && nm.palette_size() <= bound {
            nm_ok += 1;
        } else if worst.is_empty() {
            worst = format!("; first nm failure seed {seed}");
        }
        let cf = cf_color_trees(&space, &trees).unwrap();
        let pb = bounds::cf_trees_palette_bound(k, l, cf.singletons, cf.rounds);
        cf_ok += usize::from(valid(&space, &objs, &cf.coloring, Mode::Cf) && cf.coloring.palette_size() <= pb);
        rounds_ok += usize::from(cf.rounds <= bounds::cf_trees_round_bound(k, l) as usize);
    }
    r.record(
        nm_ok == 500 && scope_ok == 500,
        "2 trees on trees, NM upper bound",
        format!("{nm_ok}/500 valid within min(l+1, ceil(2 sqrt(6k)), n); {scope_ok}/500 within k<=32, l<=6, n<=64{worst}"),
    );

    let mut oracle_ok = true;
    let mut got = Vec::new();
    for ((k, n), want) in [((4, 4), 2), ((8, 8), 3)] {
        let (space, trees) = gen_binary_tree_paths(k, n).unwrap();
        let v = oracle(&space, &tree_objects(&trees), Mode::Cf);
        got.push(format!("paths({k},{n}) = {v} (want {want})"));
        oracle_ok &= v == want;
    }
    (
        cf_ok == 500 && rounds_ok == 500 && oracle_ok,
        format!("{cf_ok}/500 valid within palette formula, {rounds_ok}/500 within round bound; {}", got.join(", ")),
    )
}

fn criterion_3(r: &mut Report) {
    let mut ok = true;
    let mut got = Vec::new();
    for (k, l, n) in [(6, 3, 4), (10, 4, 5), (3, 2, 3)] {
        let (space, trees) = gen_star_pairs(k, l, n).unwrap();
        let v = oracle(&space, &tree_objects(&trees), Mode::Nm);
        let want = bounds::star_pairs_nm(k, l, n);
        got.push(format!("({k},{l},{n}) -> {v} (want {want})"));
        ok &= v == want;
    }
    r.record(ok, "3 trees on trees, NM lower bound", got.join(", "));
}

fn criterion_5(r: &mut Report) {
    let mut ok = 0;
    let mut max = 0;
    for seed in 0..500 {
        let (space, balls) = tree_ball_instance(seed);
        let c = nm_color_balls_tree(&space, &balls).unwrap();
        max = max.max(c.palette_size());
        ok += usize::from(c.palette_size() <= 2 && valid(&space, &ball_objects(&balls), &c, Mode::Nm));
    }
    r.record(ok == 500, "5 balls on trees, NM", format!("{ok}/500 valid with palette <= 2 (max {max})"));
}

fn criterion_6(r: &mut Report) {
    let (mut cf_ok, mut core_ok, mut palette_ok) = (0, 0, 0);
    let mut over = Vec::new();
    for seed in 0..500 {
        let (space, balls) = tree_ball_instance(seed);
        let objs = ball_objects(&balls);
        let res = cf_color_balls_tree(&space, &balls).unwrap();
        cf_ok += usize::from(valid(&space, &objs, &res.coloring, Mode::Cf));
        let core: Vec<NetObject> = objs.iter().filter(|o| res.core.contains(&o.id())).cloned().collect();
        core_ok += usize::from(valid(&space, &core, &restrict(&res.coloring, &res.core), Mode::Unimin));
        let bound = bounds::cf_balls_tree_bound(space.t());
        if res.coloring.palette_size() <= bound {
            palette_ok += 1;
        } else if over.len() < 3 {
            over.push(format!("seed {seed} t={} palette {} > {bound}", space.t(), res.coloring.palette_size()));
        }
    }
    let mut comb_ok = true;
    let mut got = Vec::new();
    for (t, want) in [(3, 2), (7, 3)] {
        let (space, balls) = gen_comb(t).unwrap();
        let v = oracle(&space, &ball_objects(&balls), Mode::Cf);
        got.push(format!("comb({t}) = {v} (want {want})"));
        comb_ok &= v == want;
    }
    let over = if over.is_empty() { String::new() } else { format!(" [{}]", over.join("; ")) };
    r.record(
        cf_ok == 500 && core_ok == 500 && palette_ok == 500 && comb_ok,
        "6 balls on trees, CF",
        format!(
            "{cf_ok}/500 CF valid, {core_ok}/500 core unique-min, {palette_ok}/500 within ceil(log2 t)+3{over}; {}",
            got.join(", ")
        ),
    );
}

fn criterion_7(r: &mut Report) {
    let (space, balls) = gen_k4(q(2, 3)).unwrap();
    let k4 = nm_color_balls_planar(&space, &balls).unwrap();
    let k4_oracle = oracle(&space, &ball_objects(&balls), Mode::Nm);
    let (mut ok, mut exact) = (0, 0);
    for seed in 0..300 {
        let (space, balls) = planar_instance(seed);
        let res = nm_color_balls_planar(&space, &balls).unwrap();
        exact += usize::from(res.exact);
        ok += usize::from(res.exact && res.coloring.palette_size() <= 4 && valid(&space, &ball_objects(&balls), &res.coloring, Mode::Nm));
    }
    r.record(
        k4.coloring.palette_size() == 4 && k4_oracle == 4 && ok == 300,
        "7 balls on planar networks, NM",
        format!(
            "K4 palette {} and oracle {k4_oracle} (want 4, 4); {ok}/300 valid with palette <= 4 ({exact}/300 exact)",
            k4.coloring.palette_size()
        ),
    );
}

fn criterion_8(r: &mut Report) {
    let (mut cf_ok, mut exact, mut rounds_ok, mut palette_ok, mut unpinned) = (0, 0, 0, 0, 0);
    for seed in 0..300 {
        let (space, balls) = planar_instance(seed);
        let res = cf_color_balls_planar(&space, &balls).unwrap();
        cf_ok += usize::from(valid(&space, &ball_objects(&balls), &res.coloring, Mode::Cf));
        unpinned += usize::from(res.unpinned > 0);
        if res.exact_mis {
            exact += 1;
            let t = space.t();
            rounds_ok += usize::from(res.rounds <= bounds::planar_round_bound(t) as usize);
            palette_ok += usize::from(res.coloring.palette_size() <= bounds::cf_balls_planar_bound(t));
        }
    }
    r.record(
        cf_ok == 300 && exact == 300 && rounds_ok == exact && palette_ok == exact,
        "8 balls on planar networks, CF",
        format!(
            "{cf_ok}/300 CF valid; exact MIS on {exact}/300; rounds within ceil(log_4/3 t) on {rounds_ok}, palette within ceil(log_4/3 t)+3 on {palette_ok}; {unpinned} instances had point sets without a Delaunay edge"
        ),
    );
}

/// Counts assigned-ball violations along shortest paths from `x` to the
/// center of its assigned ball.
fn path_violations(space: &NetworkSpace, balls: &[Ball], x: netcolor::NodeId, assigned: ObjectId, get: impl Fn(netcolor::NodeId) -> Option<ObjectId>) -> usize {
    let ball = balls.iter().find(|b| b.id == assigned).unwrap();
    let from_c = space.node_distances(&ball.center).unwrap();
    let from_x = space.node_distances(&PointOnSpace::Node(x)).unwrap();
    space
        .node_ids()
        .filter(|y| from_x[y] + from_c[y] == from_c[&x])
        .filter(|&y| get(y) != Some(assigned))
        .count()
}

fn criterion_9(r: &mut Report) {
    let (mut probes, mut violations) = (0, 0);
    let mut seed = 0;
    while probes < 10_000 {
        let (space, balls) = if seed % 2 == 0 { tree_ball_instance(seed) } else { planar_instance(seed) };
        let a = assign_balls(&space, &balls).unwrap();
        for (x, b, _) in a.iter() {
            violations += path_violations(&space, &balls, x, b, |y| a.get(y));
            probes += 1;
        }
        seed += 1;
    }

    let mut fired = Vec::new();
    let mut graphs = 0;
    let mut bad_graphs = 0;
    for seed in 0..300 {
        let (space, balls) = tree_ball_instance(seed);
        for res in [nm_color_balls_tree(&space, &balls).err(), cf_color_balls_tree(&space, &balls).err()] {
            if let Some(e @ Error::Invariant(_)) = res {
                fired.push(format!("tree seed {seed}: {e}"));
            }
        }
        let (space, balls) = planar_instance(seed);
        let g = build_assignment_graph(&space, &balls).unwrap();
        graphs += 1;
        bad_graphs += usize::from(!(g.is_planar() && g.euler_bound_holds()));
        let nm = nm_color_balls_planar(&space, &balls);
        if let Err(e @ Error::Invariant(_)) = &nm {
            fired.push(format!("planar seed {seed}: {e}"));
        }
        match cf_color_balls_planar(&space, &balls) {
            Err(e) => fired.push(format!("planar seed {seed}: {e}")),
            Ok(cf) => {
                let extents: BTreeMap<ObjectId, Region> =
                    balls.iter().map(|b| (b.id, ball_extent(&space, b).unwrap())).collect();
                for round in 1..=cf.rounds as u32 {
                    let rest: Vec<(ObjectId, Region)> = cf
                        .core
                        .iter()
                        .filter(|id| cf.coloring.get(**id).is_some_and(|c| c >= round))
                        .map(|id| (*id, extents[id].clone()))
                        .collect();
                    let d = build_delaunay_graph(&space, &rest).unwrap();
                    graphs += 1;
                    bad_graphs += usize::from(!(d.is_planar() && d.euler_bound_holds()));
                }
            }
        }
    }
    r.record(
        violations == 0 && fired.is_empty() && bad_graphs == 0,
        "9 structural lemmas",
        format!(
            "{violations} path-assignment violations in {probes} probes; {} assertions fired{}; {bad_graphs}/{graphs} assignment/Delaunay graphs failed planarity or the Euler bound",
            fired.len(),
            fired.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    );
}

fn criterion_10(r: &mut Report) {
    let mut same = 0;
    let mut total = 0;
    for seed in 0..20 {
        let instances = [
            (Instance::Intervals(interval_set(seed)), [Algorithm::NmChain, Algorithm::CfChain]),
            ({ let (s, t) = subtree_instance(seed); Instance::Network { space: s, objects: tree_objects(&t) } }, [Algorithm::NmTrees, Algorithm::CfTrees]),
            ({ let (s, b) = tree_ball_instance(seed); Instance::Network { space: s, objects: ball_objects(&b) } }, [Algorithm::NmBallsTree, Algorithm::CfBallsTree]),
            ({ let (s, b) = planar_instance(seed); Instance::Network { space: s, objects: ball_objects(&b) } }, [Algorithm::NmBallsPlanar, Algorithm::CfBallsPlanar]),
        ];
        for (inst, algs) in instances {
            let text = inst.to_json();
            let again = Instance::from_json(&text).unwrap();
            for alg in algs {
                let a = run::color(&inst, alg, Limits::default()).unwrap().to_json();
                let b = run::color(&again, alg, Limits::default()).unwrap().to_json();
                total += 1;
                same += usize::from(a == b && again.to_json() == text);
            }
        }
    }
    let (s1, _) = subtree_instance(3);
    let (s2, _) = subtree_instance(3);
    let gen_same = Instance::Network { space: s1, objects: vec![] }.to_json() == Instance::Network { space: s2, objects: vec![] }.to_json();
    r.record(same == total && gen_same, "10 determinism", format!("{same}/{total} reruns byte-identical; generator rerun identical: {gen_same}"));
}

#[test]
fn acceptance() {
    let mut r = Report { lines: Vec::new() };
    criterion_1(&mut r);
    let (ok4, line4) = criteria_2_and_4(&mut r);
    criterion_3(&mut r);
    r.record(ok4, "4 trees on trees, CF", line4);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    criterion_10(&mut r);
    let failed: Vec<&String> = r.lines.iter().filter(|(ok, _)| !ok).map(|(_, l)| l).collect();
    assert!(failed.is_empty(), "{} criteria failed:\n{}", failed.len(), failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("\n"));
}

#[test]
fn decomposition_is_used_for_delaunay_sets() {
    let (space, balls) = gen_comb(3).unwrap();
    let regions: Vec<(ObjectId, Region)> = balls.iter().map(|b| (b.id, ball_extent(&space, b).unwrap())).collect();
    let sets: BTreeSet<BTreeSet<ObjectId>> = decompose(&space, &regions).sets(1).cloned().collect();
    for i in 0..4u32 {
        for j in i..4 {
            assert!(sets.contains(&(i..=j).map(ObjectId).collect()), "run {i}..{j}");
        }
    }
}
