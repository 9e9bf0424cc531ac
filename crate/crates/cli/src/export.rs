//! DOT and SVG drawings of instances with objects as colored overlays.

use std::collections::BTreeMap;
use std::fmt::Write;

use netcolor::instance::Instance;
use netcolor::{Coloring, NetObject, NetworkSpace, NodeId, ObjectId};

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#393b79", "#637939",
];

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 40.0;

fn color_of(coloring: Option<&Coloring>, id: ObjectId, index: usize) -> &'static str {
    let c = coloring.and_then(|c| c.get(id)).map(|c| c as usize).unwrap_or(index + 1);
    PALETTE[(c.max(1) - 1) % PALETTE.len()]
}

fn label(o: &NetObject) -> String {
    match o {
        NetObject::Ball(b) => format!("B{}", b.id.0),
        NetObject::Subtree(t) => format!("T{}", t.id.0),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn to_dot(instance: &Instance, coloring: Option<&Coloring>) -> netcolor::Result<String> {
    let mut out = String::from("graph netcolor {\n  node [shape=circle, fontsize=10];\n");
    match instance {
        Instance::Network { space, objects } => {
            let pos = layout(space);
            for v in space.node_ids() {
                let (x, y) = pos[&v];
                writeln!(out, "  n{} [label=\"{}\", pos=\"{:.2},{:.2}!\"];", v.0, v.0, x / 72.0 * 10.0, y / 72.0 * 10.0).unwrap();
            }
            for e in space.edges() {
                writeln!(out, "  n{} -- n{} [label=\"e{} ({})\", color=\"#bbbbbb\"];", e.u.0, e.v.0, e.id.0, e.len).unwrap();
            }
            for (i, o) in objects.iter().enumerate() {
                let color = color_of(coloring, o.id(), i);
                let name = label(o);
                let region = o.extent(space)?;
                let mut drawn = false;
                for (eid, s) in region.spans() {
                    let e = space.edge(eid)?;
                    writeln!(
                        out,
                        "  n{} -- n{} [color=\"{color}\", penwidth=3, label=\"{name} [{}, {}]\", fontcolor=\"{color}\"];",
                        e.u.0, e.v.0, s.lo, s.hi
                    )
                    .unwrap();
                    drawn = true;
                }
                if !drawn {
                    writeln!(out, "  o{} [shape=point, color=\"{color}\", xlabel=\"{name}\"];", o.id().0).unwrap();
                    for v in region.nodes() {
                        writeln!(out, "  o{} -- n{} [style=dashed, color=\"{color}\"];", o.id().0, v.0).unwrap();
                    }
                }
            }
        }
        Instance::Intervals(ivs) => {
            for (i, iv) in ivs.iter().enumerate() {
                let color = color_of(coloring, iv.id, i);
                writeln!(out, "  i{} [label=\"I{} [{}, {}]\", color=\"{color}\", style=bold];", iv.id.0, iv.id.0, iv.left, iv.right)
                    .unwrap();
            }
            for (a, x) in ivs.iter().enumerate() {
                for y in &ivs[a + 1..] {
                    if x.left <= y.right && y.left <= x.right {
                        writeln!(out, "  i{} -- i{};", x.id.0, y.id.0).unwrap();
                    }
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Node positions in drawing units. Stored coordinates are used when every
/// node has one; trees are otherwise laid out by depth, other spaces on a
/// circle.
fn layout(space: &NetworkSpace) -> BTreeMap<NodeId, (f64, f64)> {
    let raw: BTreeMap<NodeId, (f64, f64)> = if space.node_ids().all(|v| space.coord(v).is_some()) {
        space.node_ids().map(|v| (v, space.coord(v).unwrap())).collect()
    } else if space.is_tree() {
        tree_layout(space)
    } else {
        let n = space.node_count() as f64;
        space
            .node_ids()
            .enumerate()
            .map(|(i, v)| {
                let a = std::f64::consts::TAU * i as f64 / n;
                (v, (a.cos(), a.sin()))
            })
            .collect()
    };
    fit(raw)
}

fn tree_layout(space: &NetworkSpace) -> BTreeMap<NodeId, (f64, f64)> {
    let root = space.internal_nodes().first().copied().unwrap_or_else(|| space.node_ids().next().unwrap());
    let mut pos = BTreeMap::new();
    let mut next_leaf = 0.0;
    place(space, root, None, 0.0, &mut next_leaf, &mut pos);
    pos
}

fn place(
    space: &NetworkSpace,
    v: NodeId,
    parent: Option<NodeId>,
    depth: f64,
    next_leaf: &mut f64,
    pos: &mut BTreeMap<NodeId, (f64, f64)>,
) -> f64 {
    let children: Vec<NodeId> = space.neighbors(v).map(|(_, w)| w).filter(|&w| Some(w) != parent).collect();
    let y = if children.is_empty() {
        *next_leaf += 1.0;
        *next_leaf
    } else {
        let ys: Vec<f64> = children.iter().map(|&w| place(space, w, Some(v), depth + 1.0, next_leaf, pos)).collect();
        ys.iter().sum::<f64>() / ys.len() as f64
    };
    pos.insert(v, (depth, y));
    y
}

fn fit(raw: BTreeMap<NodeId, (f64, f64)>) -> BTreeMap<NodeId, (f64, f64)> {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in raw.values() {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let sx = if x1 > x0 { (WIDTH - 2.0 * MARGIN) / (x1 - x0) } else { 1.0 };
    let sy = if y1 > y0 { (HEIGHT - 2.0 * MARGIN) / (y1 - y0) } else { 1.0 };
    raw.into_iter().map(|(v, (x, y))| (v, (MARGIN + (x - x0) * sx, HEIGHT - MARGIN - (y - y0) * sy))).collect()
}

pub fn to_svg(instance: &Instance, coloring: Option<&Coloring>) -> netcolor::Result<String> {
    let mut out = String::new();
    let legend_rows = instance.len();
    let height = HEIGHT + 16.0 * legend_rows as f64 + 20.0;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" viewBox=\"0 0 {WIDTH} {height}\">"
    )
    .unwrap();
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let mut legend = Vec::new();
    match instance {
        Instance::Network { space, objects } => {
            let pos = layout(space);
            for e in space.edges() {
                let ((x1, y1), (x2, y2)) = (pos[&e.u], pos[&e.v]);
                writeln!(
                    out,
                    "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"#cccccc\" stroke-width=\"1.5\"/>"
                )
                .unwrap();
            }
            for (i, o) in objects.iter().enumerate() {
                let color = color_of(coloring, o.id(), i);
                let shift = 3.0 * ((i % 7) as f64 - 3.0);
                let region = o.extent(space)?;
                writeln!(out, "<g id=\"obj{}\" stroke=\"{color}\" fill=\"{color}\">", o.id().0).unwrap();
                for (eid, s) in region.spans() {
                    let e = space.edge(eid)?;
                    let ((ux, uy), (vx, vy)) = (pos[&e.u], pos[&e.v]);
                    let len = e.len.to_f64();
                    let (a, b) = (s.lo.to_f64() / len, s.hi.to_f64() / len);
                    let (dx, dy) = (vx - ux, vy - uy);
                    let norm = (dx * dx + dy * dy).sqrt().max(1e-9);
                    let (nx, ny) = (-dy / norm * shift, dx / norm * shift);
                    writeln!(
                        out,
                        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke-width=\"2.5\" stroke-opacity=\"0.8\"/>",
                        ux + a * dx + nx,
                        uy + a * dy + ny,
                        ux + b * dx + nx,
                        uy + b * dy + ny
                    )
                    .unwrap();
                }
                for v in region.nodes() {
                    let (x, y) = pos[v];
                    writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill-opacity=\"0.25\"/>").unwrap();
                }
                out.push_str("</g>\n");
                legend.push((label(o), color, coloring.and_then(|c| c.get(o.id()))));
            }
            for v in space.node_ids() {
                let (x, y) = pos[&v];
                writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>").unwrap();
                writeln!(out, "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\">{}</text>", x + 4.0, y - 4.0, v.0).unwrap();
            }
        }
        Instance::Intervals(ivs) => {
            let lo = ivs.iter().map(|iv| iv.left.to_f64()).fold(f64::INFINITY, f64::min);
            let hi = ivs.iter().map(|iv| iv.right.to_f64()).fold(f64::NEG_INFINITY, f64::max);
            let scale = if hi > lo { (WIDTH - 2.0 * MARGIN) / (hi - lo) } else { 1.0 };
            let row = ((HEIGHT - 2.0 * MARGIN) / ivs.len().max(1) as f64).min(14.0);
            for (i, iv) in ivs.iter().enumerate() {
                let color = color_of(coloring, iv.id, i);
                let y = MARGIN + row * i as f64;
                let (x1, x2) = (MARGIN + (iv.left.to_f64() - lo) * scale, MARGIN + (iv.right.to_f64() - lo) * scale);
                writeln!(
                    out,
                    "<line id=\"obj{}\" x1=\"{x1:.2}\" y1=\"{y:.2}\" x2=\"{x2:.2}\" y2=\"{y:.2}\" stroke=\"{color}\" stroke-width=\"4\"/>",
                    iv.id.0
                )
                .unwrap();
                legend.push((format!("I{}", iv.id.0), color, coloring.and_then(|c| c.get(iv.id))));
            }
        }
    }
    for (i, (name, color, c)) in legend.iter().enumerate() {
        let y = HEIGHT + 16.0 * i as f64 + 10.0;
        let text = match c {
            Some(c) => format!("{name}: color {c}"),
            None => name.clone(),
        };
        writeln!(out, "<rect x=\"{MARGIN}\" y=\"{:.2}\" width=\"10\" height=\"10\" fill=\"{color}\"/>", y - 9.0).unwrap();
        writeln!(out, "<text x=\"{:.2}\" y=\"{y:.2}\" font-size=\"11\">{}</text>", MARGIN + 16.0, escape(&text)).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
