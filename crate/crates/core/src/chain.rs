//! Greedy chain colorings of intervals on a line.

use crate::object::{Coloring, Interval};

/// Left endpoint ascending, longer first, then id.
fn chain_order(intervals: &[Interval]) -> Vec<Interval> {
    let mut order = intervals.to_vec();
    order.sort_by(|a, b| {
        a.left
            .cmp(&b.left)
            .then(b.right.cmp(&a.right))
            .then(a.id.cmp(&b.id))
    });
    order
}

/// Two-color non-monochromatic chain. The active color flips after the
/// first interval, and afterwards whenever the right endpoint of the interval
/// just colored lies in no other colored interval.
pub fn nm_chain(intervals: &[Interval], palette: (u32, u32)) -> Coloring {
    let order = chain_order(intervals);
    let mut coloring = Coloring::new();
    let mut active = palette.0;
    let flip = |c: u32| if c == palette.0 { palette.1 } else { palette.0 };
    for (i, iv) in order.iter().enumerate() {
        coloring.set(iv.id, active);
        if i == 0 || !order[..i].iter().any(|o| o.contains(iv.right)) {
            active = flip(active);
        }
    }
    coloring
}

/// Three-color conflict-free chain: alternating blue/red chains, grey for
/// intervals covered by a chain.
pub fn cf_chain(intervals: &[Interval], palette: (u32, u32, u32)) -> Coloring {
    let (blue, red, grey) = palette;
    let mut remaining = chain_order(intervals);
    let mut coloring = Coloring::new();
    let mut chain: Vec<Interval> = Vec::new();
    while !remaining.is_empty() {
        let covered = |iv: &Interval| covered_by_union(&chain, iv);
        let (greys, rest): (Vec<Interval>, Vec<Interval>) = remaining.into_iter().partition(covered);
        for g in greys {
            coloring.set(g.id, grey);
        }
        remaining = rest;
        if remaining.is_empty() {
            break;
        }
        let mut last = remaining.remove(0);
        let mut color = blue;
        coloring.set(last.id, color);
        chain.push(last);
        loop {
            let next = remaining
                .iter()
                .enumerate()
                .filter(|(_, iv)| last.contains(iv.left) && iv.right > last.right)
                .max_by(|(_, a), (_, b)| {
                    a.right.cmp(&b.right).then(b.left.cmp(&a.left)).then(b.id.cmp(&a.id))
                })
                .map(|(i, _)| i);
            let Some(i) = next else { break };
            last = remaining.remove(i);
            color = if color == blue { red } else { blue };
            coloring.set(last.id, color);
            chain.push(last);
        }
    }
    coloring
}

fn covered_by_union(chain: &[Interval], iv: &Interval) -> bool {
    let mut spans: Vec<(_, _)> = chain.iter().map(|c| (c.left, c.right)).collect();
    spans.sort();
    let mut reach = iv.left;
    let mut started = false;
    for (a, b) in spans {
        if a > reach {
            break;
        }
        if b >= reach {
            started = true;
            reach = b;
        }
        if started && reach >= iv.right {
            return true;
        }
    }
    false
}
