//! Left-right planarity test on small abstract graphs.

use std::collections::{BTreeSet, HashSet};

/// Whether the graph on vertices `0..n` is planar. Parallel edges and
/// self-loops are ignored.
pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    let m: usize = adj.iter().map(|s| s.len()).sum::<usize>() / 2;
    if n > 2 && m > 3 * n - 6 {
        return false;
    }
    Lr::new(n, m, adj.into_iter().map(|s| s.into_iter().collect()).collect()).run()
}

#[derive(Clone, Copy, Default, Debug)]
struct Iv {
    low: Option<usize>,
    high: Option<usize>,
}

impl Iv {
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    id: usize,
    left: Iv,
    right: Iv,
}

struct Lr {
    adjs: Vec<Vec<usize>>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    oriented: HashSet<(usize, usize)>,
    tail: Vec<usize>,
    head: Vec<usize>,
    out: Vec<Vec<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    reference: Vec<Option<usize>>,
    lowpt_edge: Vec<Option<usize>>,
    stack_bottom: Vec<Option<usize>>,
    stack: Vec<Pair>,
    next_pair: usize,
}

impl Lr {
    fn new(n: usize, m: usize, adjs: Vec<Vec<usize>>) -> Self {
        Lr {
            adjs,
            height: vec![None; n],
            parent_edge: vec![None; n],
            oriented: HashSet::new(),
            tail: Vec::with_capacity(m),
            head: Vec::with_capacity(m),
            out: vec![Vec::new(); n],
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting: Vec::with_capacity(m),
            reference: vec![None; m],
            lowpt_edge: vec![None; m],
            stack_bottom: vec![None; m],
            stack: Vec::new(),
            next_pair: 0,
        }
    }

    fn run(mut self) -> bool {
        let n = self.adjs.len();
        let mut roots = Vec::new();
        for v in 0..n {
            if self.height[v].is_none() {
                self.height[v] = Some(0);
                roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..n {
            let nesting = &self.nesting;
            self.out[v].sort_by_key(|&e| nesting[e]);
        }
        roots.into_iter().all(|r| self.test(r))
    }

    fn h(&self, v: usize) -> usize {
        self.height[v].expect("visited")
    }

    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        let hv = self.h(v);
        for w in self.adjs[v].clone() {
            if self.oriented.contains(&(v, w)) || self.oriented.contains(&(w, v)) {
                continue;
            }
            self.oriented.insert((v, w));
            let vw = self.tail.len();
            self.tail.push(v);
            self.head.push(w);
            self.out[v].push(vw);
            self.lowpt.push(hv);
            self.lowpt2.push(hv);
            self.nesting.push(0);
            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(vw);
                    self.height[w] = Some(hv + 1);
                    self.orient(w);
                }
                Some(hw) => self.lowpt[vw] = hw,
            }
            self.nesting[vw] = 2 * self.lowpt[vw] + usize::from(self.lowpt2[vw] < hv);
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn new_pair(&mut self, left: Iv, right: Iv) -> Pair {
        self.next_pair += 1;
        Pair { id: self.next_pair, left, right }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn conflicting(&self, iv: &Iv, b: usize) -> bool {
        !iv.empty() && iv.high.is_some_and(|h| self.lowpt[h] > self.lowpt[b])
    }

    fn lowest(&self, p: &Pair) -> usize {
        let low = |iv: &Iv| self.lowpt[iv.low.expect("non-empty interval")];
        if p.left.empty() {
            low(&p.right)
        } else if p.right.empty() {
            low(&p.left)
        } else {
            low(&p.left).min(low(&p.right))
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let hv = self.h(v);
        let ordered = self.out[v].clone();
        for (idx, &ei) in ordered.iter().enumerate() {
            let w = self.head[ei];
            self.stack_bottom[ei] = self.top_id();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                let p = self.new_pair(Iv::default(), Iv { low: Some(ei), high: Some(ei) });
                self.stack.push(p);
            }
            if self.lowpt[ei] < hv {
                let e = e.expect("only the root lacks a parent edge");
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = self.new_pair(Iv::default(), Iv::default());
        while let Some(mut q) = self.stack.pop() {
            if !q.left.empty() {
                std::mem::swap(&mut q.left, &mut q.right);
            }
            if !q.left.empty() {
                return false;
            }
            let qlow = q.right.low.expect("non-empty interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[qlow] = self.lowpt_edge[e];
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("peeked");
            if self.conflicting(&q.right, ei) {
                std::mem::swap(&mut q.left, &mut q.right);
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.tail[e];
        let hu = self.h(u);
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.head[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.head[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                self.reference[e] = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    _ => hr,
                };
            }
        }
    }
}
