//! Left-right planarity test.
//!
//! Two depth-first passes: the first orients the graph and computes low
//! points and nesting depths, the second walks edges in nesting order while
//! maintaining a stack of conflict pairs of back-edge intervals. The graph
//! is planar exactly when every constraint can be resolved. Only the boolean
//! answer is produced here; no embedding is built.
//!
//! This test shares no code with the rotation-system genus search, so the
//! two act as independent checks on each other.

use std::collections::{HashMap, HashSet};

use crate::quiver::SimpleGraph;

type Edge = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Interval {
    low: Option<Edge>,
    high: Option<Edge>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr {
    adj: Vec<Vec<usize>>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<Edge>>,
    oriented: HashSet<Edge>,
    lowpt: HashMap<Edge, usize>,
    lowpt2: HashMap<Edge, usize>,
    nesting_depth: HashMap<Edge, i64>,
    ordered: Vec<Vec<usize>>,
    stack: Vec<ConflictPair>,
    stack_bottom: HashMap<Edge, usize>,
    lowpt_edge: HashMap<Edge, Edge>,
    refs: HashMap<Edge, Option<Edge>>,
}

/// Whether the graph embeds in the sphere.
pub fn is_planar(g: &SimpleGraph) -> bool {
    let n = g.size();
    let e = g.edge_count();
    if n <= 4 {
        return true;
    }
    if e > 3 * n - 6 {
        return false;
    }
    let mut lr = Lr {
        adj: g.adjacency(),
        height: vec![None; n],
        parent_edge: vec![None; n],
        oriented: HashSet::new(),
        lowpt: HashMap::new(),
        lowpt2: HashMap::new(),
        nesting_depth: HashMap::new(),
        ordered: vec![Vec::new(); n],
        stack: Vec::new(),
        stack_bottom: HashMap::new(),
        lowpt_edge: HashMap::new(),
        refs: HashMap::new(),
    };
    let mut roots = Vec::new();
    for v in 0..n {
        if lr.height[v].is_none() {
            lr.height[v] = Some(0);
            roots.push(v);
            lr.orient(v);
        }
    }
    for v in 0..n {
        let mut out: Vec<usize> = lr.adj[v]
            .iter()
            .copied()
            .filter(|&w| lr.oriented.contains(&(v, w)))
            .collect();
        out.sort_by_key(|&w| (lr.nesting_depth[&(v, w)], w));
        lr.ordered[v] = out;
    }
    roots.into_iter().all(|v| lr.test(v))
}

impl Lr {
    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        let hv = self.height[v].expect("set before the call");
        for idx in 0..self.adj[v].len() {
            let w = self.adj[v][idx];
            if self.oriented.contains(&(v, w)) || self.oriented.contains(&(w, v)) {
                continue;
            }
            let vw = (v, w);
            self.oriented.insert(vw);
            self.lowpt.insert(vw, hv);
            self.lowpt2.insert(vw, hv);
            if self.height[w].is_none() {
                self.parent_edge[w] = Some(vw);
                self.height[w] = Some(hv + 1);
                self.orient(w);
            } else {
                self.lowpt.insert(vw, self.height[w].unwrap());
            }
            let mut depth = 2 * self.lowpt[&vw] as i64;
            if self.lowpt2[&vw] < hv {
                depth += 1;
            }
            self.nesting_depth.insert(vw, depth);
            if let Some(pe) = e {
                let (l, l2) = (self.lowpt[&vw], self.lowpt2[&vw]);
                let (pl, pl2) = (self.lowpt[&pe], self.lowpt2[&pe]);
                if l < pl {
                    self.lowpt2.insert(pe, pl.min(l2));
                    self.lowpt.insert(pe, l);
                } else if l > pl {
                    self.lowpt2.insert(pe, pl2.min(l));
                } else {
                    self.lowpt2.insert(pe, pl2.min(l2));
                }
            }
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let hv = self.height[v].expect("oriented already");
        for idx in 0..self.ordered[v].len() {
            let w = self.ordered[v][idx];
            let ei = (v, w);
            self.stack_bottom.insert(ei, self.stack.len());
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge.insert(ei, ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
            }
            if self.lowpt[&ei] < hv {
                if idx == 0 {
                    let le = self.lowpt_edge[&ei];
                    self.lowpt_edge
                        .insert(e.expect("root edges return above"), le);
                } else if !self.add_constraints(ei, e.expect("non-root")) {
                    return false;
                }
            }
        }
        if let Some(pe) = e {
            let u = pe.0;
            self.trim_back_edges(u);
            if self.lowpt[&pe] < self.height[u].unwrap() {
                let top = self.stack.last().expect("return edge keeps a pair");
                let hl = top.left.high;
                let hr = top.right.high;
                let pick = match (hl, hr) {
                    (Some(l), Some(r)) => {
                        if self.lowpt[&l] > self.lowpt[&r] {
                            Some(l)
                        } else {
                            Some(r)
                        }
                    }
                    (Some(l), None) => Some(l),
                    (None, other) => other,
                };
                self.refs.insert(pe, pick);
            }
        }
        true
    }

    fn conflicting(&self, i: &Interval, b: Edge) -> bool {
        match i.high {
            None => false,
            Some(h) => self.lowpt[&h] > self.lowpt[&b],
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[&r],
            (Some(l), None) => self.lowpt[&l],
            (Some(l), Some(r)) => self.lowpt[&l].min(self.lowpt[&r]),
            (None, None) => unreachable!("empty conflict pair on the stack"),
        }
    }

    fn add_constraints(&mut self, ei: Edge, e: Edge) -> bool {
        let mut p = ConflictPair::default();
        let bottom = self.stack_bottom[&ei];
        // Merge the return edges of ei into the right interval.
        loop {
            let mut q = self.stack.pop().expect("return edge left a pair");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("nonempty interval");
            if self.lowpt[&q_low] > self.lowpt[&e] {
                if p.right.is_empty() {
                    p.right.high = q.right.high;
                } else {
                    self.refs.insert(p.right.low.unwrap(), q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.refs.insert(q_low, Some(self.lowpt_edge[&e]));
            }
            if self.stack.len() == bottom {
                break;
            }
        }
        // Merge conflicting return edges of earlier siblings into the left.
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pr_low) = p.right.low {
                self.refs.insert(pr_low, q.right.high);
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left.high = q.left.high;
            } else {
                self.refs.insert(p.left.low.unwrap(), q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn trim_back_edges(&mut self, u: usize) {
        let hu = self.height[u].unwrap();
        while let Some(top) = self.stack.last() {
            if self.lowest(top) == hu {
                self.stack.pop();
            } else {
                break;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if h.1 == u {
                    p.left.high = self.refs.get(&h).copied().flatten();
                } else {
                    break;
                }
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refs.insert(l, p.right.low);
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if h.1 == u {
                    p.right.high = self.refs.get(&h).copied().flatten();
                } else {
                    break;
                }
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low {
                    self.refs.insert(l, p.left.low);
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
    }
}
