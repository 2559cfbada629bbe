//! Exact genus of a single reduced biconnected block.
//!
//! The search space is the set of rotation systems. The lower bound combines
//! Euler counting with a planarity test; a simulated annealing pass supplies
//! a good incumbent cheaply; branch and bound then assigns the cyclic order
//! vertex by vertex and prunes with a face-counting bound: φ values of darts
//! pointing into assigned vertices never change again, so every φ-cycle that
//! is already closed is a face of every completion, and each remaining face
//! needs at least girth-many darts.

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::{block_lower_bound, count_faces, graph_seed, DartGraph};
use crate::quiver::SimpleGraph;

pub(super) struct BlockSolve {
    pub lower: u32,
    pub upper: u32,
    pub exact: bool,
}

pub(super) fn solve_block(g: &SimpleGraph, deadline: Instant, nodes: &mut u64) -> BlockSolve {
    let dg = DartGraph::build(g);
    let v = g.size() as i64;
    let e = g.edge_count() as i64;
    let mut lb = block_lower_bound(g);
    if lb == 0 && !super::planarity::is_planar(g) {
        lb = 1;
    }
    // Most faces any embedding can have without beating the lower bound.
    let target = (2 - v + e - 2 * lb as i64).max(1) as usize;
    let genus_of = |f: usize| -> u32 {
        let doubled = 2 - v + e - f as i64;
        debug_assert!(doubled >= 0 && doubled % 2 == 0);
        (doubled / 2) as u32
    };

    let seed = graph_seed(g);
    // Large assignment spaces lean more on the incumbent, so give the
    // annealer more room there.
    let leaf_space: f64 = dg
        .darts_at
        .iter()
        .map(|d| (1..d.len().max(1)).map(|k| k as f64).product::<f64>())
        .product();
    let restarts = if leaf_space > 1e6 { 6 } else { 3 };
    let iters = (800 * e as u64).clamp(4_000, 400_000);
    let mut best_faces = 0usize;
    for r in 0..restarts {
        let (_, f) = anneal_best(
            &dg,
            iters,
            seed ^ (r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
            Some(target),
            Some(deadline),
        );
        best_faces = best_faces.max(f);
        if best_faces >= target || Instant::now() >= deadline {
            break;
        }
    }
    if best_faces >= target {
        debug_assert_eq!(best_faces, target);
        return BlockSolve {
            lower: lb,
            upper: lb,
            exact: true,
        };
    }

    let girth = g.girth().expect("a biconnected block contains a cycle");
    let mut bb = BranchBound {
        dg: &dg,
        order: assignment_order(g),
        rotations: vec![Vec::new(); g.size()],
        assigned: vec![false; g.size()],
        best_faces,
        target,
        girth,
        deadline,
        nodes: 0,
        expired: false,
    };
    bb.dfs(0);
    *nodes += bb.nodes;
    if bb.best_faces >= target {
        BlockSolve {
            lower: lb,
            upper: lb,
            exact: true,
        }
    } else if bb.expired {
        BlockSolve {
            lower: lb,
            upper: genus_of(bb.best_faces),
            exact: false,
        }
    } else {
        let exact = genus_of(bb.best_faces);
        BlockSolve {
            lower: exact,
            upper: exact,
            exact: true,
        }
    }
}

/// Static vertex order: highest degree first, then most edges into the
/// already ordered set, so face walks close early.
fn assignment_order(g: &SimpleGraph) -> Vec<usize> {
    let n = g.size();
    let adj = g.adjacency();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let first = (0..n)
        .max_by_key(|&v| (adj[v].len(), std::cmp::Reverse(v)))
        .expect("nonempty block");
    order.push(first);
    placed[first] = true;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let into = adj[v].iter().filter(|&&w| placed[w]).count();
                (into, adj[v].len(), std::cmp::Reverse(v))
            })
            .unwrap();
        order.push(next);
        placed[next] = true;
    }
    order
}

struct BranchBound<'a> {
    dg: &'a DartGraph,
    order: Vec<usize>,
    rotations: Vec<Vec<usize>>,
    assigned: Vec<bool>,
    best_faces: usize,
    target: usize,
    girth: usize,
    deadline: Instant,
    nodes: u64,
    expired: bool,
}

impl BranchBound<'_> {
    fn dfs(&mut self, pos: usize) {
        if self.expired || self.best_faces >= self.target {
            return;
        }
        if pos == self.order.len() {
            let (closed, _) = self.closed_and_remaining();
            if closed > self.best_faces {
                self.best_faces = closed;
            }
            return;
        }
        let v = self.order[pos];
        let darts = self.dg.darts_at[v].clone();
        let mut rest: Vec<usize> = darts[1..].to_vec();
        self.permute(pos, v, darts[0], &mut rest, 0);
    }

    fn permute(&mut self, pos: usize, v: usize, anchor: usize, rest: &mut Vec<usize>, k: usize) {
        if self.expired || self.best_faces >= self.target {
            return;
        }
        if k == rest.len() {
            // The whole embedding mirrors by reversing every rotation, so on
            // the first vertex only one of each reversed pair is explored.
            if pos == 0 && rest.len() >= 2 && rest[0] > rest[rest.len() - 1] {
                return;
            }
            self.nodes += 1;
            if self.nodes.is_multiple_of(1024) && Instant::now() >= self.deadline {
                self.expired = true;
                return;
            }
            let mut rot = Vec::with_capacity(rest.len() + 1);
            rot.push(anchor);
            rot.extend_from_slice(rest);
            self.rotations[v] = rot;
            self.assigned[v] = true;
            let (closed, remaining) = self.closed_and_remaining();
            if closed + remaining / self.girth > self.best_faces {
                self.dfs(pos + 1);
            }
            self.assigned[v] = false;
            self.rotations[v].clear();
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            self.permute(pos, v, anchor, rest, k + 1);
            rest.swap(k, i);
            if self.expired {
                return;
            }
        }
    }

    /// Counts φ-cycles that are already closed and the darts not on any of
    /// them. φ(d) is defined once the head of `d` has its rotation.
    fn closed_and_remaining(&self) -> (usize, usize) {
        let nd = self.dg.tail.len();
        let mut pos = vec![0usize; nd];
        for v in 0..self.dg.n {
            if self.assigned[v] {
                for (i, &d) in self.rotations[v].iter().enumerate() {
                    pos[d] = i;
                }
            }
        }
        let phi = |d: usize| -> Option<usize> {
            let r = d ^ 1;
            let u = self.dg.tail[r];
            if !self.assigned[u] {
                return None;
            }
            let rot = &self.rotations[u];
            Some(rot[(pos[r] + 1) % rot.len()])
        };
        let mut visited = vec![false; nd];
        let mut closed = 0usize;
        let mut closed_darts = 0usize;
        for s in 0..nd {
            if visited[s] {
                continue;
            }
            let mut len = 0usize;
            let mut d = s;
            let is_cycle = loop {
                if visited[d] {
                    break false;
                }
                visited[d] = true;
                len += 1;
                match phi(d) {
                    None => break false,
                    Some(next) => {
                        if next == s {
                            break true;
                        }
                        d = next;
                    }
                }
            };
            if is_cycle {
                closed += 1;
                closed_darts += len;
            }
        }
        (closed, nd - closed_darts)
    }
}

/// Simulated annealing over rotation systems, maximizing the face count.
/// Returns the best rotations seen and their face count. Deterministic for a
/// fixed seed.
pub(super) fn anneal_best(
    dg: &DartGraph,
    iters: u64,
    seed: u64,
    stop_faces: Option<usize>,
    deadline: Option<Instant>,
) -> (Vec<Vec<usize>>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<usize>> = dg.darts_at.clone();
    for r in rot.iter_mut() {
        r.shuffle(&mut rng);
    }
    let mut cur = count_faces(dg, &rot);
    let mut best_rot = rot.clone();
    let mut best = cur;
    let movable: Vec<usize> = (0..dg.n).filter(|&v| dg.darts_at[v].len() >= 3).collect();
    if movable.is_empty() || iters == 0 {
        return (best_rot, best);
    }
    let t0: f64 = 1.5;
    let t1: f64 = 0.03;
    for it in 0..iters {
        if stop_faces.is_some_and(|sf| best >= sf) {
            break;
        }
        if it % 512 == 0 {
            if let Some(d) = deadline {
                if Instant::now() >= d {
                    break;
                }
            }
        }
        let t = t0 * (t1 / t0).powf(it as f64 / iters as f64);
        let v = movable[rng.gen_range(0..movable.len())];
        let len = rot[v].len();
        let i = rng.gen_range(0..len);
        let mut j = rng.gen_range(0..len - 1);
        if j >= i {
            j += 1;
        }
        let (i, j) = (i.min(j), i.max(j));
        let segment = rng.gen_bool(0.5);
        if segment {
            rot[v][i..=j].reverse();
        } else {
            rot[v].swap(i, j);
        }
        let f = count_faces(dg, &rot);
        let delta = f as i64 - cur as i64;
        let accept = delta >= 0 || rng.gen_bool((delta as f64 / t).exp().min(1.0));
        if accept {
            cur = f;
            if f > best {
                best = f;
                best_rot = rot.clone();
            }
        } else if segment {
            rot[v][i..=j].reverse();
        } else {
            rot[v].swap(i, j);
        }
    }
    (best_rot, best)
}
