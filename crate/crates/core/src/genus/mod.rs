//! Graph embeddings in orientable surfaces and exact minimum genus.
//!
//! A cellular embedding of a graph in an orientable surface is the same data
//! as a rotation system: a cyclic order of edge ends (darts) around every
//! vertex. Tracing the usual next-dart walk recovers the faces, and the
//! Euler relation `V - E + F = 2c - 2g` turns face counts into genus.
//!
//! [`min_genus`] computes the minimum over all rotation systems. It first
//! shrinks the graph with genus-preserving reductions (isolated and pendant
//! vertices go away, degree-2 vertices are smoothed out) and splits it into
//! biconnected blocks, since genus is additive over blocks and connected
//! components. Each block is then solved by branch and bound over rotation
//! systems, seeded with a simulated annealing incumbent and pruned with
//! counting bounds from the Euler relation and the block's girth.
//!
//! [`is_planar`] is an independent left-right planarity test and is never
//! consulted by the genus search, so the two can be checked against each
//! other.

mod planarity;
mod search;

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use rand::prelude::*;

use crate::quiver::SimpleGraph;

pub use planarity::is_planar;

/// Edge ends of a graph, indexed for rotation systems.
///
/// Edges are numbered in the sorted order of [`SimpleGraph::edges`]; edge `e`
/// with endpoints `(a, b)`, `a < b`, owns dart `2e` at `a` and dart `2e + 1`
/// at `b`. The reverse of dart `d` is `d ^ 1`.
#[derive(Debug, Clone)]
pub(crate) struct DartGraph {
    pub n: usize,
    pub tail: Vec<usize>,
    pub darts_at: Vec<Vec<usize>>,
}

impl DartGraph {
    pub fn build(g: &SimpleGraph) -> Self {
        let n = g.size();
        let mut tail = Vec::with_capacity(2 * g.edge_count());
        let mut darts_at = vec![Vec::new(); n];
        for (e, (a, b)) in g.edges().enumerate() {
            tail.push(a);
            tail.push(b);
            darts_at[a].push(2 * e);
            darts_at[b].push(2 * e + 1);
        }
        DartGraph { n, tail, darts_at }
    }
}

/// Cyclic dart order around every vertex; see [`DartGraph`] for the dart
/// numbering convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    /// Rotation system with darts in ascending order at every vertex.
    pub fn default_order(g: &SimpleGraph) -> Self {
        RotationSystem {
            rotations: DartGraph::build(g).darts_at,
        }
    }

    /// Uniformly random rotation at every vertex.
    pub fn random<R: Rng + ?Sized>(g: &SimpleGraph, rng: &mut R) -> Self {
        let mut rotations = DartGraph::build(g).darts_at;
        for r in rotations.iter_mut() {
            r.shuffle(rng);
        }
        RotationSystem { rotations }
    }

    /// Checks that every vertex carries exactly its own darts.
    pub fn is_valid_for(&self, g: &SimpleGraph) -> bool {
        let dg = DartGraph::build(g);
        if self.rotations.len() != dg.n {
            return false;
        }
        for v in 0..dg.n {
            let mut have = self.rotations[v].clone();
            have.sort_unstable();
            if have != dg.darts_at[v] {
                return false;
            }
        }
        true
    }

    /// Faces of the embedding as dart cycles.
    pub fn faces(&self, g: &SimpleGraph) -> Vec<Vec<usize>> {
        assert!(self.is_valid_for(g), "rotation system does not fit graph");
        let dg = DartGraph::build(g);
        let nd = dg.tail.len();
        let mut pos = vec![0usize; nd];
        for rot in &self.rotations {
            for (i, &d) in rot.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut visited = vec![false; nd];
        let mut faces = Vec::new();
        for s in 0..nd {
            if visited[s] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = s;
            while !visited[d] {
                visited[d] = true;
                face.push(d);
                let r = d ^ 1;
                let rot = &self.rotations[dg.tail[r]];
                d = rot[(pos[r] + 1) % rot.len()];
            }
            faces.push(face);
        }
        faces
    }

    /// Genus of the surface this embedding lives on.
    pub fn genus(&self, g: &SimpleGraph) -> u32 {
        let comps = g.components();
        let c = comps.len() as i64;
        let edgeless = comps
            .iter()
            .filter(|comp| comp.iter().all(|&v| g.degree(v) == 0))
            .count() as i64;
        let f = self.faces(g).len() as i64 + edgeless;
        let doubled = 2 * c - g.size() as i64 + g.edge_count() as i64 - f;
        assert!(doubled >= 0 && doubled % 2 == 0, "broken face trace");
        (doubled / 2) as u32
    }
}

/// Number of faces of a full rotation assignment.
pub(crate) fn count_faces(dg: &DartGraph, rotations: &[Vec<usize>]) -> usize {
    let nd = dg.tail.len();
    let mut pos = vec![0usize; nd];
    for rot in rotations {
        for (i, &d) in rot.iter().enumerate() {
            pos[d] = i;
        }
    }
    let mut visited = vec![false; nd];
    let mut faces = 0;
    for s in 0..nd {
        if visited[s] {
            continue;
        }
        faces += 1;
        let mut d = s;
        while !visited[d] {
            visited[d] = true;
            let r = d ^ 1;
            let rot = &rotations[dg.tail[r]];
            d = rot[(pos[r] + 1) % rot.len()];
        }
    }
    faces
}

/// Whether a [`min_genus`] answer is exact or only bracketed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusStatus {
    Exact,
    Bounded,
}

/// Outcome of a genus computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusResult {
    pub status: GenusStatus,
    /// Certified lower bound.
    pub lower: u32,
    /// Genus of the best embedding found.
    pub upper: u32,
    /// Branch and bound nodes visited.
    pub nodes_explored: u64,
}

impl GenusResult {
    pub fn exact(&self) -> Option<u32> {
        match self.status {
            GenusStatus::Exact => Some(self.lower),
            GenusStatus::Bounded => None,
        }
    }
}

fn deadline_after(budget: Duration) -> Instant {
    let now = Instant::now();
    now.checked_add(budget)
        .unwrap_or_else(|| now + Duration::from_secs(365 * 24 * 3600))
}

/// Minimum orientable genus of `g`, exact when the search finishes within
/// `budget`, otherwise certified bounds.
pub fn min_genus(g: &SimpleGraph, budget: Duration) -> GenusResult {
    let deadline = deadline_after(budget);
    let mut nodes = 0u64;
    let mut lower = 0u32;
    let mut upper = 0u32;
    let mut all_exact = true;
    let mut queue: VecDeque<SimpleGraph> = components_as_graphs(g).into();
    while let Some(h) = queue.pop_front() {
        let h = reduce(&h);
        if h.edge_count() == 0 {
            continue;
        }
        let blocks = biconnected_blocks(&h);
        if blocks.len() != 1 {
            queue.extend(blocks);
            continue;
        }
        let block = &blocks[0];
        let solved = search::solve_block(block, deadline, &mut nodes);
        lower += solved.lower;
        upper += solved.upper;
        all_exact &= solved.exact;
    }
    GenusResult {
        status: if all_exact {
            GenusStatus::Exact
        } else {
            GenusStatus::Bounded
        },
        lower,
        upper,
        nodes_explored: nodes,
    }
}

/// Certified lower bound on the genus without any rotation search: the graph
/// is reduced and split into blocks, and each block contributes the larger of
/// the counting bound `ceil(((girth - 2) E - girth (V - 2)) / (2 girth))` and
/// 1 when the block fails the planarity test.
pub fn genus_lower_bound(g: &SimpleGraph) -> u32 {
    let mut total = 0u32;
    let mut queue: VecDeque<SimpleGraph> = components_as_graphs(g).into();
    while let Some(h) = queue.pop_front() {
        let h = reduce(&h);
        if h.edge_count() == 0 {
            continue;
        }
        let blocks = biconnected_blocks(&h);
        if blocks.len() != 1 {
            queue.extend(blocks);
            continue;
        }
        let mut lb = block_lower_bound(&blocks[0]);
        if lb == 0 && !planarity::is_planar(&blocks[0]) {
            lb = 1;
        }
        total += lb;
    }
    total
}

/// Searches for an embedding of the whole, unreduced graph with genus at
/// most `target_genus`, spending at most `effort` annealing steps. The
/// returned rotation system verifies directly on `g`.
pub fn find_embedding(
    g: &SimpleGraph,
    target_genus: u32,
    effort: u64,
    seed: u64,
) -> Option<RotationSystem> {
    let comps = g.components();
    let c = comps.len() as i64;
    let edgeless = comps
        .iter()
        .filter(|comp| comp.iter().all(|&v| g.degree(v) == 0))
        .count() as i64;
    let needed =
        (2 * c - g.size() as i64 + g.edge_count() as i64 - 2 * target_genus as i64 - edgeless)
            .max(0) as usize;
    let dg = DartGraph::build(g);
    let restarts = 6u64;
    for r in 0..restarts {
        let (rotations, faces) = search::anneal_best(
            &dg,
            effort / restarts,
            seed ^ graph_seed(g) ^ r.wrapping_mul(0x9e37_79b9_7f4a_7c15),
            Some(needed),
            None,
        );
        if faces >= needed {
            let rs = RotationSystem { rotations };
            debug_assert!(rs.genus(g) <= target_genus);
            return Some(rs);
        }
    }
    None
}

/// Deterministic seed derived from the graph itself.
pub(crate) fn graph_seed(g: &SimpleGraph) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mix = |h: u64, x: u64| (h ^ x).wrapping_mul(0x0000_0100_0000_01b3);
    h = mix(h, g.size() as u64);
    for (a, b) in g.edges() {
        h = mix(h, a as u64 + 1);
        h = mix(h, b as u64 + 1);
    }
    h
}

/// Counting lower bound for a reduced biconnected block.
pub(crate) fn block_lower_bound(b: &SimpleGraph) -> u32 {
    let v = b.size() as i64;
    let e = b.edge_count() as i64;
    let girth = b.girth().map_or(3, |g| g.max(3)) as i64;
    let num = (girth - 2) * e - girth * (v - 2);
    if num <= 0 {
        0
    } else {
        ((num + 2 * girth - 1) / (2 * girth)) as u32
    }
}

fn induced_subgraph(g: &SimpleGraph, verts: &[usize]) -> SimpleGraph {
    let mut index = vec![usize::MAX; g.size()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let mut h = SimpleGraph::new(verts.len());
    for (a, b) in g.edges() {
        if index[a] != usize::MAX && index[b] != usize::MAX {
            h.add_edge(index[a], index[b]).expect("mapped in range");
        }
    }
    h
}

fn components_as_graphs(g: &SimpleGraph) -> Vec<SimpleGraph> {
    g.components()
        .iter()
        .map(|comp| induced_subgraph(g, comp))
        .collect()
}

/// Applies genus-preserving reductions to a fixpoint: isolated and pendant
/// vertices disappear, and a degree-2 vertex is smoothed into an edge
/// between its neighbors (or simply dropped when they are already adjacent).
fn reduce(g: &SimpleGraph) -> SimpleGraph {
    let n = g.size();
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for (a, b) in g.edges() {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut alive = vec![true; n];
    while let Some(v) = (0..n).find(|&v| alive[v] && adj[v].len() <= 2) {
        let neighbors: Vec<usize> = adj[v].iter().copied().collect();
        for &u in &neighbors {
            adj[u].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        if let [a, b] = neighbors[..] {
            if !adj[a].contains(&b) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let verts: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let mut h = SimpleGraph::new(verts.len());
    for &v in &verts {
        for &w in &adj[v] {
            if v < w {
                h.add_edge(index[v], index[w]).expect("alive vertices");
            }
        }
    }
    h
}

/// Biconnected blocks of `g` as standalone graphs, bridges included as
/// single-edge blocks.
fn biconnected_blocks(g: &SimpleGraph) -> Vec<SimpleGraph> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
    }
    const UNSEEN: usize = usize::MAX;
    impl State<'_> {
        fn dfs(&mut self, u: usize, parent: usize) {
            self.disc[u] = self.time;
            self.low[u] = self.time;
            self.time += 1;
            for &w in &self.adj[u] {
                if self.disc[w] == UNSEEN {
                    self.stack.push((u, w));
                    self.dfs(w, u);
                    self.low[u] = self.low[u].min(self.low[w]);
                    if self.low[w] >= self.disc[u] {
                        let mut block = Vec::new();
                        while let Some(top) = self.stack.pop() {
                            let done = top == (u, w);
                            block.push(top);
                            if done {
                                break;
                            }
                        }
                        self.blocks.push(block);
                    }
                } else if w != parent && self.disc[w] < self.disc[u] {
                    self.stack.push((u, w));
                    self.low[u] = self.low[u].min(self.disc[w]);
                }
            }
        }
    }
    let adj = g.adjacency();
    let mut st = State {
        adj: &adj,
        disc: vec![UNSEEN; g.size()],
        low: vec![0; g.size()],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..g.size() {
        if st.disc[v] == UNSEEN {
            st.dfs(v, usize::MAX);
        }
    }
    st.blocks
        .into_iter()
        .map(|edges| {
            let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            verts.sort_unstable();
            verts.dedup();
            let mut index = vec![usize::MAX; g.size()];
            for (i, &v) in verts.iter().enumerate() {
                index[v] = i;
            }
            let mut h = SimpleGraph::new(verts.len());
            for (a, b) in edges {
                h.add_edge(index[a], index[b]).expect("block vertices");
            }
            h
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    fn k33() -> SimpleGraph {
        SimpleGraph::from_edges(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    fn petersen() -> SimpleGraph {
        let mut g = SimpleGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
            g.add_edge(i, 5 + i).unwrap();
        }
        g
    }

    // Independent face tracer used as an oracle: rotations are neighbor
    // lists, directed edges are walked by hand.
    fn oracle_face_count(n: usize, rot: &[Vec<usize>]) -> usize {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        for (v, order) in rot.iter().enumerate() {
            for (i, &w) in order.iter().enumerate() {
                index.insert((v, w), i);
            }
        }
        let mut seen: std::collections::HashSet<(usize, usize)> = Default::default();
        let mut faces = 0;
        let all: Vec<(usize, usize)> = (0..n)
            .flat_map(|v| rot[v].iter().map(move |&w| (v, w)))
            .collect();
        for &start in &all {
            if seen.contains(&start) {
                continue;
            }
            faces += 1;
            let mut cur = start;
            while seen.insert(cur) {
                let (u, v) = cur;
                let i = index[&(v, u)];
                let w = rot[v][(i + 1) % rot[v].len()];
                cur = (v, w);
            }
        }
        faces
    }

    // Enumerates every rotation system (first neighbor pinned per vertex)
    // and returns the maximum face count.
    fn oracle_max_faces(g: &SimpleGraph) -> usize {
        let adj = g.adjacency();
        let n = g.size();
        let mut rot: Vec<Vec<usize>> = adj.clone();
        fn go(v: usize, n: usize, adj: &[Vec<usize>], rot: &mut Vec<Vec<usize>>, best: &mut usize) {
            if v == n {
                let f = oracle_face_count(n, rot);
                if f > *best {
                    *best = f;
                }
                return;
            }
            let d = adj[v].len();
            if d <= 2 {
                go(v + 1, n, adj, rot, best);
                return;
            }
            let mut rest: Vec<usize> = adj[v][1..].to_vec();
            permute(0, &mut rest, &mut |perm| {
                rot[v] = std::iter::once(adj[v][0])
                    .chain(perm.iter().copied())
                    .collect();
                go(v + 1, n, adj, rot, best);
            });
            fn permute(k: usize, items: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
                if k == items.len() {
                    f(items);
                    return;
                }
                for i in k..items.len() {
                    items.swap(k, i);
                    permute(k + 1, items, f);
                    items.swap(k, i);
                }
            }
        }
        let mut best = 0;
        go(0, n, &adj, &mut rot, &mut best);
        best
    }

    fn oracle_min_genus_connected(g: &SimpleGraph) -> u32 {
        let f = oracle_max_faces(g) as i64;
        let doubled = 2 - g.size() as i64 + g.edge_count() as i64 - f;
        assert!(doubled >= 0 && doubled % 2 == 0);
        (doubled / 2) as u32
    }

    #[test]
    fn triangle_embeds_in_the_sphere() {
        let g = complete(3);
        let rs = RotationSystem::default_order(&g);
        let faces = rs.faces(&g);
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(rs.genus(&g), 0);
    }

    #[test]
    fn k4_face_counts_match_oracle_on_every_rotation() {
        let g = complete(4);
        let dg = DartGraph::build(&g);
        // Enumerate neighbor-order rotations, convert to dart rotations, and
        // compare the two tracers.
        let adj = g.adjacency();
        let edge_index: HashMap<(usize, usize), usize> = g
            .edges()
            .enumerate()
            .map(|(e, (a, b))| ((a, b), e))
            .collect();
        let dart_of = |v: usize, w: usize| -> usize {
            let (a, b) = (v.min(w), v.max(w));
            let e = edge_index[&(a, b)];
            if v == a {
                2 * e
            } else {
                2 * e + 1
            }
        };
        let mut all_counts = std::collections::BTreeSet::new();
        let mut perms: Vec<Vec<Vec<usize>>> = vec![Vec::new(); 4];
        for v in 0..4 {
            let rest = &adj[v][1..];
            let mut items = rest.to_vec();
            let mut acc = Vec::new();
            fn permute(k: usize, items: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>) {
                if k == items.len() {
                    acc.push(items.clone());
                    return;
                }
                for i in k..items.len() {
                    items.swap(k, i);
                    permute(k + 1, items, acc);
                    items.swap(k, i);
                }
            }
            permute(0, &mut items, &mut acc);
            perms[v] = acc
                .into_iter()
                .map(|p| std::iter::once(adj[v][0]).chain(p).collect())
                .collect();
        }
        for a in &perms[0] {
            for b in &perms[1] {
                for c in &perms[2] {
                    for d in &perms[3] {
                        let by_neighbors = vec![a.clone(), b.clone(), c.clone(), d.clone()];
                        let rotations: Vec<Vec<usize>> = (0..4)
                            .map(|v| by_neighbors[v].iter().map(|&w| dart_of(v, w)).collect())
                            .collect();
                        let lib = count_faces(&dg, &rotations);
                        let oracle = oracle_face_count(4, &by_neighbors);
                        assert_eq!(lib, oracle);
                        all_counts.insert(lib);
                    }
                }
            }
        }
        // The sphere embedding has 4 faces, the torus embeddings have 2.
        assert!(all_counts.contains(&4));
        assert!(all_counts.contains(&2));
        assert_eq!(all_counts.iter().max(), Some(&4));
    }

    #[test]
    fn small_exact_genera() {
        let budget = Duration::from_secs(30);
        assert_eq!(min_genus(&complete(4), budget).exact(), Some(0));
        assert_eq!(min_genus(&complete(5), budget).exact(), Some(1));
        assert_eq!(min_genus(&k33(), budget).exact(), Some(1));
        assert_eq!(min_genus(&petersen(), budget).exact(), Some(1));
        assert_eq!(min_genus(&complete(6), budget).exact(), Some(1));
    }

    #[test]
    fn trees_cycles_and_theta_are_planar() {
        let budget = Duration::from_secs(5);
        let tree = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(min_genus(&tree, budget).exact(), Some(0));
        let cycle = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(min_genus(&cycle, budget).exact(), Some(0));
        let theta =
            SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)]).unwrap();
        assert_eq!(min_genus(&theta, budget).exact(), Some(0));
        let empty = SimpleGraph::new(3);
        assert_eq!(min_genus(&empty, budget).exact(), Some(0));
    }

    #[test]
    fn genus_adds_over_components_and_blocks() {
        let budget = Duration::from_secs(30);
        // Two disjoint copies of the complete graph on five vertices.
        let mut disjoint = SimpleGraph::new(10);
        for i in 0..5 {
            for j in (i + 1)..5 {
                disjoint.add_edge(i, j).unwrap();
                disjoint.add_edge(5 + i, 5 + j).unwrap();
            }
        }
        assert_eq!(min_genus(&disjoint, budget).exact(), Some(2));
        // Two copies sharing a single cut vertex.
        let mut shared = SimpleGraph::new(9);
        let left = [0, 1, 2, 3, 4];
        let right = [0, 5, 6, 7, 8];
        for part in [left, right] {
            for i in 0..5 {
                for j in (i + 1)..5 {
                    shared.add_edge(part[i], part[j]).unwrap();
                }
            }
        }
        assert_eq!(min_genus(&shared, budget).exact(), Some(2));
    }

    #[test]
    fn subdivisions_do_not_change_genus() {
        // The complete graph on five vertices with every edge subdivided.
        let mut g = SimpleGraph::new(5 + 10);
        let mut mid = 5;
        for i in 0..5 {
            for j in (i + 1)..5 {
                g.add_edge(i, mid).unwrap();
                g.add_edge(mid, j).unwrap();
                mid += 1;
            }
        }
        assert_eq!(min_genus(&g, Duration::from_secs(30)).exact(), Some(1));
        assert_eq!(genus_lower_bound(&g), 1);
    }

    #[test]
    fn lower_bound_formulas() {
        assert_eq!(genus_lower_bound(&complete(5)), 1);
        assert_eq!(genus_lower_bound(&k33()), 1);
        assert_eq!(genus_lower_bound(&petersen()), 1);
        assert_eq!(genus_lower_bound(&complete(7)), 1);
        assert_eq!(genus_lower_bound(&complete(8)), 2);
        assert_eq!(genus_lower_bound(&complete(4)), 0);
    }

    #[test]
    fn random_graphs_match_exhaustive_oracle() {
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let mut checked = 0;
        while checked < 30 {
            let n = rng.gen_range(4..=6);
            let mut g = SimpleGraph::new(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.55) {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            if !g.is_connected() || g.edge_count() > 9 {
                continue;
            }
            checked += 1;
            let expected = oracle_min_genus_connected(&g);
            let got = min_genus(&g, Duration::from_secs(20));
            assert_eq!(got.exact(), Some(expected), "graph: {}", g.to_text());
        }
    }

    #[test]
    fn find_embedding_certifies_upper_bounds() {
        let g = complete(5);
        let rs = find_embedding(&g, 1, 40_000, 7).expect("torus embedding of K5");
        assert!(rs.is_valid_for(&g));
        assert_eq!(rs.genus(&g), 1);
        assert!(find_embedding(&complete(4), 0, 40_000, 7).is_some());
    }

    #[test]
    fn rotation_validity_checks() {
        let g = complete(4);
        let mut rs = RotationSystem::default_order(&g);
        assert!(rs.is_valid_for(&g));
        rs.rotations[0].swap(0, 1);
        assert!(rs.is_valid_for(&g));
        let moved = rs.rotations[0].pop().unwrap();
        rs.rotations[1].push(moved);
        assert!(!rs.is_valid_for(&g));
    }

    #[test]
    fn reductions_and_blocks() {
        // A long cycle reduces to nothing.
        let cycle =
            SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert_eq!(reduce(&cycle).size(), 0);
        // A bowtie splits into two triangle blocks.
        let bowtie =
            SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let blocks = biconnected_blocks(&bowtie);
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.edge_count() == 3));
        // A bridge forms its own block.
        let bridged = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let blocks = biconnected_blocks(&bridged);
        assert_eq!(blocks.len(), 2);
    }
}
