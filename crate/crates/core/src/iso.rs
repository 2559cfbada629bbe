//! Canonical forms and isomorphism tests for quivers and simple graphs.
//!
//! Both kinds of object reduce to the same problem: bring an integer matrix
//! into a canonical form under simultaneous row and column permutation. The
//! canonicalizer runs iterated partition refinement, individualizes a vertex
//! whenever the partition stalls, and keeps the lexicographically smallest
//! relabeled matrix over all branches. Every leaf corresponds to an actual
//! permutation of the input, so equal keys mean isomorphic objects and
//! isomorphic objects get equal keys.

use std::fmt;

use crate::quiver::{ExchangeMatrix, Quiver, SimpleGraph};

/// How arrow directions are treated when comparing quivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IsoConvention {
    /// Arrow directions must match exactly.
    #[default]
    Strict,
    /// A quiver and its fully reversed counterpart count as the same.
    IdentifyOpposite,
}

impl IsoConvention {
    pub fn label(self) -> &'static str {
        match self {
            IsoConvention::Strict => "strict",
            IsoConvention::IdentifyOpposite => "opposite",
        }
    }
}

/// Isomorphism-invariant fingerprint of a quiver or graph.
///
/// Keys from different object kinds or sizes never collide: the first byte
/// tags the kind and the next four encode the vertex count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        let mut bytes = Vec::with_capacity(s.len() / 2);
        for i in (0..s.len()).step_by(2) {
            bytes.push(u8::from_str_radix(s.get(i..i + 2)?, 16).ok()?);
        }
        Some(CanonicalKey(bytes))
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Canonical key of a quiver under the given convention.
pub fn canonical_quiver_key(q: &Quiver, convention: IsoConvention) -> CanonicalKey {
    let b = ExchangeMatrix::from(q);
    let direct = canon_matrix(b.size(), b.entries(), b'q');
    match convention {
        IsoConvention::Strict => CanonicalKey(direct),
        IsoConvention::IdentifyOpposite => {
            let neg: Vec<i64> = b.entries().iter().map(|&v| -v).collect();
            let reversed = canon_matrix(b.size(), &neg, b'q');
            CanonicalKey(direct.min(reversed))
        }
    }
}

/// Canonical key of a simple graph.
pub fn canonical_graph_key(g: &SimpleGraph) -> CanonicalKey {
    let n = g.size();
    let mut m = vec![0i64; n * n];
    for (a, b) in g.edges() {
        m[a * n + b] = 1;
        m[b * n + a] = 1;
    }
    CanonicalKey(canon_matrix(n, &m, b'g'))
}

pub fn is_quiver_isomorphic(a: &Quiver, b: &Quiver, convention: IsoConvention) -> bool {
    a.size() == b.size()
        && canonical_quiver_key(a, convention) == canonical_quiver_key(b, convention)
}

pub fn is_graph_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    a.size() == b.size() && canonical_graph_key(a) == canonical_graph_key(b)
}

/// Canonical serialization of `m` under simultaneous row/column permutation:
/// a kind byte, the size, then the entries of the minimal relabeling.
fn canon_matrix(n: usize, m: &[i64], kind: u8) -> Vec<u8> {
    debug_assert_eq!(m.len(), n * n);
    let mut best: Option<Vec<i64>> = None;
    if n == 0 {
        best = Some(Vec::new());
    } else {
        search(n, m, vec![0; n], &mut best);
    }
    let canon = best.expect("at least one leaf is always reached");
    let mut out = Vec::with_capacity(5 + canon.len() * 8);
    out.push(kind);
    out.extend_from_slice(&(n as u32).to_be_bytes());
    for v in canon {
        out.extend_from_slice(&v.to_be_bytes());
    }
    out
}

/// A vertex's current color, its sorted arrow profile, and its index.
type VertexSignature = (u32, Vec<(u32, i64, i64)>, usize);

/// Splits the coloring by vertex signatures until it stops changing.
fn refine(n: usize, m: &[i64], colors: &mut Vec<u32>) {
    loop {
        let mut sigs: Vec<VertexSignature> = (0..n)
            .map(|v| {
                let mut s: Vec<(u32, i64, i64)> = (0..n)
                    .filter(|&w| w != v)
                    .filter_map(|w| {
                        let out = m[v * n + w];
                        let inn = m[w * n + v];
                        if out == 0 && inn == 0 {
                            None
                        } else {
                            Some((colors[w], out, inn))
                        }
                    })
                    .collect();
                s.sort_unstable();
                (colors[v], s, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0u32; n];
        let mut c = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                c += 1;
            }
            next[sigs[i].2] = c;
        }
        let before = colors
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        let after = c as usize + 1;
        *colors = next;
        if after == before {
            return;
        }
    }
}

fn search(n: usize, m: &[i64], mut colors: Vec<u32>, best: &mut Option<Vec<i64>>) {
    refine(n, m, &mut colors);
    // Locate the smallest non-singleton color class, earliest color first.
    let mut cell: Option<(u32, usize)> = None;
    let mut counts = std::collections::BTreeMap::new();
    for &c in &colors {
        *counts.entry(c).or_insert(0usize) += 1;
    }
    for (&c, &count) in &counts {
        if count > 1 && cell.is_none_or(|(_, sz)| count < sz) {
            cell = Some((c, count));
        }
    }
    match cell {
        None => {
            // Discrete coloring: vertex with color c lands at position c.
            let mut vertex_at = vec![0usize; n];
            for v in 0..n {
                vertex_at[colors[v] as usize] = v;
            }
            let mut pm = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    pm.push(m[vertex_at[i] * n + vertex_at[j]]);
                }
            }
            if best.as_ref().is_none_or(|b| pm < *b) {
                *best = Some(pm);
            }
        }
        Some((c, _)) => {
            for v in 0..n {
                if colors[v] == c {
                    let mut branched = colors.clone();
                    branched[v] = n as u32 + 1;
                    search(n, m, branched, best);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(items.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, items, out);
                if k.is_multiple_of(2) {
                    items.swap(i, k - 1);
                } else {
                    items.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut items, &mut out);
        out
    }

    fn brute_quiver_iso(a: &Quiver, b: &Quiver) -> bool {
        a.size() == b.size() && permutations(a.size()).iter().any(|p| &a.relabel(p) == b)
    }

    fn brute_graph_iso(a: &SimpleGraph, b: &SimpleGraph) -> bool {
        a.size() == b.size() && permutations(a.size()).iter().any(|p| &a.relabel(p) == b)
    }

    fn random_quiver(rng: &mut ChaCha8Rng, n: usize) -> Quiver {
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(0.5) {
                    let m = rng.gen_range(1..=2);
                    if rng.gen_bool(0.5) {
                        arrows.push((i, j, m));
                    } else {
                        arrows.push((j, i, m));
                    }
                }
            }
        }
        Quiver::from_arrows(n, &arrows).unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(0.4) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn key_is_relabeling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=7);
            let q = random_quiver(&mut rng, n);
            let p = random_perm(&mut rng, n);
            for conv in [IsoConvention::Strict, IsoConvention::IdentifyOpposite] {
                assert_eq!(
                    canonical_quiver_key(&q, conv),
                    canonical_quiver_key(&q.relabel(&p), conv)
                );
            }
            let g = random_graph(&mut rng, n);
            assert_eq!(canonical_graph_key(&g), canonical_graph_key(&g.relabel(&p)));
        }
    }

    #[test]
    fn quiver_keys_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for round in 0..60 {
            let n = rng.gen_range(2..=6);
            let a = random_quiver(&mut rng, n);
            let b = if round % 2 == 0 {
                a.relabel(&random_perm(&mut rng, n))
            } else {
                random_quiver(&mut rng, n)
            };
            assert_eq!(
                is_quiver_isomorphic(&a, &b, IsoConvention::Strict),
                brute_quiver_iso(&a, &b),
                "strict mismatch on round {round}: {} vs {}",
                a.to_text(),
                b.to_text()
            );
        }
    }

    #[test]
    fn graph_keys_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for round in 0..60 {
            let n = rng.gen_range(2..=6);
            let a = random_graph(&mut rng, n);
            let b = if round % 2 == 0 {
                a.relabel(&random_perm(&mut rng, n))
            } else {
                random_graph(&mut rng, n)
            };
            assert_eq!(
                is_graph_isomorphic(&a, &b),
                brute_graph_iso(&a, &b),
                "graph mismatch on round {round}"
            );
        }
    }

    #[test]
    fn opposite_convention_merges_sink_and_source() {
        // Orientations of the 3-vertex path: middle vertex a sink vs a source.
        let sink = Quiver::from_arrows(3, &[(0, 1, 1), (2, 1, 1)]).unwrap();
        let source = Quiver::from_arrows(3, &[(1, 0, 1), (1, 2, 1)]).unwrap();
        assert!(!is_quiver_isomorphic(&sink, &source, IsoConvention::Strict));
        assert!(is_quiver_isomorphic(
            &sink,
            &source,
            IsoConvention::IdentifyOpposite
        ));
        // The directed path reverses onto itself.
        let path = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(is_quiver_isomorphic(
            &path,
            &path.opposite(),
            IsoConvention::Strict
        ));
    }

    #[test]
    fn regular_graphs_that_differ_get_distinct_keys() {
        // Both 3-regular on 6 vertices: the complete bipartite graph versus
        // the triangular prism. Refinement alone cannot split either one.
        let k33 = SimpleGraph::from_edges(
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
        .unwrap();
        let prism = SimpleGraph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap();
        assert!(!is_graph_isomorphic(&k33, &prism));
        assert!(is_graph_isomorphic(&k33, &k33.relabel(&[5, 3, 1, 0, 2, 4])));
    }

    #[test]
    fn multiplicities_distinguish_quivers() {
        let single = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let double = Quiver::from_arrows(2, &[(0, 1, 2)]).unwrap();
        assert!(!is_quiver_isomorphic(
            &single,
            &double,
            IsoConvention::Strict
        ));
    }

    #[test]
    fn hex_round_trip() {
        let q = Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 1)]).unwrap();
        let key = canonical_quiver_key(&q, IsoConvention::Strict);
        let hex = key.to_hex();
        assert_eq!(CanonicalKey::from_hex(&hex), Some(key));
        assert_eq!(CanonicalKey::from_hex("zz"), None);
        assert_eq!(CanonicalKey::from_hex("abc"), None);
    }
}
