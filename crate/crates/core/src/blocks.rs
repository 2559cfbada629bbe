//! The five glueable blocks and the constructions assembled from them.
//!
//! A block is a small quiver with designated outlet vertices. A collection
//! of blocks is glued by choosing a partial matching on the combined outlet
//! set (never matching an outlet to itself or within its own block),
//! identifying each matched pair, and summing arrows so that opposite pairs
//! cancel. The arrow patterns live in `data/blocks.dat`.
//!
//! On top of [`glue`] this module builds the named constructions: the
//! concentric-cycle graphs `R_n` of genus n, the quivers `T_n` whose
//! underlying graphs realize a subdivision of `R_n`, the cyclic torus
//! quivers, and the four-punctured-sphere quiver.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use thiserror::Error;

use crate::quiver::{ExchangeMatrix, Quiver, SimpleGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlockError {
    #[error("block index {0} is out of range")]
    BadBlock(usize),
    #[error("vertex {vertex} of block {block} is not an outlet")]
    NotAnOutlet { block: usize, vertex: usize },
    #[error("outlet {vertex} of block {block} is matched twice")]
    OutletReused { block: usize, vertex: usize },
    #[error("cannot match two outlets of block {0} with each other")]
    SameBlock(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    I,
    II,
    III,
    IV,
    V,
}

impl BlockKind {
    pub const ALL: [BlockKind; 5] = [
        BlockKind::I,
        BlockKind::II,
        BlockKind::III,
        BlockKind::IV,
        BlockKind::V,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BlockKind::I => "I",
            BlockKind::II => "II",
            BlockKind::III => "III",
            BlockKind::IV => "IV",
            BlockKind::V => "V",
        }
    }

    pub fn from_label(s: &str) -> Option<BlockKind> {
        BlockKind::ALL.into_iter().find(|k| k.label() == s)
    }
}

/// One block: local vertices are `1..=size` as printed in `blocks.dat`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub size: usize,
    pub outlets: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
}

impl Block {
    pub fn is_outlet(&self, vertex: usize) -> bool {
        self.outlets.contains(&vertex)
    }
}

/// The bundled definition of a block kind.
pub fn block(kind: BlockKind) -> &'static Block {
    &block_set()[kind as usize]
}

fn block_set() -> &'static [Block; 5] {
    static SET: OnceLock<[Block; 5]> = OnceLock::new();
    SET.get_or_init(|| parse_blocks(include_str!("../data/blocks.dat")))
}

fn parse_blocks(text: &str) -> [Block; 5] {
    let mut found: Vec<Block> = Vec::new();
    let mut current: Option<Block> = None;
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "blocks" => assert_eq!(fields.get(1), Some(&"v1"), "unknown blocks.dat version"),
            "block" => {
                if let Some(b) = current.take() {
                    found.push(b);
                }
                let kind = BlockKind::from_label(fields[1]).expect("known block kind");
                current = Some(Block {
                    kind,
                    size: 0,
                    outlets: Vec::new(),
                    arrows: Vec::new(),
                });
            }
            "vertices" => {
                current.as_mut().expect("inside a stanza").size =
                    fields[1].parse().expect("vertex count");
            }
            "outlets" => {
                let b = current.as_mut().expect("inside a stanza");
                b.outlets = fields[1..]
                    .iter()
                    .map(|f| f.parse().expect("outlet id"))
                    .collect();
            }
            "arrow" => {
                let b = current.as_mut().expect("inside a stanza");
                b.arrows.push((
                    fields[1].parse().expect("arrow tail"),
                    fields[2].parse().expect("arrow head"),
                ));
            }
            other => panic!("unrecognized blocks.dat directive `{other}`"),
        }
    }
    found.extend(current);
    let mut set: [Block; 5] = found.try_into().expect("exactly five blocks");
    for (i, b) in set.iter().enumerate() {
        assert_eq!(b.kind as usize, i, "blocks.dat lists kinds in order");
        assert!(b.size >= 2);
        assert!(b.outlets.iter().all(|&v| v >= 1 && v <= b.size));
        assert!(b.arrows.iter().all(|&(u, v)| u != v
            && u >= 1
            && u <= b.size
            && v >= 1
            && v <= b.size));
    }
    set.sort_by_key(|b| b.kind);
    set
}

/// Addresses one outlet: block position in the glued collection plus the
/// local vertex id from `blocks.dat`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutletRef {
    pub block: usize,
    pub vertex: usize,
}

impl OutletRef {
    pub fn new(block: usize, vertex: usize) -> Self {
        OutletRef { block, vertex }
    }
}

/// A glued quiver together with the fate of every block vertex.
#[derive(Debug, Clone)]
pub struct Gluing {
    pub quiver: Quiver,
    vertex_of: Vec<Vec<usize>>,
}

impl Gluing {
    /// The glued vertex that local `vertex` of the block at `index` became.
    pub fn vertex(&self, index: usize, vertex: usize) -> usize {
        self.vertex_of[index][vertex - 1]
    }
}

/// Glues the blocks along the matched outlet pairs and returns the quiver
/// with the vertex correspondence.
pub fn glue_detailed(
    kinds: &[BlockKind],
    matching: &[(OutletRef, OutletRef)],
) -> Result<Gluing, BlockError> {
    let blocks: Vec<&Block> = kinds.iter().map(|&k| block(k)).collect();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut total = 0usize;
    for b in &blocks {
        offsets.push(total);
        total += b.size;
    }
    let resolve = |r: &OutletRef| -> Result<usize, BlockError> {
        let b = blocks.get(r.block).ok_or(BlockError::BadBlock(r.block))?;
        if !b.is_outlet(r.vertex) {
            return Err(BlockError::NotAnOutlet {
                block: r.block,
                vertex: r.vertex,
            });
        }
        Ok(offsets[r.block] + r.vertex - 1)
    };
    let mut partner: Vec<Option<usize>> = vec![None; total];
    for (a, b) in matching {
        if a.block == b.block {
            return Err(BlockError::SameBlock(a.block));
        }
        let ga = resolve(a)?;
        let gb = resolve(b)?;
        if partner[ga].is_some() {
            return Err(BlockError::OutletReused {
                block: a.block,
                vertex: a.vertex,
            });
        }
        if partner[gb].is_some() {
            return Err(BlockError::OutletReused {
                block: b.block,
                vertex: b.vertex,
            });
        }
        partner[ga] = Some(gb);
        partner[gb] = Some(ga);
    }
    // Identified pairs collapse onto their smaller member; survivors are
    // numbered in order of first appearance.
    let mut compact = vec![usize::MAX; total];
    let mut n = 0usize;
    for v in 0..total {
        if partner[v].is_none_or(|p| p > v) {
            compact[v] = n;
            n += 1;
        }
    }
    for v in 0..total {
        if compact[v] == usize::MAX {
            compact[v] = compact[partner[v].expect("only merged vertices lack ids")];
        }
    }
    let mut entries = vec![0i64; n * n];
    for (bi, blk) in blocks.iter().enumerate() {
        for &(u, v) in &blk.arrows {
            let gu = compact[offsets[bi] + u - 1];
            let gv = compact[offsets[bi] + v - 1];
            entries[gu * n + gv] += 1;
            entries[gv * n + gu] -= 1;
        }
    }
    let matrix = ExchangeMatrix::from_entries(n, entries)
        .expect("matched pairs never merge two vertices of one block");
    let quiver = Quiver::try_from(&matrix).expect("a skew-symmetric sum has no 2-cycles");
    let vertex_of = blocks
        .iter()
        .enumerate()
        .map(|(bi, blk)| (0..blk.size).map(|v| compact[offsets[bi] + v]).collect())
        .collect();
    Ok(Gluing { quiver, vertex_of })
}

/// Glues the blocks along the matched outlet pairs.
pub fn glue(
    kinds: &[BlockKind],
    matching: &[(OutletRef, OutletRef)],
) -> Result<Quiver, BlockError> {
    glue_detailed(kinds, matching).map(|g| g.quiver)
}

fn rectangle_gadget_detailed() -> Gluing {
    use BlockKind::II;
    // Corners a, b, c, d; triangles (a,b,x), (c,d,x), (b,c,y), (d,a,y).
    let kinds = [II, II, II, II];
    let m = |b1, v1, b2, v2| (OutletRef::new(b1, v1), OutletRef::new(b2, v2));
    let matching = [
        m(0, 1, 3, 2), // a
        m(0, 2, 2, 1), // b
        m(1, 1, 2, 2), // c
        m(1, 2, 3, 1), // d
        m(0, 3, 1, 3), // x
        m(2, 3, 3, 3), // y
    ];
    glue_detailed(&kinds, &matching).expect("fixed valid matching")
}

/// Four oriented triangles glued around a 4-cycle: the unit that replaces
/// one rectangle in [`construct_tn`], shown standalone. Six vertices, the
/// corner cycle plus two interior hubs.
pub fn rectangle_gadget() -> Quiver {
    rectangle_gadget_detailed().quiver
}

/// Positions of the cycle vertices and the chord pattern of `R_n`.
struct RnLayout {
    n: usize,
}

#[derive(Debug, Clone)]
struct Rect {
    corners: [usize; 4],
    edges: [(usize, usize); 4],
    in_s: bool,
}

impl RnLayout {
    fn ring(&self) -> usize {
        4 * self.n
    }

    /// Vertex of cycle `j` (1 = innermost) at angular position `i`.
    fn id(&self, j: usize, i: usize) -> usize {
        (j - 1) * self.ring() + i % self.ring()
    }

    fn vertex_count(&self) -> usize {
        (self.n + 1) * self.ring()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut e = Vec::new();
        for j in 1..=n + 1 {
            for i in 0..self.ring() {
                e.push((self.id(j, i), self.id(j, i + 1)));
            }
        }
        for j in 1..=n {
            for i in 0..self.ring() {
                e.push((self.id(j, i), self.id(j + 1, i)));
            }
        }
        for i in 0..2 * n {
            e.push((self.id(n + 1, i), self.id(n + 1, i + 2 * n)));
        }
        e
    }

    fn graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.vertex_count(), &self.edges()).expect("valid layout")
    }

    /// The 4n² rectangles between consecutive cycles plus the 2n rectangles
    /// the chords cut out of the outermost cycle, each with its corners in
    /// boundary order and a flag for the alternating class containing the
    /// innermost rectangle at angular position 0.
    fn rectangles(&self) -> Vec<Rect> {
        let n = self.n;
        let norm = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut rects = Vec::new();
        for j in 1..=n {
            for i in 0..self.ring() {
                let c = [
                    self.id(j, i),
                    self.id(j, i + 1),
                    self.id(j + 1, i + 1),
                    self.id(j + 1, i),
                ];
                rects.push(Rect {
                    corners: c,
                    edges: [
                        norm(c[0], c[1]),
                        norm(c[1], c[2]),
                        norm(c[2], c[3]),
                        norm(c[3], c[0]),
                    ],
                    in_s: (j + i) % 2 == 1,
                });
            }
        }
        for i in 0..2 * n {
            let c = [
                self.id(n + 1, i),
                self.id(n + 1, i + 1),
                self.id(n + 1, i + 1 + 2 * n),
                self.id(n + 1, i + 2 * n),
            ];
            rects.push(Rect {
                corners: c,
                edges: [
                    norm(c[0], c[1]),
                    norm(c[1], c[2]),
                    norm(c[2], c[3]),
                    norm(c[3], c[0]),
                ],
                in_s: (n + i + 1) % 2 == 1,
            });
        }
        rects
    }
}

/// The graph `R_n`: `n + 1` concentric cycles of `4n` vertices joined by
/// radial edges, plus `2n` chords between antipodal vertices of the
/// outermost cycle. It has `4n(n + 1)` vertices, `8n² + 6n` edges, and
/// genus exactly `n`.
pub fn construct_rn(n: usize) -> SimpleGraph {
    assert!(n >= 1);
    RnLayout { n }.graph()
}

/// The outcome of [`construct_tn`], with the correspondence back to `R_n`.
///
/// Every vertex of `R_n` appears in the glued quiver at `vertex_images`, and
/// `edge_paths[e]` (indexed like `rn.edges()`) lists the vertices of the
/// path realizing the `e`-th edge of `R_n` in the underlying graph: matched
/// rectangle edges become two-edge paths through a private interior vertex,
/// while the edges carried by type IV blocks stay single edges. The paths
/// are internally disjoint, so the underlying graph contains a subdivision
/// of `R_n` and the genus of the quiver is at least `n`.
#[derive(Debug, Clone)]
pub struct TnAssembly {
    pub quiver: Quiver,
    pub rn: SimpleGraph,
    pub vertex_images: Vec<usize>,
    pub edge_paths: Vec<Vec<usize>>,
    pub type_ii_blocks: usize,
    pub type_iv_blocks: usize,
}

/// Builds `T_n` and reports how `R_n` sits inside it.
///
/// The rectangles of `R_n` split into two maximal classes of pairwise
/// edge-disjoint rectangles; each rectangle of the class containing the
/// innermost rectangle at angular position 0 becomes four type II blocks,
/// one per corner, joined through a fresh vertex in the middle of each
/// rectangle edge. The `2n` innermost edges left uncovered each become one
/// type IV block whose outlets are the edge's endpoints. In total
/// `8n² + 4n` type II and `2n` type IV blocks.
pub fn tn_assembly(n: usize) -> TnAssembly {
    assert!(n >= 1);
    let layout = RnLayout { n };
    let rn = layout.graph();
    let rects = layout.rectangles();

    #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    enum Site {
        RVertex(usize),
        Subdiv(usize, usize),
    }
    let mut copies: BTreeMap<Site, Vec<(usize, usize)>> = BTreeMap::new();
    let mut kinds: Vec<BlockKind> = Vec::new();
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for rect in rects.iter().filter(|r| r.in_s) {
        for e in rect.edges {
            assert!(covered.insert(e), "rectangles in one class share no edge");
        }
        for m in 0..4 {
            let b = kinds.len();
            kinds.push(BlockKind::II);
            let prev = rect.edges[(m + 3) % 4];
            let next = rect.edges[m];
            copies
                .entry(Site::RVertex(rect.corners[m]))
                .or_default()
                .push((b, 1));
            copies
                .entry(Site::Subdiv(prev.0, prev.1))
                .or_default()
                .push((b, 2));
            copies
                .entry(Site::Subdiv(next.0, next.1))
                .or_default()
                .push((b, 3));
        }
    }
    let type_ii_blocks = kinds.len();
    let uncovered: Vec<(usize, usize)> = rn.edges().filter(|e| !covered.contains(e)).collect();
    assert_eq!(
        uncovered.len(),
        2 * n,
        "only innermost edges stay uncovered"
    );
    for &(u, v) in &uncovered {
        let b = kinds.len();
        kinds.push(BlockKind::IV);
        copies.entry(Site::RVertex(u)).or_default().push((b, 1));
        copies.entry(Site::RVertex(v)).or_default().push((b, 2));
    }
    let type_iv_blocks = kinds.len() - type_ii_blocks;

    let matching: Vec<(OutletRef, OutletRef)> = copies
        .values()
        .map(|c| {
            assert_eq!(c.len(), 2, "every site is shared by exactly two blocks");
            (
                OutletRef::new(c[0].0, c[0].1),
                OutletRef::new(c[1].0, c[1].1),
            )
        })
        .collect();
    let gluing = glue_detailed(&kinds, &matching).expect("assembly matching is valid");

    let site_vertex = |site: &Site| -> usize {
        let (b, l) = copies[site][0];
        gluing.vertex(b, l)
    };
    let vertex_images: Vec<usize> = (0..rn.size())
        .map(|v| site_vertex(&Site::RVertex(v)))
        .collect();
    let edge_paths: Vec<Vec<usize>> = rn
        .edges()
        .map(|(u, v)| {
            let site = Site::Subdiv(u, v);
            if copies.contains_key(&site) {
                vec![vertex_images[u], site_vertex(&site), vertex_images[v]]
            } else {
                vec![vertex_images[u], vertex_images[v]]
            }
        })
        .collect();
    TnAssembly {
        quiver: gluing.quiver,
        rn,
        vertex_images,
        edge_paths,
        type_ii_blocks,
        type_iv_blocks,
    }
}

/// The quiver `T_n`: a block gluing whose underlying graph has genus
/// exactly `n`. See [`tn_assembly`] for the construction.
pub fn construct_tn(n: usize) -> Quiver {
    tn_assembly(n).quiver
}

/// The planar quiver of the `p`-punctured torus, glued from `2p` type II
/// blocks arranged cyclically (two per cylinder). Vertices are numbered
/// like the arcs of the matching triangulation: `i` for the vertical arc of
/// cylinder `i`, `p + i` for its horizontal arc, and `2p + i` for its
/// diagonal, so the result equals the signed adjacency matrix of the
/// triangulation, not merely an isomorphic copy. `p = 1` degenerates to the
/// Markov quiver.
pub fn torus_planar_quiver(p: usize) -> Quiver {
    assert!(p >= 1);
    use BlockKind::II;
    let kinds = vec![II; 2 * p];
    // Block 2i carries (v_i, h_i, g_i), block 2i+1 carries (g_i, v_{i+1}, h_i).
    let mut matching = Vec::with_capacity(3 * p);
    for i in 0..p {
        let b1 = 2 * i;
        let b2 = 2 * i + 1;
        let b1_next = 2 * ((i + 1) % p);
        matching.push((OutletRef::new(b1, 2), OutletRef::new(b2, 3)));
        matching.push((OutletRef::new(b1, 3), OutletRef::new(b2, 1)));
        matching.push((OutletRef::new(b2, 2), OutletRef::new(b1_next, 1)));
    }
    let g = glue_detailed(&kinds, &matching).expect("cyclic matching is valid");
    let mut perm = vec![0usize; 3 * p];
    for i in 0..p {
        perm[g.vertex(2 * i, 1)] = i;
        perm[g.vertex(2 * i, 2)] = p + i;
        perm[g.vertex(2 * i, 3)] = 2 * p + i;
    }
    g.quiver.relabel(&perm)
}

/// The quiver of the four-punctured sphere, glued from four type II blocks:
/// one triangle per face of the triangulation that pairs a central triangle
/// with three self-folded ones. Vertices `0..3` are the central arcs and
/// `3 + i` is the folded arc sharing row `i`, so the result equals the
/// triangulation's signed adjacency matrix exactly. Its underlying graph is
/// the octahedron, which is planar.
pub fn sphere4_quiver() -> Quiver {
    use BlockKind::II;
    let kinds = [II, II, II, II];
    // Triangles (o1,o2,o3), (o1,f2,f3), (f1,o2,f3), (f1,f2,o3).
    let m = |b1, v1, b2, v2| (OutletRef::new(b1, v1), OutletRef::new(b2, v2));
    let matching = [
        m(0, 1, 1, 1), // o1
        m(0, 2, 2, 2), // o2
        m(0, 3, 3, 3), // o3
        m(2, 1, 3, 1), // f1
        m(1, 2, 3, 2), // f2
        m(1, 3, 2, 3), // f3
    ];
    let g = glue_detailed(&kinds, &matching).expect("fixed valid matching");
    let mut perm = vec![0usize; 6];
    perm[g.vertex(0, 1)] = 0;
    perm[g.vertex(0, 2)] = 1;
    perm[g.vertex(0, 3)] = 2;
    perm[g.vertex(2, 1)] = 3;
    perm[g.vertex(1, 2)] = 4;
    perm[g.vertex(1, 3)] = 5;
    g.quiver.relabel(&perm)
}
