//! Ideal triangulations of marked surfaces, their signed adjacency
//! matrices, and arc flips.
//!
//! A surface is described by its genus, number of boundary components,
//! punctures, and marked points on the boundary. Every ideal triangulation
//! of it has exactly `6g + 3b + 3p + c - 6` arcs, labeled `1..=n`, while
//! boundary segments take the labels `n+1..=n+c`. A triangle is either an
//! ordinary cyclic triple of labels, listed in clockwise order, or a
//! self-folded triangle given by its folded (inner) and outer arc.
//!
//! The signed adjacency matrix sums, over the non-self-folded triangles,
//! `+1` into `b[i][j]` whenever a side mapping to `i` is followed clockwise
//! by a side mapping to `j`, where a folded arc maps to its outer arc and
//! every other label to itself. Flipping an arc rebuilds the two incident
//! triangles; flips and matrix mutation commute, which the tests use as the
//! main correctness oracle.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::quiver::ExchangeMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid surface signature: {0}")]
    InvalidSignature(String),
    #[error("inconsistent triangulation: {0}")]
    Inconsistent(String),
    #[error("arc {0} cannot be flipped: {1}")]
    NotFlippable(usize, &'static str),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Topological type of a marked surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceSignature {
    pub genus: u32,
    pub boundary_components: u32,
    pub punctures: u32,
    /// Total marked points on the boundary.
    pub boundary_marked: u32,
}

impl SurfaceSignature {
    pub fn new(genus: u32, boundary_components: u32, punctures: u32, boundary_marked: u32) -> Self {
        SurfaceSignature {
            genus,
            boundary_components,
            punctures,
            boundary_marked,
        }
    }

    /// Number of arcs in any ideal triangulation: `6g + 3b + 3p + c - 6`.
    pub fn arc_count(&self) -> Result<usize, SurfaceError> {
        let (g, b, p, c) = (
            self.genus as i64,
            self.boundary_components as i64,
            self.punctures as i64,
            self.boundary_marked as i64,
        );
        if b == 0 && c > 0 {
            return Err(SurfaceError::InvalidSignature(
                "boundary marked points need a boundary".into(),
            ));
        }
        if b > 0 && c < b {
            return Err(SurfaceError::InvalidSignature(
                "every boundary component needs a marked point".into(),
            ));
        }
        if p == 0 && c == 0 {
            return Err(SurfaceError::InvalidSignature(
                "the surface needs at least one marked point".into(),
            ));
        }
        let n = 6 * g + 3 * b + 3 * p + c - 6;
        if n < 1 {
            return Err(SurfaceError::InvalidSignature(format!(
                "surface admits no arcs (formula gives {n})"
            )));
        }
        Ok(n as usize)
    }
}

/// One triangle of an ideal triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Triangle {
    /// Sides in clockwise order; rotations of the triple mean the same
    /// triangle.
    Ordinary([usize; 3]),
    /// Folded arc wrapped by an outer arc (or, for a once-punctured monogon,
    /// by a boundary segment).
    SelfFolded { folded: usize, outer: usize },
}

impl Triangle {
    pub fn is_self_folded(&self) -> bool {
        matches!(self, Triangle::SelfFolded { .. })
    }

    /// The triangle as a clockwise slot triple; a self-folded triangle
    /// occupies one outer and two folded slots.
    pub fn slots(&self) -> [usize; 3] {
        match *self {
            Triangle::Ordinary(s) => s,
            Triangle::SelfFolded { folded, outer } => [outer, folded, folded],
        }
    }

    /// Lexicographically smallest rotation, for ordering and comparison.
    fn normalized(&self) -> [usize; 3] {
        let s = self.slots();
        let rots = [s, [s[1], s[2], s[0]], [s[2], s[0], s[1]]];
        *rots.iter().min().unwrap()
    }
}

/// An ideal triangulation of a marked surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    signature: SurfaceSignature,
    arc_count: usize,
    triangles: Vec<Triangle>,
}

impl Triangulation {
    /// Builds and validates a triangulation.
    pub fn new(
        signature: SurfaceSignature,
        triangles: Vec<Triangle>,
    ) -> Result<Self, SurfaceError> {
        let arc_count = signature.arc_count()?;
        let t = Triangulation {
            signature,
            arc_count,
            triangles,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn signature(&self) -> SurfaceSignature {
        self.signature
    }

    /// Number of arcs; arcs are labeled `1..=arc_count()`.
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Boundary segments are labeled `arc_count()+1 ..= arc_count()+this`.
    pub fn boundary_count(&self) -> usize {
        self.signature.boundary_marked as usize
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    fn validate(&self) -> Result<(), SurfaceError> {
        let n = self.arc_count;
        let c = self.boundary_count();
        let expected_triangles = (2 * n + c) / 3;
        if !(2 * n + c).is_multiple_of(3) || self.triangles.len() != expected_triangles {
            return Err(SurfaceError::Inconsistent(format!(
                "expected {expected_triangles} triangles, found {}",
                self.triangles.len()
            )));
        }
        let mut slot_count = vec![0usize; n + c + 1];
        for t in &self.triangles {
            match *t {
                Triangle::Ordinary(s) => {
                    if s[0] == s[1] || s[1] == s[2] || s[0] == s[2] {
                        return Err(SurfaceError::Inconsistent(format!(
                            "ordinary triangle ({}, {}, {}) repeats a label; a folded arc \
                             must be written as self-folded",
                            s[0], s[1], s[2]
                        )));
                    }
                }
                Triangle::SelfFolded { folded, outer } => {
                    if folded == 0 || folded > n {
                        return Err(SurfaceError::Inconsistent(format!(
                            "folded label {folded} is not an arc"
                        )));
                    }
                    if folded == outer {
                        return Err(SurfaceError::Inconsistent(format!(
                            "self-folded triangle at arc {folded} wraps itself"
                        )));
                    }
                }
            }
            for s in t.slots() {
                if s == 0 || s > n + c {
                    return Err(SurfaceError::Inconsistent(format!(
                        "label {s} outside 1..={}",
                        n + c
                    )));
                }
                slot_count[s] += 1;
            }
        }
        for (arc, &count) in slot_count.iter().enumerate().skip(1) {
            if arc <= n && count != 2 {
                return Err(SurfaceError::Inconsistent(format!(
                    "arc {arc} fills {count} slots instead of 2"
                )));
            }
            if arc > n && count != 1 {
                return Err(SurfaceError::Inconsistent(format!(
                    "boundary segment {arc} fills {count} slots instead of 1"
                )));
            }
        }
        Ok(())
    }

    /// Maps a folded arc to its outer arc and any other label to itself.
    pub fn pi(&self, label: usize) -> usize {
        for t in &self.triangles {
            if let Triangle::SelfFolded { folded, outer } = *t {
                if label == folded {
                    return outer;
                }
            }
        }
        label
    }

    /// Signed adjacency matrix over the arcs.
    pub fn signed_adjacency(&self) -> ExchangeMatrix {
        let n = self.arc_count;
        // Preimages of the folded-to-outer map, restricted to arcs.
        let mut pre: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for arc in 1..=n {
            pre.entry(self.pi(arc)).or_default().push(arc);
        }
        let empty = Vec::new();
        let mut b = vec![0i64; n * n];
        for t in &self.triangles {
            if t.is_self_folded() {
                continue;
            }
            let s = t.slots();
            for idx in 0..3 {
                let from = pre.get(&s[idx]).unwrap_or(&empty);
                let to = pre.get(&s[(idx + 1) % 3]).unwrap_or(&empty);
                for &i in from {
                    for &j in to {
                        b[(i - 1) * n + (j - 1)] += 1;
                        b[(j - 1) * n + (i - 1)] -= 1;
                    }
                }
            }
        }
        ExchangeMatrix::from_entries(n, b).expect("accumulation is skew-symmetric")
    }

    /// Whether [`Triangulation::flip`] accepts this label.
    pub fn is_flippable(&self, label: usize) -> bool {
        label >= 1
            && label <= self.arc_count
            && !self
                .triangles
                .iter()
                .any(|t| matches!(*t, Triangle::SelfFolded { folded, .. } if folded == label))
    }

    /// All labels that can be flipped.
    pub fn flippable_arcs(&self) -> Vec<usize> {
        (1..=self.arc_count)
            .filter(|&k| self.is_flippable(k))
            .collect()
    }

    /// Replaces arc `k` by the other diagonal of the quadrilateral formed by
    /// its two incident triangles. The new arc takes over the label `k`.
    pub fn flip(&self, k: usize) -> Result<Triangulation, SurfaceError> {
        if k == 0 || k > self.arc_count {
            return Err(SurfaceError::NotFlippable(k, "not an interior arc"));
        }
        if !self.is_flippable(k) {
            return Err(SurfaceError::NotFlippable(
                k,
                "a folded arc is locked inside its self-folded triangle",
            ));
        }
        let incident: Vec<usize> = self
            .triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| t.slots().contains(&k))
            .map(|(i, _)| i)
            .collect();
        if incident.len() != 2 {
            return Err(SurfaceError::Inconsistent(format!(
                "arc {k} lies in {} triangles",
                incident.len()
            )));
        }
        let rotate_first = |slots: [usize; 3]| -> [usize; 3] {
            let p = slots.iter().position(|&s| s == k).expect("arc present");
            [slots[p], slots[(p + 1) % 3], slots[(p + 2) % 3]]
        };
        let t1 = rotate_first(self.triangles[incident[0]].slots());
        let t2 = rotate_first(self.triangles[incident[1]].slots());
        let (a, b) = (t1[1], t1[2]);
        let (c, d) = (t2[1], t2[2]);
        let rebuild = |s: [usize; 3]| -> Triangle {
            if s[1] == s[2] {
                Triangle::SelfFolded {
                    folded: s[1],
                    outer: s[0],
                }
            } else {
                Triangle::Ordinary(s)
            }
        };
        let mut triangles = self.triangles.clone();
        triangles[incident[0]] = rebuild([k, b, c]);
        triangles[incident[1]] = rebuild([k, d, a]);
        let out = Triangulation {
            signature: self.signature,
            arc_count: self.arc_count,
            triangles,
        };
        out.validate()?;
        Ok(out)
    }

    /// Applies flips left to right.
    pub fn apply_flips(&self, ks: &[usize]) -> Result<Triangulation, SurfaceError> {
        let mut t = self.clone();
        for &k in ks {
            t = t.flip(k)?;
        }
        Ok(t)
    }

    /// Equality up to triangle order and rotation of the triples.
    pub fn same_triangulation(&self, other: &Triangulation) -> bool {
        if self.signature != other.signature {
            return false;
        }
        let mut a: Vec<[usize; 3]> = self.triangles.iter().map(Triangle::normalized).collect();
        let mut b: Vec<[usize; 3]> = other.triangles.iter().map(Triangle::normalized).collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// Serializes to the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "surface {} {} {} {}",
            self.signature.genus,
            self.signature.boundary_components,
            self.signature.punctures,
            self.signature.boundary_marked
        )
        .unwrap();
        writeln!(s, "arcs {}", self.arc_count).unwrap();
        let mut sorted = self.triangles.clone();
        sorted.sort_by_key(|t| (t.is_self_folded(), t.normalized()));
        for t in sorted {
            match t {
                Triangle::Ordinary(sl) => {
                    let n = t.normalized();
                    let _ = sl;
                    writeln!(s, "triangle {} {} {}", n[0], n[1], n[2]).unwrap();
                }
                Triangle::SelfFolded { folded, outer } => {
                    writeln!(s, "folded {folded} {outer}").unwrap();
                }
            }
        }
        s
    }

    /// Parses the format produced by [`Triangulation::to_text`]. Blank lines
    /// and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Self, SurfaceError> {
        let mut signature: Option<SurfaceSignature> = None;
        let mut declared_arcs: Option<usize> = None;
        let mut triangles = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_num = |s: &str| -> Result<usize, SurfaceError> {
                s.parse().map_err(|_| SurfaceError::Parse {
                    line: line_no,
                    msg: format!("bad number `{s}`"),
                })
            };
            match fields[0] {
                "surface" if fields.len() == 5 => {
                    signature = Some(SurfaceSignature::new(
                        parse_num(fields[1])? as u32,
                        parse_num(fields[2])? as u32,
                        parse_num(fields[3])? as u32,
                        parse_num(fields[4])? as u32,
                    ));
                }
                "arcs" if fields.len() == 2 => {
                    declared_arcs = Some(parse_num(fields[1])?);
                }
                "triangle" if fields.len() == 4 => {
                    triangles.push(Triangle::Ordinary([
                        parse_num(fields[1])?,
                        parse_num(fields[2])?,
                        parse_num(fields[3])?,
                    ]));
                }
                "folded" if fields.len() == 3 => {
                    triangles.push(Triangle::SelfFolded {
                        folded: parse_num(fields[1])?,
                        outer: parse_num(fields[2])?,
                    });
                }
                _ => {
                    return Err(SurfaceError::Parse {
                        line: line_no,
                        msg: format!("unrecognized line `{line}`"),
                    });
                }
            }
        }
        let signature = signature.ok_or(SurfaceError::Parse {
            line: 0,
            msg: "missing `surface <g> <b> <p> <c>` header".into(),
        })?;
        let t = Triangulation::new(signature, triangles)?;
        if let Some(d) = declared_arcs {
            if d != t.arc_count {
                return Err(SurfaceError::Parse {
                    line: 0,
                    msg: format!("declared {d} arcs but the signature gives {}", t.arc_count),
                });
            }
        }
        Ok(t)
    }
}

/// Triangulation of the once-punctured torus: two triangles sharing all
/// three arcs.
pub fn once_punctured_torus() -> Triangulation {
    Triangulation::new(
        SurfaceSignature::new(1, 0, 1, 0),
        vec![Triangle::Ordinary([1, 2, 3]), Triangle::Ordinary([1, 2, 3])],
    )
    .expect("fixed valid data")
}

/// Triangulation of the four-times-punctured sphere: a central triangle on
/// arcs 1, 2, 3 whose sides each carry a self-folded triangle with folded
/// arcs 4, 5, 6.
pub fn four_punctured_sphere() -> Triangulation {
    Triangulation::new(
        SurfaceSignature::new(0, 0, 4, 0),
        vec![
            Triangle::Ordinary([1, 2, 3]),
            Triangle::SelfFolded {
                folded: 4,
                outer: 1,
            },
            Triangle::SelfFolded {
                folded: 5,
                outer: 2,
            },
            Triangle::SelfFolded {
                folded: 6,
                outer: 3,
            },
        ],
    )
    .expect("fixed valid data")
}

/// Fan triangulation of an unpunctured polygon with `m >= 4` boundary
/// marked points: all diagonals from the first vertex.
pub fn polygon(m: usize) -> Triangulation {
    assert!(
        m >= 4,
        "a polygon needs at least four vertices to have arcs"
    );
    let n = m - 3;
    // Vertices 1..=m clockwise; diagonal to vertex j+2 is arc j, and the
    // boundary segment from vertex v to v+1 is n+v.
    let seg = |v: usize| n + v;
    let mut triangles = Vec::new();
    triangles.push(Triangle::Ordinary([seg(1), seg(2), 1]));
    for j in 1..n {
        triangles.push(Triangle::Ordinary([j, seg(j + 2), j + 1]));
    }
    triangles.push(Triangle::Ordinary([n, seg(m - 1), seg(m)]));
    Triangulation::new(SurfaceSignature::new(0, 1, 0, m as u32), triangles)
        .expect("fan data is valid")
}

/// Triangulation of the torus with `p >= 1` punctures, built from `p`
/// cylinders: cylinder `i` carries arcs `v_i = i`, `h_i = p + i`,
/// `g_i = 2p + i` and triangles `(g_i, v_{i+1}, h_i)`, `(v_i, h_i, g_i)`.
pub fn torus_with_punctures(p: usize) -> Triangulation {
    assert!(p >= 1);
    let v = |i: usize| 1 + (i % p);
    let h = |i: usize| p + 1 + (i % p);
    let g = |i: usize| 2 * p + 1 + (i % p);
    let mut triangles = Vec::new();
    for i in 0..p {
        triangles.push(Triangle::Ordinary([g(i), v(i + 1), h(i)]));
        triangles.push(Triangle::Ordinary([v(i), h(i), g(i)]));
    }
    Triangulation::new(SurfaceSignature::new(1, 0, p as u32, 0), triangles)
        .expect("cylinder data is valid")
}
