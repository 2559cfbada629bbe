//! Breadth-first enumeration of mutation classes up to isomorphism.
//!
//! Starting from a seed quiver, every vertex is mutated and the results are
//! deduplicated by canonical key, layer by layer, until nothing new shows up
//! or a limit trips. The layer merge is sequential and sorted, so the result
//! is identical no matter how many threads run the mutations.
//!
//! A finished enumeration can be written to and read back from a plain text
//! cache file, keyed by the seed's canonical form, and summarized into a
//! genus histogram of the underlying graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::genus::min_genus;
use crate::iso::{canonical_graph_key, canonical_quiver_key, CanonicalKey, IsoConvention};
use crate::quiver::{Quiver, QuiverError, SimpleGraph};

#[derive(Debug, Error)]
pub enum MutClassError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("cache parse error at line {line}: {msg}")]
    CacheFormat { line: usize, msg: String },
    #[error("genus search hit its budget on a graph class (bounds {lower}..={upper})")]
    InexactGenus { lower: u32, upper: u32 },
    #[error("operation needs a fully enumerated class, but this one was truncated")]
    IncompleteClass,
}

/// Caps that keep an enumeration from running away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplorationLimits {
    /// Stop after this many isomorphism classes.
    pub max_members: usize,
    /// Stop when an arrow multiplicity exceeds this; classes that keep
    /// growing arrows are mutation-infinite.
    pub max_entry: i64,
    /// Wall clock allowance, checked between layers.
    pub time_budget: Duration,
}

impl Default for ExplorationLimits {
    fn default() -> Self {
        ExplorationLimits {
            max_members: 100_000,
            max_entry: 12,
            time_budget: Duration::from_secs(600),
        }
    }
}

/// Which limit cut an enumeration short.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationReason {
    MemberCap,
    EntryCap,
    TimeBudget,
}

impl TruncationReason {
    pub fn label(self) -> &'static str {
        match self {
            TruncationReason::MemberCap => "member-cap",
            TruncationReason::EntryCap => "entry-cap",
            TruncationReason::TimeBudget => "time-budget",
        }
    }

    fn from_label(s: &str) -> Option<Self> {
        match s {
            "member-cap" => Some(TruncationReason::MemberCap),
            "entry-cap" => Some(TruncationReason::EntryCap),
            "time-budget" => Some(TruncationReason::TimeBudget),
            _ => None,
        }
    }
}

impl fmt::Display for TruncationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How members are counted when summarizing a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IsoMode {
    /// One count per quiver isomorphism class.
    #[default]
    QuiverIso,
    /// One count per reflection class: members that differ only by mutations
    /// at sinks or sources are counted once.
    ReflectionIso,
    /// One count per underlying-graph isomorphism class.
    GraphIso,
}

impl IsoMode {
    pub fn label(self) -> &'static str {
        match self {
            IsoMode::QuiverIso => "quiver",
            IsoMode::ReflectionIso => "reflection",
            IsoMode::GraphIso => "graph",
        }
    }
}

/// Result of enumerating a mutation class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub seed: Quiver,
    pub convention: IsoConvention,
    pub limits: ExplorationLimits,
    /// Canonical key of each member, with the smallest labeled representative
    /// encountered.
    pub members: BTreeMap<CanonicalKey, Quiver>,
    pub truncation: Option<TruncationReason>,
    /// Breadth-first layers processed.
    pub layers: usize,
}

impl ClassReport {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn contains(&self, q: &Quiver) -> bool {
        self.members
            .contains_key(&canonical_quiver_key(q, self.convention))
    }

    /// Distinct underlying graphs with the number of members mapping to each.
    pub fn graph_classes(&self) -> BTreeMap<CanonicalKey, (SimpleGraph, usize)> {
        let mut out: BTreeMap<CanonicalKey, (SimpleGraph, usize)> = BTreeMap::new();
        for q in self.members.values() {
            let g = q.underlying_graph();
            let key = canonical_graph_key(&g);
            out.entry(key).and_modify(|e| e.1 += 1).or_insert((g, 1));
        }
        out
    }
}

/// Enumerates the mutation class of `seed` up to isomorphism under
/// `convention`, stopping early if a limit trips.
pub fn enumerate_class(
    seed: &Quiver,
    convention: IsoConvention,
    limits: &ExplorationLimits,
) -> ClassReport {
    let start = Instant::now();
    let seed_key = canonical_quiver_key(seed, convention);
    let mut members: BTreeMap<CanonicalKey, Quiver> = BTreeMap::new();
    members.insert(seed_key, seed.clone());
    let mut truncation = None;
    if seed.max_arrow_multiplicity() > limits.max_entry {
        truncation = Some(TruncationReason::EntryCap);
    }
    let mut frontier: Vec<Quiver> = vec![seed.clone()];
    let mut layers = 0;
    while !frontier.is_empty() && truncation.is_none() {
        if start.elapsed() >= limits.time_budget {
            truncation = Some(TruncationReason::TimeBudget);
            break;
        }
        layers += 1;
        let mut candidates: Vec<(CanonicalKey, Quiver)> = frontier
            .par_iter()
            .flat_map_iter(|q| {
                (0..q.size()).map(move |k| {
                    let m = q.mutate(k).expect("vertex index in range");
                    (canonical_quiver_key(&m, convention), m)
                })
            })
            .collect();
        candidates.sort();
        candidates.dedup_by(|late, early| late.0 == early.0);
        let mut next = Vec::new();
        for (key, q) in candidates {
            if members.contains_key(&key) {
                continue;
            }
            if q.max_arrow_multiplicity() > limits.max_entry {
                truncation = Some(TruncationReason::EntryCap);
                break;
            }
            if members.len() >= limits.max_members {
                truncation = Some(TruncationReason::MemberCap);
                break;
            }
            members.insert(key, q.clone());
            next.push(q);
        }
        frontier = next;
    }
    ClassReport {
        seed: seed.clone(),
        convention,
        limits: limits.clone(),
        members,
        truncation,
        layers,
    }
}

/// Verdict of a mutation-equivalence query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    /// The enumeration was truncated before `b` appeared.
    Unknown,
}

/// Decides whether `b` lies in the mutation class of `a`, as far as the
/// limits allow.
pub fn are_mutation_equivalent(
    a: &Quiver,
    b: &Quiver,
    convention: IsoConvention,
    limits: &ExplorationLimits,
) -> Equivalence {
    if a.size() != b.size() {
        return Equivalence::NotEquivalent;
    }
    let report = enumerate_class(a, convention, limits);
    if report.contains(b) {
        Equivalence::Equivalent
    } else if report.is_complete() {
        Equivalence::NotEquivalent
    } else {
        Equivalence::Unknown
    }
}

/// Partitions the members of a fully enumerated class into reflection
/// classes: the finest grouping in which a member stays with its image under
/// mutation at any sink or source. Such a mutation only reverses the arrows
/// at that vertex, so all members of a group share an underlying graph.
///
/// Groups come back as sorted key lists, ordered by their first key.
pub fn reflection_groups(report: &ClassReport) -> Result<Vec<Vec<CanonicalKey>>, MutClassError> {
    if !report.is_complete() {
        return Err(MutClassError::IncompleteClass);
    }
    let keys: Vec<&CanonicalKey> = report.members.keys().collect();
    let index: BTreeMap<&CanonicalKey, usize> =
        keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut parent: Vec<usize> = (0..keys.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (key, q) in &report.members {
        let n = q.size();
        for k in 0..n {
            let sink = (0..n).all(|j| q.arrows(k, j) == 0);
            let source = (0..n).all(|j| q.arrows(j, k) == 0);
            if !(sink || source) {
                continue;
            }
            let image = q.mutate(k)?;
            let image_key = canonical_quiver_key(&image, report.convention);
            let Some(&b) = index.get(&image_key) else {
                return Err(MutClassError::IncompleteClass);
            };
            let a = index[key];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut buckets: BTreeMap<usize, Vec<CanonicalKey>> = BTreeMap::new();
    for (i, key) in keys.iter().enumerate() {
        let root = find(&mut parent, i);
        buckets.entry(root).or_default().push((*key).clone());
    }
    let mut groups: Vec<Vec<CanonicalKey>> = buckets.into_values().collect();
    for g in &mut groups {
        g.sort();
    }
    groups.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(groups)
}

/// Genus histogram of a mutation class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusDistribution {
    pub mode: IsoMode,
    /// Count per genus, in the chosen counting mode.
    pub counts: BTreeMap<u32, usize>,
    pub graph_classes: usize,
    pub members: usize,
}

impl GenusDistribution {
    pub fn count(&self, genus: u32) -> usize {
        self.counts.get(&genus).copied().unwrap_or(0)
    }
}

/// Computes the exact genus of every distinct underlying graph in the class
/// and tallies by genus, weighting each graph by the number of members,
/// reflection classes, or graph classes (one) that share it. Fails if any
/// single graph cannot be solved exactly within `per_graph_budget`.
pub fn genus_distribution(
    report: &ClassReport,
    mode: IsoMode,
    per_graph_budget: Duration,
) -> Result<GenusDistribution, MutClassError> {
    let graphs = report.graph_classes();
    let weights: BTreeMap<&CanonicalKey, usize> = match mode {
        IsoMode::QuiverIso => graphs.iter().map(|(k, (_, c))| (k, *c)).collect(),
        IsoMode::GraphIso => graphs.keys().map(|k| (k, 1)).collect(),
        IsoMode::ReflectionIso => {
            let mut per_graph: BTreeMap<CanonicalKey, usize> = BTreeMap::new();
            for group in reflection_groups(report)? {
                let rep = &report.members[&group[0]];
                let key = canonical_graph_key(&rep.underlying_graph());
                *per_graph.entry(key).or_insert(0) += 1;
            }
            graphs
                .keys()
                .map(|k| (k, per_graph.get(k).copied().unwrap_or(0)))
                .collect()
        }
    };
    let entries: Vec<(&CanonicalKey, &SimpleGraph)> =
        graphs.iter().map(|(k, (g, _))| (k, g)).collect();
    let genera: Vec<Result<u32, MutClassError>> = entries
        .par_iter()
        .map(|(_, g)| {
            let r = min_genus(g, per_graph_budget);
            r.exact().ok_or(MutClassError::InexactGenus {
                lower: r.lower,
                upper: r.upper,
            })
        })
        .collect();
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for ((key, _), genus) in entries.iter().zip(genera) {
        let genus = genus?;
        *counts.entry(genus).or_insert(0) += weights[key];
    }
    Ok(GenusDistribution {
        mode,
        counts,
        graph_classes: graphs.len(),
        members: report.len(),
    })
}

/// Cache file name for a canonical key: a 128-bit FNV-1a digest, since the
/// key itself grows with the square of the vertex count and would overflow
/// file name limits. Digest collisions are caught at load time by comparing
/// seeds.
fn cache_file_name(key: &CanonicalKey) -> String {
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut fwd: u64 = 0xcbf2_9ce4_8422_2325;
    let mut rev: u64 = 0x8422_2325_cbf2_9ce4;
    for &b in key.as_bytes() {
        fwd = (fwd ^ b as u64).wrapping_mul(PRIME);
    }
    for &b in key.as_bytes().iter().rev() {
        rev = (rev ^ b as u64).wrapping_mul(PRIME);
    }
    format!("{fwd:016x}{rev:016x}.class")
}

/// Writes the report under `dir`, one subdirectory per convention, named by
/// a digest of the seed's canonical key. Returns the file path.
pub fn save_class(report: &ClassReport, dir: &Path) -> Result<PathBuf, MutClassError> {
    let seed_key = canonical_quiver_key(&report.seed, report.convention);
    let subdir = dir.join(report.convention.label());
    std::fs::create_dir_all(&subdir)?;
    let path = subdir.join(cache_file_name(&seed_key));
    let mut out = Vec::new();
    writeln!(out, "class-cache v1")?;
    writeln!(out, "convention {}", report.convention.label())?;
    writeln!(out, "max-members {}", report.limits.max_members)?;
    writeln!(out, "max-entry {}", report.limits.max_entry)?;
    writeln!(out, "layers {}", report.layers)?;
    match report.truncation {
        None => writeln!(out, "complete true")?,
        Some(reason) => {
            writeln!(out, "complete false")?;
            writeln!(out, "truncated {}", reason.label())?;
        }
    }
    writeln!(out, "members {}", report.members.len())?;
    writeln!(out, "seed")?;
    write!(out, "{}", report.seed.to_text())?;
    for (key, q) in &report.members {
        writeln!(out, "key {}", key.to_hex())?;
        write!(out, "{}", q.to_text())?;
    }
    std::fs::write(&path, out)?;
    Ok(path)
}

/// Loads a previously saved enumeration for `seed`, if one exists. A file
/// whose stored seed belongs to a different class (a digest collision) is
/// treated as absent.
pub fn load_class(
    seed: &Quiver,
    convention: IsoConvention,
    dir: &Path,
) -> Result<Option<ClassReport>, MutClassError> {
    let seed_key = canonical_quiver_key(seed, convention);
    let path = dir
        .join(convention.label())
        .join(cache_file_name(&seed_key));
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path)?;
    let report = parse_class_cache(&text)?;
    if canonical_quiver_key(&report.seed, convention) != seed_key {
        return Ok(None);
    }
    Ok(Some(report))
}

fn parse_class_cache(text: &str) -> Result<ClassReport, MutClassError> {
    let fail = |line: usize, msg: &str| MutClassError::CacheFormat {
        line,
        msg: msg.to_string(),
    };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut it = lines.iter().peekable();
    let Some(&(ln, header)) = it.next() else {
        return Err(fail(0, "empty cache file"));
    };
    if header != "class-cache v1" {
        return Err(fail(ln, "expected `class-cache v1` header"));
    }
    let mut convention = None;
    let mut limits = ExplorationLimits::default();
    let mut layers = 0usize;
    let mut complete = None;
    let mut truncation = None;
    let mut member_count = None;
    while let Some(&&(ln, line)) = it.peek() {
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap_or("");
        if tag == "seed" {
            break;
        }
        it.next();
        let value = parts.next().ok_or_else(|| fail(ln, "missing value"))?;
        match tag {
            "convention" => {
                convention = Some(match value {
                    "strict" => IsoConvention::Strict,
                    "opposite" => IsoConvention::IdentifyOpposite,
                    _ => return Err(fail(ln, "unknown convention")),
                });
            }
            "max-members" => {
                limits.max_members = value.parse().map_err(|_| fail(ln, "bad max-members"))?;
            }
            "max-entry" => {
                limits.max_entry = value.parse().map_err(|_| fail(ln, "bad max-entry"))?;
            }
            "layers" => {
                layers = value.parse().map_err(|_| fail(ln, "bad layers"))?;
            }
            "complete" => {
                complete = Some(value == "true");
            }
            "truncated" => {
                truncation = Some(
                    TruncationReason::from_label(value)
                        .ok_or_else(|| fail(ln, "unknown truncation reason"))?,
                );
            }
            "members" => {
                member_count = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| fail(ln, "bad member count"))?,
                );
            }
            _ => return Err(fail(ln, "unknown header field")),
        }
    }
    let convention = convention.ok_or_else(|| fail(0, "missing convention"))?;
    let complete = complete.ok_or_else(|| fail(0, "missing complete flag"))?;
    if complete != truncation.is_none() {
        return Err(fail(0, "complete flag contradicts truncation reason"));
    }
    let expected_members = member_count.ok_or_else(|| fail(0, "missing member count"))?;

    // The remaining lines are a `seed` block and `key` blocks, each followed
    // by quiver text.
    let mut seed: Option<Quiver> = None;
    let mut members = BTreeMap::new();
    let mut pending: Option<Option<CanonicalKey>> = None; // None key marks the seed block
    let mut block: Vec<&str> = Vec::new();
    let mut block_line = 0usize;
    let finish = |pending: &mut Option<Option<CanonicalKey>>,
                  block: &mut Vec<&str>,
                  seed: &mut Option<Quiver>,
                  members: &mut BTreeMap<CanonicalKey, Quiver>,
                  at: usize|
     -> Result<(), MutClassError> {
        if let Some(slot) = pending.take() {
            let text = block.join("\n");
            let q = Quiver::from_text(&text).map_err(MutClassError::Quiver)?;
            match slot {
                None => *seed = Some(q),
                Some(key) => {
                    members.insert(key, q);
                }
            }
        } else if !block.is_empty() {
            return Err(MutClassError::CacheFormat {
                line: at,
                msg: "quiver text outside any block".into(),
            });
        }
        block.clear();
        Ok(())
    };
    for &(ln, line) in it {
        if line == "seed" {
            finish(
                &mut pending,
                &mut block,
                &mut seed,
                &mut members,
                block_line,
            )?;
            pending = Some(None);
            block_line = ln;
        } else if let Some(hex) = line.strip_prefix("key ") {
            finish(
                &mut pending,
                &mut block,
                &mut seed,
                &mut members,
                block_line,
            )?;
            let key = CanonicalKey::from_hex(hex.trim()).ok_or_else(|| fail(ln, "bad key hex"))?;
            pending = Some(Some(key));
            block_line = ln;
        } else {
            block.push(line);
        }
    }
    finish(
        &mut pending,
        &mut block,
        &mut seed,
        &mut members,
        block_line,
    )?;
    let seed = seed.ok_or_else(|| fail(0, "missing seed block"))?;
    if members.len() != expected_members {
        return Err(fail(0, "member count does not match blocks"));
    }
    Ok(ClassReport {
        seed,
        convention,
        limits,
        members,
        truncation,
        layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Quiver {
        Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap()
    }

    fn markov() -> Quiver {
        Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap()
    }

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

    // Independent enumeration: plain breadth-first search deduplicating with
    // brute-force permutation isomorphism.
    fn naive_class_size(seed: &Quiver, identify_opposite: bool) -> usize {
        let n = seed.size();
        let perms = permutations(n);
        let iso = |a: &Quiver, b: &Quiver| -> bool {
            perms.iter().any(|p| &a.relabel(p) == b)
                || (identify_opposite && {
                    let op = a.opposite();
                    perms.iter().any(|p| &op.relabel(p) == b)
                })
        };
        let mut reps: Vec<Quiver> = vec![seed.clone()];
        let mut frontier = vec![seed.clone()];
        while let Some(q) = frontier.pop() {
            for k in 0..n {
                let m = q.mutate(k).unwrap();
                if !reps.iter().any(|r| iso(&m, r)) {
                    reps.push(m.clone());
                    frontier.push(m);
                }
            }
        }
        reps.len()
    }

    #[test]
    fn three_vertex_path_class() {
        let report = enumerate_class(
            &path3(),
            IsoConvention::Strict,
            &ExplorationLimits::default(),
        );
        assert!(report.is_complete());
        assert_eq!(report.len(), 4);
        assert_eq!(naive_class_size(&path3(), false), 4);

        let merged = enumerate_class(
            &path3(),
            IsoConvention::IdentifyOpposite,
            &ExplorationLimits::default(),
        );
        assert!(merged.is_complete());
        assert_eq!(merged.len(), 3);
        assert_eq!(naive_class_size(&path3(), true), 3);
    }

    #[test]
    fn four_vertex_path_class_matches_naive_search() {
        let seed = Quiver::from_arrows(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let report = enumerate_class(&seed, IsoConvention::Strict, &ExplorationLimits::default());
        assert!(report.is_complete());
        assert_eq!(report.len(), naive_class_size(&seed, false));
    }

    #[test]
    fn doubled_triangle_is_its_own_class() {
        let report = enumerate_class(
            &markov(),
            IsoConvention::Strict,
            &ExplorationLimits::default(),
        );
        assert!(report.is_complete());
        assert_eq!(report.len(), 1);
    }

    #[test]
    fn growing_multiplicities_trip_the_entry_cap() {
        let tripled = Quiver::from_arrows(3, &[(0, 1, 3), (1, 2, 3), (2, 0, 3)]).unwrap();
        let report = enumerate_class(
            &tripled,
            IsoConvention::Strict,
            &ExplorationLimits {
                max_entry: 12,
                ..Default::default()
            },
        );
        assert_eq!(report.truncation, Some(TruncationReason::EntryCap));
        assert!(!report.is_complete());
    }

    #[test]
    fn member_cap_truncates() {
        let report = enumerate_class(
            &path3(),
            IsoConvention::Strict,
            &ExplorationLimits {
                max_members: 2,
                ..Default::default()
            },
        );
        assert_eq!(report.truncation, Some(TruncationReason::MemberCap));
        assert_eq!(report.len(), 2);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let seed = Quiver::from_arrows(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let a = enumerate_class(&seed, IsoConvention::Strict, &ExplorationLimits::default());
        let b = enumerate_class(&seed, IsoConvention::Strict, &ExplorationLimits::default());
        assert_eq!(a.members, b.members);
        assert_eq!(a.layers, b.layers);
    }

    #[test]
    fn equivalence_queries() {
        let cycle = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let limits = ExplorationLimits::default();
        assert_eq!(
            are_mutation_equivalent(&path3(), &cycle, IsoConvention::Strict, &limits),
            Equivalence::Equivalent
        );
        assert_eq!(
            are_mutation_equivalent(&path3(), &markov(), IsoConvention::Strict, &limits),
            Equivalence::NotEquivalent
        );
        let tripled = Quiver::from_arrows(3, &[(0, 1, 3), (1, 2, 3), (2, 0, 3)]).unwrap();
        assert_eq!(
            are_mutation_equivalent(&tripled, &markov(), IsoConvention::Strict, &limits),
            Equivalence::Unknown
        );
    }

    #[test]
    fn distribution_counts_by_mode() {
        let report = enumerate_class(
            &path3(),
            IsoConvention::Strict,
            &ExplorationLimits::default(),
        );
        let by_quiver =
            genus_distribution(&report, IsoMode::QuiverIso, Duration::from_secs(10)).unwrap();
        assert_eq!(by_quiver.count(0), 4);
        assert_eq!(by_quiver.members, 4);
        // The four quivers live on two underlying graphs: the path and the
        // triangle.
        let by_graph =
            genus_distribution(&report, IsoMode::GraphIso, Duration::from_secs(10)).unwrap();
        assert_eq!(by_graph.count(0), 2);
        assert_eq!(by_graph.graph_classes, 2);
    }

    #[test]
    fn reflection_groups_merge_tree_orientations() {
        // All three orientations of the path on three vertices connect
        // through sink and source mutations; the cyclic triangle has neither.
        let report = enumerate_class(
            &path3(),
            IsoConvention::Strict,
            &ExplorationLimits::default(),
        );
        let groups = reflection_groups(&report).unwrap();
        assert_eq!(groups.len(), 2);
        let mut sizes: Vec<usize> = groups.iter().map(|g| g.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3]);

        let by_reflection =
            genus_distribution(&report, IsoMode::ReflectionIso, Duration::from_secs(10)).unwrap();
        assert_eq!(by_reflection.count(0), 2);
    }

    #[test]
    fn reflection_grouping_needs_the_whole_class() {
        let report = enumerate_class(
            &path3(),
            IsoConvention::Strict,
            &ExplorationLimits {
                max_members: 2,
                ..Default::default()
            },
        );
        assert!(matches!(
            reflection_groups(&report),
            Err(MutClassError::IncompleteClass)
        ));
    }

    #[test]
    fn reflection_count_for_a_six_vertex_tree() {
        let seed = Quiver::from_arrows(6, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 5, 1)])
            .unwrap();
        let report = enumerate_class(&seed, IsoConvention::Strict, &ExplorationLimits::default());
        assert!(report.is_complete());
        assert_eq!(report.len(), 67);
        let groups = reflection_groups(&report).unwrap();
        assert_eq!(groups.len(), 21);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("qga-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let report = enumerate_class(
            &path3(),
            IsoConvention::Strict,
            &ExplorationLimits::default(),
        );
        let path = save_class(&report, &dir).unwrap();
        assert!(path.exists());
        let loaded = load_class(&path3(), IsoConvention::Strict, &dir)
            .unwrap()
            .expect("cache file written");
        assert_eq!(loaded.members, report.members);
        assert_eq!(loaded.convention, report.convention);
        assert_eq!(loaded.truncation, None);
        assert_eq!(loaded.layers, report.layers);
        // Any relabeling of the seed resolves to the same file; a different
        // class member does not.
        let relabeled = path3().relabel(&[2, 0, 1]);
        assert!(load_class(&relabeled, IsoConvention::Strict, &dir)
            .unwrap()
            .is_some());
        let sink = Quiver::from_arrows(3, &[(0, 1, 1), (2, 1, 1)]).unwrap();
        assert!(load_class(&sink, IsoConvention::Strict, &dir)
            .unwrap()
            .is_none());
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn truncated_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("qga-cache-trunc-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let report = enumerate_class(
            &path3(),
            IsoConvention::Strict,
            &ExplorationLimits {
                max_members: 2,
                ..Default::default()
            },
        );
        save_class(&report, &dir).unwrap();
        let loaded = load_class(&path3(), IsoConvention::Strict, &dir)
            .unwrap()
            .unwrap();
        assert_eq!(loaded.truncation, Some(TruncationReason::MemberCap));
        assert_eq!(loaded.limits.max_members, 2);
        assert_eq!(loaded.members.len(), 2);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
