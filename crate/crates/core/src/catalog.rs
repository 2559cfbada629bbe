//! The eleven exceptional mutation-finite quivers.
//!
//! These are the mutation-finite quivers on three or more vertices that are
//! not block-decomposable: the three tree quivers E6, E7, E8; their affine
//! extensions E6(1), E7(1), E8(1); the elliptic ones E6(1,1), E7(1,1),
//! E8(1,1); and the doubled-arrow quivers X6 and X7. Each entry ships with
//! the expected size of its mutation class up to isomorphism and how the
//! class splits into planar and genus-one members, plus named vertices used
//! by the derived quivers.
//!
//! The derived quivers X6a, X6b, X6c, X7a are the non-planar class members:
//! the X6 class contains three genus-one quivers besides X6 itself, and the
//! X7 class one besides X7.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::quiver::Quiver;

/// One exceptional quiver with its catalog metadata.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub quiver: Quiver,
    /// Named vertices, 0-based.
    pub labels: BTreeMap<String, usize>,
    /// Expected mutation-class size up to isomorphism.
    pub expected_class_size: usize,
    /// Expected number of planar members.
    pub expected_planar: usize,
    /// Expected number of genus-one members.
    pub expected_genus_one: usize,
}

struct Catalog {
    entries: Vec<CatalogEntry>,
    derived: Vec<(String, Quiver)>,
}

fn data() -> &'static Catalog {
    static DATA: OnceLock<Catalog> = OnceLock::new();
    DATA.get_or_init(|| parse_catalog(include_str!("../data/catalog.dat")))
}

/// All eleven entries in catalog order.
pub fn catalog() -> &'static [CatalogEntry] {
    &data().entries
}

/// Looks up an entry by its name, like `"E8(1,1)"`.
pub fn named(name: &str) -> Option<&'static CatalogEntry> {
    data().entries.iter().find(|e| e.name == name)
}

/// The derived quivers in catalog order, `(name, quiver)` pairs.
pub fn derived() -> impl Iterator<Item = (&'static str, &'static Quiver)> {
    data().derived.iter().map(|(n, q)| (n.as_str(), q))
}

/// Looks up a derived quiver by name, like `"X6a"`.
pub fn derived_named(name: &str) -> Option<&'static Quiver> {
    data()
        .derived
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, q)| q)
}

/// Every addressable name: the eleven entries followed by the derived ones.
pub fn all_names() -> Vec<&'static str> {
    let d = data();
    d.entries
        .iter()
        .map(|e| e.name.as_str())
        .chain(d.derived.iter().map(|(n, _)| n.as_str()))
        .collect()
}

fn parse_catalog(text: &str) -> Catalog {
    struct Pending {
        name: String,
        labels: BTreeMap<String, usize>,
        expect: (usize, usize, usize),
        quiver_lines: Vec<String>,
    }
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut derived_specs: Vec<(String, String, Vec<String>)> = Vec::new();
    let mut pending: Option<Pending> = None;
    let mut in_quiver = false;
    let finish = |p: Pending, entries: &mut Vec<CatalogEntry>| {
        let quiver = Quiver::from_text(&p.quiver_lines.join("\n")).expect("catalog quiver parses");
        for (label, v) in &p.labels {
            assert!(*v < quiver.size(), "label {label} outside {}", p.name);
        }
        entries.push(CatalogEntry {
            name: p.name,
            quiver,
            labels: p.labels,
            expected_class_size: p.expect.0,
            expected_planar: p.expect.1,
            expected_genus_one: p.expect.2,
        });
    };
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if in_quiver {
            if line == "end" {
                in_quiver = false;
            } else {
                pending
                    .as_mut()
                    .expect("inside an entry")
                    .quiver_lines
                    .push(line.to_string());
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "catalog" => assert_eq!(fields.get(1), Some(&"v1"), "unknown catalog version"),
            "entry" => {
                if let Some(p) = pending.take() {
                    finish(p, &mut entries);
                }
                pending = Some(Pending {
                    name: fields[1].to_string(),
                    labels: BTreeMap::new(),
                    expect: (0, 0, 0),
                    quiver_lines: Vec::new(),
                });
            }
            "expect" => {
                pending.as_mut().expect("inside an entry").expect = (
                    fields[1].parse().expect("class size"),
                    fields[2].parse().expect("planar count"),
                    fields[3].parse().expect("genus-one count"),
                );
            }
            "label" => {
                let p = pending.as_mut().expect("inside an entry");
                let v: usize = fields[2].parse().expect("label vertex");
                assert!(v >= 1, "labels are 1-based");
                p.labels.insert(fields[1].to_string(), v - 1);
            }
            "quiver" => {
                let p = pending.as_mut().expect("inside an entry");
                p.quiver_lines.push(line.to_string());
                in_quiver = true;
            }
            "derived" => {
                derived_specs.push((
                    fields[1].to_string(),
                    fields[2].to_string(),
                    fields[3..].iter().map(|s| s.to_string()).collect(),
                ));
            }
            other => panic!("unrecognized catalog.dat directive `{other}`"),
        }
    }
    if let Some(p) = pending.take() {
        finish(p, &mut entries);
    }
    let derived = derived_specs
        .into_iter()
        .map(|(name, base, labels)| {
            let entry = entries
                .iter()
                .find(|e| e.name == base)
                .unwrap_or_else(|| panic!("derived {name} references unknown base {base}"));
            let seq: Vec<usize> = labels
                .iter()
                .map(|l| {
                    *entry
                        .labels
                        .get(l)
                        .unwrap_or_else(|| panic!("derived {name} uses unknown label {l}"))
                })
                .collect();
            let q = entry
                .quiver
                .apply_sequence(&seq)
                .expect("derived mutation sequence applies");
            (name, q)
        })
        .collect();
    Catalog { entries, derived }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::is_planar;
    use crate::iso::{canonical_quiver_key, IsoConvention};

    const NAMES: [&str; 11] = [
        "E6", "E7", "E8", "E6(1)", "E7(1)", "E8(1)", "E6(1,1)", "E7(1,1)", "E8(1,1)", "X6", "X7",
    ];

    #[test]
    fn the_eleven_entries_are_present_in_order() {
        let got: Vec<&str> = catalog().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(got, NAMES);
        let sizes: Vec<usize> = catalog().iter().map(|e| e.quiver.size()).collect();
        assert_eq!(sizes, [6, 7, 8, 7, 8, 9, 8, 9, 10, 6, 7]);
    }

    #[test]
    fn entries_are_connected_with_small_multiplicities() {
        for e in catalog() {
            assert!(e.quiver.underlying_graph().is_connected(), "{}", e.name);
            assert!(e.quiver.max_arrow_multiplicity() <= 2, "{}", e.name);
        }
    }

    #[test]
    fn tree_and_affine_entries_are_trees() {
        for name in ["E6", "E7", "E8", "E6(1)", "E7(1)", "E8(1)"] {
            let e = named(name).unwrap();
            assert_eq!(
                e.quiver.arrow_count() as usize,
                e.quiver.size() - 1,
                "{name}"
            );
            assert_eq!(e.quiver.max_arrow_multiplicity(), 1, "{name}");
        }
    }

    #[test]
    fn doubled_arrow_counts() {
        let doubles = |q: &Quiver| {
            q.arrow_list()
                .into_iter()
                .filter(|&(_, _, m)| m == 2)
                .count()
        };
        for name in ["E6(1,1)", "E7(1,1)", "E8(1,1)"] {
            assert_eq!(doubles(&named(name).unwrap().quiver), 1, "{name}");
        }
        assert_eq!(doubles(&named("X6").unwrap().quiver), 2);
        assert_eq!(doubles(&named("X7").unwrap().quiver), 3);
    }

    #[test]
    fn x7_center_label_points_at_the_hub() {
        let e = named("X7").unwrap();
        let c = e.labels["y4"];
        let q = &e.quiver;
        let out: i64 = (0..q.size()).map(|j| q.arrows(c, j)).sum();
        let inn: i64 = (0..q.size()).map(|j| q.arrows(j, c)).sum();
        assert_eq!((out, inn), (3, 3));
    }

    #[test]
    fn derived_quivers_exist_and_are_nonplanar() {
        let names: Vec<&str> = derived().map(|(n, _)| n).collect();
        assert_eq!(names, ["X6a", "X6b", "X6c", "X7a"]);
        for (name, q) in derived() {
            assert!(
                !is_planar(&q.underlying_graph()),
                "{name} should be nonplanar"
            );
        }
        let sizes: Vec<usize> = derived().map(|(_, q)| q.size()).collect();
        assert_eq!(sizes, [6, 6, 6, 7]);
    }

    #[test]
    fn derived_quivers_leave_their_seeds_isomorphism_class() {
        let x6 = &named("X6").unwrap().quiver;
        let x7 = &named("X7").unwrap().quiver;
        for (name, q) in derived() {
            let base = if name.starts_with("X6") { x6 } else { x7 };
            assert_ne!(
                canonical_quiver_key(q, IsoConvention::Strict),
                canonical_quiver_key(base, IsoConvention::Strict),
                "{name}"
            );
        }
    }

    #[test]
    fn lookups_work() {
        assert!(named("E8(1,1)").is_some());
        assert!(named("nope").is_none());
        assert!(derived_named("X7a").is_some());
        assert!(derived_named("X7b").is_none());
        assert_eq!(all_names().len(), 15);
    }
}
