//! Quivers under mutation, their mutation classes, and the topology of their
//! underlying graphs.
//!
//! The crate provides:
//!
//! - [`quiver`]: exchange matrices and 2-acyclic quivers with mutation,
//!   implemented independently on both representations.
//! - [`iso`]: canonical forms and isomorphism tests for quivers and graphs.
//! - [`genus`]: rotation systems, planarity, and exact minimum orientable
//!   genus by branch and bound.
//! - [`mutclass`]: breadth-first enumeration of mutation classes up to
//!   isomorphism, with caching and genus statistics.
//! - [`surface`]: ideal triangulations of marked surfaces, signed adjacency
//!   matrices, and arc flips.
//! - [`blocks`]: gluing of small building blocks into quivers, and the
//!   families built that way.
//! - [`catalog`]: named quivers used as seeds and regression anchors.

pub mod blocks;
pub mod catalog;
pub mod genus;
pub mod iso;
pub mod mutclass;
pub mod quiver;
pub mod surface;

pub use blocks::{
    block, construct_rn, construct_tn, glue, rectangle_gadget, sphere4_quiver, tn_assembly,
    torus_planar_quiver, Block, BlockError, BlockKind, OutletRef, TnAssembly,
};
pub use catalog::{catalog, derived, derived_named, named, CatalogEntry};
pub use genus::{
    find_embedding, genus_lower_bound, is_planar, min_genus, GenusResult, GenusStatus,
    RotationSystem,
};
pub use iso::{canonical_graph_key, canonical_quiver_key, CanonicalKey, IsoConvention};
pub use mutclass::{
    are_mutation_equivalent, enumerate_class, genus_distribution, load_class, reflection_groups,
    save_class, ClassReport, Equivalence, ExplorationLimits, GenusDistribution, IsoMode,
    MutClassError, TruncationReason,
};
pub use quiver::{ExchangeMatrix, Quiver, QuiverError, SimpleGraph};
pub use surface::{
    four_punctured_sphere, once_punctured_torus, polygon, torus_with_punctures, SurfaceError,
    SurfaceSignature, Triangle, Triangulation,
};
