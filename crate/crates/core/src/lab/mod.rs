//! Exact polyhedral laboratory: enumeration of coloring and stable set
//! vectors, exact rank, an exact rational simplex, double description, and
//! the verification routines built on them. No floating point is used.

pub mod dd;
pub mod enumerate;
pub mod linalg;
pub mod simplex;
pub mod verify;

pub use enumerate::{
    enumerate_colorings, enumerate_complement_matchings, enumerate_stable_sets, mask_point, Source,
    VertexSetEnumeration,
};
pub use linalg::{affine_dimension, affine_dimension_masks};
pub use verify::{
    copaw_system, edmonds_system, is_facet, quasiline_system, verify_characterization,
    verify_coltostab, verify_match_subset, verify_preext_identity, CharacterizationMode, Verdict,
};
