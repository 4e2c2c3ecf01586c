//! k-ary n-cubes, exact classical and h-extra vertex connectivity, and
//! executable checks of the cut-structure results for `Q_n^3`.
//!
//! Vertex sets are generic over their word type: the exhaustive engines run
//! on single-word sets ([`Set32`], [`Set64`], [`Set128`]) chosen from the
//! universe size, everything else on the heap-backed [`VertexSet`].

pub mod bitset;
pub mod combinations;
pub mod constructions;
pub mod cube;
pub mod error;
pub mod graph;
pub mod solver;
pub mod verify;

pub use bitset::{BitSet, VertexSet, WordSet};
pub use constructions::{extremal_cut, path_fragment, verify_extremal_cut, ConstructionReport, Fragment};
pub use cube::{build_kary_cube, CubeAutomorphism, CubeMeta, SubcubePartition, VertexWord};
pub use error::{Error, Result};
pub use graph::{classify_small_component, components, is_h_extra_cut, neighborhood_of_set, ComponentShape, Graph};
pub use solver::{
    common_neighbor_count, exact_extra_connectivity, fragment_search_bounds, is_super_connected, vertex_connectivity,
    Certificate, Evidence, ExhaustiveBudget, ExtraConnectivityResult, FragmentBudget, FragmentOptions,
};

pub use verify::{CutReport, Pattern, Verdict, VerificationOutcome};

pub type Set32 = WordSet<u32>;
pub type Set64 = WordSet<u64>;
pub type Set128 = WordSet<u128>;

/// Evaluates `$body` with `$S` bound to the narrowest word set that holds
/// `$universe` vertices, yielding `Ok(body)`, or
/// [`Error::UniverseOverflow`] above 128 vertices.
#[macro_export]
macro_rules! with_word_set {
    ($universe:expr, $S:ident => $body:expr) => {{
        let universe: usize = $universe;
        if universe <= 32 {
            type $S = $crate::Set32;
            Ok($body)
        } else if universe <= 64 {
            type $S = $crate::Set64;
            Ok($body)
        } else if universe <= 128 {
            type $S = $crate::Set128;
            Ok($body)
        } else {
            Err($crate::Error::UniverseOverflow {
                requested: universe as u128,
                limit: 128,
            })
        }
    }};
}

/// Like [`with_word_set!`] but falls back to [`VertexSet`] for large
/// universes, so it always yields the body's value directly.
#[macro_export]
macro_rules! with_any_set {
    ($universe:expr, $S:ident => $body:expr) => {{
        let universe: usize = $universe;
        if universe <= 32 {
            type $S = $crate::Set32;
            $body
        } else if universe <= 64 {
            type $S = $crate::Set64;
            $body
        } else if universe <= 128 {
            type $S = $crate::Set128;
            $body
        } else {
            type $S = $crate::VertexSet;
            $body
        }
    }};
}
