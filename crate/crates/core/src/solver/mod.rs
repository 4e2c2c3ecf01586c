//! Classical and h-extra vertex connectivity.
//!
//! Two engines compute κ_h:
//!
//! * [`exact_extra_connectivity`] enumerates vertex subsets by increasing
//!   size and is the ground truth for graphs up to 128 vertices.
//! * [`fragment_search_bounds`] enumerates connected fragments `A` and their
//!   neighborhoods, pruning with isoperimetric lower bounds, and scales to
//!   cubes where subset enumeration is hopeless.
//!
//! Both report how the answer was established through [`Evidence`].

mod connectivity;
mod exhaustive;
mod fragment;
pub mod isoperimetry;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;

pub use connectivity::{
    common_neighbor_count, is_super_connected, is_super_connected_within, vertex_connectivity,
    DEFAULT_SUPER_CONNECTED_BUDGET,
};
pub use exhaustive::{exact_extra_connectivity, ExhaustiveBudget};
pub use fragment::{fragment_search_bounds, FragmentBudget, FragmentOptions};

/// How a connectivity value was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Evidence {
    /// Every subset of size at most `searched_up_to` was examined.
    Exhaustive { searched_up_to: usize },
    /// Fragment search ran to completion, so lower and upper bounds agree.
    FragmentExact,
    /// The search stopped early with `lower ≤ κ_h ≤ upper`.
    BoundsOnly { lower: usize, upper: usize },
    /// A limit was hit before anything could be concluded: the node or
    /// subset budget, or a fragment-size cap below the smallest side a cut
    /// may have.
    Inconclusive { budget: u128 },
}

/// A cut together with the components left after removing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub cut: VertexSet,
    pub components: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraConnectivityResult {
    pub h: usize,
    /// κ_h, or `None` when no h-extra cut exists within the searched range
    /// or the evidence is not conclusive.
    pub value: Option<usize>,
    pub certificate: Option<Certificate>,
    pub evidence: Evidence,
}

impl ExtraConnectivityResult {
    /// True when `value` is a proven answer (including proven nonexistence).
    pub fn is_conclusive(&self) -> bool {
        matches!(self.evidence, Evidence::Exhaustive { .. } | Evidence::FragmentExact)
    }

    /// `(lower, upper)` bounds implied by the evidence, when any are known.
    pub fn bounds(&self) -> Option<(usize, usize)> {
        match self.evidence {
            Evidence::BoundsOnly { lower, upper } => Some((lower, upper)),
            _ => self.value.map(|v| (v, v)),
        }
    }
}
