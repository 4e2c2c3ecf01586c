use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Certificate, Evidence, ExtraConnectivityResult};
use crate::bitset::{BitSet, VertexSet};
use crate::combinations::{binomial, prefixes, visit_completions};
use crate::error::{Error, Result};
use crate::graph::{components, is_h_extra_cut_in, Graph};
use crate::with_word_set;

/// Limits for subset enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveBudget {
    /// Largest cut size to try; `None` means up to `|V|`.
    pub max_cut_size: Option<usize>,
    /// Total subsets (summed over all sizes tried) before giving up.
    pub max_subsets: u128,
}

impl Default for ExhaustiveBudget {
    fn default() -> Self {
        ExhaustiveBudget {
            max_cut_size: None,
            max_subsets: 1_000_000_000,
        }
    }
}

/// κ_h by enumerating subsets in increasing size; the certificate is the
/// lexicographically smallest cut of minimum size.
///
/// The budget is charged a whole size class at a time before it is
/// searched, so whether a run is inconclusive does not depend on how the
/// work is scheduled.
// The macro instantiates word sets, which are `Copy`, alongside generic code.
#[allow(clippy::clone_on_copy)]
pub fn exact_extra_connectivity(g: &Graph, h: usize, budget: &ExhaustiveBudget) -> Result<ExtraConnectivityResult> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::TooFewVertices { needed: 1 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let max_size = budget.max_cut_size.unwrap_or(n).min(n);

    enum Outcome {
        Found(usize, VertexSet),
        Exhausted,
        OutOfBudget,
    }

    let outcome = with_word_set!(n, S => {
        let rows: Vec<S> = g.rows_as();
        let full = S::full(n);
        let mut spent: u128 = 0;
        let mut outcome = Outcome::Exhausted;
        for s in 0..=max_size {
            spent = spent.saturating_add(binomial(n, s));
            if spent > budget.max_subsets {
                outcome = Outcome::OutOfBudget;
                break;
            }
            let hit = prefixes(n, s).par_iter().find_map_first(|p| {
                visit_completions::<S, S>(n, p, s, &mut |cut| {
                    if is_h_extra_cut_in(&rows, &full, cut, h) {
                        ControlFlow::Break(cut.clone())
                    } else {
                        ControlFlow::Continue(())
                    }
                })
                .break_value()
            });
            if let Some(cut) = hit {
                outcome = Outcome::Found(s, VertexSet::from_set(&cut));
                break;
            }
        }
        outcome
    })?;

    let (value, certificate, evidence) = match outcome {
        Outcome::Found(size, cut) => (
            Some(size),
            Some(Certificate {
                components: components(g, &cut),
                cut,
            }),
            Evidence::Exhaustive { searched_up_to: size },
        ),
        Outcome::Exhausted => (
            None,
            None,
            Evidence::Exhaustive {
                searched_up_to: max_size,
            },
        ),
        Outcome::OutOfBudget => (
            None,
            None,
            Evidence::Inconclusive {
                budget: budget.max_subsets,
            },
        ),
    };
    Ok(ExtraConnectivityResult {
        h,
        value,
        certificate,
        evidence,
    })
}
