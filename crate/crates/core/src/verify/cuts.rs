use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::{FaultSampler, SampleSpec};
use super::{small_shapes, CutReport, Pattern, Scope, Tally, VerificationOutcome, Violation};
use crate::bitset::{BitSet, VertexSet};
use crate::combinations::{prefixes, subsets_up_to, visit_completions};
use crate::error::{Error, Result};
use crate::graph::{components_of, Graph};
use crate::with_word_set;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepMode {
    /// Every subset of size at most the bound.
    Exhaustive,
    /// Seeded samples from [`FaultSampler`].
    Sample(SampleSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSweepOptions {
    /// Stop collecting (and stop sweeping a work unit) after this many.
    pub max_violations: usize,
    /// Exhaustive sweeps larger than this are refused.
    pub max_subsets: u128,
    /// Extra starting sets for the sampler.
    pub anchors: Vec<VertexSet>,
}

impl Default for CutSweepOptions {
    fn default() -> Self {
        CutSweepOptions {
            max_violations: 16,
            max_subsets: 2_000_000_000,
            anchors: Vec::new(),
        }
    }
}

const SAMPLE_CHUNK: u64 = 2048;

/// Checks that every fault set `F` with `|F| ≤ size_bound` that disconnects
/// `g` leaves components matching one of `allowed`.
pub fn verify_bounded_cut_structure(
    g: &Graph,
    size_bound: usize,
    allowed: &[Pattern],
    mode: &SweepMode,
    options: &CutSweepOptions,
) -> Result<VerificationOutcome> {
    let n = g.vertex_count();
    if size_bound > n {
        return Err(Error::InvalidParameter(format!(
            "size bound {size_bound} exceeds the {n} vertices"
        )));
    }
    let cap = options.max_violations.max(1);
    match mode {
        SweepMode::Exhaustive => {
            let required = subsets_up_to(n, size_bound);
            if required > options.max_subsets {
                return Err(Error::BudgetExceeded {
                    required,
                    budget: options.max_subsets,
                });
            }
            let tally = with_word_set!(n, S => exhaustive_sweep::<S>(g, size_bound, allowed, cap))?;
            Ok(tally.into_outcome("bounded-cut-structure", Scope::Exhaustive { size_bound }))
        }
        SweepMode::Sample(spec) => {
            let sampler = FaultSampler::new(g, size_bound, spec.seed).with_anchors(options.anchors.clone());
            let chunks: Vec<u64> = (0..spec.count.div_ceil(SAMPLE_CHUNK)).collect();
            let tally = chunks
                .par_iter()
                .map(|&c| {
                    let mut t = Tally::default();
                    for i in c * SAMPLE_CHUNK..((c + 1) * SAMPLE_CHUNK).min(spec.count) {
                        let (_, fault) = sampler.sample(i);
                        t.checked += 1;
                        let report = CutReport::new(g, &fault, allowed);
                        t.note_cut(fault.len(), report.matched);
                        if report.matched == Pattern::Violation {
                            t.violations.push(Violation::Cut(report));
                            if t.violations.len() >= cap {
                                break;
                            }
                        }
                    }
                    t
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold(Tally::default(), |a, b| a.merge(b, cap));
            Ok(tally.into_outcome("bounded-cut-structure", Scope::Sample(spec.clone())))
        }
    }
}

fn exhaustive_sweep<S: BitSet>(g: &Graph, bound: usize, allowed: &[Pattern], cap: usize) -> Tally {
    let n = g.vertex_count();
    let rows: Vec<S> = g.rows_as();
    let full = S::full(n);
    let mut total = Tally::default();
    for s in 0..=bound {
        let units = prefixes(n, s);
        let tallies: Vec<Tally> = units
            .par_iter()
            .map(|p| {
                let mut t = Tally::default();
                let _ = visit_completions::<S, ()>(n, p, s, &mut |cut| {
                    t.checked += 1;
                    let comps = components_of(&rows, &full.difference(cut));
                    if comps.len() < 2 {
                        return ControlFlow::Continue(());
                    }
                    let pattern = Pattern::classify(comps.len(), &small_shapes(&rows, &comps), allowed);
                    t.note_cut(s, pattern);
                    if pattern == Pattern::Violation {
                        let fault = VertexSet::from_set(cut);
                        t.violations.push(Violation::Cut(CutReport::new(g, &fault, allowed)));
                        if t.violations.len() >= cap {
                            return ControlFlow::Break(());
                        }
                    }
                    ControlFlow::Continue(())
                });
                t
            })
            .collect();
        total = tallies.into_iter().fold(total, |a, b| a.merge(b, cap));
    }
    total
}
