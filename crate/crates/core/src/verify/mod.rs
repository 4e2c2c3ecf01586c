//! Executable checks of structural claims about `Q_n^k`, exhaustive on small
//! cubes and sampled on larger ones.

mod claims;
mod cuts;
pub mod sampling;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, VertexSet};
use crate::graph::{components, shape_of, ComponentShape, Graph};

pub use claims::{verify_common_neighbors, verify_regularity_partition_transitivity, verify_subcube_union_connected};
pub use cuts::{verify_bounded_cut_structure, CutSweepOptions, SweepMode};
pub use sampling::SampleSpec;

/// Shape of `G − F` in terms of its component count and the shapes of all
/// components other than the largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    /// At most one component left.
    Connected,
    /// Two components, the smaller a single vertex.
    SingletonSide,
    /// Two components with a singleton or edge as the smaller, or three
    /// components two of which are singletons.
    SmallSide,
    /// Two components, the smaller a singleton, edge, 2-path or triangle.
    TinySide,
    /// Three components, two of them singletons.
    TwoSingletons,
    /// Three components besides the largest: a singleton and an edge.
    SingletonAndEdge,
    /// Four components, three of them singletons.
    ThreeSingletons,
    /// Disconnected, but none of the allowed patterns applies.
    Violation,
}

impl Pattern {
    /// Patterns permitted when `|F| ≤ 4n − 4`.
    pub const SINGLETON_CUTS: &'static [Pattern] = &[Pattern::SingletonSide];
    /// Patterns permitted when `|F| ≤ 6n − 8`.
    pub const SMALL_SIDE_CUTS: &'static [Pattern] = &[Pattern::SmallSide];
    /// Patterns permitted when `|F| ≤ 8n − 13`.
    pub const THREE_EXTRA_CUTS: &'static [Pattern] = &[
        Pattern::TinySide,
        Pattern::TwoSingletons,
        Pattern::SingletonAndEdge,
        Pattern::ThreeSingletons,
    ];

    /// Whether components with the given count and non-largest shapes fit
    /// this pattern.
    pub fn matches(self, count: usize, small: &[ComponentShape]) -> bool {
        use ComponentShape::*;
        let singletons = small.iter().filter(|&&s| s == Singleton).count();
        match self {
            Pattern::Connected => count <= 1,
            Pattern::SingletonSide => count == 2 && small == [Singleton],
            Pattern::SmallSide => {
                (count == 2 && matches!(small, [Singleton] | [Edge])) || (count == 3 && singletons == 2)
            }
            Pattern::TinySide => count == 2 && matches!(small, [Singleton] | [Edge] | [Path2] | [Cycle3]),
            Pattern::TwoSingletons => count == 3 && singletons == 2,
            Pattern::SingletonAndEdge => count == 3 && singletons == 1 && small.contains(&Edge),
            Pattern::ThreeSingletons => count == 4 && singletons == 3,
            Pattern::Violation => false,
        }
    }

    /// The first allowed pattern that fits, `Connected` when nothing was cut
    /// off, and `Violation` otherwise.
    pub fn classify(count: usize, small: &[ComponentShape], allowed: &[Pattern]) -> Pattern {
        if count <= 1 {
            return Pattern::Connected;
        }
        allowed
            .iter()
            .copied()
            .find(|p| p.matches(count, small))
            .unwrap_or(Pattern::Violation)
    }
}

impl Pattern {
    pub fn name(self) -> &'static str {
        match self {
            Pattern::Connected => "connected",
            Pattern::SingletonSide => "singleton-side",
            Pattern::SmallSide => "small-side",
            Pattern::TinySide => "tiny-side",
            Pattern::TwoSingletons => "two-singletons",
            Pattern::SingletonAndEdge => "singleton-and-edge",
            Pattern::ThreeSingletons => "three-singletons",
            Pattern::Violation => "violation",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `G − F` broken down into components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReport {
    pub fault_set: VertexSet,
    /// Largest first, ties by smallest member.
    pub components: Vec<VertexSet>,
    /// Shapes of `components[1..]`.
    pub small_shapes: Vec<ComponentShape>,
    pub matched: Pattern,
}

impl CutReport {
    pub fn new(g: &Graph, fault_set: &VertexSet, allowed: &[Pattern]) -> Self {
        let comps = components(g, fault_set);
        let small: Vec<ComponentShape> = comps.iter().skip(1).map(|c| shape_of(g.rows(), c)).collect();
        CutReport {
            fault_set: fault_set.clone(),
            matched: Pattern::classify(comps.len(), &small, allowed),
            components: comps,
            small_shapes: small,
        }
    }

    pub fn is_disconnected(&self) -> bool {
        self.components.len() >= 2
    }
}

/// What a verification run covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scope {
    /// Every vertex, pair or edge of the graph.
    Complete,
    /// Every fault set of size at most `size_bound`.
    Exhaustive { size_bound: usize },
    /// Seeded random fault sets.
    Sample(SampleSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Cut(CutReport),
    CommonNeighbors {
        u: usize,
        v: usize,
        adjacent: bool,
        count: usize,
    },
    Property {
        detail: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub claim: String,
    pub scope: Scope,
    /// Items examined (fault sets, pairs, ...).
    pub checked_count: u128,
    /// Items outside the claim's hypothesis and therefore not tested.
    pub skipped: u128,
    pub violations: Vec<Violation>,
    pub verdict: Verdict,
    /// Patterns observed among disconnecting fault sets.
    pub patterns_seen: BTreeSet<Pattern>,
    /// Size of the smallest disconnecting fault set encountered.
    pub smallest_cut_size: Option<usize>,
}

impl VerificationOutcome {
    pub(crate) fn new(claim: &str, scope: Scope) -> Self {
        VerificationOutcome {
            claim: claim.to_string(),
            scope,
            checked_count: 0,
            skipped: 0,
            violations: Vec::new(),
            verdict: Verdict::Pass,
            patterns_seen: BTreeSet::new(),
            smallest_cut_size: None,
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.verdict = if self.violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Per-work-unit tallies, merged in work-unit order.
#[derive(Default)]
pub(crate) struct Tally {
    pub checked: u128,
    pub skipped: u128,
    pub violations: Vec<Violation>,
    pub patterns: BTreeSet<Pattern>,
    pub smallest: Option<usize>,
}

impl Tally {
    pub fn note_cut(&mut self, size: usize, pattern: Pattern) {
        if pattern != Pattern::Connected {
            self.patterns.insert(pattern);
            self.smallest = Some(self.smallest.map_or(size, |s| s.min(size)));
        }
    }

    pub fn merge(mut self, other: Tally, max_violations: usize) -> Tally {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.violations.extend(other.violations);
        self.violations.truncate(max_violations);
        self.patterns.extend(other.patterns);
        self.smallest = match (self.smallest, other.smallest) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn into_outcome(self, claim: &str, scope: Scope) -> VerificationOutcome {
        let mut out = VerificationOutcome::new(claim, scope);
        out.checked_count = self.checked;
        out.skipped = self.skipped;
        out.violations = self.violations;
        out.patterns_seen = self.patterns;
        out.smallest_cut_size = self.smallest;
        out.finish()
    }
}

/// Shapes of all components but the largest, with the component count.
pub(crate) fn small_shapes<S: BitSet>(rows: &[S], comps: &[S]) -> Vec<ComponentShape> {
    comps.iter().skip(1).map(|c| shape_of(rows, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ComponentShape::*;

    #[test]
    fn pattern_table() {
        assert_eq!(Pattern::classify(1, &[], Pattern::SINGLETON_CUTS), Pattern::Connected);
        assert_eq!(Pattern::classify(0, &[], Pattern::SINGLETON_CUTS), Pattern::Connected);
        assert_eq!(
            Pattern::classify(2, &[Singleton], Pattern::SINGLETON_CUTS),
            Pattern::SingletonSide
        );
        assert_eq!(
            Pattern::classify(2, &[Edge], Pattern::SINGLETON_CUTS),
            Pattern::Violation
        );
        assert_eq!(
            Pattern::classify(2, &[Edge], Pattern::SMALL_SIDE_CUTS),
            Pattern::SmallSide
        );
        assert_eq!(
            Pattern::classify(3, &[Singleton, Singleton], Pattern::SMALL_SIDE_CUTS),
            Pattern::SmallSide
        );
        assert_eq!(
            Pattern::classify(3, &[Edge, Singleton], Pattern::SMALL_SIDE_CUTS),
            Pattern::Violation
        );
        assert_eq!(
            Pattern::classify(2, &[Path2], Pattern::SMALL_SIDE_CUTS),
            Pattern::Violation
        );

        let t = Pattern::THREE_EXTRA_CUTS;
        assert_eq!(Pattern::classify(2, &[Cycle3], t), Pattern::TinySide);
        assert_eq!(Pattern::classify(2, &[Cycle4], t), Pattern::Violation);
        assert_eq!(Pattern::classify(2, &[Path3], t), Pattern::Violation);
        assert_eq!(Pattern::classify(3, &[Singleton, Singleton], t), Pattern::TwoSingletons);
        assert_eq!(Pattern::classify(3, &[Edge, Singleton], t), Pattern::SingletonAndEdge);
        assert_eq!(Pattern::classify(3, &[Edge, Edge], t), Pattern::Violation);
        assert_eq!(
            Pattern::classify(4, &[Singleton, Singleton, Singleton], t),
            Pattern::ThreeSingletons
        );
        assert_eq!(Pattern::classify(5, &[Singleton; 4], t), Pattern::Violation);
    }

    #[test]
    fn pattern_names() {
        assert_eq!(Pattern::TinySide.to_string(), "tiny-side");
    }
}
