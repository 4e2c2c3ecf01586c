//! Branch and bound over connected fragments.
//!
//! Let `S*` be a minimum h-extra cut and `C` a smallest component of
//! `G − S*`. Then `C` is connected, `h+1 ≤ |C| ≤ (|V| − κ)/2`, and
//! `G − N[C]` keeps at least `max(h+1, |C|)` vertices. For such a fragment
//! `A` put
//!
//! ```text
//! S(A) = N(A) ∪ {components of G − N[A] with at most h vertices}
//! ```
//!
//! `S(A)` is an h-extra cut whenever `G − N[A]` keeps a component of order
//! above `h`, and `S(C) ⊆ S*`. The minimum of `|S(A)|` over all fragments is
//! therefore exactly κ_h, so a completed search is exact.
//!
//! Fragments are enumerated once each by growing from a base vertex and
//! excluding earlier siblings. Subtrees are cut when a lower bound on every
//! fragment inside them reaches the best cut found.

use serde::{Deserialize, Serialize};

use super::isoperimetry::cube_profile;
use super::{vertex_connectivity, Certificate, Evidence, ExtraConnectivityResult};
use crate::bitset::{BitSet, VertexSet};
use crate::cube::CubeMeta;
use crate::error::{Error, Result};
use crate::graph::{components, components_of, open_neighborhood, Graph};
use crate::with_any_set;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentBudget {
    /// Largest fragment to grow; defaults to `⌊(|V| − κ)/2⌋`.
    pub max_fragment_size: Option<usize>,
    /// Search-tree nodes to visit before giving up.
    pub max_nodes: u64,
}

impl Default for FragmentBudget {
    fn default() -> Self {
        FragmentBudget {
            max_fragment_size: None,
            max_nodes: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentOptions {
    /// Cube description of the graph. Enables isoperimetric pruning and is
    /// required for symmetry reduction.
    pub cube: Option<CubeMeta>,
    /// Only grow fragments that contain vertex 0. Sound because cubes are
    /// vertex transitive.
    pub symmetry_reduction: bool,
    pub budget: FragmentBudget,
}

pub fn fragment_search_bounds(g: &Graph, h: usize, options: &FragmentOptions) -> Result<ExtraConnectivityResult> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { needed: 2 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if options.symmetry_reduction && options.cube.is_none() {
        return Err(Error::SymmetryWithoutTransitivity);
    }
    if let Some(meta) = &options.cube {
        if !meta.describes(g) {
            return Err(Error::CubeMismatch);
        }
    }

    let kappa = vertex_connectivity(g)?;
    // The smallest side of an h-extra cut has at most (|V| − κ)/2 vertices.
    let full_cap = (n - kappa) / 2;
    let cap = options.budget.max_fragment_size.unwrap_or(full_cap).min(n);

    // lb[m] bounds |N(A)| for any fragment of size m that leaves something
    // outside N[A]; such an N(A) separates, so it has at least κ vertices.
    let profile = options.cube.as_ref().and_then(cube_profile);
    let lb: Vec<usize> = (0..=n)
        .map(|m| profile.as_ref().map_or(0, |p| p[m]).max(kappa))
        .collect();
    // tail[m]: least lb over feasible fragment sizes m..=cap. A fragment of
    // size m needs |N(A)| ≤ |V| − 2m.
    let mut tail = vec![usize::MAX; n.max(h + 1) + 2];
    for m in (1..=cap).rev() {
        let feasible = lb[m] + 2 * m <= n;
        tail[m] = tail[m + 1].min(if feasible { lb[m] } else { usize::MAX });
    }

    // Least possible cut among fragment sizes a smaller cap leaves unexplored.
    let unexplored = ((cap + 1).max(h + 1)..=full_cap)
        .filter(|&m| lb[m] + 2 * m <= n)
        .map(|m| lb[m])
        .min();

    let bases: Vec<usize> = if options.symmetry_reduction {
        vec![0]
    } else {
        (0..n).collect()
    };
    let outcome = with_any_set!(n, S => {
        let mut search = Search::<S> {
            rows: g.rows_as(),
            full: S::full(n),
            h,
            tail: &tail,
            best: None,
            nodes: 0,
            max_nodes: options.budget.max_nodes,
            aborted: false,
        };
        // A shallow pass over the smallest fragments finds a good incumbent
        // before the deep search starts relying on it for pruning.
        for limit in [(h + 1).min(cap), cap] {
            for &b in &bases {
                let excluded = S::from_indices(n, 0..b);
                search.grow(S::singleton(n, b), excluded, limit);
                if search.aborted {
                    break;
                }
            }
        }
        (search.best.map(|(size, cut)| (size, VertexSet::from_set(&cut))), search.aborted)
    });

    let root_lb = tail[h + 1].min(unexplored.unwrap_or(usize::MAX));
    let certificate = |cut: VertexSet| Certificate {
        components: components(g, &cut),
        cut,
    };
    let (best, aborted) = outcome;
    let complete = !aborted
        && best
            .as_ref()
            .map_or(unexplored.is_none(), |b| unexplored.is_none_or(|u| u >= b.0));
    let evidence = match (&best, complete) {
        (_, true) => Evidence::FragmentExact,
        (Some((size, _)), false) => Evidence::BoundsOnly {
            lower: root_lb.min(*size),
            upper: *size,
        },
        (None, false) if aborted => Evidence::Inconclusive {
            budget: options.budget.max_nodes as u128,
        },
        (None, false) => Evidence::Inconclusive { budget: cap as u128 },
    };
    Ok(match (best, complete) {
        (Some((size, cut)), true) => ExtraConnectivityResult {
            h,
            value: Some(size),
            certificate: Some(certificate(cut)),
            evidence,
        },
        _ => ExtraConnectivityResult {
            h,
            value: None,
            certificate: None,
            evidence,
        },
    })
}

struct Search<'a, S> {
    rows: Vec<S>,
    full: S,
    h: usize,
    tail: &'a [usize],
    best: Option<(usize, S)>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
}

impl<S: BitSet> Search<'_, S> {
    fn best_size(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, |b| b.0)
    }

    /// Visits `fragment` and every connected superset of it that avoids
    /// `excluded`, up to `limit` vertices.
    fn grow(&mut self, fragment: S, mut excluded: S, limit: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
            return;
        }
        let size = fragment.len();
        let boundary = open_neighborhood(&self.rows, &fragment);
        if size > self.h {
            self.evaluate(&fragment, &boundary);
        }
        if size >= limit {
            return;
        }
        // Excluded boundary vertices stay in N(A') for every descendant A'.
        let pinned = boundary.intersection_len(&excluded);
        let lower = pinned.max(self.tail[(size + 1).max(self.h + 1)]);
        if lower >= self.best_size() {
            return;
        }
        let frontier = boundary.difference(&excluded);
        for v in frontier.to_vec() {
            let mut child = fragment.clone();
            child.insert(v);
            self.grow(child, excluded.clone(), limit);
            if self.aborted {
                return;
            }
            excluded.insert(v);
        }
    }

    fn evaluate(&mut self, fragment: &S, boundary: &S) {
        let size = fragment.len();
        if boundary.len() >= self.best_size() {
            return;
        }
        let mut rest = self.full.difference(boundary);
        rest.difference_with(fragment);
        if rest.len() < size.max(self.h + 1) {
            return;
        }
        let mut cut = boundary.clone();
        let mut has_big = false;
        for c in components_of(&self.rows, &rest) {
            if c.len() > self.h {
                has_big = true;
            } else {
                cut.union_with(&c);
            }
        }
        if has_big && cut.len() < self.best_size() {
            self.best = Some((cut.len(), cut));
        }
    }
}
