//! Immutable undirected simple graphs and the set primitives built on them.

use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, VertexSet};
use crate::error::{Error, Result};

/// Undirected simple graph over the dense vertex range `0..vertex_count`.
///
/// Adjacency is stored twice: as one [`VertexSet`] row per vertex (for the
/// set algebra) and as sorted neighbor lists (for walks). Both are fixed at
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<VertexSet>,
    lists: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse into one; loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rows = vec![VertexSet::empty(vertex_count); vertex_count];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        universe: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        let lists: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().collect()).collect();
        let edge_count = lists.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            rows,
            lists,
            edge_count,
        })
    }

    /// The complete graph `K_m`.
    pub fn complete(m: usize) -> Self {
        let edges = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
        Self::from_edges(m, edges).expect("complete graph edges are valid")
    }

    /// The cycle `C_m` (`m >= 3`).
    pub fn cycle(m: usize) -> Self {
        assert!(m >= 3, "a cycle needs at least three vertices");
        Self::from_edges(m, (0..m).map(|u| (u, (u + 1) % m))).expect("cycle edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.lists[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.lists.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.lists[v]
    }

    pub fn row(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.rows
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lists
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.lists.iter().all(|l| l.len() + 1 == n)
    }

    /// Adjacency rows converted to another set representation.
    pub fn rows_as<S: BitSet>(&self) -> Vec<S> {
        self.rows.iter().map(VertexSet::convert).collect()
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.vertex_count())
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn set_of(&self, vertices: impl IntoIterator<Item = usize>) -> Result<VertexSet> {
        let n = self.vertex_count();
        let mut s = VertexSet::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, universe: n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn is_connected(&self) -> bool {
        let all = self.full_set();
        self.vertex_count() == 0 || components_of(&self.rows, &all).len() == 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edge_count", &self.edge_count)
            .finish()
    }
}

/// Isomorphism class of a small connected induced subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentShape {
    Singleton,
    Edge,
    /// Path on three vertices.
    Path2,
    Cycle3,
    /// Path on four vertices.
    Path3,
    Cycle4,
    /// Any other connected shape, tagged with its order.
    Other(usize),
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentShape::Other(order) => write!(f, "Other({order})"),
            shape => write!(f, "{shape:?}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Generic kernels, shared by every engine regardless of set width.

/// `(∪_{u∈set} adj(u)) − set`.
#[inline]
pub fn open_neighborhood<S: BitSet>(rows: &[S], set: &S) -> S {
    let mut out = S::empty(set.universe());
    set.for_each(|u| out.union_with(&rows[u]));
    out.difference_with(set);
    out
}

/// Vertices of `alive` reachable from `start` inside `alive`.
#[inline]
pub fn flood<S: BitSet>(rows: &[S], alive: &S, start: usize) -> S {
    let mut comp = S::singleton(alive.universe(), start);
    let mut frontier = comp.clone();
    loop {
        let mut next = S::empty(alive.universe());
        frontier.for_each(|u| next.union_with(&rows[u]));
        next.intersect_with(alive);
        next.difference_with(&comp);
        if next.is_empty() {
            return comp;
        }
        comp.union_with(&next);
        frontier = next;
    }
}

/// Connected components of the subgraph induced by `alive`, ordered by size
/// descending and then by smallest member ascending.
pub fn components_of<S: BitSet>(rows: &[S], alive: &S) -> Vec<S> {
    let mut rest = alive.clone();
    let mut comps = Vec::new();
    while let Some(v) = rest.first() {
        let c = flood(rows, &rest, v);
        rest.difference_with(&c);
        comps.push(c);
    }
    sort_components(&mut comps);
    comps
}

pub fn sort_components<S: BitSet>(comps: &mut [S]) {
    // Components are disjoint, so the minimum member breaks ties uniquely.
    comps.sort_by_key(|c| (Reverse(c.len()), c.first()));
}

/// Induced-subgraph shape of a set already known to be connected.
pub fn shape_of<S: BitSet>(rows: &[S], c: &S) -> ComponentShape {
    let order = c.len();
    match order {
        1 => ComponentShape::Singleton,
        2 => ComponentShape::Edge,
        3 | 4 => {
            let mut degrees = Vec::with_capacity(order);
            c.for_each(|u| degrees.push(rows[u].intersection_len(c)));
            let edges = degrees.iter().sum::<usize>() / 2;
            let max = degrees.iter().copied().max().unwrap_or(0);
            match (order, edges, max) {
                (3, 2, _) => ComponentShape::Path2,
                (3, 3, _) => ComponentShape::Cycle3,
                (4, 3, 2) => ComponentShape::Path3,
                (4, 4, 2) => ComponentShape::Cycle4,
                _ => ComponentShape::Other(order),
            }
        }
        _ => ComponentShape::Other(order),
    }
}

/// True iff removing `cut` leaves at least two components, each with at
/// least `h + 1` vertices.
pub fn is_h_extra_cut_in<S: BitSet>(rows: &[S], universe: &S, cut: &S, h: usize) -> bool {
    let mut rest = universe.difference(cut);
    let mut count = 0usize;
    while let Some(v) = rest.first() {
        let c = flood(rows, &rest, v);
        if c.len() <= h {
            return false;
        }
        rest.difference_with(&c);
        count += 1;
        if count == 1 && rest.is_empty() {
            return false;
        }
    }
    count >= 2
}

// ---------------------------------------------------------------------------
// Public operations on `Graph`.

/// Connected components of `g` with `removed` deleted.
pub fn components(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let alive = g.full_set().difference(removed);
    components_of(&g.rows, &alive)
}

/// Open (`closed == false`) or closed neighborhood of `s`.
pub fn neighborhood_of_set(g: &Graph, s: &VertexSet, closed: bool) -> VertexSet {
    let mut out = open_neighborhood(&g.rows, s);
    if closed {
        out.union_with(s);
    }
    out
}

/// Shape tag of the subgraph induced by the connected set `c`.
pub fn classify_small_component(g: &Graph, c: &VertexSet) -> Result<ComponentShape> {
    let start = c.first().ok_or(Error::NotConnectedSet)?;
    if flood(&g.rows, c, start).len() != c.len() {
        return Err(Error::NotConnectedSet);
    }
    Ok(shape_of(&g.rows, c))
}

pub fn is_h_extra_cut(g: &Graph, s: &VertexSet, h: usize) -> bool {
    is_h_extra_cut_in(&g.rows, &g.full_set(), s, h)
}
