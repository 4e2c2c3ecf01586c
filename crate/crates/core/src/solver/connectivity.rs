use std::collections::VecDeque;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::combinations::{binomial, prefixes, visit_completions};
use crate::error::{Error, Result};
use crate::graph::{components_of, Graph};
use crate::with_word_set;

/// Largest number of minimum cuts [`is_super_connected`] will enumerate.
pub const DEFAULT_SUPER_CONNECTED_BUDGET: u128 = 50_000_000;

/// Unit-capacity flow network with every vertex split into `in → out`.
struct SplitNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u8>,
    next: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl SplitNetwork {
    fn new(g: &Graph, s: usize, t: usize) -> Self {
        let nodes = 2 * g.vertex_count();
        let mut net = SplitNetwork {
            head: vec![NIL; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
        };
        for v in 0..g.vertex_count() {
            // Source and sink are not capacity-limited.
            let c = if v == s || v == t { u8::MAX } else { 1 };
            net.add(2 * v, 2 * v + 1, c);
        }
        for (u, v) in g.edges() {
            net.add(2 * u + 1, 2 * v, 1);
            net.add(2 * v + 1, 2 * u, 1);
        }
        net
    }

    fn add(&mut self, a: usize, b: usize, c: u8) {
        for (x, y, c) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(c);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// Max flow from `source` to `sink`, stopping once it reaches `limit`.
    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut parent = vec![NIL; self.head.len()];
        while flow < limit {
            parent.fill(NIL);
            parent[source] = usize::MAX - 1;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(x) = queue.pop_front() {
                let mut e = self.head[x];
                while e != NIL {
                    let y = self.to[e];
                    if self.cap[e] > 0 && parent[y] == NIL {
                        parent[y] = e;
                        if y == sink {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                    e = self.next[e];
                }
            }
            if parent[sink] == NIL {
                break;
            }
            let mut y = sink;
            while y != source {
                let e = parent[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// κ(g): the fewest vertices whose removal disconnects `g` or leaves a
/// single vertex. Complete graphs give `m - 1`.
///
/// Uses Even's scheme: some vertex among the first `κ + 1` survives any
/// minimum cut, so only pairs `(v_i, v_j)` with `i ≤ κ` need a flow.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { needed: 2 });
    }
    if !g.is_connected() {
        return Ok(0);
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    let mut best = g.min_degree();
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            let mut net = SplitNetwork::new(g, i, j);
            best = best.min(net.max_flow(2 * i + 1, 2 * j, best));
        }
        i += 1;
    }
    Ok(best)
}

/// Whether every minimum vertex cut leaves exactly two components, one of
/// them a single vertex. Enumerates all κ-subsets.
pub fn is_super_connected(g: &Graph) -> Result<bool> {
    is_super_connected_within(g, DEFAULT_SUPER_CONNECTED_BUDGET)
}

pub fn is_super_connected_within(g: &Graph, max_subsets: u128) -> Result<bool> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::TooFewVertices { needed: 3 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_complete() {
        return Ok(true);
    }
    let kappa = vertex_connectivity(g)?;
    let required = binomial(n, kappa);
    if required > max_subsets {
        return Err(Error::BudgetExceeded {
            required,
            budget: max_subsets,
        });
    }
    with_word_set!(n, S => {
        let rows: Vec<S> = g.rows_as();
        let full = S::full(n);
        let bad = prefixes(n, kappa).par_iter().any(|p| {
            visit_completions::<S, ()>(n, p, kappa, &mut |cut| {
                let comps = components_of(&rows, &full.difference(cut));
                let ok = comps.len() == 1 || (comps.len() == 2 && comps[1].len() == 1);
                if ok { ControlFlow::Continue(()) } else { ControlFlow::Break(()) }
            })
            .is_break()
        });
        !bad
    })
}

/// `|adj(u) ∩ adj(v)|`.
pub fn common_neighbor_count(g: &Graph, u: usize, v: usize) -> Result<usize> {
    for x in [u, v] {
        if x >= g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                universe: g.vertex_count(),
            });
        }
    }
    if u == v {
        return Err(Error::SameVertex(u));
    }
    Ok(g.row(u).intersection_len(g.row(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::build_kary_cube;
    use crate::graph::components;
    use crate::VertexSet;

    /// κ by trying every subset in increasing size.
    fn brute_kappa(g: &Graph) -> usize {
        let n = g.vertex_count();
        for s in 0..n - 1 {
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != s {
                    continue;
                }
                let cut = VertexSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
                if components(g, &cut).len() >= 2 {
                    return s;
                }
            }
        }
        n - 1
    }

    #[test]
    fn cube_connectivity() {
        for n in 2..=4 {
            let (g, _) = build_kary_cube(3, n).unwrap();
            assert_eq!(vertex_connectivity(&g).unwrap(), 2 * n);
        }
        let (g, _) = build_kary_cube(3, 1).unwrap();
        assert_eq!(vertex_connectivity(&g).unwrap(), 2);
        let (g, _) = build_kary_cube(2, 4).unwrap();
        assert_eq!(vertex_connectivity(&g).unwrap(), 4);
        assert_eq!(vertex_connectivity(&Graph::complete(5)).unwrap(), 4);
        assert_eq!(vertex_connectivity(&Graph::cycle(7)).unwrap(), 2);
        assert!(vertex_connectivity(&Graph::complete(1)).is_err());
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&split).unwrap(), 0);
    }

    #[test]
    fn connectivity_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=9);
            let p = rng.gen_range(0.2..0.9);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(
                vertex_connectivity(&g).unwrap(),
                brute_kappa(&g),
                "{:?}",
                g.edges().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn super_connectivity() {
        let (g, _) = build_kary_cube(3, 2).unwrap();
        assert!(is_super_connected(&g).unwrap());
        assert!(!is_super_connected(&Graph::cycle(6)).unwrap());
        assert!(is_super_connected(&Graph::complete(4)).unwrap());
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(is_super_connected(&split), Err(Error::Disconnected));
        let (g4, _) = build_kary_cube(3, 4).unwrap();
        assert!(matches!(is_super_connected(&g4), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn common_neighbors() {
        let (g, m) = build_kary_cube(3, 3).unwrap();
        let id = |w: &str| m.index_of_str(w).unwrap();
        assert_eq!(common_neighbor_count(&g, id("000"), id("001")).unwrap(), 1);
        assert!(g.row(id("000")).intersection(g.row(id("001"))).contains(id("002")));
        assert_eq!(common_neighbor_count(&g, id("000"), id("011")).unwrap(), 2);
        assert_eq!(
            g.row(id("000")).intersection(g.row(id("011"))).to_vec(),
            vec![id("001"), id("010")]
        );
        assert_eq!(common_neighbor_count(&g, id("000"), id("111")).unwrap(), 0);
        assert_eq!(common_neighbor_count(&g, 3, 3), Err(Error::SameVertex(3)));
    }
}
