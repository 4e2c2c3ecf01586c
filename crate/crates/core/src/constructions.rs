//! Extremal fault sets in `Q_n^3`: neighborhoods of an edge, a 2-path and
//! the 4-vertex fragment `u, v, w, t` whose neighborhood has `8n − 12`
//! vertices.

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, VertexSet};
use crate::cube::CubeMeta;
use crate::error::{Error, Result};
use crate::graph::{classify_small_component, components, is_h_extra_cut, neighborhood_of_set, ComponentShape, Graph};
use crate::verify::{CutReport, Pattern};

/// A small connected vertex set with a fixed vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    pub vertices: Vec<usize>,
    pub meta: CubeMeta,
    pub induced_shape: ComponentShape,
}

impl Fragment {
    pub fn set(&self) -> VertexSet {
        VertexSet::from_indices(self.meta.vertex_count(), self.vertices.iter().copied())
    }

    pub fn words(&self) -> Vec<String> {
        self.vertices
            .iter()
            .map(|&v| self.meta.word_of(v).map(|w| w.to_string()).unwrap_or_default())
            .collect()
    }
}

fn require_ternary(meta: &CubeMeta) -> Result<()> {
    if meta.k() != 3 {
        return Err(Error::InvalidParameter(format!(
            "extremal fragments are defined for k = 3, got k = {}",
            meta.k()
        )));
    }
    Ok(())
}

/// Unit vector at digit `position`.
fn unit(meta: &CubeMeta, position: usize) -> usize {
    meta.with_digit(0, position, 1)
}

/// The canonical path-like fragment on `t` vertices:
///
/// * `t = 2`: `0…0` and its `+1` neighbor in the leading digit;
/// * `t = 3`: that edge extended by `+1` in the next digit, a 2-path;
/// * `t = 4`: `u = 0…0`, `v = 010…0`, `w = 0110…0`, `t = 0010…0`, which
///   induces a 4-cycle.
pub fn path_fragment(meta: &CubeMeta, t: usize) -> Result<Fragment> {
    require_ternary(meta)?;
    let n = meta.n();
    let needed = match t {
        2 | 3 => 2,
        4 => 3,
        _ => return Err(Error::InvalidParameter(format!("fragment order {t} not in 2..=4"))),
    };
    if n < needed {
        return Err(Error::InvalidParameter(format!(
            "a {t}-vertex fragment needs n >= {needed}, got n = {n}"
        )));
    }
    let vertices = match t {
        2 => vec![0, unit(meta, n - 1)],
        3 => vec![0, unit(meta, n - 1), unit(meta, n - 1) + unit(meta, n - 2)],
        _ => {
            let (a, b) = (unit(meta, n - 2), unit(meta, n - 3));
            vec![0, a, a + b, b]
        }
    };
    let edges: Vec<(usize, usize)> = (0..t)
        .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
        .filter(|&(i, j)| meta.neighbors_of(vertices[i]).contains(&vertices[j]))
        .collect();
    let local = Graph::from_edges(t, edges)?;
    let induced_shape = classify_small_component(&local, &local.full_set())?;
    Ok(Fragment {
        vertices,
        meta: meta.clone(),
        induced_shape,
    })
}

/// An extremal cut with its per-vertex accounting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub fragment: Fragment,
    pub cut: VertexSet,
    pub cut_size: usize,
    /// `layers[i]`: cut vertices whose first adjacent fragment vertex (in
    /// fragment order) is `fragment.vertices[i]`.
    pub layers: Vec<VertexSet>,
    pub layer_sizes: Vec<usize>,
    /// `G − cut`, classified against every named pattern; the 4-cycle side
    /// of the `h = 3` cut fits none of them.
    pub residual: CutReport,
}

const NAMED_PATTERNS: &[Pattern] = &[
    Pattern::SingletonSide,
    Pattern::SmallSide,
    Pattern::TinySide,
    Pattern::TwoSingletons,
    Pattern::SingletonAndEdge,
    Pattern::ThreeSingletons,
];

/// `N(fragment)` for the `(h + 1)`-vertex fragment, `h ∈ {1, 2, 3}`.
pub fn extremal_cut(g: &Graph, meta: &CubeMeta, h: usize) -> Result<ConstructionReport> {
    if !(1..=3).contains(&h) {
        return Err(Error::InvalidParameter(format!(
            "extremal cuts exist for h in 1..=3, got {h}"
        )));
    }
    require_ternary(meta)?;
    if !meta.describes(g) {
        return Err(Error::CubeMismatch);
    }
    let fragment = path_fragment(meta, h + 1)?;
    let cut = neighborhood_of_set(g, &fragment.set(), false);
    let mut assigned = g.empty_set();
    let layers: Vec<VertexSet> = fragment
        .vertices
        .iter()
        .map(|&x| {
            let layer = g.row(x).intersection(&cut).difference(&assigned);
            assigned.union_with(&layer);
            layer
        })
        .collect();
    Ok(ConstructionReport {
        cut_size: cut.len(),
        layer_sizes: layers.iter().map(BitSet::len).collect(),
        layers,
        residual: CutReport::new(g, &cut, NAMED_PATTERNS),
        cut,
        fragment,
    })
}

/// The cut leaves exactly two components, the fragment is a smallest one,
/// and the cut is h-extra.
pub fn verify_extremal_cut(g: &Graph, report: &ConstructionReport, h: usize) -> Result<bool> {
    if report.cut.universe() != g.vertex_count() || !report.fragment.meta.describes(g) {
        return Err(Error::CubeMismatch);
    }
    let fragment = report.fragment.set();
    let comps = components(g, &report.cut);
    Ok(comps.len() == 2
        && comps.contains(&fragment)
        && comps.iter().all(|c| c.len() >= fragment.len())
        && is_h_extra_cut(g, &report.cut, h))
}

/// A pair of fragment vertices and the common neighbor the size count relies on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonNeighborFact {
    pub pair: (usize, usize),
    pub expected: usize,
    pub common: Vec<usize>,
}

impl CommonNeighborFact {
    pub fn holds(&self) -> bool {
        self.common == [self.expected]
    }
}

/// The four adjacent pairs `uv, vw, ut, wt` of the 4-cycle fragment and
/// their unique common neighbors `020…0, 0120…0, 0020…0, 0210…0`.
pub fn fragment_common_neighbors(g: &Graph, meta: &CubeMeta) -> Result<Vec<CommonNeighborFact>> {
    let f = path_fragment(meta, 4)?;
    if !meta.describes(g) {
        return Err(Error::CubeMismatch);
    }
    let n = meta.n();
    let (a, b) = (unit(meta, n - 2), unit(meta, n - 3));
    let [u, v, w, t] = [f.vertices[0], f.vertices[1], f.vertices[2], f.vertices[3]];
    [
        ((u, v), 2 * a),
        ((v, w), a + 2 * b),
        ((u, t), 2 * b),
        ((w, t), 2 * a + b),
    ]
    .into_iter()
    .map(|((x, y), expected)| {
        let common = g.row(x).intersection(g.row(y)).to_vec();
        Ok(CommonNeighborFact {
            pair: (x, y),
            expected,
            common,
        })
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::build_kary_cube;

    #[test]
    fn fragment_coordinates() {
        let m3 = CubeMeta::new(3, 3).unwrap();
        let f = path_fragment(&m3, 4).unwrap();
        assert_eq!(f.words(), vec!["000", "010", "011", "001"]);
        assert_eq!(f.induced_shape, ComponentShape::Cycle4);

        let m2 = CubeMeta::new(3, 2).unwrap();
        let f = path_fragment(&m2, 2).unwrap();
        assert_eq!(
            (f.words(), f.induced_shape),
            (vec!["00".to_string(), "10".into()], ComponentShape::Edge)
        );
        let f = path_fragment(&m2, 3).unwrap();
        assert_eq!(f.words(), vec!["00", "10", "11"]);
        assert_eq!(f.induced_shape, ComponentShape::Path2);

        let m5 = CubeMeta::new(3, 5).unwrap();
        assert_eq!(
            path_fragment(&m5, 4).unwrap().words(),
            vec!["00000", "01000", "01100", "00100"]
        );

        assert!(path_fragment(&m2, 4).is_err());
        assert!(path_fragment(&m3, 5).is_err());
        assert!(path_fragment(&CubeMeta::new(3, 1).unwrap(), 2).is_err());
        assert!(path_fragment(&CubeMeta::new(4, 3).unwrap(), 2).is_err());
    }

    #[test]
    fn cut_sizes_and_layers() {
        for n in 3..=6 {
            let (g, m) = build_kary_cube(3, n).unwrap();
            let r = extremal_cut(&g, &m, 3).unwrap();
            assert_eq!(r.cut_size, 8 * n - 12);
            assert_eq!(r.layer_sizes, vec![2 * n - 2, 2 * n - 3, 2 * n - 3, 2 * n - 4]);
            assert!(verify_extremal_cut(&g, &r, 3).unwrap());
            assert_eq!(r.residual.small_shapes, vec![ComponentShape::Cycle4]);
        }
        for n in 2..=4 {
            let (g, m) = build_kary_cube(3, n).unwrap();
            let r1 = extremal_cut(&g, &m, 1).unwrap();
            assert_eq!(r1.cut_size, 4 * n - 3);
            assert!(verify_extremal_cut(&g, &r1, 1).unwrap());
            let r2 = extremal_cut(&g, &m, 2).unwrap();
            assert_eq!(r2.cut_size, 6 * n - 7);
            assert_eq!(r2.layer_sizes.iter().sum::<usize>(), r2.cut_size);
        }
        let (g2, m2) = build_kary_cube(3, 2).unwrap();
        assert!(extremal_cut(&g2, &m2, 3).is_err());
        assert!(extremal_cut(&g2, &m2, 0).is_err());
    }

    #[test]
    fn wrong_graph_is_rejected() {
        let (g3, m3) = build_kary_cube(3, 3).unwrap();
        let (g4, _) = build_kary_cube(3, 4).unwrap();
        let r = extremal_cut(&g3, &m3, 3).unwrap();
        assert_eq!(verify_extremal_cut(&g4, &r, 3), Err(Error::CubeMismatch));
        assert_eq!(extremal_cut(&g4, &m3, 3).unwrap_err(), Error::CubeMismatch);
    }

    #[test]
    fn common_neighbor_facts() {
        for n in 3..=5 {
            let (g, m) = build_kary_cube(3, n).unwrap();
            let facts = fragment_common_neighbors(&g, &m).unwrap();
            assert_eq!(facts.len(), 4);
            assert!(facts.iter().all(CommonNeighborFact::holds), "n={n}: {facts:?}");
            if n == 3 {
                let words: Vec<String> = facts
                    .iter()
                    .map(|f| m.word_of(f.expected).unwrap().to_string())
                    .collect();
                assert_eq!(words, vec!["020", "012", "002", "021"]);
            }
        }
    }
}
