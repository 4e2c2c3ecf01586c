//! k-ary n-cubes: construction, the digit-word coordinate system, subcube
//! partitions and the automorphisms used for symmetry reduction.
//!
//! Vertex `u = u_{n-1} … u_0` has index `Σ u_i · k^i`, so `u_0` is the least
//! significant digit and a word prints most significant digit first.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{components, Graph};

/// Upper bound on `k^n` accepted by the builder. Adjacency rows are dense,
/// so memory grows with the square of this.
pub const MAX_VERTICES: usize = 20_000;

/// Radix and dimension of a k-ary n-cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeMeta {
    k: u32,
    n: usize,
    vertex_count: usize,
}

impl CubeMeta {
    pub fn new(k: u32, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("radix k = {k}, need k >= 2")));
        }
        if n < 1 {
            return Err(Error::InvalidParameter("dimension n = 0, need n >= 1".into()));
        }
        let mut count: u128 = 1;
        for _ in 0..n {
            count = count.saturating_mul(k as u128);
            if count > MAX_VERTICES as u128 {
                return Err(Error::UniverseOverflow {
                    requested: (k as u128).saturating_pow(n.min(u32::MAX as usize) as u32),
                    limit: MAX_VERTICES,
                });
            }
        }
        Ok(CubeMeta {
            k,
            n,
            vertex_count: count as usize,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `k^{n-1}`: size of each subcube class.
    pub fn class_size(&self) -> usize {
        self.vertex_count / self.k as usize
    }

    fn power(&self, position: usize) -> usize {
        (self.k as usize).pow(position as u32)
    }

    /// Digit `u_position` of vertex `u`.
    #[inline]
    pub fn digit(&self, u: usize, position: usize) -> u32 {
        ((u / self.power(position)) % self.k as usize) as u32
    }

    /// Replaces digit `u_position` by `value mod k`.
    #[inline]
    pub fn with_digit(&self, u: usize, position: usize, value: i64) -> usize {
        let k = self.k as i64;
        let p = self.power(position);
        let old = self.digit(u, position) as usize;
        let new = value.rem_euclid(k) as usize;
        u - old * p + new * p
    }

    /// Word of vertex `u`.
    pub fn word_of(&self, u: usize) -> Result<VertexWord> {
        if u >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: u,
                universe: self.vertex_count,
            });
        }
        let digits = (0..self.n).rev().map(|i| self.digit(u, i)).collect();
        Ok(VertexWord { k: self.k, digits })
    }

    /// Index of the vertex whose digits are `u_{n-1}, …, u_0` (most
    /// significant first).
    pub fn index_of_digits(&self, digits: &[u32]) -> Result<usize> {
        if digits.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "word has {} digits, cube has dimension {}",
                digits.len(),
                self.n
            )));
        }
        let mut index = 0usize;
        for (offset, &d) in digits.iter().enumerate() {
            let position = self.n - 1 - offset;
            if d >= self.k {
                return Err(Error::DigitOutOfRange {
                    digit: d,
                    position,
                    k: self.k,
                });
            }
            index = index * self.k as usize + d as usize;
        }
        Ok(index)
    }

    pub fn index_of(&self, word: &VertexWord) -> Result<usize> {
        if word.k != self.k {
            return Err(Error::InvalidParameter(format!(
                "word radix {} does not match cube radix {}",
                word.k, self.k
            )));
        }
        self.index_of_digits(&word.digits)
    }

    /// Parses a printed word (see [`VertexWord`]'s `Display`).
    pub fn index_of_str(&self, text: &str) -> Result<usize> {
        let digits = parse_digits(text, self.k)?;
        self.index_of_digits(&digits)
    }

    /// Neighbors of `u` computed from the ±1 digit rule, ascending and
    /// deduplicated.
    pub fn neighbors_of(&self, u: usize) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for j in 0..self.n {
            let d = self.digit(u, j) as i64;
            for step in [1, -1] {
                let v = self.with_digit(u, j, d + step);
                if v != u {
                    out.insert(v);
                }
            }
        }
        out.into_iter().collect()
    }

    /// True when `g` is exactly the k-ary n-cube described by `self`.
    pub fn describes(&self, g: &Graph) -> bool {
        g.vertex_count() == self.vertex_count
            && (0..self.vertex_count).all(|u| g.neighbors(u) == self.neighbors_of(u).as_slice())
    }
}

fn parse_digits(text: &str, k: u32) -> Result<Vec<u32>> {
    let bad = || Error::InvalidParameter(format!("cannot parse vertex word {text:?}"));
    if k <= 10 && !text.contains('.') {
        text.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect()
    } else {
        text.split('.').map(|p| p.parse::<u32>().map_err(|_| bad())).collect()
    }
}

/// A vertex in coordinate form, digits stored most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexWord {
    k: u32,
    digits: Vec<u32>,
}

impl VertexWord {
    pub fn new(k: u32, digits: Vec<u32>) -> Self {
        VertexWord { k, digits }
    }

    /// `u_{n-1}, …, u_0`.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Digit `u_position`.
    pub fn digit(&self, position: usize) -> u32 {
        self.digits[self.digits.len() - 1 - position]
    }
}

/// Radix ≤ 10 prints as a plain digit string (`"012"`); larger radices are
/// dot separated (`"0.11.3"`).
impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(u32::to_string).collect();
            f.write_str(&parts.join("."))
        }
    }
}

impl FromStr for VertexWord {
    type Err = Error;

    /// Parses a plain digit string; the radix is taken as one more than the
    /// largest digit, so prefer [`CubeMeta::index_of_str`] when the cube is
    /// known.
    fn from_str(s: &str) -> Result<Self> {
        let digits = parse_digits(s, 10)?;
        let k = digits.iter().copied().max().unwrap_or(0) + 1;
        Ok(VertexWord { k: k.max(2), digits })
    }
}

/// Builds `Q_n^k`. For `k = 2` the `+1` and `-1` neighbors coincide and the
/// result is the n-dimensional hypercube.
pub fn build_kary_cube(k: u32, n: usize) -> Result<(Graph, CubeMeta)> {
    let meta = CubeMeta::new(k, n)?;
    let edges = (0..meta.vertex_count).flat_map(|u| {
        let m = &meta;
        (0..m.n).filter_map(move |j| {
            let v = m.with_digit(u, j, m.digit(u, j) as i64 + 1);
            (v != u).then_some((u, v))
        })
    });
    let g = Graph::from_edges(meta.vertex_count, edges.collect::<Vec<_>>())?;
    Ok((g, meta))
}

/// Split of the cube into `k` classes by digit `u_dimension`, optionally
/// with a fault set sliced per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcubePartition {
    pub dimension: usize,
    /// `Q[i]`: vertices whose digit at `dimension` is `i`.
    pub classes: Vec<VertexSet>,
    /// Edges between `Q[i]` and `Q[i+1 mod k]`; a single entry when `k = 2`.
    pub cross_edges: Vec<usize>,
    /// `F_i = faults ∩ Q[i]` (all empty when no faults were supplied).
    pub fault_slices: Vec<VertexSet>,
    /// `I`: classes where `Q[i] − F_i` is disconnected.
    pub disconnected: Vec<usize>,
    /// `J`: the remaining classes.
    pub connected: Vec<usize>,
}

impl SubcubePartition {
    /// Union of the classes in `which`.
    pub fn union_of(&self, which: &[usize]) -> VertexSet {
        let mut out = VertexSet::empty(self.classes[0].universe());
        for &i in which {
            out.union_with(&self.classes[i]);
        }
        out
    }

    /// Union of the fault slices in `which`.
    pub fn faults_of(&self, which: &[usize]) -> VertexSet {
        let mut out = VertexSet::empty(self.classes[0].universe());
        for &i in which {
            out.union_with(&self.fault_slices[i]);
        }
        out
    }
}

pub fn partition_over_dimension(
    g: &Graph,
    meta: &CubeMeta,
    dimension: usize,
    faults: Option<&VertexSet>,
) -> Result<SubcubePartition> {
    if dimension >= meta.n {
        return Err(Error::DimensionOutOfRange { dimension, n: meta.n });
    }
    if g.vertex_count() != meta.vertex_count {
        return Err(Error::CubeMismatch);
    }
    let k = meta.k as usize;
    let universe = meta.vertex_count;
    let mut classes = vec![VertexSet::empty(universe); k];
    for u in 0..universe {
        classes[meta.digit(u, dimension) as usize].insert(u);
    }

    let pairs = if k == 2 { 1 } else { k };
    let mut cross_edges = vec![0usize; pairs];
    for (u, v) in g.edges() {
        let (a, b) = (meta.digit(u, dimension) as usize, meta.digit(v, dimension) as usize);
        if a == b {
            continue;
        }
        let i = if (a + 1) % k == b { a } else { b };
        cross_edges[i.min(pairs - 1)] += 1;
    }
    if cross_edges.iter().any(|&c| c != meta.class_size()) {
        return Err(Error::CubeMismatch);
    }

    let empty = VertexSet::empty(universe);
    let faults = faults.unwrap_or(&empty);
    let fault_slices: Vec<VertexSet> = classes.iter().map(|c| c.intersection(faults)).collect();
    let mut disconnected = Vec::new();
    let mut connected = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        // Removing everything outside Q[i] − F_i leaves exactly its components.
        let removed = g.full_set().difference(class).union(&fault_slices[i]);
        if components(g, &removed).len() >= 2 {
            disconnected.push(i);
        } else {
            connected.push(i);
        }
    }
    Ok(SubcubePartition {
        dimension,
        classes,
        cross_edges,
        fault_slices,
        disconnected,
        connected,
    })
}

/// `(u_L, u_R)`: the neighbors of `u` across dimension `j`, with digit
/// `u_j - 1` and `u_j + 1` respectively.
pub fn outer_neighbors(meta: &CubeMeta, u: usize, j: usize) -> Result<(usize, usize)> {
    if j >= meta.n {
        return Err(Error::DimensionOutOfRange {
            dimension: j,
            n: meta.n,
        });
    }
    if u >= meta.vertex_count {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            universe: meta.vertex_count,
        });
    }
    let d = meta.digit(u, j) as i64;
    Ok((meta.with_digit(u, j, d - 1), meta.with_digit(u, j, d + 1)))
}

/// Vertex map built from per-digit reflection `x ↦ -x`, then per-digit
/// translation `x ↦ x + t`, then a relocation of digit positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeAutomorphism {
    /// Added to digit `i` (mod k).
    pub translation: Vec<u32>,
    /// Digit `i` of the input becomes digit `permutation[i]` of the output.
    pub permutation: Vec<usize>,
    /// Whether digit `i` is negated before translation.
    pub reflection: Vec<bool>,
}

impl CubeAutomorphism {
    pub fn identity(n: usize) -> Self {
        CubeAutomorphism {
            translation: vec![0; n],
            permutation: (0..n).collect(),
            reflection: vec![false; n],
        }
    }

    pub fn translate(n: usize, position: usize, amount: u32) -> Self {
        let mut a = Self::identity(n);
        a.translation[position] = amount;
        a
    }

    pub fn swap(n: usize, p: usize, q: usize) -> Self {
        let mut a = Self::identity(n);
        a.permutation.swap(p, q);
        a
    }

    pub fn reflect(n: usize, position: usize) -> Self {
        let mut a = Self::identity(n);
        a.reflection[position] = true;
        a
    }

    pub fn validate(&self, meta: &CubeMeta) -> Result<()> {
        let n = meta.n;
        if self.translation.len() != n || self.permutation.len() != n || self.reflection.len() != n {
            return Err(Error::MalformedAutomorphism(format!("expected {n} positions")));
        }
        if let Some(t) = self.translation.iter().find(|&&t| t >= meta.k) {
            return Err(Error::MalformedAutomorphism(format!(
                "translation {t} not reduced mod {}",
                meta.k
            )));
        }
        let mut seen = vec![false; n];
        for &p in &self.permutation {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::MalformedAutomorphism(format!(
                    "{:?} is not a permutation",
                    self.permutation
                )));
            }
        }
        Ok(())
    }

    /// Applies the map without validation.
    pub(crate) fn map(&self, meta: &CubeMeta, u: usize) -> usize {
        let k = meta.k;
        let mut out = 0usize;
        for i in 0..meta.n {
            let mut x = meta.digit(u, i);
            if self.reflection[i] {
                x = (k - x) % k;
            }
            x = (x + self.translation[i]) % k;
            out += x as usize * meta.power(self.permutation[i]);
        }
        out
    }
}

pub fn apply_automorphism(meta: &CubeMeta, a: &CubeAutomorphism, u: usize) -> Result<usize> {
    a.validate(meta)?;
    if u >= meta.vertex_count {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            universe: meta.vertex_count,
        });
    }
    Ok(a.map(meta, u))
}

/// Translations by +1 on each digit, adjacent digit transpositions and
/// reflection of each digit.
pub fn automorphism_generators(meta: &CubeMeta) -> Vec<CubeAutomorphism> {
    let n = meta.n;
    let mut gens: Vec<CubeAutomorphism> = (0..n).map(|i| CubeAutomorphism::translate(n, i, 1)).collect();
    gens.extend((1..n).map(|i| CubeAutomorphism::swap(n, i - 1, i)));
    gens.extend((0..n).map(|i| CubeAutomorphism::reflect(n, i)));
    gens
}

/// Orbit of `start` under the group generated by `gens`, ascending.
pub fn vertex_orbit(meta: &CubeMeta, gens: &[CubeAutomorphism], start: usize) -> Vec<usize> {
    let mut seen = vec![false; meta.vertex_count];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for a in gens {
            let v = a.map(meta, u);
            if !std::mem::replace(&mut seen[v], true) {
                queue.push_back(v);
            }
        }
    }
    (0..meta.vertex_count).filter(|&v| seen[v]).collect()
}

/// Orbit of the edge `(u, v)` (stored with the smaller endpoint first).
pub fn edge_orbit(meta: &CubeMeta, gens: &[CubeAutomorphism], edge: (usize, usize)) -> Vec<(usize, usize)> {
    let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let mut seen = HashSet::from([norm(edge)]);
    let mut queue = VecDeque::from([norm(edge)]);
    while let Some((u, v)) = queue.pop_front() {
        for a in gens {
            let e = norm((a.map(meta, u), a.map(meta, v)));
            if seen.insert(e) {
                queue.push_back(e);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_unstable();
    out
}
