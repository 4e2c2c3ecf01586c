//! Seeded fault-set generators.
//!
//! Uniform random subsets almost never disconnect a cube, so most families
//! start from neighborhoods of small connected fragments and then pad or
//! trim to the target size. Sample `i` is drawn from its own ChaCha stream
//! keyed by `(seed, i)`, which makes every sample independent of how the
//! work is split across threads.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, VertexSet};
use crate::graph::{neighborhood_of_set, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub seed: u64,
    pub count: u64,
}

/// The generator families, drawn with equal probability among those that
/// are enabled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Uniform subset of uniform size in `1..=bound`.
    Uniform,
    /// `N(A)` for a random connected `A` of 1 to 4 vertices.
    FragmentNeighborhood,
    /// Union of `N(A_i)` for two or three nearby small fragments.
    MultiFragment,
    /// One of the supplied anchor sets.
    Anchor,
    /// A vertex neighborhood inside every class of a partition.
    PerClass,
}

pub struct FaultSampler<'a> {
    g: &'a Graph,
    bound: usize,
    seed: u64,
    anchors: Vec<VertexSet>,
    classes: Vec<VertexSet>,
    families: Vec<Family>,
}

impl<'a> FaultSampler<'a> {
    /// Fault sets of size at most `bound` in `g`.
    pub fn new(g: &'a Graph, bound: usize, seed: u64) -> Self {
        FaultSampler {
            g,
            bound: bound.min(g.vertex_count()),
            seed,
            anchors: Vec::new(),
            classes: Vec::new(),
            families: vec![Family::Uniform, Family::FragmentNeighborhood, Family::MultiFragment],
        }
    }

    /// Adds fixed starting sets, trimmed or padded to size per sample.
    pub fn with_anchors(mut self, anchors: Vec<VertexSet>) -> Self {
        if !anchors.is_empty() && !self.families.contains(&Family::Anchor) {
            self.families.push(Family::Anchor);
        }
        self.anchors = anchors;
        self
    }

    /// Enables the per-class family over the given vertex classes: one
    /// random vertex per class has its within-class neighborhood removed.
    pub fn with_classes(mut self, classes: Vec<VertexSet>) -> Self {
        if !classes.is_empty() && !self.families.contains(&Family::PerClass) {
            self.families.push(Family::PerClass);
        }
        self.classes = classes;
        self
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    /// The `index`-th sample.
    pub fn sample(&self, index: u64) -> (Family, VertexSet) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let family = *self.families.choose(&mut rng).expect("at least one family");
        let base = match family {
            Family::Uniform => {
                let size = rng.gen_range(1..=self.bound.max(1));
                return (family, self.resize(self.g.empty_set(), size, &mut rng, None));
            }
            Family::FragmentNeighborhood => {
                let order = rng.gen_range(1..=4);
                let start = rng.gen_range(0..self.g.vertex_count());
                let a = self.grow(start, order, &mut rng);
                let cut = neighborhood_of_set(self.g, &a, false);
                return (family, self.pad_or_trim(cut, &a, &mut rng));
            }
            Family::MultiFragment => {
                let pieces = rng.gen_range(2..=3);
                let anchor = rng.gen_range(0..self.g.vertex_count());
                let mut fragments = self.g.empty_set();
                for _ in 0..pieces {
                    let start = self.walk(anchor, 2, &mut rng);
                    let order = rng.gen_range(1..=2);
                    fragments.union_with(&self.grow(start, order, &mut rng));
                }
                let cut = neighborhood_of_set(self.g, &fragments, false);
                return (family, self.pad_or_trim(cut, &fragments, &mut rng));
            }
            Family::Anchor => self.anchors.choose(&mut rng).expect("anchors present").clone(),
            Family::PerClass => {
                let mut cut = self.g.empty_set();
                for class in &self.classes {
                    let members = class.to_vec();
                    let x = *members.choose(&mut rng).expect("nonempty class");
                    cut.union_with(&self.g.row(x).intersection(class));
                }
                cut
            }
        };
        let keep = self.g.empty_set();
        (family, self.pad_or_trim(base, &keep, &mut rng))
    }

    /// Pads `cut` up to a random size in `|cut|..=bound` with vertices
    /// outside `protect`, or trims it at random down to `bound`.
    fn pad_or_trim(&self, cut: VertexSet, protect: &VertexSet, rng: &mut ChaCha8Rng) -> VertexSet {
        if cut.len() >= self.bound {
            return self.resize(cut, self.bound, rng, Some(protect));
        }
        let size = rng.gen_range(cut.len()..=self.bound);
        self.resize(cut, size, rng, Some(protect))
    }

    fn resize(&self, mut set: VertexSet, size: usize, rng: &mut ChaCha8Rng, protect: Option<&VertexSet>) -> VertexSet {
        if set.len() > size {
            let mut members = set.to_vec();
            members.shuffle(rng);
            for v in members.into_iter().take(set.len() - size) {
                set.remove(v);
            }
            return set;
        }
        let mut outside = self.g.full_set().difference(&set);
        if let Some(p) = protect {
            outside.difference_with(p);
        }
        let mut pool = outside.to_vec();
        let extra = (size - set.len()).min(pool.len());
        let (chosen, _) = pool.partial_shuffle(rng, extra);
        for &v in chosen.iter() {
            set.insert(v);
        }
        set
    }

    /// A random connected set of up to `order` vertices grown from `start`.
    fn grow(&self, start: usize, order: usize, rng: &mut ChaCha8Rng) -> VertexSet {
        let mut set = VertexSet::singleton(self.g.vertex_count(), start);
        while set.len() < order {
            let frontier = neighborhood_of_set(self.g, &set, false).to_vec();
            match frontier.choose(rng) {
                Some(&v) => set.insert(v),
                None => break,
            }
        }
        set
    }

    fn walk(&self, start: usize, steps: usize, rng: &mut ChaCha8Rng) -> usize {
        let mut v = start;
        for _ in 0..steps {
            if let Some(&next) = self.g.neighbors(v).choose(rng) {
                v = next;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::build_kary_cube;
    use crate::graph::components;

    #[test]
    fn samples_are_reproducible_and_bounded() {
        let (g, _) = build_kary_cube(3, 4).unwrap();
        let a = FaultSampler::new(&g, 19, 5);
        let b = FaultSampler::new(&g, 19, 5);
        for i in 0..500 {
            let (fa, sa) = a.sample(i);
            assert_eq!((fa, &sa), (b.sample(i).0, &b.sample(i).1));
            assert!(sa.len() <= 19 && !sa.is_empty());
        }
        let c = FaultSampler::new(&g, 19, 6);
        assert!((0..50).any(|i| c.sample(i).1 != a.sample(i).1));
    }

    #[test]
    fn adversarial_families_disconnect_often() {
        let (g, _) = build_kary_cube(3, 4).unwrap();
        let s = FaultSampler::new(&g, 19, 1);
        let mut disconnected = 0;
        for i in 0..600 {
            if components(&g, &s.sample(i).1).len() >= 2 {
                disconnected += 1;
            }
        }
        assert!(disconnected > 100, "only {disconnected} disconnecting samples");
    }
}
