//! Dense vertex sets.
//!
//! Every solver in this crate works over a fixed universe `0..n` of vertex
//! indices. Two realizations exist:
//!
//! * [`WordSet<W>`] packs the whole universe into one machine word and is
//!   generic over the word type through [`num_traits::PrimInt`]. The
//!   exhaustive engines run on these (`u32`, `u64` or `u128`, picked from
//!   the universe size).
//! * [`VertexSet`] is a heap-backed block vector for arbitrary universes.
//!
//! Both implement [`BitSet`], which is what the generic algorithms are
//! written against.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_traits::PrimInt;
use serde::{Deserialize, Serialize};

/// Operations the graph algorithms need from a vertex set.
pub trait BitSet: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    /// Largest universe this representation can hold.
    const CAPACITY: usize;

    fn empty(universe: usize) -> Self;
    fn full(universe: usize) -> Self;
    fn universe(&self) -> usize;

    fn insert(&mut self, v: usize);
    fn remove(&mut self, v: usize);
    fn contains(&self, v: usize) -> bool;

    fn len(&self) -> usize;
    fn is_empty(&self) -> bool;
    fn first(&self) -> Option<usize>;

    fn union_with(&mut self, other: &Self);
    fn intersect_with(&mut self, other: &Self);
    fn difference_with(&mut self, other: &Self);

    fn intersection_len(&self, other: &Self) -> usize;
    fn intersects(&self, other: &Self) -> bool;
    fn is_subset(&self, other: &Self) -> bool;

    /// Visits members in ascending order.
    fn for_each(&self, f: impl FnMut(usize));

    fn singleton(universe: usize, v: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(v);
        s
    }

    fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for v in indices {
            s.insert(v);
        }
        s
    }

    fn to_vec(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        self.for_each(|v| out.push(v));
        out
    }

    fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }
}

/// Compares two sets as ascending index sequences (lexicographic order on
/// the sorted member lists).
pub fn lex_cmp<S: BitSet>(a: &S, b: &S) -> Ordering {
    a.to_vec().cmp(&b.to_vec())
}

/// Single-word vertex set over a universe of at most `W::BITS` vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct WordSet<W> {
    bits: W,
    universe: u16,
}

impl<W: PrimInt> WordSet<W> {
    pub const BITS: usize = std::mem::size_of::<W>() * 8;

    #[inline]
    pub fn bits(&self) -> W {
        self.bits
    }

    #[inline]
    pub fn from_bits(universe: usize, bits: W) -> Self {
        WordSet {
            bits,
            universe: universe as u16,
        }
    }

    #[inline]
    fn bit(v: usize) -> W {
        W::one() << v
    }
}

impl<W: PrimInt> fmt::Debug for WordSet<W>
where
    W: Hash + Send + Sync + fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_vec()).finish()
    }
}

impl<W> BitSet for WordSet<W>
where
    W: PrimInt + Hash + Send + Sync + fmt::Debug,
{
    const CAPACITY: usize = std::mem::size_of::<W>() * 8;

    #[inline]
    fn empty(universe: usize) -> Self {
        assert!(universe <= Self::CAPACITY, "universe {universe} exceeds word width");
        Self::from_bits(universe, W::zero())
    }

    #[inline]
    fn full(universe: usize) -> Self {
        assert!(universe <= Self::CAPACITY, "universe {universe} exceeds word width");
        let bits = if universe == Self::CAPACITY {
            !W::zero()
        } else {
            (W::one() << universe) - W::one()
        };
        Self::from_bits(universe, bits)
    }

    #[inline]
    fn universe(&self) -> usize {
        self.universe as usize
    }

    #[inline]
    fn insert(&mut self, v: usize) {
        debug_assert!(v < self.universe());
        self.bits = self.bits | Self::bit(v);
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        self.bits = self.bits & !Self::bit(v);
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        v < self.universe() && (self.bits & Self::bit(v)) != W::zero()
    }

    #[inline]
    fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.bits == W::zero()
    }

    #[inline]
    fn first(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    #[inline]
    fn union_with(&mut self, other: &Self) {
        self.bits = self.bits | other.bits;
    }

    #[inline]
    fn intersect_with(&mut self, other: &Self) {
        self.bits = self.bits & other.bits;
    }

    #[inline]
    fn difference_with(&mut self, other: &Self) {
        self.bits = self.bits & !other.bits;
    }

    #[inline]
    fn intersection_len(&self, other: &Self) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    #[inline]
    fn intersects(&self, other: &Self) -> bool {
        (self.bits & other.bits) != W::zero()
    }

    #[inline]
    fn is_subset(&self, other: &Self) -> bool {
        (self.bits & !other.bits) == W::zero()
    }

    #[inline]
    fn for_each(&self, mut f: impl FnMut(usize)) {
        let mut rest = self.bits;
        while rest != W::zero() {
            let v = rest.trailing_zeros() as usize;
            f(v);
            rest = rest & (rest - W::one());
        }
    }
}

const BLOCK: usize = 64;

/// Heap-backed vertex set for universes of any size.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl VertexSet {
    fn blocks_for(universe: usize) -> usize {
        universe.div_ceil(BLOCK)
    }

    /// Ascending iterator over the members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * BLOCK + v)
            })
        })
    }

    /// Copies the members into a representation of another width.
    pub fn convert<S: BitSet>(&self) -> S {
        S::from_indices(self.universe, self.iter())
    }

    /// Builds a `VertexSet` from any other set representation.
    pub fn from_set<S: BitSet>(set: &S) -> Self {
        let mut out = VertexSet::empty(set.universe());
        set.for_each(|v| out.insert(v));
        out
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitSet for VertexSet {
    const CAPACITY: usize = usize::MAX;

    fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            blocks: vec![0; Self::blocks_for(universe)],
        }
    }

    fn full(universe: usize) -> Self {
        let mut blocks = vec![!0u64; Self::blocks_for(universe)];
        let tail = universe % BLOCK;
        if tail != 0 {
            if let Some(last) = blocks.last_mut() {
                *last = (1u64 << tail) - 1;
            }
        }
        VertexSet { universe, blocks }
    }

    fn universe(&self) -> usize {
        self.universe
    }

    fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.blocks[v / BLOCK] |= 1 << (v % BLOCK);
    }

    fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.blocks[v / BLOCK] &= !(1 << (v % BLOCK));
        }
    }

    fn contains(&self, v: usize) -> bool {
        v < self.universe && self.blocks[v / BLOCK] & (1 << (v % BLOCK)) != 0
    }

    fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    fn first(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * BLOCK + b.trailing_zeros() as usize)
    }

    fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    fn difference_with(&mut self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    fn intersection_len(&self, other: &Self) -> usize {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn intersects(&self, other: &Self) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    fn for_each(&self, mut f: impl FnMut(usize)) {
        for v in self.iter() {
            f(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Set32;
    use proptest::prelude::*;

    #[test]
    fn full_word_at_capacity() {
        let s = <WordSet<u32>>::full(32);
        assert_eq!(s.len(), 32);
        let s = <WordSet<u128>>::full(81);
        assert_eq!(s.len(), 81);
        assert_eq!(VertexSet::full(130).len(), 130);
        assert_eq!(VertexSet::full(128).len(), 128);
    }

    #[test]
    fn iteration_is_ascending() {
        let s = VertexSet::from_indices(200, [150, 3, 64, 63, 0]);
        assert_eq!(s.to_vec(), vec![0, 3, 63, 64, 150]);
        assert_eq!(s.first(), Some(0));
    }

    #[test]
    fn lex_order_is_on_sorted_members() {
        let a = Set32::from_indices(10, [0, 5]);
        let b = Set32::from_indices(10, [1, 2]);
        assert_eq!(lex_cmp(&a, &b), Ordering::Less);
    }

    proptest! {
        #[test]
        fn word_and_block_sets_agree(
            a in proptest::collection::btree_set(0usize..100, 0..40),
            b in proptest::collection::btree_set(0usize..100, 0..40),
        ) {
            let wa = <WordSet<u128>>::from_indices(100, a.iter().copied());
            let wb = <WordSet<u128>>::from_indices(100, b.iter().copied());
            let va = VertexSet::from_indices(100, a.iter().copied());
            let vb = VertexSet::from_indices(100, b.iter().copied());
            prop_assert_eq!(wa.union(&wb).to_vec(), va.union(&vb).to_vec());
            prop_assert_eq!(wa.difference(&wb).to_vec(), va.difference(&vb).to_vec());
            prop_assert_eq!(wa.intersection_len(&wb), va.intersection_len(&vb));
            prop_assert_eq!(wa.is_subset(&wb), va.is_subset(&vb));
            prop_assert_eq!(va.convert::<WordSet<u128>>(), wa);
            let expected: Vec<usize> = a.union(&b).copied().collect();
            prop_assert_eq!(va.union(&vb).to_vec(), expected);
        }
    }
}
