//! Lexicographic k-subset enumeration, split into independent work units.
//!
//! A size-`s` sweep over `0..n` is cut into *prefixes*: the first one or two
//! members of each subset. Prefixes are listed in lexicographic order and
//! each one's completions are visited in lexicographic order, so walking the
//! prefixes in order reproduces the global lexicographic order. Parallel
//! callers process prefixes independently and merge results in prefix order.

use std::ops::ControlFlow;

use crate::bitset::BitSet;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `Σ_{s ≤ bound} C(n, s)`, saturating.
pub fn subsets_up_to(n: usize, bound: usize) -> u128 {
    (0..=bound.min(n)).fold(0u128, |acc, s| acc.saturating_add(binomial(n, s)))
}

/// Work units for a size-`s` sweep over `0..n`, in lexicographic order.
pub fn prefixes(n: usize, s: usize) -> Vec<Vec<usize>> {
    if s > n {
        return Vec::new();
    }
    let depth = s.min(2);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(depth);
    fn grow(n: usize, s: usize, depth: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == depth {
            out.push(current.clone());
            return;
        }
        let p = current.len();
        // Position p may hold at most n - s + p so the subset can still be completed.
        for v in start..=(n - s + p) {
            current.push(v);
            grow(n, s, depth, v + 1, current, out);
            current.pop();
        }
    }
    grow(n, s, depth, 0, &mut current, &mut out);
    out
}

/// Visits every size-`s` subset of `0..universe` that starts with `prefix`,
/// in lexicographic order, stopping at the first `Break`.
pub fn visit_completions<S: BitSet, B>(
    universe: usize,
    prefix: &[usize],
    s: usize,
    f: &mut impl FnMut(&S) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut mask = S::from_indices(universe, prefix.iter().copied());
    let start = prefix.last().map_or(0, |&v| v + 1);
    extend(universe, start, s - prefix.len(), &mut mask, f)
}

fn extend<S: BitSet, B>(
    universe: usize,
    start: usize,
    remaining: usize,
    mask: &mut S,
    f: &mut impl FnMut(&S) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if remaining == 0 {
        return f(mask);
    }
    for v in start..=(universe - remaining) {
        mask.insert(v);
        extend(universe, v + 1, remaining - 1, mask, f)?;
        mask.remove(v);
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Set32;

    #[test]
    fn binomials() {
        assert_eq!(binomial(27, 6), 296_010);
        assert_eq!(binomial(9, 2), 36);
        assert_eq!(binomial(81, 2), 3240);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(subsets_up_to(4, 4), 16);
        // Pascal's rule as an independent check.
        for n in 1..40 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    fn all_subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for p in prefixes(n, s) {
            let _ = visit_completions::<Set32, ()>(n, &p, s, &mut |m| {
                out.push(m.to_vec());
                ControlFlow::Continue(())
            });
        }
        out
    }

    #[test]
    fn enumeration_is_complete_and_lexicographic() {
        for n in 0..10 {
            for s in 0..=n + 1 {
                let got = all_subsets(n, s);
                let mut expected: Vec<Vec<usize>> = (0u32..(1 << n))
                    .filter(|m| m.count_ones() as usize == s)
                    .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
                    .collect();
                expected.sort();
                assert_eq!(got, expected, "n={n} s={s}");
                assert_eq!(got.len() as u128, binomial(n, s));
            }
        }
    }

    #[test]
    fn early_exit_returns_first_match() {
        let mut seen = 0;
        let hit = visit_completions::<Set32, Vec<usize>>(6, &[1], 3, &mut |m| {
            seen += 1;
            if m.contains(4) {
                ControlFlow::Break(m.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(hit, ControlFlow::Break(vec![1, 2, 4]));
        assert_eq!(seen, 2);
    }
}
