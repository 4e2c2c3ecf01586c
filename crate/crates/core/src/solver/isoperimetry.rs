//! Lower bounds on the vertex-isoperimetric profile of k-ary n-cubes.
//!
//! `φ(m)` is the least `|N(B)|` over vertex sets `B` of size `m`. Small cubes
//! get the exact profile by brute force. Larger ones are bounded by splitting
//! `B` across the classes `Q[0..k]` of one dimension: inside class `i` the
//! neighborhood holds `N(B_i)` taken within the class, and also the images of
//! `B_{i-1}` and `B_{i+1}` under the perfect matchings into `Q[i]` minus `B_i`.

use crate::cube::{build_kary_cube, CubeMeta};
use crate::Set32;

/// Largest cube whose profile is computed by brute force.
const BRUTE_FORCE_VERTICES: usize = 16;
/// Largest number of class-size splits the lifting step will scan.
const MAX_SPLITS: u128 = 50_000_000;

/// Lower bounds `φ_lb(m)` for `m = 0..=k^n`, or `None` when lifting to this
/// dimension would be too expensive.
pub fn cube_profile(meta: &CubeMeta) -> Option<Vec<usize>> {
    let k = meta.k() as usize;
    let mut profile = cycle_profile(k);
    for level in 2..=meta.n() {
        let size = k.checked_pow(level as u32)?;
        profile = if size <= BRUTE_FORCE_VERTICES {
            brute_force_profile(meta.k(), level)
        } else {
            lift(&profile, k)?
        };
    }
    Some(profile)
}

/// Exact profile of `Q_1^k`: the cycle `C_k`, or a single edge when `k = 2`.
fn cycle_profile(k: usize) -> Vec<usize> {
    (0..=k)
        .map(|m| match m {
            0 => 0,
            m if m == k => 0,
            m if m == k - 1 => 1,
            _ => 2,
        })
        .collect()
}

/// Exact profile by trying every subset.
pub fn brute_force_profile(k: u32, n: usize) -> Vec<usize> {
    let (g, _) = build_kary_cube(k, n).expect("small cube");
    let v = g.vertex_count();
    assert!(
        v <= BRUTE_FORCE_VERTICES,
        "brute force limited to {BRUTE_FORCE_VERTICES} vertices"
    );
    let rows: Vec<u32> = g.rows_as::<Set32>().iter().map(|r| r.bits()).collect();
    let mut best = vec![usize::MAX; v + 1];
    for mask in 0u32..(1 << v) {
        let mut nb = 0u32;
        let mut rest = mask;
        while rest != 0 {
            nb |= rows[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        let m = mask.count_ones() as usize;
        best[m] = best[m].min((nb & !mask).count_ones() as usize);
    }
    best
}

/// One dimension up: minimum over all splits `(a_0, …, a_{k-1})` of `m`.
fn lift(prev: &[usize], k: usize) -> Option<Vec<usize>> {
    let class = prev.len() - 1;
    if ((class + 1) as u128).checked_pow(k as u32)? > MAX_SPLITS {
        return None;
    }
    let mut out = vec![usize::MAX; class * k + 1];
    let mut split = vec![0usize; k];
    loop {
        let m: usize = split.iter().sum();
        let cost: usize = (0..k)
            .map(|i| {
                let a = split[i];
                let mut c = prev[a];
                for j in [(i + k - 1) % k, (i + 1) % k] {
                    if j != i {
                        c = c.max(split[j].saturating_sub(a));
                    }
                }
                c
            })
            .sum();
        out[m] = out[m].min(cost);

        // Odometer increment over [0, class]^k.
        let mut i = 0;
        while i < k && split[i] == class {
            split[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        split[i] += 1;
    }
    Some(out)
}
