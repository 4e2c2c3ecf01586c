use rayon::prelude::*;

use super::sampling::{FaultSampler, SampleSpec};
use super::{CutReport, Pattern, Scope, Tally, VerificationOutcome, Violation};
use crate::bitset::{BitSet, VertexSet};
use crate::constructions::extremal_cut;
use crate::cube::{
    automorphism_generators, build_kary_cube, edge_orbit, outer_neighbors, partition_over_dimension, vertex_orbit,
    CubeMeta,
};
use crate::error::{Error, Result};
use crate::graph::{components, flood, neighborhood_of_set, Graph};

/// Largest cube for which orbits are computed.
pub const ORBIT_VERTEX_LIMIT: usize = 4096;

fn require_ternary(meta: &CubeMeta, min_n: usize) -> Result<()> {
    if meta.k() != 3 || meta.n() < min_n {
        return Err(Error::Hypothesis(format!(
            "claim concerns Q_n^3 with n >= {min_n}, got k = {}, n = {}",
            meta.k(),
            meta.n()
        )));
    }
    Ok(())
}

/// Adjacent vertices of `Q_n^3` share exactly one neighbor; nonadjacent
/// ones share none or exactly two.
pub fn verify_common_neighbors(meta: &CubeMeta) -> Result<VerificationOutcome> {
    require_ternary(meta, 2)?;
    let (g, _) = build_kary_cube(meta.k(), meta.n())?;
    let n = g.vertex_count();
    let mut out = VerificationOutcome::new("common-neighbors", Scope::Complete);
    for u in 0..n {
        for v in u + 1..n {
            out.checked_count += 1;
            let adjacent = g.has_edge(u, v);
            let count = g.row(u).intersection_len(g.row(v));
            let ok = if adjacent { count == 1 } else { count == 0 || count == 2 };
            if !ok {
                out.violations
                    .push(Violation::CommonNeighbors { u, v, adjacent, count });
            }
        }
    }
    Ok(out.finish())
}

/// Degree and edge counts, the subcube partition along every dimension,
/// outer-neighbor placement, adjacency preservation by the automorphism
/// generators, and single vertex and edge orbits.
pub fn verify_regularity_partition_transitivity(meta: &CubeMeta) -> Result<VerificationOutcome> {
    if meta.vertex_count() > ORBIT_VERTEX_LIMIT {
        return Err(Error::BudgetExceeded {
            required: meta.vertex_count() as u128,
            budget: ORBIT_VERTEX_LIMIT as u128,
        });
    }
    let (g, _) = build_kary_cube(meta.k(), meta.n())?;
    let (k, n, size) = (meta.k() as usize, meta.n(), meta.vertex_count());
    let mut out = VerificationOutcome::new("regularity", Scope::Complete);
    let fail = |out: &mut VerificationOutcome, detail: String| {
        out.violations.push(Violation::Property { detail });
    };

    let (degree, edges) = if k >= 3 { (2 * n, n * size) } else { (n, n * size / 2) };
    for v in 0..size {
        out.checked_count += 1;
        if g.degree(v) != degree {
            fail(
                &mut out,
                format!("vertex {v} has degree {}, expected {degree}", g.degree(v)),
            );
        }
    }
    out.checked_count += 1;
    if g.edge_count() != edges {
        fail(&mut out, format!("{} edges, expected {edges}", g.edge_count()));
    }

    for j in 0..n {
        out.checked_count += 1;
        match partition_over_dimension(&g, meta, j, None) {
            Ok(p) => {
                if p.classes.iter().any(|c| c.len() != meta.class_size()) {
                    fail(&mut out, format!("dimension {j}: unequal classes"));
                }
            }
            Err(e) => fail(&mut out, format!("dimension {j}: {e}")),
        }
        for u in 0..size {
            out.checked_count += 1;
            let (l, r) = outer_neighbors(meta, u, j)?;
            let d = meta.digit(u, j) as usize;
            let placed = meta.digit(r, j) as usize == (d + 1) % k && meta.digit(l, j) as usize == (d + k - 1) % k;
            let distinct = if k >= 3 { l != r } else { l == r };
            if !placed || !distinct || !g.has_edge(u, l) || !g.has_edge(u, r) {
                fail(&mut out, format!("outer neighbors of {u} along {j} are ({l}, {r})"));
            }
        }
    }

    let gens = automorphism_generators(meta);
    for (i, a) in gens.iter().enumerate() {
        out.checked_count += 1;
        let image: Vec<usize> = (0..size).map(|u| a.map(meta, u)).collect();
        let mut seen = vec![false; size];
        let bijective = image.iter().all(|&x| !std::mem::replace(&mut seen[x], true));
        if !bijective || !g.edges().all(|(u, v)| g.has_edge(image[u], image[v])) {
            fail(&mut out, format!("generator {i} does not preserve adjacency"));
        }
    }
    out.checked_count += 2;
    let orbit = vertex_orbit(meta, &gens, 0);
    if orbit.len() != size {
        fail(
            &mut out,
            format!("vertex orbit of 0 has {} of {size} vertices", orbit.len()),
        );
    }
    if let Some(e) = g.edges().next() {
        let orbit = edge_orbit(meta, &gens, e);
        if orbit.len() != g.edge_count() {
            fail(
                &mut out,
                format!("edge orbit has {} of {} edges", orbit.len(), g.edge_count()),
            );
        }
    }
    Ok(out.finish())
}

/// For sampled `F` with `|F| ≤ bound` (default `8n − 13`) and `|I| ≤ 2`
/// along dimension `j`: the union of `Q[i] − F_i` over `i ∈ J` is connected,
/// and every component `H` of `G − F` missing that union has its
/// neighborhood inside `F_I ∪ F_J`. Samples with `|I| = 3` are counted as
/// skipped.
pub fn verify_subcube_union_connected(
    g: &Graph,
    meta: &CubeMeta,
    j: usize,
    spec: &SampleSpec,
    bound: Option<usize>,
) -> Result<VerificationOutcome> {
    require_ternary(meta, 4)?;
    if !meta.describes(g) {
        return Err(Error::CubeMismatch);
    }
    let bound = bound.unwrap_or(8 * meta.n() - 13);
    let classes = partition_over_dimension(g, meta, j, None)?.classes;

    // The extremal 3-extra cut is one vertex too large; trimming it keeps
    // the sampler next to the boundary of the hypothesis.
    let anchor = extremal_cut(g, meta, 3)?.cut;
    let sampler = FaultSampler::new(g, bound, spec.seed)
        .with_anchors(vec![anchor])
        .with_classes(classes);

    const CHUNK: u64 = 2048;
    let chunks: Vec<u64> = (0..spec.count.div_ceil(CHUNK)).collect();
    let tally = chunks
        .par_iter()
        .map(|&c| {
            let mut t = Tally::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(spec.count) {
                let (_, fault) = sampler.sample(i);
                match check_union(g, meta, j, &fault) {
                    Ok(None) => t.skipped += 1,
                    Ok(Some(true)) => t.checked += 1,
                    Ok(Some(false)) | Err(_) => {
                        t.checked += 1;
                        let mut report = CutReport::new(g, &fault, &[]);
                        report.matched = Pattern::Violation;
                        t.violations.push(Violation::Cut(report));
                    }
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), |a, b| a.merge(b, usize::MAX));
    Ok(tally.into_outcome("subcube-union", Scope::Sample(spec.clone())))
}

/// `None` when `|I| ≥ 3`, otherwise whether both conclusions hold.
fn check_union(g: &Graph, meta: &CubeMeta, j: usize, fault: &VertexSet) -> Result<Option<bool>> {
    let p = partition_over_dimension(g, meta, j, Some(fault))?;
    if p.disconnected.len() >= 3 {
        return Ok(None);
    }
    let union = p.union_of(&p.connected).difference(fault);
    let connected = match union.first() {
        Some(v) => flood(g.rows(), &union, v).len() == union.len(),
        None => true,
    };
    let f_i = p.faults_of(&p.disconnected);
    let f_j = p.faults_of(&p.connected);
    let q_i = p.union_of(&p.disconnected);
    let q_j = p.union_of(&p.connected);
    let boundaries_ok = components(g, fault).iter().filter(|h| !h.intersects(&union)).all(|h| {
        let nb = neighborhood_of_set(g, h, false);
        nb.intersection(&q_i).is_subset(&f_i) && nb.intersection(&q_j).is_subset(&f_j)
    });
    Ok(Some(connected && boundaries_ok))
}
