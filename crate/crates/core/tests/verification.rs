use cubekappa::verify::{
    verify_bounded_cut_structure, verify_common_neighbors, verify_regularity_partition_transitivity,
    verify_subcube_union_connected, CutSweepOptions, SampleSpec, SweepMode, Violation,
};
use cubekappa::{build_kary_cube, components, BitSet, CubeMeta, Error, Pattern, Verdict};

/// Σ_{s ≤ bound} C(n, s) via Pascal's triangle, independent of the library.
fn subset_total(n: usize, bound: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.iter().take(bound + 1).sum()
}

#[test]
fn singleton_cuts_exhaustive_small() {
    let (g, _) = build_kary_cube(3, 2).unwrap();
    let out = verify_bounded_cut_structure(
        &g,
        4,
        Pattern::SINGLETON_CUTS,
        &SweepMode::Exhaustive,
        &Default::default(),
    )
    .unwrap();
    assert_eq!(out.verdict, Verdict::Pass);
    assert_eq!(out.checked_count, subset_total(9, 4));
    assert_eq!(out.smallest_cut_size, Some(4));

    let (g3, _) = build_kary_cube(3, 3).unwrap();
    let out = verify_bounded_cut_structure(
        &g3,
        8,
        Pattern::SINGLETON_CUTS,
        &SweepMode::Exhaustive,
        &Default::default(),
    )
    .unwrap();
    assert!(out.passed());
    assert_eq!(out.checked_count, subset_total(27, 8));
    assert_eq!(out.smallest_cut_size, Some(6));
}

#[test]
fn too_large_a_bound_is_a_violation() {
    // Beyond 4n − 4 an edge can be cut off.
    let (g, _) = build_kary_cube(3, 2).unwrap();
    let out = verify_bounded_cut_structure(
        &g,
        5,
        Pattern::SINGLETON_CUTS,
        &SweepMode::Exhaustive,
        &Default::default(),
    )
    .unwrap();
    assert_eq!(out.verdict, Verdict::Fail);
    for v in &out.violations {
        let Violation::Cut(report) = v else {
            panic!("unexpected violation kind")
        };
        // Every violation re-checks as a genuine disconnection.
        let comps = components(&g, &report.fault_set);
        assert!(comps.len() >= 2);
        assert_eq!(comps, report.components);
        assert_eq!(report.matched, Pattern::Violation);
        assert!(report.fault_set.len() <= 5);
    }
    assert!(out.violations.len() <= CutSweepOptions::default().max_violations);
}

#[test]
fn exhaustive_budget_is_enforced() {
    let (g, _) = build_kary_cube(3, 3).unwrap();
    let opts = CutSweepOptions {
        max_subsets: 1000,
        ..Default::default()
    };
    let r = verify_bounded_cut_structure(&g, 5, Pattern::SINGLETON_CUTS, &SweepMode::Exhaustive, &opts);
    assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
}

#[test]
fn sampled_sweeps_reproduce() {
    let (g, _) = build_kary_cube(3, 4).unwrap();
    let mode = SweepMode::Sample(SampleSpec { seed: 9, count: 3000 });
    let a = verify_bounded_cut_structure(&g, 19, Pattern::THREE_EXTRA_CUTS, &mode, &Default::default()).unwrap();
    let b = verify_bounded_cut_structure(&g, 19, Pattern::THREE_EXTRA_CUTS, &mode, &Default::default()).unwrap();
    assert_eq!(a, b);
    assert!(a.passed());
    assert_eq!(a.checked_count, 3000);
    assert!(!a.patterns_seen.is_empty());

    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let c = pool
        .install(|| verify_bounded_cut_structure(&g, 19, Pattern::THREE_EXTRA_CUTS, &mode, &Default::default()))
        .unwrap();
    assert_eq!(a, c);
}

#[test]
fn common_neighbors_q4() {
    let out = verify_common_neighbors(&CubeMeta::new(3, 4).unwrap()).unwrap();
    assert!(out.passed());
    assert_eq!(out.checked_count, 3240);
}

#[test]
fn regularity_examples() {
    for (k, n) in [(3, 2), (3, 3), (2, 3)] {
        assert!(verify_regularity_partition_transitivity(&CubeMeta::new(k, n).unwrap())
            .unwrap()
            .passed());
    }
}

#[test]
fn subcube_union_sample() {
    let (g, m) = build_kary_cube(3, 4).unwrap();
    let spec = SampleSpec { seed: 1, count: 4000 };
    let out = verify_subcube_union_connected(&g, &m, 0, &spec, None).unwrap();
    assert!(out.passed());
    assert!(out.skipped > 0, "the per-class family should force |I| = 3 sometimes");
    assert_eq!(out.checked_count + out.skipped, 4000);
    for j in 1..4 {
        assert!(
            verify_subcube_union_connected(&g, &m, j, &SampleSpec { seed: 2, count: 500 }, None)
                .unwrap()
                .passed()
        );
    }
}
