use cubekappa::graph::{components, is_h_extra_cut};
use cubekappa::{
    build_kary_cube, exact_extra_connectivity, fragment_search_bounds, neighborhood_of_set, BitSet, Error, Evidence,
    ExhaustiveBudget, ExtraConnectivityResult, FragmentOptions, Graph, VertexSet,
};
use rand::{Rng, SeedableRng};

fn exhaustive(g: &Graph, h: usize) -> ExtraConnectivityResult {
    exact_extra_connectivity(g, h, &ExhaustiveBudget::default()).unwrap()
}

fn cube_options(k: u32, n: usize) -> FragmentOptions {
    let (_, meta) = build_kary_cube(k, n).unwrap();
    FragmentOptions {
        cube: Some(meta),
        symmetry_reduction: true,
        ..Default::default()
    }
}

fn assert_certificate(g: &Graph, r: &ExtraConnectivityResult) {
    if let Some(c) = &r.certificate {
        assert!(is_h_extra_cut(g, &c.cut, r.h));
        assert_eq!(Some(c.cut.len()), r.value);
        assert_eq!(c.components, components(g, &c.cut));
    }
}

/// κ_h by scanning all 2^n subsets; only usable for tiny graphs.
fn brute_extra(g: &Graph, h: usize) -> Option<usize> {
    let n = g.vertex_count();
    (0u32..(1 << n))
        .filter(|&m| is_h_extra_cut(g, &VertexSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)), h))
        .map(|m| m.count_ones() as usize)
        .min()
}

#[test]
fn exhaustive_examples() {
    let (q2, _) = build_kary_cube(3, 2).unwrap();
    let r = exhaustive(&q2, 1);
    assert_eq!(r.value, Some(5));
    assert_eq!(r.evidence, Evidence::Exhaustive { searched_up_to: 5 });
    assert_certificate(&q2, &r);

    let r = exhaustive(&q2, 0);
    assert_eq!(r.value, Some(4));
    let comps = &r.certificate.as_ref().unwrap().components;
    assert_eq!(comps.last().unwrap().len(), 1);
    // Minimum cuts isolate a vertex, so the first one is the least sorted
    // neighbor list.
    let first = (0..9).map(|v| q2.neighbors(v).to_vec()).min().unwrap();
    assert_eq!(first, vec![0, 1, 5, 8]);
    assert_eq!(r.certificate.unwrap().cut.to_vec(), first);
}

#[test]
fn exhaustive_bounds_and_budget() {
    let (q2, _) = build_kary_cube(3, 2).unwrap();
    let r = exact_extra_connectivity(
        &q2,
        1,
        &ExhaustiveBudget {
            max_cut_size: Some(4),
            max_subsets: u128::MAX,
        },
    )
    .unwrap();
    assert_eq!(r.value, None);
    assert_eq!(r.evidence, Evidence::Exhaustive { searched_up_to: 4 });

    let r = exact_extra_connectivity(
        &q2,
        1,
        &ExhaustiveBudget {
            max_cut_size: None,
            max_subsets: 100,
        },
    )
    .unwrap();
    assert_eq!(r.evidence, Evidence::Inconclusive { budget: 100 });

    // A complete graph has no vertex cut at all.
    let r = exhaustive(&Graph::complete(5), 0);
    assert_eq!(
        (r.value, r.evidence),
        (None, Evidence::Exhaustive { searched_up_to: 5 })
    );

    let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert_eq!(
        exact_extra_connectivity(&split, 0, &ExhaustiveBudget::default()),
        Err(Error::Disconnected)
    );
}

#[test]
fn fragment_examples() {
    let (q3, _) = build_kary_cube(3, 3).unwrap();
    let r = fragment_search_bounds(&q3, 3, &cube_options(3, 3)).unwrap();
    assert_eq!((r.value, &r.evidence), (Some(12), &Evidence::FragmentExact));
    assert_certificate(&q3, &r);

    let c6 = Graph::cycle(6);
    let r = fragment_search_bounds(&c6, 1, &FragmentOptions::default()).unwrap();
    assert_eq!((r.value, &r.evidence), (Some(2), &Evidence::FragmentExact));
    assert_eq!(brute_extra(&c6, 1), Some(2));

    let r = fragment_search_bounds(
        &q3,
        3,
        &FragmentOptions {
            symmetry_reduction: true,
            ..Default::default()
        },
    );
    assert_eq!(r, Err(Error::SymmetryWithoutTransitivity));
    let r = fragment_search_bounds(&c6, 1, &cube_options(3, 3));
    assert_eq!(r, Err(Error::CubeMismatch));
}

#[test]
fn fragment_q4_h3() {
    let (q4, _) = build_kary_cube(3, 4).unwrap();
    let r = fragment_search_bounds(&q4, 3, &cube_options(3, 4)).unwrap();
    assert_eq!((r.value, &r.evidence), (Some(20), &Evidence::FragmentExact));
    assert_certificate(&q4, &r);
}

#[test]
fn small_fragment_caps_are_not_exact() {
    let (q3, _) = build_kary_cube(3, 3).unwrap();
    let capped = |cap: usize, h: usize| {
        let mut o = cube_options(3, 3);
        o.budget.max_fragment_size = Some(cap);
        fragment_search_bounds(&q3, h, &o).unwrap()
    };
    // Fragments of size 4 are never grown, so nothing can be concluded.
    let r = capped(2, 3);
    assert_eq!(r.value, None);
    assert!(!r.is_conclusive(), "{r:?}");
    // κ₀ is reached by a single vertex and no larger fragment can do better.
    let r = capped(1, 0);
    assert_eq!((r.value, &r.evidence), (Some(6), &Evidence::FragmentExact));
    // κ₁: edges reach 9, but a cap of 2 cannot rule out larger fragments
    // whose neighborhoods the profile bounds only by 9 or less.
    let r = capped(2, 1);
    let (lower, upper) = r.bounds().unwrap();
    assert!(lower <= 9 && upper == 9, "{r:?}");
    for h in 0..=3 {
        let full = capped(13, h);
        assert_eq!(full.value, exhaustive(&q3, h).value);
        assert!(full.is_conclusive());
    }
}

#[test]
fn engines_agree_on_small_cubes() {
    for (k, n, hs) in [(3u32, 2usize, 0..=3usize), (2, 3, 0..=3), (3, 3, 0..=1)] {
        let (g, _) = build_kary_cube(k, n).unwrap();
        let mut previous = None;
        for h in hs {
            let ex = exhaustive(&g, h);
            assert_certificate(&g, &ex);
            for opts in [cube_options(k, n), FragmentOptions::default()] {
                let fr = fragment_search_bounds(&g, h, &opts).unwrap();
                assert_eq!(fr.evidence, Evidence::FragmentExact);
                assert_eq!(fr.value, ex.value, "k={k} n={n} h={h}");
                assert_certificate(&g, &fr);
            }
            if let (Some(a), Some(b)) = (previous, ex.value) {
                assert!(a <= b);
            }
            previous = ex.value;
        }
    }
}

fn random_connected(rng: &mut impl Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.15..0.7);
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

#[test]
fn engines_agree_with_brute_force_on_random_graphs() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..60 {
        let n = rng.gen_range(3..=11);
        let g = random_connected(&mut rng, n);
        for h in 0..=3 {
            let truth = brute_extra(&g, h);
            let ex = exhaustive(&g, h);
            let fr = fragment_search_bounds(&g, h, &FragmentOptions::default()).unwrap();
            assert_eq!(ex.value, truth);
            assert_eq!(fr.value, truth, "{:?} h={h}", g.edges().collect::<Vec<_>>());
            assert_certificate(&g, &ex);
            assert_certificate(&g, &fr);
        }
    }
}

#[test]
fn edge_neighborhoods_have_size_4n_minus_3() {
    for n in 2..=4 {
        let (g, _) = build_kary_cube(3, n).unwrap();
        for (u, v) in g.edges() {
            let e = g.set_of([u, v]).unwrap();
            assert_eq!(neighborhood_of_set(&g, &e, false).len(), 4 * n - 3);
        }
    }
}

#[test]
fn symmetry_reduction_is_sound_on_small_cubes() {
    // Any automorphic image of a qualifying fragment qualifies too, so fixing
    // the base vertex cannot change the answer.
    for (k, n) in [(3u32, 2usize), (4, 2), (3, 3)] {
        let (g, _) = build_kary_cube(k, n).unwrap();
        for h in 0..=2 {
            let with = fragment_search_bounds(&g, h, &cube_options(k, n)).unwrap();
            let mut opts = cube_options(k, n);
            opts.symmetry_reduction = false;
            let without = fragment_search_bounds(&g, h, &opts).unwrap();
            assert_eq!(with.value, without.value);
        }
    }
}
