mod common;

use common::*;
use leray_lab::complex::{SimplicialComplex, VertexSet};
use leray_lab::facet_graph;
use leray_lab::homology::{self, FaceTable};
use leray_lab::leray;
use leray_lab::ordering::{self, FacetOrdering, Limits};
use leray_lab::stanley_reisner as sr;
use leray_lab::structure;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shuffled(m: usize, seed: u64) -> FacetOrdering {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    FacetOrdering::new(perm).unwrap()
}

fn euler(values: impl IntoIterator<Item = i64>, start_sign: i64) -> i64 {
    values.into_iter().fold((0, start_sign), |(acc, s), v| (acc + s * v, -s)).0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn betti_matches_dense_oracle(x in arb_complex(8, 7)) {
        prop_assert_eq!(homology::all_betti(&x).unwrap().values, betti_oracle(&x));
    }

    #[test]
    fn leray_matches_definition(x in arb_complex(7, 6)) {
        prop_assert_eq!(leray::leray_number(&x).unwrap().leray, leray_oracle(&x));
    }

    #[test]
    fn boundary_squares_to_zero(x in arb_complex(8, 7)) {
        let t = FaceTable::of(&x);
        for n in 0..t.dim().max(0) as usize {
            prop_assert!(t.boundary(n).mul(&t.boundary(n + 1)).unwrap().is_zero());
        }
    }

    #[test]
    fn reduced_euler_identity(x in arb_complex(9, 7)) {
        let f = x.f_vector().unwrap();
        let b = homology::all_betti(&x).unwrap().values;
        // f starts at the empty face (sign -1), betti at dimension 0 (sign +1)
        let lhs = euler(f.counts.iter().map(|&c| c as i64), -1);
        let rhs = euler(b.iter().map(|&v| v as i64), 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_matches_relabelled_induced(x in arb_complex(8, 6), w in any::<u64>()) {
        let window = VertexSet::from_bits(w) & x.universe();
        let induced = x.induced(window);
        prop_assert_eq!(FaceTable::of(&x).restrict(window).all_betti(), FaceTable::of(&induced).all_betti());
        // inducing twice is inducing on the intersection
        let inner = VertexSet::from_bits(w.rotate_left(17)) & window;
        let relabel: VertexSet = window.iter().enumerate().filter(|(_, v)| inner.contains(*v)).map(|(i, _)| i).collect();
        prop_assert_eq!(induced.induced(relabel), x.induced(inner));
    }

    #[test]
    fn minimal_nonfaces_match_exhaustive_search(x in arb_complex(8, 6)) {
        let mut got = x.minimal_nonfaces().unwrap();
        got.sort_by_key(|s| (s.len(), s.bits()));
        prop_assert_eq!(got, minimal_nonfaces_oracle(&x));
    }

    #[test]
    fn sandwich_and_tree_identity(x in arb_complex(10, 7), seed in any::<u64>()) {
        let ord = shuffled(x.num_facets(), seed);
        let l = leray::leray_number(&x).unwrap().leray;
        let m = ordering::m_number(&x, Limits::default()).unwrap().m;
        let r = ordering::m_of_order(&x, &ord).unwrap();
        prop_assert!(l <= m && m <= r.m_value && r.m_value as i64 <= r.n_value);
        let g = facet_graph::weighted_graph(&x).unwrap();
        let chi = facet_graph::chi_w(&g, &facet_graph::construction_tree(&x, &ord).unwrap());
        prop_assert_eq!(r.n_value, chi - x.num_vertices() as i64 + 1);
        // N_≺ = m - |V| + |σ_first| + γ_≺
        let first = x.facets()[ord.as_slice()[0]].len() as i64;
        prop_assert_eq!(r.n_value, x.num_facets() as i64 - x.num_vertices() as i64 + first + r.gamma);
        prop_assert_eq!(r.gamma, gamma_of(x.facets(), ord.as_slice()));
    }

    #[test]
    fn dp_matches_permutation_oracles(x in arb_complex(8, 6)) {
        let limits = Limits::default();
        let dp = ordering::m_number(&x, limits).unwrap();
        prop_assert_eq!(dp.m, ordering::m_number_bruteforce(&x, limits).unwrap());
        prop_assert_eq!(ordering::m_of_order(&x, &dp.optimal_order).unwrap().m_value, dp.m);
        let g = ordering::gamma_min(&x, limits).unwrap();
        prop_assert_eq!(g.gamma, gamma_brute(&x));
        prop_assert_eq!(gamma_of(x.facets(), g.optimal_order.as_slice()), g.gamma);
    }

    #[test]
    fn weak_shelling_dp_matches_exhaustive_search(x in arb_complex(7, 6)) {
        let limits = Limits::default();
        let best = permutations(x.num_facets())
            .into_iter()
            .map(|p| ordering::m_of_order(&x, &FacetOrdering::new(p).unwrap()).unwrap())
            .filter(|r| r.is_weak_shelling)
            .map(|r| r.m_value)
            .min();
        let dp = ordering::weak_shelling_min_m(&x, limits).unwrap();
        prop_assert_eq!(dp.as_ref().map(|d| d.0), best);
        if let Some((v, ord)) = dp {
            prop_assert!(ordering::is_weak_shelling(&x, &ord).unwrap());
            prop_assert!(v >= ordering::m_number(&x, limits).unwrap().m);
        }
    }

    #[test]
    fn weak_shellings_restrict_to_windows(x in arb_complex(7, 6), w in any::<u64>()) {
        let limits = Limits::default();
        let Some((bound, _)) = ordering::weak_shelling_min_m(&x, limits).unwrap() else { return Ok(()) };
        let sub = x.induced(VertexSet::from_bits(w) & x.universe());
        prop_assume!(!sub.is_empty_face_complex());
        let restricted = ordering::weak_shelling_min_m(&sub, limits).unwrap();
        prop_assert!(restricted.is_some_and(|(v, _)| v <= bound));
    }

    #[test]
    fn hochster_height_is_regularity(x in arb_complex(8, 6)) {
        prop_assume!(!x.is_simplex().unwrap());
        let table = leray::hochster_table(&x).unwrap();
        let reg = leray::regularity(&x).unwrap();
        prop_assert_eq!(table.max_j(), Some(reg));
        prop_assert_eq!(reg, leray_oracle(&x) + 1);
        // linear strand starts with the quadratic generators
        let quadrics = x.minimal_nonfaces().unwrap().iter().filter(|s| s.len() == 2).count() as u64;
        prop_assert_eq!(table.get(0, 2), quadrics);
        let t = facet_graph::two_regular_tree_test(&x).unwrap();
        prop_assert_eq!(t.two_regular, reg == 2);
    }

    #[test]
    fn weak_eisenbud_goto(x in arb_complex(9, 7)) {
        prop_assume!(!x.is_simplex().unwrap());
        let r = sr::eg_report(&x, Limits::default()).unwrap();
        prop_assert!(r.weak_holds, "{:?}", r);
        prop_assert_eq!(r.weak_eg_bound, r.deg - r.codim + 1 + r.alpha + r.gamma);
        if x.is_pure().unwrap() && x.is_strongly_connected().unwrap() {
            prop_assert_eq!((r.alpha, r.gamma), (0, 0));
            prop_assert!(r.classic_holds);
        }
    }

    #[test]
    fn ideal_round_trips(x in arb_complex(10, 7)) {
        let ideal = sr::complex_to_ideal(&x).unwrap();
        prop_assert_eq!(&sr::ideal_to_complex(&ideal).unwrap(), &x);
        let reparsed = sr::parse_ideal(&ideal.to_file_string()).unwrap().ideal;
        prop_assert_eq!(&reparsed, &ideal);
        prop_assert_eq!(sr::complex_to_ideal(&sr::ideal_to_complex(&reparsed).unwrap()).unwrap(), ideal);
    }

    #[test]
    fn complex_file_round_trip(x in arb_complex(12, 8)) {
        let text = leray_lab::cli::format_complex(&x);
        prop_assert_eq!(leray_lab::cli::parse_complex(&text).unwrap(), x);
    }

    #[test]
    fn induced_cycles_are_sound_and_complete(x in arb_complex(8, 7)) {
        let got: Vec<VertexSet> = structure::induced_cycles(&x, x.num_vertices().max(3))
            .unwrap()
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect();
        let mut sorted = got.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), got.len(), "duplicates");
        let mut want: Vec<VertexSet> = (0u64..1 << x.num_vertices())
            .map(VertexSet::from_bits)
            .filter(|s| s.len() >= 3 && is_induced_cycle(&x, *s))
            .collect();
        want.sort();
        prop_assert_eq!(&sorted, &want);
        for c in want {
            let g = structure::certify_generator(&x, c, c, 2).unwrap();
            prop_assert!(g.is_generator);
        }
    }

    #[test]
    fn induced_boundaries_have_sphere_homology(x in arb_complex(8, 7), k in 1usize..5) {
        for s in structure::induced_boundary_complexes(&x, k).unwrap() {
            let mut want = vec![0; k];
            want[k - 1] = 1;
            prop_assert_eq!(betti_oracle(&x.induced(s)), want);
        }
    }

    #[test]
    fn equality_structure_on_random_complexes(x in arb_complex(8, 6)) {
        prop_assume!(!x.is_simplex().unwrap());
        let r = structure::verify_equality_theorem(&x, Limits::default()).unwrap();
        prop_assert!(!r.contradicts_theorem(), "{}", leray_lab::cli::reproducer(&x, "equality-structure"));
        prop_assert_eq!(r.equality, r.leray == r.m);
    }
}

/// `X[S]` is a cycle graph without 2-faces.
fn is_induced_cycle(x: &SimplicialComplex, s: VertexSet) -> bool {
    let edge = |a: usize, b: usize| x.is_face(VertexSet::singleton(a).with(b));
    if s.len() == 3 {
        let v: Vec<usize> = s.iter().collect();
        return edge(v[0], v[1]) && edge(v[0], v[2]) && edge(v[1], v[2]) && !x.is_face(s);
    }
    if s.iter().any(|a| s.iter().filter(|&b| b != a && edge(a, b)).count() != 2) {
        return false;
    }
    // two-regular, so connected iff walking from one vertex visits all
    let start = s.min().unwrap();
    let (mut prev, mut cur, mut seen) = (usize::MAX, start, 1);
    loop {
        let next = s.iter().find(|&b| b != cur && b != prev && edge(cur, b)).unwrap();
        if next == start {
            break;
        }
        prev = cur;
        cur = next;
        seen += 1;
    }
    seen == s.len()
}

#[test]
fn lemma_3_1_shadows_along_sampled_orders() {
    let mut simplex_meet_steps = 0;
    for i in 0..500 {
        let x = sampled(i, 11, 4, 8, 6);
        let ord = shuffled(x.num_facets(), i);
        let r = ordering::m_of_order(&x, &ord).unwrap();
        let mut prev = leray::leray_number(&prefix_complex(&x, ord.as_slice(), 1)).unwrap().leray;
        for j in 2..=x.num_facets() {
            let cur = leray::leray_number(&prefix_complex(&x, ord.as_slice(), j)).unwrap().leray;
            if r.step_increments[j - 2] {
                assert!(cur <= prev + 1, "sample {i} step {j}");
            } else if j == 2 {
                // two facets always split some window into two points
                assert_eq!(cur, 1, "sample {i}");
            } else {
                simplex_meet_steps += 1;
                assert_eq!(cur, prev, "sample {i} step {j}");
            }
            prev = cur;
        }
    }
    assert!(simplex_meet_steps > 50, "only {simplex_meet_steps} steps exercised");
}

#[test]
fn strongly_connected_pure_complexes_have_zero_gamma() {
    for i in 0..100 {
        let x = sampled(i, 5, 5, 8, 6);
        if x.is_pure().unwrap() && x.is_strongly_connected().unwrap() {
            assert_eq!(ordering::gamma_min(&x, Limits::default()).unwrap().gamma, 0);
            assert_eq!(sr::alpha(&x).unwrap(), 0);
        }
    }
}

fn arb_pure_complex() -> impl Strategy<Value = SimplicialComplex> {
    (4usize..=8, 2usize..=4)
        .prop_flat_map(|(n, size)| {
            let size = size.min(n - 1);
            prop::collection::vec(prop::sample::subsequence((0..n).collect::<Vec<_>>(), size), 1..=7)
        })
        .prop_map(|sets| {
            let masks: Vec<u64> = sets.iter().map(|s| s.iter().fold(0u64, |a, &v| a | 1 << v)).collect();
            complex_from_masks(&masks)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn strongly_connected_complexes_have_optimal_weak_shellings(x in arb_pure_complex()) {
        prop_assume!(x.is_strongly_connected().unwrap());
        let limits = Limits::default();
        let m = ordering::m_number(&x, limits).unwrap().m;
        let weak = ordering::weak_shelling_min_m(&x, limits).unwrap().map(|w| w.0);
        prop_assert_eq!(weak, Some(m));
        prop_assert_eq!(ordering::gamma_min(&x, limits).unwrap().gamma, 0);
    }
}
