use std::collections::BTreeSet;
use std::f64::consts::PI;

use proptest::prelude::*;

use disco_top::bounds::{bound_oracle, c_constant, r_constant, Quantity, Scenario};
use disco_top::complex::{chain_complex, deleted_join2, deleted_product, Face, SimplicialComplex};
use disco_top::homology::betti_numbers;
use disco_top::metric::{FiniteMetricSample, MetricKind};
use disco_top::moduli::{
    alpha_hat, conf_r_map, delta_hat, delta_hat_ladder, phi_f, verify_lemma_chain, CodomainMetric, ConfigSample,
    SampledFunction,
};
use disco_top::vietoris_rips::{vr_complex, VRThreshold};
use disco_top::witnesses::{digit_interleave, k5_jump_drawing, random_piecewise_constant, step_witnesses, tverberg_one_point};

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..8, 1..=4), 1..6)
        .prop_map(|gens| SimplicialComplex::closure_of(gens.into_iter().map(|s| s.into_iter().collect::<Face>())))
}

fn circle_points() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::btree_set(0u32..720, 3..10)
        .prop_map(|s| s.into_iter().map(|d| f64::from(d).to_radians()).map(|t| vec![t.cos(), t.sin()]).collect())
}

fn faces(k: &SimplicialComplex) -> BTreeSet<Face> {
    k.iter_faces().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closures_are_downward_closed(k in complex_strategy()) {
        let all = faces(&k);
        for f in &all {
            for mask in 1u32..(1 << f.len()) - 1 {
                let sub: Face = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                prop_assert!(all.contains(&sub));
            }
        }
    }

    #[test]
    fn homology_is_consistent(k in complex_strategy()) {
        let c = chain_complex(&k).unwrap();
        prop_assert!(c.boundary_squares_to_zero());
        let b = betti_numbers(&c).unwrap();
        prop_assert_eq!(b.euler_characteristic(), k.euler_characteristic());
        let counts = c.counts();
        let rank = |j: usize| c.boundary(j).map_or(0, |m| m.rank());
        for (j, &n) in counts.iter().enumerate() {
            let kernel = n - rank(j);
            prop_assert!(rank(j + 1) <= kernel);
        }
    }

    #[test]
    fn betti_numbers_ignore_labels(k in complex_strategy(), shift in 0u32..50, perm in Just((0u32..8).collect::<Vec<_>>()).prop_shuffle()) {
        let relabeled = k.relabel(|v| perm[v as usize] * 3 + shift).unwrap();
        let a = betti_numbers(&chain_complex(&k).unwrap()).unwrap();
        let b = betti_numbers(&chain_complex(&relabeled).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn deleted_products_are_well_formed(k in complex_strategy(), r in 2usize..=3) {
        let p = deleted_product(&k, r).unwrap();
        for dim in 0..p.cell_counts().len() {
            for cell in p.cells(dim) {
                prop_assert_eq!(cell.factors.iter().map(|f| f.len() - 1).sum::<usize>(), dim);
                let mut seen = BTreeSet::new();
                prop_assert!(cell.factors.iter().flatten().all(|v| seen.insert(*v)));
            }
        }
        prop_assert!(chain_complex(&p).unwrap().boundary_squares_to_zero());
        let reversed: Vec<usize> = (0..r).rev().collect();
        for action in p.coordinate_action(&reversed).unwrap() {
            let distinct: BTreeSet<usize> = action.iter().copied().collect();
            prop_assert_eq!(distinct.len(), action.len());
        }
        let chi: i64 = p.cell_counts().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        prop_assert_eq!(betti_numbers(&chain_complex(&p).unwrap()).unwrap().euler_characteristic(), chi);
    }

    #[test]
    fn vietoris_rips_filtration(points in circle_points(), a in 0.0f64..PI, b in 0.0f64..PI) {
        let m = FiniteMetricSample::from_points(points, MetricKind::SphereGeodesic).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let small = faces(&vr_complex(&m, VRThreshold::weak(lo), 4).unwrap());
        let large = faces(&vr_complex(&m, VRThreshold::weak(hi), 4).unwrap());
        prop_assert!(small.is_subset(&large));
        let strict = faces(&vr_complex(&m, VRThreshold::strict(lo), 4).unwrap());
        prop_assert!(strict.is_subset(&small));
        for f in &large {
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    prop_assert!(m.dist(f[i] as usize, f[j] as usize) <= hi);
                }
            }
        }
    }

    #[test]
    fn delta_ladder_is_monotone_and_precomposition_shrinks(seed in any::<u64>(), keep in prop::collection::btree_set(0usize..28, 2..20)) {
        let g = random_piecewise_constant(6, 4, seed).unwrap();
        let e = delta_hat_ladder(&g, &[0.4, 0.2, 0.1, 0.05], CodomainMetric::Euclidean).unwrap();
        prop_assert!(e.ladder.windows(2).all(|w| w[1].value <= w[0].value));
        let map: Vec<usize> = keep.into_iter().collect();
        let pts: Vec<Vec<f64>> = map.iter().map(|&i| g.domain().point(i).to_vec()).collect();
        let sub = FiniteMetricSample::from_points(pts, g.domain().kind()).unwrap();
        let h = g.precompose(sub, &map, g.resolution()).unwrap();
        for rho in [0.4, 0.2, 0.1] {
            prop_assert!(delta_hat(&h, rho, CodomainMetric::Euclidean).unwrap().value <= delta_hat(&g, rho, CodomainMetric::Euclidean).unwrap().value);
        }
    }

    #[test]
    fn collinear_values_give_zero_or_pi(ts in prop::collection::btree_set(-1000i32..1000, 4..24), dir in 0.0f64..PI) {
        let n = ts.len();
        let pts: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64 / n as f64]).collect();
        let m = FiniteMetricSample::from_points(pts, MetricKind::Euclidean).unwrap();
        let (c, s) = (dir.cos(), dir.sin());
        let mut order: Vec<i32> = ts.into_iter().collect();
        order.reverse();
        order.rotate_left(n / 3);
        let values: Vec<Vec<f64>> = order.iter().map(|&t| vec![0.5 + f64::from(t) * c, -0.25 + f64::from(t) * s]).collect();
        let f = SampledFunction::new(m, values, 0.5 / n as f64).unwrap();
        for rho in [0.5 / n as f64, 1.5 / n as f64] {
            let v = alpha_hat(&f, rho, 2.0 * rho).unwrap().value;
            prop_assert!(v.abs() < 1e-6 || (v - PI).abs() < 1e-6, "{}", v);
        }
    }

    #[test]
    fn phi_is_antisymmetric_and_conf_sums_to_zero(seed in any::<u64>()) {
        let f = random_piecewise_constant(6, 5, seed).unwrap();
        let configs = ConfigSample::deleted_product(&f, 2).unwrap();
        for t in configs.iter().take(40) {
            let (i, j) = (t[0] as usize, t[1] as usize);
            if f.value(i) == f.value(j) {
                continue;
            }
            let phi = phi_f(&f, &[(i, j), (j, i)]).unwrap();
            prop_assert!(phi[0].iter().zip(&phi[1]).all(|(a, b)| (a + b).abs() <= 1e-12));
            let c = conf_r_map(&f, &[i, j]).unwrap();
            prop_assert!(c.component_sum().iter().all(|x| x.abs() <= 1e-12));
        }
    }

    #[test]
    fn lemma_chain_holds_on_random_functions(seed in any::<u64>(), cells in 2usize..8) {
        let f = random_piecewise_constant(10, cells, seed).unwrap();
        let configs = ConfigSample::deleted_product(&f, 2).unwrap();
        let report = verify_lemma_chain(&f, &configs, 0.15).unwrap();
        prop_assert!(report.passed(), "{:?}", report.checks);
    }

    #[test]
    fn angle_bounds_stay_in_range(r in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11]), d in 1usize..12) {
        for s in [Scenario::Tverberg { r, d }, Scenario::VanKampenFlores { d }, Scenario::SphereToEuclidean { k: d + 1, d }] {
            if let Ok(rep) = bound_oracle(s) {
                if rep.quantity != Quantity::DeltaOverKappaR {
                    prop_assert!((0.0..=PI).contains(&rep.bound));
                }
            }
        }
    }
}

#[test]
fn constants_bracket_their_exact_values() {
    for n in 0..=3 {
        for k in n..=9 {
            let c = c_constant(n, k).unwrap();
            if let Some(x) = c.exact {
                assert!(c.lower <= x, "({n},{k})");
                assert!(c.upper.is_none_or(|u| x <= u), "({n},{k})");
            }
            assert!(c.best_lower() <= PI);
        }
    }
    assert!(r_constant(20) > PI / 2.0);
}

#[test]
fn deleted_join_of_simplex_counts_cross_polytope_faces() {
    for n in 0..=4usize {
        let j = deleted_join2(&disco_top::complex::simplex_skeleton(n, n).unwrap()).unwrap();
        let binom = |a: usize, b: usize| (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1));
        let expected: Vec<usize> = (0..=n).map(|k| (1 << (k + 1)) * binom(n + 1, k + 1)).collect();
        assert_eq!(j.f_vector(), expected, "N = {n}");
    }
}

#[test]
fn witnesses_are_deterministic_certificates() {
    let builds = || {
        vec![
            digit_interleave(4, 16).unwrap(),
            k5_jump_drawing(0.02, 60).unwrap(),
            tverberg_one_point(12).unwrap(),
            step_witnesses(true, 10).unwrap(),
            step_witnesses(false, 10).unwrap(),
        ]
    };
    for (a, b) in builds().into_iter().zip(builds()) {
        assert!(a.verification.passed, "{}", a.verification.detail);
        assert_eq!(a.function.values(), b.function.values());
        assert_eq!(a.function.domain().points(), b.function.domain().points());
        assert_eq!(a.function.hot_spots(), b.function.hot_spots());
    }
}
