use bestprox::instances::{
    from_toml_str, orbit_instance, random_instance, to_toml_string, BoundingBox, GraphRule, MapRule, OrbitSpec,
    RandomSpec,
};
use bestprox::{
    contraction_diam_bound, crr_iteration_bound, crr_params_feasible, enumerate_proximity_set, min_contraction_factor,
    picard_orbit, preserved_core, proximity_diameter, ContractionFactor, Membership, Point, Tolerance,
};
use proptest::prelude::*;

const TAU: f64 = 1e-9;

fn graph_rule() -> impl Strategy<Value = GraphRule> {
    prop_oneof![
        Just(GraphRule::Complete),
        Just(GraphRule::Diagonal),
        (0.05f64..0.6, any::<u64>()).prop_map(|(p, seed)| GraphRule::Random { p, seed }),
        (0.0f64..0.8).prop_map(GraphRule::MinSeparation),
    ]
}

fn map_rule() -> impl Strategy<Value = MapRule> {
    prop_oneof![
        Just(MapRule::NearestInTarget),
        (0.0f64..1.0).prop_map(MapRule::AffineTowardCentroid),
        Just(MapRule::Mirror),
    ]
}

fn random_spec() -> impl Strategy<Value = RandomSpec> {
    (any::<u64>(), 1usize..25, 1usize..25, map_rule(), graph_rule()).prop_map(
        |(seed, n_a, n_b, map_rule, graph_rule)| {
            let n_b = if map_rule == MapRule::Mirror { n_a } else { n_b };
            RandomSpec { seed, n_a, n_b, bbox: BoundingBox::UNIT, map_rule, graph_rule }
        },
    )
}

fn orbit_spec(complete: bool) -> impl Strategy<Value = OrbitSpec> {
    (any::<u64>(), 1usize..5, 1usize..7, 0.05f64..0.35, any::<u64>(), 0.1f64..0.9).prop_map(
        move |(seed, orbits, depth, factor, gseed, p)| OrbitSpec {
            seed,
            orbits,
            depth,
            factor,
            graph_rule: if complete { GraphRule::Complete } else { GraphRule::Random { p, seed: gseed } },
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn proximity_sets_grow_with_epsilon(spec in random_spec(), e1 in 0.0f64..1.0, de in 0.0f64..1.0) {
        let inst = random_instance(&spec).unwrap();
        let f = inst.single_map().unwrap();
        for mode in [Membership::Strict, Membership::Vacuous] {
            let small = enumerate_proximity_set(&inst, f, e1, mode, Tolerance::DEFAULT).unwrap();
            let large = enumerate_proximity_set(&inst, f, e1 + de, mode, Tolerance::DEFAULT).unwrap();
            prop_assert!(small.members.iter().all(|p| large.members.contains(p)));
        }
    }

    #[test]
    fn orbit_residuals_never_undercut_the_gap(spec in random_spec(), start in any::<prop::sample::Index>()) {
        let inst = random_instance(&spec).unwrap();
        let f = inst.single_map().unwrap();
        let x0 = Point::Index(start.index(inst.universe().len()));
        let trace = picard_orbit(&inst, f, &x0, 20).unwrap();
        prop_assert_eq!(trace.points.len(), 21);
        prop_assert!(trace.residuals.iter().all(|&r| r >= -TAU));
    }

    #[test]
    fn crr_residuals_decay_geometrically(spec in orbit_spec(false), complete in any::<bool>()) {
        let inst = orbit_instance(&OrbitSpec { graph_rule: if complete { GraphRule::Complete } else { spec.graph_rule }, ..spec }).unwrap();
        let f = inst.single_map().unwrap().clone();
        let inst = inst.with_graph(preserved_core(&inst, &f).unwrap()).unwrap();
        let Some(params) = crr_params_feasible(&inst, &f, 0.05, Tolerance::DEFAULT).unwrap() else {
            return Ok(());
        };
        let k = params.k();
        for x0 in inst.universe() {
            let trace = picard_orbit(&inst, &f, x0, 12).unwrap();
            if !inst.graph().is_complete() && !bestprox::contains_edge(&inst, x0, &trace.points[1]).unwrap() {
                continue;
            }
            let r0 = trace.residuals[0];
            for (n, &r) in trace.residuals.iter().enumerate() {
                prop_assert!(r <= k.powi(n as i32) * r0 + 1e-9, "n {} r {} r0 {} k {}", n, r, r0, k);
            }
        }
    }

    #[test]
    fn iteration_bound_is_the_least_sufficient_count(gap in 0.0f64..100.0, k in 0.0f64..0.999, eps in 1e-6f64..10.0) {
        let n = crr_iteration_bound(gap, k, 0.0, eps, Tolerance::DEFAULT).unwrap();
        prop_assert!(k.powi(n as i32) * gap <= eps);
        if n > 0 {
            prop_assert!(k.powi(n as i32 - 1) * gap > eps);
        }
    }

    #[test]
    fn complete_contractions_respect_the_diameter_bound(spec in orbit_spec(true), eps in 0.0f64..1.0) {
        let inst = orbit_instance(&spec).unwrap();
        let f = inst.single_map().unwrap();
        let ContractionFactor::Contractive { alpha, .. } = min_contraction_factor(&inst, f, Tolerance::DEFAULT).unwrap() else {
            panic!("orbit instances contract on the complete graph");
        };
        let ps = enumerate_proximity_set(&inst, f, eps, Membership::Strict, Tolerance::DEFAULT).unwrap();
        let diam = proximity_diameter(&inst, &ps).unwrap();
        let bound = contraction_diam_bound(alpha, eps, inst.d_ab().value).unwrap();
        prop_assert!(diam <= bound + TAU, "diam {} bound {}", diam, bound);
    }

    #[test]
    fn instance_files_round_trip(spec in random_spec()) {
        let inst = random_instance(&spec).unwrap();
        let text = to_toml_string(&inst).unwrap();
        let back = from_toml_str(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(to_toml_string(&back).unwrap(), text);
    }
}
