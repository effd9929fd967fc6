use coneps_core::dominance::pareto_dominates;
use coneps_core::metrics::{convergence_gamma, coverage_many_sets, diversity_delta, hypervolume};
use coneps_core::problems::nondominated_filter;
use proptest::prelude::*;

fn cloud(m: usize, max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0.0..1.0f64, m), 2..max)
}

fn front(m: usize, max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    cloud(m, max).prop_map(nondominated_filter).prop_filter("two points", |f| f.len() >= 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hv_never_decreases_when_adding_points(
        h in prop_oneof![cloud(2, 25), cloud(3, 25)],
        extra in prop::collection::vec(0.0..1.0f64, 3),
    ) {
        let m = h[0].len();
        let r = vec![1.1; m];
        let before = hypervolume(&h, &r).unwrap();
        let mut more = h.clone();
        let p: Vec<f64> = extra[..m].to_vec();
        let dominated = h.iter().any(|q| pareto_dominates(q, &p).unwrap() || *q == p);
        more.push(p);
        let after = hypervolume(&more, &r).unwrap();
        prop_assert!(after >= before - 1e-12);
        if dominated {
            prop_assert!((after - before).abs() < 1e-12);
        }
    }

    #[test]
    fn hv_is_bounded_by_the_reference_box(h in prop_oneof![cloud(2, 25), cloud(3, 25)]) {
        let m = h[0].len();
        let hv = hypervolume(&h, &vec![1.0; m]).unwrap();
        prop_assert!((0.0..=1.0).contains(&hv));
    }

    #[test]
    fn coverage_lies_in_unit_interval_and_ignores_duplicates(
        a in cloud(2, 15),
        b in cloud(2, 15),
        c in cloud(2, 15),
    ) {
        let cs = coverage_many_sets(&[&a[..], &b[..], &c[..]]).unwrap();
        prop_assert!(cs.iter().all(|v| (0.0..=1.0).contains(v)));
        let mut a2 = a.clone();
        a2.extend(a.iter().cloned());
        let cs2 = coverage_many_sets(&[&a2[..], &b[..], &c[..]]).unwrap();
        prop_assert_eq!(cs[0], cs2[0]);
    }

    #[test]
    fn delta_is_scale_invariant(h in front(2, 30), r in front(2, 30), s in 0.1..10.0f64) {
        let scale = |v: &[Vec<f64>]| -> Vec<Vec<f64>> { v.iter().map(|p| p.iter().map(|x| x * s).collect()).collect() };
        let d1 = diversity_delta(&h, &r).unwrap();
        let d2 = diversity_delta(&scale(&h), &scale(&r)).unwrap();
        prop_assert!((d1 - d2).abs() < 1e-9 * (1.0 + d1.abs()));
    }

    #[test]
    fn gamma_is_zero_on_subsets_and_nonnegative(r in front(3, 30), h in cloud(3, 10)) {
        let sub: Vec<Vec<f64>> = r.iter().step_by(2).cloned().collect();
        prop_assert_eq!(convergence_gamma(&sub, &r).unwrap(), 0.0);
        prop_assert!(convergence_gamma(&h, &r).unwrap() >= 0.0);
    }
}
