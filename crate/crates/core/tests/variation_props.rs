use coneps_core::objective::Bounds;
use coneps_core::variation::{polynomial_mutation, random_decision_vector, sbx_crossover, RngStream, VariationConfig};
use coneps_core::DecisionVector;
use proptest::prelude::*;

fn bounds_and_parents() -> impl Strategy<Value = (Bounds, DecisionVector, DecisionVector)> {
    prop::collection::vec((-5.0..5.0f64, 0.01..4.0f64, 0.0..1.0f64, 0.0..1.0f64), 1..12).prop_map(|v| {
        let lower: Vec<f64> = v.iter().map(|t| t.0).collect();
        let upper: Vec<f64> = v.iter().map(|t| t.0 + t.1).collect();
        let b = Bounds::new(lower, upper).unwrap();
        let p1 = v.iter().map(|t| t.0 + t.2 * t.1).collect();
        let p2 = v.iter().map(|t| t.0 + t.3 * t.1).collect();
        (b.clone(), DecisionVector::new(p1, &b).unwrap(), DecisionVector::new(p2, &b).unwrap())
    })
}

fn within(x: &[f64], b: &Bounds) -> bool {
    x.iter().zip(b.lower().iter().zip(b.upper())).all(|(v, (l, u))| l <= v && v <= u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn operators_respect_bounds(
        (b, p1, p2) in bounds_and_parents(),
        eta_x in 0.0..30.0f64,
        eta_m in 0.0..30.0f64,
        seed in any::<u64>(),
    ) {
        let cfg = VariationConfig::new(eta_x, eta_m, 1.0, 1.0).unwrap();
        let mut rng = RngStream::new(seed);
        let (c1, c2) = sbx_crossover(&p1, &p2, &cfg, &b, &mut rng).unwrap();
        prop_assert!(within(&c1, &b) && within(&c2, &b));
        let m = polynomial_mutation(&c1, &cfg, &b, &mut rng).unwrap();
        prop_assert!(within(&m, &b));
        prop_assert!(within(&random_decision_vector(&b, &mut rng), &b));
    }

    #[test]
    fn sbx_preserves_the_mean_without_clipping(
        (b, p1, p2) in bounds_and_parents(),
        seed in any::<u64>(),
    ) {
        let cfg = VariationConfig::new(15.0, 20.0, 1.0, 0.0).unwrap();
        let (c1, c2) = sbx_crossover(&p1, &p2, &cfg, &b, &mut RngStream::new(seed)).unwrap();
        for i in 0..b.len() {
            let clipped = [c1[i], c2[i]].iter().any(|&v| v == b.lower()[i] || v == b.upper()[i]);
            if !clipped {
                prop_assert!(((c1[i] + c2[i]) - (p1[i] + p2[i])).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn operators_are_deterministic((b, p1, p2) in bounds_and_parents(), seed in any::<u64>()) {
        let cfg = VariationConfig::with_indices(15.0, 20.0, b.len()).unwrap();
        let run = || {
            let mut rng = RngStream::new(seed);
            let (c1, c2) = sbx_crossover(&p1, &p2, &cfg, &b, &mut rng).unwrap();
            (polynomial_mutation(&c1, &cfg, &b, &mut rng).unwrap(), c2)
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn child_streams_are_reproducible_and_distinct(seed in any::<u64>(), k in 1u64..1000) {
        let root = RngStream::new(seed);
        let mut a = root.child(k);
        let mut b = root.child(k);
        let mut c = root.child(k + 1);
        let xs: Vec<f64> = (0..8).map(|_| a.uniform()).collect();
        let ys: Vec<f64> = (0..8).map(|_| b.uniform()).collect();
        let zs: Vec<f64> = (0..8).map(|_| c.uniform()).collect();
        prop_assert_eq!(&xs, &ys);
        prop_assert_ne!(&xs, &zs);
    }
}
