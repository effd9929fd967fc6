use coneps_core::problems::{
    approximate_reference_front, sample_reference_front, zdt6_f1_min, Problem, ProblemId, ReferenceFront,
};
use coneps_core::{DecisionVector, Error};

fn eval(id: ProblemId, x: Vec<f64>) -> Vec<f64> {
    let p = Problem::new(id);
    let x = DecisionVector::new(x, p.bounds()).unwrap();
    p.evaluate(&x).unwrap().f.to_vec()
}

fn rows(front: &ReferenceFront) -> Vec<Vec<f64>> {
    front.points().iter().map(|p| p.to_vec()).collect()
}

#[test]
fn analytic_fronts_satisfy_their_identities() {
    for count in [10, 100, 1000] {
        for p in rows(&sample_reference_front(&Problem::new(ProblemId::Dtlz1), count).unwrap()) {
            assert!((p.iter().sum::<f64>() - 0.5).abs() < 1e-12);
        }
        for id in [ProblemId::Dtlz2, ProblemId::Dtlz3, ProblemId::Dtlz4] {
            for p in rows(&sample_reference_front(&Problem::new(id), count).unwrap()) {
                assert!((p.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
        for id in [ProblemId::Dtlz5, ProblemId::Dtlz6] {
            for p in rows(&sample_reference_front(&Problem::new(id), count).unwrap()) {
                assert!((p.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
                assert!((p[0] - p[1]).abs() < 1e-15);
            }
        }
        for p in rows(&sample_reference_front(&Problem::new(ProblemId::Dtlz9), count).unwrap()) {
            assert!((p[0] * p[0] + p[2] * p[2] - 1.0).abs() < 1e-12);
        }
        for p in rows(&sample_reference_front(&Problem::new(ProblemId::Zdt1), count).unwrap()) {
            assert!((p[1] - (1.0 - p[0].sqrt())).abs() < 1e-12);
        }
        for p in rows(&sample_reference_front(&Problem::new(ProblemId::Zdt6), count).unwrap()) {
            assert!(p[0] >= zdt6_f1_min() - 1e-12);
            assert!((p[1] - (1.0 - p[0] * p[0])).abs() < 1e-12);
        }
    }
}

#[test]
fn lattice_fronts_use_the_largest_fitting_resolution() {
    let f = sample_reference_front(&Problem::new(ProblemId::Dtlz1), 100).unwrap();
    assert_eq!(f.len(), 91);
    let f = sample_reference_front(&Problem::new(ProblemId::Zdt1), 3).unwrap();
    let expected = [[0.0, 1.0], [0.5, 1.0 - 0.5f64.sqrt()], [1.0, 0.0]];
    for (p, e) in rows(&f).iter().zip(expected) {
        assert!((p[0] - e[0]).abs() < 1e-15 && (p[1] - e[1]).abs() < 1e-15);
    }
}

#[test]
fn fronts_without_closed_form_need_files_or_grids() {
    for id in [ProblemId::Pol, ProblemId::Dtlz7, ProblemId::Dtlz8] {
        let p = Problem::new(id);
        assert_eq!(sample_reference_front(&p, 100).unwrap_err(), Error::NoClosedForm(id));
        let approx = approximate_reference_front(&p, 60).unwrap();
        assert!(approx.len() > 10);
    }
}

#[test]
fn anchor_evaluations() {
    assert_eq!(eval(ProblemId::Zdt1, vec![0.0; 30]), vec![0.0, 1.0]);
    let f = eval(ProblemId::Zdt1, vec![1.0; 30]);
    assert!((f[1] - 10.0 * (1.0 - 0.1f64.sqrt())).abs() < 1e-12);
    let f = eval(ProblemId::Zdt2, vec![1.0; 30]);
    assert!((f[1] - 10.0 * (1.0 - 0.01)).abs() < 1e-12);
    let mut x = vec![0.0; 10];
    x[0] = 0.25;
    let f = eval(ProblemId::Zdt4, x);
    assert!((f[0] - 0.25).abs() < 1e-15 && (f[1] - 0.5).abs() < 1e-12);
    let f = eval(ProblemId::Dtlz1, vec![0.5; 7]);
    for (a, b) in f.iter().zip([0.125, 0.125, 0.25]) {
        assert!((a - b).abs() < 1e-12);
    }
    let f = eval(ProblemId::Dtlz2, vec![0.5; 12]);
    let s = 0.5f64.sqrt();
    for (a, b) in f.iter().zip([0.5, 0.5, s]) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn evaluation_is_deterministic_for_every_problem() {
    for id in ProblemId::ALL {
        let p = Problem::new(id);
        let x: Vec<f64> = p
            .bounds()
            .lower()
            .iter()
            .zip(p.bounds().upper())
            .enumerate()
            .map(|(i, (l, u))| l + (u - l) * ((i as f64 * 0.37).fract()))
            .collect();
        let a = eval(id, x.clone());
        let b = eval(id, x);
        assert_eq!(a, b, "{id}");
        assert_eq!(a.len(), p.m());
    }
}
