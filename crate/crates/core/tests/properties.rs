use colebrook::eval::{build_grid, sobol_points, GridSpec, SobolMapping};
use colebrook::flow::{
    colebrook_rhs, normalize, solve_colebrook, solve_colebrook_from, FlowPoint, FrictionIterate,
    RE_MAX, RE_MIN, ROUGH_MAX,
};
use colebrook::schemes::{accelerate, accelerate_transformed, TransformConstants};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn domain_point() -> impl Strategy<Value = FlowPoint> {
    (RE_MIN.log10()..=RE_MAX.log10(), -6.0..=ROUGH_MAX.log10())
        .prop_map(|(lr, lk)| FlowPoint::new(10f64.powf(lr), 10f64.powf(lk)).unwrap())
}

proptest! {
    #[test]
    fn normalization_round_trips(p in domain_point()) {
        let (re, k) = normalize(&p).unwrap().denormalize();
        prop_assert!((re / p.re() - 1.0).abs() < 1e-13);
        prop_assert!((k / p.rel_rough() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn map_is_a_contraction(p in domain_point(), x in 3.0f64..12.0, h in 1e-3f64..1.0) {
        let d = (colebrook_rhs(&p, x + h).unwrap() - colebrook_rhs(&p, x).unwrap()).abs();
        prop_assert!(d < 0.5 * h, "slope {} at x={x}", d / h);
    }

    #[test]
    fn transformed_step_equals_direct(p in domain_point(), x in 2.0f64..15.0) {
        let it = FrictionIterate::new(x, 0).unwrap();
        let direct = accelerate(&p, &it).unwrap().x();
        let full = accelerate_transformed(&p, &it, TransformConstants::Full).unwrap().x();
        let printed = accelerate_transformed(&p, &it, TransformConstants::Printed).unwrap().x();
        prop_assert!((full / direct - 1.0).abs() < 1e-12);
        prop_assert!((printed / direct - 1.0).abs() < 1e-4);
    }

    #[test]
    fn oracle_is_a_fixed_point(p in domain_point()) {
        let r = solve_colebrook(&p).unwrap();
        let x = r.iterate.x();
        prop_assert!((colebrook_rhs(&p, x).unwrap() - x).abs() <= 1e-11);
    }

    #[test]
    fn oracle_independent_of_start(p in domain_point(), x0 in 1.0f64..20.0) {
        let a = solve_colebrook(&p).unwrap().iterate.lambda();
        let b = solve_colebrook_from(&p, x0, 1e-13, 200).unwrap().iterate.lambda();
        prop_assert!((a / b - 1.0).abs() < 1e-11);
    }
}

#[test]
fn accelerate_is_the_colebrook_map() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1_000_000 {
        let re = 10f64.powf(rng.gen_range(RE_MIN.log10()..=RE_MAX.log10()));
        let k = if rng.gen_bool(0.02) {
            0.0
        } else {
            10f64.powf(rng.gen_range(-8.0..=ROUGH_MAX.log10()))
        };
        let x = rng.gen_range(1.0..20.0);
        let p = FlowPoint::new(re, k).unwrap();
        let it = FrictionIterate::new(x, 3).unwrap();
        let next = accelerate(&p, &it).unwrap();
        assert_eq!(next.x().to_bits(), colebrook_rhs(&p, x).unwrap().to_bits());
        assert_eq!(next.step(), 4);
    }
}

#[test]
fn lambda_monotone_over_mesh() {
    let g = GridSpec::default().with_size(120, 120);
    let pts = build_grid(&g).unwrap();
    let lam: Vec<f64> = pts
        .iter()
        .map(|p| solve_colebrook(p).unwrap().iterate.lambda())
        .collect();
    let n = g.n_re;
    for j in 0..g.n_rough {
        for i in 0..n {
            let here = lam[j * n + i];
            if i + 1 < n {
                assert!(lam[j * n + i + 1] <= here, "not decreasing in Re");
            }
            if j + 1 < g.n_rough {
                assert!(lam[(j + 1) * n + i] >= here, "not increasing in eps/D");
            }
        }
    }
}

#[test]
fn oracle_converges_quickly_from_far_starts() {
    for p in sobol_points(1000, &GridSpec::default(), SobolMapping::LogUniform).unwrap() {
        for x0 in [3.0, 12.0] {
            let r = solve_colebrook_from(&p, x0, 1e-12, 100).unwrap();
            assert!(
                r.converged && r.iterations <= 30,
                "{} iterations",
                r.iterations
            );
        }
    }
}
