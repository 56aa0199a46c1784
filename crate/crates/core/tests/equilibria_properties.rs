mod common;

use crnkit::equilibria::{
    binomial_system, deficiencies, existence_test, kappa_at, kinetic_generators, parametrization,
    particular_solution, particular_solution_candidate, realize_rates, spanning_relation_check,
    verify_monomial, verify_point_f64, ExistenceVerdict,
};
use crnkit::graphkit::incidence_matrix;
use crnkit::numerics::Kinetics;
use crnkit::random::{positive_rational, random_network, random_weakly_reversible, SampleSpec};
use crnkit::ratlinalg::{kernel_basis, same_column_space};
use crnkit::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn deficiency_definitions_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let spec = SampleSpec::default();
    for i in 0..100 {
        let net = if i % 2 == 0 {
            random_network(&mut rng, &spec)
        } else {
            random_weakly_reversible(&mut rng, &spec)
        };
        let r = deficiencies(&net);
        assert_eq!(r.deficiency, r.kernel_intersection_dim);
        assert!(spanning_relation_check(&net));
    }
}

#[test]
fn exponent_matrix_spans_kinetic_subspace() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let spec = SampleSpec::default();
    for _ in 0..100 {
        let net = random_weakly_reversible(&mut rng, &spec);
        let sys = binomial_system(&net, None).unwrap();
        assert!(same_column_space(&sys.exponents, &kinetic_generators(&net)));
        assert!(same_column_space(
            &sys.relation.matrix,
            &incidence_matrix(&net)
        ));
        assert_eq!(
            kernel_basis(&sys.exponents).dim(),
            deficiencies(&net).kinetic_deficiency
        );
    }
}

#[test]
fn existence_agrees_with_verification() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let spec = SampleSpec::default();
    let (mut positive_deficiency, mut failures, mut successes) = (0, 0, 0);
    for i in 0..100 {
        let net = random_weakly_reversible(&mut rng, &spec);
        let rates = if i % 2 == 0 {
            common::consistent_rates(&mut rng, &net)
        } else {
            common::random_rates(&mut rng, &net)
        };
        let sys = binomial_system(&net, Some(&rates)).unwrap();
        let verdict = existence_test(&sys);
        let holds = verdict.holds().unwrap();
        if matches!(verdict, ExistenceVerdict::Conditional { .. }) {
            positive_deficiency += 1;
        }
        if i % 2 == 0 {
            assert!(holds);
        }
        let candidate = particular_solution_candidate(&sys);
        assert_eq!(verify_monomial(&candidate, &sys, &[]).unwrap(), holds);
        match particular_solution(&sys) {
            Ok(x) => {
                successes += 1;
                assert!(holds && verify_monomial(&x, &sys, &[]).unwrap());
            }
            Err(Error::NoSolution) => {
                failures += 1;
                assert!(!holds);
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(positive_deficiency >= 20, "{positive_deficiency}");
    assert!(failures >= 5 && successes >= 50, "{failures} {successes}");
}

#[test]
fn realization_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let spec = SampleSpec::default();
    let mut graphs = 0;
    while graphs < 20 {
        let net = random_weakly_reversible(&mut rng, &spec);
        let p = binomial_system(&net, None).unwrap().num_equations();
        if p == 0 {
            continue;
        }
        graphs += 1;
        for _ in 0..5 {
            let gamma: Vec<_> = (0..p).map(|_| positive_rational(&mut rng, 20)).collect();
            let k = realize_rates(&net, &gamma).unwrap();
            assert_eq!(kappa_at(&net, &k).unwrap(), gamma);
        }
    }
}

#[test]
fn parametrized_points_are_equilibria() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let spec = SampleSpec::default();
    let mut nets = vec![crnkit::catalog::running_example()];
    while nets.len() < 10 {
        nets.push(random_weakly_reversible(&mut rng, &spec));
    }
    for net in &nets {
        for _ in 0..5 {
            let rates = common::consistent_rates(&mut rng, net);
            let sys = binomial_system(net, Some(&rates)).unwrap();
            let p = parametrization(&sys, particular_solution(&sys).unwrap());
            let xi: Vec<_> = (0..p.num_parameters()).map(|_| positive_rational(&mut rng, 9)).collect();
            assert!(verify_monomial(&p.general, &sys, &xi).unwrap());

            let kappa = common::to_f64(sys.kappa.as_ref().unwrap());
            let x = p.general.eval_f64(&kappa, &common::to_f64(&xi));
            assert!(verify_point_f64(&x, &sys, 1e-9).unwrap());
            let kin = Kinetics::new(net, &rates);
            assert!(kin.balance_residual(&x).unwrap() < 1e-10);
            let rhs = kin.rhs(&x).unwrap();
            let scale = kin.fluxes(&x).unwrap().iter().fold(0.0f64, |m, f| m.max(f.abs()));
            assert!(rhs.iter().all(|v| v.abs() < 1e-10 * (1.0 + scale)), "{rhs:?}");
        }
    }
}

#[test]
fn perturbing_an_equilibrium_breaks_it() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let net = crnkit::catalog::running_example();
    for _ in 0..20 {
        let rates = common::random_rates(&mut rng, &net);
        let sys = binomial_system(&net, Some(&rates)).unwrap();
        let x = particular_solution(&sys).unwrap();
        let kappa = common::to_f64(sys.kappa.as_ref().unwrap());
        let mut v = x.eval_f64(&kappa, &[]);
        assert!(verify_point_f64(&v, &sys, 1e-12).unwrap());
        let i = rng.gen_range(0..v.len());
        v[i] *= 2.0;
        assert!(!verify_point_f64(&v, &sys, 1e-12).unwrap());
    }
}
