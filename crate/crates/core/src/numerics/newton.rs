//! Equilibria inside a compatibility class by damped Newton in log-coordinates.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::ode::{check_positive, Kinetics};
use crate::equilibria::{
    binomial_system, existence_test, particular_solution, stoichiometric_generators,
};
use crate::error::{Error, Result};
use crate::model::{Network, RateAssignment};
use crate::ratlinalg::{complement_basis, Matrix};
use crate::scalar::FloatScalar;
use crate::signs::birch_check_network;

/// `u ↦ W (x* ∘ exp(B u)) − W x0`, where `ker W` is the stoichiometric
/// subspace and the columns of `B` span the complement of the kinetic-order
/// subspace. Zeros are equilibria in the class of `x0`.
#[derive(Clone, Debug)]
pub struct ClassMap<T> {
    pub particular: Vec<T>,
    /// `d × n`, rows spanning the complement of the stoichiometric subspace.
    pub conservation: Matrix<T>,
    /// `n × d̃`.
    pub directions: Matrix<T>,
    pub target: Vec<T>,
}

fn inf_norm<T: FloatScalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

impl<T: FloatScalar> ClassMap<T> {
    pub fn new(net: &Network, rates: &RateAssignment, x0: &[T]) -> Result<Self> {
        if x0.len() != net.num_species() {
            return Err(Error::WrongLength { expected: net.num_species(), actual: x0.len() });
        }
        check_positive(x0)?;
        let system = binomial_system(net, Some(rates))?;
        let x_star = particular_solution(&system)?;
        let kappa: Vec<f64> = system
            .kappa
            .as_ref()
            .expect("rates were supplied")
            .iter()
            .map(|k| k.to_f64().unwrap_or(f64::NAN))
            .collect();
        let particular = x_star
            .eval_f64(&kappa, &[])
            .into_iter()
            .map(|v| T::from_f64(v).expect("value out of range"))
            .collect();
        let conservation = complement_basis(&stoichiometric_generators(net))
            .matrix()
            .transpose()
            .map(T::from_rational);
        let directions = complement_basis(&system.exponents).matrix().map(T::from_rational);
        let target = conservation.mul_vec(x0);
        debug_assert!(existence_test(&system).holds() == Some(true));
        Ok(ClassMap { particular, conservation, directions, target })
    }

    pub fn num_parameters(&self) -> usize {
        self.directions.cols()
    }

    pub fn state(&self, u: &[T]) -> Vec<T> {
        let bu = self.directions.mul_vec(u);
        self.particular.iter().zip(bu).map(|(p, s)| *p * s.exp()).collect()
    }

    pub fn residual(&self, u: &[T]) -> Vec<T> {
        let w = self.conservation.mul_vec(&self.state(u));
        w.into_iter().zip(&self.target).map(|(a, b)| a - *b).collect()
    }

    /// `W diag(x) B` at `x = x* ∘ exp(B u)`.
    pub fn jacobian(&self, u: &[T]) -> Matrix<T> {
        let x = self.state(u);
        let b = &self.directions;
        let scaled = Matrix::from_fn(b.rows(), b.cols(), |i, j| x[i] * b[(i, j)]);
        self.conservation.mul(&scaled)
    }

    pub fn tolerance(&self, relative: T) -> T {
        relative * (T::one() + inf_norm(&self.target))
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions<T> {
    pub initial: Option<Vec<T>>,
    pub max_iterations: usize,
    pub max_halvings: usize,
    /// Relative tolerance, scaled by `1 + ‖W x0‖∞`.
    pub tolerance: T,
}

impl<T: FloatScalar> Default for SolveOptions<T> {
    fn default() -> Self {
        let eps = T::epsilon() * T::from_f64(100.0).unwrap();
        SolveOptions {
            initial: None,
            max_iterations: 100,
            max_halvings: 40,
            tolerance: T::from_f64(1e-10).unwrap().max(eps),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassSolveResult<T> {
    pub equilibrium: Vec<T>,
    pub residual_map: T,
    /// Scaled complex balancing residual, see [`Kinetics::balance_residual`].
    pub residual_balance: T,
    pub iterations: usize,
    pub converged: bool,
    pub warnings: Vec<String>,
}

/// Newton step `J d = -g`; least squares when `J` is not square.
fn newton_step<T: FloatScalar>(j: &Matrix<T>, g: &[T]) -> Option<Vec<T>> {
    let neg: Vec<T> = g.iter().map(|v| -*v).collect();
    let step = if j.rows() == j.cols() {
        j.solve(&neg)?
    } else {
        let jt = j.transpose();
        jt.mul(j).solve(&jt.mul_vec(&neg))?
    };
    step.iter().all(|v| v.is_finite()).then_some(step)
}

/// Runs damped Newton on an already assembled [`ClassMap`].
pub fn solve_class_map<T: FloatScalar>(map: &ClassMap<T>, opts: &SolveOptions<T>) -> (Vec<T>, T, usize, bool) {
    let p = map.num_parameters();
    let mut u = opts.initial.clone().unwrap_or_else(|| vec![T::zero(); p]);
    assert_eq!(u.len(), p, "initial point has the wrong length");
    let tol = map.tolerance(opts.tolerance);
    let mut norm = inf_norm(&map.residual(&u));
    let two = T::one() + T::one();
    for it in 0..opts.max_iterations {
        if norm < tol {
            return (u, norm, it, true);
        }
        let Some(step) = newton_step(&map.jacobian(&u), &map.residual(&u)) else {
            return (u, norm, it, false);
        };
        let mut t = T::one();
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<T> = u.iter().zip(&step).map(|(a, d)| *a + t * *d).collect();
            let n = inf_norm(&map.residual(&trial));
            if n.is_finite() && n < norm {
                accepted = Some((trial, n));
                break;
            }
            t = t / two;
        }
        match accepted {
            Some((trial, n)) => {
                u = trial;
                norm = n;
            }
            None => return (u, norm, it + 1, false),
        }
    }
    let ok = norm < tol;
    (u, norm, opts.max_iterations, ok)
}

/// The complex balancing equilibrium in the compatibility class of `x0`.
pub fn solve_in_class<T: FloatScalar>(
    net: &Network,
    rates: &RateAssignment,
    x0: &[T],
    opts: &SolveOptions<T>,
) -> Result<ClassSolveResult<T>> {
    let map = ClassMap::new(net, rates, x0)?;
    let mut warnings = Vec::new();
    if !birch_check_network(net)?.hypotheses_hold {
        let msg = "sign-vector hypotheses for uniqueness are not verified".to_string();
        log::warn!("{msg}");
        warnings.push(msg);
    }
    let (u, residual_map, iterations, converged) = solve_class_map(&map, opts);
    let equilibrium = map.state(&u);
    let residual_balance = Kinetics::new(net, rates).balance_residual(&equilibrium)?;
    let converged = converged && residual_balance < opts.tolerance;
    Ok(ClassSolveResult { equilibrium, residual_map, residual_balance, iterations, converged, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{binding, deficiency_one, running_example};
    use crate::scalar::int;

    #[test]
    fn binding_from_ones_is_immediate() {
        let net = binding(&int(2), &int(3));
        let unit = RateAssignment::uniform(&net, int(1)).unwrap();
        let r = solve_in_class(&net, &unit, &[1.0f64, 1.0, 1.0], &SolveOptions::default()).unwrap();
        assert!(r.converged);
        assert!(r.iterations <= 2);
        for v in &r.equilibrium {
            assert!((v - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn running_example_converges() {
        let net = running_example();
        let unit = RateAssignment::uniform(&net, int(1)).unwrap();
        let r = solve_in_class(&net, &unit, &[1.0; 4], &SolveOptions::default()).unwrap();
        assert!(r.converged, "{r:?}");
        assert!(r.residual_map < 1e-10 && r.residual_balance < 1e-10);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn no_solution_propagates() {
        let net = deficiency_one();
        let rates = RateAssignment::new(&net, vec![int(2), int(1), int(4), int(1)]).unwrap();
        assert_eq!(
            solve_in_class(&net, &rates, &[1.0, 1.0], &SolveOptions::default()).unwrap_err(),
            Error::NoSolution
        );
    }

    #[test]
    fn single_precision() {
        let net = binding(&int(2), &int(3));
        let unit = RateAssignment::uniform(&net, int(1)).unwrap();
        let r = solve_in_class(&net, &unit, &[0.5f32, 2.0, 1.5], &SolveOptions::default()).unwrap();
        assert!(r.converged, "{r:?}");
    }
}
