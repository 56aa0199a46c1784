//! Existence of complex balancing equilibria, explicit solutions and the
//! inverse problem of choosing rate constants.

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::monomial::{power_product_equals, Base, MonomialVector};
use super::system::{spanning_relation, BinomialSystem};
use crate::error::{Error, Result};
use crate::graphkit::{decompose, tree_constants_at};
use crate::model::{Network, RateAssignment};
use crate::ratlinalg::{complement_basis, generalized_inverse, kernel_basis, SubspaceBasis};
use crate::scalar::{pow_int, Rational};

/// Outcome of the existence test for the binomial system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExistenceVerdict {
    /// The exponent matrix has trivial kernel: solutions exist for all rates.
    Always,
    /// Solutions exist iff `kappa^C = 1` for the integer matrix `C`.
    Conditional {
        #[serde(serialize_with = "crate::report::ser_matrix", rename = "conditions")]
        conditions: crate::RationalMatrix,
        /// `kappa^C`, one value per column of `C`, when rates are known.
        #[serde(serialize_with = "crate::report::ser_opt_rationals")]
        values: Option<Vec<Rational>>,
        holds: Option<bool>,
    },
}

impl ExistenceVerdict {
    /// `Some(true)` if solutions exist, `None` if it depends on unknown rates.
    pub fn holds(&self) -> Option<bool> {
        match self {
            ExistenceVerdict::Always => Some(true),
            ExistenceVerdict::Conditional { holds, .. } => *holds,
        }
    }
}

/// `prod_i base_i^{c_i}` for an integer vector `c`.
fn integer_power_product(base: &[Rational], c: &[Rational]) -> Rational {
    base.iter().zip(c).fold(Rational::one(), |acc, (b, e)| {
        debug_assert!(e.is_integer());
        acc * pow_int(b, e.numer())
    })
}

pub fn existence_test(system: &BinomialSystem) -> ExistenceVerdict {
    let c = kernel_basis(&system.exponents);
    if c.dim() == 0 {
        return ExistenceVerdict::Always;
    }
    let values = system.kappa.as_ref().map(|kappa| {
        c.vectors()
            .iter()
            .map(|col| integer_power_product(kappa, col))
            .collect::<Vec<_>>()
    });
    let holds = values.as_ref().map(|v| v.iter().all(One::is_one));
    ExistenceVerdict::Conditional { conditions: c.into_matrix(), values, holds }
}

/// `kappa^{Hᵀ}` with `H` a generalized inverse of the transposed exponent
/// matrix. A solution only when the existence test passes.
pub fn particular_solution_candidate(system: &BinomialSystem) -> MonomialVector {
    let h = generalized_inverse(&system.exponents.transpose());
    MonomialVector::from_exponent_matrix(&h, Base::Kappa)
}

/// A particular complex balancing equilibrium as a monomial in `kappa`.
///
/// Fails with [`Error::NoSolution`] when the existence test fails and with
/// [`Error::RatesRequired`] when existence depends on rates that are unknown.
pub fn particular_solution(system: &BinomialSystem) -> Result<MonomialVector> {
    match existence_test(system).holds() {
        Some(true) => Ok(particular_solution_candidate(system)),
        Some(false) => Err(Error::NoSolution),
        None => Err(Error::RatesRequired(
            "existence depends on the rate constants".into(),
        )),
    }
}

/// The equilibrium set `{ x* ∘ xi^{Bᵀ} : xi > 0 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub particular: MonomialVector,
    /// Integer basis of the orthogonal complement of the kinetic-order subspace.
    pub basis: SubspaceBasis,
    /// `x* ∘ xi^{Bᵀ}`.
    pub general: MonomialVector,
}

impl Parametrization {
    pub fn num_parameters(&self) -> usize {
        self.basis.dim()
    }

    /// `xi^{Bᵀ}` alone.
    pub fn free_part(&self) -> MonomialVector {
        MonomialVector::from_exponent_matrix(self.basis.matrix(), Base::Xi)
    }
}

pub fn parametrization(system: &BinomialSystem, particular: MonomialVector) -> Parametrization {
    let basis = complement_basis(&system.exponents);
    let free = MonomialVector::from_exponent_matrix(basis.matrix(), Base::Xi);
    let general = particular.hadamard(&free);
    Parametrization { particular, basis, general }
}

/// Exact check of `x^M = kappa` for a monomial vector at the given `xi`.
pub fn verify_monomial(x: &MonomialVector, system: &BinomialSystem, xi: &[Rational]) -> Result<bool> {
    let kappa = system.kappa_or_err()?;
    if x.len() != system.num_species() {
        return Ok(false);
    }
    Ok(x.power(&system.exponents).equals_at(kappa, kappa, xi))
}

/// Exact check of `x^M = kappa` for a positive rational vector.
pub fn verify_point(x: &[Rational], system: &BinomialSystem) -> Result<bool> {
    let kappa = system.kappa_or_err()?;
    if x.len() != system.num_species() || !x.iter().all(Signed::is_positive) {
        return Ok(false);
    }
    let m = &system.exponents;
    Ok((0..m.cols()).all(|j| {
        let col = m.col(j);
        let factors: Vec<(&Rational, &Rational)> = x.iter().zip(&col).collect();
        power_product_equals(&factors, &kappa[j])
    }))
}

/// Float check of `x^M = kappa` in logarithmic form with tolerance `tol`.
pub fn verify_point_f64(x: &[f64], system: &BinomialSystem, tol: f64) -> Result<bool> {
    let kappa = system.kappa_or_err()?;
    if x.len() != system.num_species() || x.iter().any(|v| !(*v > 0.0)) {
        return Ok(false);
    }
    let m = &system.exponents;
    Ok((0..m.cols()).all(|j| {
        let lhs: f64 = (0..m.rows())
            .map(|i| m[(i, j)].to_f64().unwrap_or(f64::NAN) * x[i].ln())
            .sum();
        let rhs = kappa[j].to_f64().unwrap_or(f64::NAN).ln();
        (lhs - rhs).exp_m1().abs() <= tol
    }))
}

/// Rate constants whose right-hand side `kappa` equals `gamma`.
///
/// Starting from unit rates with tree constants `K`, the potentials `psi`
/// are built along the relation with `psi_j / psi_i = gamma_(i,j)` and
/// `psi = 1` at the first vertex of each component; then `k*_ij = K_i / psi_i`.
pub fn realize_rates(net: &Network, gamma: &[Rational]) -> Result<RateAssignment> {
    let decomp = decompose(net);
    let relation = spanning_relation(net, &decomp)?;
    if gamma.len() != relation.pairs.len() {
        return Err(Error::WrongLength { expected: relation.pairs.len(), actual: gamma.len() });
    }
    if !gamma.iter().all(Signed::is_positive) {
        return Err(Error::NonPositiveValue);
    }
    let base = RateAssignment::uniform(net, Rational::one())?;
    let k = tree_constants_at(net, &base)?;
    let mut psi = vec![Rational::one(); net.num_vertices()];
    for (&(i, j), g) in relation.pairs.iter().zip(gamma) {
        psi[j] = &psi[i] * g;
    }
    let values = net
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| base.get(e) * &k[edge.source] / &psi[edge.source])
        .collect();
    RateAssignment::new(net, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cycle, deficiency_one, running_example};
    use crate::equilibria::{binomial_system, kappa_at};
    use crate::scalar::{int, rat};
    use std::collections::BTreeMap;

    fn rates(net: &Network, v: &[i64]) -> RateAssignment {
        RateAssignment::new(net, v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn reference_solution() -> MonomialVector {
        let e = |pairs: &[(usize, Rational)]| -> BTreeMap<Base, Rational> {
            pairs.iter().map(|(j, v)| (Base::Kappa(*j), v.clone())).collect()
        };
        MonomialVector::new(vec![
            e(&[(2, int(-1))]),
            e(&[(0, rat(-2, 3)), (1, rat(-2, 3)), (2, rat(-5, 3))]),
            e(&[(1, int(-1)), (2, int(-3))]),
            e(&[]),
        ])
    }

    #[test]
    fn running_example_is_always_solvable() {
        let net = running_example();
        let sys = binomial_system(&net, Some(&rates(&net, &[1, 1, 1, 1, 1, 1]))).unwrap();
        assert_eq!(existence_test(&sys), ExistenceVerdict::Always);
        assert!(verify_monomial(&reference_solution(), &sys, &[]).unwrap());
        let x = particular_solution(&sys).unwrap();
        assert!(verify_monomial(&x, &sys, &[]).unwrap());
        // symbolic identity, so any rates work
        let sys = binomial_system(&net, Some(&rates(&net, &[3, 7, 2, 5, 11, 4]))).unwrap();
        assert!(verify_monomial(&reference_solution(), &sys, &[]).unwrap());
        assert!(verify_monomial(&x, &sys, &[]).unwrap());
    }

    #[test]
    fn perturbed_solution_fails() {
        let net = running_example();
        let sys = binomial_system(&net, Some(&rates(&net, &[3, 7, 2, 5, 11, 4]))).unwrap();
        let kappa: Vec<f64> = sys.kappa.as_ref().unwrap().iter().map(|k| k.to_f64().unwrap()).collect();
        let x = reference_solution().eval_f64(&kappa, &[]);
        assert!(verify_point_f64(&x, &sys, 1e-12).unwrap());
        let mut y = x.clone();
        y[0] *= 2.0;
        assert!(!verify_point_f64(&y, &sys, 1e-12).unwrap());

        // doubling the fourth entry, exactly
        let mut entries = reference_solution().entries().to_vec();
        entries[3].insert(Base::Kappa(0), int(1));
        entries[3].insert(Base::Kappa(1), int(1));
        let perturbed = MonomialVector::new(entries);
        assert!(!verify_monomial(&perturbed, &sys, &[]).unwrap());
        assert!(!verify_point(&[int(1), int(2), int(1), int(1)], &sys).unwrap());
    }

    #[test]
    fn parametrization_direction() {
        let net = running_example();
        let sys = binomial_system(&net, None).unwrap();
        let p = parametrization(&sys, particular_solution_candidate(&sys));
        assert_eq!(p.num_parameters(), 1);
        assert_eq!(p.basis.vectors()[0], vec![int(3), int(5), int(9), int(3)]);
        assert_eq!(p.free_part().to_strings(), vec!["xi1^3", "xi1^5", "xi1^9", "xi1^3"]);
    }

    #[test]
    fn unit_kappa() {
        let net = cycle(3);
        let k = realize_rates(&net, &vec![int(1); 2]).unwrap();
        assert!(k.values().iter().all(One::is_one));

        // unequal unit-rate tree constants: rates change but kappa is still 1
        let net = running_example();
        let k = realize_rates(&net, &vec![int(1); 3]).unwrap();
        assert_eq!(kappa_at(&net, &k).unwrap(), vec![int(1); 3]);
        let sys = binomial_system(&net, Some(&k)).unwrap();
        let x = particular_solution(&sys).unwrap();
        assert_eq!(x.eval_f64(&[1.0; 3], &[]), vec![1.0; 4]);
        assert!(verify_point(&vec![int(1); 4], &sys).unwrap());
    }

    #[test]
    fn conditional_existence() {
        let net = deficiency_one();
        let sys = binomial_system(&net, Some(&rates(&net, &[2, 1, 4, 2]))).unwrap();
        assert_eq!(sys.kappa.clone().unwrap(), vec![int(2), int(2)]);
        match existence_test(&sys) {
            ExistenceVerdict::Conditional { conditions, values, holds } => {
                assert_eq!(conditions.col(0), vec![int(1), int(-1)]);
                assert_eq!(values, Some(vec![int(1)]));
                assert_eq!(holds, Some(true));
            }
            v => panic!("unexpected {v:?}"),
        }
        let x = particular_solution(&sys).unwrap();
        assert!(verify_monomial(&x, &sys, &[]).unwrap());

        let sys = binomial_system(&net, Some(&rates(&net, &[2, 1, 4, 1]))).unwrap();
        assert_eq!(sys.kappa.clone().unwrap(), vec![int(2), int(4)]);
        match existence_test(&sys) {
            ExistenceVerdict::Conditional { values, holds, .. } => {
                assert_eq!(values, Some(vec![rat(1, 2)]));
                assert_eq!(holds, Some(false));
            }
            v => panic!("unexpected {v:?}"),
        }
        assert_eq!(particular_solution(&sys), Err(Error::NoSolution));
        let sys = binomial_system(&net, None).unwrap();
        assert!(matches!(particular_solution(&sys), Err(Error::RatesRequired(_))));
    }

    #[test]
    fn realize_two_cycle() {
        let net = cycle(2);
        let k = realize_rates(&net, &[int(3)]).unwrap();
        assert_eq!(k.values(), &[int(1), rat(1, 3)]);
        assert_eq!(kappa_at(&net, &k).unwrap(), vec![int(3)]);
    }

    #[test]
    fn realize_running_example() {
        let net = running_example();
        let gamma = vec![int(2), rat(1, 3), int(5)];
        let k = realize_rates(&net, &gamma).unwrap();
        assert_eq!(kappa_at(&net, &k).unwrap(), gamma);
        assert_eq!(
            realize_rates(&net, &[int(1)]),
            Err(Error::WrongLength { expected: 3, actual: 1 })
        );
        assert_eq!(realize_rates(&net, &[int(1), int(0), int(1)]), Err(Error::NonPositiveValue));
    }
}
