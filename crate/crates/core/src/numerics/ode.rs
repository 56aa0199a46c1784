//! Power-law right-hand side and fixed-step RK4.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphkit::laplacian;
use crate::model::{Network, RateAssignment};
use crate::ratlinalg::Matrix;
use crate::scalar::FloatScalar;

/// Float copy of the data needed to evaluate `dx/dt = Y A_k x^Ỹ`.
#[derive(Clone, Debug)]
pub struct Kinetics<T> {
    /// Per edge: source vertex, rate constant, and reaction vector.
    edges: Vec<(usize, T, Vec<T>)>,
    /// Kinetic exponents per vertex (zero for non-sources).
    orders: Matrix<T>,
    laplacian: Matrix<T>,
    n: usize,
}

pub(crate) fn check_positive<T: FloatScalar>(x: &[T]) -> Result<()> {
    match x.iter().position(|v| !(*v > T::zero())) {
        Some(i) => Err(Error::NonPositiveState(i)),
        None => Ok(()),
    }
}

impl<T: FloatScalar> Kinetics<T> {
    pub fn new(net: &Network, rates: &RateAssignment) -> Self {
        let edges = net
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let v = net.reaction_vector(e).iter().map(T::from_rational).collect();
                (edge.source, T::from_rational(rates.get(e)), v)
            })
            .collect();
        Kinetics {
            edges,
            orders: net.kinetic_matrix().transpose().map(T::from_rational),
            laplacian: laplacian(net, rates).map(T::from_rational),
            n: net.num_species(),
        }
    }

    pub fn num_species(&self) -> usize {
        self.n
    }

    /// `x^Ỹ`, one monomial per vertex.
    pub fn monomials(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.n {
            return Err(Error::WrongLength { expected: self.n, actual: x.len() });
        }
        check_positive(x)?;
        let logs: Vec<T> = x.iter().map(|v| v.ln()).collect();
        Ok(self.orders.mul_vec(&logs).into_iter().map(|s| s.exp()).collect())
    }

    /// Reaction rates, one per edge.
    pub fn fluxes(&self, x: &[T]) -> Result<Vec<T>> {
        let mono = self.monomials(x)?;
        Ok(self.edges.iter().map(|(src, k, _)| *k * mono[*src]).collect())
    }

    pub fn rhs(&self, x: &[T]) -> Result<Vec<T>> {
        let flux = self.fluxes(x)?;
        let mut out = vec![T::zero(); self.n];
        for ((_, _, v), f) in self.edges.iter().zip(flux) {
            for (o, vi) in out.iter_mut().zip(v) {
                *o = *o + f * *vi;
            }
        }
        Ok(out)
    }

    /// `‖A_k x^Ỹ‖∞ / (1 + max flux)`: zero exactly at complex balancing
    /// equilibria, scaled by the size of the individual terms.
    pub fn balance_residual(&self, x: &[T]) -> Result<T> {
        let mono = self.monomials(x)?;
        let flux = self.fluxes(x)?;
        let scale = flux.iter().fold(T::zero(), |m, f| m.max(f.abs()));
        let r = self
            .laplacian
            .mul_vec(&mono)
            .iter()
            .fold(T::zero(), |m, v| m.max(v.abs()));
        Ok(r / (T::one() + scale))
    }
}

/// `Y A_k x^Ỹ` at a positive state.
pub fn ode_rhs<T: FloatScalar>(net: &Network, rates: &RateAssignment, x: &[T]) -> Result<Vec<T>> {
    Kinetics::new(net, rates).rhs(x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<Vec<T>>,
    /// Set when a stage left the positive orthant; integration stopped at
    /// the last accepted state.
    pub domain_exit: bool,
}

impl<T: FloatScalar> Trajectory<T> {
    pub fn last(&self) -> &[T] {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Classical RK4 with fixed step `dt`; the last step is shortened to land
/// on `t_end`.
pub fn integrate<T: FloatScalar>(
    net: &Network,
    rates: &RateAssignment,
    x0: &[T],
    t_end: T,
    dt: T,
) -> Result<Trajectory<T>> {
    if !(dt > T::zero()) || !(t_end >= T::zero()) {
        return Err(Error::InvalidParameter("need dt > 0 and t_end >= 0".into()));
    }
    let kin = Kinetics::new(net, rates);
    kin.rhs(x0)?;
    let mut traj = Trajectory { times: vec![T::zero()], states: vec![x0.to_vec()], domain_exit: false };
    let steps = (t_end / dt).ceil().to_usize().unwrap_or(0);
    let two = T::one() + T::one();
    let six = two + two + two;
    let mut x = x0.to_vec();
    for s in 0..steps {
        let t = T::from_usize(s).unwrap() * dt;
        let h = dt.min(t_end - t);
        if !(h > T::zero()) {
            break;
        }
        let axpy = |a: &[T], c: T, b: &[T]| -> Vec<T> { a.iter().zip(b).map(|(u, v)| *u + c * *v).collect() };
        let step = (|| -> Result<Vec<T>> {
            let k1 = kin.rhs(&x)?;
            let k2 = kin.rhs(&axpy(&x, h / two, &k1))?;
            let k3 = kin.rhs(&axpy(&x, h / two, &k2))?;
            let k4 = kin.rhs(&axpy(&x, h, &k3))?;
            let next: Vec<T> = (0..x.len())
                .map(|i| x[i] + h / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i]))
                .collect();
            check_positive(&next)?;
            Ok(next)
        })();
        match step {
            Ok(next) => {
                x = next;
                traj.times.push(t + h);
                traj.states.push(x.clone());
            }
            Err(_) => {
                traj.domain_exit = true;
                break;
            }
        }
    }
    Ok(traj)
}
