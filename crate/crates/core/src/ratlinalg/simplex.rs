//! Exact feasibility of sign conditions via phase-1 simplex.
//!
//! Every question reduces to: find `z` with `G z >= 1` and `E z = 0`. Strict
//! sign conditions are encoded with `>= 1` since the constraint sets are
//! cones. Either a witness `z` or a Farkas certificate `(y, w)` with `y >= 0`,
//! `sum(y) > 0` and `Gᵀy + Eᵀw = 0` is returned, and both are checked exactly.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::sign::{Sign, SignVector};
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::RationalMatrix;

/// Result of an exact feasibility question, with the evidence for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FeasibilityCertificate {
    /// `witness` is the vector in the ambient space; `coefficients` are its
    /// coordinates with respect to the generators that were supplied.
    Feasible {
        #[serde(serialize_with = "crate::report::ser_rationals")]
        witness: Vec<Rational>,
        #[serde(serialize_with = "crate::report::ser_rationals")]
        coefficients: Vec<Rational>,
    },
    /// Farkas multipliers for the inequality and equality rows.
    Infeasible {
        #[serde(serialize_with = "crate::report::ser_rationals")]
        inequality_multipliers: Vec<Rational>,
        #[serde(serialize_with = "crate::report::ser_rationals")]
        equality_multipliers: Vec<Rational>,
    },
}

impl FeasibilityCertificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityCertificate::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityCertificate::Feasible { witness, .. } => Some(witness),
            FeasibilityCertificate::Infeasible { .. } => None,
        }
    }
}

/// The system `G z >= 1, E z = 0` over `vars` unknowns.
#[derive(Clone, Debug)]
struct ConeSystem {
    vars: usize,
    ineq: Vec<Vec<Rational>>,
    eq: Vec<Vec<Rational>>,
}

enum Outcome {
    Point(Vec<Rational>),
    Farkas(Vec<Rational>, Vec<Rational>),
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl ConeSystem {
    fn solve(&self) -> Outcome {
        let q = self.vars;
        let p = self.ineq.len();
        let e = self.eq.len();
        let rows = p + e;
        // columns: z+ (q), z- (q), surplus (p), artificial (rows), rhs
        let art0 = 2 * q + p;
        let ncols = art0 + rows;
        let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows);
        for i in 0..rows {
            let mut row = vec![Rational::zero(); ncols + 1];
            let coeffs = if i < p { &self.ineq[i] } else { &self.eq[i - p] };
            for (j, c) in coeffs.iter().enumerate() {
                row[j] = c.clone();
                row[q + j] = -c.clone();
            }
            if i < p {
                row[2 * q + i] = -Rational::one();
                row[ncols] = Rational::one();
            }
            row[art0 + i] = Rational::one();
            t.push(row);
        }
        let mut basis: Vec<usize> = (art0..ncols).collect();
        // reduced costs of the phase-1 objective (sum of artificials)
        let mut cost = vec![Rational::zero(); ncols + 1];
        for j in 0..=ncols {
            let s = t.iter().fold(Rational::zero(), |acc, r| acc + &r[j]);
            cost[j] = if (art0..ncols).contains(&j) {
                Rational::one() - s
            } else {
                -s
            };
        }

        // Bland's rule: lowest-index entering column, lowest-index leaving variable on ties.
        while let Some(enter) = (0..ncols).find(|&j| cost[j].is_negative()) {
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in t.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[ncols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave.expect("phase-1 objective is bounded below");
            let piv = t[r][enter].clone();
            for x in t[r].iter_mut() {
                *x /= &piv;
            }
            let pivot_row = t[r].clone();
            for (i, row) in t.iter_mut().enumerate() {
                if i == r || row[enter].is_zero() {
                    continue;
                }
                let f = row[enter].clone();
                for (x, pr) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * pr;
                }
            }
            let f = cost[enter].clone();
            for (x, pr) in cost.iter_mut().zip(&pivot_row) {
                *x -= &f * pr;
            }
            basis[r] = enter;
        }

        // the objective row holds minus the objective value in the rhs column
        let infeasibility = -cost[ncols].clone();
        if infeasibility.is_zero() {
            let mut v = vec![Rational::zero(); ncols];
            for (i, &b) in basis.iter().enumerate() {
                v[b] = t[i][ncols].clone();
            }
            Outcome::Point((0..q).map(|j| &v[j] - &v[q + j]).collect())
        } else {
            // dual values from the artificial columns: cost_j = 1 - pi_j
            let pi: Vec<Rational> = (0..rows)
                .map(|i| Rational::one() - &cost[art0 + i])
                .collect();
            Outcome::Farkas(pi[..p].to_vec(), pi[p..].to_vec())
        }
    }

    fn verify_point(&self, z: &[Rational]) -> bool {
        z.len() == self.vars
            && self.ineq.iter().all(|g| dot(g, z) >= Rational::one())
            && self.eq.iter().all(|g| dot(g, z).is_zero())
    }

    fn verify_farkas(&self, y: &[Rational], w: &[Rational]) -> bool {
        if y.len() != self.ineq.len() || w.len() != self.eq.len() {
            return false;
        }
        if y.iter().any(|v| v.is_negative()) {
            return false;
        }
        let total = y.iter().fold(Rational::zero(), |a, b| a + b);
        if !total.is_positive() {
            return false;
        }
        (0..self.vars).all(|j| {
            let s = self
                .ineq
                .iter()
                .zip(y)
                .chain(self.eq.iter().zip(w))
                .fold(Rational::zero(), |acc, (row, m)| acc + &row[j] * m);
            s.is_zero()
        })
    }
}

fn sign_system(generators: &RationalMatrix, tau: &SignVector) -> ConeSystem {
    let mut ineq = Vec::new();
    let mut eq = Vec::new();
    for (i, s) in tau.0.iter().enumerate() {
        let row = generators.row(i).to_vec();
        match s {
            Sign::Plus => ineq.push(row),
            Sign::Minus => ineq.push(row.into_iter().map(|x| -x).collect()),
            Sign::Zero => eq.push(row),
        }
    }
    ConeSystem { vars: generators.cols(), ineq, eq }
}

/// Looks for `x` with `a x = 0` and every `x_i >= 1`.
pub fn strictly_positive_kernel_vector(a: &RationalMatrix) -> FeasibilityCertificate {
    let n = a.cols();
    let system = ConeSystem {
        vars: n,
        ineq: (0..n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                e
            })
            .collect(),
        eq: a.to_rows(),
    };
    let cert = match system.solve() {
        Outcome::Point(z) => FeasibilityCertificate::Feasible {
            witness: z.clone(),
            coefficients: z,
        },
        Outcome::Farkas(y, w) => FeasibilityCertificate::Infeasible {
            inequality_multipliers: y,
            equality_multipliers: w,
        },
    };
    assert!(
        verify_positive_kernel(a, &cert),
        "simplex produced an invalid certificate"
    );
    cert
}

/// Checks a certificate returned by [`strictly_positive_kernel_vector`].
pub fn verify_positive_kernel(a: &RationalMatrix, cert: &FeasibilityCertificate) -> bool {
    let n = a.cols();
    match cert {
        FeasibilityCertificate::Feasible { witness, .. } => {
            witness.len() == n
                && witness.iter().all(|x| *x >= Rational::one())
                && a.mul_vec(witness).iter().all(Zero::is_zero)
        }
        FeasibilityCertificate::Infeasible {
            inequality_multipliers: y,
            equality_multipliers: w,
        } => {
            // y + aᵀw = 0 with y >= 0, y != 0
            w.len() == a.rows()
                && y.len() == n
                && y.iter().all(|v| !v.is_negative())
                && y.iter().any(|v| v.is_positive())
                && a.transpose()
                    .mul_vec(w)
                    .iter()
                    .zip(y)
                    .all(|(s, yi)| (s + yi).is_zero())
        }
    }
}

/// Decides whether some `x` in the column span of `generators` has sign vector `tau`.
pub fn sign_realizable(
    generators: &RationalMatrix,
    tau: &SignVector,
) -> Result<FeasibilityCertificate> {
    if tau.len() != generators.rows() {
        return Err(Error::DimensionMismatch(format!(
            "sign vector of length {} for a subspace of R^{}",
            tau.len(),
            generators.rows()
        )));
    }
    let system = sign_system(generators, tau);
    let cert = match system.solve() {
        Outcome::Point(t) => FeasibilityCertificate::Feasible {
            witness: generators.mul_vec(&t),
            coefficients: t,
        },
        Outcome::Farkas(y, w) => FeasibilityCertificate::Infeasible {
            inequality_multipliers: y,
            equality_multipliers: w,
        },
    };
    assert!(
        verify_sign_realizable(generators, tau, &cert),
        "simplex produced an invalid certificate"
    );
    Ok(cert)
}

/// Checks a certificate returned by [`sign_realizable`].
pub fn verify_sign_realizable(
    generators: &RationalMatrix,
    tau: &SignVector,
    cert: &FeasibilityCertificate,
) -> bool {
    if tau.len() != generators.rows() {
        return false;
    }
    let system = sign_system(generators, tau);
    match cert {
        FeasibilityCertificate::Feasible { witness, coefficients } => {
            coefficients.len() == generators.cols()
                && generators.mul_vec(coefficients) == *witness
                && SignVector::of(witness) == *tau
                && system.verify_point(coefficients)
        }
        FeasibilityCertificate::Infeasible {
            inequality_multipliers,
            equality_multipliers,
        } => system.verify_farkas(inequality_multipliers, equality_multipliers),
    }
}
