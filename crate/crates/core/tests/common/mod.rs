//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use crnkit::equilibria::{binomial_system, realize_rates};
use crnkit::graphkit::{decompose, RatePolynomial};
use crnkit::random::positive_rational;
use crnkit::ratlinalg::SignVector;
use crnkit::scalar::{int, pow_int, rat, Rational};
use crnkit::{FloatMatrix, Network, RateAssignment, RationalMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

/// Sum over spanning in-trees rooted at `root` of the product of edge
/// variables, by enumerating one outgoing edge per non-root vertex.
pub fn in_tree_sum(net: &Network, component: &[usize], root: usize) -> RatePolynomial {
    let others: Vec<usize> = component.iter().copied().filter(|&v| v != root).collect();
    let choices: Vec<Vec<(usize, usize)>> = others
        .iter()
        .map(|&v| {
            net.edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.source == v)
                .map(|(k, e)| (k, e.target))
                .collect()
        })
        .collect();
    let mut total = RatePolynomial::constant(0.into());
    let mut pick = vec![0usize; others.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return total;
    }
    loop {
        let next = |v: usize| -> usize {
            let i = others.iter().position(|&o| o == v).unwrap();
            choices[i][pick[i]].1
        };
        let is_tree = others.iter().all(|&start| {
            let mut v = start;
            for _ in 0..=others.len() {
                if v == root {
                    return true;
                }
                v = next(v);
            }
            false
        });
        if is_tree {
            let term = (0..others.len()).fold(RatePolynomial::constant(1.into()), |acc, i| {
                acc * RatePolynomial::var(choices[i][pick[i]].0)
            });
            total = total + term;
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return total;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Sign vectors reached by `basis * t` for `t` on the grid `{-g..g}^k / 2`.
pub fn sampled_sign_vectors(basis: &RationalMatrix, g: i64) -> BTreeSet<SignVector> {
    let k = basis.cols();
    let mut out = BTreeSet::new();
    let mut t = vec![-g; k];
    loop {
        let coeffs: Vec<Rational> = t.iter().map(|&x| rat(x, 2)).collect();
        out.insert(SignVector::of(&basis.mul_vec(&coeffs)));
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            t[i] += 1;
            if t[i] <= g {
                break;
            }
            t[i] = -g;
            i += 1;
        }
    }
}

/// Central differences of `f` at `u`, one column per coordinate.
pub fn central_differences(f: impl Fn(&[f64]) -> Vec<f64>, u: &[f64], h: f64) -> FloatMatrix {
    let cols: Vec<Vec<f64>> = (0..u.len())
        .map(|j| {
            let mut up = u.to_vec();
            let mut dn = u.to_vec();
            up[j] += h;
            dn[j] -= h;
            f(&up).iter().zip(f(&dn)).map(|(a, b)| (a - b) / (2.0 * h)).collect()
        })
        .collect();
    let rows = f(u).len();
    FloatMatrix::from_columns(&cols, rows)
}

pub fn unit_rates(net: &Network) -> RateAssignment {
    RateAssignment::uniform(net, int(1)).unwrap()
}

pub fn random_rates<R: Rng>(rng: &mut R, net: &Network) -> RateAssignment {
    crnkit::random::random_rates(rng, net)
}

/// Rates for which complex balancing equilibria exist: `kappa = z^{L M}` for
/// a random positive rational `z`, with `L` clearing the denominators of `M`.
pub fn consistent_rates<R: Rng>(rng: &mut R, net: &Network) -> RateAssignment {
    let m = binomial_system(net, None).unwrap().exponents;
    let l = m.to_rows().iter().flatten().fold(BigInt::one(), |a, q| a.lcm(q.denom()));
    let z: Vec<Rational> = (0..m.rows()).map(|_| positive_rational(rng, 5)).collect();
    let gamma: Vec<Rational> = (0..m.cols())
        .map(|j| {
            (0..m.rows()).fold(Rational::one(), |acc, i| {
                let e: BigInt = (&m[(i, j)] * Rational::from_integer(l.clone())).to_integer();
                acc * pow_int(&z[i], &e)
            })
        })
        .collect();
    realize_rates(net, &gamma).unwrap()
}

pub fn is_weakly_reversible(net: &Network) -> bool {
    decompose(net).weakly_reversible
}

pub fn to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(|q| q.to_f64().unwrap()).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
