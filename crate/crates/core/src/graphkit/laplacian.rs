//! Incidence matrix, weighted Laplacian and the tree-constant kernel basis.

use num_traits::One;

use super::decomposition::decompose;
use super::polynomial::RatePolynomial;
use crate::error::{Error, Result};
use crate::model::{Network, RateAssignment};
use crate::ratlinalg::Matrix;
use crate::scalar::{Rational, Ring};
use crate::RationalMatrix;

/// `m × |E|` matrix whose column for edge `i -> j` is `e_j - e_i`.
pub fn incidence_matrix(net: &Network) -> RationalMatrix {
    let mut a = Matrix::zeros(net.num_vertices(), net.edges().len());
    for (k, e) in net.edges().iter().enumerate() {
        a[(e.source, k)] = -Rational::one();
        a[(e.target, k)] = Rational::one();
    }
    a
}

/// Laplacian with entry `(i, j) = weight(j -> i)` off the diagonal and minus
/// the total outgoing weight on the diagonal. Columns sum to zero.
pub fn laplacian_with<R: Ring>(net: &Network, weight: impl Fn(usize) -> R) -> Matrix<R> {
    let m = net.num_vertices();
    let mut a: Matrix<R> = Matrix::zeros(m, m);
    for (k, e) in net.edges().iter().enumerate() {
        let w = weight(k);
        a[(e.target, e.source)] = a[(e.target, e.source)].clone() + w.clone();
        a[(e.source, e.source)] = a[(e.source, e.source)].clone() - w;
    }
    a
}

/// Laplacian with one symbolic variable per edge.
pub fn laplacian_symbolic(net: &Network) -> Matrix<RatePolynomial> {
    laplacian_with(net, RatePolynomial::var)
}

/// Laplacian at the given rate constants.
pub fn laplacian(net: &Network, rates: &RateAssignment) -> RationalMatrix {
    laplacian_with(net, |k| rates.get(k).clone())
}

/// Minor of `-A` restricted to `component` with vertex `root` removed.
fn reduced_block<R: Ring>(a: &Matrix<R>, component: &[usize], root: usize) -> Matrix<R> {
    let keep: Vec<usize> = component.iter().copied().filter(|&v| v != root).collect();
    Matrix::from_fn(keep.len(), keep.len(), |i, j| -a[(keep[i], keep[j])].clone())
}

fn tree_constants_by<R: Ring>(
    net: &Network,
    a: &Matrix<R>,
    det: impl Fn(&Matrix<R>) -> R,
) -> Result<Vec<R>> {
    let d = decompose(net);
    if !d.weakly_reversible {
        return Err(Error::NotWeaklyReversible);
    }
    let mut k = vec![R::zero(); net.num_vertices()];
    for comp in &d.components {
        for &mu in comp {
            k[mu] = det(&reduced_block(a, comp, mu));
        }
    }
    Ok(k)
}

/// Tree constants `K_μ` as polynomials in the rate symbols, one per vertex.
///
/// Each is the determinant of the component's negated Laplacian block with
/// row and column `μ` removed, expanded division-free over the polynomial ring.
pub fn tree_constants(net: &Network) -> Result<Vec<RatePolynomial>> {
    tree_constants_by(net, &laplacian_symbolic(net), Matrix::det_by_expansion)
}

/// Tree constants at the given rates, computed by rational elimination.
pub fn tree_constants_at(net: &Network, rates: &RateAssignment) -> Result<Vec<Rational>> {
    tree_constants_by(net, &laplacian(net, rates), Matrix::determinant)
}

fn kernel_from_constants<R: Ring>(net: &Network, k: Vec<R>) -> Vec<Vec<R>> {
    decompose(net)
        .components
        .iter()
        .map(|comp| {
            (0..net.num_vertices())
                .map(|v| if comp.contains(&v) { k[v].clone() } else { R::zero() })
                .collect()
        })
        .collect()
}

/// One kernel vector of the Laplacian per connected component, supported on
/// that component with the tree constants as entries.
pub fn laplacian_kernel_basis(net: &Network) -> Result<Vec<Vec<RatePolynomial>>> {
    Ok(kernel_from_constants(net, tree_constants(net)?))
}

pub fn laplacian_kernel_basis_at(net: &Network, rates: &RateAssignment) -> Result<Vec<Vec<Rational>>> {
    Ok(kernel_from_constants(net, tree_constants_at(net, rates)?))
}

/// Whether every column of `a` sums to zero.
pub fn columns_sum_to_zero<R: Ring>(a: &Matrix<R>) -> bool {
    (0..a.cols()).all(|j| {
        (0..a.rows())
            .fold(R::zero(), |acc, i| acc + a[(i, j)].clone())
            .is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cycle, running_example};
    use crate::scalar::int;
    use num_traits::Zero;

    fn poly(net: &Network, s: &str) -> RatePolynomial {
        RatePolynomial::parse(s, &net.rate_symbols()).unwrap()
    }

    #[test]
    fn running_example_incidence() {
        let a = incidence_matrix(&running_example());
        let expected: Vec<Vec<i64>> = vec![
            vec![-1, 1, 0, 1, 0, 0],
            vec![1, -1, -1, 0, 0, 0],
            vec![0, 0, 1, -1, 0, 0],
            vec![0, 0, 0, 0, -1, 1],
            vec![0, 0, 0, 0, 1, -1],
        ];
        assert_eq!(a.to_rows(), expected.iter().map(|r| r.iter().map(|&x| int(x)).collect::<Vec<_>>()).collect::<Vec<_>>());
    }

    #[test]
    fn running_example_laplacian() {
        let net = running_example();
        let a = laplacian_symbolic(&net);
        assert_eq!(a[(1, 1)], poly(&net, "-k21 - k23"));
        assert_eq!(a[(0, 2)], poly(&net, "k31"));
        assert_eq!(a[(0, 1)], poly(&net, "k21"));
        assert_eq!(a[(2, 0)], RatePolynomial::zero());
        assert!(columns_sum_to_zero(&a));
    }

    #[test]
    fn two_cycle() {
        let net = cycle(2);
        let a = laplacian_symbolic(&net);
        assert_eq!(a[(0, 0)], poly(&net, "-k12"));
        assert_eq!(a[(0, 1)], poly(&net, "k21"));
        assert_eq!(a[(1, 0)], poly(&net, "k12"));
        assert_eq!(a[(1, 1)], poly(&net, "-k21"));
        let inc = incidence_matrix(&net);
        assert_eq!(inc.col(0), vec![int(-1), int(1)]);
        assert_eq!(inc.col(1), vec![int(1), int(-1)]);
        assert_eq!(tree_constants(&net).unwrap(), vec![poly(&net, "k21"), poly(&net, "k12")]);
        assert_eq!(laplacian_kernel_basis(&net).unwrap(), vec![vec![poly(&net, "k21"), poly(&net, "k12")]]);
    }

    #[test]
    fn three_cycle_tree_constants() {
        let net = cycle(3);
        let k = tree_constants(&net).unwrap();
        assert_eq!(k, vec![poly(&net, "k23*k31"), poly(&net, "k31*k12"), poly(&net, "k12*k23")]);
    }

    #[test]
    fn running_example_tree_constants() {
        let net = running_example();
        let k = tree_constants(&net).unwrap();
        let expected = ["k31*k21 + k31*k23", "k12*k31", "k23*k12", "k54", "k45"];
        for (got, want) in k.iter().zip(expected) {
            assert_eq!(*got, poly(&net, want));
        }
        let basis = laplacian_kernel_basis(&net).unwrap();
        assert_eq!(basis.len(), 2);
        let a = laplacian_symbolic(&net);
        for chi in &basis {
            assert!(a.mul_vec(chi).iter().all(Zero::is_zero));
        }
        assert!(basis[0][3].is_zero() && basis[1][0].is_zero());
    }

    #[test]
    fn edgeless_graph() {
        let net = Network::builder(&["A", "B"])
            .vertex("1 A", None)
            .vertex("1 B", None)
            .build()
            .unwrap();
        assert_eq!(incidence_matrix(&net).shape(), (2, 0));
        assert!(laplacian_symbolic(&net).is_zero());
        let basis = laplacian_kernel_basis(&net).unwrap();
        assert_eq!(basis, vec![
            vec![RatePolynomial::one(), RatePolynomial::zero()],
            vec![RatePolynomial::zero(), RatePolynomial::one()],
        ]);
    }

    #[test]
    fn not_weakly_reversible() {
        let net = Network::builder(&["A", "B"])
            .mass_action_vertex("1 A")
            .vertex("1 B", None)
            .edge(1, 2, "k12")
            .build()
            .unwrap();
        assert_eq!(tree_constants(&net), Err(Error::NotWeaklyReversible));
    }

    #[test]
    fn numeric_route_matches_symbolic() {
        let net = running_example();
        let rates = RateAssignment::new(&net, (1..=6).map(int).collect()).unwrap();
        let numeric = tree_constants_at(&net, &rates).unwrap();
        let symbolic = tree_constants(&net).unwrap();
        for (n, s) in numeric.iter().zip(&symbolic) {
            assert_eq!(*n, s.eval(rates.values()));
        }
    }
}
