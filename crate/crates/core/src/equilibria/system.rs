//! Spanning relation, binomial system and deficiencies.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphkit::{
    decompose, incidence_matrix, tree_constants, tree_constants_at, ComponentDecomposition,
    RatePolynomial, RateRatio,
};
use crate::model::{Network, RateAssignment};
use crate::ratlinalg::{same_column_space, Matrix, SubspaceBasis};
use crate::scalar::Rational;
use crate::RationalMatrix;

/// Pairs chaining consecutive vertices of every component, and the matrix
/// whose column for `(i, j)` is `e_j - e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningRelation {
    pub pairs: Vec<(usize, usize)>,
    pub matrix: RationalMatrix,
}

fn chain(decomp: &ComponentDecomposition, m: usize) -> SpanningRelation {
    let pairs: Vec<(usize, usize)> = decomp
        .components
        .iter()
        .flat_map(|c| c.windows(2).map(|w| (w[0], w[1])))
        .collect();
    let mut matrix = Matrix::zeros(m, pairs.len());
    for (k, &(i, j)) in pairs.iter().enumerate() {
        matrix[(i, k)] = -Rational::one();
        matrix[(j, k)] = Rational::one();
    }
    SpanningRelation { pairs, matrix }
}

pub fn spanning_relation(net: &Network, decomp: &ComponentDecomposition) -> Result<SpanningRelation> {
    if !decomp.weakly_reversible {
        return Err(Error::NotWeaklyReversible);
    }
    Ok(chain(decomp, net.num_vertices()))
}

/// Whether the chained pairs span the same space as the incidence matrix.
/// Holds for every network; exposed as a self-test.
pub fn spanning_relation_check(net: &Network) -> bool {
    let rel = chain(&decompose(net), net.num_vertices());
    same_column_space(&rel.matrix, &incidence_matrix(net))
}

/// Binomial equations `x^M = kappa` for complex balancing equilibria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialSystem {
    pub relation: SpanningRelation,
    /// `n × (m - l)` exponent matrix, kinetic complexes times the relation.
    pub exponents: RationalMatrix,
    /// Tree constants, one per vertex.
    pub tree_constants: Vec<RatePolynomial>,
    /// `K_j / K_i` for each pair `(i, j)`, unsimplified.
    pub kappa_symbolic: Vec<RateRatio>,
    pub kappa: Option<Vec<Rational>>,
}

impl BinomialSystem {
    pub fn num_species(&self) -> usize {
        self.exponents.rows()
    }

    pub fn num_equations(&self) -> usize {
        self.exponents.cols()
    }

    /// Symbolic right-hand side with common factors cancelled.
    pub fn kappa_normalized(&self) -> Vec<RateRatio> {
        self.kappa_symbolic.iter().map(RateRatio::normalized).collect()
    }

    pub fn kappa_or_err(&self) -> Result<&[Rational]> {
        self.kappa
            .as_deref()
            .ok_or_else(|| Error::RatesRequired("numeric kappa needs rate constants".into()))
    }

    /// Same system with numeric right-hand side at `rates`.
    pub fn with_rates(&self, net: &Network, rates: &RateAssignment) -> Result<BinomialSystem> {
        let k = tree_constants_at(net, rates)?;
        let mut out = self.clone();
        out.kappa = Some(kappa_from(&self.relation, &k));
        Ok(out)
    }
}

fn kappa_from(rel: &SpanningRelation, k: &[Rational]) -> Vec<Rational> {
    rel.pairs.iter().map(|&(i, j)| &k[j] / &k[i]).collect()
}

pub fn binomial_system(net: &Network, rates: Option<&RateAssignment>) -> Result<BinomialSystem> {
    let decomp = decompose(net);
    let relation = spanning_relation(net, &decomp)?;
    let exponents = net.kinetic_matrix().mul(&relation.matrix);
    debug_assert!(same_column_space(
        &exponents,
        &net.kinetic_matrix().mul(&incidence_matrix(net))
    ));
    let k = tree_constants(net)?;
    let kappa_symbolic = relation
        .pairs
        .iter()
        .map(|&(i, j)| RateRatio::new(k[j].clone(), k[i].clone()))
        .collect();
    let kappa = match rates {
        Some(r) => Some(kappa_from(&relation, &tree_constants_at(net, r)?)),
        None => None,
    };
    Ok(BinomialSystem { relation, exponents, tree_constants: k, kappa_symbolic, kappa })
}

/// Right-hand side at the given rates without building the symbolic system.
pub fn kappa_at(net: &Network, rates: &RateAssignment) -> Result<Vec<Rational>> {
    let decomp = decompose(net);
    let relation = spanning_relation(net, &decomp)?;
    Ok(kappa_from(&relation, &tree_constants_at(net, rates)?))
}

/// Dimensions entering the deficiency and kinetic deficiency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    pub vertices: usize,
    pub components: usize,
    pub terminal_components: usize,
    pub stoichiometric_rank: usize,
    pub kinetic_rank: usize,
    pub deficiency: usize,
    pub kinetic_deficiency: usize,
    /// `dim(ker Y ∩ im I_A)`, computed independently of `deficiency`.
    pub kernel_intersection_dim: usize,
}

pub fn deficiencies(net: &Network) -> DeficiencyReport {
    let decomp = decompose(net);
    let (m, l) = (net.num_vertices(), decomp.num_components());
    let ia = incidence_matrix(net);
    let s = net.stoich_matrix().mul(&ia).rank();
    let st = net.kinetic_matrix().mul(&ia).rank();
    let p = SubspaceBasis::column_space(&ia);
    let yp = net.stoich_matrix().mul(p.matrix());
    let kernel_intersection_dim = p.dim() - yp.rank();
    DeficiencyReport {
        vertices: m,
        components: l,
        terminal_components: decomp.num_terminal(),
        stoichiometric_rank: s,
        kinetic_rank: st,
        deficiency: m - l - s,
        kinetic_deficiency: m - l - st,
        kernel_intersection_dim,
    }
}

/// Generators of the stoichiometric subspace, one reaction vector per edge.
pub fn stoichiometric_generators(net: &Network) -> RationalMatrix {
    net.stoich_matrix().mul(&incidence_matrix(net))
}

/// Generators of the kinetic-order subspace, one per edge.
pub fn kinetic_generators(net: &Network) -> RationalMatrix {
    net.kinetic_matrix().mul(&incidence_matrix(net))
}
