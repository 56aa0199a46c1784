//! Sign-vector conditions on the stoichiometric and kinetic-order subspaces.
//!
//! [`birch_check`] tests the hypotheses under which every compatibility
//! class contains exactly one complex balancing equilibrium;
//! [`multistat_check`] searches for a nonzero sign vector shared by `S` and
//! the orthogonal complement of `S̃`.

use rayon::prelude::*;
use serde::Serialize;

use crate::equilibria::{kinetic_generators, stoichiometric_generators};
use crate::error::{Error, Result};
use crate::model::Network;
use crate::ratlinalg::{
    chirotope, complement_basis, sign_realizable, strictly_positive_kernel_vector,
    verify_sign_realizable, ChirotopeComparison, FeasibilityCertificate, Sign, SignVector,
    SubspaceBasis,
};
use crate::RationalMatrix;

/// Largest ambient dimension accepted by [`multistat_check`].
pub const MAX_ENUMERATION_DIM: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BirchReport {
    pub ambient_dim: usize,
    pub stoichiometric_dim: usize,
    pub kinetic_dim: usize,
    pub stoichiometric_codim: usize,
    pub kinetic_codim: usize,
    pub rank_match: bool,
    pub chirotope_result: ChirotopeComparison,
    /// Strictly positive vector orthogonal to the stoichiometric subspace.
    pub positive_orthant_in_complement: FeasibilityCertificate,
    pub hypotheses_hold: bool,
}

fn check_rows(a: &RationalMatrix, b: &RationalMatrix) -> Result<()> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "generators live in R^{} and R^{}",
            a.rows(),
            b.rows()
        )));
    }
    Ok(())
}

pub fn birch_check(s_gen: &RationalMatrix, st_gen: &RationalMatrix) -> Result<BirchReport> {
    check_rows(s_gen, st_gen)?;
    let n = s_gen.rows();
    let s = SubspaceBasis::column_space(s_gen);
    let st = SubspaceBasis::column_space(st_gen);
    let rank_match = s.dim() == st.dim();
    let chirotope_result = if rank_match {
        let a = chirotope(&s.matrix().transpose())?;
        let b = chirotope(&st.matrix().transpose())?;
        a.compare(&b)
    } else {
        ChirotopeComparison::Different
    };
    // on the normalized basis, so rescaling generators leaves the certificate unchanged
    let positive = strictly_positive_kernel_vector(&s.matrix().transpose());
    let hypotheses_hold =
        rank_match && chirotope_result.same_oriented_matroid() && positive.is_feasible();
    Ok(BirchReport {
        ambient_dim: n,
        stoichiometric_dim: s.dim(),
        kinetic_dim: st.dim(),
        stoichiometric_codim: n - s.dim(),
        kinetic_codim: n - st.dim(),
        rank_match,
        chirotope_result,
        positive_orthant_in_complement: positive,
        hypotheses_hold,
    })
}

/// [`birch_check`] on the subspaces spanned by the network's edges.
pub fn birch_check_network(net: &Network) -> Result<BirchReport> {
    birch_check(&stoichiometric_generators(net), &kinetic_generators(net))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultistatReport {
    pub capacity: bool,
    pub witness: Option<SignVector>,
    /// Position of the witness in the enumeration order, or the number of
    /// candidates when there is none.
    pub witnesses_checked: usize,
    /// Realization of the witness in the stoichiometric subspace.
    pub stoichiometric_certificate: Option<FeasibilityCertificate>,
    /// Realization of the witness in the complement of the kinetic-order subspace.
    pub complement_certificate: Option<FeasibilityCertificate>,
}

/// Nonzero sign vectors of length `n` whose first nonzero entry is `+`,
/// in lexicographic order with `- < 0 < +`.
pub fn canonical_sign_vectors(n: usize) -> impl Iterator<Item = SignVector> {
    SignVector::all(n).filter(|t| t.0.iter().find(|s| **s != Sign::Zero) == Some(&Sign::Plus))
}

pub fn multistat_check(s_gen: &RationalMatrix, st_gen: &RationalMatrix) -> Result<MultistatReport> {
    check_rows(s_gen, st_gen)?;
    let n = s_gen.rows();
    if n > MAX_ENUMERATION_DIM {
        return Err(Error::AmbientTooLarge(n));
    }
    let s = SubspaceBasis::column_space(s_gen).into_matrix();
    let w = complement_basis(st_gen).into_matrix();
    let candidates: Vec<SignVector> = canonical_sign_vectors(n).collect();
    let none = MultistatReport {
        capacity: false,
        witness: None,
        witnesses_checked: candidates.len(),
        stoichiometric_certificate: None,
        complement_certificate: None,
    };
    if s.cols() == 0 || w.cols() == 0 {
        return Ok(none);
    }
    // test the smaller subspace first; it realizes fewer sign vectors
    let (first, second, s_first) = if w.cols() <= s.cols() { (&w, &s, false) } else { (&s, &w, true) };
    let found = candidates.par_iter().enumerate().find_map_first(|(idx, tau)| {
        let a = sign_realizable(first, tau).ok()?;
        if !a.is_feasible() {
            return None;
        }
        let b = sign_realizable(second, tau).ok()?;
        b.is_feasible().then(|| (idx, tau.clone(), a, b))
    });
    Ok(match found {
        Some((idx, tau, a, b)) => {
            let (cs, cw) = if s_first { (a, b) } else { (b, a) };
            debug_assert!(verify_sign_realizable(&s, &tau, &cs));
            debug_assert!(verify_sign_realizable(&w, &tau, &cw));
            MultistatReport {
                capacity: true,
                witness: Some(tau),
                witnesses_checked: idx + 1,
                stoichiometric_certificate: Some(cs),
                complement_certificate: Some(cw),
            }
        }
        None => none,
    })
}

/// [`multistat_check`] on the subspaces spanned by the network's edges.
pub fn multistat_check_network(net: &Network) -> Result<MultistatReport> {
    multistat_check(&stoichiometric_generators(net), &kinetic_generators(net))
}

/// Re-verifies both certificates carried by a report against the generators.
pub fn verify_multistat(s_gen: &RationalMatrix, st_gen: &RationalMatrix, r: &MultistatReport) -> bool {
    match (&r.witness, &r.stoichiometric_certificate, &r.complement_certificate) {
        (Some(tau), Some(cs), Some(cw)) => {
            let s = SubspaceBasis::column_space(s_gen).into_matrix();
            let w = complement_basis(st_gen).into_matrix();
            r.capacity
                && !tau.is_zero()
                && cs.is_feasible()
                && cw.is_feasible()
                && verify_sign_realizable(&s, tau, cs)
                && verify_sign_realizable(&w, tau, cw)
        }
        (None, None, None) => !r.capacity,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{binding, running_example, running_example_with_orders};
    use crate::ratlinalg::Matrix;
    use crate::scalar::int;

    fn col(v: &[i64]) -> RationalMatrix {
        Matrix::from_columns(&[v.iter().map(|&x| int(x)).collect()], v.len())
    }

    #[test]
    fn running_example_birch() {
        let r = birch_check_network(&running_example()).unwrap();
        assert!(r.rank_match);
        assert!(r.chirotope_result.same_oriented_matroid());
        assert!(r.positive_orthant_in_complement.is_feasible());
        assert!(r.hypotheses_hold);
        assert_eq!((r.stoichiometric_dim, r.stoichiometric_codim), (3, 1));
    }

    #[test]
    fn binding_birch() {
        let r = birch_check_network(&binding(&int(2), &int(3))).unwrap();
        assert!(r.hypotheses_hold);
    }

    #[test]
    fn opposite_lines() {
        let r = birch_check(&col(&[1, -1]), &col(&[1, 1])).unwrap();
        assert_eq!(r.chirotope_result, ChirotopeComparison::Different);
        assert!(!r.hypotheses_hold);
    }

    #[test]
    fn mismatched_rows() {
        assert!(matches!(
            birch_check(&col(&[1, -1]), &col(&[1, 1, 1])),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            multistat_check(&col(&[1, -1]), &col(&[1, 1, 1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn multistationarity_instance() {
        let net = running_example_with_orders(&int(2), &int(1), &int(1));
        let (s, st) = (stoichiometric_generators(&net), kinetic_generators(&net));
        let r = multistat_check(&s, &st).unwrap();
        assert!(r.capacity);
        assert_eq!(r.witness.as_ref().unwrap().to_string(), "(+,-,+,+)");
        assert!(verify_multistat(&s, &st, &r));
    }

    #[test]
    fn no_capacity() {
        let r = multistat_check_network(&running_example()).unwrap();
        assert!(!r.capacity);
        assert_eq!(r.witnesses_checked, 40);
        let s = stoichiometric_generators(&running_example());
        assert!(!multistat_check(&s, &s).unwrap().capacity);
    }

    #[test]
    fn too_large() {
        let z = Matrix::zeros(13, 1);
        assert_eq!(multistat_check(&z, &z), Err(Error::AmbientTooLarge(13)));
    }

    #[test]
    fn canonical_count() {
        assert_eq!(canonical_sign_vectors(4).count(), 40);
        let first: Vec<String> = canonical_sign_vectors(2).map(|t| t.to_string()).collect();
        assert_eq!(first, vec!["(0,+)", "(+,-)", "(+,0)", "(+,+)"]);
    }
}
