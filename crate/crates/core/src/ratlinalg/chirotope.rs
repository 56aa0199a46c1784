//! Chirotopes: signs of maximal minors.

use itertools::Itertools;
use serde::Serialize;

use super::sign::Sign;
use crate::error::{Error, Result};
use crate::RationalMatrix;

/// Sign map on ascending `d`-subsets of `0..n`, listed in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chirotope {
    rank: usize,
    ground: usize,
    signs: Vec<Sign>,
}

/// Outcome of comparing two chirotopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChirotopeComparison {
    Equal,
    EqualUpToGlobalSign,
    Different,
}

impl ChirotopeComparison {
    /// Both outcomes other than `Different` describe the same oriented matroid.
    pub fn same_oriented_matroid(self) -> bool {
        self != ChirotopeComparison::Different
    }
}

impl Chirotope {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    /// Ascending index tuples paired with their signs.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, Sign)> + '_ {
        (0..self.ground)
            .combinations(self.rank)
            .zip(self.signs.iter().copied())
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Value on an arbitrary tuple; repeated indices give zero and each
    /// transposition needed to sort the tuple flips the sign.
    pub fn value(&self, tuple: &[usize]) -> Sign {
        assert_eq!(tuple.len(), self.rank, "tuple length must equal the rank");
        let mut t = tuple.to_vec();
        let mut odd = false;
        for i in 0..t.len() {
            for j in 0..t.len() - 1 - i {
                if t[j] > t[j + 1] {
                    t.swap(j, j + 1);
                    odd = !odd;
                }
            }
        }
        if t.windows(2).any(|w| w[0] == w[1]) {
            return Sign::Zero;
        }
        let pos = (0..self.ground)
            .combinations(self.rank)
            .position(|c| c == t)
            .expect("index out of range");
        let s = self.signs[pos];
        if odd {
            s.flip()
        } else {
            s
        }
    }

    /// Compact string such as `-+-+`.
    pub fn to_sign_string(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }

    pub fn compare(&self, other: &Chirotope) -> ChirotopeComparison {
        if self.rank != other.rank || self.ground != other.ground {
            return ChirotopeComparison::Different;
        }
        if self.signs == other.signs {
            ChirotopeComparison::Equal
        } else if self.signs.iter().zip(&other.signs).all(|(a, b)| *a == b.flip()) {
            ChirotopeComparison::EqualUpToGlobalSign
        } else {
            ChirotopeComparison::Different
        }
    }
}

/// Chirotope of a `d × n` matrix of rank `d`.
pub fn chirotope(a: &RationalMatrix) -> Result<Chirotope> {
    let (d, n) = a.shape();
    let rank = a.rank();
    if rank != d {
        return Err(Error::RankDeficient { expected: d, actual: rank });
    }
    let signs = (0..n)
        .combinations(d)
        .map(|cols| Sign::of(&a.select_columns(&cols).determinant()))
        .collect();
    Ok(Chirotope { rank: d, ground: n, signs })
}

pub fn chirotopes_equal(a: &Chirotope, b: &Chirotope) -> ChirotopeComparison {
    a.compare(b)
}
