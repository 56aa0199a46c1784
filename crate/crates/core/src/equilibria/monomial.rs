//! Positive vectors written as products of named positive bases raised to
//! rational exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::scalar::{format_rational, pow_int, Rational};
use crate::RationalMatrix;

/// A named positive base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    /// Component of the right-hand side of the binomial system (0-based).
    Kappa(usize),
    /// Free parameter of the equilibrium set (0-based).
    Xi(usize),
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Kappa(j) => write!(f, "kappa{}", j + 1),
            Base::Xi(j) => write!(f, "xi{}", j + 1),
        }
    }
}

/// Exponents of one entry, with zero exponents omitted.
pub type Exponents = BTreeMap<Base, Rational>;

/// Vector whose `i`-th entry is `prod_b b^{e_ib}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MonomialVector {
    entries: Vec<Exponents>,
}

fn accumulate(target: &mut Exponents, base: Base, e: Rational) {
    if e.is_zero() {
        return;
    }
    let slot = target.entry(base).or_insert_with(Rational::zero);
    *slot += e;
    if slot.is_zero() {
        target.remove(&base);
    }
}

impl MonomialVector {
    pub fn new(entries: Vec<Exponents>) -> Self {
        let entries = entries
            .into_iter()
            .map(|e| e.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        MonomialVector { entries }
    }

    /// All-ones vector of length `n`.
    pub fn ones(n: usize) -> Self {
        MonomialVector { entries: vec![Exponents::new(); n] }
    }

    /// `b^{Eᵀ}` for an `n × r` exponent matrix `E`: entry `i` is
    /// `prod_j b_j^{E_ij}` where `b_j = base(j)`.
    pub fn from_exponent_matrix(e: &RationalMatrix, base: impl Fn(usize) -> Base) -> Self {
        let entries = (0..e.rows())
            .map(|i| {
                let mut ex = Exponents::new();
                for j in 0..e.cols() {
                    accumulate(&mut ex, base(j), e[(i, j)].clone());
                }
                ex
            })
            .collect();
        MonomialVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Exponents] {
        &self.entries
    }

    pub fn exponent(&self, i: usize, base: Base) -> Rational {
        self.entries[i].get(&base).cloned().unwrap_or_else(Rational::zero)
    }

    /// Componentwise product.
    pub fn hadamard(&self, other: &MonomialVector) -> MonomialVector {
        assert_eq!(self.len(), other.len());
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| {
                let mut ex = a.clone();
                for (base, e) in b {
                    accumulate(&mut ex, *base, e.clone());
                }
                ex
            })
            .collect();
        MonomialVector { entries }
    }

    /// `x^M` for an `n × r` matrix `M`: entry `j` is `prod_i x_i^{M_ij}`.
    pub fn power(&self, m: &RationalMatrix) -> MonomialVector {
        assert_eq!(self.len(), m.rows());
        let entries = (0..m.cols())
            .map(|j| {
                let mut ex = Exponents::new();
                for (i, entry) in self.entries.iter().enumerate() {
                    let c = &m[(i, j)];
                    if c.is_zero() {
                        continue;
                    }
                    for (base, e) in entry {
                        accumulate(&mut ex, *base, e * c);
                    }
                }
                ex
            })
            .collect();
        MonomialVector { entries }
    }

    /// Every exponent is an integer.
    pub fn has_integer_exponents(&self) -> bool {
        self.entries.iter().flat_map(|e| e.values()).all(|e| e.is_integer())
    }

    /// Exact value, available when all exponents are integers.
    pub fn eval_exact(&self, kappa: &[Rational], xi: &[Rational]) -> Option<Vec<Rational>> {
        if !self.has_integer_exponents() {
            return None;
        }
        Some(
            self.entries
                .iter()
                .map(|ex| {
                    ex.iter().fold(Rational::one(), |acc, (b, e)| {
                        acc * pow_int(lookup(*b, kappa, xi), e.numer())
                    })
                })
                .collect(),
        )
    }

    pub fn eval_f64(&self, kappa: &[f64], xi: &[f64]) -> Vec<f64> {
        self.entries
            .iter()
            .map(|ex| {
                ex.iter()
                    .map(|(b, e)| e.to_f64().unwrap_or(f64::NAN) * lookup(*b, kappa, xi).ln())
                    .sum::<f64>()
                    .exp()
            })
            .collect()
    }

    /// Whether entry `i` equals `target[i]` for every `i` at the given
    /// positive base values. Exact, see [`power_product_equals`].
    pub fn equals_at(&self, target: &[Rational], kappa: &[Rational], xi: &[Rational]) -> bool {
        if target.len() != self.len() {
            return false;
        }
        self.entries.iter().zip(target).all(|(ex, t)| {
            let factors: Vec<(&Rational, &Rational)> =
                ex.iter().map(|(b, e)| (lookup(*b, kappa, xi), e)).collect();
            power_product_equals(&factors, t)
        })
    }

    /// Entry strings such as `kappa1^(-2/3)*kappa3^-1`.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(format_entry).collect()
    }
}

/// Pairwise coprime integers `> 1` such that every numerator and denominator
/// of `values` is a product of their powers.
fn coprime_base<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = Vec::new();
    let one = BigInt::one();
    for v in values {
        let mut todo = vec![v.numer().abs(), v.denom().clone()];
        while let Some(y) = todo.pop() {
            if y <= one {
                continue;
            }
            match base.iter().position(|b| !b.gcd(&y).is_one()) {
                None => base.push(y),
                Some(i) => {
                    let b = base.swap_remove(i);
                    let g = b.gcd(&y);
                    todo.push(&b / &g);
                    todo.push(&y / &g);
                    todo.push(g);
                }
            }
        }
    }
    base
}

fn valuation(q: &BigInt, x: &BigInt) -> i64 {
    let mut x = x.clone();
    let mut k = 0;
    while (&x % q).is_zero() {
        x /= q;
        k += 1;
    }
    k
}

/// Exact test of `prod b^e = target` for positive rationals `b`, `target`
/// and rational exponents `e`.
///
/// Over a coprime base the logarithms of the base elements are linearly
/// independent over the rationals, so the identity holds iff the exponent of
/// every base element agrees on both sides.
pub fn power_product_equals(factors: &[(&Rational, &Rational)], target: &Rational) -> bool {
    if !target.is_positive() || factors.iter().any(|(b, _)| !b.is_positive()) {
        return false;
    }
    let base = coprime_base(factors.iter().map(|(b, _)| *b).chain([target]));
    let log = |x: &Rational, q: &BigInt| valuation(q, x.numer()) - valuation(q, x.denom());
    base.iter().all(|q| {
        let lhs = factors.iter().fold(Rational::zero(), |acc, (b, e)| {
            acc + *e * Rational::from_integer(log(b, q).into())
        });
        lhs == Rational::from_integer(log(target, q).into())
    })
}

fn lookup<'a, T>(b: Base, kappa: &'a [T], xi: &'a [T]) -> &'a T {
    match b {
        Base::Kappa(j) => &kappa[j],
        Base::Xi(j) => &xi[j],
    }
}

fn format_entry(ex: &Exponents) -> String {
    if ex.is_empty() {
        return "1".into();
    }
    ex.iter()
        .map(|(b, e)| {
            if e.is_one() {
                b.to_string()
            } else if e.is_integer() {
                format!("{b}^{}", format_rational(e))
            } else {
                format!("{b}^({})", format_rational(e))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for MonomialVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for MonomialVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::Matrix;
    use crate::scalar::{int, rat};

    fn entry(pairs: &[(Base, Rational)]) -> Exponents {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn power_and_exact_equality() {
        // x = (k1^(1/2), k1^(-1/2) k2)
        let x = MonomialVector::new(vec![
            entry(&[(Base::Kappa(0), rat(1, 2))]),
            entry(&[(Base::Kappa(0), rat(-1, 2)), (Base::Kappa(1), int(1))]),
        ]);
        // x^M with M = [[2,1],[0,1]] gives (k1, k2)
        let m = Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(0), int(1)]], 2);
        let p = x.power(&m);
        assert_eq!(p.to_strings(), vec!["kappa1", "kappa2"]);
        let kappa = vec![int(4), int(9)];
        assert!(p.equals_at(&kappa, &kappa, &[]));
        assert!(x.equals_at(&[int(2), rat(9, 2)], &kappa, &[]));
        assert!(!x.equals_at(&[int(2), int(5)], &kappa, &[]));
        assert_eq!(x.eval_exact(&kappa, &[]), None);
        let f = x.eval_f64(&[4.0, 9.0], &[]);
        assert!((f[0] - 2.0).abs() < 1e-12 && (f[1] - 4.5).abs() < 1e-12);
    }

    #[test]
    fn coprime_base_products() {
        // 12^(1/2) * 3^(-1/2) = 2
        assert!(power_product_equals(&[(&int(12), &rat(1, 2)), (&int(3), &rat(-1, 2))], &int(2)));
        assert!(!power_product_equals(&[(&int(12), &rat(1, 2))], &int(3)));
        // (6/35)^2 * (5/6)^2 * (7/1)^2 = 1
        assert!(power_product_equals(
            &[(&rat(6, 35), &int(2)), (&rat(5, 6), &int(2)), (&int(7), &int(2))],
            &int(1)
        ));
        assert!(power_product_equals(&[], &int(1)));
        assert!(!power_product_equals(&[], &int(2)));
        // huge exponent denominators stay cheap
        assert!(!power_product_equals(&[(&int(4), &rat(1, 1_000_000_007))], &int(2)));
        assert!(power_product_equals(&[(&int(4), &rat(500_000_004, 1_000_000_008))], &int(2)));
        let mut b = coprime_base([&int(12), &int(18), &rat(10, 9)]);
        b.sort();
        assert_eq!(b.iter().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["2", "3", "5"]);
    }

    #[test]
    fn formatting() {
        let x = MonomialVector::new(vec![
            entry(&[(Base::Kappa(2), int(-1))]),
            entry(&[(Base::Kappa(0), rat(-2, 3)), (Base::Xi(0), int(5))]),
            Exponents::new(),
        ]);
        assert_eq!(x.to_string(), "(kappa3^-1, kappa1^(-2/3)*xi1^5, 1)");
    }

    #[test]
    fn hadamard_cancels() {
        let a = MonomialVector::new(vec![entry(&[(Base::Xi(0), int(3))])]);
        let b = MonomialVector::new(vec![entry(&[(Base::Xi(0), int(-3))])]);
        assert_eq!(a.hadamard(&b), MonomialVector::ones(1));
    }
}
