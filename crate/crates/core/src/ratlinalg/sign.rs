use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

/// Sign of a real number. Ordered `Minus < Zero < Plus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn of<T: Signed + Zero>(x: &T) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An element of `{-, 0, +}^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn of<T: Signed + Zero>(x: &[T]) -> SignVector {
        SignVector(x.iter().map(Sign::of).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Zero)
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }

    /// Every sign vector of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = SignVector> {
        let total = 3usize.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut signs = vec![Sign::Minus; n];
            for slot in signs.iter_mut().rev() {
                *slot = [Sign::Minus, Sign::Zero, Sign::Plus][code % 3];
                code /= 3;
            }
            SignVector(signs)
        })
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SignVector {
    type Err = String;

    /// Accepts `+-0+` or `(+,-,0,+)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !matches!(c, '(' | ')' | ',' | ' '))
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                '0' => Ok(Sign::Zero),
                other => Err(format!("invalid sign `{other}`")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn signs_of_rationals() {
        let v = SignVector::of(&[rat(1, 2), rat(-1, 1), rat(0, 1)]);
        assert_eq!(v.to_string(), "(+,-,0)");
        assert_eq!("(+,-,0)".parse::<SignVector>().unwrap(), v);
        assert_eq!(v.negated().to_string(), "(-,+,0)");
    }

    #[test]
    fn enumeration_is_complete_and_sorted() {
        let all: Vec<_> = SignVector::all(3).collect();
        assert_eq!(all.len(), 27);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[13].is_zero());
    }
}
