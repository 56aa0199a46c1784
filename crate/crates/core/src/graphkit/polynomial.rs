//! Sparse integer polynomials in the rate-constant symbols.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Rational;

/// Exponent vector stored sparsely as `(variable, exponent)` pairs sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0.iter().find(|(x, _)| *x == v).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<usize, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial(out.into_iter().collect())
    }

    /// Component-wise minimum of exponents.
    fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then_some((v, e.min(f)))
                })
                .collect(),
        )
    }

    /// `self / other`, assuming divisibility.
    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let r = e - other.exponent(v);
                    (r > 0).then_some((v, r))
                })
                .collect(),
        )
    }

    fn without(&self, v: usize) -> (u32, Monomial) {
        (
            self.exponent(v),
            Monomial(self.0.iter().copied().filter(|(x, _)| *x != v).collect()),
        )
    }
}

/// Polynomial with integer coefficients in variables indexed by edge.
///
/// The term map never stores zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatePolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl RatePolynomial {
    pub fn var(v: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigInt::one());
        RatePolynomial { terms }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        RatePolynomial { terms }
    }

    fn from_terms(iter: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in iter {
            *terms.entry(m).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        RatePolynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| *v))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|(_, e)| *e == 1))
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            let mut t = Rational::from_integer(c.clone());
            for &(v, e) in &m.0 {
                t *= num_traits::pow(values[v].clone(), e as usize);
            }
            acc + t
        })
    }

    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                m.0.iter().fold(c, |t, &(v, e)| t * values[v].powi(e as i32))
            })
            .sum()
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Self {
        RatePolynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.without(v);
            (e > 0).then(|| {
                let lowered = if e > 1 { rest.mul(&Monomial(vec![(v, e - 1)])) } else { rest };
                (lowered, c * BigInt::from(e))
            })
        }))
    }

    /// Sets every variable outside `keep` to one.
    fn restrict_to(&self, keep: &[usize]) -> Self {
        RatePolynomial::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial(m.0.iter().copied().filter(|(v, _)| keep.contains(v)).collect()),
                c.clone(),
            )
        }))
    }

    /// Gcd of the integer coefficients, sign taken from the leading term.
    pub fn content(&self) -> BigInt {
        let g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        match self.terms.values().next_back() {
            Some(lead) if lead.is_negative() => -g,
            _ => g,
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    fn divide_exact(&self, c: &BigInt, m: &Monomial) -> Self {
        RatePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.div(m), v / c))
                .collect(),
        }
    }

    fn mul_monomial(&self, c: &BigInt, m: &Monomial) -> Self {
        RatePolynomial {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Splits a primitive multilinear polynomial with no monomial content into
    /// factors over disjoint variable sets. Variables `x`, `y` sit in
    /// different factors exactly when `p · ∂²p/∂x∂y = ∂p/∂x · ∂p/∂y`.
    fn disjoint_factors(&self) -> Vec<RatePolynomial> {
        let vars = self.variables();
        if vars.len() < 2 || !self.is_multilinear() {
            return vec![self.clone()];
        }
        let mut parent: Vec<usize> = (0..vars.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        let partials: Vec<RatePolynomial> = vars.iter().map(|&v| self.derivative(v)).collect();
        for a in 0..vars.len() {
            for b in a + 1..vars.len() {
                let mixed = partials[a].derivative(vars[b]);
                if self.clone() * mixed != partials[a].clone() * partials[b].clone() {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &v) in vars.iter().enumerate() {
            let r = find(&mut parent, i);
            blocks.entry(r).or_default().push(v);
        }
        if blocks.len() == 1 {
            return vec![self.clone()];
        }
        let factors: Vec<RatePolynomial> = blocks
            .values()
            .map(|keep| {
                let f = self.restrict_to(keep);
                let c = f.content();
                f.divide_exact(&c, &Monomial::one())
            })
            .collect();
        let product = factors
            .iter()
            .fold(RatePolynomial::one(), |acc, f| acc * f.clone());
        let scale = self.content();
        if product.mul_monomial(&scale, &Monomial::one()) == *self {
            factors
        } else {
            vec![self.clone()]
        }
    }

    /// Parses sums of products such as `k31*k21 + 2*k31*k23^2 - k12`.
    pub fn parse(text: &str, symbols: &[&str]) -> Option<Self> {
        let normalized = text.replace('-', "+-");
        let mut out = RatePolynomial::zero();
        for term in normalized.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, term),
            };
            let mut t = RatePolynomial::one();
            for factor in body.split('*').map(str::trim) {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b.trim(), e.trim().parse::<u32>().ok()?),
                    None => (factor, 1),
                };
                let f = if let Ok(c) = base.parse::<BigInt>() {
                    RatePolynomial::constant(num_traits::pow(c, exp as usize))
                } else {
                    let v = symbols.iter().position(|s| *s == base)?;
                    (0..exp).fold(RatePolynomial::one(), |acc, _| acc * RatePolynomial::var(v))
                };
                t = t * f;
            }
            out = out + if neg { -t } else { t };
        }
        Some(out)
    }

    /// Text form using the given symbol names, terms in canonical order.
    pub fn display(&self, symbols: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.0.is_empty() {
                factors.push(mag.to_string());
            }
            for &(v, e) in &m.0 {
                if e == 1 {
                    factors.push(symbols[v].to_string());
                } else {
                    factors.push(format!("{}^{}", symbols[v], e));
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

impl Zero for RatePolynomial {
    fn zero() -> Self {
        RatePolynomial::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for RatePolynomial {
    fn one() -> Self {
        RatePolynomial::constant(BigInt::one())
    }
}

impl Add for RatePolynomial {
    type Output = RatePolynomial;

    fn add(self, rhs: Self) -> Self {
        RatePolynomial::from_terms(self.terms.into_iter().chain(rhs.terms))
    }
}

impl Neg for RatePolynomial {
    type Output = RatePolynomial;

    fn neg(self) -> Self {
        RatePolynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for RatePolynomial {
    type Output = RatePolynomial;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RatePolynomial {
    type Output = RatePolynomial;

    fn mul(self, rhs: Self) -> Self {
        RatePolynomial::from_terms(self.terms.iter().flat_map(|(m1, c1)| {
            rhs.terms.iter().map(move |(m2, c2)| (m1.mul(m2), c1 * c2))
        }))
    }
}

/// Quotient of two rate polynomials, kept as a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateRatio {
    pub numerator: RatePolynomial,
    pub denominator: RatePolynomial,
}

impl RateRatio {
    pub fn new(numerator: RatePolynomial, denominator: RatePolynomial) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        RateRatio { numerator, denominator }
    }

    /// Equality as rational functions (cross-multiplication).
    pub fn equivalent(&self, other: &RateRatio) -> bool {
        self.numerator.clone() * other.denominator.clone()
            == other.numerator.clone() * self.denominator.clone()
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.numerator.eval(values) / self.denominator.eval(values)
    }

    /// Cancels common integer content, common monomials and common factors
    /// over disjoint variable sets. The denominator's leading coefficient is
    /// made positive.
    pub fn normalized(&self) -> RateRatio {
        let (num, den) = (&self.numerator, &self.denominator);
        if num.is_zero() {
            return RateRatio::new(RatePolynomial::zero(), RatePolynomial::one());
        }
        let c = num.content().gcd(&den.content());
        let c = if den.content().is_negative() { -c } else { c };
        let m = num.monomial_content().gcd(&den.monomial_content());
        let num = num.divide_exact(&c, &m);
        let den = den.divide_exact(&c, &m);

        let split = |p: &RatePolynomial| {
            let (pc, pm) = (p.content(), p.monomial_content());
            let core = p.divide_exact(&pc, &pm);
            (pc, pm, core.disjoint_factors())
        };
        let (nc, nm, mut nf) = split(&num);
        let (dc, dm, mut df) = split(&den);
        let mut cancelled = false;
        nf.retain(|f| {
            if f.is_one() {
                return false;
            }
            match df.iter().position(|g| g == f) {
                Some(i) => {
                    df.remove(i);
                    cancelled = true;
                    false
                }
                None => true,
            }
        });
        if !cancelled {
            return RateRatio::new(num, den);
        }
        let rebuild = |c: BigInt, m: Monomial, fs: Vec<RatePolynomial>| {
            fs.into_iter()
                .fold(RatePolynomial::one(), |acc, f| acc * f)
                .mul_monomial(&c, &m)
        };
        RateRatio::new(rebuild(nc, nm, nf), rebuild(dc, dm, df))
    }

    pub fn display(&self, symbols: &[&str]) -> String {
        let wrap = |p: &RatePolynomial| {
            let s = p.display(symbols);
            if p.num_terms() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.denominator.is_one() {
            wrap(&self.numerator)
        } else {
            format!("{}/{}", wrap(&self.numerator), wrap(&self.denominator))
        }
    }
}
