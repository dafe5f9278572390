//! Exact scalar types: rationals, Gaussian rationals, and the multiquadratic
//! field `Q(i)(√2, √3, √5, ...)` used to normalise Clifford generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("square root of a negative number {0}")]
    NegativeRadicand(String),
    #[error("radicand {0} has a prime factor beyond the factoring bound")]
    RadicandTooLarge(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a decimal-free signed integer.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| ScalarError::Parse(s.to_string()))?;
    let d = BigInt::from_str(den).map_err(|_| ScalarError::Parse(s.to_string()))?;
    if d.is_zero() {
        return Err(ScalarError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(n, d))
}

/// `"p/q"` with a positive denominator; integers print without a denominator.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

/// Arithmetic needed by the exact linear algebra kernels.
pub trait Field:
    Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
}

impl Field for Rational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }
    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }
    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }
    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn scale(&self, q: &Rational) -> Self {
        Self { re: &self.re * q, im: &self.im * q }
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

impl Add for Gaussian {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Gaussian {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Gaussian {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Self { re, im }
    }
}

impl Neg for Gaussian {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Field for Gaussian {
    fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        assert!(!n.is_zero(), "inverse of zero");
        Self { re: &self.re / &n, im: -(&self.im / &n) }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::real(q.clone())
    }
}

// ---------------------------------------------------------------------------
// Multiquadratic extension

/// An element of `Q(i)(√p : p prime)`, stored as Gaussian-rational
/// coefficients on square-free radical monomials `√(p₁⋯p_k)`.
///
/// Monomial keys are sorted lists of distinct primes; the square roots are
/// the positive real ones, so `√p · √p = p` is applied eagerly and equality
/// is coefficient equality. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExtScalar {
    terms: BTreeMap<Vec<u64>, Gaussian>,
}

impl ExtScalar {
    pub fn from_gaussian(g: Gaussian) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(Vec::new(), g);
        }
        Self { terms }
    }

    /// `g · √(p₁⋯p_k)` for a sorted list of distinct primes.
    pub fn monomial(primes: Vec<u64>, g: Gaussian) -> Self {
        debug_assert!(primes.windows(2).all(|w| w[0] < w[1]));
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(primes, g);
        }
        Self { terms }
    }

    /// The positive square root of a positive rational.
    pub fn sqrt(q: &Rational) -> Result<Self, ScalarError> {
        if q.is_negative() {
            return Err(ScalarError::NegativeRadicand(q.to_string()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(n/d) = √(n·d) / d
        let nd = q.numer() * q.denom();
        let (square_root_part, radical) = split_square(&nd)?;
        let coeff = Rational::new(square_root_part, q.denom().clone());
        Ok(Self::monomial(radical, Gaussian::real(coeff)))
    }

    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, g)| (k.clone(), g.conj())).collect() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &Gaussian)> {
        self.terms.iter()
    }

    /// Gaussian part if no radicals are present.
    pub fn as_gaussian(&self) -> Option<Gaussian> {
        match self.terms.len() {
            0 => Some(Gaussian::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, g: &Gaussian) -> Self {
        if g.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.clone() * g.clone())).collect() }
    }

    fn add_term(&mut self, key: Vec<u64>, g: Gaussian) {
        if g.is_zero() {
            return;
        }
        let sum = match self.terms.get(&key) {
            Some(old) => old.clone() + g,
            None => g,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    /// Sign flip of `√p` in every monomial containing `p`.
    fn flip_prime(&self, p: u64) -> Self {
        let terms = self.terms.iter().map(|(k, g)| if k.contains(&p) { (k.clone(), -g.clone()) } else { (k.clone(), g.clone()) }).collect();
        Self { terms }
    }

    fn some_prime(&self) -> Option<u64> {
        self.terms.keys().find_map(|k| k.first().copied())
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, g)| {
                if k.is_empty() {
                    format!("({g})")
                } else {
                    let r: BigInt = k.iter().map(|&p| BigInt::from(p)).product();
                    format!("({g})*sqrt({r})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product of two square-free keys: the merged key and the product of the
/// shared primes, whose square roots multiply out.
fn mul_keys(a: &[u64], b: &[u64]) -> (Vec<u64>, BigInt) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut common = BigInt::one();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                common *= x;
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) if x < y => {
                out.push(x);
                i += 1;
            }
            (Some(_), Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (out, common)
}

impl Add for ExtScalar {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (k, g) in o.terms {
            self.add_term(k, g);
        }
        self
    }
}

impl Sub for ExtScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for ExtScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(k, g)| (k, -g)).collect() }
    }
}

impl Mul for ExtScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero();
        for (ka, ga) in &self.terms {
            for (kb, gb) in &o.terms {
                let (key, common) = mul_keys(ka, kb);
                let c = (ga.clone() * gb.clone()).scale(&Rational::from_integer(common));
                out.add_term(key, c);
            }
        }
        out
    }
}

impl Zero for ExtScalar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExtScalar {
    fn one() -> Self {
        Self::from_gaussian(Gaussian::one())
    }
}

impl Field for ExtScalar {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        // x = a + b√p  ⇒  x · (a − b√p) has no √p; recurse on the norm.
        match self.some_prime() {
            None => Self::from_gaussian(self.as_gaussian().expect("radical-free").inv()),
            Some(p) => {
                let conj = self.flip_prime(p);
                let norm = self.clone() * conj.clone();
                conj * norm.inv()
            }
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_gaussian(Gaussian::real(q.clone()))
    }
}

impl From<Gaussian> for ExtScalar {
    fn from(g: Gaussian) -> Self {
        Self::from_gaussian(g)
    }
}

const TRIAL_BOUND: u64 = 1 << 20;

/// Splits a positive integer `n = s² · r` with `r` square-free, returning `s`
/// and the sorted prime factors of `r`.
///
/// Trial division runs to 2²⁰; a cofactor below 2⁴⁰ is then prime. Larger
/// cofactors are accepted only when they are perfect squares of a prime.
fn split_square(n: &BigInt) -> Result<(BigInt, Vec<u64>), ScalarError> {
    let mut rest = n.abs();
    let mut square = BigInt::one();
    let mut radical = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        square *= bp.pow(e / 2);
        if e % 2 == 1 {
            radical.push(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        // Every remaining factor exceeds the trial bound, so below the bound
        // squared the cofactor is a single prime.
        let bound = BigInt::from(TRIAL_BOUND);
        if rest < &bound * &bound {
            let prime = rest.to_u64().ok_or_else(|| ScalarError::RadicandTooLarge(n.to_string()))?;
            radical.push(prime);
            radical.sort_unstable();
        } else if is_square(&rest) {
            square *= rest.sqrt();
        } else {
            return Err(ScalarError::RadicandTooLarge(n.to_string()));
        }
    }
    Ok((square, radical))
}

fn is_square(n: &BigInt) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(fmt_rational(&int(7)), "7");
    }

    #[test]
    fn gaussian_inverse() {
        let z = Gaussian::new(int(3), int(-4));
        assert_eq!(z.clone() * z.inv(), Gaussian::one());
        assert_eq!(Gaussian::i() * Gaussian::i(), -Gaussian::one());
    }

    #[test]
    fn square_roots_are_canonical() {
        let a = ExtScalar::sqrt(&int(8)).unwrap(); // 2√2
        let b = ExtScalar::sqrt(&rat(1, 2)).unwrap(); // √2/2
        assert_eq!(a.clone() * b.clone(), ExtScalar::from_rational(&int(2)));
        let s6 = ExtScalar::sqrt(&int(6)).unwrap();
        let s3 = ExtScalar::sqrt(&int(3)).unwrap();
        let s2 = ExtScalar::sqrt(&int(2)).unwrap();
        assert_eq!(s2 * s3, s6);
        assert_eq!(ExtScalar::sqrt(&rat(9, 4)).unwrap(), ExtScalar::from_rational(&rat(3, 2)));
        assert!(ExtScalar::sqrt(&int(-1)).is_err());
    }

    #[test]
    fn large_primes_do_not_overflow() {
        // two primes just under 2^40; their product exceeds u64
        let (p, q) = (1_099_511_627_689i64, 1_099_511_627_609i64);
        let sp = ExtScalar::sqrt(&int(p)).unwrap();
        let sq = ExtScalar::sqrt(&int(q)).unwrap();
        let pq = sp.clone() * sq.clone();
        assert_eq!(pq.clone() * pq.clone(), ExtScalar::from_rational(&(int(p) * int(q))));
        assert_eq!(sp.clone() * sp, ExtScalar::from_rational(&int(p)));
        assert!(pq.to_string().contains(&(i128::from(p) * i128::from(q)).to_string()));
    }

    #[test]
    fn extension_inverse() {
        let s2 = ExtScalar::sqrt(&int(2)).unwrap();
        let s3 = ExtScalar::sqrt(&int(3)).unwrap();
        let x = ExtScalar::one() + s2.clone() + s3.clone() * Gaussian::i().into() + s2 * s3;
        assert_eq!(x.clone() * x.inv(), ExtScalar::one());
    }

    #[test]
    fn large_prime_radicand() {
        // 1_000_003 is prime and above the trial bound.
        let p = 1_000_003i64;
        let s = ExtScalar::sqrt(&int(p)).unwrap();
        assert_eq!(s.clone() * s, ExtScalar::from_rational(&int(p)));
    }
}
