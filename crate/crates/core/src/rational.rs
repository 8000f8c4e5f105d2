//! Rational scalars, factorials and the string format used in every report.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn from_int(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// `p/q` in lowest terms, or `p` when the denominator is 1.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

const CACHED: usize = 256;

fn table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(CACHED);
        let mut acc = BigInt::one();
        t.push(acc.clone());
        for k in 1..CACHED {
            acc *= k;
            t.push(acc.clone());
        }
        t
    })
}

pub fn factorial(n: u32) -> BigInt {
    let t = table();
    if (n as usize) < t.len() {
        return t[n as usize].clone();
    }
    let mut acc = t[t.len() - 1].clone();
    for k in t.len() as u32..=n {
        acc *= k;
    }
    acc
}

/// Factorial of a signed argument; negative arguments are an error since
/// every closed formula here only ever evaluates nonnegative factorials.
pub fn factorial_i(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Inadmissible(format!(
            "factorial of negative argument {n}"
        )));
    }
    Ok(factorial(n as u32))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// a (a-1) ... (a-k+1); zero when k > a.
pub fn falling(a: u32, k: u32) -> BigInt {
    if k > a {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= a - t;
    }
    acc
}

pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Exact product of factorial powers kept as prime exponents, so square
/// roots of factorial ratios split into a rational part and a squarefree
/// radicand without factoring large integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeExponents {
    exps: BTreeMap<u32, i64>,
}

impl PrimeExponents {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiplies by `(n!)^power`.
    pub fn factorial(&mut self, n: i64, power: i64) -> Result<&mut Self> {
        if n < 0 {
            return Err(Error::Inadmissible(format!(
                "factorial of negative argument {n}"
            )));
        }
        let n = n as u32;
        let cached;
        let fresh;
        let primes: &[u32] = if n <= SMALL_PRIME_BOUND {
            cached = small_primes();
            &cached[..cached.partition_point(|&p| p <= n)]
        } else {
            fresh = primes_up_to(n);
            &fresh
        };
        for &p in primes {
            let mut e = 0i64;
            let mut pk = p as u64;
            while pk <= n as u64 {
                e += (n as u64 / pk) as i64;
                pk *= p as u64;
            }
            *self.exps.entry(p).or_insert(0) += e * power;
        }
        self.exps.retain(|_, e| *e != 0);
        Ok(self)
    }

    /// Multiplies by `k^power` for a small positive integer `k`.
    pub fn integer(&mut self, k: u64, power: i64) -> &mut Self {
        assert!(k > 0);
        let mut k = k;
        let mut p = 2u64;
        while p * p <= k {
            while k % p == 0 {
                *self.exps.entry(p as u32).or_insert(0) += power;
                k /= p;
            }
            p += 1;
        }
        if k > 1 {
            *self.exps.entry(k as u32).or_insert(0) += power;
        }
        self.exps.retain(|_, e| *e != 0);
        self
    }

    pub fn inverse(&self) -> Self {
        PrimeExponents {
            exps: self.exps.iter().map(|(&p, &e)| (p, -e)).collect(),
        }
    }

    pub fn value(&self) -> Q {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, &e) in &self.exps {
            let f = BigInt::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= f;
            } else {
                den *= f;
            }
        }
        Q::new(num, den)
    }

    /// Splits the square root into `rational * sqrt(radicand)` with a
    /// squarefree integer radicand.
    pub fn sqrt_parts(&self) -> (Q, BigInt) {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut rad = BigInt::one();
        for (&p, &e) in &self.exps {
            let half = e.div_euclid(2);
            let odd = e.rem_euclid(2) == 1;
            let f = BigInt::from(p).pow(half.unsigned_abs() as u32);
            if half >= 0 {
                num *= f;
            } else {
                den *= f;
            }
            // e = 2*floor(e/2) + 1 for odd e, negative or not.
            if odd {
                rad *= p;
            }
        }
        (Q::new(num, den), rad)
    }
}

const SMALL_PRIME_BOUND: u32 = 4096;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(SMALL_PRIME_BOUND))
}

pub fn primes_up_to(n: u32) -> Vec<u32> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u32> {
    let mut bound = 16u32;
    loop {
        let ps = primes_up_to(bound);
        if ps.len() >= k {
            return ps[..k].to_vec();
        }
        bound *= 2;
    }
}

const TRIAL_BOUND: u64 = 1 << 20;

/// Squarefree decomposition `n = s^2 * r` by trial division. Fails when a
/// cofactor above the trial bound is left whose square status is unknown.
pub fn squarefree_split(n: &BigUint) -> Result<(BigUint, BigUint)> {
    if n.is_zero() {
        return Ok((BigUint::zero(), BigUint::one()));
    }
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut rad = BigUint::one();
    let mut p = 2u64;
    while p < TRIAL_BOUND && BigUint::from(p * p) <= rest {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            square *= bp.pow(e / 2);
            if e % 2 == 1 {
                rad *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            square *= r;
        } else if rest < BigUint::from(TRIAL_BOUND) * BigUint::from(TRIAL_BOUND) {
            rad *= rest;
        } else {
            return Err(Error::SquareRoot(n.to_string()));
        }
    }
    Ok((square, rad))
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(fmt_q(&q(6, -4)), "-3/2");
        assert_eq!(fmt_q(&qi(7)), "7");
        assert_eq!(parse_q(" -3/2 ").unwrap(), q(-3, 2));
        assert_eq!(parse_q("12").unwrap(), qi(12));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn factorial_table_and_overflow_path() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3628800));
        let big = factorial(300);
        assert_eq!(big, factorial(299) * 300);
        assert!(factorial_i(-1).is_err());
    }

    #[test]
    fn binomials_and_falling() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::zero());
    }

    #[test]
    fn prime_exponents_match_direct_value() {
        let mut pe = PrimeExponents::new();
        pe.factorial(10, 1)
            .unwrap()
            .factorial(4, -2)
            .unwrap()
            .integer(12, 1);
        let direct = from_int(factorial(10) * 12) / from_int(factorial(4) * factorial(4));
        assert_eq!(pe.value(), direct);
    }

    #[test]
    fn sqrt_parts_square_back() {
        for (a, b) in [(7i64, 1i64), (5, 3), (9, 2), (1, 12), (18, 50)] {
            let mut pe = PrimeExponents::new();
            pe.factorial(a, 1).unwrap().factorial(b, -1).unwrap();
            let (r, s) = pe.sqrt_parts();
            assert_eq!(&r * &r * from_int(s.clone()), pe.value(), "{a}!/{b}!");
            let (_, rad) = squarefree_split(&s.to_biguint().unwrap()).unwrap();
            assert_eq!(rad, s.to_biguint().unwrap());
        }
    }

    #[test]
    fn squarefree_split_small() {
        let (s, r) = squarefree_split(&BigUint::from(72u32)).unwrap();
        assert_eq!((s, r), (BigUint::from(6u32), BigUint::from(2u32)));
        let (s, r) = squarefree_split(&BigUint::from(1u32)).unwrap();
        assert_eq!((s, r), (BigUint::one(), BigUint::one()));
    }
}
