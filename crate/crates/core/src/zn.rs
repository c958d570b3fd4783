//! The ring `{1, ..., n}` with arithmetic modulo `n`, where `n` itself
//! represents zero, plus the divisor and totient helpers the counting code
//! needs.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Reduce any integer into `{1..n}`; residue 0 maps to `n`.
#[inline]
pub fn normalize(x: u64, n: u64) -> u64 {
    debug_assert!(n >= 1);
    match x % n {
        0 => n,
        r => r,
    }
}

/// An element of `{1..n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZnElement {
    value: u64,
    modulus: u64,
}

impl ZnElement {
    /// Checked constructor: `value` must already lie in `{1..modulus}`.
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be at least 1".into()));
        }
        if value == 0 || value > modulus {
            return Err(Error::InvalidArgument(format!(
                "{value} is outside 1..={modulus}"
            )));
        }
        Ok(ZnElement { value, modulus })
    }

    /// Reduce an arbitrary integer into the ring.
    pub fn from_residue(x: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be at least 1".into()));
        }
        Ok(ZnElement {
            value: normalize(x, modulus),
            modulus,
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Whether this is the zero class (represented by `n`).
    pub fn is_zero(self) -> bool {
        self.value == self.modulus
    }

    fn check(self, other: Self) -> Result<u64> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(self.modulus)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Result<Self> {
        let n = self.check(other)?;
        let v = (self.value as u128 * other.value as u128 % n as u128) as u64;
        Ok(ZnElement {
            value: if v == 0 { n } else { v },
            modulus: n,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Result<Self> {
        let n = self.check(other)?;
        let v = ((self.value as u128 + other.value as u128) % n as u128) as u64;
        Ok(ZnElement {
            value: if v == 0 { n } else { v },
            modulus: n,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Self) -> Result<Self> {
        let n = self.check(other)?;
        // both values are in 1..=n, so value + n - other never underflows
        let v = (self.value as u128 + n as u128 - other.value as u128) % n as u128;
        Ok(ZnElement {
            value: if v == 0 { n } else { v as u64 },
            modulus: n,
        })
    }
}

impl fmt::Display for ZnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn gcd(mut s: u64, mut t: u64) -> u64 {
    while t != 0 {
        (s, t) = (t, s % t);
    }
    s
}

pub fn lcm(s: u64, t: u64) -> u64 {
    if s == 0 || t == 0 {
        return 0;
    }
    s / gcd(s, t) * t
}

/// All positive divisors of `n`, ascending. Empty for `n = 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Totient values for `0..=bound`, computed with a linear-time variant of
/// the sieve of Eratosthenes. Lookups above the bound fall back to trial
/// factorization.
#[derive(Debug, Clone)]
pub struct TotientSieve {
    phi: Vec<u64>,
}

impl TotientSieve {
    pub const DEFAULT_BOUND: u64 = 1 << 16;

    pub fn with_bound(bound: u64) -> Self {
        let size = bound as usize + 1;
        let mut phi = vec![0u64; size];
        let mut primes: Vec<usize> = Vec::new();
        let mut composite = vec![false; size];
        if size > 1 {
            phi[1] = 1;
        }
        for i in 2..size {
            if !composite[i] {
                primes.push(i);
                phi[i] = i as u64 - 1;
            }
            for &p in &primes {
                let ip = i * p;
                if ip >= size {
                    break;
                }
                composite[ip] = true;
                if i % p == 0 {
                    phi[ip] = phi[i] * p as u64;
                    break;
                }
                phi[ip] = phi[i] * (p as u64 - 1);
            }
        }
        TotientSieve { phi }
    }

    pub fn bound(&self) -> u64 {
        self.phi.len() as u64 - 1
    }

    /// φ(m), with φ(1) = 1. Returns 0 for `m = 0`.
    pub fn get(&self, m: u64) -> u64 {
        match self.phi.get(m as usize) {
            Some(&v) => v,
            None => totient_by_factoring(m),
        }
    }
}

fn totient_by_factoring(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    prime_divisors(m)
        .into_iter()
        .fold(m, |acc, p| acc / p * (p - 1))
}

fn shared_sieve() -> &'static TotientSieve {
    static SIEVE: OnceLock<TotientSieve> = OnceLock::new();
    SIEVE.get_or_init(|| TotientSieve::with_bound(TotientSieve::DEFAULT_BOUND))
}

/// Euler's totient, φ(1) = 1.
pub fn totient(m: u64) -> u64 {
    shared_sieve().get(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: u64, n: u64) -> ZnElement {
        ZnElement::new(v, n).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(z(6, 12).mul(z(2, 12)).unwrap().value(), 12);
        assert_eq!(z(7, 12).mul(z(2, 12)).unwrap().value(), 2);
        assert_eq!(z(1, 5).mul(z(4, 5)).unwrap().value(), 4);
        assert_eq!(z(6, 12).add(z(6, 12)).unwrap().value(), 12);
        assert_eq!(z(10, 12).add(z(5, 12)).unwrap().value(), 3);
        assert_eq!(z(3, 12).sub(z(5, 12)).unwrap().value(), 10);
        assert!(z(12, 12).is_zero());
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        assert_eq!(
            z(1, 5).mul(z(1, 6)),
            Err(Error::ModulusMismatch { left: 5, right: 6 })
        );
        assert!(z(1, 5).add(z(1, 6)).is_err());
        assert!(z(1, 5).sub(z(1, 6)).is_err());
    }

    #[test]
    fn constructor_rejects_out_of_range() {
        assert!(ZnElement::new(0, 5).is_err());
        assert!(ZnElement::new(6, 5).is_err());
        assert!(ZnElement::new(1, 0).is_err());
        assert_eq!(ZnElement::from_residue(24, 12).unwrap().value(), 12);
        assert_eq!(ZnElement::from_residue(0, 1).unwrap().value(), 1);
    }

    #[test]
    fn ring_laws_exhaustive() {
        for n in 1..=20u64 {
            let one = z(1, n);
            let zero = z(n, n);
            for a in 1..=n {
                let a = z(a, n);
                assert_eq!(a.mul(one).unwrap(), a);
                assert_eq!(a.add(zero).unwrap(), a);
                assert_eq!(a.sub(a).unwrap(), zero);
                for b in 1..=n {
                    let b = z(b, n);
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.sub(b).unwrap().add(b).unwrap(), a);
                    for c in 1..=n {
                        let c = z(c, n);
                        assert_eq!(
                            a.mul(b).unwrap().mul(c).unwrap(),
                            a.mul(b.mul(c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.add(b).unwrap().add(c).unwrap(),
                            a.add(b.add(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(12, 8), 4);
        assert_eq!(gcd(7, 12), 1);
        for n in 1..50 {
            assert_eq!(gcd(n, n), n);
        }
        assert_eq!(lcm(4, 6), 12);
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(6), 2);
        assert_eq!(totient(0), 0);
    }

    #[test]
    fn totient_fallback_agrees_with_sieve() {
        let small = TotientSieve::with_bound(10);
        let big = TotientSieve::with_bound(5000);
        for m in 0..=5000 {
            assert_eq!(small.get(m), big.get(m), "m = {m}");
        }
        assert_eq!(small.bound(), 10);
    }

    #[test]
    fn totient_against_counting_coprimes() {
        for m in 1..=300u64 {
            let brute = (1..=m).filter(|&i| gcd(i, m) == 1).count() as u64;
            assert_eq!(totient(m), brute, "m = {m}");
        }
    }

    #[test]
    fn totient_of_primes() {
        for p in (2..=1000).filter(|&p| is_prime(p)) {
            assert_eq!(totient(p), p - 1);
        }
    }

    #[test]
    fn totient_sums_over_divisors() {
        for n in 1..=1000 {
            let s: u64 = divisors(n).into_iter().map(totient).sum();
            assert_eq!(s, n);
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(7), vec![1, 7]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        for n in 1..=500 {
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n), brute);
        }
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(prime_divisors(12), vec![2, 3]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(97), vec![97]);
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }
}
