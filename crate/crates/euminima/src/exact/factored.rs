//! Factored integers: sign times a product of prime powers, never expanded
//! unless explicitly asked for.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::primes;
use super::Rational;
use crate::{Error, Result};

/// `sign * prod p^e` with prime keys and exponents >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInt {
    sign: i8,
    factors: BTreeMap<u64, u64>,
}

impl FactoredInt {
    /// The unit 1.
    pub fn one() -> Self {
        FactoredInt {
            sign: 1,
            factors: BTreeMap::new(),
        }
    }

    /// Build from explicit parts; keys must be prime, exponents >= 1.
    pub fn new(sign: i8, factors: BTreeMap<u64, u64>) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Unsupported("sign must be +1 or -1".into()));
        }
        for (&p, &e) in &factors {
            if !primes::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e == 0 {
                return Err(Error::Unsupported("exponent must be >= 1".into()));
            }
        }
        Ok(FactoredInt { sign, factors })
    }

    /// Single prime power p^e (e = 0 gives 1).
    pub fn prime_power(p: u64, e: u64) -> Result<Self> {
        if !primes::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut factors = BTreeMap::new();
        if e > 0 {
            factors.insert(p, e);
        }
        Ok(FactoredInt { sign: 1, factors })
    }

    /// Factor a nonzero machine integer.
    pub fn from_i64(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroValue);
        }
        let factors = primes::factor_u64(n.unsigned_abs())
            .into_iter()
            .collect();
        Ok(FactoredInt {
            sign: if n < 0 { -1 } else { 1 },
            factors,
        })
    }

    /// Factor a nonzero big integer (all prime factors must fit in u64).
    pub fn from_bigint(n: &BigInt) -> Result<Self> {
        let factors = primes::factor_bigint_abs(n)?;
        Ok(FactoredInt {
            sign: if n.sign() == num_bigint::Sign::Minus {
                -1
            } else {
                1
            },
            factors,
        })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &BTreeMap<u64, u64> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.factors.is_empty()
    }

    /// Product of two factored integers.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let slot = factors.entry(p).or_insert(0);
            *slot = slot.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(FactoredInt {
            sign: self.sign * other.sign,
            factors,
        })
    }

    /// Expand to a BigInt. Guarded: refuses blow-ups past ~2^20 bits.
    pub fn value(&self) -> Result<BigInt> {
        let bits: f64 = self
            .factors
            .iter()
            .map(|(&p, &e)| (p as f64).log2() * e as f64)
            .sum();
        if bits > (1u64 << 20) as f64 {
            return Err(Error::Unsupported(format!(
                "refusing to expand a {}-bit factored integer",
                bits as u64
            )));
        }
        let mut v = BigInt::one();
        for (&p, &e) in &self.factors {
            v *= BigInt::from(p).pow(e as u32);
        }
        if self.sign < 0 {
            v = -v;
        }
        Ok(v)
    }

    /// Exact value as a Rational (same expansion guard as `value`).
    pub fn to_rational(&self) -> Result<Rational> {
        Ok(Rational::from(self.value()?))
    }

    /// log10 of the absolute value (float approximation for display).
    pub fn log10_abs(&self) -> f64 {
        self.factors
            .iter()
            .map(|(&p, &e)| (p as f64).log10() * e as f64)
            .sum()
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&p, &e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_value() {
        let f = FactoredInt::from_i64(-2048).unwrap();
        assert_eq!(f.sign(), -1);
        assert_eq!(f.factors().get(&2), Some(&11));
        assert_eq!(f.value().unwrap(), BigInt::from(-2048));
        assert_eq!(f.to_string(), "-2^11");
    }

    #[test]
    fn rejects_nonprime_keys() {
        let mut m = BTreeMap::new();
        m.insert(6u64, 1u64);
        assert!(FactoredInt::new(1, m).is_err());
    }

    #[test]
    fn display_and_mul() {
        let a = FactoredInt::from_i64(12).unwrap();
        let b = FactoredInt::from_i64(10).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.to_string(), "2^3*3*5");
        assert_eq!(c.value().unwrap(), BigInt::from(120));
        assert_eq!(FactoredInt::one().to_string(), "1");
    }

    #[test]
    fn big_disc_never_expands() {
        // p^upsilon with upsilon in the hundreds of millions stays symbolic
        let d = FactoredInt::prime_power(97, 350_468_351).unwrap();
        assert!(d.value().is_err());
        assert!((d.log10_abs() - 350_468_351.0 * 97f64.log10()).abs() < 1.0);
        assert_eq!(d.to_string(), "97^350468351");
    }
}
