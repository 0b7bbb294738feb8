//! Products of rational powers of primes, held exactly and compared exactly.
//!
//! Values are kept in a canonical form: a sign and a map prime -> rational
//! exponent (all prime content of any rational coefficient is folded into the
//! map). By unique factorization the canonical form is faithful: two
//! power products are equal as real numbers iff their forms coincide. That is
//! what makes interval comparison a decision procedure - distinct values
//! always separate at some finite precision.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{self, LogInterval};
use super::primes;
use super::{FactoredInt, Rational};
use crate::{Error, Result};

/// Exponent-denominator LCM limit for the integer-clearing comparison path.
const LCM_CLEAR_CAP: u64 = 1_000_000;
/// Materialization limit (bits) for direct big-integer comparison.
const MATERIALIZE_BITS: f64 = 4096.0;
/// Escalation ceiling for interval separation.
const MAX_BITS: u32 = 1 << 20;

/// `sign * prod p^(a_p/b_p)` with exponents in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerProduct {
    sign: i8,
    factors: BTreeMap<u64, Rational>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct {
            sign: 1,
            factors: BTreeMap::new(),
        }
    }

    /// Canonicalize `coefficient * prod p^q` by folding the coefficient's
    /// prime content into the exponent map.
    pub fn new(
        coefficient: &Rational,
        factors: impl IntoIterator<Item = (u64, Rational)>,
    ) -> Result<Self> {
        if coefficient.is_zero() {
            return Err(Error::ZeroValue);
        }
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        for (p, q) in factors {
            if !primes::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            let slot = map.entry(p).or_insert_with(Rational::zero);
            *slot += q;
        }
        for (p, e) in primes::factor_bigint_abs(coefficient.numer())? {
            let slot = map.entry(p).or_insert_with(Rational::zero);
            *slot += super::rat_int(e as i64);
        }
        for (p, e) in primes::factor_bigint_abs(coefficient.denom())? {
            let slot = map.entry(p).or_insert_with(Rational::zero);
            *slot -= super::rat_int(e as i64);
        }
        map.retain(|_, q| !q.is_zero());
        Ok(PowerProduct {
            sign: if coefficient.is_negative() { -1 } else { 1 },
            factors: map,
        })
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        PowerProduct::new(r, [])
    }

    pub fn from_int(n: i64) -> Result<Self> {
        PowerProduct::from_rational(&super::rat_int(n))
    }

    pub fn from_factored(f: &FactoredInt) -> Self {
        let factors = f
            .factors()
            .iter()
            .map(|(&p, &e)| (p, super::rat_int(e as i64)))
            .collect();
        PowerProduct {
            sign: f.sign(),
            factors,
        }
    }

    /// `p^q` for prime p.
    pub fn prime_pow(p: u64, q: Rational) -> Result<Self> {
        if !primes::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut factors = BTreeMap::new();
        if !q.is_zero() {
            factors.insert(p, q);
        }
        Ok(PowerProduct { sign: 1, factors })
    }

    /// The canonical coefficient (always +-1 after normalization).
    pub fn coefficient(&self) -> Rational {
        super::rat_int(self.sign as i64)
    }

    pub fn factors(&self) -> &BTreeMap<u64, Rational> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.factors.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (p, q) in &other.factors {
            let slot = factors.entry(*p).or_insert_with(Rational::zero);
            *slot += q;
        }
        factors.retain(|_, q| !q.is_zero());
        PowerProduct {
            sign: self.sign * other.sign,
            factors,
        }
    }

    pub fn recip(&self) -> Self {
        PowerProduct {
            sign: self.sign,
            factors: self.factors.iter().map(|(p, q)| (*p, -q)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn mul_rational(&self, r: &Rational) -> Result<Self> {
        Ok(self.mul(&PowerProduct::from_rational(r)?))
    }

    /// Raise to an exact rational power. Negative bases admit only integral
    /// exponents.
    pub fn pow(&self, q: &Rational) -> Result<Self> {
        let sign = if self.sign < 0 {
            if !q.denom().is_one() {
                return Err(Error::NegativePow);
            }
            if q.numer().is_odd() {
                -1
            } else {
                1
            }
        } else {
            1
        };
        let mut factors: BTreeMap<u64, Rational> = BTreeMap::new();
        if !q.is_zero() {
            for (p, e) in &self.factors {
                factors.insert(*p, e * q);
            }
        }
        Ok(PowerProduct { sign, factors })
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.sign < 0 {
            return Err(Error::NegativePow);
        }
        self.pow(&super::rat(1, 2))
    }

    /// Exact rational value, if all exponents are integral and the expansion
    /// stays below `max_bits` bits.
    pub fn as_rational(&self, max_bits: f64) -> Option<Rational> {
        let mut bits = 0.0;
        for (&p, q) in &self.factors {
            if !q.denom().is_one() {
                return None;
            }
            let e = q.numer().abs().to_f64()?;
            bits += (p as f64).log2() * e;
            if bits > max_bits {
                return None;
            }
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, q) in &self.factors {
            let e = q.numer().abs().to_u32()?;
            if q.is_negative() {
                den *= BigInt::from(p).pow(e);
            } else {
                num *= BigInt::from(p).pow(e);
            }
        }
        if self.sign < 0 {
            num = -num;
        }
        Some(Rational::new(num, den))
    }

    /// Certified interval around `ln |self|`; requires a positive value.
    pub fn ln_interval(&self, bits: u32) -> Result<LogInterval> {
        if self.sign < 0 {
            return Err(Error::NonPositiveValue(self.to_string()));
        }
        Ok(log_sum_interval(
            &self
                .factors
                .iter()
                .map(|(p, q)| (*p, q.clone()))
                .collect::<Vec<_>>(),
            bits,
        ))
    }

    /// log10 as f64 (display only).
    pub fn log10_f64(&self) -> Result<f64> {
        let ln = self.ln_interval(96)?;
        let ln10 = interval::ln_u64(10, 96);
        Ok(ln.mul(&ln10.recip()).mid_f64())
    }

    /// f64 approximation (display only; saturates on huge magnitudes).
    pub fn to_f64(&self) -> Result<f64> {
        if let Some(r) = self.as_rational(512.0) {
            return Ok(r.to_f64().unwrap_or(f64::NAN));
        }
        let ln = self.ln_interval(96)?;
        Ok(ln.mid_f64().exp() * self.sign as f64)
    }

    /// Decimal rendering with `sig` significant digits.
    ///
    /// Moderate rational values are rendered exactly (trailing zeros trimmed
    /// when the expansion terminates); everything else goes through interval
    /// escalation, which terminates because irrational power products are
    /// never equal to a rounding boundary.
    pub fn decimal_string(&self, sig: usize) -> Result<String> {
        assert!(sig >= 1);
        let prefix = if self.sign < 0 { "-" } else { "" };
        let magnitude = PowerProduct {
            sign: 1,
            factors: self.factors.clone(),
        };
        if let Some(r) = magnitude.as_rational(2048.0) {
            return Ok(format!("{prefix}{}", render_rational_decimal(&r, sig)));
        }
        let mut bits: u32 = 128;
        loop {
            let ln = magnitude.ln_interval(bits)?;
            let ln10 = interval::ln_u64(10, bits + 8);
            let mut e0 = ln.mul(&ln10.recip()).mid_f64().floor() as i64;
            let mut separated = true;
            for _ in 0..4 {
                let shift = super::rat_int(e0 - (sig as i64 - 1));
                let w = ln.sub(&ln10.scale(&shift));
                let m_iv = interval::exp_interval(&w, bits);
                let m_lo = round_half_up(m_iv.lo());
                let m_hi = round_half_up(m_iv.hi());
                if m_lo != m_hi {
                    separated = false;
                    break;
                }
                let mut m = m_lo;
                let low = BigInt::from(10u32).pow(sig as u32 - 1);
                let high = BigInt::from(10u32).pow(sig as u32);
                if m >= high {
                    m = low.clone();
                    e0 += 1;
                }
                if m < low {
                    e0 -= 1;
                    continue;
                }
                return Ok(format!(
                    "{prefix}{}",
                    format_digits(&m.to_string(), e0)
                ));
            }
            let _ = separated;
            bits = bits.saturating_mul(2);
            if bits > (1 << 15) {
                return Err(Error::PrecisionExhausted { bits });
            }
        }
    }

    /// Exact three-way comparison; see [`ppow_compare`].
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        ppow_compare(self, other)
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, q) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if q.is_one() {
                write!(f, "{p}")?;
            } else if q.denom().is_one() {
                write!(f, "{p}^{}", q.numer())?;
            } else {
                write!(f, "{p}^({q})")?;
            }
        }
        Ok(())
    }
}

/// Exact ordering of two positive power products.
///
/// Equal canonical forms decide equality outright. Otherwise the ratio is
/// formed and, when every exponent denominator clears within the LCM cap, the
/// comparison reduces to two factored integers. Ratios whose exponents cannot
/// be cleared are separated by certified log intervals with escalating
/// precision; this terminates because the ratio is provably not 1.
pub fn ppow_compare(a: &PowerProduct, b: &PowerProduct) -> Result<Ordering> {
    if !a.is_positive() {
        return Err(Error::NonPositiveValue(a.to_string()));
    }
    if !b.is_positive() {
        return Err(Error::NonPositiveValue(b.to_string()));
    }
    if a == b {
        return Ok(Ordering::Equal);
    }
    let ratio = a.div(b);
    debug_assert!(!ratio.factors.is_empty());

    let mut lcm = BigUint::one();
    for q in ratio.factors.values() {
        lcm = lcm.lcm(q.denom().magnitude());
    }
    if lcm <= BigUint::from(LCM_CLEAR_CAP) {
        // ratio^lcm has integer exponents; compare numerator vs denominator
        let lcm_int = BigInt::from(lcm);
        let mut num: BTreeMap<u64, BigUint> = BTreeMap::new();
        let mut den: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (&p, q) in &ratio.factors {
            let cleared = q * Rational::from(lcm_int.clone());
            debug_assert!(cleared.denom().is_one());
            let e = cleared.numer();
            if e.is_positive() {
                num.insert(p, e.magnitude().clone());
            } else {
                den.insert(p, e.magnitude().clone());
            }
        }
        compare_factored_products(&num, &den)
    } else {
        let terms: Vec<(u64, Rational)> =
            ratio.factors.iter().map(|(p, q)| (*p, q.clone())).collect();
        interval_sign(&terms)
    }
}

/// Compare `prod p^a` vs `prod p^b` (positive integers in factored form).
fn compare_factored_products(
    a: &BTreeMap<u64, BigUint>,
    b: &BTreeMap<u64, BigUint>,
) -> Result<Ordering> {
    // cancel shared primes
    let mut left: BTreeMap<u64, BigUint> = BTreeMap::new();
    let mut right: BTreeMap<u64, BigUint> = BTreeMap::new();
    for (&p, ea) in a {
        match b.get(&p) {
            Some(eb) if eb >= ea => {
                let d = eb - ea;
                if !d.is_zero() {
                    right.insert(p, d);
                }
            }
            Some(eb) => {
                left.insert(p, ea - eb);
            }
            None => {
                left.insert(p, ea.clone());
            }
        }
    }
    for (&p, eb) in b {
        if !a.contains_key(&p) {
            right.insert(p, eb.clone());
        }
    }
    match (left.is_empty(), right.is_empty()) {
        (true, true) => return Ok(Ordering::Equal),
        (true, false) => return Ok(Ordering::Less),
        (false, true) => return Ok(Ordering::Greater),
        _ => {}
    }
    let bits = |m: &BTreeMap<u64, BigUint>| -> f64 {
        m.iter()
            .map(|(&p, e)| (p as f64).log2() * e.to_f64().unwrap_or(f64::INFINITY))
            .sum()
    };
    if bits(&left) <= MATERIALIZE_BITS && bits(&right) <= MATERIALIZE_BITS {
        let expand = |m: &BTreeMap<u64, BigUint>| -> BigUint {
            let mut v = BigUint::one();
            for (&p, e) in m {
                v *= BigUint::from(p).pow(e.to_u32().expect("capped exponent"));
            }
            v
        };
        return Ok(expand(&left).cmp(&expand(&right)));
    }
    // disjoint supports and not both empty: values differ by unique
    // factorization, so interval separation terminates
    let mut terms: Vec<(u64, Rational)> = Vec::new();
    for (&p, e) in &left {
        terms.push((p, Rational::from(BigInt::from(e.clone()))));
    }
    for (&p, e) in &right {
        terms.push((p, -Rational::from(BigInt::from(e.clone()))));
    }
    interval_sign(&terms)
}

/// Certified interval for `sum q_p ln p` at 2^-bits overall width.
fn log_sum_interval(terms: &[(u64, Rational)], bits: u32) -> LogInterval {
    let k = terms.len().max(1) as u64;
    let slack = 64 - k.leading_zeros(); // ceil log2(k) + 1
    let mut acc = LogInterval::zero();
    for (p, q) in terms {
        let weight_bits = {
            let w = q.abs().ceil().to_integer();
            w.bits() as u32 + 1
        };
        let term = interval::ln_u64(*p, bits + slack + weight_bits).scale(q);
        acc = acc.add(&term);
    }
    acc
}

/// Sign of `sum q_p ln p`, escalating precision until the interval separates.
fn interval_sign(terms: &[(u64, Rational)]) -> Result<Ordering> {
    if terms.is_empty() {
        return Ok(Ordering::Equal);
    }
    let mut bits: u32 = 64;
    loop {
        let iv = log_sum_interval(terms, bits);
        match iv.sign() {
            Some(Ordering::Greater) => return Ok(Ordering::Greater),
            Some(Ordering::Less) => return Ok(Ordering::Less),
            Some(Ordering::Equal) => return Ok(Ordering::Equal),
            None => {
                bits = bits.saturating_mul(2);
                if bits > MAX_BITS {
                    return Err(Error::PrecisionExhausted { bits });
                }
            }
        }
    }
}

fn round_half_up(r: &Rational) -> BigInt {
    (r + super::rat(1, 2)).floor().to_integer()
}

/// Exact decimal rendering of a positive rational with `sig` significant
/// digits; trailing zeros trimmed when the rendering is exact.
fn render_rational_decimal(r: &Rational, sig: usize) -> String {
    debug_assert!(r.is_positive());
    let mut e: i64 = {
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        ((nb - db) as f64 * std::f64::consts::LOG10_2).floor() as i64
    };
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from(BigInt::from(10u32).pow(k as u32))
        } else {
            Rational::new(BigInt::one(), BigInt::from(10u32).pow((-k) as u32))
        }
    };
    while pow10(e) > *r {
        e -= 1;
    }
    while pow10(e + 1) <= *r {
        e += 1;
    }
    let scale = pow10(sig as i64 - 1 - e);
    let scaled = r * &scale;
    let mut m = round_half_up(&scaled);
    let high = BigInt::from(10u32).pow(sig as u32);
    if m == high {
        m = BigInt::from(10u32).pow(sig as u32 - 1);
        e += 1;
    }
    let exact = Rational::from(m.clone()) == r * pow10(sig as i64 - 1 - e);
    let mut digits = m.to_string();
    if exact {
        while digits.len() > 1 && digits.ends_with('0') {
            digits.pop();
        }
    }
    format_digits(&digits, e)
}

/// Lay out significant digits with decimal exponent `e` (value =
/// 0.digits * 10^(e+1), i.e. first digit has weight 10^e).
fn format_digits(digits: &str, e: i64) -> String {
    let len = digits.len() as i64;
    if (-4..=20).contains(&e) {
        if e >= 0 {
            if e + 1 >= len {
                format!("{digits}{}", "0".repeat((e + 1 - len) as usize))
            } else {
                format!("{}.{}", &digits[..(e + 1) as usize], &digits[(e + 1) as usize..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
        }
    } else if len == 1 {
        format!("{digits}e{e}")
    } else {
        format!("{}.{}e{e}", &digits[..1], &digits[1..])
    }
}
