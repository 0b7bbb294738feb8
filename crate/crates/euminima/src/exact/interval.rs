//! Certified interval bounds on logarithms and exponentials of positive
//! rationals.
//!
//! Endpoints are exact rationals, so an interval is a proof: the true value
//! lies in `[lo, hi]`. Widening the working precision shrinks `hi - lo`.
//! Comparisons are only ever decided from disjoint intervals; callers that
//! cannot separate operands escalate precision or fall back to exact
//! power-product arithmetic.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Rational lower/upper bounds on the natural log of a positive value
/// (and, internally, on any derived real quantity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogInterval {
    lo: Rational,
    hi: Rational,
}

impl LogInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        LogInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        LogInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn zero() -> Self {
        LogInterval::point(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Self) -> Self {
        LogInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        LogInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Self {
        LogInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    /// Scale by an exact rational (sign-aware).
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_negative() {
            LogInterval::new(&self.hi * c, &self.lo * c)
        } else {
            LogInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Interval product (used for log-base conversion).
    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        LogInterval::new(lo, hi)
    }

    /// Reciprocal of an interval that excludes zero.
    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "reciprocal of interval through zero");
        LogInterval::new(self.hi.recip(), self.lo.recip())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every value in the interval, if uniform.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Midpoint as f64 (display only; never used for verdicts).
    pub fn mid_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / super::rat_int(2))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }
}

/// Absolute error target 2^-bits.
pub(crate) fn eps_for_bits(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2u32).pow(bits))
}

/// `2 * atanh(y)` for exact rational `0 <= y <= 1/2`, with tail bound `eps`.
///
/// Terms are summed exactly; the geometric tail after the last added term is
/// the interval width.
fn atanh_double(y: &Rational, eps: &Rational) -> LogInterval {
    debug_assert!(!y.is_negative() && y <= &super::rat(1, 2));
    if y.is_zero() {
        return LogInterval::zero();
    }
    let y2 = y * y;
    let geom = &y2 / (Rational::one() - &y2);
    let mut pow = y.clone(); // y^(2k+1)
    let mut k: u64 = 0;
    let mut sum = Rational::zero();
    loop {
        let term = Rational::from(BigInt::from(2)) * &pow / super::rat_int((2 * k + 1) as i64);
        sum += &term;
        let tail = &term * &geom;
        if &tail <= eps {
            return LogInterval::new(sum.clone(), sum + tail);
        }
        pow *= &y2;
        k += 1;
    }
}

/// Certified `ln n` for a positive big integer, width <= eps.
pub(crate) fn ln_biguint(n: &BigUint, eps: &Rational) -> LogInterval {
    assert!(!n.is_zero());
    if n.is_one() {
        return LogInterval::zero();
    }
    let s = n.bits() - 1; // n in [2^s, 2^(s+1))
    let two_s = BigUint::one() << s;
    // y = (n - 2^s)/(n + 2^s) in [0, 1/3]
    let y = Rational::new(
        BigInt::from(n - &two_s),
        BigInt::from(n + &two_s),
    );
    if s == 0 {
        return atanh_double(&y, eps);
    }
    let half = eps / super::rat_int(2);
    let ln2 = ln2_interval(&(&half / super::rat_int(s as i64)));
    let frac = atanh_double(&y, &half);
    ln2.scale(&super::rat_int(s as i64)).add(&frac)
}

/// Certified `ln 2 = 2 atanh(1/3)`.
fn ln2_interval(eps: &Rational) -> LogInterval {
    atanh_double(&super::rat(1, 3), eps)
}

thread_local! {
    static LN_CACHE: RefCell<HashMap<(u64, u32), LogInterval>> = RefCell::new(HashMap::new());
}

/// Cached `ln x` for machine-sized positive x at 2^-bits precision.
pub(crate) fn ln_u64(x: u64, bits: u32) -> LogInterval {
    assert!(x > 0);
    LN_CACHE.with(|c| {
        if let Some(iv) = c.borrow().get(&(x, bits)) {
            return iv.clone();
        }
        let iv = ln_biguint(&BigUint::from(x), &eps_for_bits(bits));
        c.borrow_mut().insert((x, bits), iv.clone());
        iv
    })
}

/// Certified `ln x` for a positive rational.
pub(crate) fn ln_rational(x: &Rational, eps: &Rational) -> LogInterval {
    assert!(x.is_positive());
    let half = eps / super::rat_int(2);
    let num = ln_biguint(x.numer().magnitude(), &half);
    let den = ln_biguint(x.denom().magnitude(), &half);
    num.sub(&den)
}

/// Certified `e^z` at a rational point with |z| <= 3/2, tail bound eps.
fn exp_point(z: &Rational, eps: &Rational) -> LogInterval {
    let abs_z = z.abs();
    debug_assert!(abs_z <= super::rat(3, 2));
    let mut term = Rational::one();
    let mut abs_term = Rational::one();
    let mut sum = Rational::one();
    let mut m: u64 = 0;
    loop {
        m += 1;
        term = term * z / super::rat_int(m as i64);
        abs_term = abs_term * &abs_z / super::rat_int(m as i64);
        sum += &term;
        // remaining tail: |z|^(m+1)/(m+1)! * 1/(1 - |z|/(m+2)), valid once m+2 > 2|z|
        if super::rat_int((m + 2) as i64) > super::rat_int(2) * &abs_z {
            let head = &abs_term * &abs_z / super::rat_int((m + 1) as i64);
            let tail = &head / (Rational::one() - &abs_z / super::rat_int((m + 2) as i64));
            if &tail <= eps {
                return LogInterval::new(&sum - &tail, &sum + &tail);
            }
        }
    }
}

/// Certified `e^w` over an interval `w`, via `e^w = 2^k e^(w - k ln 2)`.
pub(crate) fn exp_interval(w: &LogInterval, bits: u32) -> LogInterval {
    let eps = eps_for_bits(bits);
    let mid = w.mid_f64();
    let k = (mid / std::f64::consts::LN_2).round() as i64;
    let ln2 = ln2_interval(&(&eps / super::rat_int(16)));
    let shift = ln2.scale(&super::rat_int(k));
    let z = w.sub(&shift);
    debug_assert!(z.lo().abs() <= super::rat(3, 2) && z.hi().abs() <= super::rat(3, 2));
    let lo = exp_point(z.lo(), &eps).lo().clone();
    let hi = exp_point(z.hi(), &eps).hi().clone();
    let factor = if k >= 0 {
        Rational::from(BigInt::one() << k as u64)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-k) as u64)
    };
    LogInterval::new(lo, hi).scale(&factor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_brackets(iv: &LogInterval, truth: f64, max_width: f64) {
        assert!(iv.lo_f64() <= truth + 1e-15, "lo {} > {}", iv.lo_f64(), truth);
        assert!(iv.hi_f64() >= truth - 1e-15, "hi {} < {}", iv.hi_f64(), truth);
        assert!(iv.width().to_f64().unwrap() <= max_width);
    }

    #[test]
    fn ln_small_integers() {
        for (n, truth) in [(2u64, std::f64::consts::LN_2), (3, 1.0986122886681098), (10, std::f64::consts::LN_10)] {
            let iv = ln_u64(n, 80);
            assert_brackets(&iv, truth, 1e-24);
        }
    }

    #[test]
    fn widening_precision_shrinks_width() {
        let coarse = ln_biguint(&BigUint::from(97u32), &eps_for_bits(20));
        let fine = ln_biguint(&BigUint::from(97u32), &eps_for_bits(200));
        assert!(fine.width() < coarse.width());
        assert!(*fine.lo() >= coarse.lo() - coarse.width());
        assert!(fine.width() <= eps_for_bits(200));
    }

    #[test]
    fn ln_rational_signs() {
        let iv = ln_rational(&super::super::rat(1, 2), &eps_for_bits(60));
        assert_brackets(&iv, -std::f64::consts::LN_2, 1e-17);
        assert_eq!(iv.sign(), Some(Ordering::Less));
        let one = ln_rational(&super::super::rat_int(1), &eps_for_bits(60));
        assert_eq!(one.sign(), Some(Ordering::Equal));
    }

    #[test]
    fn exp_brackets_e() {
        let one = LogInterval::point(super::super::rat_int(1));
        let iv = exp_interval(&one, 80);
        assert_brackets(&iv, std::f64::consts::E, 1e-20);
    }

    #[test]
    fn exp_of_large_argument() {
        // e^(ln 10 * 12) = 10^12
        let ln10 = ln_u64(10, 120);
        let w = ln10.scale(&super::super::rat_int(12));
        let iv = exp_interval(&w, 120);
        assert_brackets(&iv, 1e12, 1e-6);
    }

    #[test]
    fn interval_arithmetic() {
        let a = LogInterval::new(super::super::rat_int(1), super::super::rat_int(2));
        let b = LogInterval::new(super::super::rat_int(-1), super::super::rat_int(1));
        assert_eq!(a.add(&b).lo(), &super::super::rat_int(0));
        assert_eq!(a.mul(&b).lo(), &super::super::rat_int(-2));
        assert_eq!(a.scale(&super::super::rat_int(-3)).hi(), &super::super::rat_int(-3));
        assert!(b.contains_zero());
        assert_eq!(b.sign(), None);
    }
}
