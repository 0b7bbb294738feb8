//! Primality, factorization and elementary multiplicative functions on
//! machine-sized integers, plus smooth factorization of big integers.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

const SIEVE_LIMIT: u64 = 1_000_000;

/// Primes below 10^6, sieved once.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the 12 fixed bases below decide
/// primality for all n < 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 3 && !is_prime(n) && n % 2 == 1);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Full prime factorization of a u64.
pub fn factor_u64(mut n: u64) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    if n < 2 {
        return out;
    }
    for &p in &[2u64, 3, 5] {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let mut d = m;
        let mut t = 7;
        while d == m && t * t <= m {
            if m % t == 0 {
                d = t;
            }
            t += 2;
            if t > 1000 {
                break;
            }
        }
        if d == m {
            d = pollard_rho(m);
        }
        stack.push(d);
        stack.push(m / d);
    }
    out
}

/// Factor a positive big integer whose prime factors all fit in u64.
///
/// Strips primes below 10^6 by trial division, then finishes the cofactor
/// with rho if it fits a machine word. Values with a larger rough cofactor
/// are rejected; nothing in this crate produces them.
pub fn factor_biguint(n: &BigUint) -> Result<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return Err(Error::ZeroValue);
    }
    let mut rest = n.clone();
    if rest.is_one() {
        return Ok(out);
    }
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if (&pb * &pb) > rest {
            break;
        }
        while (&rest % &pb).is_zero() {
            *out.entry(p).or_insert(0) += 1;
            rest /= &pb;
        }
        if rest.is_one() {
            return Ok(out);
        }
    }
    if rest.is_one() {
        return Ok(out);
    }
    match rest.to_u64() {
        Some(m) => {
            for (p, e) in factor_u64(m) {
                *out.entry(p).or_insert(0) += e;
            }
            Ok(out)
        }
        None => Err(Error::UnfactoredCofactor(rest.to_string())),
    }
}

/// Factor the absolute value of a big integer.
pub fn factor_bigint_abs(n: &BigInt) -> Result<BTreeMap<u64, u64>> {
    factor_biguint(n.magnitude())
}

/// Moebius function.
pub fn moebius(n: u64) -> i64 {
    if n == 0 {
        return 0;
    }
    let f = factor_u64(n);
    if f.values().any(|&e| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (&p, _) in factor_u64(n).iter() {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Smallest primitive root of odd prime p that remains primitive modulo p^2
/// (and hence modulo every power of p).
pub fn primitive_root_all_powers(p: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let phi_factors: Vec<u64> = factor_u64(p - 1).keys().copied().collect();
    let p2 = p * p;
    'cand: for g in 2..p {
        for &q in &phi_factors {
            if pow_mod(g, (p - 1) / q, p) == 1 {
                continue 'cand;
            }
        }
        // primitive mod p; primitive mod p^2 iff g^(p-1) != 1 mod p^2
        if pow_mod(g, p - 1, p2) != 1 {
            return Ok(g);
        }
        // rare: g + p works whenever g alone fails the lift
        let h = g + p;
        if pow_mod(h % p2, p - 1, p2) != 1 {
            return Ok(h);
        }
    }
    unreachable!("every odd prime has a primitive root below p")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_table() {
        let p = small_primes();
        assert_eq!(&p[..10], &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(p.len(), 78498);
    }

    #[test]
    fn miller_rabin_known_values() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn factor_u64_roundtrip() {
        for n in [1u64, 2, 12, 97, 2048, 600_851_475_143, 10_403] {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|(p, e)| p.pow(*e as u32)).product();
            if n >= 2 {
                assert_eq!(back, n);
                assert!(f.keys().all(|&p| is_prime(p)));
            } else {
                assert!(f.is_empty());
            }
        }
    }

    #[test]
    fn factor_biguint_smooth() {
        let n = BigUint::from(3u32).pow(299) * BigUint::from(13u32).pow(7);
        let f = factor_biguint(&n).unwrap();
        assert_eq!(f.get(&3), Some(&299));
        assert_eq!(f.get(&13), Some(&7));
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn moebius_and_phi() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(9), 0);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(16), 8);
        assert_eq!(euler_phi(60), 16);
        assert_eq!(euler_phi(97 * 97), 97 * 96);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root_all_powers(3).unwrap(), 2);
        assert_eq!(primitive_root_all_powers(5).unwrap(), 2);
        assert_eq!(primitive_root_all_powers(7).unwrap(), 3);
        // g must be primitive mod p^2 as well
        for p in [3u64, 5, 7, 11, 13, 97] {
            let g = primitive_root_all_powers(p).unwrap();
            let phi2 = p * (p - 1);
            for q in factor_u64(phi2).keys() {
                assert_ne!(pow_mod(g, phi2 / q, p * p), 1, "p={p} g={g} q={q}");
            }
        }
    }
}
