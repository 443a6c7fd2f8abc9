//! Integer factorization for locating the primes at which a generator
//! set fails to be integral: trial division plus Brent's rho with a
//! Miller-Rabin primality gate. Deterministic.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

fn to_u64(n: &BigUint) -> Option<u64> {
    u64::try_from(n).ok()
}

pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = to_u64(n) {
        return super::poly::is_prime_u64(small);
    }
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // Fixed bases; probabilistic beyond the deterministic u64 range but
    // ample for the sizes this tool meets.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    // n odd composite, not a prime power of a small prime
    let _ = BigUint::one();
    for c in 1u64..64 {
        let cbig = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cbig) % n;
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
    }
    unreachable!("rho failed to split a composite within the constant budget")
}

fn factor_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(&n);
    let q = &n / &d;
    factor_into(d, out);
    factor_into(q, out);
}

/// Prime factorization of a positive integer (1 maps to the empty map).
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u32> {
    assert!(!n.is_zero(), "factor(0)");
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    for q in 2u64..=4096 {
        if n.is_one() {
            return out;
        }
        let qb = BigUint::from(q);
        if (&qb * &qb) > n {
            break;
        }
        while (&n % &qb).is_zero() {
            *out.entry(qb.clone()).or_insert(0) += 1;
            n = &n / &qb;
        }
    }
    factor_into(n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        let f = factor(&BigUint::from(720u32));
        let want: Vec<(u32, u32)> = vec![(2, 4), (3, 2), (5, 1)];
        let got: Vec<(u32, u32)> = f
            .iter()
            .map(|(p, e)| (u32::try_from(p).unwrap(), *e))
            .collect();
        assert_eq!(got, want);
        assert!(factor(&BigUint::from(1u32)).is_empty());
    }

    #[test]
    fn splits_a_larger_semiprime() {
        let n = BigUint::from(1000003u64) * BigUint::from(998244353u64);
        let f = factor(&n);
        assert_eq!(f.len(), 2);
        assert!(f.keys().all(|p| is_prime(p)));
    }
}
