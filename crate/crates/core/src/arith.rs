//! Small-integer number theory used throughout: primality, factorization,
//! prime-power detection and multiplicative orders.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Returns `(l, r)` with `n = l^r` and `l` prime.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(l, r)] => Some((*l, *r)),
        _ => None,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Least `s > 0` with `a^s ≡ 1 (mod n)`.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n < 2 || gcd(a % n, n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let a = a % n;
    let mut s = 1;
    let mut x = a;
    while x != 1 {
        x = x * a % n;
        s += 1;
    }
    Ok(s)
}

/// Generic order computation in a cyclic-exponent setting: given the
/// exponent `group_order` of the ambient group and a predicate telling
/// whether `x^e = 1`, descend prime by prime.
pub fn order_by_descent(group_order: u64, mut is_identity_power: impl FnMut(u64) -> bool) -> u64 {
    let mut ord = group_order;
    for (prime, _) in factorize(group_order) {
        while ord % prime == 0 && is_identity_power(ord / prime) {
            ord /= prime;
        }
    }
    ord
}

/// Deterministic 64-bit mixing (splitmix64 finalizer).
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
