//! Integer and residue-ring helpers shared by the Int and IntMod
//! instances: gcds, modular inverses, unit normalization in Z/n, and
//! division with a nonnegative remainder over Z.

use num::{BigInt, Signed, Zero};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn mod_inv(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

pub fn neg_mod(a: u64, n: u64) -> u64 {
    (n - a % n) % n
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Unit-normalizes a residue: returns (d, u, u_inv) with d = gcd(a, n),
/// u a unit of Z/n, and a*u = d (mod n). The canonical generator of the
/// ideal aZ/n is the divisor d of n.
pub fn unit_normalize_mod(a: u64, n: u64) -> (u64, u64, u64) {
    let a = a % n;
    if a == 0 {
        return (0, 1 % n, 1 % n);
    }
    let d = gcd(a, n);
    let m = n / d;
    debug_assert!(m >= 2, "a < n forces gcd(a, n) < n");
    let u0 = mod_inv((a / d) % m, m).expect("a/d is a unit mod n/d");
    // Lift u0 to a unit mod n: some u0 + k*m is coprime to n.
    let mut u = u0;
    loop {
        if gcd(u, n) == 1 {
            break;
        }
        u += m;
        debug_assert!(u < n + m);
    }
    let u = u % n;
    let u_inv = mod_inv(u, n).expect("u chosen coprime to n");
    debug_assert_eq!(mul_mod(a, u, n), d % n);
    (d % n, u, u_inv)
}

/// Solves b*q = a (mod n) for q, when solvable.
pub fn solve_div_mod(a: u64, b: u64, n: u64) -> Option<u64> {
    let (a, b) = (a % n, b % n);
    if b == 0 {
        return if a == 0 { Some(0) } else { None };
    }
    let g = gcd(b, n);
    if a % g != 0 {
        return None;
    }
    let m = n / g;
    let q = mul_mod((a / g) % m, mod_inv((b / g) % m, m)?, m);
    debug_assert_eq!(mul_mod(b, q, n), a);
    Some(q)
}

/// a = b*q + r with 0 <= r < |b|.
pub fn divrem_nonneg(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    assert!(!b.is_zero());
    let (mut q, mut r) = (a / b, a % b);
    if r.is_negative() {
        if b.is_positive() {
            r += b;
            q -= 1;
        } else {
            r -= b;
            q += 1;
        }
    }
    (q, r)
}
