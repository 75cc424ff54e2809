//! Arithmetic in small finite fields F_{p^n}, presented as F_p[g]/(m(g))
//! with m the Conway polynomial, so the residue class of g is always a
//! multiplicative generator.

use crate::error::{Error, Result};

/// Supported field sizes and the ascending coefficients of the monic
/// minimal polynomial m(g) of degree n.
const MIN_POLYS: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

/// An element is a fixed-length digit vector: digits[i] is the
/// coefficient of g^i, 0 <= digits[i] < p, length exactly n.
pub type FqElem = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqField {
    pub p: u64,
    pub n: u32,
    /// Twist exponent e of the automorphism a -> a^(p^e) carried by the
    /// skew polynomial ring built over this field.
    pub twist: u32,
    minpoly: Vec<u64>,
}

impl FqField {
    pub fn new(p: u64, n: u32, twist: u32) -> Result<FqField> {
        let minpoly = MIN_POLYS
            .iter()
            .find(|&&(tp, tn, _)| tp == p && tn == n)
            .map(|&(_, _, m)| m.to_vec())
            .ok_or_else(|| {
                Error::InvalidParameters(format!(
                    "no built-in minimal polynomial for F_{{{p}^{n}}}"
                ))
            })?;
        if n < 2 {
            return Err(Error::InvalidParameters(
                "skew coefficient field needs n >= 2".into(),
            ));
        }
        if twist == 0 || twist >= n {
            return Err(Error::InvalidParameters(format!(
                "twist exponent must lie in 1..{n}"
            )));
        }
        Ok(FqField { p, n, twist, minpoly })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn zero(&self) -> FqElem {
        vec![0; self.n as usize]
    }

    pub fn one(&self) -> FqElem {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// The class of g itself.
    pub fn gen(&self) -> FqElem {
        let mut e = self.zero();
        e[1] = 1;
        e
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.iter().all(|&d| d == 0)
    }

    /// Element with the given enumeration index: digits of k in base p,
    /// least significant digit first.
    pub fn from_index(&self, mut k: u64) -> FqElem {
        let mut e = self.zero();
        for d in e.iter_mut() {
            *d = k % self.p;
            k /= self.p;
        }
        e
    }

    pub fn to_index(&self, a: &FqElem) -> u64 {
        let mut k = 0u64;
        for &d in a.iter().rev() {
            k = k * self.p + d;
        }
        k
    }

    pub fn from_base(&self, c: u64) -> FqElem {
        let mut e = self.zero();
        e[0] = c % self.p;
        e
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let n = self.n as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce by the monic minimal polynomial: g^n = -(lower part).
        for i in (n..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.minpoly.iter().enumerate().take(n) {
                let idx = i - n + j;
                prod[idx] = (prod[idx] + c * (self.p - m)) % self.p;
            }
        }
        prod.truncate(n);
        prod
    }

    pub fn pow(&self, a: &FqElem, mut k: u64) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    /// Applies the Frobenius power a -> a^(p^m) with m reduced mod n.
    pub fn frob(&self, a: &FqElem, m: u32) -> FqElem {
        let m = m % self.n;
        if m == 0 {
            return a.clone();
        }
        self.pow(a, self.p.pow(m))
    }

    /// sigma^k where sigma = Frobenius^twist: the coefficient map used
    /// when x^k passes a coefficient in the skew ring.
    pub fn twist_k(&self, a: &FqElem, k: usize) -> FqElem {
        let m = ((self.twist as u64 * k as u64) % self.n as u64) as u32;
        self.frob(a, m)
    }

    /// Inverse of `twist_k`.
    pub fn untwist_k(&self, a: &FqElem, k: usize) -> FqElem {
        let m = ((self.twist as u64 * k as u64) % self.n as u64) as u32;
        self.frob(a, (self.n - m) % self.n)
    }
}
