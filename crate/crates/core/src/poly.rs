//! Dense polynomial arithmetic generic over the coefficient (division)
//! ring, with a twist hook so one engine serves ordinary, skew and
//! quaternion polynomials.
//!
//! Convention: coefficients ascend, no trailing zeros, zero is the empty
//! vector, and x^k * c = twist(c, k) * x^k. With the identity twist this
//! is the usual central variable.

use crate::fq::{FqElem, FqField};
use crate::quat::Quat;
use num::{BigInt, BigRational, Zero};

pub trait CoeffCtx {
    type C: Clone + PartialEq;

    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn inv(&self, a: &Self::C) -> Option<Self::C>;
    fn twist(&self, c: &Self::C, _k: usize) -> Self::C {
        c.clone()
    }
    fn untwist(&self, c: &Self::C, _k: usize) -> Self::C {
        c.clone()
    }
}

pub fn trim<X: CoeffCtx>(ctx: &X, v: &mut Vec<X::C>) {
    while v.last().map_or(false, |c| ctx.is_zero(c)) {
        v.pop();
    }
}

pub fn deg<X: CoeffCtx>(v: &[X::C]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn add<X: CoeffCtx>(ctx: &X, a: &[X::C], b: &[X::C]) -> Vec<X::C> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = a.get(i);
        let y = b.get(i);
        out.push(match (x, y) {
            (Some(x), Some(y)) => ctx.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(ctx, &mut out);
    out
}

pub fn neg<X: CoeffCtx>(ctx: &X, a: &[X::C]) -> Vec<X::C> {
    a.iter().map(|c| ctx.neg(c)).collect()
}

pub fn sub<X: CoeffCtx>(ctx: &X, a: &[X::C], b: &[X::C]) -> Vec<X::C> {
    add(ctx, a, &neg(ctx, b))
}

/// (sum a_i x^i)(sum b_j x^j) = sum_i sum_j a_i twist(b_j, i) x^(i+j).
pub fn mul<X: CoeffCtx>(ctx: &X, a: &[X::C], b: &[X::C]) -> Vec<X::C> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ctx.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = ctx.mul(x, &ctx.twist(y, i));
            out[i + j] = ctx.add(&out[i + j], &t);
        }
    }
    trim(ctx, &mut out);
    out
}

/// f = g*q + r with deg r < deg g: reduction of f inside the right
/// ideal gR. Returns None when g is zero.
pub fn divrem_right<X: CoeffCtx>(
    ctx: &X,
    f: &[X::C],
    g: &[X::C],
) -> Option<(Vec<X::C>, Vec<X::C>)> {
    let gn = deg::<X>(g)?;
    let glead = &g[gn];
    let glead_inv = ctx.inv(glead).expect("leading coefficient invertible");
    let mut r = f.to_vec();
    let mut q = vec![ctx.zero(); f.len().saturating_sub(gn)];
    while let Some(m) = deg::<X>(&r) {
        if m < gn {
            break;
        }
        let k = m - gn;
        // g * (c x^k) has leading coefficient g_n twist(c, n).
        let c = ctx.untwist(&ctx.mul(&glead_inv, &r[m]), gn);
        for (i, gi) in g.iter().enumerate() {
            let t = ctx.mul(gi, &ctx.twist(&c, i));
            r[i + k] = ctx.add(&r[i + k], &ctx.neg(&t));
        }
        trim(ctx, &mut r);
        q[k] = ctx.add(&q[k], &c);
    }
    trim(ctx, &mut q);
    Some((q, r))
}

/// f = q*g + r with deg r < deg g: reduction of f inside the left
/// ideal Rg. Returns None when g is zero.
pub fn divrem_left<X: CoeffCtx>(
    ctx: &X,
    f: &[X::C],
    g: &[X::C],
) -> Option<(Vec<X::C>, Vec<X::C>)> {
    let gn = deg::<X>(g)?;
    let glead = &g[gn];
    let mut r = f.to_vec();
    let mut q = vec![ctx.zero(); f.len().saturating_sub(gn)];
    while let Some(m) = deg::<X>(&r) {
        if m < gn {
            break;
        }
        let k = m - gn;
        // (c x^k) * g has leading coefficient c twist(g_n, k).
        let c = ctx
            .mul(&r[m], &ctx.inv(&ctx.twist(glead, k)).expect("leading coefficient invertible"));
        for (i, gi) in g.iter().enumerate() {
            let t = ctx.mul(&c, &ctx.twist(gi, k));
            r[i + k] = ctx.add(&r[i + k], &ctx.neg(&t));
        }
        trim(ctx, &mut r);
        q[k] = ctx.add(&q[k], &c);
    }
    trim(ctx, &mut q);
    Some((q, r))
}

// Coefficient contexts for the four polynomial instances.

/// Rational coefficients, central variable.
pub struct RatCtx;

impl CoeffCtx for RatCtx {
    type C = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(1))
    }
    fn is_zero(&self, c: &BigRational) -> bool {
        c.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(self.one() / a)
        }
    }
}

/// Prime field coefficients, central variable.
pub struct FpCtx {
    pub p: u64,
}

impl CoeffCtx for FpCtx {
    type C = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, c: &u64) -> bool {
        *c == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        crate::intring::mod_inv(*a, self.p)
    }
}

/// F_{p^n} coefficients with the Frobenius-power twist: the skew ring.
pub struct FqCtx<'a> {
    pub field: &'a FqField,
}

impl CoeffCtx for FqCtx<'_> {
    type C = FqElem;

    fn zero(&self) -> FqElem {
        self.field.zero()
    }
    fn one(&self) -> FqElem {
        self.field.one()
    }
    fn is_zero(&self, c: &FqElem) -> bool {
        self.field.is_zero(c)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.field.add(a, b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        self.field.neg(a)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.field.mul(a, b)
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        self.field.inv(a)
    }
    fn twist(&self, c: &FqElem, k: usize) -> FqElem {
        self.field.twist_k(c, k)
    }
    fn untwist(&self, c: &FqElem, k: usize) -> FqElem {
        self.field.untwist_k(c, k)
    }
}

/// Rational quaternion coefficients, central variable.
pub struct QuatCtx;

impl CoeffCtx for QuatCtx {
    type C = Quat;

    fn zero(&self) -> Quat {
        Quat::zero()
    }
    fn one(&self) -> Quat {
        Quat::one()
    }
    fn is_zero(&self, c: &Quat) -> bool {
        c.is_zero()
    }
    fn add(&self, a: &Quat, b: &Quat) -> Quat {
        a.add(b)
    }
    fn neg(&self, a: &Quat) -> Quat {
        a.neg()
    }
    fn mul(&self, a: &Quat, b: &Quat) -> Quat {
        a.mul(b)
    }
    fn inv(&self, a: &Quat) -> Option<Quat> {
        a.inv()
    }
}
