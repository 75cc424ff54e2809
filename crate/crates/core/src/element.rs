//! Runtime-typed ring elements. Every element carries its ring handle;
//! payloads are kept in canonical form so equality is plain payload
//! equality.
//!
//! Canonical forms: Z as arbitrary-precision integers; Z/n as
//! representatives in [0, n); all polynomial payloads as ascending
//! coefficient vectors with no trailing zeros (zero = empty vector).

use crate::error::{Error, Result};
use crate::fq::FqElem;
use crate::intring;
use crate::poly::{self, CoeffCtx, FpCtx, FqCtx, QuatCtx, RatCtx};
use crate::quat::Quat;
use crate::ring::{Ring, RingSpec};
use num::bigint::BigInt;
use num::{BigRational, BigUint, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Payload {
    Int(BigInt),
    Mod(u64),
    PolyRat(Vec<BigRational>),
    PolyFp(Vec<u64>),
    Skew(Vec<FqElem>),
    Quat(Vec<Quat>),
}

#[derive(Clone, Debug)]
pub struct Element {
    pub(crate) ring: Ring,
    pub(crate) payload: Payload,
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        self.ring == other.ring && self.payload == other.payload
    }
}

impl Eq for Element {}

impl Element {
    pub(crate) fn new(ring: Ring, payload: Payload) -> Element {
        Element { ring, payload }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn zero(ring: &Ring) -> Element {
        let payload = match ring.spec() {
            RingSpec::Int => Payload::Int(BigInt::zero()),
            RingSpec::IntMod { .. } => Payload::Mod(0),
            RingSpec::PolyRat => Payload::PolyRat(vec![]),
            RingSpec::PolyFp { .. } => Payload::PolyFp(vec![]),
            RingSpec::SkewPolyFq { .. } => Payload::Skew(vec![]),
            RingSpec::QuatPoly => Payload::Quat(vec![]),
        };
        Element::new(ring.clone(), payload)
    }

    pub fn one(ring: &Ring) -> Element {
        Element::from_bigint(ring, &BigInt::one())
    }

    /// Image of an integer under the unique map Z -> R.
    pub fn from_bigint(ring: &Ring, v: &BigInt) -> Element {
        let payload = match ring.spec() {
            RingSpec::Int => Payload::Int(v.clone()),
            RingSpec::IntMod { n } => {
                let rep = v.mod_floor_u64(*n);
                Payload::Mod(rep)
            }
            RingSpec::PolyRat => {
                if v.is_zero() {
                    Payload::PolyRat(vec![])
                } else {
                    Payload::PolyRat(vec![BigRational::from_integer(v.clone())])
                }
            }
            RingSpec::PolyFp { p } => {
                let rep = v.mod_floor_u64(*p);
                if rep == 0 {
                    Payload::PolyFp(vec![])
                } else {
                    Payload::PolyFp(vec![rep])
                }
            }
            RingSpec::SkewPolyFq { .. } => {
                let f = ring.fq();
                let rep = v.mod_floor_u64(f.p);
                if rep == 0 {
                    Payload::Skew(vec![])
                } else {
                    Payload::Skew(vec![f.from_base(rep)])
                }
            }
            RingSpec::QuatPoly => {
                if v.is_zero() {
                    Payload::Quat(vec![])
                } else {
                    Payload::Quat(vec![Quat::scalar(BigRational::from_integer(v.clone()))])
                }
            }
        };
        Element::new(ring.clone(), payload)
    }

    pub fn from_i64(ring: &Ring, v: i64) -> Element {
        Element::from_bigint(ring, &BigInt::from(v))
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Int(a) => a.is_zero(),
            Payload::Mod(a) => *a == 0,
            Payload::PolyRat(a) => a.is_empty(),
            Payload::PolyFp(a) => a.is_empty(),
            Payload::Skew(a) => a.is_empty(),
            Payload::Quat(a) => a.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Element::one(&self.ring)
    }

    fn check_ring(&self, other: &Element) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    fn modulus(&self) -> u64 {
        match self.ring.spec() {
            RingSpec::IntMod { n } => *n,
            _ => unreachable!(),
        }
    }

    fn prime(&self) -> u64 {
        match self.ring.spec() {
            RingSpec::PolyFp { p } => *p,
            _ => unreachable!(),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_ring(other)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(a + b),
            (Payload::Mod(a), Payload::Mod(b)) => {
                Payload::Mod(intring::add_mod(*a, *b, self.modulus()))
            }
            (Payload::PolyRat(a), Payload::PolyRat(b)) => Payload::PolyRat(poly::add(&RatCtx, a, b)),
            (Payload::PolyFp(a), Payload::PolyFp(b)) => {
                Payload::PolyFp(poly::add(&FpCtx { p: self.prime() }, a, b))
            }
            (Payload::Skew(a), Payload::Skew(b)) => {
                Payload::Skew(poly::add(&FqCtx { field: self.ring.fq() }, a, b))
            }
            (Payload::Quat(a), Payload::Quat(b)) => Payload::Quat(poly::add(&QuatCtx, a, b)),
            _ => unreachable!("same ring implies same payload kind"),
        };
        Ok(Element::new(self.ring.clone(), payload))
    }

    pub fn neg(&self) -> Element {
        let payload = match &self.payload {
            Payload::Int(a) => Payload::Int(-a),
            Payload::Mod(a) => Payload::Mod(intring::neg_mod(*a, self.modulus())),
            Payload::PolyRat(a) => Payload::PolyRat(poly::neg(&RatCtx, a)),
            Payload::PolyFp(a) => Payload::PolyFp(poly::neg(&FpCtx { p: self.prime() }, a)),
            Payload::Skew(a) => Payload::Skew(poly::neg(&FqCtx { field: self.ring.fq() }, a)),
            Payload::Quat(a) => Payload::Quat(poly::neg(&QuatCtx, a)),
        };
        Element::new(self.ring.clone(), payload)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_ring(other)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(a * b),
            (Payload::Mod(a), Payload::Mod(b)) => {
                Payload::Mod(intring::mul_mod(*a, *b, self.modulus()))
            }
            (Payload::PolyRat(a), Payload::PolyRat(b)) => Payload::PolyRat(poly::mul(&RatCtx, a, b)),
            (Payload::PolyFp(a), Payload::PolyFp(b)) => {
                Payload::PolyFp(poly::mul(&FpCtx { p: self.prime() }, a, b))
            }
            (Payload::Skew(a), Payload::Skew(b)) => {
                Payload::Skew(poly::mul(&FqCtx { field: self.ring.fq() }, a, b))
            }
            (Payload::Quat(a), Payload::Quat(b)) => Payload::Quat(poly::mul(&QuatCtx, a, b)),
            _ => unreachable!("same ring implies same payload kind"),
        };
        Ok(Element::new(self.ring.clone(), payload))
    }

    pub fn pow(&self, mut k: u64) -> Element {
        let mut base = self.clone();
        let mut acc = Element::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            base = base.mul(&base).expect("same ring");
            k >>= 1;
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        match &self.payload {
            Payload::Int(a) => a.abs().is_one(),
            Payload::Mod(a) => intring::gcd(*a, self.modulus()) == 1,
            Payload::PolyRat(a) => a.len() == 1,
            Payload::PolyFp(a) => a.len() == 1,
            Payload::Skew(a) => a.len() == 1,
            Payload::Quat(a) => a.len() == 1,
        }
    }

    pub fn unit_inverse(&self) -> Result<Element> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let payload = match &self.payload {
            Payload::Int(a) => Payload::Int(a.clone()),
            Payload::Mod(a) => {
                Payload::Mod(intring::mod_inv(*a, self.modulus()).expect("unit checked"))
            }
            Payload::PolyRat(a) => Payload::PolyRat(vec![RatCtx.inv(&a[0]).expect("unit checked")]),
            Payload::PolyFp(a) => {
                Payload::PolyFp(vec![intring::mod_inv(a[0], self.prime()).expect("unit checked")])
            }
            Payload::Skew(a) => {
                Payload::Skew(vec![self.ring.fq().inv(&a[0]).expect("unit checked")])
            }
            Payload::Quat(a) => Payload::Quat(vec![a[0].inv().expect("unit checked")]),
        };
        Ok(Element::new(self.ring.clone(), payload))
    }

    /// Euclidean size: |a| over Z, the representative over Z/n,
    /// degree + 1 for polynomials. None exactly at zero.
    pub fn size(&self) -> Option<BigUint> {
        match &self.payload {
            Payload::Int(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(a.magnitude().clone())
                }
            }
            Payload::Mod(a) => {
                if *a == 0 {
                    None
                } else {
                    Some(BigUint::from(*a))
                }
            }
            Payload::PolyRat(a) => poly_size(a.len()),
            Payload::PolyFp(a) => poly_size(a.len()),
            Payload::Skew(a) => poly_size(a.len()),
            Payload::Quat(a) => poly_size(a.len()),
        }
    }

    /// self = d*q + r with r strictly smaller than d (reduction in the
    /// right ideal dR).
    pub fn divrem_right(&self, d: &Element) -> Result<(Element, Element)> {
        self.check_ring(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = match (&self.payload, &d.payload) {
            (Payload::Int(a), Payload::Int(b)) => {
                let (q, r) = intring::divrem_nonneg(a, b);
                (Payload::Int(q), Payload::Int(r))
            }
            (Payload::Mod(a), Payload::Mod(b)) => (Payload::Mod(a / b), Payload::Mod(a % b)),
            (Payload::PolyRat(a), Payload::PolyRat(b)) => {
                let (q, r) = poly::divrem_right(&RatCtx, a, b).expect("nonzero divisor");
                (Payload::PolyRat(q), Payload::PolyRat(r))
            }
            (Payload::PolyFp(a), Payload::PolyFp(b)) => {
                let ctx = FpCtx { p: self.prime() };
                let (q, r) = poly::divrem_right(&ctx, a, b).expect("nonzero divisor");
                (Payload::PolyFp(q), Payload::PolyFp(r))
            }
            (Payload::Skew(a), Payload::Skew(b)) => {
                let ctx = FqCtx { field: self.ring.fq() };
                let (q, r) = poly::divrem_right(&ctx, a, b).expect("nonzero divisor");
                (Payload::Skew(q), Payload::Skew(r))
            }
            (Payload::Quat(a), Payload::Quat(b)) => {
                let (q, r) = poly::divrem_right(&QuatCtx, a, b).expect("nonzero divisor");
                (Payload::Quat(q), Payload::Quat(r))
            }
            _ => unreachable!("same ring implies same payload kind"),
        };
        Ok((Element::new(self.ring.clone(), q), Element::new(self.ring.clone(), r)))
    }

    /// self = q*d + r with r strictly smaller than d (reduction in the
    /// left ideal Rd).
    pub fn divrem_left(&self, d: &Element) -> Result<(Element, Element)> {
        if self.ring.caps().commutative {
            return self.divrem_right(d);
        }
        self.check_ring(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = match (&self.payload, &d.payload) {
            (Payload::Skew(a), Payload::Skew(b)) => {
                let ctx = FqCtx { field: self.ring.fq() };
                let (q, r) = poly::divrem_left(&ctx, a, b).expect("nonzero divisor");
                (Payload::Skew(q), Payload::Skew(r))
            }
            (Payload::Quat(a), Payload::Quat(b)) => {
                let (q, r) = poly::divrem_left(&QuatCtx, a, b).expect("nonzero divisor");
                (Payload::Quat(q), Payload::Quat(r))
            }
            _ => unreachable!("noncommutative payloads are polynomial"),
        };
        Ok((Element::new(self.ring.clone(), q), Element::new(self.ring.clone(), r)))
    }

    /// Exact quotient q with self = d*q, when self lies in dR.
    pub fn right_divide(&self, d: &Element) -> Result<Option<Element>> {
        self.check_ring(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (&self.payload, &d.payload) {
            (Payload::Int(a), Payload::Int(b)) => {
                if (a % b).is_zero() {
                    Ok(Some(Element::new(self.ring.clone(), Payload::Int(a / b))))
                } else {
                    Ok(None)
                }
            }
            (Payload::Mod(a), Payload::Mod(b)) => Ok(intring::solve_div_mod(*a, *b, self.modulus())
                .map(|q| Element::new(self.ring.clone(), Payload::Mod(q)))),
            _ => {
                let (q, r) = self.divrem_right(d)?;
                Ok(if r.is_zero() { Some(q) } else { None })
            }
        }
    }

    /// Exact quotient q with self = q*d, when self lies in Rd.
    pub fn left_divide(&self, d: &Element) -> Result<Option<Element>> {
        if self.ring.caps().commutative {
            return self.right_divide(d);
        }
        let (q, r) = self.divrem_left(d)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Strips the unit part on the right: returns (c, u, u_inv) with
    /// c = self * u canonical (nonnegative over Z, the divisor gcd(a, n)
    /// over Z/n, monic for polynomials) and u a unit. Right
    /// multiplication preserves the right ideal self*R.
    pub fn unit_normalize_right(&self) -> (Element, Element, Element) {
        if self.is_zero() {
            return (self.clone(), Element::one(&self.ring), Element::one(&self.ring));
        }
        let one = Element::one(&self.ring);
        match &self.payload {
            Payload::Int(a) => {
                if a.is_negative() {
                    let m = Element::from_i64(&self.ring, -1);
                    (self.neg(), m.clone(), m)
                } else {
                    (self.clone(), one.clone(), one)
                }
            }
            Payload::Mod(a) => {
                let (d, u, u_inv) = intring::unit_normalize_mod(*a, self.modulus());
                (
                    Element::new(self.ring.clone(), Payload::Mod(d)),
                    Element::new(self.ring.clone(), Payload::Mod(u)),
                    Element::new(self.ring.clone(), Payload::Mod(u_inv)),
                )
            }
            Payload::PolyRat(a) => {
                let u = RatCtx.inv(a.last().unwrap()).expect("nonzero leading coefficient");
                let ue = Element::new(self.ring.clone(), Payload::PolyRat(vec![u]));
                let c = self.mul(&ue).expect("same ring");
                let ui = ue.unit_inverse().expect("constant");
                (c, ue, ui)
            }
            Payload::PolyFp(a) => {
                let u = intring::mod_inv(*a.last().unwrap(), self.prime()).expect("nonzero");
                let ue = Element::new(self.ring.clone(), Payload::PolyFp(vec![u]));
                let c = self.mul(&ue).expect("same ring");
                let ui = ue.unit_inverse().expect("constant");
                (c, ue, ui)
            }
            Payload::Skew(a) => {
                let f = self.ring.fq();
                let lead_inv = f.inv(a.last().unwrap()).expect("nonzero");
                // a * (c) has leading coefficient lead * sigma^deg(c).
                let u = f.untwist_k(&lead_inv, a.len() - 1);
                let ue = Element::new(self.ring.clone(), Payload::Skew(vec![u]));
                let c = self.mul(&ue).expect("same ring");
                let ui = ue.unit_inverse().expect("constant");
                (c, ue, ui)
            }
            Payload::Quat(a) => {
                let u = a.last().unwrap().inv().expect("nonzero");
                let ue = Element::new(self.ring.clone(), Payload::Quat(vec![u]));
                let c = self.mul(&ue).expect("same ring");
                let ui = ue.unit_inverse().expect("constant");
                (c, ue, ui)
            }
        }
    }

    /// Strips the unit part on the left: (c, u, u_inv) with c = u * self
    /// canonical. Left multiplication preserves the left ideal R*self.
    pub fn unit_normalize_left(&self) -> (Element, Element, Element) {
        if self.ring.caps().commutative {
            return self.unit_normalize_right();
        }
        if self.is_zero() {
            return (self.clone(), Element::one(&self.ring), Element::one(&self.ring));
        }
        let u = match &self.payload {
            Payload::Skew(a) => {
                let f = self.ring.fq();
                Element::new(self.ring.clone(), Payload::Skew(vec![f
                    .inv(a.last().unwrap())
                    .expect("nonzero")]))
            }
            Payload::Quat(a) => Element::new(
                self.ring.clone(),
                Payload::Quat(vec![a.last().unwrap().inv().expect("nonzero")]),
            ),
            _ => unreachable!("noncommutative payloads are polynomial"),
        };
        let c = u.mul(self).expect("same ring");
        let ui = u.unit_inverse().expect("constant");
        (c, u, ui)
    }
}

fn poly_size(len: usize) -> Option<BigUint> {
    if len == 0 {
        None
    } else {
        Some(BigUint::from(len as u64))
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, n: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, n: u64) -> u64 {
        use num::Integer;
        let m = self.mod_floor(&BigInt::from(n));
        let (_, digits) = m.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}
