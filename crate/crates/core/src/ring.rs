//! Ring descriptors, capability flags, and the runtime ring handle.
//!
//! A `Ring` is a cheap-to-clone handle; two handles are the same ring
//! exactly when their descriptors match, so elements parsed under
//! different handles of the same descriptor interoperate.

use crate::element::{Element, Payload};
use crate::error::{Error, Result};
use crate::fq::FqField;
use crate::intring::is_prime;
use crate::quat::Quat;
use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

fn default_twist() -> u32 {
    1
}

/// Serializable ring descriptor. The JSON shape is
/// {"kind": "IntMod", "params": {"n": 12}} with params omitted for
/// parameterless kinds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum RingSpec {
    Int,
    IntMod {
        n: u64,
    },
    PolyRat,
    PolyFp {
        p: u64,
    },
    SkewPolyFq {
        p: u64,
        n: u32,
        #[serde(default = "default_twist")]
        twist: u32,
    },
    QuatPoly,
}

/// What the effective-procedure layer is allowed to assume about a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Capabilities {
    pub commutative: bool,
    pub domain: bool,
    pub right_euclidean: bool,
    pub left_euclidean: bool,
    pub finite: bool,
    pub invariance_decidable: bool,
    pub two_sided_generator_computable: bool,
}

#[derive(Debug)]
pub(crate) struct RingData {
    pub spec: RingSpec,
    pub caps: Capabilities,
    pub fq: Option<FqField>,
}

#[derive(Clone, Debug)]
pub struct Ring(pub(crate) Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

/// Builds a ring handle, validating parameters.
pub fn make_ring(spec: &RingSpec) -> Result<Ring> {
    let caps = match spec {
        RingSpec::Int => Capabilities {
            commutative: true,
            domain: true,
            right_euclidean: true,
            left_euclidean: true,
            finite: false,
            invariance_decidable: true,
            two_sided_generator_computable: true,
        },
        RingSpec::IntMod { n } => {
            if *n < 2 {
                return Err(Error::InvalidParameters("modulus must be at least 2".into()));
            }
            Capabilities {
                commutative: true,
                domain: false,
                right_euclidean: true,
                left_euclidean: true,
                finite: true,
                invariance_decidable: true,
                two_sided_generator_computable: true,
            }
        }
        RingSpec::PolyRat => Capabilities {
            commutative: true,
            domain: true,
            right_euclidean: true,
            left_euclidean: true,
            finite: false,
            invariance_decidable: true,
            two_sided_generator_computable: true,
        },
        RingSpec::PolyFp { p } => {
            if *p >= 1 << 32 {
                return Err(Error::InvalidParameters("prime too large".into()));
            }
            if !is_prime(*p) {
                return Err(Error::InvalidParameters(format!("{p} is not prime")));
            }
            Capabilities {
                commutative: true,
                domain: true,
                right_euclidean: true,
                left_euclidean: true,
                finite: false,
                invariance_decidable: true,
                two_sided_generator_computable: true,
            }
        }
        RingSpec::SkewPolyFq { .. } | RingSpec::QuatPoly => Capabilities {
            commutative: false,
            domain: true,
            right_euclidean: true,
            left_euclidean: true,
            finite: false,
            invariance_decidable: true,
            two_sided_generator_computable: true,
        },
    };
    let fq = match spec {
        RingSpec::SkewPolyFq { p, n, twist } => Some(FqField::new(*p, *n, *twist)?),
        _ => None,
    };
    Ok(Ring(Arc::new(RingData { spec: spec.clone(), caps, fq })))
}

impl Ring {
    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn caps(&self) -> &Capabilities {
        &self.0.caps
    }

    pub(crate) fn fq(&self) -> &FqField {
        self.0.fq.as_ref().expect("skew ring carries its field")
    }

    pub fn zero(&self) -> Element {
        Element::zero(self)
    }

    pub fn one(&self) -> Element {
        Element::one(self)
    }

    /// Number of elements for finite rings.
    pub fn size(&self) -> Option<u64> {
        match &self.0.spec {
            RingSpec::IntMod { n } => Some(*n),
            _ => None,
        }
    }

    /// Multiplicative algebra generators over the prime subring, used by
    /// the invariance test and the two-sided generator closure.
    pub fn generators(&self) -> Vec<Element> {
        match &self.0.spec {
            RingSpec::Int | RingSpec::IntMod { .. } => vec![],
            RingSpec::PolyRat => {
                vec![Element::new(self.clone(), Payload::PolyRat(vec![rat(0), rat(1)]))]
            }
            RingSpec::PolyFp { .. } => {
                vec![Element::new(self.clone(), Payload::PolyFp(vec![0, 1]))]
            }
            RingSpec::SkewPolyFq { .. } => {
                let f = self.fq();
                vec![
                    Element::new(self.clone(), Payload::Skew(vec![f.gen()])),
                    Element::new(self.clone(), Payload::Skew(vec![f.zero(), f.one()])),
                ]
            }
            RingSpec::QuatPoly => vec![
                Element::new(self.clone(), Payload::Quat(vec![Quat::unit_i()])),
                Element::new(self.clone(), Payload::Quat(vec![Quat::unit_j()])),
                Element::new(self.clone(), Payload::Quat(vec![Quat::zero(), Quat::one()])),
            ],
        }
    }

    /// Deterministic enumeration used by every bounded witness search.
    ///
    /// Orders:
    /// - Int: 0, 1, -1, 2, -2, ...
    /// - IntMod n: ascending representatives 0..n-1
    /// - PolyFp: ascending degree; within a degree the leading
    ///   coefficient ascends 1..p-1 and lower coefficients count in
    ///   base p, constant digit least significant
    /// - SkewPolyFq: same scheme with field elements ordered by their
    ///   base-p digit index
    /// - PolyRat: integer-coefficient polynomials in "shells": shell H
    ///   holds polynomials of degree < H with |coefficients| <= H not
    ///   already in shell H-1, coefficient digits ordered 0, 1, -1, ...
    /// - QuatPoly: coefficients drawn from {0, 1, -1, i, -i, j, -j, k, -k}
    ///   (in that order), ascending degree, same digit scheme as PolyFp
    pub fn elements(&self) -> Box<dyn Iterator<Item = Element> + Send> {
        let ring = self.clone();
        match &self.0.spec {
            RingSpec::Int => Box::new((0u64..).flat_map(move |k| {
                let mut out = vec![Element::new(ring.clone(), Payload::Int(BigInt::from(k)))];
                if k > 0 {
                    out.push(Element::new(ring.clone(), Payload::Int(-BigInt::from(k))));
                }
                out
            })),
            RingSpec::IntMod { n } => {
                let n = *n;
                Box::new((0..n).map(move |r| Element::new(ring.clone(), Payload::Mod(r))))
            }
            RingSpec::PolyFp { p } => {
                let p = *p;
                Box::new(digit_polys(p).map(move |digits| {
                    Element::new(ring.clone(), Payload::PolyFp(digits))
                }))
            }
            RingSpec::SkewPolyFq { .. } => {
                let f = self.fq().clone();
                let q = f.order();
                Box::new(digit_polys(q).map(move |digits| {
                    let coeffs = digits.iter().map(|&d| f.from_index(d)).collect();
                    Element::new(ring.clone(), Payload::Skew(coeffs))
                }))
            }
            RingSpec::PolyRat => Box::new(rat_shells().map(move |coeffs| {
                Element::new(ring.clone(), Payload::PolyRat(coeffs))
            })),
            RingSpec::QuatPoly => Box::new(digit_polys(9).map(move |digits| {
                let coeffs = digits.iter().map(|&d| quat_atom(d)).collect();
                Element::new(ring.clone(), Payload::Quat(coeffs))
            })),
        }
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The nine standard small quaternion coefficients, ordered.
pub(crate) fn quat_atom(d: u64) -> Quat {
    match d {
        0 => Quat::zero(),
        1 => Quat::one(),
        2 => Quat::one().neg(),
        3 => Quat::unit_i(),
        4 => Quat::unit_i().neg(),
        5 => Quat::unit_j(),
        6 => Quat::unit_j().neg(),
        7 => Quat::unit_k(),
        8 => Quat::unit_k().neg(),
        _ => unreachable!(),
    }
}

/// Zero, then for each degree d the (q-1)*q^d coefficient tuples with a
/// nonzero leading digit; digits index the coefficient alphabet.
fn digit_polys(q: u64) -> impl Iterator<Item = Vec<u64>> + Send {
    std::iter::once(vec![])
        .chain((0u32..).flat_map(move |d| {
            let span = q.checked_pow(d).unwrap_or(0);
            (1..q).flat_map(move |lead| {
                (0..span).map(move |idx| {
                    let mut digits = Vec::with_capacity(d as usize + 1);
                    let mut rem = idx;
                    for _ in 0..d {
                        digits.push(rem % q);
                        rem /= q;
                    }
                    digits.push(lead);
                    digits
                })
            })
        }))
}

/// Signed digit order 0, 1, -1, 2, -2, ... as rationals.
fn zigzag(idx: u64) -> BigRational {
    let k = (idx + 1) / 2;
    let v = if idx % 2 == 1 { k as i64 } else { -(k as i64) };
    rat(v)
}

fn rat_shells() -> impl Iterator<Item = Vec<BigRational>> + Send {
    std::iter::once(vec![]).chain((1u64..).flat_map(|h| {
        let digits = 2 * h + 1;
        (0..h).flat_map(move |d| {
            let span = digits.checked_pow(d as u32).unwrap_or(0);
            (1..digits).flat_map(move |lead| {
                (0..span).filter_map(move |idx| {
                    let mut coeffs = Vec::with_capacity(d as usize + 1);
                    let mut rem = idx;
                    let mut max_digit = lead;
                    for _ in 0..d {
                        let dig = rem % digits;
                        rem /= digits;
                        max_digit = max_digit.max(dig);
                        coeffs.push(zigzag(dig));
                    }
                    coeffs.push(zigzag(lead));
                    // Skip members of earlier shells.
                    let prev = 2 * (h - 1) + 1;
                    if h > 1 && d < h - 1 && max_digit < prev {
                        return None;
                    }
                    Some(coeffs)
                })
            })
        })
    }))
}
