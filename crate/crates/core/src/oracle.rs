//! Independent cross-checks for the reduction and probe engines.
//!
//! The invariant-factor oracle recomputes a diagonal form from gcds of
//! k x k minors, sharing no elementary-operation code with the sweep.
//! The witness oracle answers existence questions over Z/n by brute
//! force on raw residues, sharing nothing with the probe searches.

use crate::element::{Element, Payload};
use crate::error::{Error, Result};
use crate::intring::gcd;
use crate::matrix::Matrix;
use crate::probes::ProbeKind;
use crate::ring::{Ring, RingSpec};
use crate::witness::right_gcd_many;
use serde_json::{json, Value};

/// Diagonal invariants recomputed from minors: `minor_gcds[k-1]` is
/// the gcd of all k x k minors, and `factors[k-1]` the quotient of
/// consecutive minor gcds, both canonically normalized.
#[derive(Clone, Debug)]
pub struct InvariantFactors {
    pub factors: Vec<Element>,
    pub minor_gcds: Vec<Element>,
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Advance the rightmost index that still has room.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Cofactor expansion along the first selected row.
fn det(m: &Matrix, rows: &[usize], cols: &[usize]) -> Result<Element> {
    let ring = m.ring().clone();
    if rows.len() == 1 {
        return Ok(m.at(rows[0], cols[0]).clone());
    }
    let mut acc = Element::zero(&ring);
    for (j, &cj) in cols.iter().enumerate() {
        let entry = m.at(rows[0], cj);
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> =
            cols.iter().enumerate().filter(|&(jj, _)| jj != j).map(|(_, &c)| c).collect();
        let minor = det(m, &rows[1..], &sub_cols)?;
        let term = entry.mul(&minor)?;
        acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

/// Recomputes invariant factors of a matrix over a commutative ring
/// from gcds of its minors. Works on any shape; intended for small
/// matrices (the number of minors grows combinatorially).
pub fn minor_gcd_factors(a: &Matrix) -> Result<InvariantFactors> {
    if !a.ring().caps().commutative {
        return Err(Error::UnsupportedCapability("minor gcds need a commutative ring"));
    }
    let r = a.rows().min(a.cols());
    let mut minor_gcds = Vec::with_capacity(r);
    for k in 1..=r {
        let mut minors = Vec::new();
        for rows in k_subsets(a.rows(), k) {
            for cols in k_subsets(a.cols(), k) {
                minors.push(det(a, &rows, &cols)?);
            }
        }
        minor_gcds.push(right_gcd_many(&minors)?);
    }
    let mut factors = Vec::with_capacity(r);
    let mut prev = Element::one(a.ring());
    for g in &minor_gcds {
        if prev.is_zero() {
            factors.push(Element::zero(a.ring()));
        } else {
            let q = g
                .right_divide(&prev)?
                .ok_or_else(|| Error::InvalidWitness("minor gcds must divide in order".into()))?;
            factors.push(q.unit_normalize_right().0);
        }
        prev = g.clone();
    }
    Ok(InvariantFactors { factors, minor_gcds })
}

/// A witness found by brute force over raw residues mod n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleWitness {
    Sr1 { t: u64 },
    Sr2 { x: u64, y: u64 },
    Simple2 { p: u64, q: u64 },
    NSimple { n: u32, u: u64, v: u64 },
    Prop34 { holds: bool },
}

impl OracleWitness {
    pub fn to_json(&self) -> Value {
        match self {
            OracleWitness::Sr1 { t } => json!({ "t": t.to_string() }),
            OracleWitness::Sr2 { x, y } => {
                json!({ "x": x.to_string(), "y": y.to_string() })
            }
            OracleWitness::Simple2 { p, q } => {
                json!({ "p": p.to_string(), "q": q.to_string() })
            }
            OracleWitness::NSimple { n, u, v } => {
                json!({ "n": n, "u": u.to_string(), "v": v.to_string() })
            }
            OracleWitness::Prop34 { holds } => json!({ "holds": holds }),
        }
    }
}

fn mod_rep(e: &Element) -> u64 {
    match &e.payload {
        Payload::Mod(r) => *r,
        _ => unreachable!("callers check the ring first"),
    }
}

/// Answers probe existence questions over Z/n by exhaustive search on
/// raw residues, with no code shared with the probe module. The
/// simple2 search ranges over all pairs (p, q): normalizing a pair to
/// be unimodular never changes whether a witness exists, because a
/// common non-unit factor of (p, q) would trap the witness ideal
/// inside a proper ideal.
pub fn exhaustive_witness_oracle(
    ring: &Ring,
    kind: ProbeKind,
    inputs: &[Element],
) -> Result<Option<OracleWitness>> {
    let RingSpec::IntMod { n } = ring.spec() else {
        return Err(Error::UnsupportedCapability("exhaustive oracle runs over Z/n only"));
    };
    let n = *n;
    if inputs.len() != kind.arity() {
        return Err(Error::InvalidParameters(format!(
            "oracle {} expects {} elements, got {}",
            kind.as_str(),
            kind.arity(),
            inputs.len()
        )));
    }
    for e in inputs {
        if e.ring() != ring {
            return Err(Error::MixedRings);
        }
    }
    let reps: Vec<u64> = inputs.iter().map(mod_rep).collect();
    let mul = |a: u64, b: u64| -> u64 { ((a as u128 * b as u128) % n as u128) as u64 };
    let add = |a: u64, b: u64| -> u64 { ((a as u128 + b as u128) % n as u128) as u64 };
    let unit = |a: u64| -> bool { gcd(a, n) == 1 };
    match kind {
        ProbeKind::Sr1 => {
            let (a, b) = (reps[0], reps[1]);
            for t in 0..n {
                if unit(add(a, mul(b, t))) {
                    return Ok(Some(OracleWitness::Sr1 { t }));
                }
            }
            Ok(None)
        }
        ProbeKind::Sr2 => {
            let (a, b, c) = (reps[0], reps[1], reps[2]);
            for x in 0..n {
                let ax = add(a, mul(c, x));
                for y in 0..n {
                    let by = add(b, mul(c, y));
                    if gcd(gcd(ax, by), n) == 1 {
                        return Ok(Some(OracleWitness::Sr2 { x, y }));
                    }
                }
            }
            Ok(None)
        }
        ProbeKind::Simple2 => {
            let (a, b, c) = (reps[0], reps[1], reps[2]);
            if c == 0 {
                return Err(Error::ZeroC);
            }
            for p in 0..n {
                for q in 0..n {
                    if p == 0 && q == 0 {
                        continue;
                    }
                    let s1 = add(mul(p, a), mul(q, b));
                    let s2 = mul(p, c);
                    if gcd(gcd(s1, s2), n) == 1 {
                        return Ok(Some(OracleWitness::Simple2 { p, q }));
                    }
                }
            }
            Ok(None)
        }
        ProbeKind::NSimple => {
            let a = reps[0];
            if a == 0 {
                return Err(Error::ZeroInput);
            }
            // Over Z/n every sum of u_i*a*v_i is a multiple of gcd(a, n),
            // so length 1 decides existence for every length.
            for u in 0..n {
                for v in 0..n {
                    if mul(mul(u, a), v) == 1 {
                        return Ok(Some(OracleWitness::NSimple { n: 1, u, v }));
                    }
                }
            }
            Ok(None)
        }
        ProbeKind::Prop34 => {
            let (a, b) = (reps[0], reps[1]);
            let holds = !(unit(a) && unit(b)) || unit(mul(a, b));
            Ok(Some(OracleWitness::Prop34 { holds }))
        }
    }
}

/// Runs the oracle and assembles a report shaped like a probe report.
pub fn run_oracle(ring: &Ring, kind: ProbeKind, inputs: &[Element]) -> Result<Value> {
    let witness = exhaustive_witness_oracle(ring, kind, inputs)?;
    Ok(json!({
        "condition": kind.as_str(),
        "inputs": inputs.iter().map(|e| crate::parse::print_element(e)).collect::<Vec<_>>(),
        "witness": witness.as_ref().map(OracleWitness::to_json),
        "status": if witness.is_some() { "found" } else { "exhausted" },
    }))
}
