//! Element expression grammar: parser and printer.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | primary ('^' digits)?
//! primary:= nat ('/' nat)? | 'x' | 'g' | 'i' | 'j' | 'k' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored everywhere. `x` needs a polynomial ring, `g`
//! the skew instances, `i j k` and rational literals the rings with
//! rational coefficients. Exponents are plain digit runs bounded by
//! 2^16. Factor order is preserved, so noncommutative products mean
//! what they say. The Unicode minus sign is accepted as `-`.

use crate::element::{Element, Payload};
use crate::error::{Error, Result};
use crate::quat::Quat;
use crate::ring::{Ring, RingSpec};
use num::bigint::BigInt;
use num::{BigRational, One, Zero};

const MAX_EXPONENT: u64 = 1 << 16;

pub fn parse_element(ring: &Ring, src: &str) -> Result<Element> {
    let mut p = Parser { ring, chars: src.char_indices().collect(), at: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.err(&format!("unexpected character '{c}'")));
    }
    Ok(e)
}

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<(usize, char)>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| normalize(c))
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or_else(
            || self.chars.last().map_or(0, |&(p, c)| p + c.len_utf8()),
            |&(p, _)| p,
        )
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos(), msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        self.skip_ws();
        if self.peek() == Some('-') {
            self.at += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.eat('^') {
            self.skip_ws();
            let k = self.exponent()?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<u64> {
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(self.err("expected digits after '^'"));
        }
        match digits.parse::<u64>() {
            Ok(k) if k <= MAX_EXPONENT => Ok(k),
            _ => Err(Error::ExponentTooLarge),
        }
    }

    fn primary(&mut self) -> Result<Element> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some('x') => {
                self.at += 1;
                self.variable_x()
            }
            Some('g') => {
                self.at += 1;
                match self.ring.spec() {
                    RingSpec::SkewPolyFq { .. } => {
                        let f = self.ring.fq();
                        Ok(Element::new(self.ring.clone(), Payload::Skew(vec![f.gen()])))
                    }
                    _ => Err(self.err("'g' needs a skew polynomial ring")),
                }
            }
            Some(c @ ('i' | 'j' | 'k')) => {
                self.at += 1;
                match self.ring.spec() {
                    RingSpec::QuatPoly => {
                        let q = match c {
                            'i' => Quat::unit_i(),
                            'j' => Quat::unit_j(),
                            _ => Quat::unit_k(),
                        };
                        Ok(Element::new(self.ring.clone(), Payload::Quat(vec![q])))
                    }
                    _ => Err(self.err(&format!("'{c}' needs the quaternion polynomial ring"))),
                }
            }
            Some(c) => Err(self.err(&format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn variable_x(&mut self) -> Result<Element> {
        let payload = match self.ring.spec() {
            RingSpec::PolyRat => {
                Payload::PolyRat(vec![BigRational::zero(), BigRational::one()])
            }
            RingSpec::PolyFp { .. } => Payload::PolyFp(vec![0, 1]),
            RingSpec::SkewPolyFq { .. } => {
                let f = self.ring.fq();
                Payload::Skew(vec![f.zero(), f.one()])
            }
            RingSpec::QuatPoly => Payload::Quat(vec![Quat::zero(), Quat::one()]),
            _ => return Err(self.err("'x' needs a polynomial ring")),
        };
        Ok(Element::new(self.ring.clone(), payload))
    }

    fn number(&mut self) -> Result<Element> {
        let numer = self.natural()?;
        let save = self.at;
        if self.eat('/') {
            self.skip_ws();
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                // Not a rational literal; '/' is not an operator.
                self.at = save;
                return Err(self.err("'/' is only allowed inside a rational literal"));
            }
            let denom = self.natural()?;
            if denom.is_zero() {
                return Err(self.err("zero denominator"));
            }
            let q = BigRational::new(numer, denom);
            return match self.ring.spec() {
                RingSpec::PolyRat => {
                    Ok(Element::new(self.ring.clone(), Payload::PolyRat(vec![q])))
                }
                RingSpec::QuatPoly => {
                    Ok(Element::new(self.ring.clone(), Payload::Quat(vec![Quat::scalar(q)])))
                }
                _ => Err(self.err("rational literals need rational coefficients")),
            };
        }
        Ok(Element::from_bigint(self.ring, &numer))
    }

    fn natural(&mut self) -> Result<BigInt> {
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(self.err("expected digits"));
        }
        Ok(digits.parse::<BigInt>().expect("digit run"))
    }
}

fn normalize(c: char) -> char {
    if c == '\u{2212}' {
        '-'
    } else {
        c
    }
}

/// Deterministic printer; the output reparses to an equal element.
/// Polynomials print highest degree first, coefficients on the left of
/// the variable power, multi-term coefficients parenthesized.
pub fn print_element(e: &Element) -> String {
    match &e.payload {
        Payload::Int(a) => a.to_string(),
        Payload::Mod(a) => a.to_string(),
        Payload::PolyRat(cs) => print_poly(cs, |c| Coeff {
            text: rat_str(c),
            is_one: c.is_one(),
            multi_term: false,
        }),
        Payload::PolyFp(cs) => print_poly(cs, |c| Coeff {
            text: c.to_string(),
            is_one: *c == 1,
            multi_term: false,
        }),
        Payload::Skew(cs) => {
            let f = e.ring.fq();
            print_poly(cs, |c| {
                let (text, terms) = fq_str(c);
                Coeff { text, is_one: *c == f.one(), multi_term: terms > 1 }
            })
        }
        Payload::Quat(cs) => print_poly(cs, |c| {
            let (text, terms) = quat_str(c);
            Coeff { text, is_one: *c == Quat::one(), multi_term: terms > 1 }
        }),
    }
}

struct Coeff {
    text: String,
    is_one: bool,
    multi_term: bool,
}

fn print_poly<C>(cs: &[C], fmt: impl Fn(&C) -> Coeff) -> String
where
    C: PartialEq,
{
    if cs.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (d, c) in cs.iter().enumerate().rev() {
        let k = fmt(c);
        if k.text == "0" {
            continue;
        }
        let term = if d == 0 {
            k.text
        } else {
            let xs = if d == 1 { "x".to_string() } else { format!("x^{d}") };
            if k.is_one {
                xs
            } else if k.multi_term {
                format!("({})*{xs}", k.text)
            } else {
                format!("{}*{xs}", k.text)
            }
        };
        terms.push(term);
    }
    if terms.is_empty() { "0".to_string() } else { terms.join(" + ") }
}

fn rat_str(c: &BigRational) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Field element as a polynomial in `g`; returns (text, term count).
fn fq_str(c: &[u64]) -> (String, usize) {
    let mut terms = Vec::new();
    for (m, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let term = if m == 0 {
            a.to_string()
        } else {
            let gs = if m == 1 { "g".to_string() } else { format!("g^{m}") };
            if a == 1 {
                gs
            } else {
                format!("{a}*{gs}")
            }
        };
        terms.push(term);
    }
    if terms.is_empty() {
        ("0".to_string(), 1)
    } else {
        let n = terms.len();
        (terms.join(" + "), n)
    }
}

/// Quaternion over the basis 1, i, j, k; returns (text, term count).
fn quat_str(c: &Quat) -> (String, usize) {
    let mut terms = Vec::new();
    if !c.r.is_zero() {
        terms.push(rat_str(&c.r));
    }
    for (part, sym) in [(&c.i, "i"), (&c.j, "j"), (&c.k, "k")] {
        if part.is_zero() {
            continue;
        }
        if part.is_one() {
            terms.push(sym.to_string());
        } else {
            terms.push(format!("{}*{sym}", rat_str(part)));
        }
    }
    if terms.is_empty() {
        ("0".to_string(), 1)
    } else {
        let n = terms.len();
        (terms.join(" + "), n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    fn ring(spec: RingSpec) -> Ring {
        make_ring(&spec).unwrap()
    }

    #[test]
    fn integer_literals() {
        let z = ring(RingSpec::Int);
        assert_eq!(parse_element(&z, "-12").unwrap(), Element::from_i64(&z, -12));
        assert_eq!(parse_element(&z, "\u{2212}12").unwrap(), Element::from_i64(&z, -12));
        assert_eq!(parse_element(&z, " 3 * ( 2 + 1 ) ").unwrap(), Element::from_i64(&z, 9));
        assert_eq!(parse_element(&z, "2^10").unwrap(), Element::from_i64(&z, 1024));
    }

    #[test]
    fn parse_errors_carry_position() {
        let z = ring(RingSpec::Int);
        match parse_element(&z, "3 + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse_element(&z, "2^70000"), Err(Error::ExponentTooLarge)));
        assert!(parse_element(&z, "x").is_err());
        assert!(parse_element(&z, "1/2").is_err());
        assert!(parse_element(&z, "").is_err());
    }

    #[test]
    fn quaternion_expressions() {
        let h = ring(RingSpec::QuatPoly);
        let e = parse_element(&h, "x^2+1").unwrap();
        let x = parse_element(&h, "x").unwrap();
        assert_eq!(e, x.mul(&x).unwrap().add(&Element::one(&h)).unwrap());
        let ij = parse_element(&h, "i*j").unwrap();
        let k = parse_element(&h, "k").unwrap();
        assert_eq!(ij, k);
        let ji = parse_element(&h, "j*i").unwrap();
        assert_eq!(ji, k.neg());
        let half = parse_element(&h, "1/2 + 1/2*i").unwrap();
        let two = Element::from_i64(&h, 2);
        let sum = parse_element(&h, "1 + i").unwrap();
        assert_eq!(half.mul(&two).unwrap(), sum);
    }

    #[test]
    fn skew_expressions_preserve_factor_order() {
        let s = ring(RingSpec::SkewPolyFq { p: 2, n: 2, twist: 1 });
        let xg = parse_element(&s, "x*g").unwrap();
        let gx = parse_element(&s, "g*x").unwrap();
        assert_ne!(xg, gx);
        // x*g = g^2*x under the Frobenius twist.
        assert_eq!(xg, parse_element(&s, "g^2*x").unwrap());
        let e = parse_element(&s, "g*x + g^2").unwrap();
        assert_eq!(print_element(&e), "g*x + g + 1");
        // g^2 = g + 1 against the stored minimal polynomial.
        assert_eq!(parse_element(&s, "g^2").unwrap(), parse_element(&s, "g+1").unwrap());
    }

    #[test]
    fn print_round_trips() {
        let samples: Vec<(Ring, &str)> = vec![
            (ring(RingSpec::Int), "-12"),
            (ring(RingSpec::IntMod { n: 12 }), "7"),
            (ring(RingSpec::PolyRat), "-1*x^2 + 3"),
            (ring(RingSpec::PolyRat), "1/2*x - 7"),
            (ring(RingSpec::PolyFp { p: 5 }), "4*x^3 + 2*x + 1"),
            (ring(RingSpec::SkewPolyFq { p: 2, n: 2, twist: 1 }), "(g + 1)*x^3 + g*x + 1"),
            (ring(RingSpec::QuatPoly), "(1/2 + i)*x^2 + j*x + k"),
            (ring(RingSpec::QuatPoly), "x^2 + 1"),
        ];
        for (r, src) in samples {
            let e = parse_element(&r, src).unwrap();
            let printed = print_element(&e);
            let back = parse_element(&r, &printed).unwrap();
            assert_eq!(back, e, "round trip through {printed:?}");
        }
    }

    #[test]
    fn printer_is_strict_grammar() {
        let q = ring(RingSpec::PolyRat);
        let e = parse_element(&q, "3 - x^2").unwrap();
        assert_eq!(print_element(&e), "-1*x^2 + 3");
        let z = ring(RingSpec::Int);
        assert_eq!(print_element(&Element::zero(&z)), "0");
        let h = ring(RingSpec::QuatPoly);
        let e = parse_element(&h, "(g?)").err();
        assert!(e.is_some());
        let e = parse_element(&h, "-1/2*j").unwrap();
        assert_eq!(print_element(&e), "-1/2*j");
    }
}
