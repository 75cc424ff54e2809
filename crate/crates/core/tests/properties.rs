//! Randomized invariants: every witness re-validates itself, transform
//! certificates survive arbitrary op sequences, reductions agree with
//! the minor-gcd oracle, and the printer/parser pair is lossless.

use bezred::bulk::{par_map, seq_map};
use bezred::matrix::ElementaryOp;
use bezred::oracle::minor_gcd_factors;
use bezred::reduce::{complete_column, complete_row, diagonal_reduce, ReduceOutcome};
use bezred::witness::{left_bezout, right_bezout};
use bezred::{make_ring, parse_element, print_element, Certificate, Element, Matrix, Ring, RingSpec};
use proptest::prelude::*;

fn ring(spec: RingSpec) -> Ring {
    make_ring(&spec).unwrap()
}

fn el(r: &Ring, s: &str) -> Element {
    parse_element(r, s).unwrap()
}

fn int_matrix(r: &Ring, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let elems = entries.iter().map(|&v| Element::from_i64(r, v)).collect();
    Matrix::new(r.clone(), rows, cols, elems).unwrap()
}

/// Polynomial over F2 from bit coefficients, lowest degree first.
fn f2_poly(r: &Ring, bits: &[bool]) -> Element {
    let x = el(r, "x");
    let mut acc = Element::zero(r);
    let mut pow = Element::one(r);
    for &b in bits {
        if b {
            acc = acc.add(&pow).unwrap();
        }
        pow = pow.mul(&x).unwrap();
    }
    acc
}

proptest! {
    // Both gcd sides: the witness identities all hold and the gcd
    // divides both inputs on the matching side.
    #[test]
    fn bezout_witnesses_validate_int(a in -200i64..=200, b in -200i64..=200) {
        prop_assume!(a != 0 || b != 0);
        let z = ring(RingSpec::Int);
        let (ea, eb) = (Element::from_i64(&z, a), Element::from_i64(&z, b));
        let w = right_bezout(&ea, &eb).unwrap();
        w.validate(&ea, &eb).unwrap();
        prop_assert!(ea.right_divide(&w.g).unwrap().is_some());
        prop_assert!(eb.right_divide(&w.g).unwrap().is_some());
        let w = left_bezout(&ea, &eb).unwrap();
        w.validate(&ea, &eb).unwrap();
        prop_assert!(ea.left_divide(&w.g).unwrap().is_some());
        prop_assert!(eb.left_divide(&w.g).unwrap().is_some());
    }

    #[test]
    fn bezout_witnesses_validate_f2x(
        abits in prop::collection::vec(any::<bool>(), 0..6),
        bbits in prop::collection::vec(any::<bool>(), 0..6),
    ) {
        let f2 = ring(RingSpec::PolyFp { p: 2 });
        let (ea, eb) = (f2_poly(&f2, &abits), f2_poly(&f2, &bbits));
        prop_assume!(!ea.is_zero() || !eb.is_zero());
        let w = right_bezout(&ea, &eb).unwrap();
        w.validate(&ea, &eb).unwrap();
        prop_assert!(ea.right_divide(&w.g).unwrap().is_some());
        prop_assert!(eb.right_divide(&w.g).unwrap().is_some());
    }

    // A certificate stays valid under any sequence of elementary row
    // and column operations: P*A*Q = D and the recorded inverses are
    // genuine two-sided inverses throughout.
    #[test]
    fn certificates_survive_random_ops(
        entries in prop::collection::vec(-9i64..=9, 6),
        ops in prop::collection::vec((0u8..6, 0usize..2, 0usize..3, -4i64..=4), 0..12),
    ) {
        let z = ring(RingSpec::Int);
        let a = int_matrix(&z, 2, 3, &entries);
        let mut cert = Certificate::identity(&a);
        for (kind, i, j, f) in ops {
            let fi = Element::from_i64(&z, f);
            let minus_one = Element::from_i64(&z, -1);
            match kind {
                // Row ops index 0..2.
                0 => cert.apply_row_op(&ElementaryOp::Swap { i, j: (i + 1) % 2 }).unwrap(),
                1 => cert.apply_row_op(&ElementaryOp::Scale { i, u: minus_one }).unwrap(),
                2 => {
                    if i != j % 2 {
                        cert.apply_row_op(&ElementaryOp::Add { target: i, source: j % 2, factor: fi }).unwrap();
                    }
                }
                // Column ops index 0..3.
                3 => cert.apply_col_op(&ElementaryOp::Swap { i: j, j: (j + 1) % 3 }).unwrap(),
                4 => cert.apply_col_op(&ElementaryOp::Scale { i: j, u: minus_one }).unwrap(),
                _ => {
                    if j != (j + 1 + i) % 3 {
                        cert.apply_col_op(&ElementaryOp::Add { target: j, source: (j + 1 + i) % 3, factor: fi }).unwrap();
                    }
                }
            }
        }
        prop_assert!(cert.verify(&a).unwrap());
        prop_assert_eq!(cert.p.mul(&a).unwrap().mul(&cert.q).unwrap(), cert.d.clone());
    }

    // Every integer reduction verifies its certificate and lands on the
    // oracle's invariant factors exactly.
    #[test]
    fn reductions_match_minor_gcd_oracle(
        rows in 2usize..=3,
        cols in 2usize..=3,
        entries in prop::collection::vec(-12i64..=12, 9),
    ) {
        let z = ring(RingSpec::Int);
        let a = int_matrix(&z, rows, cols, &entries[..rows * cols]);
        let ReduceOutcome::Reduced { cert, report } = diagonal_reduce(&a).unwrap() else {
            return Err(TestCaseError::fail("integer reduction failed"));
        };
        prop_assert!(cert.verify(&a).unwrap());
        prop_assert_eq!(report.diagonal, minor_gcd_factors(&a).unwrap().factors);
        prop_assert!(report.total_divisor_chain.iter().all(|&ok| ok));
    }

    // Row and column completions of a coprime pair are unimodular with
    // the pair embedded where the construction promises it.
    #[test]
    fn completions_invert_both_ways(p in -60i64..=60, q in -60i64..=60) {
        prop_assume!(p != 0 || q != 0);
        let z = ring(RingSpec::Int);
        let (ep, eq) = (Element::from_i64(&z, p), Element::from_i64(&z, q));
        prop_assume!(right_bezout(&ep, &eq).unwrap().g.is_unit());
        let c = complete_row(&ep, &eq).unwrap();
        prop_assert!(c.m.mul(&c.minv).unwrap().is_identity());
        prop_assert!(c.minv.mul(&c.m).unwrap().is_identity());
        prop_assert_eq!((c.m.at(0, 0), c.m.at(0, 1)), (&ep, &eq));
        let c = complete_column(&ep, &eq).unwrap();
        prop_assert!(c.m.mul(&c.minv).unwrap().is_identity());
        prop_assert!(c.minv.mul(&c.m).unwrap().is_identity());
        prop_assert_eq!((c.m.at(0, 0), c.m.at(1, 0)), (&ep, &eq));
    }

    // divrem_right: self = d*q + r with r strictly smaller; the left
    // variant mirrors it.
    #[test]
    fn divrem_shrinks_remainders(a in -500i64..=500, d in -500i64..=500) {
        prop_assume!(d != 0);
        let z = ring(RingSpec::Int);
        let (ea, ed) = (Element::from_i64(&z, a), Element::from_i64(&z, d));
        let (q, r) = ea.divrem_right(&ed).unwrap();
        prop_assert_eq!(ed.mul(&q).unwrap().add(&r).unwrap(), ea.clone());
        prop_assert!(r.is_zero() || r.size().unwrap() < ed.size().unwrap());
        let (q, r) = ea.divrem_left(&ed).unwrap();
        prop_assert_eq!(q.mul(&ed).unwrap().add(&r).unwrap(), ea.clone());
        prop_assert!(r.is_zero() || r.size().unwrap() < ed.size().unwrap());
    }

    #[test]
    fn divrem_shrinks_remainders_f2x(
        abits in prop::collection::vec(any::<bool>(), 0..8),
        dbits in prop::collection::vec(any::<bool>(), 1..6),
    ) {
        let f2 = ring(RingSpec::PolyFp { p: 2 });
        let (ea, ed) = (f2_poly(&f2, &abits), f2_poly(&f2, &dbits));
        prop_assume!(!ed.is_zero());
        let (q, r) = ea.divrem_right(&ed).unwrap();
        prop_assert_eq!(ed.mul(&q).unwrap().add(&r).unwrap(), ea.clone());
        prop_assert!(r.is_zero() || r.size().unwrap() < ed.size().unwrap());
    }

    // print -> parse is the identity on elements of every ring.
    #[test]
    fn print_parse_round_trip_int_rings(v in -10_000i64..=10_000, n in 2u64..=60) {
        let z = ring(RingSpec::Int);
        let e = Element::from_i64(&z, v);
        prop_assert_eq!(parse_element(&z, &print_element(&e)).unwrap(), e);
        let m = ring(RingSpec::IntMod { n });
        let e = Element::from_i64(&m, v);
        prop_assert_eq!(parse_element(&m, &print_element(&e)).unwrap(), e);
    }

    #[test]
    fn print_parse_round_trip_rat_poly(
        coeffs in prop::collection::vec((-30i64..=30, 1i64..=12), 0..5),
    ) {
        let r = ring(RingSpec::PolyRat);
        let x = el(&r, "x");
        let mut e = Element::zero(&r);
        let mut pow = Element::one(&r);
        for (p, q) in coeffs {
            let c = Element::from_i64(&r, p)
                .mul(&Element::from_i64(&r, q).unit_inverse().unwrap())
                .unwrap();
            e = e.add(&c.mul(&pow).unwrap()).unwrap();
            pow = pow.mul(&x).unwrap();
        }
        prop_assert_eq!(parse_element(&r, &print_element(&e)).unwrap(), e);
    }

    #[test]
    fn print_parse_round_trip_quat_poly(
        coeffs in prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3), 0..4),
    ) {
        let h = ring(RingSpec::QuatPoly);
        let (i, j, k, x) = (el(&h, "i"), el(&h, "j"), el(&h, "k"), el(&h, "x"));
        let mut e = Element::zero(&h);
        let mut pow = Element::one(&h);
        for (a, b, c, d) in coeffs {
            let mut term = Element::from_i64(&h, a);
            term = term.add(&Element::from_i64(&h, b).mul(&i).unwrap()).unwrap();
            term = term.add(&Element::from_i64(&h, c).mul(&j).unwrap()).unwrap();
            term = term.add(&Element::from_i64(&h, d).mul(&k).unwrap()).unwrap();
            e = e.add(&term.mul(&pow).unwrap()).unwrap();
            pow = pow.mul(&x).unwrap();
        }
        prop_assert_eq!(parse_element(&h, &print_element(&e)).unwrap(), e);
    }

    #[test]
    fn print_parse_round_trip_skew(coeffs in prop::collection::vec(0u8..4, 0..5)) {
        let s = ring(RingSpec::SkewPolyFq { p: 2, n: 2, twist: 1 });
        let (g, x) = (el(&s, "g"), el(&s, "x"));
        let mut e = Element::zero(&s);
        let mut pow = Element::one(&s);
        for c in coeffs {
            let mut term = Element::from_i64(&s, (c & 1) as i64);
            if c & 2 != 0 {
                term = term.add(&g).unwrap();
            }
            e = e.add(&term.mul(&pow).unwrap()).unwrap();
            pow = pow.mul(&x).unwrap();
        }
        prop_assert_eq!(parse_element(&s, &print_element(&e)).unwrap(), e);
    }

    // The parallel and sequential bulk maps agree element-for-element.
    #[test]
    fn par_map_matches_seq_map(xs in prop::collection::vec(any::<u64>(), 0..300)) {
        let f = |x: u64| x.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17) ^ x;
        prop_assert_eq!(par_map(xs.clone(), f), seq_map(xs, f));
    }
}
