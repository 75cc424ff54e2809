//! Exact linear algebra over effective Bezout rings.
//!
//! The crate provides six concrete coefficient rings (integers, modular
//! integers, rational and prime-field polynomials, twisted polynomials
//! over small finite fields, and polynomials over the rational
//! quaternions), gcd and completion witnesses with verifiable
//! identities, certificate-tracked matrix reduction to diagonal form
//! with a divisibility chain, and searchable range conditions with
//! machine-checkable witnesses.

pub mod bulk;
pub mod element;
pub mod error;
pub mod fq;
pub mod intring;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod probes;
pub mod quat;
pub mod reduce;
pub mod ring;
pub mod witness;

pub use element::Element;
pub use error::{Error, Result};
pub use matrix::{Certificate, DiagonalReport, Matrix};
pub use oracle::{exhaustive_witness_oracle, minor_gcd_factors, InvariantFactors};
pub use parse::{parse_element, print_element};
pub use probes::{
    check_two_sided_product, find_simple_range2_witness, find_stable_range1_witness,
    find_stable_range2_witness, run_probe, simple_degree, witness_from_reduction,
    witness_via_stable_range, ProbeKind, SimpleRangeWitness, StableRangeWitness,
};
pub use reduce::{
    canonical_2x2, complete_column, complete_row, diagonal_reduce, hermite_reduce_row,
    hermite_triangularize, reduction_report_json, simple_range_pivot, verify_dk_chain,
    verify_reduction_report, CompletionPair, ReduceOutcome,
};
pub use ring::{make_ring, Capabilities, Ring, RingSpec};
