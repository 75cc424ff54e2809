//! Parallel vs sequential bulk sweeps. The reduction and probe drivers
//! are sequential per input; throughput comes from fanning independent
//! inputs over the rayon pool, and these benches measure what that buys
//! against the ordered fallback on the same workloads.

use bezred::bulk::{par_map, seq_map};
use bezred::probes::find_simple_range2_witness;
use bezred::reduce::{diagonal_reduce, ReduceOutcome};
use bezred::witness::{is_two_sided_unimodular, right_gcd_many};
use bezred::{make_ring, Element, Matrix, RingSpec};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn reduction_inputs() -> Vec<Matrix> {
    let z = make_ring(&RingSpec::Int).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xBE2D_BE2D);
    (0..96)
        .map(|_| {
            let entries = (0..9)
                .map(|_| Element::from_i64(&z, rng.gen_range(-50..=50)))
                .collect();
            Matrix::new(z.clone(), 3, 3, entries).unwrap()
        })
        .collect()
}

fn reduce_one(m: Matrix) -> bool {
    match diagonal_reduce(&m).unwrap() {
        ReduceOutcome::Reduced { report, .. } => report.total_divisor_chain.iter().all(|&b| b),
        ReduceOutcome::Failed { .. } => false,
    }
}

fn bench_reduction_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduction_sweep_3x3_x96");
    group.bench_function("parallel", |b| {
        b.iter_batched(reduction_inputs, |ms| par_map(ms, reduce_one), BatchSize::SmallInput)
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(reduction_inputs, |ms| seq_map(ms, reduce_one), BatchSize::SmallInput)
    });
    group.finish();
}

fn probe_inputs() -> Vec<(Element, Element, Element)> {
    let m = make_ring(&RingSpec::IntMod { n: 18 }).unwrap();
    let elems: Vec<Element> = (0..18).map(|v| Element::from_i64(&m, v)).collect();
    let mut triples = Vec::new();
    for a in &elems {
        for b in &elems {
            for c in elems.iter().skip(1) {
                let content =
                    right_gcd_many(&[a.clone(), b.clone(), c.clone()]).unwrap();
                if is_two_sided_unimodular(&content).unwrap() {
                    triples.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    triples
}

fn probe_one((a, b, c): (Element, Element, Element)) -> bool {
    find_simple_range2_witness(&a, &b, &c, 18).unwrap().is_some()
}

fn bench_probe_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("simple2_probe_mod18_all_triples");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        b.iter_batched(probe_inputs, |ts| par_map(ts, probe_one), BatchSize::LargeInput)
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(probe_inputs, |ts| seq_map(ts, probe_one), BatchSize::LargeInput)
    });
    group.finish();
}

criterion_group!(benches, bench_reduction_sweep, bench_probe_sweep);
criterion_main!(benches);
