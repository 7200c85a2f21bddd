//! Rayon's global pool against a single-thread pool on the same workloads.
//!
//! Built with `--no-default-features` the library takes its plain-iterator
//! path and both series measure that path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sl2comod::comodule::{standard, sym_power, tensor, transpose, Side};
use sl2comod::homological::cg_filtration;
use sl2comod::hopf::{verify_hopf, HopfVariant};
use sl2comod::isotest::intertwiner_lattice;
use sl2comod::BaseRing;

const Z: BaseRing = BaseRing::Integers;

type Job = Box<dyn Fn() + Sync>;

fn workloads() -> Vec<(&'static str, Job)> {
    let s4 = sym_power(Z, 4);
    let s4t = transpose(&s4);
    let w = tensor(&standard(Z, Side::Right), &sym_power(Z, 5)).unwrap();
    vec![
        ("hopf_verify_64", Box::new(|| assert!(verify_hopf(HopfVariant::Standard, 64, 1).passed()))),
        ("comodule_verify_V⊗Sym5", Box::new(move || assert!(w.verify().passed))),
        ("hom_lattice_Sym4_Sym4T", Box::new(move || assert!(intertwiner_lattice(&s4, &s4t).unwrap().rank() > 0))),
        ("cg_filtration_2_4", Box::new(|| assert!(cg_filtration(2, 4, Z).unwrap().verify().unwrap()))),
    ]
}

fn bench(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut group = c.benchmark_group(if sl2comod::par::is_parallel() { "parallel-build" } else { "sequential-build" });
    group.sample_size(10);
    for (name, job) in workloads() {
        group.bench_with_input(BenchmarkId::new("rayon", name), &(), |b, _| b.iter(&job));
        group.bench_with_input(BenchmarkId::new("one-thread", name), &(), |b, _| b.iter(|| single.install(&job)));
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
