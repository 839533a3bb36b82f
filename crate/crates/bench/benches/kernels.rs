use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rickard::crystal::{crystal_from_highest, verify_cactus_relations};
use rickard::hecke::{cell_module, kl_polynomials};
use rickard::qrep::{build_tensor_module, verify_braid};
use rickard::tableaux::{evacuation, promotion, syt_enumerate, Partition};
use rickard::zigzag::{build_zigzag, theta_word};
use rickard::CartanType;
use rickard_bench::{crystal_cases, datum};

fn hecke(c: &mut Criterion) {
    c.bench_function("kl_polynomials S5", |b| b.iter(|| kl_polynomials(black_box(5), 6).unwrap()));
    let kl = kl_polynomials(5, 6).unwrap();
    let shape = Partition::new(vec![3, 2]).unwrap();
    c.bench_function("cell_module (3,2)", |b| b.iter(|| cell_module(&kl, black_box(&shape)).unwrap()));
}

fn crystals(c: &mut Criterion) {
    for (d, lam) in crystal_cases() {
        c.bench_function(&format!("crystal {} {lam}", d.name()), |b| {
            b.iter(|| crystal_from_highest(&d, black_box(&lam), 1000).unwrap())
        });
        let g = crystal_from_highest(&d, &lam, 1000).unwrap();
        c.bench_function(&format!("cactus {} {lam}", d.name()), |b| b.iter(|| verify_cactus_relations(black_box(&g))));
    }
}

fn qrep(c: &mut Criterion) {
    c.bench_function("tensor module sl4 V^3", |b| b.iter(|| build_tensor_module(4, black_box(3), 4096).unwrap()));
    let m = build_tensor_module(4, 3, 4096).unwrap();
    let words = vec![vec![0, 1, 0, 2, 1, 0], vec![2, 1, 2, 0, 1, 2]];
    c.bench_function("braid sl4 V^3", |b| b.iter(|| verify_braid(&m, black_box(&words)).unwrap()));
}

fn tableaux(c: &mut Criterion) {
    let shape = Partition::new(vec![4, 3, 2]).unwrap();
    let ts = syt_enumerate(&shape);
    c.bench_function("promotion+evacuation (4,3,2)", |b| {
        b.iter(|| ts.iter().map(|t| (promotion(t), evacuation(t))).collect::<Vec<_>>())
    });
}

fn zigzag(c: &mut Criterion) {
    for (ty, r) in [(CartanType::A, 3), (CartanType::D, 4)] {
        let d = datum(ty, r);
        let alg = build_zigzag(&d).unwrap();
        let w0 = d.w0().letters().to_vec();
        c.bench_function(&format!("theta_w0 {}", d.name()), |b| b.iter(|| theta_word(&alg, black_box(&w0), true)));
    }
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = hecke, crystals, qrep, tableaux, zigzag
}
criterion_main!(benches);
