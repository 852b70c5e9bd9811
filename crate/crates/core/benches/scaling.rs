//! Benchmarks for the data-parallel hot paths.
//!
//! Build with default features for the rayon-backed parallel paths, or
//! with `--no-default-features` for the sequential fallback; criterion
//! keeps named baselines, so running both builds compares them:
//!
//! ```text
//! cargo bench -p reflect-core -- --save-baseline parallel
//! cargo bench -p reflect-core --no-default-features -- --baseline parallel
//! ```
//!
//! (On a single-core host the two coincide up to thread-pool overhead.)

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use reflect_core::budget::Budget;
use reflect_core::cosets::Coset;
use reflect_core::coxeter::CoxGroup;
use reflect_core::exactlin::Rat;
use reflect_core::garside::{positive_lift, summit_conjugacy_graph, BraidCtx};
use reflect_core::rootsys::{CartanType, Isogeny};
use reflect_core::semisimple::{self, SSElt};

fn group_of(name: &str) -> Arc<CoxGroup> {
    CoxGroup::from_type(&CartanType::parse(name).unwrap(), Isogeny::Adjoint).unwrap()
}

/// F-class partition of the twisted E₆ coset: a 51 840-element scan.
fn bench_f_classes(c: &mut Criterion) {
    let budget = Budget::default();
    let g = group_of("E6");
    g.elements(&budget).unwrap();
    let coset = Coset::new(g.clone(), &[6, 2, 5, 4, 3, 1]).unwrap();
    c.bench_function("f_classes_2e6", |b| {
        b.iter(|| {
            let info = coset.f_conjugacy_classes(&budget).unwrap();
            assert_eq!(info.classes.len(), 25);
        })
    });
}

/// Quasi-isolated search: alcove scan plus per-candidate stabilizers.
fn bench_quasi_isolated(c: &mut Criterion) {
    let budget = Budget::default();
    let g = group_of("D4");
    c.bench_function("quasi_isolated_d4", |b| {
        b.iter(|| {
            let reps = semisimple::quasi_isolated_representatives(&g, &budget).unwrap();
            assert!(!reps.is_empty());
        })
    });
}

/// Summit graph closure: the per-vertex conjugator scan dominates.
fn bench_summit(c: &mut Criterion) {
    let budget = Budget::default();
    let g = group_of("A4");
    g.elements(&budget).unwrap();
    let ctx = BraidCtx::new(g.clone());
    let braid = positive_lift(&ctx, &[1, 3, 2, 4]);
    c.bench_function("summit_graph_a4", |b| {
        b.iter(|| {
            let graph = summit_conjugacy_graph(&braid, None, &budget).unwrap();
            assert!(!graph.vertices.is_empty());
        })
    });
}

/// Weyl orbit of a dense torsion point of E₆.
fn bench_torus_orbit(c: &mut Criterion) {
    let budget = Budget::default();
    let g = group_of("E6");
    let s = SSElt::new(
        [1i64, 5, 1, 3, 2, 4].iter().map(|&n| Rat::new(n.into(), 6.into())).collect(),
    );
    c.bench_function("torus_orbit_e6", |b| {
        b.iter(|| {
            let orbit = semisimple::orbit(&g, &s, &budget).unwrap();
            assert!(orbit.len() > 1);
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_f_classes, bench_quasi_isolated, bench_summit, bench_torus_orbit
}
criterion_main!(benches);
