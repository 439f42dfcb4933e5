//! Timings for the hot paths: Demazure operators, Borel reduction, Schur
//! classes, generator matrices, Gram matrices and whole suites.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use flagk_core::hecke0::{borel_reduce, hecke_inputs, verify_hecke};
use flagk_core::idemkit::{build_pair, verify_idempotents, Family};
use flagk_core::kgr::schur_v_class;
use flagk_core::loopgen::{op_e, op_f};
use flagk_core::polycore::demazure;
use flagk_core::shapes::{lr_expand, Partition};
use flagk_core::sodlab::{gram, verify_diagonal_action, Collection};
use flagk_core::{Composition, LaurentPoly};

fn polynomials(c: &mut Criterion) {
    let inputs = hecke_inputs(4, 3, 20, 1);
    let dense: LaurentPoly = inputs.iter().fold(LaurentPoly::zero(4), |acc, p| &acc + p);
    c.bench_function("demazure delta_2 on a dense N=4 polynomial", |b| {
        b.iter(|| demazure(2, black_box(&dense)).unwrap())
    });
    let small: LaurentPoly = hecke_inputs(3, 2, 20, 1)
        .iter()
        .fold(LaurentPoly::zero(3), |acc, p| &acc + p);
    c.bench_function("borel_reduce on a dense N=3 polynomial", |b| {
        b.iter(|| borel_reduce(black_box(&small), 3).unwrap())
    });
    let (l, m) = (
        Partition::new(vec![3, 2, 1]).unwrap(),
        Partition::new(vec![2, 2, 1]).unwrap(),
    );
    c.bench_function("littlewood-richardson (3,2,1)*(2,2,1)", |b| {
        b.iter(|| lr_expand(black_box(&l), black_box(&m), 4))
    });
}

fn k_theory(c: &mut Criterion) {
    c.bench_function("schur_v_class (3,3,2) on Gr(3,6)", |b| {
        b.iter(|| schur_v_class(black_box(&[3, 3, 2]), 3, 6).unwrap())
    });
    let k = Composition::new(vec![3, 3]).unwrap();
    c.bench_function("E and F matrices at 3,3", |b| {
        b.iter(|| (op_e(1, -1, black_box(&k)).unwrap(), op_f(1, 1, black_box(&k)).unwrap()))
    });
    c.bench_function("Kapranov Gram matrix of Gr(3,6)", |b| {
        b.iter(|| gram(3, 6, black_box(Collection::Kapranov)).unwrap())
    });
    c.bench_function("idempotent pair T'_1 at 2,2", |b| {
        let k = Composition::new(vec![2, 2]).unwrap();
        b.iter(|| build_pair(Family::Prime, 1, black_box(&k)).unwrap())
    });
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    g.bench_function("hecke N=3", |b| b.iter(|| verify_hecke(3, 2, 50, 7)));
    let k = Composition::new(vec![1, 1, 1]).unwrap();
    g.bench_function("idempotents at 1,1,1", |b| b.iter(|| verify_idempotents(black_box(&k))));
    g.bench_function("diagonal action on Gr(2,5)", |b| {
        b.iter(|| verify_diagonal_action(2, 5))
    });
    g.finish();
}

criterion_group!(benches, polynomials, k_theory, suites);
criterion_main!(benches);
