use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qgreen_core::green::{apply, green_images};
use qgreen_core::presentation::{chevalley_presentation, green_presentation, RankParams};
use qgreen_core::rewrite::RewriteSystem;
use qgreen_core::verify::{self, FockConvention, SymbolicConfig};

fn completion(c: &mut Criterion) {
    for (m, n) in [(1, 1), (2, 1)] {
        let rank = RankParams::new(m, n).unwrap();
        let rs = RewriteSystem::orient(&chevalley_presentation(rank)).unwrap();
        c.bench_function(&format!("complete chevalley ({m},{n})"), |b| b.iter(|| black_box(rs.complete(10, 5000))));
    }
}

fn reduction(c: &mut Criterion) {
    let rank = RankParams::new(2, 1).unwrap();
    let rs = verify::chevalley_system(rank, SymbolicConfig::default()).unwrap();
    let images = green_images(rank);
    let targets: Vec<_> = green_presentation(rank).relations.iter().map(|r| apply(&images, &r.body)).collect();
    c.bench_function("reduce green relations (2,1)", |b| {
        b.iter(|| targets.iter().map(|x| rs.reduce(black_box(x), 10, false).steps).sum::<usize>())
    });
}

fn fock(c: &mut Criterion) {
    let rank = RankParams::new(1, 2).unwrap();
    c.bench_function("fock build and check (1,2) cutoff 8", |b| {
        b.iter(|| {
            let rep = verify::build_fock_rep(rank, 8, 1.1, FockConvention::QKlein).unwrap();
            verify::check_rep(&rep, &green_presentation(rank)).unwrap().max_residual()
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = completion, reduction, fock
}
criterion_main!(benches);
