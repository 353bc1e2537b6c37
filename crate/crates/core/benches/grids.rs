//! Benchmarks of the verification grids: the data-parallel path (rayon,
//! default features) against a plain sequential loop over the same cells.
//! Build without default features to force both variants sequential.

use criterion::{criterion_group, criterion_main, Criterion};
use superpds::coeff::Coefficient;
use superpds::contact::{k4_field, BracketFamily, HMode, K4Family, K4Label, K4_LABELS};
use superpds::gamma::{
    build_gamma, gamma_alpha_generators, hom_check, phi_images, sigma_of_alpha, GammaVariant,
    PoissonTarget, TargetAlgebra,
};
use superpds::psymbols::PSymbol;
use superpds::weyl::embed_i;

/// Sequential twin of the homomorphism grid: same per-pair work, one cell
/// at a time.
fn hom_grid_sequential() -> usize {
    let alpha = Coefficient::alpha();
    let source = build_gamma(sigma_of_alpha(&alpha));
    let gens = gamma_alpha_generators(&alpha, GammaVariant::Poisson, -12);
    let images = phi_images(&gens, |e, c| e.scale(c));
    let target = PoissonTarget;
    let img = |b| {
        images
            .iter()
            .find(|(x, _)| *x == b)
            .map(|(_, e)| e)
            .unwrap()
    };
    let basis = superpds::gamma::GammaBasis::all();
    let mut failures = 0;
    for a in &basis {
        for b in &basis {
            let lhs = target.bracket(img(*a), img(*b));
            let mut rhs = target.zero();
            for (k, c) in source.bracket_basis(*a, *b) {
                rhs = target.add(&rhs, &target.scale(img(*k), c));
            }
            if target.check_eq(&lhs, &rhs).is_err() {
                failures += 1;
            }
        }
    }
    failures
}

fn hom_grid_parallel() -> usize {
    let alpha = Coefficient::alpha();
    let source = build_gamma(sigma_of_alpha(&alpha));
    let gens = gamma_alpha_generators(&alpha, GammaVariant::Poisson, -12);
    let images = phi_images(&gens, |e, c| e.scale(c));
    hom_check(&source, &images, &PoissonTarget).failures.len()
}

/// One cell of the matrix-embedding grid.
fn embed_cell(la: K4Label, n: i64, lb: K4Label, k: i64) -> bool {
    let fam = K4Family;
    let sym = |l: K4Label, m: i64| k4_field(l, m, HMode::Zero, 0).unwrap_or_else(|_| PSymbol::zero());
    let br = sym(la, n).poisson_bracket(&sym(lb, k)).unwrap();
    let dec = fam.decompose(&br).unwrap();
    let mut expected = superpds::weyl::WeylSuperMatrix::zero();
    for (l, m, c) in dec {
        expected = expected.add(&embed_i(l, m).scale(&c));
    }
    expected = expected.add(
        &superpds::weyl::WeylSuperMatrix::identity()
            .scale(&superpds::contact::k4_cocycle().eval(la, n, lb, k)),
    );
    embed_i(la, n).bracket(&embed_i(lb, k)).unwrap() == expected
}

fn embed_grid_cells() -> Vec<(K4Label, i64, K4Label, i64)> {
    let mut cells = Vec::new();
    for la in K4_LABELS {
        for lb in K4_LABELS {
            for n in -1..=1 {
                for k in -1..=1 {
                    cells.push((la, n, lb, k));
                }
            }
        }
    }
    cells
}

fn bench_grids(c: &mut Criterion) {
    let mut group = c.benchmark_group("hom-grid");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| assert_eq!(hom_grid_sequential(), 0))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| assert_eq!(hom_grid_parallel(), 0))
    });
    group.finish();

    let mut group = c.benchmark_group("embed-grid");
    group.sample_size(10);
    let cells = embed_grid_cells();
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let ok = superpds::seq_map(cells.clone(), |(la, n, lb, k)| embed_cell(la, n, lb, k));
            assert!(ok.into_iter().all(|x| x));
        })
    });
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let ok =
                superpds::maybe_par_map(cells.clone(), |(la, n, lb, k)| embed_cell(la, n, lb, k));
            assert!(ok.into_iter().all(|x| x));
        })
    });
    group.finish();
}

criterion_group!(benches, bench_grids);
criterion_main!(benches);
