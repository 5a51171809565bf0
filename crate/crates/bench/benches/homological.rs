use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sacat::abelian::{smith_normal_form, IntMatrix};
use sacat::cohomology::{extension_of_cocycle, h2_cohomology};
use sacat::extensions::baer_sum;
use sacat::homology::{h2, h2_modular_structure};
use sacat::theorems::{hochschild_serre, universal_coefficients};
use sacat_bench::{coeff, group};

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("h2");
    for spec in ["C2xC2", "Q8", "D4xC2", "S4"] {
        let y = group(spec);
        g.bench_with_input(BenchmarkId::from_parameter(spec), &y, |b, y| b.iter(|| h2(black_box(y)).unwrap()));
    }
    g.finish();
    let a5 = group("A5");
    c.bench_function("h2_modular/A5", |b| b.iter(|| h2_modular_structure(black_box(&a5)).unwrap()));
}

fn cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("h2_cohomology");
    for (y, a) in [("C2xC2", "C2"), ("D4", "C4"), ("C2xC2xC2xC2", "C2xC2")] {
        let (y, a) = (group(y), coeff(a));
        g.bench_function(format!("{}/{}", y.label(), a.label()), |b| b.iter(|| h2_cohomology(&y, &a).unwrap()));
    }
    g.finish();
}

fn extensions(c: &mut Criterion) {
    let (y, a) = (group("C2xC2xC2"), coeff("C2"));
    let h = h2_cohomology(&y, &a).unwrap();
    let classes: Vec<_> = h.classes().take(2).map(|k| extension_of_cocycle(&h.cocycle(&k))).collect();
    c.bench_function("baer_sum/C2^3", |b| b.iter(|| baer_sum(&classes[0], &classes[1]).unwrap()));
}

fn sequences(c: &mut Criterion) {
    let q8 = group("Q8");
    let z = sacat::groups::center(&q8);
    let (_, pi) = sacat::groups::quotient(&q8, &z).unwrap();
    let e = sacat::extensions::make_extension(pi).unwrap();
    let a = coeff("C2");
    c.bench_function("hochschild_serre/Q8", |b| b.iter(|| hochschild_serre(&e, &a).unwrap()));
    let d4c2 = group("D4xC2");
    c.bench_function("uct/D4xC2", |b| b.iter(|| universal_coefficients(&d4c2, &a).unwrap()));
}

fn snf(c: &mut Criterion) {
    let n = 40;
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| ((i * 7 + j * 13) % 11) as i64 - 5).collect()).collect();
    let m = IntMatrix::from_i64(n, n, &rows);
    c.bench_function("smith_normal_form/40", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

criterion_group!(benches, homology, cohomology, extensions, sequences, snf);
criterion_main!(benches);
