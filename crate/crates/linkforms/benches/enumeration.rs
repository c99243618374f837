use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use linkforms::{automorphisms, baut, boundary_form, BautOptions, Exec, SearchOptions};
use zforms::{aut_group_with, x_form};

fn bench_modes(c: &mut Criterion) {
    let modes = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

    let mut group = c.benchmark_group("lattice_automorphisms");
    for n in [4i64, 5] {
        let gram = x_form(n).scale(2).symmetrize();
        for (name, exec) in modes {
            group.bench_with_input(BenchmarkId::new(name, n), &gram, |b, g| {
                b.iter(|| aut_group_with(g, exec).unwrap().len())
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("linking_form_automorphisms");
    for n in [3i64, 4] {
        let form = boundary_form(&x_form(n).scale(2)).unwrap().form().clone();
        for (name, exec) in modes {
            let opts = SearchOptions { exec, ..SearchOptions::default() };
            group.bench_with_input(BenchmarkId::new(name, n), &form, |b, f| {
                b.iter(|| automorphisms(f, opts).unwrap().len())
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("baut");
    group.sample_size(10);
    let theta = x_form(4).scale(2);
    for (name, exec) in modes {
        let opts = BautOptions { exec, ..BautOptions::default() };
        group.bench_function(name, |b| b.iter(|| baut(&theta, opts).unwrap().orbit_count));
    }
    group.finish();
}

criterion_group!(benches, bench_modes);
criterion_main!(benches);
