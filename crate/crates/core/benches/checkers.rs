use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use twisted_calculus::calculus::form_basis;
use twisted_calculus::{CheckReport, Exec, OrderingSpec, RealizationContext, StructureConstants};

fn context(id: &str, exec: Exec) -> RealizationContext {
    let lie = StructureConstants::from_catalog(id).unwrap();
    RealizationContext::new(lie, &OrderingSpec::Symmetric, 6, 4, exec).unwrap()
}

fn compare(c: &mut Criterion, name: &str, id: &str, check: impl Fn(&RealizationContext) -> CheckReport + Copy) {
    let mut group = c.benchmark_group(format!("{name}/{id}"));
    group.sample_size(10);
    for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(label, |b| {
            b.iter_batched(|| context(id, exec), |ctx| assert!(check(&ctx).pass), BatchSize::PerIteration)
        });
    }
    group.finish();
}

fn checkers(c: &mut Criterion) {
    compare(c, "relations", "su2", |ctx| ctx.check_relations());
    compare(c, "phitilde_homomorphism", "su2", |ctx| ctx.check_phitilde_homomorphism());
    compare(c, "dhat_squared", "sl2", |ctx| ctx.check_dhat_squared(&form_basis(3, 4)));
    compare(c, "graded_rule", "kappa:3:1", |ctx| ctx.check_graded_rule(&form_basis(3, 4)));
    compare(c, "star_associativity", "su2", |ctx| ctx.check_star_associativity(2));
}

criterion_group!(benches, checkers);
criterion_main!(benches);
