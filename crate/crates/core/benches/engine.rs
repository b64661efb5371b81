use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use revisit_core::coverage::{
    analyze, branch_tracks, build_grid, pass_accesses, CoverageSettings, FootprintShape,
};
use revisit_core::oracle::{simulate_ring, SimConfig};
use revisit_core::pass_schedule::{pass_series, NodalPeriodForm, TrackRates};
use revisit_core::{
    Constellation, EarthConstants, OrbitElements, Parallelism, SensorSpec, WalkerConfig,
};

const E: EarthConstants = EarthConstants::WGS84;

fn modes() -> Vec<(&'static str, Parallelism)> {
    let mut m = vec![("sequential", Parallelism::Sequential)];
    if Parallelism::is_available() {
        m.push(("parallel", Parallelism::Parallel));
    }
    m
}

fn pass_access(c: &mut Criterion) {
    let el = OrbitElements::circular(&E, 700.0, 98.19f64.to_radians());
    let lat = 40f64.to_radians();
    let rates = TrackRates::new(&E, &el, NodalPeriodForm::Standard);
    let grid = build_grid(0.1f64.to_radians()).unwrap();
    let sensor = SensorSpec::elevation_deg(20.0);
    let (tracks, _) =
        branch_tracks(&E, &el, &sensor, lat, &rates, 1000, FootprintShape::Ellipse).unwrap();
    let passes = pass_series(&el, lat, &rates, 86_400.0).unwrap();
    let pass = passes.passes[0];
    c.bench_function("pass_accesses", |b| {
        b.iter(|| pass_accesses(black_box(&pass), &tracks[pass.direction.index()], &grid))
    });
}

fn full_case(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    group.sample_size(20);
    let cases = [
        (
            "single",
            Constellation::single(OrbitElements::circular(&E, 800.0, 60f64.to_radians())),
        ),
        (
            "walker_24_3_1",
            Constellation::walker(
                OrbitElements::circular(&E, 800.0, 60f64.to_radians()),
                &WalkerConfig::new(24, 3, 1).unwrap(),
            ),
        ),
    ];
    let sensor = SensorSpec::elevation_deg(10.0);
    for (name, constellation) in &cases {
        for (mode, parallelism) in modes() {
            let settings = CoverageSettings {
                parallelism,
                ..CoverageSettings::default()
            };
            group.bench_with_input(BenchmarkId::new(*name, mode), &settings, |b, s| {
                b.iter(|| analyze(&E, constellation, &sensor, 0.5, s).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_one_day");
    group.sample_size(10);
    let constellation =
        Constellation::single(OrbitElements::circular(&E, 800.0, 60f64.to_radians()));
    let sensor = SensorSpec::elevation_deg(10.0);
    let grid = build_grid(1f64.to_radians()).unwrap();
    for (mode, parallelism) in modes() {
        let cfg = SimConfig {
            window: 86_400.0,
            parallelism,
            ..SimConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(mode), &cfg, |b, cfg| {
            b.iter(|| simulate_ring(&E, &constellation, &sensor, 0.5, &grid, cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, pass_access, full_case, oracle);
criterion_main!(benches);
