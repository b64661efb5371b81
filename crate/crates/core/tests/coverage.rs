use std::f64::consts::PI;

use proptest::prelude::*;
use revisit_core::coverage::*;
use revisit_core::pass_schedule::*;
use revisit_core::sensor::{radius_at_latitude, resolve_footprint};
use revisit_core::{EarthConstants, Parallelism, SensorSpec};

const E: EarthConstants = EarthConstants::WGS84;

fn deg(x: f64) -> f64 {
    x.to_radians()
}

fn quick(window_days: f64, grid_deg: f64) -> CoverageSettings {
    CoverageSettings {
        window: window_days * 86_400.0,
        grid_resolution: deg(grid_deg),
        segment_samples: 400,
        ..CoverageSettings::default()
    }
}

#[test]
fn single_gap_example() {
    let h = 3600.0;
    let st = PointStats::from_intervals(&[(10.0 * h, 11.0 * h), (0.0, h)], 1.0);
    assert_eq!(st.max_gap, Some(9.0 * h));
    let r = revisit_stats(&[st], 2);
    assert_eq!(r.mrt_hours, Some(9.0));
    assert_eq!(r.art_hours, Some(9.0));
    assert_eq!(r.coverage_fraction, 1.0);
}

#[test]
fn empty_table_is_sentinel() {
    let r = revisit_stats(&[PointStats::default(); 4], 0);
    assert_eq!(r.coverage_fraction, 0.0);
    assert_eq!(r.mrt_hours, None);
    assert!(r.window_exceeded);
}

/// Visible grid points of one pass, from the ellipse test evaluated at every
/// sample of a dense segment.
fn dense_visible(
    pass: &Pass,
    seg: &TrackSegment,
    theta: f64,
    lambda: f64,
    lat: f64,
    grid: &LongitudeGrid,
) -> usize {
    let mut hit = vec![false; grid.len()];
    for s in &seg.samples {
        let dlat = lat - s.lat;
        if dlat.abs() > theta {
            continue;
        }
        let centre = pass.longitude + s.dlon;
        for (j, lon) in grid.longitudes().enumerate() {
            if hit[j] {
                continue;
            }
            let dlon = wrap_pi(lon - centre);
            if dlon.abs() <= lambda && in_footprint(dlon, dlat, lambda, theta) {
                hit[j] = true;
            }
        }
    }
    hit.iter().filter(|h| **h).count()
}

#[test]
fn visible_counts_match_dense_sampling() {
    let el = OrbitElements::circular(
        &E,
        500.0,
        E.sso_inclination(E.equatorial_radius + 500.0, 0.0).unwrap(),
    );
    let lat = deg(40.0);
    let sensor = SensorSpec::boresight_deg(45.0);
    let rates = TrackRates::new(&E, &el, NodalPeriodForm::Standard);
    let grid = build_grid(deg(0.1)).unwrap();
    let (tracks, fps) =
        branch_tracks(&E, &el, &sensor, lat, &rates, 1000, FootprintShape::Ellipse).unwrap();
    let r = radius_at_latitude(&el, lat).unwrap();
    let set = pass_series(&el, lat, &rates, 86_400.0).unwrap();
    for (k, pass) in set.passes.iter().enumerate().step_by(3) {
        let d = pass.direction.index();
        let radius = [r.radius_ascending, r.radius_descending][d];
        let fp = resolve_footprint(&E, &sensor, radius, lat).unwrap();
        assert_eq!(fp, fps[d]);
        let dense = ground_track_segment(&el, lat, fp.ground_range, &rates, pass.direction, 10_001)
            .unwrap();
        let want = dense_visible(pass, &dense, fp.ground_range, fp.dihedral_half, lat, &grid);
        let got = pass_accesses(pass, &tracks[d], &grid)
            .iter(&grid, f64::INFINITY)
            .count();
        assert!(
            (got as i64 - want as i64).abs() <= 1,
            "pass {k}: engine {got} vs dense {want}"
        );
    }
}

#[test]
fn sequential_and_parallel_are_identical() {
    let el = OrbitElements::circular(&E, 700.0, deg(98.19));
    let c = Constellation::walker(el, &WalkerConfig::new(4, 2, 1).unwrap());
    let sensor = SensorSpec::elevation_deg(30.0);
    let mut s = CoverageSettings {
        window: 10.0 * 86_400.0,
        keep_intervals: true,
        ..Default::default()
    };
    s.parallelism = Parallelism::Sequential;
    let a = analyze(&E, &c, &sensor, deg(35.0), &s).unwrap();
    s.parallelism = Parallelism::Parallel;
    let b = analyze(&E, &c, &sensor, deg(35.0), &s).unwrap();
    let again = analyze(&E, &c, &sensor, deg(35.0), &s).unwrap();
    assert_eq!(a.report, b.report);
    assert_eq!(a.points, b.points);
    assert_eq!(a.intervals, b.intervals);
    assert_eq!(b.intervals, again.intervals);
}

#[test]
fn intervals_respect_table_invariants() {
    let el = OrbitElements::circular(&E, 550.0, deg(53.0));
    let s = CoverageSettings {
        window: 5.0 * 86_400.0,
        keep_intervals: true,
        ..Default::default()
    };
    let res = analyze(
        &E,
        &Constellation::single(el),
        &SensorSpec::elevation_deg(10.0),
        deg(20.0),
        &s,
    )
    .unwrap();
    for iv in res.intervals.unwrap() {
        for &(a, b) in &iv {
            assert!(0.0 <= a && a <= b && b <= s.window);
        }
        for w in iv.windows(2) {
            assert!(w[1].0 > w[0].1);
        }
    }
}

#[test]
fn start_anomaly_barely_moves_mrt() {
    let sensor = SensorSpec::elevation_deg(10.0);
    let s = CoverageSettings::default();
    let mut base = OrbitElements::circular(&E, 400.0, deg(20.0));
    let reference = analyze(&E, &Constellation::single(base), &sensor, 0.0, &s)
        .unwrap()
        .report
        .mrt_hours
        .unwrap();
    for nu in [90.0, 200.0, 333.0] {
        base.true_anomaly = deg(nu);
        let m = analyze(&E, &Constellation::single(base), &sensor, 0.0, &s)
            .unwrap()
            .report
            .mrt_hours
            .unwrap();
        assert!((m - reference).abs() < 0.02, "nu={nu}: {m} vs {reference}");
    }
}

#[test]
fn walker_single_matches_plain_single() {
    let el = OrbitElements::circular(&E, 800.0, deg(60.0));
    let s = quick(20.0, 0.2);
    let sensor = SensorSpec::elevation_deg(10.0);
    let a = analyze(&E, &Constellation::single(el), &sensor, 0.3, &s).unwrap();
    let b = analyze(
        &E,
        &Constellation::walker(el, &WalkerConfig::new(1, 1, 0).unwrap()),
        &sensor,
        0.3,
        &s,
    )
    .unwrap();
    assert_eq!(a.points, b.points);
}

#[test]
fn unreachable_latitude_and_pole_overlap() {
    let el = OrbitElements::circular(&E, 500.0, deg(30.0));
    let s = quick(2.0, 1.0);
    let err = analyze(
        &E,
        &Constellation::single(el),
        &SensorSpec::elevation_deg(10.0),
        deg(50.0),
        &s,
    )
    .unwrap_err();
    assert!(matches!(
        err,
        revisit_core::RevisitError::LatitudeUnreachable { .. }
    ));
    let polar = OrbitElements::circular(&E, 1500.0, deg(88.0));
    let err = analyze(
        &E,
        &Constellation::single(polar),
        &SensorSpec::elevation_deg(0.0),
        deg(80.0),
        &s,
    )
    .unwrap_err();
    assert!(matches!(
        err,
        revisit_core::RevisitError::PoleOverlap { .. }
    ));
}

fn arb_case() -> impl Strategy<Value = (OrbitElements, f64)> {
    (400.0..1200.0f64, 20.0..100.0f64, 0.0..0.9f64, -PI..PI).prop_map(|(h, i, frac, raan)| {
        let el = OrbitElements::circular(&E, h, deg(i)).with_raan(raan);
        let max_lat = el.inclination.sin().asin().min(deg(70.0));
        (el, frac * max_lat)
    })
}

fn max_access(res: &CoverageResult) -> f64 {
    res.intervals
        .as_ref()
        .unwrap()
        .iter()
        .flatten()
        .map(|(a, b)| b - a)
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wider_cone_never_worse((el, lat) in arb_case(), psi in 5.0..40.0f64, extra in 0.5..15.0f64) {
        let s = quick(8.0, 0.5);
        let c = Constellation::single(el);
        let narrow = analyze(&E, &c, &SensorSpec::boresight_deg(psi), lat, &s);
        let wide = analyze(&E, &c, &SensorSpec::boresight_deg(psi + extra), lat, &s);
        let (Ok(narrow), Ok(wide)) = (narrow, wide) else { return Ok(()) };
        prop_assume!(!wide.footprints[0].clamped && !wide.footprints[1].clamped);
        if let Some(m1) = narrow.report.mrt_hours {
            let m2 = wide.report.mrt_hours;
            prop_assert!(m2.is_some(), "wider cone lost coverage");
            // access edges move by at most one sample step on each segment
            let tol = 2.0 * (8.0 * 86_400.0 / 400.0) / 3600.0;
            prop_assert!(m2.unwrap() <= m1 + tol, "{} > {}", m2.unwrap(), m1);
        }
    }

    #[test]
    fn more_satellites_never_worse((el, lat) in arb_case(), eps in 0.0..40.0f64, extra in 1usize..3) {
        let s = quick(8.0, 0.5);
        let sensor = SensorSpec::elevation_deg(eps);
        let planes = |n: usize| vec![PlaneOverride {
            raan_offset: 0.0,
            phase_leads: (0..n).map(|k| k as f64 * 2.0 * PI / 3.0).collect(),
        }];
        let few = analyze(&E, &Constellation::custom(el, &planes(1)).unwrap(), &sensor, lat, &s);
        let more = analyze(&E, &Constellation::custom(el, &planes(1 + extra)).unwrap(), &sensor, lat, &s);
        let (Ok(few), Ok(more)) = (few, more) else { return Ok(()) };
        prop_assert!(more.report.coverage_fraction >= few.report.coverage_fraction);
        if let (Some(a), Some(b)) = (few.report.mrt_hours, more.report.mrt_hours) {
            prop_assert!(b <= a + 1e-9, "{b} > {a}");
        }
        if few.report.mrt_hours.is_some() {
            prop_assert!(more.report.mrt_hours.is_some());
        }
    }

    #[test]
    fn art_not_above_mrt((el, lat) in arb_case(), eps in 0.0..40.0f64) {
        let s = quick(6.0, 1.0);
        if let Ok(r) = analyze(&E, &Constellation::single(el), &SensorSpec::elevation_deg(eps), lat, &s) {
            if let (Some(m), Some(a)) = (r.report.mrt_hours, r.report.art_hours) {
                prop_assert!(a <= m);
            }
            if r.report.time_to_full_coverage_hours.is_some() {
                prop_assert_eq!(r.report.coverage_fraction, 1.0);
            }
        }
    }

    #[test]
    fn rotation_invariance((el, lat) in arb_case(), eps in 0.0..30.0f64, cells in -500i64..500, frac in 0.0..1.0f64) {
        let grid = build_grid(deg(0.5)).unwrap();
        let window = 6.0 * 86_400.0;
        let rates = TrackRates::new(&E, &el, NodalPeriodForm::Standard);
        let Ok((tracks, _)) = branch_tracks(&E, &el, &SensorSpec::elevation_deg(eps), lat, &rates, 400, FootprintShape::Ellipse) else {
            return Ok(());
        };
        let passes = pass_series(&el, lat, &rates, window).unwrap();
        let run = |p: &PassSet| {
            let (pts, iv) = evaluate_passes(p, &tracks, &grid, window, Parallelism::Sequential, true);
            (revisit_stats(&pts, p.len()), iv.unwrap())
        };
        let (base, iv) = run(&passes);
        let (whole, _) = run(&passes.rotated(cells as f64 * grid.spacing()));
        prop_assert_eq!(base.mrt_hours, whole.mrt_hours);
        prop_assert_eq!(base.coverage_fraction, whole.coverage_fraction);
        let (part, _) = run(&passes.rotated((cells as f64 + frac) * grid.spacing()));
        if let (Some(a), Some(b)) = (base.mrt_hours, part.mrt_hours) {
            let longest = iv.iter().flatten().map(|(s, e)| e - s).fold(0.0, f64::max);
            prop_assert!((a - b).abs() * 3600.0 <= longest + 1e-6, "{a} vs {b}, longest access {longest} s");
        }
    }
}

#[test]
fn max_access_is_minutes() {
    let el = OrbitElements::circular(&E, 500.0, deg(97.4));
    let s = CoverageSettings {
        keep_intervals: true,
        ..quick(3.0, 0.5)
    };
    let r = analyze(
        &E,
        &Constellation::single(el),
        &SensorSpec::boresight_deg(45.0),
        deg(40.0),
        &s,
    )
    .unwrap();
    let m = max_access(&r);
    assert!(m > 60.0 && m < 900.0, "{m}");
}
