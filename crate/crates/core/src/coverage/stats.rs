use serde::{Deserialize, Serialize};

/// Revisit statistics of a single grid point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PointStats {
    /// Merged access intervals seen.
    pub access_count: usize,
    /// Start of the first access (s).
    pub first_access: Option<f64>,
    /// Longest gap between consecutive accesses (s).
    pub max_gap: Option<f64>,
    pub gap_count: usize,
    pub gap_sum: f64,
}

impl PointStats {
    /// Statistics of one point's raw access intervals, merging any that
    /// overlap or sit within `merge_tol` of each other.
    pub fn from_intervals(intervals: &[(f64, f64)], merge_tol: f64) -> Self {
        let mut acc = PointAccumulator::new(false);
        for &(s, e) in intervals {
            acc.push_pending(s, e);
        }
        acc.finish(merge_tol).0
    }
}

/// Streams access intervals of one grid point, merging overlaps.
///
/// Intervals must arrive sorted by start time.
#[derive(Debug, Clone, Default)]
pub(crate) struct PointAccumulator {
    open: Option<(f64, f64)>,
    stats: PointStats,
    pending: Vec<(f64, f64)>,
    intervals: Option<Vec<(f64, f64)>>,
}

impl PointAccumulator {
    pub(crate) fn new(keep_intervals: bool) -> Self {
        PointAccumulator {
            intervals: keep_intervals.then(Vec::new),
            ..Default::default()
        }
    }

    pub(crate) fn push_pending(&mut self, start: f64, end: f64) {
        self.pending.push((start, end));
    }

    /// Merge every pending interval starting before `watermark`.
    pub(crate) fn flush(&mut self, watermark: f64, tol: f64) {
        if self.pending.is_empty() {
            return;
        }
        self.pending
            .sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let ready = self.pending.partition_point(|p| p.0 < watermark);
        let drained: Vec<_> = self.pending.drain(..ready).collect();
        for (s, e) in drained {
            self.feed(s, e, tol);
        }
    }

    fn feed(&mut self, start: f64, end: f64, tol: f64) {
        let Some((s0, e0)) = self.open else {
            self.stats.first_access = Some(start);
            self.open = Some((start, end));
            return;
        };
        if start <= e0 + tol {
            self.open = Some((s0, e0.max(end)));
            return;
        }
        let gap = start - e0;
        self.stats.gap_count += 1;
        self.stats.gap_sum += gap;
        self.stats.max_gap = Some(self.stats.max_gap.map_or(gap, |g| g.max(gap)));
        self.close(s0, e0);
        self.open = Some((start, end));
    }

    fn close(&mut self, s: f64, e: f64) {
        self.stats.access_count += 1;
        if let Some(v) = &mut self.intervals {
            v.push((s, e));
        }
    }

    pub(crate) fn finish(mut self, tol: f64) -> (PointStats, Option<Vec<(f64, f64)>>) {
        self.flush(f64::INFINITY, tol);
        if let Some((s, e)) = self.open.take() {
            self.close(s, e);
        }
        (self.stats, self.intervals)
    }
}

/// Aggregate revisit figures over a latitude ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevisitReport {
    /// Maximum revisit time over all points (h); `None` when the window is too
    /// short to observe a revisit everywhere.
    pub mrt_hours: Option<f64>,
    /// Mean of all revisit gaps pooled over the ring (h).
    pub art_hours: Option<f64>,
    /// Fraction of points accessed at least once.
    pub coverage_fraction: f64,
    /// Time by which every point has been accessed (h).
    pub time_to_full_coverage_hours: Option<f64>,
    pub point_count: usize,
    pub uncovered_count: usize,
    pub pass_count: usize,
    pub gap_count: usize,
    /// Some point was never accessed, or none was accessed twice.
    pub window_exceeded: bool,
}

/// Reduce per-point statistics into a [`RevisitReport`].
pub fn revisit_stats(points: &[PointStats], pass_count: usize) -> RevisitReport {
    let point_count = points.len();
    let uncovered_count = points.iter().filter(|p| p.access_count == 0).count();
    let gap_count: usize = points.iter().map(|p| p.gap_count).sum();
    let gap_sum: f64 = points.iter().map(|p| p.gap_sum).sum();
    let max_gap = points.iter().filter_map(|p| p.max_gap).reduce(f64::max);
    let window_exceeded = uncovered_count > 0 || gap_count == 0;
    let ttc = if uncovered_count == 0 {
        points
            .iter()
            .filter_map(|p| p.first_access)
            .reduce(f64::max)
    } else {
        None
    };
    RevisitReport {
        mrt_hours: if window_exceeded {
            None
        } else {
            max_gap.map(|g| g / 3600.0)
        },
        art_hours: (gap_count > 0).then(|| gap_sum / gap_count as f64 / 3600.0),
        coverage_fraction: if point_count == 0 {
            0.0
        } else {
            (point_count - uncovered_count) as f64 / point_count as f64
        },
        time_to_full_coverage_hours: ttc.map(|t| t / 3600.0),
        point_count,
        uncovered_count,
        pass_count,
        gap_count,
        window_exceeded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(intervals: &[(f64, f64)], tol: f64) -> (PointStats, Vec<(f64, f64)>) {
        let mut acc = PointAccumulator::new(true);
        for &(s, e) in intervals {
            acc.push_pending(s, e);
        }
        let (st, iv) = acc.finish(tol);
        (st, iv.unwrap())
    }

    #[test]
    fn merges_and_measures_gaps() {
        let (st, iv) = run(
            &[
                (100.0, 110.0),
                (0.0, 10.0),
                (9.0, 20.0),
                (20.5, 30.0),
                (50.0, 60.0),
            ],
            1.0,
        );
        assert_eq!(iv, vec![(0.0, 30.0), (50.0, 60.0), (100.0, 110.0)]);
        assert_eq!(st.access_count, 3);
        assert_eq!(st.gap_count, 2);
        assert_eq!(st.max_gap, Some(40.0));
        assert_eq!(st.gap_sum, 60.0);
        assert_eq!(st.first_access, Some(0.0));
    }

    #[test]
    fn staged_flush_matches_single_pass() {
        let all = [
            (0.0, 10.0),
            (30.0, 40.0),
            (35.0, 45.0),
            (90.0, 95.0),
            (200.0, 201.0),
        ];
        let mut acc = PointAccumulator::new(true);
        acc.push_pending(30.0, 40.0);
        acc.push_pending(0.0, 10.0);
        acc.flush(32.0, 0.0);
        acc.push_pending(35.0, 45.0);
        acc.push_pending(200.0, 201.0);
        acc.flush(100.0, 0.0);
        acc.push_pending(90.0, 95.0);
        let staged = acc.finish(0.0);
        let (st, iv) = run(&all, 0.0);
        assert_eq!(staged.0, st);
        assert_eq!(staged.1.unwrap(), iv);
    }

    #[test]
    fn report_sentinel() {
        let covered = PointStats {
            access_count: 2,
            first_access: Some(3600.0),
            max_gap: Some(7200.0),
            gap_count: 1,
            gap_sum: 7200.0,
        };
        let r = revisit_stats(&[covered, covered], 10);
        assert_eq!(r.mrt_hours, Some(2.0));
        assert_eq!(r.art_hours, Some(2.0));
        assert_eq!(r.time_to_full_coverage_hours, Some(1.0));
        assert!(!r.window_exceeded);

        let r = revisit_stats(&[covered, PointStats::default()], 10);
        assert!(r.window_exceeded);
        assert_eq!(r.mrt_hours, None);
        assert_eq!(r.coverage_fraction, 0.5);
        assert_eq!(r.time_to_full_coverage_hours, None);

        let once = PointStats {
            access_count: 1,
            first_access: Some(0.0),
            ..Default::default()
        };
        let r = revisit_stats(&[once], 1);
        assert!(r.window_exceeded);
        assert_eq!(r.art_hours, None);
    }
}
