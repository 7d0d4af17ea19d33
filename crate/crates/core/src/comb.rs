//! Interaction graph induced by a mode-locked pump comb driving an OPO.
//!
//! Signal mode `j` sits at frequency `omega0 + j * spacing`; pump component
//! `s` sits at `2 * omega0 + s * spacing`. Energy conservation couples the
//! signal pair `(j, k)` through pump `s` exactly when `j + k = s`, so each
//! pump tooth contributes one skew diagonal of ones to the adjacency
//! matrix; `2j = s` gives mode `j` a degenerate (self-loop) interaction.
//! A pump comb covering every reachable sum therefore produces the uniform
//! all-ones matrix.
//!
//! The phase-matching window restricts which signal modes take part;
//! signals outside it are dropped and reported. Pump components are not
//! window-filtered. A repetition-rate/free-spectral-range mismatch is
//! modeled only as a validity flag: unmatched grids refuse to build.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::graphs::{allones_graph, InteractionGraph};
use crate::{Error, Result};

/// Frequency-comb layout: base signal frequency, tooth spacing, and the
/// signal/pump index sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeGrid {
    omega0: f64,
    spacing: f64,
    signal_indices: Vec<i64>,
    pump_indices: Vec<i64>,
    #[serde(default = "default_true")]
    fsr_matched: bool,
}

fn default_true() -> bool {
    true
}

impl ModeGrid {
    /// Build a grid. Signal indices must be non-empty and duplicate-free;
    /// the pump set may be empty (no interactions). Both sets are stored
    /// sorted.
    pub fn new(
        omega0: f64,
        spacing: f64,
        signal_indices: Vec<i64>,
        pump_indices: Vec<i64>,
    ) -> Result<Self> {
        if !omega0.is_finite() {
            return Err(Error::InvalidArgument("omega0 must be finite".into()));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "spacing must be positive and finite, got {spacing}"
            )));
        }
        if signal_indices.is_empty() {
            return Err(Error::InvalidArgument(
                "signal index set must be non-empty".into(),
            ));
        }
        let mut signals = signal_indices;
        signals.sort_unstable();
        if signals.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(
                "signal indices must be duplicate-free".into(),
            ));
        }
        let mut pumps = pump_indices;
        pumps.sort_unstable();
        if pumps.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(
                "pump indices must be duplicate-free".into(),
            ));
        }
        Ok(ModeGrid {
            omega0,
            spacing,
            signal_indices: signals,
            pump_indices: pumps,
            fsr_matched: true,
        })
    }

    /// Mark whether the pump repetition rate matches the cavity free
    /// spectral range. Unmatched grids refuse to build a graph.
    pub fn with_fsr_matched(mut self, matched: bool) -> Self {
        self.fsr_matched = matched;
        self
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn signal_indices(&self) -> &[i64] {
        &self.signal_indices
    }

    pub fn pump_indices(&self) -> &[i64] {
        &self.pump_indices
    }

    pub fn fsr_matched(&self) -> bool {
        self.fsr_matched
    }

    pub fn signal_frequency(&self, j: i64) -> f64 {
        self.omega0 + j as f64 * self.spacing
    }

    pub fn pump_frequency(&self, s: i64) -> f64 {
        2.0 * self.omega0 + s as f64 * self.spacing
    }
}

/// Inclusive bounds on admissible signal indices set by the nonlinear
/// crystal's phase-matching bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseMatchWindow {
    lo: i64,
    hi: i64,
}

impl PhaseMatchWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "window bounds must satisfy lo <= hi, got [{lo}, {hi}]"
            )));
        }
        Ok(PhaseMatchWindow { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn contains(&self, j: i64) -> bool {
        self.lo <= j && j <= self.hi
    }
}

/// Result of building a pump-comb graph: the graph over retained signal
/// modes plus the bookkeeping of what the window removed.
#[derive(Debug, Clone, PartialEq)]
pub struct CombBuild {
    pub graph: InteractionGraph,
    /// Signal indices inside the window, in matrix row order.
    pub retained_signals: Vec<i64>,
    /// Signal indices dropped by the window.
    pub dropped_signals: Vec<i64>,
}

/// Build the interaction graph: over retained signals,
/// `A[j][k] = 1` iff `j + k` is a pump index.
pub fn pump_comb_graph(grid: &ModeGrid, window: &PhaseMatchWindow) -> Result<CombBuild> {
    if !grid.fsr_matched {
        return Err(Error::InvalidArgument(
            "pump repetition rate does not match the cavity free spectral range".into(),
        ));
    }
    let (retained, dropped): (Vec<i64>, Vec<i64>) = grid
        .signal_indices
        .iter()
        .partition(|&&j| window.contains(j));
    if retained.is_empty() {
        return Err(Error::InvalidArgument(
            "phase-matching window excludes every signal mode".into(),
        ));
    }
    let pumps: BTreeSet<i64> = grid.pump_indices.iter().copied().collect();
    let n = retained.len();
    let weights = DMatrix::from_fn(n, n, |a, b| {
        if pumps.contains(&(retained[a] + retained[b])) {
            1.0
        } else {
            0.0
        }
    });
    Ok(CombBuild {
        graph: InteractionGraph::from_weights(weights)?,
        retained_signals: retained,
        dropped_signals: dropped,
    })
}

/// Summary of how completely the pump comb realizes the uniform coupling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    /// Signal modes inside the window.
    pub n_signals: usize,
    /// Signal modes dropped by the window.
    pub n_dropped: usize,
    /// Unordered pairs `(j, k)`, `j < k`, with a realized coupling.
    pub realized_edges: usize,
    /// Modes with a degenerate (self-loop) coupling.
    pub degenerate_couplings: usize,
    /// Pair sums `j + k` not present in the pump set, ascending.
    pub missing_pump_sums: Vec<i64>,
    /// Whether the built graph equals the all-ones matrix.
    pub complete: bool,
}

/// Count realized and missing couplings without failing on sparse pumps.
pub fn coverage_report(grid: &ModeGrid, window: &PhaseMatchWindow) -> Result<CoverageReport> {
    let build = pump_comb_graph(grid, window)?;
    let retained = &build.retained_signals;
    let n = retained.len();
    let w = build.graph.weights();

    let mut realized_edges = 0;
    let mut degenerate = 0;
    let mut missing: BTreeSet<i64> = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            if w[(a, b)] == 1.0 {
                if a == b {
                    degenerate += 1;
                } else {
                    realized_edges += 1;
                }
            } else {
                missing.insert(retained[a] + retained[b]);
            }
        }
    }
    let complete = build.graph.weights() == allones_graph(n)?.weights();
    Ok(CoverageReport {
        n_signals: n,
        n_dropped: build.dropped_signals.len(),
        realized_edges,
        degenerate_couplings: degenerate,
        missing_pump_sums: missing.into_iter().collect(),
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(signals: Vec<i64>, pumps: Vec<i64>) -> ModeGrid {
        ModeGrid::new(1000.0, 1.0, signals, pumps).unwrap()
    }

    fn wide_window() -> PhaseMatchWindow {
        PhaseMatchWindow::new(-1000, 1000).unwrap()
    }

    #[test]
    fn full_pump_coverage_gives_all_ones() {
        let g = grid(vec![-1, 0, 1], (-2..=2).collect());
        let build = pump_comb_graph(&g, &wide_window()).unwrap();
        assert_eq!(build.graph.weights(), allones_graph(3).unwrap().weights());
        assert!(build.dropped_signals.is_empty());
    }

    #[test]
    fn single_pump_couples_one_pair() {
        let g = grid(vec![-1, 1], vec![0]);
        let build = pump_comb_graph(&g, &wide_window()).unwrap();
        let w = build.graph.weights();
        assert_eq!(w[(0, 1)], 1.0);
        assert_eq!(w[(1, 0)], 1.0);
        // 2*(+-1) is not a pump index, so no degenerate terms
        assert_eq!(w[(0, 0)], 0.0);
        assert_eq!(w[(1, 1)], 0.0);
    }

    #[test]
    fn single_degenerate_self_loop() {
        let g = grid(vec![0], vec![0]);
        let build = pump_comb_graph(&g, &wide_window()).unwrap();
        assert_eq!(build.graph.weights()[(0, 0)], 1.0);
    }

    #[test]
    fn frequencies() {
        let g = ModeGrid::new(100.0, 2.0, vec![-1, 3], vec![0]).unwrap();
        assert_eq!(g.signal_frequency(3), 106.0);
        assert_eq!(g.pump_frequency(0), 200.0);
        assert_eq!(g.pump_frequency(-1), 198.0);
    }

    #[test]
    fn window_drops_signals_and_can_empty_the_set() {
        let g = grid(vec![-5, -1, 0, 1, 7], (-10..=10).collect());
        let win = PhaseMatchWindow::new(-1, 1).unwrap();
        let build = pump_comb_graph(&g, &win).unwrap();
        assert_eq!(build.retained_signals, vec![-1, 0, 1]);
        assert_eq!(build.dropped_signals, vec![-5, 7]);
        assert_eq!(build.graph.n_modes(), 3);

        let win = PhaseMatchWindow::new(100, 200).unwrap();
        assert!(matches!(
            pump_comb_graph(&g, &win),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn pumps_are_not_window_filtered() {
        // the pump at s = 4 lies outside the signal window but still
        // couples (1, 3)... with signals {1, 3} retained
        let g = grid(vec![1, 3], vec![4]);
        let win = PhaseMatchWindow::new(0, 3).unwrap();
        let build = pump_comb_graph(&g, &win).unwrap();
        assert_eq!(build.graph.weights()[(0, 1)], 1.0);
    }

    #[test]
    fn unmatched_fsr_refuses() {
        let g = grid(vec![0, 1], vec![1]).with_fsr_matched(false);
        assert!(matches!(
            pump_comb_graph(&g, &wide_window()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn grid_validation() {
        assert!(ModeGrid::new(1.0, 0.0, vec![0], vec![]).is_err());
        assert!(ModeGrid::new(1.0, -2.0, vec![0], vec![]).is_err());
        assert!(ModeGrid::new(f64::NAN, 1.0, vec![0], vec![]).is_err());
        assert!(ModeGrid::new(1.0, 1.0, vec![], vec![0]).is_err());
        assert!(ModeGrid::new(1.0, 1.0, vec![0, 0], vec![]).is_err());
        assert!(ModeGrid::new(1.0, 1.0, vec![0], vec![2, 2]).is_err());
        assert!(PhaseMatchWindow::new(3, 2).is_err());
    }

    #[test]
    fn coverage_full_and_missing_and_empty() {
        let g = grid(vec![-1, 0, 1], (-2..=2).collect());
        let r = coverage_report(&g, &wide_window()).unwrap();
        assert!(r.complete);
        assert_eq!(r.realized_edges, 3);
        assert_eq!(r.degenerate_couplings, 3);
        assert!(r.missing_pump_sums.is_empty());

        // delete the pump at s = 0: exactly the skew diagonal j + k = 0
        let g = grid(vec![-1, 0, 1], vec![-2, -1, 1, 2]);
        let r = coverage_report(&g, &wide_window()).unwrap();
        assert!(!r.complete);
        assert_eq!(r.missing_pump_sums, vec![0]);
        let build = pump_comb_graph(&g, &wide_window()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let sum = build.retained_signals[a] + build.retained_signals[b];
                let want = if sum == 0 { 0.0 } else { 1.0 };
                assert_eq!(build.graph.weights()[(a, b)], want);
            }
        }

        // no pumps at all: zero matrix
        let g = grid(vec![-1, 0, 1], vec![]);
        let r = coverage_report(&g, &wide_window()).unwrap();
        assert!(!r.complete);
        assert_eq!(r.realized_edges, 0);
        assert_eq!(r.degenerate_couplings, 0);
        let build = pump_comb_graph(&g, &wide_window()).unwrap();
        assert!(build.graph.weights().iter().all(|&w| w == 0.0));
    }

    proptest! {
        /// Covering every pair sum yields exactly the all-ones graph.
        #[test]
        fn completeness(signals in proptest::collection::btree_set(-20i64..20, 1..=8)) {
            let signals: Vec<i64> = signals.into_iter().collect();
            let pumps: BTreeSet<i64> = signals
                .iter()
                .flat_map(|&j| signals.iter().map(move |&k| j + k))
                .collect();
            let g = grid(signals.clone(), pumps.into_iter().collect());
            let build = pump_comb_graph(&g, &wide_window()).unwrap();
            let n = signals.len();
            prop_assert_eq!(build.graph.weights(), allones_graph(n).unwrap().weights());
            prop_assert!(coverage_report(&g, &wide_window()).unwrap().complete);
        }

        /// Removing one pump tooth zeroes exactly its skew diagonal.
        #[test]
        fn skew_diagonal_removal(
            signals in proptest::collection::btree_set(-12i64..12, 2..=7),
            pick in 0usize..100,
        ) {
            let signals: Vec<i64> = signals.into_iter().collect();
            let all_sums: BTreeSet<i64> = signals
                .iter()
                .flat_map(|&j| signals.iter().map(move |&k| j + k))
                .collect();
            let sums: Vec<i64> = all_sums.iter().copied().collect();
            let removed = sums[pick % sums.len()];
            let pumps: Vec<i64> = sums.iter().copied().filter(|&s| s != removed).collect();
            let g = grid(signals.clone(), pumps);
            let build = pump_comb_graph(&g, &wide_window()).unwrap();
            let w = build.graph.weights();
            for a in 0..signals.len() {
                for b in 0..signals.len() {
                    let want = if signals[a] + signals[b] == removed { 0.0 } else { 1.0 };
                    prop_assert_eq!(w[(a, b)], want);
                }
            }
            // symmetry always holds
            prop_assert_eq!(w, &w.transpose());
        }
    }
}
