//! Balanced-heterodyne multiplexing of a squeezed frequency comb.
//!
//! One strong local oscillator (LO) tooth placed on the mode grid beats
//! against the signal modes around it; demodulating the photocurrent
//! difference in channel `j` collects the symmetric mode pair at grid
//! offsets `+-j`, and summing all channels yields the quadrature sum
//! `sum_j cos(theta) X_j + sin(theta) P_j` over every detected mode, scaled
//! by the LO amplitude. Several LOs spaced beyond each other's detection
//! band extend the reach to a full comb, which is what makes the total
//! phase sum measurable through a finite detection bandwidth.
//!
//! Everything is evaluated in the classical-LO limit: beats of signal
//! fields with the vacuum image bands are dropped, DC terms are filtered,
//! and demodulation is ideal. Detected grid positions that carry no signal
//! mode contribute exactly one unit of vacuum variance per unit
//! quadrature coefficient.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::comb::ModeGrid;
use crate::dynamics::{covariance, variance, GaussianState, QuadratureForm};
use crate::{Error, Result};

/// LO phases within this distance of a quadrature axis are treated as
/// exact X or P measurements. The residual ~1e-16 cross-coefficient that
/// `cos(pi/2)` leaves behind would otherwise couple macroscopic
/// antisqueezing into the squeezed channel.
const QUADRANT_SNAP: f64 = 1e-9;

fn quadrature_components(theta: f64) -> (f64, f64) {
    let mut c = theta.cos();
    let mut s = theta.sin();
    if c.abs() < QUADRANT_SNAP {
        c = 0.0;
        s = if s >= 0.0 { 1.0 } else { -1.0 };
    } else if s.abs() < QUADRANT_SNAP {
        s = 0.0;
        c = if c >= 0.0 { 1.0 } else { -1.0 };
    }
    (c, s)
}

/// Local-oscillator placement and demodulation layout.
///
/// Each LO tooth at grid index `t` covers the modes `t +- 1 .. t +- n`
/// through its `n` demodulation channels. Coverage regions of distinct
/// teeth must not overlap, so adjacent teeth must sit more than `2n` grid
/// steps apart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionPlan {
    lo_indices: Vec<i64>,
    theta: f64,
    lo_amplitude: f64,
    n_channels: usize,
}

impl DetectionPlan {
    pub fn new(
        lo_indices: Vec<i64>,
        theta: f64,
        lo_amplitude: f64,
        n_channels: usize,
    ) -> Result<Self> {
        if lo_indices.is_empty() {
            return Err(Error::InvalidPlan("need at least one LO tooth".into()));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidPlan("LO phase must be finite".into()));
        }
        if !(lo_amplitude.is_finite() && lo_amplitude > 0.0) {
            return Err(Error::InvalidPlan(format!(
                "LO amplitude must be positive and finite, got {lo_amplitude}"
            )));
        }
        if n_channels < 1 {
            return Err(Error::InvalidPlan("need at least one channel".into()));
        }
        let mut teeth = lo_indices;
        teeth.sort_unstable();
        if teeth.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPlan("duplicate LO tooth".into()));
        }
        for w in teeth.windows(2) {
            if w[1] - w[0] <= 2 * n_channels as i64 {
                return Err(Error::InvalidPlan(format!(
                    "LO teeth at {} and {} have overlapping coverage for {} channels",
                    w[0], w[1], n_channels
                )));
            }
        }
        Ok(DetectionPlan {
            lo_indices: teeth,
            theta,
            lo_amplitude,
            n_channels,
        })
    }

    pub fn lo_indices(&self) -> &[i64] {
        &self.lo_indices
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn lo_amplitude(&self) -> f64 {
        self.lo_amplitude
    }

    pub fn n_channels(&self) -> usize {
        self.n_channels
    }

    /// Union of `t +- j` over teeth `t` and channels `j = 1..n`, sorted.
    /// Disjoint by construction.
    pub fn detected_modes(&self) -> Vec<i64> {
        let mut out = BTreeSet::new();
        for &t in &self.lo_indices {
            for j in 1..=self.n_channels as i64 {
                out.insert(t - j);
                out.insert(t + j);
            }
        }
        out.into_iter().collect()
    }
}

/// Beat-note frequency of demodulation channel `j`: `(2j - 1)` times the
/// base beat spacing.
pub fn channel_frequency(channel: usize, spacing: f64) -> Result<f64> {
    if channel < 1 {
        return Err(Error::InvalidArgument(
            "channel index starts at 1".into(),
        ));
    }
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "spacing must be positive and finite, got {spacing}"
        )));
    }
    Ok((2 * channel - 1) as f64 * spacing)
}

/// The quadrature combination a plan actually measures, over the state's
/// modes followed by any vacuum-padded grid positions.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredObservable {
    /// Coefficients over `mode_labels`: `cos(theta)` on X and `sin(theta)`
    /// on P of every detected mode, zero elsewhere.
    pub form: QuadratureForm,
    /// LO amplitude; scales the raw variance quadratically.
    pub scale: f64,
    /// Grid labels for the form's coordinates: the grid's signal indices in
    /// order, then the vacuum-padded detected positions.
    pub mode_labels: Vec<i64>,
    /// Detected grid positions, sorted.
    pub detected_indices: Vec<i64>,
    /// Detected positions that carry no signal mode and enter as vacuum.
    pub vacuum_padded_indices: Vec<i64>,
}

/// Assemble the detected observable for a plan over a grid.
pub fn measured_observable(plan: &DetectionPlan, grid: &ModeGrid) -> Result<MeasuredObservable> {
    let signals: Vec<i64> = grid.signal_indices().to_vec();
    let signal_set: BTreeSet<i64> = signals.iter().copied().collect();
    for &t in plan.lo_indices() {
        if signal_set.contains(&t) {
            return Err(Error::InvalidPlan(format!(
                "LO tooth at {t} coincides with a signal mode, which would make it undetectable"
            )));
        }
    }
    let detected = plan.detected_modes();
    let padded: Vec<i64> = detected
        .iter()
        .copied()
        .filter(|i| !signal_set.contains(i))
        .collect();

    let mut labels = signals;
    labels.extend(padded.iter().copied());
    let total = labels.len();
    let (c, s) = quadrature_components(plan.theta());
    let mut x = DVector::zeros(total);
    let mut p = DVector::zeros(total);
    let detected_set: BTreeSet<i64> = detected.iter().copied().collect();
    for (idx, &label) in labels.iter().enumerate() {
        if detected_set.contains(&label) {
            x[idx] = c;
            p[idx] = s;
        }
    }
    Ok(MeasuredObservable {
        form: QuadratureForm::new(x, p)?,
        scale: plan.lo_amplitude(),
        mode_labels: labels,
        detected_indices: detected,
        vacuum_padded_indices: padded,
    })
}

/// Variance of the detected observable: raw (scaled by the squared LO
/// amplitude) and normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasuredVariance {
    pub raw: f64,
    pub normalized: f64,
}

/// Split an observable's coefficients into the part supported on the
/// state's modes and the vacuum-padded tail.
fn split_form(
    obs: &MeasuredObservable,
    n_signals: usize,
) -> (Option<QuadratureForm>, Vec<(f64, f64)>) {
    let x = obs.form.x_coeffs();
    let p = obs.form.p_coeffs();
    let sig_x = DVector::from_iterator(n_signals, x.iter().take(n_signals).copied());
    let sig_p = DVector::from_iterator(n_signals, p.iter().take(n_signals).copied());
    let signal_form = if sig_x.iter().chain(sig_p.iter()).any(|&v| v != 0.0) {
        Some(QuadratureForm::new(sig_x, sig_p).expect("nonzero signal coefficients"))
    } else {
        None
    };
    let tail: Vec<(f64, f64)> = (n_signals..x.len()).map(|i| (x[i], p[i])).collect();
    (signal_form, tail)
}

/// Evaluate the measured variance of a state under a detection plan.
///
/// Every vacuum-padded position contributes an independent unit of vacuum
/// variance per quadrature; the state's modes contribute through their
/// covariance. The state must have exactly one mode per grid signal index.
pub fn measured_variance(
    state: &GaussianState,
    plan: &DetectionPlan,
    grid: &ModeGrid,
) -> Result<MeasuredVariance> {
    let obs = measured_observable(plan, grid)?;
    let n_signals = grid.signal_indices().len();
    if state.n_modes() != n_signals {
        return Err(Error::DimensionMismatch {
            expected: n_signals,
            found: state.n_modes(),
        });
    }
    let (signal_form, tail) = split_form(&obs, n_signals);
    let mut normalized = match &signal_form {
        Some(f) => variance(state, f)?,
        None => 0.0,
    };
    for (cx, cp) in tail {
        normalized += cx * cx + cp * cp;
    }
    Ok(MeasuredVariance {
        raw: obs.scale * obs.scale * normalized,
        normalized,
    })
}

/// One demodulation channel's share of the total measured variance.
///
/// Shares are assigned by bilinearity, `cov(S_j, S_total)`, so they sum to
/// the total even though channels are correlated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelContribution {
    /// 1-based channel index.
    pub channel: usize,
    /// Beat frequency in units of the base spacing: `2 * channel - 1`.
    pub freq_over_spacing: u64,
    /// Raw contribution (scaled by the squared LO amplitude).
    pub raw: f64,
}

/// Per-channel variance contributions under a plan.
pub fn channel_contributions(
    state: &GaussianState,
    plan: &DetectionPlan,
    grid: &ModeGrid,
) -> Result<Vec<ChannelContribution>> {
    let obs = measured_observable(plan, grid)?;
    let n_signals = grid.signal_indices().len();
    if state.n_modes() != n_signals {
        return Err(Error::DimensionMismatch {
            expected: n_signals,
            found: state.n_modes(),
        });
    }
    let (total_form, _) = split_form(&obs, n_signals);
    let label_pos: std::collections::BTreeMap<i64, usize> = obs
        .mode_labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i))
        .collect();
    let x = obs.form.x_coeffs();
    let p = obs.form.p_coeffs();

    let mut out = Vec::with_capacity(plan.n_channels());
    for j in 1..=plan.n_channels() {
        let mut channel_modes: Vec<usize> = Vec::new();
        for &t in plan.lo_indices() {
            for side in [t - j as i64, t + j as i64] {
                if let Some(&pos) = label_pos.get(&side) {
                    channel_modes.push(pos);
                }
            }
        }
        // signal-supported part of this channel's sub-form
        let mut ch_x = DVector::zeros(n_signals);
        let mut ch_p = DVector::zeros(n_signals);
        let mut vacuum_part = 0.0;
        for &pos in &channel_modes {
            if pos < n_signals {
                ch_x[pos] = x[pos];
                ch_p[pos] = p[pos];
            } else {
                vacuum_part += x[pos] * x[pos] + p[pos] * p[pos];
            }
        }
        let mut share = vacuum_part;
        if ch_x.iter().chain(ch_p.iter()).any(|&v| v != 0.0) {
            if let Some(total) = &total_form {
                let ch_form = QuadratureForm::new(ch_x, ch_p).expect("nonzero channel coefficients");
                share += covariance(state, &ch_form, total)?;
            }
        }
        out.push(ChannelContribution {
            channel: j,
            freq_over_spacing: (2 * j - 1) as u64,
            raw: obs.scale * obs.scale * share,
        });
    }
    Ok(out)
}

/// Infinite-time variance of a partial phase sum over `m` of the `N` modes
/// of the uniformly coupled graph: `m (1 - m/N)`.
pub fn partial_sum_limit_variance(n_modes: usize, m: usize) -> Result<f64> {
    if n_modes < 1 || m < 1 || m > n_modes {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= m <= N, got m = {m}, N = {n_modes}"
        )));
    }
    let (n, m) = (n_modes as f64, m as f64);
    Ok(m * (1.0 - m / n))
}

/// What a finite detection bandwidth does to phase-sum squeezing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandwidthGapReport {
    pub n_modes: usize,
    pub n_channels: usize,
    /// Modes reached by a single LO's band, `min(2n + 1, N)`.
    pub partial_modes: usize,
    /// Infinite-time variance of the partial sum, `m (1 - m/N)`.
    pub partial_variance: f64,
    /// Vacuum reference for the same partial sum.
    pub vacuum_variance: f64,
    /// `10 log10(partial / vacuum)`; `None` when the partial sum is fully
    /// squeezed (full coverage).
    pub residual_squeezing_db: Option<f64>,
    /// LO-comb teeth needed to cover all `N` modes with `2n` detected
    /// modes per tooth under a rectangular detection band.
    pub lo_teeth_required: usize,
}

/// Quantify the residual noise of a bandwidth-limited partial sum and the
/// LO-comb size that restores the full sum.
pub fn bandwidth_gap_analysis(n_modes: usize, n_channels: usize) -> Result<BandwidthGapReport> {
    if n_channels < 1 {
        return Err(Error::InvalidArgument("need at least one channel".into()));
    }
    if n_modes < n_channels {
        return Err(Error::InvalidArgument(format!(
            "mode count {n_modes} must be at least the channel count {n_channels}"
        )));
    }
    let m = (2 * n_channels + 1).min(n_modes);
    let partial_variance = partial_sum_limit_variance(n_modes, m)?;
    let vacuum_variance = m as f64;
    let residual_squeezing_db = if partial_variance > 0.0 {
        Some(10.0 * (partial_variance / vacuum_variance).log10())
    } else {
        None
    };
    let lo_teeth_required = n_modes.div_ceil(2 * n_channels);
    Ok(BandwidthGapReport {
        n_modes,
        n_channels,
        partial_modes: m,
        partial_variance,
        vacuum_variance,
        residual_squeezing_db,
        lo_teeth_required,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve_vacuum, EvolutionSpec, Method};
    use crate::graphs::{allones_graph, InteractionGraph};
    use crate::witnesses::phase_sum_form;
    use nalgebra::DMatrix;
    use std::f64::consts::PI;

    fn grid(signals: Vec<i64>) -> ModeGrid {
        ModeGrid::new(1000.0, 1.0, signals, vec![0]).unwrap()
    }

    #[test]
    fn channel_frequencies() {
        assert_eq!(channel_frequency(1, 1.0).unwrap(), 1.0);
        assert_eq!(channel_frequency(2, 1.0).unwrap(), 3.0);
        assert_eq!(channel_frequency(3, 1.0).unwrap(), 5.0);
        assert_eq!(channel_frequency(2, 0.5).unwrap(), 1.5);
        assert!(channel_frequency(0, 1.0).is_err());
        assert!(channel_frequency(1, 0.0).is_err());
    }

    #[test]
    fn plan_validation() {
        assert!(DetectionPlan::new(vec![], 0.0, 1.0, 1).is_err());
        assert!(DetectionPlan::new(vec![0], f64::NAN, 1.0, 1).is_err());
        assert!(DetectionPlan::new(vec![0], 0.0, 0.0, 1).is_err());
        assert!(DetectionPlan::new(vec![0], 0.0, 1.0, 0).is_err());
        assert!(DetectionPlan::new(vec![0, 0], 0.0, 1.0, 1).is_err());
        // coverage of teeth 0 and 2 overlaps at mode 1 for n = 1
        assert!(DetectionPlan::new(vec![0, 2], 0.0, 1.0, 1).is_err());
        // gap 3 > 2n = 2 is fine
        let plan = DetectionPlan::new(vec![3, 0], 0.0, 1.0, 1).unwrap();
        assert_eq!(plan.lo_indices(), &[0, 3]);
        assert_eq!(plan.detected_modes(), vec![-1, 1, 2, 4]);
    }

    #[test]
    fn phase_quadrature_observable_is_exact() {
        let plan = DetectionPlan::new(vec![0], PI / 2.0, 1.0, 1).unwrap();
        let obs = measured_observable(&plan, &grid(vec![-1, 1])).unwrap();
        assert_eq!(obs.form.x_coeffs().as_slice(), &[0.0, 0.0]);
        assert_eq!(obs.form.p_coeffs().as_slice(), &[1.0, 1.0]);
        assert!(obs.vacuum_padded_indices.is_empty());
        assert_eq!(obs.detected_indices, vec![-1, 1]);
    }

    #[test]
    fn amplitude_quadrature_two_channels() {
        let plan = DetectionPlan::new(vec![0], 0.0, 1.0, 2).unwrap();
        let obs = measured_observable(&plan, &grid(vec![-2, -1, 1, 2])).unwrap();
        assert_eq!(obs.form.x_coeffs().as_slice(), &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(obs.form.p_coeffs().as_slice(), &[0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn lo_on_signal_mode_is_rejected() {
        let plan = DetectionPlan::new(vec![0], 0.0, 1.0, 1).unwrap();
        let g = grid(vec![0, 1]);
        assert!(matches!(
            measured_observable(&plan, &g),
            Err(Error::InvalidPlan(_))
        ));
    }

    #[test]
    fn vacuum_measurement_counts_quadratures() {
        let plan = DetectionPlan::new(vec![0], PI / 2.0, 2.0, 1).unwrap();
        let v = measured_variance(&GaussianState::vacuum(2), &plan, &grid(vec![-1, 1])).unwrap();
        assert_eq!(v.normalized, 2.0);
        assert_eq!(v.raw, 8.0);
    }

    #[test]
    fn full_coverage_reproduces_the_phase_sum() {
        // teeth at 0 and 5 with n = 2 detect exactly {-2,-1,1,2,3,4,6,7}
        let signals = vec![-2, -1, 1, 2, 3, 4, 6, 7];
        let g = grid(signals.clone());
        let plan = DetectionPlan::new(vec![0, 5], PI / 2.0, 1.0, 2).unwrap();
        let n = signals.len();
        for &tau in &[0.0, 1.0, 5.0] {
            let state = evolve_vacuum(&allones_graph(n).unwrap(), &EvolutionSpec::new(tau).unwrap());
            let het = measured_variance(&state, &plan, &g).unwrap();
            let direct = variance(&state, &phase_sum_form(n).unwrap()).unwrap();
            assert!(
                (het.normalized - direct).abs() <= 1e-12,
                "tau = {tau}: {} vs {direct}",
                het.normalized
            );
        }
    }

    #[test]
    fn vacuum_padding_adds_exactly_one_per_detected_hole() {
        // detected {-2,-1,1,2}; signals only at {-1, 1}; two padded holes
        let g = grid(vec![-1, 1]);
        let plan = DetectionPlan::new(vec![0], PI / 2.0, 1.0, 2).unwrap();
        let state = evolve_vacuum(&allones_graph(2).unwrap(), &EvolutionSpec::new(0.8).unwrap());
        let with_holes = measured_variance(&state, &plan, &g).unwrap();
        let narrow = DetectionPlan::new(vec![0], PI / 2.0, 1.0, 1).unwrap();
        let covered = measured_variance(&state, &narrow, &g).unwrap();
        assert_eq!(with_holes.normalized, covered.normalized + 2.0);
    }

    #[test]
    fn undetected_squeezed_modes_do_not_contribute() {
        // same two-mode squeezing; a third mode far outside the band
        let r = [0.4, -0.9];
        let a2 = DMatrix::from_fn(2, 2, |i, j| if i == j { r[i] } else { 0.0 });
        let mut a3 = DMatrix::zeros(3, 3);
        a3[(0, 0)] = r[0];
        a3[(1, 1)] = r[1];
        a3[(2, 2)] = 2.5;
        let s2 = evolve_vacuum(
            &InteractionGraph::from_weights(a2).unwrap(),
            &EvolutionSpec::new(1.0).unwrap(),
        );
        let s3 = evolve_vacuum(
            &InteractionGraph::from_weights(a3).unwrap(),
            &EvolutionSpec::new(1.0).unwrap(),
        );
        let plan = DetectionPlan::new(vec![0], 0.3, 1.0, 1).unwrap();
        let v2 = measured_variance(&s2, &plan, &grid(vec![-1, 1])).unwrap();
        let v3 = measured_variance(&s3, &plan, &grid(vec![-1, 1, 40])).unwrap();
        assert!((v2.normalized - v3.normalized).abs() < 1e-12);
    }

    #[test]
    fn partial_detection_approaches_the_limit_formula() {
        // four uniformly coupled modes, two inside the detection band
        let signals = vec![-1, 1, 50, 53];
        let g = grid(signals);
        let plan = DetectionPlan::new(vec![0], PI / 2.0, 1.0, 1).unwrap();
        let state = evolve_vacuum(&allones_graph(4).unwrap(), &EvolutionSpec::new(10.0).unwrap());
        let v = measured_variance(&state, &plan, &g).unwrap();
        assert!((v.normalized - 1.0).abs() < 1e-9);
        assert_eq!(partial_sum_limit_variance(4, 2).unwrap(), 1.0);
    }

    #[test]
    fn channel_shares_sum_to_the_total() {
        let signals = vec![-2, -1, 1, 2];
        let g = grid(signals.clone());
        let plan = DetectionPlan::new(vec![0], 0.7, 1.3, 2).unwrap();
        let state = evolve_vacuum(&allones_graph(4).unwrap(), &EvolutionSpec::new(0.6).unwrap());
        let total = measured_variance(&state, &plan, &g).unwrap();
        let shares = channel_contributions(&state, &plan, &g).unwrap();
        assert_eq!(shares.len(), 2);
        assert_eq!(shares[0].freq_over_spacing, 1);
        assert_eq!(shares[1].freq_over_spacing, 3);
        let sum: f64 = shares.iter().map(|c| c.raw).sum();
        assert!((sum - total.raw).abs() < 1e-12 * total.raw.max(1.0));
    }

    #[test]
    fn theta_sweep_is_pi_periodic_with_minimum_at_phase_quadrature() {
        let signals = vec![-2, -1, 1, 2];
        let g = grid(signals);
        let state = evolve_vacuum(&allones_graph(4).unwrap(), &EvolutionSpec::new(0.3).unwrap());
        let measure = |theta: f64| {
            let plan = DetectionPlan::new(vec![0], theta, 1.0, 2).unwrap();
            measured_variance(&state, &plan, &g).unwrap().normalized
        };
        let mut best = (0usize, f64::INFINITY);
        for k in 0..64 {
            let theta = k as f64 * PI / 64.0;
            let v = measure(theta);
            let v_shift = measure(theta + PI);
            assert!((v - v_shift).abs() < 1e-9 * v.max(1.0), "k = {k}");
            if v < best.1 {
                best = (k, v);
            }
        }
        assert_eq!(best.0, 32, "minimum should sit at theta = pi/2");
    }

    #[test]
    fn bandwidth_reports() {
        // full coverage: 2n + 1 >= N
        let r = bandwidth_gap_analysis(3, 1).unwrap();
        assert_eq!(r.partial_modes, 3);
        assert_eq!(r.partial_variance, 0.0);
        assert!(r.residual_squeezing_db.is_none());

        // m = 3 of N = 100: residual 2.91 against vacuum 3
        let r = bandwidth_gap_analysis(100, 1).unwrap();
        assert_eq!(r.partial_modes, 3);
        assert!((r.partial_variance - 2.91).abs() < 1e-12);
        assert_eq!(r.vacuum_variance, 3.0);
        assert!((r.residual_squeezing_db.unwrap() - (-0.13228265733755148)).abs() < 1e-10);
        assert_eq!(r.lo_teeth_required, 50);

        // single-mode partial sums approach vacuum for large N
        assert!((partial_sum_limit_variance(50, 1).unwrap() - 0.98).abs() < 1e-12);
        assert!(partial_sum_limit_variance(4, 5).is_err());
        assert!(bandwidth_gap_analysis(2, 3).is_err());
        assert!(bandwidth_gap_analysis(5, 0).is_err());
    }

    #[test]
    fn dense_route_agrees_on_partial_sums() {
        let signals = vec![-1, 1, 30, 33, 36, 39];
        let g = grid(signals);
        let plan = DetectionPlan::new(vec![0], PI / 2.0, 1.0, 1).unwrap();
        let spec = EvolutionSpec::new(12.0).unwrap().with_method(Method::DenseExponential);
        let state = evolve_vacuum(&allones_graph(6).unwrap(), &spec);
        let v = measured_variance(&state, &plan, &g).unwrap();
        let want = partial_sum_limit_variance(6, 2).unwrap();
        assert!((v.normalized - want).abs() < 1e-6);
    }
}
