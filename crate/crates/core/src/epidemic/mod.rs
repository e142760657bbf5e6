//! Epidemic thresholds, immunization curves and SIR simulation.

pub mod compare;
pub mod curve;
pub mod export;
pub mod sir;
pub mod spectral;

pub use compare::{compare_strategies, Comparison, Histogram, StrategyOutcome, HISTOGRAM_BINS};
pub use curve::{immunization_curve, CurvePoint, ThresholdCurve};
pub use sir::{
    period_counts, sir_simulate, sir_trajectory, Metric, NodeState, PeriodCounts, ReplicateOutcome, SirConfig,
    SirOutcome,
};
pub use spectral::{
    classify_regime, epidemic_threshold, largest_eigenvalue, Regime, RegimeKind, SpectralResult, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};

/// `ceil(fraction * n)`, ignoring rounding noise just above an integer.
pub(crate) fn ceil_count(fraction: f64, n: usize) -> usize {
    let x = fraction * n as f64;
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest as usize
    } else {
        x.ceil() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::ceil_count;

    #[test]
    fn ceil_count_rounds_up() {
        assert_eq!(ceil_count(0.01, 1000), 10);
        assert_eq!(ceil_count(0.01, 101), 2);
        assert_eq!(ceil_count(0.01, 30), 1);
        assert_eq!(ceil_count(0.0, 30), 0);
        assert_eq!(ceil_count(0.07, 100), 7);
        assert_eq!(ceil_count(0.2, 1000), 200);
    }
}
