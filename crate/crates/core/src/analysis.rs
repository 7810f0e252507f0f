//! Reading entropy series: drops, first-drop scans, logarithmic growth fits
//! and saturation estimates.

use rayon::prelude::*;

use crate::error::{Result, WalkError};
use crate::models::line::{line_trajectory, run_line, SpinWindow};
use crate::numerics::{entropy_term, TOL_PROBABILITY};
use crate::series::EntropySeries;

/// Default absolute tolerance for calling a decrease a drop.
pub const DROP_TOL: f64 = 1e-12;

/// Default number of steps scanned for a first drop.
pub const DEFAULT_SCAN_STEPS: usize = 60;

fn require_len(values: &[f64], needed: usize) -> Result<()> {
    if values.len() < needed {
        return Err(WalkError::SeriesTooShort { len: values.len(), needed });
    }
    Ok(())
}

/// Steps `tau` with `S(tau + 1) < S(tau) - tol`, ascending.
pub fn detect_drops(values: &[f64], tol: f64) -> Result<Vec<usize>> {
    require_len(values, 2)?;
    Ok(values.windows(2).enumerate().filter(|(_, w)| w[1] < w[0] - tol).map(|(tau, _)| tau).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub monotone: bool,
    pub violations: Vec<usize>,
}

pub fn monotonicity_report(values: &[f64], tol: f64) -> Result<MonotonicityReport> {
    let violations = detect_drops(values, tol)?;
    Ok(MonotonicityReport { monotone: violations.is_empty(), violations })
}

/// Steps `tau >= from` where `S(tau + 1) > S(tau) + margin` fails.
pub fn strict_growth_violations(values: &[f64], from: usize, margin: f64) -> Result<Vec<usize>> {
    require_len(values, 2)?;
    Ok((from..values.len() - 1).filter(|&tau| values[tau + 1] <= values[tau] + margin).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstDrop {
    pub transparency: f64,
    pub first_drop: Option<usize>,
}

/// `min, min + step, ...` up to `max`, computed without accumulating round-off.
pub fn transparency_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(min <= max) || !min.is_finite() || !max.is_finite() {
        return Err(WalkError::InvalidParameter(format!("bad grid {min}..{max} step {step}")));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| ((min + k as f64 * step) * 1e12).round() / 1e12).collect())
}

/// First drop of the all-spins line walk for each transparency, in input order.
pub fn first_drop_scan(transparencies: &[f64], steps: usize) -> Result<Vec<FirstDrop>> {
    transparencies
        .par_iter()
        .map(|&t| {
            let series = run_line(t, SpinWindow::All, steps)?;
            let first_drop = detect_drops(&series.values, DROP_TOL)?.first().copied();
            Ok(FirstDrop { transparency: t, first_drop })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares fit `S(tau) ~ slope ln(tau) + intercept` over `tau_min..=tau_max`.
///
/// A window with no variance in `S` reports `r_squared = 0`.
pub fn log_growth_fit(values: &[f64], tau_min: usize, tau_max: usize) -> Result<LogFit> {
    if tau_min < 1 {
        return Err(WalkError::InvalidParameter("log fit needs tau_min >= 1".into()));
    }
    if tau_max >= values.len() {
        return Err(WalkError::SeriesTooShort { len: values.len(), needed: tau_max + 1 });
    }
    if tau_max < tau_min || tau_max - tau_min + 1 < 3 {
        return Err(WalkError::DegenerateWindow { tau_min, tau_max });
    }
    let n = (tau_max - tau_min + 1) as f64;
    let xs: Vec<f64> = (tau_min..=tau_max).map(|t| (t as f64).ln()).collect();
    let ys = &values[tau_min..=tau_max];
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let syy: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let r_squared = if syy <= f64::EPSILON * y_mean.abs().max(1.0) * n {
        0.0
    } else {
        let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(LogFit { slope, intercept, r_squared })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturationEstimate {
    pub p_left: f64,
    pub p_right: f64,
    /// `-(P_L ln P_L + P_R ln P_R)`.
    pub predicted: f64,
    /// Mean of the series over its tail.
    pub observed: f64,
}

impl SaturationEstimate {
    pub fn discrepancy(&self) -> f64 {
        (self.observed - self.predicted).abs()
    }
}

/// Two-outcome saturation entropy for the given side weights.
pub fn two_sided_entropy(p_left: f64, p_right: f64) -> Result<f64> {
    if (p_left + p_right - 1.0).abs() > TOL_PROBABILITY || p_left < 0.0 || p_right < 0.0 {
        return Err(WalkError::InvalidDistribution(format!("side weights {p_left} + {p_right} != 1")));
    }
    Ok(entropy_term(p_left) + entropy_term(p_right))
}

pub fn estimate_saturation(values: &[f64], tail_fraction: f64, side_weights: (f64, f64)) -> Result<SaturationEstimate> {
    require_len(values, 2)?;
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(WalkError::InvalidParameter(format!("tail fraction {tail_fraction} outside (0, 1]")));
    }
    let (p_left, p_right) = side_weights;
    let predicted = two_sided_entropy(p_left, p_right)?;
    let tail = ((values.len() as f64 * tail_fraction).ceil() as usize).clamp(1, values.len());
    let observed = values[values.len() - tail..].iter().sum::<f64>() / tail as f64;
    Ok(SaturationEstimate { p_left, p_right, predicted, observed })
}

/// Runs a finite-window line walk and compares its plateau with the
/// two-outcome entropy of the final side weights.
pub fn line_saturation(
    transparency: f64,
    window: SpinWindow,
    steps: usize,
    tail_fraction: f64,
) -> Result<(EntropySeries, SaturationEstimate)> {
    let series = run_line(transparency, window, steps)?;
    let last = line_trajectory(transparency, window, steps)?.pop().expect("trajectory includes tau = 0");
    let estimate = estimate_saturation(&series.values, tail_fraction, last.side_weights())?;
    Ok((series, estimate))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_on_synthetic_series() {
        assert!(detect_drops(&[0.0, 0.5, 1.0, 1.5], DROP_TOL).unwrap().is_empty());
        assert_eq!(detect_drops(&[0.0, 0.7, 1.35, 1.30, 1.4], DROP_TOL).unwrap(), vec![2]);
        assert_eq!(detect_drops(&[0.3], DROP_TOL), Err(WalkError::SeriesTooShort { len: 1, needed: 2 }));
    }

    #[test]
    fn line_drops_t04() {
        let s = run_line(0.4, SpinWindow::All, 10).unwrap();
        let report = monotonicity_report(&s.values, DROP_TOL).unwrap();
        assert!(!report.monotone);
        assert!(report.violations.contains(&2) && report.violations.contains(&7));
    }

    #[test]
    fn strict_growth_helper() {
        assert!(strict_growth_violations(&[0.0, 0.1, 0.2, 0.3], 1, 1e-12).unwrap().is_empty());
        assert_eq!(strict_growth_violations(&[0.0, 0.1, 0.1, 0.3], 0, 1e-12).unwrap(), vec![1]);
    }

    #[test]
    fn grid_endpoints() {
        let g = transparency_grid(0.3, 0.85, 0.01).unwrap();
        assert_eq!(g.len(), 56);
        assert_eq!(g[0], 0.3);
        assert_eq!(*g.last().unwrap(), 0.85);
        assert_eq!(g[7], 0.37);
        assert!(transparency_grid(0.5, 0.4, 0.01).is_err());
        assert!(transparency_grid(0.1, 0.4, 0.0).is_err());
    }

    #[test]
    fn scan_preserves_order() {
        let out = first_drop_scan(&[0.75, 0.45, 0.65], 60).unwrap();
        let drops: Vec<_> = out.iter().map(|d| (d.transparency, d.first_drop)).collect();
        assert_eq!(drops, vec![(0.75, Some(4)), (0.45, Some(2)), (0.65, Some(3))]);
    }

    #[test]
    fn exact_log_fit() {
        let values: Vec<f64> = (0..30).map(|t| if t == 0 { 0.0 } else { 2.0 * (t as f64).ln() + 1.0 }).collect();
        let fit = log_growth_fit(&values, 1, 29).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_log_fit() {
        let fit = log_growth_fit(&[0.7; 20], 2, 15).unwrap();
        assert!(fit.slope.abs() < 1e-12);
        assert_eq!(fit.r_squared, 0.0);
    }

    #[test]
    fn log_fit_window_errors() {
        assert!(matches!(log_growth_fit(&[0.0; 10], 3, 4), Err(WalkError::DegenerateWindow { .. })));
        assert!(log_growth_fit(&[0.0; 10], 0, 5).is_err());
        assert!(matches!(log_growth_fit(&[0.0; 10], 2, 10), Err(WalkError::SeriesTooShort { .. })));
    }

    #[test]
    fn saturation_predictions() {
        let s = estimate_saturation(&[0.0, 0.5, 0.69, 0.69], 0.5, (0.5, 0.5)).unwrap();
        assert!((s.predicted - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((s.observed - 0.69).abs() < 1e-15);
        let s = estimate_saturation(&[0.0, 0.0], 0.2, (1.0, 0.0)).unwrap();
        assert_eq!(s.predicted, 0.0);
        assert!(estimate_saturation(&[0.0, 0.1], 0.2, (0.6, 0.6)).is_err());
        assert!(estimate_saturation(&[0.0], 0.2, (0.5, 0.5)).is_err());
    }

    #[test]
    fn single_spin_saturates() {
        let (_, est) = line_saturation(0.4, SpinWindow::Finite(1), 200, 0.2).unwrap();
        assert!((est.p_left + est.p_right - 1.0).abs() < 1e-10);
        assert!(est.discrepancy() < 0.01, "{est:?}");
    }
}
