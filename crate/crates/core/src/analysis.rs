//! Closed-form addition-count prediction and empirical-complexity estimation.
//!
//! The repeated-addition kernels cost `μ′·d₁·d₂·n³` additions on average,
//! where `d₁`, `d₂` are the operand densities and `μ′` is the mean of the
//! nonzero repetition factors. Measured growth is estimated with an
//! ordinary least squares fit in log-log space, and the time weight of one
//! addition with a regression of elapsed time on addition count through the
//! origin.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostParams {
    pub n: usize,
    pub d1: f64,
    pub d2: f64,
    pub mu_prime: f64,
}

impl CostParams {
    pub fn new(n: usize, d1: f64, d2: f64, mu_prime: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension);
        }
        if !(0.0..=1.0).contains(&d1) || !(0.0..=1.0).contains(&d2) {
            return Err(Error::InvalidParameter("densities must lie in [0, 1]"));
        }
        if !(mu_prime > 0.0 && mu_prime.is_finite()) {
            return Err(Error::InvalidParameter("mu_prime must be positive"));
        }
        Ok(Self { n, d1, d2, mu_prime })
    }
}

/// Expected number of additions, `μ′·d₁·d₂·n³`.
pub fn predict_additions(p: &CostParams) -> f64 {
    let n = p.n as f64;
    p.mu_prime * p.d1 * p.d2 * n * n * n
}

/// Mean over all entries of the repetition-factor matrix, `μ′·d₂`.
pub fn effective_mean(mu_prime: f64, d2: f64) -> f64 {
    mu_prime * d2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample standard deviation; zero for a single sample.
    pub std_dev: f64,
    /// Normal-approximation half width, `1.96·σ/√count`.
    pub ci95_half_width: f64,
}

pub fn summarize(samples: &[f64]) -> Result<SampleStats> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let count = samples.len();
    let mean = samples.iter().sum::<f64>() / count as f64;
    let std_dev = if count == 1 {
        0.0
    } else {
        let ss: f64 = samples.iter().map(|&x| (x - mean) * (x - mean)).sum();
        libm::sqrt(ss / (count - 1) as f64)
    };
    Ok(SampleStats {
        count,
        mean,
        std_dev,
        ci95_half_width: 1.96 * std_dev / libm::sqrt(count as f64),
    })
}

/// `value ≈ coefficient · size^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub coefficient: f64,
    pub exponent: f64,
    /// Coefficient of determination of the log-log fit.
    pub r_squared: f64,
}

impl FitResult {
    pub fn predict(&self, size: f64) -> f64 {
        self.coefficient * libm::pow(size, self.exponent)
    }
}

pub fn fit_power_law(points: &[(f64, f64)]) -> Result<FitResult> {
    if let Some(index) = points
        .iter()
        .position(|&(s, v)| !(s > 0.0 && v > 0.0 && s.is_finite() && v.is_finite()))
    {
        return Err(Error::NonPositive { index });
    }
    let mut sizes: Vec<u64> = points.iter().map(|p| p.0.to_bits()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 3 {
        return Err(Error::InsufficientData { distinct_sizes: sizes.len() });
    }

    let logs: Vec<(f64, f64)> = points.iter().map(|&(s, v)| (libm::log(s), libm::log(v))).collect();
    let len = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &logs {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|&(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Ok(FitResult { coefficient: libm::exp(intercept), exponent: slope, r_squared })
}

/// Seconds per addition: slope through the origin of elapsed time against
/// addition count, `Σ(a·t) / Σ(a²)`.
pub fn cost_per_addition(records: &[(u64, f64)]) -> Result<f64> {
    let (num, den) = records.iter().fold((0.0, 0.0), |(num, den), &(a, t)| {
        let a = a as f64;
        (num + a * t, den + a * a)
    });
    if den == 0.0 {
        return Err(Error::DegenerateFit);
    }
    Ok(num / den)
}

/// `100·(baseline − candidate)/baseline`.
pub fn percent_reduction(baseline_mean: f64, candidate_mean: f64) -> Result<f64> {
    if baseline_mean.is_nan() || baseline_mean <= 0.0 {
        return Err(Error::InvalidParameter("baseline mean must be positive"));
    }
    Ok(100.0 * (baseline_mean - candidate_mean) / baseline_mean)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn prediction_examples() {
        let p = CostParams::new(1000, 1.0 / 3.0, 0.5, 1.0).unwrap();
        assert!(close(predict_additions(&p), 1.0e9 / 6.0, 1e-12));
        assert_eq!(predict_additions(&CostParams::new(77, 0.0, 0.5, 4.0).unwrap()), 0.0);
        let q = CostParams::new(100, 0.1, 0.1, 5.0).unwrap();
        assert!(close(predict_additions(&q), 5.0e4, 1e-12));
        let r = CostParams::new(64, 1.0 / 3.0, 0.5, 3.0).unwrap();
        assert!(close(predict_additions(&r), 131072.0, 1e-12));
        let s = CostParams::new(64, 0.2, 0.4, 14.0).unwrap();
        assert!(close(predict_additions(&s), 293601.28, 1e-12));
    }

    #[test]
    fn cost_params_validation() {
        assert!(CostParams::new(0, 0.1, 0.1, 1.0).is_err());
        assert!(CostParams::new(4, 1.1, 0.1, 1.0).is_err());
        assert!(CostParams::new(4, 0.1, 0.1, 0.0).is_err());
    }

    #[test]
    fn effective_mean_examples() {
        assert_eq!(effective_mean(3.0, 0.5), 1.5);
        assert_eq!(effective_mean(7.0, 1.0), 7.0);
        assert_eq!(effective_mean(7.0, 0.0), 0.0);
    }

    #[test]
    fn summarize_examples() {
        let s = summarize(&[2.0, 2.0, 2.0]).unwrap();
        assert_eq!((s.count, s.mean, s.std_dev, s.ci95_half_width), (3, 2.0, 0.0, 0.0));
        let s = summarize(&[1.0, 3.0]).unwrap();
        assert_eq!(s.mean, 2.0);
        assert!(close(s.std_dev, 2f64.sqrt(), 1e-15));
        assert!(close(s.ci95_half_width, 1.96, 1e-15));
        assert_eq!(summarize(&[5.0]).unwrap().std_dev, 0.0);
        assert_eq!(summarize(&[]), Err(Error::EmptySample));
    }

    #[test]
    fn fit_exact_power_laws() {
        let f = fit_power_law(&[(1.0, 1.0), (2.0, 8.0), (4.0, 64.0)]).unwrap();
        assert!(close(f.exponent, 3.0, 1e-12) && close(f.coefficient, 1.0, 1e-12));
        assert!(close(f.r_squared, 1.0, 1e-12));
        let f = fit_power_law(&[(1.0, 2.0), (2.0, 8.0), (4.0, 32.0)]).unwrap();
        assert!(close(f.exponent, 2.0, 1e-12) && close(f.coefficient, 2.0, 1e-12));
        assert!(close(f.predict(8.0), 128.0, 1e-12));
    }

    #[test]
    fn fit_errors() {
        assert_eq!(
            fit_power_law(&[(1.0, 1.0), (2.0, 8.0), (2.0, 8.5)]),
            Err(Error::InsufficientData { distinct_sizes: 2 })
        );
        assert_eq!(
            fit_power_law(&[(1.0, 1.0), (2.0, 0.0), (4.0, 3.0)]),
            Err(Error::NonPositive { index: 1 })
        );
        assert_eq!(
            fit_power_law(&[(-1.0, 1.0), (2.0, 1.0), (4.0, 3.0)]),
            Err(Error::NonPositive { index: 0 })
        );
    }

    #[test]
    fn cost_per_addition_examples() {
        assert!(close(cost_per_addition(&[(100, 1e-6), (200, 2e-6)]).unwrap(), 1e-8, 1e-12));
        assert_eq!(cost_per_addition(&[(0, 5e-6)]), Err(Error::DegenerateFit));
        assert_eq!(cost_per_addition(&[]), Err(Error::DegenerateFit));
    }

    #[test]
    fn percent_reduction_examples() {
        let r = percent_reduction(2.32, 0.918).unwrap();
        assert_eq!(alloc::format!("{r:.1}"), "60.4");
        assert_eq!(percent_reduction(1.0, 1.0).unwrap(), 0.0);
        let r = percent_reduction(147.078, 53.375).unwrap();
        assert_eq!(alloc::format!("{r:.1}"), "63.7");
        assert!(percent_reduction(0.0, 1.0).is_err());
        assert!(percent_reduction(-2.0, 1.0).is_err());
    }
}
