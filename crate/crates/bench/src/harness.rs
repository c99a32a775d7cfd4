//! Wall-clock measurement of kernel runs.
//!
//! Runs are strictly sequential on the calling thread. Only the kernel call
//! is inside the timed region; operand generation and output happen outside it.

use std::hint::black_box;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use afmm::{generate, multiply, DenseMatrix, GeneratorSpec, KernelId, OpCounts, Seed};

use crate::error::Result;
use crate::plan::ExperimentPlan;

/// A run is only trusted when it lasts this many timer ticks.
pub const GRANULARITY_FACTOR: u32 = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub kernel: KernelId,
    pub n: usize,
    pub d1: f64,
    pub d2: f64,
    pub mu_prime: f64,
    pub seed: Seed,
    pub rep: u64,
    pub elapsed_seconds: f64,
    pub counts: OpCounts,
    /// False when the run was too short to time reliably. Invalid records
    /// are kept for their counts but excluded from timing statistics.
    pub valid: bool,
}

/// Smallest nonzero step observed between consecutive `Instant::now()` reads.
pub fn timer_resolution() -> Duration {
    static RES: OnceLock<Duration> = OnceLock::new();
    *RES.get_or_init(|| {
        let mut best = Duration::MAX;
        for _ in 0..2000 {
            let a = Instant::now();
            let mut b = Instant::now();
            while b == a {
                b = Instant::now();
            }
            best = best.min(b - a);
        }
        best
    })
}

pub fn min_valid_elapsed() -> Duration {
    timer_resolution() * GRANULARITY_FACTOR
}

/// Operands for one cell of a plan.
///
/// The repetition-factor operand (right for all kernels except `afmm-b`)
/// is integer-valued with nonzero mean `mu_prime`; the other operand is real,
/// uniform on `[0.5, 1.5]`. Left and right use independent sub-streams of
/// the cell seed.
pub fn operands(kernel: KernelId, n: usize, d1: f64, d2: f64, mu_prime: f64, seed: Seed) -> Result<(DenseMatrix, DenseMatrix)> {
    let (left, right) = if kernel == KernelId::AfmmB {
        (GeneratorSpec::integer(n, d1, mu_prime)?, GeneratorSpec::real(n, d2)?)
    } else {
        (GeneratorSpec::real(n, d1)?, GeneratorSpec::integer(n, d2, mu_prime)?)
    };
    Ok((generate(&left, seed.derive(0))?, generate(&right, seed.derive(1))?))
}

/// Runs every `(size, replication)` cell of `plan` in order.
///
/// `on_record` sees each record as soon as it is measured.
pub fn run_plan_with(plan: &ExperimentPlan, mut on_record: impl FnMut(&BenchmarkRecord)) -> Result<Vec<BenchmarkRecord>> {
    plan.validate()?;
    let threshold = min_valid_elapsed();
    let mut records = Vec::with_capacity(plan.sizes.len() * plan.replications);
    for &n in &plan.sizes {
        for rep in 0..plan.replications as u64 {
            let seed = plan.base_seed.for_cell(n, rep);
            let (x, y) = operands(plan.kernel, n, plan.d1, plan.d2, plan.mu_prime, seed)?;
            for _ in 0..plan.warmups {
                black_box(multiply(plan.kernel, black_box(&x), black_box(&y), plan.strassen_cutoff)?);
            }
            let start = Instant::now();
            let result = multiply(plan.kernel, black_box(&x), black_box(&y), plan.strassen_cutoff);
            let elapsed = start.elapsed();
            let result = black_box(result?);
            let record = BenchmarkRecord {
                kernel: plan.kernel,
                n,
                d1: plan.d1,
                d2: plan.d2,
                mu_prime: plan.mu_prime,
                seed,
                rep,
                elapsed_seconds: elapsed.as_secs_f64(),
                counts: result.counts,
                valid: !elapsed.is_zero() && elapsed >= threshold,
            };
            on_record(&record);
            records.push(record);
        }
    }
    Ok(records)
}

pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<BenchmarkRecord>> {
    run_plan_with(plan, |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_is_positive() {
        assert!(timer_resolution() > Duration::ZERO);
        assert!(min_valid_elapsed() < Duration::from_millis(10));
    }

    #[test]
    fn operand_roles_follow_kernel() {
        let (x, y) = operands(KernelId::AfmmA, 16, 1.0, 1.0, 3.0, Seed(5)).unwrap();
        assert!(!x.is_integer_valued() && y.is_integer_valued());
        let (x, y) = operands(KernelId::AfmmB, 16, 1.0, 1.0, 3.0, Seed(5)).unwrap();
        assert!(x.is_integer_valued() && !y.is_integer_valued());
    }
}
