use std::path::PathBuf;

use afmm::{KernelId, Seed, DEFAULT_STRASSEN_CUTOFF};
use clap::Args;

use crate::error::{BenchError, Result};

pub const DEFAULT_REPLICATIONS: usize = 20;
pub const DEFAULT_WARMUPS: usize = 2;

/// One designed experiment: a kernel swept over sizes at fixed densities
/// and nonzero mean.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub kernel: KernelId,
    /// Strictly increasing.
    pub sizes: Vec<usize>,
    pub d1: f64,
    pub d2: f64,
    pub mu_prime: f64,
    pub replications: usize,
    pub warmups: usize,
    pub base_seed: Seed,
    pub strassen_cutoff: usize,
}

impl ExperimentPlan {
    /// A plan with the default replication, warmup and cutoff settings.
    pub fn new(kernel: KernelId, sizes: Vec<usize>, d1: f64, d2: f64, mu_prime: f64, base_seed: u64) -> Self {
        Self {
            kernel,
            sizes,
            d1,
            d2,
            mu_prime,
            replications: DEFAULT_REPLICATIONS,
            warmups: DEFAULT_WARMUPS,
            base_seed: Seed(base_seed),
            strassen_cutoff: DEFAULT_STRASSEN_CUTOFF,
        }
    }

    pub fn with_replications(mut self, replications: usize) -> Self {
        self.replications = replications;
        self
    }

    pub fn with_warmups(mut self, warmups: usize) -> Self {
        self.warmups = warmups;
        self
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.strassen_cutoff = cutoff;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(BenchError::Plan(m.to_owned()));
        if self.sizes.is_empty() {
            return fail("sizes must not be empty");
        }
        if self.sizes.contains(&0) {
            return fail("sizes must be positive");
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return fail("sizes must be strictly increasing");
        }
        if !(0.0..=1.0).contains(&self.d1) || !(0.0..=1.0).contains(&self.d2) {
            return fail("densities must lie in [0, 1]");
        }
        if !(self.mu_prime >= 1.0 && self.mu_prime.fract() == 0.0 && self.mu_prime <= f64::from(u32::MAX / 2)) {
            return fail("mu must be a positive integer (repetition factors are integer-valued)");
        }
        if self.replications == 0 {
            return fail("reps must be at least 1");
        }
        if self.strassen_cutoff == 0 {
            return fail("cutoff must be at least 1");
        }
        Ok(())
    }
}

/// Flags of the `bench` subcommand.
#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Kernel to time: ijk, ikj, strassen, afmm-a or afmm-b.
    #[arg(long)]
    pub kernel: KernelId,
    /// Comma-separated, strictly increasing matrix sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Density of the left operand.
    #[arg(long)]
    pub d1: f64,
    /// Density of the right operand.
    #[arg(long)]
    pub d2: f64,
    /// Mean of the nonzero repetition factors.
    #[arg(long = "mu")]
    pub mu_prime: f64,
    #[arg(long = "reps", default_value_t = DEFAULT_REPLICATIONS)]
    pub replications: usize,
    #[arg(long, default_value_t = DEFAULT_WARMUPS)]
    pub warmups: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Strassen recursion cutoff.
    #[arg(long, default_value_t = DEFAULT_STRASSEN_CUTOFF)]
    pub cutoff: usize,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl BenchArgs {
    pub fn to_plan(&self) -> Result<ExperimentPlan> {
        let plan = ExperimentPlan {
            kernel: self.kernel,
            sizes: self.sizes.clone(),
            d1: self.d1,
            d2: self.d2,
            mu_prime: self.mu_prime,
            replications: self.replications,
            warmups: self.warmups,
            base_seed: Seed(self.seed),
            strassen_cutoff: self.cutoff,
        };
        plan.validate()?;
        Ok(plan)
    }
}
