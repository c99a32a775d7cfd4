//! Dense `n×n` matrix multiplication where every product term is replaced by
//! repeated addition, skipping zero elements.
//!
//! The crate provides five kernels over a row-major [`DenseMatrix`]:
//! classical `ijk` and `ikj`, Strassen's recursion, and the two repeated
//! addition variants ([`afmm_case_a`], [`afmm_case_b`]). Every kernel returns
//! the product together with an exact [`OpCounts`] tally, so average-case cost
//! can be checked against the closed-form prediction in [`analysis`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
mod error;
pub mod generate;
pub mod kernels;
pub mod matrix;

pub use analysis::{
    cost_per_addition, effective_mean, fit_power_law, percent_reduction, predict_additions,
    summarize, CostParams, FitResult, SampleStats,
};
pub use error::{Error, Result};
pub use generate::{generate, splitmix64, GeneratorSpec, Seed, ValueDistribution};
pub use kernels::{
    afmm_case_a, afmm_case_b, multiply, multiply_ijk, multiply_ikj, multiply_strassen, KernelId,
    MultiplyResult, OpCounts, DEFAULT_STRASSEN_CUTOFF,
};
pub use matrix::DenseMatrix;
