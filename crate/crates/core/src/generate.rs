//! Seeded random matrices with controlled density and nonzero-value mean.
//!
//! Generation uses ChaCha8 seeded through `SeedableRng::seed_from_u64`. Each
//! entry, in row-major order, first draws a uniform `f64` in `[0, 1)` and is
//! nonzero iff that draw is below the density; a nonzero entry then draws its
//! value from the configured [`ValueDistribution`]. The output is a pure
//! function of `(spec, seed)`.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed(pub u64);

impl Seed {
    /// Derives an independent seed for a sub-stream labelled by `tag`.
    pub fn derive(self, tag: u64) -> Seed {
        Seed(splitmix64(self.0 ^ splitmix64(tag)))
    }

    /// `self ⊕ hash(n, rep)`: a per-cell seed that does not depend on the
    /// other cells of an experiment.
    pub fn for_cell(self, n: usize, rep: u64) -> Seed {
        Seed(self.0 ^ splitmix64(splitmix64(n as u64) ^ rep))
    }
}

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Distribution of the nonzero entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValueDistribution {
    /// Uniform over `{1, …, 2·mu_prime − 1}`, mean exactly `mu_prime`.
    /// `mu_prime = 1` is the constant 1.
    Integer { mu_prime: u32 },
    /// Uniform over `[low, high]`.
    Real { low: f64, high: f64 },
    /// Uniform over the integers of `[low, high]`. A drawn zero stays zero,
    /// so the realized density can fall below the configured one.
    SignedInteger { low: i32, high: i32 },
}

impl ValueDistribution {
    pub const DEFAULT_REAL: ValueDistribution = ValueDistribution::Real { low: 0.5, high: 1.5 };

    /// Mean of a single draw.
    pub fn mean(&self) -> f64 {
        match *self {
            ValueDistribution::Integer { mu_prime } => f64::from(mu_prime),
            ValueDistribution::Real { low, high } => 0.5 * (low + high),
            ValueDistribution::SignedInteger { low, high } => 0.5 * (f64::from(low) + f64::from(high)),
        }
    }

    pub fn is_integer_valued(&self) -> bool {
        !matches!(self, ValueDistribution::Real { .. })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ValueDistribution::Integer { mu_prime: 0 } => {
                Err(Error::InvalidParameter("mu_prime must be a positive integer"))
            }
            ValueDistribution::Real { low, high }
                if !(low.is_finite() && high.is_finite() && low <= high) =>
            {
                Err(Error::InvalidParameter("real value bounds must be finite with low <= high"))
            }
            ValueDistribution::SignedInteger { low, high } if low > high => {
                Err(Error::InvalidParameter("integer value bounds must satisfy low <= high"))
            }
            _ => Ok(()),
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            ValueDistribution::Integer { mu_prime } => {
                let hi = 2 * u64::from(mu_prime) - 1;
                rng.gen_range(1..=hi) as f64
            }
            ValueDistribution::Real { low, high } => {
                if low == high {
                    low
                } else {
                    rng.gen_range(low..=high)
                }
            }
            ValueDistribution::SignedInteger { low, high } => f64::from(rng.gen_range(low..=high)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub n: usize,
    /// Probability that an entry is nonzero.
    pub density: f64,
    pub values: ValueDistribution,
}

impl GeneratorSpec {
    pub fn new(n: usize, density: f64, values: ValueDistribution) -> Result<Self> {
        let spec = Self { n, density, values };
        spec.validate()?;
        Ok(spec)
    }

    /// Integer-valued entries with nonzero mean `mu_prime`, which must be a
    /// positive integer.
    pub fn integer(n: usize, density: f64, mu_prime: f64) -> Result<Self> {
        if !(mu_prime >= 1.0 && libm::trunc(mu_prime) == mu_prime && mu_prime <= f64::from(u32::MAX / 2)) {
            return Err(Error::InvalidParameter("mu_prime must be a positive integer"));
        }
        Self::new(n, density, ValueDistribution::Integer { mu_prime: mu_prime as u32 })
    }

    /// Real-valued entries uniform on `[0.5, 1.5]`.
    pub fn real(n: usize, density: f64) -> Result<Self> {
        Self::new(n, density, ValueDistribution::DEFAULT_REAL)
    }

    pub fn mu_prime(&self) -> f64 {
        self.values.mean()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidDimension);
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::InvalidParameter("density must lie in [0, 1]"));
        }
        self.values.validate()
    }
}

pub fn generate(spec: &GeneratorSpec, seed: Seed) -> Result<DenseMatrix> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let len = spec.n * spec.n;
    let mut data = Vec::with_capacity(len);
    for _ in 0..len {
        let keep: f64 = rng.gen();
        data.push(if keep < spec.density { spec.values.sample(&mut rng) } else { 0.0 });
    }
    Ok(DenseMatrix::from_raw(spec.n, data))
}
