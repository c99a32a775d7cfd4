//! Multiplication kernels with exact operation counts.
//!
//! Only operations on element values are tallied; index arithmetic is not.
//! Every kernel accumulates each `Z[i][j]` in increasing `k` starting from
//! zero, so integer-valued inputs yield bit-identical products across kernels.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign};
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

pub const DEFAULT_STRASSEN_CUTOFF: usize = 64;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounts {
    /// Scalar additions and subtractions on element values.
    pub additions: u64,
    pub multiplications: u64,
    /// Iterations bypassed because the base element was zero.
    pub zero_skips: u64,
}

impl Add for OpCounts {
    type Output = OpCounts;

    fn add(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            additions: self.additions + rhs.additions,
            multiplications: self.multiplications + rhs.multiplications,
            zero_skips: self.zero_skips + rhs.zero_skips,
        }
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: OpCounts) {
        *self = *self + rhs;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplyResult {
    pub product: DenseMatrix,
    pub counts: OpCounts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelId {
    Ijk,
    Ikj,
    Strassen,
    AfmmA,
    AfmmB,
}

impl KernelId {
    pub const ALL: [KernelId; 5] =
        [KernelId::Ijk, KernelId::Ikj, KernelId::Strassen, KernelId::AfmmA, KernelId::AfmmB];

    pub fn as_str(self) -> &'static str {
        match self {
            KernelId::Ijk => "ijk",
            KernelId::Ikj => "ikj",
            KernelId::Strassen => "strassen",
            KernelId::AfmmA => "afmm-a",
            KernelId::AfmmB => "afmm-b",
        }
    }

    pub fn is_afmm(self) -> bool {
        matches!(self, KernelId::AfmmA | KernelId::AfmmB)
    }

    /// Kernels whose operation counts depend only on `n`.
    pub fn is_classical(self) -> bool {
        matches!(self, KernelId::Ijk | KernelId::Ikj)
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownKernel;

impl fmt::Display for UnknownKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown kernel (expected one of ijk, ikj, strassen, afmm-a, afmm-b)")
    }
}

impl core::error::Error for UnknownKernel {}

impl FromStr for KernelId {
    type Err = UnknownKernel;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        KernelId::ALL.into_iter().find(|k| k.as_str() == s).ok_or(UnknownKernel)
    }
}

/// Runs `kernel` on `x · y`. `cutoff` is only used by Strassen.
pub fn multiply(kernel: KernelId, x: &DenseMatrix, y: &DenseMatrix, cutoff: usize) -> Result<MultiplyResult> {
    match kernel {
        KernelId::Ijk => multiply_ijk(x, y),
        KernelId::Ikj => multiply_ikj(x, y),
        KernelId::Strassen => multiply_strassen(x, y, cutoff),
        KernelId::AfmmA => afmm_case_a(x, y),
        KernelId::AfmmB => afmm_case_b(x, y),
    }
}

fn check_same_dim(x: &DenseMatrix, y: &DenseMatrix) -> Result<usize> {
    if x.n() != y.n() {
        return Err(Error::Shape { expected: x.n(), found: y.n() });
    }
    Ok(x.n())
}

pub fn multiply_ijk(x: &DenseMatrix, y: &DenseMatrix) -> Result<MultiplyResult> {
    let n = check_same_dim(x, y)?;
    let (a, b) = (x.as_slice(), y.as_slice());
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += a[i * n + k] * b[k * n + j];
            }
            z[i * n + j] = acc;
        }
    }
    let cube = (n as u64).pow(3);
    Ok(MultiplyResult {
        product: DenseMatrix::from_raw(n, z),
        counts: OpCounts { additions: cube, multiplications: cube, zero_skips: 0 },
    })
}

pub fn multiply_ikj(x: &DenseMatrix, y: &DenseMatrix) -> Result<MultiplyResult> {
    let n = check_same_dim(x, y)?;
    let mut counts = OpCounts::default();
    let z = ikj_raw(x.as_slice(), y.as_slice(), n, &mut counts);
    Ok(MultiplyResult { product: DenseMatrix::from_raw(n, z), counts })
}

fn ikj_raw(a: &[f64], b: &[f64], n: usize, counts: &mut OpCounts) -> Vec<f64> {
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        let z_row = &mut z[i * n..(i + 1) * n];
        for k in 0..n {
            let aik = a[i * n + k];
            let b_row = &b[k * n..(k + 1) * n];
            for (zij, &bkj) in z_row.iter_mut().zip(b_row) {
                *zij += aik * bkj;
            }
        }
    }
    let cube = (n as u64).pow(3);
    counts.additions += cube;
    counts.multiplications += cube;
    z
}

/// Strassen's seven-product recursion.
///
/// Operands larger than `cutoff` are zero-padded to the next power of two and
/// split recursively; blocks of size `<= cutoff` fall back to the `ikj` kernel.
/// Counts include work done on the padding.
pub fn multiply_strassen(x: &DenseMatrix, y: &DenseMatrix, cutoff: usize) -> Result<MultiplyResult> {
    let n = check_same_dim(x, y)?;
    if cutoff == 0 {
        return Err(Error::InvalidParameter("strassen cutoff must be at least 1"));
    }
    let mut counts = OpCounts::default();
    if n <= cutoff {
        let z = ikj_raw(x.as_slice(), y.as_slice(), n, &mut counts);
        return Ok(MultiplyResult { product: DenseMatrix::from_raw(n, z), counts });
    }
    let m = n.next_power_of_two();
    let a = pad(x.as_slice(), n, m);
    let b = pad(y.as_slice(), n, m);
    let c = strassen_rec(&a, &b, m, cutoff, &mut counts);
    let mut z = Vec::with_capacity(n * n);
    for row in c.chunks_exact(m).take(n) {
        z.extend_from_slice(&row[..n]);
    }
    Ok(MultiplyResult { product: DenseMatrix::from_raw(n, z), counts })
}

fn pad(src: &[f64], n: usize, m: usize) -> Vec<f64> {
    if n == m {
        return src.to_vec();
    }
    let mut out = vec![0.0; m * m];
    for (dst, row) in out.chunks_exact_mut(m).zip(src.chunks_exact(n)) {
        dst[..n].copy_from_slice(row);
    }
    out
}

fn quadrants(src: &[f64], m: usize) -> [Vec<f64>; 4] {
    let h = m / 2;
    let mut q = [
        Vec::with_capacity(h * h),
        Vec::with_capacity(h * h),
        Vec::with_capacity(h * h),
        Vec::with_capacity(h * h),
    ];
    for (r, row) in src.chunks_exact(m).enumerate() {
        let top = if r < h { 0 } else { 2 };
        q[top].extend_from_slice(&row[..h]);
        q[top + 1].extend_from_slice(&row[h..]);
    }
    q
}

fn add(a: &[f64], b: &[f64], counts: &mut OpCounts) -> Vec<f64> {
    counts.additions += a.len() as u64;
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[f64], b: &[f64], counts: &mut OpCounts) -> Vec<f64> {
    counts.additions += a.len() as u64;
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn strassen_rec(a: &[f64], b: &[f64], m: usize, cutoff: usize, counts: &mut OpCounts) -> Vec<f64> {
    if m <= cutoff {
        return ikj_raw(a, b, m, counts);
    }
    let h = m / 2;
    let [a11, a12, a21, a22] = quadrants(a, m);
    let [b11, b12, b21, b22] = quadrants(b, m);

    let p1 = {
        let s = add(&a11, &a22, counts);
        let t = add(&b11, &b22, counts);
        strassen_rec(&s, &t, h, cutoff, counts)
    };
    let p2 = {
        let s = add(&a21, &a22, counts);
        strassen_rec(&s, &b11, h, cutoff, counts)
    };
    let p3 = {
        let t = sub(&b12, &b22, counts);
        strassen_rec(&a11, &t, h, cutoff, counts)
    };
    let p4 = {
        let t = sub(&b21, &b11, counts);
        strassen_rec(&a22, &t, h, cutoff, counts)
    };
    let p5 = {
        let s = add(&a11, &a12, counts);
        strassen_rec(&s, &b22, h, cutoff, counts)
    };
    let p6 = {
        let s = sub(&a21, &a11, counts);
        let t = add(&b11, &b12, counts);
        strassen_rec(&s, &t, h, cutoff, counts)
    };
    let p7 = {
        let s = sub(&a12, &a22, counts);
        let t = add(&b21, &b22, counts);
        strassen_rec(&s, &t, h, cutoff, counts)
    };

    // c11 = p1 + p4 - p5 + p7, c12 = p3 + p5, c21 = p2 + p4, c22 = p1 - p2 + p3 + p6
    let c11 = add(&sub(&add(&p1, &p4, counts), &p5, counts), &p7, counts);
    let c12 = add(&p3, &p5, counts);
    let c21 = add(&p2, &p4, counts);
    let c22 = add(&add(&sub(&p1, &p2, counts), &p3, counts), &p6, counts);

    let mut c = Vec::with_capacity(m * m);
    for r in 0..h {
        c.extend_from_slice(&c11[r * h..(r + 1) * h]);
        c.extend_from_slice(&c12[r * h..(r + 1) * h]);
    }
    for r in 0..h {
        c.extend_from_slice(&c21[r * h..(r + 1) * h]);
        c.extend_from_slice(&c22[r * h..(r + 1) * h]);
    }
    c
}

/// Adds `base` into `acc` `|rep|` times, negated when `rep < 0`.
#[inline]
fn replicate(acc: &mut f64, base: f64, rep: i64) -> u64 {
    let times = rep.unsigned_abs();
    let step = if rep < 0 { -base } else { base };
    for _ in 0..times {
        *acc += step;
    }
    times
}

/// Repeated-addition product with real `x` (bases) and integer `y`
/// (repetition factors).
///
/// For every nonzero `x[i][k]`, the base is added `y[k][j]` times into
/// `z[i][j]`. Zero bases skip the whole `j` sweep and count one zero skip.
/// No multiplication is performed.
pub fn afmm_case_a(x: &DenseMatrix, y: &DenseMatrix) -> Result<MultiplyResult> {
    let n = check_same_dim(x, y)?;
    let reps = y.integer_values()?;
    let bases = x.as_slice();
    let mut z = vec![0.0; n * n];
    let mut counts = OpCounts::default();
    for i in 0..n {
        let z_row = &mut z[i * n..(i + 1) * n];
        for k in 0..n {
            let base = bases[i * n + k];
            if base == 0.0 {
                counts.zero_skips += 1;
                continue;
            }
            for (zij, &rep) in z_row.iter_mut().zip(&reps[k * n..(k + 1) * n]) {
                counts.additions += replicate(zij, base, rep);
            }
        }
    }
    Ok(MultiplyResult { product: DenseMatrix::from_raw(n, z), counts })
}

/// Repeated-addition product with integer `x` (repetition factors) and real
/// `y` (bases).
///
/// A zero repetition factor skips its `j` sweep without a count; a zero base
/// skips a single `j` and counts one zero skip.
pub fn afmm_case_b(x: &DenseMatrix, y: &DenseMatrix) -> Result<MultiplyResult> {
    let n = check_same_dim(x, y)?;
    let reps = x.integer_values()?;
    let bases = y.as_slice();
    let mut z = vec![0.0; n * n];
    let mut counts = OpCounts::default();
    for i in 0..n {
        let z_row = &mut z[i * n..(i + 1) * n];
        for k in 0..n {
            let rep = reps[i * n + k];
            if rep == 0 {
                continue;
            }
            for (zij, &base) in z_row.iter_mut().zip(&bases[k * n..(k + 1) * n]) {
                if base == 0.0 {
                    counts.zero_skips += 1;
                    continue;
                }
                counts.additions += replicate(zij, base, rep);
            }
        }
    }
    Ok(MultiplyResult { product: DenseMatrix::from_raw(n, z), counts })
}
