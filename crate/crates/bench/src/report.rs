//! Mean-time tables and plot series built from benchmark records.
//!
//! Rows are matrix sizes; columns are kernel configurations in order of first
//! appearance. Repeated-addition kernels get one column per `μ′`, since their
//! cost depends on it; the other kernels get one column each.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use afmm::{percent_reduction, summarize, KernelId, SampleStats};

use crate::error::{BenchError, Result};
use crate::harness::BenchmarkRecord;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Configuration {
    pub kernel: KernelId,
    pub mu_prime: Option<f64>,
}

impl Configuration {
    pub fn of(record: &BenchmarkRecord) -> Self {
        Self {
            kernel: record.kernel,
            mu_prime: record.kernel.is_afmm().then_some(record.mu_prime),
        }
    }

    pub fn label(&self) -> String {
        match self.mu_prime {
            Some(mu) => format!("{} μ′={mu}", self.kernel),
            None => self.kernel.to_string(),
        }
    }

    fn slug(&self) -> String {
        match self.mu_prime {
            Some(mu) => format!("{}_mu{mu}", self.kernel),
            None => self.kernel.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportTable {
    pub sizes: Vec<usize>,
    pub columns: Vec<Configuration>,
    /// `cells[row][col]`, statistics of elapsed seconds.
    pub cells: Vec<Vec<SampleStats>>,
}

impl ReportTable {
    /// Groups valid records into the size × configuration grid.
    pub fn from_records(records: &[BenchmarkRecord]) -> Result<Self> {
        let valid: Vec<&BenchmarkRecord> = records.iter().filter(|r| r.valid).collect();
        if valid.is_empty() {
            return Err(BenchError::NoRecords);
        }
        let mut columns: Vec<Configuration> = Vec::new();
        let mut sizes: Vec<usize> = Vec::new();
        for r in &valid {
            let c = Configuration::of(r);
            if !columns.contains(&c) {
                columns.push(c);
            }
            sizes.push(r.n);
        }
        sizes.sort_unstable();
        sizes.dedup();

        let mut cells = Vec::with_capacity(sizes.len());
        let mut missing = Vec::new();
        for &n in &sizes {
            let mut row = Vec::with_capacity(columns.len());
            for c in &columns {
                let samples: Vec<f64> = valid
                    .iter()
                    .filter(|r| r.n == n && Configuration::of(r) == *c)
                    .map(|r| r.elapsed_seconds)
                    .collect();
                match summarize(&samples) {
                    Ok(s) => row.push(s),
                    Err(_) => missing.push(format!("n={n} × {}", c.label())),
                }
            }
            cells.push(row);
        }
        if !missing.is_empty() {
            return Err(BenchError::IncompleteGrid { missing });
        }
        Ok(Self { sizes, columns, cells })
    }

    pub fn mean(&self, n: usize, column: &Configuration) -> Option<f64> {
        let r = self.sizes.iter().position(|&s| s == n)?;
        let c = self.columns.iter().position(|x| x == column)?;
        Some(self.cells[r][c].mean)
    }

    /// Percent reduction of every repeated-addition column against the
    /// `baseline` kernel's column, one row per size. `None` when the table
    /// has no such baseline or no repeated-addition column.
    pub fn reductions(&self, baseline: KernelId) -> Option<Vec<(usize, Vec<Option<f64>>)>> {
        let b = self.columns.iter().position(|c| c.kernel == baseline)?;
        if !self.columns.iter().any(|c| c.kernel.is_afmm()) {
            return None;
        }
        Some(
            self.sizes
                .iter()
                .zip(&self.cells)
                .map(|(&n, row)| {
                    let vals = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, s)| {
                            c.kernel
                                .is_afmm()
                                .then(|| percent_reduction(row[b].mean, s.mean).ok())
                                .flatten()
                        })
                        .collect();
                    (n, vals)
                })
                .collect(),
        )
    }

    /// Markdown table of mean elapsed seconds, followed by reduction rows
    /// against `ikj` and then `ijk` when those columns are present.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| n |");
        for c in &self.columns {
            write!(out, " {} |", c.label()).unwrap();
        }
        out.push_str("\n|---:|");
        for _ in &self.columns {
            out.push_str("---:|");
        }
        out.push('\n');
        for (n, row) in self.sizes.iter().zip(&self.cells) {
            write!(out, "| {n} |").unwrap();
            for s in row {
                write!(out, " {} |", format_sig(s.mean, 6)).unwrap();
            }
            out.push('\n');
        }
        for baseline in [KernelId::Ikj, KernelId::Ijk] {
            let Some(rows) = self.reductions(baseline) else { continue };
            for (n, vals) in rows {
                write!(out, "| reduction vs {baseline}, n={n} |").unwrap();
                for v in vals {
                    match v {
                        Some(p) => write!(out, " {p:.1}% |").unwrap(),
                        None => out.push_str(" |"),
                    }
                }
                out.push('\n');
            }
        }
        out
    }
}

pub fn emit_table(records: &[BenchmarkRecord]) -> Result<String> {
    Ok(ReportTable::from_records(records)?.to_markdown())
}

/// Writes one `n mean stddev` series file per configuration into `dir`,
/// plus `manifest.tsv` mapping file names to labels. Returns the files
/// written, manifest last.
pub fn emit_plot_data(records: &[BenchmarkRecord], dir: &Path) -> Result<Vec<PathBuf>> {
    let table = ReportTable::from_records(records)?;
    fs::create_dir_all(dir).map_err(BenchError::io(dir))?;
    let mut written = Vec::new();
    let mut manifest = String::from("file\tlabel\n");
    for (idx, c) in table.columns.iter().enumerate() {
        let name = format!("series_{:02}_{}.dat", idx + 1, c.slug());
        let mut body = String::new();
        for (n, row) in table.sizes.iter().zip(&table.cells) {
            writeln!(body, "{n} {} {}", row[idx].mean, row[idx].std_dev).unwrap();
        }
        let path = dir.join(&name);
        fs::write(&path, body).map_err(BenchError::io(&path))?;
        writeln!(manifest, "{name}\t{}", c.label()).unwrap();
        written.push(path);
    }
    let path = dir.join("manifest.tsv");
    fs::write(&path, manifest).map_err(BenchError::io(&path))?;
    written.push(path);
    Ok(written)
}

/// `digits` significant digits, trailing zeros trimmed; scientific notation
/// outside `[1e-4, 1e6)`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    // Scientific formatting fixes the exponent after rounding.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if exp < -4 || exp >= digits as i32 {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    trim_zeros(&format!("{:.*}", (digits as i32 - 1 - exp) as usize, x)).to_owned()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use afmm::{OpCounts, Seed};

    fn rec(kernel: KernelId, n: usize, mu: f64, elapsed: f64) -> BenchmarkRecord {
        BenchmarkRecord {
            kernel,
            n,
            d1: 1.0 / 3.0,
            d2: 0.5,
            mu_prime: mu,
            seed: Seed(0),
            rep: 0,
            elapsed_seconds: elapsed,
            counts: OpCounts::default(),
            valid: true,
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.411667, 6), "0.411667");
        assert_eq!(format_sig(205.422, 6), "205.422");
        assert_eq!(format_sig(0.328, 6), "0.328");
        assert_eq!(format_sig(1.23456789, 6), "1.23457");
        assert_eq!(format_sig(9.9999999, 6), "10");
        assert_eq!(format_sig(0.099999999, 6), "0.1");
        assert_eq!(format_sig(123456.7, 6), "123457");
        assert_eq!(format_sig(999999.7, 6), "1e6");
        assert_eq!(format_sig(0.00001234567, 6), "1.23457e-5");
        assert_eq!(format_sig(0.0, 6), "0");
    }

    #[test]
    fn single_cell_has_no_footer() {
        let t = emit_table(&[rec(KernelId::Ikj, 250, 1.0, 0.328)]).unwrap();
        assert_eq!(t, "| n | ikj |\n|---:|---:|\n| 250 | 0.328 |\n");
    }

    #[test]
    fn footer_against_ikj() {
        let t = emit_table(&[
            rec(KernelId::Ikj, 250, 1.0, 0.328),
            rec(KernelId::AfmmA, 250, 1.0, 0.1752),
        ])
        .unwrap();
        assert!(t.ends_with("| reduction vs ikj, n=250 | | 46.6% |\n"), "{t}");
        assert!(!t.contains("vs ijk"));
    }

    #[test]
    fn cells_average_replications() {
        let table = ReportTable::from_records(&[
            rec(KernelId::AfmmA, 8, 3.0, 1.0),
            rec(KernelId::AfmmA, 8, 3.0, 3.0),
            rec(KernelId::AfmmA, 8, 7.0, 5.0),
        ])
        .unwrap();
        assert_eq!(table.columns.len(), 2);
        let c = Configuration { kernel: KernelId::AfmmA, mu_prime: Some(3.0) };
        assert_eq!(table.mean(8, &c), Some(2.0));
    }

    #[test]
    fn invalid_records_are_ignored() {
        let mut bad = rec(KernelId::Ikj, 8, 1.0, 100.0);
        bad.valid = false;
        let table = ReportTable::from_records(&[rec(KernelId::Ikj, 8, 1.0, 1.0), bad.clone()]).unwrap();
        assert_eq!(table.cells[0][0].count, 1);
        assert!(matches!(ReportTable::from_records(&[bad]), Err(BenchError::NoRecords)));
    }

    #[test]
    fn missing_cell_is_reported() {
        let err = emit_table(&[
            rec(KernelId::Ikj, 250, 1.0, 0.3),
            rec(KernelId::Ikj, 500, 1.0, 2.3),
            rec(KernelId::AfmmA, 250, 1.0, 0.2),
        ])
        .unwrap_err();
        match err {
            BenchError::IncompleteGrid { missing } => assert_eq!(missing, ["n=500 × afmm-a μ′=1"]),
            other => panic!("{other}"),
        }
    }
}
