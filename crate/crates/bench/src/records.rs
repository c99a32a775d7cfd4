//! CSV serialization of benchmark records.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use afmm::{KernelId, OpCounts, Seed};

use crate::error::{BenchError, Result};
use crate::harness::BenchmarkRecord;

pub const CSV_HEADER: [&str; 11] = [
    "kernel",
    "n",
    "d1",
    "d2",
    "mu_prime",
    "seed",
    "rep",
    "elapsed_seconds",
    "additions",
    "multiplications",
    "zero_skips",
];

/// Writes the header and one row per record, in the given order.
/// Elapsed time is written with nine decimals.
pub fn write_csv<W: Write>(records: &[BenchmarkRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.kernel.as_str().to_owned(),
            r.n.to_string(),
            r.d1.to_string(),
            r.d2.to_string(),
            r.mu_prime.to_string(),
            r.seed.0.to_string(),
            r.rep.to_string(),
            format!("{:.9}", r.elapsed_seconds),
            r.counts.additions.to_string(),
            r.counts.multiplications.to_string(),
            r.counts.zero_skips.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[BenchmarkRecord], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(BenchError::io(path))?;
    write_csv(records, file).map_err(|e| match e {
        BenchError::IoUnnamed(source) => BenchError::Io { path: path.to_owned(), source },
        other => other,
    })
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchmarkRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(BenchError::Parse { line: 1, message: format!("unexpected header {header:?}") });
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let field = |idx: usize| row.get(idx).unwrap_or_default();
        let bad = |what: &str| BenchError::Parse { line, message: format!("bad {what}: {:?}", field(CSV_HEADER.iter().position(|h| *h == what).unwrap())) };
        let kernel: KernelId = field(0).parse().map_err(|_| bad("kernel"))?;
        let num = |idx: usize, what: &str| field(idx).parse::<f64>().map_err(|_| bad(what));
        let int = |idx: usize, what: &str| field(idx).parse::<u64>().map_err(|_| bad(what));
        out.push(BenchmarkRecord {
            kernel,
            n: int(1, "n")? as usize,
            d1: num(2, "d1")?,
            d2: num(3, "d2")?,
            mu_prime: num(4, "mu_prime")?,
            seed: Seed(int(5, "seed")?),
            rep: int(6, "rep")?,
            elapsed_seconds: num(7, "elapsed_seconds")?,
            counts: OpCounts {
                additions: int(8, "additions")?,
                multiplications: int(9, "multiplications")?,
                zero_skips: int(10, "zero_skips")?,
            },
            valid: true,
        });
    }
    Ok(out)
}

pub fn load_csv(path: &Path) -> Result<Vec<BenchmarkRecord>> {
    let file = File::open(path).map_err(BenchError::io(path))?;
    read_csv(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(kernel: KernelId, n: usize, rep: u64, elapsed: f64) -> BenchmarkRecord {
        BenchmarkRecord {
            kernel,
            n,
            d1: 1.0 / 3.0,
            d2: 0.5,
            mu_prime: 3.0,
            seed: Seed(u64::MAX - rep),
            rep,
            elapsed_seconds: elapsed,
            counts: OpCounts { additions: 131_072, multiplications: 0, zero_skips: 2731 },
            valid: true,
        }
    }

    fn emit(records: &[BenchmarkRecord]) -> String {
        let mut buf = Vec::new();
        write_csv(records, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn header_only_when_empty() {
        assert_eq!(
            emit(&[]),
            "kernel,n,d1,d2,mu_prime,seed,rep,elapsed_seconds,additions,multiplications,zero_skips\n"
        );
    }

    #[test]
    fn one_line_per_record() {
        let text = emit(&[rec(KernelId::AfmmA, 64, 0, 0.25), rec(KernelId::Ikj, 64, 1, 1.5)]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[1],
            "afmm-a,64,0.3333333333333333,0.5,3,18446744073709551615,0,0.250000000,131072,0,2731"
        );
    }

    #[test]
    fn round_trip_to_nine_decimals() {
        let records = vec![rec(KernelId::AfmmB, 8, 3, 0.123456789123), rec(KernelId::Strassen, 16, 4, 2e-3)];
        let back = read_csv(emit(&records).as_bytes()).unwrap();
        assert_eq!(back.len(), 2);
        for (a, b) in records.iter().zip(&back) {
            assert!((a.elapsed_seconds - b.elapsed_seconds).abs() < 5e-10);
            assert_eq!(
                (a.kernel, a.n, a.d1, a.d2, a.mu_prime, a.seed, a.rep, a.counts),
                (b.kernel, b.n, b.d1, b.d2, b.mu_prime, b.seed, b.rep, b.counts)
            );
        }
    }

    #[test]
    fn rejects_foreign_csv() {
        assert!(matches!(read_csv("a,b\n1,2\n".as_bytes()), Err(BenchError::Parse { line: 1, .. })));
        let text = emit(&[rec(KernelId::Ijk, 4, 0, 1.0)]).replace("ijk", "xyz");
        assert!(matches!(read_csv(text.as_bytes()), Err(BenchError::Parse { line: 2, .. })));
    }
}
