use std::fs;

use afmm::{KernelId, OpCounts, Seed};
use afmm_bench::report::ReportTable;
use afmm_bench::verify::TABLE1_CSV;
use afmm_bench::{emit_plot_data, emit_table, read_csv, BenchmarkRecord};

fn rec(kernel: KernelId, n: usize, mu: f64, rep: u64, elapsed: f64) -> BenchmarkRecord {
    BenchmarkRecord {
        kernel,
        n,
        d1: 0.5,
        d2: 0.5,
        mu_prime: mu,
        seed: Seed(rep),
        rep,
        elapsed_seconds: elapsed,
        counts: OpCounts::default(),
        valid: true,
    }
}

#[test]
fn reference_reductions() {
    let table = ReportTable::from_records(&read_csv(TABLE1_CSV.as_bytes()).unwrap()).unwrap();
    assert_eq!(table.sizes, [250, 500, 750, 1000, 1250, 1500, 1750, 2000]);
    assert_eq!(table.columns.len(), 8);
    let ikj = table.reductions(KernelId::Ikj).unwrap();
    let (_, last) = ikj.last().unwrap();
    let fmt = |v: Option<f64>| format!("{:.1}", v.unwrap());
    // μ′ = 1, 14, 21 at n = 2000: "around 64", "19" and "17" percent.
    assert_eq!(fmt(last[2]), "63.7");
    assert_eq!(fmt(last[6]), "18.7");
    assert_eq!(fmt(last[7]), "16.7");
    assert!(last[0].is_none() && last[1].is_none());
}

#[test]
fn reference_table_layout() {
    let md = emit_table(&read_csv(TABLE1_CSV.as_bytes()).unwrap()).unwrap();
    let first = md.lines().next().unwrap();
    assert_eq!(
        first,
        "| n | ijk | ikj | afmm-a μ′=1 | afmm-a μ′=3 | afmm-a μ′=5 | afmm-a μ′=7 | afmm-a μ′=14 | afmm-a μ′=21 |"
    );
    assert!(md.contains("| 2000 | 205.422 | 147.078 | 53.375 | 94.6875 | 120.852 | 145.899 | 119.516 | 122.491 |"));
    // 8 data rows + header + rule + 8 reductions vs ikj + 8 vs ijk
    assert_eq!(md.lines().count(), 26);
}

#[test]
fn reference_series_increase_with_n() {
    let dir = tempfile::tempdir().unwrap();
    let files = emit_plot_data(&read_csv(TABLE1_CSV.as_bytes()).unwrap(), dir.path()).unwrap();
    assert_eq!(files.len(), 9);
    for f in &files[..8] {
        let means: Vec<f64> = fs::read_to_string(f)
            .unwrap()
            .lines()
            .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
            .collect();
        assert_eq!(means.len(), 8);
        assert!(means.windows(2).all(|w| w[0] < w[1]), "{}", f.display());
    }
}

#[test]
fn plot_series_shape() {
    let mut records = Vec::new();
    for n in [16, 32, 64] {
        records.push(rec(KernelId::Ikj, n, 1.0, 0, n as f64));
        records.push(rec(KernelId::AfmmA, n, 3.0, 0, n as f64 / 2.0));
    }
    let dir = tempfile::tempdir().unwrap();
    let files = emit_plot_data(&records, dir.path()).unwrap();
    assert_eq!(files.len(), 3);
    let ikj = fs::read_to_string(&files[0]).unwrap();
    assert_eq!(ikj, "16 16 0\n32 32 0\n64 64 0\n");
    assert_eq!(fs::read_to_string(&files[1]).unwrap().lines().count(), 3);
    let manifest = fs::read_to_string(&files[2]).unwrap();
    assert_eq!(manifest, "file\tlabel\nseries_01_ikj.dat\tikj\nseries_02_afmm-a_mu3.dat\tafmm-a μ′=3\n");
}

#[test]
fn emitters_are_pure() {
    let records: Vec<_> = (0..4).map(|r| rec(KernelId::AfmmB, 32, 5.0, r, 0.1 + r as f64)).collect();
    assert_eq!(emit_table(&records).unwrap(), emit_table(&records).unwrap());
    let mut shuffled = records.clone();
    shuffled.reverse();
    assert_eq!(emit_table(&records).unwrap(), emit_table(&shuffled).unwrap());
}
