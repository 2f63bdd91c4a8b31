//! Benchmark harness: run decomposition methods over an instance file and
//! aggregate per bucket.

use crate::battery::{Bucket, InstanceRecord};
use kunz::{
    decompose_compact, decompose_exact, decompose_heuristic, decompose_oracle, Decomposition,
    Method, SolveLimits,
};
use std::collections::BTreeMap;
use std::time::Instant;

/// Per (bucket, method) aggregate. `gap_mean` is the mean of
/// `heuristic size - minimal size` and is only populated on heuristic rows
/// when a minimal method ran on the same instances.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub bucket: Bucket,
    pub method: Method,
    pub time_s: f64,
    pub sg_mean: f64,
    pub parts_mean: f64,
    pub gap_mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Human-readable notes for instances that failed, one per failure.
    pub failures: Vec<String>,
}

fn run_method(
    method: Method,
    x: &kunz::KunzCoordinates,
    limits: &SolveLimits,
) -> Result<Decomposition, kunz::DecomposeError> {
    match method {
        Method::Exact => decompose_exact(x, limits),
        Method::Heuristic => decompose_heuristic(x, limits),
        Method::Compact => decompose_compact(x, false, limits),
        Method::CompactSymmetric => decompose_compact(x, true, limits),
        Method::Oracle => decompose_oracle(x, limits),
    }
}

/// Runs every method on every instance. Wall time covers the decomposition
/// only, not parsing. Failed runs become notes, never aborts.
pub fn run(
    records: &[InstanceRecord],
    methods: &[Method],
    limits: &SolveLimits,
) -> BenchReport {
    struct Cell {
        time_s: Vec<f64>,
        sg: Vec<f64>,
        parts: Vec<f64>,
        gaps: Vec<f64>,
    }
    let mut cells: BTreeMap<(String, usize), Cell> = BTreeMap::new();
    let mut buckets: BTreeMap<String, Bucket> = BTreeMap::new();
    let mut failures = Vec::new();

    // A minimal method to measure the heuristic against, if one is listed.
    let minimal_ref = methods
        .iter()
        .copied()
        .find(|m| matches!(m, Method::Compact | Method::Exact | Method::Oracle));

    for record in records {
        let x = match record.spec().load() {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("instance {}: {e}", record.label));
                continue;
            }
        };
        let key_bucket = record.bucket.to_string();
        buckets.insert(key_bucket.clone(), record.bucket);
        let mut minimal_size: Option<usize> = None;
        let mut heuristic_size: Option<usize> = None;
        let mut results: Vec<(usize, f64, usize)> = Vec::new(); // method idx, secs, parts
        for (mi, &method) in methods.iter().enumerate() {
            let start = Instant::now();
            match run_method(method, &x, limits) {
                Ok(d) => {
                    let secs = start.elapsed().as_secs_f64();
                    if Some(method) == minimal_ref {
                        minimal_size = Some(d.size());
                    }
                    if method == Method::Heuristic {
                        heuristic_size = Some(d.size());
                    }
                    results.push((mi, secs, d.size()));
                }
                Err(e) => {
                    failures.push(format!(
                        "instance {} method {}: {e}",
                        record.label, method
                    ));
                }
            }
        }
        let sg_count = x.special_gaps_above_m().len() as f64;
        for (mi, secs, parts) in results {
            let cell = cells.entry((key_bucket.clone(), mi)).or_insert_with(|| Cell {
                time_s: Vec::new(),
                sg: Vec::new(),
                parts: Vec::new(),
                gaps: Vec::new(),
            });
            cell.time_s.push(secs);
            cell.sg.push(sg_count);
            cell.parts.push(parts as f64);
            if methods[mi] == Method::Heuristic {
                if let (Some(h), Some(m)) = (heuristic_size, minimal_size) {
                    cell.gaps.push(h as f64 - m as f64);
                }
            }
        }
    }

    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let rows = cells
        .into_iter()
        .map(|((bucket_key, mi), cell)| BenchRow {
            bucket: buckets[&bucket_key],
            method: methods[mi],
            time_s: mean(&cell.time_s),
            sg_mean: mean(&cell.sg),
            parts_mean: mean(&cell.parts),
            gap_mean: if cell.gaps.is_empty() {
                if methods[mi] == Method::Heuristic { None } else { Some(0.0) }
            } else {
                Some(mean(&cell.gaps))
            },
        })
        .collect();
    BenchReport { rows, failures }
}

/// Fixed-column CSV: bucket, method, time_s, sg_mean, parts_mean, gap_mean.
/// Failures become `#` comment lines at the end.
pub fn to_csv(report: &BenchReport) -> String {
    use std::fmt::Write;
    let mut out = String::from("bucket,method,time_s,sg_mean,parts_mean,gap_mean\n");
    for r in &report.rows {
        let gap = r.gap_mean.map(|g| format!("{g:.3}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{:.6},{:.2},{:.2},{}",
            r.bucket, r.method, r.time_s, r.sg_mean, r.parts_mean, gap
        );
    }
    for f in &report.failures {
        let _ = writeln!(out, "# failed: {f}");
    }
    out
}

/// Plain-text table with the same columns.
pub fn to_text(report: &BenchReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<12} {:<18} {:>10} {:>8} {:>11} {:>9}",
        "bucket", "method", "time_s", "sg_mean", "parts_mean", "gap_mean"
    );
    for r in &report.rows {
        let gap = r.gap_mean.map(|g| format!("{g:.3}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<12} {:<18} {:>10.6} {:>8.2} {:>11.2} {:>9}",
            r.bucket.to_string(),
            r.method.to_string(),
            r.time_s,
            r.sg_mean,
            r.parts_mean,
            gap
        );
    }
    for f in &report.failures {
        let _ = writeln!(out, "failed: {f}");
    }
    out
}
