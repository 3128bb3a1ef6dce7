//! Sweeps over the embeddings `1/r(1,a,b)` with `a + b = r - 1`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fan::{build_fan, fan_statistics};
use crate::group::{GroupSpec, LatticeContext};
use crate::ktheory::KTheory;

pub const CSV_HEADER: [&str; 12] = [
    "r",
    "a",
    "b",
    "junior_points",
    "triangles",
    "interior_edges",
    "boundary_edges",
    "h0_size",
    "b0_num",
    "b0_den",
    "isolated_flag",
    "runtime_ms",
];

/// All `(a, b)` with `a, b >= 1` and `a + b = r - 1`, optionally keeping only `a <= b`.
pub fn enumerate_embeddings(r: u64, dedupe_symmetry: bool) -> Vec<(u64, u64)> {
    if r < 3 {
        return Vec::new();
    }
    (1..r - 1)
        .map(|a| (a, r - 1 - a))
        .filter(|&(a, b)| !dedupe_symmetry || a <= b)
        .collect()
}

/// The singularity of `1/r(1,a,b)` is isolated when every weight is a unit mod `r`.
pub fn is_isolated(r: u64, a: u64, b: u64) -> bool {
    a.gcd(&r) == 1 && b.gcd(&r) == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyRecord {
    pub r: u64,
    pub a: u64,
    pub b: u64,
    pub junior_points: usize,
    pub triangles: usize,
    pub interior_edges: usize,
    pub boundary_edges: usize,
    pub h0_size: usize,
    pub b0: BigRational,
    pub isolated: bool,
    /// Zero unless timing was requested, so that output stays reproducible.
    pub runtime_ms: u64,
}

impl SurveyRecord {
    fn csv_row(&self) -> [String; 12] {
        [
            self.r.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.junior_points.to_string(),
            self.triangles.to_string(),
            self.interior_edges.to_string(),
            self.boundary_edges.to_string(),
            self.h0_size.to_string(),
            self.b0.numer().to_string(),
            self.b0.denom().to_string(),
            u8::from(self.isolated).to_string(),
            self.runtime_ms.to_string(),
        ]
    }
}

/// Full analysis of one embedding.
pub fn analyze_embedding(r: u64, a: u64, b: u64, timing: bool) -> Result<SurveyRecord> {
    let start = Instant::now();
    let ctx = LatticeContext::new(GroupSpec::cyclic(r, [1, a, b])?)?;
    let fan = build_fan(&ctx)?;
    let stats = fan_statistics(&ctx, &fan);
    let report = KTheory::new(&ctx, &fan)?.report()?;
    if stats.triangle_count as u64 != r {
        return Err(Error::invariant(
            "triangle-count",
            format!("{} triangles for r = {r}", stats.triangle_count),
        ));
    }
    Ok(SurveyRecord {
        r,
        a,
        b,
        junior_points: stats.vertex_count,
        triangles: stats.triangle_count,
        interior_edges: stats.interior_edge_count,
        boundary_edges: stats.boundary_edge_count,
        h0_size: report.h0.len(),
        b0: report.b0,
        isolated: is_isolated(r, a, b),
        runtime_ms: if timing {
            start.elapsed().as_millis().to_u64().unwrap_or(u64::MAX)
        } else {
            0
        },
    })
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    pub dedupe_symmetry: bool,
    pub isolated_only: bool,
    /// Worker cap; `None` uses every core.
    pub jobs: Option<usize>,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepFailure {
    pub r: u64,
    pub a: u64,
    pub b: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    pub records: Vec<SurveyRecord>,
    pub failures: Vec<SweepFailure>,
    /// Pairs `(r, a, b)` with `a < b` whose swapped embedding gave a different share.
    pub symmetry_mismatches: Vec<(u64, u64, u64)>,
}

fn embeddings_for(r: u64, opts: &SweepOptions) -> Vec<(u64, u64)> {
    enumerate_embeddings(r, opts.dedupe_symmetry)
        .into_iter()
        .filter(|&(a, b)| !opts.isolated_only || is_isolated(r, a, b))
        .collect()
}

fn run_sweep(
    r_min: u64,
    r_max: u64,
    opts: &SweepOptions,
    mut sink: impl FnMut(&[SurveyRecord]) -> Result<()>,
) -> Result<SweepOutcome> {
    if r_min < 2 || r_min > r_max {
        return Err(Error::InvalidRange { min: r_min, max: r_max });
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::invariant("thread-pool", e.to_string()))?;
    let mut outcome = SweepOutcome::default();
    for r in r_min..=r_max {
        let pairs = embeddings_for(r, opts);
        let results: Vec<Result<SurveyRecord>> = pool.install(|| {
            pairs
                .par_iter()
                .map(|&(a, b)| analyze_embedding(r, a, b, opts.timing))
                .collect()
        });
        let mut done = Vec::with_capacity(results.len());
        for (&(a, b), res) in pairs.iter().zip(results) {
            match res {
                Ok(rec) => done.push(rec),
                Err(e) => outcome.failures.push(SweepFailure {
                    r,
                    a,
                    b,
                    reason: e.to_string(),
                }),
            }
        }
        sink(&done)?;
        if !opts.dedupe_symmetry {
            for rec in done.iter().filter(|rec| rec.a < rec.b) {
                if let Some(mirror) = done.iter().find(|m| m.a == rec.b && m.b == rec.a) {
                    if mirror.b0 != rec.b0 {
                        outcome.symmetry_mismatches.push((r, rec.a, rec.b));
                    }
                }
            }
        }
        outcome.records.extend(done);
    }
    Ok(outcome)
}

/// Runs the sweep in memory.
pub fn sweep(r_min: u64, r_max: u64, opts: &SweepOptions) -> Result<SweepOutcome> {
    run_sweep(r_min, r_max, opts, |_| Ok(()))
}

/// Runs the sweep, appending each completed order to `path` as it finishes, then
/// re-reads the file to confirm it holds exactly the returned records.
pub fn sweep_to_csv(r_min: u64, r_max: u64, opts: &SweepOptions, path: &Path) -> Result<SweepOutcome> {
    let mut writer = csv::Writer::from_writer(File::create(path)?);
    writer.write_record(CSV_HEADER)?;
    writer.flush()?;
    let outcome = run_sweep(r_min, r_max, opts, |records| {
        for rec in records {
            writer.write_record(rec.csv_row())?;
        }
        writer.flush()?;
        Ok(())
    })?;
    let mut file = writer
        .into_inner()
        .map_err(|e| Error::Io(e.into_error()))?;
    file.flush()?;
    drop(file);
    check_csv(path, &outcome.records)?;
    Ok(outcome)
}

fn check_csv(path: &Path, records: &[SurveyRecord]) -> Result<()> {
    let mut reader = csv::Reader::from_path(path)?;
    if reader.headers()?.iter().ne(CSV_HEADER) {
        return Err(Error::invariant("csv-integrity", "header mismatch"));
    }
    let rows = reader.records().collect::<std::result::Result<Vec<_>, _>>()?;
    if rows.len() != records.len() {
        return Err(Error::invariant(
            "csv-integrity",
            format!("{} rows on disk for {} records", rows.len(), records.len()),
        ));
    }
    for (row, rec) in rows.iter().zip(records) {
        if row.iter().ne(rec.csv_row().iter().map(String::as_str)) {
            return Err(Error::invariant(
                "csv-integrity",
                format!("row for r={} a={} b={} differs on disk", rec.r, rec.a, rec.b),
            ));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aggregate {
    pub min: BigRational,
    pub max: BigRational,
    pub histogram: BTreeMap<BigRational, usize>,
    /// Records with a share below 1/4 or above 1.
    pub bound_violations: Vec<SurveyRecord>,
}

pub fn aggregate(records: &[SurveyRecord]) -> Option<Aggregate> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let one = BigRational::one();
    let min = records.iter().map(|r| &r.b0).min()?.clone();
    let max = records.iter().map(|r| &r.b0).max()?.clone();
    let mut histogram = BTreeMap::new();
    for rec in records {
        *histogram.entry(rec.b0.clone()).or_insert(0) += 1;
    }
    let bound_violations = records
        .iter()
        .filter(|rec| rec.b0 < quarter || rec.b0 > one)
        .cloned()
        .collect();
    Some(Aggregate {
        min,
        max,
        histogram,
        bound_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn embeddings() {
        assert_eq!(enumerate_embeddings(5, false), vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(enumerate_embeddings(5, true), vec![(1, 3), (2, 2)]);
        assert_eq!(enumerate_embeddings(3, false), vec![(1, 1)]);
        assert!(enumerate_embeddings(2, false).is_empty());
    }

    #[test]
    fn isolation() {
        assert!(is_isolated(5, 1, 3));
        assert!(!is_isolated(6, 1, 4));
        assert!(!is_isolated(4, 2, 1));
    }

    #[test]
    fn single_record_aggregate() {
        let rec = analyze_embedding(3, 1, 1, false).unwrap();
        let agg = aggregate(std::slice::from_ref(&rec)).unwrap();
        assert_eq!(agg.min, agg.max);
        assert_eq!(agg.min, rec.b0);
        assert!(aggregate(&[]).is_none());
    }

    #[test]
    fn small_sweep_is_symmetric() {
        let out = sweep(3, 8, &SweepOptions::default()).unwrap();
        assert!(out.failures.is_empty());
        assert!(out.symmetry_mismatches.is_empty());
        assert_eq!(out.records.len(), (3..=8).map(|r| r - 2).sum::<u64>() as usize);
        for rec in &out.records {
            assert_eq!(rec.triangles as u64, rec.r);
            assert_eq!(rec.runtime_ms, 0);
        }
        let r6 = out.records.iter().find(|x| (x.r, x.a, x.b) == (6, 1, 4)).unwrap();
        assert_eq!(r6.b0, q(2, 5));
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let opts = SweepOptions {
            dedupe_symmetry: true,
            jobs: Some(2),
            ..Default::default()
        };
        let out = sweep_to_csv(2, 6, &opts, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(lines.count(), out.records.len());
        assert!(text.contains("\n6,1,4,"));
    }

    #[test]
    fn rejects_bad_range() {
        assert!(sweep(1, 4, &SweepOptions::default()).is_err());
        assert!(sweep(6, 4, &SweepOptions::default()).is_err());
    }
}
