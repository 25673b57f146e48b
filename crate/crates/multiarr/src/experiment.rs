//! Parallel driver and CSV report for the four-line experiment.

use std::io::Write;

use multiarr_core::analysis::proposition::{classify_tuple, sweep, PropositionReport, PropositionRow};
use multiarr_core::Result;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub low: u32,
    pub high: u32,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    /// Run alg3 from scratch on every tuple instead of the shared-prefix
    /// sweep. Much slower; useful as a cross-check.
    pub direct: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { low: 20, high: 30, jobs: 1, direct: false }
    }
}

pub fn run(opts: Options) -> Result<PropositionReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .expect("thread pool");
    let rows: Result<Vec<Vec<PropositionRow>>> = pool.install(|| {
        let firsts: Vec<u32> = (opts.low..=opts.high).collect();
        if opts.direct {
            firsts
                .par_iter()
                .map(|&a| {
                    let mut out = Vec::new();
                    for b in opts.low..=opts.high {
                        for c in opts.low..=opts.high {
                            for d in opts.low..=opts.high {
                                out.push(classify_tuple([a, b, c, d])?);
                            }
                        }
                    }
                    Ok(out)
                })
                .collect()
        } else {
            firsts
                .par_iter()
                .map(|&k| {
                    let mut out = Vec::new();
                    sweep(opts.low, opts.high, Some(k), |row| out.push(row))?;
                    Ok(out)
                })
                .collect()
        }
    });
    let mut report = PropositionReport { rows: rows?.into_iter().flatten().collect() };
    report.sort();
    Ok(report)
}

pub const CSV_HEADER: [&str; 10] = ["mu1", "mu2", "mu3", "mu4", "total", "d1", "d2", "d", "predicted_d2", "agrees"];

/// One row per tuple; `d1 ≥ d2` are the exponents and `d = d1 − d2`.
pub fn write_csv<W: Write>(report: &PropositionReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in &report.rows {
        let [m1, m2, m3, m4] = row.mu;
        w.write_record([
            m1.to_string(),
            m2.to_string(),
            m3.to_string(),
            m4.to_string(),
            row.total().to_string(),
            row.exponents.high().to_string(),
            row.exponents.low().to_string(),
            row.difference().to_string(),
            row.predicted_d2.to_string(),
            row.agrees().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_direct() {
        let opts = Options { low: 3, high: 5, jobs: 2, direct: false };
        let shared = run(opts).unwrap();
        let direct = run(Options { direct: true, ..opts }).unwrap();
        assert_eq!(shared.rows, direct.rows);
        assert_eq!(shared.enumerated(), 27 * 3);
    }

    #[test]
    fn csv_layout() {
        let report = run(Options { low: 2, high: 2, jobs: 1, direct: false }).unwrap();
        let mut buf = Vec::new();
        write_csv(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("mu1,mu2,mu3,mu4,total,d1,d2,d,predicted_d2,agrees"));
        let row = lines.next().unwrap();
        assert!(row.starts_with("2,2,2,2,8,"), "{row}");
        assert_eq!(lines.next(), None);
    }
}
