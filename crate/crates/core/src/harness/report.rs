//! CSV serialization of sweep and profile reports.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so a
//! parsed report compares equal to the original and re-running a plan yields
//! byte-identical files.

use super::{ProfileReport, ProfileRow, StopReason, SweepReport, SweepRow};
use crate::error::{Error, Result};

pub const SWEEP_HEADER: &str =
    "decoder,snr_db,codewords,bit_errors,frame_errors,ber,fer,ci_low,ci_high,avg_iters,stop_reason";

pub const PROFILE_HEADER: &str =
    "decoder,snr_db,iteration_cap,codewords,bit_errors,ber,frame_errors,fer";

/// Serializes a sweep report (the iteration histogram is diagnostic state
/// and is not part of the CSV contract).
pub fn write_sweep_csv(report: &SweepReport) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.decoder,
            r.snr_db,
            r.codewords,
            r.bit_errors,
            r.frame_errors,
            r.ber,
            r.fer,
            r.ci_low,
            r.ci_high,
            r.avg_iterations,
            r.stop_reason.name(),
        ));
    }
    out
}

/// Parses a sweep CSV produced by [`write_sweep_csv`].
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == SWEEP_HEADER => {}
        _ => return Err(csv_err(1, "missing or unexpected sweep header")),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 11 {
            return Err(csv_err(line_no, "expected 11 fields"));
        }
        rows.push(SweepRow {
            decoder: f[0].to_string(),
            snr_db: num(line_no, f[1])?,
            codewords: int(line_no, f[2])?,
            bit_errors: int(line_no, f[3])?,
            frame_errors: int(line_no, f[4])?,
            ber: num(line_no, f[5])?,
            fer: num(line_no, f[6])?,
            ci_low: num(line_no, f[7])?,
            ci_high: num(line_no, f[8])?,
            avg_iterations: num(line_no, f[9])?,
            stop_reason: StopReason::from_name(f[10])
                .map_err(|e| csv_err(line_no, &e.to_string()))?,
            iteration_histogram: Vec::new(),
        });
    }
    Ok(rows)
}

/// Serializes a profile report.
pub fn write_profile_csv(report: &ProfileReport) -> String {
    let mut out = String::from(PROFILE_HEADER);
    out.push('\n');
    for r in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.decoder,
            r.snr_db,
            r.iteration_cap,
            r.codewords,
            r.bit_errors,
            r.ber,
            r.frame_errors,
            r.fer,
        ));
    }
    out
}

/// Parses a profile CSV produced by [`write_profile_csv`].
pub fn parse_profile_csv(text: &str) -> Result<Vec<ProfileRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == PROFILE_HEADER => {}
        _ => return Err(csv_err(1, "missing or unexpected profile header")),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(csv_err(line_no, "expected 8 fields"));
        }
        rows.push(ProfileRow {
            decoder: f[0].to_string(),
            snr_db: num(line_no, f[1])?,
            iteration_cap: int(line_no, f[2])? as usize,
            codewords: int(line_no, f[3])?,
            bit_errors: int(line_no, f[4])?,
            ber: num(line_no, f[5])?,
            frame_errors: int(line_no, f[6])?,
            fer: num(line_no, f[7])?,
        });
    }
    Ok(rows)
}

/// Writes text to `path`, surfacing the path on failure.
pub fn save_text(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
}

fn num(line: usize, field: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|_| csv_err(line, &format!("`{field}` is not a number")))
}

fn int(line: usize, field: &str) -> Result<u64> {
    field
        .parse::<u64>()
        .map_err(|_| csv_err(line, &format!("`{field}` is not an integer")))
}

fn csv_err(line: usize, msg: &str) -> Error {
    Error::TextParse {
        what: "csv report",
        line,
        msg: msg.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> SweepReport {
        SweepReport {
            rows: vec![SweepRow {
                decoder: "arcid".to_string(),
                snr_db: 3.5,
                codewords: 5000,
                bit_errors: 1234,
                frame_errors: 77,
                ber: 1234.0 / (5000.0 * 512.0),
                fer: 77.0 / 5000.0,
                ci_low: 4.5e-4,
                ci_high: 5.1e-4,
                avg_iterations: 4.25,
                stop_reason: StopReason::Budget,
                iteration_histogram: vec![1, 2, 3],
            }],
            warnings: Vec::new(),
        }
    }

    #[test]
    fn sweep_round_trip() {
        let report = sample_report();
        let text = write_sweep_csv(&report);
        assert!(text.starts_with(SWEEP_HEADER));
        let parsed = parse_sweep_csv(&text).unwrap();
        assert_eq!(parsed.len(), 1);
        let (a, b) = (&report.rows[0], &parsed[0]);
        assert_eq!(a.decoder, b.decoder);
        assert_eq!(a.snr_db, b.snr_db);
        assert_eq!(a.codewords, b.codewords);
        assert_eq!(a.ber, b.ber);
        assert_eq!(a.ci_high, b.ci_high);
        assert_eq!(a.avg_iterations, b.avg_iterations);
        assert_eq!(a.stop_reason, b.stop_reason);
    }

    #[test]
    fn empty_report_is_header_only() {
        let text = write_sweep_csv(&SweepReport::default());
        assert_eq!(text, format!("{SWEEP_HEADER}\n"));
        assert!(parse_sweep_csv(&text).unwrap().is_empty());
    }

    #[test]
    fn malformed_rows_are_rejected() {
        let text = format!("{SWEEP_HEADER}\nflooding,1.0\n");
        assert!(parse_sweep_csv(&text).is_err());
        assert!(parse_sweep_csv("nonsense\n").is_err());
    }

    #[test]
    fn profile_round_trip() {
        let report = ProfileReport {
            snr_db: 3.5,
            rows: vec![ProfileRow {
                decoder: "rbp".into(),
                snr_db: 3.5,
                iteration_cap: 3,
                codewords: 1000,
                bit_errors: 250,
                ber: 250.0 / (1000.0 * 512.0),
                frame_errors: 60,
                fer: 0.06,
            }],
            iterations: Vec::new(),
            warnings: Vec::new(),
        };
        let text = write_profile_csv(&report);
        let parsed = parse_profile_csv(&text).unwrap();
        assert_eq!(parsed, report.rows);
    }
}
