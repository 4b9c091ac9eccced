//! Plain-text experiment plans.
//!
//! A plan file is a sequence of `key = value` sections:
//!
//! ```text
//! [plan]
//! master_seed = 1
//! snr_points_db = 0:0.5:4.5
//! max_codewords = 10000
//! max_error_events = 100
//! transmission = all_zero
//!
//! [code]
//! n = 512
//! m = 256
//! dv = 3
//! dc = 6
//! seed = 1
//! # or instead of the five keys above:  alist = path/to/code.alist
//!
//! [decoder]
//! algorithm = arcid
//! t_max = 20
//! alpha = 0.65
//! beta = 0.35
//! gamma = 0.15
//! lambda = 0.2
//! decay = 0.9
//! list_size = 4
//! ```
//!
//! Decoder keys match the `DecoderConfig` field names exactly; omitted keys
//! keep their defaults. `#` starts a comment. One `[decoder]` section per
//! decoder, in run order.

use std::path::PathBuf;

use super::{CodeSource, ExperimentPlan, Transmission};
use crate::codes::CodeSpec;
use crate::error::{Error, Result};
use crate::schedulers::{Algorithm, DecoderConfig};

/// Parses an SNR list: comma-separated entries, each either a literal in dB
/// or an inclusive `start:step:stop` range (stop matched within 1e-9).
pub fn parse_snr_list(text: &str) -> Result<Vec<f64>> {
    let mut points = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        if token.contains(':') {
            let parts: Vec<&str> = token.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Config(format!(
                    "range `{token}` must have the form start:step:stop"
                )));
            }
            let start = parse_f64(parts[0], "range start")?;
            let step = parse_f64(parts[1], "range step")?;
            let stop = parse_f64(parts[2], "range stop")?;
            if step <= 0.0 {
                return Err(Error::Config(format!(
                    "range step must be positive, got {step}"
                )));
            }
            let mut i = 0u64;
            loop {
                let x = start + step * i as f64;
                if x > stop + 1e-9 {
                    break;
                }
                points.push(x);
                i += 1;
            }
        } else {
            points.push(parse_f64(token, "SNR point")?);
        }
    }
    if points.is_empty() {
        return Err(Error::Config("SNR list is empty".into()));
    }
    Ok(points)
}

fn parse_f64(text: &str, what: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("{what}: `{text}` is not a number")))
}

/// Parses a plan file.
pub fn parse_plan(text: &str) -> Result<ExperimentPlan> {
    let mut plan = PlanBuilder::default();
    let mut section = Section::None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim().to_string();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "plan" => Section::Plan,
                "code" => Section::Code,
                "decoder" => {
                    plan.decoders.push(DecoderSection::default());
                    Section::Decoder
                }
                other => {
                    return Err(plan_err(
                        line_no,
                        &format!("unknown section `[{other}]`; expected plan, code, or decoder"),
                    ))
                }
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(plan_err(line_no, "expected `key = value`"));
        };
        let key = key.trim();
        let value = value.trim();
        match section {
            Section::None => {
                return Err(plan_err(line_no, "key outside any [section]"));
            }
            Section::Plan => plan.set_plan_key(line_no, key, value)?,
            Section::Code => plan.set_code_key(line_no, key, value)?,
            Section::Decoder => plan
                .decoders
                .last_mut()
                .expect("decoder section pushed on entry")
                .set_key(line_no, key, value)?,
        }
    }

    plan.build()
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn plan_err(line: usize, msg: &str) -> Error {
    Error::TextParse {
        what: "plan file",
        line,
        msg: msg.to_string(),
    }
}

enum Section {
    None,
    Plan,
    Code,
    Decoder,
}

#[derive(Default)]
struct PlanBuilder {
    master_seed: Option<u64>,
    snr_points_db: Option<Vec<f64>>,
    max_codewords: Option<u64>,
    max_error_events: Option<u64>,
    transmission: Option<Transmission>,
    code_n: Option<usize>,
    code_m: Option<usize>,
    code_dv: Option<usize>,
    code_dc: Option<usize>,
    code_seed: Option<u64>,
    code_alist: Option<PathBuf>,
    decoders: Vec<DecoderSection>,
}

impl PlanBuilder {
    fn set_plan_key(&mut self, line: usize, key: &str, value: &str) -> Result<()> {
        match key {
            "master_seed" => self.master_seed = Some(parse_int(line, value)?),
            "snr_points_db" => {
                self.snr_points_db =
                    Some(parse_snr_list(value).map_err(|e| plan_err(line, &e.to_string()))?)
            }
            "max_codewords" => self.max_codewords = Some(parse_int(line, value)?),
            "max_error_events" => self.max_error_events = Some(parse_int(line, value)?),
            "transmission" => {
                self.transmission =
                    Some(Transmission::from_name(value).map_err(|e| plan_err(line, &e.to_string()))?)
            }
            other => return Err(plan_err(line, &format!("unknown [plan] key `{other}`"))),
        }
        Ok(())
    }

    fn set_code_key(&mut self, line: usize, key: &str, value: &str) -> Result<()> {
        match key {
            "n" => self.code_n = Some(parse_int(line, value)? as usize),
            "m" => self.code_m = Some(parse_int(line, value)? as usize),
            "dv" => self.code_dv = Some(parse_int(line, value)? as usize),
            "dc" => self.code_dc = Some(parse_int(line, value)? as usize),
            "seed" => self.code_seed = Some(parse_int(line, value)?),
            "alist" => self.code_alist = Some(PathBuf::from(value)),
            other => return Err(plan_err(line, &format!("unknown [code] key `{other}`"))),
        }
        Ok(())
    }

    fn build(self) -> Result<ExperimentPlan> {
        let code = match (self.code_alist, self.code_n) {
            (Some(path), None) => CodeSource::AlistPath(path),
            (None, Some(_)) | (None, None) => {
                let (n, m, dv, dc) = match (self.code_n, self.code_m, self.code_dv, self.code_dc)
                {
                    (Some(n), Some(m), Some(dv), Some(dc)) => (n, m, dv, dc),
                    _ => {
                        return Err(Error::Config(
                            "the [code] section needs either `alist` or all of n, m, dv, dc"
                                .into(),
                        ))
                    }
                };
                CodeSource::Regular {
                    spec: CodeSpec::new(n, m, dv, dc)?,
                    seed: self.code_seed.unwrap_or(1),
                }
            }
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "the [code] section must not mix `alist` with spec keys".into(),
                ))
            }
        };
        let decoders: Vec<DecoderConfig> = self
            .decoders
            .into_iter()
            .map(DecoderSection::build)
            .collect::<Result<_>>()?;
        let plan = ExperimentPlan {
            code,
            decoders,
            snr_points_db: self
                .snr_points_db
                .ok_or_else(|| Error::Config("missing snr_points_db in [plan]".into()))?,
            max_codewords: self.max_codewords.unwrap_or(1_000_000),
            max_error_events: self.max_error_events.unwrap_or(100),
            master_seed: self.master_seed.unwrap_or(1),
            transmission: self.transmission.unwrap_or(Transmission::AllZero),
        };
        plan.validate()?;
        Ok(plan)
    }
}

#[derive(Default)]
struct DecoderSection {
    algorithm: Option<Algorithm>,
    t_max: Option<usize>,
    alpha: Option<f64>,
    beta: Option<f64>,
    gamma: Option<f64>,
    lambda: Option<f64>,
    decay: Option<f64>,
    list_size: Option<usize>,
}

impl DecoderSection {
    fn set_key(&mut self, line: usize, key: &str, value: &str) -> Result<()> {
        match key {
            "algorithm" => {
                self.algorithm =
                    Some(Algorithm::from_name(value).map_err(|e| plan_err(line, &e.to_string()))?)
            }
            "t_max" => self.t_max = Some(parse_int(line, value)? as usize),
            "alpha" => self.alpha = Some(parse_f64(value, "alpha")?),
            "beta" => self.beta = Some(parse_f64(value, "beta")?),
            "gamma" => self.gamma = Some(parse_f64(value, "gamma")?),
            "lambda" => self.lambda = Some(parse_f64(value, "lambda")?),
            "decay" => self.decay = Some(parse_f64(value, "decay")?),
            "list_size" => self.list_size = Some(parse_int(line, value)? as usize),
            other => return Err(plan_err(line, &format!("unknown [decoder] key `{other}`"))),
        }
        Ok(())
    }

    fn build(self) -> Result<DecoderConfig> {
        let algorithm = self
            .algorithm
            .ok_or_else(|| Error::Config("a [decoder] section is missing `algorithm`".into()))?;
        let defaults = DecoderConfig::new(algorithm);
        Ok(DecoderConfig {
            algorithm,
            t_max: self.t_max.unwrap_or(defaults.t_max),
            alpha: self.alpha.unwrap_or(defaults.alpha),
            beta: self.beta.unwrap_or(defaults.beta),
            gamma: self.gamma.unwrap_or(defaults.gamma),
            lambda: self.lambda.unwrap_or(defaults.lambda),
            decay: self.decay.unwrap_or(defaults.decay),
            list_size: self.list_size.unwrap_or(defaults.list_size),
        })
    }
}

fn parse_int(line: usize, value: &str) -> Result<u64> {
    value
        .trim()
        .parse::<u64>()
        .map_err(|_| plan_err(line, &format!("`{value}` is not a non-negative integer")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snr_range_expansion() {
        let points = parse_snr_list("0:0.5:4.5").unwrap();
        assert_eq!(points.len(), 10);
        assert_eq!(points[0], 0.0);
        assert!((points[9] - 4.5).abs() < 1e-12);

        let points = parse_snr_list("1.0, 2.5, 4").unwrap();
        assert_eq!(points, vec![1.0, 2.5, 4.0]);

        // Mixed literals and ranges.
        let points = parse_snr_list("0, 2:1:4").unwrap();
        assert_eq!(points, vec![0.0, 2.0, 3.0, 4.0]);

        assert!(parse_snr_list("").is_err());
        assert!(parse_snr_list("1:0:2").is_err());
        assert!(parse_snr_list("a,b").is_err());
    }

    #[test]
    fn full_plan_round_trip() {
        let text = "\
# sample experiment
[plan]
master_seed = 7
snr_points_db = 3.5
max_codewords = 100
max_error_events = 10
transmission = all_zero

[code]
n = 32
m = 16
dv = 3
dc = 6
seed = 2

[decoder]
algorithm = arcid
gamma = 0.1

[decoder]
algorithm = rbp
t_max = 15
";
        let plan = parse_plan(text).unwrap();
        assert_eq!(plan.master_seed, 7);
        assert_eq!(plan.snr_points_db, vec![3.5]);
        assert_eq!(plan.max_codewords, 100);
        assert_eq!(plan.decoders.len(), 2);
        assert_eq!(plan.decoders[0].algorithm, Algorithm::Arcid);
        assert_eq!(plan.decoders[0].gamma, 0.1);
        assert_eq!(plan.decoders[0].alpha, 0.65); // default preserved
        assert_eq!(plan.decoders[1].algorithm, Algorithm::Rbp);
        assert_eq!(plan.decoders[1].t_max, 15);
        match plan.code {
            CodeSource::Regular { spec, seed } => {
                assert_eq!((spec.n, spec.m, spec.dv, spec.dc), (32, 16, 3, 6));
                assert_eq!(seed, 2);
            }
            other => panic!("unexpected code source {other:?}"),
        }
    }

    #[test]
    fn alist_code_source() {
        let text = "\
[plan]
snr_points_db = 1.0
[code]
alist = codes/my.alist
[decoder]
algorithm = flooding
";
        let plan = parse_plan(text).unwrap();
        match plan.code {
            CodeSource::AlistPath(p) => assert_eq!(p, PathBuf::from("codes/my.alist")),
            other => panic!("unexpected code source {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "[plan]\nsnr_points_db = 1.0\nbogus_key = 3\n";
        match parse_plan(text) {
            Err(Error::TextParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }

        let text = "[plan]\nsnr_points_db = 1.0\n[decoder]\nalgorithm = nonsense\n";
        match parse_plan(text) {
            Err(Error::TextParse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_pieces_rejected() {
        // No decoder sections.
        let text = "[plan]\nsnr_points_db = 1.0\n[code]\nn = 32\nm = 16\ndv = 3\ndc = 6\n";
        assert!(parse_plan(text).is_err());
        // Decoder without algorithm.
        let text = "[plan]\nsnr_points_db = 1.0\n[code]\nn = 32\nm = 16\ndv = 3\ndc = 6\n[decoder]\nt_max = 5\n";
        assert!(parse_plan(text).is_err());
    }
}
