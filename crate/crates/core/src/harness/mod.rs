//! Seeded Monte Carlo experiment engine.
//!
//! Trials are independent work items: each derives a private RNG stream from
//! `(master seed, SNR index, trial index)` — never from the decoder — so all
//! decoders at a given point see bit-identical channel realizations and
//! results are invariant to the worker count. Each `(decoder, SNR)` point
//! accumulates codewords until the budget is reached or enough frame-error
//! events are observed, whichever comes first.

mod plan;
mod profile;
mod report;

pub use plan::{parse_plan, parse_snr_list};
pub use profile::{iteration_profile, DecoderIterations, ProfileReport, ProfileRow};
pub use report::{
    parse_profile_csv, parse_sweep_csv, save_text, write_profile_csv, write_sweep_csv,
};

use rayon::prelude::*;

use crate::bits::BitVector;
use crate::channel::{awgn_transmit, bpsk_modulate, channel_llrs, ebno_db_to_noise_variance};
use crate::codes::{parse_alist, CodeSpec, SystematicEncoder, TannerGraph};
use crate::error::{Error, Result};
use crate::kernels::DecodeResult;
use crate::rng::trial_rng;
use crate::schedulers::{decode, decode_traced, DecisionTrace, DecoderConfig};
use rand::Rng;

/// Fixed batch size for parallel trial dispatch. Results are folded in
/// trial order, so the batch size (not the worker count) is what the output
/// depends on; it is a constant to keep reports reproducible.
const TRIAL_BATCH: u64 = 512;

/// Where the code under test comes from.
#[derive(Clone, Debug)]
pub enum CodeSource {
    /// Construct a random regular code from `(spec, seed)`.
    Regular { spec: CodeSpec, seed: u64 },
    /// Load an ALIST file.
    AlistPath(std::path::PathBuf),
    /// Use an already-built graph.
    Graph(TannerGraph),
}

impl CodeSource {
    pub fn build(&self) -> Result<TannerGraph> {
        match self {
            CodeSource::Regular { spec, seed } => {
                crate::codes::construct_regular_code(spec, *seed)
            }
            CodeSource::AlistPath(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::io(path.display().to_string(), e))?;
                parse_alist(&text)
            }
            CodeSource::Graph(graph) => Ok(graph.clone()),
        }
    }
}

/// Codeword generation mode.
///
/// `AllZero` is exact for linear codes over the symmetric BPSK/AWGN channel
/// and never needs an encoder; `EncodedRandom` transmits systematically
/// encoded random information words to validate that symmetry empirically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transmission {
    AllZero,
    EncodedRandom,
}

impl Transmission {
    pub fn name(&self) -> &'static str {
        match self {
            Transmission::AllZero => "all_zero",
            Transmission::EncodedRandom => "encoded_random",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "all_zero" => Ok(Transmission::AllZero),
            "encoded_random" => Ok(Transmission::EncodedRandom),
            other => Err(Error::Config(format!(
                "unknown transmission mode `{other}`; valid: all_zero, encoded_random"
            ))),
        }
    }
}

/// Full description of one experiment.
#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub code: CodeSource,
    pub decoders: Vec<DecoderConfig>,
    pub snr_points_db: Vec<f64>,
    pub max_codewords: u64,
    pub max_error_events: u64,
    pub master_seed: u64,
    pub transmission: Transmission,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.snr_points_db.is_empty() {
            return Err(Error::Config("SNR list must not be empty".into()));
        }
        if self.decoders.is_empty() {
            return Err(Error::Config("decoder list must not be empty".into()));
        }
        if self.max_codewords < 1 {
            return Err(Error::Config("max_codewords must be at least 1".into()));
        }
        if self.max_error_events < 1 {
            return Err(Error::Config("max_error_events must be at least 1".into()));
        }
        for d in &self.decoders {
            d.validate()?;
        }
        Ok(())
    }
}

/// Why a sweep point stopped collecting trials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// Enough frame-error events were observed.
    Errors,
    /// The codeword budget ran out.
    Budget,
}

impl StopReason {
    pub fn name(&self) -> &'static str {
        match self {
            StopReason::Errors => "errors",
            StopReason::Budget => "budget",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "errors" => Ok(StopReason::Errors),
            "budget" => Ok(StopReason::Budget),
            other => Err(Error::Config(format!("unknown stop reason `{other}`"))),
        }
    }
}

/// Outcome of a single transmitted codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub bit_errors: u32,
    pub frame_error: bool,
    pub converged: bool,
    pub iterations_used: u32,
}

/// One `(decoder, SNR)` line of a sweep report.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub decoder: String,
    pub snr_db: f64,
    pub codewords: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub avg_iterations: f64,
    pub stop_reason: StopReason,
    /// `histogram[i]` = trials that used exactly `i` iterations.
    pub iteration_histogram: Vec<u64>,
}

/// Sweep output: one row per `(decoder, SNR)` in plan order.
#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub warnings: Vec<String>,
}

/// Runs one trial: generate (or zero-fill) a codeword, modulate, add noise,
/// decode, count errors against the transmitted word.
pub fn run_trial(
    graph: &TannerGraph,
    encoder: Option<&SystematicEncoder>,
    decoder: &DecoderConfig,
    noise_variance: f64,
    master_seed: u64,
    snr_index: usize,
    trial_index: u64,
) -> Result<TrialOutcome> {
    let (result, _, tx) = decode_one(
        graph,
        encoder,
        decoder,
        noise_variance,
        master_seed,
        snr_index,
        trial_index,
        false,
    )?;
    Ok(outcome_from(&result, &tx))
}

/// As [`run_trial`], additionally returning the per-iteration decision trace
/// and the transmitted codeword.
pub fn run_trial_traced(
    graph: &TannerGraph,
    encoder: Option<&SystematicEncoder>,
    decoder: &DecoderConfig,
    noise_variance: f64,
    master_seed: u64,
    snr_index: usize,
    trial_index: u64,
) -> Result<(TrialOutcome, DecisionTrace, BitVector)> {
    let (result, trace, tx) = decode_one(
        graph,
        encoder,
        decoder,
        noise_variance,
        master_seed,
        snr_index,
        trial_index,
        true,
    )?;
    Ok((
        outcome_from(&result, &tx),
        trace.expect("trace requested"),
        tx,
    ))
}

/// Channel LLRs seen by every decoder at `(master_seed, snr_index, trial)`.
/// The draw order (information bits, then noise) is fixed, so this is
/// decoder-independent by construction.
pub fn trial_channel_llrs(
    graph: &TannerGraph,
    encoder: Option<&SystematicEncoder>,
    noise_variance: f64,
    master_seed: u64,
    snr_index: usize,
    trial_index: u64,
) -> Result<(Vec<f64>, BitVector)> {
    let mut rng = trial_rng(master_seed, snr_index as u64, trial_index);
    let tx = match encoder {
        Some(enc) => {
            let info = BitVector::from(
                (0..enc.info_len())
                    .map(|_| rng.random_range(0..2u8))
                    .collect::<Vec<u8>>(),
            );
            enc.encode(&info)?
        }
        None => BitVector::zeros(graph.num_vars()),
    };
    let symbols = bpsk_modulate(&tx);
    let received = awgn_transmit(&symbols, noise_variance, &mut rng);
    let llrs = channel_llrs(&received, noise_variance)?;
    Ok((llrs, tx))
}

#[allow(clippy::too_many_arguments)]
fn decode_one(
    graph: &TannerGraph,
    encoder: Option<&SystematicEncoder>,
    decoder: &DecoderConfig,
    noise_variance: f64,
    master_seed: u64,
    snr_index: usize,
    trial_index: u64,
    traced: bool,
) -> Result<(DecodeResult, Option<DecisionTrace>, BitVector)> {
    let (llrs, tx) = trial_channel_llrs(
        graph,
        encoder,
        noise_variance,
        master_seed,
        snr_index,
        trial_index,
    )?;
    if traced {
        let (result, trace) = decode_traced(graph, &llrs, decoder)?;
        Ok((result, Some(trace), tx))
    } else {
        Ok((decode(graph, &llrs, decoder)?, None, tx))
    }
}

fn outcome_from(result: &DecodeResult, tx: &BitVector) -> TrialOutcome {
    let bit_errors = result.decoded.hamming_distance(tx) as u32;
    TrialOutcome {
        bit_errors,
        frame_error: bit_errors > 0,
        converged: result.converged,
        iterations_used: result.iterations_used as u32,
    }
}

/// Resolves the encoder for a plan, falling back to all-zero transmission
/// when the matrix is rank deficient.
fn resolve_encoder(
    graph: &TannerGraph,
    transmission: Transmission,
    warnings: &mut Vec<String>,
) -> Result<Option<SystematicEncoder>> {
    match transmission {
        Transmission::AllZero => Ok(None),
        Transmission::EncodedRandom => match SystematicEncoder::new(graph) {
            Ok(enc) => Ok(Some(enc)),
            Err(Error::RankDeficient { rank, checks }) => {
                warnings.push(format!(
                    "parity-check matrix rank {rank} < {checks}: falling back to \
                     all-zero transmission"
                ));
                Ok(None)
            }
            Err(e) => Err(e),
        },
    }
}

/// Runs the full sweep: every decoder at every SNR point, with paired
/// per-trial noise streams and the stop-on-errors-or-budget rule.
pub fn run_sweep(plan: &ExperimentPlan) -> Result<SweepReport> {
    plan.validate()?;
    let graph = plan.code.build()?;
    let mut warnings = Vec::new();
    let encoder = resolve_encoder(&graph, plan.transmission, &mut warnings)?;
    let rate = (graph.num_vars() - graph.num_checks()) as f64 / graph.num_vars() as f64;

    let mut rows = Vec::new();
    for decoder in &plan.decoders {
        for (snr_index, &snr_db) in plan.snr_points_db.iter().enumerate() {
            let noise_variance = ebno_db_to_noise_variance(snr_db, rate)?;
            rows.push(sweep_point(
                plan,
                &graph,
                encoder.as_ref(),
                decoder,
                snr_db,
                snr_index,
                noise_variance,
            )?);
        }
    }
    Ok(SweepReport { rows, warnings })
}

fn sweep_point(
    plan: &ExperimentPlan,
    graph: &TannerGraph,
    encoder: Option<&SystematicEncoder>,
    decoder: &DecoderConfig,
    snr_db: f64,
    snr_index: usize,
    noise_variance: f64,
) -> Result<SweepRow> {
    let mut codewords = 0u64;
    let mut bit_errors = 0u64;
    let mut frame_errors = 0u64;
    let mut total_iterations = 0u64;
    let mut histogram = vec![0u64; decoder.t_max + 1];
    let mut stop_reason = StopReason::Budget;

    'outer: while codewords < plan.max_codewords {
        let batch = TRIAL_BATCH.min(plan.max_codewords - codewords);
        let first = codewords;
        let outcomes: Vec<TrialOutcome> = (first..first + batch)
            .into_par_iter()
            .map(|trial| {
                run_trial(
                    graph,
                    encoder,
                    decoder,
                    noise_variance,
                    plan.master_seed,
                    snr_index,
                    trial,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        // Fold in trial order so early stopping matches a sequential run.
        for o in outcomes {
            codewords += 1;
            bit_errors += u64::from(o.bit_errors);
            frame_errors += u64::from(o.frame_error);
            total_iterations += u64::from(o.iterations_used);
            histogram[o.iterations_used as usize] += 1;
            if frame_errors >= plan.max_error_events {
                stop_reason = StopReason::Errors;
                break 'outer;
            }
        }
    }

    let bits_sent = codewords * graph.num_vars() as u64;
    let (ci_low, ci_high) = estimate_ci(bit_errors, bits_sent);
    Ok(SweepRow {
        decoder: decoder.algorithm.name().to_string(),
        snr_db,
        codewords,
        bit_errors,
        frame_errors,
        ber: bit_errors as f64 / bits_sent as f64,
        fer: frame_errors as f64 / codewords as f64,
        ci_low,
        ci_high,
        avg_iterations: total_iterations as f64 / codewords as f64,
        stop_reason,
        iteration_histogram: histogram,
    })
}

/// 95% Wilson score interval for a binomial proportion.
pub fn estimate_ci(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.96f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // The boundary cases are exact (low = 0 at zero successes, high = 1 at
    // all successes); snap them so rounding noise cannot leak through.
    let low = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let high = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (low, high)
}
