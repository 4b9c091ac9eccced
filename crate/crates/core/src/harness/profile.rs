//! BER as a function of the iteration cap, from one traced run per decoder.
//!
//! Each trial is decoded once with tracing; the decision a capped decoder
//! would have returned is the recorded decision at `min(cap, halt)`, since a
//! converged decoder freezes its output. This reproduces the whole
//! BER-vs-iterations curve without re-running per cap.

use rayon::prelude::*;

use super::{resolve_encoder, ExperimentPlan, TrialOutcome};
use crate::channel::ebno_db_to_noise_variance;
use crate::error::Result;

/// One `(decoder, iteration cap)` line.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub decoder: String,
    pub snr_db: f64,
    pub iteration_cap: usize,
    pub codewords: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub frame_errors: u64,
    pub fer: f64,
}

/// Per-decoder iteration counts, paired across decoders by trial index.
#[derive(Clone, Debug)]
pub struct DecoderIterations {
    pub decoder: String,
    pub per_trial: Vec<u32>,
    pub avg: f64,
}

/// Iteration-profile output.
#[derive(Clone, Debug)]
pub struct ProfileReport {
    pub snr_db: f64,
    pub rows: Vec<ProfileRow>,
    pub iterations: Vec<DecoderIterations>,
    pub warnings: Vec<String>,
}

/// Runs `plan.max_codewords` paired trials per decoder at `snr_db` and
/// tabulates BER/FER for every iteration cap `1..=t_max`.
pub fn iteration_profile(plan: &ExperimentPlan, snr_db: f64) -> Result<ProfileReport> {
    plan.validate()?;
    let graph = plan.code.build()?;
    let mut warnings = Vec::new();
    let encoder = resolve_encoder(&graph, plan.transmission, &mut warnings)?;
    let rate = (graph.num_vars() - graph.num_checks()) as f64 / graph.num_vars() as f64;
    let noise_variance = ebno_db_to_noise_variance(snr_db, rate)?;

    let mut rows = Vec::new();
    let mut iterations = Vec::new();
    for decoder in &plan.decoders {
        let caps = decoder.t_max;
        // (bit errors, frame errors) per cap plus iteration counts, folded
        // over fixed-size batches in trial order.
        let mut bit_errors = vec![0u64; caps + 1];
        let mut frame_errors = vec![0u64; caps + 1];
        let mut per_trial = Vec::with_capacity(plan.max_codewords as usize);

        let mut done = 0u64;
        while done < plan.max_codewords {
            let batch = super::TRIAL_BATCH.min(plan.max_codewords - done);
            let outcomes: Vec<(TrialOutcome, Vec<u32>)> = (done..done + batch)
                .into_par_iter()
                .map(|trial| {
                    let (outcome, trace, tx) = super::run_trial_traced(
                        &graph,
                        encoder.as_ref(),
                        decoder,
                        noise_variance,
                        plan.master_seed,
                        0,
                        trial,
                    )?;
                    // Errors of the decision a cap-t decoder would return.
                    let per_cap: Vec<u32> = (0..=caps)
                        .map(|cap| {
                            let idx = cap.min(trace.decisions.len() - 1);
                            trace.decisions[idx].hamming_distance(&tx) as u32
                        })
                        .collect();
                    Ok((outcome, per_cap))
                })
                .collect::<Result<Vec<_>>>()?;
            for (outcome, per_cap) in outcomes {
                for (cap, &errs) in per_cap.iter().enumerate() {
                    bit_errors[cap] += u64::from(errs);
                    frame_errors[cap] += u64::from(errs > 0);
                }
                per_trial.push(outcome.iterations_used);
            }
            done += batch;
        }

        let bits = plan.max_codewords * graph.num_vars() as u64;
        for cap in 1..=caps {
            rows.push(ProfileRow {
                decoder: decoder.algorithm.name().to_string(),
                snr_db,
                iteration_cap: cap,
                codewords: plan.max_codewords,
                bit_errors: bit_errors[cap],
                ber: bit_errors[cap] as f64 / bits as f64,
                frame_errors: frame_errors[cap],
                fer: frame_errors[cap] as f64 / plan.max_codewords as f64,
            });
        }
        let avg =
            per_trial.iter().map(|&i| u64::from(i)).sum::<u64>() as f64 / per_trial.len() as f64;
        iterations.push(DecoderIterations {
            decoder: decoder.algorithm.name().to_string(),
            per_trial,
            avg,
        });
    }

    Ok(ProfileReport {
        snr_db,
        rows,
        iterations,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CodeSpec;
    use crate::harness::{CodeSource, Transmission};
    use crate::schedulers::{Algorithm, DecoderConfig};

    fn profile_plan() -> ExperimentPlan {
        ExperimentPlan {
            code: CodeSource::Regular {
                spec: CodeSpec::new(64, 32, 3, 6).unwrap(),
                seed: 2,
            },
            decoders: vec![
                DecoderConfig {
                    t_max: 8,
                    ..DecoderConfig::new(Algorithm::Flooding)
                },
                DecoderConfig {
                    t_max: 8,
                    ..DecoderConfig::new(Algorithm::Arcid)
                },
            ],
            snr_points_db: vec![3.5],
            max_codewords: 300,
            max_error_events: u64::MAX,
            master_seed: 5,
            transmission: Transmission::AllZero,
        }
    }

    #[test]
    fn profile_shape_and_improvement() {
        let plan = profile_plan();
        let report = iteration_profile(&plan, 3.5).unwrap();
        // 8 caps per decoder, 2 decoders.
        assert_eq!(report.rows.len(), 16);
        for decoder in ["flooding", "arcid"] {
            let bers: Vec<f64> = report
                .rows
                .iter()
                .filter(|r| r.decoder == decoder)
                .map(|r| r.ber)
                .collect();
            assert_eq!(bers.len(), 8);
            assert!(bers.iter().all(|&b| (0.0..=1.0).contains(&b)));
            // Unconverged trajectories may wobble between adjacent caps, but
            // the full budget clearly beats a single iteration here.
            assert!(
                *bers.last().unwrap() < bers[0],
                "{decoder}: {bers:?}"
            );
        }
    }

    #[test]
    fn decisions_freeze_after_convergence() {
        // Under the halting semantics a converged decoder keeps its output,
        // so per-trial errors are constant beyond the convergence iteration.
        let plan = profile_plan();
        let graph = plan.code.build().unwrap();
        let decoder = &plan.decoders[0];
        let sigma2 = ebno_db_to_noise_variance(3.5, 0.5).unwrap();
        for trial in 0..50 {
            let (outcome, trace, tx) = crate::harness::run_trial_traced(
                &graph, None, decoder, sigma2, plan.master_seed, 0, trial,
            )
            .unwrap();
            if outcome.converged {
                let halt = outcome.iterations_used as usize;
                let frozen = trace.decisions[halt].hamming_distance(&tx);
                for d in &trace.decisions[halt..] {
                    assert_eq!(d.hamming_distance(&tx), frozen);
                }
            }
        }
    }

    #[test]
    fn per_trial_iterations_are_paired() {
        let plan = profile_plan();
        let report = iteration_profile(&plan, 3.5).unwrap();
        assert_eq!(report.iterations.len(), 2);
        assert_eq!(report.iterations[0].per_trial.len(), 300);
        assert_eq!(report.iterations[1].per_trial.len(), 300);
        let avg0 = report.iterations[0].avg;
        assert!(avg0 > 0.0 && avg0 <= 8.0);
    }

    #[test]
    fn profile_is_reproducible() {
        let plan = profile_plan();
        let a = iteration_profile(&plan, 3.5).unwrap();
        let b = iteration_profile(&plan, 3.5).unwrap();
        assert_eq!(a.rows, b.rows);
    }
}
