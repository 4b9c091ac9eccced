//! Browser bindings for the LDPC toolkit.
//!
//! Three interactive operations, each taking and returning JSON strings so
//! the page needs no generated glue beyond wasm-bindgen itself:
//!
//! - [`decode_demo`]: one noisy transmission, decoded by each selected
//!   scheduler with a per-iteration trace of unsatisfied checks and residual
//!   bit errors.
//! - [`profile_demo`]: a small Monte Carlo run tabulating BER against the
//!   iteration cap for each scheduler at one SNR point.
//! - [`model_demo`]: the analytic per-iteration operation counts, latency,
//!   and memory footprints.
//!
//! Parameters arrive as a JSON object; missing fields take the same defaults
//! the CLI uses. Errors come back as `{"error": "..."}` rather than as
//! exceptions.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use ldpc_core::channel::ebno_db_to_noise_variance;
use ldpc_core::codes::{construct_regular_code, CodeSpec};
use ldpc_core::harness::{
    iteration_profile, trial_channel_llrs, CodeSource, ExperimentPlan, Transmission,
};
use ldpc_core::instrumentation::{
    latency_estimate, memory_estimate_for, per_iteration_ops, reference_latency_rows,
    LatencyModel,
};
use ldpc_core::kernels::hard_decision;
use ldpc_core::schedulers::{decode_traced, Algorithm, DecoderConfig};

#[derive(Deserialize)]
#[serde(default)]
struct DemoParams {
    n: usize,
    m: usize,
    dv: usize,
    dc: usize,
    code_seed: u64,
    snr_db: f64,
    master_seed: u64,
    trial: u64,
    decoders: Vec<String>,
    t_max: usize,
    codewords: u64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    lambda: f64,
    decay: f64,
    list_size: usize,
    // Model-only knobs.
    k: u64,
    i_avg: f64,
    fclk: f64,
    eta: f64,
}

impl Default for DemoParams {
    fn default() -> Self {
        DemoParams {
            n: 512,
            m: 256,
            dv: 3,
            dc: 6,
            code_seed: 1,
            snr_db: 3.5,
            master_seed: 1,
            trial: 0,
            decoders: vec!["flooding".into(), "rbp".into(), "arcid".into()],
            t_max: 10,
            codewords: 200,
            alpha: 0.65,
            beta: 0.35,
            gamma: 0.15,
            lambda: 0.2,
            decay: 0.9,
            list_size: 4,
            k: 8,
            i_avg: 4.5,
            fclk: 1.2e9,
            eta: 0.7,
        }
    }
}

impl DemoParams {
    fn configs(&self) -> ldpc_core::Result<Vec<DecoderConfig>> {
        self.decoders
            .iter()
            .map(|name| {
                let config = DecoderConfig {
                    algorithm: Algorithm::from_name(name)?,
                    t_max: self.t_max,
                    alpha: self.alpha,
                    beta: self.beta,
                    gamma: self.gamma,
                    lambda: self.lambda,
                    decay: self.decay,
                    list_size: self.list_size,
                };
                config.validate()?;
                Ok(config)
            })
            .collect()
    }

    fn spec(&self) -> ldpc_core::Result<CodeSpec> {
        CodeSpec::new(self.n, self.m, self.dv, self.dc)
    }
}

fn parse_params(json: &str) -> Result<DemoParams, String> {
    if json.trim().is_empty() {
        return Ok(DemoParams::default());
    }
    serde_json::from_str(json).map_err(|e| format!("bad parameters: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| format!("{{\"error\":\"{e}\"}}"))
}

fn error_json(msg: impl std::fmt::Display) -> String {
    to_json(&serde_json::json!({ "error": msg.to_string() }))
}

#[derive(Serialize)]
struct DecodeDemoReply {
    n: usize,
    m: usize,
    edges: usize,
    snr_db: f64,
    channel_bit_errors: u32,
    decoders: Vec<DecodeDemoRun>,
}

#[derive(Serialize)]
struct DecodeDemoRun {
    decoder: String,
    converged: bool,
    iterations: usize,
    bit_errors: u32,
    /// Residual bit errors after each iteration (index 0 = channel decision).
    error_trace: Vec<u32>,
    /// Unsatisfied parity checks after each iteration.
    syndrome_trace: Vec<u32>,
    v2c_ops: u64,
    c2v_ops: u64,
    precompute_ops: u64,
}

/// Decodes one noisy transmission with every selected scheduler on the same
/// channel realization.
#[wasm_bindgen]
pub fn decode_demo(params_json: &str) -> String {
    match decode_demo_impl(params_json) {
        Ok(reply) => reply,
        Err(msg) => error_json(msg),
    }
}

fn decode_demo_impl(params_json: &str) -> Result<String, String> {
    let params = parse_params(params_json)?;
    let spec = params.spec().map_err(|e| e.to_string())?;
    let graph = construct_regular_code(&spec, params.code_seed).map_err(|e| e.to_string())?;
    let noise_variance =
        ebno_db_to_noise_variance(params.snr_db, spec.rate()).map_err(|e| e.to_string())?;
    let (llrs, tx) = trial_channel_llrs(
        &graph,
        None,
        noise_variance,
        params.master_seed,
        0,
        params.trial,
    )
    .map_err(|e| e.to_string())?;
    let channel_bit_errors = hard_decision(&llrs).hamming_distance(&tx) as u32;

    let mut runs = Vec::new();
    for config in params.configs().map_err(|e| e.to_string())? {
        let (result, trace) = decode_traced(&graph, &llrs, &config).map_err(|e| e.to_string())?;
        let error_trace: Vec<u32> = trace
            .decisions
            .iter()
            .map(|d| d.hamming_distance(&tx) as u32)
            .collect();
        let syndrome_trace: Vec<u32> = trace
            .decisions
            .iter()
            .map(|d| graph.syndrome(d).map(|s| s.weight() as u32).unwrap_or(0))
            .collect();
        runs.push(DecodeDemoRun {
            decoder: config.algorithm.name().to_string(),
            converged: result.converged,
            iterations: result.iterations_used,
            bit_errors: result.decoded.hamming_distance(&tx) as u32,
            error_trace,
            syndrome_trace,
            v2c_ops: result.op_counts.v2c_ops,
            c2v_ops: result.op_counts.c2v_ops,
            precompute_ops: result.op_counts.precompute_ops,
        });
    }

    Ok(to_json(&DecodeDemoReply {
        n: graph.num_vars(),
        m: graph.num_checks(),
        edges: graph.num_edges(),
        snr_db: params.snr_db,
        channel_bit_errors,
        decoders: runs,
    }))
}

#[derive(Serialize)]
struct ProfileDemoReply {
    snr_db: f64,
    codewords: u64,
    caps: Vec<usize>,
    decoders: Vec<ProfileDemoCurve>,
}

#[derive(Serialize)]
struct ProfileDemoCurve {
    decoder: String,
    ber: Vec<f64>,
    avg_iterations: f64,
}

/// BER versus iteration cap for each scheduler, from a small paired Monte
/// Carlo run.
#[wasm_bindgen]
pub fn profile_demo(params_json: &str) -> String {
    match profile_demo_impl(params_json) {
        Ok(reply) => reply,
        Err(msg) => error_json(msg),
    }
}

fn profile_demo_impl(params_json: &str) -> Result<String, String> {
    let params = parse_params(params_json)?;
    let spec = params.spec().map_err(|e| e.to_string())?;
    let plan = ExperimentPlan {
        code: CodeSource::Regular {
            spec,
            seed: params.code_seed,
        },
        decoders: params.configs().map_err(|e| e.to_string())?,
        snr_points_db: vec![params.snr_db],
        max_codewords: params.codewords.clamp(1, 20_000),
        max_error_events: u64::MAX,
        master_seed: params.master_seed,
        transmission: Transmission::AllZero,
    };
    let report = iteration_profile(&plan, params.snr_db).map_err(|e| e.to_string())?;

    let caps: Vec<usize> = (1..=params.t_max).collect();
    let mut curves = Vec::new();
    for it in &report.iterations {
        let ber: Vec<f64> = report
            .rows
            .iter()
            .filter(|r| r.decoder == it.decoder)
            .map(|r| r.ber)
            .collect();
        curves.push(ProfileDemoCurve {
            decoder: it.decoder.clone(),
            ber,
            avg_iterations: it.avg,
        });
    }
    Ok(to_json(&ProfileDemoReply {
        snr_db: params.snr_db,
        codewords: plan.max_codewords,
        caps,
        decoders: curves,
    }))
}

#[derive(Serialize)]
struct ModelDemoReply {
    e: usize,
    k: u64,
    decoders: Vec<ModelDemoRow>,
    reference: Vec<ModelReferenceRow>,
}

#[derive(Serialize)]
struct ModelDemoRow {
    decoder: String,
    ops_per_iteration: u64,
    precompute_ops: u64,
    latency_ms: f64,
    memory_bytes: u64,
}

#[derive(Serialize)]
struct ModelReferenceRow {
    decoder: String,
    i_avg: f64,
    formula_ms: f64,
    cited_ms: f64,
    consistent: bool,
}

/// Analytic complexity, latency, and memory for each scheduler, plus the
/// built-in reference latency table with its consistency flags.
#[wasm_bindgen]
pub fn model_demo(params_json: &str) -> String {
    match model_demo_impl(params_json) {
        Ok(reply) => reply,
        Err(msg) => error_json(msg),
    }
}

fn model_demo_impl(params_json: &str) -> Result<String, String> {
    let params = parse_params(params_json)?;
    let e = params.n * params.dv;
    let model = LatencyModel {
        f_clk: params.fclk,
        eta: params.eta,
        i_avg: params.i_avg,
        t_overhead: 0.0,
    };
    let mut rows = Vec::new();
    for config in params.configs().map_err(|e2| e2.to_string())? {
        let kind = config.algorithm;
        let ops = per_iteration_ops(kind, params.n, params.m, e, params.dv, params.dc, params.k)
            .map_err(|e2| e2.to_string())?;
        let latency = latency_estimate(&model, &ops).map_err(|e2| e2.to_string())?;
        rows.push(ModelDemoRow {
            decoder: kind.name().to_string(),
            ops_per_iteration: ops.total_ops(),
            precompute_ops: ops.precompute_ops,
            latency_ms: latency * 1e3,
            memory_bytes: memory_estimate_for(kind, params.n, params.m, e),
        });
    }
    let reference = reference_latency_rows()
        .into_iter()
        .map(|r| ModelReferenceRow {
            decoder: r.decoder.to_string(),
            i_avg: r.i_avg,
            formula_ms: r.formula_ms,
            cited_ms: r.cited_ms,
            consistent: r.consistent,
        })
        .collect();
    Ok(to_json(&ModelDemoReply {
        e,
        k: params.k,
        decoders: rows,
        reference,
    }))
}
