//! `ldpc-sim`: code generation, single-shot decoding, BER/FER sweeps,
//! iteration profiles, and analytic complexity/latency reports.
//!
//! Every run echoes its fully resolved configuration (defaults included) so
//! reports are self-describing, and every source of randomness is an
//! explicit seed. Exit codes: 0 success, 1 usage/configuration error,
//! 2 runtime failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use ldpc_core::channel::ebno_db_to_noise_variance;
use ldpc_core::codes::{construct_regular_code_detailed, write_alist, CodeSpec};
use ldpc_core::harness::{
    self, iteration_profile, parse_plan, parse_snr_list, run_sweep, save_text, write_profile_csv,
    write_sweep_csv, CodeSource, ExperimentPlan, Transmission,
};
use ldpc_core::instrumentation::{
    latency_estimate, memory_estimate_for, per_iteration_ops, reference_latency_rows,
    LatencyModel,
};
use ldpc_core::schedulers::{Algorithm, DecoderConfig};
use ldpc_core::Error;

#[derive(Parser)]
#[command(
    name = "ldpc-sim",
    version,
    about = "LDPC decoding toolkit: codes, channels, schedulers, Monte Carlo sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a random regular code and write it as ALIST.
    GenCode(GenCodeArgs),
    /// Decode one noisy transmission and print the result.
    Decode(DecodeArgs),
    /// Monte Carlo BER/FER sweep over a list of SNR points.
    Sweep(SweepArgs),
    /// BER as a function of the iteration cap at one SNR point.
    Profile(ProfileArgs),
    /// Analytic per-iteration operation counts, latency, and memory.
    Model(ModelArgs),
}

#[derive(Args)]
struct CodeArgs {
    /// ALIST file to load instead of constructing a code.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["n", "m"])]
    code: Option<PathBuf>,
    /// Codeword length of the constructed regular code.
    #[arg(long, default_value_t = 512)]
    n: usize,
    /// Parity-check count of the constructed regular code.
    #[arg(long, default_value_t = 256)]
    m: usize,
    /// Variable-node degree.
    #[arg(long, default_value_t = 3)]
    dv: usize,
    /// Check-node degree.
    #[arg(long, default_value_t = 6)]
    dc: usize,
    /// Construction seed.
    #[arg(long, default_value_t = 1)]
    code_seed: u64,
}

impl CodeArgs {
    fn source(&self) -> ldpc_core::Result<CodeSource> {
        match &self.code {
            Some(path) => Ok(CodeSource::AlistPath(path.clone())),
            None => Ok(CodeSource::Regular {
                spec: CodeSpec::new(self.n, self.m, self.dv, self.dc)?,
                seed: self.code_seed,
            }),
        }
    }

    fn describe(&self) -> String {
        match &self.code {
            Some(path) => format!("code = {}", path.display()),
            None => format!(
                "code = regular(n={}, m={}, dv={}, dc={}, seed={})",
                self.n, self.m, self.dv, self.dc, self.code_seed
            ),
        }
    }
}

#[derive(Args)]
struct DecoderParams {
    /// Comma-separated decoder list.
    #[arg(long, default_value = "flooding,layered,rbp,rd_rbp,list_rbp,arcid")]
    decoders: String,
    /// Maximum iterations.
    #[arg(long, default_value_t = 20)]
    t_max: usize,
    /// Combined-metric weight on the unreliability index.
    #[arg(long, default_value_t = 0.65)]
    alpha: f64,
    /// Combined-metric weight on the contextual transition.
    #[arg(long, default_value_t = 0.35)]
    beta: f64,
    /// Activation threshold on the combined metric.
    #[arg(long, default_value_t = 0.15)]
    gamma: f64,
    /// Active-subset ratio.
    #[arg(long, default_value_t = 0.2)]
    lambda: f64,
    /// Residual decay factor (rd_rbp).
    #[arg(long, default_value_t = 0.9)]
    decay: f64,
    /// Edges committed per scheduling step (list_rbp).
    #[arg(long, default_value_t = 4)]
    list_size: usize,
}

impl DecoderParams {
    fn configs(&self) -> ldpc_core::Result<Vec<DecoderConfig>> {
        let mut configs = Vec::new();
        for name in self.decoders.split(',') {
            let algorithm = Algorithm::from_name(name)?;
            let config = DecoderConfig {
                algorithm,
                t_max: self.t_max,
                alpha: self.alpha,
                beta: self.beta,
                gamma: self.gamma,
                lambda: self.lambda,
                decay: self.decay,
                list_size: self.list_size,
            };
            config.validate()?;
            configs.push(config);
        }
        if configs.is_empty() {
            return Err(Error::Config("decoder list is empty".into()));
        }
        Ok(configs)
    }
}

fn echo_decoders(configs: &[DecoderConfig]) {
    for c in configs {
        println!(
            "decoder {} = t_max={} alpha={} beta={} gamma={} lambda={} decay={} list_size={}",
            c.algorithm, c.t_max, c.alpha, c.beta, c.gamma, c.lambda, c.decay, c.list_size
        );
    }
}

#[derive(Args)]
struct GenCodeArgs {
    /// Codeword length.
    #[arg(long)]
    n: usize,
    /// Parity-check count.
    #[arg(long)]
    m: usize,
    /// Variable-node degree.
    #[arg(long, default_value_t = 3)]
    dv: usize,
    /// Check-node degree.
    #[arg(long, default_value_t = 6)]
    dc: usize,
    /// Construction seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// ALIST output path.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Also export the edge list as `check_id,var_id` CSV.
    #[arg(long, value_name = "PATH")]
    edges_csv: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Decoder name.
    #[arg(long, default_value = "arcid")]
    decoder: String,
    /// Eb/N0 in dB.
    #[arg(long, default_value_t = 3.5)]
    snr_db: f64,
    /// Master seed for the noise stream.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Trial index within the stream.
    #[arg(long, default_value_t = 0)]
    trial: u64,
    /// Transmitted codeword: all_zero or encoded_random.
    #[arg(long, default_value = "all_zero")]
    transmission: String,
    #[command(flatten)]
    params: DecoderParams,
}

#[derive(Args)]
struct SweepArgs {
    /// Load the whole experiment from a plan file (overrides code/decoder
    /// flags).
    #[arg(long, value_name = "PATH")]
    plan: Option<PathBuf>,
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    params: DecoderParams,
    /// SNR list: comma-separated dB values and/or start:step:stop ranges.
    #[arg(long, default_value = "0:0.5:4.5")]
    snr_list: String,
    /// Codeword budget per (decoder, SNR) point.
    #[arg(long, default_value_t = 1_000_000)]
    max_cw: u64,
    /// Frame-error events that stop a point early.
    #[arg(long, default_value_t = 100)]
    max_errors: u64,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Transmitted codewords: all_zero or encoded_random.
    #[arg(long, default_value = "all_zero")]
    transmission: String,
    /// CSV output path.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads (output is invariant to this).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    params: DecoderParams,
    /// Eb/N0 in dB.
    #[arg(long, default_value_t = 3.5)]
    snr: f64,
    /// Codewords per decoder.
    #[arg(long, default_value_t = 10_000)]
    codewords: u64,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Transmitted codewords: all_zero or encoded_random.
    #[arg(long, default_value = "all_zero")]
    transmission: String,
    /// CSV output path.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads (output is invariant to this).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct ModelArgs {
    /// Decoder name.
    #[arg(long, default_value = "arcid")]
    decoder: String,
    #[arg(long, default_value_t = 2048)]
    n: usize,
    #[arg(long, default_value_t = 1024)]
    m: usize,
    /// Edge count; defaults to n * dv.
    #[arg(long)]
    e: Option<usize>,
    #[arg(long, default_value_t = 3)]
    dv: usize,
    #[arg(long, default_value_t = 6)]
    dc: usize,
    /// Elementary operations per edge.
    #[arg(long, default_value_t = 8)]
    k: u64,
    /// Average iterations to convergence.
    #[arg(long, default_value_t = 4.5)]
    i_avg: f64,
    /// Clock frequency in Hz.
    #[arg(long, default_value_t = 1.2e9)]
    fclk: f64,
    /// Parallelization efficiency in (0, 1].
    #[arg(long, default_value_t = 0.7)]
    eta: f64,
    /// Fixed overhead in seconds.
    #[arg(long, default_value_t = 0.0)]
    overhead: f64,
    /// CSV output path.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::GenCode(args) => gen_code(args),
        Command::Decode(args) => decode_once(args),
        Command::Sweep(args) => sweep(args),
        Command::Profile(args) => profile(args),
        Command::Model(args) => model(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// 1 for configuration/usage problems, 2 for runtime failures.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidSpec(_)
        | Error::Config(_)
        | Error::Dimension { .. }
        | Error::AlistParse { .. }
        | Error::TextParse { .. } => 1,
        Error::ConstructionFailed(_) | Error::RankDeficient { .. } | Error::Io { .. } => 2,
    }
}

fn install_workers(workers: Option<usize>) {
    if let Some(w) = workers {
        // Ignore failure: the global pool can only be set once per process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global();
    }
}

fn gen_code(args: GenCodeArgs) -> ldpc_core::Result<()> {
    let spec = CodeSpec::new(args.n, args.m, args.dv, args.dc)?;
    println!("resolved configuration:");
    println!(
        "code = regular(n={}, m={}, dv={}, dc={}, seed={})",
        spec.n, spec.m, spec.dv, spec.dc, args.seed
    );
    println!("out = {}", args.out.display());

    let built = construct_regular_code_detailed(&spec, args.seed)?;
    let graph = &built.graph;
    save_text(&args.out, &write_alist(graph))?;
    if let Some(path) = &args.edges_csv {
        save_text(path, &graph.to_edge_csv())?;
    }

    println!(
        "wrote {}: n={} m={} edges={} dv={} dc={} rate={}",
        args.out.display(),
        graph.num_vars(),
        graph.num_checks(),
        graph.num_edges(),
        spec.dv,
        spec.dc,
        spec.rate()
    );
    if built.has_four_cycles {
        println!(
            "warning: retry budget exhausted, graph contains 4-cycles \
             (attempts = {})",
            built.attempts
        );
    }
    Ok(())
}

fn decode_once(args: DecodeArgs) -> ldpc_core::Result<()> {
    let graph = args.code.source()?.build()?;
    let algorithm = Algorithm::from_name(&args.decoder)?;
    let configs = args.params.configs()?;
    let config = DecoderConfig {
        algorithm,
        ..configs[0]
    };
    config.validate()?;
    let transmission = Transmission::from_name(&args.transmission)?;

    println!("resolved configuration:");
    println!("{}", args.code.describe());
    println!("snr_db = {}", args.snr_db);
    println!("seed = {}  trial = {}", args.seed, args.trial);
    println!("transmission = {}", transmission.name());
    echo_decoders(&[config]);

    let rate = (graph.num_vars() - graph.num_checks()) as f64 / graph.num_vars() as f64;
    let noise_variance = ebno_db_to_noise_variance(args.snr_db, rate)?;
    let encoder = match transmission {
        Transmission::AllZero => None,
        Transmission::EncodedRandom => Some(ldpc_core::codes::SystematicEncoder::new(&graph)?),
    };
    let (llrs, tx) = harness::trial_channel_llrs(
        &graph,
        encoder.as_ref(),
        noise_variance,
        args.seed,
        0,
        args.trial,
    )?;
    let result = ldpc_core::schedulers::decode(&graph, &llrs, &config)?;
    println!(
        "result: converged={} iterations={} bit_errors={}",
        result.converged,
        result.iterations_used,
        result.decoded.hamming_distance(&tx)
    );
    println!(
        "ops: v2c={} c2v={} precompute={} total={}",
        result.op_counts.v2c_ops,
        result.op_counts.c2v_ops,
        result.op_counts.precompute_ops,
        result.op_counts.total_ops()
    );
    Ok(())
}

fn build_sweep_plan(args: &SweepArgs) -> ldpc_core::Result<ExperimentPlan> {
    if let Some(path) = &args.plan {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io {
                path: path.display().to_string(),
                source: e,
            })?;
        return parse_plan(&text);
    }
    let plan = ExperimentPlan {
        code: args.code.source()?,
        decoders: args.params.configs()?,
        snr_points_db: parse_snr_list(&args.snr_list)?,
        max_codewords: args.max_cw,
        max_error_events: args.max_errors,
        master_seed: args.seed,
        transmission: Transmission::from_name(&args.transmission)?,
    };
    plan.validate()?;
    Ok(plan)
}

fn echo_plan(plan: &ExperimentPlan) {
    println!("resolved configuration:");
    match &plan.code {
        CodeSource::Regular { spec, seed } => println!(
            "code = regular(n={}, m={}, dv={}, dc={}, seed={})",
            spec.n, spec.m, spec.dv, spec.dc, seed
        ),
        CodeSource::AlistPath(p) => println!("code = {}", p.display()),
        CodeSource::Graph(g) => println!(
            "code = in-memory(n={}, m={})",
            g.num_vars(),
            g.num_checks()
        ),
    }
    let snrs: Vec<String> = plan.snr_points_db.iter().map(f64::to_string).collect();
    println!("snr_points_db = {}", snrs.join(","));
    println!("max_codewords = {}", plan.max_codewords);
    println!("max_error_events = {}", plan.max_error_events);
    println!("master_seed = {}", plan.master_seed);
    println!("transmission = {}", plan.transmission.name());
    echo_decoders(&plan.decoders);
}

fn sweep(args: SweepArgs) -> ldpc_core::Result<()> {
    install_workers(args.workers);
    let plan = build_sweep_plan(&args)?;
    echo_plan(&plan);

    let report = run_sweep(&plan)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "{:>9} {:>7} {:>10} {:>11} {:>11} {:>9} {:>7}",
        "decoder", "snr_db", "codewords", "ber", "fer", "avg_iters", "stop"
    );
    for r in &report.rows {
        println!(
            "{:>9} {:>7} {:>10} {:>11.4e} {:>11.4e} {:>9.2} {:>7}",
            r.decoder,
            r.snr_db,
            r.codewords,
            r.ber,
            r.fer,
            r.avg_iterations,
            r.stop_reason.name()
        );
    }
    if let Some(path) = &args.out {
        save_text(path, &write_sweep_csv(&report))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn profile(args: ProfileArgs) -> ldpc_core::Result<()> {
    install_workers(args.workers);
    let plan = ExperimentPlan {
        code: args.code.source()?,
        decoders: args.params.configs()?,
        snr_points_db: vec![args.snr],
        max_codewords: args.codewords,
        max_error_events: u64::MAX,
        master_seed: args.seed,
        transmission: Transmission::from_name(&args.transmission)?,
    };
    plan.validate()?;
    echo_plan(&plan);

    let report = iteration_profile(&plan, args.snr)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "{:>9} {:>5} {:>11} {:>11}",
        "decoder", "cap", "ber", "fer"
    );
    for r in &report.rows {
        println!(
            "{:>9} {:>5} {:>11.4e} {:>11.4e}",
            r.decoder, r.iteration_cap, r.ber, r.fer
        );
    }
    for it in &report.iterations {
        println!("avg_iterations {} = {:.3}", it.decoder, it.avg);
    }
    if let Some(path) = &args.out {
        save_text(path, &write_profile_csv(&report))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn model(args: ModelArgs) -> ldpc_core::Result<()> {
    let algorithm = Algorithm::from_name(&args.decoder)?;
    let e = args.e.unwrap_or(args.n * args.dv);
    println!("resolved configuration:");
    println!(
        "decoder = {}  n = {}  m = {}  e = {}  dv = {}  dc = {}  k = {}",
        algorithm, args.n, args.m, e, args.dv, args.dc, args.k
    );
    println!(
        "i_avg = {}  fclk = {}  eta = {}  overhead = {}",
        args.i_avg, args.fclk, args.eta, args.overhead
    );

    let ops = per_iteration_ops(algorithm, args.n, args.m, e, args.dv, args.dc, args.k)?;
    let model = LatencyModel {
        f_clk: args.fclk,
        eta: args.eta,
        i_avg: args.i_avg,
        t_overhead: args.overhead,
    };
    let latency_s = latency_estimate(&model, &ops)?;
    let memory = memory_estimate_for(algorithm, args.n, args.m, e);
    println!(
        "ops_per_iteration = {} (v2c={} c2v={} precompute={})",
        ops.total_ops(),
        ops.v2c_ops,
        ops.c2v_ops,
        ops.precompute_ops
    );
    println!("latency_s = {latency_s} ({:.4} ms)", latency_s * 1e3);
    println!("memory_bytes = {memory}");

    println!("reference latency table (E=6144, dv=3, dc=6, k=8, 1.2 GHz, eta=0.7):");
    for row in reference_latency_rows() {
        let flag = if row.consistent {
            "consistent"
        } else {
            "MISMATCH: formula disagrees with the cited value"
        };
        println!(
            "  {:>6} i_avg={:>5}  formula={:>6.2} ms  cited={:>6.2} ms  [{flag}]",
            row.decoder, row.i_avg, row.formula_ms, row.cited_ms
        );
    }

    if let Some(path) = &args.out {
        let mut csv =
            String::from("decoder,n,m,e,dv,dc,k,i_avg,ops_per_iter,latency_s,memory_bytes\n");
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            algorithm,
            args.n,
            args.m,
            e,
            args.dv,
            args.dc,
            args.k,
            args.i_avg,
            ops.total_ops(),
            latency_s,
            memory
        ));
        save_text(path, &csv)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
