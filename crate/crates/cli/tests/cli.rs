//! End-to-end tests of the `ldpc-sim` binary: flags, exit codes, echoed
//! configuration, and file outputs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ldpc-sim"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("ldpc-sim-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn help_exits_zero_everywhere() {
    for args in [
        vec!["--help"],
        vec!["gen-code", "--help"],
        vec!["decode", "--help"],
        vec!["sweep", "--help"],
        vec!["profile", "--help"],
        vec!["model", "--help"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?} failed");
    }
    // Top-level help documents every subcommand.
    let text = stdout(&run(&["--help"]));
    for sub in ["gen-code", "decode", "sweep", "profile", "model"] {
        assert!(text.contains(sub), "missing {sub} in help");
    }
}

#[test]
fn gen_code_writes_alist() {
    let out_path = tmp_path("gen.alist");
    let csv_path = tmp_path("gen-edges.csv");
    let out = run(&[
        "gen-code",
        "--n",
        "512",
        "--m",
        "256",
        "--dv",
        "3",
        "--dc",
        "6",
        "--seed",
        "1",
        "--out",
        out_path.to_str().unwrap(),
        "--edges-csv",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("edges=1536"), "{text}");
    assert!(text.contains("seed=1"));

    let alist = std::fs::read_to_string(&out_path).unwrap();
    let graph = ldpc_core::codes::parse_alist(&alist).unwrap();
    assert_eq!(graph.num_edges(), 1536);

    let edges = std::fs::read_to_string(&csv_path).unwrap();
    assert!(edges.starts_with("check_id,var_id\n"));
    assert_eq!(edges.lines().count(), 1537);

    std::fs::remove_file(out_path).unwrap();
    std::fs::remove_file(csv_path).unwrap();
}

#[test]
fn gen_code_missing_required_flag_is_usage_error() {
    let out = run(&["gen-code", "--n", "512", "--out", "/tmp/never.alist"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_code_inconsistent_degrees_exit_one() {
    let out = run(&[
        "gen-code", "--n", "6", "--m", "3", "--dv", "2", "--dc", "5", "--out",
        "/tmp/never.alist",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("edge counts disagree"));
}

#[test]
fn decode_single_shot() {
    let out = run(&[
        "decode", "--n", "64", "--m", "32", "--decoder", "arcid", "--snr-db", "4.0",
        "--seed", "3",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("resolved configuration:"));
    assert!(text.contains("result: converged="));
    assert!(text.contains("ops: v2c="));
}

#[test]
fn sweep_echoes_defaults_and_writes_csv() {
    let csv_path = tmp_path("sweep.csv");
    let out = run(&[
        "sweep",
        "--n",
        "64",
        "--m",
        "32",
        "--decoders",
        "arcid",
        "--snr-list",
        "2.0,4.0",
        "--max-cw",
        "60",
        "--max-errors",
        "100",
        "--seed",
        "9",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    // The defaulted adaptive parameters are echoed.
    assert!(text.contains("t_max=20"));
    assert!(text.contains("alpha=0.65"));
    assert!(text.contains("beta=0.35"));
    assert!(text.contains("gamma=0.15"));
    assert!(text.contains("lambda=0.2"));
    assert!(text.contains("master_seed = 9"));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with(
        "decoder,snr_db,codewords,bit_errors,frame_errors,ber,fer,ci_low,ci_high,avg_iters,stop_reason\n"
    ));
    assert_eq!(csv.lines().count(), 3); // header + 2 SNR points
    std::fs::remove_file(csv_path).unwrap();
}

#[test]
fn sweep_empty_snr_list_is_usage_error() {
    let out = run(&[
        "sweep", "--n", "64", "--m", "32", "--decoders", "arcid", "--snr-list", "",
        "--max-cw", "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn snr_range_expands_to_ten_points() {
    let csv_path = tmp_path("sweep-range.csv");
    let out = run(&[
        "sweep",
        "--n",
        "32",
        "--m",
        "16",
        "--decoders",
        "flooding",
        "--snr-list",
        "0:0.5:4.5",
        "--max-cw",
        "5",
        "--t-max",
        "2",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 11); // header + 10 points
    std::fs::remove_file(csv_path).unwrap();
}

#[test]
fn sweep_output_invariant_to_worker_count() {
    let csv_a = tmp_path("sweep-w1.csv");
    let csv_b = tmp_path("sweep-w4.csv");
    for (path, workers) in [(&csv_a, "1"), (&csv_b, "4")] {
        let out = run(&[
            "sweep",
            "--n",
            "64",
            "--m",
            "32",
            "--decoders",
            "arcid,rbp",
            "--snr-list",
            "3.0",
            "--max-cw",
            "400",
            "--max-errors",
            "30",
            "--seed",
            "5",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let a = std::fs::read(&csv_a).unwrap();
    let b = std::fs::read(&csv_b).unwrap();
    assert_eq!(a, b, "worker count changed the CSV bytes");
    std::fs::remove_file(csv_a).unwrap();
    std::fs::remove_file(csv_b).unwrap();
}

#[test]
fn sweep_accepts_plan_file_and_alist_code() {
    let alist_path = tmp_path("plan-code.alist");
    let gen = run(&[
        "gen-code", "--n", "64", "--m", "32", "--seed", "2", "--out",
        alist_path.to_str().unwrap(),
    ]);
    assert!(gen.status.success());

    let plan_path = tmp_path("plan.txt");
    let plan = format!(
        "[plan]\nsnr_points_db = 4.0\nmax_codewords = 40\nmax_error_events = 100\n\
         master_seed = 3\n[code]\nalist = {}\n[decoder]\nalgorithm = list_rbp\nlist_size = 2\n",
        alist_path.display()
    );
    std::fs::write(&plan_path, plan).unwrap();

    let out = run(&["sweep", "--plan", plan_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("list_rbp"));
    assert!(text.contains("list_size=2"));

    std::fs::remove_file(alist_path).unwrap();
    std::fs::remove_file(plan_path).unwrap();
}

#[test]
fn profile_t_max_one_gives_single_row_per_decoder() {
    let csv_path = tmp_path("profile.csv");
    let out = run(&[
        "profile",
        "--n",
        "32",
        "--m",
        "16",
        "--decoders",
        "flooding,arcid",
        "--snr",
        "3.5",
        "--t-max",
        "1",
        "--codewords",
        "20",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 3); // header + one row per decoder
    std::fs::remove_file(csv_path).unwrap();
}

#[test]
fn unknown_decoder_is_usage_error_listing_names() {
    let out = run(&[
        "profile", "--n", "32", "--m", "16", "--decoders", "turbo", "--codewords", "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("unknown decoder"));
    for name in ["flooding", "layered", "rbp", "rd_rbp", "list_rbp", "arcid"] {
        assert!(err.contains(name), "valid name {name} not listed: {err}");
    }
}

#[test]
fn model_reproduces_reference_values_and_flags_mismatch() {
    let csv_path = tmp_path("model.csv");
    let out = run(&[
        "model",
        "--decoder",
        "arcid",
        "--i-avg",
        "4.5",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ops_per_iteration = 884736"), "{text}");
    assert!(text.contains("memory_bytes = 95232"));
    assert!(text.contains("4.74"));
    // The one row the latency formula cannot reproduce is flagged.
    assert!(text.contains("MISMATCH"));
    assert!(text.contains("15.80"));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("decoder,n,m,e,dv,dc,k,i_avg,ops_per_iter,latency_s,memory_bytes\n"));
    assert!(csv.contains("arcid,2048,1024,6144,3,6,8,4.5,884736,"));
    std::fs::remove_file(csv_path).unwrap();
}

#[test]
fn model_bp_reference_point() {
    let out = run(&["model", "--decoder", "flooding", "--i-avg", "250"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ops_per_iteration = 49152"), "{text}");
    assert!(text.contains("14.63"));
}

#[test]
fn model_invalid_eta_is_usage_error() {
    let out = run(&["model", "--eta", "0"]);
    assert_eq!(out.status.code(), Some(1));
}
