use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bcgsemo"))
}

fn stdout_of(cmd: &mut Command) -> String {
    let out = cmd.output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn front_prints_all_points() {
    let out = stdout_of(bin().args(["front", "--n", "4", "--k", "2", "--r", "1"]));
    assert_eq!(
        out,
        "f1,f2,witness\n50,70,1010\n52,68,1011\n68,52,1110\n70,50,1111\n"
    );
}

#[test]
fn front_rejects_invalid_params() {
    let out = bin().args(["front", "--n", "5", "--k", "2", "--r", "1"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn run_prints_one_raw_row() {
    let out = stdout_of(bin().args([
        "run", "--algo", "bc-gsemo", "--n", "24", "--k", "2", "--r", "1", "--seed", "2",
    ]));
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], bcgsemo::harness::RAW_HEADER);
    assert!(lines[1].starts_with("24,2,1,bc-gsemo,1000,2,0,"), "{}", lines[1]);
    assert!(lines[1].ends_with(",true,4"));
}

#[test]
fn run_writes_trace_file() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    stdout_of(bin().args(["run", "--algo", "gsemo", "--n", "24", "--k", "2", "--r", "1", "--seed", "1"])
        .args(["--trace-every", "250", "--trace-out"])
        .arg(&trace));
    let text = std::fs::read_to_string(&trace).unwrap();
    let expected = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden_gsemo_n24_k2_r1_seed1.csv"),
    )
    .unwrap();
    assert!(expected.starts_with(&text), "trace:\n{text}");
}

#[test]
fn sweep_from_config_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    std::fs::write(
        &config,
        "n_values = [24]\nk_values = [2, 3]\nr_values = [1, 2]\nruns_per_cell = 4\nbase_seed = 3\n",
    )
    .unwrap();
    let run = |tag: &str, jobs: &str| {
        let raw = dir.path().join(format!("raw-{tag}.csv"));
        let summary = dir.path().join(format!("summary-{tag}.csv"));
        stdout_of(bin().args(["sweep", "--config"]).arg(&config).arg("--out").arg(&raw)
            .arg("--summary").arg(&summary).args(["--jobs", jobs]));
        (std::fs::read_to_string(raw).unwrap(), std::fs::read_to_string(summary).unwrap())
    };
    let (raw_a, sum_a) = run("a", "1");
    let (raw_b, sum_b) = run("b", "2");
    assert_eq!(raw_a, raw_b);
    assert_eq!(sum_a, sum_b);
    // k=2 gives ℓ=12 and k=3 gives ℓ=8, both with r=1,2: 4 cells × 2 algorithms × 4 runs.
    assert_eq!(raw_a.lines().count(), 1 + 4 * 2 * 4);
    assert_eq!(sum_a.lines().count(), 1 + 4 * 2);
    assert!(sum_a.starts_with(bcgsemo::harness::SUMMARY_HEADER));
}

#[test]
fn sweep_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    std::fs::write(&config, "n_values = [24]\nk_values = [2]\nr_values = [1]\nruns_per_cell = 9\n").unwrap();
    let raw = dir.path().join("raw.csv");
    stdout_of(bin().args(["sweep", "--config"]).arg(&config).arg("--out").arg(&raw)
        .arg("--summary").arg(dir.path().join("s.csv"))
        .args(["--runs-per-cell", "2", "--algorithms", "gsemo"]));
    assert_eq!(std::fs::read_to_string(raw).unwrap().lines().count(), 3);
}

#[test]
fn sweep_refuses_unwritable_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["sweep", "--n-values", "24", "--runs-per-cell", "1", "--out"])
        .arg(dir.path().join("missing/raw.csv"))
        .arg("--summary")
        .arg(dir.path().join("s.csv"))
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot open output"));
}

#[test]
fn verify_passes_on_small_instances() {
    let out = stdout_of(bin().args(["verify", "--max-n", "10", "--pairs", "2000"]));
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}

#[test]
fn verify_refuses_large_enumeration() {
    let out = bin().args(["verify", "--max-n", "21"]).output().unwrap();
    assert!(!out.status.success());
}
