//! End-to-end tests of the `givens` binary: exit codes, file outputs,
//! reproducibility, and agreement with direct library calls.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use givens_cli::io;
use givens_core::{
    factorize, sample_haar_orthogonal, sample_planted, Algorithm, DenseMatrix, FactorizeConfig,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_givens"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn assert_exit(output: &Output, code: i32) {
    assert_eq!(
        output.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

fn write_matrix_file(path: &Path, m: &DenseMatrix) {
    io::write_matrix(path, m).unwrap();
}

#[test]
fn factorize_identity_yields_empty_sequence() {
    let dir = tempfile::tempdir().unwrap();
    write_matrix_file(&dir.path().join("id.mat"), &DenseMatrix::identity(6));
    let out = run_in(
        dir.path(),
        &[
            "factorize",
            "--input",
            "id.mat",
            "--algorithm",
            "l1",
            "--out",
            "id.seq",
        ],
    );
    assert_exit(&out, 0);
    let seq = io::read_sequence(&dir.path().join("id.seq")).unwrap();
    assert!(seq.is_empty());
    assert!(dir.path().join("id.seq.trace.csv").exists());
}

#[test]
fn factorize_rejects_malformed_and_non_finite_input() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.mat"), "not a matrix\n").unwrap();
    let out = run_in(
        dir.path(),
        &[
            "factorize",
            "--input",
            "bad.mat",
            "--algorithm",
            "l1",
            "--out",
            "x.seq",
        ],
    );
    assert_exit(&out, 2);

    std::fs::write(dir.path().join("nan.mat"), "2\n1 0\nnan 1\n").unwrap();
    let out = run_in(
        dir.path(),
        &[
            "factorize",
            "--input",
            "nan.mat",
            "--algorithm",
            "l1",
            "--out",
            "x.seq",
        ],
    );
    assert_exit(&out, 2);

    let out = run_in(
        dir.path(),
        &[
            "factorize",
            "--input",
            "missing.mat",
            "--algorithm",
            "l1",
            "--out",
            "x.seq",
        ],
    );
    assert_exit(&out, 2);
}

#[test]
fn factorize_matches_direct_library_call_on_a_planted_instance() {
    let dir = tempfile::tempdir().unwrap();
    let sample = sample_planted(12, 8, 41).unwrap();
    write_matrix_file(&dir.path().join("planted.mat"), &sample.matrix);
    let out = run_in(
        dir.path(),
        &[
            "factorize",
            "--input",
            "planted.mat",
            "--algorithm",
            "l1",
            "--eps",
            "0.05",
            "--max-factors",
            "40",
            "--checkpoint-stride",
            "5",
            "--out",
            "planted.seq",
        ],
    );
    assert_exit(&out, 0);
    let from_cli = io::read_sequence(&dir.path().join("planted.seq")).unwrap();

    let cfg =
        FactorizeConfig::new(Algorithm::L1CoordinateDescent, 40, 0.05).with_checkpoint_stride(5);
    let direct = factorize(&sample.matrix, &cfg).unwrap();
    assert_eq!(from_cli, direct.sequence);
}

#[test]
fn factorize_accepts_a_sequence_file_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let sample = sample_planted(6, 3, 9).unwrap();
    io::write_sequence(&dir.path().join("gt.seq"), &sample.ground_truth).unwrap();
    let out = run_in(
        dir.path(),
        &[
            "factorize",
            "--input",
            "gt.seq",
            "--algorithm",
            "elimination",
            "--out",
            "e.seq",
        ],
    );
    assert_exit(&out, 0);
    let seq = io::read_sequence(&dir.path().join("e.seq")).unwrap();
    assert_eq!(seq.len(), 15);
}

#[test]
fn jacobi_via_cli_requires_symmetry() {
    let dir = tempfile::tempdir().unwrap();
    write_matrix_file(
        &dir.path().join("u.mat"),
        &sample_haar_orthogonal(5, 1).unwrap(),
    );
    let out = run_in(
        dir.path(),
        &[
            "factorize",
            "--input",
            "u.mat",
            "--algorithm",
            "jacobi",
            "--out",
            "x.seq",
        ],
    );
    assert_exit(&out, 2);
}

#[test]
fn apply_streams_updates_and_matches_dense_multiplication() {
    let dir = tempfile::tempdir().unwrap();
    let sample = sample_planted(10, 25, 77).unwrap();
    io::write_sequence(&dir.path().join("s.seq"), &sample.ground_truth).unwrap();
    let x: Vec<f64> = (0..10).map(|k| 0.3 * k as f64 - 1.0).collect();
    io::write_vector(&dir.path().join("x.vec"), &x).unwrap();

    let out = run_in(
        dir.path(),
        &[
            "apply", "--seq", "s.seq", "--input", "x.vec", "--out", "y.vec",
        ],
    );
    assert_exit(&out, 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("applied_updates=25"), "stdout: {stdout}");

    let y = match io::read_numeric(&dir.path().join("y.vec")).unwrap() {
        io::NumericInput::Vector(v) => v,
        _ => panic!("expected vector"),
    };
    let dense = sample.matrix.mul_vec(&x).unwrap();
    for (a, b) in y.iter().zip(&dense) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn apply_with_empty_sequence_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    io::write_sequence(
        &dir.path().join("e.seq"),
        &givens_core::GivensSequence::empty(4),
    )
    .unwrap();
    io::write_vector(&dir.path().join("x.vec"), &[1.0, 2.0, 3.0, 4.0]).unwrap();
    let out = run_in(
        dir.path(),
        &[
            "apply", "--seq", "e.seq", "--input", "x.vec", "--out", "y.vec",
        ],
    );
    assert_exit(&out, 0);
    assert_eq!(
        std::fs::read(dir.path().join("x.vec")).unwrap(),
        std::fs::read(dir.path().join("y.vec")).unwrap()
    );
}

#[test]
fn planted_density_rows_scale_with_dims_kgrid_samples() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "planted",
            "--experiment",
            "density",
            "--dims",
            "8,16",
            "--k-grid",
            "0,d,dlogd",
            "--samples",
            "4",
            "--out",
            "density.csv",
        ],
    );
    assert_exit(&out, 0);
    let text = std::fs::read_to_string(dir.path().join("density.csv")).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2 * 3 * 4);
    // The k = 0 cells report the identity's nonzero fraction exactly.
    for d in [8usize, 16] {
        let expected = format!(",{},0,,0,{},", d, 1.0 / d as f64);
        assert!(
            rows.iter().any(|r| r.contains(&expected)),
            "missing {expected} in {text}"
        );
    }
}

#[test]
fn fixed_seeds_give_byte_identical_outputs_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "planted",
        "--experiment",
        "approx",
        "--dims",
        "8",
        "--k-grid",
        "4",
        "--samples",
        "3",
        "--seed",
        "11",
        "--algorithms",
        "l1,greedy",
        "--out",
        "",
    ];
    let mut bytes = Vec::new();
    for (idx, threads) in ["1", "2", "2"].iter().enumerate() {
        let out_name = format!("run{idx}.csv");
        let mut full: Vec<&str> = args.to_vec();
        *full.last_mut().unwrap() = &out_name;
        let out = bin()
            .current_dir(dir.path())
            .env("GIVENS_THREADS", threads)
            .args(&full)
            .output()
            .unwrap();
        assert_exit(&out, 0);
        bytes.push(std::fs::read(dir.path().join(&out_name)).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
    assert_eq!(bytes[1], bytes[2]);
}

#[test]
fn gft_runs_on_an_edge_list_and_repeated_ba_seeds() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p3.edges"), "# path\n0 1\n1 2\n").unwrap();
    let out = run_in(
        dir.path(),
        &["gft", "--edge-list", "p3.edges", "--out", "p3.csv"],
    );
    assert_exit(&out, 0);
    // Default budget is n log2 n rounded: 3 * log2(3) = 4.75 -> 5.
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("budget=5"), "stdout: {stdout}");
    let text = std::fs::read_to_string(dir.path().join("p3.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 3); // header + default algorithms

    let out = run_in(
        dir.path(),
        &[
            "gft",
            "--ba",
            "12,3,5",
            "--algorithms",
            "l1,jacobi",
            "--budget",
            "20",
            "--repeats",
            "2",
            "--out",
            "ba.csv",
        ],
    );
    assert_exit(&out, 0);
    let text = std::fs::read_to_string(dir.path().join("ba.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 2);
    // Seeds advance per repeat.
    assert!(text.contains(",5,") && text.contains(",6,"), "{text}");
}

#[test]
fn gft_requires_exactly_one_graph_source() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["gft", "--out", "x.csv"]);
    assert_exit(&out, 2);
}

#[test]
fn growth_mode_prints_an_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "planted",
            "--experiment",
            "growth",
            "--dims",
            "6,8,10",
            "--k-grid",
            "2",
            "--samples",
            "3",
            "--out",
            "growth.csv",
        ],
    );
    assert_exit(&out, 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("growth k=2 eta="), "stdout: {stdout}");
}

#[test]
fn sequence_file_survives_a_cli_round_trip_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let u = sample_haar_orthogonal(7, 13).unwrap();
    write_matrix_file(&dir.path().join("u.mat"), &u);
    let out = run_in(
        dir.path(),
        &[
            "factorize",
            "--input",
            "u.mat",
            "--algorithm",
            "elimination",
            "--out",
            "u.seq",
        ],
    );
    assert_exit(&out, 0);
    let seq = io::read_sequence(&dir.path().join("u.seq")).unwrap();
    let copy: PathBuf = dir.path().join("copy.seq");
    io::write_sequence(&copy, &seq).unwrap();
    assert_eq!(
        std::fs::read(dir.path().join("u.seq")).unwrap(),
        std::fs::read(&copy).unwrap()
    );
}
