use std::fs;
use std::process::Command;

use citedist::cli;
use citedist::experiments::{plausibility_row, PlausibilityRow};
use citedist::fitting::FitConfig;
use citedist::io::{emit_plot_data, ingest, Format, InputFormat, RawCountFile, Report, ReportHeader, ReportRow};
use citedist::{CitationSample, Error, ModelSpec};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("citedist").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn ingest_keeps_every_count() {
    let text: String = (0..500).map(|i| format!("{}\n", (i * 7919) % 113)).collect();
    let raw = RawCountFile::parse(&text, InputFormat::PlainLines, "x").unwrap();
    let s = ingest(&raw, 1).unwrap();
    assert_eq!(s.len(), 500);
    let mut a: Vec<u64> = raw.counts.iter().map(|c| c + 1).collect();
    let mut b = s.counts().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
}

#[test]
fn plot_data_is_monotone_and_ends_at_one() {
    let m = ModelSpec::lognormal(1.5, 1.0).unwrap();
    let s = m.sample(300, 4);
    let mut buf = Vec::new();
    emit_plot_data(&m, &s, &mut buf).unwrap();
    let mut reader = csv::Reader::from_reader(&buf[..]);
    let rows: Vec<(u64, f64, f64)> = reader.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len() as u64, s.max().unwrap());
    assert!(rows.windows(2).all(|w| w[0].1 <= w[1].1 && w[0].2 <= w[1].2));
    assert_eq!(rows.last().unwrap().1, 1.0);
}

#[test]
fn plausibility_tsv_has_the_table_columns() {
    let s = ModelSpec::lognormal(2.08, 1.11).unwrap().sample(400, 1).with_label("Control and Optimization");
    let row = plausibility_row(&s, 19, 1, &FitConfig::default()).unwrap();
    let report = Report::new(ReportHeader::new("t", "sim").seed(1), vec![row]);
    let mut buf = Vec::new();
    report.write(Format::Tsv, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(
        header,
        "Subject\tN\tLn μ\tLn σ\tLn KS\tLn KS p\tHook α\tHook B\tHook KS\tHook KS p\tPlausible"
    );
    let data = text.lines().filter(|l| !l.starts_with('#')).nth(1).unwrap();
    assert_eq!(data.split('\t').count(), PlausibilityRow::COLUMNS.len());

    let mut json = Vec::new();
    report.write(Format::Json, &mut json).unwrap();
    assert_eq!(Report::<PlausibilityRow>::read_json(&json[..]).unwrap(), report);
}

#[test]
fn fit_command_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("subject.txt");
    fs::write(&good, "0\n3\n12\n1\n0\n7\n2\n25\n4\n").unwrap();
    let (code, out, err) = run(&["--seed", "5", "fit", good.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("master seed: 5"));
    assert!(out.contains("subject\t9\tlognormal"));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1\n-2\n").unwrap();
    let (code, _, err) = run(&["fit", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"));

    let zeros = dir.path().join("zeros.txt");
    fs::write(&zeros, "0\n").unwrap();
    assert_eq!(run(&["--offset", "0", "fit", zeros.to_str().unwrap()]).0, 2);

    let flat = dir.path().join("flat.txt");
    fs::write(&flat, "3\n3\n3\n").unwrap();
    assert_eq!(run(&["fit", flat.to_str().unwrap()]).0, 3);

    assert_eq!(run(&["fit"]).0, 2);
    assert_eq!(run(&["study", "nonsense"]).0, 2);
}

#[test]
fn seed_comes_from_the_environment_in_the_binary() {
    let out = Command::new(env!("CARGO_BIN_EXE_citedist"))
        .args(["simulate", "--dist", "hooked", "--p1", "3", "--p2", "20", "-n", "50"])
        .env("CITEDIST_SEED", "99")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("master seed: 99"));
    let again = Command::new(env!("CARGO_BIN_EXE_citedist"))
        .args(["--seed", "99", "simulate", "--dist", "hooked", "--p1", "3", "--p2", "20", "-n", "50"])
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 50);
}

#[test]
fn simulate_then_ingest_round_trips() {
    let (code, out, _) = run(&["--seed", "3", "simulate", "--subject", "Virology", "-n", "200"]);
    assert_eq!(code, 0);
    let raw = RawCountFile::parse(&out, InputFormat::PlainLines, "v").unwrap();
    let s = ingest(&raw, 1).unwrap();
    let again = ModelSpec::lognormal(2.81, 1.05)
        .unwrap()
        .sample(200, citedist::seed::derive(3, citedist::seed::tag::SIMULATION, 0));
    assert_eq!(s.counts(), again.counts());
}

#[test]
fn study_commands_run_on_the_fixture() {
    let (code, out, _) = run(&["--seed", "1", "study", "means"]);
    assert_eq!(code, 0);
    assert!(out.lines().last().unwrap().starts_with("Average\t25.44\t14.24"));

    let (code, out, _) = run(&[
        "--seed", "1", "study", "vuong", "--subject", "Virology", "--reps", "5", "--size", "1500",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("# source: simulated from the embedded 2006 subject fixture"));
    assert!(out.contains("Virology\t1500\t"));

    let (code, out, _) = run(&["--seed", "1", "--format", "json", "study", "shape", "--subject", "Food Science"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert_eq!(v["header"]["seed"], 1);
}

#[test]
fn study_output_is_reproducible() {
    let args = ["--seed", "12", "study", "plausibility", "--subject", "Control and Optimization", "--nsim", "19"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
}

#[test]
fn offset_zero_accepts_positive_counts() {
    let raw = RawCountFile::parse("1\n2\n", InputFormat::PlainLines, "x").unwrap();
    assert_eq!(ingest(&raw, 0).unwrap().counts(), &[1, 2]);
    let raw = RawCountFile::parse("0\n", InputFormat::PlainLines, "x").unwrap();
    assert!(matches!(ingest(&raw, 0), Err(Error::Offset { line: 1 })));
    assert!(CitationSample::from_counts(vec![0]).is_err());
}
