use std::path::Path;
use std::process::{Command, Output};

use gsp_census::commands::record_argv;
use gsp_census::CensusRecord;

fn bin(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gsp-census"));
    cmd.args(args).env_remove("GSP_CENSUS_CACHE");
    if let Some(dir) = cache {
        cmd.env("GSP_CENSUS_CACHE", dir);
    }
    cmd.output().unwrap()
}

fn record(args: &[&str]) -> CensusRecord {
    let out = bin(args, None);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    CensusRecord::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

#[test]
fn census_exact_record() {
    let r = record(&["census", "exact", "--g", "2", "--ell", "3", "--gamma", "2"]);
    assert_eq!(r.exact_counts["T"], "22680");
    assert_eq!(r.exact_ratios["proportion"].num, "7");
    assert_eq!(r.exact_ratios["proportion"].den, "16");
}

#[test]
fn psitow_record() {
    let r = record(&["bounds", "psitow", "--g", "1", "--ell", "3", "--psi", "1"]);
    assert_eq!(
        (
            r.exact_ratios["lower"].num.as_str(),
            r.exact_ratios["lower"].den.as_str()
        ),
        ("9", "64")
    );
    assert_eq!(
        (
            r.exact_ratios["upper"].num.as_str(),
            r.exact_ratios["upper"].den.as_str()
        ),
        ("9", "8")
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin(args, None).status.code();
    assert_eq!(
        code(&["census", "exact", "--g", "0", "--ell", "3", "--gamma", "2"]),
        Some(2)
    );
    assert_eq!(
        code(&["census", "exact", "--g", "2", "--ell", "4", "--gamma", "2"]),
        Some(2)
    );
    assert_eq!(
        code(&["census", "exact", "--g", "2", "--ell", "3", "--gamma", "3"]),
        Some(2)
    );
    assert_eq!(
        code(&["brute", "count", "--g", "2", "--ell", "3", "--gamma", "2", "--prop", "X"]),
        Some(2)
    );
    assert_eq!(code(&["no-such-command"]), Some(2));
    assert_eq!(
        code(&["brute", "count", "--g", "3", "--ell", "3", "--gamma", "1", "--prop", "E"]),
        Some(3)
    );
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn budget_refusal_reports_cost() {
    let out = bin(
        &[
            "brute", "delta", "--g", "2", "--ell", "5", "--gamma", "1", "--budget", "1000",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("9360000"));
    assert!(out.stdout.is_empty());
}

#[test]
fn csv_output() {
    let out = bin(
        &[
            "charpoly", "count", "--g", "1", "--ell", "3", "--gamma", "2", "--prop", "E", "--csv",
        ],
        None,
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("command,ell,g,gamma,prop,name,num,den,provenance")
    );
    assert!(text.contains("charpoly count,3,1,2,E,psi,1,1,formula"));
    assert!(text.contains("charpoly count,3,1,2,E,psi_N,2,1,formula"));
}

#[test]
fn records_reproduce_from_their_params() {
    let runs: [&[&str]; 4] = [
        &["census", "exact", "--g", "3", "--ell", "5", "--all-gamma"],
        &[
            "brute", "count", "--g", "1", "--ell", "7", "--gamma", "3", "--prop", "Rproof",
        ],
        &[
            "sample", "--g", "2", "--ell", "5", "--gamma", "2", "--prop", "E", "--n", "5000",
            "--seed", "4",
        ],
        &["curves", "scan", "--q", "31", "--ell", "5"],
    ];
    for args in runs {
        let first = record(args);
        let again_args = record_argv(&first.command, &first.params);
        let again = record(&again_args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(first.exact_counts, again.exact_counts);
        assert_eq!(first.exact_ratios, again.exact_ratios);
        assert_eq!(first.estimates, again.estimates);
    }
}

#[test]
fn sample_is_independent_of_threads() {
    let args = [
        "sample", "--g", "2", "--ell", "3", "--gamma", "2", "--prop", "N", "--n", "40000",
        "--seed", "9",
    ];
    let one = record(&[&args[..], &["--threads", "1"]].concat());
    let three = record(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(one.estimates, three.estimates);
}

#[test]
fn cli_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["census", "exact", "--g", "2", "--ell", "5", "--gamma", "3"];
    let first = bin(&args, Some(dir.path()));
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    // A cache hit returns the stored record, timestamp included.
    let second = bin(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
    let bypass = bin(&[&args[..], &["--no-cache"]].concat(), Some(dir.path()));
    assert_eq!(bypass.status.code(), Some(0));
}

#[test]
fn corrupt_cache_entry_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bounds", "delta", "--g", "1", "--ell", "5"];
    assert_eq!(bin(&args, Some(dir.path())).status.code(), Some(0));
    let entry = std::fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    std::fs::write(&entry, "{ not json").unwrap();
    let out = bin(&args, Some(dir.path()));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let r = CensusRecord::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(r.exact_ratios["lower"].num, "125");
    // The recomputed record replaced the corrupt entry.
    assert!(CensusRecord::from_json(&std::fs::read_to_string(&entry).unwrap()).is_ok());
}
