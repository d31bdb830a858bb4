use std::path::PathBuf;

use tiltver::verify::{tmc_check, Case, CaseConfig, Verdict};
use tiltver::Weight;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn sweep(label: &str, p: i64, tables: &[&str]) -> Vec<(Weight, Verdict)> {
    let cfg = CaseConfig { tilting_tables: tables.iter().map(|t| fixture(t)).collect(), ..CaseConfig::new(label, p) };
    tmc_check(&Case::build(&cfg).unwrap()).entries.into_iter().map(|e| (e.lambda, e.verdict)).collect()
}

#[test]
fn more_data_only_upgrades() {
    let bare = sweep("A2", 2, &[]);
    let fed = sweep("A2", 2, &["a2_p2_tilting.txt"]);
    let twice = sweep("A2", 2, &["a2_p2_tilting.txt", "a2_p2_tilting.txt"]);
    assert_eq!(fed, twice);
    for ((l, before), (m, after)) in bare.iter().zip(&fed) {
        assert_eq!(l, m);
        assert_eq!(*before, Verdict::Consistent);
        assert_eq!(*after, Verdict::Verified);
    }
}

#[test]
fn g2_p2_is_never_verified() {
    for v in sweep("G2", 2, &["g2_p2_tilting.txt"]) {
        assert_eq!(v.1, Verdict::Consistent);
    }
}

#[test]
fn fabricated_row_refutes_only_its_weight() {
    let out = sweep("A2", 3, &["a2_p3_fabricated_tilting.txt"]);
    for (l, v) in out {
        if l == Weight::new(&[2, 2]) {
            assert_eq!(v, Verdict::RefutedNecessary);
        } else {
            assert_ne!(v, Verdict::RefutedNecessary, "{l}");
        }
    }
}
