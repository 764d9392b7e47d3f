//! Reports compared byte for byte with stored JSON. Set `UPDATE_GOLDEN=1` to
//! rewrite the files after an intended change.

use greedy_bases::experiments::{
    cmd_partitions, cmd_ravenous_table, cmd_subsets, cmd_verify, PartitionsArgs, PartitionsMode, RavenousArgs, RunReport,
    SubsetsArgs, SubsetsMode, VerifyArgs, VerifyId,
};
use greedy_bases::subsets::DEFAULT_BUDGET;
use greedy_bases::GroupKind;
use std::path::PathBuf;

fn compare(name: &str, report: &RunReport) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let got = report.to_json();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "{name} differs from its golden file");
}

fn partitions(k: usize, l: usize, group: GroupKind, mode: PartitionsMode) -> RunReport {
    cmd_partitions(&PartitionsArgs { k, l, group, mode, budget: DEFAULT_BUDGET }).unwrap()
}

#[test]
fn partitions_three_by_two() {
    compare("partitions_3_2_sym", &partitions(3, 2, GroupKind::Sym, PartitionsMode::Auto));
    compare("partitions_3_2_alt", &partitions(3, 2, GroupKind::Alt, PartitionsMode::Auto));
}

#[test]
fn partitions_two_by_ten() {
    compare("partitions_2_10_sym", &partitions(2, 10, GroupKind::Sym, PartitionsMode::Auto));
}

#[test]
fn partitions_blaha() {
    compare("partitions_6_60_blaha", &partitions(6, 60, GroupKind::Sym, PartitionsMode::Auto));
}

#[test]
fn subsets_sixteen_two() {
    let args =
        SubsetsArgs { n: 16, r: 2, group: GroupKind::Alt, mode: SubsetsMode::Exhaustive, budget: DEFAULT_BUDGET, seed: 0, runs: 0 };
    compare("subsets_16_2_alt", &cmd_subsets(&args).unwrap());
}

#[test]
fn subsets_diagnostics() {
    let args =
        SubsetsArgs { n: 20, r: 2, group: GroupKind::Alt, mode: SubsetsMode::Diagnostics, budget: DEFAULT_BUDGET, seed: 5, runs: 3 };
    compare("subsets_20_2_alt_diagnostics", &cmd_subsets(&args).unwrap());
}

#[test]
fn ravenous_default() {
    compare("ravenous_table", &cmd_ravenous_table(&RavenousArgs::default()));
}

#[test]
fn verify_min_n() {
    compare("verify_minN", &cmd_verify(&VerifyArgs::new(VerifyId::MinN)).unwrap());
}
