//! `greedy-bases`: command-line reports over the greedy-base engines.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when a
//! search budget or size cap stops the run, 3 for invalid input.

use clap::{Args, Parser, Subcommand};
use greedy_bases::experiments::{
    cmd_min_array, cmd_named, cmd_oracle, cmd_partitions, cmd_ravenous_table, cmd_subsets, cmd_verify, Format, MinArrayArgs,
    OracleAction, OracleArgs, PartitionsArgs, PartitionsMode, RavenousArgs, RunReport, Status, SubsetsArgs, SubsetsMode,
    VerifyArgs, VerifyId,
};
use greedy_bases::oracle::OracleCaps;
use greedy_bases::partitions::NamedFamily;
use greedy_bases::subsets::DEFAULT_BUDGET;
use greedy_bases::{Error, GroupKind};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_INVALID: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "greedy-bases", version, about = "Greedy bases of symmetric and alternating groups on subsets and partitions")]
struct Cli {
    /// Output format: json, csv or text.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with default settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for randomised runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Greedy bases on r-subsets of [n].
    Subsets(SubsetsCli),
    /// Greedy bases on (k, l)-partitions.
    Partitions(PartitionsCli),
    /// Ratio of the family bounds to the base-size lower bound over a sweep.
    RavenousTable(RavenousCli),
    /// Run a property suite.
    Verify(VerifyCli),
    /// Minimal intersection arrays.
    MinArray(MinArrayCli),
    /// One named intersection array.
    Named(NamedCli),
    /// Brute-force greedy census and minimum base size.
    Oracle(OracleCli),
}

#[derive(Args, Debug)]
struct SubsetsCli {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value = "sym")]
    group: GroupKind,
    /// single, exhaustive or diagnostics.
    #[arg(long, default_value = "single")]
    mode: SubsetsMode,
    /// Seeded runs in diagnostics mode.
    #[arg(long)]
    runs: Option<usize>,
}

#[derive(Args, Debug)]
struct PartitionsCli {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, default_value = "sym")]
    group: GroupKind,
    /// auto, exhaustive, arrays or blaha.
    #[arg(long, default_value = "auto")]
    mode: PartitionsMode,
}

#[derive(Args, Debug)]
struct RavenousCli {
    #[arg(long)]
    max_k: Option<u64>,
    #[arg(long)]
    max_l: Option<u64>,
}

#[derive(Args, Debug)]
struct VerifyCli {
    /// Suite names, or `all`.
    #[arg(required = true)]
    ids: Vec<String>,
    /// Largest n in the subsets sweep.
    #[arg(long)]
    max_n: Option<usize>,
    /// Seeded runs per instance.
    #[arg(long)]
    runs: Option<usize>,
}

#[derive(Args, Debug)]
struct MinArrayCli {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: u32,
    /// Also minimise over 3-arrays arising from each minimiser.
    #[arg(long)]
    third: bool,
}

#[derive(Args, Debug)]
struct NamedCli {
    /// k2, k2-triple, k3, k3-triple, other3, l, bordered-l, theta-minus-e, theta-plus-e, theta-rx.
    family: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    /// Signed residue of l modulo k.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i32>,
}

#[derive(Args, Debug)]
struct OracleCli {
    /// Degree, for the natural or subset action.
    #[arg(long, conflicts_with_all = ["k", "l"])]
    n: Option<usize>,
    /// Subset size; omit for the natural action.
    #[arg(long, requires = "n")]
    r: Option<usize>,
    #[arg(long, requires = "l")]
    k: Option<usize>,
    #[arg(long, requires = "k")]
    l: Option<usize>,
    #[arg(long, default_value = "sym")]
    group: GroupKind,
    /// Follow one point per largest orbit.
    #[arg(long)]
    dedup: bool,
    #[arg(long)]
    max_group: Option<usize>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    format: Option<Format>,
    budget: Option<u64>,
    seed: Option<u64>,
    runs: Option<usize>,
    max_n: Option<usize>,
    max_k: Option<u64>,
    max_l: Option<u64>,
    oracle_max_nodes: Option<u64>,
    oracle_max_group: Option<usize>,
}

fn load_config(path: &Option<PathBuf>) -> Result<Config, String> {
    let Some(path) = path else { return Ok(Config::default()) };
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}

fn run(cli: &Cli, cfg: &Config) -> greedy_bases::Result<Vec<RunReport>> {
    let budget = cli.budget.or(cfg.budget);
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let reports = match &cli.command {
        Command::Subsets(a) => vec![cmd_subsets(&SubsetsArgs {
            n: a.n,
            r: a.r,
            group: a.group,
            mode: a.mode,
            budget: budget.unwrap_or(DEFAULT_BUDGET),
            seed,
            runs: a.runs.or(cfg.runs).unwrap_or(8),
        })?],
        Command::Partitions(a) => vec![cmd_partitions(&PartitionsArgs {
            k: a.k,
            l: a.l,
            group: a.group,
            mode: a.mode,
            budget: budget.unwrap_or(DEFAULT_BUDGET),
        })?],
        Command::RavenousTable(a) => {
            let d = RavenousArgs::default();
            vec![cmd_ravenous_table(&RavenousArgs {
                max_k: a.max_k.or(cfg.max_k).unwrap_or(d.max_k),
                max_l: a.max_l.or(cfg.max_l).unwrap_or(d.max_l),
            })]
        }
        Command::Verify(a) => {
            let mut ids = Vec::new();
            for s in &a.ids {
                if s == "all" {
                    ids.extend(VerifyId::ALL);
                } else {
                    ids.push(s.parse::<VerifyId>()?);
                }
            }
            let mut out = Vec::new();
            for id in ids {
                let mut args = VerifyArgs::new(id);
                args.seed = seed;
                args.budget = budget.unwrap_or(args.budget);
                args.max_n = a.max_n.or(cfg.max_n).unwrap_or(args.max_n);
                args.runs = a.runs.or(cfg.runs).unwrap_or(args.runs);
                out.push(cmd_verify(&args)?);
            }
            out
        }
        Command::MinArray(a) => {
            vec![cmd_min_array(&MinArrayArgs { k: a.k, l: a.l, budget: budget.unwrap_or(DEFAULT_BUDGET), third: a.third })?]
        }
        Command::Named(a) => vec![cmd_named(&NamedFamily::parse(&a.family, a.k, a.l, a.q, a.r)?)?],
        Command::Oracle(a) => {
            let action = match (a.n, a.r, a.k, a.l) {
                (Some(n), None, _, _) => OracleAction::Points { n },
                (Some(n), Some(r), _, _) => OracleAction::Subsets { n, r },
                (None, _, Some(k), Some(l)) => OracleAction::Partitions { k, l },
                _ => return Err(Error::invalid("give --n [--r] or --k --l")),
            };
            let mut caps = OracleCaps { dedup_orbits: a.dedup, ..OracleCaps::default() };
            if let Some(n) = budget.or(cfg.oracle_max_nodes) {
                caps.max_nodes = n;
            }
            if let Some(g) = a.max_group.or(cfg.oracle_max_group) {
                caps.max_group = g;
            }
            vec![cmd_oracle(&OracleArgs { action, group: a.group, caps })?]
        }
    };
    Ok(reports)
}

fn render(reports: &[RunReport], format: Format) -> String {
    match (format, reports) {
        (_, [one]) => one.render(format),
        (Format::Json, many) => {
            let mut s = serde_json::to_string_pretty(many).expect("reports serialise");
            s.push('\n');
            s
        }
        (_, many) => many.iter().map(|r| r.render(format)).collect::<Vec<_>>().join("\n"),
    }
}

/// What one invocation printed and how it should exit.
struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn fail(code: u8, stderr: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: stderr.into() }
    }
}

fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome { code, stdout: text, stderr: String::new() } } else { Outcome::fail(code, text) };
        }
    };
    let cfg = match load_config(&cli.config) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(EXIT_INVALID, format!("error: {e}\n")),
    };
    let reports = match run(&cli, &cfg) {
        Ok(r) => r,
        Err(e @ (Error::CapExceeded { .. } | Error::BudgetExhausted { .. })) => {
            return Outcome::fail(Status::Exhausted.exit_code() as u8, format!("error: {e}\n"));
        }
        Err(e) => return Outcome::fail(EXIT_INVALID, format!("error: {e}\n")),
    };
    let format = cli.format.or(cfg.format).unwrap_or(Format::Text);
    let text = render(&reports, format);
    let stdout = match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return Outcome::fail(EXIT_INVALID, format!("error: cannot write {}: {e}\n", path.display()));
            }
            String::new()
        }
        None => text,
    };
    let code = reports.iter().map(|r| r.status.exit_code()).max().unwrap_or(0) as u8;
    Outcome { code, stdout, stderr: String::new() }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let out = execute(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(out.code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> Outcome {
        execute(std::iter::once("greedy-bases").chain(args.split_whitespace()))
    }

    fn json(out: &Outcome) -> serde_json::Value {
        serde_json::from_str(&out.stdout).expect("JSON output")
    }

    fn quantity<'a>(v: &'a serde_json::Value, name: &str) -> &'a serde_json::Value {
        v["quantities"].as_array().unwrap().iter().find(|q| q["name"] == name).map(|q| &q["value"]).unwrap()
    }

    #[test]
    fn partitions_three_by_two() {
        let out = call("partitions --k 3 --l 2 --format json");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v = json(&out);
        assert_eq!(quantity(&v, "max_greedy"), 4);
        let alt = json(&call("partitions --k 3 --l 2 --group alt --format json"));
        assert_eq!(quantity(&alt, "max_greedy"), 3);
    }

    #[test]
    fn subsets_flags_out_of_range() {
        let out = call("subsets --n 8 --r 2 --mode exhaustive --format json");
        assert_eq!(out.code, 0);
        let v = json(&out);
        assert!(v["flags"].as_array().unwrap().iter().any(|f| f.as_str().unwrap().contains("4r^2")));
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn natural_action_single_run() {
        let v = json(&call("subsets --n 5 --r 1 --format json"));
        assert_eq!(quantity(&v, "base_size"), 4);
    }

    #[test]
    fn every_number_is_tagged() {
        let v = json(&call("partitions --k 2 --l 10 --format json"));
        for q in v["quantities"].as_array().unwrap() {
            assert!(q["source"] == "computed" || q["source"] == "expected", "{q}");
        }
        assert_eq!(quantity(&v, "family_bound"), 6);
    }

    #[test]
    fn failing_check_exits_one() {
        let out = call("partitions --k 3 --l 15 --mode arrays");
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("FAIL minimiser matches named array"));
    }

    #[test]
    fn budget_exhaustion_exits_two() {
        assert_eq!(call("subsets --n 30 --r 3 --mode exhaustive --budget 10").code, 2);
        assert_eq!(call("min-array --k 5 --l 20 --budget 5").code, 2);
    }

    #[test]
    fn cap_exits_two() {
        let out = call("oracle --k 2 --l 5 --max-group 1000");
        assert_eq!(out.code, 2, "{}", out.stderr);
    }

    #[test]
    fn usage_errors_exit_three() {
        assert_eq!(call("verify no-such-suite").code, EXIT_INVALID);
        assert_eq!(call("subsets --n 5").code, EXIT_INVALID);
        assert_eq!(call("partitions --k 3 --l 2 --format yaml").code, EXIT_INVALID);
        assert_eq!(call("oracle --k 2").code, EXIT_INVALID);
    }

    #[test]
    fn help_exits_zero() {
        let out = call("--help");
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("ravenous-table"));
    }

    #[test]
    fn csv_and_text() {
        let csv = call("ravenous-table --max-k 8 --max-l 40 --format csv");
        assert_eq!(csv.code, 0);
        let header = csv.stdout.lines().next().unwrap();
        assert!(header.contains("family") && header.contains("ratio"), "{header}");
        let text = call("ravenous-table --max-k 8 --max-l 40");
        assert!(text.stdout.contains("PASS max ratio"));
    }

    #[test]
    fn reports_are_byte_stable() {
        let a = call("verify matchar-roundtrip --seed 9 --format json");
        let b = call("verify matchar-roundtrip --seed 9 --format json");
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(json(&a)["seed"], 9);
    }

    #[test]
    fn several_suites_give_a_json_array() {
        let v = json(&call("verify minN logfacts --format json"));
        assert_eq!(v.as_array().unwrap().len(), 2);
    }

    #[test]
    fn config_file_and_out_path() {
        let dir = std::env::temp_dir().join(format!("greedy-bases-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = dir.join("cfg.toml");
        std::fs::write(&cfg, "format = \"json\"\nmax_k = 6\nmax_l = 30\n").unwrap();
        let out = dir.join("report.json");
        let res = call(&format!("ravenous-table --config {} --out {}", cfg.display(), out.display()));
        assert_eq!(res.code, 0, "{}", res.stderr);
        assert!(res.stdout.is_empty());
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["instance"]["max_k"], 6);
        std::fs::write(&cfg, "colour = 1\n").unwrap();
        assert_eq!(call(&format!("ravenous-table --config {}", cfg.display())).code, EXIT_INVALID);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn named_array_reports_k() {
        let out = call("named k3 --q 5 --format json");
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(quantity(&json(&out), "k_order"), 1);
        let neg = call("named theta-rx --k 5 --q 7 --r -1");
        assert_eq!(neg.code, 0, "{}", neg.stderr);
    }
}
