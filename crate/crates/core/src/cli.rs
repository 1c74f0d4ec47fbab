// SPDX-License-Identifier: Apache-2.0

//! The `mms` command-line front end.
//!
//! Input is a TOML ballot file:
//!
//! ```toml
//! candidates = ["a1", "a2", "b1"]
//! ballots = [[0, 1], [0, 1], [2]]
//! k = 2
//! ```
//!
//! Reports are TOML documents on standard output with a fixed key order.
//! Every rational is printed as a reduced `"p/q"` string.
//!
//! Exit codes: 0 success, 2 parse error, 3 validation error, 4 instance too
//! large for the selected checker, 5 verification failure.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::election::{CandidateId, CandidateSet, Election};
use crate::error::Error;
use crate::maximin::{maximin_oracle, maximin_support, ORACLE_SUBSET_LIMIT};
use crate::mms::{mms_winners, round_scores, CommitteeTrace};
use crate::verification::{
    self, check_pjr, compare_lists, party_lists, PjrReport, PJR_VOTER_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_CHECKER_BOUND: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "mms",
    version,
    about = "Exact maximin support committee elections"
)]
pub struct Cli {
    /// Worker threads for candidate scoring (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Elect a committee with the MMS rule.
    Winners {
        file: PathBuf,
        /// Committee size; overrides `k` in the file.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Compute the maximin support value of a candidate subset.
    Maximin {
        file: PathBuf,
        /// Comma-separated candidate names.
        #[arg(long)]
        subset: String,
    },
    /// Check the MMS committee against an independent reference.
    Verify {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Run a seeded random cross-check.
    Fuzz {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Flow computation against subset enumeration.
    Oracle,
    /// Proportional justified representation of the committee.
    Pjr,
    /// Seat counts against D'Hondt on party-list profiles.
    Dhondt,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Oracle => "oracle",
            Mode::Pjr => "pjr",
            Mode::Dhondt => "dhondt",
        }
    }
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Validation(String),
    Bound(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Bound(_) => EXIT_CHECKER_BOUND,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) | CliError::Bound(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::CheckerBound { .. } => CliError::Bound(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

/// On-disk ballot file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallotFile {
    pub candidates: Vec<String>,
    pub ballots: Vec<Vec<usize>>,
    pub k: Option<usize>,
}

struct Instance {
    names: Vec<String>,
    election: Election,
    k: Option<usize>,
}

impl Instance {
    fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        let file: BallotFile = toml::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let mut seen = BTreeSet::new();
        if let Some(dup) = file
            .candidates
            .iter()
            .find(|name| !seen.insert(name.as_str()))
        {
            return Err(CliError::Validation(format!(
                "duplicate candidate name {dup:?}"
            )));
        }
        let election = Election::new(file.candidates.len(), file.ballots)?;
        Ok(Instance {
            names: file.candidates,
            election,
            k: file.k,
        })
    }

    fn committee_size(&self, flag: Option<usize>) -> Result<usize, CliError> {
        let k = flag.or(self.k).ok_or_else(|| {
            CliError::Validation("committee size missing: pass --k or set k in the file".into())
        })?;
        let m = self.election.candidate_count();
        if k == 0 || k > m {
            return Err(Error::CommitteeSizeOutOfRange {
                k,
                candidate_count: m,
            }
            .into());
        }
        Ok(k)
    }

    fn name(&self, candidate: CandidateId) -> String {
        self.names[candidate.index()].clone()
    }

    fn names<'a>(&self, candidates: impl IntoIterator<Item = &'a CandidateId>) -> Vec<String> {
        candidates.into_iter().map(|&c| self.name(c)).collect()
    }

    fn resolve(&self, list: &str) -> Result<Vec<CandidateId>, CliError> {
        let index: BTreeMap<&str, usize> = self
            .names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let requested: Vec<&str> = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let unknown: Vec<&str> = requested
            .iter()
            .copied()
            .filter(|name| !index.contains_key(name))
            .collect();
        if !unknown.is_empty() {
            return Err(CliError::Validation(format!(
                "unknown candidate names: {}",
                unknown.join(", ")
            )));
        }
        if requested.is_empty() {
            return Err(Error::EmptySubset.into());
        }
        Ok(requested
            .iter()
            .map(|name| CandidateId(index[name]))
            .collect())
    }
}

#[derive(Serialize)]
struct WinnersReport {
    k: usize,
    winners: Vec<String>,
    winner_indices: Vec<usize>,
    round_values: Vec<String>,
    round_ties: Vec<Vec<String>>,
    flow_solves: usize,
}

#[derive(Serialize)]
struct MaximinReport {
    subset: Vec<String>,
    value: String,
    survivors: Vec<String>,
    surviving_voters: Vec<usize>,
    iterations: usize,
}

#[derive(Serialize)]
struct OracleMismatch {
    subset: Vec<String>,
    flow_value: String,
    oracle_value: String,
    kernel: Vec<String>,
    survivors: Vec<String>,
}

#[derive(Serialize)]
struct OracleReport {
    mode: &'static str,
    status: &'static str,
    k: usize,
    winners: Vec<String>,
    checks: usize,
    mismatches: Vec<OracleMismatch>,
}

#[derive(Serialize)]
struct PjrWitness {
    ell: usize,
    group: Vec<usize>,
}

#[derive(Serialize)]
struct PjrCheckReport {
    mode: &'static str,
    status: &'static str,
    k: usize,
    winners: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<PjrWitness>,
}

#[derive(Serialize)]
struct DhondtReport {
    mode: &'static str,
    status: &'static str,
    k: usize,
    parties: Vec<Vec<String>>,
    party_sizes: Vec<usize>,
    mms_seats: Vec<usize>,
    dhondt_seats: Vec<usize>,
    tie_free: bool,
}

#[derive(Serialize)]
struct FuzzReport {
    mode: &'static str,
    status: &'static str,
    seed: u64,
    cases: usize,
    checks: usize,
    skipped: usize,
    failures: Vec<String>,
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn render<T: Serialize>(report: &T) -> String {
    toml::to_string(report).expect("reports serialize to TOML")
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_PARSE
            } else {
                EXIT_OK
            };
            let text = err.render().to_string();
            let _ = if err.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
        .expect("thread pool");
    match pool.install(|| execute(cli.command)) {
        Ok((text, passed)) => {
            let _ = stdout.write_all(text.as_bytes());
            if passed {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            }
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {}", err.message());
            err.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<(String, bool), CliError> {
    match command {
        Command::Winners { file, k } => {
            let instance = Instance::load(&file)?;
            let k = instance.committee_size(k)?;
            let trace = mms_winners(&instance.election, k)?;
            Ok((render(&winners_report(&instance, k, &trace)), true))
        }
        Command::Maximin { file, subset } => {
            let instance = Instance::load(&file)?;
            let subset = instance.resolve(&subset)?;
            let outcome = maximin_support(&instance.election, subset.iter().copied())?;
            let requested: CandidateSet = subset.into_iter().collect();
            let report = MaximinReport {
                subset: instance.names(&requested),
                value: outcome.value.to_string(),
                survivors: instance.names(&outcome.surviving_candidates),
                surviving_voters: outcome.surviving_voters.iter().map(|v| v.index()).collect(),
                iterations: outcome.iterations,
            };
            Ok((render(&report), true))
        }
        Command::Verify { file, k, mode } => {
            let instance = Instance::load(&file)?;
            let k = instance.committee_size(k)?;
            match mode {
                Mode::Oracle => verify_oracle(&instance, k),
                Mode::Pjr => verify_pjr(&instance, k),
                Mode::Dhondt => verify_dhondt(&instance, k),
            }
        }
        Command::Fuzz { mode, seed, cases } => {
            let report = fuzz(mode, seed, cases)?;
            let passed = report.failures.is_empty();
            Ok((render(&report), passed))
        }
    }
}

fn winners_report(instance: &Instance, k: usize, trace: &CommitteeTrace) -> WinnersReport {
    WinnersReport {
        k,
        winners: instance.names(&trace.winners),
        winner_indices: trace.winners.iter().map(|c| c.index()).collect(),
        round_values: trace.round_values.iter().map(ToString::to_string).collect(),
        round_ties: trace.round_ties.iter().map(|t| instance.names(t)).collect(),
        flow_solves: trace.flow_solves,
    }
}

fn verify_oracle(instance: &Instance, k: usize) -> Result<(String, bool), CliError> {
    if k > ORACLE_SUBSET_LIMIT {
        return Err(CliError::Bound(format!(
            "oracle mode is limited to committees of {ORACLE_SUBSET_LIMIT} candidates, requested k = {k}"
        )));
    }
    let election = &instance.election;
    let trace = mms_winners(election, k)?;
    let mut checks = 0;
    let mut mismatches = Vec::new();
    let mut committee = CandidateSet::new();
    for &winner in &trace.winners {
        for candidate in round_scores(election, &committee)?.into_keys() {
            let subset: CandidateSet = committee.iter().copied().chain([candidate]).collect();
            let flow = maximin_support(election, subset.iter().copied())?;
            let oracle = maximin_oracle(election, subset.iter().copied())?;
            checks += 1;
            if flow.value != oracle.value || !oracle.subset.is_subset(&flow.surviving_candidates) {
                mismatches.push(OracleMismatch {
                    subset: instance.names(&subset),
                    flow_value: flow.value.to_string(),
                    oracle_value: oracle.value.to_string(),
                    kernel: instance.names(&oracle.subset),
                    survivors: instance.names(&flow.surviving_candidates),
                });
            }
        }
        committee.insert(winner);
    }
    let passed = mismatches.is_empty();
    let report = OracleReport {
        mode: Mode::Oracle.name(),
        status: status(passed),
        k,
        winners: instance.names(&trace.winners),
        checks,
        mismatches,
    };
    Ok((render(&report), passed))
}

fn verify_pjr(instance: &Instance, k: usize) -> Result<(String, bool), CliError> {
    let voters = instance.election.voter_count();
    if voters > PJR_VOTER_LIMIT {
        return Err(CliError::Bound(format!(
            "pjr mode is limited to {PJR_VOTER_LIMIT} voters, file has {voters}"
        )));
    }
    let trace = mms_winners(&instance.election, k)?;
    let report = check_pjr(&instance.election, &trace.committee(), k)?;
    let witness = match report {
        PjrReport::Satisfied => None,
        PjrReport::Violated { ell, group } => Some(PjrWitness {
            ell,
            group: group.iter().map(|v| v.index()).collect(),
        }),
    };
    let passed = witness.is_none();
    let report = PjrCheckReport {
        mode: Mode::Pjr.name(),
        status: status(passed),
        k,
        winners: instance.names(&trace.winners),
        witness,
    };
    Ok((render(&report), passed))
}

fn verify_dhondt(instance: &Instance, k: usize) -> Result<(String, bool), CliError> {
    let (lists, sizes) = party_lists(&instance.election).ok_or_else(|| {
        CliError::Validation(
            "dhondt mode needs a party-list file: nonempty ballots, each identical or disjoint"
                .into(),
        )
    })?;
    let comparison = compare_lists(&instance.election, &lists, &sizes, k)?;
    let passed = comparison.agrees();
    let report = DhondtReport {
        mode: Mode::Dhondt.name(),
        status: status(passed),
        k,
        parties: lists.iter().map(|l| instance.names(l)).collect(),
        party_sizes: sizes,
        mms_seats: comparison.mms_seats,
        dhondt_seats: comparison.dhondt_seats,
        tie_free: comparison.tie_free,
    };
    Ok((render(&report), passed))
}

fn fuzz(mode: Mode, seed: u64, cases: usize) -> Result<FuzzReport, CliError> {
    use rand::Rng;
    use verification::sampling::{all_subsets, random_election, random_party_list};

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    let mut skipped = 0;
    let mut failures = Vec::new();
    for case in 0..cases {
        match mode {
            Mode::Oracle => {
                let n = rng.gen_range(1..=8);
                let m = rng.gen_range(1..=6);
                let election = random_election(&mut rng, n, m);
                for subset in all_subsets(m) {
                    let flow = maximin_support(&election, subset.iter().copied())?;
                    let oracle = maximin_oracle(&election, subset.iter().copied())?;
                    checks += 1;
                    if flow.value != oracle.value {
                        failures.push(format!(
                            "case {case}: {election:?} subset {subset:?}: flow {} oracle {}",
                            flow.value, oracle.value
                        ));
                    }
                }
            }
            Mode::Pjr => {
                let n = rng.gen_range(1..=10);
                let m = rng.gen_range(1..=8);
                let k = rng.gen_range(1..=m.min(5));
                let election = random_election(&mut rng, n, m);
                let trace = mms_winners(&election, k)?;
                checks += 1;
                if let PjrReport::Violated { ell, group } =
                    check_pjr(&election, &trace.committee(), k)?
                {
                    failures.push(format!(
                        "case {case}: {election:?} k {k}: group {group:?} underrepresented at ell {ell}"
                    ));
                }
            }
            Mode::Dhondt => {
                let profile = random_party_list(&mut rng, 5, 9);
                let k = rng.gen_range(1..=8);
                let comparison = verification::compare_party_list(&profile, k)?;
                if !comparison.tie_free {
                    skipped += 1;
                    continue;
                }
                checks += 1;
                if !comparison.agrees() {
                    failures.push(format!(
                        "case {case}: parties {:?} k {k}: mms {:?} dhondt {:?}",
                        profile.party_sizes(),
                        comparison.mms_seats,
                        comparison.dhondt_seats
                    ));
                }
            }
        }
    }
    Ok(FuzzReport {
        mode: mode.name(),
        status: status(failures.is_empty()),
        seed,
        cases,
        checks,
        skipped,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path.to_str().unwrap().to_owned()
    }

    #[test]
    fn unknown_subset_names_are_listed() {
        let dir = tempfile::tempdir().unwrap();
        let file = write(
            &dir,
            "e.toml",
            "candidates = [\"a\", \"b\"]\nballots = [[0]]\n",
        );
        let (code, _, err) = run_capture(&["mms", "maximin", &file, "--subset", "a,x,y"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("x, y"), "{err}");
    }

    #[test]
    fn duplicate_names_are_invalid() {
        let dir = tempfile::tempdir().unwrap();
        let file = write(
            &dir,
            "e.toml",
            "candidates = [\"a\", \"a\"]\nballots = []\nk = 1\n",
        );
        let (code, _, err) = run_capture(&["mms", "winners", &file]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("duplicate"), "{err}");
    }

    #[test]
    fn missing_k() {
        let dir = tempfile::tempdir().unwrap();
        let file = write(&dir, "e.toml", "candidates = [\"a\"]\nballots = [[0]]\n");
        assert_eq!(run_capture(&["mms", "winners", &file]).0, EXIT_VALIDATION);
        assert_eq!(
            run_capture(&["mms", "winners", &file, "--k", "2"]).0,
            EXIT_VALIDATION
        );
        assert_eq!(
            run_capture(&["mms", "winners", &file, "--k", "1"]).0,
            EXIT_OK
        );
    }

    #[test]
    fn parse_errors_point_at_the_field() {
        let dir = tempfile::tempdir().unwrap();
        let file = write(
            &dir,
            "e.toml",
            "candidates = [\"a\"]\nballots = [[0, \"b\"]]\n",
        );
        let (code, _, err) = run_capture(&["mms", "winners", &file, "--k", "1"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("line 2"), "{err}");
        let file = write(
            &dir,
            "f.toml",
            "candidates = [\"a\"]\nballots = [[0]]\nextra = 1\n",
        );
        assert_eq!(
            run_capture(&["mms", "winners", &file, "--k", "1"]).0,
            EXIT_PARSE
        );
        assert_eq!(
            run_capture(&["mms", "winners", "/nonexistent/e.toml"]).0,
            EXIT_PARSE
        );
        assert_eq!(run_capture(&["mms", "frobnicate"]).0, EXIT_PARSE);
    }

    #[test]
    fn dhondt_mode_needs_party_lists() {
        let dir = tempfile::tempdir().unwrap();
        let file = write(
            &dir,
            "e.toml",
            "candidates = [\"a\", \"b\"]\nballots = [[0, 1], [1]]\nk = 1\n",
        );
        assert_eq!(
            run_capture(&["mms", "verify", &file, "--mode", "dhondt"]).0,
            EXIT_VALIDATION
        );
    }

    #[test]
    fn fuzz_drivers_pass() {
        for mode in ["oracle", "pjr", "dhondt"] {
            let (code, out, _) = run_capture(&[
                "mms", "fuzz", "--mode", mode, "--seed", "7", "--cases", "10",
            ]);
            assert_eq!(code, EXIT_OK, "{out}");
            assert!(out.contains("status = \"pass\""));
        }
    }
}
