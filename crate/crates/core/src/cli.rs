//! Command-line front end. Every subcommand prints a table or, with
//! `--json`, one JSON document. Exit codes: 0 success, 1 domain error,
//! 2 verification failure.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::ext_nat::ExtNat;
use crate::formulas::{
    alternate_threshold, degree_set, delta_cyclic, delta_sup, main_formula_instantiation, p_group_parameters,
    predicted_nu, weisman_check, weisman_m, weisman_m_mod, weisman_threshold, wilson_check, DegreeSet, DeltaCase,
    DeltaResult, WeismanCheck,
};
use crate::funcmap::{fdeg, fdeg_bruteforce, FuncTable, ScanOutcome, DEFAULT_BRUTE_BUDGET};
use crate::group_ring::{nilpotency_index, GroupRingError};
use crate::groups::{parse_group_spec, GroupDescriptor, StructureStats};
use crate::verify::{run_suite, Budget, SuiteId, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fdeg", version, about = "Functional degrees, degree sets and group-ring nilpotency")]
pub struct Cli {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the verification corpus.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock limit for verification, in milliseconds.
    #[arg(long, global = true)]
    pub budget_ms: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a group spec and print its invariants.
    Parse {
        #[arg(long)]
        group: String,
    },
    /// δ(A,B), the supremum of all functional degrees of maps A → B.
    Delta {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        codomain: String,
    },
    /// D(A,B), the set of functional degrees of maps A → B.
    DegreeSet {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        codomain: String,
    },
    /// Functional degree of a map given as a JSON map file.
    Fdeg {
        #[arg(long)]
        map: PathBuf,
        /// Also run the all-tuples oracle up to this cap.
        #[arg(long)]
        oracle_cap: Option<u64>,
    },
    /// ν(Z_m[A]), the nilpotency index of the augmentation ideal.
    Nilpotency {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1024)]
        cap: u64,
    },
    /// Alternating binomial sums M_{p^α}(j,n) and their threshold.
    Weisman {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: u32,
        #[arg(long, allow_hyphen_values = true)]
        j: Option<i64>,
        #[arg(long)]
        n: Option<u64>,
    },
    /// The group-ring congruence (t-1)^{T-1} = (-p)^{β-1} Σ t^i.
    Wilson {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: u32,
    },
    /// Run property suites against brute-force oracles.
    Verify {
        /// Suite id, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_group_order: Option<u64>,
        #[arg(long)]
        max_beta: Option<u32>,
        #[arg(long)]
        corpus_size: Option<usize>,
    },
}

/// `delta --json` output. The `DeltaResult` fields sit at top level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaOutput {
    pub domain: String,
    pub codomain: String,
    #[serde(flatten)]
    pub result: DeltaResult,
    pub formula: Option<String>,
    pub note: Option<String>,
}

/// `degree-set --json` output. The `DegreeSet` fields sit at top level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSetOutput {
    pub domain: String,
    pub codomain: String,
    #[serde(flatten)]
    pub set: DegreeSet,
    pub normal_form: String,
    pub members: Option<Vec<ExtNat>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseOutput {
    pub group: String,
    #[serde(flatten)]
    pub stats: StructureStats,
    pub order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdegOutput {
    pub domain: String,
    pub codomain: String,
    pub fdeg: ExtNat,
    pub oracle: Option<ScanOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyOutput {
    pub modulus: u64,
    pub group: String,
    pub nu: ExtNat,
    pub predicted: ExtNat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeismanValue {
    pub k: u64,
    pub j: i64,
    pub n: u64,
    pub exact: String,
    pub residue: u64,
    pub modulus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeismanOutput {
    pub p: u64,
    pub alpha: u32,
    pub beta: u32,
    pub threshold: u64,
    pub alternate_threshold: u64,
    pub delta_cyclic: u64,
    pub value: Option<WeismanValue>,
    pub checks: Vec<WeismanCheck>,
}

/// Outcome of one subcommand before rendering.
enum Failure {
    Domain(String),
    Verify(String),
}

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command,
/// writing all output to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
        }
    };
    let json = cli.json;
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            report_error(out, json, "domain", &msg);
            EXIT_DOMAIN
        }
        Err(Failure::Verify(msg)) => {
            report_error(out, json, "verification", &msg);
            EXIT_VERIFY
        }
    }
}

fn report_error(out: &mut dyn Write, json: bool, kind: &str, msg: &str) {
    if json {
        let v = serde_json::json!({ "error": kind, "message": msg });
        let _ = writeln!(out, "{v}");
    } else {
        let _ = writeln!(out, "error ({kind}): {msg}");
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Parse { group } => cmd_parse(cli, out, group),
        Command::Delta { domain, codomain } => cmd_delta(cli, out, domain, codomain),
        Command::DegreeSet { domain, codomain } => cmd_degree_set(cli, out, domain, codomain),
        Command::Fdeg { map, oracle_cap } => cmd_fdeg(cli, out, map, *oracle_cap),
        Command::Nilpotency { modulus, group, cap } => cmd_nilpotency(cli, out, *modulus, group, *cap),
        Command::Weisman { p, alpha, beta, j, n } => cmd_weisman(cli, out, *p, *alpha, *beta, *j, *n),
        Command::Wilson { p, alpha, beta } => cmd_wilson(cli, out, *p, *alpha, *beta),
        Command::Verify {
            suite,
            max_group_order,
            max_beta,
            corpus_size,
        } => cmd_verify(cli, out, suite, *max_group_order, *max_beta, *corpus_size),
    }
}

fn cmd_parse(cli: &Cli, out: &mut dyn Write, group: &str) -> CmdResult {
    let d = parse_group_spec(group)?;
    let order = d.to_finite_group().ok().map(|g| g.order());
    let o = ParseOutput {
        group: d.to_string(),
        stats: d.structure_stats(),
        order,
    };
    if cli.json {
        emit(out, &o)?;
    } else {
        let s = &o.stats;
        writeln!(out, "group      {}", o.group)?;
        if let Some(n) = o.order {
            writeln!(out, "order      {n}")?;
        }
        writeln!(out, "exponent   {}", s.exponent)?;
        writeln!(out, "e(A)       {}", s.e_value)?;
        writeln!(out, "rank       {}", s.rank)?;
        writeln!(out, "finite     {}", s.is_finite)?;
        writeln!(out, "torsion    {}", s.is_torsion)?;
        writeln!(out, "trivial    {}", s.is_trivial)?;
        let pg = s.is_p_group.map_or("no".to_string(), |p| p.to_string());
        writeln!(out, "p-group    {pg}")?;
    }
    Ok(EXIT_OK)
}

fn parse_pair(domain: &str, codomain: &str) -> Result<(GroupDescriptor, GroupDescriptor), Failure> {
    Ok((parse_group_spec(domain)?, parse_group_spec(codomain)?))
}

fn cmd_delta(cli: &Cli, out: &mut dyn Write, domain: &str, codomain: &str) -> CmdResult {
    let (a, b) = parse_pair(domain, codomain)?;
    let result = delta_sup(&a, &b)?;
    let formula = match result.case_tag {
        DeltaCase::PGroupFormula => {
            p_group_parameters(&a, &b).map(|(p, alphas, beta)| main_formula_instantiation(p, &alphas, beta))
        }
        _ => None,
    };
    let note = result
        .all_maps_finite_degree
        .then(|| "every map A → B has finite functional degree".to_string());
    let o = DeltaOutput {
        domain: a.to_string(),
        codomain: b.to_string(),
        result,
        formula,
        note,
    };
    if cli.json {
        emit(out, &o)?;
    } else {
        writeln!(out, "δ({}, {}) = {}", o.domain, o.codomain, o.result.value)?;
        writeln!(out, "case       {}", o.result.case_tag)?;
        if let Some(f) = &o.formula {
            writeln!(out, "formula    {f}")?;
        }
        if let Some(n) = &o.note {
            writeln!(out, "note       {n}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_degree_set(cli: &Cli, out: &mut dyn Write, domain: &str, codomain: &str) -> CmdResult {
    let (a, b) = parse_pair(domain, codomain)?;
    let set = degree_set(&a, &b)?;
    let o = DegreeSetOutput {
        domain: a.to_string(),
        codomain: b.to_string(),
        set,
        normal_form: set.to_string(),
        members: set.members(),
    };
    if cli.json {
        emit(out, &o)?;
    } else {
        writeln!(out, "D({}, {}) = {}", o.domain, o.codomain, o.normal_form)?;
        if let Some(m) = set.members_string() {
            writeln!(out, "members    {m}")?;
        }
        writeln!(out, "δ°         {}", set.finite_sup)?;
        writeln!(out, "has inf    {}", set.contains_inf)?;
    }
    Ok(EXIT_OK)
}

fn cmd_fdeg(cli: &Cli, out: &mut dyn Write, path: &PathBuf, oracle_cap: Option<u64>) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    let f = FuncTable::from_json(&text)?;
    let d = fdeg(&f);
    let oracle = oracle_cap
        .map(|cap| fdeg_bruteforce(&f, cap, DEFAULT_BRUTE_BUDGET))
        .transpose()?;
    let o = FdegOutput {
        domain: f.domain().to_string(),
        codomain: f.codomain().to_string(),
        fdeg: d,
        oracle,
    };
    if cli.json {
        emit(out, &o)?;
    } else {
        writeln!(out, "fdeg       {d}")?;
        match oracle {
            Some(ScanOutcome::Degree(x)) => writeln!(out, "oracle     {x}")?,
            Some(ScanOutcome::Exceeded(cap)) => writeln!(out, "oracle     > {cap}")?,
            None => {}
        }
    }
    let agrees = match (oracle, d) {
        (None, _) => true,
        (Some(ScanOutcome::Degree(x)), d) => x == d,
        (Some(ScanOutcome::Exceeded(cap)), d) => d > ExtNat::Finite(cap),
    };
    if agrees {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Verify(format!("fdeg {d} disagrees with the oracle {oracle:?}")))
    }
}

fn cmd_nilpotency(cli: &Cli, out: &mut dyn Write, modulus: u64, group: &str, cap: u64) -> CmdResult {
    let d = parse_group_spec(group)?;
    let g = d.to_finite_group()?;
    let nu = match nilpotency_index(modulus, &g, cap) {
        Ok(nu) => nu,
        Err(GroupRingError::CapExceeded(c)) => return Err(Failure::Verify(format!("scan passed the cap {c}"))),
        Err(e) => return Err(e.into()),
    };
    let predicted = predicted_nu(modulus, &d)?;
    let o = NilpotencyOutput {
        modulus,
        group: g.to_string(),
        nu,
        predicted,
    };
    if cli.json {
        emit(out, &o)?;
    } else {
        writeln!(out, "ν(Z{}[{}]) = {}", modulus, o.group, nu)?;
        writeln!(out, "predicted  {predicted}")?;
    }
    if nu == predicted {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Verify(format!("scan gives {nu}, formula predicts {predicted}")))
    }
}

fn check_prime_power_args(p: u64, alpha: u32, beta: u32) -> Result<(), Failure> {
    if !crate::groups::arith::is_prime(p) || alpha == 0 || beta == 0 {
        return Err(Failure::Domain(format!("need p prime and α, β ≥ 1 (got p={p}, α={alpha}, β={beta})")));
    }
    let fits = |e: u32| p.checked_pow(e).is_some_and(|q| q <= 1 << 40);
    if !fits(alpha) || !fits(beta) {
        return Err(Failure::Domain("p^α and p^β must be at most 2^40".into()));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_weisman(cli: &Cli, out: &mut dyn Write, p: u64, alpha: u32, beta: u32, j: Option<i64>, n: Option<u64>) -> CmdResult {
    check_prime_power_args(p, alpha, beta)?;
    let k = p.pow(alpha);
    let m = p.pow(beta);
    let threshold = weisman_threshold(p, alpha, beta);
    if threshold > 1 << 16 {
        return Err(Failure::Domain(format!("threshold {threshold} is above 65536")));
    }
    let value = match (j, n) {
        (Some(j), Some(n)) => {
            let exact = weisman_m(k, j, n);
            Some(WeismanValue {
                k,
                j,
                n,
                residue: weisman_m_mod(k, j, n, m),
                exact: exact.to_string(),
                modulus: m,
            })
        }
        (None, None) => None,
        _ => return Err(Failure::Domain("--j and --n go together".into())),
    };
    let checks: Vec<WeismanCheck> = match (value.as_ref(), j) {
        (Some(_), _) => vec![],
        (None, Some(j)) => vec![weisman_check(p, alpha, beta, j, 4)],
        (None, None) => (0..k as i64).map(|j| weisman_check(p, alpha, beta, j, 4)).collect(),
    };
    let o = WeismanOutput {
        p,
        alpha,
        beta,
        threshold,
        alternate_threshold: alternate_threshold(p, alpha, beta),
        delta_cyclic: delta_cyclic(p, alpha, beta),
        value,
        checks,
    };
    if cli.json {
        emit(out, &o)?;
    } else {
        writeln!(out, "threshold  {threshold}   (β·p^α reading: {})", o.alternate_threshold)?;
        writeln!(out, "δ(Z{k}, Z{m}) = {}", o.delta_cyclic)?;
        if let Some(v) = &o.value {
            writeln!(out, "M_{k}({}, {}) = {}  ≡ {} mod {m}", v.j, v.n, v.exact, v.residue)?;
        }
        if !o.checks.is_empty() {
            writeln!(out, "{:>4}  {:>8}  {:>8}  {}", "j", "M(T-1)", "expected", "nonzero at n ≥ T")?;
            for c in &o.checks {
                writeln!(out, "{:>4}  {:>8}  {:>8}  {:?}", c.j, c.value_below, c.expected_below, c.nonzero_at)?;
            }
        }
    }
    let bad = o.checks.iter().filter(|c| !c.holds()).count();
    if bad == 0 {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Verify(format!("{bad} residue classes violate the congruences")))
    }
}

fn cmd_wilson(cli: &Cli, out: &mut dyn Write, p: u64, alpha: u32, beta: u32) -> CmdResult {
    check_prime_power_args(p, alpha, beta)?;
    let w = wilson_check(p, alpha, beta)?;
    if cli.json {
        emit(out, &w)?;
    } else {
        let m = BigInt::from(p.pow(beta));
        let c = BigInt::from(-(p as i64)).pow(beta - 1).mod_floor(&m);
        writeln!(out, "ring       Z{}[Z{}]", p.pow(beta), p.pow(alpha))?;
        writeln!(out, "lhs        (t-1)^{} = {}", w.exponent, w.lhs)?;
        writeln!(out, "rhs        {c}·Σ t^i = {}", w.rhs)?;
        writeln!(out, "equal      {}", w.equal)?;
        writeln!(out, "(t-1)^{} = 0   {}", w.exponent + 1, w.annihilated)?;
    }
    if w.equal && w.annihilated {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Verify("congruence fails".into()))
    }
}

fn cmd_verify(
    cli: &Cli,
    out: &mut dyn Write,
    suite: &str,
    max_group_order: Option<u64>,
    max_beta: Option<u32>,
    corpus_size: Option<usize>,
) -> CmdResult {
    let ids: Vec<SuiteId> = if suite == "all" {
        SuiteId::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for id in ids {
        let base = Budget::for_suite(id);
        let budget = Budget {
            max_group_order: max_group_order.unwrap_or(base.max_group_order),
            max_beta: max_beta.unwrap_or(base.max_beta),
            corpus_size: corpus_size.unwrap_or(base.corpus_size),
            seed: cli.seed,
            time_limit_ms: cli.budget_ms,
        };
        reports.push(run_suite(id, &budget)?);
    }
    if cli.json {
        if reports.len() == 1 {
            emit(out, &reports[0])?;
        } else {
            emit(out, &reports)?;
        }
    } else {
        for r in &reports {
            let status = if r.passed() { "pass" } else { "FAIL" };
            writeln!(
                out,
                "{status}  {:<16} cases {:>6}  failures {:>4}  {:>7} ms",
                r.suite.name(),
                r.cases_run,
                r.failures.len(),
                r.wall_time_ms
            )?;
            for f in &r.failures {
                writeln!(out, "      {} | expected {} | actual {} | {}", f.inputs, f.expected, f.actual, f.citation)?;
            }
        }
    }
    if reports.iter().all(SuiteReport::passed) {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_VERIFY)
    }
}
