//! Command implementations. Each returns a [`Status`] or a [`CliError`];
//! output goes to the writer handed in (or to `--out`).

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Duration;

use lintersect::bounds::{applicable_bounds, BoundQuery, BoundReport, TheoremId, Universe};
use lintersect::exactnum::{binom, Natural, Rational};
use lintersect::polymethod::certify_cross_intersecting;
use lintersect::qspace::{
    enumerate_subspaces, find_l_violation_subspaces,
    find_sperner_violation_subspaces, lym_sum, q_sperner_check, SpaceError, SubspaceFamily,
};
use lintersect::search::{
    solve, verify_bounds, Candidates, SearchProblem, SearchResult, Witness,
};
use lintersect::setfamily::{
    find_l_violation, find_size_violation, find_sperner_violation, find_t_wise_violation,
    for_each_k_subset, IntersectionSpec, LSet, Mode, SizeRule, SubsetFamily,
};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::args::*;
use crate::record::{witness_from_json, witness_json, BoundRecord, ProblemRecord, SearchRecord};

/// Process outcome, mapped one-to-one onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    HypothesisFailure,
    BudgetExhausted,
    BoundViolation,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::HypothesisFailure => 2,
            Status::BudgetExhausted => 3,
            Status::BoundViolation => 4,
        }
    }
}

/// Usage and input errors; all exit with code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        1
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Status, CliError> {
    match cli.command {
        Command::Bounds(a) => cmd_bounds(&a, stdout),
        Command::Check(a) => cmd_check(&a, stdout),
        Command::Certify(a) => cmd_certify(&a, stdout, stderr),
        Command::Enumerate(a) => cmd_enumerate(&a, stdout),
        Command::Lym(a) => cmd_lym(&a, stdout),
        Command::Search(a) => cmd_search(&a, stdout),
        Command::Scan(a) => cmd_scan(&a, stdout),
    }
}

/// Sends output to `--out` when given, else to `stdout`.
fn emit(out: &OutputArgs, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn parse_list(s: &str) -> Result<Vec<u32>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(usage("empty list"));
    }
    s.split(',')
        .map(|v| v.trim().parse::<u32>().map_err(|_| usage(format!("`{v}` is not a natural number"))))
        .collect()
}

/// `a..b` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<Vec<u32>, CliError> {
    let num = |v: &str| v.trim().parse::<u32>().map_err(|_| usage(format!("bad range `{s}`")));
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?..=num(b)?).collect()),
        None => Ok(vec![num(s)?]),
    }
}

fn lset_from(l: &Option<String>, s: Option<u32>) -> Result<Option<LSet>, CliError> {
    let bad = |e: lintersect::setfamily::SpecError| usage(e.to_string());
    match (l, s) {
        (Some(_), Some(_)) => Err(usage("give either --L or --s, not both")),
        (Some(l), None) => LSet::new(parse_list(l)?).map(Some).map_err(bad),
        (None, Some(s)) => LSet::prefix(s).map(Some).map_err(bad),
        (None, None) => Ok(None),
    }
}

fn spec_from(a: &SpecArgs) -> Result<IntersectionSpec, CliError> {
    let l = lset_from(&a.l, a.s)?.ok_or_else(|| usage("missing --L (or --s)"))?;
    spec_with(l, a)
}

fn spec_with(l: LSet, a: &SpecArgs) -> Result<IntersectionSpec, CliError> {
    let k = a.k.as_deref().map(parse_list).transpose()?;
    let rule = match &a.size_rule {
        Some(r) => r.parse::<SizeRule>().map_err(usage)?,
        None if k.is_some() => SizeRule::InK,
        None => SizeRule::None,
    };
    let mode = if a.t == 2 { Mode::Pairwise } else { Mode::TWise };
    IntersectionSpec::new(l, k, a.t, mode, rule).map_err(|e| usage(e.to_string()))
}

fn universe_from(u: &UniverseArgs) -> Result<Universe, CliError> {
    let n = u.n.ok_or_else(|| usage("missing --n"))?;
    Ok(match u.universe {
        UniverseKind::Sets => Universe::Sets { n },
        UniverseKind::Subspaces => Universe::Subspaces { n, q: u.q },
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input { path: path.display().to_string(), message: e.to_string() })
}

fn input_error(path: &Path, message: impl ToString) -> CliError {
    CliError::Input { path: path.display().to_string(), message: message.to_string() }
}

/// A parsed input file.
enum Input {
    Sets(SubsetFamily),
    Subspaces(SubspaceFamily),
    Record(Box<SearchRecord>),
}

fn load(path: &Path) -> Result<Input, CliError> {
    let text = read(path)?;
    let head = text.trim_start();
    if head.starts_with('{') {
        serde_json::from_str(head).map(|r| Input::Record(Box::new(r))).map_err(|e| input_error(path, e))
    } else if head.starts_with("subspace-family") {
        text.parse().map(Input::Subspaces).map_err(|e| input_error(path, e))
    } else {
        text.parse().map(Input::Sets).map_err(|e| input_error(path, e))
    }
}

fn load_sets(path: &Path) -> Result<SubsetFamily, CliError> {
    match load(path)? {
        Input::Sets(f) => Ok(f),
        _ => Err(input_error(path, "expected a set-family file")),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn bounds_table(reports: &[BoundReport], format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<BoundRecord> = reports.iter().map(BoundRecord::from).collect();
            serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("theorem,value,applies,strict\n");
            for b in reports {
                out += &format!("{},{},{},{}\n", b.theorem.id(), b.value, b.hypotheses_met, b.strict());
            }
            out
        }
        Format::Text => {
            let mut out = format!("{:<24} {:>14}  {:<7} {:<6} notes\n", "theorem", "value", "applies", "strict");
            for b in reports {
                out += &format!(
                    "{:<24} {:>14}  {:<7} {:<6} {}\n",
                    b.theorem.id(),
                    b.value.to_string(),
                    yes_no(b.hypotheses_met),
                    yes_no(b.strict()),
                    b.notes.join("; ")
                );
            }
            out
        }
    }
}

pub fn cmd_bounds(a: &BoundsArgs, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let universe = universe_from(&a.universe)?;
    let spec = spec_from(&a.spec)?;
    let query = BoundQuery::new(universe, spec, a.spec.sperner);
    let reports = applicable_bounds(&query).map_err(|e| usage(e.to_string()))?;
    emit(&a.output, stdout, &bounds_table(&reports, a.output.format.unwrap_or(Format::Text)))?;
    Ok(Status::Ok)
}

/// One named hypothesis check.
struct Check {
    name: String,
    pass: bool,
    /// 1-based member numbers exhibiting a failure.
    witness: Vec<usize>,
    detail: String,
}

impl Check {
    fn new(name: &str, failure: Option<(Vec<usize>, String)>) -> Self {
        let (witness, detail) = failure.map_or((Vec::new(), String::new()), |(w, d)| (w.iter().map(|i| i + 1).collect(), d));
        Check { name: name.into(), pass: witness.is_empty() && detail.is_empty(), witness, detail }
    }
}

fn set_checks(f: &SubsetFamily, l: Option<&LSet>, spec: Option<&IntersectionSpec>, t: usize, sperner: bool) -> Vec<Check> {
    let mut checks = Vec::new();
    let m = f.members();
    if let Some(l) = l {
        if t == 2 {
            checks.push(Check::new(
                "L-intersecting",
                find_l_violation(f, l).map(|(i, j)| {
                    (vec![i, j], format!("|{:?} ∩ {:?}| = {} is not in L = {l}", m[i], m[j], m[i].intersection(m[j]).len()))
                }),
            ));
        } else {
            checks.push(Check::new(
                &format!("{t}-wise L-intersecting"),
                find_t_wise_violation(f, l, t).map(|idx| {
                    let meet = idx.iter().fold(lintersect::setfamily::Subset::full(f.ground()), |acc, &i| acc.intersection(m[i]));
                    (idx, format!("common intersection has size {}, not in L = {l}", meet.len()))
                }),
            ));
        }
    }
    if let Some(spec) = spec.filter(|s| s.size_rule() != SizeRule::None) {
        checks.push(Check::new(
            &format!("size rule {}", spec.size_rule()),
            find_size_violation(f, spec).map(|i| (vec![i], format!("{:?} has size {}", m[i], m[i].len()))),
        ));
    }
    if sperner {
        checks.push(Check::new(
            "Sperner",
            find_sperner_violation(f).map(|(i, j)| (vec![i, j], format!("{:?} ⊆ {:?}", m[i], m[j]))),
        ));
    }
    checks
}

fn subspace_checks(f: &SubspaceFamily, l: Option<&LSet>, spec: Option<&IntersectionSpec>, t: usize, sperner: bool) -> Vec<Check> {
    let mut checks = Vec::new();
    let m = f.members();
    if let Some(l) = l {
        if t != 2 {
            checks.push(Check::new("t-wise", Some((Vec::new(), "t-wise checks need a set family".into()))));
        } else {
            checks.push(Check::new(
                "L-intersecting",
                find_l_violation_subspaces(f, l).map(|(i, j)| (vec![i, j], format!("members meet in a subspace of dimension outside L = {l}"))),
            ));
        }
    }
    if let Some(spec) = spec.filter(|s| s.size_rule() != SizeRule::None) {
        let bad = m.iter().position(|s| !spec.admits_size(s.dim()));
        checks.push(Check::new(
            &format!("size rule {}", spec.size_rule()),
            bad.map(|i| (vec![i], format!("{:?} has dimension {}", m[i], m[i].dim()))),
        ));
    }
    if sperner {
        checks.push(Check::new(
            "Sperner",
            find_sperner_violation_subspaces(f).map(|(i, j)| (vec![i, j], format!("{:?} ⊆ {:?}", m[i], m[j]))),
        ));
    }
    checks
}

pub fn cmd_check(a: &CheckArgs, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let cli_l = lset_from(&a.spec.l, a.spec.s)?;
    let cli_spec = cli_l.clone().map(|l| spec_with(l, &a.spec)).transpose()?;
    let (checks, size) = match load(&a.input)? {
        Input::Sets(f) => {
            require_something(&cli_l, &a.spec)?;
            (set_checks(&f, cli_l.as_ref(), cli_spec.as_ref(), a.spec.t, a.spec.sperner), f.len())
        }
        Input::Subspaces(f) => {
            require_something(&cli_l, &a.spec)?;
            (subspace_checks(&f, cli_l.as_ref(), cli_spec.as_ref(), a.spec.t, a.spec.sperner), f.len())
        }
        Input::Record(rec) => {
            let spec = match cli_spec {
                Some(s) => s,
                None => rec.problem.spec().map_err(|e| input_error(&a.input, e))?,
            };
            let universe = rec.problem.universe().map_err(|e| input_error(&a.input, e))?;
            let sperner = a.spec.sperner || rec.problem.sperner;
            let witness = witness_from_json(universe, &rec.witness).map_err(|e| input_error(&a.input, e))?;
            let mut checks = match &witness {
                Witness::Sets(f) => set_checks(f, Some(spec.l()), Some(&spec), spec.t(), sperner),
                Witness::Subspaces(f) => subspace_checks(f, Some(spec.l()), Some(&spec), spec.t(), sperner),
            };
            checks.push(Check::new(
                "optimum matches witness",
                (rec.optimum != witness.len()).then(|| (Vec::new(), format!("optimum {} but {} members", rec.optimum, witness.len()))),
            ));
            (checks, witness.len())
        }
    };
    let all = checks.iter().all(|c| c.pass);
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| json!({"check": c.name, "pass": c.pass, "witness": c.witness, "detail": c.detail}))
                .collect();
            serde_json::to_string_pretty(&json!({"members": size, "pass": all, "checks": rows})).expect("json") + "\n"
        }
        _ => {
            let mut out = format!("members: {size}\n");
            for c in &checks {
                if c.pass {
                    out += &format!("pass  {}\n", c.name);
                } else {
                    out += &format!("FAIL  {}: members {:?}: {}\n", c.name, c.witness, c.detail);
                }
            }
            out
        }
    };
    emit(&a.output, stdout, &text)?;
    Ok(if all { Status::Ok } else { Status::HypothesisFailure })
}

fn require_something(l: &Option<LSet>, a: &SpecArgs) -> Result<(), CliError> {
    if l.is_none() && !a.sperner {
        return Err(usage("nothing to check: give --L/--s or --sperner"));
    }
    if l.is_none() && (a.size_rule.is_some() || a.k.is_some()) {
        return Err(usage("size rules need --L (or --s)"));
    }
    Ok(())
}

pub fn cmd_certify(a: &CertifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Status, CliError> {
    let l = lset_from(&a.l, a.s)?.ok_or_else(|| usage("missing --L (or --s)"))?;
    let fa = load_sets(&a.inputs[0])?;
    let fb = match a.inputs.get(1) {
        Some(p) => load_sets(p)?,
        None => fa.clone(),
    };
    match certify_cross_intersecting(&fa, &fb, &l) {
        Ok(cert) => {
            emit(&a.output, stdout, &cert.to_text())?;
            // A failure under valid hypotheses would contradict the lemma.
            Ok(if cert.all_ok() { Status::Ok } else { Status::BoundViolation })
        }
        Err(e) => {
            writeln!(stderr, "hypothesis failure: {e}")?;
            Ok(Status::HypothesisFailure)
        }
    }
}

const MAX_ENUMERATED_SETS: u32 = 20;

pub fn cmd_enumerate(a: &EnumerateArgs, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let witness = match universe_from(&a.universe)? {
        Universe::Sets { n } => {
            if n > MAX_ENUMERATED_SETS {
                return Err(usage(format!("set enumeration is limited to n <= {MAX_ENUMERATED_SETS}")));
            }
            let mut members = Vec::new();
            let dims: Vec<u32> = a.dim.map_or((0..=n).collect(), |d| vec![d]);
            for k in dims.into_iter().filter(|&k| k <= n) {
                for_each_k_subset(n, k, |s| members.push(s));
            }
            Witness::Sets(SubsetFamily::new(n, members).expect("distinct subsets"))
        }
        Universe::Subspaces { n, q } => {
            let fam = enumerate_subspaces(n, q, a.dim).map_err(|e: SpaceError| usage(e.to_string()))?;
            Witness::Subspaces(fam)
        }
    };
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Json => serde_json::to_string(&json!({"count": witness.len(), "members": witness_json(&witness)})).expect("json") + "\n",
        Format::Csv => format!("count\n{}\n", witness.len()),
        Format::Text => witness.to_text(),
    };
    emit(&a.output, stdout, &text)?;
    Ok(Status::Ok)
}

pub fn cmd_lym(a: &LymArgs, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let fam = match load(&a.input)? {
        Input::Subspaces(f) => f,
        _ => return Err(input_error(&a.input, "lym expects a subspace-family file")),
    };
    let lym = match lym_sum(&fam) {
        Ok(v) => v,
        Err(SpaceError::NotSperner(i, j)) => {
            emit(&a.output, stdout, &format!("FAIL  Sperner: member {} is contained in member {}\n", i + 1, j + 1))?;
            return Ok(Status::HypothesisFailure);
        }
        Err(e) => return Err(usage(e.to_string())),
    };
    let report = q_sperner_check(&fam).map_err(|e| usage(e.to_string()))?;
    let lym_ok = lym <= Rational::from_integer(1.into());
    let equality = report.equality_case.map(|e| if e.attains { if e.is_full_level { "full level" } else { "attained by a non-level family" } } else { "not attained" });
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Json => serde_json::to_string_pretty(&json!({
            "members": report.size,
            "lym": lym.to_string(),
            "lym_at_most_one": lym_ok,
            "q_sperner_bound": report.bound.to_string(),
            "within_bound": report.within_bound,
            "equality_case": equality,
        }))
        .expect("json")
            + "\n",
        _ => format!(
            "members: {}\nlym: {}\nlym <= 1: {}\nq-Sperner bound: {}\nwithin bound: {}\nequality case: {}\n",
            report.size,
            lym,
            yes_no(lym_ok),
            report.bound,
            yes_no(report.within_bound),
            equality.unwrap_or("not applicable"),
        ),
    };
    emit(&a.output, stdout, &text)?;
    Ok(if lym_ok && report.holds() { Status::Ok } else { Status::BoundViolation })
}

fn tuned(p: SearchProblem, t: &SearchTuning) -> Result<SearchProblem, CliError> {
    let budget = match t.time_budget {
        Some(s) if !(s.is_finite() && s >= 0.0) => return Err(usage("--time-budget must be a nonnegative number of seconds")),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let mut p = p.with_time_budget(budget).with_threads(t.threads).with_symmetry_breaking(t.symmetry);
    if let Some(cap) = t.candidate_cap {
        p = p.with_candidate_cap(cap);
    }
    Ok(p)
}

fn run_problem(p: &SearchProblem) -> Result<(SearchResult, SearchRecord), CliError> {
    let result = solve(p).map_err(|e| usage(e.to_string()))?;
    let conf = verify_bounds(&result);
    let mut record = SearchRecord::new(p, &result, &conf);
    record.regime = Some(regime(p, &result.bound_reports));
    Ok((result, record))
}

/// Which hypothesis regime an instance sits in: Snevily's conjecture
/// (`max L < min K`), the sizes-outside-`L` setting, or neither, and whether
/// a proven theorem covers it.
pub fn regime(p: &SearchProblem, reports: &[BoundReport]) -> String {
    let met = |id: TheoremId| reports.iter().any(|b| b.theorem == id && b.hypotheses_met);
    let large_n = met(TheoremId::SnevilyLargeN) || met(TheoremId::TWiseLargeN);
    match p.spec.size_rule() {
        SizeRule::Snevily if met(TheoremId::SnevilyPrefix) => "conjecture:proven-prefix".into(),
        SizeRule::Snevily if large_n => "conjecture:proven-large-n".into(),
        SizeRule::Snevily => "conjecture:open".into(),
        _ if p.spec.forces_sizes_outside_l() && large_n => "sizes-outside-L:proven-large-n".into(),
        _ if p.spec.forces_sizes_outside_l() => "sizes-outside-L:below-threshold".into(),
        _ => "unrestricted".into(),
    }
}

fn status_of(r: &SearchResult, rec: &SearchRecord) -> Status {
    if !rec.violations.is_empty() {
        Status::BoundViolation
    } else if !r.completed {
        Status::BudgetExhausted
    } else {
        Status::Ok
    }
}

pub fn cmd_search(a: &SearchArgs, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let universe = universe_from(&a.universe)?;
    let spec = spec_from(&a.spec)?;
    let mut p = tuned(SearchProblem::new(universe, spec).with_sperner(a.spec.sperner), &a.tuning)?;
    if let Some(path) = &a.candidates {
        let cands = match load(path)? {
            Input::Sets(f) => Candidates::Sets(f.members().to_vec()),
            Input::Subspaces(f) => Candidates::Subspaces(f.members().to_vec()),
            Input::Record(_) => return Err(input_error(path, "candidates must be a family file")),
        };
        p = p.restricted_to(cands);
    }
    let (result, record) = run_problem(&p)?;
    let text = match a.output.format.unwrap_or(Format::Json) {
        Format::Text => {
            let mut out = format!(
                "optimum: {}\ncompleted: {}\nnodes: {}\nregime: {}\n",
                result.optimum,
                yes_no(result.completed),
                result.nodes_explored,
                record.regime.as_deref().unwrap_or("-")
            );
            out += &format!("tight: {}\nviolations: {}\n", record.tight.join(" "), record.violations.join(" "));
            out += "witness:\n";
            out += &result.witness.to_text();
            out
        }
        _ => serde_json::to_string_pretty(&record).expect("json") + "\n",
    };
    emit(&a.output, stdout, &text)?;
    Ok(status_of(&result, &record))
}

fn parse_rules(s: &str) -> Result<Vec<SizeRule>, CliError> {
    if s == "all" {
        return Ok(vec![SizeRule::None, SizeRule::NotInL, SizeRule::InK, SizeRule::Snevily]);
    }
    s.split(',').map(|r| r.trim().parse::<SizeRule>().map_err(usage)).collect()
}

/// Every instance of a scan grid, in output order. `in-K` and `snevily`
/// instances use singleton `K = {k}` for each admissible `k`.
pub fn scan_grid(a: &ScanArgs) -> Result<Vec<SearchProblem>, CliError> {
    let ns = parse_range(&a.n)?;
    let ss = parse_range(&a.s)?;
    let ts: Vec<usize> = parse_list(&a.t)?.into_iter().map(|t| t as usize).collect();
    let rules = parse_rules(&a.size_rule)?;
    let l_max = a.l_max.unwrap_or_else(|| ss.iter().copied().max().unwrap_or(0));
    if let Some(&t) = ts.iter().find(|&&t| t < 2) {
        return Err(usage(format!("t = {t} must be at least 2")));
    }
    let mut out = Vec::new();
    for &n in &ns {
        let universe = match a.universe {
            UniverseKind::Sets => Universe::Sets { n },
            UniverseKind::Subspaces => Universe::Subspaces { n, q: a.q },
        };
        for &s in &ss {
            if s == 0 || s > l_max {
                continue;
            }
            let mut ls = Vec::new();
            lintersect_combinations(l_max, s, &mut ls);
            for l in ls {
                let lset = LSet::new(l).expect("increasing");
                for &t in &ts {
                    if a.universe == UniverseKind::Subspaces && t != 2 {
                        continue;
                    }
                    let mode = if t == 2 { Mode::Pairwise } else { Mode::TWise };
                    for &rule in &rules {
                        let ks: Vec<Option<Vec<u32>>> = match rule {
                            SizeRule::None | SizeRule::NotInL => vec![None],
                            SizeRule::InK => (1..=n).map(|k| Some(vec![k])).collect(),
                            SizeRule::Snevily => (lset.max() + 1..=n).map(|k| Some(vec![k])).collect(),
                        };
                        for k in ks {
                            let spec = IntersectionSpec::new(lset.clone(), k, t, mode, rule).map_err(|e| usage(e.to_string()))?;
                            out.push(tuned(SearchProblem::new(universe, spec).with_sperner(a.sperner), &a.tuning)?.with_threads(1));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All `s`-subsets of `{0, ..., m-1}` in lexicographic order.
fn lintersect_combinations(m: u32, s: u32, out: &mut Vec<Vec<u32>>) {
    fn go(start: u32, m: u32, s: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == s {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            cur.push(v);
            go(v + 1, m, s, cur, out);
            cur.pop();
        }
    }
    go(0, m, s, &mut Vec::new(), out);
}

pub fn cmd_scan(a: &ScanArgs, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let grid = scan_grid(a)?;
    let work = |p: &SearchProblem| -> Result<SearchRecord, CliError> {
        let (_, mut rec) = run_problem(p)?;
        // The conjecture's value, reported but never treated as a violation.
        if p.spec.size_rule() == SizeRule::Snevily {
            let n = p.universe.n() as u64;
            let cap: Natural = binom(n, p.spec.l().s() as i64);
            if Natural::from(rec.optimum) > cap {
                rec.regime = rec.regime.map(|r| r + ":exceeds-C(n,s)");
            }
        }
        Ok(rec)
    };
    let records: Vec<SearchRecord> = if a.tuning.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(a.tuning.threads)
            .build()
            .map_err(|e| usage(e.to_string()))?;
        pool.install(|| grid.par_iter().map(work).collect::<Result<_, _>>())?
    } else {
        grid.iter().map(work).collect::<Result<_, _>>()?
    };
    let violated = records.iter().any(|r| !r.violations.is_empty());
    let text = match a.output.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut out = String::from("universe,n,q,L,K,t,size_rule,sperner,optimum,completed,nodes,regime,tight,violations\n");
            for r in &records {
                let p = &r.problem;
                let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                out += &format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    p.universe,
                    p.n,
                    p.q.map_or(String::new(), |q| q.to_string()),
                    list(&p.l),
                    p.k.as_deref().map_or(String::new(), list),
                    p.t,
                    p.size_rule,
                    p.sperner,
                    r.optimum,
                    r.completed,
                    r.nodes,
                    r.regime.as_deref().unwrap_or(""),
                    r.tight.join(" "),
                    r.violations.join(" ")
                );
            }
            out
        }
        _ => records.iter().map(|r| serde_json::to_string(r).expect("json") + "\n").collect(),
    };
    emit(&a.output, stdout, &text)?;
    Ok(if violated { Status::BoundViolation } else { Status::Ok })
}

/// Problem description of a record, for callers that re-run instances.
pub fn problem_of(rec: &ProblemRecord) -> Result<SearchProblem, String> {
    Ok(SearchProblem::new(rec.universe()?, rec.spec()?).with_sperner(rec.sperner))
}
