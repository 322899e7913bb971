//! `vincular`: command-line front end for the vincular library.
//!
//! ```text
//! vincular stats "4 7 1 8 6 3 2 5" --coords 312,231
//! vincular map phi-sz "4 7 1 8 6 3 2 5"
//! vincular pattern count "4321 u12" "5 3 4 2 6 1"
//! vincular history fv-inverse UUBRDBDRUD 0,1,2,1,2,1,1,0,0,1
//! vincular poly qn 4 --vars q,r
//! vincular verify --check thm-1-3 --n-max 9 --jobs 8 --format json
//! ```
//!
//! Pattern syntax: the letters as digits, then optional groups `uXY…`
//! (consecutive pattern positions that must be adjacent in the text) and
//! `oV` (pattern values `V` and `V+1` must be consecutive values in the text;
//! `oVW…` is accepted for a run). `3142 u23` is 3-14-2 with 1 and 4
//! adjacent; `2413 o2` asks for the letters matching 2 and 3 to differ by 1.
//!
//! Histories are written `PATH / WEIGHTS`, e.g. `UUBRDBDRUD / 0,1,2,1,2,1,1,0,0,1`
//! (`R` is the red level step, `B` the blue one), or as two arguments.
//!
//! Exit codes: 0 on success, 1 when a check fails or a validation answers
//! no, 2 on usage and parse errors.

use std::io::{self, BufRead};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vincular::laguerre::{enumerate_histories, fv_forward, fv_inverse, validate_history, xi, RawHistory};
use vincular::maps;
use vincular::patterns::{is_baxter, is_baxter_dual};
use vincular::poly::{
    baxter_number, catalan, cf_series, distribution_in_vars, pq_integer, MultiPoly, PermClass,
};
use vincular::stats::{crossnest_coord, crossnest_total, set_stat, vincular_coords, vincular_total};
use vincular::verify::{self, CheckReport};
use vincular::{
    CrossNestKind, LaguerreHistory, PatternDescriptor, Permutation, SetStatKind, Var, VincularStatId,
};

#[derive(Parser)]
#[command(name = "vincular", version, about = "Vincular permutation statistics, bijections and checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Statistics of a permutation.
    Stats {
        /// One-line notation, e.g. "4 7 1 8 6 3 2 5".
        perm: String,
        /// Comma-separated selectors: 213, 231, 312, 132, cros, nest, ecr,
        /// ucr, lcr, ene, une, lne, ene-tilde, nest-tilde, aba, dtb, ene-set,
        /// ene-tilde-set. Everything when omitted.
        which: Option<String>,
        /// Coordinate rows laid out under the letters of the permutation,
        /// e.g. 312,231 or cros,nest.
        #[arg(long)]
        coords: Option<String>,
    },
    /// Apply a map; reads permutations line by line from stdin if none is given.
    Map {
        #[arg(value_enum)]
        name: MapName,
        perm: Option<String>,
    },
    /// Pattern containment and Baxter membership.
    Pattern {
        #[command(subcommand)]
        action: PatternCmd,
    },
    /// Laguerre histories.
    History {
        #[command(subcommand)]
        action: HistoryCmd,
    },
    /// Polynomials and counting sequences.
    Poly {
        #[command(subcommand)]
        action: PolyCmd,
    },
    /// Run registered checks.
    Verify {
        /// Check id; repeat for several.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Every registered check at its default range.
        #[arg(long)]
        all: bool,
        /// List the registry and exit.
        #[arg(long)]
        list: bool,
        /// Smallest n (raised to the check's minimum)
        #[arg(long)]
        n_min: Option<usize>,
        /// Largest n; above the check's cap the result is SKIPPED
        #[arg(long)]
        n_max: Option<usize>,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        /// Leave out timing so reports are reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapName {
    ThetaHat,
    Theta,
    PhiSz,
    PhiSzInv,
    /// Φ_FV⁻¹ ∘ ξ ∘ Φ_FV
    Phi,
    /// Φ_SZ⁻¹ ∘ θ̂ ∘ Φ_SZ
    PhiHat,
    Inverse,
    Reverse,
    Complement,
}

#[derive(Subcommand)]
enum PatternCmd {
    Baxter { perm: String },
    BaxterDual { perm: String },
    /// Occurrences of PATTERN in PERM.
    Count { pattern: String, perm: String },
}

#[derive(Subcommand)]
enum HistoryCmd {
    /// Check a history; prints its heights.
    Validate {
        #[arg(num_args = 1..=2, required = true)]
        history: Vec<String>,
    },
    CriticalStep {
        #[arg(num_args = 1..=2, required = true)]
        history: Vec<String>,
    },
    Prudent {
        #[arg(num_args = 1..=2, required = true)]
        history: Vec<String>,
    },
    /// Φ_FV of a permutation.
    Fv { perm: String },
    /// Φ_FV⁻¹ of a history.
    FvInverse {
        #[arg(num_args = 1..=2, required = true)]
        history: Vec<String>,
    },
    Xi {
        #[arg(num_args = 1..=2, required = true)]
        history: Vec<String>,
    },
    /// Number of histories of length N.
    Count {
        n: usize,
        #[arg(long)]
        prudent: bool,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Distribution polynomial over Baxter permutations.
    Qn {
        n: usize,
        #[arg(long, default_value = "q,r")]
        vars: String,
    },
    /// Distribution polynomial over all permutations.
    Pn {
        n: usize,
        #[arg(long, default_value = "p,q,r,s")]
        vars: String,
    },
    /// Continued fraction coefficients up to x^N.
    Cf { n: usize },
    Baxter { n: u64 },
    Catalan { n: u64 },
    /// [i]_{p,q}
    Pq { i: u32 },
}

enum CliError {
    /// Bad input: exit code 2.
    Usage(String),
    /// A well-formed question answered negatively: exit code 1.
    Failed(String),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

type CliResult = Result<String, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Stats { perm, which, coords } => stats(json, perm, which.as_deref(), coords.as_deref()),
        Command::Map { name, perm } => map(json, *name, perm.as_deref()),
        Command::Pattern { action } => pattern(json, action),
        Command::History { action } => history(json, action),
        Command::Poly { action } => poly(json, action),
        Command::Verify {
            checks,
            all,
            list,
            n_min,
            n_max,
            jobs,
            no_timing,
        } => verify_cmd(json, checks, *all, *list, *n_min, *n_max, *jobs, !*no_timing),
    }
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn parse_perm(text: &str) -> Result<Permutation, CliError> {
    text.parse().map_err(|e| usage(format!("cannot parse permutation {text:?}: {e}")))
}

// ---- stats ----

#[derive(Clone, Copy)]
enum Selector {
    Vincular(VincularStatId),
    CrossNest(CrossNestKind),
    Set(SetStatKind),
}

impl Selector {
    fn parse(tok: &str) -> Result<Selector, CliError> {
        let tok = tok.trim();
        if let Ok(k) = tok.parse() {
            return Ok(Selector::CrossNest(k));
        }
        if let Ok(k) = tok.parse() {
            return Ok(Selector::Set(k));
        }
        tok.parse()
            .map(Selector::Vincular)
            .map_err(|_| usage(format!("unknown statistic {tok:?}")))
    }

    fn all() -> Vec<Selector> {
        let mut out: Vec<Selector> = VincularStatId::ALL.into_iter().map(Selector::Vincular).collect();
        out.extend(CrossNestKind::ALL.into_iter().map(Selector::CrossNest));
        out.extend(SetStatKind::ALL.into_iter().map(Selector::Set));
        out
    }

    fn name(self) -> &'static str {
        match self {
            Selector::Vincular(k) => k.name(),
            Selector::CrossNest(k) => k.name(),
            Selector::Set(k) => k.name(),
        }
    }

    fn value(self, s: &Permutation) -> Value {
        match self {
            Selector::Vincular(k) => json!(vincular_total(k, s)),
            Selector::CrossNest(k) => json!(crossnest_total(k, s)),
            Selector::Set(k) => json!(set_stat(k, s)),
        }
    }

    /// Coordinate row under the letters of `s`, if the statistic has one.
    fn row(self, s: &Permutation) -> Result<Vec<usize>, CliError> {
        match self {
            Selector::Vincular(k) => {
                let c = vincular_coords(k, s);
                Ok(s.values().iter().map(|&v| c[v]).collect())
            }
            Selector::CrossNest(k) => s
                .values()
                .iter()
                .map(|&v| crossnest_coord(k, v, s).map_err(usage))
                .collect(),
            Selector::Set(_) => Err(usage(format!("{} has no coordinates", self.name()))),
        }
    }
}

fn plain_value(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", inner.join(", "))
        }
        other => other.to_string(),
    }
}

fn stats(json: bool, perm: &str, which: Option<&str>, coords: Option<&str>) -> CliResult {
    let s = parse_perm(perm)?;
    let parse_list = |t: &str| t.split(',').filter(|x| !x.trim().is_empty()).map(Selector::parse).collect::<Result<Vec<_>, _>>();
    let picked = which.map(parse_list).transpose()?;
    let rows = coords.map(parse_list).transpose()?;
    let labelled = picked.is_none();
    let selectors = match (&picked, &rows) {
        (Some(p), _) => p.clone(),
        (None, Some(_)) => Vec::new(),
        (None, None) => Selector::all(),
    };

    if json {
        let mut obj = serde_json::Map::new();
        for sel in &selectors {
            obj.insert(sel.name().to_string(), sel.value(&s));
        }
        if let Some(rows) = &rows {
            let mut r = serde_json::Map::new();
            for sel in rows {
                r.insert(sel.name().to_string(), json!(sel.row(&s)?));
            }
            obj.insert("coords".into(), Value::Object(r));
        }
        return Ok(line(Value::Object(obj)));
    }

    let mut out = String::new();
    let width = selectors.iter().map(|x| x.name().len()).max().unwrap_or(0);
    for sel in &selectors {
        let v = plain_value(&sel.value(&s));
        if labelled {
            out.push_str(&format!("{:<width$}  {v}\n", sel.name()));
        } else {
            out.push_str(&format!("{v}\n"));
        }
    }
    if let Some(rows) = rows {
        let cells: Vec<Vec<usize>> = rows.iter().map(|sel| sel.row(&s)).collect::<Result<_, _>>()?;
        let col = s
            .values()
            .iter()
            .chain(cells.iter().flatten())
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let label = rows.iter().map(|x| x.name().len()).max().unwrap_or(0).max(1);
        let fmt_row = |name: &str, vals: &[usize]| {
            let body: Vec<String> = vals.iter().map(|v| format!("{v:>col$}")).collect();
            format!("{name:<label$}  {}\n", body.join(" "))
        };
        out.push_str(&fmt_row("σ", s.values()));
        for (sel, vals) in rows.iter().zip(&cells) {
            out.push_str(&fmt_row(sel.name(), vals));
        }
    }
    Ok(out)
}

// ---- map ----

fn apply_map(name: MapName, s: &Permutation) -> Permutation {
    match name {
        MapName::ThetaHat => maps::theta_hat(s),
        MapName::Theta => maps::theta(s),
        MapName::PhiSz => maps::phi_sz(s),
        MapName::PhiSzInv => maps::phi_sz_inv(s),
        MapName::Phi => maps::phi_laguerre(s),
        MapName::PhiHat => maps::phi_hat(s),
        MapName::Inverse => s.inverse(),
        MapName::Reverse => s.reverse(),
        MapName::Complement => s.complement(),
    }
}

fn map(json: bool, name: MapName, perm: Option<&str>) -> CliResult {
    let inputs: Vec<String> = match perm {
        Some(p) => vec![p.to_string()],
        None => io::stdin()
            .lock()
            .lines()
            .collect::<Result<Vec<_>, _>>()
            .map_err(usage)?
            .into_iter()
            .filter(|l| !l.trim().is_empty())
            .collect(),
    };
    let mut out = String::new();
    for text in inputs {
        let s = parse_perm(&text)?;
        let t = apply_map(name, &s);
        if json {
            out.push_str(&line(json!({ "input": s, "output": t })));
        } else {
            out.push_str(&format!("{t}\n"));
        }
    }
    Ok(out)
}

// ---- pattern ----

fn pattern(json: bool, action: &PatternCmd) -> CliResult {
    let (key, value) = match action {
        PatternCmd::Baxter { perm } => ("baxter", json!(is_baxter(&parse_perm(perm)?))),
        PatternCmd::BaxterDual { perm } => ("baxter_dual", json!(is_baxter_dual(&parse_perm(perm)?))),
        PatternCmd::Count { pattern, perm } => {
            let d: PatternDescriptor = pattern
                .parse()
                .map_err(|e| usage(format!("cannot parse pattern {pattern:?}: {e}")))?;
            ("count", json!(d.count_occurrences(&parse_perm(perm)?)))
        }
    };
    Ok(if json { line(json!({ key: value })) } else { format!("{value}\n") })
}

// ---- history ----

fn raw_history(args: &[String]) -> Result<RawHistory, CliError> {
    let text = match args {
        [one] => one.clone(),
        [path, weights] => format!("{path} / {weights}"),
        _ => return Err(usage("expected `PATH / WEIGHTS` or `PATH WEIGHTS`")),
    };
    text.parse().map_err(usage)
}

fn valid_history(args: &[String]) -> Result<LaguerreHistory, CliError> {
    validate_history(&raw_history(args)?).map_err(|e| usage(format!("invalid history: {e}")))
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn show_history(json: bool, w: &LaguerreHistory) -> String {
    if json {
        line(json!(w))
    } else {
        format!("{w}\n")
    }
}

fn history(json: bool, action: &HistoryCmd) -> CliResult {
    match action {
        HistoryCmd::Validate { history } => {
            let raw = raw_history(history)?;
            match validate_history(&raw) {
                Ok(w) if json => Ok(line(json!({ "valid": true, "history": w }))),
                Ok(w) => Ok(format!("valid\nheights {}\n", join(w.heights()))),
                Err(e) if json => Err(CliError::Failed(line(json!({ "valid": false, "error": e.to_string() })))),
                Err(e) => Err(CliError::Failed(format!("invalid: {e}\n"))),
            }
        }
        HistoryCmd::CriticalStep { history } => {
            let cs = valid_history(history)?.critical_step();
            Ok(if json { line(json!({ "critical_step": cs })) } else { format!("{cs}\n") })
        }
        HistoryCmd::Prudent { history } => {
            let p = valid_history(history)?.is_prudent();
            Ok(if json { line(json!({ "prudent": p })) } else { format!("{p}\n") })
        }
        HistoryCmd::Fv { perm } => Ok(show_history(json, &fv_forward(&parse_perm(perm)?))),
        HistoryCmd::FvInverse { history } => {
            let s = fv_inverse(&valid_history(history)?);
            Ok(if json { line(json!(s)) } else { format!("{s}\n") })
        }
        HistoryCmd::Xi { history } => Ok(show_history(json, &xi(&valid_history(history)?))),
        HistoryCmd::Count { n, prudent } => {
            let count = enumerate_histories(*n, *prudent).map_err(usage)?.count();
            Ok(if json {
                line(json!({ "n": n, "prudent": prudent, "count": count }))
            } else {
                format!("{count}\n")
            })
        }
    }
}

// ---- poly ----

fn parse_vars(text: &str) -> Result<Vec<Var>, CliError> {
    text.split(',').map(|t| t.parse::<Var>().map_err(usage)).collect()
}

fn show_poly(json: bool, p: &MultiPoly, grouped: bool) -> CliResult {
    if json {
        return Ok(line(json!(p.to_records())));
    }
    if grouped {
        Ok(format!("{}\n", p.to_grouped_string(Var::Q, Var::R).map_err(usage)?))
    } else {
        Ok(format!("{p}\n"))
    }
}

fn poly(json: bool, action: &PolyCmd) -> CliResult {
    match action {
        PolyCmd::Qn { n, vars } | PolyCmd::Pn { n, vars } => {
            let vars = parse_vars(vars)?;
            let class = if matches!(action, PolyCmd::Qn { .. }) { PermClass::Baxter } else { PermClass::All };
            let p = distribution_in_vars(*n, &vars, class).map_err(usage)?;
            let grouped = vars.iter().all(|v| matches!(v, Var::Q | Var::R));
            show_poly(json, &p, grouped)
        }
        PolyCmd::Cf { n } => {
            let series = cf_series(*n).map_err(usage)?;
            if json {
                let v: Vec<Value> = series
                    .coefficients()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| json!({ "degree": k, "terms": c.to_records() }))
                    .collect();
                return Ok(line(Value::Array(v)));
            }
            Ok(series
                .coefficients()
                .iter()
                .enumerate()
                .map(|(k, c)| format!("x^{k}: {c}\n"))
                .collect())
        }
        PolyCmd::Baxter { n } => number(json, *n, baxter_number(*n).map_err(usage)?),
        PolyCmd::Catalan { n } => number(json, *n, catalan(*n).map_err(usage)?),
        PolyCmd::Pq { i } => show_poly(json, &pq_integer(*i).map_err(usage)?, false),
    }
}

fn number(json: bool, n: u64, value: u64) -> CliResult {
    Ok(if json { line(json!({ "n": n, "value": value })) } else { format!("{value}\n") })
}

// ---- verify ----

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    json: bool,
    checks: &[String],
    all: bool,
    list: bool,
    n_min: Option<usize>,
    n_max: Option<usize>,
    jobs: Option<usize>,
    timing: bool,
) -> CliResult {
    let registry = verify::list_checks();
    if list {
        if json {
            let v: Vec<Value> = registry
                .iter()
                .map(|c| {
                    json!({
                        "check": c.id,
                        "claim": c.claim,
                        "range": [c.default_range.0, c.default_range.1],
                        "cap": c.cap,
                    })
                })
                .collect();
            return Ok(line(Value::Array(v)));
        }
        let width = registry.iter().map(|c| c.id.len()).max().unwrap_or(0);
        return Ok(registry
            .iter()
            .map(|c| {
                let range = format!("{}..{}", c.default_range.0, c.default_range.1);
                format!("{:<width$}  {range:<6} {}\n", c.id, c.claim)
            })
            .collect());
    }
    let ids: Vec<&str> = if all {
        registry.iter().map(|c| c.id).collect()
    } else {
        checks.iter().map(String::as_str).collect()
    };
    if ids.is_empty() {
        return Err(usage("give --check ID, --all or --list"));
    }
    let workers = jobs.unwrap_or_else(verify::default_workers);
    let mut reports: Vec<CheckReport> = Vec::new();
    for id in ids {
        let info = verify::find_check(id).map_err(usage)?;
        let lo = n_min.unwrap_or(info.default_range.0);
        let hi = n_max.unwrap_or(info.default_range.1.max(lo));
        reports.push(verify::run_check(id, lo, hi, workers).map_err(usage)?);
    }
    let out = if json {
        format!("{}\n", verify::render_json(&reports, timing))
    } else {
        verify::render_plain(&reports, timing)
    };
    if reports.iter().all(CheckReport::passed) {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}
