//! Registry of exhaustive checks and a parallel, deterministic runner.
//!
//! Each check evaluates one identity over every permutation (or history)
//! of each length in an inclusive range. Work for a given `n` is split into
//! enumeration blocks that run on a dedicated pool; the report keeps the
//! earliest counterexample (smallest `n`, then first in enumeration order),
//! so results do not depend on the number of workers.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::laguerre::{
    self, enumerate_histories, partitions_histories, LaguerreHistory, Step, StepClass,
    HISTORY_CAP, PRUDENT_HISTORY_CAP,
};
use crate::maps;
use crate::patterns::{is_baxter, is_baxter_dual};
use crate::perm::{factorial, partitions_sn, Permutation};
use crate::poly::{
    baxter_number, catalan, cf_series, distribution_of, distribution_poly, double_factorial_even,
    p_n, q_n, MultiPoly, PermClass, PolyError, Var,
};
use crate::stats::{
    crossnest_coord, crossnest_total, set_stat, vincular_coords, vincular_total, CrossNestKind,
    SetStatKind, VincularStatId,
};

type PermMap = fn(&Permutation) -> Permutation;
type HistoryMap = fn(&LaguerreHistory) -> LaguerreHistory;

/// The maps the checks are run against. Swapping one entry for a faulty
/// version shows which checks notice.
#[derive(Clone, Copy)]
pub struct Implementation {
    pub phi_sz: PermMap,
    pub phi_sz_inv: PermMap,
    pub theta_hat: PermMap,
    pub theta: PermMap,
    pub fv_forward: fn(&Permutation) -> LaguerreHistory,
    pub fv_inverse: fn(&LaguerreHistory) -> Permutation,
    pub xi: HistoryMap,
}

impl Implementation {
    pub fn reference() -> Self {
        Implementation {
            phi_sz: maps::phi_sz,
            phi_sz_inv: maps::phi_sz_inv,
            theta_hat: maps::theta_hat,
            theta: maps::theta,
            fv_forward: laguerre::fv_forward,
            fv_inverse: laguerre::fv_inverse,
            xi: laguerre::xi,
        }
    }

    pub fn phi_hat(&self, s: &Permutation) -> Permutation {
        (self.phi_sz_inv)(&(self.theta_hat)(&(self.phi_sz)(s)))
    }

    pub fn phi_laguerre(&self, s: &Permutation) -> Permutation {
        (self.fv_inverse)(&(self.xi)(&(self.fv_forward)(s)))
    }

    pub fn phi_fz(&self, s: &Permutation) -> LaguerreHistory {
        (self.fv_forward)(&(self.phi_sz_inv)(&s.inverse()))
    }

    pub fn phi_fz_inv(&self, w: &LaguerreHistory) -> Permutation {
        (self.phi_sz)(&(self.fv_inverse)(w)).inverse()
    }
}

impl Default for Implementation {
    fn default() -> Self {
        Implementation::reference()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("empty range {lo}..{hi}")]
    EmptyRange { lo: usize, hi: usize },
    #[error("worker count must be positive")]
    NoWorkers,
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    /// The offending permutation or history, or `n = …` for checks that
    /// compare whole polynomials or counts.
    pub item: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub range: [usize; 2],
    pub status: Status,
    pub items: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self, with_timing: bool) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if !with_timing {
            v.as_object_mut().expect("object").remove("ms");
        }
        v
    }
}

/// One line per report, e.g. `PASS  thm-1-3  n=1..9  items=409113  12 ms`.
pub fn render_plain(reports: &[CheckReport], with_timing: bool) -> String {
    let width = reports.iter().map(|r| r.check.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in reports {
        let _ = write!(
            out,
            "{:<7} {:<width$}  n={}..{}  items={}",
            r.status.to_string(),
            r.check,
            r.range[0],
            r.range[1],
            r.items
        );
        if with_timing {
            let _ = write!(out, "  {} ms", r.ms);
        }
        out.push('\n');
        if let Some(c) = &r.counterexample {
            let _ = writeln!(out, "  counterexample at n={}: {}", c.n, c.item);
            let _ = writeln!(out, "    expected: {}", c.expected);
            let _ = writeln!(out, "    actual:   {}", c.actual);
        }
        if let Some(reason) = &r.reason {
            let _ = writeln!(out, "  reason: {reason}");
        }
    }
    out
}

/// A pretty-printed JSON array of reports.
pub fn render_json(reports: &[CheckReport], with_timing: bool) -> String {
    let arr: Vec<Value> = reports.iter().map(|r| r.to_json(with_timing)).collect();
    serde_json::to_string_pretty(&Value::Array(arr)).expect("json renders")
}

struct Mismatch {
    expected: String,
    actual: String,
}

type Outcome = Result<(), Mismatch>;

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, expected: T, actual: T) -> Outcome {
    if expected == actual {
        Ok(())
    } else {
        Err(Mismatch {
            expected: format!("{what} = {expected:?}"),
            actual: format!("{what} = {actual:?}"),
        })
    }
}

fn expect_poly(what: &str, expected: &MultiPoly, actual: &MultiPoly) -> Outcome {
    if expected == actual {
        Ok(())
    } else {
        Err(Mismatch {
            expected: format!("{what} = {expected}"),
            actual: format!("{what} = {actual}"),
        })
    }
}

fn poly_err(e: PolyError) -> Mismatch {
    Mismatch {
        expected: "a polynomial".into(),
        actual: format!("error: {e}"),
    }
}

enum Body {
    Perms(fn(&Implementation, &Permutation) -> Outcome),
    Histories {
        prudent: bool,
        f: fn(&Implementation, &LaguerreHistory) -> Outcome,
    },
    /// Whole-`n` comparison, returning the number of objects enumerated.
    PerN(fn(&Implementation, usize) -> Result<u64, Mismatch>),
}

pub struct CheckInfo {
    pub id: &'static str,
    pub claim: &'static str,
    pub default_range: (usize, usize),
    pub min_n: usize,
    pub cap: usize,
    body: Body,
}

impl CheckInfo {
    pub fn kind(&self) -> &'static str {
        match self.body {
            Body::Perms(_) => "permutations",
            Body::Histories { prudent: false, .. } => "histories",
            Body::Histories { prudent: true, .. } => "prudent histories",
            Body::PerN(_) => "per n",
        }
    }
}

const PERM_CAP: usize = 10;

macro_rules! check {
    ($id:expr, $claim:expr, $lo:expr, $hi:expr, $min:expr, $cap:expr, $body:expr) => {
        CheckInfo {
            id: $id,
            claim: $claim,
            default_range: ($lo, $hi),
            min_n: $min,
            cap: $cap,
            body: $body,
        }
    };
}

/// Every registered check, in a fixed order.
pub fn list_checks() -> Vec<CheckInfo> {
    use Body::*;
    vec![
        check!("ex-2-2", "worked example: Φ_SZ(47186325) = 57148263 and its four coordinate rows", 8, 8, 8, 8, PerN(ex_2_2)),
        check!("thm-1-3", "φ̂ is an involution and (31-2, 2-31)σ = (31-2, 2-13)φ̂(σ)", 1, 9, 1, PERM_CAP, Perms(thm_1_3)),
        check!("eq-1-10", "(31-2, 2-13, 2-31)σ = (31-2, 2-31, 2-13)φ̂(σ)", 1, 9, 1, PERM_CAP, Perms(eq_1_10)),
        check!("thm-1-5", "φ̂ maps Baxter permutations to Baxter permutations", 1, 9, 1, PERM_CAP, Perms(thm_1_5)),
        check!("cor-baxter-equidist", "Q_n(1,q,r,s) = Q_n(1,q,s,r), the three sibling relations and the symmetries of Q_n", 1, 9, 1, 11, PerN(cor_baxter_equidist)),
        check!("lem-2-1", "Φ_SZ: last entry, coordinatewise (2-31, 31-2) = (nest, cros), (Aba, Dtb) = (Ene, Ene~), 2-13 = nest~, ascent criterion", 1, 8, 1, PERM_CAP, Perms(lem_2_1)),
        check!("eq-2-9", "2-13 = 2-31 - |Aba| + |Dtb|", 1, 8, 1, PERM_CAP, Perms(eq_2_9)),
        check!("thm-2-3", "(ecr, ucr, lcr, ene, une, lne)σ = (ecr, lcr, ucr, ene~, lne, une)θ̂(σ)", 1, 8, 1, PERM_CAP, Perms(thm_2_3)),
        check!("eq-2-13", "(cros, nest)σ = (cros, nest~)θ̂(σ)", 1, 8, 1, PERM_CAP, Perms(eq_2_13)),
        check!("claesson", "2-13, 2-31, 31-2, 13-2 are equidistributed on S_n", 1, 8, 1, PERM_CAP, PerN(claesson)),
        check!("cf-expansion", "x^n coefficient of the continued fraction equals Σ p^{2-31} q^{31-2} and Σ p^{2-13} q^{31-2}", 0, 8, 0, PERM_CAP, PerN(cf_expansion)),
        check!("pn-symmetry", "P_n(p,q,r,s) = P_n(q,p,s,r) = P_n(s,r,q,p) = P_n(r,s,p,q)", 1, 8, 1, PERM_CAP, PerN(pn_symmetry)),
        check!("conj-1-2", "P_n(1,q,r,s) = P_n(1,q,s,r) and the three sibling relations", 1, 8, 1, PERM_CAP, PerN(conj_1_2)),
        check!("def-3-4-involution", "ξ is an involution on L_n with cs(ξW) = n + 1 - cs(W)", 1, 8, 1, HISTORY_CAP, Histories { prudent: false, f: def_3_4 }),
        check!("table-1-conformance", "every index of (W, ξW) matches exactly one case of the ξ case table", 1, 8, 1, HISTORY_CAP, Histories { prudent: false, f: table_1 }),
        check!("lem-3-8", "σ is Baxter iff Φ_FV(σ) is prudent", 1, 9, 1, PERM_CAP, Perms(lem_3_8)),
        check!("lem-3-10", "ξ maps prudent histories to prudent histories", 1, 9, 1, PRUDENT_HISTORY_CAP, Histories { prudent: true, f: lem_3_10 }),
        check!("prop-dual-baxter", "avoiding 3-14-2 and 2-41-3 is the same as avoiding the value-adjacent 2413 and 3142", 1, 9, 1, PERM_CAP, Perms(prop_dual_baxter)),
        check!("prop-hatphi-phi", "φ̂ = Φ_FV⁻¹ ∘ ξ ∘ Φ_FV, and Φ_SZ ∘ φ = θ̂ ∘ Φ_SZ", 1, 8, 1, PERM_CAP, Perms(prop_hatphi_phi)),
        check!("eq-3-1-3-2", "Φ_FZ⁻¹ ∘ ξ ∘ Φ_FZ = θ for Φ_FZ = Φ_FV ∘ Φ_SZ⁻¹ ∘ ι", 1, 7, 1, PERM_CAP, Perms(eq_3_1_3_2)),
        check!("eq-hattheta", "θ̂ = ι ∘ θ ∘ ι", 1, 8, 1, PERM_CAP, Perms(eq_hattheta)),
        check!("thm-4-2", "φ̂ has no fixed points for even n and (2m)!! for n = 2m + 1; σ is fixed iff Φ_SZ(σ) is fixed by θ̂", 1, 9, 1, PERM_CAP, PerN(thm_4_2)),
        check!("fixpoint-shape", "θ̂(σ) = σ iff σ = σ_1…σ_m (2m+1) (2m+1-σ_m)…(2m+1-σ_1)", 1, 9, 1, PERM_CAP, Perms(fixpoint_shape)),
        check!("qn-tables", "Q_n(q, r) matches the printed polynomials", 3, 7, 3, 7, PerN(qn_tables)),
        check!("qn-catalan", "Q_n(1, 0) is the Catalan number C_n", 1, 9, 1, 11, PerN(qn_catalan)),
        check!("baxter-counts", "prudent histories of length n are counted by the Baxter numbers (and match a direct filter for n ≤ 9)", 1, 11, 1, PRUDENT_HISTORY_CAP, PerN(baxter_counts)),
        check!("roundtrips", "Φ_SZ⁻¹ ∘ Φ_SZ, Φ_SZ ∘ Φ_SZ⁻¹ and Φ_FV⁻¹ ∘ Φ_FV are identities", 1, 9, 1, PERM_CAP, Perms(roundtrips)),
        check!("history-counts", "|L_n| = n!", 0, 8, 0, HISTORY_CAP, PerN(history_counts)),
        check!("fv-history-roundtrip", "Φ_FV ∘ Φ_FV⁻¹ is the identity on L_n", 1, 8, 1, HISTORY_CAP, Histories { prudent: false, f: fv_history_roundtrip }),
    ]
}

pub fn find_check(id: &str) -> Result<CheckInfo, VerifyError> {
    list_checks()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))
}

/// Default number of workers: the available parallelism.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn run_check(id: &str, lo: usize, hi: usize, workers: usize) -> Result<CheckReport, VerifyError> {
    run_check_with(&Implementation::reference(), id, lo, hi, workers)
}

/// Runs `id` for every `n` in `lo..=hi` (raised to the check's minimum)
/// against `imp`. A range beyond the check's cap is reported as SKIPPED.
pub fn run_check_with(
    imp: &Implementation,
    id: &str,
    lo: usize,
    hi: usize,
    workers: usize,
) -> Result<CheckReport, VerifyError> {
    let info = find_check(id)?;
    if workers == 0 {
        return Err(VerifyError::NoWorkers);
    }
    if lo > hi {
        return Err(VerifyError::EmptyRange { lo, hi });
    }
    let lo = lo.max(info.min_n);
    let mut report = CheckReport {
        check: info.id.to_string(),
        range: [lo, hi],
        status: Status::Skipped,
        items: 0,
        counterexample: None,
        reason: None,
        ms: 0,
    };
    if hi > info.cap {
        report.reason = Some(format!("n = {hi} exceeds the cap of {} for this check", info.cap));
        return Ok(report);
    }
    if lo > hi {
        report.reason = Some(format!("the check starts at n = {}", info.min_n));
        return Ok(report);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    let start = Instant::now();
    report.status = Status::Pass;
    for n in lo..=hi {
        let (items, failure) = pool.install(|| run_n(imp, &info.body, n));
        report.items += items;
        if let Some(c) = failure {
            report.status = Status::Fail;
            report.counterexample = Some(c);
            break;
        }
    }
    report.ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Runs every registered check over its default range.
pub fn run_all(workers: usize) -> Result<Vec<CheckReport>, VerifyError> {
    list_checks()
        .iter()
        .map(|c| run_check(c.id, c.default_range.0, c.default_range.1, workers))
        .collect()
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".to_string()
    }
}

fn guarded<T>(f: impl FnOnce() -> Result<T, Mismatch>) -> Result<T, Mismatch> {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(Mismatch {
            expected: "no panic".into(),
            actual: format!("panicked: {}", panic_message(p)),
        })
    })
}

/// Scans one block up to its first failure.
fn scan<T: std::fmt::Display>(
    items: impl Iterator<Item = T>,
    f: impl Fn(&T) -> Outcome,
) -> (u64, Option<(String, Mismatch)>) {
    let mut count = 0;
    for x in items {
        count += 1;
        if let Err(m) = guarded(|| f(&x)) {
            return (count, Some((x.to_string(), m)));
        }
    }
    (count, None)
}

fn run_n(imp: &Implementation, body: &Body, n: usize) -> (u64, Option<Counterexample>) {
    let into_cx = |(item, m): (String, Mismatch)| Counterexample {
        n,
        item,
        expected: m.expected,
        actual: m.actual,
    };
    let blocks: Vec<(u64, Option<(String, Mismatch)>)> = match body {
        Body::Perms(f) => partitions_sn(n)
            .expect("range checked against cap")
            .into_par_iter()
            .map(|block| scan(block, |s| f(imp, s)))
            .collect(),
        Body::Histories { prudent, f } => partitions_histories(n, *prudent, 4)
            .expect("range checked against cap")
            .into_par_iter()
            .map(|block| scan(block, |w| f(imp, w)))
            .collect(),
        Body::PerN(f) => {
            return match guarded(|| f(imp, n)) {
                Ok(items) => (items, None),
                Err(m) => (0, Some(into_cx((format!("n = {n}"), m)))),
            }
        }
    };
    let items = blocks.iter().map(|(c, _)| c).sum();
    let first = blocks.into_iter().find_map(|(_, f)| f).map(into_cx);
    (items, first)
}

// ---- per-permutation checks ----

fn totals(s: &Permutation, ids: &[VincularStatId]) -> Vec<usize> {
    ids.iter().map(|&id| vincular_total(id, s)).collect()
}

use VincularStatId::{S132, S213, S231, S312};

fn thm_1_3(imp: &Implementation, s: &Permutation) -> Outcome {
    let t = imp.phi_hat(s);
    expect_eq("(31-2, 2-13) of φ̂(σ)", totals(s, &[S312, S231]), totals(&t, &[S312, S213]))?;
    expect_eq("φ̂(φ̂(σ))", s.clone(), imp.phi_hat(&t))
}

fn eq_1_10(imp: &Implementation, s: &Permutation) -> Outcome {
    let t = imp.phi_hat(s);
    expect_eq(
        "(31-2, 2-31, 2-13) of φ̂(σ)",
        totals(s, &[S312, S213, S231]),
        totals(&t, &[S312, S231, S213]),
    )
}

fn thm_1_5(imp: &Implementation, s: &Permutation) -> Outcome {
    if is_baxter(s) {
        let t = imp.phi_hat(s);
        expect_eq(format!("is_baxter(φ̂(σ)) for φ̂(σ) = {t}").as_str(), true, is_baxter(&t))
    } else {
        Ok(())
    }
}

fn lem_2_1(imp: &Implementation, pi: &Permutation) -> Outcome {
    let n = pi.len();
    let sigma = (imp.phi_sz)(pi);
    expect_eq("σ at π_n", n, sigma.at(pi.at(n)))?;
    let c231 = vincular_coords(S231, pi);
    let c312 = vincular_coords(S312, pi);
    for i in 1..=n {
        let nest = crossnest_coord(CrossNestKind::Nest, i, &sigma).expect("in range");
        let cros = crossnest_coord(CrossNestKind::Cros, i, &sigma).expect("in range");
        expect_eq(&format!("2-31({i}, π) vs nest({i}, Φ_SZ π)"), c231[i], nest)?;
        expect_eq(&format!("31-2({i}, π) vs cros({i}, Φ_SZ π)"), c312[i], cros)?;
    }
    expect_eq("Aba(π) vs Ene(Φ_SZ π)", set_stat(SetStatKind::Aba, pi), set_stat(SetStatKind::EneSet, &sigma))?;
    expect_eq("Dtb(π) vs Ene~(Φ_SZ π)", set_stat(SetStatKind::Dtb, pi), set_stat(SetStatKind::EneTildeSet, &sigma))?;
    expect_eq("2-13(π) vs nest~(Φ_SZ π)", vincular_total(S213, pi), crossnest_total(CrossNestKind::NestTilde, &sigma))?;
    for i in 1..n {
        let ascent = pi.at(i) < pi.at(i + 1);
        let criterion = sigma.at(pi.at(i)) >= pi.at(i) && pi.at(i) != pi.at(n);
        expect_eq(&format!("ascent at {i} vs criterion"), ascent, criterion)?;
    }
    Ok(())
}

fn eq_2_9(_: &Implementation, s: &Permutation) -> Outcome {
    let lhs = vincular_total(S213, s) as i64;
    let rhs = vincular_total(S231, s) as i64 - set_stat(SetStatKind::Aba, s).len() as i64
        + set_stat(SetStatKind::Dtb, s).len() as i64;
    expect_eq("2-13(σ)", rhs, lhs)
}

fn kinds(s: &Permutation, ks: &[CrossNestKind]) -> Vec<usize> {
    ks.iter().map(|&k| crossnest_total(k, s)).collect()
}

fn thm_2_3(imp: &Implementation, s: &Permutation) -> Outcome {
    use CrossNestKind::*;
    let t = (imp.theta_hat)(s);
    expect_eq(
        "(ecr, lcr, ucr, ene~, lne, une) of θ̂(σ)",
        kinds(s, &[Ecr, Ucr, Lcr, Ene, Une, Lne]),
        kinds(&t, &[Ecr, Lcr, Ucr, EneTilde, Lne, Une]),
    )
}

fn eq_2_13(imp: &Implementation, s: &Permutation) -> Outcome {
    use CrossNestKind::*;
    let t = (imp.theta_hat)(s);
    expect_eq("(cros, nest~) of θ̂(σ)", kinds(s, &[Cros, Nest]), kinds(&t, &[Cros, NestTilde]))
}

fn def_3_4(imp: &Implementation, w: &LaguerreHistory) -> Outcome {
    let v = (imp.xi)(w);
    expect_eq("cs(ξW)", w.len() + 1 - w.critical_step(), v.critical_step())?;
    expect_eq("ξ(ξW)", w.to_string(), (imp.xi)(&v).to_string())
}

fn table_1(imp: &Implementation, w: &LaguerreHistory) -> Outcome {
    let v = (imp.xi)(w);
    for j in 1..=w.len() {
        let rows = table_one_rows(w, &v, j);
        if rows.len() != 1 {
            return Err(Mismatch {
                expected: format!("index {j} of ξW = {v} matches exactly one case"),
                actual: format!("matching cases {rows:?}"),
            });
        }
    }
    Ok(())
}

fn lem_3_8(imp: &Implementation, s: &Permutation) -> Outcome {
    expect_eq("is_prudent(Φ_FV σ)", is_baxter(s), (imp.fv_forward)(s).is_prudent())
}

fn lem_3_10(imp: &Implementation, w: &LaguerreHistory) -> Outcome {
    let v = (imp.xi)(w);
    expect_eq(format!("is_prudent(ξW) for ξW = {v}").as_str(), true, v.is_prudent())
}

fn prop_dual_baxter(_: &Implementation, s: &Permutation) -> Outcome {
    expect_eq("is_baxter_dual(σ)", is_baxter(s), is_baxter_dual(s))
}

fn prop_hatphi_phi(imp: &Implementation, s: &Permutation) -> Outcome {
    let phi = imp.phi_laguerre(s);
    expect_eq("φ(σ)", imp.phi_hat(s), phi.clone())?;
    expect_eq("Φ_SZ(φ(σ))", (imp.theta_hat)(&(imp.phi_sz)(s)), (imp.phi_sz)(&phi))
}

fn eq_3_1_3_2(imp: &Implementation, s: &Permutation) -> Outcome {
    let w = imp.phi_fz(s);
    expect_eq("Φ_FZ⁻¹(Φ_FZ π)", s.clone(), imp.phi_fz_inv(&w))?;
    expect_eq("Φ_FZ⁻¹(ξ(Φ_FZ π))", (imp.theta)(s), imp.phi_fz_inv(&(imp.xi)(&w)))
}

fn eq_hattheta(imp: &Implementation, s: &Permutation) -> Outcome {
    expect_eq("ι(θ(ι σ))", (imp.theta_hat)(s), (imp.theta)(&s.inverse()).inverse())
}

/// `σ_1…σ_m (2m+1) (2m+1-σ_m)…(2m+1-σ_1)` for odd `n = 2m + 1`.
pub fn has_theta_hat_fixed_shape(s: &Permutation) -> bool {
    let n = s.len();
    if n % 2 == 0 {
        return false;
    }
    let m = n / 2;
    s.at(m + 1) == n && (1..=m).all(|i| s.at(n + 1 - i) == n - s.at(i))
}

fn fixpoint_shape(imp: &Implementation, s: &Permutation) -> Outcome {
    expect_eq(
        "θ̂(σ) = σ",
        has_theta_hat_fixed_shape(s),
        (imp.theta_hat)(s) == *s,
    )
}

fn roundtrips(imp: &Implementation, s: &Permutation) -> Outcome {
    expect_eq("Φ_SZ⁻¹(Φ_SZ σ)", s.clone(), (imp.phi_sz_inv)(&(imp.phi_sz)(s)))?;
    expect_eq("Φ_SZ(Φ_SZ⁻¹ σ)", s.clone(), (imp.phi_sz)(&(imp.phi_sz_inv)(s)))?;
    expect_eq("Φ_FV⁻¹(Φ_FV σ)", s.clone(), (imp.fv_inverse)(&(imp.fv_forward)(s)))
}

fn fv_history_roundtrip(imp: &Implementation, w: &LaguerreHistory) -> Outcome {
    expect_eq("Φ_FV(Φ_FV⁻¹ W)", w.to_string(), (imp.fv_forward)(&(imp.fv_inverse)(w)).to_string())
}

// ---- whole-n checks ----

fn ex_2_2(imp: &Implementation, _n: usize) -> Result<u64, Mismatch> {
    let sigma: Permutation = "4 7 1 8 6 3 2 5".parse().expect("valid");
    let tau: Permutation = "5 7 1 4 8 2 6 3".parse().expect("valid");
    expect_eq("Φ_SZ(4 7 1 8 6 3 2 5)", tau.clone(), (imp.phi_sz)(&sigma))?;
    expect_eq("Φ_SZ⁻¹(5 7 1 4 8 2 6 3)", sigma.clone(), (imp.phi_sz_inv)(&tau))?;
    let row = |s: &Permutation, f: &dyn Fn(usize) -> usize| -> Vec<usize> {
        s.values().iter().map(|&v| f(v)).collect()
    };
    let c312 = vincular_coords(S312, &sigma);
    let c231 = vincular_coords(S231, &sigma);
    expect_eq("31-2 row", vec![0, 0, 0, 0, 1, 1, 1, 2], row(&sigma, &|l| c312[l]))?;
    expect_eq("2-31 row", vec![2, 1, 0, 0, 0, 0, 0, 0], row(&sigma, &|l| c231[l]))?;
    let cros = |i| crossnest_coord(CrossNestKind::Cros, i, &tau).expect("in range");
    let nest = |i| crossnest_coord(CrossNestKind::Nest, i, &tau).expect("in range");
    expect_eq("cros row", vec![2, 0, 0, 0, 0, 1, 1, 1], row(&tau, &cros))?;
    expect_eq("nest row", vec![0, 1, 0, 2, 0, 0, 0, 0], row(&tau, &nest))?;
    Ok(1)
}

fn all_perms(n: usize) -> Vec<Permutation> {
    partitions_sn(n)
        .expect("range checked against cap")
        .into_par_iter()
        .flat_map_iter(|b| b)
        .collect()
}

fn claesson(_: &Implementation, n: usize) -> Result<u64, Mismatch> {
    let perms = all_perms(n);
    let dist = |id: VincularStatId| {
        let mut counts = vec![0u64; n * n + 1];
        for s in &perms {
            counts[vincular_total(id, s)] += 1;
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    };
    let base = dist(S213);
    for id in [S231, S312, S132] {
        expect_eq(&format!("distribution of {id} (vs 2-13)"), base.clone(), dist(id))?;
    }
    Ok(perms.len() as u64)
}

fn cf_expansion(_: &Implementation, n: usize) -> Result<u64, Mismatch> {
    let series = cf_series(n).map_err(poly_err)?;
    let coeff = series.coefficient(n);
    let perms = all_perms(n);
    let a = distribution_of(&perms, &[(S231, Var::P), (S312, Var::Q)]).map_err(poly_err)?;
    let b = distribution_of(&perms, &[(S213, Var::P), (S312, Var::Q)]).map_err(poly_err)?;
    expect_poly("Σ p^{2-31} q^{31-2}", coeff, &a)?;
    expect_poly("Σ p^{2-13} q^{31-2}", coeff, &b)?;
    expect_eq("coefficient at p = q = 1", factorial(n) as i64, coeff.sum_coefficients().map_err(poly_err)?)?;
    Ok(perms.len() as u64)
}

/// The images of `P` under the symmetry group and the four specialisation
/// relations are shared between `P_n` and `Q_n`.
fn symmetries(poly: &MultiPoly, name: &str) -> Result<(), Mismatch> {
    use Var::*;
    for (label, perm) in [
        ("(q,p,s,r)", [Q, P, S, R]),
        ("(s,r,q,p)", [S, R, Q, P]),
        ("(r,s,p,q)", [R, S, P, Q]),
    ] {
        expect_poly(&format!("{name}{label}"), poly, &poly.substitute(perm).map_err(poly_err)?)?;
    }
    Ok(())
}

fn four_relations(poly: &MultiPoly, name: &str) -> Result<(), Mismatch> {
    use Var::*;
    // (variable set to 1, swap applied afterwards)
    let relations = [
        (P, [P, Q, S, R], "(1,q,r,s) vs (1,q,s,r)"),
        (Q, [P, Q, S, R], "(p,1,r,s) vs (p,1,s,r)"),
        (R, [Q, P, R, S], "(p,q,1,s) vs (q,p,1,s)"),
        (S, [Q, P, R, S], "(p,q,r,1) vs (q,p,r,1)"),
    ];
    for (one, swap, label) in relations {
        let lhs = poly.evaluate(one, 1).map_err(poly_err)?;
        let rhs = lhs.substitute(swap).map_err(poly_err)?;
        expect_poly(&format!("{name}{label}"), &lhs, &rhs)?;
    }
    Ok(())
}

fn pn_symmetry(_: &Implementation, n: usize) -> Result<u64, Mismatch> {
    symmetries(&p_n(n).map_err(poly_err)?, "P_n")?;
    Ok(factorial(n))
}

fn conj_1_2(_: &Implementation, n: usize) -> Result<u64, Mismatch> {
    four_relations(&p_n(n).map_err(poly_err)?, "P_n")?;
    Ok(factorial(n))
}

fn cor_baxter_equidist(_: &Implementation, n: usize) -> Result<u64, Mismatch> {
    let q = q_n(n).map_err(poly_err)?;
    let lhs = distribution_poly(n, &[(S312, Var::Q), (S213, Var::R), (S231, Var::S)], PermClass::Baxter)
        .map_err(poly_err)?;
    let rhs = distribution_poly(n, &[(S312, Var::Q), (S231, Var::R), (S213, Var::S)], PermClass::Baxter)
        .map_err(poly_err)?;
    expect_poly("Σ q^{31-2} r^{2-31} s^{2-13}", &lhs, &rhs)?;
    symmetries(&q, "Q_n")?;
    four_relations(&q, "Q_n")?;
    Ok(baxter_number(n as u64).map_err(poly_err)?)
}

fn thm_4_2(imp: &Implementation, n: usize) -> Result<u64, Mismatch> {
    let perms = all_perms(n);
    let fixed: Vec<bool> = perms.par_iter().map(|s| imp.phi_hat(s) == *s).collect();
    let count = fixed.iter().filter(|&&f| f).count() as u64;
    let expected = if n % 2 == 0 {
        0
    } else {
        double_factorial_even((n / 2) as u64).map_err(poly_err)?
    };
    expect_eq("number of fixed points of φ̂", expected, count)?;
    let image_fixed: Vec<bool> = perms
        .par_iter()
        .map(|s| {
            let t = (imp.phi_sz)(s);
            (imp.theta_hat)(&t) == t
        })
        .collect();
    if let Some(k) = (0..perms.len()).find(|&k| fixed[k] != image_fixed[k]) {
        return Err(Mismatch {
            expected: format!("φ̂ fixes {} iff θ̂ fixes its Φ_SZ image ({})", perms[k], image_fixed[k]),
            actual: format!("φ̂ fixes it: {}", fixed[k]),
        });
    }
    Ok(perms.len() as u64)
}

/// `Q_n(q, r)` as printed for `n = 3, …, 7`.
pub const QN_GOLDEN: [(usize, &str); 5] = [
    (3, "(4 + q) + r"),
    (4, "(8 + 4q + 2q^2) + (4 + 2q)r + 2r^2"),
    (5, "(16 + 12q + 9q^2 + 4q^3 + q^4) + (12 + 10q + 5q^2 + q^3)r + (9 + 5q + 2q^2)r^2 + (4 + q)r^3 + r^4"),
    (6, "(32 + 32q + 30q^2 + 20q^3 + 12q^4 + 4q^5 + 2q^6) + (32 + 36q + 28q^2 + 16q^3 + 6q^4 + 2q^5)r + (30 + 28q + 22q^2 + 8q^3 + 4q^4)r^2 + (20 + 16q + 8q^2 + 4q^3)r^3 + (12 + 6q + 4q^2)r^4 + (4 + 2q)r^5 + 2r^6"),
    (7, "(64 + 80q + 88q^2 + 73q^3 + 56q^4 + 34q^5 + 20q^6 + 9q^7 + 4q^8 + q^9) + (80 + 112q + 111q^2 + 86q^3 + 56q^4 + 30q^5 + 14q^6 + 5q^7 + q^8)r + (88 + 111q + 112q^2 + 75q^3 + 47q^4 + 21q^5 + 9q^6 + 2q^7)r^2 + (73 + 86q + 75q^2 + 48q^3 + 25q^4 + 10q^5 + 3q^6)r^3 + (56 + 56q + 47q^2 + 25q^3 + 12q^4 + 3q^5)r^4 + (34 + 30q + 21q^2 + 10q^3 + 3q^4)r^5 + (20 + 14q + 9q^2 + 3q^3)r^6 + (9 + 5q + 2q^2)r^7 + (4 + q)r^8 + r^9"),
];

/// `Q_n(q, r) = Q_n(1, q, r, 1)`, computed from Baxter permutations
/// produced by `imp`'s inverse Françon–Viennot map.
fn qn_bivariate(imp: &Implementation, n: usize) -> Result<(MultiPoly, u64), Mismatch> {
    let perms: Vec<Permutation> = partitions_histories(n, true, 3)
        .map_err(|e| Mismatch {
            expected: "prudent histories".into(),
            actual: e.to_string(),
        })?
        .into_par_iter()
        .flat_map_iter(|b| b.map(|w| (imp.fv_inverse)(&w)))
        .collect();
    let poly = distribution_of(&perms, &[(S312, Var::Q), (S213, Var::R)]).map_err(poly_err)?;
    Ok((poly, perms.len() as u64))
}

fn qn_tables(imp: &Implementation, n: usize) -> Result<u64, Mismatch> {
    let (poly, items) = qn_bivariate(imp, n)?;
    let golden = QN_GOLDEN
        .iter()
        .find(|(k, _)| *k == n)
        .map(|(_, s)| *s)
        .expect("range limited to printed values");
    let shown = poly.to_grouped_string(Var::Q, Var::R).map_err(poly_err)?;
    if shown != golden {
        return Err(Mismatch {
            expected: golden.to_string(),
            actual: shown,
        });
    }
    Ok(items)
}

fn qn_catalan(imp: &Implementation, n: usize) -> Result<u64, Mismatch> {
    let (poly, items) = qn_bivariate(imp, n)?;
    let at = poly
        .evaluate(Var::Q, 1)
        .and_then(|p| p.evaluate(Var::R, 0))
        .and_then(|p| p.sum_coefficients())
        .map_err(poly_err)?;
    expect_eq("Q_n(1, 0)", catalan(n as u64).map_err(poly_err)? as i64, at)?;
    Ok(items)
}

/// Largest `n` at which `baxter-counts` also filters `S_n` directly.
pub const BAXTER_FILTER_MAX: usize = 9;

fn baxter_counts(_: &Implementation, n: usize) -> Result<u64, Mismatch> {
    let count: u64 = partitions_histories(n, true, 4)
        .expect("range checked against cap")
        .into_par_iter()
        .map(|b| b.count() as u64)
        .sum();
    let bax = baxter_number(n as u64).map_err(poly_err)?;
    expect_eq("number of prudent histories", bax, count)?;
    if n <= BAXTER_FILTER_MAX {
        let filtered: u64 = partitions_sn(n)
            .expect("within cap")
            .into_par_iter()
            .map(|b| b.filter(is_baxter).count() as u64)
            .sum();
        expect_eq("number of Baxter permutations", bax, filtered)?;
    }
    Ok(count)
}

fn history_counts(_: &Implementation, n: usize) -> Result<u64, Mismatch> {
    let count: u64 = if n == 0 {
        enumerate_histories(0, false).expect("within cap").count() as u64
    } else {
        partitions_histories(n, false, 4)
            .expect("range checked against cap")
            .into_par_iter()
            .map(|b| b.count() as u64)
            .sum()
    };
    expect_eq("|L_n|", factorial(n), count)?;
    Ok(count)
}

// ---- the ξ case table ----

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Position {
    /// `j = n + 1 - m`
    Pivot,
    /// `j = n - m`
    BeforePivot,
    /// `j < n - m`
    Below,
    /// `j > n + 1 - m`
    Above,
}

use StepClass::{DownBlue as Db, UpRed as Ur};

/// (position, v_j, v_{j+1}, w_{n+1-j}, w_{n-j}, g_j - h_{n+1-j}, g_{j+1} - h_{n-j})
#[rustfmt::skip]
const CASES: [(Position, StepClass, StepClass, StepClass, StepClass, i64, i64); 12] = [
    (Position::Pivot,       Ur, Ur, Ur, Db,  0,  0),
    (Position::Pivot,       Ur, Db, Ur, Ur,  0,  1),
    (Position::BeforePivot, Ur, Ur, Db, Ur, -1,  0),
    (Position::BeforePivot, Db, Ur, Ur, Ur,  0,  0),
    (Position::Below,       Ur, Ur, Db, Db, -1, -1),
    (Position::Below,       Ur, Db, Db, Ur, -1,  0),
    (Position::Below,       Db, Ur, Ur, Db,  0, -1),
    (Position::Below,       Db, Db, Ur, Ur,  0,  0),
    (Position::Above,       Ur, Ur, Db, Db,  0,  0),
    (Position::Above,       Ur, Db, Db, Ur,  0,  1),
    (Position::Above,       Db, Ur, Ur, Db,  1,  0),
    (Position::Above,       Db, Db, Ur, Ur,  1,  1),
];

/// Case numbers (1 to 14) of the ξ case table matched by index `j` of the
/// pair `(w, v)`, where `v` should be `ξ(w)`. Exactly one case matches for
/// a correct `ξ`.
pub fn table_one_rows(w: &LaguerreHistory, v: &LaguerreHistory, j: usize) -> Vec<usize> {
    let n = w.len();
    assert!(v.len() == n && (1..=n).contains(&j), "index out of range");
    let m = w.critical_step();
    let h = |k: usize| w.height(k) as i64;
    let g = |k: usize| if k > n { 0 } else { v.height(k) as i64 };
    let mut rows = Vec::new();
    if j == n {
        let first_up = w.step(1).class() == StepClass::UpRed;
        if m == 1 && v.step(n) == Step::Lr && first_up && g(n) == 0 {
            rows.push(13);
        }
        if m > 1 && v.step(n) == Step::D && first_up && g(n) == 1 {
            rows.push(14);
        }
        return rows;
    }
    let pivot = n + 1 - m;
    let pos = if j == pivot {
        Position::Pivot
    } else if j + 1 == pivot {
        Position::BeforePivot
    } else if j < pivot {
        Position::Below
    } else {
        Position::Above
    };
    let observed = (
        pos,
        v.step(j).class(),
        v.step(j + 1).class(),
        w.step(n + 1 - j).class(),
        w.step(n - j).class(),
        g(j) - h(n + 1 - j),
        g(j + 1) - h(n - j),
    );
    for (k, case) in CASES.iter().enumerate() {
        if *case == observed {
            rows.push(k + 1);
        }
    }
    rows
}
