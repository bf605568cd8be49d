//! Conformance sweeps: replay a strategy grid, compare observed worst cases
//! against declared bounds and floors, and emit rows as CSV or JSON.
//!
//! A sweep never aborts on a bad row; infeasible or over-cap combinations
//! become `skipped` rows and unexpected failures become `error` rows, so a
//! long grid always produces one line per combination. With a fixed spec
//! and caps the output is byte-identical across runs, including parallel
//! ones: workers only change scheduling, never row order or content.

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::adaptive::{
    choose_strategy, hwang_test_target, hwang_yes_bound, measure_max_yes, staged_test_bound, Strategy,
};
use crate::bounds::min_yes_exact;
use crate::config::Caps;
use crate::error::Error;
use crate::verify::Mode;

/// The grid of a conformance sweep: every `(n, d, t)` combination is one
/// row, iterated with `n` outermost and `t` innermost.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub n_values: Vec<u64>,
    pub d_values: Vec<u64>,
    pub t_values: Vec<u64>,
    /// Measurement mode for every row.
    pub mode: Mode,
}

/// Final verdict of one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowVerdict {
    Pass,
    Fail,
    Skip,
}

impl RowVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowVerdict::Pass => "pass",
            RowVerdict::Fail => "fail",
            RowVerdict::Skip => "skip",
        }
    }
}

/// One sweep row. Check columns are `None` when the row was skipped or the
/// check does not apply; the floor checks in particular require an
/// exhaustive measurement, since a sampled maximum can undershoot a floor
/// without any bound being wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformanceRow {
    pub n: u64,
    pub d: u64,
    pub t: u64,
    pub strategy: Option<Strategy>,
    /// `"ok"`, `"skipped:<reason>"`, or `"error:<reason>"`; never contains
    /// a comma.
    pub status: String,
    pub instances: Option<u64>,
    pub max_tests: Option<u64>,
    pub max_yes: Option<u64>,
    /// Counting floor: fewest worst-case positives any strategy using at
    /// most `max_tests` tests must admit.
    pub yes_floor_tree: Option<u64>,
    /// Trivial floor: a hidden set of size `d` forces `d` positives.
    pub yes_floor_d: Option<u64>,
    pub yes_bound: Option<u64>,
    pub test_bound: Option<u64>,
    pub ok_yes_floor: Option<bool>,
    pub ok_yes_bound: Option<bool>,
    pub ok_test_bound: Option<bool>,
    pub ok_correct: Option<bool>,
    pub ok: RowVerdict,
}

impl ConformanceRow {
    fn blank(n: u64, d: u64, t: u64) -> ConformanceRow {
        ConformanceRow {
            n,
            d,
            t,
            strategy: None,
            status: String::new(),
            instances: None,
            max_tests: None,
            max_yes: None,
            yes_floor_tree: None,
            yes_floor_d: None,
            yes_bound: None,
            test_bound: None,
            ok_yes_floor: None,
            ok_yes_bound: None,
            ok_test_bound: None,
            ok_correct: None,
            ok: RowVerdict::Skip,
        }
    }

    fn skipped(n: u64, d: u64, t: u64, reason: &str) -> ConformanceRow {
        ConformanceRow { status: format!("skipped:{}", sanitize(reason)), ..ConformanceRow::blank(n, d, t) }
    }

    fn errored(n: u64, d: u64, t: u64, reason: &str) -> ConformanceRow {
        ConformanceRow {
            status: format!("error:{}", sanitize(reason)),
            ok: RowVerdict::Fail,
            ..ConformanceRow::blank(n, d, t)
        }
    }
}

fn sanitize(msg: &str) -> String {
    msg.replace(',', ";").replace(['\n', '\r'], " ")
}

impl Serialize for ConformanceRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ConformanceRow", 18)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("strategy", &self.strategy.map(|s| s.id()))?;
        st.serialize_field("f", &self.strategy.and_then(|s| s.staged_f()))?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("instances", &self.instances)?;
        st.serialize_field("max_tests", &self.max_tests)?;
        st.serialize_field("max_yes", &self.max_yes)?;
        st.serialize_field("yes_floor_tree", &self.yes_floor_tree)?;
        st.serialize_field("yes_floor_d", &self.yes_floor_d)?;
        st.serialize_field("yes_bound", &self.yes_bound)?;
        st.serialize_field("test_bound", &self.test_bound)?;
        st.serialize_field("ok_yes_floor", &self.ok_yes_floor.map(check_str))?;
        st.serialize_field("ok_yes_bound", &self.ok_yes_bound.map(check_str))?;
        st.serialize_field("ok_test_bound", &self.ok_test_bound.map(check_str))?;
        st.serialize_field("ok_correct", &self.ok_correct.map(check_str))?;
        st.serialize_field("ok", self.ok.as_str())?;
        st.end()
    }
}

fn check_str(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn row_inner(n: u64, d: u64, t: u64, mode: Mode, caps: &Caps) -> ConformanceRow {
    if n < 1 || d < 1 || d > n || t < 1 {
        return ConformanceRow::errored(n, d, t, "combination needs 1 <= d <= n and t >= 1");
    }
    let strategy = match choose_strategy(n, d, t) {
        Ok(s) => s,
        Err(Error::Infeasible(_)) => return ConformanceRow::skipped(n, d, t, "infeasible-budget"),
        Err(e) => return ConformanceRow::errored(n, d, t, &e.to_string()),
    };
    let report = match measure_max_yes(n as usize, d, strategy, mode, caps) {
        Ok(r) => r,
        Err(Error::WorkCap(_)) => {
            return ConformanceRow {
                strategy: Some(strategy),
                status: "skipped:work-cap".into(),
                ..ConformanceRow::blank(n, d, t)
            }
        }
        Err(e) => return ConformanceRow::errored(n, d, t, &e.to_string()),
    };
    if report.instances == 0 {
        return ConformanceRow::errored(n, d, t, "no instances measured");
    }
    let yes_floor_tree = if report.exhaustive {
        match min_yes_exact(n, d, report.max_tests) {
            Ok(y) => Some(y),
            Err(e) => return ConformanceRow::errored(n, d, t, &e.to_string()),
        }
    } else {
        None
    };
    let (test_bound, yes_bound) = match strategy {
        Strategy::Individual => (n, d),
        Strategy::Staged { f } => (staged_test_bound(n, d, f), u64::from(f) * d),
        Strategy::Hwang => (hwang_test_target(n, d), hwang_yes_bound(n, d)),
    };
    let ok_yes_floor = report.exhaustive.then(|| {
        report.max_yes >= yes_floor_tree.unwrap_or(0) && report.max_yes >= d
    });
    let ok_yes_bound = Some(report.max_yes <= yes_bound);
    let ok_test_bound = Some(report.max_tests <= test_bound);
    let ok_correct = Some(report.failures == 0);
    let all_ok = [ok_yes_floor, ok_yes_bound, ok_test_bound, ok_correct]
        .iter()
        .flatten()
        .all(|&ok| ok);
    ConformanceRow {
        n,
        d,
        t,
        strategy: Some(strategy),
        status: "ok".into(),
        instances: Some(report.instances),
        max_tests: Some(report.max_tests),
        max_yes: Some(report.max_yes),
        yes_floor_tree,
        yes_floor_d: report.exhaustive.then_some(d),
        yes_bound: Some(yes_bound),
        test_bound: Some(test_bound),
        ok_yes_floor,
        ok_yes_bound,
        ok_test_bound,
        ok_correct,
        ok: if all_ok { RowVerdict::Pass } else { RowVerdict::Fail },
    }
}

fn compute_row(n: u64, d: u64, t: u64, mode: Mode, caps: &Caps) -> ConformanceRow {
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| row_inner(n, d, t, mode, caps)))
        .unwrap_or_else(|_| ConformanceRow::errored(n, d, t, "internal panic during row evaluation"))
}

/// Run the full grid, one row per combination, in spec order. Rows are
/// computed in parallel when the worker cap allows it.
pub fn sweep(spec: &SweepSpec, caps: &Caps) -> Vec<ConformanceRow> {
    let mut combos = Vec::new();
    for &n in &spec.n_values {
        for &d in &spec.d_values {
            for &t in &spec.t_values {
                combos.push((n, d, t));
            }
        }
    }
    let run = |&(n, d, t): &(u64, u64, u64)| compute_row(n, d, t, spec.mode, caps);
    if caps.workers == 1 {
        return combos.iter().map(run).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(caps.workers).build() {
        Ok(pool) => pool.install(|| combos.par_iter().map(run).collect()),
        Err(_) => combos.iter().map(run).collect(),
    }
}

/// Header of the sweep CSV, fixed across versions.
pub const CSV_HEADER: &str = "n,d,t,strategy,f,status,instances,max_tests,max_yes,\
yes_floor_tree,yes_floor_d,yes_bound,test_bound,ok_yes_floor,ok_yes_bound,ok_test_bound,ok_correct,ok";

fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

fn opt_u64(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_check(v: Option<bool>) -> String {
    v.map(|b| check_str(b).to_string()).unwrap_or_default()
}

/// Render rows as CSV with the fixed header, newline-terminated.
pub fn rows_to_csv(rows: &[ConformanceRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            r.n.to_string(),
            r.d.to_string(),
            r.t.to_string(),
            r.strategy.map(|s| s.id().to_string()).unwrap_or_default(),
            r.strategy.and_then(|s| s.staged_f()).map(|f| f.to_string()).unwrap_or_default(),
            r.status.clone(),
            opt_u64(r.instances),
            opt_u64(r.max_tests),
            opt_u64(r.max_yes),
            opt_u64(r.yes_floor_tree),
            opt_u64(r.yes_floor_d),
            opt_u64(r.yes_bound),
            opt_u64(r.test_bound),
            opt_check(r.ok_yes_floor),
            opt_check(r.ok_yes_bound),
            opt_check(r.ok_test_bound),
            opt_check(r.ok_correct),
            r.ok.as_str().to_string(),
        ];
        let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Render rows as a pretty-printed JSON array, newline-terminated.
pub fn rows_to_json(rows: &[ConformanceRow]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
    out.push('\n');
    out
}

/// Format a float with 12 significant digits in scientific notation.
/// The rendering round-trips: parsing the output and formatting again
/// reproduces the same string.
pub fn format_sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.11e}")
}
