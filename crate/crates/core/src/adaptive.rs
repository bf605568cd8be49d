//! Adaptive and staged testing strategies, strategy selection under a test
//! budget, and exhaustive worst-case measurement of tests and positive
//! answers.
//!
//! All procedures interact with the hidden defective set only through an
//! [`OracleSession`], which records every test in order. Budgets are never
//! enforced mid-run: a procedure always runs to completion and the caller
//! compares the recorded counts against its budget afterwards.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combin::{ceil_log2_binom, ceil_ratio_pow, for_each_subset_up_to, sample_subset_up_to, subsets_up_to};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::model::{DefectiveSet, Transcript};
use crate::verify::Mode;

/// A testing oracle for one hidden defective set. Answers pool queries and
/// records the full transcript.
pub struct OracleSession {
    n: usize,
    hidden: DefectiveSet,
    transcript: Transcript,
}

impl OracleSession {
    /// Start a session over `n` items with the given hidden set.
    pub fn new(n: usize, hidden: DefectiveSet) -> OracleSession {
        OracleSession { n, hidden, transcript: Transcript::default() }
    }

    /// Ground set size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ask whether `pool` contains a defective; the answer is recorded.
    pub fn test(&mut self, pool: &[usize]) -> bool {
        let positive = pool.iter().any(|&i| self.hidden.contains(i));
        self.transcript.push(pool.to_vec(), positive);
        positive
    }

    /// Tests asked so far.
    pub fn tests(&self) -> usize {
        self.transcript.tests()
    }

    /// Positive answers so far.
    pub fn yes_count(&self) -> usize {
        self.transcript.yes_count()
    }

    /// The recorded transcript.
    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    /// Consume the session, keeping the transcript.
    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }
}

/// Group sizes of a staged procedure, one entry per stage, last entry 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagePlan {
    sizes: Vec<u64>,
}

impl StagePlan {
    /// Group size of each stage in order.
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Number of stages.
    pub fn stages(&self) -> usize {
        self.sizes.len()
    }
}

/// Plan an `f`-stage procedure for `n` items and at most `d` defectives:
/// stage `i` uses groups of `ceil((n/d)^((f-i)/f))` items, the final stage
/// tests individually. Sizes are clamped to stay nonincreasing.
pub fn plan_stages(n: u64, d: u64, f: u32) -> Result<StagePlan> {
    if f < 1 {
        return Err(Error::domain("a staged plan needs at least one stage"));
    }
    if d < 1 || n < d {
        return Err(Error::domain(format!("a staged plan needs 1 <= d <= n, got n={n} d={d}")));
    }
    let mut sizes = Vec::with_capacity(f as usize);
    let mut prev = u64::MAX;
    for i in 1..f {
        let k = ceil_ratio_pow(n, d, f - i, f).clamp(1, prev);
        sizes.push(k);
        prev = k;
    }
    sizes.push(1);
    Ok(StagePlan { sizes })
}

/// Worst-case test count of the staged procedure:
/// `f*d*ceil((n/d)^(1/f)) + f*d - 1`. Its worst-case positive count is
/// `f*d`.
pub fn staged_test_bound(n: u64, d: u64, f: u32) -> u64 {
    assert!(f >= 1 && d >= 1 && n >= d, "staged bound needs 1 <= d <= n and f >= 1");
    let cand = ceil_ratio_pow(n, d, 1, f);
    (f as u64) * d * cand + (f as u64) * d - 1
}

/// Test every item alone, in ascending order.
pub fn run_individual(session: &mut OracleSession) -> DefectiveSet {
    let n = session.n();
    let mut found = Vec::new();
    for i in 0..n {
        if session.test(&[i]) {
            found.push(i);
        }
    }
    DefectiveSet::new(found, n).expect("indices stay in range")
}

/// Run the staged procedure: each stage partitions the surviving items into
/// groups of the planned size and keeps the members of positive groups.
/// After the final individual stage the survivors are the defectives.
pub fn run_staged(session: &mut OracleSession, plan: &StagePlan) -> DefectiveSet {
    let n = session.n();
    let mut active: Vec<usize> = (0..n).collect();
    for &k in plan.sizes() {
        let mut next = Vec::new();
        for chunk in active.chunks(k as usize) {
            if session.test(chunk) {
                next.extend_from_slice(chunk);
            }
        }
        active = next;
    }
    DefectiveSet::new(active, n).expect("indices stay in range")
}

fn ceil_log2_u64(x: u64) -> u32 {
    debug_assert!(x >= 1);
    x.ilog2() + u32::from(!x.is_power_of_two())
}

/// Generalized binary splitting for at most `d` defectives.
///
/// While candidates remain: with `r` defectives still unaccounted for and
/// `np` candidates, a single candidate is tested directly; at most
/// `2r - 2` candidates are tested individually; otherwise the first
/// `2^a` candidates are tested as one group, where
/// `a = min(floor(log2((np - r + 1) / r)), ceil(log2(np)) - 1)`. A negative
/// group is discarded whole; a positive group is halved repeatedly to
/// extract one defective, discarding the halves cleared on the way and
/// returning the rest to the candidate list. Once `d` defectives are found
/// the remaining candidates are declared clean.
pub fn run_hwang(session: &mut OracleSession, d: u64) -> DefectiveSet {
    let n = session.n();
    let mut pool: Vec<usize> = (0..n).collect();
    let mut d_rem = d;
    let mut found = Vec::new();
    while !pool.is_empty() && d_rem > 0 {
        let np = pool.len() as u64;
        if np == 1 {
            if session.test(&pool) {
                found.push(pool[0]);
                d_rem -= 1;
            }
            pool.clear();
            continue;
        }
        if np <= 2 * d_rem - 2 {
            for &item in &pool {
                if d_rem == 0 {
                    break;
                }
                if session.test(&[item]) {
                    found.push(item);
                    d_rem -= 1;
                }
            }
            pool.clear();
            continue;
        }
        let alpha = ((np - d_rem + 1) / d_rem).ilog2();
        let g = 1usize << alpha.min(ceil_log2_u64(np) - 1);
        if !session.test(&pool[..g]) {
            pool.drain(..g);
            continue;
        }
        let mut seg_start = 0;
        let mut seg_len = g;
        while seg_len > 1 {
            let h = seg_len.div_ceil(2);
            if session.test(&pool[seg_start..seg_start + h]) {
                seg_len = h;
            } else {
                seg_start += h;
                seg_len -= h;
            }
        }
        found.push(pool[seg_start]);
        d_rem -= 1;
        pool.drain(..=seg_start);
    }
    DefectiveSet::new(found, n).expect("indices stay in range")
}

/// Worst-case test count the binary splitting procedure aims for:
/// `ceil(log2(C(n, d))) + d - 1`. Small instances can exceed it because the
/// procedure must also handle hidden sets smaller than `d`; the sweep
/// harness records such rows instead of rejecting them.
pub fn hwang_test_target(n: u64, d: u64) -> u64 {
    ceil_log2_binom(n, d) + d.saturating_sub(1)
}

/// Worst-case positive count of the binary splitting procedure: each of the
/// at most `d` extractions answers yes at most `ceil(log2(n))` times.
pub fn hwang_yes_bound(n: u64, d: u64) -> u64 {
    assert!(n >= 1, "hwang_yes_bound needs n >= 1");
    d * u64::from(ceil_log2_u64(n)).max(1)
}

/// A selected testing strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Test every item alone.
    Individual,
    /// Staged procedure with `f` stages.
    Staged { f: u32 },
    /// Generalized binary splitting.
    Hwang,
}

impl Strategy {
    /// Stable lowercase identifier.
    pub fn id(&self) -> &'static str {
        match self {
            Strategy::Individual => "individual",
            Strategy::Staged { .. } => "staged",
            Strategy::Hwang => "hwang",
        }
    }

    /// Stage count when staged.
    pub fn staged_f(&self) -> Option<u32> {
        match self {
            Strategy::Staged { f } => Some(*f),
            _ => None,
        }
    }
}

/// Pick a strategy for `n` items, at most `d` defectives, and a budget of
/// `t` tests.
///
/// A budget of `n` tests or more always admits individual testing. Below
/// the information floor `ceil(log2(C(n, d)))` no strategy can work and the
/// call fails as infeasible. In between, the smallest stage count
/// `f >= 2` whose staged procedure fits in `t` tests while keeping its
/// worst-case positive count `f*d` at or below `t/3` wins; when no stage
/// count qualifies the choice falls back to binary splitting.
pub fn choose_strategy(n: u64, d: u64, t: u64) -> Result<Strategy> {
    if n < 1 || d < 1 || d > n {
        return Err(Error::domain(format!("strategy choice needs 1 <= d <= n, got n={n} d={d}")));
    }
    if t >= n {
        return Ok(Strategy::Individual);
    }
    let floor = ceil_log2_binom(n, d);
    if t < floor {
        return Err(Error::Infeasible(format!(
            "budget of {t} tests is below the information floor {floor} for n={n} d={d}"
        )));
    }
    let mut f = 2u32;
    while 3 * u64::from(f) * d <= t {
        if staged_test_bound(n, d, f) <= t {
            return Ok(Strategy::Staged { f });
        }
        f += 1;
    }
    Ok(Strategy::Hwang)
}

/// A strategy bound to concrete parameters, ready to run.
#[derive(Debug, Clone)]
pub enum Runner {
    Individual,
    Staged(StagePlan),
    Hwang { d: u64 },
}

impl Runner {
    /// Resolve a strategy against `n` and `d`.
    pub fn prepare(n: u64, d: u64, strategy: Strategy) -> Result<Runner> {
        match strategy {
            Strategy::Individual => Ok(Runner::Individual),
            Strategy::Staged { f } => Ok(Runner::Staged(plan_stages(n, d, f)?)),
            Strategy::Hwang => Ok(Runner::Hwang { d }),
        }
    }

    /// Execute against one session.
    pub fn run(&self, session: &mut OracleSession) -> DefectiveSet {
        match self {
            Runner::Individual => run_individual(session),
            Runner::Staged(plan) => run_staged(session, plan),
            Runner::Hwang { d } => run_hwang(session, *d),
        }
    }
}

/// Worst-case behaviour of a strategy over hidden sets of size at most `d`.
/// Indices serialize 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxYesReport {
    /// Hidden sets replayed.
    pub instances: u64,
    /// True when every hidden set of size at most `d` was replayed.
    pub exhaustive: bool,
    /// Largest test count observed.
    pub max_tests: u64,
    /// Largest positive count observed.
    pub max_yes: u64,
    /// First hidden set attaining `max_tests`.
    pub worst_tests_hidden: Vec<usize>,
    /// First hidden set attaining `max_yes`.
    pub worst_yes_hidden: Vec<usize>,
    /// Instances answered incorrectly.
    pub failures: u64,
    /// First incorrect instance as (hidden, answered).
    pub first_failure: Option<(Vec<usize>, Vec<usize>)>,
}

impl Serialize for MaxYesReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        fn up(v: &[usize]) -> Vec<usize> {
            v.iter().map(|i| i + 1).collect()
        }
        #[derive(Serialize)]
        struct FailureOut {
            hidden: Vec<usize>,
            answered: Vec<usize>,
        }
        let failure = self
            .first_failure
            .as_ref()
            .map(|(h, a)| FailureOut { hidden: up(h), answered: up(a) });
        let mut st = serializer.serialize_struct("MaxYesReport", 8)?;
        st.serialize_field("instances", &self.instances)?;
        st.serialize_field("exhaustive", &self.exhaustive)?;
        st.serialize_field("max_tests", &self.max_tests)?;
        st.serialize_field("max_yes", &self.max_yes)?;
        st.serialize_field("worst_tests_hidden", &up(&self.worst_tests_hidden))?;
        st.serialize_field("worst_yes_hidden", &up(&self.worst_yes_hidden))?;
        st.serialize_field("failures", &self.failures)?;
        st.serialize_field("first_failure", &failure)?;
        st.end()
    }
}

/// Replay a strategy against hidden sets of size at most `d` and record the
/// worst test and positive counts plus any correctness failures.
///
/// `Mode::Auto` replays every hidden set, refusing when their number
/// exceeds the instance cap; sampled mode replays seeded random hidden
/// sets and can only establish worst cases seen, not true maxima.
pub fn measure_max_yes(n: usize, d: u64, strategy: Strategy, mode: Mode, caps: &Caps) -> Result<MaxYesReport> {
    let runner = Runner::prepare(n as u64, d, strategy)?;
    let mut report = MaxYesReport {
        instances: 0,
        exhaustive: matches!(mode, Mode::Auto),
        max_tests: 0,
        max_yes: 0,
        worst_tests_hidden: Vec::new(),
        worst_yes_hidden: Vec::new(),
        failures: 0,
        first_failure: None,
    };
    let replay = |hidden: &[usize], report: &mut MaxYesReport| {
        let set = DefectiveSet::new(hidden.iter().copied(), n).expect("enumerated in range");
        let mut session = OracleSession::new(n, set.clone());
        let answered = runner.run(&mut session);
        report.instances += 1;
        let tests = session.tests() as u64;
        let yes = session.yes_count() as u64;
        if tests > report.max_tests || report.instances == 1 {
            report.max_tests = tests;
            report.worst_tests_hidden = hidden.to_vec();
        }
        if yes > report.max_yes || report.instances == 1 {
            report.max_yes = yes;
            report.worst_yes_hidden = hidden.to_vec();
        }
        if answered != set {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some((hidden.to_vec(), answered.items().to_vec()));
            }
        }
    };
    match mode {
        Mode::Auto => {
            let count = subsets_up_to(n as u64, d);
            if count > caps.hidden_instances.into() {
                return Err(Error::WorkCap(format!(
                    "measuring n={n} d={d} needs {count} hidden instances, above cap {}; \
                     rerun in sampled mode with a seed",
                    caps.hidden_instances
                )));
            }
            for_each_subset_up_to(n, d as usize, |hidden| {
                replay(hidden, &mut report);
                true
            });
        }
        Mode::Sampled { seed, samples } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let hidden = sample_subset_up_to(&mut rng, n, d as usize);
                replay(&hidden, &mut report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(n: usize, hidden: &[usize]) -> OracleSession {
        OracleSession::new(n, DefectiveSet::new(hidden.iter().copied(), n).unwrap())
    }

    #[test]
    fn stage_plans_match_hand_computation() {
        assert_eq!(plan_stages(8, 1, 2).unwrap().sizes(), &[3, 1]);
        assert_eq!(plan_stages(8, 1, 3).unwrap().sizes(), &[4, 2, 1]);
        assert_eq!(plan_stages(12, 2, 2).unwrap().sizes(), &[3, 1]);
        assert_eq!(plan_stages(16, 1, 1).unwrap().sizes(), &[1]);
        assert!(plan_stages(2, 3, 2).is_err());
    }

    #[test]
    fn staged_test_bound_reference_table() {
        let rows: [(u64, u64, u32, u64); 12] = [
            (8, 1, 2, 7),
            (8, 1, 3, 8),
            (8, 2, 2, 11),
            (8, 2, 3, 17),
            (12, 1, 2, 9),
            (12, 1, 3, 11),
            (12, 2, 2, 15),
            (12, 2, 3, 17),
            (16, 1, 2, 9),
            (16, 1, 3, 11),
            (16, 2, 2, 15),
            (16, 2, 3, 17),
        ];
        for (n, d, f, want) in rows {
            assert_eq!(staged_test_bound(n, d, f), want, "n={n} d={d} f={f}");
        }
    }

    #[test]
    fn individual_testing_finds_the_hidden_set_in_n_tests() {
        let mut s = session(5, &[1, 4]);
        let got = run_individual(&mut s);
        assert_eq!(got.items(), &[1, 4]);
        assert_eq!(s.tests(), 5);
        assert_eq!(s.yes_count(), 2);
    }

    #[test]
    fn staged_procedure_is_exact_within_its_bounds() {
        let plan = plan_stages(8, 2, 2).unwrap();
        for_each_subset_up_to(8, 2, |hidden| {
            let mut s = session(8, hidden);
            let got = run_staged(&mut s, &plan);
            assert_eq!(got.items(), hidden, "hidden {hidden:?}");
            assert!(s.tests() as u64 <= staged_test_bound(8, 2, 2));
            assert!(s.yes_count() <= 4, "hidden {hidden:?} gave {} yes", s.yes_count());
            true
        });
    }

    #[test]
    fn splitting_trace_with_one_defective() {
        let mut s = session(8, &[2]);
        let got = run_hwang(&mut s, 1);
        assert_eq!(got.items(), &[2]);
        assert_eq!(s.tests(), 3);
        let pools: Vec<&[usize]> = s.transcript().entries().iter().map(|e| e.pool.as_slice()).collect();
        assert_eq!(pools, vec![&[0, 1, 2, 3][..], &[0, 1][..], &[2][..]]);
    }

    #[test]
    fn splitting_trace_with_no_defectives() {
        let mut s = session(8, &[]);
        let got = run_hwang(&mut s, 1);
        assert!(got.is_empty());
        assert_eq!(s.tests(), 4);
        assert_eq!(s.yes_count(), 0);
        let pools: Vec<&[usize]> = s.transcript().entries().iter().map(|e| e.pool.as_slice()).collect();
        assert_eq!(pools, vec![&[0, 1, 2, 3][..], &[4, 5][..], &[6][..], &[7][..]]);
    }

    #[test]
    fn splitting_trace_with_last_item_defective() {
        let mut s = session(8, &[7]);
        let got = run_hwang(&mut s, 1);
        assert_eq!(got.items(), &[7]);
        assert_eq!(s.tests(), 4);
    }

    #[test]
    fn splitting_is_exact_on_all_small_instances() {
        for d in 1..=2u64 {
            let rep = measure_max_yes(6, d, Strategy::Hwang, Mode::Auto, &Caps::default()).unwrap();
            assert!(rep.exhaustive);
            assert_eq!(rep.failures, 0, "d={d}: {:?}", rep.first_failure);
            assert!(rep.max_yes <= hwang_yes_bound(6, d));
        }
    }

    #[test]
    fn splitting_exceeds_its_target_on_known_small_sizes() {
        // with hidden sets allowed to be smaller than d, these sizes force
        // one extra test over the target count
        let rep = measure_max_yes(8, 1, Strategy::Hwang, Mode::Auto, &Caps::default()).unwrap();
        assert_eq!(rep.failures, 0);
        assert_eq!(rep.max_tests, 4);
        assert_eq!(hwang_test_target(8, 1), 3);
        let rep = measure_max_yes(2, 2, Strategy::Hwang, Mode::Auto, &Caps::default()).unwrap();
        assert_eq!(rep.failures, 0);
        assert_eq!(rep.max_tests, 2);
        assert_eq!(hwang_test_target(2, 2), 1);
    }

    #[test]
    fn strategy_choice_prefers_cheapest_adequate_form() {
        assert_eq!(choose_strategy(16, 2, 16).unwrap(), Strategy::Individual);
        assert_eq!(choose_strategy(64, 1, 20).unwrap(), Strategy::Staged { f: 2 });
        assert_eq!(choose_strategy(64, 1, 7).unwrap(), Strategy::Hwang);
        let err = choose_strategy(64, 1, 5).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)), "{err}");
        assert!(choose_strategy(4, 5, 10).is_err());
    }

    #[test]
    fn staged_choice_skips_stage_counts_that_miss_the_budget() {
        // f = 2 needs 17 tests, f = 3 fits in 14
        assert_eq!(choose_strategy(64, 1, 15).unwrap(), Strategy::Staged { f: 3 });
        // the positive-count share 3*f*d already exceeds t = 10 at f = 2
        assert_eq!(choose_strategy(16, 2, 10).unwrap(), Strategy::Hwang);
    }

    #[test]
    fn measurement_covers_every_instance_and_tracks_worst_cases() {
        let rep = measure_max_yes(4, 1, Strategy::Individual, Mode::Auto, &Caps::default()).unwrap();
        assert_eq!(rep.instances, 5);
        assert!(rep.exhaustive);
        assert_eq!(rep.max_tests, 4);
        assert_eq!(rep.max_yes, 1);
        assert_eq!(rep.failures, 0);
        assert_eq!(rep.worst_yes_hidden, vec![0]);
    }

    #[test]
    fn staged_measurement_stays_within_declared_bounds() {
        let rep = measure_max_yes(8, 1, Strategy::Staged { f: 2 }, Mode::Auto, &Caps::default()).unwrap();
        assert_eq!(rep.instances, 9);
        assert_eq!(rep.failures, 0);
        assert!(rep.max_tests <= 7);
        assert!(rep.max_yes <= 2);
    }

    #[test]
    fn sampled_measurement_reports_itself_as_non_exhaustive() {
        let rep = measure_max_yes(10, 2, Strategy::Hwang, Mode::Sampled { seed: 5, samples: 40 }, &Caps::default()).unwrap();
        assert!(!rep.exhaustive);
        assert_eq!(rep.instances, 40);
        assert_eq!(rep.failures, 0);
    }

    #[test]
    fn measurement_refuses_oversize_exhaustive_runs() {
        let caps = Caps { hidden_instances: 10, ..Caps::default() };
        let err = measure_max_yes(16, 3, Strategy::Hwang, Mode::Auto, &caps).unwrap_err();
        assert!(matches!(err, Error::WorkCap(_)));
    }

    #[test]
    fn reports_serialize_one_indexed() {
        let rep = MaxYesReport {
            instances: 3,
            exhaustive: true,
            max_tests: 4,
            max_yes: 2,
            worst_tests_hidden: vec![0, 2],
            worst_yes_hidden: vec![1],
            failures: 1,
            first_failure: Some((vec![0], vec![0, 1])),
        };
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["worst_tests_hidden"], serde_json::json!([1, 3]));
        assert_eq!(json["first_failure"]["answered"], serde_json::json!([1, 2]));
    }
}
