//! Closed-form bounds on the number of positive responses needed by group
//! testing strategies, plus entropy helpers and the exact counting floor.
//!
//! Every evaluator follows one degenerate-input convention: a bound of the
//! shape `num / log2(alpha)` evaluates to `0` when `num == 0`, and to
//! `+Infinity` when `num > 0` but `log2(alpha) <= 0` (the estimate carries no
//! information). Values are extended reals, never errors, so sweeps can
//! tabulate edge cases.
//!
//! The scalar helpers panic on arguments outside their stated domains;
//! [`evaluate`] validates first and returns a `Domain` error instead, which
//! is the entry point the CLI uses.

use num_bigint::BigUint;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combin::{binomial, ceil_log2_binom};
use crate::error::{Error, Result};

/// log base 2.
fn lg(x: f64) -> f64 {
    x.log2()
}

const E: f64 = std::f64::consts::E;

/// `num / log2(alpha)` under the degenerate-input convention: `0` when the
/// numerator vanishes, `+Infinity` when the denominator is not positive.
fn ratio_term(num: f64, alpha: f64) -> f64 {
    if num == 0.0 {
        return 0.0;
    }
    if alpha <= 1.0 {
        return f64::INFINITY;
    }
    num / lg(alpha)
}

// ---------------------------------------------------------------------------
// Entropy helpers
// ---------------------------------------------------------------------------

/// Binary entropy `H(x) = -x log2 x - (1-x) log2 (1-x)`, with `H(0) = H(1) = 0`.
///
/// # Panics
/// Panics when `x` is outside `[0, 1]`.
///
/// # Example
/// ```
/// use gt_core::bounds::binary_entropy;
/// assert!((binary_entropy(0.5) - 1.0).abs() < 1e-15);
/// ```
pub fn binary_entropy(x: f64) -> f64 {
    assert!((0.0..=1.0).contains(&x), "binary_entropy needs x in [0,1], got {x}");
    if x == 0.0 || x == 1.0 {
        return 0.0;
    }
    -x * lg(x) - (1.0 - x) * lg(1.0 - x)
}

/// The standard overestimate `(a/b) * log2(e*b/a)` of `H(a/b)`.
///
/// # Panics
/// Panics unless `1 <= a <= b`.
pub fn entropy_upper_bound(a: u64, b: u64) -> f64 {
    assert!(a >= 1 && a <= b, "entropy_upper_bound needs 1 <= a <= b, got a={a} b={b}");
    let (a, b) = (a as f64, b as f64);
    (a / b) * lg(E * b / a)
}

// ---------------------------------------------------------------------------
// Exact counting floor
// ---------------------------------------------------------------------------

/// Smallest `y` such that `sum_{i=0}^{y} C(t,i) >= C(n,d)`: no strategy that
/// allows up to `d` defectives among `n` items and asks `t` tests can always
/// finish with fewer than this many positive responses.
///
/// Computed in exact integer arithmetic. Returns an `Infeasible` error when
/// even `y = t` is not enough, i.e. when `2^t < C(n,d)`.
///
/// # Panics
/// Panics unless `1 <= d <= n` and `t >= 1`.
pub fn min_yes_exact(n: u64, d: u64, t: u64) -> Result<u64> {
    assert!(d >= 1 && d <= n && t >= 1, "min_yes_exact needs 1 <= d <= n and t >= 1");
    let target = binomial(n, d);
    let mut acc = BigUint::one(); // C(t, 0)
    if acc >= target {
        return Ok(0);
    }
    let mut term = BigUint::one();
    for y in 1..=t {
        // C(t, y) from C(t, y-1)
        term = term * BigUint::from(t - y + 1) / BigUint::from(y);
        acc += &term;
        if acc >= target {
            return Ok(y);
        }
    }
    Err(Error::Infeasible(format!(
        "t={t} tests cannot distinguish C({n},{d}) = {target} outcomes even if every answer is yes"
    )))
}

// ---------------------------------------------------------------------------
// Adaptive strategies
// ---------------------------------------------------------------------------

/// Lower bound on the worst-case positive responses of any adaptive strategy
/// that finds up to `d` defectives among `n` items within `t` tests and `y`
/// positive responses.
///
/// # Panics
/// Panics unless `1 <= d <= n`, `t >= 1`, `1 <= y <= t`.
pub fn adaptive_yes_lower(n: u64, d: u64, t: u64, y: u64) -> f64 {
    assert!(d >= 1 && d <= n && t >= 1 && y >= 1 && y <= t, "adaptive_yes_lower domain violation");
    let num = d as f64 * lg(n as f64 / d as f64);
    let v = if 2 * y > t {
        ratio_term(num, 4.0)
    } else {
        ratio_term(num, E * t as f64 / y as f64)
    };
    (d as f64).max(v)
}

/// Weaker closed form of [`adaptive_yes_lower`] that removes the dependence
/// on `y` by substituting the bound's own fixed point.
///
/// # Panics
/// Panics unless `1 <= d <= n` and `t >= 1`.
pub fn adaptive_yes_lower_closed(n: u64, d: u64, t: u64) -> f64 {
    assert!(d >= 1 && d <= n && t >= 1, "adaptive_yes_lower_closed domain violation");
    let num = d as f64 * lg(n as f64 / d as f64);
    if num == 0.0 {
        return d as f64;
    }
    let alpha2 = E * t as f64 * lg(E * t as f64 / d as f64) / num;
    let v = if alpha2 <= 0.0 { f64::INFINITY } else { ratio_term(num, alpha2) };
    (d as f64).max(v)
}

/// Upper bound on the positive responses needed by the best adaptive
/// strategy under the same parameters.
///
/// # Panics
/// Panics unless `1 <= d <= n`, `t >= 1`, `1 <= y <= t`.
pub fn adaptive_yes_upper(n: u64, d: u64, t: u64, y: u64) -> f64 {
    assert!(d >= 1 && d <= n && t >= 1 && y >= 1 && y <= t, "adaptive_yes_upper domain violation");
    if t >= n {
        return d as f64;
    }
    if 3 * y > t {
        return (ceil_log2_binom(n, d) + d) as f64;
    }
    let gamma = (t as f64 + 1.0) / y as f64 - 1.0;
    ratio_term(d as f64 * lg(n as f64 / d as f64), gamma)
}

// ---------------------------------------------------------------------------
// Size bounds for constrained-weight families
// ---------------------------------------------------------------------------

fn assert_tsdp(t: u64, s: u64, d: u64, p: u64) {
    assert!(
        t >= 1 && s >= 1 && d >= 1 && p >= 1 && s <= t,
        "family-size bounds need t,s,d,p >= 1 and s <= t (got t={t} s={s} d={d} p={p})"
    );
}

/// Upper bound on the number of columns of a `(p, d)` cover-free family
/// over `t` rows in which every union of `d` columns has weight at most `s`.
///
/// # Panics
/// Panics unless `t, s, d, p >= 1` and `s <= t`.
pub fn cff_pd_size_upper(t: u64, s: u64, d: u64, p: u64) -> f64 {
    if let Some(exact) = cff_pd_size_upper_exact(t, s, d, p) {
        return big_to_f64(&exact);
    }
    assert_tsdp(t, s, d, p);
    let (tf, sf, df, pf) = (t as f64, s as f64, d as f64, p as f64);
    if (d == 1 && p > 1) || (2 <= d && d < 2 * p) {
        if t < 2 * s {
            (pf + df - 1.0) * (tf / df).exp2()
        } else {
            (pf + df - 1.0) * (E * tf / sf).powf(sf / df)
        }
    } else {
        // d >= 2p
        let x = d / (2 * p);
        let expo = s.div_ceil(p * x * x + x);
        let base = E * tf * df * (df + 2.0) / (4.0 * pf * sf);
        pf * base.powf(expo as f64) + df / 2.0 + 2.0 * pf - 2.0
    }
}

/// Exact integer value of [`cff_pd_size_upper`] in the cases where the bound
/// is a binomial coefficient (`d = 1`, `p = 1`); `None` otherwise.
pub fn cff_pd_size_upper_exact(t: u64, s: u64, d: u64, p: u64) -> Option<BigUint> {
    assert_tsdp(t, s, d, p);
    if d == 1 && p == 1 {
        if t < 2 * s {
            Some(binomial(t, t.div_ceil(2)))
        } else {
            Some(binomial(t, s))
        }
    } else {
        None
    }
}

/// [`cff_pd_size_upper`] specialized to `p = 1` (plain `d`-cover-free
/// families with bounded unions).
pub fn cff_size_upper(t: u64, s: u64, d: u64) -> f64 {
    cff_pd_size_upper(t, s, d, 1)
}

/// Exact companion of [`cff_size_upper`]; `Some` only for `d = 1`.
pub fn cff_size_upper_exact(t: u64, s: u64, d: u64) -> Option<BigUint> {
    cff_pd_size_upper_exact(t, s, d, 1)
}

/// Upper bound on the number of columns of a `d`-separable design over `t`
/// rows in which every union of `d` columns has weight at most `s`.
///
/// # Panics
/// Panics unless `t, s, d >= 1` and `s <= t`.
pub fn sep_size_upper(t: u64, s: u64, d: u64) -> f64 {
    if let Some(exact) = sep_size_upper_exact(t, s, d) {
        return big_to_f64(&exact);
    }
    assert_tsdp(t, s, d, 1);
    let (tf, sf, df) = (t as f64, s as f64, d as f64);
    match d {
        1 => (sf * lg(E * tf / sf)).exp2(),
        2 => {
            if t < 2 * s {
                ((t as f64 + 1.0) / 2.0).exp2() + 1.0
            } else {
                ((sf / 2.0) * lg(E * tf / sf) + 0.5).exp2() + 1.0
            }
        }
        _ => {
            let x = (d - 1) / 2;
            let expo = s.div_ceil(x * x + x);
            (E * tf * (df * df - 1.0) / (4.0 * sf)).powf(expo as f64) + (df - 1.0) / 2.0
        }
    }
}

/// Exact integer value of [`sep_size_upper`] in the one case where the bound
/// is a pure power of two (`d = 1`, `t < 2s`); `None` otherwise.
pub fn sep_size_upper_exact(t: u64, s: u64, d: u64) -> Option<BigUint> {
    assert_tsdp(t, s, d, 1);
    if d == 1 && t < 2 * s {
        Some(BigUint::one() << (2 * s - 1))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Non-adaptive yes bounds
// ---------------------------------------------------------------------------

/// Lower bound on the worst-case positive responses of any non-adaptive
/// strategy with `t` tests that handles up to `d` defectives among `n`
/// items, given that the strategy is allowed `y` positives.
///
/// Intermediate estimates that lose all information (a log argument at or
/// below 1) collapse the bound to the trivial floor `d`.
///
/// # Panics
/// Panics unless `1 <= d <= n`, `t >= 1`, `1 <= y <= t`.
pub fn nonadaptive_yes_lower(n: u64, d: u64, t: u64, y: u64) -> f64 {
    assert!(d >= 1 && d <= n && t >= 1 && y >= 1 && y <= t, "nonadaptive_yes_lower domain violation");
    let (nf, tf, df) = (n as f64, t as f64, d as f64);
    let beta = match d {
        1 => {
            if 2 * y > t {
                lg(nf + 1.0) / 2.0
            } else {
                let l = lg(nf);
                if l <= 0.0 {
                    0.0
                } else {
                    ratio_term(l, E * tf * lg(E * tf) / l)
                }
            }
        }
        2 => {
            if 2 * y > t {
                lg(nf - 1.0)
            } else {
                let l2 = 2.0 * lg(nf - 1.0) - 1.0;
                if l2 <= 0.0 {
                    0.0
                } else {
                    ratio_term(l2, E * tf * lg(E * tf / 2.0) / l2)
                }
            }
        }
        _ => {
            let x = (d - 1) / 2;
            let k = (x * x + x) as f64;
            let m = lg(nf - df / 2.0 + 0.5);
            let eta = if 2 * y > t {
                E * (df - 1.0) * (df - 1.0) / 2.0
            } else {
                let den = m - lg(E * tf * df / 4.0);
                if den <= 0.0 {
                    f64::INFINITY
                } else {
                    2.0 * E * tf * lg(E * tf * df / 4.0) / den
                }
            };
            if eta.is_infinite() {
                -k
            } else if eta <= 1.0 {
                // no information in the estimate; fall to the trivial floor
                0.0
            } else {
                k * (m / lg(eta) - 1.0)
            }
        }
    };
    df.max(beta)
}

/// Existence bound: at least this many columns admit a `(p, d)` cover-free
/// family over `t` rows whose unions of `d` columns weigh at most `s`.
///
/// # Panics
/// Panics unless `t, s, d, p >= 1` and `s <= t`.
pub fn cff_pd_exists(t: u64, s: u64, d: u64, p: u64) -> f64 {
    assert_tsdp(t, s, d, p);
    let (tf, sf, df, pf) = (t as f64, s as f64, d as f64, p as f64);
    let s_eff = if t < 2 * s { sf } else { sf * lg(E * tf / sf) };
    let expo = (pf / (df * (df + pf))) * (s_eff - df * lg(E * (df + pf) / pf) - df / pf);
    (1.0 / E) * (pf + df) * expo.exp2()
}

/// [`cff_pd_exists`] specialized to `p = 1`.
pub fn cff_exists(t: u64, s: u64, d: u64) -> f64 {
    cff_pd_exists(t, s, d, 1)
}

/// Upper bound on the positive responses of the best non-adaptive strategy
/// for up to `d` defectives among `n` items with `t` tests and `y` allowed
/// positives.
///
/// # Panics
/// Panics unless `1 <= d < n`, `t >= 1`, `1 <= y <= t`.
pub fn nonadaptive_yes_upper(n: u64, d: u64, t: u64, y: u64) -> f64 {
    assert!(d >= 1 && n > d && t >= 1 && y >= 1 && y <= t, "nonadaptive_yes_upper domain violation");
    let (nf, df, tf) = (n as f64, d as f64, t as f64);
    let a = lg(E * nf / (df + 1.0));
    if t < 2 * y {
        return df * (df + 1.0) * a + df * lg(E * (df + 1.0)) + df;
    }
    let b = (lg(E * (df + 1.0)) + 1.0) / (df + 1.0);
    let mu = E * tf * lg(2.0 * E) / (df * (df + 1.0) * (a + lg(2.0 * E.sqrt())));
    ratio_term(df * (df + 1.0) * (a + b), mu)
}

/// Variant of the `2y <= t` branch of [`nonadaptive_yes_upper`] that keeps
/// the dependence on `y` instead of substituting the budget-driven estimate.
///
/// # Panics
/// Panics unless `1 <= d < n`, `t >= 1`, `1 <= y <= t`.
pub fn nonadaptive_yes_upper_with_y(n: u64, d: u64, t: u64, y: u64) -> f64 {
    assert!(d >= 1 && n > d && t >= 1 && y >= 1 && y <= t, "nonadaptive_yes_upper_with_y domain violation");
    let (nf, df, tf, yf) = (n as f64, d as f64, t as f64, y as f64);
    let a = lg(E * nf / (df + 1.0));
    let b = (lg(E * (df + 1.0)) + 1.0) / (df + 1.0);
    ratio_term(df * (df + 1.0) * (a + b), E * tf / yf)
}

// ---------------------------------------------------------------------------
// Two-stage strategies
// ---------------------------------------------------------------------------

/// Upper bound on the positive responses of the best two-stage strategy with
/// stage-one surplus `p`: at most `p + d - 1` candidates survive stage one
/// and are confirmed individually in stage two.
///
/// # Panics
/// Panics unless `d, p >= 1`, `t >= d + p`, `n >= d + p`, `1 <= y <= t`.
pub fn twostage_yes_upper(n: u64, d: u64, t: u64, p: u64, y: u64) -> f64 {
    assert!(
        d >= 1 && p >= 1 && t >= d + p && n >= d + p && y >= 1 && y <= t,
        "twostage_yes_upper domain violation"
    );
    let (nf, df, tf, pf, yf) = (n as f64, d as f64, t as f64, p as f64, y as f64);
    let thr = (tf + df - pf + 1.0) / 2.0;
    let head = (df * (df + pf) / pf) * lg(E * nf / (df + pf)) + df * lg(E * (df + pf) / pf) + df / pf;
    if yf > thr {
        return head + df;
    }
    let chi = E * (tf - df - pf + 1.0) * lg(2.0 * E)
        / ((df * (df + pf) / pf) * (lg(E * nf / (df + pf)) + lg(E * 2f64.sqrt())));
    ratio_term(head, chi) + df
}

/// Variant of the below-threshold branch of [`twostage_yes_upper`] that
/// keeps the dependence on `y`. Defined only for `y > d`.
///
/// # Panics
/// Panics unless the [`twostage_yes_upper`] domain holds and `y > d`.
pub fn twostage_yes_upper_with_y(n: u64, d: u64, t: u64, p: u64, y: u64) -> f64 {
    assert!(
        d >= 1 && p >= 1 && t >= d + p && n >= d + p && y > d && y <= t,
        "twostage_yes_upper_with_y domain violation"
    );
    let (nf, df, tf, pf, yf) = (n as f64, d as f64, t as f64, p as f64, y as f64);
    let head = (df * (df + pf) / pf) * lg(E * nf / (df + pf)) + df * lg(E * (df + pf) / pf) + df / pf;
    ratio_term(head, E * (tf - df - pf + 1.0) / (yf - df)) + df
}

/// Two-stage bound specialized to surplus `p = d`, stated with slightly
/// different case thresholds than the general form.
///
/// # Panics
/// Panics unless `d >= 1`, `t >= 2d`, `n >= 2d`, `1 <= y <= t`.
pub fn twostage_yes_upper_pd(n: u64, d: u64, t: u64, y: u64) -> f64 {
    assert!(
        d >= 1 && t >= 2 * d && n >= 2 * d && y >= 1 && y <= t,
        "twostage_yes_upper_pd domain violation"
    );
    let (nf, df, tf) = (n as f64, d as f64, t as f64);
    let head = 2.0 * df * lg(E * nf / (2.0 * df)) + df * lg(2.0 * E);
    if 2 * y > t {
        return head + df + 1.0;
    }
    let chi = E * (tf - 2.0 * df + 1.0) * lg(2.0 * E)
        / (2.0 * df * (lg(E * nf / (2.0 * df)) + lg(E * 2f64.sqrt())));
    ratio_term(head + 1.0, chi) + df
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
}

// ---------------------------------------------------------------------------
// Structured evaluation
// ---------------------------------------------------------------------------

/// The bound families the structured evaluator can report on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    MinYes,
    AdaptiveYesLower,
    AdaptiveYesUpper,
    CffSizeUpper,
    CffPdSizeUpper,
    SepSizeUpper,
    NonadaptiveYesLower,
    CffExists,
    CffPdExists,
    NonadaptiveYesUpper,
    TwostageYesUpper,
    TwostageYesUpperPd,
}

impl Theorem {
    /// Stable kebab-case identifier, as accepted on the command line.
    pub fn id(self) -> &'static str {
        match self {
            Theorem::MinYes => "min-yes",
            Theorem::AdaptiveYesLower => "adaptive-yes-lower",
            Theorem::AdaptiveYesUpper => "adaptive-yes-upper",
            Theorem::CffSizeUpper => "cff-size-upper",
            Theorem::CffPdSizeUpper => "cff-pd-size-upper",
            Theorem::SepSizeUpper => "sep-size-upper",
            Theorem::NonadaptiveYesLower => "nonadaptive-yes-lower",
            Theorem::CffExists => "cff-exists",
            Theorem::CffPdExists => "cff-pd-exists",
            Theorem::NonadaptiveYesUpper => "nonadaptive-yes-upper",
            Theorem::TwostageYesUpper => "twostage-yes-upper",
            Theorem::TwostageYesUpperPd => "twostage-yes-upper-pd",
        }
    }

    /// All theorem identifiers, for help text.
    pub fn all_ids() -> Vec<&'static str> {
        [
            Theorem::MinYes,
            Theorem::AdaptiveYesLower,
            Theorem::AdaptiveYesUpper,
            Theorem::CffSizeUpper,
            Theorem::CffPdSizeUpper,
            Theorem::SepSizeUpper,
            Theorem::NonadaptiveYesLower,
            Theorem::CffExists,
            Theorem::CffPdExists,
            Theorem::NonadaptiveYesUpper,
            Theorem::TwostageYesUpper,
            Theorem::TwostageYesUpperPd,
        ]
        .iter()
        .map(|t| t.id())
        .collect()
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        match s {
            "min-yes" => Ok(Theorem::MinYes),
            "adaptive-yes-lower" => Ok(Theorem::AdaptiveYesLower),
            "adaptive-yes-upper" => Ok(Theorem::AdaptiveYesUpper),
            "cff-size-upper" => Ok(Theorem::CffSizeUpper),
            "cff-pd-size-upper" => Ok(Theorem::CffPdSizeUpper),
            "sep-size-upper" => Ok(Theorem::SepSizeUpper),
            "nonadaptive-yes-lower" => Ok(Theorem::NonadaptiveYesLower),
            "cff-exists" => Ok(Theorem::CffExists),
            "cff-pd-exists" => Ok(Theorem::CffPdExists),
            "nonadaptive-yes-upper" => Ok(Theorem::NonadaptiveYesUpper),
            "twostage-yes-upper" => Ok(Theorem::TwostageYesUpper),
            "twostage-yes-upper-pd" => Ok(Theorem::TwostageYesUpperPd),
            other => Err(Error::domain(format!(
                "unknown theorem id {other:?}; known: {}",
                Theorem::all_ids().join(", ")
            ))),
        }
    }
}

/// Inputs to a structured bound evaluation. Unused fields may stay `None`;
/// [`evaluate`] reports which ones a theorem requires.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BoundQuery {
    pub n: Option<u64>,
    pub d: Option<u64>,
    pub t: Option<u64>,
    pub y: Option<u64>,
    pub p: Option<u64>,
    pub s: Option<u64>,
}

/// A numeric bound value: a floating-point approximation, possibly infinite,
/// plus the exact integer when the closed form is integral.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub approx: f64,
    pub exact: Option<String>,
}

impl BoundValue {
    fn approximate(approx: f64) -> Self {
        BoundValue { approx, exact: None }
    }

    fn exact_int(value: &BigUint) -> Self {
        BoundValue { approx: big_to_f64(value), exact: Some(value.to_string()) }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BoundValue", 2)?;
        if self.approx.is_finite() {
            st.serialize_field("approx", &self.approx)?;
        } else if self.approx > 0.0 {
            st.serialize_field("approx", "inf")?;
        } else {
            st.serialize_field("approx", "-inf")?;
        }
        st.serialize_field("exact", &self.exact)?;
        st.end()
    }
}

/// One case of a bound together with its value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchValue {
    /// Stable label of the case, e.g. `"2y<=t"`.
    pub case: String,
    pub value: BoundValue,
}

/// Result of a structured evaluation: the chosen case and value when the
/// inputs decide one, and every candidate branch otherwise. A missing `y`
/// never silently picks a case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub inputs: BoundQuery,
    /// Label of the case the inputs select, when they select one.
    pub case: Option<String>,
    /// The bound under the selected case.
    pub value: Option<BoundValue>,
    /// Every case consistent with the known inputs, including alternates.
    pub branches: Vec<BranchValue>,
}

fn need(field: Option<u64>, name: &str, theorem: Theorem) -> Result<u64> {
    field.ok_or_else(|| {
        Error::domain(format!("theorem {} requires parameter {name}", theorem.id()))
    })
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(msg.to_string()))
    }
}

/// Evaluate one theorem on a query, validating the domain first.
///
/// When the deciding input (`y`) is absent and the theorem branches on it,
/// the report lists every branch and leaves `case`/`value` unset.
pub fn evaluate(theorem: Theorem, q: &BoundQuery) -> Result<BoundReport> {
    let mut report = BoundReport { theorem, inputs: *q, case: None, value: None, branches: Vec::new() };
    let pick = |report: &mut BoundReport, case: &str, value: BoundValue| {
        report.case = Some(case.to_string());
        report.value = Some(value.clone());
        report.branches.push(BranchValue { case: case.to_string(), value });
    };
    match theorem {
        Theorem::MinYes => {
            let n = need(q.n, "n", theorem)?;
            let d = need(q.d, "d", theorem)?;
            let t = need(q.t, "t", theorem)?;
            check(d >= 1 && d <= n && t >= 1, "min-yes needs 1 <= d <= n and t >= 1")?;
            let y = min_yes_exact(n, d, t)?;
            pick(&mut report, "exact", BoundValue::exact_int(&BigUint::from(y)));
        }
        Theorem::AdaptiveYesLower => {
            let n = need(q.n, "n", theorem)?;
            let d = need(q.d, "d", theorem)?;
            let t = need(q.t, "t", theorem)?;
            check(d >= 1 && d <= n && t >= 1, "adaptive-yes-lower needs 1 <= d <= n and t >= 1")?;
            let closed = BoundValue::approximate(adaptive_yes_lower_closed(n, d, t));
            match q.y {
                Some(y) => {
                    check(y >= 1 && y <= t, "adaptive-yes-lower needs 1 <= y <= t")?;
                    let case = if 2 * y > t { "2y>t" } else { "2y<=t" };
                    pick(&mut report, case, BoundValue::approximate(adaptive_yes_lower(n, d, t, y)));
                }
                None => {
                    report.branches.push(BranchValue {
                        case: "2y>t".into(),
                        value: BoundValue::approximate(adaptive_yes_lower(n, d, t, t)),
                    });
                    if t >= 2 {
                        report.branches.push(BranchValue {
                            case: "2y<=t".into(),
                            value: BoundValue::approximate(adaptive_yes_lower(n, d, t, t / 2)),
                        });
                    }
                }
            }
            report.branches.push(BranchValue { case: "closed-form".into(), value: closed });
        }
        Theorem::AdaptiveYesUpper => {
            let n = need(q.n, "n", theorem)?;
            let d = need(q.d, "d", theorem)?;
            let t = need(q.t, "t", theorem)?;
            check(d >= 1 && d <= n && t >= 1, "adaptive-yes-upper needs 1 <= d <= n and t >= 1")?;
            if t >= n {
                pick(&mut report, "t>=n", BoundValue::approximate(d as f64));
            } else {
                match q.y {
                    Some(y) => {
                        check(y >= 1 && y <= t, "adaptive-yes-upper needs 1 <= y <= t")?;
                        let case = if 3 * y > t { "3y>t" } else { "3y<=t" };
                        pick(&mut report, case, BoundValue::approximate(adaptive_yes_upper(n, d, t, y)));
                    }
                    None => {
                        report.branches.push(BranchValue {
                            case: "3y>t".into(),
                            value: BoundValue::approximate((ceil_log2_binom(n, d) + d) as f64),
                        });
                        if t >= 3 {
                            report.branches.push(BranchValue {
                                case: "3y<=t".into(),
                                value: BoundValue::approximate(adaptive_yes_upper(n, d, t, t / 3)),
                            });
                        }
                    }
                }
            }
        }
        Theorem::CffSizeUpper | Theorem::CffPdSizeUpper => {
            let t = need(q.t, "t", theorem)?;
            let s = need(q.s, "s", theorem)?;
            let d = need(q.d, "d", theorem)?;
            let p = if theorem == Theorem::CffSizeUpper { 1 } else { need(q.p, "p", theorem)? };
            check(t >= 1 && s >= 1 && d >= 1 && p >= 1 && s <= t, "size bounds need t,s,d,p >= 1 and s <= t")?;
            let case = if d == 1 && p == 1 {
                if t < 2 * s { "d=1,p=1,t<2s" } else { "d=1,p=1,t>=2s" }
            } else if d < 2 * p {
                if t < 2 * s { "d<2p,t<2s" } else { "d<2p,t>=2s" }
            } else {
                "d>=2p"
            };
            let value = match cff_pd_size_upper_exact(t, s, d, p) {
                Some(exact) => BoundValue::exact_int(&exact),
                None => BoundValue::approximate(cff_pd_size_upper(t, s, d, p)),
            };
            pick(&mut report, case, value);
        }
        Theorem::SepSizeUpper => {
            let t = need(q.t, "t", theorem)?;
            let s = need(q.s, "s", theorem)?;
            let d = need(q.d, "d", theorem)?;
            check(t >= 1 && s >= 1 && d >= 1 && s <= t, "sep-size-upper needs t,s,d >= 1 and s <= t")?;
            let case = match d {
                1 => {
                    if t < 2 * s { "d=1,t<2s" } else { "d=1,t>=2s" }
                }
                2 => {
                    if t < 2 * s { "d=2,t<2s" } else { "d=2,t>=2s" }
                }
                _ => "d>=3",
            };
            let value = match sep_size_upper_exact(t, s, d) {
                Some(exact) => BoundValue::exact_int(&exact),
                None => BoundValue::approximate(sep_size_upper(t, s, d)),
            };
            pick(&mut report, case, value);
        }
        Theorem::NonadaptiveYesLower => {
            let n = need(q.n, "n", theorem)?;
            let d = need(q.d, "d", theorem)?;
            let t = need(q.t, "t", theorem)?;
            check(d >= 1 && d <= n && t >= 1, "nonadaptive-yes-lower needs 1 <= d <= n and t >= 1")?;
            match q.y {
                Some(y) => {
                    check(y >= 1 && y <= t, "nonadaptive-yes-lower needs 1 <= y <= t")?;
                    let case = if 2 * y > t { "2y>t" } else { "2y<=t" };
                    pick(&mut report, case, BoundValue::approximate(nonadaptive_yes_lower(n, d, t, y)));
                }
                None => {
                    report.branches.push(BranchValue {
                        case: "2y>t".into(),
                        value: BoundValue::approximate(nonadaptive_yes_lower(n, d, t, t)),
                    });
                    if t >= 2 {
                        report.branches.push(BranchValue {
                            case: "2y<=t".into(),
                            value: BoundValue::approximate(nonadaptive_yes_lower(n, d, t, t / 2)),
                        });
                    }
                }
            }
        }
        Theorem::CffExists | Theorem::CffPdExists => {
            let t = need(q.t, "t", theorem)?;
            let s = need(q.s, "s", theorem)?;
            let d = need(q.d, "d", theorem)?;
            let p = if theorem == Theorem::CffExists { 1 } else { need(q.p, "p", theorem)? };
            check(t >= 1 && s >= 1 && d >= 1 && p >= 1 && s <= t, "existence bounds need t,s,d,p >= 1 and s <= t")?;
            let case = if t < 2 * s { "t<2s" } else { "t>=2s" };
            pick(&mut report, case, BoundValue::approximate(cff_pd_exists(t, s, d, p)));
        }
        Theorem::NonadaptiveYesUpper => {
            let n = need(q.n, "n", theorem)?;
            let d = need(q.d, "d", theorem)?;
            let t = need(q.t, "t", theorem)?;
            check(d >= 1 && n > d && t >= 1, "nonadaptive-yes-upper needs 1 <= d < n and t >= 1")?;
            match q.y {
                Some(y) => {
                    check(y >= 1 && y <= t, "nonadaptive-yes-upper needs 1 <= y <= t")?;
                    let case = if t < 2 * y { "2y>t" } else { "2y<=t" };
                    pick(&mut report, case, BoundValue::approximate(nonadaptive_yes_upper(n, d, t, y)));
                    if t >= 2 * y {
                        report.branches.push(BranchValue {
                            case: "2y<=t,with-y".into(),
                            value: BoundValue::approximate(nonadaptive_yes_upper_with_y(n, d, t, y)),
                        });
                    }
                }
                None => {
                    report.branches.push(BranchValue {
                        case: "2y>t".into(),
                        value: BoundValue::approximate(nonadaptive_yes_upper(n, d, t, t)),
                    });
                    if t >= 2 {
                        report.branches.push(BranchValue {
                            case: "2y<=t".into(),
                            value: BoundValue::approximate(nonadaptive_yes_upper(n, d, t, t / 2)),
                        });
                    }
                }
            }
        }
        Theorem::TwostageYesUpper => {
            let n = need(q.n, "n", theorem)?;
            let d = need(q.d, "d", theorem)?;
            let t = need(q.t, "t", theorem)?;
            let p = need(q.p, "p", theorem)?;
            check(
                d >= 1 && p >= 1 && t >= d + p && n >= d + p,
                "twostage-yes-upper needs d,p >= 1, t >= d+p, n >= d+p",
            )?;
            match q.y {
                Some(y) => {
                    check(y >= 1 && y <= t, "twostage-yes-upper needs 1 <= y <= t")?;
                    let above = 2 * y > t + d - p + 1;
                    let case = if above { "y>thr" } else { "y<=thr" };
                    pick(&mut report, case, BoundValue::approximate(twostage_yes_upper(n, d, t, p, y)));
                    if !above && y > d {
                        report.branches.push(BranchValue {
                            case: "y<=thr,with-y".into(),
                            value: BoundValue::approximate(twostage_yes_upper_with_y(n, d, t, p, y)),
                        });
                    }
                }
                None => {
                    report.branches.push(BranchValue {
                        case: "y>thr".into(),
                        value: BoundValue::approximate(twostage_yes_upper(n, d, t, p, t)),
                    });
                    report.branches.push(BranchValue {
                        case: "y<=thr".into(),
                        value: BoundValue::approximate(twostage_yes_upper(n, d, t, p, 1)),
                    });
                }
            }
        }
        Theorem::TwostageYesUpperPd => {
            let n = need(q.n, "n", theorem)?;
            let d = need(q.d, "d", theorem)?;
            let t = need(q.t, "t", theorem)?;
            check(d >= 1 && t >= 2 * d && n >= 2 * d, "twostage-yes-upper-pd needs d >= 1, t >= 2d, n >= 2d")?;
            match q.y {
                Some(y) => {
                    check(y >= 1 && y <= t, "twostage-yes-upper-pd needs 1 <= y <= t")?;
                    let case = if 2 * y > t { "2y>t" } else { "2y<=t" };
                    pick(&mut report, case, BoundValue::approximate(twostage_yes_upper_pd(n, d, t, y)));
                }
                None => {
                    report.branches.push(BranchValue {
                        case: "2y>t".into(),
                        value: BoundValue::approximate(twostage_yes_upper_pd(n, d, t, t)),
                    });
                    report.branches.push(BranchValue {
                        case: "2y<=t".into(),
                        value: BoundValue::approximate(twostage_yes_upper_pd(n, d, t, 1)),
                    });
                }
            }
        }
    }
    Ok(report)
}
