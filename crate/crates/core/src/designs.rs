//! Construction of non-adaptive test designs: a seeded randomized sampler
//! with verification-before-use, and a deterministic construction that maps
//! the codewords of a distance-checked linear code to constant-weight
//! columns.
//!
//! The sampler draws Bernoulli matrices with a configurable zero-probability
//! `z` and accepts a draw only after exhaustive verification of the target
//! properties. The deterministic route builds, for `q >= 2d + 2` a prime
//! power, a `d`-cover-free design whose `n = q^k` columns each cover exactly
//! `m` of the `t = mq` pools, every union of `d` columns covering at most
//! `s = dm` pools.

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combin::{binomial, subsets_up_to, Subsets};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::gfcodes::{construct_code, gv_dimension, LinearCode};
use crate::model::{Design, DesignMeta};
use crate::verify::{is_cover_free, is_pd_cover_free, is_union_bounded, Mode, PropertyReport, Witness};

/// Node budget for the fallback generator-matrix column search.
const COLUMN_SEARCH_CAP: u64 = 1 << 22;

// ---------------------------------------------------------------------------
// Randomized sampler
// ---------------------------------------------------------------------------

/// The default per-entry zero-probability for the sampler, tuned so that a
/// draw meets the weight bound `s` with the advertised failure probability.
///
/// # Panics
/// Panics unless `t, s, d, p >= 1` and `s <= t`.
pub fn default_z(t: u64, s: u64, d: u64, p: u64) -> f64 {
    assert!(t >= 1 && s >= 1 && d >= 1 && p >= 1 && s <= t, "default_z domain violation");
    let (tf, sf, df, pf) = (t as f64, s as f64, d as f64, p as f64);
    let e = std::f64::consts::E;
    (1.0 - (sf / (e * tf)).powf(sf * (pf / df + 1.0))).powf(1.0 / df)
}

/// Upper bound on the probability that a single draw fails verification.
///
/// # Panics
/// Panics unless `t, s, d, p >= 1`, `s <= t`, and `n >= d + p`.
pub fn sampler_failure_bound(t: u64, s: u64, d: u64, p: u64, n: u64) -> f64 {
    assert!(
        t >= 1 && s >= 1 && d >= 1 && p >= 1 && s <= t && n >= d + p,
        "sampler_failure_bound domain violation"
    );
    let e = std::f64::consts::E;
    let combos = big_f64(&(binomial(n, d + p) * binomial(d + p, p)));
    let tail = big_f64(&subsets_up_to(t, s));
    2.0 * combos * (s as f64 / (e * t as f64)).powf(s as f64 * (p as f64 / d as f64 + 1.0)) * tail
}

fn big_f64(x: &BigUint) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
}

/// Parameters of a sampling run.
#[derive(Debug, Clone)]
pub struct SamplerConfig {
    /// Number of pools.
    pub t: usize,
    /// Number of items.
    pub n: usize,
    /// Defective bound the design must support.
    pub d: u64,
    /// Surplus parameter of the cover-freeness target.
    pub p: u64,
    /// Weight bound every union of `d` columns must respect.
    pub s: u64,
    /// Zero-probability override; `None` uses [`default_z`].
    pub z: Option<f64>,
    /// Seed for the draw stream.
    pub seed: u64,
    /// Attempt budget before giving up.
    pub max_attempts: u32,
}

/// A verified sample together with how much work it took.
#[derive(Debug, Clone)]
pub struct SampleOutcome {
    pub design: Design,
    /// Draws consumed, including the successful one.
    pub attempts: u32,
    /// Verification reports of the accepted draw (all passing).
    pub reports: Vec<PropertyReport>,
}

/// Draw one `t x n` matrix: entries are generated row by row, each zero
/// with probability `z`, from uniform doubles `(next_u64 >> 11) * 2^-53`.
pub fn draw_design(t: usize, n: usize, z: f64, rng: &mut impl RngCore) -> Design {
    let mut design = Design::new(t, n);
    for i in 0..t {
        for j in 0..n {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u >= z {
                design.set_member(i, j, true);
            }
        }
    }
    design
}

/// Exhaustively verify one draw against the sampler's targets:
/// `(p, d)`-cover-freeness and the weight bound `s` on unions of `d`
/// columns. Returns one report per property.
pub fn verify_draw(design: &Design, d: u64, p: u64, s: u64, caps: &Caps) -> Result<Vec<PropertyReport>> {
    Ok(vec![
        is_pd_cover_free(design, p, d, Mode::Auto, caps)?,
        is_union_bounded(design, d, s, Mode::Auto, caps)?,
    ])
}

/// Draw designs until one passes verification or the attempt budget runs
/// out. The draw stream continues across attempts, so outcomes are fully
/// determined by the seed.
pub fn sample_design(cfg: &SamplerConfig, caps: &Caps) -> Result<SampleOutcome> {
    let z = match cfg.z {
        Some(z) => {
            if !(0.0..=1.0).contains(&z) {
                return Err(Error::domain(format!("z must lie in [0,1], got {z}")));
            }
            z
        }
        None => default_z(cfg.t as u64, cfg.s, cfg.d, cfg.p),
    };
    if cfg.max_attempts == 0 {
        return Err(Error::domain("max_attempts must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last_failure = String::from("no attempt recorded");
    for attempt in 1..=cfg.max_attempts {
        let mut design = draw_design(cfg.t, cfg.n, z, &mut rng);
        let reports = verify_draw(&design, cfg.d, cfg.p, cfg.s, caps)?;
        if reports.iter().all(|r| r.holds) {
            design.set_meta(Some(DesignMeta { d: cfg.d, p: cfg.p, s: cfg.s }));
            return Ok(SampleOutcome { design, attempts: attempt, reports });
        }
        let failed = reports.iter().find(|r| !r.holds).expect("some report failed");
        last_failure = format!("attempt {attempt}: {} failed ({:?})", failed.property, failed.witness);
    }
    Err(Error::SamplerExhausted { attempts: cfg.max_attempts, last_failure })
}

// ---------------------------------------------------------------------------
// Deterministic construction from linear codes
// ---------------------------------------------------------------------------

/// Identification of pools with (code position, symbol) pairs: position
/// `i` (0-based) and symbol `a` map to pool `i*q + a`. In 1-based external
/// terms this is the map `(i, a) -> (i-1)q + a + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionMap {
    q: u64,
    m: usize,
}

impl ReductionMap {
    pub fn new(q: u64, m: usize) -> Self {
        ReductionMap { q, m }
    }

    /// Total number of pools `m * q`.
    pub fn ground_size(&self) -> usize {
        self.m * self.q as usize
    }

    /// Pool index of (position `row`, symbol `symbol`), 0-based.
    ///
    /// # Panics
    /// Panics when `row >= m` or `symbol >= q`.
    pub fn pool(&self, row: usize, symbol: u64) -> usize {
        assert!(row < self.m && symbol < self.q, "reduction argument out of range");
        row * self.q as usize + symbol as usize
    }
}

/// Result of the deterministic construction.
#[derive(Debug, Clone)]
pub struct ExplicitConstruction {
    pub design: Design,
    pub code: LinearCode,
    /// Largest pairwise column intersection the code distance permits.
    pub lambda: u64,
    /// Weight bound on unions of `d` columns (`d * m`).
    pub s: u64,
    /// Smallest union weight over all `d`-subsets, for the floor guarantee.
    pub min_union: u64,
    /// Re-verification reports of the finished design (all passing).
    pub reports: Vec<PropertyReport>,
}

/// Build a `d`-cover-free design from a linear code over `F_q`.
///
/// Requires `q` to be a prime power with `q >= 2d + 2`. The code has length
/// `m`, relative distance `d/(d+1)`, and dimension
/// `k = max(gv_dimension, m - ceil(dm/(d+1)))`; each of the `n = q^k`
/// codewords becomes a column covering the pools `(i, c_i)` for its symbols.
/// The finished design is re-verified from scratch; a verification failure
/// here is an internal defect, not an input error.
pub fn build_explicit(d: u64, q: u64, m: usize, caps: &Caps) -> Result<ExplicitConstruction> {
    if d < 1 {
        return Err(Error::domain("build_explicit needs d >= 1"));
    }
    if m < 1 {
        return Err(Error::domain("build_explicit needs m >= 1"));
    }
    if q < 2 * d + 2 {
        return Err(Error::domain(format!(
            "build_explicit needs q >= 2d + 2 = {}, got q = {q}",
            2 * d + 2
        )));
    }
    let dist = (d * m as u64).div_ceil(d + 1);
    let delta = d as f64 / (d as f64 + 1.0);
    let lambda = m as u64 - dist;
    let k_gv = gv_dimension(q, m as u64, delta) as usize;
    let k_comp = m - dist as usize;
    let k = k_gv.max(k_comp);
    if k == 0 {
        return Err(Error::domain(format!(
            "parameters admit no code dimension: gv gives {k_gv}, complement gives {k_comp}; increase m"
        )));
    }
    let code = construct_code(q, m, k, delta, caps.codewords, COLUMN_SEARCH_CAP)?;
    debug_assert!(code.min_dist() >= dist as usize);

    let map = ReductionMap::new(q, m);
    let t = map.ground_size();
    let n = code.codeword_count();
    let mut design = Design::new(t, n as usize);
    for x in 0..n {
        let cw = code.codeword_of_index(x);
        for (i, &sym) in cw.iter().enumerate() {
            design.set_member(map.pool(i, sym), x as usize, true);
        }
    }
    let s = d * m as u64;
    design.set_meta(Some(DesignMeta { d, p: 1, s }));

    let reports = vec![
        uniform_weight_check(&design, m as u64),
        pairwise_intersection_check(&design, lambda, caps)?,
        is_cover_free(&design, d, Mode::Auto, caps)?,
        is_union_bounded(&design, d, s, Mode::Auto, caps)?,
        union_floor_check(&design, d, lambda, caps)?,
    ];
    if let Some(bad) = reports.iter().find(|r| !r.holds) {
        return Err(Error::VerificationFailed(format!(
            "constructed design failed its own {} check: {:?}",
            bad.property, bad.witness
        )));
    }
    let min_union = min_union_weight(&design, d, caps)?;
    Ok(ExplicitConstruction { design, code, lambda, s, min_union, reports })
}

/// Check that every column covers exactly `m` pools.
pub fn uniform_weight_check(design: &Design, m: u64) -> PropertyReport {
    let mut witness = None;
    for j in 0..design.n() {
        let w = design.column(j).count_ones();
        if w as u64 != m {
            witness = Some(Witness::WrongWeight { column: j, weight: w, expected: m });
            break;
        }
    }
    PropertyReport {
        property: "uniform-columns".into(),
        holds: witness.is_none(),
        probable: false,
        witness,
        work: design.n() as u64,
    }
}

/// Check that every pair of distinct columns shares at most `lambda` pools.
pub fn pairwise_intersection_check(design: &Design, lambda: u64, caps: &Caps) -> Result<PropertyReport> {
    let n = design.n() as u64;
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs > caps.exhaustive_subsets {
        return Err(Error::WorkCap(format!(
            "pairwise-intersection: {pairs} pairs exceed cap {}",
            caps.exhaustive_subsets
        )));
    }
    let mut witness = None;
    let mut work = 0;
    'outer: for a in 0..design.n() {
        for b in (a + 1)..design.n() {
            work += 1;
            let size = design.column(a).intersection_count(design.column(b));
            if size as u64 > lambda {
                witness = Some(Witness::OversizeIntersection { first: a, second: b, size, bound: lambda });
                break 'outer;
            }
        }
    }
    Ok(PropertyReport {
        property: "pairwise-intersection".into(),
        holds: witness.is_none(),
        probable: false,
        witness,
        work,
    })
}

/// Check the union floor: every `d` columns cover at least the sum of their
/// weights minus `C(d,2) * lambda` pools (inclusion-exclusion truncated at
/// pairs).
pub fn union_floor_check(design: &Design, d: u64, lambda: u64, caps: &Caps) -> Result<PropertyReport> {
    let n = design.n();
    let dd = (d as usize).min(n);
    let count = binomial(n as u64, dd as u64);
    if count > caps.exhaustive_subsets.into() {
        return Err(Error::WorkCap(format!(
            "union-floor: {count} subsets exceed cap {}",
            caps.exhaustive_subsets
        )));
    }
    let pair_terms = (dd as u64) * (dd as u64 - 1) / 2 * lambda;
    let mut witness = None;
    let mut work = 0;
    for members in Subsets::of_size(n, dd) {
        work += 1;
        let weight_sum: u64 = members.iter().map(|&j| design.column(j).count_ones() as u64).sum();
        let floor = weight_sum.saturating_sub(pair_terms);
        let union = design.union_of(&members).count_ones();
        if (union as u64) < floor {
            witness = Some(Witness::UndersizeUnion { members, union_size: union, floor });
            break;
        }
    }
    Ok(PropertyReport {
        property: "union-floor".into(),
        holds: witness.is_none(),
        probable: false,
        witness,
        work,
    })
}

/// Smallest union weight over all `d`-subsets of columns.
pub fn min_union_weight(design: &Design, d: u64, caps: &Caps) -> Result<u64> {
    let n = design.n();
    let dd = (d as usize).min(n);
    let count = binomial(n as u64, dd as u64);
    if count > caps.exhaustive_subsets.into() {
        return Err(Error::WorkCap(format!(
            "min-union: {count} subsets exceed cap {}",
            caps.exhaustive_subsets
        )));
    }
    let mut min = u64::MAX;
    for members in Subsets::of_size(n, dd) {
        min = min.min(design.union_of(&members).count_ones() as u64);
    }
    Ok(min)
}
