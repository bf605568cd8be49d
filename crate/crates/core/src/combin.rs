//! Exact combinatorics: binomial coefficients, base-2 ceilings, subset
//! enumeration in colexicographic order, and seeded subset sampling.
//!
//! Everything here is exact integer arithmetic; floating point never decides
//! a count or a ceiling.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)` as an arbitrary-precision integer.
///
/// Returns zero when `k > n`.
///
/// # Example
/// ```
/// use gt_core::combin::binomial;
/// assert_eq!(binomial(49, 2).to_string(), "1176");
/// ```
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of subsets of an `n`-set with size at most `d`:
/// the partial binomial sum `C(n,0) + C(n,1) + ... + C(n,d)`.
pub fn subsets_up_to(n: u64, d: u64) -> BigUint {
    let mut acc = BigUint::zero();
    for i in 0..=d.min(n) {
        acc += binomial(n, i);
    }
    acc
}

/// Smallest `y` with `2^y >= x`, computed exactly from the bit length.
///
/// # Panics
/// Panics when `x == 0`.
pub fn ceil_log2(x: &BigUint) -> u64 {
    assert!(!x.is_zero(), "ceil_log2 of zero is undefined");
    let bits = x.bits();
    if x.count_ones() == 1 {
        bits - 1
    } else {
        bits
    }
}

/// `ceil(log2(C(n, d)))`, the binary information content of choosing `d`
/// items out of `n`, computed exactly.
pub fn ceil_log2_binom(n: u64, d: u64) -> u64 {
    let c = binomial(n, d);
    if c.is_zero() {
        0
    } else {
        ceil_log2(&c)
    }
}

/// Smallest integer `x` with `x^f >= (n/d)^g`, evaluated without rounding by
/// comparing `x^f * d^g` against `n^g` in big integers.
///
/// # Panics
/// Panics when `d == 0`, `f == 0`, or `n < d`.
pub fn ceil_ratio_pow(n: u64, d: u64, g: u32, f: u32) -> u64 {
    assert!(d > 0 && f > 0 && n >= d, "ceil_ratio_pow requires n >= d >= 1 and f >= 1");
    if g == 0 {
        return 1;
    }
    let target = BigUint::from(n).pow(g);
    let dg = BigUint::from(d).pow(g);
    let guess = ((n as f64 / d as f64).powf(g as f64 / f as f64)).ceil() as u64;
    let mut x = guess.saturating_sub(2).max(1);
    loop {
        if BigUint::from(x).pow(f) * &dg >= target {
            return x;
        }
        x += 1;
    }
}

/// Iterator over the `k`-subsets of `{0, ..., n-1}` in colexicographic
/// order. Each item is a sorted index vector.
pub struct Subsets {
    n: usize,
    current: Vec<usize>,
    started: bool,
    done: bool,
}

impl Subsets {
    /// Subsets of size exactly `k`; yields nothing when `k > n`.
    pub fn of_size(n: usize, k: usize) -> Self {
        Subsets { n, current: (0..k).collect(), started: false, done: k > n }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        let k = self.current.len();
        // Colex successor: bump the lowest member that has room before the
        // next member (or before n for the last), then pack the prefix flat.
        let mut i = 0;
        loop {
            if i == k {
                self.done = true;
                return None;
            }
            let limit = if i + 1 == k { self.n } else { self.current[i + 1] };
            if self.current[i] + 1 < limit {
                self.current[i] += 1;
                for j in 0..i {
                    self.current[j] = j;
                }
                return Some(self.current.clone());
            }
            i += 1;
        }
    }
}

/// Visit every subset of `{0, ..., n-1}` of size at most `d`, smallest sizes
/// first and colexicographic within each size. Stops early when the visitor
/// returns `false`; the return value reports whether the walk completed.
pub fn for_each_subset_up_to(n: usize, d: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    for k in 0..=d.min(n) {
        for s in Subsets::of_size(n, k) {
            if !visit(&s) {
                return false;
            }
        }
    }
    true
}

/// Sorted uniform random `k`-subset of `{0, ..., n-1}` drawn with Floyd's
/// algorithm.
///
/// # Panics
/// Panics when `k > n`.
pub fn sample_subset(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    assert!(k <= n, "cannot sample {k} items from {n}");
    let mut chosen = std::collections::BTreeSet::new();
    for j in (n - k)..n {
        let r = rng.gen_range(0..=j);
        if !chosen.insert(r) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}

/// Sorted random subset of size at most `d`, with the size drawn
/// proportionally to the number of subsets of that size.
pub fn sample_subset_up_to(rng: &mut impl Rng, n: usize, d: usize) -> Vec<usize> {
    let total = subsets_up_to(n as u64, d as u64);
    // total fits comfortably in u128 at the scales the samplers run at; fall
    // back to the largest size on overflow rather than biasing small.
    let total_u128: u128 = total.try_into().unwrap_or(u128::MAX);
    let draw = rng.gen_range(0..total_u128);
    let mut acc: u128 = 0;
    for k in 0..=d.min(n) {
        let c: u128 = binomial(n as u64, k as u64).try_into().unwrap_or(u128::MAX);
        acc = acc.saturating_add(c);
        if draw < acc {
            return sample_subset(rng, n, k);
        }
    }
    sample_subset(rng, n, d.min(n))
}

/// Validate that an exhaustive walk over subsets of size at most `d` fits
/// under `cap`, otherwise return a `WorkCap` error naming the count.
pub fn check_subset_cap(n: u64, d: u64, cap: u64, what: &str) -> Result<()> {
    let count = subsets_up_to(n, d);
    if count > BigUint::from(cap) {
        return Err(Error::WorkCap(format!(
            "{what}: {count} subsets of size <= {d} over {n} items exceeds cap {cap}; \
             use sampled mode with a seed"
        )));
    }
    Ok(())
}
