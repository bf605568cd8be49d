//! Finite fields, linear codes over them, and a derandomized constructor
//! that builds a generator matrix meeting a target minimum distance.
//!
//! Field elements are plain `u64` indices in `0..q`. For a prime field the
//! index is the residue; for a prime power `q = p^k` the index encodes the
//! coefficient vector of the element in base `p`, least significant digit
//! first. Extension arithmetic uses exponent/antilog tables built from a
//! fixed primitive polynomial per field size.
//!
//! Every table polynomial is re-verified at construction time: the powers
//! `x^0 .. x^(q-2)` must be pairwise distinct and nonzero with `x^(q-1) = 1`.
//! That single check proves both that the quotient ring is a field and that
//! `x` generates its multiplicative group, so a corrupted table entry cannot
//! produce silently wrong arithmetic.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest supported field size; arithmetic is table-driven and sized for
/// desk-scale parameters.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

struct PolyEntry {
    q: u64,
    p: u64,
    k: u32,
    /// Low coefficients `c_0 .. c_{k-1}` of the monic modulus
    /// `x^k + c_{k-1} x^{k-1} + ... + c_0`.
    low: &'static [u64],
}

/// Primitive modulus polynomials for the extension fields on record.
static MODULUS_TABLE: &[PolyEntry] = &[
    PolyEntry { q: 4, p: 2, k: 2, low: &[1, 1] },                   // x^2 + x + 1
    PolyEntry { q: 8, p: 2, k: 3, low: &[1, 1, 0] },                // x^3 + x + 1
    PolyEntry { q: 16, p: 2, k: 4, low: &[1, 1, 0, 0] },            // x^4 + x + 1
    PolyEntry { q: 32, p: 2, k: 5, low: &[1, 0, 1, 0, 0] },         // x^5 + x^2 + 1
    PolyEntry { q: 64, p: 2, k: 6, low: &[1, 1, 0, 1, 1, 0] },      // x^6 + x^4 + x^3 + x + 1
    PolyEntry { q: 128, p: 2, k: 7, low: &[1, 1, 0, 0, 0, 0, 0] },  // x^7 + x + 1
    PolyEntry { q: 256, p: 2, k: 8, low: &[1, 0, 1, 1, 1, 0, 0, 0] }, // x^8 + x^4 + x^3 + x^2 + 1
    PolyEntry { q: 9, p: 3, k: 2, low: &[2, 2] },                   // x^2 + 2x + 2
    PolyEntry { q: 27, p: 3, k: 3, low: &[1, 2, 0] },               // x^3 + 2x + 1
    PolyEntry { q: 81, p: 3, k: 4, low: &[2, 0, 0, 2] },            // x^4 + 2x^3 + 2
    PolyEntry { q: 243, p: 3, k: 5, low: &[1, 2, 0, 0, 0] },        // x^5 + 2x + 1
    PolyEntry { q: 25, p: 5, k: 2, low: &[2, 4] },                  // x^2 + 4x + 2
    PolyEntry { q: 125, p: 5, k: 3, low: &[3, 3, 0] },              // x^3 + 3x + 3
    PolyEntry { q: 49, p: 7, k: 2, low: &[3, 6] },                  // x^2 + 6x + 3
    PolyEntry { q: 121, p: 11, k: 2, low: &[2, 7] },                // x^2 + 7x + 2
    PolyEntry { q: 169, p: 13, k: 2, low: &[2, 12] },               // x^2 + 12x + 2
];

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Decompose `q` as `p^k` with `p` prime, if possible.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut k = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Arithmetic in the finite field with `q` elements.
#[derive(Debug, Clone)]
pub struct Field {
    q: u64,
    p: u64,
    k: u32,
    /// Discrete log base `x` for nonzero elements; `log_t[0]` is unused.
    log_t: Vec<u32>,
    /// `antilog[i] = x^i` for `i` in `0..q-1`. Empty for prime fields.
    antilog: Vec<u64>,
}

impl Field {
    /// Construct the field with `q` elements.
    ///
    /// `q` must be a prime power no larger than [`MAX_FIELD_SIZE`]; extension
    /// fields additionally need a modulus polynomial on record.
    pub fn new(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::domain(format!("field size {q} is not a prime power")))?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::domain(format!("field size {q} exceeds supported maximum {MAX_FIELD_SIZE}")));
        }
        if k == 1 {
            debug_assert!(is_prime(p));
            return Ok(Field { q, p, k, log_t: Vec::new(), antilog: Vec::new() });
        }
        let entry = MODULUS_TABLE
            .iter()
            .find(|e| e.q == q)
            .ok_or_else(|| Error::domain(format!("no modulus polynomial on record for field size {q}")))?;
        debug_assert_eq!((entry.p, entry.k), (p, k));

        // Build x^0 .. x^(q-2) by repeated multiplication by x, reducing the
        // top digit against the modulus, then verify the full cycle.
        let mut digits = vec![0u64; k as usize];
        digits[0] = 1;
        let mut antilog = Vec::with_capacity((q - 1) as usize);
        for _ in 0..q - 1 {
            antilog.push(pack(&digits, p));
            digits = mul_by_x(&digits, entry.low, p);
        }
        if pack(&digits, p) != 1 {
            return Err(Error::domain(format!(
                "modulus polynomial for field size {q} failed verification: x^(q-1) != 1"
            )));
        }
        let mut log_t = vec![u32::MAX; q as usize];
        for (i, &e) in antilog.iter().enumerate() {
            if e == 0 || log_t[e as usize] != u32::MAX {
                return Err(Error::domain(format!(
                    "modulus polynomial for field size {q} failed verification: powers of x repeat"
                )));
            }
            log_t[e as usize] = i as u32;
        }
        Ok(Field { q, p, k, log_t, antilog })
    }

    /// Number of elements.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Characteristic `p`.
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree `k` with `q = p^k`.
    pub fn degree(&self) -> u32 {
        self.k
    }

    fn assert_elem(&self, a: u64) {
        assert!(a < self.q, "element {a} outside field of size {}", self.q);
    }

    /// Addition.
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.assert_elem(a);
        self.assert_elem(b);
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let mut out = 0;
        let mut mult = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.k {
            out += (a % self.p + b % self.p) % self.p * mult;
            a /= self.p;
            b /= self.p;
            mult *= self.p;
        }
        out
    }

    /// Additive inverse.
    pub fn neg(&self, a: u64) -> u64 {
        self.assert_elem(a);
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let mut out = 0;
        let mut mult = 1;
        let mut a = a;
        for _ in 0..self.k {
            out += (self.p - a % self.p) % self.p * mult;
            a /= self.p;
            mult *= self.p;
        }
        out
    }

    /// Subtraction.
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Multiplication.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.assert_elem(a);
        self.assert_elem(b);
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k == 1 {
            return a * b % self.p;
        }
        let e = (self.log_t[a as usize] as u64 + self.log_t[b as usize] as u64) % (self.q - 1);
        self.antilog[e as usize]
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics when `a == 0`.
    pub fn inv(&self, a: u64) -> u64 {
        self.assert_elem(a);
        assert!(a != 0, "zero has no multiplicative inverse");
        if self.k == 1 {
            return self.pow(a, self.p - 2);
        }
        let e = (self.q - 1 - self.log_t[a as usize] as u64) % (self.q - 1);
        self.antilog[e as usize]
    }

    /// Division `a / b`.
    ///
    /// # Panics
    /// Panics when `b == 0`.
    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// Exponentiation by squaring.
    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        self.assert_elem(a);
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn pack(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn mul_by_x(digits: &[u64], low: &[u64], p: u64) -> Vec<u64> {
    let k = digits.len();
    let carry = digits[k - 1];
    let mut out = vec![0u64; k];
    out[1..].copy_from_slice(&digits[..k - 1]);
    if carry != 0 {
        // x^k = -(c_{k-1} x^{k-1} + ... + c_0)
        for i in 0..k {
            out[i] = (out[i] + carry * ((p - low[i]) % p)) % p;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Entropy and dimension helpers for code parameters
// ---------------------------------------------------------------------------

/// `q`-ary entropy `H_q(x)` in `[0, 1]`, with `H_q(0) = 0`.
///
/// # Panics
/// Panics when `q < 2` or `x` is outside `[0, 1]`.
pub fn qary_entropy(q: u64, x: f64) -> f64 {
    assert!(q >= 2, "qary_entropy needs q >= 2");
    assert!((0.0..=1.0).contains(&x), "qary_entropy needs x in [0,1], got {x}");
    if x == 0.0 {
        return 0.0;
    }
    let qf = q as f64;
    let tail = if x == 1.0 { 0.0 } else { (1.0 - x) * (1.0 / (1.0 - x)).log2() };
    (x * ((qf - 1.0) / x).log2() + tail) / qf.log2()
}

/// Dimension guaranteed by the entropy volume argument for a length-`m`
/// code over `F_q` with relative distance `delta`:
/// `max(0, floor((1 - H_q(delta)) * m))`.
///
/// # Panics
/// Panics when `q < 2`, `m < 1`, or `delta` outside `(0, 1]`.
pub fn gv_dimension(q: u64, m: u64, delta: f64) -> u64 {
    assert!(m >= 1, "gv_dimension needs m >= 1");
    assert!(delta > 0.0 && delta <= 1.0, "gv_dimension needs delta in (0,1], got {delta}");
    let r = (1.0 - qary_entropy(q, delta)) * m as f64;
    if r <= 0.0 {
        return 0;
    }
    // snap near-integer products so exact rationals floor cleanly
    let rounded = r.round();
    if (r - rounded).abs() < 1e-9 {
        rounded as u64
    } else {
        r.floor() as u64
    }
}

// ---------------------------------------------------------------------------
// Linear codes
// ---------------------------------------------------------------------------

/// A linear code over `F_q` given by a `k x m` generator matrix, with its
/// minimum distance verified by exhaustive enumeration at construction.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Field,
    m: usize,
    k: usize,
    generator: Vec<Vec<u64>>,
    min_dist: usize,
}

impl LinearCode {
    /// Wrap a generator matrix, enumerating all `q^k - 1` nonzero codewords
    /// to establish the exact minimum distance.
    ///
    /// Errors when the enumeration would exceed `codeword_cap`, or when some
    /// nonzero message encodes to the zero word (rank-deficient generator).
    pub fn new(field: Field, generator: Vec<Vec<u64>>, codeword_cap: u64) -> Result<LinearCode> {
        let k = generator.len();
        if k == 0 {
            return Err(Error::domain("generator matrix needs at least one row"));
        }
        let m = generator[0].len();
        if m == 0 || generator.iter().any(|row| row.len() != m) {
            return Err(Error::domain("generator matrix rows must be nonempty and equal length"));
        }
        for row in &generator {
            for &e in row {
                if e >= field.q() {
                    return Err(Error::domain(format!(
                        "generator entry {e} outside field of size {}",
                        field.q()
                    )));
                }
            }
        }
        let count = checked_pow(field.q(), k as u32, codeword_cap).ok_or_else(|| {
            Error::WorkCap(format!(
                "minimum-distance check needs {}^{k} codewords, above cap {codeword_cap}",
                field.q()
            ))
        })?;
        let mut code = LinearCode { field, m, k, generator, min_dist: m };
        let mut min_wt = m + 1;
        for idx in 1..count {
            let w = code.codeword_of_index(idx).iter().filter(|&&e| e != 0).count();
            if w == 0 {
                return Err(Error::domain(
                    "generator matrix is rank deficient: a nonzero message encodes to zero",
                ));
            }
            min_wt = min_wt.min(w);
        }
        code.min_dist = min_wt.min(m);
        Ok(code)
    }

    /// The underlying field.
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Code length.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Code dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Exact minimum distance established at construction.
    pub fn min_dist(&self) -> usize {
        self.min_dist
    }

    /// Generator matrix rows.
    pub fn generator(&self) -> &[Vec<u64>] {
        &self.generator
    }

    /// Number of codewords `q^k`.
    pub fn codeword_count(&self) -> u64 {
        self.field.q().pow(self.k as u32)
    }

    /// Encode a message of `k` field elements.
    ///
    /// # Panics
    /// Panics on wrong message length or out-of-field symbols.
    pub fn encode(&self, message: &[u64]) -> Vec<u64> {
        assert_eq!(message.len(), self.k, "message length must equal code dimension");
        let mut out = vec![0u64; self.m];
        for (j, &coef) in message.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = self.field.add(*slot, self.field.mul(coef, self.generator[j][i]));
            }
        }
        out
    }

    /// Codeword of the message whose base-`q` digits (least significant
    /// first) are the row coefficients. Index `0` is the zero word.
    pub fn codeword_of_index(&self, idx: u64) -> Vec<u64> {
        let mut msg = vec![0u64; self.k];
        let mut rest = idx;
        for slot in msg.iter_mut() {
            *slot = rest % self.field.q();
            rest /= self.field.q();
        }
        assert_eq!(rest, 0, "message index out of range");
        self.encode(&msg)
    }

    /// Serialize: header `q m k dist`, then the `k` generator rows as
    /// space-separated decimal elements, newline-terminated.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {} {}\n", self.field.q(), self.m, self.k, self.min_dist);
        for row in &self.generator {
            let words: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the `to_text` format, rebuild the field, and re-verify that the
    /// declared distance matches an exhaustive recount.
    pub fn parse_text(text: &str, codeword_cap: u64) -> Result<LinearCode> {
        if !text.ends_with('\n') || text.contains('\r') {
            return Err(Error::parse(1, "code file must be newline-terminated without carriage returns"));
        }
        let mut lines: Vec<&str> = text.split('\n').collect();
        lines.pop();
        let header = lines.first().ok_or_else(|| Error::parse(1, "missing header"))?;
        let toks: Vec<&str> = header.split(' ').collect();
        if toks.len() != 4 {
            return Err(Error::parse(1, "header must be \"q m k dist\""));
        }
        let nums: Vec<u64> = toks
            .iter()
            .enumerate()
            .map(|(i, t)| parse_plain_u64(t, 1, ["q", "m", "k", "dist"][i]))
            .collect::<Result<_>>()?;
        let (q, m, k, dist) = (nums[0], nums[1] as usize, nums[2] as usize, nums[3] as usize);
        if lines.len() != k + 1 {
            return Err(Error::parse(lines.len(), format!("expected {k} generator rows")));
        }
        let field = Field::new(q)?;
        let mut generator = Vec::with_capacity(k);
        for (i, line) in lines[1..].iter().enumerate() {
            let row: Vec<u64> = line
                .split(' ')
                .map(|t| parse_plain_u64(t, i + 2, "generator entry"))
                .collect::<Result<_>>()?;
            if row.len() != m {
                return Err(Error::parse(i + 2, format!("row has {} entries, expected {m}", row.len())));
            }
            generator.push(row);
        }
        let code = LinearCode::new(field, generator, codeword_cap)?;
        if code.min_dist() != dist {
            return Err(Error::VerificationFailed(format!(
                "declared distance {dist} but exhaustive recount gives {}",
                code.min_dist()
            )));
        }
        Ok(code)
    }
}

fn parse_plain_u64(tok: &str, line: usize, what: &str) -> Result<u64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, format!("{what} must be a decimal integer, got {tok:?}")));
    }
    let v: u64 = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("{what} out of range: {tok:?}")))?;
    if tok != v.to_string() {
        return Err(Error::parse(line, format!("{what} not canonical: {tok:?}")));
    }
    Ok(v)
}

fn checked_pow(q: u64, k: u32, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(q)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

// ---------------------------------------------------------------------------
// Derandomized construction
// ---------------------------------------------------------------------------

/// Build a `k`-dimensional length-`m` code over `F_q` with minimum distance
/// at least `ceil(delta * m)`.
///
/// The first attempt fills the generator matrix entry by entry (columns
/// left to right, rows top to bottom within a column), choosing each entry
/// to minimize the exact conditional expectation of the number of nonzero
/// messages whose codeword would end up below the target weight, with the
/// undecided entries treated as uniform. Ties take the smallest field
/// element, so the output is deterministic.
///
/// If the greedy matrix misses the target (the expectation argument only
/// guarantees a code when the parameters are below the entropy volume
/// bound), an exhaustive column-by-column search with weight pruning runs
/// next, capped at `search_cap` candidate visits.
pub fn construct_code(q: u64, m: usize, k: usize, delta: f64, codeword_cap: u64, search_cap: u64) -> Result<LinearCode> {
    if m == 0 || k == 0 {
        return Err(Error::domain("construct_code needs m >= 1 and k >= 1"));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::domain(format!("construct_code needs delta in (0,1], got {delta}")));
    }
    let field = Field::new(q)?;
    let target = ceil_snap(delta * m as f64);
    if target == 0 || target > m as u64 {
        return Err(Error::domain(format!(
            "target distance {target} outside 1..={m} for delta={delta}"
        )));
    }
    let target = target as usize;
    let count = checked_pow(q, k as u32, codeword_cap).ok_or_else(|| {
        Error::WorkCap(format!("construction needs {q}^{k} messages, above cap {codeword_cap}"))
    })?;

    let greedy = greedy_matrix(&field, m, k, target, count);
    let greedy_code = LinearCode::new(field.clone(), greedy, codeword_cap)?;
    if greedy_code.min_dist() >= target {
        return Ok(greedy_code);
    }

    match column_search(&field, m, k, target, count, search_cap)? {
        Some(generator) => LinearCode::new(field, generator, codeword_cap),
        None => Err(Error::ConstructionFailure(format!(
            "no [{m},{k}] code over F_{q} with distance >= {target} found; \
             greedy matrix reached distance {}",
            greedy_code.min_dist()
        ))),
    }
}

fn ceil_snap(x: f64) -> u64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as u64
    } else {
        x.ceil() as u64
    }
}

fn greedy_matrix(field: &Field, m: usize, k: usize, target: usize, count: u64) -> Vec<Vec<u64>> {
    let q = field.q();
    // tail[u][l] = q^(m-u) * sum_{w=0}^{l} C(u,w) (q-1)^w, the scaled
    // probability that at most l of u uniform entries are nonzero
    let mut tail = vec![Vec::new(); m + 1];
    for (u, row) in tail.iter_mut().enumerate() {
        let scale = BigUint::from(q).pow((m - u) as u32);
        let mut acc = BigUint::zero();
        let mut term = BigUint::one(); // C(u,0)(q-1)^0
        row.push({
            acc += &term * &scale;
            acc.clone()
        });
        for w in 1..=u {
            term = term * BigUint::from((u - w + 1) as u64) * BigUint::from(q - 1)
                / BigUint::from(w as u64);
            acc += &term * &scale;
            row.push(acc.clone());
        }
    }
    let tail_at = |u: usize, limit: isize| -> BigUint {
        if limit < 0 {
            BigUint::zero()
        } else {
            tail[u][(limit as usize).min(u)].clone()
        }
    };

    let digits: Vec<Vec<u64>> = (0..count)
        .map(|x| {
            let mut v = vec![0u64; k];
            let mut rest = x;
            for slot in v.iter_mut() {
                *slot = rest % q;
                rest /= q;
            }
            v
        })
        .collect();
    let supp_max: Vec<usize> = digits
        .iter()
        .map(|dv| dv.iter().rposition(|&d| d != 0).unwrap_or(0))
        .collect();

    let mut generator = vec![vec![0u64; m]; k];
    let mut dnz = vec![0usize; count as usize]; // nonzero entries among decided columns
    let mut partial = vec![0u64; count as usize]; // partial inner product in the current column

    // Column-major sweep: `c` also feeds the remaining-position count below.
    #[allow(clippy::needless_range_loop)]
    for c in 0..m {
        for r in 0..k {
            let mut best_v = 0u64;
            let mut best_score: Option<BigUint> = None;
            for v in 0..q {
                let mut score = BigUint::zero();
                for x in 1..count as usize {
                    let part = field.add(partial[x], field.mul(digits[x][r], v));
                    let determined = supp_max[x] <= r;
                    let u = (m - 1 - c) + usize::from(!determined);
                    let here = usize::from(determined && part != 0);
                    let limit = target as isize - 1 - (dnz[x] + here) as isize;
                    score += tail_at(u, limit);
                }
                if best_score.as_ref().is_none_or(|b| score < *b) {
                    best_score = Some(score);
                    best_v = v;
                }
            }
            generator[r][c] = best_v;
            for x in 1..count as usize {
                partial[x] = field.add(partial[x], field.mul(digits[x][r], best_v));
            }
        }
        for x in 1..count as usize {
            dnz[x] += usize::from(partial[x] != 0);
            partial[x] = 0;
        }
    }
    generator
}

fn column_search(
    field: &Field,
    m: usize,
    k: usize,
    target: usize,
    count: u64,
    search_cap: u64,
) -> Result<Option<Vec<Vec<u64>>>> {
    let q = field.q();
    let digits: Vec<Vec<u64>> = (0..count)
        .map(|x| {
            let mut v = vec![0u64; k];
            let mut rest = x;
            for slot in v.iter_mut() {
                *slot = rest % q;
                rest /= q;
            }
            v
        })
        .collect();
    // candidate columns in ascending index order; column index digits are the
    // k entries top to bottom
    let columns: Vec<Vec<u64>> = (0..count).map(|ci| digits[ci as usize].clone()).collect();

    let mut chosen = vec![0usize; m];
    let mut wt = vec![vec![0usize; count as usize]];
    let mut visits = 0u64;

    fn dot(field: &Field, a: &[u64], b: &[u64]) -> u64 {
        let mut acc = 0;
        for (x, y) in a.iter().zip(b) {
            acc = field.add(acc, field.mul(*x, *y));
        }
        acc
    }

    let mut depth = 0usize;
    let mut next_candidate = vec![0usize; m + 1];
    loop {
        if depth == m {
            let mut generator = vec![vec![0u64; m]; k];
            for (c, &ci) in chosen.iter().enumerate() {
                for r in 0..k {
                    generator[r][c] = columns[ci][r];
                }
            }
            return Ok(Some(generator));
        }
        let mut advanced = false;
        while next_candidate[depth] < count as usize {
            let ci = next_candidate[depth];
            next_candidate[depth] += 1;
            visits += 1;
            if visits > search_cap {
                return Err(Error::ConstructionFailure(format!(
                    "column search exceeded cap of {search_cap} candidate visits"
                )));
            }
            let base = wt[depth].clone();
            let mut ok = true;
            let mut next = base;
            for x in 1..count as usize {
                if dot(field, &digits[x], &columns[ci]) != 0 {
                    next[x] += 1;
                }
                if next[x] + (m - depth - 1) < target {
                    ok = false;
                    break;
                }
            }
            if ok {
                chosen[depth] = ci;
                if wt.len() == depth + 1 {
                    wt.push(next);
                } else {
                    wt[depth + 1] = next;
                }
                depth += 1;
                next_candidate[depth] = 0;
                advanced = true;
                break;
            }
        }
        if !advanced {
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
        }
    }
}
