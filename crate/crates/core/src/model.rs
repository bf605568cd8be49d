//! Core domain types: pooled test designs, hidden defective sets, response
//! vectors, and test transcripts, plus the plain-text design file format.
//!
//! Items and pools are 0-indexed throughout the library. External surfaces
//! (CLI JSON, witnesses in reports) convert to 1-indexed at the boundary.
//!
//! # Design file format
//!
//! ```text
//! t n
//! # d=<d> p=<p> s=<s>
//! <t rows of n characters from {0,1}>
//! ```
//!
//! Row `i`, character `j` is `1` exactly when item `j` belongs to pool `i`.
//! The second line is optional. A trailing newline is required, numbers are
//! canonical decimal, and nothing else is accepted: the parser is strict so
//! that a file is either bit-exact or rejected.

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Declared parameters a design file may carry alongside the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignMeta {
    /// Bound on the number of defectives the design is meant for.
    pub d: u64,
    /// Surplus parameter: how many non-defectives may survive decoding.
    pub p: u64,
    /// Bound on the total weight of any `d`-set's pooled response.
    pub s: u64,
}

/// A non-adaptive test design: `t` pools over `n` items, stored as one
/// bit column per item (bit `i` of column `j` = item `j` is in pool `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    t: usize,
    n: usize,
    columns: Vec<BitVec>,
    meta: Option<DesignMeta>,
}

impl Design {
    /// An empty design: `t` pools, `n` items, no memberships.
    ///
    /// # Panics
    /// Panics when `t == 0` or `n == 0`.
    pub fn new(t: usize, n: usize) -> Self {
        assert!(t >= 1 && n >= 1, "a design needs at least one pool and one item");
        Design { t, n, columns: vec![BitVec::zeros(t); n], meta: None }
    }

    /// Build from per-item columns, all of length `t`.
    ///
    /// # Panics
    /// Panics when `columns` is empty or lengths disagree with `t`.
    pub fn from_columns(t: usize, columns: Vec<BitVec>) -> Self {
        assert!(t >= 1 && !columns.is_empty(), "a design needs at least one pool and one item");
        assert!(columns.iter().all(|c| c.len() == t), "column length must equal pool count");
        let n = columns.len();
        Design { t, n, columns, meta: None }
    }

    /// Number of pools.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of items.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared parameters, if any.
    pub fn meta(&self) -> Option<DesignMeta> {
        self.meta
    }

    /// Attach or replace declared parameters.
    pub fn set_meta(&mut self, meta: Option<DesignMeta>) {
        self.meta = meta;
    }

    /// Membership bit for (`pool`, `item`).
    pub fn is_member(&self, pool: usize, item: usize) -> bool {
        self.columns[item].get(pool)
    }

    /// Set the membership bit for (`pool`, `item`).
    pub fn set_member(&mut self, pool: usize, item: usize, value: bool) {
        self.columns[item].set(pool, value);
    }

    /// The column of pools containing `item`.
    pub fn column(&self, item: usize) -> &BitVec {
        &self.columns[item]
    }

    /// Items belonging to `pool`, ascending.
    pub fn pool_members(&self, pool: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.columns[j].get(pool)).collect()
    }

    /// Pooled response to a hidden defective set: pool `i` answers yes
    /// exactly when it contains at least one defective.
    pub fn respond(&self, hidden: &DefectiveSet) -> ResponseVector {
        let mut bits = BitVec::zeros(self.t);
        for &item in hidden.items() {
            assert!(item < self.n, "defective item {item} outside design with n={}", self.n);
            bits.union_with(&self.columns[item]);
        }
        ResponseVector(bits)
    }

    /// Union of the columns of an arbitrary item set.
    pub fn union_of(&self, items: &[usize]) -> BitVec {
        let mut bits = BitVec::zeros(self.t);
        for &item in items {
            bits.union_with(&self.columns[item]);
        }
        bits
    }

    /// Serialize to the design file format (always ends with a newline).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.t, self.n));
        if let Some(m) = self.meta {
            out.push_str(&format!("# d={} p={} s={}\n", m.d, m.p, m.s));
        }
        for i in 0..self.t {
            for j in 0..self.n {
                out.push(if self.columns[j].get(i) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Parse the design file format. Rejects anything `to_text` would not
    /// produce: missing trailing newline, carriage returns, non-canonical
    /// numbers, wrong row counts or lengths, stray characters.
    pub fn parse_text(text: &str) -> Result<Design> {
        if text.is_empty() {
            return Err(Error::parse(1, "empty file"));
        }
        if text.contains('\r') {
            return Err(Error::parse(1, "carriage returns are not allowed"));
        }
        if !text.ends_with('\n') {
            let last_line = text.lines().count();
            return Err(Error::parse(last_line, "missing trailing newline"));
        }
        let mut lines = text.split('\n').collect::<Vec<_>>();
        // split on '\n' leaves one empty tail entry for a newline-terminated file
        debug_assert_eq!(lines.last(), Some(&""));
        lines.pop();

        let header = lines.first().ok_or_else(|| Error::parse(1, "missing header"))?;
        let (t_tok, n_tok) = header
            .split_once(' ')
            .ok_or_else(|| Error::parse(1, "header must be \"t n\""))?;
        let t = parse_canonical_u64(t_tok, 1, "t")? as usize;
        let n = parse_canonical_u64(n_tok, 1, "n")? as usize;
        if t == 0 || n == 0 {
            return Err(Error::parse(1, "t and n must be at least 1"));
        }

        let mut row_start = 1;
        let mut meta = None;
        if lines.len() > 1 && lines[1].starts_with('#') {
            meta = Some(parse_meta_line(lines[1])?);
            row_start = 2;
        }

        let rows = &lines[row_start..];
        if rows.len() != t {
            return Err(Error::parse(
                row_start + rows.len().min(t) + 1,
                format!("expected {t} matrix rows, found {}", rows.len()),
            ));
        }
        let mut design = Design::new(t, n);
        design.meta = meta;
        for (i, row) in rows.iter().enumerate() {
            let lineno = row_start + i + 1;
            if row.len() != n {
                return Err(Error::parse(
                    lineno,
                    format!("row has {} characters, expected {n}", row.len()),
                ));
            }
            for (j, ch) in row.bytes().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => design.set_member(i, j, true),
                    other => {
                        return Err(Error::parse(
                            lineno,
                            format!("invalid character {:?} in matrix row", other as char),
                        ))
                    }
                }
            }
        }
        Ok(design)
    }
}

fn parse_canonical_u64(tok: &str, lineno: usize, what: &str) -> Result<u64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(lineno, format!("{what} must be a decimal integer, got {tok:?}")));
    }
    let value: u64 = tok
        .parse()
        .map_err(|_| Error::parse(lineno, format!("{what} out of range: {tok:?}")))?;
    if tok != value.to_string() {
        return Err(Error::parse(lineno, format!("{what} not in canonical form: {tok:?}")));
    }
    Ok(value)
}

fn parse_meta_line(line: &str) -> Result<DesignMeta> {
    let err = || Error::parse(2, format!("metadata line must be \"# d=<d> p=<p> s=<s>\", got {line:?}"));
    let rest = line.strip_prefix("# d=").ok_or_else(err)?;
    let (d_tok, rest) = rest.split_once(' ').ok_or_else(err)?;
    let rest = rest.strip_prefix("p=").ok_or_else(err)?;
    let (p_tok, rest) = rest.split_once(' ').ok_or_else(err)?;
    let s_tok = rest.strip_prefix("s=").ok_or_else(err)?;
    let d = parse_canonical_u64(d_tok, 2, "d")?;
    let p = parse_canonical_u64(p_tok, 2, "p")?;
    let s = parse_canonical_u64(s_tok, 2, "s")?;
    if d == 0 || p == 0 || s == 0 {
        return Err(Error::parse(2, "d, p, s must all be at least 1"));
    }
    Ok(DesignMeta { d, p, s })
}

/// A hidden set of defective items: sorted, deduplicated, all below `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectiveSet {
    items: Vec<usize>,
}

impl DefectiveSet {
    /// Validate and normalize a collection of item indices against a ground
    /// set of size `n`.
    pub fn new(items: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if let Some(&bad) = v.iter().find(|&&i| i >= n) {
            return Err(Error::domain(format!("defective item {bad} outside ground set of size {n}")));
        }
        Ok(DefectiveSet { items: v })
    }

    /// The empty set.
    pub fn empty() -> Self {
        DefectiveSet { items: Vec::new() }
    }

    /// Sorted item indices.
    pub fn items(&self) -> &[usize] {
        &self.items
    }

    /// Number of defectives.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// True when no item is defective.
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Membership query.
    pub fn contains(&self, item: usize) -> bool {
        self.items.binary_search(&item).is_ok()
    }
}

/// The yes/no answers of all pools of a design, bit `i` = pool `i` said yes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResponseVector(pub BitVec);

impl ResponseVector {
    /// Number of pools.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when there are zero pools.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Answer of pool `i`.
    pub fn get(&self, i: usize) -> bool {
        self.0.get(i)
    }

    /// Number of yes answers.
    pub fn yes_count(&self) -> usize {
        self.0.count_ones()
    }

    /// The underlying bits.
    pub fn bits(&self) -> &BitVec {
        &self.0
    }
}

/// One recorded pooled test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptEntry {
    /// Items in the tested pool, ascending.
    pub pool: Vec<usize>,
    /// Whether the pool contained a defective.
    pub positive: bool,
}

/// Ordered record of every test an adaptive or staged run performed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    entries: Vec<TranscriptEntry>,
}

impl Transcript {
    /// Append one test.
    pub fn push(&mut self, pool: Vec<usize>, positive: bool) {
        self.entries.push(TranscriptEntry { pool, positive });
    }

    /// All recorded tests in order.
    pub fn entries(&self) -> &[TranscriptEntry] {
        &self.entries
    }

    /// Total number of tests.
    pub fn tests(&self) -> usize {
        self.entries.len()
    }

    /// Total number of positive answers.
    pub fn yes_count(&self) -> usize {
        self.entries.iter().filter(|e| e.positive).count()
    }
}
