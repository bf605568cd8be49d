//! Design property verification: bounded unions, cover-freeness, and
//! separability, each with an exhaustive bit-parallel checker and a naive
//! set-based dual used to cross-check it, plus an antichain diagnostic.
//!
//! Exhaustive checks refuse to run past the configured subset cap; callers
//! must then opt into seeded sampling, and the report marks the verdict as
//! `probable`. A failed check always carries a concrete witness that can be
//! replayed against the design with plain model operations.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combin::{binomial, check_subset_cap, for_each_subset_up_to, sample_subset, sample_subset_up_to, Subsets};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::model::Design;

/// How a verifier may establish its verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Enumerate everything, refusing with a `WorkCap` error when the count
    /// exceeds the cap.
    Auto,
    /// Draw `samples` random cases from a seeded generator; a pass is only
    /// probable, a failure is definite.
    Sampled { seed: u64, samples: u64 },
}

/// Concrete evidence that a property fails. Indices are 0-based in memory
/// and serialized 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The union of `members` has `union_size` pools, above the bound.
    OversizeUnion { members: Vec<usize>, union_size: usize, bound: u64 },
    /// Every pool of each item in `covered` also occurs in the union of
    /// the columns of `by`.
    CoveredUnion { covered: Vec<usize>, by: Vec<usize> },
    /// Two distinct candidate sets produce the same response vector.
    DuplicateResponse { first: Vec<usize>, second: Vec<usize> },
    /// Column `contained` is a subset of column `container`.
    NotSperner { contained: usize, container: usize },
    /// Columns `first` and `second` share `size` pools, above the bound.
    OversizeIntersection { first: usize, second: usize, size: usize, bound: u64 },
    /// The union of `members` has fewer pools than the guaranteed floor.
    UndersizeUnion { members: Vec<usize>, union_size: usize, floor: u64 },
    /// Column `column` has `weight` pools where exactly `expected` are required.
    WrongWeight { column: usize, weight: usize, expected: u64 },
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        fn up(v: &[usize]) -> Vec<usize> {
            v.iter().map(|i| i + 1).collect()
        }
        match self {
            Witness::OversizeUnion { members, union_size, bound } => {
                let mut st = serializer.serialize_struct("OversizeUnion", 4)?;
                st.serialize_field("kind", "oversize-union")?;
                st.serialize_field("members", &up(members))?;
                st.serialize_field("union_size", union_size)?;
                st.serialize_field("bound", bound)?;
                st.end()
            }
            Witness::CoveredUnion { covered, by } => {
                let mut st = serializer.serialize_struct("CoveredUnion", 3)?;
                st.serialize_field("kind", "covered-union")?;
                st.serialize_field("covered", &up(covered))?;
                st.serialize_field("by", &up(by))?;
                st.end()
            }
            Witness::DuplicateResponse { first, second } => {
                let mut st = serializer.serialize_struct("DuplicateResponse", 3)?;
                st.serialize_field("kind", "duplicate-response")?;
                st.serialize_field("first", &up(first))?;
                st.serialize_field("second", &up(second))?;
                st.end()
            }
            Witness::NotSperner { contained, container } => {
                let mut st = serializer.serialize_struct("NotSperner", 3)?;
                st.serialize_field("kind", "not-sperner")?;
                st.serialize_field("contained", &(contained + 1))?;
                st.serialize_field("container", &(container + 1))?;
                st.end()
            }
            Witness::OversizeIntersection { first, second, size, bound } => {
                let mut st = serializer.serialize_struct("OversizeIntersection", 5)?;
                st.serialize_field("kind", "oversize-intersection")?;
                st.serialize_field("first", &(first + 1))?;
                st.serialize_field("second", &(second + 1))?;
                st.serialize_field("size", size)?;
                st.serialize_field("bound", bound)?;
                st.end()
            }
            Witness::UndersizeUnion { members, union_size, floor } => {
                let mut st = serializer.serialize_struct("UndersizeUnion", 4)?;
                st.serialize_field("kind", "undersize-union")?;
                st.serialize_field("members", &up(members))?;
                st.serialize_field("union_size", union_size)?;
                st.serialize_field("floor", floor)?;
                st.end()
            }
            Witness::WrongWeight { column, weight, expected } => {
                let mut st = serializer.serialize_struct("WrongWeight", 4)?;
                st.serialize_field("kind", "wrong-weight")?;
                st.serialize_field("column", &(column + 1))?;
                st.serialize_field("weight", weight)?;
                st.serialize_field("expected", expected)?;
                st.end()
            }
        }
    }
}

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    /// Stable property name, e.g. `"cover-free"`.
    pub property: String,
    /// Whether the property held on everything examined.
    pub holds: bool,
    /// True when the verdict rests on sampling rather than enumeration.
    pub probable: bool,
    /// Counterexample when `holds` is false.
    pub witness: Option<Witness>,
    /// Number of cases examined.
    pub work: u64,
}

impl PropertyReport {
    fn exhaustive(property: &str, witness: Option<Witness>, work: u64) -> Self {
        PropertyReport {
            property: property.to_string(),
            holds: witness.is_none(),
            probable: false,
            witness,
            work,
        }
    }

    fn sampled(property: &str, witness: Option<Witness>, work: u64) -> Self {
        PropertyReport {
            property: property.to_string(),
            holds: witness.is_none(),
            probable: witness.is_none(),
            witness,
            work,
        }
    }
}

/// Check that every union of `d` columns covers at most `s` pools.
pub fn is_union_bounded(design: &Design, d: u64, s: u64, mode: Mode, caps: &Caps) -> Result<PropertyReport> {
    assert!(d >= 1, "union bound needs d >= 1");
    let n = design.n();
    let dd = (d as usize).min(n);
    match mode {
        Mode::Auto => {
            let count = binomial(n as u64, dd as u64);
            if count > caps.exhaustive_subsets.into() {
                return Err(work_refusal("union-bounded", &count.to_string(), caps));
            }
            let mut witness = None;
            let mut work = 0;
            for members in Subsets::of_size(n, dd) {
                work += 1;
                let size = design.union_of(&members).count_ones();
                if size as u64 > s {
                    witness = Some(Witness::OversizeUnion { members, union_size: size, bound: s });
                    break;
                }
            }
            Ok(PropertyReport::exhaustive("union-bounded", witness, work))
        }
        Mode::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut witness = None;
            for _ in 0..samples {
                let members = sample_subset(&mut rng, n, dd);
                let size = design.union_of(&members).count_ones();
                if size as u64 > s {
                    witness = Some(Witness::OversizeUnion { members, union_size: size, bound: s });
                    break;
                }
            }
            Ok(PropertyReport::sampled("union-bounded", witness, samples))
        }
    }
}

/// Shared engine for cover-freeness: for each `d`-subset `D`, collect the
/// items outside `D` whose column lies inside the union of `D`; the design
/// is `(p,d)`-cover-free when fewer than `p` such items ever exist.
fn covered_outsiders(design: &Design, dset: &[usize], want: usize) -> Vec<usize> {
    let union = design.union_of(dset);
    let mut found = Vec::new();
    for j in 0..design.n() {
        if dset.contains(&j) {
            continue;
        }
        if union.contains(design.column(j)) {
            found.push(j);
            if found.len() == want {
                break;
            }
        }
    }
    found
}

/// Check that no column is contained in the union of `d` other columns.
pub fn is_cover_free(design: &Design, d: u64, mode: Mode, caps: &Caps) -> Result<PropertyReport> {
    pd_engine(design, 1, d, mode, caps, "cover-free")
}

/// Check that no union of `p` columns is contained in the union of `d`
/// disjoint other columns.
pub fn is_pd_cover_free(design: &Design, p: u64, d: u64, mode: Mode, caps: &Caps) -> Result<PropertyReport> {
    pd_engine(design, p, d, mode, caps, "pd-cover-free")
}

fn pd_engine(design: &Design, p: u64, d: u64, mode: Mode, caps: &Caps, name: &str) -> Result<PropertyReport> {
    assert!(p >= 1 && d >= 1, "cover-freeness needs p >= 1 and d >= 1");
    let n = design.n();
    if (p + d) as usize > n {
        // no disjoint (p, d) pair exists
        return Ok(PropertyReport::exhaustive(name, None, 0));
    }
    let dd = d as usize;
    let pp = p as usize;
    match mode {
        Mode::Auto => {
            let count = binomial(n as u64, d);
            if count > caps.exhaustive_subsets.into() {
                return Err(work_refusal(name, &count.to_string(), caps));
            }
            let mut witness = None;
            let mut work = 0;
            for dset in Subsets::of_size(n, dd) {
                work += 1;
                let covered = covered_outsiders(design, &dset, pp);
                if covered.len() == pp {
                    witness = Some(Witness::CoveredUnion { covered, by: dset });
                    break;
                }
            }
            Ok(PropertyReport::exhaustive(name, witness, work))
        }
        Mode::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut witness = None;
            for _ in 0..samples {
                let dset = sample_subset(&mut rng, n, dd);
                let covered = covered_outsiders(design, &dset, pp);
                if covered.len() == pp {
                    witness = Some(Witness::CoveredUnion { covered, by: dset });
                    break;
                }
            }
            Ok(PropertyReport::sampled(name, witness, samples))
        }
    }
}

/// Check that all candidate sets of size at most `d` (including the empty
/// set) produce pairwise distinct response vectors.
pub fn is_separable(design: &Design, d: u64, mode: Mode, caps: &Caps) -> Result<PropertyReport> {
    assert!(d >= 1, "separability needs d >= 1");
    let n = design.n();
    let dd = (d as usize).min(n);
    match mode {
        Mode::Auto => {
            check_subset_cap(n as u64, dd as u64, caps.exhaustive_subsets, "separable")?;
            let mut seen: HashMap<crate::bits::BitVec, Vec<usize>> = HashMap::new();
            let mut witness = None;
            let mut work = 0u64;
            for_each_subset_up_to(n, dd, |subset| {
                work += 1;
                let response = design.union_of(subset);
                if let Some(prev) = seen.get(&response) {
                    witness = Some(Witness::DuplicateResponse {
                        first: prev.clone(),
                        second: subset.to_vec(),
                    });
                    return false;
                }
                seen.insert(response, subset.to_vec());
                true
            });
            Ok(PropertyReport::exhaustive("separable", witness, work))
        }
        Mode::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut witness = None;
            for _ in 0..samples {
                let a = sample_subset_up_to(&mut rng, n, dd);
                let b = sample_subset_up_to(&mut rng, n, dd);
                if a != b && design.union_of(&a) == design.union_of(&b) {
                    witness = Some(Witness::DuplicateResponse { first: a, second: b });
                    break;
                }
            }
            Ok(PropertyReport::sampled("separable", witness, samples))
        }
    }
}

fn work_refusal(name: &str, count: &str, caps: &Caps) -> Error {
    Error::WorkCap(format!(
        "{name}: exhaustive check needs {count} cases, above cap {}; \
         rerun with sampled mode and a seed",
        caps.exhaustive_subsets
    ))
}

/// Antichain diagnostic for the columns of a design.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LymReport {
    /// Whether the columns are pairwise incomparable under inclusion.
    pub antichain: bool,
    /// First containment found when they are not.
    pub violation: Option<Witness>,
    /// Exact value of the antichain sum as a reduced fraction.
    pub numer: String,
    pub denom: String,
    /// Floating approximation of the sum.
    pub value: f64,
    /// Whether the exact sum is at most 1.
    pub within_bound: bool,
}

/// Compute the antichain sum `sum_j 1 / C(t, w_j)` over column weights
/// `w_j` in exact rational arithmetic, after checking that no column
/// contains another. For a true antichain the sum can never exceed 1, so a
/// `within_bound` failure alongside `antichain = true` would indicate an
/// arithmetic defect, not a property of the design.
pub fn lym_diagnostic(design: &Design) -> LymReport {
    let n = design.n();
    let mut violation = None;
    'outer: for a in 0..n {
        for b in 0..n {
            if a != b && design.column(b).contains(design.column(a)) {
                violation = Some(Witness::NotSperner { contained: a, container: b });
                break 'outer;
            }
        }
    }
    let mut sum = BigRational::zero();
    for j in 0..n {
        let w = design.column(j).count_ones() as u64;
        let c = BigInt::from(binomial(design.t() as u64, w));
        sum += BigRational::new(BigInt::one(), c);
    }
    LymReport {
        antichain: violation.is_none(),
        violation,
        numer: sum.numer().to_string(),
        denom: sum.denom().to_string(),
        value: sum.to_f64().unwrap_or(f64::NAN),
        within_bound: sum <= BigRational::one(),
    }
}

/// Set-based reimplementations of the verifiers, used to cross-check the
/// bit-parallel ones. Same enumeration order, independent representation.
pub mod naive {
    use std::collections::BTreeSet;

    use super::Witness;
    use crate::combin::{for_each_subset_up_to, Subsets};
    use crate::model::Design;

    fn column_set(design: &Design, j: usize) -> BTreeSet<usize> {
        (0..design.t()).filter(|&i| design.is_member(i, j)).collect()
    }

    fn union_set(design: &Design, items: &[usize]) -> BTreeSet<usize> {
        let mut u = BTreeSet::new();
        for &j in items {
            u.extend(column_set(design, j));
        }
        u
    }

    /// Dual of [`super::is_union_bounded`] in exhaustive mode.
    pub fn union_bounded(design: &Design, d: u64, s: u64) -> (bool, Option<Witness>) {
        let dd = (d as usize).min(design.n());
        for members in Subsets::of_size(design.n(), dd) {
            let size = union_set(design, &members).len();
            if size as u64 > s {
                return (false, Some(Witness::OversizeUnion { members, union_size: size, bound: s }));
            }
        }
        (true, None)
    }

    /// Dual of [`super::is_pd_cover_free`] in exhaustive mode.
    pub fn pd_cover_free(design: &Design, p: u64, d: u64) -> (bool, Option<Witness>) {
        let n = design.n();
        if (p + d) as usize > n {
            return (true, None);
        }
        for dset in Subsets::of_size(n, d as usize) {
            let union = union_set(design, &dset);
            let mut covered = Vec::new();
            for j in 0..n {
                if dset.contains(&j) {
                    continue;
                }
                if column_set(design, j).is_subset(&union) {
                    covered.push(j);
                    if covered.len() == p as usize {
                        return (false, Some(Witness::CoveredUnion { covered, by: dset }));
                    }
                }
            }
        }
        (true, None)
    }

    /// Dual of [`super::is_cover_free`] in exhaustive mode.
    pub fn cover_free(design: &Design, d: u64) -> (bool, Option<Witness>) {
        pd_cover_free(design, 1, d)
    }

    /// Dual of [`super::is_separable`] in exhaustive mode.
    pub fn separable(design: &Design, d: u64) -> (bool, Option<Witness>) {
        let n = design.n();
        let dd = (d as usize).min(n);
        let mut seen: Vec<(BTreeSet<usize>, Vec<usize>)> = Vec::new();
        let mut witness = None;
        for_each_subset_up_to(n, dd, |subset| {
            let response = union_set(design, subset);
            if let Some((_, prev)) = seen.iter().find(|(r, _)| *r == response) {
                witness = Some(Witness::DuplicateResponse {
                    first: prev.clone(),
                    second: subset.to_vec(),
                });
                return false;
            }
            seen.push((response, subset.to_vec()));
            true
        });
        (witness.is_none(), witness)
    }
}
