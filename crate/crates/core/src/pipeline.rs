//! Decoding of non-adaptive responses and the trivial two-stage pipeline:
//! run a verified design, decode a candidate set, then confirm each
//! candidate with one individual test.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combin::{check_subset_cap, for_each_subset_up_to};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::model::{DefectiveSet, Design, ResponseVector, Transcript};
use crate::verify::{is_pd_cover_free, is_union_bounded, Mode, PropertyReport};

/// Items whose column lies inside the response, ascending. For a design
/// that is `(p, d)`-cover-free and a response produced by at most `d`
/// defectives, the result contains every defective and at most `p + d - 1`
/// items in total.
pub fn decode_cover(design: &Design, response: &ResponseVector) -> Vec<usize> {
    assert_eq!(response.len(), design.t(), "response length must equal pool count");
    (0..design.n())
        .filter(|&j| response.bits().contains(design.column(j)))
        .collect()
}

/// The unique defective set of size at most `d` producing the response.
///
/// Fails when no candidate set matches (the response cannot have come from
/// this design under the size promise) and when two candidate sets match
/// (the design is not `d`-separable; the message names both sets,
/// 1-indexed).
pub fn decode_separable(design: &Design, d: u64, response: &ResponseVector, caps: &Caps) -> Result<DefectiveSet> {
    assert_eq!(response.len(), design.t(), "response length must equal pool count");
    let n = design.n();
    let dd = (d as usize).min(n);
    check_subset_cap(n as u64, dd as u64, caps.exhaustive_subsets, "decode-separable")?;
    let mut matches: Vec<Vec<usize>> = Vec::new();
    for_each_subset_up_to(n, dd, |subset| {
        if design.union_of(subset) == *response.bits() {
            matches.push(subset.to_vec());
        }
        matches.len() < 2
    });
    match matches.len() {
        0 => Err(Error::VerificationFailed(format!(
            "response matches no defective set of size at most {d}; it is inconsistent with the design"
        ))),
        1 => Ok(DefectiveSet::new(matches.remove(0), n).expect("enumerated in range")),
        _ => {
            let one: Vec<usize> = matches[0].iter().map(|i| i + 1).collect();
            let two: Vec<usize> = matches[1].iter().map(|i| i + 1).collect();
            Err(Error::VerificationFailed(format!(
                "design is not {d}-separable: items {one:?} and {two:?} produce the same response"
            )))
        }
    }
}

/// A design whose cover-freeness and union bound have been verified against
/// its declared parameters. Constructing one is the only way to run the
/// two-stage pipeline, so an unverified matrix can never reach it.
#[derive(Debug, Clone)]
pub struct VerifiedCff {
    design: Design,
    d: u64,
    p: u64,
    s: u64,
    reports: Vec<PropertyReport>,
}

impl VerifiedCff {
    pub fn design(&self) -> &Design {
        &self.design
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// The verification reports that admitted the design.
    pub fn reports(&self) -> &[PropertyReport] {
        &self.reports
    }

    pub fn into_design(self) -> Design {
        self.design
    }
}

/// Verify a design against its declared `d`, `p`, `s` and wrap it for the
/// two-stage pipeline. The design must carry a declaration, be
/// `(p, d)`-cover-free, and keep every union of `d` columns within `s`
/// pools. In sampled mode a pass is only probable; the reports say so.
pub fn verify_for_two_stage(design: Design, mode: Mode, caps: &Caps) -> Result<VerifiedCff> {
    let meta = design
        .meta()
        .ok_or_else(|| Error::domain("design carries no d/p/s declaration to verify against"))?;
    let reports = vec![
        is_pd_cover_free(&design, meta.p, meta.d, mode, caps)?,
        is_union_bounded(&design, meta.d, meta.s, mode, caps)?,
    ];
    if let Some(bad) = reports.iter().find(|r| !r.holds) {
        return Err(Error::VerificationFailed(format!(
            "design failed the {} check: {}",
            bad.property,
            serde_json::to_string(&bad.witness).unwrap_or_else(|_| "witness unavailable".into())
        )));
    }
    Ok(VerifiedCff { d: meta.d, p: meta.p, s: meta.s, design, reports })
}

/// Counts and item sets from one two-stage run. Indices serialize 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStageOutcome {
    /// Items surviving stage-1 decoding, ascending.
    pub candidates: Vec<usize>,
    /// Candidates confirmed defective in stage 2, ascending.
    pub confirmed: Vec<usize>,
    pub stage1_tests: u64,
    pub stage1_yes: u64,
    pub stage2_tests: u64,
    pub stage2_yes: u64,
}

impl TwoStageOutcome {
    pub fn total_tests(&self) -> u64 {
        self.stage1_tests + self.stage2_tests
    }

    pub fn total_yes(&self) -> u64 {
        self.stage1_yes + self.stage2_yes
    }
}

impl Serialize for TwoStageOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        fn up(v: &[usize]) -> Vec<usize> {
            v.iter().map(|i| i + 1).collect()
        }
        let mut st = serializer.serialize_struct("TwoStageOutcome", 8)?;
        st.serialize_field("candidates", &up(&self.candidates))?;
        st.serialize_field("confirmed", &up(&self.confirmed))?;
        st.serialize_field("stage1_tests", &self.stage1_tests)?;
        st.serialize_field("stage1_yes", &self.stage1_yes)?;
        st.serialize_field("stage2_tests", &self.stage2_tests)?;
        st.serialize_field("stage2_yes", &self.stage2_yes)?;
        st.serialize_field("total_tests", &self.total_tests())?;
        st.serialize_field("total_yes", &self.total_yes())?;
        st.end()
    }
}

/// Run both stages against a hidden set: every design pool in order, then
/// one confirmation test per surviving candidate, ascending.
///
/// For at most `d` defectives the confirmed set equals the hidden set, the
/// candidate set has at most `p + d - 1` members, and the positive count is
/// at most `s + d`.
pub fn run_two_stage(vc: &VerifiedCff, hidden: &DefectiveSet) -> Result<(TwoStageOutcome, Transcript)> {
    let design = vc.design();
    let n = design.n();
    if let Some(&bad) = hidden.items().iter().find(|&&i| i >= n) {
        return Err(Error::domain(format!("hidden item {} outside design with n={n}", bad + 1)));
    }
    let mut transcript = Transcript::default();
    let response = design.respond(hidden);
    for i in 0..design.t() {
        transcript.push(design.pool_members(i), response.get(i));
    }
    let candidates = decode_cover(design, &response);
    let mut confirmed = Vec::new();
    for &c in &candidates {
        let positive = hidden.contains(c);
        transcript.push(vec![c], positive);
        if positive {
            confirmed.push(c);
        }
    }
    let outcome = TwoStageOutcome {
        stage1_tests: design.t() as u64,
        stage1_yes: response.yes_count() as u64,
        stage2_tests: candidates.len() as u64,
        stage2_yes: confirmed.len() as u64,
        candidates,
        confirmed,
    };
    Ok((outcome, transcript))
}
