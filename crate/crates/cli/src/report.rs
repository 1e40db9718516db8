//! JSON report types. Field order is fixed by the struct definitions, so
//! identical inputs give identical bytes; timings appear only on request.

use std::collections::BTreeMap;

use bmult_core::arith::AbelianInvariants;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorSection {
    pub multiplier: AbelianInvariants,
    pub bogomolov: Option<AbelianInvariants>,
    pub tail_exponent: u32,
    pub stable: Option<bool>,
    pub exterior_square_order: String,
    pub derived_order: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleSection {
    pub multiplier: AbelianInvariants,
    pub bogomolov: Option<AbelianInvariants>,
    pub modulus: u64,
    pub maximal_abelian_subgroups: Option<usize>,
    pub bicyclic_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionSection {
    pub applies: bool,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    pub key: String,
    pub provenance: String,
    pub warnings: Vec<String>,
    pub order: String,
    pub nilpotency_class: Option<usize>,
    pub methods: Vec<String>,
    /// Agreed value; `None` when the methods disagree.
    pub multiplier: Option<AbelianInvariants>,
    pub bogomolov: Option<AbelianInvariants>,
    /// `Some(false)` when two methods were run and disagree.
    pub agreement: Option<bool>,
    pub exterior: Option<ExteriorSection>,
    pub cocycle: Option<CocycleSection>,
    pub criterion: Option<CriterionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapSection {
    pub overlap: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub input: String,
    pub order: String,
    pub consistent: bool,
    pub failures: Vec<OverlapSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorSection {
    pub exit_code: u8,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyEntry {
    pub file: String,
    pub report: Option<Report>,
    pub error: Option<ErrorSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub files: usize,
    pub computed: usize,
    pub errors: usize,
    pub disagreements: usize,
    pub nontrivial_bogomolov: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub schema_version: u32,
    pub directory: String,
    pub methods: Vec<String>,
    pub entries: Vec<SurveyEntry>,
    pub summary: SurveySummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeySection {
    pub key: String,
    pub parameters: String,
    pub description: String,
}
