//! Serializable run reports. The schema is versioned and every field is
//! deterministic for a fixed input, so repeated runs emit byte-identical
//! JSON.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub fixture: String,
    pub field: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centre: Option<CentreReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyReport>,
}

#[derive(Serialize)]
pub struct LatticeReport {
    pub element_count: usize,
    /// Element labels: interval names of the member indecomposables.
    pub elements: Vec<String>,
    pub distributive: bool,
}

#[derive(Serialize)]
pub struct CentreReport {
    pub sublattice: String,
    pub sublattice_members: Vec<String>,
    pub centre_members: Vec<String>,
    pub commuting: Vec<Vec<bool>>,
    pub distributive: bool,
    pub spatial: bool,
    pub support_bijection: bool,
    pub points: Vec<String>,
    /// Central support of each indecomposable, as point labels.
    pub supports: Vec<SupportEntry>,
}

#[derive(Serialize)]
pub struct SupportEntry {
    pub object: String,
    pub points: Vec<String>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
    /// True when every check is consistent with the commuting structure;
    /// expected sequence failures on non-commuting pairs do not break
    /// consistency.
    pub consistent: bool,
}

#[derive(Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl RunReport {
    pub fn new(fixture: &str, field: u64) -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION,
            fixture: fixture.to_string(),
            field,
            lattice: None,
            centre: None,
            verify: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
