use std::fs;
use std::path::Path;

use qlk_core::css::DistanceReport;
use qlk_core::{CssCode, Family, Provenance};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const HEADER_FILE: &str = "header.json";
pub const HX_FILE: &str = "HX.txt";
pub const HZ_FILE: &str = "HZ.txt";

/// Provenance header stored next to the matrix files. Certified values live
/// under `distance`, separate from the prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub construction: Family,
    pub n: usize,
    pub k_logical: usize,
    pub rank_x: usize,
    pub rank_z: usize,
    pub predicted_d: Option<usize>,
    pub notes: Vec<String>,
    pub distance: Option<DistanceRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceRecord {
    pub w_max: usize,
    pub d_x: String,
    pub d_z: String,
    pub d: String,
    /// Exact distance when the search reached it.
    pub certified_d: Option<usize>,
    /// 1-based supports of the lowest-weight logicals found.
    pub witness_x: Option<Vec<usize>>,
    pub witness_z: Option<Vec<usize>>,
}

impl DistanceRecord {
    pub fn from_report(r: &DistanceReport) -> Self {
        let one_based = |v: &Option<qlk_core::BitVec>| {
            v.as_ref().map(|v| v.iter_ones().map(|j| j + 1).collect())
        };
        Self {
            w_max: r.w_max,
            d_x: r.d_x.to_string(),
            d_z: r.d_z.to_string(),
            d: r.d().to_string(),
            certified_d: r.d().exact(),
            witness_x: one_based(&r.witness_x),
            witness_z: one_based(&r.witness_z),
        }
    }
}

impl Header {
    pub fn for_code(code: &CssCode) -> Self {
        Self {
            construction: code.provenance.family.clone(),
            n: code.n(),
            k_logical: code.k_logical(),
            rank_x: code.rank_x(),
            rank_z: code.rank_z(),
            predicted_d: code.provenance.predicted_d,
            notes: code.provenance.notes.clone(),
            distance: None,
        }
    }

    pub fn provenance(&self) -> Provenance {
        Provenance {
            family: self.construction.clone(),
            predicted_d: self.predicted_d,
            notes: self.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("header serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad {HEADER_FILE}: {e}")))
    }

    pub fn read(dir: &Path) -> Result<Option<Self>, CliError> {
        let path = dir.join(HEADER_FILE);
        if !path.exists() {
            return Ok(None);
        }
        Self::from_json(&fs::read_to_string(path)?).map(Some)
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        fs::write(dir.join(HEADER_FILE), self.to_json())?;
        Ok(())
    }
}
