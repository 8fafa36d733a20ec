//! Machine-readable report emitted by the pipeline.
//!
//! Reports serialize deterministically: struct fields keep declaration order,
//! series records iterate in graded-lexicographic key order, and no wall-clock
//! data enters the JSON body (timing belongs to the human summary only), so
//! identical problems and seeds produce byte-identical files.

use serde::{Deserialize, Serialize};

use crate::hypersurface::{CharSurface, ContactCertificate, TsunoNormalization};
use crate::normalize::CoordinateMap;
use crate::posform::{PosVerdict, QForm};
use crate::problem::{pair_of, series_to_records, SeriesTermRecord};

pub const REPORT_SCHEMA: &str = "holoconvex-report/1";

/// Final classification of the boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// Zerner: every local solution extends across the point.
    #[serde(rename = "non-characteristic")]
    NonCharacteristic,
    /// Multiple characteristics: outside the supported regime.
    #[serde(rename = "not-simply-characteristic")]
    NotSimplyCharacteristic,
    /// The Levi form failed positivity: outside the supported regime.
    #[serde(rename = "not-strictly-pseudoconvex")]
    NotStrictlyPseudoconvex,
    /// Positivity holds and the certificate was produced: a non-extendable
    /// solution exists.
    #[serde(rename = "pos-holds")]
    PosHolds,
    /// Positivity fails or the certificate could not be completed:
    /// inconclusive.
    #[serde(rename = "pos-fails")]
    PosFails,
    /// The positivity margin sits inside the tolerance band.
    #[serde(rename = "marginal")]
    Marginal,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::NonCharacteristic => "non-characteristic",
            Classification::NotSimplyCharacteristic => "not-simply-characteristic",
            Classification::NotStrictlyPseudoconvex => "not-strictly-pseudoconvex",
            Classification::PosHolds => "pos-holds",
            Classification::PosFails => "pos-fails",
            Classification::Marginal => "marginal",
        }
    }

    /// Process exit code contract: 0 = report produced, 3 = unsupported
    /// regime. (2 = validation error and 4 = residual failure are decided by
    /// the caller.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Classification::NotSimplyCharacteristic
            | Classification::NotStrictlyPseudoconvex => 3,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacteristicReport {
    pub verdict: String,
    pub symbol_value: [f64; 2],
    pub zeta_gradient: Vec<[f64; 2]>,
    pub conormal: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosReport {
    pub holds: String,
    pub restricted_spectrum: Vec<f64>,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum_sq: Option<f64>,
}

impl PosReport {
    pub fn from_verdict(v: &PosVerdict) -> Self {
        PosReport {
            holds: v.holds.as_str().to_string(),
            restricted_spectrum: v.restricted_spectrum.clone(),
            margin: v.margin,
            sum_sq: v.sum_sq,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QFormReport {
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub conormal: Vec<[f64; 2]>,
}

impl QFormReport {
    pub fn from_qform(q: &QForm) -> Self {
        QFormReport {
            matrix: q
                .matrix
                .iter()
                .map(|row| row.iter().map(|&c| pair_of(c)).collect())
                .collect(),
            conormal: q.conormal.iter().map(|&c| pair_of(c)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub f: Vec<SeriesTermRecord>,
    pub echar_residual: f64,
    pub achieved_order: usize,
    pub initial_data: Vec<SeriesTermRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defining_function_original_coords: Option<Vec<SeriesTermRecord>>,
}

impl SurfaceReport {
    pub fn from_surface(s: &CharSurface) -> Self {
        SurfaceReport {
            f: series_to_records(&s.f),
            echar_residual: s.echar_residual,
            achieved_order: s.achieved_order,
            initial_data: series_to_records(&s.initial_data),
            defining_function_original_coords: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub verdict: String,
    pub h_spectrum: Vec<f64>,
    pub gamma: f64,
    pub phase_rotation: Vec<[f64; 2]>,
    pub sample_min: f64,
    pub sample_count: usize,
    pub radii: [f64; 2],
}

impl CertificateReport {
    pub fn from_certificate(c: &ContactCertificate) -> Self {
        CertificateReport {
            verdict: c.verdict.as_str().to_string(),
            h_spectrum: c.h_spectrum.clone(),
            gamma: c.gamma,
            phase_rotation: c.phase_rotation.iter().map(|&p| pair_of(p)).collect(),
            sample_min: c.sample_min,
            sample_count: c.sample_count,
            radii: c.radii,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TsunoReport {
    pub c: Vec<SeriesTermRecord>,
    pub cofactor: Vec<SeriesTermRecord>,
    pub residual: f64,
    pub achieved_order: usize,
    pub solve_index: usize,
}

impl TsunoReport {
    pub fn from_tsuno(t: &TsunoNormalization) -> Self {
        TsunoReport {
            c: series_to_records(&t.c),
            cofactor: series_to_records(&t.cofactor),
            residual: t.residual,
            achieved_order: t.achieved_order,
            solve_index: t.solve_index,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapReport {
    pub base_point: Vec<[f64; 2]>,
    pub forward: Vec<Vec<SeriesTermRecord>>,
    pub inverse: Vec<Vec<SeriesTermRecord>>,
}

impl MapReport {
    pub fn from_map(map: &CoordinateMap, emit_order: usize) -> Self {
        MapReport {
            base_point: map.base_point().iter().map(|&c| pair_of(c)).collect(),
            forward: map
                .forward
                .iter()
                .map(|s| series_to_records(&s.truncate(emit_order)))
                .collect(),
            inverse: map
                .inverse
                .iter()
                .map(|s| series_to_records(&s.truncate(emit_order)))
                .collect(),
        }
    }
}

/// Residual norms gathered across the pipeline.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ResidualReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map_round_trip: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub echar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tsuno: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub classification: Classification,
    pub dimension: usize,
    pub order: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub characteristic: CharacteristicReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pos_full: Option<PosReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pos_reduced: Option<PosReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_form: Option<QFormReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_grad0: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tsuno: Option<TsunoReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinate_map: Option<MapReport>,
    pub residuals: ResidualReport,
    /// Set when a residual check failed after positivity held; pairs with
    /// process exit code 4.
    pub residual_failure: bool,
    pub notes: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        text.push('\n');
        text
    }

    pub fn exit_code(&self) -> i32 {
        if self.residual_failure {
            4
        } else {
            self.classification.exit_code()
        }
    }
}
