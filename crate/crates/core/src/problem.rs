//! Problem-file schema and validation.
//!
//! Problems are JSON trees with complex numbers as `[re, im]` pairs. A series
//! is a list of `{exponents, coeff}` records; a defining function uses
//! `{z, zbar, coeff}` records; an operator is a list of `{alpha, coeff}`
//! records whose coefficient is itself a series record list.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::operators::HoloPDO;
use crate::series::{MultiIndex, RealAnalyticSeries, TruncatedSeries};
use crate::{Error, Result};

pub const DEFAULT_ORDER: usize = 8;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 10_000;

fn default_order() -> usize {
    DEFAULT_ORDER
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesTermRecord {
    pub exponents: Vec<u32>,
    pub coeff: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RhoTermRecord {
    pub z: Vec<u32>,
    pub zbar: Vec<u32>,
    pub coeff: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorTermRecord {
    pub alpha: Vec<u32>,
    pub coeff: Vec<SeriesTermRecord>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ProblemOptions {
    #[serde(default)]
    pub skip_construction: bool,
    #[serde(default)]
    pub root_choice: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    /// Ambient dimension n + 1 (at least 2).
    pub dimension: usize,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    pub rho: Vec<RhoTermRecord>,
    pub operator: Vec<OperatorTermRecord>,
    pub point: Vec<[f64; 2]>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub options: ProblemOptions,
}

/// Parsed and validated problem data.
#[derive(Debug, Clone)]
pub struct ValidatedProblem {
    pub dimension: usize,
    pub order: usize,
    pub tolerance: f64,
    pub rho: RealAnalyticSeries,
    pub operator: HoloPDO,
    pub point: Vec<Complex64>,
    pub seed: u64,
    pub options: ProblemOptions,
}

pub fn complex_of(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

pub fn pair_of(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

pub fn series_to_records(s: &TruncatedSeries) -> Vec<SeriesTermRecord> {
    s.terms()
        .map(|(idx, c)| SeriesTermRecord {
            exponents: idx.0.clone(),
            coeff: pair_of(*c),
        })
        .collect()
}

pub fn series_from_records(
    nvars: usize,
    order: usize,
    records: &[SeriesTermRecord],
) -> Result<TruncatedSeries> {
    let mut terms = Vec::with_capacity(records.len());
    for r in records {
        if r.exponents.len() != nvars {
            return Err(Error::Validation(format!(
                "series exponent list must have {nvars} entries, got {}",
                r.exponents.len()
            )));
        }
        terms.push((MultiIndex(r.exponents.clone()), complex_of(r.coeff)));
    }
    Ok(TruncatedSeries::from_terms(nvars, order, terms))
}

pub fn rho_to_records(rho: &RealAnalyticSeries) -> Vec<RhoTermRecord> {
    rho.terms()
        .map(|((a, b), c)| RhoTermRecord {
            z: a.0.clone(),
            zbar: b.0.clone(),
            coeff: pair_of(*c),
        })
        .collect()
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("problem parse: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serialization cannot fail")
    }

    /// Check every field-level invariant and build the in-memory problem.
    pub fn validate(&self) -> Result<ValidatedProblem> {
        let dim = self.dimension;
        if dim < 2 {
            return Err(Error::Validation(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        if self.order < 2 || self.order > 16 {
            return Err(Error::Validation(format!(
                "order must lie in 2..=16, got {}",
                self.order
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 || self.tolerance >= 1e-2 {
            return Err(Error::Validation(format!(
                "tolerance must lie in (0, 1e-2), got {}",
                self.tolerance
            )));
        }
        if self.point.len() != dim {
            return Err(Error::Validation(format!(
                "point must have {dim} entries, got {}",
                self.point.len()
            )));
        }
        if self.rho.is_empty() {
            return Err(Error::Validation("rho has no terms".into()));
        }
        let rho = RealAnalyticSeries::from_terms(
            dim,
            self.order,
            self.rho
                .iter()
                .map(|r| {
                    (
                        MultiIndex(r.z.clone()),
                        MultiIndex(r.zbar.clone()),
                        complex_of(r.coeff),
                    )
                })
                .collect::<Vec<_>>(),
            1e-10,
        )?;
        let mut op_terms = Vec::with_capacity(self.operator.len());
        for t in &self.operator {
            if t.alpha.len() != dim {
                return Err(Error::Validation(format!(
                    "operator multi-index must have {dim} entries, got {}",
                    t.alpha.len()
                )));
            }
            let coeff = series_from_records(dim, self.order, &t.coeff)?;
            op_terms.push((MultiIndex(t.alpha.clone()), coeff));
        }
        let operator = HoloPDO::new(dim, op_terms)?;
        let point: Vec<Complex64> = self.point.iter().map(|&p| complex_of(p)).collect();
        Ok(ValidatedProblem {
            dimension: dim,
            order: self.order,
            tolerance: self.tolerance,
            rho,
            operator,
            point,
            seed: self.seed,
            options: self.options.clone(),
        })
    }
}

#[cfg(test)]
pub(crate) fn sphere_problem_json(coeff_re: f64, coeff_im: f64) -> String {
    format!(
        r#"{{
  "dimension": 2,
  "rho": [
    {{"z": [0,1], "zbar": [0,0], "coeff": [-1.0, 0.0]}},
    {{"z": [0,0], "zbar": [0,1], "coeff": [-1.0, 0.0]}},
    {{"z": [1,0], "zbar": [1,0], "coeff": [1.0, 0.0]}}
  ],
  "operator": [
    {{"alpha": [0,2], "coeff": [{{"exponents": [1,0], "coeff": [{coeff_re}, {coeff_im}]}}]}},
    {{"alpha": [1,1], "coeff": [{{"exponents": [0,0], "coeff": [1.0, 0.0]}}]}}
  ],
  "point": [[0.0, 0.0], [0.0, 0.0]],
  "seed": 7
}}"#
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate_sphere() {
        let p = ProblemFile::from_json(&sphere_problem_json(0.5, 0.0)).unwrap();
        let v = p.validate().unwrap();
        assert_eq!(v.dimension, 2);
        assert_eq!(v.order, DEFAULT_ORDER);
        assert_eq!(v.operator.order(), 2);
        let g = v.rho.holomorphic_gradient_at(&[Complex64::new(0.0, 0.0); 2]);
        assert!((g[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rejects_low_dimension() {
        let text = sphere_problem_json(0.5, 0.0).replace("\"dimension\": 2", "\"dimension\": 1");
        let p = ProblemFile::from_json(&text).unwrap();
        assert!(p.validate().is_err());
    }

    #[test]
    fn rejects_reality_violation() {
        let text = r#"{
  "dimension": 2,
  "rho": [
    {"z": [0,1], "zbar": [0,0], "coeff": [-1.0, 0.0]},
    {"z": [1,0], "zbar": [1,0], "coeff": [1.0, 0.0]}
  ],
  "operator": [
    {"alpha": [0,1], "coeff": [{"exponents": [0,0], "coeff": [1.0, 0.0]}]}
  ],
  "point": [[0.0, 0.0], [0.0, 0.0]]
}"#;
        let p = ProblemFile::from_json(text).unwrap();
        let err = p.validate().unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn roundtrip_series_records() {
        let s = TruncatedSeries::from_terms(
            2,
            6,
            vec![
                (MultiIndex(vec![1, 0]), Complex64::new(0.25, -0.5)),
                (MultiIndex(vec![0, 3]), Complex64::new(-1.0, 0.125)),
            ],
        );
        let records = series_to_records(&s);
        let back = series_from_records(2, 6, &records).unwrap();
        assert!(back.approx_eq(&s, 0.0));
    }
}
