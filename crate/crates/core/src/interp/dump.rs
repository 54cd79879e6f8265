//! Debug dumps: matrix rows as CSV of exact rationals, plus a JSON sidecar
//! with the seed and sample points needed to rebuild it.

use serde::Serialize;

use super::{EvaluationPoint, InterpolationMatrix};
use crate::poly::format_rational;

pub fn matrix_csv(rows: &[Vec<num_rational::BigRational>]) -> String {
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().map(format_rational).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct SamplingRecord {
    pub seed: u64,
    pub mu: usize,
    pub support: Vec<Vec<u32>>,
    pub tau: Vec<Vec<String>>,
}

impl SamplingRecord {
    pub fn from_matrix(m: &InterpolationMatrix) -> Self {
        let pts: &[EvaluationPoint] = m.sample_points().unwrap_or(&[]);
        SamplingRecord {
            seed: m.seed,
            mu: m.mu(),
            support: m.support.points().to_vec(),
            tau: pts
                .iter()
                .map(|p| p.tau.iter().map(format_rational).collect())
                .collect(),
        }
    }
}
