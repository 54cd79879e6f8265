//! Floating-point interpolation matrices.
//!
//! Parameters are sampled on the complex unit circle and each row is scaled to
//! unit Euclidean norm before the singular value decomposition; the numerical
//! corank counts singular values below `tolerance * sigma_max`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::param::ParametricMap;
use crate::support::SupportSet;

const POLE_GUARD: f64 = 1e-3;

fn complex_image(map: &ParametricMap, tau: &[Complex64]) -> Option<Vec<Complex64>> {
    map.coords()
        .iter()
        .map(|c| {
            let g = c.denominator().eval_complex(tau);
            if g.norm() < POLE_GUARD {
                None
            } else {
                Some(c.numerator().eval_complex(tau) / g)
            }
        })
        .collect()
}

/// `mu x |S|` complex matrix with unit-norm rows.
pub fn build_complex_matrix(
    map: &ParametricMap,
    support: &SupportSet,
    mu: usize,
    seed: u64,
) -> Result<DMatrix<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ncols = support.len();
    let mut m = DMatrix::<Complex64>::zeros(mu, ncols);
    let budget = 100 * mu + 1000;
    let mut attempts = 0;
    let mut k = 0;
    while k < mu {
        if attempts == budget {
            return Err(Error::SamplingExhausted(attempts));
        }
        attempts += 1;
        let tau: Vec<Complex64> = (0..map.n())
            .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let Some(x) = complex_image(map, &tau) else {
            continue;
        };
        let row: Vec<Complex64> = support
            .points()
            .iter()
            .map(|s| {
                x.iter()
                    .zip(s)
                    .fold(Complex64::new(1.0, 0.0), |acc, (xi, &e)| acc * xi.powu(e))
            })
            .collect();
        let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            continue;
        }
        for (j, z) in row.into_iter().enumerate() {
            m[(k, j)] = z / norm;
        }
        k += 1;
    }
    Ok(m)
}

/// Singular values in decreasing order.
pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn numerical_corank(m: &DMatrix<Complex64>, tolerance: f64) -> usize {
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    let rank = s.iter().filter(|&&x| x > tolerance * smax).count();
    m.ncols() - rank
}

/// Right singular vectors spanning the numerical kernel.
pub fn numerical_kernel(m: &DMatrix<Complex64>, tolerance: f64) -> Vec<DVector<Complex64>> {
    let ncols = m.ncols();
    // Pad to at least square so that V is complete.
    let padded = if m.nrows() < ncols {
        let mut p = DMatrix::<Complex64>::zeros(ncols, ncols);
        p.view_mut((0, 0), (m.nrows(), ncols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= tolerance * smax)
        .map(|(i, _)| v_t.row(i).transpose().map(|z| z.conj()))
        .collect()
}
