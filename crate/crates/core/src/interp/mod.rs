//! Interpolation matrices on a candidate support.
//!
//! Row `k`, column `j` of the matrix holds the `j`-th candidate monomial
//! evaluated at the image of the `k`-th sample. Its kernel vectors are the
//! coefficient vectors of the multiples of the implicit polynomial whose
//! Newton polytope fits in the predicted polytope.

pub mod approx;
mod dump;
pub mod linalg;
mod sampling;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::param::ParametricMap;
use crate::support::SupportSet;

pub use dump::{matrix_csv, SamplingRecord};
pub use linalg::{det_sign, determinant};
pub use sampling::{sample_points, EvaluationPoint};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    /// Relative singular-value threshold.
    Approximate { tolerance: f64 },
}

impl Mode {
    /// Default row count: `|S|` for exact work, `2|S|` for approximate.
    pub fn default_mu(&self, support_size: usize) -> usize {
        match self {
            Mode::Exact => support_size,
            Mode::Approximate { .. } => 2 * support_size,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Entries {
    Exact {
        points: Vec<EvaluationPoint>,
        rows: Vec<Vec<BigRational>>,
    },
    Approximate {
        matrix: DMatrix<Complex64>,
        tolerance: f64,
    },
}

#[derive(Clone, Debug)]
pub struct InterpolationMatrix {
    pub support: SupportSet,
    pub entries: Entries,
    pub seed: u64,
}

impl InterpolationMatrix {
    pub fn mu(&self) -> usize {
        match &self.entries {
            Entries::Exact { rows, .. } => rows.len(),
            Entries::Approximate { matrix, .. } => matrix.nrows(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.support.len()
    }

    pub fn mode(&self) -> Mode {
        match &self.entries {
            Entries::Exact { .. } => Mode::Exact,
            Entries::Approximate { tolerance, .. } => Mode::Approximate {
                tolerance: *tolerance,
            },
        }
    }

    /// Exact rows, if this is an exact matrix.
    pub fn exact_rows(&self) -> Option<&[Vec<BigRational>]> {
        match &self.entries {
            Entries::Exact { rows, .. } => Some(rows),
            Entries::Approximate { .. } => None,
        }
    }

    pub fn sample_points(&self) -> Option<&[EvaluationPoint]> {
        match &self.entries {
            Entries::Exact { points, .. } => Some(points),
            Entries::Approximate { .. } => None,
        }
    }
}

/// Kernel vectors, each with first nonzero entry 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<BigRational>>,
}

impl KernelBasis {
    pub fn corank(&self) -> usize {
        self.vectors.len()
    }

    /// True when both bases span the same space.
    pub fn same_span(&self, other: &KernelBasis) -> bool {
        if self.corank() != other.corank() {
            return false;
        }
        if self.corank() == 0 {
            return true;
        }
        let ncols = self.vectors[0].len();
        let stacked: Vec<Vec<BigRational>> =
            self.vectors.iter().chain(&other.vectors).cloned().collect();
        linalg::rank(&stacked, ncols) == self.corank()
    }
}

/// Builds the exact `mu x |S|` matrix from `mu` fresh samples.
pub fn build_matrix(
    map: &ParametricMap,
    support: &SupportSet,
    mu: usize,
    seed: u64,
) -> Result<InterpolationMatrix> {
    check_dims(map, support)?;
    let points = sample_points(map, mu, seed)?;
    let rows = points.iter().map(|p| p.monomial_row(support)).collect();
    Ok(InterpolationMatrix {
        support: support.clone(),
        entries: Entries::Exact { points, rows },
        seed,
    })
}

/// Builds the floating matrix (complex unit-circle samples, unit-norm rows).
pub fn build_approx_matrix(
    map: &ParametricMap,
    support: &SupportSet,
    mu: usize,
    seed: u64,
    tolerance: f64,
) -> Result<InterpolationMatrix> {
    check_dims(map, support)?;
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let matrix = approx::build_complex_matrix(map, support, mu, seed)?;
    Ok(InterpolationMatrix {
        support: support.clone(),
        entries: Entries::Approximate { matrix, tolerance },
        seed,
    })
}

fn check_dims(map: &ParametricMap, support: &SupportSet) -> Result<()> {
    if support.dim() != map.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: map.ambient_dim(),
            got: support.dim(),
        });
    }
    if support.is_empty() {
        return Err(Error::InvalidArgument("empty support".into()));
    }
    Ok(())
}

/// `|S| - rank(M)`.
pub fn corank(m: &InterpolationMatrix) -> usize {
    match &m.entries {
        Entries::Exact { rows, .. } => m.ncols() - linalg::rank(rows, m.ncols()),
        Entries::Approximate { matrix, tolerance } => approx::numerical_corank(matrix, *tolerance),
    }
}

/// Exact kernel basis; [`Error::EmptyKernel`] if the matrix has full column rank.
pub fn kernel_basis(m: &InterpolationMatrix) -> Result<KernelBasis> {
    let Some(rows) = m.exact_rows() else {
        return Err(Error::InvalidArgument(
            "exact kernel requires an exact matrix".into(),
        ));
    };
    let vectors = linalg::kernel(rows, m.ncols());
    if vectors.is_empty() {
        return Err(Error::EmptyKernel);
    }
    Ok(KernelBasis { vectors })
}

/// Adds `extra` fresh rows drawn from the continuation of the same sample stream.
pub fn extend_matrix(
    map: &ParametricMap,
    m: &InterpolationMatrix,
    extra: usize,
) -> Result<InterpolationMatrix> {
    let Entries::Exact { points, .. } = &m.entries else {
        return Err(Error::InvalidArgument("only exact matrices can be extended".into()));
    };
    let mut sampler = sampling::RationalSampler::new(m.seed);
    // Replay the stream so that extension is deterministic.
    let all = sampling::extend_samples(map, &mut sampler, Vec::new(), points.len() + extra)?;
    debug_assert_eq!(&all[..points.len()], &points[..]);
    let rows = all.iter().map(|p| p.monomial_row(&m.support)).collect();
    Ok(InterpolationMatrix {
        support: m.support.clone(),
        entries: Entries::Exact { points: all, rows },
        seed: m.seed,
    })
}

/// The numeric block `M'` (|S|-1 sample rows) of `M(x)`; the symbolic last
/// row is only materialized when evaluated at a query point.
#[derive(Clone, Debug)]
pub struct FrozenMx {
    support: SupportSet,
    points: Vec<EvaluationPoint>,
    rows: Vec<Vec<BigRational>>,
    corank: usize,
    seed: u64,
}

impl FrozenMx {
    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn sample_points(&self) -> &[EvaluationPoint] {
        &self.points
    }

    /// The `(|S|-1) x |S|` numeric rows.
    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Corank of `M'`; at least 1.
    pub fn corank(&self) -> usize {
        self.corank
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Kernel of `M'`.
    pub fn kernel(&self) -> KernelBasis {
        KernelBasis {
            vectors: linalg::kernel(&self.rows, self.support.len()),
        }
    }

    /// Index of the sample whose image equals `q`, if any.
    pub fn coinciding_row(&self, q: &[BigRational]) -> Option<usize> {
        self.points.iter().position(|p| p.coords == q)
    }

    /// Monomials of the support evaluated at `q`.
    pub fn monomial_row(&self, q: &[BigRational]) -> Vec<BigRational> {
        self.support
            .points()
            .iter()
            .map(|s| crate::poly::monomial_value(s, q))
            .collect()
    }

    /// A copy whose sample `row` is replaced by the next unused sample.
    pub(crate) fn with_resampled_row(&self, map: &ParametricMap, row: usize) -> Result<FrozenMx> {
        let mut sampler = sampling::RationalSampler::new(self.seed);
        let all = sampling::extend_samples(map, &mut sampler, Vec::new(), self.points.len() + 1)?;
        let fresh = all.last().expect("non-empty").clone();
        let mut points = self.points.clone();
        points[row] = fresh;
        let rows: Vec<Vec<BigRational>> = points.iter().map(|p| p.monomial_row(&self.support)).collect();
        let corank = self.support.len() - linalg::rank(&rows, self.support.len());
        Ok(FrozenMx {
            support: self.support.clone(),
            points,
            rows,
            corank,
            seed: self.seed,
        })
    }
}

/// Samples `|S| - 1` points and caches the corank of `M'`.
pub fn freeze_mx(map: &ParametricMap, support: &SupportSet, seed: u64) -> Result<FrozenMx> {
    check_dims(map, support)?;
    if support.len() < 2 {
        return Err(Error::InvalidArgument(
            "M(x) needs a support with at least two monomials".into(),
        ));
    }
    let points = sample_points(map, support.len() - 1, seed)?;
    let rows: Vec<Vec<BigRational>> = points.iter().map(|p| p.monomial_row(support)).collect();
    let corank = support.len() - linalg::rank(&rows, support.len());
    Ok(FrozenMx {
        support: support.clone(),
        points,
        rows,
        corank,
        seed,
    })
}

/// The square matrix `M(q)`: `M'` with the monomials evaluated at `q` appended.
pub fn eval_last_row(f: &FrozenMx, q: &[BigRational]) -> Result<Vec<Vec<BigRational>>> {
    if q.len() != f.support.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.support.dim(),
            got: q.len(),
        });
    }
    if let Some(k) = f.coinciding_row(q) {
        return Err(Error::CoincidesWithSampleRow(k));
    }
    let mut m = f.rows.clone();
    m.push(f.monomial_row(q));
    Ok(m)
}

/// `true` if `M * v == 0` exactly for every basis vector.
pub fn annihilates(rows: &[Vec<BigRational>], k: &KernelBasis) -> bool {
    k.vectors
        .iter()
        .all(|v| linalg::mat_vec(rows, v).iter().all(Zero::is_zero))
}
