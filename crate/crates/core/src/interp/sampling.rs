use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::param::{eval_map, ParametricMap};
use crate::poly::monomial_value;
use crate::support::SupportSet;

const MAX_COMPONENT: u32 = 1 << 16;

/// A parameter value together with its image under the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationPoint {
    pub tau: Vec<BigRational>,
    pub coords: Vec<BigRational>,
}

impl EvaluationPoint {
    /// Candidate monomials evaluated at the image point.
    pub fn monomial_row(&self, support: &SupportSet) -> Vec<BigRational> {
        support
            .points()
            .iter()
            .map(|s| monomial_value(s, &self.coords))
            .collect()
    }
}

/// Deterministic stream of random rationals `±a/b`, `a, b` uniform in `[1, 2^16]`.
pub(crate) struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next(&mut self) -> BigRational {
        let a: u32 = self.rng.gen_range(1..=MAX_COMPONENT);
        let b: u32 = self.rng.gen_range(1..=MAX_COMPONENT);
        let r = BigRational::new(BigInt::from(a), BigInt::from(b));
        if self.rng.gen::<bool>() {
            -r
        } else {
            r
        }
    }

    pub fn next_vec(&mut self, n: usize) -> Vec<BigRational> {
        (0..n).map(|_| self.next()).collect()
    }
}

/// Draws `count` distinct evaluation points, rejecting parameter values that
/// hit a pole, repeat an earlier value, or repeat an earlier image.
pub fn sample_points(map: &ParametricMap, count: usize, seed: u64) -> Result<Vec<EvaluationPoint>> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let mut sampler = RationalSampler::new(seed);
    extend_samples(map, &mut sampler, Vec::new(), count)
}

pub(crate) fn extend_samples(
    map: &ParametricMap,
    sampler: &mut RationalSampler,
    mut points: Vec<EvaluationPoint>,
    count: usize,
) -> Result<Vec<EvaluationPoint>> {
    let budget = 100 * count + 1000;
    let mut seen_tau: HashSet<Vec<BigRational>> = points.iter().map(|p| p.tau.clone()).collect();
    let mut seen_img: HashSet<Vec<BigRational>> =
        points.iter().map(|p| p.coords.clone()).collect();
    let mut attempts = 0;
    while points.len() < count {
        if attempts == budget {
            return Err(Error::SamplingExhausted(attempts));
        }
        attempts += 1;
        let tau = sampler.next_vec(map.n());
        if seen_tau.contains(&tau) {
            continue;
        }
        let coords = match eval_map(map, &tau) {
            Ok(c) => c,
            Err(Error::DenominatorZero(_)) => continue,
            Err(e) => return Err(e),
        };
        if seen_img.contains(&coords) {
            continue;
        }
        seen_tau.insert(tau.clone());
        seen_img.insert(coords.clone());
        points.push(EvaluationPoint { tau, coords });
    }
    Ok(points)
}
