//! Geometric queries answered from the frozen matrix `M'` without expanding
//! the implicit polynomial: membership, sidedness and ray shooting.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::implicit::{kernel_to_polys, poly_gcd, sign_of, strip_monomial, ImplicitPolynomial};
use crate::interp::{self, linalg, FrozenMx};
use crate::param::ParametricMap;
use crate::poly::format_rational;
use crate::support::{lattice_points, translate_positive, LatticePolytope, SupportSet};
use crate::upoly::{smallest_positive_root, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    OnSurface,
    OffSurface,
}

/// Membership verdict plus the sample row that had to be replaced because
/// it coincided with the query point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub verdict: Membership,
    pub resampled_row: Option<usize>,
}

/// Ray `r(rho) = base + rho * direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    base: Vec<BigRational>,
    direction: Vec<BigRational>,
}

impl Ray {
    pub fn new(base: Vec<BigRational>, direction: Vec<BigRational>) -> Result<Self> {
        if base.len() != direction.len() {
            return Err(Error::DimensionMismatch {
                expected: base.len(),
                got: direction.len(),
            });
        }
        if direction.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("ray direction must be nonzero".into()));
        }
        Ok(Ray { base, direction })
    }

    pub fn base(&self) -> &[BigRational] {
        &self.base
    }

    pub fn direction(&self) -> &[BigRational] {
        &self.direction
    }

    pub fn at(&self, rho: &BigRational) -> Vec<BigRational> {
        self.base
            .iter()
            .zip(&self.direction)
            .map(|(b, d)| b + rho * d)
            .collect()
    }
}

/// First intersection of a ray with the hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayHit {
    /// The root lies in `(lo, hi]`, or equals both when found exactly.
    pub lo: BigRational,
    pub hi: BigRational,
    pub rho: BigRational,
    pub point: Vec<BigRational>,
}

impl RayHit {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "interval": [format_rational(&self.lo), format_rational(&self.hi)],
            "rho": format_rational(&self.rho),
            "point": self.point.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

/// The frozen representation of one hypersurface, immutable once built.
#[derive(Debug)]
pub struct SurfaceHandle {
    map: ParametricMap,
    frozen: FrozenMx,
    corank1: bool,
    fallback: Option<ImplicitPolynomial>,
    minors: OnceLock<Vec<BigRational>>,
}

impl SurfaceHandle {
    /// Samples `M'` on `support` and checks it against one more sample: a
    /// support too small to hold the implicit polynomial gives [`Error::EmptyKernel`].
    pub fn freeze(map: &ParametricMap, support: &SupportSet, seed: u64) -> Result<Self> {
        let frozen = interp::freeze_mx(map, support, seed)?;
        let check = interp::sample_points(map, support.len(), seed)?;
        let extra = check.last().expect("non-empty").monomial_row(support);
        let kernel = frozen.kernel();
        if !interp::annihilates(&[extra], &kernel) {
            return Err(Error::EmptyKernel);
        }
        let corank1 = frozen.corank() == 1;
        let fallback = if corank1 {
            None
        } else {
            let polys = kernel_to_polys(&kernel, support, map.coord_names());
            Some(strip_monomial(&poly_gcd(&polys)?))
        };
        Ok(SurfaceHandle {
            map: map.clone(),
            frozen,
            corank1,
            fallback,
            minors: OnceLock::new(),
        })
    }

    /// Freezes on the lattice points of `q`, shifted into the positive orthant.
    pub fn from_polytope(map: &ParametricMap, q: &LatticePolytope, seed: u64, cap: u128) -> Result<Self> {
        if q.dim() != map.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: map.ambient_dim(),
                got: q.dim(),
            });
        }
        let s = lattice_points(&translate_positive(q), cap)?;
        Self::freeze(map, &s, seed)
    }

    pub fn frozen(&self) -> &FrozenMx {
        &self.frozen
    }

    pub fn corank(&self) -> usize {
        self.frozen.corank()
    }

    pub fn is_corank1(&self) -> bool {
        self.corank1
    }

    pub fn fallback_poly(&self) -> Option<&ImplicitPolynomial> {
        self.fallback.as_ref()
    }

    fn check_point(&self, q: &[BigRational]) -> Result<()> {
        let dim = self.frozen.support().dim();
        if q.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: q.len(),
            });
        }
        if let Some(i) = q.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate(i));
        }
        Ok(())
    }

    /// `det M(q)`; proportional to the implicit polynomial at `q` with a
    /// factor fixed for the lifetime of the handle when the corank is 1.
    pub fn det(&self, q: &[BigRational]) -> Result<BigRational> {
        self.check_point(q)?;
        Ok(linalg::determinant(&interp::eval_last_row(&self.frozen, q)?))
    }

    pub fn membership(&self, q: &[BigRational]) -> Result<Membership> {
        Ok(self.membership_report(q)?.verdict)
    }

    /// On the surface iff appending the monomial row of `q` leaves the corank unchanged.
    pub fn membership_report(&self, q: &[BigRational]) -> Result<MembershipReport> {
        self.check_point(q)?;
        let (frozen, resampled_row) = match self.frozen.coinciding_row(q) {
            Some(k) => (self.frozen.with_resampled_row(&self.map, k)?, Some(k)),
            None => (self.frozen.clone(), None),
        };
        let m = interp::eval_last_row(&frozen, q)?;
        let n = frozen.support().len();
        let corank_q = n - linalg::rank(&m, n);
        let verdict = if corank_q == frozen.corank() {
            Membership::OnSurface
        } else {
            Membership::OffSurface
        };
        Ok(MembershipReport {
            verdict,
            resampled_row,
        })
    }

    /// Sign of the implicit polynomial at an off-surface point, relative to
    /// this handle's scaling.
    pub fn side_sign(&self, q: &[BigRational]) -> Result<i32> {
        self.check_point(q)?;
        let s = match &self.fallback {
            Some(p) => sign_of(&p.eval(q)),
            None => match interp::eval_last_row(&self.frozen, q) {
                Ok(m) => linalg::det_sign(&m),
                // the image of a sample lies on the surface
                Err(Error::CoincidesWithSampleRow(_)) => 0,
                Err(e) => return Err(e),
            },
        };
        if s == 0 {
            Err(Error::OnSurface)
        } else {
            Ok(s)
        }
    }

    /// 1 if both points lie on the same side, -1 if on opposite sides, 0 if either is on the surface.
    pub fn sidedness(&self, q1: &[BigRational], q2: &[BigRational]) -> Result<i32> {
        self.check_point(q1)?;
        self.check_point(q2)?;
        let side = |q| match self.side_sign(q) {
            Ok(s) => Ok(s),
            Err(Error::OnSurface) => Ok(0),
            Err(e) => Err(e),
        };
        let (a, b) = (side(q1)?, side(q2)?);
        Ok(if a == 0 || b == 0 {
            0
        } else if a == b {
            1
        } else {
            -1
        })
    }

    /// Signed last-row cofactors of `M(x)`, computed once.
    pub fn minors(&self) -> &[BigRational] {
        self.minors.get_or_init(|| {
            let rows = self.frozen.rows();
            let n = self.frozen.support().len();
            (0..n)
                .map(|j| {
                    let sub: Vec<Vec<BigRational>> = rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, v)| v.clone())
                                .collect()
                        })
                        .collect();
                    let d = linalg::determinant(&sub);
                    if (n - 1 + j) % 2 == 1 {
                        -d
                    } else {
                        d
                    }
                })
                .collect()
        })
    }

    /// `det M(r(rho))` as a polynomial in `rho`.
    pub fn ray_polynomial(&self, ray: &Ray) -> Result<UPoly> {
        if !self.corank1 {
            return Err(Error::NotCorank1(self.corank()));
        }
        let dim = self.frozen.support().dim();
        if ray.base.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: ray.base.len(),
            });
        }
        let lines: Vec<UPoly> = ray
            .base
            .iter()
            .zip(&ray.direction)
            .map(|(b, d)| UPoly::linear(b.clone(), d.clone()))
            .collect();
        let mut p = UPoly::zero();
        for (s, c) in self.frozen.support().points().iter().zip(self.minors()) {
            if c.is_zero() {
                continue;
            }
            let mut m = UPoly::constant(c.clone());
            for (line, &e) in lines.iter().zip(s) {
                m = &m * &line.pow(e);
            }
            p = &p + &m;
        }
        Ok(p)
    }

    /// Smallest `rho > 0` with `r(rho)` on the surface, isolated to width `tol`.
    pub fn ray_shoot(&self, ray: &Ray, tol: &BigRational) -> Result<Option<RayHit>> {
        if !tol.is_positive() {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        let p = self.ray_polynomial(ray)?;
        if p.is_zero() {
            return Err(Error::DegenerateRay);
        }
        Ok(smallest_positive_root(&p, tol).map(|(lo, hi)| {
            let rho = (&lo + &hi) / BigRational::from_integer(2.into());
            let point = ray.at(&rho);
            RayHit { lo, hi, rho, point }
        }))
    }
}
