//! From kernel vectors to the implicit polynomial.

mod gcd;
mod sylvester;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::{self, approx, KernelBasis, Mode};
use crate::param::ParametricMap;
use crate::poly::{format_rational, MultiPoly};
use crate::support::{lattice_points, translate_positive, LatticePolytope, SupportSet, DEFAULT_CAP};

pub use gcd::gcd;
pub use sylvester::{shares_denominator_roots, sylvester_oracle};

/// Offset between the primary seed and the seed of the cross-validation run.
const VALIDATION_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

/// Nonzero polynomial in the coordinates, scaled so the lex-greatest term has coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImplicitPolynomial {
    poly: MultiPoly,
}

impl ImplicitPolynomial {
    /// `None` for the zero polynomial.
    pub fn new(p: MultiPoly) -> Option<Self> {
        if p.is_zero() {
            None
        } else {
            Some(ImplicitPolynomial { poly: p.monic() })
        }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn vars(&self) -> &[String] {
        self.poly.vars()
    }

    pub fn eval(&self, q: &[BigRational]) -> BigRational {
        self.poly.eval(q)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .poly
            .terms()
            .iter()
            .rev()
            .map(|(e, c)| serde_json::json!({"exp": e, "coef": format_rational(c)}))
            .collect();
        serde_json::json!({"vars": self.vars(), "terms": terms})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Term {
            exp: Vec<u32>,
            coef: String,
        }
        #[derive(Deserialize)]
        struct Doc {
            vars: Vec<String>,
            terms: Vec<Term>,
        }
        let bad = |m: String| Error::InvalidArgument(format!("polynomial JSON: {m}"));
        let doc: Doc = serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string()))?;
        let mut p = MultiPoly::zero(&doc.vars);
        for t in doc.terms {
            if t.exp.len() != doc.vars.len() {
                return Err(bad("exponent length differs from variable count".into()));
            }
            let c: BigRational = t.coef.parse().map_err(|_| bad(format!("bad coefficient `{}`", t.coef)))?;
            p.add_term(t.exp, c);
        }
        Self::new(p).ok_or_else(|| bad("zero polynomial".into()))
    }
}

impl fmt::Display for ImplicitPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Polynomial `j` has coefficient `K_j[i]` on monomial `s_i`.
pub fn kernel_to_polys(k: &KernelBasis, s: &SupportSet, vars: &[String]) -> Vec<ImplicitPolynomial> {
    k.vectors
        .iter()
        .filter_map(|v| {
            let p = MultiPoly::from_terms(
                vars,
                s.points().iter().cloned().zip(v.iter().cloned()),
            );
            ImplicitPolynomial::new(p)
        })
        .collect()
}

/// GCD over the rationals of all inputs.
pub fn poly_gcd(polys: &[ImplicitPolynomial]) -> Result<ImplicitPolynomial> {
    let (first, rest) = polys
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("gcd of an empty list".into()))?;
    let mut g = first.poly.clone();
    for p in rest {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &p.poly);
    }
    Ok(ImplicitPolynomial::new(g).expect("gcd of nonzero polynomials is nonzero"))
}

/// Divides out `x^gamma`, `gamma_i` the least exponent of `x_i` over the support.
pub fn strip_monomial(p: &ImplicitPolynomial) -> ImplicitPolynomial {
    let gamma = p.poly.min_exponent();
    ImplicitPolynomial {
        poly: p.poly.div_monomial(&gamma),
    }
}

#[derive(Clone, Debug)]
pub struct ImplicitizeConfig {
    pub mode: Mode,
    pub seed: u64,
    /// `mu = ceil(mu_factor * |S|)`; `None` picks 1 (exact) or 2 (approximate).
    pub mu_factor: Option<BigRational>,
    pub cap: u128,
    /// Rebuild with a second seed and require the same kernel.
    pub validate: bool,
}

impl Default for ImplicitizeConfig {
    fn default() -> Self {
        ImplicitizeConfig {
            mode: Mode::Exact,
            seed: 0,
            mu_factor: None,
            cap: DEFAULT_CAP,
            validate: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub mode: String,
    pub support_size: usize,
    pub mu: usize,
    pub corank: usize,
    pub seed: u64,
    pub validation_seed: Option<u64>,
    pub genericity_check: String,
    pub polytope_shift: Vec<i64>,
    pub kernel_polynomials: usize,
    pub stripped_monomial: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Implicitization {
    pub polynomial: ImplicitPolynomial,
    pub diagnostics: Diagnostics,
}

fn mu_for(config: &ImplicitizeConfig, support_size: usize) -> Result<usize> {
    let Some(f) = &config.mu_factor else {
        return Ok(config.mode.default_mu(support_size));
    };
    if f < &BigRational::one() {
        return Err(Error::InvalidArgument("mu factor must be at least 1".into()));
    }
    let mu = (f * BigRational::from_integer(BigInt::from(support_size))).ceil();
    usize::try_from(mu.to_integer()).map_err(|_| Error::InvalidArgument("mu too large".into()))
}

/// Full pipeline: lattice points of `q`, interpolation matrix, kernel,
/// GCD when the kernel has several vectors, monomial strip.
pub fn implicitize(
    map: &ParametricMap,
    q: &LatticePolytope,
    config: &ImplicitizeConfig,
) -> Result<Implicitization> {
    if q.dim() != map.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: map.ambient_dim(),
            got: q.dim(),
        });
    }
    let shift: Vec<i64> = q.bounding_box().iter().map(|(lo, _)| -lo).collect();
    let q = translate_positive(q);
    let s = lattice_points(&q, config.cap)?;
    let mu = mu_for(config, s.len())?;
    let vars = map.coord_names().to_vec();

    match config.mode {
        Mode::Exact => {
            let m = interp::build_matrix(map, &s, mu, config.seed)?;
            let k = interp::kernel_basis(&m)?;
            let mut validation_seed = None;
            let mut check = "skipped".to_string();
            if config.validate {
                let seed2 = config.seed.wrapping_add(VALIDATION_SEED_OFFSET);
                let m2 = interp::build_matrix(map, &s, mu, seed2)?;
                let same = match interp::kernel_basis(&m2) {
                    Ok(k2) => k.same_span(&k2),
                    Err(Error::EmptyKernel) => false,
                    Err(e) => return Err(e),
                };
                if !same {
                    return Err(Error::NonGenericSampling);
                }
                validation_seed = Some(seed2);
                check = "passed".into();
            }
            let polys = kernel_to_polys(&k, &s, &vars);
            let g = if polys.len() == 1 {
                polys[0].clone()
            } else {
                poly_gcd(&polys)?
            };
            let gamma = g.poly.min_exponent();
            let p = strip_monomial(&g);
            Ok(Implicitization {
                polynomial: p,
                diagnostics: Diagnostics {
                    mode: "exact".into(),
                    support_size: s.len(),
                    mu,
                    corank: k.corank(),
                    seed: config.seed,
                    validation_seed,
                    genericity_check: check,
                    polytope_shift: shift,
                    kernel_polynomials: polys.len(),
                    stripped_monomial: gamma,
                },
            })
        }
        Mode::Approximate { tolerance } => {
            let m = interp::build_approx_matrix(map, &s, mu, config.seed, tolerance)?;
            let interp::Entries::Approximate { matrix, .. } = &m.entries else {
                unreachable!("approximate build returns approximate entries")
            };
            let kv = approx::numerical_kernel(matrix, tolerance);
            match kv.len() {
                0 => return Err(Error::EmptyKernel),
                1 => {}
                r => return Err(Error::NotCorank1(r)),
            }
            let coeffs = snap_kernel_vector(kv[0].as_slice(), tolerance);
            let p = MultiPoly::from_terms(&vars, s.points().iter().cloned().zip(coeffs));
            let g = ImplicitPolynomial::new(p).ok_or(Error::EmptyKernel)?;
            let gamma = g.poly.min_exponent();
            Ok(Implicitization {
                polynomial: strip_monomial(&g),
                diagnostics: Diagnostics {
                    mode: format!("approximate(tol={tolerance:e})"),
                    support_size: s.len(),
                    mu,
                    corank: 1,
                    seed: config.seed,
                    validation_seed: None,
                    genericity_check: "skipped".into(),
                    polytope_shift: shift,
                    kernel_polynomials: 1,
                    stripped_monomial: gamma,
                },
            })
        }
    }
}

/// Scales a floating kernel vector so its largest entry is 1, drops entries
/// below `sqrt(tolerance)` and rounds the rest to nearby small-denominator rationals.
fn snap_kernel_vector(v: &[Complex64], tolerance: f64) -> Vec<BigRational> {
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(Complex64::new(1.0, 0.0));
    let threshold = tolerance.sqrt();
    v.iter()
        .map(|z| {
            let r = (z / pivot).re;
            if r.abs() < threshold {
                BigRational::zero()
            } else {
                rationalize(r, threshold)
            }
        })
        .collect()
}

/// Shortest continued-fraction convergent within `eps` of `x`.
fn rationalize(x: f64, eps: f64) -> BigRational {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let approx = BigRational::new(h1.clone(), k1.clone());
        let err = (x - num_traits::ToPrimitive::to_f64(&approx).unwrap_or(f64::NAN)).abs();
        let frac = r - a;
        if err <= eps * x.abs().max(1.0) || frac.abs() < 1e-15 {
            return approx;
        }
        r = 1.0 / frac;
    }
    BigRational::new(h1, k1)
}

/// Sign of a nonzero rational, or 0.
pub(crate) fn sign_of(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
