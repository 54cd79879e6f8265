//! Parametric input: exact rational coordinate functions, parsing, the
//! half-angle transform and exact evaluation.

mod parse;
mod trig;

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::support::{convex_hull, LatticePolytope};

pub use parse::{parse_expression, parse_map, parse_map_json, parse_map_text};
pub use trig::{half_angle, trig_atom};

/// A quotient of two polynomials over the same variable list. Not kept in
/// lowest terms; equality is tested by cross multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: MultiPoly,
    denominator: MultiPoly,
}

impl RationalFunction {
    pub fn new(numerator: MultiPoly, denominator: MultiPoly) -> Result<Self> {
        if numerator.vars() != denominator.vars() {
            return Err(Error::InvalidMap(
                "numerator and denominator use different variables".into(),
            ));
        }
        if denominator.is_zero() {
            return Err(Error::InvalidMap("denominator is identically zero".into()));
        }
        Ok(Self::normalized(numerator, denominator))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let vars = p.vars().to_vec();
        RationalFunction {
            numerator: p,
            denominator: MultiPoly::one(&vars),
        }
    }

    pub fn constant(vars: &[String], c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    // Constant denominators are folded into the numerator.
    fn normalized(numerator: MultiPoly, denominator: MultiPoly) -> Self {
        if denominator.is_constant() {
            let c = denominator.constant_term();
            let vars = numerator.vars().to_vec();
            return RationalFunction {
                numerator: numerator.scale(&c.recip()),
                denominator: MultiPoly::one(&vars),
            };
        }
        RationalFunction {
            numerator,
            denominator,
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.denominator
    }

    pub fn vars(&self) -> &[String] {
        self.numerator.vars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_constant()
    }

    /// `max(deg f, deg g)` in total degree.
    pub fn degree(&self) -> u32 {
        self.numerator
            .total_degree()
            .max(self.denominator.total_degree())
    }

    /// `None` when the denominator vanishes at `point`.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.denominator.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.numerator.eval(point) / d)
    }

    /// Equality as rational functions: `f1*g2 == f2*g1`.
    pub fn equivalent(&self, other: &RationalFunction) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.denominator == other.denominator {
            return Self::normalized(
                &self.numerator + &other.numerator,
                self.denominator.clone(),
            );
        }
        if let Some(k) = self.denominator.div_exact(&other.denominator) {
            return Self::normalized(
                &self.numerator + &(&other.numerator * &k),
                self.denominator.clone(),
            );
        }
        if let Some(k) = other.denominator.div_exact(&self.denominator) {
            return Self::normalized(
                &(&self.numerator * &k) + &other.numerator,
                other.denominator.clone(),
            );
        }
        Self::normalized(
            &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator),
            &self.denominator * &other.denominator,
        )
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        Self::normalized(
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
        )
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        if self.numerator.is_zero() {
            return Err(Error::InvalidMap("division by the zero polynomial".into()));
        }
        Ok(Self::normalized(
            self.denominator.clone(),
            self.numerator.clone(),
        ))
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, k: i64) -> Result<RationalFunction> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let k = k.unsigned_abs() as u32;
        Ok(Self::normalized(
            base.numerator.pow(k),
            base.denominator.pow(k),
        ))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceForm {
    Polynomial,
    Rational,
    Trigonometric,
}

/// `x_i = f_i(t) / g_i(t)` for `i = 0..=n`, over parameters `t_1..t_n`.
///
/// Before [`half_angle`] has been applied a trigonometric map carries
/// `sin(s)` / `cos(s)` atoms among its ring variables; every map returned by
/// the parsers is already rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricMap {
    params: Vec<String>,
    coord_names: Vec<String>,
    coords: Vec<RationalFunction>,
    source_form: SourceForm,
}

impl ParametricMap {
    pub fn new(
        params: Vec<String>,
        coord_names: Vec<String>,
        coords: Vec<RationalFunction>,
        source_form: SourceForm,
    ) -> Result<Self> {
        if coords.len() != coord_names.len() {
            return Err(Error::DimensionMismatch {
                expected: coord_names.len(),
                got: coords.len(),
            });
        }
        if coords.iter().any(|c| c.vars() != params.as_slice()) {
            return Err(Error::InvalidMap(
                "all coordinates must share the parameter list".into(),
            ));
        }
        let n = trig::effective_parameter_count(&params);
        if n == 0 {
            return Err(Error::InvalidMap("at least one parameter is required".into()));
        }
        if coords.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: coords.len(),
            });
        }
        Ok(ParametricMap {
            params,
            coord_names,
            coords,
            source_form,
        })
    }

    /// Convenience constructor for rational maps given as `(numerator, denominator)` pairs.
    pub fn from_pairs(params: &[String], coords: Vec<(MultiPoly, MultiPoly)>) -> Result<Self> {
        let names = default_coord_names(coords.len());
        let coords = coords
            .into_iter()
            .map(|(f, g)| RationalFunction::new(f, g))
            .collect::<Result<Vec<_>>>()?;
        let form = if coords.iter().all(|c| c.is_polynomial()) {
            SourceForm::Polynomial
        } else {
            SourceForm::Rational
        };
        Self::new(params.to_vec(), names, coords, form)
    }

    /// Number of parameters `n`.
    pub fn n(&self) -> usize {
        self.params.len()
    }

    /// Ambient dimension `n + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn coord_names(&self) -> &[String] {
        &self.coord_names
    }

    pub fn coords(&self) -> &[RationalFunction] {
        &self.coords
    }

    pub fn source_form(&self) -> SourceForm {
        self.source_form
    }

    pub fn is_rational(&self) -> bool {
        trig::trig_atoms(&self.params).is_empty()
    }

    /// Per-coordinate `max(deg f_i, deg g_i)`.
    pub fn degrees(&self) -> Vec<u32> {
        self.coords.iter().map(RationalFunction::degree).collect()
    }

    /// Renders in the text grammar accepted by [`parse_map_text`].
    pub fn render(&self) -> String {
        self.coord_names
            .iter()
            .zip(&self.coords)
            .map(|(name, c)| format!("{name} = {c}"))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for ParametricMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `x, y, z` for up to three coordinates, otherwise `x0, x1, ...`.
pub fn default_coord_names(count: usize) -> Vec<String> {
    if count <= 3 {
        ["x", "y", "z"][..count].iter().map(|s| s.to_string()).collect()
    } else {
        (0..count).map(|i| format!("x{i}")).collect()
    }
}

/// Evaluates every coordinate at `tau` exactly.
pub fn eval_map(map: &ParametricMap, tau: &[BigRational]) -> Result<Vec<BigRational>> {
    if !map.is_rational() {
        return Err(Error::InvalidMap(
            "trigonometric map must be passed through half_angle before evaluation".into(),
        ));
    }
    if tau.len() != map.n() {
        return Err(Error::DimensionMismatch {
            expected: map.n(),
            got: tau.len(),
        });
    }
    map.coords
        .iter()
        .enumerate()
        .map(|(i, c)| c.eval(tau).ok_or(Error::DenominatorZero(i)))
        .collect()
}

/// Convex hull of the support of `p`.
pub fn newton_polytope(p: &MultiPoly) -> Result<LatticePolytope> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<Vec<i64>> = p
        .terms()
        .keys()
        .map(|e| e.iter().map(|&k| k as i64).collect())
        .collect();
    Ok(convex_hull(&pts))
}
