//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order is
//! lexicographic in the exponents and the last entry is the lex-leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

/// Exponent vector, one entry per variable.
pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, BigRational::one())
    }

    /// The polynomial consisting of the single variable `vars[i]`.
    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, BigRational::one())
    }

    pub fn monomial(vars: &[String], exp: Exponent, c: BigRational) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length must match variable count");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing duplicates
    /// and dropping zeros.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: Exponent, c: BigRational) {
        assert_eq!(exp.len(), self.vars.len(), "exponent length must match variable count");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigRational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, exp: &[u32]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lex-greatest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.last_key_value().map(|(_, c)| c)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// True if variable `var` occurs in some term.
    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Divides by the lex-leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len(), "point dimension must match variable count");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * monomial_value(e, point);
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.vars.len(), "point dimension must match variable count");
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m *= x.powu(k);
                }
            }
            acc += m;
        }
        acc
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`; the
    /// returned polynomials keep the full variable list with `var` absent.
    pub fn univariate_coeffs(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.vars); deg + 1];
        if self.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = e2[var] as usize;
            e2[var] = 0;
            out[d].terms.insert(e2, c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::univariate_coeffs`].
    pub fn from_univariate_coeffs(vars: &[String], var: usize, coeffs: &[MultiPoly]) -> Self {
        let mut p = Self::zero(vars);
        for (d, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += d as u32;
                p.add_term(e2, v.clone());
            }
        }
        p
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.vars, divisor.vars, "variable lists differ");
        let (lead_e, lead_c) = divisor.leading_term()?;
        let lead_e = lead_e.clone();
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((re, rc)) = rem.leading_term() {
            if re.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponent = re.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let qc = rc / &lead_c;
            let step = Self::monomial(&self.vars, qe.clone(), qc.clone());
            rem = &rem - &(&step * divisor);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Per-variable minimum exponent over the support.
    pub fn min_exponent(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.vars.len()];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Divides every term by `x^shift`. Panics if some exponent would go negative.
    pub fn div_monomial(&self, shift: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e2 = e
                        .iter()
                        .zip(shift)
                        .map(|(a, b)| a.checked_sub(*b).expect("monomial does not divide term"))
                        .collect();
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, shift: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Same terms over a renamed variable list of equal length.
    pub fn with_vars(&self, vars: &[String]) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        MultiPoly {
            vars: vars.to_vec(),
            terms: self.terms.clone(),
        }
    }

    /// Re-embeds into a larger variable list; `map[i]` is the new index of old variable `i`.
    pub fn embed(&self, vars: &[String], map: &[usize]) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            p.add_term(e2, c.clone());
        }
        p
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        })
    }
}

/// `Π point[i]^exp[i]`, exact.
pub fn monomial_value(exp: &[u32], point: &[BigRational]) -> BigRational {
    let mut m = BigRational::one();
    for (x, &k) in point.iter().zip(exp) {
        if k > 0 {
            m *= Pow::pow(x, k);
        }
    }
    m
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = MultiPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(vars: &[String], e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in vars.iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

/// Terms are printed from the lex-greatest exponent downwards, e.g.
/// `x^3 - 3*x*y + y^3`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(&self.vars, e);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}
