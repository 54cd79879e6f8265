//! Independent elimination route for plane curves: the Sylvester resultant of
//! `x*g_0(t) - f_0(t)` and `y*g_1(t) - f_1(t)` with respect to `t`.


use super::{gcd::gcd, strip_monomial, ImplicitPolynomial};
use crate::error::{Error, Result};
use crate::param::ParametricMap;
use crate::poly::MultiPoly;

/// Coefficients in `t` of `x_i * g_i(t) - f_i(t)`, each a polynomial in the coordinates.
fn eliminant(map: &ParametricMap, i: usize) -> Vec<MultiPoly> {
    let xs = map.coord_names().to_vec();
    let c = &map.coords()[i];
    let f = c.numerator().univariate_coeffs(0);
    let g = c.denominator().univariate_coeffs(0);
    let xi = MultiPoly::var(&xs, i);
    let deg = f.len().max(g.len());
    let mut out: Vec<MultiPoly> = (0..deg)
        .map(|k| {
            let gk = g.get(k).map_or(MultiPoly::zero(&xs), |p| {
                MultiPoly::constant(&xs, p.constant_term())
            });
            let fk = f.get(k).map_or(MultiPoly::zero(&xs), |p| {
                MultiPoly::constant(&xs, p.constant_term())
            });
            &(&xi * &gk) - &fk
        })
        .collect();
    while out.len() > 1 && out.last().is_some_and(MultiPoly::is_zero) {
        out.pop();
    }
    out
}

/// Determinant of a square matrix over a polynomial ring, by Bareiss elimination.
pub(crate) fn poly_determinant(mut m: Vec<Vec<MultiPoly>>, vars: &[String]) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(vars);
    }
    let mut prev = MultiPoly::one(vars);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return MultiPoly::zero(vars);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero(vars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of two univariate polynomials given by ascending coefficients.
fn sylvester_matrix(a: &[MultiPoly], b: &[MultiPoly], vars: &[String]) -> Vec<Vec<MultiPoly>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, shifts) in [(a, n), (b, m)] {
        let deg = poly.len() - 1;
        for s in 0..shifts {
            let mut row = vec![MultiPoly::zero(vars); size];
            for k in 0..=deg {
                // descending powers across the row
                row[s + k] = poly[deg - k].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Implicit equation of a rational plane curve by resultant elimination,
/// with the constant content and any monomial factor removed.
pub fn sylvester_oracle(map: &ParametricMap) -> Result<ImplicitPolynomial> {
    if map.n() != 1 || !map.is_rational() {
        return Err(Error::NotACurve(map.n()));
    }
    let vars = map.coord_names().to_vec();
    let a = eliminant(map, 0);
    let b = eliminant(map, 1);
    if a.len() == 1 || b.len() == 1 {
        return Err(Error::InvalidMap(
            "a coordinate does not depend on the parameter".into(),
        ));
    }
    let r = poly_determinant(sylvester_matrix(&a, &b, &vars), &vars);
    if r.is_zero() {
        return Err(Error::InvalidMap("resultant vanishes identically".into()));
    }
    let p = ImplicitPolynomial::new(r).expect("nonzero");
    Ok(strip_monomial(&p))
}

/// True when some numerator shares a root with its denominator, or the two
/// denominators share a root; the resultant may then carry extraneous factors.
pub fn shares_denominator_roots(map: &ParametricMap) -> bool {
    let c = map.coords();
    let nontrivial = |a: &MultiPoly, b: &MultiPoly| {
        !a.is_zero() && !b.is_zero() && !gcd(a, b).is_constant()
    };
    c.iter()
        .any(|rf| nontrivial(rf.numerator(), rf.denominator()))
        || c.windows(2)
            .any(|w| nontrivial(w[0].denominator(), w[1].denominator()))
}
