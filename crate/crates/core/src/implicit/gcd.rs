//! Multivariate GCD over the rationals.
//!
//! Recursive: a polynomial is viewed as univariate in its first occurring
//! variable with coefficients in the remaining ones; contents are handled by
//! recursion and primitive parts by the subresultant remainder sequence.

use crate::poly::MultiPoly;

type Upoly = Vec<MultiPoly>;

fn degree(p: &Upoly) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn is_zero(p: &Upoly) -> bool {
    p.iter().all(MultiPoly::is_zero)
}

fn trim(p: &mut Upoly) {
    while p.len() > 1 && p.last().is_some_and(MultiPoly::is_zero) {
        p.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, coefficients kept in the polynomial ring.
fn pseudo_remainder(a: &Upoly, b: &Upoly) -> Upoly {
    let db = degree(b);
    let lb = &b[db];
    let mut r = a.clone();
    trim(&mut r);
    let delta = degree(a) + 1 - db;
    let mut steps = 0;
    while !is_zero(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] = &r[i + shift] - &(&lr * bc);
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        steps += 1;
    }
    if steps < delta {
        let f = lb.pow((delta - steps) as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn div_all(p: &Upoly, d: &MultiPoly) -> Upoly {
    p.iter()
        .map(|c| c.div_exact(d).expect("exact division in subresultant sequence"))
        .collect()
}

/// GCD of the coefficients of `p` in variable `var`.
pub(crate) fn content(p: &MultiPoly, var: usize) -> MultiPoly {
    p.univariate_coeffs(var)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(MultiPoly::zero(p.vars()), |g, c| gcd(&g, c))
}

/// GCD normalized to lex-leading coefficient 1; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let one = MultiPoly::one(a.vars());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    let n = a.nvars();
    let v = (0..n)
        .find(|&i| a.uses_var(i) || b.uses_var(i))
        .expect("non-constant input uses a variable");
    if !a.uses_var(v) {
        return gcd(a, &content(b, v));
    }
    if !b.uses_var(v) {
        return gcd(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");

    let mut ua = pa.univariate_coeffs(v);
    let mut ub = pb.univariate_coeffs(v);
    if degree(&ua) < degree(&ub) {
        std::mem::swap(&mut ua, &mut ub);
    }
    let mut g = one.clone();
    let mut h = one.clone();
    let last = loop {
        let delta = degree(&ua) - degree(&ub);
        let r = pseudo_remainder(&ua, &ub);
        if is_zero(&r) {
            break Some(ub);
        }
        if degree(&r) == 0 {
            break None;
        }
        let divisor = &g * &h.pow(delta as u32);
        ua = ub;
        ub = div_all(&r, &divisor);
        g = ua[degree(&ua)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d as u32)
                .div_exact(&h.pow(d as u32 - 1))
                .expect("exact division in subresultant sequence"),
        };
    };
    match last {
        None => c,
        Some(u) => {
            let gp = MultiPoly::from_univariate_coeffs(a.vars(), v, &u);
            let pp = gp.div_exact(&content(&gp, v)).expect("content divides");
            (&c * &pp).monic()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    fn x() -> MultiPoly {
        MultiPoly::var(&vars(), 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(&vars(), 1)
    }
    fn z() -> MultiPoly {
        MultiPoly::var(&vars(), 2)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(&vars(), BigRational::from_integer(n.into()))
    }

    #[test]
    fn common_factor_recovered() {
        let p = &(&x().pow(3) - &(&(&x() * &y()) * &c(3))) + &y().pow(3);
        let a = &p * &(&x() + &c(1));
        let b = &p * &(&y() - &z());
        assert_eq!(gcd(&a, &b), p.monic());
    }

    #[test]
    fn coprime_inputs() {
        let a = &x() + &y();
        let b = &x() - &y();
        assert_eq!(gcd(&a, &b), c(1));
        assert_eq!(gcd(&x().pow(2), &y()), c(1));
    }

    #[test]
    fn monomial_factors() {
        let a = &x().pow(2) * &y();
        let b = &x() * &y().pow(3);
        assert_eq!(gcd(&a, &b), &x() * &y());
    }

    #[test]
    fn scalar_multiples() {
        let p = &(&x() * &y()) + &z().pow(2);
        assert_eq!(gcd(&p.scale(&BigRational::new(3.into(), 7.into())), &p.scale(&BigRational::from_integer((-5).into()))), p.monic());
    }

    #[test]
    fn content_only_gcd() {
        // gcd((y+1)x, (y+1)) = y + 1
        let a = &(&y() + &c(1)) * &x();
        let b = &y() + &c(1);
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn higher_degree_gap() {
        // exercises delta >= 2 in the remainder sequence
        let f = &(&x().pow(2) + &y()) + &c(1);
        let a = &f * &(&x().pow(4) + &(&y() * &z()));
        let b = &f * &(&x() - &z());
        assert_eq!(gcd(&a, &b), f);
    }
}
