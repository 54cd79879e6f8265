//! Test-side oracles, written independently of the library internals.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use sparse_implicit::{parse_map, MultiPoly, ParametricMap};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

pub fn folium() -> ParametricMap {
    parse_map("x = 3t/(1+t^3); y = 3t^2/(1+t^3)").unwrap()
}

/// `x^3 - 3xy + y^3`, written out by hand.
pub fn folium_poly() -> MultiPoly {
    MultiPoly::from_terms(
        &xy(),
        [(vec![3, 0], int(1)), (vec![1, 1], int(-3)), (vec![0, 3], int(1))],
    )
}

pub fn folium_vertices() -> Vec<Vec<i64>> {
    vec![vec![3, 0], vec![0, 3], vec![1, 1]]
}

/// Random rational with numerator and denominator bounded by `m`.
pub fn rand_rational<R: Rng>(rng: &mut R, m: i64) -> BigRational {
    let n = rng.gen_range(-m..=m);
    let d = rng.gen_range(1..=m);
    q(n, d)
}

pub fn rand_nonzero<R: Rng>(rng: &mut R, m: i64) -> BigRational {
    loop {
        let r = rand_rational(rng, m);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Solves the square-or-tall system `a * lambda = b` by Gauss-Jordan
/// elimination; `None` if inconsistent or if the columns are dependent.
fn solve_unique(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for j in 0..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
                let v = &f * &b[r];
                b[i] -= v;
            }
        }
        r += 1;
    }
    if b[cols..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(b[..cols].to_vec())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Membership in the convex hull of `pts` by Caratheodory: `x` lies in the
/// hull iff it is a nonnegative affine combination of some affinely
/// independent subset.
pub fn in_hull(pts: &[Vec<i64>], x: &[i64]) -> bool {
    let d = x.len();
    for k in 1..=(d + 1).min(pts.len()) {
        for s in subsets(pts.len(), k) {
            let a: Vec<Vec<BigRational>> = (0..=d)
                .map(|i| {
                    s.iter()
                        .map(|&j| if i < d { int(pts[j][i]) } else { int(1) })
                        .collect()
                })
                .collect();
            let b: Vec<BigRational> = (0..=d)
                .map(|i| if i < d { int(x[i]) } else { int(1) })
                .collect();
            if let Some(l) = solve_unique(a, b) {
                if l.iter().all(|v| !v.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

fn bbox(pts: &[Vec<i64>]) -> Vec<(i64, i64)> {
    (0..pts[0].len())
        .map(|i| {
            let lo = pts.iter().map(|p| p[i]).min().unwrap();
            let hi = pts.iter().map(|p| p[i]).max().unwrap();
            (lo, hi)
        })
        .collect()
}

fn box_points(b: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &(lo, hi) in b {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Integer points of the hull, by bounding-box enumeration.
pub fn brute_lattice_points(pts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = box_points(&bbox(pts))
        .into_iter()
        .filter(|x| in_hull(pts, x))
        .collect();
    v.sort();
    v
}

/// Number of integer shifts `t` with `P + t` inside `Q`, given vertex lists.
pub fn brute_translate_count(p: &[Vec<i64>], qv: &[Vec<i64>]) -> usize {
    let bp = bbox(p);
    let bq = bbox(qv);
    let range: Vec<(i64, i64)> = bp
        .iter()
        .zip(&bq)
        .map(|(&(plo, phi), &(qlo, qhi))| (qlo - plo, qhi - phi))
        .collect();
    if range.iter().any(|(lo, hi)| lo > hi) {
        return 0;
    }
    box_points(&range)
        .into_iter()
        .filter(|t| {
            p.iter().all(|v| {
                let s: Vec<i64> = v.iter().zip(t).map(|(a, b)| a + b).collect();
                in_hull(qv, &s)
            })
        })
        .count()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigRational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// Dense univariate polynomial, ascending coefficients.
pub type Dense = Vec<BigRational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn dmul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn dadd(a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub fn deval(p: &Dense, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `p(base + rho * dir)` as a polynomial in `rho`.
pub fn restrict_to_line(p: &MultiPoly, base: &[BigRational], dir: &[BigRational]) -> Dense {
    let mut out: Dense = vec![];
    for (e, c) in p.terms() {
        let mut term: Dense = vec![c.clone()];
        for (i, &k) in e.iter().enumerate() {
            let lin = trim(vec![base[i].clone(), dir[i].clone()]);
            for _ in 0..k {
                term = dmul(&term, &lin);
            }
        }
        out = dadd(&out, &term);
    }
    out
}

fn drem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let f = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn deriv(p: &Dense) -> Dense {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
}

/// Distinct real roots of `p` in `(a, b]`, `a` not a root. Sturm chain on
/// the square-free part.
pub fn count_roots(p: &Dense, a: &BigRational, b: &BigRational) -> usize {
    assert!(!deval(p, a).is_zero());
    // square-free part via gcd with the derivative
    let mut g0 = p.clone();
    let mut g1 = deriv(p);
    while !g1.is_empty() {
        let r = drem(&g0, &g1);
        g0 = g1;
        g1 = r;
    }
    let sf = if g0.len() <= 1 {
        p.clone()
    } else {
        // exact division p / g0
        let mut quo = vec![BigRational::zero(); p.len() - g0.len() + 1];
        let mut r = p.clone();
        let lg = g0.last().unwrap().clone();
        while r.len() >= g0.len() && !r.is_empty() {
            let f = r.last().unwrap() / &lg;
            let shift = r.len() - g0.len();
            for (i, c) in g0.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            quo[shift] = f;
            r.pop();
            r = trim(r);
        }
        trim(quo)
    };
    let mut chain = vec![sf.clone(), deriv(&sf)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = drem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    let var = |x: &BigRational| {
        let signs: Vec<i32> = chain.iter().map(|p| sign(&deval(p, x))).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    var(a) - var(b)
}
