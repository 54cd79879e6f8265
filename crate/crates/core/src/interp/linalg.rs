//! Exact linear algebra over the rationals via fraction-free elimination.
//!
//! Rows are first scaled by the (positive) lcm of their denominators, which
//! leaves rank, kernel and determinant sign unchanged; Bareiss elimination
//! then runs entirely over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Clears denominators row by row. Returns the integer rows and the positive
/// multiplier applied to each row.
pub fn integer_rows(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(rows.len());
    let ints = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let out = row
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect();
            scales.push(l);
            out
        })
        .collect();
    (ints, scales)
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "Bareiss division must be exact");
    q
}

/// Result of fraction-free forward elimination.
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    /// +1 or -1 from row swaps.
    pub swap_sign: i32,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Bareiss forward elimination. Entries below each pivot are zeroed; the
/// remaining entries are minors of the input, so every division is exact.
pub fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swap_sign = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swap_sign = -swap_sign;
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pv * &row[j] - &lead * &pivot_row[j];
                row[j] = exact_div(&v, &prev);
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows: m,
        pivots,
        swap_sign,
    }
}

pub fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    let (ints, _) = integer_rows(rows);
    bareiss(ints, ncols).rank()
}

/// Exact determinant of a square rational matrix.
pub fn determinant(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    if n == 0 {
        return BigRational::one();
    }
    let (ints, scales) = integer_rows(a);
    let e = bareiss(ints, n);
    if e.rank() < n {
        return BigRational::zero();
    }
    let d = &e.rows[n - 1][n - 1] * BigInt::from(e.swap_sign);
    let s = scales.iter().fold(BigInt::one(), |acc, x| acc * x);
    BigRational::new(d, s)
}

/// Sign of the determinant of a square rational matrix: -1, 0 or +1.
pub fn det_sign(a: &[Vec<BigRational>]) -> i32 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let (ints, _) = integer_rows(a);
    let e = bareiss(ints, n);
    if e.rank() < n {
        return 0;
    }
    let s = if e.rows[n - 1][n - 1].is_positive() { 1 } else { -1 };
    s * e.swap_sign
}

/// Kernel basis: one vector per non-pivot column, each scaled so that its
/// first nonzero entry is 1.
pub fn kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (ints, _) = integer_rows(rows);
    let e = bareiss(ints, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![BigRational::zero(); ncols];
        x[f] = BigRational::one();
        for (i, &pc) in e.pivots.iter().enumerate().rev() {
            let row = &e.rows[i];
            let mut s = BigRational::zero();
            for j in pc + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += &x[j] * BigRational::from_integer(row[j].clone());
                }
            }
            x[pc] = -s / BigRational::from_integer(row[pc].clone());
        }
        if let Some(lead) = x.iter().find(|v| !v.is_zero()).cloned() {
            for v in x.iter_mut() {
                *v = &*v / &lead;
            }
        }
        basis.push(x);
    }
    basis
}

pub fn mat_vec(rows: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}
