//! Exact convex hulls of small integer point sets.
//!
//! Facets are found by brute force: every affinely independent subset of
//! `k` points (where `k` is the affine dimension) spans a candidate
//! hyperplane inside the affine hull, kept if all points lie on one side.
//! Point sets here are tiny (tens of points, dimension at most four or five),
//! so this stays cheap and is exact in `i128`.

use std::collections::BTreeSet;

use num_integer::Integer;

/// Determinant of a small square integer matrix (fraction-free elimination).
pub(crate) fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| m[r][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Generalized cross product of `d - 1` vectors in `Z^d`: the vector of signed
/// maximal minors, orthogonal to every input row. Zero iff the rows are dependent.
pub(crate) fn cross(rows: &[Vec<i128>], d: usize) -> Vec<i128> {
    debug_assert_eq!(rows.len() + 1, d);
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let s = if (j + rows.len()).is_multiple_of(2) { 1 } else { -1 };
            s * det_i128(minor)
        })
        .collect()
}

pub(crate) fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-echelon rank over the integers.
pub(crate) fn rank_i128(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if m[r][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[r][c]);
            let pivot_row = m[rank].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                *x = a * *x - b * *y;
            }
            primitive(&mut m[r]);
        }
        rank += 1;
    }
    rank
}

/// Integer basis of the orthogonal complement of the row space of `rows`.
pub(crate) fn orthogonal_complement(rows: &[Vec<i128>], d: usize) -> Vec<Vec<i128>> {
    // Reduced echelon form with integer rows.
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..d {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r == rank || m[r][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[r][c]);
            let pivot_row = m[rank].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                *x = a * *x - b * *y;
            }
            primitive(&mut m[r]);
        }
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let lcm = pivots
        .iter()
        .enumerate()
        .fold(1i128, |l, (r, &c)| l.lcm(&m[r][c].abs()));
    free.iter()
        .map(|&f| {
            let mut v = vec![0i128; d];
            v[f] = lcm;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f] * (lcm / m[r][c]);
            }
            primitive(&mut v);
            v
        })
        .collect()
}

pub(crate) struct Hull {
    pub vertices: Vec<Vec<i64>>,
    /// `(a, b)` meaning `a . x <= b`.
    pub halfspaces: Vec<(Vec<i64>, i64)>,
    pub affine_dim: usize,
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), f);
    }
}

pub(crate) fn hull(points: &[Vec<i64>]) -> Hull {
    assert!(!points.is_empty(), "convex hull of an empty set");
    let d = points[0].len();
    let pts: Vec<Vec<i128>> = points
        .iter()
        .map(|p| {
            assert_eq!(p.len(), d, "points must share one dimension");
            p.iter().map(|&x| x as i128).collect()
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let base = &pts[0];
    let diffs: Vec<Vec<i128>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let affine_dim = rank_i128(&diffs);
    let equations = orthogonal_complement(&diffs, d);
    debug_assert_eq!(equations.len(), d - affine_dim);

    let mut halfspaces: BTreeSet<(Vec<i128>, i128)> = BTreeSet::new();
    for a in &equations {
        let b = dot(a, base);
        halfspaces.insert((a.clone(), b));
        halfspaces.insert((a.iter().map(|x| -x).collect(), -b));
    }

    let mut facets: BTreeSet<(Vec<i128>, i128)> = BTreeSet::new();
    if affine_dim > 0 {
        combinations(pts.len(), affine_dim, &mut |idx| {
            let p0 = &pts[idx[0]];
            let mut rows: Vec<Vec<i128>> = idx[1..]
                .iter()
                .map(|&i| pts[i].iter().zip(p0).map(|(a, b)| a - b).collect())
                .collect();
            rows.extend(equations.iter().cloned());
            let mut a = cross(&rows, d);
            if a.iter().all(|&x| x == 0) {
                return;
            }
            primitive(&mut a);
            let b = dot(&a, p0);
            let (mut above, mut below) = (false, false);
            for p in &pts {
                let v = dot(&a, p);
                above |= v > b;
                below |= v < b;
                if above && below {
                    return;
                }
            }
            if above {
                a.iter_mut().for_each(|x| *x = -*x);
                facets.insert((a, -b));
            } else {
                facets.insert((a, b));
            }
        });
    }

    let mut vertices = Vec::new();
    for p in &pts {
        let mut tight: Vec<Vec<i128>> = equations.clone();
        tight.extend(
            facets
                .iter()
                .filter(|(a, b)| dot(a, p) == *b)
                .map(|(a, _)| a.clone()),
        );
        if rank_i128(&tight) == d {
            vertices.push(p.iter().map(|&x| x as i64).collect());
        }
    }
    halfspaces.extend(facets);
    Hull {
        vertices,
        halfspaces: halfspaces
            .into_iter()
            .map(|(a, b)| (a.into_iter().map(|x| x as i64).collect(), b as i64))
            .collect(),
        affine_dim,
    }
}
