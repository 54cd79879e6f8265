//! Predicted implicit polytopes and their lattice points.

mod hull;
mod io;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::param::ParametricMap;

pub use io::{parse_polytope, read_polytope, render_polytope};

/// Default cap on the number of candidate points scanned during enumeration.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// Integer polytope in both vertex and halfspace form.
///
/// Halfspaces `(a, b)` mean `a . x <= b`. A lower-dimensional polytope also
/// carries its affine-hull equations as pairs of opposite inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    halfspaces: Vec<(Vec<i64>, i64)>,
    affine_dim: usize,
}

impl LatticePolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points, sorted lexicographically.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[(Vec<i64>, i64)] {
        &self.halfspaces
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.halfspaces.iter().all(|(a, b)| {
            a.iter()
                .zip(x)
                .map(|(p, q)| *p as i128 * *q as i128)
                .sum::<i128>()
                <= *b as i128
        })
    }

    /// Per-coordinate `(min, max)` over the vertices.
    pub fn bounding_box(&self) -> Vec<(i64, i64)> {
        (0..self.dim)
            .map(|i| {
                let it = self.vertices.iter().map(|v| v[i]);
                (it.clone().min().unwrap(), it.max().unwrap())
            })
            .collect()
    }

    pub fn translate(&self, shift: &[i64]) -> LatticePolytope {
        let vs: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        convex_hull(&vs)
    }

    /// The simplex `{x >= 0 : sum x_i <= degree}` in `dim` dimensions.
    pub fn simplex(dim: usize, degree: u32) -> LatticePolytope {
        let mut vs = vec![vec![0i64; dim]];
        if degree > 0 {
            for i in 0..dim {
                let mut v = vec![0i64; dim];
                v[i] = degree as i64;
                vs.push(v);
            }
        }
        convex_hull(&vs)
    }
}

/// Candidate monomial exponents, in the column order of every matrix built on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSet {
    dim: usize,
    points: Vec<Vec<u32>>,
}

impl SupportSet {
    /// Points must be distinct and of equal length.
    pub fn new(dim: usize, points: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        if !points.iter().all(|p| seen.insert(p)) {
            return Err(Error::InvalidArgument("support points must be distinct".into()));
        }
        Ok(SupportSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn convex_hull(points: &[Vec<i64>]) -> LatticePolytope {
    let h = hull::hull(points);
    LatticePolytope {
        dim: points[0].len(),
        vertices: h.vertices,
        halfspaces: h.halfspaces,
        affine_dim: h.affine_dim,
    }
}

/// Shifts `q` so that every coordinate attains minimum 0.
pub fn translate_positive(q: &LatticePolytope) -> LatticePolytope {
    let shift: Vec<i64> = q.bounding_box().iter().map(|(lo, _)| -lo).collect();
    q.translate(&shift)
}

fn box_volume(ranges: &[(i64, i64)]) -> u128 {
    ranges
        .iter()
        .map(|(lo, hi)| if hi < lo { 0 } else { (hi - lo + 1) as u128 })
        .try_fold(1u128, |acc, w| acc.checked_mul(w))
        .unwrap_or(u128::MAX)
}

/// Visits every integer point of the box in lexicographic order.
fn for_each_in_box(ranges: &[(i64, i64)], mut f: impl FnMut(&[i64])) {
    if ranges.iter().any(|(lo, hi)| hi < lo) {
        return;
    }
    let mut cur: Vec<i64> = ranges.iter().map(|(lo, _)| *lo).collect();
    loop {
        f(&cur);
        let mut i = ranges.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = ranges[i].0;
        }
    }
}

/// All integer points of `q`, lexicographically ordered.
pub fn lattice_points(q: &LatticePolytope, cap: u128) -> Result<SupportSet> {
    let bbox = q.bounding_box();
    if bbox.iter().any(|(lo, _)| *lo < 0) {
        return Err(Error::InvalidArgument(
            "polytope must lie in the non-negative orthant; apply translate_positive first".into(),
        ));
    }
    let volume = box_volume(&bbox);
    if volume > cap {
        return Err(Error::CapExceeded { volume, cap });
    }
    let mut points = Vec::new();
    for_each_in_box(&bbox, |x| {
        if q.contains(x) {
            points.push(x.iter().map(|&v| v as u32).collect());
        }
    });
    Ok(SupportSet {
        dim: q.dim(),
        points,
    })
}

pub fn minkowski_sum(a: &LatticePolytope, b: &LatticePolytope) -> Result<LatticePolytope> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let sums: Vec<Vec<i64>> = a
        .vertices()
        .iter()
        .flat_map(|u| {
            b.vertices()
                .iter()
                .map(move |v| u.iter().zip(v).map(|(x, y)| x + y).collect())
        })
        .collect();
    Ok(convex_hull(&sums))
}

/// Number of integer vectors `a` with `a + p ⊆ q`.
pub fn translate_count(p: &LatticePolytope, q: &LatticePolytope, cap: u128) -> Result<u64> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            got: p.dim(),
        });
    }
    let ranges: Vec<(i64, i64)> = p
        .bounding_box()
        .iter()
        .zip(q.bounding_box())
        .map(|((plo, phi), (qlo, qhi))| (qlo - plo, qhi - phi))
        .collect();
    let volume = box_volume(&ranges);
    if volume > cap {
        return Err(Error::CapExceeded { volume, cap });
    }
    let mut count = 0;
    let mut shifted = vec![0i64; p.dim()];
    for_each_in_box(&ranges, |a| {
        let inside = p.vertices().iter().all(|v| {
            for (s, (x, y)) in shifted.iter_mut().zip(v.iter().zip(a)) {
                *s = x + y;
            }
            q.contains(&shifted)
        });
        if inside {
            count += 1;
        }
    });
    Ok(count)
}

/// Fallback support predictor: the simplex `sum x_i <= D` with `D` the
/// product of the coordinate degrees `max(deg f_i, deg g_i)`. Coarse, and
/// not a guarantee for every degenerate map.
pub fn degree_bound_polytope(map: &ParametricMap, max_degree: u64) -> Result<LatticePolytope> {
    let d = map
        .degrees()
        .iter()
        .try_fold(1u64, |acc, &k| acc.checked_mul(k.max(1) as u64))
        .unwrap_or(u64::MAX);
    if d > max_degree {
        return Err(Error::CapExceeded {
            volume: d as u128,
            cap: max_degree as u128,
        });
    }
    Ok(LatticePolytope::simplex(map.ambient_dim(), d as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::parse_map;

    fn folium_p() -> LatticePolytope {
        convex_hull(&[vec![3, 0], vec![0, 3], vec![1, 1]])
    }

    fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        v.sort();
        v
    }

    #[test]
    fn hull_examples() {
        let h = convex_hull(&[vec![3, 0], vec![0, 3], vec![1, 1], vec![2, 1]]);
        assert_eq!(h.vertices(), &[vec![0, 3], vec![1, 1], vec![3, 0]]);
        let p = convex_hull(&[vec![4, 7]]);
        assert_eq!(p.vertices(), &[vec![4, 7]]);
        assert_eq!(p.affine_dim(), 0);
        let sq = convex_hull(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.halfspaces().len(), 4);
    }

    #[test]
    fn translate_positive_examples() {
        let s = convex_hull(&[vec![-1, 2], vec![1, 2]]);
        assert_eq!(translate_positive(&s).vertices(), &[vec![0, 0], vec![2, 0]]);
        assert_eq!(translate_positive(&folium_p()), folium_p());
        assert_eq!(translate_positive(&convex_hull(&[vec![5, 7]])).vertices(), &[vec![0, 0]]);
    }

    #[test]
    fn lattice_point_examples() {
        let s = lattice_points(&folium_p(), DEFAULT_CAP).unwrap();
        assert_eq!(
            s.points(),
            &[vec![0, 3], vec![1, 1], vec![1, 2], vec![2, 1], vec![3, 0]]
        );
        let sq = convex_hull(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(
            lattice_points(&sq, DEFAULT_CAP).unwrap().points(),
            &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        let o = convex_hull(&[vec![0, 0]]);
        assert_eq!(lattice_points(&o, DEFAULT_CAP).unwrap().points(), &[vec![0, 0]]);
    }

    #[test]
    fn lattice_point_cap_and_orthant() {
        let big = LatticePolytope::simplex(3, 1000);
        assert!(matches!(lattice_points(&big, DEFAULT_CAP), Err(Error::CapExceeded { .. })));
        let neg = convex_hull(&[vec![-1, 0], vec![1, 0]]);
        assert!(matches!(lattice_points(&neg, DEFAULT_CAP), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn minkowski_examples() {
        let e = convex_hull(&[vec![2, 5]]);
        assert_eq!(minkowski_sum(&folium_p(), &e).unwrap(), folium_p().translate(&[2, 5]));
        let sx = convex_hull(&[vec![0, 0], vec![1, 0]]);
        let sy = convex_hull(&[vec![0, 0], vec![0, 1]]);
        assert_eq!(
            minkowski_sum(&sx, &sy).unwrap().vertices(),
            &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        let m = minkowski_sum(&folium_p(), &sx).unwrap();
        assert_eq!(
            sorted(m.vertices().to_vec()),
            sorted(vec![vec![0, 3], vec![1, 3], vec![1, 1], vec![3, 0], vec![4, 0]])
        );
        assert!(minkowski_sum(&folium_p(), &convex_hull(&[vec![0, 0, 0]])).is_err());
    }

    #[test]
    fn translate_count_examples() {
        let p = folium_p();
        assert_eq!(translate_count(&p, &p, DEFAULT_CAP).unwrap(), 1);
        let sx = convex_hull(&[vec![0, 0], vec![1, 0]]);
        let q = minkowski_sum(&p, &sx).unwrap();
        assert_eq!(translate_count(&p, &q, DEFAULT_CAP).unwrap(), 2);
        let small = convex_hull(&[vec![0, 0], vec![2, 0], vec![0, 2]]);
        assert_eq!(translate_count(&p, &small, DEFAULT_CAP).unwrap(), 0);
    }

    #[test]
    fn degree_bound_examples() {
        let folium = parse_map("x=3t/(1+t^3); y=3t^2/(1+t^3)").unwrap();
        let q = degree_bound_polytope(&folium, 1000).unwrap();
        assert_eq!(q, LatticePolytope::simplex(2, 9));
        for v in folium_p().vertices() {
            assert!(q.contains(v));
        }
        let parabola = parse_map("x=t; y=t^2").unwrap();
        let q = degree_bound_polytope(&parabola, 1000).unwrap();
        assert!(q.contains(&[0, 1]) && q.contains(&[2, 0]) && !q.contains(&[2, 1]));
        let line = parse_map("x=t; y=t").unwrap();
        let q = degree_bound_polytope(&line, 1000).unwrap();
        assert!(q.contains(&[0, 1]) && q.contains(&[1, 0]) && !q.contains(&[1, 1]));
        assert!(matches!(degree_bound_polytope(&folium, 8), Err(Error::CapExceeded { .. })));
    }
}
