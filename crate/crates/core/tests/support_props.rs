mod common;

use proptest::prelude::*;

use common::*;
use sparse_implicit::support::{
    convex_hull, lattice_points, minkowski_sum, translate_count, DEFAULT_CAP,
};

fn point_cloud() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(0i64..=8, d), 1..6))
}

fn satisfies(h: &[(Vec<i64>, i64)], x: &[i64]) -> bool {
    h.iter()
        .all(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<i64>() <= *b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn lattice_points_match_brute_force(pts in point_cloud()) {
        let q = convex_hull(&pts);
        let s = lattice_points(&q, DEFAULT_CAP).unwrap();
        let mut ours: Vec<Vec<i64>> = s
            .points()
            .iter()
            .map(|p| p.iter().map(|&v| v as i64).collect())
            .collect();
        ours.sort();
        prop_assert_eq!(ours, brute_lattice_points(&pts));
    }

    #[test]
    fn halfspaces_separate_box_points(pts in point_cloud()) {
        let q = convex_hull(&pts);
        let inside = brute_lattice_points(&pts);
        let bb = q.bounding_box();
        let mut all = vec![vec![]];
        for (lo, hi) in bb {
            all = all
                .into_iter()
                .flat_map(|p: Vec<i64>| (lo..=hi).map(move |v| { let mut r = p.clone(); r.push(v); r }))
                .collect();
        }
        for x in all {
            prop_assert_eq!(satisfies(q.halfspaces(), &x), inside.contains(&x), "{:?}", x);
        }
    }

    #[test]
    fn hull_is_idempotent(pts in point_cloud()) {
        let h = convex_hull(&pts);
        prop_assert_eq!(convex_hull(h.vertices()), h.clone());
        for v in h.vertices() {
            prop_assert!(pts.contains(v));
        }
    }

    #[test]
    fn translate_counts(pts in point_cloud(), len in 1i64..=3, axis in 0usize..3) {
        let p = convex_hull(&pts);
        let d = p.dim();
        prop_assert_eq!(translate_count(&p, &p, DEFAULT_CAP).unwrap(), 1);
        let mut e = vec![0; d];
        e[axis % d] = len;
        let seg = convex_hull(&[vec![0; d], e]);
        let q = minkowski_sum(&p, &seg).unwrap();
        prop_assert_eq!(translate_count(&p, &q, DEFAULT_CAP).unwrap(), (len + 1) as u64);
    }
}

#[test]
fn translate_count_matches_brute_force_on_folium_family() {
    let p = convex_hull(&folium_vertices());
    let sx = convex_hull(&[vec![0, 0], vec![2, 0]]);
    let sq = convex_hull(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    for q in [
        p.clone(),
        minkowski_sum(&p, &sx).unwrap(),
        minkowski_sum(&p, &sq).unwrap(),
        minkowski_sum(&minkowski_sum(&p, &sq).unwrap(), &sx).unwrap(),
    ] {
        assert_eq!(
            translate_count(&p, &q, DEFAULT_CAP).unwrap() as usize,
            brute_translate_count(p.vertices(), q.vertices())
        );
    }
}
