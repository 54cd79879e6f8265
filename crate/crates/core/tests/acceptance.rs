//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use sparse_implicit::implicit::{implicitize, sylvester_oracle, ImplicitizeConfig};
use sparse_implicit::interp::{build_matrix, corank};
use sparse_implicit::param::newton_polytope;
use sparse_implicit::predicates::{Membership, Ray, SurfaceHandle};
use sparse_implicit::support::{
    convex_hull, lattice_points, minkowski_sum, translate_count, LatticePolytope, DEFAULT_CAP,
};
use sparse_implicit::{eval_map, parse_map, Error, MultiPoly, ParametricMap};

const FOLIUM_TIME_LIMIT: Duration = Duration::from_secs(1);
const RAY_TOL_DENOM: i64 = 1_000_000_000;
const MEMBERSHIP_POINTS: usize = 100;
const SIDEDNESS_PAIRS: usize = 200;
const LEMMA4_POINTS: usize = 20;
const RAYS: usize = 20;
const SPHERE_SAMPLES: usize = 50;
const SEED: u64 = 7;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn folium_p() -> LatticePolytope {
    convex_hull(&folium_vertices())
}

fn seg(dir: usize) -> LatticePolytope {
    let mut e = vec![0, 0];
    e[dir] = 1;
    convex_hull(&[vec![0, 0], e])
}

fn cfg(seed: u64) -> ImplicitizeConfig {
    ImplicitizeConfig {
        seed,
        ..Default::default()
    }
}

/// Rational test curves with their names.
fn curves() -> Vec<(&'static str, ParametricMap)> {
    [
        ("folium", "x = 3t/(1+t^3); y = 3t^2/(1+t^3)"),
        ("parabola", "x = t; y = t^2"),
        ("circle", "x = cos(s); y = sin(s)"),
        ("cardioid", "x = (1+cos(s))*cos(s); y = (1+cos(s))*sin(s)"),
        ("quartic", "x = (t^2+t)/(1+t^4); y = (t^3-1)/(1+t^4)"),
        ("common denominator", "x = (t+1)/(t^2+2); y = (t^2-1)/(t^2+2)"),
    ]
    .into_iter()
    .map(|(n, s)| (n, parse_map(s).unwrap()))
    .collect()
}

fn c1_folium() -> Check {
    let start = Instant::now();
    let r = implicitize(&folium(), &folium_p(), &cfg(SEED)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected = sparse_implicit::ImplicitPolynomial::new(folium_poly()).unwrap();
    ensure(r.polynomial == expected, || format!("got {}", r.polynomial))?;
    ensure(elapsed < FOLIUM_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{} in {:.1} ms", r.polynomial, elapsed.as_secs_f64() * 1e3))
}

fn c2_oracle() -> Check {
    let mut n = 0;
    for (name, map) in curves() {
        let oracle = sylvester_oracle(&map).map_err(|e| format!("{name}: oracle {e}"))?;
        let p = newton_polytope(oracle.poly()).unwrap();
        let d = *map.degrees().iter().max().unwrap();
        for (label, q) in [("true polytope", p.clone()), ("degree simplex", LatticePolytope::simplex(2, d))] {
            let r = implicitize(&map, &q, &cfg(SEED)).map_err(|e| format!("{name} / {label}: {e}"))?;
            ensure(r.polynomial == oracle, || {
                format!("{name} / {label}: pipeline {} vs oracle {}", r.polynomial, oracle)
            })?;
        }
        n += 1;
    }
    Ok(format!("{n} curves agree with the resultant on P and on the degree simplex"))
}

fn c3_corank() -> Check {
    let p = folium_p();
    let square = minkowski_sum(&seg(0), &seg(1)).unwrap();
    let cases = [
        ("P", p.clone(), 1),
        ("P+x", minkowski_sum(&p, &seg(0)).unwrap(), 2),
        ("P+y", minkowski_sum(&p, &seg(1)).unwrap(), 2),
        ("P+square", minkowski_sum(&p, &square).unwrap(), 4),
    ];
    let mut got = vec![];
    for (label, q, want) in cases {
        let s = lattice_points(&q, DEFAULT_CAP).unwrap();
        let m = build_matrix(&folium(), &s, s.len(), SEED).map_err(|e| e.to_string())?;
        let c = corank(&m);
        let tc = translate_count(&p, &q, DEFAULT_CAP).unwrap() as usize;
        let brute = brute_translate_count(&folium_vertices(), q.vertices());
        ensure(c == want && tc == want && brute == want, || {
            format!("{label}: corank {c}, translate_count {tc}, brute force {brute}, expected {want}")
        })?;
        got.push(c);
    }
    Ok(format!("coranks {got:?}"))
}

fn c4_gcd() -> Check {
    let q = minkowski_sum(&folium_p(), &seg(0)).unwrap();
    let r = implicitize(&folium(), &q, &cfg(SEED)).map_err(|e| e.to_string())?;
    ensure(r.diagnostics.corank == 2, || format!("corank {}", r.diagnostics.corank))?;
    let expected = sparse_implicit::ImplicitPolynomial::new(folium_poly()).unwrap();
    ensure(r.polynomial == expected, || format!("got {}", r.polynomial))?;
    Ok(format!("corank 2, gcd after strip = {}", r.polynomial))
}

/// Random off-curve points with nonzero coordinates.
fn off_curve_points(oracle: &MultiPoly, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<BigRational>> {
    let mut out = vec![];
    while out.len() < count {
        let p = vec![rand_nonzero(rng, 40), rand_nonzero(rng, 40)];
        if !oracle.eval(&p).is_zero() {
            out.push(p);
        }
    }
    out
}

fn c5_lemma4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut handles = 0;
    for (name, map, seed) in [
        ("folium", folium(), 1u64),
        ("folium", folium(), 2),
        ("circle", parse_map("x = cos(s); y = sin(s)").unwrap(), 3),
    ] {
        let oracle = sylvester_oracle(&map).unwrap();
        let q = newton_polytope(oracle.poly()).unwrap();
        let h = SurfaceHandle::from_polytope(&map, &q, seed, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let mut ratio: Option<BigRational> = None;
        for pt in off_curve_points(oracle.poly(), LEMMA4_POINTS, &mut rng) {
            let r = h.det(&pt).map_err(|e| e.to_string())? / oracle.eval(&pt);
            ensure(!r.is_zero(), || format!("{name}: zero determinant off the curve"))?;
            match &ratio {
                None => ratio = Some(r),
                Some(c) => ensure(*c == r, || format!("{name}: ratio {r} differs from {c}"))?,
            }
        }
        handles += 1;
    }
    Ok(format!("{handles} handles, {LEMMA4_POINTS} points each, one exact ratio per handle"))
}

fn on_curve_points(map: &ParametricMap, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<BigRational>> {
    let mut out = vec![];
    while out.len() < count {
        let tau: Vec<BigRational> = (0..map.n()).map(|_| rand_rational(rng, 50)).collect();
        if let Ok(x) = eval_map(map, &tau) {
            if x.iter().all(|c| !c.is_zero()) {
                out.push(x);
            }
        }
    }
    out
}

fn c6_membership() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let oracle = folium_poly();
    let h = SurfaceHandle::from_polytope(&folium(), &folium_p(), SEED, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let on = on_curve_points(&folium(), MEMBERSHIP_POINTS, &mut rng);
    for pt in &on {
        ensure(oracle.eval(pt).is_zero(), || "generator produced an off-curve point".into())?;
        let v = h.membership(pt).map_err(|e| e.to_string())?;
        ensure(v == Membership::OnSurface, || format!("false negative at {pt:?}"))?;
    }
    let mut off = 0;
    let mut i = 0;
    while off < MEMBERSHIP_POINTS {
        let base = &on[i % on.len()];
        i += 1;
        let eps = q(1, 1000);
        let pt: Vec<BigRational> = base.iter().map(|c| c + &eps * rand_nonzero(&mut rng, 9)).collect();
        if pt.iter().any(Zero::is_zero) || oracle.eval(&pt).is_zero() {
            continue;
        }
        let v = h.membership(&pt).map_err(|e| e.to_string())?;
        ensure(v == Membership::OffSurface, || format!("false positive at {pt:?}"))?;
        off += 1;
    }
    Ok(format!("{MEMBERSHIP_POINTS} on-curve and {MEMBERSHIP_POINTS} perturbed points classified correctly"))
}

fn c7_sidedness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let oracle = folium_poly();
    let h = SurfaceHandle::from_polytope(&folium(), &folium_p(), SEED, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let pts = off_curve_points(&oracle, 2 * SIDEDNESS_PAIRS, &mut rng);
    let (mut same, mut opposite) = (0, 0);
    for pair in pts.chunks(2) {
        let v = h.sidedness(&pair[0], &pair[1]).map_err(|e| e.to_string())?;
        let want = if sign(&oracle.eval(&pair[0])) == sign(&oracle.eval(&pair[1])) { 1 } else { -1 };
        ensure(v == want, || format!("pair {pair:?}: got {v}, oracle {want}"))?;
        if v == 1 {
            same += 1;
        } else {
            opposite += 1;
        }
    }
    let zero = vec![int(0), int(1)];
    let one = vec![int(1), int(1)];
    ensure(h.sidedness(&zero, &one) == Err(Error::ZeroCoordinate(0)), || "zero coordinate accepted".into())?;
    ensure(h.membership(&zero) == Err(Error::ZeroCoordinate(0)), || "zero coordinate accepted".into())?;
    Ok(format!("{SIDEDNESS_PAIRS} pairs match ({same} same side, {opposite} opposite); zero coordinates rejected"))
}

fn c8_rays() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let oracle = folium_poly();
    let tol = q(1, RAY_TOL_DENOM);
    let h = SurfaceHandle::from_polytope(&folium(), &folium_p(), SEED, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let mut done = 0;
    let mut below_target = 0;
    while done < RAYS {
        let target = on_curve_points(&folium(), 1, &mut rng).remove(0);
        let offset = vec![rand_nonzero(&mut rng, 5), rand_nonzero(&mut rng, 5)];
        let base: Vec<BigRational> = target.iter().zip(&offset).map(|(a, b)| a + b).collect();
        if oracle.eval(&base).is_zero() {
            continue;
        }
        let dir: Vec<BigRational> = offset.iter().map(|c| -c).collect();
        let ray = Ray::new(base.clone(), dir.clone()).unwrap();
        let hit = h
            .ray_shoot(&ray, &tol)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("ray {base:?} + rho {dir:?} reported no hit"))?;
        let line = restrict_to_line(&oracle, &base, &dir);
        ensure(&hit.hi - &hit.lo <= tol, || "interval wider than tolerance".into())?;
        ensure(hit.lo.is_positive(), || "interval reaches rho = 0".into())?;
        let (plo, phi) = (deval(&line, &hit.lo), deval(&line, &hit.hi));
        let zero = BigRational::zero();
        if hit.lo == hit.hi {
            ensure(plo.is_zero(), || "exact hit is not a root".into())?;
            ensure(count_roots(&line, &zero, &hit.lo) == 1, || format!("a root precedes {}", hit.lo))?;
        } else {
            ensure(!plo.is_zero() && sign(&plo) * sign(&phi) <= 0, || {
                format!("no sign change on [{}, {}]", hit.lo, hit.hi)
            })?;
            ensure(count_roots(&line, &zero, &hit.lo) == 0, || format!("a root precedes {}", hit.lo))?;
        }
        if hit.hi < int(1) {
            below_target += 1;
        }
        done += 1;
    }
    Ok(format!(
        "{RAYS} rays isolated to width <= 1e-9; {below_target} hit an earlier branch before the aimed point"
    ))
}

fn c9_sphere() -> Check {
    let map = parse_map("x = cos(s)*cos(t); y = cos(s)*sin(t); z = sin(s)").unwrap();
    let q = LatticePolytope::simplex(3, 2);
    let r = implicitize(&map, &q, &cfg(SEED)).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    for pt in on_curve_points(&map, SPHERE_SAMPLES, &mut rng) {
        ensure(r.polynomial.eval(&pt).is_zero(), || format!("nonzero at {pt:?}"))?;
    }
    ensure(r.polynomial.to_string() == "x^2 + y^2 + z^2 - 1", || format!("got {}", r.polynomial))?;
    Ok(format!(
        "{} vanishes on {SPHERE_SAMPLES} samples; |S| = {}, mu = {}, corank = {}",
        r.polynomial, r.diagnostics.support_size, r.diagnostics.mu, r.diagnostics.corank
    ))
}

/// The three artifacts the command-line tool writes for one run.
fn artifacts(seed: u64) -> std::result::Result<[String; 3], String> {
    let q = minkowski_sum(&folium_p(), &seg(1)).unwrap();
    let r = implicitize(&folium(), &q, &cfg(seed)).map_err(|e| e.to_string())?;
    Ok([
        format!("{}\n", r.polynomial),
        serde_json::to_string_pretty(&r.polynomial.to_json()).unwrap(),
        serde_json::to_string_pretty(&r.diagnostics).unwrap(),
    ])
}

fn c10_determinism() -> Check {
    let a = artifacts(SEED)?;
    let b = artifacts(SEED)?;
    ensure(a == b, || "same seed produced different bytes".into())?;
    let c = artifacts(SEED + 1000)?;
    ensure(a[0] == c[0] && a[1] == c[1], || "different seeds disagree on the polynomial".into())?;
    ensure(a[2] != c[2], || "diagnostics do not record the seed".into())?;
    Ok("identical seeds give identical bytes; different seeds give the same polynomial".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("folium implicitization", c1_folium),
        ("resultant oracle equivalence", c2_oracle),
        ("corank equals translate count", c3_corank),
        ("gcd and monomial strip at corank 2", c4_gcd),
        ("det M(q) proportional to p(q)", c5_lemma4),
        ("membership", c6_membership),
        ("sidedness", c7_sidedness),
        ("ray shooting", c8_rays),
        ("sphere smoke test", c9_sphere),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2}  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
