//! Tangent half-angle substitution for trigonometric parameterizations.
//!
//! Unexpanded trigonometric maps carry ring variables named `sin(s)` and
//! `cos(s)`; each distinct argument `s` is replaced by a fresh parameter
//! `u = tan(s/2)` with `sin s = 2u/(1+u^2)` and `cos s = (1-u^2)/(1+u^2)`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{ParametricMap, RationalFunction};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum TrigKind {
    Sin,
    Cos,
}

/// Ring-variable name for `sin(arg)` or `cos(arg)`.
pub fn trig_atom(func: &str, arg: &str) -> String {
    format!("{func}({arg})")
}

pub(crate) fn parse_atom(name: &str) -> Option<(TrigKind, &str)> {
    let inner = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|r| r.strip_suffix(')'))
    };
    if let Some(a) = inner("sin(") {
        return Some((TrigKind::Sin, a));
    }
    inner("cos(").map(|a| (TrigKind::Cos, a))
}

/// Indices of trigonometric atoms among `vars`.
pub(crate) fn trig_atoms(vars: &[String]) -> Vec<usize> {
    vars.iter()
        .enumerate()
        .filter(|(_, v)| parse_atom(v).is_some())
        .map(|(i, _)| i)
        .collect()
}

/// Plain parameters plus one per distinct trigonometric argument.
pub(crate) fn effective_parameter_count(vars: &[String]) -> usize {
    let mut args: Vec<&str> = Vec::new();
    let mut plain = 0;
    for v in vars {
        match parse_atom(v) {
            Some((_, a)) => {
                if !args.contains(&a) {
                    args.push(a);
                }
            }
            None => plain += 1,
        }
    }
    plain + args.len()
}

fn fresh_name(arg: &str, taken: &[String]) -> String {
    let base = format!("u_{arg}");
    if !taken.contains(&base) {
        return base;
    }
    (1..)
        .map(|k| format!("{base}{k}"))
        .find(|c| !taken.contains(c))
        .expect("unbounded search")
}

struct Plan {
    new_vars: Vec<String>,
    // Old variable index -> new index for plain parameters.
    plain: BTreeMap<usize, usize>,
    // For each trig argument: (new var index, sin atom index, cos atom index).
    args: Vec<(usize, Option<usize>, Option<usize>)>,
}

fn plan(vars: &[String]) -> Result<Plan> {
    let mut new_vars = Vec::new();
    let mut plain = BTreeMap::new();
    let mut arg_names: Vec<String> = Vec::new();
    let mut args: Vec<(usize, Option<usize>, Option<usize>)> = Vec::new();
    for (i, v) in vars.iter().enumerate() {
        match parse_atom(v) {
            None => {
                plain.insert(i, new_vars.len());
                new_vars.push(v.clone());
            }
            Some((kind, a)) => {
                if vars.iter().any(|w| w == a) {
                    return Err(Error::MixedTrigonometric(a.to_string()));
                }
                let k = match arg_names.iter().position(|n| n == a) {
                    Some(k) => k,
                    None => {
                        arg_names.push(a.to_string());
                        let taken: Vec<String> = vars.iter().cloned().chain(new_vars.iter().cloned()).collect();
                        let name = fresh_name(a, &taken);
                        args.push((new_vars.len(), None, None));
                        new_vars.push(name);
                        args.len() - 1
                    }
                };
                match kind {
                    TrigKind::Sin => args[k].1 = Some(i),
                    TrigKind::Cos => args[k].2 = Some(i),
                }
            }
        }
    }
    Ok(Plan {
        new_vars,
        plain,
        args,
    })
}

/// Rewrites `p` as `N / Π_s (1+u_s^2)^{K_s}`; returns `N` and the `K_s`.
fn substitute(p: &MultiPoly, plan: &Plan) -> (MultiPoly, Vec<u32>) {
    let nv = &plan.new_vars;
    let one = MultiPoly::one(nv);
    let deg_of = |e: &[u32], (_, s, c): &(usize, Option<usize>, Option<usize>)| {
        s.map_or(0, |i| e[i]) + c.map_or(0, |i| e[i])
    };
    let ks: Vec<u32> = plan
        .args
        .iter()
        .map(|a| p.terms().keys().map(|e| deg_of(e, a)).max().unwrap_or(0))
        .collect();

    let two = BigRational::from_integer(2.into());
    let mut out = MultiPoly::zero(nv);
    for (e, c) in p.terms() {
        let mut plain_exp = vec![0; nv.len()];
        for (&old, &new) in &plan.plain {
            plain_exp[new] = e[old];
        }
        let mut term = MultiPoly::monomial(nv, plain_exp, c.clone());
        for (arg, &k_max) in plan.args.iter().zip(&ks) {
            let u = MultiPoly::var(nv, arg.0);
            let u2 = &u * &u;
            let sin_num = u.scale(&two);
            let cos_num = &one - &u2;
            let den = &one + &u2;
            let a = arg.1.map_or(0, |i| e[i]);
            let b = arg.2.map_or(0, |i| e[i]);
            let factor = &(&sin_num.pow(a) * &cos_num.pow(b)) * &den.pow(k_max - a - b);
            term = &term * &factor;
        }
        out = &out + &term;
    }
    (out, ks)
}

/// Replaces every `sin(s)`, `cos(s)` by its tangent half-angle expression in a
/// fresh parameter. Maps without trigonometric atoms are returned unchanged.
pub fn half_angle(map: &ParametricMap) -> Result<ParametricMap> {
    if map.is_rational() {
        return Ok(map.clone());
    }
    let plan = plan(map.params())?;
    let nv = &plan.new_vars;
    let one = MultiPoly::one(nv);
    let mut coords = Vec::with_capacity(map.coords().len());
    for c in map.coords() {
        let (mut num, kn) = substitute(c.numerator(), &plan);
        let (mut den, kd) = substitute(c.denominator(), &plan);
        for ((arg, a), b) in plan.args.iter().zip(&kn).zip(&kd) {
            let m = (*a).min(*b);
            let u = MultiPoly::var(nv, arg.0);
            let base = &one + &(&u * &u);
            // Common powers of (1+u^2) cancel between numerator and denominator.
            num = &num * &base.pow(b - m);
            den = &den * &base.pow(a - m);
        }
        if den.is_zero() {
            return Err(Error::InvalidMap("denominator vanishes identically".into()));
        }
        coords.push(RationalFunction::new(num, den)?);
    }
    debug_assert!(coords.iter().all(|c| !c.denominator().is_zero()));
    ParametricMap::new(
        nv.clone(),
        map.coord_names().to_vec(),
        coords,
        map.source_form(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::{parse_map, parse_map_text, SourceForm};
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sine_and_cosine_formulas() {
        let m = parse_map("x=cos(s); y=sin(s)").unwrap();
        assert_eq!(m.params(), &["u_s".to_string()]);
        assert_eq!(m.source_form(), SourceForm::Trigonometric);
        let u = vec!["u_s".to_string()];
        let one = MultiPoly::one(&u);
        let uu = MultiPoly::var(&u, 0);
        let den = &one + &(&uu * &uu);
        let cos = RationalFunction::new(&one - &(&uu * &uu), den.clone()).unwrap();
        let sin = RationalFunction::new(uu.scale(&q(2, 1)), den).unwrap();
        assert!(m.coords()[0].equivalent(&cos));
        assert!(m.coords()[1].equivalent(&sin));
    }

    #[test]
    fn rational_map_unchanged() {
        let m = parse_map("x=t; y=1").unwrap();
        assert_eq!(half_angle(&m).unwrap(), m);
    }

    #[test]
    fn mixed_argument_rejected() {
        let raw = parse_map_text("x=s*cos(s); y=sin(s)", false);
        assert_eq!(raw, Err(Error::MixedTrigonometric("s".into())));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let m = parse_map("x=cos(s)+u_s; y=sin(s)*u_s; z=u_s^2").unwrap();
        assert_eq!(m.params(), &["u_s1".to_string(), "u_s".to_string()]);
    }

    #[test]
    fn values_match_trig_at_random_angles() {
        let m = parse_map("x=cos(s)*(1+cos(s)); y=sin(s)^3 - 2cos(s)").unwrap();
        for k in 1..=10 {
            let u = q(k * 7 - 31, 13);
            let uf = 7.0 * k as f64 - 31.0;
            let theta = 2.0 * (uf / 13.0).atan();
            let v = crate::param::eval_map(&m, &[u]).unwrap();
            let want = [
                theta.cos() * (1.0 + theta.cos()),
                theta.sin().powi(3) - 2.0 * theta.cos(),
            ];
            for (a, b) in v.iter().zip(want) {
                use num_traits::ToPrimitive;
                assert!((a.to_f64().unwrap() - b).abs() < 1e-12);
            }
        }
    }
}
