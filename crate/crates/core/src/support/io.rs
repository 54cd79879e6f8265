//! Polytope vertex files: a `dim k` header, then one vertex per line as `k`
//! whitespace-separated integers. `#` starts a comment.

use std::path::Path;

use super::{convex_hull, LatticePolytope};
use crate::error::{Error, Result};

pub fn parse_polytope(text: &str) -> Result<LatticePolytope> {
    let mut dim: Option<usize> = None;
    let mut vertices = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::PolytopeFormat(format!("line {}: {msg}", lineno + 1));
        match dim {
            None => {
                let mut it = line.split_whitespace();
                if it.next() != Some("dim") {
                    return Err(err("expected header `dim k`".into()));
                }
                let k: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .filter(|&k| k > 0)
                    .ok_or_else(|| err("dimension must be a positive integer".into()))?;
                if it.next().is_some() {
                    return Err(err("trailing tokens after dimension".into()));
                }
                dim = Some(k);
            }
            Some(k) => {
                let v = line
                    .split_whitespace()
                    .map(|s| s.parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| err(format!("bad integer: {e}")))?;
                if v.len() != k {
                    return Err(err(format!("expected {k} coordinates, found {}", v.len())));
                }
                vertices.push(v);
            }
        }
    }
    if dim.is_none() {
        return Err(Error::PolytopeFormat("missing `dim k` header".into()));
    }
    if vertices.is_empty() {
        return Err(Error::PolytopeFormat("no vertices given".into()));
    }
    Ok(convex_hull(&vertices))
}

pub fn read_polytope(path: &Path) -> std::io::Result<Result<LatticePolytope>> {
    Ok(parse_polytope(&std::fs::read_to_string(path)?))
}

pub fn render_polytope(q: &LatticePolytope) -> String {
    let mut s = format!("dim {}\n", q.dim());
    for v in q.vertices() {
        let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
