//! Vertex enumeration by exhaustive intersection of `dim`-subsets of facets.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::HalfSpace;
use crate::linalg;
use crate::rational::{Point, Rational};

/// All extreme points, or a recession direction if the feasible set is unbounded.
pub(super) fn enumerate(
    dim: usize,
    hs: &[HalfSpace],
    infeasible: bool,
) -> Result<Vec<Point>, Point> {
    if infeasible {
        return Ok(Vec::new());
    }
    if dim == 0 {
        return Ok(vec![Point(Vec::new())]);
    }
    let normals: Vec<Vec<Rational>> = hs.iter().map(|h| h.normal.0.clone()).collect();
    let rank = if normals.is_empty() {
        0
    } else {
        linalg::rank(&normals, dim)
    };
    if rank < dim {
        // A nonzero lineality space: the set is unbounded unless empty. Pin the
        // lineality directions to decide emptiness.
        let kernel = linalg::nullspace(&normals, dim);
        let mut pinned = hs.to_vec();
        for k in &kernel {
            let k = Point(k.clone());
            pinned.push(HalfSpace {
                normal: k.clone(),
                offset: Rational::zero(),
            });
            pinned.push(HalfSpace {
                normal: k.neg(),
                offset: Rational::zero(),
            });
        }
        return if pointed_vertices(dim, &pinned).is_empty() {
            Ok(Vec::new())
        } else {
            Err(Point(linalg::primitive_direction(&kernel[0])))
        };
    }
    let verts = pointed_vertices(dim, hs);
    if verts.is_empty() {
        return Ok(verts);
    }
    match recession_direction(dim, &normals) {
        Some(d) => Err(d),
        None => Ok(verts),
    }
}

fn pointed_vertices(dim: usize, hs: &[HalfSpace]) -> Vec<Point> {
    let mut found = BTreeSet::new();
    for subset in linalg::combinations(hs.len(), dim) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| hs[i].normal.0.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| -hs[i].offset.clone()).collect();
        let Some(x) = linalg::solve(&a, &b) else {
            continue;
        };
        if hs.iter().all(|h| h.contains(&x)) {
            found.insert(Point(x));
        }
    }
    found.into_iter().collect()
}

/// An extreme ray of the pointed recession cone `{d : normals · d >= 0}`, if any.
fn recession_direction(dim: usize, normals: &[Vec<Rational>]) -> Option<Point> {
    for subset in linalg::combinations(normals.len(), dim - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let kernel = linalg::nullspace(&rows, dim);
        if kernel.len() != 1 {
            continue;
        }
        let d = Point(kernel[0].clone());
        for cand in [d.clone(), d.neg()] {
            if normals.iter().all(|n| !cand.dot(n).is_negative()) {
                return Some(Point(linalg::primitive_direction(&cand)));
            }
        }
    }
    None
}
