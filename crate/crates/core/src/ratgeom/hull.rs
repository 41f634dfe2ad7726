//! H-representation of the convex hull of a finite point set.
//!
//! Points are projected onto coordinates that parametrize their affine hull,
//! facets are found by brute force over point subsets there, and the result is
//! lifted back together with the equations of the affine hull.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{HalfSpace, Polytope};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{Point, Rational};

pub(super) fn convex_hull(dim: usize, points: &[Point]) -> Result<Polytope> {
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        });
    }
    let pts: Vec<Point> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let Some(base) = pts.first().cloned() else {
        return Ok(Polytope::empty(dim));
    };
    let diffs: Vec<Vec<Rational>> = pts[1..].iter().map(|p| p.sub(&base).0).collect();
    let (_, pivots) = if diffs.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        linalg::rref(&diffs, dim)
    };
    let hull_dim = pivots.len();

    let mut hs: BTreeSet<HalfSpace> = BTreeSet::new();
    // Equations of the affine hull.
    let equations = if diffs.is_empty() {
        (0..dim).map(|a| Point::unit(dim, a).0).collect()
    } else {
        linalg::nullspace(&diffs, dim)
    };
    for w in equations {
        let w = Point(w);
        let off = -w.dot(&base);
        hs.insert(
            HalfSpace {
                normal: w.clone(),
                offset: off.clone(),
            }
            .canonical(),
        );
        hs.insert(
            HalfSpace {
                normal: w.neg(),
                offset: -off,
            }
            .canonical(),
        );
    }

    if hull_dim > 0 {
        let proj: Vec<Point> = pts
            .iter()
            .map(|p| Point(pivots.iter().map(|&c| p[c].clone()).collect()))
            .collect();
        for facet in facets(hull_dim, &proj) {
            let mut normal = Point::zero(dim);
            for (k, &c) in pivots.iter().enumerate() {
                normal.0[c] = facet.normal[k].clone();
            }
            hs.insert(
                HalfSpace {
                    normal,
                    offset: facet.offset,
                }
                .canonical(),
            );
        }
    }
    Polytope::new(dim, hs.into_iter().collect())
}

/// Facet halfspaces of a full-dimensional point set in `R^d`.
fn facets(d: usize, pts: &[Point]) -> BTreeSet<HalfSpace> {
    let mut out = BTreeSet::new();
    if d == 1 {
        let lo = pts.iter().map(|p| p[0].clone()).min().unwrap();
        let hi = pts.iter().map(|p| p[0].clone()).max().unwrap();
        out.insert(HalfSpace::lower_bound(1, 0, &lo));
        out.insert(HalfSpace::upper_bound(1, 0, &hi));
        return out;
    }
    for subset in linalg::combinations(pts.len(), d) {
        let p0 = &pts[subset[0]];
        let rows: Vec<Vec<Rational>> = subset[1..].iter().map(|&i| pts[i].sub(p0).0).collect();
        let kernel = linalg::nullspace(&rows, d);
        if kernel.len() != 1 {
            continue;
        }
        let c = Point(kernel[0].clone());
        let level = c.dot(p0);
        let mut above = false;
        let mut below = false;
        for p in pts {
            let s = c.dot(p) - &level;
            above |= s.is_positive();
            below |= s.is_negative();
        }
        let h = match (above, below) {
            (true, false) => HalfSpace {
                normal: c,
                offset: -level,
            },
            (false, true) => HalfSpace {
                normal: c.neg(),
                offset: level,
            },
            _ => continue,
        };
        debug_assert!(!h.normal.iter().all(Zero::is_zero));
        out.insert(h.canonical());
    }
    out
}
