//! Volume and centroid through a pulling triangulation.
//!
//! A face is a set of vertex indices. The facets of a face `F` of dimension `k`
//! are the sets `F ∩ H_j` of affine dimension `k - 1`; coning each facet not
//! containing the apex over the apex triangulates `F`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::{affine_rank, HalfSpace, Measure};
use crate::linalg;
use crate::rational::{factorial, int, Point, Rational};

/// A full-dimensional simplex given by its `dim + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex(pub Vec<Point>);

impl Simplex {
    pub fn volume(&self) -> Rational {
        let base = &self.0[0];
        let rows: Vec<Vec<Rational>> = self.0[1..].iter().map(|p| p.sub(base).0).collect();
        linalg::det(&rows).abs() / factorial(rows.len())
    }

    pub fn centroid(&self) -> Point {
        let n = self.0.len();
        let sum = self.0[1..]
            .iter()
            .fold(self.0[0].clone(), |acc, p| acc.add(p));
        sum.scale(&int(n as i64).recip())
    }
}

pub(super) fn measure(dim: usize, hs: &[HalfSpace], verts: &[Point]) -> Measure {
    if verts.is_empty() {
        return Measure {
            volume: Rational::zero(),
            moment: Point::zero(dim),
        };
    }
    if dim == 0 {
        return Measure {
            volume: Rational::one(),
            moment: Point::zero(0),
        };
    }
    if affine_rank(verts) < dim {
        return Measure {
            volume: Rational::zero(),
            moment: Point::zero(dim),
        };
    }
    let mut volume = Rational::zero();
    let mut moment = Point::zero(dim);
    for s in triangulate(hs, verts, dim, 0) {
        let v = s.volume();
        moment = moment.add(&s.centroid().scale(&v));
        volume += v;
    }
    Measure { volume, moment }
}

pub(super) fn triangulate(
    hs: &[HalfSpace],
    verts: &[Point],
    dim: usize,
    apex: usize,
) -> Vec<Simplex> {
    let tight: Vec<BTreeSet<usize>> = hs
        .iter()
        .map(|h| {
            (0..verts.len())
                .filter(|&i| h.is_tight(&verts[i]))
                .collect()
        })
        .collect();
    let all: BTreeSet<usize> = (0..verts.len()).collect();
    let mut out = Vec::new();
    cone_faces(&all, dim, apex, &tight, verts, &mut Vec::new(), &mut out);
    out
}

fn cone_faces(
    face: &BTreeSet<usize>,
    face_dim: usize,
    apex: usize,
    tight: &[BTreeSet<usize>],
    verts: &[Point],
    stack: &mut Vec<usize>,
    out: &mut Vec<Simplex>,
) {
    stack.push(apex);
    if face_dim == 0 {
        out.push(Simplex(stack.iter().map(|&i| verts[i].clone()).collect()));
        stack.pop();
        return;
    }
    let mut seen = BTreeSet::new();
    for t in tight {
        let sub: BTreeSet<usize> = face.intersection(t).copied().collect();
        if sub.is_empty() || sub.len() == face.len() || sub.contains(&apex) {
            continue;
        }
        if !seen.insert(sub.iter().copied().collect::<Vec<_>>()) {
            continue;
        }
        let pts: Vec<Point> = sub.iter().map(|&i| verts[i].clone()).collect();
        if affine_rank(&pts) + 1 != face_dim {
            continue;
        }
        let sub_apex = *sub.iter().next().unwrap();
        cone_faces(&sub, face_dim - 1, sub_apex, tight, verts, stack, out);
    }
    stack.pop();
}
