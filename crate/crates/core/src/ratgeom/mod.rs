//! Exact rational polytopes.
//!
//! A [`Polytope`] is stored by its H-representation `{m : <normal, m> + offset >= 0}`.
//! The V-representation is computed lazily by exhaustive facet-subset
//! intersection and cached write-once; lower-dimensional polytopes are ordinary
//! values with volume zero.

mod hull;
mod measure;
mod profile;
mod vertices;

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, Point, Rational};

pub use measure::Simplex;

/// The closed halfspace `{m : <normal, m> >= -offset}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    normal: Point,
    offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: Point, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(HalfSpace { normal, offset })
    }

    /// `{x_axis >= lo}` in `R^dim`.
    pub fn lower_bound(dim: usize, axis: usize, lo: &Rational) -> Self {
        HalfSpace {
            normal: Point::unit(dim, axis),
            offset: -lo.clone(),
        }
    }

    /// `{x_axis <= hi}` in `R^dim`.
    pub fn upper_bound(dim: usize, axis: usize, hi: &Rational) -> Self {
        HalfSpace {
            normal: Point::unit(dim, axis).neg(),
            offset: hi.clone(),
        }
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `<normal, p> + offset`; nonnegative exactly on the halfspace.
    pub fn slack(&self, p: &[Rational]) -> Rational {
        self.normal.dot(p) + &self.offset
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        !self.slack(p).is_negative()
    }

    pub fn is_tight(&self, p: &[Rational]) -> bool {
        self.slack(p).is_zero()
    }

    /// Positive rescaling to a primitive integer normal.
    pub fn canonical(&self) -> HalfSpace {
        let prim = linalg::primitive_direction(&self.normal);
        let idx = self.normal.iter().position(|x| !x.is_zero()).unwrap();
        let factor = &prim[idx] / &self.normal[idx];
        HalfSpace {
            normal: Point(prim),
            offset: &self.offset * factor,
        }
    }
}

#[derive(Clone, Debug)]
struct Measure {
    volume: Rational,
    /// `sum vol(s) * centroid(s)` over a triangulation.
    moment: Point,
}

#[derive(Clone)]
pub struct Polytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    /// Set when a constraint collapsed to `0 >= c` with `c > 0` (e.g. after slicing).
    infeasible: bool,
    vertices: OnceLock<std::result::Result<Vec<Point>, Point>>,
    measure: OnceLock<Measure>,
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("dim", &self.dim)
            .field("infeasible", &self.infeasible)
            .field(
                "halfspaces",
                &self
                    .halfspaces
                    .iter()
                    .map(|h| (h.normal.to_strings(), h.offset.to_string()))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Polytope {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if let Some(h) = halfspaces.iter().find(|h| h.normal.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.normal.dim(),
            });
        }
        Ok(Self::from_parts(dim, halfspaces, false))
    }

    /// Builds from integer rows `(normal, offset)` meaning `<normal, m> >= -offset`.
    pub fn from_int_rows(dim: usize, rows: &[(&[i64], i64)]) -> Result<Self> {
        let hs = rows
            .iter()
            .map(|(n, o)| HalfSpace::new(Point::from_ints(n), int(*o)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, hs)
    }

    fn from_parts(dim: usize, halfspaces: Vec<HalfSpace>, infeasible: bool) -> Self {
        Polytope {
            dim,
            halfspaces,
            infeasible,
            vertices: OnceLock::new(),
            measure: OnceLock::new(),
        }
    }

    pub fn empty(dim: usize) -> Self {
        Self::from_parts(dim, Vec::new(), true)
    }

    /// `[lo, hi]^dim`
    pub fn cube(dim: usize, lo: &Rational, hi: &Rational) -> Self {
        let hs = (0..dim)
            .flat_map(|a| {
                [
                    HalfSpace::lower_bound(dim, a, lo),
                    HalfSpace::upper_bound(dim, a, hi),
                ]
            })
            .collect();
        Self::from_parts(dim, hs, false)
    }

    /// `conv{0, e_1, ..., e_dim}`
    pub fn standard_simplex(dim: usize) -> Self {
        let mut hs: Vec<HalfSpace> = (0..dim)
            .map(|a| HalfSpace::lower_bound(dim, a, &Rational::zero()))
            .collect();
        if dim > 0 {
            hs.push(HalfSpace {
                normal: Point(vec![-Rational::one(); dim]),
                offset: Rational::one(),
            });
        }
        Self::from_parts(dim, hs, false)
    }

    /// Convex hull of a finite point set.
    pub fn from_vertices(dim: usize, points: &[Point]) -> Result<Self> {
        hull::convex_hull(dim, points)
    }

    /// Seeds the vertex cache; the caller guarantees `vertices` is exactly the
    /// vertex set of the H-representation.
    pub(crate) fn with_known_vertices(self, vertices: Vec<Point>) -> Self {
        let mut v = vertices;
        v.sort();
        v.dedup();
        let _ = self.vertices.set(Ok(v));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    /// Extreme points in sorted order, computed once and cached.
    pub fn vertices(&self) -> Result<&[Point]> {
        self.vertices
            .get_or_init(|| vertices::enumerate(self.dim, &self.halfspaces, self.infeasible))
            .as_deref()
            .map_err(|d| Error::UnboundedPolytope {
                direction: d.clone(),
            })
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.vertices()?.is_empty())
    }

    pub fn is_full_dimensional(&self) -> Result<bool> {
        let v = self.vertices()?;
        Ok(!v.is_empty() && affine_rank(v) == self.dim)
    }

    fn measure(&self) -> Result<&Measure> {
        if let Some(m) = self.measure.get() {
            return Ok(m);
        }
        let verts = self.vertices()?;
        let m = measure::measure(self.dim, &self.halfspaces, verts);
        Ok(self.measure.get_or_init(|| m))
    }

    /// Exact Euclidean volume; zero iff not full-dimensional.
    pub fn volume(&self) -> Result<Rational> {
        Ok(self.measure()?.volume.clone())
    }

    /// Exact centroid.
    pub fn barycenter(&self) -> Result<Point> {
        let m = self.measure()?;
        if m.volume.is_zero() {
            return Err(Error::DegeneratePolytope);
        }
        Ok(m.moment.scale(&m.volume.recip()))
    }

    /// Pulling triangulation coned from the vertex `apex` (index into [`Self::vertices`]).
    pub fn triangulate(&self, apex: usize) -> Result<Vec<Simplex>> {
        let verts = self.vertices()?;
        if apex >= verts.len() {
            return Err(Error::IndexOutOfRange {
                index: apex,
                limit: verts.len(),
            });
        }
        if affine_rank(verts) < self.dim {
            return Ok(Vec::new());
        }
        Ok(measure::triangulate(
            &self.halfspaces,
            verts,
            self.dim,
            apex,
        ))
    }

    pub fn contains(&self, q: &[Rational]) -> bool {
        !self.infeasible && self.halfspaces.iter().all(|h| h.contains(q))
    }

    pub fn intersect(&self, h: HalfSpace) -> Self {
        let mut hs = self.halfspaces.clone();
        hs.push(h);
        Self::from_parts(self.dim, hs, self.infeasible)
    }

    /// `P ∩ {x_axis = value}` in `R^{dim-1}` (the fixed coordinate dropped).
    pub fn slice(&self, axis: usize, value: &Rational) -> Self {
        assert!(axis < self.dim, "axis {axis} out of range");
        let mut infeasible = self.infeasible;
        let mut hs = Vec::new();
        for h in &self.halfspaces {
            let mut normal = h.normal.0.clone();
            let coeff = normal.remove(axis);
            let offset = &h.offset + coeff * value;
            if normal.iter().all(Zero::is_zero) {
                infeasible |= offset.is_negative();
            } else {
                hs.push(HalfSpace {
                    normal: Point(normal),
                    offset,
                });
            }
        }
        Self::from_parts(self.dim - 1, hs, infeasible)
    }

    /// `P ∩ {lo <= x_axis <= hi}`
    pub fn truncate(&self, axis: usize, lo: &Rational, hi: &Rational) -> Self {
        assert!(lo <= hi, "truncate requires lo <= hi");
        self.truncate_at_least(axis, lo)
            .intersect(HalfSpace::upper_bound(self.dim, axis, hi))
    }

    /// `P ∩ {x_axis >= lo}`
    pub fn truncate_at_least(&self, axis: usize, lo: &Rational) -> Self {
        self.intersect(HalfSpace::lower_bound(self.dim, axis, lo))
    }

    /// Minkowski translate `P + v`.
    pub fn translate(&self, v: &Point) -> Self {
        assert_eq!(v.dim(), self.dim, "translation vector dimension");
        let hs = self
            .halfspaces
            .iter()
            .map(|h| HalfSpace {
                normal: h.normal.clone(),
                offset: &h.offset - h.normal.dot(v),
            })
            .collect();
        let out = Self::from_parts(self.dim, hs, self.infeasible);
        match self.vertices.get() {
            Some(Ok(vs)) => out.with_known_vertices(vs.iter().map(|p| p.add(v)).collect()),
            _ => out,
        }
    }

    /// Image under `x -> matrix · x + shift` for an invertible `matrix` (rows).
    pub fn affine_image(&self, matrix: &[Vec<Rational>], shift: &Point) -> Result<Self> {
        let n = self.dim;
        if matrix.len() != n || shift.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.len(),
            });
        }
        // <u, A^{-1}(y - s)> = <A^{-T} u, y - s>
        let transpose: Vec<Vec<Rational>> = (0..n)
            .map(|j| (0..n).map(|i| matrix[i][j].clone()).collect())
            .collect();
        let hs = self
            .halfspaces
            .iter()
            .map(|h| {
                let w = linalg::solve(&transpose, &h.normal).ok_or(Error::DegeneratePolytope)?;
                let w = Point(w);
                let offset = &h.offset - w.dot(shift);
                Ok(HalfSpace { normal: w, offset })
            })
            .collect::<Result<Vec<_>>>()?;
        let out = Self::from_parts(n, hs, self.infeasible);
        Ok(match self.vertices.get() {
            Some(Ok(vs)) => {
                let mapped = vs
                    .iter()
                    .map(|p| {
                        Point(
                            (0..n)
                                .map(|i| Point(matrix[i].clone()).dot(p) + &shift[i])
                                .collect(),
                        )
                    })
                    .collect();
                out.with_known_vertices(mapped)
            }
            _ => out,
        })
    }

    /// Set equality by mutual vertex containment.
    pub fn equals(&self, other: &Polytope) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let a = self.vertices()?;
        let b = other.vertices()?;
        Ok(a.iter().all(|v| other.contains(v)) && b.iter().all(|v| self.contains(v)))
    }

    /// Irredundant H-representation with primitive integer normals, sorted.
    pub fn canonicalize(&self) -> Result<Self> {
        let verts = self.vertices()?.to_vec();
        let hull = hull::convex_hull(self.dim, &verts)?;
        Ok(hull.with_known_vertices(verts))
    }

    /// `max <functional, v>` over the polytope, `None` if empty.
    pub fn max_linear(&self, functional: &[Rational]) -> Result<Option<Rational>> {
        Ok(self.vertices()?.iter().map(|v| v.dot(functional)).max())
    }

    pub fn min_linear(&self, functional: &[Rational]) -> Result<Option<Rational>> {
        Ok(self.vertices()?.iter().map(|v| v.dot(functional)).min())
    }
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_rank(points: &[Point]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| p.sub(first).0).collect();
    if diffs.is_empty() {
        return 0;
    }
    linalg::rank(&diffs, first.dim())
}
