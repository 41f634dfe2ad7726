use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ToricVariety, Wall};
use crate::error::{Error, Result};
use crate::ratgeom::{HalfSpace, Polytope};
use crate::rational::{factorial, format_rational, int, parse_rational, Point, Rational};

/// Torus-invariant divisor `sum_rho a_rho D_rho` with rational coefficients.
#[derive(Clone, Debug)]
pub struct TDivisor {
    variety: Arc<ToricVariety>,
    coeffs: Vec<Rational>,
}

impl PartialEq for TDivisor {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_variety(&self.variety, &other.variety)
    }
}

impl Eq for TDivisor {}

pub(crate) fn same_variety(a: &Arc<ToricVariety>, b: &Arc<ToricVariety>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// On-disk divisor: `{"coeffs": ["p/q", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorFile {
    pub coeffs: Vec<String>,
}

impl TDivisor {
    pub fn new(variety: Arc<ToricVariety>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != variety.num_rays() {
            return Err(Error::DimensionMismatch {
                expected: variety.num_rays(),
                found: coeffs.len(),
            });
        }
        Ok(TDivisor { variety, coeffs })
    }

    pub fn from_ints(variety: Arc<ToricVariety>, coeffs: &[i64]) -> Result<Self> {
        Self::new(variety, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_file(variety: Arc<ToricVariety>, file: &DivisorFile) -> Result<Self> {
        let coeffs = file
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(variety, coeffs)
    }

    pub fn to_file(&self) -> DivisorFile {
        DivisorFile {
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
    }

    /// `-K_X = sum_rho D_rho`.
    pub fn anticanonical(variety: &Arc<ToricVariety>) -> Self {
        TDivisor {
            variety: variety.clone(),
            coeffs: vec![Rational::one(); variety.num_rays()],
        }
    }

    pub fn zero(variety: &Arc<ToricVariety>) -> Self {
        TDivisor {
            variety: variety.clone(),
            coeffs: vec![Rational::zero(); variety.num_rays()],
        }
    }

    /// The prime divisor `D_rho`.
    pub fn prime(variety: &Arc<ToricVariety>, ray: usize) -> Result<Self> {
        if ray >= variety.num_rays() {
            return Err(Error::IndexOutOfRange {
                index: ray,
                limit: variety.num_rays(),
            });
        }
        let mut d = Self::zero(variety);
        d.coeffs[ray] = Rational::one();
        Ok(d)
    }

    pub fn variety(&self) -> &Arc<ToricVariety> {
        &self.variety
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.variety.dim()
    }

    fn check_same(&self, other: &TDivisor) -> Result<()> {
        if same_variety(&self.variety, &other.variety) {
            Ok(())
        } else {
            Err(Error::VarietyMismatch)
        }
    }

    pub fn add(&self, other: &TDivisor) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TDivisor {
            variety: self.variety.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &TDivisor) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TDivisor {
            variety: self.variety.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `D - t * D_rho`.
    pub fn minus_prime(&self, ray: usize, t: &Rational) -> Self {
        let mut d = self.clone();
        d.coeffs[ray] -= t;
        d
    }

    /// `D + div(chi^m)`: the same class, section polytope translated by `-m`.
    pub fn shift(&self, m: &Point) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(self.variety.rays())
            .map(|(a, u)| a + m.dot_ints(u))
            .collect();
        TDivisor {
            variety: self.variety.clone(),
            coeffs,
        }
    }

    /// `D·C` for the curve of a wall.
    pub fn intersect(&self, wall: &Wall) -> Rational {
        wall.pair(&self.coeffs)
    }

    pub fn wall_numbers(&self) -> Vec<Rational> {
        self.variety
            .walls()
            .iter()
            .map(|w| self.intersect(w))
            .collect()
    }

    pub fn is_nef(&self) -> bool {
        self.variety
            .walls()
            .iter()
            .all(|w| !self.intersect(w).is_negative())
    }

    pub fn is_ample(&self) -> bool {
        self.variety
            .walls()
            .iter()
            .all(|w| self.intersect(w).is_positive())
    }

    pub fn is_big(&self) -> Result<bool> {
        self.section_polytope().is_full_dimensional()
    }

    /// The point `m_sigma` with `<m, u_rho> = -a_rho` on the rays of a maximal cone.
    pub fn cone_point(&self, cone: usize) -> Point {
        let n = self.dim();
        let inv = self.variety.cone_inverse(cone);
        let rays = &self.variety.cones()[cone];
        Point(
            (0..n)
                .map(|k| {
                    -rays
                        .iter()
                        .enumerate()
                        .map(|(j, &r)| &self.coeffs[r] * int(inv[k][j]))
                        .sum::<Rational>()
                })
                .collect(),
        )
    }

    /// `P_D = {m : <m, u_rho> >= -a_rho}`. For nef `D` the vertex set is
    /// `{m_sigma}` and is seeded directly.
    pub fn section_polytope(&self) -> Polytope {
        let n = self.dim();
        let hs = self
            .variety
            .rays()
            .iter()
            .zip(&self.coeffs)
            .map(|(u, a)| HalfSpace::new(Point::from_ints(u), a.clone()).expect("rays are nonzero"))
            .collect();
        let p = Polytope::new(n, hs).expect("ray dimension checked at validation");
        if self.is_nef() {
            let verts = (0..self.variety.cones().len())
                .map(|c| self.cone_point(c))
                .collect();
            p.with_known_vertices(verts)
        } else {
            p
        }
    }

    /// `Vol(D) = n! * volume(P_D)`.
    pub fn vol(&self) -> Result<Rational> {
        Ok(self.section_polytope().volume()? * factorial(self.dim()))
    }

    pub fn require_ample(&self) -> Result<()> {
        if self.is_ample() {
            Ok(())
        } else {
            Err(Error::NotAmple)
        }
    }

    pub fn require_nef_and_big(&self) -> Result<()> {
        if !self.is_nef() {
            return Err(Error::NotNef);
        }
        if !self.is_big()? {
            return Err(Error::NotBig);
        }
        Ok(())
    }
}
