//! Newton–Okounkov bodies of torus-invariant flags.
//!
//! For a flag `Y_1 ⊃ ... ⊃ Y_n` of torus-invariant subvarieties ending at the
//! fixed point of a smooth maximal cone with rays `u_1, ..., u_n` (in flag
//! order), the body of `D` is the section polytope in the coordinates
//! `nu_i = <m, u_i> + a_i`. The change of coordinates is unimodular, so
//! `n! vol(body) = Vol(D)`, and the body sits in the nonnegative orthant.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::PiecewisePolynomial;
use crate::ratgeom::Polytope;
use crate::rational::{factorial, format_rational, int, Point, Rational};
use crate::toric::{TDivisor, ToricVariety};

/// Admissible torus-invariant flag: a maximal cone and an ordering of its rays.
#[derive(Clone, Debug)]
pub struct FlagSpec {
    variety: Arc<ToricVariety>,
    cone: usize,
    order: Vec<usize>,
}

impl FlagSpec {
    /// `order` lists ray indices; it must be a permutation of the cone's rays.
    pub fn new(variety: &Arc<ToricVariety>, cone: usize, order: Vec<usize>) -> Result<Self> {
        let cones = variety.cones();
        let Some(rays) = cones.get(cone) else {
            return Err(Error::IndexOutOfRange {
                index: cone,
                limit: cones.len(),
            });
        };
        let mut a = order.clone();
        let mut b = rays.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(Error::InvalidFlag(format!(
                "{order:?} is not an ordering of cone {cone} = {rays:?}"
            )));
        }
        Ok(FlagSpec {
            variety: variety.clone(),
            cone,
            order,
        })
    }

    /// The cone's rays in their listed order.
    pub fn standard(variety: &Arc<ToricVariety>, cone: usize) -> Result<Self> {
        let rays = variety.cones().get(cone).ok_or(Error::IndexOutOfRange {
            index: cone,
            limit: variety.cones().len(),
        })?;
        Self::new(variety, cone, rays.clone())
    }

    /// Parses `"cone"` or `"cone:r1,r2,..."` (ray indices).
    pub fn parse(variety: &Arc<ToricVariety>, text: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidFlag(format!(
                "expected <cone> or <cone>:<ray>,<ray>,..., got {text:?}"
            ))
        };
        let (cone, order) = match text.split_once(':') {
            Some((c, o)) => (c, Some(o)),
            None => (text, None),
        };
        let cone: usize = cone.trim().parse().map_err(|_| bad())?;
        match order {
            None => Self::standard(variety, cone),
            Some(o) => {
                let order = o
                    .split(',')
                    .map(|r| r.trim().parse().map_err(|_| bad()))
                    .collect::<Result<Vec<usize>>>()?;
                Self::new(variety, cone, order)
            }
        }
    }

    pub fn variety(&self) -> &Arc<ToricVariety> {
        &self.variety
    }

    pub fn cone(&self) -> usize {
        self.cone
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The ray whose divisor is `Y_1`.
    pub fn first_ray(&self) -> usize {
        self.order[0]
    }
}

#[derive(Clone, Debug)]
pub struct OkounkovBody {
    body: Polytope,
    flag: FlagSpec,
    class: TDivisor,
}

impl OkounkovBody {
    pub fn body(&self) -> &Polytope {
        &self.body
    }

    pub fn flag(&self) -> &FlagSpec {
        &self.flag
    }

    pub fn class(&self) -> &TDivisor {
        &self.class
    }

    /// `n! vol(body)`.
    pub fn normalized_volume(&self) -> Result<Rational> {
        Ok(self.body.volume()? * factorial(self.body.dim()))
    }

    pub fn is_nonnegative(&self) -> Result<bool> {
        Ok(self
            .body
            .vertices()?
            .iter()
            .all(|v| v.iter().all(|c| !c.is_negative())))
    }

    pub fn contains_origin(&self) -> bool {
        self.body.contains(&Point::zero(self.body.dim()))
    }
}

/// The body of a big class for a torus-invariant flag.
pub fn okounkov_body(xi: &TDivisor, flag: &FlagSpec) -> Result<OkounkovBody> {
    if !crate::toric::same_variety(xi.variety(), flag.variety()) {
        return Err(Error::VarietyMismatch);
    }
    if !xi.is_big()? {
        return Err(Error::NotBig);
    }
    Ok(OkounkovBody {
        body: flag_coordinates(xi, flag)?,
        flag: flag.clone(),
        class: xi.clone(),
    })
}

fn flag_coordinates(xi: &TDivisor, flag: &FlagSpec) -> Result<Polytope> {
    let rays = xi.variety().rays();
    let matrix: Vec<Vec<Rational>> = flag
        .order
        .iter()
        .map(|&r| rays[r].iter().map(|&x| int(x)).collect())
        .collect();
    let shift = Point(flag.order.iter().map(|&r| xi.coeffs()[r].clone()).collect());
    xi.section_polytope().affine_image(&matrix, &shift)
}

/// `sup{mu : xi - mu Y_1 big}`, the largest `nu_1` on the body.
pub fn pseff_threshold(xi: &TDivisor, flag: &FlagSpec) -> Result<Rational> {
    let body = okounkov_body(xi, flag)?;
    Ok(body
        .body
        .max_linear(&Point::unit(xi.dim(), 0))?
        .expect("big classes have nonempty bodies"))
}

/// `body ∩ {nu_1 >= t}` against `body(xi - t Y_1) + t e_1`.
pub fn translation_identity_check(xi: &TDivisor, flag: &FlagSpec, t: &Rational) -> Result<bool> {
    let tau = pseff_threshold(xi, flag)?;
    if t.is_negative() || *t >= tau {
        return Err(Error::ThresholdExceeded {
            t: format_rational(t),
            tau: format_rational(&tau),
        });
    }
    let n = xi.dim();
    let lhs = okounkov_body(xi, flag)?.body.truncate_at_least(0, t);
    let shifted = xi.minus_prime(flag.first_ray(), t);
    let rhs = okounkov_body(&shifted, flag)?
        .body
        .translate(&Point::unit(n, 0).scale(t));
    lhs.equals(&rhs)
}

/// Nefness via the origin: `xi` is nef iff the body of every torus-fixed
/// flag contains `0`.
pub fn nef_by_origin(xi: &TDivisor) -> Result<bool> {
    if !xi.is_big()? {
        return Err(Error::NotBig);
    }
    for cone in 0..xi.variety().cones().len() {
        let flag = FlagSpec::standard(xi.variety(), cone)?;
        if !flag_coordinates(xi, &flag)?.contains(&Point::zero(xi.dim())) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A(r) = vol_{n-1}(body ∩ {nu_1 = r})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceProfile {
    pub dim: usize,
    pub profile: PiecewisePolynomial,
}

impl SliceProfile {
    pub fn new(dim: usize, profile: PiecewisePolynomial) -> Self {
        SliceProfile { dim, profile }
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        self.profile.eval(r)
    }

    pub fn integral(&self) -> Rational {
        self.profile.integral()
    }
}

pub fn slice_profile(body: &Polytope) -> Result<SliceProfile> {
    Ok(SliceProfile::new(body.dim(), body.slice_area_profile(0)?))
}

/// Concavity of `A^{1/(n-1)}` on the support. Within a piece, with `k = n - 1`,
/// `(A^{1/k})'' <= 0` iff `k A A'' - (k - 1) A'^2 <= 0` where `A > 0`; this is
/// tested at 200 interior points per piece. At interior breakpoints `A` must be
/// continuous and its slope must not increase.
pub fn bm_concavity_check(profile: &SliceProfile) -> bool {
    const SAMPLES: i64 = 200;
    let k = int(profile.dim.saturating_sub(1) as i64);
    if k.is_zero() {
        return true;
    }
    let km1 = &k - int(1);
    let bps = profile.profile.breakpoints();
    let pieces = profile.profile.pieces();
    for (w, p) in bps.windows(2).zip(pieces) {
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let width = &w[1] - &w[0];
        for j in 1..=SAMPLES {
            let r = &w[0] + &width * Rational::new(j.into(), (SAMPLES + 1).into());
            let a = p.eval(&r);
            if !a.is_positive() {
                return false;
            }
            let slope = d1.eval(&r);
            if (&k * &a * d2.eval(&r) - &km1 * &slope * &slope).is_positive() {
                return false;
            }
        }
    }
    for (i, b) in bps
        .iter()
        .enumerate()
        .skip(1)
        .take(pieces.len().saturating_sub(1))
    {
        let (left, right) = (&pieces[i - 1], &pieces[i]);
        if left.eval(b) != right.eval(b) {
            return false;
        }
        if left.derivative().eval(b) < right.derivative().eval(b) {
            return false;
        }
    }
    true
}

/// `body ∩ {0 <= nu_1 <= a}` is the cone from the origin over the slice at `a`.
pub fn cone_structure_check(body: &Polytope, a: &Rational) -> Result<bool> {
    let n = body.dim();
    let slice = body.slice(0, a);
    let top = slice.vertices()?;
    if top.is_empty() {
        return Ok(false);
    }
    let mut generators = vec![Point::zero(n)];
    generators.extend(top.iter().map(|v| {
        let mut c = vec![a.clone()];
        c.extend(v.iter().cloned());
        Point(c)
    }));
    let cone = Polytope::from_vertices(n, &generators)?;
    body.truncate(0, &Rational::zero(), a).equals(&cone)
}

/// `(x, 0, ..., 0)` lies in the body for `x` in `{0, a/2, a}`.
pub fn segment_membership_check(body: &Polytope, a: &Rational) -> bool {
    let n = body.dim();
    [Rational::zero(), a / int(2), a.clone()]
        .iter()
        .all(|x| body.contains(&Point::unit(n, 0).scale(x)))
}
