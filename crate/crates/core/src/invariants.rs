//! Seshadri constants, expected vanishing orders, the toric stability
//! threshold, `beta = min(eps, delta)` and the normalized score
//! `beta^n * Vol`, plus volume profiles along point blow-ups.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{PiecewisePolynomial, Polynomial};
use crate::ratgeom::Polytope;
use crate::rational::{
    factorial, format_rational, int, nth_root_exact, pow, serde_exact, serde_rational_vec, Rational,
};
use crate::toric::{Blowup, TDivisor, Wall};

/// Global Seshadri constant `sup{mu : -K - mu*xi nef}` with its minimizing wall.
pub fn seshadri(xi: &TDivisor) -> Result<(Rational, Wall)> {
    xi.require_ample()?;
    let anti = TDivisor::anticanonical(xi.variety());
    let mut best: Option<(Rational, &Wall)> = None;
    for w in xi.variety().walls() {
        let ratio = anti.intersect(w) / xi.intersect(w);
        if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
            best = Some((ratio, w));
        }
    }
    let (eps, wall) = best.expect("complete fans have walls");
    Ok((eps, wall.clone()))
}

/// `S_L(D_rho) = <barycenter(P_L), u_rho> + a_rho`.
pub fn expected_vanishing_order(l: &TDivisor, ray: usize) -> Result<Rational> {
    check_ray(l, ray)?;
    let bary = l.section_polytope().barycenter()?;
    Ok(bary.dot_ints(&l.variety().rays()[ray]) + &l.coeffs()[ray])
}

/// `S_L(D_rho)` from its defining integral `(1/Vol) ∫ Vol(L - x D_rho) dx`,
/// integrating the exact piecewise-polynomial volume profile.
pub fn expected_vanishing_order_integral(l: &TDivisor, ray: usize) -> Result<Rational> {
    check_ray(l, ray)?;
    let vol = l.vol()?;
    if vol.is_zero() {
        return Err(Error::DegeneratePolytope);
    }
    let profile = divisor_volume_profile(l, ray)?;
    Ok(profile.integral() / vol)
}

/// `x -> Vol(L - x D_rho)` for `x >= 0`.
pub fn divisor_volume_profile(l: &TDivisor, ray: usize) -> Result<PiecewisePolynomial> {
    check_ray(l, ray)?;
    let normal = crate::rational::Point::from_ints(&l.variety().rays()[ray]);
    let profile =
        l.section_polytope()
            .cut_volume_profile(&normal, &l.coeffs()[ray], &Rational::zero())?;
    Ok(profile.scale(&factorial(l.dim())))
}

fn check_ray(l: &TDivisor, ray: usize) -> Result<()> {
    let limit = l.variety().num_rays();
    if ray >= limit {
        return Err(Error::IndexOutOfRange { index: ray, limit });
    }
    Ok(())
}

/// `min_rho 1/S_L(D_rho)` over torus-invariant prime divisors, with the
/// minimizing ray (smallest index on ties).
pub fn delta_toric(l: &TDivisor) -> Result<(Rational, usize)> {
    l.require_ample()?;
    delta_on(l, &l.section_polytope())
}

fn delta_on(l: &TDivisor, polytope: &Polytope) -> Result<(Rational, usize)> {
    let bary = polytope.barycenter()?;
    let (ray, s) = l
        .variety()
        .rays()
        .iter()
        .zip(l.coeffs())
        .map(|(u, a)| bary.dot_ints(u) + a)
        .enumerate()
        .fold(None::<(usize, Rational)>, |best, (i, s)| match best {
            Some((_, ref b)) if *b >= s => best,
            _ => Some((i, s)),
        })
        .expect("at least one ray");
    Ok((s.recip(), ray))
}

pub fn beta(xi: &TDivisor) -> Result<Rational> {
    let (eps, _) = seshadri(xi)?;
    let (delta, _) = delta_toric(xi)?;
    Ok(eps.min(delta))
}

/// `(n + 1)^n`.
pub fn projective_bound(n: usize) -> Rational {
    pow(&int(n as i64 + 1), n as u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub variety_name: String,
    pub dim: usize,
    #[serde(with = "serde_rational_vec")]
    pub divisor: Vec<Rational>,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub vol: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub eps: Rational,
    pub eps_witness: Wall,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub delta: Rational,
    pub delta_witness: usize,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub beta: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub score: Rational,
    /// `delta^n * Vol`.
    #[serde(serialize_with = "serde_exact::serialize")]
    pub delta_score: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub bound: Rational,
    pub is_extremal: bool,
}

/// Full invariant report for an ample class. Fails with `BoundViolated` if
/// either normalized volume exceeds `(n+1)^n`, which would indicate a bug.
pub fn score(xi: &TDivisor) -> Result<InvariantReport> {
    let (eps, eps_witness) = seshadri(xi)?;
    let polytope = xi.section_polytope();
    let (delta, delta_witness) = delta_on(xi, &polytope)?;
    let n = xi.dim();
    let vol = polytope.volume()? * factorial(n);
    let beta = eps.clone().min(delta.clone());
    let score = pow(&beta, n as u32) * &vol;
    let delta_score = pow(&delta, n as u32) * &vol;
    let bound = projective_bound(n);
    for s in [&score, &delta_score] {
        if *s > bound {
            return Err(Error::BoundViolated {
                score: format_rational(s),
                bound: format_rational(&bound),
            });
        }
    }
    Ok(InvariantReport {
        variety_name: xi.variety().name().to_string(),
        dim: n,
        divisor: xi.coeffs().to_vec(),
        is_extremal: score == bound,
        vol,
        eps,
        eps_witness,
        delta,
        delta_witness,
        beta,
        score,
        delta_score,
        bound,
    })
}

/// `delta^n * Vol(L) <= (n+1)^n`.
pub fn delta_volume_bound_check(l: &TDivisor) -> Result<bool> {
    let (delta, _) = delta_toric(l)?;
    let n = l.dim();
    Ok(pow(&delta, n as u32) * l.vol()? <= projective_bound(n))
}

/// `x -> Vol(sigma^* xi - x E)` for the blow-up of a torus-fixed point.
#[derive(Clone, Debug, Serialize)]
pub struct VolumeProfile {
    pub dim: usize,
    pub cone: usize,
    pub profile: PiecewisePolynomial,
    #[serde(with = "crate::rational::serde_rational")]
    pub vol: Rational,
    /// Pseudo-effective threshold of `E`: the end of the support.
    #[serde(with = "crate::rational::serde_rational")]
    pub threshold: Rational,
    /// Whether `Vol(sigma^* xi - x E) >= Vol(xi) - x^n` holds on `[0, threshold]`,
    /// decided piece by piece.
    pub inequality_holds: bool,
    /// Maximal intervals on which the profile is identically `Vol(xi) - x^n`.
    #[serde(skip)]
    pub equality_intervals: Vec<(Rational, Rational)>,
}

impl VolumeProfile {
    pub fn eval(&self, x: &Rational) -> Rational {
        self.profile.eval(x)
    }

    /// `Vol(xi) - x^n`.
    pub fn lower_model(&self, x: &Rational) -> Rational {
        &self.vol - pow(x, self.dim as u32)
    }

    pub fn margin(&self, x: &Rational) -> Rational {
        self.eval(x) - self.lower_model(x)
    }

    /// `S(E) = (1/Vol) ∫ Vol(sigma^* xi - x E) dx`.
    pub fn expected_vanishing_order(&self) -> Rational {
        self.profile.integral() / &self.vol
    }

    pub fn lower_model_polynomial(&self) -> Polynomial {
        Polynomial::constant(self.vol.clone()).sub(&Polynomial::monomial(self.dim))
    }
}

/// Exact volume profile of `sigma^* xi - x E` at the fixed point of `cone`.
pub fn fujita_profile(xi: &TDivisor, cone: usize) -> Result<VolumeProfile> {
    xi.require_nef_and_big()?;
    let blowup = Blowup::new(xi.variety(), cone)?;
    let pulled = blowup.pullback(xi)?;
    let e = blowup.exceptional_ray();
    let n = xi.dim();
    let profile = divisor_volume_profile(&pulled, e)?;
    let vol = xi.vol()?;
    let threshold = profile
        .support()
        .map(|(_, hi)| hi.clone())
        .unwrap_or_else(Rational::zero);

    let model = Polynomial::constant(vol.clone()).sub(&Polynomial::monomial(n));
    let mut inequality_holds = true;
    let mut equality_intervals: Vec<(Rational, Rational)> = Vec::new();
    for (w, p) in profile.breakpoints().windows(2).zip(profile.pieces()) {
        let diff = p.sub(&model);
        inequality_holds &= diff.nonnegative_on(&w[0], &w[1]);
        if diff.is_zero() {
            match equality_intervals.last_mut() {
                Some(last) if last.1 == w[0] => last.1 = w[1].clone(),
                _ => equality_intervals.push((w[0].clone(), w[1].clone())),
            }
        }
    }
    Ok(VolumeProfile {
        dim: n,
        cone,
        profile,
        vol,
        threshold,
        inequality_holds,
        equality_intervals,
    })
}

/// Seshadri constant at the fixed point of `cone`: the largest `x` with
/// `sigma^* xi - x E` nef on the blow-up.
pub fn seshadri_at_point(xi: &TDivisor, cone: usize) -> Result<Rational> {
    xi.require_ample()?;
    let blowup = Blowup::new(xi.variety(), cone)?;
    let pulled = blowup.pullback(xi)?;
    let e = blowup.exceptional();
    blowup
        .variety()
        .walls()
        .iter()
        .filter_map(|w| {
            let ec = e.intersect(w);
            ec.is_positive().then(|| pulled.intersect(w) / ec)
        })
        .min()
        .ok_or(Error::NotAmple)
}

/// The inequality chain `n = A(E) >= beta*S(E) >= n*beta*Vol^{1/n}/(n+1)`,
/// which yields `beta^n Vol <= (n+1)^n`, for the exceptional divisor over a
/// torus-fixed point. Steps involving `Vol^{1/n}` are compared after raising
/// to the `n`-th power, so every verdict is exact.
#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalChain {
    pub dim: usize,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub log_discrepancy: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub beta: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub expected_vanishing_order: Rational,
    /// The same `S(E)` from the barycenter of the blown-up section polytope.
    #[serde(serialize_with = "serde_exact::serialize")]
    pub expected_vanishing_order_barycenter: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub beta_times_s: Rational,
    /// `n * beta * Vol^{1/n} / (n+1)` when `Vol^{1/n}` is rational.
    #[serde(serialize_with = "serde_exact::serialize_option")]
    pub lower_bound: Option<Rational>,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub vol: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub score: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub bound: Rational,
    /// `n >= beta * S`.
    pub first_holds: bool,
    pub first_tight: bool,
    /// `S >= n Vol^{1/n} / (n+1)`, i.e. `((n+1) S / n)^n >= Vol`.
    pub second_holds: bool,
    pub second_tight: bool,
    /// `beta^n Vol <= (n+1)^n`.
    pub conclusion_holds: bool,
    pub conclusion_tight: bool,
}

impl ExceptionalChain {
    pub fn holds(&self) -> bool {
        self.first_holds && self.second_holds && self.conclusion_holds
    }

    pub fn all_tight(&self) -> bool {
        self.first_tight && self.second_tight && self.conclusion_tight
    }
}

pub fn exceptional_chain(xi: &TDivisor, cone: usize) -> Result<ExceptionalChain> {
    let n = xi.dim();
    let beta = beta(xi)?;
    let profile = fujita_profile(xi, cone)?;
    let s = profile.expected_vanishing_order();
    let blowup = Blowup::new(xi.variety(), cone)?;
    let s_bary = expected_vanishing_order(&blowup.pullback(xi)?, blowup.exceptional_ray())?;
    let a = int(n as i64);
    let vol = profile.vol.clone();
    let beta_s = &beta * &s;
    let scaled = pow(&(&s * int(n as i64 + 1) / &a), n as u32);
    let lower_bound = nth_root_exact(&vol, n as u32).map(|r| &a * &beta * r / int(n as i64 + 1));
    let score = pow(&beta, n as u32) * &vol;
    let bound = projective_bound(n);
    Ok(ExceptionalChain {
        dim: n,
        first_holds: a >= beta_s,
        first_tight: a == beta_s,
        second_holds: scaled >= vol,
        second_tight: scaled == vol,
        conclusion_holds: score <= bound,
        conclusion_tight: score == bound,
        log_discrepancy: a,
        beta,
        expected_vanishing_order: s,
        expected_vanishing_order_barycenter: s_bary,
        beta_times_s: beta_s,
        lower_bound,
        vol,
        score,
        bound,
    })
}
