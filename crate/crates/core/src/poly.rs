//! Univariate polynomials over the rationals and piecewise-polynomial profiles.
//!
//! Volume profiles of polytope truncations and slice areas are piecewise
//! polynomial between vertex levels; they are recovered exactly by interpolation
//! on each piece and then manipulated symbolically.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{format_rational, int, Rational};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    /// Coefficients from the constant term upward; no trailing zeros.
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Polynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        let mut c = vec![Rational::zero()];
        c.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a / int(k as i64 + 1)),
        );
        Self::new(c)
    }

    pub fn integrate(&self, a: &Rational, b: &Rational) -> Rational {
        let f = self.antiderivative();
        f.eval(b) - f.eval(a)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    /// Polynomial long division: `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let f = &rem[k + dd] / &lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &f * d;
            }
            quot[k] = f;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (same real roots, all simple).
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Lagrange interpolation through `(x_i, y_i)` with distinct abscissae.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Self::constant(Rational::one());
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Self::new(vec![-xj.clone(), Rational::one()]));
                    denom *= xi - xj;
                }
            }
            acc = acc.add(&basis.scale(&(yi / denom)));
        }
        acc
    }

    /// Exact test for `p(x) >= 0` on the closed interval `[a, b]`.
    ///
    /// Roots of the square-free part are isolated with a Sturm sequence; the sign
    /// of `p` is then sampled at one rational point inside every root-free gap.
    pub fn nonnegative_on(&self, a: &Rational, b: &Rational) -> bool {
        if self.is_zero() {
            return true;
        }
        if self.eval(a).is_negative() || self.eval(b).is_negative() {
            return false;
        }
        if a >= b {
            return true;
        }
        let g = self.square_free();
        if g.degree().unwrap_or(0) == 0 {
            return !self.eval(&mid(a, b)).is_negative();
        }
        let sturm = SturmSequence::new(&g);
        sturm
            .gap_points(&g, a, b)
            .iter()
            .all(|t| !self.eval(t).is_negative())
    }
}

fn mid(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

struct SturmSequence(Vec<Polynomial>);

impl SturmSequence {
    fn new(g: &Polynomial) -> Self {
        let mut seq = vec![g.clone(), g.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rational::one()));
        }
        SturmSequence(seq)
    }

    fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<bool> = self
            .0
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots of the (square-free) base polynomial in the open interval.
    fn roots_between(&self, g: &Polynomial, lo: &Rational, hi: &Rational) -> usize {
        // Variation difference counts roots in (lo, hi].
        let k = self.variations(lo).saturating_sub(self.variations(hi));
        k - usize::from(g.eval(hi).is_zero())
    }

    /// At least one non-root rational point in every root-free gap of `(a, b)`.
    fn gap_points(&self, g: &Polynomial, a: &Rational, b: &Rational) -> Vec<Rational> {
        let mut points = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((lo, hi)) = stack.pop() {
            match self.roots_between(g, &lo, &hi) {
                0 => points.push(mid(&lo, &hi)),
                1 => {
                    points.push(self.left_of_single_root(g, &lo, &hi));
                    points.push(self.right_of_single_root(g, &lo, &hi));
                }
                _ => {
                    let m = mid(&lo, &hi);
                    stack.push((lo, m.clone()));
                    stack.push((m, hi));
                }
            }
        }
        points
    }

    /// A point strictly between `lo` and the unique root in `(lo, hi)`.
    fn left_of_single_root(&self, g: &Polynomial, lo: &Rational, hi: &Rational) -> Rational {
        let mut h = hi.clone();
        loop {
            let t = mid(lo, &h);
            if g.eval(&t).is_zero() {
                return mid(lo, &t);
            }
            if self.roots_between(g, lo, &t) == 0 {
                return t;
            }
            h = t;
        }
    }

    /// A point strictly between the unique root in `(lo, hi)` and `hi`.
    fn right_of_single_root(&self, g: &Polynomial, lo: &Rational, hi: &Rational) -> Rational {
        let mut l = lo.clone();
        loop {
            let t = mid(&l, hi);
            if g.eval(&t).is_zero() {
                return mid(&t, hi);
            }
            if self.roots_between(g, &t, hi) == 0 {
                return t;
            }
            l = t;
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                1 => format!("{}*x", format_rational(c)),
                _ => format!("{}*x^{k}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(format_rational))
    }
}

/// A function that is polynomial on each interval `[b_i, b_{i+1}]` and zero
/// outside `[b_0, b_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiecewisePolynomial {
    #[serde(with = "crate::rational::serde_rational_vec")]
    breakpoints: Vec<Rational>,
    pieces: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>) -> Self {
        assert!(
            breakpoints.windows(2).all(|w| w[0] < w[1]),
            "breakpoints must be strictly increasing"
        );
        assert_eq!(
            pieces.len(),
            breakpoints.len().saturating_sub(1),
            "one piece per interval"
        );
        PiecewisePolynomial {
            breakpoints,
            pieces,
        }
    }

    /// Recovers a piecewise polynomial of degree at most `degree` from an exact
    /// oracle, assuming `f` is polynomial between consecutive breakpoints.
    pub fn interpolate<F>(breakpoints: Vec<Rational>, degree: usize, mut f: F) -> Self
    where
        F: FnMut(&Rational) -> Rational,
    {
        let pieces = breakpoints
            .windows(2)
            .map(|w| {
                let width = &w[1] - &w[0];
                let step = width / int(degree as i64 + 2);
                let pts: Vec<(Rational, Rational)> = (1..=degree as i64 + 1)
                    .map(|j| {
                        let x = &w[0] + &step * int(j);
                        let y = f(&x);
                        (x, y)
                    })
                    .collect();
                Polynomial::interpolate(&pts)
            })
            .collect();
        Self::new(breakpoints, pieces)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn support(&self) -> Option<(&Rational, &Rational)> {
        Some((self.breakpoints.first()?, self.breakpoints.last()?))
    }

    /// Index of the piece governing `x` (right-continuous, last piece closed).
    pub fn piece_index(&self, x: &Rational) -> Option<usize> {
        let (lo, hi) = self.support()?;
        if x < lo || x > hi || self.pieces.is_empty() {
            return None;
        }
        let k = self.breakpoints.partition_point(|b| b <= x);
        Some(k.saturating_sub(1).min(self.pieces.len() - 1))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        match self.piece_index(x) {
            Some(i) => self.pieces[i].eval(x),
            None => Rational::zero(),
        }
    }

    /// Left and right limits at `x`.
    pub fn limits(&self, x: &Rational) -> (Rational, Rational) {
        let z = Rational::zero();
        let mut left = z.clone();
        let mut right = z;
        for (w, p) in self.breakpoints.windows(2).zip(&self.pieces) {
            if &w[1] == x || (&w[0] < x && x < &w[1]) {
                left = p.eval(x);
            }
            if &w[0] == x || (&w[0] < x && x < &w[1]) {
                right = p.eval(x);
            }
        }
        (left, right)
    }

    pub fn integral(&self) -> Rational {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .fold(Rational::zero(), |acc, (w, p)| {
                acc + p.integrate(&w[0], &w[1])
            })
    }

    /// `∫_{-∞}^{x} f`.
    pub fn integral_up_to(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (w, p) in self.breakpoints.windows(2).zip(&self.pieces) {
            if x <= &w[0] {
                break;
            }
            let hi = if x < &w[1] { x } else { &w[1] };
            acc += p.integrate(&w[0], hi);
        }
        acc
    }

    /// `∫ x·f(x) dx` over the support.
    pub fn first_moment(&self) -> Rational {
        let x = Polynomial::monomial(1);
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .fold(Rational::zero(), |acc, (w, p)| {
                acc + p.mul(&x).integrate(&w[0], &w[1])
            })
    }

    /// True when adjacent pieces agree at every interior breakpoint.
    pub fn is_continuous(&self) -> bool {
        self.breakpoints
            .iter()
            .skip(1)
            .take(self.pieces.len().saturating_sub(1))
            .zip(self.pieces.windows(2))
            .all(|(b, w)| w[0].eval(b) == w[1].eval(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic_and_calculus() {
        let f = p(&[1, 0, -1]); // 1 - x^2
        assert_eq!(f.eval(&rat(1, 2)), rat(3, 4));
        assert_eq!(f.derivative(), p(&[0, -2]));
        assert_eq!(f.integrate(&int(0), &int(1)), rat(2, 3));
        assert_eq!(p(&[1, 1]).mul(&p(&[-1, 1])), p(&[-1, 0, 1]));
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!((q, r), (p(&[-1, 1]), Polynomial::zero()));
        assert_eq!(p(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, -2, 0, 5]);
        let pts: Vec<_> = (0..4).map(|i| (int(i), f.eval(&int(i)))).collect();
        assert_eq!(Polynomial::interpolate(&pts), f);
    }

    #[test]
    fn square_free_drops_repeated_factors() {
        // (x-1)^2 (x+2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        let g = f.square_free();
        assert_eq!(g.degree(), Some(2));
        assert!(g.eval(&int(1)).is_zero() && g.eval(&int(-2)).is_zero());
    }

    #[test]
    fn exact_nonnegativity() {
        // (x - 1/3)^2 touches zero inside the interval
        let sq = p(&[-1, 3]).mul(&p(&[-1, 3]));
        assert!(sq.nonnegative_on(&int(0), &int(1)));
        // x^2 - 2 changes sign at an irrational point
        let f = p(&[-2, 0, 1]);
        assert!(!f.nonnegative_on(&int(0), &int(2)));
        assert!(f.nonnegative_on(&rat(3, 2), &int(2)));
        // dips below zero strictly between nonnegative endpoints
        let dip = p(&[1, -3]).mul(&p(&[-2, 3])); // (1-3x)(3x-2)
        assert!(!p(&[0]).sub(&dip).nonnegative_on(&int(0), &int(1)));
        // (x-1)(x-2)(x-3) endpoints nonnegative on [1,3] but negative on (2,3)
        let cubic = p(&[-1, 1]).mul(&p(&[-2, 1])).mul(&p(&[-3, 1]));
        assert!(!cubic.nonnegative_on(&int(1), &int(3)));
        assert!(cubic.nonnegative_on(&int(1), &int(2)));
        // x^3 on [0, 1]: root at the left end
        assert!(p(&[0, 0, 0, 1]).nonnegative_on(&int(0), &int(1)));
        assert!(!p(&[0, 0, 0, 1]).nonnegative_on(&int(-1), &int(1)));
    }

    #[test]
    fn piecewise_integrals() {
        let f =
            PiecewisePolynomial::new(vec![int(0), int(1), int(2)], vec![p(&[0, 1]), p(&[2, -1])]);
        assert!(f.is_continuous());
        assert_eq!(f.integral(), int(1));
        assert_eq!(f.integral_up_to(&rat(1, 2)), rat(1, 8));
        assert_eq!(f.eval(&int(3)), int(0));
        assert_eq!(f.eval(&int(1)), int(1));
        assert_eq!(f.first_moment(), int(1));
        let g = PiecewisePolynomial::interpolate(vec![int(0), int(1), int(2)], 1, |x| f.eval(x));
        assert_eq!(g, f);
    }
}
