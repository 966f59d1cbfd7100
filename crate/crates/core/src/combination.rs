//! Rational linear combinations of exact angles.
//!
//! Interpolated profile values such as `(1−λ)·A + λ·B` are not themselves
//! arguments of integer vectors, but their sign relative to any lattice angle
//! is still decidable: scaling by the common denominator `q` turns the
//! combination into `Σ nᵢ·Aᵢ`, whose residue mod 2π is the argument of the
//! Gaussian integer `Π dᵢ^{nᵢ}`. Floating point only selects the whole-turn
//! branch, which is unambiguous once the value is known to within π/q.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::angle::{Angle, Direction};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAngle {
    terms: Vec<(Rational, Angle)>,
}

impl LinearAngle {
    pub fn zero() -> Self {
        LinearAngle { terms: Vec::new() }
    }

    pub fn of(angle: Angle) -> Self {
        LinearAngle::scaled(Rational::one(), angle)
    }

    pub fn scaled(c: Rational, angle: Angle) -> Self {
        let mut out = LinearAngle::zero();
        out.push(c, angle);
        out
    }

    /// `(1−λ)·a + λ·b`.
    pub fn interpolate(a: Angle, b: Angle, lambda: Rational) -> Self {
        let mut out = LinearAngle::scaled(Rational::one() - lambda, a);
        out.push(lambda, b);
        out
    }

    fn push(&mut self, c: Rational, angle: Angle) {
        if c.is_zero() || angle.is_zero() {
            return;
        }
        if let Some(slot) = self.terms.iter_mut().find(|(_, a)| *a == angle) {
            slot.0 += c;
        } else {
            self.terms.push((c, angle));
        }
        self.terms.retain(|(c, _)| !c.is_zero());
    }

    pub fn plus(mut self, other: &LinearAngle) -> Self {
        for &(c, a) in &other.terms {
            self.push(c, a);
        }
        self
    }

    pub fn minus(mut self, other: &LinearAngle) -> Self {
        for &(c, a) in &other.terms {
            self.push(-c, a);
        }
        self
    }

    pub fn plus_angle(mut self, c: Rational, angle: Angle) -> Self {
        self.push(c, angle);
        self
    }

    /// The single angle this combination equals term-for-term, if any.
    pub fn as_angle(&self) -> Option<Angle> {
        match self.terms.as_slice() {
            [] => Some(Angle::ZERO),
            [(c, a)] if c.is_one() => Some(*a),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(c, a)| ratio_f64(*c) * a.to_f64())
            .sum()
    }

    /// Value divided by π, when every term is a multiple of π/4.
    pub fn pi_multiple(&self) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (c, a) in &self.terms {
            acc += *c * Rational::new(a.eighth_turns()?, 4);
        }
        Some(acc)
    }

    fn error_bound(&self) -> f64 {
        let weight: f64 = self
            .terms
            .iter()
            .map(|(c, a)| ratio_f64(*c).abs() * (4.0 + a.to_f64().abs()))
            .sum();
        1e-13 * (1.0 + weight)
    }

    /// Exact sign of the value.
    ///
    /// # Panics
    /// When the common denominator of the coefficients is so large that the
    /// floating-point estimate cannot select the branch (far beyond anything
    /// produced from small rational breakpoints).
    pub fn signum(&self) -> Ordering {
        if let Some(r) = self.pi_multiple() {
            return r.cmp(&Rational::zero());
        }
        let approx = self.to_f64();
        let err = self.error_bound();
        if approx.abs() > err {
            return approx.partial_cmp(&0.0).unwrap();
        }
        let q = self
            .terms
            .iter()
            .fold(1i64, |acc, (c, _)| acc.lcm(c.denom()));
        assert!(
            (q as f64) * 2.0 * err < std::f64::consts::FRAC_PI_2,
            "coefficient denominator {q} too large for exact sign"
        );
        // |q·value| < π/2, so q·value equals Arg(P) with no whole-turn offset.
        let p = self.terms.iter().fold(gaussian_one(), |acc, (c, a)| {
            let n = (*c * Rational::from_integer(q)).to_integer();
            acc * gaussian_pow(a.dir(), n)
        });
        if p.im.is_zero() {
            debug_assert!(p.re.is_positive());
            Ordering::Equal
        } else if p.im.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn cmp_angle(&self, angle: Angle) -> Ordering {
        self.clone().minus(&LinearAngle::of(angle)).signum()
    }

    pub fn cmp_linear(&self, other: &LinearAngle) -> Ordering {
        self.clone().minus(other).signum()
    }

    /// `(floor(value/π), value ∈ πℤ)`, decided exactly.
    pub fn half_turn_floor(&self) -> (i64, bool) {
        let mut n = (self.to_f64() / std::f64::consts::PI).floor() as i64;
        while self.cmp_angle(Angle::half_turns(n)) == Ordering::Less {
            n -= 1;
        }
        while self.cmp_angle(Angle::half_turns(n + 1)) != Ordering::Less {
            n += 1;
        }
        (n, self.cmp_angle(Angle::half_turns(n)) == Ordering::Equal)
    }

    /// Ratio of two combinations when both are rational multiples of π.
    pub fn exact_ratio(&self, denom: &LinearAngle) -> Option<Rational> {
        let d = denom.pi_multiple()?;
        if d.is_zero() {
            return None;
        }
        Some(self.pi_multiple()? / d)
    }
}

impl From<Angle> for LinearAngle {
    fn from(a: Angle) -> Self {
        LinearAngle::of(a)
    }
}

impl fmt::Display for LinearAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "[{a}]")?;
            } else {
                write!(f, "{c}*[{a}]")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn gaussian_one() -> Complex<BigInt> {
    Complex::new(BigInt::one(), BigInt::zero())
}

fn gaussian_pow(d: Direction, n: i64) -> Complex<BigInt> {
    let base = if n < 0 { d.conj() } else { d };
    let base = Complex::new(BigInt::from(base.x()), BigInt::from(base.y()));
    num_traits::pow(base, n.unsigned_abs() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn ang(x: i64, y: i64, n: i64) -> Angle {
        Angle::new(Direction::new(x, y).unwrap(), n)
    }

    #[test]
    fn pi_rational_path() {
        let v = LinearAngle::interpolate(Angle::ZERO, ang(0, 1, 1), r(2, 5));
        assert_eq!(v.pi_multiple(), Some(r(1, 1)));
        assert_eq!(v.cmp_angle(Angle::half_turns(1)), Ordering::Equal);
    }

    #[test]
    fn gaussian_path_detects_exact_zero() {
        // Arg(3,4) + Arg(3,-4) = 0 exactly, with no π/4 shortcut.
        let v = LinearAngle::of(ang(3, 4, 0)).plus(&LinearAngle::of(ang(3, -4, 0)));
        assert!(v.pi_multiple().is_none());
        assert_eq!(v.signum(), Ordering::Equal);
        // ½·Arg(−7,24) = Arg(3,4): since (3+4i)² = −7+24i.
        let half = LinearAngle::scaled(r(1, 2), ang(-7, 24, 0));
        assert_eq!(half.cmp_angle(ang(3, 4, 0)), Ordering::Equal);
        // ...but ½·(Arg(−7,24) + 2π) = Arg(3,4) + π.
        let shifted = LinearAngle::scaled(r(1, 2), ang(-7, 24, 1));
        assert_eq!(shifted.cmp_angle(ang(-3, -4, 1)), Ordering::Equal);
    }

    #[test]
    fn gaussian_path_near_misses() {
        // Arg(1000,1) vs Arg(1001,1): differ by ~1e-6, sign must be right.
        let v = LinearAngle::of(ang(1000, 1, 0)).minus(&LinearAngle::of(ang(1001, 1, 0)));
        assert_eq!(v.signum(), Ordering::Greater);
        // 2·Arg(10^6, 1) − Arg(10^12 − 1, 2·10^6) is exactly zero.
        let w = LinearAngle::scaled(r(2, 1), ang(1_000_000, 1, 0))
            .minus(&LinearAngle::of(ang(999_999_999_999, 2_000_000, 0)));
        assert_eq!(w.signum(), Ordering::Equal);
        let w2 = LinearAngle::scaled(r(2, 1), ang(1_000_000, 1, 0))
            .minus(&LinearAngle::of(ang(1_000_000_000_000, 2_000_001, 0)));
        assert_eq!(w2.signum(), Ordering::Less);
    }

    #[test]
    fn half_turn_floor_examples() {
        assert_eq!(LinearAngle::of(Angle::half_turns(3)).half_turn_floor(), (3, true));
        assert_eq!(LinearAngle::of(ang(0, 1, 0)).half_turn_floor(), (0, false));
        assert_eq!(LinearAngle::of(ang(0, -1, 0)).half_turn_floor(), (-1, false));
        let v = LinearAngle::of(ang(3, 4, 0)).plus(&LinearAngle::of(ang(-3, 4, 0)));
        assert_eq!(v.half_turn_floor(), (1, true));
    }
}
