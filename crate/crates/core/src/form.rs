//! T²-invariant contact forms `α = r(t)·(cos φ(t) dθ₁ + sin φ(t) dθ₂)`.
//!
//! The angle profile `φ` is piecewise affine in value between exact angles at
//! rational breakpoints; the radial profile `r` is a product of positive
//! piecewise-affine rational factors. With this representation the contact
//! condition `α∧dα = r²φ′ dθ₁∧dθ₂∧dt ≠ 0` is strict monotonicity of `φ`, and
//! every zero of a moment map sits where `φ` crosses a lattice angle.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::angle::{Angle, Direction};
use crate::combination::{ratio_f64, LinearAngle};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("a profile needs at least two breakpoints")]
    TooFewBreakpoints,
    #[error("breakpoints must be strictly ascending (at index {0})")]
    UnorderedBreakpoints(usize),
    #[error("angle profile is constant on segment {segment} ([{t0}, {t1}]): dα vanishes there")]
    ZeroSlopeSegment { segment: usize, t0: Rational, t1: Rational },
    #[error("angle profile is not monotone: slope changes sign on segment {segment} ([{t0}, {t1}])")]
    NonMonotone { segment: usize, t0: Rational, t1: Rational },
    #[error("radial profile must be positive, got {0} at a breakpoint")]
    NonPositiveRadial(Rational),
    #[error("radial profile on [{r0}, {r1}] does not cover the form domain [{t0}, {t1}]")]
    DomainMismatch { t0: Rational, t1: Rational, r0: Rational, r1: Rational },
    #[error("(0, 0) has no direction")]
    ZeroVector,
    #[error("t = {t} lies outside the domain [{t0}, {t1}]")]
    OutsideDomain { t: Rational, t0: Rational, t1: Rational },
}

/// Contact orientation relative to `dθ₁∧dθ₂∧dt`: the sign of `φ′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn signum(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Positive => "+1",
            Orientation::Negative => "-1",
        })
    }
}

/// Exact sign of a real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn of_f64(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

/// A moment-map value: float estimate plus exactly decided sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentValue {
    pub value: f64,
    pub sign: Sign,
}

/// Where a monotone profile attains a given angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    /// Index of the segment `[tᵢ, tᵢ₊₁]` containing the solution.
    pub segment: usize,
    /// The solution as a rational, when it is one provably.
    pub t_exact: Option<Rational>,
    pub t_approx: f64,
}

fn check_ascending(breaks: &[Rational]) -> Result<(), FormError> {
    if breaks.len() < 2 {
        return Err(FormError::TooFewBreakpoints);
    }
    for (i, w) in breaks.windows(2).enumerate() {
        if w[1] <= w[0] {
            return Err(FormError::UnorderedBreakpoints(i + 1));
        }
    }
    Ok(())
}

fn segment_index(breaks: &[Rational], t: Rational) -> Option<usize> {
    let n = breaks.len();
    if t < breaks[0] || t > breaks[n - 1] {
        return None;
    }
    let i = breaks.partition_point(|b| *b <= t);
    Some(i.saturating_sub(1).min(n - 2))
}

/// Positive piecewise-affine rational function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadialFactor {
    Constant(Rational),
    Piecewise { breaks: Vec<Rational>, values: Vec<Rational> },
}

impl RadialFactor {
    fn eval(&self, t: Rational) -> Rational {
        match self {
            RadialFactor::Constant(c) => *c,
            RadialFactor::Piecewise { breaks, values } => {
                let t = t.clamp(breaks[0], *breaks.last().unwrap());
                let i = segment_index(breaks, t).unwrap();
                let lambda = (t - breaks[i]) / (breaks[i + 1] - breaks[i]);
                values[i] + lambda * (values[i + 1] - values[i])
            }
        }
    }

    fn eval_f64(&self, t: f64) -> f64 {
        match self {
            RadialFactor::Constant(c) => ratio_f64(*c),
            RadialFactor::Piecewise { breaks, values } => {
                let b: Vec<f64> = breaks.iter().map(|r| ratio_f64(*r)).collect();
                let t = t.clamp(b[0], *b.last().unwrap());
                let i = b.partition_point(|x| *x <= t).saturating_sub(1).min(b.len() - 2);
                let lambda = (t - b[i]) / (b[i + 1] - b[i]);
                let (v0, v1) = (ratio_f64(values[i]), ratio_f64(values[i + 1]));
                v0 + lambda * (v1 - v0)
            }
        }
    }

    fn covers(&self, t0: Rational, t1: Rational) -> Result<(), FormError> {
        match self {
            RadialFactor::Constant(_) => Ok(()),
            RadialFactor::Piecewise { breaks, .. } => {
                let (r0, r1) = (breaks[0], *breaks.last().unwrap());
                if r0 <= t0 && t1 <= r1 {
                    Ok(())
                } else {
                    Err(FormError::DomainMismatch { t0, t1, r0, r1 })
                }
            }
        }
    }

    fn map_domain(&self, f: impl Fn(Rational) -> Rational, reverse: bool) -> RadialFactor {
        match self {
            RadialFactor::Constant(c) => RadialFactor::Constant(*c),
            RadialFactor::Piecewise { breaks, values } => {
                let mut pts: Vec<(Rational, Rational)> =
                    breaks.iter().map(|b| f(*b)).zip(values.iter().copied()).collect();
                if reverse {
                    pts.reverse();
                }
                let (breaks, values) = pts.into_iter().unzip();
                RadialFactor::Piecewise { breaks, values }
            }
        }
    }

    fn restrict(&self, ta: Rational, tb: Rational) -> RadialFactor {
        match self {
            RadialFactor::Constant(c) => RadialFactor::Constant(*c),
            RadialFactor::Piecewise { breaks, .. } => {
                let mut b = vec![ta];
                b.extend(breaks.iter().copied().filter(|x| *x > ta && *x < tb));
                b.push(tb);
                let values = b.iter().map(|x| self.eval(*x)).collect();
                RadialFactor::Piecewise { breaks: b, values }
            }
        }
    }
}

/// Positive radial profile `r(t)`, stored as a product of factors so that
/// rescaling stays exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialProfile {
    factors: Vec<RadialFactor>,
}

impl RadialProfile {
    pub fn one() -> Self {
        RadialProfile { factors: Vec::new() }
    }

    pub fn constant(c: Rational) -> Result<Self, FormError> {
        if !c.is_positive() {
            return Err(FormError::NonPositiveRadial(c));
        }
        if c.is_one() {
            return Ok(RadialProfile::one());
        }
        Ok(RadialProfile { factors: vec![RadialFactor::Constant(c)] })
    }

    /// Affine interpolation through `(t, r)` points, all `r > 0`.
    pub fn piecewise(points: Vec<(Rational, Rational)>) -> Result<Self, FormError> {
        let (breaks, values): (Vec<_>, Vec<_>) = points.into_iter().unzip();
        check_ascending(&breaks)?;
        if let Some(v) = values.iter().find(|v| !v.is_positive()) {
            return Err(FormError::NonPositiveRadial(*v));
        }
        Ok(RadialProfile { factors: vec![RadialFactor::Piecewise { breaks, values }] })
    }

    pub fn factors(&self) -> &[RadialFactor] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors
            .iter()
            .all(|f| matches!(f, RadialFactor::Constant(c) if c.is_one()))
    }

    /// Pointwise product.
    pub fn times(&self, other: &RadialProfile) -> RadialProfile {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        RadialProfile { factors }
    }

    pub fn eval(&self, t: Rational) -> Rational {
        self.factors.iter().fold(Rational::one(), |acc, f| acc * f.eval(t))
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.factors.iter().map(|f| f.eval_f64(t)).product()
    }

    fn covers(&self, t0: Rational, t1: Rational) -> Result<(), FormError> {
        self.factors.iter().try_for_each(|f| f.covers(t0, t1))
    }

    fn map_domain(&self, f: impl Fn(Rational) -> Rational + Copy, reverse: bool) -> Self {
        RadialProfile {
            factors: self.factors.iter().map(|x| x.map_domain(f, reverse)).collect(),
        }
    }

    fn restrict(&self, ta: Rational, tb: Rational) -> Self {
        RadialProfile {
            factors: self.factors.iter().map(|x| x.restrict(ta, tb)).collect(),
        }
    }
}

/// Piecewise-affine angle profile `φ(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleProfile {
    breaks: Vec<Rational>,
    values: Vec<Angle>,
}

impl AngleProfile {
    /// Structural validation only; monotonicity is the contact check's job.
    pub fn new(points: Vec<(Rational, Angle)>) -> Result<Self, FormError> {
        let (breaks, values): (Vec<_>, Vec<_>) = points.into_iter().unzip();
        check_ascending(&breaks)?;
        Ok(AngleProfile { breaks, values })
    }

    /// `φ(t) = start + (end − start)·(t − t0)/(t1 − t0)`.
    pub fn affine(t0: Rational, start: Angle, t1: Rational, end: Angle) -> Result<Self, FormError> {
        AngleProfile::new(vec![(t0, start), (t1, end)])
    }

    /// The profile on the single point `[t0, t0]`.
    pub fn degenerate(t0: Rational, value: Angle) -> Self {
        AngleProfile { breaks: vec![t0, t0], values: vec![value, value] }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn values(&self) -> &[Angle] {
        &self.values
    }

    pub fn domain(&self) -> (Rational, Rational) {
        (self.breaks[0], *self.breaks.last().unwrap())
    }

    pub fn start(&self) -> Angle {
        self.values[0]
    }

    pub fn end(&self) -> Angle {
        *self.values.last().unwrap()
    }

    pub fn is_degenerate(&self) -> bool {
        self.breaks[0] == self.breaks[1]
    }

    /// Exact value at a rational `t` in the domain.
    pub fn value_at(&self, t: Rational) -> Option<LinearAngle> {
        if self.is_degenerate() {
            return (t == self.breaks[0]).then(|| LinearAngle::of(self.values[0]));
        }
        let i = segment_index(&self.breaks, t)?;
        let (t0, t1) = (self.breaks[i], self.breaks[i + 1]);
        if t == t0 {
            return Some(LinearAngle::of(self.values[i]));
        }
        if t == t1 {
            return Some(LinearAngle::of(self.values[i + 1]));
        }
        let lambda = (t - t0) / (t1 - t0);
        Some(LinearAngle::interpolate(self.values[i], self.values[i + 1], lambda))
    }

    pub fn value_f64(&self, t: f64) -> f64 {
        let b: Vec<f64> = self.breaks.iter().map(|r| ratio_f64(*r)).collect();
        if self.is_degenerate() {
            return self.values[0].to_f64();
        }
        let t = t.clamp(b[0], *b.last().unwrap());
        let i = b.partition_point(|x| *x <= t).saturating_sub(1).min(b.len() - 2);
        let lambda = (t - b[i]) / (b[i + 1] - b[i]);
        let span = (self.values[i + 1] - self.values[i]).to_f64();
        self.values[i].to_f64() + lambda * span
    }

    /// `(min, max)` of the attained values (valid for monotone profiles).
    pub fn range(&self) -> (Angle, Angle) {
        let (a, b) = (self.start(), self.end());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Solves `φ(t) = target` on a monotone profile.
    pub fn locate(&self, target: Angle) -> Option<Crossing> {
        let (lo, hi) = self.range();
        if target < lo || target > hi {
            return None;
        }
        let increasing = self.start() <= self.end();
        for i in 0..self.breaks.len() - 1 {
            let (a, b) = (self.values[i], self.values[i + 1]);
            let inside = if increasing {
                a <= target && target <= b
            } else {
                b <= target && target <= a
            };
            if !inside {
                continue;
            }
            let (t0, t1) = (self.breaks[i], self.breaks[i + 1]);
            if target == a {
                return Some(Crossing { segment: i, t_exact: Some(t0), t_approx: ratio_f64(t0) });
            }
            if target == b {
                return Some(Crossing { segment: i, t_exact: Some(t1), t_approx: ratio_f64(t1) });
            }
            let num = target - a;
            let den = b - a;
            let lambda_exact = LinearAngle::of(num).exact_ratio(&LinearAngle::of(den));
            let lambda = num.to_f64() / den.to_f64();
            let (f0, f1) = (ratio_f64(t0), ratio_f64(t1));
            let t_exact = lambda_exact.map(|l| t0 + l * (t1 - t0));
            let t_approx = t_exact.map(ratio_f64).unwrap_or(f0 + lambda * (f1 - f0));
            return Some(Crossing { segment: i, t_exact, t_approx });
        }
        None
    }

    fn map_domain(&self, f: impl Fn(Rational) -> Rational, reverse: bool) -> Self {
        let mut pts: Vec<(Rational, Angle)> = self
            .breaks
            .iter()
            .map(|b| f(*b))
            .zip(self.values.iter().copied())
            .collect();
        if reverse {
            pts.reverse();
        }
        let (breaks, values) = pts.into_iter().unzip();
        AngleProfile { breaks, values }
    }
}

/// Exact contact check on a profile: strict monotonicity of `φ`.
pub fn contact_check(phi: &AngleProfile) -> Result<Orientation, FormError> {
    let mut orientation = None;
    for i in 0..phi.values.len() - 1 {
        let (t0, t1) = (phi.breaks[i], phi.breaks[i + 1]);
        let o = match phi.values[i + 1].cmp(&phi.values[i]) {
            Ordering::Equal => return Err(FormError::ZeroSlopeSegment { segment: i, t0, t1 }),
            Ordering::Greater => Orientation::Positive,
            Ordering::Less => Orientation::Negative,
        };
        match orientation {
            None => orientation = Some(o),
            Some(prev) if prev != o => {
                return Err(FormError::NonMonotone { segment: i, t0, t1 });
            }
            _ => {}
        }
    }
    Ok(orientation.expect("profiles have at least one segment"))
}

/// A T²-invariant contact form on `T² × [t0, t1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantContactForm {
    phi: AngleProfile,
    radial: RadialProfile,
    orientation: Orientation,
}

impl InvariantContactForm {
    pub fn new(phi: AngleProfile, radial: RadialProfile) -> Result<Self, FormError> {
        let orientation = contact_check(&phi)?;
        let (t0, t1) = phi.domain();
        radial.covers(t0, t1)?;
        Ok(InvariantContactForm { phi, radial, orientation })
    }

    pub fn phi(&self) -> &AngleProfile {
        &self.phi
    }

    pub fn radial(&self) -> &RadialProfile {
        &self.radial
    }

    pub fn domain(&self) -> (Rational, Rational) {
        self.phi.domain()
    }

    /// The verdict of the contact check (always passing for a constructed form).
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn contact_check(&self) -> Result<Orientation, FormError> {
        contact_check(&self.phi)
    }

    fn check_domain(&self, t: Rational) -> Result<(), FormError> {
        let (t0, t1) = self.domain();
        if t < t0 || t > t1 {
            Err(FormError::OutsideDomain { t, t0, t1 })
        } else {
            Ok(())
        }
    }

    /// `f_(m,n)(t) = r(t)·(m cos φ(t) + n sin φ(t))` with exact sign.
    pub fn moment_eval(&self, eta: (i64, i64), t: Rational) -> Result<MomentValue, FormError> {
        self.check_domain(t)?;
        let Ok(dir) = Direction::new(eta.0, eta.1) else {
            return Ok(MomentValue { value: 0.0, sign: Sign::Zero });
        };
        let phi = self.phi.value_at(t).expect("t checked against domain");
        let sign = moment_sign(dir, &phi);
        let value = match sign {
            Sign::Zero => 0.0,
            _ => {
                let p = phi.to_f64();
                ratio_f64(self.radial.eval(t)) * (eta.0 as f64 * p.cos() + eta.1 as f64 * p.sin())
            }
        };
        Ok(MomentValue { value, sign })
    }

    /// Float-only moment evaluation, for dense sampling.
    pub fn moment_f64(&self, eta: (i64, i64), t: f64) -> f64 {
        let p = self.phi.value_f64(t);
        self.radial.eval_f64(t) * (eta.0 as f64 * p.cos() + eta.1 as f64 * p.sin())
    }

    /// Multiplies the radial profile pointwise by `radial2`.
    pub fn rescale(&self, radial2: &RadialProfile) -> Result<Self, FormError> {
        let (t0, t1) = self.domain();
        radial2.covers(t0, t1)?;
        Ok(InvariantContactForm {
            phi: self.phi.clone(),
            radial: self.radial.times(radial2),
            orientation: self.orientation,
        })
    }

    /// `φ(t1) − φ(t0)`.
    pub fn sweep(&self) -> Angle {
        sweep_profile(&self.phi)
    }

    /// Affine reparameterization of the domain onto `[0, 1]`.
    pub fn to_unit_interval(&self) -> Self {
        let (t0, t1) = self.domain();
        if (t0, t1) == (Rational::zero(), Rational::one()) {
            return self.clone();
        }
        let len = t1 - t0;
        let f = move |t: Rational| (t - t0) / len;
        InvariantContactForm {
            phi: self.phi.map_domain(f, false),
            radial: self.radial.map_domain(f, false),
            orientation: self.orientation,
        }
    }

    /// The same form read backwards in `t`.
    pub fn reversed(&self) -> Self {
        let (t0, t1) = self.domain();
        let f = move |t: Rational| t0 + t1 - t;
        InvariantContactForm {
            phi: self.phi.map_domain(f, true),
            radial: self.radial.map_domain(f, true),
            orientation: self.orientation.flip(),
        }
    }

    /// Restriction to `[ta, tb]` with known exact endpoint angles.
    pub(crate) fn restrict(&self, ta: Rational, start: Angle, tb: Rational, end: Angle) -> Self {
        let mut pts = vec![(ta, start)];
        pts.extend(
            self.phi
                .breaks
                .iter()
                .zip(&self.phi.values)
                .filter(|(t, _)| **t > ta && **t < tb)
                .map(|(t, a)| (*t, *a)),
        );
        pts.push((tb, end));
        let (breaks, values) = pts.into_iter().unzip();
        InvariantContactForm {
            phi: AngleProfile { breaks, values },
            radial: self.radial.restrict(ta, tb),
            orientation: self.orientation,
        }
    }
}

/// `φ(t1) − φ(t0)` of a bare profile (zero for a degenerate one).
pub fn sweep_profile(phi: &AngleProfile) -> Angle {
    phi.end() - phi.start()
}

/// Exact sign of `η·(cos φ, sin φ)`.
pub(crate) fn moment_sign(eta: Direction, phi: &LinearAngle) -> Sign {
    if let Some(a) = phi.as_angle() {
        return Sign::from(eta.dot(a.dir()).cmp(&0));
    }
    // η·u(φ) > 0 iff φ − Arg(η) + π/2 ∈ (0, π) mod 2π.
    let w = phi.clone().minus(&LinearAngle::of(Angle::new(eta.rot_cw(), 0)));
    let (n, on_lattice) = w.half_turn_floor();
    if on_lattice {
        Sign::Zero
    } else if n.rem_euclid(2) == 0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}
