//! Named forms and cut data: the rotating family `α_k`, the lens family, and
//! the line form `cos t dθ₁ + sin t dθ₂`.

use num_traits::{One, Zero};

use crate::angle::{Angle, Direction};
use crate::cut::{CutError, CutSpec};
use crate::form::{AngleProfile, FormError, InvariantContactForm, RadialProfile};
use crate::Rational;

/// `α_k = cos((2k+½)πt) dθ₁ + sin((2k+½)πt) dθ₂` on `[0, 1]`.
pub fn alpha_k(k: u32) -> Result<InvariantContactForm, FormError> {
    let end = Angle::new(Direction::NORTH, i64::from(k));
    let phi = AngleProfile::affine(Rational::zero(), Angle::ZERO, Rational::one(), end)?;
    InvariantContactForm::new(phi, RadialProfile::one())
}

/// `α_k` with collapse `∂/∂θ₂` at `t = 0` and `∂/∂θ₁` at `t = 1`.
pub fn alpha_k_spec(k: u32) -> Result<CutSpec, CutError> {
    CutSpec::new(alpha_k(k)?, (0, 1), (1, 0))
}

/// `Arg(k, l)` as an exact angle with zero turns.
///
/// For `l > 0` this is the angle in `(0, π)` with `tan θ = l/k`; for `l = 0`
/// it is `π` when `k < 0` and `0` when `k > 0`.
pub fn theta_kl(k: i64, l: i64) -> Result<Angle, FormError> {
    Angle::from_vector(k, l).map_err(|_| FormError::ZeroVector)
}

/// `cos((θ_{k,l} + 2πj)t) dθ₁ + sin((θ_{k,l} + 2πj)t) dθ₂` on `[0, 1]`.
pub fn lens_form(k: i64, l: i64, j: u32) -> Result<InvariantContactForm, FormError> {
    let theta = theta_kl(k, l)?;
    let end = Angle::new(theta.dir(), i64::from(j));
    let phi = AngleProfile::affine(Rational::zero(), Angle::ZERO, Rational::one(), end)?;
    InvariantContactForm::new(phi, RadialProfile::one())
}

/// The lens family with collapse `∂/∂θ₂` at `t = 0` and `l∂/∂θ₁ − k∂/∂θ₂` at `t = 1`.
pub fn lens_spec(k: i64, l: i64, j: u32) -> Result<CutSpec, CutError> {
    CutSpec::new(lens_form(k, l, j)?, (0, 1), (l, -k))
}

/// `cos t dθ₁ + sin t dθ₂` on `t ∈ [−nπ, nπ]`, written in the parameter
/// `τ = t/π` so that breakpoints stay rational: `φ(τ) = πτ`, `τ ∈ [−n, n]`.
pub fn ex1_line(n: i64) -> Result<InvariantContactForm, FormError> {
    let phi = AngleProfile::affine(
        Rational::from_integer(-n),
        Angle::half_turns(-n),
        Rational::from_integer(n),
        Angle::half_turns(n),
    )?;
    InvariantContactForm::new(phi, RadialProfile::one())
}
