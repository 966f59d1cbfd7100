//! Moment data on the symplectization `(M × ℝ, d(eˢα))`.
//!
//! The lifted action has moment map `Ψ(m, s) = −eˢ·Φ(m)`, with `s` increasing
//! toward the convex end. Its sign is therefore the exact negation of the
//! contact moment sign, and its zero set is `Φ⁻¹(0) × ℝ`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::angle::Direction;
use crate::cut::{contact_reduce, CutSpec, End};
use crate::form::{FormError, InvariantContactForm, MomentValue, Sign};
use crate::Rational;

/// `(t, s) ↦ −eˢ·f_η(t)`.
#[derive(Debug, Clone, Copy)]
pub struct SymplectizedMoment<'a> {
    form: &'a InvariantContactForm,
    eta: Direction,
}

impl<'a> SymplectizedMoment<'a> {
    pub fn new(form: &'a InvariantContactForm, eta: Direction) -> Self {
        SymplectizedMoment { form, eta }
    }

    pub fn eta(&self) -> Direction {
        self.eta
    }

    pub fn eval(&self, t: Rational, s: f64) -> Result<MomentValue, FormError> {
        sympl_moment_eval(self.form, self.eta.into(), t, s)
    }

    pub fn eval_f64(&self, t: f64, s: f64) -> f64 {
        -s.exp() * self.form.moment_f64(self.eta.into(), t)
    }
}

pub fn sympl_moment_eval(
    form: &InvariantContactForm,
    eta: (i64, i64),
    t: Rational,
    s: f64,
) -> Result<MomentValue, FormError> {
    let m = form.moment_eval(eta, t)?;
    let value = match m.sign {
        Sign::Zero => 0.0,
        _ => -s.exp() * m.value,
    };
    Ok(MomentValue { value, sign: m.sign.negate() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckKind {
    /// `Ψ_v` vanishes along the collapsed boundary for every `s` and is
    /// negative just inside it.
    ZeroLocus,
    /// Every reduced circle of `f_v` is a zero of `Ψ_v` for every `s`.
    ReducedLoci,
    /// The reduced coefficient of `eˢα` equals `eˢ` times the contact one.
    ReducedCoefficient,
    /// `|Ψ + eˢΦ| < 1e−12` and `sign Ψ = −sign Φ` at sampled points.
    Pointwise,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::ZeroLocus => "zero-locus",
            CheckKind::ReducedLoci => "reduced-loci",
            CheckKind::ReducedCoefficient => "reduced-coefficient",
            CheckKind::Pointwise => "pointwise",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommuteCheck {
    pub side: u8,
    pub collapse: Direction,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommuteReport {
    pub checks: Vec<CommuteCheck>,
    /// Number of reduced circles of `f_v` per side.
    pub reduced_loci: [usize; 2],
}

impl CommuteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CommuteCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

const S_PROBES: [f64; 5] = [-3.0, -0.5, 0.0, std::f64::consts::LN_2, 4.0];
const SAMPLES_PER_SIDE: usize = 200;
const TOLERANCE: f64 = 1e-12;

fn boundary(spec: &CutSpec, side: End) -> Rational {
    let (t0, t1) = spec.form().domain();
    match side {
        End::Start => t0,
        End::Finish => t1,
    }
}

fn zero_locus_check(spec: &CutSpec, side: End, psi: &SymplectizedMoment) -> (bool, String) {
    let form = spec.form();
    let tb = boundary(spec, side);
    for s in S_PROBES {
        match psi.eval(tb, s) {
            Ok(v) if v.sign == Sign::Zero => {}
            Ok(v) => return (false, format!("Psi(t={tb}, s={s}) has sign {} at the collapsed boundary", v.sign)),
            Err(e) => return (false, e.to_string()),
        }
    }
    let (t0, t1) = form.domain();
    let others: Vec<Rational> = contact_reduce(form, psi.eta())
        .iter()
        .filter_map(|c| c.crossing.t_exact.or_else(|| Rational::approximate_float(c.crossing.t_approx)))
        .filter(|t| *t != tb)
        .collect();
    let nearest = match side {
        End::Start => others.iter().copied().filter(|t| *t > tb).min().unwrap_or(t1),
        End::Finish => others.iter().copied().filter(|t| *t < tb).max().unwrap_or(t0),
    };
    let inside = (tb + nearest) / Rational::from_integer(2);
    for s in S_PROBES {
        match psi.eval(inside, s) {
            Ok(v) if v.sign == Sign::Negative => {}
            Ok(v) => return (false, format!("Psi(t={inside}, s={s}) has sign {} inside the cut", v.sign)),
            Err(e) => return (false, e.to_string()),
        }
    }
    (true, format!("Psi vanishes at t={tb} for all probed s and is negative at t={inside}"))
}

fn reduced_checks(spec: &CutSpec, psi: &SymplectizedMoment) -> (usize, (bool, String), (bool, String)) {
    let form = spec.form();
    let circles = contact_reduce(form, psi.eta());
    let mut loci_ok = true;
    let mut coefficient_ok = true;
    let mut worst = 0.0f64;
    for c in &circles {
        let (t_f, zero) = match c.crossing.t_exact {
            Some(t) => (
                crate::combination::ratio_f64(t),
                S_PROBES.iter().all(|&s| psi.eval(t, s).is_ok_and(|v| v.sign == Sign::Zero)),
            ),
            None => (
                c.crossing.t_approx,
                S_PROBES.iter().all(|&s| psi.eval_f64(c.crossing.t_approx, s).abs() < 1e-9 * s.exp()),
            ),
        };
        loci_ok &= zero;
        // eˢα(ζ) at the locus, evaluated from the form directly.
        let direct = form.moment_f64(c.complement.into(), t_f);
        for s in S_PROBES {
            let lifted = s.exp() * direct;
            let reduced = s.exp() * c.coefficient;
            let err = (lifted - reduced).abs() / s.exp();
            worst = worst.max(err);
            coefficient_ok &= err < 1e-9;
        }
    }
    (
        circles.len(),
        (loci_ok, format!("{} reduced circles, all zeros of Psi", circles.len())),
        (coefficient_ok, format!("max |e^s alpha(zeta) - e^s c| / e^s = {worst:.3e}")),
    )
}

fn pointwise_check(spec: &CutSpec, side: End, psi: &SymplectizedMoment, rng: &mut ChaCha8Rng) -> (bool, String) {
    let form = spec.form();
    let (t0, t1) = form.domain();
    let mut ts: Vec<Rational> = vec![t0, t1];
    ts.extend(contact_reduce(form, psi.eta()).iter().filter_map(|c| c.crossing.t_exact));
    while ts.len() < SAMPLES_PER_SIDE {
        let k = rng.gen_range(0..=10_000i64);
        ts.push(t0 + (t1 - t0) * Rational::new(k, 10_000));
    }
    let mut worst = 0.0f64;
    for t in ts {
        let s: f64 = rng.gen_range(-5.0..5.0);
        let phi = match form.moment_eval(psi.eta().into(), t) {
            Ok(v) => v,
            Err(e) => return (false, e.to_string()),
        };
        let lifted = psi.eval(t, s).expect("t is in the domain");
        let err = (lifted.value + s.exp() * phi.value).abs();
        worst = worst.max(err);
        if err >= TOLERANCE || lifted.sign != phi.sign.negate() {
            return (false, format!("side {}: identity fails at t={t}, s={s}", side.index()));
        }
    }
    (true, format!("{SAMPLES_PER_SIDE} samples, max |Psi + e^s Phi| = {worst:.3e}"))
}

/// Checks, for each collapsed boundary, that cutting and symplectizing
/// commute at the level of moment data.
///
/// The spec is not re-validated: a corrupted collapse vector shows up as a
/// failed zero-locus row.
pub fn check_cut_symplectization_commute(spec: &CutSpec) -> CommuteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checks = Vec::new();
    let mut reduced_loci = [0usize; 2];
    for side in [End::Start, End::Finish] {
        let collapse = spec.collapse(side);
        let psi = SymplectizedMoment::new(spec.form(), collapse);
        let mut push = |kind, (passed, detail): (bool, String)| {
            checks.push(CommuteCheck { side: side.index(), collapse, kind, passed, detail });
        };
        push(CheckKind::ZeroLocus, zero_locus_check(spec, side, &psi));
        let (n, loci, coefficient) = reduced_checks(spec, &psi);
        reduced_loci[side.index() as usize] = n;
        push(CheckKind::ReducedLoci, loci);
        push(CheckKind::ReducedCoefficient, coefficient);
        push(CheckKind::Pointwise, pointwise_check(spec, side, &psi, &mut rng));
    }
    CommuteReport { checks, reduced_loci }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use crate::standard::{alpha_k, alpha_k_spec, ex1_line};

    #[test]
    fn eval_examples() {
        let form = ex1_line(1).unwrap();
        let half = Rational::new(1, 2);
        let v = sympl_moment_eval(&form, (0, 1), half, 0.0).unwrap();
        assert_eq!(v.value, -1.0);
        assert_eq!(v.sign, Sign::Negative);
        let v = sympl_moment_eval(&form, (0, 1), half, std::f64::consts::LN_2).unwrap();
        assert!((v.value + 2.0).abs() < 1e-15);
        let z = sympl_moment_eval(&form, (0, 1), Rational::one(), 7.5).unwrap();
        assert_eq!(z.value, 0.0);
        assert_eq!(z.sign, Sign::Zero);
        assert!(sympl_moment_eval(&form, (0, 1), Rational::from_integer(2), 0.0).is_err());
        assert_eq!(sympl_moment_eval(&form, (0, 0), Rational::zero(), 1.0).unwrap().sign, Sign::Zero);
    }

    #[test]
    fn commute_examples() {
        let r0 = check_cut_symplectization_commute(&alpha_k_spec(0).unwrap());
        assert!(r0.all_passed(), "{:?}", r0.failures().collect::<Vec<_>>());
        assert_eq!(r0.checks.len(), 8);

        let r2 = check_cut_symplectization_commute(&alpha_k_spec(2).unwrap());
        assert!(r2.all_passed(), "{:?}", r2.failures().collect::<Vec<_>>());
        // φ sweeps [0, 9π/2]: five zeros of sin φ and five of cos φ.
        assert_eq!(r2.reduced_loci, [5, 5]);
    }

    #[test]
    fn corrupted_collapse_vector_is_flagged() {
        let spec = CutSpec::new_unchecked(alpha_k(1).unwrap(), Direction::new(1, 1).unwrap(), Direction::EAST);
        let report = check_cut_symplectization_commute(&spec);
        assert!(!report.all_passed());
        let failed: Vec<_> = report.failures().map(|c| (c.side, c.kind)).collect();
        assert!(failed.contains(&(0, CheckKind::ZeroLocus)));
        assert!(!failed.iter().any(|(side, _)| *side == 1));
    }
}
