//! Equivariant invariants of cut spaces.
//!
//! The torus moment map of a cut is `f(t) = r(t)·(cos φ(t), sin φ(t))`, so the
//! preimage of the open ray through `ξ` is the set of `t` where `φ(t)` hits
//! `Arg(ξ)` mod 2π. Because `φ` is strictly monotone each hit is a transverse
//! crossing, and each contributes exactly one connected component: a torus in
//! the interior, a circle at a collapsed boundary.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::angle::{count_lattice, Angle, Direction};
use crate::combination::{ratio_f64, LinearAngle};
use crate::cut::{complement, CutSpec, End};
use crate::form::{Crossing, InvariantContactForm};
use crate::Rational;

/// `π₀` of the preimage of the ray `{e^s ξ}` in the cut space.
pub fn cc_count(spec: &CutSpec, xi: Direction) -> u64 {
    let (lo, hi) = spec.form().phi().range();
    count_lattice(xi, lo, hi)
}

/// One arc of directions on which the component count is constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileArc {
    pub start: Direction,
    /// Counter-clockwise extent, in `(0, 2π]`.
    pub length: Angle,
    /// Whether both endpoints belong to the arc.
    pub closed: bool,
    pub count: u64,
}

/// The step function `ξ ↦ cc_count(ξ)` over ray directions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcProfile {
    pub arcs: Vec<ProfileArc>,
    /// Isolated directions whose count exceeds that of the surrounding arc
    /// (present only when the sweep is a whole number of turns).
    pub points: Vec<(Direction, u64)>,
    pub min_count: u64,
    pub max_count: u64,
}

impl CcProfile {
    /// Profile of a monotone angle range `[lo, hi]`.
    pub fn from_range(lo: Angle, hi: Angle) -> Self {
        let (n, rem) = (hi - lo).div_full_turns();
        let n = n as u64;
        if rem.is_zero() {
            CcProfile {
                arcs: vec![ProfileArc {
                    start: lo.dir(),
                    length: Angle::half_turns(2),
                    closed: false,
                    count: n,
                }],
                points: vec![(lo.dir(), n + 1)],
                min_count: n,
                max_count: n + 1,
            }
        } else {
            CcProfile {
                arcs: vec![
                    ProfileArc { start: lo.dir(), length: rem, closed: true, count: n + 1 },
                    ProfileArc {
                        start: hi.dir(),
                        length: Angle::half_turns(2) - rem,
                        closed: false,
                        count: n,
                    },
                ],
                points: Vec::new(),
                min_count: n,
                max_count: n + 1,
            }
        }
    }

    /// Count at a direction, read off the profile.
    pub fn count_at(&self, xi: Direction) -> u64 {
        if let Some((_, c)) = self.points.iter().find(|(d, _)| *d == xi) {
            return *c;
        }
        for arc in &self.arcs {
            let offset = Angle::new(xi, 0) - Angle::new(arc.start, 0);
            let offset = if offset < Angle::ZERO { offset + Angle::half_turns(2) } else { offset };
            let inside = if arc.closed {
                offset <= arc.length
            } else {
                offset > Angle::ZERO && offset < arc.length
                    || (offset.is_zero() && arc.length == Angle::half_turns(2))
            };
            if inside {
                return arc.count;
            }
        }
        unreachable!("arcs cover the circle")
    }

    /// `Σ length × count`, exact.
    pub fn integral(&self) -> Angle {
        self.arcs
            .iter()
            .fold(Angle::ZERO, |acc, a| acc + a.length.mul_int(a.count as i64))
    }
}

pub fn cc_profile(spec: &CutSpec) -> CcProfile {
    let (lo, hi) = spec.form().phi().range();
    CcProfile::from_range(lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum DistinguishMode {
    /// Compare with the torus action held fixed.
    #[default]
    FixedAction,
    /// Allow relabeling the torus by `GL(2,ℤ)`.
    ModuloGl2z,
}

impl fmt::Display for DistinguishMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistinguishMode::FixedAction => "fixed-action",
            DistinguishMode::ModuloGl2z => "modulo-GL2Z",
        })
    }
}

/// Evidence that no torus-equivariant contactomorphism relates two cuts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistinguishWitness {
    /// An equivariant contactomorphism pulls one form back to `h` times the
    /// other with `h` of constant sign. `xi_plus` rules out `h > 0` and
    /// `xi_minus` rules out `h < 0`.
    FixedAction {
        xi_plus: Direction,
        counts_plus: (u64, u64),
        xi_minus: Direction,
        counts_minus: (u64, u64),
    },
    /// `(min, max)` of the profiles differ; both are invariant under any
    /// linear relabeling of the torus.
    ModuloGl2z { summary_a: (u64, u64), summary_b: (u64, u64) },
}

impl DistinguishWitness {
    /// Recomputes the witnessed counts from scratch.
    pub fn verify(&self, a: &CutSpec, b: &CutSpec) -> bool {
        match *self {
            DistinguishWitness::FixedAction { xi_plus, counts_plus, xi_minus, counts_minus } => {
                let plus = (cc_count(a, xi_plus), cc_count(b, xi_plus));
                let minus = (cc_count(a, xi_minus), cc_count(b, -xi_minus));
                plus == counts_plus && minus == counts_minus && plus.0 != plus.1 && minus.0 != minus.1
            }
            DistinguishWitness::ModuloGl2z { summary_a, summary_b } => {
                let (pa, pb) = (cc_profile(a), cc_profile(b));
                summary_a == (pa.min_count, pa.max_count)
                    && summary_b == (pb.min_count, pb.max_count)
                    && summary_a != summary_b
            }
        }
    }

    pub fn mode(&self) -> DistinguishMode {
        match self {
            DistinguishWitness::FixedAction { .. } => DistinguishMode::FixedAction,
            DistinguishWitness::ModuloGl2z { .. } => DistinguishMode::ModuloGl2z,
        }
    }
}

const PROBES: [(i64, i64); 2] = [(-1, 1), (1, -1)];

/// Directions covering every constancy class of `ξ ↦ (CC_a(ξ), CC_b(±ξ))`:
/// the critical directions of both profiles and their negatives, plus one
/// direction strictly inside each gap between consecutive ones.
fn candidate_directions(a: &CutSpec, b: &CutSpec) -> Vec<Direction> {
    let mut critical: Vec<Direction> = [a, b]
        .iter()
        .flat_map(|s| [s.form().phi().start().dir(), s.form().phi().end().dir()])
        .flat_map(|d| [d, -d])
        .collect();
    critical.sort_by(|x, y| x.arg_cmp(*y));
    critical.dedup();
    let mids: Vec<Direction> = critical
        .iter()
        .zip(critical.iter().cycle().skip(1))
        .map(|(u, v)| u.strictly_between(*v))
        .collect();
    PROBES
        .iter()
        .map(|&(x, y)| Direction::new(x, y).unwrap())
        .chain(critical)
        .chain(mids)
        .collect()
}

/// Searches for a witness that `a` and `b` are not equivariantly
/// contactomorphic. `None` means indistinguishable by this invariant.
pub fn distinguish(a: &CutSpec, b: &CutSpec, mode: DistinguishMode) -> Option<DistinguishWitness> {
    match mode {
        DistinguishMode::FixedAction => {
            let candidates = candidate_directions(a, b);
            let xi_plus = candidates.iter().copied().find(|&x| cc_count(a, x) != cc_count(b, x))?;
            let xi_minus = candidates.iter().copied().find(|&x| cc_count(a, x) != cc_count(b, -x))?;
            Some(DistinguishWitness::FixedAction {
                xi_plus,
                counts_plus: (cc_count(a, xi_plus), cc_count(b, xi_plus)),
                xi_minus,
                counts_minus: (cc_count(a, xi_minus), cc_count(b, -xi_minus)),
            })
        }
        DistinguishMode::ModuloGl2z => {
            let (pa, pb) = (cc_profile(a), cc_profile(b));
            let summary_a = (pa.min_count, pa.max_count);
            let summary_b = (pb.min_count, pb.max_count);
            (summary_a != summary_b).then_some(DistinguishWitness::ModuloGl2z { summary_a, summary_b })
        }
    }
}

/// A disk `{ζ-coordinate = c, t between the boundary and t*}` capping the
/// collapsed circle at one end, whose boundary orbit at `t*` is Legendrian.
#[derive(Debug, Clone, PartialEq)]
pub struct OvertwistedCertificate {
    pub side: End,
    /// `|φ(t*) − φ(boundary)| = j·π`.
    pub j: u64,
    pub boundary_angle: Angle,
    pub target_angle: Angle,
    pub crossing: Crossing,
    /// The collapsing direction at `side`; the disk boundary is its orbit.
    pub collapse: Direction,
    /// Coordinate held fixed on the disk.
    pub fixed_coordinate: Direction,
    pub c: f64,
}

impl OvertwistedCertificate {
    /// `t*` as an exact ratio of angle differences: `(target − φ(0)) / sweep`
    /// on single-segment profiles.
    pub fn t_ratio(&self, form: &InvariantContactForm) -> (Angle, Angle) {
        (self.target_angle - form.phi().start(), form.sweep())
    }

    /// Re-checks the defining equation and interiority through exact angles.
    pub fn verify(&self, spec: &CutSpec) -> bool {
        let phi = spec.form().phi();
        let (boundary, sign) = match self.side {
            End::Start => (phi.start(), spec.orientation().signum()),
            End::Finish => (phi.end(), -spec.orientation().signum()),
        };
        let jpi = Angle::half_turns(self.j as i64);
        let advanced = self.target_angle - boundary;
        let equation = if sign > 0 { advanced == jpi } else { advanced == -jpi };
        let (lo, hi) = phi.range();
        let interior = lo < self.target_angle && self.target_angle < hi;
        let located = phi.locate(self.target_angle).is_some_and(|c| {
            c.t_exact == self.crossing.t_exact && (c.t_approx - self.crossing.t_approx).abs() < 1e-15
        });
        let orthogonal = self.target_angle.dir().dot(self.collapse) == 0;
        self.j > 0
            && boundary == self.boundary_angle
            && equation
            && interior
            && located
            && orthogonal
            && self.collapse == spec.collapse(self.side)
            && self.crossing.t_approx > 0.0
            && self.crossing.t_approx < 1.0
    }
}

/// Every disk of the capping family, ordered by `j` then side.
pub fn overtwisted_disks(spec: &CutSpec) -> Vec<OvertwistedCertificate> {
    let phi = spec.form().phi();
    let o = spec.orientation().signum();
    let sweep = spec.form().sweep().abs();
    let mut out = Vec::new();
    let mut j = 1i64;
    while Angle::half_turns(j) < sweep {
        let jpi = Angle::half_turns(j);
        for side in [End::Start, End::Finish] {
            let (boundary, target) = match side {
                End::Start => (phi.start(), phi.start() + jpi.mul_int(o)),
                End::Finish => (phi.end(), phi.end() - jpi.mul_int(o)),
            };
            let crossing = phi.locate(target).expect("target lies strictly inside the range");
            let collapse = spec.collapse(side);
            out.push(OvertwistedCertificate {
                side,
                j: j as u64,
                boundary_angle: boundary,
                target_angle: target,
                crossing,
                collapse,
                fixed_coordinate: complement(collapse),
                c: 0.0,
            });
        }
        j += 1;
    }
    out
}

/// The smallest-`j` disk of the capping family, if one exists.
///
/// `None` means no disk of this family was found. It is not a proof of
/// tightness.
pub fn detect_overtwisted(spec: &CutSpec) -> Option<OvertwistedCertificate> {
    let sweep = spec.form().sweep().abs();
    if sweep <= Angle::half_turns(1) {
        return None;
    }
    overtwisted_disks(spec).into_iter().next()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomotopyError {
    #[error("boundary covectors differ: φ_a(0) ∥ ({a0}) vs φ_b(0) ∥ ({b0}), φ_a(1) ∥ ({a1}) vs φ_b(1) ∥ ({b1})")]
    EndpointMismatch { a0: Direction, b0: Direction, a1: Direction, b1: Direction },
}

/// Where the planar part of the homotopy vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarZero {
    pub t_exact: Option<Rational>,
    pub t_approx: f64,
    /// Set when the planar part vanishes on a whole interval of `t`.
    pub t_until: Option<f64>,
    pub s_exact: Option<Rational>,
    pub s_approx: f64,
    /// `s(1−s)` at the zero: the pushed-out component.
    pub lift: f64,
}

/// A homotopy of nowhere-vanishing 1-forms between two cuts with the same
/// boundary covectors:
/// `H(s,t) = ((1−s)a₀ + s·a₁, (1−s)b₀ + s·b₁, s(1−s))`, the last entry being
/// the `dt` coefficient.
#[derive(Debug, Clone)]
pub struct HomotopyCertificate {
    pub a: CutSpec,
    pub b: CutSpec,
    pub planar_zeros: Vec<PlanarZero>,
}

impl HomotopyCertificate {
    pub fn eval(&self, s: f64, t: f64) -> [f64; 3] {
        let (pa, pb) = (self.a.form().phi().value_f64(t), self.b.form().phi().value_f64(t));
        let (ra, rb) = (self.a.form().radial().eval_f64(t), self.b.form().radial().eval_f64(t));
        [
            (1.0 - s) * ra * pa.cos() + s * rb * pb.cos(),
            (1.0 - s) * ra * pa.sin() + s * rb * pb.sin(),
            s * (1.0 - s),
        ]
    }

    pub fn norm(&self, s: f64, t: f64) -> f64 {
        let h = self.eval(s, t);
        (h[0] * h[0] + h[1] * h[1] + h[2] * h[2]).sqrt()
    }
}

/// Sorted union of both breakpoint sets.
fn joint_knots(a: &InvariantContactForm, b: &InvariantContactForm) -> Vec<Rational> {
    let mut knots: Vec<Rational> = a
        .phi()
        .breakpoints()
        .iter()
        .chain(b.phi().breakpoints())
        .copied()
        .collect();
    knots.sort();
    knots.dedup();
    knots
}

fn planar_zero(a: &CutSpec, b: &CutSpec, t_exact: Option<Rational>, t_approx: f64, t_until: Option<f64>) -> PlanarZero {
    let (s_exact, s_approx) = match t_exact {
        Some(t) => {
            let (ra, rb) = (a.form().radial().eval(t), b.form().radial().eval(t));
            let s = ra / (ra + rb);
            (Some(s), ratio_f64(s))
        }
        None => {
            let (ra, rb) = (a.form().radial().eval_f64(t_approx), b.form().radial().eval_f64(t_approx));
            (None, ra / (ra + rb))
        }
    };
    let lift = match s_exact {
        Some(s) => ratio_f64(s * (Rational::one() - s)),
        None => s_approx * (1.0 - s_approx),
    };
    PlanarZero { t_exact, t_approx, t_until, s_exact, s_approx, lift }
}

/// Builds the pushed-out straight-line homotopy from `a` to `b`.
///
/// The planar part `(1−s)r_a u_a + s r_b u_b` vanishes only where
/// `φ_a − φ_b ≡ π (mod 2π)`, at `s = r_a/(r_a + r_b) ∈ (0, 1)`, where the `dt`
/// component is positive. At `s ∈ {0, 1}` the planar part is a positive
/// multiple of a unit vector.
pub fn homotopy_certificate(a: &CutSpec, b: &CutSpec) -> Result<HomotopyCertificate, HomotopyError> {
    let (pa, pb) = (a.form().phi(), b.form().phi());
    let (a0, b0, a1, b1) = (pa.start().dir(), pb.start().dir(), pa.end().dir(), pb.end().dir());
    if a0 != b0 || a1 != b1 {
        return Err(HomotopyError::EndpointMismatch { a0, b0, a1, b1 });
    }
    let knots = joint_knots(a.form(), b.form());
    let diff = |t: Rational| {
        pa.value_at(t)
            .expect("knot in domain")
            .minus(&pb.value_at(t).expect("knot in domain"))
    };
    let values: Vec<LinearAngle> = knots.iter().map(|t| diff(*t)).collect();
    let mut zeros = Vec::new();
    for i in 0..knots.len() - 1 {
        let (t0, t1) = (knots[i], knots[i + 1]);
        let (d0, d1) = (&values[i], &values[i + 1]);
        let (f0, f1) = (ratio_f64(t0), ratio_f64(t1));
        if d0.cmp_linear(d1) == Ordering::Equal {
            let (n, on) = d0.half_turn_floor();
            if on && n.rem_euclid(2) == 1 {
                zeros.push(planar_zero(a, b, Some(t0), f0, Some(f1)));
            }
            continue;
        }
        let (lo, hi) = if d0.cmp_linear(d1) == Ordering::Less { (d0, d1) } else { (d1, d0) };
        let (nlo, lo_on) = lo.half_turn_floor();
        let (nhi, _) = hi.half_turn_floor();
        let first = if lo_on { nlo } else { nlo + 1 };
        for h in first..=nhi {
            if h.rem_euclid(2) != 1 {
                continue;
            }
            let target = LinearAngle::of(Angle::half_turns(h));
            let num = target.clone().minus(d0);
            let den = d1.clone().minus(d0);
            let lambda_exact = num.exact_ratio(&den);
            let exact_at_knot = |d: &LinearAngle| d.cmp_linear(&target) == Ordering::Equal;
            // A zero sitting on an interior knot belongs to the piece on its left.
            if i > 0 && exact_at_knot(d0) {
                continue;
            }
            let (t_exact, t_approx) = if exact_at_knot(d0) {
                (Some(t0), f0)
            } else if exact_at_knot(d1) {
                (Some(t1), f1)
            } else {
                let t_exact = lambda_exact.map(|l| t0 + l * (t1 - t0));
                let lambda = num.to_f64() / den.to_f64();
                (t_exact, t_exact.map(ratio_f64).unwrap_or(f0 + lambda * (f1 - f0)))
            };
            zeros.push(planar_zero(a, b, t_exact, t_approx, None));
        }
    }
    zeros.sort_by(|x, y| x.t_approx.total_cmp(&y.t_approx));
    Ok(HomotopyCertificate { a: a.clone(), b: b.clone(), planar_zeros: zeros })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::form::{AngleProfile, RadialProfile};
    use crate::standard::{alpha_k_spec, lens_spec};

    fn d(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    #[test]
    fn cc_count_examples() {
        for k in 1..=6u32 {
            let spec = alpha_k_spec(k).unwrap();
            assert_eq!(cc_count(&spec, d(-1, 1)), k as u64);
            assert_eq!(cc_count(&spec, d(1, -1)), k as u64);
        }
        // 2πm ∈ [0, 5π/2] for m = 0, 1.
        assert_eq!(cc_count(&alpha_k_spec(1).unwrap(), d(1, 0)), 2);
    }

    #[test]
    fn profile_examples() {
        let p1 = cc_profile(&alpha_k_spec(1).unwrap());
        assert_eq!(p1.min_count, 1);
        assert_eq!(p1.max_count, 2);
        assert_eq!(p1.arcs[0], ProfileArc { start: d(1, 0), length: Angle::new(d(0, 1), 0), closed: true, count: 2 });
        assert_eq!(p1.arcs[1].count, 1);
        assert_eq!(p1.integral(), Angle::new(d(0, 1), 1));

        let p0 = cc_profile(&alpha_k_spec(0).unwrap());
        assert_eq!((p0.min_count, p0.max_count), (0, 1));
        assert_eq!(p0.arcs[0].count, 1);
        assert_eq!(p0.arcs[1].count, 0);

        let degenerate = CcProfile::from_range(Angle::new(d(2, 5), 1), Angle::new(d(2, 5), 1));
        assert_eq!(degenerate.arcs.len(), 1);
        assert_eq!(degenerate.arcs[0].count, 0);
        assert_eq!(degenerate.points, vec![(d(2, 5), 1)]);
        assert_eq!(degenerate.integral(), Angle::ZERO);
        assert_eq!(degenerate.count_at(d(2, 5)), 1);
        assert_eq!(degenerate.count_at(d(2, 6)), 0);
    }

    #[test]
    fn profile_agrees_with_cc_count() {
        let spec = lens_spec(2, 3, 2).unwrap();
        let profile = cc_profile(&spec);
        for x in -4..=4 {
            for y in -4..=4 {
                if let Ok(xi) = Direction::new(x, y) {
                    assert_eq!(profile.count_at(xi), cc_count(&spec, xi), "{xi}");
                }
            }
        }
    }

    #[test]
    fn distinguish_examples() {
        let (a1, a2) = (alpha_k_spec(1).unwrap(), alpha_k_spec(2).unwrap());
        let w = distinguish(&a1, &a2, DistinguishMode::FixedAction).unwrap();
        assert_eq!(
            w,
            DistinguishWitness::FixedAction {
                xi_plus: d(-1, 1),
                counts_plus: (1, 2),
                xi_minus: d(-1, 1),
                counts_minus: (1, 2),
            }
        );
        assert!(w.verify(&a1, &a2));
        for k in 0..4 {
            let s = alpha_k_spec(k).unwrap();
            assert_eq!(distinguish(&s, &s, DistinguishMode::FixedAction), None);
            assert_eq!(distinguish(&s, &s, DistinguishMode::ModuloGl2z), None);
        }
        let w = distinguish(&a1, &a2, DistinguishMode::ModuloGl2z).unwrap();
        assert_eq!(w, DistinguishWitness::ModuloGl2z { summary_a: (1, 2), summary_b: (2, 3) });
        assert!(w.verify(&a1, &a2));
    }

    #[test]
    fn fixed_action_sees_relabeling_that_gl2z_ignores() {
        // Same sweep, rotated by a quarter turn: CC differs per ray but the
        // profile summaries agree.
        let phi = AngleProfile::affine(Rational::zero(), Angle::new(d(0, 1), 0), Rational::one(), Angle::new(d(-1, 0), 1))
            .unwrap();
        let form = InvariantContactForm::new(phi, RadialProfile::one()).unwrap();
        let rotated = CutSpec::new(form, (-1, 0), (0, 1)).unwrap();
        let base = alpha_k_spec(1).unwrap();
        let w = distinguish(&base, &rotated, DistinguishMode::FixedAction).unwrap();
        assert!(w.verify(&base, &rotated));
        assert_eq!(distinguish(&base, &rotated, DistinguishMode::ModuloGl2z), None);
    }

    #[test]
    fn overtwisted_examples() {
        let a1 = alpha_k_spec(1).unwrap();
        let cert = detect_overtwisted(&a1).unwrap();
        assert_eq!(cert.side, End::Start);
        assert_eq!(cert.j, 1);
        assert_eq!(cert.crossing.t_exact, Some(Rational::new(2, 5)));
        assert_eq!(cert.target_angle, Angle::half_turns(1));
        assert!(cert.verify(&a1));
        assert_eq!(cert.t_ratio(a1.form()), (Angle::half_turns(1), Angle::new(d(0, 1), 1)));

        assert!(detect_overtwisted(&alpha_k_spec(0).unwrap()).is_none());

        let disks = overtwisted_disks(&alpha_k_spec(2).unwrap());
        // sweep 9π/2: j = 1..=4 on each side.
        assert_eq!(disks.len(), 8);
        assert!(disks.iter().all(|c| c.verify(&alpha_k_spec(2).unwrap())));
        let far = &disks[1];
        assert_eq!(far.side, End::Finish);
        assert_eq!(far.crossing.t_exact, Some(Rational::new(7, 9)));
    }

    #[test]
    fn overtwisted_on_reversed_spec() {
        let spec = alpha_k_spec(1).unwrap().swapped();
        let cert = detect_overtwisted(&spec).unwrap();
        assert!(cert.verify(&spec));
        assert_eq!(cert.crossing.t_exact, Some(Rational::new(2, 5)));
        assert_eq!(cert.collapse, d(1, 0));
    }

    #[test]
    fn homotopy_examples() {
        let (a0, a1) = (alpha_k_spec(0).unwrap(), alpha_k_spec(1).unwrap());
        let h = homotopy_certificate(&a0, &a1).unwrap();
        assert_eq!(h.planar_zeros.len(), 1);
        let z = &h.planar_zeros[0];
        assert_eq!(z.t_exact, Some(Rational::new(1, 2)));
        assert_eq!(z.s_exact, Some(Rational::new(1, 2)));
        assert_eq!(z.lift, 0.25);
        assert!(h.norm(0.5, 0.5) >= 0.25 - 1e-12);

        let same = homotopy_certificate(&a1, &a1).unwrap();
        assert!(same.planar_zeros.is_empty());

        // φ(1) pointing along (1,0) instead of (0,1).
        let phi = AngleProfile::affine(Rational::zero(), Angle::ZERO, Rational::one(), Angle::half_turns(2)).unwrap();
        let form = InvariantContactForm::new(phi, RadialProfile::one()).unwrap();
        let other = CutSpec::new(form, (0, 1), (0, -1)).unwrap();
        assert!(matches!(homotopy_certificate(&a0, &other), Err(HomotopyError::EndpointMismatch { .. })));
    }

    #[test]
    fn homotopy_zero_count_is_turn_difference() {
        for k in 0..4u32 {
            for l in 0..4u32 {
                let h = homotopy_certificate(&alpha_k_spec(k).unwrap(), &alpha_k_spec(l).unwrap()).unwrap();
                assert_eq!(h.planar_zeros.len(), k.abs_diff(l) as usize);
                let diff = k.abs_diff(l) as i64;
                for (m, z) in h.planar_zeros.iter().enumerate() {
                    assert_eq!(z.t_exact, Some(Rational::new(2 * m as i64 + 1, 2 * diff)));
                }
            }
        }
    }

    #[test]
    fn homotopy_with_unequal_radii() {
        let a = alpha_k_spec(0).unwrap();
        let b = alpha_k_spec(1).unwrap().rescale(&RadialProfile::constant(Rational::from_integer(3)).unwrap()).unwrap();
        let h = homotopy_certificate(&a, &b).unwrap();
        let z = &h.planar_zeros[0];
        assert_eq!(z.s_exact, Some(Rational::new(1, 4)));
        let v = h.eval(z.s_approx, z.t_approx);
        assert!(v[0].abs() < 1e-12 && v[1].abs() < 1e-12);
        assert!((v[2] - 3.0 / 16.0).abs() < 1e-15);
    }
}
