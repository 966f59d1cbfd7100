//! Contact cuts of `T² × [0, 1]`: validation of collapse data, the topology
//! of the cut space, contact reduction at zero levels, and slicing of
//! line-type forms.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::angle::{lattice_points, Angle, Direction};
use crate::combination::ratio_f64;
use crate::form::{Crossing, FormError, InvariantContactForm, Orientation, Sign};
use crate::Rational;

/// Which boundary torus: `t = 0` or `t = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum End {
    Start,
    Finish,
}

impl End {
    pub fn index(self) -> u8 {
        match self {
            End::Start => 0,
            End::Finish => 1,
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("collapse vector ({},{}) at t = {end} is not primitive", .vector.0, .vector.1)]
    NonPrimitive { end: End, vector: (i64, i64) },
    #[error("moment of the collapse vector does not vanish at t = {end}")]
    NonzeroBoundaryMoment { end: End },
    #[error("moment of the collapse vector is negative just inside t = {end}")]
    WrongSign { end: End },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CutError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("invalid cut data: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Checks the boundary conditions of a cut: each collapse vector is
/// primitive, its moment vanishes at its boundary torus, and it is strictly
/// positive just inside.
pub fn validate_cutspec(
    form: &InvariantContactForm,
    v0: (i64, i64),
    v1: (i64, i64),
) -> Result<(), Vec<Violation>> {
    let o = form.orientation().signum() as i128;
    let mut out = Vec::new();
    for (end, v, boundary) in [(End::Start, v0, form.phi().start()), (End::Finish, v1, form.phi().end())] {
        if !Direction::is_primitive(v.0, v.1) {
            out.push(Violation::NonPrimitive { end, vector: v });
            continue;
        }
        let v = Direction::new(v.0, v.1).unwrap();
        let u = boundary.dir();
        if v.dot(u) != 0 {
            out.push(Violation::NonzeroBoundaryMoment { end });
            continue;
        }
        // f_v(t) ≈ ±ε·φ′·(v · rot_ccw(u)) near the boundary, and
        // v · rot_ccw(u) = cross(u, v).
        let inward = match end {
            End::Start => o,
            End::Finish => -o,
        };
        if inward * u.cross(v).signum() <= 0 {
            out.push(Violation::WrongSign { end });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// A validated cut: a contact form on `[0, 1]` and primitive collapse
/// directions at both boundary tori.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSpec {
    form: InvariantContactForm,
    v0: Direction,
    v1: Direction,
}

impl CutSpec {
    /// Reparameterizes the form onto `[0, 1]` and validates the collapse data.
    pub fn new(form: InvariantContactForm, v0: (i64, i64), v1: (i64, i64)) -> Result<Self, CutError> {
        let form = form.to_unit_interval();
        validate_cutspec(&form, v0, v1).map_err(CutError::Invalid)?;
        Ok(CutSpec {
            form,
            v0: Direction::new(v0.0, v0.1).unwrap(),
            v1: Direction::new(v1.0, v1.1).unwrap(),
        })
    }

    /// Skips validation. Only for exercising consumers against bad data.
    #[doc(hidden)]
    pub fn new_unchecked(form: InvariantContactForm, v0: Direction, v1: Direction) -> Self {
        CutSpec { form: form.to_unit_interval(), v0, v1 }
    }

    pub fn form(&self) -> &InvariantContactForm {
        &self.form
    }

    pub fn v0(&self) -> Direction {
        self.v0
    }

    pub fn v1(&self) -> Direction {
        self.v1
    }

    pub fn collapse(&self, end: End) -> Direction {
        match end {
            End::Start => self.v0,
            End::Finish => self.v1,
        }
    }

    pub fn rescale(&self, radial2: &crate::form::RadialProfile) -> Result<Self, CutError> {
        CutSpec::new(self.form.rescale(radial2)?, self.v0.into(), self.v1.into())
    }

    /// Swaps the boundary tori and reads the form backwards.
    pub fn swapped(&self) -> Self {
        CutSpec { form: self.form.reversed(), v0: self.v1, v1: self.v0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LensKind {
    Sphere3,
    S1xS2,
    Lens,
}

impl fmt::Display for LensKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LensKind::Sphere3 => "S3",
            LensKind::S1xS2 => "S1xS2",
            LensKind::Lens => "Lens",
        })
    }
}

/// The cut space as two solid tori glued along `T²`.
///
/// With a basis in which the `t = 0` collapse is `(0, 1)`, the `t = 1`
/// collapse is `(x, y)`; the cut is `L_{y/x}`. `x = det(v1, v0)` is basis
/// independent, while `y` is defined up to `y ↦ y + n·x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensDescriptor {
    pub kind: LensKind,
    /// `(p, q)` in lowest terms with `q ≥ 0`; `(1, 0)` for `S¹×S²`.
    pub slope: (i64, i64),
    /// `(q, p mod q)` when `q ≠ 0`.
    pub normal_form: Option<(i64, i64)>,
    /// Image of the `t = 1` collapse vector in the normalized basis.
    pub raw_image: (i64, i64),
}

impl LensDescriptor {
    pub fn from_collapse(v0: Direction, v1: Direction) -> Self {
        let (a, b) = (v0.x(), v0.y());
        // Row (c, d) with c·a + d·b = 1 completes (b, −a) to A ∈ SL(2,ℤ), A·v0 = (0, 1).
        let eg = a.extended_gcd(&b);
        let (c, d) = if eg.gcd < 0 { (-eg.x, -eg.y) } else { (eg.x, eg.y) };
        let x = b as i128 * v1.x() as i128 - a as i128 * v1.y() as i128;
        let y = c as i128 * v1.x() as i128 + d as i128 * v1.y() as i128;
        let raw_image = (x as i64, y as i64);
        if x == 0 {
            return LensDescriptor { kind: LensKind::S1xS2, slope: (1, 0), normal_form: None, raw_image };
        }
        let (p, q) = if x > 0 { (y, x) } else { (-y, -x) };
        let (p, q) = (p as i64, q as i64);
        let kind = if q == 1 { LensKind::Sphere3 } else { LensKind::Lens };
        LensDescriptor { kind, slope: (p, q), normal_form: Some((q, p.rem_euclid(q))), raw_image }
    }

    pub fn slope_string(&self) -> String {
        format!("{}/{}", self.slope.0, self.slope.1)
    }
}

impl fmt::Display for LensDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (L_{{{}}}", self.kind, self.slope_string())?;
        if let Some((q, p)) = self.normal_form {
            write!(f, ", normal form ({q}, {p})")?;
        }
        write!(f, ")")
    }
}

pub fn classify_lens(spec: &CutSpec) -> LensDescriptor {
    LensDescriptor::from_collapse(spec.v0, spec.v1)
}

/// A component of the zero level of `f_η`, with its reduced 1-form.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedCircle {
    /// The lattice angle `φ(t*)`, orthogonal to `η`.
    pub angle: Angle,
    pub crossing: Crossing,
    pub radial: f64,
    /// `α(ζ)` at `t*` for the complement `ζ` with `det(ζ, η) = 1`.
    pub coefficient: f64,
    pub coefficient_sign: Sign,
    pub complement: Direction,
}

/// `ζ` with `det(ζ, η) = ζ.x·η.y − ζ.y·η.x = 1`.
pub fn complement(eta: Direction) -> Direction {
    let eg = eta.y().extended_gcd(&(-eta.x()));
    let (a, b) = if eg.gcd < 0 { (-eg.x, -eg.y) } else { (eg.x, eg.y) };
    Direction::new(a, b).expect("complement of a primitive vector is nonzero")
}

fn radial_at(form: &InvariantContactForm, c: &Crossing) -> f64 {
    match c.t_exact {
        Some(t) => ratio_f64(form.radial().eval(t)),
        None => form.radial().eval_f64(c.t_approx),
    }
}

/// Reduces at every zero `t*` of `f_η`: the level `T² × {t*}` modulo the
/// `η`-circle is a circle carrying `α(ζ) dσ`, which is nonzero.
pub fn contact_reduce(form: &InvariantContactForm, eta: Direction) -> Vec<ReducedCircle> {
    let zeta = complement(eta);
    let (lo, hi) = form.phi().range();
    let mut out: Vec<ReducedCircle> = [eta.rot_ccw(), eta.rot_cw()]
        .into_iter()
        .flat_map(|d| lattice_points(d, lo, hi))
        .map(|angle| {
            let crossing = form.phi().locate(angle).expect("lattice point lies in the range");
            let radial = radial_at(form, &crossing);
            // ζ · rot_ccw(η) = −1 and ζ · rot_cw(η) = +1.
            let along = zeta.dot(angle.dir()).signum() as f64;
            let coefficient = radial * along / eta.norm();
            let coefficient_sign = Sign::of_f64(along);
            ReducedCircle { angle, crossing, radial, coefficient, coefficient_sign, complement: zeta }
        })
        .collect();
    out.sort_by(|a, b| a.crossing.t_approx.total_cmp(&b.crossing.t_approx));
    out
}

/// A rational strictly inside `(lo, hi)` near `t`, with a small dyadic
/// denominator so that later reparameterizations stay within `i64`.
fn rational_inside(t: f64, lo: Rational, hi: Rational) -> Rational {
    let offset = t - ratio_f64(lo);
    (4..=20)
        .map(|k| {
            let q = 1i64 << k;
            lo + Rational::new((offset * q as f64).round() as i64, q)
        })
        .find(|c| *c > lo && *c < hi)
        .unwrap_or_else(|| (lo + hi) / Rational::from_integer(2))
}

fn crossing_time(form: &InvariantContactForm, c: &Crossing) -> Rational {
    c.t_exact.unwrap_or_else(|| {
        let b = form.phi().breakpoints();
        rational_inside(c.t_approx, b[c.segment], b[c.segment + 1])
    })
}

/// Cuts a line-type form along the closed intervals where `f_η ≥ 0`.
///
/// `window` bounds the values of `φ`. Only intervals lying entirely inside
/// both the window and the range of `φ` are returned, each reparameterized to
/// `[0, 1]` with `η` collapsing at both ends.
pub fn slice_by_ray(
    line_form: &InvariantContactForm,
    eta: Direction,
    window: (Angle, Angle),
) -> Result<Vec<CutSpec>, CutError> {
    let (w0, w1) = if window.0 <= window.1 { window } else { (window.1, window.0) };
    let (lo, hi) = line_form.phi().range();
    let (lo, hi) = (lo.max(w0), hi.min(w1));
    let mut out = Vec::new();
    // f_η ≥ 0 exactly on [Arg(η) − π/2, Arg(η) + π/2] + 2πℤ.
    for start in lattice_points(eta.rot_cw(), lo, hi) {
        let end = start + Angle::half_turns(1);
        if end > hi {
            continue;
        }
        let ca = line_form.phi().locate(start).expect("inside range");
        let cb = line_form.phi().locate(end).expect("inside range");
        let (ta, tb) = (crossing_time(line_form, &ca), crossing_time(line_form, &cb));
        let piece = if ta < tb {
            line_form.restrict(ta, start, tb, end)
        } else {
            line_form.restrict(tb, end, ta, start)
        };
        out.push(CutSpec::new(piece, eta.into(), eta.into())?);
    }
    Ok(out)
}

/// Whether `v0 = ±v1`.
pub fn is_parallel(v0: Direction, v1: Direction) -> bool {
    v0 == v1 || v0 == -v1
}

impl CutSpec {
    pub fn orientation(&self) -> Orientation {
        self.form.orientation()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{AngleProfile, RadialProfile};
    use crate::standard;

    fn d(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn validate_examples() {
        for k in 0..6 {
            let form = standard::alpha_k(k).unwrap();
            assert_eq!(validate_cutspec(&form, (0, 1), (1, 0)), Ok(()));
            assert_eq!(
                validate_cutspec(&form, (0, -1), (1, 0)),
                Err(vec![Violation::WrongSign { end: End::Start }])
            );
        }
        let a0 = standard::alpha_k(0).unwrap();
        assert_eq!(
            validate_cutspec(&a0, (1, 0), (1, 0)),
            Err(vec![Violation::NonzeroBoundaryMoment { end: End::Start }])
        );
        assert_eq!(
            validate_cutspec(&a0, (2, 4), (0, 0)),
            Err(vec![
                Violation::NonPrimitive { end: End::Start, vector: (2, 4) },
                Violation::NonPrimitive { end: End::Finish, vector: (0, 0) },
            ])
        );
        assert_eq!(
            validate_cutspec(&a0, (0, 1), (-1, 0)),
            Err(vec![Violation::WrongSign { end: End::Finish }])
        );
    }

    #[test]
    fn wrong_sign_matches_direct_evaluation() {
        // Just inside t = 0 the (0,−1) moment is −sin φ with φ small and positive.
        let a1 = standard::alpha_k(1).unwrap();
        let m = a1.moment_eval((0, -1), r(1, 1000)).unwrap();
        assert_eq!(m.sign, Sign::Negative);
    }

    #[test]
    fn classify_examples() {
        let s3 = LensDescriptor::from_collapse(d(0, 1), d(1, 0));
        assert_eq!(s3.kind, LensKind::Sphere3);
        assert_eq!(s3.slope, (0, 1));
        assert_eq!(s3.normal_form, Some((1, 0)));

        let l = LensDescriptor::from_collapse(d(0, 1), d(1, -2));
        assert_eq!(l.slope, (-2, 1));
        assert_eq!(l.raw_image, (1, -2));
        // q = 1: the gluing is a genus-one splitting of S³.
        assert_eq!(l.kind, LensKind::Sphere3);

        let s1s2 = LensDescriptor::from_collapse(d(0, 1), d(0, 1));
        assert_eq!(s1s2.kind, LensKind::S1xS2);
        assert_eq!(s1s2.slope, (1, 0));
        assert_eq!(s1s2.normal_form, None);
        assert_eq!(LensDescriptor::from_collapse(d(2, 3), d(-2, -3)).kind, LensKind::S1xS2);

        let l23 = LensDescriptor::from_collapse(d(0, 1), d(3, -2));
        assert_eq!(l23.kind, LensKind::Lens);
        assert_eq!(l23.slope, (-2, 3));
        assert_eq!(l23.normal_form, Some((3, 1)));
    }

    #[test]
    fn complement_has_unit_determinant() {
        for (x, y) in [(0, 1), (1, 0), (3, -5), (-7, 2), (1, 1), (0, -1)] {
            let eta = d(x, y);
            let z = complement(eta);
            assert_eq!(z.cross(eta), 1, "{eta}");
        }
    }

    #[test]
    fn reduce_examples() {
        let a1 = standard::alpha_k(1).unwrap();
        let circles = contact_reduce(&a1, Direction::NORTH);
        let ts: Vec<_> = circles.iter().map(|c| c.crossing.t_exact.unwrap()).collect();
        assert_eq!(ts, vec![r(0, 1), r(2, 5), r(4, 5)]);
        let coeffs: Vec<_> = circles.iter().map(|c| c.coefficient).collect();
        assert_eq!(coeffs, vec![1.0, -1.0, 1.0]);
        // Hand solution of (5π/2)t ∈ πℤ with cos evaluated there.
        for (c, t) in circles.iter().zip([0.0, 0.4, 0.8]) {
            let phi = 2.5 * std::f64::consts::PI * t;
            assert!((c.coefficient - phi.cos()).abs() < 1e-12);
        }

        let a0 = standard::alpha_k(0).unwrap();
        let circles = contact_reduce(&a0, Direction::NORTH);
        assert_eq!(circles.len(), 1);
        assert_eq!(circles[0].crossing.t_exact, Some(r(0, 1)));
        assert_eq!(circles[0].coefficient, 1.0);

        let doubled = a1.rescale(&RadialProfile::constant(r(2, 1)).unwrap()).unwrap();
        let circles2 = contact_reduce(&doubled, Direction::NORTH);
        let coeffs: Vec<_> = circles2.iter().map(|c| c.coefficient).collect();
        assert_eq!(coeffs, vec![2.0, -2.0, 2.0]);
    }

    #[test]
    fn slice_examples() {
        let ex1 = standard::ex1_line(3).unwrap();
        let window = (Angle::half_turns(-3), Angle::half_turns(3));
        let specs = slice_by_ray(&ex1, Direction::NORTH, window).unwrap();
        assert_eq!(specs.len(), 3);
        let starts: Vec<_> = specs.iter().map(|s| s.form().phi().start()).collect();
        assert_eq!(starts, vec![Angle::half_turns(-2), Angle::half_turns(0), Angle::half_turns(2)]);
        for s in &specs {
            assert_eq!(classify_lens(s).kind, LensKind::S1xS2);
            assert_eq!(s.form().sweep(), Angle::half_turns(1));
        }

        let south = slice_by_ray(&ex1, Direction::SOUTH, (Angle::ZERO, Angle::half_turns(1))).unwrap();
        assert!(south.is_empty());
        let clipped = slice_by_ray(&ex1, Direction::NORTH, (Angle::ZERO, Angle::new(Direction::NORTH, 0))).unwrap();
        assert!(clipped.is_empty());
    }

    #[test]
    fn slice_with_irrational_endpoints() {
        // φ from 0 to 3π over two segments with a breakpoint at a non-π/4 angle.
        let phi = AngleProfile::new(vec![
            (r(0, 1), Angle::ZERO),
            (r(1, 3), Angle::new(d(3, 4), 0)),
            (r(1, 1), Angle::half_turns(3)),
        ])
        .unwrap();
        let form = InvariantContactForm::new(phi, RadialProfile::one()).unwrap();
        let eta = d(1, 2);
        let specs = slice_by_ray(&form, eta, form.phi().range()).unwrap();
        // Positive region of (1,2) is centered on Arg(1,2) ≈ 1.107: [−0.46, 2.68] is
        // clipped at 0, [5.82, 8.96] lies inside [0, 3π].
        assert_eq!(specs.len(), 1);
        assert_eq!(specs[0].form().sweep(), Angle::half_turns(1));
        assert_eq!(specs[0].v0(), eta);
    }

    #[test]
    fn swapped_spec_is_valid() {
        for (k, l) in [(1, 1), (2, 1), (1, 2), (2, 3)] {
            let spec = standard::lens_spec(k, l, 2).unwrap();
            let sw = spec.swapped();
            let form = sw.form().clone();
            assert_eq!(validate_cutspec(&form, sw.v0().into(), sw.v1().into()), Ok(()));
            assert_eq!(sw.orientation(), Orientation::Negative);
        }
    }
}
