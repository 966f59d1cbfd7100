//! Generators and brute-force oracles shared by the integration suites.
//!
//! Oracles here recompute answers from raw integer data with plain floating
//! point and never call the library routine they check.

#![allow(dead_code)]

use std::f64::consts::PI;

use contact_cuts::{Angle, AngleProfile, CutSpec, Direction, InvariantContactForm, RadialProfile, Rational};
use rand::Rng;

pub const SMALL: i64 = 6;

pub fn random_direction<R: Rng>(rng: &mut R, bound: i64) -> Direction {
    loop {
        let (x, y) = (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if let Ok(d) = Direction::new(x, y) {
            return d;
        }
    }
}

/// `atan2` plus whole turns, straight from the integer data.
pub fn raw_value(a: Angle) -> f64 {
    let (x, y) = a.dir().components();
    (y as f64).atan2(x as f64) + 2.0 * PI * a.turns() as f64
}

/// Strictly monotone profile on `[0, 1]` with at most `max_sweep_turns`
/// full turns of total sweep.
pub fn random_profile<R: Rng>(rng: &mut R, max_sweep_turns: i64) -> AngleProfile {
    let segments = rng.gen_range(1..=4usize);
    let increasing = rng.gen_bool(0.5);
    let denom = 12i64;
    let mut ts: Vec<i64> = vec![0, denom];
    while ts.len() < segments + 1 {
        let k = rng.gen_range(1..denom);
        if !ts.contains(&k) {
            ts.push(k);
        }
    }
    ts.sort_unstable();
    let start = Angle::new(random_direction(rng, SMALL), rng.gen_range(-2..=2));
    let budget = max_sweep_turns * 2;
    let mut values = vec![start];
    let mut prev = start;
    for _ in 0..segments {
        // Half-turn steps plus a random lattice residue keeps the sweep bounded.
        let half_turns = rng.gen_range(0..=(budget / segments as i64).max(1) - 1);
        let d = random_direction(rng, SMALL);
        let mut next = Angle::new(d, prev.turns() + if increasing { half_turns / 2 } else { -half_turns / 2 });
        while (increasing && next <= prev) || (!increasing && next >= prev) {
            next = Angle::new(d, next.turns() + if increasing { 1 } else { -1 });
        }
        values.push(next);
        prev = next;
    }
    let points = ts.iter().map(|t| Rational::new(*t, denom)).zip(values).collect();
    AngleProfile::new(points).expect("structurally valid")
}

pub fn random_radial<R: Rng>(rng: &mut R) -> RadialProfile {
    if rng.gen_bool(0.3) {
        return RadialProfile::constant(Rational::new(rng.gen_range(1..=20), rng.gen_range(1..=7))).unwrap();
    }
    let n = rng.gen_range(2..=5);
    let mut ts: Vec<i64> = vec![0, 10];
    while ts.len() < n {
        let k = rng.gen_range(1..10);
        if !ts.contains(&k) {
            ts.push(k);
        }
    }
    ts.sort_unstable();
    let points = ts
        .iter()
        .map(|t| (Rational::new(*t, 10), Rational::new(rng.gen_range(1..=30), rng.gen_range(1..=5))))
        .collect();
    RadialProfile::piecewise(points).unwrap()
}

pub fn random_form<R: Rng>(rng: &mut R, max_sweep_turns: i64) -> InvariantContactForm {
    InvariantContactForm::new(random_profile(rng, max_sweep_turns), random_radial(rng)).expect("monotone")
}

/// Collapse vectors making `form` a valid cut: the inward perpendiculars of
/// the boundary covectors.
pub fn inward_collapse(form: &InvariantContactForm) -> ((i64, i64), (i64, i64)) {
    let o = form.orientation().signum();
    let u0 = form.phi().start().dir();
    let u1 = form.phi().end().dir();
    let v0 = if o > 0 { u0.rot_ccw() } else { u0.rot_cw() };
    let v1 = if o > 0 { u1.rot_cw() } else { u1.rot_ccw() };
    (v0.into(), v1.into())
}

pub fn random_spec<R: Rng>(rng: &mut R, max_sweep_turns: i64) -> CutSpec {
    let form = random_form(rng, max_sweep_turns);
    let (v0, v1) = inward_collapse(&form);
    CutSpec::new(form, v0, v1).expect("inward perpendiculars are valid")
}

/// `φ` at `t` by direct interpolation of the raw breakpoint values.
pub fn raw_phi(phi: &AngleProfile, t: f64) -> f64 {
    let b: Vec<f64> = phi.breakpoints().iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect();
    let v: Vec<f64> = phi.values().iter().map(|a| raw_value(*a)).collect();
    let i = (0..b.len() - 1).find(|&i| t <= b[i + 1]).unwrap_or(b.len() - 2);
    let lambda = (t - b[i]) / (b[i + 1] - b[i]);
    v[i] + lambda * (v[i + 1] - v[i])
}

/// Counts clusters of `t`-samples at which `(cos φ, sin φ)` points along
/// `xi`. Samples are spread over the segments in proportion to their sweep so
/// the angular step stays uniform; a cluster is a maximal run of samples
/// within half a step of the ray.
pub fn cc_oracle(phi: &AngleProfile, xi: (i64, i64), samples: usize) -> u64 {
    let b: Vec<f64> = phi.breakpoints().iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect();
    let v: Vec<f64> = phi.values().iter().map(|a| raw_value(*a)).collect();
    let total: f64 = v.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let target = (xi.1 as f64).atan2(xi.0 as f64);
    let mut ts = Vec::with_capacity(samples + b.len());
    for i in 0..b.len() - 1 {
        let share = ((v[i + 1] - v[i]).abs() / total * samples as f64).ceil().max(1.0) as usize;
        for j in 0..share {
            ts.push(b[i] + (b[i + 1] - b[i]) * j as f64 / share as f64);
        }
    }
    ts.push(*b.last().unwrap());
    let step = ts
        .windows(2)
        .map(|w| (raw_phi(phi, w[1]) - raw_phi(phi, w[0])).abs())
        .fold(0.0, f64::max);
    let tol = 0.5 * step + 1e-12;
    let mut count = 0;
    let mut inside = false;
    for t in ts {
        let p = raw_phi(phi, t);
        let (c, s) = (p.cos(), p.sin());
        let off = (s.atan2(c) - target + PI).rem_euclid(2.0 * PI) - PI;
        let on = off.abs() <= tol;
        if on && !inside {
            count += 1;
        }
        inside = on;
    }
    count
}

/// Brute-force `#{m : lo ≤ Arg(θ) + 2πm ≤ hi}` over a fixed window of `m`.
pub fn lattice_oracle(theta: Direction, lo: Angle, hi: Angle, m_range: i64) -> u64 {
    (-m_range..=m_range)
        .filter(|&m| {
            let a = Angle::new(theta, m);
            lo <= a && a <= hi
        })
        .count() as u64
}

/// `(q, p mod q)` of `L_{p/q}` by searching for `A ∈ SL(2,ℤ)` with
/// `A·v0 = (0, 1)` among small integer matrices.
pub fn lens_oracle(v0: (i64, i64), v1: (i64, i64)) -> Option<(i64, i64)> {
    let bound = 40;
    for c in -bound..=bound {
        for d in -bound..=bound {
            // Row 2 of A is (c, d) with c·v0.x + d·v0.y = 1; row 1 is then
            // forced to (v0.y, −v0.x) up to adding multiples of row 2.
            if c * v0.0 + d * v0.1 != 1 {
                continue;
            }
            let (a, b) = (v0.1, -v0.0);
            let x = a * v1.0 + b * v1.1;
            let y = c * v1.0 + d * v1.1;
            if x == 0 {
                return None;
            }
            let (p, q) = if x > 0 { (y, x) } else { (-y, -x) };
            return Some((q, p.rem_euclid(q)));
        }
    }
    panic!("no SL(2,Z) completion found for {v0:?}")
}

/// `|H(s, t)|` for the straight-line homotopy pushed out in `dt`, from raw
/// profile data.
pub fn homotopy_norm(a: &CutSpec, b: &CutSpec, s: f64, t: f64) -> f64 {
    let (pa, pb) = (raw_phi(a.form().phi(), t), raw_phi(b.form().phi(), t));
    let (ra, rb) = (a.form().radial().eval_f64(t), b.form().radial().eval_f64(t));
    let x = (1.0 - s) * ra * pa.cos() + s * rb * pb.cos();
    let y = (1.0 - s) * ra * pa.sin() + s * rb * pb.sin();
    let z = s * (1.0 - s);
    (x * x + y * y + z * z).sqrt()
}
