//! Exact angles of the form `Arg(v) + 2π·n` with `v` an integer vector.
//!
//! Every predicate here (ordering, subtraction, lattice counting) reduces to
//! integer cross and dot products plus bookkeeping on whole turns. Nothing is
//! decided by floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AngleError {
    #[error("the zero vector has no direction")]
    ZeroVector,
    #[error("malformed angle literal `{0}` (expected `x,y` or `x,y;n`)")]
    Literal(String),
    #[error("malformed direction literal `{0}` (expected `m,n`)")]
    DirectionLiteral(String),
}

/// A primitive nonzero integer vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Direction {
    x: i64,
    y: i64,
}

impl Direction {
    pub const EAST: Direction = Direction { x: 1, y: 0 };
    pub const NORTH: Direction = Direction { x: 0, y: 1 };
    pub const WEST: Direction = Direction { x: -1, y: 0 };
    pub const SOUTH: Direction = Direction { x: 0, y: -1 };

    /// Reduces `(x, y)` to primitive form.
    pub fn new(x: i64, y: i64) -> Result<Self, AngleError> {
        if x == 0 && y == 0 {
            return Err(AngleError::ZeroVector);
        }
        let g = x.gcd(&y);
        Ok(Direction { x: x / g, y: y / g })
    }

    /// True when `(x, y)` is nonzero with coprime entries.
    pub fn is_primitive(x: i64, y: i64) -> bool {
        (x, y) != (0, 0) && x.gcd(&y) == 1
    }

    pub(crate) fn from_wide(x: i128, y: i128) -> Self {
        debug_assert!(x != 0 || y != 0);
        let g = x.gcd(&y);
        let (x, y) = (x / g, y / g);
        Direction {
            x: i64::try_from(x).expect("direction component overflows i64"),
            y: i64::try_from(y).expect("direction component overflows i64"),
        }
    }

    pub fn x(self) -> i64 {
        self.x
    }

    pub fn y(self) -> i64 {
        self.y
    }

    pub fn components(self) -> (i64, i64) {
        (self.x, self.y)
    }

    /// Rotation by +π/2.
    pub fn rot_ccw(self) -> Self {
        Direction { x: -self.y, y: self.x }
    }

    /// Rotation by −π/2.
    pub fn rot_cw(self) -> Self {
        Direction { x: self.y, y: -self.x }
    }

    pub fn conj(self) -> Self {
        Direction { x: self.x, y: -self.y }
    }

    pub fn cross(self, other: Direction) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    pub fn dot(self, other: Direction) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    /// Complex product, reduced to primitive form.
    pub fn mul(self, other: Direction) -> Self {
        let (a, b) = (self.x as i128, self.y as i128);
        let (c, d) = (other.x as i128, other.y as i128);
        Direction::from_wide(a * c - b * d, a * d + b * c)
    }

    /// `Arg` in `(−π, π]`.
    pub fn to_radians(self) -> f64 {
        (self.y as f64).atan2(self.x as f64)
    }

    pub fn norm(self) -> f64 {
        (self.x as f64).hypot(self.y as f64)
    }

    /// Lower open half-plane sorts first; the closed upper half `[0, π]` second.
    fn half(self) -> u8 {
        if self.y < 0 {
            0
        } else {
            1
        }
    }

    /// Compares `Arg(self)` with `Arg(other)` on the branch `(−π, π]`.
    pub fn arg_cmp(self, other: Direction) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match self.half().cmp(&other.half()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match self.cross(other).cmp(&0) {
            Ordering::Greater => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            // Distinct directions in one half with zero cross product: 0 vs π.
            Ordering::Equal => {
                if self.x > 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// `Arg` in units of π/4 when the direction is an axis or a diagonal.
    pub fn eighth_turns(self) -> Option<i64> {
        Some(match (self.x, self.y) {
            (1, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            (-1, 1) => 3,
            (-1, 0) => 4,
            (-1, -1) => -3,
            (0, -1) => -2,
            (1, -1) => -1,
            _ => return None,
        })
    }

    /// A direction strictly inside the open counter-clockwise arc from `self`
    /// to `other`. When the two coincide the arc is the circle minus a point.
    pub fn strictly_between(self, other: Direction) -> Direction {
        let c = self.cross(other);
        let sx = self.x as i128 + other.x as i128;
        let sy = self.y as i128 + other.y as i128;
        if self == other {
            -self
        } else if c > 0 {
            Direction::from_wide(sx, sy)
        } else if c == 0 {
            self.rot_ccw()
        } else {
            Direction::from_wide(-sx, -sy)
        }
    }
}

impl Neg for Direction {
    type Output = Direction;

    fn neg(self) -> Direction {
        Direction { x: -self.x, y: -self.y }
    }
}

impl TryFrom<(i64, i64)> for Direction {
    type Error = AngleError;

    fn try_from((x, y): (i64, i64)) -> Result<Self, AngleError> {
        Direction::new(x, y)
    }
}

impl From<Direction> for (i64, i64) {
    fn from(d: Direction) -> (i64, i64) {
        (d.x, d.y)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// Parses an integer pair `m,n` without primitive reduction.
pub fn parse_pair(s: &str) -> Result<(i64, i64), AngleError> {
    let err = || AngleError::DirectionLiteral(s.to_string());
    let (a, b) = s.trim().split_once(',').ok_or_else(err)?;
    let a = a.trim().parse().map_err(|_| err())?;
    let b = b.trim().parse().map_err(|_| err())?;
    Ok((a, b))
}

impl FromStr for Direction {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, AngleError> {
        let (x, y) = parse_pair(s)?;
        Direction::new(x, y)
    }
}

/// The real number `Arg(dir) + 2π·turns`.
///
/// Equality is structural, which coincides with equality of values because
/// `dir` is primitive and `Arg` is single valued on `(−π, π]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Angle {
    dir: Direction,
    turns: i64,
}

impl Angle {
    pub const ZERO: Angle = Angle { dir: Direction::EAST, turns: 0 };

    pub fn new(dir: Direction, turns: i64) -> Self {
        Angle { dir, turns }
    }

    /// `Arg(v)` with zero turns.
    pub fn from_vector(x: i64, y: i64) -> Result<Self, AngleError> {
        Ok(Angle { dir: Direction::new(x, y)?, turns: 0 })
    }

    /// `j·π`.
    pub fn half_turns(j: i64) -> Self {
        if j.is_even() {
            Angle { dir: Direction::EAST, turns: j / 2 }
        } else {
            Angle { dir: Direction::WEST, turns: (j - 1).div_euclid(2) }
        }
    }

    /// `e·π/4` when `e` lands on a representable direction (always true).
    pub fn eighths(e: i64) -> Self {
        let turns = (e + 3).div_euclid(8);
        let rem = e - 8 * turns;
        let dir = match rem {
            -3 => Direction { x: -1, y: -1 },
            -2 => Direction::SOUTH,
            -1 => Direction { x: 1, y: -1 },
            0 => Direction::EAST,
            1 => Direction { x: 1, y: 1 },
            2 => Direction::NORTH,
            3 => Direction { x: -1, y: 1 },
            4 => Direction::WEST,
            _ => unreachable!(),
        };
        Angle { dir, turns }
    }

    pub fn dir(self) -> Direction {
        self.dir
    }

    pub fn turns(self) -> i64 {
        self.turns
    }

    pub fn to_f64(self) -> f64 {
        self.dir.to_radians() + std::f64::consts::TAU * self.turns as f64
    }

    /// Value in units of π/4, when the direction is an axis or a diagonal.
    pub fn eighth_turns(self) -> Option<i64> {
        self.dir.eighth_turns().map(|e| e + 8 * self.turns)
    }

    pub fn is_zero(self) -> bool {
        self == Angle::ZERO
    }

    /// `n·self`, by doubling.
    pub fn mul_int(self, n: i64) -> Angle {
        let mut acc = Angle::ZERO;
        let mut base = if n < 0 { -self } else { self };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base;
            }
            base = base + base;
            k >>= 1;
        }
        acc
    }

    pub fn abs(self) -> Angle {
        if self < Angle::ZERO {
            -self
        } else {
            self
        }
    }

    /// Splits `self ≥ 0` as `2π·n + rem` with `0 ≤ rem < 2π`.
    pub fn div_full_turns(self) -> (i64, Angle) {
        debug_assert!(self >= Angle::ZERO);
        if self.dir.half() == 0 {
            // Arg in (−π, 0): borrow one turn.
            (self.turns - 1, Angle { dir: self.dir, turns: 1 })
        } else {
            (self.turns, Angle { dir: self.dir, turns: 0 })
        }
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.turns
            .cmp(&other.turns)
            .then_with(|| self.dir.arg_cmp(other.dir))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        if self.dir == Direction::WEST {
            // −(π + 2πn) = π + 2π(−n−1)
            Angle { dir: Direction::WEST, turns: -self.turns - 1 }
        } else {
            Angle { dir: self.dir.conj(), turns: -self.turns }
        }
    }
}

impl Sub for Angle {
    type Output = Angle;

    fn sub(self, rhs: Angle) -> Angle {
        let dir = self.dir.mul(rhs.dir.conj());
        // Arg(a) − Arg(b) lies in (−2π, 2π); Arg(dir) differs from it by a
        // whole turn exactly when the lower half-plane test disagrees with
        // the ordering of the two arguments.
        let lower = dir.y < 0;
        let correction = if self.dir.arg_cmp(rhs.dir) != Ordering::Less {
            i64::from(lower)
        } else if lower {
            0
        } else {
            -1
        };
        Angle { dir, turns: self.turns - rhs.turns + correction }
    }
}

impl Add for Angle {
    type Output = Angle;

    fn add(self, rhs: Angle) -> Angle {
        self - (-rhs)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.turns == 0 {
            write!(f, "{}", self.dir)
        } else {
            write!(f, "{};{}", self.dir, self.turns)
        }
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, AngleError> {
        let err = || AngleError::Literal(s.to_string());
        let (vec, turns) = match s.split_once(';') {
            Some((v, n)) => (v, n.trim().parse::<i64>().map_err(|_| err())?),
            None => (s, 0),
        };
        let (x, y) = parse_pair(vec).map_err(|_| err())?;
        let dir = Direction::new(x, y).map_err(|e| match e {
            AngleError::ZeroVector => AngleError::ZeroVector,
            _ => err(),
        })?;
        Ok(Angle { dir, turns })
    }
}

/// Canonical angle of an integer vector: primitive direction, zero turns.
pub fn direction_angle(x: i64, y: i64) -> Result<Angle, AngleError> {
    Angle::from_vector(x, y)
}

/// Total order on angle values.
pub fn angle_compare(a: Angle, b: Angle) -> Ordering {
    a.cmp(&b)
}

/// `#{ m ∈ ℤ : Arg(theta) + 2πm ∈ [lo, hi] }`, endpoints inclusive.
///
/// Only the direction of `theta` matters; its turn count is absorbed by `m`.
pub fn count_lattice(theta: Direction, lo: Angle, hi: Angle) -> u64 {
    if lo > hi {
        return 0;
    }
    let first = if theta.arg_cmp(lo.dir) != Ordering::Less {
        lo.turns
    } else {
        lo.turns + 1
    };
    let last = if theta.arg_cmp(hi.dir) != Ordering::Greater {
        hi.turns
    } else {
        hi.turns - 1
    };
    if last < first {
        0
    } else {
        (last - first + 1) as u64
    }
}

/// All angles `Arg(theta) + 2πm` inside `[lo, hi]`, ascending.
pub fn lattice_points(theta: Direction, lo: Angle, hi: Angle) -> Vec<Angle> {
    if lo > hi {
        return Vec::new();
    }
    let first = if theta.arg_cmp(lo.dir) != Ordering::Less {
        lo.turns
    } else {
        lo.turns + 1
    };
    let n = count_lattice(theta, lo, hi) as i64;
    (first..first + n).map(|t| Angle::new(theta, t)).collect()
}
