//! Closed real intervals used to carry enclosures through the inequality
//! right- and left-hand sides. Operations are monotone enclosures; no directed
//! rounding is attempted, the tolerances downstream absorb roundoff.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(
            lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Greater),
            "inverted interval [{lo}, {hi}]"
        );
        Self { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    /// A closed-form value with a small relative halo for roundoff.
    pub fn around(v: f64) -> Self {
        let w = 1e-12 * v.abs().max(1.0);
        Self {
            lo: v - w,
            hi: v + w,
        }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Clamp the lower end at zero; for quantities known to be nonnegative.
    pub fn nonneg(self) -> Self {
        Self {
            lo: self.lo.max(0.0),
            hi: self.hi.max(0.0),
        }
    }

    pub fn sqrt(self) -> Self {
        let s = self.nonneg();
        Self {
            lo: s.lo.sqrt(),
            hi: s.hi.sqrt(),
        }
    }

    /// Fourth root of a nonnegative quantity.
    pub fn root4(self) -> Self {
        self.sqrt().sqrt()
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn powi(self, n: u32) -> Self {
        let mut out = Self::point(1.0);
        for _ in 0..n {
            out = out * self;
        }
        out
    }

    pub fn scale(self, c: f64) -> Self {
        if c >= 0.0 {
            Self {
                lo: self.lo * c,
                hi: self.hi * c,
            }
        } else {
            Self {
                lo: self.hi * c,
                hi: self.lo * c,
            }
        }
    }

    pub fn max(self, other: Self) -> Self {
        Self {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn min(self, other: Self) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    pub fn abs(self) -> Self {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Self {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }
}

impl Add for Interval {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl Sub for Interval {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            lo: self.lo - rhs.hi,
            hi: self.hi - rhs.lo,
        }
    }
}

impl Neg for Interval {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        Self {
            lo: p.iter().copied().fold(f64::INFINITY, f64::min),
            hi: p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}
