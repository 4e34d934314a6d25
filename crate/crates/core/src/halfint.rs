//! Half-integer angular momenta stored exactly.
//!
//! Fine-structure quantum numbers (`j`, `m_j`) take values in `ℤ/2`.  Storing
//! twice the value in an `i32` keeps every comparison and selection rule
//! exact; floats only appear when a value finally enters a formula.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A half-integer, stored as twice its value.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Half(i32);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    /// Builds from twice the value: `from_twice(3)` is 3/2.
    pub const fn from_twice(twice: i32) -> Self {
        Half(twice)
    }

    /// Builds from an integer value.
    pub const fn from_int(n: i32) -> Self {
        Half(2 * n)
    }

    /// Twice the value, always an integer.
    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        Half(self.0.abs())
    }

    /// 2j+1, the multiplicity of a j-manifold.
    pub const fn multiplicity(self) -> i32 {
        self.0 + 1
    }

    /// Iterates m = -j, -j+1, ..., +j.
    pub fn projections(self) -> impl Iterator<Item = Half> {
        let j2 = self.0;
        (-j2..=j2).step_by(2).map(Half)
    }

    /// Parses "1/2", "3/2", "2", "-1/2", "+1/2".
    pub fn parse(s: &str) -> Option<Half> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return None;
            }
            num.trim().parse::<i32>().ok().map(Half)
        } else {
            s.parse::<i32>().ok().map(Half::from_int)
        }
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
