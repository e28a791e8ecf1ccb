use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::Rat;

/// A root of unity `e^{iπ·exp}` with `exp` a rational reduced into `[0, 2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "PhaseRepr", into = "PhaseRepr")]
pub struct Phase {
    exponent: Rat,
}

#[derive(Serialize, Deserialize)]
struct PhaseRepr {
    exp: Rat,
}

impl From<Phase> for PhaseRepr {
    fn from(p: Phase) -> Self {
        PhaseRepr { exp: p.exponent }
    }
}

impl From<PhaseRepr> for Phase {
    fn from(r: PhaseRepr) -> Self {
        Phase::new(r.exp)
    }
}

impl Phase {
    pub fn new(exponent: Rat) -> Self {
        Phase {
            exponent: exponent.rem_euclid(2),
        }
    }

    pub fn one() -> Self {
        Phase::new(Rat::zero())
    }

    pub fn minus_one() -> Self {
        Phase::new(Rat::one())
    }

    /// `+1` or `-1` as a phase.
    pub fn sign(negative: bool) -> Self {
        if negative {
            Phase::minus_one()
        } else {
            Phase::one()
        }
    }

    pub fn exponent(&self) -> &Rat {
        &self.exponent
    }

    pub fn pow(&self, k: i64) -> Phase {
        Phase::new(&self.exponent * k)
    }

    pub fn inverse(&self) -> Phase {
        self.pow(-1)
    }

    /// `e^{iπ·multiple·h}`; `multiple = 2` gives the twist `e^{2πi h}`.
    pub fn from_weight(h: &Rat, multiple: i64) -> Phase {
        Phase::new(h * multiple)
    }

    pub fn is_one(&self) -> bool {
        self.exponent.is_zero()
    }

    /// The value as a rational when it is real, i.e. `±1`.
    pub fn as_real(&self) -> Option<Rat> {
        if self.exponent.is_zero() {
            Some(Rat::one())
        } else if self.exponent.is_one() {
            Some(Rat::from(-1))
        } else {
            None
        }
    }

    /// Multiplicative order: `2·den` unless the reduced numerator is even.
    pub fn order(&self) -> u64 {
        use num::{Integer, ToPrimitive};
        if self.exponent.is_zero() {
            return 1;
        }
        let two_den = self.exponent.denom() * 2u32;
        let g = self.exponent.numer().gcd(&two_den);
        (two_den / g).to_u64().expect("order fits in u64")
    }

    pub fn denom_divides(&self, n: i64) -> bool {
        self.exponent.denom_divides(n)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::new(self.exponent + rhs.exponent)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul<&Phase> for &Phase {
    type Output = Phase;
    fn mul(self, rhs: &Phase) -> Phase {
        Phase::new(&self.exponent + &rhs.exponent)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(iπ·{})", self.exponent)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Free-function forms of the phase operations.
pub fn phase_mul(a: &Phase, b: &Phase) -> Phase {
    a * b
}

pub fn phase_pow(a: &Phase, k: i64) -> Phase {
    a.pow(k)
}

pub fn phase_from_weight(h: &Rat, multiple: i64) -> Phase {
    Phase::from_weight(h, multiple)
}
