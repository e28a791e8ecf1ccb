use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::{Poly, Rat};

/// Element of the rational-function field `Q(t)` in one formal parameter.
///
/// Stored as `numer / denom` with `gcd(numer, denom) = 1` and `denom` monic, so
/// structural equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    numer: Poly,
    denom: Poly,
}

impl ParamScalar {
    /// Returns `None` when `denom` is the zero polynomial.
    pub fn new(numer: Poly, denom: Poly) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        if numer.is_zero() {
            return Some(ParamScalar::zero());
        }
        let g = Poly::gcd(&numer, &denom);
        let (numer, _) = numer.div_rem(&g);
        let (denom, _) = denom.div_rem(&g);
        let lc = denom.leading().cloned().expect("nonzero denominator");
        let inv = lc.recip().expect("nonzero leading coefficient");
        Some(ParamScalar {
            numer: numer.scale(&inv),
            denom: denom.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        ParamScalar {
            numer: Poly::zero(),
            denom: Poly::one(),
        }
    }

    pub fn one() -> Self {
        ParamScalar::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        ParamScalar {
            numer: Poly::constant(c),
            denom: Poly::one(),
        }
    }

    /// The formal parameter `t`.
    pub fn t() -> Self {
        ParamScalar {
            numer: Poly::t(),
            denom: Poly::one(),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        let d = self.denom.as_constant()?;
        Some(self.numer.as_constant()? / d)
    }

    pub fn recip(&self) -> Option<Self> {
        ParamScalar::new(self.denom.clone(), self.numer.clone())
    }

    /// Value at `t = t0`; `None` when the denominator vanishes there.
    pub fn eval(&self, t0: &Rat) -> Option<Rat> {
        let d = self.denom.eval(t0);
        if d.is_zero() {
            None
        } else {
            Some(self.numer.eval(t0) / d)
        }
    }
}

impl From<Rat> for ParamScalar {
    fn from(c: Rat) -> Self {
        ParamScalar::constant(c)
    }
}

impl Add<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let numer = &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom);
        let denom = &self.denom * &rhs.denom;
        ParamScalar::new(numer, denom).expect("product of nonzero denominators")
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}

impl Sub<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        self + &(-rhs)
    }
}

impl Mul<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let numer = &self.numer * &rhs.numer;
        let denom = &self.denom * &rhs.denom;
        ParamScalar::new(numer, denom).expect("product of nonzero denominators")
    }
}

impl Mul<&Rat> for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &Rat) -> ParamScalar {
        self * &ParamScalar::constant(rhs.clone())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    /// Panics on division by the zero function.
    fn div(self, rhs: &ParamScalar) -> ParamScalar {
        self * &rhs.recip().expect("division by zero rational function")
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.denom.as_constant() {
            // monic constant denominator is 1
            debug_assert!(c.is_one());
            return write!(f, "{}", self.numer);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.numer), wrap(&self.denom))
    }
}

impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ParamScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
