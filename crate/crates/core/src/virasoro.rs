//! Central charge, conformal weights and Kac-label symmetries at `c_{p,q}`.

use std::fmt;

use num::integer::gcd;
use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::exactnum::Rat;
use crate::{Error, Result};

/// A coprime pair `p, q >= 2` fixing the central charge `c_{p,q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    p: i64,
    q: i64,
}

impl Params {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::InvalidParams {
                p,
                q,
                reason: "p and q must both be at least 2",
            });
        }
        if gcd(p, q) != 1 {
            return Err(Error::InvalidParams {
                p,
                q,
                reason: "p and q must be coprime",
            });
        }
        Ok(Params { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `(-1)^{pq}` as an integer.
    pub fn sign_pq(&self) -> i64 {
        if (self.p * self.q) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The pairs used throughout the test suites.
    pub fn test_set() -> Vec<Params> {
        [(2, 3), (3, 4), (2, 5), (3, 5), (4, 5)]
            .into_iter()
            .map(|(p, q)| Params::new(p, q).expect("coprime test pair"))
            .collect()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// A Kac label `(r, s)` with `r, s >= 1`.
///
/// Serialized as the two-element array `[r, s]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct VirLabel {
    r: i64,
    s: i64,
}

impl VirLabel {
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if r < 1 || s < 1 {
            return Err(Error::InvalidLabel { r, s });
        }
        Ok(VirLabel { r, s })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }
}

impl TryFrom<(i64, i64)> for VirLabel {
    type Error = Error;
    fn try_from((r, s): (i64, i64)) -> Result<Self> {
        VirLabel::new(r, s)
    }
}

impl From<VirLabel> for (i64, i64) {
    fn from(l: VirLabel) -> Self {
        (l.r, l.s)
    }
}

impl fmt::Display for VirLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// Shorthand for labels built from formulas that are positive by construction.
pub(crate) fn lbl(r: i64, s: i64) -> VirLabel {
    VirLabel::new(r, s).unwrap_or_else(|_| panic!("label ({r},{s}) out of range"))
}

/// A module named by its label: a simple module `L_{r,s}`, a Kac module
/// `K_{r,s}`, or the contragredient `K'_{1,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "label")]
pub enum ObjLabel {
    SimpleL(VirLabel),
    KacK(VirLabel),
    KacDualK11,
}

impl ObjLabel {
    pub fn simple(r: i64, s: i64) -> Result<Self> {
        Ok(ObjLabel::SimpleL(VirLabel::new(r, s)?))
    }

    pub fn kac(r: i64, s: i64) -> Result<Self> {
        Ok(ObjLabel::KacK(VirLabel::new(r, s)?))
    }

    /// `L_n`: `K'_{1,1}` for `n = 0`, `L_{(n+2)p-1,1}` otherwise.
    pub fn l_n(params: &Params, n: u32) -> Self {
        if n == 0 {
            ObjLabel::KacDualK11
        } else {
            ObjLabel::SimpleL(lbl((i64::from(n) + 2) * params.p - 1, 1))
        }
    }

    /// Inverse of [`ObjLabel::l_n`], comparing simple labels up to isomorphism.
    pub fn ln_index(&self, params: &Params) -> Option<u32> {
        match self {
            ObjLabel::KacDualK11 => Some(0),
            ObjLabel::KacK(_) => None,
            ObjLabel::SimpleL(l) => {
                let c = canonical_label(params, *l);
                // L_{(n+2)p-1,1} is already canonical
                if c.s == 1 && (c.r + 1) % params.p == 0 && c.r + 1 >= 3 * params.p {
                    u32::try_from((c.r + 1) / params.p - 2).ok()
                } else {
                    None
                }
            }
        }
    }

    /// Lowest conformal weight; `K'_{1,1}` has weight 0.
    pub fn lowest_weight(&self, params: &Params) -> Rat {
        match self {
            ObjLabel::SimpleL(l) | ObjLabel::KacK(l) => conformal_weight(params, *l),
            ObjLabel::KacDualK11 => Rat::zero(),
        }
    }

    /// Identity up to isomorphism: simple labels are canonicalized, Kac labels
    /// are not (distinct Kac labels can share a lowest weight).
    pub fn canonical(&self, params: &Params) -> ObjLabel {
        match self {
            ObjLabel::SimpleL(l) => ObjLabel::SimpleL(canonical_label(params, *l)),
            other => *other,
        }
    }
}

impl fmt::Display for ObjLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjLabel::SimpleL(l) => write!(f, "L_{{{},{}}}", l.r, l.s),
            ObjLabel::KacK(l) => write!(f, "K_{{{},{}}}", l.r, l.s),
            ObjLabel::KacDualK11 => f.write_str("K'_{1,1}"),
        }
    }
}

/// `c_{p,q} = 1 - 6(p-q)^2/(pq)`.
pub fn central_charge(params: &Params) -> Rat {
    let (p, q) = (params.p, params.q);
    Rat::one() - Rat::new(6 * (p - q) * (p - q), p * q)
}

/// `h_{r,s}` for arbitrary integers; the symmetry moves pass through
/// non-positive labels.
pub fn weight(params: &Params, r: i64, s: i64) -> Rat {
    let (p, q) = (i128::from(params.p), i128::from(params.q));
    let (r, s) = (i128::from(r), i128::from(s));
    // over the common denominator 4pq
    let numer = (|| {
        let a = r.checked_mul(r)?.checked_sub(1)?.checked_mul(q * q)?;
        let b = r.checked_mul(s)?.checked_sub(1)?.checked_mul(2 * p * q)?;
        let c = s.checked_mul(s)?.checked_sub(1)?.checked_mul(p * p)?;
        a.checked_sub(b)?.checked_add(c)
    })();
    match numer {
        Some(n) => Rat::from_big(BigInt::from(n), BigInt::from(4 * p * q)),
        None => {
            let big = |x: i128| Rat::from(BigInt::from(x));
            let (rb, sb) = (big(r), big(s));
            (&rb * &rb - 1) * big(q) / big(4 * p) - (&rb * &sb - 1) / 2 + (&sb * &sb - 1) * big(p) / big(4 * q)
        }
    }
}

/// Lowest conformal weight `h_{r,s}` of `L_{r,s}`.
pub fn conformal_weight(params: &Params, label: VirLabel) -> Rat {
    weight(params, label.r, label.s)
}

fn is_canonical(params: &Params, r: i64, s: i64) -> bool {
    r >= 1 && (1..=params.q).contains(&s) && params.q * r >= params.p * s
}

/// The unique representative `(r*, s*)` with `r* >= 1`, `1 <= s* <= q` and
/// `q r* >= p s*` in the orbit of `(r, s)` under `(r,s) -> (r+kp, s+kq)` and
/// `(r,s) -> (-r,-s)`.
///
/// Every orbit element is `(±r + kp, ±s + kq)`; the search runs over both
/// signs and a window of `k` wide enough to bring `s` into `[1, q]`.
pub fn canonical_label(params: &Params, label: VirLabel) -> VirLabel {
    let (p, q) = (params.p, params.q);
    let reach = label.s / q + 2;
    let mut found: Option<(i64, i64)> = None;
    for sign in [1, -1] {
        for k in -reach..=reach {
            let (r, s) = (sign * label.r + k * p, sign * label.s + k * q);
            if is_canonical(params, r, s) {
                match found {
                    None => found = Some((r, s)),
                    Some(prev) => assert_eq!(prev, (r, s), "two canonical representatives for {label}"),
                }
            }
        }
    }
    let (r, s) = found.unwrap_or_else(|| panic!("no canonical representative for {label}"));
    lbl(r, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(p: i64, q: i64) -> Params {
        Params::new(p, q).unwrap()
    }

    #[test]
    fn huge_labels_fall_back_to_big_arithmetic() {
        let params = pq(3, 5);
        for (r, s) in [(i64::MAX / 2, 7), (3, i64::MAX / 3), (i64::MAX, i64::MAX)] {
            // ((qr - ps)^2 - (p - q)^2) / 4pq
            let (rb, sb) = (BigInt::from(r), BigInt::from(s));
            let d: BigInt = &rb * 5 - &sb * 3;
            let expect = Rat::from_big(&d * &d - 4, BigInt::from(60));
            assert_eq!(weight(&params, r, s), expect);
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(Params::new(2, 4).is_err());
        assert!(Params::new(1, 3).is_err());
        assert!(Params::new(3, 3).is_err());
        assert!(Params::new(3, 5).is_ok());
    }

    #[test]
    fn rejects_nonpositive_labels() {
        assert_eq!(VirLabel::new(0, 1), Err(Error::InvalidLabel { r: 0, s: 1 }));
        assert!(VirLabel::new(1, -2).is_err());
        assert!(serde_json_label("[0,3]").is_err());
    }

    fn serde_json_label(s: &str) -> Result<VirLabel, serde_json::Error> {
        serde_json::from_str(s)
    }

    #[test]
    fn central_charge_examples() {
        assert_eq!(central_charge(&pq(2, 3)), Rat::zero());
        assert_eq!(central_charge(&pq(3, 4)), Rat::new(1, 2));
        assert_eq!(central_charge(&pq(2, 5)), Rat::new(-22, 5));
    }

    #[test]
    fn weight_examples() {
        let p = pq(2, 3);
        assert_eq!(conformal_weight(&p, lbl(1, 1)), Rat::zero());
        assert_eq!(conformal_weight(&p, lbl(7, 1)), Rat::from(15));
        assert_eq!(conformal_weight(&p, lbl(1, 5)), Rat::from(2));
        assert_eq!(conformal_weight(&p, lbl(3, 1)), Rat::from(2));
    }

    #[test]
    fn canonical_examples() {
        let p = pq(2, 3);
        assert_eq!(canonical_label(&p, lbl(1, 1)), lbl(1, 1));
        assert_eq!(canonical_label(&p, lbl(1, 5)), lbl(3, 1));
        assert_eq!(canonical_label(&p, lbl(7, 1)), canonical_label(&p, lbl(1, 11)));
        assert_eq!(canonical_label(&p, lbl(7, 1)), lbl(7, 1));
    }

    #[test]
    fn canonical_is_idempotent_and_weight_preserving() {
        for params in Params::test_set() {
            for r in 1..=30 {
                for s in 1..=30 {
                    let l = lbl(r, s);
                    let c = canonical_label(&params, l);
                    assert!(is_canonical(&params, c.r, c.s));
                    assert_eq!(canonical_label(&params, c), c);
                    assert_eq!(conformal_weight(&params, c), conformal_weight(&params, l));
                }
            }
        }
    }

    #[test]
    fn symmetry_identities() {
        for params in Params::test_set() {
            let (p, q) = (params.p(), params.q());
            for r in 1..=50 {
                for s in 1..=50 {
                    let h = weight(&params, r, s);
                    assert_eq!(h, weight(&params, r + p, s + q));
                    assert_eq!(h, weight(&params, -r, -s));
                }
            }
            for n in 1..=20 {
                assert_eq!(weight(&params, 2 * n * p - 1, 1), Rat::from((n * p - 1) * (n * q - 1)));
                assert_eq!(weight(&params, n * p - 1, 1), Rat::new((n * p - 2) * (n * q - 2), 4));
            }
        }
    }

    #[test]
    fn ln_notation_roundtrip() {
        let p = pq(3, 5);
        for n in 0..10 {
            assert_eq!(ObjLabel::l_n(&p, n).ln_index(&p), Some(n));
        }
        assert_eq!(ObjLabel::simple(1, 1).unwrap().ln_index(&p), None);
        assert_eq!(ObjLabel::simple(2 * 3 - 1, 1).unwrap().ln_index(&p), None);
        // L_{1,nq-1} is another name for L_{np-1,1}
        assert_eq!(ObjLabel::simple(1, 3 * 5 - 1).unwrap().ln_index(&p), Some(1));
    }

    #[test]
    fn obj_label_json_shape() {
        let s = serde_json::to_string(&ObjLabel::simple(7, 1).unwrap()).unwrap();
        assert_eq!(s, r#"{"kind":"SimpleL","label":[7,1]}"#);
        let s = serde_json::to_string(&ObjLabel::KacDualK11).unwrap();
        assert_eq!(s, r#"{"kind":"KacDualK11"}"#);
        let back: ObjLabel = serde_json::from_str(r#"{"kind":"KacK","label":[3,5]}"#).unwrap();
        assert_eq!(back, ObjLabel::kac(3, 5).unwrap());
    }
}
