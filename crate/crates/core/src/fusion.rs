//! Fusion products: the `L_{np-1,1}` family, the sl2-type fusion ring on
//! `L_0, L_1, ...`, and an independent Weyl-character oracle for the
//! Clebsch-Gordan rule.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::ensure;
use crate::virasoro::{lbl, ObjLabel, Params, VirLabel};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompEntry {
    pub mult: u32,
    pub obj: ObjLabel,
}

/// Formal sum of modules with positive multiplicities; objects are kept
/// pairwise distinct up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DecompList {
    pub entries: Vec<DecompEntry>,
}

impl DecompList {
    pub fn new() -> Self {
        DecompList::default()
    }

    pub fn single(obj: ObjLabel) -> Self {
        DecompList {
            entries: vec![DecompEntry { mult: 1, obj }],
        }
    }

    /// Add `mult` copies of `obj`, merging with an isomorphic entry.
    pub fn add(&mut self, params: &Params, mult: u32, obj: ObjLabel) {
        if mult == 0 {
            return;
        }
        let key = obj.canonical(params);
        match self.entries.iter_mut().find(|e| e.obj.canonical(params) == key) {
            Some(e) => e.mult += mult,
            None => self.entries.push(DecompEntry { mult, obj }),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.entries.iter().map(|e| e.mult).sum()
    }

    /// Entries in a fixed order: `K'_{1,1}` first, then simple modules, then
    /// Kac modules, each by label.
    pub fn sorted(mut self, params: &Params) -> Self {
        self.entries.sort_by_key(|e| {
            let rank = match e.obj {
                ObjLabel::KacDualK11 => 0,
                ObjLabel::SimpleL(_) => 1,
                ObjLabel::KacK(_) => 2,
            };
            (rank, e.obj.canonical(params))
        });
        self
    }
}

/// `L_{mp-1,1} ⊠ L_{np-1,1}` for `m, n >= 2`.
pub fn fuse_l_family(params: &Params, m: i64, n: i64) -> Result<DecompList> {
    ensure!(m >= 2 && n >= 2, "fusion of L_{{mp-1,1}} needs m, n >= 2, got m={m}, n={n}");
    let p = params.p();
    let mut out = DecompList::new();
    if m != n {
        for i in ((m - n).abs() + 2..=m + n - 2).step_by(2) {
            out.add(params, 1, ObjLabel::SimpleL(lbl(i * p - 1, 1)));
        }
    } else {
        out.add(params, 1, ObjLabel::KacDualK11);
        for j in 2..n {
            out.add(params, 1, ObjLabel::SimpleL(lbl(2 * j * p - 1, 1)));
        }
    }
    Ok(out)
}

/// Channels `k` of `L_m ⊠ L_n`: `|m-n| <= k <= m+n`, `k ≡ m+n (mod 2)`.
pub fn fuse_c(m: u32, n: u32) -> Vec<u32> {
    (m.abs_diff(n)..=m + n).step_by(2).collect()
}

/// Laurent polynomial in `x` with non-negative integer coefficients, used as
/// an sl2 character.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CharPoly {
    coeffs: BTreeMap<i64, u64>,
}

impl CharPoly {
    /// `x^n + x^{n-2} + ... + x^{-n}`.
    pub fn irreducible(n: u32) -> Self {
        let n = i64::from(n);
        CharPoly {
            coeffs: (-n..=n).step_by(2).map(|d| (d, 1)).collect(),
        }
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut coeffs = BTreeMap::new();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &other.coeffs {
                *coeffs.entry(da + db).or_insert(0) += ca * cb;
            }
        }
        CharPoly { coeffs }
    }

    pub fn top_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(d, c)| self.coeffs.get(&-d) == Some(c))
    }

    pub fn dimension(&self) -> u64 {
        self.coeffs.values().sum()
    }

    /// Subtract `other` coefficientwise; `None` if a coefficient would go
    /// negative.
    fn checked_sub(&self, other: &CharPoly) -> Option<CharPoly> {
        let mut coeffs = self.coeffs.clone();
        for (d, c) in &other.coeffs {
            let slot = coeffs.get_mut(d)?;
            *slot = slot.checked_sub(*c)?;
            if *slot == 0 {
                coeffs.remove(d);
            }
        }
        Some(CharPoly { coeffs })
    }
}

/// Decompose `V_m ⊗ V_n` by multiplying characters and repeatedly removing
/// the irreducible character of the current top degree.
pub fn cg_oracle(m: u32, n: u32) -> Vec<u32> {
    let mut rest = CharPoly::irreducible(m).mul(&CharPoly::irreducible(n));
    let mut out = Vec::new();
    while let Some(top) = rest.top_degree() {
        let k = u32::try_from(top).expect("top degree of a symmetric character is >= 0");
        rest = rest
            .checked_sub(&CharPoly::irreducible(k))
            .expect("character of an sl2 module peels into irreducibles");
        out.push(k);
    }
    out.sort_unstable();
    out
}

/// Basis elements reachable by [`fusion_ring_product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum RingBasis {
    /// `L_{1,1}`
    Vacuum,
    /// `L_{2p-1,1}`, the socle of `K'_{1,1}` and the top of `K_{1,1}`.
    Socle,
    /// `L_n` in the uniform notation (`L_0 = K'_{1,1}`).
    Ln(u32),
}

fn classify(params: &Params, obj: &ObjLabel) -> Result<RingBasis> {
    if let Some(n) = obj.ln_index(params) {
        return Ok(RingBasis::Ln(n));
    }
    if let ObjLabel::SimpleL(l) = obj.canonical(params) {
        if l == lbl(1, 1) {
            return Ok(RingBasis::Vacuum);
        }
        if l == lbl(2 * params.p() - 1, 1) {
            return Ok(RingBasis::Socle);
        }
    }
    Err(Error::Unsupported(format!(
        "{obj} is outside the sl2-type fusion ring (K'_{{1,1}}, L_{{(n+2)p-1,1}}, L_{{1,1}}, L_{{2p-1,1}})"
    )))
}

fn basis_label(params: &Params, b: RingBasis) -> ObjLabel {
    match b {
        RingBasis::Vacuum => ObjLabel::SimpleL(lbl(1, 1)),
        RingBasis::Socle => ObjLabel::SimpleL(lbl(2 * params.p() - 1, 1)),
        RingBasis::Ln(n) => ObjLabel::l_n(params, n),
    }
}

fn basis_product(a: RingBasis, b: RingBasis) -> Vec<RingBasis> {
    use RingBasis::*;
    match (a, b) {
        (Vacuum, Vacuum) => vec![Vacuum],
        (Vacuum, _) | (_, Vacuum) => vec![],
        (Socle, Socle) => vec![Ln(0)],
        (Socle, Ln(n)) | (Ln(n), Socle) => vec![Ln(n)],
        (Ln(m), Ln(n)) => fuse_c(m, n).into_iter().map(Ln).collect(),
    }
}

/// Bilinear extension of the sl2-type fusion rules to formal sums.
///
/// `L_{1,1}` annihilates every object of the sl2-type subcategory, and
/// `L_{2p-1,1}` acts on it as the identity.
pub fn fusion_ring_product(params: &Params, a: &DecompList, b: &DecompList) -> Result<DecompList> {
    let lhs: Vec<(u32, RingBasis)> = a
        .entries
        .iter()
        .map(|e| Ok((e.mult, classify(params, &e.obj)?)))
        .collect::<Result<_>>()?;
    let rhs: Vec<(u32, RingBasis)> = b
        .entries
        .iter()
        .map(|e| Ok((e.mult, classify(params, &e.obj)?)))
        .collect::<Result<_>>()?;
    let mut acc: BTreeMap<RingBasis, u32> = BTreeMap::new();
    for (ma, ba) in &lhs {
        for (mb, bb) in &rhs {
            for k in basis_product(*ba, *bb) {
                *acc.entry(k).or_insert(0) += ma * mb;
            }
        }
    }
    let mut out = DecompList::new();
    for (b, mult) in acc {
        out.add(params, mult, basis_label(params, b));
    }
    Ok(out.sorted(params))
}

/// `K_{r,1} ⊠ K_{1,s} ≅ K_{r,s}`.
pub fn fuse_kr1_k1s(_params: &Params, r: i64, s: i64) -> Result<ObjLabel> {
    Ok(ObjLabel::KacK(VirLabel::new(r, s)?))
}

/// `L_n` as a one-term list.
pub fn ln(params: &Params, n: u32) -> DecompList {
    DecompList::single(ObjLabel::l_n(params, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(p: i64, q: i64) -> Params {
        Params::new(p, q).unwrap()
    }

    fn objs(d: &DecompList) -> Vec<ObjLabel> {
        d.entries.iter().map(|e| e.obj).collect()
    }

    #[test]
    fn l_family_examples() {
        let params = pq(3, 4);
        let p = 3;
        assert_eq!(objs(&fuse_l_family(&params, 2, 2).unwrap()), vec![ObjLabel::KacDualK11]);
        assert_eq!(
            objs(&fuse_l_family(&params, 3, 2).unwrap()),
            vec![ObjLabel::SimpleL(lbl(3 * p - 1, 1))]
        );
        assert_eq!(
            objs(&fuse_l_family(&params, 3, 3).unwrap()),
            vec![ObjLabel::KacDualK11, ObjLabel::SimpleL(lbl(4 * p - 1, 1))]
        );
        assert!(fuse_l_family(&params, 1, 3).is_err());
    }

    #[test]
    fn l_family_is_symmetric() {
        let params = pq(2, 5);
        for m in 2..9 {
            for n in 2..9 {
                assert_eq!(fuse_l_family(&params, m, n).unwrap(), fuse_l_family(&params, n, m).unwrap());
            }
        }
    }

    #[test]
    fn fuse_c_examples() {
        assert_eq!(fuse_c(1, 1), vec![0, 2]);
        assert_eq!(fuse_c(0, 5), vec![5]);
        assert_eq!(fuse_c(3, 4), vec![1, 3, 5, 7]);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(cg_oracle(1, 1), vec![0, 2]);
        assert_eq!(cg_oracle(2, 2), vec![0, 2, 4]);
        assert_eq!(cg_oracle(7, 0), vec![7]);
        assert_eq!(cg_oracle(3, 4), vec![1, 3, 5, 7]);
    }

    #[test]
    fn characters_are_symmetric() {
        for m in 0..8 {
            for n in 0..8 {
                let c = CharPoly::irreducible(m).mul(&CharPoly::irreducible(n));
                assert!(c.is_symmetric());
                assert_eq!(c.dimension(), u64::from((m + 1) * (n + 1)));
                assert_eq!(c.top_degree(), Some(i64::from(m + n)));
            }
        }
    }

    #[test]
    fn ring_product_examples() {
        let params = pq(2, 3);
        let vacuum = DecompList::single(ObjLabel::simple(1, 1).unwrap());
        let socle = DecompList::single(ObjLabel::simple(3, 1).unwrap());
        assert!(fusion_ring_product(&params, &vacuum, &socle).unwrap().is_zero());
        assert!(fusion_ring_product(&params, &vacuum, &ln(&params, 3)).unwrap().is_zero());
        assert_eq!(fusion_ring_product(&params, &socle, &socle).unwrap(), ln(&params, 0));

        let unit = ln(&params, 0);
        let l1 = DecompList::single(ObjLabel::simple(3 * 2 - 1, 1).unwrap());
        assert_eq!(fusion_ring_product(&params, &unit, &l1).unwrap(), l1);

        let a = fusion_ring_product(&params, &fusion_ring_product(&params, &ln(&params, 1), &ln(&params, 1)).unwrap(), &ln(&params, 2)).unwrap();
        let b = fusion_ring_product(&params, &ln(&params, 1), &fusion_ring_product(&params, &ln(&params, 1), &ln(&params, 2)).unwrap()).unwrap();
        assert_eq!(a, b);
        // (L0 + L2) L2 = L2 + (L0 + L2 + L4)
        assert_eq!(a.total_multiplicity(), 4);
    }

    #[test]
    fn ring_product_rejects_foreign_labels() {
        let params = pq(2, 3);
        let bad = DecompList::single(ObjLabel::kac(1, 2).unwrap());
        assert!(matches!(fusion_ring_product(&params, &bad, &ln(&params, 1)), Err(Error::Unsupported(_))));
        let bad = DecompList::single(ObjLabel::simple(1, 3).unwrap());
        assert!(fusion_ring_product(&params, &ln(&params, 1), &bad).is_err());
    }

    #[test]
    fn kr1_k1s() {
        let params = pq(2, 3);
        assert_eq!(fuse_kr1_k1s(&params, 1, 1).unwrap(), ObjLabel::kac(1, 1).unwrap());
        assert_eq!(fuse_kr1_k1s(&params, 3, 5).unwrap(), ObjLabel::kac(3, 5).unwrap());
        assert_eq!(fuse_kr1_k1s(&params, 1, 9).unwrap(), ObjLabel::kac(1, 9).unwrap());
        assert!(fuse_kr1_k1s(&params, 0, 9).is_err());
    }
}
