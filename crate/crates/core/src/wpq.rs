//! Truncated Virasoro (and `PSL_2 × Virasoro`) decompositions of the triplet
//! algebra `W_{p,q}`, its contragredient `W'_{p,q}`, and its maximal ideal
//! `I_{p,q}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::ensure;
use crate::exactnum::Rat;
use crate::kacmod::{kac_length2_seq, Length2Family, Middle};
use crate::virasoro::{canonical_label, conformal_weight, lbl, weight, ObjLabel, Params, VirLabel};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedEntry {
    /// Highest weight `2n` of the `PSL_2` multiplicity space `V_{2n}`, when
    /// the decomposition is equivariant.
    pub psl2_label: Option<u32>,
    pub multiplicity: u32,
    pub obj: ObjLabel,
    pub lowest_weight: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDecomp {
    pub entries: Vec<GradedEntry>,
    pub n_max: u32,
}

impl GradedDecomp {
    pub fn total_multiplicity(&self) -> u32 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Composition factors with multiplicity; `K_{1,1}` and `K'_{1,1}` are
    /// expanded through their length-2 sequences.
    pub fn composition_factors(&self, params: &Params) -> Result<BTreeMap<VirLabel, u32>> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            let factors = match e.obj {
                ObjLabel::SimpleL(l) => vec![l],
                ObjLabel::KacK(l) if l == lbl(1, 1) => expand(params, Length2Family::K11)?,
                ObjLabel::KacDualK11 => expand(params, Length2Family::K11Dual)?,
                ObjLabel::KacK(_) => {
                    return Err(Error::Unsupported(format!("composition factors of {}", e.obj)))
                }
            };
            for f in factors {
                *out.entry(canonical_label(params, f)).or_insert(0) += e.multiplicity;
            }
        }
        Ok(out)
    }
}

fn expand(params: &Params, which: Length2Family) -> Result<Vec<VirLabel>> {
    let seq = kac_length2_seq(params, which)?;
    let simple = |o: ObjLabel| match o {
        ObjLabel::SimpleL(l) => Ok(l),
        other => Err(Error::Internal(format!("{other} is not simple"))),
    };
    debug_assert!(matches!(seq.mid, Middle::Object { .. }));
    let sub = seq.sub.ok_or_else(|| Error::Internal("length-2 sequence without a submodule".into()))?;
    Ok(vec![simple(sub)?, simple(seq.quot)?])
}

fn l_summand(params: &Params, n: i64, equivariant: bool) -> GradedEntry {
    let label = lbl(2 * n * params.p() - 1, 1);
    let mult = u32::try_from(2 * n - 1).expect("n >= 1");
    GradedEntry {
        psl2_label: equivariant.then_some(mult - 1),
        multiplicity: mult,
        obj: ObjLabel::SimpleL(label),
        lowest_weight: conformal_weight(params, label),
    }
}

fn unit_entry(obj: ObjLabel, equivariant: bool) -> GradedEntry {
    GradedEntry {
        psl2_label: equivariant.then_some(0),
        multiplicity: 1,
        obj,
        lowest_weight: Rat::zero(),
    }
}

fn build(params: &Params, n_max: u32, unit: ObjLabel, equivariant: bool) -> Result<GradedDecomp> {
    ensure!(n_max >= 2, "truncation needs n_max >= 2, got {n_max}");
    let mut entries = vec![unit_entry(unit, equivariant)];
    entries.extend((2..=i64::from(n_max)).map(|n| l_summand(params, n, equivariant)));
    Ok(GradedDecomp { entries, n_max })
}

/// `K_{1,1} ⊕ ⊕_{n>=2} (2n-1)·L_{2np-1,1}`.
pub fn decompose_wpq(params: &Params, n_max: u32) -> Result<GradedDecomp> {
    build(params, n_max, ObjLabel::KacK(lbl(1, 1)), false)
}

/// `V_0 ⊗ K_{1,1} ⊕ ⊕_{n>=2} V_{2n-2} ⊗ L_{2np-1,1}`.
pub fn decompose_wpq_equivariant(params: &Params, n_max: u32) -> Result<GradedDecomp> {
    build(params, n_max, ObjLabel::KacK(lbl(1, 1)), true)
}

/// `K'_{1,1}` in place of `K_{1,1}`; `forgetful` drops the `PSL_2` labels.
pub fn decompose_wprime(params: &Params, n_max: u32, forgetful: bool) -> Result<GradedDecomp> {
    build(params, n_max, ObjLabel::KacDualK11, !forgetful)
}

/// `⊕_{n>=1} (2n-1)·L_{2np-1,1}`.
pub fn decompose_ideal(params: &Params, n_max: u32) -> Result<GradedDecomp> {
    ensure!(n_max >= 1, "truncation needs n_max >= 1, got {n_max}");
    let entries = (1..=i64::from(n_max)).map(|n| l_summand(params, n, false)).collect();
    Ok(GradedDecomp { entries, n_max })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct O0Row {
    pub n: u32,
    pub difference: Rat,
    pub holds: bool,
}

/// `h_{1,2nq-2} - h_{1,2}` for `2 <= n <= n_max`; `holds` records that the
/// difference is the integer `(np-1)(nq-2)`.
pub fn o0_weight_identity(params: &Params, n_max: u32) -> Result<Vec<O0Row>> {
    ensure!(n_max >= 2, "o0 check needs n_max >= 2, got {n_max}");
    let (p, q) = (params.p(), params.q());
    Ok((2..=n_max)
        .map(|n| {
            let ni = i64::from(n);
            let difference = weight(params, 1, 2 * ni * q - 2) - weight(params, 1, 2);
            let holds = difference.is_integer() && difference == Rat::from((ni * p - 1) * (ni * q - 2));
            O0Row { n, difference, holds }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSeqCheck {
    pub n_max: u32,
    pub algebra_factors: BTreeMap<String, u32>,
    pub ideal_factors: BTreeMap<String, u32>,
    pub quotient: ObjLabel,
    pub balanced: bool,
}

/// Checks `[W_{p,q}] = [I_{p,q}] + [L_{1,1}]` on composition factors of the
/// truncations at `n_max`.
pub fn exact_sequence_check(params: &Params, n_max: u32) -> Result<ExactSeqCheck> {
    let w = decompose_wpq(params, n_max)?.composition_factors(params)?;
    let i = decompose_ideal(params, n_max)?.composition_factors(params)?;
    let mut expected = i.clone();
    *expected.entry(lbl(1, 1)).or_insert(0) += 1;
    let show = |m: &BTreeMap<VirLabel, u32>| {
        m.iter()
            .map(|(l, c)| (ObjLabel::SimpleL(*l).to_string(), *c))
            .collect()
    };
    Ok(ExactSeqCheck {
        n_max,
        balanced: w == expected,
        algebra_factors: show(&w),
        ideal_factors: show(&i),
        quotient: ObjLabel::SimpleL(lbl(1, 1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(p: i64, q: i64) -> Params {
        Params::new(p, q).unwrap()
    }

    fn summary(d: &GradedDecomp) -> Vec<(u32, String, Rat)> {
        d.entries
            .iter()
            .map(|e| (e.multiplicity, e.obj.to_string(), e.lowest_weight.clone()))
            .collect()
    }

    #[test]
    fn wpq_at_2_3() {
        let d = decompose_wpq(&pq(2, 3), 3).unwrap();
        assert_eq!(
            summary(&d),
            vec![
                (1, "K_{1,1}".into(), Rat::zero()),
                (3, "L_{7,1}".into(), Rat::from(15)),
                (5, "L_{11,1}".into(), Rat::from(40)),
            ]
        );
        assert_eq!(decompose_wpq(&pq(2, 3), 2).unwrap().entries.len(), 2);
        assert!(decompose_wpq(&pq(2, 3), 1).is_err());
    }

    #[test]
    fn equivariant_labels() {
        let d = decompose_wpq_equivariant(&pq(2, 3), 4).unwrap();
        assert_eq!(d.entries[0].psl2_label, Some(0));
        assert_eq!(d.entries[1].psl2_label, Some(2));
        assert_eq!(d.entries[1].lowest_weight, Rat::from(15));
        for e in &d.entries {
            assert_eq!(e.multiplicity, e.psl2_label.unwrap() + 1);
        }
        assert_eq!(d.entries.iter().filter(|e| e.psl2_label == Some(0)).count(), 1);
    }

    #[test]
    fn ideal_at_2_3() {
        let d = decompose_ideal(&pq(2, 3), 2).unwrap();
        assert_eq!(
            summary(&d),
            vec![(1, "L_{3,1}".into(), Rat::from(2)), (3, "L_{7,1}".into(), Rat::from(15))]
        );
        assert_eq!(decompose_ideal(&pq(2, 3), 1).unwrap().entries.len(), 1);
        assert!(decompose_ideal(&pq(2, 3), 0).is_err());
    }

    #[test]
    fn wprime_variants() {
        let params = pq(3, 4);
        let d = decompose_wprime(&params, 2, false).unwrap();
        assert_eq!(d.entries[0].obj, ObjLabel::KacDualK11);
        assert_eq!(d.entries[1].psl2_label, Some(2));
        assert_eq!(d.entries[1].obj, ObjLabel::simple(11, 1).unwrap());
        assert_eq!(d.entries[1].lowest_weight, Rat::from(35));
        let eq = decompose_wpq_equivariant(&params, 6).unwrap();
        let wp = decompose_wprime(&params, 6, false).unwrap();
        assert_eq!(eq.entries[1..], wp.entries[1..]);
        let forget = decompose_wprime(&params, 5, true).unwrap();
        assert!(forget.entries.iter().all(|e| e.psl2_label.is_none()));
        assert_eq!(forget.entries.iter().map(|e| e.multiplicity).collect::<Vec<_>>(), vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn o0_examples() {
        let rows = o0_weight_identity(&pq(2, 3), 2).unwrap();
        assert_eq!(rows[0].difference, Rat::from(12));
        assert!(rows[0].holds);
        let rows = o0_weight_identity(&pq(3, 4), 2).unwrap();
        assert_eq!(rows[0].difference, Rat::from(30));
        for params in Params::test_set() {
            assert!(o0_weight_identity(&params, 20).unwrap().iter().all(|r| r.holds && !r.difference.is_negative()));
        }
    }

    #[test]
    fn bookkeeping() {
        for params in Params::test_set() {
            for n in 2..=8 {
                assert!(exact_sequence_check(&params, n).unwrap().balanced);
            }
            // L_{2p-1,1} sits in K_{1,1} as its socle.
            let socle = kac_length2_seq(&params, Length2Family::K11).unwrap().sub.unwrap();
            let first = &decompose_ideal(&params, 1).unwrap().entries[0];
            assert_eq!(first.obj, socle);
            assert_eq!(first.lowest_weight, Rat::from((params.p() - 1) * (params.q() - 1)));
        }
    }

    #[test]
    fn truncations_are_prefixes() {
        let params = pq(2, 5);
        for n in 2..10 {
            let a = decompose_wpq(&params, n).unwrap();
            let b = decompose_wpq(&params, n + 1).unwrap();
            assert_eq!(a.entries[..], b.entries[..a.entries.len()]);
            assert_eq!(a.total_multiplicity(), n * n);
        }
    }
}
