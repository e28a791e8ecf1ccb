//! Structural data of Virasoro Kac modules: length-2 exact sequences, the
//! `K_{1,2}`-fusion sequences, and the three-layer Loewy diagram of
//! `K_{mp-1,nq-1}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::ensure;
use crate::exactnum::Rat;
use crate::virasoro::{canonical_label, conformal_weight, lbl, ObjLabel, Params, VirLabel};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Splitting {
    Split,
    NonSplit,
    NotApplicable,
}

/// Middle term of a short exact sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Middle {
    Object { obj: ObjLabel },
    Fusion { left: ObjLabel, right: ObjLabel },
}

/// `0 -> sub -> mid -> quot -> 0`; `sub = None` stands for the zero module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSeq {
    pub sub: Option<ObjLabel>,
    pub mid: Middle,
    pub quot: ObjLabel,
    pub splits: Splitting,
}

/// Which length-2 Kac module to describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length2Family {
    /// `K_{mp+r,1}` with `m >= 0`, `1 <= r <= p-1`.
    Row { m: i64, r: i64 },
    /// `K_{1,nq+s}` with `n >= 0`, `1 <= s <= q-1`.
    Column { n: i64, s: i64 },
    K11,
    K11Dual,
}

fn simple(r: i64, s: i64) -> ObjLabel {
    ObjLabel::SimpleL(lbl(r, s))
}

fn kac(r: i64, s: i64) -> ObjLabel {
    ObjLabel::KacK(lbl(r, s))
}

pub fn kac_length2_seq(params: &Params, which: Length2Family) -> Result<ExactSeq> {
    let (p, q) = (params.p(), params.q());
    let seq = |sub: ObjLabel, mid: ObjLabel, quot: ObjLabel| ExactSeq {
        sub: Some(sub),
        mid: Middle::Object { obj: mid },
        quot,
        splits: Splitting::NonSplit,
    };
    match which {
        Length2Family::Row { m, r } => {
            ensure!(m >= 0 && (1..p).contains(&r), "row family needs m >= 0 and 1 <= r <= p-1, got m={m}, r={r}");
            Ok(seq(simple((m + 2) * p - r, 1), kac(m * p + r, 1), simple(m * p + r, 1)))
        }
        Length2Family::Column { n, s } => {
            ensure!(n >= 0 && (1..q).contains(&s), "column family needs n >= 0 and 1 <= s <= q-1, got n={n}, s={s}");
            Ok(seq(simple(1, (n + 2) * q - s), kac(1, n * q + s), simple(1, n * q + s)))
        }
        Length2Family::K11 => Ok(seq(simple(2 * p - 1, 1), kac(1, 1), simple(1, 1))),
        Length2Family::K11Dual => Ok(seq(simple(1, 1), ObjLabel::KacDualK11, simple(2 * p - 1, 1))),
    }
}

/// `0 -> K_{r,s-1} -> K_{1,2} ⊠ K_{r,s} -> K_{r,s+1} -> 0`, split iff `q ∤ s`.
/// `K_{r,0}` is taken to be zero.
pub fn k12_fusion_seq(params: &Params, r: i64, s: i64) -> Result<ExactSeq> {
    let here = ObjLabel::KacK(VirLabel::new(r, s)?);
    let sub = (s > 1).then(|| kac(r, s - 1));
    let splits = match sub {
        None => Splitting::NotApplicable,
        Some(_) if s % params.q() != 0 => Splitting::Split,
        Some(_) => Splitting::NonSplit,
    };
    Ok(ExactSeq {
        sub,
        mid: Middle::Fusion {
            left: kac(1, 2),
            right: here,
        },
        quot: kac(r, s + 1),
        splits,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layer {
    Top,
    Middle,
    Socle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoewyNode {
    /// `"L_r_s"` from the label as displayed.
    pub id: String,
    pub label: VirLabel,
    pub canonical: VirLabel,
    pub layer: Layer,
    pub weight: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoewyDiagram {
    pub params: Params,
    pub m: i64,
    pub n: i64,
    pub nodes: Vec<LoewyNode>,
    /// Directed edges `(from, to)` as indices into `nodes`, top towards socle.
    pub edges: Vec<(usize, usize)>,
}

impl LoewyDiagram {
    pub fn layer(&self, layer: Layer) -> impl Iterator<Item = &LoewyNode> {
        self.nodes.iter().filter(move |n| n.layer == layer)
    }

    pub fn layer_sizes(&self) -> (usize, usize, usize) {
        (
            self.layer(Layer::Top).count(),
            self.layer(Layer::Middle).count(),
            self.layer(Layer::Socle).count(),
        )
    }

    pub fn edge_ids(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.nodes[a].id.as_str(), self.nodes[b].id.as_str()))
            .collect()
    }

    pub fn contains(&self, label: VirLabel) -> bool {
        self.nodes.iter().any(|n| n.label == label)
    }

    /// Graphviz rendering: nodes ranked by layer, edges top to socle.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "digraph K_{}_{} {{\n  label=\"K_{{{},{}}} at (p,q)=({},{})\";\n  rankdir=TB;\n",
            self.m * self.params.p() - 1,
            self.n * self.params.q() - 1,
            self.m * self.params.p() - 1,
            self.n * self.params.q() - 1,
            self.params.p(),
            self.params.q()
        ));
        for layer in [Layer::Top, Layer::Middle, Layer::Socle] {
            out.push_str("  { rank=same;");
            for node in self.layer(layer) {
                out.push_str(&format!(" {};", node.id));
            }
            out.push_str(" }\n");
        }
        for node in &self.nodes {
            out.push_str(&format!(
                "  {} [label=\"L_{{{},{}}} (h={})\"];\n",
                node.id,
                node.label.r(),
                node.label.s(),
                node.weight
            ));
        }
        for (a, b) in self.edge_ids() {
            out.push_str(&format!("  {a} -> {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Loewy diagram of `K_{mp-1,nq-1}` for `m >= n >= 2`.
///
/// Layers: top `L_{ip-1,1}` (i = m-n+2, ..., m+n-2); middle `L_{1,iq+1}`
/// (i = m-n, ..., m+n-2) and `L_{jp+1,1}` (j = m-n+2, ..., m+n-2); socle
/// `L_{p-1,iq+1}` (i = m-n+1, ..., m+n-1); all indices in steps of 2.
///
/// A top node of index `i` points to the middle nodes of index `i-2` and `i`
/// (both kinds, where present); a middle node of index `i` points to the
/// socle nodes of index `i±1`.
pub fn kac_mm_nn_diagram(params: &Params, m: i64, n: i64) -> Result<LoewyDiagram> {
    ensure!(n >= 2, "diagram needs n >= 2, got n={n}");
    ensure!(m >= n, "diagram needs m >= n (swap the arguments), got m={m}, n={n}");
    let (p, q) = (params.p(), params.q());
    let lo = m - n;
    let hi = m + n - 2;

    let mut nodes = Vec::new();
    let mut push = |label: VirLabel, layer: Layer| {
        nodes.push(LoewyNode {
            id: format!("L_{}_{}", label.r(), label.s()),
            label,
            canonical: canonical_label(params, label),
            layer,
            weight: conformal_weight(params, label),
        });
        nodes.len() - 1
    };

    // (index, node) for each family, in display order
    let top: Vec<(i64, usize)> = (lo + 2..=hi)
        .step_by(2)
        .map(|i| (i, push(lbl(i * p - 1, 1), Layer::Top)))
        .collect();
    let mut mid_col = Vec::new();
    let mut mid_row = Vec::new();
    mid_col.push((lo, push(lbl(1, lo * q + 1), Layer::Middle)));
    for j in (lo + 2..=hi).step_by(2) {
        mid_row.push((j, push(lbl(j * p + 1, 1), Layer::Middle)));
        mid_col.push((j, push(lbl(1, j * q + 1), Layer::Middle)));
    }
    let socle: Vec<(i64, usize)> = (lo + 1..=hi + 1)
        .step_by(2)
        .map(|i| (i, push(lbl(p - 1, i * q + 1), Layer::Socle)))
        .collect();

    let mut edges = Vec::new();
    for &(i, t) in &top {
        for &(j, mnode) in mid_col.iter().chain(mid_row.iter()) {
            if j == i - 2 || j == i {
                edges.push((t, mnode));
            }
        }
    }
    for &(j, mnode) in mid_col.iter().chain(mid_row.iter()) {
        for &(i, snode) in &socle {
            if i == j - 1 || i == j + 1 {
                edges.push((mnode, snode));
            }
        }
    }
    edges.sort_unstable();

    Ok(LoewyDiagram {
        params: *params,
        m,
        n,
        nodes,
        edges,
    })
}

/// Families whose simple quotients are listed explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientFamily {
    /// Top layer of `K_{mp-1,nq-1}`.
    TopOfMmNn { m: i64, n: i64 },
    /// `K_{mp+1,nq-1}`.
    MpPlus1 { m: i64, n: i64 },
    /// `K_{mp-1,nq+1}`.
    MpMinus1NqPlus1 { m: i64, n: i64 },
    /// `K_{mp-1,(m-n)q+1}` with `m > n`.
    MpMinus1Shifted { m: i64, n: i64 },
}

pub fn simple_quotients(params: &Params, family: QuotientFamily) -> Result<Vec<VirLabel>> {
    let (p, q) = (params.p(), params.q());
    let needs_m_ge_n = |m: i64, n: i64| -> Result<()> {
        ensure!(m >= n && n >= 2, "need m >= n >= 2, got m={m}, n={n}");
        Ok(())
    };
    let out = match family {
        QuotientFamily::TopOfMmNn { m, n } => {
            needs_m_ge_n(m, n)?;
            (m - n + 2..=m + n - 2).step_by(2).map(|i| lbl(i * p - 1, 1)).collect()
        }
        QuotientFamily::MpPlus1 { m, n } => {
            needs_m_ge_n(m, n)?;
            (m - n + 2..=m + n - 2).step_by(2).map(|j| lbl(j * p + 1, 1)).collect()
        }
        QuotientFamily::MpMinus1NqPlus1 { m, n } => {
            needs_m_ge_n(m, n)?;
            let start = if m > n { m - n } else { 2 };
            (start..=m + n - 2).step_by(2).map(|i| lbl(1, i * q + 1)).collect()
        }
        QuotientFamily::MpMinus1Shifted { m, n } => {
            ensure!(m > n && n >= 1, "need m > n >= 1, got m={m}, n={n}");
            (n..=2 * m - n - 2).step_by(2).map(|i| lbl(1, i * q + 1)).collect()
        }
    };
    Ok(out)
}

/// Objects whose composition factors this module can list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSource {
    Object(ObjLabel),
    MmNn { m: i64, n: i64 },
}

/// Sorted multiset of canonical simple labels.
pub fn composition_factors(params: &Params, obj: FactorSource) -> Result<Vec<VirLabel>> {
    let (p, q) = (params.p(), params.q());
    let from_seq = |seq: ExactSeq| -> Vec<ObjLabel> { seq.sub.into_iter().chain([seq.quot]).collect() };
    let raw: Vec<ObjLabel> = match obj {
        FactorSource::MmNn { m, n } => kac_mm_nn_diagram(params, m, n)?
            .nodes
            .into_iter()
            .map(|node| ObjLabel::SimpleL(node.label))
            .collect(),
        FactorSource::Object(ObjLabel::SimpleL(l)) => vec![ObjLabel::SimpleL(l)],
        FactorSource::Object(ObjLabel::KacDualK11) => from_seq(kac_length2_seq(params, Length2Family::K11Dual)?),
        FactorSource::Object(ObjLabel::KacK(l)) => {
            let (r, s) = (l.r(), l.s());
            if s == 1 && r % p != 0 {
                from_seq(kac_length2_seq(params, Length2Family::Row { m: r / p, r: r % p })?)
            } else if r == 1 && s % q != 0 {
                from_seq(kac_length2_seq(params, Length2Family::Column { n: s / q, s: s % q })?)
            } else if (r + 1) % p == 0 && (s + 1) % q == 0 && (r + 1) / p >= (s + 1) / q && (s + 1) / q >= 2 {
                return composition_factors(
                    params,
                    FactorSource::MmNn {
                        m: (r + 1) / p,
                        n: (s + 1) / q,
                    },
                );
            } else {
                return Err(Error::Unsupported(format!(
                    "composition series of K_{{{r},{s}}} is not one of the tabulated families"
                )));
            }
        }
    };
    let mut out: Vec<VirLabel> = raw
        .into_iter()
        .map(|o| match o {
            ObjLabel::SimpleL(l) => canonical_label(params, l),
            other => unreachable!("non-simple factor {other}"),
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Canonical labels of a diagram, checking they are pairwise distinct.
pub fn distinct_canonical_labels(diagram: &LoewyDiagram) -> Option<BTreeSet<VirLabel>> {
    let set: BTreeSet<VirLabel> = diagram.nodes.iter().map(|n| n.canonical).collect();
    (set.len() == diagram.nodes.len()).then_some(set)
}
