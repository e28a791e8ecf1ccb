//! Finite-dimensional irreducible sl2 modules over `Q`, their invariant
//! bilinear forms, and Clebsch-Gordan projections and inclusions.

use serde::Serialize;

use crate::error::ensure;
use crate::exactnum::Rat;
use crate::fusion::cg_oracle;
use crate::linalg::QMatrix;
use crate::{Error, Result};

/// `V_n` on the basis `v_k = F^k v_0`, `0 <= k <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Irrep {
    pub n: u32,
    #[serde(rename = "E")]
    pub e: QMatrix,
    #[serde(rename = "F")]
    pub f: QMatrix,
    #[serde(rename = "H")]
    pub h: QMatrix,
}

impl Irrep {
    pub fn dim(&self) -> usize {
        self.e.rows()
    }

    pub fn generators(&self) -> [&QMatrix; 3] {
        [&self.e, &self.f, &self.h]
    }

    /// `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
    pub fn satisfies_brackets(&self) -> bool {
        let two = Rat::from(2);
        self.h.commutator(&self.e) == self.e.scale(&two)
            && self.h.commutator(&self.f) == self.f.scale(&-two)
            && self.e.commutator(&self.f) == self.h
    }

    pub fn weight_of(&self, k: usize) -> i64 {
        i64::from(self.n) - 2 * k as i64
    }
}

/// `H v_k = (n-2k) v_k`, `F v_k = v_{k+1}`, `E v_k = k(n-k+1) v_{k-1}`.
pub fn build_irrep(n: u32) -> Irrep {
    let d = n as usize + 1;
    let ni = i64::from(n);
    let h = QMatrix::from_fn(d, d, |i, j| if i == j { Rat::from(ni - 2 * i as i64) } else { Rat::zero() });
    let f = QMatrix::from_fn(d, d, |i, j| if i == j + 1 { Rat::one() } else { Rat::zero() });
    let e = QMatrix::from_fn(d, d, |i, j| {
        if j == i + 1 {
            let k = j as i64;
            Rat::from(k * (ni - k + 1))
        } else {
            Rat::zero()
        }
    });
    Irrep { n, e, f, h }
}

/// Tensor product `V_m ⊗ V_n`: generators act as `X ⊗ 1 + 1 ⊗ X`. The basis
/// vector `v_i ⊗ v_j` has index `i·(n+1) + j`.
#[derive(Debug, Clone)]
pub struct TensorRep {
    pub m: u32,
    pub n: u32,
    pub e: QMatrix,
    pub f: QMatrix,
    pub h: QMatrix,
}

impl TensorRep {
    pub fn new(m: u32, n: u32) -> Self {
        let (a, b) = (build_irrep(m), build_irrep(n));
        let ia = QMatrix::identity(a.dim());
        let ib = QMatrix::identity(b.dim());
        let lift = |xa: &QMatrix, xb: &QMatrix| &xa.kron(&ib) + &ia.kron(xb);
        TensorRep {
            m,
            n,
            e: lift(&a.e, &b.e),
            f: lift(&a.f, &b.f),
            h: lift(&a.h, &b.h),
        }
    }

    pub fn dim(&self) -> usize {
        self.e.rows()
    }

    pub fn weight_of(&self, idx: usize) -> i64 {
        let d = self.n as usize + 1;
        let (i, j) = (idx / d, idx % d);
        i64::from(self.m) + i64::from(self.n) - 2 * (i + j) as i64
    }

    pub fn weight_space(&self, w: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weight_of(i) == w).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BilinForm {
    pub n: u32,
    pub matrix: QMatrix,
    /// Dimension of the space of invariant forms found by the solver.
    pub solution_dim: usize,
}

impl BilinForm {
    pub fn pair(&self, u: &[Rat], v: &[Rat]) -> Rat {
        u.iter().zip(self.matrix.mul_vec(v)).map(|(a, b)| a * &b).sum()
    }

    pub fn is_invariant_under(&self, rep: &Irrep) -> bool {
        rep.generators()
            .iter()
            .all(|x| (&(&x.transpose() * &self.matrix) + &(&self.matrix * x)).is_zero())
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.matrix.determinant().is_zero()
    }
}

/// Linear system `Xᵀ·B + B·X = 0` over the unknowns `B[a][b]` for
/// `(a, b) ∈ support`, one equation per matrix entry and generator.
fn invariance_system(rep: &Irrep, support: &[(usize, usize)]) -> QMatrix {
    let d = rep.dim();
    let mut sys = QMatrix::zeros(3 * d * d, support.len());
    for (g, x) in rep.generators().iter().enumerate() {
        for (u, &(a, b)) in support.iter().enumerate() {
            // (Xᵀ E_ab)_{ij} = X_{ai}·[j = b],  (E_ab X)_{ij} = [i = a]·X_{bj}
            for i in 0..d {
                let v = x.get(a, i);
                if !v.is_zero() {
                    let row = g * d * d + i * d + b;
                    let cur = sys.get(row, u) + v;
                    sys.set(row, u, cur);
                }
            }
            for j in 0..d {
                let v = x.get(b, j);
                if !v.is_zero() {
                    let row = g * d * d + a * d + j;
                    let cur = sys.get(row, u) + v;
                    sys.set(row, u, cur);
                }
            }
        }
    }
    sys
}

/// Invariant forms on `rep` with unknowns restricted to `support`.
pub fn invariant_forms_on(rep: &Irrep, support: &[(usize, usize)]) -> Vec<QMatrix> {
    let d = rep.dim();
    invariance_system(rep, support)
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut b = QMatrix::zeros(d, d);
            for (&(i, j), x) in support.iter().zip(v) {
                b.set(i, j, x);
            }
            b
        })
        .collect()
}

/// The `H`-equations `(w_i + w_j)·B_{ij} = 0` confine `B` to pairs of opposite
/// weights; the `E` and `F` equations are then solved on that support.
pub fn invariant_form(rep: &Irrep) -> Result<BilinForm> {
    let d = rep.dim();
    let support: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter(|&(i, j)| rep.weight_of(i) + rep.weight_of(j) == 0)
        .collect();
    let forms = invariant_forms_on(rep, &support);
    if forms.len() != 1 {
        return Err(Error::Internal(format!(
            "V_{} has a {}-dimensional space of invariant forms",
            rep.n,
            forms.len()
        )));
    }
    let b = &forms[0];
    let corner = b
        .get(0, d - 1)
        .recip()
        .ok_or_else(|| Error::Internal("invariant form pairs v_0 with v_n trivially".into()))?;
    Ok(BilinForm {
        n: rep.n,
        matrix: b.scale(&corner),
        solution_dim: forms.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CgMaps {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    /// `π: V_m ⊗ V_n → V_k`, a `(k+1) × (m+1)(n+1)` matrix.
    pub projection: QMatrix,
    /// `i: V_k → V_m ⊗ V_n`, a `(m+1)(n+1) × (k+1)` matrix.
    pub inclusion: QMatrix,
}

fn restrict(mat: &QMatrix, rows: &[usize], cols: &[usize]) -> QMatrix {
    QMatrix::from_fn(rows.len(), cols.len(), |i, j| mat.get(rows[i], cols[j]).clone())
}

fn one_dim_kernel(mat: &QMatrix, what: &str) -> Result<Vec<Rat>> {
    let mut ns = mat.nullspace();
    if ns.len() != 1 {
        return Err(Error::Internal(format!("{what}: kernel has dimension {}", ns.len())));
    }
    Ok(ns.pop().expect("one vector"))
}

/// Projection to and inclusion of the `V_k` summand of `V_m ⊗ V_n`,
/// normalized so that `π ∘ i = Id`.
pub fn cg_maps(m: u32, n: u32, k: u32) -> Result<CgMaps> {
    ensure!(
        cg_oracle(m, n).contains(&k),
        "V_{k} is not a summand of V_{m} ⊗ V_{n}"
    );
    let t = TensorRep::new(m, n);
    let dim = t.dim();
    let kw = i64::from(k);
    let wk = t.weight_space(kw);
    let wk2 = t.weight_space(kw + 2);

    // Highest-weight vector: kernel of E on the weight-k space.
    let hw_local = one_dim_kernel(&restrict(&t.e, &wk2, &wk), "highest-weight vectors")?;
    let mut w = vec![Rat::zero(); dim];
    for (&idx, x) in wk.iter().zip(hw_local) {
        w[idx] = x;
    }
    let mut cols = Vec::with_capacity(k as usize + 1);
    let mut cur = w.clone();
    for _ in 0..=k {
        let next = t.f.mul_vec(&cur);
        cols.push(cur);
        cur = next;
    }
    let inclusion = QMatrix::from_fn(dim, cols.len(), |i, j| cols[j][i].clone());

    // Top coefficient: covector on the weight-k space vanishing on F(W_{k+2}),
    // normalized against w; lower coefficients follow from π∘E = E∘π.
    let f_in = restrict(&t.f, &wk, &wk2);
    let lam_local = one_dim_kernel(&f_in.transpose(), "top projection covector")?;
    let mut lam = vec![Rat::zero(); dim];
    for (&idx, x) in wk.iter().zip(lam_local) {
        lam[idx] = x;
    }
    let norm: Rat = lam.iter().zip(&w).map(|(a, b)| a * b).sum();
    let norm_inv = norm
        .recip()
        .ok_or_else(|| Error::Internal("highest-weight vector lies in F(W_{k+2})".into()))?;
    let mut rows = vec![lam.iter().map(|x| x * &norm_inv).collect::<Vec<_>>()];
    for j in 1..=k {
        let c = Rat::from(i64::from(j) * (kw - i64::from(j) + 1));
        let prev = rows.last().expect("row 0 exists");
        let next: Vec<Rat> = t.e.vec_mul(prev).into_iter().map(|x| x / &c).collect();
        rows.push(next);
    }
    let projection = QMatrix::from_rows(rows);
    Ok(CgMaps {
        m,
        n,
        k,
        projection,
        inclusion,
    })
}

impl CgMaps {
    /// `π∘X_T = X_k∘π` and `X_T∘i = i∘X_k` for `X ∈ {E, F, H}`.
    pub fn intertwines(&self) -> bool {
        let t = TensorRep::new(self.m, self.n);
        let vk = build_irrep(self.k);
        let pairs = [(&t.e, &vk.e), (&t.f, &vk.f), (&t.h, &vk.h)];
        pairs.iter().all(|&(xt, xk)| {
            &self.projection * xt == xk * &self.projection && xt * &self.inclusion == &self.inclusion * xk
        })
    }
}

/// A vector `v'` with `(v', v)_{2n} ≠ 0`: the first basis vector on which `B·v`
/// is nonzero.
pub fn simplicity_witness(n: u32, v: &[Rat]) -> Result<Vec<Rat>> {
    let rep = build_irrep(2 * n);
    ensure!(v.len() == rep.dim(), "vector has length {}, expected {}", v.len(), rep.dim());
    ensure!(v.iter().any(|x| !x.is_zero()), "the zero vector has no witness");
    let form = invariant_form(&rep)?;
    let bv = form.matrix.mul_vec(v);
    let j = bv
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::Internal("invariant form is degenerate".into()))?;
    let mut out = vec![Rat::zero(); v.len()];
    out[j] = Rat::one();
    Ok(out)
}

/// Scalar `λ` with `π^0 = λ·B` when the projection `V_{2n} ⊗ V_{2n} → V_0` is
/// reshaped to a `(2n+1) × (2n+1)` matrix, so the unit channel of the
/// product factors through the invariant form.
pub fn unit_channel_factor(n: u32) -> Result<Rat> {
    let rep = build_irrep(2 * n);
    let d = rep.dim();
    let b = invariant_form(&rep)?.matrix;
    let pi0 = cg_maps(2 * n, 2 * n, 0)?.projection;
    let reshaped = QMatrix::from_fn(d, d, |i, j| pi0.get(0, i * d + j).clone());
    let lambda = reshaped.get(0, d - 1) / b.get(0, d - 1);
    if reshaped != b.scale(&lambda) || lambda.is_zero() {
        return Err(Error::Internal(format!("unit channel of V_{0} ⊗ V_{0} is not proportional to the form", 2 * n)));
    }
    Ok(lambda)
}
