//! Braiding scalars on `L_n ⊠ L_n`, balancing phases, and the hexagon
//! constraint on the 2×2 F-matrix of `L_1 ⊠ L_1 ⊠ L_1`.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::ensure;
use crate::exactnum::{ParamScalar, Phase, Rat};
use crate::fusion::fuse_c;
use crate::virasoro::{weight, ObjLabel, Params};
use crate::{Error, Result};

/// Which of the two available sign conventions produces `R_1^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RConvention {
    /// Tabulated `n = 1` values: `R_1^0 = e^{iπpq/2}`, `R_1^2 = -R_1^0`.
    Table,
    /// Closed form `e^{iπ(h_{(k+2)p-1,1} - 2h_{(n+2)p-1,1})}`.
    Formula,
}

pub fn r_scalar_table(params: &Params, n: i64, k: i64) -> Result<Phase> {
    ensure!(
        n == 1 && (k == 0 || k == 2),
        "tabulated braiding scalars exist only for n = 1, k in {{0, 2}}; got n={n}, k={k}"
    );
    let base = Rat::new(params.p() * params.q(), 2);
    Ok(if k == 0 {
        Phase::new(base)
    } else {
        Phase::new(base + 1)
    })
}

pub fn r_scalar_formula(params: &Params, n: u32, k: u32) -> Result<Phase> {
    ensure!(
        fuse_c(n, n).contains(&k),
        "k={k} is not a fusion channel of L_{n} ⊠ L_{n}"
    );
    let p = params.p();
    let hk = weight(params, (i64::from(k) + 2) * p - 1, 1);
    let hn = weight(params, (i64::from(n) + 2) * p - 1, 1);
    Ok(Phase::from_weight(&(hk - hn * 2), 1))
}

pub fn r_scalar(params: &Params, convention: RConvention, k: u32) -> Result<Phase> {
    match convention {
        RConvention::Table => r_scalar_table(params, 1, i64::from(k)),
        RConvention::Formula => r_scalar_formula(params, 1, k),
    }
}

/// `e^{2πi(h_k - 2h_n)}` for each channel `k` of `L_n ⊠ L_n`.
pub fn balancing_check(params: &Params, n: u32) -> BTreeMap<u32, Phase> {
    let hn = ObjLabel::l_n(params, n).lowest_weight(params);
    fuse_c(n, n)
        .into_iter()
        .map(|k| {
            let hk = ObjLabel::l_n(params, k).lowest_weight(params);
            (k, Phase::from_weight(&(hk - &hn * 2), 2))
        })
        .collect()
}

/// The four entries of the F-matrix, indexed by channels `0` and `2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FMatrix {
    #[serde(rename = "F00")]
    pub f00: ParamScalar,
    #[serde(rename = "F02")]
    pub f02: ParamScalar,
    #[serde(rename = "F20")]
    pub f20: ParamScalar,
    #[serde(rename = "F22")]
    pub f22: ParamScalar,
}

impl FMatrix {
    pub fn from_rows(rows: [[ParamScalar; 2]; 2]) -> Self {
        let [[f00, f02], [f20, f22]] = rows;
        FMatrix { f00, f02, f20, f22 }
    }

    pub fn rows(&self) -> [[&ParamScalar; 2]; 2] {
        [[&self.f00, &self.f02], [&self.f20, &self.f22]]
    }

    pub fn determinant(&self) -> ParamScalar {
        &(&self.f00 * &self.f22) - &(&self.f02 * &self.f20)
    }

    pub fn square(&self) -> [[ParamScalar; 2]; 2] {
        let m = self.rows();
        let entry = |i: usize, j: usize| &(m[i][0] * m[0][j]) + &(m[i][1] * m[1][j]);
        [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
    }

    /// Entries at `t = t0`; `None` if some entry has a pole there.
    pub fn eval(&self, t0: &Rat) -> Option<[[Rat; 2]; 2]> {
        Some([
            [self.f00.eval(t0)?, self.f02.eval(t0)?],
            [self.f20.eval(t0)?, self.f22.eval(t0)?],
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FSolution {
    /// `F = ε·Id`.
    Diagonal { epsilon: i64 },
    /// The one-parameter family with `F02 = t`.
    Parametrized { matrix: FMatrix },
}

impl FSolution {
    pub fn matrix(&self) -> FMatrix {
        match self {
            FSolution::Diagonal { epsilon } => {
                let e = ParamScalar::constant(Rat::from(*epsilon));
                FMatrix::from_rows([[e.clone(), ParamScalar::zero()], [ParamScalar::zero(), e]])
            }
            FSolution::Parametrized { matrix } => matrix.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FSolution::Diagonal { .. } => "Diagonal",
            FSolution::Parametrized { .. } => "Parametrized",
        }
    }
}

impl Serialize for FSolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            kind: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            epsilon: Option<i64>,
            matrix: &'a FMatrix,
        }
        let matrix = self.matrix();
        let epsilon = match self {
            FSolution::Diagonal { epsilon } => Some(*epsilon),
            FSolution::Parametrized { .. } => None,
        };
        Repr {
            kind: self.kind(),
            epsilon,
            matrix: &matrix,
        }
        .serialize(serializer)
    }
}

/// The hexagon constraint in matrix form: `D ∘ F = F²`, where `∘` is the
/// entrywise product and `D_{kl} = R_1^k·R_1^l` (the normalization
/// `R_{m1}^1 = 1` removes the inner braidings).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexagonSystem {
    d: [[Rat; 2]; 2],
}

impl HexagonSystem {
    /// Builds `D` from the braiding scalars of `L_1 ⊠ L_1`. Fails if some
    /// product `R^k R^l` is not real.
    pub fn from_r_scalars(r0: &Phase, r2: &Phase) -> Result<Self> {
        let rs = [r0, r2];
        let mut d: [[Rat; 2]; 2] = Default::default();
        for (i, ri) in rs.iter().enumerate() {
            for (j, rj) in rs.iter().enumerate() {
                d[i][j] = (*ri * *rj).as_real().ok_or_else(|| {
                    Error::Unsupported(format!("non-real hexagon coefficient {}", *ri * *rj))
                })?;
            }
        }
        Ok(HexagonSystem { d })
    }

    pub fn for_params(params: &Params, convention: RConvention) -> Result<Self> {
        HexagonSystem::from_r_scalars(
            &r_scalar(params, convention, 0)?,
            &r_scalar(params, convention, 2)?,
        )
    }

    pub fn coefficients(&self) -> &[[Rat; 2]; 2] {
        &self.d
    }

    /// `F² - D ∘ F`, entrywise.
    pub fn residual(&self, f: &FMatrix) -> [[ParamScalar; 2]; 2] {
        let sq = f.square();
        let m = f.rows();
        std::array::from_fn(|i| std::array::from_fn(|j| &sq[i][j] - &(m[i][j] * &self.d[i][j])))
    }

    pub fn is_solution(&self, f: &FMatrix) -> bool {
        self.residual(f).iter().flatten().all(ParamScalar::is_zero)
    }

    /// All invertible solutions, split by whether `F02` vanishes. With
    /// `F02 = t ≠ 0` kept formal the remaining entries are determined.
    pub fn solve(&self) -> Result<Vec<FSolution>> {
        let [[d00, d02], [d20, d22]] = &self.d;
        if d02 != d20 {
            return Err(Error::Unsupported("asymmetric hexagon coefficients".into()));
        }
        let mut out = Vec::new();

        // F02 = 0: F00² = D00·F00 and F22² = D22·F22 force F00 = D00, F22 = D22
        // for invertibility; F20·(F00 + F22) = D20·F20 forces F20 = 0 unless
        // D00 + D22 = D20.
        if &(d00 + d22) == d20 {
            return Err(Error::Unsupported("F20 is unconstrained when F02 = 0".into()));
        }
        if d00 != d22 {
            return Err(Error::Unsupported("non-scalar diagonal solution".into()));
        }
        let epsilon = d00.to_i64().ok_or_else(|| Error::Internal(format!("D00 = {d00} is not ±1")))?;
        out.push(FSolution::Diagonal { epsilon });

        // F02 = t: F00 + F22 = D02, and subtracting the diagonal equations
        // pins F00; then F20 = (D00·F00 - F00²)/t.
        let denom = d00 + d22 - d02 * 2;
        if denom.is_zero() {
            return Err(Error::Unsupported("degenerate off-diagonal hexagon system".into()));
        }
        let f00 = ((d22 * d02) - (d02 * d02)) / denom;
        let f22 = d02 - &f00;
        if (d02 - d00).is_zero() || f00.is_zero() {
            return Err(Error::Unsupported("off-diagonal family is not invertible".into()));
        }
        let t = ParamScalar::t();
        let c = ParamScalar::constant(d00 * &f00 - &f00 * &f00);
        let matrix = FMatrix {
            f00: ParamScalar::constant(f00),
            f02: t.clone(),
            f20: &c / &t,
            f22: ParamScalar::constant(f22),
        };
        out.push(FSolution::Parametrized { matrix });

        for sol in &out {
            if !self.is_solution(&sol.matrix()) || sol.matrix().determinant().is_zero() {
                return Err(Error::Internal(format!("solver produced a non-solution {sol:?}")));
            }
        }
        Ok(out)
    }
}

/// Both invertible solution families for `L_1 ⊠ L_1 ⊠ L_1`.
pub fn hexagon_solutions(params: &Params) -> Vec<FSolution> {
    HexagonSystem::for_params(params, RConvention::Table)
        .and_then(|s| s.solve())
        .expect("hexagon system at coprime (p, q) has the two-family solution")
}

/// `1/F00`.
pub fn intrinsic_dimension(sol: &FSolution, _params: &Params) -> Result<Rat> {
    sol.matrix()
        .f00
        .as_constant()
        .and_then(|f| f.recip())
        .ok_or_else(|| Error::Internal(format!("F00 is zero or non-constant in {sol:?}")))
}

/// The hexagon matrix equation is the same whether `D` is built from the
/// tabulated or the closed-form braiding scalars.
pub fn sign_flip_invariant(params: &Params) -> Result<bool> {
    Ok(HexagonSystem::for_params(params, RConvention::Table)?
        == HexagonSystem::for_params(params, RConvention::Formula)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionReport {
    pub solution: FSolution,
    pub determinant: ParamScalar,
    pub residual_zero: bool,
    pub intrinsic_dimension: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluated: Option<EvaluatedSolution>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvaluatedSolution {
    pub t: Rat,
    pub matrix: Option<[[Rat; 2]; 2]>,
    pub residual: Option<[[Rat; 2]; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HexagonReport {
    pub params: Params,
    pub sign_pq: i64,
    pub coefficients: [[Rat; 2]; 2],
    pub sign_flip_invariant: bool,
    pub solutions: Vec<SolutionReport>,
}

/// Solutions with their checks, optionally specialized at `t = t0`.
pub fn hexagon_report(params: &Params, t0: Option<&Rat>) -> Result<HexagonReport> {
    let system = HexagonSystem::for_params(params, RConvention::Table)?;
    let solutions = system
        .solve()?
        .into_iter()
        .map(|solution| {
            let matrix = solution.matrix();
            let residual = system.residual(&matrix);
            let evaluated = t0.map(|t| EvaluatedSolution {
                t: t.clone(),
                matrix: matrix.eval(t),
                residual: (|| {
                    Some([
                        [residual[0][0].eval(t)?, residual[0][1].eval(t)?],
                        [residual[1][0].eval(t)?, residual[1][1].eval(t)?],
                    ])
                })(),
            });
            Ok(SolutionReport {
                determinant: matrix.determinant(),
                residual_zero: residual.iter().flatten().all(ParamScalar::is_zero),
                intrinsic_dimension: intrinsic_dimension(&solution, params)?,
                evaluated,
                solution,
            })
        })
        .collect::<Result<_>>()?;
    Ok(HexagonReport {
        params: *params,
        sign_pq: params.sign_pq(),
        coefficients: system.coefficients().clone(),
        sign_flip_invariant: sign_flip_invariant(params)?,
        solutions,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChannelReport {
    pub k: u32,
    pub r_formula: Phase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_table: Option<Phase>,
    pub r_formula_squared: Phase,
    pub balancing: Phase,
    pub balanced: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidingReport {
    pub params: Params,
    pub n: u32,
    pub channels: Vec<ChannelReport>,
    /// Present for `n = 1`: whether the tabulated and closed-form values
    /// agree channel by channel.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_formula_agree: Option<bool>,
}

pub fn braiding_report(params: &Params, n: u32) -> Result<BraidingReport> {
    let balancing = balancing_check(params, n);
    let channels: Vec<ChannelReport> = balancing
        .into_iter()
        .map(|(k, bal)| {
            let r = r_scalar_formula(params, n, k)?;
            let r_table = if n == 1 {
                Some(r_scalar_table(params, 1, i64::from(k))?)
            } else {
                None
            };
            let sq = r.pow(2);
            Ok(ChannelReport {
                k,
                balanced: sq == bal && r_table.as_ref().is_none_or(|t| t.pow(2) == bal),
                r_formula: r,
                r_table,
                r_formula_squared: sq,
                balancing: bal,
            })
        })
        .collect::<Result<_>>()?;
    let table_formula_agree = (n == 1).then(|| {
        channels
            .iter()
            .all(|c| c.r_table.as_ref() == Some(&c.r_formula))
    });
    Ok(BraidingReport {
        params: *params,
        n,
        channels,
        table_formula_agree,
    })
}
