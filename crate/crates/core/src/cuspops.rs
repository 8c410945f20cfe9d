//! The ring of differential operators on the multi-cusp algebra `A(m)`, as a
//! subring of the skew Laurent ring.
//!
//! `𝒟(A(m))` is graded with components `D·δ_α`, `δ_α = ∏_i φ(m_i, α_i)(h_i) x^α`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{rat, BasePoly};
use crate::skewlaurent::{weyl_denominator, Degree, LaurentOp};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CuspShape(Vec<u32>);

impl CuspShape {
    pub fn new(m: Vec<u32>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::InvalidShape("empty shape".into()));
        }
        if let Some(bad) = m.iter().find(|&&mi| mi == 0) {
            return Err(Error::InvalidShape(format!("m_i must be >= 1, got {bad}")));
        }
        Ok(CuspShape(m))
    }

    pub fn single(m: u32) -> Result<Self> {
        Self::new(vec![m])
    }

    /// Parses a comma list such as `2,3`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidShape(format!("bad entry `{}` in `{s}`", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn m(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// The single `m` of a rank-one shape.
    pub fn rank_one(&self) -> Result<u32> {
        if self.0.len() == 1 {
            Ok(self.0[0])
        } else {
            Err(Error::InvalidShape(format!(
                "operation needs a rank-one shape, got {self}"
            )))
        }
    }
}

impl fmt::Display for CuspShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `φ_i` for `A(mi)`, univariate in `h`.
pub fn phi(mi: u32, i: i64) -> BasePoly {
    phi_in(1, 0, mi, i)
}

/// `φ(mi, i)` as a polynomial in `h_{var+1}` inside `D_nvars`.
pub fn phi_in(nvars: usize, var: usize, mi: u32, i: i64) -> BasePoly {
    BasePoly::from_roots(nvars, var, &phi_roots(mi, i).into_iter().map(rat).collect::<Vec<_>>())
}

/// Roots of `φ(mi, i)`, each simple.
pub fn phi_roots(mi: u32, i: i64) -> Vec<i64> {
    let m = mi as i64;
    if i >= 0 {
        if mi == 1 || i == 0 || i >= m {
            return vec![];
        }
        return vec![i + 1];
    }
    let k = -i;
    if mi == 1 {
        return (0..k).map(|t| -t).collect();
    }
    let mut roots = vec![1 - k];
    if k <= m - 1 {
        roots.extend(m - k + 1..=m);
    } else {
        roots.extend((m - k + 1..=m).filter(|&j| j != 1));
    }
    roots
}

/// `∏_i φ(m_i, α_i)(h_i)`.
pub fn phi_alpha(shape: &CuspShape, alpha: &[i64]) -> Result<BasePoly> {
    let n = shape.rank();
    if alpha.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: alpha.len(),
        });
    }
    let mut out = BasePoly::one(n);
    for (k, &a) in alpha.iter().enumerate() {
        out = &out * &phi_in(n, k, shape.m(k), a);
    }
    Ok(out)
}

/// An element of `𝒟(A(m))`; membership is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    shape: CuspShape,
    op: LaurentOp,
}

impl DiffOp {
    pub fn new(shape: CuspShape, op: LaurentOp) -> Result<Self> {
        if op.nvars() != shape.rank() {
            return Err(Error::ArityMismatch {
                expected: shape.rank(),
                found: op.nvars(),
            });
        }
        decompose_op(&op, &shape)?;
        Ok(DiffOp { shape, op })
    }

    pub fn shape(&self) -> &CuspShape {
        &self.shape
    }

    pub fn op(&self) -> &LaurentOp {
        &self.op
    }

    pub fn into_op(self) -> LaurentOp {
        self.op
    }

    pub fn multiply(&self, other: &DiffOp) -> Result<DiffOp> {
        if self.shape != other.shape {
            return Err(Error::InvalidShape(format!(
                "shapes differ: {} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(DiffOp {
            shape: self.shape.clone(),
            op: self.op.checked_mul(&other.op)?,
        })
    }

    pub fn add(&self, other: &DiffOp) -> Result<DiffOp> {
        if self.shape != other.shape {
            return Err(Error::InvalidShape(format!(
                "shapes differ: {} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(DiffOp {
            shape: self.shape.clone(),
            op: self.op.checked_add(&other.op)?,
        })
    }

    /// `d·self` for `d ∈ D`.
    pub fn left_mul_poly(&self, d: &BasePoly) -> DiffOp {
        DiffOp {
            shape: self.shape.clone(),
            op: self.op.left_mul_poly(d),
        }
    }
}

/// The generator `δ_α`.
pub fn delta(shape: &CuspShape, alpha: &[i64]) -> Result<DiffOp> {
    let coeff = phi_alpha(shape, alpha)?;
    Ok(DiffOp {
        shape: shape.clone(),
        op: LaurentOp::monomial(coeff, Degree(alpha.to_vec())),
    })
}

/// `δ_i(k)`: the generator `δ_i` of the `k`-th tensor factor (0-based).
pub fn delta_at(shape: &CuspShape, k: usize, i: i64) -> Result<DiffOp> {
    if k >= shape.rank() {
        return Err(Error::IndexOutOfRange {
            index: k as i64 + 1,
            reason: format!("factor selector beyond rank {}", shape.rank()),
        });
    }
    let mut alpha = vec![0; shape.rank()];
    alpha[k] = i;
    delta(shape, &alpha)
}

/// Rank-one `δ_i` as a plain operator.
pub fn delta1(m: u32, i: i64) -> LaurentOp {
    LaurentOp::monomial(phi(m, i), Degree(vec![i]))
}

pub fn membership(u: &LaurentOp, shape: &CuspShape) -> bool {
    u.nvars() == shape.rank() && decompose_op(u, shape).is_ok()
}

/// Writes `u = Σ c_α δ_α`.
pub fn decompose(u: &DiffOp) -> Result<BTreeMap<Degree, BasePoly>> {
    decompose_op(&u.op, &u.shape)
}

pub fn decompose_op(u: &LaurentOp, shape: &CuspShape) -> Result<BTreeMap<Degree, BasePoly>> {
    if u.nvars() != shape.rank() {
        return Err(Error::ArityMismatch {
            expected: shape.rank(),
            found: u.nvars(),
        });
    }
    u.components()
        .map(|(alpha, coeff)| {
            let denom = phi_alpha(shape, &alpha.0)?;
            Ok((alpha.clone(), coeff.exact_divide(&denom)?))
        })
        .collect()
}

/// Which word the right-hand side of a defining relation multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationCase {
    /// `δ_{i+j}`, `|i+j| < 2m`
    Direct,
    /// `δ_{i+j-m} δ_m`
    PlusOne,
    /// `δ_{i+j-2m} δ_m^2`
    PlusTwo,
    /// `δ_{i+j+m} δ_{-m}`
    MinusOne,
    /// `δ_{i+j+2m} δ_{-m}^2`
    MinusTwo,
}

impl RelationCase {
    pub fn tag(&self) -> &'static str {
        match self {
            RelationCase::Direct => "direct",
            RelationCase::PlusOne => "plus_m",
            RelationCase::PlusTwo => "plus_2m",
            RelationCase::MinusOne => "minus_m",
            RelationCase::MinusTwo => "minus_2m",
        }
    }

    /// Exponent `e` and sign of the trailing `δ_{±m}^e`.
    fn tail(&self) -> (i64, u32) {
        match self {
            RelationCase::Direct => (0, 0),
            RelationCase::PlusOne => (1, 1),
            RelationCase::PlusTwo => (1, 2),
            RelationCase::MinusOne => (-1, 1),
            RelationCase::MinusTwo => (-1, 2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub m: u32,
    pub i: i64,
    pub j: i64,
    pub case: RelationCase,
    /// Index of the leading generator in the right-hand word.
    pub residual: i64,
    pub coeff: BasePoly,
}

impl StructureConstant {
    /// The word `δ_residual δ_{±m}^e` without the coefficient.
    pub fn word(&self) -> LaurentOp {
        let (sign, e) = self.case.tail();
        let mut w = delta1(self.m, self.residual);
        for _ in 0..e {
            w = &w * &delta1(self.m, sign * self.m as i64);
        }
        w
    }

    /// `c · word`.
    pub fn rhs(&self) -> LaurentOp {
        self.word().left_mul_poly(&self.coeff)
    }

    /// `δ_i δ_j`.
    pub fn lhs(&self) -> LaurentOp {
        &delta1(self.m, self.i) * &delta1(self.m, self.j)
    }
}

/// Classifies `i + j` into one of the five rows of the relation table.
pub fn relation_case(m: u32, i: i64, j: i64) -> Result<(RelationCase, i64)> {
    let m = m as i64;
    let s = i + j;
    let out = if s.abs() < 2 * m {
        (RelationCase::Direct, s)
    } else if (2 * m..3 * m).contains(&s) {
        (RelationCase::PlusOne, s - m)
    } else if (3 * m..4 * m).contains(&s) {
        (RelationCase::PlusTwo, s - 2 * m)
    } else if s > -3 * m && s <= -2 * m {
        (RelationCase::MinusOne, s + m)
    } else if s > -4 * m && s <= -3 * m {
        (RelationCase::MinusTwo, s + 2 * m)
    } else {
        return Err(Error::IndexOutOfRange {
            index: s,
            reason: format!("i+j outside (-4m, 4m) for m={m}"),
        });
    };
    Ok(out)
}

/// The coefficient `c` with `δ_i δ_j = c · δ_r δ_{±m}^e`.
///
/// Every right-hand word equals `δ_{i+j}`, so `c = φ_i σ^i(φ_j) / φ_{i+j}`.
pub fn structure_constant(m: u32, i: i64, j: i64) -> Result<StructureConstant> {
    if m == 0 {
        return Err(Error::InvalidShape("m must be >= 1".into()));
    }
    let bound = 2 * m as i64 - 1;
    for idx in [i, j] {
        if idx == 0 || idx.abs() > bound {
            return Err(Error::IndexOutOfRange {
                index: idx,
                reason: format!("need 1 <= |index| <= {bound}"),
            });
        }
    }
    let (case, residual) = relation_case(m, i, j)?;
    let num = &phi(m, i) * &phi(m, j).shifted(&[i]);
    let coeff = num.exact_divide(&phi(m, i + j))?;
    Ok(StructureConstant {
        m,
        i,
        j,
        case,
        residual,
        coeff,
    })
}

/// Membership in `𝒜₁ = 𝒟(A) ∩ A₁`.
pub fn a1_membership(u: &LaurentOp, m: u32) -> bool {
    match CuspShape::single(m) {
        Ok(shape) => membership(u, &shape) && u.weyl_membership(),
        Err(_) => false,
    }
}

/// The polynomial `a_i` of `w_{-i} = a_i ∂^i`.
pub fn a1_coefficient(m: u32, i: i64) -> BasePoly {
    let m = m as i64;
    let roots: Vec<i64> = if i <= m - 2 {
        (m - i + 1..=m).collect()
    } else {
        (2..=m).collect()
    };
    BasePoly::from_roots(1, 0, &roots.into_iter().map(rat).collect::<Vec<_>>())
}

/// `w_{-i} = a_i ∂^i` for `i >= 1`.
pub fn w_minus(m: u32, i: i64) -> Result<LaurentOp> {
    if i < 1 {
        return Err(Error::IndexOutOfRange {
            index: -i,
            reason: "w(-i) needs i >= 1".into(),
        });
    }
    let partial_pow = LaurentOp::monomial(
        weyl_denominator(1, &Degree(vec![-i])),
        Degree(vec![-i]),
    );
    Ok(partial_pow.left_mul_poly(&a1_coefficient(m, i)))
}

/// `w_i`: `δ_i` for `i >= 0`, `w_minus` otherwise.
pub fn w(m: u32, i: i64) -> Result<LaurentOp> {
    if i >= 0 {
        Ok(delta1(m, i))
    } else {
        w_minus(m, -i)
    }
}

/// Generators `h`, `X = x^m`, `Y = δ_{-m}` of the subalgebra `𝒜`.
#[derive(Clone, Debug)]
pub struct CalAGenerators {
    pub h: LaurentOp,
    pub x: LaurentOp,
    pub y: LaurentOp,
}

pub fn gwa_a_generators(m: u32) -> CalAGenerators {
    CalAGenerators {
        h: LaurentOp::h(1, 0),
        x: LaurentOp::x_pow(1, 0, m as i64),
        y: delta1(m, -(m as i64)),
    }
}

/// Generators `δ_{-1}`, `h`, `δ_1` of `𝔸`.
#[derive(Clone, Debug)]
pub struct BbAGenerators {
    pub delta_minus: LaurentOp,
    pub h: LaurentOp,
    pub delta_plus: LaurentOp,
}

pub fn bba_generators(m: u32) -> BbAGenerators {
    BbAGenerators {
        delta_minus: delta1(m, -1),
        h: LaurentOp::h(1, 0),
        delta_plus: delta1(m, 1),
    }
}

/// `h(h-1)(h-m)`, the defining element of `𝔸`.
pub fn bba_defining_element(m: u32) -> BasePoly {
    BasePoly::from_roots(1, 0, &[rat(0), rat(1), rat(m as i64)])
}
