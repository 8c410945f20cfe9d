//! Action of the skew Laurent ring on `L = K[x^{±1}]`, on `A(m) ⊂ L` and on
//! the quotient `A' = L/A`.
//!
//! `(d x^α) ∗ x^β = d(α+β+1) x^{α+β}`: the coefficient is evaluated at
//! `h_i = α_i + β_i + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cuspops::{delta1, membership, CuspShape};
use crate::error::{Error, Result};
use crate::exactpoly::Rational;
use crate::skewlaurent::{x_name, Degree, LaurentOp};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentVector {
    nvars: usize,
    coeffs: BTreeMap<Degree, Rational>,
}

impl LaurentVector {
    pub fn zero(nvars: usize) -> Self {
        LaurentVector {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(beta: Degree, c: Rational) -> Self {
        let mut out = Self::zero(beta.len());
        out.add_term(beta, c);
        out
    }

    /// `x^β`.
    pub fn x_pow(beta: &[i64]) -> Self {
        Self::monomial(Degree(beta.to_vec()), Rational::one())
    }

    /// Reads a Laurent polynomial off an operator whose coefficients are all
    /// constants.
    pub fn from_op(u: &LaurentOp) -> Result<Self> {
        let mut out = Self::zero(u.nvars());
        for (d, p) in u.components() {
            let c = p.constant_value().ok_or_else(|| {
                Error::InvalidShape(format!("vector coefficient `{p}` is not a constant"))
            })?;
            out.add_term(d.clone(), c);
        }
        Ok(out)
    }

    fn add_term(&mut self, beta: Degree, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(beta).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Degree, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, beta: &[i64]) -> Rational {
        self.coeffs
            .get(&Degree(beta.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn checked_add(&self, other: &LaurentVector) -> Result<LaurentVector> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> LaurentVector {
        let mut out = Self::zero(self.nvars);
        for (b, c) in &self.coeffs {
            out.add_term(b.clone(), c * r);
        }
        out
    }

    /// Keeps the terms whose exponent satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&[i64]) -> bool) -> LaurentVector {
        LaurentVector {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(b, _)| keep(&b.0))
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (b, c)) in self.coeffs.iter().enumerate() {
            if c.is_negative() {
                out.push_str(if idx == 0 { "-" } else { " - " });
            } else if idx > 0 {
                out.push_str(" + ");
            }
            let abs = c.abs();
            let mut parts = Vec::new();
            if b.is_zero() || !abs.is_one() {
                parts.push(abs.to_string());
            }
            for (i, &e) in b.0.iter().enumerate() {
                let name = x_name(self.nvars, i);
                match e {
                    0 => {}
                    1 => parts.push(name),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

impl fmt::Display for LaurentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `u ∗ v`.
pub fn act(u: &LaurentOp, v: &LaurentVector) -> Result<LaurentVector> {
    if u.nvars() != v.nvars {
        return Err(Error::ArityMismatch {
            expected: u.nvars(),
            found: v.nvars,
        });
    }
    let mut out = LaurentVector::zero(v.nvars);
    for (alpha, d) in u.components() {
        for (beta, c) in &v.coeffs {
            let target = alpha + beta;
            let point: Vec<i64> = target.0.iter().map(|t| t + 1).collect();
            let val = d.eval_int(&point)?;
            if !val.is_zero() {
                out.add_term(target, val * c);
            }
        }
    }
    Ok(out)
}

/// A subset of `Z` given by finitely many points and at most one ray in each
/// direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentSet {
    pub points: BTreeSet<i64>,
    /// All `j <= r`.
    pub lower_ray: Option<i64>,
    /// All `j >= r`.
    pub upper_ray: Option<i64>,
}

impl ExponentSet {
    /// `E = {0} ∪ [m, ∞)`.
    pub fn cusp(m: u32) -> Self {
        ExponentSet {
            points: [0].into_iter().collect(),
            lower_ray: None,
            upper_ray: Some(m as i64),
        }
    }

    /// `E' = Z ∖ E = (-∞, -1] ∪ {1, ..., m-1}`.
    pub fn cusp_complement(m: u32) -> Self {
        ExponentSet {
            points: (1..m as i64).collect(),
            lower_ray: Some(-1),
            upper_ray: None,
        }
    }

    pub fn contains(&self, j: i64) -> bool {
        self.points.contains(&j)
            || self.lower_ray.is_some_and(|r| j <= r)
            || self.upper_ray.is_some_and(|r| j >= r)
    }

    pub fn shift(&self, k: i64) -> Self {
        ExponentSet {
            points: self.points.iter().map(|p| p + k).collect(),
            lower_ray: self.lower_ray.map(|r| r + k),
            upper_ray: self.upper_ray.map(|r| r + k),
        }
    }

    /// Members inside `[lo, hi]`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&j| self.contains(j)).collect()
    }

    /// `Z ∖ self`, when exactly one ray is present.
    pub fn complement(&self) -> Option<Self> {
        match (self.lower_ray, self.upper_ray) {
            (None, Some(u)) => {
                let lo = self.points.iter().copied().chain([u]).min().unwrap();
                Some(ExponentSet {
                    points: (lo..u).filter(|j| !self.points.contains(j)).collect(),
                    lower_ray: Some(lo - 1),
                    upper_ray: None,
                })
            }
            (Some(l), None) => {
                let hi = self.points.iter().copied().chain([l]).max().unwrap();
                Some(ExponentSet {
                    points: (l + 1..=hi).filter(|j| !self.points.contains(j)).collect(),
                    lower_ray: None,
                    upper_ray: Some(hi + 1),
                })
            }
            _ => None,
        }
    }

    /// Text such as `(-inf, -1] ∪ {1, 2}`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        if let Some(r) = self.lower_ray {
            parts.push(format!("(-inf, {r}]"));
        }
        let pts: Vec<String> = self
            .points
            .iter()
            .filter(|&&p| {
                !self.lower_ray.is_some_and(|r| p <= r) && !self.upper_ray.is_some_and(|r| p >= r)
            })
            .map(i64::to_string)
            .collect();
        if !pts.is_empty() {
            parts.push(format!("{{{}}}", pts.join(", ")));
        }
        if let Some(r) = self.upper_ray {
            parts.push(format!("[{r}, inf)"));
        }
        if parts.is_empty() {
            "{}".into()
        } else {
            parts.join(" ∪ ")
        }
    }
}

/// Which of the two exceptional weight modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CuspModule {
    A,
    APrime,
}

impl CuspModule {
    pub fn name(&self) -> &'static str {
        match self {
            CuspModule::A => "A",
            CuspModule::APrime => "A'",
        }
    }
}

/// Exponents of a basis: the product `∏_i E_i`, or its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedMask {
    pub factors: Vec<ExponentSet>,
    pub complement: bool,
}

impl GradedMask {
    pub fn for_module(module: CuspModule, shape: &CuspShape) -> Self {
        GradedMask {
            factors: shape.as_slice().iter().map(|&m| ExponentSet::cusp(m)).collect(),
            complement: module == CuspModule::APrime,
        }
    }

    pub fn cusp(shape: &CuspShape) -> Self {
        Self::for_module(CuspModule::A, shape)
    }

    pub fn nvars(&self) -> usize {
        self.factors.len()
    }

    pub fn contains(&self, beta: &[i64]) -> bool {
        let inside = beta
            .iter()
            .zip(&self.factors)
            .all(|(&b, e)| e.contains(b));
        inside != self.complement
    }

    pub fn shift(&self, k: i64) -> Self {
        GradedMask {
            factors: self.factors.iter().map(|e| e.shift(k)).collect(),
            complement: self.complement,
        }
    }

    /// Members of the box `[-window, window]^n`.
    pub fn window(&self, window: i64) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.nvars() {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (-window..=window).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out.retain(|b| self.contains(b));
        out
    }

    pub fn render(&self) -> String {
        if self.complement && self.factors.len() == 1 {
            if let Some(c) = self.factors[0].complement() {
                return c.render();
            }
        }
        let body = if self.factors.len() == 1 {
            self.factors[0].render()
        } else {
            self.factors
                .iter()
                .map(|e| format!("({})", e.render()))
                .collect::<Vec<_>>()
                .join(" × ")
        };
        if self.complement {
            format!("complement of {body}")
        } else {
            body
        }
    }
}

/// Action on `A' = L/A`: project onto the complement basis, act, project.
pub fn act_on_quotient(u: &LaurentOp, v: &LaurentVector, shape: &CuspShape) -> Result<LaurentVector> {
    if !membership(u, shape) {
        return Err(Error::NotStable(u.to_string()));
    }
    let a = GradedMask::cusp(shape);
    let v = v.filter(|b| !a.contains(b));
    Ok(act(u, &v)?.filter(|b| !a.contains(b)))
}

/// Largest `|α_i|` over the support of the generators.
fn max_degree(gens: &[LaurentOp]) -> i64 {
    gens.iter()
        .flat_map(|g| g.support())
        .flat_map(|d| d.0.into_iter().map(i64::abs))
        .max()
        .unwrap_or(0)
}

/// Every generator maps every basis monomial of the mask inside the window
/// back into the mask.
pub fn stability_check(gens: &[LaurentOp], mask: &GradedMask, window: i64) -> Result<bool> {
    Ok(stability_witness(gens, mask, window)?.is_none())
}

/// First `(generator index, exponent)` leaving the mask, if any.
pub fn stability_witness(
    gens: &[LaurentOp],
    mask: &GradedMask,
    window: i64,
) -> Result<Option<(usize, Vec<i64>)>> {
    let required = 2 * max_degree(gens);
    if window < required {
        return Err(Error::WindowTooSmall { window, required });
    }
    for beta in mask.window(window) {
        let v = LaurentVector::x_pow(&beta);
        for (gi, g) in gens.iter().enumerate() {
            let img = act(g, &v)?;
            if img.terms().any(|(d, _)| !mask.contains(&d.0)) {
                return Ok(Some((gi, beta)));
            }
        }
    }
    Ok(None)
}

/// `h, δ_{±1}, ..., δ_{±(2m-1)}`.
pub fn cusp_generating_set(m: u32) -> Vec<LaurentOp> {
    let b = 2 * m as i64 - 1;
    let mut gens = vec![LaurentOp::h(1, 0)];
    for i in 1..=b {
        gens.push(delta1(m, i));
        gens.push(delta1(m, -i));
    }
    gens
}

/// The weights occurring in `A` or `A'`: root `i+1` for each basis exponent `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSupport {
    pub module: CuspModule,
    /// Roots `λ` of the weight ideals `(h - λ)`, factor by factor.
    pub roots: GradedMask,
}

impl WeightSupport {
    pub fn contains_root(&self, lambda: &[i64]) -> bool {
        self.roots.contains(lambda)
    }

    pub fn render(&self) -> String {
        format!("roots {}", self.roots.render())
    }
}

pub fn support(module: CuspModule, shape: &CuspShape) -> WeightSupport {
    WeightSupport {
        module,
        roots: GradedMask::for_module(module, shape).shift(1),
    }
}

/// One transition `δ_op: x^from → x^{from+op}` in a rank-one module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub op: i64,
    pub from: i64,
    pub to: i64,
    pub value: String,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub module: CuspModule,
    pub m: u32,
    pub window: i64,
    pub transitions: Vec<Transition>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.transitions.iter().all(|t| t.nonzero)
    }
}

/// Scalar of `δ_op ∗ x^from` at `x^{from+op}` in the given module.
pub fn transition_scalar(module: CuspModule, m: u32, op: i64, from: i64) -> Result<Rational> {
    let shape = CuspShape::single(m)?;
    let d = delta1(m, op);
    let v = LaurentVector::x_pow(&[from]);
    let img = match module {
        CuspModule::A => act(&d, &v)?,
        CuspModule::APrime => act_on_quotient(&d, &v, &shape)?,
    };
    Ok(img.coefficient(&[from + op]))
}

pub fn run_transitions(
    module: CuspModule,
    m: u32,
    window: i64,
    steps: &[(i64, i64)],
) -> Result<ProbeReport> {
    let transitions = steps
        .iter()
        .map(|&(op, from)| {
            let c = transition_scalar(module, m, op, from)?;
            Ok(Transition {
                op,
                from,
                to: from + op,
                value: c.to_string(),
                nonzero: !c.is_zero(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport {
        module,
        m,
        window,
        transitions,
    })
}

/// The adjacent-weight transitions that make `A` or `A'` simple: `δ_{±1}`
/// along unbroken runs and `δ_{±m}` (in `A`) or `δ_{±2}` (in `A'`) across
/// the gap.
pub fn prescribed_transitions(module: CuspModule, m: u32, window: i64) -> Vec<(i64, i64)> {
    let m = m as i64;
    let mut steps = Vec::new();
    let run = |lo: i64, hi: i64, steps: &mut Vec<(i64, i64)>| {
        for i in lo..hi {
            steps.push((1, i));
            steps.push((-1, i + 1));
        }
    };
    match module {
        CuspModule::A => {
            run(m, window, &mut steps);
            steps.push((m, 0));
            steps.push((-m, m));
        }
        CuspModule::APrime => {
            run(-window, -1, &mut steps);
            run(1, m - 1, &mut steps);
            steps.push((2, -1));
            steps.push((-2, 1));
        }
    }
    steps
}

pub fn simplicity_probe(module: CuspModule, m: u32, window: i64) -> Result<ProbeReport> {
    let required = 2 * m as i64 + 2;
    if window < required {
        return Err(Error::WindowTooSmall { window, required });
    }
    run_transitions(module, m, window, &prescribed_transitions(module, m, window))
}

/// Blocks of the basis of `A` or `A'` inside `[-window, window]` that are
/// linked by nonzero `δ_{±1}` transitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub exponents: Vec<i64>,
    /// `δ_1` kills the top exponent (or the block reaches the window edge).
    pub closed_above: bool,
    /// `δ_{-1}` kills the bottom exponent (or the block reaches the window edge).
    pub closed_below: bool,
}

pub fn restriction_blocks(module: CuspModule, m: u32, window: i64) -> Result<Vec<Block>> {
    let shape = CuspShape::single(m)?;
    let mask = GradedMask::for_module(module, &shape);
    let basis: Vec<i64> = mask.window(window).into_iter().map(|b| b[0]).collect();
    let linked = |op: i64, from: i64| -> Result<bool> {
        Ok(!transition_scalar(module, m, op, from)?.is_zero())
    };
    let mut blocks: Vec<Block> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for &b in &basis {
        let joins = match current.last() {
            Some(&prev) => prev + 1 == b && (linked(1, prev)? || linked(-1, b)?),
            None => false,
        };
        if !joins && !current.is_empty() {
            blocks.push(close_block(module, m, window, std::mem::take(&mut current))?);
        }
        current.push(b);
    }
    if !current.is_empty() {
        blocks.push(close_block(module, m, window, current)?);
    }
    Ok(blocks)
}

fn close_block(module: CuspModule, m: u32, window: i64, exps: Vec<i64>) -> Result<Block> {
    let top = *exps.last().unwrap();
    let bottom = exps[0];
    let closed_above = top == window || transition_scalar(module, m, 1, top)?.is_zero();
    let closed_below = bottom == -window || transition_scalar(module, m, -1, bottom)?.is_zero();
    Ok(Block {
        exponents: exps,
        closed_above,
        closed_below,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspops::delta1;
    use crate::exactpoly::{rat, BasePoly};

    #[test]
    fn act_examples() {
        let h = LaurentOp::h(1, 0);
        for i in -3..5 {
            assert_eq!(
                act(&h, &LaurentVector::x_pow(&[i])).unwrap(),
                LaurentVector::x_pow(&[i]).scale(&rat(i + 1))
            );
        }
        let d = LaurentOp::partial(1, 0);
        assert_eq!(
            act(&d, &LaurentVector::x_pow(&[3])).unwrap(),
            LaurentVector::x_pow(&[2]).scale(&rat(3))
        );
        for m in 2..6 {
            assert!(act(&delta1(m, -1), &LaurentVector::x_pow(&[m as i64]))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn quotient_examples() {
        for m in 2..6 {
            let s = CuspShape::single(m).unwrap();
            let r = act_on_quotient(&delta1(m, 2), &LaurentVector::x_pow(&[-1]), &s).unwrap();
            assert!(!r.coefficient(&[1]).is_zero());
            let r = act_on_quotient(&delta1(m, 1), &LaurentVector::x_pow(&[m as i64 - 1]), &s)
                .unwrap();
            assert!(r.is_zero());
            let v = &LaurentVector::x_pow(&[-3])
                .checked_add(&LaurentVector::x_pow(&[m as i64]))
                .unwrap();
            let r = act_on_quotient(&LaurentOp::one(1), v, &s).unwrap();
            assert_eq!(r, LaurentVector::x_pow(&[-3]));
            assert!(matches!(
                act_on_quotient(&LaurentOp::partial(1, 0), v, &s),
                Err(Error::NotStable(_))
            ));
        }
    }

    #[test]
    fn stability_examples() {
        let s = CuspShape::single(2).unwrap();
        let mask = GradedMask::cusp(&s);
        assert!(stability_check(&cusp_generating_set(2), &mask, 12).unwrap());
        assert!(!stability_check(&[LaurentOp::partial(1, 0)], &mask, 12).unwrap());
        assert!(!stability_check(&[LaurentOp::x(1, 0)], &mask, 12).unwrap());
        assert!(matches!(
            stability_check(&cusp_generating_set(2), &mask, 4),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn support_examples() {
        let s = CuspShape::single(2).unwrap();
        let a = support(CuspModule::A, &s);
        let ap = support(CuspModule::APrime, &s);
        let in_a: Vec<i64> = (-3..6).filter(|&r| a.contains_root(&[r])).collect();
        assert_eq!(in_a, vec![1, 3, 4, 5]);
        let in_ap: Vec<i64> = (-3..6).filter(|&r| ap.contains_root(&[r])).collect();
        assert_eq!(in_ap, vec![-3, -2, -1, 0, 2]);
        for r in -20..=20 {
            assert!(a.contains_root(&[r]) != ap.contains_root(&[r]));
        }
        assert_eq!(a.roots.render(), "{1} ∪ [3, inf)");
        assert_eq!(ap.roots.render(), "(-inf, 0] ∪ {2}");
        assert_eq!(ExponentSet::cusp(3).complement().unwrap(), ExponentSet::cusp_complement(3));
    }

    #[test]
    fn simplicity_examples() {
        assert!(simplicity_probe(CuspModule::A, 2, 10).unwrap().passed());
        assert!(simplicity_probe(CuspModule::APrime, 3, 10).unwrap().passed());
        let bad = run_transitions(CuspModule::A, 3, 10, &[(-1, 3)]).unwrap();
        assert!(!bad.passed());
        assert!(simplicity_probe(CuspModule::A, 3, 5).is_err());
    }

    #[test]
    fn blocks_split_like_the_restriction() {
        for m in 2..7u32 {
            let m64 = m as i64;
            let w = 3 * m64;
            let a = restriction_blocks(CuspModule::A, m, w).unwrap();
            assert_eq!(a.len(), 2);
            assert_eq!(a[0].exponents, vec![0]);
            assert_eq!(a[1].exponents, (m64..=w).collect::<Vec<_>>());
            assert!(a.iter().all(|b| b.closed_above && b.closed_below));
            let ap = restriction_blocks(CuspModule::APrime, m, w).unwrap();
            assert_eq!(ap.len(), 2);
            assert_eq!(ap[0].exponents, (-w..=-1).collect::<Vec<_>>());
            assert_eq!(ap[1].exponents, (1..m64).collect::<Vec<_>>());
            assert!(ap.iter().all(|b| b.closed_above && b.closed_below));
        }
    }

    #[test]
    fn two_variable_action() {
        let op = LaurentOp::monomial(
            &BasePoly::var(2, 0) * &BasePoly::var(2, 1),
            Degree(vec![-1, 1]),
        );
        let r = act(&op, &LaurentVector::x_pow(&[2, 3])).unwrap();
        // h1 = 2, h2 = 5
        assert_eq!(r, LaurentVector::x_pow(&[1, 4]).scale(&rat(10)));
        assert_eq!(r.render(), "10*x1*x2^4");
    }
}
