//! Generalized Weyl algebras `D[X, Y; σ, a]` of rank n over `D_n`, with
//! `σ_i: h_i ↦ h_i - s_i`.
//!
//! Elements are kept in the left-coefficient basis `Σ c_α v_α`, where
//! `v_α = ∏_i v_{α_i}(i)`, `v_k = X^k` for `k > 0` and `v_{-k} = Y^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::cuspops::{bba_defining_element, delta1, phi};
use crate::error::{Error, Result};
use crate::exactpoly::{BasePoly, Rational};
use crate::skewlaurent::{Degree, LaurentOp};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GwaPresentation {
    nvars: usize,
    a: Vec<BasePoly>,
    steps: Vec<u32>,
}

impl GwaPresentation {
    pub fn new(a: Vec<BasePoly>, steps: Vec<u32>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidPresentation("rank must be >= 1".into()));
        }
        if steps.len() != n {
            return Err(Error::InvalidPresentation(format!(
                "{} defining elements but {} steps",
                n,
                steps.len()
            )));
        }
        for (i, ai) in a.iter().enumerate() {
            if ai.nvars() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: ai.nvars(),
                });
            }
            if ai.is_zero() {
                return Err(Error::InvalidPresentation(format!("a_{} is zero", i + 1)));
            }
            if ai.terms().any(|(m, _)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .any(|(j, &e)| j != i && e > 0)
            }) {
                return Err(Error::InvalidPresentation(format!(
                    "a_{} must only involve h_{}",
                    i + 1,
                    i + 1
                )));
            }
        }
        if let Some(i) = steps.iter().position(|&s| s == 0) {
            return Err(Error::InvalidPresentation(format!("step {} is zero", i + 1)));
        }
        Ok(GwaPresentation { nvars: n, a, steps })
    }

    /// `A_n`: `a_i = h_i`, unit steps.
    pub fn weyl(n: usize) -> Self {
        Self::new((0..n).map(|i| BasePoly::var(n, i)).collect(), vec![1; n])
            .expect("valid presentation")
    }

    /// `𝒜` for `A(m)`: `a = φ_{-m}`, step `m`.
    pub fn cal_a(m: u32) -> Self {
        Self::new(vec![phi(m, -(m as i64))], vec![m]).expect("valid presentation")
    }

    /// `𝔸` for `A(m)`: `a = h(h-1)(h-m)`, step 1.
    pub fn bb_a(m: u32) -> Self {
        Self::new(vec![bba_defining_element(m)], vec![1]).expect("valid presentation")
    }

    /// Tensor product of presentations; variables are numbered factor by factor.
    pub fn tensor(parts: &[GwaPresentation]) -> Result<Self> {
        let n: usize = parts.iter().map(|p| p.nvars).sum();
        let mut a = Vec::with_capacity(n);
        let mut steps = Vec::with_capacity(n);
        let mut offset = 0;
        for p in parts {
            let to: Vec<usize> = (offset..offset + p.nvars).collect();
            for ai in &p.a {
                a.push(ai.embed_vars(&to, n)?);
            }
            steps.extend_from_slice(&p.steps);
            offset += p.nvars;
        }
        Self::new(a, steps)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn a(&self) -> &[BasePoly] {
        &self.a
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    /// `σ^k(p)` with `σ_i = shift by s_i`.
    pub fn sigma_pow(&self, p: &BasePoly, k: &[i64]) -> BasePoly {
        let shift: Vec<i64> = k
            .iter()
            .zip(&self.steps)
            .map(|(&ki, &si)| ki * si as i64)
            .collect();
        p.shifted(&shift)
    }

    /// `σ_i^k(p)`.
    pub fn sigma_i(&self, i: usize, k: i64, p: &BasePoly) -> BasePoly {
        let mut shift = vec![0; self.nvars];
        shift[i] = k * self.steps[i] as i64;
        p.shifted(&shift)
    }

    /// `(n, m)` in factor `i`: `v_n v_m = (n, m) v_{n+m}`.
    pub fn pair_coeff(&self, i: usize, n: i64, m: i64) -> BasePoly {
        let a = &self.a[i];
        let mut out = BasePoly::one(self.nvars);
        let range: Vec<i64> = if n > 0 && m < 0 {
            let m = -m;
            // σ^n(a) ⋯ σ^{max(n-m, 0)+1}(a)
            ((n - m).max(0) + 1..=n).collect()
        } else if n < 0 && m > 0 {
            let n = -n;
            // σ^{-n+1}(a) ⋯ σ^{min(-n+m, 0)}(a)
            (-n + 1..=(m - n).min(0)).collect()
        } else {
            vec![]
        };
        for k in range {
            out = &out * &self.sigma_i(i, k, a);
        }
        out
    }

    /// `∏_i (α_i, β_i)_i`.
    pub fn pair_coeff_multi(&self, alpha: &Degree, beta: &Degree) -> BasePoly {
        let mut out = BasePoly::one(self.nvars);
        for i in 0..self.nvars {
            let c = self.pair_coeff(i, alpha.0[i], beta.0[i]);
            if !c.is_one() {
                out = &out * &c;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwaElement {
    pres: Arc<GwaPresentation>,
    coords: BTreeMap<Degree, BasePoly>,
}

impl GwaElement {
    pub fn zero(pres: &Arc<GwaPresentation>) -> Self {
        GwaElement {
            pres: Arc::clone(pres),
            coords: BTreeMap::new(),
        }
    }

    pub fn one(pres: &Arc<GwaPresentation>) -> Self {
        Self::from_poly(pres, BasePoly::one(pres.nvars))
    }

    pub fn from_poly(pres: &Arc<GwaPresentation>, p: BasePoly) -> Self {
        Self::monomial(pres, p, Degree::zero(pres.nvars))
    }

    /// `c · v_α`.
    pub fn monomial(pres: &Arc<GwaPresentation>, c: BasePoly, alpha: Degree) -> Self {
        assert_eq!(c.nvars(), pres.nvars);
        assert_eq!(alpha.len(), pres.nvars);
        let mut out = Self::zero(pres);
        out.add_coord(alpha, c);
        out
    }

    pub fn v(pres: &Arc<GwaPresentation>, alpha: Degree) -> Self {
        Self::monomial(pres, BasePoly::one(pres.nvars), alpha)
    }

    pub fn x(pres: &Arc<GwaPresentation>, i: usize) -> Self {
        Self::v(pres, Degree::unit(pres.nvars, i, 1))
    }

    pub fn y(pres: &Arc<GwaPresentation>, i: usize) -> Self {
        Self::v(pres, Degree::unit(pres.nvars, i, -1))
    }

    pub fn h(pres: &Arc<GwaPresentation>, i: usize) -> Self {
        Self::from_poly(pres, BasePoly::var(pres.nvars, i))
    }

    /// Builds `Σ v_α β_α` from right coefficients.
    pub fn from_right_coords<I>(pres: &Arc<GwaPresentation>, coords: I) -> Self
    where
        I: IntoIterator<Item = (Degree, BasePoly)>,
    {
        let mut out = Self::zero(pres);
        for (alpha, beta) in coords {
            let left = pres.sigma_pow(&beta, &alpha.0);
            out.add_coord(alpha, left);
        }
        out
    }

    fn add_coord(&mut self, alpha: Degree, c: BasePoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coords.entry(alpha);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn presentation(&self) -> &Arc<GwaPresentation> {
        &self.pres
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = (&Degree, &BasePoly)> {
        self.coords.iter()
    }

    pub fn coord(&self, alpha: &Degree) -> BasePoly {
        self.coords
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| BasePoly::zero(self.pres.nvars))
    }

    /// Right coefficient at `v_α`: `c v_α = v_α σ^{-α}(c)`.
    pub fn right_coord(&self, alpha: &Degree) -> BasePoly {
        let neg: Vec<i64> = alpha.0.iter().map(|a| -a).collect();
        self.pres.sigma_pow(&self.coord(alpha), &neg)
    }

    pub fn support(&self) -> Vec<Degree> {
        self.coords.keys().cloned().collect()
    }

    fn same_pres(&self, other: &GwaElement) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn checked_add(&self, other: &GwaElement) -> Result<GwaElement> {
        self.same_pres(other)?;
        let mut out = self.clone();
        for (a, c) in &other.coords {
            out.add_coord(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &GwaElement) -> Result<GwaElement> {
        self.same_pres(other)?;
        let mut out = self.clone();
        for (a, c) in &other.coords {
            out.add_coord(a.clone(), -c);
        }
        Ok(out)
    }

    /// `(c v_α)(d v_β) = c σ^α(d) (α, β) v_{α+β}`.
    pub fn checked_mul(&self, other: &GwaElement) -> Result<GwaElement> {
        self.same_pres(other)?;
        let p = &self.pres;
        let mut out = GwaElement::zero(p);
        for (alpha, c) in &self.coords {
            for (beta, d) in &other.coords {
                let mut coeff = c * &p.sigma_pow(d, &alpha.0);
                let pc = p.pair_coeff_multi(alpha, beta);
                if !pc.is_one() {
                    coeff = &coeff * &pc;
                }
                out.add_coord(alpha + beta, coeff);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> GwaElement {
        let mut out = GwaElement::zero(&self.pres);
        for (a, c) in &self.coords {
            out.add_coord(a.clone(), c.scale(r));
        }
        out
    }

    pub fn left_mul_poly(&self, d: &BasePoly) -> GwaElement {
        let mut out = GwaElement::zero(&self.pres);
        for (a, c) in &self.coords {
            out.add_coord(a.clone(), d * c);
        }
        out
    }

    /// `self · d`.
    pub fn right_mul_poly(&self, d: &BasePoly) -> GwaElement {
        let mut out = GwaElement::zero(&self.pres);
        for (a, c) in &self.coords {
            out.add_coord(a.clone(), c * &self.pres.sigma_pow(d, &a.0));
        }
        out
    }

    pub fn pow(&self, e: u32) -> GwaElement {
        let mut acc = GwaElement::one(&self.pres);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same presentation");
        }
        acc
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let n = self.pres.nvars;
        let terms: Vec<String> = self
            .coords
            .iter()
            .map(|(alpha, c)| {
                let mut parts = vec![format!("({c})")];
                for (i, &k) in alpha.0.iter().enumerate() {
                    let (name, e) = match k.signum() {
                        0 => continue,
                        1 => (gen_name("X", n, i), k),
                        _ => (gen_name("Y", n, i), -k),
                    };
                    if e == 1 {
                        parts.push(name);
                    } else {
                        parts.push(format!("{name}^{e}"));
                    }
                }
                parts.join(" * ")
            })
            .collect();
        terms.join(" + ")
    }
}

fn gen_name(base: &str, n: usize, i: usize) -> String {
    if n == 1 {
        base.to_string()
    } else {
        format!("{base}{}", i + 1)
    }
}

impl fmt::Display for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn gwa_multiply(u: &GwaElement, v: &GwaElement) -> Result<GwaElement> {
    u.checked_mul(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, id: String, lhs: &GwaElement, rhs: &GwaElement) {
        let passed = lhs == rhs;
        let witness = (!passed).then(|| format!("{lhs} != {rhs}"));
        self.checks.push(Check {
            id,
            passed,
            witness,
        });
    }
}

/// All degree vectors with every coordinate in `[-depth, depth]`.
fn box_degrees(n: usize, depth: i64) -> Vec<Degree> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-depth..=depth).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Degree).collect()
}

/// Checks the defining relations and associativity on `v_α` with every
/// coordinate of `α` bounded by `depth`.
pub fn verify_presentation(p: &GwaPresentation, depth: u32) -> VerifyReport {
    let p = Arc::new(p.clone());
    let n = p.nvars;
    let mut rep = VerifyReport::default();
    let depth = depth.max(1) as i64;
    for i in 0..n {
        let x = GwaElement::x(&p, i);
        let y = GwaElement::y(&p, i);
        let a = GwaElement::from_poly(&p, p.a[i].clone());
        let sa = GwaElement::from_poly(&p, p.sigma_i(i, 1, &p.a[i]));
        rep.push(format!("YX=a[{}]", i + 1), &y.checked_mul(&x).unwrap(), &a);
        rep.push(format!("XY=sigma(a)[{}]", i + 1), &x.checked_mul(&y).unwrap(), &sa);
        for j in 0..n {
            let hj = BasePoly::var(n, j);
            let hh = GwaElement::from_poly(&p, hj.clone());
            rep.push(
                format!("X{}h{}", i + 1, j + 1),
                &x.checked_mul(&hh).unwrap(),
                &x.left_mul_poly(&p.sigma_i(i, 1, &hj)),
            );
            rep.push(
                format!("Y{}h{}", i + 1, j + 1),
                &y.checked_mul(&hh).unwrap(),
                &y.left_mul_poly(&p.sigma_i(i, -1, &hj)),
            );
            if j != i {
                let xj = GwaElement::x(&p, j);
                let yj = GwaElement::y(&p, j);
                for (an, ae) in [("X", &x), ("Y", &y)] {
                    for (bn, be) in [("X", &xj), ("Y", &yj)] {
                        rep.push(
                            format!("[{an}{},{bn}{}]", i + 1, j + 1),
                            &ae.checked_mul(be).unwrap(),
                            &be.checked_mul(ae).unwrap(),
                        );
                    }
                }
            }
        }
        for k in 1..=depth {
            rep.push(
                format!("X{}^{k}=v", i + 1),
                &x.pow(k as u32),
                &GwaElement::v(&p, Degree::unit(n, i, k)),
            );
            rep.push(
                format!("Y{}^{k}=v", i + 1),
                &y.pow(k as u32),
                &GwaElement::v(&p, Degree::unit(n, i, -k)),
            );
        }
    }
    let degs = box_degrees(n, depth);
    let vs: Vec<GwaElement> = degs.iter().map(|d| GwaElement::v(&p, d.clone())).collect();
    for (ia, va) in vs.iter().enumerate() {
        for (ib, vb) in vs.iter().enumerate() {
            let ab = va.checked_mul(vb).unwrap();
            for (ic, vc) in vs.iter().enumerate() {
                let lhs = ab.checked_mul(vc).unwrap();
                let rhs = va.checked_mul(&vb.checked_mul(vc).unwrap()).unwrap();
                if lhs != rhs {
                    rep.push(
                        format!("assoc{:?}{:?}{:?}", degs[ia].0, degs[ib].0, degs[ic].0),
                        &lhs,
                        &rhs,
                    );
                }
            }
        }
    }
    rep.checks.push(Check {
        id: format!("associativity(depth={depth})"),
        passed: !rep.checks.iter().any(|c| c.id.starts_with("assoc") && !c.passed),
        witness: None,
    });
    rep
}

/// Images of `X_i`, `Y_i` in the skew Laurent ring; `D` maps identically.
#[derive(Clone, Debug)]
pub struct Embedding {
    pres: Arc<GwaPresentation>,
    x: Vec<LaurentOp>,
    y: Vec<LaurentOp>,
}

impl Embedding {
    /// Checks `Y_iX_i = a_i`, `X_iY_i = σ_i(a_i)`, `X_i d = σ_i(d) X_i`,
    /// `Y_i d = σ_i^{-1}(d) Y_i` and commutation across factors.
    pub fn new(pres: &Arc<GwaPresentation>, x: Vec<LaurentOp>, y: Vec<LaurentOp>) -> Result<Self> {
        let n = pres.nvars;
        if x.len() != n || y.len() != n {
            return Err(Error::ImagesViolateRelations(format!(
                "need {n} images of X and Y"
            )));
        }
        for img in x.iter().chain(&y) {
            if img.nvars() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: img.nvars(),
                });
            }
        }
        let fail = |what: String| Err(Error::ImagesViolateRelations(what));
        for i in 0..n {
            let a = &pres.a[i];
            if !(&y[i] * &x[i]).equals_poly(a) {
                return fail(format!("Y{0}X{0} != a{0}", i + 1));
            }
            if !(&x[i] * &y[i]).equals_poly(&pres.sigma_i(i, 1, a)) {
                return fail(format!("X{0}Y{0} != sigma(a{0})", i + 1));
            }
            for j in 0..n {
                let hj = BasePoly::var(n, j);
                let hl = LaurentOp::from_poly(hj.clone());
                if &x[i] * &hl != x[i].left_mul_poly(&pres.sigma_i(i, 1, &hj)) {
                    return fail(format!("X{}h{} != sigma(h{})X{}", i + 1, j + 1, j + 1, i + 1));
                }
                if &y[i] * &hl != y[i].left_mul_poly(&pres.sigma_i(i, -1, &hj)) {
                    return fail(format!("Y{}h{} != sigma^-1(h{})Y{}", i + 1, j + 1, j + 1, i + 1));
                }
                if j != i {
                    for (u, un) in [(&x[i], "X"), (&y[i], "Y")] {
                        for (v, vn) in [(&x[j], "X"), (&y[j], "Y")] {
                            if !u.commutator(v)?.is_zero() {
                                return fail(format!("[{un}{},{vn}{}] != 0", i + 1, j + 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(Embedding {
            pres: Arc::clone(pres),
            x,
            y,
        })
    }

    pub fn presentation(&self) -> &Arc<GwaPresentation> {
        &self.pres
    }

    /// Image of `v_α`.
    pub fn image_of_v(&self, alpha: &Degree) -> LaurentOp {
        let n = self.pres.nvars;
        let mut out = LaurentOp::one(n);
        for (i, &k) in alpha.0.iter().enumerate() {
            let g = if k >= 0 { &self.x[i] } else { &self.y[i] };
            out = &out * &g.pow(k.unsigned_abs() as u32);
        }
        out
    }

    pub fn apply(&self, u: &GwaElement) -> Result<LaurentOp> {
        if *u.pres != *self.pres {
            return Err(Error::PresentationMismatch);
        }
        let n = self.pres.nvars;
        let mut out = LaurentOp::zero(n);
        for (alpha, c) in &u.coords {
            out = &out + &self.image_of_v(alpha).left_mul_poly(c);
        }
        Ok(out)
    }

    /// `X ↦ x`, `Y ↦ ∂`.
    pub fn weyl(n: usize) -> Self {
        let p = Arc::new(GwaPresentation::weyl(n));
        let x = (0..n).map(|i| LaurentOp::x(n, i)).collect();
        let y = (0..n).map(|i| LaurentOp::partial(n, i)).collect();
        Self::new(&p, x, y).expect("Weyl images satisfy the relations")
    }

    /// `X ↦ x^m`, `Y ↦ δ_{-m}`.
    pub fn cal_a(m: u32) -> Self {
        let p = Arc::new(GwaPresentation::cal_a(m));
        let x = vec![LaurentOp::x_pow(1, 0, m as i64)];
        let y = vec![delta1(m, -(m as i64))];
        Self::new(&p, x, y).expect("calA images satisfy the relations")
    }

    /// `X ↦ δ_1`, `Y ↦ δ_{-1}`.
    pub fn bb_a(m: u32) -> Self {
        let p = Arc::new(GwaPresentation::bb_a(m));
        Self::new(&p, vec![delta1(m, 1)], vec![delta1(m, -1)])
            .expect("bbA images satisfy the relations")
    }
}

pub fn embed(u: &GwaElement, x: Vec<LaurentOp>, y: Vec<LaurentOp>) -> Result<LaurentOp> {
    Embedding::new(u.presentation(), x, y)?.apply(u)
}

impl GwaElement {
    /// `-self`.
    pub fn neg(&self) -> GwaElement {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn roots(rs: &[i64]) -> BasePoly {
        BasePoly::from_roots(1, 0, &rs.iter().map(|&r| rat(r)).collect::<Vec<_>>())
    }

    #[test]
    fn weyl_products() {
        let p = Arc::new(GwaPresentation::weyl(1));
        let x = GwaElement::x(&p, 0);
        let y = GwaElement::y(&p, 0);
        assert_eq!(y.checked_mul(&x).unwrap(), GwaElement::from_poly(&p, roots(&[0])));
        assert_eq!(x.checked_mul(&y).unwrap(), GwaElement::from_poly(&p, roots(&[1])));
    }

    #[test]
    fn cal_a_products() {
        let p = Arc::new(GwaPresentation::cal_a(2));
        let x = GwaElement::x(&p, 0);
        let y = GwaElement::y(&p, 0);
        assert_eq!(y.checked_mul(&x).unwrap(), GwaElement::from_poly(&p, roots(&[-1, 2])));
        assert_eq!(x.checked_mul(&y).unwrap(), GwaElement::from_poly(&p, roots(&[1, 4])));
    }

    #[test]
    fn pair_coeff_cases() {
        let p = GwaPresentation::weyl(1);
        // v_3 v_{-2} = σ^3(h)σ^2(h) v_1
        assert_eq!(p.pair_coeff(0, 3, -2), roots(&[3, 2]));
        // v_2 v_{-3} = σ^2(h)σ(h) v_{-1}
        assert_eq!(p.pair_coeff(0, 2, -3), roots(&[2, 1]));
        // v_{-3} v_2 = σ^{-2}(h)σ^{-1}(h) v_{-1}
        assert_eq!(p.pair_coeff(0, -3, 2), roots(&[-2, -1]));
        // v_{-2} v_3 = σ^{-1}(h) h v_1
        assert_eq!(p.pair_coeff(0, -2, 3), roots(&[-1, 0]));
        assert!(p.pair_coeff(0, 2, 3).is_one());
        assert!(p.pair_coeff(0, -2, -3).is_one());
        assert!(p.pair_coeff(0, 0, -3).is_one());
    }

    #[test]
    fn presentations_verify() {
        for (p, depth) in [
            (GwaPresentation::weyl(1), 3),
            (GwaPresentation::bb_a(3), 3),
            (GwaPresentation::cal_a(2), 3),
            (GwaPresentation::weyl(2), 1),
        ] {
            let r = verify_presentation(&p, depth);
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn zero_a_is_rejected() {
        assert!(matches!(
            GwaPresentation::new(vec![BasePoly::zero(1)], vec![1]),
            Err(Error::InvalidPresentation(_))
        ));
        assert!(GwaPresentation::new(vec![BasePoly::var(2, 1), BasePoly::var(2, 1)], vec![1, 1]).is_err());
        assert!(GwaPresentation::new(vec![BasePoly::var(1, 0)], vec![0]).is_err());
    }

    #[test]
    fn embedding_examples() {
        let e = Embedding::cal_a(2);
        let p = Arc::clone(e.presentation());
        assert_eq!(e.apply(&GwaElement::x(&p, 0)).unwrap(), LaurentOp::x_pow(1, 0, 2));
        let e = Embedding::bb_a(3);
        let p = Arc::clone(e.presentation());
        let img = e.apply(&GwaElement::y(&p, 0)).unwrap();
        assert_eq!(img, LaurentOp::monomial(roots(&[0, 3]), Degree(vec![-1])));
        let a = GwaElement::from_poly(&p, p.a()[0].clone());
        assert!(e.apply(&a).unwrap().equals_poly(&p.a()[0]));
    }

    #[test]
    fn bad_images_rejected() {
        let p = Arc::new(GwaPresentation::bb_a(2));
        let r = Embedding::new(&p, vec![LaurentOp::x(1, 0)], vec![LaurentOp::partial(1, 0)]);
        assert!(matches!(r, Err(Error::ImagesViolateRelations(_))));
    }

    #[test]
    fn embedding_is_multiplicative_on_basis() {
        for e in [Embedding::cal_a(3), Embedding::bb_a(2), Embedding::weyl(1)] {
            let p = Arc::clone(e.presentation());
            for a in -4..=4 {
                for b in -4..=4 {
                    let u = GwaElement::v(&p, Degree(vec![a]));
                    let v = GwaElement::v(&p, Degree(vec![b]));
                    let lhs = e.apply(&u.checked_mul(&v).unwrap()).unwrap();
                    let rhs = &e.apply(&u).unwrap() * &e.apply(&v).unwrap();
                    assert_eq!(lhs, rhs, "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn right_coefficient_identity() {
        // ⟨n,m⟩ = σ^{-n-m}((n,m))
        for p in [GwaPresentation::weyl(1), GwaPresentation::cal_a(2)] {
            let p = Arc::new(p);
            for n in -5..=5i64 {
                for m in -5..=5i64 {
                    let prod = GwaElement::v(&p, Degree(vec![n]))
                        .checked_mul(&GwaElement::v(&p, Degree(vec![m])))
                        .unwrap();
                    let right = prod.right_coord(&Degree(vec![n + m]));
                    assert_eq!(right, p.sigma_pow(&p.pair_coeff(0, n, m), &[-n - m]));
                    let rebuilt =
                        GwaElement::from_right_coords(&p, [(Degree(vec![n + m]), right)]);
                    assert_eq!(rebuilt, prod);
                }
            }
        }
    }

    #[test]
    fn tensor_multiplies_factorwise() {
        let t = Arc::new(
            GwaPresentation::tensor(&[GwaPresentation::bb_a(2), GwaPresentation::cal_a(3)]).unwrap(),
        );
        assert_eq!(t.steps(), &[1, 3]);
        let x1 = GwaElement::x(&t, 0);
        let y2 = GwaElement::y(&t, 1);
        assert_eq!(x1.checked_mul(&y2).unwrap(), y2.checked_mul(&x1).unwrap());
        let y1x1 = GwaElement::y(&t, 0).checked_mul(&x1).unwrap();
        assert_eq!(y1x1.coord(&Degree(vec![0, 0])), t.a()[0]);
        assert!(verify_presentation(&t, 1).passed());
    }

    #[test]
    fn render_words() {
        let p = Arc::new(GwaPresentation::weyl(1));
        let u = GwaElement::y(&p, 0).pow(2).left_mul_poly(&roots(&[1]));
        assert_eq!(u.render(), "(h-1) * Y^2");
        let t = Arc::new(GwaPresentation::weyl(2));
        let u = GwaElement::v(&t, Degree(vec![1, -2]));
        assert_eq!(u.render(), "(1) * X1 * Y2^2");
    }
}
