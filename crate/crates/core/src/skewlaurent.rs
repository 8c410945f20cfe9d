//! The skew Laurent polynomial ring `D_n[x_1^{±1}, ..., x_n^{±1}; σ_1, ..., σ_n]`
//! with `σ_i(h_j) = h_j - δ_ij`.
//!
//! Every ring in this crate (the Weyl algebra, the rings of differential
//! operators on cusp algebras and their GWA subalgebras) sits inside this one,
//! so identities between them are checked here by exact comparison of
//! component maps.
//!
//! Coefficients are written on the left: a component `(d, α)` stands for
//! `d · x^α`, and `x^α · e = σ^α(e) · x^α`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{rat, BasePoly, PolyJson, Rational};

/// A degree vector in `Z^n`, ordered by total degree and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Degree(pub Vec<i64>);

impl Degree {
    pub fn zero(n: usize) -> Self {
        Degree(vec![0; n])
    }

    pub fn unit(n: usize, i: usize, k: i64) -> Self {
        let mut v = vec![0; n];
        v[i] = k;
        Degree(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<i64>> for Degree {
    fn from(v: Vec<i64>) -> Self {
        Degree(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentOp {
    nvars: usize,
    comps: BTreeMap<Degree, BasePoly>,
}

impl LaurentOp {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1);
        LaurentOp {
            nvars,
            comps: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(BasePoly::one(nvars))
    }

    pub fn from_poly(p: BasePoly) -> Self {
        let n = p.nvars();
        Self::monomial(p, Degree::zero(n))
    }

    pub fn from_rational(nvars: usize, c: Rational) -> Self {
        Self::from_poly(BasePoly::constant(nvars, c))
    }

    /// `coeff · x^degree`.
    pub fn monomial(coeff: BasePoly, degree: Degree) -> Self {
        let nvars = coeff.nvars();
        assert_eq!(degree.len(), nvars, "degree length must match nvars");
        let mut out = Self::zero(nvars);
        if !coeff.is_zero() {
            out.comps.insert(degree, coeff);
        }
        out
    }

    pub fn from_components<I>(nvars: usize, comps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Degree, BasePoly)>,
    {
        let mut out = Self::zero(nvars);
        for (d, p) in comps {
            if d.len() != nvars || p.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: if d.len() != nvars { d.len() } else { p.nvars() },
                });
            }
            out.add_component(d, p);
        }
        Ok(out)
    }

    fn add_component(&mut self, d: Degree, p: BasePoly) {
        if p.is_zero() {
            return;
        }
        match self.comps.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &p;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `x_{i+1}^k`.
    pub fn x_pow(nvars: usize, i: usize, k: i64) -> Self {
        Self::monomial(BasePoly::one(nvars), Degree::unit(nvars, i, k))
    }

    pub fn x(nvars: usize, i: usize) -> Self {
        Self::x_pow(nvars, i, 1)
    }

    pub fn h(nvars: usize, i: usize) -> Self {
        Self::from_poly(BasePoly::var(nvars, i))
    }

    /// `∂_{i+1} = h_{i+1} x_{i+1}^{-1}`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        Self::monomial(BasePoly::var(nvars, i), Degree::unit(nvars, i, -1))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Components in ascending degree order.
    pub fn components(&self) -> impl Iterator<Item = (&Degree, &BasePoly)> {
        self.comps.iter()
    }

    pub fn support(&self) -> Vec<Degree> {
        self.comps.keys().cloned().collect()
    }

    /// Coefficient of `x^α`; zero if absent.
    pub fn graded_component(&self, alpha: &Degree) -> BasePoly {
        self.comps
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| BasePoly::zero(self.nvars))
    }

    /// The single degree this element lives in, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<&Degree> {
        if self.comps.len() == 1 {
            self.comps.keys().next()
        } else {
            None
        }
    }

    /// For a degree-zero element, its polynomial.
    pub fn as_poly(&self) -> Option<BasePoly> {
        match self.comps.len() {
            0 => Some(BasePoly::zero(self.nvars)),
            1 => {
                let (d, p) = self.comps.iter().next().unwrap();
                d.is_zero().then(|| p.clone())
            }
            _ => None,
        }
    }

    fn check_arity(&self, other: &LaurentOp) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentOp) -> Result<LaurentOp> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (d, p) in &other.comps {
            out.add_component(d.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentOp) -> Result<LaurentOp> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (d, p) in &other.comps {
            out.add_component(d.clone(), -p);
        }
        Ok(out)
    }

    /// `(d x^α)(e x^β) = d σ^α(e) x^{α+β}`.
    pub fn checked_mul(&self, other: &LaurentOp) -> Result<LaurentOp> {
        self.check_arity(other)?;
        let mut out = LaurentOp::zero(self.nvars);
        for (a, d) in &self.comps {
            for (b, e) in &other.comps {
                let coeff = d * &e.shifted(&a.0);
                out.add_component(a + b, coeff);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> LaurentOp {
        let mut out = LaurentOp::zero(self.nvars);
        for (d, p) in &self.comps {
            out.add_component(d.clone(), p.scale(c));
        }
        out
    }

    /// Left multiplication by a polynomial.
    pub fn left_mul_poly(&self, p: &BasePoly) -> LaurentOp {
        let mut out = LaurentOp::zero(self.nvars);
        for (d, c) in &self.comps {
            out.add_component(d.clone(), p * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> LaurentOp {
        let mut acc = LaurentOp::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `uv - vu`.
    pub fn commutator(&self, other: &LaurentOp) -> Result<LaurentOp> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    /// Membership in the Weyl algebra `A_n`: for every degree `α` the
    /// coefficient must be divisible by `∏_{i: α_i<0} ∏_{k=0}^{|α_i|-1} (h_i + k)`.
    pub fn weyl_membership(&self) -> bool {
        self.comps.iter().all(|(alpha, coeff)| {
            let denom = weyl_denominator(self.nvars, alpha);
            denom.divides(coeff)
        })
    }

    /// Canonical text form, for example `(h^2-3*h) * x1^-1 * x2^2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let n = self.nvars;
        let terms: Vec<String> = self
            .comps
            .iter()
            .map(|(alpha, coeff)| {
                let mut parts = vec![format!("({coeff})")];
                for (i, &a) in alpha.0.iter().enumerate() {
                    let name = x_name(n, i);
                    match a {
                        0 => {}
                        1 => parts.push(name),
                        _ => parts.push(format!("{name}^{a}")),
                    }
                }
                parts.join(" * ")
            })
            .collect();
        terms.join(" + ")
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            nvars: self.nvars,
            text: self.render(),
            components: self
                .comps
                .iter()
                .map(|(d, p)| ComponentJson {
                    degree: d.0.clone(),
                    coeff: p.into(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &LaurentJson) -> Result<LaurentOp> {
        let comps = j
            .components
            .iter()
            .map(|c| Ok((Degree(c.degree.clone()), BasePoly::try_from(&c.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        LaurentOp::from_components(j.nvars, comps)
    }
}

/// `∏_{i: α_i<0} ∏_{k=0}^{|α_i|-1} (h_i + k)`: the coefficient of `∂^{-α}` in
/// terms of `x^α`.
pub fn weyl_denominator(nvars: usize, alpha: &Degree) -> BasePoly {
    let mut out = BasePoly::one(nvars);
    for (i, &a) in alpha.0.iter().enumerate() {
        for k in 0..(-a).max(0) {
            out = &out * &BasePoly::linear(nvars, i, rat(-k));
        }
    }
    out
}

pub fn x_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "x".to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// The generators `x_i`, `∂_i`, `h_i` of the Weyl algebra inside the skew
/// Laurent ring.
#[derive(Clone, Debug)]
pub struct WeylGenerators {
    pub x: LaurentOp,
    pub d: LaurentOp,
    pub h: LaurentOp,
}

pub fn weyl_generators(nvars: usize) -> Vec<WeylGenerators> {
    (0..nvars)
        .map(|i| WeylGenerators {
            x: LaurentOp::x(nvars, i),
            d: LaurentOp::partial(nvars, i),
            h: LaurentOp::h(nvars, i),
        })
        .collect()
}

impl fmt::Display for LaurentOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &LaurentOp {
    type Output = LaurentOp;
    fn add(self, rhs: &LaurentOp) -> LaurentOp {
        self.checked_add(rhs).expect("operator arity mismatch")
    }
}

impl Sub for &LaurentOp {
    type Output = LaurentOp;
    fn sub(self, rhs: &LaurentOp) -> LaurentOp {
        self.checked_sub(rhs).expect("operator arity mismatch")
    }
}

impl Mul for &LaurentOp {
    type Output = LaurentOp;
    fn mul(self, rhs: &LaurentOp) -> LaurentOp {
        self.checked_mul(rhs).expect("operator arity mismatch")
    }
}

impl Neg for &LaurentOp {
    type Output = LaurentOp;
    fn neg(self) -> LaurentOp {
        self.scale(&-Rational::one())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LaurentJson {
    pub nvars: usize,
    pub text: String,
    pub components: Vec<ComponentJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComponentJson {
    pub degree: Vec<i64>,
    pub coeff: PolyJson,
}

impl LaurentOp {
    /// Degree-zero element equal to `p`.
    pub fn equals_poly(&self, p: &BasePoly) -> bool {
        self.as_poly().is_some_and(|q| &q == p)
    }

    pub fn is_one(&self) -> bool {
        self.as_poly().is_some_and(|p| p.is_one())
    }
}
