//! Exact multivariate polynomials over the rationals in commuting variables
//! `h1, ..., hn`.
//!
//! This is the base ring `D_n` for everything else in the crate. Elements are
//! stored sparsely: a map from exponent vectors to nonzero coefficients, kept
//! in graded-lexicographic order so that rendering is canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divide(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` commuting variables with rational coefficients.
///
/// Invariant: no zero coefficient is stored, so the zero polynomial has an
/// empty term map and structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// Rational roots of a univariate polynomial together with what is left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    /// Variable index the polynomial lives in.
    pub var: usize,
    /// Roots in ascending order, repeated according to multiplicity.
    pub roots: Vec<Rational>,
    /// Factor without rational roots; `self = cofactor * prod (h - r)`.
    pub cofactor: BasePoly,
}

impl RootSplit {
    /// Distinct roots, ascending.
    pub fn distinct_roots(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for r in &self.roots {
            if out.last() != Some(r) {
                out.push(r.clone());
            }
        }
        out
    }
}

impl BasePoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "polynomial ring needs at least one variable");
        BasePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    /// The variable `h_{var+1}`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range");
        let mut e = vec![0; nvars];
        e[var] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial(e), Rational::one());
        p
    }

    /// `h_{var+1} - root`.
    pub fn linear(nvars: usize, var: usize, root: Rational) -> Self {
        &Self::var(nvars, var) - &Self::constant(nvars, root)
    }

    /// Product of `h_{var+1} - r` over the given roots.
    pub fn from_roots(nvars: usize, var: usize, roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(nvars), |acc, r| {
            &acc * &Self::linear(nvars, var, r.clone())
        })
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Univariate polynomial from coefficients listed from degree 0 upwards.
    pub fn from_coeffs(nvars: usize, var: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` iff the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The single variable this polynomial depends on, if any. Constants
    /// report `None`.
    pub fn univariate_var(&self) -> Result<Option<usize>> {
        let mut found: Option<usize> = None;
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match found {
                    None => found = Some(i),
                    Some(j) if j == i => {}
                    Some(_) => return Err(Error::NotUnivariate(self.to_string())),
                }
            }
        }
        Ok(found)
    }

    fn check_arity(&self, other: &BasePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &BasePoly) -> Result<BasePoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &BasePoly) -> Result<BasePoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &BasePoly) -> Result<BasePoly> {
        self.check_arity(other)?;
        let mut out = BasePoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> BasePoly {
        if c.is_zero() {
            return BasePoly::zero(self.nvars);
        }
        BasePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BasePoly {
        let mut acc = BasePoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies the shift automorphism `h_i -> h_i - k_i`.
    pub fn shift(&self, k: &[i64]) -> Result<BasePoly> {
        if k.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: k.len(),
            });
        }
        if k.iter().all(|&s| s == 0) || self.is_constant() {
            return Ok(self.clone());
        }
        // Powers of (h_i - k_i) are shared across terms.
        let mut cache: Vec<Vec<BasePoly>> = vec![Vec::new(); self.nvars];
        let mut out = BasePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut term = BasePoly::constant(self.nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if k[i] == 0 {
                    let mut mono = vec![0; self.nvars];
                    mono[i] = e;
                    term = term.mul_monomial(&Monomial(mono));
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(BasePoly::one(self.nvars));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap()
                        * &BasePoly::linear(self.nvars, i, rat(k[i]));
                    powers.push(next);
                }
                term = &term * &powers[e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// `shift` for callers that already know the arity matches.
    pub(crate) fn shifted(&self, k: &[i64]) -> BasePoly {
        self.shift(k).expect("shift arity")
    }

    fn mul_monomial(&self, m: &Monomial) -> BasePoly {
        BasePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(tm, c)| (tm.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Returns `c` with `self = c * divisor`, or `NotDivisible`.
    pub fn exact_divide(&self, divisor: &BasePoly) -> Result<BasePoly> {
        self.check_arity(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = BasePoly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let Some(qm) = rm.divide(lm) else {
                return Err(Error::NotDivisible {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            };
            let qc = rc / lc;
            let step = divisor.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
            rem = &rem - &step;
        }
        Ok(quot)
    }

    pub fn divides(&self, other: &BasePoly) -> bool {
        !self.is_zero() && other.exact_divide(self).is_ok()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation at an integer point.
    pub fn eval_int(&self, point: &[i64]) -> Result<Rational> {
        let p: Vec<Rational> = point.iter().map(|&v| rat(v)).collect();
        self.eval(&p)
    }

    /// Re-embeds a polynomial that only uses variable `from` as a polynomial
    /// in variable `to` of a ring with `nvars` variables.
    pub fn relocate(&self, from: usize, nvars: usize, to: usize) -> Result<BasePoly> {
        match self.univariate_var()? {
            Some(v) if v != from => return Err(Error::NotUnivariate(self.to_string())),
            _ => {}
        }
        let mut out = BasePoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            e[to] = m.0[from];
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Renames variable `j` to `map[j]` inside a ring with `nvars` variables.
    pub fn embed_vars(&self, map: &[usize], nvars: usize) -> Result<BasePoly> {
        if map.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= nvars) {
            return Err(Error::ArityMismatch {
                expected: nvars,
                found: bad + 1,
            });
        }
        let mut out = BasePoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (j, &t) in map.iter().enumerate() {
                e[t] += m.0[j];
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients `c_0, c_1, ...` of a polynomial in the single variable `var`.
    fn dense(&self, var: usize) -> Vec<Rational> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.0[var] as usize] = c.clone();
        }
        out
    }

    /// All rational roots with multiplicity, by the rational root theorem on
    /// the primitive integer form, plus the root-free cofactor.
    pub fn rational_roots(&self) -> Result<RootSplit> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let var = self.univariate_var()?.unwrap_or(0);
        let mut coeffs = self.dense(var);
        let mut roots = Vec::new();
        loop {
            if coeffs.len() <= 1 {
                break;
            }
            if coeffs[0].is_zero() {
                coeffs.remove(0);
                roots.push(Rational::zero());
                continue;
            }
            match find_rational_root(&coeffs) {
                Some(r) => {
                    // Strip every copy of this root before searching again.
                    loop {
                        let (q, rem) = synthetic_division(&coeffs, &r);
                        if !rem.is_zero() {
                            break;
                        }
                        coeffs = q;
                        roots.push(r.clone());
                        if coeffs.len() <= 1 {
                            break;
                        }
                    }
                }
                None => break,
            }
        }
        roots.sort();
        Ok(RootSplit {
            var,
            roots,
            cofactor: BasePoly::from_coeffs(self.nvars, var, &coeffs),
        })
    }

    /// Canonical text in the given variable naming.
    pub fn render_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                out.push('-');
            } else if idx > 0 {
                out.push('+');
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(i)),
                    _ => factors.push(format!("{}^{}", names(i), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Variable name used in canonical text: `h` in one variable, `h1..hn` otherwise.
pub fn h_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "h".to_string()
    } else {
        format!("h{}", i + 1)
    }
}

impl fmt::Display for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars;
        f.write_str(&self.render_with(&|i| h_name(n, i)))
    }
}

impl Add for &BasePoly {
    type Output = BasePoly;
    fn add(self, rhs: &BasePoly) -> BasePoly {
        self.checked_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub for &BasePoly {
    type Output = BasePoly;
    fn sub(self, rhs: &BasePoly) -> BasePoly {
        self.checked_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul for &BasePoly {
    type Output = BasePoly;
    fn mul(self, rhs: &BasePoly) -> BasePoly {
        self.checked_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &BasePoly {
    type Output = BasePoly;
    fn neg(self) -> BasePoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for BasePoly {
    type Output = BasePoly;
    fn neg(self) -> BasePoly {
        -&self
    }
}

/// JSON shape of a polynomial: canonical text plus explicit terms.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub nvars: usize,
    pub text: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub c: String,
}

impl From<&BasePoly> for PolyJson {
    fn from(p: &BasePoly) -> Self {
        PolyJson {
            nvars: p.nvars,
            text: p.to_string(),
            terms: p
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for BasePoly {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                parse_rational(&t.c)
                    .map(|c| (t.exp.clone(), c))
                    .ok_or_else(|| Error::parse(0, format!("bad rational `{}`", t.c)))
            })
            .collect::<Result<Vec<_>>>()?;
        BasePoly::from_terms(j.nvars, terms)
    }
}

fn synthetic_division(coeffs: &[Rational], r: &Rational) -> (Vec<Rational>, Rational) {
    // coeffs low -> high; divide by (h - r).
    let n = coeffs.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (0..=n).rev() {
        let v = &coeffs[k] + &carry * r;
        if k == 0 {
            return (q, v);
        }
        q[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Primitive integer coefficients (low -> high) of a rational polynomial.
fn primitive_integer_form(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn find_rational_root(coeffs: &[Rational]) -> Option<Rational> {
    let ints = primitive_integer_form(coeffs);
    let a0 = ints[0].abs().to_biguint()?;
    let an = ints.last()?.abs().to_biguint()?;
    let ps = divisors(&a0);
    let qs = divisors(&an);
    let n = ints.len() - 1;
    let qpow_table: std::collections::HashMap<BigInt, Vec<BigInt>> = qs
        .iter()
        .map(|q| {
            let q = BigInt::from(q.clone());
            let mut pows = Vec::with_capacity(n + 1);
            let mut acc = BigInt::one();
            for _ in 0..=n {
                pows.push(acc.clone());
                acc *= &q;
            }
            (q, pows)
        })
        .collect();
    let mut candidates: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            let p = BigInt::from(p.clone());
            let q = BigInt::from(q.clone());
            let qpows = &qpow_table[&q];
            for sp in [p.clone(), -p] {
                // sum a_i p^i q^(n-i), Horner from the top.
                let mut acc = BigInt::zero();
                for (i, a) in ints.iter().enumerate().rev() {
                    acc = acc * &sp + a * &qpows[n - i];
                }
                if acc.is_zero() {
                    candidates.push(Rational::new(sp, q.clone()));
                }
            }
        }
    }
    candidates.into_iter().min()
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return vec![BigUint::one()];
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    if let Some(mut small) = rest.to_u64() {
        let mut d = 2u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                let mut e = 0;
                while small % d == 0 {
                    small /= d;
                    e += 1;
                }
                factors.push((BigUint::from(d), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        rest = BigUint::from(small);
    } else {
        let mut d = BigUint::from(2u32);
        while &d * &d <= rest {
            if (&rest % &d).is_zero() {
                let mut e = 0;
                while (&rest % &d).is_zero() {
                    rest /= &d;
                    e += 1;
                }
                factors.push((d.clone(), e));
            }
            d += 1u32;
        }
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> BasePoly {
        BasePoly::var(1, 0)
    }

    fn c(v: i64) -> BasePoly {
        BasePoly::from_int(1, v)
    }

    #[test]
    fn additive_inverse() {
        assert!((&h() + &(-h())).is_zero());
    }

    #[test]
    fn hand_expansions() {
        let p = &(&h() - &c(2)) * &(&h() - &c(1));
        assert_eq!(p.to_string(), "h^2-3*h+2");
        let m = 2;
        let a = &(&h() * &(&h() - &c(1))) * &(&h() - &c(m));
        assert_eq!(a.to_string(), "h^3-3*h^2+2*h");
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let p = BasePoly::var(2, 0);
        assert!(matches!(
            h().checked_add(&p),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(h().shift(&[1, 2]).is_err());
        assert!(h().eval(&[]).is_err());
    }

    #[test]
    fn shift_is_sigma() {
        assert_eq!(h().shift(&[1]).unwrap(), &h() - &c(1));
        let p = &h().pow(3) - &c(7);
        assert_eq!(p.shift(&[0]).unwrap(), p);
        assert_eq!(
            p.shift(&[2]).unwrap().shift(&[-5]).unwrap(),
            p.shift(&[-3]).unwrap()
        );
    }

    #[test]
    fn shift_multivariate() {
        let h1 = BasePoly::var(2, 0);
        let h2 = BasePoly::var(2, 1);
        let p = &h1 * &h2;
        let s = p.shift(&[1, -2]).unwrap();
        let expected = &(&h1 - &BasePoly::from_int(2, 1)) * &(&h2 + &BasePoly::from_int(2, 2));
        assert_eq!(s, expected);
    }

    #[test]
    fn exact_division() {
        let p = BasePoly::from_roots(1, 0, &[rat(0), rat(1), rat(2)]);
        let q = &h() - &c(1);
        let expected = BasePoly::from_roots(1, 0, &[rat(0), rat(2)]);
        assert_eq!(p.exact_divide(&q).unwrap(), expected);
        assert!(matches!(
            (&h() + &c(1)).exact_divide(&h()),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(h().exact_divide(&c(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let m = 3;
        let p = &h() * &(&h() - &c(m));
        assert!(p.eval_int(&[m]).unwrap().is_zero());
        assert_eq!((&h() - &c(2)).eval_int(&[3]).unwrap(), rat(1));
        let a = BasePoly::from_roots(1, 0, &[rat(0), rat(1), rat(m)]);
        assert!(a.eval_int(&[1]).unwrap().is_zero());
    }

    #[test]
    fn roots_of_split_polynomials() {
        let m = 4;
        let a = BasePoly::from_roots(1, 0, &[rat(0), rat(1), rat(m)]);
        let split = a.rational_roots().unwrap();
        assert_eq!(split.roots, vec![rat(0), rat(1), rat(4)]);
        assert!(split.cofactor.is_one());

        let m = 3;
        let p = BasePoly::from_roots(1, 0, &[rat(-(m - 1)), rat(2), rat(3)]);
        assert_eq!(
            p.rational_roots().unwrap().roots,
            vec![rat(-2), rat(2), rat(3)]
        );
    }

    #[test]
    fn roots_without_rational_roots() {
        let p = &h().pow(2) + &c(1);
        let split = p.rational_roots().unwrap();
        assert!(split.roots.is_empty());
        assert_eq!(split.cofactor, p);
        assert_eq!(c(0).rational_roots(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn roots_with_multiplicity_and_fractions() {
        let p = BasePoly::from_roots(
            1,
            0,
            &[rat_frac(1, 2), rat_frac(1, 2), rat_frac(-2, 3), rat(0)],
        )
        .scale(&rat(6));
        let p = &p * &(&h().pow(2) + &c(2));
        let split = p.rational_roots().unwrap();
        assert_eq!(
            split.roots,
            vec![rat_frac(-2, 3), rat(0), rat_frac(1, 2), rat_frac(1, 2)]
        );
        assert_eq!(split.cofactor.degree(), Some(2));
        assert_eq!(split.distinct_roots().len(), 3);
    }

    #[test]
    fn roots_in_second_variable() {
        let p = BasePoly::from_roots(2, 1, &[rat(3), rat(-1)]);
        let split = p.rational_roots().unwrap();
        assert_eq!(split.var, 1);
        assert_eq!(split.roots, vec![rat(-1), rat(3)]);
    }

    #[test]
    fn grlex_rendering() {
        let h1 = BasePoly::var(2, 0);
        let h2 = BasePoly::var(2, 1);
        let p = &(&(&h1 * &h2) - &h2.pow(2)) + &BasePoly::constant(2, rat_frac(3, 4));
        assert_eq!(p.to_string(), "h1*h2-h2^2+3/4");
    }

    #[test]
    fn relocate_between_rings() {
        let p = &h() - &c(2);
        let q = p.relocate(0, 3, 2).unwrap();
        assert_eq!(q, BasePoly::linear(3, 2, rat(2)));
    }
}
