#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use cuspdiff::exactpoly::{rat, BasePoly, Rational};
use cuspdiff::gwa::{GwaElement, GwaPresentation};
use cuspdiff::skewlaurent::{Degree, LaurentOp};
use num_traits::Zero;
use rand::Rng;

/// `E = {0} ∪ [m, ∞)`.
pub fn in_e(m: i64, j: i64) -> bool {
    j == 0 || j >= m
}

/// The least polynomial with `φ x^α ∗ A ⊆ A`: its roots are `α+β+1` over
/// `β ∈ E` with `α+β ∉ E`.
pub fn phi_oracle(m: u32, alpha: i64) -> BasePoly {
    let m = m as i64;
    let roots: Vec<Rational> = (0..=m + alpha.abs() + 2)
        .filter(|&b| in_e(m, b) && !in_e(m, alpha + b))
        .map(|b| rat(alpha + b + 1))
        .collect();
    BasePoly::from_roots(1, 0, &roots)
}

pub fn delta_oracle(m: u32, alpha: i64) -> LaurentOp {
    LaurentOp::monomial(phi_oracle(m, alpha), Degree(vec![alpha]))
}

/// `(d x^α) ∗ x^β = d(α+β+1) x^{α+β}`, rank one.
pub fn act_oracle(u: &LaurentOp, v: &BTreeMap<i64, Rational>) -> BTreeMap<i64, Rational> {
    let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
    for (d, c) in u.components() {
        let a = d.0[0];
        for (b, q) in v {
            let val = c.eval(&[rat(a + b + 1)]).unwrap() * q;
            *out.entry(a + b).or_insert_with(Rational::zero) += val;
        }
    }
    out.retain(|_, q| !q.is_zero());
    out
}

pub fn x_vec(b: i64) -> BTreeMap<i64, Rational> {
    BTreeMap::from([(b, rat(1))])
}

/// Evaluates `p(h + k)` pointwise to compare with a shifted polynomial.
pub fn same_values(p: &BasePoly, q: &BasePoly, range: std::ops::RangeInclusive<i64>) -> bool {
    range.into_iter().all(|t| p.eval_int(&[t]).unwrap() == q.eval_int(&[t]).unwrap())
}

pub fn roots_poly(rs: &[i64]) -> BasePoly {
    BasePoly::from_roots(1, 0, &rs.iter().map(|&r| rat(r)).collect::<Vec<_>>())
}

/// Polynomial in `nvars` variables, total degree per variable `<= deg`.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, deg: u32) -> BasePoly {
    let mut p = BasePoly::zero(nvars);
    for _ in 0..rng.gen_range(1..=3) {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=deg)).collect();
        let c = rat(rng.gen_range(-4..=4));
        p = &p + &BasePoly::from_terms(nvars, [(exps, c)]).unwrap();
    }
    p
}

/// A nonzero univariate polynomial that splits over Q, degree `<= deg`.
pub fn random_split_poly(rng: &mut impl Rng, deg: usize) -> BasePoly {
    let n = rng.gen_range(0..=deg);
    let roots: Vec<Rational> = (0..n)
        .map(|_| {
            let num = rng.gen_range(-6..=6);
            if rng.gen_bool(0.2) {
                Rational::new(num.into(), 2.into())
            } else {
                rat(num)
            }
        })
        .collect();
    let c = loop {
        let c = rng.gen_range(-3..=3);
        if c != 0 {
            break c;
        }
    };
    BasePoly::from_roots(1, 0, &roots).scale(&rat(c))
}

pub fn random_laurent(rng: &mut impl Rng, nvars: usize, deg: i64, cdeg: u32) -> LaurentOp {
    let mut u = LaurentOp::zero(nvars);
    for _ in 0..rng.gen_range(1..=3) {
        let a = Degree((0..nvars).map(|_| rng.gen_range(-deg..=deg)).collect());
        u = &u + &LaurentOp::monomial(random_poly(rng, nvars, cdeg), a);
    }
    u
}

/// Random rank-one element of `𝒟(A(m))` built from the oracle generators.
pub fn random_member(rng: &mut impl Rng, m: u32, deg: i64, cdeg: u32) -> LaurentOp {
    let mut u = LaurentOp::zero(1);
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(-deg..=deg);
        u = &u + &delta_oracle(m, i).left_mul_poly(&random_poly(rng, 1, cdeg));
    }
    u
}

pub fn random_gwa(pres: &Arc<GwaPresentation>, rng: &mut impl Rng, deg: i64, cdeg: u32) -> GwaElement {
    let n = pres.nvars();
    let mut u = GwaElement::zero(pres);
    for _ in 0..rng.gen_range(1..=3) {
        let a = Degree((0..n).map(|_| rng.gen_range(-deg..=deg)).collect());
        u = u
            .checked_add(&GwaElement::monomial(pres, random_poly(rng, n, cdeg), a))
            .unwrap();
    }
    u
}

/// Places a rank-one operator in factor `k` of `n`.
pub fn into_factor(u: &LaurentOp, k: usize, n: usize) -> LaurentOp {
    LaurentOp::from_components(
        n,
        u.components().map(|(d, c)| {
            let mut deg = vec![0; n];
            deg[k] = d.0[0];
            (Degree(deg), c.relocate(0, n, k).unwrap())
        }),
    )
    .unwrap()
}
