//! Simple weight modules of rank-one GWAs over `K[h]`: orbits of maximal
//! ideals, marked ideals, the interval partition, the modules `L(Γ)`, and the
//! normalization of elements `b = Σ v_{-k} β_{-k}`.
//!
//! Only linear maximal ideals `(h - λ)`, `λ ∈ Q`, are handled.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cuspops::{bba_defining_element, CuspShape};
use crate::error::{Error, Result};
use crate::exactpoly::{rat, BasePoly, Rational};
use crate::gwa::{GwaElement, GwaPresentation};
use crate::modactions::{support, CuspModule, WeightSupport};
use crate::skewlaurent::Degree;

/// The ideal `(h - root)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinMaxIdeal {
    pub root: Rational,
}

impl LinMaxIdeal {
    pub fn new(root: Rational) -> Self {
        LinMaxIdeal { root }
    }

    /// `σ^k` with `σ(h) = h - step`: the root moves up by `k·step`.
    pub fn sigma(&self, k: i64, step: u32) -> Self {
        LinMaxIdeal::new(&self.root + rat(k * step as i64))
    }
}

impl fmt::Display for LinMaxIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = BasePoly::linear(1, 0, self.root.clone());
        write!(f, "({p})")
    }
}

/// The `σ`-orbit `{λ + k·step}` with representative `0 <= rep < step`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orbit {
    pub rep: Rational,
    pub step: u32,
}

impl Orbit {
    pub fn of(root: &Rational, step: u32) -> Self {
        let s = rat(step as i64);
        let q = (root / &s).floor();
        Orbit {
            rep: root - q * s,
            step,
        }
    }

    pub fn contains(&self, root: &Rational) -> bool {
        Orbit::of(root, self.step) == *self
    }

    /// Position of `root` along the orbit: `root = rep + k·step`.
    pub fn index_of(&self, root: &Rational) -> Option<i64> {
        if !self.contains(root) {
            return None;
        }
        let k = (root - &self.rep) / rat(self.step as i64);
        k.to_integer().try_into().ok()
    }

    pub fn at(&self, k: i64) -> Rational {
        &self.rep + rat(k * self.step as i64)
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})", LinMaxIdeal::new(self.rep.clone()))?;
        if self.step != 1 {
            write!(f, "/step {}", self.step)?;
        }
        Ok(())
    }
}

/// Distinct roots of a univariate `a`, or `NonlinearFactor`.
fn split_roots(a: &BasePoly) -> Result<Vec<Rational>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let split = a.rational_roots()?;
    if split.cofactor.degree().unwrap_or(0) > 0 {
        return Err(Error::NonlinearFactor(split.cofactor.to_string()));
    }
    Ok(split.distinct_roots())
}

/// Marked ideals grouped by orbit, each group ascending.
pub fn marked_ideals(a: &BasePoly, step: u32) -> Result<Vec<(Orbit, Vec<LinMaxIdeal>)>> {
    let mut groups: Vec<(Orbit, Vec<LinMaxIdeal>)> = Vec::new();
    for r in split_roots(a)? {
        let o = Orbit::of(&r, step);
        match groups.iter_mut().find(|(g, _)| *g == o) {
            Some((_, v)) => v.push(LinMaxIdeal::new(r)),
            None => groups.push((o, vec![LinMaxIdeal::new(r)])),
        }
    }
    for (_, v) in &mut groups {
        v.sort();
    }
    groups.sort_by(|a, b| a.1[0].cmp(&b.1[0]));
    Ok(groups)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaKind {
    FullOrbit,
    /// `(-∞, p]`
    LeftRay(Rational),
    /// `(p, q]`
    HalfOpen(Rational, Rational),
    /// `(p, ∞)`
    RightRay(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaInterval {
    pub kind: GammaKind,
    pub orbit: Orbit,
}

impl GammaInterval {
    pub fn new(kind: GammaKind, orbit: Orbit) -> Result<Self> {
        let check = |r: &Rational| {
            if orbit.contains(r) {
                Ok(())
            } else {
                Err(Error::InvalidInterval(format!("{r} is not in {orbit}")))
            }
        };
        match &kind {
            GammaKind::FullOrbit => {}
            GammaKind::LeftRay(p) | GammaKind::RightRay(p) => check(p)?,
            GammaKind::HalfOpen(p, q) => {
                check(p)?;
                check(q)?;
                if p >= q {
                    return Err(Error::InvalidInterval(format!("need {p} < {q}")));
                }
            }
        }
        Ok(GammaInterval { kind, orbit })
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            GammaKind::FullOrbit => "full_orbit",
            GammaKind::LeftRay(_) => "left_ray",
            GammaKind::HalfOpen(..) => "half_open",
            GammaKind::RightRay(_) => "right_ray",
        }
    }

    pub fn anchors(&self) -> Vec<Rational> {
        match &self.kind {
            GammaKind::FullOrbit => vec![],
            GammaKind::LeftRay(p) | GammaKind::RightRay(p) => vec![p.clone()],
            GammaKind::HalfOpen(p, q) => vec![p.clone(), q.clone()],
        }
    }

    pub fn contains(&self, root: &Rational) -> bool {
        self.orbit.contains(root)
            && match &self.kind {
                GammaKind::FullOrbit => true,
                GammaKind::LeftRay(p) => root <= p,
                GammaKind::HalfOpen(p, q) => root > p && root <= q,
                GammaKind::RightRay(p) => root > p,
            }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, GammaKind::HalfOpen(..))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind_name(),
            "anchors": self.anchors().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "orbit": {"rep": self.orbit.rep.to_string(), "step": self.orbit.step},
        })
    }
}

impl fmt::Display for GammaInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let id = |r: &Rational| LinMaxIdeal::new(r.clone()).to_string();
        match &self.kind {
            GammaKind::FullOrbit => write!(f, "{}", self.orbit),
            GammaKind::LeftRay(p) => write!(f, "(-inf, {}]", id(p)),
            GammaKind::HalfOpen(p, q) => write!(f, "({}, {}]", id(p), id(q)),
            GammaKind::RightRay(p) => write!(f, "({}, inf)", id(p)),
        }
    }
}

/// The pieces into which the marked ideals of `a` cut `orbit`.
pub fn partition_orbit(a: &BasePoly, orbit: &Orbit) -> Result<Vec<GammaInterval>> {
    let marked: Vec<Rational> = split_roots(a)?
        .into_iter()
        .filter(|r| orbit.contains(r))
        .collect();
    let o = orbit.clone();
    if marked.is_empty() {
        return Ok(vec![GammaInterval::new(GammaKind::FullOrbit, o)?]);
    }
    let mut out = vec![GammaInterval::new(GammaKind::LeftRay(marked[0].clone()), o.clone())?];
    for w in marked.windows(2) {
        out.push(GammaInterval::new(
            GammaKind::HalfOpen(w[0].clone(), w[1].clone()),
            o.clone(),
        )?);
    }
    out.push(GammaInterval::new(
        GammaKind::RightRay(marked.last().unwrap().clone()),
        o,
    )?);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => f.write_str("inf"),
        }
    }
}

/// A transition between adjacent weights `λ → λ + step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLink {
    pub lower: Rational,
    pub upper: Rational,
    /// Scalar of `X` from `lower` to `upper`.
    pub up: Rational,
    /// Scalar of `Y` from `upper` to `lower`.
    pub down: Rational,
}

/// `L(Γ)` on a window of weights. `X` raises the weight by `step` with scalar
/// 1 and `Y` lowers it with scalar `a(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightModule {
    pub a: BasePoly,
    pub step: u32,
    pub gamma: GammaInterval,
    /// Ascending.
    pub weights: Vec<Rational>,
    pub links: Vec<WeightLink>,
    /// `X` on the top weight when it is a boundary of `Γ`, as `a(top)`.
    pub top_kill: Option<Rational>,
    /// `Y` on the bottom weight when it is a boundary of `Γ`, as `a(bottom - step)`.
    pub bottom_kill: Option<Rational>,
    pub windowed: bool,
}

pub const GAUGE: &str = "up=1, down=a(lambda)";

pub fn build_weight_module(
    a: &BasePoly,
    gamma: &GammaInterval,
    step: u32,
    window: usize,
) -> Result<WeightModule> {
    if gamma.orbit.step != step {
        return Err(Error::InvalidInterval(format!(
            "interval over step {} used with step {step}",
            gamma.orbit.step
        )));
    }
    let o = &gamma.orbit;
    let s = rat(step as i64);
    let w = window.max(1) as i64;
    let (weights, windowed): (Vec<Rational>, bool) = match &gamma.kind {
        GammaKind::FullOrbit => ((-w..=w).map(|k| o.at(k)).collect(), true),
        GammaKind::LeftRay(p) => ((0..w).rev().map(|k| p - &s * rat(k)).collect(), true),
        GammaKind::RightRay(p) => ((1..=w).map(|k| p + &s * rat(k)).collect(), true),
        GammaKind::HalfOpen(p, q) => {
            let n = o.index_of(q).unwrap() - o.index_of(p).unwrap();
            ((1..=n).map(|k| p + &s * rat(k)).collect(), false)
        }
    };
    let ev = |r: &Rational| a.eval(std::slice::from_ref(r));
    let mut links = Vec::new();
    for pair in weights.windows(2) {
        let down = ev(&pair[0])?;
        links.push(WeightLink {
            lower: pair[0].clone(),
            upper: pair[1].clone(),
            up: Rational::one(),
            down,
        });
    }
    let top = weights.last().unwrap();
    let bottom = &weights[0];
    let top_kill = match gamma.kind {
        GammaKind::LeftRay(_) | GammaKind::HalfOpen(..) => Some(ev(top)?),
        _ => None,
    };
    let bottom_kill = match gamma.kind {
        GammaKind::RightRay(_) | GammaKind::HalfOpen(..) => Some(ev(&(bottom - &s))?),
        _ => None,
    };
    Ok(WeightModule {
        a: a.clone(),
        step,
        gamma: gamma.clone(),
        weights,
        links,
        top_kill,
        bottom_kill,
        windowed,
    })
}

impl WeightModule {
    /// `YX = a` and `XY = σ(a)` on every weight of the window, with the
    /// interior links invertible and the boundary maps zero.
    pub fn check_relations(&self) -> Result<bool> {
        let ev = |r: &Rational| self.a.eval(std::slice::from_ref(r));
        for l in &self.links {
            // YX on lower, XY on upper
            if &l.up * &l.down != ev(&l.lower)? {
                return Ok(false);
            }
            if l.down.is_zero() {
                return Ok(false);
            }
        }
        let zero_or_absent = |k: &Option<Rational>| k.as_ref().is_none_or(|v| v.is_zero());
        Ok(zero_or_absent(&self.top_kill) && zero_or_absent(&self.bottom_kill))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "gamma": self.gamma.to_json(),
            "weights": self.weights.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "windowed": self.windowed,
            "gauge": GAUGE,
            "dimension": module_dimension(self).to_string(),
        })
    }
}

pub fn module_dimension(wm: &WeightModule) -> Dimension {
    if wm.gamma.is_finite() {
        Dimension::Finite(wm.weights.len())
    } else {
        Dimension::Infinite
    }
}

/// One simple weight module in a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub label: String,
    pub gamma: GammaInterval,
    pub presentation: String,
    pub dimension: Dimension,
    pub module: WeightModule,
}

impl ClassEntry {
    pub fn to_json(&self) -> Value {
        let mut v = self.gamma.to_json();
        let o = v.as_object_mut().unwrap();
        o.insert("label".into(), json!(self.label));
        o.insert("presentation".into(), json!(self.presentation));
        o.insert("dimension".into(), json!(self.dimension.to_string()));
        o.insert(
            "weights".into(),
            json!(self.module.weights.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
        );
        o.insert("windowed".into(), json!(self.module.windowed));
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub algebra: String,
    pub a: BasePoly,
    pub entries: Vec<ClassEntry>,
    /// The simple modules on non-degenerate orbits.
    pub family: String,
}

impl Classification {
    pub fn finite_dimensions(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter_map(|e| match e.dimension {
                Dimension::Finite(n) => Some(n),
                Dimension::Infinite => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "a": self.a.to_string(),
            "gauge": GAUGE,
            "intervals": self.entries.iter().map(ClassEntry::to_json).collect::<Vec<_>>(),
            "family": self.family,
        })
    }
}

/// Simple weight modules of `𝔸 = D[δ_1, δ_{-1}; σ, h(h-1)(h-m)]`.
pub fn classify_bba(m: u32, window: usize) -> Result<Classification> {
    if m < 2 {
        return Err(Error::InvalidShape(format!("need m >= 2, got {m}")));
    }
    let a = bba_defining_element(m);
    let orbit = Orbit::of(&Rational::zero(), 1);
    let gammas = partition_orbit(&a, &orbit)?;
    let labels = [
        ("L_-".to_string(), "bbA/bbA(h, delta(1))".to_string()),
        ("L_1".to_string(), "bbA/bbA(delta(-1), h-1, delta(1))".to_string()),
        (
            format!("L_{}", m - 1),
            format!("bbA/bbA(delta(-1)^{}, h-{m}, delta(1))", m - 1),
        ),
        ("L_+".to_string(), format!("bbA/bbA(h-{}, delta(-1))", m + 1)),
    ];
    let entries = gammas
        .into_iter()
        .zip(labels)
        .map(|(gamma, (label, presentation))| {
            let module = build_weight_module(&a, &gamma, 1, window)?;
            Ok(ClassEntry {
                label,
                dimension: module_dimension(&module),
                gamma,
                presentation,
                module,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Classification {
        algebra: "bbA".into(),
        a,
        entries,
        family: "bbA/bbA p for p in a non-degenerate orbit (not O(h)); infinite-dimensional".into(),
    })
}

/// Weight classification of any rank-one GWA with linear marked ideals, over
/// the orbits that carry marked ideals.
pub fn classify_gwa(pres: &GwaPresentation, window: usize) -> Result<Classification> {
    if pres.nvars() != 1 {
        return Err(Error::InvalidPresentation("rank one only".into()));
    }
    let a = pres.a()[0].clone();
    let step = pres.steps()[0];
    let mut entries = Vec::new();
    for (orbit, _) in marked_ideals(&a, step)? {
        for (k, gamma) in partition_orbit(&a, &orbit)?.into_iter().enumerate() {
            let module = build_weight_module(&a, &gamma, step, window)?;
            entries.push(ClassEntry {
                label: format!("{orbit}#{}", k + 1),
                presentation: String::new(),
                dimension: module_dimension(&module),
                gamma,
                module,
            });
        }
    }
    Ok(Classification {
        algebra: "gwa".into(),
        a,
        entries,
        family: "A/Ap for p in a non-degenerate orbit; infinite-dimensional".into(),
    })
}

/// The `D`-torsion simple `𝒟(A)`-modules: `A`, `A'` and one module
/// `𝔹/𝔹p` per orbit outside `O(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaTorsion {
    pub m: u32,
    pub exceptional: Vec<(CuspModule, WeightSupport, Dimension)>,
    pub family: String,
    /// Representatives requested by the caller, each off `O(h)`.
    pub members: Vec<LinMaxIdeal>,
}

impl DaTorsion {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "exceptional": self.exceptional.iter().map(|(md, sp, d)| json!({
                "module": md.name(),
                "support": sp.render(),
                "dimension": d.to_string(),
            })).collect::<Vec<_>>(),
            "family": self.family,
            "members": self.members.iter().map(|p| json!({
                "ideal": p.to_string(),
                "support": Orbit::of(&p.root, 1).to_string(),
                "dimension": "inf",
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn classify_da_torsion(m: u32, reps: &[Rational]) -> Result<DaTorsion> {
    if m < 2 {
        return Err(Error::InvalidShape(format!("need m >= 2, got {m}")));
    }
    let shape = CuspShape::single(m)?;
    let mut members = Vec::new();
    for r in reps {
        if r.is_integer() {
            return Err(Error::InvalidInterval(format!(
                "{} lies in O(h); it is covered by A and A'",
                LinMaxIdeal::new(r.clone())
            )));
        }
        members.push(LinMaxIdeal::new(r.clone()));
    }
    Ok(DaTorsion {
        m,
        exceptional: vec![
            (CuspModule::A, support(CuspModule::A, &shape), Dimension::Infinite),
            (CuspModule::APrime, support(CuspModule::APrime, &shape), Dimension::Infinite),
        ],
        family: "bbB/bbB p_O for p_O in Max(D) outside O(h); support O(p_O)".into(),
        members,
    })
}

/// `α < β`: every root of `α` lies below every root of `β` in the same
/// orbit; vacuously true without such pairs.
pub fn less_than_step(alpha: &BasePoly, beta: &BasePoly, step: u32) -> Result<bool> {
    let ra = split_roots(alpha)?;
    let rb = split_roots(beta)?;
    let s = rat(step as i64);
    for r in &ra {
        for t in &rb {
            let d: Rational = (t - r) / &s;
            if d.is_integer() && t <= r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn less_than(alpha: &BasePoly, beta: &BasePoly) -> Result<bool> {
    less_than_step(alpha, beta, 1)
}

/// `β_0, ..., β_{-m'}` (right coefficients) of `b = Σ_{k=0}^{m'} v_{-k} β_{-k}`.
pub fn right_coefficients(b: &GwaElement) -> Result<Vec<BasePoly>> {
    let p = b.presentation();
    if p.nvars() != 1 {
        return Err(Error::WrongShape("rank one element expected".into()));
    }
    let mut lowest = 0;
    for (d, _) in b.coords() {
        let k = d.0[0];
        if k > 0 {
            return Err(Error::WrongShape(format!("component of positive degree {k}")));
        }
        lowest = lowest.min(k);
    }
    let coeffs: Vec<BasePoly> = (0..=-lowest)
        .map(|k| b.right_coord(&Degree(vec![-k])))
        .collect();
    if coeffs.len() < 2 {
        return Err(Error::WrongShape("need a component of negative degree".into()));
    }
    if coeffs[0].is_zero() {
        return Err(Error::WrongShape("beta_0 is zero".into()));
    }
    Ok(coeffs)
}

pub fn is_normal(b: &GwaElement) -> Result<bool> {
    let c = right_coefficients(b)?;
    let step = b.presentation().steps()[0];
    let a = &b.presentation().a()[0];
    Ok(less_than_step(&c[0], c.last().unwrap(), step)? && less_than_step(&c[0], a, step)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub s: u64,
    pub alpha: BasePoly,
    pub beta: BasePoly,
    pub b_norm: GwaElement,
}

/// The three conditions on `σ^{-s}(β_0)`.
pub fn normalization_conditions(b: &GwaElement, s: u64) -> Result<bool> {
    let c = right_coefficients(b)?;
    let p = b.presentation();
    let step = p.steps()[0];
    let shifted = p.sigma_i(0, -(s as i64), &c[0]);
    Ok(less_than_step(&shifted, c.last().unwrap(), step)?
        && less_than_step(&shifted, &c[0], step)?
        && less_than_step(&shifted, &p.a()[0], step)?)
}

/// `b_norm = β b α^{-1}` with the least admissible `s`.
pub fn normalize(b: &GwaElement) -> Result<Normalization> {
    let c = right_coefficients(b)?;
    let p = b.presentation();
    let step = p.steps()[0];
    let mprime = (c.len() - 1) as i64;
    let b0 = &c[0];
    // Past this shift every root of σ^{-s}(β_0) sits below every other root.
    let mut all: Vec<Rational> = split_roots(b0)?;
    all.extend(split_roots(c.last().unwrap())?);
    all.extend(split_roots(&p.a()[0])?);
    let r0 = split_roots(b0)?;
    let bound = match (r0.iter().max(), all.iter().min()) {
        (Some(hi), Some(lo)) => ((hi - lo) / rat(step as i64)).floor().to_integer(),
        _ => num_bigint::BigInt::zero(),
    };
    let bound: u64 = bound.try_into().unwrap_or(0) + 1;
    let s = (0..=bound)
        .map(|s| normalization_conditions(b, s).map(|ok| (s, ok)))
        .find(|r| !matches!(r, Ok((_, false))))
        .transpose()?
        .map(|(s, _)| s)
        .ok_or_else(|| Error::NotNormal("no admissible shift found".into()))?;
    let si = s as i64;
    let mut alpha = BasePoly::one(1);
    for i in 0..=si {
        alpha = &alpha * &p.sigma_i(0, -i, b0);
    }
    let mut beta = BasePoly::one(1);
    for i in 1..=si + mprime {
        beta = &beta * &p.sigma_i(0, -i, b0);
    }
    let bb = b.left_mul_poly(&beta);
    let mut coords = Vec::new();
    for (d, coeff) in bb.coords() {
        let k = d.0[0];
        // c v_k α^{-1} = c σ^k(α)^{-1} v_k
        let q = coeff.exact_divide(&p.sigma_i(0, k, &alpha))?;
        coords.push((d.clone(), q));
    }
    let mut b_norm = GwaElement::zero(p);
    for (d, q) in coords {
        b_norm = b_norm.checked_add(&GwaElement::monomial(p, q, d))?;
    }
    Ok(Normalization {
        s,
        alpha,
        beta,
        b_norm,
    })
}

/// The simple `D`-torsion-free module `M_b = 𝒟(A)/𝒟(A) ∩ Bb`, recorded
/// symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionFreeModule {
    pub algebra: String,
    pub b: GwaElement,
}

impl TorsionFreeModule {
    pub fn describe(&self) -> String {
        format!("M_b = DA/(DA ∩ B b), b = {}", self.b)
    }
}

pub fn torsionfree_presentation(b_norm: &GwaElement) -> Result<TorsionFreeModule> {
    if !is_normal(b_norm)? {
        return Err(Error::NotNormal(b_norm.to_string()));
    }
    Ok(TorsionFreeModule {
        algebra: "bbA".into(),
        b: b_norm.clone(),
    })
}
