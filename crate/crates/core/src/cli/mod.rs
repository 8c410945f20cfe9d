//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage or parse error.

pub mod parser;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::classify::{
    build_weight_module, classify_bba, classify_da_torsion, classify_gwa, is_normal,
    marked_ideals, module_dimension, normalize, partition_orbit, torsionfree_presentation,
};
use crate::cuspops::{
    decompose_op, delta_at, membership, phi, phi_roots, structure_constant, CuspShape,
};
use crate::error::{Error, Result};
use crate::exactpoly::{parse_rational, BasePoly};
use crate::gwa::{verify_presentation, Embedding, GwaElement, GwaPresentation};
use crate::modactions::{
    act, act_on_quotient, cusp_generating_set, simplicity_probe, stability_witness, support,
    CuspModule, GradedMask, LaurentVector,
};
use crate::skewlaurent::{Degree, LaurentOp};

pub use parser::{parse, parse_gwa, parse_poly, Algebra, Expr, LaurentContext};
pub use report::{Report, SCHEMA};

#[derive(Parser, Debug)]
#[command(name = "cuspdiff", about = "Differential operators on cusp algebras", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgebraArg {
    #[value(name = "DA")]
    DA,
    #[value(name = "bbA")]
    BbA,
    #[value(name = "calA")]
    CalA,
    #[value(name = "weyl")]
    Weyl,
}

impl From<AlgebraArg> for Algebra {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::DA => Algebra::DA,
            AlgebraArg::BbA => Algebra::BbA,
            AlgebraArg::CalA => Algebra::CalA,
            AlgebraArg::Weyl => Algebra::Weyl,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModuleArg {
    #[value(name = "A")]
    A,
    #[value(name = "A'", alias = "Aprime")]
    APrime,
}

impl From<ModuleArg> for CuspModule {
    fn from(m: ModuleArg) -> Self {
        match m {
            ModuleArg::A => CuspModule::A,
            ModuleArg::APrime => CuspModule::APrime,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply two elements.
    Mul {
        #[arg(long, default_value = "2")]
        m: String,
        #[arg(long, value_enum, default_value = "DA")]
        algebra: AlgebraArg,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Test membership in D(A).
    Member {
        #[arg(long)]
        m: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The polynomial phi_i.
    Phi {
        #[arg(long)]
        m: u32,
        #[arg(allow_negative_numbers = true)]
        i: i64,
    },
    /// The generator delta_i of a tensor factor.
    Delta {
        #[arg(long)]
        m: String,
        #[arg(allow_negative_numbers = true)]
        i: i64,
        #[arg(long, default_value_t = 1)]
        at: usize,
    },
    /// Write an element of D(A) as a sum of D-multiples of the delta's.
    Decompose {
        #[arg(long)]
        m: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply an operator to a Laurent polynomial.
    Act {
        #[arg(long)]
        m: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        /// Act on the quotient K[x, x^-1]/A.
        #[arg(long)]
        quotient: bool,
    },
    /// Check that A is stable under the generating set.
    Stability {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Verify the defining relation table.
    RelationsCheck {
        #[arg(long)]
        m: String,
        /// Add 1 to the structure constant of the pair i,j.
        #[arg(long, hide = true, allow_hyphen_values = true)]
        corrupt: Option<String>,
    },
    /// Verify a GWA presentation and its embedding.
    GwaVerify {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long, default_value = "2")]
        m: String,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        /// Random embedding checks.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simple weight modules.
    Classify {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 6)]
        window: usize,
        /// Orbit representatives for the D-torsion family.
        #[arg(long = "orbit", allow_hyphen_values = true)]
        orbits: Vec<String>,
    },
    /// Marked ideals and the interval partition of a defining element.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 1)]
        step: u32,
        #[arg(long, default_value_t = 4)]
        window: usize,
    },
    /// Normalize an element of bbA.
    Normalize {
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Weight support of A or A'.
    Support {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "A")]
        module: ModuleArg,
        #[arg(long, default_value_t = 10)]
        window: i64,
    },
}

/// Text and JSON renderings of a command result.
struct Output {
    text: String,
    json: Value,
    exit: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, exit: 0 }
    }
}

fn from_report(r: Report) -> Output {
    Output {
        text: r.to_text(),
        json: serde_json::to_value(&r).expect("report serializes"),
        exit: r.exit,
    }
}

fn laurent_ctx(m: &str, algebra: Algebra) -> Result<LaurentContext> {
    Ok(LaurentContext::new(CuspShape::parse(m)?, algebra))
}

fn pres_for(algebra: Algebra, m: &str) -> Result<Arc<GwaPresentation>> {
    Ok(Arc::new(algebra.presentation(&CuspShape::parse(m)?)?))
}

fn embedding_for(algebra: Algebra, m: &str) -> Result<Embedding> {
    let shape = CuspShape::parse(m)?;
    Ok(match algebra {
        Algebra::Weyl => Embedding::weyl(shape.rank()),
        Algebra::CalA => Embedding::cal_a(shape.rank_one()?),
        Algebra::BbA => Embedding::bb_a(shape.rank_one()?),
        Algebra::DA => return Err(Error::InvalidPresentation("DA is not presented as a GWA".into())),
    })
}

fn components_json(d: &std::collections::BTreeMap<Degree, BasePoly>) -> Value {
    Value::Array(
        d.iter()
            .map(|(k, c)| json!({"degree": k.0, "coeff": c.to_string()}))
            .collect(),
    )
}

fn cmd_mul(m: &str, algebra: Algebra, a: &str, b: &str) -> Result<Output> {
    if algebra == Algebra::DA {
        let ctx = laurent_ctx(m, algebra)?;
        let p = ctx.parse(a)?.checked_mul(&ctx.parse(b)?)?;
        let text = p.render();
        return Ok(Output::ok(text.clone() + "\n", json!({"product": text})));
    }
    let pres = pres_for(algebra, m)?;
    let p = parse_gwa(a, &pres)?.checked_mul(&parse_gwa(b, &pres)?)?;
    let image = embedding_for(algebra, m)?.apply(&p)?;
    Ok(Output::ok(
        format!("{p}\nimage: {}\n", image.render()),
        json!({"product": p.render(), "image": image.render()}),
    ))
}

fn cmd_member(m: &str, expr: &str) -> Result<Output> {
    let ctx = laurent_ctx(m, Algebra::DA)?;
    let u = ctx.parse(expr)?;
    let ok = membership(&u, &ctx.shape);
    Ok(Output::ok(format!("{ok}\n"), json!({"member": ok, "element": u.render()})))
}

fn cmd_phi(m: u32, i: i64) -> Result<Output> {
    let p = phi(m, i);
    let roots = phi_roots(m, i);
    Ok(Output::ok(
        format!("{p}\nroots: {roots:?}\n"),
        json!({"phi": p.to_string(), "roots": roots}),
    ))
}

fn cmd_delta(m: &str, i: i64, at: usize) -> Result<Output> {
    let shape = CuspShape::parse(m)?;
    if at == 0 || at > shape.rank() {
        return Err(Error::UnknownGenerator(format!("delta({i}@{at})")));
    }
    let d = delta_at(&shape, at - 1, i)?;
    let text = d.op().render();
    Ok(Output::ok(text.clone() + "\n", json!({"delta": text})))
}

/// `δ_α` as a product of factor generators, `delta(i@k)`.
fn delta_word(alpha: &Degree) -> String {
    let n = alpha.len();
    let parts: Vec<String> = alpha
        .0
        .iter()
        .enumerate()
        .filter(|(_, &i)| i != 0)
        .map(|(k, i)| if n == 1 { format!("delta({i})") } else { format!("delta({i}@{})", k + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn cmd_decompose(m: &str, expr: &str) -> Result<Output> {
    let ctx = laurent_ctx(m, Algebra::DA)?;
    let u = ctx.parse(expr)?;
    let parts = decompose_op(&u, &ctx.shape)?;
    let text: Vec<String> = parts
        .iter()
        .map(|(k, c)| format!("({c}) * {}", delta_word(k)))
        .collect();
    Ok(Output::ok(
        if text.is_empty() { "0\n".into() } else { text.join(" + ") + "\n" },
        json!({"components": components_json(&parts)}),
    ))
}

fn cmd_act(m: &str, expr: &str, vector: &str, quotient: bool) -> Result<Output> {
    let ctx = laurent_ctx(m, Algebra::DA)?;
    let u = ctx.parse(expr)?;
    let v = LaurentVector::from_op(&ctx.parse(vector)?)?;
    let out = if quotient {
        act_on_quotient(&u, &v, &ctx.shape)?
    } else {
        act(&u, &v)?
    };
    let text = out.render();
    Ok(Output::ok(text.clone() + "\n", json!({"result": text})))
}

fn cmd_stability(m: u32, window: Option<i64>) -> Result<Output> {
    let window = window.unwrap_or(4 * m as i64);
    let shape = CuspShape::single(m)?;
    let gens = cusp_generating_set(m);
    let mut r = Report::new(format!("stability m={m} window={window}"));
    let wit = stability_witness(&gens, &GradedMask::cusp(&shape), window)?;
    r.push(
        "A stable under generating set",
        wit.is_none(),
        wit.map(|(g, b)| format!("{} moves x^{:?} out of A", gens[g].render(), b)),
    );
    for module in [CuspModule::A, CuspModule::APrime] {
        let probe = simplicity_probe(module, m, window)?;
        for t in &probe.transitions {
            r.push(
                format!("{} delta({}) x^{} -> x^{}", module.name(), t.op, t.from, t.to),
                t.nonzero,
                Some(t.value.clone()),
            );
        }
    }
    Ok(from_report(r))
}

fn parse_pair(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::parse(0, format!("expected i,j, got {s}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// The relation table of every factor, `[h, δ_i] = i δ_i`, and commutation
/// across factors.
pub fn relations_report(shape: &CuspShape, corrupt: Option<(i64, i64)>) -> Result<Report> {
    let mut r = Report::new(format!("relations-check m={shape}"));
    let mut seen = Vec::new();
    for k in 0..shape.rank() {
        let m = shape.m(k);
        if seen.contains(&m) {
            continue;
        }
        seen.push(m);
        let b = 2 * m as i64 - 1;
        let idx: Vec<i64> = (-b..=b).filter(|&i| i != 0).collect();
        for &i in &idx {
            for &j in &idx {
                let id = format!("m={m} ({i},{j})");
                let sc = match structure_constant(m, i, j) {
                    Ok(sc) => sc,
                    Err(e) => {
                        r.push(id, false, Some(format!("({i}, {j}): {e}")));
                        continue;
                    }
                };
                let mut rhs = sc.rhs();
                if corrupt == Some((i, j)) {
                    rhs = rhs.checked_add(&sc.word())?;
                }
                let ok = sc.lhs() == rhs;
                let witness = (!ok).then(|| format!("({i}, {j}, {})", sc.case.tag()));
                r.push(format!("{id} {}", sc.case.tag()), ok, witness);
            }
        }
        for &i in &idx {
            let d = crate::cuspops::delta1(m, i);
            let h = LaurentOp::h(1, 0);
            let ok = h.commutator(&d)? == d.scale(&crate::exactpoly::rat(i));
            r.push(format!("m={m} [h,delta({i})]"), ok, None);
        }
    }
    let n = shape.rank();
    for k in 0..n {
        for l in k + 1..n {
            let bk = 2 * shape.m(k) as i64 - 1;
            let bl = 2 * shape.m(l) as i64 - 1;
            for i in (-bk..=bk).filter(|&i| i != 0) {
                for j in (-bl..=bl).filter(|&j| j != 0) {
                    let a = delta_at(shape, k, i)?.into_op();
                    let b = delta_at(shape, l, j)?.into_op();
                    let ok = a.commutator(&b)?.is_zero();
                    r.push(format!("[delta({i}@{}),delta({j}@{})]", k + 1, l + 1), ok, None);
                }
            }
        }
    }
    Ok(r)
}

/// A random element with `|degree| <= deg` per factor and coefficients of
/// degree `<= cdeg` with small integer coefficients.
pub fn random_gwa_element(
    pres: &Arc<GwaPresentation>,
    rng: &mut impl Rng,
    deg: i64,
    cdeg: u32,
) -> GwaElement {
    let n = pres.nvars();
    let mut out = GwaElement::zero(pres);
    for _ in 0..rng.gen_range(1..=3) {
        let alpha = Degree((0..n).map(|_| rng.gen_range(-deg..=deg)).collect());
        let mut c = BasePoly::zero(n);
        for _ in 0..rng.gen_range(1..=2) {
            let mut t = BasePoly::from_int(n, rng.gen_range(-3..=3));
            for i in 0..n {
                t = &t * &BasePoly::var(n, i).pow(rng.gen_range(0..=cdeg));
            }
            c = &c + &t;
        }
        out = out
            .checked_add(&GwaElement::monomial(pres, c, alpha))
            .expect("same presentation");
    }
    out
}

fn cmd_gwa_verify(algebra: Algebra, m: &str, depth: u32, random: usize, seed: u64) -> Result<Output> {
    let pres = pres_for(algebra, m)?;
    let mut r = Report::new(format!("gwa-verify {} m={m}", algebra.name()));
    for c in verify_presentation(&pres, depth).checks {
        r.push(c.id, c.passed, c.witness);
    }
    let emb = embedding_for(algebra, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..random {
        let u = random_gwa_element(&pres, &mut rng, 4, 3);
        let v = random_gwa_element(&pres, &mut rng, 4, 3);
        let lhs = emb.apply(&u.checked_mul(&v)?)?;
        let rhs = emb.apply(&u)?.checked_mul(&emb.apply(&v)?)?;
        let ok = lhs == rhs;
        r.push(format!("embedding #{k}"), ok, (!ok).then(|| format!("u = {u}; v = {v}")));
    }
    Ok(from_report(r))
}

fn cmd_classify(algebra: Algebra, m: u32, window: usize, orbits: &[String]) -> Result<Output> {
    match algebra {
        Algebra::BbA => {
            let c = classify_bba(m, window)?;
            let mut text = format!("bbA m={m}, a = {}\n", c.a);
            for e in &c.entries {
                text.push_str(&format!(
                    "{}: {} dim {} {}\n",
                    e.label, e.gamma, e.dimension, e.presentation
                ));
            }
            text.push_str(&format!("family: {}\n", c.family));
            Ok(Output::ok(text, c.to_json()))
        }
        Algebra::CalA | Algebra::Weyl => {
            let pres = algebra.presentation(&CuspShape::single(m)?)?;
            let c = classify_gwa(&pres, window)?;
            let mut text = format!("{} m={m}, a = {}\n", algebra.name(), c.a);
            for e in &c.entries {
                text.push_str(&format!("{}: {} dim {}\n", e.label, e.gamma, e.dimension));
            }
            text.push_str(&format!("family: {}\n", c.family));
            let mut j = c.to_json();
            j["algebra"] = json!(algebra.name());
            Ok(Output::ok(text, j))
        }
        Algebra::DA => {
            let reps = orbits
                .iter()
                .map(|s| parse_rational(s).ok_or_else(|| Error::parse(0, format!("bad rational {s}"))))
                .collect::<Result<Vec<_>>>()?;
            let d = classify_da_torsion(m, &reps)?;
            let mut text = format!("D-torsion simple D(A)-modules, m={m}\n");
            for (md, sp, dim) in &d.exceptional {
                text.push_str(&format!("{}: {} dim {}\n", md.name(), sp.render(), dim));
            }
            text.push_str(&format!("family: {}\n", d.family));
            for p in &d.members {
                text.push_str(&format!("member: bbB/bbB{p} dim inf\n"));
            }
            Ok(Output::ok(text, d.to_json()))
        }
    }
}

fn cmd_orbit(a: &str, step: u32, window: usize) -> Result<Output> {
    let a = parse_poly(a, 1)?;
    let mut text = format!("a = {a}\n");
    let mut orbits = Vec::new();
    for (orbit, marked) in marked_ideals(&a, step)? {
        let names: Vec<String> = marked.iter().map(|p| p.to_string()).collect();
        text.push_str(&format!("{orbit}: {}\n", names.join(" < ")));
        let mut intervals = Vec::new();
        for g in partition_orbit(&a, &orbit)? {
            let wm = build_weight_module(&a, &g, step, window)?;
            text.push_str(&format!("  {g} dim {}\n", module_dimension(&wm)));
            intervals.push(wm.to_json());
        }
        orbits.push(json!({
            "orbit": {"rep": orbit.rep.to_string(), "step": orbit.step},
            "marked": marked.iter().map(|p| p.root.to_string()).collect::<Vec<_>>(),
            "intervals": intervals,
        }));
    }
    Ok(Output::ok(text, json!({"a": a.to_string(), "orbits": orbits})))
}

fn cmd_normalize(m: u32, element: &str) -> Result<Output> {
    let pres = Arc::new(GwaPresentation::bb_a(m));
    let b = parse_gwa(element, &pres)?;
    let n = normalize(&b)?;
    let normal = is_normal(&n.b_norm)?;
    let desc = torsionfree_presentation(&n.b_norm)?;
    Ok(Output::ok(
        format!(
            "s = {}\nalpha = {}\nbeta = {}\nb_norm = {}\nnormal = {normal}\n{}\n",
            n.s,
            n.alpha,
            n.beta,
            n.b_norm,
            desc.describe()
        ),
        json!({
            "s": n.s,
            "alpha": n.alpha.to_string(),
            "beta": n.beta.to_string(),
            "b_norm": n.b_norm.render(),
            "normal": normal,
        }),
    ))
}

fn cmd_support(m: u32, module: CuspModule, window: i64) -> Result<Output> {
    let s = support(module, &CuspShape::single(m)?);
    let roots: Vec<i64> = (-window..=window).filter(|&r| s.contains_root(&[r])).collect();
    Ok(Output::ok(
        format!("{}: {}\n", module.name(), s.render()),
        json!({"module": module.name(), "support": s.render(), "window": window, "roots": roots}),
    ))
}

fn dispatch(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Mul { m, algebra, a, b } => cmd_mul(m, (*algebra).into(), a, b),
        Command::Member { m, expr } => cmd_member(m, expr),
        Command::Phi { m, i } => cmd_phi(*m, *i),
        Command::Delta { m, i, at } => cmd_delta(m, *i, *at),
        Command::Decompose { m, expr } => cmd_decompose(m, expr),
        Command::Act { m, expr, vector, quotient } => cmd_act(m, expr, vector, *quotient),
        Command::Stability { m, window } => cmd_stability(*m, *window),
        Command::RelationsCheck { m, corrupt } => {
            let c = corrupt.as_deref().map(parse_pair).transpose()?;
            Ok(from_report(relations_report(&CuspShape::parse(m)?, c)?))
        }
        Command::GwaVerify { algebra, m, depth, random, seed } => {
            cmd_gwa_verify((*algebra).into(), m, *depth, *random, *seed)
        }
        Command::Classify { algebra, m, window, orbits } => {
            cmd_classify((*algebra).into(), *m, *window, orbits)
        }
        Command::Orbit { a, step, window } => cmd_orbit(a, *step, *window),
        Command::Normalize { m, element } => cmd_normalize(*m, element),
        Command::Support { m, module, window } => cmd_support(*m, (*module).into(), *window),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Mul { .. } => "mul",
        Command::Member { .. } => "member",
        Command::Phi { .. } => "phi",
        Command::Delta { .. } => "delta",
        Command::Decompose { .. } => "decompose",
        Command::Act { .. } => "act",
        Command::Stability { .. } => "stability",
        Command::RelationsCheck { .. } => "relations-check",
        Command::GwaVerify { .. } => "gwa-verify",
        Command::Classify { .. } => "classify",
        Command::Orbit { .. } => "orbit",
        Command::Normalize { .. } => "normalize",
        Command::Support { .. } => "support",
    }
}

/// Runs one invocation, writing to `out` and `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(&cli.cmd) {
        Ok(o) => {
            if cli.json {
                let mut j = json!({"schema": SCHEMA, "command": command_name(&cli.cmd)});
                let obj = j.as_object_mut().unwrap();
                match o.json {
                    Value::Object(map) => obj.extend(map),
                    other => {
                        obj.insert("result".into(), other);
                    }
                }
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&j).unwrap());
            } else {
                let _ = write!(out, "{}", o.text);
            }
            o.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
