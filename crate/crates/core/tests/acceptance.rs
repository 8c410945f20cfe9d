//! Acceptance criteria. Run with `--nocapture` to see one line per criterion.

mod common;

use std::sync::Arc;
use std::time::Instant;

use common::*;
use cuspdiff::classify::{classify_bba, is_normal, normalization_conditions, normalize, Dimension};
use cuspdiff::cli;
use cuspdiff::cuspops::{
    decompose_op, delta1, delta_at, membership, structure_constant, w, CuspShape, RelationCase,
};
use cuspdiff::exactpoly::{rat, BasePoly};
use cuspdiff::gwa::{Embedding, GwaElement, GwaPresentation};
use cuspdiff::modactions::{
    cusp_generating_set, restriction_blocks, simplicity_probe, stability_check, support,
    CuspModule, GradedMask,
};
use cuspdiff::skewlaurent::{Degree, LaurentOp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, failures: &[String], detail: &str) {
    if failures.is_empty() {
        println!("criterion {n}: PASS ({detail})");
    } else {
        println!("criterion {n}: FAIL ({detail})");
        for f in failures.iter().take(20) {
            println!("    {f}");
        }
        if failures.len() > 20 {
            println!("    ... {} more", failures.len() - 20);
        }
    }
    assert!(failures.is_empty(), "criterion {n}: {} failures", failures.len());
}

fn poly(rs: &[i64]) -> LaurentOp {
    LaurentOp::from_poly(roots_poly(rs))
}

#[test]
fn criterion_01_defining_relations() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let mut count = 0;
    for m in 2..=6u32 {
        let b = 2 * m as i64 - 1;
        let idx: Vec<i64> = (-b..=b).filter(|&i| i != 0).collect();
        let dm = delta_oracle(m, m as i64);
        let dmm = delta_oracle(m, -(m as i64));
        for &i in &idx {
            for &j in &idx {
                count += 1;
                let sc = match structure_constant(m, i, j) {
                    Ok(sc) => sc,
                    Err(e) => {
                        fails.push(format!("m={m} ({i},{j}): {e}"));
                        continue;
                    }
                };
                let lhs = &delta_oracle(m, i) * &delta_oracle(m, j);
                let mut word = delta_oracle(m, sc.residual);
                let (tail, e) = match sc.case {
                    RelationCase::Direct => (&dm, 0),
                    RelationCase::PlusOne => (&dm, 1),
                    RelationCase::PlusTwo => (&dm, 2),
                    RelationCase::MinusOne => (&dmm, 1),
                    RelationCase::MinusTwo => (&dmm, 2),
                };
                for _ in 0..e {
                    word = &word * tail;
                }
                if lhs != word.left_mul_poly(&sc.coeff) {
                    fails.push(format!("m={m} ({i},{j}) {}", sc.case.tag()));
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    if secs >= 10.0 {
        fails.push(format!("runtime {secs:.2}s exceeds 10s"));
    }
    report(1, &fails, &format!("{count} relations, {secs:.2}s"));
}

#[test]
fn criterion_02_semigroups() {
    let mut fails = Vec::new();
    let mut count = 0;
    for m in 2..=6u32 {
        let m64 = m as i64;
        for i in m64..=3 * m64 {
            for j in m64..=3 * m64 {
                count += 2;
                if &delta1(m, -i) * &delta1(m, -j) != delta_oracle(m, -i - j) {
                    fails.push(format!("m={m} delta(-{i}) delta(-{j})"));
                }
                if &delta1(m, i) * &delta1(m, j) != delta_oracle(m, i + j) {
                    fails.push(format!("m={m} delta({i}) delta({j})"));
                }
            }
        }
    }
    report(2, &fails, &format!("{count} products"));
}

#[test]
fn criterion_03_gwa_vs_laurent() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases = Vec::new();
    for m in 2..=4u32 {
        cases.push((format!("calA m={m}"), GwaPresentation::cal_a(m), Embedding::cal_a(m)));
        cases.push((format!("bbA m={m}"), GwaPresentation::bb_a(m), Embedding::bb_a(m)));
    }
    let mut count = 0;
    for (name, pres, emb) in cases {
        let pres = Arc::new(pres);
        assert_eq!(emb.presentation().as_ref(), pres.as_ref());
        for k in 0..1000 {
            let u = random_gwa(&pres, &mut rng, 4, 3);
            let v = random_gwa(&pres, &mut rng, 4, 3);
            let lhs = emb.apply(&u.checked_mul(&v).unwrap()).unwrap();
            let rhs = &emb.apply(&u).unwrap() * &emb.apply(&v).unwrap();
            count += 1;
            if lhs != rhs {
                fails.push(format!("{name} pair #{k}: u = {u}; v = {v}"));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    if secs >= 30.0 {
        fails.push(format!("runtime {secs:.2}s exceeds 30s"));
    }
    report(3, &fails, &format!("{count} pairs, {secs:.2}s"));
}

/// Generator of the degree `-i` part of `𝒜₁`: roots of `φ_{-i}` together
/// with those of `h(h+1)⋯(h+i-1)`.
fn w_oracle(m: u32, i: i64) -> LaurentOp {
    let mut roots: Vec<i64> = cuspdiff::exactpoly::BasePoly::rational_roots(&phi_oracle(m, -i))
        .unwrap()
        .distinct_roots()
        .into_iter()
        .map(|r| r.to_integer().try_into().unwrap())
        .collect();
    for k in 0..i {
        if !roots.contains(&-k) {
            roots.push(-k);
        }
    }
    LaurentOp::monomial(roots_poly(&roots), Degree(vec![-i]))
}

#[test]
fn criterion_04_a1_identities() {
    let mut fails = Vec::new();
    let mut count = 0;
    let mut check = |ok: bool, what: String, fails: &mut Vec<String>| {
        count += 1;
        if !ok {
            fails.push(what);
        }
    };
    for m in 2..=6u32 {
        let mi = m as i64;
        let wm = |i: i64| w(m, -i).unwrap();
        let d = |i: i64| delta1(m, i);
        for i in 1..=4 * mi {
            check(wm(i) == w_oracle(m, i), format!("m={m} w(-{i}) generator"), &mut fails);
        }
        let w1 = wm(1);
        // (a)
        for i in mi..=3 * mi {
            check(
                &wm(i) * &w1 == wm(i + 1).left_mul_poly(&roots_poly(&[0])),
                format!("m={m} (a) w(-{i})w(-1) = h w(-{})", i + 1),
                &mut fails,
            );
            check(
                &w1 * &wm(i) == wm(i + 1).left_mul_poly(&roots_poly(&[1])),
                format!("m={m} (a) w(-1)w(-{i}) = (h-1) w(-{})", i + 1),
                &mut fails,
            );
            check(
                wm(i).commutator(&w1).unwrap() == wm(mi + 1),
                format!("m={m} (a) [w(-{i}), w(-1)] = w(-{})", mi + 1),
                &mut fails,
            );
        }
        // (b)
        for i in 1..mi {
            check(w1.pow(i as u32) == wm(i), format!("m={m} (b) w(-1)^{i} = w(-{i})"), &mut fails);
        }
        // (c)
        check(
            w1.pow(m) == wm(mi).left_mul_poly(&roots_poly(&[0])),
            format!("m={m} (c) w(-1)^{m} = h w(-{m})"),
            &mut fails,
        );
        // (d)
        for i in 1..=3 * mi {
            let x = LaurentOp::x_pow(1, 0, i);
            check(
                d(1).commutator(&x).unwrap() == LaurentOp::x_pow(1, 0, i + 1).scale(&rat(i)),
                format!("m={m} (d) [delta(1), x^{i}] = {i} x^{}", i + 1),
                &mut fails,
            );
        }
        // (e)
        check(
            &w1 * &d(1) == poly(&[0, 1, mi]),
            format!("m={m} (e) w(-1)delta(1) = h(h-1)(h-m)"),
            &mut fails,
        );
        let rhs = poly(&[1, 2, mi + 1]);
        check(
            &d(1) * &w1 == rhs,
            format!("m={m} (e) delta(1)w(-1) = (h-1)(h-2)(h-m-1)"),
            &mut fails,
        );
        let sigma_a = roots_poly(&[0, 1, mi]).shift(&[1]).unwrap();
        check(
            rhs.equals_poly(&sigma_a),
            format!("m={m} (e) (h-1)(h-2)(h-m-1) = sigma(h(h-1)(h-m))"),
            &mut fails,
        );
        // (f)
        for i in 2..mi {
            check(
                &w1 * &d(i) == d(i - 1).left_mul_poly(&roots_poly(&[0, mi])),
                format!("m={m} (f) w(-1)delta({i}) = h(h-m)delta({})", i - 1),
                &mut fails,
            );
            check(
                &d(i) * &w1 == d(i - 1).left_mul_poly(&roots_poly(&[i + 1, i + mi])),
                format!("m={m} (f) delta({i})w(-1) = (h-{})(h-{})delta({})", i + 1, i + mi, i - 1),
                &mut fails,
            );
        }
    }
    report(4, &fails, &format!("{count} identities"));
}

#[test]
fn criterion_05_eighteen_sixteen() {
    let mut fails = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            fails.push(what);
        }
    };
    for m in 3..=6u32 {
        let mi = m as i64;
        let d = |i| delta1(m, i);
        check(&d(-1) * &d(1) == poly(&[0, 1, mi]), format!("m={m} delta(-1)delta(1)"));
        check(&d(1) * &d(-1) == poly(&[1, 2, mi + 1]), format!("m={m} delta(1)delta(-1)"));
        check(
            &d(-2) * &d(2) == poly(&[-1, mi - 1, mi, 1]),
            format!("m={m} delta(-2)delta(2)"),
        );
        check(
            &d(2) * &d(-2) == poly(&[3, 1, mi + 1, mi + 2]),
            format!("m={m} delta(2)delta(-2)"),
        );
        // the operator identities, also through the action on x^b
        for b in -8..=8 {
            let lhs = act_oracle(&d(-2), &act_oracle(&d(2), &x_vec(b)));
            let rhs = act_oracle(&poly(&[-1, mi - 1, mi, 1]), &x_vec(b));
            check(lhs == rhs, format!("m={m} delta(-2)delta(2) on x^{b}"));
        }
    }
    // m = 2: delta(2) = x^2 and phi_2 = 1
    let m = 2;
    let d = |i| delta1(m, i);
    check(d(2) == LaurentOp::x_pow(1, 0, 2), "m=2 delta(2) = x^2".into());
    check(&d(-1) * &d(1) == poly(&[0, 1, 2]), "m=2 delta(-1)delta(1)".into());
    check(&d(1) * &d(-1) == poly(&[1, 2, 3]), "m=2 delta(1)delta(-1)".into());
    let phi_m2 = phi_oracle(m, -2);
    check(
        (&d(-2) * &d(2)).equals_poly(&phi_m2),
        "m=2 delta(-2)delta(2) = phi_-2".into(),
    );
    let p = (&d(2) * &d(-2)).as_poly().unwrap_or_else(|| BasePoly::zero(1));
    check(
        (-10..=10).all(|t| p.eval_int(&[t]).unwrap() == phi_m2.eval_int(&[t - 2]).unwrap()),
        "m=2 delta(2)delta(-2) = sigma^2(phi_-2)".into(),
    );
    report(5, &fails, "m=3..6 verbatim, m=2 with phi_2 = 1");
}

#[test]
fn criterion_06_stability_and_simplicity() {
    let mut fails = Vec::new();
    for m in 2..=6u32 {
        let mi = m as i64;
        let window = 4 * mi;
        let shape = CuspShape::single(m).unwrap();
        match stability_check(&cusp_generating_set(m), &GradedMask::cusp(&shape), window) {
            Ok(true) => {}
            other => fails.push(format!("m={m} stability: {other:?}")),
        }
        // the same through the action formula and the oracle generators
        let b = 2 * mi - 1;
        for beta in (-window..=window).filter(|&j| in_e(mi, j)) {
            for i in (-b..=b).filter(|&i| i != 0) {
                let img = act_oracle(&delta_oracle(m, i), &x_vec(beta));
                if img.keys().any(|&k| !in_e(mi, k)) {
                    fails.push(format!("m={m} delta({i}) x^{beta} leaves A"));
                }
            }
        }
        for module in [CuspModule::A, CuspModule::APrime] {
            match simplicity_probe(module, m, window) {
                Ok(r) if r.passed() => {}
                other => fails.push(format!("m={m} {} probe: {other:?}", module.name())),
            }
        }
        // gap crossings for A: x^0 <-> x^m
        if act_oracle(&delta_oracle(m, mi), &x_vec(0)).get(&mi).is_none() {
            fails.push(format!("m={m} delta(m) x^0"));
        }
        if act_oracle(&delta_oracle(m, -mi), &x_vec(mi)).get(&0).is_none() {
            fails.push(format!("m={m} delta(-m) x^m"));
        }
        // and for A': x^-1 <-> x^1
        if act_oracle(&delta_oracle(m, 2), &x_vec(-1)).get(&1).is_none() {
            fails.push(format!("m={m} delta(2) x^-1"));
        }
        if act_oracle(&delta_oracle(m, -2), &x_vec(1)).get(&-1).is_none() {
            fails.push(format!("m={m} delta(-2) x^1"));
        }
        let sa = support(CuspModule::A, &shape);
        let sp = support(CuspModule::APrime, &shape);
        for r in -20..=20 {
            if sa.contains_root(&[r]) == sp.contains_root(&[r]) {
                fails.push(format!("m={m} root {r} not in exactly one support"));
            }
            // Supp(A) = {(h - i - 1) : i in E}
            if sa.contains_root(&[r]) != in_e(mi, r - 1) {
                fails.push(format!("m={m} root {r} support of A"));
            }
        }
    }
    report(6, &fails, "m=2..6, window 4m, roots in [-20, 20]");
}

#[test]
fn criterion_07_classification() {
    let mut fails = Vec::new();
    let window = 30;
    for m in 2..=8u32 {
        let mi = m as i64;
        let c = classify_bba(m, 10).unwrap();
        let finite: Vec<usize> = c.finite_dimensions();
        if finite != vec![1, m as usize - 1] {
            fails.push(format!("m={m} finite dims {finite:?}"));
        }
        let inf = c.entries.iter().filter(|e| e.dimension == Dimension::Infinite).count();
        if inf != 2 || c.entries.len() != 4 {
            fails.push(format!("m={m} entries {}", c.entries.len()));
        }
        let a_blocks = restriction_blocks(CuspModule::A, m, window).unwrap();
        let p_blocks = restriction_blocks(CuspModule::APrime, m, window).unwrap();
        let weights = |b: &cuspdiff::modactions::Block| -> Vec<i64> {
            b.exponents.iter().map(|e| e + 1).collect()
        };
        let ints = |e: &cuspdiff::classify::ClassEntry| -> Vec<i64> {
            e.module.weights.iter().map(|r| r.to_integer().try_into().unwrap()).collect()
        };
        let find = |blocks: &[cuspdiff::modactions::Block], w: &[i64]| {
            blocks.iter().any(|b| {
                let bw = weights(b);
                if w.len() == bw.len() {
                    bw == w
                } else {
                    // windowed rays: the class entry is a contiguous run inside the block,
                    // sharing its finite end
                    w.iter().all(|x| bw.contains(x))
                        && (bw.first() == w.first() || bw.last() == w.last())
                }
            })
        };
        let [lm, l1, lmid, lp] = [&c.entries[0], &c.entries[1], &c.entries[2], &c.entries[3]];
        if ints(l1) != vec![1] || !find(&a_blocks, &ints(l1)) {
            fails.push(format!("m={m} L_1 support {:?} vs A blocks", ints(l1)));
        }
        if ints(lmid) != (2..=mi).collect::<Vec<_>>() || !find(&p_blocks, &ints(lmid)) {
            fails.push(format!("m={m} L_(m-1) support {:?} vs A' blocks", ints(lmid)));
        }
        if ints(lp)[0] != mi + 1 || !find(&a_blocks, &ints(lp)) {
            fails.push(format!("m={m} L_+ support vs A blocks"));
        }
        if *ints(lm).last().unwrap() != 0 || !find(&p_blocks, &ints(lm)) {
            fails.push(format!("m={m} L_- support vs A' blocks"));
        }
        if a_blocks.len() != 2 || p_blocks.len() != 2 {
            fails.push(format!("m={m} block counts {} {}", a_blocks.len(), p_blocks.len()));
        }
    }
    report(7, &fails, "m=2..8");
}

#[test]
fn criterion_08_normalization() {
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut nontrivial = 0;
    for k in 0..500 {
        let m = 2 + (k % 4) as u32;
        let pres = Arc::new(GwaPresentation::bb_a(m));
        let mprime = rng.gen_range(1..=3i64);
        let coeffs: Vec<(Degree, BasePoly)> = (0..=mprime)
            .map(|j| {
                let p = if j == 0 || j == mprime || rng.gen_bool(0.7) {
                    random_split_poly(&mut rng, 3)
                } else {
                    BasePoly::zero(1)
                };
                (Degree(vec![-j]), p)
            })
            .collect();
        let b = GwaElement::from_right_coords(&pres, coeffs);
        let n = match normalize(&b) {
            Ok(n) => n,
            Err(e) => {
                fails.push(format!("#{k} {b}: {e}"));
                continue;
            }
        };
        if n.s > 0 {
            nontrivial += 1;
        }
        if !is_normal(&n.b_norm).unwrap() {
            fails.push(format!("#{k} b_norm not normal: {}", n.b_norm));
        }
        if n.b_norm.right_mul_poly(&n.alpha) != b.left_mul_poly(&n.beta) {
            fails.push(format!("#{k} b_norm alpha != beta b"));
        }
        if !normalization_conditions(&b, n.s).unwrap() {
            fails.push(format!("#{k} conditions fail at s={}", n.s));
        }
        if n.s > 0 && normalization_conditions(&b, n.s - 1).unwrap() {
            fails.push(format!("#{k} s={} not minimal", n.s));
        }
    }
    report(8, &fails, &format!("500 elements, {nontrivial} with s > 0"));
}

#[test]
fn criterion_09_rank_two() {
    let mut fails = Vec::new();
    let shape = CuspShape::new(vec![2, 3]).unwrap();
    let (m1, m2) = (2u32, 3u32);
    let mut gens: Vec<Vec<LaurentOp>> = vec![Vec::new(), Vec::new()];
    for (k, m) in [(0usize, m1), (1usize, m2)] {
        let b = 2 * m as i64 - 1;
        for i in (-b..=b).filter(|&i| i != 0) {
            gens[k].push(delta_at(&shape, k, i).unwrap().into_op());
        }
        gens[k].push(LaurentOp::h(2, k));
        gens[k].push(LaurentOp::x_pow(2, k, m as i64));
    }
    for a in &gens[0] {
        for b in &gens[1] {
            if !a.commutator(b).unwrap().is_zero() {
                fails.push(format!("[{a}, {b}] != 0"));
            }
        }
    }
    for i in -5..=5i64 {
        for j in -5..=5i64 {
            let t = &into_factor(&delta_oracle(m1, i), 0, 2) * &into_factor(&delta_oracle(m2, j), 1, 2);
            if cuspdiff::cuspops::delta(&shape, &[i, j]).unwrap().op() != &t {
                fails.push(format!("delta(({i},{j})) is not the tensor product"));
            }
        }
    }
    let s1 = CuspShape::single(m1).unwrap();
    let s2 = CuspShape::single(m2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut members = 0;
    for k in 0..200 {
        let pick = |rng: &mut ChaCha8Rng, m: u32| {
            if rng.gen_bool(0.6) {
                random_member(rng, m, 4, 2)
            } else {
                random_laurent(rng, 1, 4, 2)
            }
        };
        let u1 = pick(&mut rng, m1);
        let u2 = pick(&mut rng, m2);
        if u1.is_zero() || u2.is_zero() {
            continue;
        }
        let u = &into_factor(&u1, 0, 2) * &into_factor(&u2, 1, 2);
        let expect = membership(&u1, &s1) && membership(&u2, &s2);
        if membership(&u, &shape) != expect {
            fails.push(format!("#{k} membership of {u}"));
            continue;
        }
        if !expect {
            continue;
        }
        members += 1;
        let d = decompose_op(&u, &shape).unwrap();
        let d1 = decompose_op(&u1, &s1).unwrap();
        let d2 = decompose_op(&u2, &s2).unwrap();
        let mut count = 0;
        for (a, c1) in &d1 {
            for (b, c2) in &d2 {
                count += 1;
                let key = Degree(vec![a.0[0], b.0[0]]);
                let c = &c1.relocate(0, 2, 0).unwrap() * &c2.relocate(0, 2, 1).unwrap();
                if d.get(&key) != Some(&c) {
                    fails.push(format!("#{k} decompose at {key:?}"));
                }
            }
        }
        if d.len() != count {
            fails.push(format!("#{k} decompose has {} parts, expected {count}", d.len()));
        }
    }
    report(9, &fails, &format!("m=(2,3), 200 random elements, {members} members"));
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(args.iter().copied(), &mut out, &mut err);
    (code, out)
}

#[test]
fn criterion_10_cli_determinism() {
    let mut fails = Vec::new();
    let args = ["cuspdiff", "relations-check", "--m", "2", "--json"];
    let (c1, o1) = run_cli(&args);
    let (c2, o2) = run_cli(&args);
    if c1 != 0 || c2 != 0 || o1 != o2 {
        fails.push("in-process runs differ".into());
    }
    let bin = env!("CARGO_BIN_EXE_cuspdiff");
    let outs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            std::process::Command::new(bin)
                .args(&args[1..])
                .output()
                .unwrap()
                .stdout
        })
        .collect();
    if outs[0] != outs[1] || outs[0] != o1 {
        fails.push("binary runs differ".into());
    }
    let corpus = include_str!("data/golden_corpus.txt");
    let mut n = 0;
    for line in corpus.lines().filter(|l| !l.trim().is_empty()) {
        n += 1;
        let (ctx, text) = line.split_once('\t').unwrap();
        let (alg, m) = ctx.split_once(' ').unwrap();
        let shape = CuspShape::parse(m).unwrap();
        let rendered = if alg == "DA" {
            let c = cli::LaurentContext::new(shape, cli::Algebra::DA);
            c.parse(text).map(|u| u.render())
        } else {
            let alg = match alg {
                "bbA" => cli::Algebra::BbA,
                "calA" => cli::Algebra::CalA,
                _ => cli::Algebra::Weyl,
            };
            let pres = Arc::new(alg.presentation(&shape).unwrap());
            cli::parse_gwa(text, &pres).map(|u| u.render())
        };
        match rendered {
            Ok(r) if r == text => {}
            other => fails.push(format!("{line}: {other:?}")),
        }
    }
    if n != 100 {
        fails.push(format!("corpus has {n} entries"));
    }
    report(10, &fails, &format!("byte-identical JSON, {n} corpus strings"));
}
