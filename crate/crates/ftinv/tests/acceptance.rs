//! The nine acceptance criteria, each timed against its budget. Every
//! criterion prints one PASS/FAIL line; the test fails if any of them does.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use ftinv::chords::*;
use ftinv::exterior::*;
use ftinv::groupring::*;
use ftinv::intmat::{Int, IntMatrix, Rat};
use ftinv::johnson::*;
use ftinv::links::*;
use ftinv::par::Exec;
use ftinv::symplectic::*;
use num_traits::{One, Signed};
use rand::Rng;

type Check = fn() -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn blink_unimodularity() -> Result<(), String> {
    let mut r = rng(1);
    for pairs in 1..=5usize {
        for _ in 0..500 {
            let internal: Vec<i64> = (0..pairs).map(|_| r.gen_range(-10..=10)).collect();
            let mut cross = vec![vec![0i64; pairs]; pairs];
            for p in 0..pairs {
                for q in p + 1..pairs {
                    let v = r.gen_range(-10..=10);
                    cross[p][q] = v;
                    cross[q][p] = v;
                }
            }
            let eps: Vec<i32> = (0..pairs).map(|_| if r.gen_bool(0.5) { 1 } else { -1 }).collect();
            let b = BlinkPresentation::standard(&internal, &cross, &eps).map_err(|e| e.to_string())?;
            let det = blink_linking_matrix(&b).map_err(|e| e.to_string())?.determinant().unwrap();
            ensure(det.abs().is_one(), || format!("r={pairs} {internal:?} {cross:?}: det {det}"))?;
        }
    }
    for l in -50..=50i64 {
        for eps in [1, -1] {
            let b = BlinkPresentation::standard(&[l], &[vec![0]], &[eps as i32]).unwrap();
            let m = blink_linking_matrix(&b).unwrap();
            ensure(m == IntMatrix::from_i64(&[&[l + eps, l], &[l, l - eps]]), || format!("block for l={l}"))?;
            ensure(m.determinant() == Some(Int::from(-1)), || format!("det for l={l}, eps={eps}"))?;
        }
    }
    Ok(())
}

fn triple_commutator() -> Result<(), String> {
    let h = SymplecticLattice::new(3).unwrap();
    let el = LbarElement::standard(h, &IntMatrix::identity(3)).unwrap();
    let a = [h.ep(0), h.ep(1), h.ep(2)];
    let tau = triple_commutator_tau(&el, &wedge(&a).unwrap()).unwrap();
    let da: Vec<_> = a.iter().map(|v| el.delta().mul_vec(v)).collect();
    let expect = wedge(&da).unwrap().scale(&Rat::from_integer(6.into()));
    ensure(tau == expect, || format!("got {tau}, expected {expect}"))?;
    ensure(tau.len() == 1 && tau.coefficient(&[0, 1, 2]) == Rat::from_integer(6.into()), || format!("got {tau}"))?;
    ensure(!tau.is_zero(), || "vanishes".into())
}

fn filtration_promotion() -> Result<(), String> {
    let mut r = rng(3);
    for i in 0..200 {
        let g = 2 + i % 2;
        let el = rand_lbar(&mut r, g);
        let targets = FiltrationTargets::new(el.lagrangian()).map_err(|e| e.to_string())?;
        let levels = level_generators(el.lagrangian());
        for (k, gens) in levels.iter().enumerate() {
            let n = k + 2;
            // one element built inside level n, one arbitrary element
            for x in [rand_combo(&mut r, 2 * g, gens), rand_tensor(&mut r, 2 * g)] {
                if targets.contains(n, &x).unwrap() {
                    let y = lmo_delta(&el, &x).unwrap();
                    ensure(targets.contains(n + 1, &y).unwrap(), || format!("sample {i}: level {n} image escapes"))?;
                    if n == 4 {
                        ensure(y.is_zero(), || format!("sample {i}: level 5 image {y}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn block_composition() -> Result<(), String> {
    let mut r = rng(4);
    for i in 0..100 {
        let g = 1 + i % 4;
        let h = SymplecticLattice::new(g).unwrap();
        let (c, d) = (rand_symmetric(&mut r, g, 10), rand_symmetric(&mut r, g, 10));
        let prod = compose(&SpMatrix::upper(h, &c).unwrap(), &SpMatrix::upper(h, &d).unwrap()).unwrap();
        ensure(prod == SpMatrix::upper(h, &c.add(&d)).unwrap(), || format!("composition fails for {c:?}, {d:?}"))?;
    }
    for g in 1..=3usize {
        let h = SymplecticLattice::new(g).unwrap();
        let slots: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
        let total = 7usize.pow(slots.len() as u32);
        let bad = Exec::Parallel.map_range(total, |mut code| {
            let mut c = IntMatrix::zeros(g, g);
            for &(i, j) in &slots {
                let v = Int::from(code % 7) - Int::from(3);
                code /= 7;
                c[(i, j)] = v.clone();
                c[(j, i)] = v;
            }
            let ok = realize_symmetric(&c)
                .and_then(|data| product_of_transvections(&h, &data))
                .is_ok_and(|m| m == SpMatrix::upper(h, &c).unwrap());
            (!ok).then_some(c)
        });
        if let Some(c) = bad.into_iter().flatten().next() {
            return Err(format!("realize_symmetric does not round-trip {c:?}"));
        }
    }
    Ok(())
}

fn magnus_iadic() -> Result<(), String> {
    for depth in 1..=5usize {
        let rank: usize = 3;
        for code in 0..rank.pow(depth as u32) {
            let letters: Vec<usize> = (0..depth).map(|k| code / rank.pow(k as u32) % rank).collect();
            let w = lcs_commutator(rank, depth, &letters).unwrap();
            let d = iadic_degree(&magnus(&w, depth).unwrap()).unwrap();
            ensure(d.at_least(depth), || format!("{w} has degree {d}, depth {depth}"))?;
        }
    }
    let mut r = rng(5);
    for _ in 0..200 {
        let depth = r.gen_range(1..=5);
        let letters: Vec<usize> = (0..depth).map(|_| r.gen_range(0..6)).collect();
        let w = lcs_commutator(6, depth, &letters).unwrap();
        let d = iadic_degree(&magnus(&w, depth).unwrap()).unwrap();
        ensure(d.at_least(depth), || format!("{w} has degree {d}, depth {depth}"))?;
    }
    for _ in 0..100 {
        let rank = r.gen_range(1..=3);
        let len = r.gen_range(1..=6);
        let w = rand_word(&mut r, rank, len);
        let (m, n) = (r.gen_range(1..=5), r.gen_range(1..=6));
        ensure(binomial_identity_check(&w, m, n).unwrap(), || format!("binomial identity fails for {w}, m={m}, N={n}"))?;
    }
    Ok(())
}

fn fundamental_relation_check() -> Result<(), String> {
    let mut cases = 0;
    for n in 0..=4usize {
        for mask in 0..1u32 << n {
            let mut lk = IntMatrix::zeros(n, n);
            for i in 0..n {
                lk[(i, i)] = if mask >> i & 1 == 1 { (-1).into() } else { 1.into() };
            }
            let link = FramedLink::new(lk).unwrap();
            for pairs in 0..=(4 - n) / 2 {
                let blink = BlinkPresentation::standard(&vec![0; pairs], &vec![vec![0; pairs]; pairs], &vec![1; pairs]).unwrap();
                for h in (0..n).map(Handle::Link).chain((0..pairs).map(Handle::Pair)) {
                    let (l, r) = fundamental_relation(Exec::Parallel, "M", &blink, &link, h).map_err(|e| e.to_string())?;
                    ensure(l == r, || format!("n={n}, pairs={pairs}, removing {h}: {l} != {r}"))?;
                    cases += 1;
                }
            }
        }
    }
    ensure(cases > 0, || "no cases".into())
}

fn four_term_calculus() -> Result<(), String> {
    for seed in 0..1000u64 {
        let d = mixed(seed, 12);
        let (got, want) = (boundary_degree(&d), brute_degree(&d));
        ensure(got == want, || format!("seed {seed}: boundary_degree {got}, brute force {want}"))?;
    }
    let mut r = rng(7);
    let mut nontrivial = 0;
    for i in 0..50usize {
        let m = 1 + i % 2;
        let need = 2 * m * m * m;
        let n = r.gen_range(need..=need + 4);
        // half uniformly random, half all-crossing (boundary degree 1)
        let d = if i % 4 < 2 { rand_single_circle(&mut r, n) } else { all_crossing(n) };
        let s = tower_reduce(Exec::Parallel, &d, m, 2).map_err(|e| format!("sample {i}: {e}"))?;
        for (t, _) in s.terms() {
            ensure(independent_set_at_least(t, m) || t.marks() as usize >= m, || {
                format!("sample {i}: term {t:?} is not {m}-boundary")
            })?;
        }
        ensure(sum_weight(&s, 3) == gl_weight(&d, 3), || format!("sample {i}: gl_3 weight changed"))?;
        if boundary_degree(&d) < m {
            nontrivial += 1;
        }
    }
    ensure(nontrivial >= 12, || format!("only {nontrivial} diagrams needed rewriting"))?;
    if let Some(m) = (1..=10_000u64).find(|&m| !pigeonhole_ok(m, 2)) {
        return Err(format!("pigeonhole_ok({m}, 2) fails"));
    }
    Ok(())
}

fn alexander_casson() -> Result<(), String> {
    let mut r = rng(8);
    for i in 0..100 {
        let a = rand_seifert_block(&mut r, 1 + i % 3, 3);
        let d = alexander_block(&a).map_err(|e| e.to_string())?;
        ensure(d.is_symmetric() && d.eval_one().is_one(), || format!("Δ = {d} for {a:?}"))?;
        let p = phi(&SeifertMatrix::knot(a.clone()).unwrap()).unwrap();
        ensure(p == Rat::from_integer(phi_oracle(&a)), || format!("φ mismatch for {a:?}"))?;
    }
    let trefoil = SeifertMatrix::knot(IntMatrix::from_i64(&[&[-1, 1], &[0, -1]])).unwrap();
    let figure_eight = SeifertMatrix::knot(IntMatrix::from_i64(&[&[1, 1], &[0, -1]])).unwrap();
    for (s, want) in [(&trefoil, 2), (&figure_eight, -2)] {
        let got = phi(s).unwrap();
        ensure(got == Rat::from_integer(want.into()), || format!("φ = {got}, expected {want}"))?;
        ensure(phi_oracle(s.matrix()) == want.into(), || format!("oracle disagrees on {want}"))?;
    }
    let blocks = [trefoil, figure_eight];
    for _ in 0..50 {
        let f: Vec<i32> = (0..2).map(|_| r.gen_range(-5..=5)).collect();
        let g: Vec<i32> = (0..2).map(|_| r.gen_range(-5..=5)).collect();
        let k = r.gen_range(-3..=3);
        let combo: Vec<i32> = f.iter().zip(&g).map(|(a, b)| k * a + b).collect();
        let lhs = casson(&combo, &blocks).unwrap();
        let rhs = casson(&f, &blocks).unwrap() * Rat::from_integer(k.into()) + casson(&g, &blocks).unwrap();
        ensure(lhs == rhs, || format!("casson not linear at {f:?}, {g:?}, k={k}"))?;
    }
    Ok(())
}

fn congruence_invariance() -> Result<(), String> {
    let mut r = rng(9);
    for i in 0..50 {
        let (sizes, a) = if i % 5 == 4 {
            let mut a = IntMatrix::zeros(4, 4);
            a.set_block(0, 0, &rand_seifert_block(&mut r, 1, 2));
            a.set_block(2, 2, &rand_seifert_block(&mut r, 1, 2));
            a[(0, 2)] = r.gen_range(-1..=1).into();
            a[(3, 1)] = r.gen_range(-1..=1).into();
            (vec![2, 2], a)
        } else {
            let h = 1 + i % 2;
            (vec![2 * h], rand_seifert_block(&mut r, h, 2))
        };
        // block-diagonal unimodular P from two elementary moves per block
        let n = a.nrows();
        let mut p = IntMatrix::identity(n);
        let mut off = 0;
        for &s in &sizes {
            for _ in 0..2 {
                let (x, y) = (off + r.gen_range(0..s), off + r.gen_range(0..s));
                if x != y {
                    let k = Int::from(if r.gen_bool(0.5) { 1 } else { -1 });
                    let mut e = IntMatrix::identity(n);
                    e[(x, y)] = k;
                    p = &p * &e;
                }
            }
            off += s;
        }
        let bound = u32::try_from(p.max_abs()).unwrap();
        let b = &(&p.transpose() * &a) * &p;
        let sa = SeifertMatrix::new(sizes.clone(), a).unwrap();
        let sb = SeifertMatrix::new(sizes.clone(), b).unwrap();
        ensure(seifert_congruent(&sa, &sb, bound).unwrap(), || format!("pair {i}: no congruence within {bound}"))?;
        if sizes.len() == 1 {
            ensure(alexander(&sa).unwrap() == alexander(&sb).unwrap(), || format!("pair {i}: Δ differs"))?;
        } else {
            for k in 0..sizes.len() {
                let (x, y) = (alexander_block(&sa.block(k, k)).unwrap(), alexander_block(&sb.block(k, k)).unwrap());
                ensure(x == y, || format!("pair {i}: block {k} Δ differs"))?;
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, Check, Option<Duration>); 9] = [
        ("1 blink unimodularity", blink_unimodularity, Some(Duration::from_secs(5))),
        ("2 triple commutator value", triple_commutator, Some(Duration::from_secs(1))),
        ("3 filtration promotion", filtration_promotion, Some(Duration::from_secs(30))),
        ("4 block composition law", block_composition, None),
        ("5 Magnus / I-adic degree", magnus_iadic, Some(Duration::from_secs(60))),
        ("6 fundamental relation", fundamental_relation_check, None),
        ("7 4T calculus", four_term_calculus, Some(Duration::from_secs(300))),
        ("8 Alexander / Casson", alexander_casson, Some(Duration::from_secs(5))),
        ("9 congruence invariance", congruence_invariance, None),
    ];
    let mut failed = Vec::new();
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(()), Some(b)) if took > b => Err(format!("took {took:.2?}, budget {b:.0?}")),
            (o, _) => o,
        };
        match &outcome {
            Ok(()) => println!("PASS criterion {name} ({took:.2?})"),
            Err(e) => {
                println!("FAIL criterion {name} ({took:.2?}): {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
