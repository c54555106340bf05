//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use ftinv::chords::*;
use ftinv::exterior::*;
use ftinv::groupring::*;
use ftinv::intmat::{Int, IntMatrix, IntVec, Rat};
use ftinv::johnson::*;
use ftinv::symplectic::*;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;


pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_vec(r: &mut ChaCha8Rng, n: usize, k: i64) -> IntVec {
    (0..n).map(|_| Int::from(r.gen_range(-k..=k))).collect()
}

pub fn rand_symmetric(r: &mut ChaCha8Rng, g: usize, k: i64) -> IntMatrix {
    let mut c = IntMatrix::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let v = Int::from(r.gen_range(-k..=k));
            c[(i, j)] = v.clone();
            c[(j, i)] = v;
        }
    }
    c
}

/// A product of a few random transvections.
pub fn rand_sp(r: &mut ChaCha8Rng, h: &SymplecticLattice) -> SpMatrix {
    let mut m = SpMatrix::identity(*h);
    for _ in 0..r.gen_range(1..=4) {
        let v = rand_vec(r, h.rank(), 2);
        if let Ok(t) = transvection(h, &v, if r.gen_bool(0.5) { 1 } else { -1 }) {
            m = compose(&m, &t).unwrap();
        }
    }
    m
}

pub fn rand_lbar(r: &mut ChaCha8Rng, g: usize) -> LbarElement {
    let h = SymplecticLattice::new(g).unwrap();
    let el = LbarElement::standard(h, &rand_symmetric(r, g, 2)).unwrap();
    el.conjugate(&rand_sp(r, &h)).unwrap()
}

pub fn rand_tensor(r: &mut ChaCha8Rng, n: usize) -> MultiVector {
    let mut x = MultiVector::zero(n, Grade::Tensor12);
    for _ in 0..r.gen_range(1..=3) {
        let w = wedge(&[rand_vec(r, n, 2), rand_vec(r, n, 2)]).unwrap();
        x = x.add(&MultiVector::tensor(&rand_vec(r, n, 2), &w).unwrap()).unwrap();
    }
    x
}

pub fn rand_wedge3(r: &mut ChaCha8Rng, n: usize) -> MultiVector {
    wedge(&[rand_vec(r, n, 2), rand_vec(r, n, 2), rand_vec(r, n, 2)]).unwrap()
}

pub fn rand_combo(r: &mut ChaCha8Rng, n: usize, gens: &[MultiVector]) -> MultiVector {
    let mut x = MultiVector::zero(n, Grade::Tensor12);
    for _ in 0..4 {
        let g = &gens[r.gen_range(0..gens.len())];
        x.add_scaled(g, &Rat::from_integer(r.gen_range(-3..=3).into())).unwrap();
    }
    x
}

/// A random unimodular `g × g` matrix from elementary row operations.
pub fn rand_unimodular(r: &mut ChaCha8Rng, g: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(g);
    for _ in 0..3 * g {
        let (i, j) = (r.gen_range(0..g), r.gen_range(0..g));
        if i != j {
            let k = Int::from(r.gen_range(-2..=2));
            for c in 0..g {
                let add = &k * &u[(j, c)];
                u[(i, c)] += add;
            }
        }
    }
    u
}

/// A Lagrangian compatible with `(span e, span e')`: `k` rows of `U` in the
/// `e` coordinates and the dual rows of `U⁻ᵀ` in the `e'` coordinates.
pub fn rand_compatible(r: &mut ChaCha8Rng, g: usize) -> (Sublattice, Vec<IntVec>, Vec<IntVec>) {
    let h = SymplecticLattice::new(g).unwrap();
    let u = rand_unimodular(r, g);
    let dual = u.inverse_unimodular().unwrap().transpose();
    let k = r.gen_range(0..=g);
    let pad = |row: &[Int], plus: bool| -> IntVec {
        let z = vec![Int::zero(); g];
        if plus { [row, &z[..]].concat() } else { [&z[..], row].concat() }
    };
    let plus: Vec<IntVec> = (0..k).map(|i| pad(u.row(i), true)).collect();
    let minus: Vec<IntVec> = (k..g).map(|i| pad(dual.row(i), false)).collect();
    let l = Sublattice::new(h, [plus.clone(), minus.clone()].concat()).unwrap();
    (l, plus, minus)
}


pub fn rand_word(r: &mut ChaCha8Rng, rank: usize, len: usize) -> GroupWord {
    GroupWord::new(rank, (0..len).map(|_| (r.gen_range(0..rank), if r.gen_bool(0.5) { 1 } else { -1 }))).unwrap()
}


/// The gl_N weight of a one-circle type I diagram: `N^{#cycles(σ∘τ)}`,
/// where `σ` steps around the circle and `τ` swaps chord ends.
pub fn gl_weight(d: &ChordDiagram, n: i64) -> Rat {
    let c = &d.circles()[0];
    let len = c.len();
    let partner: Vec<usize> = (0..len)
        .map(|i| (0..len).find(|&j| j != i && c[j] == c[i]).unwrap())
        .collect();
    let mut seen = vec![false; len];
    let mut cycles = 0u32;
    for s in 0..len {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = (partner[i] + 1) % len;
        }
    }
    if len == 0 {
        cycles = 1;
    }
    Rat::from_integer(BigInt::from(n).pow(cycles))
}

pub fn sum_weight(s: &DiagramSum, n: i64) -> Rat {
    s.terms().map(|(d, c)| c * gl_weight(d, n)).sum()
}

pub fn brute_degree(d: &ChordDiagram) -> usize {
    let n = d.num_chords();
    let mut cross = vec![0u32; n];
    for a in 0..n {
        for b in 0..n {
            if a != b && chords_intersect(d, a, b).unwrap() {
                cross[a] |= 1 << b;
            }
        }
    }
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|a| s >> a & 1 == 0 || cross[a] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}


/// Random diagram on 1..=3 circles mixing both chord types.
pub fn mixed(seed: u64, max_chords: usize) -> ChordDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=3);
    let n = rng.gen_range(0..=max_chords);
    let mut circles = vec![Vec::new(); k];
    let mut kinds = Vec::new();
    for id in 0..n {
        if k > 1 && rng.gen_bool(0.4) {
            let a = rng.gen_range(0..k);
            let b = (a + rng.gen_range(1..k)) % k;
            circles[a].extend([id, id]);
            circles[b].extend([id, id]);
            kinds.push(ChordKind::II);
        } else {
            circles[rng.gen_range(0..k)].push(id);
            circles[rng.gen_range(0..k)].push(id);
            kinds.push(ChordKind::I);
        }
    }
    for c in &mut circles {
        c.shuffle(&mut rng);
    }
    ChordDiagram::new(circles, kinds, rng.gen_range(0..3)).unwrap()
}


pub fn all_crossing(n: usize) -> ChordDiagram {
    let w: Vec<usize> = (0..n).chain(0..n).collect();
    ChordDiagram::from_word(&w).unwrap()
}


pub fn rand_single_circle(r: &mut ChaCha8Rng, n: usize) -> ChordDiagram {
    let mut w: Vec<usize> = (0..n).chain(0..n).collect();
    w.shuffle(r);
    ChordDiagram::from_word(&w).unwrap()
}

/// Generators of the level 2, 3, 4 targets for `L`, written out directly.
pub fn level_generators(l: &Sublattice) -> [Vec<MultiVector>; 3] {
    let n = l.lattice().rank();
    let lb = l.basis().to_vec();
    let hb: Vec<IntVec> = (0..n).map(|i| l.lattice().unit(i)).collect();
    let k = wedge2_generators(&lb, &hb);
    let wl = wedge2_generators(&lb, &lb);
    [
        [tensor_generators(&lb, &wedge2_generators(&hb, &hb)), tensor_generators(&hb, &k)].concat(),
        [tensor_generators(&lb, &k), tensor_generators(&hb, &wl)].concat(),
        tensor_generators(&lb, &wl),
    ]
}

/// A knot Seifert block with `A - Aᵀ` unimodular: a symmetric part on top
/// of the standard skew block, conjugated by a random unimodular matrix.
pub fn rand_seifert_block(r: &mut ChaCha8Rng, h: usize, k: i64) -> IntMatrix {
    let n = 2 * h;
    let mut a = rand_symmetric(r, n, k);
    for i in 0..h {
        a[(2 * i, 2 * i + 1)] += Int::from(1);
    }
    let p = rand_unimodular(r, n);
    &(&p.transpose() * &a) * &p
}

type Poly = Vec<BigInt>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `det(tA - Aᵀ)` as a polynomial in `t`, by cofactor expansion.
pub fn det_t_a_minus_at(a: &IntMatrix) -> Poly {
    let n = a.nrows();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| vec![-a[(j, i)].clone(), a[(i, j)].clone()]).collect())
        .collect();
    fn det(m: &[Vec<Poly>], cols: &[usize]) -> Poly {
        if cols.is_empty() {
            return vec![BigInt::from(1)];
        }
        let mut out = vec![BigInt::zero()];
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = poly_mul(&m[0][c], &det(&m[1..], &rest));
            if out.len() < term.len() {
                out.resize(term.len(), BigInt::zero());
            }
            for (o, t) in out.iter_mut().zip(term) {
                if k % 2 == 0 {
                    *o += t;
                } else {
                    *o -= t;
                }
            }
        }
        out
    }
    let cols: Vec<usize> = (0..n).collect();
    det(&m, &cols)
}

/// `Δ''(1)` of the normalized `t^{-h}·det(tA - Aᵀ)`, differentiated term
/// by term.
pub fn phi_oracle(a: &IntMatrix) -> BigInt {
    let p = det_t_a_minus_at(a);
    let h = (a.nrows() / 2) as i64;
    let at_one: BigInt = p.iter().sum();
    let sign = if at_one < BigInt::zero() { -1 } else { 1 };
    p.iter()
        .enumerate()
        .map(|(i, c)| {
            let e = i as i64 - h;
            c * BigInt::from(sign * e * (e - 1))
        })
        .sum()
}
