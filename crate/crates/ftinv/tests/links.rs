mod common;

use common::*;
use ftinv::intmat::{Int, IntMatrix, Rat};
use ftinv::links::format::{blink_to_text, parse_blink, parse_seifert, seifert_to_text};
use ftinv::links::*;
use ftinv::par::Exec;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn rand_blink(r: &mut rand_chacha::ChaCha8Rng, pairs: usize) -> BlinkPresentation {
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
    BlinkPresentation::standard(&internal, &cross, &eps).unwrap()
}

fn unit_link(signs: &[i64]) -> FramedLink {
    let mut m = IntMatrix::zeros(signs.len(), signs.len());
    for (i, &s) in signs.iter().enumerate() {
        m[(i, i)] = s.into();
    }
    FramedLink::new(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn blink_matrices_are_unimodular(seed in any::<u64>(), pairs in 0usize..=5) {
        let mut r = rng(seed);
        let b = rand_blink(&mut r, pairs);
        let m = blink_linking_matrix(&b).unwrap();
        prop_assert!(is_unimodular(&m).unwrap());
        prop_assert_eq!(parse_blink(&blink_to_text(&b)).unwrap(), b);
    }

    #[test]
    fn brackets_alternate(seed in any::<u64>(), n in 0usize..=6, pairs in 0usize..=3) {
        let mut r = rng(seed);
        let signs: Vec<i64> = (0..n).map(|_| if r.gen_bool(0.5) { 1 } else { -1 }).collect();
        let s = bracket_expand_link(Exec::Parallel, "M", &unit_link(&signs)).unwrap();
        prop_assert_eq!(s.len(), 1 << n);
        prop_assert_eq!(s.coefficient_sum().is_zero(), n >= 1);
        prop_assert_eq!(&s, &bracket_expand_link(Exec::Sequential, "M", &unit_link(&signs)).unwrap());
        let b = bracket_expand_blink(Exec::Parallel, "M", &rand_blink(&mut r, pairs)).unwrap();
        prop_assert_eq!(b.len(), 1 << pairs);
        prop_assert_eq!(b.coefficient_sum().is_zero(), pairs >= 1);
    }

    #[test]
    fn alexander_is_symmetric_and_normalized(seed in any::<u64>(), h in 0usize..=3) {
        let mut r = rng(seed);
        let a = rand_seifert_block(&mut r, h, 3);
        let d = alexander_block(&a).unwrap();
        prop_assert!(d.is_symmetric());
        prop_assert!(d.eval_one().is_one());
        let s = SeifertMatrix::knot(a.clone()).unwrap();
        prop_assert_eq!(phi(&s).unwrap(), Rat::from_integer(phi_oracle(&a)));
        prop_assert_eq!(parse_seifert(&seifert_to_text(&s)).unwrap(), s);
    }

    #[test]
    fn congruent_blocks_share_alexander(seed in any::<u64>(), h in 1usize..=2) {
        let mut r = rng(seed);
        let a = rand_seifert_block(&mut r, h, 2);
        let mut p = IntMatrix::identity(2 * h);
        let (i, j) = (r.gen_range(0..2 * h), r.gen_range(0..2 * h));
        if i != j {
            p[(i, j)] = Int::from(if r.gen_bool(0.5) { 1 } else { -1 });
        }
        let b = &(&p.transpose() * &a) * &p;
        let (sa, sb) = (SeifertMatrix::knot(a).unwrap(), SeifertMatrix::knot(b).unwrap());
        let found = find_congruence(&sa, &sb, 1).unwrap();
        prop_assert!(found.is_some());
        let q = found.unwrap();
        prop_assert_eq!(&(&q.transpose() * sa.matrix()) * &q, sb.matrix().clone());
        prop_assert_eq!(alexander(&sa).unwrap(), alexander(&sb).unwrap());
    }

    #[test]
    fn casson_is_linear(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let blocks: Vec<SeifertMatrix> = (0..n)
            .map(|_| {
                let h = r.gen_range(0..=2);
                SeifertMatrix::knot(rand_seifert_block(&mut r, h, 2)).unwrap()
            })
            .collect();
        let f: Vec<i32> = (0..n).map(|_| r.gen_range(-3..=3)).collect();
        let g: Vec<i32> = (0..n).map(|_| r.gen_range(-3..=3)).collect();
        let fg: Vec<i32> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let lhs = casson(&fg, &blocks).unwrap();
        prop_assert_eq!(lhs, casson(&f, &blocks).unwrap() + casson(&g, &blocks).unwrap());
        let twice: Vec<i32> = f.iter().map(|x| 2 * x).collect();
        prop_assert_eq!(casson(&twice, &blocks).unwrap(), casson(&f, &blocks).unwrap() * Rat::from_integer(2.into()));
    }
}

#[test]
fn one_pair_block_has_determinant_minus_one() {
    for l in -50..=50 {
        for eps in [1, -1] {
            let b = BlinkPresentation::standard(&[l], &[vec![0]], &[eps]).unwrap();
            let m = blink_linking_matrix(&b).unwrap();
            assert_eq!(m, IntMatrix::from_i64(&[&[l + eps as i64, l], &[l, l - eps as i64]]));
            assert_eq!(m.determinant().unwrap(), Int::from(-1));
        }
    }
}

#[test]
fn fundamental_relation_for_small_links() {
    for n in 0..=4usize {
        for mask in 0..1u32 << n {
            let signs: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let link = unit_link(&signs);
            for pairs in 0..=(4 - n) / 2 {
                let blink = BlinkPresentation::standard(&vec![1; pairs], &vec![vec![0; pairs]; pairs], &vec![1; pairs]).unwrap();
                let handles = (0..n).map(Handle::Link).chain((0..pairs).map(Handle::Pair));
                for h in handles {
                    let (l, r) = fundamental_relation(Exec::Parallel, "M", &blink, &link, h).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }
}

#[test]
fn knot_values() {
    let trefoil = IntMatrix::from_i64(&[&[-1, 1], &[0, -1]]);
    let figure_eight = IntMatrix::from_i64(&[&[1, 1], &[0, -1]]);
    assert_eq!(phi_oracle(&trefoil), 2.into());
    assert_eq!(phi_oracle(&figure_eight), (-2).into());
    assert!(det_t_a_minus_at(&trefoil).iter().map(|c| c.abs()).sum::<Int>() == 3.into());
}
