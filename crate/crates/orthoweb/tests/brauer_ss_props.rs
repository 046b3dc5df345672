use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orthoweb::brauer::{
    brauer_gram, brauer_to_web, compose_brauer, compose_loops, enumerate_brauer, LoopParams,
};
use orthoweb::evalfun::Evaluator;
use orthoweb::scalars::Field;
use orthoweb::ssquot::{hom_basis, is_negligible, ss_hom_dim};
use orthoweb::webcat::{random_composite, Gen, StateBounds, WebDiagram};

fn word(colors: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..colors, 0..=4)
}

/// Appends colors to `w` so each color occurs with the same parity as in `like`.
fn match_parity(like: &[usize], mut w: Vec<usize>) -> Vec<usize> {
    for c in 0..2 {
        let count = |v: &[usize]| v.iter().filter(|&&x| x == c).count();
        if count(like) % 2 != count(&w) % 2 {
            w.push(c);
        }
    }
    w
}

/// Boundary words of positive labels ≤ n with total thickness ≤ 4 on both sides together.
fn boundary_pairs(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut words = vec![vec![]];
    let mut frontier = vec![vec![]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for k in 1..=n {
                let mut v: Vec<usize> = w.clone();
                v.push(k);
                if v.iter().sum::<usize>() <= 4 {
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for a in &words {
        for b in &words {
            if a.iter().sum::<usize>() + b.iter().sum::<usize>() <= 4 {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn brauer_composition_is_associative(a in word(2), b in word(2), c in word(2), d in word(2), pick in any::<(usize, usize, usize)>()) {
        let f = Field::q();
        let params = LoopParams::new(f, vec![f.from_i64(3), f.from_i64(-2)]);
        let (b, c, d) = (match_parity(&a, b), match_parity(&a, c), match_parity(&a, d));
        let (fs, gs, hs) = (enumerate_brauer(&a, &b), enumerate_brauer(&b, &c), enumerate_brauer(&c, &d));
        prop_assert!(!fs.is_empty() && !gs.is_empty() && !hs.is_empty());
        let (x, y, z) = (&fs[pick.0 % fs.len()], &gs[pick.1 % gs.len()], &hs[pick.2 % hs.len()]);
        let (s1, yx) = compose_brauer(y, x, &params).unwrap();
        let (s2, left) = compose_brauer(z, &yx, &params).unwrap();
        let (t1, zy) = compose_brauer(z, y, &params).unwrap();
        let (t2, right) = compose_brauer(&zy, x, &params).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(s1.mul(&s2), t1.mul(&t2));
    }

    #[test]
    fn brauer_gram_is_symmetric(a in word(2), b in word(2)) {
        let params = LoopParams::digits(4, 3);
        let g = brauer_gram(&a, &b, &params).unwrap();
        prop_assert_eq!(g.transpose(), brauer_gram(&b, &a, &params).unwrap());
    }
}

#[test]
fn functor_agrees_on_closed_diagrams() {
    for n in 1..=4usize {
        for k in 1..=n {
            let dim = orthoweb::evalfun::exterior_dim(n, k);
            let ev = Evaluator::new(n, Field::q());
            let f = Field::q();
            let params = LoopParams::single(f, dim as i64);
            for len in [0usize, 2, 4, 6] {
                if len == 6 && dim > 4 {
                    continue;
                }
                let w = vec![0; len];
                for bottom in enumerate_brauer(&[], &w) {
                    for top in enumerate_brauer(&w, &[]) {
                        let (loops, _) = compose_loops(&top, &bottom).unwrap();
                        assert!(loops.len() <= 3);
                        let (s, _) = compose_brauer(&top, &bottom, &params).unwrap();
                        let labels = [k];
                        let web = brauer_to_web(&top, &labels)
                            .after(&brauer_to_web(&bottom, &labels))
                            .unwrap();
                        assert_eq!(
                            ev.evaluate(&web).get(0, 0),
                            s,
                            "N={n} k={k} {bottom} then {top}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn functor_preserves_composition() {
    let ev = Evaluator::new(3, Field::fp(5));
    let f = Field::fp(5);
    let params = LoopParams::single(f, 3);
    let w1 = [0, 0];
    let w2 = [0, 0, 0, 0];
    for x in enumerate_brauer(&w1, &w2) {
        for y in enumerate_brauer(&w2, &w1) {
            let (s, yx) = compose_brauer(&y, &x, &params).unwrap();
            let lhs = ev.evaluate(
                &brauer_to_web(&y, &[1])
                    .after(&brauer_to_web(&x, &[1]))
                    .unwrap(),
            );
            assert_eq!(lhs, ev.evaluate(&brauer_to_web(&yx, &[1])).scale(&s));
        }
    }
}

#[test]
fn negligibles_form_an_ideal() {
    // over 𝔽_3 at N = 4: id of Λ² (dimension 6) and the merge 1⊗2 → 3 are negligible
    let ev = Evaluator::new(4, Field::fp(3));
    let id2 = ev.evaluate(&WebDiagram::identity(&[2]));
    assert!(is_negligible(&id2, &[2], &[2], &ev));
    let merge = ev.evaluate(&WebDiagram::generator(Gen::Merge { k: 1, l: 2 }, &[], &[]));
    assert!(is_negligible(&merge, &[1, 2], &[3], &ev));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let b = StateBounds::new(4);
    for target in [vec![2], vec![1, 1], vec![3, 1], vec![4, 2]] {
        for _ in 0..4 {
            let g = random_composite(&[2], &target, b, 5, &mut rng).unwrap();
            let gm = ev.evaluate(&g);
            assert!(is_negligible(&gm.mul(&id2), &[2], &target, &ev));
        }
    }
    for source in [vec![3], vec![2, 1], vec![1, 1, 1]] {
        for _ in 0..4 {
            let h = random_composite(&source, &[1, 2], b, 5, &mut rng).unwrap();
            let m = merge.mul(&ev.evaluate(&h));
            assert!(is_negligible(&m, &source, &[3], &ev));
        }
    }
}

#[test]
fn ss_dimensions_are_symmetric_and_bounded() {
    for (n, p) in [(4usize, 3u64), (3, 5), (5, 3)] {
        let ev = Evaluator::new(n, Field::fp(p));
        for (k, l) in boundary_pairs(n.min(3)) {
            let d = ss_hom_dim(&k, &l, &ev);
            assert_eq!(d, ss_hom_dim(&l, &k, &ev), "K={k:?} L={l:?}");
            assert!(d <= hom_basis(&k, &l, &ev).len());
        }
    }
}

#[test]
fn rational_semisimplification_is_trivial() {
    for n in 1..=3 {
        let ev = Evaluator::new(n, Field::q());
        for (k, l) in boundary_pairs(n) {
            assert_eq!(
                ss_hom_dim(&k, &l, &ev),
                hom_basis(&k, &l, &ev).len(),
                "N={n} K={k:?} L={l:?}"
            );
        }
    }
}
