use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orthoweb::evalfun::Evaluator;
use orthoweb::howe::group_actors;
use orthoweb::scalars::Field;
use orthoweb::webcat::{random_composite, Rotation, StateBounds, WebDiagram};

fn labels(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(1..=n, 0..=3)
        .prop_filter("bounded thickness", |v| v.iter().sum::<usize>() <= 4)
}

fn same_parity(a: &[usize], b: &[usize]) -> bool {
    (a.iter().sum::<usize>() + b.iter().sum::<usize>()) % 2 == 0
}

/// A random composite between boundaries of equal parity (always reachable).
fn sample(source: &[usize], target: &[usize], n: usize, seed: u64) -> Option<WebDiagram> {
    if !same_parity(source, target) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Some(
        random_composite(source, target, StateBounds::new(n), 6, &mut rng)
            .expect("equal parity boundaries are connected"),
    )
}

fn field(i: usize) -> Field {
    [Field::q(), Field::fp(3), Field::fp(5)][i]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_matrix_product(n in 1usize..=3, a in labels(3), b in labels(3), c in labels(3), seed in any::<u64>(), fi in 0usize..3) {
        let (a, b, c): (Vec<_>, Vec<_>, Vec<_>) = (a.into_iter().map(|x| x.min(n)).collect(), b.into_iter().map(|x| x.min(n)).collect(), c.into_iter().map(|x| x.min(n)).collect());
        prop_assume!(same_parity(&a, &b) && same_parity(&b, &c));
        let ev = Evaluator::new(n, field(fi));
        if let (Some(f), Some(g)) = (sample(&a, &b, n, seed), sample(&b, &c, n, seed ^ 1)) {
            let gf = g.after(&f).unwrap();
            prop_assert_eq!(ev.evaluate(&gf), ev.evaluate(&g).mul(&ev.evaluate(&f)));
        }
    }

    #[test]
    fn tensor_is_kronecker(n in 1usize..=3, a in labels(2), b in labels(2), c in labels(2), d in labels(2), seed in any::<u64>()) {
        let ev = Evaluator::new(n, Field::fp(5));
        let clip = |v: Vec<usize>| v.into_iter().map(|x| x.min(n)).collect::<Vec<_>>();
        let (a, b, c, d) = (clip(a), clip(b), clip(c), clip(d));
        prop_assume!(same_parity(&a, &b) && same_parity(&c, &d));
        if let (Some(f), Some(g)) = (sample(&a, &b, n, seed), sample(&c, &d, n, seed ^ 2)) {
            prop_assert_eq!(ev.evaluate(&f.tensor(&g)), ev.evaluate(&f).kron(&ev.evaluate(&g)));
        }
    }

    #[test]
    fn flip_is_transpose(n in 1usize..=3, a in labels(3), b in labels(3), seed in any::<u64>()) {
        let ev = Evaluator::new(n, Field::q());
        let clip = |v: Vec<usize>| v.into_iter().map(|x| x.min(n)).collect::<Vec<_>>();
        let (a, b) = (clip(a), clip(b));
        prop_assume!(same_parity(&a, &b));
        if let Some(f) = sample(&a, &b, n, seed) {
            prop_assert_eq!(ev.evaluate(&f.flipped()), ev.evaluate(&f).transpose());
            prop_assert_eq!(f.flipped().flipped(), f);
        }
    }

    #[test]
    fn json_round_trip(n in 1usize..=3, a in labels(3), b in labels(3), seed in any::<u64>()) {
        let clip = |v: Vec<usize>| v.into_iter().map(|x| x.min(n)).collect::<Vec<_>>();
        let (a, b) = (clip(a), clip(b));
        prop_assume!(same_parity(&a, &b));
        if let Some(f) = sample(&a, &b, n, seed) {
            prop_assert_eq!(WebDiagram::from_json(&f.to_json()).unwrap(), f);
        }
    }

    #[test]
    fn rotation_round_trip(n in 1usize..=3, a in labels(3), b in labels(3), seed in any::<u64>()) {
        let ev = Evaluator::new(n, Field::fp(3));
        let clip = |v: Vec<usize>| v.into_iter().map(|x| x.min(n)).collect::<Vec<_>>();
        let (a, b) = (clip(a), clip(b));
        prop_assume!(same_parity(&a, &b));
        if let Some(f) = sample(&a, &b, n, seed) {
            if let Some(up) = f.rotate(Rotation::BottomToTop) {
                let back = up.rotate(Rotation::TopToBottom).unwrap();
                prop_assert_eq!(back.source(), f.source());
                prop_assert_eq!(ev.evaluate(&back), ev.evaluate(&f));
            }
            if let Some(down) = f.rotate(Rotation::TopToBottom) {
                let back = down.rotate(Rotation::BottomToTop).unwrap();
                prop_assert_eq!(ev.evaluate(&back), ev.evaluate(&f));
            }
        }
    }

    #[test]
    fn evaluations_are_orthogonal_group_equivariant(n in 1usize..=3, a in labels(3), b in labels(3), seed in any::<u64>()) {
        let ev = Evaluator::new(n, Field::q());
        let clip = |v: Vec<usize>| v.into_iter().map(|x| x.min(n)).collect::<Vec<_>>();
        let (a, b) = (clip(a), clip(b));
        prop_assume!(same_parity(&a, &b));
        if let Some(f) = sample(&a, &b, n, seed) {
            let m = ev.evaluate(&f);
            for (x, y) in group_actors(f.source(), &ev).iter().zip(group_actors(f.target(), &ev)) {
                prop_assert_eq!(y.mul(&m), m.mul(x));
            }
        }
    }
}

#[test]
fn rotation_is_the_pivotal_mate() {
    // rotating a merge's right input up gives the split composed with a cup, up to the snake
    let ev = Evaluator::new(3, Field::q());
    let merge = WebDiagram::generator(orthoweb::webcat::Gen::Merge { k: 1, l: 2 }, &[], &[]);
    let up = merge.rotate(Rotation::BottomToTop).unwrap();
    assert_eq!(up.source(), &[1]);
    assert_eq!(up.target(), &[3, 2]);
    let m = ev.evaluate(&up);
    assert_eq!((m.rows, m.cols), (3, 3));
    assert!(!m.is_zero());
}
