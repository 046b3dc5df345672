//! The ten acceptance criteria, one test each. Every test prints a single PASS/FAIL line
//! (straight to stdout, so it shows even when output is captured) and then asserts.

use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orthoweb::combin::{Composition, OWeight};
use orthoweb::evalfun::{check_udot_relations, run_suite, Evaluator, RelationId};
use orthoweb::howe::{
    actions_agree, commutant_check, commutant_dim, end_dim_prediction, fmf_rank, fmf_span_dim,
    gl_hom_dim, hom_commutant_dim, sign_identity_holds, type_a_fmf_rank,
};
use orthoweb::scalars::Field;
use orthoweb::sparse::{Echelon, SparseMatrix};
use orthoweb::ssquot::{
    digit_circle, digit_positions, merge_split_negligibility, verlinde_crosscheck,
};
use orthoweb::webcat::{enumerate_fmf, CompositeSampler, Gen, StateBounds, WebDiagram};

fn report(k: usize, ok: bool, detail: String) {
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "criterion {k}: {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    )
    .unwrap();
    out.flush().unwrap();
}

fn fields() -> [Field; 3] {
    [Field::q(), Field::fp(3), Field::fp(5)]
}

/// Words of positive labels ≤ n of total thickness ≤ t.
fn words(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for k in 1..=n {
                let mut v = w.clone();
                v.push(k);
                if v.iter().sum::<usize>() <= t {
                    next.push(v);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Boundary pairs (K, L) with |K| + |L| ≤ 4.
fn boundary_pairs(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let ws = words(n, 4);
    let mut out = Vec::new();
    for k in &ws {
        for l in &ws {
            if k.iter().sum::<usize>() + l.iter().sum::<usize>() <= 4 {
                out.push((k.clone(), l.clone()));
            }
        }
    }
    out
}

#[test]
fn criterion_1_relation_suite() {
    let t = Instant::now();
    let (mut total, mut bad) = (0, Vec::new());
    for n in 2..=4 {
        for field in fields() {
            let ev = Evaluator::new(n, field);
            for r in run_suite(&ev, RelationId::ALL) {
                total += 1;
                if !r.pass {
                    bad.push(format!(
                        "N={n} {} {}",
                        field.spec(),
                        serde_json::to_string(&r).unwrap()
                    ));
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 300.0;
    report(
        1,
        ok,
        format!(
            "{total} relation instances, {} failures, {secs:.1}s",
            bad.len()
        ),
    );
    assert!(ok, "{:?}", &bad[..bad.len().min(10)]);
}

#[test]
fn criterion_2_circle_and_digon() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=5usize {
        let ev = Evaluator::new(n, Field::q());
        let f = ev.field();
        for k in 1..=n {
            let circle = ev.evaluate(
                &WebDiagram::generator(Gen::Cap { k }, &[], &[])
                    .after(&WebDiagram::generator(Gen::Cup { k }, &[], &[]))
                    .unwrap(),
            );
            checked += 1;
            if circle.get(0, 0) != f.binom(n as u64, k as i64) {
                bad.push(format!("circle N={n} k={k}: {}", circle.get(0, 0)));
            }
            for l in 1..=n - k {
                let digon = WebDiagram::generator(Gen::Merge { k, l }, &[], &[])
                    .after(&WebDiagram::generator(Gen::Split { k, l }, &[], &[]))
                    .unwrap();
                let expect = SparseMatrix::identity(f, ev.dim(&[k + l]))
                    .scale(&f.binom((k + l) as u64, k as i64));
                checked += 1;
                if ev.evaluate(&digon) != expect {
                    bad.push(format!("digon N={n} k={k} l={l}"));
                }
            }
        }
    }
    report(
        2,
        bad.is_empty(),
        format!("{checked} circle/digon values checked"),
    );
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_3_idempotented_relations() {
    let t = Instant::now();
    let (mut checked, mut bad) = (0, Vec::new());
    for m in 2..=3 {
        for n in 1..=3 {
            for field in fields() {
                let rep = check_udot_relations(m, 2, &Evaluator::new(n, field));
                checked += rep.checked;
                bad.extend(
                    rep.failures
                        .iter()
                        .map(|s| format!("m={m} N={n} {}: {s}", field.spec())),
                );
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 600.0;
    report(
        3,
        ok,
        format!(
            "{checked} relation checks, {} failures, {secs:.1}s",
            bad.len()
        ),
    );
    assert!(ok, "{:?}", &bad[..bad.len().min(10)]);
}

#[test]
fn criterion_4_commuting_actions() {
    let t = Instant::now();
    let (mut checked, mut bad) = (0, Vec::new());
    for n in 1..=3 {
        for m in 1..=3 {
            let rep = commutant_check(n, m, Field::q());
            checked += rep.checked;
            bad.extend(rep.failures);
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 120.0;
    report(
        4,
        ok,
        format!("{checked} commutators, {} failures, {secs:.1}s", bad.len()),
    );
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_5_action_agreement() {
    let (mut checked, mut bad) = (0, Vec::new());
    for n in 1..=9usize {
        for m in 2..=9 / n {
            let rep = actions_agree(n, m, n, Field::q());
            checked += rep.checked;
            bad.extend(rep.failures.iter().map(|s| format!("N={n} m={m}: {s}")));
        }
    }
    report(
        5,
        bad.is_empty(),
        format!("{checked} operator comparisons for Nm ≤ 9"),
    );
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(10)]);
}

#[test]
fn criterion_6_endomorphism_dimension() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for (n, m) in [(1, 2), (2, 2), (1, 3)] {
        let predicted = end_dim_prediction(n, m);
        let oracle = commutant_dim(n, m, Field::q());
        if BigInt::from(oracle) != predicted {
            bad.push(format!(
                "(N,m)=({n},{m}) commutant {oracle} vs predicted {predicted}"
            ));
        }
        for p in [3, 5] {
            let span = fmf_span_dim(n, m, Field::fp(p));
            if BigInt::from(span) != predicted {
                bad.push(format!(
                    "(N,m)=({n},{m}) over F{p}: span {span} vs predicted {predicted}"
                ));
            }
        }
        seen.push(format!("({n},{m})→{predicted}"));
    }
    if end_dim_prediction(1, 2) != BigInt::from(8) {
        bad.push("(1,2) prediction is not 8".into());
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 300.0;
    report(6, ok, format!("{} {secs:.1}s", seen.join(" ")));
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_7_sign_lemma_and_dagger() {
    let mut bad = Vec::new();
    for n in 1..=9usize {
        for m in 1..=9 / n {
            if !sign_identity_holds(n, m) {
                bad.push(format!("sign lemma N={n} m={m}"));
            }
        }
    }
    let mut pairs = 0;
    for n in 1..=3 {
        for m in 1..=3 {
            let weights = OWeight::in_box(n, m);
            let images: Vec<Composition> = weights.iter().map(|w| w.dagger(m).unwrap()).collect();
            let mut sorted = images.clone();
            sorted.sort();
            sorted.dedup();
            let mut dominant = Composition::dominant(m, n);
            dominant.sort();
            if sorted.len() != weights.len() || sorted != dominant {
                bad.push(format!("dagger not a bijection N={n} m={m}"));
            }
            for (i, a) in weights.iter().enumerate() {
                for (j, b) in weights.iter().enumerate() {
                    if a.partition_less(b) {
                        pairs += 1;
                        if !images[j].partition_less(&images[i]) {
                            bad.push(format!("order not reversed: {a} < {b} at N={n} m={m}"));
                        }
                    }
                }
            }
        }
    }
    report(
        7,
        bad.is_empty(),
        format!("sign lemma for Nm ≤ 9, dagger on {pairs} comparable pairs"),
    );
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_8_semisimplification() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut circles = 0;
    for p in [3u64, 5] {
        for n in 1..=8 {
            for i in digit_positions(n, p) {
                let (value, digit) = digit_circle(n, p, i as u32);
                circles += 1;
                if value != digit {
                    bad.push(format!("(a) p={p} N={n} i={i}: {value} vs {digit}"));
                }
            }
        }
    }
    for n in [4, 5] {
        for (a, b) in [(1, 2), (2, 1)] {
            if !merge_split_negligibility(a, b, 1, 3, n).unwrap() {
                bad.push(format!("(b) merge/split {a}+{b} at N={n}"));
            }
        }
    }
    let digit_words: Vec<Vec<usize>> = (0..=4u32)
        .flat_map(|len| {
            (0..1usize << len).map(move |bits| (0..len).map(|j| (bits >> j) & 1).collect())
        })
        .collect();
    let mut compared = 0;
    for k in &digit_words {
        for l in &digit_words {
            if k.len() + l.len() > 4 {
                continue;
            }
            let r = verlinde_crosscheck(k, l, 3, 4).unwrap();
            compared += 1;
            if !r.pass {
                bad.push(format!("(c) {}", serde_json::to_string(&r).unwrap()));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 600.0;
    report(8, ok, format!("{circles} digit circles, 4 merge/split pairs, {compared} Brauer comparisons, {secs:.1}s"));
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_9_spanning() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut samples, mut skipped, mut bad) = (0, 0, Vec::new());
    for n in 1..=3 {
        let ev = Evaluator::new(n, Field::q());
        let bounds = StateBounds::new(n);
        for (k, l) in boundary_pairs(n) {
            if (k.iter().sum::<usize>() + l.iter().sum::<usize>()) % 2 == 1 {
                // no web connects boundaries of different parity
                skipped += 1;
                continue;
            }
            let dim = ev.dim(&k) * ev.dim(&l);
            let mut span = Echelon::new(ev.field(), dim);
            for d in enumerate_fmf(&k, &l) {
                span.insert(ev.evaluate(&d).flatten());
            }
            let sampler = CompositeSampler::new(&l, bounds);
            for _ in 0..200 {
                let d = sampler
                    .sample(&k, 6, &mut rng)
                    .expect("equal parity boundaries are connected");
                samples += 1;
                if !span.contains(ev.evaluate(&d).flatten()) {
                    bad.push(format!("N={n} {k:?}→{l:?}: {}", d.to_json()));
                    break;
                }
            }
        }
    }
    report(
        9,
        bad.is_empty(),
        format!(
            "{samples} random composites in the fmf span ({skipped} odd-parity pairs have no webs)"
        ),
    );
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_10_faithfulness() {
    let (mut checked, mut bad) = (0, Vec::new());
    for n in 1..=3 {
        let ev = Evaluator::new(n, Field::q());
        for (k, l) in boundary_pairs(n) {
            checked += 1;
            let (fmf, comm) = (fmf_rank(&k, &l, &ev), hom_commutant_dim(&k, &l, &ev));
            if fmf != comm {
                bad.push(format!("N={n} {k:?}→{l:?}: fmf {fmf} vs commutant {comm}"));
            }
            let (ta, gl) = (type_a_fmf_rank(&k, &l, &ev), gl_hom_dim(&k, &l, &ev));
            if ta != gl {
                bad.push(format!(
                    "N={n} {k:?}→{l:?}: type A {ta} vs GL commutant {gl}"
                ));
            }
        }
    }
    report(
        10,
        bad.is_empty(),
        format!("{checked} Hom spaces, orthogonal and type A"),
    );
    assert!(bad.is_empty(), "{bad:?}");
}
