//! Semisimplification: trace pairings on web Hom spaces, negligible morphisms, and the
//! comparison with the colored Brauer category at loop parameters d_i = N_i.

use serde::Serialize;
use thiserror::Error;

use crate::brauer::{brauer_gram, BrauerError, LoopParams};
use crate::combin::p_adic_digits;
use crate::evalfun::Evaluator;
use crate::scalars::{Field, Scalar};
use crate::sparse::{independent_subset, SparseMatrix};
use crate::webcat::{enumerate_fmf, Gen, WebDiagram, WebError, WebMorphism};

#[derive(Debug, Error)]
pub enum SsError {
    #[error("not an endomorphism: {0:?} → {1:?}")]
    NotEndo(Vec<usize>, Vec<usize>),
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
    #[error("merge parts must be positive with a + b = p^i")]
    BadMerge,
}

/// The closing diagram of K: nested cups on the right, then K ⊗ K^* → 1 by nested caps.
fn closers(k: &[usize]) -> (WebDiagram, WebDiagram) {
    let r = k.len();
    let mut cups = WebDiagram::identity(&[]);
    for (i, &ki) in k.iter().enumerate() {
        // after i cups the boundary is k_1..k_i k_i..k_1; the next cup goes in the middle
        let left = &k[..i];
        let right: Vec<usize> = left.iter().rev().copied().collect();
        cups = WebDiagram::generator(Gen::Cup { k: ki }, left, &right)
            .after(&cups)
            .expect("boundaries match");
    }
    let mut caps = WebDiagram::identity(cups.target());
    for i in (0..r).rev() {
        let left = &k[..i];
        let right: Vec<usize> = left.iter().rev().copied().collect();
        caps = WebDiagram::generator(Gen::Cap { k: k[i] }, left, &right)
            .after(&caps)
            .expect("boundaries match");
    }
    (cups, caps)
}

fn closure(d: &WebDiagram) -> Result<WebDiagram, SsError> {
    if d.source() != d.target() {
        return Err(SsError::NotEndo(d.source().to_vec(), d.target().to_vec()));
    }
    let k = d.source().to_vec();
    let (cups, caps) = closers(&k);
    let dual: Vec<usize> = k.iter().rev().copied().collect();
    Ok(WebDiagram::chain(&[cups, d.padded(&[], &dual), caps])?)
}

/// The categorical trace: evaluation of the closure of f.
pub fn categorical_trace(f: &WebMorphism, ev: &Evaluator) -> Result<Scalar, SsError> {
    if f.source() != f.target() {
        return Err(SsError::NotEndo(f.source().to_vec(), f.target().to_vec()));
    }
    let mut acc = ev.field().zero();
    for (d, c) in f.terms() {
        let m = ev.evaluate(&closure(d)?);
        acc = acc.add(&m.get(0, 0).mul(c));
    }
    Ok(acc)
}

/// Categorical dimension of Λ^K.
pub fn categorical_dim(k: &[usize], ev: &Evaluator) -> Scalar {
    categorical_trace(
        &WebMorphism::from_diagram(WebDiagram::identity(k), ev.field().one()),
        ev,
    )
    .expect("identity is an endomorphism")
}

/// A basis of the evaluated Hom space K → L, extracted from the fmf family.
pub fn hom_basis(k: &[usize], l: &[usize], ev: &Evaluator) -> Vec<SparseMatrix> {
    let (dk, dl) = (ev.dim(k), ev.dim(l));
    let mats: Vec<SparseMatrix> = enumerate_fmf(k, l).iter().map(|d| ev.evaluate(d)).collect();
    if dk * dl == 0 {
        return Vec::new();
    }
    let flat: Vec<_> = mats.iter().map(|m| m.flatten()).collect();
    independent_subset(ev.field(), dk * dl, &flat)
        .into_iter()
        .map(|i| mats[i].clone())
        .collect()
}

/// Trace pairing of matrices: the categorical trace of a closed web is the matrix trace of its
/// evaluation (the cup and cap signs cancel), checked against `categorical_trace` in tests.
fn pairing(g: &SparseMatrix, f: &SparseMatrix) -> Scalar {
    g.mul(f).trace()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramReport {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    #[serde(rename = "N")]
    pub n: usize,
    pub field: String,
    pub hom_dim: usize,
    pub dual_hom_dim: usize,
    pub ss_dim: usize,
    pub gram: Vec<Vec<String>>,
}

/// tr(g∘f) over reduced bases g of Hom(L,K) (rows) and f of Hom(K,L) (columns).
pub fn gram_matrix(k: &[usize], l: &[usize], ev: &Evaluator) -> (SparseMatrix, usize, usize) {
    let fs = hom_basis(k, l, ev);
    let gs = hom_basis(l, k, ev);
    let trip = gs.iter().enumerate().flat_map(|(r, g)| {
        fs.iter()
            .enumerate()
            .map(move |(c, f)| (r, c, pairing(g, f)))
    });
    let gram =
        SparseMatrix::from_triplets(ev.field(), gs.len(), fs.len(), trip.collect::<Vec<_>>());
    (gram, fs.len(), gs.len())
}

/// Rank of the trace pairing on Hom(K,L) × Hom(L,K): the dimension of the semisimplified Hom.
pub fn ss_hom_dim(k: &[usize], l: &[usize], ev: &Evaluator) -> usize {
    gram_matrix(k, l, ev).0.rank()
}

pub fn gram_report(k: &[usize], l: &[usize], ev: &Evaluator) -> GramReport {
    let (gram, hom_dim, dual_hom_dim) = gram_matrix(k, l, ev);
    GramReport {
        source: k.to_vec(),
        target: l.to_vec(),
        n: ev.n(),
        field: ev.field().spec().to_string(),
        hom_dim,
        dual_hom_dim,
        ss_dim: gram.rank(),
        gram: gram
            .to_dense()
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect(),
    }
}

/// Is every trace tr(g ∘ f) zero, for g in a basis of Hom(L,K)?
pub fn is_negligible(f: &SparseMatrix, k: &[usize], l: &[usize], ev: &Evaluator) -> bool {
    hom_basis(l, k, ev).iter().all(|g| pairing(g, f).is_zero())
}

/// The merge a⊗b → p^i and the split p^i → a⊗b are both negligible over 𝔽_p.
pub fn merge_split_negligibility(
    a: usize,
    b: usize,
    i: u32,
    p: u64,
    n: usize,
) -> Result<bool, SsError> {
    let q = p.pow(i) as usize;
    if a == 0 || b == 0 || a + b != q {
        return Err(SsError::BadMerge);
    }
    let ev = Evaluator::new(n, Field::fp(p));
    let merge = ev.evaluate(&WebDiagram::generator(Gen::Merge { k: a, l: b }, &[], &[]));
    let split = ev.evaluate(&WebDiagram::generator(Gen::Split { k: a, l: b }, &[], &[]));
    Ok(is_negligible(&merge, &[a, b], &[q], &ev) && is_negligible(&split, &[q], &[a, b], &ev))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossReport {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub p: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub web_rank: usize,
    pub brauer_rank: usize,
    pub pass: bool,
}

/// Semisimplified Hom between words of Λ^{p^i} (given by digit positions i) computed on webs
/// over 𝔽_p, against the colored Brauer Gram rank with d_i = N_i.
pub fn verlinde_crosscheck(
    source: &[usize],
    target: &[usize],
    p: u64,
    n: usize,
) -> Result<CrossReport, SsError> {
    let ev = Evaluator::new(n, Field::fp(p));
    let label = |i: &usize| p.pow(*i as u32) as usize;
    let (k, l): (Vec<usize>, Vec<usize>) = (
        source.iter().map(label).collect(),
        target.iter().map(label).collect(),
    );
    let web_rank = ss_hom_dim(&k, &l, &ev);
    let params = LoopParams::digits(n as u64, p);
    let brauer_rank = brauer_gram(source, target, &params)?.rank();
    Ok(CrossReport {
        source: source.to_vec(),
        target: target.to_vec(),
        p,
        n,
        web_rank,
        brauer_rank,
        pass: web_rank == brauer_rank,
    })
}

/// Digit positions i with p^i ≤ N, i.e. the colors of the Brauer side.
pub fn digit_positions(n: usize, p: u64) -> Vec<usize> {
    (0..)
        .take_while(|&i| p.pow(i as u32) as usize <= n)
        .collect()
}

/// The circle of label p^i over 𝔽_p together with the digit N_i it should equal.
pub fn digit_circle(n: usize, p: u64, i: u32) -> (Scalar, Scalar) {
    let f = Field::fp(p);
    let ev = Evaluator::new(n, f);
    let k = p.pow(i) as usize;
    (
        categorical_dim(&[k], &ev),
        f.from_i64(p_adic_digits(n as u64, p).digit(i as usize) as i64),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_examples() {
        let ev = Evaluator::new(4, Field::q());
        let f = Field::q();
        for k in 0..=4 {
            assert_eq!(categorical_dim(&[k], &ev), f.binom(4, k as i64));
        }
        assert!(categorical_trace(&WebMorphism::zero(&[2], &[2]), &ev)
            .unwrap()
            .is_zero());
        let ms = WebDiagram::generator(Gen::Merge { k: 1, l: 2 }, &[], &[])
            .after(&WebDiagram::generator(Gen::Split { k: 1, l: 2 }, &[], &[]))
            .unwrap();
        let t = categorical_trace(&WebMorphism::from_diagram(ms, f.one()), &ev).unwrap();
        assert_eq!(t, f.from_i64(3 * 4));
        assert!(categorical_trace(
            &WebMorphism::from_diagram(
                WebDiagram::generator(Gen::Merge { k: 1, l: 1 }, &[], &[]),
                f.one()
            ),
            &ev
        )
        .is_err());
        assert_eq!(categorical_dim(&[1, 2], &ev), f.from_i64(24));
        assert_eq!(categorical_dim(&[], &ev), f.one());
    }

    #[test]
    fn closure_trace_is_matrix_trace() {
        let ev = Evaluator::new(3, Field::fp(5));
        for k in [vec![1, 1], vec![1, 2], vec![2, 1, 1]] {
            for d in enumerate_fmf(&k, &k) {
                let closed =
                    categorical_trace(&WebMorphism::from_diagram(d.clone(), ev.field().one()), &ev)
                        .unwrap();
                assert_eq!(closed, ev.evaluate(&d).trace(), "{d}");
            }
        }
    }

    #[test]
    fn ss_examples() {
        // Λ^{p^i} with N_i ≠ 0 survives with End of dimension 1
        let ev = Evaluator::new(4, Field::fp(3));
        assert_eq!(ss_hom_dim(&[1], &[1], &ev), 1);
        assert_eq!(ss_hom_dim(&[3], &[3], &ev), 1);
        // dim Λ² = 6 ≡ 0 (mod 3)
        assert_eq!(ss_hom_dim(&[2], &[2], &ev), 0);
        assert_eq!(ss_hom_dim(&[], &[], &ev), 1);
    }

    #[test]
    fn merge_split_examples() {
        assert!(merge_split_negligibility(1, 2, 1, 3, 4).unwrap());
        assert!(merge_split_negligibility(2, 1, 1, 3, 5).unwrap());
        assert!(merge_split_negligibility(2, 3, 1, 5, 6).unwrap());
        assert!(merge_split_negligibility(1, 1, 1, 3, 4).is_err());
    }

    #[test]
    fn crosscheck_examples() {
        for w in [vec![0, 0], vec![1, 1], vec![]] {
            let r = verlinde_crosscheck(&w, &w, 3, 4).unwrap();
            assert!(r.pass, "{r:?}");
        }
        assert_eq!(verlinde_crosscheck(&[], &[], 3, 4).unwrap().web_rank, 1);
    }

    #[test]
    fn digit_circles() {
        for p in [3, 5] {
            for n in 1..=8 {
                for i in digit_positions(n, p) {
                    let (circle, digit) = digit_circle(n, p, i as u32);
                    assert_eq!(circle, digit, "N={n}, p={p}, i={i}");
                }
            }
        }
    }
}
