//! The so_{2m} side of skew Howe duality on Λ(V⊗ℂ^m), V = ℂ^N.
//!
//! Two realizations of the Chevalley generators are compared: the dot-diagram action on the
//! horizontal basis w^h_S (all signs +1), and the ladder webs evaluated on the vertical basis
//! w^v_S = v_{S_1}⊗…⊗v_{S_m}. Every full-space matrix here is indexed by box masks
//! (cell (r,c) is bit (c−1)N + r−1).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combin::{elements, interleave_mask, BoxSubset, Composition, OWeight};
use crate::evalfun::{exterior_dim, Evaluator};
use crate::exterior::{
    abu_change_of_basis, apply, box_derivation, horizontal_in_vertical, lambda_derivation,
    raising_operators, sigma_matrix, sigma_row, so_n_generators, so_n_matrix, z_vector,
    ExteriorError, LinearCombo,
};
use crate::scalars::{Field, Scalar};
use crate::sparse::{family_rank, SparseMatrix};
use crate::webcat::{enumerate_fmf, ladder, Gen, LadderKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HoweKind {
    E,
    F,
    H,
}

/// X_j^{(a)} for X ∈ {E, F}, or h_j (power ignored). Node m is the e/f node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HoweOp {
    pub kind: HoweKind,
    pub node: usize,
    pub power: usize,
}

impl HoweOp {
    pub fn e(node: usize) -> Self {
        HoweOp {
            kind: HoweKind::E,
            node,
            power: 1,
        }
    }

    pub fn f(node: usize) -> Self {
        HoweOp {
            kind: HoweKind::F,
            node,
            power: 1,
        }
    }

    pub fn h(node: usize) -> Self {
        HoweOp {
            kind: HoweKind::H,
            node,
            power: 1,
        }
    }

    pub fn with_power(self, power: usize) -> Self {
        HoweOp { power, ..self }
    }

    /// The ladder realizing this operator on m strands, if it is not a Cartan element.
    pub fn ladder_step(&self, m: usize) -> Option<(LadderKind, usize, usize)> {
        assert!(
            m >= 2 && (1..=m).contains(&self.node),
            "node {} outside D_{m}",
            self.node
        );
        let last = self.node == m;
        let kind = match (self.kind, last) {
            (HoweKind::H, _) => return None,
            (HoweKind::E, false) => LadderKind::E,
            (HoweKind::F, false) => LadderKind::F,
            (HoweKind::E, true) => LadderKind::LowerE,
            (HoweKind::F, true) => LadderKind::LowerF,
        };
        Some((kind, self.power, if last { m - 1 } else { self.node }))
    }

    /// Every E_j, F_j, h_j of so_{2m} with the given divided power.
    pub fn all(m: usize, power: usize) -> Vec<HoweOp> {
        (1..=m)
            .flat_map(|j| {
                [
                    HoweOp::e(j).with_power(power),
                    HoweOp::f(j).with_power(power),
                    HoweOp::h(j),
                ]
            })
            .collect()
    }
}

impl fmt::Display for HoweOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            HoweKind::E => write!(f, "E_{}^({})", self.node, self.power),
            HoweKind::F => write!(f, "F_{}^({})", self.node, self.power),
            HoweKind::H => write!(f, "h_{}", self.node),
        }
    }
}

/// Column weight after applying `op` to a configuration of weight `k` (None if out of range).
pub fn shifted_weight(op: &HoweOp, k: &[usize], n: usize) -> Option<Vec<usize>> {
    let m = k.len();
    let Some((kind, a, i)) = op.ladder_step(m) else {
        return Some(k.to_vec());
    };
    let (di, dj) = kind.shift(a as i64);
    let mut out = k.to_vec();
    let ni = k[i - 1] as i64 + di;
    let nj = k[i] as i64 + dj;
    if ni < 0 || nj < 0 || ni > n as i64 || nj > n as i64 {
        return None;
    }
    out[i - 1] = ni as usize;
    out[i] = nj as usize;
    Some(out)
}

fn cell(n: usize, r: usize, c: usize) -> u64 {
    1u64 << ((c - 1) * n + r - 1)
}

/// Σ over a-subsets of `rows`, toggling the given cells in each chosen row.
fn row_moves(
    field: Field,
    mask: u64,
    rows: &[usize],
    a: usize,
    toggle: impl Fn(usize) -> u64,
) -> LinearCombo {
    let mut out = LinearCombo::zero(field);
    if a > rows.len() {
        return out;
    }
    let mut pick: Vec<usize> = (0..a).collect();
    loop {
        let t = pick.iter().fold(mask, |acc, &p| acc ^ toggle(rows[p]));
        out.add_term(t, field.one());
        // next a-subset in lexicographic order
        let mut i = a;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pick[i] < rows.len() - a + i {
                pick[i] += 1;
                for q in i + 1..a {
                    pick[q] = pick[q - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The dot-diagram action on w^h_S, with the result in the w^h basis.
pub fn dot_action(op: &HoweOp, s: &BoxSubset, field: Field) -> LinearCombo {
    let (n, m) = (s.n, s.m);
    let mask = s.to_mask();
    let j = op.node;
    assert!(m >= 2 && (1..=m).contains(&j), "node {j} outside D_{m}");
    let has = |r: usize, c: usize| mask & cell(n, r, c) != 0;
    let rows = |pred: &dyn Fn(usize) -> bool| (1..=n).filter(|&r| pred(r)).collect::<Vec<_>>();
    match (op.kind, j == m) {
        (HoweKind::H, _) => {
            let c = s.column_weight().coroot(j);
            let mut out = LinearCombo::zero(field);
            out.add_term(mask, field.from_i64(c));
            out
        }
        // a dot moves from column j+1 to column j
        (HoweKind::E, false) => row_moves(
            field,
            mask,
            &rows(&|r| has(r, j + 1) && !has(r, j)),
            op.power,
            |r| cell(n, r, j) | cell(n, r, j + 1),
        ),
        (HoweKind::F, false) => row_moves(
            field,
            mask,
            &rows(&|r| has(r, j) && !has(r, j + 1)),
            op.power,
            |r| cell(n, r, j) | cell(n, r, j + 1),
        ),
        // a pair of dots appears in / disappears from columns m−1 and m
        (HoweKind::E, true) => row_moves(
            field,
            mask,
            &rows(&|r| !has(r, m - 1) && !has(r, m)),
            op.power,
            |r| cell(n, r, m - 1) | cell(n, r, m),
        ),
        (HoweKind::F, true) => row_moves(
            field,
            mask,
            &rows(&|r| has(r, m - 1) && has(r, m)),
            op.power,
            |r| cell(n, r, m - 1) | cell(n, r, m),
        ),
    }
}

fn parity_sign(field: Field, exp: u32) -> Scalar {
    field.sign(exp % 2 == 1)
}

/// The closed-form single-step ladder action on w^v_S (power 1), in the w^v basis.
pub fn explicit_ladder_action(op: &HoweOp, s: &BoxSubset, field: Field) -> LinearCombo {
    assert_eq!(op.power, 1, "the closed form is for single steps");
    let (n, m) = (s.n, s.m);
    let mut out = LinearCombo::zero(field);
    let Some((kind, _, i)) = op.ladder_step(m) else {
        return dot_action(op, s, field);
    };
    let (a, b) = (s.column(i), s.column(i + 1));
    let shift = |c: usize| (c - 1) * n;
    let rebuild = |na: u64, nb: u64| {
        (s.to_mask() & !(((1u64 << n) - 1) << shift(i)) & !(((1u64 << n) - 1) << shift(i + 1)))
            | na << shift(i)
            | nb << shift(i + 1)
    };
    let sng = |x: usize| 1u64 << (x - 1);
    let l = interleave_mask;
    for x in 1..=n {
        let bit = sng(x);
        let (ina, inb) = (a & bit != 0, b & bit != 0);
        let term = match kind {
            LadderKind::E if inb && !ina => Some((l(a, bit) + l(bit, b & !bit), a | bit, b & !bit)),
            LadderKind::F if ina && !inb => Some((l(a & !bit, bit) + l(bit, b), a & !bit, b | bit)),
            LadderKind::LowerE if !ina && !inb => Some((l(a, bit) + l(bit, b), a | bit, b | bit)),
            LadderKind::LowerF if ina && inb => {
                Some((l(a & !bit, bit) + l(bit, b & !bit), a & !bit, b & !bit))
            }
            _ => None,
        };
        if let Some((exp, na, nb)) = term {
            out.add_term(rebuild(na, nb), parity_sign(field, exp));
        }
    }
    out
}

/// Position of a column configuration inside the Kronecker basis of Λ^K.
pub fn block_index(s: &BoxSubset, ev: &Evaluator) -> usize {
    let k = s.column_weight().entries;
    s.columns().iter().zip(&k).fold(0, |acc, (&c, &kj)| {
        acc * exterior_dim(ev.n(), kj) + ev.index_of(c)
    })
}

/// The box masks of the Kronecker basis of Λ^K, in order.
pub fn block_masks(k: &[usize], ev: &Evaluator) -> Vec<u64> {
    let n = ev.n();
    let mut out = vec![0u64];
    for (j, &kj) in k.iter().enumerate() {
        let basis = ev.basis(kj);
        out = out
            .iter()
            .flat_map(|&p| basis.iter().map(move |&c| p | c << (j * n)))
            .collect();
    }
    out
}

/// The ladder (or Cartan) matrix Λ^K → Λ^{K'} in Kronecker bases. When K' leaves Π_m^{≤N}
/// the target is the zero space and the matrix has no rows.
pub fn ladder_matrix(op: &HoweOp, k: &[usize], ev: &Evaluator) -> SparseMatrix {
    let n = ev.n();
    if shifted_weight(op, k, n).is_none() {
        return SparseMatrix::zero(ev.field(), 0, ev.dim(k));
    }
    match op.ladder_step(k.len()) {
        None => {
            let c = Composition::new(k.to_vec(), n).coroot(op.node);
            SparseMatrix::identity(ev.field(), ev.dim(k)).scale(&ev.field().from_i64(c))
        }
        Some((kind, a, i)) => {
            ev.evaluate(&ladder(kind, a, i, k).expect("target weight is in range"))
        }
    }
}

/// The ladder action on all of Λ(V⊗ℂ^m) in the w^v basis.
pub fn full_ladder_matrix(op: &HoweOp, m: usize, ev: &Evaluator) -> SparseMatrix {
    let n = ev.n();
    let dim = 1usize << (n * m);
    let mut trip = Vec::new();
    for comp in Composition::all(m, n) {
        let k = comp.entries;
        let Some(target) = shifted_weight(op, &k, n) else {
            continue;
        };
        let mat = ladder_matrix(op, &k, ev);
        let (src, dst) = (block_masks(&k, ev), block_masks(&target, ev));
        for (r, c, v) in mat.entries() {
            trip.push((dst[r] as usize, src[c] as usize, v.clone()));
        }
    }
    SparseMatrix::from_triplets(ev.field(), dim, dim, trip)
}

/// The dot-diagram action on all of Λ(V⊗ℂ^m) in the w^h basis.
pub fn full_dot_matrix(op: &HoweOp, n: usize, m: usize, field: Field) -> SparseMatrix {
    let dim = 1usize << (n * m);
    let trip = BoxSubset::all(n, m).flat_map(|s| {
        let col = s.to_mask() as usize;
        dot_action(op, &s, field)
            .iter()
            .map(|(t, c)| (t as usize, col, c.clone()))
            .collect::<Vec<_>>()
    });
    SparseMatrix::from_triplets(field, dim, dim, trip)
}

/// diag(sign(S)) with w^h_S = sign(S)·w^v_S.
pub fn reading_sign_matrix(n: usize, m: usize, field: Field) -> SparseMatrix {
    let dim = 1usize << (n * m);
    SparseMatrix::from_triplets(
        field,
        dim,
        dim,
        BoxSubset::all(n, m).map(|s| {
            (
                s.to_mask() as usize,
                s.to_mask() as usize,
                field.sign(horizontal_in_vertical(&s) < 0),
            )
        }),
    )
}

/// The sign relating the two bases agrees with the inversion count between the two readings.
pub fn sign_identity_holds(n: usize, m: usize) -> bool {
    BoxSubset::all(n, m).all(|s| horizontal_in_vertical(&s) == s.reading_sign())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HoweReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl HoweReport {
    fn new(n: usize, m: usize) -> Self {
        HoweReport {
            n,
            m,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Ladder webs and dot diagrams give the same operators, for divided powers ≤ `max_power`;
/// single steps also match the closed-form signs.
pub fn actions_agree(n: usize, m: usize, max_power: usize, field: Field) -> HoweReport {
    let mut rep = HoweReport::new(n, m);
    if m < 2 {
        return rep;
    }
    let ev = Evaluator::new(n, field);
    let sg = reading_sign_matrix(n, m, field);
    let mut ops: Vec<HoweOp> = (1..=max_power).flat_map(|a| HoweOp::all(m, a)).collect();
    ops.sort();
    ops.dedup();
    for op in ops {
        let lad = full_ladder_matrix(&op, m, &ev);
        let dot = sg.mul(&full_dot_matrix(&op, n, m, field)).mul(&sg);
        rep.record(lad == dot, || {
            format!("{op} differs from its dot action at N={n}, m={m}")
        });
        if op.kind != HoweKind::H && op.power <= n {
            rep.record(!lad.is_zero(), || {
                format!("{op} vanishes identically at N={n}, m={m}")
            });
        }
        if op.power == 1 && op.kind != HoweKind::H {
            let ok = BoxSubset::all(n, m).all(|s| {
                let col = s.to_mask() as usize;
                let got = explicit_ladder_action(&op, &s, field);
                (0..lad.rows).all(|r| lad.get(r, col) == got.coef(r as u64))
            });
            rep.record(ok, || {
                format!("{op} differs from the closed form at N={n}, m={m}")
            });
        }
    }
    rep
}

/// The ladder operators commute with so_N and with σ on Λ(V⊗ℂ^m).
pub fn commutant_check(n: usize, m: usize, field: Field) -> HoweReport {
    let mut rep = HoweReport::new(n, m);
    if m < 2 {
        return rep;
    }
    let ev = Evaluator::new(n, field);
    let mut actors = so_n_generators(n, m, field);
    actors.push(sigma_matrix(n, m, field));
    for op in HoweOp::all(m, 1) {
        let lad = full_ladder_matrix(&op, m, &ev);
        for (g, x) in actors.iter().enumerate() {
            rep.record(lad.commutator(x).is_zero(), || {
                format!("{op} fails to commute with actor {g}")
            });
        }
    }
    rep
}

fn restrict_to_degree(full: &SparseMatrix, k: usize, ev: &Evaluator) -> SparseMatrix {
    let d = exterior_dim(ev.n(), k);
    let trip = full
        .entries()
        .filter(|(r, c, _)| {
            (*r as u64).count_ones() as usize == k && (*c as u64).count_ones() as usize == k
        })
        .map(|(r, c, v)| (ev.index_of(r as u64), ev.index_of(c as u64), v.clone()));
    SparseMatrix::from_triplets(ev.field(), d, d, trip)
}

/// so_N generators (as derivations) and σ on Λ^K in the Kronecker basis.
pub fn group_actors(k: &[usize], ev: &Evaluator) -> Vec<SparseMatrix> {
    let (n, f) = (ev.n(), ev.field());
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let lam = lambda_derivation(&so_n_matrix(a, b, n, f));
            let mut acc = SparseMatrix::zero(f, ev.dim(k), ev.dim(k));
            for j in 0..k.len() {
                let part =
                    restrict_to_degree(&lam, k[j], ev).pad(ev.dim(&k[..j]), ev.dim(&k[j + 1..]));
                acc = acc.add(&part);
            }
            out.push(acc);
        }
    }
    let r = sigma_row(n);
    let masks = block_masks(k, ev);
    let sigma = masks.iter().enumerate().map(|(i, &mask)| {
        let hits = (0..k.len())
            .filter(|&j| mask >> (j * n + r - 1) & 1 == 1)
            .count();
        (i, i, f.sign(hits % 2 == 1))
    });
    out.push(SparseMatrix::from_triplets(f, ev.dim(k), ev.dim(k), sigma));
    out
}

/// dim Hom_{O(N)}(Λ^K, Λ^L), as the kernel of X ↦ B_g X − X A_g over all actors g (char 0).
pub fn hom_commutant_dim(k: &[usize], l: &[usize], ev: &Evaluator) -> usize {
    commutant_nullity(
        &group_actors(k, ev),
        &group_actors(l, ev),
        ev.dim(k),
        ev.dim(l),
        ev.field(),
    )
}

fn nonzero(k: &[usize]) -> Vec<usize> {
    k.iter().copied().filter(|&x| x > 0).collect()
}

/// The rank of the fmf diagrams K → L after evaluation (zero labels dropped).
pub fn fmf_rank(k: &[usize], l: &[usize], ev: &Evaluator) -> usize {
    let (k, l) = (nonzero(k), nonzero(l));
    let dim = ev.dim(&k) * ev.dim(&l);
    if dim == 0 {
        return 0;
    }
    family_rank(
        ev.field(),
        dim,
        enumerate_fmf(&k, &l)
            .iter()
            .map(|d| ev.evaluate(d).flatten()),
    )
}

/// Σ_{K,L ∈ Π_m^{≤N}} dim Hom_{O(N)}(Λ^K, Λ^L).
pub fn commutant_dim(n: usize, m: usize, field: Field) -> usize {
    let ev = Evaluator::new(n, field);
    let all = Composition::all(m, n);
    all.iter()
        .map(|k| {
            all.iter()
                .map(|l| hom_commutant_dim(&k.entries, &l.entries, &ev))
                .sum::<usize>()
        })
        .sum()
}

/// Σ_{K,L ∈ Π_m^{≤N}} rank of the evaluated fmf diagrams K → L.
pub fn fmf_span_dim(n: usize, m: usize, field: Field) -> usize {
    let ev = Evaluator::new(n, field);
    let all = Composition::all(m, n);
    all.iter()
        .map(|k| {
            all.iter()
                .map(|l| fmf_rank(&k.entries, &l.entries, &ev))
                .sum::<usize>()
        })
        .sum()
}

/// gl_N (all E_ab as derivations) on Λ^K in the Kronecker basis.
fn gl_actors(k: &[usize], ev: &Evaluator) -> Vec<SparseMatrix> {
    let (n, f) = (ev.n(), ev.field());
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let unit = SparseMatrix::from_triplets(f, n, n, [(a, b, f.one())]);
            let lam = lambda_derivation(&unit);
            let mut acc = SparseMatrix::zero(f, ev.dim(k), ev.dim(k));
            for j in 0..k.len() {
                acc = acc.add(
                    &restrict_to_degree(&lam, k[j], ev).pad(ev.dim(&k[..j]), ev.dim(&k[j + 1..])),
                );
            }
            out.push(acc);
        }
    }
    out
}

fn commutant_nullity(
    a: &[SparseMatrix],
    b: &[SparseMatrix],
    dk: usize,
    dl: usize,
    f: Field,
) -> usize {
    if dk == 0 || dl == 0 {
        return 0;
    }
    let (ik, il) = (SparseMatrix::identity(f, dk), SparseMatrix::identity(f, dl));
    let parts: Vec<SparseMatrix> = a
        .iter()
        .zip(b)
        .map(|(a, b)| b.kron(&ik).sub(&il.kron(&a.transpose())))
        .collect();
    SparseMatrix::vstack(&parts).nullity()
}

/// dim Hom_{GL_N}(Λ^K, Λ^L) (char 0).
pub fn gl_hom_dim(k: &[usize], l: &[usize], ev: &Evaluator) -> usize {
    commutant_nullity(
        &gl_actors(k, ev),
        &gl_actors(l, ev),
        ev.dim(k),
        ev.dim(l),
        ev.field(),
    )
}

/// Rank of the evaluated type-A fmf diagrams K → L (no cups or caps).
pub fn type_a_fmf_rank(k: &[usize], l: &[usize], ev: &Evaluator) -> usize {
    let (k, l) = (nonzero(k), nonzero(l));
    let dim = ev.dim(&k) * ev.dim(&l);
    if dim == 0 {
        return 0;
    }
    let type_a = enumerate_fmf(&k, &l).into_iter().filter(|d| {
        d.slices()
            .iter()
            .all(|s| !matches!(s.gen, Gen::Cap { .. } | Gen::Cup { .. }))
    });
    family_rank(ev.field(), dim, type_a.map(|d| ev.evaluate(&d).flatten()))
}

/// a!·X^{(a)} = X^a for every ladder X and a ≤ `a_max` with a! invertible.
pub fn divided_power_identity(n: usize, m: usize, a_max: usize, field: Field) -> HoweReport {
    let mut rep = HoweReport::new(n, m);
    let ev = Evaluator::new(n, field);
    for j in 1..=m {
        for base in [HoweOp::e(j), HoweOp::f(j)] {
            let single = full_ladder_matrix(&base, m, &ev);
            let mut power = single.clone();
            let mut fact = field.one();
            for a in 2..=a_max {
                power = single.mul(&power);
                fact = fact.mul(&field.from_i64(a as i64));
                if fact.is_zero() {
                    break;
                }
                let div = full_ladder_matrix(&base.with_power(a), m, &ev);
                rep.record(div.scale(&fact) == power, || {
                    format!("{}! {} ≠ power", a, base.with_power(a))
                });
            }
        }
    }
    rep
}

/// Weyl dimension of the so_{2m} irreducible of highest weight K (None if K is not dominant).
pub fn weyl_dim_d(k: &Composition) -> Option<BigInt> {
    if !k.is_dominant() {
        return None;
    }
    let m = k.m();
    // doubled coordinates: A_i = 2K_i − N, 2ρ_i = 2(m − i)
    let rho: Vec<i64> = (0..m).map(|i| 2 * (m - 1 - i) as i64).collect();
    let a: Vec<i64> = k
        .entries
        .iter()
        .zip(&rho)
        .map(|(&x, r)| 2 * x as i64 - k.n as i64 + r)
        .collect();
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..m {
        for j in i + 1..m {
            num *= BigInt::from((a[i] - a[j]) * (a[i] + a[j]));
            den *= BigInt::from((rho[i] - rho[j]) * (rho[i] + rho[j]));
        }
    }
    debug_assert!((&num % &den).is_zero());
    Some((num / den).abs())
}

/// Σ over dominant K ∈ Π_m^{≤N} of (dim L(K))², the dimension of End_{O(N)}(Λ(V⊗ℂ^m)).
pub fn end_dim_prediction(n: usize, m: usize) -> BigInt {
    Composition::dominant(m, n)
        .iter()
        .map(|k| weyl_dim_d(k).expect("dominant").pow(2))
        .sum()
}

/// z_{S_λ} is killed by every raising operator of so_N and every lowering ladder F_j, f_m.
pub fn z_lambda_is_extremal(
    lambda: &OWeight,
    m: usize,
    field: Field,
) -> Result<bool, ExteriorError> {
    let n = lambda.n;
    let p = abu_change_of_basis(n, field)?;
    let z = z_vector(&p, &lambda.far_right(m));
    if z.is_zero() {
        return Ok(false);
    }
    for r in raising_operators(&p) {
        if !apply(&box_derivation(&lambda_derivation(&r), n, m), &z).is_zero() {
            return Ok(false);
        }
    }
    if m >= 2 {
        let ev = Evaluator::new(n, field);
        for j in 1..=m {
            if !apply(&full_ladder_matrix(&HoweOp::f(j), m, &ev), &z).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The so_{2m} weight of z_{S_λ}, i.e. the column weight of S_λ.
pub fn z_lambda_weight(lambda: &OWeight, m: usize) -> Composition {
    lambda.far_right(m).column_weight()
}

/// Support masks of a vector, for reporting.
pub fn support(v: &LinearCombo) -> Vec<Vec<usize>> {
    v.iter().map(|(s, _)| elements(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;

    fn box_of(n: usize, m: usize, cells: &[(usize, usize)]) -> BoxSubset {
        BoxSubset::new(n, m, cells.iter().copied()).unwrap()
    }

    #[test]
    fn n_one_dot_examples() {
        let f = Field::q();
        let s = box_of(1, 6, &[(1, 1), (1, 5), (1, 6)]);
        let got = dot_action(&HoweOp::f(1), &s, f);
        assert_eq!(
            got,
            LinearCombo::basis(f, box_of(1, 6, &[(1, 2), (1, 5), (1, 6)]).to_mask())
        );
        let got = dot_action(&HoweOp::f(6), &s, f);
        assert_eq!(
            got,
            LinearCombo::basis(f, box_of(1, 6, &[(1, 1)]).to_mask())
        );
        assert!(dot_action(&HoweOp::e(6), &s, f).is_zero());
    }

    #[test]
    fn h_is_the_coroot() {
        let f = Field::q();
        let s = box_of(3, 3, &[(1, 1), (2, 1), (1, 3)]);
        // K = (2,0,1): α_3^∨ = K_2 + K_3 − N = −2
        assert_eq!(
            dot_action(&HoweOp::h(3), &s, f).coef(s.to_mask()),
            f.from_i64(-2)
        );
        assert_eq!(
            dot_action(&HoweOp::h(1), &s, f).coef(s.to_mask()),
            f.from_i64(2)
        );
    }

    #[test]
    fn agreement_small() {
        for (n, m) in [(1, 2), (1, 4), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
            let rep = actions_agree(n, m, 2, Field::q());
            assert!(rep.passed(), "{:?}", rep.failures);
            assert!(sign_identity_holds(n, m));
        }
    }

    #[test]
    fn commutes_with_orthogonal_group() {
        for (n, m) in [(2, 2), (3, 2), (2, 3)] {
            let rep = commutant_check(n, m, Field::fp(5));
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }

    #[test]
    fn ladder_examples() {
        let ev = Evaluator::new(2, Field::q());
        let f = Field::q();
        assert!(ladder_matrix(&HoweOp::e(1), &[1, 0], &ev).is_zero());
        let e = ladder_matrix(&HoweOp::e(2), &[0, 0], &ev);
        let masks = block_masks(&[1, 1], &ev);
        let hit: Vec<u64> = (0..e.rows)
            .filter(|&r| !e.get(r, 0).is_zero())
            .map(|r| masks[r])
            .collect();
        // w_∅ ↦ w_{(1,1),(1,2)} + w_{(2,1),(2,2)}
        assert_eq!(
            hit,
            vec![
                box_of(2, 2, &[(1, 1), (1, 2)]).to_mask(),
                box_of(2, 2, &[(2, 1), (2, 2)]).to_mask()
            ]
        );
        assert!((0..e.rows).all(|r| e.get(r, 0).is_zero() || e.get(r, 0) == f.one()));
        let fe = ladder_matrix(&HoweOp::f(2), &[1, 1], &ev).mul(&e);
        assert_eq!(fe, SparseMatrix::identity(f, 1).scale(&f.from_i64(2)));
    }

    #[test]
    fn divided_powers() {
        for field in [Field::q(), Field::fp(3)] {
            let rep = divided_power_identity(2, 3, 3, field);
            assert!(rep.passed(), "{:?}", rep.failures);
            assert!(rep.checked > 0);
        }
    }

    #[test]
    fn type_a_is_faithful() {
        let ev = Evaluator::new(2, Field::q());
        for (k, l) in [
            (vec![1, 1], vec![1, 1]),
            (vec![2], vec![1, 1]),
            (vec![1, 2], vec![2, 1]),
        ] {
            assert_eq!(type_a_fmf_rank(&k, &l, &ev), gl_hom_dim(&k, &l, &ev));
        }
        assert_eq!(gl_hom_dim(&[1, 1], &[1, 1], &ev), 2);
        assert_eq!(hom_commutant_dim(&[1, 1], &[], &ev), 1);
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(end_dim_prediction(1, 2), BigInt::from(8));
        assert_eq!(end_dim_prediction(2, 2), BigInt::from(35));
        for m in 1..=5 {
            let total: BigInt = Composition::dominant(m, 1)
                .iter()
                .map(|k| weyl_dim_d(k).unwrap())
                .sum();
            assert_eq!(total, BigInt::from(1u64 << m));
        }
        // the vector representation of so_8: K − N/2 = ε_1 at N = 2
        assert_eq!(
            weyl_dim_d(&Composition::new(vec![2, 1, 1, 1], 2)),
            Some(BigInt::from(8))
        );
        assert_eq!(weyl_dim_d(&Composition::new(vec![0, 2], 2)), None);
    }

    #[test]
    fn commutant_matches_prediction_and_fmf() {
        for (n, m) in [(1, 2), (2, 2), (1, 3)] {
            let c = commutant_dim(n, m, Field::q());
            assert_eq!(BigInt::from(c), end_dim_prediction(n, m), "N={n}, m={m}");
            assert_eq!(fmf_span_dim(n, m, Field::q()), c);
        }
    }

    #[test]
    fn z_lambda_extremal() {
        let f = FieldSpec::QI.field().unwrap();
        for (n, m) in [(2, 2), (3, 2), (2, 3), (4, 2)] {
            for lam in OWeight::in_box(n, m) {
                assert!(
                    z_lambda_is_extremal(&lam, m, f).unwrap(),
                    "λ = {lam}, N={n}, m={m}"
                );
                assert!(z_lambda_weight(&lam, m).is_antidominant());
            }
        }
    }
}
