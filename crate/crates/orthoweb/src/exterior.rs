//! Exterior algebras Λ(F^m), Λ(V) and Λ(V⊗F^m) on subset bases.
//!
//! Basis vectors are bitmasks. For the box space Λ(V⊗F^m) a cell (row r, column c)
//! is bit `(c-1)·N + (r-1)`, so the positive basis vector of a mask is w^v_S.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::combin::{elements, interleave_mask, BoxSubset};
use crate::scalars::{Field, FieldError, Scalar};
use crate::sparse::SparseMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Finite linear combination of subset basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCombo {
    pub field: Field,
    terms: BTreeMap<u64, Scalar>,
}

impl LinearCombo {
    pub fn zero(field: Field) -> Self {
        LinearCombo {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: Field, mask: u64) -> Self {
        let mut c = LinearCombo::zero(field);
        c.add_term(mask, field.one());
        c
    }

    pub fn add_term(&mut self, mask: u64, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(|| self.field.zero());
        *slot += &coef;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&mut self, other: &LinearCombo) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn scale(&self, s: &Scalar) -> LinearCombo {
        let mut out = LinearCombo::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(*m, c.mul(s));
        }
        out
    }

    pub fn coef(&self, mask: u64) -> Scalar {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Scalar)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); dim];
        for (m, c) in &self.terms {
            v[*m as usize] = c.clone();
        }
        v
    }
}

fn below(s: u64, i: usize) -> u32 {
    (s & ((1u64 << (i - 1)) - 1)).count_ones()
}

/// x_i x_S = (−1)^{|S∩[1,i−1]|} x_{S∪{i}}, or 0 if i ∈ S.
pub fn apply_x(i: usize, v: &LinearCombo) -> LinearCombo {
    let bit = 1u64 << (i - 1);
    let mut out = LinearCombo::zero(v.field);
    for (s, c) in v.iter() {
        if s & bit == 0 {
            let c = if below(s, i) % 2 == 1 {
                c.neg()
            } else {
                c.clone()
            };
            out.add_term(s | bit, c);
        }
    }
    out
}

/// ∂_i x_S = (−1)^{|S∩[1,i−1]|} x_{S∖{i}}, or 0 if i ∉ S.
pub fn apply_del(i: usize, v: &LinearCombo) -> LinearCombo {
    let bit = 1u64 << (i - 1);
    let mut out = LinearCombo::zero(v.field);
    for (s, c) in v.iter() {
        if s & bit != 0 {
            let c = if below(s, i) % 2 == 1 {
                c.neg()
            } else {
                c.clone()
            };
            out.add_term(s & !bit, c);
        }
    }
    out
}

/// x_i∂_j + ∂_j x_i = δ_ij on every basis vector of Λ(F^m).
pub fn leibniz_check(i: usize, j: usize, m: usize, field: Field) -> bool {
    (0..1u64 << m).all(|s| {
        let v = LinearCombo::basis(field, s);
        let mut lhs = apply_x(i, &apply_del(j, &v));
        lhs.add(&apply_del(j, &apply_x(i, &v)));
        let rhs = if i == j { v } else { LinearCombo::zero(field) };
        lhs == rhs
    })
}

/// Product e_a ∧ e_b of two subset basis vectors: sign and union, or None.
pub fn wedge(a: u64, b: u64) -> Option<(bool, u64)> {
    if a & b != 0 {
        None
    } else {
        Some((interleave_mask(a, b) % 2 == 1, a | b))
    }
}

/// Multiplies generators one at a time in the given order: returns (negative?, mask).
pub fn wedge_sequence(bits: &[usize]) -> Option<(bool, u64)> {
    let mut acc = (false, 0u64);
    for &b in bits {
        let (s, m) = wedge(acc.1, 1u64 << b)?;
        acc = (acc.0 ^ s, m);
    }
    Some(acc)
}

fn cell_bit(n: usize, r: usize, c: usize) -> usize {
    (c - 1) * n + r - 1
}

/// w^h_S expressed in the w^v basis, by exterior multiplication in row-reading order.
pub fn horizontal_in_vertical(s: &BoxSubset) -> i64 {
    let bits: Vec<usize> = s
        .row_reading()
        .iter()
        .map(|&(r, c)| cell_bit(s.n, r, c))
        .collect();
    let (neg, mask) = wedge_sequence(&bits).expect("distinct cells");
    debug_assert_eq!(mask, s.to_mask());
    if neg {
        -1
    } else {
        1
    }
}

/// φ_h: the row subsets _1S, …, _NS (as masks of [1,m]).
pub fn phi_h(s: &BoxSubset) -> Vec<u64> {
    s.rows()
}

/// φ_v: the column subsets S_1, …, S_m (as masks of [1,N]).
pub fn phi_v(s: &BoxSubset) -> Vec<u64> {
    s.columns()
}

pub fn phi_h_inverse(m: usize, rows: &[u64]) -> BoxSubset {
    BoxSubset::from_rows(m, rows)
}

pub fn phi_v_inverse(n: usize, cols: &[u64]) -> BoxSubset {
    BoxSubset::from_columns(n, cols)
}

/// The derivation extension of an N×N matrix `g` (in the v-basis) to Λ(V).
pub fn lambda_derivation(g: &SparseMatrix) -> SparseMatrix {
    let n = g.rows;
    let field = g.field;
    let mut trip = Vec::new();
    for s in 0..1u64 << n {
        for t_s in elements(s) {
            // column s of g: entries g[t][s]
            for t in 0..n {
                let coef = g.get(t, t_s - 1);
                if coef.is_zero() {
                    continue;
                }
                let tbit = 1u64 << t;
                let sbit = 1u64 << (t_s - 1);
                if tbit != sbit && s & tbit != 0 {
                    continue;
                }
                let rest = s & !sbit;
                let (lo, hi) = if t + 1 < t_s {
                    (t + 1, t_s)
                } else {
                    (t_s, t + 1)
                };
                // elements of S∖{s} strictly between s and t
                let between = if hi > lo + 1 {
                    (rest >> lo) & ((1u64 << (hi - lo - 1)) - 1)
                } else {
                    0
                };
                let c = if between.count_ones() % 2 == 1 {
                    coef.neg()
                } else {
                    coef
                };
                trip.push(((rest | tbit) as usize, s as usize, c));
            }
        }
    }
    SparseMatrix::from_triplets(field, 1 << n, 1 << n, trip)
}

/// Extends an operator on Λ(V) to Λ(V⊗F^m) ≅ Λ(V)^{⊗m} as a derivation (acting on every column).
pub fn box_derivation(lam: &SparseMatrix, n: usize, m: usize) -> SparseMatrix {
    let d = 1usize << n;
    let mut total: Option<SparseMatrix> = None;
    for j in 0..m {
        // column j occupies bits j·N..(j+1)·N, so more significant columns come later
        let part = lam.pad(1 << (n * (m - 1 - j)), 1 << (n * j));
        debug_assert_eq!(part.rows, d.pow(m as u32));
        total = Some(match total {
            None => part,
            Some(t) => t.add(&part),
        });
    }
    total.unwrap_or_else(|| SparseMatrix::identity(lam.field, 1).scale(&lam.field.zero()))
}

/// Extends an operator on Λ(V) multiplicatively (group-like: acts on every column).
pub fn box_group(lam: &SparseMatrix, m: usize) -> SparseMatrix {
    let mut acc = SparseMatrix::identity(lam.field, 1);
    for _ in 0..m {
        acc = lam.kron(&acc);
    }
    acc
}

/// E_ij − E_ji on V (so v_i ↦ −v_j and v_j ↦ v_i).
pub fn so_n_matrix(i: usize, j: usize, n: usize, field: Field) -> SparseMatrix {
    SparseMatrix::from_triplets(
        field,
        n,
        n,
        [
            (i - 1, j - 1, field.one()),
            (j - 1, i - 1, field.from_i64(-1)),
        ],
    )
}

/// The derivation action of E_ij − E_ji on Λ(V⊗F^m).
pub fn so_n_generator(i: usize, j: usize, n: usize, m: usize, field: Field) -> SparseMatrix {
    box_derivation(&lambda_derivation(&so_n_matrix(i, j, n, field)), n, m)
}

pub fn so_n_generators(n: usize, m: usize, field: Field) -> Vec<SparseMatrix> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(so_n_generator(i, j, n, m, field));
        }
    }
    out
}

/// Index (1-based) of the basis vector negated by σ.
pub fn sigma_row(n: usize) -> usize {
    if n % 2 == 1 {
        n / 2 + 1
    } else {
        n
    }
}

/// σ on V: the reflection negating v_{n+1} (odd N) or v_N (even N).
pub fn sigma_v(n: usize, field: Field) -> SparseMatrix {
    let r = sigma_row(n);
    SparseMatrix::from_triplets(
        field,
        n,
        n,
        (1..=n).map(|i| (i - 1, i - 1, field.sign(i == r))),
    )
}

/// σ acting on Λ(V⊗F^m).
pub fn sigma_matrix(n: usize, m: usize, field: Field) -> SparseMatrix {
    let r = sigma_row(n);
    let dim = 1usize << (n * m);
    let trip = (0..dim).map(|mask| {
        let s = BoxSubset::from_mask(n, m, mask as u64);
        let hits = (1..=m).filter(|&j| s.column(j) >> (r - 1) & 1 == 1).count();
        (mask, mask, field.sign(hits % 2 == 1))
    });
    SparseMatrix::from_triplets(field, dim, dim, trip)
}

/// Columns are the a/b/u vectors in v-coordinates, indexed by row: row r ≤ n holds a_r,
/// the middle row (odd N) holds u, and row r > N−n holds b_{N−r+1}.
pub fn abu_change_of_basis(n: usize, field: Field) -> Result<SparseMatrix, ExteriorError> {
    let i = field.sqrt_minus_one()?;
    let half = field.from_ratio(1, 2);
    let rank = n / 2;
    let mut trip = Vec::new();
    for r in 1..=rank {
        let opp = n - r + 1;
        // a_r = v_r − i·v_opp
        trip.push((r - 1, r - 1, field.one()));
        trip.push((opp - 1, r - 1, i.neg()));
        // b_r = (v_r + i·v_opp)/2, stored in column opp
        trip.push((r - 1, opp - 1, half.clone()));
        trip.push((opp - 1, opp - 1, i.mul(&half)));
    }
    if n % 2 == 1 {
        trip.push((rank, rank, field.one()));
    }
    Ok(SparseMatrix::from_triplets(field, n, n, trip))
}

/// Gram matrix of the symmetric form on the a/b/u vectors.
pub fn abu_gram(p: &SparseMatrix) -> SparseMatrix {
    p.transpose().mul(p)
}

/// Inverse of the a/b/u change of basis; the Gram matrix is the row-reversal permutation.
pub fn abu_inverse(p: &SparseMatrix) -> SparseMatrix {
    let g = abu_gram(p);
    g.mul(&p.transpose())
}

/// The vector c_{i_1} ∧ … ∧ c_{i_k} (increasing rows) of Λ(V) in the v-basis.
pub fn wedge_of_columns(p: &SparseMatrix, rows: u64) -> LinearCombo {
    let field = p.field;
    let mut acc = LinearCombo::basis(field, 0);
    for r in elements(rows) {
        let mut next = LinearCombo::zero(field);
        for (s, c) in acc.iter() {
            for t in 0..p.rows {
                let x = p.get(t, r - 1);
                if x.is_zero() {
                    continue;
                }
                if let Some((neg, u)) = wedge(s, 1u64 << t) {
                    let v = c.mul(&x);
                    next.add_term(u, if neg { v.neg() } else { v });
                }
            }
        }
        acc = next;
    }
    acc
}

/// z_S in the w^v basis of Λ(V⊗F^m), from the a/b/u columns `p`.
pub fn z_vector(p: &SparseMatrix, s: &BoxSubset) -> LinearCombo {
    let field = p.field;
    let n = s.n;
    let mut acc = LinearCombo::basis(field, 0);
    for (j, col) in s.columns().into_iter().enumerate() {
        let w = wedge_of_columns(p, col);
        let mut next = LinearCombo::zero(field);
        for (prefix, c) in acc.iter() {
            for (t, x) in w.iter() {
                // later columns occupy higher bits, so the product is already sorted
                next.add_term(prefix | t << (j * n), c.mul(x));
            }
        }
        acc = next;
    }
    acc
}

/// R_{x,y} = x yᵀ − y xᵀ, an element of so(V) for the identity form.
pub fn rank_two_so(x: &[Scalar], y: &[Scalar], field: Field) -> SparseMatrix {
    let n = x.len();
    let mut trip = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let v = x[r].mul(&y[c]).sub(&y[r].mul(&x[c]));
            trip.push((r, c, v));
        }
    }
    SparseMatrix::from_triplets(field, n, n, trip)
}

/// Positive root vectors of so(V) relative to the a/b/u torus, as matrices on V.
pub fn raising_operators(p: &SparseMatrix) -> Vec<SparseMatrix> {
    let n = p.rows;
    let field = p.field;
    let col = |c: usize| -> Vec<Scalar> { (0..n).map(|r| p.get(r, c)).collect() };
    let rank = n / 2;
    let a = |i: usize| col(i - 1);
    let b = |i: usize| col(n - i);
    let mut out = Vec::new();
    for i in 1..=rank {
        for j in i + 1..=rank {
            out.push(rank_two_so(&a(i), &b(j), field));
            out.push(rank_two_so(&a(i), &a(j), field));
        }
        if n % 2 == 1 {
            out.push(rank_two_so(&a(i), &col(rank), field));
        }
    }
    out
}

pub fn apply(mat: &SparseMatrix, v: &LinearCombo) -> LinearCombo {
    let dense = v.to_dense(mat.cols);
    let w = mat.apply(&dense);
    let mut out = LinearCombo::zero(v.field);
    for (i, c) in w.into_iter().enumerate() {
        out.add_term(i as u64, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_examples() {
        let f = Field::q();
        let e = LinearCombo::basis(f, 0);
        assert_eq!(apply_x(1, &e), LinearCombo::basis(f, 0b1));
        assert!(apply_x(1, &LinearCombo::basis(f, 0b1)).is_zero());
        let mut want = LinearCombo::zero(f);
        want.add_term(0b111, f.from_i64(-1));
        assert_eq!(apply_x(2, &LinearCombo::basis(f, 0b101)), want);
    }

    #[test]
    fn leibniz() {
        let f = Field::q();
        assert!(leibniz_check(1, 1, 2, f));
        assert!(leibniz_check(1, 2, 2, f));
        assert!(leibniz_check(1, 1, 1, f));
    }

    #[test]
    fn worked_reading_example() {
        // rows: {2}, {1,4}, {1,2}, {2}
        let s = BoxSubset::new(4, 4, [(1, 2), (2, 1), (2, 4), (3, 1), (3, 2), (4, 2)]).unwrap();
        assert_eq!(phi_h(&s), vec![0b0010, 0b1001, 0b0011, 0b0010]);
        assert_eq!(phi_v(&s), vec![0b0110, 0b1101, 0, 0b0010]);
        assert_eq!(horizontal_in_vertical(&s), -1);
        assert_eq!(s.reading_sign(), -1);
    }

    #[test]
    fn so_generator_degree_one() {
        let f = Field::q();
        let g = so_n_generator(1, 2, 2, 1, f);
        // v_1 = mask 0b01 ↦ −v_2 = −mask 0b10
        assert_eq!(g.get(0b10, 0b01), f.from_i64(-1));
        assert_eq!(g.get(0b01, 0b10), f.from_i64(1));
        assert!(g.row(0).is_empty());
        assert_eq!(g.get(0b11, 0b11), f.zero());
    }

    #[test]
    fn sigma_involution() {
        let f = Field::q();
        for n in [3, 4] {
            let s = sigma_matrix(n, 2, f);
            assert_eq!(s.mul(&s), SparseMatrix::identity(f, 1 << (2 * n)));
        }
    }

    #[test]
    fn abu_pairings() {
        let f = Field::new(crate::scalars::FieldSpec::QI).unwrap();
        let p = abu_change_of_basis(3, f).unwrap();
        let g = abu_gram(&p);
        for r in 0..3 {
            for c in 0..3 {
                let want = if r + c == 2 { f.one() } else { f.zero() };
                assert_eq!(g.get(r, c), want, "({r},{c})");
            }
        }
        for n in 1..=4 {
            let p = abu_change_of_basis(n, f).unwrap();
            assert_eq!(abu_inverse(&p).mul(&p), SparseMatrix::identity(f, n));
            assert_eq!(p.rank(), n);
        }
        assert!(abu_change_of_basis(2, Field::q()).is_err());
    }
}
