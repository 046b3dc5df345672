//! Exact sparse matrices over a [`Field`], stored row-wise with sorted column indices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalars::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

#[derive(Serialize)]
pub struct Triplets {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, Scalar)>,
}

impl SparseMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let one = field.one();
        SparseMatrix {
            field,
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, one.clone())]).collect(),
        }
    }

    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(
                r < rows && c < cols,
                "entry ({r},{c}) outside {rows}x{cols}"
            );
            let slot = acc[r].entry(c).or_insert_with(|| field.zero());
            *slot += &v;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_dense(field: Field, dense: &[Vec<Scalar>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let data = dense
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn triplets(&self) -> Triplets {
        Triplets {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries().map(|(r, c, v)| (r, c, v.clone())).collect(),
        }
    }

    /// `self · other`
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: Vec<Option<Scalar>> = vec![None; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let t = a.mul(b);
                    match &mut acc[*j] {
                        Some(s) => *s += &t,
                        slot @ None => {
                            *slot = Some(t);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for j in touched.drain(..) {
                let v = acc[j].take().unwrap();
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            data.push(out);
        }
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut s = self.field.zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        s += &a.mul(&v[*c]);
                    }
                }
                s
            })
            .collect()
    }

    fn combine(&self, other: &SparseMatrix, sign: bool) -> SparseMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "dimension mismatch in sum"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                        out.push(a[i].clone());
                        i += 1;
                    } else if i == a.len() || b[j].0 < a[i].0 {
                        out.push((b[j].0, if sign { b[j].1.neg() } else { b[j].1.clone() }));
                        j += 1;
                    } else {
                        let v = if sign {
                            a[i].1.sub(&b[j].1)
                        } else {
                            a[i].1.add(&b[j].1)
                        };
                        if !v.is_zero() {
                            out.push((a[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, true)
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zero(self.field, self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(c, v)| (*c, v.mul(s))).collect())
            .collect();
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push((r, v.clone()));
        }
        SparseMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Kronecker product with `self` as the slow (left) factor.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut out = Vec::with_capacity(ra.len() * rb.len());
                for (ca, va) in ra {
                    for (cb, vb) in rb {
                        out.push((ca * other.cols + cb, va.mul(vb)));
                    }
                }
                data.push(out);
            }
        }
        SparseMatrix {
            field: self.field,
            rows,
            cols,
            data,
        }
    }

    /// I_left ⊗ self ⊗ I_right, without materializing the identities.
    pub fn pad(&self, left: usize, right: usize) -> SparseMatrix {
        if left == 1 && right == 1 {
            return self.clone();
        }
        let rows = left * self.rows * right;
        let cols = left * self.cols * right;
        let mut data = Vec::with_capacity(rows);
        for a in 0..left {
            for row in &self.data {
                for b in 0..right {
                    data.push(
                        row.iter()
                            .map(|(c, v)| ((a * self.cols + c) * right + b, v.clone()))
                            .collect(),
                    );
                }
            }
        }
        SparseMatrix {
            field: self.field,
            rows,
            cols,
            data,
        }
    }

    pub fn trace(&self) -> Scalar {
        let mut s = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            s += &self.get(i, i);
        }
        s
    }

    /// Row-major flattening, used to treat Hom spaces as vector spaces.
    pub fn flatten(&self) -> SparseVec {
        let mut v = Vec::with_capacity(self.nnz());
        for (r, c, x) in self.entries() {
            v.push((r * self.cols + c, x.clone()));
        }
        v
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field, self.cols);
        for row in &self.data {
            e.insert(row.clone());
        }
        e.rank()
    }

    /// Dimension of the kernel (right null space).
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Stacks matrices with equal column count.
    pub fn vstack(parts: &[SparseMatrix]) -> SparseMatrix {
        let field = parts[0].field;
        let cols = parts[0].cols;
        let mut data = Vec::new();
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend(p.data.iter().cloned());
        }
        SparseMatrix {
            field,
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[SparseMatrix]) -> SparseMatrix {
        let field = parts[0].field;
        let (mut r0, mut c0) = (0, 0);
        let mut trip = Vec::new();
        for p in parts {
            for (r, c, v) in p.entries() {
                trip.push((r0 + r, c0 + c, v.clone()));
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        SparseMatrix::from_triplets(field, r0, c0, trip)
    }

    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).sub(&other.mul(self))
    }
}

pub type SparseVec = Vec<(usize, Scalar)>;

/// Incremental row-echelon basis: reduces each new vector against stored pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    // pivot column -> normalized row (leading coefficient 1)
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            pivots: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Fully reduces `v` against the stored pivots; returns the residue.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut cur: BTreeMap<usize, Scalar> =
            v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        let mut lo = 0usize;
        loop {
            let next = cur
                .range(lo..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, coef)) = next else { break };
            for (j, x) in &self.pivots[&c] {
                let t = coef.mul(x);
                let slot = cur.entry(*j).or_insert_with(|| self.field.zero());
                *slot -= &t;
                if slot.is_zero() {
                    cur.remove(j);
                }
            }
            lo = c + 1;
        }
        cur.into_iter().collect()
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (pc, lead) = r[0].clone();
        let inv = lead.inv().expect("nonzero pivot");
        let row: SparseVec = r.into_iter().map(|(c, x)| (c, x.mul(&inv))).collect();
        // keep the basis fully reduced so `reduce` is a single pass
        let keys: Vec<usize> = self.pivots.keys().copied().collect();
        for k in keys {
            let entry = self.pivots[&k]
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, x)| x.clone());
            if let Some(coef) = entry {
                let old = self.pivots.remove(&k).unwrap();
                let mut m: BTreeMap<usize, Scalar> = old.into_iter().collect();
                for (j, x) in &row {
                    let t = coef.mul(x);
                    let slot = m.entry(*j).or_insert_with(|| self.field.zero());
                    *slot -= &t;
                    if slot.is_zero() {
                        m.remove(j);
                    }
                }
                self.pivots.insert(k, m.into_iter().collect());
            }
        }
        self.pivots.insert(pc, row);
        true
    }
}

/// Rank of a family of vectors (e.g. flattened matrices).
pub fn family_rank(field: Field, dim: usize, family: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new(field, dim);
    for v in family {
        e.insert(v);
    }
    e.rank()
}

/// Indices of a maximal linearly independent subfamily, scanning in order.
pub fn independent_subset(field: Field, dim: usize, family: &[SparseVec]) -> Vec<usize> {
    let mut e = Echelon::new(field, dim);
    family
        .iter()
        .enumerate()
        .filter_map(|(i, v)| if e.insert(v.clone()) { Some(i) } else { None })
        .collect()
}
