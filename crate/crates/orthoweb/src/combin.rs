//! Subsets, box diagrams, weight encodings, orders, and p-adic digits.
//!
//! Subsets of `[1,N]` are passed around as bitmasks (bit `i-1` for element `i`).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinError {
    #[error("sets overlap")]
    Overlap,
    #[error("cell ({0},{1}) outside the box")]
    CellOutOfBox(usize, usize),
    #[error("duplicate cell ({0},{1})")]
    DuplicateCell(usize, usize),
    #[error("not a partition: {0:?}")]
    NotPartition(Vec<usize>),
    #[error("{0:?} is not a dominant O({1}) weight")]
    NotOWeight(Vec<usize>, usize),
    #[error("{0:?} does not fit an {1}x{2} box")]
    DoesNotFit(Vec<usize>, usize, usize),
    #[error("composition {0:?} is not dominant")]
    NotDominant(Vec<usize>),
}

pub fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &i| m | (1u64 << (i - 1)))
}

pub fn elements(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// ℓ(T,U) for masks: the number of pairs t ∈ T, u ∈ U with t > u.
pub fn interleave_mask(t: u64, u: u64) -> u32 {
    let mut n = 0;
    let mut rest = u;
    while rest != 0 {
        let b = rest.trailing_zeros();
        n += (t >> b >> 1).count_ones();
        rest &= rest - 1;
    }
    n
}

/// Inversions of the shuffle sorting the concatenation `T·U`.
pub fn interleave_length(t: &[usize], u: &[usize]) -> Result<u32, CombinError> {
    let (mt, mu) = (mask_of(t), mask_of(u));
    if mt & mu != 0 {
        return Err(CombinError::Overlap);
    }
    Ok(interleave_mask(mt, mu))
}

/// Masks of `[1,n]` with exactly `k` elements, in increasing numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut s: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while s < limit {
        out.push(s);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// A subset of the N×m box; `cells` are (row, col), kept in column-reading order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxSubset {
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    pub cells: Vec<(usize, usize)>,
}

impl BoxSubset {
    pub fn new(
        n: usize,
        m: usize,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, CombinError> {
        let mut seen = BTreeSet::new();
        for (r, c) in cells {
            if r == 0 || c == 0 || r > n || c > m {
                return Err(CombinError::CellOutOfBox(r, c));
            }
            if !seen.insert((c, r)) {
                return Err(CombinError::DuplicateCell(r, c));
            }
        }
        Ok(BoxSubset {
            n,
            m,
            cells: seen.into_iter().map(|(c, r)| (r, c)).collect(),
        })
    }

    pub fn empty(n: usize, m: usize) -> Self {
        BoxSubset {
            n,
            m,
            cells: Vec::new(),
        }
    }

    pub fn full(n: usize, m: usize) -> Self {
        BoxSubset {
            n,
            m,
            cells: (1..=m).flat_map(|c| (1..=n).map(move |r| (r, c))).collect(),
        }
    }

    /// Bit `(col-1)·N + (row-1)`; numeric order of these masks is the global basis order.
    pub fn to_mask(&self) -> u64 {
        self.cells
            .iter()
            .fold(0, |acc, &(r, c)| acc | 1u64 << ((c - 1) * self.n + r - 1))
    }

    pub fn from_mask(n: usize, m: usize, mask: u64) -> Self {
        let cells = (0..n * m)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (b % n + 1, b / n + 1))
            .collect();
        BoxSubset { n, m, cells }
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.cells
            .binary_search_by(|&(r2, c2)| (c2, r2).cmp(&(c, r)))
            .is_ok()
    }

    /// S_j as a row mask.
    pub fn column(&self, j: usize) -> u64 {
        self.cells
            .iter()
            .filter(|&&(_, c)| c == j)
            .fold(0, |a, &(r, _)| a | 1u64 << (r - 1))
    }

    /// _iS as a column mask.
    pub fn row(&self, i: usize) -> u64 {
        self.cells
            .iter()
            .filter(|&&(r, _)| r == i)
            .fold(0, |a, &(_, c)| a | 1u64 << (c - 1))
    }

    pub fn columns(&self) -> Vec<u64> {
        (1..=self.m).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<u64> {
        (1..=self.n).map(|i| self.row(i)).collect()
    }

    pub fn from_columns(n: usize, cols: &[u64]) -> Self {
        let cells = cols
            .iter()
            .enumerate()
            .flat_map(|(j, &s)| elements(s).into_iter().map(move |r| (r, j + 1)))
            .collect();
        BoxSubset {
            n,
            m: cols.len(),
            cells,
        }
    }

    pub fn from_rows(m: usize, rows: &[u64]) -> Self {
        let n = rows.len();
        let cells = rows
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| elements(s).into_iter().map(move |c| (i + 1, c)));
        BoxSubset::new(n, m, cells).expect("rows fit the box")
    }

    /// Cells in row-reading order.
    pub fn row_reading(&self) -> Vec<(usize, usize)> {
        let mut v = self.cells.clone();
        v.sort();
        v
    }

    pub fn column_weight(&self) -> Composition {
        Composition::new(
            (1..=self.m)
                .map(|j| self.column(j).count_ones() as usize)
                .collect(),
            self.n,
        )
    }

    /// d_j(S) = |S_j| − (N − |S_j|).
    pub fn d(&self, j: usize) -> i64 {
        2 * self.column(j).count_ones() as i64 - self.n as i64
    }

    /// Number of pairs ordered one way by the row reading and the other way by the column reading.
    pub fn reading_inversions(&self) -> usize {
        let mut n = 0;
        for (a, &(r1, c1)) in self.cells.iter().enumerate() {
            for &(r2, c2) in &self.cells[a + 1..] {
                // c1 <= c2 here; inverted iff strictly later column sits in an earlier row
                if c1 < c2 && r2 < r1 {
                    n += 1;
                }
            }
        }
        n
    }

    /// ±1 relating w^h_S and w^v_S.
    pub fn reading_sign(&self) -> i64 {
        if self.reading_inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn all(n: usize, m: usize) -> impl Iterator<Item = BoxSubset> {
        (0..1u64 << (n * m)).map(move |mask| BoxSubset::from_mask(n, m, mask))
    }
}

/// The K of Λ^K, together with its bound N.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    pub entries: Vec<usize>,
    #[serde(rename = "N")]
    pub n: usize,
}

impl Composition {
    pub fn new(entries: Vec<usize>, n: usize) -> Self {
        Composition { entries, n }
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn fits(&self) -> bool {
        self.entries.iter().all(|&k| k <= self.n)
    }

    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn to_so_weight(&self) -> SOWeight {
        SOWeight {
            halves: self
                .entries
                .iter()
                .map(|&k| 2 * k as i64 - self.n as i64)
                .collect(),
        }
    }

    pub fn from_so_weight(w: &SOWeight, n: usize) -> Option<Self> {
        let mut e = Vec::with_capacity(w.halves.len());
        for &a in &w.halves {
            let t = a + n as i64;
            if t < 0 || t % 2 != 0 || t > 2 * n as i64 {
                return None;
            }
            e.push((t / 2) as usize);
        }
        Some(Composition::new(e, n))
    }

    pub fn is_dominant(&self) -> bool {
        self.to_so_weight().is_dominant()
    }

    pub fn is_antidominant(&self) -> bool {
        self.to_so_weight().is_antidominant()
    }

    /// α_j^∨ for the so_{2m} node j (1-based; j = m is the fishtail).
    pub fn coroot(&self, j: usize) -> i64 {
        let m = self.m();
        let k = |i: usize| self.entries[i - 1] as i64;
        if j < m {
            k(j) - k(j + 1)
        } else {
            k(m - 1) + k(m) - self.n as i64
        }
    }

    /// The partition order: Y(a) strictly dominated by Y(b).
    pub fn partition_less(&self, other: &Composition) -> bool {
        let (y1, y2) = (self.to_so_weight().young(), other.to_so_weight().young());
        y1 != y2 && dominates(&y2, &y1)
    }

    /// Π_m^{≤N} in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; m];
        loop {
            out.push(Composition::new(cur.clone(), n));
            let mut i = m;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < n {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Π_{m,+}^{≤N}.
    pub fn dominant(m: usize, n: usize) -> Vec<Composition> {
        Composition::all(m, n)
            .into_iter()
            .filter(|k| k.is_dominant())
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// An so_{2m} weight Σ A_i ε_i / 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SOWeight {
    pub halves: Vec<i64>,
}

impl SOWeight {
    pub fn is_dominant(&self) -> bool {
        let a = &self.halves;
        let m = a.len();
        if m <= 1 {
            return true;
        }
        a.windows(2).take(m - 2).all(|w| w[0] >= w[1]) && a[m - 2] >= a[m - 1].abs()
    }

    pub fn is_antidominant(&self) -> bool {
        SOWeight {
            halves: self.halves.iter().map(|x| -x).collect(),
        }
        .is_dominant()
    }

    /// Y(a): row i has ⌊|A_i|/2⌋ boxes.
    pub fn young(&self) -> Vec<usize> {
        trim(
            self.halves
                .iter()
                .map(|a| (a.unsigned_abs() / 2) as usize)
                .collect(),
        )
    }

    /// ε(a): the sign of the last coordinate, 0 if it vanishes.
    pub fn epsilon(&self) -> i8 {
        self.halves.last().map_or(0, |&a| a.signum() as i8)
    }
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn is_partition(p: &[usize]) -> bool {
    p.windows(2).all(|w| w[0] >= w[1])
}

pub fn transpose(p: &[usize]) -> Vec<usize> {
    let len = p.first().copied().unwrap_or(0);
    (1..=len)
        .map(|c| p.iter().filter(|&&x| x >= c).count())
        .collect()
}

/// Y ⊴ Y′ in the sense that every partial sum of `small` is at most that of `big`.
pub fn dominates(big: &[usize], small: &[usize]) -> bool {
    let len = big.len().max(small.len());
    let (mut sb, mut ss) = (0usize, 0usize);
    for i in 0..len {
        sb += big.get(i).copied().unwrap_or(0);
        ss += small.get(i).copied().unwrap_or(0);
        if ss > sb {
            return false;
        }
    }
    true
}

/// Y ⊴ Y′.
pub fn dominance_partition(y: &[usize], y2: &[usize]) -> bool {
    dominates(y2, y)
}

/// Complement inside a `rows × cols` box followed by transpose.
pub fn complement_transpose(y: &[usize], rows: usize, cols: usize) -> Vec<usize> {
    let comp: Vec<usize> = (0..rows)
        .map(|r| cols - y.get(rows - 1 - r).copied().unwrap_or(0))
        .collect();
    transpose(&trim(comp))
}

/// All partitions inside a `rows × cols` box, lexicographically.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Vec<usize>> {
    fn rec(rows: usize, maxpart: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(trim(cur.clone()));
        if cur.len() == rows {
            return;
        }
        for x in 1..=maxpart {
            cur.push(x);
            rec(rows, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    partitions_in_box(n, n)
        .into_iter()
        .filter(|p| p.iter().sum::<usize>() == n)
        .collect()
}

/// Dominant O(N) weight λ with (λ^T)_1 + (λ^T)_2 ≤ N; ε is derived on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OWeight {
    pub partition: Vec<usize>,
    pub epsilon: i8,
    #[serde(rename = "N")]
    pub n: usize,
}

impl OWeight {
    pub fn new(partition: Vec<usize>, n: usize) -> Result<Self, CombinError> {
        let p = trim(partition);
        if !is_partition(&p) {
            return Err(CombinError::NotPartition(p));
        }
        let t = transpose(&p);
        let c1 = t.first().copied().unwrap_or(0);
        let c2 = t.get(1).copied().unwrap_or(0);
        if c1 + c2 > n {
            return Err(CombinError::NotOWeight(p, n));
        }
        let rank = n / 2;
        let epsilon = if n % 2 == 1 {
            if c1 <= rank {
                1
            } else {
                -1
            }
        } else if c1 < rank {
            1
        } else if c1 > rank {
            -1
        } else {
            0
        };
        Ok(OWeight {
            partition: p,
            epsilon,
            n,
        })
    }

    /// Rank of SO(N).
    pub fn rank(&self) -> usize {
        self.n / 2
    }

    pub fn twist(&self) -> OWeight {
        OWeight::new(
            twist(&self.partition, self.n).expect("valid weight"),
            self.n,
        )
        .expect("twist stays dominant")
    }

    /// The SO(N) weight a (length ⌊N/2⌋) of the pair (a, ε).
    pub fn so_weight(&self) -> Vec<i64> {
        let base = if self.epsilon == -1 {
            twist(&self.partition, self.n).unwrap()
        } else {
            self.partition.clone()
        };
        (0..self.rank())
            .map(|i| base.get(i).copied().unwrap_or(0) as i64)
            .collect()
    }

    /// Y(a) as a partition with at most ⌊N/2⌋ rows.
    pub fn young(&self) -> Vec<usize> {
        trim(
            self.so_weight()
                .iter()
                .map(|x| x.unsigned_abs() as usize)
                .collect(),
        )
    }

    /// λ <_{O(N)} μ.
    pub fn o_less(&self, other: &OWeight) -> bool {
        o_order(self, other)
    }

    /// The partition order λ < μ ⇔ Y(a) ◁ Y(b).
    pub fn partition_less(&self, other: &OWeight) -> bool {
        let (y1, y2) = (self.young(), other.young());
        y1 != y2 && dominates(&y2, &y1)
    }

    /// Λ_{+,≤m}^{O(N)}: dominant weights whose diagram fits N rows by m columns.
    pub fn in_box(n: usize, m: usize) -> Vec<OWeight> {
        partitions_in_box(n, m)
            .into_iter()
            .filter_map(|p| OWeight::new(p, n).ok())
            .collect()
    }

    /// λ† via complement-transpose, with ε negated for odd m.
    pub fn dagger(&self, m: usize) -> Result<Composition, CombinError> {
        if self.partition.first().copied().unwrap_or(0) > m {
            return Err(CombinError::DoesNotFit(self.partition.clone(), self.n, m));
        }
        let rank = self.rank();
        let y = self.young();
        let yct = complement_transpose(&y, rank, m);
        let eps = if m.is_multiple_of(2) {
            self.epsilon
        } else {
            -self.epsilon
        } as i64;
        let par = (self.n % 2) as i64;
        let mut halves: Vec<i64> = (0..m)
            .map(|i| 2 * yct.get(i).copied().unwrap_or(0) as i64 + par)
            .collect();
        if let Some(last) = halves.last_mut() {
            // ε' = 0 only happens together with a vanishing last coordinate
            *last *= if *last == 0 { 1 } else { eps };
        }
        Composition::from_so_weight(&SOWeight { halves }, self.n)
            .ok_or_else(|| CombinError::DoesNotFit(self.partition.clone(), self.n, m))
    }

    /// S_λ: λ_i dots in row i, pushed to the right.
    pub fn far_right(&self, m: usize) -> BoxSubset {
        let cells = self
            .partition
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (m - l + 1..=m).map(move |c| (i + 1, c)));
        BoxSubset::new(self.n, m, cells).expect("λ fits the box")
    }

    /// λ† computed from the column weight of S_λ by applying w_0 (the oracle for `dagger`).
    pub fn dagger_via_far_right(&self, m: usize) -> Composition {
        let k = self.far_right(m).column_weight();
        let n = self.n;
        let entries = k
            .entries
            .iter()
            .enumerate()
            .map(|(j, &x)| if m % 2 == 1 && j == m - 1 { x } else { n - x })
            .collect();
        Composition::new(entries, n)
    }
}

impl fmt::Display for OWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.partition.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// λ^tw: the first column replaced by N − (λ^T)_1 boxes.
pub fn twist(lambda: &[usize], n: usize) -> Result<Vec<usize>, CombinError> {
    let w = OWeight::new(lambda.to_vec(), n)?;
    let mut t = transpose(&w.partition);
    let c1 = t.first().copied().unwrap_or(0);
    if t.is_empty() {
        t.push(n);
    } else {
        t[0] = n - c1;
    }
    let t = trim(t);
    // a first column shorter than the second cannot happen for dominant weights
    Ok(transpose(&t))
}

/// b ≤ a in the dominance order of X(so_N): a − b is a Z≥0 combination of simple roots.
pub fn so_leq(b: &[i64], a: &[i64], n: usize) -> bool {
    let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let rank = d.len();
    let s: Vec<i64> = d
        .iter()
        .scan(0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    if rank == 0 {
        return true;
    }
    if n % 2 == 1 {
        s.iter().all(|&x| x >= 0)
    } else if rank == 1 {
        d[0] == 0
    } else {
        s[..rank - 2].iter().all(|&x| x >= 0)
            && s[rank - 1] >= 0
            && s[rank - 1] % 2 == 0
            && 2 * s[rank - 2] >= s[rank - 1]
    }
}

pub fn so_less(b: &[i64], a: &[i64], n: usize) -> bool {
    b != a && so_leq(b, a, n)
}

fn sigma_weight(a: &[i64], n: usize) -> Vec<i64> {
    let mut v = a.to_vec();
    if n.is_multiple_of(2) {
        if let Some(x) = v.last_mut() {
            *x = -*x;
        }
    }
    v
}

/// μ <_{O(N)} λ iff b < a or σ(b) < a.
pub fn o_order(mu: &OWeight, lambda: &OWeight) -> bool {
    let (b, a) = (mu.so_weight(), lambda.so_weight());
    let n = mu.n;
    so_less(&b, &a, n) || so_less(&sigma_weight(&b, n), &a, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PAdicDigits {
    pub base: u64,
    pub digits: Vec<u64>,
}

impl PAdicDigits {
    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.base + d)
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }
}

pub fn p_adic_digits(mut n: u64, p: u64) -> PAdicDigits {
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    PAdicDigits { base: p, digits }
}

/// x ≤_p y: digitwise comparison of base-p expansions.
pub fn leq_p(x: u64, y: u64, p: u64) -> bool {
    let (dx, dy) = (p_adic_digits(x, p), p_adic_digits(y, p));
    (0..dx.digits.len()).all(|i| dx.digit(i) <= dy.digit(i))
}
