//! The presentation functor: web diagrams to exact matrices on Λ^K = Λ^{k_1}⊗…⊗Λ^{k_r}.
//!
//! Λ^k has basis v_S, S ⊆ [1,N] with |S| = k, in increasing mask order; tensor products use
//! the Kronecker order with the first factor most significant. Labels above N give the zero
//! space, so the exterior relation holds automatically.

mod relations;
mod udot;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::combin::{interleave_mask, subsets_of_size};
use crate::scalars::{binom_big, Field, Scalar};
use crate::sparse::SparseMatrix;
use crate::webcat::{Gen, WebDiagram, WebMorphism};

pub use relations::{
    check_relation, instances, relation_sides, run_suite, InstanceReport, Params, RelationId,
};
pub use udot::{check_udot_relations, UdotReport};

/// dim Λ^k = C(N, k).
pub fn exterior_dim(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    usize::try_from(binom_big(n as u64, k as u64)).expect("dimension fits in usize")
}

/// Evaluation at a fixed N over a fixed field, with a shared cache of generator blocks.
pub struct Evaluator {
    n: usize,
    field: Field,
    // position of each mask among the masks of the same size
    index: Vec<usize>,
    cache: Mutex<HashMap<Gen, Arc<SparseMatrix>>>,
    columns: Mutex<HashMap<Gen, Arc<SparseMatrix>>>,
}

impl Evaluator {
    pub fn new(n: usize, field: Field) -> Self {
        assert!(n <= 20, "N = {n} is beyond desk scale");
        let mut index = vec![0; 1 << n];
        for k in 0..=n {
            for (i, s) in subsets_of_size(n, k).into_iter().enumerate() {
                index[s as usize] = i;
            }
        }
        Evaluator {
            n,
            field,
            index,
            cache: Mutex::new(HashMap::new()),
            columns: Mutex::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, labels: &[usize]) -> usize {
        labels.iter().map(|&k| exterior_dim(self.n, k)).product()
    }

    /// Index of v_S inside Λ^{|S|}.
    pub fn index_of(&self, mask: u64) -> usize {
        self.index[mask as usize]
    }

    /// The basis of Λ^k as masks.
    pub fn basis(&self, k: usize) -> Vec<u64> {
        subsets_of_size(self.n, k)
    }

    fn sign(&self, odd: bool) -> Scalar {
        self.field.sign(odd)
    }

    fn build(&self, g: Gen) -> SparseMatrix {
        let f = self.field;
        match g {
            Gen::Merge { k, l } => {
                let dl = exterior_dim(self.n, l);
                let mut t = Vec::new();
                if k + l <= self.n {
                    for a in self.basis(k) {
                        for b in self.basis(l) {
                            if a & b == 0 {
                                let col = self.index_of(a) * dl + self.index_of(b);
                                t.push((
                                    self.index_of(a | b),
                                    col,
                                    self.sign(interleave_mask(a, b) % 2 == 1),
                                ));
                            }
                        }
                    }
                }
                SparseMatrix::from_triplets(f, exterior_dim(self.n, k + l), self.dim(&[k, l]), t)
            }
            Gen::Split { k, l } => self.build(Gen::Merge { k, l }).transpose(),
            Gen::Cross { k, l } => {
                let (dk, dl) = (exterior_dim(self.n, k), exterior_dim(self.n, l));
                let t =
                    (0..dk).flat_map(|i| (0..dl).map(move |j| (j * dk + i, i * dl + j, f.one())));
                SparseMatrix::from_triplets(f, dk * dl, dk * dl, t)
            }
            Gen::Cup { k } => {
                let dk = exterior_dim(self.n, k);
                let s = self.sign((k * k.saturating_sub(1) / 2) % 2 == 1);
                SparseMatrix::from_triplets(
                    f,
                    dk * dk,
                    1,
                    (0..dk).map(|i| (i * dk + i, 0, s.clone())),
                )
            }
            Gen::Cap { k } => self.build(Gen::Cup { k }).transpose(),
        }
    }

    /// The matrix of one generator, without surrounding strands.
    pub fn generator_matrix(&self, g: Gen) -> Arc<SparseMatrix> {
        if let Some(m) = self.cache.lock().unwrap().get(&g) {
            return m.clone();
        }
        let m = Arc::new(self.build(g));
        self.cache.lock().unwrap().entry(g).or_insert(m).clone()
    }

    /// Column i of the generator matrix as row i (the generator transposed).
    fn generator_columns(&self, g: Gen) -> Arc<SparseMatrix> {
        if let Some(m) = self.columns.lock().unwrap().get(&g) {
            return m.clone();
        }
        let m = Arc::new(self.generator_matrix(g).transpose());
        self.columns.lock().unwrap().entry(g).or_insert(m).clone()
    }

    pub fn evaluate(&self, d: &WebDiagram) -> SparseMatrix {
        // each source basis vector is pushed through the slices as a sparse vector, so the
        // (possibly huge) intermediate tensor powers are never padded out as matrices
        let one = self.field.one();
        let mut cols: Vec<HashMap<usize, Scalar>> = (0..self.dim(d.source()))
            .map(|i| HashMap::from([(i, one.clone())]))
            .collect();
        for (s, below) in d.slices().iter().zip(&d.levels()) {
            let width = s.gen.inputs().len();
            let right = self.dim(&below[s.pos + width..]);
            let (din, dout) = (self.dim(&s.gen.inputs()), self.dim(&s.gen.outputs()));
            let g = self.generator_columns(s.gen);
            for col in cols.iter_mut() {
                let mut next: HashMap<usize, Scalar> = HashMap::with_capacity(col.len());
                for (idx, x) in col.drain() {
                    let (l, rest) = (idx / (din * right), idx % (din * right));
                    let (i, r) = (rest / right, rest % right);
                    for (o, y) in g.row(i) {
                        let slot = next
                            .entry((l * dout + o) * right + r)
                            .or_insert_with(|| self.field.zero());
                        *slot += &x.mul(y);
                    }
                }
                next.retain(|_, v| !v.is_zero());
                *col = next;
            }
        }
        let entries = cols
            .into_iter()
            .enumerate()
            .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v)));
        SparseMatrix::from_triplets(
            self.field,
            self.dim(d.target()),
            self.dim(d.source()),
            entries,
        )
    }

    pub fn evaluate_morphism(&self, f: &WebMorphism) -> SparseMatrix {
        let mut acc = SparseMatrix::zero(self.field, self.dim(f.target()), self.dim(f.source()));
        for (d, c) in f.terms() {
            acc = acc.add(&self.evaluate(d).scale(c));
        }
        acc
    }

    /// Σ c_i · evaluate(d_i) for diagrams sharing a boundary of the given dimensions.
    pub fn evaluate_sum(
        &self,
        rows: usize,
        cols: usize,
        terms: &[(Scalar, WebDiagram)],
    ) -> SparseMatrix {
        let mut acc = SparseMatrix::zero(self.field, rows, cols);
        for (c, d) in terms {
            let m = self.evaluate(d);
            assert_eq!(
                (m.rows, m.cols),
                (rows, cols),
                "term {d} has the wrong shape"
            );
            acc = acc.add(&m.scale(c));
        }
        acc
    }
}

/// One generator in the given field, evaluated at N.
pub fn generator_matrix(g: Gen, n: usize, field: Field) -> SparseMatrix {
    Evaluator::new(n, field).build(g)
}

pub fn evaluate(f: &WebMorphism, n: usize, field: Field) -> SparseMatrix {
    Evaluator::new(n, field).evaluate_morphism(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::mask_of;

    fn ev(n: usize) -> Evaluator {
        Evaluator::new(n, Field::q())
    }

    #[test]
    fn merge_split_cup_examples() {
        let e = ev(2);
        let f = Field::q();
        let m = e.generator_matrix(Gen::Merge { k: 1, l: 1 });
        // columns v1⊗v1, v1⊗v2, v2⊗v1, v2⊗v2
        assert_eq!(
            m.to_dense(),
            vec![vec![f.zero(), f.one(), f.from_i64(-1), f.zero()]]
        );
        let cup = e.generator_matrix(Gen::Cup { k: 1 });
        assert_eq!(
            cup.to_dense(),
            vec![vec![f.one()], vec![f.zero()], vec![f.zero()], vec![f.one()]]
        );

        let e3 = ev(3);
        let s = e3.generator_matrix(Gen::Split { k: 1, l: 1 });
        let col = e3.index_of(mask_of(&[1, 3]));
        let v = |i: usize, j: usize| e3.index_of(mask_of(&[i])) * 3 + e3.index_of(mask_of(&[j]));
        assert_eq!(s.get(v(1, 3), col), f.one());
        assert_eq!(s.get(v(3, 1), col), f.from_i64(-1));
        assert_eq!((0..9).filter(|&r| !s.get(r, col).is_zero()).count(), 2);
    }

    #[test]
    fn labels_above_n_vanish() {
        let e = ev(2);
        let d = WebDiagram::generator(Gen::Merge { k: 2, l: 1 }, &[], &[]);
        let m = e.evaluate(&d);
        assert_eq!((m.rows, m.cols), (0, 2));
        let circle = WebDiagram::generator(Gen::Cup { k: 3 }, &[], &[]);
        let closed = WebDiagram::generator(Gen::Cap { k: 3 }, &[], &[])
            .after(&circle)
            .unwrap();
        assert!(e.evaluate(&closed).is_zero());
    }

    #[test]
    fn circles_and_zigzags() {
        for n in 1..=5 {
            let e = ev(n);
            for k in 0..=n {
                let circle = WebDiagram::generator(Gen::Cap { k }, &[], &[])
                    .after(&WebDiagram::generator(Gen::Cup { k }, &[], &[]))
                    .unwrap();
                let m = e.evaluate(&circle);
                assert_eq!(m.get(0, 0), Field::q().binom(n as u64, k as i64));
                let zig = WebDiagram::chain(&[
                    WebDiagram::generator(Gen::Cup { k }, &[k], &[]),
                    WebDiagram::generator(Gen::Cap { k }, &[], &[k]),
                ])
                .unwrap();
                assert_eq!(
                    e.evaluate(&zig),
                    SparseMatrix::identity(Field::q(), exterior_dim(n, k))
                );
            }
        }
    }
}
