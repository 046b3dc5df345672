//! The relation battery. Each relation instance builds both sides as diagrams (or ladder
//! words) and compares the evaluated matrices entrywise.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{exterior_dim, Evaluator};
use crate::scalars::Scalar;
use crate::sparse::SparseMatrix;
use crate::webcat::{ladder, Gen, LadderKind, Slice, WebDiagram};

macro_rules! relation_ids {
    ($($name:ident),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum RelationId { $($name),* }

        impl RelationId {
            pub const ALL: &'static [RelationId] = &[$(RelationId::$name),*];

            pub fn name(&self) -> &'static str {
                match self { $(RelationId::$name => stringify!($name)),* }
            }
        }
    };
}

relation_ids!(
    Exterior,
    Assoc,
    Coassoc,
    Digon,
    SchurSigned,
    InvSchur,
    SquareSwitch,
    MergeCrossCompat,
    Naturality,
    ReidemeisterI,
    ReidemeisterII,
    ReidemeisterIII,
    ZigZag,
    CircleRemoval,
    Lollipop,
    SidewaysDigon,
    EF1,
    HigherEF,
    EvenOrthEF,
    EvenOrthSerre,
    HigherEvenOrthSerre,
    HigherEvenOrthEF,
    SerreA,
    HigherSerreA,
    HigherEFA,
    DivPower,
);

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let want: String = s
            .chars()
            .filter(|c| c.is_alphanumeric())
            .collect::<String>()
            .to_lowercase();
        RelationId::ALL
            .iter()
            .find(|r| r.name().to_lowercase() == want)
            .copied()
            .ok_or_else(|| format!("unknown relation '{s}'"))
    }
}

/// Labels of one relation instance. `labels` is the object for ladder relations.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Vec::is_empty", rename = "K")]
    pub labels: Vec<usize>,
    #[serde(flatten)]
    pub vals: BTreeMap<String, usize>,
}

impl Params {
    fn of(vals: &[(&str, usize)]) -> Params {
        Params {
            labels: Vec::new(),
            vals: vals.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    fn with_labels(labels: &[usize], vals: &[(&str, usize)]) -> Params {
        Params {
            labels: labels.to_vec(),
            ..Params::of(vals)
        }
    }

    pub fn get(&self, key: &str) -> usize {
        self.vals.get(key).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub id: RelationId,
    pub params: Params,
    #[serde(rename = "N")]
    pub n: usize,
    pub field: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub vacuous: bool,
}

fn gen(g: Gen, left: &[usize], right: &[usize]) -> WebDiagram {
    WebDiagram::generator(g, left, right)
}

fn chain(parts: &[WebDiagram]) -> WebDiagram {
    WebDiagram::chain(parts).expect("relation sides compose")
}

fn raw(source: &[usize], slices: &[(Gen, usize)]) -> WebDiagram {
    let s: Vec<Slice> = slices
        .iter()
        .map(|&(gen, pos)| Slice { gen, pos })
        .collect();
    WebDiagram::from_raw(source.to_vec(), &s).expect("raw relation diagram")
}

type Step = (LadderKind, usize, usize);

/// The ladder word X_1 X_2 … X_r (X_r applied first) on the object `k`; `None` if a label goes negative.
fn word_diagram(k: &[usize], steps: &[Step]) -> Option<WebDiagram> {
    let mut cur = k.to_vec();
    let mut acc = WebDiagram::identity(k);
    for &(kind, a, i) in steps.iter().rev() {
        let d = ladder(kind, a, i, &cur).ok()?;
        let (s0, s1) = kind.shift(a as i64);
        cur[i - 1] = (cur[i - 1] as i64 + s0) as usize;
        cur[i] = (cur[i] as i64 + s1) as usize;
        acc = d.after(&acc).expect("ladders chain");
    }
    Some(acc)
}

pub(super) fn word_target(k: &[usize], steps: &[Step]) -> Vec<i64> {
    let mut cur: Vec<i64> = k.iter().map(|&x| x as i64).collect();
    for &(kind, a, i) in steps {
        let (s0, s1) = kind.shift(a as i64);
        cur[i - 1] += s0;
        cur[i] += s1;
    }
    cur
}

fn dim_signed(ev: &Evaluator, labels: &[i64]) -> usize {
    if labels.iter().any(|&x| x < 0) {
        return 0;
    }
    labels
        .iter()
        .map(|&x| exterior_dim(ev.n(), x as usize))
        .product()
}

/// Σ c · word on `k`, as a matrix.
pub(super) fn eval_words(
    ev: &Evaluator,
    k: &[usize],
    terms: &[(Scalar, Vec<Step>)],
    target: &[i64],
) -> SparseMatrix {
    let rows = dim_signed(ev, target);
    let cols = ev.dim(k);
    let mut acc = SparseMatrix::zero(ev.field(), rows, cols);
    for (c, w) in terms {
        debug_assert_eq!(
            word_target(k, w),
            target,
            "terms of a relation share the target"
        );
        if c.is_zero() {
            continue;
        }
        if let Some(d) = word_diagram(k, w) {
            acc = acc.add(&ev.evaluate(&d).scale(c));
        }
    }
    acc
}

/// Raising / lowering Chevalley generator of so_{2m} at node j (the last node is the cup/cap rung).
pub(super) fn so_step(raise: bool, j: usize, a: usize, m: usize) -> Step {
    match (raise, j < m) {
        (true, true) => (LadderKind::E, a, j),
        (false, true) => (LadderKind::F, a, j),
        (true, false) => (LadderKind::LowerE, a, m - 1),
        (false, false) => (LadderKind::LowerF, a, m - 1),
    }
}

/// Nodes i ≠ j of the D_m diagram joined by an edge.
pub(super) fn so_adjacent(i: usize, j: usize, m: usize) -> bool {
    let (lo, hi) = (i.min(j), i.max(j));
    if hi < m {
        hi == lo + 1
    } else {
        m >= 3 && lo == m - 2
    }
}

/// α_j^∨ evaluated at K.
pub(super) fn so_coroot(k: &[usize], j: usize, n: usize) -> i64 {
    let m = k.len();
    if j < m {
        k[j - 1] as i64 - k[j] as i64
    } else {
        k[m - 2] as i64 + k[m - 1] as i64 - n as i64
    }
}

/// X^{(a)} Y^{(b)} 1_K = Σ_x C(h + a − b, x) Y^{(b−x)} X^{(a−x)} 1_K.
pub(super) fn ef_sides(
    ev: &Evaluator,
    k: &[usize],
    x: impl Fn(usize) -> Step,
    y: impl Fn(usize) -> Step,
    a: usize,
    b: usize,
    h: i64,
) -> (SparseMatrix, SparseMatrix) {
    let f = ev.field();
    let lw = vec![x(a), y(b)];
    let target = word_target(k, &lw);
    let lhs = eval_words(ev, k, &[(f.one(), lw)], &target);
    let terms: Vec<(Scalar, Vec<Step>)> = (0..=a.min(b))
        .map(|t| {
            (
                f.gen_binom(h + a as i64 - b as i64, t as u64),
                vec![y(b - t), x(a - t)],
            )
        })
        .collect();
    let rhs = eval_words(ev, k, &terms, &target);
    (lhs, rhs)
}

/// Σ_{p+r=n} (−1)^r X^{(p)} Y^{(b)} X^{(r)} 1_K, which vanishes for n past the Serre bound.
pub(super) fn serre_sum(
    ev: &Evaluator,
    k: &[usize],
    x: impl Fn(usize) -> Step,
    y: Step,
    n: usize,
) -> SparseMatrix {
    let f = ev.field();
    let terms: Vec<(Scalar, Vec<Step>)> = (0..=n)
        .map(|r| (f.sign(r % 2 == 1), vec![x(n - r), y, x(r)]))
        .collect();
    let target = word_target(k, &terms[0].1);
    eval_words(ev, k, &terms, &target)
}

/// X Y 1_K versus Y X 1_K.
pub(super) fn commute_sides(
    ev: &Evaluator,
    k: &[usize],
    x: Step,
    y: Step,
) -> (SparseMatrix, SparseMatrix) {
    let one = ev.field().one();
    let target = word_target(k, &[x, y]);
    (
        eval_words(ev, k, &[(one.clone(), vec![x, y])], &target),
        eval_words(ev, k, &[(one, vec![y, x])], &target),
    )
}

fn zero_like(m: &SparseMatrix) -> SparseMatrix {
    SparseMatrix::zero(m.field, m.rows, m.cols)
}

/// Both evaluated sides of an instance, or `None` when the labels do not fit the relation.
pub fn relation_sides(
    id: RelationId,
    p: &Params,
    ev: &Evaluator,
) -> Option<(SparseMatrix, SparseMatrix)> {
    use Gen::*;
    let f = ev.field();
    let n = ev.n();
    let (k, l, r, a, b, v) = (
        p.get("k"),
        p.get("l"),
        p.get("r"),
        p.get("a"),
        p.get("b"),
        p.get("v"),
    );
    let e = |d: &WebDiagram| ev.evaluate(d);
    let scaled = |d: &WebDiagram, c: Scalar| ev.evaluate(d).scale(&c);
    let kk = &p.labels;
    Some(match id {
        RelationId::Exterior => {
            if k + l <= n {
                return None;
            }
            let d = if v == 0 {
                gen(Merge { k, l }, &[], &[])
            } else {
                gen(Split { k, l }, &[], &[])
            };
            let m = e(&d);
            (m.clone(), zero_like(&m))
        }
        RelationId::Assoc | RelationId::Coassoc => {
            let lhs = chain(&[
                gen(Merge { k, l }, &[], &[r]),
                gen(Merge { k: k + l, l: r }, &[], &[]),
            ]);
            let rhs = chain(&[
                gen(Merge { k: l, l: r }, &[k], &[]),
                gen(Merge { k, l: l + r }, &[], &[]),
            ]);
            if id == RelationId::Assoc {
                (e(&lhs), e(&rhs))
            } else {
                (e(&lhs.flipped()), e(&rhs.flipped()))
            }
        }
        RelationId::Digon => {
            let d = chain(&[gen(Split { k, l }, &[], &[]), gen(Merge { k, l }, &[], &[])]);
            (
                e(&d),
                SparseMatrix::identity(f, exterior_dim(n, k + l))
                    .scale(&f.binom((k + l) as u64, k as i64)),
            )
        }
        RelationId::SchurSigned => {
            let s = (k + l).checked_sub(r)?;
            let lhs = chain(&[
                gen(Merge { k, l }, &[], &[]),
                gen(Split { k: r, l: s }, &[], &[]),
            ]);
            let mut rhs = zero_like(&e(&lhs));
            for aa in 0..=k {
                for bb in 0..=l {
                    if k - aa + bb != r {
                        continue;
                    }
                    let d = raw(
                        &[k, l],
                        &[
                            (Split { k: k - aa, l: aa }, 0),
                            (Split { k: bb, l: l - bb }, 2),
                            (Cross { k: aa, l: bb }, 1),
                            (Merge { k: k - aa, l: bb }, 0),
                            (Merge { k: aa, l: l - bb }, 1),
                        ],
                    );
                    rhs = rhs.add(&scaled(&d, f.sign(aa * bb % 2 == 1)));
                }
            }
            (e(&lhs), rhs)
        }
        RelationId::InvSchur => {
            let lhs = e(&gen(Cross { k, l }, &[], &[]));
            let terms: Vec<(Scalar, Vec<Step>)> = (k.saturating_sub(l)..=k)
                .map(|bb| {
                    let aa = bb + l - k;
                    (
                        f.sign((k * l + k - bb) % 2 == 1),
                        vec![(LadderKind::E, aa, 1), (LadderKind::F, bb, 1)],
                    )
                })
                .collect();
            let target = [l as i64, k as i64];
            (lhs, eval_words(ev, &[k, l], &terms, &target))
        }
        RelationId::SquareSwitch => {
            let h = kk[0] as i64 - kk[1] as i64;
            ef_sides(
                ev,
                kk,
                |t| (LadderKind::E, t, 1),
                |t| (LadderKind::F, t, 1),
                a,
                b,
                h,
            )
        }
        RelationId::MergeCrossCompat => {
            let sign = f.sign(k * l % 2 == 1);
            if v == 0 {
                let lhs = chain(&[
                    gen(Cross { k, l }, &[], &[]),
                    gen(Merge { k: l, l: k }, &[], &[]),
                ]);
                (e(&lhs), scaled(&gen(Merge { k, l }, &[], &[]), sign))
            } else {
                let lhs = chain(&[gen(Split { k, l }, &[], &[]), gen(Cross { k, l }, &[], &[])]);
                (e(&lhs), scaled(&gen(Split { k: l, l: k }, &[], &[]), sign))
            }
        }
        RelationId::Naturality => {
            let (lhs, rhs) = if v % 2 == 0 {
                // a merge slides through a crossing
                let lhs = chain(&[
                    gen(Merge { k, l }, &[], &[r]),
                    gen(Cross { k: k + l, l: r }, &[], &[]),
                ]);
                let rhs = chain(&[
                    gen(Cross { k: l, l: r }, &[k], &[]),
                    gen(Cross { k, l: r }, &[], &[l]),
                    gen(Merge { k, l }, &[r], &[]),
                ]);
                (lhs, rhs)
            } else {
                // a cap slides through a strand
                let lhs = chain(&[
                    gen(Cross { k: r, l: k }, &[], &[k]),
                    gen(Cross { k: r, l: k }, &[k], &[]),
                    gen(Cap { k }, &[], &[r]),
                ]);
                let rhs = gen(Cap { k }, &[r], &[]);
                (lhs, rhs)
            };
            if v < 2 {
                (e(&lhs), e(&rhs))
            } else {
                (e(&lhs.flipped()), e(&rhs.flipped()))
            }
        }
        RelationId::ReidemeisterI => {
            let d = if v == 0 {
                chain(&[
                    gen(Cup { k }, &[k], &[]),
                    gen(Cross { k, l: k }, &[], &[k]),
                    gen(Cap { k }, &[k], &[]),
                ])
            } else {
                chain(&[
                    gen(Cup { k }, &[], &[k]),
                    gen(Cross { k, l: k }, &[k], &[]),
                    gen(Cap { k }, &[], &[k]),
                ])
            };
            (e(&d), SparseMatrix::identity(f, exterior_dim(n, k)))
        }
        RelationId::ReidemeisterII => {
            let d = chain(&[
                gen(Cross { k, l }, &[], &[]),
                gen(Cross { k: l, l: k }, &[], &[]),
            ]);
            (e(&d), SparseMatrix::identity(f, ev.dim(&[k, l])))
        }
        RelationId::ReidemeisterIII => {
            let lhs = chain(&[
                gen(Cross { k, l }, &[], &[r]),
                gen(Cross { k, l: r }, &[l], &[]),
                gen(Cross { k: l, l: r }, &[], &[k]),
            ]);
            let rhs = chain(&[
                gen(Cross { k: l, l: r }, &[k], &[]),
                gen(Cross { k, l: r }, &[], &[l]),
                gen(Cross { k, l }, &[r], &[]),
            ]);
            (e(&lhs), e(&rhs))
        }
        RelationId::ZigZag => {
            let d = if v == 0 {
                chain(&[gen(Cup { k }, &[k], &[]), gen(Cap { k }, &[], &[k])])
            } else {
                chain(&[gen(Cup { k }, &[], &[k]), gen(Cap { k }, &[k], &[])])
            };
            (e(&d), SparseMatrix::identity(f, exterior_dim(n, k)))
        }
        RelationId::CircleRemoval => {
            let d = chain(&[gen(Cup { k }, &[], &[]), gen(Cap { k }, &[], &[])]);
            (
                e(&d),
                SparseMatrix::identity(f, 1).scale(&f.binom(n as u64, k as i64)),
            )
        }
        RelationId::Lollipop => {
            if a == 0 || 2 * a > k {
                return None;
            }
            let rest = k - 2 * a;
            let d = if v == 0 {
                chain(&[
                    gen(Split { k: k - a, l: a }, &[], &[]),
                    gen(Split { k: rest, l: a }, &[], &[a]),
                    gen(Cap { k: a }, &[rest], &[]),
                ])
            } else {
                chain(&[
                    gen(Split { k: a, l: k - a }, &[], &[]),
                    gen(Split { k: a, l: rest }, &[a], &[]),
                    gen(Cap { k: a }, &[], &[rest]),
                ])
            };
            let m = e(&d);
            (m.clone(), zero_like(&m))
        }
        RelationId::SidewaysDigon => {
            let d = chain(&[
                gen(Cup { k: l }, &[k], &[]),
                gen(Merge { k, l }, &[], &[l]),
                gen(Split { k, l }, &[], &[l]),
                gen(Cap { k: l }, &[k], &[]),
            ]);
            let c = if l + k <= n {
                f.binom((n - k) as u64, l as i64)
            } else {
                f.zero()
            };
            (
                e(&d),
                SparseMatrix::identity(f, exterior_dim(n, k)).scale(&c),
            )
        }
        RelationId::EF1 => {
            let h = so_coroot(kk, 2, n);
            let one = f.one();
            let w = |x: Step, y: Step| vec![x, y];
            let ee = (LadderKind::LowerE, 1, 1);
            let ff = (LadderKind::LowerF, 1, 1);
            let target = word_target(kk, &[ee, ff]);
            let lhs = eval_words(ev, kk, &[(one.clone(), w(ff, ee))], &target);
            let rhs = eval_words(
                ev,
                kk,
                &[(one.clone(), w(ee, ff)), (f.from_i64(-h), vec![])],
                &target,
            );
            (lhs, rhs)
        }
        RelationId::HigherEF => {
            let m = kk.len();
            let h = so_coroot(kk, m, n);
            ef_sides(
                ev,
                kk,
                |t| so_step(true, m, t, m),
                |t| so_step(false, m, t, m),
                a,
                b,
                h,
            )
        }
        RelationId::EvenOrthEF | RelationId::HigherEvenOrthEF => {
            // v = 0: X_i^{(a)} Y_m^{(b)} commute, v = 1: Y_i^{(b)} X_m^{(a)} commute, v = 2: the expansion on node m
            let m = kk.len();
            let i = p.get("i");
            match v {
                0 => commute_sides(ev, kk, so_step(true, i, a, m), so_step(false, m, b, m)),
                1 => commute_sides(ev, kk, so_step(false, i, b, m), so_step(true, m, a, m)),
                _ => ef_sides(
                    ev,
                    kk,
                    |t| so_step(true, m, t, m),
                    |t| so_step(false, m, t, m),
                    a,
                    b,
                    so_coroot(kk, m, n),
                ),
            }
        }
        RelationId::EvenOrthSerre
        | RelationId::HigherEvenOrthSerre
        | RelationId::SerreA
        | RelationId::HigherSerreA => {
            // nodes x ≠ y; v = 0 raising, v = 1 lowering
            let m = kk.len();
            let (x, y) = (p.get("x"), p.get("y"));
            let raise = v == 0;
            let type_a = matches!(id, RelationId::SerreA | RelationId::HigherSerreA);
            let step = |j: usize, t: usize| {
                if type_a {
                    (if raise { LadderKind::E } else { LadderKind::F }, t, j)
                } else {
                    so_step(raise, j, t, m)
                }
            };
            let adjacent = if type_a {
                x.abs_diff(y) == 1
            } else {
                so_adjacent(x, y, m)
            };
            let (bb, nn) = if matches!(id, RelationId::EvenOrthSerre | RelationId::SerreA) {
                (1, 2)
            } else {
                (b, p.get("n"))
            };
            if adjacent {
                let s = serre_sum(ev, kk, |t| step(x, t), step(y, bb), nn);
                (s.clone(), zero_like(&s))
            } else {
                commute_sides(ev, kk, step(x, 1), step(y, bb))
            }
        }
        RelationId::HigherEFA => {
            let (i, j) = (p.get("i"), p.get("j"));
            if i == j {
                let h = kk[i - 1] as i64 - kk[i] as i64;
                ef_sides(
                    ev,
                    kk,
                    |t| (LadderKind::E, t, i),
                    |t| (LadderKind::F, t, i),
                    a,
                    b,
                    h,
                )
            } else {
                commute_sides(ev, kk, (LadderKind::E, a, i), (LadderKind::F, b, j))
            }
        }
        RelationId::DivPower => {
            // v = 0: a!·X^{(a)} = X^a, v = 1: X^{(a)} X^{(b)} = C(a+b, a) X^{(a+b)}
            let kind = [
                LadderKind::E,
                LadderKind::F,
                LadderKind::LowerE,
                LadderKind::LowerF,
            ][p.get("kind")];
            let one = f.one();
            if v == 0 {
                let target = word_target(kk, &[(kind, a, 1)]);
                let fact = (1..=a as i64).fold(f.one(), |acc, t| acc.mul(&f.from_i64(t)));
                let lhs = eval_words(ev, kk, &[(fact, vec![(kind, a, 1)])], &target);
                let rhs = eval_words(ev, kk, &[(one, vec![(kind, 1, 1); a])], &target);
                (lhs, rhs)
            } else {
                let target = word_target(kk, &[(kind, a + b, 1)]);
                let lhs = eval_words(ev, kk, &[(one, vec![(kind, a, 1), (kind, b, 1)])], &target);
                let rhs = eval_words(
                    ev,
                    kk,
                    &[(f.binom((a + b) as u64, a as i64), vec![(kind, a + b, 1)])],
                    &target,
                );
                (lhs, rhs)
            }
        }
    })
}

/// True iff both sides agree; unsatisfiable label arithmetic is vacuously true.
pub fn check_relation(id: RelationId, p: &Params, ev: &Evaluator) -> bool {
    match relation_sides(id, p, ev) {
        Some((l, r)) => l == r,
        None => {
            log::warn!(
                "{id} has no instance at {}",
                serde_json::to_string(p).unwrap_or_default()
            );
            true
        }
    }
}

fn objects(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| (0..=n).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// Ranks of the ladder-word relations: 2 or 3 strands, 4 only for far commutation.
fn serre_ranks(n: usize) -> Vec<usize> {
    if n <= 3 {
        vec![2, 3, 4]
    } else {
        vec![2, 3]
    }
}

/// Every instance of `id` with labels ≤ N (divided powers ≤ 2 for the Serre families).
pub fn instances(id: RelationId, n: usize) -> Vec<Params> {
    let mut out = Vec::new();
    let r1 = 1..=n;
    match id {
        RelationId::Exterior => {
            for k in r1.clone() {
                for l in r1.clone() {
                    if k + l > n {
                        for v in 0..2 {
                            out.push(Params::of(&[("k", k), ("l", l), ("v", v)]));
                        }
                    }
                }
            }
        }
        RelationId::Assoc | RelationId::Coassoc => {
            for k in r1.clone() {
                for l in r1.clone() {
                    for r in r1.clone() {
                        if k + l + r <= n {
                            out.push(Params::of(&[("k", k), ("l", l), ("r", r)]));
                        }
                    }
                }
            }
        }
        RelationId::Digon | RelationId::MergeCrossCompat => {
            for k in r1.clone() {
                for l in r1.clone() {
                    if k + l <= n {
                        if id == RelationId::Digon {
                            out.push(Params::of(&[("k", k), ("l", l)]));
                        } else {
                            for v in 0..2 {
                                out.push(Params::of(&[("k", k), ("l", l), ("v", v)]));
                            }
                        }
                    }
                }
            }
        }
        RelationId::SchurSigned => {
            for k in r1.clone() {
                for l in r1.clone() {
                    for r in 1..k + l {
                        if k + l <= n {
                            out.push(Params::of(&[("k", k), ("l", l), ("r", r)]));
                        }
                    }
                }
            }
        }
        RelationId::InvSchur | RelationId::ReidemeisterII => {
            for k in r1.clone() {
                for l in r1.clone() {
                    out.push(Params::of(&[("k", k), ("l", l)]));
                }
            }
        }
        RelationId::SidewaysDigon => {
            for k in r1.clone() {
                for l in r1.clone() {
                    out.push(Params::of(&[("k", k), ("l", l)]));
                }
            }
        }
        RelationId::SquareSwitch => {
            for kk in objects(2, n) {
                for a in r1.clone() {
                    for b in r1.clone() {
                        out.push(Params::with_labels(&kk, &[("a", a), ("b", b)]));
                    }
                }
            }
        }
        RelationId::Naturality => {
            for k in r1.clone() {
                for l in r1.clone() {
                    for r in r1.clone() {
                        if k + l <= n {
                            out.push(Params::of(&[("k", k), ("l", l), ("r", r), ("v", 0)]));
                            out.push(Params::of(&[("k", k), ("l", l), ("r", r), ("v", 2)]));
                        }
                    }
                }
                for r in r1.clone() {
                    out.push(Params::of(&[("k", k), ("r", r), ("v", 1)]));
                    out.push(Params::of(&[("k", k), ("r", r), ("v", 3)]));
                }
            }
        }
        RelationId::ReidemeisterI | RelationId::ZigZag => {
            for k in r1.clone() {
                for v in 0..2 {
                    out.push(Params::of(&[("k", k), ("v", v)]));
                }
            }
        }
        RelationId::ReidemeisterIII => {
            for k in r1.clone() {
                for l in r1.clone() {
                    for r in r1.clone() {
                        out.push(Params::of(&[("k", k), ("l", l), ("r", r)]));
                    }
                }
            }
        }
        RelationId::CircleRemoval => {
            for k in 0..=n {
                out.push(Params::of(&[("k", k)]));
            }
        }
        RelationId::Lollipop => {
            for k in r1.clone() {
                for a in 1..=k / 2 {
                    for v in 0..2 {
                        out.push(Params::of(&[("k", k), ("a", a), ("v", v)]));
                    }
                }
            }
        }
        RelationId::EF1 => {
            for kk in objects(2, n) {
                out.push(Params::with_labels(&kk, &[]));
            }
        }
        RelationId::HigherEF => {
            for m in 2..=3 {
                for kk in objects(m, n) {
                    for a in r1.clone() {
                        for b in r1.clone() {
                            if m == 2 || (a <= 2 && b <= 2) {
                                out.push(Params::with_labels(&kk, &[("a", a), ("b", b)]));
                            }
                        }
                    }
                }
            }
        }
        RelationId::EvenOrthEF | RelationId::HigherEvenOrthEF => {
            let amax = if id == RelationId::EvenOrthEF { 1 } else { 2 };
            for m in 2..=3 {
                for kk in objects(m, n) {
                    for a in 1..=amax {
                        for b in 1..=amax {
                            for i in 1..m {
                                out.push(Params::with_labels(
                                    &kk,
                                    &[("a", a), ("b", b), ("i", i), ("v", 0)],
                                ));
                                out.push(Params::with_labels(
                                    &kk,
                                    &[("a", a), ("b", b), ("i", i), ("v", 1)],
                                ));
                            }
                            out.push(Params::with_labels(&kk, &[("a", a), ("b", b), ("v", 2)]));
                        }
                    }
                }
            }
        }
        RelationId::EvenOrthSerre | RelationId::HigherEvenOrthSerre => {
            for m in serre_ranks(n) {
                for kk in objects(m, n) {
                    for x in 1..=m {
                        for y in 1..=m {
                            if x == y || (x != m && y != m) {
                                continue;
                            }
                            let adj = so_adjacent(x, y, m);
                            for v in 0..2 {
                                if id == RelationId::EvenOrthSerre {
                                    out.push(Params::with_labels(
                                        &kk,
                                        &[("x", x), ("y", y), ("v", v)],
                                    ));
                                } else if adj {
                                    for b in 1..=2 {
                                        for nn in [b + 1, b + 2] {
                                            out.push(Params::with_labels(
                                                &kk,
                                                &[
                                                    ("x", x),
                                                    ("y", y),
                                                    ("v", v),
                                                    ("b", b),
                                                    ("n", nn),
                                                ],
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        RelationId::SerreA | RelationId::HigherSerreA => {
            for m in serre_ranks(n) {
                // the three-strand instances would repeat at rank four
                for kk in objects(m, n) {
                    for x in 1..m {
                        for y in 1..m {
                            if x == y || (m == 4 && x.abs_diff(y) == 1) {
                                continue;
                            }
                            let adj = x.abs_diff(y) == 1;
                            for v in 0..2 {
                                if id == RelationId::SerreA {
                                    out.push(Params::with_labels(
                                        &kk,
                                        &[("x", x), ("y", y), ("v", v)],
                                    ));
                                } else if adj {
                                    for b in 1..=2 {
                                        for nn in [b + 1, b + 2] {
                                            out.push(Params::with_labels(
                                                &kk,
                                                &[
                                                    ("x", x),
                                                    ("y", y),
                                                    ("v", v),
                                                    ("b", b),
                                                    ("n", nn),
                                                ],
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        RelationId::HigherEFA => {
            for kk in objects(3, n) {
                for a in 1..=2 {
                    for b in 1..=2 {
                        for i in 1..3 {
                            for j in 1..3 {
                                out.push(Params::with_labels(
                                    &kk,
                                    &[("a", a), ("b", b), ("i", i), ("j", j)],
                                ));
                            }
                        }
                    }
                }
            }
        }
        RelationId::DivPower => {
            for kk in objects(2, n) {
                for kind in 0..4 {
                    for a in 2..=n {
                        out.push(Params::with_labels(
                            &kk,
                            &[("kind", kind), ("a", a), ("v", 0)],
                        ));
                    }
                    for a in 1..=n {
                        for b in 1..=n - a.min(n) {
                            out.push(Params::with_labels(
                                &kk,
                                &[("kind", kind), ("a", a), ("b", b), ("v", 1)],
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Runs every instance of the given relations; output order is deterministic.
pub fn run_suite(ev: &Evaluator, ids: &[RelationId]) -> Vec<InstanceReport> {
    let jobs: Vec<(RelationId, Params)> = ids
        .iter()
        .flat_map(|&id| instances(id, ev.n()).into_iter().map(move |p| (id, p)))
        .collect();
    let field = ev.field().spec().to_string();
    jobs.into_par_iter()
        .map(|(id, params)| {
            let sides = relation_sides(id, &params, ev);
            let vacuous = sides.is_none();
            let pass = sides.is_none_or(|(l, r)| l == r);
            InstanceReport {
                id,
                params,
                n: ev.n(),
                field: field.clone(),
                pass,
                vacuous,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    #[test]
    fn named_examples() {
        let ev = Evaluator::new(2, Field::q());
        let (l, r) =
            relation_sides(RelationId::Digon, &Params::of(&[("k", 1), ("l", 1)]), &ev).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.get(0, 0), Field::q().from_i64(2));
        let ev3 = Evaluator::new(3, Field::q());
        assert!(check_relation(
            RelationId::SchurSigned,
            &Params::of(&[("k", 1), ("l", 1), ("r", 1)]),
            &ev3
        ));
        // the a = b = 1 instance on K = (1,1) at N = 2: f∘e = e∘f + (N−k−l)·id with N−k−l = 0
        let p = Params::with_labels(&[1, 1], &[("a", 1), ("b", 1)]);
        let (l, r) = relation_sides(RelationId::HigherEF, &p, &ev).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn parse_ids() {
        for id in RelationId::ALL {
            assert_eq!(id.name().parse::<RelationId>().unwrap(), *id);
        }
        assert_eq!(
            "higher-ef".parse::<RelationId>().unwrap(),
            RelationId::HigherEF
        );
    }

    #[test]
    fn adjacency() {
        assert!(so_adjacent(1, 2, 3) && so_adjacent(1, 3, 3) && !so_adjacent(2, 3, 3));
        assert!(!so_adjacent(1, 2, 2));
        assert!(so_adjacent(2, 4, 4) && !so_adjacent(3, 4, 4));
    }
}
