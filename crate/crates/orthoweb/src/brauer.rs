//! The colored Brauer category: perfect matchings of boundary points, composed by stacking,
//! with each closed loop of color i contributing the loop parameter d_i.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{Field, Scalar};
use crate::sparse::SparseMatrix;
use crate::webcat::{realize_matching, Matching, WebDiagram, WebMorphism};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BrauerError {
    #[error("colors do not match: {0:?} vs {1:?}")]
    ColorMismatch(Vec<usize>, Vec<usize>),
    #[error("not a color-respecting perfect matching")]
    BadMatching,
    #[error("no loop parameter for color {0}")]
    MissingParam(usize),
}

/// Points 0..b are the bottom, b..b+t the top; `partner` is a fixed-point-free involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredBrauerDiagram {
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
    pub partner: Vec<usize>,
}

/// d_i for each color i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopParams {
    pub field: Field,
    pub d: Vec<Scalar>,
}

impl LoopParams {
    pub fn new(field: Field, d: Vec<Scalar>) -> Self {
        LoopParams { field, d }
    }

    /// A single color with parameter d.
    pub fn single(field: Field, d: i64) -> Self {
        LoopParams {
            field,
            d: vec![field.from_i64(d)],
        }
    }

    /// d_i = N_i, the base-p digits of N, over 𝔽_p.
    pub fn digits(n: u64, p: u64) -> Self {
        let field = Field::fp(p);
        let digits = crate::combin::p_adic_digits(n, p);
        let len = (0..64)
            .take_while(|&i| p.checked_pow(i as u32).is_some_and(|q| q <= n.max(1)))
            .count();
        LoopParams {
            field,
            d: (0..len)
                .map(|i| field.from_i64(digits.digit(i) as i64))
                .collect(),
        }
    }

    pub fn get(&self, color: usize) -> Result<&Scalar, BrauerError> {
        self.d.get(color).ok_or(BrauerError::MissingParam(color))
    }
}

impl ColoredBrauerDiagram {
    pub fn new(
        bottom: Vec<usize>,
        top: Vec<usize>,
        partner: Vec<usize>,
    ) -> Result<Self, BrauerError> {
        let d = ColoredBrauerDiagram {
            bottom,
            top,
            partner,
        };
        let n = d.points();
        let ok = d.partner.len() == n
            && (0..n).all(|i| {
                d.partner[i] < n
                    && d.partner[i] != i
                    && d.partner[d.partner[i]] == i
                    && d.color(i) == d.color(d.partner[i])
            });
        if ok {
            Ok(d)
        } else {
            Err(BrauerError::BadMatching)
        }
    }

    pub fn points(&self) -> usize {
        self.bottom.len() + self.top.len()
    }

    fn color(&self, i: usize) -> usize {
        if i < self.bottom.len() {
            self.bottom[i]
        } else {
            self.top[i - self.bottom.len()]
        }
    }

    pub fn identity(word: &[usize]) -> Self {
        let b = word.len();
        let partner = (0..2 * b)
            .map(|i| if i < b { i + b } else { i - b })
            .collect();
        ColoredBrauerDiagram {
            bottom: word.to_vec(),
            top: word.to_vec(),
            partner,
        }
    }

    /// The symmetric braiding of two colors.
    pub fn crossing(a: usize, b: usize) -> Self {
        ColoredBrauerDiagram {
            bottom: vec![a, b],
            top: vec![b, a],
            partner: vec![3, 2, 1, 0],
        }
    }

    pub fn cup(c: usize) -> Self {
        ColoredBrauerDiagram {
            bottom: vec![],
            top: vec![c, c],
            partner: vec![1, 0],
        }
    }

    pub fn cap(c: usize) -> Self {
        ColoredBrauerDiagram {
            bottom: vec![c, c],
            top: vec![],
            partner: vec![1, 0],
        }
    }

    /// Reflection in a horizontal line: Hom(K, L) → Hom(L, K).
    pub fn flipped(&self) -> Self {
        let (b, t) = (self.bottom.len(), self.top.len());
        let map = |i: usize| if i < b { i + t } else { i - b };
        let mut partner = vec![0; b + t];
        for i in 0..b + t {
            partner[map(i)] = map(self.partner[i]);
        }
        ColoredBrauerDiagram {
            bottom: self.top.clone(),
            top: self.bottom.clone(),
            partner,
        }
    }

    /// Side by side, `self` on the left.
    pub fn tensor(&self, other: &Self) -> Self {
        let (b1, t1, b2, t2) = (
            self.bottom.len(),
            self.top.len(),
            other.bottom.len(),
            other.top.len(),
        );
        // new order: bottom1, bottom2, top1, top2
        let m1 = |i: usize| if i < b1 { i } else { i - b1 + b1 + b2 };
        let m2 = |i: usize| {
            if i < b2 {
                b1 + i
            } else {
                b1 + b2 + t1 + (i - b2)
            }
        };
        let mut partner = vec![0; b1 + b2 + t1 + t2];
        for i in 0..b1 + t1 {
            partner[m1(i)] = m1(self.partner[i]);
        }
        for i in 0..b2 + t2 {
            partner[m2(i)] = m2(other.partner[i]);
        }
        ColoredBrauerDiagram {
            bottom: [self.bottom.clone(), other.bottom.clone()].concat(),
            top: [self.top.clone(), other.top.clone()].concat(),
            partner,
        }
    }

    /// Closes `self` (an endomorphism) by joining top point i to bottom point i; returns the
    /// colors of the resulting loops.
    pub fn closure_loops(&self) -> Result<Vec<usize>, BrauerError> {
        if self.bottom != self.top {
            return Err(BrauerError::ColorMismatch(
                self.bottom.clone(),
                self.top.clone(),
            ));
        }
        let b = self.bottom.len();
        let mut seen = vec![false; 2 * b];
        let mut loops = Vec::new();
        for start in 0..2 * b {
            if seen[start] {
                continue;
            }
            let mut i = start;
            loop {
                seen[i] = true;
                let j = self.partner[i];
                seen[j] = true;
                // continue through the closing arc
                i = if j < b { j + b } else { j - b };
                if i == start {
                    break;
                }
            }
            loops.push(self.color(start));
        }
        Ok(loops)
    }
}

impl fmt::Display for ColoredBrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}→{:?}:", self.bottom, self.top)?;
        for i in 0..self.points() {
            if i < self.partner[i] {
                write!(f, " ({i},{})", self.partner[i])?;
            }
        }
        Ok(())
    }
}

fn loop_scalar(colors: &[usize], params: &LoopParams) -> Result<Scalar, BrauerError> {
    let mut s = params.field.one();
    for &c in colors {
        s = s.mul(params.get(c)?);
    }
    Ok(s)
}

/// Colors of the closed loops formed when stacking g on top of f, together with the composite.
pub fn compose_loops(
    g: &ColoredBrauerDiagram,
    f: &ColoredBrauerDiagram,
) -> Result<(Vec<usize>, ColoredBrauerDiagram), BrauerError> {
    if f.top != g.bottom {
        return Err(BrauerError::ColorMismatch(f.top.clone(), g.bottom.clone()));
    }
    let (b, t, u) = (f.bottom.len(), f.top.len(), g.top.len());
    // global points: f-bottom 0..b, middle b..b+t, g-top b+t..b+t+u; f's local indices are
    // global, g's are global − b
    let step = |x: usize, in_f: bool| {
        if in_f {
            f.partner[x]
        } else {
            g.partner[x - b] + b
        }
    };
    let middle = |x: usize| (b..b + t).contains(&x);
    let to_out = |x: usize| if x < b { x } else { x - t };
    let mut partner = vec![usize::MAX; b + u];
    let mut mid_seen = vec![false; t];
    for start in (0..b).chain(b + t..b + t + u) {
        if partner[to_out(start)] != usize::MAX {
            continue;
        }
        let mut in_f = start < b;
        let mut cur = step(start, in_f);
        while middle(cur) {
            mid_seen[cur - b] = true;
            in_f = !in_f;
            cur = step(cur, in_f);
        }
        partner[to_out(start)] = to_out(cur);
        partner[to_out(cur)] = to_out(start);
    }
    let mut loops = Vec::new();
    for m0 in 0..t {
        if mid_seen[m0] {
            continue;
        }
        let (mut cur, mut in_f) = (b + m0, true);
        loop {
            mid_seen[cur - b] = true;
            cur = step(cur, in_f);
            mid_seen[cur - b] = true;
            in_f = !in_f;
            if cur == b + m0 {
                break;
            }
        }
        loops.push(f.top[m0]);
    }
    Ok((
        loops,
        ColoredBrauerDiagram {
            bottom: f.bottom.clone(),
            top: g.top.clone(),
            partner,
        },
    ))
}

/// g ∘ f with its loop scalar ∏ d_i^{#loops of color i}.
pub fn compose_brauer(
    g: &ColoredBrauerDiagram,
    f: &ColoredBrauerDiagram,
    params: &LoopParams,
) -> Result<(Scalar, ColoredBrauerDiagram), BrauerError> {
    let (loops, d) = compose_loops(g, f)?;
    Ok((loop_scalar(&loops, params)?, d))
}

/// The categorical trace of an endomorphism diagram.
pub fn brauer_trace(d: &ColoredBrauerDiagram, params: &LoopParams) -> Result<Scalar, BrauerError> {
    loop_scalar(&d.closure_loops()?, params)
}

/// All color-respecting perfect matchings K → L, in a fixed deterministic order.
pub fn enumerate_brauer(k: &[usize], l: &[usize]) -> Vec<ColoredBrauerDiagram> {
    let colors: Vec<usize> = k.iter().chain(l).copied().collect();
    let n = colors.len();
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; n];
    fn rec(colors: &[usize], partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(partner.clone());
            return;
        };
        for j in i + 1..colors.len() {
            if partner[j] == usize::MAX && colors[j] == colors[i] {
                partner[i] = j;
                partner[j] = i;
                rec(colors, partner, out);
                partner[i] = usize::MAX;
                partner[j] = usize::MAX;
            }
        }
    }
    let mut raw = Vec::new();
    rec(&colors, &mut partner, &mut raw);
    for p in raw {
        out.push(ColoredBrauerDiagram {
            bottom: k.to_vec(),
            top: l.to_vec(),
            partner: p,
        });
    }
    out
}

/// Gram matrix tr(g∘f), rows indexed by the diagram basis of Hom(L,K), columns by Hom(K,L).
pub fn brauer_gram(
    k: &[usize],
    l: &[usize],
    params: &LoopParams,
) -> Result<SparseMatrix, BrauerError> {
    let fs = enumerate_brauer(k, l);
    let gs = enumerate_brauer(l, k);
    let mut trip = Vec::new();
    for (r, g) in gs.iter().enumerate() {
        for (c, f) in fs.iter().enumerate() {
            let (s, gf) = compose_brauer(g, f, params)?;
            trip.push((r, c, s.mul(&brauer_trace(&gf, params)?)));
        }
    }
    Ok(SparseMatrix::from_triplets(
        params.field,
        gs.len(),
        fs.len(),
        trip,
    ))
}

/// The image web under the functor sending color c to a strand of thickness `labels[c]`.
pub fn brauer_to_web(d: &ColoredBrauerDiagram, labels: &[usize]) -> WebDiagram {
    let b = d.bottom.len();
    let lab = |c: usize| labels[c];
    let mut m = Matching {
        bottom: d.bottom.iter().map(|&c| lab(c)).collect(),
        top: d.top.iter().map(|&c| lab(c)).collect(),
        ..Default::default()
    };
    for i in 0..d.points() {
        let j = d.partner[i];
        if i > j {
            continue;
        }
        let t = lab(d.color(i));
        if j < b {
            m.caps.push((i, j, t));
        } else if i >= b {
            m.cups.push((i - b, j - b, t));
        } else {
            m.through.push((i, j - b, t));
        }
    }
    realize_matching(&m)
}

/// The same functor on coefficients: a one-term web morphism.
pub fn brauer_to_web_morphism(
    d: &ColoredBrauerDiagram,
    labels: &[usize],
    coef: Scalar,
) -> WebMorphism {
    WebMorphism::from_diagram(brauer_to_web(d, labels), coef)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evalfun::Evaluator;

    #[test]
    fn basic_compositions() {
        let p = LoopParams::single(Field::q(), 3);
        let (s, d) = compose_brauer(
            &ColoredBrauerDiagram::cap(0),
            &ColoredBrauerDiagram::cup(0),
            &p,
        )
        .unwrap();
        assert_eq!(s, Field::q().from_i64(3));
        assert_eq!(d.points(), 0);
        let id = ColoredBrauerDiagram::identity(&[0, 0]);
        assert_eq!(
            compose_brauer(&id, &id, &p).unwrap(),
            (Field::q().one(), id.clone())
        );
        let x = ColoredBrauerDiagram::crossing(0, 0);
        assert_eq!(compose_brauer(&x, &x, &p).unwrap(), (Field::q().one(), id));
        let x01 = ColoredBrauerDiagram::crossing(0, 1);
        let x10 = ColoredBrauerDiagram::crossing(1, 0);
        assert_eq!(
            compose_brauer(&x10, &x01, &p).unwrap().1,
            ColoredBrauerDiagram::identity(&[0, 1])
        );
        assert!(compose_brauer(&x01, &x01, &p).is_err());
    }

    #[test]
    fn zigzag_is_identity() {
        let p = LoopParams::single(Field::q(), 5);
        let cup_right = ColoredBrauerDiagram::identity(&[0]).tensor(&ColoredBrauerDiagram::cup(0));
        let cap_left = ColoredBrauerDiagram::cap(0).tensor(&ColoredBrauerDiagram::identity(&[0]));
        let (s, d) = compose_brauer(&cap_left, &cup_right, &p).unwrap();
        assert_eq!(
            (s, d),
            (Field::q().one(), ColoredBrauerDiagram::identity(&[0]))
        );
    }

    #[test]
    fn gram_examples() {
        let f = Field::q();
        let g = brauer_gram(&[0], &[0], &LoopParams::single(f, 3)).unwrap();
        assert_eq!(g.to_dense(), vec![vec![f.from_i64(3)]]);
        let g = brauer_gram(&[], &[], &LoopParams::single(f, 3)).unwrap();
        assert_eq!(g.to_dense(), vec![vec![f.one()]]);
        assert_eq!(enumerate_brauer(&[0, 0], &[0, 0]).len(), 3);
        // every closure has at least one loop, so d = 0 kills the whole pairing and d = 1
        // leaves the all-ones matrix
        let g0 = brauer_gram(&[0, 0], &[0, 0], &LoopParams::single(f, 0)).unwrap();
        assert_eq!(g0.rank(), 0);
        let g1 = brauer_gram(&[0, 0], &[0, 0], &LoopParams::single(f, 1)).unwrap();
        assert_eq!(g1.rank(), 1);
        assert_eq!(g1, g1.transpose());
        let g3 = brauer_gram(&[0, 0], &[0, 0], &LoopParams::single(f, 3)).unwrap();
        assert_eq!(g3.rank(), 3);
    }

    #[test]
    fn digit_params() {
        let p = LoopParams::digits(4, 3);
        assert_eq!(p.d, vec![Field::fp(3).one(), Field::fp(3).one()]);
        let p = LoopParams::digits(7, 5);
        assert_eq!(p.d, vec![Field::fp(5).from_i64(2), Field::fp(5).one()]);
    }

    #[test]
    fn functor_on_circles() {
        for n in 1..=4 {
            let ev = Evaluator::new(n, Field::q());
            for k in 1..=n {
                let circle = compose_brauer(
                    &ColoredBrauerDiagram::cap(0),
                    &ColoredBrauerDiagram::cup(0),
                    &LoopParams::single(Field::q(), 1),
                )
                .unwrap();
                assert_eq!(circle.1.points(), 0);
                let web = brauer_to_web(&ColoredBrauerDiagram::cap(0), &[k])
                    .after(&brauer_to_web(&ColoredBrauerDiagram::cup(0), &[k]))
                    .unwrap();
                assert_eq!(
                    ev.evaluate(&web).get(0, 0),
                    Field::q().binom(n as u64, k as i64)
                );
            }
        }
    }
}
