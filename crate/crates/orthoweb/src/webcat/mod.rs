//! Web diagrams as slice lists, and formal linear combinations of them.
//!
//! A diagram is a source object plus generator slices read bottom to top. Zero-labelled
//! strands are allowed while building and removed by normalization, so every stored
//! diagram is zero-free.

mod ladder;
mod random;
mod sandwich;
mod svg;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::Scalar;

pub use ladder::{ladder, LadderKind};
pub use random::{random_composite, CompositeSampler, StateBounds};
pub use sandwich::{enumerate_fmf, enumerate_mfm, in_permitted_zones, realize_matching, Matching};
pub use svg::render_svg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WebError {
    #[error("slice {slice} at position {pos} expects labels {expected:?}, found {found:?}")]
    LabelMismatch {
        slice: usize,
        pos: usize,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("slice {slice} at position {pos} runs past {len} strands")]
    OutOfRange {
        slice: usize,
        pos: usize,
        len: usize,
    },
    #[error("boundary mismatch: {0:?} vs {1:?}")]
    BoundaryMismatch(Vec<usize>, Vec<usize>),
    #[error("label would become negative")]
    NegativeLabel,
    #[error("declared target {declared:?} but slices produce {actual:?}")]
    WrongTarget {
        declared: Vec<usize>,
        actual: Vec<usize>,
    },
    #[error("bad diagram json: {0}")]
    Json(String),
}

/// The five generating webs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gen {
    Merge {
        k: usize,
        l: usize,
    },
    Split {
        k: usize,
        l: usize,
    },
    #[serde(alias = "crossing")]
    Cross {
        k: usize,
        l: usize,
    },
    Cap {
        k: usize,
    },
    Cup {
        k: usize,
    },
}

impl Gen {
    pub fn inputs(&self) -> Vec<usize> {
        match *self {
            Gen::Merge { k, l } | Gen::Cross { k, l } => vec![k, l],
            Gen::Split { k, l } => vec![k + l],
            Gen::Cap { k } => vec![k, k],
            Gen::Cup { .. } => vec![],
        }
    }

    pub fn outputs(&self) -> Vec<usize> {
        match *self {
            Gen::Merge { k, l } => vec![k + l],
            Gen::Split { k, l } => vec![k, l],
            Gen::Cross { k, l } => vec![l, k],
            Gen::Cap { .. } => vec![],
            Gen::Cup { k } => vec![k, k],
        }
    }

    /// Generators with a zero-labelled leg are identities (or the empty diagram).
    pub fn is_trivial(&self) -> bool {
        match *self {
            Gen::Merge { k, l } | Gen::Split { k, l } | Gen::Cross { k, l } => k == 0 || l == 0,
            Gen::Cap { k } | Gen::Cup { k } => k == 0,
        }
    }

    /// The mirror image under reflection in a horizontal line.
    pub fn flipped(&self) -> Gen {
        match *self {
            Gen::Merge { k, l } => Gen::Split { k, l },
            Gen::Split { k, l } => Gen::Merge { k, l },
            Gen::Cross { k, l } => Gen::Cross { k: l, l: k },
            Gen::Cap { k } => Gen::Cup { k },
            Gen::Cup { k } => Gen::Cap { k },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slice {
    #[serde(flatten)]
    pub gen: Gen,
    pub pos: usize,
}

/// A generic-position web: source labels and slices bottom to top. Always zero-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WebDiagram {
    source: Vec<usize>,
    target: Vec<usize>,
    slices: Vec<Slice>,
}

fn apply_slice(labels: &mut Vec<usize>, s: &Slice, idx: usize) -> Result<(), WebError> {
    let inp = s.gen.inputs();
    if s.pos + inp.len() > labels.len() {
        return Err(WebError::OutOfRange {
            slice: idx,
            pos: s.pos,
            len: labels.len(),
        });
    }
    let found = labels[s.pos..s.pos + inp.len()].to_vec();
    if found != inp {
        return Err(WebError::LabelMismatch {
            slice: idx,
            pos: s.pos,
            expected: inp,
            found,
        });
    }
    labels.splice(s.pos..s.pos + inp.len(), s.gen.outputs());
    Ok(())
}

impl WebDiagram {
    /// Builds a diagram from raw slices (zero labels allowed) and normalizes it.
    pub fn from_raw(source: Vec<usize>, slices: &[Slice]) -> Result<Self, WebError> {
        let mut raw = source.clone();
        let mut out = Vec::new();
        for (idx, s) in slices.iter().enumerate() {
            let before = raw.clone();
            apply_slice(&mut raw, s, idx)?;
            if !s.gen.is_trivial() {
                let pos = before[..s.pos].iter().filter(|&&x| x != 0).count();
                out.push(Slice { gen: s.gen, pos });
            }
        }
        let source: Vec<usize> = source.into_iter().filter(|&x| x != 0).collect();
        let target: Vec<usize> = raw.into_iter().filter(|&x| x != 0).collect();
        Ok(WebDiagram {
            source,
            target,
            slices: out,
        })
    }

    pub fn identity(labels: &[usize]) -> Self {
        let l: Vec<usize> = labels.iter().copied().filter(|&x| x != 0).collect();
        WebDiagram {
            source: l.clone(),
            target: l,
            slices: Vec::new(),
        }
    }

    /// A single generator with untouched strands on either side.
    pub fn generator(gen: Gen, left: &[usize], right: &[usize]) -> Self {
        let mut src = left.to_vec();
        src.extend(gen.inputs());
        src.extend_from_slice(right);
        WebDiagram::from_raw(
            src,
            &[Slice {
                gen,
                pos: left.len(),
            }],
        )
        .expect("generator in context is well formed")
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// Labels at every level: `levels()[0]` is the source, the last entry the target.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let mut cur = self.source.clone();
        let mut out = vec![cur.clone()];
        for (i, s) in self.slices.iter().enumerate() {
            apply_slice(&mut cur, s, i).expect("normalized diagrams are consistent");
            out.push(cur.clone());
        }
        out
    }

    /// `self ∘ first`: first `first`, then `self`.
    pub fn after(&self, first: &WebDiagram) -> Result<WebDiagram, WebError> {
        if first.target != self.source {
            return Err(WebError::BoundaryMismatch(
                first.target.clone(),
                self.source.clone(),
            ));
        }
        let mut slices = first.slices.clone();
        slices.extend_from_slice(&self.slices);
        Ok(WebDiagram {
            source: first.source.clone(),
            target: self.target.clone(),
            slices,
        })
    }

    /// Composes a bottom-to-top chain of diagrams.
    pub fn chain(parts: &[WebDiagram]) -> Result<WebDiagram, WebError> {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = p.after(&acc)?;
        }
        Ok(acc)
    }

    /// `self ⊗ other`: `self` on the left, run first; then `other` shifted right.
    pub fn tensor(&self, other: &WebDiagram) -> WebDiagram {
        let mut slices = self.slices.clone();
        let shift = self.target.len();
        slices.extend(other.slices.iter().map(|s| Slice {
            gen: s.gen,
            pos: s.pos + shift,
        }));
        let mut source = self.source.clone();
        source.extend_from_slice(&other.source);
        let mut target = self.target.clone();
        target.extend_from_slice(&other.target);
        WebDiagram {
            source,
            target,
            slices,
        }
    }

    /// Places `self` between identity strands.
    pub fn padded(&self, left: &[usize], right: &[usize]) -> WebDiagram {
        WebDiagram::identity(left)
            .tensor(self)
            .tensor(&WebDiagram::identity(right))
    }

    /// Reflection in a horizontal line (reverses source and target).
    pub fn flipped(&self) -> WebDiagram {
        let slices = self
            .slices
            .iter()
            .rev()
            .map(|s| Slice {
                gen: s.gen.flipped(),
                pos: s.pos,
            })
            .collect();
        WebDiagram {
            source: self.target.clone(),
            target: self.source.clone(),
            slices,
        }
    }

    /// Pivotal rotation of one boundary strand across the right edge.
    pub fn rotate(&self, dir: Rotation) -> Option<WebDiagram> {
        match dir {
            Rotation::BottomToTop => {
                let (&k, rest) = self.source.split_last()?;
                // (D ⊗ id_k) ∘ (id_rest ⊗ cup_k)
                let cup = WebDiagram::generator(Gen::Cup { k }, rest, &[]);
                let d = self.tensor(&WebDiagram::identity(&[k]));
                Some(d.after(&cup).expect("rotation boundaries agree"))
            }
            Rotation::TopToBottom => {
                let (&k, rest) = self.target.split_last()?;
                // (id_rest ⊗ cap_k) ∘ (D ⊗ id_k)
                let cap = WebDiagram::generator(Gen::Cap { k }, rest, &[]);
                let d = self.tensor(&WebDiagram::identity(&[k]));
                Some(cap.after(&d).expect("rotation boundaries agree"))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<WebDiagram, WebError> {
        let raw: RawDiagram =
            serde_json::from_str(text).map_err(|e| WebError::Json(e.to_string()))?;
        let d = WebDiagram::from_raw(raw.source, &raw.slices)?;
        if let Some(t) = raw.target {
            let t: Vec<usize> = t.into_iter().filter(|&x| x != 0).collect();
            if t != d.target {
                return Err(WebError::WrongTarget {
                    declared: t,
                    actual: d.target,
                });
            }
        }
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }
}

impl<'de> Deserialize<'de> for WebDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawDiagram::deserialize(de)?;
        let d = WebDiagram::from_raw(raw.source, &raw.slices).map_err(serde::de::Error::custom)?;
        if let Some(t) = raw.target {
            let t: Vec<usize> = t.into_iter().filter(|&x| x != 0).collect();
            if t != d.target {
                return Err(serde::de::Error::custom(WebError::WrongTarget {
                    declared: t,
                    actual: d.target,
                }));
            }
        }
        Ok(d)
    }
}

#[derive(Deserialize)]
struct RawDiagram {
    source: Vec<usize>,
    #[serde(default)]
    target: Option<Vec<usize>>,
    #[serde(default)]
    slices: Vec<Slice>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rotation {
    /// Bend the rightmost bottom strand up to the top.
    BottomToTop,
    /// Bend the rightmost top strand down to the bottom.
    TopToBottom,
}

impl fmt::Display for WebDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.source)?;
        for s in &self.slices {
            let g = match s.gen {
                Gen::Merge { k, l } => format!("M{k},{l}"),
                Gen::Split { k, l } => format!("S{k},{l}"),
                Gen::Cross { k, l } => format!("X{k},{l}"),
                Gen::Cap { k } => format!("∩{k}"),
                Gen::Cup { k } => format!("∪{k}"),
            };
            write!(f, " {g}@{}", s.pos)?;
        }
        write!(f, " -> {:?}", self.target)
    }
}

/// A finite formal combination of diagrams with a common boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebMorphism {
    source: Vec<usize>,
    target: Vec<usize>,
    terms: BTreeMap<WebDiagram, Scalar>,
}

impl WebMorphism {
    pub fn zero(source: &[usize], target: &[usize]) -> Self {
        let norm = |v: &[usize]| v.iter().copied().filter(|&x| x != 0).collect::<Vec<_>>();
        WebMorphism {
            source: norm(source),
            target: norm(target),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: WebDiagram, coef: Scalar) -> Self {
        let mut m = WebMorphism::zero(d.source(), d.target());
        m.add_term(d, coef);
        m
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WebDiagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, d: WebDiagram, coef: Scalar) {
        assert_eq!(
            (d.source(), d.target()),
            (&self.source[..], &self.target[..]),
            "term boundary differs from morphism"
        );
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(c) => {
                *c += &coef;
                if c.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, coef);
            }
        }
    }

    pub fn add(&self, other: &WebMorphism) -> Result<WebMorphism, WebError> {
        if (&self.source, &self.target) != (&other.source, &other.target) {
            return Err(WebError::BoundaryMismatch(
                self.source.clone(),
                other.source.clone(),
            ));
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> WebMorphism {
        let mut out = WebMorphism::zero(&self.source, &self.target);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.mul(s));
        }
        out
    }

    /// `g ∘ f`.
    pub fn compose(g: &WebMorphism, f: &WebMorphism) -> Result<WebMorphism, WebError> {
        if f.target != g.source {
            return Err(WebError::BoundaryMismatch(
                f.target.clone(),
                g.source.clone(),
            ));
        }
        let mut out = WebMorphism::zero(&f.source, &g.target);
        for (dg, cg) in &g.terms {
            for (df, cf) in &f.terms {
                out.add_term(dg.after(df)?, cg.mul(cf));
            }
        }
        Ok(out)
    }

    pub fn tensor(f: &WebMorphism, g: &WebMorphism) -> WebMorphism {
        let mut src = f.source.clone();
        src.extend_from_slice(&g.source);
        let mut tgt = f.target.clone();
        tgt.extend_from_slice(&g.target);
        let mut out = WebMorphism::zero(&src, &tgt);
        for (df, cf) in &f.terms {
            for (dg, cg) in &g.terms {
                out.add_term(df.tensor(dg), cf.mul(cg));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_drops_zero_strands() {
        let d = WebDiagram::from_raw(
            vec![2, 0, 1],
            &[
                Slice {
                    gen: Gen::Merge { k: 2, l: 0 },
                    pos: 0,
                },
                Slice {
                    gen: Gen::Merge { k: 2, l: 1 },
                    pos: 0,
                },
            ],
        )
        .unwrap();
        assert_eq!(d.source(), &[2, 1]);
        assert_eq!(d.target(), &[3]);
        assert_eq!(
            d.slices(),
            &[Slice {
                gen: Gen::Merge { k: 2, l: 1 },
                pos: 0
            }]
        );
    }

    #[test]
    fn label_mismatch_is_reported() {
        let e = WebDiagram::from_raw(
            vec![1, 2],
            &[Slice {
                gen: Gen::Cap { k: 1 },
                pos: 0,
            }],
        )
        .unwrap_err();
        assert!(matches!(e, WebError::LabelMismatch { .. }));
    }

    #[test]
    fn json_round_trip() {
        let d = WebDiagram::generator(Gen::Split { k: 1, l: 2 }, &[1], &[2]);
        let s = d.to_json();
        assert_eq!(
            s,
            r#"{"source":[1,3,2],"target":[1,1,2,2],"slices":[{"kind":"split","k":1,"l":2,"pos":1}]}"#
        );
        assert_eq!(WebDiagram::from_json(&s).unwrap(), d);
        let back: WebDiagram = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn tensor_with_empty() {
        let d = WebDiagram::generator(Gen::Cup { k: 2 }, &[], &[]);
        assert_eq!(d.tensor(&WebDiagram::identity(&[])), d);
    }
}
