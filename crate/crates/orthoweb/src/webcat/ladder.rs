use serde::{Deserialize, Serialize};

use super::{Gen, Slice, WebDiagram, WebError};

/// The four rung types: type A rungs E/F and the cup/cap rungs e/f.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LadderKind {
    E,
    F,
    #[serde(rename = "e")]
    LowerE,
    #[serde(rename = "f")]
    LowerF,
}

impl LadderKind {
    /// The change of the labels on strands (i, i+1).
    pub fn shift(&self, a: i64) -> (i64, i64) {
        match self {
            LadderKind::E => (a, -a),
            LadderKind::F => (-a, a),
            LadderKind::LowerE => (a, a),
            LadderKind::LowerF => (-a, -a),
        }
    }
}

/// A rung of thickness `a` between strands `i` and `i+1` (1-based) of `k`.
///
/// E: split strand i+1 as (a, k_{i+1}−a), merge (k_i, a).
/// F: split strand i as (k_i−a, a), merge (a, k_{i+1}).
/// e: cup_a between the strands, then merges on both sides.
/// f: splits on both sides, then cap_a.
pub fn ladder(kind: LadderKind, a: usize, i: usize, k: &[usize]) -> Result<WebDiagram, WebError> {
    assert!(i >= 1 && i < k.len(), "rung needs strands i and i+1");
    let (ki, kj) = (k[i - 1], k[i]);
    let p = i - 1;
    let slices = match kind {
        LadderKind::E => {
            if kj < a {
                return Err(WebError::NegativeLabel);
            }
            vec![
                Slice {
                    gen: Gen::Split { k: a, l: kj - a },
                    pos: p + 1,
                },
                Slice {
                    gen: Gen::Merge { k: ki, l: a },
                    pos: p,
                },
            ]
        }
        LadderKind::F => {
            if ki < a {
                return Err(WebError::NegativeLabel);
            }
            vec![
                Slice {
                    gen: Gen::Split { k: ki - a, l: a },
                    pos: p,
                },
                Slice {
                    gen: Gen::Merge { k: a, l: kj },
                    pos: p + 1,
                },
            ]
        }
        LadderKind::LowerE => vec![
            Slice {
                gen: Gen::Cup { k: a },
                pos: p + 1,
            },
            Slice {
                gen: Gen::Merge { k: ki, l: a },
                pos: p,
            },
            Slice {
                gen: Gen::Merge { k: a, l: kj },
                pos: p + 1,
            },
        ],
        LadderKind::LowerF => {
            if ki < a || kj < a {
                return Err(WebError::NegativeLabel);
            }
            vec![
                Slice {
                    gen: Gen::Split { k: ki - a, l: a },
                    pos: p,
                },
                Slice {
                    gen: Gen::Split { k: a, l: kj - a },
                    pos: p + 2,
                },
                Slice {
                    gen: Gen::Cap { k: a },
                    pos: p + 1,
                },
            ]
        }
    };
    WebDiagram::from_raw(k.to_vec(), &slices)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_rung_is_identity() {
        for kind in [
            LadderKind::E,
            LadderKind::F,
            LadderKind::LowerE,
            LadderKind::LowerF,
        ] {
            let d = ladder(kind, 0, 1, &[2, 1]).unwrap();
            assert_eq!(d, WebDiagram::identity(&[2, 1]));
        }
    }

    #[test]
    fn label_bookkeeping() {
        let d = ladder(LadderKind::E, 1, 1, &[1, 1]).unwrap();
        assert_eq!(d.target(), &[2]);
        assert_eq!(
            d.slices(),
            &[Slice {
                gen: Gen::Merge { k: 1, l: 1 },
                pos: 0
            }]
        );
        let d = ladder(LadderKind::LowerE, 1, 1, &[0, 0]).unwrap();
        assert_eq!(d.target(), &[1, 1]);
        assert_eq!(
            d.slices(),
            &[Slice {
                gen: Gen::Cup { k: 1 },
                pos: 0
            }]
        );
        let d = ladder(LadderKind::LowerF, 2, 2, &[1, 3, 2]).unwrap();
        assert_eq!(d.target(), &[1, 1]);
        assert_eq!(
            ladder(LadderKind::F, 2, 1, &[1, 0]),
            Err(WebError::NegativeLabel)
        );
    }
}
