//! The idempotented divided-power relations of U(so_{2m}), checked on ladder images.

use serde::Serialize;

use super::relations::{
    commute_sides, ef_sides, eval_words, serre_sum, so_adjacent, so_coroot, so_step, word_target,
};
use super::Evaluator;
use crate::combin::Composition;
use crate::sparse::SparseMatrix;
use crate::webcat::WebDiagram;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct UdotReport {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub a_max: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl UdotReport {
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

/// Checks idempotent orthogonality, EE, both E–F relations and the higher Serre relations for
/// all divided powers ≤ `a_max` on every K ∈ Π_m^{≤N}.
pub fn check_udot_relations(m: usize, a_max: usize, ev: &Evaluator) -> UdotReport {
    assert!(m >= 2, "needs at least two strands");
    let n = ev.n();
    let f = ev.field();
    let mut rep = UdotReport {
        m,
        n,
        a_max,
        ..Default::default()
    };
    for comp in Composition::all(m, n) {
        let k = comp.entries.clone();
        // 1_K 1_K = 1_K, and consecutive words only compose through matching idempotents
        let id = ev.evaluate(&WebDiagram::identity(&k));
        rep.record(
            id.mul(&id) == id && id == SparseMatrix::identity(f, ev.dim(&k)),
            || format!("idempotent {k:?}"),
        );

        for raise in [true, false] {
            for j in 1..=m {
                for a in 1..=a_max {
                    for b in 1..=a_max {
                        let x = |t| so_step(raise, j, t, m);
                        let w = vec![x(a), x(b)];
                        let target = word_target(&k, &w);
                        let lhs = eval_words(ev, &k, &[(f.one(), w)], &target);
                        let rhs = eval_words(
                            ev,
                            &k,
                            &[(f.binom((a + b) as u64, a as i64), vec![x(a + b)])],
                            &target,
                        );
                        rep.record(lhs == rhs, || {
                            format!("EE node {j} raise={raise} a={a} b={b} K={k:?}")
                        });
                    }
                }
            }
        }

        for i in 1..=m {
            for j in 1..=m {
                for a in 1..=a_max {
                    for b in 1..=a_max {
                        let (lhs, rhs) = if i == j {
                            ef_sides(
                                ev,
                                &k,
                                |t| so_step(true, i, t, m),
                                |t| so_step(false, i, t, m),
                                a,
                                b,
                                so_coroot(&k, i, n),
                            )
                        } else {
                            commute_sides(ev, &k, so_step(true, i, a, m), so_step(false, j, b, m))
                        };
                        rep.record(lhs == rhs, || {
                            format!("EF nodes ({i},{j}) a={a} b={b} K={k:?}")
                        });
                    }
                }
                if i == j {
                    continue;
                }
                for raise in [true, false] {
                    for b in 1..=a_max {
                        let x = |t| so_step(raise, i, t, m);
                        let y = so_step(raise, j, b, m);
                        if so_adjacent(i, j, m) {
                            for nn in [b + 1, b + 2] {
                                let s = serre_sum(ev, &k, x, y, nn);
                                rep.record(s.is_zero(), || {
                                    format!(
                                        "Serre nodes ({i},{j}) raise={raise} b={b} n={nn} K={k:?}"
                                    )
                                });
                            }
                        } else {
                            let (l, r) = commute_sides(ev, &k, x(1), y);
                            rep.record(l == r, || {
                                format!("far commutation ({i},{j}) raise={raise} b={b} K={k:?}")
                            });
                        }
                    }
                }
            }
        }
    }
    rep
}
