//! fmf and mfm sandwich diagrams.
//!
//! An fmf diagram K → L is encoded as a multigraph: bottom vertices carry K, top vertices
//! carry L, and each edge has a thickness. Bottom–bottom edges become caps, top–top edges
//! cups, bottom–top edges through strands. Parallel edges are fused (a digon is a scalar
//! multiple of one thick edge), and loops are absent (they vanish by the lollipop relation).

use std::collections::{BTreeMap, BTreeSet};

use super::{Gen, Slice, WebDiagram};

/// Edge data of a sandwich diagram: `(vertex, vertex, thickness)` triples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
    pub caps: Vec<(usize, usize, usize)>,
    pub cups: Vec<(usize, usize, usize)>,
    pub through: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Piece {
    Cap(usize, u8),
    Through(usize),
    Cup(usize, u8),
}

struct Builder {
    labels: Vec<usize>,
    tags: Vec<Piece>,
    slices: Vec<Slice>,
}

impl Builder {
    fn push(&mut self, gen: Gen, pos: usize) {
        self.slices.push(Slice { gen, pos });
    }

    /// Bubble-sorts the strands into increasing `rank`, one crossing per swap.
    fn sort_by_rank(&mut self, rank: impl Fn(&Piece) -> usize) {
        let n = self.tags.len();
        for pass in 0..n {
            let mut swapped = false;
            for p in 0..n.saturating_sub(1 + pass) {
                if rank(&self.tags[p]) > rank(&self.tags[p + 1]) {
                    self.push(
                        Gen::Cross {
                            k: self.labels[p],
                            l: self.labels[p + 1],
                        },
                        p,
                    );
                    self.labels.swap(p, p + 1);
                    self.tags.swap(p, p + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
    }
}

/// Incident pieces of every vertex, planar-ish: edges to the left, through strands, edges to the right.
fn vertex_pieces(
    count: usize,
    pair_edges: &[(usize, usize, usize)],
    through: &[(usize, usize, usize)],
    bottom: bool,
) -> Vec<Vec<(Piece, usize)>> {
    let mk = |e: usize, end: u8| {
        if bottom {
            Piece::Cap(e, end)
        } else {
            Piece::Cup(e, end)
        }
    };
    (0..count)
        .map(|v| {
            let mut left: Vec<(usize, Piece, usize)> = Vec::new();
            let mut right: Vec<(usize, Piece, usize)> = Vec::new();
            for (e, &(i, j, t)) in pair_edges.iter().enumerate() {
                if j == v {
                    left.push((i, mk(e, 1), t));
                }
                if i == v {
                    right.push((j, mk(e, 0), t));
                }
            }
            left.sort();
            right.sort();
            let mut mids: Vec<(usize, Piece, usize)> = through
                .iter()
                .enumerate()
                .filter(|(_, &(b, t, _))| if bottom { b == v } else { t == v })
                .map(|(e, &(b, t, th))| (if bottom { t } else { b }, Piece::Through(e), th))
                .collect();
            mids.sort();
            left.into_iter()
                .chain(mids)
                .chain(right)
                .map(|(_, p, t)| (p, t))
                .collect()
        })
        .collect()
}

/// Builds the diagram: splits, crossings, caps, crossings, cups, crossings, merges.
pub fn realize_matching(m: &Matching) -> WebDiagram {
    let bottom_pieces = vertex_pieces(m.bottom.len(), &m.caps, &m.through, true);
    let top_pieces = vertex_pieces(m.top.len(), &m.cups, &m.through, false);
    let mut b = Builder {
        labels: Vec::new(),
        tags: Vec::new(),
        slices: Vec::new(),
    };
    // the source, with placeholder tags replaced as vertices split
    let mut pos = 0;
    b.labels = m.bottom.clone();
    for (v, pieces) in bottom_pieces.iter().enumerate() {
        debug_assert_eq!(
            pieces.iter().map(|p| p.1).sum::<usize>(),
            m.bottom[v],
            "vertex degree"
        );
        let mut rest = m.bottom[v];
        for (idx, &(_, t)) in pieces.iter().enumerate() {
            if idx + 1 < pieces.len() {
                b.push(Gen::Split { k: t, l: rest - t }, pos + idx);
                rest -= t;
            }
        }
        pos += pieces.len();
    }
    b.labels = bottom_pieces.iter().flatten().map(|p| p.1).collect();
    b.tags = bottom_pieces.iter().flatten().map(|p| p.0).collect();

    // caps to the front as adjacent pairs, through strands behind them in their current order
    let order: BTreeMap<Piece, usize> = b.tags.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let cap_rank = |p: &Piece| match *p {
        Piece::Cap(e, end) => 2 * e + end as usize,
        other => 2 * m.caps.len() + order[&other],
    };
    b.sort_by_rank(cap_rank);
    for &(_, _, t) in &m.caps {
        b.push(Gen::Cap { k: t }, 0);
        b.labels.drain(0..2);
        b.tags.drain(0..2);
    }

    // final arrangement along the top
    let final_rank: BTreeMap<Piece, usize> = top_pieces
        .iter()
        .flatten()
        .enumerate()
        .map(|(i, p)| (p.0, i))
        .collect();
    b.sort_by_rank(|p| final_rank[p]);
    for (e, &(_, _, t)) in m.cups.iter().enumerate() {
        let p = b.labels.len();
        b.push(Gen::Cup { k: t }, p);
        b.labels.extend([t, t]);
        b.tags.extend([Piece::Cup(e, 0), Piece::Cup(e, 1)]);
    }
    b.sort_by_rank(|p| final_rank[p]);

    for (v, pieces) in top_pieces.iter().enumerate() {
        let mut acc = 0;
        for (idx, &(_, t)) in pieces.iter().enumerate() {
            if idx > 0 {
                b.push(Gen::Merge { k: acc, l: t }, v);
            }
            acc += t;
        }
    }
    let d =
        WebDiagram::from_raw(m.bottom.clone(), &b.slices).expect("matching realizes consistently");
    debug_assert_eq!(d.target(), &m.top[..]);
    d
}

/// All fmf sandwich diagrams K → L (zero labels are ignored).
pub fn enumerate_fmf(k: &[usize], l: &[usize]) -> Vec<WebDiagram> {
    enumerate_matchings(k, l)
        .iter()
        .map(realize_matching)
        .collect()
}

/// The edge multigraphs underlying `enumerate_fmf`.
pub fn enumerate_matchings(k: &[usize], l: &[usize]) -> Vec<Matching> {
    let bottom: Vec<usize> = k.iter().copied().filter(|&x| x != 0).collect();
    let top: Vec<usize> = l.iter().copied().filter(|&x| x != 0).collect();
    let (p, q) = (bottom.len(), top.len());
    // vertices 0..p bottom, p..p+q top
    let mut cand = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            cand.push((i, j));
        }
    }
    for i in 0..p {
        for j in 0..q {
            cand.push((i, p + j));
        }
    }
    for i in 0..q {
        for j in i + 1..q {
            cand.push((p + i, p + j));
        }
    }
    let mut cap: Vec<usize> = bottom.iter().chain(top.iter()).copied().collect();
    let mut chosen = vec![0usize; cand.len()];
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        cand: &[(usize, usize)],
        cap: &mut [usize],
        chosen: &mut [usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if idx == cand.len() {
            if cap.iter().all(|&c| c == 0) {
                out.push(chosen.to_vec());
            }
            return;
        }
        let (u, v) = cand[idx];
        // a vertex whose last candidate edge is this one must be saturated here
        let max = cap[u].min(cap[v]);
        for t in 0..=max {
            cap[u] -= t;
            cap[v] -= t;
            chosen[idx] = t;
            let dead = (0..cap.len())
                .any(|w| cap[w] > 0 && !cand[idx + 1..].iter().any(|&(a, b)| a == w || b == w));
            if !dead {
                rec(idx + 1, cand, cap, chosen, out);
            }
            cap[u] += t;
            cap[v] += t;
        }
        chosen[idx] = 0;
    }
    let mut raw = Vec::new();
    rec(0, &cand, &mut cap, &mut chosen, &mut raw);
    for ch in raw {
        let mut m = Matching {
            bottom: bottom.clone(),
            top: top.clone(),
            ..Default::default()
        };
        for (&(u, v), &t) in cand.iter().zip(&ch) {
            if t == 0 {
                continue;
            }
            if v < p {
                m.caps.push((u, v, t));
            } else if u < p {
                m.through.push((u, v - p, t));
            } else {
                m.cups.push((u - p, v - p, t));
            }
        }
        out.push(m);
    }
    out
}

fn zone_rank(g: &Gen) -> Option<u8> {
    match g {
        Gen::Split { .. } => Some(0),
        Gen::Cap { .. } => Some(1),
        Gen::Cross { .. } => None,
        Gen::Cup { .. } => Some(3),
        Gen::Merge { .. } => Some(4),
    }
}

/// Splits, then caps, then cups, then merges, with crossings anywhere in between.
pub fn in_permitted_zones(d: &WebDiagram) -> bool {
    let ranks: Vec<u8> = d
        .slices()
        .iter()
        .filter_map(|s| zone_rank(&s.gen))
        .collect();
    ranks.windows(2).all(|w| w[0] <= w[1])
}

type Group = BTreeSet<usize>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct GroupSig {
    middle: Vec<Group>,
    caps: BTreeSet<(Group, Group)>,
}

/// Planar merge/cap diagrams out of `k`, one per connectivity pattern.
fn merge_cap_structures(k: &[usize]) -> Vec<(WebDiagram, Vec<usize>)> {
    let mut found: BTreeMap<GroupSig, (Vec<Slice>, Vec<usize>)> = BTreeMap::new();
    fn rec(
        labels: Vec<usize>,
        groups: Vec<Group>,
        caps: BTreeSet<(Group, Group)>,
        slices: Vec<Slice>,
        found: &mut BTreeMap<GroupSig, (Vec<Slice>, Vec<usize>)>,
    ) {
        let sig = GroupSig {
            middle: groups.clone(),
            caps: caps.clone(),
        };
        if found.contains_key(&sig) {
            return;
        }
        found.insert(sig, (slices.clone(), labels.clone()));
        for i in 0..labels.len().saturating_sub(1) {
            let (a, b) = (labels[i], labels[i + 1]);
            let mut l2 = labels.clone();
            l2.splice(i..i + 2, [a + b]);
            let mut g2 = groups.clone();
            let merged: Group = g2[i].union(&g2[i + 1]).copied().collect();
            g2.splice(i..i + 2, [merged]);
            let mut s2 = slices.clone();
            s2.push(Slice {
                gen: Gen::Merge { k: a, l: b },
                pos: i,
            });
            rec(l2, g2, caps.clone(), s2, found);
            if a == b {
                let mut l3 = labels.clone();
                l3.drain(i..i + 2);
                let mut g3 = groups.clone();
                let pair = (g3[i].clone(), g3[i + 1].clone());
                g3.drain(i..i + 2);
                let mut c3 = caps.clone();
                c3.insert(pair);
                let mut s3 = slices.clone();
                s3.push(Slice {
                    gen: Gen::Cap { k: a },
                    pos: i,
                });
                rec(l3, g3, c3, s3, found);
            }
        }
    }
    let groups = (0..k.len()).map(|i| std::iter::once(i).collect()).collect();
    rec(k.to_vec(), groups, BTreeSet::new(), Vec::new(), &mut found);
    found
        .into_values()
        .map(|(slices, labels)| {
            (
                WebDiagram::from_raw(k.to_vec(), &slices).expect("merge/cap structure"),
                labels,
            )
        })
        .collect()
}

fn permutations_matching(from: &[usize], to: &[usize]) -> Vec<Vec<usize>> {
    // perm[i] = destination of strand i
    fn rec(
        i: usize,
        from: &[usize],
        to: &[usize],
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == from.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..to.len() {
            if !used[j] && to[j] == from[i] {
                used[j] = true;
                cur.push(j);
                rec(i + 1, from, to, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    if from.len() == to.len() {
        rec(
            0,
            from,
            to,
            &mut vec![false; to.len()],
            &mut Vec::new(),
            &mut out,
        );
    }
    out
}

fn permutation_diagram(labels: &[usize], perm: &[usize]) -> WebDiagram {
    let mut b = Builder {
        labels: labels.to_vec(),
        tags: (0..labels.len()).map(Piece::Through).collect(),
        slices: Vec::new(),
    };
    b.sort_by_rank(|p| match p {
        Piece::Through(i) => perm[*i],
        _ => unreachable!(),
    });
    WebDiagram::from_raw(labels.to_vec(), &b.slices).expect("permutation diagram")
}

/// All mfm sandwich diagrams K → L: merges and caps, a permutation, splits and cups.
pub fn enumerate_mfm(k: &[usize], l: &[usize]) -> Vec<WebDiagram> {
    let k: Vec<usize> = k.iter().copied().filter(|&x| x != 0).collect();
    let l: Vec<usize> = l.iter().copied().filter(|&x| x != 0).collect();
    let bottoms = merge_cap_structures(&k);
    let tops = merge_cap_structures(&l);
    let mut out = Vec::new();
    for (bd, bm) in &bottoms {
        for (td, tm) in &tops {
            for perm in permutations_matching(bm, tm) {
                let mid = permutation_diagram(bm, &perm);
                let d = WebDiagram::chain(&[bd.clone(), mid, td.flipped()])
                    .expect("mfm boundaries agree");
                out.push(d);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let e = enumerate_fmf(&[], &[]);
        assert_eq!(e, vec![WebDiagram::identity(&[])]);
        assert_eq!(enumerate_fmf(&[1, 1], &[1, 1]).len(), 3);
        assert_eq!(enumerate_mfm(&[1, 1], &[1, 1]).len(), 4);
        assert_eq!(enumerate_mfm(&[], &[]).len(), 1);
        assert!(enumerate_fmf(&[1], &[]).is_empty());
    }

    #[test]
    fn zones_hold() {
        for (k, l) in [
            (vec![2, 2], vec![1, 1, 2, 2, 2]),
            (vec![1, 2, 1], vec![2, 2]),
            (vec![3, 1], vec![1, 1, 2]),
        ] {
            for d in enumerate_fmf(&k, &l) {
                assert!(in_permitted_zones(&d), "{d}");
                assert_eq!(d.source(), &k[..]);
                assert_eq!(d.target(), &l[..]);
            }
        }
    }
}
