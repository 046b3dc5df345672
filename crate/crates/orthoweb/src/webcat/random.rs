//! Random composites of generators between fixed boundaries, for property tests.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Gen, Slice, WebDiagram};

/// Limits on the intermediate objects a random walk may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateBounds {
    /// Largest allowed label (usually N).
    pub max_label: usize,
    pub max_strands: usize,
    pub max_total: usize,
}

impl StateBounds {
    pub fn new(max_label: usize) -> Self {
        StateBounds {
            max_label,
            max_strands: 5,
            max_total: 6,
        }
    }

    fn admits(&self, s: &[usize]) -> bool {
        s.len() <= self.max_strands
            && s.iter().sum::<usize>() <= self.max_total
            && s.iter().all(|&x| x >= 1 && x <= self.max_label)
    }

    fn moves(&self, s: &[usize]) -> Vec<(Slice, Vec<usize>)> {
        let mut out = Vec::new();
        let mut push = |gen: Gen, pos: usize| {
            let inp = gen.inputs();
            let mut t = s[..pos].to_vec();
            t.extend(gen.outputs());
            t.extend_from_slice(&s[pos + inp.len()..]);
            if self.admits(&t) {
                out.push((Slice { gen, pos }, t));
            }
        };
        for p in 0..s.len() {
            for a in 1..s[p] {
                push(Gen::Split { k: a, l: s[p] - a }, p);
            }
            if p + 1 < s.len() {
                let (k, l) = (s[p], s[p + 1]);
                push(Gen::Merge { k, l }, p);
                push(Gen::Cross { k, l }, p);
                if k == l {
                    push(Gen::Cap { k }, p);
                }
            }
        }
        for p in 0..=s.len() {
            for k in 1..=self.max_label {
                push(Gen::Cup { k }, p);
            }
        }
        out
    }
}

/// Distances to a fixed target object, over the bounded state graph.
pub struct CompositeSampler {
    bounds: StateBounds,
    target: Vec<usize>,
    dist: HashMap<Vec<usize>, usize>,
}

impl CompositeSampler {
    pub fn new(target: &[usize], bounds: StateBounds) -> Self {
        let target: Vec<usize> = target.to_vec();
        let mut dist = HashMap::new();
        if bounds.admits(&target) {
            // every move has an inverse move, so distances from the target are distances to it
            let mut queue = VecDeque::from([target.clone()]);
            dist.insert(target.clone(), 0);
            while let Some(s) = queue.pop_front() {
                let d = dist[&s];
                for (_, t) in bounds.moves(&s) {
                    if !dist.contains_key(&t) {
                        dist.insert(t.clone(), d + 1);
                        queue.push_back(t);
                    }
                }
            }
        }
        CompositeSampler {
            bounds,
            target,
            dist,
        }
    }

    /// `steps` random moves from `source`, then a random shortest path to the target.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        source: &[usize],
        steps: usize,
        rng: &mut R,
    ) -> Option<WebDiagram> {
        let mut cur = source.to_vec();
        self.dist.get(&cur)?;
        let mut slices = Vec::new();
        for _ in 0..steps {
            let moves: Vec<_> = self
                .bounds
                .moves(&cur)
                .into_iter()
                .filter(|(_, t)| self.dist.contains_key(t))
                .collect();
            let (s, t) = moves.choose(rng)?.clone();
            slices.push(s);
            cur = t;
        }
        while cur != self.target {
            let d = self.dist[&cur];
            let moves: Vec<_> = self
                .bounds
                .moves(&cur)
                .into_iter()
                .filter(|(_, t)| self.dist.get(t) == Some(&(d - 1)))
                .collect();
            let (s, t) = moves.choose(rng).expect("a shortest path exists").clone();
            slices.push(s);
            cur = t;
        }
        Some(WebDiagram::from_raw(source.to_vec(), &slices).expect("walk stays consistent"))
    }
}

/// A random diagram `source → target`, or `None` when the bounded state graph does not connect them.
pub fn random_composite<R: Rng + ?Sized>(
    source: &[usize],
    target: &[usize],
    bounds: StateBounds,
    steps: usize,
    rng: &mut R,
) -> Option<WebDiagram> {
    CompositeSampler::new(target, bounds).sample(source, steps, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn boundaries_are_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = StateBounds::new(3);
        for _ in 0..20 {
            let d = random_composite(&[1, 2], &[3], b, 4, &mut rng).unwrap();
            assert_eq!(d.source(), &[1, 2]);
            assert_eq!(d.target(), &[3]);
        }
        // parity of the total label is preserved by every generator
        assert!(random_composite(&[1], &[], b, 3, &mut rng).is_none());
    }
}
