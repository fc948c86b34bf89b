//! Exact maximum clique by branch and bound with a greedy colouring bound
//! (Tomita-style MCQ). Vertices are visited in a fixed order so results are
//! reproducible.

#[derive(Clone, Debug)]
pub struct BitGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    /// Builds the graph joining every pair for which `edge` holds.
    pub fn from_predicate<F: FnMut(usize, usize) -> bool>(n: usize, mut edge: F) -> Self {
        let mut g = BitGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i * self.words + j / 64] |= 1 << (j % 64);
        self.adj[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words..(i + 1) * self.words]
    }
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + b)
        })
    })
}

struct Search<'a> {
    g: &'a BitGraph,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    /// Greedy colouring of `cand`: returns vertices in colour order with
    /// their colour numbers (1-based, non-decreasing).
    fn colour(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.to_vec();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut avail = uncoloured.clone();
            loop {
                let Some(v) = bits(&avail).next() else { break };
                avail[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (a, &nb) in avail.iter_mut().zip(self.g.row(v)) {
                    *a &= !nb;
                }
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        let (order, colours) = self.colour(&cand);
        for idx in (0..order.len()).rev() {
            if self.current.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(&c, &nb)| c & nb).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// A maximum clique, as sorted vertex indices.
pub fn max_clique(g: &BitGraph) -> Vec<usize> {
    if g.is_empty() {
        return Vec::new();
    }
    let mut cand = vec![0u64; g.words];
    for v in 0..g.n {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut s = Search {
        g,
        best: Vec::new(),
        current: Vec::new(),
    };
    s.expand(cand);
    let mut best = s.best;
    best.sort_unstable();
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(g: &BitGraph) -> usize {
        let n = g.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = verts
                .iter()
                .enumerate()
                .all(|(a, &i)| verts[a + 1..].iter().all(|&j| g.has_edge(i, j)));
            if ok {
                best = best.max(verts.len());
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let n = 4 + trial % 11;
            let p = 0.3 + 0.5 * rng.gen::<f64>();
            let g = BitGraph::from_predicate(n, |_, _| rng.gen::<f64>() < p);
            let c = max_clique(&g);
            assert_eq!(c.len(), brute_force(&g));
            for (a, &i) in c.iter().enumerate() {
                for &j in &c[a + 1..] {
                    assert!(g.has_edge(i, j));
                }
            }
        }
    }

    #[test]
    fn complete_and_empty_graphs() {
        assert_eq!(max_clique(&BitGraph::new(0)).len(), 0);
        assert_eq!(max_clique(&BitGraph::new(5)).len(), 1);
        let k70 = BitGraph::from_predicate(70, |_, _| true);
        assert_eq!(max_clique(&k70).len(), 70);
    }
}
