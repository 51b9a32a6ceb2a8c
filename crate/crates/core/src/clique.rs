//! Exact maximum clique by branch and bound with a greedy-colouring bound.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        Self { words: vec![0; n.div_ceil(64)] }
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn intersect(&self, other: &Self) -> Self {
        Self { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Undirected simple graph on `0..n` with bitset adjacency.
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self { n, adj: (0..n).map(|_| BitSet::new(n)).collect() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn degree(&self, u: usize) -> usize {
        self.adj[u].words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Search<'g> {
    g: &'g Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    node_cap: u64,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p`; returns vertices in ascending colour
    /// order together with their colour numbers (1-based).
    fn colour(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = p.clone();
        let mut out = Vec::new();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                uncoloured.remove(v);
                out.push((v, colour));
                for (qw, aw) in q.words.iter_mut().zip(&self.g.adj[v].words) {
                    *qw &= !aw;
                }
            }
        }
        out
    }

    fn expand(&mut self, mut p: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::BudgetExceeded { required: self.nodes as u128, cap: self.node_cap as u128 });
        }
        let order = self.colour(&p);
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best.len() {
                return Ok(());
            }
            self.current.push(v);
            let np = p.intersect(&self.g.adj[v]);
            if np.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(np)?;
            }
            self.current.pop();
            p.remove(v);
        }
        Ok(())
    }
}

/// A maximum clique of `g` that contains every vertex of `forced` (which must
/// itself be a clique). Fails with `BudgetExceeded` after `node_cap` search nodes.
pub fn max_clique(g: &Graph, forced: &[usize], node_cap: u64) -> Result<Vec<usize>> {
    let mut p = BitSet::new(g.len());
    for v in 0..g.len() {
        p.insert(v);
    }
    for &f in forced {
        p = p.intersect(&g.adj[f]);
    }
    // Vertices are tried highest-degree first by the colouring order below, so
    // seed the incumbent greedily along descending degree.
    let mut by_degree: Vec<usize> = p.iter().collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut greedy = forced.to_vec();
    for v in by_degree {
        if greedy.iter().all(|&u| g.has_edge(u, v)) {
            greedy.push(v);
        }
    }
    let mut s = Search { g, best: greedy, current: forced.to_vec(), nodes: 0, node_cap };
    if !p.is_empty() {
        s.expand(p)?;
    }
    let mut best = s.best;
    best.sort_unstable();
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: &Graph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|mask| {
                (0..n).all(|i| {
                    mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || g.has_edge(i, j))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let mut state = 12345u64;
        for trial in 0..60 {
            let n = 4 + trial % 11;
            let mut g = Graph::new(n);
            for i in 0..n {
                for j in i + 1..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if (state >> 33) % 100 < 55 {
                        g.add_edge(i, j);
                    }
                }
            }
            let c = max_clique(&g, &[], u64::MAX).unwrap();
            assert_eq!(c.len(), brute(&g));
            for (k, &u) in c.iter().enumerate() {
                for &v in &c[k + 1..] {
                    assert!(g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn forced_vertex_and_budget() {
        let mut g = Graph::new(5);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4)] {
            g.add_edge(u, v);
        }
        assert_eq!(max_clique(&g, &[3], 100).unwrap(), vec![3, 4]);
        assert_eq!(max_clique(&g, &[], 100).unwrap(), vec![0, 1, 2]);
    }
}
