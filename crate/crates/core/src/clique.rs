//! Clique search on the compatibility graph.
//!
//! Exact mode enumerates every maximum clique by branch and bound with a greedy colouring
//! bound (Tomita-style). Vertex order is fixed, so results are deterministic; each clique is
//! reported sorted and the list is sorted lexicographically.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::search::CompatibilityGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliqueMode {
    /// All maximum cliques.
    Exact,
    /// One maximal clique by greedy extension.
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn empty(n: usize) -> Self {
        Bitset { words: vec![0; n.div_ceil(64)] }
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    #[inline]
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.words.iter().position(|&w| w != 0).map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &Bitset) -> Bitset {
        Bitset { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    fn and_not(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
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

struct Search<'a> {
    adj: &'a [Bitset],
    best: usize,
    cliques: Vec<Vec<usize>>,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p` in index order; returns vertices with their colour
    /// numbers, non-decreasing.
    fn colour(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.len());
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.and_not(&self.adj[v]);
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bitset) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(t) = self.deadline {
                if Instant::now() >= t {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return;
        }
        if p.is_empty() {
            if r.len() > self.best {
                self.best = r.len();
                self.cliques.clear();
            }
            if r.len() == self.best {
                let mut c = r.clone();
                c.sort_unstable();
                self.cliques.push(c);
            }
            return;
        }
        let order = self.colour(&p);
        for &(v, c) in order.iter().rev() {
            // strict: cliques tying the incumbent are still enumerated
            if r.len() + c < self.best {
                return;
            }
            r.push(v);
            let np = p.and(&self.adj[v]);
            self.expand(r, np);
            r.pop();
            p.remove(v);
            if self.timed_out {
                return;
            }
        }
    }
}

fn adjacency_bitsets(g: &CompatibilityGraph) -> Vec<Bitset> {
    let n = g.vertex_count();
    (0..n)
        .map(|i| {
            let mut b = Bitset::empty(n);
            for j in 0..n {
                if g.is_edge(i, j) {
                    b.insert(j);
                }
            }
            b
        })
        .collect()
}

/// All maximum cliques (exact mode) or one greedy maximal clique.
pub fn find_cliques(g: &CompatibilityGraph, mode: CliqueMode, time_limit: Option<Duration>) -> Result<Vec<Vec<usize>>> {
    match mode {
        CliqueMode::Greedy => Ok(if g.vertex_count() == 0 { Vec::new() } else { vec![greedy_clique(g)] }),
        CliqueMode::Exact => exact_cliques(g, time_limit),
    }
}

fn exact_cliques(g: &CompatibilityGraph, time_limit: Option<Duration>) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj = adjacency_bitsets(g);
    let mut s = Search { adj: &adj, best: 0, cliques: Vec::new(), deadline: time_limit.map(|t| Instant::now() + t), nodes: 0, timed_out: false };
    let mut r = Vec::new();
    s.expand(&mut r, Bitset::full(n));
    if s.timed_out {
        let best = s.cliques.into_iter().min().unwrap_or_default();
        return Err(Error::TimeLimitExceeded { best });
    }
    let mut cliques = s.cliques;
    cliques.sort();
    cliques.dedup();
    Ok(cliques)
}

/// Repeatedly adds the candidate with most neighbours among the remaining candidates, ties
/// broken by lowest index.
pub fn greedy_clique(g: &CompatibilityGraph) -> Vec<usize> {
    let adj = adjacency_bitsets(g);
    let mut cand = Bitset::full(g.vertex_count());
    let mut clique = Vec::new();
    while !cand.is_empty() {
        let v = cand.iter().max_by_key(|&v| (adj[v].and(&cand).len(), std::cmp::Reverse(v))).expect("non-empty");
        clique.push(v);
        cand = cand.and(&adj[v]);
    }
    clique.sort_unstable();
    clique
}
