//! Plain undirected graphs on index vertices: adjacency bitsets, a complete
//! bipartite subgraph search, and a seeded random generator.

use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use rand::Rng;

/// Default ceiling on the side size `m` of subset enumerations.
pub const DEFAULT_M_CAP: usize = 4;

/// Simple undirected graph without loops.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    rows: Vec<FixedBitSet>,
}

impl SimpleGraph {
    pub fn new(vertices: usize) -> SimpleGraph {
        SimpleGraph {
            rows: vec![FixedBitSet::with_capacity(vertices); vertices],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.rows[a].insert(b);
            self.rows[b].insert(a);
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn edge_count(&self) -> u64 {
        let twice: u64 = self.rows.iter().map(|r| r.count_ones(..) as u64).sum();
        twice / 2
    }

    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> SimpleGraph {
        SimpleGraph { rows }
    }

    /// Erdős–Rényi graph: each of the C(t,2) edges present independently
    /// with probability `p`. Deterministic in the generator state.
    pub fn gnp(vertices: usize, p: f64, rng: &mut impl Rng) -> SimpleGraph {
        let mut g = SimpleGraph::new(vertices);
        for a in 0..vertices {
            for b in (a + 1)..vertices {
                if rng.gen_bool(p.clamp(0.0, 1.0)) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}

/// Searches for a complete bipartite K_{m,n} with disjoint parts: M of size
/// m, N of size n, every cross pair adjacent. Candidates for M are vertices
/// of degree at least n; the common neighborhood of M is disjoint from M
/// automatically (a member would need a self edge), and the explicit
/// difference below keeps that fact local. Returns the lexicographically
/// first witness.
pub fn contains_kmn(
    g: &SimpleGraph,
    m: usize,
    n: usize,
    m_cap: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "bipartite part sizes must be positive".into(),
        ));
    }
    if m > m_cap {
        return Err(Error::SubsetCapExceeded { m, cap: m_cap });
    }
    let t = g.vertex_count();
    let candidates: Vec<usize> = (0..t).filter(|&v| g.degree(v) >= n).collect();
    if candidates.len() < m {
        return Ok(None);
    }
    let mut chosen = Vec::with_capacity(m);
    let mut stack: Vec<FixedBitSet> = Vec::with_capacity(m);
    let found = search(g, &candidates, 0, m, n, &mut chosen, &mut stack);
    Ok(found.map(|common| {
        let m_set: Vec<usize> = chosen.iter().map(|&i| candidates[i]).collect();
        let n_set: Vec<usize> = common
            .ones()
            .filter(|v| !m_set.contains(v))
            .take(n)
            .collect();
        (m_set, n_set)
    }))
}

fn search(
    g: &SimpleGraph,
    candidates: &[usize],
    from: usize,
    m: usize,
    n: usize,
    chosen: &mut Vec<usize>,
    stack: &mut Vec<FixedBitSet>,
) -> Option<FixedBitSet> {
    if chosen.len() == m {
        let common = stack.last().expect("m >= 1");
        let overlap = chosen
            .iter()
            .filter(|&&i| common.contains(candidates[i]))
            .count();
        if common.count_ones(..) - overlap >= n {
            return Some(common.clone());
        }
        return None;
    }
    let needed = m - chosen.len();
    for i in from..candidates.len() {
        if candidates.len() - i < needed {
            break;
        }
        let mut next = g.neighbors(candidates[i]).clone();
        if let Some(prev) = stack.last() {
            next.intersect_with(prev);
        }
        // the common neighborhood only shrinks along a branch
        if next.count_ones(..) < n {
            continue;
        }
        chosen.push(i);
        stack.push(next);
        if let Some(w) = search(g, candidates, i + 1, m, n, chosen, stack) {
            return Some(w);
        }
        stack.pop();
        chosen.pop();
    }
    None
}
