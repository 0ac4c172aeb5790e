//! The graph Γ_X(G): vertices are group elements, with x and y joined when
//! ⟨x, y⟩ lies outside the class X. Loops (⟨x⟩ outside X) are tracked
//! separately from the simple adjacency.
//!
//! The accounting identity 2·eta + |loops| = bad_ordered ties the graph to
//! the ordered-pair count behind the probability p_X.

use crate::classes::{in_class, pair_in_class, subgroup_closure, ClassSpec};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::group::Group;
use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num::{BigInt, BigRational};
use std::collections::HashMap;
use std::fmt::Write as _;

/// Γ_X(G) with exact pair accounting.
#[derive(Debug, Clone)]
pub struct XGraph<'g> {
    group: &'g Group,
    class: ClassSpec,
    adjacency: Vec<FixedBitSet>,
    bad_rows: Vec<FixedBitSet>,
    loops: FixedBitSet,
    eta: u64,
    bad_ordered: u64,
}

/// A subset M together with its common bad neighborhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmnWitness {
    pub m_set: Vec<usize>,
    pub bad_common: Vec<usize>,
}

/// Result of a condition X(m,n) check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XmnOutcome {
    /// No subsets M, N of the requested sizes are all-bad.
    Satisfied,
    /// m or n exceeds |G|; no subsets of that size exist.
    SatisfiedVacuously,
    /// Some M of size m has at least n common bad partners.
    Violated(XmnWitness),
}

impl XmnOutcome {
    pub fn holds(&self) -> bool {
        !matches!(self, XmnOutcome::Violated(_))
    }
}

/// n*(m) with the maximizing subset.
#[derive(Debug, Clone)]
pub struct NStar {
    pub value: usize,
    pub witness: XmnWitness,
}

impl<'g> XGraph<'g> {
    /// Builds Γ_X(G). The class predicate runs once per distinct subgroup;
    /// unordered pairs are classified once and mirrored.
    pub fn build(group: &'g Group, class: ClassSpec) -> XGraph<'g> {
        let t = group.order();
        let mut adjacency = vec![FixedBitSet::with_capacity(t); t];
        let mut loops = FixedBitSet::with_capacity(t);
        let mut verdicts: HashMap<Box<[u16]>, bool> = HashMap::new();
        for x in 0..t {
            for y in x..t {
                let h = subgroup_closure(group, &[x, y]);
                let key: Box<[u16]> = h.members().iter().map(|&i| i as u16).collect();
                let good = *verdicts
                    .entry(key)
                    .or_insert_with(|| in_class(group, &h, class.id));
                if !good {
                    if x == y {
                        loops.insert(x);
                    } else {
                        adjacency[x].insert(y);
                        adjacency[y].insert(x);
                    }
                }
            }
        }
        let eta: u64 = adjacency
            .iter()
            .map(|r| r.count_ones(..) as u64)
            .sum::<u64>()
            / 2;
        let bad_ordered = 2 * eta + loops.count_ones(..) as u64;
        let bad_rows = adjacency
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                if loops.contains(i) {
                    r.insert(i);
                }
                r
            })
            .collect();
        XGraph {
            group,
            class,
            adjacency,
            bad_rows,
            loops,
            eta,
            bad_ordered,
        }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn class(&self) -> &ClassSpec {
        &self.class
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Unordered adjacent pairs of distinct vertices.
    pub fn eta(&self) -> u64 {
        self.eta
    }

    /// Ordered pairs (x, y), including x = y, with ⟨x, y⟩ outside the class.
    pub fn bad_ordered(&self) -> u64 {
        self.bad_ordered
    }

    pub fn loops(&self) -> &FixedBitSet {
        &self.loops
    }

    pub fn loop_count(&self) -> u64 {
        self.loops.count_ones(..) as u64
    }

    pub fn adjacency(&self, x: usize) -> &FixedBitSet {
        &self.adjacency[x]
    }

    /// Row of bad partners of x: its adjacency plus x itself when ⟨x⟩ is
    /// outside the class.
    pub fn bad_row(&self, x: usize) -> &FixedBitSet {
        &self.bad_rows[x]
    }

    /// p_X(G) = (|G|² − bad_ordered) / |G|², over ordered pairs with
    /// replacement, in lowest terms.
    pub fn probability(&self) -> BigRational {
        let t = BigInt::from(self.order());
        let square = t.clone() * t;
        BigRational::new(square.clone() - BigInt::from(self.bad_ordered), square)
    }

    /// { y : every x in `m_set` has ⟨x, y⟩ outside the class }. The pair
    /// (x, x) counts as bad exactly when x is a loop. `m_set` must be
    /// nonempty with valid indices.
    pub fn common_bad_neighborhood(&self, m_set: &[usize]) -> Vec<usize> {
        self.common_bad_bits(m_set).ones().collect()
    }

    fn common_bad_bits(&self, m_set: &[usize]) -> FixedBitSet {
        assert!(!m_set.is_empty(), "m_set must be nonempty");
        let mut acc = self.bad_rows[m_set[0]].clone();
        for &x in &m_set[1..] {
            acc.intersect_with(&self.bad_rows[x]);
        }
        acc
    }

    /// Decides the condition X(m,n): true unless some subsets M, N with
    /// |M| = m, |N| = n (overlap allowed) are bad on every cross pair.
    /// Equivalently, false iff some M of size m has a common bad
    /// neighborhood of size at least n. Uncapped; pruning keeps the subset
    /// walk tight. The returned witness is the lexicographically first.
    pub fn satisfies_xmn(&self, m: usize, n: usize) -> Result<XmnOutcome> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(
                "condition sides m and n must be positive".into(),
            ));
        }
        let t = self.order();
        if m > t || n > t {
            return Ok(XmnOutcome::SatisfiedVacuously);
        }
        let mut m_set = Vec::with_capacity(m);
        match self.find_bad_subset(0, m, n, None, &mut m_set) {
            Some(common) => Ok(XmnOutcome::Violated(XmnWitness {
                m_set,
                bad_common: common.ones().collect(),
            })),
            None => Ok(XmnOutcome::Satisfied),
        }
    }

    fn find_bad_subset(
        &self,
        from: usize,
        m: usize,
        n: usize,
        prev: Option<&FixedBitSet>,
        m_set: &mut Vec<usize>,
    ) -> Option<FixedBitSet> {
        if m_set.len() == m {
            return prev.cloned();
        }
        let t = self.order();
        let needed = m - m_set.len();
        for x in from..t {
            if t - x < needed {
                break;
            }
            let mut next = self.bad_rows[x].clone();
            if let Some(p) = prev {
                next.intersect_with(p);
            }
            if next.count_ones(..) < n {
                continue;
            }
            m_set.push(x);
            if let Some(w) = self.find_bad_subset(x + 1, m, n, Some(&next), m_set) {
                return Some(w);
            }
            m_set.pop();
        }
        None
    }

    /// n*(m) = 1 + the maximum common bad neighborhood size over m-subsets,
    /// so the condition X(m,n) fails below n*(m) and holds from it on. The
    /// witness is the lexicographically first maximizer.
    pub fn n_star(&self, m: usize, m_cap: usize) -> Result<NStar> {
        let t = self.order();
        if m == 0 {
            return Err(Error::InvalidInput("m must be positive".into()));
        }
        if m > t {
            return Err(Error::InvalidInput(format!(
                "m = {m} exceeds the group order {t}; no m-subsets exist"
            )));
        }
        if m > m_cap {
            return Err(Error::SubsetCapExceeded { m, cap: m_cap });
        }
        let mut best: Option<(usize, Vec<usize>, FixedBitSet)> = None;
        let mut m_set = Vec::with_capacity(m);
        self.maximize_bad_subset(0, m, None, &mut m_set, &mut best);
        let (value, m_set, common) = best.expect("m <= |G| guarantees a complete subset");
        Ok(NStar {
            value: value + 1,
            witness: XmnWitness {
                m_set,
                bad_common: common.ones().collect(),
            },
        })
    }

    fn maximize_bad_subset(
        &self,
        from: usize,
        m: usize,
        prev: Option<&FixedBitSet>,
        m_set: &mut Vec<usize>,
        best: &mut Option<(usize, Vec<usize>, FixedBitSet)>,
    ) {
        if m_set.len() == m {
            let common = prev.expect("m >= 1");
            let count = common.count_ones(..);
            if best.as_ref().map_or(true, |(b, _, _)| count > *b) {
                *best = Some((count, m_set.clone(), common.clone()));
            }
            return;
        }
        let t = self.order();
        let needed = m - m_set.len();
        for x in from..t {
            if t - x < needed {
                break;
            }
            let mut next = self.bad_rows[x].clone();
            if let Some(p) = prev {
                next.intersect_with(p);
            }
            // intersections only shrink, so a partial that cannot strictly
            // beat the incumbent is dead
            if let Some((b, _, _)) = best {
                if next.count_ones(..) <= *b {
                    continue;
                }
            }
            m_set.push(x);
            self.maximize_bad_subset(x + 1, m, Some(&next), m_set, best);
            m_set.pop();
        }
    }

    /// The loop-free graph underlying Γ_X(G).
    pub fn to_simple_graph(&self) -> SimpleGraph {
        SimpleGraph::from_rows(self.adjacency.clone())
    }

    /// DOT export: vertices labeled by index and cycle notation, bad pairs
    /// as edges, loops as dashed self edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "graph \"{}_{}\" {{",
            self.group.name(),
            self.class.id
        );
        for (i, p) in self.group.elements().iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{}: {}\"];", i, p.cycle_notation());
        }
        for x in 0..self.order() {
            for y in self.adjacency[x].ones().filter(|&y| y > x) {
                let _ = writeln!(out, "  {x} -- {y};");
            }
        }
        for x in self.loops.ones() {
            let _ = writeln!(out, "  {x} -- {x} [style=dashed];");
        }
        out.push_str("}\n");
        out
    }

    /// CSV edge list of the loop-free graph, one `x_index,y_index` row per
    /// unordered edge, ascending.
    pub fn to_edge_csv(&self) -> String {
        let mut out = String::from("x_index,y_index\n");
        for x in 0..self.order() {
            for y in self.adjacency[x].ones().filter(|&y| y > x) {
                let _ = writeln!(out, "{x},{y}");
            }
        }
        out
    }
}

/// p_X(G) for a class id, building the graph once and discarding it.
pub fn x_probability(group: &Group, id: crate::classes::ClassId) -> BigRational {
    XGraph::build(group, crate::classes::class_spec(id)).probability()
}

/// Ground-truth oracle for the condition X(m,n): enumerates every pair of
/// subsets M, N literally (overlap allowed) and evaluates the definition
/// with fresh pair classifications. Deliberately naive; capped hard.
pub fn brute_force_xmn_oracle(
    group: &Group,
    class: &ClassSpec,
    m: usize,
    n: usize,
) -> Result<bool> {
    const MAX_ORDER: usize = 16;
    const MAX_SIDE: usize = 3;
    let t = group.order();
    if t > MAX_ORDER {
        return Err(Error::OracleLimit(format!(
            "oracle accepts groups of order at most {MAX_ORDER}, got {t}"
        )));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "condition sides m and n must be positive".into(),
        ));
    }
    if m > MAX_SIDE || n > MAX_SIDE {
        return Err(Error::OracleLimit(format!(
            "oracle accepts m, n at most {MAX_SIDE}, got ({m}, {n})"
        )));
    }
    if m > t || n > t {
        return Ok(true); // no subsets of that size
    }
    let mut bad = vec![vec![false; t]; t];
    for (x, row) in bad.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = !pair_in_class(group, x, y, class.id);
        }
    }
    for m_sub in (0..t).combinations(m) {
        for n_sub in (0..t).combinations(n) {
            let all_bad = m_sub
                .iter()
                .all(|&x| n_sub.iter().all(|&y| bad[x][y]));
            if all_bad {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
