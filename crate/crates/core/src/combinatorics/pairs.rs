use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::PlaneTree;
use crate::error::{Error, Result};

/// Default cap on the number of index pairs `n^{2k}` a brute-force count may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Row indices `i` and column indices `j` of one term of `tr (X X*)^k`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexPair {
    pub i: Vec<u32>,
    pub j: Vec<u32>,
}

impl IndexPair {
    pub fn new(i: Vec<u32>, j: Vec<u32>) -> Result<Self> {
        if i.is_empty() || i.len() != j.len() {
            return Err(Error::Input(format!("index vectors must have equal positive length, got {} and {}", i.len(), j.len())));
        }
        Ok(Self { i, j })
    }

    pub fn k(&self) -> usize {
        self.i.len()
    }

    /// The closed walk `(1,i_1) -> (2,j_1) -> (1,i_2) -> ... -> (2,j_k)` as tagged vertices.
    fn walk(&self) -> Vec<(u8, u32)> {
        self.i.iter().zip(&self.j).flat_map(|(&a, &b)| [(1u8, a), (2u8, b)]).collect()
    }

    /// Distinct labels used by either index vector.
    pub fn label_set(&self) -> Vec<u32> {
        let s: BTreeSet<u32> = self.i.iter().chain(&self.j).copied().collect();
        s.into_iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    NotContributing,
    /// Tree on `k+1` vertices, every edge walked twice, each `j` at most its two `i` neighbours.
    Delta,
    /// A `Delta` pair whose `i` labels and `j` labels are disjoint.
    DeltaHat,
}

/// Strongest class of `p`; entries must lie in `1..=n`.
pub fn classify_index_pair(p: &IndexPair, n: u32) -> Result<PairClass> {
    let k = p.k();
    if k == 0 || p.j.len() != k {
        return Err(Error::Input("index vectors must have equal positive length".into()));
    }
    if p.i.iter().chain(&p.j).any(|&v| v == 0 || v > n) {
        return Err(Error::Input(format!("indices must lie in 1..={n}")));
    }
    for r in 0..k {
        let next = p.i[(r + 1) % k];
        if p.j[r] > p.i[r] || p.j[r] > next {
            return Ok(PairClass::NotContributing);
        }
    }
    let walk = p.walk();
    let len = walk.len();
    let mut vertices: Vec<(u8, u32)> = Vec::with_capacity(k + 1);
    for v in &walk {
        if !vertices.contains(v) {
            if vertices.len() == k + 1 {
                return Ok(PairClass::NotContributing);
            }
            vertices.push(*v);
        }
    }
    if vertices.len() != k + 1 {
        return Ok(PairClass::NotContributing);
    }
    // Directed steps; a tree walk of 2k steps uses each of its k edges once each way.
    let mut steps: Vec<((u8, u32), (u8, u32))> = Vec::with_capacity(len);
    for s in 0..len {
        let step = (walk[s], walk[(s + 1) % len]);
        if steps.contains(&step) {
            return Ok(PairClass::NotContributing);
        }
        steps.push(step);
    }
    if !steps.iter().all(|&(a, b)| steps.contains(&(b, a))) {
        return Ok(PairClass::NotContributing);
    }
    if p.i.iter().any(|a| p.j.contains(a)) {
        Ok(PairClass::Delta)
    } else {
        Ok(PairClass::DeltaHat)
    }
}

/// Shape of the walk of a pair, computed without reference to the classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraversalProfile {
    pub distinct_vertices: usize,
    pub distinct_edges: usize,
    /// Every undirected edge is walked exactly twice, once in each direction.
    pub each_edge_twice_opposite: bool,
}

pub fn traversal_profile(p: &IndexPair) -> TraversalProfile {
    let walk = p.walk();
    let len = walk.len();
    let vertices: BTreeSet<(u8, u32)> = walk.iter().copied().collect();
    let mut directed: BTreeMap<((u8, u32), (u8, u32)), usize> = BTreeMap::new();
    for s in 0..len {
        *directed.entry((walk[s], walk[(s + 1) % len])).or_default() += 1;
    }
    let undirected: BTreeSet<_> = directed.keys().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let each_edge_twice_opposite = undirected
        .iter()
        .all(|&(a, b)| directed.get(&(a, b)) == Some(&1) && directed.get(&(b, a)) == Some(&1));
    TraversalProfile {
        distinct_vertices: vertices.len(),
        distinct_edges: undirected.len(),
        each_edge_twice_opposite,
    }
}

/// Plane tree of a contributing pair: rooted at `(1, i_1)`, children ordered by
/// first appearance along the walk, labelled by index value.
pub fn pair_to_tree(p: &IndexPair) -> Result<PlaneTree> {
    let walk = p.walk();
    let mut ids: Vec<(u8, u32)> = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut prev: Option<usize> = None;
    for v in &walk {
        let id = match ids.iter().position(|u| u == v) {
            Some(id) => id,
            None => {
                ids.push(*v);
                children.push(Vec::new());
                let id = ids.len() - 1;
                if let Some(pr) = prev {
                    children[pr].push(id);
                }
                id
            }
        };
        prev = Some(id);
    }
    if ids.len() != p.k() + 1 {
        return Err(Error::Input("pair does not span a tree on k+1 vertices".into()));
    }
    let labels = ids.iter().map(|&(_, l)| l).collect();
    Ok(PlaneTree { root: 0, children, labels })
}

/// The pair read off the contour walk of `tree`: even steps give `i`, odd steps `j`.
pub fn tree_to_pair(tree: &PlaneTree) -> IndexPair {
    fn contour(tree: &PlaneTree, v: usize, out: &mut Vec<u32>) {
        out.push(tree.labels[v]);
        for &c in &tree.children[v] {
            contour(tree, c, out);
            out.push(tree.labels[v]);
        }
    }
    let mut seq = Vec::new();
    contour(tree, tree.root, &mut seq);
    seq.pop();
    let i = seq.iter().step_by(2).copied().collect();
    let j = seq.iter().skip(1).step_by(2).copied().collect();
    IndexPair { i, j }
}

/// Brute-force tally of one enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaHatCount {
    pub n: u32,
    pub k: usize,
    pub delta: u64,
    pub delta_hat: u64,
    /// `C(n, k+1) k^k`.
    pub closed_form: u128,
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, s| acc * (n - s) / (s + 1))
}

fn check_budget(n: u32, k: usize, budget: u64) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::Input("n and k must be positive".into()));
    }
    let total = (n as u128).checked_pow(2 * k as u32);
    match total {
        Some(t) if t <= budget as u128 => Ok(()),
        _ => Err(Error::Range(format!("{n}^{} index pairs exceed the enumeration budget {budget}", 2 * k))),
    }
}

/// Visits every pair with first index `i1`, in lexicographic order of the rest.
fn for_each_pair(n: u32, k: usize, i1: u32, mut f: impl FnMut(&IndexPair)) {
    let mut p = IndexPair { i: vec![1; k], j: vec![1; k] };
    p.i[0] = i1;
    // digits: j_1, i_2, j_2, ..., i_k, j_k
    let slots = 2 * k - 1;
    loop {
        f(&p);
        let mut s = slots;
        loop {
            if s == 0 {
                return;
            }
            s -= 1;
            let slot = if s % 2 == 0 { &mut p.j[s / 2] } else { &mut p.i[s / 2 + 1] };
            if *slot < n {
                *slot += 1;
                break;
            }
            *slot = 1;
        }
    }
}

fn audit(p: &IndexPair, class: PairClass) {
    let prof = traversal_profile(p);
    let k = p.k();
    assert!(
        prof.distinct_vertices == k + 1 && prof.distinct_edges == k && prof.each_edge_twice_opposite,
        "contributing pair {p:?} has walk profile {prof:?}"
    );
    if class == PairClass::DeltaHat {
        for r in 0..k {
            assert!(p.j[r] < p.i[r] && p.j[r] < p.i[(r + 1) % k], "delta-hat pair {p:?} breaks strict dominance");
        }
    }
}

/// Counts `Delta(n, k)` and `Delta-hat(n, k)` over all `n^{2k}` pairs.
pub fn count_delta_hat_with_budget(n: u32, k: usize, budget: u64) -> Result<DeltaHatCount> {
    check_budget(n, k, budget)?;
    let partial: Vec<Result<(u64, u64)>> = (1..=n)
        .into_par_iter()
        .map(|i1| {
            let mut delta = 0u64;
            let mut hat = 0u64;
            let mut err = None;
            for_each_pair(n, k, i1, |p| match classify_index_pair(p, n) {
                Ok(PairClass::NotContributing) => {}
                Ok(c) => {
                    audit(p, c);
                    delta += 1;
                    if c == PairClass::DeltaHat {
                        hat += 1;
                    }
                }
                Err(e) => err = Some(e),
            });
            err.map_or(Ok((delta, hat)), Err)
        })
        .collect();
    let (mut delta, mut delta_hat) = (0, 0);
    for r in partial {
        let (d, h) = r?;
        delta += d;
        delta_hat += h;
    }
    let closed_form = binomial(n as u128, k as u128 + 1) * (k as u128).pow(k as u32);
    Ok(DeltaHatCount { n, k, delta, delta_hat, closed_form })
}

pub fn count_delta_hat(n: u32, k: usize) -> Result<DeltaHatCount> {
    count_delta_hat_with_budget(n, k, DEFAULT_BUDGET)
}

/// Delta-hat pairs grouped by their label set.
pub fn delta_hat_by_label_set(n: u32, k: usize, budget: u64) -> Result<BTreeMap<Vec<u32>, Vec<IndexPair>>> {
    check_budget(n, k, budget)?;
    let mut out: BTreeMap<Vec<u32>, Vec<IndexPair>> = BTreeMap::new();
    for i1 in 1..=n {
        let mut err = None;
        for_each_pair(n, k, i1, |p| match classify_index_pair(p, n) {
            Ok(PairClass::DeltaHat) => out.entry(p.label_set()).or_default().push(p.clone()),
            Ok(_) => {}
            Err(e) => err = Some(e),
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(i: &[u32], j: &[u32]) -> IndexPair {
        IndexPair::new(i.to_vec(), j.to_vec()).unwrap()
    }

    #[test]
    fn classification_examples() {
        let fig = pair(&[5, 5, 3, 7, 5, 6], &[4, 2, 2, 2, 1, 1]);
        assert_eq!(classify_index_pair(&fig, 7).unwrap(), PairClass::DeltaHat);
        assert_eq!(classify_index_pair(&pair(&[1], &[1]), 1).unwrap(), PairClass::Delta);
        assert_eq!(classify_index_pair(&pair(&[2], &[1]), 2).unwrap(), PairClass::DeltaHat);
        assert_eq!(classify_index_pair(&pair(&[1], &[2]), 2).unwrap(), PairClass::NotContributing);
        assert!(classify_index_pair(&pair(&[3], &[1]), 2).is_err());
    }

    #[test]
    fn odometer_visits_everything_once() {
        let mut seen = BTreeSet::new();
        for i1 in 1..=3 {
            for_each_pair(3, 2, i1, |p| {
                assert!(seen.insert((p.i.clone(), p.j.clone())));
            });
        }
        assert_eq!(seen.len(), 81);
    }

    #[test]
    fn figure_pair_round_trips_through_its_tree() {
        let fig = pair(&[5, 5, 3, 7, 5, 6], &[4, 2, 2, 2, 1, 1]);
        let t = pair_to_tree(&fig).unwrap();
        assert_eq!(t.labels[0], 5);
        assert_eq!(tree_to_pair(&t), fig);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(count_delta_hat_with_budget(10, 4, 1_000_000), Err(Error::Range(_))));
    }
}
