use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `k` accepted by [`count_alternating_trees`] (trees on `k + 1` vertices).
pub const MAX_TREE_K: usize = 7;

/// Rooted plane tree with vertices numbered in preorder (root is 0) and a
/// label in `1..=t` on every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlaneTree {
    pub root: usize,
    /// Ordered children of each vertex.
    pub children: Vec<Vec<usize>>,
    pub labels: Vec<u32>,
}

impl PlaneTree {
    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    /// Tree from a preorder depth sequence (`depths[0] == 0`, each step rises by
    /// at most one level) with the given labels.
    pub fn from_depths(depths: &[usize], labels: Vec<u32>) -> Result<Self> {
        if depths.is_empty() || depths[0] != 0 || labels.len() != depths.len() {
            return Err(Error::Input("depth sequence must start at 0 and match the labels".into()));
        }
        let mut children = vec![Vec::new(); depths.len()];
        let mut stack: Vec<usize> = vec![0];
        for (v, &d) in depths.iter().enumerate().skip(1) {
            if d == 0 || d > stack.len() {
                return Err(Error::Input(format!("invalid depth {d} at position {v}")));
            }
            stack.truncate(d);
            children[stack[d - 1]].push(v);
            stack.push(v);
        }
        Ok(Self { root: 0, children, labels })
    }

    fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.vertex_count()];
        for (v, cs) in self.children.iter().enumerate() {
            for &c in cs {
                p[c] = Some(v);
            }
        }
        p
    }

    /// Every path alternates up and down; checked vertex by vertex: all
    /// neighbours of a vertex lie on the same side of its label.
    pub fn is_alternating(&self) -> bool {
        let parents = self.parents();
        (0..self.vertex_count()).all(|v| {
            let me = self.labels[v];
            let mut nbrs = self.children[v].iter().copied().chain(parents[v]);
            let Some(first) = nbrs.next() else { return true };
            let above = self.labels[first] > me;
            self.labels[first] != me && nbrs.all(|u| self.labels[u] != me && (self.labels[u] > me) == above)
        })
    }

    pub fn root_exceeds_children(&self) -> bool {
        let r = self.labels[self.root];
        self.children[self.root].iter().all(|&c| self.labels[c] < r)
    }
}

/// All preorder depth sequences of plane trees on `t` vertices.
pub fn plane_tree_shapes(t: usize) -> Vec<Vec<usize>> {
    fn extend(cur: &mut Vec<usize>, t: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().unwrap_or(&0);
        for d in 1..=last + 1 {
            cur.push(d);
            extend(cur, t, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t > 0 {
        extend(&mut vec![0], t, &mut out);
    }
    out
}

/// Calls `f` on every alternating labelled plane tree on `k + 1` vertices
/// whose root exceeds its children.
pub fn visit_alternating_trees(k: usize, mut f: impl FnMut(&PlaneTree)) -> Result<()> {
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    if k > MAX_TREE_K {
        return Err(Error::Range(format!("tree enumeration supports k <= {MAX_TREE_K}, got {k}")));
    }
    let t = k + 1;
    for depths in plane_tree_shapes(t) {
        let mut tree = PlaneTree::from_depths(&depths, vec![0; t])?;
        let parent = tree.parents();
        assign(0, &depths, &parent, &mut tree, 0, &mut f);
    }
    Ok(())
}

// Labels go on in preorder. With the root above its children, vertices at even
// depth sit above all their neighbours and odd depths below, so each label only
// has to be compared with its parent's.
fn assign(
    v: usize,
    depths: &[usize],
    parent: &[Option<usize>],
    tree: &mut PlaneTree,
    used: u32,
    f: &mut impl FnMut(&PlaneTree),
) {
    let t = depths.len();
    if v == t {
        f(tree);
        return;
    }
    for l in 1..=t as u32 {
        if used & (1 << l) != 0 {
            continue;
        }
        if let Some(p) = parent[v] {
            let above = depths[p] % 2 == 0;
            if (tree.labels[p] > l) != above {
                continue;
            }
        }
        tree.labels[v] = l;
        assign(v + 1, depths, parent, tree, used | (1 << l), f);
    }
}

pub fn alternating_trees(k: usize) -> Result<Vec<PlaneTree>> {
    let mut out = Vec::new();
    visit_alternating_trees(k, |t| out.push(t.clone()))?;
    Ok(out)
}

/// Number of alternating plane trees on `k + 1` labelled vertices with the
/// root above its children. Each tree is re-checked with [`PlaneTree::is_alternating`].
pub fn count_alternating_trees(k: usize) -> Result<u64> {
    let mut count = 0u64;
    let mut bad = None;
    visit_alternating_trees(k, |t| {
        if t.is_alternating() && t.root_exceeds_children() {
            count += 1;
        } else if bad.is_none() {
            bad = Some(t.clone());
        }
    })?;
    match bad {
        Some(t) => Err(Error::Degeneracy(format!("enumeration produced a non-alternating tree {t:?}"))),
        None => Ok(count),
    }
}
