//! Enumeration of hypertrees by hanging edges from a root.
//!
//! Every hypertree on a vertex set, rooted at its smallest vertex, is built
//! exactly once: the root's edges split the remaining vertices into blocks;
//! inside a block the edge `{root} ∪ W` is followed by sub-hypertrees rooted
//! at each `w ∈ W`, which share out the rest of the block.

use super::{BitIter, Edge, Hypergraph, Hypertree};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_hypertrees`].
pub const MAX_ENUMERATION_N: u32 = 7;

/// All hypertrees on `{1..n}`, sorted by edge count and then canonically.
pub fn enumerate_hypertrees(n: u32) -> Result<Vec<Hypertree>> {
    if n == 0 {
        return Err(Error::Domain("hypertrees need at least one vertex".into()));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::ResourceLimit(format!(
            "enumeration is bounded by n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    Ok(hypertrees_on(n, false))
}

/// All hypertrees on `{1..n}` plus the gap when `gap` is set.
pub fn hypertrees_on(n: u32, gap: bool) -> Vec<Hypertree> {
    let shell = Hypergraph::from_edges(n, gap, vec![]);
    let mask = shell.vertex_mask();
    let root = mask.trailing_zeros();
    let mut out: Vec<Hypertree> = hang(root, mask & !(1 << root))
        .into_iter()
        .map(|edges| {
            let edges = edges.into_iter().map(Edge::from_mask).collect();
            Hypertree::new_unchecked(Hypergraph::from_edges(n, gap, edges))
        })
        .collect();
    out.sort_by(|a, b| a.edges().len().cmp(&b.edges().len()).then_with(|| a.cmp(b)));
    out
}

/// Edge lists of all hypertrees on `rest ∪ {root}`.
fn hang(root: u32, rest: u32) -> Vec<Vec<u32>> {
    if rest == 0 {
        return vec![vec![]];
    }
    let first = rest & rest.wrapping_neg();
    let others = rest & !first;
    let mut out = Vec::new();
    for extra in subsets(others) {
        let block = extra | first;
        let tails = hang(root, rest & !block);
        for within in in_block(root, block) {
            for tail in &tails {
                let mut edges = within.clone();
                edges.extend_from_slice(tail);
                out.push(edges);
            }
        }
    }
    out
}

/// Structures on a block hanging from `root` through a single edge.
fn in_block(root: u32, block: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for w in subsets(block).filter(|&w| w != 0) {
        let edge = w | (1 << root);
        let below: Vec<u32> = BitIter(block & !w).collect();
        let owners: Vec<u32> = BitIter(w).collect();
        // every function below -> owners
        let mut choice = vec![0usize; below.len()];
        loop {
            let mut groups = vec![0u32; owners.len()];
            for (i, &v) in below.iter().enumerate() {
                groups[choice[i]] |= 1 << v;
            }
            let mut partial: Vec<Vec<u32>> = vec![vec![edge]];
            for (j, &owner) in owners.iter().enumerate() {
                let subs = hang(owner, groups[j]);
                partial = partial
                    .iter()
                    .flat_map(|p| {
                        subs.iter().map(move |s| {
                            let mut e = p.clone();
                            e.extend_from_slice(s);
                            e
                        })
                    })
                    .collect();
            }
            out.extend(partial);
            // odometer increment
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < owners.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    out
}

/// All submasks of `mask`, including 0 and `mask`.
fn subsets(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == mask {
            None
        } else {
            Some((current | !mask).wrapping_add(1) & mask)
        };
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_hypertrees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 311]);
    }

    #[test]
    fn duplicate_free_and_valid() {
        let all = enumerate_hypertrees(5).unwrap();
        let unique: HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
        for t in &all {
            assert!(t.hypergraph().is_hypertree());
            assert!(t.hypergraph().has_tree_edge_excess());
        }
    }

    #[test]
    fn bounds() {
        assert!(matches!(enumerate_hypertrees(0), Err(Error::Domain(_))));
        assert!(matches!(enumerate_hypertrees(8), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn with_gap() {
        // hypertrees on {gap, 1, 2} are the 4 on three vertices
        assert_eq!(hypertrees_on(2, true).len(), 4);
        assert_eq!(hypertrees_on(3, true).len(), 29);
    }

    #[test]
    fn subset_iteration() {
        assert_eq!(subsets(0b1010).collect::<Vec<_>>(), vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(subsets(0).collect::<Vec<_>>(), vec![0]);
    }
}
