//! Oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hypertrees::hypertree::Hypertree;

/// Subsets of `1..=n` with at least two elements, as bitmasks.
pub fn candidate_edges(n: u32) -> Vec<u32> {
    (0u32..1 << n).map(|m| m << 1).filter(|m| m.count_ones() >= 2).collect()
}

/// Incidence graph of (vertices, edges) is a tree spanning every vertex.
pub fn oracle_is_hypertree(n: u32, edges: &[u32]) -> bool {
    if n == 1 {
        return edges.is_empty();
    }
    let incidences: u32 = edges.iter().map(|e| e.count_ones()).sum();
    let nodes = n + edges.len() as u32;
    if incidences + 1 != nodes {
        return false;
    }
    // union-find over vertices 1..=n, merged through edges
    let mut parent: Vec<u32> = (0..=n).collect();
    fn find(p: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while p[r as usize] != r {
            r = p[r as usize];
        }
        p[x as usize] = r;
        r
    }
    for &e in edges {
        let first = e.trailing_zeros();
        for v in 1..=n {
            if e >> v & 1 == 1 {
                let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                parent[a as usize] = b;
            }
        }
    }
    let root = find(&mut parent, 1);
    (1..=n).all(|v| find(&mut parent, v) == root)
}

pub fn mask_set(tree: &Hypertree) -> BTreeSet<u32> {
    tree.edges().iter().map(|e| e.mask()).collect()
}

pub fn oracle_hypertrees(n: u32) -> BTreeSet<BTreeSet<u32>> {
    let cands = candidate_edges(n);
    let mut out = BTreeSet::new();
    for pick in 0u64..1 << cands.len() {
        let edges: Vec<u32> = (0..cands.len())
            .filter(|&i| pick >> i & 1 == 1)
            .map(|i| cands[i])
            .collect();
        if oracle_is_hypertree(n, &edges) {
            out.insert(edges.into_iter().collect());
        }
    }
    out
}
