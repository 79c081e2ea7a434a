//! Labeled hypergraphs and hypertrees.
//!
//! Vertices are labeled `1..=n`. Hollow structures and the posets built on
//! them carry one extra vertex, the gap, labeled `0`; permutations never move
//! it. Edges are stored as bitmasks, so a hypergraph has at most 31 vertices.

mod enumerate;
mod pointed;
mod walk;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

pub use enumerate::{enumerate_hypertrees, hypertrees_on, MAX_ENUMERATION_N};
pub use pointed::{dissymmetry_phi, dissymmetry_psi, enumerate_pointed, PointedHypertree, Pointing, PointingVariant};
pub use walk::{center, eccentricity, minimal_walk, Node, Walk};

use crate::error::{domain, Error, Result};
use crate::perm::Permutation;

/// The gap label of hollow structures.
pub const GAP: u32 = 0;

const MAX_VERTICES: u32 = 30;

/// A hyperedge, stored as a vertex bitmask (bit `v` is vertex `v`).
///
/// Edges order lexicographically by their ascending vertex lists, which sorts
/// first by minimum vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge(u32);

impl Edge {
    pub fn from_mask(mask: u32) -> Edge {
        Edge(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        v < 32 && self.0 & (1 << v) != 0
    }

    pub fn is_subset_of(self, other: Edge) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min_vertex(self) -> u32 {
        self.0.trailing_zeros()
    }

    pub fn vertices(self) -> impl Iterator<Item = u32> {
        BitIter(self.0)
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.vertices();
        let mut b = other.vertices();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}

pub(crate) struct BitIter(pub(crate) u32);

impl Iterator for BitIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// A hypergraph on `{1..n}` (plus the gap `0` when `gap` is set), edges in
/// canonical order. Two hypergraphs are equal iff their canonical forms are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    n: u32,
    gap: bool,
    edges: Vec<Edge>,
}

impl Hypergraph {
    /// Checks that every edge has at least two distinct in-range vertices and
    /// that no edge is repeated, then canonicalizes.
    pub fn new(n: u32, gap: bool, edges: &[Vec<u32>]) -> Result<Hypergraph> {
        let total = n + gap as u32;
        if total == 0 || total > MAX_VERTICES {
            return Err(Error::Validation(format!(
                "vertex count {total} outside 1..={MAX_VERTICES}"
            )));
        }
        let lowest = if gap { GAP } else { 1 };
        let mut masks = Vec::with_capacity(edges.len());
        for edge in edges {
            let mut mask = 0u32;
            for &v in edge {
                if v < lowest || v > n {
                    return Err(Error::Validation(format!(
                        "edge {edge:?} has label {v} outside {lowest}..={n}"
                    )));
                }
                if mask & (1 << v) != 0 {
                    return Err(Error::Validation(format!("edge {edge:?} repeats label {v}")));
                }
                mask |= 1 << v;
            }
            if mask.count_ones() < 2 {
                return Err(Error::Validation(format!("edge {edge:?} has fewer than two vertices")));
            }
            masks.push(Edge(mask));
        }
        masks.sort();
        if masks.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("duplicate edge".into()));
        }
        Ok(Hypergraph { n, gap, edges: masks })
    }

    /// Trusted constructor for internally generated edge sets.
    pub(crate) fn from_edges(n: u32, gap: bool, mut edges: Vec<Edge>) -> Hypergraph {
        edges.sort();
        Hypergraph { n, gap, edges }
    }

    /// Number of numbered vertices (the gap is not counted).
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn has_gap(&self) -> bool {
        self.gap
    }

    pub fn vertex_count(&self) -> u32 {
        self.n + self.gap as u32
    }

    pub fn vertex_mask(&self) -> u32 {
        let numbered = if self.n == 0 {
            0
        } else {
            ((1u64 << (self.n + 1)) - 2) as u32
        };
        numbered | self.gap as u32
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        BitIter(self.vertex_mask())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, edge: Edge) -> Option<usize> {
        self.edges.binary_search(&edge).ok()
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        v < 32 && self.vertex_mask() & (1 << v) != 0
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Connected, and every pair of vertices is joined by exactly one walk
    /// with pairwise distinct edges.
    ///
    /// Runs a search on the vertex/edge incidence graph; reaching a node
    /// already seen along a second link exhibits two distinct-edge walks.
    pub fn is_hypertree(&self) -> bool {
        let n_nodes = 32 + self.edges.len();
        let mut seen = vec![false; n_nodes];
        let start = self.vertex_mask().trailing_zeros() as usize;
        // (node, parent); vertex nodes are 0..32, edge nodes 32+i
        let mut stack = vec![(start, usize::MAX)];
        seen[start] = true;
        while let Some((node, parent)) = stack.pop() {
            let neighbours: Vec<usize> = if node < 32 {
                (0..self.edges.len())
                    .filter(|&i| self.edges[i].contains(node as u32))
                    .map(|i| 32 + i)
                    .collect()
            } else {
                self.edges[node - 32].vertices().map(|v| v as usize).collect()
            };
            for next in neighbours {
                if next == parent {
                    continue;
                }
                if seen[next] {
                    return false;
                }
                seen[next] = true;
                stack.push((next, node));
            }
        }
        self.vertices().all(|v| seen[v as usize])
    }

    /// `Σ_e (|e| − 1) = (#vertices − 1)`, the counting half of the
    /// characterization "connected with this edge excess".
    pub fn has_tree_edge_excess(&self) -> bool {
        let excess: u32 = self.edges.iter().map(|e| e.len() - 1).sum();
        excess + 1 == self.vertex_count()
    }

    pub fn is_connected(&self) -> bool {
        let mut reached = 1u32 << self.vertex_mask().trailing_zeros();
        loop {
            let mut grown = reached;
            for e in &self.edges {
                if e.0 & reached != 0 {
                    grown |= e.0;
                }
            }
            if grown == reached {
                return reached == self.vertex_mask();
            }
            reached = grown;
        }
    }

    pub fn permuted(&self, sigma: &Permutation) -> Result<Hypergraph> {
        if sigma.degree() != self.n {
            return Err(domain!(
                "permutation of degree {} applied to a hypergraph on {} labels",
                sigma.degree(),
                self.n
            ));
        }
        Ok(self.permuted_unchecked(sigma))
    }

    pub(crate) fn permuted_unchecked(&self, sigma: &Permutation) -> Hypergraph {
        let edges = self.edges.iter().map(|e| Edge(sigma.apply_mask(e.0))).collect();
        Hypergraph::from_edges(self.n, self.gap, edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Parses the edge part of the text encoding, e.g. `{1,2,4};{2,3}`. The
/// vertex set is inferred: `1..=max label`, plus the gap if label 0 occurs.
/// `{}` is the edgeless hypergraph on one vertex.
impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Hypergraph> {
        if s == "{}" {
            return Hypergraph::new(1, false, &[]);
        }
        let mut edges = Vec::new();
        for part in s.split(';') {
            let inner = part
                .strip_prefix('{')
                .and_then(|p| p.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("edge {part:?} is not braced")))?;
            let edge = inner
                .split(',')
                .map(|v| v.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("edge {part:?}: {e}")))?;
            edges.push(edge);
        }
        let n = edges.iter().flatten().copied().max().unwrap_or(0);
        let gap = edges.iter().flatten().any(|&v| v == GAP);
        let hg = Hypergraph::new(n, gap, &edges)?;
        if hg.to_string() != s {
            return Err(Error::Parse(format!("{s:?} is not in canonical form")));
        }
        Ok(hg)
    }
}

/// A hypergraph known to be a hypertree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypertree(Hypergraph);

impl Hypertree {
    pub fn new(hg: Hypergraph) -> Result<Hypertree> {
        if hg.is_hypertree() {
            Ok(Hypertree(hg))
        } else {
            Err(domain!("{hg} is not a hypertree"))
        }
    }

    pub(crate) fn new_unchecked(hg: Hypergraph) -> Hypertree {
        debug_assert!(hg.is_hypertree());
        Hypertree(hg)
    }

    /// The single-edge hypertree, minimum of the poset.
    pub fn single_edge(n: u32, gap: bool) -> Hypertree {
        let hg = Hypergraph { n, gap, edges: vec![] };
        let mask = hg.vertex_mask();
        let edges = if mask.count_ones() >= 2 {
            vec![Edge(mask)]
        } else {
            vec![]
        };
        Hypertree(Hypergraph { edges, ..hg })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.0
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn has_gap(&self) -> bool {
        self.0.gap
    }

    pub fn vertex_count(&self) -> u32 {
        self.0.vertex_count()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0.edges
    }

    /// Poset rank: number of edges minus one (so the edgeless tree on one
    /// vertex has rank −1).
    pub fn rank(&self) -> i32 {
        self.0.edges.len() as i32 - 1
    }

    /// The gap lies in exactly one edge.
    pub fn is_hollow(&self) -> bool {
        self.0.gap && self.0.degree(GAP) == 1
    }

    pub fn permuted(&self, sigma: &Permutation) -> Result<Hypertree> {
        self.0.permuted(sigma).map(Hypertree)
    }

    pub(crate) fn permuted_unchecked(&self, sigma: &Permutation) -> Hypertree {
        Hypertree(self.0.permuted_unchecked(sigma))
    }
}

impl fmt::Display for Hypertree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Hypertree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Hypertree> {
        Hypertree::new(s.parse()?)
    }
}

/// Validates raw input and decides whether it is a hypertree. Malformed
/// edges are an error, distinct from a well-formed non-hypertree (`false`).
pub fn validate_hypertree(n: u32, edges: &[Vec<u32>]) -> Result<bool> {
    Ok(Hypergraph::new(n, false, edges)?.is_hypertree())
}

/// Applies `sigma` to a hypertree (gap fixed).
pub fn apply_permutation(tree: &Hypertree, sigma: &Permutation) -> Result<Hypertree> {
    tree.permuted(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: u32, edges: &[&[u32]]) -> Hypergraph {
        let edges: Vec<Vec<u32>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::new(n, false, &edges).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_hypertree(2, &[vec![1, 2]]).unwrap());
        assert!(validate_hypertree(1, &[]).unwrap());
        let example = [vec![4, 7], vec![6, 7], vec![1, 2, 5, 6], vec![1, 2, 3]];
        assert!(!validate_hypertree(7, &example).unwrap());
        assert!(!validate_hypertree(3, &[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap());
        // disconnected
        assert!(!validate_hypertree(4, &[vec![1, 2], vec![3, 4]]).unwrap());
    }

    #[test]
    fn malformed_edges_are_errors() {
        assert!(matches!(validate_hypertree(3, &[vec![1]]), Err(Error::Validation(_))));
        assert!(matches!(
            validate_hypertree(3, &[vec![1, 4]]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            validate_hypertree(3, &[vec![0, 1]]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            validate_hypertree(3, &[vec![1, 2], vec![2, 1]]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            validate_hypertree(3, &[vec![1, 1, 2]]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn canonical_order() {
        let g = hg(5, &[&[4, 5], &[2, 3], &[1, 3, 4]]);
        assert_eq!(g.to_string(), "{1,3,4};{2,3};{4,5}");
        let h = hg(4, &[&[1, 3], &[1, 2], &[1, 4]]);
        assert_eq!(h.to_string(), "{1,2};{1,3};{1,4}");
        // lexicographic, not by size
        let k = hg(4, &[&[1, 3], &[1, 2, 4]]);
        assert_eq!(k.to_string(), "{1,2,4};{1,3}");
    }

    #[test]
    fn text_round_trip() {
        for s in ["{1,2,4};{2,3}", "{}", "{0,1,2};{2,3}", "{1,2}"] {
            let g: Hypergraph = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("{2,3};{1,2,4}".parse::<Hypergraph>().is_err());
        assert!("{1,2".parse::<Hypergraph>().is_err());
    }

    #[test]
    fn single_edge_is_fixed_by_everything() {
        let t = Hypertree::single_edge(4, false);
        for sigma in Permutation::all(4) {
            assert_eq!(t.permuted(&sigma).unwrap(), t);
        }
    }

    #[test]
    fn path_relabelings() {
        let path: Hypertree = "{1,2};{2,3}".parse().unwrap();
        let s13 = Permutation::from_cycles(3, &[&[1, 3]]).unwrap();
        assert_eq!(path.permuted(&s13).unwrap(), path);
        let s12 = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // path 2–1–3
        assert_eq!(path.permuted(&s12).unwrap().to_string(), "{1,2};{1,3}");
        assert_eq!(path.permuted(&Permutation::identity(3)).unwrap(), path);
        assert!(path.permuted(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn gap_is_never_moved() {
        let t: Hypertree = "{0,1};{1,2}".parse().unwrap();
        let s = Permutation::from_cycles(2, &[&[1, 2]]).unwrap();
        assert_eq!(t.permuted(&s).unwrap().to_string(), "{0,2};{1,2}");
    }
}
