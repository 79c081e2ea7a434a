//! Minimal walks, eccentricity and the center of a hypertree.
//!
//! In a hypertree the vertex/edge incidence graph is a tree, so the minimal
//! walk between two nodes is its unique path.

use std::collections::VecDeque;
use std::fmt;

use super::{Edge, Hypertree};
use crate::error::{domain, Result};

/// A vertex or an edge of a hypertree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Vertex(u32),
    Edge(Edge),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Vertex(v) => write!(f, "{v}"),
            Node::Edge(e) => write!(f, "{e}"),
        }
    }
}

/// Alternating sequence of vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk(pub Vec<Node>);

impl Walk {
    /// Number of entries (vertices plus edges).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.0
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

// Incidence tree with vertex nodes 0..32 and edge nodes 32+i.
struct Incidence<'a> {
    tree: &'a Hypertree,
}

impl<'a> Incidence<'a> {
    fn index(&self, node: Node) -> Result<usize> {
        match node {
            Node::Vertex(v) if self.tree.hypergraph().contains_vertex(v) => Ok(v as usize),
            Node::Edge(e) => self
                .tree
                .hypergraph()
                .edge_index(e)
                .map(|i| 32 + i)
                .ok_or_else(|| domain!("{e} is not an edge of {}", self.tree)),
            Node::Vertex(v) => Err(domain!("{v} is not a vertex of {}", self.tree)),
        }
    }

    fn node(&self, index: usize) -> Node {
        if index < 32 {
            Node::Vertex(index as u32)
        } else {
            Node::Edge(self.tree.edges()[index - 32])
        }
    }

    fn neighbours(&self, index: usize) -> Vec<usize> {
        let edges = self.tree.edges();
        if index < 32 {
            (0..edges.len())
                .filter(|&i| edges[i].contains(index as u32))
                .map(|i| 32 + i)
                .collect()
        } else {
            edges[index - 32].vertices().map(|v| v as usize).collect()
        }
    }

    /// Breadth-first parents and distances from `start`.
    fn search(&self, start: usize) -> (Vec<usize>, Vec<usize>) {
        let size = 32 + self.tree.edges().len();
        let mut parent = vec![usize::MAX; size];
        let mut dist = vec![usize::MAX; size];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbours(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        (parent, dist)
    }
}

/// The unique walk with pairwise distinct edges from `start` (a vertex or an
/// edge) to the vertex `end`.
pub fn minimal_walk(tree: &Hypertree, start: Node, end: u32) -> Result<Walk> {
    let inc = Incidence { tree };
    let s = inc.index(start)?;
    let t = inc.index(Node::Vertex(end))?;
    let (parent, _) = inc.search(t);
    let mut nodes = vec![inc.node(s)];
    let mut x = s;
    while x != t {
        x = parent[x];
        nodes.push(inc.node(x));
    }
    Ok(Walk(nodes))
}

/// Maximal number of entries on a minimal walk from `node` to a vertex.
pub fn eccentricity(tree: &Hypertree, node: Node) -> Result<usize> {
    let inc = Incidence { tree };
    let s = inc.index(node)?;
    let (_, dist) = inc.search(s);
    Ok(tree
        .hypergraph()
        .vertices()
        .map(|v| dist[v as usize] + 1)
        .max()
        .unwrap_or(1))
}

/// The vertex or edge of minimal eccentricity. It is unique; a tie is
/// reported as an internal error.
pub fn center(tree: &Hypertree) -> Result<Node> {
    let candidates = tree
        .hypergraph()
        .vertices()
        .map(Node::Vertex)
        .chain(tree.edges().iter().map(|&e| Node::Edge(e)));
    let mut best: Option<(usize, Node)> = None;
    let mut tied = false;
    for node in candidates {
        let ecc = eccentricity(tree, node)?;
        match best {
            Some((b, _)) if ecc > b => {}
            Some((b, _)) if ecc == b => tied = true,
            _ => {
                best = Some((ecc, node));
                tied = false;
            }
        }
    }
    if tied {
        return Err(crate::error::Error::Internal(format!("{tree} has no unique center")));
    }
    Ok(best.expect("a hypertree has at least one vertex").1)
}

/// Number of links on the incidence-tree path between two nodes.
pub(crate) fn distance(tree: &Hypertree, a: Node, b: Node) -> Result<usize> {
    let inc = Incidence { tree };
    let s = inc.index(a)?;
    let t = inc.index(b)?;
    Ok(inc.search(s).1[t])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(s: &str) -> Hypertree {
        s.parse().unwrap()
    }

    fn edge(s: &str) -> Node {
        let t: crate::hypertree::Hypergraph = s.parse().unwrap();
        Node::Edge(t.edges()[0])
    }

    #[test]
    fn trivial_walk() {
        let t = tree("{1,2,4};{2,3}");
        let w = minimal_walk(&t, Node::Vertex(3), 3).unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn walk_through_two_edges() {
        let t = tree("{1,2,4};{2,3}");
        let w = minimal_walk(&t, Node::Vertex(4), 3).unwrap();
        assert_eq!(w.to_string(), "(4, {1,2,4}, 2, {2,3}, 3)");
        assert_eq!(minimal_walk(&t, Node::Vertex(4), 3).unwrap(), w);
        let from_edge = minimal_walk(&t, edge("{2,3}"), 4).unwrap();
        assert_eq!(from_edge.to_string(), "({2,3}, 2, {1,2,4}, 4)");
    }

    #[test]
    fn single_edge_walks_have_length_three() {
        let t = tree("{1,2,3,4}");
        for v in 1..=4 {
            for w in 1..=4 {
                if v != w {
                    assert_eq!(minimal_walk(&t, Node::Vertex(v), w).unwrap().len(), 3);
                }
            }
        }
    }

    #[test]
    fn walk_domain_errors() {
        let t = tree("{1,2};{2,3}");
        assert!(minimal_walk(&t, Node::Vertex(4), 1).is_err());
        assert!(minimal_walk(&t, edge("{1,3}"), 1).is_err());
        assert!(minimal_walk(&t, Node::Vertex(1), 0).is_err());
    }

    #[test]
    fn centers() {
        assert_eq!(center(&tree("{1,2}")).unwrap(), edge("{1,2}"));
        assert_eq!(center(&tree("{1,2};{2,3}")).unwrap(), Node::Vertex(2));
        assert_eq!(center(&tree("{1,4};{2,4};{3,4}")).unwrap(), Node::Vertex(4));
        assert_eq!(center(&tree("{}")).unwrap(), Node::Vertex(1));
    }

    #[test]
    fn star_eccentricities() {
        let t = tree("{1,4};{2,4};{3,4}");
        assert_eq!(eccentricity(&t, Node::Vertex(4)).unwrap(), 3);
        assert_eq!(eccentricity(&t, edge("{1,4}")).unwrap(), 4);
        assert_eq!(eccentricity(&t, Node::Vertex(1)).unwrap(), 5);
    }
}
