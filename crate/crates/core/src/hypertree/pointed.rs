//! Pointed hypertrees and the center-based dissymmetry bijection
//! `H + H^pa ≅ H^p + H^a`.

use std::fmt;
use std::str::FromStr;

use super::walk::distance;
use super::{center, hypertrees_on, Edge, Hypertree, Node, GAP};
use crate::error::{domain, Error, Result};
use crate::perm::Permutation;

/// Decoration carried by a hypertree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pointing {
    Plain,
    Root(u32),
    Edge(Edge),
    EdgeRoot {
        edge: Edge,
        root: u32,
    },
    /// Hollow: the gap `0` lies in exactly one edge.
    Gap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointingVariant {
    Plain,
    Rooted,
    EdgePointed,
    EdgePointedRooted,
    Hollow,
}

impl PointingVariant {
    pub const ALL: [PointingVariant; 5] = [
        PointingVariant::Plain,
        PointingVariant::Rooted,
        PointingVariant::EdgePointed,
        PointingVariant::EdgePointedRooted,
        PointingVariant::Hollow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PointingVariant::Plain => "plain",
            PointingVariant::Rooted => "rooted",
            PointingVariant::EdgePointed => "edge-pointed",
            PointingVariant::EdgePointedRooted => "edge-pointed-rooted",
            PointingVariant::Hollow => "hollow",
        }
    }
}

impl FromStr for PointingVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PointingVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown pointing variant {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedHypertree {
    tree: Hypertree,
    pointing: Pointing,
}

impl PointedHypertree {
    pub fn new(tree: Hypertree, pointing: Pointing) -> Result<PointedHypertree> {
        let hg = tree.hypergraph();
        let has_edge = |e: Edge| hg.edge_index(e).is_some();
        let numbered = |v: u32| v != GAP && hg.contains_vertex(v);
        let ok = match pointing {
            Pointing::Plain => true,
            Pointing::Root(v) => numbered(v),
            Pointing::Edge(e) => has_edge(e),
            Pointing::EdgeRoot { edge, root } => has_edge(edge) && edge.contains(root) && numbered(root),
            Pointing::Gap => tree.is_hollow(),
        };
        if !ok {
            return Err(domain!("pointing {pointing:?} is invalid on {tree}"));
        }
        if tree.has_gap() != (pointing == Pointing::Gap) {
            return Err(domain!("only hollow structures carry a gap"));
        }
        Ok(PointedHypertree { tree, pointing })
    }

    pub fn plain(tree: Hypertree) -> PointedHypertree {
        PointedHypertree {
            tree,
            pointing: Pointing::Plain,
        }
    }

    pub fn tree(&self) -> &Hypertree {
        &self.tree
    }

    pub fn pointing(&self) -> Pointing {
        self.pointing
    }

    pub fn variant(&self) -> PointingVariant {
        match self.pointing {
            Pointing::Plain => PointingVariant::Plain,
            Pointing::Root(_) => PointingVariant::Rooted,
            Pointing::Edge(_) => PointingVariant::EdgePointed,
            Pointing::EdgeRoot { .. } => PointingVariant::EdgePointedRooted,
            Pointing::Gap => PointingVariant::Hollow,
        }
    }

    /// Relabels by `sigma`; the gap stays put.
    pub fn permuted(&self, sigma: &Permutation) -> Result<PointedHypertree> {
        let tree = self.tree.permuted(sigma)?;
        let e = |e: Edge| Edge::from_mask(sigma.apply_mask(e.mask()));
        let pointing = match self.pointing {
            Pointing::Plain => Pointing::Plain,
            Pointing::Root(v) => Pointing::Root(sigma.apply(v)),
            Pointing::Edge(edge) => Pointing::Edge(e(edge)),
            Pointing::EdgeRoot { edge, root } => Pointing::EdgeRoot {
                edge: e(edge),
                root: sigma.apply(root),
            },
            Pointing::Gap => Pointing::Gap,
        };
        Ok(PointedHypertree { tree, pointing })
    }
}

impl fmt::Display for PointedHypertree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tree)?;
        let index = |e: Edge| self.tree.hypergraph().edge_index(e).expect("validated");
        match self.pointing {
            Pointing::Plain => Ok(()),
            Pointing::Root(v) => write!(f, "@root={v}"),
            Pointing::Edge(e) => write!(f, "@edge={}", index(e)),
            Pointing::EdgeRoot { edge, root } => write!(f, "@edge={}@root={root}", index(edge)),
            Pointing::Gap => write!(f, "@gap={GAP}"),
        }
    }
}

impl FromStr for PointedHypertree {
    type Err = Error;

    fn from_str(s: &str) -> Result<PointedHypertree> {
        let mut parts = s.split('@');
        let tree: Hypertree = parts.next().unwrap_or("").parse()?;
        let mut edge = None;
        let mut root = None;
        let mut gap = false;
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad pointing {part:?}")))?;
            let value: u32 = value
                .parse()
                .map_err(|e| Error::Parse(format!("bad pointing {part:?}: {e}")))?;
            match key {
                "edge" if edge.is_none() && root.is_none() => {
                    let e = tree
                        .edges()
                        .get(value as usize)
                        .copied()
                        .ok_or_else(|| Error::Parse(format!("edge index {value} out of range")))?;
                    edge = Some(e);
                }
                "root" if root.is_none() => root = Some(value),
                "gap" if value == GAP && !gap && edge.is_none() && root.is_none() => gap = true,
                _ => return Err(Error::Parse(format!("unexpected pointing {part:?} in {s:?}"))),
            }
        }
        let pointing = match (edge, root, gap) {
            (None, None, false) => Pointing::Plain,
            (None, Some(v), false) => Pointing::Root(v),
            (Some(e), None, false) => Pointing::Edge(e),
            (Some(e), Some(v), false) => Pointing::EdgeRoot { edge: e, root: v },
            (None, None, true) => Pointing::Gap,
            _ => return Err(Error::Parse(format!("inconsistent pointings in {s:?}"))),
        };
        PointedHypertree::new(tree, pointing).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// All structures of a pointing variant on `n` vertices. Hollow structures
/// live on `{gap, 1..n-1}`.
pub fn enumerate_pointed(n: u32, variant: PointingVariant) -> Result<Vec<PointedHypertree>> {
    let bad = |what: &str| Err(domain!("{} structures need {what}, got n = {n}", variant.name()));
    match variant {
        _ if n == 0 => return bad("n >= 1"),
        PointingVariant::EdgePointedRooted | PointingVariant::Hollow if n < 2 => return bad("n >= 2"),
        _ => {}
    }
    if n > super::MAX_ENUMERATION_N {
        return Err(Error::ResourceLimit(format!("n = {n} exceeds the enumeration bound")));
    }
    let mut out = Vec::new();
    if variant == PointingVariant::Hollow {
        for tree in hypertrees_on(n - 1, true) {
            if tree.is_hollow() {
                out.push(PointedHypertree {
                    tree,
                    pointing: Pointing::Gap,
                });
            }
        }
        return Ok(out);
    }
    for tree in hypertrees_on(n, false) {
        let edges = tree.edges().to_vec();
        let vertices: Vec<u32> = tree.hypergraph().vertices().collect();
        let mut push = |pointing| {
            out.push(PointedHypertree {
                tree: tree.clone(),
                pointing,
            })
        };
        match variant {
            PointingVariant::Plain => push(Pointing::Plain),
            PointingVariant::Rooted => vertices.iter().for_each(|&v| push(Pointing::Root(v))),
            PointingVariant::EdgePointed => edges.iter().for_each(|&e| push(Pointing::Edge(e))),
            PointingVariant::EdgePointedRooted => {
                for &edge in &edges {
                    edge.vertices().for_each(|root| push(Pointing::EdgeRoot { edge, root }));
                }
            }
            PointingVariant::Hollow => unreachable!(),
        }
    }
    Ok(out)
}

/// `H + H^pa → H^p + H^a`.
///
/// A plain hypertree gets its center pointed. An edge-pointed rooted one
/// forgets its root if the root is the center, forgets its edge if the edge
/// is the center, and otherwise forgets whichever of the two lies nearer the
/// center.
pub fn dissymmetry_phi(x: &PointedHypertree) -> Result<PointedHypertree> {
    let tree = x.tree.clone();
    let c = center(&tree)?;
    let pointing = match x.pointing {
        Pointing::Plain => match c {
            Node::Vertex(v) => Pointing::Root(v),
            Node::Edge(e) => Pointing::Edge(e),
        },
        Pointing::EdgeRoot { edge, root } => {
            if c == Node::Vertex(root) {
                Pointing::Edge(edge)
            } else if c == Node::Edge(edge) {
                Pointing::Root(root)
            } else if distance(&tree, c, Node::Vertex(root))? < distance(&tree, c, Node::Edge(edge))? {
                Pointing::Edge(edge)
            } else {
                Pointing::Root(root)
            }
        }
        _ => return Err(domain!("phi is defined on plain and edge-pointed rooted hypertrees")),
    };
    Ok(PointedHypertree { tree, pointing })
}

/// `H^p + H^a → H + H^pa`, inverse of [`dissymmetry_phi`].
pub fn dissymmetry_psi(x: &PointedHypertree) -> Result<PointedHypertree> {
    let tree = x.tree.clone();
    let c = center(&tree)?;
    let pointing = match x.pointing {
        Pointing::Edge(edge) => match c {
            Node::Edge(e) if e == edge => Pointing::Plain,
            Node::Vertex(v) if edge.contains(v) => Pointing::EdgeRoot { edge, root: v },
            _ => {
                let root = nearest(&tree, c, edge.vertices().map(Node::Vertex))?;
                let Node::Vertex(root) = root else { unreachable!() };
                Pointing::EdgeRoot { edge, root }
            }
        },
        Pointing::Root(root) => match c {
            Node::Vertex(v) if v == root => Pointing::Plain,
            Node::Edge(e) if e.contains(root) => Pointing::EdgeRoot { edge: e, root },
            _ => {
                let around = tree.edges().iter().copied().filter(|e| e.contains(root));
                let edge = nearest(&tree, c, around.map(Node::Edge))?;
                let Node::Edge(edge) = edge else { unreachable!() };
                Pointing::EdgeRoot { edge, root }
            }
        },
        _ => return Err(domain!("psi is defined on rooted and edge-pointed hypertrees")),
    };
    Ok(PointedHypertree { tree, pointing })
}

fn nearest(tree: &Hypertree, from: Node, candidates: impl Iterator<Item = Node>) -> Result<Node> {
    let mut best: Option<(usize, Node)> = None;
    for node in candidates {
        let d = distance(tree, from, node)?;
        if best.is_none_or(|(b, _)| d < b) {
            best = Some((d, node));
        }
    }
    best.map(|(_, n)| n)
        .ok_or_else(|| Error::Internal("no candidate".into()))
}
