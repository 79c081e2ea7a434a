//! The hypertree poset `HT_n`, ordered by edge refinement, and exact counts
//! of its chains fixed by a permutation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::hypertree::{hypertrees_on, Hypertree, GAP};
use crate::perm::Permutation;

/// Largest total vertex count (gap included) for which a poset is built.
pub const MAX_POSET_VERTICES: u32 = 6;

/// `S ⪯ T`: every edge of `S` is a union of edges of `T`.
///
/// Checked as: every `T`-edge lies inside some `S`-edge, and the `T`-edges
/// inside each `S`-edge cover it.
pub fn leq(s: &Hypertree, t: &Hypertree) -> Result<bool> {
    if s.n() != t.n() || s.has_gap() != t.has_gap() {
        return Err(domain!("cannot compare hypertrees on different vertex sets"));
    }
    Ok(leq_masks(&masks(s), &masks(t)))
}

fn masks(t: &Hypertree) -> Vec<u32> {
    t.edges().iter().map(|e| e.mask()).collect()
}

fn leq_masks(s: &[u32], t: &[u32]) -> bool {
    if s.len() > t.len() {
        return false;
    }
    if !t.iter().all(|&te| s.iter().any(|&se| te & !se == 0)) {
        return false;
    }
    s.iter().all(|&se| {
        let covered = t.iter().filter(|&&te| te & !se == 0).fold(0, |acc, &te| acc | te);
        covered == se
    })
}

/// Laurent polynomial in `t` with integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedCount(BTreeMap<i32, i128>);

impl WeightedCount {
    pub fn zero() -> Self {
        WeightedCount(BTreeMap::new())
    }

    pub fn monomial(coefficient: i128, exponent: i32) -> Self {
        let mut w = WeightedCount::zero();
        w.add_term(exponent, coefficient);
        w
    }

    pub fn add_term(&mut self, exponent: i32, coefficient: i128) {
        if coefficient == 0 {
            return;
        }
        let entry = self.0.entry(exponent).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.0.remove(&exponent);
        }
    }

    pub fn coefficient(&self, exponent: i32) -> i128 {
        self.0.get(&exponent).copied().unwrap_or(0)
    }

    /// Nonzero terms, ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    /// Value at `t = 1`.
    pub fn total(&self) -> i128 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for WeightedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(&e, &c)| if e == 0 { c.to_string() } else { format!("{c}*t^{e}") })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Which chains are counted, and how their ends are decorated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainVariant {
    Plain,
    MinRooted,
    MinEdgePointed,
    MinEdgePointedRooted,
    MaxEdgePointed,
    MaxEdgePointedRooted,
    /// Chains on `{gap, 1..n}` whose minimum is hollow.
    HollowMin,
    /// Chains on `{gap, 1..n}` whose minimum is the single-edge hypertree.
    HollowMinSingleEdge,
}

impl ChainVariant {
    pub const ALL: [ChainVariant; 8] = [
        ChainVariant::Plain,
        ChainVariant::MinRooted,
        ChainVariant::MinEdgePointed,
        ChainVariant::MinEdgePointedRooted,
        ChainVariant::MaxEdgePointed,
        ChainVariant::MaxEdgePointedRooted,
        ChainVariant::HollowMin,
        ChainVariant::HollowMinSingleEdge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChainVariant::Plain => "plain",
            ChainVariant::MinRooted => "min-rooted",
            ChainVariant::MinEdgePointed => "min-edge-pointed",
            ChainVariant::MinEdgePointedRooted => "min-edge-pointed-rooted",
            ChainVariant::MaxEdgePointed => "max-edge-pointed",
            ChainVariant::MaxEdgePointedRooted => "max-edge-pointed-rooted",
            ChainVariant::HollowMin => "hollow-min",
            ChainVariant::HollowMinSingleEdge => "hollow-min-single-edge",
        }
    }

    pub fn is_hollow(self) -> bool {
        matches!(self, ChainVariant::HollowMin | ChainVariant::HollowMinSingleEdge)
    }

    /// The poset is on `{gap, 1..n}` rather than `{1..n}`.
    pub fn uses_gap(self) -> bool {
        self.is_hollow()
    }
}

impl FromStr for ChainVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChainVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown chain variant {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainSpec {
    /// Number of numbered labels; hollow variants add the gap.
    pub n: u32,
    /// Chain length (number of entries).
    pub k: u32,
    pub variant: ChainVariant,
    pub weighted: bool,
}

impl ChainSpec {
    pub fn new(n: u32, k: u32, variant: ChainVariant, weighted: bool) -> Result<ChainSpec> {
        let spec = ChainSpec {
            n,
            k,
            variant,
            weighted,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(domain!("chains need n >= 1"));
        }
        if self.k == 0 && self.variant != ChainVariant::Plain {
            return Err(domain!("{} chains need k >= 1", self.variant.name()));
        }
        Ok(())
    }
}

/// `HT_n` (or its gap-extended version) with elements sorted by rank.
pub struct Poset {
    n: u32,
    gap: bool,
    elements: Vec<Hypertree>,
    masks: Vec<Vec<u32>>,
    ranks: Vec<i32>,
    index: HashMap<Hypertree, usize>,
    // indices strictly below each element, ascending
    below: Vec<Vec<u32>>,
}

impl Poset {
    pub fn new(n: u32, gap: bool) -> Result<Poset> {
        let total = n + gap as u32;
        if total == 0 {
            return Err(domain!("empty vertex set"));
        }
        if total > MAX_POSET_VERTICES {
            return Err(Error::ResourceLimit(format!(
                "poset on {total} vertices exceeds the bound {MAX_POSET_VERTICES}"
            )));
        }
        let elements = hypertrees_on(n, gap);
        let masks: Vec<Vec<u32>> = elements.iter().map(masks).collect();
        let ranks: Vec<i32> = elements.iter().map(|t| t.rank()).collect();
        let index = elements.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let below = (0..elements.len())
            .map(|j| {
                (0..elements.len())
                    .take_while(|&i| ranks[i] < ranks[j])
                    .filter(|&i| leq_masks(&masks[i], &masks[j]))
                    .map(|i| i as u32)
                    .collect()
            })
            .collect();
        Ok(Poset {
            n,
            gap,
            elements,
            masks,
            ranks,
            index,
            below,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn has_gap(&self) -> bool {
        self.gap
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Hypertree] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Hypertree {
        &self.elements[i]
    }

    pub fn rank(&self, i: usize) -> i32 {
        self.ranks[i]
    }

    pub fn index_of(&self, t: &Hypertree) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Index of the single-edge minimum (always 0).
    pub fn bottom(&self) -> usize {
        0
    }

    /// Elements strictly below `i`.
    pub fn below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[i].iter().map(|&x| x as usize)
    }

    pub fn leq_index(&self, i: usize, j: usize) -> bool {
        i == j || self.below[j].binary_search(&(i as u32)).is_ok()
    }

    /// Number of strict comparabilities `x ≺ y`.
    pub fn relation_count(&self) -> usize {
        self.below.iter().map(Vec::len).sum()
    }

    /// Pairs `(x, y)` with `y` covering `x`, sorted.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.len() {
            for x in self.below(y) {
                let between = self.below(y).any(|z| z != x && self.leq_index(x, z));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether element `i` is mapped to itself by `sigma`.
    pub fn fixed_elements(&self, sigma: &Permutation) -> Result<Vec<bool>> {
        if sigma.degree() != self.n {
            return Err(domain!(
                "permutation of degree {} on a poset over {} labels",
                sigma.degree(),
                self.n
            ));
        }
        Ok(self
            .masks
            .iter()
            .map(|ms| {
                let mut image: Vec<u32> = ms.iter().map(|&m| sigma.apply_mask(m)).collect();
                image.sort_unstable();
                let mut sorted = ms.clone();
                sorted.sort_unstable();
                image == sorted
            })
            .collect())
    }

    /// Image of element `i` under `sigma`.
    pub fn permute_index(&self, i: usize, sigma: &Permutation) -> usize {
        let image = self.elements[i].permuted_unchecked(sigma);
        self.index[&image]
    }

    fn pointings_fixed(&self, i: usize, sigma: &Permutation, edge: bool, root: bool) -> i128 {
        let fixed_vertex = |v: u32| v != GAP && sigma.apply(v) == v;
        let fixed_edges = self.masks[i].iter().filter(|&&m| sigma.apply_mask(m) == m);
        match (edge, root) {
            (true, false) => fixed_edges.count() as i128,
            (true, true) => fixed_edges
                .map(|&m| {
                    crate::hypertree::Edge::from_mask(m)
                        .vertices()
                        .filter(|&v| fixed_vertex(v))
                        .count() as i128
                })
                .sum(),
            (false, true) => (1..=self.n).filter(|&v| fixed_vertex(v)).count() as i128,
            (false, false) => 1,
        }
    }

    /// Number of large `k`-chains of the given variant fixed by `sigma`,
    /// optionally weighted by `t^{rank(max)}`.
    pub fn count_large_chains(&self, spec: &ChainSpec, sigma: &Permutation) -> Result<WeightedCount> {
        spec.validate()?;
        if spec.n != self.n || spec.variant.uses_gap() != self.gap {
            return Err(domain!("chain spec {spec:?} does not match this poset"));
        }
        let fixed = self.fixed_elements(sigma)?;
        if spec.k == 0 {
            let exponent = if spec.weighted && self.n + self.gap as u32 == 1 {
                -1
            } else {
                0
            };
            return Ok(WeightedCount::monomial(1, exponent));
        }
        let size = self.len();
        let start: Vec<i128> = (0..size)
            .map(|i| {
                if !fixed[i] {
                    return 0;
                }
                match spec.variant {
                    ChainVariant::MinRooted => self.pointings_fixed(i, sigma, false, true),
                    ChainVariant::MinEdgePointed => self.pointings_fixed(i, sigma, true, false),
                    ChainVariant::MinEdgePointedRooted => self.pointings_fixed(i, sigma, true, true),
                    ChainVariant::HollowMin => self.elements[i].is_hollow() as i128,
                    ChainVariant::HollowMinSingleEdge => (self.masks[i].len() == 1) as i128,
                    _ => 1,
                }
            })
            .collect();
        let mut current = start;
        for _ in 1..spec.k {
            let mut next = vec![0i128; size];
            for y in 0..size {
                if !fixed[y] {
                    continue;
                }
                let mut acc = current[y];
                for x in self.below(y) {
                    acc = acc
                        .checked_add(current[x])
                        .ok_or_else(|| Error::Internal("chain count overflow".into()))?;
                }
                next[y] = acc;
            }
            current = next;
        }
        let mut out = WeightedCount::zero();
        for (y, &c) in current.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let end = match spec.variant {
                ChainVariant::MaxEdgePointed => self.pointings_fixed(y, sigma, true, false),
                ChainVariant::MaxEdgePointedRooted => self.pointings_fixed(y, sigma, true, true),
                _ => 1,
            };
            let exponent = if spec.weighted { self.ranks[y] } else { 0 };
            out.add_term(exponent, c * end);
        }
        Ok(out)
    }

    /// Number of `sigma`-fixed strictly increasing `(m+1)`-tuples of non-minimum
    /// elements. `m = -1` counts the empty chain.
    pub fn count_strict_chains(&self, m: i32, sigma: &Permutation) -> Result<i128> {
        if m < -1 {
            return Err(domain!("strict chain degree {m} < -1"));
        }
        if m == -1 {
            return Ok(1);
        }
        let fixed = self.fixed_elements(sigma)?;
        let bottom = self.bottom();
        let proper = |i: usize| fixed[i] && i != bottom;
        // chains of length j ending at y
        let mut current: Vec<i128> = (0..self.len()).map(|i| proper(i) as i128).collect();
        for _ in 0..m {
            let next = (0..self.len())
                .map(|y| {
                    if proper(y) {
                        self.below(y).map(|x| current[x]).sum()
                    } else {
                        0
                    }
                })
                .collect();
            current = next;
        }
        Ok(current.iter().sum())
    }

    /// `μ(0̂, 1̂)` in the poset with a formal top added.
    pub fn mobius_top(&self) -> i128 {
        let mut mu = vec![0i128; self.len()];
        for y in 0..self.len() {
            mu[y] = if y == self.bottom() {
                1
            } else {
                -self.below(y).map(|x| mu[x]).sum::<i128>()
            };
        }
        -mu.iter().sum::<i128>()
    }

    /// Hasse diagram as `child,parent` CSV lines.
    pub fn hasse_csv(&self) -> String {
        let mut out = String::from("child,parent\n");
        for (x, y) in self.cover_relations() {
            out.push_str(&format!("{x},{y}\n"));
        }
        out
    }

    /// `index,hypertree` CSV with the text encoding quoted.
    pub fn index_csv(&self) -> String {
        let mut out = String::from("index,hypertree\n");
        for (i, t) in self.elements.iter().enumerate() {
            out.push_str(&format!("{i},\"{t}\"\n"));
        }
        out
    }
}

/// Cover pairs of `HT_n` as hypertrees.
pub fn cover_relations(n: u32) -> Result<Vec<(Hypertree, Hypertree)>> {
    let poset = Poset::new(n, false)?;
    Ok(poset
        .cover_relations()
        .into_iter()
        .map(|(x, y)| (poset.element(x).clone(), poset.element(y).clone()))
        .collect())
}

/// Convenience wrapper building the poset for a single count.
pub fn count_large_chains(spec: &ChainSpec, sigma: &Permutation) -> Result<WeightedCount> {
    Poset::new(spec.n, spec.variant.uses_gap())?.count_large_chains(spec, sigma)
}

pub fn count_strict_chains(n: u32, m: i32, sigma: &Permutation) -> Result<i128> {
    Poset::new(n, false)?.count_strict_chains(m, sigma)
}

pub fn mobius_top(n: u32) -> Result<i128> {
    if n < 2 {
        return Err(domain!("the Möbius invariant needs n >= 2"));
    }
    Ok(Poset::new(n, false)?.mobius_top())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Hypertree {
        s.parse().unwrap()
    }

    fn id(n: u32) -> Permutation {
        Permutation::identity(n)
    }

    fn plain(n: u32, k: u32) -> ChainSpec {
        ChainSpec::new(n, k, ChainVariant::Plain, false).unwrap()
    }

    #[test]
    fn leq_examples() {
        let a = t("{1,2};{2,3}");
        let b = t("{1,3};{2,3}");
        assert!(leq(&a, &a).unwrap());
        assert!(leq(&t("{1,2,3}"), &a).unwrap());
        assert!(!leq(&a, &b).unwrap() && !leq(&b, &a).unwrap());
        // the four-vertex example: a triangle-with-pendant below two refinements
        let s = t("{1,2,3};{3,4}");
        assert!(leq(&s, &t("{1,3};{2,3};{3,4}")).unwrap());
        assert!(leq(&s, &t("{1,2};{2,3};{3,4}")).unwrap());
        assert!(!leq(&s, &t("{1,2};{1,4};{3,4}")).unwrap());
        assert!(leq(&a, &t("{1,2};{2,3};{3,4}")).is_err());
    }

    #[test]
    fn order_axioms_n4() {
        let p = Poset::new(4, false).unwrap();
        let m = p.len();
        for i in 0..m {
            assert!(p.leq_index(p.bottom(), i));
            for j in 0..m {
                let ij = leq(p.element(i), p.element(j)).unwrap();
                assert_eq!(ij, p.leq_index(i, j));
                if i != j && ij {
                    assert!(!leq(p.element(j), p.element(i)).unwrap());
                }
                for k in 0..m {
                    if ij && p.leq_index(j, k) {
                        assert!(p.leq_index(i, k));
                    }
                }
            }
        }
    }

    #[test]
    fn covers() {
        assert!(cover_relations(2).unwrap().is_empty());
        assert_eq!(cover_relations(3).unwrap().len(), 3);
        for n in 3..=5 {
            let p = Poset::new(n, false).unwrap();
            for (x, y) in p.cover_relations() {
                assert_eq!(p.rank(y), p.rank(x) + 1);
            }
        }
    }

    #[test]
    fn large_chain_examples() {
        let c = |spec: ChainSpec, s: &Permutation| count_large_chains(&spec, s).unwrap().total();
        assert_eq!(c(plain(2, 3), &id(2)), 1);
        assert_eq!(c(plain(3, 2), &id(3)), 7);
        let cyc = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(c(plain(3, 1), &cyc), 1);
        assert_eq!(
            count_large_chains(&plain(1, 0), &id(1)).unwrap(),
            WeightedCount::monomial(1, 0)
        );
        let w = ChainSpec::new(1, 0, ChainVariant::Plain, true).unwrap();
        assert_eq!(count_large_chains(&w, &id(1)).unwrap(), WeightedCount::monomial(1, -1));
        let w3 = ChainSpec::new(3, 2, ChainVariant::Plain, true).unwrap();
        let got = count_large_chains(&w3, &id(3)).unwrap();
        assert_eq!((got.coefficient(0), got.coefficient(1)), (1, 6));
    }

    #[test]
    fn incompatible_specs() {
        assert!(ChainSpec::new(3, 0, ChainVariant::MinRooted, false).is_err());
        assert!(ChainSpec::new(3, 0, ChainVariant::MaxEdgePointed, true).is_err());
        let p = Poset::new(3, false).unwrap();
        let hollow = ChainSpec::new(3, 1, ChainVariant::HollowMin, false).unwrap();
        assert!(p.count_large_chains(&hollow, &id(3)).is_err());
        assert!(p.count_large_chains(&plain(3, 1), &id(4)).is_err());
    }

    #[test]
    fn strict_chain_examples() {
        assert_eq!(count_strict_chains(3, 0, &id(3)).unwrap(), 3);
        assert_eq!(count_strict_chains(3, 1, &id(3)).unwrap(), 0);
        let p = Poset::new(4, false).unwrap();
        for sigma in Permutation::all(4) {
            for m in 2..=4 {
                assert_eq!(p.count_strict_chains(m, &sigma).unwrap(), 0);
            }
        }
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_top(2).unwrap(), -1);
        assert_eq!(mobius_top(3).unwrap(), 2);
        assert_eq!(mobius_top(4).unwrap(), -9);
        assert_eq!(mobius_top(5).unwrap(), 64);
        assert!(mobius_top(1).is_err());
    }

    #[test]
    fn hollow_poset() {
        let p = Poset::new(2, true).unwrap();
        assert_eq!(p.len(), 4);
        let spec = ChainSpec::new(2, 1, ChainVariant::HollowMin, false).unwrap();
        // {0,1,2}, {0,1};{1,2}, {0,2};{1,2}: gap in one edge
        assert_eq!(p.count_large_chains(&spec, &id(2)).unwrap().total(), 3);
        let single = ChainSpec::new(2, 2, ChainVariant::HollowMinSingleEdge, false).unwrap();
        assert_eq!(p.count_large_chains(&single, &id(2)).unwrap().total(), 4);
    }

    #[test]
    fn export() {
        let p = Poset::new(3, false).unwrap();
        assert_eq!(p.hasse_csv(), "child,parent\n0,1\n0,2\n0,3\n");
        assert!(p.index_csv().starts_with("index,hypertree\n0,\"{1,2,3}\"\n"));
    }
}
