//! Order complexes of finite posets, their reduced homology over the
//! rationals, permutation traces on it, and Whitney homology of `HT_n`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::perm::{Partition, Permutation};
use crate::poset::Poset;

/// Sign attached to deleting entry `i` from a chain `(a_0 < ... < a_m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `(-1)^i`
    #[default]
    Alternating,
    /// `(-1)^(m-i)`
    Reversed,
}

/// Sparse integer matrix stored by columns, rows ascending within a column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> SparseMatrix {
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.columns[j]
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                out[i as usize][j] = x;
            }
        }
        out
    }

    /// `self · other`, both sparse.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols() != other.rows {
            return Err(domain!(
                "shape mismatch {}x{} · {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            ));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for &(k, y) in col {
                    for &(i, x) in &self.columns[k as usize] {
                        *acc.entry(i).or_insert(0) += x * y;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            columns,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Exact rank over the rationals by sparse column reduction.
    pub fn rank(&self) -> usize {
        type Vector = Vec<(u32, BigRational)>;
        let mut pivots: HashMap<u32, Vector> = HashMap::new();
        for col in &self.columns {
            let mut v: Vector = col
                .iter()
                .map(|&(i, x)| (i, BigRational::from_integer(BigInt::from(x))))
                .collect();
            while let Some((lead, coefficient)) = v.first().cloned() {
                match pivots.get(&lead) {
                    Some(p) => v = axpy(&v, &-coefficient, p),
                    None => {
                        let inverse = coefficient.recip();
                        for entry in &mut v {
                            entry.1 = &entry.1 * &inverse;
                        }
                        pivots.insert(lead, v);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

/// `v + a·w` on sorted sparse vectors.
fn axpy(v: &[(u32, BigRational)], a: &BigRational, w: &[(u32, BigRational)]) -> Vec<(u32, BigRational)> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j == w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i == v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_w {
            out.push((w[j].0, a * &w[j].1));
            j += 1;
        } else {
            let x = &v[i].1 + a * &w[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Augmented chain complex of the order complex of a finite poset.
///
/// Degree `m` has the strict chains with `m + 1` entries; degree `-1` has the
/// single augmentation generator (the empty chain).
#[derive(Debug, Clone)]
pub struct ChainComplex {
    // bases[m + 1]
    bases: Vec<Vec<Vec<u32>>>,
    // boundaries[m] = d_m : C_m -> C_{m-1}, m >= 0
    boundaries: Vec<SparseMatrix>,
    lookup: Vec<HashMap<Vec<u32>, usize>>,
}

impl ChainComplex {
    /// Order complex of `elements` (listed along a linear extension) under
    /// the strict order `less`.
    pub fn from_order(elements: &[u32], less: impl Fn(u32, u32) -> bool, sign: SignConvention) -> ChainComplex {
        let successors: Vec<Vec<usize>> = (0..elements.len())
            .map(|i| {
                (i + 1..elements.len())
                    .filter(|&j| less(elements[i], elements[j]))
                    .collect()
            })
            .collect();
        // chains as positions into `elements`
        let mut layers: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
        let mut layer: Vec<Vec<usize>> = (0..elements.len()).map(|i| vec![i]).collect();
        while !layer.is_empty() {
            let next = layer
                .iter()
                .flat_map(|c| {
                    let last = *c.last().expect("nonempty chain");
                    successors[last].iter().map(move |&j| {
                        let mut d = c.clone();
                        d.push(j);
                        d
                    })
                })
                .collect();
            layers.push(std::mem::replace(&mut layer, next));
        }
        let bases: Vec<Vec<Vec<u32>>> = layers
            .into_iter()
            .map(|l| {
                l.into_iter()
                    .map(|c| c.into_iter().map(|i| elements[i]).collect())
                    .collect()
            })
            .collect();
        let lookup: Vec<HashMap<Vec<u32>, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        let boundaries = (1..bases.len())
            .map(|level| {
                let columns = bases[level]
                    .iter()
                    .map(|chain| {
                        let m = chain.len() - 1;
                        let mut col: Vec<(u32, i64)> = (0..chain.len())
                            .map(|i| {
                                let mut face = chain.clone();
                                face.remove(i);
                                let exponent = match sign {
                                    SignConvention::Alternating => i,
                                    SignConvention::Reversed => m - i,
                                };
                                let s = if exponent % 2 == 0 { 1 } else { -1 };
                                (lookup[level - 1][&face] as u32, s)
                            })
                            .collect();
                        col.sort_unstable();
                        col
                    })
                    .collect();
                SparseMatrix::new(bases[level - 1].len(), columns)
            })
            .collect();
        ChainComplex {
            bases,
            boundaries,
            lookup,
        }
    }

    /// Highest degree with a nonzero chain space.
    pub fn top_degree(&self) -> i32 {
        self.bases.len() as i32 - 2
    }

    /// Basis chains of degree `m`; empty outside `-1..=top_degree`.
    pub fn basis(&self, m: i32) -> &[Vec<u32>] {
        if m < -1 || m > self.top_degree() {
            return &[];
        }
        &self.bases[(m + 1) as usize]
    }

    pub fn dim(&self, m: i32) -> usize {
        self.basis(m).len()
    }

    /// `d_m`, for `0 <= m <= top_degree`.
    pub fn boundary(&self, m: i32) -> Option<&SparseMatrix> {
        if m < 0 {
            return None;
        }
        self.boundaries.get(m as usize)
    }

    pub fn index_of(&self, m: i32, chain: &[u32]) -> Option<usize> {
        if m < -1 || m > self.top_degree() {
            return None;
        }
        self.lookup[(m + 1) as usize].get(chain).copied()
    }

    /// Whether `d_{m-1} ∘ d_m = 0` for every `m`.
    pub fn is_complex(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].mul(&w[1]).map(|p| p.is_zero()).unwrap_or(false))
    }

    /// `Σ (-1)^m dim C_m`, augmentation included.
    pub fn euler_characteristic(&self) -> i128 {
        (-1..=self.top_degree()).map(|m| sign(m) * self.dim(m) as i128).sum()
    }

    /// Ranks of `d_0, d_1, ...`.
    pub fn boundary_ranks(&self) -> Vec<usize> {
        self.boundaries.par_iter().map(SparseMatrix::rank).collect()
    }

    /// Permutation of the degree-`m` basis induced by a map on elements that
    /// preserves the order.
    pub fn induced_permutation(&self, m: i32, map: impl Fn(u32) -> u32) -> Result<Vec<usize>> {
        self.basis(m)
            .iter()
            .map(|c| {
                let image: Vec<u32> = c.iter().map(|&x| map(x)).collect();
                self.index_of(m, &image)
                    .ok_or_else(|| Error::Internal(format!("image of chain {c:?} is not a chain")))
            })
            .collect()
    }
}

fn sign(m: i32) -> i128 {
    if m.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Nonzero reduced homology dimensions by degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile(pub BTreeMap<i32, usize>);

impl HomologyProfile {
    pub fn dim(&self, m: i32) -> usize {
        self.0.get(&m).copied().unwrap_or(0)
    }

    /// The only nonzero degree, if there is exactly one.
    pub fn concentrated_degree(&self) -> Option<i32> {
        match self.0.len() {
            1 => self.0.keys().next().copied(),
            _ => None,
        }
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.0.iter().map(|(&m, &d)| sign(m) * d as i128).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serializes")
    }
}

pub fn homology_dimensions(cc: &ChainComplex) -> HomologyProfile {
    let ranks = cc.boundary_ranks();
    let rank = |m: i32| {
        if m < 0 {
            0
        } else {
            ranks.get(m as usize).copied().unwrap_or(0)
        }
    };
    let profile = (-1..=cc.top_degree())
        .map(|m| (m, cc.dim(m) - rank(m) - rank(m + 1)))
        .filter(|&(_, d)| d > 0)
        .collect();
    HomologyProfile(profile)
}

/// Order complex of the proper part of `HT_n` (minimum removed).
pub fn build_chain_complex(n: u32) -> Result<ChainComplex> {
    if n < 2 {
        return Err(domain!("the proper part needs n >= 2"));
    }
    let poset = Poset::new(n, false)?;
    Ok(proper_part_complex(&poset, SignConvention::Alternating))
}

pub fn proper_part_complex(poset: &Poset, sign: SignConvention) -> ChainComplex {
    let elements: Vec<u32> = (0..poset.len() as u32)
        .filter(|&i| i as usize != poset.bottom())
        .collect();
    ChainComplex::from_order(
        &elements,
        |a, b| a != b && poset.leq_index(a as usize, b as usize),
        sign,
    )
}

/// Order complex of the open interval `(0̂, x)`.
pub fn interval_complex(poset: &Poset, x: usize) -> ChainComplex {
    let bottom = poset.bottom();
    let elements: Vec<u32> = poset.below(x).filter(|&y| y != bottom).map(|y| y as u32).collect();
    ChainComplex::from_order(
        &elements,
        |a, b| a != b && poset.leq_index(a as usize, b as usize),
        SignConvention::Alternating,
    )
}

/// Reduced row echelon form over the rationals; returns pivot columns.
fn rref(matrix: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..matrix.len()).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(row, p);
        let inverse = matrix[row][col].recip();
        for x in &mut matrix[row] {
            *x = &*x * &inverse;
        }
        let pivot_row = matrix[row].clone();
        for (r, other) in matrix.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (x, y) in other.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == matrix.len() {
            break;
        }
    }
    pivots
}

/// Trace of a basis permutation `perm` restricted to the kernel of `d`
/// (`d = None` means the zero map).
fn kernel_trace(d: Option<&SparseMatrix>, dim: usize, perm: &[usize]) -> BigRational {
    let Some(d) = d else {
        return BigRational::from_integer(BigInt::from(dim));
    };
    let mut dense: Vec<Vec<BigRational>> = d
        .to_dense()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let pivots = rref(&mut dense, dim);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut inverse = vec![0; dim];
    for (j, &image) in perm.iter().enumerate() {
        inverse[image] = j;
    }
    // kernel vector for free column f: 1 at f, -rref[r][f] at pivot r
    let kernel_entry = |f: usize, c: usize| -> BigRational {
        if c == f {
            return BigRational::one();
        }
        match pivots.iter().position(|&p| p == c) {
            Some(r) => -dense[r][f].clone(),
            None => BigRational::zero(),
        }
    };
    // coefficient of basis vector f in σ·v_f is (σ v_f)[f] = v_f[σ^{-1}(f)]
    free.iter().map(|&f| kernel_entry(f, inverse[f])).sum()
}

/// Trace of the order-preserving map `map` on `H̃_m`.
pub fn homology_trace(cc: &ChainComplex, m: i32, map: impl Fn(u32) -> u32 + Copy) -> Result<i128> {
    let here = cc.induced_permutation(m, map)?;
    let above = cc.induced_permutation(m + 1, map)?;
    let trace = kernel_trace(cc.boundary(m), cc.dim(m), &here)
        - BigRational::from_integer(BigInt::from(above.iter().enumerate().filter(|&(i, &j)| i == j).count()))
        + kernel_trace(cc.boundary(m + 1), cc.dim(m + 1), &above);
    if !trace.is_integer() {
        return Err(Error::Internal(format!("non-integral trace {trace}")));
    }
    trace
        .to_integer()
        .to_i128()
        .ok_or_else(|| Error::Internal("trace overflow".into()))
}

/// `Σ_{m ≥ -1} (-1)^m` times the number of `sigma`-fixed strict `(m+1)`-chains.
pub fn alternating_fixed_chains(poset: &Poset, sigma: &Permutation) -> Result<i128> {
    let mut total = 0;
    for m in -1..poset.len() as i32 {
        let c = poset.count_strict_chains(m, sigma)?;
        if c == 0 && m >= 0 {
            break;
        }
        total += sign(m) * c;
    }
    Ok(total)
}

/// Character of the homology of the proper part of `HT_n`, one value per
/// conjugacy class (listed from `1^n` to `(n)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub n: u32,
    pub rows: Vec<(Partition, i128)>,
}

impl CharacterTable {
    pub fn value(&self, lambda: &Partition) -> Option<i128> {
        self.rows.iter().find(|(p, _)| p == lambda).map(|&(_, v)| v)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("class,value\n");
        for (p, v) in &self.rows {
            out.push_str(&format!("{p},{v}\n"));
        }
        out
    }
}

/// Conjugacy classes of `S_n` from `1^n` up to `(n)`.
pub fn classes(n: u32) -> Vec<Partition> {
    let mut all = Partition::all(n);
    all.reverse();
    all
}

/// Homology character via alternating fixed-chain counts. Concentration is
/// checked against the actual homology, whose degree fixes the sign.
pub fn lefschetz_table(n: u32) -> Result<CharacterTable> {
    let poset = Poset::new(n, false)?;
    if n < 2 {
        return Err(domain!("the homology character needs n >= 2"));
    }
    let profile = homology_dimensions(&proper_part_complex(&poset, SignConvention::Alternating));
    let degree = profile
        .concentrated_degree()
        .ok_or_else(|| Error::Internal(format!("homology of HT_{n} is not concentrated: {profile:?}")))?;
    let s = sign(degree);
    let rows = classes(n)
        .into_par_iter()
        .map(|lambda| {
            let value = s * alternating_fixed_chains(&poset, &lambda.representative())?;
            Ok((lambda, value))
        })
        .collect::<Result<Vec<_>>>()?;
    if rows[0].1 != profile.dim(degree) as i128 {
        return Err(Error::Internal(
            "identity trace differs from the homology dimension".into(),
        ));
    }
    Ok(CharacterTable { n, rows })
}

pub fn lefschetz_character(n: u32, lambda: &Partition) -> Result<i128> {
    if lambda.size() != n {
        return Err(domain!("{lambda} is not a partition of {n}"));
    }
    let table = lefschetz_table(n)?;
    Ok(table.value(lambda).expect("every class is listed"))
}

/// Whitney homology by poset rank `r ≥ 1`: the sum over rank-`r` elements
/// `x` of `dim H̃_{r-2}(0̂, x)`.
pub fn whitney_dimensions(n: u32) -> Result<BTreeMap<i32, usize>> {
    let poset = Poset::new(n, false)?;
    let mut out = BTreeMap::new();
    let per_element: Vec<(i32, usize)> = (0..poset.len())
        .into_par_iter()
        .filter(|&x| poset.rank(x) >= 1)
        .map(|x| {
            let r = poset.rank(x);
            (r, homology_dimensions(&interval_complex(&poset, x)).dim(r - 2))
        })
        .collect();
    for (r, d) in per_element {
        *out.entry(r).or_insert(0) += d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_complexes() {
        let c3 = build_chain_complex(3).unwrap();
        assert_eq!((c3.dim(-1), c3.dim(0), c3.dim(1)), (1, 3, 0));
        assert_eq!(homology_dimensions(&c3), HomologyProfile([(0, 2)].into()));
        let c2 = build_chain_complex(2).unwrap();
        assert_eq!(c2.top_degree(), -1);
        assert_eq!(homology_dimensions(&c2), HomologyProfile([(-1, 1)].into()));
        assert!(build_chain_complex(1).is_err());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c4 = build_chain_complex(4).unwrap();
        assert!(c4.is_complex());
        assert_eq!(homology_dimensions(&c4), HomologyProfile([(1, 9)].into()));
    }

    #[test]
    fn reversed_signs_give_same_ranks() {
        for n in 3..=4 {
            let poset = Poset::new(n, false).unwrap();
            let a = homology_dimensions(&proper_part_complex(&poset, SignConvention::Alternating));
            let b = proper_part_complex(&poset, SignConvention::Reversed);
            assert!(b.is_complex());
            assert_eq!(a, homology_dimensions(&b));
        }
    }

    #[test]
    fn rank_examples() {
        let m = SparseMatrix::new(2, vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(1, 1)]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(SparseMatrix::new(3, vec![]).rank(), 0);
    }

    #[test]
    fn lefschetz_n3() {
        let t = lefschetz_table(3).unwrap();
        assert_eq!(t.to_csv(), "class,value\n1+1+1,2\n2+1,0\n3,-1\n");
        assert_eq!(lefschetz_character(3, &Partition::new(vec![2, 1])).unwrap(), 0);
        assert!(lefschetz_character(3, &Partition::new(vec![2, 2])).is_err());
    }

    #[test]
    fn traces_match_lefschetz() {
        for n in 3..=4 {
            let poset = Poset::new(n, false).unwrap();
            let cc = proper_part_complex(&poset, SignConvention::Alternating);
            let degree = homology_dimensions(&cc).concentrated_degree().unwrap();
            let table = lefschetz_table(n).unwrap();
            for (lambda, value) in &table.rows {
                let sigma = lambda.representative();
                let trace = homology_trace(&cc, degree, |x| poset.permute_index(x as usize, &sigma) as u32).unwrap();
                assert_eq!(trace, *value, "n={n} class {lambda}");
            }
        }
    }

    #[test]
    fn whitney_small() {
        assert_eq!(whitney_dimensions(3).unwrap(), [(1, 3)].into());
        let w4 = whitney_dimensions(4).unwrap();
        let rank1 = Poset::new(4, false)
            .unwrap()
            .elements()
            .iter()
            .filter(|t| t.rank() == 1)
            .count();
        assert_eq!(w4[&1], rank1);
    }

    #[test]
    fn profile_json() {
        assert_eq!(HomologyProfile([(0, 2)].into()).to_json(), r#"{"0":2}"#);
    }
}
