//! Permutations of `{1..n}` and integer partitions indexing their conjugacy classes.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{domain, Error, Result};

/// A bijection of `{1..n}`. Label `0` (the gap of hollow structures) is always fixed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // images[v] = σ(v); images[0] = 0.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation {
            images: (0..=n).collect(),
        }
    }

    /// Builds from one-line notation `[σ(1), ..., σ(n)]`.
    pub fn from_images(one_line: &[u32]) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        let mut images = Vec::with_capacity(n + 1);
        images.push(0);
        for &x in one_line {
            if x == 0 || x as usize > n || seen[x as usize] {
                return Err(Error::Validation(format!(
                    "{one_line:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x as usize] = true;
            images.push(x);
        }
        Ok(Permutation { images })
    }

    /// Builds from disjoint cycles; unmentioned labels are fixed.
    pub fn from_cycles(n: u32, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..=n).collect();
        let mut seen = vec![false; n as usize + 1];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || seen[x as usize] {
                    return Err(Error::Validation(format!("bad cycle {cycle:?} on 1..{n}")));
                }
                seen[x as usize] = true;
                images[x as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> u32 {
        (self.images.len() - 1) as u32
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        self.images[v as usize]
    }

    /// Image of a vertex bitmask (bit `v` = vertex `v`).
    #[inline]
    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros();
            out |= 1 << self.images[v as usize];
            m &= m - 1;
        }
        out
    }

    /// `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(domain!(
                "cannot compose permutations of degree {} and {}",
                self.degree(),
                other.degree()
            ));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&v| self.apply(v)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (v, &w) in self.images.iter().enumerate() {
            images[w as usize] = v as u32;
        }
        Permutation { images }
    }

    pub fn fixed_points(&self) -> u32 {
        (1..self.images.len()).filter(|&v| self.images[v] == v as u32).count() as u32
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.degree() as usize;
        let mut seen = vec![false; n + 1];
        let mut parts = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.images[v] as usize;
                len += 1;
            }
            parts.push(len);
        }
        Partition::new(parts)
    }

    /// All permutations of `{1..n}` in lexicographic one-line order.
    pub fn all(n: u32) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u32> = (1..=n).collect();
        loop {
            out.push(Permutation::from_images(&current).expect("valid"));
            // next lexicographic permutation
            let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// An integer partition, parts stored in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity of part `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&p| p == i).count() as u32
    }

    /// `z_λ = Π i^{m_i} m_i!`, the centralizer order of a permutation of type λ.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::from(1);
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut m = 0u32;
            while i < self.0.len() && self.0[i] == part {
                m += 1;
                i += 1;
                z *= BigInt::from(part) * BigInt::from(m);
            }
        }
        z
    }

    /// Union of multisets (the partition of a product of power sums).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.0.len() + other.0.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    /// Every part multiplied by `k` (the Adams operation `p_j ↦ p_{jk}`).
    pub fn scale(&self, k: u32) -> Partition {
        Partition(self.0.iter().map(|&p| p * k).collect())
    }

    /// The permutation `(1..λ_1)(λ_1+1..λ_1+λ_2)...` of cycle type λ.
    pub fn representative(&self) -> Permutation {
        let n = self.size();
        let mut images: Vec<u32> = (0..=n).collect();
        let mut start = 1;
        for &len in &self.0 {
            for j in 0..len {
                let v = start + j;
                images[v as usize] = if j + 1 == len { start } else { v + 1 };
            }
            start += len;
        }
        Permutation { images }
    }

    /// All partitions of `n`, in decreasing lexicographic order (`(n)` first).
    pub fn all(n: u32) -> Vec<Partition> {
        fn go(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(current.clone()));
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                current.push(p);
                go(remaining - p, p, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Parses `"3+1+1"`.
    pub fn parse(s: &str) -> Result<Partition> {
        let parts = s
            .split('+')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("bad partition {s:?}: {e}")))?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("bad partition {s:?}: zero part")));
        }
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    /// `3+1+1`; the empty partition prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn z_lambda_sums_to_one() {
        // Σ_λ 1/z_λ = 1 (class sizes n!/z_λ sum to n!)
        for n in 1..=7u32 {
            let fact: BigInt = (1..=n).map(BigInt::from).product();
            let total: BigInt = Partition::all(n).iter().map(|l| &fact / l.z()).sum();
            assert_eq!(total, fact);
        }
        assert_eq!(Partition::new(vec![2, 1, 1]).z(), BigInt::from(4));
        assert_eq!(Partition::new(vec![3]).z(), BigInt::from(3));
    }

    #[test]
    fn representative_has_its_cycle_type() {
        for n in 1..=6 {
            for lambda in Partition::all(n) {
                assert_eq!(lambda.representative().cycle_type(), lambda);
            }
        }
    }

    #[test]
    fn compose_and_inverse() {
        let s = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let t = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        let st = s.compose(&t).unwrap();
        assert_eq!(st.apply(3), 1); // t: 3→2, s: 2→1
        assert_eq!(st.compose(&st.inverse()).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn partition_text() {
        let p = Partition::parse("1+3+1").unwrap();
        assert_eq!(p.to_string(), "3+1+1");
        assert!(Partition::parse("2+0").is_err());
    }
}
