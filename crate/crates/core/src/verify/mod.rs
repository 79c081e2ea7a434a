//! From chain counts to cycle indices: per-class counts become cycle-index
//! slices, slices are interpolated as polynomials in the chain length `k`,
//! and the polynomials are evaluated at `k = 0` and `k = -1`.

mod ledger;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::homology::{classes, CharacterTable};
use crate::perm::Partition;
use crate::poset::{ChainSpec, ChainVariant, Poset};
use crate::series::{c_minus_one_formula, CycleIndex, Monomial};

pub use ledger::{run_ledger, verify_identity, Identity, Status, VerificationReport, VerifyParams};

/// Homology character read off the closed form for `k = -1`, signed by
/// `(-1)^n`. Agrees with [`crate::homology::lefschetz_table`].
pub fn formula_table(n: u32) -> Result<CharacterTable> {
    if n < 2 {
        return Err(domain!("the homology character needs n >= 2"));
    }
    let c = c_minus_one_formula(n)?;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let rows = classes(n)
        .into_iter()
        .map(|lambda| {
            let v = c.extract_character(&lambda);
            if !v.is_integer() {
                return Err(Error::Internal(format!("non-integral character {v} on {lambda}")));
            }
            let v: i128 = v
                .to_integer()
                .try_into()
                .map_err(|_| Error::Internal("character overflow".into()))?;
            Ok((lambda, sign * v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTable { n, rows })
}

/// `Σ_λ count(σ_λ) · p_λ / z_λ`, with `t`-weights when the spec is weighted.
/// The slice has truncation degree `spec.n`.
pub fn cycle_index_from_counts(poset: &Poset, spec: &ChainSpec) -> Result<CycleIndex> {
    let rows = Partition::all(spec.n)
        .into_par_iter()
        .map(|lambda| {
            let count = poset.count_large_chains(spec, &lambda.representative())?;
            Ok((lambda, count))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = CycleIndex::zero(spec.n);
    for (lambda, count) in rows {
        let z = lambda.z();
        for (tpow, c) in count.terms() {
            out.add_term(
                Monomial::new(lambda.clone(), tpow),
                BigRational::new(BigInt::from(c), z.clone()),
            );
        }
    }
    Ok(out)
}

/// Polynomial in `k` with rational coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<BigRational>);

impl Polynomial {
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn evaluate(&self, k: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(k));
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Least-degree polynomial through the points, by divided differences.
    pub fn interpolate(points: &[(i64, BigRational)]) -> Polynomial {
        let xs: Vec<BigRational> = points
            .iter()
            .map(|(x, _)| BigRational::from_integer(BigInt::from(*x)))
            .collect();
        let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..points.len() {
            for i in (level..points.len()).rev() {
                table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        // expand Σ table[i] Π_{j<i} (k − x_j)
        let mut coefficients = vec![BigRational::zero(); points.len().max(1)];
        let mut basis = vec![BigRational::one()];
        for (i, d) in table.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                coefficients[j] += d * b;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] += b;
                next[j] -= &xs[i] * b;
            }
            basis = next;
        }
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Polynomial(coefficients)
    }
}

/// For each monomial of degree `n`, its coefficient as a polynomial in `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPolynomial {
    pub n: u32,
    pub variant: ChainVariant,
    pub weighted: bool,
    pub degree_bound: usize,
    coefficients: BTreeMap<Monomial, Polynomial>,
}

impl KPolynomial {
    pub fn coefficients(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> {
        self.coefficients.iter()
    }

    /// Largest degree in `k` over all monomials.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.values().filter_map(Polynomial::degree).max()
    }

    /// The cycle-index slice at chain length `k`.
    pub fn evaluate(&self, k: i64) -> CycleIndex {
        CycleIndex::from_terms(
            self.n,
            self.coefficients.iter().map(|(m, p)| (m.clone(), p.evaluate(k))),
        )
    }

    /// Character value on `λ` at chain length `k`, one entry per `t`-power.
    pub fn character(&self, lambda: &Partition, k: i64) -> BTreeMap<i32, BigRational> {
        self.evaluate(k).extract_weighted_character(lambda)
    }

    /// `t = 1`.
    pub fn at_t1(&self) -> KPolynomial {
        let mut coefficients: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, p) in &self.coefficients {
            let key = Monomial::new(m.partition.clone(), 0);
            let entry = coefficients.entry(key).or_insert_with(|| Polynomial(vec![]));
            if entry.0.len() < p.0.len() {
                entry.0.resize(p.0.len(), BigRational::zero());
            }
            for (a, b) in entry.0.iter_mut().zip(&p.0) {
                *a += b;
            }
        }
        coefficients.retain(|_, p| p.degree().is_some());
        KPolynomial {
            weighted: false,
            coefficients,
            ..self.clone()
        }
    }
}

/// Sample lengths: `1..=n+1`, plus `0` for the plain variant.
fn sample_lengths(n: u32, variant: ChainVariant) -> Vec<u32> {
    let first = if variant == ChainVariant::Plain { 0 } else { 1 };
    (first..=n + 1).collect()
}

fn degree_bound(n: u32, variant: ChainVariant) -> usize {
    match variant {
        ChainVariant::Plain => n.saturating_sub(2) as usize,
        _ => n.saturating_sub(1) as usize,
    }
}

/// Interpolates counted slices in `k` and checks the result at `k = n + 2`.
pub fn character_polynomial_on(poset: &Poset, n: u32, variant: ChainVariant, weighted: bool) -> Result<KPolynomial> {
    let ks = sample_lengths(n, variant);
    let slices = ks
        .par_iter()
        .map(|&k| cycle_index_from_counts(poset, &ChainSpec::new(n, k, variant, weighted)?))
        .collect::<Result<Vec<_>>>()?;
    let monomials: BTreeSet<Monomial> = slices.iter().flat_map(|s| s.terms().map(|(m, _)| m.clone())).collect();
    let coefficients: BTreeMap<Monomial, Polynomial> = monomials
        .into_iter()
        .map(|m| {
            let points: Vec<(i64, BigRational)> = ks
                .iter()
                .zip(&slices)
                .map(|(&k, s)| (k as i64, s.coefficient(&m.partition, m.tpow)))
                .collect();
            (m, Polynomial::interpolate(&points))
        })
        .collect();
    let kp = KPolynomial {
        n,
        variant,
        weighted,
        degree_bound: degree_bound(n, variant),
        coefficients,
    };
    let guard = n + 2;
    let counted = cycle_index_from_counts(poset, &ChainSpec::new(n, guard, variant, weighted)?)?;
    if let Some((m, a, b)) = kp.evaluate(guard as i64).first_difference(&counted) {
        return Err(Error::Internal(format!(
            "{} chains on {n} labels are not polynomial in k: at k={guard}, {m} interpolates to {a} but counts {b}",
            variant.name()
        )));
    }
    if kp.degree().unwrap_or(0) > kp.degree_bound {
        return Err(Error::Internal(format!(
            "{} chains on {n} labels: degree {:?} in k exceeds {}",
            variant.name(),
            kp.degree(),
            kp.degree_bound
        )));
    }
    Ok(kp)
}

pub fn character_polynomial(n: u32, variant: ChainVariant, weighted: bool) -> Result<KPolynomial> {
    let poset = Poset::new(n, variant.uses_gap())?;
    character_polynomial_on(&poset, n, variant, weighted)
}

/// Evaluation at `k0 ∈ {-1, 0}`.
pub fn evaluate_at(kp: &KPolynomial, k0: i64) -> Result<CycleIndex> {
    if !(-1..=0).contains(&k0) {
        return Err(domain!("evaluation point {k0} is not -1 or 0"));
    }
    Ok(kp.evaluate(k0))
}

type Slot<T> = Arc<OnceLock<Result<Arc<T>>>>;

/// Caches posets, chain slices and interpolants across many queries.
#[derive(Default)]
pub struct ChainData {
    posets: Mutex<HashMap<(u32, bool), Slot<Poset>>>,
    polynomials: Mutex<HashMap<(u32, ChainVariant, bool), Slot<KPolynomial>>>,
}

impl ChainData {
    pub fn new() -> ChainData {
        ChainData::default()
    }

    pub fn poset(&self, n: u32, gap: bool) -> Result<Arc<Poset>> {
        let cell = self
            .posets
            .lock()
            .expect("poset cache")
            .entry((n, gap))
            .or_default()
            .clone();
        cell.get_or_init(|| Poset::new(n, gap).map(Arc::new)).clone()
    }

    pub fn polynomial(&self, n: u32, variant: ChainVariant, weighted: bool) -> Result<Arc<KPolynomial>> {
        let cell = self
            .polynomials
            .lock()
            .expect("polynomial cache")
            .entry((n, variant, weighted))
            .or_default()
            .clone();
        cell.get_or_init(|| {
            let poset = self.poset(n, variant.uses_gap())?;
            character_polynomial_on(&poset, n, variant, weighted).map(Arc::new)
        })
        .clone()
    }

    /// Slice of degree `n` at any integer `k`: counted for `k ≥ 1`,
    /// interpolated otherwise.
    pub fn slice(&self, n: u32, variant: ChainVariant, weighted: bool, k: i64) -> Result<CycleIndex> {
        if k >= 1 {
            let poset = self.poset(n, variant.uses_gap())?;
            cycle_index_from_counts(&poset, &ChainSpec::new(n, k as u32, variant, weighted)?)
        } else {
            Ok(self.polynomial(n, variant, weighted)?.evaluate(k))
        }
    }

    /// The chain series truncated at `degree`: slices `n = 1..=degree`.
    pub fn series(&self, variant: ChainVariant, weighted: bool, k: i64, degree: u32) -> Result<CycleIndex> {
        let slices = (1..=degree)
            .into_par_iter()
            .map(|n| self.slice(n, variant, weighted, k))
            .collect::<Result<Vec<_>>>()?;
        let mut out = CycleIndex::zero(degree);
        for s in slices {
            for (m, c) in s.terms() {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(a))
    }

    #[test]
    fn interpolation() {
        let p = Polynomial::interpolate(&[(0, q(1)), (1, q(4)), (2, q(7))]);
        assert_eq!(p, Polynomial(vec![q(1), q(3)]));
        assert_eq!(p.evaluate(-1), q(-2));
        let c = Polynomial::interpolate(&[(1, q(5)), (2, q(5))]);
        assert_eq!(c.degree(), Some(0));
    }

    #[test]
    fn plain_small() {
        let kp = character_polynomial(2, ChainVariant::Plain, false).unwrap();
        for lambda in Partition::all(2) {
            assert_eq!(kp.character(&lambda, 5)[&0], q(1));
        }
        let kp3 = character_polynomial(3, ChainVariant::Plain, false).unwrap();
        let id = Partition::new(vec![1, 1, 1]);
        assert_eq!(kp3.character(&id, -1)[&0], q(-2));
        assert_eq!(kp3.character(&id, 0)[&0], q(1));
        let kp4 = character_polynomial(4, ChainVariant::Plain, false).unwrap();
        assert_eq!(kp4.character(&Partition::new(vec![1; 4]), -1)[&0], q(9));
    }

    #[test]
    fn weighted_reduces_to_plain() {
        for variant in ChainVariant::ALL {
            if variant.is_hollow() {
                continue;
            }
            let w = character_polynomial(4, variant, true).unwrap();
            let u = character_polynomial(4, variant, false).unwrap();
            assert_eq!(w.at_t1(), u, "{}", variant.name());
        }
    }

    #[test]
    fn evaluation_points() {
        let kp = character_polynomial(3, ChainVariant::Plain, false).unwrap();
        assert!(evaluate_at(&kp, 1).is_err());
        assert_eq!(evaluate_at(&kp, 0).unwrap(), crate::series::comm(3).slice(3));
    }

    #[test]
    fn formula_table_small() {
        let t = formula_table(3).unwrap();
        let values: Vec<i128> = t.rows.iter().map(|r| r.1).collect();
        assert_eq!(values, vec![2, 0, -1]);
        assert_eq!(formula_table(5).unwrap().rows[0].1, 64);
        assert!(formula_table(1).is_err());
    }
}
