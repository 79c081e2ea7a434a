//! Truncated cycle indices: power-sum symmetric functions with exact rational
//! coefficients and Laurent weights in `t`.
//!
//! A term is `c · t^j · p_λ`. Everything of total degree `|λ|` above the
//! truncation degree is discarded.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::perm::Partition;

/// Smallest `t`-exponent produced by suspension.
pub const MIN_T_EXPONENT: i32 = -1;

/// Default truncation degree.
pub const DEFAULT_DEGREE: u32 = 7;

/// `t^j · p_λ`, ordered by total degree, then partition, then `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub partition: Partition,
    pub tpow: i32,
}

impl Monomial {
    pub fn new(partition: Partition, tpow: i32) -> Monomial {
        Monomial { partition, tpow }
    }

    pub fn size(&self) -> u32 {
        self.partition.size()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.partition.cmp(&other.partition))
            .then_with(|| self.tpow.cmp(&other.tpow))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleIndex {
    degree: u32,
    terms: BTreeMap<Monomial, BigRational>,
}

impl CycleIndex {
    pub fn zero(degree: u32) -> CycleIndex {
        CycleIndex {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(degree: u32, c: BigRational) -> CycleIndex {
        CycleIndex::monomial(degree, Partition::empty(), 0, c)
    }

    pub fn one(degree: u32) -> CycleIndex {
        CycleIndex::constant(degree, BigRational::one())
    }

    /// `c · t^tpow · p_λ`, or zero if `|λ|` exceeds the degree.
    pub fn monomial(degree: u32, partition: Partition, tpow: i32, c: BigRational) -> CycleIndex {
        let mut out = CycleIndex::zero(degree);
        out.add_term(Monomial::new(partition, tpow), c);
        out
    }

    /// The power sum `p_k`.
    pub fn p(degree: u32, k: u32) -> CycleIndex {
        CycleIndex::monomial(degree, Partition::new(vec![k]), 0, BigRational::one())
    }

    pub fn p1(degree: u32) -> CycleIndex {
        CycleIndex::p(degree, 1)
    }

    /// Builds from terms; zero coefficients and over-degree terms are dropped.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> CycleIndex {
        let mut out = CycleIndex::zero(degree);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() || m.size() > self.degree {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, partition: &Partition, tpow: i32) -> BigRational {
        self.terms
            .get(&Monomial::new(partition.clone(), tpow))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Same series known to a lower degree.
    pub fn truncate(&self, degree: u32) -> CycleIndex {
        CycleIndex::from_terms(
            degree.min(self.degree),
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Terms of total degree exactly `n`.
    pub fn slice(&self, n: u32) -> CycleIndex {
        CycleIndex::from_terms(
            self.degree,
            self.terms
                .iter()
                .filter(|(m, _)| m.size() == n)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn check_degree(&self, other: &CycleIndex) -> Result<()> {
        if self.degree != other.degree {
            return Err(domain!(
                "truncation degrees differ: {} vs {}",
                self.degree,
                other.degree
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycleIndex) -> Result<CycleIndex> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CycleIndex) -> Result<CycleIndex> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycleIndex {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> CycleIndex {
        CycleIndex::from_terms(self.degree, self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn mul(&self, other: &CycleIndex) -> Result<CycleIndex> {
        self.check_degree(other)?;
        let mut out = CycleIndex::zero(self.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.size() + m2.size() > self.degree {
                    continue;
                }
                out.add_term(
                    Monomial::new(m1.partition.union(&m2.partition), m1.tpow + m2.tpow),
                    c1 * c2,
                );
            }
        }
        Ok(out)
    }

    /// Multiplies by `t^j`.
    pub fn mul_t(&self, j: i32) -> CycleIndex {
        CycleIndex::from_terms(
            self.degree,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.partition.clone(), m.tpow + j), c.clone())),
        )
    }

    /// Multiplies by `p_1`; the product is known one degree further.
    pub fn mul_p1(&self) -> CycleIndex {
        let one = Partition::new(vec![1]);
        CycleIndex::from_terms(
            self.degree + 1,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.partition.union(&one), m.tpow), c.clone())),
        )
    }

    /// Exact division by `p_1`; fails if some term has no `p_1` factor. The
    /// quotient is known one degree less.
    pub fn div_p1(&self) -> Result<CycleIndex> {
        if self.degree == 0 {
            return Err(domain!("cannot divide a degree-0 series by p1"));
        }
        let mut out = CycleIndex::zero(self.degree - 1);
        for (m, c) in &self.terms {
            let parts = m.partition.parts();
            let Some(pos) = parts.iter().rposition(|&p| p == 1) else {
                return Err(domain!("term t^{}*p[{}] is not divisible by p1", m.tpow, m.partition));
            };
            let mut rest = parts.to_vec();
            rest.remove(pos);
            out.add_term(Monomial::new(Partition::new(rest), m.tpow), c.clone());
        }
        Ok(out)
    }

    /// Sets `t = 1`.
    pub fn at_t1(&self) -> CycleIndex {
        CycleIndex::from_terms(
            self.degree,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.partition.clone(), 0), c.clone())),
        )
    }

    pub fn is_weighted(&self) -> bool {
        self.terms.keys().any(|m| m.tpow != 0)
    }

    /// Adams operation `p_j ↦ p_{jk}`, `t ↦ t^k`.
    pub fn adams(&self, k: u32) -> CycleIndex {
        CycleIndex::from_terms(
            self.degree,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.partition.scale(k), m.tpow * k as i32), c.clone())),
        )
    }

    /// `f ∘ g`: every `p_k` of `f` becomes the `k`-th Adams image of `g`;
    /// coefficients of `f`, including their `t`-weights, pass through.
    pub fn plethysm(&self, g: &CycleIndex) -> Result<CycleIndex> {
        if g.terms.keys().any(|m| m.partition.is_empty()) {
            return Err(domain!("plethysm needs an inner series without constant term"));
        }
        let degree = self.degree.min(g.degree);
        let inner = g.truncate(degree);
        let mut powers: HashMap<(u32, u32), CycleIndex> = HashMap::new();
        let mut out = CycleIndex::zero(degree);
        for (m, c) in &self.terms {
            if m.size() > degree {
                continue;
            }
            let mut product = CycleIndex::monomial(degree, Partition::empty(), m.tpow, c.clone());
            let parts = m.partition.parts();
            let mut i = 0;
            while i < parts.len() {
                let k = parts[i];
                let mult = parts[i..].iter().take_while(|&&p| p == k).count() as u32;
                i += mult as usize;
                product = product.mul(&power(&mut powers, &inner, k, mult))?;
            }
            for (pm, pc) in product.terms {
                out.add_term(pm, pc);
            }
        }
        Ok(out)
    }

    /// `Σ_t` (when `weighted`) maps `c·t^j·p_λ` to
    /// `-(-1)^{ℓ(λ)}·c·t^{j+|λ|-1}·p_λ`; plain `Σ` leaves `t` alone.
    pub fn suspension(&self, weighted: bool) -> Result<CycleIndex> {
        let mut out = CycleIndex::zero(self.degree);
        for (m, c) in &self.terms {
            let tpow = if weighted { m.tpow + m.size() as i32 - 1 } else { m.tpow };
            if weighted && tpow < MIN_T_EXPONENT {
                return Err(domain!("suspension produces t^{tpow}"));
            }
            let c = if m.partition.len() % 2 == 0 {
                -c.clone()
            } else {
                c.clone()
            };
            out.add_term(Monomial::new(m.partition.clone(), tpow), c);
        }
        Ok(out)
    }

    /// `∂/∂p_1`; the result is known one degree less.
    pub fn partial_p1(&self) -> CycleIndex {
        let mut out = CycleIndex::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.partition.multiplicity(1);
            if e == 0 {
                continue;
            }
            let parts = m.partition.parts();
            let mut rest = parts.to_vec();
            let pos = rest.iter().rposition(|&p| p == 1).expect("has a part 1");
            rest.remove(pos);
            out.add_term(Monomial::new(Partition::new(rest), m.tpow), c * rational(e as i64));
        }
        out
    }

    /// `g` with `f ∘ g = g ∘ f = p_1`, for `f = p_1 + (higher degree)`.
    pub fn plethystic_inverse(&self) -> Result<CycleIndex> {
        let p1 = CycleIndex::p1(self.degree);
        let low: Vec<_> = self.terms.iter().filter(|(m, _)| m.size() <= 1).collect();
        if self.degree == 0
            || low.len() != 1
            || *low[0].0 != Monomial::new(Partition::new(vec![1]), 0)
            || !low[0].1.is_one()
        {
            return Err(domain!("plethystic inverse needs a series starting with p1"));
        }
        let higher = self.sub(&p1)?;
        let mut g = p1.clone();
        for _ in 0..self.degree {
            g = p1.sub(&higher.plethysm(&g)?)?;
        }
        Ok(g)
    }

    /// Character value on class `λ` at `t = 1`: `z_λ · [p_λ]`.
    pub fn extract_character(&self, lambda: &Partition) -> BigRational {
        self.extract_weighted_character(lambda).into_values().sum()
    }

    /// `z_λ · [t^j p_λ]` for every `j`.
    pub fn extract_weighted_character(&self, lambda: &Partition) -> BTreeMap<i32, BigRational> {
        let z = BigRational::from_integer(lambda.z());
        self.terms
            .iter()
            .filter(|(m, _)| &m.partition == lambda)
            .map(|(m, c)| (m.tpow, c * &z))
            .collect()
    }

    /// Exponential generating series: `p_1 = x`, `p_k = 0` for `k ≥ 2`. The
    /// result is kept as a series in `p_1` alone.
    pub fn egf(&self) -> CycleIndex {
        CycleIndex::from_terms(
            self.degree,
            self.terms
                .iter()
                .filter(|(m, _)| m.partition.parts().iter().all(|&p| p == 1))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Coefficient of `x^n` (all `t`-powers summed) in the exponential
    /// generating series.
    pub fn egf_coefficient(&self, n: u32) -> BigRational {
        let ones = Partition::new(vec![1; n as usize]);
        self.terms
            .iter()
            .filter(|(m, _)| m.partition == ones)
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// First monomial where two series differ, with both coefficients.
    pub fn first_difference(&self, other: &CycleIndex) -> Option<(Monomial, BigRational, BigRational)> {
        let degree = self.degree.min(other.degree);
        let keys: std::collections::BTreeSet<&Monomial> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|m| m.size() <= degree)
            .collect();
        keys.into_iter().find_map(|m| {
            let a = self.terms.get(m).cloned().unwrap_or_else(BigRational::zero);
            let b = other.terms.get(m).cloned().unwrap_or_else(BigRational::zero);
            (a != b).then(|| (m.clone(), a, b))
        })
    }

    /// Equality up to the smaller truncation degree.
    pub fn agrees_with(&self, other: &CycleIndex) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn to_json(&self) -> String {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(m, c)| JsonTerm {
                partition: m.partition.parts().to_vec(),
                tpow: m.tpow,
                num: JsonInt::from(c.numer()),
                den: JsonInt::from(c.denom()),
            })
            .collect();
        serde_json::to_string(&terms).expect("terms serialize")
    }

    pub fn from_json(s: &str, degree: u32) -> Result<CycleIndex> {
        let terms: Vec<JsonTerm> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = CycleIndex::zero(degree);
        for t in terms {
            let num = t.num.to_bigint()?;
            let den = t.den.to_bigint()?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            if t.partition.contains(&0) {
                return Err(Error::Parse("zero part in partition".into()));
            }
            out.add_term(
                Monomial::new(Partition::new(t.partition), t.tpow),
                BigRational::new(num, den),
            );
        }
        Ok(out)
    }

    /// Parses the printed form; the truncation degree is given separately.
    pub fn parse(s: &str, degree: u32) -> Result<CycleIndex> {
        let mut out = CycleIndex::zero(degree);
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text == "0" {
            return Ok(out);
        }
        let bytes = text.as_bytes();
        let mut start = 0;
        for i in 1..=bytes.len() {
            let boundary = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if boundary {
                let (m, c) = parse_term(&text[start..i])?;
                out.add_term(m, c);
                start = i;
            }
        }
        Ok(out)
    }
}

/// `(g^{(k)})^e`, memoized.
fn power(cache: &mut HashMap<(u32, u32), CycleIndex>, g: &CycleIndex, k: u32, e: u32) -> CycleIndex {
    if let Some(x) = cache.get(&(k, e)) {
        return x.clone();
    }
    let value = match e {
        0 => CycleIndex::one(g.degree),
        1 => g.adams(k),
        _ => power(cache, g, k, e - 1)
            .mul(&power(cache, g, k, 1))
            .expect("same degree"),
    };
    cache.insert((k, e), value.clone());
    value
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    partition: Vec<u32>,
    tpow: i32,
    num: JsonInt,
    den: JsonInt,
}

/// JSON integers: plain numbers when they fit in 64 bits, decimal strings
/// otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> JsonInt {
        match x.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(x.to_string()),
        }
    }
}

impl JsonInt {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        }
    }
}

fn parse_term(term: &str) -> Result<(Monomial, BigRational)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut c = BigRational::one();
    let mut tpow = 0;
    let mut parts = Vec::new();
    for (i, factor) in body.split('*').enumerate() {
        if let Some(rest) = factor.strip_prefix('t') {
            tpow += match rest.strip_prefix('^') {
                Some(e) => e.parse::<i32>().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
        } else if let Some(rest) = factor.strip_prefix('p') {
            let (k, e) = match rest.split_once('^') {
                Some((k, e)) => (k, e.parse::<usize>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let k: u32 = k.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(k, e));
        } else if i == 0 {
            c = factor.parse::<BigRational>().map_err(|_| bad())?;
        } else {
            return Err(bad());
        }
    }
    if negative {
        c = -c;
    }
    Ok((Monomial::new(Partition::new(parts), tpow), c))
}

impl fmt::Display for Monomial {
    /// `t^j*p1^2*p3`, empty for the constant monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if self.tpow != 0 {
            factors.push(format!("t^{}", self.tpow));
        }
        let parts = self.partition.parts();
        let mut distinct: Vec<u32> = parts.to_vec();
        distinct.dedup();
        distinct.reverse();
        for k in distinct {
            match self.partition.multiplicity(k) {
                1 => factors.push(format!("p{k}")),
                e => factors.push(format!("p{k}^{e}")),
            }
        }
        write!(f, "{}", factors.join("*"))
    }
}

impl fmt::Display for CycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let monomial = m.to_string();
            match (monomial.is_empty(), magnitude.is_one()) {
                (true, _) => write!(f, "{magnitude}")?,
                (false, true) => write!(f, "{monomial}")?,
                (false, false) => write!(f, "{magnitude}*{monomial}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for CycleIndex {
    type Err = Error;

    /// Parses with the truncation degree set to the largest term degree.
    fn from_str(s: &str) -> Result<Self> {
        let loose = CycleIndex::parse(s, u32::MAX)?;
        let degree = loose.terms.keys().map(Monomial::size).max().unwrap_or(0);
        Ok(CycleIndex::from_terms(degree, loose.terms))
    }
}

/// The named series of the theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesName {
    Comm,
    Perm,
    E,
    X,
    PreLie,
    SigmaPreLie,
    SigmaLie,
    SigmaW,
    SigmaWt,
    M,
    HALpA,
    HALA,
    HALp,
    HAL,
}

impl SeriesName {
    pub const ALL: [SeriesName; 14] = [
        SeriesName::Comm,
        SeriesName::Perm,
        SeriesName::E,
        SeriesName::X,
        SeriesName::PreLie,
        SeriesName::SigmaPreLie,
        SeriesName::SigmaLie,
        SeriesName::SigmaW,
        SeriesName::SigmaWt,
        SeriesName::M,
        SeriesName::HALpA,
        SeriesName::HALA,
        SeriesName::HALp,
        SeriesName::HAL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesName::Comm => "Comm",
            SeriesName::Perm => "Perm",
            SeriesName::E => "E",
            SeriesName::X => "X",
            SeriesName::PreLie => "PreLie",
            SeriesName::SigmaPreLie => "SigmaPreLie",
            SeriesName::SigmaLie => "SigmaLie",
            SeriesName::SigmaW => "SigmaW",
            SeriesName::SigmaWt => "SigmaW_t",
            SeriesName::M => "M",
            SeriesName::HALpA => "HALpA",
            SeriesName::HALA => "HALA",
            SeriesName::HALp => "HALp",
            SeriesName::HAL => "HAL",
        }
    }
}

impl FromStr for SeriesName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeriesName::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| domain!("unknown series {s:?}"))
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Σ_{1 ≤ |λ| ≤ N} p_λ / z_λ`.
pub fn comm(degree: u32) -> CycleIndex {
    CycleIndex::from_terms(
        degree,
        (1..=degree).flat_map(|n| {
            Partition::all(n).into_iter().map(|l| {
                let c = BigRational::new(BigInt::one(), l.z());
                (Monomial::new(l, 0), c)
            })
        }),
    )
}

/// `p_1 (1 + Comm)`.
pub fn perm(degree: u32) -> CycleIndex {
    comm(degree)
        .add(&CycleIndex::one(degree))
        .expect("same degree")
        .mul_p1()
        .truncate(degree)
}

/// Rooted trees: the fixed point of `Z = p_1 · (1 + Comm) ∘ Z`.
pub fn prelie(degree: u32) -> Result<CycleIndex> {
    let e = comm(degree).add(&CycleIndex::one(degree))?;
    let mut z = CycleIndex::zero(degree);
    for _ in 0..degree {
        z = e.plethysm(&z)?.mul_p1().truncate(degree);
    }
    Ok(z)
}

pub fn sigma_prelie(degree: u32) -> Result<CycleIndex> {
    prelie(degree)?.suspension(false)
}

/// `ΣLie`, the plethystic inverse of `Comm`.
pub fn sigma_lie(degree: u32) -> Result<CycleIndex> {
    comm(degree).plethystic_inverse()
}

/// `C_Lie = Σ(ΣLie)`.
pub fn lie(degree: u32) -> Result<CycleIndex> {
    sigma_lie(degree)?.suspension(false)
}

pub fn sigma_w(degree: u32) -> Result<CycleIndex> {
    perm(degree).plethystic_inverse()
}

/// Inverse of `t·Perm − t·p_1 + p_1`.
pub fn sigma_w_t(degree: u32) -> Result<CycleIndex> {
    let p1 = CycleIndex::p1(degree);
    perm(degree).sub(&p1)?.mul_t(1).add(&p1)?.plethystic_inverse()
}

/// `Comm ∘ ΣPreLie + p_1 (ΣPreLie + 1) − p_1`.
pub fn c_minus_one_formula(degree: u32) -> Result<CycleIndex> {
    let s = sigma_prelie(degree)?;
    let one = CycleIndex::one(degree);
    comm(degree)
        .plethysm(&s)?
        .add(&s.add(&one)?.mul_p1().truncate(degree))?
        .sub(&CycleIndex::p1(degree))
}

/// `ΣM = p_1 − C_{-1}`.
pub fn sigma_m(degree: u32) -> Result<CycleIndex> {
    CycleIndex::p1(degree).sub(&c_minus_one_formula(degree)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalMethod {
    FixedPoint,
    ClosedForm,
}

/// The four weighted series describing Whitney homology.
pub fn hal_series(tag: SeriesName, degree: u32, method: HalMethod) -> Result<CycleIndex> {
    if degree == 0 {
        return Err(domain!("truncation degree must be at least 1"));
    }
    match method {
        HalMethod::FixedPoint => hal_fixed_point(tag, degree),
        HalMethod::ClosedForm => hal_closed_form(tag, degree),
    }
}

fn hal_fixed_point(tag: SeriesName, degree: u32) -> Result<CycleIndex> {
    let p1 = CycleIndex::p1(degree);
    let c = comm(degree);
    // p1 / (1 + t p1) = Σ_{j≥1} (−t)^{j−1} p1^j
    let q = CycleIndex::from_terms(
        degree,
        (1..=degree).map(|j| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            (
                Monomial::new(Partition::new(vec![1; j as usize]), j as i32 - 1),
                rational(sign),
            )
        }),
    );
    let q_comm = q.plethysm(&c)?;
    let mut pa = CycleIndex::zero(degree);
    for _ in 0..degree {
        let inner = p1.sub(&pa.mul_t(1))?;
        pa = q_comm.plethysm(&inner)?.mul_p1().truncate(degree);
    }
    let inner = p1.sub(&pa.mul_t(1))?;
    let a = || c.sub(&p1)?.plethysm(&inner);
    let p = || -> Result<CycleIndex> {
        let sigma_t_lie = lie(degree)?.suspension(true)?;
        Ok(sigma_t_lie.plethysm(&c)?.plethysm(&inner)?.mul_p1().truncate(degree))
    };
    match tag {
        SeriesName::HALpA => Ok(pa),
        SeriesName::HALA => a(),
        SeriesName::HALp => p(),
        SeriesName::HAL => p()?.add(&a()?)?.sub(&pa),
        other => Err(domain!("{other} is not a HAL series")),
    }
}

fn hal_closed_form(tag: SeriesName, degree: u32) -> Result<CycleIndex> {
    let p1 = CycleIndex::p1(degree);
    let c = comm(degree);
    let w = sigma_w_t(degree)?;
    let pa = || Ok::<_, Error>(p1.sub(&w)?.mul_t(-1));
    let a = || c.sub(&p1)?.plethysm(&w);
    let p = || -> Result<CycleIndex> {
        let inner = c.plethysm(&w)?.mul_t(1);
        Ok(sigma_lie(degree)?.plethysm(&inner)?.mul_p1().truncate(degree).mul_t(-1))
    };
    match tag {
        SeriesName::HALpA => pa(),
        SeriesName::HALA => a(),
        SeriesName::HALp => p(),
        SeriesName::HAL => p()?.add(&a()?)?.sub(&pa()?),
        other => Err(domain!("{other} is not a HAL series")),
    }
}

pub fn named_series(tag: SeriesName, degree: u32) -> Result<CycleIndex> {
    if degree == 0 {
        return Err(domain!("truncation degree must be at least 1"));
    }
    match tag {
        SeriesName::Comm => Ok(comm(degree)),
        SeriesName::Perm => Ok(perm(degree)),
        SeriesName::E => comm(degree).add(&CycleIndex::one(degree)),
        SeriesName::X => Ok(CycleIndex::p1(degree)),
        SeriesName::PreLie => prelie(degree),
        SeriesName::SigmaPreLie => sigma_prelie(degree),
        SeriesName::SigmaLie => sigma_lie(degree),
        SeriesName::SigmaW => sigma_w(degree),
        SeriesName::SigmaWt => sigma_w_t(degree),
        SeriesName::M => sigma_m(degree)?.suspension(false),
        SeriesName::HALpA | SeriesName::HALA | SeriesName::HALp | SeriesName::HAL => {
            hal_series(tag, degree, HalMethod::FixedPoint)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn s(text: &str, degree: u32) -> CycleIndex {
        CycleIndex::parse(text, degree).unwrap()
    }

    #[test]
    fn printing() {
        assert_eq!(perm(2).to_string(), "p1 + p1^2");
        assert_eq!(comm(2).to_string(), "p1 + 1/2*p1^2 + 1/2*p2");
        let m = CycleIndex::monomial(3, Partition::new(vec![2, 1]), 1, q(1, 2));
        assert_eq!(m.to_string(), "1/2*t^1*p1*p2");
        assert_eq!(CycleIndex::zero(3).to_string(), "0");
        assert_eq!(s("-p2 + 3*t^-1", 2).to_string(), "3*t^-1 - p2");
    }

    #[test]
    fn parse_round_trip() {
        let x = sigma_w_t(5).unwrap();
        assert_eq!(CycleIndex::parse(&x.to_string(), 5).unwrap(), x);
        assert_eq!(CycleIndex::from_json(&x.to_json(), 5).unwrap(), x);
        assert!(CycleIndex::parse("p0", 3).is_err());
        assert!(CycleIndex::parse("p1*x", 3).is_err());
    }

    #[test]
    fn ring_examples() {
        let p1 = CycleIndex::p1(4);
        assert_eq!(p1.add(&CycleIndex::zero(4)).unwrap(), p1);
        assert_eq!(p1.mul(&p1).unwrap(), s("p1^2", 4));
        assert!(p1.add(&CycleIndex::p1(3)).is_err());
        assert_eq!(
            perm(5),
            comm(5)
                .add(&CycleIndex::one(5))
                .unwrap()
                .mul(&CycleIndex::p1(5))
                .unwrap()
        );
    }

    #[test]
    fn plethysm_examples() {
        let g = sigma_w_t(4).unwrap();
        assert_eq!(CycleIndex::p1(4).plethysm(&g).unwrap(), g);
        assert_eq!(g.plethysm(&CycleIndex::p1(4)).unwrap(), g);
        assert_eq!(
            CycleIndex::p(7, 2).plethysm(&CycleIndex::p(7, 3)).unwrap(),
            CycleIndex::p(7, 6)
        );
        assert!(comm(3).plethysm(&CycleIndex::one(3)).is_err());
        // t in the outer series is a coefficient; t in the inner one is raised
        let outer = s("t^1*p2", 4);
        let inner = s("t^1*p1", 4);
        assert_eq!(outer.plethysm(&inner).unwrap(), s("t^3*p2", 4));
    }

    #[test]
    fn suspension_examples() {
        assert_eq!(CycleIndex::p1(3).suspension(true).unwrap(), CycleIndex::p1(3));
        assert_eq!(CycleIndex::p(3, 2).suspension(true).unwrap(), s("t^1*p2", 3));
        let f = comm(5);
        assert_eq!(f.suspension(false).unwrap().suspension(false).unwrap(), f);
        assert!(CycleIndex::one(3).mul_t(-1).suspension(true).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(s("p1^2", 3).partial_p1(), s("2*p1", 2));
        assert_eq!(comm(6).partial_p1().mul_p1(), perm(6));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(CycleIndex::p1(5).plethystic_inverse().unwrap(), CycleIndex::p1(5));
        let p1 = CycleIndex::p1(7);
        let l = sigma_lie(7).unwrap();
        assert_eq!(comm(7).plethysm(&l).unwrap(), p1);
        assert_eq!(l.plethysm(&comm(7)).unwrap(), p1);
        assert!(comm(3).mul_t(1).plethystic_inverse().is_err());
        assert!(CycleIndex::p(3, 2).plethystic_inverse().is_err());
    }

    #[test]
    fn prelie_low_degrees() {
        let z = prelie(3).unwrap();
        assert_eq!(z.slice(2), s("p1^2", 3));
        assert_eq!(z.slice(3), s("3/2*p1^3 + 1/2*p1*p2", 3));
    }

    #[test]
    fn characters() {
        let c = comm(5);
        for lambda in Partition::all(4) {
            assert_eq!(c.extract_character(&lambda), q(1, 1));
        }
        assert_eq!(perm(5).extract_character(&Partition::new(vec![1; 4])), q(4, 1));
    }

    #[test]
    fn c_minus_one_degree_three() {
        let c = c_minus_one_formula(5).unwrap();
        let values: Vec<BigRational> = [vec![1, 1, 1], vec![2, 1], vec![3]]
            .into_iter()
            .map(|p| c.extract_character(&Partition::new(p)))
            .collect();
        assert_eq!(values, vec![q(-2, 1), q(0, 1), q(1, 1)]);
        assert_eq!(c.slice(1), CycleIndex::p1(5));
    }

    #[test]
    fn hal_methods_agree() {
        for tag in [SeriesName::HALpA, SeriesName::HALA, SeriesName::HALp, SeriesName::HAL] {
            let a = hal_series(tag, 5, HalMethod::FixedPoint).unwrap();
            let b = hal_series(tag, 5, HalMethod::ClosedForm).unwrap();
            assert_eq!(a, b, "{tag}");
        }
        assert!(hal_series(SeriesName::Comm, 3, HalMethod::ClosedForm).is_err());
    }

    #[test]
    fn named_lookup() {
        assert_eq!("SigmaW_t".parse::<SeriesName>().unwrap(), SeriesName::SigmaWt);
        assert!("Foo".parse::<SeriesName>().is_err());
        assert!(named_series(SeriesName::Comm, 0).is_err());
        assert_eq!(named_series(SeriesName::X, 3).unwrap(), CycleIndex::p1(3));
    }
}
