//! The registered identities, each checked by exact comparison of two
//! truncated series (or two lists of numbers).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::ChainData;
use crate::error::{Error, Result};
use crate::homology::whitney_dimensions;
use crate::perm::Partition;
use crate::poset::ChainVariant::{self, *};
use crate::series::{self, CycleIndex, HalMethod, Monomial, SeriesName};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub case: String,
    pub status: Status,
    pub max_degree: u32,
    pub left: String,
    pub right: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Clone)]
pub struct VerifyParams {
    /// Highest number of labels for chain-count series.
    pub chain_degree: u32,
    /// Truncation degree for purely algebraic identities.
    pub series_degree: u32,
    /// Counted chain lengths; `0` and `-1` are always added.
    pub ks: Vec<i64>,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            chain_degree: 5,
            series_degree: 7,
            ks: vec![1, 2, 3],
        }
    }
}

impl VerifyParams {
    fn lengths(&self) -> Vec<i64> {
        let mut ks = vec![-1, 0];
        ks.extend(self.ks.iter().copied().filter(|&k| k >= 1));
        ks.dedup();
        ks
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Dissymmetry,
    RootedDecomposition,
    HollowDecomposition,
    HollowSingleEdge,
    EdgePointed,
    EdgePointedRooted,
    Derivative,
    WeightedRecursions,
    MaxPointed,
    CharacterTheorem,
    WhitneyTheorem,
    Egf,
    WhitneyCrossCheck,
    Algebra,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::Dissymmetry,
        Identity::RootedDecomposition,
        Identity::HollowDecomposition,
        Identity::HollowSingleEdge,
        Identity::EdgePointed,
        Identity::EdgePointedRooted,
        Identity::Derivative,
        Identity::WeightedRecursions,
        Identity::MaxPointed,
        Identity::CharacterTheorem,
        Identity::WhitneyTheorem,
        Identity::Egf,
        Identity::WhitneyCrossCheck,
        Identity::Algebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Dissymmetry => "dissymmetry",
            Identity::RootedDecomposition => "rooted-decomposition",
            Identity::HollowDecomposition => "hollow-decomposition",
            Identity::HollowSingleEdge => "hollow-single-edge",
            Identity::EdgePointed => "edge-pointed",
            Identity::EdgePointedRooted => "edge-pointed-rooted",
            Identity::Derivative => "derivative",
            Identity::WeightedRecursions => "weighted-recursions",
            Identity::MaxPointed => "max-pointed",
            Identity::CharacterTheorem => "character-theorem",
            Identity::WhitneyTheorem => "whitney-theorem",
            Identity::Egf => "egf",
            Identity::WhitneyCrossCheck => "whitney-cross-check",
            Identity::Algebra => "algebra",
        }
    }

    /// Position in the ledger, starting at 1.
    pub fn number(self) -> usize {
        Identity::ALL.iter().position(|&i| i == self).expect("listed") + 1
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    /// Accepts the name or the ledger number.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(i) = s.parse::<usize>() {
            if (1..=Identity::ALL.len()).contains(&i) {
                return Ok(Identity::ALL[i - 1]);
            }
        }
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown identity {s:?}")))
    }
}

fn compare(identity: Identity, case: String, left: &CycleIndex, right: &CycleIndex) -> VerificationReport {
    let difference = left.first_difference(right);
    VerificationReport {
        identity: identity.name().into(),
        case,
        status: if difference.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        max_degree: left.degree().min(right.degree()),
        left: left.truncate(right.degree()).to_string(),
        right: right.truncate(left.degree()).to_string(),
        first_difference: difference.map(|(m, a, b)| format!("[{m}] {a} vs {b}")),
    }
}

fn compare_values<T: PartialEq + fmt::Debug>(
    identity: Identity,
    case: String,
    degree: u32,
    left: &[T],
    right: &[T],
) -> VerificationReport {
    let first = (0..left.len().max(right.len())).find(|&i| left.get(i) != right.get(i));
    VerificationReport {
        identity: identity.name().into(),
        case,
        status: if first.is_none() { Status::Pass } else { Status::Fail },
        max_degree: degree,
        left: format!("{left:?}"),
        right: format!("{right:?}"),
        first_difference: first.map(|i| format!("entry {i}: {:?} vs {:?}", left.get(i), right.get(i))),
    }
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `Σ_{n=1}^{N} a(n) p_1^n / n!`.
fn egf_series(degree: u32, a: impl Fn(u32) -> BigInt) -> CycleIndex {
    CycleIndex::from_terms(
        degree,
        (1..=degree).map(|n| {
            (
                Monomial::new(Partition::new(vec![1; n as usize]), 0),
                BigRational::new(a(n), factorial(n)),
            )
        }),
    )
}

fn pow(base: i64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

fn sign(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `p_1 / t`.
fn p1_over_t(degree: u32) -> CycleIndex {
    CycleIndex::p1(degree).mul_t(-1)
}

struct Ctx<'a> {
    data: &'a ChainData,
    params: &'a VerifyParams,
}

impl Ctx<'_> {
    fn d(&self) -> u32 {
        self.params.chain_degree
    }

    fn s(&self, variant: ChainVariant, k: i64) -> Result<CycleIndex> {
        self.data.series(variant, false, k, self.d())
    }

    fn st(&self, variant: ChainVariant, k: i64) -> Result<CycleIndex> {
        self.data.series(variant, true, k, self.d())
    }
}

pub fn verify_identity(identity: Identity, data: &ChainData, params: &VerifyParams) -> Result<Vec<VerificationReport>> {
    let ctx = Ctx { data, params };
    let d = ctx.d();
    let p1 = CycleIndex::p1(d);
    let one = CycleIndex::one(d);
    let comm = series::comm(d);
    let ks = params.lengths();
    let per_k = |f: &(dyn Fn(i64) -> Result<Vec<VerificationReport>> + Sync)| -> Result<Vec<VerificationReport>> {
        let parts = ks.par_iter().map(|&k| f(k)).collect::<Result<Vec<_>>>()?;
        Ok(parts.into_iter().flatten().collect())
    };
    match identity {
        Identity::Dissymmetry => per_k(&|k| {
            let mut out = Vec::new();
            for weighted in [false, true] {
                let s = |v| ctx.data.series(v, weighted, k, d);
                let left = s(Plain)?.add(&s(MinEdgePointedRooted)?)?;
                let right = s(MinRooted)?.add(&s(MinEdgePointed)?)?;
                out.push(compare(identity, format!("k={k} weighted={weighted}"), &left, &right));
            }
            Ok(out)
        }),
        Identity::RootedDecomposition => per_k(&|k| {
            let right = comm.plethysm(&ctx.s(HollowMin, k)?)?.mul_p1().truncate(d).add(&p1)?;
            Ok(vec![compare(identity, format!("k={k}"), &ctx.s(MinRooted, k)?, &right)])
        }),
        Identity::HollowDecomposition => per_k(&|k| {
            let right = ctx.s(HollowMinSingleEdge, k)?.plethysm(&ctx.s(MinRooted, k)?)?;
            Ok(vec![compare(identity, format!("k={k}"), &ctx.s(HollowMin, k)?, &right)])
        }),
        Identity::HollowSingleEdge => per_k(&|k| {
            let right = comm.plethysm(&ctx.s(HollowMin, k - 1)?)?;
            Ok(vec![compare(
                identity,
                format!("k={k}"),
                &ctx.s(HollowMinSingleEdge, k)?,
                &right,
            )])
        }),
        Identity::EdgePointed => per_k(&|k| {
            let right = ctx.s(Plain, k - 1)?.sub(&p1)?.plethysm(&ctx.s(MinRooted, k)?)?;
            Ok(vec![compare(
                identity,
                format!("k={k}"),
                &ctx.s(MinEdgePointed, k)?,
                &right,
            )])
        }),
        Identity::EdgePointedRooted => per_k(&|k| {
            let right = ctx.s(MinRooted, k - 1)?.sub(&p1)?.plethysm(&ctx.s(MinRooted, k)?)?;
            Ok(vec![compare(
                identity,
                format!("k={k}"),
                &ctx.s(MinEdgePointedRooted, k)?,
                &right,
            )])
        }),
        Identity::Derivative => per_k(&|k| {
            let mut out = Vec::new();
            for weighted in [false, true] {
                let left = ctx.data.series(Plain, weighted, k, d)?.partial_p1().mul_p1();
                let right = ctx.data.series(MinRooted, weighted, k, d)?;
                out.push(compare(identity, format!("k={k} weighted={weighted}"), &left, &right));
            }
            Ok(out)
        }),
        Identity::WeightedRecursions => per_k(&|k| {
            let rooted = ctx.st(MinRooted, k)?;
            let inner = rooted.mul_t(1);
            // (t C^p_{k-1,t} − p1) / p1
            let quotient = ctx.st(MinRooted, k - 1)?.mul_t(1).sub(&p1)?.div_p1()?;
            let rooted_right = series::comm(d - 1)
                .plethysm(&quotient.plethysm(&inner)?)?
                .add(&CycleIndex::one(d - 1))?
                .mul_p1()
                .mul_t(-1);
            let a_right = ctx.st(Plain, k - 1)?.sub(&p1_over_t(d))?.plethysm(&inner)?;
            let pa_right = ctx.st(MinRooted, k - 1)?.sub(&p1_over_t(d))?.plethysm(&inner)?;
            Ok(vec![
                compare(identity, format!("rooted k={k}"), &rooted, &rooted_right),
                compare(
                    identity,
                    format!("edge-pointed k={k}"),
                    &ctx.st(MinEdgePointed, k)?,
                    &a_right,
                ),
                compare(
                    identity,
                    format!("edge-pointed-rooted k={k}"),
                    &ctx.st(MinEdgePointedRooted, k)?,
                    &pa_right,
                ),
            ])
        }),
        Identity::MaxPointed => per_k(&|k| {
            let inner = ctx.st(MinRooted, k)?.mul_t(1);
            let big_a = ctx.st(MaxEdgePointed, k)?;
            let big_pa = ctx.st(MaxEdgePointedRooted, k)?;
            let mut out = vec![
                compare(
                    identity,
                    format!("max-edge-pointed k={k}"),
                    &big_a,
                    &ctx.st(MaxEdgePointed, k - 1)?.plethysm(&inner)?,
                ),
                compare(
                    identity,
                    format!("max-edge-pointed-rooted k={k}"),
                    &big_pa,
                    &ctx.st(MaxEdgePointedRooted, k - 1)?.plethysm(&inner)?,
                ),
                compare(
                    identity,
                    format!("dissymmetry k={k}"),
                    &ctx.st(Plain, k)?.add(&big_pa)?,
                    &ctx.st(MinRooted, k)?.add(&big_a)?,
                ),
            ];
            if k == 1 {
                out.push(compare(
                    identity,
                    "edge-pointed coincidence k=1".into(),
                    &ctx.st(MinEdgePointed, 1)?,
                    &big_a,
                ));
                out.push(compare(
                    identity,
                    "edge-pointed-rooted coincidence k=1".into(),
                    &ctx.st(MinEdgePointedRooted, 1)?,
                    &big_pa,
                ));
            }
            Ok(out)
        }),
        Identity::CharacterTheorem => {
            let c = ctx.s(Plain, -1)?;
            let sp = series::sigma_prelie(d)?;
            let sigma_m = p1.sub(&c)?;
            // (ΣM − 1)·ΣPreLie + p1(1 − ΣPreLie + ΣPreLie²)
            let multiplied = sigma_m
                .sub(&one)?
                .mul(&sp)?
                .add(&p1.mul(&one.sub(&sp)?.add(&sp.mul(&sp)?)?)?)?;
            let rooted_formula = sp.add(&one)?.mul(&p1)?;
            Ok(vec![
                compare(identity, "k=-1 formula".into(), &c, &series::c_minus_one_formula(d)?),
                compare(identity, "k=-1 rooted".into(), &ctx.s(MinRooted, -1)?, &rooted_formula),
                compare(
                    identity,
                    "k=-1 anti-cyclic multiplied form".into(),
                    &multiplied,
                    &CycleIndex::zero(d),
                ),
                compare(identity, "k=0 plain".into(), &ctx.s(Plain, 0)?, &comm),
                compare(identity, "k=0 rooted".into(), &ctx.s(MinRooted, 0)?, &series::perm(d)),
                compare(
                    identity,
                    "k=0 edge-pointed".into(),
                    &ctx.s(MinEdgePointed, 0)?,
                    &comm.add(&p1.sub(&one)?.mul(&series::perm(d))?)?,
                ),
                compare(
                    identity,
                    "k=0 edge-pointed-rooted".into(),
                    &ctx.s(MinEdgePointedRooted, 0)?,
                    &p1.mul(&series::perm(d))?,
                ),
                compare(identity, "k=0 hollow".into(), &ctx.s(HollowMin, 0)?, &p1),
            ])
        }
        Identity::WhitneyTheorem => {
            let hal = |tag| series::hal_series(tag, d, HalMethod::ClosedForm);
            let weighted_zero = [
                (Plain, comm.sub(&p1)?.add(&p1_over_t(d))?),
                (MinRooted, p1.mul(&comm)?.add(&p1_over_t(d))?),
                (MaxEdgePointed, comm.sub(&p1)?),
                (MaxEdgePointedRooted, p1.mul(&comm)?),
            ];
            let mut out = vec![
                compare(
                    identity,
                    "max-edge-pointed-rooted k=-1".into(),
                    &ctx.st(MaxEdgePointedRooted, -1)?,
                    &hal(SeriesName::HALpA)?,
                ),
                compare(
                    identity,
                    "max-edge-pointed k=-1".into(),
                    &ctx.st(MaxEdgePointed, -1)?,
                    &hal(SeriesName::HALA)?,
                ),
                compare(
                    identity,
                    "rooted k=-1".into(),
                    &ctx.st(MinRooted, -1)?,
                    &hal(SeriesName::HALp)?.add(&p1_over_t(d))?,
                ),
                compare(
                    identity,
                    "plain k=-1".into(),
                    &ctx.st(Plain, -1)?,
                    &hal(SeriesName::HAL)?.add(&p1_over_t(d))?,
                ),
            ];
            for (variant, expected) in weighted_zero {
                out.push(compare(
                    identity,
                    format!("{} k=0", variant.name()),
                    &ctx.st(variant, 0)?,
                    &expected,
                ));
            }
            Ok(out)
        }
        Identity::Egf => egf_reports(&ctx),
        Identity::WhitneyCrossCheck => {
            let top = d.min(5);
            (2..=top)
                .into_par_iter()
                .map(|n| {
                    let wh = whitney_dimensions(n)?;
                    let kp = ctx.data.polynomial(n, Plain, true)?;
                    let character = kp.character(&Partition::new(vec![1; n as usize]), -1);
                    let max_rank = n as i32 - 2;
                    let left: Vec<BigRational> = (0..=max_rank)
                        .map(|r| character.get(&r).cloned().unwrap_or_else(BigRational::zero))
                        .collect();
                    let right: Vec<BigRational> = (0..=max_rank)
                        .map(|r| match r {
                            0 => BigRational::one(),
                            _ => q(sign(r as u32) * wh.get(&r).copied().unwrap_or(0) as i64, 1),
                        })
                        .collect();
                    Ok(compare_values(identity, format!("n={n}"), n, &left, &right))
                })
                .collect()
        }
        Identity::Algebra => algebra_reports(params.series_degree),
    }
}

fn egf_reports(ctx: &Ctx) -> Result<Vec<VerificationReport>> {
    let id = Identity::Egf;
    let d = ctx.d();
    let n_deg = ctx.params.series_degree;
    let p1 = CycleIndex::p1(d);
    let sao = |deg| egf_series(deg, |n| pow(n as i64 - 1, 2));
    let spao = |deg| egf_series(deg, |n| BigInt::from(n) * BigInt::from(n - 1));
    let c_minus_one = |deg| {
        egf_series(deg, |n| match n {
            1 => BigInt::one(),
            _ => pow(n as i64 - 1, n - 2) * sign(n),
        })
    };
    let sigma_w = |deg| egf_series(deg, |n| pow(n as i64, n - 1) * sign(n - 1));
    let mut out = vec![
        compare(
            id,
            "edge-pointed k=0, counted".into(),
            &ctx.s(MinEdgePointed, 0)?.egf(),
            &sao(d),
        ),
        compare(
            id,
            "edge-pointed-rooted k=0, counted".into(),
            &ctx.s(MinEdgePointedRooted, 0)?.egf(),
            &spao(d),
        ),
        compare(id, "k=-1, counted".into(), &ctx.s(Plain, -1)?.egf(), &c_minus_one(d)),
        compare(
            id,
            "(C_-1 - x)' = SigmaW, counted".into(),
            &ctx.s(Plain, -1)?.sub(&p1)?.partial_p1().egf(),
            &sigma_w(d - 1),
        ),
    ];
    // purely algebraic layer at the series degree
    let n = n_deg;
    let p1 = CycleIndex::p1(n);
    let sp = series::sigma_prelie(n)?;
    let e_sp = series::comm(n).add(&CycleIndex::one(n))?.plethysm(&sp)?;
    let formula = series::c_minus_one_formula(n)?;
    let perm = series::perm(n);
    let rooted = sp.add(&CycleIndex::one(n))?.mul(&p1)?;
    let shifted = egf_series(n, |m| match m {
        1 => BigInt::zero(),
        _ => pow(m as i64 - 1, m - 1) * sign(m - 1),
    });
    out.extend([
        compare(id, "SigmaPreLie coefficients".into(), &sp.egf(), &sigma_w(n)),
        compare(id, "SigmaW exp(SigmaW) = x".into(), &sp.mul(&e_sp)?.egf(), &p1),
        compare(
            id,
            "exp(SigmaW) - x - 1".into(),
            &e_sp.sub(&p1)?.sub(&CycleIndex::one(n))?.egf(),
            &shifted,
        ),
        compare(id, "k=-1 formula".into(), &formula.egf(), &c_minus_one(n)),
        compare(
            id,
            "(C_-1 - x)' = SigmaW".into(),
            &formula.sub(&p1)?.partial_p1().egf(),
            &sigma_w(n - 1),
        ),
        compare(
            id,
            "edge-pointed k=0 via composition".into(),
            &formula.sub(&p1)?.plethysm(&perm)?.egf(),
            &sao(n),
        ),
        compare(
            id,
            "edge-pointed-rooted k=0 via composition".into(),
            &rooted.sub(&p1)?.plethysm(&perm)?.egf(),
            &spao(n),
        ),
    ]);
    Ok(out)
}

fn algebra_reports(n: u32) -> Result<Vec<VerificationReport>> {
    let id = Identity::Algebra;
    let p1 = CycleIndex::p1(n);
    let one = CycleIndex::one(n);
    let comm = series::comm(n);
    let perm = series::perm(n);
    let sp = series::sigma_prelie(n)?;
    let sl = series::sigma_lie(n)?;
    let swt = series::sigma_w_t(n)?;
    let swt_source = perm.sub(&p1)?.mul_t(1).add(&p1)?;
    let sigma_m = series::sigma_m(n)?;
    let lie = series::lie(n)?;
    let t_p1 = p1.mul_t(1);
    let mut out = vec![
        compare(id, "Comm o SigmaLie".into(), &comm.plethysm(&sl)?, &p1),
        compare(id, "SigmaLie o Comm".into(), &sl.plethysm(&comm)?, &p1),
        compare(id, "source o SigmaW_t".into(), &swt_source.plethysm(&swt)?, &p1),
        compare(id, "SigmaW_t o source".into(), &swt.plethysm(&swt_source)?, &p1),
        compare(id, "SigmaPreLie o Perm".into(), &sp.plethysm(&perm)?, &p1),
        compare(id, "Perm o SigmaPreLie".into(), &perm.plethysm(&sp)?, &p1),
        compare(id, "SigmaW = SigmaPreLie".into(), &series::sigma_w(n)?, &sp),
        compare(id, "inverse of SigmaLie".into(), &sl.plethystic_inverse()?, &comm),
        compare(
            id,
            "inverse of SigmaW_t".into(),
            &swt.plethystic_inverse()?,
            &swt_source,
        ),
        compare(id, "SigmaW_t at t=1".into(), &swt.at_t1(), &sp),
        // (a)
        compare(id, "(a)".into(), &sp.mul(&one.add(&comm.plethysm(&sp)?)?)?, &p1),
        // (b)
        compare(
            id,
            "(b)".into(),
            &swt.mul(&comm.plethysm(&swt)?)?.mul_t(1),
            &p1.sub(&swt)?,
        ),
        // (c)
        compare(
            id,
            "(c)".into(),
            &sigma_m
                .sub(&one)?
                .mul(&sp)?
                .add(&p1.mul(&one.sub(&sp)?.add(&sp.mul(&sp)?)?)?)?,
            &CycleIndex::zero(n),
        ),
        // (d)
        compare(id, "(d)".into(), &lie.suspension(true)?, &sl.plethysm(&t_p1)?.mul_t(-1)),
    ];
    for tag in [SeriesName::HALpA, SeriesName::HALA, SeriesName::HALp, SeriesName::HAL] {
        out.push(compare(
            id,
            format!("{tag} fixed point = closed form"),
            &series::hal_series(tag, n, HalMethod::FixedPoint)?,
            &series::hal_series(tag, n, HalMethod::ClosedForm)?,
        ));
    }
    let pa = series::hal_series(SeriesName::HALpA, n, HalMethod::ClosedForm)?;
    out.push(compare(
        id,
        "t HALpA + SigmaW_t = p1".into(),
        &pa.mul_t(1).add(&swt)?,
        &p1,
    ));
    Ok(out)
}

/// Runs one identity or the whole ledger, in ledger order.
pub fn run_ledger(data: &ChainData, params: &VerifyParams, only: Option<Identity>) -> Result<Vec<VerificationReport>> {
    let selected: Vec<Identity> = match only {
        Some(i) => vec![i],
        None => Identity::ALL.to_vec(),
    };
    let parts = selected
        .par_iter()
        .map(|&i| verify_identity(i, data, params))
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().flatten().collect())
}
