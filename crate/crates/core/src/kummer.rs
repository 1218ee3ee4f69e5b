//! The tame cyclic subcover `z^m = ∏ (x − x_i)^{a_i}` and its reduction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KummerError {
    #[error("m = {0} must be at least 2")]
    SmallM(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("gcd(m, p) must be 1 (m = {m}, p = {p})")]
    NotTame { m: u64, p: u64 },
    #[error("residue {0:?} is not an element of F_p^d")]
    BadResidue(Vec<u64>),
    #[error("exponent sum {sum} is not divisible by m = {m}; the cover would be branched at infinity")]
    DivisibilityViolation { sum: u64, m: u64 },
}

/// A residue in `F_{p^d}`, written either as its coordinate list or as the
/// integer whose base-`p` digits are those coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResidueInput {
    Encoded(u64),
    Coords(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPointInput {
    pub residue: ResidueInput,
    pub exponent: i64,
}

/// JSON form `{m, p, d, points: [{residue, exponent}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorInput {
    pub m: u64,
    pub p: u64,
    #[serde(default = "one")]
    pub d: u32,
    pub points: Vec<BranchPointInput>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPoint {
    /// Coordinates of `x̄_i` in `F_{p^d}`, length exactly `d`.
    pub residue: Vec<u64>,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDivisor {
    pub m: u64,
    pub p: u64,
    pub d: u32,
    pub points: Vec<BranchPoint>,
}

impl BranchDivisor {
    pub fn new(m: u64, p: u64, d: u32, points: Vec<BranchPoint>) -> Result<Self, KummerError> {
        if m < 2 {
            return Err(KummerError::SmallM(m));
        }
        if !arith::is_prime(p) {
            return Err(KummerError::NotPrime(p));
        }
        if d == 0 {
            return Err(KummerError::ZeroDegree);
        }
        if m % p == 0 {
            return Err(KummerError::NotTame { m, p });
        }
        let mut points = points;
        for pt in &mut points {
            if pt.residue.len() > d as usize || pt.residue.iter().any(|&c| c >= p) {
                return Err(KummerError::BadResidue(pt.residue.clone()));
            }
            pt.residue.resize(d as usize, 0);
        }
        Ok(BranchDivisor { m, p, d, points })
    }

    /// Prime-field divisor from residues in `F_p` given as integers.
    pub fn over_prime_field(m: u64, p: u64, points: &[(u64, i64)]) -> Result<Self, KummerError> {
        let pts = points
            .iter()
            .map(|&(x, a)| BranchPoint {
                residue: vec![x % p],
                exponent: a,
            })
            .collect();
        BranchDivisor::new(m, p, 1, pts)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.points.iter().map(|pt| pt.exponent).sum()
    }

    pub fn exponents(&self) -> Vec<i64> {
        self.points.iter().map(|pt| pt.exponent).collect()
    }

    /// True when normalization removed every point (a trivial subcover).
    pub fn is_degenerate(&self) -> bool {
        self.points.is_empty()
    }
}

impl TryFrom<DivisorInput> for BranchDivisor {
    type Error = KummerError;

    fn try_from(input: DivisorInput) -> Result<Self, KummerError> {
        let p = input.p;
        let points = input
            .points
            .into_iter()
            .map(|pt| {
                let residue = match pt.residue {
                    ResidueInput::Coords(c) => c,
                    ResidueInput::Encoded(mut e) => {
                        let mut c = Vec::new();
                        if p >= 2 {
                            while e > 0 {
                                c.push(e % p);
                                e /= p;
                            }
                        }
                        c
                    }
                };
                BranchPoint {
                    residue,
                    exponent: pt.exponent,
                }
            })
            .collect();
        BranchDivisor::new(input.m, p, input.d, points)
    }
}

/// Reduces exponents into `[0, m)`, drops the points whose exponent vanishes
/// and re-checks `m | Σ a_i`.
pub fn normalize(raw: &BranchDivisor) -> Result<BranchDivisor, KummerError> {
    let m = raw.m as i64;
    let points: Vec<BranchPoint> = raw
        .points
        .iter()
        .map(|pt| BranchPoint {
            residue: pt.residue.clone(),
            exponent: pt.exponent.rem_euclid(m),
        })
        .filter(|pt| pt.exponent != 0)
        .collect();
    let sum: i64 = points.iter().map(|pt| pt.exponent).sum();
    if sum % m != 0 {
        return Err(KummerError::DivisibilityViolation {
            sum: sum as u64,
            m: raw.m,
        });
    }
    Ok(BranchDivisor {
        points,
        ..raw.clone()
    })
}

/// `Σ a_i = m` for a normalized divisor.
pub fn is_multiplicative_type(d: &BranchDivisor) -> bool {
    d.exponent_sum() == d.m as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSum {
    pub residue: Vec<u64>,
    pub sum_mod_m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MthPowerTest {
    pub is_mth_power: bool,
    pub class_sums: Vec<ClassSum>,
}

impl MthPowerTest {
    pub fn as_map(&self) -> BTreeMap<Vec<u64>, u64> {
        self.class_sums
            .iter()
            .map(|c| (c.residue.clone(), c.sum_mod_m))
            .collect()
    }
}

/// Groups points by residue; `∏ (x − x̄_i)^{a_i}` is an `m`-th power in
/// `k(x)` iff every residue class has exponent sum `≡ 0 (mod m)`.
pub fn mth_power_reduction_test(d: &BranchDivisor) -> MthPowerTest {
    let m = d.m as i64;
    let mut classes: BTreeMap<Vec<u64>, i64> = BTreeMap::new();
    for pt in &d.points {
        *classes.entry(pt.residue.clone()).or_default() += pt.exponent;
    }
    let class_sums: Vec<ClassSum> = classes
        .into_iter()
        .map(|(residue, s)| ClassSum {
            residue,
            sum_mod_m: s.rem_euclid(m) as u64,
        })
        .collect();
    MthPowerTest {
        is_mth_power: class_sums.iter().all(|c| c.sum_mod_m == 0),
        class_sums,
    }
}

/// `⟨σ_b⟩ = a_i / m` for the tail containing `x_i`.
pub fn tail_fraction(a_i: i64, m: u64) -> Rational {
    let m = m as i64;
    Rational::new(a_i.rem_euclid(m), m)
}

/// `Σ a_i = m (r − 2)`.
pub fn exponent_sum_identity(d: &BranchDivisor, r: u64) -> bool {
    r >= 2 && d.exponent_sum() == d.m as i64 * (r as i64 - 2)
}
