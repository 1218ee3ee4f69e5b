//! Search for prime powers `q` with `q^m ≡ 1 (mod p^n)` and `q^j ≢ 1` for
//! `1 ≤ j < m`, each giving a `PGL_m(q)` example with good reduction at `p`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::criterion::{self, CriterionError, FieldProfile, Verdict};
use crate::groups::{self, FamilySpec, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExamplesError {
    #[error("invalid search parameters: {0}")]
    ParamsInvalid(String),
    #[error("{q} is not prime to p = {p}")]
    NotCoprime { q: u64, p: u64 },
    #[error("p^n = {p}^{n} does not fit in 64 bits")]
    Overflow { p: u64, n: u32 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub m: u64,
    pub n: u32,
    pub p: u64,
    pub q_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRecord {
    pub q: u64,
    pub ell: u64,
    pub d: u32,
    pub mult_order: u64,
    pub sylow_order_exponent: u32,
    #[serde(with = "groups::order_string")]
    pub group_order: BigUint,
    pub verdict: Verdict,
    /// Orders of the rigid class triple, for reference only.
    pub ramification: Vec<String>,
}

fn check_params(s: &SearchParams) -> Result<(), String> {
    if s.m < 2 {
        return Err(format!("m = {} must be at least 2", s.m));
    }
    if s.n == 0 {
        return Err("n must be at least 1".into());
    }
    if !arith::is_prime(s.p) {
        return Err(format!("{} is not a prime", s.p));
    }
    if s.p % s.m != 1 {
        return Err(format!("p = {} is not 1 mod m = {}", s.p, s.m));
    }
    if s.p == s.m + 1 {
        return Err(format!("p = {} equals m + 1", s.p));
    }
    if s.m >= s.p - 1 {
        return Err(format!("m = {} is not below p - 1", s.m));
    }
    Ok(())
}

pub fn validate_params(s: &SearchParams) -> bool {
    check_params(s).is_ok()
}

pub fn is_prime_power(q: u64) -> Option<(u64, u32)> {
    arith::prime_power(q)
}

/// Order of `q` modulo `p^n`.
pub fn mult_order(q: u64, p: u64, n: u32) -> Result<u64, ExamplesError> {
    if q % p == 0 {
        return Err(ExamplesError::NotCoprime { q, p });
    }
    let modulus = p.checked_pow(n).ok_or(ExamplesError::Overflow { p, n })?;
    let phi = modulus / p * (p - 1);
    Ok(arith::unit_order(q % modulus, modulus, phi))
}

pub fn search(s: &SearchParams) -> Result<Vec<ExampleRecord>, ExamplesError> {
    check_params(s).map_err(ExamplesError::ParamsInvalid)?;
    s.p.checked_pow(s.n).ok_or(ExamplesError::Overflow { p: s.p, n: s.n })?;
    let field = FieldProfile::new(s.p, 1)?;
    let found: Vec<Option<ExampleRecord>> = (2..=s.q_max)
        .into_par_iter()
        .map(|q| candidate(s, &field, q))
        .collect::<Result<_, _>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn candidate(
    s: &SearchParams,
    field: &FieldProfile,
    q: u64,
) -> Result<Option<ExampleRecord>, ExamplesError> {
    if q % s.p == 0 {
        return Ok(None);
    }
    let Some((ell, d)) = is_prime_power(q) else {
        return Ok(None);
    };
    let ord = mult_order(q, s.p, s.n)?;
    if ord != s.m {
        return Ok(None);
    }
    let gp = groups::family_profile(&FamilySpec::Pgl { m: s.m, q, p: s.p }, 0)?;
    let verdict = criterion::decide(&gp, field)?;
    let tail = if ell == 2 {
        format!("{}", q - 1)
    } else {
        format!("({})*{ell}^a", q - 1)
    };
    Ok(Some(ExampleRecord {
        q,
        ell,
        d,
        mult_order: ord,
        sylow_order_exponent: gp.p_valuation,
        group_order: gp.order,
        verdict,
        ramification: vec!["2".into(), "4".into(), tail],
    }))
}
