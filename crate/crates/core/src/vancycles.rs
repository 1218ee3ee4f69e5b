//! Tail configurations allowed by the vanishing cycles formula
//! `r − 2 = Σ_new (σ_b − 1) + Σ_prim σ_b`.
//!
//! Every effective ramification invariant is a positive element of
//! `(1/m_G)·Z`, and a new tail has `σ_b ≥ 1 + 1/m_G`. Working in units of
//! `1/m_G`, a primitive tail contributes its numerator `k ≥ 1` and a new tail
//! contributes `k − m_G ≥ 1`, so a configuration is a pair of partitions of
//! `(r − 2)·m_G` and the search is finite.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VanCyclesError {
    #[error("invariant {sigma} is not a positive element of (1/{m_g})Z")]
    MalformedInvariant { sigma: String, m_g: u64 },
    #[error("new tail has invariant {sigma} below 1 + 1/{m_g}")]
    NewTailTooSmall { sigma: String, m_g: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailKind {
    Primitive,
    New,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TailInvariant {
    pub kind: TailKind,
    #[serde(with = "crate::rational")]
    pub sigma: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_b: Option<u64>,
}

impl TailInvariant {
    pub fn primitive(sigma: Rational) -> Self {
        TailInvariant {
            kind: TailKind::Primitive,
            sigma,
            m_b: None,
        }
    }

    pub fn new_tail(sigma: Rational) -> Self {
        TailInvariant {
            kind: TailKind::New,
            sigma,
            m_b: None,
        }
    }

    fn validate(&self, m_g: u64) -> Result<(), VanCyclesError> {
        let scaled = self.sigma * Rational::from_integer(m_g as i64);
        if !rational::is_positive(&self.sigma) || !scaled.is_integer() {
            return Err(VanCyclesError::MalformedInvariant {
                sigma: rational::to_text(&self.sigma),
                m_g,
            });
        }
        if self.kind == TailKind::New && self.sigma < Rational::new(m_g as i64 + 1, m_g as i64) {
            return Err(VanCyclesError::NewTailTooSmall {
                sigma: rational::to_text(&self.sigma),
                m_g,
            });
        }
        Ok(())
    }
}

/// A multiset of tail invariants for a cover branched at `r` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailConfiguration {
    pub r: u64,
    pub m_g: u64,
    pub tails: Vec<TailInvariant>,
}

impl TailConfiguration {
    /// Builds a configuration with tails in canonical order
    /// (primitive before new, each ascending).
    pub fn new(r: u64, m_g: u64, mut tails: Vec<TailInvariant>) -> Self {
        tails.sort();
        TailConfiguration { r, m_g, tails }
    }

    pub fn primitive_invariants(&self) -> impl Iterator<Item = &Rational> {
        self.tails
            .iter()
            .filter(|t| t.kind == TailKind::Primitive)
            .map(|t| &t.sigma)
    }

    pub fn new_invariants(&self) -> impl Iterator<Item = &Rational> {
        self.tails
            .iter()
            .filter(|t| t.kind == TailKind::New)
            .map(|t| &t.sigma)
    }
}

/// Exact test of the vanishing cycles formula.
pub fn check_formula(c: &TailConfiguration) -> Result<bool, VanCyclesError> {
    if c.m_g == 0 {
        return Err(VanCyclesError::InvalidParameters("m_G must be positive".into()));
    }
    for t in &c.tails {
        t.validate(c.m_g)?;
    }
    let one = Rational::from_integer(1);
    let total: Rational = c
        .tails
        .iter()
        .map(|t| match t.kind {
            TailKind::Primitive => t.sigma,
            TailKind::New => t.sigma - one,
        })
        .sum();
    Ok(total == Rational::from_integer(c.r as i64 - 2))
}

/// Every configuration with exactly `n_prim` primitive tails and at most
/// `max_new` new tails satisfying the formula, ordered by the number of
/// new tails and then by the sorted invariants.
pub fn enumerate(
    r: u64,
    m_g: u64,
    n_prim: usize,
    max_new: usize,
) -> Result<Vec<TailConfiguration>, VanCyclesError> {
    if r < 3 {
        return Err(VanCyclesError::InvalidParameters(format!("r = {r} must be at least 3")));
    }
    if m_g == 0 {
        return Err(VanCyclesError::InvalidParameters("m_G must be positive".into()));
    }
    let total = (r - 2) * m_g;
    let den = m_g as i64;
    let mut out = Vec::new();
    for n_new in 0..=max_new {
        let parts = (n_prim + n_new) as u64;
        if parts == 0 || parts > total {
            continue;
        }
        let min_new = n_new as u64;
        for prim_sum in n_prim as u64..=total - min_new {
            let new_sum = total - prim_sum;
            if (n_new == 0) != (new_sum == 0) {
                continue;
            }
            for prim in partitions(prim_sum, n_prim) {
                for new in partitions(new_sum, n_new) {
                    let tails = prim
                        .iter()
                        .map(|&k| TailInvariant::primitive(Rational::new(k as i64, den)))
                        .chain(
                            new.iter()
                                .map(|&k| TailInvariant::new_tail(Rational::new(k as i64 + den, den))),
                        )
                        .collect();
                    out.push(TailConfiguration::new(r, m_g, tails));
                }
            }
        }
    }
    out.sort_by_key(|c| (c.new_invariants().count(), c.tails.clone()));
    out.dedup();
    Ok(out)
}

/// Nondecreasing sequences of `parts` positive integers summing to `total`.
fn partitions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn go(total: u64, parts: usize, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut k = min;
        while k * parts as u64 <= total {
            prefix.push(k);
            go(total - k, parts - 1, k, prefix, out);
            prefix.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(total, parts, 1, &mut Vec::new(), &mut out);
    out
}

/// `Σ_b ⟨σ_b⟩` over all tails.
pub fn fractional_sum(c: &TailConfiguration) -> Rational {
    c.tails.iter().map(|t| rational::fractional_part(&t.sigma)).sum()
}

pub fn all_noninteger(c: &TailConfiguration) -> bool {
    c.tails.iter().all(|t| !rational::is_integer(&t.sigma))
}
