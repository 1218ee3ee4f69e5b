//! Attribute-level classification of `Z/p^n` Kummer extensions `L = K(a^{1/p^n})`
//! of mixed-characteristic complete discretely valued fields.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::localfield::SemidirectAction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DvfError {
    #[error("inconsistent descriptor: {0}")]
    InconsistentDescriptor(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("the action is commutative (nu = 1 mod p)")]
    NonFaithful,
}

/// What is known about a Kummer extension `L/K` of degree `p^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    pub p: u64,
    pub n: u32,
    pub e_k: u64,
    /// Valuation of the Kummer generator after unit normalization.
    pub v_a: i64,
    pub residue_is_pth_power: bool,
    pub contains_zeta: bool,
    /// `e(L/K)`.
    pub uniformizer_index: u64,
    /// Whether the residue field extension is separable, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_separable: Option<bool>,
}

impl ExtensionDescriptor {
    pub fn validate(&self) -> Result<(), DvfError> {
        if !arith::is_prime(self.p) {
            return Err(DvfError::InvalidDescriptor(format!("{} is not a prime", self.p)));
        }
        if self.n == 0 || self.e_k == 0 {
            return Err(DvfError::InvalidDescriptor("n and e_K must be positive".into()));
        }
        let degree = self
            .p
            .checked_pow(self.n)
            .ok_or_else(|| DvfError::InvalidDescriptor("p^n overflows".into()))?;
        if self.uniformizer_index == 0 || degree % self.uniformizer_index != 0 {
            return Err(DvfError::InvalidDescriptor(format!(
                "uniformizer index {} does not divide p^n = {degree}",
                self.uniformizer_index
            )));
        }
        Ok(())
    }

    fn is_mu_pattern(&self) -> bool {
        self.contains_zeta && self.v_a == 0 && !self.residue_is_pth_power
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtensionClass {
    Unramified,
    NaivelyRamified,
    MuType,
    FiercelyRamifiedOther,
    Indeterminate,
}

pub fn classify(d: &ExtensionDescriptor) -> Result<ExtensionClass, DvfError> {
    d.validate()?;
    if d.is_mu_pattern() {
        // μ-type extensions are weakly unramified with inseparable residue extension
        if d.uniformizer_index > 1 {
            return Err(DvfError::InconsistentDescriptor(format!(
                "unit generator with non-p-th-power residue and roots of unity forces e(L/K) = 1, got {}",
                d.uniformizer_index
            )));
        }
        if d.residue_separable == Some(true) {
            return Err(DvfError::InconsistentDescriptor(
                "mu-type extensions have inseparable residue field extension".into(),
            ));
        }
        return Ok(ExtensionClass::MuType);
    }
    if d.uniformizer_index > 1 {
        return Ok(ExtensionClass::NaivelyRamified);
    }
    Ok(match d.residue_separable {
        Some(true) => ExtensionClass::Unramified,
        Some(false) => ExtensionClass::FiercelyRamifiedOther,
        None => ExtensionClass::Indeterminate,
    })
}

/// For `n = 1`: whether `e(K) < p − 1`, in which case every ramified
/// `Z/p`-extension of `K` is naively ramified.
pub fn low_ram_forces_naive(d: &ExtensionDescriptor) -> Result<bool, DvfError> {
    d.validate()?;
    if d.n != 1 {
        return Err(DvfError::InvalidDescriptor("low-ramification test needs n = 1".into()));
    }
    Ok(d.e_k < d.p - 1)
}

/// Ways in which a degree-`p` descriptor contradicts [`low_ram_forces_naive`].
pub fn low_ram_violations(d: &ExtensionDescriptor) -> Result<Vec<String>, DvfError> {
    if !low_ram_forces_naive(d)? {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    if d.contains_zeta {
        out.push(format!(
            "K contains a primitive p-th root of unity but e(K) = {} < p - 1 = {}",
            d.e_k,
            d.p - 1
        ));
    }
    if d.uniformizer_index > 1 && d.uniformizer_index != d.p {
        out.push(format!("ramified with e(L/K) = {} != p", d.uniformizer_index));
    }
    if d.uniformizer_index == 1 && d.residue_separable == Some(false) {
        out.push("fiercely ramified although e(K) < p - 1".to_string());
    }
    Ok(out)
}

/// Checks a `Z/p`-subextension against the full `Z/p^n`-extension: one is of
/// `μ`-type iff the other is, given that the base is unramified over a
/// field with algebraically closed residue field.
pub fn mu_lift_equivalence(
    base: &ExtensionDescriptor,
    full: &ExtensionDescriptor,
    unramified_base: Option<bool>,
) -> Result<bool, DvfError> {
    if unramified_base != Some(true) {
        return Err(DvfError::HypothesisUnmet(
            "the base must be unramified over a field with algebraically closed residue field".into(),
        ));
    }
    if base.n != 1 || base.p != full.p {
        return Err(DvfError::InvalidDescriptor(
            "base must be the degree-p subextension of the full extension".into(),
        ));
    }
    let b = classify(base)?;
    let f = classify(full)?;
    if b == ExtensionClass::Indeterminate || f == ExtensionClass::Indeterminate {
        return Err(DvfError::HypothesisUnmet(
            "a descriptor is indeterminate; the equivalence cannot be evaluated".into(),
        ));
    }
    Ok((b == ExtensionClass::MuType) == (f == ExtensionClass::MuType))
}

/// For a non-abelian `Z/p ⋊ Z/m` Kummer datum the generator valuation must
/// be divisible by `p`.
pub fn pval0_divisibility(action: &SemidirectAction, v_a: i64) -> Result<bool, DvfError> {
    if action.nu % action.p == 1 {
        return Err(DvfError::NonFaithful);
    }
    Ok(v_a.rem_euclid(action.p as i64) == 0)
}
