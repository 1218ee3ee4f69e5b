//! Equal-characteristic ramification: Artin-Schreier conductors, Herbrand
//! functions and the congruences attached to `Z/p ⋊ Z/m` actions.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::gf::{Fq, GaloisField};
use crate::rational::{self, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalFieldError {
    #[error("series term t^{0} has positive exponent; only principal and constant parts are accepted")]
    PositiveExponent(i64),
    #[error("coefficient encoding {0} is outside F_{{p^d}}")]
    BadCoefficient(u64),
    #[error("representative lives over F_{left_p}^{left_d} but the field is F_{right_p}^{right_d}")]
    FieldMismatch {
        left_p: u64,
        left_d: u32,
        right_p: u64,
        right_d: u32,
    },
    #[error("malformed term list {0:?}; expected \"exponent:coefficient,...\"")]
    BadTerms(String),
    #[error("invalid break sequence: {0}")]
    InvalidBreaks(String),
    #[error("Herbrand functions are defined on [0, ∞); got {0}")]
    NegativeArgument(String),
    #[error("{sigma} * {m} is not an integer")]
    DenominatorMismatch { sigma: String, m: u64 },
    #[error("m_b = {m_b} does not divide m = {m}")]
    TameIndexMismatch { m_b: u64, m: u64 },
    #[error("nu is 1 mod p: the action is trivial and the group is commutative")]
    NonFaithful,
    #[error("nu is divisible by p")]
    NotUnit,
    #[error("invalid action: {0}")]
    InvalidAction(String),
}

/// The right-hand side `f` of `y^p − y = f` over `F_{p^d}((t))`, keeping
/// only its principal part and constant term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentRepresentative {
    pub p: u64,
    pub field_degree: u32,
    /// Exponent (≤ 0) to coefficient encoding; zero coefficients are never stored.
    pub terms: BTreeMap<i64, Fq>,
}

impl LaurentRepresentative {
    pub fn new(
        field: &GaloisField,
        terms: impl IntoIterator<Item = (i64, Fq)>,
    ) -> Result<Self, LocalFieldError> {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            if e > 0 {
                return Err(LocalFieldError::PositiveExponent(e));
            }
            if c.0 as u64 >= field.order() {
                return Err(LocalFieldError::BadCoefficient(c.0 as u64));
            }
            let entry = out.entry(e).or_insert(Fq::ZERO);
            *entry = field.add(*entry, c);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(LaurentRepresentative {
            p: field.characteristic(),
            field_degree: field.degree(),
            terms: out,
        })
    }

    /// Parses `"e:c,e:c,..."` where `c` is a coefficient encoding.
    pub fn parse_terms(field: &GaloisField, text: &str) -> Result<Self, LocalFieldError> {
        let bad = || LocalFieldError::BadTerms(text.to_string());
        let mut terms = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (e, c) = item.split_once(':').ok_or_else(bad)?;
            let e: i64 = e.trim().parse().map_err(|_| bad())?;
            let c: u64 = c.trim().parse().map_err(|_| bad())?;
            let c = field
                .element(c)
                .map_err(|_| LocalFieldError::BadCoefficient(c))?;
            terms.push((e, c));
        }
        LaurentRepresentative::new(field, terms)
    }

    pub fn pole_order(&self) -> u64 {
        match self.terms.keys().next() {
            Some(&e) if e < 0 => e.unsigned_abs(),
            _ => 0,
        }
    }

    pub fn constant_term(&self) -> Fq {
        self.terms.get(&0).copied().unwrap_or(Fq::ZERO)
    }

    pub fn format_terms(&self) -> String {
        self.terms
            .iter()
            .map(|(e, c)| format!("{e}:{}", c.0))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn check_field(&self, field: &GaloisField) -> Result<(), LocalFieldError> {
        if self.p != field.characteristic() || self.field_degree != field.degree() {
            return Err(LocalFieldError::FieldMismatch {
                left_p: self.p,
                left_d: self.field_degree,
                right_p: field.characteristic(),
                right_d: field.degree(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    /// Pole order prime to `p` remains: totally ramified with that conductor.
    Ramified,
    /// No pole and the constant has nonzero trace: a residue field extension.
    Unramified,
    /// No pole and the constant has zero trace: `y^p − y = f` splits.
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conductor {
    pub conductor: u64,
    pub kind: ExtensionKind,
    pub reduced: LaurentRepresentative,
}

/// Removes every pole of order divisible by `p` by subtracting
/// `℘(c^{1/p} t^{−j}) = c t^{−pj} − c^{1/p} t^{−j}`, working from the deepest
/// pole upward. The remaining pole order is the conductor.
pub fn as_conductor(
    f: &LaurentRepresentative,
    field: &GaloisField,
) -> Result<Conductor, LocalFieldError> {
    f.check_field(field)?;
    let p = field.characteristic() as i64;
    let mut terms = f.terms.clone();
    while let Some((&e, &c)) = terms.iter().find(|(&e, _)| e < 0 && e % p == 0) {
        terms.remove(&e);
        let root = field.pth_root(c);
        let slot = terms.entry(e / p).or_insert(Fq::ZERO);
        *slot = field.add(*slot, root);
        if slot.is_zero() {
            terms.remove(&(e / p));
        }
    }
    let reduced = LaurentRepresentative {
        terms,
        ..f.clone()
    };
    let conductor = reduced.pole_order();
    let kind = if conductor > 0 {
        ExtensionKind::Ramified
    } else if field.trace(reduced.constant_term()) == 0 {
        ExtensionKind::Split
    } else {
        ExtensionKind::Unramified
    };
    Ok(Conductor {
        conductor,
        kind,
        reduced,
    })
}

/// Lower ramification breaks `u_1 < … < u_n` of a Galois extension of
/// `k((t))` whose inertia group is `P ⋊ Z/tame_index` with `P` a `p`-group.
///
/// `group_orders[i]` is the order of the wild ramification group just
/// below the break `u_{i+1}`; the group is trivial past `u_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakSequence {
    pub lower_breaks: Vec<u64>,
    pub group_orders: Vec<u64>,
    #[serde(default = "one_u64")]
    pub tame_index: u64,
}

fn one_u64() -> u64 {
    1
}

impl BreakSequence {
    pub fn new(lower_breaks: Vec<u64>, group_orders: Vec<u64>) -> Result<Self, LocalFieldError> {
        BreakSequence::with_tame_index(lower_breaks, group_orders, 1)
    }

    pub fn with_tame_index(
        lower_breaks: Vec<u64>,
        group_orders: Vec<u64>,
        tame_index: u64,
    ) -> Result<Self, LocalFieldError> {
        let b = BreakSequence {
            lower_breaks,
            group_orders,
            tame_index,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), LocalFieldError> {
        let err = |s: &str| Err(LocalFieldError::InvalidBreaks(s.to_string()));
        if self.lower_breaks.is_empty() {
            return err("at least one break is required");
        }
        if self.lower_breaks.len() != self.group_orders.len() {
            return err("one group order per break is required");
        }
        if self.tame_index == 0 {
            return err("tame index must be positive");
        }
        if self.lower_breaks[0] == 0 || self.lower_breaks.windows(2).any(|w| w[0] >= w[1]) {
            return err("breaks must be positive and strictly increasing");
        }
        if self.group_orders.iter().any(|&o| o < 2) {
            return err("ramification groups below a break are nontrivial");
        }
        if self
            .group_orders
            .windows(2)
            .any(|w| w[1] >= w[0] || w[0] % w[1] != 0)
        {
            return err("group orders must strictly decrease along a divisor chain");
        }
        Ok(())
    }

    /// Knots `(u, φ(u))` of the piecewise-linear Herbrand function, starting at the origin.
    fn knots(&self) -> Vec<(Rational, Rational)> {
        let g0 = Rational::from_integer((self.group_orders[0] * self.tame_index) as i64);
        let mut knots = vec![(Rational::zero(), Rational::zero())];
        let mut prev = 0u64;
        let mut phi = Rational::zero();
        for (&u, &order) in self.lower_breaks.iter().zip(&self.group_orders) {
            phi += Rational::from_integer((u - prev) as i64) * Rational::from_integer(order as i64) / g0;
            knots.push((Rational::from_integer(u as i64), phi));
            prev = u;
        }
        knots
    }

    /// Slope on each segment; the last entry applies past the final break.
    fn slopes(&self) -> Vec<Rational> {
        let g0 = (self.group_orders[0] * self.tame_index) as i64;
        self.group_orders
            .iter()
            .map(|&o| Rational::new(o as i64, g0))
            .chain(std::iter::once(Rational::new(1, g0)))
            .collect()
    }
}

fn check_nonnegative(x: &Rational) -> Result<(), LocalFieldError> {
    if x.is_negative() {
        return Err(LocalFieldError::NegativeArgument(rational::to_text(x)));
    }
    Ok(())
}

/// `φ(u) = ∫_0^u dt / [G_0 : G_t]`.
pub fn herbrand_phi(b: &BreakSequence, u: Rational) -> Result<Rational, LocalFieldError> {
    b.validate()?;
    check_nonnegative(&u)?;
    let knots = b.knots();
    let slopes = b.slopes();
    let seg = knots[1..].iter().position(|(x, _)| u <= *x).unwrap_or(knots.len() - 1);
    let (x0, y0) = knots[seg];
    Ok(y0 + (u - x0) * slopes[seg])
}

/// The inverse of [`herbrand_phi`].
pub fn herbrand_psi(b: &BreakSequence, v: Rational) -> Result<Rational, LocalFieldError> {
    b.validate()?;
    check_nonnegative(&v)?;
    let knots = b.knots();
    let slopes = b.slopes();
    let seg = knots[1..].iter().position(|(_, y)| v <= *y).unwrap_or(knots.len() - 1);
    let (x0, y0) = knots[seg];
    Ok(x0 + (v - y0) / slopes[seg])
}

/// Upper numbering jumps `φ(u_i)`.
pub fn upper_jumps(b: &BreakSequence) -> Result<Vec<Rational>, LocalFieldError> {
    b.validate()?;
    Ok(b.knots().into_iter().skip(1).map(|(_, y)| y).collect())
}

/// Conjugation data `c σ c⁻¹ = σ^ν` of `Z/p ⋊ Z/m`, where `ν` has order `m` mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectAction {
    pub p: u64,
    pub m: u64,
    pub nu: u64,
}

impl SemidirectAction {
    pub fn new(p: u64, m: u64, nu: u64) -> Result<Self, LocalFieldError> {
        if !arith::is_prime(p) {
            return Err(LocalFieldError::InvalidAction(format!("{p} is not a prime")));
        }
        if nu % p == 0 {
            return Err(LocalFieldError::NotUnit);
        }
        let order = arith::unit_order(nu % p, p, p - 1);
        if order != m {
            return Err(LocalFieldError::InvalidAction(format!(
                "nu = {nu} has order {order} mod {p}, not m = {m}; the character would not be injective"
            )));
        }
        Ok(SemidirectAction { p, m, nu: nu % p })
    }

    /// The action determined by `ν` alone, with `m` its order mod `p`.
    pub fn from_nu(p: u64, nu: u64) -> Result<Self, LocalFieldError> {
        if !arith::is_prime(p) {
            return Err(LocalFieldError::InvalidAction(format!("{p} is not a prime")));
        }
        if nu % p == 0 {
            return Err(LocalFieldError::NotUnit);
        }
        SemidirectAction::new(p, arith::unit_order(nu % p, p, p - 1), nu)
    }

    /// `χ̄(i) = ν^i mod p`.
    pub fn character(&self, i: u64) -> u64 {
        arith::pow_mod(self.nu, i, self.p)
    }
}

/// `σ_b · m ≡ a_i (mod m)`.
pub fn semidirect_consistency(
    sigma_b: Rational,
    m_b: u64,
    m: u64,
    a_i: i64,
) -> Result<bool, LocalFieldError> {
    if m_b == 0 || m == 0 || m % m_b != 0 {
        return Err(LocalFieldError::TameIndexMismatch { m_b, m });
    }
    let scaled = sigma_b * Rational::from_integer(m as i64);
    if !scaled.is_integer() {
        return Err(LocalFieldError::DenominatorMismatch {
            sigma: rational::to_text(&sigma_b),
            m,
        });
    }
    Ok((scaled.to_integer() - a_i).rem_euclid(m as i64) == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pval0Certificate {
    /// The unique `d mod p` with `ν d ≡ 1`.
    pub d: u64,
    /// `d ≢ 1`, so a Kummer generator `a` with `c(a) = a^d z^p` has `p | v(a)`.
    pub p_divides_valuation: bool,
}

pub fn pval0_d(action: &SemidirectAction) -> Result<Pval0Certificate, LocalFieldError> {
    let nu = action.nu % action.p;
    if nu == 0 {
        return Err(LocalFieldError::NotUnit);
    }
    if nu == 1 {
        return Err(LocalFieldError::NonFaithful);
    }
    let d = arith::inv_mod(nu, action.p).ok_or(LocalFieldError::NotUnit)?;
    Ok(Pval0Certificate {
        d,
        p_divides_valuation: d != 1,
    })
}

/// Whether all upper jumps share one fractional part.
pub fn jumps_share_fractional_part(b: &BreakSequence) -> Result<bool, LocalFieldError> {
    let jumps = upper_jumps(b)?;
    let first = rational::fractional_part(&jumps[0]);
    Ok(jumps.iter().all(|j| rational::fractional_part(j) == first))
}
