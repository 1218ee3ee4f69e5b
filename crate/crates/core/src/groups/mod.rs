//! Finite-group invariants consumed by the good-reduction criterion.
//!
//! Explicit groups are permutation groups enumerated by breadth-first
//! closure. The two structured families (`Z/p^s ⋊ Z/m` and `PGL_m(q)`) also
//! have closed-form profiles, with permutation models for cross-checking.

mod perm;

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::gf::{FieldError, GaloisField};

pub use perm::Perm;

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("image list {0:?} is not a bijection")]
    NotABijection(Vec<u32>),
    #[error("malformed cycle notation {0:?}")]
    BadCycleNotation(String),
    #[error("generator acts on {got} points but the group has degree {degree}")]
    DegreeMismatch { degree: usize, got: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("group closure exceeded the enumeration cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("q = {q} does not have multiplicative order {m} modulo p = {p}")]
    CongruenceNotSatisfied { m: u64, q: u64, p: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A finite group given by generating permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    label: Option<String>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    degree,
                    got: g.degree(),
                });
            }
        }
        Ok(PermutationGroup {
            degree,
            generators,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn cyclic(n: usize) -> Self {
        let images = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        PermutationGroup::new(n, vec![Perm::from_images(images).expect("rotation")])
            .expect("valid degree")
            .with_label(format!("Z/{n}"))
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(Perm::from_images(t).expect("transposition"));
            let c = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            gens.push(Perm::from_images(c).expect("rotation"));
        }
        PermutationGroup::new(n, gens)
            .expect("valid degree")
            .with_label(format!("S_{n}"))
    }

    /// Symmetries of the regular `n`-gon (order `2n`).
    pub fn dihedral(n: usize) -> Self {
        let rot = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let refl = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
        PermutationGroup::new(
            n,
            vec![
                Perm::from_images(rot).expect("rotation"),
                Perm::from_images(refl).expect("reflection"),
            ],
        )
        .expect("valid degree")
        .with_label(format!("D_{n}"))
    }

    /// `PGL_2(q)` acting on the `q + 1` points of the projective line.
    ///
    /// Points `0..q` are field elements by encoding and point `q` is `∞`.
    /// Generated by translations along an additive basis, multiplication by
    /// a primitive element and `x ↦ 1/x`.
    pub fn pgl2(q: u64) -> Result<Self, GroupError> {
        let (ell, d) = arith::prime_power(q).ok_or(GroupError::NotPrimePower(q))?;
        let field = GaloisField::new(ell, d)?;
        let inf = q as u32;
        let n = q as usize + 1;
        let make = |f: &dyn Fn(u32) -> u32| {
            Perm::from_images((0..=inf).map(f).collect()).expect("Möbius maps are bijections")
        };
        let mut gens = Vec::new();
        for i in 0..d {
            let b = field.element(ell.pow(i)).expect("basis vector");
            gens.push(make(&|x| {
                if x == inf {
                    inf
                } else {
                    field.add(crate::gf::Fq(x), b).0
                }
            }));
        }
        let w = field.generator();
        gens.push(make(&|x| {
            if x == inf {
                inf
            } else {
                field.mul(w, crate::gf::Fq(x)).0
            }
        }));
        gens.push(make(&|x| {
            if x == inf {
                0
            } else {
                field.inv(crate::gf::Fq(x)).map_or(inf, |y| y.0)
            }
        }));
        Ok(PermutationGroup::new(n, gens)?.with_label(format!("PGL_2({q})")))
    }

    /// The affine model of `Z/p^s ⋊ Z/m`: maps `x ↦ νx + b` on `Z/p^s`
    /// with `ν` a unit of order exactly `m`.
    pub fn semidirect(p: u64, s: u32, m: u64) -> Result<Self, GroupError> {
        validate_semidirect(p, s, m)?;
        let modulus = p
            .checked_pow(s)
            .filter(|&n| n <= u32::MAX as u64)
            .ok_or_else(|| GroupError::InvalidFamily(format!("{p}^{s} is too large")))?;
        let nu = unit_of_order(p, s, m);
        let shift = (0..modulus).map(|x| ((x + 1) % modulus) as u32).collect();
        let scale = (0..modulus)
            .map(|x| arith::mul_mod(x, nu, modulus) as u32)
            .collect();
        Ok(PermutationGroup::new(
            modulus as usize,
            vec![
                Perm::from_images(shift).expect("translation"),
                Perm::from_images(scale).expect("unit scaling"),
            ],
        )?
        .with_label(format!("Z/{p}^{s} x| Z/{m}")))
    }
}

fn validate_semidirect(p: u64, s: u32, m: u64) -> Result<(), GroupError> {
    if !arith::is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if s == 0 {
        return Err(GroupError::InvalidFamily("s must be at least 1".into()));
    }
    if m < 2 || (p - 1) % m != 0 {
        return Err(GroupError::InvalidFamily(format!(
            "m = {m} must be at least 2 and divide p - 1 = {}",
            p - 1
        )));
    }
    Ok(())
}

/// A unit of order exactly `m` modulo `p^s`, where `m | p − 1`.
fn unit_of_order(p: u64, s: u32, m: u64) -> u64 {
    let modulus = p.pow(s);
    let phi = p.pow(s - 1) * (p - 1);
    let g = (2..modulus)
        .find(|&g| g % p != 0 && arith::unit_order(g, modulus, phi) == phi)
        .unwrap_or(1);
    arith::pow_mod(g, phi / m, modulus)
}

/// All elements of the group, identity first, in breadth-first order.
pub fn enumerate_elements(g: &PermutationGroup, cap: usize) -> Result<Vec<Perm>, GroupError> {
    let id = Perm::identity(g.degree);
    let mut elements = vec![id.clone()];
    let mut seen: HashSet<Perm> = HashSet::from([id]);
    let mut next = 0;
    while next < elements.len() {
        let x = elements[next].clone();
        next += 1;
        for s in &g.generators {
            let y = s.compose(&x);
            if !seen.contains(&y) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(y.clone());
                elements.push(y);
            }
        }
    }
    Ok(elements)
}

/// One generator in the text/JSON group format: an image list or cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorInput {
    Images(Vec<u32>),
    Cycles(String),
}

/// `{"degree": n, "generators": [[1,0,2], "(0 1 2)"], "label": "S_3"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInput {
    pub degree: usize,
    #[serde(default)]
    pub generators: Vec<GeneratorInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TryFrom<GroupInput> for PermutationGroup {
    type Error = GroupError;

    fn try_from(input: GroupInput) -> Result<Self, GroupError> {
        let gens = input
            .generators
            .into_iter()
            .map(|g| match g {
                GeneratorInput::Images(v) => Perm::from_images(v),
                GeneratorInput::Cycles(s) => Perm::from_cycles(input.degree, &s),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let group = PermutationGroup::new(input.degree, gens)?;
        Ok(match input.label {
            Some(l) => group.with_label(l),
            None => group,
        })
    }
}

pub mod order_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom(format!("bad integer {s:?}")))
    }
}

/// Invariants of `G` relative to a prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupProfile {
    #[serde(with = "order_string")]
    pub order: BigUint,
    pub p: u64,
    pub p_valuation: u32,
    pub sylow_cyclic: bool,
    /// `|N_G(P)| / |Z_G(P)|`; absent when the Sylow subgroup is not cyclic.
    pub m_invariant: Option<u64>,
    pub order_p_class_count: u64,
    pub center_exponent: u64,
}

/// Enumerative profile of a permutation group.
pub fn profile(g: &PermutationGroup, p: u64, cap: usize) -> Result<GroupProfile, GroupError> {
    if !arith::is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let elements = enumerate_elements(g, cap)?;
    let n = elements.len() as u64;
    let v = arith::valuation(n, p);
    let full = p.pow(v);
    let orders: Vec<u64> = elements.iter().map(Perm::order).collect();

    let witness = (v >= 1)
        .then(|| orders.iter().position(|&o| o == full))
        .flatten();
    let sylow_cyclic = v == 0 || witness.is_some();

    let m_invariant = match witness {
        Some(w) => Some(normalizer_over_centralizer(&elements, &elements[w])),
        None if v == 0 => Some(1),
        None => None,
    };

    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut classified = vec![false; elements.len()];
    let mut order_p_class_count = 0;
    for (i, &o) in orders.iter().enumerate() {
        if o != p || classified[i] {
            continue;
        }
        order_p_class_count += 1;
        let mut queue = VecDeque::from([i]);
        classified[i] = true;
        while let Some(j) = queue.pop_front() {
            for s in &g.generators {
                let k = index[&s.conjugate(&elements[j])];
                if !classified[k] {
                    classified[k] = true;
                    queue.push_back(k);
                }
            }
        }
    }

    let center_exponent = elements
        .iter()
        .zip(&orders)
        .filter(|(z, _)| g.generators.iter().all(|s| s.compose(z) == z.compose(s)))
        .fold(1, |acc, (_, &o)| arith::lcm(acc, o));

    Ok(GroupProfile {
        order: BigUint::from(n),
        p,
        p_valuation: v,
        sylow_cyclic,
        m_invariant,
        order_p_class_count,
        center_exponent,
    })
}

fn normalizer_over_centralizer(elements: &[Perm], w: &Perm) -> u64 {
    let cyclic: HashSet<Perm> = (0..w.order()).map(|k| w.pow(k)).collect();
    let normalizer = elements
        .iter()
        .filter(|g| cyclic.contains(&g.conjugate(w)))
        .count() as u64;
    let centralizer = elements.iter().filter(|g| g.conjugate(w) == *w).count() as u64;
    normalizer / centralizer
}

/// The two structured families with closed-form profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    /// `Z/p^s ⋊ Z/m` with faithful action.
    Semidirect { p: u64, s: u32, m: u64 },
    /// `PGL_m(q)` relative to the prime `p`.
    Pgl { m: u64, q: u64, p: u64 },
}

impl FamilySpec {
    pub fn p(&self) -> u64 {
        match *self {
            FamilySpec::Semidirect { p, .. } | FamilySpec::Pgl { p, .. } => p,
        }
    }

    /// A permutation model, where one is provided (`PGL_m` only for `m = 2`).
    pub fn permutation_model(&self) -> Result<Option<PermutationGroup>, GroupError> {
        match *self {
            FamilySpec::Semidirect { p, s, m } => PermutationGroup::semidirect(p, s, m).map(Some),
            FamilySpec::Pgl { m: 2, q, .. } => PermutationGroup::pgl2(q).map(Some),
            FamilySpec::Pgl { .. } => Ok(None),
        }
    }
}

/// `|PGL_m(q)| = ∏_{i<m} (q^m − q^i) / (q − 1)`.
pub fn pgl_order(m: u64, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let qm = qb.pow(m as u32);
    let prod = (0..m).fold(BigUint::one(), |acc, i| acc * (&qm - qb.pow(i as u32)));
    prod / (qb - 1u32)
}

pub fn big_valuation(n: &BigUint, p: u64) -> u32 {
    let pb = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    v
}

/// Closed-form profile of a structured family.
///
/// For the semidirect family the center exponent is read off the affine
/// permutation model, so this enumerates `p^s · m` elements.
pub fn family_profile(f: &FamilySpec, cap: usize) -> Result<GroupProfile, GroupError> {
    match *f {
        FamilySpec::Semidirect { p, s, m } => {
            validate_semidirect(p, s, m)?;
            let model = PermutationGroup::semidirect(p, s, m)?;
            let elements = enumerate_elements(&model, cap)?;
            let center_exponent = elements
                .iter()
                .filter(|z| {
                    model
                        .generators()
                        .iter()
                        .all(|g| g.compose(z) == z.compose(g))
                })
                .fold(1, |acc, z| arith::lcm(acc, z.order()));
            Ok(GroupProfile {
                order: BigUint::from(p).pow(s) * m,
                p,
                p_valuation: s,
                sylow_cyclic: true,
                m_invariant: Some(m),
                order_p_class_count: (p - 1) / m,
                center_exponent,
            })
        }
        FamilySpec::Pgl { m, q, p } => {
            if m < 2 {
                return Err(GroupError::InvalidFamily("PGL_m needs m >= 2".into()));
            }
            if !arith::is_prime(p) {
                return Err(GroupError::NotPrime(p));
            }
            if arith::prime_power(q).is_none() {
                return Err(GroupError::NotPrimePower(q));
            }
            if q % p == 0 {
                return Err(GroupError::InvalidFamily(format!("p = {p} divides q = {q}")));
            }
            // Egoodred at any level n forces ord_p(q) = m since p ∤ m.
            if arith::unit_order(q % p, p, p - 1) != m {
                return Err(GroupError::CongruenceNotSatisfied { m, q, p });
            }
            let qm_minus_1 = BigUint::from(q).pow(m as u32) - 1u32;
            Ok(GroupProfile {
                order: pgl_order(m, q),
                p,
                p_valuation: big_valuation(&qm_minus_1, p),
                sylow_cyclic: true,
                m_invariant: Some(m),
                order_p_class_count: (p - 1) / m,
                center_exponent: 1,
            })
        }
    }
}

impl GroupProfile {
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }
}
