//! The good-reduction verdict for three-point covers with cyclic `p`-Sylow group.
//!
//! Given `e(K) · m_G < p − 1`, a three-point `G`-cover over `K` has
//! potentially good reduction, realized over a tame extension whose degree
//! divides the exponent of `Z(G)`. When the inequality fails nothing is
//! concluded.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::groups::GroupProfile;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriterionError {
    #[error("the p-Sylow subgroup is not cyclic; the criterion does not apply")]
    SylowNotCyclic,
    #[error("group profile is for p = {group} but the field has residue characteristic {field}")]
    PrimeMismatch { group: u64, field: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("absolute ramification index must be at least 1")]
    ZeroRamificationIndex,
    #[error("branching indices {indices:?} are divisible by p = {p}, impossible for a cover over a field with e(K) * m_G < p - 1")]
    BranchingContradiction { indices: Vec<u64>, p: u64 },
    #[error("no branching indices supplied")]
    EmptyBranching,
}

/// Mixed-characteristic base field `K ⊇ K_0 = Frac(W(k))`, `k` algebraically closed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldProfile {
    pub p: u64,
    pub absolute_ramification_index: u64,
    #[serde(default = "default_residue_note")]
    pub residue_field_note: String,
}

fn default_residue_note() -> String {
    "residue field algebraically closed of characteristic p; K is a finite extension of Frac(W(k))"
        .to_string()
}

impl FieldProfile {
    pub fn new(p: u64, absolute_ramification_index: u64) -> Result<Self, CriterionError> {
        if !arith::is_prime(p) {
            return Err(CriterionError::NotPrime(p));
        }
        if absolute_ramification_index == 0 {
            return Err(CriterionError::ZeroRamificationIndex);
        }
        Ok(FieldProfile {
            p,
            absolute_ramification_index,
            residue_field_note: default_residue_note(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    PotentiallyGood,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub tame_degree_divides: Option<u64>,
    pub good_reduction_outright: bool,
    pub reasons: Vec<String>,
}

pub fn decide(gp: &GroupProfile, fp: &FieldProfile) -> Result<Verdict, CriterionError> {
    if gp.p != fp.p {
        return Err(CriterionError::PrimeMismatch {
            group: gp.p,
            field: fp.p,
        });
    }
    if fp.absolute_ramification_index == 0 {
        return Err(CriterionError::ZeroRamificationIndex);
    }
    let m = match gp.m_invariant {
        Some(m) if gp.sylow_cyclic => m,
        _ => return Err(CriterionError::SylowNotCyclic),
    };
    let p = gp.p;
    let e = fp.absolute_ramification_index;
    let lhs = e as u128 * m as u128;
    let rhs = (p - 1) as u128;
    if lhs < rhs {
        let outright = gp.center_exponent == 1;
        let mut reasons = vec![format!("e(K) * m_G = {e} * {m} = {lhs} < p - 1 = {rhs}")];
        if outright {
            reasons.push("Z(G) is trivial: good reduction over K itself".to_string());
        } else {
            reasons.push(format!(
                "good reduction after a tame extension of degree dividing exp Z(G) = {}",
                gp.center_exponent
            ));
        }
        Ok(Verdict {
            status: Status::PotentiallyGood,
            tame_degree_divides: Some(gp.center_exponent),
            good_reduction_outright: outright,
            reasons,
        })
    } else {
        Ok(Verdict {
            status: Status::Inconclusive,
            tame_degree_divides: None,
            good_reduction_outright: false,
            reasons: vec![format!(
                "hypothesis fails: e(K) * m_G = {e} * {m} = {lhs} >= p - 1 = {rhs}; no conclusion about the reduction"
            )],
        })
    }
}

/// `decide`, additionally checking supplied branching indices.
///
/// Under the hypothesis every branching index is prime to `p`; indices
/// that violate this describe no cover over `K`.
pub fn decide_with_branching(
    gp: &GroupProfile,
    fp: &FieldProfile,
    indices: &[u64],
) -> Result<Verdict, CriterionError> {
    if indices.is_empty() {
        return Err(CriterionError::EmptyBranching);
    }
    let mut verdict = decide(gp, fp)?;
    let gate = branching_gate(indices, gp.p);
    if verdict.status == Status::PotentiallyGood && !gate {
        return Err(CriterionError::BranchingContradiction {
            indices: indices.to_vec(),
            p: gp.p,
        });
    }
    verdict.reasons.push(if gate {
        format!("branching indices {indices:?} are prime to p")
    } else {
        format!("branching indices {indices:?} include multiples of p")
    });
    Ok(verdict)
}

/// True iff no index is divisible by `p`.
pub fn branching_gate(indices: &[u64], p: u64) -> bool {
    indices.iter().all(|&i| i % p != 0)
}

/// Whether `order_p_class_count = (p − 1) / m_G`.
pub fn class_count_equivalence(gp: &GroupProfile) -> bool {
    match gp.m_invariant {
        Some(m) if gp.sylow_cyclic && gp.p_valuation >= 1 && m > 0 => {
            (gp.p - 1) % m == 0 && gp.order_p_class_count == (gp.p - 1) / m
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn profile(p: u64, m: u64, center: u64) -> GroupProfile {
        GroupProfile {
            order: BigUint::from(1000u32),
            p,
            p_valuation: 1,
            sylow_cyclic: true,
            m_invariant: Some(m),
            order_p_class_count: (p - 1) / m,
            center_exponent: center,
        }
    }

    #[test]
    fn pgl2_19_at_p5() {
        let v = decide(&profile(5, 2, 1), &FieldProfile::new(5, 1).unwrap()).unwrap();
        assert_eq!(v.status, Status::PotentiallyGood);
        assert_eq!(v.tame_degree_divides, Some(1));
        assert!(v.good_reduction_outright);
    }

    #[test]
    fn strict_inequality_boundary() {
        let v = decide(&profile(3, 2, 1), &FieldProfile::new(3, 1).unwrap()).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert_eq!(v.tame_degree_divides, None);
        assert!(v.reasons[0].starts_with("hypothesis fails"));
    }

    #[test]
    fn nontrivial_center_gives_tame_degree() {
        let v = decide(&profile(7, 2, 3), &FieldProfile::new(7, 2).unwrap()).unwrap();
        assert_eq!(v.status, Status::PotentiallyGood);
        assert_eq!(v.tame_degree_divides, Some(3));
        assert!(!v.good_reduction_outright);
    }

    #[test]
    fn errors() {
        let fp = FieldProfile::new(5, 1).unwrap();
        assert_eq!(
            decide(&profile(7, 2, 1), &fp),
            Err(CriterionError::PrimeMismatch { group: 7, field: 5 })
        );
        let mut gp = profile(5, 2, 1);
        gp.sylow_cyclic = false;
        gp.m_invariant = None;
        assert_eq!(decide(&gp, &fp), Err(CriterionError::SylowNotCyclic));
        assert!(FieldProfile::new(5, 0).is_err());
        assert!(FieldProfile::new(4, 1).is_err());
    }

    #[test]
    fn branching() {
        assert!(branching_gate(&[2, 4, 18], 5));
        assert!(!branching_gate(&[5, 2, 3], 5));
        assert!(branching_gate(&[1], 7));
        let fp = FieldProfile::new(5, 1).unwrap();
        assert!(matches!(
            decide_with_branching(&profile(5, 2, 1), &fp, &[5, 2, 3]),
            Err(CriterionError::BranchingContradiction { .. })
        ));
        let v = decide_with_branching(&profile(5, 2, 1), &fp, &[2, 4, 18]).unwrap();
        assert_eq!(v.status, Status::PotentiallyGood);
        // inconclusive verdicts carry no constraint on the branching
        let fp = FieldProfile::new(5, 3).unwrap();
        let v = decide_with_branching(&profile(5, 2, 1), &fp, &[5, 2, 3]).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
    }

    #[test]
    fn class_counts() {
        assert!(class_count_equivalence(&profile(3, 2, 1)));
        assert!(class_count_equivalence(&profile(5, 2, 1)));
        let mut bad = profile(5, 2, 1);
        bad.order_p_class_count = 3;
        assert!(!class_count_equivalence(&bad));
    }
}
