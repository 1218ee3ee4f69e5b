//! Exact computations around good reduction of three-point Galois covers
//! whose Galois group has a cyclic `p`-Sylow subgroup.
//!
//! The modules follow the objects involved: group invariants ([`groups`]),
//! the verdict ([`criterion`]), vanishing-cycles tail data ([`vancycles`]),
//! tame Kummer subcovers ([`kummer`]), equal-characteristic ramification
//! ([`localfield`]), mixed-characteristic extension descriptors
//! ([`dvfclassify`]) and the `PGL_m(q)` example search ([`examples`]).

pub mod arith;
pub mod criterion;
pub mod dvfclassify;
pub mod examples;
pub mod gf;
pub mod groups;
pub mod kummer;
pub mod localfield;
pub mod rational;
pub mod vancycles;

pub use criterion::{decide, FieldProfile, Status, Verdict};
pub use groups::{family_profile, profile, FamilySpec, GroupProfile, PermutationGroup};
pub use rational::Rational;
