//! Table-driven arithmetic in small finite fields `F_{p^k}`.
//!
//! An element is stored as the integer whose base-`p` digits are its
//! coordinates in the basis `1, α, α², …` where `α` is a root of the field's
//! defining polynomial. The defining polynomial is the first primitive monic
//! polynomial of degree `k` in lexicographic order of its coefficient
//! encoding, so `α` generates the multiplicative group and multiplication
//! goes through discrete-log tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

/// Upper bound on the number of field elements for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 23;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{degree} exceeds the table limit {MAX_FIELD_ORDER}")]
    TooLarge { p: u64, degree: u32 },
    #[error("coordinate vector of length {got} does not fit a degree-{degree} field")]
    BadCoordinates { got: usize, degree: u32 },
    #[error("coordinate {0} is not reduced modulo the characteristic")]
    CoordinateOutOfRange(u64),
    #[error("element encoding {0} is outside the field")]
    BadEncoding(u64),
}

/// An element of some [`GaloisField`]; only meaningful together with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic defining polynomial, coefficients low to high.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[n] = log(1 + α^n)`, or `NO_LOG` when the sum vanishes.
    zech: Vec<u32>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    pub fn new(p: u64, degree: u32) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if degree == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = p
            .checked_pow(degree)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(FieldError::TooLarge { p, degree })?;
        let p32 = p as u32;
        let q32 = order as u32;
        let modulus = first_primitive_polynomial(p32, degree);

        let n = (order - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![NO_LOG; order as usize];
        let mut cur = vec![0u32; degree as usize];
        cur[0] = 1;
        for i in 0..n {
            let enc = encode(&cur, p32);
            exp.push(enc);
            log[enc as usize] = i as u32;
            times_x(&mut cur, &modulus, p32);
        }

        let mut field = GaloisField {
            p: p32,
            degree,
            order: q32,
            modulus,
            exp,
            log,
            zech: Vec::new(),
        };
        field.zech = (0..n)
            .map(|i| {
                let s = field.add_digits(field.exp[i], 1);
                field.log[s as usize]
            })
            .collect();
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// Defining polynomial, coefficients from the constant term upward.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element `α`.
    pub fn generator(&self) -> Fq {
        if self.degree == 1 {
            Fq(self.exp[1 % self.exp.len()])
        } else {
            Fq(self.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.order).map(Fq)
    }

    pub fn element(&self, encoding: u64) -> Result<Fq, FieldError> {
        if encoding >= self.order as u64 {
            return Err(FieldError::BadEncoding(encoding));
        }
        Ok(Fq(encoding as u32))
    }

    /// Image of an integer under `Z → F_p ⊂ F_{p^k}`.
    pub fn from_int(&self, c: i64) -> Fq {
        Fq(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<Fq, FieldError> {
        if coords.len() > self.degree as usize {
            return Err(FieldError::BadCoordinates {
                got: coords.len(),
                degree: self.degree,
            });
        }
        let mut enc = 0u64;
        for &c in coords.iter().rev() {
            if c >= self.p as u64 {
                return Err(FieldError::CoordinateOutOfRange(c));
            }
            enc = enc * self.p as u64 + c;
        }
        Ok(Fq(enc as u32))
    }

    pub fn coords(&self, a: Fq) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.degree as usize);
        let mut x = a.0;
        for _ in 0..self.degree {
            v.push((x % self.p) as u64);
            x /= self.p;
        }
        v
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.order - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let diff = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[diff as usize] {
            NO_LOG => Fq::ZERO,
            z => {
                let s = la as u64 + z as u64;
                Fq(self.exp[(s % n as u64) as usize])
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        let n = self.order - 1;
        let l = (self.log[a.0 as usize] as u64 + (n / 2) as u64) % n as u64;
        Fq(self.exp[l as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        let n = (self.order - 1) as u64;
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Fq(self.exp[(s % n) as usize])
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        let n = self.order - 1;
        let l = self.log[a.0 as usize];
        Some(Fq(self.exp[((n - l) % n) as usize]))
    }

    /// `a^e` for any integer `e` (negative exponents need `a ≠ 0`).
    pub fn pow(&self, a: Fq, e: i64) -> Option<Fq> {
        if a.is_zero() {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => None,
                std::cmp::Ordering::Equal => Some(Fq::ONE),
                std::cmp::Ordering::Greater => Some(Fq::ZERO),
            };
        }
        let n = (self.order - 1) as i128;
        let l = (self.log[a.0 as usize] as i128 * e as i128).rem_euclid(n);
        Some(Fq(self.exp[l as usize]))
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as i64).expect("nonnegative exponent")
    }

    /// The unique `b` with `b^p = a`, i.e. the inverse Frobenius `a^{p^{k-1}}`.
    pub fn pth_root(&self, a: Fq) -> Fq {
        let e = (self.p as i64).pow(self.degree - 1);
        self.pow(a, e).expect("nonnegative exponent")
    }

    /// Absolute trace to the prime field, returned as an integer in `[0, p)`.
    pub fn trace(&self, a: Fq) -> u32 {
        let mut acc = Fq::ZERO;
        let mut cur = a;
        for _ in 0..self.degree {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    pub fn log(&self, a: Fq) -> Option<u32> {
        match self.log[a.0 as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    pub fn exp(&self, l: u64) -> Fq {
        Fq(self.exp[(l % (self.order as u64 - 1)) as usize])
    }
}

fn encode(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiply a residue (length `k`, low to high) by `x` modulo the monic `modulus`.
fn times_x(cur: &mut [u32], modulus: &[u32], p: u32) {
    let k = cur.len();
    let top = cur[k - 1];
    for i in (1..k).rev() {
        cur[i] = cur[i - 1];
    }
    cur[0] = 0;
    if top != 0 {
        for i in 0..k {
            // subtract top * modulus[i]
            cur[i] = (cur[i] + p - (top * modulus[i]) % p) % p;
        }
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut acc = vec![0u32; k];
    // Horner on b from the top coefficient down
    for &bj in b.iter().rev() {
        times_x(&mut acc, modulus, p);
        for i in 0..k {
            acc[i] = (acc[i] + a[i] * bj) % p;
        }
    }
    acc
}

fn poly_powmod_x(e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut base = vec![0u32; k];
    if k == 1 {
        base[0] = (p - modulus[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut acc = vec![0u32; k];
    acc[0] = 1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, modulus, p);
        }
        base = poly_mulmod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

/// A monic `f` of degree `k` with `f(0) ≠ 0` is primitive iff `x` has
/// multiplicative order exactly `p^k − 1` modulo `f`.
fn first_primitive_polynomial(p: u32, k: u32) -> Vec<u32> {
    let q = (p as u64).pow(k);
    let n = q - 1;
    let factors = arith::prime_factors(n);
    let is_one = |v: &[u32]| v[0] == 1 && v[1..].iter().all(|&c| c == 0);
    for low in 1..q {
        let mut modulus: Vec<u32> = (0..k)
            .scan(low, |rest, _| {
                let d = (*rest % p as u64) as u32;
                *rest /= p as u64;
                Some(d)
            })
            .collect();
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        if !is_one(&poly_powmod_x(n, &modulus, p)) {
            continue;
        }
        if factors
            .iter()
            .all(|&r| !is_one(&poly_powmod_x(n / r, &modulus, p)))
        {
            return modulus;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_matches_modular_arithmetic() {
        let f = GaloisField::new(7, 1).unwrap();
        for a in 0..7u32 {
            for b in 0..7u32 {
                assert_eq!(f.add(Fq(a), Fq(b)).0, (a + b) % 7);
                assert_eq!(f.mul(Fq(a), Fq(b)).0, (a * b) % 7);
                assert_eq!(f.sub(Fq(a), Fq(b)).0, (a + 7 - b) % 7);
            }
        }
    }

    #[test]
    fn field_axioms_small_extensions() {
        for (p, k) in [(2, 3), (3, 2), (2, 4), (5, 2), (3, 3)] {
            let f = GaloisField::new(p, k).unwrap();
            let q = f.order() as u32;
            for a in 0..q {
                let a = Fq(a);
                assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                }
                assert_eq!(f.pth_root(f.frobenius(a)), a);
                assert_eq!(f.pow(a, q as i64), Some(a));
                for b in (0..q).step_by(3) {
                    let b = Fq(b);
                    let c = Fq((a.0 * 7 + 3) % q);
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    // additive structure is coordinatewise
                    let sum: Vec<u64> = f
                        .coords(a)
                        .iter()
                        .zip(f.coords(b))
                        .map(|(x, y)| (x + y) % p)
                        .collect();
                    assert_eq!(f.coords(f.add(a, b)), sum);
                }
            }
        }
    }

    #[test]
    fn trace_is_onto_prime_field_and_balanced() {
        let f = GaloisField::new(3, 3).unwrap();
        let mut counts = [0usize; 3];
        for a in f.elements() {
            counts[f.trace(a) as usize] += 1;
        }
        assert_eq!(counts, [9, 9, 9]);
        assert_eq!(f.trace(Fq::ONE), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(GaloisField::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(GaloisField::new(3, 40), Err(FieldError::TooLarge { .. })));
        let f = GaloisField::new(3, 2).unwrap();
        assert!(f.from_coords(&[1, 2, 0]).is_err());
        assert!(f.from_coords(&[3]).is_err());
        assert_eq!(f.from_coords(&[1, 2]).unwrap(), Fq(7));
    }
}
