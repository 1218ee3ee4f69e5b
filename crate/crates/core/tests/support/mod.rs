//! Reference computations used by the integration tests. Nothing here calls
//! into the library routine it is compared against.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use goodred_core::gf::{Fq, GaloisField};

pub fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(ell, d)` with `q = ell^d`, by trial factorization.
pub fn trial_prime_power(q: u64) -> Option<(u64, u32)> {
    let ell = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut d = 0;
    while rest % ell == 0 {
        rest /= ell;
        d += 1;
    }
    (rest == 1).then_some((ell, d))
}

/// Order of `q` modulo `n` by repeated multiplication.
pub fn naive_order(q: u64, n: u64) -> Option<u64> {
    let mut x = q % n;
    for j in 1..=n {
        if x == 1 % n {
            return Some(j);
        }
        x = x * q % n;
    }
    None
}

/// Prime powers `q ≤ q_max` prime to `p` whose powers `q^j mod p^n` first hit 1 at `j = m`.
pub fn sieve_examples(m: u64, n: u32, p: u64, q_max: u64) -> Vec<u64> {
    let pn = p.pow(n);
    (2..=q_max)
        .filter(|&q| q % p != 0 && trial_prime_power(q).is_some())
        .filter(|&q| naive_order(q, pn) == Some(m))
        .collect()
}

/// A tail configuration as (sorted primitive numerators, sorted new numerators) over `m_G`.
pub type GridConfig = (Vec<u64>, Vec<u64>);

/// All tail configurations for `r` branch points found by scanning every
/// numerator in `1..=m_G (r − 1)` at each position.
pub fn grid_tails(r: u64, m_g: u64, n_prim: usize, max_new: usize) -> BTreeSet<GridConfig> {
    let top = m_g * (r - 1);
    let target = (r - 2) * m_g;
    let mut out = BTreeSet::new();
    for n_new in 0..=max_new {
        let positions = n_prim + n_new;
        let mut idx = vec![1u64; positions];
        for slot in idx.iter_mut().skip(n_prim) {
            *slot = m_g + 1;
        }
        loop {
            let prim = &idx[..n_prim];
            let new = &idx[n_prim..];
            let total: i64 = prim.iter().map(|&k| k as i64).sum::<i64>()
                + new.iter().map(|&k| k as i64 - m_g as i64).sum::<i64>();
            if total == target as i64 {
                let mut a = prim.to_vec();
                let mut b = new.to_vec();
                a.sort();
                b.sort();
                out.insert((a, b));
            }
            // odometer step
            let mut i = 0;
            loop {
                if i == positions {
                    break;
                }
                let lo = if i < n_prim { 1 } else { m_g + 1 };
                if idx[i] < top {
                    idx[i] += 1;
                    break;
                }
                idx[i] = lo;
                i += 1;
            }
            if i == positions {
                break;
            }
        }
    }
    out
}

/// Coefficients (lowest degree first) of `∏ (x − r_i)^{a_i}` over `F_p`.
pub fn expand_product(p: u64, roots: &[(u64, u64)]) -> Vec<u64> {
    let mut poly = vec![1u64];
    for &(r, a) in roots {
        for _ in 0..a {
            let mut next = vec![0u64; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = (next[i + 1] + c) % p;
                next[i] = (next[i] + (p - r % p) * c) % p;
            }
            poly = next;
        }
    }
    poly
}

/// Multiplicity of the root `r` of `poly` by repeated synthetic division.
pub fn root_multiplicity(p: u64, poly: &[u64], r: u64) -> u64 {
    let mut poly = poly.to_vec();
    let mut mult = 0;
    while poly.len() > 1 {
        let n = poly.len() - 1;
        let mut quotient = vec![0u64; n];
        let mut carry = 0u64;
        for i in (0..=n).rev() {
            let v = (poly[i] + carry) % p;
            if i == 0 {
                if v != 0 {
                    return mult;
                }
            } else {
                quotient[i - 1] = v;
                carry = v * r % p;
            }
        }
        poly = quotient;
        mult += 1;
    }
    mult
}

/// Whether the explicit product has every root multiplicity divisible by `m`.
pub fn product_is_mth_power(p: u64, m: u64, roots: &[(u64, u64)]) -> bool {
    let poly = expand_product(p, roots);
    (0..p).all(|r| root_multiplicity(p, &poly, r) % m == 0)
}

/// Fields `F_{p^k}` with a per-element trace table, built once per `(p, k)`.
#[derive(Default)]
pub struct FieldCache {
    fields: HashMap<(u64, u32), (GaloisField, Vec<u8>)>,
}

impl FieldCache {
    pub fn get(&mut self, p: u64, k: u32) -> &(GaloisField, Vec<u8>) {
        self.fields.entry((p, k)).or_insert_with(|| {
            let f = GaloisField::new(p, k).expect("field");
            let traces = f.elements().map(|a| f.trace(a) as u8).collect();
            (f, traces)
        })
    }
}

/// Number of points over `F_{p^k}` of the smooth projective curve
/// `y^p − y = Σ c_j s^j` (`s = 1/t`), with `c_j ∈ F_p` and positive degree:
/// `p` points over each `s` with `Tr g(s) = 0`, one point over `s = ∞`.
pub fn artin_schreier_points(cache: &mut FieldCache, p: u64, k: u32, coeffs: &[u64]) -> u64 {
    let (field, traces) = cache.get(p, k);
    let order = field.order();
    let mut zeros = 0u64;
    // Tr(c s^j) = c Tr(s^j) for c in the prime field, and Tr(c) = k c
    let c0 = coeffs.first().copied().unwrap_or(0);
    let tr0 = c0 * k as u64;
    if tr0 % p == 0 {
        zeros += 1;
    }
    for enc in 1..order {
        let s = Fq(enc as u32);
        let log = field.log(s).expect("nonzero") as u64;
        let mut tr = tr0;
        for (j, &c) in coeffs.iter().enumerate().skip(1) {
            if c != 0 {
                let sj = field.exp(log * j as u64);
                tr += c * traces[sj.0 as usize] as u64;
            }
        }
        if tr % p == 0 {
            zeros += 1;
        }
    }
    p * zeros + 1
}

/// Genus read off the zeta function from `N_1, …, N_K` over `F_p`: the least
/// `g` whose Newton-identity coefficients satisfy the functional equation
/// and vanish past degree `2g`.
pub fn genus_from_counts(p: u64, counts: &[u64]) -> Option<u32> {
    let kmax = counts.len();
    let p = p as i128;
    let s: Vec<i128> = (1..=kmax)
        .map(|k| p.pow(k as u32) + 1 - counts[k - 1] as i128)
        .collect();
    let mut a = vec![1i128];
    for n in 1..=kmax {
        let acc: i128 = (1..=n).map(|k| s[k - 1] * a[n - k]).sum();
        if acc % n as i128 != 0 {
            return None;
        }
        a.push(-acc / n as i128);
    }
    (0..=(kmax as u32 - 1) / 2).find(|&g| {
        let g2 = 2 * g as usize;
        (0..=g as usize).all(|i| a[g2 - i] == p.pow(g - i as u32) * a[i])
            && a[g2 + 1..].iter().all(|&c| c == 0)
    })
}

