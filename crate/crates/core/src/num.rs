//! Integer helpers.

use crate::error::{param, Result};

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: usize, m: usize) -> Option<usize> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as usize)
}

/// Multiplicative order of `q` modulo `ell`: the least `t >= 1` with
/// `q^t = 1 mod ell`.
pub fn mult_order(q: u64, ell: u64) -> Result<u64> {
    if ell == 0 || gcd(q as usize, ell as usize) != 1 {
        return param(format!("mult_order requires gcd(q, l) = 1, got q={q}, l={ell}"));
    }
    if ell == 1 {
        return Ok(1);
    }
    let m = ell as u128;
    let base = q as u128 % m;
    let mut acc = base;
    let mut t = 1;
    while acc != 1 {
        acc = acc * base % m;
        t += 1;
    }
    Ok(t)
}

/// SplitMix64 finalizer, used to derive independent seeds from counters.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix64(seed), |acc, &p| mix64(acc ^ mix64(p)))
}
