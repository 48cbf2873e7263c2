//! Irreducibility testing and factorization of `x^l - 1` over `F_q`.
//!
//! Squarefree parts are split by distinct-degree factorization followed by
//! Cantor-Zassenhaus equal-degree splitting. The splitting randomness comes
//! from a fixed-seed ChaCha stream so factor lists are reproducible.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::Field;
use crate::num::gcd;
use crate::poly::Poly;

const SPLIT_SEED: u64 = 0x6762_746b_5f66_6163;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Monic irreducible factors with multiplicities, sorted by degree and
    /// then by ascending term list.
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn product(&self, field: Field) -> Poly {
        let mut acc = Poly::one(field);
        for (p, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(p);
            }
        }
        acc
    }

    /// Number of distinct irreducible factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Every monic divisor of the factored polynomial.
    pub fn divisors(&self, field: Field) -> Vec<Poly> {
        let mut out = vec![Poly::one(field)];
        for (p, m) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (m + 1));
            for d in &out {
                let mut acc = d.clone();
                next.push(acc.clone());
                for _ in 0..*m {
                    acc = acc.mul(p);
                    next.push(acc.clone());
                }
            }
            out = next;
        }
        out
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(q^k) mod f`, by `k` successive `q`-th powers.
fn frobenius_power(f: &Poly, k: usize) -> Result<Poly> {
    let field = f.field();
    let q = BigUint::from(field.q());
    let mut h = Poly::x(field).rem(f)?;
    for _ in 0..k {
        h = h.pow_mod(&q, f)?;
    }
    Ok(h)
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(q^n) = x mod f`
/// and `gcd(x^(q^(n/p)) - x, f) = 1` for every prime `p | n`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let Some(n) = f.deg() else {
        return Ok(false);
    };
    if n == 0 {
        return Ok(false);
    }
    let field = f.field();
    let x = Poly::x(field);
    let fm = f.monic();
    if frobenius_power(&fm, n)?.sub(&x).rem(&fm)?.is_zero() {
        for p in prime_divisors(n) {
            let h = frobenius_power(&fm, n / p)?.sub(&x);
            if !h.gcd(&fm).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        Ok(false)
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(d, g_d)` where `g_d` is the product of all irreducible factors of
/// degree `d`.
fn distinct_degree(f: &Poly) -> Result<Vec<(usize, Poly)>> {
    let field = f.field();
    let x = Poly::x(field);
    let q = BigUint::from(field.q());
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.deg() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((deg, rest.monic()));
            }
            break;
        }
        d += 1;
        h = h.pow_mod(&q, &rest)?;
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((d, g));
        }
    }
    Ok(out)
}

/// Splits a product of distinct irreducibles of common degree `d`.
fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<()> {
    let field = g.field();
    let n = g.deg().expect("nonzero");
    if n == d {
        out.push(g.monic());
        return Ok(());
    }
    let q = field.q();
    loop {
        let coeffs: Vec<u8> = (0..n).map(|_| rng.random_range(0..q) as u8).collect();
        let r = Poly::from_coeffs(field, coeffs);
        if r.deg().unwrap_or(0) == 0 {
            continue;
        }
        let t = if q == 2 {
            // trace map r + r^2 + ... + r^(2^(d-1))
            let mut acc = r.rem(g)?;
            let mut pw = acc.clone();
            for _ in 1..d {
                pw = pw.mul(&pw).rem(g)?;
                acc = acc.add(&pw);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            r.pow_mod(&e, g)?.sub(&Poly::one(field))
        };
        let s = t.gcd(g);
        if let Some(sd) = s.deg() {
            if sd > 0 && sd < n {
                let other = g.exact_div(&s)?;
                equal_degree(&s, d, rng, out)?;
                equal_degree(&other, d, rng, out)?;
                return Ok(());
            }
        }
    }
}

/// Complete factorization of `x^l - 1` over `F_q`. When `q | l`, writes
/// `l = q^e * m` and uses `x^l - 1 = (x^m - 1)^(q^e)`.
pub fn factorize_cycle(q: u32, ell: usize) -> Result<Factorization> {
    let field = Field::new(q)?;
    if ell == 0 {
        return crate::error::param("ring length must be at least 1");
    }
    let mut m = ell;
    let mut mult = 1;
    while m % q as usize == 0 {
        m /= q as usize;
        mult *= q as usize;
    }
    debug_assert_eq!(gcd(m, q as usize), 1);
    let f = Poly::cycle(field, m);
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ ((q as u64) << 32) ^ m as u64);
    let mut irreducibles = Vec::new();
    for (d, g) in distinct_degree(&f)? {
        equal_degree(&g, d, &mut rng, &mut irreducibles)?;
    }
    irreducibles.sort_by_cached_key(|p| (p.deg(), p.terms().collect::<Vec<_>>()));
    Ok(Factorization {
        factors: irreducibles.into_iter().map(|p| (p, mult)).collect(),
    })
}
