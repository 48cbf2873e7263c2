//! Plain polynomials in `F_q[x]` (no reduction modulo `x^l - 1`).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{param, Result};
use crate::field::Field;

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders below every finite degree and never takes part in
/// integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over a prime field, coefficients stored low degree first
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u8>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Poly::monomial(field, 1, 0)
    }

    pub fn x(field: Field) -> Self {
        Poly::monomial(field, 1, 1)
    }

    pub fn monomial(field: Field, coeff: u8, exp: usize) -> Self {
        let mut coeffs = vec![0; exp + 1];
        coeffs[exp] = coeff % field.q() as u8;
        Poly::from_coeffs(field, coeffs)
    }

    /// `x^l - 1`.
    pub fn cycle(field: Field, ell: usize) -> Self {
        let mut coeffs = vec![0; ell + 1];
        coeffs[0] = field.neg(1);
        coeffs[ell] = field.add(coeffs[ell], 1);
        Poly::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: Field, mut coeffs: Vec<u8>) -> Self {
        let q = field.q() as u8;
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` terms; repeated
    /// exponents accumulate.
    pub fn from_terms(field: Field, terms: &[(usize, i64)]) -> Self {
        let len = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let mut coeffs = vec![0u8; len];
        for &(e, c) in terms {
            coeffs[e] = field.add(coeffs[e], field.reduce(c));
        }
        Poly::from_coeffs(field, coeffs)
    }

    pub fn from_exponents(field: Field, exps: &[usize]) -> Self {
        let terms: Vec<(usize, i64)> = exps.iter().map(|&e| (e, 1)).collect();
        Poly::from_terms(field, &terms)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as a plain integer, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn lead(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    pub fn exponents(&self) -> Vec<usize> {
        self.terms().map(|t| t.0).collect()
    }

    fn check_field(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_field(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_field(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, s: u8) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let q = f.q() as u32;
        let mut acc = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u32 * b as u32;
            }
            // keep the accumulator bounded for long products
            if i % 1024 == 1023 {
                acc.iter_mut().for_each(|v| *v %= q);
            }
        }
        Poly::from_coeffs(f, acc.into_iter().map(|v| (v % q) as u8).collect())
    }

    /// Euclidean division. Fails on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor);
        let Some(dd) = divisor.deg() else {
            return param("division by the zero polynomial");
        };
        let f = self.field;
        let Some(nd) = self.deg() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if nd < dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.lead());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u8; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = f.mul(rem[i + dd], inv_lead);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient of an exact division; fails if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (qt, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return param(format!("{divisor} does not divide {self}"));
        }
        Ok(qt)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, u, v)` with `u*a + v*b = g`, `g`
    /// monic.
    pub fn bezout(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        a.check_field(b);
        let f = a.field;
        if a.is_zero() && b.is_zero() {
            return param("bezout coefficients of two zero polynomials");
        }
        let out = if !a.is_zero() && a.divides(b) {
            let s = f.inv(a.lead());
            (a.monic(), Poly::monomial(f, s, 0), Poly::zero(f))
        } else {
            let (mut r0, mut s0, mut t0) = (a.clone(), Poly::one(f), Poly::zero(f));
            let (mut r1, mut s1, mut t1) = (b.clone(), Poly::zero(f), Poly::one(f));
            while !r1.is_zero() {
                let (qt, r2) = r0.div_rem(&r1)?;
                let s2 = s0.sub(&qt.mul(&s1));
                let t2 = t0.sub(&qt.mul(&t1));
                r0 = std::mem::replace(&mut r1, r2);
                s0 = std::mem::replace(&mut s1, s2);
                t0 = std::mem::replace(&mut t1, t2);
            }
            let s = f.inv(r0.lead());
            (r0.scale(s), s0.scale(s), t0.scale(s))
        };
        debug_assert!(
            out.1.mul(a).add(&out.2.mul(b)) == out.0,
            "bezout identity violated"
        );
        Ok(out)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(self.field).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// `self(x^m)` as a plain polynomial (no reduction).
    pub fn compose_power(&self, m: usize) -> Poly {
        let terms: Vec<(usize, i64)> = self.terms().map(|(e, c)| (e * m, c as i64)).collect();
        Poly::from_terms(self.field, &terms)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_terms(f, self.terms())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}
