//! The quotient ring `R = F_q[x]/(x^l - 1)`.
//!
//! A `RingPoly` with coefficient vector `c` corresponds to the circulant
//! matrix `c(P)` where `P` is the `l x l` cyclic shift; ring products match
//! circulant products acting on coefficient vectors.

use std::fmt;

use crate::error::{param, Result};
use crate::field::Field;
use crate::poly::{Degree, Poly};
use crate::text;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingPoly {
    field: Field,
    coeffs: Vec<u8>,
}

impl RingPoly {
    pub fn zero(field: Field, ell: usize) -> Self {
        assert!(ell >= 1, "ring length must be at least 1");
        RingPoly {
            field,
            coeffs: vec![0; ell],
        }
    }

    pub fn one(field: Field, ell: usize) -> Self {
        RingPoly::monomial(field, ell, 1, 0)
    }

    /// `c * x^(e mod l)`.
    pub fn monomial(field: Field, ell: usize, c: u8, e: usize) -> Self {
        let mut p = RingPoly::zero(field, ell);
        p.coeffs[e % ell] = c % field.q() as u8;
        p
    }

    /// Reduces a plain polynomial modulo `x^l - 1`.
    pub fn from_poly(p: &Poly, ell: usize) -> Self {
        let mut r = RingPoly::zero(p.field(), ell);
        for (e, c) in p.terms() {
            let i = e % ell;
            r.coeffs[i] = p.field().add(r.coeffs[i], c);
        }
        r
    }

    pub fn from_terms(field: Field, ell: usize, terms: &[(usize, i64)]) -> Self {
        let mut r = RingPoly::zero(field, ell);
        for &(e, c) in terms {
            let i = e % ell;
            r.coeffs[i] = field.add(r.coeffs[i], field.reduce(c));
        }
        r
    }

    pub fn from_exponents(field: Field, ell: usize, exps: &[usize]) -> Self {
        let terms: Vec<(usize, i64)> = exps.iter().map(|&e| (e, 1)).collect();
        RingPoly::from_terms(field, ell, &terms)
    }

    pub fn from_coeffs(field: Field, coeffs: Vec<u8>) -> Result<Self> {
        if coeffs.is_empty() {
            return param("ring length must be at least 1");
        }
        let q = field.q() as u8;
        if let Some(c) = coeffs.iter().find(|&&c| c >= q) {
            return param(format!("coefficient {c} not reduced mod {q}"));
        }
        Ok(RingPoly { field, coeffs })
    }

    pub fn parse(s: &str, field: Field, ell: usize) -> Result<Self> {
        if ell == 0 {
            return param("ring length must be at least 1");
        }
        Ok(RingPoly::from_terms(field, ell, &text::parse_terms(s)?))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn ell(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs[i % self.ell()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.iter().rposition(|&c| c != 0) {
            Some(d) => Degree::Finite(d),
            None => Degree::NegInfinity,
        }
    }

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

    /// Lift to a plain polynomial of degree `< l`.
    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.clone())
    }

    fn check_same_ring(&self, other: &RingPoly) -> Result<()> {
        if self.field != other.field || self.ell() != other.ell() {
            return param(format!(
                "ring mismatch: ({}, l={}) vs ({}, l={})",
                self.field,
                self.ell(),
                other.field,
                other.ell()
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingPoly) -> Result<RingPoly> {
        self.check_same_ring(other)?;
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(RingPoly { field: f, coeffs })
    }

    pub fn sub(&self, other: &RingPoly) -> Result<RingPoly> {
        self.check_same_ring(other)?;
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(RingPoly { field: f, coeffs })
    }

    pub fn neg(&self) -> RingPoly {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, s: u8) -> RingPoly {
        let f = self.field;
        RingPoly {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.mul(c, s)).collect(),
        }
    }

    /// Product modulo `x^l - 1`.
    pub fn mul_mod(&self, other: &RingPoly) -> Result<RingPoly> {
        self.check_same_ring(other)?;
        let f = self.field;
        let ell = self.ell();
        let q = f.q();
        let mut acc = vec![0u32; ell];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let k = if i + j >= ell { i + j - ell } else { i + j };
                    acc[k] = (acc[k] + a as u32 * b as u32) % q;
                }
            }
        }
        Ok(RingPoly {
            field: f,
            coeffs: acc.into_iter().map(|v| v as u8).collect(),
        })
    }

    /// Multiplication by `x^s` (cyclic shift of coefficients).
    pub fn shift(&self, s: usize) -> RingPoly {
        let ell = self.ell();
        let mut coeffs = vec![0; ell];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + s) % ell] = c;
        }
        RingPoly {
            field: self.field,
            coeffs,
        }
    }

    /// `a(x^m) mod x^l - 1`: exponent `i` goes to `i*m mod l`, colliding
    /// coefficients add.
    pub fn substitute_power(&self, m: usize) -> RingPoly {
        let ell = self.ell();
        let f = self.field;
        let mut coeffs = vec![0; ell];
        for (i, c) in self.terms() {
            let k = ((i as u128 * m as u128) % ell as u128) as usize;
            coeffs[k] = f.add(coeffs[k], c);
        }
        RingPoly { field: f, coeffs }
    }

    /// Ring reciprocal `a(x^{-1}) mod x^l - 1`.
    pub fn reciprocal(&self) -> RingPoly {
        let ell = self.ell();
        let mut coeffs = vec![0; ell];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(ell - i) % ell] = c;
        }
        RingPoly {
            field: self.field,
            coeffs,
        }
    }
}

/// `gcd(a, b, x^l - 1)` as a monic plain polynomial; always divides
/// `x^l - 1`.
pub fn ring_gcd(a: &RingPoly, b: &RingPoly) -> Result<Poly> {
    a.check_same_ring(b)?;
    let cyc = Poly::cycle(a.field, a.ell());
    Ok(cyc.gcd(&a.to_poly()).gcd(&b.to_poly()))
}

impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_terms(f, self.terms())
    }
}

impl fmt::Debug for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingPoly[{}, l={}]({})", self.field, self.ell(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::BINARY
    }

    fn rp(ell: usize, exps: &[usize]) -> RingPoly {
        RingPoly::from_exponents(f2(), ell, exps)
    }

    #[test]
    fn mul_mod_examples() {
        assert!(rp(2, &[0, 1]).mul_mod(&rp(2, &[0, 1])).unwrap().is_zero());
        assert_eq!(rp(3, &[0, 1]).mul_mod(&rp(3, &[1])).unwrap(), rp(3, &[1, 2]));
        // (1+x)*1 + (1+x^2)*x = 0 mod x^3-1
        let lhs = rp(3, &[0, 1])
            .mul_mod(&rp(3, &[0]))
            .unwrap()
            .add(&rp(3, &[0, 2]).mul_mod(&rp(3, &[1])).unwrap())
            .unwrap();
        assert!(lhs.is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        assert!(rp(3, &[0]).mul_mod(&rp(4, &[0])).is_err());
        let f3 = Field::new(3).unwrap();
        assert!(rp(3, &[0])
            .mul_mod(&RingPoly::one(f3, 3))
            .is_err());
    }

    #[test]
    fn ring_gcd_examples() {
        let a = rp(21, &[0, 3, 6, 12]);
        let b = rp(21, &[0, 7]);
        assert_eq!(ring_gcd(&a, &b).unwrap().deg(), Some(4));
        assert!(ring_gcd(&rp(5, &[0, 1]), &rp(5, &[0])).unwrap().is_one());
        let a = rp(21, &[0, 1, 2, 4]);
        let b = rp(21, &[0, 7, 14]);
        assert!(ring_gcd(&a, &b).unwrap().is_one());
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(rp(21, &[0, 1, 2, 4]).substitute_power(3), rp(21, &[0, 3, 6, 12]));
        let a = rp(9, &[0, 2, 5]);
        assert_eq!(a.substitute_power(1), a);
        assert!(rp(5, &[0, 1]).substitute_power(5).is_zero());
        let f3 = Field::new(3).unwrap();
        let a = RingPoly::from_exponents(f3, 5, &[0, 1]).substitute_power(5);
        assert_eq!(a, RingPoly::monomial(f3, 5, 2, 0));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(rp(5, &[0, 1]).reciprocal(), rp(5, &[0, 4]));
        assert_eq!(rp(5, &[0]).reciprocal(), rp(5, &[0]));
    }

    #[test]
    fn degree_of_zero_is_sentinel() {
        assert_eq!(RingPoly::zero(f2(), 4).degree(), Degree::NegInfinity);
        assert_eq!(rp(4, &[1, 3]).degree(), Degree::Finite(3));
    }

    fn arb_ring(q: u32, ell: usize) -> impl Strategy<Value = RingPoly> {
        prop::collection::vec(0..q as u8, ell)
            .prop_map(move |c| RingPoly::from_coeffs(Field::new(q).unwrap(), c).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (RingPoly, RingPoly, RingPoly)> {
        (prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..24)
            .prop_flat_map(|(q, ell)| (arb_ring(q, ell), arb_ring(q, ell), arb_ring(q, ell)))
    }

    /// Dense circulant `c(P)` with `C[i][j] = c_{(i-j) mod l}`.
    fn circulant(c: &RingPoly) -> Vec<Vec<u8>> {
        let ell = c.ell();
        (0..ell)
            .map(|i| (0..ell).map(|j| c.coeff((i + ell - j) % ell)).collect())
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_laws((a, b, c) in arb_triple()) {
            let ab = a.mul_mod(&b).unwrap();
            prop_assert_eq!(&ab, &b.mul_mod(&a).unwrap());
            prop_assert_eq!(
                ab.mul_mod(&c).unwrap(),
                a.mul_mod(&b.mul_mod(&c).unwrap()).unwrap()
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn product_matches_circulant_action((a, b, _c) in arb_triple()) {
            let f = a.field();
            let m = circulant(&a);
            let ell = a.ell();
            let mv: Vec<u8> = (0..ell)
                .map(|i| (0..ell).fold(0u8, |acc, j| f.add(acc, f.mul(m[i][j], b.coeff(j)))))
                .collect();
            let prod = a.mul_mod(&b).unwrap();
            prop_assert_eq!(mv.as_slice(), prod.coeffs());
        }

        #[test]
        fn reciprocal_is_involution((a, _b, _c) in arb_triple()) {
            prop_assert_eq!(a.reciprocal().reciprocal(), a);
        }

        #[test]
        fn coprime_substitution_preserves_weight((a, _b, _c) in arb_triple(), m in 1usize..50) {
            let ell = a.ell();
            prop_assume!(crate::num::gcd(m, ell) == 1);
            prop_assert_eq!(a.substitute_power(m).weight(), a.weight());
        }

        #[test]
        fn ring_gcd_divides_everything((a, b, _c) in arb_triple()) {
            let h = ring_gcd(&a, &b).unwrap();
            prop_assert!(h.divides(&Poly::cycle(a.field(), a.ell())));
            prop_assert!(h.divides(&a.to_poly()) || a.is_zero());
            prop_assert!(h.divides(&b.to_poly()) || b.is_zero());
        }
    }
}
