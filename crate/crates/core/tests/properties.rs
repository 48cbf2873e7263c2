use proptest::prelude::*;

use gbtk::codes::{canonical_form, Commensurability, GbCode};
use gbtk::distance::{estimate_distance, EstimatorConfig};
use gbtk::field::Field;
use gbtk::maps::{rotated_from_gb, rotated_to_gb};
use gbtk::num::gcd;
use gbtk::poly::Poly;
use gbtk::ring::RingPoly;

fn binary_ring() -> impl Strategy<Value = RingPoly> {
    (2usize..40).prop_flat_map(|ell| {
        prop::collection::vec(0u8..2, ell).prop_filter_map("nonzero", move |c| {
            let p = RingPoly::from_coeffs(Field::BINARY, c).unwrap();
            (!p.is_zero()).then_some(p)
        })
    })
}

fn code_pair(max_ell: usize) -> impl Strategy<Value = (u32, Vec<u8>, Vec<u8>)> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..max_ell).prop_flat_map(|(q, ell)| {
        (Just(q), prop::collection::vec(0..q as u8, ell), prop::collection::vec(0..q as u8, ell))
    })
}

fn build(q: u32, a: Vec<u8>, b: Vec<u8>) -> Option<GbCode> {
    let f = Field::new(q).unwrap();
    let (a, b) = (RingPoly::from_coeffs(f, a).unwrap(), RingPoly::from_coeffs(f, b).unwrap());
    GbCode::new(a, b).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_form_is_orbit_invariant(a in binary_ring(), s in 0usize..64, rev in any::<bool>()) {
        let c = canonical_form(&a).unwrap();
        let mut moved = a.shift(s % a.ell());
        if rev {
            moved = moved.reciprocal();
        }
        prop_assert_eq!(canonical_form(&moved).unwrap(), c.clone());
        prop_assert_eq!(canonical_form(&c).unwrap(), c.clone());
        prop_assert_eq!(c.coeff(0), 1);
        prop_assert_eq!(c.weight(), a.weight());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn checks_are_orthogonal_and_ab_is_coprime((q, a, b) in code_pair(30)) {
        let Some(code) = build(q, a, b) else { return Ok(()) };
        let css = code.css();
        prop_assert!(css.hx().orthogonal_to(&css.hz()));
        prop_assert_eq!(code.rank(), code.ell() - code.deg_h());
        if let Ok(ab) = code.ab() {
            let g = ab.a1().to_poly().gcd(&ab.b1().to_poly());
            prop_assert!(g.is_one() || ab.a1().is_zero() || ab.b1().is_zero(), "gcd(a1, b1) = {}", g);
            prop_assert!(ab.css().hx().orthogonal_to(&ab.css().hz()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn commensurate_codes_scale_k((q, a, b) in code_pair(12), delta in 2usize..5) {
        let Some(base) = build(q, a, b) else { return Ok(()) };
        let big = base.expand(delta);
        prop_assert_eq!(big.k(), delta * base.k());
        match big.commensurate_decompose() {
            Commensurability::Commensurate { delta: d, base: b0 } => {
                prop_assert_eq!(d % delta, 0);
                let back = b0.expand(d);
                prop_assert_eq!(back.a(), big.a());
                prop_assert_eq!(back.b(), big.b());
                prop_assert_eq!(big.k(), d * b0.k());
            }
            Commensurability::Incommensurate => prop_assert!(false, "expanded code is commensurate"),
        }
    }

    #[test]
    fn rotated_map_round_trips(ell in 2usize..60, n1_seed in 1usize..60, h1 in prop::collection::vec(0u8..2, 1..8), h2 in prop::collection::vec(0u8..2, 1..8)) {
        let n1 = (n1_seed..n1_seed + ell).find(|&m| gcd(m % ell, ell) == 1 && m % ell != 0).map(|m| m % ell).unwrap_or(1);
        let (p1, p2) = (Poly::from_coeffs(Field::BINARY, h1), Poly::from_coeffs(Field::BINARY, h2));
        if p1.is_zero() && p2.is_zero() {
            return Ok(());
        }
        let code = rotated_to_gb(&p1, &p2, n1, ell).unwrap();
        let (r1, r2) = rotated_from_gb(&code, n1).unwrap();
        prop_assert_eq!(r1, RingPoly::from_poly(&p1, ell));
        prop_assert_eq!(r2, RingPoly::from_poly(&p2, ell));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn estimator_is_reproducible_and_monotone(seed in any::<u64>(), ell in 7usize..20) {
        let code = GbCode::binary(ell, &[0, 1, 3, 4], &[0, 2]).unwrap();
        if code.is_empty() {
            return Ok(());
        }
        let mut prev = None;
        for trials in [1u64, 10, 40, 100] {
            let cfg = EstimatorConfig::new(trials, seed).unwrap();
            let r = estimate_distance(&code, &cfg).unwrap();
            prop_assert_eq!(&r, &estimate_distance(&code, &cfg).unwrap());
            prop_assert!(!r.exact);
            if let Some(p) = prev {
                prop_assert!(r.d <= p);
            }
            prev = Some(r.d);
        }
    }
}
