//! Randomized field axioms for the cyclotomic arithmetic, checked exactly, with
//! the complex embedding `ζ -> exp(2πi/36)` as an independent oracle.

use e6core::exactfield::{std36, CycField, CycNum, CycNumData};
use proptest::prelude::*;

const CASES: u32 = 10_000;

fn field() -> &'static CycField {
    CycField::standard()
}

/// Small rational coefficients on up to 18 powers of ζ, so reduction modulo
/// the cyclotomic polynomial is exercised.
fn element() -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 0..18).prop_map(|c| field().from_coefficients(&c).unwrap())
}

fn nonzero() -> impl Strategy<Value = CycNum> {
    element().prop_filter("nonzero", |x| !x.is_zero())
}

/// Complex value of `x` under the embedding `ζ -> exp(2πi k/36)`.
fn embed(x: &CycNum, k: i64) -> (f64, f64) {
    let level = x.level() as f64;
    x.coefficients().iter().enumerate().fold((0.0, 0.0), |(re, im), (p, (n, d))| {
        let q = n.to_string().parse::<f64>().unwrap() / d.to_string().parse::<f64>().unwrap();
        let angle = 2.0 * std::f64::consts::PI * (k * p as i64) as f64 / level;
        (re + q * angle.cos(), im + q * angle.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs().max(a.1.abs()).max(b.0.abs()).max(b.1.abs());
    (a.0 - b.0).abs() < 1e-7 * scale && (a.1 - b.1).abs() < 1e-7 * scale
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn addition_is_an_abelian_group(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &std36::zero(), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn multiplication_is_commutative_associative_and_distributive(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &std36::one(), a);
    }

    #[test]
    fn nonzero_elements_are_invertible(a in nonzero(), b in nonzero()) {
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(a.checked_div(&b).unwrap(), &a * &b.inv().unwrap());
        prop_assert!(!(&a * &b).is_zero());
    }

    #[test]
    fn arithmetic_agrees_with_the_complex_embedding(a in element(), b in element(), k in prop::sample::select(vec![1i64, 5, 7, 11, 13, 17])) {
        let (ea, eb) = (embed(&a, k), embed(&b, k));
        prop_assert!(close(embed(&(&a + &b), k), (ea.0 + eb.0, ea.1 + eb.1)));
        prop_assert!(close(embed(&(&a * &b), k), cmul(ea, eb)));
        prop_assert!(close(embed(&a.galois(k).unwrap(), 1), ea));
        prop_assert!(close(embed(&a.conj(), 1), (embed(&a, 1).0, -embed(&a, 1).1)));
    }

    #[test]
    fn galois_maps_are_ring_automorphisms(a in element(), b in element(), k in prop::sample::select(vec![5i64, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35])) {
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        prop_assert_eq!((&a + &b).galois(k).unwrap(), &a.galois(k).unwrap() + &b.galois(k).unwrap());
        prop_assert!(a.norm().is_rational());
        prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
    }

    #[test]
    fn powers_and_roots_of_unity(a in nonzero(), m in 0u64..8, n in 0u64..8, k in 0i64..36) {
        prop_assert_eq!(&a.pow(m) * &a.pow(n), a.pow(m + n));
        prop_assert_eq!(a.powi(-(m as i64)).unwrap(), a.pow(m).inv().unwrap());
        let z = std36::zeta(k);
        prop_assert_eq!(z.zeta_exponent(), Some(k as u32));
        prop_assert_eq!(z.multiplicative_order(), Some(36 / num_gcd(36, k as u32)));
    }

    #[test]
    fn wire_form_round_trips(a in element()) {
        let data = CycNumData::from(&a);
        prop_assert_eq!(data.coeffs.len(), field().degree());
        prop_assert_eq!(CycNum::try_from(&data).unwrap(), a);
    }
}

fn num_gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn wire_form_rejects_malformed_data() {
    let short = CycNumData { level: 36, coeffs: vec![] };
    assert!(CycNum::try_from(&short).is_err());
    let bad_level = CycNumData { level: 0, coeffs: vec![] };
    assert!(CycNum::try_from(&bad_level).is_err());
}

#[test]
fn different_levels_do_not_mix() {
    let f9 = CycField::get(9).unwrap();
    assert!(std36::one().checked_add(&f9.one()).is_err());
    assert!(std36::one().checked_mul(&f9.one()).is_err());
}
