use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{extend_by_sqrt, Field, FieldElement, FieldError};

fn q() -> Field {
    Field::rational()
}

fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

/// ℚ(√6): the tower the blue diagonal analysis of the running ellipse lives in.
fn q_sqrt6() -> Field {
    Field::quadratic(&q(), q().from_i64(6)).unwrap()
}

/// Depth-two tower ℚ(√22)(√33).
fn q_sqrt22_sqrt33() -> Field {
    let t1 = Field::quadratic(&q(), q().from_i64(22)).unwrap();
    let d = t1.embed(&q().from_i64(33)).unwrap();
    Field::quadratic(&t1, d).unwrap()
}

fn pair(field: &Field, a: FieldElement, b: FieldElement) -> FieldElement {
    super::quadratic_element(field, a, b)
}

fn rational(n: i64, m: i64) -> FieldElement {
    q().from_ratio(n, m).unwrap()
}

fn random_element(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    match (&field.prime_modulus(), field.base()) {
        (Some(p), _) => field.from_i64(rng.gen_range(0..*p) as i64),
        (None, Some(base)) => {
            let a = random_element(base, rng);
            let b = random_element(base, rng);
            pair(field, a, b)
        }
        (None, None) => {
            let n = rng.gen_range(-30i64..=30);
            let m = rng.gen_range(1i64..=30);
            field.from_ratio(n, m).unwrap()
        }
    }
}

#[test]
fn conjugate_product_matches_integer_arithmetic() {
    // Oracle: (14 + 5√6)(14 − 5√6) computed two independent ways. The
    // field multiplication must agree with plain integer arithmetic
    // 14² − 5²·6 = 46.
    let t = q_sqrt6();
    let x = pair(&t, rational(14, 1), rational(5, 1));
    let y = pair(&t, rational(14, 1), rational(-5, 1));
    let oracle = BigInt::from(14 * 14) - BigInt::from(5 * 5) * BigInt::from(6);
    assert_eq!(oracle, BigInt::from(46));
    assert_eq!(x.mul(&y), t.from_bigint(&oracle));
}

#[test]
fn mod_13_square_roots_match_brute_force() {
    // Oracle: exhaustive search over F₁₃. 10 has roots {6, 7}; the
    // canonical representative is the smaller residue 6.
    let brute: Vec<Option<u64>> = (0..13u64)
        .map(|r| (0..13u64).find(|s| (s * s) % 13 == r))
        .collect();
    assert_eq!(brute[10], Some(6));
    let f = fp(13);
    for r in 0..13u64 {
        let got = f.from_i64(r as i64).sqrt().map(|s| s.prime_value().unwrap());
        assert_eq!(got, brute[r as usize], "sqrt of {r} mod 13");
    }
}

#[test]
fn prime_square_roots_match_brute_force_up_to_101() {
    for p in (3..=101u64).filter(|&p| super::sqrt::is_prime_u64(p)) {
        let f = fp(p);
        for r in 0..p {
            let brute = (0..p).find(|s| (s * s) % p == r);
            let got = f.from_i64(r as i64).sqrt().map(|s| s.prime_value().unwrap());
            assert_eq!(got, brute, "sqrt of {r} mod {p}");
        }
    }
}

#[test]
fn field_axioms_hold_on_random_triples() {
    let fields = [
        q(),
        fp(10007),
        fp(13),
        q_sqrt6(),
        q_sqrt22_sqrt33(),
        Field::quadratic(&fp(13), fp(13).from_i64(2)).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for field in &fields {
        let zero = field.zero();
        let one = field.one();
        for _ in 0..1000 {
            let x = random_element(field, &mut rng);
            let y = random_element(field, &mut rng);
            let z = random_element(field, &mut rng);
            assert_eq!(x.add(&y), y.add(&x));
            assert_eq!(x.mul(&y), y.mul(&x));
            assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            assert_eq!(x.add(&zero), x);
            assert_eq!(x.mul(&one), x);
            assert_eq!(x.add(&x.neg()), zero);
            if !x.is_zero() {
                assert_eq!(x.mul(&x.checked_inv().unwrap()), one);
            }
        }
    }
}

#[test]
fn embedding_is_a_ring_homomorphism() {
    let t = q_sqrt22_sqrt33();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let a = random_element(&q(), &mut rng);
        let b = random_element(&q(), &mut rng);
        let ea = t.embed(&a).unwrap();
        let eb = t.embed(&b).unwrap();
        assert_eq!(t.embed(&a.add(&b)).unwrap(), ea.add(&eb));
        assert_eq!(t.embed(&a.mul(&b)).unwrap(), ea.mul(&eb));
    }
    // Embedding also lifts from intermediate floors of the tower.
    let t1 = t.base().unwrap();
    let x = pair(t1, rational(3, 2), rational(-1, 5));
    let lifted = t.embed(&x).unwrap();
    assert_eq!(lifted.project_to_base(), Some(x));
}

#[test]
fn canonical_forms_collapse_equal_values() {
    assert_eq!(rational(3, 6), rational(1, 2));
    assert_eq!(rational(-3, 6), rational(1, -2));
    assert_eq!(fp(13).from_i64(29), fp(13).from_i64(3));
    assert_eq!(fp(13).from_i64(-1), fp(13).from_i64(12));
    let t = q_sqrt6();
    assert_eq!(
        pair(&t, rational(2, 4), rational(10, 4)),
        pair(&t, rational(1, 2), rational(5, 2))
    );
}

#[test]
fn square_roots_square_back_and_pick_canonical_representatives() {
    let fields = [q(), fp(10007), q_sqrt6(), q_sqrt22_sqrt33()];
    let mut rng = ChaCha8Rng::seed_from_u64(0xabcd);
    for field in &fields {
        for _ in 0..200 {
            let x = random_element(field, &mut rng);
            let sq = x.square();
            let r = sq.sqrt().expect("a square has a root");
            assert_eq!(r.square(), sq);
            // Roots of the same square agree no matter which sign produced it.
            assert_eq!(x.neg().square().sqrt().unwrap(), r);
        }
    }
    // Rational roots are non-negative, prime roots are the smaller residue,
    // tower roots lead with a canonically positive coefficient.
    assert_eq!(rational(9, 4).sqrt(), Some(rational(3, 2)));
    assert_eq!(rational(-4, 1).sqrt(), None);
    assert_eq!(rational(2, 1).sqrt(), None);
    let t = q_sqrt6();
    let root6 = t.embed(&rational(6, 1)).unwrap().sqrt().unwrap();
    assert_eq!(root6, pair(&t, rational(0, 1), rational(1, 1)));
    let x = pair(&t, rational(14, 1), rational(5, 1));
    assert_eq!(x.square().sqrt(), Some(x.clone()));
    assert_eq!(x.neg().square().sqrt(), Some(x));
}

#[test]
fn norms_detect_non_squares_in_towers() {
    // 33 is not a square in ℚ(√22), but is one floor up in ℚ(√22)(√33).
    let t1 = Field::quadratic(&q(), q().from_i64(22)).unwrap();
    assert!(t1.embed(&rational(33, 1)).unwrap().sqrt().is_none());
    let t2 = q_sqrt22_sqrt33();
    let r = t2.embed(&rational(33, 1)).unwrap().sqrt().unwrap();
    assert_eq!(r.square(), t2.embed(&rational(33, 1)).unwrap());
}

#[test]
fn extend_by_sqrt_normalizes_radicands() {
    // 600 = 10²·6, so extending by 600 lands in the same tower as by 6,
    // with the root scaled to match.
    let by6 = extend_by_sqrt(&q(), &rational(6, 1)).unwrap();
    let by600 = extend_by_sqrt(&q(), &rational(600, 1)).unwrap();
    assert_eq!(by6.field, by600.field);
    assert_eq!(by6.field.depth(), 1);
    assert_eq!(by6.root.square(), by6.field.embed(&rational(6, 1)).unwrap());
    assert_eq!(
        by600.root.square(),
        by600.field.embed(&rational(600, 1)).unwrap()
    );
    assert_eq!(by600.root, by6.root.mul_i64(10));
    // Fractions normalize through numerator·denominator.
    let byq = extend_by_sqrt(&q(), &rational(3, 2)).unwrap();
    assert_eq!(byq.field, by6.field);
    // Negative radicands keep their sign on the squarefree part.
    let byneg = extend_by_sqrt(&q(), &rational(-8, 1)).unwrap();
    assert_eq!(
        byneg.field.radicand().unwrap().rational_value(),
        Some(BigRational::from(BigInt::from(-2)))
    );
    assert_eq!(
        byneg.root.square(),
        byneg.field.embed(&rational(-8, 1)).unwrap()
    );
}

#[test]
fn extend_by_sqrt_returns_existing_roots_unchanged() {
    let ext = extend_by_sqrt(&q(), &rational(49, 4)).unwrap();
    assert_eq!(ext.field, q());
    assert_eq!(ext.root, rational(7, 2));
    let f = fp(13);
    let ext = extend_by_sqrt(&f, &f.from_i64(10)).unwrap();
    assert_eq!(ext.field, f);
    assert_eq!(ext.root, f.from_i64(6));
}

#[test]
fn extend_by_sqrt_builds_depth_two_towers() {
    let t1 = extend_by_sqrt(&q(), &rational(22, 1)).unwrap().field;
    let d = t1.embed(&rational(33, 1)).unwrap();
    let t2 = extend_by_sqrt(&t1, &d).unwrap();
    assert_eq!(t2.field.depth(), 2);
    assert_eq!(t2.root.square(), t2.field.embed(&rational(33, 1)).unwrap());
    assert_eq!(t2.field, q_sqrt22_sqrt33());
}

#[test]
fn prime_field_extensions_use_the_least_nonresidue() {
    // Over F₁₃ the least non-residue is 2; extending by any non-residue
    // lands in the canonical tower F₁₃(√2).
    let f = fp(13);
    assert_eq!(super::sqrt::least_nonresidue(13), 2);
    let by2 = extend_by_sqrt(&f, &f.from_i64(2)).unwrap();
    let by5 = extend_by_sqrt(&f, &f.from_i64(5)).unwrap();
    assert_eq!(by2.field, by5.field);
    assert_eq!(by2.field.depth(), 1);
    assert_eq!(by5.root.square(), by5.field.embed(&f.from_i64(5)).unwrap());
    // Every element of F_p is a square in F_p(√z), so no embedded residue
    // ever forces a second extension.
    for r in 1..13 {
        let x = by2.field.embed(&f.from_i64(r)).unwrap();
        assert!(x.is_square(), "{r} should be a square in F₁₃(√2)");
    }
}

#[test]
fn invalid_moduli_are_rejected() {
    assert!(matches!(
        Field::prime(2),
        Err(FieldError::InvalidModulus { p: 2, .. })
    ));
    assert!(matches!(
        Field::prime(91),
        Err(FieldError::InvalidModulus { p: 91, .. })
    ));
    assert!(matches!(
        Field::prime(1),
        Err(FieldError::InvalidModulus { p: 1, .. })
    ));
    assert!(Field::prime(3).is_ok());
    assert!(Field::prime(10007).is_ok());
}

#[test]
fn square_radicands_are_rejected_with_a_witness() {
    match Field::quadratic(&q(), rational(9, 4)) {
        Err(FieldError::SquareRadicand { root }) => assert_eq!(*root, rational(3, 2)),
        other => panic!("expected a square-radicand rejection, got {other:?}"),
    }
    assert!(matches!(
        Field::quadratic(&q(), rational(0, 1)),
        Err(FieldError::ZeroRadicand)
    ));
}

#[test]
fn checked_division_reports_zero_divisors() {
    assert_eq!(
        rational(1, 2).checked_div(&rational(0, 1)),
        Err(FieldError::DivisionByZero)
    );
    assert_eq!(fp(13).from_i64(0).checked_inv(), Err(FieldError::DivisionByZero));
    let t = q_sqrt6();
    assert_eq!(t.zero().checked_inv(), Err(FieldError::DivisionByZero));
    // A nonzero tower element with a zero rational part is still a unit.
    let x = pair(&t, rational(0, 1), rational(3, 1));
    assert_eq!(x.mul(&x.checked_inv().unwrap()), t.one());
}

#[test]
#[should_panic(expected = "field mismatch")]
fn mixing_fields_in_arithmetic_panics() {
    let _ = rational(1, 1).add(&fp(13).from_i64(1));
}

#[test]
fn real_signs_are_exact() {
    assert_eq!(rational(3, 7).real_sign(), Some(1));
    assert_eq!(rational(-3, 7).real_sign(), Some(-1));
    assert_eq!(rational(0, 1).real_sign(), Some(0));
    assert_eq!(fp(13).from_i64(5).real_sign(), None);
    let t = q_sqrt6();
    // 14 − 5√6 ≈ 1.75 is positive even though the coefficients disagree.
    assert_eq!(pair(&t, rational(14, 1), rational(-5, 1)).real_sign(), Some(1));
    // 5 − 3√6 ≈ −2.35 is negative.
    assert_eq!(pair(&t, rational(5, 1), rational(-3, 1)).real_sign(), Some(-1));
    assert_eq!(pair(&t, rational(0, 1), rational(-2, 1)).real_sign(), Some(-1));
    // Towers over a negative radicand are not ordered.
    let ti = Field::quadratic(&q(), rational(-2, 1)).unwrap();
    assert_eq!(pair(&ti, rational(1, 1), rational(1, 1)).real_sign(), None);
    // Depth two stays ordered when every radicand is positive.
    let t2 = q_sqrt22_sqrt33();
    let x = t2.embed(&rational(-5, 3)).unwrap();
    assert_eq!(x.real_sign(), Some(-1));
    let root33 = t2.embed(&rational(33, 1)).unwrap().sqrt().unwrap();
    // 3 − √33 < 0 < 3 + √33.
    let three = t2.embed(&rational(3, 1)).unwrap();
    assert_eq!(three.sub(&root33).real_sign(), Some(-1));
    assert_eq!(three.add(&root33).real_sign(), Some(1));
}

#[test]
fn descriptors_round_trip_through_json() {
    let fields = [
        q(),
        fp(10007),
        q_sqrt6(),
        q_sqrt22_sqrt33(),
        Field::quadratic(&fp(13), fp(13).from_i64(2)).unwrap(),
    ];
    for field in &fields {
        let json = field.to_json();
        let back = Field::from_json(&json).unwrap();
        assert_eq!(&back, field);
        assert_eq!(back.to_json(), json);
    }
    assert_eq!(q().to_json(), json!({"kind": "rational"}));
    assert_eq!(fp(10007).to_json(), json!({"kind": "prime", "p": 10007}));
    assert_eq!(
        q_sqrt6().to_json(),
        json!({"kind": "quadratic", "base": {"kind": "rational"}, "d": "6"})
    );
}

#[test]
fn elements_round_trip_through_json() {
    let fields = [q(), fp(10007), q_sqrt6(), q_sqrt22_sqrt33()];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for field in &fields {
        for _ in 0..200 {
            let x = random_element(field, &mut rng);
            let json = x.to_json();
            assert_eq!(field.parse_element(&json).unwrap(), x);
        }
    }
    // Printed forms parse back too.
    assert_eq!(q().parse_element_str("-5/2").unwrap(), rational(-5, 2));
    assert_eq!(q().parse_element_str("7").unwrap(), rational(7, 1));
    assert_eq!(fp(13).parse_element_str("29").unwrap(), fp(13).from_i64(3));
    let t = q_sqrt6();
    let x = pair(&t, rational(14, 1), rational(-5, 2));
    assert_eq!(t.parse_element(&json!({"a": "14", "b": "-5/2"})).unwrap(), x);
    // Ground-field shorthand embeds into towers.
    assert_eq!(
        t.parse_element(&json!("3/2")).unwrap(),
        t.embed(&rational(3, 2)).unwrap()
    );
}

#[test]
fn display_forms_are_compact() {
    assert_eq!(rational(7, 1).to_string(), "7");
    assert_eq!(rational(-5, 2).to_string(), "-5/2");
    assert_eq!(fp(13).from_i64(29).to_string(), "3");
    let t = q_sqrt6();
    assert_eq!(
        pair(&t, rational(14, 1), rational(-5, 2)).to_string(),
        "{14, -5/2}"
    );
    assert_eq!(q().to_string(), "rational");
    assert_eq!(fp(10007).to_string(), "fp:10007");
}

#[test]
fn canonical_cmp_orders_deterministically() {
    assert!(rational(-1, 2).canonical_cmp(&rational(1, 3)).is_lt());
    assert!(fp(13).from_i64(5).canonical_cmp(&fp(13).from_i64(9)).is_lt());
    let t = q_sqrt6();
    let a = pair(&t, rational(1, 1), rational(9, 1));
    let b = pair(&t, rational(2, 1), rational(0, 1));
    assert!(a.canonical_cmp(&b).is_lt());
}
