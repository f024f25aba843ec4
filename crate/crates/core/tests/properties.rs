use kmink::expr::random_expr;
use kmink::hopf::{binary_residuals, unary_residuals, Residual};
use kmink::random::Generator;
use kmink::{eval_str, parse, ScalarValue};
use proptest::prelude::*;

fn scalar_term() -> impl Strategy<Value = ScalarValue> {
    (-4i64..5, 1i64..4, any::<bool>(), -2i32..3, 0u32..2, 0u8..4, 0i32..3, -2i32..3).prop_map(
        |(num, den, imag, kp, label, comp, kpow, ep)| {
            let mut c = ScalarValue::from_ratio(num, den);
            if imag {
                c = &c * &ScalarValue::i();
            }
            let mut t = &c * &ScalarValue::kappa_pow(kp);
            for _ in 0..kpow {
                t = &t * &ScalarValue::k(label, comp);
            }
            &t * &ScalarValue::e_pow(label, ep)
        },
    )
}

fn scalar() -> impl Strategy<Value = ScalarValue> {
    prop::collection::vec(scalar_term(), 0..4).prop_map(|ts| ts.iter().fold(ScalarValue::zero(), |acc, t| &acc + t))
}

fn clean(rs: Vec<Residual>) -> Vec<Residual> {
    rs.into_iter().filter(|(_, r)| !r.is_empty()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn scalar_inverse_of_monomials(t in scalar_term()) {
        if let Some(inv) = t.inverse() {
            prop_assert!((&t * &inv).is_one());
        } else {
            // only terms carrying momentum symbols are not invertible
            prop_assert!(t.is_zero() || t.to_string().contains("k["), "{}", t);
        }
    }

    #[test]
    fn position_algebra(seed in any::<u64>()) {
        let mut gen = Generator::new(seed, 2);
        let a = gen.position(true);
        let b = gen.position(true);
        let c = gen.position(false);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
    }

    #[test]
    fn position_hopf_axioms(seed in any::<u64>()) {
        let mut gen = Generator::new(seed, 2);
        let a = gen.position(true);
        let b = gen.position(true);
        prop_assert_eq!(clean(unary_residuals(&a)), vec![]);
        prop_assert_eq!(clean(binary_residuals(&a, &b)), vec![]);
    }

    #[test]
    fn momentum_hopf_axioms(seed in any::<u64>()) {
        let mut gen = Generator::new(seed, 2);
        let p = gen.momentum();
        let q = gen.momentum();
        prop_assert_eq!(clean(unary_residuals(&p)), vec![]);
        prop_assert_eq!(clean(binary_residuals(&p, &q)), vec![]);
    }

    #[test]
    fn parse_display_round_trip(seed in any::<u64>()) {
        let mut gen = Generator::new(seed, 2);
        let e = random_expr(&mut gen, 4);
        let printed = e.to_string();
        let back = parse(&printed).unwrap();
        prop_assert_eq!(&back, &e, "{}", printed);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn eval_display_round_trip(seed in any::<u64>()) {
        let mut gen = Generator::new(seed, 2);
        let e = random_expr(&mut gen, 3);
        if let Ok(v) = eval_str(&e.to_string()) {
            let printed = v.to_string();
            let again = eval_str(&printed).unwrap();
            prop_assert_eq!(&again, &v, "{}", printed);
            prop_assert_eq!(again.to_string(), printed);
        }
    }
}
