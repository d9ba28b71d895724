use proptest::prelude::*;

use xtri_core::artin::{Elem, TruncatedAlgebra};
use xtri_core::formula::{d_invariant, jmath_twist, strongly_linked, CharacterParam, HodgeTateWeights};
use xtri_core::rational::q_frac;
use xtri_core::weyl::{
    bruhat_leq, bruhat_leq_subword, dot_action, dot_action_shifted, weight_leq, MultiPermutation,
    Permutation, WeightVector,
};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn small_q() -> impl Strategy<Value = xtri_core::Q> {
    (-6i64..=6, 1i64..=3).prop_map(|(a, b)| q_frac(a, b))
}

fn elem(alg: TruncatedAlgebra) -> impl Strategy<Value = Elem> {
    proptest::collection::vec(small_q(), alg.dim()).prop_map(move |c| alg.from_coeffs(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bruhat_algorithms_agree_on_s6(u in perm(6), w in perm(6)) {
        prop_assert_eq!(bruhat_leq(&u, &w).unwrap(), bruhat_leq_subword(&u, &w).unwrap());
    }

    #[test]
    fn bruhat_is_antisymmetric(u in perm(6), w in perm(6)) {
        if bruhat_leq(&u, &w).unwrap() && bruhat_leq(&w, &u).unwrap() {
            prop_assert_eq!(u, w);
        }
    }

    #[test]
    fn dot_action_is_an_action(a in perm(4), b in perm(4), lam in proptest::collection::vec(small_q(), 4)) {
        let lam = WeightVector::new(vec![lam]).unwrap();
        let (a, b) = (MultiPermutation::from(a), MultiPermutation::from(b));
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(
            dot_action(&ab, &lam).unwrap(),
            dot_action(&a, &dot_action(&b, &lam).unwrap()).unwrap()
        );
        prop_assert_eq!(dot_action(&a, &lam).unwrap(), dot_action_shifted(&a, &lam).unwrap());
    }

    #[test]
    fn d_invariant_is_inverse_symmetric(a in perm(5), b in perm(5)) {
        let w = MultiPermutation::new(vec![a, b]).unwrap();
        prop_assert_eq!(d_invariant(&w), d_invariant(&w.inverse()));
    }

    #[test]
    fn linkage_implies_weight_order(w in perm(4), lam in proptest::collection::vec(-3i64..=3, 4)) {
        let lam = WeightVector::from_integers(&[lam]).unwrap();
        let mu = dot_action(&MultiPermutation::from(w), &lam).unwrap();
        if strongly_linked(&mu, &lam).unwrap().linked {
            prop_assert!(weight_leq(&mu, &lam).unwrap());
        }
    }

    #[test]
    fn twists_compose_additively(a in perm(3), b in perm(3), c in perm(3), k in proptest::collection::vec(-5i64..=5, 3)) {
        let h = HodgeTateWeights::new(vec![vec![0, 2, 3]]).unwrap();
        let (a, b, c) = (MultiPermutation::from(a), MultiPermutation::from(b), MultiPermutation::from(c));
        let x = CharacterParam::new(vec![k], vec!["x".into(), "y".into(), "z".into()], None).unwrap();
        let two_steps = jmath_twist(&jmath_twist(&x, &b, &a, &h).unwrap(), &c, &b, &h).unwrap();
        prop_assert_eq!(two_steps.clone(), jmath_twist(&x, &c, &a, &h).unwrap());
        prop_assert_eq!(two_steps.phi, x.phi);
    }

    #[test]
    fn algebra_axioms(
        (x, y, z) in (elem(TruncatedAlgebra::parse("e^2,f^3").unwrap()),
                      elem(TruncatedAlgebra::parse("e^2,f^3").unwrap()),
                      elem(TruncatedAlgebra::parse("e^2,f^3").unwrap()))
    ) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(x.is_unit(), x.inverse().is_ok());
        if let Ok(inv) = x.inverse() {
            prop_assert_eq!(&x * &inv, x.algebra().one());
        }
    }
}
