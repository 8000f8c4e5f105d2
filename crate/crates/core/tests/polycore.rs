use proptest::prelude::*;
use syzkit::rational::qi;
use syzkit::{BinaryForm, Convention, MultiForm, VarPair, Q};

fn form(pair: VarPair, coeffs: &[i64]) -> MultiForm {
    let cs: Vec<Q> = coeffs.iter().map(|&c| qi(c)).collect();
    BinaryForm::from_coeffs(pair, &cs, Convention::Monomial).form().clone()
}

fn coeffs(max_order: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 1..=max_order + 1)
}

fn same_order_pair(max_order: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (1..=max_order + 1).prop_flat_map(|k| (prop::collection::vec(-9i64..=9, k), prop::collection::vec(-9i64..=9, k)))
}

fn matrix() -> impl Strategy<Value = [[Q; 2]; 2]> {
    prop::array::uniform4(-4i64..=4).prop_map(|[a, b, c, d]| [[qi(a), qi(b)], [qi(c), qi(d)]])
}

proptest! {
    #[test]
    fn product_is_commutative_and_distributive(a in coeffs(4), (b, c) in same_order_pair(4)) {
        let (fa, fb, fc) = (form(VarPair::X, &a), form(VarPair::Y, &b), form(VarPair::Y, &c));
        prop_assert_eq!(&fa * &fb, &fb * &fa);
        prop_assert_eq!(&fa * &(&fb + &fc), &(&fa * &fb) + &(&fa * &fc));
    }

    #[test]
    fn evaluation_is_multiplicative(a in coeffs(4), b in coeffs(4), p in prop::array::uniform4(-5i64..=5)) {
        let (fa, fb) = (form(VarPair::X, &a), form(VarPair::Y, &b));
        let point = [(VarPair::X, [qi(p[0]), qi(p[1])]), (VarPair::Y, [qi(p[2]), qi(p[3])])];
        let prod = (&fa * &fb).evaluate(&point).unwrap();
        prop_assert_eq!(prod, fa.evaluate(&point).unwrap() * fb.evaluate(&point).unwrap());
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(a in coeffs(3), b in coeffs(3), g in matrix()) {
        let (fa, fb) = (form(VarPair::X, &a), form(VarPair::X, &b));
        let sub = |f: &MultiForm| f.linear_substitution(VarPair::X, &g).unwrap();
        prop_assert_eq!(sub(&(&fa * &fb)), &sub(&fa) * &sub(&fb));
        prop_assert_eq!(sub(&(&fa + &fa)), &sub(&fa) + &sub(&fa));
    }

    #[test]
    fn substitution_composes(a in coeffs(4), g in matrix(), h in matrix()) {
        // x -> g x then x -> h x equals x -> (h g) x
        let f = form(VarPair::X, &a);
        let two = f.linear_substitution(VarPair::X, &g).unwrap().linear_substitution(VarPair::X, &h).unwrap();
        let mut hg: [[Q; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                hg[i][j] = &g[i][0] * &h[0][j] + &g[i][1] * &h[1][j];
            }
        }
        prop_assert_eq!(two, f.linear_substitution(VarPair::X, &hg).unwrap());
    }

    #[test]
    fn omega_is_antisymmetric(a in coeffs(4), b in coeffs(4)) {
        let f = &form(VarPair::X, &a) * &form(VarPair::Y, &b);
        let xy = f.omega(VarPair::X, VarPair::Y).unwrap();
        let yx = f.omega(VarPair::Y, VarPair::X).unwrap();
        prop_assert_eq!(xy, -&yx);
    }

    #[test]
    fn omega_annihilates_symmetric_square_of_linear(c in prop::array::uniform2(-9i64..=9)) {
        // l(x) l(y) has Omega image c1 c2 - c2 c1 = 0
        let f = &form(VarPair::X, &c) * &form(VarPair::Y, &c);
        prop_assert!(f.omega(VarPair::X, VarPair::Y).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip(a in coeffs(5), b in coeffs(3)) {
        let f = &form(VarPair::X, &a) * &form(VarPair::Z, &b);
        prop_assert_eq!(MultiForm::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn exact_division_undoes_multiplication(a in coeffs(4), b in coeffs(3)) {
        let (fa, fb) = (form(VarPair::X, &a), form(VarPair::X, &b));
        prop_assume!(!fb.is_zero());
        prop_assert_eq!((&fa * &fb).exact_divide(&fb).unwrap(), fa);
    }
}
