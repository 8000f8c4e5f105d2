use proptest::prelude::*;
use syzkit::rational::{q, qi};
use syzkit::transvectant::{jacobian_exchange_check, project, section_iota, transvect_direct};
use syzkit::{transvect, BinaryForm, Convention, VarPair, Q};

fn bf(coeffs: &[i64]) -> BinaryForm {
    let cs: Vec<Q> = coeffs.iter().map(|&c| qi(c)).collect();
    BinaryForm::from_coeffs(VarPair::X, &cs, Convention::Monomial)
}

fn coeffs(order: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-7i64..=7, order + 1)
}

/// Two forms of orders at most 5 and a valid index.
fn pair_and_index() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, u32)> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(m, n)| (coeffs(m), coeffs(n), 0..=m.min(n) as u32))
}

fn unimodular() -> impl Strategy<Value = [[Q; 2]; 2]> {
    // product of an upper and a lower shear
    (-3i64..=3, -3i64..=3).prop_map(|(s, t)| [[qi(1) + qi(s * t), qi(s)], [qi(t), qi(1)]])
}

proptest! {
    #[test]
    fn omega_route_matches_derivative_sum((a, b, r) in pair_and_index()) {
        prop_assert_eq!(transvect(&bf(&a), &bf(&b), r).unwrap(), transvect_direct(&bf(&a), &bf(&b), r).unwrap());
    }

    #[test]
    fn sign_rule((a, b, r) in pair_and_index()) {
        let sign = if r % 2 == 0 { qi(1) } else { qi(-1) };
        let ab = transvect(&bf(&a), &bf(&b), r).unwrap();
        prop_assert_eq!(ab, transvect(&bf(&b), &bf(&a), r).unwrap().scale(&sign));
    }

    #[test]
    fn bilinear((a, b, r) in pair_and_index(), seed in coeffs(5), k in -5i64..=5) {
        let a2: Vec<i64> = seed.iter().copied().cycle().take(a.len()).collect();
        let b2: Vec<i64> = seed.iter().rev().copied().cycle().take(b.len()).collect();
        let (fa, fa2, fb, fb2) = (bf(&a), bf(&a2), bf(&b), bf(&b2));
        let t = |x: &BinaryForm, y: &BinaryForm| transvect(x, y, r).unwrap();
        let kq = qi(k);
        prop_assert_eq!(t(&fa.add(&fa2.scale(&kq)).unwrap(), &fb), t(&fa, &fb).add(&t(&fa2, &fb).scale(&kq)).unwrap());
        prop_assert_eq!(t(&fa, &fb.add(&fb2.scale(&kq)).unwrap()), t(&fa, &fb).add(&t(&fa, &fb2).scale(&kq)).unwrap());
    }

    #[test]
    fn covariant_under_unimodular_substitution((a, b, r) in pair_and_index(), g in unimodular()) {
        let (fa, fb) = (bf(&a), bf(&b));
        let lhs = transvect(&fa.substitute(&g).unwrap(), &fb.substitute(&g).unwrap(), r).unwrap();
        prop_assert_eq!(lhs, transvect(&fa, &fb, r).unwrap().substitute(&g).unwrap());
    }

    #[test]
    fn scaling_substitution_picks_up_determinant_power((a, b, r) in pair_and_index(), l in 1i64..=3) {
        // x -> diag(l, 1) x has determinant l
        let g = [[qi(l), qi(0)], [qi(0), qi(1)]];
        let (fa, fb) = (bf(&a), bf(&b));
        let lhs = transvect(&fa.substitute(&g).unwrap(), &fb.substitute(&g).unwrap(), r).unwrap();
        let det_r = q(l.pow(r), 1);
        prop_assert_eq!(lhs, transvect(&fa, &fb, r).unwrap().substitute(&g).unwrap().scale(&det_r));
    }

    #[test]
    fn projection_inverts_section(m in 0u32..=6, n in 0u32..=6, c in coeffs(12), pick in 0u32..=6) {
        let r = pick.min(m.min(n));
        let order = (m + n - 2 * r) as usize;
        let form = bf(&c[..=order]);
        let back = project(&section_iota(&form, m, n, r).unwrap(), VarPair::X, VarPair::Y, r).unwrap();
        prop_assert_eq!(&back, form.form());
    }

    #[test]
    fn jacobian_exchange(m in 1usize..=4, n in 1usize..=4, s in 0usize..=3, seed in coeffs(16)) {
        let take = |from: usize, len: usize| -> Vec<i64> { seed.iter().copied().cycle().skip(from).take(len + 1).collect() };
        let (a, b, qf, rf) = (bf(&take(0, m)), bf(&take(3, n)), bf(&take(5, s)), bf(&take(11, s)));
        prop_assert!(jacobian_exchange_check(&a, &b, &qf, &rf).unwrap());
    }

    #[test]
    fn conventions_describe_the_same_form(c in coeffs(5)) {
        let f = bf(&c);
        let binom = f.coeffs(Convention::Binomial);
        prop_assert_eq!(BinaryForm::from_coeffs(VarPair::X, &binom, Convention::Binomial), f);
    }
}

#[test]
fn first_transvectant_is_the_jacobian() {
    // (A, B)_1 = (A_x1 B_x2 - A_x2 B_x1) / (m n)
    let a = bf(&[1, 0, 0]); // x1^2
    let b = bf(&[0, 0, 1]); // x2^2
    // A_x1 B_x2 = 2 x1 * 2 x2 = 4 x1 x2, divided by 4
    assert_eq!(transvect(&a, &b, 1).unwrap(), bf(&[0, 1, 0]));
}

#[test]
fn index_out_of_range_is_an_error() {
    assert!(transvect(&bf(&[1, 2]), &bf(&[1, 2, 3]), 2).is_err());
}
