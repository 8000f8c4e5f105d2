use proptest::prelude::*;
use syzkit::rational::{q, qi};
use syzkit::syzygy::{
    closed_form_table, kappa, kappa_oracle, pi_set, reconstruct, vartheta_table, verify_table, LatticePoint,
};
use syzkit::{transvect, BinaryForm, VarPair};

fn anchored(m: u32, n: u32, r: u32, p: LatticePoint, at: (u32, u32), v: i64) -> Vec<((u32, u32), String)> {
    let (t, _) = vartheta_table(m, n, r, p).unwrap().anchored(at.0, at.1, &qi(v)).unwrap();
    t.entries().map(|(k, c)| (*k, syzkit::rational::fmt_q(c))).collect()
}

fn expect(pairs: &[((u32, u32), &str)]) -> Vec<((u32, u32), String)> {
    let mut v: Vec<_> = pairs.iter().map(|(k, s)| (*k, s.to_string())).collect();
    v.sort();
    v
}

#[test]
fn weight_two_and_three_syzygies_of_a_quintic_and_cubic() {
    assert_eq!(
        anchored(5, 3, 2, LatticePoint::ORIGIN, (0, 2), -1),
        expect(&[((0, 0), "21/8"), ((0, 1), "21/16"), ((0, 2), "-1"), ((1, 1), "315/256")])
    );
    assert_eq!(
        anchored(5, 3, 3, LatticePoint::ORIGIN, (0, 3), -1),
        expect(&[((0, 1), "20/3"), ((0, 2), "20/9"), ((0, 3), "-1"), ((1, 2), "25/14")])
    );
}

#[test]
fn weight_four_table_for_seven_and_five() {
    assert_eq!(
        anchored(7, 5, 4, LatticePoint::new(0, 1), (0, 0), 1),
        expect(&[
            ((0, 0), "1"),
            ((0, 1), "8/3"),
            ((0, 2), "54/55"),
            ((0, 3), "-1/6"),
            ((0, 4), "-10/63"),
            ((1, 1), "-7/12"),
            ((1, 2), "63/55"),
            ((1, 3), "49/72"),
            ((2, 2), "-1512/3025"),
        ])
    );
}

#[test]
fn stretched_coefficient_for_eight_and_six() {
    assert_eq!(vartheta_table(8, 6, 5, LatticePoint::new(1, 0)).unwrap().get(0, 5), q(-2, 63));
}

#[test]
fn weight_below_two_has_no_syzygies() {
    assert!(pi_set(5, 3, 1).is_err());
    assert!(vartheta_table(5, 3, 6, LatticePoint::ORIGIN).is_err());
}

fn grid() -> impl Strategy<Value = (u32, u32, u32, LatticePoint)> {
    (2u32..=7, 2u32..=7)
        .prop_flat_map(|(m, n)| (Just(m), Just(n), 2..=m.min(n)))
        .prop_flat_map(|(m, n, r)| (Just(m), Just(n), Just(r), prop::sample::select(pi_set(m, n, r).unwrap())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kappa_formula_matches_operator_oracle((m, n, r, p) in grid(), i in 0u32..=7, j in 0u32..=7) {
        prop_assume!(i + j <= r);
        prop_assert_eq!(kappa(m, n, r, i, j, p).unwrap(), kappa_oracle(m, n, r, i, j, p).unwrap());
    }

    #[test]
    fn basis_tables_vanish((m, n, r, p) in grid(), seed in any::<u64>()) {
        prop_assert!(verify_table(&vartheta_table(m, n, r, p).unwrap(), 1, seed).unwrap().passed);
    }

    #[test]
    fn closed_form_vanishes(m in 2u32..=7, n in 2u32..=7, pick in 2u32..=7, seed in any::<u64>()) {
        let r = pick.min(m.min(n));
        match closed_form_table(m, n, r) {
            Ok(t) => prop_assert!(verify_table(&t, 1, seed).unwrap().passed),
            Err(e) => prop_assert!(matches!(e, syzkit::Error::ZeroTable), "{e}"),
        }
    }

    #[test]
    fn anchoring_rescales_uniformly((m, n, r, p) in grid(), k in 1i64..=9) {
        let t = vartheta_table(m, n, r, p).unwrap();
        let (&(i, j), v) = t.entries().next().unwrap();
        let (scaled, factor) = t.anchored(i, j, &(v * qi(k))).unwrap();
        prop_assert_eq!(factor, qi(k));
        for (key, c) in t.entries() {
            prop_assert_eq!(scaled.get(key.0, key.1), c * qi(k));
        }
    }

    #[test]
    fn reconstruction_recovers_every_transvectant(m in 2u32..=6, n in 2u32..=6, seed in any::<u64>()) {
        let mut rng = syzkit::random::stream_rng(seed, 0);
        let a = BinaryForm::random(&mut rng, VarPair::X, m);
        let b = BinaryForm::random(&mut rng, VarPair::X, n);
        let us = reconstruct(&transvect(&a, &b, 0).unwrap(), &transvect(&a, &b, 1).unwrap(), m, n).unwrap();
        for (k, u) in us.iter().enumerate() {
            prop_assert_eq!(u, &transvect(&a, &b, k as u32 + 2).unwrap());
        }
    }
}
