use num_bigint::BigInt;
use proptest::prelude::*;
use syzkit::rational::{q, qi};
use syzkit::wigner::{
    is_triad, ninej_operator, ninej_symmetry_check, ninej_triple_sum, random_array, sixj, threej, HalfInt,
    NineJArray, Projection, QuadraticSurd,
};
use syzkit::Q;

fn h(t: u32) -> HalfInt {
    HalfInt::from_twice(t)
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|k| k * k == n)
}

/// A triad of doubled spins with `j1 + j2 + j` integral.
fn triad() -> impl Strategy<Value = (u32, u32, u32)> {
    (0u32..=6, 0u32..=6, 0u32..=12).prop_filter("triad", |&(a, b, c)| is_triad(h(a), h(b), h(c)))
}

fn phase(twice_sum: u32) -> Q {
    if (twice_sum / 2) % 2 == 0 {
        qi(1)
    } else {
        qi(-1)
    }
}

fn admissible_sixj(max_twice: u32) -> Vec<[HalfInt; 6]> {
    let mut out = Vec::new();
    let range = || (0..=max_twice).map(h);
    for a in range() {
        for b in range() {
            for c in range().filter(|&c| is_triad(a, b, c)) {
                for d in range() {
                    for e in range().filter(|&e| is_triad(d, e, c)) {
                        for f in range().filter(|&f| is_triad(a, e, f) && is_triad(d, b, f)) {
                            out.push([a, b, c, d, e, f]);
                        }
                    }
                }
            }
        }
    }
    out
}

fn arrays() -> impl Strategy<Value = NineJArray> {
    any::<u64>().prop_map(|seed| random_array(&mut syzkit::random::stream_rng(seed, 0), 6))
}

proptest! {
    #[test]
    fn surd_product_matches_integer_arithmetic(a in 1u64..=400, b in 1u64..=400, p in -20i64..=20, r in 1i64..=20) {
        let x = QuadraticSurd::sqrt(&qi(a as i64)).unwrap().scale(&q(p, r));
        let y = QuadraticSurd::sqrt(&qi(b as i64)).unwrap();
        let prod = &x * &y;
        // squares multiply exactly
        prop_assert_eq!(prod.square(), q(p * p, r * r) * qi((a * b) as i64));
        prop_assert_eq!(prod.is_zero(), p == 0);
        if p != 0 {
            prop_assert_eq!(prod.as_rational().is_some(), is_square(a * b));
            prop_assert!(prod.radicand() > &BigInt::from(0));
        }
        // sign follows the scalar
        prop_assert_eq!(prod.is_positive(), p > 0);
    }

    #[test]
    fn threej_column_swap_phase((a, b, c) in triad(), k1 in 0u32..=6, k2 in 0u32..=6) {
        let (m1, m2) = (a as i32 - 2 * (k1.min(a) as i32), b as i32 - 2 * (k2.min(b) as i32));
        let m = -(m1 + m2);
        prop_assume!(m.unsigned_abs() <= c);
        let (j1, j2, j) = (h(a), h(b), h(c));
        let (pm1, pm2, pm) = (Projection(m1), Projection(m2), Projection(m));
        let base = threej(j1, j2, j, pm1, pm2, pm).unwrap();
        let ph = phase(a + b + c);
        prop_assert_eq!(threej(j2, j1, j, pm2, pm1, pm).unwrap(), base.scale(&ph));
        prop_assert_eq!(threej(j1, j2, j, -pm1, -pm2, -pm).unwrap(), base.scale(&ph));
        // cyclic permutations leave it unchanged
        prop_assert_eq!(threej(j2, j, j1, pm2, pm, pm1).unwrap(), base);
    }

    #[test]
    fn threej_orthogonality((a, b, c) in triad()) {
        // sum over m1, m2 of the squared symbol with m fixed is 1/(2j+1)
        let m = c as i32 % 2;
        let total: Q = (0..=a)
            .map(|k| a as i32 - 2 * k as i32)
            .filter_map(|m1| {
                let m2 = -m - m1;
                (m2.unsigned_abs() <= b && (b as i32 - m2) % 2 == 0).then(|| {
                    threej(h(a), h(b), h(c), Projection(m1), Projection(m2), Projection(m)).unwrap().square()
                })
            })
            .sum();
        prop_assert_eq!(total, q(1, c as i64 + 1));
    }

    #[test]
    fn sixj_tetrahedral_symmetry(js in prop::sample::select(admissible_sixj(6))) {
        let [a, b, c, d, e, f] = js;
        let v = sixj(js).unwrap();
        prop_assert_eq!(sixj([b, a, c, e, d, f]).unwrap(), v.clone());
        prop_assert_eq!(sixj([a, c, b, d, f, e]).unwrap(), v.clone());
        prop_assert_eq!(sixj([d, e, c, a, b, f]).unwrap(), v);
    }

    #[test]
    fn ninej_routes_and_symmetry(arr in arrays()) {
        prop_assert_eq!(ninej_operator(&arr).unwrap(), ninej_triple_sum(&arr).unwrap());
        prop_assert!(ninej_symmetry_check(&arr).unwrap().passed());
    }

    #[test]
    fn ninej_reflections(arr in arrays()) {
        let v = ninej_triple_sum(&arr).unwrap();
        let odd = phase(2 * arr.total() as u32);
        prop_assert_eq!(ninej_triple_sum(&arr.transpose()).unwrap(), v.clone());
        prop_assert_eq!(ninej_triple_sum(&arr.permute_rows([1, 0, 2])).unwrap(), v.scale(&odd));
        prop_assert_eq!(ninej_triple_sum(&arr.permute_cols([1, 2, 0])).unwrap(), v);
    }

    #[test]
    fn ninej_display_round_trips(arr in arrays()) {
        prop_assert_eq!(arr.to_string().parse::<NineJArray>().unwrap(), arr);
    }
}

#[test]
fn ninej_with_a_zero_reduces_to_sixj() {
    // {a b e; c d e; f f 0} = (-1)^(b+c+e+f) {a b e; d c f} / sqrt((2e+1)(2f+1))
    for arr in syzkit::wigner::all_arrays(4) {
        let r = arr.rows();
        if r[2][2].twice() != 0 || r[0][2] != r[1][2] || r[2][0] != r[2][1] {
            continue;
        }
        let [a, b, e] = r[0];
        let [c, d, _] = r[1];
        let f = r[2][0];
        let six = sixj([a, b, e, d, c, f]).unwrap();
        let norm = QuadraticSurd::sqrt(&q(1, ((e.twice() + 1) * (f.twice() + 1)) as i64)).unwrap();
        let want = (&six * &norm).scale(&phase(b.twice() + c.twice() + e.twice() + f.twice()));
        assert_eq!(ninej_triple_sum(&arr).unwrap(), want, "{arr}");
    }
}
