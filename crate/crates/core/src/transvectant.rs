//! Binary forms and their transvectants, the Clebsch-Gordan projection and
//! section maps, and the exchange identity for first transvectants.

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{bracket, Exps, MultiForm, PairOrder, VarPair};
use crate::random::random_coeffs;
use crate::rational::{binomial, factorial, falling, fmt_q, parse_q, sign, Q};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `A = sum a_i x1^(m-i) x2^i`
    #[default]
    Monomial,
    /// `A = sum binom(m, i) a_i x1^(m-i) x2^i`
    Binomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pair: VarPair,
    order: u32,
    form: MultiForm,
}

fn exps_of(pair: VarPair, e1: u32, e2: u32) -> Exps {
    let mut e = [0u8; 16];
    e[2 * pair.index()] = e1 as u8;
    e[2 * pair.index() + 1] = e2 as u8;
    e
}

impl BinaryForm {
    pub fn new(form: MultiForm, pair: VarPair) -> Result<Self> {
        let order = match form.order(pair) {
            Some(PairOrder::Homogeneous(k)) => k,
            Some(PairOrder::Inhomogeneous) => {
                return Err(Error::OrderMismatch(format!(
                    "form is inhomogeneous in {pair}"
                )))
            }
            None => 0,
        };
        if let Some(other) = form.active_pairs().find(|&p| p != pair && !form.is_zero()) {
            if form.homogeneous_order(other) != Some(0) {
                return Err(Error::OrderMismatch(format!(
                    "binary form also uses pair {other}"
                )));
            }
        }
        form.check_orders()?;
        let mut clean = MultiForm::from_terms(
            &[(pair, PairOrder::Homogeneous(order))],
            form.terms().map(|(e, c)| (*e, c.clone())),
        )?;
        if clean.is_zero() {
            clean = MultiForm::from_terms(&[(pair, PairOrder::Homogeneous(order))], [])?;
        }
        Ok(BinaryForm {
            pair,
            order,
            form: clean,
        })
    }

    pub fn zero(pair: VarPair, order: u32) -> Self {
        BinaryForm::from_coeffs(
            pair,
            &vec![Q::zero(); order as usize + 1],
            Convention::Monomial,
        )
    }

    /// `coeffs[i]` multiplies `pair_1^(m-i) pair_2^i` (times `binom(m, i)`
    /// under the binomial convention).
    pub fn from_coeffs(pair: VarPair, coeffs: &[Q], convention: Convention) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a binary form needs at least one coefficient"
        );
        let m = coeffs.len() as u32 - 1;
        let terms = coeffs.iter().enumerate().map(|(i, c)| {
            let i = i as u32;
            let c = match convention {
                Convention::Monomial => c.clone(),
                Convention::Binomial => c * Q::from_integer(binomial(m, i)),
            };
            (exps_of(pair, m - i, i), c)
        });
        let form = MultiForm::from_terms(&[(pair, PairOrder::Homogeneous(m))], terms)
            .expect("coefficients define a homogeneous form");
        BinaryForm {
            pair,
            order: m,
            form,
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, pair: VarPair, order: u32) -> Self {
        BinaryForm::from_coeffs(
            pair,
            &random_coeffs(rng, order as usize + 1),
            Convention::Monomial,
        )
    }

    pub fn coeffs(&self, convention: Convention) -> Vec<Q> {
        (0..=self.order)
            .map(|i| {
                let c = self.form.coeff(&exps_of(self.pair, self.order - i, i));
                match convention {
                    Convention::Monomial => c,
                    Convention::Binomial => c / Q::from_integer(binomial(self.order, i)),
                }
            })
            .collect()
    }

    pub fn pair(&self) -> VarPair {
        self.pair
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn form(&self) -> &MultiForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    /// The same form written in another variable pair.
    pub fn on_pair(&self, pair: VarPair) -> BinaryForm {
        if pair == self.pair {
            return self.clone();
        }
        let form = self
            .form
            .substitute_pair(self.pair, pair)
            .expect("renaming into an unused pair");
        BinaryForm {
            pair,
            order: self.order,
            form,
        }
    }

    fn same_pair(&self, other: &BinaryForm) -> Result<()> {
        if self.pair != other.pair {
            return Err(Error::OrderMismatch(format!(
                "forms live in different pairs {} and {}",
                self.pair, other.pair
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.same_pair(other)?;
        if self.order != other.order {
            return Err(Error::OrderMismatch(format!(
                "cannot add orders {} and {}",
                self.order, other.order
            )));
        }
        BinaryForm::new(&self.form + &other.form, self.pair)
    }

    pub fn sub(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn mul(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.same_pair(other)?;
        Ok(BinaryForm {
            pair: self.pair,
            order: self.order + other.order,
            form: self.form.try_mul(&other.form)?,
        })
    }

    pub fn scale(&self, c: &Q) -> BinaryForm {
        BinaryForm {
            pair: self.pair,
            order: self.order,
            form: self.form.scale(c),
        }
    }

    /// `A(g . x)` for a 2x2 rational matrix `g`.
    pub fn substitute(&self, g: &[[Q; 2]; 2]) -> Result<BinaryForm> {
        let form = self.form.linear_substitution(self.pair, g)?;
        Ok(BinaryForm {
            pair: self.pair,
            order: self.order,
            form,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct BinaryFormRepr {
    pair: String,
    order: u32,
    #[serde(default)]
    convention: Convention,
    coeffs: Vec<String>,
}

impl BinaryForm {
    pub fn to_json(&self, convention: Convention) -> serde_json::Value {
        let repr = BinaryFormRepr {
            pair: self.pair.name().to_string(),
            order: self.order,
            convention,
            coeffs: self.coeffs(convention).iter().map(fmt_q).collect(),
        };
        serde_json::to_value(repr).expect("binary forms always serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<BinaryForm> {
        let repr: BinaryFormRepr =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let pair = VarPair::from_name(&repr.pair)?;
        if repr.coeffs.len() != repr.order as usize + 1 {
            return Err(Error::OrderMismatch(format!(
                "order {} needs {} coefficients, got {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(BinaryForm::from_coeffs(pair, &coeffs, repr.convention))
    }
}

fn check_index(m: u32, n: u32, r: u32) -> Result<()> {
    if r > m.min(n) {
        return Err(Error::TransvectantIndex { m, n, r });
    }
    Ok(())
}

/// `(m-r)!(n-r)!/(m! n!)`
pub fn factor_f(m: u32, n: u32, r: u32) -> Result<Q> {
    check_index(m, n, r)?;
    Ok(Q::new(
        factorial(m - r) * factorial(n - r),
        factorial(m) * factorial(n),
    ))
}

/// `binom(m,r) binom(n,r) / binom(m+n-r+1, r)`
pub fn factor_g(m: u32, n: u32, r: u32) -> Result<Q> {
    check_index(m, n, r)?;
    Ok(Q::new(
        binomial(m, r) * binomial(n, r),
        binomial(m + n - r + 1, r),
    ))
}

/// `f * g = (m+n-2r+1)! / ((m+n-r+1)! r!)`
pub fn factor_h(m: u32, n: u32, r: u32) -> Result<Q> {
    check_index(m, n, r)?;
    Ok(Q::new(
        factorial(m + n - 2 * r + 1),
        factorial(m + n - r + 1) * factorial(r),
    ))
}

fn scratch_pair(avoid: VarPair) -> VarPair {
    if avoid == VarPair::Y {
        VarPair::X
    } else {
        VarPair::Y
    }
}

/// `(A, B)_r = f(m,n;r) [Omega^r A(x) B(y)]_{y -> x}`.
pub fn transvect(a: &BinaryForm, b: &BinaryForm, r: u32) -> Result<BinaryForm> {
    a.same_pair(b)?;
    let (m, n) = (a.order, b.order);
    check_index(m, n, r)?;
    let x = a.pair;
    let y = scratch_pair(x);
    let joint = a.form.try_mul(&b.on_pair(y).form)?;
    let out = project(&joint, x, y, r)?;
    Ok(BinaryForm {
        pair: x,
        order: m + n - 2 * r,
        form: out,
    })
}

/// The derivative formula, kept as an independent check of `transvect`.
pub fn transvect_direct(a: &BinaryForm, b: &BinaryForm, r: u32) -> Result<BinaryForm> {
    a.same_pair(b)?;
    let (m, n) = (a.order, b.order);
    check_index(m, n, r)?;
    let ac = a.coeffs(Convention::Monomial);
    let bc = b.coeffs(Convention::Monomial);
    // d^(k1+k2)/dx1^k1 dx2^k2 of a dense form, as dense coefficients
    let deriv = |c: &[Q], order: u32, k1: u32, k2: u32| -> Vec<Q> {
        let out_order = order - k1 - k2;
        let mut out = vec![Q::zero(); out_order as usize + 1];
        for (l, cl) in c.iter().enumerate() {
            let l = l as u32;
            let (e1, e2) = (order - l, l);
            if e1 < k1 || e2 < k2 {
                continue;
            }
            let w = falling(e1, k1) * falling(e2, k2);
            out[(e2 - k2) as usize] += cl * Q::from_integer(w);
        }
        out
    };
    let len = (m + n - 2 * r) as usize + 1;
    let mut total = vec![Q::zero(); len];
    for i in 0..=r {
        let da = deriv(&ac, m, r - i, i);
        let db = deriv(&bc, n, i, r - i);
        let w = Q::from_integer(binomial(r, i) * sign(i as i64));
        for (p, cp) in da.iter().enumerate() {
            if cp.is_zero() {
                continue;
            }
            for (q, cq) in db.iter().enumerate() {
                total[p + q] += &w * cp * cq;
            }
        }
    }
    let f = factor_f(m, n, r)?;
    let total: Vec<Q> = total.into_iter().map(|c| c * &f).collect();
    Ok(BinaryForm::from_coeffs(
        a.pair,
        &total,
        Convention::Monomial,
    ))
}

/// `pi_r(F) = f(m,n;r) [Omega_xy^r F]_{y -> x}` for `F` bihomogeneous of
/// orders `(m, n)` in `(x, y)`.
pub fn project(f: &MultiForm, x: VarPair, y: VarPair, r: u32) -> Result<MultiForm> {
    let m = f.homogeneous_order(x).unwrap_or(0);
    let n = f.homogeneous_order(y).unwrap_or(0);
    check_index(m, n, r)?;
    let scale = factor_f(m, n, r)?;
    Ok(f.omega_pow(x, y, r)?.substitute_pair(y, x)?.scale(&scale))
}

/// `iota_r(C) = g(m,n;r) (m-r)!/N! (xy)^r (y d/dx)^(n-r) C(x)` with
/// `N = m+n-2r`, a bihomogeneous form of orders `(m, n)` in `(x, y)`.
pub fn section_iota(c: &BinaryForm, m: u32, n: u32, r: u32) -> Result<MultiForm> {
    check_index(m, n, r)?;
    let big_n = m + n - 2 * r;
    if c.order != big_n {
        return Err(Error::OrderMismatch(format!(
            "section of index {r} for orders ({m}, {n}) needs order {big_n}, got {}",
            c.order
        )));
    }
    let (x, y) = (VarPair::X, VarPair::Y);
    let pol = c.on_pair(x).form.polarize(x, y, n - r)?;
    let scale = factor_g(m, n, r)? * Q::new(factorial(m - r), factorial(big_n));
    Ok(trace_element(r).try_mul(&pol)?.scale(&scale))
}

/// `(xy)^m`
pub fn trace_element(m: u32) -> MultiForm {
    bracket(VarPair::X, VarPair::Y)
        .and_then(|b| b.pow(m))
        .expect("bracket powers stay within exponent range")
}

/// `(AQ, BR)_1 - (AR, BQ)_1 == s(m+n+2s)/((m+s)(n+s)) AB (Q, R)_1`
/// for `A`, `B`, `Q`, `R` of orders `m`, `n`, `s`, `s`.
pub fn jacobian_exchange_check(
    a: &BinaryForm,
    b: &BinaryForm,
    qf: &BinaryForm,
    rf: &BinaryForm,
) -> Result<bool> {
    let (m, n, s) = (a.order, b.order, qf.order);
    if rf.order != s {
        return Err(Error::OrderMismatch(format!(
            "Q and R must share an order, got {s} and {}",
            rf.order
        )));
    }
    let lhs =
        transvect(&a.mul(qf)?, &b.mul(rf)?, 1)?.sub(&transvect(&a.mul(rf)?, &b.mul(qf)?, 1)?)?;
    if s == 0 {
        return Ok(lhs.is_zero());
    }
    let k = Q::new(
        ((s * (m + n + 2 * s)) as i64).into(),
        (((m + s) * (n + s)) as i64).into(),
    );
    let rhs = a.mul(b)?.mul(&transvect(qf, rf, 1)?)?.scale(&k);
    Ok(lhs == rhs)
}
