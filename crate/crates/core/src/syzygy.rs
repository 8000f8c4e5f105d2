//! Quadratic syzygies between the transvectants `u_r = (A, B)_r` of two
//! generic binary forms of orders `m` and `n`.
//!
//! A weight-`r` syzygy is a table of rationals `t_ij` (`i <= j`,
//! `i + j <= r`) with `sum t_ij (u_i, u_j)_(r-i-j) = 0` identically. The
//! space of such tables has a basis indexed by the lattice points
//! `(a, b)` with `2(a+b+1) <= r`; `kappa` gives the coefficients of each
//! basis syzygy by a triple sum, `kappa_oracle` recomputes them by chasing
//! the defining composite of equivariant maps on a test form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{bracket, MultiForm, VarPair};
use crate::random::stream_rng;
use crate::rational::{binomial, factorial, factorial_i, first_primes, fmt_q, sign, Q};
use crate::transvectant::{factor_h, transvect, BinaryForm, Convention};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePoint {
    pub a: u32,
    pub b: u32,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        LatticePoint { a, b }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

fn check_weight(m: u32, n: u32, r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::WeightTooSmall);
    }
    if r > m.min(n) {
        return Err(Error::TransvectantIndex { m, n, r });
    }
    Ok(())
}

/// Lattice points `(a, b)` with `2(a+b+1) <= r`, ordered by `a` then `b`.
pub fn pi_set(m: u32, n: u32, r: u32) -> Result<Vec<LatticePoint>> {
    check_weight(m, n, r)?;
    let half = r / 2;
    let mut out = Vec::new();
    for a in 0..half {
        for b in 0..half - a {
            out.push(LatticePoint { a, b });
        }
    }
    Ok(out)
}

fn check_admissible(m: u32, n: u32, r: u32, i: u32, j: u32, p: LatticePoint) -> Result<()> {
    check_weight(m, n, r)?;
    if i + j > r {
        return Err(Error::Inadmissible(format!(
            "i + j = {} exceeds r = {r}",
            i + j
        )));
    }
    if 2 * (p.a + p.b + 1) > r {
        return Err(Error::Inadmissible(format!(
            "lattice point {p} outside the set for r = {r}"
        )));
    }
    Ok(())
}

fn fact_product(args: &[i64]) -> Result<BigInt> {
    let mut acc = BigInt::one();
    for &k in args {
        acc *= factorial_i(k)?;
    }
    Ok(acc)
}

/// The basis syzygy coefficient together with the size of its summation set.
pub fn kappa_with_terms(
    m: u32,
    n: u32,
    r: u32,
    i: u32,
    j: u32,
    p: LatticePoint,
) -> Result<(Q, usize)> {
    check_admissible(m, n, r, i, j, p)?;
    let (m, n, r, i, j, a, b) = (
        m as i64, n as i64, r as i64, i as i64, j as i64, p.a as i64, p.b as i64,
    );
    let n1 = fact_product(&[
        m + n - 2 * i + 1,
        m + n - 2 * j + 1,
        2 * m - 2 * a,
        2 * a + 1,
        m - 2 * a - 1,
        n - 2 * b - 1,
        2 * m - r - 2 * a + 2 * b,
        2 * n - r + 2 * a - 2 * b,
        2 * m + 2 * n - r - 2 * a - 2 * b - 1,
    ])?;
    let n2 = fact_product(&[
        j,
        m - i,
        m - j,
        m + n - j + 1,
        m + n - r + i - j,
        m + n - r - i + j,
        2 * m + 2 * n - r - i - j + 1,
        2 * m - 4 * a - 2,
        2 * n - 4 * b - 2,
    ])?;
    let mut gamma = Q::zero();
    let mut terms = 0;
    for x in 0..=(n - 2 * b - 1).min(n - j) {
        let y_lo = (n - r + 2 * a + 1 - x).max(0);
        let y_hi = (2 * a + 1).min(2 * n - r + 2 * a - 2 * b);
        for y in y_lo..=y_hi {
            let z_lo = (r - m - i - x).max(0);
            let z_hi = (n - i).min(r - i - j).min(n - i + 2 * a + 1 - y);
            for z in z_lo..=z_hi {
                let t1 = fact_product(&[
                    n - x,
                    m - j + x,
                    n - 2 * b - 1 + x,
                    m - 2 * a - 1 + y,
                    r - 2 * a - 2 * b - 2 + y,
                    m + n - 2 * i - z,
                    m + n - r + i - j + z,
                    n - i + 2 * a + 1 - y - z,
                ])?;
                let t2 = fact_product(&[
                    x,
                    y,
                    z,
                    n - j - x,
                    n - 2 * b - 1 - x,
                    2 * a + 1 - y,
                    2 * m - 4 * a - 1 + y,
                    2 * n - r + 2 * a - 2 * b - y,
                    n - i - z,
                    r - i - j - z,
                    m + n - i + 1 - z,
                    m - r + i + x + z,
                    -n + r - 2 * a - 1 + x + y,
                ])?;
                let term = Q::new(t1, t2);
                if sign(x + y + z) > 0 {
                    gamma += term;
                } else {
                    gamma -= term;
                }
                terms += 1;
            }
        }
    }
    if sign(n - j) < 0 {
        gamma = -gamma;
    }
    Ok((Q::new(n1, n2) * gamma, terms))
}

pub fn kappa(m: u32, n: u32, r: u32, i: u32, j: u32, p: LatticePoint) -> Result<Q> {
    kappa_with_terms(m, n, r, i, j, p).map(|(k, _)| k)
}

/// Recomputes `kappa` by applying the composite of equivariant maps to
/// `z1^(2(m+n-r))` and reading off the scalar. The part of the chain that
/// does not depend on `(i, j)` is computed once.
pub struct KappaOracle {
    m: u32,
    n: u32,
    r: u32,
    point: LatticePoint,
    lifted: MultiForm,
    test_form: MultiForm,
}

impl KappaOracle {
    pub fn new(m: u32, n: u32, r: u32, p: LatticePoint) -> Result<Self> {
        check_admissible(m, n, r, 0, 0, p)?;
        use VarPair::{P, Q as Qp, U, V, X, Y, Z};
        let (a, b) = (p.a, p.b);
        let big = 2 * (m + n - r);
        let test_form = MultiForm::monomial(&[(Z, [big, 0])], Q::one())?;

        // S_2(m+n-r) -> S_(2m-2-4a) (x) S_(2n-2-4b)
        let pol = test_form
            .polarize(Z, X, 2 * m - 2 * a + 2 * b - r)?
            .polarize(Z, Y, 2 * n + 2 * a - 2 * b - r)?;
        let theta1 = bracket(X, Y)?
            .pow(r - 2 * a - 2 * b - 2)?
            .try_mul(&pol)?
            .scale(&Q::new(BigInt::one(), factorial(big)));

        // -> S_2(S_(m-1)) (x) S_2(S_(n-1))
        let ma = m - 2 * a - 1;
        let nb = n - 2 * b - 1;
        let pol = theta1
            .polarize(X, P, ma)?
            .polarize(X, Qp, ma)?
            .polarize(Y, U, nb)?
            .polarize(Y, V, nb)?;
        let brackets = bracket(P, Qp)?
            .pow(2 * a)?
            .try_mul(&bracket(U, V)?.pow(2 * b)?)?;
        let theta2 = brackets.try_mul(&pol)?.scale(&Q::new(
            BigInt::one(),
            factorial(2 * m - 4 * a - 2) * factorial(2 * n - 4 * b - 2),
        ));

        // -> wedge^2 S_m (x) wedge^2 S_n inside S_2(S_m (x) S_n)
        let lifted = bracket(P, Qp)?.try_mul(&bracket(U, V)?)?.try_mul(&theta2)?;
        Ok(KappaOracle {
            m,
            n,
            r,
            point: p,
            lifted,
            test_form,
        })
    }

    fn finish(&self, after_pu: &MultiForm, i: u32, j: u32) -> Result<Q> {
        use VarPair::{P, Q as Qp, U, V, X, Y, Z};
        let (m, n, r) = (self.m, self.n, self.r);
        let scale = factor_h(m, n, i)? * factor_h(m, n, j)?;
        let biform = after_pu
            .omega_pow(Qp, V, j)?
            .scale(&scale)
            .substitute_pair(P, X)?
            .substitute_pair(U, X)?
            .substitute_pair(Qp, Y)?
            .substitute_pair(V, Y)?;
        let k = r - i - j;
        let out = biform
            .omega_pow(X, Y, k)?
            .scale(&factor_h(m + n - 2 * i, m + n - 2 * j, k)?)
            .substitute_pair(X, Z)?
            .substitute_pair(Y, Z)?;
        if out.is_zero() {
            return Ok(Q::zero());
        }
        out.ratio_to(&self.test_form).ok_or_else(|| {
            Error::ChainInconsistent(format!(
                "(m,n,r) = ({m},{n},{r}), (i,j) = ({i},{j}), p = {}: image not a multiple of the test form",
                self.point
            ))
        })
    }

    pub fn kappa(&self, i: u32, j: u32) -> Result<Q> {
        check_admissible(self.m, self.n, self.r, i, j, self.point)?;
        let after_pu = self.lifted.omega_pow(VarPair::P, VarPair::U, i)?;
        self.finish(&after_pu, i, j)
    }

    /// Every `kappa_ij` with `i + j <= r`, keyed by `(i, j)`.
    pub fn all(&self) -> Result<BTreeMap<(u32, u32), Q>> {
        let mut out = BTreeMap::new();
        for i in 0..=self.r {
            let after_pu = self.lifted.omega_pow(VarPair::P, VarPair::U, i)?;
            for j in 0..=self.r - i {
                out.insert((i, j), self.finish(&after_pu, i, j)?);
            }
        }
        Ok(out)
    }
}

pub fn kappa_oracle(m: u32, n: u32, r: u32, i: u32, j: u32, p: LatticePoint) -> Result<Q> {
    KappaOracle::new(m, n, r, p)?.kappa(i, j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableSource {
    Point(LatticePoint),
    ClosedForm,
    Custom,
}

/// Coefficients `t_ij` (`i <= j`, `i + j <= r`) of a candidate syzygy
/// `sum t_ij (u_i, u_j)_(r-i-j) = 0`. Missing entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyTable {
    m: u32,
    n: u32,
    r: u32,
    source: TableSource,
    coeffs: BTreeMap<(u32, u32), Q>,
}

impl SyzygyTable {
    pub fn new(
        m: u32,
        n: u32,
        r: u32,
        source: TableSource,
        coeffs: BTreeMap<(u32, u32), Q>,
    ) -> Result<Self> {
        check_weight(m, n, r)?;
        for &(i, j) in coeffs.keys() {
            if i > j || i + j > r {
                return Err(Error::Inadmissible(format!(
                    "table entry ({i}, {j}) for r = {r}"
                )));
            }
        }
        let coeffs: BTreeMap<_, _> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if coeffs.is_empty() {
            return Err(Error::ZeroTable);
        }
        Ok(SyzygyTable {
            m,
            n,
            r,
            source,
            coeffs,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn source(&self) -> &TableSource {
        &self.source
    }

    pub fn get(&self, i: u32, j: u32) -> Q {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.coeffs.iter()
    }

    /// All admissible index pairs, zero entries included.
    pub fn index_pairs(&self) -> Vec<(u32, u32)> {
        index_pairs(self.r)
    }

    pub fn scaled(&self, c: &Q) -> Result<SyzygyTable> {
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect();
        SyzygyTable::new(self.m, self.n, self.r, self.source.clone(), coeffs)
    }

    /// Rescales so that entry `(i, j)` equals `value`; returns the table and
    /// the factor applied.
    pub fn anchored(&self, i: u32, j: u32, value: &Q) -> Result<(SyzygyTable, Q)> {
        let c = self.get(i, j);
        if c.is_zero() {
            return Err(Error::Anchor(format!(
                "entry ({i}, {j}) is zero and cannot be an anchor"
            )));
        }
        let k = value / c;
        Ok((self.scaled(&k)?, k))
    }

    pub fn with_entry(&self, i: u32, j: u32, value: Q) -> Result<SyzygyTable> {
        let mut coeffs = self.coeffs.clone();
        coeffs.insert((i, j), value);
        SyzygyTable::new(self.m, self.n, self.r, TableSource::Custom, coeffs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = index_pairs(self.r)
            .into_iter()
            .map(|(i, j)| serde_json::json!({"i": i, "j": j, "coeff": fmt_q(&self.get(i, j))}))
            .collect();
        serde_json::json!({
            "m": self.m,
            "n": self.n,
            "r": self.r,
            "source": self.source,
            "coeffs": entries,
        })
    }
}

impl fmt::Display for SyzygyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j), c) in &self.coeffs {
            let k = self.r - i - j;
            let sep = if first {
                if c.is_negative() {
                    "-"
                } else {
                    ""
                }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            first = false;
            write!(f, "{sep}{} (u{i},u{j})_{k}", fmt_q(&c.abs()))?;
        }
        f.write_str(" = 0")
    }
}

fn index_pairs(r: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in 0..=r {
        for j in i..=r - i {
            out.push((i, j));
        }
    }
    out
}

fn vartheta_from(
    kappas: impl Fn(u32, u32) -> Result<Q>,
    r: u32,
) -> Result<BTreeMap<(u32, u32), Q>> {
    let mut coeffs = BTreeMap::new();
    for (i, j) in index_pairs(r) {
        let k = kappas(i, j)?;
        coeffs.insert(
            (i, j),
            if i == j {
                k
            } else {
                k * Q::from_integer(2.into())
            },
        );
    }
    Ok(coeffs)
}

/// The basis syzygy attached to `p`, from the triple-sum formula.
pub fn vartheta_table(m: u32, n: u32, r: u32, p: LatticePoint) -> Result<SyzygyTable> {
    let coeffs = vartheta_from(|i, j| kappa(m, n, r, i, j, p), r)?;
    SyzygyTable::new(m, n, r, TableSource::Point(p), coeffs)
}

/// The same table computed through `KappaOracle`.
pub fn oracle_table(m: u32, n: u32, r: u32, p: LatticePoint) -> Result<SyzygyTable> {
    let all = KappaOracle::new(m, n, r, p)?.all()?;
    let coeffs = vartheta_from(|i, j| Ok(all[&(i, j)].clone()), r)?;
    SyzygyTable::new(m, n, r, TableSource::Point(p), coeffs)
}

fn beta(m: u32, n: u32, r: u32, i: u32, j: u32) -> Q {
    let num = factorial(m)
        * factorial(n)
        * factorial(r)
        * factorial(m + n - 2 * i + 1)
        * factorial(m + n - 2 * j + 1);
    let den = factorial(i)
        * factorial(j)
        * factorial(n - i)
        * factorial(m - j)
        * factorial(r - i - j)
        * factorial(m + n - i + 1)
        * factorial(m + n - j + 1);
    Q::new(num, den)
}

/// The distinguished syzygy with coefficients in closed form.
pub fn closed_form_table(m: u32, n: u32, r: u32) -> Result<SyzygyTable> {
    check_weight(m, n, r)?;
    let mut coeffs = BTreeMap::new();
    for (i, j) in index_pairs(r) {
        let delta = u32::from(i == 0 && j == r) + u32::from(i == r && j == 0);
        let mut t = Q::from_integer(delta.into()) - beta(m, n, r, i, j);
        let cross = beta(m, n, r, j, i);
        if sign((r + i + j) as i64) > 0 {
            t -= cross;
        } else {
            t += cross;
        }
        coeffs.insert(
            (i, j),
            if i == j {
                t
            } else {
                t * Q::from_integer(2.into())
            },
        );
    }
    SyzygyTable::new(m, n, r, TableSource::ClosedForm, coeffs)
}

/// `binom(m+n-r+1, r) > binom(m, r) + binom(n, r)`
pub fn coin_inequality(m: u32, n: u32, r: u32) -> bool {
    binomial(m + n - r + 1, r) > binomial(m, r) + binomial(n, r)
}

/// `binom(w1,2) binom(w2,2) + binom(w1+1,2) binom(w2+1,2) == binom(w1 w2 + 1, 2)`
pub fn dimension_identity(w1: u32, w2: u32) -> bool {
    binomial(w1, 2) * binomial(w2, 2) + binomial(w1 + 1, 2) * binomial(w2 + 1, 2)
        == binomial(w1 * w2 + 1, 2)
}

/// Coefficients of `u0 u2 = z1 (u0,u0)_2 + z2 u1^2 + z3 (u0,u1)_1`.
pub fn u2_coefficients(m: u32, n: u32) -> Result<[Q; 3]> {
    if m < 2 || n < 2 {
        return Err(Error::OrderTooSmall);
    }
    let (m, n) = (m as i64, n as i64);
    let q = |a: i64, b: i64| Q::new(a.into(), b.into());
    let s = m + n;
    Ok([
        q((s - 2) * (s - 1), 2 * (m - 1) * (n - 1)),
        q(m * n * (s - 2) * (s - 1), (m - 1) * (n - 1) * s * s),
        q((s - 1) * (s - 2) * (m - n), (m - 1) * (n - 1) * s),
    ])
}

/// Coefficients of `u0 u3 = w1 (u0,u1)_2 + w2 (u0,u2)_1 + w3 u1 u2`.
pub fn u3_coefficients(m: u32, n: u32) -> Result<[Q; 3]> {
    if m < 3 || n < 3 {
        return Err(Error::OrderTooSmall);
    }
    let (m, n) = (m as i64, n as i64);
    let q = |a: i64, b: i64| Q::new(a.into(), b.into());
    let s = m + n;
    Ok([
        q((s - 4) * (s - 3), (m - 2) * (n - 2)),
        q((s - 3) * (s - 4) * (m - n), (m - 2) * (n - 2) * (s - 2)),
        q(m * n * (s - 4) * (s - 3), (m - 2) * (n - 2) * s * (s - 1)),
    ])
}

pub fn u2_u3_formulas(m: u32, n: u32) -> Result<([Q; 3], [Q; 3])> {
    Ok((u2_coefficients(m, n)?, u3_coefficients(m, n)?))
}

/// The transvectants `u_i = (A, B)_i` of a fixed pair together with a memo
/// of `(u_i, u_j)_k`, shared between every table checked on the pair.
pub struct TransvectantCache {
    a: BinaryForm,
    b: BinaryForm,
    u: Vec<BinaryForm>,
    memo: HashMap<(u32, u32, u32), BinaryForm>,
}

impl TransvectantCache {
    pub fn new(a: BinaryForm, b: BinaryForm) -> Result<Self> {
        let u = (0..=a.order().min(b.order()))
            .map(|r| transvect(&a, &b, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(TransvectantCache {
            a,
            b,
            u,
            memo: HashMap::new(),
        })
    }

    /// Random pair drawn from stream `trial` of `seed`.
    pub fn random(m: u32, n: u32, seed: u64, trial: u64) -> Result<Self> {
        let mut rng = stream_rng(seed, trial);
        let a = BinaryForm::random(&mut rng, VarPair::X, m);
        let b = BinaryForm::random(&mut rng, VarPair::X, n);
        Self::new(a, b)
    }

    /// Deterministic pair whose coefficients are distinct primes.
    pub fn primes(m: u32, n: u32) -> Result<Self> {
        let ps = first_primes((m + n + 2) as usize);
        let q = |p: &u32| Q::from_integer((*p).into());
        let ac: Vec<Q> = ps[..=m as usize].iter().map(q).collect();
        let bc: Vec<Q> = ps[m as usize + 1..].iter().map(q).collect();
        Self::new(
            BinaryForm::from_coeffs(VarPair::X, &ac, Convention::Monomial),
            BinaryForm::from_coeffs(VarPair::X, &bc, Convention::Monomial),
        )
    }

    pub fn a(&self) -> &BinaryForm {
        &self.a
    }

    pub fn b(&self) -> &BinaryForm {
        &self.b
    }

    pub fn u(&self, i: u32) -> &BinaryForm {
        &self.u[i as usize]
    }

    pub fn transvectant(&mut self, i: u32, j: u32, k: u32) -> Result<&BinaryForm> {
        if !self.memo.contains_key(&(i, j, k)) {
            let t = transvect(&self.u[i as usize], &self.u[j as usize], k)?;
            self.memo.insert((i, j, k), t);
        }
        Ok(&self.memo[&(i, j, k)])
    }

    /// `sum t_ij (u_i, u_j)_(r-i-j)`
    pub fn residual(&mut self, table: &SyzygyTable) -> Result<BinaryForm> {
        if (table.m, table.n) != (self.a.order(), self.b.order()) {
            return Err(Error::OrderMismatch(format!(
                "table for orders ({}, {}) checked against forms of orders ({}, {})",
                table.m,
                table.n,
                self.a.order(),
                self.b.order()
            )));
        }
        let mut acc = BinaryForm::zero(VarPair::X, 2 * (table.m + table.n - table.r));
        for (&(i, j), c) in &table.coeffs {
            let t = self.transvectant(i, j, table.r - i - j)?;
            acc = acc.add(&t.scale(c))?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub struct TrialFailure {
    pub trial: u64,
    pub residual: BinaryForm,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub passed: bool,
    pub trials: u64,
    pub failures: Vec<TrialFailure>,
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed,
            "trials": self.trials,
            "failures": self.failures.iter().map(|f| serde_json::json!({
                "trial": f.trial,
                "residual": f.residual.to_json(Convention::Monomial),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks every table on `trials` random pairs; tables sharing `(m, n)`
/// share the transvectant memo within a trial.
pub fn verify_tables(tables: &[SyzygyTable], trials: u64, seed: u64) -> Result<Vec<Verdict>> {
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "at least one trial is needed".into(),
        ));
    }
    let mut verdicts: Vec<Verdict> = tables
        .iter()
        .map(|_| Verdict {
            passed: true,
            trials,
            failures: Vec::new(),
        })
        .collect();
    let mut groups: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
    for (k, t) in tables.iter().enumerate() {
        groups.entry((t.m, t.n)).or_default().push(k);
    }
    for ((m, n), members) in groups {
        for trial in 0..trials {
            let mut cache = TransvectantCache::random(m, n, seed, trial)?;
            for &k in &members {
                let residual = cache.residual(&tables[k])?;
                if !residual.is_zero() {
                    verdicts[k].passed = false;
                    verdicts[k].failures.push(TrialFailure { trial, residual });
                }
            }
        }
    }
    Ok(verdicts)
}

pub fn verify_table(table: &SyzygyTable, trials: u64, seed: u64) -> Result<Verdict> {
    Ok(verify_tables(std::slice::from_ref(table), trials, seed)?.remove(0))
}

/// Deterministic check with distinct prime coefficients.
pub fn verify_table_symbolic(table: &SyzygyTable) -> Result<Verdict> {
    let residual = TransvectantCache::primes(table.m, table.n)?.residual(table)?;
    let passed = residual.is_zero();
    let failures = if passed {
        Vec::new()
    } else {
        vec![TrialFailure { trial: 0, residual }]
    };
    Ok(Verdict {
        passed,
        trials: 1,
        failures,
    })
}

/// Recovers `u_2, ..., u_min(m,n)` from `u_0 = AB` and `u_1 = (A, B)_1`
/// using the basis syzygy at the origin of each weight.
pub fn reconstruct(u0: &BinaryForm, u1: &BinaryForm, m: u32, n: u32) -> Result<Vec<BinaryForm>> {
    if u0.order() != m + n || (m.min(n) >= 1 && u1.order() != m + n - 2) {
        return Err(Error::OrderMismatch(format!(
            "u0, u1 must have orders {} and {}, got {} and {}",
            m + n,
            (m + n).saturating_sub(2),
            u0.order(),
            u1.order()
        )));
    }
    if u0.pair() != u1.pair() {
        return Err(Error::OrderMismatch(
            "u0 and u1 live in different pairs".into(),
        ));
    }
    if u0.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut u = vec![u0.clone(), u1.clone()];
    let mut out = Vec::new();
    for r in 2..=m.min(n) {
        let table = vartheta_table(m, n, r, LatticePoint::ORIGIN)?;
        let lead = table.get(0, r);
        let mut rhs = BinaryForm::zero(u0.pair(), m + n - 2 * r);
        let mut acc = BinaryForm::zero(u0.pair(), 2 * (m + n - r));
        for (&(i, j), c) in table.entries() {
            if (i, j) == (0, r) {
                continue;
            }
            acc = acc.add(&transvect(&u[i as usize], &u[j as usize], r - i - j)?.scale(c))?;
        }
        let quotient = acc.form().exact_divide(u0.form()).map_err(|e| match e {
            Error::InexactDivision => Error::NotTransvectants,
            e => e,
        })?;
        if !quotient.is_zero() {
            rhs = BinaryForm::new(quotient, u0.pair())?;
        }
        let ur = rhs.scale(&(-lead.recip()));
        u.push(ur.clone());
        out.push(ur);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub checks: Vec<(&'static str, bool)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| *name)
            .collect()
    }
}

fn quadratic_pair(a: &BinaryForm, b: &BinaryForm) -> Result<[BinaryForm; 3]> {
    if a.order() != 2 || b.order() != 2 {
        return Err(Error::OrderMismatch("both forms must be quadratic".into()));
    }
    Ok([
        transvect(a, b, 0)?,
        transvect(a, b, 1)?,
        transvect(a, b, 2)?,
    ])
}

fn combo(terms: &[(Q, BinaryForm)]) -> Result<bool> {
    let (c0, f0) = &terms[0];
    let mut acc = f0.scale(c0);
    for (c, f) in &terms[1..] {
        acc = acc.add(&f.scale(c))?;
    }
    Ok(acc.is_zero())
}

/// The quadratic, cubic and quartic relations among `u_0, u_1, u_2` for two
/// quadratics.
pub fn segre22_identity_check(a: &BinaryForm, b: &BinaryForm) -> Result<IdentityReport> {
    let [u0, u1, u2] = quadratic_pair(a, b)?;
    let q = |n: i64, d: i64| Q::new(n.into(), d.into());
    let one = || q(1, 1);
    let tv = transvect;
    let h = tv(&u0, &u0, 2)?;
    let i4 = tv(&u0, &u0, 4)?;
    let u1u1_2 = tv(&u1, &u1, 2)?;
    let u0u1_2 = tv(&u0, &u1, 2)?;
    let u0u1_1 = tv(&u0, &u1, 1)?;
    let u1sq = u1.mul(&u1)?;
    let u0sq = u0.mul(&u0)?;

    let mut checks = Vec::new();
    checks.push((
        "u0 u2 = 3/2 u1^2 + 3 (u0,u0)_2",
        combo(&[
            (one(), u0.mul(&u2)?),
            (q(-3, 2), u1sq.clone()),
            (q(-3, 1), h.clone()),
        ])?,
    ));
    checks.push((
        "u1 u2 = -3 (u0,u1)_2",
        combo(&[(one(), u1.mul(&u2)?), (q(3, 1), u0u1_2.clone())])?,
    ));
    checks.push((
        "u2^2 = 3/2 (u0,u0)_4 - 3/2 (u1,u1)_2",
        combo(&[
            (one(), u2.mul(&u2)?),
            (q(-3, 2), i4.clone()),
            (q(3, 2), u1u1_2.clone()),
        ])?,
    ));
    let bracketed = u1sq.add(&h.scale(&q(2, 1)))?;
    checks.push((
        "u1 [u1^2 + 2 (u0,u0)_2] + 2 u0 (u0,u1)_2 = 0",
        combo(&[(one(), u1.mul(&bracketed)?), (q(2, 1), u0.mul(&u0u1_2)?)])?,
    ));
    checks.push((
        "[u1^2 + 2 (u0,u0)_2]^2 - 2/3 u0^2 [(u0,u0)_4 - (u1,u1)_2] = 0",
        combo(&[
            (one(), bracketed.mul(&bracketed)?),
            (q(-2, 3), u0sq.mul(&i4.sub(&u1u1_2)?)?),
        ])?,
    ));
    checks.push((
        "(u1^2,u1)_2 + 2 ((u0,u1)_2,u0)_2 + 2 ((u0,u0)_2,u1)_2 = 0",
        combo(&[
            (one(), tv(&u1sq, &u1, 2)?),
            (q(2, 1), tv(&u0u1_2, &u0, 2)?),
            (q(2, 1), tv(&h, &u1, 2)?),
        ])?,
    ));
    checks.push(("((u0,u1)_1,u1)_2 = 0", tv(&u0u1_1, &u1, 2)?.is_zero()));
    checks.push((
        "u1^3 + 9 u0 (u0,u1)_2 - 7 (u0^2,u1)_2 = 0",
        combo(&[
            (one(), u1sq.mul(&u1)?),
            (q(9, 1), u0.mul(&u0u1_2)?),
            (q(-7, 1), tv(&u0sq, &u1, 2)?),
        ])?,
    ));
    checks.push((
        "3 u1 (u0,u1)_1 + 7 (u0^2,u0)_3 = 0",
        combo(&[(q(3, 1), u1.mul(&u0u1_1)?), (q(7, 1), tv(&u0sq, &u0, 3)?)])?,
    ));
    Ok(IdentityReport { checks })
}

/// `u1^6 + 6H u1^4 + (12H^2 - 2I u0^2) u1^2 - 16T^2 = 0` with
/// `H = (u0,u0)_2`, `I = (u0,u0)_4`, `T = (u0,H)_1`.
pub fn minimal_equation_u1_check(a: &BinaryForm, b: &BinaryForm) -> Result<bool> {
    let [u0, u1, _] = quadratic_pair(a, b)?;
    let q = |n: i64| Q::from_integer(n.into());
    let h = transvect(&u0, &u0, 2)?;
    let i4 = transvect(&u0, &u0, 4)?;
    let t = transvect(&u0, &h, 1)?;
    let u1sq = u1.mul(&u1)?;
    let u1_4 = u1sq.mul(&u1sq)?;
    let u1_6 = u1_4.mul(&u1sq)?;
    let phi48 = h
        .mul(&h)?
        .scale(&q(12))
        .sub(&i4.mul(&u0)?.mul(&u0)?.scale(&q(2)))?;
    combo(&[
        (q(1), u1_6),
        (q(6), h.mul(&u1_4)?),
        (q(1), phi48.mul(&u1sq)?),
        (q(-16), t.mul(&t)?),
    ])
}
