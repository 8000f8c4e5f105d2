//! Wigner 3-j, 6-j and 9-j symbols as exact quadratic surds.
//!
//! The coupling maps are realised with the same symbolic calculus as the
//! transvectants: coupling spins `j1, j2` to `j` is a bracket power times
//! two polarizations, and decoupling is a power of Omega followed by a pair
//! substitution. The 6-j and 9-j symbols are the scalars by which the
//! corresponding recoupling endomorphisms act, read off on `z1^(2J)`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{bracket, Exps, MultiForm, VarPair};
use crate::rational::{
    binomial, factorial, factorial_i, fmt_q, sign, squarefree_split, PrimeExponents, Q,
};
use crate::syzygy::LatticePoint;
use crate::transvectant::factor_h;

/// A nonnegative half-integer, stored as twice its value.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub u32);

impl HalfInt {
    pub fn from_twice(t: u32) -> Self {
        HalfInt(t)
    }

    pub fn int(k: u32) -> Self {
        HalfInt(2 * k)
    }

    pub fn twice(self) -> u32 {
        self.0
    }
}

fn fmt_twice(t: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if t % 2 == 0 {
        write!(f, "{}", t / 2)
    } else {
        write!(f, "{t}/2")
    }
}

fn parse_twice(s: &str) -> Result<i64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
    match s.split_once('/') {
        Some((n, "2")) => n.trim().parse::<i64>().map_err(|_| bad()),
        Some(_) => Err(bad()),
        None => s.parse::<i64>().map(|k| 2 * k).map_err(|_| bad()),
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_twice(self.0 as i64, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = parse_twice(s)?;
        u32::try_from(t)
            .map(HalfInt)
            .map_err(|_| Error::Parse(format!("negative spin {s:?}")))
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A signed half-integer projection quantum number, stored as twice its value.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Projection(pub i32);

impl Projection {
    pub fn twice(self) -> i32 {
        self.0
    }

    /// Whether `m` lies in `{-j, -j+1, ..., j}`.
    pub fn fits(self, j: HalfInt) -> bool {
        self.0.unsigned_abs() <= j.0 && (self.0 - j.0 as i32) % 2 == 0
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_twice(self.0 as i64, f)
    }
}

impl FromStr for Projection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = parse_twice(s)?;
        i32::try_from(t)
            .map(Projection)
            .map_err(|_| Error::Parse(format!("out of range {s:?}")))
    }
}

impl Neg for Projection {
    type Output = Projection;
    fn neg(self) -> Projection {
        Projection(-self.0)
    }
}

/// Exact value `coeff * sqrt(radicand)` with a squarefree radicand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    coeff: Q,
    radicand: BigInt,
}

impl QuadraticSurd {
    pub fn zero() -> Self {
        QuadraticSurd {
            coeff: Q::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn rational(q: Q) -> Self {
        QuadraticSurd {
            coeff: q,
            radicand: BigInt::one(),
        }
    }

    /// `coeff * sqrt(radicand)` for any nonnegative integer radicand.
    pub fn new(coeff: Q, radicand: BigInt) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::SquareRoot(radicand.to_string()));
        }
        let (sq, rad) = squarefree_split(radicand.magnitude())?;
        let coeff = coeff * Q::from_integer(BigInt::from_biguint(Sign::Plus, sq));
        Ok(Self::normalized(
            coeff,
            BigInt::from_biguint(Sign::Plus, rad),
        ))
    }

    /// `sqrt(x)` for a nonnegative rational.
    pub fn sqrt(x: &Q) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::SquareRoot(fmt_q(x)));
        }
        Self::new(
            Q::new(BigInt::one(), x.denom().clone()),
            x.numer() * x.denom(),
        )
    }

    /// `factor * sqrt(pe)`
    pub fn from_prime_exponents(factor: Q, pe: &PrimeExponents) -> Self {
        let (root, rad) = pe.sqrt_parts();
        Self::normalized(factor * root, rad)
    }

    fn normalized(coeff: Q, radicand: BigInt) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            QuadraticSurd { coeff, radicand }
        }
    }

    pub fn coeff(&self) -> &Q {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.radicand.is_one().then(|| self.coeff.clone())
    }

    /// The exact square, always rational.
    pub fn square(&self) -> Q {
        &self.coeff * &self.coeff * Q::from_integer(self.radicand.clone())
    }

    pub fn scale(&self, q: &Q) -> Self {
        Self::normalized(&self.coeff * q, self.radicand.clone())
    }

    /// Sum of two surds; only defined when the radicands agree.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.radicand != other.radicand {
            return Err(Error::UnlikeRadicands(
                self.radicand.to_string(),
                other.radicand.to_string(),
            ));
        }
        Ok(Self::normalized(
            &self.coeff + &other.coeff,
            self.radicand.clone(),
        ))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.coeff.to_f64().unwrap_or(f64::NAN) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl Mul for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn mul(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        // both radicands squarefree: s1 s2 = g^2 (s1/g)(s2/g) with coprime cofactors
        let g = self.radicand.gcd(&rhs.radicand);
        let rad = (&self.radicand / &g) * (&rhs.radicand / &g);
        QuadraticSurd::normalized(&self.coeff * &rhs.coeff * Q::from_integer(g), rad)
    }
}

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        QuadraticSurd::normalized(-&self.coeff, self.radicand.clone())
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", fmt_q(&self.coeff))
        } else {
            write!(f, "{} * sqrt({})", fmt_q(&self.coeff), self.radicand)
        }
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Coupling defects `(j1+j2-j, j2+j-j1, j+j1-j2)`, when all are integers
/// and nonnegative.
fn defects(j1: HalfInt, j2: HalfInt, j: HalfInt) -> Option<[u32; 3]> {
    let (a, b, c) = (j1.0 as i64, j2.0 as i64, j.0 as i64);
    let d = [a + b - c, b + c - a, c + a - b];
    if d.iter().all(|&x| x >= 0 && x % 2 == 0) {
        Some([(d[0] / 2) as u32, (d[1] / 2) as u32, (d[2] / 2) as u32])
    } else {
        None
    }
}

pub fn is_triad(j1: HalfInt, j2: HalfInt, j: HalfInt) -> bool {
    defects(j1, j2, j).is_some()
}

pub fn is_stretched(j1: HalfInt, j2: HalfInt, j: HalfInt) -> bool {
    defects(j1, j2, j).is_some_and(|d| d.contains(&0))
}

fn triad(j1: HalfInt, j2: HalfInt, j: HalfInt) -> Result<[u32; 3]> {
    defects(j1, j2, j).ok_or_else(|| Error::NotTriad(j1.to_string(), j2.to_string(), j.to_string()))
}

/// `sum j` for half-integers whose sum is known to be an integer.
fn half_sum(parts: &[i64]) -> i64 {
    let t: i64 = parts.iter().sum();
    debug_assert!(t % 2 == 0, "half-integer sum {t}/2 is not an integer");
    t / 2
}

/// `c^2` for the isometric coupling of `j1 (x) j2 -> j`.
pub fn coupling_constant_squared(j1: HalfInt, j2: HalfInt, j: HalfInt) -> Result<Q> {
    let [d0, d1, d2] = triad(j1, j2, j)?;
    let num = factorial(j1.0) * factorial(j2.0) * factorial(j.0 + 1);
    let total = half_sum(&[j1.0 as i64, j2.0 as i64, j.0 as i64]) as u32;
    let den = factorial(total + 1) * factorial(d0) * factorial(d2) * factorial(d1);
    Ok(Q::new(num, den))
}

/// `(xy)^(j1+j2-j) (x d/dz)^(j+j1-j2) (y d/dz)^(j+j2-j1) F(z) / (2j)!`, the
/// coupling map without its constant.
pub fn iota_raw(
    f: &MultiForm,
    z: VarPair,
    x: VarPair,
    y: VarPair,
    j1: HalfInt,
    j2: HalfInt,
    j: HalfInt,
) -> Result<MultiForm> {
    let [d0, d1, d2] = triad(j1, j2, j)?;
    let pol = f.polarize(z, x, d2)?.polarize(z, y, d1)?;
    Ok(bracket(x, y)?
        .pow(d0)?
        .try_mul(&pol)?
        .scale(&Q::new(BigInt::one(), factorial(j.0))))
}

/// `(j+j1-j2)!(j+j2-j1)!/((2j1)!(2j2)!) [Omega_xy^(j1+j2-j) B]_{x,y -> z}`,
/// the decoupling map without its constant.
pub fn pi_raw(
    b: &MultiForm,
    x: VarPair,
    y: VarPair,
    z: VarPair,
    j1: HalfInt,
    j2: HalfInt,
    j: HalfInt,
) -> Result<MultiForm> {
    let [d0, d1, d2] = triad(j1, j2, j)?;
    let scale = Q::new(
        factorial(d2) * factorial(d1),
        factorial(j1.0) * factorial(j2.0),
    );
    Ok(b.omega_pow(x, y, d0)?
        .substitute_pair(x, z)?
        .substitute_pair(y, z)?
        .scale(&scale))
}

/// The invariant pairing in which `e_(j,m)` is orthonormal: monomial
/// coefficients paired with weight `1/binom(2j, k)` in each pair.
pub fn inner_product(f: &MultiForm, g: &MultiForm, spins: &[(VarPair, HalfInt)]) -> Q {
    let mut acc = Q::zero();
    for (e, c) in f.terms() {
        let d = g.coeff(e);
        if d.is_zero() {
            continue;
        }
        let mut w = BigInt::one();
        for (pair, j) in spins {
            w *= binomial(j.0, e[2 * pair.index() + 1] as u32);
        }
        acc += c * d / Q::from_integer(w);
    }
    acc
}

fn check_projection(m: Projection, j: HalfInt) -> Result<()> {
    if !m.fits(j) {
        return Err(Error::InvalidProjection(format!("m = {m} for j = {j}")));
    }
    Ok(())
}

fn basis_exps(j: HalfInt, m: Projection) -> (u32, u32) {
    let (tj, tm) = (j.0 as i32, m.0);
    (((tj - tm) / 2) as u32, ((tj + tm) / 2) as u32)
}

/// `<e_(j1,m1) (x) e_(j2,m2) | iota(e_(j,m))>`
pub fn coupling_coefficient(
    j1: HalfInt,
    j2: HalfInt,
    j: HalfInt,
    m1: Projection,
    m2: Projection,
    m: Projection,
) -> Result<QuadraticSurd> {
    triad(j1, j2, j)?;
    check_projection(m1, j1)?;
    check_projection(m2, j2)?;
    check_projection(m, j)?;
    if m1.0 + m2.0 != m.0 {
        return Ok(QuadraticSurd::zero());
    }
    use VarPair::{X, Y, Z};
    let (a, b) = basis_exps(j, m);
    let f = MultiForm::monomial(&[(Z, [a, b])], Q::one())?;
    let g = iota_raw(&f, Z, X, Y, j1, j2, j)?;
    let (a1, b1) = basis_exps(j1, m1);
    let (a2, b2) = basis_exps(j2, m2);
    let mut e: Exps = [0; 16];
    e[0] = a1 as u8;
    e[1] = b1 as u8;
    e[2] = a2 as u8;
    e[3] = b2 as u8;
    let coeff = g.coeff(&e);
    let phase =
        sign(((j1.0 as i32 + m1.0) / 2 + (j2.0 as i32 + m2.0) / 2 + (j.0 as i32 + m.0) / 2) as i64);
    // sqrt(c^2 binom(2j, j-m) / (binom(2j1, j1-m1) binom(2j2, j2-m2)))
    let mut pe = PrimeExponents::new();
    let [d0, d1, d2] = triad(j1, j2, j)?;
    let total = half_sum(&[j1.0 as i64, j2.0 as i64, j.0 as i64]);
    pe.factorial(j1.0 as i64, 1)?
        .factorial(j2.0 as i64, 1)?
        .factorial(j.0 as i64 + 1, 1)?
        .factorial(total + 1, -1)?
        .factorial(d0 as i64, -1)?
        .factorial(d1 as i64, -1)?
        .factorial(d2 as i64, -1)?;
    for (jj, (x, y), s) in [(j, (a, b), 1i64), (j1, (a1, b1), -1), (j2, (a2, b2), -1)] {
        pe.factorial(jj.0 as i64, s)?
            .factorial(x as i64, -s)?
            .factorial(y as i64, -s)?;
    }
    Ok(QuadraticSurd::from_prime_exponents(
        coeff * Q::from_integer(phase.into()),
        &pe,
    ))
}

/// Wigner 3-j symbol.
pub fn threej(
    j1: HalfInt,
    j2: HalfInt,
    j: HalfInt,
    m1: Projection,
    m2: Projection,
    m: Projection,
) -> Result<QuadraticSurd> {
    let c = coupling_coefficient(j1, j2, j, m1, m2, -m)?;
    let phase = sign(((j1.0 as i64) - (j2.0 as i64) - (m.0 as i64)) / 2);
    let inv = QuadraticSurd::sqrt(&Q::new(BigInt::one(), BigInt::from(j.0 + 1)))?;
    Ok((&c * &inv).scale(&Q::from_integer(phase.into())))
}

fn scalar_of(out: &MultiForm, f: &MultiForm, what: &str) -> Result<Q> {
    if out.is_zero() {
        return Ok(Q::zero());
    }
    out.ratio_to(f).ok_or_else(|| {
        Error::ChainInconsistent(format!(
            "{what}: result is not a multiple of the input form"
        ))
    })
}

fn fact_exps(pe: &mut PrimeExponents, args: &[i64], power: i64) -> Result<()> {
    for &a in args {
        pe.factorial(a, power)?;
    }
    Ok(())
}

/// Wigner 6-j symbol `{j1 j2 j12; j3 J j23}` via the recoupling chain.
pub fn sixj(js: [HalfInt; 6]) -> Result<QuadraticSurd> {
    let [j1, j2, j12, j3, big_j, j23] = js;
    for (a, b, c) in [
        (j1, j2, j12),
        (j2, j3, j23),
        (j12, j3, big_j),
        (j1, j23, big_j),
    ] {
        triad(a, b, c)?;
    }
    use VarPair::{U, V, W, X, Y, Z};
    let t = |h: HalfInt| h.0 as i64;
    let e = |parts: &[i64]| half_sum(parts) as u32;
    let f = MultiForm::monomial(&[(Z, [big_j.0, 0])], Q::one())?;
    let s1 = bracket(U, Y)?
        .pow(e(&[t(j1), t(j23), -t(big_j)]))?
        .try_mul(&f.polarize(Z, U, e(&[t(j1), t(big_j), -t(j23)]))?.polarize(
            Z,
            Y,
            e(&[t(j23), t(big_j), -t(j1)]),
        )?)?;
    let s2 = bracket(V, W)?.pow(e(&[t(j2), t(j3), -t(j23)]))?.try_mul(
        &s1.polarize(Y, V, e(&[t(j2), t(j23), -t(j3)]))?.polarize(
            Y,
            W,
            e(&[t(j3), t(j23), -t(j2)]),
        )?,
    )?;
    let s3 = s2
        .omega_pow(U, V, e(&[t(j1), t(j2), -t(j12)]))?
        .substitute_pair(U, X)?
        .substitute_pair(V, X)?;
    let out = s3
        .omega_pow(X, W, e(&[t(j12), t(j3), -t(big_j)]))?
        .substitute_pair(X, Z)?
        .substitute_pair(W, Z)?;
    let alpha = scalar_of(&out, &f, "6-j chain")?;

    let mut pe = PrimeExponents::new();
    let h = |parts: &[i64]| half_sum(parts);
    fact_exps(
        &mut pe,
        &[
            h(&[t(j1), t(j12), -t(j2)]),
            h(&[t(j2), t(j12), -t(j1)]),
            h(&[t(j12), t(big_j), -t(j3)]),
            h(&[t(j3), t(big_j), -t(j12)]),
        ],
        1,
    )?;
    fact_exps(
        &mut pe,
        &[
            h(&[t(j1), t(j23), -t(big_j)]),
            h(&[t(j1), t(big_j), -t(j23)]),
            h(&[t(j23), t(big_j), -t(j1)]),
            h(&[t(j2), t(j3), -t(j23)]),
            h(&[t(j2), t(j23), -t(j3)]),
            h(&[t(j3), t(j23), -t(j2)]),
            h(&[t(j1), t(j2), -t(j12)]),
            h(&[t(j12), t(j3), -t(big_j)]),
            h(&[t(j1), t(j2), t(j12), 2]),
            h(&[t(j2), t(j3), t(j23), 2]),
            h(&[t(j1), t(j23), t(big_j), 2]),
            h(&[t(j12), t(j3), t(big_j), 2]),
        ],
        -1,
    )?;
    let phase = sign(h(&[t(j1), t(j2), t(j3), t(big_j)]));
    let factor = alpha * Q::from_integer(BigInt::from(phase * (t(big_j) + 1)));
    Ok(QuadraticSurd::from_prime_exponents(factor, &pe))
}

/// A 3x3 array of spins whose rows and columns are triads.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct NineJArray {
    rows: [[HalfInt; 3]; 3],
}

impl NineJArray {
    pub fn new(rows: [[HalfInt; 3]; 3]) -> Result<Self> {
        for k in 0..3 {
            triad(rows[k][0], rows[k][1], rows[k][2])?;
            triad(rows[0][k], rows[1][k], rows[2][k])?;
        }
        Ok(NineJArray { rows })
    }

    pub fn from_twice(t: [[u32; 3]; 3]) -> Result<Self> {
        Self::new(t.map(|row| row.map(HalfInt)))
    }

    pub fn rows(&self) -> &[[HalfInt; 3]; 3] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> HalfInt {
        self.rows[r][c]
    }

    pub fn transpose(&self) -> Self {
        let r = &self.rows;
        NineJArray {
            rows: [
                [r[0][0], r[1][0], r[2][0]],
                [r[0][1], r[1][1], r[2][1]],
                [r[0][2], r[1][2], r[2][2]],
            ],
        }
    }

    /// Row `k` of the result is row `perm[k]` of `self`.
    pub fn permute_rows(&self, perm: [usize; 3]) -> Self {
        NineJArray {
            rows: perm.map(|k| self.rows[k]),
        }
    }

    pub fn permute_cols(&self, perm: [usize; 3]) -> Self {
        NineJArray {
            rows: self.rows.map(|row| perm.map(|k| row[k])),
        }
    }

    /// Sum of all nine entries (always an integer).
    pub fn total(&self) -> i64 {
        half_sum(
            &self
                .rows
                .iter()
                .flatten()
                .map(|h| h.0 as i64)
                .collect::<Vec<_>>(),
        )
    }

    fn twice(&self) -> [[i64; 3]; 3] {
        self.rows.map(|row| row.map(|h| h.0 as i64))
    }
}

impl fmt::Display for NineJArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("{} {} {}", r[0], r[1], r[2]))
            .collect();
        f.write_str(&rows.join("; "))
    }
}

impl FromStr for NineJArray {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<HalfInt>> = s
            .split(';')
            .map(|r| {
                r.split_whitespace()
                    .map(str::parse)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
            return Err(Error::Parse(format!(
                "expected three rows of three spins: {s:?}"
            )));
        }
        NineJArray::new([
            [rows[0][0], rows[0][1], rows[0][2]],
            [rows[1][0], rows[1][1], rows[1][2]],
            [rows[2][0], rows[2][1], rows[2][2]],
        ])
    }
}

impl Serialize for NineJArray {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The scalar of the 9-j recoupling chain on `z1^(2J)`, before the
/// normalizing prefactor.
pub fn ninej_chain_scalar(arr: &NineJArray) -> Result<Q> {
    use VarPair::{P, Q as Qp, U, V, X, Y, Z};
    let t = arr.twice();
    let [[j1, j2, j12], [j3, j4, j34], [j13, j24, big_j]] = t;
    let e = |parts: &[i64]| half_sum(parts) as u32;
    let f = MultiForm::monomial(&[(Z, [big_j as u32, 0])], Q::one())?;
    let s1 = bracket(X, Y)?.pow(e(&[j13, j24, -big_j]))?.try_mul(
        &f.polarize(Z, X, e(&[j13, big_j, -j24]))?
            .polarize(Z, Y, e(&[j24, big_j, -j13]))?,
    )?;
    let s2 = bracket(P, Qp)?.pow(e(&[j1, j3, -j13]))?.try_mul(
        &s1.polarize(X, P, e(&[j1, j13, -j3]))?
            .polarize(X, Qp, e(&[j13, j3, -j1]))?,
    )?;
    let s3 = bracket(U, V)?.pow(e(&[j2, j4, -j24]))?.try_mul(
        &s2.polarize(Y, U, e(&[j2, j24, -j4]))?
            .polarize(Y, V, e(&[j4, j24, -j2]))?,
    )?;
    let s4 = s3
        .omega_pow(P, U, e(&[j1, j2, -j12]))?
        .substitute_pair(P, X)?
        .substitute_pair(U, X)?
        .omega_pow(Qp, V, e(&[j3, j4, -j34]))?
        .substitute_pair(Qp, Y)?
        .substitute_pair(V, Y)?;
    let out = s4
        .omega_pow(X, Y, e(&[j12, j34, -big_j]))?
        .substitute_pair(X, Z)?
        .substitute_pair(Y, Z)?;
    scalar_of(&out, &f, "9-j chain")
}

/// `Q1`, `Q2`, `Q3` of the 9-j normalization, as prime exponents of
/// `Q1 / (Q2 Q3)`.
fn ninej_normalization(arr: &NineJArray) -> Result<PrimeExponents> {
    let [[j1, j2, j12], [j3, j4, j34], [j13, j24, big_j]] = arr.twice();
    let h = |parts: &[i64]| half_sum(parts);
    let mut pe = PrimeExponents::new();
    fact_exps(
        &mut pe,
        &[
            h(&[j1, j12, -j2]),
            h(&[j2, j12, -j1]),
            h(&[j3, j34, -j4]),
            h(&[j4, j34, -j3]),
            h(&[j12, big_j, -j34]),
            h(&[j34, big_j, -j12]),
        ],
        1,
    )?;
    fact_exps(
        &mut pe,
        &[
            h(&[j1, j2, j12, 2]),
            h(&[j3, j4, j34, 2]),
            h(&[j13, j24, big_j, 2]),
            h(&[j1, j3, j13, 2]),
            h(&[j2, j4, j24, 2]),
            h(&[j12, j34, big_j, 2]),
            h(&[j1, j2, -j12]),
            h(&[j3, j4, -j34]),
            h(&[j13, j24, -big_j]),
            h(&[j13, big_j, -j24]),
            h(&[j24, big_j, -j13]),
            h(&[j1, j3, -j13]),
            h(&[j1, j13, -j3]),
            h(&[j3, j13, -j1]),
            h(&[j2, j4, -j24]),
            h(&[j2, j24, -j4]),
            h(&[j4, j24, -j2]),
            h(&[j12, j34, -big_j]),
        ],
        -1,
    )?;
    Ok(pe)
}

/// 9-j symbol through the recoupling chain.
pub fn ninej_operator(arr: &NineJArray) -> Result<QuadraticSurd> {
    let beta = ninej_chain_scalar(arr)?;
    let big_j = arr.get(2, 2).0 as i64;
    let pe = ninej_normalization(arr)?;
    Ok(QuadraticSurd::from_prime_exponents(
        beta * Q::from_integer((big_j + 1).into()),
        &pe,
    ))
}

/// `[a,b,c]^2 = (a-b+c)!(a+b-c)!(a+b+c+1)!/(-a+b+c)!`, accumulated into `pe`
/// with the given power.
fn bracket_square(pe: &mut PrimeExponents, a: i64, b: i64, c: i64, power: i64) -> Result<()> {
    let h = |parts: &[i64]| half_sum(parts);
    pe.factorial(h(&[a, -b, c]), power)?
        .factorial(h(&[a, b, -c]), power)?
        .factorial(h(&[a, b, c, 2]), power)?
        .factorial(h(&[-a, b, c]), -power)?;
    Ok(())
}

/// 9-j symbol through the triple-sum formula, with the number of summands.
pub fn ninej_triple_sum_with_terms(arr: &NineJArray) -> Result<(QuadraticSurd, usize)> {
    let [[j1, j2, j12], [j3, j4, j34], [j13, j24, big_j]] = arr.twice();
    let h = |parts: &[i64]| half_sum(parts);
    let x1 = h(&[2 * j34]);
    let x2 = h(&[j3, j4, -j34]);
    let x3 = h(&[j12, -j34, big_j]);
    let x4 = h(&[-j3, j4, j34]);
    let x5 = h(&[j12, j34, -big_j]);
    let y1 = h(&[-j2, j4, j24]);
    let y2 = h(&[j13, j24, -big_j]);
    let y3 = h(&[2 * j24, 2]);
    let y4 = h(&[j2, j4, -j24]);
    let y5 = h(&[j13, -j24, big_j]);
    let z1 = h(&[2 * j1]);
    let z2 = h(&[-j1, j2, j12]);
    let z3 = h(&[j1, j3, j13, 2]);
    let z4 = h(&[j1, j3, -j13]);
    let z5 = h(&[j1, -j2, j12]);
    let p1 = h(&[j1, j3, -j24, big_j]);
    let p2 = h(&[-j2, j3, -j34, j24]);
    let p3 = h(&[-j1, j2, -j34, big_j]);

    let mut sum = Q::zero();
    let mut terms = 0;
    for x in 0..=x4.min(x5) {
        for y in (-p2 - x).max(0)..=y4.min(y5) {
            for z in (-p3 - x).max(0)..=z4.min(z5).min(p1 - y) {
                let mut num = BigInt::one();
                for a in [
                    x1 - x,
                    x2 + x,
                    x3 + x,
                    y1 + y,
                    y2 + y,
                    z1 - z,
                    z2 + z,
                    p1 - y - z,
                ] {
                    num *= factorial_i(a)?;
                }
                let mut den = BigInt::one();
                for a in [
                    x,
                    y,
                    z,
                    x4 - x,
                    x5 - x,
                    y3 + y,
                    y4 - y,
                    y5 - y,
                    z3 - z,
                    z4 - z,
                    z5 - z,
                    p2 + x + y,
                    p3 + x + z,
                ] {
                    den *= factorial_i(a)?;
                }
                let term = Q::new(num, den);
                if sign(x + y + z) > 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
                terms += 1;
            }
        }
    }
    let mut pe = PrimeExponents::new();
    bracket_square(&mut pe, j3, j1, j13, 1)?;
    bracket_square(&mut pe, j2, j4, j24, 1)?;
    bracket_square(&mut pe, big_j, j13, j24, 1)?;
    bracket_square(&mut pe, j3, j4, j34, -1)?;
    bracket_square(&mut pe, j2, j1, j12, -1)?;
    bracket_square(&mut pe, big_j, j12, j34, -1)?;
    let factor = sum * Q::from_integer(sign(x5).into());
    Ok((QuadraticSurd::from_prime_exponents(factor, &pe), terms))
}

pub fn ninej_triple_sum(arr: &NineJArray) -> Result<QuadraticSurd> {
    ninej_triple_sum_with_terms(arr).map(|(v, _)| v)
}

const PERMS: [([usize; 3], bool); 6] = [
    ([0, 1, 2], true),
    ([1, 2, 0], true),
    ([2, 0, 1], true),
    ([1, 0, 2], false),
    ([0, 2, 1], false),
    ([2, 1, 0], false),
];

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub transpose_ok: bool,
    pub permutations_checked: usize,
    pub permutation_failures: Vec<String>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.transpose_ok && self.permutation_failures.is_empty()
    }
}

/// Transpose invariance and the sign law under all 36 row/column
/// permutation pairs, evaluated with the triple sum.
pub fn ninej_symmetry_check(arr: &NineJArray) -> Result<SymmetryReport> {
    let base = ninej_triple_sum(arr)?;
    let transpose_ok = ninej_triple_sum(&arr.transpose())? == base;
    let odd_total = arr.total() % 2 != 0;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (rp, r_even) in PERMS {
        for (cp, c_even) in PERMS {
            let permuted = arr.permute_rows(rp).permute_cols(cp);
            let flips = odd_total && (r_even != c_even);
            let expect = if flips { -&base } else { base.clone() };
            checked += 1;
            if ninej_triple_sum(&permuted)? != expect {
                failures.push(format!("rows {rp:?}, cols {cp:?}"));
            }
        }
    }
    Ok(SymmetryReport {
        transpose_ok,
        permutations_checked: checked,
        permutation_failures: failures,
    })
}

/// The array whose triple sum yields the syzygy coefficient `kappa`.
fn kappa_arrays(
    m: u32,
    n: u32,
    r: u32,
    i: u32,
    j: u32,
    p: LatticePoint,
) -> Result<(NineJArray, NineJArray)> {
    let b = NineJArray::from_twice([
        [m, n, m + n - 2 * i],
        [m, n, m + n - 2 * j],
        [
            2 * (m - 2 * p.a - 1),
            2 * (n - 2 * p.b - 1),
            2 * (m + n - r),
        ],
    ])?;
    // rows 2 <-> 3, columns 1 <-> 3, transpose: two odd permutations, sign +1
    let b_prime = b
        .permute_rows([0, 2, 1])
        .permute_cols([2, 1, 0])
        .transpose();
    Ok((b, b_prime))
}

/// `kappa` expressed through a 9-j symbol, with the number of triple-sum terms.
pub fn kappa_via_ninej_with_terms(
    m: u32,
    n: u32,
    r: u32,
    i: u32,
    j: u32,
    p: LatticePoint,
) -> Result<(Q, usize)> {
    if r < 2 {
        return Err(Error::WeightTooSmall);
    }
    if r > m.min(n) {
        return Err(Error::TransvectantIndex { m, n, r });
    }
    if i + j > r || 2 * (p.a + p.b + 1) > r {
        return Err(Error::Inadmissible(format!(
            "(i, j) = ({i}, {j}), p = {p} for r = {r}"
        )));
    }
    let (b, b_prime) = kappa_arrays(m, n, r, i, j, p)?;
    let (value, terms) = ninej_triple_sum_with_terms(&b_prime)?;
    let k = factor_h(m, n, i)?
        * factor_h(m, n, j)?
        * factor_h(m + n - 2 * i, m + n - 2 * j, r - i - j)?
        / Q::from_integer(
            factorial(2 * (m + n - r))
                * factorial(2 * m - 4 * p.a - 2)
                * factorial(2 * n - 4 * p.b - 2),
        );
    let big_j = b.get(2, 2).0 as i64;
    let inv_norm = QuadraticSurd::from_prime_exponents(
        k / Q::from_integer((big_j + 1).into()),
        &ninej_normalization(&b)?.inverse(),
    );
    let out = &inv_norm * &value;
    let q = out
        .as_rational()
        .ok_or_else(|| Error::NormalizationMismatch(format!("irrational result {out}")))?;
    Ok((q, terms))
}

pub fn kappa_via_ninej(m: u32, n: u32, r: u32, i: u32, j: u32, p: LatticePoint) -> Result<Q> {
    kappa_via_ninej_with_terms(m, n, r, i, j, p).map(|(k, _)| k)
}

/// Every valid array with all entries at most `max_twice / 2`.
pub fn all_arrays(max_twice: u32) -> Vec<NineJArray> {
    let triads: Vec<[u32; 3]> = (0..=max_twice)
        .flat_map(|a| (0..=max_twice).flat_map(move |b| (0..=max_twice).map(move |c| [a, b, c])))
        .filter(|&[a, b, c]| is_triad(HalfInt(a), HalfInt(b), HalfInt(c)))
        .collect();
    let mut out = Vec::new();
    for r1 in &triads {
        for r2 in &triads {
            for r3 in &triads {
                if (0..3).all(|k| is_triad(HalfInt(r1[k]), HalfInt(r2[k]), HalfInt(r3[k]))) {
                    out.push(NineJArray {
                        rows: [*r1, *r2, *r3].map(|r| r.map(HalfInt)),
                    });
                }
            }
        }
    }
    out
}

/// A uniformly chosen valid array with entries at most `max_twice / 2`,
/// by rejection sampling.
pub fn random_array<R: rand::Rng + ?Sized>(rng: &mut R, max_twice: u32) -> NineJArray {
    loop {
        let mut t = [[0u32; 3]; 3];
        for row in t.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.gen_range(0..=max_twice);
            }
        }
        if let Ok(a) = NineJArray::from_twice(t) {
            return a;
        }
    }
}
