//! Sparse multihomogeneous polynomials over the rationals in up to eight
//! variable pairs, with the Omega, polarization, bracket and pair
//! substitution operators everything else is assembled from.
//!
//! A monomial is a fixed array of sixteen exponents, two per pair, in the
//! registry order x, y, z, p, q, u, v, w. Lexicographic order on that array
//! is the term order, which makes iteration and serialization canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{binomial, falling, fmt_q, parse_q, Q};

pub const PAIR_COUNT: usize = 8;
pub type Exps = [u8; 2 * PAIR_COUNT];

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarPair {
    X,
    Y,
    Z,
    P,
    Q,
    U,
    V,
    W,
}

impl VarPair {
    pub const ALL: [VarPair; PAIR_COUNT] = [
        VarPair::X,
        VarPair::Y,
        VarPair::Z,
        VarPair::P,
        VarPair::Q,
        VarPair::U,
        VarPair::V,
        VarPair::W,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z", "p", "q", "u", "v", "w"][self.index()]
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::Parse(format!("inactive pair {name:?}: not in the registry")))
    }

    fn slots(self) -> (usize, usize) {
        (2 * self.index(), 2 * self.index() + 1)
    }
}

impl fmt::Display for VarPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PairOrder {
    Homogeneous(u32),
    /// Only produced transiently by sums of forms of different orders.
    Inhomogeneous,
}

impl PairOrder {
    fn plus(self, other: PairOrder) -> PairOrder {
        match (self, other) {
            (PairOrder::Homogeneous(a), PairOrder::Homogeneous(b)) => PairOrder::Homogeneous(a + b),
            _ => PairOrder::Inhomogeneous,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiForm {
    orders: [Option<PairOrder>; PAIR_COUNT],
    terms: BTreeMap<Exps, Q>,
}

fn accumulate(terms: &mut BTreeMap<Exps, Q>, exps: Exps, c: Q) {
    if c.is_zero() {
        return;
    }
    match terms.entry(exps) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn degree(exps: &Exps, pair: VarPair) -> u32 {
    let (a, b) = pair.slots();
    exps[a] as u32 + exps[b] as u32
}

/// Integer weight of the closed-form expansion of a power of Omega, kept in
/// i128 while it fits.
fn omega_weight(k: u32, t: u32, a1: u32, a2: u32, b1: u32, b2: u32) -> BigInt {
    let small = || -> Option<i128> {
        let mut w: i128 = 1;
        for (base, n) in [(a1, t), (b2, t), (a2, k - t), (b1, k - t)] {
            for s in 0..n {
                w = w.checked_mul((base - s) as i128)?;
            }
        }
        let c = binomial(k, t);
        let c: i128 = c.try_into().ok()?;
        w.checked_mul(c)
    };
    let w = match small() {
        Some(w) => BigInt::from(w),
        None => {
            binomial(k, t)
                * falling(a1, t)
                * falling(b2, t)
                * falling(a2, k - t)
                * falling(b1, k - t)
        }
    };
    if (k - t) % 2 == 1 {
        -w
    } else {
        w
    }
}

impl MultiForm {
    pub fn zero() -> Self {
        MultiForm {
            orders: [None; PAIR_COUNT],
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Q) -> Self {
        let mut f = Self::zero();
        accumulate(&mut f.terms, [0; 2 * PAIR_COUNT], c);
        f
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// `c * prod pair_1^e1 pair_2^e2` with every listed pair declared
    /// homogeneous of the monomial's degree.
    pub fn monomial(parts: &[(VarPair, [u32; 2])], c: Q) -> Result<Self> {
        let mut exps = [0u8; 2 * PAIR_COUNT];
        let mut orders = [None; PAIR_COUNT];
        for &(pair, [e1, e2]) in parts {
            if orders[pair.index()].is_some() {
                return Err(Error::OrderMismatch(format!("pair {pair} listed twice")));
            }
            let (a, b) = pair.slots();
            exps[a] = u8::try_from(e1).map_err(|_| Error::ExponentOverflow)?;
            exps[b] = u8::try_from(e2).map_err(|_| Error::ExponentOverflow)?;
            orders[pair.index()] = Some(PairOrder::Homogeneous(e1 + e2));
        }
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, exps, c);
        Ok(MultiForm { orders, terms })
    }

    /// `c1 * pair_1 + c2 * pair_2`.
    pub fn linear(pair: VarPair, c1: Q, c2: Q) -> Self {
        let mut f = MultiForm {
            orders: [None; PAIR_COUNT],
            terms: BTreeMap::new(),
        };
        f.orders[pair.index()] = Some(PairOrder::Homogeneous(1));
        let (a, b) = pair.slots();
        let mut e = [0u8; 2 * PAIR_COUNT];
        e[a] = 1;
        accumulate(&mut f.terms, e, c1);
        let mut e = [0u8; 2 * PAIR_COUNT];
        e[b] = 1;
        accumulate(&mut f.terms, e, c2);
        f
    }

    /// Builds a form from raw terms and validates the declared orders.
    pub fn from_terms(
        orders: &[(VarPair, PairOrder)],
        terms: impl IntoIterator<Item = (Exps, Q)>,
    ) -> Result<Self> {
        let mut f = Self::zero();
        for &(pair, ord) in orders {
            f.orders[pair.index()] = Some(ord);
        }
        for (e, c) in terms {
            accumulate(&mut f.terms, e, c);
        }
        f.check_orders()?;
        Ok(f)
    }

    pub fn check_orders(&self) -> Result<()> {
        for pair in VarPair::ALL {
            let declared = self.orders[pair.index()];
            for e in self.terms.keys() {
                let d = degree(e, pair);
                match declared {
                    Some(PairOrder::Homogeneous(k)) if k != d => {
                        return Err(Error::OrderMismatch(format!(
                            "term of degree {d} in {pair}, declared {k}"
                        )))
                    }
                    None if d != 0 => {
                        return Err(Error::OrderMismatch(format!(
                            "undeclared pair {pair} in use"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn checked(self) -> Result<Self> {
        self.check_orders()?;
        Ok(self)
    }

    pub fn order(&self, pair: VarPair) -> Option<PairOrder> {
        self.orders[pair.index()]
    }

    pub fn homogeneous_order(&self, pair: VarPair) -> Option<u32> {
        match self.orders[pair.index()] {
            Some(PairOrder::Homogeneous(k)) => Some(k),
            _ => None,
        }
    }

    pub fn active_pairs(&self) -> impl Iterator<Item = VarPair> + '_ {
        VarPair::ALL
            .into_iter()
            .filter(|p| self.orders[p.index()].is_some())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &Exps) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    /// The constant value, if the form has no variable terms.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some(c)` when `self = c * other` with `other` nonzero.
    pub fn ratio_to(&self, other: &MultiForm) -> Option<Q> {
        let (e, c) = other.terms.iter().next()?;
        let k = self.coeff(e) / c;
        let scaled = other.scale(&k);
        (scaled.terms == self.terms).then_some(k)
    }

    pub fn scale(&self, c: &Q) -> MultiForm {
        if c.is_zero() {
            return MultiForm {
                orders: self.orders,
                terms: BTreeMap::new(),
            };
        }
        MultiForm {
            orders: self.orders,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    fn combine(&self, other: &MultiForm, negate: bool) -> MultiForm {
        if other.is_zero() && other.orders.iter().all(Option::is_none) {
            return self.clone();
        }
        if self.is_zero() && self.orders.iter().all(Option::is_none) {
            return if negate { -other } else { other.clone() };
        }
        let mut orders = [None; PAIR_COUNT];
        for i in 0..PAIR_COUNT {
            orders[i] = match (self.orders[i], other.orders[i]) {
                (a, b) if a == b => a,
                (None, Some(PairOrder::Homogeneous(0)))
                | (Some(PairOrder::Homogeneous(0)), None) => Some(PairOrder::Homogeneous(0)),
                _ => Some(PairOrder::Inhomogeneous),
            };
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, *e, if negate { -c } else { c.clone() });
        }
        MultiForm { orders, terms }
    }

    fn product(&self, other: &MultiForm) -> Result<MultiForm> {
        let mut orders = [None; PAIR_COUNT];
        for i in 0..PAIR_COUNT {
            orders[i] = match (self.orders[i], other.orders[i]) {
                (None, b) => b,
                (a, None) => a,
                (Some(a), Some(b)) => Some(a.plus(b)),
            };
        }
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = [0u8; 2 * PAIR_COUNT];
                for k in 0..e.len() {
                    e[k] = ea[k].checked_add(eb[k]).ok_or(Error::ExponentOverflow)?;
                }
                accumulate(&mut terms, e, ca * cb);
            }
        }
        Ok(MultiForm { orders, terms })
    }

    pub fn try_mul(&self, other: &MultiForm) -> Result<MultiForm> {
        self.product(other)
    }

    pub fn pow(&self, k: u32) -> Result<MultiForm> {
        let mut acc = MultiForm::one();
        for pair in self.active_pairs() {
            acc.orders[pair.index()] = Some(PairOrder::Homogeneous(0));
        }
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.product(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base)?;
            }
        }
        Ok(acc)
    }

    /// Cayley's Omega operator on the pairs `a`, `b`.
    pub fn omega(&self, a: VarPair, b: VarPair) -> Result<MultiForm> {
        self.omega_pow(a, b, 1)
    }

    /// The k-th power of Omega, expanded in closed form: the two second-order
    /// pieces commute, so the power is a binomial sum.
    pub fn omega_pow(&self, a: VarPair, b: VarPair, k: u32) -> Result<MultiForm> {
        if a == b {
            return Err(Error::DegenerateOperator(a.name()));
        }
        if k == 0 {
            return Ok(self.clone());
        }
        let mut orders = self.orders;
        for pair in [a, b] {
            if let Some(PairOrder::Homogeneous(d)) = orders[pair.index()] {
                orders[pair.index()] = Some(PairOrder::Homogeneous(d.saturating_sub(k)));
            }
        }
        let (a1s, a2s) = a.slots();
        let (b1s, b2s) = b.slots();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (a1, a2, b1, b2) = (e[a1s] as u32, e[a2s] as u32, e[b1s] as u32, e[b2s] as u32);
            let lo = k.saturating_sub(a2.min(b1));
            let hi = k.min(a1).min(b2);
            for t in lo..=hi {
                let mut ne = *e;
                ne[a1s] -= t as u8;
                ne[b2s] -= t as u8;
                ne[a2s] -= (k - t) as u8;
                ne[b1s] -= (k - t) as u8;
                let w = omega_weight(k, t, a1, a2, b1, b2);
                accumulate(&mut terms, ne, c * Q::from_integer(w));
            }
        }
        MultiForm { orders, terms }.checked()
    }

    /// `(dst . d/d src)^l`. Exceeding the order of `src` gives zero.
    pub fn polarize(&self, src: VarPair, dst: VarPair, l: u32) -> Result<MultiForm> {
        if src == dst {
            return Err(Error::DegenerateOperator(src.name()));
        }
        if l == 0 {
            return Ok(self.clone());
        }
        let mut orders = self.orders;
        match orders[src.index()] {
            Some(PairOrder::Homogeneous(d)) => {
                if l > d {
                    return Ok(MultiForm {
                        orders,
                        terms: BTreeMap::new(),
                    });
                }
                orders[src.index()] = Some(PairOrder::Homogeneous(d - l));
            }
            Some(PairOrder::Inhomogeneous) => {}
            None => {
                return Ok(MultiForm {
                    orders,
                    terms: BTreeMap::new(),
                })
            }
        }
        orders[dst.index()] = Some(match orders[dst.index()] {
            None => PairOrder::Homogeneous(l),
            Some(o) => o.plus(PairOrder::Homogeneous(l)),
        });
        let (s1, s2) = src.slots();
        let (d1, d2) = dst.slots();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (a, b) = (e[s1] as u32, e[s2] as u32);
            let lo = l.saturating_sub(b);
            let hi = l.min(a);
            for t in lo..=hi {
                let mut ne = *e;
                ne[s1] -= t as u8;
                ne[s2] -= (l - t) as u8;
                ne[d1] = ne[d1].checked_add(t as u8).ok_or(Error::ExponentOverflow)?;
                ne[d2] = ne[d2]
                    .checked_add((l - t) as u8)
                    .ok_or(Error::ExponentOverflow)?;
                let w = binomial(l, t) * falling(a, t) * falling(b, l - t);
                accumulate(&mut terms, ne, c * Q::from_integer(w));
            }
        }
        MultiForm { orders, terms }.checked()
    }

    /// Replaces the components of `src` by those of `dst`.
    pub fn substitute_pair(&self, src: VarPair, dst: VarPair) -> Result<MultiForm> {
        if src == dst {
            return Ok(self.clone());
        }
        let mut orders = self.orders;
        let moved = orders[src.index()].take();
        orders[dst.index()] = match (orders[dst.index()], moved) {
            (a, None) => a,
            (None, b) => b,
            (Some(a), Some(b)) => Some(a.plus(b)),
        };
        let (s1, s2) = src.slots();
        let (d1, d2) = dst.slots();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne[d1] = ne[d1].checked_add(ne[s1]).ok_or(Error::ExponentOverflow)?;
            ne[d2] = ne[d2].checked_add(ne[s2]).ok_or(Error::ExponentOverflow)?;
            ne[s1] = 0;
            ne[s2] = 0;
            accumulate(&mut terms, ne, c.clone());
        }
        MultiForm { orders, terms }.checked()
    }

    /// Exchanges the roles of two pairs.
    pub fn swap_pairs(&self, a: VarPair, b: VarPair) -> MultiForm {
        let mut orders = self.orders;
        orders.swap(a.index(), b.index());
        let (a1, a2) = a.slots();
        let (b1, b2) = b.slots();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = *e;
                ne.swap(a1, b1);
                ne.swap(a2, b2);
                (ne, c.clone())
            })
            .collect();
        MultiForm { orders, terms }
    }

    /// Linear change of variables in one pair:
    /// `pair_1 -> g[0][0] pair_1 + g[0][1] pair_2`,
    /// `pair_2 -> g[1][0] pair_1 + g[1][1] pair_2`.
    pub fn linear_substitution(&self, pair: VarPair, g: &[[Q; 2]; 2]) -> Result<MultiForm> {
        let (s1, s2) = pair.slots();
        let first = MultiForm::linear(pair, g[0][0].clone(), g[0][1].clone());
        let second = MultiForm::linear(pair, g[1][0].clone(), g[1][1].clone());
        let mut out = MultiForm {
            orders: self.orders,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[s1] = 0;
            rest[s2] = 0;
            let image = first
                .pow(e[s1] as u32)?
                .product(&second.pow(e[s2] as u32)?)?;
            for (ie, ic) in image.terms {
                let mut ne = rest;
                ne[s1] = ie[s1];
                ne[s2] = ie[s2];
                accumulate(&mut out.terms, ne, c * ic);
            }
        }
        out.checked()
    }

    /// Evaluates at a rational point for every active pair.
    pub fn evaluate(&self, point: &[(VarPair, [Q; 2])]) -> Result<Q> {
        let mut values: [Option<&[Q; 2]>; PAIR_COUNT] = [None; PAIR_COUNT];
        for (pair, v) in point {
            values[pair.index()] = Some(v);
        }
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for pair in VarPair::ALL {
                let (a, b) = pair.slots();
                if e[a] == 0 && e[b] == 0 {
                    continue;
                }
                let v = values[pair.index()].ok_or(Error::InactivePair(pair.name()))?;
                t *= num_traits::pow(v[0].clone(), e[a] as usize);
                t *= num_traits::pow(v[1].clone(), e[b] as usize);
            }
            total += t;
        }
        Ok(total)
    }

    fn leading(&self) -> Option<(&Exps, &Q)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / g`; any remainder is an error.
    pub fn exact_divide(&self, g: &MultiForm) -> Result<MultiForm> {
        let (ge, gc) = g.leading().ok_or(Error::DivisionByZero)?;
        let mut orders = [None; PAIR_COUNT];
        for i in 0..PAIR_COUNT {
            orders[i] = match (self.orders[i], g.orders[i]) {
                (Some(PairOrder::Homogeneous(a)), Some(PairOrder::Homogeneous(b))) => {
                    if b > a {
                        return Err(Error::InexactDivision);
                    }
                    Some(PairOrder::Homogeneous(a - b))
                }
                (Some(PairOrder::Homogeneous(a)), None) => Some(PairOrder::Homogeneous(a)),
                (None, Some(PairOrder::Homogeneous(0))) | (None, None) => None,
                (None, Some(_)) => return Err(Error::InexactDivision),
                _ => Some(PairOrder::Inhomogeneous),
            };
        }
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back() {
            let mut qe = [0u8; 2 * PAIR_COUNT];
            for k in 0..qe.len() {
                qe[k] = re[k].checked_sub(ge[k]).ok_or(Error::InexactDivision)?;
            }
            let qc = rc / gc;
            for (e, c) in &g.terms {
                let mut ne = *e;
                for k in 0..ne.len() {
                    ne[k] += qe[k];
                }
                accumulate(&mut rem, ne, -(&qc * c));
            }
            accumulate(&mut quot, qe, qc);
        }
        MultiForm {
            orders,
            terms: quot,
        }
        .checked()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("forms always serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        MultiForm::deserialize(v).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `a_1 b_2 - a_2 b_1`.
pub fn bracket(a: VarPair, b: VarPair) -> Result<MultiForm> {
    if a == b {
        return Err(Error::DegenerateBracket(a.name()));
    }
    let one = Q::one();
    let p = MultiForm::monomial(&[(a, [1, 0]), (b, [0, 1])], one.clone())?;
    let m = MultiForm::monomial(&[(a, [0, 1]), (b, [1, 0])], -one)?;
    Ok(&p + &m)
}

impl Add for &MultiForm {
    type Output = MultiForm;
    fn add(self, rhs: &MultiForm) -> MultiForm {
        self.combine(rhs, false)
    }
}

impl Sub for &MultiForm {
    type Output = MultiForm;
    fn sub(self, rhs: &MultiForm) -> MultiForm {
        self.combine(rhs, true)
    }
}

impl Neg for &MultiForm {
    type Output = MultiForm;
    fn neg(self) -> MultiForm {
        MultiForm {
            orders: self.orders,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

/// Panics only on exponent overflow past 255 in a single variable.
impl Mul for &MultiForm {
    type Output = MultiForm;
    fn mul(self, rhs: &MultiForm) -> MultiForm {
        self.product(rhs).expect("exponent overflow in product")
    }
}

impl fmt::Display for MultiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for pair in VarPair::ALL {
                let (a, b) = pair.slots();
                for (slot, idx) in [(a, 1), (b, 2)] {
                    match e[slot] {
                        0 => {}
                        1 => factors.push(format!("{pair}{idx}")),
                        k => factors.push(format!("{pair}{idx}^{k}")),
                    }
                }
            }
            if factors.is_empty() || !mag.is_one() {
                write!(f, "{}", fmt_q(&mag))?;
                if !factors.is_empty() {
                    f.write_str("*")?;
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OrderRepr {
    Fixed(u32),
    Tag(String),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: BTreeMap<String, [u32; 2]>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    orders: BTreeMap<String, OrderRepr>,
    terms: Vec<TermRepr>,
}

impl Serialize for MultiForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut orders = BTreeMap::new();
        for pair in self.active_pairs() {
            let repr = match self.orders[pair.index()] {
                Some(PairOrder::Homogeneous(k)) => OrderRepr::Fixed(k),
                _ => OrderRepr::Tag("inhomogeneous".into()),
            };
            orders.insert(pair.name().to_string(), repr);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| TermRepr {
                exps: self
                    .active_pairs()
                    .map(|p| {
                        let (a, b) = p.slots();
                        (p.name().to_string(), [e[a] as u32, e[b] as u32])
                    })
                    .collect(),
                coeff: fmt_q(c),
            })
            .collect();
        FormRepr { orders, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FormRepr::deserialize(d)?;
        let mut orders = Vec::new();
        for (name, o) in &repr.orders {
            let pair = VarPair::from_name(name).map_err(D::Error::custom)?;
            let ord = match o {
                OrderRepr::Fixed(k) => PairOrder::Homogeneous(*k),
                OrderRepr::Tag(t) if t == "inhomogeneous" => PairOrder::Inhomogeneous,
                OrderRepr::Tag(t) => return Err(D::Error::custom(format!("bad order {t:?}"))),
            };
            orders.push((pair, ord));
        }
        let mut terms = Vec::new();
        for t in &repr.terms {
            let mut e = [0u8; 2 * PAIR_COUNT];
            for (name, [e1, e2]) in &t.exps {
                let pair = VarPair::from_name(name).map_err(D::Error::custom)?;
                let (a, b) = pair.slots();
                e[a] = u8::try_from(*e1).map_err(D::Error::custom)?;
                e[b] = u8::try_from(*e2).map_err(D::Error::custom)?;
            }
            terms.push((e, parse_q(&t.coeff).map_err(D::Error::custom)?));
        }
        MultiForm::from_terms(&orders, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use VarPair::*;

    fn mono(parts: &[(VarPair, [u32; 2])], c: i64) -> MultiForm {
        MultiForm::monomial(parts, qi(c)).unwrap()
    }

    #[test]
    fn omega_basics() {
        assert!(MultiForm::one().omega(X, Y).unwrap().is_zero());
        let f = mono(&[(X, [1, 0]), (Y, [0, 1])], 1);
        assert_eq!(f.omega(X, Y).unwrap().as_constant(), Some(qi(1)));
        assert!(f.omega(X, X).is_err());
    }

    #[test]
    fn omega_power_matches_iteration() {
        let f = &(&mono(&[(X, [3, 1]), (Y, [1, 2])], 2) + &mono(&[(X, [2, 2]), (Y, [3, 0])], -5))
            + &mono(&[(X, [0, 4]), (Y, [2, 1])], 7);
        let mut it = f.clone();
        for k in 1..=4 {
            it = it.omega(X, Y).unwrap();
            assert_eq!(f.omega_pow(X, Y, k).unwrap(), it, "k = {k}");
        }
    }

    #[test]
    fn polarization_examples() {
        let x1sq = mono(&[(X, [2, 0])], 1);
        assert_eq!(
            x1sq.polarize(X, Y, 1).unwrap(),
            mono(&[(X, [1, 0]), (Y, [1, 0])], 2)
        );
        assert_eq!(x1sq.polarize(X, Y, 0).unwrap(), x1sq);
        let x1x2 = mono(&[(X, [1, 1])], 1);
        let out = x1x2.polarize(X, Y, 2).unwrap();
        assert_eq!(out, mono(&[(X, [0, 0]), (Y, [1, 1])], 2));
        assert!(x1x2.polarize(X, Y, 3).unwrap().is_zero());
    }

    #[test]
    fn brackets() {
        let b = bracket(X, Y).unwrap();
        let v = b
            .evaluate(&[(X, [qi(1), qi(0)]), (Y, [qi(0), qi(1)])])
            .unwrap();
        assert_eq!(v, qi(1));
        assert_eq!(bracket(Y, X).unwrap(), -&b);
        let sq = &b * &b;
        assert_eq!(sq.order(X), Some(PairOrder::Homogeneous(2)));
        assert_eq!(sq.order(Y), Some(PairOrder::Homogeneous(2)));
        assert_eq!(bracket(X, X), Err(Error::DegenerateBracket("x")));
    }

    #[test]
    fn substitution() {
        assert!(bracket(X, Y)
            .unwrap()
            .substitute_pair(Y, X)
            .unwrap()
            .is_zero());
        assert_eq!(
            mono(&[(Y, [2, 0])], 1).substitute_pair(Y, X).unwrap(),
            mono(&[(X, [2, 0])], 1)
        );
        // (xy) c_x c_y with c = (1, 1)
        let c = |p| MultiForm::linear(p, qi(1), qi(1));
        let f = &(&bracket(X, Y).unwrap() * &c(X)) * &c(Y);
        assert!(f.substitute_pair(Y, X).unwrap().is_zero());
    }

    #[test]
    fn ring_ops_and_division() {
        let num = &mono(&[(X, [2, 0])], 1) - &mono(&[(X, [0, 2])], 1);
        let den = &mono(&[(X, [1, 0])], 1) - &mono(&[(X, [0, 1])], 1);
        let quo = num.exact_divide(&den).unwrap();
        assert_eq!(quo, &mono(&[(X, [1, 0])], 1) + &mono(&[(X, [0, 1])], 1));
        assert_eq!(num.exact_divide(&num).unwrap().as_constant(), Some(qi(1)));
        assert_eq!(
            mono(&[(X, [1, 0])], 1).exact_divide(&den),
            Err(Error::InexactDivision)
        );
        assert_eq!(
            num.exact_divide(&MultiForm::zero()),
            Err(Error::DivisionByZero)
        );
        let f = mono(&[(X, [1, 0]), (Y, [0, 1])], 1);
        let v = f
            .evaluate(&[(X, [qi(2), qi(3)]), (Y, [qi(5), qi(7)])])
            .unwrap();
        assert_eq!(v, qi(14));
        assert_eq!(
            f.evaluate(&[(X, [qi(2), qi(3)])]),
            Err(Error::InactivePair("y"))
        );
    }

    #[test]
    fn declared_orders_are_enforced() {
        let e = {
            let mut e = [0u8; 16];
            e[0] = 2;
            e
        };
        assert!(MultiForm::from_terms(&[(X, PairOrder::Homogeneous(3))], [(e, qi(1))]).is_err());
        assert!(MultiForm::from_terms(&[], [(e, qi(1))]).is_err());
        let sum = &mono(&[(X, [2, 0])], 1) + &mono(&[(X, [1, 0])], 1);
        assert_eq!(sum.order(X), Some(PairOrder::Inhomogeneous));
    }

    #[test]
    fn json_shape_and_round_trip() {
        let f = &mono(&[(X, [1, 0]), (Y, [0, 1])], 3)
            + &MultiForm::monomial(&[(X, [0, 1]), (Y, [1, 0])], q(-1, 2)).unwrap();
        let v = f.to_json();
        assert_eq!(v["orders"]["x"], 1);
        assert_eq!(v["terms"][0]["coeff"], "-1/2");
        assert_eq!(v["terms"][0]["exps"]["x"], serde_json::json!([0, 1]));
        assert_eq!(MultiForm::from_json(&v).unwrap(), f);
        let bad = serde_json::json!({"orders": {"t": 1}, "terms": []});
        assert!(MultiForm::from_json(&bad).is_err());
    }

    #[test]
    fn linear_substitution_of_product() {
        let f = mono(&[(X, [1, 1])], 1);
        let g = [[qi(1), qi(2)], [qi(0), qi(1)]];
        // x1 x2 -> (x1 + 2 x2) x2
        let expect = &mono(&[(X, [1, 1])], 1) + &mono(&[(X, [0, 2])], 2);
        assert_eq!(f.linear_substitution(X, &g).unwrap(), expect);
    }

    #[test]
    fn display_is_readable() {
        let f = &mono(&[(X, [1, 0]), (Y, [0, 1])], 1) - &mono(&[(X, [0, 1]), (Y, [1, 0])], 1);
        assert_eq!(f.to_string(), "x1*y2 - x2*y1");
    }
}
