use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{AlgebraError, Result};

/// A Euclidean domain element with canonical forms.
///
/// `Domain` carries whatever context is needed to build constants (nothing
/// for the integers, the prime field for polynomials). Binary operations
/// assume both operands live in the same domain.
pub trait Euclidean: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    type Domain: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn domain(&self) -> Self::Domain;
    fn zero_in(domain: &Self::Domain) -> Self;
    fn one_in(domain: &Self::Domain) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `(q, r)` with `self = q·d + r` and `r` reduced modulo `d`: `0 ≤ r < |d|`
    /// for integers, `deg r < deg d` for polynomials. `d` must be nonzero.
    fn div_rem(&self, d: &Self) -> (Self, Self);
    /// Euclidean size: `|a|` or `deg a + 1`; zero exactly for zero.
    fn norm(&self) -> BigUint;
    /// `(n, u)` with `self = u·n`, `u` a unit and `n` non-negative or monic.
    fn normalize(&self) -> (Self, Self);
    fn unit_inverse(&self) -> Option<Self>;
    /// Uniform element with `|a| ≤ bound` or `deg a ≤ bound`.
    fn random<G: Rng + ?Sized>(domain: &Self::Domain, rng: &mut G, bound: u64) -> Self;
    fn parse(domain: &Self::Domain, text: &str) -> Result<Self>;
    fn to_json(&self) -> Value;
    fn from_json(domain: &Self::Domain, value: &Value) -> Result<Self>;
    /// Whether fractions over this domain serialize as a single `"p/q"` string.
    fn fraction_as_string() -> bool {
        false
    }

    fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// `other / self` when the division is exact.
    fn exact_quotient_of(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return other.is_zero().then(|| Self::zero_in(&other.domain()));
        }
        let (q, r) = other.div_rem(self);
        r.is_zero().then_some(q)
    }

    fn associated(&self, other: &Self) -> bool {
        self.normalize().0 == other.normalize().0
    }
}

/// Normalized gcd.
pub fn gcd<E: Euclidean>(a: &E, b: &E) -> E {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y).1;
        x = y;
        y = r;
    }
    x.normalize().0
}

/// `(g, s, t)` with `a·s + b·t = g` and `g` the normalized gcd.
pub fn ext_gcd<E: Euclidean>(a: &E, b: &E) -> (E, E, E) {
    let d = a.domain();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (E::one_in(&d), E::zero_in(&d));
    let (mut t0, mut t1) = (E::zero_in(&d), E::one_in(&d));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    let (g, u) = r0.normalize();
    let inv = u.unit_inverse().expect("normalize returns a unit");
    (g, s0.mul(&inv), t0.mul(&inv))
}

/// Normalized lcm.
pub fn lcm<E: Euclidean>(a: &E, b: &E) -> E {
    if a.is_zero() || b.is_zero() {
        return E::zero_in(&a.domain());
    }
    let g = gcd(a, b);
    g.exact_quotient_of(a).expect("gcd divides").mul(b).normalize().0
}

/// Arbitrary-precision integers.
pub type Integer = BigInt;

impl Euclidean for BigInt {
    type Domain = ();

    fn domain(&self) {}

    fn zero_in(_: &()) -> Self {
        BigInt::zero()
    }

    fn one_in(_: &()) -> Self {
        BigInt::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let (mut q, mut r) = num_integer::Integer::div_mod_floor(self, d);
        if r.is_negative() {
            // d < 0: shift the remainder into [0, |d|).
            r -= d;
            q += 1;
        }
        (q, r)
    }

    fn norm(&self) -> BigUint {
        self.magnitude().clone()
    }

    fn normalize(&self) -> (Self, Self) {
        if self.is_negative() {
            (-self, BigInt::from(-1))
        } else {
            (self.clone(), BigInt::one())
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        (self.magnitude().is_one()).then(|| self.clone())
    }

    fn random<G: Rng + ?Sized>(_: &(), rng: &mut G, bound: u64) -> Self {
        let b = bound.min(i64::MAX as u64) as i64;
        BigInt::from(rng.gen_range(-b..=b))
    }

    fn parse(_: &(), text: &str) -> Result<Self> {
        text.trim()
            .parse::<BigInt>()
            .map_err(|e| AlgebraError::InvalidInput(format!("bad integer {text:?}: {e}")))
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(_: &(), value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => Self::parse(&(), s),
            Value::Number(n) => Self::parse(&(), &n.to_string()),
            _ => Err(AlgebraError::InvalidInput(format!("expected an integer, got {value}"))),
        }
    }

    fn fraction_as_string() -> bool {
        true
    }
}
