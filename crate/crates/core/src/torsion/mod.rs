//! Exact arithmetic in `Q(R)/R` and in `R ∝ Q(R)/R` for the Euclidean
//! domains `ℤ` and `F_p[x]`.
//!
//! A class in `Q/R` is stored as its canonical representative `p/q`: `q`
//! normalized (positive or monic), `gcd(p, q) = 1` and `p` reduced modulo `q`
//! (`0 ≤ p < q`, or `deg p < deg q`). Zero is stored as `0/1` and printed as `0`.

mod checks;
mod euclid;
mod poly;
mod weak_baer;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};

pub use checks::{
    divisibility_check, exact_sequence_check, lattice_bijection, lattice_bijection_sample,
    lattice_bijection_sample_poly, DivisibilityReport, ExactSequenceReport, LatticeBijectionReport,
};
pub use euclid::{ext_gcd, gcd, lcm, Euclidean, Integer};
pub use poly::{parse_poly, FpPoly, PrimeField};
pub use weak_baer::{weak_baer_bezout_witness, WeakBaerReport};

fn same_domain<E: Euclidean>(a: &E, b: &E) -> Result<()> {
    if a.domain() == b.domain() {
        Ok(())
    } else {
        Err(AlgebraError::DomainMismatch)
    }
}

/// A canonical element of `Q(R)/R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FractionModOne<E: Euclidean> {
    num: E,
    den: E,
}

/// Canonical coprime representative of `p/q` modulo `R`.
pub fn reduce_fraction<E: Euclidean>(p: &E, q: &E) -> Result<FractionModOne<E>> {
    same_domain(p, q)?;
    if q.is_zero() {
        return Err(AlgebraError::ZeroDenominator);
    }
    Ok(FractionModOne::reduce_unchecked(p, q))
}

impl<E: Euclidean> FractionModOne<E> {
    fn reduce_unchecked(p: &E, q: &E) -> Self {
        let (qn, u) = q.normalize();
        let p = p.mul(&u.unit_inverse().expect("normalize returns a unit"));
        let g = gcd(&p, &qn);
        let den = g.exact_quotient_of(&qn).expect("gcd divides");
        let num = g.exact_quotient_of(&p).expect("gcd divides");
        let num = num.div_rem(&den).1;
        let d = den.domain();
        if num.is_zero() {
            return FractionModOne {
                num,
                den: E::one_in(&d),
            };
        }
        FractionModOne { num, den }
    }

    pub fn new(p: &E, q: &E) -> Result<Self> {
        reduce_fraction(p, q)
    }

    pub fn zero(domain: &E::Domain) -> Self {
        FractionModOne {
            num: E::zero_in(domain),
            den: E::one_in(domain),
        }
    }

    /// `1/a`, which is zero when `a` is a unit.
    pub fn reciprocal(a: &E) -> Result<Self> {
        if a.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::reduce_unchecked(&E::one_in(&a.domain()), a))
    }

    pub fn numerator(&self) -> &E {
        &self.num
    }

    pub fn denominator(&self) -> &E {
        &self.den
    }

    pub fn domain(&self) -> E::Domain {
        self.den.domain()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn plus(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::reduce_unchecked(&num, &self.den.mul(&other.den))
    }

    pub(crate) fn negated(&self) -> Self {
        Self::reduce_unchecked(&self.num.neg(), &self.den)
    }

    pub(crate) fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    pub(crate) fn scaled(&self, r: &E) -> Self {
        Self::reduce_unchecked(&self.num.mul(r), &self.den)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_domain(&self.den, &other.den)?;
        Ok(self.plus(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_domain(&self.den, &other.den)?;
        Ok(self.minus(other))
    }

    pub fn neg(&self) -> Self {
        self.negated()
    }

    /// `r · x`.
    pub fn scalar_mul(&self, r: &E) -> Result<Self> {
        same_domain(&self.den, r)?;
        Ok(self.scaled(r))
    }

    /// Parses `p/q`, `(p)/(q)` or a bare `p`.
    pub fn parse(domain: &E::Domain, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in text.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        match split {
            Some(i) => reduce_fraction(&E::parse(domain, &text[..i])?, &E::parse(domain, &text[i + 1..])?),
            None => Ok(Self::reduce_unchecked(&E::parse(domain, text)?, &E::one_in(domain))),
        }
    }

    pub fn to_json(&self) -> Value {
        if E::fraction_as_string() {
            Value::String(self.to_string())
        } else {
            json!({ "den": self.den.to_json(), "num": self.num.to_json() })
        }
    }

    pub fn from_json(domain: &E::Domain, value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => Self::parse(domain, s),
            Value::Object(map) => {
                let get = |k: &str| {
                    map.get(k)
                        .ok_or_else(|| AlgebraError::InvalidInput(format!("fraction is missing {k:?}")))
                };
                reduce_fraction(&E::from_json(domain, get("num")?)?, &E::from_json(domain, get("den")?)?)
            }
            _ => Err(AlgebraError::InvalidInput(format!("expected a fraction, got {value}"))),
        }
    }

    /// A random class whose denominator has size at most `bound`.
    pub fn random<G: Rng + ?Sized>(domain: &E::Domain, rng: &mut G, bound: u64) -> Self {
        loop {
            let q = E::random(domain, rng, bound);
            if !q.is_zero() {
                return Self::reduce_unchecked(&E::random(domain, rng, bound), &q);
            }
        }
    }
}

impl<E: Euclidean> fmt::Display for FractionModOne<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else if E::fraction_as_string() {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<E: Euclidean> Serialize for FractionModOne<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Generator of `ann^R(x)`: the canonical denominator `q`, so that `r·x = 0` iff `q | r`.
pub fn annihilator_generator_in_r<E: Euclidean>(x: &FractionModOne<E>) -> E {
    x.den.clone()
}

/// Generator `1/a` of `ann^{Q/R}(a)`, so that `a·y = 0` iff `den(y) | a`.
pub fn annihilator_generator_in_q_mod_r<E: Euclidean>(a: &E) -> Result<FractionModOne<E>> {
    if a.is_zero() {
        return Err(AlgebraError::DivisionByZero(
            "ann^{Q/R}(0) is all of Q/R, which is not cyclic".into(),
        ));
    }
    FractionModOne::reciprocal(a)
}

/// The canonical `z` with `d·z = m`, namely `p/(q·d)`. Other solutions differ
/// from it by elements of `ann^{Q/R}(d)`.
pub fn divide<E: Euclidean>(m: &FractionModOne<E>, d: &E) -> Result<FractionModOne<E>> {
    same_domain(&m.den, d)?;
    if d.is_zero() {
        if m.is_zero() {
            return Ok(m.clone());
        }
        return Err(AlgebraError::DivisionByZero(format!("{m} is not divisible by 0")));
    }
    Ok(FractionModOne::reduce_unchecked(&m.num, &m.den.mul(d)))
}

/// An element `(r, m)` of `R ∝ Q(R)/R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QTrivExtElement<E: Euclidean> {
    pub r: E,
    pub m: FractionModOne<E>,
}

impl<E: Euclidean> QTrivExtElement<E> {
    pub fn new(r: E, m: FractionModOne<E>) -> Result<Self> {
        same_domain(&r, &m.den)?;
        Ok(QTrivExtElement { r, m })
    }

    pub fn zero(domain: &E::Domain) -> Self {
        QTrivExtElement {
            r: E::zero_in(domain),
            m: FractionModOne::zero(domain),
        }
    }

    pub fn one(domain: &E::Domain) -> Self {
        QTrivExtElement {
            r: E::one_in(domain),
            m: FractionModOne::zero(domain),
        }
    }

    pub fn ring(r: E) -> Self {
        let d = r.domain();
        QTrivExtElement {
            r,
            m: FractionModOne::zero(&d),
        }
    }

    pub fn module(m: FractionModOne<E>) -> Self {
        QTrivExtElement {
            r: E::zero_in(&m.domain()),
            m,
        }
    }

    pub fn domain(&self) -> E::Domain {
        self.r.domain()
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.m.is_zero()
    }

    pub(crate) fn plus(&self, other: &Self) -> Self {
        QTrivExtElement {
            r: self.r.add(&other.r),
            m: self.m.plus(&other.m),
        }
    }

    pub(crate) fn negated(&self) -> Self {
        QTrivExtElement {
            r: self.r.neg(),
            m: self.m.negated(),
        }
    }

    /// `(r, m)(s, n) = (rs, r·n + s·m)`.
    pub(crate) fn times(&self, other: &Self) -> Self {
        QTrivExtElement {
            r: self.r.mul(&other.r),
            m: other.m.scaled(&self.r).plus(&self.m.scaled(&other.r)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_domain(&self.r, &other.r)?;
        Ok(self.plus(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_domain(&self.r, &other.r)?;
        Ok(self.times(other))
    }

    /// Two-sided inverse; exists iff `r` is a unit.
    pub fn inverse(&self) -> Option<Self> {
        let u = self.r.unit_inverse()?;
        let m = self.m.scaled(&u.mul(&u)).negated();
        Some(QTrivExtElement { r: u, m })
    }

    pub fn to_json(&self) -> Value {
        json!({ "m": self.m.to_json(), "r": self.r.to_json() })
    }

    pub fn from_json(domain: &E::Domain, value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| AlgebraError::InvalidInput(format!("expected {{\"r\", \"m\"}}, got {value}")))?;
        let r = match obj.get("r") {
            Some(v) => E::from_json(domain, v)?,
            None => E::zero_in(domain),
        };
        let m = match obj.get("m") {
            Some(v) => FractionModOne::from_json(domain, v)?,
            None => FractionModOne::zero(domain),
        };
        Ok(QTrivExtElement { r, m })
    }

    pub fn random<G: Rng + ?Sized>(domain: &E::Domain, rng: &mut G, bound: u64) -> Self {
        QTrivExtElement {
            r: E::random(domain, rng, bound),
            m: FractionModOne::random(domain, rng, bound),
        }
    }
}

impl<E: Euclidean> fmt::Display for QTrivExtElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.m)
    }
}

impl<E: Euclidean> Serialize for QTrivExtElement<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// The two shapes an annihilator or principal ideal of `R ∝ Q/R` can take.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IdealShape<E: Euclidean> {
    /// `dR ∝ Q/R`, with `d` normalized.
    Lifted(E),
    /// `{(0, y) : den(y) | d}`, with `d` normalized and nonzero.
    ModulePart(E),
}

impl<E: Euclidean> IdealShape<E> {
    pub fn contains(&self, t: &QTrivExtElement<E>) -> bool {
        match self {
            IdealShape::Lifted(d) => d.divides(&t.r),
            IdealShape::ModulePart(d) => t.r.is_zero() && t.m.den.divides(d),
        }
    }

    /// Canonical generator used to probe a disagreement between two shapes.
    fn probe(&self) -> QTrivExtElement<E> {
        match self {
            IdealShape::Lifted(d) => QTrivExtElement::ring(d.clone()),
            IdealShape::ModulePart(d) => QTrivExtElement::module(FractionModOne::reduce_unchecked(&E::one_in(&d.domain()), d)),
        }
    }

    /// A random element of the set, sizes bounded by `bound`.
    pub fn random_member<G: Rng + ?Sized>(&self, rng: &mut G, bound: u64) -> QTrivExtElement<E> {
        match self {
            IdealShape::Lifted(d) => QTrivExtElement {
                r: d.mul(&E::random(&d.domain(), rng, bound)),
                m: FractionModOne::random(&d.domain(), rng, bound),
            },
            IdealShape::ModulePart(d) => {
                let num = E::random(&d.domain(), rng, bound);
                QTrivExtElement::module(FractionModOne::reduce_unchecked(&num, d))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            IdealShape::Lifted(d) => format!("({d})R ∝ Q/R"),
            IdealShape::ModulePart(d) => format!("0 ∝ ann^{{Q/R}}({d})"),
        }
    }
}

/// Closed form of `ann^S(a, x) = { t : (a, x)·t = 0 }`.
pub fn annihilator_shape<E: Euclidean>(e: &QTrivExtElement<E>) -> IdealShape<E> {
    if e.r.is_zero() {
        IdealShape::Lifted(e.m.den.clone())
    } else {
        IdealShape::ModulePart(e.r.normalize().0)
    }
}

/// Closed form of the principal ideal `S(c, z)`.
pub fn principal_shape<E: Euclidean>(w: &QTrivExtElement<E>) -> IdealShape<E> {
    if w.r.is_zero() {
        IdealShape::ModulePart(w.m.den.clone())
    } else {
        IdealShape::Lifted(w.r.normalize().0)
    }
}

/// Some `s ∈ S` with `s·w = t`, verified by multiplication.
pub fn principal_multiplier<E: Euclidean>(w: &QTrivExtElement<E>, t: &QTrivExtElement<E>) -> Option<QTrivExtElement<E>> {
    let d = w.domain();
    let candidate = if !w.r.is_zero() {
        let s = w.r.exact_quotient_of(&t.r)?;
        let rest = t.m.minus(&w.m.scaled(&s));
        let n = divide(&rest, &w.r).ok()?;
        QTrivExtElement { r: s, m: n }
    } else {
        if !t.r.is_zero() {
            return None;
        }
        if w.m.is_zero() {
            if !t.m.is_zero() {
                return None;
            }
            QTrivExtElement::zero(&d)
        } else {
            let q = &w.m.den;
            let k = t.m.den.exact_quotient_of(q)?;
            let (_, p_inv, _) = ext_gcd(&w.m.num, q);
            let s = t.m.num.mul(&k).mul(&p_inv).div_rem(q).1;
            QTrivExtElement::ring(s)
        }
    };
    (candidate.times(w) == *t).then_some(candidate)
}

/// A morphic partner `w` of `e`: `ann(e) = Sw` and `ann(w) = Se`.
pub fn morphic_partner<E: Euclidean>(e: &QTrivExtElement<E>) -> QTrivExtElement<E> {
    let d = e.domain();
    if !e.r.is_zero() {
        QTrivExtElement::module(FractionModOne::reduce_unchecked(&E::one_in(&d), &e.r))
    } else if !e.m.is_zero() {
        QTrivExtElement::ring(e.m.den.clone())
    } else {
        QTrivExtElement::one(&d)
    }
}

/// Outcome of checking `ann(x) = Sy` for one ordered pair.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct EqualityCheck<E: Euclidean> {
    pub annihilator: String,
    pub principal: String,
    pub closed_form_agrees: bool,
    pub samples: usize,
    /// An element in exactly one of the two sets.
    pub witness: Option<QTrivExtElement<E>>,
    pub witness_annihilates: Option<bool>,
}

impl<E: Euclidean> EqualityCheck<E> {
    pub fn passed(&self) -> bool {
        self.closed_form_agrees && self.witness.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct PartnerReport<E: Euclidean> {
    pub element: QTrivExtElement<E>,
    pub partner: QTrivExtElement<E>,
    /// `ann(e) = Sw`
    pub forward: EqualityCheck<E>,
    /// `ann(w) = Se`
    pub backward: EqualityCheck<E>,
    pub passed: bool,
}

fn check_equality<E: Euclidean>(x: &QTrivExtElement<E>, y: &QTrivExtElement<E>, samples: usize, bound: u64, rng: &mut ChaCha8Rng) -> EqualityCheck<E> {
    let ann = annihilator_shape(x);
    let principal = principal_shape(y);
    let in_ann = |t: &QTrivExtElement<E>| x.times(t).is_zero();
    let in_principal = |t: &QTrivExtElement<E>| principal_multiplier(y, t).is_some();
    let mut witness = None;
    if ann != principal {
        witness = [ann.probe(), principal.probe()]
            .into_iter()
            .find(|t| in_ann(t) != in_principal(t));
    }
    let d = x.domain();
    let mut drawn = 0;
    while witness.is_none() && drawn < samples {
        let candidates = [
            QTrivExtElement::random(&d, rng, bound),
            ann.random_member(rng, bound),
            QTrivExtElement::random(&d, rng, bound).times(y),
        ];
        drawn += 1;
        witness = candidates.into_iter().find(|t| in_ann(t) != in_principal(t));
    }
    let witness_annihilates = witness.as_ref().map(in_ann);
    EqualityCheck {
        annihilator: ann.describe(),
        principal: principal.describe(),
        closed_form_agrees: ann == principal,
        samples: drawn,
        witness,
        witness_annihilates,
    }
}

/// Certifies `ann(e) = Sw` and `ann(w) = Se`: closed forms are compared, then
/// `samples` seeded random elements per direction are tested against the
/// definitions (annihilation by multiplication, membership by an explicit
/// multiplier).
pub fn verify_partner<E: Euclidean>(
    e: &QTrivExtElement<E>,
    w: &QTrivExtElement<E>,
    samples: usize,
    bound: u64,
    seed: u64,
) -> Result<PartnerReport<E>> {
    same_domain(&e.r, &w.r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forward = check_equality(e, w, samples, bound, &mut rng);
    let backward = check_equality(w, e, samples, bound, &mut rng);
    let passed = forward.passed() && backward.passed();
    Ok(PartnerReport {
        element: e.clone(),
        partner: w.clone(),
        forward,
        backward,
        passed,
    })
}
