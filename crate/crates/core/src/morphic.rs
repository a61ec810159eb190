//! Exhaustive deciders for morphic, quasi-morphic, regular and unit regular
//! elements, and the consistency checks that tie them to trivial extensions.
//!
//! An element `a` is left morphic when some `b` satisfies `ann_l(a) = Rb`
//! and `ann_l(b) = Ra`. Any such `b` generates `ann_l(a)`, so the search
//! only visits generators of `ann_l(a)` and is complete. For quasi-morphic
//! elements the second element `c` with `ann_l(c) = Ra` must satisfy
//! `a·c = 0`, so the search runs over `ann_r(a)`.
//!
//! A finite ring is artinian, so "artinian principal" is decided as
//! left-and-right Bézout (pairwise sums of principal ideals are principal).
//! Right-hand notions are decided independently of the left-hand ones.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bimodule::{Side, SubsetHandle};
use crate::bimodule::Role;
use crate::error::{AlgebraError, Result};
use crate::ring::{subgroup_sum, FiniteRing, RingMorphism};
use crate::trivext::{skew_poly_quotient, PairJson, TrivialExtensionRing};
use crate::Limits;

/// Principal one-sided ideals and annihilators of every element, with the
/// generator lists of each distinct principal ideal.
pub struct AnnihilatorCache {
    ring: Arc<FiniteRing>,
    left_principal: Vec<FixedBitSet>,
    right_principal: Vec<FixedBitSet>,
    ann_left: Vec<FixedBitSet>,
    ann_right: Vec<FixedBitSet>,
    left_generators: HashMap<FixedBitSet, Vec<usize>>,
    right_generators: HashMap<FixedBitSet, Vec<usize>>,
}

impl AnnihilatorCache {
    pub fn new(ring: &Arc<FiniteRing>) -> Self {
        let n = ring.order();
        let mut left_principal = vec![ring.empty_subset(); n];
        let mut right_principal = vec![ring.empty_subset(); n];
        let mut ann_left = vec![ring.empty_subset(); n];
        let mut ann_right = vec![ring.empty_subset(); n];
        for a in 0..n {
            for r in 0..n {
                let ra = ring.mul(r, a);
                let ar = ring.mul(a, r);
                left_principal[a].insert(ra);
                right_principal[a].insert(ar);
                if ra == ring.zero() {
                    ann_left[a].insert(r);
                }
                if ar == ring.zero() {
                    ann_right[a].insert(r);
                }
            }
        }
        let index = |sets: &[FixedBitSet]| {
            let mut map: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
            for (g, s) in sets.iter().enumerate() {
                map.entry(s.clone()).or_default().push(g);
            }
            map
        };
        AnnihilatorCache {
            left_generators: index(&left_principal),
            right_generators: index(&right_principal),
            ring: ring.clone(),
            left_principal,
            right_principal,
            ann_left,
            ann_right,
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// `Ra` (left) or `aR` (right).
    pub fn principal(&self, a: usize, side: Side) -> &FixedBitSet {
        match side {
            Side::Left => &self.left_principal[a],
            Side::Right => &self.right_principal[a],
        }
    }

    /// `ann_l(a)` (left) or `ann_r(a)` (right).
    pub fn ann(&self, a: usize, side: Side) -> &FixedBitSet {
        match side {
            Side::Left => &self.ann_left[a],
            Side::Right => &self.ann_right[a],
        }
    }

    /// Every `g` with `Rg = set` (or `gR = set`), ascending.
    pub fn generators(&self, set: &FixedBitSet, side: Side) -> &[usize] {
        let map = match side {
            Side::Left => &self.left_generators,
            Side::Right => &self.right_generators,
        };
        map.get(set).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Distinct principal one-sided ideals, each with its least generator.
    pub fn distinct_principal(&self, side: Side) -> Vec<(usize, &FixedBitSet)> {
        let map = match side {
            Side::Left => &self.left_generators,
            Side::Right => &self.right_generators,
        };
        let mut out: Vec<(usize, &FixedBitSet)> = map.iter().map(|(s, g)| (g[0], s)).collect();
        out.sort_by_key(|&(g, _)| g);
        out
    }

    /// All `b` with `ann(a) = Rb` and `ann(b) = Ra` on the given side, ascending.
    pub fn morphic_partners(&self, a: usize, side: Side) -> Vec<usize> {
        let target = self.principal(a, side);
        self.generators(self.ann(a, side), side)
            .iter()
            .copied()
            .filter(|&b| self.ann(b, side) == target)
            .collect()
    }

    pub fn morphic_partner(&self, a: usize, side: Side) -> Option<usize> {
        let target = self.principal(a, side);
        self.generators(self.ann(a, side), side)
            .iter()
            .copied()
            .find(|&b| self.ann(b, side) == target)
    }

    /// Least `(b, c)` with `ann(a) = Rb` and `ann(c) = Ra`.
    pub fn quasi_partner(&self, a: usize, side: Side) -> Option<(usize, usize)> {
        let b = *self.generators(self.ann(a, side), side).first()?;
        let target = self.principal(a, side);
        let c = self
            .ann(a, side.opposite())
            .ones()
            .find(|&c| self.ann(c, side) == target)?;
        Some((b, c))
    }

    /// Least pair of principal generators whose sum is not principal.
    pub fn bezout_counterexample(&self, side: Side) -> Option<(usize, usize)> {
        let ring = &self.ring;
        let distinct = self.distinct_principal(side);
        for (i, &(m, cm)) in distinct.iter().enumerate() {
            for &(n, cn) in &distinct[i + 1..] {
                let sum = subgroup_sum(ring.order(), |x, y| ring.add(x, y), cm, cn);
                if self.generators(&sum, side).is_empty() {
                    return Some((m, n));
                }
            }
        }
        None
    }
}

/// A certified morphic witness: `ann(a) = Rb` and `ann(b) = Ra` on `side`.
#[derive(Debug, Clone, Serialize)]
pub struct MorphicWitness {
    pub element: usize,
    pub partner: usize,
    pub side: Side,
    #[serde(serialize_with = "serialize_handle")]
    pub ann_element: SubsetHandle,
    #[serde(serialize_with = "serialize_handle")]
    pub ann_partner: SubsetHandle,
}

fn serialize_handle<S: serde::Serializer>(h: &SubsetHandle, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(h.members())
}

fn one_sided_role(side: Side) -> Role {
    match side {
        Side::Left => Role::LeftIdeal,
        Side::Right => Role::RightIdeal,
    }
}

impl MorphicWitness {
    /// Recomputes both equalities from the ring tables and fails if either does not hold.
    pub fn certify(ring: &FiniteRing, a: usize, b: usize, side: Side) -> Result<Self> {
        let ann_a = ring.annihilator(a, side);
        let ann_b = ring.annihilator(b, side);
        if ann_a != ring.principal(b, side) || ann_b != ring.principal(a, side) {
            return Err(AlgebraError::Alarm(format!(
                "{b} is not a {side:?} morphic partner of {a}"
            )));
        }
        let role = one_sided_role(side);
        Ok(MorphicWitness {
            element: a,
            partner: b,
            side,
            ann_element: SubsetHandle::in_ring(ring, role, ann_a)?,
            ann_partner: SubsetHandle::in_ring(ring, role, ann_b)?,
        })
    }
}

/// A certified quasi-morphic witness: `ann(a) = Rb` and `ann(c) = Ra` on `side`.
#[derive(Debug, Clone, Serialize)]
pub struct QuasiMorphicWitness {
    pub element: usize,
    pub generator: usize,
    pub co_element: usize,
    pub side: Side,
}

impl QuasiMorphicWitness {
    pub fn certify(ring: &FiniteRing, a: usize, b: usize, c: usize, side: Side) -> Result<Self> {
        if ring.annihilator(a, side) != ring.principal(b, side)
            || ring.annihilator(c, side) != ring.principal(a, side)
        {
            return Err(AlgebraError::Alarm(format!(
                "({b}, {c}) is not a {side:?} quasi-morphic witness for {a}"
            )));
        }
        Ok(QuasiMorphicWitness {
            element: a,
            generator: b,
            co_element: c,
            side,
        })
    }
}

fn check_element(ring: &FiniteRing, a: usize) -> Result<()> {
    if a >= ring.order() {
        return Err(AlgebraError::OutOfRange {
            index: a,
            order: ring.order(),
        });
    }
    Ok(())
}

pub fn left_morphic_witness(ring: &Arc<FiniteRing>, a: usize) -> Result<Option<MorphicWitness>> {
    morphic_witness(ring, a, Side::Left)
}

pub fn right_morphic_witness(ring: &Arc<FiniteRing>, a: usize) -> Result<Option<MorphicWitness>> {
    morphic_witness(ring, a, Side::Right)
}

/// Least-index partner on `side`, re-certified, or `None` after a complete search.
pub fn morphic_witness(ring: &Arc<FiniteRing>, a: usize, side: Side) -> Result<Option<MorphicWitness>> {
    check_element(ring, a)?;
    let ann = ring.annihilator(a, side);
    let target = ring.principal(a, side);
    let partner = ann
        .ones()
        .find(|&b| ring.principal(b, side) == ann && ring.annihilator(b, side) == target);
    partner.map(|b| MorphicWitness::certify(ring, a, b, side)).transpose()
}

/// Left and right witnesses found independently.
pub fn two_sided_witness(ring: &Arc<FiniteRing>, a: usize) -> Result<Option<(MorphicWitness, MorphicWitness)>> {
    let left = left_morphic_witness(ring, a)?;
    let right = right_morphic_witness(ring, a)?;
    Ok(left.zip(right))
}

pub fn quasi_morphic_witness(ring: &Arc<FiniteRing>, a: usize, side: Side) -> Result<Option<QuasiMorphicWitness>> {
    check_element(ring, a)?;
    let ann = ring.annihilator(a, side);
    let Some(b) = ann.ones().find(|&b| ring.principal(b, side) == ann) else {
        return Ok(None);
    };
    let target = ring.principal(a, side);
    let c = ring
        .annihilator(a, side.opposite())
        .ones()
        .find(|&c| ring.annihilator(c, side) == target);
    c.map(|c| QuasiMorphicWitness::certify(ring, a, b, c, side)).transpose()
}

/// Outcome of the regularity scans for one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regularity {
    NotRegular,
    Regular { inner: usize },
    UnitRegular { inner: usize, unit: usize },
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        !matches!(self, Regularity::NotRegular)
    }

    pub fn is_unit_regular(&self) -> bool {
        matches!(self, Regularity::UnitRegular { .. })
    }
}

fn regularity_with_units(ring: &FiniteRing, a: usize, units: &FixedBitSet) -> Regularity {
    let fixes = |x: usize| ring.mul(ring.mul(a, x), a) == a;
    let Some(inner) = ring.elements().find(|&x| fixes(x)) else {
        return Regularity::NotRegular;
    };
    match units.ones().find(|&u| fixes(u)) {
        Some(unit) => Regularity::UnitRegular { inner, unit },
        None => Regularity::Regular { inner },
    }
}

/// `a = axa` for some `x`, and `a = aua` for some unit `u`; least indices.
pub fn regularity(ring: &FiniteRing, a: usize) -> Result<Regularity> {
    check_element(ring, a)?;
    Ok(regularity_with_units(ring, a, &ring.units()))
}

/// A counterexample attached to a failing property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Counterexample {
    Element(usize),
    Pair(usize, usize),
}

/// Element-level verdicts. Partners are least-index witnesses.
#[derive(Debug, Clone, Serialize)]
pub struct ElementVerdict {
    pub index: usize,
    pub label: String,
    pub left_partner: Option<usize>,
    pub right_partner: Option<usize>,
    pub left_quasi: Option<(usize, usize)>,
    pub right_quasi: Option<(usize, usize)>,
    pub regularity: Regularity,
}

/// Property flags of a finite ring.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyFlags {
    pub left_bezout: bool,
    pub right_bezout: bool,
    pub left_morphic: bool,
    pub right_morphic: bool,
    pub morphic: bool,
    pub left_quasi_morphic: bool,
    pub right_quasi_morphic: bool,
    pub quasi_morphic: bool,
    pub regular: bool,
    pub unit_regular: bool,
    pub semisimple: bool,
    pub simple: bool,
    pub local: bool,
}

/// Structure data and property verdicts of a finite ring.
#[derive(Debug, Clone, Serialize)]
pub struct RingReport {
    pub order: usize,
    pub is_commutative: bool,
    pub units: Vec<usize>,
    pub idempotents: Vec<usize>,
    pub central_idempotents: Vec<usize>,
    pub jacobson_radical: Vec<usize>,
    pub primitive_central_idempotents: Vec<usize>,
    #[serde(flatten)]
    pub flags: PropertyFlags,
    pub counterexamples: BTreeMap<String, Counterexample>,
    /// `true` when element scans covered only a seeded sample.
    pub sampled: bool,
    pub scanned: usize,
    pub elements: Vec<ElementVerdict>,
}

impl RingReport {
    pub fn elements_json(&self) -> Vec<&ElementVerdict> {
        self.elements.iter().collect()
    }
}

/// Elements scanned by the deciders: all of them, or a seeded sample above `scan_cap`.
pub fn scan_set(ring: &FiniteRing, limits: &Limits) -> Result<(Vec<usize>, bool)> {
    let n = ring.order();
    if n <= limits.scan_cap {
        return Ok(((0..n).collect(), false));
    }
    if !limits.allow_sampling {
        return Err(AlgebraError::CapExceeded {
            order: n as u128,
            cap: limits.scan_cap,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    let mut picked = sample(&mut rng, n, limits.scan_cap).into_vec();
    picked.sort_unstable();
    Ok((picked, true))
}

/// Is every two-sided ideal `0` or `R`? Checked on principal two-sided ideals.
pub fn is_simple(ring: &FiniteRing) -> bool {
    ring.order() > 1
        && ring
            .elements()
            .filter(|&a| a != ring.zero())
            .all(|a| ring.principal_two_sided(a).count_ones(..) == ring.order())
}

/// Full property report.
pub fn ring_properties(ring: &Arc<FiniteRing>, limits: &Limits) -> Result<RingReport> {
    let (scan, sampled) = scan_set(ring, limits)?;
    let cache = AnnihilatorCache::new(ring);
    let data = ring.radical_data();
    let mut flags = PropertyFlags {
        left_morphic: true,
        right_morphic: true,
        left_quasi_morphic: true,
        right_quasi_morphic: true,
        regular: true,
        unit_regular: true,
        ..PropertyFlags::default()
    };
    let mut counterexamples = BTreeMap::new();
    let mut first_failure = |name: &str, flag: &mut bool, a: usize| {
        if *flag {
            *flag = false;
            counterexamples.insert(name.to_string(), Counterexample::Element(a));
        }
    };
    let mut elements = Vec::with_capacity(scan.len());
    for &a in &scan {
        let left_partner = cache.morphic_partner(a, Side::Left);
        let right_partner = cache.morphic_partner(a, Side::Right);
        let left_quasi = cache.quasi_partner(a, Side::Left);
        let right_quasi = cache.quasi_partner(a, Side::Right);
        let reg = regularity_with_units(ring, a, &data.units);
        if left_partner.is_none() {
            first_failure("left_morphic", &mut flags.left_morphic, a);
        }
        if right_partner.is_none() {
            first_failure("right_morphic", &mut flags.right_morphic, a);
        }
        if left_quasi.is_none() {
            first_failure("left_quasi_morphic", &mut flags.left_quasi_morphic, a);
        }
        if right_quasi.is_none() {
            first_failure("right_quasi_morphic", &mut flags.right_quasi_morphic, a);
        }
        if !reg.is_regular() {
            first_failure("regular", &mut flags.regular, a);
        }
        if !reg.is_unit_regular() {
            first_failure("unit_regular", &mut flags.unit_regular, a);
        }
        elements.push(ElementVerdict {
            index: a,
            label: ring.label(a),
            left_partner,
            right_partner,
            left_quasi,
            right_quasi,
            regularity: reg,
        });
    }
    for (name, side, flag) in [
        ("left_bezout", Side::Left, &mut flags.left_bezout),
        ("right_bezout", Side::Right, &mut flags.right_bezout),
    ] {
        match cache.bezout_counterexample(side) {
            None => *flag = true,
            Some((m, n)) => {
                counterexamples.insert(name.to_string(), Counterexample::Pair(m, n));
            }
        }
    }
    flags.morphic = flags.left_morphic && flags.right_morphic;
    flags.quasi_morphic = flags.left_quasi_morphic && flags.right_quasi_morphic;
    flags.semisimple = data.jacobson_radical.count_ones(..) == 1;
    flags.simple = is_simple(ring);
    flags.local = ring.order() > 1
        && ring
            .elements()
            .all(|a| data.units.contains(a) || data.jacobson_radical.contains(a));
    for (name, ok) in [("morphic", flags.morphic), ("quasi_morphic", flags.quasi_morphic)] {
        if !ok {
            let a = elements
                .iter()
                .find(|e| {
                    if name == "morphic" {
                        e.left_partner.is_none() || e.right_partner.is_none()
                    } else {
                        e.left_quasi.is_none() || e.right_quasi.is_none()
                    }
                })
                .map(|e| e.index)
                .expect("a failing flag has a failing element");
            counterexamples.insert(name.to_string(), Counterexample::Element(a));
        }
    }
    Ok(RingReport {
        order: ring.order(),
        is_commutative: ring.is_commutative(),
        units: data.units.ones().collect(),
        idempotents: data.idempotents.ones().collect(),
        central_idempotents: data.central_idempotents.ones().collect(),
        jacobson_radical: data.jacobson_radical.ones().collect(),
        primitive_central_idempotents: ring.primitive_central_idempotents(),
        flags,
        counterexamples,
        sampled,
        scanned: scan.len(),
        elements,
    })
}

/// Least element that is not left (or right) morphic, over every element.
pub fn first_non_morphic(cache: &AnnihilatorCache, side: Side) -> Option<usize> {
    cache
        .ring()
        .elements()
        .find(|&a| cache.morphic_partner(a, side).is_none())
}

/// Which of the four conditions hold for one triple `(a, m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnnCharacterization {
    pub a: usize,
    pub m: usize,
    pub n: usize,
    /// `ann_l^S(0,m) = S(a,n)`
    pub a1: bool,
    /// `ann_l^R(m) = Ra` and `ann_l^R(a)·n + M·a = M`
    pub a2: bool,
    /// `ann_l^S(a,n) = S(0,m)`
    pub b1: bool,
    /// `ann_l^M(a) = Rm`, `ann_l^R(a)·n ∩ M·a = 0` and `ann_l^R(a) ∩ ann_l^R(n) = 0`
    pub b2: bool,
}

impl AnnCharacterization {
    pub fn consistent(&self) -> bool {
        self.a1 == self.a2 && self.b1 == self.b2
    }
}

/// Computes both sides of the two annihilator equivalences directly.
pub fn check_annihilator_characterization(
    s: &TrivialExtensionRing,
    a: usize,
    m: usize,
    n: usize,
) -> Result<AnnCharacterization> {
    let base = s.base();
    let module = s.bimodule();
    check_element(base, a)?;
    for x in [m, n] {
        if x >= module.order() {
            return Err(AlgebraError::OutOfRange {
                index: x,
                order: module.order(),
            });
        }
    }
    let ring = s.ring();
    let zm = s.encode(base.zero(), m);
    let an = s.encode(a, n);
    let a1 = ring.ann_left(zm) == ring.principal_left(an);
    let b1 = ring.ann_left(an) == ring.principal_left(zm);

    let ann_a = base.ann_left(a);
    let mut ann_a_n = module.empty_subset();
    for c in ann_a.ones() {
        ann_a_n.insert(module.left_act(c, n));
    }
    let mut m_a = module.empty_subset();
    for x in module.elements() {
        m_a.insert(module.right_act(x, a));
    }
    let sum = subgroup_sum(module.order(), |x, y| module.add(x, y), &ann_a_n, &m_a);
    let a2 = module.ring_ann_left_bits(m) == base.principal_left(a) && sum.count_ones(..) == module.order();

    let mut meet = ann_a_n.clone();
    meet.intersect_with(&m_a);
    let mut ring_meet = ann_a.clone();
    ring_meet.intersect_with(&module.ring_ann_left_bits(n));
    let b2 = module.module_ann_left_bits(a) == module.cyclic_bits(m, Side::Left)
        && meet.count_ones(..) == 1
        && ring_meet.count_ones(..) == 1;
    Ok(AnnCharacterization { a, m, n, a1, a2, b1, b2 })
}

/// Summary of the characterization over every triple.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterizationSweep {
    pub triples: usize,
    pub a_holds: usize,
    pub b_holds: usize,
    pub violations: Vec<AnnCharacterization>,
}

pub fn sweep_annihilator_characterization(s: &TrivialExtensionRing) -> Result<CharacterizationSweep> {
    let mut sweep = CharacterizationSweep {
        triples: 0,
        a_holds: 0,
        b_holds: 0,
        violations: Vec::new(),
    };
    for a in s.base().elements() {
        for m in s.bimodule().elements() {
            for n in s.bimodule().elements() {
                let c = check_annihilator_characterization(s, a, m, n)?;
                sweep.triples += 1;
                sweep.a_holds += c.a1 as usize;
                sweep.b_holds += c.b1 as usize;
                if !c.consistent() {
                    sweep.violations.push(c);
                }
            }
        }
    }
    Ok(sweep)
}

/// Left witnesses of a two-sided morphic element and whether each transfers to the right.
#[derive(Debug, Clone, Serialize)]
pub struct RlTransfer {
    pub element: usize,
    pub left_witnesses: Vec<usize>,
    pub failures: Vec<usize>,
}

impl RlTransfer {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every left witness `b` of `a`, checks `ann_r(b) = aR` and `ann_r(a) = bR`.
pub fn verify_rl_transfer(cache: &AnnihilatorCache, a: usize) -> Result<RlTransfer> {
    check_element(cache.ring(), a)?;
    if cache.morphic_partner(a, Side::Left).is_none() || cache.morphic_partner(a, Side::Right).is_none() {
        return Err(AlgebraError::Precondition(format!("{a} is not two-sided morphic")));
    }
    let left_witnesses = cache.morphic_partners(a, Side::Left);
    let failures = left_witnesses
        .iter()
        .copied()
        .filter(|&b| {
            cache.ann(b, Side::Right) != cache.principal(a, Side::Right)
                || cache.ann(a, Side::Right) != cache.principal(b, Side::Right)
        })
        .collect();
    Ok(RlTransfer {
        element: a,
        left_witnesses,
        failures,
    })
}

/// Morphic status of `(a, 0)` in `R ∝ R(σ)` against that of `a` in `R`.
#[derive(Debug, Clone, Serialize)]
pub struct GenczRow {
    pub element: usize,
    pub extension_left: bool,
    pub extension_two_sided: bool,
    pub base_left: bool,
    pub base_two_sided: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenczReport {
    pub automorphism: bool,
    pub rows: Vec<GenczRow>,
    /// Elements where an asserted implication fails.
    pub violations: Vec<usize>,
}

/// Two-sided morphic `(a,0)` forces two-sided morphic `a`; with `σ` an
/// automorphism, left morphic `(a,0)` forces left morphic `a`.
pub fn verify_gencz(sigma: &RingMorphism, limits: &Limits) -> Result<GenczReport> {
    let ring = sigma.source();
    let s = skew_poly_quotient(sigma, limits)?;
    let base = AnnihilatorCache::new(ring);
    let ext = AnnihilatorCache::new(s.ring());
    let automorphism = sigma.is_automorphism();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for a in ring.elements() {
        let lifted = s.encode(a, 0);
        let extension_left = ext.morphic_partner(lifted, Side::Left).is_some();
        let extension_two_sided = extension_left && ext.morphic_partner(lifted, Side::Right).is_some();
        let base_left = base.morphic_partner(a, Side::Left).is_some();
        let base_two_sided = base_left && base.morphic_partner(a, Side::Right).is_some();
        let part_two = !extension_two_sided || base_two_sided;
        let part_one = !automorphism || !extension_left || base_left;
        if !(part_one && part_two) {
            violations.push(a);
        }
        rows.push(GenczRow {
            element: a,
            extension_left,
            extension_two_sided,
            base_left,
            base_two_sided,
        });
    }
    Ok(GenczReport {
        automorphism,
        rows,
        violations,
    })
}

/// Commutation of central idempotents of the base with module elements.
#[derive(Debug, Clone, Serialize)]
pub struct CommutationReport {
    pub left_morphic: bool,
    /// Least non-left-morphic element of the extension, when there is one.
    pub counterexample: Option<PairJson>,
    /// Pairs `(e, m)` with `e·m ≠ m·e`, ascending.
    pub failures: Vec<(usize, usize)>,
    /// Central idempotents that fail for at least one `m`, ascending.
    pub failing_idempotents: Vec<usize>,
}

impl CommutationReport {
    /// A left morphic extension admits no commutation failure.
    pub fn consistent(&self) -> bool {
        !(self.left_morphic && !self.failures.is_empty())
    }
}

pub fn verify_central_idempotent_commutation(s: &TrivialExtensionRing) -> CommutationReport {
    let base = s.base();
    let module = s.bimodule();
    let mut failures = Vec::new();
    let mut failing_idempotents = Vec::new();
    for e in base.central_idempotents().ones() {
        let before = failures.len();
        for m in module.elements() {
            if module.left_act(e, m) != module.right_act(m, e) {
                failures.push((e, m));
            }
        }
        if failures.len() > before {
            failing_idempotents.push(e);
        }
    }
    let cache = AnnihilatorCache::new(s.ring());
    let bad = first_non_morphic(&cache, Side::Left);
    CommutationReport {
        left_morphic: bad.is_none(),
        counterexample: bad.map(|i| s.to_json(i)),
        failures,
        failing_idempotents,
    }
}
