//! Finite `(R,R)`-bimodules with table-driven actions.
//!
//! A bimodule is an abelian group with a left action table
//! (`ring.order x order`) and a right action table (`order x ring.order`).
//! Subsets are bitsets over the module elements.
//!
//! Bézout is decided pairwise: every pair sum `Rm + Rn` must be cyclic.
//! For a finite module this is the same as every submodule being cyclic,
//! by induction on the number of generators (a finite submodule is
//! generated by its own elements).

mod ann;
mod subset;

pub use ann::{bezout_counterexample, principal_generator_in, Annihilators};
pub use subset::{Parent, Role, Side, SubsetHandle};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::ring::{Cell, Construction, CornerFactor, FiniteRing, RingMorphism};
use crate::Limits;

/// How a bimodule was obtained.
#[derive(Clone)]
pub enum ModuleConstruction {
    Regular,
    Twisted(RingMorphism),
    Zero,
    /// Cosets of a sub-bimodule; `representatives[c]` is the least parent element of class `c`.
    Quotient {
        parent: Arc<FiniteBimodule>,
        representatives: Vec<usize>,
    },
    Sub {
        parent: Arc<FiniteBimodule>,
        elements: Vec<usize>,
    },
    DirectSum(Arc<FiniteBimodule>, Arc<FiniteBimodule>),
    /// `eM` over the corner ring `eR` for a central idempotent `e`.
    Corner {
        parent: Arc<FiniteBimodule>,
        idempotent: usize,
        elements: Vec<usize>,
    },
}

impl fmt::Debug for ModuleConstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleConstruction::Regular => write!(f, "Regular"),
            ModuleConstruction::Twisted(s) => write!(f, "Twisted({:?})", s.image()),
            ModuleConstruction::Zero => write!(f, "Zero"),
            ModuleConstruction::Quotient { representatives, .. } => {
                write!(f, "Quotient({} classes)", representatives.len())
            }
            ModuleConstruction::Sub { elements, .. } => write!(f, "Sub({} elements)", elements.len()),
            ModuleConstruction::DirectSum(a, b) => write!(f, "DirectSum({}, {})", a.order(), b.order()),
            ModuleConstruction::Corner { idempotent, .. } => write!(f, "Corner(e={idempotent})"),
        }
    }
}

/// A finite `(R,R)`-bimodule.
#[derive(Clone)]
pub struct FiniteBimodule {
    ring: Arc<FiniteRing>,
    order: usize,
    add: Vec<Cell>,
    neg: Vec<Cell>,
    left: Vec<Cell>,
    right: Vec<Cell>,
    zero: usize,
    construction: ModuleConstruction,
}

impl fmt::Debug for FiniteBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteBimodule")
            .field("ring_order", &self.ring.order())
            .field("order", &self.order)
            .field("construction", &self.construction)
            .finish()
    }
}

impl FiniteBimodule {
    /// Assembles a bimodule from raw tables and verifies the axioms.
    ///
    /// `left[r * order + m] = r·m`, `right[m * ring.order + r] = m·r`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        ring: &Arc<FiniteRing>,
        order: usize,
        add: Vec<usize>,
        left: Vec<usize>,
        right: Vec<usize>,
        zero: usize,
        construction: ModuleConstruction,
        limits: &Limits,
    ) -> Result<Self> {
        let n = ring.order();
        if order == 0 || add.len() != order * order || left.len() != n * order || right.len() != n * order {
            return Err(AlgebraError::BimoduleAxiom("table shapes do not match".into()));
        }
        if zero >= order {
            return Err(AlgebraError::OutOfRange { index: zero, order });
        }
        if let Some(&bad) = add.iter().chain(&left).chain(&right).find(|&&v| v >= order) {
            return Err(AlgebraError::OutOfRange { index: bad, order });
        }
        let mut neg = vec![0 as Cell; order];
        for a in 0..order {
            match (0..order).find(|&b| add[a * order + b] == zero) {
                Some(b) => neg[a] = b as Cell,
                None => {
                    return Err(AlgebraError::BimoduleAxiom(format!("{a} has no additive inverse")))
                }
            }
        }
        let pack = |v: Vec<usize>| v.into_iter().map(|x| x as Cell).collect::<Vec<_>>();
        let module = FiniteBimodule {
            ring: ring.clone(),
            order,
            add: pack(add),
            neg,
            left: pack(left),
            right: pack(right),
            zero,
            construction,
        };
        module.verify_axioms(limits)?;
        Ok(module)
    }

    /// `R` acting on itself from both sides.
    pub fn regular(ring: &Arc<FiniteRing>) -> Self {
        let n = ring.order();
        let mut left = Vec::with_capacity(n * n);
        let mut right = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                left.push(ring.mul(a, b));
                right.push(ring.mul(a, b));
            }
        }
        Self::from_tables(
            ring,
            n,
            ring.add_table(),
            left,
            right,
            ring.zero(),
            ModuleConstruction::Regular,
            &Limits::default(),
        )
        .expect("the regular bimodule satisfies the axioms")
    }

    /// `R(σ)`: left action is multiplication, right action `m·r = m·σ(r)`.
    pub fn twisted(sigma: &RingMorphism) -> Result<Self> {
        let ring = sigma.source();
        if !sigma.source().same_tables(sigma.target()) {
            return Err(AlgebraError::Precondition("σ must be an endomorphism".into()));
        }
        let n = ring.order();
        let mut left = Vec::with_capacity(n * n);
        let mut right = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                left.push(ring.mul(a, b));
                right.push(ring.mul(a, sigma.apply(b)));
            }
        }
        Self::from_tables(
            ring,
            n,
            ring.add_table(),
            left,
            right,
            ring.zero(),
            ModuleConstruction::Twisted(sigma.clone()),
            &Limits::default(),
        )
    }

    pub fn zero_module(ring: &Arc<FiniteRing>) -> Self {
        let n = ring.order();
        Self::from_tables(
            ring,
            1,
            vec![0],
            vec![0; n],
            vec![0; n],
            0,
            ModuleConstruction::Zero,
            &Limits::default(),
        )
        .expect("the zero module satisfies the axioms")
    }

    /// `M / N` for a sub-bimodule `N`.
    pub fn quotient(parent: &Arc<FiniteBimodule>, sub: &FixedBitSet) -> Result<Self> {
        if !parent.is_submodule(sub, None) {
            return Err(AlgebraError::NotClosed("sub-bimodule".into()));
        }
        let (class, reps) = crate::ring::cosets_of(parent.order, |a, b| parent.add(a, b), sub);
        let n = parent.ring.order();
        let k = reps.len();
        let mut add = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                add.push(class[parent.add(a, b)]);
            }
        }
        let mut left = Vec::with_capacity(n * k);
        for r in 0..n {
            for &m in &reps {
                left.push(class[parent.left_act(r, m)]);
            }
        }
        let mut right = Vec::with_capacity(n * k);
        for &m in &reps {
            for r in 0..n {
                right.push(class[parent.right_act(m, r)]);
            }
        }
        Self::from_tables(
            &parent.ring,
            k,
            add,
            left,
            right,
            class[parent.zero],
            ModuleConstruction::Quotient {
                parent: parent.clone(),
                representatives: reps,
            },
            &Limits::default(),
        )
    }

    /// The sub-bimodule on the given elements.
    pub fn submodule(parent: &Arc<FiniteBimodule>, sub: &FixedBitSet) -> Result<Self> {
        if !parent.is_submodule(sub, None) {
            return Err(AlgebraError::NotClosed("sub-bimodule".into()));
        }
        let elements: Vec<usize> = sub.ones().collect();
        Self::restrict(parent, &parent.ring, elements, |r| r, |elements| ModuleConstruction::Sub {
            parent: parent.clone(),
            elements,
        })
    }

    /// `M ⊕ N`, with `(m, n)` at index `m * N.order + n`.
    pub fn direct_sum(a: &Arc<FiniteBimodule>, b: &Arc<FiniteBimodule>) -> Result<Self> {
        if !a.ring.same_tables(&b.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let (p, q, n) = (a.order, b.order, a.ring.order());
        let k = p * q;
        let mut add = Vec::with_capacity(k * k);
        for x in 0..k {
            for y in 0..k {
                add.push(a.add(x / q, y / q) * q + b.add(x % q, y % q));
            }
        }
        let mut left = Vec::with_capacity(n * k);
        for r in 0..n {
            for x in 0..k {
                left.push(a.left_act(r, x / q) * q + b.left_act(r, x % q));
            }
        }
        let mut right = Vec::with_capacity(n * k);
        for x in 0..k {
            for r in 0..n {
                right.push(a.right_act(x / q, r) * q + b.right_act(x % q, r));
            }
        }
        Self::from_tables(
            &a.ring,
            k,
            add,
            left,
            right,
            a.zero * q + b.zero,
            ModuleConstruction::DirectSum(a.clone(), b.clone()),
            &Limits::default(),
        )
    }

    /// `eM` as a bimodule over the corner ring `eR`, for a central idempotent `e`
    /// that commutes with every module element.
    pub fn corner(parent: &Arc<FiniteBimodule>, factor: &CornerFactor) -> Result<Self> {
        let e = factor.idempotent;
        let corner_elements = match factor.ring.construction() {
            Construction::Corner { elements, .. } => elements.clone(),
            _ => return Err(AlgebraError::Precondition("factor is not a corner ring".into())),
        };
        let set: BTreeSet<usize> = (0..parent.order).map(|m| parent.left_act(e, m)).collect();
        let elements: Vec<usize> = set.into_iter().collect();
        for &x in &elements {
            if parent.right_act(x, e) != x {
                return Err(AlgebraError::Precondition(format!(
                    "idempotent {e} does not commute with module element {x}"
                )));
            }
        }
        Self::restrict(
            parent,
            &factor.ring,
            elements,
            |r| corner_elements[r],
            |elements| ModuleConstruction::Corner {
                parent: parent.clone(),
                idempotent: e,
                elements,
            },
        )
    }

    /// Restricts to `elements` (closed under the actions of `ring`, whose
    /// element `r` corresponds to `lift(r)` in the parent ring).
    fn restrict(
        parent: &Arc<FiniteBimodule>,
        ring: &Arc<FiniteRing>,
        elements: Vec<usize>,
        lift: impl Fn(usize) -> usize,
        make: impl FnOnce(Vec<usize>) -> ModuleConstruction,
    ) -> Result<Self> {
        let mut index = vec![usize::MAX; parent.order];
        for (i, &x) in elements.iter().enumerate() {
            index[x] = i;
        }
        let lookup = |x: usize| -> Result<usize> {
            match index[x] {
                usize::MAX => Err(AlgebraError::NotClosed("restricted module".into())),
                i => Ok(i),
            }
        };
        let k = elements.len();
        let n = ring.order();
        let mut add = Vec::with_capacity(k * k);
        for &a in &elements {
            for &b in &elements {
                add.push(lookup(parent.add(a, b))?);
            }
        }
        let mut left = Vec::with_capacity(n * k);
        for r in 0..n {
            for &m in &elements {
                left.push(lookup(parent.left_act(lift(r), m))?);
            }
        }
        let mut right = Vec::with_capacity(n * k);
        for &m in &elements {
            for r in 0..n {
                right.push(lookup(parent.right_act(m, lift(r)))?);
            }
        }
        let zero = lookup(parent.zero)?;
        Self::from_tables(ring, k, add, left, right, zero, make(elements), &Limits::default())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// `r·m`.
    #[inline]
    pub fn left_act(&self, r: usize, m: usize) -> usize {
        self.left[r * self.order + m] as usize
    }

    /// `m·r`.
    #[inline]
    pub fn right_act(&self, m: usize, r: usize) -> usize {
        self.right[m * self.ring.order() + r] as usize
    }

    pub fn construction(&self) -> &ModuleConstruction {
        &self.construction
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_zero_module(&self) -> bool {
        self.order == 1
    }

    pub fn empty_subset(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order)
    }

    pub fn full_subset(&self) -> FixedBitSet {
        let mut s = self.empty_subset();
        s.insert_range(..);
        s
    }

    /// Table equality, including the ring.
    pub fn same_tables(&self, other: &FiniteBimodule) -> bool {
        self.ring.same_tables(&other.ring)
            && self.order == other.order
            && self.zero == other.zero
            && self.add == other.add
            && self.left == other.left
            && self.right == other.right
    }

    /// Closed under addition, and under the action of the given side (both when `None`).
    pub fn is_submodule(&self, set: &FixedBitSet, side: Option<Side>) -> bool {
        if set.len() != self.order || !set.contains(self.zero) {
            return false;
        }
        let members: Vec<usize> = set.ones().collect();
        let additive = members
            .iter()
            .all(|&a| members.iter().all(|&b| set.contains(self.add(a, b))));
        let left = || {
            members
                .iter()
                .all(|&m| self.ring.elements().all(|r| set.contains(self.left_act(r, m))))
        };
        let right = || {
            members
                .iter()
                .all(|&m| self.ring.elements().all(|r| set.contains(self.right_act(m, r))))
        };
        additive
            && match side {
                Some(Side::Left) => left(),
                Some(Side::Right) => right(),
                None => left() && right(),
            }
    }

    /// Exhaustive when `ring.order · order` is at most `limits.module_exhaustive_cap`.
    pub fn verify_axioms(&self, limits: &Limits) -> Result<()> {
        let ring = &self.ring;
        let fail = |msg: String| Err(AlgebraError::BimoduleAxiom(msg));
        for a in self.elements() {
            if self.add(a, self.zero) != a {
                return fail(format!("{a}+0 != {a}"));
            }
            if self.left_act(ring.one(), a) != a || self.right_act(a, ring.one()) != a {
                return fail(format!("identity does not act trivially on {a}"));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return fail(format!("addition not commutative at ({a},{b})"));
                }
            }
        }
        let check_mmm = |a: usize, b: usize, c: usize| {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return fail(format!("addition not associative at ({a},{b},{c})"));
            }
            Ok(())
        };
        let check_rsm = |r: usize, s: usize, m: usize| {
            if self.left_act(ring.mul(r, s), m) != self.left_act(r, self.left_act(s, m)) {
                return fail(format!("(rs)m != r(sm) at r={r}, s={s}, m={m}"));
            }
            if self.right_act(m, ring.mul(r, s)) != self.right_act(self.right_act(m, r), s) {
                return fail(format!("m(rs) != (mr)s at r={r}, s={s}, m={m}"));
            }
            if self.left_act(ring.add(r, s), m) != self.add(self.left_act(r, m), self.left_act(s, m)) {
                return fail(format!("(r+s)m != rm+sm at r={r}, s={s}, m={m}"));
            }
            if self.right_act(m, ring.add(r, s)) != self.add(self.right_act(m, r), self.right_act(m, s)) {
                return fail(format!("m(r+s) != mr+ms at r={r}, s={s}, m={m}"));
            }
            if self.right_act(self.left_act(r, m), s) != self.left_act(r, self.right_act(m, s)) {
                return fail(format!("(rm)s != r(ms) at r={r}, s={s}, m={m}"));
            }
            Ok(())
        };
        let check_rmn = |r: usize, m: usize, n: usize| {
            if self.left_act(r, self.add(m, n)) != self.add(self.left_act(r, m), self.left_act(r, n)) {
                return fail(format!("r(m+n) != rm+rn at r={r}, m={m}, n={n}"));
            }
            if self.right_act(self.add(m, n), r) != self.add(self.right_act(m, r), self.right_act(n, r)) {
                return fail(format!("(m+n)r != mr+nr at r={r}, m={m}, n={n}"));
            }
            Ok(())
        };
        let (nr, nm) = (ring.order(), self.order);
        if nr * nm <= limits.module_exhaustive_cap {
            for a in 0..nm {
                for b in 0..nm {
                    for c in 0..nm {
                        check_mmm(a, b, c)?;
                    }
                }
            }
            for r in 0..nr {
                for s in 0..nr {
                    for m in 0..nm {
                        check_rsm(r, s, m)?;
                    }
                }
                for m in 0..nm {
                    for n in 0..nm {
                        check_rmn(r, m, n)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
            for _ in 0..limits.samples {
                check_mmm(rng.gen_range(0..nm), rng.gen_range(0..nm), rng.gen_range(0..nm))?;
                check_rsm(rng.gen_range(0..nr), rng.gen_range(0..nr), rng.gen_range(0..nm))?;
                check_rmn(rng.gen_range(0..nr), rng.gen_range(0..nm), rng.gen_range(0..nm))?;
            }
        }
        Ok(())
    }

    pub fn label(&self, m: usize) -> String {
        match &self.construction {
            ModuleConstruction::Regular | ModuleConstruction::Twisted(_) => self.ring.label(m),
            ModuleConstruction::Zero => "0".into(),
            ModuleConstruction::Quotient {
                parent,
                representatives,
            } => format!("[{}]", parent.label(representatives[m])),
            ModuleConstruction::Sub { parent, elements }
            | ModuleConstruction::Corner {
                parent, elements, ..
            } => parent.label(elements[m]),
            ModuleConstruction::DirectSum(a, b) => {
                format!("({},{})", a.label(m / b.order()), b.label(m % b.order()))
            }
        }
    }
}
