//! Annihilators, cyclic submodules, principal generators and the Bézout scan.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{FiniteBimodule, Parent, Role, Side, SubsetHandle};
use crate::error::{AlgebraError, Result};
use crate::ring::{subgroup_sum, FiniteRing};

/// The four annihilators linking a module element `m` and a ring element `a`.
#[derive(Debug, Clone)]
pub struct Annihilators {
    /// `ann_l^R(m) = { r : r·m = 0 }`
    pub ring_left: SubsetHandle,
    /// `ann_r^R(m) = { r : m·r = 0 }`
    pub ring_right: SubsetHandle,
    /// `ann_l^M(a) = { x : x·a = 0 }`
    pub module_left: SubsetHandle,
    /// `ann_r^M(a) = { x : a·x = 0 }`
    pub module_right: SubsetHandle,
}

impl FiniteBimodule {
    fn check_module_index(&self, m: usize) -> Result<()> {
        if m >= self.order() {
            return Err(AlgebraError::OutOfRange {
                index: m,
                order: self.order(),
            });
        }
        Ok(())
    }

    fn check_ring_index(&self, a: usize) -> Result<()> {
        if a >= self.ring().order() {
            return Err(AlgebraError::OutOfRange {
                index: a,
                order: self.ring().order(),
            });
        }
        Ok(())
    }

    /// `ann_l^R(m)` as raw bits.
    pub fn ring_ann_left_bits(&self, m: usize) -> FixedBitSet {
        let ring = self.ring();
        let mut s = ring.empty_subset();
        for r in ring.elements().filter(|&r| self.left_act(r, m) == self.zero()) {
            s.insert(r);
        }
        s
    }

    /// `ann_r^R(m)` as raw bits.
    pub fn ring_ann_right_bits(&self, m: usize) -> FixedBitSet {
        let ring = self.ring();
        let mut s = ring.empty_subset();
        for r in ring.elements().filter(|&r| self.right_act(m, r) == self.zero()) {
            s.insert(r);
        }
        s
    }

    /// `ann_l^M(a)` as raw bits.
    pub fn module_ann_left_bits(&self, a: usize) -> FixedBitSet {
        let mut s = self.empty_subset();
        for x in self.elements().filter(|&x| self.right_act(x, a) == self.zero()) {
            s.insert(x);
        }
        s
    }

    /// `ann_r^M(a)` as raw bits.
    pub fn module_ann_right_bits(&self, a: usize) -> FixedBitSet {
        let mut s = self.empty_subset();
        for x in self.elements().filter(|&x| self.left_act(a, x) == self.zero()) {
            s.insert(x);
        }
        s
    }

    /// `ann_l^R(m)`, verified to be a left ideal.
    pub fn left_annihilator_of(&self, m: usize) -> Result<SubsetHandle> {
        self.check_module_index(m)?;
        SubsetHandle::in_ring(self.ring(), Role::LeftIdeal, self.ring_ann_left_bits(m))
    }

    /// All four annihilators for the module element `m` and ring element `a`.
    pub fn annihilators_all(&self, m: usize, a: usize) -> Result<Annihilators> {
        self.check_module_index(m)?;
        self.check_ring_index(a)?;
        Ok(Annihilators {
            ring_left: SubsetHandle::in_ring(self.ring(), Role::LeftIdeal, self.ring_ann_left_bits(m))?,
            ring_right: SubsetHandle::in_ring(self.ring(), Role::RightIdeal, self.ring_ann_right_bits(m))?,
            module_left: SubsetHandle::in_module(self, Role::LeftSubmodule, self.module_ann_left_bits(a))?,
            module_right: SubsetHandle::in_module(self, Role::RightSubmodule, self.module_ann_right_bits(a))?,
        })
    }

    /// `Rm` or `mR` as raw bits.
    pub fn cyclic_bits(&self, m: usize, side: Side) -> FixedBitSet {
        let mut s = self.empty_subset();
        for r in self.ring().elements() {
            s.insert(match side {
                Side::Left => self.left_act(r, m),
                Side::Right => self.right_act(m, r),
            });
        }
        s
    }

    /// `Rm` (left) or `mR` (right), verified as a one-sided submodule.
    pub fn cyclic_submodule(&self, m: usize, side: Side) -> Result<SubsetHandle> {
        self.check_module_index(m)?;
        let role = match side {
            Side::Left => Role::LeftSubmodule,
            Side::Right => Role::RightSubmodule,
        };
        SubsetHandle::in_module(self, role, self.cyclic_bits(m, side))
    }

    /// `Rm + Rn` (or the right-hand analogue).
    pub fn pair_sum(&self, m: usize, n: usize, side: Side) -> FixedBitSet {
        subgroup_sum(
            self.order(),
            |a, b| self.add(a, b),
            &self.cyclic_bits(m, side),
            &self.cyclic_bits(n, side),
        )
    }

    /// Least-index generator of a one-sided submodule, if it is cyclic.
    pub fn principal_generator(&self, set: &SubsetHandle, side: Side) -> Result<Option<usize>> {
        if set.parent() != Parent::Module {
            return Err(AlgebraError::Precondition("subset does not live in the module".into()));
        }
        Ok(principal_generator_in(set.bits(), |g| self.cyclic_bits(g, side)))
    }

    /// Least pair `(m, n)` for which `Rm + Rn` is not cyclic; `None` means Bézout.
    pub fn bezout_counterexample(&self, side: Side) -> Option<(usize, usize)> {
        bezout_counterexample(self.order(), |a, b| self.add(a, b), |g| self.cyclic_bits(g, side))
    }

    pub fn is_bezout(&self, side: Side) -> bool {
        self.bezout_counterexample(side).is_none()
    }

    /// Some `x` with `Rx = M` (or `xR = M`), least index first.
    pub fn cyclic_generator(&self, side: Side) -> Option<usize> {
        let full = self.full_subset();
        self.elements().find(|&x| self.cyclic_bits(x, side) == full)
    }
}

impl FiniteRing {
    /// `Ra` (left) or `aR` (right).
    pub fn principal(&self, a: usize, side: Side) -> FixedBitSet {
        match side {
            Side::Left => self.principal_left(a),
            Side::Right => self.principal_right(a),
        }
    }

    /// `ann_l(a)` (left) or `ann_r(a)` (right).
    pub fn annihilator(&self, a: usize, side: Side) -> FixedBitSet {
        match side {
            Side::Left => self.ann_left(a),
            Side::Right => self.ann_right(a),
        }
    }

    /// Least-index generator of a one-sided ideal, if it is principal.
    pub fn principal_generator(&self, set: &SubsetHandle, side: Side) -> Result<Option<usize>> {
        if set.parent() != Parent::Ring {
            return Err(AlgebraError::Precondition("subset does not live in the ring".into()));
        }
        Ok(principal_generator_in(set.bits(), |g| self.principal(g, side)))
    }

    pub fn bezout_counterexample(&self, side: Side) -> Option<(usize, usize)> {
        bezout_counterexample(self.order(), |a, b| self.add(a, b), |g| self.principal(g, side))
    }

    pub fn is_bezout(&self, side: Side) -> bool {
        self.bezout_counterexample(side).is_none()
    }
}

/// Least `g ∈ set` whose cyclic span equals `set`. Searching inside `set` is
/// complete since any generator `g` satisfies `g = 1·g ∈ set`.
pub fn principal_generator_in(set: &FixedBitSet, cyclic: impl Fn(usize) -> FixedBitSet) -> Option<usize> {
    set.ones().find(|&g| cyclic(g) == *set)
}

/// Scans pairs of distinct cyclic subsets (identified by least generator)
/// for a sum that is not cyclic.
pub fn bezout_counterexample(
    order: usize,
    add: impl Fn(usize, usize) -> usize + Copy,
    cyclic: impl Fn(usize) -> FixedBitSet,
) -> Option<(usize, usize)> {
    let mut generator_of: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut distinct: Vec<(usize, FixedBitSet)> = Vec::new();
    for g in 0..order {
        let c = cyclic(g);
        if !generator_of.contains_key(&c) {
            generator_of.insert(c.clone(), g);
            distinct.push((g, c));
        }
    }
    for (i, (m, cm)) in distinct.iter().enumerate() {
        for (n, cn) in &distinct[i + 1..] {
            let sum = subgroup_sum(order, add, cm, cn);
            if !generator_of.contains_key(&sum) {
                return Some((*m, *n));
            }
        }
    }
    None
}
