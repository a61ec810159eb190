//! Annihilators, principal ideals and generated ideals as bitsets.

use fixedbitset::FixedBitSet;

use super::{subgroup_sum, FiniteRing};

impl FiniteRing {
    /// `ann_l(a) = { x : x·a = 0 }`.
    pub fn ann_left(&self, a: usize) -> FixedBitSet {
        let mut s = self.empty_subset();
        for x in self.elements() {
            if self.mul(x, a) == self.zero() {
                s.insert(x);
            }
        }
        s
    }

    /// `ann_r(a) = { x : a·x = 0 }`.
    pub fn ann_right(&self, a: usize) -> FixedBitSet {
        let mut s = self.empty_subset();
        for x in self.elements() {
            if self.mul(a, x) == self.zero() {
                s.insert(x);
            }
        }
        s
    }

    /// Left annihilator of a whole set.
    pub fn ann_left_of_set(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut s = self.full_subset();
        for a in set.ones() {
            s.intersect_with(&self.ann_left(a));
        }
        s
    }

    /// `Ra`.
    pub fn principal_left(&self, a: usize) -> FixedBitSet {
        let mut s = self.empty_subset();
        for r in self.elements() {
            s.insert(self.mul(r, a));
        }
        s
    }

    /// `aR`.
    pub fn principal_right(&self, a: usize) -> FixedBitSet {
        let mut s = self.empty_subset();
        for r in self.elements() {
            s.insert(self.mul(a, r));
        }
        s
    }

    /// `RaR` additively closed.
    pub fn principal_two_sided(&self, a: usize) -> FixedBitSet {
        self.two_sided_ideal(&[a])
    }

    fn additively_closed(&self, set: &FixedBitSet) -> bool {
        set.contains(self.zero())
            && set
                .ones()
                .all(|a| set.ones().all(|b| set.contains(self.add(a, b))))
    }

    pub fn is_left_ideal(&self, set: &FixedBitSet) -> bool {
        self.additively_closed(set)
            && set
                .ones()
                .all(|a| self.elements().all(|r| set.contains(self.mul(r, a))))
    }

    pub fn is_right_ideal(&self, set: &FixedBitSet) -> bool {
        self.additively_closed(set)
            && set
                .ones()
                .all(|a| self.elements().all(|r| set.contains(self.mul(a, r))))
    }

    pub fn is_two_sided_ideal(&self, set: &FixedBitSet) -> bool {
        self.is_left_ideal(set) && self.is_right_ideal(set)
    }

    /// Additive subgroup generated by `items`.
    pub fn additive_span(&self, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut span = self.empty_subset();
        span.insert(self.zero());
        for t in items {
            if span.contains(t) {
                continue;
            }
            let mut cyclic = self.empty_subset();
            let mut x = self.zero();
            loop {
                cyclic.insert(x);
                x = self.add(x, t);
                if x == self.zero() {
                    break;
                }
            }
            span = subgroup_sum(self.order(), |a, b| self.add(a, b), &span, &cyclic);
        }
        span
    }

    /// Two-sided ideal generated by `generators`.
    pub fn two_sided_ideal(&self, generators: &[usize]) -> FixedBitSet {
        let mut products = self.empty_subset();
        for &g in generators {
            for r in self.elements() {
                let rg = self.mul(r, g);
                for s in self.elements() {
                    products.insert(self.mul(rg, s));
                }
            }
        }
        self.additive_span(products.ones().collect::<Vec<_>>())
    }

    /// Left ideal generated by `generators`.
    pub fn left_ideal(&self, generators: &[usize]) -> FixedBitSet {
        let mut acc = self.empty_subset();
        acc.insert(self.zero());
        for &g in generators {
            acc = subgroup_sum(self.order(), |a, b| self.add(a, b), &acc, &self.principal_left(g));
        }
        acc
    }

    /// Right ideal generated by `generators`.
    pub fn right_ideal(&self, generators: &[usize]) -> FixedBitSet {
        let mut acc = self.empty_subset();
        acc.insert(self.zero());
        for &g in generators {
            acc = subgroup_sum(self.order(), |a, b| self.add(a, b), &acc, &self.principal_right(g));
        }
        acc
    }

    /// Sum of two additive subgroups of the ring.
    pub fn subgroup_sum(&self, left: &FixedBitSet, right: &FixedBitSet) -> FixedBitSet {
        subgroup_sum(self.order(), |a, b| self.add(a, b), left, right)
    }
}
