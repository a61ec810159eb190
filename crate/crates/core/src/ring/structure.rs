use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::FiniteRing;
use crate::error::Result;

/// Units, idempotents and the Jacobson radical of a finite ring.
#[derive(Debug, Clone)]
pub struct RadicalData {
    pub units: FixedBitSet,
    pub inverse: Vec<Option<usize>>,
    pub idempotents: FixedBitSet,
    pub central_idempotents: FixedBitSet,
    pub jacobson_radical: FixedBitSet,
}

/// One block `eR` of the central decomposition.
#[derive(Debug, Clone)]
pub struct CornerFactor {
    pub idempotent: usize,
    pub ring: Arc<FiniteRing>,
}

impl FiniteRing {
    /// Two-sided inverse. A one-sided inverse is automatically two-sided in a finite ring.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.elements()
            .find(|&b| self.mul(a, b) == self.one())
            .filter(|&b| self.mul(b, a) == self.one())
    }

    /// Inverse table for every element.
    pub fn inverses(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.order()];
        for a in self.elements() {
            if inv[a].is_some() {
                continue;
            }
            if let Some(b) = self.inverse(a) {
                inv[a] = Some(b);
                inv[b] = Some(a);
            }
        }
        inv
    }

    pub fn units(&self) -> FixedBitSet {
        let mut s = self.empty_subset();
        for (a, inv) in self.inverses().iter().enumerate() {
            if inv.is_some() {
                s.insert(a);
            }
        }
        s
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> FixedBitSet {
        let mut s = self.empty_subset();
        for e in self.elements().filter(|&e| self.is_idempotent(e)) {
            s.insert(e);
        }
        s
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.elements().all(|r| self.mul(a, r) == self.mul(r, a))
    }

    pub fn central_idempotents(&self) -> FixedBitSet {
        let mut s = self.empty_subset();
        for e in self.elements().filter(|&e| self.is_idempotent(e) && self.is_central(e)) {
            s.insert(e);
        }
        s
    }

    /// `J(R) = { x : 1 - r·x is a unit for every r }`.
    pub fn jacobson_radical(&self) -> FixedBitSet {
        self.radical_with_units(&self.units())
    }

    fn radical_with_units(&self, units: &FixedBitSet) -> FixedBitSet {
        let mut s = self.empty_subset();
        for x in self.elements() {
            if self
                .elements()
                .all(|r| units.contains(self.sub(self.one(), self.mul(r, x))))
            {
                s.insert(x);
            }
        }
        s
    }

    pub fn radical_data(&self) -> RadicalData {
        let inverse = self.inverses();
        let mut units = self.empty_subset();
        for (a, inv) in inverse.iter().enumerate() {
            if inv.is_some() {
                units.insert(a);
            }
        }
        RadicalData {
            jacobson_radical: self.radical_with_units(&units),
            units,
            inverse,
            idempotents: self.idempotents(),
            central_idempotents: self.central_idempotents(),
        }
    }

    /// Nonzero central idempotents that do not split into two nonzero
    /// orthogonal central idempotents. Ascending by index.
    pub fn primitive_central_idempotents(&self) -> Vec<usize> {
        let central: Vec<usize> = self.central_idempotents().ones().collect();
        central
            .iter()
            .copied()
            .filter(|&e| e != self.zero())
            .filter(|&e| {
                !central
                    .iter()
                    .any(|&f| f != self.zero() && f != e && self.mul(e, f) == f)
            })
            .collect()
    }

    /// Splits the ring along its primitive central idempotents into corner rings `eR`.
    pub fn central_decomposition(self: &Arc<Self>) -> Result<Vec<CornerFactor>> {
        self.primitive_central_idempotents()
            .into_iter()
            .map(|e| {
                Ok(CornerFactor {
                    idempotent: e,
                    ring: Arc::new(FiniteRing::corner(self, e)?),
                })
            })
            .collect()
    }

    /// Every non-unit lies in `J(R)`.
    pub fn is_local(&self) -> bool {
        let data = self.radical_data();
        self.order() > 1
            && self
                .elements()
                .all(|a| data.units.contains(a) || data.jacobson_radical.contains(a))
    }

    /// No nonzero nilpotent elements.
    pub fn is_reduced(&self) -> bool {
        self.elements().filter(|&a| a != self.zero()).all(|a| {
            let mut x = a;
            for _ in 0..self.order() {
                x = self.mul(x, a);
                if x == self.zero() {
                    return false;
                }
            }
            true
        })
    }
}
