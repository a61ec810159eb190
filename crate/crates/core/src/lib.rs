//! Exact computations with finite rings, bimodules and trivial extensions
//! `R ∝ M`, together with symbolic arithmetic in `Q(R)/R` for the integers
//! and for polynomials over a prime field.
//!
//! Finite structures are stored as dense tables and every property
//! (morphic, quasi-morphic, regular, Bézout) is decided by exhaustive search
//! with re-verified witnesses. The infinite torsion module `Q(R)/R` is handled
//! with closed-form annihilator descriptions instead.

pub mod bimodule;
pub mod cli;
pub mod error;
pub mod matrix;
pub mod morphic;
pub mod ring;
pub mod structure;
pub mod torsion;
pub mod trivext;

pub use bimodule::{FiniteBimodule, Side, SubsetHandle};
pub use error::{AlgebraError, Result};
pub use ring::{FiniteRing, RingMorphism};

use ring::MAX_ORDER;

/// Size limits and sampling parameters shared by constructors and deciders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring or module order that may be materialized.
    pub order_cap: usize,
    /// Ring axioms are checked over all triples up to this order.
    pub exhaustive_cap: usize,
    /// Bimodule axioms are checked exhaustively while `ring.order * order` stays below this.
    pub module_exhaustive_cap: usize,
    /// Number of seeded random triples used above the exhaustive caps.
    pub samples: usize,
    /// Master seed for every sampled check.
    pub seed: u64,
    /// Largest ring on which element-level deciders scan every element.
    pub scan_cap: usize,
    /// Above `scan_cap`, scan a seeded sample instead of failing.
    pub allow_sampling: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: 8192,
            exhaustive_cap: 256,
            module_exhaustive_cap: 1 << 16,
            samples: 100_000,
            seed: 0,
            scan_cap: 4096,
            allow_sampling: true,
        }
    }
}

impl Limits {
    /// Fails when `order` exceeds the configured cap or the table encoding.
    pub fn check_order(&self, order: u128) -> Result<()> {
        let cap = self.order_cap.min(MAX_ORDER);
        if order > cap as u128 {
            return Err(AlgebraError::CapExceeded { order, cap });
        }
        Ok(())
    }
}
