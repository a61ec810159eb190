//! Finite associative unital rings stored as dense operation tables.
//!
//! Elements are the indices `0..order`. The zero element always sits at
//! index 0; the position of the identity depends on the construction (see
//! [`FiniteRing::normalized`] for a copy with the identity moved to index 1).

mod build;
mod ideals;
mod morphism;
mod structure;
mod table;

pub use build::Builder;
pub use morphism::RingMorphism;
pub use structure::{CornerFactor, RadicalData};
pub use table::{parse_table, render_table};
pub(crate) use build::cosets as cosets_of;
pub(crate) use build::is_prime;

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bimodule::FiniteBimodule;
use crate::error::{AlgebraError, Result};
use crate::Limits;

/// Element storage width. Orders are bounded by `u16::MAX + 1`.
pub(crate) type Cell = u16;

/// Largest order representable by the table encoding.
pub const MAX_ORDER: usize = 1 << 16;

/// How a ring was obtained. Used for element labels and for spec rendering.
#[derive(Clone)]
pub enum Construction {
    Cyclic(usize),
    /// Polynomial residues over F_p; `modulus` is monic, lowest degree first.
    Galois { p: u64, modulus: Vec<u64> },
    Matrix { k: usize, base: Arc<FiniteRing> },
    Product(Arc<FiniteRing>, Arc<FiniteRing>),
    /// Cosets of a two-sided ideal; `representatives[c]` is the least element of class `c`.
    Quotient {
        base: Arc<FiniteRing>,
        generators: Vec<usize>,
        representatives: Vec<usize>,
    },
    /// The corner ring `eRe`, listing the base elements it contains.
    Corner {
        base: Arc<FiniteRing>,
        idempotent: usize,
        elements: Vec<usize>,
    },
    TrivialExtension {
        base: Arc<FiniteRing>,
        module: Arc<FiniteBimodule>,
    },
    Table { name: String },
}

impl fmt::Debug for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Cyclic(n) => write!(f, "Cyclic({n})"),
            Construction::Galois { p, modulus } => write!(f, "Galois({p}, {modulus:?})"),
            Construction::Matrix { k, base } => write!(f, "Matrix({k}, order {})", base.order()),
            Construction::Product(l, r) => write!(f, "Product({}, {})", l.order(), r.order()),
            Construction::Quotient { base, generators, .. } => {
                write!(f, "Quotient(order {}, {generators:?})", base.order())
            }
            Construction::Corner { idempotent, .. } => write!(f, "Corner(e={idempotent})"),
            Construction::TrivialExtension { base, module } => {
                write!(f, "TrivialExtension({}, {})", base.order(), module.order())
            }
            Construction::Table { name } => write!(f, "Table({name})"),
        }
    }
}

/// A finite ring with dense addition and multiplication tables.
#[derive(Clone)]
pub struct FiniteRing {
    order: usize,
    add: Vec<Cell>,
    mul: Vec<Cell>,
    neg: Vec<Cell>,
    zero: usize,
    one: usize,
    construction: Construction,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order)
            .field("one", &self.one)
            .field("construction", &self.construction)
            .finish()
    }
}

impl FiniteRing {
    /// Assembles a ring from raw tables and verifies every axiom.
    pub fn from_tables(
        order: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        construction: Construction,
        limits: &Limits,
    ) -> Result<Self> {
        let ring = Self::from_tables_unchecked(order, add, mul, zero, one, construction, limits)?;
        ring.verify_axioms(limits)?;
        Ok(ring)
    }

    /// Assembles a ring, checking only shapes and the additive inverse table.
    pub(crate) fn from_tables_unchecked(
        order: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        construction: Construction,
        limits: &Limits,
    ) -> Result<Self> {
        limits.check_order(order as u128)?;
        if order == 0 {
            return Err(AlgebraError::RingAxiom("a ring has at least one element".into()));
        }
        if add.len() != order * order || mul.len() != order * order {
            return Err(AlgebraError::RingAxiom("tables must be order x order".into()));
        }
        for &(name, idx) in &[("zero", zero), ("one", one)] {
            if idx >= order {
                return Err(AlgebraError::RingAxiom(format!("{name} index {idx} out of range")));
            }
        }
        if let Some(bad) = add.iter().chain(mul.iter()).find(|&&v| v >= order) {
            return Err(AlgebraError::OutOfRange { index: *bad, order });
        }
        let add: Vec<Cell> = add.into_iter().map(|v| v as Cell).collect();
        let mul: Vec<Cell> = mul.into_iter().map(|v| v as Cell).collect();
        let mut neg = vec![Cell::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| add[a * order + b] as usize == zero) {
                Some(b) => neg[a] = b as Cell,
                None => {
                    return Err(AlgebraError::RingAxiom(format!("{a} has no additive inverse")))
                }
            }
        }
        Ok(FiniteRing {
            order,
            add,
            mul,
            neg,
            zero,
            one,
            construction,
        })
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
    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn add_table(&self) -> Vec<usize> {
        self.add.iter().map(|&v| v as usize).collect()
    }

    pub fn mul_table(&self) -> Vec<usize> {
        self.mul.iter().map(|&v| v as usize).collect()
    }

    /// `a^k` using repeated multiplication.
    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Integer multiple `k·a`.
    pub fn times(&self, k: usize, a: usize) -> usize {
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add(acc, a);
        }
        acc
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Structural equality of the operation tables.
    pub fn same_tables(&self, other: &FiniteRing) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }

    pub fn empty_subset(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order)
    }

    pub fn full_subset(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.order);
        s.insert_range(..);
        s
    }

    /// Exhaustive axiom check up to `limits.exhaustive_cap`, seeded sampling above.
    pub fn verify_axioms(&self, limits: &Limits) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return Err(AlgebraError::RingAxiom(format!("{a}+0 != {a}")));
            }
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return Err(AlgebraError::RingAxiom(format!("1 is not an identity for {a}")));
            }
            for b in (a + 1)..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(AlgebraError::RingAxiom(format!("addition of {a},{b} not commutative")));
                }
            }
        }
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(AlgebraError::RingAxiom(format!("addition not associative at ({a},{b},{c})")));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(AlgebraError::RingAxiom(format!(
                    "multiplication not associative at ({a},{b},{c})"
                )));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(AlgebraError::RingAxiom(format!("left distributivity fails at ({a},{b},{c})")));
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return Err(AlgebraError::RingAxiom(format!("right distributivity fails at ({a},{b},{c})")));
            }
            Ok(())
        };
        if n <= limits.exhaustive_cap {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
            for _ in 0..limits.samples {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    /// Copy with the identity moved to index 1 (when the ring is nonzero),
    /// together with the permutation `old index -> new index`.
    pub fn normalized(&self) -> (FiniteRing, Vec<usize>) {
        let n = self.order;
        let mut perm: Vec<usize> = (0..n).collect();
        if n > 1 && self.one != 1 {
            perm.swap(1, self.one);
        }
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add(a, b)];
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        let ring = FiniteRing {
            order: n,
            add: add.into_iter().map(|v| v as Cell).collect(),
            mul: mul.into_iter().map(|v| v as Cell).collect(),
            neg: {
                let mut neg = vec![0; n];
                for a in 0..n {
                    neg[perm[a]] = perm[self.neg(a)] as Cell;
                }
                neg
            },
            zero: perm[self.zero],
            one: perm[self.one],
            construction: Construction::Table {
                name: "normalized".into(),
            },
        };
        (ring, perm)
    }

    /// Human-readable rendering of an element according to the construction.
    pub fn label(&self, a: usize) -> String {
        match &self.construction {
            Construction::Cyclic(_) | Construction::Table { .. } => a.to_string(),
            Construction::Galois { p, modulus } => {
                let deg = modulus.len() - 1;
                let mut coeffs = Vec::with_capacity(deg);
                let mut rest = a as u64;
                for _ in 0..deg {
                    coeffs.push(rest % p);
                    rest /= p;
                }
                poly_label(&coeffs)
            }
            Construction::Matrix { k, base } => {
                let entries = build::matrix_digits(a, *k, base.order());
                let rows: Vec<String> = entries
                    .chunks(*k)
                    .map(|row| {
                        let cells: Vec<String> = row.iter().map(|&e| base.label(e)).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Construction::Product(l, r) => {
                format!("({},{})", l.label(a / r.order()), r.label(a % r.order()))
            }
            Construction::Quotient {
                base,
                representatives,
                ..
            } => format!("[{}]", base.label(representatives[a])),
            Construction::Corner { base, elements, .. } => base.label(elements[a]),
            Construction::TrivialExtension { base, module } => {
                let m = module.order();
                format!("({},{})", base.label(a / m), module.label(a % m))
            }
        }
    }
}

/// Renders coefficients (lowest degree first) as a polynomial in `x`.
pub(crate) fn poly_label(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        let term = match i {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Collects the members of a bitset in ascending order.
pub fn members(set: &FixedBitSet) -> Vec<usize> {
    set.ones().collect()
}

/// Bitset of the given capacity containing `items`.
pub fn subset_of(capacity: usize, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(capacity);
    for i in items {
        s.insert(i);
    }
    s
}

/// `I + J` for additive subgroups, by adding one coset of `I` per new element of `J`.
pub(crate) fn subgroup_sum(
    capacity: usize,
    add: impl Fn(usize, usize) -> usize,
    left: &FixedBitSet,
    right: &FixedBitSet,
) -> FixedBitSet {
    let mut out = left.clone();
    let base: Vec<usize> = left.ones().collect();
    for j in right.ones() {
        if out.contains(j) {
            continue;
        }
        for &i in &base {
            out.insert(add(i, j));
        }
    }
    debug_assert_eq!(out.len(), capacity);
    out
}
