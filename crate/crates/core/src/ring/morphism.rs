use std::fmt;
use std::sync::Arc;

use super::{Construction, FiniteRing};
use crate::error::{AlgebraError, Result};

/// A validated unital ring homomorphism, stored as an image array.
#[derive(Clone)]
pub struct RingMorphism {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    image: Vec<usize>,
    bijective: bool,
}

impl fmt::Debug for RingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingMorphism")
            .field("image", &self.image)
            .field("bijective", &self.bijective)
            .finish()
    }
}

impl RingMorphism {
    /// Validates `image` as a homomorphism `source -> target`.
    pub fn check(source: &Arc<FiniteRing>, target: &Arc<FiniteRing>, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.order() {
            return Err(AlgebraError::NotHomomorphism(format!(
                "image has length {} but the source has {} elements",
                image.len(),
                source.order()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&v| v >= target.order()) {
            return Err(AlgebraError::OutOfRange {
                index: bad,
                order: target.order(),
            });
        }
        if image[source.one()] != target.one() {
            return Err(AlgebraError::NotHomomorphism(format!(
                "one maps to {} instead of {}",
                image[source.one()],
                target.one()
            )));
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.add(a, b)] != target.add(image[a], image[b]) {
                    return Err(AlgebraError::NotHomomorphism(format!("additivity fails at ({a},{b})")));
                }
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(AlgebraError::NotHomomorphism(format!(
                        "multiplicativity fails at ({a},{b})"
                    )));
                }
            }
        }
        let mut seen = vec![false; target.order()];
        let mut bijective = source.order() == target.order();
        for &v in &image {
            if seen[v] {
                bijective = false;
            }
            seen[v] = true;
        }
        Ok(RingMorphism {
            source: source.clone(),
            target: target.clone(),
            image,
            bijective,
        })
    }

    /// Endomorphism check: `source == target`.
    pub fn endomorphism(ring: &Arc<FiniteRing>, image: Vec<usize>) -> Result<Self> {
        Self::check(ring, ring, image)
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> Self {
        Self::endomorphism(ring, ring.elements().collect()).expect("identity is a homomorphism")
    }

    /// `a -> a^p` on a ring built as a Galois field of characteristic `p`.
    pub fn frobenius(ring: &Arc<FiniteRing>) -> Result<Self> {
        let p = match ring.construction() {
            Construction::Galois { p, .. } => *p,
            Construction::Cyclic(n) if super::build::is_prime(*n as u64) => *n as u64,
            _ => {
                return Err(AlgebraError::Precondition(
                    "frobenius needs a Galois field".into(),
                ))
            }
        };
        Self::endomorphism(ring, ring.elements().map(|a| ring.pow(a, p)).collect())
    }

    /// `a -> u·a·u⁻¹` for a unit `u`.
    pub fn conjugation(ring: &Arc<FiniteRing>, u: usize) -> Result<Self> {
        if u >= ring.order() {
            return Err(AlgebraError::OutOfRange {
                index: u,
                order: ring.order(),
            });
        }
        let inv = ring
            .inverse(u)
            .ok_or_else(|| AlgebraError::Precondition(format!("{} is not a unit", ring.label(u))))?;
        Self::endomorphism(
            ring,
            ring.elements().map(|a| ring.mul(ring.mul(u, a), inv)).collect(),
        )
    }

    /// `(l, r) -> (r, l)` on a product of two identical factors.
    pub fn swap(ring: &Arc<FiniteRing>) -> Result<Self> {
        match ring.construction() {
            Construction::Product(l, r) if l.same_tables(r) => {
                let q = r.order();
                Self::endomorphism(
                    ring,
                    ring.elements().map(|a| (a % q) * q + a / q).collect(),
                )
            }
            _ => Err(AlgebraError::Precondition(
                "swap needs a product of two identical factors".into(),
            )),
        }
    }

    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    /// Bijective endomorphism.
    pub fn is_automorphism(&self) -> bool {
        self.bijective && Arc::ptr_eq(&self.source, &self.target)
            || self.bijective && self.source.same_tables(&self.target)
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Elements moved by the map.
    pub fn moved(&self) -> impl Iterator<Item = usize> + '_ {
        self.image.iter().enumerate().filter(|(i, v)| *i != **v).map(|(i, _)| i)
    }
}
