//! Trivial extensions `R ∝ M` materialized as finite rings.
//!
//! Elements are pairs `(r, m)` stored at index `r * |M| + m`. With
//! `M = R(σ)` the pair `(r, m)` reads as `r + m·t` in `R[t; σ]/(t²)`.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::bimodule::FiniteBimodule;
use crate::error::{AlgebraError, Result};
use crate::ring::{Construction, FiniteRing, RingMorphism};
use crate::Limits;

/// JSON shape of an element of a trivial extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub r: usize,
    pub m: usize,
}

/// `R ∝ M` together with the pair codec.
#[derive(Debug, Clone)]
pub struct TrivialExtensionRing {
    base: Arc<FiniteRing>,
    bimodule: Arc<FiniteBimodule>,
    ring: Arc<FiniteRing>,
}

/// Both descriptions of the corner `(e,0) S (e',0)`.
#[derive(Debug, Clone)]
pub struct CornerSets {
    /// `{ (e,0) s (e',0) : s ∈ S }`
    pub product: FixedBitSet,
    /// `{ (a, x) : a ∈ eRe', x ∈ eMe' }`
    pub componentwise: FixedBitSet,
}

impl TrivialExtensionRing {
    pub fn new(base: &Arc<FiniteRing>, bimodule: &Arc<FiniteBimodule>, limits: &Limits) -> Result<Self> {
        if !Arc::ptr_eq(base, bimodule.ring()) && !base.same_tables(bimodule.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        let nr = base.order();
        let nm = bimodule.order();
        limits.check_order(nr as u128 * nm as u128)?;
        let n = nr * nm;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for i in 0..n {
            let (r, m) = (i / nm, i % nm);
            for j in 0..n {
                let (s, k) = (j / nm, j % nm);
                add.push(base.add(r, s) * nm + bimodule.add(m, k));
                let module_part = bimodule.add(bimodule.left_act(r, k), bimodule.right_act(m, s));
                mul.push(base.mul(r, s) * nm + module_part);
            }
        }
        let construction = Construction::TrivialExtension {
            base: base.clone(),
            module: bimodule.clone(),
        };
        let ring = FiniteRing::from_tables(
            n,
            add,
            mul,
            base.zero() * nm + bimodule.zero(),
            base.one() * nm + bimodule.zero(),
            construction,
            limits,
        )?;
        Ok(TrivialExtensionRing {
            base: base.clone(),
            bimodule: bimodule.clone(),
            ring: Arc::new(ring),
        })
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn bimodule(&self) -> &Arc<FiniteBimodule> {
        &self.bimodule
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn encode(&self, r: usize, m: usize) -> usize {
        debug_assert!(r < self.base.order() && m < self.bimodule.order());
        r * self.bimodule.order() + m
    }

    pub fn decode(&self, i: usize) -> (usize, usize) {
        (i / self.bimodule.order(), i % self.bimodule.order())
    }

    pub fn to_json(&self, i: usize) -> PairJson {
        let (r, m) = self.decode(i);
        PairJson { r, m }
    }

    /// The square-zero ideal `0 ∝ M`.
    pub fn module_ideal(&self) -> FixedBitSet {
        let mut s = self.ring.empty_subset();
        for m in self.bimodule.elements() {
            s.insert(self.encode(self.base.zero(), m));
        }
        s
    }

    /// `J(R) ∝ M`, the radical predicted from the base.
    pub fn lifted_radical(&self) -> FixedBitSet {
        let mut s = self.ring.empty_subset();
        for r in self.base.jacobson_radical().ones() {
            for m in self.bimodule.elements() {
                s.insert(self.encode(r, m));
            }
        }
        s
    }

    /// `(r, m) ↦ r`.
    pub fn projection(&self) -> Result<RingMorphism> {
        let image = self.ring.elements().map(|i| self.decode(i).0).collect();
        RingMorphism::check(&self.ring, &self.base, image)
    }

    /// `(e,0) S (e',0)` computed directly and componentwise. The two must agree.
    pub fn corner_ring(&self, e: usize, e_prime: usize) -> Result<CornerSets> {
        for &x in &[e, e_prime] {
            if x >= self.base.order() {
                return Err(AlgebraError::OutOfRange {
                    index: x,
                    order: self.base.order(),
                });
            }
            if !self.base.is_idempotent(x) {
                return Err(AlgebraError::NotIdempotent(x));
            }
        }
        let left = self.encode(e, self.bimodule.zero());
        let right = self.encode(e_prime, self.bimodule.zero());
        let mut product = self.ring.empty_subset();
        for s in self.ring.elements() {
            product.insert(self.ring.mul(self.ring.mul(left, s), right));
        }
        let corner_r: Vec<usize> = {
            let mut set = self.base.empty_subset();
            for r in self.base.elements() {
                set.insert(self.base.mul(self.base.mul(e, r), e_prime));
            }
            set.ones().collect()
        };
        let corner_m: Vec<usize> = {
            let mut set = self.bimodule.empty_subset();
            for x in self.bimodule.elements() {
                set.insert(self.bimodule.right_act(self.bimodule.left_act(e, x), e_prime));
            }
            set.ones().collect()
        };
        let mut componentwise = self.ring.empty_subset();
        for &a in &corner_r {
            for &x in &corner_m {
                componentwise.insert(self.encode(a, x));
            }
        }
        if product != componentwise {
            return Err(AlgebraError::Alarm(format!(
                "corner (e,0)S(e',0) differs from eRe' ∝ eMe' for e={e}, e'={e_prime}"
            )));
        }
        Ok(CornerSets { product, componentwise })
    }
}

pub fn build_trivial_extension(base: &Arc<FiniteRing>, bimodule: &Arc<FiniteBimodule>) -> Result<TrivialExtensionRing> {
    TrivialExtensionRing::new(base, bimodule, &Limits::default())
}

/// `R ∝ R(σ) ≅ R[t; σ]/(t²)`.
pub fn skew_poly_quotient(sigma: &RingMorphism, limits: &Limits) -> Result<TrivialExtensionRing> {
    let module = Arc::new(FiniteBimodule::twisted(sigma)?);
    TrivialExtensionRing::new(sigma.source(), &module, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::members;

    fn cyclic(n: usize) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::cyclic(n).unwrap())
    }

    fn regular_ext(r: &Arc<FiniteRing>) -> TrivialExtensionRing {
        build_trivial_extension(r, &Arc::new(FiniteBimodule::regular(r))).unwrap()
    }

    #[test]
    fn z2_and_z4_products() {
        let s = regular_ext(&cyclic(2));
        let x = s.encode(1, 1);
        assert_eq!(s.decode(s.ring().mul(x, x)), (1, 0));
        let s = regular_ext(&cyclic(4));
        let x = s.encode(2, 1);
        assert_eq!(s.decode(s.ring().mul(x, x)), (0, 0));
        assert_eq!(s.ring().order(), 16);
        assert_eq!(s.ring().one(), s.encode(1, 0));
    }

    #[test]
    fn zero_module_gives_base() {
        let z6 = cyclic(6);
        let s = build_trivial_extension(&z6, &Arc::new(FiniteBimodule::zero_module(&z6))).unwrap();
        assert!(s.ring().same_tables(&z6));
    }

    #[test]
    fn codec_round_trip() {
        let s = regular_ext(&cyclic(3));
        for i in s.ring().elements() {
            let (r, m) = s.decode(i);
            assert_eq!(s.encode(r, m), i);
        }
        assert_eq!(s.to_json(7), PairJson { r: 2, m: 1 });
    }

    #[test]
    fn skew_frobenius_and_swap() {
        let f4 = Arc::new(FiniteRing::galois(2, &[1, 1, 1]).unwrap());
        let s = skew_poly_quotient(&RingMorphism::frobenius(&f4).unwrap(), &Limits::default()).unwrap();
        let lhs = s.ring().mul(s.encode(0, 1), s.encode(2, 0));
        assert_eq!(s.decode(lhs), (0, 3));

        let f2 = cyclic(2);
        let r = Arc::new(FiniteRing::product(&f2, &f2).unwrap());
        let s = skew_poly_quotient(&RingMorphism::swap(&r).unwrap(), &Limits::default()).unwrap();
        let e10 = r.pair_index(1, 0).unwrap();
        let lhs = s.ring().mul(s.encode(0, e10), s.encode(e10, 0));
        assert_eq!(s.decode(lhs), (0, 0));
    }

    #[test]
    fn identity_twist_matches_regular() {
        let z4 = cyclic(4);
        let a = skew_poly_quotient(&RingMorphism::identity(&z4), &Limits::default()).unwrap();
        assert!(a.ring().same_tables(regular_ext(&z4).ring()));
    }

    #[test]
    fn mismatch_and_cap_errors() {
        let m = Arc::new(FiniteBimodule::regular(&cyclic(3)));
        assert_eq!(build_trivial_extension(&cyclic(2), &m).unwrap_err(), AlgebraError::RingMismatch);
        let z64 = cyclic(64);
        let limits = Limits {
            order_cap: 1000,
            ..Limits::default()
        };
        let err = TrivialExtensionRing::new(&z64, &Arc::new(FiniteBimodule::regular(&z64)), &limits);
        assert!(matches!(err, Err(AlgebraError::CapExceeded { .. })));
    }

    #[test]
    fn radical_square_zero_and_projection() {
        for n in [2, 4, 6, 8] {
            let s = regular_ext(&cyclic(n));
            assert_eq!(s.ring().jacobson_radical(), s.lifted_radical());
            let ideal = s.module_ideal();
            assert!(s.ring().is_two_sided_ideal(&ideal));
            for a in ideal.ones() {
                for b in ideal.ones() {
                    assert_eq!(s.ring().mul(a, b), 0);
                }
            }
            let p = s.projection().unwrap();
            let kernel: Vec<usize> = s.ring().elements().filter(|&i| p.apply(i) == 0).collect();
            assert_eq!(kernel, members(&ideal));
        }
    }

    #[test]
    fn corners() {
        let f2 = cyclic(2);
        let r = Arc::new(FiniteRing::product(&f2, &f2).unwrap());
        let s = regular_ext(&r);
        let full = s.corner_ring(r.one(), r.one()).unwrap();
        assert_eq!(full.product.count_ones(..), 16);
        assert_eq!(members(&s.corner_ring(0, 0).unwrap().product), vec![0]);
        let e10 = r.pair_index(1, 0).unwrap();
        let e01 = r.pair_index(0, 1).unwrap();
        assert_eq!(members(&s.corner_ring(e10, e01).unwrap().componentwise), vec![0]);
        let z4 = cyclic(4);
        assert_eq!(regular_ext(&z4).corner_ring(2, 1).unwrap_err(), AlgebraError::NotIdempotent(2));
    }
}
