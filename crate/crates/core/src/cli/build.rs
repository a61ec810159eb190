use std::sync::Arc;

use super::spec::{ElementSpec, EndoKind, EndoSpec, ModuleKind, ModuleSpec, RingKind, RingSpec};
use crate::error::{AlgebraError, Result};
use crate::ring::{parse_table, Builder};
use crate::trivext::TrivialExtensionRing;
use crate::{FiniteBimodule, FiniteRing, Limits, RingMorphism};

/// Built-in table for `F_2[x,y]/(x,y)^2`.
pub const F2XY_TABLE: &str = include_str!("../../data/f2xy.table");

/// A built ring, keeping the extension structure when the ring spec is `TrivExt`.
#[derive(Debug, Clone)]
pub struct BuiltRing {
    pub ring: Arc<FiniteRing>,
    pub extension: Option<Arc<TrivialExtensionRing>>,
}

pub fn build_ring(spec: &RingSpec, limits: &Limits) -> Result<BuiltRing> {
    let builder = Builder::new(limits.clone());
    let plain = |r: FiniteRing| {
        Ok(BuiltRing {
            ring: Arc::new(r),
            extension: None,
        })
    };
    match &spec.kind {
        RingKind::Cyclic(n) => plain(builder.cyclic(to_usize(n.value)?)?),
        RingKind::Galois { p, modulus } => plain(builder.galois(p.value, modulus)?),
        RingKind::Matrix { k, base } => {
            let base = build_ring(base, limits)?.ring;
            plain(builder.matrix(to_usize(k.value)?, &base)?)
        }
        RingKind::Product(l, r) => {
            let l = build_ring(l, limits)?.ring;
            let r = if l_equals_r(spec) { l.clone() } else { build_ring(r, limits)?.ring };
            plain(builder.product(&l, &r)?)
        }
        RingKind::TrivExt { base, module } => {
            let base = build_ring(base, limits)?.ring;
            let module = build_module_over(&base, module)?;
            let s = TrivialExtensionRing::new(&base, &module, limits)?;
            Ok(BuiltRing {
                ring: s.ring().clone(),
                extension: Some(Arc::new(s)),
            })
        }
        RingKind::Table(name) => {
            let text = if name == "F2xy" {
                F2XY_TABLE.to_string()
            } else {
                std::fs::read_to_string(name)
                    .map_err(|e| AlgebraError::InvalidInput(format!("cannot read table {name:?}: {e}")))?
            };
            plain(parse_table(&text, name, limits)?)
        }
    }
}

fn l_equals_r(spec: &RingSpec) -> bool {
    matches!(&spec.kind, RingKind::Product(l, r) if l == r)
}

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| AlgebraError::InvalidInput(format!("{v} is too large")))
}

/// Builds a module spec over its own ring.
pub fn build_module(spec: &ModuleSpec, limits: &Limits) -> Result<Arc<FiniteBimodule>> {
    let ring = build_ring(spec.ring(), limits)?.ring;
    build_module_over(&ring, spec)
}

/// Builds a module spec over an already built copy of its ring.
pub fn build_module_over(ring: &Arc<FiniteRing>, spec: &ModuleSpec) -> Result<Arc<FiniteBimodule>> {
    let module = match &spec.kind {
        ModuleKind::Regular(_) => FiniteBimodule::regular(ring),
        ModuleKind::Zero(_) => FiniteBimodule::zero_module(ring),
        ModuleKind::Twisted(ring_spec, endo) => FiniteBimodule::twisted(&build_endo(ring, ring_spec, endo)?)?,
    };
    Ok(Arc::new(module))
}

pub fn build_endo(ring: &Arc<FiniteRing>, ring_spec: &RingSpec, endo: &EndoSpec) -> Result<RingMorphism> {
    match &endo.kind {
        EndoKind::Identity => Ok(RingMorphism::identity(ring)),
        EndoKind::Frobenius => RingMorphism::frobenius(ring),
        EndoKind::Swap => RingMorphism::swap(ring),
        EndoKind::Conjugation(element) => RingMorphism::conjugation(ring, element_index(ring, ring_spec, element)?),
        EndoKind::Images(images) => {
            let images = images.iter().map(|&i| to_usize(i)).collect::<Result<Vec<_>>>()?;
            RingMorphism::endomorphism(ring, images)
        }
    }
}

fn element_index(ring: &FiniteRing, ring_spec: &RingSpec, element: &ElementSpec) -> Result<usize> {
    match element {
        ElementSpec::Index(i) => to_usize(*i),
        ElementSpec::Entries(rows) => {
            let flat = rows.iter().flatten().map(|&e| to_usize(e)).collect::<Result<Vec<_>>>()?;
            ring.matrix_index(&flat)
                .ok_or_else(|| AlgebraError::InvalidInput(format!("{rows:?} is not an element of {ring_spec}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::spec::parse_spec;
    use crate::Side;

    fn build(text: &str) -> BuiltRing {
        build_ring(&parse_spec(text).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(build("Z(12)").ring.order(), 12);
        assert_eq!(build("GF(3, x^2+1)").ring.order(), 9);
        assert_eq!(build("Mat(2, Z(2))").ring.order(), 16);
        assert_eq!(build("Prod(Z(4), Z(2))").ring.order(), 8);
        let s = build("TrivExt(Z(4), Reg(Z(4)))");
        assert_eq!(s.ring.order(), 16);
        assert!(s.extension.is_some());
    }

    #[test]
    fn f2xy_is_not_bezout() {
        let r = build("Table(F2xy)").ring;
        assert_eq!(r.order(), 8);
        assert!(r.is_commutative());
        assert_eq!(r.bezout_counterexample(Side::Left), Some((2, 4)));
    }

    #[test]
    fn conjugation_by_matrix_entries() {
        let s = build("TrivExt(Mat(2,Z(2)), Twist(Mat(2,Z(2)), conj([[1,1],[0,1]])))");
        let s = s.extension.unwrap();
        let (ring, module) = (s.base(), s.bimodule());
        assert!(module.elements().any(|m| ring.elements().any(|r| module.right_act(m, r) != ring.mul(m, r))));
    }

    #[test]
    fn build_errors() {
        let limits = Limits::default();
        let reducible = parse_spec("GF(2, x^2+1)").unwrap();
        assert!(matches!(build_ring(&reducible, &limits), Err(AlgebraError::ReducibleModulus { .. })));
        let big = parse_spec("Mat(3, Z(4))").unwrap();
        assert!(matches!(build_ring(&big, &limits), Err(AlgebraError::CapExceeded { .. })));
        let non_unit = parse_spec("TrivExt(Z(4), Twist(Z(4), conj(2)))").unwrap();
        assert!(build_ring(&non_unit, &limits).is_err());
        let bad_images = parse_spec("TrivExt(Z(3), Twist(Z(3), [0, 2, 2]))").unwrap();
        assert!(matches!(build_ring(&bad_images, &limits), Err(AlgebraError::NotHomomorphism(_))));
    }
}
