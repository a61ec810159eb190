//! Structural objects attached to morphic trivial extensions: the lattice map
//! `F(mR) = ann_l^R(m)`, the endomorphism `σ` that identifies a cyclic
//! bimodule with `R̄(σ)`, and the block-by-block classification over a
//! finite (hence perfect) base ring.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::bimodule::{principal_generator_in, FiniteBimodule, Side};
use crate::error::{AlgebraError, Result};
use crate::morphic::AnnihilatorCache;
use crate::ring::{cosets_of, Builder, FiniteRing, RingMorphism};
use crate::trivext::TrivialExtensionRing;
use crate::Limits;

fn is_two_sided_morphic(cache: &AnnihilatorCache) -> bool {
    cache.ring().elements().all(|a| {
        cache.morphic_partner(a, Side::Left).is_some() && cache.morphic_partner(a, Side::Right).is_some()
    })
}

fn is_two_sided_quasi_morphic(cache: &AnnihilatorCache) -> bool {
    cache.ring().elements().all(|a| {
        cache.quasi_partner(a, Side::Left).is_some() && cache.quasi_partner(a, Side::Right).is_some()
    })
}

/// One cyclic right submodule `N = mR` and its image `ann_l^R(N)`.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeEntry {
    pub submodule: Vec<usize>,
    pub generators: Vec<usize>,
    pub image: Vec<usize>,
    pub image_generator: Option<usize>,
    pub sub_bimodule: bool,
    pub image_is_ideal: bool,
}

/// The map from cyclic right submodules of `M` to principal left ideals of `R`.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeMap {
    pub entries: Vec<LatticeEntry>,
    /// Entries whose image depends on the chosen generator.
    pub ill_defined: Vec<usize>,
    /// Pairs `(i, j)` with `N_i ⊆ N_j` but `F(N_j) ⊄ F(N_i)`.
    pub order_violations: Vec<(usize, usize)>,
    /// Pairs `(i, j)` with `N_i ≠ N_j` and `F(N_i) = F(N_j)`.
    pub collisions: Vec<(usize, usize)>,
}

impl LatticeMap {
    pub fn is_injective(&self) -> bool {
        self.collisions.is_empty()
    }

    pub fn is_inclusion_reversing(&self) -> bool {
        self.order_violations.is_empty()
    }

    pub fn all_principal(&self) -> bool {
        self.entries.iter().all(|e| e.image_generator.is_some())
    }

    fn alarm(&self) -> Option<String> {
        if !self.ill_defined.is_empty() {
            return Some(format!("F depends on the generator for entries {:?}", self.ill_defined));
        }
        if let Some(e) = self.entries.iter().find(|e| e.image_generator.is_none()) {
            return Some(format!("ann_l^R of {:?} is not principal", e.submodule));
        }
        if let Some(p) = self.order_violations.first() {
            return Some(format!("F is not inclusion-reversing at entries {p:?}"));
        }
        if let Some(p) = self.collisions.first() {
            return Some(format!("F is not injective at entries {p:?}"));
        }
        if let Some(e) = self.entries.iter().find(|e| e.sub_bimodule && !e.image_is_ideal) {
            return Some(format!("image of sub-bimodule {:?} is not an ideal", e.submodule));
        }
        None
    }
}

/// Computes `F` without any hypothesis on the extension; outcomes are recorded, not asserted.
pub fn lattice_map_unchecked(s: &TrivialExtensionRing) -> LatticeMap {
    let base = s.base();
    let module = s.bimodule();
    let mut subs: Vec<(FixedBitSet, Vec<usize>)> = Vec::new();
    for m in module.elements() {
        let n = module.cyclic_bits(m, Side::Right);
        match subs.iter_mut().find(|(s, _)| *s == n) {
            Some((_, gens)) => gens.push(m),
            None => subs.push((n, vec![m])),
        }
    }
    let mut images = Vec::with_capacity(subs.len());
    let mut entries = Vec::with_capacity(subs.len());
    let mut ill_defined = Vec::new();
    for (i, (sub, gens)) in subs.iter().enumerate() {
        let image = module.ring_ann_left_bits(gens[0]);
        if gens.iter().any(|&g| module.ring_ann_left_bits(g) != image) {
            ill_defined.push(i);
        }
        let mut whole = base.full_subset();
        for n in sub.ones() {
            whole.intersect_with(&module.ring_ann_left_bits(n));
        }
        if whole != image && !ill_defined.contains(&i) {
            ill_defined.push(i);
        }
        let image_generator = principal_generator_in(&image, |g| base.principal_left(g));
        entries.push(LatticeEntry {
            submodule: sub.ones().collect(),
            generators: gens.clone(),
            image: image.ones().collect(),
            image_generator,
            sub_bimodule: module.is_submodule(sub, None),
            image_is_ideal: base.is_two_sided_ideal(&image),
        });
        images.push(image);
    }
    let mut order_violations = Vec::new();
    let mut collisions = Vec::new();
    for i in 0..subs.len() {
        for j in 0..subs.len() {
            if i == j {
                continue;
            }
            if subs[i].0.is_subset(&subs[j].0) && !images[j].is_subset(&images[i]) {
                order_violations.push((i, j));
            }
            if i < j && images[i] == images[j] {
                collisions.push((i, j));
            }
        }
    }
    LatticeMap {
        entries,
        ill_defined,
        order_violations,
        collisions,
    }
}

/// `F` for a two-sided morphic extension. Any failure of the expected
/// properties is reported as an alarm.
pub fn build_lattice_map(s: &TrivialExtensionRing) -> Result<LatticeMap> {
    let cache = AnnihilatorCache::new(s.ring());
    if !is_two_sided_morphic(&cache) {
        return Err(AlgebraError::Precondition("the extension is not morphic".into()));
    }
    let map = lattice_map_unchecked(s);
    match map.alarm() {
        Some(msg) => Err(AlgebraError::Alarm(msg)),
        None => Ok(map),
    }
}

/// `M ≅ R̄(σ)` for a left-cyclic bimodule `M = Rx`, with `R̄ = R / ann_l^R(x)`.
#[derive(Debug, Clone)]
pub struct SigmaConstruction {
    pub generator: usize,
    pub ideal: FixedBitSet,
    pub quotient: Arc<FiniteRing>,
    /// Class in `R̄` of each element of `R`.
    pub class_of: Vec<usize>,
    pub sigma: RingMorphism,
    /// `ψ(s̄) = s·x`, indexed by quotient element.
    pub psi: Vec<usize>,
    pub automorphism: bool,
    /// `xR = Rx`.
    pub two_sided_cyclic: bool,
}

/// Serializable summary of a [`SigmaConstruction`].
#[derive(Debug, Clone, Serialize)]
pub struct SigmaSummary {
    pub generator: usize,
    pub ideal: Vec<usize>,
    pub quotient_order: usize,
    pub sigma: Vec<usize>,
    pub psi: Vec<usize>,
    pub automorphism: bool,
    pub two_sided_cyclic: bool,
}

impl SigmaConstruction {
    pub fn summary(&self) -> SigmaSummary {
        SigmaSummary {
            generator: self.generator,
            ideal: self.ideal.ones().collect(),
            quotient_order: self.quotient.order(),
            sigma: self.sigma.image().to_vec(),
            psi: self.psi.clone(),
            automorphism: self.automorphism,
            two_sided_cyclic: self.two_sided_cyclic,
        }
    }
}

/// Builds `R̄`, `σ(r̄) = s̄` where `xr = sx` (least `s`), and `ψ`, checking
/// every property instead of assuming it.
pub fn construct_sigma(module: &Arc<FiniteBimodule>, x: usize, limits: &Limits) -> Result<SigmaConstruction> {
    let ring = module.ring();
    if x >= module.order() {
        return Err(AlgebraError::OutOfRange {
            index: x,
            order: module.order(),
        });
    }
    let left_span = module.cyclic_bits(x, Side::Left);
    if left_span != module.full_subset() {
        return Err(AlgebraError::Precondition(format!("M is not left-cyclic at {x}")));
    }
    let ideal = module.ring_ann_left_bits(x);
    if !ring.is_two_sided_ideal(&ideal) {
        return Err(AlgebraError::Precondition(format!("ann_l^R({x}) is not an ideal")));
    }
    let quotient = Arc::new(Builder::new(limits.clone()).quotient_by_ideal(ring, &ideal, ideal.ones().collect())?);
    let (class_of, reps) = cosets_of(ring.order(), |a, b| ring.add(a, b), &ideal);

    let mut phi = Vec::with_capacity(ring.order());
    for r in ring.elements() {
        let xr = module.right_act(x, r);
        let s = ring
            .elements()
            .find(|&s| module.left_act(s, x) == xr)
            .ok_or_else(|| AlgebraError::Precondition(format!("x·{r} is not in Rx")))?;
        phi.push(class_of[s]);
    }
    for r in ring.elements() {
        if phi[r] != phi[reps[class_of[r]]] {
            return Err(AlgebraError::Precondition(format!(
                "σ is not well defined on R̄: {r} and {} disagree",
                reps[class_of[r]]
            )));
        }
    }
    let image: Vec<usize> = reps.iter().map(|&r| phi[r]).collect();
    let sigma = RingMorphism::endomorphism(&quotient, image)?;

    let psi: Vec<usize> = reps.iter().map(|&s| module.left_act(s, x)).collect();
    let mut seen = module.empty_subset();
    for &v in &psi {
        seen.insert(v);
    }
    if seen.count_ones(..) != module.order() || psi.len() != module.order() {
        return Err(AlgebraError::Alarm("ψ is not a bijection".into()));
    }
    for c in quotient.elements() {
        for d in quotient.elements() {
            if psi[quotient.add(c, d)] != module.add(psi[c], psi[d]) {
                return Err(AlgebraError::Alarm(format!("ψ is not additive at ({c}, {d})")));
            }
        }
        for a in ring.elements() {
            let abar = class_of[a];
            if psi[quotient.mul(abar, c)] != module.left_act(a, psi[c]) {
                return Err(AlgebraError::Alarm(format!("ψ is not left linear at ({a}, {c})")));
            }
            if psi[quotient.mul(c, sigma.apply(abar))] != module.right_act(psi[c], a) {
                return Err(AlgebraError::Alarm(format!("ψ is not right linear at ({c}, {a})")));
            }
        }
    }
    Ok(SigmaConstruction {
        generator: x,
        automorphism: sigma.is_bijective(),
        two_sided_cyclic: module.cyclic_bits(x, Side::Right) == left_span,
        ideal,
        quotient,
        class_of,
        sigma,
        psi,
    })
}

/// Why a block of the decomposition is, or is not, compatible with a morphic extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorReason {
    SimpleTwisted { generator: usize, sigma: Vec<usize> },
    SimpleZeroModule,
    NonSimpleZeroModule,
    Violation { description: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorVerdict {
    pub idempotent: usize,
    pub ring_order: usize,
    pub module_order: usize,
    pub simple: bool,
    pub morphic: bool,
    pub reason: FactorReason,
}

/// Predicted morphic verdict for `R ∝ M` from the structure of `R` and `M`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationVerdict {
    pub predicted_morphic: bool,
    /// `(e, m)` with `e·m ≠ m·e` for a central idempotent `e`, if any.
    pub commutation_failure: Option<(usize, usize)>,
    pub factors: Vec<FactorVerdict>,
}

fn classify_factor(ring: &Arc<FiniteRing>, module: &Arc<FiniteBimodule>, limits: &Limits) -> (bool, bool, FactorReason) {
    let simple = ring.jacobson_radical().count_ones(..) == 1 && ring.primitive_central_idempotents().len() == 1;
    if simple {
        if module.is_zero_module() {
            return (true, true, FactorReason::SimpleZeroModule);
        }
        for x in module.elements() {
            if module.ring_ann_left_bits(x).count_ones(..) != 1 {
                continue;
            }
            if let Ok(c) = construct_sigma(module, x, limits) {
                if c.automorphism {
                    return (
                        true,
                        true,
                        FactorReason::SimpleTwisted {
                            generator: x,
                            sigma: c.sigma.image().to_vec(),
                        },
                    );
                }
            }
        }
        return (
            true,
            false,
            FactorReason::Violation {
                description: "simple block with M ≠ 0 not of the form R(σ) for an automorphism σ".into(),
            },
        );
    }
    if !module.is_zero_module() {
        return (
            false,
            false,
            FactorReason::Violation {
                description: "non-simple block with M ≠ 0".into(),
            },
        );
    }
    if ring.is_bezout(Side::Left) && ring.is_bezout(Side::Right) {
        (false, true, FactorReason::NonSimpleZeroModule)
    } else {
        (
            false,
            false,
            FactorReason::Violation {
                description: "non-simple block that is not left and right Bézout".into(),
            },
        )
    }
}

pub fn classify_perfect_case(ring: &Arc<FiniteRing>, module: &Arc<FiniteBimodule>, limits: &Limits) -> Result<ClassificationVerdict> {
    if !Arc::ptr_eq(ring, module.ring()) && !ring.same_tables(module.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    limits.check_order(ring.order() as u128 * module.order() as u128)?;
    let mut commutation_failure = None;
    'scan: for e in ring.central_idempotents().ones() {
        for m in module.elements() {
            if module.left_act(e, m) != module.right_act(m, e) {
                commutation_failure = Some((e, m));
                break 'scan;
            }
        }
    }
    if commutation_failure.is_some() {
        return Ok(ClassificationVerdict {
            predicted_morphic: false,
            commutation_failure,
            factors: Vec::new(),
        });
    }
    let mut factors = Vec::new();
    for factor in ring.central_decomposition()? {
        let block = Arc::new(FiniteBimodule::corner(module, &factor)?);
        let (simple, morphic, reason) = classify_factor(&factor.ring, &block, limits);
        factors.push(FactorVerdict {
            idempotent: factor.idempotent,
            ring_order: factor.ring.order(),
            module_order: block.order(),
            simple,
            morphic,
            reason,
        });
    }
    Ok(ClassificationVerdict {
        predicted_morphic: factors.iter().all(|f| f.morphic),
        commutation_failure,
        factors,
    })
}

/// Prediction against the exhaustive verdict on the materialized extension.
#[derive(Debug, Clone, Serialize)]
pub struct Reconciliation {
    pub predicted_morphic: bool,
    pub brute_force_morphic: bool,
    pub verdict: ClassificationVerdict,
}

impl Reconciliation {
    pub fn agrees(&self) -> bool {
        self.predicted_morphic == self.brute_force_morphic
    }
}

pub fn reconcile(ring: &Arc<FiniteRing>, module: &Arc<FiniteBimodule>, limits: &Limits) -> Result<Reconciliation> {
    let verdict = classify_perfect_case(ring, module, limits)?;
    let s = TrivialExtensionRing::new(ring, module, limits)?;
    let brute_force_morphic = is_two_sided_morphic(&AnnihilatorCache::new(s.ring()));
    Ok(Reconciliation {
        predicted_morphic: verdict.predicted_morphic,
        brute_force_morphic,
        verdict,
    })
}

/// Cyclicity of `M` on both sides and the recovered `σ` for a quasi-morphic extension.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicReport {
    pub left_generator: usize,
    pub right_generator: usize,
    pub base_bezout: bool,
    pub sigma: SigmaSummary,
}

pub fn verify_cyclic_finite_length(s: &TrivialExtensionRing, limits: &Limits) -> Result<CyclicReport> {
    let cache = AnnihilatorCache::new(s.ring());
    if !is_two_sided_quasi_morphic(&cache) {
        return Err(AlgebraError::Precondition("the extension is not quasi-morphic".into()));
    }
    let module = s.bimodule();
    let left_generator = module
        .cyclic_generator(Side::Left)
        .ok_or_else(|| AlgebraError::Alarm("M is not left-cyclic".into()))?;
    let right_generator = module
        .cyclic_generator(Side::Right)
        .ok_or_else(|| AlgebraError::Alarm("M is not right-cyclic".into()))?;
    let base_bezout = s.base().is_bezout(Side::Left) && s.base().is_bezout(Side::Right);
    if !base_bezout {
        return Err(AlgebraError::Alarm("the base ring is not left and right Bézout".into()));
    }
    let sigma = construct_sigma(module, left_generator, limits)?;
    if !sigma.automorphism {
        return Err(AlgebraError::Alarm("the recovered σ is not an automorphism".into()));
    }
    Ok(CyclicReport {
        left_generator,
        right_generator,
        base_bezout,
        sigma: sigma.summary(),
    })
}

/// For a left morphic extension: is `_R M` Bézout, and which element generates it?
#[derive(Debug, Clone, Serialize)]
pub struct LeftModuleShape {
    pub bezout: bool,
    pub cyclic_generator: Option<usize>,
}

pub fn left_module_shape(module: &FiniteBimodule) -> LeftModuleShape {
    LeftModuleShape {
        bezout: module.is_bezout(Side::Left),
        cyclic_generator: module.cyclic_generator(Side::Left),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trivext::build_trivial_extension;

    fn f4() -> Arc<FiniteRing> {
        Arc::new(FiniteRing::galois(2, &[1, 1, 1]).unwrap())
    }

    fn f2_squared() -> Arc<FiniteRing> {
        let f2 = Arc::new(FiniteRing::cyclic(2).unwrap());
        Arc::new(FiniteRing::product(&f2, &f2).unwrap())
    }

    #[test]
    fn sigma_round_trip_frobenius() {
        let frob = RingMorphism::frobenius(&f4()).unwrap();
        let m = Arc::new(FiniteBimodule::twisted(&frob).unwrap());
        let c = construct_sigma(&m, 1, &Limits::default()).unwrap();
        assert_eq!(c.sigma.image(), frob.image());
        assert!(c.automorphism && c.two_sided_cyclic);
    }

    #[test]
    fn sigma_regular_and_quotient() {
        let z4 = Arc::new(FiniteRing::cyclic(4).unwrap());
        let reg = Arc::new(FiniteBimodule::regular(&z4));
        assert!(construct_sigma(&reg, 1, &Limits::default()).unwrap().sigma.is_identity());
        let q = Arc::new(FiniteBimodule::quotient(&reg, &crate::ring::subset_of(4, [0, 2])).unwrap());
        let c = construct_sigma(&q, 1, &Limits::default()).unwrap();
        assert_eq!(c.quotient.order(), 2);
        assert!(c.sigma.is_identity());
        assert!(construct_sigma(&reg, 2, &Limits::default()).is_err());
    }

    #[test]
    fn lattice_maps() {
        let frob = RingMorphism::frobenius(&f4()).unwrap();
        let s = build_trivial_extension(&f4(), &Arc::new(FiniteBimodule::twisted(&frob).unwrap())).unwrap();
        let map = build_lattice_map(&s).unwrap();
        assert_eq!(map.entries.len(), 2);
        let r = f2_squared();
        let s = build_trivial_extension(&r, &Arc::new(FiniteBimodule::regular(&r))).unwrap();
        let map = build_lattice_map(&s).unwrap();
        assert_eq!(map.entries.len(), 4);
        assert!(map.is_injective() && map.is_inclusion_reversing());
        let z4 = Arc::new(FiniteRing::cyclic(4).unwrap());
        let s = build_trivial_extension(&z4, &Arc::new(FiniteBimodule::regular(&z4))).unwrap();
        assert!(matches!(build_lattice_map(&s), Err(AlgebraError::Precondition(_))));
    }

    #[test]
    fn classification_examples() {
        let limits = Limits::default();
        let z4 = Arc::new(FiniteRing::cyclic(4).unwrap());
        let rec = reconcile(&z4, &Arc::new(FiniteBimodule::regular(&z4)), &limits).unwrap();
        assert!(!rec.predicted_morphic && rec.agrees());
        let r = f2_squared();
        let swap = Arc::new(FiniteBimodule::twisted(&RingMorphism::swap(&r).unwrap()).unwrap());
        let v = classify_perfect_case(&r, &swap, &limits).unwrap();
        assert!(!v.predicted_morphic && v.commutation_failure.is_some());
        let zero = Arc::new(FiniteBimodule::zero_module(&f4()));
        let rec = reconcile(zero.ring(), &zero, &limits).unwrap();
        assert!(rec.predicted_morphic && rec.agrees());
    }

    #[test]
    fn cyclic_finite_length() {
        let frob = RingMorphism::frobenius(&f4()).unwrap();
        let s = build_trivial_extension(&f4(), &Arc::new(FiniteBimodule::twisted(&frob).unwrap())).unwrap();
        let rep = verify_cyclic_finite_length(&s, &Limits::default()).unwrap();
        assert_eq!(rep.left_generator, 1);
        assert_eq!(rep.sigma.sigma, frob.image());
        let z = Arc::new(FiniteBimodule::zero_module(&f4()));
        let s = build_trivial_extension(&f4(), &z).unwrap();
        let rep = verify_cyclic_finite_length(&s, &Limits::default()).unwrap();
        assert_eq!((rep.left_generator, rep.sigma.quotient_order), (0, 1));
    }
}
