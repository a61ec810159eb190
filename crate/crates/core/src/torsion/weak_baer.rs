use serde::Serialize;

use crate::bimodule::{principal_generator_in, Side};
use crate::error::{AlgebraError, Result};
use crate::ring::FiniteRing;

#[derive(Debug, Clone, Serialize)]
pub struct AnnihilatorEntry {
    pub element: usize,
    pub annihilator: Vec<usize>,
    pub generator: Option<usize>,
    pub idempotent_generator: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeakBaerReport {
    pub reduced: bool,
    pub bezout: bool,
    pub annihilators_principal: bool,
    pub weak_baer: bool,
    pub entries: Vec<AnnihilatorEntry>,
}

/// For each element of a finite commutative ring, searches for an idempotent
/// generating its annihilator.
pub fn weak_baer_bezout_witness(ring: &FiniteRing) -> Result<WeakBaerReport> {
    if !ring.is_commutative() {
        return Err(AlgebraError::Precondition("the ring is not commutative".into()));
    }
    let idempotents = ring.idempotents();
    let entries: Vec<AnnihilatorEntry> = ring
        .elements()
        .map(|a| {
            let ann = ring.ann_left(a);
            AnnihilatorEntry {
                element: a,
                generator: principal_generator_in(&ann, |g| ring.principal_left(g)),
                idempotent_generator: idempotents.ones().find(|&e| ring.principal_left(e) == ann),
                annihilator: ann.ones().collect(),
            }
        })
        .collect();
    Ok(WeakBaerReport {
        reduced: ring.is_reduced(),
        bezout: ring.is_bezout(Side::Left),
        annihilators_principal: entries.iter().all(|e| e.generator.is_some()),
        weak_baer: entries.iter().all(|e| e.idempotent_generator.is_some()),
        entries,
    })
}
