//! Property suite over the built-in catalog.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use super::build::{build_endo, build_ring};
use super::catalog::{catalog, CatalogEntry};
use super::run::RunConfig;
use super::spec::{parse_spec, ModuleKind, RingKind};
use crate::error::{AlgebraError, Result};
use crate::morphic::{ring_properties, sweep_annihilator_characterization, verify_central_idempotent_commutation,
    verify_gencz, MorphicWitness, QuasiMorphicWitness, RingReport};
use crate::structure::{build_lattice_map, left_module_shape, reconcile, verify_cyclic_finite_length};
use crate::torsion::weak_baer_bezout_witness;
use crate::trivext::TrivialExtensionRing;
use crate::{FiniteRing, Limits, Side};

/// Annihilator characterization sweeps run while `|R|·|M|²` stays below this.
const SWEEP_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn new(passed: bool) -> Self {
        CheckOutcome { passed, detail: None }
    }

    fn detailed(passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            passed,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub name: String,
    pub spec: String,
    pub order: Option<usize>,
    pub checks: BTreeMap<String, CheckOutcome>,
    /// Set when the entry exceeds the configured caps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
    pub checks: usize,
    /// `entry/check` names of every failure.
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Runs every catalog entry, in parallel, and sorts the results by name.
pub fn run_suite(config: &RunConfig) -> SuiteReport {
    let entries = catalog();
    let limits = config.limits();
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(entries.len()));
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(entries.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(entry) = entries.get(i) else { break };
                let result = check_entry(entry, &limits);
                results.lock().expect("no worker panics while holding the lock").push(result);
            });
        }
    });
    let mut entries = results.into_inner().expect("workers finished");
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    let checks = entries.iter().map(|e| e.checks.len()).sum();
    let mut failures = Vec::new();
    for e in &entries {
        if let Some(err) = &e.error {
            failures.push(format!("{}: {err}", e.name));
        }
        for (name, c) in &e.checks {
            if !c.passed {
                failures.push(format!("{}/{name}", e.name));
            }
        }
    }
    SuiteReport {
        passed: failures.is_empty(),
        entries,
        checks,
        failures,
    }
}

/// Every applicable check for one catalog entry.
pub fn check_entry(entry: &CatalogEntry, limits: &Limits) -> SuiteEntry {
    let mut out = SuiteEntry {
        name: entry.name.clone(),
        spec: entry.spec.clone(),
        order: None,
        checks: BTreeMap::new(),
        skipped: None,
        error: None,
        passed: true,
    };
    match run_checks(entry, limits, &mut out) {
        Ok(()) => {}
        Err(AlgebraError::CapExceeded { order, cap }) => {
            out.skipped = Some(format!("order {order} exceeds cap {cap}"));
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out.passed = out.error.is_none() && out.checks.values().all(|c| c.passed);
    out
}

fn run_checks(entry: &CatalogEntry, limits: &Limits, out: &mut SuiteEntry) -> Result<()> {
    let ast = parse_spec(&entry.spec).map_err(|e| AlgebraError::InvalidInput(e.to_string()))?;
    let built = build_ring(&ast, limits)?;
    out.order = Some(built.ring.order());
    let report = ring_properties(&built.ring, limits)?;
    ring_checks(&built.ring, &report, &mut out.checks)?;
    if let (Some(s), RingKind::TrivExt { base, module }) = (&built.extension, &ast.kind) {
        let sigma = match &module.kind {
            ModuleKind::Twisted(_, endo) => Some(build_endo(s.base(), base, endo)?),
            _ => None,
        };
        extension_checks(s, &module.kind, sigma.as_ref(), &report, limits, &mut out.checks)?;
    }
    Ok(())
}

/// Finite-ring equivalences, elementwise regularity, and re-certified witnesses.
pub fn ring_checks(ring: &FiniteRing, report: &RingReport, checks: &mut BTreeMap<String, CheckOutcome>) -> Result<()> {
    let f = &report.flags;
    if !report.sampled {
        let bezout = f.left_bezout && f.right_bezout;
        checks.insert(
            "morphic_iff_quasi_morphic_iff_bezout".into(),
            CheckOutcome::detailed(
                f.morphic == f.quasi_morphic && f.morphic == bezout,
                format!("morphic={} quasi_morphic={} bezout={bezout}", f.morphic, f.quasi_morphic),
            ),
        );
    }
    let mismatch = report
        .elements
        .iter()
        .find(|e| e.regularity.is_unit_regular() != (e.regularity.is_regular() && e.left_partner.is_some()));
    checks.insert(
        "unit_regular_iff_regular_and_left_morphic".into(),
        match mismatch {
            None => CheckOutcome::new(true),
            Some(e) => CheckOutcome::detailed(false, format!("element {}", e.label)),
        },
    );
    checks.insert(
        "quasi_morphic_implies_bezout".into(),
        CheckOutcome::new((!f.left_quasi_morphic || f.left_bezout) && (!f.right_quasi_morphic || f.right_bezout)),
    );
    let mut certified = true;
    for e in &report.elements {
        for (side, partner, quasi) in [
            (Side::Left, e.left_partner, e.left_quasi),
            (Side::Right, e.right_partner, e.right_quasi),
        ] {
            if let Some(b) = partner {
                certified &= MorphicWitness::certify(ring, e.index, b, side).is_ok();
            }
            if let Some((b, c)) = quasi {
                certified &= QuasiMorphicWitness::certify(ring, e.index, b, c, side).is_ok();
            }
        }
    }
    checks.insert("witnesses_recertified".into(), CheckOutcome::new(certified));
    if ring.is_commutative() {
        let wb = weak_baer_bezout_witness(ring)?;
        checks.insert(
            "reduced_implies_weak_baer_bezout".into(),
            CheckOutcome::new(!wb.reduced || (wb.weak_baer && wb.bezout)),
        );
    }
    Ok(())
}

/// Checks tying the extension `S = R ∝ M` to its base and module.
pub fn extension_checks(
    s: &TrivialExtensionRing,
    module_kind: &ModuleKind,
    sigma: Option<&crate::RingMorphism>,
    report: &RingReport,
    limits: &Limits,
    checks: &mut BTreeMap<String, CheckOutcome>,
) -> Result<()> {
    let f = &report.flags;
    let (base, module) = (s.base(), s.bimodule());

    let rec = reconcile(base, module, limits)?;
    checks.insert(
        "classification_reconciles".into(),
        CheckOutcome::detailed(
            rec.agrees(),
            format!("predicted={} brute_force={}", rec.predicted_morphic, rec.brute_force_morphic),
        ),
    );

    if f.morphic {
        let outcome = match build_lattice_map(s) {
            Ok(map) => CheckOutcome::new(map.is_injective() && map.is_inclusion_reversing()),
            Err(e) => CheckOutcome::detailed(false, e.to_string()),
        };
        checks.insert("lattice_map_injective_and_reversing".into(), outcome);
    }

    let base_report = ring_properties(base, limits)?;
    let unit_regular = base_report.flags.unit_regular;
    if matches!(module_kind, ModuleKind::Regular(_)) && !report.sampled {
        let module_elements_morphic = module
            .elements()
            .all(|m| report.elements[s.encode(base.zero(), m)].left_partner.is_some());
        checks.insert(
            "regular_extension_morphic_iff_unit_regular".into(),
            CheckOutcome::detailed(
                f.left_morphic == unit_regular && module_elements_morphic == unit_regular,
                format!(
                    "left_morphic={} unit_regular={unit_regular} module_elements_morphic={module_elements_morphic}",
                    f.left_morphic
                ),
            ),
        );
    }
    if !matches!(module_kind, ModuleKind::Zero(_)) {
        checks.insert(
            "left_morphic_extension_has_unit_regular_base".into(),
            CheckOutcome::new(!f.left_morphic || unit_regular),
        );
    }

    let commutation = verify_central_idempotent_commutation(s);
    checks.insert(
        "central_idempotents_commute_when_morphic".into(),
        CheckOutcome::new(commutation.consistent()),
    );

    if f.left_morphic {
        let shape = left_module_shape(module);
        checks.insert(
            "left_morphic_module_is_bezout_and_cyclic".into(),
            CheckOutcome::new(shape.bezout && shape.cyclic_generator.is_some()),
        );
    }
    if f.quasi_morphic {
        let outcome = match verify_cyclic_finite_length(s, limits) {
            Ok(_) => CheckOutcome::new(true),
            Err(e) => CheckOutcome::detailed(false, e.to_string()),
        };
        checks.insert("quasi_morphic_module_is_cyclic".into(), outcome);
    }

    if let Some(sigma) = sigma {
        let gencz = verify_gencz(sigma, limits)?;
        checks.insert(
            "skew_extension_morphic_transfer".into(),
            CheckOutcome::new(gencz.violations.is_empty()),
        );
    }

    if base.order() * module.order() * module.order() <= SWEEP_CAP {
        let sweep = sweep_annihilator_characterization(s)?;
        checks.insert(
            "annihilator_characterization".into(),
            CheckOutcome::detailed(sweep.violations.is_empty(), format!("{} triples", sweep.triples)),
        );
    }
    Ok(())
}
