//! `R ∝ R` is left morphic exactly when `R` is unit regular. Prints both
//! verdicts over the regular extensions of the catalog.
//!
//! `cargo run --example regular_extensions`

use morphic::cli::{build_ring, catalog, parse_spec};
use morphic::morphic::ring_properties;
use morphic::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    for entry in catalog().into_iter().filter(|e| e.spec.contains("Reg(")) {
        let built = build_ring(&parse_spec(&entry.spec)?, &limits)?;
        let s = built.extension.expect("a trivial extension");
        let ext = ring_properties(s.ring(), &limits)?;
        let base = ring_properties(s.base(), &limits)?;
        let witness = ext.counterexamples.get("left_morphic").map(|c| match c {
            morphic::morphic::Counterexample::Element(i) => built.ring.label(*i),
            other => format!("{other:?}"),
        });
        println!(
            "{:24} left morphic {:5}  base unit regular {:5}  {}",
            entry.name,
            ext.flags.left_morphic,
            base.flags.unit_regular,
            witness.map(|w| format!("first failure {w}")).unwrap_or_default()
        );
    }
    Ok(())
}
