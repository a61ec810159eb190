//! Over `F_2 × F_2`, twisting the module by the coordinate swap breaks the
//! commutation of the central idempotents with `M`, and with it the morphic
//! property. The identity twist keeps both.
//!
//! `cargo run --example central_idempotents`

use morphic::cli::{build_ring, parse_spec};
use morphic::morphic::verify_central_idempotent_commutation;
use morphic::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    for endo in ["swap", "id"] {
        let text = format!("TrivExt(Prod(Z(2), Z(2)), Twist(Prod(Z(2), Z(2)), {endo}))");
        let s = build_ring(&parse_spec(&text)?, &limits)?.extension.expect("a trivial extension");
        let report = verify_central_idempotent_commutation(&s);
        let failing: Vec<String> = report.failing_idempotents.iter().map(|&e| s.base().label(e)).collect();
        println!("twist {endo}: left morphic {}", report.left_morphic);
        println!("    central idempotents with e·m ≠ m·e: {failing:?}");
        if let Some(c) = report.counterexample {
            println!("    first non-morphic element: {}", serde_json::to_string(&c)?);
        }
    }
    Ok(())
}
