//! Property report for a few finite rings: morphic, quasi-morphic, Bézout
//! and unit-regular verdicts with their least counterexamples.
//!
//! `cargo run --example ring_report`

use morphic::cli::{build_ring, parse_spec};
use morphic::morphic::ring_properties;
use morphic::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    for text in ["Z(4)", "Z(6)", "GF(2, x^2+x+1)", "Mat(2, Z(2))", "Table(F2xy)"] {
        let ring = build_ring(&parse_spec(text)?, &limits)?.ring;
        let report = ring_properties(&ring, &limits)?;
        let f = &report.flags;
        println!(
            "{text:16} order {:3}  morphic {:5}  quasi {:5}  bezout {:5}  unit-regular {:5}",
            report.order,
            f.morphic,
            f.quasi_morphic,
            f.left_bezout && f.right_bezout,
            f.unit_regular
        );
        for (name, c) in &report.counterexamples {
            println!("    {name}: {}", serde_json::to_string(c)?);
        }
    }
    Ok(())
}
