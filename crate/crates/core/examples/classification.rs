//! Predicts whether `R ∝ M` is morphic from the central decomposition of `R`
//! and compares the prediction with an exhaustive search on the extension.
//!
//! `cargo run --example classification`

use morphic::cli::{build_ring, parse_spec};
use morphic::structure::reconcile;
use morphic::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let pairs = [
        "TrivExt(Mat(2, Z(2)), Twist(Mat(2, Z(2)), conj([[1, 1], [0, 1]])))",
        "TrivExt(Z(4), Reg(Z(4)))",
        "TrivExt(GF(2, x^3+x+1), Twist(GF(2, x^3+x+1), frobenius))",
        "TrivExt(Prod(Z(2), Z(3)), Reg(Prod(Z(2), Z(3))))",
        "TrivExt(Table(F2xy), Zero(Table(F2xy)))",
    ];
    for text in pairs {
        let s = build_ring(&parse_spec(text)?, &limits)?.extension.expect("a trivial extension");
        let rec = reconcile(s.base(), s.bimodule(), &limits)?;
        println!("{text}");
        println!(
            "    predicted {:5}  exhaustive {:5}  {}",
            rec.predicted_morphic,
            rec.brute_force_morphic,
            if rec.agrees() { "agree" } else { "MISMATCH" }
        );
        for factor in &rec.verdict.factors {
            println!("    factor e={}: {}", factor.idempotent, serde_json::to_string(&factor.reason)?);
        }
    }
    Ok(())
}
