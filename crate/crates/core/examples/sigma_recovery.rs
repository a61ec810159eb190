//! Recovers the twisting endomorphism from a left-cyclic bimodule: for the
//! Frobenius twist of `F_4` at `x = 1` the result is Frobenius itself.
//!
//! `cargo run --example sigma_recovery`

use morphic::cli::{build_ring, parse_spec};
use morphic::structure::construct_sigma;
use morphic::{Limits, RingMorphism};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let text = "TrivExt(GF(2, x^2+x+1), Twist(GF(2, x^2+x+1), frobenius))";
    let s = build_ring(&parse_spec(text)?, &limits)?.extension.expect("a trivial extension");
    let built = construct_sigma(s.bimodule(), 1, &limits)?;
    let frobenius = RingMorphism::frobenius(s.base())?;
    println!("quotient order: {}", built.quotient.order());
    println!("recovered sigma: {:?}", built.sigma.image());
    println!("frobenius:       {:?}", frobenius.image());
    println!("psi: {:?}  automorphism: {}", built.psi, built.automorphism);
    Ok(())
}
