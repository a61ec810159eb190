//! For `S = R ∝ M`, checks over every triple `(a, m, n)` that `(a, m)` has
//! left partner `(b, n)` exactly when the annihilator conditions on the
//! components hold.
//!
//! `cargo run --example annihilator_sweep`

use morphic::cli::{build_ring, parse_spec};
use morphic::morphic::sweep_annihilator_characterization;
use morphic::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    for text in ["TrivExt(Z(4), Reg(Z(4)))", "TrivExt(Prod(Z(2), Z(2)), Reg(Prod(Z(2), Z(2))))"] {
        let built = build_ring(&parse_spec(text)?, &limits)?;
        let s = built.extension.expect("a trivial extension");
        let sweep = sweep_annihilator_characterization(&s)?;
        println!(
            "{text}: {} triples, A holds {} times, B holds {} times, {} violations",
            sweep.triples,
            sweep.a_holds,
            sweep.b_holds,
            sweep.violations.len()
        );
    }
    Ok(())
}
