//! Morphic partners in `ℤ ∝ ℚ/ℤ` and `F_2[x] ∝ F_2(x)/F_2[x]`, certified by
//! closed-form annihilators and seeded sampling. The last pair is a
//! deliberate non-partner.
//!
//! `cargo run --example torsion_partners`

use morphic::cli::run::parse_qtriv_element;
use morphic::torsion::{morphic_partner, verify_partner, FpPoly, Integer, PrimeField, QTrivExtElement};

fn show<E: morphic::torsion::Euclidean>(e: &QTrivExtElement<E>, w: &QTrivExtElement<E>, bound: u64) {
    let rep = verify_partner(e, w, 1000, bound, 7).expect("same domain");
    println!("{e}  ~  {w}: {}", if rep.passed { "certified" } else { "rejected" });
    println!("    ann(e) = {}   Sw = {}", rep.forward.annihilator, rep.forward.principal);
    if let Some(t) = &rep.forward.witness {
        println!("    separating element {t}");
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["(3, 1/2)", "(0, 5/12)", "(-6, 0)", "(0, 0)"] {
        let e: QTrivExtElement<Integer> = parse_qtriv_element(&(), text)?;
        show(&e, &morphic_partner(&e), 1000);
    }
    let f2 = PrimeField::new(2)?;
    let e: QTrivExtElement<FpPoly> = parse_qtriv_element(&f2, "(x, (1)/(x+1))")?;
    show(&e, &morphic_partner(&e), 8);
    let bad: QTrivExtElement<Integer> = parse_qtriv_element(&(), "(0, 1/2)")?;
    let not_partner: QTrivExtElement<Integer> = parse_qtriv_element(&(), "(3, 0)")?;
    show(&bad, &not_partner, 1000);
    Ok(())
}
