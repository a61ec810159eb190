//! The map `mR ↦ ann_l^R(m)` from cyclic right submodules of `M` to left
//! ideals of `R`, for morphic extensions.
//!
//! `cargo run --example lattice_map`

use morphic::cli::{build_ring, parse_spec};
use morphic::structure::build_lattice_map;
use morphic::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    for text in [
        "TrivExt(Prod(Z(2), Z(2)), Reg(Prod(Z(2), Z(2))))",
        "TrivExt(Mat(2, Z(2)), Twist(Mat(2, Z(2)), conj([[1, 1], [0, 1]])))",
    ] {
        let s = build_ring(&parse_spec(text)?, &limits)?.extension.expect("a trivial extension");
        let map = build_lattice_map(&s)?;
        println!(
            "{text}\n    {} cyclic submodules, injective {}, inclusion reversing {}",
            map.entries.len(),
            map.is_injective(),
            map.is_inclusion_reversing()
        );
        for e in map.entries.iter().take(6) {
            println!(
                "    |mR| = {:3} generated by {:3}  ->  ideal of size {:3} generated by {:?}",
                e.submodule.len(),
                e.generators[0],
                e.image.len(),
                e.image_generator
            );
        }
    }
    Ok(())
}
