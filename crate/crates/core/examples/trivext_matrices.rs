//! Diagonalizes a matrix over `ℤ ∝ ℚ/ℤ` by invertible `U`, `V` and builds a
//! matrix `W` with `ann_l(B) = M·W`, `ann_l(W) = M·B` and the right-hand
//! versions, certified by sampling.
//!
//! `cargo run --example trivext_matrices`

use morphic::matrix::{matrix_morphic_witness, TrivExtMatrix};
use serde_json::json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = TrivExtMatrix::<morphic::torsion::Integer>::from_json(
        &(),
        &json!([
            [{"r": "4", "m": "1/3"}, {"r": "6", "m": "0"}],
            [{"r": "0", "m": "1/2"}, {"r": "10", "m": "2/5"}]
        ]),
    )?;
    let w = matrix_morphic_witness(&b, 500, 50, 1)?;
    let d = &w.diagonalization;
    println!("D = {}", d.d.to_json());
    println!("U = {}", d.u.to_json());
    println!("V = {}", d.v.to_json());
    println!("W = {}", w.witness.to_json());
    println!(
        "left certified {} ({} samples), right certified {} ({} samples)",
        w.left.passed(),
        w.left.samples,
        w.right.passed(),
        w.right.samples
    );
    Ok(())
}
