//! Smith normal form over `ℤ` and `F_3[x]` with the transformation matrices
//! and the elementary operation log.
//!
//! `cargo run --example smith_form`

use morphic::matrix::{smith_normal_form, Matrix};
use morphic::torsion::{Euclidean, FpPoly, Integer, PrimeField};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ints = |rows: &[&[i64]]| -> Vec<Vec<Integer>> {
        rows.iter().map(|r| r.iter().map(|&v| Integer::from(v)).collect()).collect()
    };
    let a = Matrix::from_rows(&(), ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]))?;
    let s = smith_normal_form(&a);
    s.verify(&a)?;
    println!("A = {}", a.to_json());
    println!("D = {}", s.d.to_json());
    println!("P = {}", s.p.to_json());
    println!("Q = {}", s.q.to_json());
    println!("{} elementary operations", s.op_log.len());

    let f3 = PrimeField::new(3)?;
    let p = |t: &str| FpPoly::parse(&f3, t);
    let b = Matrix::from_rows(&f3, vec![vec![p("x^2+1")?, p("x+2")?], vec![p("x^3+x")?, p("x^2+2x")?]])?;
    let s = smith_normal_form(&b);
    s.verify(&b)?;
    let inv: Vec<String> = s.invariants().iter().map(|d| d.to_string()).collect();
    println!("invariants over F_3[x]: {inv:?}");
    Ok(())
}
