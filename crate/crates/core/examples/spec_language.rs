//! Parses ring specifications, renders them back, and shows the span of a
//! rejected input.
//!
//! `cargo run --example spec_language`

use morphic::cli::{build_ring, parse_spec};
use morphic::Limits;

fn main() {
    let inputs = [
        "TrivExt(Z(4), Reg(Z(4)))",
        "TrivExt(Prod(Z(2),Z(2)), Twist(Prod(Z(2),Z(2)), swap))",
        "Mat(2,GF(2,x^2+x+1))",
        "GF(4, x^2+x+1)",
        "TrivExt(Z(6), Twist(Z(6), frobenius))",
        "Prod(Z(2), Z(3)",
    ];
    for text in inputs {
        match parse_spec(text) {
            Ok(ast) => {
                let order = build_ring(&ast, &Limits::default()).map(|b| b.ring.order());
                println!("{text}\n    -> {ast}  (order {order:?})");
            }
            Err(e) => {
                println!("{text}\n    {}{}", " ".repeat(e.span.start), "^".repeat((e.span.end - e.span.start).max(1)));
                println!("    {e}");
            }
        }
    }
}
