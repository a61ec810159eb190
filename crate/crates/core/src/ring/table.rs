//! Explicit-table import format.
//!
//! ```text
//! # comment
//! <order>
//! <order*order addition entries, row-major>
//! <order*order multiplication entries, row-major>
//! ```
//!
//! Entries are whitespace-separated element indices. Zero is index 0 and the
//! identity is index 1 (index 0 for the one-element ring).

use std::fmt::Write;

use super::{Construction, FiniteRing};
use crate::error::{AlgebraError, Result};
use crate::Limits;

pub fn parse_table(text: &str, name: &str, limits: &Limits) -> Result<FiniteRing> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    let mut next = |what: &str| -> Result<usize> {
        let tok = tokens
            .next()
            .ok_or_else(|| AlgebraError::TableFormat(format!("unexpected end of input reading {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| AlgebraError::TableFormat(format!("bad integer {tok:?} in {what}")))
    };
    let order = next("order")?;
    if order == 0 {
        return Err(AlgebraError::TableFormat("order must be positive".into()));
    }
    limits.check_order(order as u128)?;
    let mut add = Vec::with_capacity(order * order);
    for _ in 0..order * order {
        add.push(next("addition table")?);
    }
    let mut mul = Vec::with_capacity(order * order);
    for _ in 0..order * order {
        mul.push(next("multiplication table")?);
    }
    if tokens.next().is_some() {
        return Err(AlgebraError::TableFormat("trailing data after tables".into()));
    }
    let one = if order == 1 { 0 } else { 1 };
    FiniteRing::from_tables(
        order,
        add,
        mul,
        0,
        one,
        Construction::Table { name: name.into() },
        limits,
    )
}

/// Renders a ring in the import format, normalizing the identity to index 1.
pub fn render_table(ring: &FiniteRing) -> String {
    let (r, _) = ring.normalized();
    let n = r.order();
    let mut out = format!("{n}\n");
    for table in [r.add_table(), r.mul_table()] {
        for row in table.chunks(n) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_z3() {
        let z3 = FiniteRing::cyclic(3).unwrap();
        let text = render_table(&z3);
        let back = parse_table(&text, "z3", &Limits::default()).unwrap();
        assert!(back.same_tables(&z3));
    }

    #[test]
    fn rejects_truncated_and_invalid() {
        let limits = Limits::default();
        assert!(matches!(
            parse_table("2\n0 1 1 0\n0 0", "t", &limits),
            Err(AlgebraError::TableFormat(_))
        ));
        assert!(matches!(
            parse_table("2\n0 1 1 0\n0 0 0 0", "t", &limits),
            Err(AlgebraError::RingAxiom(_))
        ));
        assert!(parse_table("# Z2\n2\n0 1\n1 0\n0 0\n0 1\n", "t", &limits).is_ok());
    }
}
