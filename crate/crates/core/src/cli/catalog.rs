use serde::Serialize;

/// A named built-in specification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: String,
}

const CYCLIC: [u64; 8] = [2, 3, 4, 6, 8, 9, 12, 16];

const FIELDS: [(&str, &str); 9] = [
    ("F2", "GF(2, x+1)"),
    ("F4", "GF(2, x^2+x+1)"),
    ("F8", "GF(2, x^3+x+1)"),
    ("F8b", "GF(2, x^3+x^2+1)"),
    ("F3", "GF(3, x)"),
    ("F9", "GF(3, x^2+1)"),
    ("F9b", "GF(3, x^2+x+2)"),
    ("F9c", "GF(3, x^2+2x+2)"),
    ("F5", "GF(5, x+3)"),
];

const OTHER_RINGS: [(&str, &str); 8] = [
    ("M2(Z2)", "Mat(2, Z(2))"),
    ("M2(F4)", "Mat(2, GF(2, x^2+x+1))"),
    ("Z2xZ2", "Prod(Z(2), Z(2))"),
    ("Z2xZ3", "Prod(Z(2), Z(3))"),
    ("Z4xZ2", "Prod(Z(4), Z(2))"),
    ("Z2xF4", "Prod(Z(2), GF(2, x^2+x+1))"),
    ("M2(Z2)xZ2", "Prod(Mat(2, Z(2)), Z(2))"),
    ("F2[x,y]/(x,y)^2", "Table(F2xy)"),
];

/// Bases of the regular extensions `R ∝ R`.
const REGULAR_BASES: [&str; 17] = [
    "Z2", "Z3", "Z4", "Z6", "Z8", "Z9", "Z12", "Z16", "F4", "F8", "F9", "M2(Z2)", "Z2xZ2", "Z2xZ3", "Z4xZ2",
    "Z2xF4", "F2[x,y]/(x,y)^2",
];

const TWISTS: [(&str, &str, &str); 6] = [
    ("F4", "frobenius", "frobenius"),
    ("F8", "frobenius", "frobenius"),
    ("F9", "frobenius", "frobenius"),
    ("Z2xZ2", "swap", "swap"),
    ("Z2xZ2", "id", "id"),
    ("M2(Z2)", "conj(u)", "conj([[1, 1], [0, 1]])"),
];

const ZERO_BASES: [&str; 5] = ["Z4", "F4", "Z2xZ2", "M2(Z2)", "F2[x,y]/(x,y)^2"];

fn ring_spec(name: &str) -> String {
    if let Some(n) = name.strip_prefix('Z').and_then(|n| n.parse::<u64>().ok()) {
        return format!("Z({n})");
    }
    FIELDS
        .iter()
        .chain(OTHER_RINGS.iter())
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s.to_string())
        .unwrap_or_else(|| panic!("unknown catalog ring {name}"))
}

/// Every built-in ring and trivial extension, sorted by name.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let entry = |name: String, spec: String| CatalogEntry { name, spec };
    for n in CYCLIC {
        out.push(entry(format!("Z{n}"), format!("Z({n})")));
    }
    for (name, spec) in FIELDS.iter().chain(OTHER_RINGS.iter()) {
        out.push(entry(name.to_string(), spec.to_string()));
    }
    for base in REGULAR_BASES {
        let r = ring_spec(base);
        out.push(entry(format!("{base} ∝ {base}"), format!("TrivExt({r}, Reg({r}))")));
    }
    for (base, label, endo) in TWISTS {
        let r = ring_spec(base);
        out.push(entry(
            format!("{base} ∝ {base}({label})"),
            format!("TrivExt({r}, Twist({r}, {endo}))"),
        ));
    }
    for base in ZERO_BASES {
        let r = ring_spec(base);
        out.push(entry(format!("{base} ∝ 0"), format!("TrivExt({r}, Zero({r}))")));
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::spec::parse_spec;

    #[test]
    fn contents() {
        let c = catalog();
        let specs: Vec<&str> = c.iter().map(|e| e.spec.as_str()).collect();
        assert!(specs.contains(&"Z(4)"));
        assert!(specs.contains(&"Table(F2xy)"));
        assert!(specs.contains(&"TrivExt(Z(4), Reg(Z(4)))"));
        let mut names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        names.dedup();
        assert_eq!(names.len(), c.len());
    }

    #[test]
    fn round_trips() {
        for e in catalog() {
            let ast = parse_spec(&e.spec).unwrap_or_else(|err| panic!("{}: {err}", e.spec));
            let rendered = ast.to_string();
            assert_eq!(rendered, e.spec);
            assert_eq!(parse_spec(&rendered).unwrap(), ast);
        }
    }
}
