use serde::Serialize;

use super::{
    annihilator_generator_in_r, divide, morphic_partner, verify_partner, Euclidean, FpPoly, FractionModOne, Integer,
    PrimeField, QTrivExtElement,
};

/// `R·(1/q) ↦ ann^R(1/q)` over a finite list of denominators.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeBijectionReport {
    pub entries: usize,
    /// Submodules whose image is not `qR`.
    pub wrong_images: Vec<String>,
    /// Pairs of distinct submodules with the same image.
    pub collisions: Vec<(String, String)>,
    /// Pairs `(q, q')` where `N_q ⊆ N_q'` disagrees with `q'R ⊆ qR`.
    pub order_violations: Vec<(String, String)>,
    pub passed: bool,
}

/// Checks the map on the submodules generated by `1/q` for the given normalized `q`.
pub fn lattice_bijection<E: Euclidean>(denominators: &[E]) -> LatticeBijectionReport {
    let gens: Vec<FractionModOne<E>> = denominators
        .iter()
        .map(|q| FractionModOne::reciprocal(q).expect("denominators are nonzero"))
        .collect();
    let images: Vec<E> = gens.iter().map(annihilator_generator_in_r).collect();
    let mut wrong_images = Vec::new();
    let mut collisions = Vec::new();
    let mut order_violations = Vec::new();
    for (i, q) in denominators.iter().enumerate() {
        if !images[i].associated(q) {
            wrong_images.push(q.to_string());
        }
        for (j, q2) in denominators.iter().enumerate() {
            if i == j {
                continue;
            }
            if i < j && images[i].associated(&images[j]) {
                collisions.push((q.to_string(), q2.to_string()));
            }
            // 1/q ∈ R·(1/q') iff q'·(1/q) = 0.
            let sub = gens[i].scaled(q2).is_zero();
            let sup = images[i].divides(&images[j]);
            if sub != sup {
                order_violations.push((q.to_string(), q2.to_string()));
            }
        }
    }
    let passed = wrong_images.is_empty() && collisions.is_empty() && order_violations.is_empty();
    LatticeBijectionReport {
        entries: denominators.len(),
        wrong_images,
        collisions,
        order_violations,
        passed,
    }
}

/// Denominators `1 ≤ q ≤ bound` over `ℤ`.
pub fn lattice_bijection_sample(bound: u64) -> LatticeBijectionReport {
    let qs: Vec<Integer> = (1..=bound.max(1)).map(Integer::from).collect();
    lattice_bijection(&qs)
}

/// All monic denominators of degree at most `degree` over `F_p`.
pub fn lattice_bijection_sample_poly(field: PrimeField, degree: usize) -> LatticeBijectionReport {
    let qs: Vec<FpPoly> = (0..=degree).flat_map(|d| FpPoly::monics_of_degree(field, d)).collect();
    lattice_bijection(&qs)
}

fn fractions_with_denominator(q: u64) -> Vec<FractionModOne<Integer>> {
    let q = Integer::from(q);
    let mut out = vec![FractionModOne::reduce_unchecked(&Integer::from(1), &q)];
    if q > Integer::from(2) {
        out.push(FractionModOne::reduce_unchecked(&(&q - 1), &q));
    }
    out
}

/// Exactness of `0 → R →(·a) R →(·1/a) Q/R →(·a) Q/R → 0` at bounded denominators.
#[derive(Debug, Clone, Serialize)]
pub struct ExactSequenceReport {
    pub a_bound: u64,
    pub q_bound: u64,
    pub checks: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

pub fn exact_sequence_check(a_bound: u64, q_bound: u64) -> ExactSequenceReport {
    let mut checks = 0;
    let mut failures = Vec::new();
    for a in 1..=a_bound {
        let ai = Integer::from(a);
        let m = FractionModOne::reciprocal(&ai).expect("a is nonzero");
        for r in 1..=q_bound as i64 {
            checks += 1;
            if (&ai * Integer::from(r)).is_zero() {
                failures.push(format!("{a}·{r} = 0"));
            }
        }
        if !m.scaled(&ai).is_zero() {
            failures.push(format!("a·(1/a) ≠ 0 for a = {a}"));
        }
        for q in 1..=q_bound {
            for y in fractions_with_denominator(q) {
                checks += 1;
                let in_kernel = y.scaled(&ai).is_zero();
                // y ∈ R·(1/a) with r = p·(a/q) when q | a.
                let in_image = match y.denominator().exact_quotient_of(&ai) {
                    Some(k) => m.scaled(&(y.numerator() * k)) == y,
                    None => false,
                };
                if in_kernel != in_image {
                    failures.push(format!("kernel/image disagree at a = {a}, y = {y}"));
                }
                let z = match divide(&y, &ai) {
                    Ok(z) => z,
                    Err(e) => {
                        failures.push(format!("divide({y}, {a}): {e}"));
                        continue;
                    }
                };
                if z.scaled(&ai) != y {
                    failures.push(format!("{a}·{z} ≠ {y}"));
                }
            }
        }
    }
    ExactSequenceReport {
        a_bound,
        q_bound,
        checks,
        passed: failures.is_empty(),
        failures,
    }
}

/// Divisibility of `Q/R` by every nonzero `a`, and partners for `(a, y)` and `(0, y)`.
#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityReport {
    pub a_bound: u64,
    pub q_bound: u64,
    pub divisions: usize,
    pub partners: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

pub fn divisibility_check(a_bound: u64, q_bound: u64) -> DivisibilityReport {
    let mut divisions = 0;
    let mut partners = 0;
    let mut failures = Vec::new();
    for q in 1..=q_bound {
        for y in fractions_with_denominator(q) {
            let module_element = QTrivExtElement::module(y.clone());
            let w = morphic_partner(&module_element);
            partners += 1;
            match verify_partner(&module_element, &w, 0, 0, 0) {
                Ok(rep) if rep.passed => {}
                _ => failures.push(format!("partner of {module_element}")),
            }
            for a in 1..=a_bound {
                let ai = Integer::from(a);
                divisions += 1;
                match divide(&y, &ai) {
                    Ok(z) if z.scaled(&ai) == y => {}
                    _ => failures.push(format!("{y} not divided by {a}")),
                }
                let e = QTrivExtElement { r: ai, m: y.clone() };
                let w = morphic_partner(&e);
                partners += 1;
                match verify_partner(&e, &w, 0, 0, 0) {
                    Ok(rep) if rep.passed => {}
                    _ => failures.push(format!("partner of {e}")),
                }
            }
        }
    }
    DivisibilityReport {
        a_bound,
        q_bound,
        divisions,
        partners,
        passed: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_over_integers() {
        let rep = lattice_bijection_sample(12);
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.entries, 12);
    }

    #[test]
    fn lattice_over_f2x() {
        let rep = lattice_bijection_sample_poly(PrimeField::new(2).unwrap(), 2);
        assert!(rep.passed);
        assert_eq!(rep.entries, 7);
    }

    #[test]
    fn small_sequences() {
        assert!(exact_sequence_check(12, 30).passed);
        assert!(divisibility_check(10, 10).passed);
    }
}
