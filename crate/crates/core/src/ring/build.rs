use std::collections::BTreeSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{poly_label, Construction, FiniteRing};
use crate::error::{AlgebraError, Result};
use crate::Limits;

/// Ring constructors bound to a set of limits.
#[derive(Debug, Clone, Default)]
pub struct Builder {
    pub limits: Limits,
}

impl Builder {
    pub fn new(limits: Limits) -> Self {
        Builder { limits }
    }

    /// Integers modulo `n`, element `k` at index `k`.
    pub fn cyclic(&self, n: usize) -> Result<FiniteRing> {
        if n == 0 {
            return Err(AlgebraError::Precondition("Z(n) needs n >= 1".into()));
        }
        self.limits.check_order(n as u128)?;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push((a + b) % n);
                mul.push((a * b) % n);
            }
        }
        FiniteRing::from_tables(n, add, mul, 0, 1 % n, Construction::Cyclic(n), &self.limits)
    }

    /// The field `F_p[x]/(modulus)`; `modulus` lists coefficients lowest degree first.
    pub fn galois(&self, p: u64, modulus: &[u64]) -> Result<FiniteRing> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        trim(&mut m);
        if m.len() < 2 {
            return Err(AlgebraError::InvalidModulus(format!(
                "modulus {} must have degree at least 1",
                poly_label(&m)
            )));
        }
        let lead_inv = inv_mod(*m.last().unwrap(), p);
        for c in m.iter_mut() {
            *c = (*c * lead_inv) % p;
        }
        if let Some(factor) = find_factor(&m, p) {
            return Err(AlgebraError::ReducibleModulus {
                p,
                modulus: poly_label(&m),
                factor: poly_label(&factor),
            });
        }
        let deg = m.len() - 1;
        let order = (p as u128).pow(deg as u32);
        self.limits.check_order(order)?;
        let n = order as usize;
        let polys: Vec<Vec<u64>> = (0..n).map(|i| digits_of(i as u64, p, deg)).collect();
        let encode = |c: &[u64]| -> usize {
            c.iter().rev().fold(0u64, |acc, &d| acc * p + d) as usize
        };
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in &polys {
            for b in &polys {
                let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                add.push(encode(&s));
                mul.push(encode(&mul_mod_poly(a, b, &m, p)));
            }
        }
        FiniteRing::from_tables(
            n,
            add,
            mul,
            0,
            1 % n,
            Construction::Galois { p, modulus: m },
            &self.limits,
        )
    }

    /// `k x k` matrices over `base`. Entry `(0,0)` is the most significant digit.
    pub fn matrix(&self, k: usize, base: &Arc<FiniteRing>) -> Result<FiniteRing> {
        if k == 0 {
            return Err(AlgebraError::Precondition("Mat(k, R) needs k >= 1".into()));
        }
        let q = base.order();
        let order = (q as u128).checked_pow((k * k) as u32).unwrap_or(u128::MAX);
        self.limits.check_order(order)?;
        let n = order as usize;
        let digits: Vec<Vec<usize>> = (0..n).map(|i| matrix_digits(i, k, q)).collect();
        let encode = |d: &[usize]| d.iter().fold(0usize, |acc, &x| acc * q + x);
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        let mut scratch = vec![0usize; k * k];
        for a in &digits {
            for b in &digits {
                for (s, (x, y)) in scratch.iter_mut().zip(a.iter().zip(b)) {
                    *s = base.add(*x, *y);
                }
                add.push(encode(&scratch));
                for i in 0..k {
                    for j in 0..k {
                        let mut acc = base.zero();
                        for l in 0..k {
                            acc = base.add(acc, base.mul(a[i * k + l], b[l * k + j]));
                        }
                        scratch[i * k + j] = acc;
                    }
                }
                mul.push(encode(&scratch));
            }
        }
        let mut identity = vec![base.zero(); k * k];
        for i in 0..k {
            identity[i * k + i] = base.one();
        }
        let one = encode(&identity);
        FiniteRing::from_tables(
            n,
            add,
            mul,
            0,
            one,
            Construction::Matrix {
                k,
                base: base.clone(),
            },
            &self.limits,
        )
    }

    /// Direct product; `(l, r)` sits at index `l * right.order + r`.
    pub fn product(&self, left: &Arc<FiniteRing>, right: &Arc<FiniteRing>) -> Result<FiniteRing> {
        let (p, q) = (left.order(), right.order());
        self.limits.check_order(p as u128 * q as u128)?;
        let n = p * q;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            let (a1, a2) = (a / q, a % q);
            for b in 0..n {
                let (b1, b2) = (b / q, b % q);
                add.push(left.add(a1, b1) * q + right.add(a2, b2));
                mul.push(left.mul(a1, b1) * q + right.mul(a2, b2));
            }
        }
        let one = left.one() * q + right.one();
        FiniteRing::from_tables(
            n,
            add,
            mul,
            0,
            one,
            Construction::Product(left.clone(), right.clone()),
            &self.limits,
        )
    }

    /// `base / I` where `I` is the two-sided ideal generated by `generators`.
    pub fn quotient(&self, base: &Arc<FiniteRing>, generators: &[usize]) -> Result<FiniteRing> {
        for &g in generators {
            if g >= base.order() {
                return Err(AlgebraError::OutOfRange {
                    index: g,
                    order: base.order(),
                });
            }
        }
        let ideal = base.two_sided_ideal(generators);
        self.quotient_by_ideal(base, &ideal, generators.to_vec())
    }

    /// `base / I` for an ideal given as a bitset (verified two-sided).
    pub fn quotient_by_ideal(
        &self,
        base: &Arc<FiniteRing>,
        ideal: &FixedBitSet,
        generators: Vec<usize>,
    ) -> Result<FiniteRing> {
        if !base.is_two_sided_ideal(ideal) {
            return Err(AlgebraError::NotClosed("two-sided ideal".into()));
        }
        let (class, reps) = cosets(base.order(), |a, b| base.add(a, b), ideal);
        let n = reps.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &a in &reps {
            for &b in &reps {
                add.push(class[base.add(a, b)]);
                mul.push(class[base.mul(a, b)]);
            }
        }
        let one = class[base.one()];
        FiniteRing::from_tables(
            n,
            add,
            mul,
            0,
            one,
            Construction::Quotient {
                base: base.clone(),
                generators,
                representatives: reps,
            },
            &self.limits,
        )
    }

    /// The corner ring `eRe` with identity `e`.
    pub fn corner(&self, base: &Arc<FiniteRing>, e: usize) -> Result<FiniteRing> {
        if base.mul(e, e) != e {
            return Err(AlgebraError::NotIdempotent(e));
        }
        let set: BTreeSet<usize> = base
            .elements()
            .map(|r| base.mul(base.mul(e, r), e))
            .collect();
        let elements: Vec<usize> = set.into_iter().collect();
        let mut index = vec![usize::MAX; base.order()];
        for (i, &x) in elements.iter().enumerate() {
            index[x] = i;
        }
        let n = elements.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &a in &elements {
            for &b in &elements {
                add.push(index[base.add(a, b)]);
                mul.push(index[base.mul(a, b)]);
            }
        }
        FiniteRing::from_tables(
            n,
            add,
            mul,
            index[base.zero()],
            index[e],
            Construction::Corner {
                base: base.clone(),
                idempotent: e,
                elements,
            },
            &self.limits,
        )
    }
}

impl FiniteRing {
    pub fn cyclic(n: usize) -> Result<FiniteRing> {
        Builder::default().cyclic(n)
    }

    pub fn galois(p: u64, modulus: &[u64]) -> Result<FiniteRing> {
        Builder::default().galois(p, modulus)
    }

    pub fn matrix(k: usize, base: &Arc<FiniteRing>) -> Result<FiniteRing> {
        Builder::default().matrix(k, base)
    }

    pub fn product(left: &Arc<FiniteRing>, right: &Arc<FiniteRing>) -> Result<FiniteRing> {
        Builder::default().product(left, right)
    }

    pub fn quotient(base: &Arc<FiniteRing>, generators: &[usize]) -> Result<FiniteRing> {
        Builder::default().quotient(base, generators)
    }

    pub fn corner(base: &Arc<FiniteRing>, e: usize) -> Result<FiniteRing> {
        Builder::default().corner(base, e)
    }

    /// Index of the matrix with the given entries (row-major, base indices).
    pub fn matrix_index(&self, entries: &[usize]) -> Option<usize> {
        match &self.construction {
            Construction::Matrix { k, base } if entries.len() == k * k => {
                let q = base.order();
                entries
                    .iter()
                    .all(|&e| e < q)
                    .then(|| entries.iter().fold(0usize, |acc, &x| acc * q + x))
            }
            _ => None,
        }
    }

    /// Index of the pair `(l, r)` in a product ring.
    pub fn pair_index(&self, l: usize, r: usize) -> Option<usize> {
        match &self.construction {
            Construction::Product(left, right) if l < left.order() && r < right.order() => {
                Some(l * right.order() + r)
            }
            _ => None,
        }
    }
}

/// Partition into cosets of an additive subgroup. Returns the class of each
/// element and the least representative of each class (ascending).
pub(crate) fn cosets(
    order: usize,
    add: impl Fn(usize, usize) -> usize,
    subgroup: &FixedBitSet,
) -> (Vec<usize>, Vec<usize>) {
    let mut class = vec![usize::MAX; order];
    let mut reps = Vec::new();
    let members: Vec<usize> = subgroup.ones().collect();
    for x in 0..order {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &i in &members {
            class[add(x, i)] = c;
        }
    }
    (class, reps)
}

pub(crate) fn matrix_digits(index: usize, k: usize, q: usize) -> Vec<usize> {
    let mut d = vec![0; k * k];
    let mut rest = index;
    for slot in d.iter_mut().rev() {
        *slot = rest % q;
        rest /= q;
    }
    d
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and small; Fermat.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn digits_of(mut i: u64, p: u64, len: usize) -> Vec<u64> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(i % p);
        i /= p;
    }
    d
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn rem_poly(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn mul_mod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = rem_poly(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// A monic factor of degree between 1 and deg/2, if any (exhaustive trial division).
fn find_factor(m: &[u64], p: u64) -> Option<Vec<u64>> {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut f = digits_of(low, p, d);
            f.push(1);
            if rem_poly(m, &f, p).is_empty() {
                return Some(f);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn galois_four_element_field() {
        let f4 = FiniteRing::galois(2, &[1, 1, 1]).unwrap();
        assert_eq!(f4.order(), 4);
        // omega = x (index 2); omega^2 = x + 1 (index 3)
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.label(3), "x+1");
    }

    #[test]
    fn galois_degree_one_is_prime_field() {
        let f3 = FiniteRing::galois(3, &[0, 1]).unwrap();
        let z3 = FiniteRing::cyclic(3).unwrap();
        assert!(f3.same_tables(&z3));
    }

    #[test]
    fn galois_rejects_reducible_and_nonprime() {
        assert!(matches!(
            FiniteRing::galois(2, &[1, 0, 1]),
            Err(AlgebraError::ReducibleModulus { .. })
        ));
        assert_eq!(FiniteRing::galois(4, &[1, 1, 1]).unwrap_err(), AlgebraError::NotPrime(4));
        // degree four with no root but a quadratic factor: (x^2+x+1)^2 = x^4+x^2+1
        assert!(matches!(
            FiniteRing::galois(2, &[1, 0, 1, 0, 1]),
            Err(AlgebraError::ReducibleModulus { .. })
        ));
        assert_eq!(FiniteRing::galois(2, &[1, 1, 0, 0, 1]).unwrap().order(), 16);
    }

    #[test]
    fn matrix_rings() {
        let z4 = Arc::new(FiniteRing::cyclic(4).unwrap());
        let m1 = FiniteRing::matrix(1, &z4).unwrap();
        assert!(m1.same_tables(&z4));
        let f2 = Arc::new(FiniteRing::cyclic(2).unwrap());
        let m2 = FiniteRing::matrix(2, &f2).unwrap();
        assert_eq!(m2.order(), 16);
        assert_eq!(m2.one(), m2.matrix_index(&[1, 0, 0, 1]).unwrap());
        assert_eq!(m2.label(m2.one()), "[[1,0],[0,1]]");
        assert_eq!(FiniteRing::matrix(2, &z4).unwrap().order(), 256);
    }

    #[test]
    fn caps_are_enforced() {
        let b = Builder::new(Limits {
            order_cap: 100,
            ..Limits::default()
        });
        let z4 = Arc::new(b.cyclic(4).unwrap());
        assert!(matches!(b.matrix(2, &z4), Err(AlgebraError::CapExceeded { .. })));
        assert!(matches!(b.cyclic(101), Err(AlgebraError::CapExceeded { .. })));
    }

    #[test]
    fn product_with_zero_ring() {
        let z6 = Arc::new(FiniteRing::cyclic(6).unwrap());
        let zero = Arc::new(FiniteRing::cyclic(1).unwrap());
        let p = FiniteRing::product(&z6, &zero).unwrap();
        assert!(p.same_tables(&z6));
    }

    #[test]
    fn quotient_of_z4() {
        let z4 = Arc::new(FiniteRing::cyclic(4).unwrap());
        let q = FiniteRing::quotient(&z4, &[2]).unwrap();
        assert!(q.same_tables(&FiniteRing::cyclic(2).unwrap()));
        assert_eq!(q.label(1), "[1]");
    }
}
