use std::fmt;

use num_bigint::BigUint;
use rand::Rng;
use serde_json::Value;

use super::euclid::Euclidean;
use crate::error::{AlgebraError, Result};
use crate::ring::{is_prime, poly_label};

/// The prime field `F_p`, `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce(&self, c: i128) -> u64 {
        c.rem_euclid(self.p as i128) as u64
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: u64) -> u64 {
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

/// A polynomial over `F_p`, coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_reduced(field, coeffs.iter().map(|&c| field.reduce(c as i128)).collect())
    }

    fn from_reduced(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { field, coeffs }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn x(field: PrimeField) -> Self {
        Self::from_reduced(field, vec![0, 1])
    }

    fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn scale(&self, c: u64) -> Self {
        Self::from_reduced(self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    /// Every monic polynomial of degree exactly `degree`, in lexicographic order of coefficients.
    pub fn monics_of_degree(field: PrimeField, degree: usize) -> Vec<Self> {
        let p = field.p as usize;
        let count = p.pow(degree as u32);
        (0..count)
            .map(|mut code| {
                let mut coeffs = Vec::with_capacity(degree + 1);
                for _ in 0..degree {
                    coeffs.push((code % p) as u64);
                    code /= p;
                }
                coeffs.push(1);
                Self::from_reduced(field, coeffs)
            })
            .collect()
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_label(&self.coeffs))
    }
}

impl Euclidean for FpPoly {
    type Domain = PrimeField;

    fn domain(&self) -> PrimeField {
        self.field
    }

    fn zero_in(field: &PrimeField) -> Self {
        Self::from_reduced(*field, Vec::new())
    }

    fn one_in(field: &PrimeField) -> Self {
        Self::from_reduced(*field, vec![1])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.field.p;
        let coeffs = (0..n)
            .map(|i| (self.coeffs.get(i).unwrap_or(&0) + other.coeffs.get(i).unwrap_or(&0)) % p)
            .collect();
        Self::from_reduced(self.field, coeffs)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn neg(&self) -> Self {
        let p = self.field.p;
        Self::from_reduced(self.field, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return Self::zero_in(&self.field);
        }
        let p = self.field.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b % p) % p;
            }
        }
        Self::from_reduced(self.field, out)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let field = self.field;
        let p = field.p;
        let dd = d.coeffs.len() - 1;
        let inv = field.inv(d.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero_in(&field), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = field.mul(rem[k + dd], inv);
            quot[k] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    rem[k + j] = (rem[k + j] + p - field.mul(c, b)) % p;
                }
            }
        }
        rem.truncate(dd);
        (Self::from_reduced(field, quot), Self::from_reduced(field, rem))
    }

    fn norm(&self) -> BigUint {
        BigUint::from(self.coeffs.len())
    }

    fn normalize(&self) -> (Self, Self) {
        if self.is_zero() {
            return (self.clone(), Self::one_in(&self.field));
        }
        let lead = self.leading();
        (
            self.scale(self.field.inv(lead)),
            Self::from_reduced(self.field, vec![lead]),
        )
    }

    fn unit_inverse(&self) -> Option<Self> {
        (self.coeffs.len() == 1).then(|| Self::from_reduced(self.field, vec![self.field.inv(self.coeffs[0])]))
    }

    fn random<G: Rng + ?Sized>(field: &PrimeField, rng: &mut G, bound: u64) -> Self {
        let len = rng.gen_range(0..=bound as usize + 1);
        let coeffs = (0..len).map(|_| rng.gen_range(0..field.p)).collect();
        Self::from_reduced(*field, coeffs)
    }

    fn parse(field: &PrimeField, text: &str) -> Result<Self> {
        parse_poly(text, field.p).map(|c| Self::from_reduced(*field, c))
    }

    fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|&c| Value::from(c)).collect())
    }

    fn from_json(field: &PrimeField, value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => Self::parse(field, s),
            Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|v| {
                        v.as_i64()
                            .ok_or_else(|| AlgebraError::InvalidInput(format!("bad coefficient {v}")))
                    })
                    .collect::<Result<Vec<i64>>>()?;
                Ok(Self::new(*field, &coeffs))
            }
            _ => Err(AlgebraError::InvalidInput(format!("expected a polynomial, got {value}"))),
        }
    }
}

/// Parses a polynomial in `x` such as `x^2+x+1`, `2x^3 - x` or `3*x^2`.
/// Coefficients are reduced modulo `p`; the result is lowest degree first.
pub fn parse_poly(text: &str, p: u64) -> Result<Vec<u64>> {
    let bad = |msg: &str| AlgebraError::InvalidInput(format!("bad polynomial {text:?}: {msg}"));
    let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    while s.starts_with('(') && s.ends_with(')') {
        s = s[1..s.len() - 1].to_string();
    }
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let mut coeffs: Vec<i128> = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let mut sign = 1i128;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if rest.len() != s.len() {
            return Err(bad("expected + or -"));
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let (coeff, degree) = match term.find('x') {
            None => (term.parse::<i128>().map_err(|_| bad("bad constant"))?, 0usize),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let c = if c.is_empty() {
                    1
                } else {
                    c.parse::<i128>().map_err(|_| bad("bad coefficient"))?
                };
                let e = &term[pos + 1..];
                let d = if e.is_empty() {
                    1
                } else {
                    e.strip_prefix('^')
                        .ok_or_else(|| bad("expected ^"))?
                        .parse::<usize>()
                        .map_err(|_| bad("bad exponent"))?
                };
                (c, d)
            }
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] += sign * coeff;
    }
    let mut out: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(p as i128) as u64).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_poly("x^2+x+1", 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_poly("2x^3 - x", 3).unwrap(), vec![0, 2, 0, 2]);
        assert_eq!(parse_poly("3*x^2+3", 3).unwrap(), Vec::<u64>::new());
        assert!(parse_poly("x^", 2).is_err());
        assert_eq!(FpPoly::parse(&f2(), "x^2+x").unwrap().to_string(), "x^2+x");
    }

    #[test]
    fn division() {
        let f = PrimeField::new(3).unwrap();
        let a = FpPoly::new(f, &[1, 0, 2, 1]);
        let d = FpPoly::new(f, &[2, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn monic_enumeration() {
        assert_eq!(FpPoly::monics_of_degree(f2(), 3).len(), 8);
        assert!(FpPoly::monics_of_degree(f2(), 2).iter().all(|q| q.normalize().0 == *q));
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(PrimeField::new(4), Err(AlgebraError::NotPrime(4)));
    }
}
