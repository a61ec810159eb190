//! Independent oracles: brute-force set computations on finite rings,
//! `Q/Z` arithmetic on big integers, `F_2[x]` as bitmasks, and determinants
//! by cofactor expansion.

#![allow(dead_code)]

use morphic::FiniteRing;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// Principal ideals and annihilators of every element, as membership vectors.
pub struct BruteRing {
    pub n: usize,
    mul: Vec<usize>,
    add: Vec<usize>,
    left_principal: Vec<Vec<bool>>,
    left_ann: Vec<Vec<bool>>,
    right_principal: Vec<Vec<bool>>,
    right_ann: Vec<Vec<bool>>,
    one: usize,
}

impl BruteRing {
    pub fn new(ring: &FiniteRing) -> Self {
        let n = ring.order();
        let mul = ring.mul_table();
        let add = ring.add_table();
        let m = |a: usize, b: usize| mul[a * n + b];
        let mut lp = vec![vec![false; n]; n];
        let mut la = vec![vec![false; n]; n];
        let mut rp = vec![vec![false; n]; n];
        let mut ra = vec![vec![false; n]; n];
        for a in 0..n {
            for r in 0..n {
                lp[a][m(r, a)] = true;
                rp[a][m(a, r)] = true;
                la[a][r] = m(r, a) == 0;
                ra[a][r] = m(a, r) == 0;
            }
        }
        let one = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .expect("rings have an identity");
        BruteRing {
            n,
            mul,
            add,
            left_principal: lp,
            left_ann: la,
            right_principal: rp,
            right_ann: ra,
            one,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    pub fn left_morphic(&self, a: usize) -> bool {
        (0..self.n).any(|b| self.left_principal[b] == self.left_ann[a] && self.left_ann[b] == self.left_principal[a])
    }

    pub fn right_morphic(&self, a: usize) -> bool {
        (0..self.n)
            .any(|b| self.right_principal[b] == self.right_ann[a] && self.right_ann[b] == self.right_principal[a])
    }

    pub fn left_quasi(&self, a: usize) -> bool {
        (0..self.n).any(|b| self.left_principal[b] == self.left_ann[a])
            && (0..self.n).any(|c| self.left_ann[c] == self.left_principal[a])
    }

    pub fn right_quasi(&self, a: usize) -> bool {
        (0..self.n).any(|b| self.right_principal[b] == self.right_ann[a])
            && (0..self.n).any(|c| self.right_ann[c] == self.right_principal[a])
    }

    pub fn is_partner(&self, a: usize, b: usize, left: bool) -> bool {
        if left {
            self.left_principal[b] == self.left_ann[a] && self.left_ann[b] == self.left_principal[a]
        } else {
            self.right_principal[b] == self.right_ann[a] && self.right_ann[b] == self.right_principal[a]
        }
    }

    /// `ann(a)` generated by `b` and `ann(c)` generated by `a`, on one side.
    pub fn is_quasi_pair(&self, a: usize, b: usize, c: usize, left: bool) -> bool {
        if left {
            self.left_principal[b] == self.left_ann[a] && self.left_ann[c] == self.left_principal[a]
        } else {
            self.right_principal[b] == self.right_ann[a] && self.right_ann[c] == self.right_principal[a]
        }
    }

    pub fn left_ann(&self, a: usize) -> &[bool] {
        &self.left_ann[a]
    }

    pub fn left_principal(&self, a: usize) -> &[bool] {
        &self.left_principal[a]
    }

    pub fn is_left_morphic(&self) -> bool {
        (0..self.n).all(|a| self.left_morphic(a))
    }

    pub fn is_morphic(&self) -> bool {
        (0..self.n).all(|a| self.left_morphic(a) && self.right_morphic(a))
    }

    pub fn is_quasi_morphic(&self) -> bool {
        (0..self.n).all(|a| self.left_quasi(a) && self.right_quasi(a))
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| (0..self.n).any(|v| self.mul(u, v) == self.one && self.mul(v, u) == self.one))
            .collect()
    }

    pub fn unit_regular(&self, a: usize, units: &[usize]) -> bool {
        units.iter().any(|&u| self.mul(self.mul(a, u), a) == a)
    }

    pub fn is_unit_regular(&self) -> bool {
        let units = self.units();
        (0..self.n).all(|a| self.unit_regular(a, &units))
    }

    fn principal(&self, side_left: bool) -> &Vec<Vec<bool>> {
        if side_left {
            &self.left_principal
        } else {
            &self.right_principal
        }
    }

    /// Every sum of two principal one-sided ideals is principal.
    pub fn is_bezout(&self, left: bool) -> bool {
        let principal = self.principal(left);
        let mut distinct: Vec<&Vec<bool>> = Vec::new();
        for p in principal {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        for (i, x) in distinct.iter().enumerate() {
            for y in &distinct[i + 1..] {
                let mut sum = vec![false; self.n];
                for a in (0..self.n).filter(|&a| x[a]) {
                    for b in (0..self.n).filter(|&b| y[b]) {
                        sum[self.add(a, b)] = true;
                    }
                }
                if !principal.contains(&sum) {
                    return false;
                }
            }
        }
        true
    }
}

/// A class `p/q` of `Q/Z` in lowest terms with `0 ≤ p < q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frac {
    pub p: BigInt,
    pub q: BigInt,
}

impl Frac {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Frac {
        let (p, q) = (p.into(), q.into());
        assert!(!q.is_zero());
        let (p, q) = if q.is_negative() { (-p, -q) } else { (p, q) };
        let g = p.gcd(&q);
        let (p, q) = (&p / &g, &q / &g);
        Frac { p: p.mod_floor(&q), q }
    }

    pub fn zero() -> Frac {
        Frac::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn add(&self, o: &Frac) -> Frac {
        Frac::new(&self.p * &o.q + &o.p * &self.q, &self.q * &o.q)
    }

    pub fn scale(&self, r: &BigInt) -> Frac {
        Frac::new(&self.p * r, self.q.clone())
    }

    /// Parses the library's `p/q` or `0` rendering.
    pub fn parse(s: &str) -> Frac {
        match s.split_once('/') {
            Some((p, q)) => Frac::new(p.parse::<BigInt>().unwrap(), q.parse::<BigInt>().unwrap()),
            None => Frac::new(s.parse::<BigInt>().unwrap(), 1),
        }
    }
}

/// An element `(r, x)` of `Z ∝ Q/Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub r: BigInt,
    pub x: Frac,
}

impl Pair {
    pub fn new(r: impl Into<BigInt>, x: Frac) -> Pair {
        Pair { r: r.into(), x }
    }

    pub fn zero() -> Pair {
        Pair::new(0, Frac::zero())
    }

    pub fn one() -> Pair {
        Pair::new(1, Frac::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.x.is_zero()
    }

    pub fn add(&self, o: &Pair) -> Pair {
        Pair::new(&self.r + &o.r, self.x.add(&o.x))
    }

    pub fn mul(&self, o: &Pair) -> Pair {
        Pair::new(&self.r * &o.r, o.x.scale(&self.r).add(&self.x.scale(&o.r)))
    }

    /// From the library's JSON `{"r": "..", "m": ".."}`.
    pub fn from_json(v: &serde_json::Value) -> Pair {
        let r = v["r"].as_str().unwrap().parse::<BigInt>().unwrap();
        Pair::new(r, Frac::parse(v["m"].as_str().unwrap()))
    }
}

pub type PairMatrix = Vec<Vec<Pair>>;

pub fn pair_matrix_from_json(v: &serde_json::Value) -> PairMatrix {
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(Pair::from_json).collect())
        .collect()
}

pub fn pair_matmul(a: &PairMatrix, b: &PairMatrix) -> PairMatrix {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    assert_eq!(a[0].len(), k);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Pair::zero(), |acc, t| acc.add(&a[i][t].mul(&b[t][j]))))
                .collect()
        })
        .collect()
}

pub fn pair_is_identity(a: &PairMatrix) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, e)| if i == j { *e == Pair::one() } else { e.is_zero() })
    })
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// The gcd of all `k × k` minors, the `k`-th determinantal divisor.
pub fn minor_gcd(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let (rows, cols) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

/// `F_2[x]` with bit `i` the coefficient of `x^i`.
pub mod f2 {
    pub fn degree(a: u64) -> i32 {
        63 - a.leading_zeros() as i32
    }

    pub fn mul(a: u64, b: u64) -> u64 {
        let mut out = 0u64;
        for i in 0..64 {
            if b >> i & 1 == 1 {
                out ^= a << i;
            }
        }
        out
    }

    pub fn rem(mut a: u64, b: u64) -> u64 {
        assert!(b != 0);
        let db = degree(b);
        while a != 0 && degree(a) >= db {
            a ^= b << (degree(a) - db);
        }
        a
    }

    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = rem(a, b);
            a = b;
            b = r;
        }
        a
    }

    pub fn divides(d: u64, a: u64) -> bool {
        rem(a, d) == 0
    }

    /// Coefficients lowest first, as in the library's JSON.
    pub fn coeffs(a: u64) -> Vec<i64> {
        if a == 0 {
            return vec![];
        }
        (0..=degree(a)).map(|i| (a >> i & 1) as i64).collect()
    }

    pub fn from_coeffs(c: &[u64]) -> u64 {
        c.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b & 1) << i))
    }
}
