use serde::Serialize;

use super::{replay, Base, ElementaryOp, LoggedOp, Matrix};
use crate::error::{AlgebraError, Result};
use crate::torsion::Euclidean;

/// `P·A·Q = D` with `D` diagonal, `d_i | d_{i+1}`, nonzero entries first and
/// each entry non-negative or monic.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct SmithForm<E: Base> {
    pub p: Matrix<E>,
    pub d: Matrix<E>,
    pub q: Matrix<E>,
    pub p_inv: Matrix<E>,
    pub q_inv: Matrix<E>,
    pub op_log: Vec<LoggedOp<E>>,
}

impl<E: Base> SmithForm<E> {
    /// The diagonal entries of `D`.
    pub fn invariants(&self) -> Vec<E> {
        self.d.diagonal_entries()
    }

    /// Number of nonzero invariants.
    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|d| !Euclidean::is_zero(*d)).count()
    }

    /// Re-checks every stated property against `a`.
    pub fn verify(&self, a: &Matrix<E>) -> Result<()> {
        if self.p.mul(a)?.mul(&self.q)? != self.d {
            return Err(AlgebraError::Alarm("P·A·Q ≠ D".into()));
        }
        if !self.d.is_diagonal() {
            return Err(AlgebraError::Alarm("D is not diagonal".into()));
        }
        if !determinant(&self.p).is_unit() || !determinant(&self.q).is_unit() {
            return Err(AlgebraError::Alarm("P or Q is not unimodular".into()));
        }
        if !self.p.mul(&self.p_inv)?.is_identity() || !self.q.mul(&self.q_inv)?.is_identity() {
            return Err(AlgebraError::Alarm("replayed inverses do not invert".into()));
        }
        let inv = self.invariants();
        for (i, d) in inv.iter().enumerate() {
            if d.normalize().0 != *d {
                return Err(AlgebraError::Alarm(format!("d_{i} = {d} is not normalized")));
            }
            if let Some(next) = inv.get(i + 1) {
                if !d.divides(next) {
                    return Err(AlgebraError::Alarm(format!("d_{i} = {d} does not divide {next}")));
                }
            }
        }
        Ok(())
    }
}

struct Workspace<E: Base> {
    w: Matrix<E>,
    log: Vec<LoggedOp<E>>,
}

impl<E: Base> Workspace<E> {
    fn push(&mut self, op: LoggedOp<E>) {
        self.w.apply(&op);
        self.log.push(op);
    }

    fn add(&mut self, row: bool, target: usize, source: usize, factor: E) {
        let op = ElementaryOp::Add { target, source, factor };
        self.push(if row { LoggedOp::row(op) } else { LoggedOp::col(op) });
    }
}

/// Pivot on the smallest nonzero entry (ties by row-major position), reduce
/// by Euclidean division, and fold in any entry the pivot fails to divide.
pub fn smith_normal_form<E: Base>(a: &Matrix<E>) -> SmithForm<E> {
    let domain = a.domain().clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut ws = Workspace {
        w: a.clone(),
        log: Vec::new(),
    };
    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = ws.w.get(i, j);
                    if Euclidean::is_zero(x) {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| x.norm() < ws.w.get(pi, pj).norm()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            if pi != t {
                ws.push(LoggedOp::row(ElementaryOp::Swap { i: t, j: pi }));
            }
            if pj != t {
                ws.push(LoggedOp::col(ElementaryOp::Swap { i: t, j: pj }));
            }
            let p = ws.w.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let (q, r) = ws.w.get(i, t).div_rem(&p);
                if !Euclidean::is_zero(&q) {
                    ws.add(true, i, t, Euclidean::neg(&q));
                }
                dirty |= !Euclidean::is_zero(&r);
            }
            for j in t + 1..cols {
                let (q, r) = ws.w.get(t, j).div_rem(&p);
                if !Euclidean::is_zero(&q) {
                    ws.add(false, j, t, Euclidean::neg(&q));
                }
                dirty |= !Euclidean::is_zero(&r);
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(ws.w.get(i, j))));
            match offender {
                Some(i) => ws.add(true, t, i, E::one_in(&domain)),
                None => break,
            }
        }
        let d = ws.w.get(t, t).clone();
        if Euclidean::is_zero(&d) {
            break;
        }
        let (_, u) = d.normalize();
        if u != E::one_in(&domain) {
            ws.push(LoggedOp::row(ElementaryOp::Scale {
                index: t,
                unit: u.unit_inverse().expect("normalize returns a unit"),
            }));
        }
    }
    let [p, q, p_inv, q_inv] = replay(&domain, rows, cols, &ws.log).expect("the log only scales by units");
    SmithForm {
        p,
        d: ws.w,
        q,
        p_inv,
        q_inv,
        op_log: ws.log,
    }
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn determinant<E: Base>(a: &Matrix<E>) -> E {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    let domain = a.domain().clone();
    if n == 0 {
        return E::one_in(&domain);
    }
    let mut m = a.to_rows();
    let mut negate = false;
    let mut prev = E::one_in(&domain);
    for k in 0..n - 1 {
        if Euclidean::is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !Euclidean::is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return E::zero_in(&domain),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = Euclidean::sub(&Euclidean::mul(&m[i][j], &m[k][k]), &Euclidean::mul(&m[i][k], &m[k][j]));
                m[i][j] = prev.exact_quotient_of(&num).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        Euclidean::neg(&d)
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::{FpPoly, Integer, PrimeField};

    fn mat(rows: &[&[i64]]) -> Matrix<Integer> {
        Matrix::from_rows(&(), rows.iter().map(|r| r.iter().map(|&v| Integer::from(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn two_by_two_example() {
        let a = mat(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        s.verify(&a).unwrap();
        assert_eq!(s.invariants(), vec![Integer::from(2), Integer::from(4)]);
    }

    #[test]
    fn trivial_inputs() {
        let zero = mat(&[&[0, 0], &[0, 0]]);
        let s = smith_normal_form(&zero);
        assert!(s.p.is_identity() && s.q.is_identity() && s.op_log.is_empty());
        let id = mat(&[&[1, 0], &[0, 1]]);
        let s = smith_normal_form(&id);
        assert_eq!(s.d, id);
    }

    #[test]
    fn rectangular_and_zero_rows_last() {
        let a = mat(&[&[0, 0, 0], &[0, 6, 4]]);
        let s = smith_normal_form(&a);
        s.verify(&a).unwrap();
        assert_eq!(s.invariants(), vec![Integer::from(2), Integer::from(0)]);
    }

    #[test]
    fn polynomial_entries() {
        let f = PrimeField::new(2).unwrap();
        let p = |s: &str| FpPoly::parse(&f, s).unwrap();
        let a = Matrix::from_rows(&f, vec![vec![p("x^2+x"), p("x")], vec![p("x^2"), p("x^2+1")]]).unwrap();
        let s = smith_normal_form(&a);
        s.verify(&a).unwrap();
        assert_eq!(s.invariants()[0], p("1"));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&mat(&[&[2, 4], &[6, 8]])), Integer::from(-8));
        assert_eq!(determinant(&mat(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])), Integer::from(-2));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), Integer::from(0));
    }
}
