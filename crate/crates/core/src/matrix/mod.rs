//! Matrices over `ℤ`, `F_p[x]` and `R ∝ Q(R)/R`, elementary operations with
//! a replayable log, Smith normal form and diagonalization over the trivial
//! extension.

mod smith;
mod trivext;

use std::fmt::Debug;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::torsion::{Euclidean, FpPoly, FractionModOne, Integer, QTrivExtElement};

pub use smith::{determinant, smith_normal_form, SmithForm};
pub use trivext::{
    diagonalize_trivext, generator_of_fraction_block, matrix_morphic_witness, random_trivext_matrix,
    DiagonalizationResult, MatrixWitness, SideCertificate,
};

/// Entries of a matrix: a commutative ring with enough context to build constants.
pub trait Scalar: Clone + PartialEq + Debug {
    type Context: Clone + PartialEq + Debug;
    fn scalar_domain(&self) -> Self::Context;
    fn zero_of(domain: &Self::Context) -> Self;
    fn one_of(domain: &Self::Context) -> Self;
    fn is_zero_scalar(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn to_json(&self) -> Value;
    fn from_json(domain: &Self::Context, value: &Value) -> Result<Self>;
}

macro_rules! euclidean_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            type Context = <$t as Euclidean>::Domain;
            fn scalar_domain(&self) -> Self::Context {
                Euclidean::domain(self)
            }
            fn zero_of(d: &Self::Context) -> Self {
                <$t as Euclidean>::zero_in(d)
            }
            fn one_of(d: &Self::Context) -> Self {
                <$t as Euclidean>::one_in(d)
            }
            fn is_zero_scalar(&self) -> bool {
                Euclidean::is_zero(self)
            }
            fn plus(&self, other: &Self) -> Self {
                Euclidean::add(self, other)
            }
            fn negated(&self) -> Self {
                Euclidean::neg(self)
            }
            fn times(&self, other: &Self) -> Self {
                Euclidean::mul(self, other)
            }
            fn inverse(&self) -> Option<Self> {
                self.unit_inverse()
            }
            fn to_json(&self) -> Value {
                Euclidean::to_json(self)
            }
            fn from_json(d: &Self::Context, value: &Value) -> Result<Self> {
                <$t as Euclidean>::from_json(d, value)
            }
        }
    };
}

euclidean_scalar!(Integer);
euclidean_scalar!(FpPoly);

impl<E: Euclidean> Scalar for QTrivExtElement<E> {
    type Context = E::Domain;
    fn scalar_domain(&self) -> E::Domain {
        self.domain()
    }
    fn zero_of(d: &E::Domain) -> Self {
        QTrivExtElement::zero(d)
    }
    fn one_of(d: &E::Domain) -> Self {
        QTrivExtElement::one(d)
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        QTrivExtElement::plus(self, other)
    }
    fn negated(&self) -> Self {
        QTrivExtElement::negated(self)
    }
    fn times(&self, other: &Self) -> Self {
        QTrivExtElement::times(self, other)
    }
    fn inverse(&self) -> Option<Self> {
        QTrivExtElement::inverse(self)
    }
    fn to_json(&self) -> Value {
        QTrivExtElement::to_json(self)
    }
    fn from_json(d: &E::Domain, value: &Value) -> Result<Self> {
        QTrivExtElement::from_json(d, value)
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T: Scalar> {
    rows: usize,
    cols: usize,
    domain: T::Context,
    data: Vec<T>,
}

pub type BaseMatrix<E> = Matrix<E>;
pub type TrivExtMatrix<E> = Matrix<QTrivExtElement<E>>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(domain: &T::Context, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            domain: domain.clone(),
            data: vec![T::zero_of(domain); rows * cols],
        }
    }

    pub fn identity(domain: &T::Context, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one_of(domain);
        }
        m
    }

    pub fn from_rows(domain: &T::Context, rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::InvalidInput("matrix rows have different lengths".into()));
        }
        let data: Vec<T> = rows.into_iter().flatten().collect();
        if data.iter().any(|x| x.scalar_domain() != *domain) {
            return Err(AlgebraError::DomainMismatch);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            domain: domain.clone(),
            data,
        })
    }

    pub fn diagonal(domain: &T::Context, entries: Vec<T>) -> Result<Self> {
        let n = entries.len();
        let mut m = Self::zeros(domain, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            if e.scalar_domain() != *domain {
                return Err(AlgebraError::DomainMismatch);
            }
            m.data[i * n + i] = e;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> &T::Context {
        &self.domain
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Scalar>(&self, domain: &U::Context, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            domain: domain.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::InvalidInput(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.domain, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_scalar() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).plus(&a.times(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.domain, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero_scalar)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero_scalar()))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.domain, self.rows)
    }

    pub fn diagonal_entries(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn apply(&mut self, op: &LoggedOp<T>) {
        match op.side {
            Side::Row => self.apply_row(&op.op),
            Side::Col => self.apply_col(&op.op),
        }
    }

    fn apply_row(&mut self, op: &ElementaryOp<T>) {
        match op {
            ElementaryOp::Swap { i, j } => {
                for c in 0..self.cols {
                    self.data.swap(i * self.cols + c, j * self.cols + c);
                }
            }
            ElementaryOp::Add { target, source, factor } => {
                for c in 0..self.cols {
                    let v = self.get(*target, c).plus(&factor.times(self.get(*source, c)));
                    self.set(*target, c, v);
                }
            }
            ElementaryOp::Scale { index, unit } => {
                for c in 0..self.cols {
                    let v = unit.times(self.get(*index, c));
                    self.set(*index, c, v);
                }
            }
        }
    }

    fn apply_col(&mut self, op: &ElementaryOp<T>) {
        match op {
            ElementaryOp::Swap { i, j } => {
                for r in 0..self.rows {
                    self.data.swap(r * self.cols + i, r * self.cols + j);
                }
            }
            ElementaryOp::Add { target, source, factor } => {
                for r in 0..self.rows {
                    let v = self.get(r, *target).plus(&self.get(r, *source).times(factor));
                    self.set(r, *target, v);
                }
            }
            ElementaryOp::Scale { index, unit } => {
                for r in 0..self.rows {
                    let v = self.get(r, *index).times(unit);
                    self.set(r, *index, v);
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array((0..self.cols).map(|j| self.get(i, j).to_json()).collect()))
                .collect(),
        )
    }

    pub fn from_json(domain: &T::Context, value: &Value) -> Result<Self> {
        let bad = || AlgebraError::InvalidInput("a matrix is a JSON array of rows".into());
        let rows = value
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|v| T::from_json(domain, v))
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(domain, rows)
    }
}

impl<T: Scalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// A Euclidean base usable as matrix entries.
pub trait Base: Euclidean + Scalar<Context = <Self as Euclidean>::Domain> {}

impl<E: Euclidean + Scalar<Context = <E as Euclidean>::Domain>> Base for E {}

impl<E: Base> Matrix<QTrivExtElement<E>> {
    /// `B₁`, the matrix of ring parts.
    pub fn ring_part(&self) -> Matrix<E> {
        self.map(&self.domain, |x| x.r.clone())
    }

    /// `B₂`, the grid of module parts.
    pub fn module_part(&self) -> Vec<Vec<FractionModOne<E>>> {
        self.to_rows().into_iter().map(|row| row.into_iter().map(|x| x.m).collect()).collect()
    }
}

/// Whether an operation acts on rows (left multiplication) or columns (right multiplication).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Row,
    Col,
}

/// An elementary operation. For rows, `Add` performs `row_target += factor·row_source`
/// and `Scale` performs `row_index = unit·row_index`; columns multiply on the right.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementaryOp<T> {
    Swap { i: usize, j: usize },
    Add { target: usize, source: usize, factor: T },
    Scale { index: usize, unit: T },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoggedOp<T> {
    pub side: Side,
    pub op: ElementaryOp<T>,
}

impl<T: Scalar> LoggedOp<T> {
    pub fn row(op: ElementaryOp<T>) -> Self {
        LoggedOp { side: Side::Row, op }
    }

    pub fn col(op: ElementaryOp<T>) -> Self {
        LoggedOp { side: Side::Col, op }
    }

    pub fn inverse(&self) -> Result<Self> {
        let op = match &self.op {
            ElementaryOp::Swap { i, j } => ElementaryOp::Swap { i: *i, j: *j },
            ElementaryOp::Add { target, source, factor } => ElementaryOp::Add {
                target: *target,
                source: *source,
                factor: factor.negated(),
            },
            ElementaryOp::Scale { index, unit } => ElementaryOp::Scale {
                index: *index,
                unit: unit
                    .inverse()
                    .ok_or_else(|| AlgebraError::Alarm("scaling by a non-unit".into()))?,
            },
        };
        Ok(LoggedOp { side: self.side, op })
    }

    /// The `n × n` elementary matrix: `E·A` (rows) or `A·E` (columns) performs the operation.
    pub fn matrix(&self, domain: &T::Context, n: usize) -> Matrix<T> {
        let mut m = Matrix::identity(domain, n);
        m.apply(self);
        m
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LoggedOp<U> {
        let op = match &self.op {
            ElementaryOp::Swap { i, j } => ElementaryOp::Swap { i: *i, j: *j },
            ElementaryOp::Add { target, source, factor } => ElementaryOp::Add {
                target: *target,
                source: *source,
                factor: f(factor),
            },
            ElementaryOp::Scale { index, unit } => ElementaryOp::Scale {
                index: *index,
                unit: f(unit),
            },
        };
        LoggedOp { side: self.side, op }
    }

    pub fn shifted(&self, offset: usize) -> Self {
        let op = match &self.op {
            ElementaryOp::Swap { i, j } => ElementaryOp::Swap {
                i: i + offset,
                j: j + offset,
            },
            ElementaryOp::Add { target, source, factor } => ElementaryOp::Add {
                target: target + offset,
                source: source + offset,
                factor: factor.clone(),
            },
            ElementaryOp::Scale { index, unit } => ElementaryOp::Scale {
                index: index + offset,
                unit: unit.clone(),
            },
        };
        LoggedOp { side: self.side, op }
    }

    pub fn to_json(&self) -> Value {
        let side = match self.side {
            Side::Row => "row",
            Side::Col => "col",
        };
        match &self.op {
            ElementaryOp::Swap { i, j } => json!({"kind": "swap", "side": side, "i": i, "j": j}),
            ElementaryOp::Add { target, source, factor } => json!({
                "kind": "add", "side": side, "target": target, "source": source, "parameter": factor.to_json()
            }),
            ElementaryOp::Scale { index, unit } => json!({
                "kind": "scale", "side": side, "index": index, "parameter": unit.to_json()
            }),
        }
    }
}

impl<T: Scalar> Serialize for LoggedOp<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Replays a log on identity matrices: returns `(U, V, U⁻¹, V⁻¹)` with
/// `U = E_k⋯E_1` for the row operations and `V = F_1⋯F_l` for the columns.
pub fn replay<T: Scalar>(domain: &T::Context, rows: usize, cols: usize, log: &[LoggedOp<T>]) -> Result<[Matrix<T>; 4]> {
    let mut u = Matrix::identity(domain, rows);
    let mut v = Matrix::identity(domain, cols);
    let mut u_inv = Matrix::identity(domain, rows);
    let mut v_inv = Matrix::identity(domain, cols);
    for op in log {
        let inv = op.inverse()?;
        match op.side {
            Side::Row => {
                u.apply(op);
                u_inv = u_inv.mul(&inv.matrix(domain, rows))?;
            }
            Side::Col => {
                v.apply(op);
                v_inv = inv.matrix(domain, cols).mul(&v_inv)?;
            }
        }
    }
    Ok([u, v, u_inv, v_inv])
}
