use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::smith::{determinant, smith_normal_form};
use super::{replay, Base, ElementaryOp, LoggedOp, Matrix, TrivExtMatrix};
use crate::error::{AlgebraError, Result};
use crate::torsion::{
    annihilator_shape, divide, lcm, morphic_partner, principal_multiplier, verify_partner, Euclidean, FractionModOne,
    QTrivExtElement,
};

/// `U·B·V = D` over `R ∝ Q/R` with replayed inverses.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct DiagonalizationResult<E: Base> {
    pub u: TrivExtMatrix<E>,
    pub v: TrivExtMatrix<E>,
    pub d: TrivExtMatrix<E>,
    pub u_inv: TrivExtMatrix<E>,
    pub v_inv: TrivExtMatrix<E>,
    /// Number of nonzero ring-part invariants.
    pub ring_rank: usize,
    /// Generator `n` of the submodule spanned by the trailing module block.
    pub fraction_generator: FractionModOne<E>,
    pub op_log: Vec<LoggedOp<QTrivExtElement<E>>>,
}

impl<E: Base> DiagonalizationResult<E> {
    /// Re-checks `UBV = D`, diagonality, the ring-part chain, and invertibility both
    /// by unit determinants of the ring parts and by the replayed inverses.
    pub fn verify(&self, b: &TrivExtMatrix<E>) -> Result<()> {
        if self.u.mul(b)?.mul(&self.v)? != self.d {
            return Err(AlgebraError::Alarm("U·B·V ≠ D".into()));
        }
        if !self.d.is_diagonal() {
            return Err(AlgebraError::Alarm("D is not diagonal".into()));
        }
        let diag: Vec<E> = self.d.diagonal_entries().into_iter().map(|x| x.r).collect();
        for w in diag.windows(2) {
            if !w[0].divides(&w[1]) {
                return Err(AlgebraError::Alarm(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        if !determinant(&self.u.ring_part()).is_unit() || !determinant(&self.v.ring_part()).is_unit() {
            return Err(AlgebraError::Alarm("U or V has a non-unit ring-part determinant".into()));
        }
        for (m, inv) in [(&self.u, &self.u_inv), (&self.v, &self.v_inv)] {
            if !m.mul(inv)?.is_identity() || !inv.mul(m)?.is_identity() {
                return Err(AlgebraError::Alarm("replayed inverse does not invert".into()));
            }
        }
        Ok(())
    }
}

/// `n = 1/lcm(denominators)` and `r_ij` with `r_ij·n = n_ij`.
pub fn generator_of_fraction_block<E: Base>(
    domain: &E::Domain,
    block: &[Vec<FractionModOne<E>>],
) -> Result<(FractionModOne<E>, Matrix<E>)> {
    let mut l = E::one_in(domain);
    for x in block.iter().flatten() {
        if x.domain() != *domain {
            return Err(AlgebraError::DomainMismatch);
        }
        l = lcm(&l, x.denominator());
    }
    let n = FractionModOne::reciprocal(&l)?;
    let coeffs = block
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let k = x.denominator().exact_quotient_of(&l).expect("denominators divide the lcm");
                    Euclidean::mul(x.numerator(), &k)
                })
                .collect()
        })
        .collect();
    let coeffs = Matrix::from_rows(domain, coeffs)?;
    for (i, row) in block.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if n.scaled(coeffs.get(i, j)) != *x {
                return Err(AlgebraError::Alarm(format!("r·n ≠ n_ij at ({i}, {j})")));
            }
        }
    }
    Ok((n, coeffs))
}

fn lift<E: Base>(op: &LoggedOp<E>) -> LoggedOp<QTrivExtElement<E>> {
    op.map(|x| QTrivExtElement::ring(x.clone()))
}

/// Ring-part Smith form, then the trailing module block through its single
/// generator, then clearing of the first `k` rows and columns by division.
pub fn diagonalize_trivext<E: Base>(b: &TrivExtMatrix<E>) -> Result<DiagonalizationResult<E>> {
    if !b.is_square() {
        return Err(AlgebraError::Precondition("diagonalization needs a square matrix".into()));
    }
    let n = b.rows();
    let domain = b.domain().clone();
    let mut w = b.clone();
    let mut log: Vec<LoggedOp<QTrivExtElement<E>>> = Vec::new();
    let mut push = |w: &mut TrivExtMatrix<E>, op: LoggedOp<QTrivExtElement<E>>| {
        w.apply(&op);
        log.push(op);
    };

    let snf = smith_normal_form(&w.ring_part());
    for op in &snf.op_log {
        push(&mut w, lift(op));
    }
    let k = snf.rank();

    let block: Vec<Vec<FractionModOne<E>>> = (k..n)
        .map(|i| (k..n).map(|j| w.get(i, j).m.clone()).collect())
        .collect();
    let (generator, coeffs) = generator_of_fraction_block(&domain, &block)?;
    let inner = smith_normal_form(&coeffs);
    for op in &inner.op_log {
        push(&mut w, lift(&op.shifted(k)));
    }

    for t in 0..k {
        let d = w.get(t, t).r.clone();
        for j in (0..n).filter(|&j| j != t) {
            let m = w.get(t, j).m.clone();
            if m.is_zero() {
                continue;
            }
            let x = divide(&m, &d)?;
            let op = ElementaryOp::Add {
                target: j,
                source: t,
                factor: QTrivExtElement::module(x.negated()),
            };
            push(&mut w, LoggedOp::col(op));
        }
        for i in (0..n).filter(|&i| i != t) {
            let m = w.get(i, t).m.clone();
            if m.is_zero() {
                continue;
            }
            let y = divide(&m, &d)?;
            let op = ElementaryOp::Add {
                target: i,
                source: t,
                factor: QTrivExtElement::module(y.negated()),
            };
            push(&mut w, LoggedOp::row(op));
        }
    }

    let [u, v, u_inv, v_inv] = replay(&domain, n, n, &log)?;
    let result = DiagonalizationResult {
        u,
        v,
        d: w,
        u_inv,
        v_inv,
        ring_rank: k,
        fraction_generator: generator,
        op_log: log,
    };
    result.verify(b)?;
    Ok(result)
}

/// Sampled certification of `ann_l(B) = M·W` and `ann_l(W) = M·B` (left), or
/// the right-hand versions through transposes.
#[derive(Debug, Clone, Serialize)]
pub struct SideCertificate {
    pub closed_form: bool,
    pub samples: usize,
    pub failure: Option<String>,
}

impl SideCertificate {
    pub fn passed(&self) -> bool {
        self.closed_form && self.failure.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct MatrixWitness<E: Base> {
    pub diagonalization: DiagonalizationResult<E>,
    /// Entrywise partners of the diagonal of `D`.
    pub diagonal_partner: TrivExtMatrix<E>,
    /// `W = V·W′·U`.
    pub witness: TrivExtMatrix<E>,
    pub left: SideCertificate,
    pub right: SideCertificate,
}

impl<E: Base> MatrixWitness<E> {
    pub fn certified(&self) -> bool {
        self.left.passed() && self.right.passed()
    }
}

/// `A = P·D·Q` with `P, Q` invertible and `D` diagonal, stored through
/// `P⁻¹` and `Q⁻¹`.
struct Factored<'a, E: Base> {
    a: &'a TrivExtMatrix<E>,
    p_inv: &'a TrivExtMatrix<E>,
    q_inv: &'a TrivExtMatrix<E>,
    diag: Vec<QTrivExtElement<E>>,
}

impl<E: Base> Factored<'_, E> {
    /// Decides `X ∈ M·A` by solving `X·Q⁻¹ = Y′·D` entrywise; returns a `Y`
    /// with `Y·A = X`, verified by multiplication.
    fn left_multiple(&self, x: &TrivExtMatrix<E>) -> Option<TrivExtMatrix<E>> {
        let t = x.mul(self.q_inv).ok()?;
        let mut y_prime = Matrix::zeros(x.domain(), x.rows(), self.diag.len());
        for i in 0..t.rows() {
            for (j, d) in self.diag.iter().enumerate() {
                y_prime.set(i, j, principal_multiplier(d, t.get(i, j))?);
            }
        }
        let y = y_prime.mul(self.p_inv).ok()?;
        (y.mul(self.a).ok()? == *x).then_some(y)
    }

    /// A random `X` with `X·A = 0`: `X = Z·P⁻¹` with `Z_ij ∈ ann(d_jj)`.
    fn random_annihilator<G: Rng + ?Sized>(&self, rows: usize, rng: &mut G, bound: u64) -> TrivExtMatrix<E> {
        let mut z = Matrix::zeros(self.a.domain(), rows, self.diag.len());
        for i in 0..rows {
            for (j, d) in self.diag.iter().enumerate() {
                z.set(i, j, annihilator_shape(d).random_member(rng, bound));
            }
        }
        z.mul(self.p_inv).expect("conformable")
    }
}

/// Left certification for `B = U⁻¹·D·V⁻¹` and `W = V·W′·U`.
#[allow(clippy::too_many_arguments)]
fn certify_side<E: Base>(
    b: &TrivExtMatrix<E>,
    d: &TrivExtMatrix<E>,
    u: &TrivExtMatrix<E>,
    v: &TrivExtMatrix<E>,
    u_inv: &TrivExtMatrix<E>,
    v_inv: &TrivExtMatrix<E>,
    w_prime: &TrivExtMatrix<E>,
    w: &TrivExtMatrix<E>,
    samples: usize,
    bound: u64,
    rng: &mut ChaCha8Rng,
) -> SideCertificate {
    let diag = d.diagonal_entries();
    let partners = w_prime.diagonal_entries();
    let closed_form = diag
        .iter()
        .zip(&partners)
        .all(|(x, y)| verify_partner(x, y, 0, 0, 0).map(|r| r.passed).unwrap_or(false));
    let b_fact = Factored {
        a: b,
        p_inv: u,
        q_inv: v,
        diag,
    };
    let w_fact = Factored {
        a: w,
        p_inv: v_inv,
        q_inv: u_inv,
        diag: partners,
    };
    let n = b.rows();
    let mut failure = None;
    let mut drawn = 0;
    'outer: while drawn < samples {
        drawn += 1;
        // ann_l(B) = M·W, then ann_l(W) = M·B.
        for (target, other, label) in [(&b_fact, &w_fact, "ann_l(B) = M·W"), (&w_fact, &b_fact, "ann_l(W) = M·B")] {
            let candidates = [
                random_trivext_matrix(b.domain(), n, bound, bound, rng),
                target.random_annihilator(n, rng, bound),
                random_trivext_matrix(b.domain(), n, bound, bound, rng)
                    .mul(other.a)
                    .expect("conformable"),
            ];
            for x in candidates {
                let annihilates = x.mul(target.a).map(|p| p.is_zero()).unwrap_or(false);
                let member = other.left_multiple(&x).is_some();
                if annihilates != member {
                    failure = Some(format!(
                        "{label} fails at sample {drawn}: annihilates = {annihilates}, member = {member}, X = {}",
                        x.to_json()
                    ));
                    break 'outer;
                }
            }
        }
    }
    SideCertificate {
        closed_form,
        samples: drawn,
        failure,
    }
}

/// Diagonalizes `B`, pairs each diagonal entry with its morphic partner, and
/// transfers the diagonal partner back: `W = V·W′·U`. Both annihilator
/// equalities are then certified on each side.
pub fn matrix_morphic_witness<E: Base>(
    b: &TrivExtMatrix<E>,
    samples: usize,
    bound: u64,
    seed: u64,
) -> Result<MatrixWitness<E>> {
    let diag = diagonalize_trivext(b)?;
    let domain = b.domain().clone();
    let partners: Vec<QTrivExtElement<E>> = diag.d.diagonal_entries().iter().map(morphic_partner).collect();
    let w_prime = Matrix::diagonal(&domain, partners)?;
    let w = diag.v.mul(&w_prime)?.mul(&diag.u)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = certify_side(
        b, &diag.d, &diag.u, &diag.v, &diag.u_inv, &diag.v_inv, &w_prime, &w, samples, bound, &mut rng,
    );
    // Right side: Bᵀ = V⁻ᵀ·D·U⁻ᵀ, so U ↦ Vᵀ and V ↦ Uᵀ; Wᵀ = Uᵀ·W′·Vᵀ.
    let right = certify_side(
        &b.transpose(),
        &diag.d,
        &diag.v.transpose(),
        &diag.u.transpose(),
        &diag.v_inv.transpose(),
        &diag.u_inv.transpose(),
        &w_prime,
        &w.transpose(),
        samples,
        bound,
        &mut rng,
    );
    let out = MatrixWitness {
        diagonalization: diag,
        diagonal_partner: w_prime,
        witness: w,
        left,
        right,
    };
    if !out.certified() {
        let msg = out
            .left
            .failure
            .clone()
            .or(out.right.failure.clone())
            .unwrap_or_else(|| "closed-form comparison failed".into());
        return Err(AlgebraError::Alarm(msg));
    }
    Ok(out)
}

/// `n × n` matrix with ring parts `|r| ≤ r_bound` (or degree) and module
/// denominators of size at most `q_bound`.
pub fn random_trivext_matrix<E: Base, G: Rng + ?Sized>(
    domain: &E::Domain,
    n: usize,
    r_bound: u64,
    q_bound: u64,
    rng: &mut G,
) -> TrivExtMatrix<E> {
    let mut m = Matrix::zeros(domain, n, n);
    for i in 0..n {
        for j in 0..n {
            let r = E::random(domain, rng, r_bound);
            let x = FractionModOne::random(domain, rng, q_bound);
            m.set(i, j, QTrivExtElement { r, m: x });
        }
    }
    m
}
