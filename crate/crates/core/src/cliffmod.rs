//! Irreducible graded Clifford modules with exact square-root scalings.
//!
//! For a Clifford-type `𝔠` with `[V_i, V_j] = G_ij Z` and `μ(Z) = a > 0`, the
//! odd generators act by matrices with `ρ(V)ρ(W) + ρ(W)ρ(V) = μ([V, W])`.
//! This is the relation `ρρ + ρρ = −i·π([V, W])` with `π(Z) = i·a`.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coadjoint::evaluate;
use crate::linalg::{congruence_diagonalize, Matrix};
use crate::reduction::recognize_clifford;
use crate::scalar::{ExtScalar, Field, Gaussian, Rational, ScalarError};
use crate::superalg::LieSuperalgebra;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliffordError {
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("algebra is not of Clifford type")]
    NotCliffordType,
    #[error("mu is negative on the central generator")]
    NegativeCentralValue,
    #[error("mu has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("congruence does not diagonalize the form with positive entries")]
    BadCongruence,
    #[error("module relations failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `PᵀGP = diag(d)` with every `d_i > 0`, without square roots.
pub fn diagonalize_form(gram: &Matrix<Rational>) -> Result<(Matrix<Rational>, Vec<Rational>), CliffordError> {
    if !gram.is_symmetric() {
        return Err(CliffordError::NotPositiveDefinite);
    }
    let c = congruence_diagonalize(gram);
    if c.d.iter().any(|x| !x.is_positive()) {
        return Err(CliffordError::NotPositiveDefinite);
    }
    Ok((c.p, c.d))
}

/// Gamma matrices with `Γ_iΓ_j + Γ_jΓ_i = 2δ_ij`, odd for `grading`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet {
    pub gammas: Vec<Matrix<Gaussian>>,
    /// `true` for odd basis vectors; even ones come first.
    pub odd: Vec<bool>,
}

fn pauli() -> [Matrix<Gaussian>; 3] {
    let o = Gaussian::zero;
    let one = Gaussian::one;
    let i = Gaussian::i;
    [
        Matrix::from_rows(vec![vec![o(), one()], vec![one(), o()]]),
        Matrix::from_rows(vec![vec![o(), -i()], vec![i(), o()]]),
        Matrix::from_rows(vec![vec![one(), o()], vec![o(), -one()]]),
    ]
}

pub fn kron<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let (br, bc) = (b.rows(), b.cols());
    Matrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| a[(r / br, c / bc)].clone() * b[(r % br, c % bc)].clone())
}

/// Even-count construction: the gammas and the chirality that grades them.
fn even_gammas(k: usize) -> (Vec<Matrix<Gaussian>>, Matrix<Gaussian>) {
    if k == 0 {
        return (vec![], Matrix::identity(1));
    }
    let [s1, s2, s3] = pauli();
    let (prev, chi) = even_gammas(k - 1);
    let i2 = Matrix::<Gaussian>::identity(2);
    let mut out: Vec<Matrix<Gaussian>> = prev.iter().map(|g| kron(g, &i2)).collect();
    out.push(kron(&chi, &s1));
    out.push(kron(&chi, &s2));
    (out, kron(&chi, &s3))
}

/// Size `2^⌈l/2⌉`, graded by the chirality of the next even count and
/// reordered so that even basis vectors come first.
pub fn gamma_matrices(l: usize) -> GammaSet {
    let (mut gammas, chi) = even_gammas(l.div_ceil(2));
    gammas.truncate(l);
    let n = chi.rows();
    let mut perm: Vec<usize> = (0..n).filter(|&i| chi[(i, i)] == Gaussian::one()).collect();
    let even_count = perm.len();
    perm.extend((0..n).filter(|&i| chi[(i, i)] != Gaussian::one()));
    let gammas = gammas.iter().map(|g| Matrix::from_fn(n, n, |r, c| g[(perm[r], perm[c])].clone())).collect();
    let odd = (0..n).map(|i| i >= even_count).collect();
    GammaSet { gammas, odd }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordModule {
    pub dim: usize,
    /// `true` marks odd basis vectors.
    pub odd: Vec<bool>,
    /// Images of the diagonalizing basis `W_j = Σ_i P_ij V_i`.
    pub rho: Vec<Matrix<ExtScalar>>,
    /// Images of the algebra's own odd basis.
    pub rho_input: Vec<Matrix<ExtScalar>>,
    /// `μ` on the positively signed central generator.
    pub a: Rational,
    pub d: Vec<Rational>,
    pub congruence: Matrix<Rational>,
    /// `[V_i, V_j] = gram_ij · z` for the positively signed generator `z`.
    pub gram: Matrix<Rational>,
}

pub fn clifford_module(c: &LieSuperalgebra, mu: &[Rational]) -> Result<CliffordModule, CliffordError> {
    clifford_module_with(c, mu, None)
}

/// As [`clifford_module`], with a chosen diagonalizing congruence `P`.
pub fn clifford_module_with(c: &LieSuperalgebra, mu: &[Rational], p: Option<&Matrix<Rational>>) -> Result<CliffordModule, CliffordError> {
    let rec = recognize_clifford(c);
    if !rec.is_clifford {
        return Err(CliffordError::NotCliffordType);
    }
    if mu.len() != c.dim_even() {
        return Err(CliffordError::DimensionMismatch { expected: c.dim_even(), found: mu.len() });
    }
    let l = c.dim_odd();
    let a = rec.z_generator.as_ref().map_or_else(Rational::zero, |z| evaluate(c, mu, z));
    if a.is_zero() || c.dim() == 0 {
        return Ok(trivial_module(l, a, rec.gram));
    }
    if a.is_negative() && l > 0 {
        return Err(CliffordError::NegativeCentralValue);
    }
    let (p, d) = match p {
        None => diagonalize_form(&rec.gram)?,
        Some(p) => {
            let g = p.transpose().mul(&rec.gram).mul(p);
            let d: Vec<Rational> = (0..l).map(|i| g[(i, i)].clone()).collect();
            if g != Matrix::diagonal(&d) || d.iter().any(|x| !x.is_positive()) {
                return Err(CliffordError::BadCongruence);
            }
            (p.clone(), d)
        }
    };
    let gs = gamma_matrices(l);
    let two = Rational::from_integer(2.into());
    let rho: Vec<Matrix<ExtScalar>> = gs
        .gammas
        .iter()
        .zip(&d)
        .map(|(g, dj)| {
            let s = ExtScalar::sqrt(&(dj * &a / &two))?;
            Ok(g.map(|x| ExtScalar::from(x.clone()) * s.clone()))
        })
        .collect::<Result<_, CliffordError>>()?;
    let pinv = p.inverse().ok_or(CliffordError::BadCongruence)?;
    // V_i = Σ_j (P⁻¹)_ji W_j
    let n = gs.odd.len();
    let rho_input = (0..l)
        .map(|i| {
            (0..l).fold(Matrix::zeros(n, n), |acc: Matrix<ExtScalar>, j| {
                let cji = &pinv[(j, i)];
                if cji.is_zero() {
                    acc
                } else {
                    acc.add(&rho[j].scale(&ExtScalar::from_rational(cji)))
                }
            })
        })
        .collect();
    let m = CliffordModule { dim: n, odd: gs.odd, rho, rho_input, a, d, congruence: p, gram: rec.gram };
    let problems = m.relation_violations();
    if !problems.is_empty() {
        return Err(CliffordError::VerificationFailed(problems.join("; ")));
    }
    Ok(m)
}

fn trivial_module(l: usize, a: Rational, gram: Matrix<Rational>) -> CliffordModule {
    CliffordModule {
        dim: 1,
        odd: vec![false],
        rho: vec![Matrix::zeros(1, 1); l],
        rho_input: vec![Matrix::zeros(1, 1); l],
        a,
        d: vec![],
        congruence: Matrix::identity(l),
        gram,
    }
}

pub fn conj_transpose(m: &Matrix<ExtScalar>) -> Matrix<ExtScalar> {
    m.transpose().map(ExtScalar::conj)
}

pub fn is_odd_matrix(m: &Matrix<ExtScalar>, odd: &[bool]) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| m[(r, c)].is_zero() || odd[r] != odd[c]))
}

pub fn is_even_matrix(m: &Matrix<ExtScalar>, odd: &[bool]) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| m[(r, c)].is_zero() || odd[r] == odd[c]))
}

pub fn anticommutator(a: &Matrix<ExtScalar>, b: &Matrix<ExtScalar>) -> Matrix<ExtScalar> {
    a.mul(b).add(&b.mul(a))
}

impl CliffordModule {
    pub fn l(&self) -> usize {
        self.rho_input.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero() || self.d.is_empty() && self.dim == 1 && self.rho.iter().all(Matrix::is_zero)
    }

    /// Every relation the module promises, as an exact list of failures.
    pub fn relation_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let id = Matrix::<ExtScalar>::identity(self.dim);
        for i in 0..self.l() {
            let ri = &self.rho_input[i];
            if !is_odd_matrix(ri, &self.odd) {
                out.push(format!("rho(V{i}) is not odd"));
            }
            if conj_transpose(ri) != *ri {
                out.push(format!("rho(V{i}) is not Hermitian"));
            }
            for j in i..self.l() {
                let target = id.scale(&ExtScalar::from_rational(&(&self.gram[(i, j)] * &self.a)));
                let ac = anticommutator(ri, &self.rho_input[j]);
                if ac != target {
                    out.push(format!("{{rho(V{i}), rho(V{j})}} != mu([V{i},V{j}])"));
                }
            }
        }
        for (j, r) in self.rho.iter().enumerate() {
            let target = id.scale(&ExtScalar::from_rational(&(&self.d[j] * &self.a)));
            if anticommutator(r, r) != target {
                out.push(format!("2 rho(W{j})^2 != d_{j} a"));
            }
        }
        out
    }

    /// Dimension of the associative algebra generated by the `ρ_j`.
    pub fn generated_algebra_dim(&self) -> usize {
        let n = self.dim;
        let l = self.rho.len();
        let mut rows = Vec::with_capacity(1 << l);
        for mask in 0u32..(1 << l) {
            let mut m = Matrix::<ExtScalar>::identity(n);
            for (j, r) in self.rho.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    m = m.mul(r);
                }
            }
            rows.push((0..n * n).map(|k| m[(k / n, k % n)].clone()).collect::<Vec<_>>());
        }
        Matrix::from_rows(rows).rank()
    }

    /// The generators span the full Clifford algebra (dimension `2^l`).
    pub fn is_irreducible(&self) -> bool {
        self.is_trivial() || self.generated_algebra_dim() == 1 << self.rho.len()
    }
}

/// Same matrices, grading flipped.
pub fn parity_change(m: &CliffordModule) -> CliffordModule {
    let mut out = m.clone();
    out.odd = m.odd.iter().map(|o| !o).collect();
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Equivalence {
    /// An even invertible `T` with `T ρ₁(V) = ρ₂(V) T`.
    Equivalent(Matrix<ExtScalar>),
    Inequivalent,
}

pub fn module_equivalent(m1: &CliffordModule, m2: &CliffordModule) -> Result<Equivalence, CliffordError> {
    if m1.dim != m2.dim {
        return Err(CliffordError::DimensionMismatch { expected: m1.dim, found: m2.dim });
    }
    if m1.l() != m2.l() {
        return Err(CliffordError::DimensionMismatch { expected: m1.l(), found: m2.l() });
    }
    let n = m1.dim;
    // unknowns: entries T[r][s] allowed by evenness (odd2[r] == odd1[s])
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..n).map(move |s| (r, s))).filter(|&(r, s)| m2.odd[r] == m1.odd[s]).collect();
    let index = |r: usize, s: usize| slots.iter().position(|&x| x == (r, s));
    let mut rows: Vec<Vec<ExtScalar>> = Vec::new();
    for (a, b) in m1.rho_input.iter().zip(&m2.rho_input) {
        // (T a − b T)[r][c] = Σ_s T[r][s] a[s][c] − Σ_s b[r][s] T[s][c]
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![ExtScalar::zero(); slots.len()];
                for s in 0..n {
                    if let Some(k) = index(r, s) {
                        row[k] = row[k].clone() + a[(s, c)].clone();
                    }
                    if let Some(k) = index(s, c) {
                        row[k] = row[k].clone() - b[(r, s)].clone();
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..slots.len())
            .map(|k| {
                let mut v = vec![ExtScalar::zero(); slots.len()];
                v[k] = ExtScalar::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    if kernel.is_empty() {
        return Ok(Equivalence::Inequivalent);
    }
    // an intertwiner of irreducible modules is invertible when nonzero; try a
    // few combinations in case the solution space is larger
    for weights in 1..=3i64 {
        let mut t = Matrix::<ExtScalar>::zeros(n, n);
        for (idx, v) in kernel.iter().enumerate() {
            let w = ExtScalar::from_rational(&Rational::from_integer((1 + idx as i64 * weights).into()));
            for (k, &(r, s)) in slots.iter().enumerate() {
                if !v[k].is_zero() {
                    t[(r, s)] = t[(r, s)].clone() + w.clone() * v[k].clone();
                }
            }
        }
        if t.rank() == n {
            return Ok(Equivalence::Equivalent(t));
        }
    }
    Ok(Equivalence::Inequivalent)
}
