//! Functionals on the even part, the forms `B_λ` (odd, symmetric) and `ω_λ`
//! (even, skew), coadjoint flows, and orbit canonicalization.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{congruence_diagonalize, inertia, Congruence, Matrix};
use crate::polarize;
use crate::scalar::Rational;
use crate::subspace::{add_scaled, is_zero_vec, Element, Subspace};
use crate::superalg::LieSuperalgebra;

/// A covector on the even part, `λ: 𝔫₀ → ℚ`.
pub type Functional = Vec<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoadjointError {
    #[error("the algebra is not nilpotent")]
    NotNilpotent,
    #[error("flow direction must be an even element")]
    NotEven,
    #[error("functional has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormVerdict {
    Zero,
    PositiveDefinite,
    PositiveSemidefinite,
    NegativeSemidefinite,
    Indefinite,
}

impl FormVerdict {
    pub fn from_diagonal(d: &[Rational]) -> Self {
        match inertia(d) {
            (0, 0, _) => FormVerdict::Zero,
            (p, 0, 0) if p > 0 => FormVerdict::PositiveDefinite,
            (_, 0, _) => FormVerdict::PositiveSemidefinite,
            (0, _, _) => FormVerdict::NegativeSemidefinite,
            _ => FormVerdict::Indefinite,
        }
    }

    pub fn is_nonnegative(self) -> bool {
        matches!(self, FormVerdict::Zero | FormVerdict::PositiveDefinite | FormVerdict::PositiveSemidefinite)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymFormReport {
    pub gram: Matrix<Rational>,
    pub verdict: FormVerdict,
    pub congruence: Congruence,
    /// A vector `v` with `vᵀGv < 0`, in the coordinates of the gram matrix,
    /// present exactly when the form takes negative values.
    pub negative_witness: Option<Vec<Rational>>,
}

/// Verdict, congruence certificate and a negative witness for a symmetric matrix.
pub fn classify_symmetric(gram: &Matrix<Rational>) -> SymFormReport {
    let congruence = congruence_diagonalize(gram);
    let verdict = FormVerdict::from_diagonal(&congruence.d);
    let negative_witness = congruence.d.iter().position(Signed::is_negative).map(|j| congruence.p.col(j));
    SymFormReport { gram: gram.clone(), verdict, congruence, negative_witness }
}

pub fn evaluate(l: &LieSuperalgebra, lambda: &[Rational], x: &[Rational]) -> Rational {
    lambda.iter().zip(&x[..l.dim_even()]).fold(Rational::zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc + a * b })
}

fn check_len(l: &LieSuperalgebra, lambda: &[Rational]) {
    assert_eq!(lambda.len(), l.dim_even(), "functional length must equal the even dimension");
}

/// Gram matrix of `B_λ(u, v) = λ([u, v])` on the odd basis.
pub fn b_gram(l: &LieSuperalgebra, lambda: &[Rational]) -> Matrix<Rational> {
    check_len(l, lambda);
    let de = l.dim_even();
    let r = l.dim_odd();
    Matrix::from_fn(r, r, |a, b| evaluate(l, lambda, l.basis_bracket(de + a, de + b)))
}

pub fn b_form(l: &LieSuperalgebra, lambda: &[Rational]) -> SymFormReport {
    let mut rep = classify_symmetric(&b_gram(l, lambda));
    // report the witness as an element of the algebra
    rep.negative_witness = rep.negative_witness.map(|w| embed_odd(l, &w));
    rep
}

pub fn embed_odd(l: &LieSuperalgebra, w: &[Rational]) -> Element {
    let mut v = l.zero();
    v[l.dim_even()..].clone_from_slice(w);
    v
}

pub fn in_n0_plus(l: &LieSuperalgebra, lambda: &[Rational]) -> bool {
    b_form(l, lambda).verdict.is_nonnegative()
}

/// Radical of `B_λ` inside `𝔫₁`.
pub fn radical_odd(l: &LieSuperalgebra, lambda: &[Rational]) -> Subspace {
    let g = b_gram(l, lambda);
    if g.is_zero() {
        return l.odd_subspace();
    }
    l.span(g.kernel().into_iter().map(|w| embed_odd(l, &w)))
}

/// Radical of `ω_λ(x, y) = λ([x, y])` restricted to an even subspace.
pub fn omega_radical(l: &LieSuperalgebra, lambda: &[Rational], restrict_to: &Subspace) -> Subspace {
    check_len(l, lambda);
    let s = restrict_to.basis();
    let k = s.len();
    let omega = Matrix::from_fn(k, k, |a, b| evaluate(l, lambda, &l.br(&s[a], &s[b])));
    if omega.is_zero() {
        return restrict_to.clone();
    }
    l.span(omega.kernel().into_iter().map(|c| {
        let mut v = l.zero();
        for (ca, sa) in c.iter().zip(&s) {
            add_scaled(&mut v, sa, ca);
        }
        v
    }))
}

/// Odd basis quadruples `(u, v, w, x)` where `[[u, v], w]` fails to lie in
/// the radical of `B_λ`, i.e. `λ([[[u, v], w], x]) ≠ 0`, or where
/// `λ([[u, v], [w, x]]) ≠ 0`. Empty whenever `λ ∈ 𝔫₀⁺`.
pub fn odd_square_radical_violations(l: &LieSuperalgebra, lambda: &[Rational]) -> Vec<(usize, usize, usize, usize)> {
    check_len(l, lambda);
    let odd: Vec<usize> = (l.dim_even()..l.dim()).collect();
    let mut out = Vec::new();
    for &u in &odd {
        for &v in &odd {
            let uv = l.basis_bracket(u, v).to_vec();
            if is_zero_vec(&uv) {
                continue;
            }
            for &w in &odd {
                let uvw = l.br(&uv, &l.unit(w));
                for &x in &odd {
                    let a = evaluate(l, lambda, &l.br(&uvw, &l.unit(x)));
                    let b = evaluate(l, lambda, &l.br(&uv, l.basis_bracket(w, x)));
                    if !a.is_zero() || !b.is_zero() {
                        out.push((u, v, w, x));
                    }
                }
            }
        }
    }
    out
}

/// Rank of `ω_λ` on the whole even part, the dimension of the orbit.
pub fn omega_rank(l: &LieSuperalgebra, lambda: &[Rational]) -> usize {
    l.dim_even() - omega_radical(l, lambda, &l.even_subspace()).dim()
}

/// Coefficients `a_k` of the polynomial `t ↦ (Ad*(exp tX)λ)(e_c) = Σ a_k t^k`.
fn flow_polynomial(l: &LieSuperalgebra, lambda: &[Rational], ad: &Matrix<Rational>, c: usize) -> Vec<Rational> {
    let mut coeffs = Vec::new();
    let mut w = l.unit(c);
    let mut fact = Rational::one();
    let mut k = 0i64;
    while !is_zero_vec(&w) && (k as usize) <= l.dim() {
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        coeffs.push(sign * evaluate(l, lambda, &w) / &fact);
        w = ad.mul_vec(&w);
        k += 1;
        fact *= Rational::from_integer(k.into());
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn eval_poly(p: &[Rational], t: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, a| acc * t + a)
}

/// `(Ad*(exp tX)λ)(W) = λ(exp(−t·ad_X) W)`, by the finite exponential series.
pub fn coadjoint_flow(l: &LieSuperalgebra, lambda: &[Rational], x: &[Rational], t: &Rational) -> Result<Functional, CoadjointError> {
    if lambda.len() != l.dim_even() {
        return Err(CoadjointError::DimensionMismatch { expected: l.dim_even(), found: lambda.len() });
    }
    if l.parity_of(x) != Some(0) {
        return Err(CoadjointError::NotEven);
    }
    if !l.is_nilpotent() {
        return Err(CoadjointError::NotNilpotent);
    }
    let ad = l.adjoint(x);
    Ok((0..l.dim_even()).map(|c| eval_poly(&flow_polynomial(l, lambda, &ad, c), t)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowMove {
    pub direction: usize,
    #[serde(serialize_with = "crate::document::ser_rational")]
    pub t: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRepresentative {
    pub canonical: Functional,
    pub moves: Vec<FlowMove>,
    /// The number of moves reached the orbit dimension.
    pub exact: bool,
}

impl OrbitRepresentative {
    /// Replays the recorded flows from `lambda`.
    pub fn replay(&self, l: &LieSuperalgebra, lambda: &[Rational]) -> Result<Functional, CoadjointError> {
        let mut mu = lambda.to_vec();
        for m in &self.moves {
            mu = coadjoint_flow(l, &mu, &l.unit(m.direction), &m.t)?;
        }
        Ok(mu)
    }
}

/// Greedy cross-section: scan coordinates from the highest index down and
/// zero the first one that an unused basis direction moves affinely. A
/// coordinate that is already zero still consumes its direction (a flow by
/// 0, not recorded), so points on the cross-section are certified too.
pub fn canonical_orbit_rep(l: &LieSuperalgebra, lambda: &[Rational]) -> Result<OrbitRepresentative, CoadjointError> {
    if lambda.len() != l.dim_even() {
        return Err(CoadjointError::DimensionMismatch { expected: l.dim_even(), found: lambda.len() });
    }
    if !l.is_nilpotent() {
        return Err(CoadjointError::NotNilpotent);
    }
    let de = l.dim_even();
    let ads: Vec<Matrix<Rational>> = (0..de).map(|d| l.adjoint(&l.unit(d))).collect();
    let mut mu = lambda.to_vec();
    let mut used = vec![false; de];
    let mut fixed = vec![false; de];
    let mut moves = Vec::new();
    'outer: loop {
        for c in (0..de).rev() {
            if fixed[c] {
                continue;
            }
            for d in 0..de {
                if used[d] {
                    continue;
                }
                let p = flow_polynomial(l, &mu, &ads[d], c);
                if p.len() == 2 {
                    let t = -(&p[0] / &p[1]);
                    if !t.is_zero() {
                        mu = coadjoint_flow(l, &mu, &l.unit(d), &t)?;
                        moves.push(FlowMove { direction: d, t });
                    }
                    debug_assert!(mu[c].is_zero());
                    used[d] = true;
                    fixed[c] = true;
                    continue 'outer;
                }
            }
        }
        break;
    }
    // a later flow may have moved an earlier zero; then nothing is certified
    let exact = used.iter().filter(|&&u| u).count() == omega_rank(l, lambda) && (0..de).all(|c| !fixed[c] || mu[c].is_zero());
    Ok(OrbitRepresentative { canonical: mu, moves, exact })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitComparison {
    Equal,
    Distinct(String),
    Inconclusive,
}

/// λ evaluated on the centre of the even Lie algebra `𝔫₀`, which `Ad*` fixes.
fn central_values(l: &LieSuperalgebra, lambda: &[Rational]) -> Vec<Rational> {
    let even = l.even_subspace();
    let z = l.centralizer(&even).intersect(&even);
    z.basis().iter().map(|v| evaluate(l, lambda, v)).collect()
}

pub fn orbit_equal(l: &LieSuperalgebra, a: &[Rational], b: &[Rational]) -> Result<OrbitComparison, CoadjointError> {
    if a == b {
        return Ok(OrbitComparison::Equal);
    }
    if central_values(l, a) != central_values(l, b) {
        return Ok(OrbitComparison::Distinct("values on the centre of the even part differ".into()));
    }
    if omega_rank(l, a) != omega_rank(l, b) {
        return Ok(OrbitComparison::Distinct("rank of the skew form differs".into()));
    }
    let (fa, fb) = (b_form(l, a), b_form(l, b));
    if fa.verdict != fb.verdict {
        return Ok(OrbitComparison::Distinct("verdict of the odd form differs".into()));
    }
    if radical_odd(l, a).dim() != radical_odd(l, b).dim() {
        return Ok(OrbitComparison::Distinct("odd radical dimension differs".into()));
    }
    if fa.verdict.is_nonnegative() {
        if let (Ok(ka), Ok(kb)) = (polarize::kappa(l, a), polarize::kappa(l, b)) {
            if ka != kb {
                return Ok(OrbitComparison::Distinct(format!("kappa differs ({ka} vs {kb})")));
            }
        }
    }
    let ra = canonical_orbit_rep(l, a)?;
    let rb = canonical_orbit_rep(l, b)?;
    if ra.canonical == rb.canonical {
        Ok(OrbitComparison::Equal)
    } else if ra.exact && rb.exact {
        Ok(OrbitComparison::Distinct("canonical representatives differ".into()))
    } else {
        Ok(OrbitComparison::Inconclusive)
    }
}
