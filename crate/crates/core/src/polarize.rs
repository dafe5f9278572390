//! Vergne polarizations through `[𝔫₁, 𝔫₁]`, polarizing systems
//! `(𝔪₀, 𝔪, Φ, 𝔠, λ, μ)` and the κ invariant.

use num_traits::Zero;
use thiserror::Error;

use crate::coadjoint::{b_form, evaluate, in_n0_plus, omega_radical, radical_odd, Functional};
use crate::linalg::{dot, Matrix};
use crate::reduction::{is_reduced, recognize_clifford, Reducedness};
use crate::scalar::Rational;
use crate::subspace::{is_zero_vec, Element, Subspace};
use crate::superalg::{AlgebraError, LieSuperalgebra};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolarizeError {
    #[error("target is not an ideal of the even part")]
    TargetNotIdeal,
    #[error("the algebra is not nilpotent")]
    NotNilpotent,
    #[error("B_lambda is not positive semidefinite")]
    LambdaNotNonnegative,
    #[error("functional has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A complete flag of ideals of `𝔫₀` passing through `target`, listed from
/// `𝔫₀` down to `0`.
pub fn ideal_flag_through(l: &LieSuperalgebra, target: &Subspace) -> Result<Vec<Subspace>, PolarizeError> {
    if !l.is_nilpotent() {
        return Err(PolarizeError::NotNilpotent);
    }
    let even = l.even_subspace();
    if !even.contains_subspace(target) || !target.contains_subspace(&l.bracket_span(target, &even)) {
        return Err(PolarizeError::TargetNotIdeal);
    }
    let mut flag = vec![l.zero_subspace()];
    for upper in [target.clone(), even.clone()] {
        loop {
            let current = flag.last().expect("nonempty").clone();
            if current == upper {
                break;
            }
            // vectors of `upper` central modulo `current`; nonempty beyond
            // `current` because `𝔫₀ / current` is nilpotent
            let candidates = l.relative_centralizer_among(&current, &even).intersect(&upper);
            let v = candidates
                .basis()
                .into_iter()
                .rev()
                .find(|v| !current.contains(v))
                .ok_or_else(|| PolarizeError::VerificationFailed("no central direction in the quotient".into()))?;
            let next = current.sum(&l.span([v]));
            if !next.contains_subspace(&l.bracket_span(&next, &even)) {
                return Err(PolarizeError::VerificationFailed("flag step is not an ideal".into()));
            }
            flag.push(next);
        }
    }
    flag.reverse();
    Ok(flag)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polarization {
    pub m0: Subspace,
    /// The ideals `i⁽ʲ⁾`, from `𝔫₀` down to `0`.
    pub flag: Vec<Subspace>,
    /// `𝔮⁽ʲ⁾`: radical of `ω_λ` on each flag member.
    pub radicals: Vec<Subspace>,
    /// `m0 ⊇ [𝔫₁, 𝔫₁]`; guaranteed when `λ ∈ 𝔫₀⁺`.
    pub contains_odd_square: bool,
}

pub fn odd_square(l: &LieSuperalgebra) -> Subspace {
    let odd = l.odd_subspace();
    l.bracket_span(&odd, &odd)
}

/// `Σ_j rad(ω_λ|i⁽ʲ⁾)` over a flag of ideals through `[𝔫₁, 𝔫₁]`.
pub fn vergne_polarization(l: &LieSuperalgebra, lambda: &[Rational]) -> Result<Polarization, PolarizeError> {
    if lambda.len() != l.dim_even() {
        return Err(PolarizeError::DimensionMismatch { expected: l.dim_even(), found: lambda.len() });
    }
    let target = odd_square(l);
    let flag = ideal_flag_through(l, &target)?;
    let radicals: Vec<Subspace> = flag.iter().map(|i| omega_radical(l, lambda, i)).collect();
    let m0 = radicals.iter().fold(l.zero_subspace(), |acc, q| acc.sum(q));
    let contains_odd_square = m0.contains_subspace(&target);
    let pol = Polarization { m0, flag, radicals, contains_odd_square };
    let problems = polarization_violations(l, lambda, &pol.m0);
    if let Some(p) = problems.first() {
        return Err(PolarizeError::VerificationFailed(p.clone()));
    }
    if !contains_odd_square && in_n0_plus(l, lambda) {
        return Err(PolarizeError::VerificationFailed("m0 does not contain [n1,n1]".into()));
    }
    Ok(pol)
}

/// Subalgebra, isotropy and maximality (by the dimension identity).
pub fn polarization_violations(l: &LieSuperalgebra, lambda: &[Rational], m0: &Subspace) -> Vec<String> {
    let mut out = Vec::new();
    let even = l.even_subspace();
    if !even.contains_subspace(m0) {
        out.push("m0 is not inside the even part".into());
    }
    if !l.is_subalgebra(m0) {
        out.push("m0 is not a subalgebra".into());
    }
    let basis = m0.basis();
    let isotropic = basis.iter().all(|a| basis.iter().all(|b| evaluate(l, lambda, &l.br(a, b)).is_zero()));
    if !isotropic {
        out.push("lambda([m0,m0]) != 0".into());
    }
    let s = omega_radical(l, lambda, &even).dim();
    if 2 * m0.dim() != l.dim_even() + s {
        out.push(format!("dim m0 = {} but (dim n0 + dim s_lambda)/2 = {}/2", m0.dim(), l.dim_even() + s));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolarizingSystem {
    pub lambda: Functional,
    pub m0: Subspace,
    pub k_lambda: Subspace,
    pub r_lambda: Subspace,
    pub j: Subspace,
    /// Basis of `𝔪 = 𝔪₀ ⊕ 𝔫₁`: echelon basis of `𝔪₀`, then the odd units.
    pub m_basis: Vec<Element>,
    pub clifford: LieSuperalgebra,
    /// `Φ` in the coordinates of `m_basis` (dim 𝔠 × dim 𝔪).
    pub phi: Matrix<Rational>,
    /// `μ` on the even part of `𝔠`.
    pub mu: Functional,
}

impl PolarizingSystem {
    /// `dim 𝔠`, with the trivial system counted as 1.
    pub fn kappa(&self) -> usize {
        self.clifford.dim().max(1)
    }
}

fn m_basis(l: &LieSuperalgebra, m0: &Subspace) -> Vec<Element> {
    m0.basis().into_iter().chain((l.dim_even()..l.dim()).map(|i| l.unit(i))).collect()
}

pub fn build_polarizing_system(l: &LieSuperalgebra, lambda: &[Rational]) -> Result<PolarizingSystem, PolarizeError> {
    if lambda.len() != l.dim_even() {
        return Err(PolarizeError::DimensionMismatch { expected: l.dim_even(), found: lambda.len() });
    }
    if !b_form(l, lambda).verdict.is_nonnegative() {
        return Err(PolarizeError::LambdaNotNonnegative);
    }
    let pol = vergne_polarization(l, lambda)?;
    let m0 = pol.m0;
    let k_lambda = m0.intersect(&kernel_of(l, lambda));
    let r_lambda = radical_odd(l, lambda);
    let j = k_lambda.sum(&r_lambda);

    let m = m0.sum(&l.odd_subspace());
    let (m_alg, basis) = l.subalgebra(&m)?;
    debug_assert_eq!(basis, m_basis(l, &m0));
    let coords = |v: &Element| -> Element { Matrix::from_rows_with_cols(basis.clone(), l.dim()).transpose().solve(v).expect("vector lies in m") };
    let j_in_m = m_alg.span(j.basis().iter().map(coords));
    if !m_alg.is_ideal(&j_in_m) {
        return Err(PolarizeError::VerificationFailed("j is not an ideal of m".into()));
    }
    let (clifford, phi) = m_alg.quotient(&j_in_m)?;
    // each even basis element of 𝔠 is the image of the m-basis vector at the
    // corresponding section coordinate, which lies in 𝔪₀
    let section = j_in_m.complement_coordinates();
    let mu: Functional = section.iter().take(clifford.dim_even()).map(|&c| evaluate(l, lambda, &basis[c])).collect();
    let system = PolarizingSystem { lambda: lambda.to_vec(), m0, k_lambda, r_lambda, j, m_basis: basis, clifford, phi, mu };
    let report = verify_polarizing_system(l, &system);
    if !report.passed() {
        return Err(PolarizeError::VerificationFailed(report.violations.join("; ")));
    }
    if !matches!(is_reduced(&system.clifford), Reducedness::Reduced(_)) {
        return Err(PolarizeError::VerificationFailed("m/j is not reduced".into()));
    }
    Ok(system)
}

fn kernel_of(l: &LieSuperalgebra, lambda: &[Rational]) -> Subspace {
    // ker λ inside 𝔫 = (ker λ on 𝔫₀) ⊕ 𝔫₁
    let mut row = l.zero();
    row[..l.dim_even()].clone_from_slice(lambda);
    if is_zero_vec(&row) {
        return l.full_subspace();
    }
    l.span(Matrix::from_rows(vec![row]).kernel())
}

pub fn kappa(l: &LieSuperalgebra, lambda: &[Rational]) -> Result<usize, PolarizeError> {
    Ok(build_polarizing_system(l, lambda)?.kappa())
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SystemReport {
    pub violations: Vec<String>,
    pub checks: usize,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

/// Checks conditions (a)–(d) of a polarizing system, that `𝔧` is an ideal
/// of `𝔪` killed by `Φ`, the consistency of `μ` with `λ`, nonnegativity of
/// `μ` on odd squares, and `Φ([𝔫₁,[𝔫₁,𝔫₁]]) = 0`.
pub fn verify_polarizing_system(l: &LieSuperalgebra, s: &PolarizingSystem) -> SystemReport {
    let mut rep = SystemReport::default();
    let de = l.dim_even();
    let odd = l.odd_subspace();
    if s.lambda.len() != de {
        rep.check(false, || "lambda has the wrong length".into());
        return rep;
    }
    let expected_basis = m_basis(l, &s.m0);
    rep.check(s.m_basis == expected_basis, || "m basis is not m0 followed by the odd units".into());
    let dm = expected_basis.len();
    let c = &s.clifford;
    let shape_ok = s.phi.rows() == c.dim() && s.phi.cols() == dm && s.mu.len() == c.dim_even();
    rep.check(shape_ok, || "phi or mu has the wrong shape".into());
    if !shape_ok {
        return rep;
    }

    // (a) special subalgebra: 𝔪 = 𝔪₀ ⊕ 𝔫₁ closed under the bracket
    let m = s.m0.sum(&odd);
    rep.check(l.even_subspace().contains_subspace(&s.m0), || "(a) m0 is not even".into());
    rep.check(l.is_subalgebra(&m), || "(a) m0 + n1 is not a subalgebra".into());

    // (b) m0 polarizes λ
    for v in polarization_violations(l, &s.lambda, &s.m0) {
        rep.check(false, || format!("(b) {v}"));
    }

    // (c) 𝔠 Clifford type, Φ an even surjective homomorphism
    rep.check(recognize_clifford(c).is_clifford, || "(c) c is not of Clifford type".into());
    rep.check(s.phi.rank() == c.dim(), || "(c) phi is not surjective".into());
    let to_m = Matrix::from_rows_with_cols(expected_basis.clone(), l.dim()).transpose();
    let coords = |v: &Element| to_m.solve(v);
    let n_even_m = s.m0.dim();
    let graded = (0..dm).all(|a| (0..c.dim()).all(|r| s.phi[(r, a)].is_zero() || (a >= n_even_m) == c.is_odd(r)));
    rep.check(graded, || "(c) phi does not preserve parity".into());
    let mut hom = true;
    for a in 0..dm {
        for b in 0..dm {
            let br = l.br(&expected_basis[a], &expected_basis[b]);
            let Some(cb) = coords(&br) else {
                hom = false;
                continue;
            };
            let lhs = s.phi.mul_vec(&cb);
            let rhs = c.br(&s.phi.col(a), &s.phi.col(b));
            hom &= lhs == rhs;
        }
    }
    rep.check(hom, || "(c) phi is not a homomorphism".into());

    // (d) 𝔪₀ ∩ ker Φ = 𝔪₀ ∩ ker λ
    let m0_basis = s.m0.basis();
    let phi_even = Matrix::from_fn(c.dim(), m0_basis.len(), |r, a| s.phi[(r, a)].clone());
    let ker_phi = if m0_basis.is_empty() { l.zero_subspace() } else { l.span(phi_even.kernel().into_iter().map(|k| combine(&m0_basis, &k))) };
    let ker_lambda = s.m0.intersect(&kernel_of(l, &s.lambda));
    rep.check(ker_phi == ker_lambda, || "(d) m0 ∩ ker phi != m0 ∩ ker lambda".into());

    // 𝔧 = 𝔨_λ + 𝔯_λ, an ideal of 𝔪 killed by Φ
    rep.check(s.j == s.k_lambda.sum(&s.r_lambda) && m.contains_subspace(&s.j), || "j is not k_lambda + r_lambda inside m".into());
    let j_basis = s.j.basis();
    rep.check(j_basis.iter().all(|v| expected_basis.iter().all(|b| s.j.contains(&l.br(b, v)))), || "j is not an ideal of m".into());
    let j_killed = j_basis.iter().all(|v| coords(v).is_some_and(|cv| is_zero_vec(&s.phi.mul_vec(&cv))));
    rep.check(j_killed, || "phi does not vanish on j".into());

    // consistency μ(Φ(W)) = λ(W) on 𝔪₀
    for (a, w) in m0_basis.iter().enumerate() {
        let image: Element = s.phi.col(a)[..c.dim_even()].to_vec();
        let lhs = dot(&s.mu, &image);
        rep.check(lhs == evaluate(l, &s.lambda, w), || format!("consistency fails on {}", l.describe(w)));
    }

    // μ([V, V]) ≥ 0 on 𝔠₁
    if c.dim_even() == s.mu.len() {
        rep.check(b_form(c, &s.mu).verdict.is_nonnegative(), || "mu([V,V]) takes negative values".into());
    }

    // Φ([𝔫₁, [𝔫₁, 𝔫₁]]) = 0
    let triple = l.bracket_span(&odd, &crate::polarize::odd_square(l));
    let killed = triple.basis().iter().all(|v| coords(v).is_some_and(|cv| is_zero_vec(&s.phi.mul_vec(&cv))));
    rep.check(killed, || "phi does not vanish on [n1,[n1,n1]]".into());
    rep
}

fn combine(basis: &[Element], c: &[Rational]) -> Element {
    let mut v = vec![Rational::zero(); basis[0].len()];
    for (b, x) in basis.iter().zip(c) {
        crate::subspace::add_scaled(&mut v, b, x);
    }
    v
}
