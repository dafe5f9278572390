//! The degeneracy ideal `𝔞[𝔤]`, reduced forms, Clifford-type recognition
//! and the splitting `𝔫 = ℝX ⊕ ℝY ⊕ ℝZ ⊕ 𝔴` for reduced algebras.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::coadjoint::{classify_symmetric, embed_odd, FormVerdict, SymFormReport};
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::subspace::{add_scaled, is_zero_vec, scaled, Element, Subspace};
use crate::superalg::{AlgebraError, LieSuperalgebra};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("splitting failed its own check: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// How the isotropic span was determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchRegime {
    /// The forms vanish identically on the remaining space.
    Vanishing,
    /// Semidefinite combinations cut the space down to where the forms vanish.
    Semidefinite,
    /// The remaining space has dimension at most two and was solved exactly.
    Plane,
    /// The forms are diagonal on the remaining space; solved through the
    /// cone of squared coordinates.
    Diagonal,
    /// Only coordinate planes were searched; the span may be too small.
    Partial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotropicSearch {
    /// Rational odd elements `X` with `[X, X]` in the modulus.
    pub witnesses: Vec<Element>,
    /// Span of the solutions found (equal to the full solution span when certified).
    pub span: Subspace,
    pub certified_complete: bool,
    pub regime: SearchRegime,
}

impl IsotropicSearch {
    /// Basis of the solution span, used as ideal generators.
    pub fn generators(&self) -> Vec<Element> {
        self.span.basis()
    }
}

/// Solutions of a family of binary quadratic forms `(α, β, γ) ↦ αx² + 2βxy + γy²`.
struct PlaneSolution {
    lines: Vec<[Rational; 2]>,
    whole_plane: bool,
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

fn normalize_line(v: [Rational; 2]) -> [Rational; 2] {
    let lead = if v[0].is_zero() { v[1].clone() } else { v[0].clone() };
    [&v[0] / &lead, &v[1] / &lead]
}

fn binary_value(f: &Matrix<Rational>, v: &[Rational; 2]) -> Rational {
    &f[(0, 0)] * &v[0] * &v[0] + Rational::from_integer(2.into()) * &f[(0, 1)] * &v[0] * &v[1] + &f[(1, 1)] * &v[1] * &v[1]
}

fn proportional(a: &Matrix<Rational>, b: &Matrix<Rational>) -> bool {
    let va = [&a[(0, 0)], &a[(0, 1)], &a[(1, 1)]];
    let vb = [&b[(0, 0)], &b[(0, 1)], &b[(1, 1)]];
    (0..3).all(|i| (0..3).all(|j| va[i] * vb[j] == va[j] * vb[i]))
}

fn solve_plane(forms: &[Matrix<Rational>]) -> PlaneSolution {
    let Some(q) = forms.first() else {
        return PlaneSolution { lines: vec![], whole_plane: true };
    };
    let (a, b, g) = (&q[(0, 0)], &q[(0, 1)], &q[(1, 1)]);
    let disc = b * b - a * g;
    if disc.is_negative() {
        return PlaneSolution { lines: vec![], whole_plane: false };
    }
    let mut candidates: Vec<[Rational; 2]> = Vec::new();
    if disc.is_zero() {
        candidates.push(if g.is_zero() { [Rational::zero(), Rational::one()] } else { [Rational::one(), -(b / g)] });
    } else if let Some(s) = rational_sqrt(&disc) {
        if g.is_zero() {
            candidates.push([Rational::zero(), Rational::one()]);
            candidates.push([Rational::from_integer(2.into()) * b, -a.clone()]);
        } else {
            candidates.push([Rational::one(), (-b + &s) / g]);
            candidates.push([Rational::one(), (-b - &s) / g]);
        }
    }
    let mut lines: Vec<[Rational; 2]> = candidates.into_iter().map(normalize_line).filter(|v| forms.iter().all(|f| binary_value(f, v).is_zero())).collect();
    lines.sort();
    lines.dedup();
    lines.reverse();
    // Two distinct real zero lines shared by every form span the plane; when
    // they are irrational they are Galois conjugate, and a rational form
    // vanishing on one vanishes on both, which forces proportionality.
    let whole_plane = disc.is_positive() && forms.iter().all(|f| proportional(q, f));
    PlaneSolution { lines, whole_plane }
}

fn restrict(q: &Matrix<Rational>, w: &[Element]) -> Matrix<Rational> {
    let b = Matrix::from_rows_with_cols(w.to_vec(), q.rows());
    b.mul(q).mul(&b.transpose())
}

fn combine(w: &[Element], c: &[Rational]) -> Element {
    let mut v = vec![Rational::zero(); w[0].len()];
    for (wi, ci) in w.iter().zip(c) {
        add_scaled(&mut v, wi, ci);
    }
    v
}

/// Linearly independent forms spanning the family.
fn independent_forms(forms: Vec<Matrix<Rational>>) -> Vec<Matrix<Rational>> {
    let Some(n) = forms.first().map(Matrix::rows) else {
        return forms;
    };
    let flat: Vec<Element> = forms.iter().map(|f| (0..n * n).map(|i| f[(i / n, i % n)].clone()).collect()).collect();
    let (r, _) = Matrix::from_rows_with_cols(flat, n * n).rref();
    (0..r.rows()).map(|i| Matrix::from_fn(n, n, |a, b| r[(i, a * n + b)].clone())).collect()
}

/// The odd elements `X` with `[X, X] ∈ modulo`, and their span.
pub fn isotropic_generators(l: &LieSuperalgebra, modulo: &Subspace) -> IsotropicSearch {
    let de = l.dim_even();
    let r = l.dim_odd();
    // forms Q_f(a, b) = f([V_a, V_b]) for covectors f vanishing on the modulus
    let ann = modulo.annihilator().basis();
    let raw: Vec<Matrix<Rational>> =
        ann.iter().map(|f| Matrix::from_fn(r, r, |a, b| crate::linalg::dot(f, l.basis_bracket(de + a, de + b)))).filter(|q| !q.is_zero()).collect();
    let forms = independent_forms(raw);

    let identity: Vec<Element> = (0..r).map(|i| crate::subspace::unit(r, i)).collect();
    let mut w: Vec<Element> = identity;
    let mut shrunk = false;
    let to_ambient = |vs: Vec<Element>| -> Vec<Element> { vs.into_iter().map(|v| embed_odd(l, &v)).collect() };
    let finish = |witnesses: Vec<Element>, span: Vec<Element>, certified, regime| IsotropicSearch {
        witnesses: to_ambient(witnesses),
        span: l.span(to_ambient(span)),
        certified_complete: certified,
        regime,
    };

    loop {
        if w.is_empty() {
            return finish(vec![], vec![], true, if shrunk { SearchRegime::Semidefinite } else { SearchRegime::Vanishing });
        }
        let restricted = independent_forms(forms.iter().map(|q| restrict(q, &w)).filter(|q| !q.is_zero()).collect());
        if restricted.is_empty() {
            let regime = if shrunk { SearchRegime::Semidefinite } else { SearchRegime::Vanishing };
            return finish(w.clone(), w, true, regime);
        }
        // a semidefinite combination confines every solution to its kernel
        let mut cut = None;
        'search: for (k, qk) in restricted.iter().enumerate() {
            for cand in [qk.clone(), qk.scale(&-Rational::one())] {
                if classify_symmetric(&cand).verdict.is_nonnegative() {
                    cut = Some(cand);
                    break 'search;
                }
            }
            for ql in &restricted[k + 1..] {
                for (sk, sl) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let cand = qk.scale(&Rational::from_integer(sk.into())).add(&ql.scale(&Rational::from_integer(sl.into())));
                    if !cand.is_zero() && classify_symmetric(&cand).verdict.is_nonnegative() {
                        cut = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match cut {
            Some(c) => {
                let kernel = c.kernel();
                w = kernel.iter().map(|k| combine(&w, k)).collect();
                w = Matrix::from_rows_with_cols(w, r).rref().0.to_rows();
                shrunk = true;
            }
            None => {
                return solve_remaining(&w, &restricted, &finish);
            }
        }
    }
}

fn solve_remaining(
    w: &[Element],
    restricted: &[Matrix<Rational>],
    finish: &dyn Fn(Vec<Element>, Vec<Element>, bool, SearchRegime) -> IsotropicSearch,
) -> IsotropicSearch {
    if w.len() <= 2 {
        if w.len() == 1 {
            // a nonzero form on a line is definite, which the cut step handles
            return finish(vec![], vec![], true, SearchRegime::Plane);
        }
        let sol = solve_plane(restricted);
        let witnesses: Vec<Element> = sol.lines.iter().map(|c| combine(w, c)).collect();
        let span = if sol.whole_plane { w.to_vec() } else { witnesses.clone() };
        return finish(witnesses, span, true, SearchRegime::Plane);
    }
    let k = w.len();
    let diagonal = restricted.iter().all(|q| (0..k).all(|a| (0..k).all(|b| a == b || q[(a, b)].is_zero())));
    if diagonal {
        // Σ_a q_{ka} y_a = 0 with y_a = x_a² ≥ 0: the isotropic span is the
        // coordinate subspace on the union of supports of the solution cone,
        // and that union is the union of supports of its extreme rays.
        let a = Matrix::from_fn(restricted.len(), k, |i, j| restricted[i][(j, j)].clone());
        let mut support = vec![false; k];
        let mut witnesses = Vec::new();
        for mask in 1u32..(1 << k) {
            let cols: Vec<usize> = (0..k).filter(|&j| mask & (1 << j) != 0).collect();
            let sub = Matrix::from_fn(a.rows(), cols.len(), |i, j| a[(i, cols[j])].clone());
            let ker = sub.kernel();
            if ker.len() != 1 {
                continue;
            }
            let y = &ker[0];
            let all_pos = y.iter().all(Signed::is_positive);
            let all_neg = y.iter().all(Signed::is_negative);
            if !(all_pos || all_neg) {
                continue;
            }
            for &c in &cols {
                support[c] = true;
            }
            let y0 = y[0].clone();
            let roots: Option<Vec<Rational>> = y.iter().map(|yi| rational_sqrt(&(yi / &y0))).collect();
            if let Some(roots) = roots {
                let mut coeffs = vec![Rational::zero(); k];
                for (c, x) in cols.iter().zip(roots) {
                    coeffs[*c] = x;
                }
                witnesses.push(combine(w, &coeffs));
            }
        }
        let span = (0..k).filter(|&j| support[j]).map(|j| w[j].clone()).collect();
        return finish(witnesses, span, true, SearchRegime::Diagonal);
    }
    // Sound but possibly incomplete: basis directions and coordinate planes.
    let mut witnesses = Vec::new();
    let mut span = Vec::new();
    for a in 0..k {
        let wa = &w[a];
        if restricted.iter().all(|q| q[(a, a)].is_zero()) {
            witnesses.push(wa.clone());
            span.push(wa.clone());
        }
        for b in a + 1..k {
            let plane = [w[a].clone(), w[b].clone()];
            let sub: Vec<Matrix<Rational>> = restricted
                .iter()
                .map(|q| Matrix::from_rows(vec![vec![q[(a, a)].clone(), q[(a, b)].clone()], vec![q[(b, a)].clone(), q[(b, b)].clone()]]))
                .filter(|q| !q.is_zero())
                .collect();
            let sol = solve_plane(&sub);
            for c in &sol.lines {
                let v = combine(&plane, c);
                witnesses.push(v.clone());
                span.push(v);
            }
            if sol.whole_plane {
                span.extend(plane.iter().cloned());
            }
        }
    }
    finish(witnesses, span, false, SearchRegime::Partial)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedForm {
    pub original: LieSuperalgebra,
    pub a_radical: Subspace,
    pub quotient: LieSuperalgebra,
    pub projection: Matrix<Rational>,
    /// `𝔞⁽¹⁾ ⊆ 𝔞⁽²⁾ ⊆ …`, ending at `a_radical`.
    pub chain: Vec<Subspace>,
    pub certified_complete: bool,
}

/// Iterates the ideal chain until it stops growing.
pub fn a_radical(l: &LieSuperalgebra) -> ReducedForm {
    let mut current = l.zero_subspace();
    let mut chain = Vec::new();
    let mut certified = true;
    for _ in 0..=l.dim() {
        let search = isotropic_generators(l, &current);
        certified &= search.certified_complete;
        let mut gens = search.generators();
        gens.extend(current.basis());
        let next = l.ideal_closure(&gens);
        chain.push(next.clone());
        if next == current {
            break;
        }
        current = next;
    }
    let (quotient, projection) = l.quotient(&current).expect("the chain consists of graded ideals");
    ReducedForm { original: l.clone(), a_radical: current, quotient, projection, chain, certified_complete: certified }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Reducedness {
    Reduced(SearchRegime),
    /// Carries an odd element of the isotropic span (isotropic itself when a
    /// rational solution exists).
    NotReduced(Element),
    Unknown,
}

pub fn is_reduced(l: &LieSuperalgebra) -> Reducedness {
    let search = isotropic_generators(l, &l.zero_subspace());
    if let Some(w) = search.witnesses.first().or(search.span.basis().first()) {
        return Reducedness::NotReduced(w.clone());
    }
    if search.certified_complete {
        Reducedness::Reduced(search.regime)
    } else {
        Reducedness::Unknown
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordRecognition {
    pub is_clifford: bool,
    /// `±e₀`, signed so that the gram matrix below is positive definite.
    pub z_generator: Option<Element>,
    /// `[V_i, V_j] = gram_ij · z`.
    pub gram: Matrix<Rational>,
    pub certificate: Option<SymFormReport>,
    pub reason: Option<String>,
}

pub fn recognize_clifford(l: &LieSuperalgebra) -> CliffordRecognition {
    let de = l.dim_even();
    let r = l.dim_odd();
    let reject = |reason: &str| CliffordRecognition {
        is_clifford: false,
        z_generator: None,
        gram: Matrix::zeros(r, r),
        certificate: None,
        reason: Some(reason.to_string()),
    };
    if l.dim() == 0 {
        return CliffordRecognition { is_clifford: true, z_generator: None, gram: Matrix::zeros(0, 0), certificate: None, reason: None };
    }
    if de != 1 {
        return reject("even part is not one-dimensional");
    }
    if l.center() != l.even_subspace() {
        return reject("centre differs from the even part");
    }
    let g = Matrix::from_fn(r, r, |a, b| l.basis_bracket(de + a, de + b)[0].clone());
    let rep = classify_symmetric(&g);
    let (sign, gram, rep) = match rep.verdict {
        FormVerdict::PositiveDefinite => (Rational::one(), g, rep),
        _ if r == 0 => (Rational::one(), g, rep),
        _ => {
            let neg = g.scale(&-Rational::one());
            let nrep = classify_symmetric(&neg);
            if nrep.verdict != FormVerdict::PositiveDefinite {
                return CliffordRecognition { certificate: Some(rep), gram: g, ..reject("odd form is not definite") };
            }
            (-Rational::one(), neg, nrep)
        }
    };
    CliffordRecognition { is_clifford: true, z_generator: Some(scaled(&l.unit(0), &sign)), gram, certificate: Some(rep), reason: None }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KirillovSplit {
    pub x: Element,
    pub y: Element,
    pub z: Element,
    pub w_basis: Vec<Element>,
    pub n_prime: Subspace,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SplitOutcome {
    Clifford(CliffordRecognition),
    Split(KirillovSplit),
}

pub fn kirillov_split(l: &LieSuperalgebra) -> Result<SplitOutcome, ReductionError> {
    if l.dim() <= 1 {
        return Err(ReductionError::PreconditionFailed("dimension must exceed one".into()));
    }
    match is_reduced(l) {
        Reducedness::Reduced(_) => {}
        Reducedness::NotReduced(w) => {
            return Err(ReductionError::PreconditionFailed(format!("not reduced; isotropic direction {}", l.describe(&w))));
        }
        Reducedness::Unknown => return Err(ReductionError::PreconditionFailed("reducedness could not be certified".into())),
    }
    let center = l.center();
    if center.dim() != 1 {
        return Err(ReductionError::PreconditionFailed(format!("centre has dimension {}, expected 1", center.dim())));
    }
    let z = center.basis()[0].clone();
    let z1 = l.relative_centralizer(&center).intersect(&l.even_subspace());
    let Some(y) = z1.basis().into_iter().rev().find(|v| !center.contains(v)) else {
        return Ok(SplitOutcome::Clifford(recognize_clifford(l)));
    };
    let zp = center.pivots()[0];
    let (a, c) = (0..l.dim_even())
        .find_map(|a| {
            let v = l.br(&l.unit(a), &y);
            (!v[zp].is_zero()).then(|| (a, v[zp].clone() / &z[zp]))
        })
        .ok_or_else(|| ReductionError::VerificationFailed("no even element pairs with Y".into()))?;
    let x = scaled(&l.unit(a), &c.recip());
    let n_prime = l.centralizer(&l.span([y.clone()]));

    let yz = l.span([y.clone(), z.clone()]);
    let mut acc = yz.clone();
    let mut w_basis = Vec::new();
    for v in n_prime.even_part().basis().into_iter().chain(n_prime.odd_part().basis()) {
        if !acc.contains(&v) {
            acc = acc.sum(&l.span([v.clone()]));
            w_basis.push(v);
        }
    }
    let split = KirillovSplit { x, y, z, w_basis, n_prime };
    verify_split(l, &split)?;
    Ok(SplitOutcome::Split(split))
}

/// Exact checks of every property the splitting promises.
pub fn verify_split(l: &LieSuperalgebra, s: &KirillovSplit) -> Result<(), ReductionError> {
    let fail = |m: &str| Err(ReductionError::VerificationFailed(m.to_string()));
    if l.br(&s.x, &s.y) != s.z {
        return fail("[X,Y] != Z");
    }
    if (0..l.dim()).any(|i| !is_zero_vec(&l.br(&s.z, &l.unit(i)))) {
        return fail("Z is not central");
    }
    if s.n_prime.basis().iter().any(|v| !is_zero_vec(&l.br(&s.y, v))) {
        return fail("Y does not centralize n'");
    }
    if s.n_prime.dim() + 1 != l.dim() {
        return fail("n' does not have codimension one");
    }
    if !l.is_subalgebra(&s.n_prime) || !s.n_prime.is_graded() {
        return fail("n' is not a graded subalgebra");
    }
    let mut all = vec![s.x.clone(), s.y.clone(), s.z.clone()];
    all.extend(s.w_basis.iter().cloned());
    if l.span(all.clone()).dim() != l.dim() || all.len() != l.dim() {
        return fail("X, Y, Z and w do not form a basis");
    }
    if s.w_basis.iter().any(|w| l.parity_of(w).is_none()) {
        return fail("w is not graded");
    }
    Ok(())
}
