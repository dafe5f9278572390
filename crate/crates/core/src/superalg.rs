//! Finite-dimensional Lie superalgebras over the rationals.
//!
//! The basis is ordered even block first, so parity is an index threshold.
//! `structure[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{dot, Matrix};
use crate::scalar::Rational;
use crate::subspace::{add_scaled, is_zero_vec, parity_projections, unit, zero_vec, Element, Subspace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("grading violation: [e{i}, e{j}] has a nonzero e{k} component of the wrong parity")]
    GradingViolation { i: usize, j: usize, k: usize },
    #[error("inconsistent antisymmetry between [e{i}, e{j}] and [e{j}, e{i}] in component e{k}")]
    InconsistentAntisymmetry { i: usize, j: usize, k: usize },
    #[error("super-Jacobi fails on (e{}, e{}, e{}); residual {}", triple.0, triple.1, triple.2, fmt_vec(residual))]
    JacobiViolation { triple: (usize, usize, usize), residual: Element },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not graded")]
    NotGraded,
}

pub(crate) fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub struct LieSuperalgebra {
    dim_even: usize,
    dim_odd: usize,
    names: Vec<String>,
    structure: Vec<Vec<Element>>,
    nilpotency: OnceLock<Option<usize>>,
}

impl Clone for LieSuperalgebra {
    fn clone(&self) -> Self {
        Self {
            dim_even: self.dim_even,
            dim_odd: self.dim_odd,
            names: self.names.clone(),
            structure: self.structure.clone(),
            nilpotency: self.nilpotency.clone(),
        }
    }
}

impl PartialEq for LieSuperalgebra {
    fn eq(&self, o: &Self) -> bool {
        self.dim_even == o.dim_even && self.dim_odd == o.dim_odd && self.names == o.names && self.structure == o.structure
    }
}

impl fmt::Debug for LieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieSuperalgebra").field("dim_even", &self.dim_even).field("dim_odd", &self.dim_odd).field("names", &self.names).finish_non_exhaustive()
    }
}

/// One row of a sparse bracket table: `[e_i, e_j] = Σ coeff · e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub out: Vec<(usize, Rational)>,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, out: Vec<(usize, Rational)>) -> Self {
        Self { i, j, out }
    }
}

pub fn default_names(dim_even: usize, dim_odd: usize) -> Vec<String> {
    (0..dim_even).map(|i| format!("E{i}")).chain((0..dim_odd).map(|i| format!("O{i}"))).collect()
}

/// Builds and validates an algebra from a sparse table. Unlisted pairs are
/// zero; the other half of the table is filled in by super-antisymmetry.
pub fn build_algebra(dim_even: usize, dim_odd: usize, names: Option<Vec<String>>, table: &[BracketEntry]) -> Result<LieSuperalgebra, AlgebraError> {
    let n = dim_even + dim_odd;
    let mut c = vec![vec![zero_vec(n); n]; n];
    let mut set = vec![vec![false; n]; n];
    for e in table {
        for idx in [e.i, e.j] {
            if idx >= n {
                return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
            }
        }
        let mut v = zero_vec(n);
        for (k, x) in &e.out {
            if *k >= n {
                return Err(AlgebraError::IndexOutOfRange { index: *k, dim: n });
            }
            v[*k] += x;
        }
        let sign = antisymmetry_sign(e.i >= dim_even, e.j >= dim_even);
        let mirrored: Element = v.iter().map(|x| x * &sign).collect();
        for (a, b, val) in [(e.i, e.j, &v), (e.j, e.i, &mirrored)] {
            if set[a][b] && c[a][b] != *val {
                let k = (0..n).find(|&k| c[a][b][k] != val[k]).unwrap_or(0);
                return Err(AlgebraError::InconsistentAntisymmetry { i: e.i, j: e.j, k });
            }
        }
        if e.i == e.j && v != mirrored {
            let k = (0..n).find(|&k| !v[k].is_zero()).unwrap_or(0);
            return Err(AlgebraError::InconsistentAntisymmetry { i: e.i, j: e.j, k });
        }
        c[e.i][e.j] = v;
        c[e.j][e.i] = mirrored;
        set[e.i][e.j] = true;
        set[e.j][e.i] = true;
    }
    LieSuperalgebra::from_structure_tensor(dim_even, dim_odd, names, c)
}

/// `[e_j, e_i] = sign · [e_i, e_j]`.
fn antisymmetry_sign(i_odd: bool, j_odd: bool) -> Rational {
    if i_odd && j_odd {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl LieSuperalgebra {
    /// Validates a dense structure tensor: grading, super-antisymmetry and
    /// super-Jacobi on all basis triples, in that order.
    pub fn from_structure_tensor(dim_even: usize, dim_odd: usize, names: Option<Vec<String>>, structure: Vec<Vec<Element>>) -> Result<Self, AlgebraError> {
        let n = dim_even + dim_odd;
        if structure.len() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: structure.len() });
        }
        for row in &structure {
            if row.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: row.len() });
            }
            if let Some(v) = row.iter().find(|v| v.len() != n) {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let names = names.unwrap_or_else(|| default_names(dim_even, dim_odd));
        if names.len() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: names.len() });
        }
        let alg = Self { dim_even, dim_odd, names, structure, nilpotency: OnceLock::new() };
        alg.check_grading()?;
        alg.check_antisymmetry()?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn check_grading(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.structure[i][j][k].is_zero() && self.is_odd(k) != (self.is_odd(i) ^ self.is_odd(j)) {
                        return Err(AlgebraError::GradingViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_antisymmetry(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let sign = antisymmetry_sign(self.is_odd(i), self.is_odd(j));
                for k in 0..n {
                    if self.structure[j][i][k] != &sign * &self.structure[i][j][k] {
                        return Err(AlgebraError::InconsistentAntisymmetry { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = self.jacobi_residual(i, j, k);
                    if !is_zero_vec(&r) {
                        return Err(AlgebraError::JacobiViolation { triple: (i, j, k), residual: r });
                    }
                }
            }
        }
        Ok(())
    }

    /// `[x,[y,z]] − [[x,y],z] − (−1)^{|x||y|} [y,[x,z]]` on basis elements.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Element {
        let n = self.dim();
        let jk = &self.structure[j][k];
        let ij = &self.structure[i][j];
        let ik = &self.structure[i][k];
        let mut r = zero_vec(n);
        for m in 0..n {
            add_scaled(&mut r, &self.structure[i][m], &jk[m]);
            add_scaled(&mut r, &self.structure[m][k], &-ij[m].clone());
            let s = if self.is_odd(i) && self.is_odd(j) { Rational::one() } else { -Rational::one() };
            add_scaled(&mut r, &self.structure[j][m], &(&s * &ik[m]));
        }
        r
    }

    pub fn dim_even(&self) -> usize {
        self.dim_even
    }

    pub fn dim_odd(&self) -> usize {
        self.dim_odd
    }

    pub fn dim(&self) -> usize {
        self.dim_even + self.dim_odd
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_odd(&self, i: usize) -> bool {
        i >= self.dim_even
    }

    pub fn structure(&self) -> &[Vec<Element>] {
        &self.structure
    }

    /// `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.structure[i][j]
    }

    pub fn unit(&self, i: usize) -> Element {
        unit(self.dim(), i)
    }

    pub fn zero(&self) -> Element {
        zero_vec(self.dim())
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Element, AlgebraError> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: v.len() });
            }
        }
        Ok(self.br(x, y))
    }

    /// Unchecked bracket for internal use.
    pub(crate) fn br(&self, x: &[Rational], y: &[Rational]) -> Element {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                add_scaled(&mut out, &self.structure[i][j], &c);
            }
        }
        out
    }

    /// `0` for even, `1` for odd, `None` for inhomogeneous nonzero elements.
    pub fn parity_of(&self, x: &[Rational]) -> Option<u8> {
        let even = x[..self.dim_even].iter().any(|c| !c.is_zero());
        let odd = x[self.dim_even..].iter().any(|c| !c.is_zero());
        match (even, odd) {
            (true, true) => None,
            (false, true) => Some(1),
            _ => Some(0),
        }
    }

    /// Matrix of `ad_x`; column `j` is `[x, e_j]`.
    pub fn adjoint(&self, x: &[Rational]) -> Matrix<Rational> {
        let n = self.dim();
        let cols: Vec<Element> = (0..n).map(|j| self.br(x, &self.unit(j))).collect();
        Matrix::from_rows_with_cols(cols, n).transpose()
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = Element>) -> Subspace {
        Subspace::span(self.dim(), self.dim_even, vectors)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::zero(self.dim(), self.dim_even)
    }

    pub fn full_subspace(&self) -> Subspace {
        Subspace::full(self.dim(), self.dim_even)
    }

    pub fn even_subspace(&self) -> Subspace {
        Subspace::even_block(self.dim(), self.dim_even)
    }

    pub fn odd_subspace(&self) -> Subspace {
        Subspace::odd_block(self.dim(), self.dim_even)
    }

    /// Span of all `[s, t]` over basis pairs.
    pub fn bracket_span(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let sb = s.basis();
        let tb = t.basis();
        self.span(sb.iter().flat_map(|x| tb.iter().map(move |y| (x, y))).map(|(x, y)| self.br(x, y)))
    }

    /// `L ⊇ [L,L] ⊇ [L,[L,L]] ⊇ …` until the chain stops changing.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = self.full_subspace();
        let mut chain = vec![full.clone()];
        loop {
            let next = self.bracket_span(&full, chain.last().expect("nonempty"));
            if &next == chain.last().expect("nonempty") {
                break;
            }
            let stop = next.is_zero();
            chain.push(next);
            if stop {
                break;
            }
        }
        chain
    }

    /// Nilpotency class (length of the lower central series to zero), or
    /// `None` when the series stabilizes at a nonzero term.
    pub fn nilpotency_class(&self) -> Option<usize> {
        *self.nilpotency.get_or_init(|| {
            let lcs = self.lower_central_series();
            lcs.last().expect("nonempty").is_zero().then(|| lcs.len() - 1)
        })
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full_subspace())
    }

    /// `{x : [x, s] = 0 for all s ∈ S}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let sb = s.basis();
        // rows indexed by (s, k), columns by the coordinate i of x
        let mut rows = Vec::new();
        for y in &sb {
            for k in 0..n {
                let row: Element = (0..n)
                    .map(|i| {
                        let mut acc = Rational::zero();
                        for (j, yj) in y.iter().enumerate() {
                            if !yj.is_zero() {
                                acc += yj * &self.structure[i][j][k];
                            }
                        }
                        acc
                    })
                    .collect();
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return self.full_subspace();
        }
        self.span(Matrix::from_rows(rows).kernel())
    }

    /// `{x : [x, e_i] ∈ target for all i}`, i.e. the preimage of the centre
    /// of `L / target` when `target` is an ideal.
    pub fn relative_centralizer(&self, target: &Subspace) -> Subspace {
        self.relative_centralizer_among(target, &self.full_subspace())
    }

    /// `{x : [x, s] ∈ target for all s ∈ among}`.
    pub fn relative_centralizer_among(&self, target: &Subspace, among: &Subspace) -> Subspace {
        let n = self.dim();
        let ann = target.annihilator().basis();
        let mut rows = Vec::new();
        for y in among.basis() {
            let ad: Vec<Element> = (0..n).map(|i| self.br(&self.unit(i), &y)).collect();
            for f in &ann {
                let row: Element = ad.iter().map(|v| dot(f, v)).collect();
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return self.full_subspace();
        }
        self.span(Matrix::from_rows(rows).kernel())
    }

    fn homogeneous_parts(&self, generators: &[Element]) -> Vec<Element> {
        generators
            .iter()
            .flat_map(|g| {
                let (e, o) = parity_projections(g, self.dim_even);
                [e, o]
            })
            .filter(|v| !is_zero_vec(v))
            .collect()
    }

    /// Smallest graded ideal containing the generators.
    pub fn ideal_closure(&self, generators: &[Element]) -> Subspace {
        let mut s = self.span(self.homogeneous_parts(generators));
        loop {
            let grown = s.sum(&self.bracket_span(&s, &self.full_subspace()));
            if grown == s {
                return s;
            }
            s = grown;
        }
    }

    /// Smallest graded subalgebra containing the generators.
    pub fn subalgebra_closure(&self, generators: &[Element]) -> Subspace {
        let mut s = self.span(self.homogeneous_parts(generators));
        loop {
            let grown = s.sum(&self.bracket_span(&s, &s));
            if grown == s {
                return s;
            }
            s = grown;
        }
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_span(s, &self.full_subspace()))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_span(s, s))
    }

    /// Quotient by a graded ideal, using the non-pivot coordinates of the
    /// ideal's echelon basis as the section. Returns the quotient and the
    /// projection matrix (quotient dim × ambient dim).
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieSuperalgebra, Matrix<Rational>), AlgebraError> {
        if ideal.ambient() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: ideal.ambient() });
        }
        if !ideal.is_graded() {
            return Err(AlgebraError::NotGraded);
        }
        if !self.is_ideal(ideal) {
            return Err(AlgebraError::NotAnIdeal);
        }
        let keep = ideal.complement_coordinates();
        let q = keep.len();
        let n = self.dim();
        let project = |v: &[Rational]| -> Element {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let proj_cols: Vec<Element> = (0..n).map(|i| project(&self.unit(i))).collect();
        let projection = Matrix::from_fn(q, n, |r, c| proj_cols[c][r].clone());
        let structure: Vec<Vec<Element>> = keep.iter().map(|&a| keep.iter().map(|&b| project(&self.structure[a][b])).collect()).collect();
        let names = keep.iter().map(|&c| self.names[c].clone()).collect();
        let qe = keep.iter().filter(|&&c| c < self.dim_even).count();
        let quotient = LieSuperalgebra::from_structure_tensor(qe, q - qe, Some(names), structure)?;
        Ok((quotient, projection))
    }

    /// A graded subalgebra as an algebra in its own right, on the basis made
    /// of the echelon basis of its even part followed by that of its odd part.
    pub fn subalgebra(&self, s: &Subspace) -> Result<(LieSuperalgebra, Vec<Element>), AlgebraError> {
        if !s.is_graded() {
            return Err(AlgebraError::NotGraded);
        }
        let even = s.even_part().basis();
        let odd = s.odd_part().basis();
        let basis: Vec<Element> = even.iter().chain(odd.iter()).cloned().collect();
        let coords = self.span(basis.iter().cloned());
        let d = basis.len();
        // express brackets in the chosen basis through the canonical one
        let to_basis = Matrix::from_rows_with_cols(basis.clone(), self.dim()).transpose();
        let mut structure = vec![vec![zero_vec(d); d]; d];
        for a in 0..d {
            for b in 0..d {
                let v = self.br(&basis[a], &basis[b]);
                if is_zero_vec(&v) {
                    continue;
                }
                if !coords.contains(&v) {
                    return Err(AlgebraError::NotAnIdeal);
                }
                structure[a][b] = to_basis.solve(&v).expect("vector lies in the span");
            }
        }
        let names = (0..d).map(|i| self.describe(&basis[i])).collect();
        let alg = LieSuperalgebra::from_structure_tensor(even.len(), odd.len(), Some(names), structure)?;
        Ok((alg, basis))
    }

    /// Human-readable linear combination of basis names.
    pub fn describe(&self, v: &[Rational]) -> String {
        let mut parts = Vec::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.names[i];
            if c.is_one() {
                parts.push(name.clone());
            } else if *c == -Rational::one() {
                parts.push(format!("-{name}"));
            } else {
                parts.push(format!("({c}){name}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}
