//! JSON documents: algebras, polarizing systems and Clifford modules.
//! Rationals are strings `"p/q"`; maps use sorted keys.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::cliffmod::CliffordModule;
use crate::linalg::Matrix;
use crate::polarize::PolarizingSystem;
use crate::scalar::{fmt_rational, parse_rational, ExtScalar, Rational, ScalarError};
use crate::subspace::Subspace;
use crate::superalg::{build_algebra, AlgebraError, BracketEntry, LieSuperalgebra};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Shape(String),
}

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

pub fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

pub fn strings_to_rationals(v: &[String]) -> Result<Vec<Rational>, ScalarError> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn matrix_to_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| rationals_to_strings(r)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dim_even: usize,
    pub dim_odd: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketDoc>,
}

impl AlgebraDoc {
    /// Nonzero brackets with `i ≤ j`.
    pub fn from_algebra(l: &LieSuperalgebra) -> Self {
        let mut brackets = Vec::new();
        for i in 0..l.dim() {
            for j in i..l.dim() {
                let out: BTreeMap<usize, String> =
                    l.basis_bracket(i, j).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, fmt_rational(c))).collect();
                if !out.is_empty() {
                    brackets.push(BracketDoc { i, j, out });
                }
            }
        }
        AlgebraDoc { dim_even: l.dim_even(), dim_odd: l.dim_odd(), names: Some(l.names().to_vec()), brackets }
    }

    pub fn to_algebra(&self) -> Result<LieSuperalgebra, DocumentError> {
        let table = self
            .brackets
            .iter()
            .map(|b| Ok(BracketEntry::new(b.i, b.j, b.out.iter().map(|(k, v)| Ok((*k, parse_rational(v)?))).collect::<Result<_, ScalarError>>()?)))
            .collect::<Result<Vec<_>, ScalarError>>()?;
        if let Some(n) = &self.names {
            if n.len() != self.dim_even + self.dim_odd {
                return Err(DocumentError::Shape(format!("{} names for dimension {}", n.len(), self.dim_even + self.dim_odd)));
            }
        }
        Ok(build_algebra(self.dim_even, self.dim_odd, self.names.clone(), &table)?)
    }
}

pub fn parse_algebra(json: &str) -> Result<LieSuperalgebra, DocumentError> {
    serde_json::from_str::<AlgebraDoc>(json)?.to_algebra()
}

pub fn algebra_to_json(l: &LieSuperalgebra) -> String {
    serde_json::to_string_pretty(&AlgebraDoc::from_algebra(l)).expect("algebra document serializes")
}

/// Sparse `"index:value,index:value"` over a basis of length `dim`.
pub fn parse_sparse(s: &str, dim: usize) -> Result<Vec<Rational>, DocumentError> {
    let mut v = vec![Rational::zero(); dim];
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (i, val) = part.split_once(':').ok_or_else(|| DocumentError::Shape(format!("expected index:value, got {part:?}")))?;
        let i: usize = i.trim().parse().map_err(|_| DocumentError::Shape(format!("bad index {i:?}")))?;
        if i >= dim {
            return Err(DocumentError::Shape(format!("index {i} out of range for dimension {dim}")));
        }
        v[i] += parse_rational(val)?;
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub algebra: AlgebraDoc,
    pub lambda: Vec<String>,
    pub m0: Vec<Vec<String>>,
    pub k_lambda: Vec<Vec<String>>,
    pub r_lambda: Vec<Vec<String>>,
    pub j: Vec<Vec<String>>,
    pub m_basis: Vec<Vec<String>>,
    pub clifford: AlgebraDoc,
    pub phi: Vec<Vec<String>>,
    pub mu: Vec<String>,
    pub kappa: usize,
}

fn subspace_rows(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| rationals_to_strings(v)).collect()
}

impl SystemDoc {
    pub fn new(l: &LieSuperalgebra, s: &PolarizingSystem) -> Self {
        SystemDoc {
            algebra: AlgebraDoc::from_algebra(l),
            lambda: rationals_to_strings(&s.lambda),
            m0: subspace_rows(&s.m0),
            k_lambda: subspace_rows(&s.k_lambda),
            r_lambda: subspace_rows(&s.r_lambda),
            j: subspace_rows(&s.j),
            m_basis: s.m_basis.iter().map(|v| rationals_to_strings(v)).collect(),
            clifford: AlgebraDoc::from_algebra(&s.clifford),
            phi: matrix_to_strings(&s.phi),
            mu: rationals_to_strings(&s.mu),
            kappa: s.kappa(),
        }
    }

    /// Rebuilds the algebra and the system without recomputing anything.
    pub fn to_system(&self) -> Result<(LieSuperalgebra, PolarizingSystem), DocumentError> {
        let l = self.algebra.to_algebra()?;
        let n = l.dim();
        let vectors = |rows: &[Vec<String>]| -> Result<Vec<Vec<Rational>>, DocumentError> {
            rows.iter()
                .map(|r| {
                    let v = strings_to_rationals(r)?;
                    if v.len() != n {
                        return Err(DocumentError::Shape(format!("vector of length {} in dimension {n}", v.len())));
                    }
                    Ok(v)
                })
                .collect()
        };
        let clifford = self.clifford.to_algebra()?;
        let phi_rows = self.phi.iter().map(|r| strings_to_rationals(r)).collect::<Result<Vec<_>, _>>()?;
        let phi = Matrix::from_rows_with_cols(phi_rows, self.m_basis.len());
        let system = PolarizingSystem {
            lambda: strings_to_rationals(&self.lambda)?,
            m0: l.span(vectors(&self.m0)?),
            k_lambda: l.span(vectors(&self.k_lambda)?),
            r_lambda: l.span(vectors(&self.r_lambda)?),
            j: l.span(vectors(&self.j)?),
            m_basis: vectors(&self.m_basis)?,
            clifford,
            phi,
            mu: strings_to_rationals(&self.mu)?,
        };
        if system.kappa() != self.kappa {
            return Err(DocumentError::Shape(format!("kappa {} does not match dim c = {}", self.kappa, system.kappa())));
        }
        Ok((l, system))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleDoc {
    /// `Q(i)` adjoined with the listed square roots.
    pub field: String,
    pub dim: usize,
    pub grading: Vec<u8>,
    pub central_value: String,
    pub gram: Vec<Vec<String>>,
    pub congruence: Vec<Vec<String>>,
    pub diagonal: Vec<String>,
    pub rho: Vec<Vec<Vec<String>>>,
}

fn ext_rows(m: &Matrix<ExtScalar>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

impl ModuleDoc {
    pub fn new(m: &CliffordModule) -> Self {
        let primes: BTreeSet<u64> = m
            .rho_input
            .iter()
            .flat_map(|r| r.to_rows().into_iter().flatten())
            .flat_map(|x| x.terms().flat_map(|(k, _)| k.clone()).collect::<Vec<_>>())
            .collect();
        let field = if primes.is_empty() {
            "Q(i)".to_string()
        } else {
            format!("Q(i)({})", primes.iter().map(|p| format!("sqrt({p})")).collect::<Vec<_>>().join(", "))
        };
        ModuleDoc {
            field,
            dim: m.dim,
            grading: m.odd.iter().map(|&o| u8::from(o)).collect(),
            central_value: fmt_rational(&m.a),
            gram: matrix_to_strings(&m.gram),
            congruence: matrix_to_strings(&m.congruence),
            diagonal: rationals_to_strings(&m.d),
            rho: m.rho_input.iter().map(ext_rows).collect(),
        }
    }
}
