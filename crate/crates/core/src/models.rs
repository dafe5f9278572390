//! Heisenberg-Clifford algebras, the super Stone-von Neumann decision, the
//! Schrödinger model tensored with a Clifford module, and induction data.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cliffmod::{clifford_module, conj_transpose, module_equivalent, parity_change, CliffordError, CliffordModule, Equivalence};
use crate::corpus;
use crate::linalg::Matrix;
use crate::polarize::{build_polarizing_system, PolarizeError, PolarizingSystem};
use crate::scalar::{ExtScalar, Field, Gaussian, Rational};
use crate::superalg::LieSuperalgebra;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("no representation for these parameters: {0}")]
    NotAdmissible(String),
    #[error("algebra is not a Heisenberg-Clifford algebra in standard basis")]
    NotHeisenbergClifford,
    #[error(transparent)]
    Polarize(#[from] PolarizeError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HCSpec {
    pub m: usize,
    pub n: usize,
    pub signs: Vec<i64>,
}

impl HCSpec {
    pub fn new(m: usize, signs: Vec<i64>) -> Self {
        assert!(signs.iter().all(|c| c.abs() == 1), "signs must be ±1");
        Self { m, n: signs.len(), signs }
    }

    pub fn algebra(&self) -> LieSuperalgebra {
        heisenberg_clifford(self)
    }

    /// Reads `(m, signs)` off an algebra whose structure constants are
    /// exactly those of a Heisenberg-Clifford algebra in standard basis.
    pub fn recognize(l: &LieSuperalgebra) -> Option<HCSpec> {
        let de = l.dim_even();
        if de.is_multiple_of(2) {
            return None;
        }
        let signs: Option<Vec<i64>> = (de..l.dim())
            .map(|j| {
                let c = &l.basis_bracket(j, j)[0];
                if c.is_one() {
                    Some(1)
                } else if *c == -Rational::one() {
                    Some(-1)
                } else {
                    None
                }
            })
            .collect();
        let spec = HCSpec::new((de - 1) / 2, signs?);
        (spec.algebra().structure() == l.structure()).then_some(spec)
    }

    pub fn name(&self) -> String {
        corpus::hc_name(self.m, &self.signs)
    }
}

pub fn heisenberg_clifford(spec: &HCSpec) -> LieSuperalgebra {
    corpus::hc(spec.m, &spec.signs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OddFormVerdict {
    Definite,
    Indefinite,
    ZeroOddPart,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SvnConclusion {
    NoRepresentation,
    UniqueUpToParityAndEquivalence { count: usize },
    CharactersOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SvnReport {
    pub form_verdict: OddFormVerdict,
    pub agrees: bool,
    pub conclusion: SvnConclusion,
}

impl fmt::Display for SvnReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.conclusion {
            SvnConclusion::CharactersOnly => write!(f, "trivial central character; one-dimensional representations only"),
            SvnConclusion::NoRepresentation if self.form_verdict == OddFormVerdict::Indefinite => {
                write!(f, "no irreducible unitary representation (indefinite form)")
            }
            SvnConclusion::NoRepresentation => write!(f, "no irreducible unitary representation (character does not agree with the form)"),
            SvnConclusion::UniqueUpToParityAndEquivalence { count: 1 } => {
                write!(f, "unique irreducible unitary representation up to equivalence and parity change (1 class)")
            }
            SvnConclusion::UniqueUpToParityAndEquivalence { count } => {
                write!(f, "unique up to parity change; {count} inequivalent irreducible unitary representations")
            }
        }
    }
}

/// Existence and count of irreducible unitary representations with central
/// parameter `b` (`π(Z) = i·b`).
pub fn svn_classify(spec: &HCSpec, b: &Rational) -> SvnReport {
    let form_verdict = if spec.n == 0 {
        OddFormVerdict::ZeroOddPart
    } else if spec.signs.iter().all(|&c| c == spec.signs[0]) {
        OddFormVerdict::Definite
    } else {
        OddFormVerdict::Indefinite
    };
    let agrees = !b.is_zero()
        && match form_verdict {
            OddFormVerdict::ZeroOddPart => true,
            OddFormVerdict::Indefinite => false,
            OddFormVerdict::Definite => b.is_positive() == (spec.signs[0] > 0),
        };
    let conclusion = if b.is_zero() {
        SvnConclusion::CharactersOnly
    } else if !agrees {
        SvnConclusion::NoRepresentation
    } else {
        let count = if spec.n > 0 && spec.n.is_multiple_of(2) { 2 } else { 1 };
        SvnConclusion::UniqueUpToParityAndEquivalence { count }
    };
    SvnReport { form_verdict, agrees, conclusion }
}

/// `t^α ∂^β`.
pub type Monomial = (Vec<u32>, Vec<u32>);

/// Polynomial differential operator in `t₁..t_m`, normal ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOp {
    m: usize,
    terms: BTreeMap<Monomial, Gaussian>,
}

fn lattice_box(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        out = out.into_iter().flat_map(|p| (0..=b).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

fn add_vec(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `∂^β t^γ = Σ_κ Π C(β,κ) C(γ,κ) κ! t^{γ−κ} ∂^{β−κ}`.
fn reorder(beta: &[u32], gamma: &[u32]) -> Vec<(Monomial, Rational)> {
    let bounds: Vec<u32> = beta.iter().zip(gamma).map(|(b, g)| *b.min(g)).collect();
    lattice_box(&bounds)
        .into_iter()
        .map(|k| {
            let c = (0..k.len()).fold(1u64, |acc, i| {
                let fact: u64 = (1..=k[i] as u64).product();
                acc * binomial(beta[i] as u64, k[i] as u64) * binomial(gamma[i] as u64, k[i] as u64) * fact
            });
            ((sub_vec(gamma, &k), sub_vec(beta, &k)), Rational::from_integer(c.into()))
        })
        .collect()
}

impl WeylOp {
    pub fn zero(m: usize) -> Self {
        Self { m, terms: BTreeMap::new() }
    }

    pub fn monomial(alpha: Vec<u32>, beta: Vec<u32>, c: Gaussian) -> Self {
        assert_eq!(alpha.len(), beta.len());
        let mut w = Self::zero(alpha.len());
        w.add_term((alpha, beta), c);
        w
    }

    pub fn scalar(m: usize, c: Gaussian) -> Self {
        Self::monomial(vec![0; m], vec![0; m], c)
    }

    pub fn t(m: usize, i: usize) -> Self {
        let mut a = vec![0; m];
        a[i] = 1;
        Self::monomial(a, vec![0; m], Gaussian::one())
    }

    pub fn d(m: usize, i: usize) -> Self {
        let mut b = vec![0; m];
        b[i] = 1;
        Self::monomial(vec![0; m], b, Gaussian::one())
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Gaussian> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Monomial, c: Gaussian) {
        let sum = self.terms.remove(&key).unwrap_or_else(Gaussian::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Gaussian) -> Self {
        let mut out = Self::zero(self.m);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Gaussian::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.m);
        for ((a, b), c) in &self.terms {
            for ((g, d), e) in &o.terms {
                let ce = c.clone() * e.clone();
                for ((g2, b2), k) in reorder(b, g) {
                    out.add_term((add_vec(a, &g2), add_vec(&b2, d)), ce.scale(&k));
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Formal adjoint: `t† = t`, `∂† = −∂`, `i† = −i`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.m);
        let zeros = vec![0; self.m];
        for ((a, b), c) in &self.terms {
            let sign = if b.iter().sum::<u32>() % 2 == 0 { Gaussian::one() } else { -Gaussian::one() };
            let d = Self::monomial(zeros.clone(), b.clone(), c.conj() * sign);
            out = out.add(&d.mul(&Self::monomial(a.clone(), zeros.clone(), Gaussian::one())));
        }
        out
    }
}

fn fmt_monomial((a, b): &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in a.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{e}", i + 1)),
        }
    }
    for (i, &e) in b.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("d{}", i + 1)),
            _ => parts.push(format!("d{}^{e}", i + 1)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({c}) {}", fmt_monomial(k))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ (Weyl monomial) ⊗ (matrix)` on `C[t] ⊗ K`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOp {
    m: usize,
    dim: usize,
    terms: BTreeMap<Monomial, Matrix<ExtScalar>>,
}

impl TensorOp {
    pub fn zero(m: usize, dim: usize) -> Self {
        Self { m, dim, terms: BTreeMap::new() }
    }

    pub fn weyl(w: &WeylOp, dim: usize) -> Self {
        let mut out = Self::zero(w.m, dim);
        let id = Matrix::<ExtScalar>::identity(dim);
        for (k, c) in &w.terms {
            out.add_term(k.clone(), id.scale(&ExtScalar::from(c.clone())));
        }
        out
    }

    pub fn matrix(m: usize, a: &Matrix<ExtScalar>) -> Self {
        let mut out = Self::zero(m, a.rows());
        out.add_term((vec![0; m], vec![0; m]), a.clone());
        out
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Matrix<ExtScalar>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Monomial, a: Matrix<ExtScalar>) {
        let sum = match self.terms.remove(&key) {
            Some(prev) => prev.add(&a),
            None => a,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, a) in &o.terms {
            out.add_term(k.clone(), a.clone());
        }
        out
    }

    pub fn scale(&self, s: &ExtScalar) -> Self {
        let mut out = Self::zero(self.m, self.dim);
        for (k, a) in &self.terms {
            out.add_term(k.clone(), a.scale(s));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-ExtScalar::one()))
    }

    /// The Weyl factor is even, so no Koszul signs appear.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.m, self.dim);
        for ((a, b), x) in &self.terms {
            for ((g, d), y) in &o.terms {
                let xy = x.mul(y);
                for ((g2, b2), k) in reorder(b, g) {
                    out.add_term((add_vec(a, &g2), add_vec(&b2, d)), xy.scale(&ExtScalar::from_rational(&k)));
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.m, self.dim);
        for (k, a) in &self.terms {
            let w = WeylOp::monomial(k.0.clone(), k.1.clone(), Gaussian::one()).adjoint();
            out = out.add(&TensorOp::weyl(&w, self.dim).mul(&TensorOp::matrix(self.m, &conj_transpose(a))));
        }
        out
    }
}

impl fmt::Display for TensorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, a)| {
                let rows: Vec<String> = a.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")).collect();
                format!("{} ⊗ [{}]", fmt_monomial(k), rows.join("; "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Images of the Heisenberg-Clifford basis on `C[t₁..t_m] ⊗ K`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchrodingerModel {
    pub spec: HCSpec,
    pub b: Rational,
    pub algebra: LieSuperalgebra,
    pub module: CliffordModule,
    pub images: Vec<TensorOp>,
}

pub fn schrodinger_model(spec: &HCSpec, b: &Rational) -> Result<SchrodingerModel, ModelError> {
    let report = svn_classify(spec, b);
    if !matches!(report.conclusion, SvnConclusion::UniqueUpToParityAndEquivalence { .. }) {
        return Err(ModelError::NotAdmissible(report.to_string()));
    }
    let m = spec.m;
    let algebra = heisenberg_clifford(spec);
    let module = clifford_module(&corpus::hc(0, &spec.signs), std::slice::from_ref(b))?;
    let k = module.dim;
    let ib = Gaussian::i().scale(b);
    let mut images = vec![TensorOp::weyl(&WeylOp::scalar(m, ib.clone()), k)];
    images.extend((0..m).map(|i| TensorOp::weyl(&WeylOp::d(m, i), k)));
    images.extend((0..m).map(|i| TensorOp::weyl(&WeylOp::t(m, i).scale(&ib), k)));
    images.extend(module.rho_input.iter().map(|r| TensorOp::matrix(m, r)));
    Ok(SchrodingerModel { spec: spec.clone(), b: b.clone(), algebra, module, images })
}

impl SchrodingerModel {
    /// Linear extension of the generator images.
    pub fn image(&self, v: &[Rational]) -> TensorOp {
        let mut out = TensorOp::zero(self.spec.m, self.module.dim);
        for (c, img) in v.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add(&img.scale(&ExtScalar::from_rational(c)));
            }
        }
        out
    }

    /// Copy with the image of `V_j` multiplied by `factor`.
    pub fn mis_scaled(&self, j: usize, factor: &Rational) -> Self {
        let mut out = self.clone();
        let idx = self.algebra.dim_even() + j;
        out.images[idx] = out.images[idx].scale(&ExtScalar::from_rational(factor));
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelResidual {
    pub relation: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ModelReport {
    pub checks: usize,
    pub failures: Vec<ModelResidual>,
}

impl ModelReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, relation: impl FnOnce() -> String, lhs: &TensorOp, rhs: &TensorOp) {
        self.checks += 1;
        let r = lhs.sub(rhs);
        if !r.is_zero() {
            self.failures.push(ModelResidual { relation: relation(), residual: r.to_string() });
        }
    }
}

/// Every bracket relation on basis pairs, plus formal skew-adjointness of
/// even images and Hermitian symmetry of odd images.
///
/// Odd pairs use `ρ(u)ρ(v) + ρ(v)ρ(u) = −i·π([u, v])`; since `π(Z) = i·b`
/// this is `μ([u, v])` times the identity on the Clifford factor.
pub fn verify_model(model: &SchrodingerModel) -> ModelReport {
    let l = &model.algebra;
    let names = l.names();
    let minus_i = ExtScalar::from(-Gaussian::i());
    let mut rep = ModelReport::default();
    for i in 0..l.dim() {
        for j in i..l.dim() {
            let (a, b) = (&model.images[i], &model.images[j]);
            let target = model.image(&l.br(&l.unit(i), &l.unit(j)));
            let (ni, nj) = (&names[i], &names[j]);
            if l.is_odd(i) && l.is_odd(j) {
                rep.check(|| format!("{{{ni}, {nj}}} = -i pi([{ni}, {nj}])"), &a.anticommutator(b), &target.scale(&minus_i));
            } else {
                rep.check(|| format!("[{ni}, {nj}] = pi([{ni}, {nj}])"), &a.commutator(b), &target);
            }
        }
        let img = &model.images[i];
        let n = &names[i];
        if l.is_odd(i) {
            rep.check(|| format!("rho({n}) is Hermitian"), &img.adjoint(), img);
        } else {
            rep.check(|| format!("pi({n}) is skew-adjoint"), &img.adjoint(), &img.scale(&-ExtScalar::one()));
        }
    }
    rep
}

/// The finite data from which the induced representation is assembled.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedRepData {
    pub system: PolarizingSystem,
    pub module: CliffordModule,
    pub fiber_dim: usize,
    /// `dim 𝔫₀ − dim 𝔪₀`, the number of variables in the induced model.
    pub transverse_dim: usize,
    pub kappa: usize,
}

pub fn induced_rep_data(l: &LieSuperalgebra, lambda: &[Rational]) -> Result<InducedRepData, ModelError> {
    let system = build_polarizing_system(l, lambda)?;
    let module = clifford_module(&system.clifford, &system.mu)?;
    Ok(InducedRepData { fiber_dim: module.dim, transverse_dim: l.dim_even() - system.m0.dim(), kappa: system.kappa(), module, system })
}

/// Count of inequivalent irreducibles through induction at `λ = b·Z*`:
/// `None` when `λ ∉ 𝔫₀⁺`, otherwise 1 or 2 according to whether the
/// consistent module survives parity change.
pub fn induced_count(spec: &HCSpec, b: &Rational) -> Result<Option<usize>, ModelError> {
    let l = spec.algebra();
    let data = match induced_rep_data(&l, &central_functional(spec, b)) {
        Err(ModelError::Polarize(PolarizeError::LambdaNotNonnegative)) => return Ok(None),
        r => r?,
    };
    if spec.n == 0 {
        return Ok(Some(1));
    }
    Ok(Some(match module_equivalent(&data.module, &parity_change(&data.module))? {
        Equivalence::Equivalent(_) => 1,
        Equivalence::Inequivalent => 2,
    }))
}

/// `b·Z*` on a Heisenberg-Clifford algebra, as a functional.
pub fn central_functional(spec: &HCSpec, b: &Rational) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 1 + 2 * spec.m];
    v[0] = b.clone();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn spec(m: usize, s: &[i64]) -> HCSpec {
        HCSpec::new(m, s.to_vec())
    }

    #[test]
    fn builders() {
        let h = heisenberg_clifford(&spec(1, &[]));
        assert_eq!((h.dim_even(), h.dim_odd()), (3, 0));
        let a = heisenberg_clifford(&spec(1, &[1]));
        assert_eq!((a.dim_even(), a.dim_odd()), (3, 1));
        assert_eq!(a.center(), a.span([a.unit(0)]));
        assert_eq!(HCSpec::recognize(&corpus::hc(2, &[1, -1, 1])), Some(spec(2, &[1, -1, 1])));
        assert_eq!(HCSpec::recognize(&corpus::mixed_degenerate()), None);
    }

    #[test]
    fn svn_examples() {
        let c = |m, s: &[i64], b| svn_classify(&spec(m, s), &int(b)).conclusion;
        assert_eq!(c(1, &[1, 1], 1), SvnConclusion::UniqueUpToParityAndEquivalence { count: 2 });
        assert_eq!(c(0, &[1, -1], 1), SvnConclusion::NoRepresentation);
        assert_eq!(c(1, &[1], -1), SvnConclusion::NoRepresentation);
        assert_eq!(c(1, &[1], 1), SvnConclusion::UniqueUpToParityAndEquivalence { count: 1 });
        assert_eq!(c(1, &[], -1), SvnConclusion::UniqueUpToParityAndEquivalence { count: 1 });
        assert_eq!(c(2, &[-1, -1], 0), SvnConclusion::CharactersOnly);
        assert_eq!(svn_classify(&spec(0, &[1, -1]), &int(1)).to_string(), "no irreducible unitary representation (indefinite form)");
    }

    #[test]
    fn weyl_examples() {
        let d = WeylOp::d(1, 0);
        let t = WeylOp::t(1, 0);
        assert_eq!(d.commutator(&t), WeylOp::scalar(1, Gaussian::one()));
        let ib = Gaussian::i().scale(&int(3));
        assert_eq!(d.commutator(&t.scale(&ib)), WeylOp::scalar(1, ib));
        assert_eq!(t.mul(&d).commutator(&d), d.scale(&-Gaussian::one()));
        // ∂² t² = t²∂² + 4t∂ + 2
        let d2t2 = d.mul(&d).mul(&t).mul(&t);
        let expected = t.mul(&t).mul(&d).mul(&d).add(&t.mul(&d).scale(&Gaussian::real(int(4)))).add(&WeylOp::scalar(1, Gaussian::real(int(2))));
        assert_eq!(d2t2, expected);
        assert_eq!(d.adjoint(), d.scale(&-Gaussian::one()));
        assert_eq!(t.mul(&d).adjoint(), d.mul(&t).scale(&-Gaussian::one()));
    }

    #[test]
    fn models_verify() {
        let model = schrodinger_model(&spec(1, &[]), &int(1)).unwrap();
        let rep = verify_model(&model);
        assert!(rep.passed(), "{:?}", rep.failures);

        let model = schrodinger_model(&spec(0, &[1]), &int(1)).unwrap();
        let r = &model.module.rho_input[0];
        assert_eq!(r.mul(r), Matrix::identity(2).scale(&ExtScalar::from_rational(&crate::scalar::rat(1, 2))));

        let model = schrodinger_model(&spec(1, &[1]), &int(1)).unwrap();
        assert!(model.images[1].commutator(&model.images[3]).is_zero());
        assert!(verify_model(&model).passed());

        let model = schrodinger_model(&spec(2, &[1, 1, 1]), &int(2)).unwrap();
        assert!(verify_model(&model).passed());
        let bad = verify_model(&model.mis_scaled(0, &int(2)));
        assert!(!bad.passed());
        assert!(bad.failures.iter().any(|f| f.relation.starts_with("{V1, V1}")));

        let neg = schrodinger_model(&spec(1, &[-1, -1]), &int(-3)).unwrap();
        assert!(verify_model(&neg).passed());
        assert!(matches!(schrodinger_model(&spec(1, &[1]), &int(0)), Err(ModelError::NotAdmissible(_))));
    }

    #[test]
    fn induced_examples() {
        let h = corpus::heisenberg();
        let d = induced_rep_data(&h, &[int(1), int(0), int(0)]).unwrap();
        assert_eq!((d.fiber_dim, d.transverse_dim, d.kappa), (1, 1, 1));
        let l = corpus::hc(1, &[1, 1]);
        let d = induced_rep_data(&l, &[int(1), int(0), int(0)]).unwrap();
        assert_eq!((d.fiber_dim, d.transverse_dim, d.kappa), (2, 1, 3));
        let d = induced_rep_data(&l, &[int(0), int(0), int(0)]).unwrap();
        assert_eq!((d.fiber_dim, d.transverse_dim, d.kappa), (1, 0, 1));
        assert!(matches!(induced_rep_data(&l, &[int(-1), int(0), int(0)]), Err(ModelError::Polarize(PolarizeError::LambdaNotNonnegative))));
    }

    #[test]
    fn routes_agree() {
        for (m, s) in corpus::hc_family() {
            let sp = HCSpec::new(m, s);
            for b in [-1, 1] {
                let expected = match svn_classify(&sp, &int(b)).conclusion {
                    SvnConclusion::UniqueUpToParityAndEquivalence { count } => Some(count),
                    _ => None,
                };
                assert_eq!(induced_count(&sp, &int(b)).unwrap(), expected, "{} b={b}", sp.name());
            }
        }
    }
}
