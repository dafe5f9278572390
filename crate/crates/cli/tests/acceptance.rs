//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.
//!
//!     cargo test --release --test acceptance
//!     cargo test --release --test acceptance -- --seed 7

use std::collections::HashSet;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use superorbit::cliffmod::{clifford_module, module_equivalent, parity_change, Equivalence};
use superorbit::coadjoint::{coadjoint_flow, evaluate, odd_square_radical_violations, orbit_equal, Functional, OrbitComparison};
use superorbit::corpus;
use superorbit::document::SystemDoc;
use superorbit::linalg::Matrix;
use superorbit::models::{induced_count, schrodinger_model, svn_classify, verify_model, HCSpec, ModelError, OddFormVerdict, SvnConclusion};
use superorbit::polarize::{build_polarizing_system, kappa, odd_square, polarization_violations, vergne_polarization, verify_polarizing_system};
use superorbit::sampling::{functionals_in_n0_plus, random_even, rng, small_rational, DEFAULT_SEED};
use superorbit::scalar::{int, rat, Rational};
use superorbit::subspace::{Element, Subspace};
use superorbit::superalg::{build_algebra, AlgebraError, BracketEntry, LieSuperalgebra};
use superorbit::sweep;

const SAMPLES: usize = 100;
const ORACLE_SAMPLES: usize = 10;
const FLOW_BASES: usize = 20;
const FLOWS_PER_BASE: usize = 10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Ctx) -> Outcome);

struct Ctx {
    seed: u64,
    corpus: Vec<(String, LieSuperalgebra)>,
    /// Seeded functionals in `𝔫₀⁺`, shared by criteria 2 to 4.
    samples: Vec<Vec<Functional>>,
    started: Instant,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(limit_secs), || format!("took {:.1}s, limit {limit_secs}s", elapsed.as_secs_f64()))
}

fn fmt_f(f: &[Rational]) -> String {
    format!("[{}]", f.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

// criterion 1

fn validation(ctx: &Ctx) -> Outcome {
    let start = Instant::now();
    ensure(ctx.corpus.len() >= 12, || format!("corpus has only {} algebras", ctx.corpus.len()))?;
    for (name, l) in &ctx.corpus {
        ensure(l.dim() <= 8, || format!("{name} has dimension {}", l.dim()))?;
        LieSuperalgebra::from_structure_tensor(l.dim_even(), l.dim_odd(), None, l.structure().to_vec()).map_err(|e| format!("{name}: {e}"))?;
    }
    let mut r = rng(ctx.seed.wrapping_add(1));
    let nontrivial: Vec<&(String, LieSuperalgebra)> = ctx.corpus.iter().filter(|(_, l)| l.dim() >= 2).collect();
    let mut rejected = 0;
    while rejected < 50 {
        let (name, l) = nontrivial[r.gen_range(0..nontrivial.len())];
        let n = l.dim();
        let (i, j, k) = (r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n));
        // only entries whose change must break an axiom
        let must_break = i != j || !l.is_odd(i) || l.is_odd(k);
        if !must_break {
            continue;
        }
        let delta = loop {
            let d = small_rational(&mut r);
            if !d.is_zero() {
                break d;
            }
        };
        let mut c = l.structure().to_vec();
        c[i][j][k] += delta;
        match LieSuperalgebra::from_structure_tensor(l.dim_even(), l.dim_odd(), None, c) {
            Err(AlgebraError::GradingViolation { .. } | AlgebraError::InconsistentAntisymmetry { .. } | AlgebraError::JacobiViolation { .. }) => rejected += 1,
            other => return Err(format!("{name}: perturbing c[{i}][{j}][{k}] gave {other:?}")),
        }
    }
    within(start.elapsed(), 5)?;
    Ok(format!("{} algebras valid, {rejected} perturbations rejected", ctx.corpus.len()))
}

// criterion 2

fn odd_square_lemma(ctx: &Ctx) -> Outcome {
    let start = Instant::now();
    let failures: Vec<String> = sweep::map(&ctx.corpus.iter().zip(&ctx.samples).collect::<Vec<_>>(), |((name, l), fs)| {
        fs.iter()
            .filter_map(|f| {
                let v = odd_square_radical_violations(l, f);
                (!v.is_empty()).then(|| format!("{name} at {}: {:?}", fmt_f(f), v[0]))
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    ensure(failures.is_empty(), || failures[0].clone())?;
    within(start.elapsed(), 30)?;
    Ok(format!("{} algebras x {SAMPLES} functionals", ctx.corpus.len()))
}

// criterion 3

fn naive_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn naive_bracket(l: &LieSuperalgebra, x: &[Rational], y: &[Rational]) -> Element {
    let n = l.dim();
    let mut out = vec![Rational::zero(); n];
    for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, c) in out.iter_mut().zip(&l.structure()[i][j]) {
                *o += xi * yj * c;
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Element {
    (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

/// Coefficient vectors of length `n` with entries in {-1, 0, 1}.
fn sign_grid(n: usize) -> Vec<Vec<Rational>> {
    (0..n).fold(vec![vec![]], |acc, _| acc.into_iter().flat_map(|v| [-1, 0, 1].into_iter().map(move |s| [v.clone(), vec![int(s)]].concat())).collect())
}

/// Largest isotropic subalgebra of `𝔫₀` found by depth-first extension
/// with vectors whose coordinates over a basis of the current orthogonal
/// complement lie in {-1, 0, 1}. No isotropic subspace exceeds
/// `dim 𝔫₀ − rank ω / 2`, so the search stops once that size is reached.
fn max_isotropic_subalgebra(l: &LieSuperalgebra, lambda: &[Rational]) -> usize {
    let n = l.dim();
    let de = l.dim_even();
    let omega = |a: &Element, b: &Element| evaluate(l, lambda, &naive_bracket(l, a, b));
    let gram: Vec<Vec<Rational>> = (0..de).map(|i| (0..de).map(|j| omega(&unit(n, i), &unit(n, j))).collect()).collect();
    let bound = de - naive_rank(gram) / 2;
    let mut seen = HashSet::new();
    let mut best = 0;
    let mut stack = vec![l.zero_subspace()];
    while let Some(s) = stack.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        best = best.max(s.dim());
        if best == bound {
            break;
        }
        let sb = s.basis();
        // even vectors ω-orthogonal to s
        let mut eqs: Vec<Element> = sb.iter().map(|b| (0..n).map(|i| if i < de { omega(b, &unit(n, i)) } else { Rational::zero() }).collect()).collect();
        eqs.extend((de..n).map(|i| unit(n, i)));
        let perp = if eqs.is_empty() { Subspace::full(n, de) } else { l.span(Matrix::from_rows(eqs).kernel()) };
        let pb = perp.basis();
        for coeffs in sign_grid(pb.len()) {
            let mut v = vec![Rational::zero(); n];
            for (c, b) in coeffs.iter().zip(&pb) {
                for k in 0..n {
                    v[k] += c * &b[k];
                }
            }
            if s.contains(&v) {
                continue;
            }
            let next = s.sum(&l.span([v]));
            if seen.contains(&next) {
                continue;
            }
            let nb = next.basis();
            if nb.iter().all(|a| nb.iter().all(|b| next.contains(&naive_bracket(l, a, b)))) {
                stack.push(next);
            }
        }
    }
    best
}

fn vergne(ctx: &Ctx) -> Outcome {
    let per_algebra = sweep::map(&ctx.corpus.iter().zip(&ctx.samples).collect::<Vec<_>>(), |((name, l), fs)| -> Result<usize, String> {
        let target = odd_square(l);
        let mut oracle_runs = 0;
        for (idx, f) in fs.iter().enumerate() {
            let p = vergne_polarization(l, f).map_err(|e| format!("{name} at {}: {e}", fmt_f(f)))?;
            let v = polarization_violations(l, f, &p.m0);
            ensure(v.is_empty(), || format!("{name} at {}: {}", fmt_f(f), v[0]))?;
            ensure(p.contains_odd_square && p.m0.contains_subspace(&target), || format!("{name} at {}: m0 misses [n1,n1]", fmt_f(f)))?;
            if idx < ORACLE_SAMPLES && (1..=5).contains(&l.dim_even()) {
                let best = max_isotropic_subalgebra(l, f);
                ensure(best == p.m0.dim(), || format!("{name} at {}: dim m0 = {}, oracle {best}", fmt_f(f), p.m0.dim()))?;
                oracle_runs += 1;
            }
        }
        Ok(oracle_runs)
    });
    let oracle_runs: usize = per_algebra.into_iter().sum::<Result<usize, String>>()?;
    Ok(format!("{} polarizations, {oracle_runs} oracle comparisons", ctx.samples.iter().map(Vec::len).sum::<usize>()))
}

// criterion 4

fn systems(ctx: &Ctx) -> Outcome {
    let per_algebra = sweep::map(&ctx.corpus.iter().zip(&ctx.samples).collect::<Vec<_>>(), |((name, l), fs)| -> Result<usize, String> {
        let mut checks = 0;
        for f in fs.iter() {
            let s = build_polarizing_system(l, f).map_err(|e| format!("{name} at {}: {e}", fmt_f(f)))?;
            let rep = verify_polarizing_system(l, &s);
            ensure(rep.passed(), || format!("{name} at {}: {}", fmt_f(f), rep.violations.join("; ")))?;
            checks += rep.checks;
            let m = clifford_module(&s.clifford, &s.mu).map_err(|e| format!("{name} at {}: Clifford module: {e}", fmt_f(f)))?;
            let bad = m.relation_violations();
            ensure(bad.is_empty(), || format!("{name} at {}: {}", fmt_f(f), bad[0]))?;
        }
        Ok(checks)
    });
    let checks: usize = per_algebra.into_iter().sum::<Result<usize, String>>()?;
    Ok(format!("{} systems, {checks} checks", ctx.samples.iter().map(Vec::len).sum::<usize>()))
}

// criterion 5

fn kappa_invariance(ctx: &Ctx) -> Outcome {
    let seed = ctx.seed.wrapping_add(5);
    let per_algebra = sweep::map(&ctx.corpus.iter().enumerate().collect::<Vec<_>>(), |&(idx, (name, l))| -> Result<usize, String> {
        let mut r = rng(seed.wrapping_add(idx as u64));
        let k = |f: &[Rational]| kappa(l, f).map_err(|e| format!("{name} at {}: {e}", fmt_f(f)));
        let mut triples = 0;
        for f in functionals_in_n0_plus(l, FLOW_BASES, &mut r) {
            let k0 = k(&f)?;
            if l.dim_odd() == 0 {
                ensure(k0 == 1, || format!("{name} at {}: kappa = {k0} on a purely even algebra", fmt_f(&f)))?;
            }
            for _ in 0..FLOWS_PER_BASE {
                let x = random_even(l, &mut r);
                let t = small_rational(&mut r);
                let g = coadjoint_flow(l, &f, &x, &t).map_err(|e| format!("{name}: {e}"))?;
                let k1 = k(&g)?;
                ensure(k0 == k1, || format!("{name}: kappa {k0} at {} but {k1} at {}", fmt_f(&f), fmt_f(&g)))?;
                triples += 1;
            }
        }
        Ok(triples)
    });
    let triples: usize = per_algebra.into_iter().sum::<Result<usize, String>>()?;
    let even = ctx.corpus.iter().filter(|(_, l)| l.dim_odd() == 0).count();
    Ok(format!("{triples} triples, {} per algebra; {even} purely even algebras at kappa 1", FLOW_BASES * FLOWS_PER_BASE))
}

// criterion 6

/// `G = AᵀA + D` with small rational `A` and positive diagonal `D`.
fn random_pd_gram(l: usize, r: &mut impl Rng) -> Matrix<Rational> {
    let a: Vec<Vec<Rational>> = (0..l).map(|_| (0..l).map(|_| small_rational(r)).collect()).collect();
    Matrix::from_fn(l, l, |i, j| {
        let mut g: Rational = (0..l).map(|k| &a[k][i] * &a[k][j]).sum();
        if i == j {
            g += rat(r.gen_range(1..=4), r.gen_range(1..=3));
        }
        g
    })
}

fn clifford(ctx: &Ctx) -> Outcome {
    let mut r = rng(ctx.seed.wrapping_add(6));
    let mut grams = 0;
    for trial in 0..30 {
        let l = trial % 6;
        let g = random_pd_gram(l, &mut r);
        let table: Vec<BracketEntry> = (0..l)
            .flat_map(|i| (i..l).map(move |j| (i, j)))
            .filter(|&(i, j)| !g[(i, j)].is_zero())
            .map(|(i, j)| BracketEntry::new(1 + i, 1 + j, vec![(0, g[(i, j)].clone())]))
            .collect();
        let c = build_algebra(1, l, None, &table).map_err(|e| e.to_string())?;
        let a = rat(r.gen_range(1..=5), r.gen_range(1..=3));
        let m = clifford_module(&c, std::slice::from_ref(&a)).map_err(|e| format!("l = {l}: {e}"))?;
        let bad = m.relation_violations();
        ensure(bad.is_empty(), || format!("l = {l}, gram {:?}: {}", g.to_rows(), bad[0]))?;
        ensure(m.dim == 1 << l.div_ceil(2), || format!("l = {l}: module dimension {}", m.dim))?;
        ensure(m.is_irreducible(), || format!("l = {l}: module is reducible"))?;
        let equivalent = matches!(module_equivalent(&m, &parity_change(&m)).map_err(|e| e.to_string())?, Equivalence::Equivalent(_));
        ensure(equivalent == (l % 2 == 1), || format!("l = {l}: parity change equivalent = {equivalent}"))?;
        grams += 1;
    }
    Ok(format!("{grams} Gram matrices, l = 0..=5"))
}

// criterion 7

#[derive(Clone, Copy, Debug, PartialEq)]
enum Expect {
    None,
    One,
    Two,
    Chars,
}

/// Decisions for b = -1, 0, 1 by odd sign pattern; `p` is +1, `m` is -1.
const TABLE: &[(&str, [Expect; 3])] = {
    use Expect::*;
    &[
        ("", [One, Chars, One]),
        ("p", [None, Chars, One]),
        ("m", [One, Chars, None]),
        ("pp", [None, Chars, Two]),
        ("mm", [Two, Chars, None]),
        ("pm", [None, Chars, None]),
        ("mp", [None, Chars, None]),
        ("ppp", [None, Chars, One]),
        ("mmm", [One, Chars, None]),
        ("ppm", [None, Chars, None]),
        ("pmp", [None, Chars, None]),
        ("mpp", [None, Chars, None]),
        ("pmm", [None, Chars, None]),
        ("mpm", [None, Chars, None]),
        ("mmp", [None, Chars, None]),
    ]
};

fn pattern(signs: &[i64]) -> String {
    signs.iter().map(|&s| if s > 0 { 'p' } else { 'm' }).collect()
}

fn svn(_: &Ctx) -> Outcome {
    let mut cases = 0;
    for (m, signs) in corpus::hc_family() {
        let key = pattern(&signs);
        let row = TABLE.iter().find(|(p, _)| *p == key).ok_or_else(|| format!("no table row for {key:?}"))?.1;
        let spec = HCSpec::new(m, signs.clone());
        let verdict = svn_classify(&spec, &int(1)).form_verdict;
        let expected_verdict = match key.as_str() {
            "" => OddFormVerdict::ZeroOddPart,
            k if k.chars().all(|c| c == 'p') || k.chars().all(|c| c == 'm') => OddFormVerdict::Definite,
            _ => OddFormVerdict::Indefinite,
        };
        ensure(verdict == expected_verdict, || format!("{}: form verdict {verdict:?}", spec.name()))?;
        for (b, want) in [-1, 0, 1].into_iter().zip(row) {
            let got = svn_classify(&spec, &int(b)).conclusion;
            let got = match got {
                SvnConclusion::NoRepresentation => Expect::None,
                SvnConclusion::CharactersOnly => Expect::Chars,
                SvnConclusion::UniqueUpToParityAndEquivalence { count: 1 } => Expect::One,
                SvnConclusion::UniqueUpToParityAndEquivalence { count: 2 } => Expect::Two,
                other => return Err(format!("{} b = {b}: {other:?}", spec.name())),
            };
            ensure(got == want, || format!("{} b = {b}: {got:?}, expected {want:?}", spec.name()))?;
            // the induction route must agree wherever the central character is nontrivial
            if b != 0 {
                let induced = induced_count(&spec, &int(b)).map_err(|e| format!("{} b = {b}: {e}", spec.name()))?;
                let from_table = match want {
                    Expect::One => Some(1),
                    Expect::Two => Some(2),
                    _ => Option::None,
                };
                ensure(induced == from_table, || format!("{} b = {b}: induction gives {induced:?}", spec.name()))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

// criterion 8

fn schrodinger(ctx: &Ctx) -> Outcome {
    let mut admissible = Vec::new();
    for (m, signs) in corpus::hc_family() {
        for b in [-1, 0, 1] {
            let spec = HCSpec::new(m, signs.clone());
            let b = int(b);
            match schrodinger_model(&spec, &b) {
                Ok(model) => admissible.push(model),
                Err(ModelError::NotAdmissible(_)) => {
                    ensure(!matches!(svn_classify(&spec, &b).conclusion, SvnConclusion::UniqueUpToParityAndEquivalence { .. }), || {
                        format!("{} b = {b}: admissible case rejected", spec.name())
                    })?;
                }
                Err(e) => return Err(format!("{} b = {b}: {e}", spec.name())),
            }
        }
    }
    let results = sweep::map(&admissible, |model| {
        let rep = verify_model(model);
        (rep.passed(), rep.checks, rep.failures.first().map(|f| format!("{} b = {}: {} (residual {})", model.spec.name(), model.b, f.relation, f.residual)))
    });
    let mut checks = 0;
    for (ok, c, first) in results {
        ensure(ok, || first.unwrap_or_default())?;
        checks += c;
    }
    let with_odd: Vec<_> = admissible.iter().filter(|m| m.spec.n > 0).collect();
    let mut r = rng(ctx.seed.wrapping_add(8));
    let victim = with_odd[r.gen_range(0..with_odd.len())];
    let j = r.gen_range(0..victim.spec.n);
    let broken = verify_model(&victim.mis_scaled(j, &int(2)));
    ensure(!broken.passed(), || format!("{} b = {}: mis-scaling V{} went unnoticed", victim.spec.name(), victim.b, j + 1))?;
    Ok(format!(
        "{} admissible models, {checks} relations; mis-scaled V{} on {} caught ({} residuals)",
        admissible.len(),
        j + 1,
        victim.spec.name(),
        broken.failures.len()
    ))
}

// criterion 9

fn orbits(ctx: &Ctx) -> Outcome {
    let mut r = rng(ctx.seed.wrapping_add(9));
    let with_even: Vec<&(String, LieSuperalgebra)> = ctx.corpus.iter().filter(|(_, l)| l.dim_even() > 0).collect();
    let cmp = |name: &str, l: &LieSuperalgebra, a: &[Rational], b: &[Rational]| -> Result<OrbitComparison, String> {
        let c = orbit_equal(l, a, b).map_err(|e| format!("{name}: {e}"))?;
        ensure(c != OrbitComparison::Inconclusive, || format!("{name}: inconclusive at {} vs {}", fmt_f(a), fmt_f(b)))?;
        Ok(c)
    };
    for _ in 0..100 {
        let (name, l) = with_even[r.gen_range(0..with_even.len())];
        let f: Functional = (0..l.dim_even()).map(|_| small_rational(&mut r)).collect();
        let x = random_even(l, &mut r);
        let (s, t) = (small_rational(&mut r), small_rational(&mut r));
        let flow = |g: &[Rational], u: &Rational| coadjoint_flow(l, g, &x, u).map_err(|e| format!("{name}: {e}"));
        ensure(flow(&flow(&f, &s)?, &t)? == flow(&f, &(&s + &t))?, || format!("{name}: flows do not compose at {}", fmt_f(&f)))?;
    }
    for _ in 0..100 {
        let (name, l) = with_even[r.gen_range(0..with_even.len())];
        let f = functionals_in_n0_plus(l, 1, &mut r).remove(0);
        let x = random_even(l, &mut r);
        let g = coadjoint_flow(l, &f, &x, &small_rational(&mut r)).map_err(|e| format!("{name}: {e}"))?;
        let c = cmp(name, l, &f, &g)?;
        ensure(c == OrbitComparison::Equal, || format!("{name}: {} and its flow image {} compare as {c:?}", fmt_f(&f), fmt_f(&g)))?;
    }
    let mut centre_pairs = 0;
    for _ in 0..100 {
        let (name, l) = with_even[r.gen_range(0..with_even.len())];
        let even = l.even_subspace();
        let z = l.centralizer(&even).intersect(&even).basis().remove(0);
        let k = z.iter().position(|c| !c.is_zero()).expect("nonzero central vector");
        let f = functionals_in_n0_plus(l, 1, &mut r).remove(0);
        let mut g = f.clone();
        g[k] += Rational::one();
        let c = cmp(name, l, &f, &g)?;
        ensure(matches!(c, OrbitComparison::Distinct(_)), || format!("{name}: {} vs {} differ on the centre but compare as {c:?}", fmt_f(&f), fmt_f(&g)))?;
        centre_pairs += 1;
    }
    let mut kappa_pairs = 0;
    let mut random_pairs = 0;
    for ((name, l), fs) in ctx.corpus.iter().zip(&ctx.samples) {
        if l.dim_even() == 0 {
            continue;
        }
        let fs = &fs[..fs.len().min(12)];
        let ks: Vec<usize> = fs.iter().map(|f| kappa(l, f).map_err(|e| format!("{name}: {e}"))).collect::<Result<_, _>>()?;
        for a in 0..fs.len() {
            for b in a + 1..fs.len() {
                let c = cmp(name, l, &fs[a], &fs[b])?;
                random_pairs += 1;
                if ks[a] != ks[b] {
                    ensure(matches!(c, OrbitComparison::Distinct(_)), || format!("{name}: kappa differs but {c:?}"))?;
                    kappa_pairs += 1;
                }
            }
        }
    }
    ensure(kappa_pairs > 0, || "no sample pairs with differing kappa".into())?;
    Ok(format!("100 compositions, 100 Equal, {centre_pairs} centre-Distinct, {kappa_pairs} kappa-Distinct, {random_pairs} pairs without Inconclusive"))
}

// criterion 10

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_superorbit")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .expect("readable dir")
        .map(|e| {
            let p = e.expect("dir entry").path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).expect("readable file"))
        })
        .collect();
    files.sort();
    files
}

fn cli(ctx: &Ctx) -> Outcome {
    let seed = ctx.seed.to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["validate", "heisenberg"],
        vec!["reduce", "mixed_degenerate"],
        vec!["orbit", "heisenberg", "--lambda", "0:1,1:3,2:5"],
        vec!["orbit-equal", "heisenberg", "--lambda", "0:1,1:1", "--lambda", "0:1,2:7"],
        vec!["polarize", "filiform_odd", "--lambda", "2:1,3:1"],
        vec!["system", "hc_1_2_pp", "--lambda", "0:1", "--format", "document"],
        vec!["kappa", "hc_1_2_pp", "--lambda", "0:1"],
        vec!["clifford", "hc_0_3_ppp", "--lambda", "0:2", "--format", "document"],
        vec!["svn", "hc_1_2_pm", "--b", "-1"],
        vec!["induce", "hc_2_3_ppp", "--lambda", "0:1"],
        vec!["examples", "--check", "--samples", "3", "--seed", &seed],
    ];
    let mut outputs = Vec::new();
    for args in &runs {
        let first = run_cli(args);
        let second = run_cli(args);
        ensure(first.0 == 0, || format!("`superorbit {}` exited with {}", args.join(" "), first.0))?;
        ensure(first == second, || format!("`superorbit {}` is not reproducible", args.join(" ")))?;
        outputs.push(first.1);
    }

    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let doc_path = tmp.path().join("system.json");
    std::fs::write(&doc_path, &outputs[5]).map_err(|e| e.to_string())?;
    let (code, _) = run_cli(&["system", "--recheck", doc_path.to_str().unwrap()]);
    ensure(code == 0, || format!("system --recheck exited with {code}"))?;
    let doc: SystemDoc = serde_json::from_slice(&outputs[5]).map_err(|e| e.to_string())?;
    let (l, s) = doc.to_system().map_err(|e| e.to_string())?;
    let rep = verify_polarizing_system(&l, &s);
    ensure(rep.passed(), || rep.violations.join("; "))?;
    ensure(s == build_polarizing_system(&l, &s.lambda).map_err(|e| e.to_string())?, || "document differs from a fresh build".into())?;

    // a tampered document must be refused
    let mut tampered = doc.clone();
    tampered.mu = vec!["7".into()];
    let bad_path = tmp.path().join("tampered.json");
    std::fs::write(&bad_path, serde_json::to_vec(&tampered).unwrap()).map_err(|e| e.to_string())?;
    let (code, _) = run_cli(&["system", "--recheck", bad_path.to_str().unwrap()]);
    ensure(code == 3, || format!("tampered document gave exit {code}, expected 3"))?;

    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let (code, _) = run_cli(&["examples", "--write", dir.to_str().unwrap(), "--samples", "3", "--seed", &seed]);
        ensure(code == 0, || format!("examples --write exited with {code}"))?;
    }
    let (fa, fb) = (read_dir_sorted(&a), read_dir_sorted(&b));
    ensure(!fa.is_empty() && fa == fb, || "examples --write is not reproducible".into())?;

    let total = ctx.started.elapsed();
    within(total, 180)?;
    Ok(format!("{} commands rerun identically, {} example files, document rechecked; suite {:.1}s", runs.len(), fa.len(), total.as_secs_f64()))
}

fn parse_seed() -> u64 {
    let args: Vec<String> = std::env::args().collect();
    args.iter().position(|a| a == "--seed").and_then(|i| args.get(i + 1)).map(|s| s.parse().expect("--seed takes an integer")).unwrap_or(DEFAULT_SEED)
}

fn main() -> ExitCode {
    let started = Instant::now();
    let seed = parse_seed();
    let corpus = corpus::corpus();
    let samples = sweep::map(&corpus.iter().enumerate().collect::<Vec<_>>(), |&(i, (_, l))| {
        functionals_in_n0_plus(l, SAMPLES, &mut rng(seed.wrapping_add(1000 + i as u64)))
    });
    let ctx = Ctx { seed, corpus, samples, started };
    println!("acceptance suite, seed {seed}");

    let criteria: [Criterion; 10] = [
        ("algebra validation", validation),
        ("odd squares in the radical of B", odd_square_lemma),
        ("Vergne polarization", vergne),
        ("polarizing systems", systems),
        ("kappa invariance", kappa_invariance),
        ("Clifford modules", clifford),
        ("Stone-von Neumann table", svn),
        ("Schroedinger model", schrodinger),
        ("orbit machinery", orbits),
        ("CLI determinism and round trip", cli),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&ctx);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail} [{secs:.2}s]", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} [{secs:.2}s]", n + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
