use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use superorbit::cliffmod::{clifford_module, CliffordError};
use superorbit::coadjoint::{b_form, canonical_orbit_rep, omega_rank, orbit_equal, CoadjointError, OrbitComparison};
use superorbit::corpus;
use superorbit::document::{algebra_to_json, parse_algebra, parse_sparse, rationals_to_strings, AlgebraDoc, DocumentError, ModuleDoc, SystemDoc};
use superorbit::linalg::Matrix;
use superorbit::models::{induced_rep_data, svn_classify, HCSpec, ModelError};
use superorbit::polarize::{build_polarizing_system, vergne_polarization, verify_polarizing_system, PolarizeError};
use superorbit::reduction::{a_radical, kirillov_split, ReductionError, SplitOutcome};
use superorbit::sampling::{self, DEFAULT_SEED};
use superorbit::scalar::{fmt_rational, parse_rational, Rational};
use superorbit::subspace::Subspace;
use superorbit::superalg::{AlgebraError, LieSuperalgebra};
use superorbit::sweep;

#[derive(Parser)]
#[command(name = "superorbit", version, about = "Orbit-method computations for nilpotent Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Document,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms and report nilpotency and the centre.
    Validate { input: String },
    /// The degeneracy chain and the reduced quotient.
    Reduce { input: String },
    /// Splitting X, Y, Z, n' of a reduced algebra with one-dimensional centre.
    Split { input: String },
    /// Canonical representative of the coadjoint orbit of a functional.
    Orbit {
        input: String,
        #[arg(long)]
        lambda: String,
    },
    /// Decide whether two functionals lie on the same orbit.
    OrbitEqual {
        input: String,
        /// Given twice.
        #[arg(long, num_args = 1, required = true)]
        lambda: Vec<String>,
    },
    /// Vergne polarization through the odd square.
    Polarize {
        input: String,
        #[arg(long)]
        lambda: String,
    },
    /// Polarizing system, or re-verification of a system document.
    System {
        #[arg(required_unless_present = "recheck")]
        input: Option<String>,
        #[arg(long, required_unless_present = "recheck")]
        lambda: Option<String>,
        /// A document previously written by `system --format document`.
        #[arg(long, conflicts_with_all = ["input", "lambda"])]
        recheck: Option<PathBuf>,
    },
    /// The invariant dim of the Clifford quotient.
    Kappa {
        input: String,
        #[arg(long)]
        lambda: String,
    },
    /// Irreducible graded module of a Clifford-type algebra.
    Clifford {
        input: String,
        /// The functional on the even part.
        #[arg(long, alias = "mu")]
        lambda: String,
    },
    /// Stone-von Neumann decision for a Heisenberg-Clifford algebra.
    Svn {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Data from which the representation is induced.
    Induce {
        input: String,
        #[arg(long)]
        lambda: String,
    },
    /// List, write or self-check the built-in corpus.
    Examples {
        #[arg(long)]
        write: Option<PathBuf>,
        #[arg(long)]
        check: bool,
        /// Functionals per algebra for --check.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(m: impl Into<String>) -> Failure {
    Failure { code: 1, message: m.into() }
}

fn precondition(m: impl ToString) -> Failure {
    Failure { code: 2, message: m.to_string() }
}

fn verification(m: impl ToString) -> Failure {
    Failure { code: 3, message: m.to_string() }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Algebra(a) => a.into(),
            other => precondition(other),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::GradingViolation { .. } | AlgebraError::InconsistentAntisymmetry { .. } | AlgebraError::JacobiViolation { .. } => verification(e),
            _ => precondition(e),
        }
    }
}

impl From<CoadjointError> for Failure {
    fn from(e: CoadjointError) -> Self {
        precondition(e)
    }
}

impl From<PolarizeError> for Failure {
    fn from(e: PolarizeError) -> Self {
        match e {
            PolarizeError::VerificationFailed(_) => verification(e),
            PolarizeError::Algebra(a) => a.into(),
            _ => precondition(e),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::VerificationFailed(_) => verification(e),
            ReductionError::Algebra(a) => a.into(),
            ReductionError::PreconditionFailed(_) => precondition(e),
        }
    }
}

impl From<CliffordError> for Failure {
    fn from(e: CliffordError) -> Self {
        match e {
            CliffordError::VerificationFailed(_) => verification(e),
            _ => precondition(e),
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Polarize(p) => p.into(),
            ModelError::Clifford(c) => c.into(),
            _ => precondition(e),
        }
    }
}

fn load(input: &str) -> Result<LieSuperalgebra, Failure> {
    let path = Path::new(input);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {input}: {e}")))?;
        return Ok(parse_algebra(&text)?);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(input);
    corpus::by_name(stem).ok_or_else(|| usage(format!("no file or built-in example named {input:?}")))
}

fn functional(l: &LieSuperalgebra, s: &str) -> Result<Vec<Rational>, Failure> {
    parse_sparse(s, l.dim_even()).map_err(|e| usage(format!("bad functional {s:?}: {e}")))
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("[{}]", v.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))
}

fn fmt_matrix(m: &Matrix<Rational>, indent: &str) -> String {
    if m.rows() == 0 {
        return format!("{indent}(zero)");
    }
    m.to_rows().iter().map(|r| format!("{indent}{}", fmt_vec(r))).collect::<Vec<_>>().join("\n")
}

fn fmt_subspace(name: &str, s: &Subspace) -> String {
    format!("{name} (dim {}):\n{}", s.dim(), fmt_matrix(s.matrix(), "  "))
}

fn rows(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| rationals_to_strings(v)).collect()
}

/// Human text or a JSON document, never both.
enum Report {
    Text(String),
    Doc(Value),
}

fn emit<T: Serialize>(v: &T) -> Report {
    Report::Doc(serde_json::to_value(v).expect("report serializes"))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let doc = cli.format == Format::Document;
    match cli.command {
        Command::Validate { input } => {
            let l = load(&input)?;
            let class = l.nilpotency_class();
            let centre = l.center().dim();
            if doc {
                return Ok(Report::Doc(
                    json!({"valid": true, "dim_even": l.dim_even(), "dim_odd": l.dim_odd(), "nilpotency_class": class, "center_dim": centre}),
                ));
            }
            let nil = match class {
                Some(c) => format!("nilpotent, class {c}"),
                None => "not nilpotent".into(),
            };
            Ok(Report::Text(format!("valid; {nil}; center dim {centre}")))
        }
        Command::Reduce { input } => {
            let l = load(&input)?;
            let r = a_radical(&l);
            if doc {
                return Ok(Report::Doc(json!({
                    "chain": r.chain.iter().map(rows).collect::<Vec<_>>(),
                    "a_radical": rows(&r.a_radical),
                    "quotient": AlgebraDoc::from_algebra(&r.quotient),
                    "certified_complete": r.certified_complete,
                })));
            }
            let mut out = vec![format!("chain length {}", r.chain.len())];
            out.push(fmt_subspace("a", &r.a_radical));
            out.push(format!("quotient dims ({}|{})", r.quotient.dim_even(), r.quotient.dim_odd()));
            out.push(format!("certified: {}", r.certified_complete));
            Ok(Report::Text(out.join("\n")))
        }
        Command::Split { input } => {
            let l = load(&input)?;
            match kirillov_split(&l)? {
                SplitOutcome::Clifford(c) => {
                    if doc {
                        return Ok(Report::Doc(json!({"clifford": true, "gram": superorbit::document::matrix_to_strings(&c.gram)})));
                    }
                    Ok(Report::Text(format!("Clifford type; gram\n{}", fmt_matrix(&c.gram, "  "))))
                }
                SplitOutcome::Split(s) => {
                    if doc {
                        return Ok(Report::Doc(json!({
                            "x": rationals_to_strings(&s.x), "y": rationals_to_strings(&s.y), "z": rationals_to_strings(&s.z),
                            "w": s.w_basis.iter().map(|v| rationals_to_strings(v)).collect::<Vec<_>>(),
                            "n_prime": rows(&s.n_prime),
                        })));
                    }
                    Ok(Report::Text(format!(
                        "X = {}\nY = {}\nZ = {}\n{}",
                        l.describe(&s.x),
                        l.describe(&s.y),
                        l.describe(&s.z),
                        fmt_subspace("n'", &s.n_prime)
                    )))
                }
            }
        }
        Command::Orbit { input, lambda } => {
            let l = load(&input)?;
            let f = functional(&l, &lambda)?;
            let rep = canonical_orbit_rep(&l, &f)?;
            let dim = omega_rank(&l, &f);
            if doc {
                return Ok(Report::Doc(json!({"canonical": rationals_to_strings(&rep.canonical), "moves": rep.moves, "exact": rep.exact, "orbit_dim": dim})));
            }
            let moves: Vec<String> = rep.moves.iter().map(|m| format!("  flow along {} by {}", l.names()[m.direction], fmt_rational(&m.t))).collect();
            Ok(Report::Text(
                format!("orbit dim {dim}\ncanonical {}{}\n{}", fmt_vec(&rep.canonical), if rep.exact { "" } else { " (not certified)" }, moves.join("\n"))
                    .trim_end()
                    .to_string(),
            ))
        }
        Command::OrbitEqual { input, lambda } => {
            let l = load(&input)?;
            if lambda.len() != 2 {
                return Err(usage("orbit-equal takes --lambda exactly twice"));
            }
            let (a, b) = (functional(&l, &lambda[0])?, functional(&l, &lambda[1])?);
            let verdict = orbit_equal(&l, &a, &b)?;
            if doc {
                return Ok(emit(&verdict));
            }
            Ok(Report::Text(match verdict {
                OrbitComparison::Equal => "same orbit".into(),
                OrbitComparison::Distinct(why) => format!("distinct orbits: {why}"),
                OrbitComparison::Inconclusive => "inconclusive".into(),
            }))
        }
        Command::Polarize { input, lambda } => {
            let l = load(&input)?;
            let f = functional(&l, &lambda)?;
            let p = vergne_polarization(&l, &f)?;
            if doc {
                return Ok(Report::Doc(json!({
                    "m0": rows(&p.m0),
                    "flag_dims": p.flag.iter().map(Subspace::dim).collect::<Vec<_>>(),
                    "contains_odd_square": p.contains_odd_square,
                })));
            }
            Ok(Report::Text(format!(
                "{}\nflag dims {:?}\ncontains [n1,n1]: {}",
                fmt_subspace("m0", &p.m0),
                p.flag.iter().map(Subspace::dim).collect::<Vec<_>>(),
                p.contains_odd_square
            )))
        }
        Command::System { input, lambda, recheck } => {
            if let Some(path) = recheck {
                let text = fs::read_to_string(&path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                let sd: SystemDoc = serde_json::from_str(&text).map_err(|e| precondition(format!("malformed system document: {e}")))?;
                let (l, s) = sd.to_system()?;
                let rep = verify_polarizing_system(&l, &s);
                if !rep.passed() {
                    return Err(verification(rep.violations.join("\n")));
                }
                return Ok(if doc {
                    Report::Doc(json!({"checks": rep.checks, "violations": rep.violations}))
                } else {
                    Report::Text(format!("system verified; {} checks, 0 violations", rep.checks))
                });
            }
            let l = load(input.as_deref().unwrap_or_default())?;
            let f = functional(&l, lambda.as_deref().unwrap_or_default())?;
            let s = build_polarizing_system(&l, &f)?;
            if doc {
                return Ok(emit(&SystemDoc::new(&l, &s)));
            }
            let c = &s.clifford;
            Ok(Report::Text(
                [
                    fmt_subspace("m0", &s.m0),
                    fmt_subspace("k_lambda", &s.k_lambda),
                    fmt_subspace("r_lambda", &s.r_lambda),
                    fmt_subspace("j", &s.j),
                    format!("c dims ({}|{})", c.dim_even(), c.dim_odd()),
                    format!("phi:\n{}", fmt_matrix(&s.phi, "  ")),
                    format!("mu {}", fmt_vec(&s.mu)),
                    format!("kappa = {}", s.kappa()),
                ]
                .join("\n"),
            ))
        }
        Command::Kappa { input, lambda } => {
            let l = load(&input)?;
            let f = functional(&l, &lambda)?;
            let k = build_polarizing_system(&l, &f)?.kappa();
            Ok(if doc { Report::Doc(json!({ "kappa": k })) } else { Report::Text(format!("kappa = {k}")) })
        }
        Command::Clifford { input, lambda } => {
            let l = load(&input)?;
            let f = functional(&l, &lambda)?;
            let m = clifford_module(&l, &f)?;
            if doc {
                return Ok(emit(&ModuleDoc::new(&m)));
            }
            let d = ModuleDoc::new(&m);
            let mut out = vec![format!("module dim {} over {}", d.dim, d.field), format!("grading {:?}", d.grading)];
            for (i, r) in d.rho.iter().enumerate() {
                out.push(format!("rho({}):", l.names()[l.dim_even() + i]));
                out.extend(r.iter().map(|row| format!("  [{}]", row.join(", "))));
            }
            out.push(format!("relations: {} violations", m.relation_violations().len()));
            Ok(Report::Text(out.join("\n")))
        }
        Command::Svn { input, b } => {
            let l = load(&input)?;
            let b = parse_rational(&b).map_err(|e| usage(format!("bad --b: {e}")))?;
            let spec = HCSpec::recognize(&l).ok_or_else(|| precondition(ModelError::NotHeisenbergClifford))?;
            let r = svn_classify(&spec, &b);
            Ok(if doc { emit(&r) } else { Report::Text(r.to_string()) })
        }
        Command::Induce { input, lambda } => {
            let l = load(&input)?;
            let f = functional(&l, &lambda)?;
            let d = induced_rep_data(&l, &f)?;
            if doc {
                return Ok(Report::Doc(json!({
                    "system": SystemDoc::new(&l, &d.system),
                    "module": ModuleDoc::new(&d.module),
                    "fiber_dim": d.fiber_dim,
                    "transverse_dim": d.transverse_dim,
                    "kappa": d.kappa,
                })));
            }
            Ok(Report::Text(format!("fiber dim {}\ntransverse dim {}\nkappa = {}", d.fiber_dim, d.transverse_dim, d.kappa)))
        }
        Command::Examples { write, check, samples } => examples(write, check, samples, cli.seed, doc),
    }
}

fn examples(write: Option<PathBuf>, check: bool, samples: usize, seed: u64, doc: bool) -> Result<Report, Failure> {
    let all = corpus::corpus();
    if let Some(dir) = &write {
        fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
        for (name, l) in &all {
            let p = dir.join(format!("{name}.json"));
            fs::write(&p, algebra_to_json(l) + "\n").map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
        }
    }
    let mut failures = Vec::new();
    if check {
        let results = sweep::map(&all, |(name, l)| {
            let mut r = sampling::rng(seed);
            let mut bad = Vec::new();
            for f in sampling::functionals_in_n0_plus(l, samples, &mut r) {
                match build_polarizing_system(l, &f) {
                    Ok(s) if verify_polarizing_system(l, &s).passed() => {}
                    Ok(_) => bad.push(format!("{name} at {}: system fails verification", fmt_vec(&f))),
                    Err(e) => bad.push(format!("{name} at {}: {e}", fmt_vec(&f))),
                }
                if !b_form(l, &f).verdict.is_nonnegative() {
                    bad.push(format!("{name}: sampled functional outside n0+"));
                }
            }
            bad
        });
        failures = results.into_iter().flatten().collect();
    }
    let report = if doc {
        Report::Doc(json!({
            "examples": all.iter().map(|(n, l)| json!({"name": n, "dim_even": l.dim_even(), "dim_odd": l.dim_odd()})).collect::<Vec<_>>(),
            "check_failures": failures,
        }))
    } else {
        let mut lines: Vec<String> = all.iter().map(|(n, l)| format!("{n} ({}|{})", l.dim_even(), l.dim_odd())).collect();
        if check {
            lines.push(format!("checked {} algebras, {} failures", all.len(), failures.len()));
            lines.extend(failures.iter().cloned());
        }
        Report::Text(lines.join("\n"))
    };
    if !failures.is_empty() {
        let text = match report {
            Report::Text(t) => t,
            Report::Doc(v) => serde_json::to_string_pretty(&v).unwrap_or_default(),
        };
        return Err(verification(text));
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let text = match run(cli) {
        Ok(Report::Text(t)) => t,
        Ok(Report::Doc(v)) => serde_json::to_string_pretty(&v).expect("value serializes"),
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    // a closed pipe (`| head`) is not an error
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        _ => ExitCode::SUCCESS,
    }
}
