//! Batch command-line surface over the exact q-Key / Hall-Littlewood
//! library.
//!
//! Subcommands: `compute` (family polynomials), `hl` (symmetric
//! Hall-Littlewood polynomials), `straighten` (integer-indexed Q rewriting),
//! `scalar` (the q-deformed constant-term product), `matrix` (family
//! transition matrices), and `verify` (batch property suites).
//!
//! Exit codes: 0 on success (and when every verify check passes), 1 when a
//! verify check fails, 2 on usage or input errors with a diagnostic on
//! stderr.  The optional `QKEY_FUEL` environment variable overrides the
//! straightening rewrite budget.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qkey_core::hall::{hl_p, hl_q, p_of, straighten_q_with_fuel, HLExpansion, Partition};
use qkey_core::poly::{n_stat, Exponent, LaurentPoly};
use qkey_core::qkey::{family_poly, specialize_q, transition_matrix, weights_of_degree, FamilyId};
use qkey_core::qrat::QRat;
use qkey_core::scalar::{
    scalar_q, verify_adjoint_ops, verify_cauchy, verify_duality, verify_monomial_duality,
};

#[derive(Parser)]
#[command(
    name = "qkey",
    version,
    about = "Exact q-Key / Hall-Littlewood calculator with verification suites"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a family polynomial at an index weight.
    Compute(ComputeArgs),
    /// Print a symmetric Hall-Littlewood polynomial.
    Hl(HlArgs),
    /// Rewrite an integer-indexed Q into the partition basis.
    Straighten(StraightenArgs),
    /// Pair two polynomials under the q-deformed scalar product.
    Scalar(ScalarArgs),
    /// Print the transition matrix between two families in one degree.
    Matrix(MatrixArgs),
    /// Run a verification suite; exit 0 when it passes, 1 when it fails.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ComputeArgs {
    /// Family name: U, Uhat, K, or Khat.
    #[arg(long)]
    family: String,
    /// Comma-separated nonnegative index weight, e.g. 1,0,2.
    #[arg(long)]
    index: String,
    /// Specialize the result at q = 0.
    #[arg(long)]
    q0: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct HlArgs {
    /// Family name: P or Q.
    #[arg(long)]
    family: String,
    /// Comma-separated partition, e.g. 2,1.
    #[arg(long)]
    lambda: String,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct StraightenArgs {
    /// Comma-separated integer index, e.g. -2,3,2.
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ScalarArgs {
    /// Left operand as FAMILY:INDEX, e.g. U:2,1,0 or M:1,0,3.
    #[arg(long)]
    left: String,
    /// Right operand as FAMILY:INDEX.
    #[arg(long)]
    right: String,
    /// Evaluate the pairing at q = 0 instead of generic q.
    #[arg(long)]
    q0: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct MatrixArgs {
    /// Source family: U, Uhat, K, Khat, M, or P.
    #[arg(long)]
    from: String,
    /// Target family.
    #[arg(long)]
    to: String,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Homogeneous degree of the weights indexing rows and columns.
    #[arg(long)]
    degree: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, ValueEnum)]
enum Check {
    /// Gram matrix of the two q-Key families is the identity.
    Duality,
    /// The q = 0 specializations of U and Û are the key polynomials.
    Flag,
    /// Mirrored divided-difference operators are adjoint.
    Operators,
    /// Cauchy-kernel expansion over the key bases.
    Cauchy,
    /// Leading term of a straightened Q matches the predicted partition.
    LemmaTopterm,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    check: Check,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Partition for the duality checks, e.g. 2,1,0.
    #[arg(long)]
    lambda: Option<String>,
    /// Degree bound: exponent range for operators/lemma-topterm, weight
    /// bound for flag, truncation cap for cauchy.
    #[arg(long, default_value_t = 3)]
    degree: i64,
    /// Number of random trials for the randomized checks.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// RNG seed for the randomized checks.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    match run(&Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    match &cli.cmd {
        Cmd::Compute(a) => run_compute(a),
        Cmd::Hl(a) => run_hl(a),
        Cmd::Straighten(a) => run_straighten(a),
        Cmd::Scalar(a) => run_scalar(a),
        Cmd::Matrix(a) => run_matrix(a),
        Cmd::Verify(a) => run_verify(a),
    }
}

fn parse_ivec(s: &str) -> Result<Vec<i64>, String> {
    if s.trim().is_empty() {
        return Err("empty index vector".to_string());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| format!("invalid integer {:?} in {s:?}", p.trim()))
        })
        .collect()
}

fn fmt_exp(e: &[i64]) -> String {
    let inner: Vec<String> = e.iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(","))
}

fn fuel_from_env() -> Result<u64, String> {
    match std::env::var("QKEY_FUEL") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("QKEY_FUEL must be a nonnegative integer, got {s:?}")),
        Err(std::env::VarError::NotPresent) => Ok(qkey_core::hall::DEFAULT_FUEL),
        Err(e) => Err(format!("QKEY_FUEL: {e}")),
    }
}

fn run_compute(a: &ComputeArgs) -> Result<u8, String> {
    let family = FamilyId::from_name(&a.family).map_err(|e| e.to_string())?;
    if !matches!(
        family,
        FamilyId::U | FamilyId::Uhat | FamilyId::K | FamilyId::Khat
    ) {
        return Err(
            "compute supports the families U, Uhat, K, Khat; use `hl` for P/Q".to_string(),
        );
    }
    let v = parse_ivec(&a.index)?;
    if v.iter().any(|&x| x < 0) {
        return Err(format!(
            "family {family} is indexed by nonnegative weights, got {}",
            fmt_exp(&v)
        ));
    }
    let mut p = family_poly(family, &v).map_err(|e| e.to_string())?;
    if a.q0 {
        p = specialize_q(&p, &BigRational::zero()).map_err(|e| e.to_string())?;
    }
    match a.format {
        Format::Text => println!("{p}"),
        Format::Json => println!("{}", p.to_json()),
    }
    Ok(0)
}

fn run_hl(a: &HlArgs) -> Result<u8, String> {
    let lam = Partition::new(&parse_ivec(&a.lambda)?).map_err(|e| e.to_string())?;
    let p = match a.family.as_str() {
        "P" => hl_p(&lam, a.n),
        "Q" => hl_q(&lam, a.n),
        other => return Err(format!("unknown Hall-Littlewood family {other:?}; use P or Q")),
    }
    .map_err(|e| e.to_string())?;
    match a.format {
        Format::Text => println!("{p}"),
        Format::Json => println!("{}", p.to_json()),
    }
    Ok(0)
}

fn straighten_with_env_fuel(u: &[i64]) -> Result<HLExpansion, String> {
    let fuel = fuel_from_env()?;
    straighten_q_with_fuel(u, fuel).map_err(|e| e.to_string())
}

fn run_straighten(a: &StraightenArgs) -> Result<u8, String> {
    let u = parse_ivec(&a.u)?;
    let e = straighten_with_env_fuel(&u)?;
    let top = e.top_term().ok();
    match a.format {
        Format::Text => {
            println!("{e}");
            if let Some((p, c)) = &top {
                if c.is_one() {
                    println!("top term: Q{p}");
                } else {
                    println!("top term: {c}·Q{p}");
                }
            }
        }
        Format::Json => {
            let top_json = top.map(|(p, c)| {
                serde_json::json!({ "partition": p.parts(), "coeff": c.to_json() })
            });
            println!(
                "{}",
                serde_json::json!({ "expansion": e.to_json(), "top_term": top_json })
            );
        }
    }
    Ok(0)
}

/// Parses one side of a scalar product, `FAMILY:INDEX`.  Monomials (family
/// M) accept arbitrary integer exponents; every other family requires a
/// nonnegative weight.
fn parse_side(s: &str) -> Result<LaurentPoly, String> {
    let (fam, idx) = s
        .split_once(':')
        .ok_or_else(|| format!("expected FAMILY:INDEX, got {s:?}"))?;
    let family = FamilyId::from_name(fam.trim()).map_err(|e| e.to_string())?;
    let v = parse_ivec(idx)?;
    if family == FamilyId::Monomial {
        return Ok(LaurentPoly::monomial(v.len(), &v, QRat::one()));
    }
    family_poly(family, &v).map_err(|e| e.to_string())
}

fn run_scalar(a: &ScalarArgs) -> Result<u8, String> {
    let f = parse_side(&a.left)?;
    let g = parse_side(&a.right)?;
    if f.nvars() != g.nvars() {
        return Err(format!(
            "left has {} variables but right has {}",
            f.nvars(),
            g.nvars()
        ));
    }
    let s = if a.q0 {
        qkey_core::scalar::scalar_0(&f, &g)
    } else {
        scalar_q(&f, &g)
    };
    match a.format {
        Format::Text => println!("{s}"),
        Format::Json => println!("{}", s.to_json()),
    }
    Ok(0)
}

fn run_matrix(a: &MatrixArgs) -> Result<u8, String> {
    let from = FamilyId::from_name(&a.from).map_err(|e| e.to_string())?;
    let to = FamilyId::from_name(&a.to).map_err(|e| e.to_string())?;
    if a.degree < 0 {
        return Err(format!("--degree must be nonnegative, got {}", a.degree));
    }
    let m = transition_matrix(from, to, a.n, a.degree).map_err(|e| e.to_string())?;
    let weights = weights_of_degree(a.n, a.degree);
    match a.format {
        Format::Text => {
            let labels: Vec<String> = weights.iter().map(|w| fmt_exp(w)).collect();
            println!("columns: {}", labels.join(" "));
            for (w, row) in weights.iter().zip(&m) {
                let entries: Vec<String> = row.iter().map(ToString::to_string).collect();
                println!("{}: {}", fmt_exp(w), entries.join(", "));
            }
        }
        Format::Json => {
            let matrix: Vec<Vec<serde_json::Value>> = m
                .iter()
                .map(|row| row.iter().map(QRat::to_json).collect())
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "from": from.name(),
                    "to": to.name(),
                    "n": a.n,
                    "degree": a.degree,
                    "weights": weights,
                    "matrix": matrix,
                })
            );
        }
    }
    Ok(0)
}

/// Prints one verification line (or one JSON object) and returns the pass
/// flag unchanged.
fn emit_check(
    format: Format,
    check: &str,
    detail: &str,
    pass: bool,
    extra: serde_json::Value,
) -> bool {
    match format {
        Format::Text => {
            let verdict = if pass { "PASS" } else { "FAIL" };
            println!("{check} {detail}: {verdict}");
        }
        Format::Json => {
            let mut obj = serde_json::json!({ "check": check, "pass": pass });
            if let (Some(dst), Some(src)) = (obj.as_object_mut(), extra.as_object()) {
                for (k, v) in src {
                    dst.insert(k.clone(), v.clone());
                }
            }
            println!("{obj}");
        }
    }
    pass
}

/// All integer vectors of length n with entries in [lo, hi].
fn integer_box(lo: i64, hi: i64, n: usize) -> Vec<Exponent> {
    let mut out: Vec<Exponent> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Checks that a straightened expansion is zero exactly when no partition
/// sits below the index, and otherwise has the predicted top term.
fn top_term_matches(u: &[i64], n: usize) -> Result<bool, String> {
    let e = straighten_with_env_fuel(u)?;
    match p_of(u) {
        None => Ok(e.is_zero()),
        Some(p) => {
            if e.is_zero() {
                return Ok(false);
            }
            let Ok((top, coeff)) = e.top_term() else {
                return Ok(false);
            };
            let delta = n_stat(u) - n_stat(&p.padded(n).map_err(|err| err.to_string())?);
            Ok(top == p && delta >= 0 && coeff == QRat::q_pow(delta as usize))
        }
    }
}

fn run_verify(a: &VerifyArgs) -> Result<u8, String> {
    if a.degree < 0 {
        return Err(format!("--degree must be nonnegative, got {}", a.degree));
    }
    let ok = match a.check {
        Check::Duality => {
            let lam_str = a
                .lambda
                .as_ref()
                .ok_or("--check duality requires --lambda")?;
            let lam = Partition::new(&parse_ivec(lam_str)?).map_err(|e| e.to_string())?;
            if lam.len() > a.n {
                return Err(format!(
                    "lambda has {} parts but n = {}",
                    lam.len(),
                    a.n
                ));
            }
            let r = verify_duality(&lam, a.n);
            let size = r.left.len();
            let p1 = emit_check(
                a.format,
                "duality",
                &format!("lambda={} n={} ({size}x{size} Gram vs identity)", fmt_exp(&r.lambda), a.n),
                r.pass,
                r.to_json(),
            );
            let r2 = verify_monomial_duality(&lam, a.n);
            let p2 = emit_check(
                a.format,
                "monomial-duality",
                &format!(
                    "lambda={} n={} (indicator of the reversed weight)",
                    fmt_exp(&r2.lambda),
                    a.n
                ),
                r2.pass,
                r2.to_json(),
            );
            p1 && p2
        }
        Check::Flag => {
            let mut pass = true;
            let mut count = 0usize;
            let zero = BigRational::zero();
            for d in 0..=a.degree {
                for v in weights_of_degree(a.n, d) {
                    let u0 = specialize_q(&family_poly(FamilyId::U, &v).map_err(|e| e.to_string())?, &zero)
                        .map_err(|e| e.to_string())?;
                    let uhat0 =
                        specialize_q(&family_poly(FamilyId::Uhat, &v).map_err(|e| e.to_string())?, &zero)
                            .map_err(|e| e.to_string())?;
                    let k = family_poly(FamilyId::K, &v).map_err(|e| e.to_string())?;
                    let khat = family_poly(FamilyId::Khat, &v).map_err(|e| e.to_string())?;
                    if u0 != k || uhat0 != khat {
                        pass = false;
                    }
                    count += 2;
                }
            }
            emit_check(
                a.format,
                "flag",
                &format!("n={} degree<={} ({count} specializations at q=0)", a.n, a.degree),
                pass,
                serde_json::json!({ "n": a.n, "degree": a.degree, "specializations": count }),
            )
        }
        Check::Operators => {
            if a.n < 2 {
                return Err("--check operators requires n >= 2".to_string());
            }
            let pass = verify_adjoint_ops(a.n, a.trials, a.degree, a.seed);
            emit_check(
                a.format,
                "operators",
                &format!(
                    "n={} trials={} degree={} seed={}",
                    a.n, a.trials, a.degree, a.seed
                ),
                pass,
                serde_json::json!({
                    "n": a.n, "trials": a.trials, "degree": a.degree, "seed": a.seed,
                }),
            )
        }
        Check::Cauchy => {
            let pass = verify_cauchy(a.n, a.degree as usize);
            emit_check(
                a.format,
                "cauchy",
                &format!("n={} degree<={}", a.n, a.degree),
                pass,
                serde_json::json!({ "n": a.n, "degree": a.degree }),
            )
        }
        Check::LemmaTopterm => {
            let mut pass = true;
            let mut count = 0usize;
            if a.n <= 3 {
                for u in integer_box(-2, 2, a.n) {
                    pass &= top_term_matches(&u, a.n)?;
                    count += 1;
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            for _ in 0..a.trials {
                let u: Exponent = (0..a.n)
                    .map(|_| rng.gen_range(-a.degree..=a.degree))
                    .collect();
                pass &= top_term_matches(&u, a.n)?;
                count += 1;
            }
            emit_check(
                a.format,
                "lemma-topterm",
                &format!(
                    "n={} degree={} trials={} seed={} ({count} indices)",
                    a.n, a.degree, a.trials, a.seed
                ),
                pass,
                serde_json::json!({
                    "n": a.n, "degree": a.degree, "trials": a.trials,
                    "seed": a.seed, "indices": count,
                }),
            )
        }
    };
    Ok(if ok { 0 } else { 1 })
}
