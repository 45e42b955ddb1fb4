//! Command-line front end: exact Laurent polynomials, decomposition
//! coefficients, the conjecture sweep, and the numeric verification
//! commands.
//!
//! Exit codes: 0 success, 2 usage error, 3 symbolic-guard failure,
//! 4 unconverged numerics / failed numeric agreement, 5 conjecture
//! violation.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use mgf_core::num::{
    constant_mode_num, eisenstein_num, eval_symbolic, exp_part_c211, phi_sm, verify_identity,
    IdentityCheck, ModulusPoint, PrecisionReal,
};
use mgf_core::{decomp, exact, laurent::RenderFormat, laurent::Variable, theorem1};
use mgf_core::{Error, GraphIndex};

#[derive(Parser)]
#[command(name = "mgf", version, about = "Two-loop modular graph function toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct NumericOpts {
    /// Working precision in bits
    #[arg(long, default_value_t = 256)]
    prec: usize,
    /// Lattice box cutoff N
    #[arg(long, default_value_t = 150)]
    cutoff: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact Laurent polynomial of the constant mode of C_{a1,a2,a3}
    Laurent {
        a1: u32,
        a2: u32,
        a3: u32,
        /// Output variable: u (= 4y), y (= pi tau2), or tau2
        #[arg(long, default_value = "y")]
        var: String,
        /// Output format: text, latex, or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print the odd-pair decomposition coefficients gamma_k of c_{2-w}
    Gamma {
        a1: u32,
        a2: u32,
        a3: u32,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Sweep the vanishing sums X_n over an exponent grid (JSON lines)
    CheckXn {
        /// Largest first exponent (sweep runs 2..=max-a1)
        #[arg(long = "max-a1", default_value_t = 12)]
        max_a1: u32,
        /// Largest second/third exponent (1..=max-a23)
        #[arg(long = "max-a23", default_value_t = 12)]
        max_a23: u32,
        /// Worker threads (default: hardware parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        /// Flip one coefficient to exercise the violation path
        #[arg(long = "self-test-fault", default_value_t = false)]
        self_test_fault: bool,
        /// Resume from the checkpoint file if present
        #[arg(long, default_value_t = false)]
        resume: bool,
    },
    /// Compare the numeric constant mode against the symbolic split
    Eval {
        a1: u32,
        a2: u32,
        a3: u32,
        /// Imaginary part tau2 of the evaluation point
        #[arg(long)]
        tau2: String,
        /// Comparison route: "laurent" or "laurent+exp" (exp only for 2,1,1)
        #[arg(long, default_value = "laurent")]
        compare: String,
        /// Agreement tolerance for the comparison
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        num: NumericOpts,
    },
    /// Verify one of the known identities numerically (id1, id2a, id2b, id2c, id3)
    Verify {
        id: String,
        /// Evaluation point as "tau1,tau2"
        #[arg(long, default_value = "0.0,1.0")]
        tau: String,
        /// Pass/fail tolerance on |LHS - RHS|
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[command(flatten)]
        num: NumericOpts,
    },
    /// Evaluate the Eisenstein series E_w by its Fourier expansion
    Eisenstein {
        w: u32,
        /// Evaluation point as "tau1,tau2"
        #[arg(long, default_value = "0.0,1.0")]
        tau: String,
        /// Number of exponential modes
        #[arg(long, default_value_t = 20)]
        terms: u64,
        #[arg(long, default_value_t = 256)]
        prec: usize,
    },
    /// Evaluate the decaying particular solution phi_{s,m}(y)
    Phi {
        s: i64,
        m: i64,
        /// Argument y > 0 (decimal)
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 256)]
        prec: usize,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Domain(_) => 2,
        Error::ZetaOneGuard(_) => 3,
        Error::Unconverged(_) => 4,
        Error::ConjectureViolation(_) => 5,
    }
}

fn parse_tau(s: &str, prec: usize) -> mgf_core::Result<ModulusPoint> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Domain(format!("tau must be \"tau1,tau2\", got {s:?}")))?;
    ModulusPoint::new(
        PrecisionReal::from_decimal_str(a.trim(), prec)?,
        PrecisionReal::from_decimal_str(b.trim(), prec)?,
    )
}

fn cmd_laurent(a1: u32, a2: u32, a3: u32, var: &str, format: &str) -> mgf_core::Result<()> {
    let index = GraphIndex::triple(a1, a2, a3)?;
    let poly = theorem1::laurent(&index)?.convert_variable(Variable::parse(var)?);
    println!("{}", poly.render(RenderFormat::parse(format)?));
    Ok(())
}

#[derive(Serialize)]
struct GammaJson {
    a: [u32; 3],
    w: u32,
    /// gamma_k for k = 1..=w-2
    raw: Vec<String>,
    folded: Vec<FoldedPairJson>,
    integral: bool,
}

#[derive(Serialize)]
struct FoldedPairJson {
    pair: [u32; 2],
    coeff: String,
}

fn cmd_gamma(a1: u32, a2: u32, a3: u32, format: &str) -> mgf_core::Result<()> {
    let index = GraphIndex::triple(a1, a2, a3)?;
    let g = decomp::gamma_coeffs(&index)?;
    let reduced = decomp::c_bottom_reduced(&index)?;
    if g.folded() != reduced.folded() {
        return Err(Error::ConjectureViolation(format!(
            "decomposition routes disagree for ({a1},{a2},{a3})"
        )));
    }
    match RenderFormat::parse(format)? {
        RenderFormat::Json => {
            let payload = GammaJson {
                a: [a1, a2, a3],
                w: index.weight(),
                raw: g.raw().iter().map(exact::rat_string).collect(),
                folded: g
                    .folded()
                    .iter()
                    .map(|(&(p, q), c)| FoldedPairJson {
                        pair: [p, q],
                        coeff: exact::rat_string(c),
                    })
                    .collect(),
                integral: g.all_integral(),
            };
            println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
        }
        _ => {
            let w = index.weight();
            println!("gamma coefficients for C_{{{a1},{a2},{a3}}} (weight {w}):");
            println!("  convention: c_{{2-w}} = sum_k (1/2) gamma_k zeta(2k+1) zeta(2w-2k-3)");
            for (i, v) in g.raw().iter().enumerate() {
                let k = i + 1;
                let pair = (2 * k + 1, 2 * (w as usize) - 2 * k - 3);
                println!(
                    "  gamma_{k} = {:>8}   [pairs zeta({}) zeta({}); integer: {}]",
                    exact::rat_string(v),
                    pair.0,
                    pair.1,
                    v.denom() == &num_bigint::BigInt::from(1)
                );
            }
            if g.folded().is_empty() {
                println!("  folded: 0");
            } else {
                for (&(p, q), c) in g.folded() {
                    println!("  folded: zeta({p}) zeta({q}) coefficient {}", exact::rat_string(c));
                }
            }
            println!("  all integral: {}", g.all_integral());
            println!("  cross-checked against the depth-two reduction route: ok");
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize, PartialEq, Clone)]
struct SweepParams {
    max_a1: u32,
    max_a23: u32,
    fault: bool,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    params: SweepParams,
    completed_triples: usize,
    cells_done: u64,
    violations: u64,
}

#[derive(Serialize)]
struct SweepRecord {
    a: [u32; 3],
    n: i64,
    x: String,
}

fn checkpoint_path() -> PathBuf {
    let dir = std::env::var_os("MGF_CHECKPOINT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."));
    dir.join("mgf-check-xn.checkpoint.json")
}

fn cmd_check_xn(
    max_a1: u32,
    max_a23: u32,
    jobs: Option<usize>,
    fault: bool,
    resume: bool,
) -> mgf_core::Result<u64> {
    use rayon::prelude::*;
    if let Some(j) = jobs {
        // best effort; the pool may already exist
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    if max_a1 < 2 || max_a23 < 1 {
        return Err(Error::Domain("sweep bounds must cover at least a1=2, a23=1".into()));
    }
    let params = SweepParams { max_a1, max_a23, fault };
    let mut triples: Vec<(u32, u32, u32)> = Vec::new();
    for a1 in 2..=max_a1 {
        for a2 in 1..=max_a23 {
            for a3 in 1..=max_a23 {
                triples.push((a1, a2, a3));
            }
        }
    }
    let mut start = 0usize;
    let mut cells_done = 0u64;
    let mut violations = 0u64;
    let ckpt_path = checkpoint_path();
    if resume {
        if let Ok(bytes) = std::fs::read(&ckpt_path) {
            if let Ok(ck) = serde_json::from_slice::<Checkpoint>(&bytes) {
                if ck.params == params {
                    start = ck.completed_triples;
                    cells_done = ck.cells_done;
                    violations = ck.violations;
                    eprintln!("resuming after {start} triples ({cells_done} cells)");
                }
            }
        }
    }
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut since_checkpoint = 0u64;
    const BLOCK: usize = 64;
    const CHECKPOINT_EVERY: u64 = 10_000;
    let mut idx = start;
    while idx < triples.len() {
        let block = &triples[idx..(idx + BLOCK).min(triples.len())];
        let results: Vec<Vec<SweepRecord>> = block
            .par_iter()
            .map(|&(a1, a2, a3)| {
                let mut records = Vec::with_capacity((a1 - 1) as usize);
                for n in 1..=(a1 as i64 - 1) {
                    let v1 = decomp::x_value(n, a1 as i64, a2 as i64, a3 as i64)
                        .expect("in-range X_n");
                    let v2 = decomp::x_value_alt(n, a1 as i64, a2 as i64, a3 as i64)
                        .expect("in-range X_n");
                    let mut v = if v1 != v2 {
                        // form disagreement is reported as a violation
                        &v1 - &v2
                    } else {
                        v1
                    };
                    if fault && (a1, a2, a3, n) == (2, 1, 1, 1) {
                        v += exact::rat_i64(1);
                    }
                    records.push(SweepRecord {
                        a: [a1, a2, a3],
                        n,
                        x: exact::rat_string(&v),
                    });
                }
                records
            })
            .collect();
        for recs in results {
            for r in recs {
                if r.x != "0" {
                    violations += 1;
                }
                serde_json::to_writer(&mut out, &r).expect("jsonl");
                out.write_all(b"\n").expect("stdout");
                cells_done += 1;
                since_checkpoint += 1;
            }
        }
        idx += block.len();
        if since_checkpoint >= CHECKPOINT_EVERY {
            since_checkpoint = 0;
            out.flush().ok();
            let ck = Checkpoint {
                params: params.clone(),
                completed_triples: idx,
                cells_done,
                violations,
            };
            if let Ok(bytes) = serde_json::to_vec(&ck) {
                let _ = std::fs::write(&ckpt_path, bytes);
            }
        }
    }
    out.flush().ok();
    let _ = std::fs::remove_file(&ckpt_path);
    eprintln!(
        "checked {} triples, {} cells, violations: {}",
        triples.len(),
        cells_done,
        violations
    );
    Ok(violations)
}

fn cmd_eval(
    a1: u32,
    a2: u32,
    a3: u32,
    tau2: &str,
    compare: &str,
    tol: f64,
    num: &NumericOpts,
) -> mgf_core::Result<()> {
    let prec = num.prec;
    let index = GraphIndex::triple(a1, a2, a3)?;
    let tau2 = PrecisionReal::from_decimal_str(tau2, prec)?;
    let numeric = constant_mode_num(&index, &tau2, num.cutoff, prec)?;
    println!(
        "constant mode C_{{{a1},{a2},{a3}}}^(0)(tau2)   = {:.20e}  [lattice box N={}, prec {} bits, err <= {:.3e}]",
        numeric.value.to_f64(),
        num.cutoff,
        prec,
        numeric.error.to_f64()
    );
    let poly = theorem1::laurent(&index)?;
    let y = PrecisionReal::pi(prec).mul(&tau2);
    let u = y.mul(&PrecisionReal::from_u64(4, prec));
    let mut symbolic = mgf_core::num::Certified::exact(PrecisionReal::zero(prec));
    for (p, c) in poly.terms() {
        symbolic = symbolic.add(&eval_symbolic(c, prec)?.scale(&u.powi(p)));
    }
    println!(
        "Laurent polynomial value          = {:.20e}  [exact coefficients, numeric zetas]",
        symbolic.value.to_f64()
    );
    let mut modeled = symbolic.clone();
    match compare {
        "laurent" => {}
        "laurent+exp" => {
            if (a1, a2, a3) != (2, 1, 1) {
                return Err(Error::Domain(
                    "the exponential part is implemented for (2,1,1) only".into(),
                ));
            }
            let exp_part = exp_part_c211(&tau2, 10, prec)?;
            println!(
                "exponential part (10 modes)       = {:.20e}  [err <= {:.3e}]",
                exp_part.value.to_f64(),
                exp_part.error.to_f64()
            );
            modeled = modeled.add(&exp_part);
        }
        other => {
            return Err(Error::Domain(format!(
                "unknown comparison {other:?} (use laurent or laurent+exp)"
            )))
        }
    }
    let diff = numeric.value.sub(&modeled.value).abs().to_f64();
    let budget = numeric.error.add(&modeled.error).to_f64();
    println!("difference numeric - model        = {diff:.3e}  (error budget {budget:.3e}, tolerance {tol:.1e})");
    if diff > tol {
        return Err(Error::Unconverged(format!(
            "constant-mode split disagreement {diff:.3e} exceeds {tol:.1e}"
        )));
    }
    println!("PASS");
    Ok(())
}

fn cmd_verify(id: &str, tau: &str, tol: f64, num: &NumericOpts) -> mgf_core::Result<()> {
    let check = IdentityCheck::parse(id)?;
    let tau = parse_tau(tau, num.prec)?;
    let report = verify_identity(check, &tau, num.cutoff, num.prec)?;
    println!(
        "{}: |LHS - RHS| = {:.3e}  [budget {:.3e}, box N={}, prec {} bits, tolerance {:.1e}]",
        check.name(),
        report.difference,
        report.budget,
        num.cutoff,
        num.prec,
        tol
    );
    if report.passes(tol) {
        println!("PASS");
        Ok(())
    } else {
        Err(Error::Unconverged(format!(
            "{} residual {:.3e} exceeds tolerance {tol:.1e}",
            check.name(),
            report.difference
        )))
    }
}

fn cmd_eisenstein(w: u32, tau: &str, terms: u64, prec: usize) -> mgf_core::Result<()> {
    let tau = parse_tau(tau, prec)?;
    let v = eisenstein_num(w, &tau, terms, prec)?;
    println!(
        "E_{w}(tau) = {}  [Fourier series, {terms} modes, prec {prec} bits, err <= {:.3e}]",
        v.value,
        v.error.to_f64()
    );
    Ok(())
}

fn cmd_phi(s: i64, m: i64, y: &str, prec: usize) -> mgf_core::Result<()> {
    let y = PrecisionReal::from_decimal_str(y, prec)?;
    let v = phi_sm(s, m, &y, prec)?;
    println!(
        "phi_{{{s},{m}}}(y) = {}  [incomplete-gamma closed form, prec {prec} bits, err <= {:.3e}]",
        v.value,
        v.error.to_f64()
    );
    Ok(())
}

fn run(cli: Cli) -> mgf_core::Result<u8> {
    match cli.command {
        Command::Laurent { a1, a2, a3, var, format } => {
            cmd_laurent(a1, a2, a3, &var, &format)?;
            Ok(0)
        }
        Command::Gamma { a1, a2, a3, format } => {
            cmd_gamma(a1, a2, a3, &format)?;
            Ok(0)
        }
        Command::CheckXn { max_a1, max_a23, jobs, self_test_fault, resume } => {
            let violations = cmd_check_xn(max_a1, max_a23, jobs, self_test_fault, resume)?;
            if violations > 0 {
                Err(Error::ConjectureViolation(format!("{violations} nonzero X_n cells")))
            } else {
                Ok(0)
            }
        }
        Command::Eval { a1, a2, a3, tau2, compare, tol, num } => {
            cmd_eval(a1, a2, a3, &tau2, &compare, tol, &num)?;
            Ok(0)
        }
        Command::Verify { id, tau, tol, num } => {
            cmd_verify(&id, &tau, tol, &num)?;
            Ok(0)
        }
        Command::Eisenstein { w, tau, terms, prec } => {
            cmd_eisenstein(w, &tau, terms, prec)?;
            Ok(0)
        }
        Command::Phi { s, m, y, prec } => {
            cmd_phi(s, m, &y, prec)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
