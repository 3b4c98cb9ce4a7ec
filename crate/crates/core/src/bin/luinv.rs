//! Command-line surface: dimension bookkeeping, basis construction,
//! invariant evaluation, embedding, and randomized verification.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use luinv::builder::{build_highest_weight_basis, SubspaceBasis};
use luinv::combinatorics::{sym_power_dimension, weyl_dimension, Partition};
use luinv::embed::{embed_distinguishable, eval_three_qubit_i222, DistinguishableState};
use luinv::error::Error;
use luinv::exterior::FermionState;
use luinv::invariants::{
    antisymmetric_family, closed_form_i1111, closed_form_i16, closed_form_i22,
    eval_projection_invariant,
};
use luinv::io;
use luinv::scalar::GaussianRational;
use luinv::verify::{invariance_test, numeric_span_crosscheck, TrialReport};

#[derive(Parser)]
#[command(
    name = "luinv",
    about = "Local-unitary invariants of k-fermion pure states",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dimensions of the highest-weight subspace and its complement
    Dims(DimsArgs),
    /// Construct the orthogonal family basis and print its family table
    Basis(BasisArgs),
    /// Evaluate an invariant on a state file
    Eval(EvalArgs),
    /// Embed a distinguishable-particle state into the fermionic space
    Embed(EmbedArgs),
    /// Run a randomized or exact verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DimsArgs {
    #[arg(long)]
    k: u8,
    #[arg(long)]
    m: u32,
    /// Single-particle dimension; defaults to k*m
    #[arg(long)]
    n: Option<u8>,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long)]
    k: u8,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: Option<u8>,
    /// Write the basis file here
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Basis file produced by `basis --out`
    #[arg(long, conflicts_with = "invariant")]
    basis: Option<std::path::PathBuf>,
    /// Named closed form: I22, I1111, I16, I222, or family:<base_n>
    #[arg(long, required_unless_present = "basis")]
    invariant: Option<String>,
    /// State file (fermion or distinguishable format)
    #[arg(long)]
    state: std::path::PathBuf,
    /// Also print 1 - I
    #[arg(long)]
    complement: bool,
}

#[derive(Args)]
struct EmbedArgs {
    /// Distinguishable-format input state
    #[arg(long)]
    state: std::path::PathBuf,
    /// Fermion-format output path
    #[arg(long)]
    out: std::path::PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: invariance, span, tables, values
    #[arg(long)]
    suite: String,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dims(args) => cmd_dims(&args),
        Command::Basis(args) => cmd_basis(&args),
        Command::Eval(args) => cmd_eval(&args),
        Command::Embed(args) => cmd_embed(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

/// 12 significant digits, fixed-point.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.12}");
    }
    let decimals = (11 - x.abs().log10().floor() as i32).clamp(0, 30);
    format!("{x:.*}", decimals as usize)
}

fn partition_label(parts: &[u32]) -> String {
    let body: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    format!("({})", body.join(","))
}

fn read_file(path: &std::path::Path) -> Result<(String, String), Error> {
    let name = path.display().to_string();
    match std::fs::read_to_string(path) {
        Ok(text) => Ok((text, name)),
        Err(e) => Err(Error::Parse {
            file: name,
            line: 0,
            message: format!("cannot read file: {e}"),
        }),
    }
}

/// Partitions labelling the complement of W inside S^m(⋀^k C^n), for the
/// cases where the decomposition is worked out term by term.
fn named_complements(k: u8, m: u32) -> Option<Vec<Partition>> {
    match (k, m) {
        (2, 2) => Some(vec![Partition::new(vec![1, 1, 1, 1])]),
        (2, 3) => Some(vec![
            Partition::new(vec![2, 2, 1, 1]),
            Partition::new(vec![1, 1, 1, 1, 1, 1]),
        ]),
        _ => None,
    }
}

fn cmd_dims(args: &DimsArgs) -> Result<ExitCode, Error> {
    let k = args.k;
    let m = args.m;
    let n = args.n.unwrap_or(k * m as u8);
    let lambda = Partition::rectangle(k, m);
    let w_dim = weyl_dimension(&lambda, n as usize)?;
    let total = sym_power_dimension(n as u64, k as u64, m as u64)?;

    println!("lambda = {}", partition_label(lambda.stripped()));
    println!("n = {n}");
    println!("dim W = {w_dim}");
    match named_complements(k, m) {
        Some(parts) => {
            for p in &parts {
                // a partition with more parts than n contributes nothing
                let d = weyl_dimension(p, n as usize).unwrap_or(0);
                println!("complement {} = {d}", partition_label(p.stripped()));
            }
        }
        None => println!("complement = {}", total - w_dim),
    }
    println!("total dim S^{m}(wedge^{k} C^{n}) = {total}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_basis(args: &BasisArgs) -> Result<ExitCode, Error> {
    let n = args.n.unwrap_or(args.k * args.m as u8);
    let basis = build_highest_weight_basis(args.k, args.m, n)?;
    println!(
        "lambda = {}  n = {}  dim W = {}  families = {}",
        partition_label(basis.lambda.stripped()),
        basis.n,
        basis.total_dimension,
        basis.families.len()
    );
    for (weight, fams) in basis.families_by_weight() {
        for f in fams {
            println!(
                "weight {:?}  orbit {}  inv_norm_sq {}  rep {}",
                weight.entries(),
                f.orbit_members.len(),
                io::format_rational(&f.inv_norm_sq),
                f.representative
            );
        }
    }
    if let Some(path) = &args.out {
        std::fs::write(path, io::write_basis(&basis)).map_err(|e| Error::Parse {
            file: path.display().to_string(),
            line: 0,
            message: format!("cannot write file: {e}"),
        })?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

enum StateFile {
    Fermion(FermionState<GaussianRational>),
    Distinguishable(DistinguishableState<GaussianRational>),
}

fn load_state(path: &std::path::Path) -> Result<StateFile, Error> {
    let (text, name) = read_file(path)?;
    let first_word = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    match first_word {
        "fermion" => Ok(StateFile::Fermion(io::parse_fermion_state(&text, &name)?)),
        "distinguishable" => Ok(StateFile::Distinguishable(io::parse_distinguishable_state(
            &text, &name,
        )?)),
        other => Err(Error::Parse {
            file: name,
            line: 1,
            message: format!(
                "unknown state format {other:?}; expected a 'fermion' or 'distinguishable' header"
            ),
        }),
    }
}

/// Raw (unnormalized, degree 2m) invariant value plus the degree m.
fn eval_raw(
    args: &EvalArgs,
    state: &StateFile,
) -> Result<(GaussianRational, BigRational, u32), Error> {
    // fall back to the fermionic picture for everything except I222 on a
    // three-qubit input
    let as_fermion = |s: &StateFile| -> FermionState<GaussianRational> {
        match s {
            StateFile::Fermion(psi) => psi.clone(),
            StateFile::Distinguishable(phi) => embed_distinguishable(phi),
        }
    };
    if let Some(path) = &args.basis {
        let (text, name) = read_file(path)?;
        let basis = io::parse_basis(&text, &name)?;
        let psi = as_fermion(state);
        let basis = if psi.n() > basis.n {
            basis.reexpand(psi.n())?
        } else {
            basis
        };
        let raw = eval_projection_invariant(&basis, &psi)?;
        let norm_sq = psi.norm_sq_rational();
        return Ok((raw, norm_sq, basis.m));
    }
    let name = args.invariant.as_deref().unwrap();
    if let Some(base) = name.strip_prefix("family:") {
        let base_n: u8 = base.parse().map_err(|_| Error::Parse {
            file: "--invariant".into(),
            line: 0,
            message: format!("family:<base_n> needs an integer, got {base:?}"),
        })?;
        let psi = as_fermion(state);
        let raw = antisymmetric_family(&psi, base_n)?;
        let m = base_n as u32 / psi.k() as u32;
        let norm_sq = psi.norm_sq_rational();
        return Ok((raw, norm_sq, m));
    }
    match name {
        "I22" | "I1111" | "I16" => {
            let psi = as_fermion(state);
            let norm_sq = psi.norm_sq_rational();
            let (raw, m) = match name {
                "I22" => (closed_form_i22(&psi)?, 2),
                "I1111" => (closed_form_i1111(&psi)?, 2),
                _ => (closed_form_i16(&psi)?, 3),
            };
            Ok((raw, norm_sq, m))
        }
        "I222" => match state {
            StateFile::Distinguishable(phi) if phi.dims() == [2, 2, 2] => {
                let raw = eval_three_qubit_i222(phi)?;
                let norm_sq = phi.norm_sq_scalar().into_real();
                Ok((raw, norm_sq, 2))
            }
            _ => {
                let psi = as_fermion(state);
                let mut basis = build_highest_weight_basis(3, 2, 6)?;
                if psi.n() > basis.n {
                    basis = basis.reexpand(psi.n())?;
                }
                let raw = eval_projection_invariant(&basis, &psi)?;
                let norm_sq = psi.norm_sq_rational();
                Ok((raw, norm_sq, 2))
            }
        },
        other => Err(Error::Parse {
            file: "--invariant".into(),
            line: 0,
            message: format!(
                "unknown invariant {other:?}; expected I22, I1111, I16, I222, or family:<base_n>"
            ),
        }),
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<ExitCode, Error> {
    let state = load_state(&args.state)?;
    let (raw, norm_sq, m) = eval_raw(args, &state)?;
    if norm_sq == BigRational::from_integer(0.into()) {
        return Err(Error::ZeroVector);
    }
    // normalize: divide the degree-2m raw value by ||psi||^(2m)
    let mut denom = BigRational::from_integer(1.into());
    for _ in 0..m {
        denom *= &norm_sq;
    }
    let exact = raw.into_real() / denom;
    let value = exact.to_f64().unwrap_or(f64::NAN);
    println!(
        "I = {} (exact {})",
        sig12(value),
        io::format_rational(&exact)
    );
    if args.complement {
        let comp = BigRational::from_integer(1.into()) - &exact;
        let cv = comp.to_f64().unwrap_or(f64::NAN);
        println!(
            "1 - I = {} (exact {})",
            sig12(cv),
            io::format_rational(&comp)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_embed(args: &EmbedArgs) -> Result<ExitCode, Error> {
    let (text, name) = read_file(&args.state)?;
    let phi = io::parse_distinguishable_state(&text, &name)?;
    let psi = embed_distinguishable(&phi);
    std::fs::write(&args.out, io::write_fermion_state(&psi)).map_err(|e| Error::Parse {
        file: args.out.display().to_string(),
        line: 0,
        message: format!("cannot write file: {e}"),
    })?;
    println!(
        "embedded dims {:?} into n = {}, k = {}; wrote {}",
        phi.dims(),
        psi.n(),
        psi.k(),
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, Error> {
    let report = match args.suite.as_str() {
        "invariance" => suite_invariance(args)?,
        "span" => suite_span(args)?,
        "tables" => suite_tables(args)?,
        "values" => suite_values(args)?,
        other => {
            eprintln!(
                "error: unknown suite {other:?}; expected invariance, span, tables, or values"
            );
            return Ok(ExitCode::from(2));
        }
    };
    println!("{report}");
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn merge(acc: &mut TrialReport, r: &TrialReport) {
    acc.trials += r.trials;
    acc.max_deviation = acc.max_deviation.max(r.max_deviation);
    acc.pass &= r.pass;
}

fn suite_invariance(args: &VerifyArgs) -> Result<TrialReport, Error> {
    let trials = args.trials.unwrap_or(100);
    let tol = args.tol.unwrap_or(1e-9);
    let seed = args.seed;
    let mut overall = TrialReport {
        trials: 0,
        max_deviation: 0.0,
        seed,
        pass: true,
    };

    let norm = |raw: f64, psi: &FermionState<Complex64>, m: i32| raw / psi.norm_sq().powi(m);

    let psi2 = FermionState::random(5, 2, seed ^ 0x5151);
    let r = invariance_test(
        |p| norm(closed_form_i22(p).unwrap().re, p, 2),
        &psi2,
        trials,
        tol,
        seed,
    )?;
    println!("I22       {r}");
    merge(&mut overall, &r);

    let r = invariance_test(
        |p| norm(closed_form_i1111(p).unwrap().re, p, 2),
        &psi2,
        trials,
        tol,
        seed.wrapping_add(1000),
    )?;
    println!("I1111     {r}");
    merge(&mut overall, &r);

    let psi6 = FermionState::random(6, 2, seed ^ 0xa1a1);
    let r = invariance_test(
        |p| norm(closed_form_i16(p).unwrap().re, p, 3),
        &psi6,
        trials,
        tol,
        seed.wrapping_add(2000),
    )?;
    println!("I16       {r}");
    merge(&mut overall, &r);

    let basis = build_highest_weight_basis(3, 2, 6)?;
    let psi3 = FermionState::random(6, 3, seed ^ 0xc3c3);
    let r = invariance_test(
        |p| norm(eval_projection_invariant(&basis, p).unwrap().re, p, 2),
        &psi3,
        trials,
        tol,
        seed.wrapping_add(3000),
    )?;
    println!("I222      {r}");
    merge(&mut overall, &r);

    Ok(overall)
}

fn suite_span(args: &VerifyArgs) -> Result<TrialReport, Error> {
    let extra = args.trials.unwrap_or(30);
    let seed = args.seed;
    let mut overall = TrialReport {
        trials: 0,
        max_deviation: 0.0,
        seed,
        pass: true,
    };
    for (k, m, n) in [(2u8, 2u32, 4u8), (2, 3, 6), (3, 2, 6)] {
        let basis = build_highest_weight_basis(k, m, n)?;
        let samples = basis.total_dimension as u32 + extra;
        let r = numeric_span_crosscheck(&basis, samples, seed)?;
        println!("span k={k} m={m} n={n} dim={} {r}", basis.total_dimension);
        merge(&mut overall, &r);
    }
    Ok(overall)
}

/// Expected bucket shape: weight entries, family count, orbit size, and
/// the inverse squared norms as (numerator, denominator) pairs.
type BucketSpec<'a> = (&'a [i64], usize, usize, &'a [(i64, i64)]);

fn expect_families(basis: &SubspaceBasis, expected: &[BucketSpec]) -> (u32, bool) {
    let grouped = basis.families_by_weight();
    let mut checks = 0u32;
    let mut ok = grouped.len() == expected.len();
    for ((weight, fams), (ew, ecount, eorbit, enorms)) in grouped.iter().zip(expected) {
        checks += 1;
        let mut norms: Vec<BigRational> = fams.iter().map(|f| f.inv_norm_sq.clone()).collect();
        norms.sort();
        let mut want: Vec<BigRational> = enorms
            .iter()
            .map(|&(p, q)| BigRational::new(p.into(), q.into()))
            .collect();
        want.sort();
        let good = weight.entries() == *ew
            && fams.len() == *ecount
            && fams.iter().all(|f| f.orbit_members.len() == *eorbit)
            && norms == want;
        if !good {
            println!(
                "mismatch at weight {:?}: {} families x {} members",
                weight.entries(),
                fams.len(),
                fams[0].orbit_members.len()
            );
            ok = false;
        }
    }
    (checks, ok)
}

fn suite_tables(args: &VerifyArgs) -> Result<TrialReport, Error> {
    let basis1 = build_highest_weight_basis(2, 3, 6)?;
    let expected1: &[BucketSpec] = &[
        (&[3, 3, 0, 0, 0, 0], 1, 15, &[(1, 1)]),
        (&[3, 2, 1, 0, 0, 0], 1, 120, &[(3, 1)]),
        (&[3, 1, 1, 1, 0, 0], 1, 60, &[(6, 1)]),
        (&[2, 2, 2, 0, 0, 0], 1, 20, &[(6, 1)]),
        (&[2, 2, 1, 1, 0, 0], 2, 90, &[(1, 1), (1, 8)]),
        (&[2, 1, 1, 1, 1, 0], 3, 30, &[(2, 1), (1, 4), (3, 4)]),
        (
            &[1, 1, 1, 1, 1, 1],
            5,
            1,
            &[(1, 1), (1, 8), (3, 8), (3, 8), (1, 8)],
        ),
    ];
    let (c1, ok1) = expect_families(&basis1, expected1);
    let dim1_ok = basis1.total_dimension == 490;
    println!(
        "table k=2 m=3 n=6: dim {} {}",
        basis1.total_dimension,
        if ok1 && dim1_ok { "ok" } else { "MISMATCH" }
    );

    let basis2 = build_highest_weight_basis(3, 2, 6)?;
    let expected2: &[BucketSpec] = &[
        (&[2, 2, 2, 0, 0, 0], 1, 20, &[(1, 1)]),
        (&[2, 2, 1, 1, 0, 0], 1, 90, &[(2, 1)]),
        (&[2, 1, 1, 1, 1, 0], 2, 30, &[(1, 1), (1, 3)]),
        (
            &[1, 1, 1, 1, 1, 1],
            5,
            1,
            &[(1, 2), (1, 6), (1, 6), (1, 18), (1, 9)],
        ),
    ];
    let (c2, ok2) = expect_families(&basis2, expected2);
    let dim2_ok = basis2.total_dimension == 175;
    println!(
        "table k=3 m=2 n=6: dim {} {}",
        basis2.total_dimension,
        if ok2 && dim2_ok { "ok" } else { "MISMATCH" }
    );

    Ok(TrialReport {
        trials: c1 + c2 + 2,
        max_deviation: 0.0,
        seed: args.seed,
        pass: ok1 && dim1_ok && ok2 && dim2_ok,
    })
}

fn suite_values(args: &VerifyArgs) -> Result<TrialReport, Error> {
    let tol = args.tol.unwrap_or(1e-12);
    let g = GaussianRational::from_integer;
    let q = |p: i64, d: i64| BigRational::new(p.into(), d.into());
    // label, basis amplitudes as (index tuple, value), expected invariant
    type Benchmark = (&'static str, Vec<(Vec<u8>, i64)>, BigRational);
    let cases: [Benchmark; 4] = [
        ("separable", vec![(vec![1, 1, 1], 1)], q(1, 1)),
        ("GHZ", vec![(vec![1, 1, 1], 1), (vec![2, 2, 2], 1)], q(3, 4)),
        (
            "W",
            vec![(vec![1, 1, 2], 1), (vec![1, 2, 1], 1), (vec![2, 1, 1], 1)],
            q(7, 9),
        ),
        (
            "biseparable",
            vec![(vec![1, 1, 2], 1), (vec![1, 2, 1], 1)],
            q(5, 6),
        ),
    ];
    let mut max_dev = 0.0f64;
    let mut pass = true;
    for (label, amps, expected) in &cases {
        let mut phi = DistinguishableState::<GaussianRational>::new(vec![2, 2, 2]);
        for (t, a) in amps {
            phi.set(t.clone(), g(*a)).unwrap();
        }
        let raw = eval_three_qubit_i222(&phi)?.into_real();
        let nsq = phi.norm_sq_scalar().into_real();
        let exact = raw / (&nsq * &nsq);
        let dev = (exact.to_f64().unwrap() - expected.to_f64().unwrap()).abs();
        max_dev = max_dev.max(dev);
        let ok = exact == *expected && dev <= tol;
        println!(
            "I222({label}) = {} (exact {}) {}",
            sig12(exact.to_f64().unwrap()),
            io::format_rational(&exact),
            if ok { "ok" } else { "MISMATCH" }
        );
        pass &= ok;
    }
    Ok(TrialReport {
        trials: cases.len() as u32,
        max_deviation: max_dev,
        seed: args.seed,
        pass,
    })
}
