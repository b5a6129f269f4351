//! `algheight`: heights of algebraic numbers and the real-conjugate height bound.
//!
//! Exit status: 0 on success, 1 when a verification fails or a hypothesis does
//! not hold, 2 on usage or parse errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use algheight::bounds::{self, ExponentPair};
use algheight::fmt::sig17;
use algheight::heights;
use algheight::scan::{self, ScanConfig, TableFormat};
use algheight::{Error, IntPoly};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "algheight", version, about = "Absolute heights and real-conjugate height bounds")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Height profile of the algebraic number defined by a polynomial.
    Height(PolyArg),
    /// B(R) with the lemma quantities at a(R).
    Bound {
        /// Fraction of real conjugates, as "r/d" or a decimal in (0, 1].
        #[arg(long)]
        ratio: String,
    },
    /// Closed-form lemma quantities against independent numeric maxima.
    Lemma {
        /// Exponent a in (0, 1/2).
        #[arg(long)]
        a: f64,
    },
    /// Best exponents (u, v) of |x|^u |1-x^2|^v for a given R.
    Optimize {
        /// Fraction of real conjugates, as "r/d" or a decimal in (0, 1].
        #[arg(long)]
        ratio: String,
    },
    /// Check every product identity and the final inequality for one polynomial.
    Verify(PolyArg),
    /// Exhaustive verification over a coefficient box.
    Scan(ScanArgs),
}

#[derive(Args, Debug)]
struct PolyArg {
    /// "x^2 - x - 1" or ascending coefficients "-1,-1,1".
    #[arg(allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Largest degree to enumerate (1 to 8).
    #[arg(long)]
    max_degree: usize,
    /// Coefficients range over [-C, C].
    #[arg(long)]
    coeff_bound: i64,
    /// Restrict to monic polynomials (algebraic integers).
    #[arg(long)]
    monic: bool,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the extremal table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Table format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
}

enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::NonIntegerCoefficient(_)
            | Error::ZeroPolynomial
            | Error::ConstantPolynomial
            | Error::OutOfRange { .. }
            | Error::RegionViolation { .. }
            | Error::Config(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn num(x: f64) -> Value {
    serde_json::Number::from_str(&sig17(x)).map_or(Value::Null, Value::Number)
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn parse_ratio(text: &str) -> Result<f64, Failure> {
    let bad = || Failure::Usage(format!("cannot parse ratio `{text}`"));
    let value = match text.split_once('/') {
        Some((n, d)) => {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            n as f64 / d as f64
        }
        None => text.trim().parse::<f64>().map_err(|_| bad())?,
    };
    if value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(Failure::Usage(format!("R = {text} is outside (0, 1]")))
    }
}

fn parse_poly(text: &str) -> Result<IntPoly, Failure> {
    let p: IntPoly = text.parse()?;
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial.into());
    }
    Ok(p.normalize())
}

fn cmd_height(arg: &PolyArg, json_mode: bool) -> CmdResult {
    let p = parse_poly(&arg.poly)?;
    if !p.is_squarefree() {
        return Err(Failure::Usage(format!("{p} is not squarefree")));
    }
    let profile = heights::height_profile(&p)?;
    let irreducible = p.is_irreducible()?;
    if !irreducible {
        eprintln!("warning: {p} is reducible; the value is not the height of a single algebraic number");
    }
    if json_mode {
        println!("{}", profile.to_json());
        return Ok(ExitCode::SUCCESS);
    }
    println!("polynomial  {p}");
    println!("coeffs      {}", p.to_spaced());
    println!("d           {}", profile.d);
    println!("r           {}", profile.r);
    println!("R           {}", profile.ratio);
    println!("mahler      {}", sig17(profile.mahler));
    println!("height      {}", sig17(profile.height));
    match (profile.bound, profile.margin) {
        (Some(b), Some(m)) => {
            println!("bound       {}", sig17(b));
            println!("margin      {}", sig17(m));
        }
        _ if profile.r == 0 => println!("note: r = 0: hypothesis of the bound fails, no bound"),
        _ => println!("note: alpha in {{0, 1, -1}}: hypothesis of the bound fails, no bound"),
    }
    if !irreducible {
        println!("reducible   true");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bound(ratio_text: &str, json_mode: bool) -> CmdResult {
    let ratio = parse_ratio(ratio_text)?;
    let a = bounds::optimal_a(ratio)?;
    let params = bounds::lemma_params(a)?;
    let b = bounds::garza_bound(ratio)?;
    let chain = bounds::lemma_bound(ratio)?;
    let discrepancy = bounds::bound_identity_chain(ratio)?;
    let schinzel = ratio == 1.0;
    if json_mode {
        print_json(&json!({
            "R": num(ratio),
            "bound": num(b),
            "a": num(a),
            "m_real": num(params.m_real),
            "m_complex": num(params.m_complex),
            "lemma_bound": num(chain),
            "identity_discrepancy": num(discrepancy),
            "schinzel_case": schinzel,
        }));
        return Ok(ExitCode::SUCCESS);
    }
    println!("R                      {}", sig17(ratio));
    println!(
        "B(R)                   {}{}",
        sig17(b),
        if schinzel { "  (Schinzel case)" } else { "" }
    );
    println!("a(R)                   {}", sig17(a));
    println!("M_R                    {}", sig17(params.m_real));
    println!("M_C                    {}", sig17(params.m_complex));
    println!("M_R^-R M_C^(R-1)       {}", sig17(chain));
    println!("identity discrepancy   {}", sig17(discrepancy));
    Ok(ExitCode::SUCCESS)
}

fn cmd_lemma(a: f64, json_mode: bool) -> CmdResult {
    let closed = bounds::lemma_params(a)?;
    let numeric = bounds::numeric_maxima(a)?;
    let d_real = (numeric.m_real - closed.m_real).abs();
    let d_complex = (numeric.m_complex - closed.m_complex).abs();
    let d_x1 = (numeric.x_inner - closed.x1).abs();
    if json_mode {
        print_json(&json!({
            "closed_form": serde_json::to_value(closed).expect("serializes"),
            "numeric": serde_json::to_value(numeric).expect("serializes"),
            "delta_m_real": num(d_real),
            "delta_m_complex": num(d_complex),
            "delta_x1": num(d_x1),
        }));
        return Ok(ExitCode::SUCCESS);
    }
    println!("a          {}", sig17(a));
    println!("M_R        {}   numeric {}   delta {:.3e}", sig17(closed.m_real), sig17(numeric.m_real), d_real);
    println!("M_C        {}   numeric {}   delta {:.3e}", sig17(closed.m_complex), sig17(numeric.m_complex), d_complex);
    println!("x1         {}   numeric {}   delta {:.3e}", sig17(closed.x1), sig17(numeric.x_inner), d_x1);
    println!("x2         {}   numeric {}", sig17(closed.x2), sig17(numeric.x_outer));
    Ok(ExitCode::SUCCESS)
}

fn cmd_optimize(ratio_text: &str, json_mode: bool) -> CmdResult {
    let ratio = parse_ratio(ratio_text)?;
    let report = bounds::optimize_exponents(ratio)?;
    if json_mode {
        print_json(&serde_json::to_value(&report).expect("serializes"));
        return Ok(ExitCode::SUCCESS);
    }
    let show = |e: ExponentPair| format!("({}, {})", sig17(e.u), sig17(e.v));
    println!("R                   {}", sig17(ratio));
    println!("best (u, v)         {}", show(report.best));
    println!("best value          {}", sig17(report.value));
    println!("(1/2 - a(R), a(R))  {}", show(report.expected));
    println!("value there         {}", sig17(report.expected_value));
    println!("B(R)                {}", sig17(bounds::garza_bound(ratio)?));
    println!("edge u + 2v = 1     {} -> {}", show(report.boundary_best), sig17(report.boundary_value));
    println!("evaluations         {}", report.evaluations);
    Ok(ExitCode::SUCCESS)
}

struct Check {
    name: String,
    detail: String,
    pass: bool,
}

fn cmd_verify(arg: &PolyArg, json_mode: bool) -> CmdResult {
    let p = parse_poly(&arg.poly)?;
    let hypothesis = if !p.is_squarefree() {
        Some("polynomial is not squarefree".to_string())
    } else if !p.avoids_zero_and_units() {
        Some("alpha in {0, 1, -1}".to_string())
    } else if !p.is_irreducible()? {
        Some("polynomial is reducible".to_string())
    } else if p.sturm_real_count()? == 0 {
        Some("r = 0: no real conjugates".to_string())
    } else {
        None
    };
    if let Some(reason) = hypothesis {
        return Err(Failure::Check(format!("hypothesis of the bound fails for {p}: {reason}")));
    }

    let record = scan::verify_polynomial(&p, &ScanConfig::new(p.degree().min(8), 1))?;
    let ids = &record.identities;
    let mut checks = Vec::new();
    let margin = record.profile.margin.expect("eligible");
    checks.push(Check {
        name: "height bound".into(),
        detail: format!(
            "H = {}, B(R) = {}, margin {}",
            sig17(record.profile.height),
            sig17(record.profile.bound.expect("eligible")),
            sig17(margin)
        ),
        pass: margin >= -scan::DEFAULT_TOLERANCE,
    });
    if p.is_monic() {
        for a in scan::INTEGER_CASE_EXPONENTS {
            let sides = heights::integer_case_product(&p, a)?;
            checks.push(Check {
                name: format!("integer-case product, a = {a}"),
                detail: sides.to_string(),
                pass: sides.relative_error() <= scan::INTEGER_CASE_TOLERANCE && sides.exact >= 1.0,
            });
        }
    }
    checks.push(Check {
        name: "archimedean norm product".into(),
        detail: ids.archimedean.to_string(),
        pass: ids.archimedean.relative_error() <= scan::ARCHIMEDEAN_TOLERANCE,
    });
    checks.push(Check {
        name: "reversal symmetry".into(),
        detail: format!(
            "H(alpha) = {}, H(1/alpha) = {}",
            sig17(ids.reversal.0),
            sig17(ids.reversal.1)
        ),
        pass: ids.reversal_relative_error() <= scan::REVERSAL_TOLERANCE,
    });
    let slack = ids.final_slack.expect("eligible");
    checks.push(Check {
        name: "final inequality".into(),
        detail: format!("slack {}", sig17(slack)),
        pass: slack >= -scan::FINAL_SLACK_TOLERANCE,
    });
    let equality = margin.abs() <= scan::DEFAULT_TOLERANCE;
    let all_pass = checks.iter().all(|c| c.pass);

    if json_mode {
        let arch = ids.archimedean;
        print_json(&json!({
            "profile": serde_json::to_value(&record.profile).expect("serializes"),
            "checks": checks.iter().map(|c| json!({
                "name": c.name, "detail": c.detail, "pass": c.pass,
            })).collect::<Vec<_>>(),
            "archimedean": { "numeric": num(arch.numeric), "exact": num(arch.exact) },
            "reversal": [num(ids.reversal.0), num(ids.reversal.1)],
            "final_slack": num(slack),
            "integer_case_max_error": opt_num(ids.integer_case.map(|c| c.max_relative_error)),
            "equality": equality,
            "pass": all_pass,
        }));
    } else {
        println!("polynomial  {p}");
        for c in &checks {
            println!("[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        if equality {
            println!("equality case: H(alpha) attains B(R)");
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_scan(args: &ScanArgs, json_mode: bool) -> CmdResult {
    let format = TableFormat::from_str(&args.format)?;
    let mut config = ScanConfig::new(args.max_degree, args.coeff_bound);
    config.monic_only = args.monic;
    if let Some(jobs) = args.jobs {
        config.workers = jobs;
    }
    config.validate()?;
    let started = std::time::Instant::now();
    let outcome = scan::run_scan(&config)?;
    let elapsed = started.elapsed().as_secs_f64();

    let rendered = format.render(&outcome.table);
    if let Some(path) = &args.out {
        scan::export_table(&outcome.table, format, path)
            .map_err(|e| Failure::Check(e.to_string()))?;
    }
    for exc in &outcome.exceptions {
        eprintln!("exception: {} ({}): {}", exc.poly, exc.poly.to_spaced(), exc.error);
    }
    for rec in &outcome.violations {
        eprintln!(
            "VIOLATION: {} H = {} B = {}",
            rec.profile.poly,
            sig17(rec.profile.height),
            sig17(rec.profile.bound.unwrap_or(f64::NAN))
        );
    }
    for (poly, names) in &outcome.identity_failures {
        eprintln!("identity failure: {poly}: {}", names.join(", "));
    }
    eprintln!("scan finished in {elapsed:.2}s");

    let s = &outcome.stats;
    if json_mode {
        let table: Value = serde_json::from_str(&outcome.table.to_json()).expect("table json");
        print_json(&json!({
            "max_degree": config.max_degree,
            "coeff_bound": config.coeff_bound,
            "monic_only": config.monic_only,
            "candidates": outcome.candidates,
            "eligible": outcome.eligible,
            "violations": outcome.violations.len(),
            "exceptions": outcome.exceptions.len(),
            "identity_failures": outcome.identity_failures.len(),
            "stats": serde_json::to_value(s).expect("serializes"),
            "table": table,
            "pass": outcome.passed(),
        }));
    } else {
        println!("candidates          {}", outcome.candidates);
        println!("eligible            {}", outcome.eligible);
        println!("violations          {}", outcome.violations.len());
        println!("exceptions          {}", outcome.exceptions.len());
        println!("identity failures   {}", outcome.identity_failures.len());
        println!("min margin          {}", sig17(s.min_margin));
        println!("min final slack     {}", sig17(s.min_final_slack));
        println!("max archimedean err {:.3e}", s.max_archimedean_error);
        println!("max reversal err    {:.3e}", s.max_reversal_error);
        println!("max integer err     {:.3e} over {} monic", s.max_integer_case_error, s.monic_checked);
        if args.out.is_none() {
            println!();
            print!("{rendered}");
        }
    }
    Ok(if outcome.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = cli.json;
    let result = match &cli.command {
        Command::Height(arg) => cmd_height(arg, json_mode),
        Command::Bound { ratio } => cmd_bound(ratio, json_mode),
        Command::Lemma { a } => cmd_lemma(*a, json_mode),
        Command::Optimize { ratio } => cmd_optimize(ratio, json_mode),
        Command::Verify(arg) => cmd_verify(arg, json_mode),
        Command::Scan(args) => cmd_scan(args, json_mode),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
