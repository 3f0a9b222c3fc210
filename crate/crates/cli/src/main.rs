//! `mwc` — evaluate wall-crossing scenario files, run the built-in
//! verification suite, and inspect atoms, walls and χ bookkeeping.
//!
//! Exit codes: 0 all checks pass, 1 a verification check failed, 2 input
//! error (bad usage, unreadable file, parse error).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mwc_core::ledger::{self, PairClass};
use mwc_core::motives;
use mwc_core::poly::Polynomial;
use mwc_core::{parse_scenario, run_scenario, VerificationReport};

#[derive(Parser)]
#[command(
    name = "mwc",
    about = "Exact wall-crossing calculator for virtual Poincaré polynomials of stable-pair moduli on the plane",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and run a scenario file, checking its expectations
    Eval {
        /// Path to a .mwc scenario file
        path: PathBuf,
        /// Emit the verification report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in scenario and fixed check suite
    Verify {
        /// Emit the verification report as JSON
        #[arg(long)]
        json: bool,
        /// Extra diagnostic to run (supported: c3-reconstruction)
        #[arg(long = "check", value_name = "NAME")]
        check: Option<String>,
    },
    /// Print the table of atom classes
    Atoms,
    /// Enumerate the walls of the pair space of class (d, chi)
    Walls {
        d: i64,
        #[arg(allow_negative_numbers = true)]
        chi: i64,
    },
    /// Print the χ bookkeeping of a pair class
    Chi {
        d: i64,
        #[arg(allow_negative_numbers = true)]
        chi: i64,
    },
    /// Rebuild the α=3 wall change from its strata and report what the
    /// remaining bracket implies
    Reconstruct,
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe (e.g. `mwc atoms | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match Cli::parse().command {
        Command::Eval { path, json } => cmd_eval(&path, json),
        Command::Verify { json, check } => cmd_verify(json, check.as_deref()),
        Command::Atoms => cmd_atoms(),
        Command::Walls { d, chi } => cmd_walls(d, chi),
        Command::Chi { d, chi } => cmd_chi(d, chi),
        Command::Reconstruct => {
            print_reconstruction();
            ExitCode::SUCCESS
        }
    }
}

fn cmd_eval(path: &PathBuf, json: bool) -> ExitCode {
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let mut scenario = match parse_scenario(&source) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    scenario.name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let report = run_scenario(&scenario);
    emit_report(&report, json)
}

fn cmd_verify(json: bool, check: Option<&str>) -> ExitCode {
    match check {
        None => {}
        Some("c3-reconstruction") => {}
        Some(other) => {
            eprintln!("error: unknown check `{other}` (supported: c3-reconstruction)");
            return ExitCode::from(2);
        }
    }
    let report = ledger::verification_report();
    let code = emit_report(&report, json);
    if check.is_some() && !json {
        println!();
        print_reconstruction();
    }
    if !json {
        let assembled = report
            .checks
            .iter()
            .find(|c| c.name == "M52_pairs")
            .and_then(|c| c.computed.as_deref())
            .and_then(|s| s.parse::<Polynomial>().ok());
        if let Some(p) = assembled {
            println!("total euler number: {}", p.eval_i(1));
        }
    }
    code
}

fn emit_report(report: &VerificationReport, json: bool) -> ExitCode {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report is serialisable")
        );
    } else {
        if !report.scenario.is_empty() {
            println!("scenario: {}", report.scenario);
        }
        for check in &report.checks {
            match (&check.error, &check.expected) {
                (Some(err), _) => {
                    println!("[FAIL] {}: error: {err}", check.name);
                }
                (None, None) => {
                    println!(
                        "[ ok ] {} = {}",
                        check.name,
                        check.computed.as_deref().unwrap_or("-")
                    );
                }
                (None, Some(_)) if check.pass => {
                    println!(
                        "[PASS] {} = {}",
                        check.name,
                        check.computed.as_deref().unwrap_or("-")
                    );
                }
                (None, Some(expected)) => {
                    println!("[FAIL] {}", check.name);
                    println!("       expected: {expected}");
                    println!(
                        "       computed: {}",
                        check.computed.as_deref().unwrap_or("-")
                    );
                    println!(
                        "       residual: {}",
                        check.residual.as_deref().unwrap_or("-")
                    );
                }
            }
        }
        let (passed, total) = (
            report.checks.iter().filter(|c| c.pass).count(),
            report.checks.len(),
        );
        println!("{passed}/{total} checks pass");
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_atoms() -> ExitCode {
    let rows: Vec<(String, Polynomial)> = vec![
        ("proj(1)".into(), motives::projective(1)),
        ("proj(2)".into(), motives::projective(2)),
        ("proj(5)".into(), motives::projective(5)),
        ("proj(9)".into(), motives::projective(9)),
        ("proj(14)".into(), motives::projective(14)),
        ("aff(2)".into(), motives::affine(2)),
        ("gr(2, 4)".into(), motives::grassmannian(2, 4).unwrap()),
        ("gr(2, 15)".into(), motives::grassmannian(2, 15).unwrap()),
        ("hilb(1)".into(), motives::hilb_p2(1)),
        ("hilb(2)".into(), motives::hilb_p2(2)),
        ("hilb(3)".into(), motives::hilb_p2(3)),
        ("relhilb(3, 0)".into(), motives::rel_hilbert(3, 0).unwrap()),
        ("relhilb(3, 1)".into(), motives::rel_hilbert(3, 1).unwrap()),
        ("relhilb(4, 1)".into(), motives::rel_hilbert(4, 1).unwrap()),
        ("relhilb(4, 2)".into(), motives::rel_hilbert(4, 2).unwrap()),
        ("relhilb(4, 3)".into(), motives::rel_hilbert(4, 3).unwrap()),
        (
            "sym2(proj(2))".into(),
            motives::sym2(&motives::projective(2)),
        ),
        (
            "sym2od(proj(2))".into(),
            motives::sym2_off_diag(&motives::projective(2)),
        ),
    ];
    println!("{:<16} {:>6} {:>8}  polynomial", "atom", "degree", "euler");
    for (name, p) in rows {
        let degree = p.degree().map_or("-".to_string(), |d| d.to_string());
        println!("{:<16} {:>6} {:>8}  {}", name, degree, p.eval_i(1), p);
    }
    ExitCode::SUCCESS
}

fn cmd_walls(d: i64, chi: i64) -> ExitCode {
    let Some(d) = class_degree(d, 100, chi) else {
        return ExitCode::from(2);
    };
    if d < 2 {
        eprintln!("error: wall enumeration needs degree >= 2");
        return ExitCode::from(2);
    }
    let walls = ledger::wall_enumerate(PairClass::new(d, chi));
    let distinct: Vec<String> = {
        let mut seen: Vec<String> = Vec::new();
        for w in &walls {
            let s = w.alpha.to_string();
            if seen.last() != Some(&s) {
                seen.push(s);
            }
        }
        seen
    };
    println!(
        "walls of ({d}, {chi}): {} value(s), {} candidate(s)",
        distinct.len(),
        walls.len()
    );
    let header = format!(
        "{:<8} {:<14} {:<18} quotient points",
        "alpha", "sub (d', chi')", "quotient (d, chi)"
    );
    println!("{header}");
    for w in &walls {
        println!(
            "{:<8} {:<14} {:<18} {}",
            w.alpha.to_string(),
            format!("({}, {})", w.sub.d, w.sub.chi),
            format!("({}, {})", w.quotient.d, w.quotient.chi),
            w.quotient.point_count()
        );
    }
    ExitCode::SUCCESS
}

fn cmd_chi(d: i64, chi: i64) -> ExitCode {
    let Some(d) = class_degree(d, 1_000_000, chi) else {
        return ExitCode::from(2);
    };
    if d < 1 {
        eprintln!("error: degree must be >= 1");
        return ExitCode::from(2);
    }
    let class = PairClass::new(d, chi);
    println!("pair class ({d}, {chi})");
    println!("  chi((s,F),(s,F)) = {}", ledger::chi_pair_self(class));
    println!("  expected dimension = {}", ledger::expected_dim(class));
    println!("  points carried n = {}", class.point_count());
    ExitCode::SUCCESS
}

/// Validates a pair-class argument pair, bounding it to ranges where the
/// i64 bookkeeping cannot overflow and enumerations stay tractable.
fn class_degree(d: i64, max_d: u32, chi: i64) -> Option<u32> {
    let d = match u32::try_from(d) {
        Ok(d) if d <= max_d => d,
        _ => {
            eprintln!("error: degree must be an integer in 1..={max_d}");
            return None;
        }
    };
    if chi.abs() > 1_000_000 {
        eprintln!("error: chi must lie in -1000000..=1000000");
        return None;
    }
    Some(d)
}

fn print_reconstruction() {
    let rec = ledger::reconstruct_c3();
    println!("alpha=3 wall reconstruction");
    println!("  printed delta:          {}", rec.printed_delta);
    println!("  printed delta euler:    {}", rec.printed_delta.eval_i(1));
    println!("  a-bracket:              {}", rec.a_bracket);
    println!("  a-bracket euler:        {}", rec.a_bracket.eval_i(1));
    println!("  b-bracket divisor:      {}", rec.divisor);
    for v in &rec.variants {
        let name = match v.variant {
            ledger::DSquareVariant::Equivariant => "equivariant",
            ledger::DSquareVariant::Naive => "naive",
        };
        println!("  [{name}]");
        println!("    d-bracket:            {}", v.d_bracket);
        println!("    d-bracket euler:      {}", v.d_bracket.eval_i(1));
        println!(
            "    a+d euler:            {}",
            (&rec.a_bracket + &v.d_bracket).eval_i(1)
        );
        println!("    implied b-bracket:    {}", v.b_bracket_implied);
        println!(
            "    implied b euler:      {}",
            v.b_bracket_implied.eval_i(1)
        );
        match &v.recovered_quotient {
            Ok(q) => println!("    recovered M+(3,0):    {q}"),
            Err(e) => println!("    division failed:      {e}"),
        }
    }
}
