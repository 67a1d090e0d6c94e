//! Command-line front end: parse monoid/semiring/ideal files, run the
//! library operations, and emit machine-readable JSON reports.
//!
//! Exit codes: 0 on ok, 2 on undecided outcomes (congruence caps and other
//! semi-decisions), 1 on failures and parse errors. One JSON document is
//! written to standard output; a human summary goes to standard error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use monoidkit::linalg::IntVector;
use monoidkit::monoid::{canonical_decomposition, saturate, AffineMonoid};
use monoidkit::poly::{hilbert_generated, shift_into, support_in, Domain, SparsePoly};
use monoidkit::qring;
use monoidkit::semiring::{
    check_diagram, grothendieck, profile, quotient, FiniteSemiring, PresentationSpec,
    QuotientOutcome, SemiringSpec,
};
use monoidkit::verify::{run_suite, SuiteConfig, SUITE_NAMES};

#[derive(Parser)]
#[command(name = "monoidkit", version, about = "Exact arithmetic for affine monoids and finite semirings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Saturate a monoid file and print its Hilbert basis.
    Saturate {
        monoid: PathBuf,
        /// Write the Hilbert basis back out as a monoid file.
        #[arg(long)]
        out_monoid: Option<PathBuf>,
    },
    /// Canonical decomposition of the saturation of a monoid file.
    Decompose {
        monoid: PathBuf,
        /// Include the Hilbert bases of the piece closures.
        #[arg(long)]
        dtilde: bool,
    },
    /// Classify a lattice point into its decomposition piece.
    Classify {
        monoid: PathBuf,
        /// Point as comma-separated coordinates, e.g. 3,2.
        point: String,
    },
    /// Minimal k with k·alpha + gamma inside the piece of alpha.
    Kmin {
        monoid: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        gamma: String,
    },
    /// Shift a polynomial into the monoid semiring along alpha.
    Shift {
        monoid: PathBuf,
        #[arg(long)]
        alpha: String,
        /// Polynomial in text form, e.g. "1*x^(0,7)".
        #[arg(long)]
        poly: String,
    },
    /// Factor N[C] by a congruence presentation (JSON file).
    Quotient {
        presentation: PathBuf,
        /// Override the presentation's class cap.
        #[arg(long)]
        size_cap: Option<usize>,
    },
    /// Additive-property profiles of a semiring file.
    Profile {
        semiring: PathBuf,
        /// Profile a single element instead of all of them.
        #[arg(long)]
        element: Option<usize>,
    },
    /// Grothendieck ring of a semiring file.
    Grothendieck { semiring: PathBuf },
    /// Canonical (n, P) form of the subring of Q generated by fractions.
    Qsub(QsubArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 15)]
        height: i64,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        size_cap: usize,
    },
}

#[derive(Args)]
struct QsubArgs {
    /// Generators as fractions, e.g. 5/2 1/3.
    #[arg(required = true)]
    generators: Vec<String>,
    /// Also test these fractions for membership.
    #[arg(long)]
    member: Vec<String>,
}

enum Outcome {
    Ok(serde_json::Value),
    Undecided(serde_json::Value),
}

fn main() -> ExitCode {
    // Parse failures exit 1 (2 is reserved for undecided outcomes);
    // --help and --version exit 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let started = Instant::now();
    let command_echo: Vec<String> = std::env::args().skip(1).collect();

    let result = run(&cli.command);
    let (status, payload, code) = match result {
        Ok(Outcome::Ok(payload)) => ("ok", payload, ExitCode::SUCCESS),
        Ok(Outcome::Undecided(payload)) => ("undecided", payload, ExitCode::from(2)),
        Err(e) => (
            "failed",
            json!({ "error": format!("{e:#}") }),
            ExitCode::from(1),
        ),
    };
    let report = json!({
        "command": command_echo,
        "status": status,
        "payload": payload,
        "timing_ms": started.elapsed().as_millis() as u64,
    });
    let rendered = serde_json::to_string_pretty(&report).expect("report serialises");
    println!("{rendered}");
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &rendered) {
            eprintln!("monoidkit: could not write report to {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    eprintln!("monoidkit: {status}");
    code
}

fn run(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Saturate { monoid, out_monoid } => {
            let m = read_monoid(monoid)?;
            let s = saturate(&m);
            let regenerated = AffineMonoid::new(m.ambient(), s.hilbert_basis())?;
            if let Some(path) = out_monoid {
                fs::write(path, regenerated.to_text())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(Outcome::Ok(json!({
                "rank": m.ambient(),
                "generators": m.generators(),
                "hilbert_basis": s.hilbert_basis(),
                "is_saturated": monoidkit::monoid::is_saturated(&m),
            })))
        }
        Command::Decompose { monoid, dtilde } => {
            let m = read_monoid(monoid)?;
            let d = canonical_decomposition(&saturate(&m));
            Ok(Outcome::Ok(serde_json::to_value(d.summary(*dtilde))?))
        }
        Command::Classify { monoid, point } => {
            let m = read_monoid(monoid)?;
            let d = canonical_decomposition(&saturate(&m));
            let p = IntVector::parse(point)?;
            let piece = d.classify(&p)?;
            Ok(Outcome::Ok(json!({
                "point": p,
                "piece": {
                    "id": piece.id(),
                    "dim": piece.dim(),
                    "support_basis": piece.face().support.basis(),
                },
            })))
        }
        Command::Kmin {
            monoid,
            alpha,
            gamma,
        } => {
            let m = read_monoid(monoid)?;
            let d = canonical_decomposition(&saturate(&m));
            let alpha = IntVector::parse(alpha)?;
            let gamma = IntVector::parse(gamma)?;
            let piece = d.classify(&alpha)?;
            let k = d.kmin(piece, &alpha, &gamma)?;
            Ok(Outcome::Ok(json!({
                "alpha": alpha,
                "gamma": gamma,
                "piece": piece.id(),
                "k": k,
            })))
        }
        Command::Shift { monoid, alpha, poly } => {
            let m = read_monoid(monoid)?;
            let d = canonical_decomposition(&saturate(&m));
            let alpha = IntVector::parse(alpha)?;
            let f = SparsePoly::parse(poly, m.ambient(), Domain::Integers)?;
            let piece = d.classify(&alpha)?;
            let universe = hilbert_generated(&d)?;
            let (k, shifted) = shift_into(&d, piece, &f, &alpha, &universe)?;
            debug_assert!(support_in(&universe, &shifted));
            Ok(Outcome::Ok(json!({
                "k": k,
                "shifted": shifted.to_string(),
                "shifted_terms": shifted.to_json(),
            })))
        }
        Command::Quotient {
            presentation,
            size_cap,
        } => {
            let text = fs::read_to_string(presentation)
                .with_context(|| format!("reading {}", presentation.display()))?;
            let mut spec: PresentationSpec = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", presentation.display()))?;
            if let Some(cap) = size_cap {
                spec.size_cap = *cap;
            }
            let pres = spec.build()?;
            match quotient(&pres)? {
                QuotientOutcome::Finite(s) => {
                    let gen_map: Vec<serde_json::Value> = s
                        .generator_map()
                        .map(|m| {
                            m.iter()
                                .map(|(e, c)| json!({ "exponent": e, "class": c }))
                                .collect()
                        })
                        .unwrap_or_default();
                    Ok(Outcome::Ok(json!({
                        "order": s.order(),
                        "add": s.add_table(),
                        "mul": s.mul_table(),
                        "unity": s.unity(),
                        "generator_map": gen_map,
                    })))
                }
                QuotientOutcome::Undecided { reason } => {
                    Ok(Outcome::Undecided(json!({ "reason": reason })))
                }
            }
        }
        Command::Profile { semiring, element } => {
            let s = read_semiring(semiring)?;
            let diagram = check_diagram(&s);
            let profiles: Vec<_> = match element {
                Some(a) => {
                    if *a >= s.order() {
                        return Err(anyhow!("element {a} out of range 0..{}", s.order()));
                    }
                    vec![profile(&s, *a)]
                }
                None => s.elements().map(|a| profile(&s, a)).collect(),
            };
            Ok(Outcome::Ok(json!({
                "order": s.order(),
                "unity": s.unity(),
                "profiles": serde_json::to_value(profiles)?,
                "diagram_clean": diagram.clean(),
            })))
        }
        Command::Grothendieck { semiring } => {
            let s = read_semiring(semiring)?;
            let g = grothendieck(&s)?;
            Ok(Outcome::Ok(json!({
                "order": g.order(),
                "trivial": g.is_trivial(),
                "zero": g.zero,
                "unity": g.unity,
                "sigma": g.sigma,
                "additive_torsion": g.additive_torsion(),
            })))
        }
        Command::Qsub(args) => {
            let gens = args
                .generators
                .iter()
                .map(|t| qring::parse_fraction(t))
                .collect::<Result<Vec<_>, _>>()?;
            let d = qring::canonical_form(&gens)?;
            let members: Vec<serde_json::Value> = args
                .member
                .iter()
                .map(|t| {
                    let x = qring::parse_fraction(t)?;
                    Ok(json!({
                        "fraction": qring::format_fraction(&x),
                        "member": qring::member(&d, &x),
                        "np_member": qring::np_member(&d.primes, &x),
                    }))
                })
                .collect::<anyhow::Result<_>>()?;
            Ok(Outcome::Ok(json!({
                "descriptor": serde_json::to_value(&d)?,
                "finitely_generated": qring::is_finitely_generated(&d),
                "additively_almost_divisible": qring::is_additively_almost_divisible(&d),
                "members": members,
            })))
        }
        Command::Verify {
            suite,
            seed,
            height,
            max_order,
            count,
            size_cap,
        } => {
            if !SUITE_NAMES.contains(&suite.as_str()) {
                return Err(anyhow!("unknown suite {suite:?}; expected one of {SUITE_NAMES:?}"));
            }
            let cfg = SuiteConfig {
                seed: *seed,
                height: *height,
                max_order: *max_order,
                count: *count,
                size_cap: *size_cap,
                ..SuiteConfig::default()
            };
            let report = run_suite(suite, &cfg)?;
            for check in &report.checks {
                eprintln!(
                    "  [{}] {} ({} instances, {} failures)",
                    if check.passed() { "pass" } else { "FAIL" },
                    check.name,
                    check.instances,
                    check.failures
                );
            }
            let payload = serde_json::to_value(&report)?;
            if report.passed {
                Ok(Outcome::Ok(payload))
            } else {
                Err(anyhow!(
                    "verification suite {suite} failed: {}",
                    serde_json::to_string(&payload)?
                ))
            }
        }
    }
}

fn read_monoid(path: &PathBuf) -> anyhow::Result<AffineMonoid> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    AffineMonoid::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_semiring(path: &PathBuf) -> anyhow::Result<FiniteSemiring> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: SemiringSpec =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(spec.build()?)
}
