//! `trigvee`: generate, check, restrict and verify trigonometric vee-systems.
//!
//! Exit codes: 0 when the requested property holds, 1 when it fails, 2 on
//! malformed input or an unsupported request.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use trigvee_core::arith::format_rational;
use trigvee_core::catalog::catalog;
use trigvee_core::families::{
    expected_lambda_sq, gamma_sq_direct, gamma_tilde_sq, gamma_tilde_sq_dual, generate, Family, FamilySpec,
    GammaMult, RootData,
};
use trigvee_core::io::{config_from_json, config_to_json, config_to_value};
use trigvee_core::restriction::restrict_to_kernel;
use trigvee_core::veesystem::{m_operator, subsystem, vee_check};
use trigvee_core::wdvv::{associativity_residual, wdvv_residual, WdvvOptions};
use trigvee_core::{lambda_sq, parse_rational, restrict, CoVec, Configuration, Rational};

#[derive(Parser)]
#[command(name = "trigvee", version, about = "Trigonometric vee-systems and WDVV solutions")]
struct Cli {
    /// Print machine-readable JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Write the main output to a file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name: A, B, C, D, BC, E6, E7, E8, F4, G2, FourDim, FourDimA1,
    /// FourDimA2, Planar6, Planar8, Planar9, Planar10, RestrictedBC, RestrictedA.
    family: String,
    /// Rank (ignored for fixed-rank families and restricted families).
    #[arg(long, short = 'n', default_value_t = 0)]
    rank: usize,
    /// Parameter assignment `name=value`, repeatable (e.g. `-p q=1/2`).
    #[arg(long = "param", short = 'p')]
    params: Vec<String>,
    /// Partition for restricted families, comma separated.
    #[arg(long, value_delimiter = ',')]
    partition: Vec<String>,
    /// Allow non-integer partition entries.
    #[arg(long)]
    rational_partition: bool,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        let family: Family = self.family.parse()?;
        let mut spec = FamilySpec::new(family, self.rank);
        for p in &self.params {
            spec = spec.with_assignment(p)?;
        }
        if !self.partition.is_empty() {
            let m = self.partition.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            spec = spec.with_partition(m);
        }
        spec.rational_partition = self.rational_partition;
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a family as a configuration file.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Check the vee-condition and the proportionality of the two forms.
    Check { config: PathBuf },
    /// Verify the WDVV equations numerically at seeded sample points.
    Wdvv {
        config: PathBuf,
        /// Coupling `l2`; defaults to the exact value from the forms.
        #[arg(long)]
        lambda_sq: Option<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also check associativity of the product.
        #[arg(long)]
        assoc: bool,
    },
    /// Restrict to the common kernel of some covectors.
    Restrict {
        config: PathBuf,
        /// Indices of parent covectors spanning the subsystem, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "kernel_of")]
        span: Vec<usize>,
        /// A covector (comma separated coordinates), repeatable; the
        /// restriction is to the common kernel without the class check.
        #[arg(long)]
        kernel_of: Vec<String>,
    },
    /// Describe the subsystem spanned by some covectors.
    Subsystem {
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        span: Vec<usize>,
    },
    /// The constants gamma~^2 and gamma^2 of a root system family.
    Gamma {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Enumerate restrictions to flats up to a given corank.
    Catalog {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1)]
        max_corank: usize,
    },
}

/// Result of a command: printable value, summary text and exit status.
struct Outcome {
    value: Value,
    text: String,
    ok: bool,
}

fn read_config(path: &Path) -> Result<Configuration> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    config_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn rat_str(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn opt_rat(r: &Option<Rational>) -> Value {
    r.as_ref().map(rat_str).unwrap_or(Value::Null)
}

fn parse_covector(s: &str) -> Result<CoVec> {
    let coords = s.split(',').map(|x| parse_rational(x.trim())).collect::<Result<Vec<_>, _>>()?;
    Ok(CoVec::new(coords))
}

fn cmd_gen(args: &FamilyArgs) -> Result<Outcome> {
    let cfg = generate(&args.spec()?)?;
    let text = config_to_json(&cfg);
    Ok(Outcome { value: config_to_value(&cfg), text, ok: true })
}

fn cmd_check(path: &Path) -> Result<Outcome> {
    let cfg = read_config(path)?;
    let report = vee_check(&cfg)?;
    let ok = report.passes();
    let failing = report.failing_series().count();
    let text = format!(
        "covectors: {}\nvee: {}\nfailing series: {}\nproportional: {}\nlambda_sq: {}\ng2 independent of positive half: {}\nC-delta warnings: {}\n",
        cfg.len(),
        report.is_vee,
        failing,
        report.proportionality_ok,
        report.lambda_sq.as_ref().map(format_rational).unwrap_or_else(|| "undefined".into()),
        report.g2_positive_independent,
        report.c_delta_warnings.len(),
    );
    Ok(Outcome { value: serde_json::to_value(&report)?, text, ok })
}

fn cmd_wdvv(path: &Path, lambda_sq_arg: Option<&str>, samples: usize, tol: f64, assoc: bool, seed: u64) -> Result<Outcome> {
    let cfg = read_config(path)?;
    let l2 = match lambda_sq_arg {
        Some(s) => parse_rational(s)?,
        None => lambda_sq(&cfg).map_err(|e| anyhow!("no exact l2 for this configuration ({e}); pass --lambda-sq"))?,
    };
    let opts = WdvvOptions::new(samples, seed, tol);
    let report = wdvv_residual(&cfg, &l2, &opts)?;
    let mut value = serde_json::to_value(&report)?;
    let mut text = format!(
        "lambda_sq: {}\nresidual: {:.3e}\ntol: {:e}\npass: {}\n",
        format_rational(&l2),
        report.residual,
        tol,
        report.pass
    );
    let mut ok = report.pass;
    if assoc {
        let a = associativity_residual(&cfg, &l2, &opts)?;
        text.push_str(&format!("associativity residual: {:.3e}\nverdicts agree: {}\n", a.residual, a.agrees));
        ok = ok && a.pass;
        value["associativity"] = serde_json::to_value(&a)?;
    }
    Ok(Outcome { value, text, ok })
}

fn cmd_restrict(path: &Path, span: &[usize], kernel_of: &[String]) -> Result<Outcome> {
    let cfg = read_config(path)?;
    let res = if !kernel_of.is_empty() {
        let covs = kernel_of.iter().map(|s| parse_covector(s)).collect::<Result<Vec<_>>>()?;
        if let Some(c) = covs.iter().find(|c| c.dim() != cfg.dim()) {
            bail!("covector {c} has dimension {}, expected {}", c.dim(), cfg.dim());
        }
        restrict_to_kernel(&cfg, &covs)?
    } else if !span.is_empty() {
        restrict(&cfg, &subsystem(&cfg, span)?)?
    } else {
        bail!("pass --span or --kernel-of");
    };
    let basis: Vec<Vec<Value>> = res.basis.iter().map(|u| u.iter().map(rat_str).collect()).collect();
    let value = json!({
        "child": config_to_value(&res.child),
        "basis": basis,
        "provenance": res.provenance,
    });
    let text = config_to_json(&res.child);
    Ok(Outcome { value, text, ok: true })
}

fn cmd_subsystem(path: &Path, span: &[usize]) -> Result<Outcome> {
    let cfg = read_config(path)?;
    let sub = subsystem(&cfg, span)?;
    let mut value = json!({
        "members": sub.member_indices,
        "span_indices": sub.span_indices,
        "rank": sub.rank(),
        "isotropic": sub.is_isotropic,
    });
    let mut text = format!(
        "members: {:?}\nrank: {}\nisotropic: {}\n",
        sub.member_indices,
        sub.rank(),
        sub.is_isotropic
    );
    let mut ok = true;
    if !sub.is_isotropic {
        let standalone = sub.standalone()?;
        let report = vee_check(&standalone)?;
        ok = report.is_vee;
        value["standalone"] = config_to_value(&standalone);
        value["standalone_is_vee"] = json!(report.is_vee);
        text.push_str(&format!("standalone vee: {}\n", report.is_vee));
        match m_operator(&cfg, &sub) {
            Ok(dec) => {
                let eig: Vec<Value> = dec.eigenvalues.iter().map(rat_str).collect();
                text.push_str(&format!(
                    "eigenvalues: {}\n",
                    dec.eigenvalues.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                ));
                value["eigenvalues"] = Value::Array(eig);
                value["eigenspace_dims"] = json!(dec.eigenspaces.iter().map(Vec::len).collect::<Vec<_>>());
            }
            Err(e) => {
                ok = false;
                text.push_str(&format!("eigen: {e}\n"));
                value["eigen_error"] = json!(e.to_string());
            }
        }
    }
    Ok(Outcome { value, text, ok })
}

/// Short/long multiplicities of the reduced families, as in the tables.
fn gamma_mult(spec: &FamilySpec) -> Result<Option<GammaMult>> {
    Ok(match spec.family {
        Family::A | Family::D | Family::E6 | Family::E7 | Family::E8 => Some(GammaMult::Constant(spec.param("t")?)),
        Family::B | Family::C | Family::G2 => Some(GammaMult::ShortLong { p: spec.param("p")?, q: spec.param("q")? }),
        Family::F4 => Some(GammaMult::ShortLong { p: spec.param("s")?, q: spec.param("r")? }),
        _ => None,
    })
}

fn cmd_gamma(args: &FamilyArgs) -> Result<Outcome> {
    let spec = args.spec()?;
    let rd = RootData::for_family(spec.family, spec.rank)?;
    let cfg = generate(&spec)?;
    let direct = gamma_sq_direct(&cfg, &rd)?;
    let l2 = expected_lambda_sq(&spec)?;
    let (tilde, dual) = match gamma_mult(&spec)? {
        Some(m) => (Some(gamma_tilde_sq(&rd, &m)?), Some(gamma_tilde_sq_dual(&rd, &m)?)),
        None => (None, None),
    };
    let value = json!({
        "family": spec.label(),
        "lambda_sq": rat_str(&l2),
        "gamma_sq": rat_str(&direct),
        "gamma_tilde_sq": opt_rat(&tilde),
        "gamma_tilde_sq_dual": opt_rat(&dual),
    });
    let show = |r: &Option<Rational>| r.as_ref().map(format_rational).unwrap_or_else(|| "n/a".into());
    let text = format!(
        "{}\nlambda_sq: {}\ngamma_sq: {}\ngamma_tilde_sq: {}\ngamma_tilde_sq (dual roots): {}\n",
        spec.label(),
        format_rational(&l2),
        format_rational(&direct),
        show(&tilde),
        show(&dual)
    );
    let ok = tilde == dual;
    Ok(Outcome { value, text, ok })
}

fn cmd_catalog(args: &FamilyArgs, max_corank: usize) -> Result<Outcome> {
    let spec = args.spec()?;
    let cfg = generate(&spec)?;
    let cat = catalog(&cfg, &spec.label(), max_corank)?;
    let ok = cat.entries.iter().all(|e| e.is_vee && e.lambda_preserved);
    let mut value = serde_json::to_value(&cat)?;
    // Single-parameter families scale linearly in t; record l2 / t as well.
    if let (["t"], Ok(t)) = (spec.family.param_names().0, spec.param("t")) {
        if let Some(entries) = value["entries"].as_array_mut() {
            for (e, entry) in entries.iter_mut().zip(&cat.entries) {
                e["lambda_sq_per_t"] = opt_rat(&entry.lambda_sq.as_ref().map(|l| l / &t));
            }
        }
    }
    let mut text = format!("{}: {} entries, {} skipped\n", cat.source, cat.entries.len(), cat.skipped.len());
    for e in &cat.entries {
        text.push_str(&format!(
            "corank {} dim {} covectors {:>3} orbit {:>6} lambda_sq {} vee {} {}\n",
            e.corank,
            e.child_dim,
            e.covector_count,
            e.orbit_size,
            e.lambda_sq.as_ref().map(format_rational).unwrap_or_else(|| "-".into()),
            e.is_vee,
            &e.digest[..12]
        ));
    }
    Ok(Outcome { value, text, ok })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gen { family } => cmd_gen(family),
        Command::Check { config } => cmd_check(config),
        Command::Wdvv { config, lambda_sq, samples, tol, assoc } => {
            cmd_wdvv(config, lambda_sq.as_deref(), *samples, *tol, *assoc, cli.seed)
        }
        Command::Restrict { config, span, kernel_of } => cmd_restrict(config, span, kernel_of),
        Command::Subsystem { config, span } => cmd_subsystem(config, span),
        Command::Gamma { family } => cmd_gamma(family),
        Command::Catalog { family, max_corank } => cmd_catalog(family, *max_corank),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(&outcome.value).expect("serializes");
        s.push('\n');
        s
    } else {
        outcome.text
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
