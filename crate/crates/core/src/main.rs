//! `benford-lab` — first-digit analysis of parametric laws and datasets.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use benford_lab::bounds::BoundReport;
use benford_lab::cli::{
    ingest_csv, law_report, ColumnSelector, EmpiricalReport, MixReport, ProfileSummary,
    SCHEMA_VERSION,
};
use benford_lab::density::{digit_distribution, stack, total_variation_torus};
use benford_lab::digitcore::benford_vector;
use benford_lab::laws::LawSpec;
use benford_lab::mixer::{dilation_pairing, roulette_black_probability, scale_mix_exact, scale_mix_mc};
use benford_lab::{DigitDistribution, Error};

#[derive(Parser)]
#[command(
    name = "benford-lab",
    about = "First-digit distributions, mantissa densities, and deviation-from-Benford bounds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit the report as JSON (default is a table).
    #[arg(long, global = true)]
    json: bool,
    /// Emit the report as a table (the default).
    #[arg(long, global = true, conflicts_with = "json")]
    table: bool,
}

#[derive(Args)]
struct LawArgs {
    /// Law family: exponential | uniform | lognormal | pareto1 | reciprocal |
    /// step_benford | affine_benford | periodic_nines | annoying_f0 |
    /// triangular_bumps
    #[arg(long)]
    family: Option<String>,
    /// JSON law document {"family": "...", "params": {...}} (alternative to --family).
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Rate of the exponential law.
    #[arg(long)]
    lambda: Option<f64>,
    /// Lower endpoint of the uniform law.
    #[arg(long)]
    a: Option<f64>,
    /// Upper endpoint of the uniform law.
    #[arg(long)]
    b: Option<f64>,
    /// Log-mean of the log-normal law (natural log).
    #[arg(long)]
    mu: Option<f64>,
    /// Log-standard-deviation of the log-normal law (natural log).
    #[arg(long)]
    sigma: Option<f64>,
    /// Tail index of the Pareto law.
    #[arg(long)]
    alpha: Option<f64>,
    /// Scale (left endpoint) of the Pareto law.
    #[arg(long)]
    x0: Option<f64>,
    /// Lower decade exponent (reciprocal, periodic_nines).
    #[arg(long)]
    p: Option<i32>,
    /// Upper decade exponent (reciprocal, periodic_nines).
    #[arg(long)]
    q: Option<i32>,
    /// Step weights as n:γ pairs, e.g. "-1:0.3,2:0.7".
    #[arg(long)]
    weights: Option<String>,
    /// First integer knot of the affine law.
    #[arg(long)]
    start: Option<i64>,
    /// Knot values of the affine law, e.g. "0,1,0".
    #[arg(long)]
    values: Option<String>,
    /// Number of triangular bumps.
    #[arg(long)]
    bumps: Option<u32>,
}

#[derive(Args)]
struct ToleranceArgs {
    /// Stacking/truncation tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Grid size for deviation measurement.
    #[arg(long, default_value_t = 10_000)]
    grid: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a law: digits, profile, and the bound ladder.
    Law {
        #[command(flatten)]
        law: LawArgs,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Deviation bounds (GD, DL, Pinkham) and measured deviations for a law.
    Bounds {
        #[command(flatten)]
        law: LawArgs,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Stacked mantissa profile of a law: window, truncation, variation.
    Stack {
        #[command(flatten)]
        law: LawArgs,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Stack a piecewise-linear log-density from a JSON file instead of a law.
        #[arg(long, value_name = "FILE", conflicts_with = "family")]
        density_json: Option<PathBuf>,
    },
    /// Scale-mix a law: X = 10^U·X₀ (exactly Benford by the mixing theorem).
    Mix {
        #[command(flatten)]
        law: LawArgs,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Use the exact integration route (default).
        #[arg(long)]
        exact: bool,
        /// Monte Carlo sample count; switches to the sampling route.
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for the Monte Carlo route.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dilation pairing ⟨φ, g_λ⟩ for the law's log-density.
    Dilate {
        #[command(flatten)]
        law: LawArgs,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Window fraction z of the indicator comb.
        #[arg(long)]
        z: f64,
        /// Dilation scale λ.
        #[arg(long)]
        dilation: f64,
    },
    /// Roulette black-arc probability under the law's mantissa profile.
    Roulette {
        #[command(flatten)]
        law: LawArgs,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Number of black/red arc pairs.
        #[arg(long)]
        arcs: u32,
    },
    /// Check a CSV column of positive values against the Benford law.
    Empirical {
        /// Input file (comma-separated; decimal points, no thousands separators).
        path: PathBuf,
        /// Column to ingest: 0-based index or header name.
        #[arg(long)]
        column: ColumnSelector,
        /// Treat the first row as data, not a header.
        #[arg(long)]
        no_header: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_weights(s: &str) -> Result<Vec<(i64, f64)>, Error> {
    s.split(',')
        .map(|pair| {
            let (n, g) = pair
                .split_once(':')
                .ok_or_else(|| Error::InvalidSpec(format!("weight {pair:?} is not n:γ")))?;
            Ok((
                n.trim()
                    .parse()
                    .map_err(|e| Error::InvalidSpec(format!("weight index {n:?}: {e}")))?,
                g.trim()
                    .parse()
                    .map_err(|e| Error::InvalidSpec(format!("weight value {g:?}: {e}")))?,
            ))
        })
        .collect()
}

fn parse_values(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|e| Error::InvalidSpec(format!("knot value {v:?}: {e}")))
        })
        .collect()
}

impl LawArgs {
    fn resolve(&self) -> Result<LawSpec, Error> {
        if let Some(path) = &self.spec {
            let doc = std::fs::read_to_string(path).map_err(|e| Error::UnreadableInput {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?;
            return LawSpec::from_json(&doc);
        }
        let family = self
            .family
            .as_deref()
            .ok_or_else(|| Error::InvalidSpec("pass --family or --spec".into()))?;
        let missing = |flag: &str| Error::InvalidSpec(format!("{family} needs --{flag}"));
        Ok(match family {
            "exponential" => LawSpec::Exponential {
                lambda: self.lambda.ok_or_else(|| missing("lambda"))?,
            },
            "uniform" => LawSpec::Uniform {
                a: self.a.ok_or_else(|| missing("a"))?,
                b: self.b.ok_or_else(|| missing("b"))?,
            },
            "lognormal" => LawSpec::Lognormal {
                mu: self.mu.unwrap_or(0.0),
                sigma: self.sigma.ok_or_else(|| missing("sigma"))?,
            },
            "pareto1" => LawSpec::Pareto1 {
                alpha: self.alpha.ok_or_else(|| missing("alpha"))?,
                x0: self.x0.ok_or_else(|| missing("x0"))?,
            },
            "reciprocal" => LawSpec::Reciprocal {
                p: self.p.ok_or_else(|| missing("p"))?,
                q: self.q.ok_or_else(|| missing("q"))?,
            },
            "step_benford" => LawSpec::StepBenford {
                weights: parse_weights(
                    self.weights.as_deref().ok_or_else(|| missing("weights"))?,
                )?,
            },
            "affine_benford" => LawSpec::AffineBenford {
                start: self.start.ok_or_else(|| missing("start"))?,
                values: parse_values(
                    self.values.as_deref().ok_or_else(|| missing("values"))?,
                )?,
            },
            "periodic_nines" => LawSpec::PeriodicNines {
                p: self.p.ok_or_else(|| missing("p"))?,
                q: self.q.ok_or_else(|| missing("q"))?,
            },
            "annoying_f0" => LawSpec::AnnoyingF0,
            "triangular_bumps" => LawSpec::TriangularBumps {
                n: self.bumps.ok_or_else(|| missing("bumps"))?,
            },
            other => return Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        })
    }
}

#[derive(Serialize)]
struct StackReport {
    schema_version: u32,
    law: Option<LawSpec>,
    tol: f64,
    profile: ProfileSummary,
    digit_distribution: DigitDistribution,
    max_abs_dev_from_benford: f64,
    /// Normalization factor recorded by the piecewise-linear loader.
    normalization: Option<f64>,
}

#[derive(Serialize)]
struct BoundsReport {
    schema_version: u32,
    law: LawSpec,
    tol: f64,
    bounds: BoundReport,
}

#[derive(Serialize)]
struct DilationReport {
    schema_version: u32,
    law: LawSpec,
    z: f64,
    dilation: f64,
    pairing: f64,
    abs_gap_to_z: f64,
}

#[derive(Serialize)]
struct RouletteReport {
    schema_version: u32,
    law: LawSpec,
    arcs: u32,
    black_probability: f64,
    abs_gap_to_half: f64,
}

fn digit_table(label: &str, digits: &DigitDistribution) -> String {
    let benford = benford_vector();
    let mut out = String::new();
    out.push_str(&format!("{:>5}  {:>12}  {:>12}  {:>12}\n", "digit", label, "benford", "gap"));
    for (k, p) in digits.entries() {
        let b = benford.p(k);
        out.push_str(&format!("{k:>5}  {p:>12.8}  {b:>12.8}  {:>12.2e}\n", p - b));
    }
    out
}

fn emit<T: Serialize>(report: &T, as_json: bool, table: String) {
    use std::io::Write;
    let text = if as_json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        s
    } else {
        table
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        // downstream closed the pipe; nothing left to say
        std::process::exit(0);
    }
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Law { law, tolerance, output } => {
            let spec = law.resolve()?;
            let report = law_report(&spec, tolerance.tol, tolerance.grid)?;
            let mut table = digit_table("law", &report.digit_distribution);
            table.push_str(&format!(
                "max |p - benford| = {:.6e}\nwindow = [{}, {}], truncation ≤ {:.3e}\n",
                report.max_abs_dev_from_benford,
                report.profile.window.0,
                report.profile.window.1,
                report.profile.truncation_error,
            ));
            table.push_str(&bounds_table(&report.bounds));
            emit(&report, output.json, table);
        }
        Command::Bounds { law, tolerance, output } => {
            let spec = law.resolve()?;
            let g = spec.g_model()?;
            let profile = stack(&g, tolerance.tol)?;
            let bounds = BoundReport::build(&g, &profile, tolerance.grid)?;
            let table = bounds_table(&bounds);
            emit(
                &BoundsReport { schema_version: SCHEMA_VERSION, law: spec, tol: tolerance.tol, bounds },
                output.json,
                table,
            );
        }
        Command::Stack { law, tolerance, output, density_json } => {
            let (label, g, normalization) = match &density_json {
                Some(path) => {
                    let doc = std::fs::read_to_string(path).map_err(|e| Error::UnreadableInput {
                        path: path.display().to_string(),
                        reason: e.to_string(),
                    })?;
                    let (g, factor) =
                        benford_lab::DensityModel::piecewise_linear_from_json(&doc)?;
                    (None, g, Some(factor))
                }
                None => {
                    let spec = law.resolve()?;
                    let g = spec.g_model()?;
                    (Some(spec), g, None)
                }
            };
            let profile = stack(&g, tolerance.tol)?;
            let digits = digit_distribution(&profile)?;
            let benford = benford_vector();
            let report = StackReport {
                schema_version: SCHEMA_VERSION,
                law: label,
                tol: tolerance.tol,
                profile: ProfileSummary {
                    window: profile.window(),
                    truncation_error: profile.truncation_error(),
                    tv_torus: total_variation_torus(&profile).ok(),
                },
                max_abs_dev_from_benford: digits.max_abs_dev(&benford),
                digit_distribution: digits,
                normalization,
            };
            let mut table = digit_table("stacked", &report.digit_distribution);
            table.push_str(&format!(
                "window = [{}, {}], truncation ≤ {:.3e}\n",
                report.profile.window.0, report.profile.window.1, report.profile.truncation_error
            ));
            if let Some(tv) = report.profile.tv_torus {
                table.push_str(&format!("TV(ḡ) on torus = {tv:.9}\n"));
            }
            emit(&report, output.json, table);
        }
        Command::Mix { law, tolerance, output, exact, samples, seed } => {
            let spec = law.resolve()?;
            let result = match samples {
                Some(n) if !exact => {
                    let f = spec.f_model()?;
                    let sampler = move |rng: &mut rand_chacha::ChaCha8Rng| {
                        use rand::Rng;
                        let u: f64 = rng.random();
                        f.quantile(u)
                    };
                    scale_mix_mc(sampler, n, seed)?
                }
                _ => {
                    let g = spec.g_model()?;
                    scale_mix_exact(&g, tolerance.tol)?
                }
            };
            let benford = benford_vector();
            let report = MixReport {
                schema_version: SCHEMA_VERSION,
                law: spec,
                max_abs_dev_from_benford: result.digit_dist.max_abs_dev(&benford),
                result,
            };
            let mut table = digit_table("mixed", &report.result.digit_dist);
            table.push_str(&format!(
                "max |p - benford| = {:.6e}\n",
                report.max_abs_dev_from_benford
            ));
            emit(&report, output.json, table);
        }
        Command::Dilate { law, tolerance, output, z, dilation } => {
            let spec = law.resolve()?;
            let g = spec.g_model()?;
            let pairing = dilation_pairing(&g, z, dilation, tolerance.tol)?;
            let report = DilationReport {
                schema_version: SCHEMA_VERSION,
                law: spec,
                z,
                dilation,
                pairing,
                abs_gap_to_z: (pairing - z).abs(),
            };
            emit(
                &report,
                output.json,
                format!(
                    "⟨φ, g_λ⟩ = {pairing:.9} at z = {z}, λ = {dilation} (gap {:.3e})\n",
                    report.abs_gap_to_z
                ),
            );
        }
        Command::Roulette { law, tolerance, output, arcs } => {
            let spec = law.resolve()?;
            let g = spec.g_model()?;
            let profile = stack(&g, tolerance.tol)?;
            let black = roulette_black_probability(&profile, arcs)?;
            let report = RouletteReport {
                schema_version: SCHEMA_VERSION,
                law: spec,
                arcs,
                black_probability: black,
                abs_gap_to_half: (black - 0.5).abs(),
            };
            emit(
                &report,
                output.json,
                format!(
                    "P(black) = {black:.9} with {arcs} arc pairs (gap to 1/2: {:.3e})\n",
                    report.abs_gap_to_half
                ),
            );
        }
        Command::Empirical { path, column, no_header, output } => {
            let empirical = ingest_csv(&path, &column, !no_header)?;
            let report = EmpiricalReport {
                schema_version: SCHEMA_VERSION,
                source: path.display().to_string(),
                column: column.to_string(),
                empirical,
                benford: benford_vector(),
            };
            let mut table = digit_table("empirical", &report.empirical.freqs);
            table.push_str(&format!(
                "n = {}, skipped = {}, max |freq - benford| = {:.6}, chi² (8 dof) = {:.4}\n",
                report.empirical.n_total,
                report.empirical.n_skipped,
                report.empirical.max_abs_dev,
                report.empirical.chi_square
            ));
            emit(&report, output.json, table);
        }
    }
    Ok(())
}

fn bounds_table(b: &BoundReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("max g            = {:.9}\n", b.max_g));
    match b.tv_g {
        Some(tv) => out.push_str(&format!("TV(g)            = {tv:.9}\n")),
        None => out.push_str("TV(g)            = unavailable\n"),
    }
    match b.gd_bound {
        Some(gd) => out.push_str(&format!("GD bound 2·max g = {gd:.9}\n")),
        None => out.push_str("GD bound 2·max g = inapplicable (not unimodal)\n"),
    }
    if let Some(dl) = b.dl_uniform_bound {
        out.push_str(&format!("DL bound TV/8    = {dl:.9}\n"));
    }
    if let Some(pk) = b.pinkham_bound {
        out.push_str(&format!("Pinkham TV/6     = {pk:.9}\n"));
    }
    out.push_str(&format!(
        "measured sup |Ḡ(z) − z| = {:.9}\nmeasured digit gap      = {:.9}\noscillation of ḡ        = {:.9}\n",
        b.measured_sup_dev, b.measured_digit_dev, b.oscillation
    ));
    out
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("benford-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
