use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fracmod::modcoeffs::{load_or_generate, write_cache, SequenceName};
use fracmod::regularity::{ProbePoint, ScaleRange};
use fracmod::report::{
    parse_rational, run_estimate, run_suite, to_json_pretty, write_all_figures, write_atomic, write_estimate,
    write_plot, EstimateRequest, FigureId, FigurePreset, Method, PlotSpec, Subject, Suite, Verdict,
};
use fracmod::series::Flavor;
use fracmod::Error;

#[derive(Parser)]
#[command(name = "fracmod", version, about = "Fractional integrals of modular forms and their Hölder exponents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a coefficient sequence and write it as a cache file.
    Coeffs(CoeffsArgs),
    /// Plot a preset or a custom series to SVG + CSV.
    Plot(PlotArgs),
    /// Estimate a Hölder exponent and compare it with the prediction.
    Estimate(EstimateArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Write all six figure presets.
    Figures(FiguresArgs),
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long)]
    series: String,
    #[arg(long)]
    n: usize,
    /// Output file (default `<series>.coeffs`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// fig1..fig6; overrides the custom recipe.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    series: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, default_value = "cos")]
    flavor: String,
    /// `lo:hi`
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    terms: Option<usize>,
    /// Output stem: writes `<out>.svg` and `<out>.csv`.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    /// A built-in sequence or a fixture (chirp4, extreme_chirp, power_cusp).
    #[arg(long)]
    series: String,
    /// `p/q` or a decimal; the exponent `s` for power_cusp.
    #[arg(long)]
    alpha: Option<String>,
    /// `p/q`, an integer, or sqrt2m1 | golden | sqrt5m2 | sqrt13m3h.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    point: String,
    #[arg(long, default_value = "cone")]
    method: String,
    /// `j0:j1`
    #[arg(long)]
    scales: Option<String>,
    /// Fit window `j0:j1` (default: the scales).
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, default_value_t = fracmod::report::estimate::DEFAULT_TERMS)]
    terms: usize,
    /// Output stem: writes `<out>.csv` (scan) and `<out>.json` (report).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "quick")]
    suite: String,
    /// JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct FiguresArgs {
    #[arg(long, default_value = "figures")]
    out: PathBuf,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

fn parse_range(s: &str) -> fracmod::Result<(f64, f64)> {
    let bad = || Error::Input(format!("range `{s}` is not lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn coeffs(args: CoeffsArgs) -> fracmod::Result<ExitCode> {
    let name: SequenceName = args.series.parse()?;
    let seq = load_or_generate(name, args.n, None)?;
    let out = args.out.unwrap_or_else(|| PathBuf::from(format!("{name}.coeffs")));
    write_cache(&seq, &out)?;
    println!("wrote {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn plot(args: PlotArgs) -> fracmod::Result<ExitCode> {
    let mut spec = match &args.preset {
        Some(p) => FigurePreset::get(p.parse::<FigureId>()?).plot,
        None => {
            let need = |v: &Option<String>, flag: &str| {
                v.clone().ok_or_else(|| Error::Input(format!("--{flag} is required without --preset")))
            };
            let series: SequenceName = need(&args.series, "series")?.parse()?;
            let alpha = parse_rational(&need(&args.alpha, "alpha")?)?;
            let range = parse_range(&need(&args.range, "range")?)?;
            let flavor: Flavor = args.flavor.parse()?;
            PlotSpec {
                series,
                alpha: fracmod::modcoeffs::rational_to_f64(alpha),
                flavor,
                range,
                samples: fracmod::report::figures::DEFAULT_SAMPLES,
                terms: 1 << 17,
                caption: format!("{series}, alpha = {alpha}, {flavor}"),
            }
        }
    };
    if let Some(s) = args.samples {
        spec.samples = s;
    }
    if let Some(t) = args.terms {
        spec.terms = t;
    }
    let (svg, csv) = write_plot(&spec, &args.out, args.cache_dir.as_deref())?;
    println!("wrote {} and {}", svg.display(), csv.display());
    Ok(ExitCode::SUCCESS)
}

fn estimate(args: EstimateArgs) -> fracmod::Result<ExitCode> {
    let point: ProbePoint = args.point.parse()?;
    let method: Method = args.method.parse()?;
    let alpha = args.alpha.as_deref().map(parse_rational).transpose()?;
    let subject = Subject::resolve(&args.series, alpha, point, args.terms, args.cache_dir.as_deref())?;
    let mut request = EstimateRequest::new(subject, point, method);
    request.scales = args.scales.as_deref().map(str::parse::<ScaleRange>).transpose()?;
    request.window = args.window.as_deref().map(str::parse::<ScaleRange>).transpose()?;
    request.tolerance = args.tolerance;
    request.terms = args.terms;
    let report = run_estimate(&request)?;
    print!("{}", to_json_pretty(&report)?);
    if let Some(stem) = &args.out {
        let (csv, json) = write_estimate(&report, stem)?;
        eprintln!("wrote {} and {}", csv.display(), json.display());
    }
    Ok(if report.verdict == Verdict::Fail { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn verify(args: VerifyArgs) -> fracmod::Result<ExitCode> {
    let suite: Suite = args.suite.parse()?;
    let table = run_suite(suite, args.cache_dir.as_deref())?;
    print!("{}", table.render_text());
    if let Some(out) = &args.out {
        write_atomic(out, to_json_pretty(&table)?.as_bytes())?;
    }
    Ok(if table.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn figures(args: FiguresArgs) -> fracmod::Result<ExitCode> {
    for (svg, csv) in write_all_figures(&args.out, args.cache_dir.as_deref())? {
        println!("wrote {} and {}", svg.display(), csv.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Coeffs(a) => coeffs(a),
        Command::Plot(a) => plot(a),
        Command::Estimate(a) => estimate(a),
        Command::Verify(a) => verify(a),
        Command::Figures(a) => figures(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Input(_) | Error::Inapplicable(_) | Error::DerivativeUnavailable { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
