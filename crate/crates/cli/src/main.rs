use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use zerogap::certification::{
    certify_gap, min_ell_over_mu, minimal_certified_length, MinEll, SearchDomain,
};
use zerogap::explicit_formula::{prime_free_delta, verify, Convention};
use zerogap::extremal::{beurling, fejer, selberg_minorant, windowed_fejer, TestFunctionSummary};
use zerogap::lfunction::{
    bundled_example, c_coefficients_partial, extend_multiplicatively_partial, load_lfunction_file,
};
use zerogap::region_scan::{
    classify_point, format_significant, scan_region, write_csv, ScanConfig,
};
use zerogap::{Error, LFunctionData, Result, TestFunction};

#[derive(Parser)]
#[command(
    name = "zerogap",
    version,
    about = "Zero gaps of L-functions via the explicit formula"
)]
struct Cli {
    /// Worker threads for grid evaluation (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an extremal or kernel function as CSV `t,f(t)`
    EvalExtremal(EvalExtremal),
    /// Certify that every window of a given length contains a zero (JSON)
    CertifyGap(CertifyGap),
    /// Minimum of the archimedean term over the spectral-parameter grid (JSON)
    MinEll(MinEllCmd),
    /// Classify degree-4 spectral pairs (nu1, nu2) on a grid (CSV)
    ScanRegion(ScanRegion),
    /// Evaluate both sides of the explicit formula for a data file (JSON)
    VerifyExample(VerifyExample),
    /// Print derived coefficients a(n) and c(n) for a data file (CSV)
    Coefficients(Coefficients),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Beurling,
    Selberg,
    Fejer,
    WindowedFejer,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum ConventionArg {
    #[default]
    Halved,
    Literal,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Halved => Convention::Halved,
            ConventionArg::Literal => Convention::Literal,
        }
    }
}

fn default_delta() -> f64 {
    prime_free_delta()
}

fn certified_length() -> f64 {
    10.0 * PI / 2f64.ln()
}

#[derive(Args)]
struct FunctionArgs {
    /// Left end of the Selberg window (default -2.5/delta)
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Right end of the Selberg window (default 2.5/delta)
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Transform support radius (default log 2/2pi)
    #[arg(long, default_value_t = default_delta())]
    delta: f64,
    /// Half-width of the positive part of the windowed Fejer kernel
    #[arg(long, default_value_t = 14.13)]
    t0: f64,
}

impl FunctionArgs {
    fn window(&self) -> (f64, f64) {
        let r = 2.5 / self.delta;
        (self.alpha.unwrap_or(-r), self.beta.unwrap_or(r))
    }

    fn build(&self, kind: Kind) -> Result<TestFunction> {
        match kind {
            Kind::Selberg => {
                let (a, b) = self.window();
                selberg_minorant(a, b, self.delta)
            }
            Kind::Fejer => fejer(self.delta),
            Kind::WindowedFejer => windowed_fejer(self.t0, self.delta),
            Kind::Beurling => Err(Error::Domain(
                "the Beurling function is not a test function".into(),
            )),
        }
    }
}

#[derive(Args)]
struct EvalExtremal {
    #[arg(long, value_enum)]
    kind: Kind,
    #[command(flatten)]
    function: FunctionArgs,
    /// First sample point
    #[arg(long, default_value_t = -50.0, allow_hyphen_values = true)]
    from: f64,
    /// Last sample point
    #[arg(long, default_value_t = 50.0, allow_hyphen_values = true)]
    to: f64,
    /// Number of equally spaced samples, endpoints included
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Also sample the Fourier transform on [-delta, delta] as `x,fhat(x)`
    #[arg(long)]
    fourier: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest Re mu on the grid
    #[arg(long, default_value_t = 50.0)]
    re_max: f64,
    /// Largest Im mu on the grid
    #[arg(long, default_value_t = 200.0)]
    im_max: f64,
    /// Grid spacing in both directions
    #[arg(long, default_value_t = 0.25)]
    step: f64,
    /// Digamma argument convention
    #[arg(long, value_enum, default_value_t = ConventionArg::Halved)]
    convention: ConventionArg,
}

impl SearchArgs {
    fn domain(&self) -> SearchDomain<f64> {
        SearchDomain {
            re_max: self.re_max,
            im_max: self.im_max,
            step: self.step,
        }
    }
}

#[derive(Args)]
struct CertifyGap {
    /// Degree of the L-function
    #[arg(long, default_value_t = 4)]
    degree: usize,
    /// Window length (default 10pi/log 2)
    #[arg(long, default_value_t = certified_length())]
    length: f64,
    /// Transform support radius, at most log 2/2pi
    #[arg(long, default_value_t = default_delta())]
    delta: f64,
    #[command(flatten)]
    search: SearchArgs,
    /// Bisect for the shortest certified length instead
    #[arg(long)]
    find_minimal: bool,
    /// Bracket width at which the bisection stops
    #[arg(long, default_value_t = 1e-4)]
    precision: f64,
}

#[derive(Args)]
struct MinEllCmd {
    /// Window length of the Selberg minorant (overrides --alpha/--beta)
    #[arg(long)]
    length: Option<f64>,
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct ScanRegion {
    /// Largest nu on both axes
    #[arg(long, default_value_t = 50.0)]
    nu_max: f64,
    /// Grid spacing
    #[arg(long, default_value_t = 0.25)]
    step: f64,
    /// Height below which a zero is forced
    #[arg(long, default_value_t = 14.13)]
    t0: f64,
    /// Transform support radius, at most log 2/2pi
    #[arg(long, default_value_t = default_delta())]
    delta: f64,
    /// Conductor
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    /// Digamma argument convention
    #[arg(long, value_enum, default_value_t = ConventionArg::Halved)]
    convention: ConventionArg,
    /// Extra point NU1,NU2 to classify in the metadata (repeatable)
    #[arg(long = "point", value_parser = parse_pair, default_values_t = vec![Pair(4.7209, 12.4687)])]
    points: Vec<Pair>,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug)]
struct Pair(f64, f64);

impl std::fmt::Display for Pair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.0, self.1)
    }
}

fn parse_pair(s: &str) -> std::result::Result<Pair, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected NU1,NU2, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(Pair(p(a)?, p(b)?))
}

#[derive(Args)]
struct VerifyExample {
    /// L-function data file (default: the bundled degree-4 example)
    #[arg(long)]
    data: Option<PathBuf>,
    /// Digamma argument convention
    #[arg(long, value_enum, default_value_t = ConventionArg::Halved)]
    convention: ConventionArg,
    /// Test function
    #[arg(long, value_enum, default_value_t = Kind::Selberg)]
    kind: Kind,
    #[command(flatten)]
    function: FunctionArgs,
}

#[derive(Args)]
struct Coefficients {
    /// L-function data file (default: the bundled degree-4 example)
    #[arg(long)]
    data: Option<PathBuf>,
    /// Largest n to print
    #[arg(long, default_value_t = 13)]
    bound: u64,
    /// Exit with status 3 when any coefficient up to the bound is missing
    #[arg(long)]
    strict: bool,
}

fn load(path: &Option<PathBuf>) -> Result<LFunctionData> {
    match path {
        Some(p) => load_lfunction_file(p),
        None => Ok(bundled_example()),
    }
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn g(x: f64) -> String {
    format_significant(x)
}

fn eval_extremal(cmd: &EvalExtremal, out: &mut dyn Write) -> Result<()> {
    if cmd.from.is_nan() || cmd.to.is_nan() || cmd.from > cmd.to || cmd.samples == 0 {
        return Err(Error::Domain(
            "need --from <= --to and --samples >= 1".into(),
        ));
    }
    let f = match cmd.kind {
        Kind::Beurling => {
            if cmd.fourier {
                return Err(Error::Domain(
                    "the Beurling function has no Fourier transform to sample".into(),
                ));
            }
            None
        }
        k => Some(cmd.function.build(k)?),
    };
    let at = |k: usize, lo: f64, hi: f64| {
        if cmd.samples == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (cmd.samples - 1) as f64
        }
    };
    writeln!(out, "t,f(t)")?;
    for k in 0..cmd.samples {
        let t = at(k, cmd.from, cmd.to);
        let v = match &f {
            Some(f) => f.value(t),
            None => beurling(t),
        };
        writeln!(out, "{},{}", g(t), g(v))?;
    }
    if let (true, Some(f)) = (cmd.fourier, &f) {
        let r = f.support_radius();
        writeln!(out)?;
        writeln!(out, "x,fhat(x)")?;
        for k in 0..cmd.samples {
            let x = at(k, -r, r);
            writeln!(out, "{},{}", g(x), g(f.transform(x).re))?;
        }
    }
    Ok(())
}

fn certify(cmd: &CertifyGap, out: &mut dyn Write) -> Result<()> {
    let domain = cmd.search.domain();
    let convention = cmd.search.convention.into();
    if cmd.find_minimal {
        let m =
            minimal_certified_length(cmd.degree, cmd.delta, &domain, convention, cmd.precision)?;
        json(out, &m)
    } else {
        let c = certify_gap(cmd.degree, cmd.length, cmd.delta, &domain, convention)?;
        json(out, &c)
    }
}

#[derive(Serialize)]
struct MinEllReport {
    convention: Convention,
    test_function: TestFunctionSummary<f64>,
    search_domain: SearchDomain<f64>,
    #[serde(flatten)]
    min: MinEll<f64>,
}

fn min_ell(cmd: &MinEllCmd, out: &mut dyn Write) -> Result<()> {
    let (a, b) = match cmd.length {
        Some(l) => (-l / 2.0, l / 2.0),
        None => cmd.function.window(),
    };
    let f = selberg_minorant(a, b, cmd.function.delta)?;
    let convention = cmd.search.convention.into();
    let domain = cmd.search.domain();
    let min = min_ell_over_mu(&f, &domain, convention)?;
    json(
        out,
        &MinEllReport {
            convention,
            test_function: f.summary(),
            search_domain: domain,
            min,
        },
    )
}

fn scan(cmd: &ScanRegion, stdout: &mut dyn Write) -> Result<()> {
    let config = ScanConfig {
        nu_max: cmd.nu_max,
        step: cmd.step,
        t0: cmd.t0,
        delta: cmd.delta,
        conductor: cmd.q,
        convention: cmd.convention.into(),
        ..ScanConfig::default()
    };
    let rows = scan_region(&config)?;
    let mut buf = Vec::new();
    for p in &cmd.points {
        let c = classify_point(p.0, p.1, &config)?;
        writeln!(
            buf,
            "# point nu1={} nu2={} fejer_rhs={} windowed_rhs={} verdict={}",
            g(c.nu1),
            g(c.nu2),
            g(c.fejer_rhs),
            g(c.windowed_rhs),
            c.verdict.as_str()
        )?;
    }
    write_csv(&mut buf, &config, &rows)?;
    match &cmd.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(&buf)?;
            w.flush()?;
        }
        None => stdout.write_all(&buf)?,
    }
    Ok(())
}

fn verify_example(cmd: &VerifyExample, out: &mut dyn Write) -> Result<()> {
    let data = load(&cmd.data)?;
    let f = cmd.function.build(cmd.kind)?;
    let report = verify(&data, &f, cmd.convention.into())?;
    json(out, &report)
}

fn coefficients(cmd: &Coefficients, out: &mut dyn Write) -> Result<()> {
    let data = load(&cmd.data)?;
    let (extended, missing_a) = extend_multiplicatively_partial(&data, cmd.bound);
    let (c, missing_c) = c_coefficients_partial(&data, cmd.bound);
    writeln!(
        out,
        "# a(n): given or derived multiplicatively; c(n): coefficients of L'/L"
    )?;
    let mut missing: Vec<u64> = missing_a.iter().chain(&missing_c).copied().collect();
    missing.sort_unstable();
    missing.dedup();
    let list: Vec<String> = missing.iter().map(|n| n.to_string()).collect();
    writeln!(out, "# missing: {}", list.join(" "))?;
    writeln!(out, "n,source,a_re,a_im,c_re,c_im")?;
    for n in 1..=cmd.bound {
        let source = if data.coefficient(n).is_some() {
            "given"
        } else if extended.coefficient(n).is_some() {
            "derived"
        } else {
            "missing"
        };
        let a = extended
            .coefficient(n)
            .map(|z| (g(z.re), g(z.im)))
            .unwrap_or_default();
        let cn = c.get(n).map(|z| (g(z.re), g(z.im))).unwrap_or_default();
        writeln!(out, "{n},{source},{},{},{},{}", a.0, a.1, cn.0, cn.1)?;
    }
    if cmd.strict && !missing.is_empty() {
        return Err(Error::Incomplete { missing });
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Domain("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Domain(e.to_string()))?;
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::EvalExtremal(c) => eval_extremal(c, &mut out),
        Command::CertifyGap(c) => certify(c, &mut out),
        Command::MinEll(c) => min_ell(c, &mut out),
        Command::ScanRegion(c) => scan(c, &mut out),
        Command::VerifyExample(c) => verify_example(c, &mut out),
        Command::Coefficients(c) => coefficients(c, &mut out),
    }?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed pipe downstream (`| head`) is not a failure
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
