mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use graftlab::hyperbolic::{CrossingOptions, FuchsianModel};
use graftlab::kleinian::{
    circle_fit, converge_experiment, limit_set, ptor_group, quotient_torus_pullback, ConvergeOptions, GroupSpec,
    KleinianError, LimitSetSample, Mobius, Point, Root, StepOutcome, TracePair,
};
use graftlab::multicurve::{CurveCalculus, GraftDirection, Mode, Multicurve, MulticurveError};
use graftlab::raster::{raster_slice, render_points, write_ppm, Palette, RasterError, Region, SliceOptions};

use config::Config;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Usage(_) | CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }
}

impl From<MulticurveError> for CliError {
    fn from(e: MulticurveError) -> Self {
        match e {
            MulticurveError::Parse { .. } | MulticurveError::Word(_) => CliError::Usage(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<KleinianError> for CliError {
    fn from(e: KleinianError) -> Self {
        match e {
            KleinianError::Parse { .. } => CliError::Usage(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<RasterError> for CliError {
    fn from(e: RasterError) -> Self {
        match e {
            RasterError::IoFailure(m) => CliError::Io(m),
            e => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult = Result<String, CliError>;

#[derive(Parser)]
#[command(name = "graftlab", version, about = "Multicurve smoothing calculus and punctured-torus Kleinian groups")]
struct Cli {
    /// key=value settings file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (0 = automatic).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multicurve operations on a closed surface.
    Mc {
        #[command(subcommand)]
        op: McOp,
    },
    /// Sample the limit set of a punctured-torus group.
    Limset(LimsetArgs),
    /// Rasterize the discreteness screen over a slice of trace space.
    Slice(SliceArgs),
    /// Project a limit set to the quotient torus of a loxodromic element.
    Pullback(PullbackArgs),
    /// Hausdorff distances along a path of trace pairs.
    Converge(ConvergeArgs),
    /// Inspect settings.
    Config {
        #[command(subcommand)]
        op: ConfigOp,
    },
    /// Inspect the Fuchsian model.
    Model {
        #[command(subcommand)]
        op: ModelOp,
    },
}

#[derive(Args)]
struct Surface {
    #[arg(long, default_value_t = 2)]
    genus: u32,
}

#[derive(Args)]
struct Pair {
    #[command(flatten)]
    surface: Surface,
    /// First multicurve, `weight*word` parts separated by `;` or newlines.
    #[arg(short = 'l', long = "lambda")]
    lambda: String,
    /// Second multicurve.
    #[arg(short = 'm', long = "mu")]
    mu: String,
}

#[derive(Subcommand)]
enum McOp {
    /// Geometric intersection number of two multicurves.
    Intersect {
        #[command(flatten)]
        surface: Surface,
        /// Exactly two multicurves.
        #[arg(short = 'c', long = "curve", num_args = 1)]
        curves: Vec<String>,
    },
    /// Resolve every crossing of the pair in the given direction.
    Smooth {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Component label reached by grafting along the pair.
    GraftLabel {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "plus")]
        direction: DirectionArg,
    },
    /// Canonical form of the union of the given parts.
    Normalize {
        #[command(flatten)]
        surface: Surface,
        #[arg(short = 'c', long = "curve", num_args = 1)]
        curves: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sharp,
    Flat,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum RootArg {
    Plus,
    Minus,
}

impl From<RootArg> for Root {
    fn from(r: RootArg) -> Root {
        match r {
            RootArg::Plus => Root::Plus,
            RootArg::Minus => Root::Minus,
        }
    }
}

#[derive(Args)]
struct GroupArgs {
    /// Traces of the two generators, e.g. `3 3+0.5i`.
    #[arg(long, num_args = 2, value_parser = parse_complex, allow_hyphen_values = true)]
    traces: Vec<Complex64>,
    #[arg(long, value_enum, default_value = "minus")]
    root: RootArg,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Args)]
struct LimsetArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Sample file to write.
    #[arg(short = 'o', long)]
    output: PathBuf,
    /// Optional PPM image of the sample.
    #[arg(long)]
    ppm: Option<PathBuf>,
    #[arg(long, default_value_t = 512)]
    res: usize,
}

#[derive(Args)]
struct SliceArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    center: Complex64,
    /// Width of the region in the trace plane.
    #[arg(long)]
    span: f64,
    /// Pixels per side.
    #[arg(long)]
    res: usize,
    #[arg(long = "fixed-y", value_parser = parse_complex, allow_hyphen_values = true)]
    fixed_y: Complex64,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long, value_enum, default_value = "minus")]
    root: RootArg,
    #[arg(long)]
    supersample: bool,
    #[arg(short = 'o', long)]
    output: PathBuf,
    /// Optional `0/1/2` grid dump.
    #[arg(long)]
    grid: Option<PathBuf>,
}

#[derive(Args)]
struct PullbackArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Word in `a b A B` naming the loxodromic element.
    #[arg(long)]
    eta: String,
    /// Read the sample from a file instead of computing it.
    #[arg(short = 'i', long)]
    input: Option<PathBuf>,
    /// Torus representatives, one `re im` pair per line.
    #[arg(short = 'o', long)]
    output: PathBuf,
    #[arg(long)]
    ppm: Option<PathBuf>,
    #[arg(long, default_value_t = 512)]
    res: usize,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Trace pairs `x,y` separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    path: String,
    #[arg(long, allow_hyphen_values = true)]
    terminal: String,
    #[arg(long, value_enum, default_value = "minus")]
    root: RootArg,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long = "bq-depth")]
    bq_depth: Option<u32>,
}

#[derive(Subcommand)]
enum ConfigOp {
    /// Print the effective settings.
    Show,
}

#[derive(Subcommand)]
enum ModelOp {
    /// Print the generator matrices.
    Dump {
        #[command(flatten)]
        surface: Surface,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<Complex64>().map_err(|_| format!("`{s}` is not a complex number"))
}

/// `re+imi` with negative zeros cleared.
fn fmt_complex(z: Complex64) -> String {
    format!("{}{:+}i", z.re + 0.0, z.im + 0.0)
}

fn parse_pair(s: &str) -> Result<TracePair, CliError> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("expected `x,y`, got `{s}`")))?;
    Ok((parse_complex(x).map_err(CliError::Usage)?, parse_complex(y).map_err(CliError::Usage)?))
}

fn load_config(cli: &Cli) -> Result<Config, CliError> {
    let mut config = Config::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        config.apply_text(&text).map_err(CliError::Usage)?;
    }
    if let Some(t) = cli.threads {
        config.threads = t;
    }
    Ok(config)
}

fn output_path(config: &Config, path: &Path) -> PathBuf {
    config.output_dir.join(path)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn calculus(config: &Config, genus: u32) -> Result<CurveCalculus, CliError> {
    let model = FuchsianModel::standard(genus).map_err(|e| CliError::Usage(e.to_string()))?;
    let residual = model.relator_residual();
    if residual > config.relator_tolerance {
        return Err(CliError::Domain(format!(
            "relator residual {residual:e} above tolerance {:e}",
            config.relator_tolerance
        )));
    }
    let options = CrossingOptions {
        dedup_tol: config.dedup_tolerance,
        degenerate_tol: config.crossing_tolerance,
        ..CrossingOptions::default()
    };
    Ok(CurveCalculus::with_model(model).with_options(options).with_word_cap(config.word_cap))
}

fn multicurve(calc: &CurveCalculus, text: &str) -> Result<Multicurve, CliError> {
    Ok(calc.parse_multicurve(&text.replace(';', "\n"))?)
}

fn cmd_mc(config: &Config, op: McOp) -> CliResult {
    match op {
        McOp::Intersect { surface, curves } => {
            let [c, d] = curves.as_slice() else {
                return Err(CliError::Usage(format!("intersect needs exactly two -c curves, got {}", curves.len())));
            };
            let calc = calculus(config, surface.genus)?;
            let (l, m) = (multicurve(&calc, c)?, multicurve(&calc, d)?);
            Ok(format!("{}\n", calc.intersection_number(&l, &m)?))
        }
        McOp::Smooth { pair, mode } => {
            let calc = calculus(config, pair.surface.genus)?;
            let (l, m) = (multicurve(&calc, &pair.lambda)?, multicurve(&calc, &pair.mu)?);
            let mode = match mode {
                ModeArg::Sharp => Mode::Sharp,
                ModeArg::Flat => Mode::Flat,
            };
            Ok(calc.smooth(&l, &m, mode)?.to_string())
        }
        McOp::GraftLabel { pair, direction } => {
            let calc = calculus(config, pair.surface.genus)?;
            let (l, m) = (multicurve(&calc, &pair.lambda)?, multicurve(&calc, &pair.mu)?);
            let direction = match direction {
                DirectionArg::Plus => GraftDirection::Plus,
                DirectionArg::Minus => GraftDirection::Minus,
            };
            Ok(calc.graft_component_label(&l, &m, direction)?.to_string())
        }
        McOp::Normalize { surface, curves } => {
            let calc = calculus(config, surface.genus)?;
            multicurve(&calc, &curves.join("\n")).map(|m| m.to_string())
        }
    }
}

fn group(args: &GroupArgs) -> Result<GroupSpec, CliError> {
    let [x, y] = args.traces.as_slice() else {
        return Err(CliError::Usage("--traces needs two values".into()));
    };
    Ok(ptor_group(*x, *y, args.root.into())?)
}

fn sample_settings(config: &Config, args: &GroupArgs) -> (f64, usize) {
    (args.eps.unwrap_or(config.eps), args.depth.unwrap_or(config.depth))
}

/// Runs the enumeration; a budget overrun still yields the partial sample.
fn sample(config: &Config, args: &GroupArgs) -> Result<(LimitSetSample, Option<CliError>), CliError> {
    let (eps, depth) = sample_settings(config, args);
    match limit_set(&group(args)?, eps, depth) {
        Ok(s) => Ok((s, None)),
        Err(KleinianError::BudgetExceeded { budget, partial }) => Ok((
            *partial,
            Some(CliError::Domain(format!("enumeration stopped after {budget} nodes; sample is incomplete"))),
        )),
        Err(e) => Err(e.into()),
    }
}

fn bounding_region(points: impl Iterator<Item = Complex64>, res: usize) -> Option<Region> {
    let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    for z in points {
        lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
    }
    if !lo.re.is_finite() {
        return None;
    }
    // pad so the extreme points land inside
    let pad = 0.01 * (hi.re - lo.re).max(hi.im - lo.im).max(1e-9);
    let pad = Complex64::new(pad, pad);
    Some(Region::bounding(lo - pad, hi + pad, res))
}

fn write_image(config: &Config, path: &Path, points: &[Point], res: usize) -> Result<String, CliError> {
    let Some(region) = bounding_region(points.iter().filter_map(|p| p.finite()), res) else {
        return Ok("image skipped: no finite points\n".into());
    };
    let image = render_points(points, &region)?;
    let mut bytes = Vec::new();
    write_ppm(&image.raster, &Palette::default(), &mut bytes)?;
    let path = output_path(config, path);
    write_file(&path, &bytes)?;
    Ok(format!(
        "image {} ({}x{}, {} points outside)\n",
        path.display(),
        image.raster.width(),
        image.raster.height(),
        image.dropped
    ))
}

fn cmd_limset(config: &Config, args: LimsetArgs) -> Result<(String, Option<CliError>), CliError> {
    let (s, warning) = sample(config, &args.group)?;
    let path = output_path(config, &args.output);
    write_file(&path, s.to_text().as_bytes())?;
    let mut out = format!("points {}\nwrote {}\n", s.points.len(), path.display());
    match circle_fit(&s.points) {
        Ok(fit) => out.push_str(&format!(
            "circle center {} radius {:.12} max residual {:.3e}\n",
            fmt_complex(fit.center), fit.radius, fit.max_residual
        )),
        Err(e) => out.push_str(&format!("circle fit: {e}\n")),
    }
    if let Some(ppm) = &args.ppm {
        out.push_str(&write_image(config, ppm, &s.points, args.res)?);
    }
    Ok((out, warning))
}

fn cmd_slice(config: &Config, args: SliceArgs) -> CliResult {
    if !(args.span > 0.0 && args.span.is_finite()) {
        return Err(CliError::Usage(format!("--span must be positive, got {}", args.span)));
    }
    let region = Region::centered(args.center, args.span, args.res, args.res);
    let options = SliceOptions {
        depth: args.depth.unwrap_or(config.bq_depth),
        root: args.root.into(),
        threads: (config.threads > 0).then_some(config.threads),
        supersample: args.supersample,
    };
    let raster = raster_slice(&region, args.fixed_y, &options)?;
    let mut bytes = Vec::new();
    let n = write_ppm(&raster, &Palette::default(), &mut bytes)?;
    let path = output_path(config, &args.output);
    write_file(&path, &bytes)?;
    let mut out = format!("wrote {} ({n} bytes)\n", path.display());
    if let Some(grid) = &args.grid {
        let grid = output_path(config, grid);
        write_file(&grid, raster.to_grid_text().as_bytes())?;
        out.push_str(&format!("wrote {}\n", grid.display()));
    }
    out.push_str(&format!(
        "pass {} fail {} error {}\n",
        raster.count(graftlab::raster::Class::Pass),
        raster.count(graftlab::raster::Class::Fail),
        raster.count(graftlab::raster::Class::Error)
    ));
    Ok(out)
}

fn eta_word(g: &GroupSpec, word: &str) -> Result<Mobius, CliError> {
    let [a, b] = g.generators.as_slice() else {
        return Err(CliError::Usage("group must have two generators".into()));
    };
    let mut m = Mobius::identity();
    for ch in word.chars() {
        let next = match ch {
            'a' => *a,
            'A' => a.inverse(),
            'b' => *b,
            'B' => b.inverse(),
            other => return Err(CliError::Usage(format!("unknown letter `{other}` in --eta (use a b A B)"))),
        };
        m = m * next;
    }
    Ok(m)
}

fn cmd_pullback(config: &Config, args: PullbackArgs) -> CliResult {
    let g = group(&args.group)?;
    let eta = eta_word(&g, &args.eta)?;
    let points = match &args.input {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            LimitSetSample::from_text(&text)?.points
        }
        None => {
            let (s, warning) = sample(config, &args.group)?;
            if let Some(w) = warning {
                return Err(w);
            }
            s.points
        }
    };
    let torus = quotient_torus_pullback(&points, &eta)?;
    let mut text = String::new();
    for w in &torus.points {
        text.push_str(&format!("{:.16e} {:.16e}\n", w.re, w.im));
    }
    let path = output_path(config, &args.output);
    write_file(&path, text.as_bytes())?;
    let (l1, l2) = torus.lattice;
    let mut out = format!(
        "multiplier {}\nlattice {} {}\npoints {} dropped {}\nwrote {}\n",
        fmt_complex(torus.multiplier),
        fmt_complex(l1),
        fmt_complex(l2),
        torus.points.len(),
        torus.dropped,
        path.display()
    );
    if let Some(ppm) = &args.ppm {
        let cloud: Vec<Point> = torus.points.iter().map(|&w| Point::Finite(w)).collect();
        out.push_str(&write_image(config, ppm, &cloud, args.res)?);
    }
    Ok(out)
}

fn cmd_converge(config: &Config, args: ConvergeArgs) -> CliResult {
    let path = args
        .path
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_pair)
        .collect::<Result<Vec<_>, _>>()?;
    let terminal = parse_pair(&args.terminal)?;
    let options = ConvergeOptions {
        eps: args.eps.unwrap_or(config.eps),
        depth: args.depth.unwrap_or(config.depth),
        bq_depth: args.bq_depth.unwrap_or(config.bq_depth),
        root: args.root.into(),
    };
    let steps = converge_experiment(&path, terminal, &options)?;
    let mut out = String::new();
    for s in steps {
        let (x, y) = (fmt_complex(s.parameter.0), fmt_complex(s.parameter.1));
        match s.outcome {
            StepOutcome::Distance(d) => out.push_str(&format!("{x} {y} {d:.12e}\n")),
            StepOutcome::Flagged(r) => out.push_str(&format!("{x} {y} flagged {r:?}\n")),
            StepOutcome::Error(e) => out.push_str(&format!("{x} {y} error {e}\n")),
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(String, Option<CliError>), CliError> {
    let config = load_config(&cli)?;
    if config.threads > 0 {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(config.threads).build_global();
    }
    let done = |r: CliResult| r.map(|s| (s, None));
    match cli.command {
        Command::Mc { op } => done(cmd_mc(&config, op)),
        Command::Limset(args) => cmd_limset(&config, args),
        Command::Slice(args) => done(cmd_slice(&config, args)),
        Command::Pullback(args) => done(cmd_pullback(&config, args)),
        Command::Converge(args) => done(cmd_converge(&config, args)),
        Command::Config { op: ConfigOp::Show } => done(Ok(config.to_string())),
        Command::Model {
            op: ModelOp::Dump { surface },
        } => done(
            FuchsianModel::standard(surface.genus)
                .map(|m| m.dump())
                .map_err(|e| CliError::Usage(e.to_string())),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok((out, warning)) => {
            print!("{out}");
            match warning {
                Some(w) => {
                    eprintln!("error: {}", w.message());
                    ExitCode::from(w.exit_code())
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
