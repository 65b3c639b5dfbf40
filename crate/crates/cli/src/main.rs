//! Command-line front end: synthesize samples, run dimension sweeps, build
//! forcers/modifiers, and batch the horizon census.
//!
//! Options can come from a `--config` file of plain `key=value` lines (one
//! per long flag name); explicit flags override file values.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use frh_core::boxdim::{estimate_dims, scale_table};
use frh_core::constructions::{forcer, modifier, modifier_check, modifier_dim_check};
use frh_core::experiments::{
    census_fixtures, horizon_property_census, probe_experiment, sum_experiment, SweepScales,
};
use frh_core::generators::{sample_curve, sample_surface, ClosedForm, GeneratorSpec, ProbeFamily};
use frh_core::horizon::horizon;
use frh_core::io::{
    read_sample, write_census_csv, write_curve, write_curve_csv, write_scale_table_csv,
    write_surface, write_surface_csv, write_surface_pgm, write_sweep_csv, Sample,
};
use frh_core::spaces::{d_alpha_metric, lip_alpha, v_alpha_norm};
use frh_core::{Curve, Surface};

#[derive(Parser)]
#[command(name = "frh", version, about = "Box-counting dimension laboratory for fractal curves, surfaces, and horizons")]
struct Cli {
    /// File of key=value lines supplying defaults for absent flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Grid exponent (2^n + 1 samples per axis)
    #[arg(long)]
    n: Option<u32>,
    /// Dyadic scale range for estimates, e.g. 2..9
    #[arg(long)]
    scales: Option<String>,
    /// Regression window for lower/upper estimates
    #[arg(long)]
    window: Option<usize>,
    /// Seed for every random draw of the command
    #[arg(long)]
    seed: Option<u64>,
    /// Output file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an 8-bit grayscale PGM of the surface involved
    #[arg(long)]
    pgm: Option<PathBuf>,
}

/// `Common` with config-file defaults folded in and final fallbacks applied.
struct Resolved {
    n: u32,
    m_min: u32,
    m_max: Option<u32>,
    window: usize,
    seed: u64,
    out: Option<PathBuf>,
    pgm: Option<PathBuf>,
}

fn parse_scales(text: &str) -> Result<(u32, u32)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("scales must look like m_min..m_max, got `{text}`"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn load_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let mut map = BTreeMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line `{line}` is not key=value"))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

impl Common {
    fn resolve(&self, config: &BTreeMap<String, String>) -> Result<Resolved> {
        let from_cfg = |key: &str| config.get(key).cloned();
        let n = match self.n {
            Some(n) => n,
            None => from_cfg("n").map(|v| v.parse()).transpose()?.unwrap_or(10),
        };
        let scales_text = self.scales.clone().or_else(|| from_cfg("scales"));
        let (m_min, m_max) = match scales_text {
            Some(t) => {
                let (lo, hi) = parse_scales(&t)?;
                (lo, Some(hi))
            }
            None => (2, None),
        };
        let window = match self.window {
            Some(w) => w,
            None => from_cfg("window").map(|v| v.parse()).transpose()?.unwrap_or(4),
        };
        let seed = match self.seed {
            Some(s) => s,
            None => from_cfg("seed").map(|v| v.parse()).transpose()?.unwrap_or(0),
        };
        let out = self.out.clone().or_else(|| from_cfg("out").map(PathBuf::from));
        let pgm = self.pgm.clone().or_else(|| from_cfg("pgm").map(PathBuf::from));
        Ok(Resolved { n, m_min, m_max, window, seed, out, pgm })
    }
}

impl Resolved {
    /// Scale range against a concrete sample resolution.
    fn sweep_scales(&self, n: u32) -> SweepScales {
        SweepScales {
            m_min: self.m_min,
            m_max: self.m_max.unwrap_or(n.saturating_sub(1)).min(n),
            window: self.window,
        }
    }
    fn out_required(&self) -> Result<&Path> {
        self.out.as_deref().ok_or_else(|| anyhow!("--out is required"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a curve or surface from a generator spec
    Gen {
        #[command(flatten)]
        common: Common,
        /// weierstrass | midpoint | takagi | monotone-envelope | closed-form
        #[arg(long)]
        family: String,
        /// Target box dimension of the graph
        #[arg(long)]
        target_dim: Option<f64>,
        /// Frequency base for the weierstrass family
        #[arg(long, default_value_t = 2)]
        base: u32,
        /// Closed form name: identity | constant | cosine | plane-sum | saddle | depression
        #[arg(long)]
        form: Option<String>,
        /// Constant value for the constant closed form
        #[arg(long)]
        value: Option<f64>,
        /// curve | surface (inferred from the family when omitted)
        #[arg(long)]
        kind: Option<String>,
        /// Also write a CSV rendering with the spec in its header
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Per-scale range sums, box counts, and dimension estimates of a sample
    Boxdim {
        #[command(flatten)]
        common: Common,
        /// Input sample file (FRH1)
        #[arg(long)]
        input: PathBuf,
    },
    /// Horizon curve of a surface
    Horizon {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
    },
    /// Sup norm and scale-normalized range-sum norm
    Norm {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// Largest scale exponent entering the sup (defaults to the sample's n)
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// Truncated metric between two samples
    Metric {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input_a: PathBuf,
        #[arg(long)]
        input_b: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// Series terms before the 2^-K tail cut
        #[arg(long, default_value_t = 16)]
        terms: u32,
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// Hölder constant of a surface with exponent 3 - alpha
    Lip {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alpha: f64,
    },
    /// Build the forcer surface for a family of surfaces
    Forcer {
        #[command(flatten)]
        common: Common,
        /// Input surface files; repeat for each family member
        #[arg(long = "input", required = true)]
        inputs: Vec<PathBuf>,
        /// Line y0 in [0,1]; must land on the grid
        #[arg(long, default_value_t = 0.0)]
        y0: f64,
    },
    /// Build the modifier surface for a curve
    Modifier {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        y0: f64,
        /// Ladder depth (defaults to the curve's grid exponent)
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Dimension sweep over f + lambda g
    SumSweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input_a: PathBuf,
        #[arg(long)]
        input_b: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        lambda_range: f64,
        #[arg(long, default_value_t = 16)]
        lambda_count: usize,
        #[arg(long, default_value_t = 0.1)]
        tolerance: f64,
    },
    /// Dimension sweep over f + lambda Psi_alpha with horizon tracking
    ProbeSweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 63)]
        probe_base: u32,
        #[arg(long, default_value_t = 2.0)]
        lambda_range: f64,
        #[arg(long, default_value_t = 16)]
        lambda_count: usize,
        #[arg(long, default_value_t = 0.2)]
        tolerance: f64,
        #[arg(long, default_value_t = 0.1)]
        upper_tolerance: f64,
    },
    /// Horizon-property census over the standard fixture zoo
    Census {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.1)]
        tolerance: f64,
    },
}

fn read_curve(path: &Path) -> Result<Curve> {
    match read_sample(path)? {
        Sample::Curve(c) => Ok(c),
        Sample::Surface(_) => bail!("{} holds a surface, expected a curve", path.display()),
    }
}

fn read_surface(path: &Path) -> Result<Surface> {
    match read_sample(path)? {
        Sample::Surface(s) => Ok(s),
        Sample::Curve(_) => bail!("{} holds a curve, expected a surface", path.display()),
    }
}

/// Snap a coordinate in [0,1] to its grid index, requiring an exact hit.
fn grid_index(y0: f64, n: u32) -> Result<usize> {
    let scaled = y0 * 2f64.powi(n as i32);
    if !(0.0..=2f64.powi(n as i32)).contains(&scaled) || scaled.fract() != 0.0 {
        bail!("y0={y0} does not land on the 2^-{n} grid");
    }
    Ok(scaled as usize)
}

fn estimate_line(label: &str, est: &frh_core::DimensionEstimate) -> String {
    format!(
        "{label}: ols={:.4} lower={:.4} upper={:.4} window={}{}",
        est.ols_slope,
        est.lower_est,
        est.upper_est,
        est.window,
        if est.degenerate { " (degenerate input)" } else { "" }
    )
}

#[allow(clippy::too_many_arguments)]
fn run_gen(
    common: &Common,
    config: &BTreeMap<String, String>,
    family: &str,
    target_dim: Option<f64>,
    base: u32,
    form: Option<&str>,
    value: Option<f64>,
    kind: Option<&str>,
    csv: Option<&Path>,
) -> Result<()> {
    let opts = common.resolve(config)?;
    let spec = match family {
        "weierstrass" => GeneratorSpec::Weierstrass {
            target_dim: target_dim.ok_or_else(|| anyhow!("weierstrass needs --target-dim"))?,
            base,
            seed: opts.seed,
        },
        "midpoint" => GeneratorSpec::Midpoint {
            target_dim: target_dim.ok_or_else(|| anyhow!("midpoint needs --target-dim"))?,
            seed: opts.seed,
        },
        "takagi" => GeneratorSpec::Takagi,
        "monotone-envelope" => GeneratorSpec::MonotoneEnvelope { seed: opts.seed },
        "closed-form" => {
            let form = form.ok_or_else(|| anyhow!("closed-form needs --form"))?;
            GeneratorSpec::ClosedForm(match form {
                "identity" => ClosedForm::Identity,
                "constant" => {
                    ClosedForm::Constant(value.ok_or_else(|| anyhow!("constant needs --value"))?)
                }
                "cosine" => ClosedForm::Cosine,
                "plane-sum" => ClosedForm::PlaneSum,
                "saddle" => ClosedForm::Saddle,
                "depression" => ClosedForm::Depression { seed: opts.seed },
                other => bail!("unknown closed form `{other}`"),
            })
        }
        other => bail!("unknown family `{other}`"),
    };

    let kind = match kind {
        Some(k) => k.to_string(),
        None => match &spec {
            GeneratorSpec::Weierstrass { .. }
            | GeneratorSpec::Takagi
            | GeneratorSpec::MonotoneEnvelope { .. } => "curve".into(),
            GeneratorSpec::Midpoint { target_dim, .. } => {
                if *target_dim <= 2.0 { "curve".into() } else { "surface".into() }
            }
            GeneratorSpec::ClosedForm(form) => match form {
                ClosedForm::PlaneSum | ClosedForm::Saddle | ClosedForm::Depression { .. } => {
                    "surface".into()
                }
                _ => "curve".into(),
            },
        },
    };

    let out = opts.out_required()?;
    let provenance = spec.to_block();
    match kind.as_str() {
        "curve" => {
            let c: Curve = sample_curve(&spec, opts.n)?;
            write_curve(out, &c)?;
            if let Some(csv) = csv {
                write_curve_csv(csv, &c, &provenance)?;
            }
            println!("gen: curve n={} ({} samples) -> {}", opts.n, c.len(), out.display());
        }
        "surface" => {
            let s: Surface = sample_surface(&spec, opts.n)?;
            write_surface(out, &s)?;
            if let Some(csv) = csv {
                write_surface_csv(csv, &s, &provenance)?;
            }
            if let Some(pgm) = &opts.pgm {
                write_surface_pgm(pgm, &s)?;
            }
            println!(
                "gen: surface n={} ({}x{} samples) -> {}",
                opts.n,
                s.width(),
                s.width(),
                out.display()
            );
        }
        other => bail!("unknown kind `{other}`"),
    }
    Ok(())
}

fn run_boxdim(common: &Common, config: &BTreeMap<String, String>, input: &Path) -> Result<()> {
    let opts = common.resolve(config)?;
    let sample = read_sample(input)?;
    let n = sample.grid_exponent();
    let scales = opts.sweep_scales(n);
    let source = format!("input={}", input.display());
    let (table, est) = match &sample {
        Sample::Curve(c) => {
            let t = scale_table(c, scales.m_min, scales.m_max, source)?;
            let e = estimate_dims(&t, scales.window)?;
            (t, e)
        }
        Sample::Surface(s) => {
            let t = scale_table(s, scales.m_min, scales.m_max, source)?;
            let e = estimate_dims(&t, scales.window)?;
            (t, e)
        }
    };
    println!(
        "boxdim: {} n={} scales {}..{} -> {}",
        sample.kind_name(),
        n,
        scales.m_min,
        scales.m_max,
        estimate_line("estimate", &est)
    );
    if let Some(c) = table.empirical_constant() {
        println!("boxdim: empirical sandwich constant C = {c:.4}");
    }
    if let Some(out) = &opts.out {
        write_scale_table_csv(out, &table)?;
        println!("boxdim: table -> {}", out.display());
    }
    Ok(())
}

fn run_horizon(common: &Common, config: &BTreeMap<String, String>, input: &Path) -> Result<()> {
    let opts = common.resolve(config)?;
    let s = read_surface(input)?;
    let h = horizon(&s);
    let out = opts.out_required()?;
    write_curve(out, &h)?;
    if let Some(pgm) = &opts.pgm {
        write_surface_pgm(pgm, &s)?;
    }
    let lo = h.values().iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = h.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    println!(
        "horizon: n={} columns={} values in [{lo:.6}, {hi:.6}] -> {}",
        s.n(),
        s.width(),
        out.display()
    );
    Ok(())
}

fn run_norm(
    common: &Common,
    config: &BTreeMap<String, String>,
    input: &Path,
    alpha: f64,
    m_max: Option<u32>,
) -> Result<()> {
    let opts = common.resolve(config)?;
    let sample = read_sample(input)?;
    let m_max = m_max.unwrap_or(sample.grid_exponent());
    let report = match &sample {
        Sample::Curve(c) => v_alpha_norm(c, alpha, m_max)?,
        Sample::Surface(s) => v_alpha_norm(s, alpha, m_max)?,
    };
    println!(
        "norm: alpha={alpha} sup_norm={} v_alpha_sup={} achieved_m={} norm={}",
        report.sup_norm,
        report.v_alpha_sup,
        report.achieved_m,
        report.norm_value()
    );
    if let Some(out) = &opts.out {
        std::fs::write(
            out,
            format!(
                "alpha,sup_norm,v_alpha_sup,achieved_m,norm\n{},{},{},{},{}\n",
                alpha,
                report.sup_norm,
                report.v_alpha_sup,
                report.achieved_m,
                report.norm_value()
            ),
        )?;
    }
    Ok(())
}

fn run_metric(
    input_a: &Path,
    input_b: &Path,
    alpha: f64,
    terms: u32,
    m_max: Option<u32>,
) -> Result<()> {
    let a = read_sample(input_a)?;
    let b = read_sample(input_b)?;
    let report = match (&a, &b) {
        (Sample::Curve(f), Sample::Curve(g)) => {
            d_alpha_metric(f, g, alpha, terms, m_max.unwrap_or(f.n()))?
        }
        (Sample::Surface(f), Sample::Surface(g)) => {
            d_alpha_metric(f, g, alpha, terms, m_max.unwrap_or(f.n()))?
        }
        _ => bail!("metric needs two samples of the same kind"),
    };
    println!("metric: d = {} (truncation tail <= {})", report.value, report.tail_bound);
    Ok(())
}

fn run_lip(input: &Path, alpha: f64) -> Result<()> {
    let s = read_surface(input)?;
    let report = lip_alpha(&s, alpha)?;
    match report.ladder_factor {
        None => println!("lip: alpha={alpha} value={} (all pairs)", report.value),
        Some(factor) => println!(
            "lip: alpha={alpha} value={} (dyadic-offset ladder; sup within factor {factor:.4})",
            report.value
        ),
    }
    Ok(())
}

fn run_forcer(
    common: &Common,
    config: &BTreeMap<String, String>,
    inputs: &[PathBuf],
    y0: f64,
) -> Result<()> {
    let opts = common.resolve(config)?;
    let family: Vec<Surface> = inputs.iter().map(|p| read_surface(p)).collect::<Result<_>>()?;
    let n = family[0].n();
    let y0_index = grid_index(y0, n)?;
    let parts = forcer(&family, y0_index)?;
    let report = parts.check(&family)?;
    let out = opts.out_required()?;
    write_surface(out, &parts.forcer)?;
    if let Some(pgm) = &opts.pgm {
        write_surface_pgm(pgm, &parts.forcer)?;
    }
    println!("forcer: family of {} at y0={y0} -> {}", family.len(), out.display());
    println!(
        "forcer: (1) column maxima pinned to y0: {} (worst excess {:e})",
        if report.worst_excess <= 0.0 { "PASS" } else { "FAIL" },
        report.worst_excess
    );
    println!(
        "forcer: (2) zero on the y0 line: {}",
        if report.zero_on_line { "PASS" } else { "FAIL" }
    );
    Ok(())
}

fn run_modifier(
    common: &Common,
    config: &BTreeMap<String, String>,
    input: &Path,
    y0: f64,
    k_max: Option<u32>,
) -> Result<()> {
    let opts = common.resolve(config)?;
    let g = read_curve(input)?;
    let n = g.n();
    let y0_index = grid_index(y0, n)?;
    let k_max = k_max.unwrap_or(n);
    let m = modifier(&g, y0_index, k_max)?;
    let report = modifier_check(&m, &g, y0_index, n)?;
    let out = opts.out_required()?;
    write_surface(out, &m)?;
    if let Some(pgm) = &opts.pgm {
        write_surface_pgm(pgm, &m)?;
    }
    println!("modifier: curve n={n} at y0={y0}, k_max={k_max} -> {}", out.display());
    println!(
        "modifier: (1) restriction equals the curve: {}",
        if report.restriction_exact { "PASS" } else { "FAIL" }
    );
    println!(
        "modifier: (2) dominated by the restriction: {}",
        if report.dominated { "PASS" } else { "FAIL" }
    );
    let worst = report
        .range_rows
        .iter()
        .map(|&(_, sum, budget)| budget - sum)
        .fold(f64::INFINITY, f64::min);
    println!(
        "modifier: per-scale range budget: {} (worst slack {worst:.4})",
        if report.range_bound_holds { "PASS" } else { "FAIL" }
    );
    let scales = opts.sweep_scales(n);
    if scales.m_max > scales.m_min {
        let dim = modifier_dim_check(&m, &g, scales.m_min, scales.m_max, scales.window)?;
        println!(
            "modifier: {} (slack {:.4}, {})",
            estimate_line("dimension", &dim.estimate),
            dim.slack,
            if dim.upper_within_slack { "within budget" } else { "OVER budget" }
        );
    }
    Ok(())
}

fn run_sum_sweep(
    common: &Common,
    config: &BTreeMap<String, String>,
    input_a: &Path,
    input_b: &Path,
    lambda_range: f64,
    lambda_count: usize,
    tolerance: f64,
) -> Result<()> {
    let opts = common.resolve(config)?;
    let a = read_sample(input_a)?;
    let b = read_sample(input_b)?;
    let sweep = match (&a, &b) {
        (Sample::Curve(f), Sample::Curve(g)) => {
            let scales = opts.sweep_scales(f.n());
            sum_experiment(f, g, lambda_range, lambda_count, opts.seed, scales, tolerance)?
        }
        (Sample::Surface(f), Sample::Surface(g)) => {
            let scales = opts.sweep_scales(f.n());
            sum_experiment(f, g, lambda_range, lambda_count, opts.seed, scales, tolerance)?
        }
        _ => bail!("sum-sweep needs two samples of the same kind"),
    };
    println!(
        "sum-sweep: {}/{} lambdas conforming (tolerance {tolerance})",
        sweep.conforming,
        sweep.total()
    );
    for lambda in &sweep.exceptional {
        println!("sum-sweep: exceptional candidate lambda = {lambda}");
    }
    if let Some(out) = &opts.out {
        let provenance = format!(
            "sum-sweep\ninput_a={}\ninput_b={}\nlambda_range={lambda_range}\nlambda_count={lambda_count}\nseed={}",
            input_a.display(),
            input_b.display(),
            opts.seed
        );
        write_sweep_csv(out, &sweep, &provenance)?;
        println!("sum-sweep: records -> {}", out.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_probe_sweep(
    common: &Common,
    config: &BTreeMap<String, String>,
    input: &Path,
    alpha: f64,
    probe_base: u32,
    lambda_range: f64,
    lambda_count: usize,
    tolerance: f64,
    upper_tolerance: f64,
) -> Result<()> {
    let opts = common.resolve(config)?;
    let f = read_surface(input)?;
    let scales = opts.sweep_scales(f.n());
    let result = probe_experiment(
        &f,
        alpha,
        ProbeFamily::Weierstrass { base: probe_base },
        frh_core::rng::derive_seed(opts.seed, 1),
        lambda_range,
        lambda_count,
        opts.seed,
        scales,
        tolerance,
        upper_tolerance,
    )?;
    println!(
        "probe-sweep: alpha={alpha} floor={} -> {}/{} lambdas conforming",
        result.horizon_floor,
        result.sweep.conforming,
        result.sweep.total()
    );
    for lambda in &result.sweep.exceptional {
        println!("probe-sweep: exceptional candidate lambda = {lambda}");
    }
    if let Some(out) = &opts.out {
        let provenance = format!(
            "probe-sweep\ninput={}\nalpha={alpha}\nprobe_base={probe_base}\nlambda_range={lambda_range}\nlambda_count={lambda_count}\nseed={}",
            input.display(),
            opts.seed
        );
        write_sweep_csv(out, &result.sweep, &provenance)?;
        println!("probe-sweep: records -> {}", out.display());
    }
    Ok(())
}

fn run_census(common: &Common, config: &BTreeMap<String, String>, tolerance: f64) -> Result<()> {
    let opts = common.resolve(config)?;
    let n = opts.n.min(10);
    let fixtures = census_fixtures::<f64>(n, opts.seed)?;
    let scales = opts.sweep_scales(n);
    let rows = horizon_property_census(&fixtures, scales, tolerance)?;
    for row in &rows {
        println!(
            "census: {:24} surface=({:.3},{:.3}) horizon=({:.3},{:.3}) gap={:.3} verdict={}",
            row.name,
            row.report.surface_estimate.lower_est,
            row.report.surface_estimate.upper_est,
            row.report.horizon_estimate.lower_est,
            row.report.horizon_estimate.upper_est,
            row.report.gap_low,
            if row.report.verdict() { "holds" } else { "VIOLATED" }
        );
    }
    if let Some(out) = &opts.out {
        write_census_csv(out, &rows)?;
        println!("census: table -> {}", out.display());
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => BTreeMap::new(),
    };
    match &cli.command {
        Command::Gen { common, family, target_dim, base, form, value, kind, csv } => run_gen(
            common,
            &config,
            family,
            *target_dim,
            *base,
            form.as_deref(),
            *value,
            kind.as_deref(),
            csv.as_deref(),
        ),
        Command::Boxdim { common, input } => run_boxdim(common, &config, input),
        Command::Horizon { common, input } => run_horizon(common, &config, input),
        Command::Norm { common, input, alpha, m_max } => {
            run_norm(common, &config, input, *alpha, *m_max)
        }
        Command::Metric { input_a, input_b, alpha, terms, m_max, .. } => {
            run_metric(input_a, input_b, *alpha, *terms, *m_max)
        }
        Command::Lip { input, alpha, .. } => run_lip(input, *alpha),
        Command::Forcer { common, inputs, y0 } => run_forcer(common, &config, inputs, *y0),
        Command::Modifier { common, input, y0, k_max } => {
            run_modifier(common, &config, input, *y0, *k_max)
        }
        Command::SumSweep { common, input_a, input_b, lambda_range, lambda_count, tolerance } => {
            run_sum_sweep(
                common,
                &config,
                input_a,
                input_b,
                *lambda_range,
                *lambda_count,
                *tolerance,
            )
        }
        Command::ProbeSweep {
            common,
            input,
            alpha,
            probe_base,
            lambda_range,
            lambda_count,
            tolerance,
            upper_tolerance,
        } => run_probe_sweep(
            common,
            &config,
            input,
            *alpha,
            *probe_base,
            *lambda_range,
            *lambda_count,
            *tolerance,
            *upper_tolerance,
        ),
        Command::Census { common, tolerance } => run_census(common, &config, *tolerance),
    }
}
