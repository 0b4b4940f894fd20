use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use orlicz_core::cocycle::{cocycle_identity_residual, cocycle_report, decomposition_witness, polar_decompose, Cocycle, WitnessHint};
use orlicz_core::group::{growth_order_estimate, Group, Weight};
use orlicz_core::numeric::log_grid;
use orlicz_core::orlicz::{norm_report, OrliczVector};
use orlicz_core::twisted::{submultiplicativity_probe, twisted_convolve, ProbeSpec};
use orlicz_core::young::{
    catalog, conjugate, delta2_estimate, strong_equivalence, ConjugateSearch, Delta2, Equivalence, EquivalenceSearch,
};
use orlicz_lab::config::ConfigError;
use orlicz_lab::{emit_report, run_suites, ReportFormat, Suite, SuiteConfig};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "orlicz-lab", version, about = "Orlicz spaces on discrete groups: numerics and verification suites")]
struct Cli {
    /// Config file; defaults to $ORLICZ_LAB_CONFIG, then built-in defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "lines")]
    format: ReportFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Young functions and their conjugates.
    #[command(subcommand)]
    Young(YoungCmd),
    /// Groups, balls, growth and weights.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Cocycle checks and decomposition witnesses.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Luxemburg and Orlicz norms of a vector file.
    Norm(NormArgs),
    /// Twisted convolution of two vector files, or the norm-ratio probe.
    Conv(ConvArgs),
    /// Run the property suites.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum YoungCmd {
    /// Numeric conjugate Ψ(y) at the given points.
    Conjugate {
        #[arg(long)]
        phi: Option<String>,
        /// Comma-separated y values.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<f64>,
    },
    /// Estimate the Δ₂ constant.
    Delta2 {
        #[arg(long)]
        phi: Option<String>,
    },
    /// Search constants a ≤ b with Φ₁(ax) ≤ Φ₂(x) ≤ Φ₁(bx).
    Equiv {
        #[arg(long)]
        phi1: String,
        #[arg(long)]
        phi2: String,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Ball {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        radius: Option<u32>,
    },
    Growth {
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "max-r", default_value_t = 12)]
        max_r: u32,
    },
    Weight {
        #[arg(long)]
        group: Option<String>,
        /// Full weight spec such as `poly:2`; overrides --kind.
        #[arg(long)]
        weight: Option<String>,
        /// poly, subexp, sublog or trivial.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long = "c")]
        c: Option<f64>,
        /// Comma-separated coordinates.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        at: Vec<i64>,
    },
}

#[derive(Args)]
struct CocycleArgs {
    #[arg(long)]
    group: Option<String>,
    /// Coboundary of this weight.
    #[arg(long, conflicts_with = "cocycle")]
    weight: Option<String>,
    /// Any cocycle spec: `trivial`, a weight, `phase:θ`, or `a&b`.
    #[arg(long)]
    cocycle: Option<String>,
    #[arg(long)]
    radius: Option<u32>,
}

#[derive(Subcommand)]
enum CocycleCmd {
    Check(CocycleArgs),
    Witness(CocycleArgs),
    Polar(CocycleArgs),
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    vec: PathBuf,
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct ConvArgs {
    #[command(subcommand)]
    probe: Option<ConvCmd>,
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    cocycle: Option<String>,
    #[arg(long)]
    f: Option<PathBuf>,
    #[arg(long)]
    g: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConvCmd {
    /// Largest observed ‖f⋆g‖_Φ / (‖f‖_Φ‖g‖_Φ) over random pairs.
    Probe {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
        /// Comma-separated radii.
        #[arg(long, value_delimiter = ',')]
        radius: Vec<u32>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run; all when omitted.
    #[arg(long, value_enum, value_delimiter = ',')]
    suite: Vec<Suite>,
    /// Override the sample count of the run.
    #[arg(long)]
    samples: Option<usize>,
}

enum Failure {
    Config(String),
    Check(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<orlicz_core::Error> for Failure {
    fn from(e: orlicz_core::Error) -> Self {
        use orlicz_core::Error as E;
        match e {
            E::Parse(_) | E::InvalidParameter(_) | E::ArityMismatch { .. } | E::ForeignElement { .. } => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

/// Key/value rows rendered as one JSON object (lines) or aligned text (table).
struct Rows(Vec<(String, Value)>);

impl Rows {
    fn new() -> Self {
        Rows(Vec::new())
    }

    fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.0.push((key.into(), value.into()));
        self
    }

    fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Lines => {
                let map: Map<String, Value> = self.0.iter().cloned().collect();
                format!("{}\n", Value::Object(map))
            }
            ReportFormat::Table => {
                let width = self.0.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                self.0
                    .iter()
                    .map(|(k, v)| {
                        let v = match v {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        format!("{k:<width$}  {v}\n")
                    })
                    .collect()
            }
        }
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(x.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))
}

fn group_of(spec: Option<&String>, cfg: &SuiteConfig) -> Result<Arc<Group>, Failure> {
    Ok(Arc::new(Group::parse(spec.unwrap_or(&cfg.objects.group))?))
}

fn young(cmd: YoungCmd, cfg: &SuiteConfig, format: ReportFormat) -> Outcome {
    let mut out = String::new();
    match cmd {
        YoungCmd::Conjugate { phi, at } => {
            let spec = phi.unwrap_or_else(|| cfg.objects.pair.clone());
            let f = catalog::parse::<f64>(&spec)?;
            let numeric = conjugate(&f, ConjugateSearch::default());
            for y in at {
                let mut rows = Rows::new();
                rows.push("phi", spec.as_str()).push("y", num(y)).push("psi", num(numeric.eval(y)?));
                if let Some(closed) = f.closed_form_conjugate() {
                    rows.push("closed_form", num(closed.eval(y)?));
                }
                out += &rows.render(format);
            }
        }
        YoungCmd::Delta2 { phi } => {
            let spec = phi.unwrap_or_else(|| cfg.objects.pair.clone());
            let f = catalog::parse::<f64>(&spec)?;
            let mut rows = Rows::new();
            rows.push("phi", spec.as_str());
            match delta2_estimate(&f, &log_grid(1e-3, 1e4, 200))? {
                Delta2::Bounded { k, at } => rows.push("delta2", "bounded").push("k", num(k)).push("at", num(at)),
                Delta2::Unbounded { ratios } => {
                    let (x, r) = ratios.last().copied().unwrap_or((f64::NAN, f64::NAN));
                    rows.push("delta2", "unbounded").push("last_x", num(x)).push("last_ratio", num(r))
                }
            };
            out = rows.render(format);
        }
        YoungCmd::Equiv { phi1, phi2 } => {
            let (f1, f2) = (catalog::parse::<f64>(&phi1)?, catalog::parse::<f64>(&phi2)?);
            let result = strong_equivalence(&f1, &f2, &log_grid(1e-3, 1e3, 200), EquivalenceSearch::default())?;
            let mut rows = Rows::new();
            rows.push("phi1", phi1.as_str()).push("phi2", phi2.as_str());
            match result {
                Equivalence::Witness { a, b } => rows.push("equivalent", true).push("a", num(a)).push("b", num(b)),
                Equivalence::Failure { a, b, violations } => rows
                    .push("equivalent", false)
                    .push("a", num(a))
                    .push("b", num(b))
                    .push("violations", violations.len()),
            };
            out = rows.render(format);
        }
    }
    Ok((out, true))
}

fn weight_spec(
    weight: Option<String>,
    kind: Option<String>,
    beta: Option<f64>,
    alpha: Option<f64>,
    gamma: Option<f64>,
    c: Option<f64>,
    cfg: &SuiteConfig,
) -> Result<String, Failure> {
    if let Some(w) = weight {
        return Ok(w);
    }
    let missing = |name: &str| Failure::Config(format!("--{name} is required for this weight kind"));
    Ok(match kind.as_deref() {
        None => cfg.objects.weight.clone(),
        Some("trivial") => "trivial".into(),
        Some("poly") => format!("poly:{}", beta.ok_or_else(|| missing("beta"))?),
        Some("subexp") => format!("subexp:{}:{}", alpha.ok_or_else(|| missing("alpha"))?, c.unwrap_or(1.0)),
        Some("sublog") => format!("sublog:{}:{}", gamma.ok_or_else(|| missing("gamma"))?, c.unwrap_or(1.0)),
        Some(other) => return Err(Failure::Config(format!("unknown weight kind {other:?}"))),
    })
}

fn group_cmd(cmd: GroupCmd, cfg: &SuiteConfig, format: ReportFormat) -> Outcome {
    let mut rows = Rows::new();
    match cmd {
        GroupCmd::Ball { group, radius } => {
            let g = group_of(group.as_ref(), cfg)?;
            let radius = radius.unwrap_or(cfg.run.radius);
            let ball = g.ball(radius)?;
            let elements: Vec<String> = ball.iter().map(|x| x.to_string()).collect();
            rows.push("group", g.to_string()).push("radius", radius).push("size", ball.len()).push("elements", elements);
        }
        GroupCmd::Growth { group, max_r } => {
            let g = group_of(group.as_ref(), cfg)?;
            let est = growth_order_estimate(&g, max_r)?;
            let counts: Vec<usize> = est.counts.iter().map(|&(_, c)| c).collect();
            rows.push("group", g.to_string())
                .push("max_r", max_r)
                .push("d_hat", num(est.d_hat))
                .push("order", est.order)
                .push("fit_residual", num(est.fit_residual))
                .push("c1", num(est.c1))
                .push("c2", num(est.c2))
                .push("ball_sizes", counts);
        }
        GroupCmd::Weight { group, weight, kind, beta, alpha, gamma, c, at } => {
            let g = group_of(group.as_ref(), cfg)?;
            let spec = weight_spec(weight, kind, beta, alpha, gamma, c, cfg)?;
            let w = Weight::<f64>::parse(Arc::clone(&g), &spec)?;
            let x = g.element(at)?;
            rows.push("weight", spec.as_str())
                .push("at", x.to_string())
                .push("word_length", g.word_length(&x)?)
                .push("value", num(w.eval(&x)?));
        }
    }
    Ok((rows.render(format), true))
}

fn cocycle_of(args: &CocycleArgs, cfg: &SuiteConfig) -> Result<(Cocycle<f64>, u32), Failure> {
    let g = group_of(args.group.as_ref(), cfg)?;
    let spec = args.weight.as_ref().or(args.cocycle.as_ref()).unwrap_or(&cfg.objects.cocycle);
    Ok((Cocycle::parse(g, spec)?, args.radius.unwrap_or(cfg.run.radius)))
}

fn cocycle_cmd(cmd: CocycleCmd, cfg: &SuiteConfig, format: ReportFormat) -> Outcome {
    let mut rows = Rows::new();
    let ok = match cmd {
        CocycleCmd::Check(args) => {
            let (om, radius) = cocycle_of(&args, cfg)?;
            let r = cocycle_report(&om, radius)?;
            rows.push("cocycle", om.describe())
                .push("radius", radius)
                .push("identity_residual", num(r.identity_residual))
                .push("normalization_residual", num(r.normalization_residual))
                .push("min_modulus", num(r.min_modulus))
                .push("sup_norm", num(r.sup_norm))
                .push("phase_continuous", r.phase_continuous);
            let tol = cfg.tolerance("cocycle.identity", 1e-10);
            r.identity_residual <= tol && r.normalization_residual <= tol
        }
        CocycleCmd::Witness(args) => {
            let (om, radius) = cocycle_of(&args, cfg)?;
            rows.push("cocycle", om.describe()).push("radius", radius);
            match decomposition_witness(&om, WitnessHint::FromWeight, radius) {
                Ok(w) => {
                    rows.push("found", true)
                        .push("u", format!("{:?}", w.u))
                        .push("v", format!("{:?}", w.v))
                        .push("max_violation", num(w.max_violation));
                    true
                }
                Err(e @ orlicz_core::Error::NoWitness { .. }) => {
                    rows.push("found", false).push("error", e.to_string());
                    false
                }
                Err(e) => return Err(e.into()),
            }
        }
        CocycleCmd::Polar(args) => {
            let (om, radius) = cocycle_of(&args, cfg)?;
            let (modulus, phase) = polar_decompose(&om);
            let ball = om.group().ball(radius)?;
            let (mut min_mod, mut phase_dev) = (f64::INFINITY, 0.0f64);
            for s in &ball {
                for t in &ball {
                    min_mod = min_mod.min(modulus.eval(s, t)?.re);
                    phase_dev = phase_dev.max((phase.eval(s, t)?.norm() - 1.0).abs());
                }
            }
            let (rm, rp) = (cocycle_identity_residual(&modulus, radius)?, cocycle_identity_residual(&phase, radius)?);
            rows.push("cocycle", om.describe())
                .push("radius", radius)
                .push("modulus_identity_residual", num(rm))
                .push("phase_identity_residual", num(rp))
                .push("min_modulus", num(min_mod))
                .push("max_phase_deviation", num(phase_dev));
            let tol = cfg.tolerance("cocycle.polar", 1e-10);
            rm <= tol && rp <= tol && phase_dev <= tol
        }
    };
    Ok((rows.render(format), ok))
}

fn norm_cmd(args: NormArgs, cfg: &SuiteConfig, format: ReportFormat) -> Outcome {
    let spec = args.phi.unwrap_or_else(|| cfg.objects.pair.clone());
    let pair = catalog::pair::<f64>(&spec)?;
    let g = group_of(args.group.as_ref(), cfg)?;
    let f = OrliczVector::parse(g, &read_text(&args.vec)?)?;
    let r = norm_report(&pair, &f)?;
    let mut rows = Rows::new();
    rows.push("phi", spec.as_str())
        .push("support", f.len())
        .push("luxemburg", num(r.luxemburg))
        .push("orlicz", num(r.orlicz))
        .push("method_agreement", num(r.method_agreement));
    Ok((rows.render(format), true))
}

fn conv_cmd(args: ConvArgs, cfg: &SuiteConfig, format: ReportFormat) -> Outcome {
    if let Some(ConvCmd::Probe { phi, group, cocycle, radius, samples }) = args.probe {
        let pair = catalog::pair::<f64>(phi.as_ref().unwrap_or(&cfg.objects.pair))?;
        let g = group_of(group.as_ref(), cfg)?;
        let om = Cocycle::<f64>::parse(g, cocycle.as_ref().unwrap_or(&cfg.objects.cocycle))?;
        let radii = if radius.is_empty() { vec![cfg.run.radius] } else { radius };
        let spec = ProbeSpec { radii, samples: samples.unwrap_or(cfg.run.samples), seed: cfg.run.seed };
        let mut out = String::new();
        for row in submultiplicativity_probe(&pair, &om, &spec)? {
            let mut rows = Rows::new();
            rows.push("cocycle", om.describe())
                .push("radius", row.radius)
                .push("samples", row.samples)
                .push("seed", spec.seed)
                .push("c_hat_lower_bound", num(row.c_hat));
            out += &rows.render(format);
        }
        return Ok((out, true));
    }
    let (Some(fp), Some(gp)) = (args.f, args.g) else {
        return Err(Failure::Config("conv needs --f and --g, or the probe subcommand".into()));
    };
    let g = group_of(args.group.as_ref(), cfg)?;
    let om = Cocycle::<f64>::parse(Arc::clone(&g), args.cocycle.as_ref().unwrap_or(&cfg.objects.cocycle))?;
    let f = OrliczVector::parse(Arc::clone(&g), &read_text(&fp)?)?;
    let h = OrliczVector::parse(g, &read_text(&gp)?)?;
    Ok((twisted_convolve(&om, &f, &h)?.to_text(), true))
}

fn verify(args: VerifyArgs, mut cfg: SuiteConfig, format: ReportFormat) -> Outcome {
    if let Some(n) = args.samples {
        cfg.run.samples = n;
        cfg.validate()?;
    }
    let suites = if args.suite.is_empty() { Suite::ALL.to_vec() } else { args.suite };
    let records = run_suites(&cfg, &suites);
    let ok = records.iter().all(|r| r.passed());
    Ok((emit_report(&cfg, &records, format), ok))
}

fn run(cli: Cli) -> Outcome {
    let mut cfg = SuiteConfig::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.run.seed = seed;
    }
    let format = cli.format;
    match cli.command {
        Command::Young(cmd) => young(cmd, &cfg, format),
        Command::Group(cmd) => group_cmd(cmd, &cfg, format),
        Command::Cocycle(cmd) => cocycle_cmd(cmd, &cfg, format),
        Command::Norm(args) => norm_cmd(args, &cfg, format),
        Command::Conv(args) => conv_cmd(args, &cfg, format),
        Command::Verify(args) => verify(args, cfg, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    match run(cli) {
        Ok((text, ok)) => {
            let written = match &out_path {
                Some(p) => std::fs::write(p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
