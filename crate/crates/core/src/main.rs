use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use domino::adversary::{tree_adversary, two_layer_adversary, AdversaryKind};
use domino::constructions::{generate, FamilySpec};
use domino::domination::{SolutionChain, Variant};
use domino::error::{Error, Result};
use domino::exact::{opt_inc, opt_off, solve, Baseline, SolverCaps};
use domino::format::{parse, serialize};
use domino::graph::{ArrivalSequence, Vertex};
use domino::harness::{
    emit_table, run_experiment, verify_suite, ExperimentConfig, InstanceSource, RandomModel, RowAlgorithm,
    SuiteOptions, TableFormat,
};
use domino::online::Algorithm;
use domino::transform::{connectify, incremental_connectify, tree_incremental_from_set, TransformKind};
use domino::vertex_set::VertexSet;

#[derive(Parser)]
#[command(name = "domino", version, about = "Online dominating set laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a construction family instance in the text format.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment grid from a config file or from flags.
    Run(RunArgs),
    /// Exact optimum of one instance.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "ds")]
        variant: Variant,
        #[arg(long, default_value = "off")]
        baseline: Baseline,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Play an adaptive adversary against an online algorithm.
    Duel {
        #[arg(long)]
        adversary: AdversaryKind,
        /// Vertex count for the tree adversary.
        #[arg(long)]
        n: Option<usize>,
        /// Degree parameter for the two-layer adversary.
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long, default_value = "parent")]
        algorithm: Algorithm,
        #[arg(long, default_value = "ds")]
        variant: Variant,
        /// Also solve opt_inc on the produced instance.
        #[arg(long)]
        solve: bool,
        #[command(flatten)]
        caps: CapArgs,
        /// Write the produced instance here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a constructive transformation and print its certificate.
    Transform {
        #[arg(long)]
        kind: TransformKind,
        #[command(flatten)]
        instance: InstanceArgs,
        /// `2,5,8` for a set, `1@1,3@3` for a chain. Defaults to an exact optimum.
        #[arg(long)]
        set: Option<String>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Run invariant suites; exits 1 on any failure.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per random model.
        #[arg(long, default_value_t = 100)]
        pool: usize,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Run one family over a range of a single parameter.
    Sweep {
        #[arg(long)]
        family: String,
        /// Parameter to vary, e.g. `delta`.
        #[arg(long)]
        param: String,
        /// Comma-separated values, e.g. `4,6,8`.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<usize>,
        /// Fixed parameters, e.g. `k=2`.
        #[arg(long, default_value = "")]
        params: String,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file in the text format.
    #[arg(long, conflicts_with = "family")]
    instance: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value = "")]
    params: String,
}

impl InstanceArgs {
    fn load(&self) -> Result<ArrivalSequence> {
        match (&self.instance, &self.family) {
            (Some(path), _) => read_instance(path),
            (None, Some(family)) => generate(&FamilySpec::from_params(family, &self.params)?),
            (None, None) => Err(Error::Config("give --instance <file> or --family <name>".into())),
        }
    }
}

#[derive(Args, Clone, Copy)]
struct CapArgs {
    #[arg(long)]
    cap_off: Option<usize>,
    #[arg(long)]
    cap_inc: Option<usize>,
}

impl CapArgs {
    fn resolve(&self) -> Result<SolverCaps> {
        let d = SolverCaps::default();
        SolverCaps::new(self.cap_off.unwrap_or(d.off), self.cap_inc.unwrap_or(d.inc))?.with_env_override()
    }
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, value_delimiter = ',')]
    variant: Vec<Variant>,
    /// Online algorithm name or `opt-inc`.
    #[arg(long, value_delimiter = ',')]
    algorithm: Vec<RowAlgorithm>,
    #[arg(long, value_delimiter = ',')]
    baseline: Vec<Baseline>,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<TableFormat>,
}

impl GridArgs {
    /// Flags override whatever `cfg` already holds.
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<()> {
        if !self.variant.is_empty() {
            cfg.variants = self.variant.clone();
        }
        if !self.algorithm.is_empty() {
            cfg.algorithms = self.algorithm.clone();
        }
        if !self.baseline.is_empty() {
            cfg.baselines = self.baseline.clone();
        }
        let caps = SolverCaps::new(
            self.caps.cap_off.unwrap_or(cfg.caps.off),
            self.caps.cap_inc.unwrap_or(cfg.caps.inc),
        )?;
        cfg.caps = caps.with_env_override()?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        if let Some(format) = self.format {
            cfg.format = format;
        }
        Ok(())
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    instance: Vec<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value = "")]
    params: String,
    /// `tree` (sized by --n) or `two-layer` (sized by --delta).
    #[arg(long)]
    adversary: Option<AdversaryKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    /// Random model: `tree`, `connected` or `bipartite`, sized by --n.
    #[arg(long)]
    random: Option<RandomModel>,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[command(flatten)]
    grid: GridArgs,
}

fn read_instance(path: &Path) -> Result<ArrivalSequence> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut seq = parse(&text)?;
    if seq.name().is_empty() {
        if let Some(stem) = path.file_stem() {
            seq.set_name(stem.to_string_lossy());
        }
    }
    Ok(seq)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_index(raw: &str) -> Result<usize> {
    raw.trim()
        .trim_start_matches('v')
        .parse()
        .map_err(|_| Error::Config(format!("bad vertex index `{raw}`")))
}

enum Selection {
    Set(Vec<Vertex>),
    Chain(Vec<(Vertex, usize)>),
}

fn parse_selection(raw: &str) -> Result<Selection> {
    let parts: Vec<&str> = raw
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .collect();
    if parts.iter().any(|p| p.contains('@')) {
        parts
            .iter()
            .map(|p| {
                let (v, t) = p
                    .split_once('@')
                    .ok_or_else(|| Error::Config(format!("mixed set and chain syntax at `{p}`")))?;
                Ok((parse_index(v)?, parse_index(t)?))
            })
            .collect::<Result<_>>()
            .map(Selection::Chain)
    } else {
        parts.iter().map(|p| parse_index(p)).collect::<Result<_>>().map(Selection::Set)
    }
}

fn to_set(n: usize, vs: &[Vertex]) -> Result<VertexSet> {
    if let Some(&bad) = vs.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::Config(format!("vertex {bad} is outside 1..={n}")));
    }
    Ok(VertexSet::from_vertices(n, vs.iter().copied()))
}

fn cmd_transform(kind: TransformKind, seq: &ArrivalSequence, set: Option<&str>, caps: &SolverCaps) -> Result<String> {
    let n = seq.n();
    let selection = set.map(parse_selection).transpose()?;
    let cert = match kind {
        TransformKind::Connectify | TransformKind::TreeGreedy => {
            let s = match selection {
                Some(Selection::Set(vs)) => to_set(n, &vs)?,
                Some(Selection::Chain(pairs)) => SolutionChain::from_pairs(n, &pairs)?.final_set(),
                None => opt_off(Variant::Ds, seq, caps.off)?.witness.final_set(),
            };
            if kind == TransformKind::Connectify {
                connectify(seq, &s)?
            } else {
                tree_incremental_from_set(seq, &s)?
            }
        }
        TransformKind::IncConnectify => {
            let chain = match selection {
                Some(Selection::Chain(pairs)) => SolutionChain::from_pairs(n, &pairs)?,
                Some(Selection::Set(vs)) => SolutionChain::at_arrival(n, &to_set(n, &vs)?),
                None => opt_inc(Variant::Ds, seq, caps.inc)?
                    .chain()
                    .cloned()
                    .expect("incremental witness is a chain"),
            };
            incremental_connectify(seq, &chain)?
        }
    };
    Ok(format!("instance: {}\n{cert}", seq.name()))
}

fn cmd_duel(
    kind: AdversaryKind,
    size: usize,
    algorithm: Algorithm,
    variant: Variant,
    solve_inc: bool,
    caps: &SolverCaps,
    out: Option<&Path>,
) -> Result<String> {
    let mut policy = algorithm;
    let t = match kind {
        AdversaryKind::Tree => tree_adversary(size, &mut policy, variant)?,
        AdversaryKind::TwoLayer => two_layer_adversary(size, &mut policy, variant)?,
    };
    let mut text = format!(
        "adversary: {}\nalgorithm: {}\nvariant: {}\nn: {}\nsize: {}\nchain: {}\n",
        t.adversary,
        t.algorithm,
        t.variant,
        t.sequence.n(),
        t.size(),
        t.chain
    );
    if solve_inc {
        let r = opt_inc(variant, &t.sequence, caps.inc)?;
        text.push_str(&format!("opt_inc: {}\nopt_inc_witness: {}\n", r.size, r.witness));
    }
    text.push_str("rationale:\n");
    for (i, tag) in t.rationale.iter().enumerate() {
        text.push_str(&format!("  v{}: {tag}\n", i + 1));
    }
    if let Some(path) = out {
        write_or_print(Some(path), &serialize(&t.sequence))?;
    }
    Ok(text)
}

fn run_config(cfg: &ExperimentConfig) -> Result<()> {
    let rows = run_experiment(cfg)?;
    let table = emit_table(&rows, cfg.format)?;
    write_or_print(cfg.out.as_deref(), &table)
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig::default(),
    };
    cfg.sources.extend(args.instance.iter().cloned().map(InstanceSource::File));
    if let Some(family) = &args.family {
        cfg.sources
            .push(InstanceSource::Family(FamilySpec::from_params(family, &args.params)?));
    }
    if let Some(kind) = args.adversary {
        let size = match kind {
            AdversaryKind::Tree => args.n,
            AdversaryKind::TwoLayer => args.delta,
        }
        .ok_or_else(|| Error::Config(format!("adversary {kind} needs --n (tree) or --delta (two-layer)")))?;
        cfg.sources.push(InstanceSource::Adversary { kind, size });
    }
    if let Some(model) = args.random {
        let n = args.n.ok_or_else(|| Error::Config("--random needs --n".into()))?;
        cfg.sources.push(InstanceSource::Random {
            model,
            n_min: n.min(4),
            n_max: n,
            count: args.count,
            density: domino::harness::random::DEFAULT_DENSITY,
        });
    }
    args.grid.apply(&mut cfg)?;
    run_config(&cfg)
}

fn cmd_sweep(family: &str, param: &str, values: &[usize], params: &str, grid: &GridArgs) -> Result<()> {
    let mut cfg = ExperimentConfig::default();
    for v in values {
        let joined = if params.is_empty() {
            format!("{param}={v}")
        } else {
            format!("{params},{param}={v}")
        };
        cfg.sources
            .push(InstanceSource::Family(FamilySpec::from_params(family, &joined)?));
    }
    grid.apply(&mut cfg)?;
    run_config(&cfg)
}

/// 1 for broken invariants or failed runs, 2 for bad input or configuration.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotAlwaysConnected { .. }
        | Error::ContractViolation { .. }
        | Error::Infeasible { .. }
        | Error::Precondition(_) => 1,
        Error::InvalidSequence { .. }
        | Error::Parse { .. }
        | Error::CapExceeded { .. }
        | Error::Parameter(_)
        | Error::Unknown { .. }
        | Error::Config(_)
        | Error::Io(_) => 2,
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { family, params, out } => {
            let seq = generate(&FamilySpec::from_params(&family, &params)?)?;
            write_or_print(out.as_deref(), &serialize(&seq))?;
        }
        Command::Run(args) => cmd_run(&args)?,
        Command::Solve {
            instance,
            variant,
            baseline,
            caps,
        } => {
            let seq = instance.load()?;
            let r = solve(variant, baseline, &seq, &caps.resolve()?)?;
            println!(
                "instance: {}\nvariant: {variant}\nbaseline: {baseline}\nsize: {}\nwitness: {}\nnodes_explored: {}",
                seq.name(),
                r.size,
                r.witness,
                r.nodes_explored
            );
        }
        Command::Duel {
            adversary,
            n,
            delta,
            algorithm,
            variant,
            solve,
            caps,
            out,
        } => {
            let size = match adversary {
                AdversaryKind::Tree => n,
                AdversaryKind::TwoLayer => delta,
            }
            .ok_or_else(|| Error::Config("tree needs --n, two-layer needs --delta".into()))?;
            let text = cmd_duel(adversary, size, algorithm, variant, solve, &caps.resolve()?, out.as_deref())?;
            print!("{text}");
        }
        Command::Transform {
            kind,
            instance,
            set,
            caps,
        } => {
            let seq = instance.load()?;
            print!("{}", cmd_transform(kind, &seq, set.as_deref(), &caps.resolve()?)?);
        }
        Command::Verify { suite, seed, pool, caps } => {
            let opts = SuiteOptions {
                seed,
                pool,
                caps: caps.resolve()?,
            };
            let summaries = verify_suite(&suite, &opts)?;
            for s in &summaries {
                println!("{s}");
            }
            if summaries.iter().any(|s| !s.passed()) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Sweep {
            family,
            param,
            values,
            params,
            grid,
        } => cmd_sweep(&family, &param, &values, &params, &grid)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
