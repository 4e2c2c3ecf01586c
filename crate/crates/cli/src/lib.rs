//! The `cube-kappa` command line: argument handling, task execution, JSON
//! records and the results cache.
//!
//! Exit codes: 0 success, 1 claim violation, 2 usage or input error,
//! 3 inconclusive within budget.

pub mod args;
pub mod cache;
pub mod export;
pub mod record;

use std::ffi::OsString;
use std::path::Path;
use std::time::Instant;

use clap::Parser;
use sha2::{Digest, Sha256};

use cubekappa::verify::{
    verify_bounded_cut_structure, verify_common_neighbors, verify_regularity_partition_transitivity,
    verify_subcube_union_connected, CutSweepOptions, SampleSpec, SweepMode, VerificationOutcome,
};
use cubekappa::{
    build_kary_cube, exact_extra_connectivity, extremal_cut, fragment_search_bounds, is_super_connected,
    verify_extremal_cut, vertex_connectivity, CubeMeta, Error, ExhaustiveBudget, FragmentBudget, FragmentOptions,
    Pattern,
};

use args::{CacheAction, Claim, Cli, Command, Format, GlobalArgs, Mode};
use cache::{Cache, Lookup};
use record::{cut_record, violation_record, Params, Payload, TaskKind, TaskRecord};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Largest cube on which `extra` defaults to subset enumeration.
const EXHAUSTIVE_DEFAULT_VERTICES: usize = 32;

/// Largest cube on which `kappa` also decides super-connectedness.
const SUPER_CONNECTED_VERTICES: usize = 128;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => EXIT_INCONCLUSIVE,
            _ => EXIT_USAGE,
        }
    }
}

/// Captured output of one invocation.
#[derive(Debug, Default)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run_command<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_version(argv, TOOL_VERSION)
}

/// As [`run_command`], recording `version` in results and cache keys.
pub fn run_with_version<I, T>(argv: I, version: &str) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Invocation {
                    stdout: text,
                    ..Default::default()
                },
                _ => Invocation {
                    stderr: text,
                    code: EXIT_USAGE,
                    ..Default::default()
                },
            };
        }
    };
    let mut out = Invocation::default();
    let result = match cli.global.workers {
        Some(0) => Err(CliError::Usage("--workers must be at least 1".into())),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, version, &mut out)),
            Err(e) => Err(CliError::Usage(format!("cannot start {w} workers: {e}"))),
        },
        None => dispatch(&cli, version, &mut out),
    };
    if let Err(e) = result {
        out.stderr.push_str(&format!("error: {e}\n"));
        out.code = e.exit_code();
    }
    out
}

fn cache_of(global: &GlobalArgs) -> Cache {
    Cache::new(global.cache_dir.clone().unwrap_or_else(cache::default_dir))
}

fn dispatch(cli: &Cli, version: &str, out: &mut Invocation) -> Result<(), CliError> {
    let global = &cli.global;
    let (task, params) = match &cli.command {
        Command::Cache { action } => return run_cache(global, *action, out),
        Command::Export(a) => {
            let path = global
                .out
                .as_deref()
                .ok_or_else(|| CliError::Usage("export needs --out <path>".into()))?;
            let params = Params {
                k: a.k,
                n: a.n,
                graph_format: Some(a.graph_format),
                ..Default::default()
            };
            let start = Instant::now();
            let (g, _) = build_kary_cube(a.k, a.n)?;
            let text = export::export_graph(&g, a.graph_format, path)?;
            let record = TaskRecord {
                task: TaskKind::Export,
                params,
                result: Payload {
                    vertex_count: Some(g.vertex_count()),
                    edge_count: Some(g.edge_count()),
                    path: Some(path.display().to_string()),
                    sha256: Some(hex::encode(Sha256::digest(text.as_bytes()))),
                    ..Default::default()
                },
                version: version.to_string(),
                duration_secs: start.elapsed().as_secs_f64(),
            };
            return emit(&record, global.format, None, out);
        }
        command => resolve(command)?,
    };

    let cache = (!global.no_cache).then(|| cache_of(global));
    let key = cache::key(task, &params, version);
    if let (Some(cache), false) = (&cache, global.force) {
        match cache.lookup(&key, task, &params, version) {
            Lookup::Hit(record) => {
                out.stderr
                    .push_str(&format!("cache hit: {}\n", cache.entry_path(&key).display()));
                return emit(&record, global.format, global.out.as_deref(), out);
            }
            Lookup::Corrupt(why) => {
                out.stderr
                    .push_str(&format!("warning: corrupt cache entry ({why}); recomputing\n"));
            }
            Lookup::Miss => {}
        }
    }

    let start = Instant::now();
    let result = execute(task, &params)?;
    let record = TaskRecord {
        task,
        params,
        result,
        version: version.to_string(),
        duration_secs: start.elapsed().as_secs_f64(),
    };
    if let Some(cache) = &cache {
        cache.store(&key, &record)?;
    }
    emit(&record, global.format, global.out.as_deref(), out)
}

fn emit(record: &TaskRecord, format: Format, path: Option<&Path>, out: &mut Invocation) -> Result<(), CliError> {
    let text = match format {
        Format::Json => record.to_json() + "\n",
        Format::Table => record.to_table(),
    };
    if let Some(path) = path {
        std::fs::write(path, &text).map_err(|e| CliError::io(path, e))?;
    }
    out.stdout.push_str(&text);
    out.code = if record.is_violation() {
        EXIT_VIOLATION
    } else if record.is_inconclusive() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    Ok(())
}

fn run_cache(global: &GlobalArgs, action: CacheAction, out: &mut Invocation) -> Result<(), CliError> {
    let cache = cache_of(global);
    match action {
        CacheAction::List => {
            for (key, record) in cache.list()? {
                let params = serde_json::to_string(&record.params).expect("params serialize");
                out.stdout
                    .push_str(&format!("{key} {} {} {params}\n", record.task.name(), record.version));
            }
        }
        CacheAction::Clear => {
            let removed = cache.clear()?;
            out.stdout
                .push_str(&format!("removed {removed} entries from {}\n", cache.dir().display()));
        }
    }
    Ok(())
}

/// Fills in defaults and rejects combinations that do not apply.
fn resolve(command: &Command) -> Result<(TaskKind, Params), CliError> {
    let usage = |msg: String| Err(CliError::Usage(msg));
    match command {
        Command::Build(a) | Command::Kappa(a) => {
            let task = if matches!(command, Command::Build(_)) {
                TaskKind::Build
            } else {
                TaskKind::Kappa
            };
            Ok((
                task,
                Params {
                    k: a.k,
                    n: a.n,
                    ..Default::default()
                },
            ))
        }
        Command::Extra(a) => {
            let meta = CubeMeta::new(a.k, a.n)?;
            let mode = a.mode.unwrap_or(if meta.vertex_count() <= EXHAUSTIVE_DEFAULT_VERTICES {
                Mode::Exhaustive
            } else {
                Mode::Fragment
            });
            if mode == Mode::Sample {
                return usage("extra supports --mode exhaustive or fragment".into());
            }
            Ok((
                TaskKind::Extra,
                Params {
                    k: a.k,
                    n: a.n,
                    h: Some(a.h),
                    mode: Some(mode),
                    bound: a.bound,
                    ..Default::default()
                },
            ))
        }
        Command::Construct(a) => Ok((
            TaskKind::Construct,
            Params {
                k: a.k,
                n: a.n,
                h: Some(a.h),
                ..Default::default()
            },
        )),
        Command::Verify(a) => {
            let cut_claim = matches!(
                a.claim,
                Claim::SingletonCuts | Claim::SmallSideCuts | Claim::ThreeExtraCuts
            );
            let mut params = Params {
                k: a.k,
                n: a.n,
                claim: Some(a.claim),
                ..Default::default()
            };
            if a.claim != Claim::Regularity && a.k != 3 {
                return usage(format!("claim {:?} concerns k = 3", a.claim));
            }
            if cut_claim || a.claim == Claim::SubcubeUnion {
                let default_mode = if a.claim == Claim::SubcubeUnion || a.n > 3 {
                    Mode::Sample
                } else {
                    Mode::Exhaustive
                };
                let mode = a.mode.unwrap_or(default_mode);
                if mode == Mode::Fragment || (a.claim == Claim::SubcubeUnion && mode == Mode::Exhaustive) {
                    return usage(format!("claim {:?} does not support --mode {mode:?}", a.claim));
                }
                params.mode = Some(mode);
                params.bound = Some(a.bound.unwrap_or_else(|| claim_bound(a.claim, a.n)));
                if mode == Mode::Sample {
                    params.seed = Some(a.seed);
                    params.samples = Some(a.samples);
                }
                if a.claim == Claim::SubcubeUnion {
                    if a.dim >= a.n {
                        return usage(format!("--dim {} out of range for n = {}", a.dim, a.n));
                    }
                    params.dimension = Some(a.dim);
                }
            }
            Ok((TaskKind::Verify, params))
        }
        Command::Export(_) | Command::Cache { .. } => unreachable!("handled before resolution"),
    }
}

/// Default fault-set bound of each cut claim on `Q_n^3`.
fn claim_bound(claim: Claim, n: usize) -> usize {
    match claim {
        Claim::SingletonCuts => (4 * n).saturating_sub(4),
        Claim::SmallSideCuts => (6 * n).saturating_sub(8),
        _ => (8 * n).saturating_sub(13),
    }
}

fn claim_patterns(claim: Claim) -> (&'static [Pattern], usize) {
    match claim {
        Claim::SingletonCuts => (Pattern::SINGLETON_CUTS, 1),
        Claim::SmallSideCuts => (Pattern::SMALL_SIDE_CUTS, 2),
        _ => (Pattern::THREE_EXTRA_CUTS, 3),
    }
}

/// Runs a resolved task.
pub fn execute(task: TaskKind, p: &Params) -> Result<Payload, CliError> {
    let (g, meta) = build_kary_cube(p.k, p.n)?;
    let mut out = Payload::default();
    match task {
        TaskKind::Build => {
            out.vertex_count = Some(g.vertex_count());
            out.edge_count = Some(g.edge_count());
            out.degree = Some(g.max_degree());
        }
        TaskKind::Kappa => {
            out.value = Some(vertex_connectivity(&g)?);
            out.degree = Some(g.min_degree());
            if g.vertex_count() <= SUPER_CONNECTED_VERTICES && g.vertex_count() >= 3 {
                out.super_connected = is_super_connected(&g).ok();
            }
        }
        TaskKind::Extra => {
            let h = p.h.expect("resolved");
            let result = match p.mode {
                Some(Mode::Fragment) => {
                    let options = FragmentOptions {
                        cube: Some(meta.clone()),
                        symmetry_reduction: true,
                        budget: FragmentBudget {
                            max_fragment_size: p.bound,
                            ..Default::default()
                        },
                    };
                    fragment_search_bounds(&g, h, &options)?
                }
                _ => {
                    let budget = ExhaustiveBudget {
                        max_cut_size: p.bound,
                        ..Default::default()
                    };
                    exact_extra_connectivity(&g, h, &budget)?
                }
            };
            out.value = result.value;
            if let Some((lower, upper)) = result.bounds() {
                out.lower = Some(lower);
                out.upper = Some(upper);
            }
            out.certificate = result
                .certificate
                .as_ref()
                .map(|c| cut_record(&meta, &c.cut, &c.components));
            out.evidence = Some(result.evidence);
        }
        TaskKind::Construct => {
            let h = p.h.expect("resolved");
            let report = extremal_cut(&g, &meta, h)?;
            out.verified = Some(verify_extremal_cut(&g, &report, h)?);
            out.value = Some(report.cut_size);
            out.cut_size = Some(report.cut_size);
            out.fragment = Some(report.fragment.words());
            out.layer_sizes = Some(report.layer_sizes.clone());
            out.certificate = Some(cut_record(&meta, &report.cut, &report.residual.components));
        }
        TaskKind::Verify => {
            let outcome = verify(p, &g, &meta)?;
            out.verdict = Some(outcome.verdict);
            out.checked_count = Some(outcome.checked_count);
            out.skipped = Some(outcome.skipped);
            out.patterns_seen = Some(outcome.patterns_seen.iter().map(|p| p.name().to_string()).collect());
            out.smallest_cut_size = outcome.smallest_cut_size;
            out.violations = Some(outcome.violations.iter().map(|v| violation_record(&meta, v)).collect());
        }
        TaskKind::Export => unreachable!("export writes a file and is not cached"),
    }
    Ok(out)
}

fn verify(p: &Params, g: &cubekappa::Graph, meta: &CubeMeta) -> Result<VerificationOutcome, CliError> {
    let claim = p.claim.expect("resolved");
    let spec = || SampleSpec {
        seed: p.seed.unwrap_or(0),
        count: p.samples.unwrap_or(0),
    };
    let outcome = match claim {
        Claim::Regularity => verify_regularity_partition_transitivity(meta)?,
        Claim::CommonNeighbors => verify_common_neighbors(meta)?,
        Claim::SubcubeUnion => verify_subcube_union_connected(g, meta, p.dimension.unwrap_or(0), &spec(), p.bound)?,
        _ => {
            let (allowed, h) = claim_patterns(claim);
            let mode = match p.mode {
                Some(Mode::Sample) => SweepMode::Sample(spec()),
                _ => SweepMode::Exhaustive,
            };
            // The extremal cut one size above the bound, trimmed by the
            // sampler, is the natural near-miss to probe.
            let mut options = CutSweepOptions::default();
            if let Ok(report) = extremal_cut(g, meta, h) {
                options.anchors.push(report.cut);
            }
            verify_bounded_cut_structure(g, p.bound.expect("resolved"), allowed, &mode, &options)?
        }
    };
    Ok(outcome)
}
