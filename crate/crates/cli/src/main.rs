use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hyperact::category::{check_monad_laws, point_action, Sampling};
use hyperact::dot::specialization_dot;
use hyperact::envelope::{check_globalization, globalize};
use hyperact::harness::{find_theorem, fuzz, FuzzConfig, Options, THEOREMS};
use hyperact::hyperspace::{check_closed_domain_lift, check_lift_transfer, lift_pa};
use hyperact::io::{parse_instance, Instance};
use hyperact::{CheckReport, Error, FinGroup, FinSpace, GlobalAction, Kind, PartialAction, Status};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "hyperact", version, about = "Partial group actions on finite spaces, hyperspace lifts and enveloping actions")]
struct Cli {
    /// JSON output (the only format; accepted for compatibility).
    #[arg(long, global = true)]
    json: bool,
    /// Add per-check wall-clock timings to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct KindArg {
    /// Hyperspace kind; defaults to the instance file's `kind`, then h1.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<Kind>,
}

#[derive(Args, Debug, Clone)]
struct SamplingArgs {
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate every triple-hyperspace point (bases of at most two points).
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the partial-action axioms, topology and domain of an instance.
    Validate { file: PathBuf },
    /// Build the enveloping space and run the globalization checks.
    Globalize {
        file: PathBuf,
        /// Write the specialization order of the enveloping space as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Lift the action to a hyperspace.
    Lift {
        file: PathBuf,
        #[command(flatten)]
        kind: KindArg,
        /// Write the specialization order of the hyperspace as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run theorem checkers; with no id, the file's `checks` list is used.
    Check {
        file: PathBuf,
        ids: Vec<String>,
        #[command(flatten)]
        kind: KindArg,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Check the monad laws on an instance file, or on the trivial action of
    /// `--group` on `--space`.
    Monad {
        file: Option<PathBuf>,
        /// trivial | cyclic:N | klein4 | sym:N
        #[arg(long, conflicts_with = "file")]
        group: Option<String>,
        /// discrete:N | indiscrete:N | sierpinski | khalimsky:N
        #[arg(long, conflicts_with = "file")]
        space: Option<String>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Run the property harness over seeded random instances.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        #[arg(long, default_value_t = 5)]
        max_space: usize,
        #[arg(long, default_value_t = 4)]
        max_group: usize,
        /// Largest space on which hyperspace checks run.
        #[arg(long, default_value_t = 5)]
        hyper_max_space: usize,
        #[arg(long, default_value_t = 256)]
        monad_samples: usize,
        #[command(flatten)]
        kind: KindArg,
    },
    /// List the theorem ids accepted by `check`.
    List,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    Kind::parse(s).ok_or_else(|| format!("unknown kind `{s}` (expected h1, h2 or h3)"))
}

#[derive(Serialize)]
struct RunReport {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    instance_digest: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    result: Value,
    reports: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<BTreeMap<String, f64>>,
}

/// Command failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownTheoremId(_) => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// sha256 of the canonical (key-sorted, compact) JSON form.
fn digest(value: &Value) -> String {
    hex::encode(Sha256::digest(value.to_string().as_bytes()))
}

struct Loaded {
    instance: Instance,
    digest: String,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let instance = parse_instance(&text)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::from(Error::Parse {
        path: String::new(),
        message: e.to_string(),
    }))?;
    Ok(Loaded {
        instance,
        digest: digest(&value),
    })
}

fn require_valid(pa: &PartialAction) -> Result<(), Failure> {
    let report = pa.verify();
    if report.is_verified() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_INVALID,
            message: format!(
                "not a partial action: {}",
                serde_json::to_string(&report.witness).expect("serialisable")
            ),
        })
    }
}

fn write_dot(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

struct Timer {
    enabled: bool,
    laps: BTreeMap<String, f64>,
}

impl Timer {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.laps.insert(name.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.enabled.then_some(self.laps)
    }
}

fn label_set(space: &FinSpace, s: &hyperact::PointSet) -> Vec<String> {
    s.ones().map(|i| space.point(i).to_string()).collect()
}

fn cmd_validate(file: &Path, timer: &mut Timer) -> Result<(RunReport, u8), Failure> {
    let loaded = load(file)?;
    let pa = &loaded.instance.action;
    let verify = timer.time("partial-action", || pa.verify());
    let code = if verify.is_verified() { 0 } else { EXIT_INVALID };
    let mut reports = vec![verify];
    if code == 0 {
        reports.push(timer.time("topological", || pa.is_topological()));
        reports.push(timer.time("continuous", || pa.is_continuous_pa()));
        let d = timer.time("domain-topology", || pa.domain_topology());
        reports.push(CheckReport::unconditional(
            "domain-topology",
            d.routes_agree,
            Some(json!({"open": d.open, "closed": d.closed})),
        ));
    }
    let result = json!({
        "group_order": pa.group().order(),
        "points": pa.space().len(),
        "global": pa.is_global(),
    });
    Ok((report("validate", loaded.digest, result, reports), code))
}

fn cmd_globalize(file: &Path, dot: Option<&Path>, timer: &mut Timer) -> Result<(RunReport, u8), Failure> {
    let loaded = load(file)?;
    let pa = &loaded.instance.action;
    require_valid(pa)?;
    let env = timer.time("globalize", || globalize(pa))?;
    let g = pa.group();
    let space = env.space();
    let classes: Vec<Value> = (0..env.len())
        .map(|c| {
            json!({
                "id": c,
                "label": env.label(c).to_string(),
                "members": label_set(env.pairs(), &env.class_members(c)),
            })
        })
        .collect();
    let min_nbhd: Vec<Vec<usize>> = (0..space.len()).map(|c| space.nbhd(c).ones().collect()).collect();
    let action_table: BTreeMap<String, Vec<usize>> = (0..g.order())
        .map(|k| (g.name(k).to_string(), (0..env.len()).map(|c| env.action().act(k, c)).collect()))
        .collect();
    let iota: BTreeMap<String, usize> = (0..pa.space().len())
        .map(|x| (pa.space().point(x).to_string(), env.iota()[x]))
        .collect();
    let reports = timer.time("checks", || check_globalization(pa))?;
    if let Some(path) = dot {
        write_dot(path, &specialization_dot(space, "X_G", Some(&env.iota_image())))?;
    }
    let result = json!({
        "classes": classes,
        "min_nbhd": min_nbhd,
        "action_table": action_table,
        "iota": iota,
    });
    let code = exit_for(&reports);
    Ok((report("globalize", loaded.digest, result, reports), code))
}

fn kind_of(arg: &KindArg, inst: Option<&Instance>) -> Kind {
    arg.kind.or(inst.and_then(|i| i.kind)).unwrap_or(Kind::H1)
}

fn cmd_lift(file: &Path, kind: &KindArg, dot: Option<&Path>, timer: &mut Timer) -> Result<(RunReport, u8), Failure> {
    let loaded = load(file)?;
    let pa = &loaded.instance.action;
    require_valid(pa)?;
    let kind = kind_of(kind, Some(&loaded.instance));
    let lifted = timer.time("lift", || lift_pa(pa, kind))?;
    let h = &lifted.hyper;
    let base = pa.space();
    let g = pa.group();
    let points: Vec<Vec<String>> = h.members().iter().map(|m| label_set(base, m)).collect();
    let carriers: BTreeMap<String, Vec<usize>> = (0..g.order())
        .map(|k| (g.name(k).to_string(), lifted.action.carrier(k).ones().collect()))
        .collect();
    // each map as [source, image] index pairs
    let maps: BTreeMap<String, Vec<[usize; 2]>> = (0..g.order())
        .map(|k| {
            let m = (0..h.len()).filter_map(|a| lifted.action.apply(k, a).map(|b| [a, b])).collect();
            (g.name(k).to_string(), m)
        })
        .collect();
    let reports = timer.time("checks", || -> Result<_, Error> {
        Ok(vec![check_lift_transfer(pa, kind)?, check_closed_domain_lift(pa, kind)?])
    })?;
    if let Some(path) = dot {
        write_dot(path, &specialization_dot(h.space(), "H", None))?;
    }
    let result = json!({
        "kind": kind,
        "points": points,
        "carriers": carriers,
        "maps": maps,
    });
    let code = exit_for(&reports);
    Ok((report("lift", loaded.digest, result, reports), code))
}

fn options(kind: Kind, s: &SamplingArgs) -> Options {
    Options {
        kind,
        samples: s.samples,
        seed: s.seed,
        exhaustive: s.exhaustive,
    }
}

fn cmd_check(
    file: &Path,
    ids: &[String],
    kind: &KindArg,
    sampling: &SamplingArgs,
    timer: &mut Timer,
) -> Result<(RunReport, u8), Failure> {
    let loaded = load(file)?;
    let pa = &loaded.instance.action;
    let ids: Vec<String> = if ids.is_empty() { loaded.instance.checks.clone() } else { ids.to_vec() };
    if ids.is_empty() {
        return Err(usage("no theorem id given and the instance lists no checks"));
    }
    let theorems = ids.iter().map(|id| find_theorem(id)).collect::<Result<Vec<_>, _>>()?;
    require_valid(pa)?;
    let opts = options(kind_of(kind, Some(&loaded.instance)), sampling);
    let mut reports = Vec::new();
    for t in theorems {
        reports.extend(timer.time(t.id, || t.run(pa, &opts))?);
    }
    let code = exit_for(&reports);
    let result = json!({"kind": opts.kind, "ids": ids});
    Ok((report("check", loaded.digest, result, reports), code))
}

fn parse_sized(spec: &str) -> Result<(&str, Option<usize>), Failure> {
    match spec.split_once(':') {
        None => Ok((spec, None)),
        Some((name, n)) => n
            .parse()
            .map(|n| (name, Some(n)))
            .map_err(|_| usage(format!("bad size in `{spec}`"))),
    }
}

fn named_group(spec: &str) -> Result<FinGroup, Failure> {
    let (name, n) = parse_sized(spec)?;
    let need = || n.ok_or_else(|| usage(format!("`{name}` needs a size, e.g. {name}:2")));
    Ok(match name {
        "trivial" => FinGroup::trivial(),
        "cyclic" => FinGroup::cyclic(need()?)?,
        "klein4" => FinGroup::klein4(),
        "sym" => FinGroup::sym(need()?)?,
        _ => return Err(usage(format!("unknown group `{spec}`"))),
    })
}

fn named_space(spec: &str) -> Result<FinSpace, Failure> {
    let (name, n) = parse_sized(spec)?;
    let need = || n.ok_or_else(|| usage(format!("`{name}` needs a size, e.g. {name}:2")));
    let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
    Ok(match name {
        "sierpinski" => FinSpace::sierpinski(),
        "khalimsky" => FinSpace::khalimsky_circle(need()?)?,
        "discrete" | "indiscrete" => {
            let owned = labels(need()?);
            let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
            if name == "discrete" {
                FinSpace::discrete(&refs)?
            } else {
                FinSpace::indiscrete(&refs)?
            }
        }
        _ => return Err(usage(format!("unknown space `{spec}`"))),
    })
}

fn cmd_monad(
    file: Option<&Path>,
    group: Option<&str>,
    space: Option<&str>,
    sampling: &SamplingArgs,
    timer: &mut Timer,
) -> Result<(RunReport, u8), Failure> {
    let (pa, digest_hex) = match file {
        Some(f) => {
            let loaded = load(f)?;
            (loaded.instance.action, loaded.digest)
        }
        None => {
            let g = group.map(named_group).transpose()?;
            let s = space.map(named_space).transpose()?;
            let pa = match (g, s) {
                (Some(g), Some(s)) => GlobalAction::trivial(g, s).to_partial(),
                (Some(g), None) => point_action(&g),
                (None, Some(s)) => GlobalAction::trivial(FinGroup::trivial(), s).to_partial(),
                (None, None) => point_action(&FinGroup::trivial()),
            };
            let v = json!({"group": group.unwrap_or("trivial"), "space": space.unwrap_or("point")});
            (pa, digest(&v))
        }
    };
    require_valid(&pa)?;
    let mode = if sampling.exhaustive {
        Sampling::Exhaustive
    } else {
        Sampling::Sampled {
            samples: sampling.samples,
            seed: sampling.seed,
        }
    };
    let (monad, check) = timer.time("monad", || check_monad_laws(&pa, mode))?;
    let code = exit_for(std::slice::from_ref(&check));
    let result = serde_json::to_value(&monad).expect("serialisable");
    Ok((report("monad", digest_hex, result, vec![check]), code))
}

fn report(command: &'static str, instance_digest: String, result: Value, reports: Vec<CheckReport>) -> RunReport {
    RunReport {
        tool: "hyperact",
        version: env!("CARGO_PKG_VERSION"),
        command,
        instance_digest,
        result,
        reports,
        timing_ms: None,
    }
}

fn exit_for(reports: &[CheckReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Counterexample) {
        EXIT_COUNTEREXAMPLE
    } else {
        0
    }
}

fn run(cli: &Cli) -> Result<(RunReport, u8), Failure> {
    let mut timer = Timer {
        enabled: cli.timing,
        laps: BTreeMap::new(),
    };
    let (mut out, code) = match &cli.command {
        Command::Validate { file } => cmd_validate(file, &mut timer)?,
        Command::Globalize { file, dot } => cmd_globalize(file, dot.as_deref(), &mut timer)?,
        Command::Lift { file, kind, dot } => cmd_lift(file, kind, dot.as_deref(), &mut timer)?,
        Command::Check {
            file,
            ids,
            kind,
            sampling,
        } => cmd_check(file, ids, kind, sampling, &mut timer)?,
        Command::Monad {
            file,
            group,
            space,
            sampling,
        } => cmd_monad(file.as_deref(), group.as_deref(), space.as_deref(), sampling, &mut timer)?,
        Command::Fuzz {
            seeds,
            first_seed,
            max_space,
            max_group,
            hyper_max_space,
            monad_samples,
            kind,
        } => {
            if *seeds == 0 || *max_space == 0 || *max_group == 0 {
                return Err(usage("--seeds, --max-space and --max-group must be positive"));
            }
            let mut config = FuzzConfig::new(*seeds, *max_group, *max_space);
            config.first_seed = *first_seed;
            config.hyper_max_space = *hyper_max_space;
            config.monad_samples = *monad_samples;
            config.kind = kind.kind.unwrap_or(Kind::H1);
            let summary = timer.time("fuzz", || fuzz(&config));
            let code = if summary.total_counterexamples() > 0 { EXIT_COUNTEREXAMPLE } else { 0 };
            let value = serde_json::to_value(&summary).expect("serialisable");
            (report("fuzz", digest(&json!(config)), value, Vec::new()), code)
        }
        Command::List => {
            let list: Vec<Value> = THEOREMS
                .iter()
                .map(|t| json!({"id": t.id, "description": t.description}))
                .collect();
            (report("list", String::new(), json!({"theorems": list}), Vec::new()), 0)
        }
    };
    out.timing_ms = timer.finish();
    Ok((out, code))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((report, code)) => {
            let text = serde_json::to_string_pretty(&report).expect("serialisable");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
