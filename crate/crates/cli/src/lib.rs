//! The `sigmalat` command line: argument parsing, subcommands, reports and
//! the verdict cache.

pub mod cache;
pub mod error;
pub mod report;
pub mod run;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use sigmalat_core::corpus::corpus_entry;
use sigmalat_core::formations::{self, FormationId};
use sigmalat_core::{parse_group, sigma, Checker, Limits, Property, SigmaPartition};

use crate::cache::Cache;
use crate::error::{CliError, Result};
use crate::report::Record;
use crate::run::{Options, Subject};

#[derive(Debug, Parser)]
#[command(
    name = "sigmalat",
    version,
    about = "Decide σ-embedding classes of finite permutation groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub limits: LimitArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    /// Largest group the closure will materialize.
    #[arg(long, global = true, default_value_t = Limits::default().element_cap)]
    pub element_cap: usize,
    /// Largest group order whose full subgroup lattice is built.
    #[arg(long, global = true, default_value_t = Limits::default().lattice_order_cap)]
    pub lattice_cap: usize,
    /// Largest number of subgroups a lattice may hold.
    #[arg(long, global = true, default_value_t = Limits::default().subgroup_cap)]
    pub subgroup_cap: usize,
}

impl LimitArgs {
    pub fn limits(&self) -> Limits {
        Limits {
            element_cap: self.element_cap,
            lattice_order_cap: self.lattice_cap,
            subgroup_cap: self.subgroup_cap,
        }
    }
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GroupArgs {
    /// Group file: a `degree N` line and `gen` lines in 1-indexed cycle notation.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Name of a built-in corpus group, e.g. `S4` or `SL(2,5)`.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// σ partition, e.g. `pi:[2,3]`; repeatable. Defaults to the standard grid.
    #[arg(long = "sigma")]
    pub sigmas: Vec<String>,
    /// Comma-separated class names (T, PT, PST, PsigmaT, QsigmaT, MsigmaT, T_sigma, MT).
    #[arg(long, value_delimiter = ',')]
    pub properties: Vec<String>,
    /// Use the definitional DIRECT/FULL/TRANSITIVE strategies.
    #[arg(long)]
    pub oracle: bool,
    /// Add the verdict of every applicable characterization to `details`.
    #[arg(long)]
    pub with_checkers: bool,
    /// Record wall-clock milliseconds in `elapsed_ms`.
    #[arg(long)]
    pub timings: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Ignore `SIGMALAT_CACHE_DIR`.
    #[arg(long)]
    pub no_cache: bool,
}

impl EvalArgs {
    fn options(&self) -> Options {
        Options {
            oracle: self.oracle,
            with_checkers: self.with_checkers,
            timings: self.timings,
            workers: self.workers,
        }
    }

    fn cache(&self) -> Cache {
        if self.no_cache {
            Cache::disabled()
        } else {
            Cache::from_env()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the requested classes for one group.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Decide the requested classes for every built-in group.
    Corpus {
        #[arg(long, default_value_t = 1000)]
        max_order: usize,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// List subgroups, or summary counts with `--stats`.
    Lattice {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        stats: bool,
    },
    /// Print a formation residual.
    Residual {
        #[command(flatten)]
        group: GroupArgs,
        /// One of abelian-sqfree, nilpotent, sigma-nilpotent, soluble,
        /// sigma-soluble, supersoluble, sigma-supersoluble, sc, sigma-sc.
        #[arg(long)]
        formation: String,
        #[arg(long, default_value = "sigma1")]
        sigma: String,
    },
    /// Print the Hall σ_i-subgroups for every class meeting the group order.
    Hall {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "sigma1")]
        sigma: String,
    },
    /// Run a structural characterization and report each condition.
    CheckTheorem {
        #[command(flatten)]
        group: GroupArgs,
        /// Characterization name, e.g. psigmat-soluble or mt-robinson.
        #[arg(long)]
        name: String,
        #[arg(long = "sigma")]
        sigmas: Vec<String>,
        #[arg(long)]
        timings: bool,
    },
    /// Compare two reports, ignoring timings and record order.
    ReportDiff { first: PathBuf, second: PathBuf },
}

fn load_subject(args: &GroupArgs, limits: Limits) -> Result<Subject> {
    if let Some(path) = &args.group {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let g = parse_group(&text, limits)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        return Ok(Subject::new(name, g));
    }
    let name = args.builtin.as_deref().expect("clap enforces one source");
    let entry = corpus_entry(name)
        .ok_or_else(|| CliError::Usage(format!("unknown built-in group `{name}`")))?;
    Ok(Subject::new(entry.name.clone(), entry.build(limits)?))
}

fn parse_sigmas(specs: &[String]) -> Result<Vec<SigmaPartition>> {
    if specs.is_empty() {
        return Ok(run::default_grid());
    }
    specs
        .iter()
        .map(|s| Ok(s.parse::<SigmaPartition>()?))
        .collect()
}

fn parse_properties(names: &[String]) -> Result<Vec<Property>> {
    if names.is_empty() {
        return Ok(Property::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| {
            n.parse::<Property>()
                .map_err(|_| CliError::Usage(format!("unknown property `{n}`")))
        })
        .collect()
}

/// Write `text` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(text.as_bytes())
        .map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<()> {
    match target {
        Some(p) => write_atomic(p, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn gens_line(g: &sigmalat_core::Group, h: &sigmalat_core::Subgroup) -> String {
    let gens = run::witness_strings(g, h);
    if gens.is_empty() {
        "()".to_string()
    } else {
        gens.join(" ")
    }
}

/// Execute a parsed command; the return value is the process exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let limits = cli.limits.limits();
    match &cli.command {
        Command::Classify { group, eval } => {
            let subject = load_subject(group, limits)?;
            let sigmas = parse_sigmas(&eval.sigmas)?;
            let properties = parse_properties(&eval.properties)?;
            let opts = eval.options();
            let cache = eval.cache();
            let mut records = Vec::new();
            for s in &sigmas {
                for &p in &properties {
                    records.push(run::classify_record(&subject, s, p, &opts, &cache, false)?);
                }
            }
            report::sort_records(&mut records);
            emit(out, eval.out.as_deref(), &report::to_json_lines(&records))?;
            Ok(0)
        }
        Command::Corpus { max_order, eval } => {
            let sigmas = parse_sigmas(&eval.sigmas)?;
            let properties = parse_properties(&eval.properties)?;
            let opts = eval.options();
            let subjects = run::corpus_subjects(*max_order, limits, opts.workers)?;
            let records = run::run_grid(&subjects, &sigmas, &properties, &opts, &eval.cache())?;
            emit(out, eval.out.as_deref(), &report::to_json_lines(&records))?;
            Ok(0)
        }
        Command::Lattice { group, stats } => {
            let subject = load_subject(group, limits)?;
            let g = subject
                .group
                .as_ref()
                .map_err(|e| CliError::Engine(e.clone()))?;
            let l = g.lattice()?;
            let mut text = String::new();
            if *stats {
                let mut by_order = std::collections::BTreeMap::new();
                for h in l.subgroups() {
                    *by_order.entry(h.order()).or_insert(0usize) += 1;
                }
                writeln!(text, "group: {}", subject.name).unwrap();
                writeln!(text, "order: {}", g.order()).unwrap();
                writeln!(text, "subgroups: {}", l.len()).unwrap();
                for (order, count) in by_order {
                    writeln!(text, "subgroups of order {order}: {count}").unwrap();
                }
                writeln!(text, "normal subgroups: {}", g.normal_subgroups().len()).unwrap();
                writeln!(text, "frattini order: {}", l.sub(l.frattini()).order()).unwrap();
            } else {
                for (i, h) in l.subgroups().iter().enumerate() {
                    let normal = if l.is_normal(i) { " normal" } else { "" };
                    writeln!(
                        text,
                        "{i}: order {}{normal}: {}",
                        h.order(),
                        gens_line(g, h)
                    )
                    .unwrap();
                }
            }
            emit(out, None, &text)?;
            Ok(0)
        }
        Command::Residual {
            group,
            formation,
            sigma,
        } => {
            let subject = load_subject(group, limits)?;
            let g = subject
                .group
                .as_ref()
                .map_err(|e| CliError::Engine(e.clone()))?;
            let f = FormationId::parse(formation)
                .ok_or_else(|| CliError::Usage(format!("unknown formation `{formation}`")))?;
            let s: SigmaPartition = sigma.parse()?;
            let r = formations::residual(f, &s, g)?;
            let text = format!("order: {}\ngenerators: {}\n", r.order(), gens_line(g, &r));
            emit(out, None, &text)?;
            Ok(0)
        }
        Command::Hall {
            group,
            sigma: sigma_text,
        } => {
            let subject = load_subject(group, limits)?;
            let g = subject
                .group
                .as_ref()
                .map_err(|e| CliError::Engine(e.clone()))?;
            let s: SigmaPartition = sigma_text.parse()?;
            let l = g.lattice()?;
            let mut text = String::new();
            for c in s.classes_of_group(g) {
                let halls = sigma::hall_subgroups(&s, g, c)?;
                let want = s.part(g.order() as u64, c);
                writeln!(
                    text,
                    "class {}: order {want}, {} subgroups",
                    s.label(c),
                    halls.len()
                )
                .unwrap();
                for h in halls {
                    writeln!(text, "  {}", gens_line(g, l.sub(h))).unwrap();
                }
            }
            writeln!(text, "sigma-full: {}", sigma::is_sigma_full(&s, g)?).unwrap();
            emit(out, None, &text)?;
            Ok(0)
        }
        Command::CheckTheorem {
            group,
            name,
            sigmas,
            timings,
        } => {
            let subject = load_subject(group, limits)?;
            let checker: Checker = name
                .parse()
                .map_err(|_| CliError::Usage(format!("unknown characterization `{name}`")))?;
            let specs = if sigmas.is_empty() {
                vec!["sigma1".to_string()]
            } else {
                sigmas.clone()
            };
            let opts = Options {
                timings: *timings,
                ..Options::default()
            };
            let mut records: Vec<Record> = Vec::new();
            for s in parse_sigmas(&specs)? {
                records.push(run::check_record(&subject, &s, checker, &opts)?);
            }
            emit(out, None, &report::to_json_lines(&records))?;
            Ok(0)
        }
        Command::ReportDiff { first, second } => {
            let a = report::read_report(first)?;
            let b = report::read_report(second)?;
            let diffs = report::diff(&a, &b);
            let mut text = String::new();
            for d in &diffs {
                writeln!(text, "{d}").unwrap();
            }
            emit(out, None, &text)?;
            Ok(if diffs.is_empty() { 0 } else { 1 })
        }
    }
}
