use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use catena::analysis::{analyze_catenarity, AnalysisConfig, ExtensionLattice, CHECK_NAMES, REPORT_SCHEMA_VERSION};
use catena::group::{catalog, supersolvable_iff_graded, GroupSpec};
use catena::lattice::{parse_dot, FiniteLattice, LatticeSpec, DEFAULT_SUPERSOLVABLE_CAP};
use catena::ring::{ExtensionSpec, RingBuilder, RingExtension, RingSpec};
use catena::tower::{check_polynomial_lattice, TowerSpec};
use catena::verify::{run_suite, SuiteConfig, SECTION_NAMES};

const DEFAULT_RING_CAP: usize = 256;
const DEFAULT_GROUP_BOUND: usize = 48;

#[derive(Parser, Debug)]
#[command(name = "catena", version, about = "Chain properties of intermediate-ring, subgroup and field lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Size cap; overrides CATENA_CAP. Its meaning depends on the subcommand.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Properties of a lattice given as JSON (elements, covers) or DOT.
    /// The cap bounds the supersolvability search.
    Lattice {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated subset of the lattice checks.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Intermediate-ring lattice of an extension and its chain checks.
    /// The cap bounds ring orders.
    Ring {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Subgroup lattice of a permutation group or a catalog group.
    /// The cap bounds the group order.
    Group {
        #[arg(long, conflicts_with = "name", required_unless_present = "name")]
        input: Option<PathBuf>,
        /// Catalog name such as S4, D4 or C12.
        #[arg(long)]
        name: Option<String>,
    },
    /// Minimal-polynomial lattice of F_p^n over F_p.
    Tower {
        #[arg(long, conflicts_with_all = ["p", "n"], required_unless_present_all = ["p", "n"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "n")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        n: Option<u32>,
    },
    /// Runs the verification suite. The cap shrinks every corpus bound.
    Verify {
        /// Comma-separated subset of the suite sections.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// JSON list of extra ring tables, `[{"name": .., "ring": ..}]`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Largest lattice size for the exhaustive lattice checks.
        #[arg(long)]
        lattice_size: Option<usize>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

enum Failure {
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

const LATTICE_CHECKS: &[&str] = &[
    "distributive",
    "graded",
    "left_modular",
    "length",
    "loewy_series",
    "p_extension",
    "supersolvable",
    "two_catenarian",
];

fn validate(requested: &[String], known: &[&str], what: &str) -> Result<(), Failure> {
    for name in requested {
        if !known.contains(&name.as_str()) {
            return Err(Failure::Input(format!(
                "unknown {what} '{name}'; expected one of {}",
                known.join(", ")
            )));
        }
    }
    Ok(())
}

fn selected<'a>(requested: &'a [String], known: &'a [&'a str]) -> Vec<&'a str> {
    if requested.is_empty() {
        known.to_vec()
    } else {
        requested.iter().map(String::as_str).collect()
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn env_cap() -> Result<Option<u64>, Failure> {
    match std::env::var("CATENA_CAP") {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Input(format!("CATENA_CAP must be a positive integer, got '{v}'"))),
        },
        Err(_) => Ok(None),
    }
}

struct Output {
    text: String,
    ok: bool,
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn load_lattice(path: &Path) -> Result<FiniteLattice, Failure> {
    let text = read(path)?;
    let spec: LatticeSpec = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text)?
    } else {
        parse_dot(&text)?
    };
    Ok(spec.build()?)
}

fn cmd_lattice(input: &Path, checks: &[String], cap: usize, format: Format) -> Result<Output, Failure> {
    validate(checks, LATTICE_CHECKS, "lattice check")?;
    let l = load_lattice(input)?;
    if format == Format::Dot {
        return Ok(Output {
            text: l.to_dot(),
            ok: true,
        });
    }
    let mut results: BTreeMap<&str, Value> = BTreeMap::new();
    for name in selected(checks, LATTICE_CHECKS) {
        let value = match name {
            "distributive" => json!(l.is_distributive()),
            "graded" => json!(l.is_graded().graded),
            "left_modular" => json!(l.is_left_modular_lattice()),
            "length" => json!(l.length(l.bottom(), l.top())?),
            "loewy_series" => json!(l.loewy_series().iter().map(|&x| l.label(x)).collect::<Vec<_>>()),
            "p_extension" => json!(l.is_p_extension()),
            "supersolvable" => match l.is_supersolvable(cap) {
                Ok(v) => json!(v),
                Err(e) => json!(format!("skipped: {e}")),
            },
            "two_catenarian" => json!(l.is_2_catenarian()),
            _ => unreachable!("validated"),
        };
        results.insert(name, value);
    }
    let text = match format {
        Format::Text => {
            let mut s = format!("{} elements\n", l.len());
            for (k, v) in &results {
                s.push_str(&format!("{k}: {v}\n"));
            }
            s
        }
        _ => json_text(&json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "elements": l.len(),
            "checks": results,
        })),
    };
    Ok(Output { text, ok: true })
}

fn load_extension(path: &Path, builder: &RingBuilder) -> Result<RingExtension, Failure> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text)?;
    if value.get("top").is_some() {
        let spec: ExtensionSpec = serde_json::from_value(value)?;
        Ok(spec.build(builder)?)
    } else {
        let spec: RingSpec = serde_json::from_value(value)?;
        Ok(RingExtension::over_prime_subring(&spec.build(builder)?))
    }
}

fn cmd_ring(input: &Path, checks: &[String], cap: usize, format: Format) -> Result<Output, Failure> {
    validate(checks, CHECK_NAMES, "check")?;
    let builder = RingBuilder::new(cap);
    let ext = load_extension(input, &builder)?;
    let el = ExtensionLattice::new(ext, cap)?;
    if format == Format::Dot {
        return Ok(Output {
            text: el.to_dot(),
            ok: true,
        });
    }
    let mut report = analyze_catenarity(&el, AnalysisConfig::default())?;
    if !checks.is_empty() {
        report.checks.retain(|k, _| checks.contains(k));
    }
    let ok = report.all_pass();
    let text = match format {
        Format::Text => {
            let mut s = format!(
                "{}: {} members, graded {}, length {}..{}\n",
                report.ring, report.members, report.graded, report.length.min, report.length.max
            );
            for i in 0..el.len() {
                s.push_str(&format!("  {} = {}\n", el.label(i), el.ring().format_set(el.member(i))));
            }
            for (edge, kind) in &report.edge_types {
                s.push_str(&format!("  {edge}: {}\n", kind.as_str()));
            }
            s.push_str(&format!("t-closure: {}\n", report.t_closure));
            for (name, outcome) in &report.checks {
                s.push_str(&format!("{name}: {outcome}\n"));
            }
            s
        }
        _ => json_text(&report),
    };
    Ok(Output { text, ok })
}

fn cmd_group(input: Option<&Path>, name: Option<&str>, cap: usize, format: Format) -> Result<Output, Failure> {
    let group = match (input, name) {
        (Some(path), _) => serde_json::from_str::<GroupSpec>(&read(path)?)?.build(cap)?,
        (None, Some(name)) => catalog(24)
            .into_iter()
            .find(|e| e.name == name)
            .map(|e| e.group)
            .ok_or_else(|| Failure::Input(format!("no catalog group named '{name}'")))?,
        (None, None) => unreachable!("clap requires one"),
    };
    if group.order() > cap {
        return Err(Failure::Input(format!("group of order {} exceeds the cap {cap}", group.order())));
    }
    let lattice = group.subgroup_lattice()?;
    if format == Format::Dot {
        return Ok(Output {
            text: lattice.to_dot(),
            ok: true,
        });
    }
    let report = supersolvable_iff_graded(&group, DEFAULT_SUPERSOLVABLE_CAP)?;
    let text = match format {
        Format::Text => format!(
            "order {}, {} subgroups, supersolvable {}, graded {}, length {}, consistent {}\n",
            report.order, report.subgroups, report.supersolvable_group, report.graded, report.length, report.holds
        ),
        _ => json_text(&json!({ "schema_version": REPORT_SCHEMA_VERSION, "report": report })),
    };
    Ok(Output { text, ok: report.holds })
}

fn cmd_tower(spec: TowerSpec, format: Format) -> Result<Output, Failure> {
    let tower = spec.build()?;
    if format == Format::Dot {
        return Ok(Output {
            text: tower.polynomial_lattice()?.to_dot(),
            ok: true,
        });
    }
    let report = check_polynomial_lattice(&tower)?;
    let text = match format {
        Format::Text => {
            let mut s = format!("F{}^{} = F{}[x]/({})\n", report.p, report.n, report.p, report.modulus);
            for (d, f) in &report.minimal_polynomials {
                s.push_str(&format!("  over F{}^{d}: {f}\n", report.p));
            }
            s.push_str(&format!("chain lengths {:?}, consistent {}\n", report.chain_lengths, report.holds));
            s
        }
        _ => json_text(&json!({ "schema_version": REPORT_SCHEMA_VERSION, "report": report })),
    };
    Ok(Output { text, ok: report.holds })
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtraTable {
    name: String,
    ring: RingSpec,
}

fn cmd_verify(
    checks: &[String],
    input: Option<&Path>,
    lattice_size: Option<usize>,
    cap: Option<usize>,
    format: Format,
) -> Result<Output, Failure> {
    validate(checks, SECTION_NAMES, "section")?;
    if format == Format::Dot {
        return Err(Failure::Input("verify has no DOT output".into()));
    }
    let mut config = SuiteConfig::default();
    if let Some(path) = input {
        let extra: Vec<ExtraTable> = serde_json::from_str(&read(path)?)?;
        config.extra_tables = extra.into_iter().map(|e| (e.name, e.ring)).collect();
    }
    if let Some(size) = lattice_size {
        if size > catena::lattice::MAX_ENUMERATED_SIZE {
            return Err(Failure::Input(format!(
                "lattice size is limited to {}",
                catena::lattice::MAX_ENUMERATED_SIZE
            )));
        }
        config.lattice_size = size;
    }
    if !checks.is_empty() {
        config.sections = Some(checks.to_vec());
    }
    if let Some(cap) = cap {
        config = config.capped(cap);
    }
    let report = run_suite(&config);
    let text = match format {
        Format::Text => report.to_text(),
        _ => json_text(&report),
    };
    Ok(Output {
        text,
        ok: report.all_pass(),
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let cap = match cli.cap {
        Some(c) => Some(c),
        None => env_cap()?,
    }
    .map(|c| usize::try_from(c).unwrap_or(usize::MAX));
    match &cli.command {
        Command::Lattice { input, checks } => {
            cmd_lattice(input, checks, cap.unwrap_or(DEFAULT_SUPERSOLVABLE_CAP), cli.format)
        }
        Command::Ring { input, checks } => cmd_ring(input, checks, cap.unwrap_or(DEFAULT_RING_CAP), cli.format),
        Command::Group { input, name } => {
            cmd_group(input.as_deref(), name.as_deref(), cap.unwrap_or(DEFAULT_GROUP_BOUND), cli.format)
        }
        Command::Tower { input, p, n } => {
            let spec = match (input, p, n) {
                (Some(path), _, _) => serde_json::from_str(&read(path)?)?,
                (None, Some(p), Some(n)) => TowerSpec { p: *p, n: *n },
                _ => unreachable!("clap requires an input or both p and n"),
            };
            cmd_tower(spec, cli.format)
        }
        Command::Verify {
            checks,
            input,
            lattice_size,
        } => cmd_verify(checks, input.as_deref(), *lattice_size, cap, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &output.text),
                None => {
                    print!("{}", output.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if output.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("some checks failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
