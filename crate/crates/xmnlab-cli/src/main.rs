//! Batch front end: verify bounds for one group or the whole catalog,
//! inspect probabilities and graphs, search for K_{m,n}, and run the
//! random-graph threshold test.
//!
//! Exit codes: 0 success (including vacuous runs), 1 usage or input error,
//! 2 at least one verified violation.

use anyhow::{anyhow, bail, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use xmnlab::{
    catalog_scan, contains_kmn, group_from_json, kst_random_property_test, parse_group_name,
    report::{report_to_csv, report_to_json, report_to_text},
    run_scan, run_verify,
    verify::{format_float, format_ratio},
    x_probability, ClassId, Group, Report, ScanOptions, VerifyOptions, XGraph,
    DEFAULT_M_CAP, DEFAULT_ORDER_CAP,
};

#[derive(Parser)]
#[command(
    name = "xmnlab",
    version,
    about = "Generating-graph bound verification for finite permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the order bound for one group against the selected classes
    Verify(VerifyArgs),
    /// Check every catalog group against the selected classes
    Scan(ScanArgs),
    /// Print the pair probability p_X for a group
    Prob(ProbArgs),
    /// Export the graph of a group and class as DOT or edge CSV
    Graph(GraphArgs),
    /// Search the graph of a group and class for a complete bipartite K_{m,n}
    Kmn(KmnArgs),
    /// Random-graph property test of the exact edge threshold
    Ksttest(KstArgs),
    /// Catalog utilities
    Catalog(CatalogArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
    Dot,
}

#[derive(Args)]
struct GroupSel {
    /// Catalog-style name, e.g. S4, A5, Q8, C2xC3
    #[arg(long, conflicts_with = "group_file")]
    group: Option<String>,

    /// JSON file with { name, degree, generators }
    #[arg(long)]
    group_file: Option<PathBuf>,
}

impl GroupSel {
    fn resolve(&self, order_cap: usize) -> anyhow::Result<Group> {
        match (&self.group, &self.group_file) {
            (Some(name), None) => {
                parse_group_name(name, order_cap).map_err(|e| anyhow!("{e}"))
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                group_from_json(&text, order_cap).map_err(|e| anyhow!("{e}"))
            }
            _ => bail!("exactly one of --group or --group-file is required"),
        }
    }
}

#[derive(Args)]
struct CommonOut {
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    group: GroupSel,

    /// Class name or "all"
    #[arg(long, default_value = "all")]
    class: String,

    /// Inclusive m range "a..b", or a single value
    #[arg(long, default_value = "1..3")]
    m: String,

    /// Use this n instead of computing n*(m)
    #[arg(long)]
    n: Option<usize>,

    /// Largest m for which subset search is attempted
    #[arg(long, default_value_t = DEFAULT_M_CAP)]
    m_cap: usize,

    /// Refuse to build groups larger than this
    #[arg(long)]
    order_cap: Option<usize>,

    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct ScanArgs {
    /// Catalog order limit
    #[arg(long, default_value_t = 200)]
    max_order: usize,

    /// Class name or "all"
    #[arg(long, default_value = "all")]
    class: String,

    /// Inclusive m range "a..b", or a single value
    #[arg(long, default_value = "1..3")]
    m: String,

    /// Largest m for which subset search is attempted
    #[arg(long, default_value_t = DEFAULT_M_CAP)]
    m_cap: usize,

    /// Refuse to build groups larger than this
    #[arg(long)]
    order_cap: Option<usize>,

    /// Recorded in the report metadata
    #[arg(long)]
    seed: Option<u64>,

    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct ProbArgs {
    #[command(flatten)]
    group: GroupSel,

    /// Class name or "all"
    #[arg(long, default_value = "all")]
    class: String,

    #[arg(long)]
    order_cap: Option<usize>,

    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    group: GroupSel,

    /// A single class name
    #[arg(long)]
    class: String,

    #[arg(long)]
    order_cap: Option<usize>,

    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct KmnArgs {
    #[command(flatten)]
    group: GroupSel,

    /// A single class name
    #[arg(long)]
    class: String,

    /// Left part size
    #[arg(long)]
    m: usize,

    /// Right part size
    #[arg(long)]
    n: usize,

    /// Largest m for which subset search is attempted
    #[arg(long, default_value_t = DEFAULT_M_CAP)]
    m_cap: usize,

    #[arg(long)]
    order_cap: Option<usize>,

    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct KstArgs {
    /// Left part size
    #[arg(long)]
    m: u32,

    /// Right part size
    #[arg(long)]
    n: u64,

    /// Number of random graphs
    #[arg(long, default_value_t = 500)]
    trials: u64,

    /// Random seed
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Largest graph order to sample (at most 40)
    #[arg(long, default_value_t = 30)]
    max_order: u64,

    /// Count boundary cases at m >= 2 as violations when no witness exists
    #[arg(long)]
    strict_kst: bool,

    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(subcommand)]
    action: CatalogAction,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print the catalog entries up to an order limit
    List(CatalogListArgs),
}

#[derive(Args)]
struct CatalogListArgs {
    /// Catalog order limit
    #[arg(long, default_value_t = 200)]
    max_order: usize,

    #[command(flatten)]
    out: CommonOut,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Prob(args) => cmd_prob(args),
        Command::Graph(args) => cmd_graph(args),
        Command::Kmn(args) => cmd_kmn(args),
        Command::Ksttest(args) => cmd_ksttest(args),
        Command::Catalog(args) => match args.action {
            CatalogAction::List(list) => cmd_catalog_list(list),
        },
    }
}

/// Flag beats the XMNLAB_ORDER_CAP environment variable beats the default.
fn effective_order_cap(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("XMNLAB_ORDER_CAP") {
        Ok(text) => text
            .parse()
            .map_err(|_| anyhow!("XMNLAB_ORDER_CAP is not a positive integer: {text}")),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

/// "a..b" inclusive, or a single value.
fn parse_m_range(text: &str) -> anyhow::Result<(usize, usize)> {
    let parse_end = |s: &str| -> anyhow::Result<usize> {
        s.parse().map_err(|_| anyhow!("invalid m range: {text}"))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse_end(a)?, parse_end(b)?),
        None => {
            let m = parse_end(text)?;
            (m, m)
        }
    };
    if lo == 0 || hi < lo {
        bail!("invalid m range: {text}");
    }
    Ok((lo, hi))
}

fn parse_classes(text: &str) -> anyhow::Result<Vec<ClassId>> {
    if text == "all" {
        return Ok(ClassId::ALL.to_vec());
    }
    text.parse().map(|c| vec![c]).map_err(|e| anyhow!("{e}"))
}

fn parse_single_class(text: &str) -> anyhow::Result<ClassId> {
    text.parse().map_err(|e| anyhow!("{e}"))
}

fn emit(text: &str, out: &Option<PathBuf>) -> anyhow::Result<()> {
    debug_assert!(text.ends_with('\n'));
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render_report(report: &Report, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => report_to_json(report),
        Format::Csv => report_to_csv(report),
        Format::Text => report_to_text(report),
        Format::Dot => bail!("dot output applies to the graph command only"),
    })
}

fn report_exit(report: &Report) -> ExitCode {
    if report.has_violations() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let order_cap = effective_order_cap(args.order_cap)?;
    let group = args.group.resolve(order_cap)?;
    let classes = parse_classes(&args.class)?;
    let (m_min, m_max) = parse_m_range(&args.m)?;
    let opts = VerifyOptions {
        m_min,
        m_max,
        m_cap: args.m_cap,
        n_override: args.n,
    };
    let report = run_verify(&group, &classes, &opts, order_cap);
    let text = render_report(&report, args.out.format.unwrap_or(Format::Text))?;
    emit(&text, &args.out.out)?;
    Ok(report_exit(&report))
}

fn cmd_scan(args: ScanArgs) -> anyhow::Result<ExitCode> {
    let order_cap = effective_order_cap(args.order_cap)?;
    let classes = parse_classes(&args.class)?;
    let (m_min, m_max) = parse_m_range(&args.m)?;
    let opts = ScanOptions {
        max_order: args.max_order,
        classes,
        verify: VerifyOptions {
            m_min,
            m_max,
            m_cap: args.m_cap,
            n_override: None,
        },
        order_cap,
        seed: args.seed,
        parallel: true,
    };
    let report = run_scan(&opts);
    let text = render_report(&report, args.out.format.unwrap_or(Format::Text))?;
    emit(&text, &args.out.out)?;
    Ok(report_exit(&report))
}

fn cmd_prob(args: ProbArgs) -> anyhow::Result<ExitCode> {
    let order_cap = effective_order_cap(args.order_cap)?;
    let group = args.group.resolve(order_cap)?;
    let classes = parse_classes(&args.class)?;
    let single = classes.len() == 1;
    let mut rows = Vec::new();
    for id in &classes {
        let p = x_probability(&group, *id);
        rows.push((id.to_string(), format_ratio(&p), ratio_float(&p)));
    }
    let format = args.out.format.unwrap_or(Format::Text);
    let text = match format {
        Format::Json => {
            let value = serde_json::json!({
                "group": group.name(),
                "order": group.order(),
                "probabilities": rows
                    .iter()
                    .map(|(class, p, f)| {
                        serde_json::json!({ "class": class, "p_x": p, "p_x_float": f })
                    })
                    .collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&value)?)
        }
        Format::Csv => {
            let mut out = String::from("group,class,p_x,p_x_float\n");
            for (class, p, f) in &rows {
                let _ = writeln!(out, "{},{},{},{}", group.name(), class, p, format_float(*f));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (class, p, f) in &rows {
                if single {
                    let _ = writeln!(out, "{} ({})", p, format_float(*f));
                } else {
                    let _ = writeln!(out, "{}: {} ({})", class, p, format_float(*f));
                }
            }
            out
        }
        Format::Dot => bail!("dot output applies to the graph command only"),
    };
    emit(&text, &args.out.out)?;
    Ok(ExitCode::SUCCESS)
}

fn ratio_float(r: &num::BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn cmd_graph(args: GraphArgs) -> anyhow::Result<ExitCode> {
    let order_cap = effective_order_cap(args.order_cap)?;
    let group = args.group.resolve(order_cap)?;
    let class = parse_single_class(&args.class)?;
    let xg = XGraph::build(&group, xmnlab::class_spec(class));
    let text = match args.out.format.unwrap_or(Format::Dot) {
        Format::Dot => xg.to_dot(),
        Format::Csv => xg.to_edge_csv(),
        _ => bail!("graph output is dot or csv"),
    };
    emit(&text, &args.out.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_kmn(args: KmnArgs) -> anyhow::Result<ExitCode> {
    let order_cap = effective_order_cap(args.order_cap)?;
    let group = args.group.resolve(order_cap)?;
    let class = parse_single_class(&args.class)?;
    let xg = XGraph::build(&group, xmnlab::class_spec(class));
    let witness = contains_kmn(&xg.to_simple_graph(), args.m, args.n, args.m_cap)
        .map_err(|e| anyhow!("{e}"))?;
    let format = args.out.format.unwrap_or(Format::Text);
    let text = match format {
        Format::Json => {
            let value = match &witness {
                Some((m_part, n_part)) => serde_json::json!({
                    "group": group.name(),
                    "class": class.to_string(),
                    "m": args.m,
                    "n": args.n,
                    "free": false,
                    "witness": { "M": m_part, "N": n_part },
                }),
                None => serde_json::json!({
                    "group": group.name(),
                    "class": class.to_string(),
                    "m": args.m,
                    "n": args.n,
                    "free": true,
                    "witness": null,
                }),
            };
            format!("{}\n", serde_json::to_string_pretty(&value)?)
        }
        Format::Text => match &witness {
            Some((m_part, n_part)) => format!(
                "K_{{{},{}}} found: M = {:?}, N = {:?}\n",
                args.m, args.n, m_part, n_part
            ),
            None => format!("K_{{{},{}}}-free\n", args.m, args.n),
        },
        _ => bail!("kmn output is text or json"),
    };
    emit(&text, &args.out.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_ksttest(args: KstArgs) -> anyhow::Result<ExitCode> {
    let summary = kst_random_property_test(
        args.seed,
        args.max_order,
        args.m,
        args.n,
        args.trials,
        args.strict_kst,
    )
    .map_err(|e| anyhow!("{e}"))?;
    let format = args.out.format.unwrap_or(Format::Text);
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&summary)?),
        Format::Text => format!(
            "trials: {}, strictly exceeded: {}, witnesses found: {}, \
             boundary cases: {} at m=1, {} at m>=2\n{} violations\n",
            summary.trials,
            summary.exceeded_strictly,
            summary.witnesses_found,
            summary.boundary_m1,
            summary.boundary_higher,
            summary.violations
        ),
        _ => bail!("ksttest output is text or json"),
    };
    emit(&text, &args.out.out)?;
    Ok(if summary.violations > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_catalog_list(args: CatalogListArgs) -> anyhow::Result<ExitCode> {
    let entries = catalog_scan(args.max_order);
    let described: Vec<(String, usize, Vec<&str>, Vec<String>)> = entries
        .iter()
        .map(|e| {
            let mut flags = Vec::new();
            if e.flags.abelian {
                flags.push("abelian");
            }
            if e.flags.nilpotent {
                flags.push("nilpotent");
            }
            if e.flags.soluble {
                flags.push("soluble");
            }
            if e.flags.odd {
                flags.push("odd");
            }
            let gens = e
                .constructor
                .generators()
                .map(|gs| gs.iter().map(|g| g.cycle_notation()).collect())
                .unwrap_or_default();
            (e.name.clone(), e.expected_order, flags, gens)
        })
        .collect();
    let format = args.out.format.unwrap_or(Format::Text);
    let text = match format {
        Format::Json => {
            let value: Vec<_> = described
                .iter()
                .map(|(name, order, flags, gens)| {
                    serde_json::json!({
                        "name": name,
                        "order": order,
                        "flags": flags,
                        "generators": gens,
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&value)?)
        }
        Format::Csv => {
            let mut out = String::from("name,order,flags,generators\n");
            for (name, order, flags, gens) in &described {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    name,
                    order,
                    flags.join(";"),
                    gens.join(";")
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (name, order, flags, gens) in &described {
                let _ = writeln!(
                    out,
                    "{name}  order {order}  [{}]  gens {}",
                    flags.join(","),
                    gens.join(" ")
                );
            }
            out
        }
        Format::Dot => bail!("dot output applies to the graph command only"),
    };
    emit(&text, &args.out.out)?;
    Ok(ExitCode::SUCCESS)
}
