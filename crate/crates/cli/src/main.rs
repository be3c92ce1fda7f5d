use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use metacirc_core::autparam::{automorphisms, has_parametrization};
use metacirc_core::autosearch;
use metacirc_core::cayley::{build_cayley, standard_connection_set};
use metacirc_core::classify::{
    classify_with, emit_report, phi_n0_half, table1_row, theorem2_count, GraphFiles, GroupReport, Options,
    DEFAULT_MAX_ORDER,
};
use metacirc_core::metagroup::specs_up_to;
use metacirc_core::{Error, Graph, GroupSpec, Mode};
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_BOUND: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;

/// Tetravalent edge-transitive Cayley graphs of split metacyclic groups of odd order.
#[derive(Parser, Debug)]
#[command(name = "metacirc", version)]
struct Cli {
    /// Worker threads for candidate processing (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest group order processed; for `sweep`, the bound on m*n.
    #[arg(long = "max-order", global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print n0, |G|, |Aut(G)| and hypothesis flags.
    Info(GroupArgs),
    /// Oracle-mode classification report.
    Enumerate {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classification report in the chosen mode.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Oracle)]
        mode: ModeArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Automorphism group of a graph given as graph6 or JSON adjacency.
    Aut {
        /// graph6 string.
        #[arg(long, conflicts_with = "file")]
        graph6: Option<String>,
        /// File with graph6 or JSON; `-` or omitted reads standard input.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Decide whether two graphs are isomorphic.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Write Cay(G, S_j) for the standard connection set S_j.
    Export {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        j: u64,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every hypothesis-(*) group with m*n up to --max-order.
    Sweep {
        #[arg(long, value_enum, default_value_t = ModeArg::Oracle)]
        mode: ModeArg,
        /// Exit with status 3 if any prediction disagrees with the computation.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    r: u64,
    #[arg(long, default_value_t = 1)]
    ell: u64,
}

impl GroupArgs {
    fn spec(&self) -> metacirc_core::Result<GroupSpec> {
        GroupSpec::new(self.m, self.n, self.r, self.ell)
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write one graph6 file per class next to --out.
    #[arg(long, requires = "out")]
    with_graph6: bool,
    /// Also write one DOT file per class next to --out.
    #[arg(long, requires = "out")]
    with_dot: bool,
    /// Exit with status 3 if any prediction disagrees with the computation.
    #[arg(long)]
    strict: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Oracle,
    Theorem,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::Theorem => Mode::Theorem,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Graph6,
    Dot,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(anyhow::anyhow!("--jobs must be at least 1")),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .context("building the worker pool")
            .and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let bound = e.chain().any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::BoundExceeded { .. })));
            ExitCode::from(if bound { EXIT_BOUND } else { EXIT_USAGE })
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Info(group) => info(&group.spec()?, cli.max_order),
        Command::Enumerate { group, out } => classify(&group.spec()?, Mode::Oracle, cli.max_order, out),
        Command::Classify { group, mode, out } => classify(&group.spec()?, (*mode).into(), cli.max_order, out),
        Command::Aut { graph6, file } => {
            let text = match (graph6, file) {
                (Some(g), _) => g.clone(),
                (None, Some(path)) => read_source(path)?,
                (None, None) => read_source(Path::new("-"))?,
            };
            aut(&parse_graph(&text)?)
        }
        Command::Iso { a, b } => {
            let g1 = parse_graph(&read_source(a)?).with_context(|| format!("reading {}", a.display()))?;
            let g2 = parse_graph(&read_source(b)?).with_context(|| format!("reading {}", b.display()))?;
            emit(if autosearch::are_isomorphic(&g1, &g2) { "isomorphic\n" } else { "non-isomorphic\n" })?;
            Ok(0)
        }
        Command::Export { group, j, format, out } => {
            let spec = group.spec()?;
            let graph = build_cayley(&standard_connection_set(*j, &spec)?, &spec);
            let text = match format {
                Format::Graph6 => graph.to_graph6() + "\n",
                Format::Dot => graph.to_dot(),
                Format::Json => graph.to_json() + "\n",
            };
            write_output(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Sweep { mode, strict } => sweep(cli.max_order, (*mode).into(), *strict),
    }
}

fn read_source(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// JSON adjacency if the text starts with `{`, otherwise the first graph6 line.
fn parse_graph(text: &str) -> anyhow::Result<Graph> {
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(Graph::from_json(text)?);
    }
    match text.lines().map(str::trim).find(|l| !l.is_empty()) {
        Some(line) => Ok(Graph::from_graph6(line)?),
        None => bail!("no graph in input"),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => emit(text),
    }
}

/// Writes to standard output; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn info(spec: &GroupSpec, max_order: u64) -> anyhow::Result<u8> {
    if spec.order() > max_order {
        return Err(Error::BoundExceeded { what: "group order", value: spec.order() as u128, bound: max_order as u128 }
            .into());
    }
    let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    let mut text = String::new();
    writeln!(text, "group={spec}")?;
    writeln!(text, "n0={}", spec.n0())?;
    writeln!(text, "order={}", spec.order())?;
    writeln!(text, "aut_order={}", automorphisms(spec).len())?;
    writeln!(text, "aut_parametrized={}", has_parametrization(spec))?;
    writeln!(text, "abelian={}", spec.is_abelian())?;
    writeln!(text, "sylow_cyclic={}", spec.sylow_cyclic())?;
    writeln!(text, "hypothesis_star={}", spec.hypothesis_star())?;
    writeln!(text, "phi_n0_half={}", opt(phi_n0_half(spec)))?;
    writeln!(text, "theorem2_count={}", opt(theorem2_count(spec)))?;
    writeln!(text, "table1_n={}", opt(table1_row(spec).map(|r| r.n)))?;
    emit(&text)?;
    Ok(0)
}

fn classify(spec: &GroupSpec, mode: Mode, max_order: u64, out: &OutArgs) -> anyhow::Result<u8> {
    let report = classify_with(spec, &Options { mode, max_order })?;
    match &out.out {
        Some(path) => emit_report(&report, path, GraphFiles { graph6: out.with_graph6, dot: out.with_dot })
            .with_context(|| format!("writing {}", path.display()))?,
        None => emit(&(report.to_json() + "\n"))?,
    }
    Ok(strict_status(&[report], out.strict))
}

fn strict_status(reports: &[GroupReport], strict: bool) -> u8 {
    let mut any = false;
    for r in reports {
        let flags = r.disagreements();
        if !flags.is_empty() {
            any = true;
            let g = &r.group;
            eprintln!("disagreement for ({},{},{},{}): {}", g.m, g.n, g.r, g.ell, flags.join(", "));
            for f in &r.findings {
                eprintln!("  {f}");
            }
        }
    }
    if strict && any {
        EXIT_DISAGREEMENT
    } else {
        0
    }
}

fn aut(g: &Graph) -> anyhow::Result<u8> {
    let found = autosearch::search(g);
    let group = metacirc_core::PermGroup::new(g.n_vertices(), found.generators.clone())?;
    let order = group.order();
    let order = match order.to_string().parse::<u64>() {
        Ok(k) => json!(k),
        Err(_) => json!(order.to_string()),
    };
    let out = json!({
        "vertices": g.n_vertices(),
        "edges": g.edge_count(),
        "order": order,
        "orbits": group.orbits(),
        "generators": found.generators.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
        "canonical": found.canonical_form,
    });
    emit(&(serde_json::to_string_pretty(&out)? + "\n"))?;
    Ok(0)
}

fn sweep(bound: u64, mode: Mode, strict: bool) -> anyhow::Result<u8> {
    let specs: Vec<GroupSpec> = specs_up_to(bound).into_iter().filter(|s| s.hypothesis_star()).collect();
    let opts = Options { mode, max_order: bound };
    emit(&format!(
        "{:>5} {:>5} {:>5} {:>6} {:>4} {:>8} {:>7} {:>7} {:>7} {:>5} {:>5}  disagreements\n",
        "m", "n", "r", "order", "n0", "phi/2", "stated", "table", "classes", "arc", "half"
    ))?;
    let mut reports = Vec::with_capacity(specs.len());
    for spec in &specs {
        let r = classify_with(spec, &opts)?;
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        let flags = r.disagreements();
        emit(&format!(
            "{:>5} {:>5} {:>5} {:>6} {:>4} {:>8} {:>7} {:>7} {:>7} {:>5} {:>5}  {}\n",
            spec.m(),
            spec.n(),
            spec.r(),
            spec.order(),
            spec.n0(),
            opt(r.theory.phi_n0_half),
            opt(r.theory.theorem2_stated),
            opt(r.theory.table1.as_ref().map(|t| t.n)),
            r.classes.len(),
            r.classes.iter().filter(|c| c.arc).count(),
            r.classes.iter().filter(|c| c.half).count(),
            if flags.is_empty() { "-".to_string() } else { flags.join(",") }
        ))?;
        reports.push(r);
    }
    let disagreeing = reports.iter().filter(|r| !r.disagreements().is_empty()).count();
    emit(&format!("specs={} disagreeing={disagreeing}\n", reports.len()))?;
    Ok(if strict && disagreeing > 0 { EXIT_DISAGREEMENT } else { 0 })
}
