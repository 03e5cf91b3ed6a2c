use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gelfand_core::gelfand::GelfandSet;
use gelfand_core::hecke::{
    canonical_basis_with, trace_at_one, verify_canonical_table, verify_module_axioms, CanonicalOptions,
    ClassifiedBasis, Family,
};
use gelfand_core::parabolic::{verify_phi, KSet};
use gelfand_core::wgraph::{
    build_tilde, cells, graph_from_table, is_quasi_admissible, molecules, stats, to_csv, to_dot, to_json,
    verify_degree_bipartition, verify_duality, verify_transport, verify_wgraph_axioms, GraphFamily, WGraph,
};
use gelfand_core::{CoxeterType, GroupType, RankCaps, Report};

/// Gelfand W-graphs of the classical Weyl groups.
///
/// For type a, `--rank n` selects the symmetric group S_n (the Coxeter system
/// A_{n-1}); for bc and d it is the usual rank.
#[derive(Parser)]
#[command(name = "gelfand", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the vertex involutions in one-line notation.
    Enumerate(GroupArgs),
    /// Write a graph to stdout or `--out`.
    Build(GraphArgs),
    /// Print the graph's statistics row.
    Stats(StatsArgs),
    /// Print the cells (or molecules) as vertex lists.
    Cells(CellsArgs),
    /// Run a verification report; exits nonzero on failure.
    Verify(VerifyArgs),
    /// Write a graph to a file in the output directory.
    Export(GraphArgs),
    /// Compare x=1 traces with square-root counts per conjugacy class.
    Trace(GroupArgs),
}

#[derive(Args, Clone)]
struct GroupArgs {
    #[arg(long = "type", value_enum)]
    ty: TypeFlag,
    #[arg(long)]
    rank: usize,
    /// Raise the rank cap for the selected type.
    #[arg(long)]
    max_rank: Option<usize>,
    /// Worker threads for the canonical-basis computation.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value = "m")]
    family: FamilyFlag,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatFlag,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for `export` when `--out` is absent.
    #[arg(long, env = "GELFAND_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    /// Draw bidirected pairs of equal weight as one undirected DOT edge.
    #[arg(long)]
    merge_bidirected: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value = "m")]
    family: FamilyFlag,
    /// Print the CSV header line first.
    #[arg(long)]
    header: bool,
}

#[derive(Args)]
struct CellsArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value = "m")]
    family: FamilyFlag,
    #[arg(long)]
    molecules: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    #[command(flatten)]
    group: GroupArgs,
    /// Restrict to one module; both are checked by default.
    #[arg(long, value_enum)]
    family: Option<ModuleFlag>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeFlag {
    A,
    Bc,
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyFlag {
    M,
    N,
    MTilde,
    NTilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleFlag {
    M,
    N,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatFlag {
    Dot,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Axioms,
    Duality,
    Table,
    Trace,
    Phi,
    Admissible,
}

impl FamilyFlag {
    fn graph_family(self) -> GraphFamily {
        match self {
            FamilyFlag::M => GraphFamily::M,
            FamilyFlag::N => GraphFamily::N,
            FamilyFlag::MTilde => GraphFamily::MTilde,
            FamilyFlag::NTilde => GraphFamily::NTilde,
        }
    }
}

impl FormatFlag {
    fn extension(self) -> &'static str {
        match self {
            FormatFlag::Dot => "dot",
            FormatFlag::Json => "json",
            FormatFlag::Csv => "csv",
        }
    }
}

impl GroupArgs {
    fn group(&self) -> Result<GroupType> {
        let ty = match self.ty {
            TypeFlag::A => CoxeterType::A,
            TypeFlag::Bc => CoxeterType::BC,
            TypeFlag::D => CoxeterType::D,
        };
        let group = GroupType::new(ty, self.rank)?;
        let mut caps = RankCaps::default();
        if let Some(cap) = self.max_rank {
            match ty {
                CoxeterType::A => caps.a = cap,
                CoxeterType::BC => caps.bc = cap,
                CoxeterType::D => caps.d = cap,
            }
        }
        caps.check(&group)?;
        Ok(group)
    }

    fn options(&self) -> Result<CanonicalOptions> {
        let Some(threads) = self.threads else {
            return Ok(CanonicalOptions::default());
        };
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
        Ok(CanonicalOptions {
            parallel: threads != 1,
            ..CanonicalOptions::default()
        })
    }
}

struct Session {
    set: GelfandSet,
    basis: ClassifiedBasis,
    options: CanonicalOptions,
}

impl Session {
    fn new(args: &GroupArgs) -> Result<Self> {
        let set = GelfandSet::new(args.group()?);
        let basis = ClassifiedBasis::from_gelfand(&set);
        Ok(Self {
            set,
            basis,
            options: args.options()?,
        })
    }

    fn graph(&self, family: GraphFamily) -> Result<WGraph> {
        if family.is_tilde() && self.set.group().ty != CoxeterType::D {
            bail!("{family} graphs exist only for type d");
        }
        let table = canonical_basis_with(family.module(), &self.basis, self.options);
        let graph = graph_from_table(family.module().into(), &self.basis, &table);
        if family.is_tilde() {
            Ok(build_tilde(&self.set, &graph)?)
        } else {
            Ok(graph)
        }
    }
}

fn render(graph: &WGraph, format: FormatFlag, merge: bool) -> Result<String> {
    Ok(match format {
        FormatFlag::Dot => to_dot(graph, merge),
        FormatFlag::Json => to_json(graph),
        FormatFlag::Csv => to_csv(&[stats(graph)])?,
    })
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn label_list(graph: &WGraph, part: &[usize]) -> String {
    part.iter()
        .map(|&v| format!("[{}]", graph.vertices[v].label))
        .collect::<Vec<_>>()
        .join(" ")
}

fn families(flag: Option<ModuleFlag>) -> Vec<Family> {
    match flag {
        Some(ModuleFlag::M) => vec![Family::M],
        Some(ModuleFlag::N) => vec![Family::N],
        None => vec![Family::M, Family::N],
    }
}

fn verify(args: &VerifyArgs) -> Result<Report> {
    let group = args.group.group()?;
    let mut report = Report::new(format!("verify {group}"));
    if let Target::Duality = args.target {
        if group.ty == CoxeterType::A {
            bail!("verify duality needs type bc or d");
        }
        report.merge(verify_duality(group)?);
        return Ok(report);
    }
    let ctx = Session::new(&args.group)?;
    for family in families(args.family) {
        match args.target {
            Target::Axioms => {
                report.merge(verify_module_axioms(family, &ctx.basis));
                let table = canonical_basis_with(family, &ctx.basis, ctx.options);
                let graph = graph_from_table(family.into(), &ctx.basis, &table);
                report.merge(verify_wgraph_axioms(&graph, &ctx.basis, &table)?);
            }
            Target::Table => {
                let table = canonical_basis_with(family, &ctx.basis, ctx.options);
                report.merge(verify_canonical_table(&ctx.basis, &table));
            }
            Target::Trace => report.merge(gelfand_core::hecke::verify_trace(family, &ctx.basis)?),
            Target::Phi => report.merge(verify_transport(group, family)?),
            Target::Admissible => {
                let graph = ctx.graph(family.into())?;
                report.merge(is_quasi_admissible(&graph));
                report.merge(verify_degree_bipartition(&graph, &ctx.basis));
            }
            Target::Duality => unreachable!(),
        }
    }
    if let Target::Phi = args.target {
        report.merge(verify_phi(&ctx.set, &KSet::new(group)));
    }
    Ok(report)
}

fn trace(args: &GroupArgs) -> Result<bool> {
    let group = args.group()?;
    let basis = ClassifiedBasis::from_gelfand(&GelfandSet::new(group));
    let squares = group.square_counts()?;
    println!("representative,size,trace_m,trace_n,square_roots,status");
    let mut all = true;
    for class in group.conjugacy_classes() {
        let w = &class[0];
        let roots = squares.get(w).copied().unwrap_or(0) as i64;
        let tm = trace_at_one(Family::M, &basis, w)?;
        let tn = trace_at_one(Family::N, &basis, w)?;
        let ok = tm == roots && tn == roots;
        all &= ok;
        println!(
            "\"{w}\",{},{tm},{tn},{roots},{}",
            class.len(),
            if ok { "ok" } else { "differs" }
        );
    }
    Ok(all)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.verb {
        Verb::Enumerate(args) => {
            let set = GelfandSet::new(args.group()?);
            for v in set.vertices() {
                println!("{}", v.z);
            }
        }
        Verb::Build(args) => {
            let graph = Session::new(&args.group)?.graph(args.family.graph_family())?;
            let text = render(&graph, args.format, args.merge_bidirected)?;
            match &args.out {
                Some(path) => write_atomic(path, &text)?,
                None => print!("{text}"),
            }
        }
        Verb::Export(args) => {
            let family = args.family.graph_family();
            let graph = Session::new(&args.group)?.graph(family)?;
            let text = render(&graph, args.format, args.merge_bidirected)?;
            let path = args.out.clone().unwrap_or_else(|| {
                let name = format!("{}_{}.{}", family, graph.group, args.format.extension());
                args.out_dir.join(name)
            });
            write_atomic(&path, &text)?;
            println!("{}", path.display());
        }
        Verb::Stats(args) => {
            let graph = Session::new(&args.group)?.graph(args.family.graph_family())?;
            let csv = to_csv(&[stats(&graph)])?;
            let skip = if args.header { 0 } else { 1 };
            for line in csv.lines().skip(skip) {
                println!("{line}");
            }
        }
        Verb::Cells(args) => {
            let graph = Session::new(&args.group)?.graph(args.family.graph_family())?;
            let parts = if args.molecules { molecules(&graph) } else { cells(&graph) };
            for part in parts {
                println!("{}", label_list(&graph, &part));
            }
        }
        Verb::Verify(args) => {
            let report = verify(&args)?;
            println!("{report}");
            return Ok(report.passed());
        }
        Verb::Trace(args) => return trace(&args),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
