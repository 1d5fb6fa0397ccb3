use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use circstab::abelian::{AbelianGroup, GroupElement};
use circstab::autgroup::{arc_orbits, edge_orbits, is_normal_cayley, sufficient_arc_transitivity};
use circstab::compat::{
    compatible_cayley_search, compatible_matrix_search, thm3_certificate, CompatibilityResult, DEFAULT_NODE_LIMIT,
};
use circstab::graph::{cayley_graph, double_cover, double_cover_as_circulant, Graph};
use circstab::skeleton::{boolean_square, cartesian_skeleton, dispensable_edges};
use circstab::stability::{analyze, StabilityVerdict};
use circstab::survey::{
    enumerate_abelian_cayley, enumerate_connection_sets, run_survey, CompatMode, SurveyOptions, SurveyRecord,
};
use circstab::wilson::{self, ConditionReport};
use circstab::{limits, Error};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_RESOURCE_CAP: u8 = 3;

/// Stability of circulants and abelian Cayley graphs.
#[derive(Parser)]
#[command(name = "circstab", version, about)]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Caps {
    /// Largest graph given to the automorphism engine
    #[arg(long, global = true, default_value_t = limits::DEFAULT_VERTEX_CAP)]
    vertex_cap: usize,
    /// Largest graph accepted by the isomorphism test
    #[arg(long, global = true, default_value_t = limits::DEFAULT_ISOMORPHISM_CAP)]
    iso_cap: usize,
    /// Largest abelian group whose automorphisms are enumerated
    #[arg(long, global = true, default_value_t = limits::DEFAULT_GROUP_ENUMERATION_CAP)]
    group_cap: usize,
    /// Largest number of group automorphisms held in memory
    #[arg(long, global = true, default_value_t = limits::DEFAULT_AUTOMORPHISM_COUNT_CAP)]
    aut_count_cap: usize,
}

#[derive(Args, Clone)]
struct Target {
    /// Circulant order
    #[arg(long, conflicts_with = "group", required_unless_present = "group")]
    n: Option<u64>,
    /// Abelian group such as `12` or `4x4`
    #[arg(long)]
    group: Option<String>,
    /// Connection set: `1,-1,4` or `(2,2),(0,1),(0,3)`
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompatMethod {
    Cayley,
    Matrix,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: structure, stability, conditions, transitivity, compatibility
    Analyze {
        #[command(flatten)]
        target: Target,
        /// Skip the compatibility search
        #[arg(long)]
        no_compat: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Wilson's conditions C.1 to C.4 and C.2′ for a circulant
    Conditions {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Search for a compatible nonidentity permutation
    Compat {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        #[arg(long, value_enum, default_value = "cayley")]
        method: CompatMethod,
    },
    /// Boolean square, dispensable edges and Cartesian skeleton
    Skeleton {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical double cover
    Dcover {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive survey over circulants or abelian Cayley graphs
    Survey(SurveyArgs),
    /// Parametrised families
    Family {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Args)]
struct SurveyArgs {
    #[arg(long, default_value_t = 3)]
    min_n: u64,
    #[arg(long, default_value_t = 12)]
    max_n: u64,
    #[arg(long, conflicts_with = "even_only")]
    odd_only: bool,
    #[arg(long)]
    even_only: bool,
    /// Survey every abelian group of each order instead of cyclic groups only
    #[arg(long)]
    abelian: bool,
    /// Upper order bound for `--abelian` (overrides `--max-n`)
    #[arg(long)]
    max_order: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    /// JSON-lines output, resumed when it already exists
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the compatibility search for every order
    #[arg(long, conflicts_with = "no_compat")]
    with_compat: bool,
    #[arg(long)]
    no_compat: bool,
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,
    /// Keep one connection set per orbit of group automorphisms
    #[arg(long)]
    dedupe_ci: bool,
    /// Keep only circulants satisfying C.2 with this b
    #[arg(long)]
    c2_b: Option<u64>,
    /// Print records as CSV on stdout; the aggregate goes to stderr
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Family {
    /// Stable arc-transitive circulants of order l·m with a compatible matrix
    Thm3 {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
    },
}

enum Failure {
    Lib(Error),
    Check(String),
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::from(e))
    }
}

type Outcome = Result<(), Failure>;

fn resolve(target: &Target) -> Result<(AbelianGroup, Vec<GroupElement>), Error> {
    let group = match (&target.n, &target.group) {
        (Some(n), _) => AbelianGroup::cyclic(*n as i64)?,
        (None, Some(g)) => AbelianGroup::parse(g)?,
        (None, None) => return Err(Error::InvalidParameter("give --n or --group".into())),
    };
    let mut set = group.parse_elements(&target.set)?;
    set.sort();
    set.dedup();
    cayley_graph(&group, &set)?;
    Ok((group, set))
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("serialisable");
    writeln!(io::stdout(), "{text}")?;
    Ok(())
}

fn write_text(out: Option<&PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn set_of_zero(g: &Graph) -> Vec<usize> {
    g.neighbors(0).iter().collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeReport {
    group: String,
    set: Vec<String>,
    vertices: usize,
    edges: usize,
    connected: bool,
    bipartite: bool,
    vertex_determining: bool,
    verdict: StabilityVerdict,
    conditions: Option<ConditionReport>,
    arc_transitive: bool,
    edge_transitive: bool,
    set_stabilizer_transitive: Option<bool>,
    normal_cayley: Option<bool>,
    compatibility: Option<CompatibilityResult>,
}

fn cmd_analyze(target: &Target, no_compat: bool, node_limit: u64) -> Outcome {
    let (group, set) = resolve(target)?;
    let graph = cayley_graph(&group, &set)?;
    let a = analyze(&graph)?;
    let conditions = group.cyclic_order().map(|n| {
        let s: Vec<u64> = set.iter().map(|e| e.0[0]).collect();
        wilson::report(n, &s)
    });
    let arcs = arc_orbits(&graph, &a.aut)?.len();
    let edges = edge_orbits(&graph, &a.aut)?.len();
    let optional = |r: Result<bool, Error>| match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_size_limit() => Ok(None),
        Err(e) => Err(e),
    };
    let report = AnalyzeReport {
        group: group.descriptor(),
        set: set.iter().map(GroupElement::to_string).collect(),
        vertices: graph.order(),
        edges: graph.edge_count(),
        connected: a.connected,
        bipartite: a.bipartite,
        vertex_determining: a.vertex_determining,
        verdict: a.verdict.clone(),
        conditions,
        arc_transitive: arcs == 1,
        edge_transitive: edges == 1,
        set_stabilizer_transitive: optional(sufficient_arc_transitivity(&group, &set))?,
        normal_cayley: optional(is_normal_cayley(&group, &set))?,
        compatibility: if no_compat {
            None
        } else {
            Some(compatible_cayley_search(&group, &set, node_limit)?)
        },
    };
    print_json(&report)
}

fn cmd_compat(target: &Target, node_limit: u64, method: CompatMethod) -> Outcome {
    let (group, set) = resolve(target)?;
    let graph = cayley_graph(&group, &set)?;
    let results: Vec<CompatibilityResult> = match method {
        CompatMethod::Cayley => vec![compatible_cayley_search(&group, &set, node_limit)?],
        CompatMethod::Matrix => vec![compatible_matrix_search(&graph, node_limit)],
        CompatMethod::Both => vec![
            compatible_matrix_search(&graph, node_limit),
            compatible_cayley_search(&group, &set, node_limit)?,
        ],
    };
    if results.len() == 1 {
        print_json(&results[0])?;
    } else {
        print_json(&results)?;
    }
    if results.iter().any(|r| r.inconclusive) {
        return Err(Failure::Cap(format!("node limit {node_limit} reached before a decision")));
    }
    if results.windows(2).any(|w| w[0].compatible != w[1].compatible) {
        return Err(Failure::Check("matrix and Cayley searches disagree".into()));
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SkeletonReport {
    boolean_square: GraphSummary,
    cartesian_skeleton: GraphSummary,
    dispensable: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct GraphSummary {
    /// Neighbours of vertex 0, which determine a Cayley graph on the same group.
    set: Vec<String>,
    edges: Vec<(usize, usize)>,
}

fn summary(group: &AbelianGroup, g: &Graph) -> GraphSummary {
    GraphSummary {
        set: set_of_zero(g).into_iter().map(|i| group.element_at(i).to_string()).collect(),
        edges: g.edges(),
    }
}

fn cmd_skeleton(target: &Target, emit: Emit, out: Option<&PathBuf>) -> Outcome {
    let (group, set) = resolve(target)?;
    let graph = cayley_graph(&group, &set)?;
    let bs = boolean_square(&graph);
    let sk = cartesian_skeleton(&graph);
    match emit {
        Emit::Json => {
            let report = SkeletonReport {
                boolean_square: summary(&group, &bs),
                cartesian_skeleton: summary(&group, &sk),
                dispensable: dispensable_edges(&graph),
            };
            let text = serde_json::to_string_pretty(&report).expect("serialisable") + "\n";
            write_text(out, &text)
        }
        Emit::Dot => {
            let labels: Vec<String> = (0..graph.order()).map(|v| graph.label(v)).collect();
            let text = bs
                .with_labels(labels.clone())
                .to_dot()
                .replacen("graph G", "graph BooleanSquare", 1)
                + &sk.with_labels(labels).to_dot().replacen("graph G", "graph Skeleton", 1);
            write_text(out, &text)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DcoverReport {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// For odd circulants the cover is again a circulant.
    circulant: Option<CirculantForm>,
}

#[derive(Serialize)]
struct CirculantForm {
    n: u64,
    set: Vec<u64>,
}

fn cmd_dcover(target: &Target, emit: Emit, out: Option<&PathBuf>) -> Outcome {
    let (group, set) = resolve(target)?;
    let graph = cayley_graph(&group, &set)?;
    let cover = double_cover(&graph);
    match emit {
        Emit::Dot => write_text(out, &cover.to_dot()),
        Emit::Json => {
            let circulant = match group.cyclic_order() {
                Some(n) if n % 2 == 1 => {
                    let s: Vec<i64> = set.iter().map(|e| e.0[0] as i64).collect();
                    let (m, lifted) = double_cover_as_circulant(n, &s)?;
                    Some(CirculantForm { n: m, set: lifted })
                }
                _ => None,
            };
            let report = DcoverReport {
                n: cover.order(),
                edges: cover.edges(),
                circulant,
            };
            write_text(out, &(serde_json::to_string_pretty(&report).expect("serialisable") + "\n"))
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CsvRow<'a> {
    group: &'a str,
    set: String,
    status: String,
    aut_order: String,
    dcover_aut_order: String,
    trivial_reasons: String,
    connected: String,
    bipartite: String,
    vertex_determining: String,
    c1: String,
    c2: String,
    c2_bs: String,
    c2prime: String,
    c3: String,
    c4: String,
    arc_transitive: String,
    edge_transitive: String,
    normal_cayley: String,
    compatible: String,
    errors: String,
}

fn flag(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_default()
}

fn csv_row(r: &SurveyRecord) -> CsvRow<'_> {
    let c = r.conditions.as_ref();
    CsvRow {
        group: &r.group,
        set: r.set.to_text(),
        status: r.status.map(|s| s.as_str().to_string()).unwrap_or_default(),
        aut_order: r.aut_order.clone().unwrap_or_default(),
        dcover_aut_order: r.dcover_aut_order.clone().unwrap_or_default(),
        trivial_reasons: r
            .trivial_reasons
            .iter()
            .map(|t| serde_json::to_value(t).expect("serialisable").as_str().unwrap_or_default().to_string())
            .collect::<Vec<_>>()
            .join(" "),
        connected: flag(r.connected),
        bipartite: flag(r.bipartite),
        vertex_determining: flag(r.vertex_determining),
        c1: flag(c.map(|c| c.c1)),
        c2: flag(c.map(|c| c.c2)),
        c2_bs: c
            .map(|c| c.c2_bs.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
            .unwrap_or_default(),
        c2prime: flag(c.map(|c| c.c2prime)),
        c3: flag(c.map(|c| c.c3)),
        c4: flag(c.map(|c| c.c4)),
        arc_transitive: flag(r.arc_transitive),
        edge_transitive: flag(r.edge_transitive),
        normal_cayley: flag(r.normal_cayley),
        compatible: flag(r.compatible),
        errors: r.errors.join("; "),
    }
}

fn cmd_survey(args: &SurveyArgs) -> Outcome {
    let parity_ok = |n: u64| !(args.odd_only && n.is_multiple_of(2) || args.even_only && n % 2 == 1);
    let (lo, hi) = if args.abelian {
        (args.min_n.max(2), args.max_order.unwrap_or(args.max_n))
    } else {
        (args.min_n.max(2), args.max_n)
    };
    if lo > hi {
        return Err(Failure::Usage(format!("empty order range {lo}..={hi}")));
    }
    let mut jobs = Vec::new();
    for n in (lo..=hi).filter(|&n| parity_ok(n)) {
        if args.abelian {
            jobs.extend(enumerate_abelian_cayley(n)?);
        } else {
            let group = AbelianGroup::cyclic(n as i64)?;
            jobs.extend(
                enumerate_connection_sets(n)
                    .into_iter()
                    .map(|s| (group.clone(), s.into_iter().map(|x| GroupElement(vec![x])).collect())),
            );
        }
    }
    let opts = SurveyOptions {
        compat: match (args.with_compat, args.no_compat) {
            (true, _) => CompatMode::Always,
            (_, true) => CompatMode::Never,
            _ => CompatMode::Auto,
        },
        node_limit: args.node_limit,
        dedupe_ci: args.dedupe_ci,
        c2_b: args.c2_b,
        workers: args.workers,
        ..SurveyOptions::default()
    };
    let source = format!(
        "{} orders {lo}..={hi}{}",
        if args.abelian { "abelian" } else { "cyclic" },
        if args.odd_only {
            " odd"
        } else if args.even_only {
            " even"
        } else {
            ""
        }
    );
    let (aggregate, records) = run_survey(jobs, &source, &opts, args.out.as_deref())?;
    let agg_text = serde_json::to_string_pretty(&aggregate).expect("serialisable");
    if args.csv {
        let mut w = csv::Writer::from_writer(io::stdout());
        for r in &records {
            w.serialize(csv_row(r)).map_err(|e| Failure::Lib(Error::Io(e.to_string())))?;
        }
        w.flush()?;
        eprintln!("{agg_text}");
    } else {
        writeln!(io::stdout(), "{agg_text}")?;
    }
    Ok(())
}

fn cmd_thm3(l: u64, m: u64) -> Outcome {
    let cert = thm3_certificate(l, m)?;
    print_json(&cert)?;
    if cert.all_pass {
        Ok(())
    } else {
        Err(Failure::Check(format!("certificate for ({l},{m}) failed")))
    }
}

fn run(cli: Cli) -> Outcome {
    limits::set_vertex_cap(cli.caps.vertex_cap);
    limits::set_isomorphism_cap(cli.caps.iso_cap);
    limits::set_group_enumeration_cap(cli.caps.group_cap);
    limits::set_automorphism_count_cap(cli.caps.aut_count_cap);
    match &cli.command {
        Command::Analyze {
            target,
            no_compat,
            node_limit,
        } => cmd_analyze(target, *no_compat, *node_limit),
        Command::Conditions { n, set } => {
            let group = AbelianGroup::cyclic(*n as i64)?;
            let elems = group.parse_elements(set)?;
            let s: Vec<i64> = elems.iter().map(|e| e.0.first().copied().unwrap_or(0) as i64).collect();
            print_json(&wilson::check_all(*n, &s)?)
        }
        Command::Compat {
            target,
            node_limit,
            method,
        } => cmd_compat(target, *node_limit, *method),
        Command::Skeleton { target, emit, out } => cmd_skeleton(target, *emit, out.as_ref()),
        Command::Dcover { target, emit, out } => cmd_dcover(target, *emit, out.as_ref()),
        Command::Survey(args) => cmd_survey(args),
        Command::Family {
            family: Family::Thm3 { l, m },
        } => cmd_thm3(*l, *m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Lib(e) if e.is_size_limit() => (EXIT_RESOURCE_CAP, e.to_string()),
                Failure::Lib(e) => (EXIT_BAD_INPUT, e.to_string()),
                Failure::Check(m) => (EXIT_CHECK_FAILED, m),
                Failure::Usage(m) => (EXIT_BAD_INPUT, m),
                Failure::Cap(m) => (EXIT_RESOURCE_CAP, m),
            };
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
