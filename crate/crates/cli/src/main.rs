mod options;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use repcolor::corpus::{connected_graphs, named_instances};
use repcolor::graph::stability_number_with_cap;
use repcolor::inequalities::{
    internal_facet_sufficient, internal_inequality, separate_bruteforce, SepFamily,
};
use repcolor::io::{parse_dimacs, parse_ordering, parse_precoloring, parse_vertex_set, parse_weights, write_dimacs};
use repcolor::json::{inequality_from_json, inequality_to_json, point_from_json, rep_graph_to_json, Report};
use repcolor::lab::{
    copaw_system, edmonds_system, is_facet, quasiline_system, verify_characterization,
    verify_coltostab, verify_match_subset, verify_preext_identity, CharacterizationMode, Verdict,
};
use repcolor::lp::export_lp;
use repcolor::ordering::{ordering_by_weight, ordering_consistent};
use repcolor::rational::format_rational;
use repcolor::rep::{arcs_of, build_h_g};
use repcolor::solvers::{solve_coloring_matching, solve_exact, solve_precolor_ext_matching};
use repcolor::structure::{cojoin_decompose, contains_subgraph, Pattern};
use repcolor::{build_model, build_rep, Caps, Error, Graph, LinearInequality, Problem, Variant, VertexOrdering};

#[derive(Parser)]
#[command(name = "repcolor", version, about = "Representatives models for vertex coloring")]
struct Cli {
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap overrides, e.g. `odd=9,internal=9,cf=6`.
    #[arg(long, global = true, default_value = "")]
    caps: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Add wall time to the report (reports are then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum ProblemKind {
    Coloring,
    Maxcol,
    Preext,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Compact,
    Original,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Check {
    Coltostab,
    MatchSubset,
    Preext,
    EdmondsComplete,
    CopawComplete,
    QuasilineComplete,
    Facet,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Mode {
    /// Hull comparison when the arc count is within the hull cap, else probe.
    Auto,
    Hull,
    Probe,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Matching,
    Exact,
}

#[derive(clap::Args)]
struct ProblemArgs {
    #[arg(long, value_enum, default_value_t = ProblemKind::Coloring)]
    problem: ProblemKind,
    #[arg(long)]
    ordering: Option<PathBuf>,
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long)]
    precoloring: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the auxiliary graph on oriented non-edges.
    BuildRep {
        graph: PathBuf,
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the model in LP format, with a JSON sidecar holding the
    /// objective offset.
    ExportLp {
        graph: PathBuf,
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Compact)]
        variant: VariantArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Structural class membership of the graph.
    Classify { graph: PathBuf },
    /// Run a polyhedral check; exit 0 pass, 2 fail, 3 inconclusive.
    Verify {
        graph: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long)]
        precoloring: Option<PathBuf>,
        #[arg(long)]
        inequality: Option<PathBuf>,
        /// Vertex set for the internal inequality (facet check).
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Number of objectives for the LP probe.
        #[arg(long, default_value_t = 200)]
        k: usize,
    },
    /// Solve coloring, max-coloring or precoloring extension.
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
    /// Search for an inequality violated by a point.
    Separate {
        graph: PathBuf,
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long)]
        point: PathBuf,
        /// Comma separated: model, odd-set, internal, clique-family.
        #[arg(long, default_value = "model,odd-set,internal,clique-family")]
        families: String,
    },
    /// Facet test for an inequality, or for the internal inequality of a set.
    Facet {
        graph: PathBuf,
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long)]
        inequality: Option<PathBuf>,
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Write connected graphs up to isomorphism and named instances.
    Corpus {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Done,
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Done | Outcome::Pass => 0,
            Outcome::Fail => 2,
            Outcome::Inconclusive => 3,
        }
    }
}

struct Run {
    seed: u64,
    caps: Caps,
    inputs: BTreeMap<String, String>,
    parameters: serde_json::Map<String, Value>,
}

struct Output {
    results: Value,
    summary: Vec<String>,
    outcome: Outcome,
    exhausted: bool,
}

impl Output {
    fn done(results: Value, summary: Vec<String>) -> Self {
        Output {
            results,
            summary,
            outcome: Outcome::Done,
            exhausted: true,
        }
    }
}

impl Run {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).with_context(|| format!("{}", path.display()))?;
        self.inputs.insert(
            path.display().to_string(),
            hex::encode(Sha256::digest(&bytes)),
        );
        String::from_utf8(bytes).with_context(|| format!("{}: not UTF-8", path.display()))
    }

    fn param(&mut self, key: &str, value: Value) {
        self.parameters.insert(key.to_string(), value);
    }

    fn graph(&mut self, path: &Path) -> Result<Graph> {
        let text = self.read(path)?;
        parse_dimacs(&text).with_context(|| format!("{}", path.display()))
    }

    fn ordering(&mut self, g: &Graph, path: Option<&Path>) -> Result<Option<VertexOrdering>> {
        let Some(path) = path else { return Ok(None) };
        let text = self.read(path)?;
        Ok(Some(
            parse_ordering(&text, g.n()).with_context(|| format!("{}", path.display()))?,
        ))
    }

    fn problem(&mut self, g: &Graph, args: &ProblemArgs) -> Result<(Problem, VertexOrdering)> {
        let explicit = self.ordering(g, args.ordering.as_deref())?;
        let problem = match args.problem {
            ProblemKind::Coloring => Problem::Coloring,
            ProblemKind::Maxcol => {
                let path = args.weights.as_deref().context("maxcol needs --weights")?;
                let text = self.read(path)?;
                Problem::MaxColoring(
                    parse_weights(&text, g.n()).with_context(|| format!("{}", path.display()))?,
                )
            }
            ProblemKind::Preext => {
                let path = args.precoloring.as_deref().context("preext needs --precoloring")?;
                let text = self.read(path)?;
                Problem::PrecolorExt(
                    parse_precoloring(&text, g.n())
                        .with_context(|| format!("{}", path.display()))?,
                )
            }
        };
        let ord = match (explicit, &problem) {
            (Some(o), _) => o,
            (None, Problem::Coloring) => VertexOrdering::identity(g.n()),
            (None, Problem::MaxColoring(w)) => ordering_by_weight(g, w)?,
            (None, Problem::PrecolorExt(rho)) => ordering_consistent(g, rho)?,
        };
        self.param("problem", json!(problem_name(args.problem)));
        self.param("ordering", ordering_json(&ord));
        Ok((problem, ord))
    }
}

fn problem_name(p: ProblemKind) -> &'static str {
    match p {
        ProblemKind::Coloring => "coloring",
        ProblemKind::Maxcol => "maxcol",
        ProblemKind::Preext => "preext",
    }
}

fn ordering_json(ord: &VertexOrdering) -> Value {
    json!(ord.order().iter().map(|v| v + 1).collect::<Vec<_>>())
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn build_rep_cmd(run: &mut Run, graph: &Path, ordering: Option<&Path>, out: Option<&Path>) -> Result<Output> {
    let g = run.graph(graph)?;
    let ord = run
        .ordering(&g, ordering)?
        .unwrap_or_else(|| VertexOrdering::identity(g.n()));
    run.param("ordering", ordering_json(&ord));
    let rep = build_rep(&g, &ord)?;
    let body = rep_graph_to_json(&rep);
    let mut results = json!({
        "arcs": rep.num_arcs(),
        "edges": rep.graph().num_edges(),
    });
    if let Some(out) = out {
        write_atomic(out, &(serde_json::to_string_pretty(&body)? + "\n"))?;
        results["out"] = json!(out.display().to_string());
    } else {
        results["rep"] = body;
    }
    let summary = vec![
        format!("arcs: {}", rep.num_arcs()),
        format!("edges: {}", rep.graph().num_edges()),
    ];
    Ok(Output::done(results, summary))
}

fn export_lp_cmd(
    run: &mut Run,
    graph: &Path,
    args: &ProblemArgs,
    variant: VariantArg,
    out: &Path,
) -> Result<Output> {
    let g = run.graph(graph)?;
    let (problem, ord) = run.problem(&g, args)?;
    let variant = match variant {
        VariantArg::Compact => Variant::Compact,
        VariantArg::Original => Variant::Original,
    };
    let model = build_model(&g, &ord, variant, &problem)?;
    let lp = export_lp(&model);
    let sidecar = json!({
        "problem": problem_name(args.problem),
        "variant": if variant == Variant::Compact { "compact" } else { "original" },
        "ordering": ordering_json(&ord),
        "objective_offset": format_rational(&lp.offset),
        "objective_scale": format_rational(&lp.objective_scale),
    });
    let sidecar_path = PathBuf::from(format!("{}.json", out.display()));
    write_atomic(out, &lp.text)?;
    write_atomic(&sidecar_path, &(serde_json::to_string_pretty(&sidecar)? + "\n"))?;
    let results = json!({
        "out": out.display().to_string(),
        "sidecar": sidecar_path.display().to_string(),
        "variables": model.variables.len(),
        "constraints": model.constraints.len(),
        "fixings": model.fixings.len(),
        "objective_offset": format_rational(&lp.offset),
        "objective_scale": format_rational(&lp.objective_scale),
    });
    let summary = vec![
        format!(
            "wrote {} ({} variables, {} constraints)",
            out.display(),
            model.variables.len(),
            model.constraints.len()
        ),
        format!("objective offset: {}", format_rational(&lp.offset)),
    ];
    Ok(Output::done(results, summary))
}

fn classify_cmd(run: &mut Run, graph: &Path) -> Result<Output> {
    let g = run.graph(graph)?;
    let co = g.complement();
    let alpha = stability_number_with_cap(&g, run.caps.stable_vertices)?;
    let co_copaw_free = ![Pattern::K4, Pattern::Paw, Pattern::Diamond]
        .iter()
        .any(|&p| contains_subgraph(&co, p));
    let co_kite_free = !contains_subgraph(&co, Pattern::Kite);
    let co_claw_free = !contains_subgraph(&co, Pattern::Claw);
    let mut results = json!({
        "n": g.n(),
        "m": g.num_edges(),
        "alpha": alpha,
        "alpha_le_2": alpha <= 2,
        "co_K4_diamond_paw_free": co_copaw_free,
        "co_kite_free": co_kite_free,
        "co_claw_free": co_claw_free,
    });
    let mut summary = vec![
        format!("alpha: {alpha}"),
        format!("alpha_le_2: {}", alpha <= 2),
        format!("co_K4_diamond_paw_free: {co_copaw_free}"),
        format!("co_kite_free: {co_kite_free}"),
    ];
    if let Some(d) = cojoin_decompose(&g) {
        let triples: Vec<Vec<usize>> = d
            .triples
            .iter()
            .map(|t| t.iter().map(|v| v + 1).collect())
            .collect();
        summary.push(format!("decomposition: {} stable triple(s)", triples.len()));
        results["decomposition"] = json!({
            "rest": d.rest.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "triples": triples,
        });
    }
    Ok(Output::done(results, summary))
}

fn load_inequality(run: &mut Run, path: &Path) -> Result<LinearInequality> {
    let text = run.read(path)?;
    inequality_from_json(&text).with_context(|| format!("{}", path.display()))
}

fn load_set(run: &mut Run, g: &Graph, path: &Path) -> Result<Vec<usize>> {
    let text = run.read(path)?;
    parse_vertex_set(&text, g.n()).with_context(|| format!("{}", path.display()))
}

struct VerifyArgs<'a> {
    check: Check,
    ordering: Option<&'a Path>,
    precoloring: Option<&'a Path>,
    inequality: Option<&'a Path>,
    set: Option<&'a Path>,
    mode: Mode,
    k: usize,
}

fn characterization_mode(run: &Run, g: &Graph, ord: &VertexOrdering, mode: Mode, k: usize) -> CharacterizationMode {
    let probe = CharacterizationMode::LpObjectiveProbe { k, seed: run.seed };
    match mode {
        Mode::Hull => CharacterizationMode::HullCompare,
        Mode::Probe => probe,
        Mode::Auto if arcs_of(g, ord).len() <= run.caps.hull_arcs => CharacterizationMode::HullCompare,
        Mode::Auto => probe,
    }
}

fn mode_name(m: CharacterizationMode) -> &'static str {
    match m {
        CharacterizationMode::HullCompare => "hull",
        CharacterizationMode::LpObjectiveProbe { .. } => "probe",
    }
}

fn verify_cmd(run: &mut Run, graph: &Path, a: &VerifyArgs) -> Result<Output> {
    let g = run.graph(graph)?;
    let caps = run.caps;
    let mut rho = None;
    if let Some(path) = a.precoloring {
        let text = run.read(path)?;
        rho = Some(parse_precoloring(&text, g.n()).with_context(|| format!("{}", path.display()))?);
    }
    let ord = match (run.ordering(&g, a.ordering)?, &rho) {
        (Some(o), _) => o,
        (None, Some(r)) if a.check == Check::Preext => ordering_consistent(&g, r)?,
        (None, _) => VertexOrdering::identity(g.n()),
    };
    run.param("ordering", ordering_json(&ord));
    let name = a
        .check
        .to_possible_value()
        .expect("named variant")
        .get_name()
        .to_string();
    run.param("check", json!(name));

    let mut extra_exhausted = true;
    let verdict: Verdict = match a.check {
        Check::Coltostab => verify_coltostab(&g, &ord, &caps)?,
        Check::MatchSubset => verify_match_subset(&g, &ord, &caps)?,
        Check::Preext => {
            let rho = rho.context("--check preext needs --precoloring")?;
            verify_preext_identity(&g, &rho, &ord, &caps)?
        }
        Check::EdmondsComplete => {
            let mode = characterization_mode(run, &g, &ord, a.mode, a.k);
            run.param("mode", json!(mode_name(mode)));
            let system = edmonds_system(&g, &ord, &caps);
            // odd sets beyond the cap are missing from the system
            extra_exhausted = g.n() <= caps.odd_set;
            verify_characterization(&g, &ord, &system, mode, &caps)?
        }
        Check::CopawComplete => {
            let Some(system) = copaw_system(&g, &ord, &caps)? else {
                bail!("complement contains K4, paw or diamond; the path gadget graph does not apply");
            };
            let mode = characterization_mode(run, &g, &ord, a.mode, a.k);
            run.param("mode", json!(mode_name(mode)));
            let gadget_n = build_h_g(&g, &ord)?.map_or(0, |h| h.graph.n());
            extra_exhausted = gadget_n <= caps.odd_set;
            verify_characterization(&g, &ord, &system, mode, &caps)?
        }
        Check::QuasilineComplete => {
            let mode = characterization_mode(run, &g, &ord, a.mode, a.k);
            run.param("mode", json!(mode_name(mode)));
            let (system, complete) = quasiline_system(&g, &ord, &caps)?;
            let mut verdict = verify_characterization(&g, &ord, &system, mode, &caps)?;
            if !verdict.holds && !complete {
                // escalate the family cap once before reporting
                let mut wider = caps;
                wider.clique_family += 2;
                run.param("cf_escalated", json!(wider.clique_family));
                let (system, complete2) = quasiline_system(&g, &ord, &wider)?;
                verdict = verify_characterization(&g, &ord, &system, mode, &wider)?;
                extra_exhausted = complete2;
            } else {
                extra_exhausted = complete;
            }
            verdict
        }
        Check::Facet => {
            let ineq = match (a.inequality, a.set) {
                (Some(p), _) => load_inequality(run, p)?,
                (None, Some(p)) => {
                    let s = load_set(run, &g, p)?;
                    internal_inequality(&g, &ord, &s)?
                }
                (None, None) => bail!("--check facet needs --inequality or --set"),
            };
            let holds = is_facet(&ineq, &g, &ord, &caps)?;
            Verdict {
                holds,
                witnesses: vec![inequality_to_json(&ineq)],
                exhausted: true,
            }
        }
    };
    // a truncated system that still describes the hull is a proof; a
    // failure of one is not a refutation
    let exhausted = verdict.exhausted && (verdict.holds || extra_exhausted);
    let outcome = match (verdict.holds, exhausted) {
        (true, true) => Outcome::Pass,
        (false, true) => Outcome::Fail,
        (_, false) => Outcome::Inconclusive,
    };
    let report = Report {
        check: name.clone(),
        graph: json!(graph.display().to_string()),
        ordering: Some(ord.order().to_vec()),
        result: verdict.holds,
        witnesses: verdict.witnesses,
        seed: Some(run.seed),
        exhausted,
    };
    let status = match outcome {
        Outcome::Pass | Outcome::Done => "pass",
        Outcome::Fail => "fail",
        Outcome::Inconclusive => "inconclusive",
    };
    Ok(Output {
        results: report.to_json(),
        summary: vec![format!("{name}: {status}")],
        outcome,
        exhausted,
    })
}

fn solve_cmd(run: &mut Run, graph: &Path, args: &ProblemArgs, method: Method) -> Result<Output> {
    let g = run.graph(graph)?;
    let (problem, ord) = run.problem(&g, args)?;
    let caps = run.caps;
    let sol = match (method, &problem) {
        (Method::Exact, _) => {
            run.param("method", json!("exact"));
            solve_exact(&g, &ord, &problem, &caps)?
        }
        (Method::Matching, Problem::Coloring) => {
            run.param("method", json!("matching"));
            solve_coloring_matching(&g, &caps)?
        }
        (Method::Matching, Problem::PrecolorExt(rho)) => {
            run.param("method", json!("matching"));
            solve_precolor_ext_matching(&g, rho, &caps)?
        }
        (Method::Matching, Problem::MaxColoring(_)) => {
            bail!("max-coloring has no matching method; use --method exact")
        }
    };
    let mut results = sol.to_json();
    results["ordering"] = ordering_json(&sol.ordering);
    let classes: Vec<String> = sol
        .classes
        .iter()
        .map(|c| {
            let ids: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
            format!("{{{}}}", ids.join(","))
        })
        .collect();
    let summary = vec![
        format!("colors: {}", sol.colors_used),
        format!("objective: {}", format_rational(&sol.objective)),
        format!("classes: {}", classes.join(" ")),
    ];
    Ok(Output::done(results, summary))
}

fn separate_cmd(
    run: &mut Run,
    graph: &Path,
    ordering: Option<&Path>,
    point: &Path,
    families: &str,
) -> Result<Output> {
    let g = run.graph(graph)?;
    let ord = run
        .ordering(&g, ordering)?
        .unwrap_or_else(|| VertexOrdering::identity(g.n()));
    run.param("ordering", ordering_json(&ord));
    let text = run.read(point)?;
    let p = point_from_json(&text).with_context(|| format!("{}", point.display()))?;
    let fams: Vec<SepFamily> = families
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| SepFamily::parse(s).with_context(|| format!("unknown family `{s}`")))
        .collect::<Result<_>>()?;
    run.param("families", json!(families));
    let sep = separate_bruteforce(&g, &ord, &p, &fams, &run.caps)?;
    let (results, summary) = match &sep.violated {
        Some((ineq, amount)) => (
            json!({
                "violated": inequality_to_json(ineq),
                "violation": format_rational(amount),
                "exhausted": sep.exhausted,
            }),
            vec![
                format!("violated: {ineq}"),
                format!("violation: {}", format_rational(amount)),
            ],
        ),
        None => (
            json!({ "violated": Value::Null, "exhausted": sep.exhausted }),
            vec!["none".to_string()],
        ),
    };
    Ok(Output {
        results,
        summary,
        outcome: Outcome::Done,
        exhausted: sep.exhausted,
    })
}

fn facet_cmd(
    run: &mut Run,
    graph: &Path,
    ordering: Option<&Path>,
    inequality: Option<&Path>,
    set: Option<&Path>,
) -> Result<Output> {
    let g = run.graph(graph)?;
    let ord = run
        .ordering(&g, ordering)?
        .unwrap_or_else(|| VertexOrdering::identity(g.n()));
    run.param("ordering", ordering_json(&ord));
    let mut results = json!({});
    let ineq = match (inequality, set) {
        (Some(p), _) => load_inequality(run, p)?,
        (None, Some(p)) => {
            let s = load_set(run, &g, p)?;
            let cond = internal_facet_sufficient(&g, &s)?;
            results["sufficient_condition"] = json!(cond.tag());
            internal_inequality(&g, &ord, &s)?
        }
        (None, None) => bail!("facet needs --inequality or --set"),
    };
    let facet = is_facet(&ineq, &g, &ord, &run.caps)?;
    results["inequality"] = inequality_to_json(&ineq);
    results["is_facet"] = json!(facet);
    Ok(Output {
        results,
        summary: vec![format!("{ineq}"), format!("facet: {facet}")],
        outcome: if facet { Outcome::Pass } else { Outcome::Fail },
        exhausted: true,
    })
}

fn corpus_cmd(run: &mut Run, max_n: usize, out: &Path) -> Result<Output> {
    if max_n > 7 {
        bail!("--max-n is limited to 7");
    }
    run.param("max_n", json!(max_n));
    std::fs::create_dir_all(out).with_context(|| format!("{}", out.display()))?;
    let mut per_n = Vec::new();
    for n in 1..=max_n {
        let graphs = connected_graphs(n);
        for (i, g) in graphs.iter().enumerate() {
            write_atomic(&out.join(format!("n{n}_{:04}.col", i + 1)), &write_dimacs(g))?;
        }
        per_n.push(graphs.len());
    }
    let named = named_instances();
    for (name, g) in &named {
        write_atomic(&out.join(format!("{name}.col")), &write_dimacs(g))?;
    }
    let total: usize = per_n.iter().sum();
    let summary = vec![
        format!("connected graphs: {total} ({per_n:?} for n = 1..{max_n})"),
        format!("named instances: {}", named.len()),
    ];
    Ok(Output::done(
        json!({
            "connected": total,
            "per_n": per_n,
            "named": named.iter().map(|(n, _)| format!("{n}.col")).collect::<Vec<_>>(),
        }),
        summary,
    ))
}

fn dispatch(run: &mut Run, command: &Command) -> Result<(&'static str, Output)> {
    Ok(match command {
        Command::BuildRep { graph, ordering, out } => (
            "build-rep",
            build_rep_cmd(run, graph, ordering.as_deref(), out.as_deref())?,
        ),
        Command::ExportLp {
            graph,
            problem,
            variant,
            out,
        } => ("export-lp", export_lp_cmd(run, graph, problem, *variant, out)?),
        Command::Classify { graph } => ("classify", classify_cmd(run, graph)?),
        Command::Verify {
            graph,
            check,
            ordering,
            precoloring,
            inequality,
            set,
            mode,
            k,
        } => (
            "verify",
            verify_cmd(
                run,
                graph,
                &VerifyArgs {
                    check: *check,
                    ordering: ordering.as_deref(),
                    precoloring: precoloring.as_deref(),
                    inequality: inequality.as_deref(),
                    set: set.as_deref(),
                    mode: *mode,
                    k: *k,
                },
            )?,
        ),
        Command::Solve {
            graph,
            problem,
            method,
        } => ("solve", solve_cmd(run, graph, problem, *method)?),
        Command::Separate {
            graph,
            ordering,
            point,
            families,
        } => (
            "separate",
            separate_cmd(run, graph, ordering.as_deref(), point, families)?,
        ),
        Command::Facet {
            graph,
            ordering,
            inequality,
            set,
        } => (
            "facet",
            facet_cmd(run, graph, ordering.as_deref(), inequality.as_deref(), set.as_deref())?,
        ),
        Command::Corpus { max_n, out } => ("corpus", corpus_cmd(run, *max_n, out)?),
    })
}

/// Writes one block to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let caps = match options::parse_caps(&cli.caps) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let mut run = Run {
        seed: cli.seed,
        caps,
        inputs: BTreeMap::new(),
        parameters: serde_json::Map::new(),
    };
    match dispatch(&mut run, &cli.command) {
        Ok((command, out)) => {
            match cli.format {
                Format::Text => {
                    if !out.summary.is_empty() {
                        emit(&out.summary.join("\n"));
                    }
                }
                Format::Json => {
                    let mut report = json!({
                        "command": command,
                        "inputs": run.inputs,
                        "parameters": run.parameters,
                        "results": out.results,
                        "seed": run.seed,
                        "exhausted": out.exhausted,
                    });
                    if cli.timing {
                        report["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
                    }
                    emit(&serde_json::to_string_pretty(&report).expect("serializable"));
                }
            }
            ExitCode::from(out.outcome.code())
        }
        Err(e) => {
            let capped = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::CapExceeded { .. })));
            eprintln!("error: {e:#}");
            if capped {
                if let Format::Json = cli.format {
                    emit(
                        &serde_json::to_string_pretty(&json!({
                            "error": format!("{e:#}"),
                            "exhausted": false,
                            "seed": run.seed,
                        }))
                        .expect("serializable"),
                    );
                }
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
