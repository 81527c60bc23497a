use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cwkit_core::bubble::{path_power_bubbles, render_bubbles};
use cwkit_core::cwexpr::{check_certificate, evaluate, parse_expr, CwExpr};
use cwkit_core::embed::{check_embedding, find_embedding, phi_s, phi_z, EmbedSearch, Embedding, PhiOutcome};
use cwkit_core::families::{FamilySpec, SPlusCase};
use cwkit_core::graph::{read_graph, write_graph, Graph};
use cwkit_core::solver::{cwd_decide, cwd_exact, lcwd_decide, lcwd_exact, Decision, WidthKind};
use cwkit_core::synth::{search_certificate, SynthOutcome};
use cwkit_core::verify::{self, Level, Params, Status};
use cwkit_core::Budget;

/// Exit code for answers the search could not settle within its budget.
const UNKNOWN: u8 = 2;

#[derive(Parser)]
#[command(name = "cwkit", version, about = "Clique-width and linear clique-width toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family graph.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the bubble model of a path-power family member.
    Bubbles {
        #[command(flatten)]
        family: FamilyArgs,
        /// Vertex name to highlight, e.g. z_8. `z_g` marks the hole of J_k.
        #[arg(long)]
        mark: Option<String>,
    },
    /// Expression utilities.
    Expr {
        #[command(subcommand)]
        command: ExprCommand,
    },
    /// Check or search an induced embedding of one graph into another.
    Embed(EmbedArgs),
    /// Search vertex orderings for a linear expression of bounded width.
    Synth {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        width: usize,
        /// Time limit in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Write the certificate here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Exact width computation or decision.
    Solve {
        #[arg(value_enum)]
        parameter: Parameter,
        graph: PathBuf,
        /// Decide whether the width is at most W instead of computing it.
        #[arg(long, value_name = "W")]
        decide: Option<usize>,
        /// Time limit in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Write the certificate here when one is found.
        #[arg(long, value_name = "FILE")]
        emit_cert: Option<PathBuf>,
    },
    /// Run a named claim check, or every check of a level with `all`.
    Verify {
        claim: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        l: Option<i64>,
        #[arg(long, default_value = "desk")]
        level: Level,
        /// Directory for evidence files, `summary.tsv` and `report.txt`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Treat CLAIM as an evidence directory and re-check every
        /// certificate and embedding in it.
        #[arg(long)]
        recheck: bool,
    },
}

#[derive(Subcommand)]
enum ExprCommand {
    /// Evaluate an expression file and optionally check it against a graph.
    Eval {
        file: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long)]
        width_limit: Option<usize>,
        #[arg(long)]
        require_linear: bool,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// path-power, J, Z, F, S, S+, M, M2+, M2- or gem.
    #[arg(long)]
    family: String,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    l: Option<i64>,
    #[arg(long)]
    case: Option<SPlusCase>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        Ok(FamilySpec::from_parts(&self.family, self.k, self.n, self.l, self.case)?)
    }
}

#[derive(Args)]
struct EmbedArgs {
    /// Guest graph; defaults to the map's own guest.
    #[arg(long)]
    guest: Option<PathBuf>,
    /// Host graph; defaults to the map's own host.
    #[arg(long)]
    host: Option<PathBuf>,
    #[arg(long, value_enum)]
    map: Option<MapKind>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    case: Option<SPlusCase>,
    /// Time limit in seconds for the search.
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    PhiZ,
    PhiS,
}

#[derive(Clone, Copy, ValueEnum)]
enum Parameter {
    Lcwd,
    Cwd,
}

fn budget(secs: Option<f64>) -> Budget {
    secs.map_or_else(Budget::unlimited, Budget::seconds)
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_expr(path: &Path) -> Result<CwExpr> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_expr(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_cert(path: &Path, e: &CwExpr, linear: bool) -> Result<()> {
    let kind = if linear { "linear" } else { "general" };
    write_out(Some(path), &format!("# width {} {kind}\n{e}\n", e.width()))
}

fn gen(family: &FamilyArgs, output: Option<&Path>) -> Result<ExitCode> {
    let g = family.spec()?.build()?;
    write_out(output, &write_graph(&g))?;
    Ok(ExitCode::SUCCESS)
}

fn bubbles(family: &FamilyArgs, mark: Option<&str>) -> Result<ExitCode> {
    let spec = family.spec()?;
    let (k, n) = spec
        .path_power_params()
        .ok_or_else(|| anyhow!("family {} is not a path power", family.family))?;
    let g = spec.build()?;
    let mark = match mark {
        None => None,
        Some("z_g") if matches!(spec, FamilySpec::J { .. }) => Some(cwkit_core::families::j_hole(k)),
        Some(name) => Some(g.id_of(name).ok_or_else(|| anyhow!("no vertex named {name:?}"))?),
    };
    print!("{}", render_bubbles(&path_power_bubbles(k, n), Some(&g), mark));
    Ok(ExitCode::SUCCESS)
}

fn expr_eval(file: &Path, against: Option<&Path>, width_limit: Option<usize>, require_linear: bool) -> Result<ExitCode> {
    let e = load_expr(file)?;
    let width = e.width();
    let linear = e.is_linear();
    println!("width {width}, {}", if linear { "linear" } else { "not linear" });
    let Some(path) = against else {
        let built = evaluate(&e)?;
        println!("builds {} vertices, {} edges", built.graph.n(), built.graph.edge_count());
        let ok = width_limit.is_none_or(|w| width <= w) && (!require_linear || linear);
        return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
    };
    let g = load_graph(path)?;
    let check = check_certificate(&e, &g, width_limit.unwrap_or(usize::MAX), require_linear);
    if check.accepted {
        println!("accepted");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("rejected: {}", check.reason.unwrap_or_default());
        Ok(ExitCode::FAILURE)
    }
}

/// Carry `e` over to graphs with the same vertex names.
fn transfer(e: &Embedding, guest: Graph, host: Graph) -> Result<Embedding> {
    let names: HashMap<String, String> = e
        .guest
        .ids()
        .map(|v| (e.guest.display_name(v), e.host.display_name(e.image(v))))
        .collect();
    let mut map = Vec::with_capacity(guest.n());
    for v in guest.ids() {
        let name = guest.display_name(v);
        let image = names
            .get(&name)
            .ok_or_else(|| anyhow!("guest vertex {name} is not covered by the map"))?;
        map.push(host.id_of(image).ok_or_else(|| anyhow!("host has no vertex {image}"))?);
    }
    Ok(Embedding { guest, host, map })
}

fn embed(a: &EmbedArgs) -> Result<ExitCode> {
    let given_guest = a.guest.as_deref().map(load_graph).transpose()?;
    let given_host = a.host.as_deref().map(load_graph).transpose()?;
    let embedding = match a.map {
        Some(kind) => {
            let k = a.k.ok_or_else(|| anyhow!("--map needs --k"))?;
            let t = a.t.ok_or_else(|| anyhow!("--map needs --t"))?;
            let e = match kind {
                MapKind::PhiZ => phi_z(k, t)?,
                MapKind::PhiS => {
                    let case = a.case.ok_or_else(|| anyhow!("--map phi-s needs --case"))?;
                    match phi_s(k, t, case)? {
                        PhiOutcome::Embedded(e) => e,
                        PhiOutcome::Unavailable => {
                            println!("unavailable: the index map leaves the host for k={k}, t={t}");
                            return Ok(ExitCode::from(UNKNOWN));
                        }
                    }
                }
            };
            let guest = given_guest.unwrap_or_else(|| e.guest.clone());
            let host = given_host.unwrap_or_else(|| e.host.clone());
            transfer(&e, guest, host)?
        }
        None => {
            let (Some(guest), Some(host)) = (given_guest, given_host) else {
                bail!("without --map both --guest and --host are required");
            };
            match find_embedding(&guest, &host, budget(a.budget)) {
                EmbedSearch::Found(e) => e,
                EmbedSearch::NotFound { exhausted: true } => {
                    println!("no embedding (search exhausted)");
                    return Ok(ExitCode::FAILURE);
                }
                EmbedSearch::NotFound { exhausted: false } => {
                    println!("unknown: budget ran out");
                    return Ok(ExitCode::from(UNKNOWN));
                }
            }
        }
    };
    if check_embedding(&embedding) {
        print!("{}", embedding.to_text());
        println!("checked: induced embedding");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("not an induced embedding");
        Ok(ExitCode::FAILURE)
    }
}

fn synth(graph: &Path, width: usize, secs: Option<f64>, emit: Option<&Path>) -> Result<ExitCode> {
    let g = load_graph(graph)?;
    match search_certificate(&g, width, budget(secs))? {
        SynthOutcome::Found { expr, order } => {
            let names: Vec<String> = order.iter().map(|&v| g.display_name(v)).collect();
            println!("found width {} ordering: {}", expr.width(), names.join(" "));
            match emit {
                Some(p) => write_cert(p, &expr, true)?,
                None => println!("{expr}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        SynthOutcome::NotFound { exhausted: true } => {
            println!("no ordering of width {width} exists");
            Ok(ExitCode::FAILURE)
        }
        SynthOutcome::NotFound { exhausted: false } => {
            println!("unknown: budget ran out");
            Ok(ExitCode::from(UNKNOWN))
        }
    }
}

fn solve(parameter: Parameter, graph: &Path, decide: Option<usize>, secs: Option<f64>, emit: Option<&Path>) -> Result<ExitCode> {
    let g = load_graph(graph)?;
    let b = budget(secs);
    let linear = matches!(parameter, Parameter::Lcwd);
    let name = if linear { "lcwd" } else { "cwd" };
    let (cert, code) = if let Some(w) = decide {
        let d = if linear { lcwd_decide(&g, w, b)? } else { cwd_decide(&g, w, b)? };
        let stats = format!("{} nodes, {:.3}s", d.stats.nodes, d.stats.seconds);
        match d.decision {
            Decision::Yes(e) => {
                println!("yes: {name} <= {w} ({stats})");
                (Some(e), ExitCode::SUCCESS)
            }
            Decision::No => {
                println!("no: {name} > {w} ({stats})");
                (None, ExitCode::SUCCESS)
            }
            Decision::Unknown => {
                println!("unknown: {name} <= {w} undecided ({stats})");
                (None, ExitCode::from(UNKNOWN))
            }
        }
    } else {
        let r = if linear { lcwd_exact(&g, b)? } else { cwd_exact(&g, b)? };
        match r.kind {
            WidthKind::Exact => {
                println!("{name} = {}", r.upper);
                (r.certificate, ExitCode::SUCCESS)
            }
            WidthKind::Bounds => {
                println!("{} <= {name} <= {} (budget ran out)", r.lower, r.upper);
                (r.certificate, ExitCode::from(UNKNOWN))
            }
        }
    };
    if let (Some(path), Some(e)) = (emit, cert.as_ref()) {
        write_cert(path, e, linear)?;
    }
    Ok(code)
}

fn run_verify(claim: &str, k: Option<i64>, l: Option<i64>, level: Level, out: Option<&Path>, recheck: bool) -> Result<ExitCode> {
    if recheck {
        let counts = verify::recheck_evidence(Path::new(claim))?;
        println!(
            "rechecked {} certificates and {} embeddings",
            counts.certificates, counts.embeddings
        );
        return Ok(ExitCode::SUCCESS);
    }
    let report = if claim == "all" {
        verify::run_all(level, out)?
    } else {
        let params = Params { k, l };
        let mut c = verify::run_check(claim, params, Budget::seconds(level.claim_seconds()))?;
        if let Some(dir) = out {
            c.evidence_dir = Some(verify::write_evidence(&c, dir)?);
        }
        let report = verify::Report { level, checks: vec![c] };
        if let Some(dir) = out {
            fs::write(dir.join("summary.tsv"), report.summary_tsv())?;
            fs::write(dir.join("report.txt"), report.text())?;
        }
        report
    };
    print!("{}", report.text());
    let any = |s: Status| report.checks.iter().any(|c| c.status == s);
    Ok(if any(Status::Refuted) {
        ExitCode::FAILURE
    } else if claim != "all" && any(Status::Unknown) {
        ExitCode::from(UNKNOWN)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen { family, output } => gen(&family, output.as_deref()),
        Command::Bubbles { family, mark } => bubbles(&family, mark.as_deref()),
        Command::Expr {
            command:
                ExprCommand::Eval {
                    file,
                    against,
                    width_limit,
                    require_linear,
                },
        } => expr_eval(&file, against.as_deref(), width_limit, require_linear),
        Command::Embed(a) => embed(&a),
        Command::Synth {
            graph,
            width,
            budget,
            emit,
        } => synth(&graph, width, budget, emit.as_deref()),
        Command::Solve {
            parameter,
            graph,
            decide,
            budget,
            emit_cert,
        } => solve(parameter, &graph, decide, budget, emit_cert.as_deref()),
        Command::Verify {
            claim,
            k,
            l,
            level,
            out,
            recheck,
        } => run_verify(&claim, k, l, level, out.as_deref(), recheck),
    }
}
