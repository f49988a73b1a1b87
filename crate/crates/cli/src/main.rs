//! `semiflows`: exact semiflow analysis of place/transition nets.
//!
//! Every subcommand prints one report (JSON by default). Exit status is 0 on
//! success, 1 when a check returns a negative verdict, and 2 on bad input.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::Value;

use semiflows::behavior::{invariant_report, reach_report, DEFAULT_STATE_CAP};
use semiflows::bounds::{refined_bound, sperner_bound};
use semiflows::natdec::{greedy_decompose, nat_decomposable};
use semiflows::oracle::{brute_minimal_semiflows, brute_minimal_supports, brute_semiflows};
use semiflows::rational::{extract_q_basis, in_cone, solve_q};
use semiflows::{parse_net, Analysis, Domain, Error, Marking, PetriNet, Semiflow, Witness};

use report::{big, count, object, places, rationals, semiflow, semiflows, support};

#[derive(Parser)]
#[command(name = "semiflows", version, about = "Exact semiflow (place invariant) analysis of Petri nets")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Over {
    Nat,
    Qplus,
    Q,
}

impl From<Over> for Domain {
    fn from(o: Over) -> Domain {
        match o {
            Over::Nat => Domain::Nat,
            Over::Qplus => Domain::QPlus,
            Over::Q => Domain::Q,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a net and echo it in canonical form.
    Parse { net: PathBuf },
    /// Print a generating set of all semiflows: the minimal semiflows over
    /// nat, the fundamental set over qplus, a basis of it over q.
    Generate {
        #[arg(long, value_enum)]
        over: Over,
        net: PathBuf,
    },
    /// Classify vectors: semiflow, canonical, minimal support, minimal.
    Classify {
        /// Comma-separated coordinates in place declaration order; repeatable.
        #[arg(long = "vector", value_name = "COORDS", required = true)]
        vectors: Vec<String>,
        net: PathBuf,
    },
    /// Decide whether a set of semiflows is a (minimal, least) generating set.
    CheckGs {
        #[arg(long, value_enum)]
        over: Over,
        /// JSON file holding an array of coordinate arrays.
        #[arg(long)]
        set: PathBuf,
        /// Cross-check minimality by removing each member in turn.
        #[arg(long)]
        paranoid: bool,
        net: PathBuf,
    },
    /// Decompose a vector over a set of generators.
    Decompose {
        #[arg(long, value_enum)]
        over: Over,
        /// Comma-separated coordinates of the vector to decompose.
        #[arg(long, value_name = "COORDS")]
        vector: String,
        /// JSON file of generators; defaults to the set printed by `generate`.
        #[arg(long)]
        set: Option<PathBuf>,
        /// Greedy decomposition trying generators in this order (0-based
        /// positions in the generator list). Only with `--over nat`.
        #[arg(long, value_delimiter = ',', value_name = "IDS")]
        order: Option<Vec<usize>>,
        net: PathBuf,
    },
    /// Upper bounds on the number of minimal supports.
    Bound { net: PathBuf },
    /// Explore the reachability graph and decide home state and liveness.
    Verify {
        /// Use the initial marking declared in the net file (the default).
        #[arg(long, conflicts_with = "m0")]
        m0_from_file: bool,
        /// Initial marking as comma-separated token counts.
        #[arg(long, value_name = "COORDS")]
        m0: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
        net: PathBuf,
    },
    /// Brute-force enumeration of the box [0, bound]^places, for cross-checks.
    Oracle {
        #[arg(long)]
        bound: u64,
        net: PathBuf,
    },
}

/// A report and whether it carries a negative verdict.
struct Outcome {
    report: Value,
    negative: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, negative: false }
    }
}

type CliResult<T> = std::result::Result<T, String>;

fn lib<T>(r: semiflows::Result<T>) -> CliResult<T> {
    r.map_err(|e| e.to_string())
}

fn load_net(path: &Path) -> CliResult<(PetriNet, Marking)> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_net(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_coords(text: &str, dim: usize) -> CliResult<Vec<BigUint>> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<BigUint>()
                .map_err(|_| format!("'{}' is not a non-negative integer", s.trim()))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if coords.len() != dim {
        return Err(format!("expected {dim} coordinates, found {}", coords.len()));
    }
    Ok(coords)
}

fn json_coord(v: &Value) -> CliResult<BigUint> {
    let digits = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(format!("coordinate {other} is not an integer")),
    };
    digits
        .parse()
        .map_err(|_| format!("coordinate {digits} is not a non-negative integer"))
}

fn load_set(path: &Path, dim: usize) -> CliResult<Vec<Semiflow>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let rows = value
        .as_array()
        .ok_or_else(|| format!("{}: expected an array of coordinate arrays", path.display()))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let coords = row
                .as_array()
                .ok_or_else(|| format!("{}: entry {i} is not an array", path.display()))?
                .iter()
                .map(json_coord)
                .collect::<CliResult<Vec<_>>>()?;
            if coords.len() != dim {
                return Err(format!(
                    "{}: entry {i} has {} coordinates, expected {dim}",
                    path.display(),
                    coords.len()
                ));
            }
            Ok(Semiflow::new(coords))
        })
        .collect()
}

fn default_generators(analysis: &Analysis, over: Over) -> CliResult<Vec<Semiflow>> {
    Ok(match over {
        Over::Nat => lib(analysis.hilbert())?.members().to_vec(),
        Over::Qplus => analysis.fundamental().members().to_vec(),
        Over::Q => extract_q_basis(analysis.fundamental().members()),
    })
}

fn cmd_parse(path: &Path) -> CliResult<Outcome> {
    let (net, m0) = load_net(path)?;
    let arcs = |list: Vec<(usize, &BigUint)>| {
        Value::Array(
            list.into_iter()
                .map(|(p, w)| object([("place", net.places()[p].as_str().into()), ("weight", big(w))]))
                .collect(),
        )
    };
    let place_list = net
        .places()
        .iter()
        .zip(m0.coords())
        .map(|(id, k)| object([("id", id.as_str().into()), ("tokens", big(k))]))
        .collect();
    let transitions = (0..net.transition_count())
        .map(|t| {
            object([
                ("id", net.transitions()[t].as_str().into()),
                ("in", arcs(net.inputs(t))),
                ("out", arcs(net.outputs(t))),
            ])
        })
        .collect();
    Ok(Outcome::ok(object([
        ("places", Value::Array(place_list)),
        ("transitions", Value::Array(transitions)),
        ("canonical", lib(net.render(&m0))?.into()),
    ])))
}

fn cmd_generate(path: &Path, over: Over) -> CliResult<Outcome> {
    let (net, _) = load_net(path)?;
    let analysis = Analysis::new(&net);
    let gens = default_generators(&analysis, over)?;
    let supports = gens.iter().map(|g| support(&net, &g.support())).collect();
    Ok(Outcome::ok(object([
        ("over", Domain::from(over).as_str().into()),
        ("count", count(gens.len())),
        ("semiflows", semiflows(&gens)),
        ("supports", Value::Array(supports)),
    ])))
}

fn cmd_classify(path: &Path, vectors: &[String]) -> CliResult<Outcome> {
    let (net, _) = load_net(path)?;
    let analysis = Analysis::new(&net);
    let mut negative = false;
    let mut rows = Vec::new();
    for text in vectors {
        let v = Semiflow::new(parse_coords(text, net.place_count())?);
        if v.is_zero() {
            return Err(format!("({text}) is the zero vector"));
        }
        let row = match analysis.check_semiflow(&v) {
            Ok(()) => object([
                ("vector", semiflow(&v)),
                ("support", support(&net, &v.support())),
                ("is_semiflow", true.into()),
                ("is_canonical", lib(v.is_canonical())?.into()),
                ("has_minimal_support", lib(analysis.has_minimal_support(&v))?.into()),
                ("is_minimal", lib(analysis.is_minimal(&v))?.into()),
            ]),
            Err(Error::NotSemiflow(_)) => {
                negative = true;
                object([
                    ("vector", semiflow(&v)),
                    ("support", support(&net, &v.support())),
                    ("is_semiflow", false.into()),
                    ("is_canonical", Value::Null),
                    ("has_minimal_support", Value::Null),
                    ("is_minimal", Value::Null),
                ])
            }
            Err(e) => return Err(e.to_string()),
        };
        rows.push(row);
    }
    Ok(Outcome {
        report: object([("vectors", Value::Array(rows))]),
        negative,
    })
}

fn cmd_check_gs(path: &Path, over: Over, set: &Path, paranoid: bool) -> CliResult<Outcome> {
    let (net, _) = load_net(path)?;
    let gens = load_set(set, net.place_count())?;
    let analysis = Analysis::new(&net);
    let r = lib(analysis.classify_generating_set_with(&gens, over.into(), paranoid))?;
    let witness = match &r.witness {
        None => Value::Null,
        Some(Witness::NotGenerated(f)) => object([
            ("kind", "not_generated".into()),
            ("semiflow", semiflow(f)),
            ("support", support(&net, &f.support())),
        ]),
        Some(Witness::Removable(i)) => object([
            ("kind", "removable".into()),
            ("index", count(*i)),
            ("member", semiflow(&gens[*i])),
        ]),
    };
    Ok(Outcome {
        negative: !r.is_generating,
        report: object([
            ("over", r.domain.as_str().into()),
            ("size", count(gens.len())),
            ("is_generating", r.is_generating.into()),
            ("is_minimal_gs", r.is_minimal_gs.into()),
            ("is_least_gs", r.is_least_gs.into()),
            ("witness", witness),
        ]),
    })
}

fn cmd_decompose(
    path: &Path,
    over: Over,
    vector: &str,
    set: Option<&Path>,
    order: Option<&[usize]>,
) -> CliResult<Outcome> {
    let (net, _) = load_net(path)?;
    let f = Semiflow::new(parse_coords(vector, net.place_count())?);
    let analysis = Analysis::new(&net);
    let gens = match set {
        Some(p) => load_set(p, net.place_count())?,
        None => default_generators(&analysis, over)?,
    };
    if order.is_some() && !matches!(over, Over::Nat) {
        return Err("--order only applies to --over nat".into());
    }
    let head = |decomposable: bool| -> Vec<(&'static str, Value)> {
        vec![
            ("over", Value::from(Domain::from(over).as_str())),
            ("vector", semiflow(&f)),
            ("generators", semiflows(&gens)),
            ("decomposable", decomposable.into()),
        ]
    };
    let finish = |mut fields: Vec<(&'static str, Value)>,
                  extra: Vec<(&'static str, Value)>,
                  decomposable: bool| {
        fields.extend(extra);
        Outcome {
            report: Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()),
            negative: !decomposable,
        }
    };
    Ok(match (over, order) {
        (Over::Nat, Some(order)) => {
            if let Some(&bad) = order.iter().find(|&&i| i >= gens.len()) {
                return Err(format!("order index {bad} out of range for {} generators", gens.len()));
            }
            let ordered: Vec<Semiflow> = order.iter().map(|&i| gens[i].clone()).collect();
            let g = lib(greedy_decompose(&f, &ordered))?;
            let mut coeffs = vec![BigUint::default(); gens.len()];
            for (&i, k) in order.iter().zip(&g.coeffs) {
                coeffs[i] += k;
            }
            let ok = g.remainder.is_zero();
            finish(
                head(ok),
                vec![
                    ("method", "greedy".into()),
                    ("coefficients", report::coords(&coeffs)),
                    ("remainder", semiflow(&g.remainder)),
                ],
                ok,
            )
        }
        (Over::Nat, None) => {
            let c = lib(nat_decomposable(&f, &gens))?;
            let ok = c.is_some();
            let coeffs = c.as_deref().map_or(Value::Null, report::coords);
            finish(head(ok), vec![("method", "exact".into()), ("coefficients", coeffs)], ok)
        }
        (Over::Qplus | Over::Q, _) => {
            let c = if matches!(over, Over::Qplus) {
                lib(in_cone(&f, &gens))?
            } else {
                lib(solve_q(&f, &gens))?
            };
            let ok = c.is_some();
            let coeffs = c.as_ref().map_or(Value::Null, rationals);
            finish(head(ok), vec![("coefficients", coeffs)], ok)
        }
    })
}

fn cmd_bound(path: &Path) -> CliResult<Outcome> {
    let (net, _) = load_net(path)?;
    let s = lib(sperner_bound(net.place_count()))?;
    let r = lib(refined_bound(&net))?;
    let classes = r.classes.iter().map(|c| places(&net, c)).collect();
    Ok(Outcome::ok(object([
        ("sperner", big(&s)),
        ("refined", big(&r.bound)),
        ("classes", Value::Array(classes)),
    ])))
}

fn cmd_verify(path: &Path, m0: Option<&str>, state_cap: usize) -> CliResult<Outcome> {
    let (net, file_m0) = load_net(path)?;
    let m0 = match m0 {
        Some(text) => Marking::new(parse_coords(text, net.place_count())?),
        None => file_m0,
    };
    let analysis = Analysis::new(&net);
    let sys = lib(invariant_report(&net, &m0, analysis.fundamental().members()))?;
    let invariants = sys
        .generators
        .iter()
        .zip(&sys.rhs)
        .map(|(g, k)| object([("semiflow", semiflow(g)), ("value", big(k))]))
        .collect();
    let r = lib(reach_report(&net, &m0, state_cap))?;
    let verdict = |v: Option<bool>| v.map_or(Value::Null, Value::from);
    let dead: Vec<Value> = r
        .dead_transitions
        .iter()
        .map(|&t| net.transitions()[t].as_str().into())
        .collect();
    Ok(Outcome {
        negative: r.is_home_state != Some(true) || r.is_live != Some(true),
        report: object([
            ("m0", report::coords(m0.coords())),
            ("invariants", Value::Array(invariants)),
            ("states", count(r.states)),
            ("edges", count(r.edges)),
            ("bound_hit", r.bound_hit.into()),
            ("is_home_state", verdict(r.is_home_state)),
            ("is_live", verdict(r.is_live)),
            ("dead_transitions", Value::Array(dead)),
        ]),
    })
}

fn cmd_oracle(path: &Path, bound: u64) -> CliResult<Outcome> {
    let (net, _) = load_net(path)?;
    let all = lib(brute_semiflows(&net, bound))?;
    let minimal = lib(brute_minimal_semiflows(&net, bound))?;
    let supports = lib(brute_minimal_supports(&net, bound))?
        .iter()
        .map(|s| support(&net, s))
        .collect();
    Ok(Outcome::ok(object([
        ("bound", bound.into()),
        ("semiflows_in_box", count(all.len())),
        ("minimal_semiflows", semiflows(&minimal.members)),
        ("on_boundary", Value::Array(minimal.on_boundary.iter().map(|&b| b.into()).collect())),
        ("minimal_supports", Value::Array(supports)),
    ])))
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Parse { net } => cmd_parse(net),
        Command::Generate { over, net } => cmd_generate(net, *over),
        Command::Classify { vectors, net } => cmd_classify(net, vectors),
        Command::CheckGs { over, set, paranoid, net } => cmd_check_gs(net, *over, set, *paranoid),
        Command::Decompose { over, vector, set, order, net } => {
            cmd_decompose(net, *over, vector, set.as_deref(), order.as_deref())
        }
        Command::Bound { net } => cmd_bound(net),
        Command::Verify { m0_from_file: _, m0, state_cap, net } => {
            cmd_verify(net, m0.as_deref(), *state_cap)
        }
        Command::Oracle { bound, net } => cmd_oracle(net, *bound),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.report).expect("reports serialize")
                ),
                Format::Text => print!("{}", report::to_text(&outcome.report)),
            }
            ExitCode::from(if outcome.negative { 1 } else { 0 })
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
