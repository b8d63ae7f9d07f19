use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use kpdg::density::{self, FeasibilityVerdict, Hypergraph};
use kpdg::enumerate::{self, BatchResult, EnumConfig, FamilyChoice, FinalMode, LevelCount, ThetaResult};
use kpdg::forbidden::{self, ForbiddenFamily};
use kpdg::sat::{self, Formula};
use kpdg::{Error, Pdg};
use num_rational::Rational64;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "kpdg", version, about = "Partially directed hypergraph and k-SAT toolkit")]
struct Cli {
    /// Worker threads; never changes the output.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write a run record (command, version, timing, payload) here.
    #[arg(long, global = true)]
    record: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Tk,
    Fk,
}

impl From<Family> for FamilyChoice {
    fn from(f: Family) -> Self {
        match f {
            Family::Tk => FamilyChoice::Tk,
            Family::Fk => FamilyChoice::Fk,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Dedup,
    NoDedup,
    Bound,
}

impl From<Mode> for FinalMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Dedup => FinalMode::Dedup,
            Mode::NoDedup => FinalMode::NoDedup,
            Mode::Bound => FinalMode::Bound,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the forbidden family, one JSON line per member.
    GenForbidden {
        #[arg(long)]
        k: usize,
        /// Include one construction trace per member.
        #[arg(long)]
        trace: bool,
    },
    /// Test a graph for freeness of T⃗_k or the full family.
    CheckFree {
        /// Graph text, e.g. "4 2 ; 0 1 , 1 2>2".
        #[arg(long, conflicts_with = "file")]
        graph: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "fk")]
        family: Family,
    },
    /// Exhaustive θ search for one (n, k) cell.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "tk")]
        family: Family,
        #[arg(long, default_value_t = 1)]
        batches: usize,
        /// Run one batch and print a partial record for `merge`.
        #[arg(long)]
        batch_index: Option<usize>,
        #[arg(long, env = "PDG_CHECKPOINT_DIR")]
        checkpoint: Option<PathBuf>,
        /// Visit every labelled final extension without isomorphism checks.
        #[arg(long, conflicts_with = "bound")]
        final_no_dedup: bool,
        /// Branch and bound on θ over the final level; no final count.
        #[arg(long)]
        bound: bool,
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long)]
        max_level_size: Option<usize>,
    },
    /// Combine partial batch records into the full enumerate record.
    Merge {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// θ for every n ≤ max-n and k in the range.
    ThetaTable {
        #[arg(long)]
        max_n: usize,
        /// Inclusive range `lo:hi`.
        #[arg(long)]
        k_range: String,
        #[arg(long, value_enum, default_value = "bound")]
        final_mode: Mode,
        #[arg(long, value_enum, default_value = "tk")]
        family: Family,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// ((k−1)θ + 1)/k.
    Lift {
        #[arg(long)]
        theta: Rational64,
        #[arg(long)]
        k: usize,
    },
    /// Minimality with per-clause witnesses.
    SatMinimal {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Type of a semisimple formula.
    SatType {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Exact count of k-SAT functions on n variables.
    SatCount {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Also count unate functions.
        #[arg(long)]
        unate: bool,
    },
    /// Literal counts and distance to unate.
    SatUnate {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// max 2yz on the simplex subject to x² + 2xy + 2yz ≥ ρ
    FmDensity {
        #[arg(long)]
        rho: f64,
    },
    /// Grid search for a solution of the polynomial system at φ.
    CheckSystem {
        #[arg(long)]
        phi: Option<Rational64>,
        #[arg(long, default_value_t = 1e-3)]
        res: f64,
        /// Bisect for the threshold between `lo:hi` instead.
        #[arg(long, conflicts_with = "phi")]
        bisect: Option<String>,
        #[arg(long, default_value = "1/10000")]
        width: Rational64,
    },
    /// Simplex count against the Kruskal–Katona bound.
    KkCheck {
        #[arg(long)]
        file: PathBuf,
    },
    /// Orient a hypergraph with bounded codegree.
    Orient {
        #[arg(long)]
        file: PathBuf,
        /// Search for the smallest achievable codegree.
        #[arg(long)]
        minimal: bool,
    },
    /// e(G²) ≥ e(G) − ⌊n/2⌋ for a graph file.
    Furedi {
        #[arg(long)]
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    match run(cli.command) {
        Ok(payload) => {
            print!("{payload}");
            if let Some(path) = cli.record {
                let record = json!({
                    "schema": SCHEMA,
                    "command": std::env::args().collect::<Vec<_>>(),
                    "version": env!("CARGO_PKG_VERSION"),
                    "elapsed_seconds": start.elapsed().as_secs_f64(),
                    "payload": payload,
                });
                if let Err(e) = fs::write(&path, format!("{record:#}\n")) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::BudgetExceeded(_)) { 3 } else { 1 })
        }
    }
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn ratio(r: Rational64) -> String {
    r.to_string()
}

fn family_for(k: usize, f: Family) -> kpdg::Result<ForbiddenFamily> {
    match f {
        Family::Tk => ForbiddenFamily::tk_only(k),
        Family::Fk => forbidden::generate_fk(k),
    }
}

fn mode_name(m: FinalMode) -> &'static str {
    match m {
        FinalMode::Dedup => "dedup",
        FinalMode::NoDedup => "no-dedup",
        FinalMode::Bound => "bound",
    }
}

fn parse_mode(s: &str) -> kpdg::Result<FinalMode> {
    Ok(match s {
        "dedup" => FinalMode::Dedup,
        "no-dedup" => FinalMode::NoDedup,
        "bound" => FinalMode::Bound,
        _ => return Err(Error::Parse(format!("unknown final mode {s:?}"))),
    })
}

fn read(path: &PathBuf) -> kpdg::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> kpdg::Result<String> {
    match cmd {
        Command::GenForbidden { k, trace } => {
            let fam = forbidden::generate_fk(k)?;
            let mut out = String::new();
            for (i, m) in fam.members.iter().enumerate() {
                let mut v = json!({
                    "schema": SCHEMA,
                    "k": k,
                    "index": i,
                    "graph": m.graph.to_string(),
                    "e_u": m.graph.e_u(),
                    "e_d": m.graph.e_d(),
                });
                if trace {
                    v["trace"] = json!(m.trace.to_string());
                }
                out += &line(v);
            }
            Ok(out)
        }
        Command::CheckFree { graph, file, family } => {
            let text = match (graph, file) {
                (Some(g), _) => g,
                (None, Some(f)) => read(&f)?,
                (None, None) => return Err(Error::Precondition("give --graph or --file".into())),
            };
            let g: Pdg = text.trim().parse()?;
            let fam = family_for(g.k(), family)?;
            let hit = forbidden::contained_member(&g, &fam)?;
            Ok(line(json!({
                "schema": SCHEMA,
                "family": FamilyChoice::from(family).name(),
                "free": hit.is_none(),
                "contains": hit.map(|m| m.graph.to_string()),
            })))
        }
        Command::Enumerate {
            n,
            k,
            family,
            batches,
            batch_index,
            checkpoint,
            final_no_dedup,
            bound,
            time_limit,
            max_level_size,
        } => {
            let final_mode = if bound {
                FinalMode::Bound
            } else if final_no_dedup {
                FinalMode::NoDedup
            } else {
                FinalMode::Dedup
            };
            let config = EnumConfig {
                family: family.into(),
                final_mode,
                batches,
                batch_index,
                checkpoint,
                budget: enumerate::Budget { seconds: time_limit, max_level_size },
            };
            let (levels, result) = enumerate::run_final(n, k, &config)?;
            let lower = enumerate::lower_counts(&levels);
            match batch_index {
                Some(i) => Ok(line(partial_json(n, k, &config, i, &lower, &result))),
                None => {
                    let r = enumerate::finish_from_counts(n, k, lower, &result, final_mode)?;
                    Ok(line(result_json(&r, config.family, final_mode)))
                }
            }
        }
        Command::Merge { files } => merge(&files),
        Command::ThetaTable { max_n, k_range, final_mode, family, format } => {
            let (lo, hi) = k_range
                .split_once(':')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| Error::Parse(format!("bad k range {k_range:?}, expected lo:hi")))?;
            let config = EnumConfig { family: family.into(), final_mode: final_mode.into(), ..EnumConfig::default() };
            let mut rows: Vec<(usize, usize, Rational64)> = Vec::new();
            for k in lo.max(2)..=hi.min(max_n) {
                for (n, t, _) in enumerate::theta_column(max_n, k, &config)? {
                    rows.push((n, k, t));
                }
            }
            rows.sort();
            match format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["n", "k", "theta"]).map_err(csv_err)?;
                    for (n, k, t) in &rows {
                        w.write_record([n.to_string(), k.to_string(), ratio(*t)]).map_err(csv_err)?;
                    }
                    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                    Ok(String::from_utf8(bytes).expect("ascii"))
                }
                Format::Json => Ok(line(json!({
                    "schema": SCHEMA,
                    "family": FamilyChoice::from(family).name(),
                    "rows": rows.iter().map(|(n, k, t)| json!({"n": n, "k": k, "theta": ratio(*t)})).collect::<Vec<_>>(),
                }))),
            }
        }
        Command::Lift { theta, k } => {
            let lifted = enumerate::lift_theta(theta, k)?;
            Ok(line(json!({"schema": SCHEMA, "theta": ratio(theta), "k": k, "lifted": ratio(lifted)})))
        }
        Command::SatMinimal { formula, n } => {
            let f = Formula::parse_with(&formula, n)?;
            let m = sat::minimality(&f);
            Ok(line(json!({"schema": SCHEMA, "minimal": m.minimal, "witnesses": m.witnesses})))
        }
        Command::SatType { formula, n } => {
            let f = Formula::parse_with(&formula, n)?;
            let t = sat::type_of(&f)?;
            Ok(line(json!({"schema": SCHEMA, "simple": sat::is_simple(&f), "type": t.to_string()})))
        }
        Command::SatCount { n, k, unate } => {
            let mut v = json!({"schema": SCHEMA, "n": n, "k": k, "functions": sat::count_functions(n, k)?});
            if unate {
                v["unate_functions"] = json!(sat::count_unate_functions(n, k)?);
            }
            Ok(line(v))
        }
        Command::SatUnate { formula, n } => {
            let f = Formula::parse_with(&formula, n)?;
            let d = sat::distance_to_unate(&f)?;
            Ok(line(json!({
                "schema": SCHEMA,
                "unate": sat::is_unate(&f),
                "distance": d,
                "literal_counts": sat::literal_counts(&f),
            })))
        }
        Command::FmDensity { rho } => {
            Ok(line(json!({"schema": SCHEMA, "rho": rho, "f": density::fm_density(rho)?})))
        }
        Command::CheckSystem { phi, res, bisect, width } => {
            if let Some(range) = bisect {
                let (lo, hi) = range
                    .split_once(':')
                    .and_then(|(a, b)| Some((a.parse::<Rational64>().ok()?, b.parse::<Rational64>().ok()?)))
                    .ok_or_else(|| Error::Parse(format!("bad bracket {range:?}, expected lo:hi")))?;
                let (lo, hi) = density::phi_star_bracket(lo, hi, width, res)?;
                return Ok(line(json!({"schema": SCHEMA, "lo": ratio(lo), "hi": ratio(hi), "resolution": res})));
            }
            let phi = phi.ok_or_else(|| Error::Precondition("give --phi or --bisect".into()))?;
            let v = match density::check_system(phi, res)? {
                FeasibilityVerdict::Feasible(p) => json!({
                    "schema": SCHEMA,
                    "phi": ratio(phi),
                    "feasible": true,
                    "point": {
                        "x": p.x.to_string(), "y": p.y.to_string(), "z": p.z.to_string(),
                        "a": p.a.to_string(), "b": p.b.to_string(), "c": p.c.to_string(),
                    },
                }),
                FeasibilityVerdict::NoPointFound { resolution, best_margin, best_at, points_examined } => json!({
                    "schema": SCHEMA,
                    "phi": ratio(phi),
                    "feasible": false,
                    "resolution": resolution,
                    "best_margin": best_margin,
                    "best_at": [best_at.0, best_at.1],
                    "points_examined": points_examined,
                }),
            };
            Ok(line(v))
        }
        Command::KkCheck { file } => {
            let h = Hypergraph::parse(&read(&file)?)?;
            let r = density::kruskal_katona_check(&h);
            Ok(line(json!({"schema": SCHEMA, "edges": r.edges, "simplices": r.simplices, "holds": r.holds})))
        }
        Command::Orient { file, minimal } => {
            let h = Hypergraph::parse(&read(&file)?)?;
            let o = if minimal { density::min_codegree_orientation(&h)? } else { density::orient_hypergraph(&h)? };
            Ok(line(json!({
                "schema": SCHEMA,
                "bound": o.bound,
                "max_codegree": o.max_codegree,
                "heads": o.heads,
            })))
        }
        Command::Furedi { file } => {
            let h = Hypergraph::parse(&read(&file)?)?;
            let r = density::furedi_check(&density::graph_from_hypergraph(&h)?)?;
            Ok(line(json!({
                "schema": SCHEMA,
                "edges": r.edges,
                "square_edges": r.square_edges,
                "non_triangular": r.non_triangular,
                "holds": r.holds,
            })))
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn counts_json(counts: &[LevelCount]) -> Value {
    counts
        .iter()
        .map(|c| json!({"level": c.level, "count": c.count, "deduplicated": c.deduplicated}))
        .collect()
}

fn result_json(r: &ThetaResult, family: FamilyChoice, mode: FinalMode) -> Value {
    json!({
        "schema": SCHEMA,
        "n": r.n,
        "k": r.k,
        "family": family.name(),
        "final_mode": mode_name(mode),
        "theta": ratio(r.theta),
        "witness": r.witness.to_string(),
        "level_counts": counts_json(&r.level_counts),
    })
}

fn partial_json(n: usize, k: usize, c: &EnumConfig, index: usize, lower: &[LevelCount], r: &BatchResult) -> Value {
    json!({
        "schema": SCHEMA,
        "partial": true,
        "n": n,
        "k": k,
        "family": c.family.name(),
        "final_mode": mode_name(c.final_mode),
        "batches": c.batches,
        "batch_index": index,
        "lower_counts": counts_json(lower),
        "best": r.best.as_ref().map(|(t, base, g)| json!({"theta": ratio(*t), "base": base, "graph": g.to_string()})),
        "count": r.count,
        "graphs": r.graphs.as_ref().map(|gs| gs.iter().map(|g| g.to_string()).collect::<Vec<_>>()),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> kpdg::Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("partial record lacks {key:?}")))
}

fn as_usize(v: &Value, key: &str) -> kpdg::Result<usize> {
    field(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("{key:?} is not an integer")))
}

fn as_str<'a>(v: &'a Value, key: &str) -> kpdg::Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| Error::Parse(format!("{key:?} is not a string")))
}

fn parse_counts(v: &Value) -> kpdg::Result<Vec<LevelCount>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("lower_counts is not an array".into()))?;
    arr.iter()
        .map(|c| {
            Ok(LevelCount {
                level: as_usize(c, "level")?,
                count: field(c, "count")?.as_u64(),
                deduplicated: field(c, "deduplicated")?.as_bool().unwrap_or(false),
            })
        })
        .collect()
}

fn parse_batch(v: &Value) -> kpdg::Result<BatchResult> {
    let best = match field(v, "best")? {
        Value::Null => None,
        b => Some((
            as_str(b, "theta")?.parse::<Rational64>().map_err(|e| Error::Parse(e.to_string()))?,
            as_usize(b, "base")?,
            as_str(b, "graph")?.parse::<Pdg>()?,
        )),
    };
    let graphs = match field(v, "graphs")? {
        Value::Null => None,
        Value::Array(a) => Some(
            a.iter()
                .map(|g| g.as_str().ok_or_else(|| Error::Parse("graph is not a string".into()))?.parse::<Pdg>())
                .collect::<kpdg::Result<Vec<_>>>()?,
        ),
        _ => return Err(Error::Parse("graphs is not an array".into())),
    };
    Ok(BatchResult { best, count: field(v, "count")?.as_u64(), graphs })
}

fn merge(files: &[PathBuf]) -> kpdg::Result<String> {
    let mut records = Vec::new();
    for f in files {
        let v: Value = serde_json::from_str(&read(f)?).map_err(|e| Error::Parse(format!("{}: {e}", f.display())))?;
        records.push(v);
    }
    let first = &records[0];
    let key = |v: &Value| -> kpdg::Result<(usize, usize, String, String, usize)> {
        Ok((
            as_usize(v, "n")?,
            as_usize(v, "k")?,
            as_str(v, "family")?.to_string(),
            as_str(v, "final_mode")?.to_string(),
            as_usize(v, "batches")?,
        ))
    };
    let (n, k, family, mode, batches) = key(first)?;
    let lower = parse_counts(field(first, "lower_counts")?)?;
    let mut seen = vec![false; batches];
    let mut acc: Option<BatchResult> = None;
    for v in &records {
        if key(v)? != (n, k, family.clone(), mode.clone(), batches) || parse_counts(field(v, "lower_counts")?)? != lower {
            return Err(Error::Precondition("partial records come from different runs".into()));
        }
        let i = as_usize(v, "batch_index")?;
        if i >= batches || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Precondition(format!("batch {i} is out of range or repeated")));
        }
        let part = parse_batch(v)?;
        acc = Some(match acc {
            None => part,
            Some(a) => a.merge(part),
        });
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::Precondition(format!("batch {missing} of {batches} is missing")));
    }
    let mode = parse_mode(&mode)?;
    let family = match family.as_str() {
        "tk" => FamilyChoice::Tk,
        "fk" => FamilyChoice::Fk,
        other => return Err(Error::Parse(format!("unknown family {other:?}"))),
    };
    let r = enumerate::finish_from_counts(n, k, lower, &acc.unwrap(), mode)?;
    Ok(line(result_json(&r, family, mode)))
}
