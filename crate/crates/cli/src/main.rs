//! `hamproof`: run any stage of the pipeline from the command line.
//!
//! Artifacts (proofs, dags, CSV) go to `--out` or stdout; reports go to
//! stderr, as JSON with `--json`. Exit codes: 0 ok, 2 input error,
//! 3 Hamiltonian input, 4 verification failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hamproof::builder::{build_case_tower, finalize_negation, unfold_nary, BuildError, Mode};
use hamproof::dag::{cleanse, compress_horizontal, dag_metrics, verify_dag};
use hamproof::encoding::{encode_alpha, sat_alpha_capped, Part, DEFAULT_SAT_CAP};
use hamproof::graph::{is_hamiltonian, parse_graph, Graph};
use hamproof::io::{artifact_from_json, dag_to_json, proof_from_json, proof_to_json, Artifact};
use hamproof::kernel::{check_tree, is_normal, ProofTree};
use hamproof::pipeline::{bench, bench_csv, fit_rows, BenchConfig, Family};
use hamproof::statman::{translate_formula, translate_proof};

#[derive(Parser)]
#[command(name = "hamproof", version, about = "Refutation proofs for non-Hamiltonian digraphs, their implicational translation and dag compression")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Faithful,
    Pruned,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Faithful => Mode::Faithful,
            CliMode::Pruned => Mode::Pruned,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Write the artifact here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide Hamiltonicity by brute force and by satisfiability of the encoding
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
        /// Largest n the satisfiability oracle accepts
        #[arg(long, default_value_t = DEFAULT_SAT_CAP)]
        sat_cap: usize,
    },
    /// Print the encoding formula of a graph
    Encode {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build the refutation proof of a non-Hamiltonian graph
    Prove {
        graph: PathBuf,
        /// Defaults to faithful up to n = 4, pruned above
        #[arg(long, value_enum)]
        mode: Option<CliMode>,
        /// Skip unfolding n-ary disjunction eliminations
        #[arg(long)]
        keep_nary: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Translate a proof into purely implicational logic
    Translate {
        proof: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compress an implicational proof into a cleansed dag
    Compress {
        proof: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check a tree proof or a dag proof
    Verify {
        artifact: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the whole pipeline over a graph family and write CSV
    Bench {
        /// empty, chain-minus-last-edge, random-nonham or random-nonham(SEED,COUNT)
        #[arg(long, default_value = "empty")]
        family: String,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Seed for the random family
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graphs per n for the random family
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, value_enum)]
        mode: Option<CliMode>,
        /// Write 0 in wall_time_ms so the CSV is byte-reproducible
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        common: Common,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input(message: impl ToString) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn rejected(message: impl ToString) -> Failure {
    Failure { code: 4, message: message.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<ProofTree, Failure> {
    proof_from_json(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, body).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn report(json_mode: bool, value: serde_json::Value, text: String) {
    if json_mode {
        eprintln!("{value}");
    } else {
        eprintln!("{text}");
    }
}

fn oracle(path: &Path, json_mode: bool, sat_cap: usize) -> Result<(), Failure> {
    let g = read_graph(path)?;
    let witness = is_hamiltonian(&g);
    let sat = sat_alpha_capped(&g, sat_cap).map_err(input)?;
    let out = json!({
        "hamiltonian": witness.is_some(),
        "witness": witness.as_ref().map(|w| w.0.clone()),
        "sat_alpha": sat,
    });
    if json_mode {
        println!("{out}");
    } else {
        match &witness {
            Some(w) => println!("hamiltonian: true (witness {w})"),
            None => println!("hamiltonian: false"),
        }
        println!("sat_alpha: {sat}");
    }
    if witness.is_some() != sat {
        return Err(rejected("oracles disagree"));
    }
    Ok(())
}

fn encode(path: &Path, c: &Common) -> Result<(), Failure> {
    let parts = encode_alpha(&read_graph(path)?);
    emit(&c.out, &parts.alpha().to_string())?;
    let counts: Vec<usize> = Part::ALL.iter().map(|&p| parts.conjunct_count(p)).collect();
    report(
        c.json,
        json!({ "n": parts.n(), "weight": parts.alpha().weight(), "conjuncts": counts }),
        format!("n={} weight={} conjuncts A..E={counts:?}", parts.n(), parts.alpha().weight()),
    );
    Ok(())
}

fn prove(path: &Path, mode: Option<CliMode>, keep_nary: bool, c: &Common) -> Result<(), Failure> {
    let g = read_graph(path)?;
    let mode = mode.map(Mode::from).unwrap_or(Mode::default_for(g.n()));
    let build = || -> Result<(ProofTree, usize), BuildError> {
        let parts = encode_alpha(&g);
        let (tower, leaves) = build_case_tower(&g, &parts, mode)?;
        let tower = if keep_nary { tower } else { unfold_nary(&tower)? };
        Ok((finalize_negation(&tower, &parts)?, leaves))
    };
    let (proof, leaf_count) = match build() {
        Ok(x) => x,
        Err(BuildError::GraphIsHamiltonian { witness }) => {
            return Err(Failure { code: 3, message: format!("graph is Hamiltonian, witness {witness}") });
        }
        Err(e) => return Err(rejected(e)),
    };
    let m = check_tree(&proof).map_err(rejected)?;
    if !m.open_assumptions.is_empty() {
        return Err(rejected("built proof has open assumptions"));
    }
    emit(&c.out, &proof_to_json(&proof))?;
    report(
        c.json,
        json!({
            "leaf_count": leaf_count,
            "faithful": mode == Mode::Faithful,
            "height": m.height,
            "weight": m.weight,
            "distinct_formula_weight": m.distinct_formula_weight,
        }),
        format!(
            "closed proof, conclusion weight {}, leaves={leaf_count} height={} weight={} distinct_weight={} nodes={}",
            proof.conclusion().weight(),
            m.height,
            m.weight,
            m.distinct_formula_weight,
            m.node_count
        ),
    );
    Ok(())
}

fn translate(path: &Path, c: &Common) -> Result<(), Failure> {
    let p = read_tree(path)?;
    check_tree(&p).map_err(rejected)?;
    let t = translate_formula(p.conclusion());
    let tp = translate_proof(&p, &t).map_err(input)?;
    let m = check_tree(&tp.proof).map_err(rejected)?;
    emit(&c.out, &proof_to_json(&tp.proof))?;
    report(
        c.json,
        json!({
            "rho_weight": tp.rho.weight(),
            "axioms_used": tp.axioms.len(),
            "height": m.height,
            "body_height": tp.body.height(),
            "source_height": p.height(),
            "weight": m.weight,
            "normal": is_normal(&tp.proof),
        }),
        format!(
            "rho weight={} axioms used={} height={} (body {}, source {}) weight={}",
            tp.rho.weight(),
            tp.axioms.len(),
            m.height,
            tp.body.height(),
            p.height(),
            m.weight
        ),
    );
    Ok(())
}

fn compress(path: &Path, c: &Common) -> Result<(), Failure> {
    let p = read_tree(path)?;
    check_tree(&p).map_err(rejected)?;
    let (d, om) = compress_horizontal(&p).map_err(input)?;
    let star = cleanse(&d, &om, &p).map_err(rejected)?;
    emit(&c.out, &dag_to_json(&star))?;
    let m = dag_metrics(&star, &p);
    let verdict = verify_dag(&star);
    report(
        c.json,
        json!({
            "weight": m.weight,
            "height": m.height,
            "node_count": m.node_count,
            "conclusion_weight": m.conclusion_weight,
            "compression_ratio": m.compression_ratio,
            "separation_nodes": d.nodes.iter().filter(|n| matches!(n.rule, hamproof::dag::DagRule::S { .. })).count(),
            "verified": verdict.is_ok(),
            "error": verdict.as_ref().err().map(ToString::to_string),
        }),
        format!(
            "dag weight={} height={} nodes={} ratio={:.4} verified={}",
            m.weight,
            m.height,
            m.node_count,
            m.compression_ratio,
            match &verdict {
                Ok(_) => "yes".to_string(),
                Err(e) => format!("no ({e})"),
            }
        ),
    );
    verdict.map(|_| ()).map_err(rejected)
}

fn verify(path: &Path, json_mode: bool) -> Result<(), Failure> {
    let art = artifact_from_json(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let (kind, result) = match art {
        Artifact::Tree(p) => (
            "tree",
            check_tree(&p).map_err(|e| e.to_string()).and_then(|m| {
                if m.open_assumptions.is_empty() {
                    Ok((p.conclusion().to_string(), m.height, m.weight, m.node_count))
                } else {
                    let open: Vec<String> = m.open_assumptions.iter().map(ToString::to_string).collect();
                    Err(format!("open assumptions {open:?}"))
                }
            }),
        ),
        Artifact::Dag(d) => (
            "dag",
            verify_dag(&d).map(|m| (d.conclusion().to_string(), m.height, m.weight, m.node_count)).map_err(|e| e.to_string()),
        ),
    };
    let out = match &result {
        Ok((concl, h, w, n)) => json!({ "kind": kind, "accepted": true, "conclusion": concl, "height": h, "weight": w, "node_count": n }),
        Err(e) => json!({ "kind": kind, "accepted": false, "error": e }),
    };
    if json_mode {
        println!("{out}");
    } else {
        match &result {
            Ok((concl, h, w, n)) => println!("accepted {kind}: {concl} (height {h}, weight {w}, {n} nodes)"),
            Err(e) => println!("rejected {kind}: {e}"),
        }
    }
    result.map(|_| ()).map_err(rejected)
}

#[allow(clippy::too_many_arguments)]
fn bench_cmd(family: &str, n_min: usize, n_max: usize, seed: u64, count: usize, mode: Option<CliMode>, no_timing: bool, c: &Common) -> Result<(), Failure> {
    let family = match family {
        "random-nonham" => Family::RandomNonHam { seed, count },
        f => f.parse::<Family>().map_err(input)?,
    };
    if n_min == 0 || n_min > n_max {
        return Err(input(format!("bad n range {n_min}..={n_max}")));
    }
    let cfg = BenchConfig { family, n_min, n_max, mode: mode.map(Mode::from), timing: !no_timing };
    let outcomes = bench(&cfg);
    let csv = bench_csv(&outcomes);
    match &c.out {
        Some(p) => fs::write(p, &csv).map_err(|e| input(format!("{}: {e}", p.display())))?,
        None => print!("{csv}"),
    }
    let fit = fit_rows(&outcomes);
    let rejected_rows = outcomes.iter().filter(|o| o.verdict.is_err()).count();
    if c.json {
        let rows: Vec<_> = outcomes
            .iter()
            .map(|o| json!({ "n": o.n, "graph_id": o.graph_id, "verified": o.verdict.is_ok(), "error": o.verdict.as_ref().err() }))
            .collect();
        eprintln!("{}", json!({ "family": family.to_string(), "fit": fit, "rows": rows }));
    } else {
        for o in &outcomes {
            match &o.verdict {
                Ok(()) => eprintln!("{} {}: verified", o.n, o.graph_id),
                Err(e) => eprintln!("{} {}: not verified: {e}", o.n, o.graph_id),
            }
        }
        match &fit {
            Some(f) => match f.ci95 {
                Some((lo, hi)) => eprintln!("exponent of dag weight vs rho weight: {:.4} (95% CI {lo:.4} .. {hi:.4}, {} points)", f.slope, f.points),
                None => eprintln!("exponent of dag weight vs rho weight: {:.4} ({} points, no CI)", f.slope, f.points),
            },
            None => eprintln!("exponent of dag weight vs rho weight: not enough rows to fit"),
        }
    }
    if rejected_rows > 0 {
        return Err(rejected(format!("{rejected_rows} of {} rows did not verify", outcomes.len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Oracle { graph, json, sat_cap } => oracle(graph, *json, *sat_cap),
        Command::Encode { graph, common } => encode(graph, common),
        Command::Prove { graph, mode, keep_nary, common } => prove(graph, *mode, *keep_nary, common),
        Command::Translate { proof, common } => translate(proof, common),
        Command::Compress { proof, common } => compress(proof, common),
        Command::Verify { artifact, json } => verify(artifact, *json),
        Command::Bench { family, n_min, n_max, seed, count, mode, no_timing, common } => {
            bench_cmd(family, *n_min, *n_max, *seed, *count, *mode, *no_timing, common)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
