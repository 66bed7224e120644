//! End-to-end runs (graph → refutation → implicational proof → dag) and the
//! benchmark harness built on them.

use std::fmt;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use crate::builder::{build_stages, BuildError, Mode, Refutation};
use crate::dag::{cleanse, compress_horizontal, dag_metrics, verify_dag, DagError, DagMetrics, DagProof, DagReport, OriginMap};
use crate::gen::{random_graph, rng};
use crate::graph::{chain_minus_last_edge, is_hamiltonian, Graph};
use crate::io::{dag_from_json, dag_to_json, proof_from_json, proof_to_json};
use crate::kernel::{check_tree, KernelError, Metrics};
use crate::statman::{translate_formula, translate_proof, StatmanError, TranslatedProof, Translation};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Statman(#[from] StatmanError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error("replay of {0} from JSON disagrees with the original")]
    Replay(&'static str),
}

/// Every artifact of one run. Compression and cleansing can fail without
/// invalidating the earlier stages, so their outcomes are kept as results.
pub struct Run {
    pub refutation: Refutation,
    pub tree_metrics: Metrics,
    pub translation: Translation,
    pub translated: TranslatedProof,
    pub translated_metrics: Metrics,
    pub compressed: DagProof,
    pub origin: OriginMap,
    pub cleansed: Result<DagProof, DagError>,
    pub verdict: Result<DagMetrics, DagError>,
}

impl Run {
    pub fn verified(&self) -> bool {
        self.verdict.is_ok()
    }

    /// Duplicate (level, formula) pairs existed in the translated tree.
    pub fn had_duplicates(&self) -> bool {
        self.compressed.nodes.len() < self.translated.proof.node_count() || self.compressed.has_separation()
    }

    pub fn dag_report(&self) -> Option<DagReport> {
        self.cleansed.as_ref().ok().map(|d| dag_metrics(d, &self.translated.proof))
    }
}

pub fn run(g: &Graph, mode: Mode) -> Result<Run, PipelineError> {
    let refutation = build_stages(g, mode)?;
    let tree_metrics = check_tree(&refutation.proof)?;
    let translation = translate_formula(refutation.proof.conclusion());
    let translated = translate_proof(&refutation.proof, &translation)?;
    let translated_metrics = check_tree(&translated.proof)?;
    let (compressed, origin) = compress_horizontal(&translated.proof)?;
    let cleansed = cleanse(&compressed, &origin, &translated.proof);
    let verdict = match &cleansed {
        Ok(d) => verify_dag(d),
        Err(e) => Err(e.clone()),
    };
    Ok(Run { refutation, tree_metrics, translation, translated, translated_metrics, compressed, origin, cleansed, verdict })
}

/// Serializes the run's tree, implicational proof and dag, parses them back
/// and re-checks them; fails if any verdict differs from the in-memory one.
pub fn replay(r: &Run) -> Result<(), PipelineError> {
    let tree = proof_from_json(&proof_to_json(&r.refutation.proof)).map_err(|_| PipelineError::Replay("tree"))?;
    if check_tree(&tree).ok().as_ref() != Some(&r.tree_metrics) {
        return Err(PipelineError::Replay("tree"));
    }
    let imp = proof_from_json(&proof_to_json(&r.translated.proof)).map_err(|_| PipelineError::Replay("implicational proof"))?;
    if check_tree(&imp).ok().as_ref() != Some(&r.translated_metrics) {
        return Err(PipelineError::Replay("implicational proof"));
    }
    if let Ok(d) = &r.cleansed {
        let back = dag_from_json(&dag_to_json(d)).map_err(|_| PipelineError::Replay("dag"))?;
        if verify_dag(&back) != r.verdict {
            return Err(PipelineError::Replay("dag"));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Empty,
    ChainMinusLastEdge,
    RandomNonHam { seed: u64, count: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Empty => write!(f, "empty"),
            Family::ChainMinusLastEdge => write!(f, "chain-minus-last-edge"),
            Family::RandomNonHam { seed, count } => write!(f, "random-nonham({seed},{count})"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    /// `empty`, `chain-minus-last-edge`, or `random-nonham(SEED,COUNT)`.
    fn from_str(s: &str) -> Result<Family, String> {
        match s {
            "empty" => Ok(Family::Empty),
            "chain-minus-last-edge" | "chain" => Ok(Family::ChainMinusLastEdge),
            _ => {
                let inner = s
                    .strip_prefix("random-nonham(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| format!("unknown family {s:?}"))?;
                let (seed, count) = inner.split_once(',').ok_or("expected random-nonham(SEED,COUNT)")?;
                let seed = seed.trim().parse().map_err(|_| format!("bad seed {seed:?}"))?;
                let count = count.trim().parse().map_err(|_| format!("bad count {count:?}"))?;
                Ok(Family::RandomNonHam { seed, count })
            }
        }
    }
}

/// Members of the family on `n` vertices, with stable ids. Random members
/// are drawn from a generator seeded by `(seed, n)` and Hamiltonian draws
/// are skipped.
pub fn family_members(f: Family, n: usize) -> Vec<(String, Graph)> {
    match f {
        Family::Empty => vec![(format!("empty-{n}"), Graph::empty(n).expect("n >= 1"))],
        Family::ChainMinusLastEdge => vec![(format!("chain-{n}"), chain_minus_last_edge(n))],
        Family::RandomNonHam { seed, count } => {
            let mut r = rng(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut out = Vec::with_capacity(count);
            let mut draws = 0;
            while out.len() < count {
                draws += 1;
                let density = r.gen_range(0.1..0.6);
                let g = random_graph(&mut r, n, density);
                if is_hamiltonian(&g).is_none() {
                    out.push((format!("rnd-{seed}-{n}-{draws}"), g));
                }
            }
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub graph_id: String,
    pub rho_weight: u64,
    pub tree_height: usize,
    pub tree_weight: u64,
    pub tree_distinct_weight: u64,
    pub dag_weight: u64,
    pub dag_height: usize,
    pub compression_ratio: f64,
    pub wall_time_ms: u64,
}

pub const CSV_HEADER: &str =
    "n,graph_id,rho_weight,tree_height,tree_weight,tree_distinct_weight,dag_weight,dag_height,compression_ratio,wall_time_ms";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{:.6},{}",
            self.n,
            self.graph_id,
            self.rho_weight,
            self.tree_height,
            self.tree_weight,
            self.tree_distinct_weight,
            self.dag_weight,
            self.dag_height,
            self.compression_ratio,
            self.wall_time_ms
        )
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    /// `None` picks the default mode for each `n`.
    pub mode: Option<Mode>,
    /// Off makes `wall_time_ms` zero so output is byte-reproducible.
    pub timing: bool,
}

/// What became of one family member.
#[derive(Clone, Debug)]
pub struct BenchOutcome {
    pub n: usize,
    pub graph_id: String,
    /// `None` when a stage before measurement failed; see `error`.
    pub row: Option<BenchRow>,
    /// `Ok` iff the cleansed dag passed verification.
    pub verdict: Result<(), String>,
    pub error: Option<String>,
}

fn bench_one(n: usize, id: String, g: &Graph, mode: Mode, timing: bool) -> BenchOutcome {
    let start = Instant::now();
    let result = run(g, mode).and_then(|r| replay(&r).map(|_| r));
    let elapsed = if timing { start.elapsed().as_millis() as u64 } else { 0 };
    let r = match result {
        Ok(r) => r,
        Err(e) => return BenchOutcome { n, graph_id: id, row: None, verdict: Err(e.to_string()), error: Some(e.to_string()) },
    };
    let verdict = r.verdict.as_ref().map(|_| ()).map_err(ToString::to_string);
    let Some(dm) = r.dag_report() else {
        let e = verdict.clone().err();
        return BenchOutcome { n, graph_id: id, row: None, verdict, error: e };
    };
    let tm = &r.translated_metrics;
    let row = BenchRow {
        n,
        graph_id: id.clone(),
        rho_weight: r.translated.rho.weight(),
        tree_height: tm.height,
        tree_weight: tm.weight,
        tree_distinct_weight: tm.distinct_formula_weight,
        dag_weight: dm.weight,
        dag_height: dm.height,
        compression_ratio: dm.compression_ratio,
        wall_time_ms: elapsed,
    };
    BenchOutcome { n, graph_id: id, row: Some(row), verdict, error: None }
}

/// Runs every member for every `n` in range. Output order is by `(n,
/// graph_id)` whatever order rows finish in.
pub fn bench(cfg: &BenchConfig) -> Vec<BenchOutcome> {
    let jobs: Vec<(usize, String, Graph)> = (cfg.n_min..=cfg.n_max)
        .flat_map(|n| family_members(cfg.family, n).into_iter().map(move |(id, g)| (n, id, g)))
        .collect();
    let work = |(n, id, g): &(usize, String, Graph)| bench_one(*n, id.clone(), g, cfg.mode.unwrap_or(Mode::default_for(*n)), cfg.timing);
    #[cfg(feature = "parallel")]
    let mut out: Vec<BenchOutcome> = {
        use rayon::prelude::*;
        jobs.par_iter().map(work).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut out: Vec<BenchOutcome> = jobs.iter().map(work).collect();
    out.sort_by(|a, b| (a.n, &a.graph_id).cmp(&(b.n, &b.graph_id)));
    out
}

pub fn bench_csv(outcomes: &[BenchOutcome]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for row in outcomes.iter().filter_map(|o| o.row.as_ref()) {
        s.push_str(&row.to_csv());
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
    /// 95% confidence interval for the slope; needs at least three points.
    pub ci95: Option<(f64, f64)>,
}

/// Least-squares line through `(ln x, ln y)`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Option<Fit> {
    let k = points.len();
    if k < 2 {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let kf = k as f64;
    let mx = xs.iter().sum::<f64>() / kf;
    let my = ys.iter().sum::<f64>() / kf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ci95 = (k >= 3).then(|| {
        let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
        let se = (rss / (kf - 2.0) / sxx).sqrt();
        let t = StudentsT::new(0.0, 1.0, kf - 2.0).expect("positive dof").inverse_cdf(0.975);
        (slope - t * se, slope + t * se)
    });
    Some(Fit { slope, intercept, points: k, ci95 })
}

/// Exponent of dag weight against ρ weight over the rows that were measured.
pub fn fit_rows(outcomes: &[BenchOutcome]) -> Option<Fit> {
    let pts: Vec<(f64, f64)> =
        outcomes.iter().filter_map(|o| o.row.as_ref()).map(|r| (r.rho_weight as f64, r.dag_weight as f64)).collect();
    fit_loglog(&pts)
}
