//! `bench`: run a matrix of generated instances through the solvers and
//! write one CSV row per (instance, method).

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::Args;
use planecut::approx::{approx_min_quotient, ApproxParams};
use planecut::exact::{solve, Method};
use planecut::frac::to_f64;
use planecut::hardness::gen_minplus;
use planecut::oracle::{brute_optimum, Budget};
use planecut::planar::gen::{grid, random_planar, random_triangulation, RandomSpec};
use planecut::{Embedding, Frac, Objective};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::io::{fraction, read_text};
use crate::CliError;

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Suite file (JSON): `{"runs": [{"generator", "sizes", "seeds", "methods", "objective"}]}`.
    #[arg(long)]
    pub suite: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads (also capped by PLANECUT_THREADS).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// k x k grid, unit costs and weights.
    UnitGrid,
    /// k x k grid, random costs in 1..=20 and weights in 1..=5.
    Grid,
    /// Random planar graph on `size` vertices, costs ≤ 20, weights ≤ 5.
    Random,
    /// Random stacked triangulation on `size` vertices, unit costs and weights.
    Triangulation,
    /// Min-plus reduction instance with sequences of length `size`.
    Minplus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchMethod {
    Layered,
    Separator,
    Approx,
    Brute,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Run {
    pub generator: Generator,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub methods: Vec<BenchMethod>,
    #[serde(default = "default_objective")]
    pub objective: Objective,
}

fn default_objective() -> Objective {
    Objective::Quotient
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct Suite {
    #[serde(default)]
    pub runs: Vec<Run>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub generator: String,
    pub size: usize,
    pub seed: u64,
    pub n: usize,
    pub e: usize,
    /// Total vertex weight.
    pub w: i64,
    /// Total edge cost.
    pub p: i64,
    pub method: String,
    pub objective: String,
    pub wall_ms: f64,
    pub value_num: String,
    pub value_den: String,
    /// Value over the exact optimum of the same instance, when one was computed.
    pub ratio: String,
    pub clusters: String,
    pub depth: String,
    pub max_scars: String,
    pub status: String,
}

pub fn build_instance(generator: Generator, size: usize, seed: u64) -> Result<Embedding, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match generator {
        Generator::UnitGrid => grid(size, size, |_| 1, |_| 1),
        Generator::Grid => {
            let costs: Vec<i64> = (0..2 * size * size)
                .map(|_| rng.gen_range(1..=20))
                .collect();
            let weights: Vec<i64> = (0..size * size).map(|_| rng.gen_range(1..=5)).collect();
            grid(size, size, |e| costs[e], |v| weights[v])
        }
        Generator::Random => random_planar(
            RandomSpec {
                n: size,
                max_cost: 20,
                max_weight: 5,
                keep: 0.5,
            },
            &mut rng,
        ),
        Generator::Triangulation => random_triangulation(size.max(3), &mut rng),
        Generator::Minplus => {
            let mut seq = || {
                (0..size)
                    .map(|_| rng.gen_range(1..=10))
                    .collect::<Vec<i64>>()
            };
            let (a, b, c) = (seq(), seq(), seq());
            gen_minplus(&a, &b, &c, false)?.graph
        }
    })
}

struct Job {
    run: usize,
    generator: Generator,
    size: usize,
    seed: u64,
    methods: Vec<BenchMethod>,
    objective: Objective,
}

fn method_name(m: BenchMethod) -> &'static str {
    match m {
        BenchMethod::Layered => "layered",
        BenchMethod::Separator => "separator",
        BenchMethod::Approx => "approx",
        BenchMethod::Brute => "brute",
    }
}

struct Outcome {
    value: Option<Frac>,
    exact: bool,
    clusters: Option<(usize, usize, usize)>,
    status: String,
}

fn run_method(g: &Embedding, method: BenchMethod, objective: Objective) -> Outcome {
    let fail = |e: planecut::Error| Outcome {
        value: None,
        exact: false,
        clusters: None,
        status: format!("error: {e}"),
    };
    match method {
        BenchMethod::Layered | BenchMethod::Separator => {
            let m = if method == BenchMethod::Layered {
                Method::Layered
            } else {
                Method::Separator
            };
            match solve(g, objective, m) {
                Ok(c) => Outcome {
                    value: Some(c.value),
                    exact: true,
                    clusters: None,
                    status: "ok".into(),
                },
                Err(e) => fail(e),
            }
        }
        BenchMethod::Brute => match brute_optimum(g, objective, &Budget::default()) {
            Ok(Some((v, _))) => Outcome {
                value: Some(v),
                exact: true,
                clusters: None,
                status: "ok".into(),
            },
            Ok(None) => fail(planecut::Error::NoCut),
            Err(e) => fail(e),
        },
        BenchMethod::Approx => {
            if objective != Objective::Quotient {
                return Outcome {
                    value: None,
                    exact: false,
                    clusters: None,
                    status: "skipped: approx solves the quotient objective only".into(),
                };
            }
            let params = ApproxParams::new(ApproxParams::default_eps_inv())
                .expect("default parameters are valid");
            match approx_min_quotient(g, &params) {
                Ok(r) => Outcome {
                    value: Some(r.cut.value),
                    exact: false,
                    clusters: Some((
                        r.trace.clusters.clusters,
                        r.trace.clusters.depth,
                        r.trace.clusters.max_scars,
                    )),
                    status: "ok".into(),
                },
                Err(e) => fail(e),
            }
        }
    }
}

fn run_job(job: &Job) -> Vec<BenchRecord> {
    let gname = serde_json::to_value(job.generator)
        .unwrap()
        .as_str()
        .unwrap()
        .to_string();
    let instance = format!("r{}-{}-{}-s{}", job.run, gname, job.size, job.seed);
    let base = |method: &str| BenchRecord {
        instance: instance.clone(),
        generator: gname.clone(),
        size: job.size,
        seed: job.seed,
        n: 0,
        e: 0,
        w: 0,
        p: 0,
        method: method.to_string(),
        objective: job.objective.to_string(),
        wall_ms: 0.0,
        value_num: String::new(),
        value_den: String::new(),
        ratio: String::new(),
        clusters: String::new(),
        depth: String::new(),
        max_scars: String::new(),
        status: String::new(),
    };
    let g = match build_instance(job.generator, job.size, job.seed) {
        Ok(g) => g,
        Err(e) => {
            return job
                .methods
                .iter()
                .map(|&m| BenchRecord {
                    status: format!("error: {e}"),
                    ..base(method_name(m))
                })
                .collect()
        }
    };
    let mut rows = Vec::new();
    let mut outcomes = Vec::new();
    for &m in &job.methods {
        let start = Instant::now();
        let out = run_method(&g, m, job.objective);
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        let mut row = base(method_name(m));
        row.n = g.num_vertices();
        row.e = g.num_edges();
        row.w = g.total_vertex_weight();
        row.p = g.total_cost();
        row.wall_ms = (ms * 1000.0).round() / 1000.0;
        if let Some(v) = &out.value {
            let f = fraction(v);
            row.value_num = f.num;
            row.value_den = f.den;
        }
        if let Some((c, d, s)) = out.clusters {
            row.clusters = c.to_string();
            row.depth = d.to_string();
            row.max_scars = s.to_string();
        }
        row.status = out.status.clone();
        rows.push(row);
        outcomes.push(out);
    }
    let reference = outcomes.iter().find(|o| o.exact).and_then(|o| o.value);
    if let Some(r) = reference.filter(|r| *r > Frac::from_integer(0)) {
        for (row, out) in rows.iter_mut().zip(&outcomes) {
            if let Some(v) = out.value {
                row.ratio = format!("{:.6}", to_f64(&(v / r)));
            }
        }
    }
    rows
}

fn worker_count(requested: Option<usize>) -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cap = std::env::var("PLANECUT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0);
    let n = requested.unwrap_or(available);
    cap.map_or(n, |c| n.min(c)).max(1)
}

pub fn run_suite(suite: &Suite, threads: usize) -> Vec<BenchRecord> {
    let mut jobs = Vec::new();
    for (i, run) in suite.runs.iter().enumerate() {
        for &size in &run.sizes {
            for &seed in &run.seeds {
                jobs.push(Job {
                    run: i,
                    generator: run.generator,
                    size,
                    seed,
                    methods: run.methods.clone(),
                    objective: run.objective,
                });
            }
        }
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Vec<BenchRecord>>>> =
        Mutex::new(jobs.iter().map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.min(jobs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let rows = run_job(&jobs[i]);
                results.lock().unwrap()[i] = Some(rows);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .flatten()
        .flatten()
        .collect()
}

const HEADER: [&str; 18] = [
    "instance",
    "generator",
    "size",
    "seed",
    "n",
    "e",
    "w",
    "p",
    "method",
    "objective",
    "wall_ms",
    "value_num",
    "value_den",
    "ratio",
    "clusters",
    "depth",
    "max_scars",
    "status",
];

pub fn run_bench(args: &BenchArgs) -> Result<(), CliError> {
    let text = read_text(&args.suite)?;
    let suite: Suite = if text.trim().is_empty() {
        Suite::default()
    } else {
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", args.suite.display())))?
    };
    let rows = run_suite(&suite, worker_count(args.threads));
    let io_err =
        |e: csv::Error| CliError::Usage(format!("cannot write {}: {e}", args.out.display()));
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(&args.out)
        .map_err(io_err)?;
    w.write_record(HEADER).map_err(io_err)?;
    for row in &rows {
        w.serialize(row).map_err(io_err)?;
    }
    w.flush()
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", args.out.display())))?;
    let failed = rows
        .iter()
        .filter(|r| r.status.starts_with("error"))
        .count();
    eprintln!(
        "{} rows ({failed} failed) -> {}",
        rows.len(),
        args.out.display()
    );
    Ok(())
}
