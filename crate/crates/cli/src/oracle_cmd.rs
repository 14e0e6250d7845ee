//! `oracle`: brute-force reference computations on small graphs.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use planecut::hardness::{Meta, SetsInstance};
use planecut::oracle::{
    apsp, brute_bisection, brute_cuts, enumerate_simple_cycles, hop_diameter, linkage_simulate,
    set_distance, Budget, Linkage, SetMode,
};
use planecut::planar::plg;
use planecut::Objective;
use serde::Serialize;
use serde_json::{json, Value};

use crate::gadgets::read_meta;
use crate::io::{fraction, print_json, read_graph, write_json};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Cuts,
    Apsp,
    Cycles,
    Linkage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LinkageArg {
    Single,
    Complete,
    Average,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub kind: OracleKind,
    #[arg(long)]
    pub input: PathBuf,
    /// Sets meta file: cluster only the set nodes and hubs, and report set distances.
    #[arg(long)]
    pub sets: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = LinkageArg::Complete)]
    pub mode: LinkageArg,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn mask_side(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

fn cuts(g: &planecut::Embedding, budget: &Budget) -> Result<Value, CliError> {
    let rows = brute_cuts(g, budget)?;
    let n = g.num_vertices();
    let mut best = serde_json::Map::new();
    for objective in [Objective::Quotient, Objective::Sparsity] {
        let opt = rows
            .iter()
            .filter_map(|r| r.value(objective).map(|v| (v, r)))
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.mask.cmp(&b.1.mask)));
        let entry = match opt {
            Some((v, r)) => {
                let f = fraction(&v);
                json!({"value_num": f.num, "value_den": f.den, "cost": r.cost, "side": mask_side(r.mask, n)})
            }
            None => Value::Null,
        };
        best.insert(objective.to_string(), entry);
    }
    Ok(json!({
        "cuts": rows.len(),
        "optimum": best,
        "min_bisection": brute_bisection(g, budget)?,
    }))
}

#[derive(Serialize)]
struct CycleJson {
    vertices: Vec<usize>,
    darts: Vec<usize>,
    cost: i64,
    enclosed: i64,
}

pub fn run_oracle(args: &OracleArgs) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    let budget = Budget::default();
    let report = match args.kind {
        OracleKind::Cuts => cuts(&g, &budget)?,
        OracleKind::Apsp => {
            let d = apsp(&g, &budget)?;
            let diameter = d.iter().flatten().copied().max().unwrap_or(0);
            json!({"diameter": diameter, "hop_diameter": hop_diameter(&g), "dist": d})
        }
        OracleKind::Cycles => {
            let cycles: Vec<CycleJson> = enumerate_simple_cycles(&g, &budget)?
                .into_iter()
                .map(|c| CycleJson {
                    vertices: c.cycle.vertices(&g),
                    darts: c.cycle.darts.clone(),
                    cost: c.cost,
                    enclosed: c.enclosed,
                })
                .collect();
            json!({"count": cycles.len(), "cycles": cycles})
        }
        OracleKind::Linkage => linkage(&g, args, &budget)?,
    };
    match &args.report {
        Some(path) => write_json(path, &report),
        None => {
            print_json(&report);
            Ok(())
        }
    }
}

fn linkage(g: &planecut::Embedding, args: &OracleArgs, budget: &Budget) -> Result<Value, CliError> {
    let mode = match args.mode {
        LinkageArg::Single => Linkage::Single,
        LinkageArg::Complete => Linkage::Complete,
        LinkageArg::Average => Linkage::Average,
    };
    // points: all vertices, or the set nodes followed by ℓ and r
    let (points, sets) = match &args.sets {
        Some(path) => {
            let Meta::Sets(meta) = read_meta(path)?.meta else {
                return Err(CliError::Usage(format!(
                    "{} is not a sets meta file",
                    path.display()
                )));
            };
            let inst = SetsInstance::from_meta(&meta)?;
            if plg::write(&inst.graph) != plg::write(g) {
                return Err(CliError::Usage(
                    "input graph does not match the sets meta file".into(),
                ));
            }
            let mut pts: Vec<usize> = inst.sets.iter().flatten().copied().collect();
            pts.extend([inst.l, inst.r]);
            (pts, Some(inst.sets))
        }
        None => ((0..g.num_vertices()).collect(), None),
    };
    if g.num_vertices() > budget.max_apsp_nodes {
        return Err(CliError::from(planecut::Error::BudgetExceeded {
            size: g.num_vertices(),
            budget: budget.max_apsp_nodes,
        }));
    }
    let all = apsp(g, budget)?;
    let dist: Vec<Vec<i64>> = points
        .iter()
        .map(|&x| points.iter().map(|&y| all[x][y]).collect())
        .collect();
    let merges = linkage_simulate(&dist, mode, budget)?;
    let merges_json: Vec<Value> = merges
        .iter()
        .map(|m| {
            let f = fraction(&m.value());
            json!({"keep": points[m.keep], "absorbed": points[m.absorbed], "value_num": f.num, "value_den": f.den, "size": m.size})
        })
        .collect();
    let mut out = json!({"points": points, "merges": merges_json});
    if let Some(sets) = sets {
        let mut pairs = Vec::new();
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                pairs.push(json!({
                    "a": a,
                    "b": b,
                    "max_dist": set_distance(&all, &sets[a], &sets[b], SetMode::Max),
                    "sum_dist": set_distance(&all, &sets[a], &sets[b], SetMode::Sum),
                }));
            }
        }
        out["set_distances"] = Value::Array(pairs);
    }
    Ok(out)
}
