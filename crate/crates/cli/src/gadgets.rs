//! `gen` and `verify` for the hardness instances.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use planecut::hardness::{
    gen_diamond, gen_minplus_with, gen_sets, verify_diamond, verify_minplus, verify_sets,
    DiamondInstance, Meta, MinPlusInstance, Report, SetsInstance, SetsOptions, SetsVariant,
};
use planecut::planar::plg;
use planecut::Embedding;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::io::{read_graph, read_text, write_json, write_text};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Minplus,
    Diamond,
    Maxdist,
    Sumdist,
    Linkage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LinkageMode {
    Complete,
    Average,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: Kind,
    /// Sequence A (minplus: comma-separated integers; diamond: bit string).
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    /// Sequence C (minplus only).
    #[arg(long)]
    pub c: Option<String>,
    /// Comma-separated bit strings, one per vector (sets gadgets).
    #[arg(long)]
    pub vectors: Option<String>,
    /// Generate random inputs from this seed instead of explicit ones.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sequence length / bit-string length / number of vectors for random inputs.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Vector dimension for random sets inputs.
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    /// Largest value in random minplus sequences.
    #[arg(long, default_value_t = 10)]
    pub max_value: i64,
    /// Minplus: unit-weight variant with pendant vertices.
    #[arg(long)]
    pub unit: bool,
    /// Minplus: β = factor · T n² (48 makes the sparsity threshold sound).
    #[arg(long, default_value_t = planecut::hardness::BETA_FACTOR)]
    pub beta_factor: i64,
    /// Maxdist/sumdist: subdivide edges into unit-cost paths.
    #[arg(long)]
    pub unweighted: bool,
    #[arg(long, value_enum, default_value_t = LinkageMode::Complete)]
    pub mode: LinkageMode,
    /// Average linkage: copies per node (default 32d² + 1).
    #[arg(long)]
    pub copies: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub kind: Kind,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub meta: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// meta.json: the instance description plus the seed that produced it.
#[derive(Debug, Serialize, Deserialize)]
pub struct MetaFile {
    #[serde(flatten)]
    pub meta: Meta,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn ints(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--{what}: `{x}` is not an integer")))
        })
        .collect()
}

fn bits(s: &str, what: &str) -> Result<Vec<u8>, CliError> {
    s.trim()
        .chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(CliError::Usage(format!(
                "--{what}: `{s}` is not a bit string"
            ))),
        })
        .collect()
}

fn need<'a>(x: &'a Option<String>, what: &str) -> Result<&'a str, CliError> {
    x.as_deref().ok_or_else(|| {
        CliError::Usage(format!(
            "missing --{what} (or pass --seed for random inputs)"
        ))
    })
}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2)).collect()
}

pub enum Instance {
    Minplus(MinPlusInstance),
    Diamond(DiamondInstance),
    Sets(SetsInstance),
}

impl Instance {
    fn graph(&self) -> &Embedding {
        match self {
            Instance::Minplus(i) => &i.graph,
            Instance::Diamond(i) => &i.graph,
            Instance::Sets(i) => &i.graph,
        }
    }

    fn meta(&self) -> Meta {
        match self {
            Instance::Minplus(i) => Meta::Minplus(i.meta.clone()),
            Instance::Diamond(i) => Meta::Diamond(i.meta.clone()),
            Instance::Sets(i) => Meta::Sets(i.meta.clone()),
        }
    }

    pub fn from_meta(meta: &Meta) -> Result<Instance, CliError> {
        Ok(match meta {
            Meta::Minplus(m) => Instance::Minplus(MinPlusInstance::from_meta(m)?),
            Meta::Diamond(m) => Instance::Diamond(DiamondInstance::from_meta(m)?),
            Meta::Sets(m) => Instance::Sets(SetsInstance::from_meta(m)?),
        })
    }

    pub fn verify(&self) -> Result<Report, CliError> {
        Ok(match self {
            Instance::Minplus(i) => verify_minplus(i)?,
            Instance::Diamond(i) => verify_diamond(i)?,
            Instance::Sets(i) => verify_sets(i)?,
        })
    }
}

fn sets_variant(kind: Kind, mode: LinkageMode) -> SetsVariant {
    match (kind, mode) {
        (Kind::Maxdist, _) => SetsVariant::Maxdist,
        (Kind::Sumdist, _) => SetsVariant::Sumdist,
        (_, LinkageMode::Complete) => SetsVariant::Complete,
        (_, LinkageMode::Average) => SetsVariant::Average,
    }
}

pub fn generate(args: &GenArgs) -> Result<Instance, CliError> {
    let mut rng = args.seed.map(ChaCha8Rng::seed_from_u64);
    let inst = match args.kind {
        Kind::Minplus => {
            let (a, b, c) = match rng.as_mut() {
                Some(rng) => {
                    let mut seq = || {
                        (0..args.n)
                            .map(|_| rng.gen_range(1..=args.max_value.max(1)))
                            .collect::<Vec<_>>()
                    };
                    (seq(), seq(), seq())
                }
                None => (
                    ints(need(&args.a, "a")?, "a")?,
                    ints(need(&args.b, "b")?, "b")?,
                    ints(need(&args.c, "c")?, "c")?,
                ),
            };
            Instance::Minplus(gen_minplus_with(&a, &b, &c, args.unit, args.beta_factor)?)
        }
        Kind::Diamond => {
            let (a, b) = match rng.as_mut() {
                Some(rng) => (random_bits(rng, args.n), random_bits(rng, args.n)),
                None => (
                    bits(need(&args.a, "a")?, "a")?,
                    bits(need(&args.b, "b")?, "b")?,
                ),
            };
            Instance::Diamond(gen_diamond(&a, &b)?)
        }
        Kind::Maxdist | Kind::Sumdist | Kind::Linkage => {
            let vectors = match rng.as_mut() {
                Some(rng) => (0..args.n).map(|_| random_bits(rng, args.d)).collect(),
                None => need(&args.vectors, "vectors")?
                    .split(',')
                    .map(|v| bits(v, "vectors"))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let options = SetsOptions {
                unweighted: args.unweighted,
                copies: args.copies,
                ..SetsOptions::default()
            };
            Instance::Sets(gen_sets(
                &vectors,
                sets_variant(args.kind, args.mode),
                options,
            )?)
        }
    };
    Ok(inst)
}

pub fn run_gen(args: &GenArgs) -> Result<(), CliError> {
    let inst = generate(args)?;
    write_text(&args.out, &plg::write(inst.graph()))?;
    if let Some(path) = &args.meta {
        write_json(
            path,
            &MetaFile {
                meta: inst.meta(),
                seed: args.seed,
            },
        )?;
    }
    let g = inst.graph();
    eprintln!(
        "wrote {} ({} vertices, {} edges)",
        args.out.display(),
        g.num_vertices(),
        g.num_edges()
    );
    Ok(())
}

fn kind_matches(kind: Kind, meta: &Meta) -> bool {
    match (kind, meta) {
        (Kind::Minplus, Meta::Minplus(_)) | (Kind::Diamond, Meta::Diamond(_)) => true,
        (Kind::Maxdist, Meta::Sets(m)) => m.variant == SetsVariant::Maxdist,
        (Kind::Sumdist, Meta::Sets(m)) => m.variant == SetsVariant::Sumdist,
        (Kind::Linkage, Meta::Sets(m)) => {
            matches!(m.variant, SetsVariant::Complete | SetsVariant::Average)
        }
        _ => false,
    }
}

pub fn read_meta(path: &std::path::Path) -> Result<MetaFile, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    kind: String,
    pass: bool,
    seed: Option<u64>,
    checks: Vec<planecut::hardness::Check>,
}

pub fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let graph = read_graph(&args.input)?;
    let file = read_meta(&args.meta)?;
    if !kind_matches(args.kind, &file.meta) {
        return Err(CliError::Usage(format!(
            "{} does not describe a {} instance",
            args.meta.display(),
            args.kind
                .to_possible_value()
                .map_or_else(String::new, |v| v.get_name().to_string())
        )));
    }
    let inst = Instance::from_meta(&file.meta)?;
    let mut report = inst.verify()?;
    report.check(
        "input graph matches the instance described by the meta file",
        plg::write(&graph) == plg::write(inst.graph()),
        args.input.display().to_string(),
    );
    let out = VerifyReport {
        kind: report.kind.clone(),
        pass: report.pass(),
        seed: file.seed,
        checks: report.checks.clone(),
    };
    match &args.report {
        Some(path) => write_json(path, &out)?,
        None => crate::io::print_json(&out),
    }
    report.into_result()?;
    Ok(())
}
