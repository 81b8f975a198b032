//! Batch front end for `tflat-core`: reads description files, runs one
//! analysis over each and renders a deterministic report.

pub mod format;
mod render;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use tflat_core::ideal::MonoidIdeal;
use tflat_core::modcomb::prime_filtration;
use tflat_core::tflat::{
    gr_structure_check, is_tflat, is_weakly_tflat, log_regularity_report, obstruction_ideal, TorResult,
};
use tflat_core::{flag_embedding, par, verify_embedding, Flag};

pub use format::{parse_document, Document, FlagDecl, ModuleDecl};

/// Version of the JSON report layout.
pub const REPORT_VERSION: u32 = 1;
/// Pairs sampled per ideal by the gr check in `report`.
pub const GR_SAMPLES: usize = 100;
/// Half-width of the box searched by the embedding verifier.
pub const VERIFY_BOX: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid {object}: {msg}")]
    Validation { object: String, msg: String },
    #[error("{path}: {source}")]
    Input { path: String, source: Box<CliError> },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Analysis {
        context: String,
        source: tflat_core::Error,
    },
}

impl CliError {
    fn analysis(context: impl Into<String>) -> impl FnOnce(tflat_core::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Analysis { context, source }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Info,
    Saturate,
    Faces,
    Embed,
    Filtration,
    Tflat,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Saturate => "saturate",
            Command::Faces => "faces",
            Command::Embed => "embed",
            Command::Filtration => "filtration",
            Command::Tflat => "tflat",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Command-line arguments.
#[derive(Clone, Debug, Parser)]
#[command(name = "tflat", version, about = "Monoids, monomial modules and t-flatness")]
pub struct Args {
    /// Analysis to run on every input
    #[arg(value_enum)]
    pub command: Command,
    /// Description files
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Weight bound for searches
    #[arg(long, default_value_t = 10)]
    pub bound: i64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Worker threads (0 uses every core); output does not depend on it
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Exit with status 1 when a module is not t-flat
    #[arg(long)]
    pub expect_tflat: bool,
    /// Seed for sampled checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionSpec {
    pub inputs: Vec<PathBuf>,
    pub command: Command,
    pub bound: i64,
    pub format: OutputFormat,
    pub jobs: usize,
    pub expect_tflat: bool,
    pub seed: u64,
}

impl SessionSpec {
    pub fn new(command: Command, inputs: Vec<PathBuf>) -> Self {
        SessionSpec {
            inputs,
            command,
            bound: 10,
            format: OutputFormat::Text,
            jobs: 0,
            expect_tflat: false,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.bound < 1 {
            return Err(CliError::Usage(format!("--bound must be at least 1, got {}", self.bound)));
        }
        if self.inputs.is_empty() {
            return Err(CliError::Usage("no input files".into()));
        }
        Ok(())
    }
}

impl From<Args> for SessionSpec {
    fn from(a: Args) -> Self {
        SessionSpec {
            inputs: a.inputs,
            command: a.command,
            bound: a.bound,
            format: a.format,
            jobs: a.jobs,
            expect_tflat: a.expect_tflat,
            seed: a.seed,
        }
    }
}

/// A finished run: the rendered report and the exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub status: i32,
}

/// Analysis of one input file.
#[derive(Clone, Debug)]
struct FileReport {
    path: String,
    name: String,
    result: Value,
    certificates: Value,
    negative: bool,
}

pub fn load(path: &std::path::Path) -> Result<Document, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: shown.clone(),
        msg: e.to_string(),
    })?;
    parse_document(&text).map_err(|e| CliError::Input {
        path: shown,
        source: Box::new(e),
    })
}

/// Parses every input, then runs the command over them in order.
pub fn run(spec: &SessionSpec) -> Result<Outcome, CliError> {
    spec.validate()?;
    let docs = spec
        .inputs
        .iter()
        .map(|p| load(p).map(|d| (p.display().to_string(), d)))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = par::with_threads(spec.jobs, || {
        docs.iter()
            .map(|(path, doc)| analyse(spec, path, doc))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let negative = spec.expect_tflat && reports.iter().any(|r| r.negative);
    let report = match spec.format {
        OutputFormat::Json => {
            let out = json!({
                "version": REPORT_VERSION,
                "command": spec.command.name(),
                "bound": spec.bound,
                "seed": spec.seed,
                "inputs": reports.iter().map(|r| &r.path).collect::<Vec<_>>(),
                "result": reports.iter().map(|r| json!({"input": r.path, "monoid": r.name, "analysis": r.result})).collect::<Vec<_>>(),
                "certificates": reports.iter().map(|r| json!({"input": r.path, "checks": r.certificates})).collect::<Vec<_>>(),
            });
            let mut s = String::new();
            render::json(&mut s, &out, 0);
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!("== {} ({}) {} ==\n", r.name, r.path, spec.command.name()));
                render::text(&mut s, &r.result, 0);
                s.push_str("certificates:\n");
                render::text(&mut s, &r.certificates, 1);
            }
            s
        }
    };
    Ok(Outcome {
        report,
        status: if negative { 1 } else { 0 },
    })
}

fn analyse(spec: &SessionSpec, path: &str, doc: &Document) -> Result<FileReport, CliError> {
    let mut negative = false;
    let (result, certificates) = match spec.command {
        Command::Info => info(doc),
        Command::Saturate => saturate(doc),
        Command::Faces => faces(doc),
        Command::Embed => embed(doc)?,
        Command::Filtration => filtration(doc)?,
        Command::Tflat => {
            let (r, c, neg) = tflat(doc, spec.bound)?;
            negative = neg;
            (r, c)
        }
        Command::Report => report(doc, spec.bound, spec.seed)?,
    };
    Ok(FileReport {
        path: path.to_string(),
        name: doc.name.clone(),
        result,
        certificates,
        negative,
    })
}

fn info(doc: &Document) -> (Value, Value) {
    let p = &doc.monoid;
    let faces = p.faces();
    let primes = tflat_core::ideal::prime_ideals(p);
    let ideals: Vec<Value> = doc
        .ideals
        .iter()
        .map(|(name, k)| json!({"name": name, "generators": k.generators(), "prime": k.is_prime()}))
        .collect();
    let result = json!({
        "ambient_rank": p.ambient_rank(),
        "generators": p.generators(),
        "gp_rank": p.gp_rank(),
        "unit_rank": p.unit_rank(),
        "dimension": p.dimension(),
        "sharp": p.is_sharp(),
        "saturated": p.is_saturated(),
        "faces": faces.len(),
        "primes": primes.len(),
        "grading": p.positive_grading().ok(),
        "ideals": ideals,
    });
    let certificates = json!({
        "sharp_quotient_torsion": p.sharp_quotient().group.torsion_orders,
        "saturation_witnesses": p.saturation_witnesses(),
    });
    (result, certificates)
}

fn saturate(doc: &Document) -> (Value, Value) {
    let p = &doc.monoid;
    let s = p.saturation();
    let witnesses: Vec<Value> = p
        .saturation_witnesses()
        .into_iter()
        .map(|w| json!({"element": w, "in_saturation": s.contains(&w), "in_monoid": p.contains(&w)}))
        .collect();
    let result = json!({
        "saturated": p.is_saturated(),
        "saturation": s.generators(),
    });
    (result, json!({ "witnesses": witnesses }))
}

fn faces(doc: &Document) -> (Value, Value) {
    let p = &doc.monoid;
    let faces: Vec<Value> = p
        .faces()
        .iter()
        .map(|f| {
            let prime = MonoidIdeal::prime_of_face(f);
            json!({
                "dim": f.dim(),
                "generators": f.generators(),
                "prime": prime.generators(),
                "height": f.codim(),
            })
        })
        .collect();
    let flag: Vec<Value> = p.complete_flag().faces().iter().map(|f| json!(f.generators())).collect();
    let result = json!({ "faces": faces, "complete_flag": flag });
    let certificates = json!({ "prime_count": tflat_core::ideal::prime_ideals(p).len() });
    (result, certificates)
}

fn embed(doc: &Document) -> Result<(Value, Value), CliError> {
    let p = &doc.monoid;
    let flags: Vec<(String, Flag)> = if doc.flags.is_empty() {
        vec![("complete".to_string(), p.complete_flag())]
    } else {
        doc.flags.iter().map(|f| (f.name.clone(), f.flag.clone())).collect()
    };
    let mut results = Vec::new();
    let mut certs = Vec::new();
    for (name, flag) in &flags {
        let e = flag_embedding(p, flag).map_err(CliError::analysis(format!("embedding along flag {name}")))?;
        let images: Vec<Value> = p
            .generators()
            .iter()
            .zip(e.generator_images())
            .map(|(g, img)| json!({"generator": g, "image": img}))
            .collect();
        results.push(json!({
            "flag": name,
            "faces": flag.faces().iter().map(|f| f.generators()).collect::<Vec<_>>(),
            "images": images,
            "matrix": e.matrix,
            "shears": e.shears,
        }));
        let c = verify_embedding(&e, VERIFY_BOX);
        certs.push(json!({
            "flag": name,
            "passed": c.passed(),
            "elements_checked": c.elements_checked,
            "box": c.box_bound,
            "violation": c.violation,
        }));
    }
    Ok((json!({ "embeddings": results }), json!({ "verify": certs })))
}

fn filtration(doc: &Document) -> Result<(Value, Value), CliError> {
    let mut results = Vec::new();
    let mut certs = Vec::new();
    for m in &doc.modules {
        let f = prime_filtration(&m.module).map_err(CliError::analysis(format!("filtration of {}", m.name)))?;
        let steps: Vec<Value> = f
            .steps
            .iter()
            .map(|s| json!({"prime": s.prime.generators(), "witness": s.witness}))
            .collect();
        results.push(json!({"module": m.name, "steps": steps}));
        let replay = f.replay();
        certs.push(json!({"module": m.name, "replay": replay.is_ok(), "error": replay.err()}));
    }
    Ok((json!({ "filtrations": results }), json!({ "replays": certs })))
}

fn verdict_json(r: &TorResult) -> Value {
    match r {
        TorResult::NotTFlat {
            witness_prime,
            prime_index,
            degree,
            weight,
            kernel_rank,
            torsion,
        } => json!({
            "verdict": "NotTFlat",
            "witness_prime": witness_prime.generators(),
            "prime_index": prime_index,
            "degree": degree,
            "weight": weight,
            "kernel_rank": kernel_rank,
            "torsion": torsion,
        }),
        TorResult::TFlatUpTo {
            bound,
            primes_checked,
            degrees_checked,
        } => json!({
            "verdict": "TFlatUpTo",
            "bound": bound,
            "primes_checked": primes_checked,
            "degrees_checked": degrees_checked,
        }),
    }
}

fn tflat(doc: &Document, bound: i64) -> Result<(Value, Value, bool), CliError> {
    let mut results = Vec::new();
    let mut certs = Vec::new();
    let mut negative = false;
    for m in &doc.modules {
        let ctx = || format!("t-flatness of {}", m.name);
        let e = &m.module;
        let full = is_tflat(e, e.relative_to(), bound).map_err(CliError::analysis(ctx()))?;
        let weak = is_weakly_tflat(e, e.relative_to(), bound).map_err(CliError::analysis(ctx()))?;
        let obstruction = obstruction_ideal(e, bound).map_err(CliError::analysis(ctx()))?;
        negative |= !full.is_flat_up_to_bound();
        results.push(json!({
            "module": m.name,
            "relative_to": m.rel,
            "tflat": verdict_json(&full.result),
            "weakly_tflat": verdict_json(&weak.result),
            "obstruction": {
                "ideal": obstruction.ideal.generators(),
                "certified": obstruction.certified,
                "ideals_tested": obstruction.ideals_tested,
            },
        }));
        let replay = match full.witness() {
            Some(_) => Some(full.replay().map_err(CliError::analysis(ctx()))?),
            None => None,
        };
        certs.push(json!({"module": m.name, "witness_replays": replay}));
    }
    Ok((json!({ "modules": results }), json!({ "tor": certs }), negative))
}

fn report(doc: &Document, bound: i64, seed: u64) -> Result<(Value, Value), CliError> {
    let p = &doc.monoid;
    if !p.is_sharp() {
        return Err(CliError::Validation {
            object: doc.name.clone(),
            msg: format!(
                "report needs a sharp monoid; this one has unit rank {}, run it on the sharp quotient",
                p.unit_rank()
            ),
        });
    }
    let r = log_regularity_report(p).map_err(CliError::analysis("log regularity"))?;
    let primes: Vec<Value> = r
        .primes
        .iter()
        .map(|q| json!({"prime": q.generators, "height": q.height, "localized_dimension": q.localized_dimension}))
        .collect();
    let result = json!({
        "dimension": r.dimension,
        "gp_rank": r.gp_rank,
        "saturated": r.saturated,
        "sharp_quotient_torsion": r.sharp_quotient_torsion,
        "log_regular": r.log_regular,
        "justification": r.justification,
        "primes": primes,
    });
    let mut ideals = vec![("maximal".to_string(), MonoidIdeal::maximal(p))];
    ideals.extend(doc.ideals.iter().filter(|(_, k)| !k.is_empty()).cloned());
    let mut gr = Vec::new();
    for (name, k) in &ideals {
        let c = gr_structure_check(k, GR_SAMPLES, bound, seed).map_err(CliError::analysis(format!("gr check on {name}")))?;
        gr.push(json!({
            "ideal": name,
            "passed": c.passed(),
            "pairs_checked": c.pairs_checked,
            "failures": c.failures,
        }));
    }
    let certificates = json!({
        "saturation_witnesses": r.saturation_witnesses,
        "gr": gr,
    });
    Ok((result, certificates))
}
