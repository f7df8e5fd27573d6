//! `imodal`: prover, model checker and model constructions on the command line.
//!
//! Exit codes: 0 affirmative, 1 negative, 2 inconclusive, higher values are
//! errors (see [`CliError::code`]).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use imodal::calculus::{CalculusError, LogicId};
use imodal::corpus::{parse_corpus, CorpusRow, CORPUS_TSV, DISTINCTNESS_TSV, DUALITY_TSV};
use imodal::formula::{parse_formula, parse_sequent, Formula, ParseError, Sequent};
use imodal::hilbert::{axiom_provable_suite, check_hilbert, parse_derivation, HilbertError};
use imodal::proof::{check_proof, ProofTree};
use imodal::prover::{
    decide_with, default_probes, distinctness_matrix, ProveError, SearchOptions, Verdict,
    DEFAULT_BUDGET,
};
use imodal::semantics::{
    check_frame, countermodel_search, logic_frame_conditions, random_model, Conditions,
    FrameCondition, NbModel, SemanticsError,
};
use imodal::transform::{
    default_phi, finest_filtration, intersection_closure, kojima_to_nb, nb_to_kojima,
    nb_to_rel_ck, nb_to_rel_hw, quasi_filtering, random_kojima, random_rel, rel_to_nb_ck,
    rel_to_nb_hw, supplementation, KojimaModel, RelModel, TransformError,
};

const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(name = "imodal", version, about = "Proof search and neighbourhood models for intuitionistic non-normal modal logics")]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Write the proof, model or derivation artifact to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel search.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProofFormat {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Nb,
    Kojima,
    Rel,
    RelCk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Closure {
    None,
    Supplementation,
    Intersection,
    QuasiFiltering,
}

#[derive(Clone, Copy, ValueEnum)]
enum Translation {
    KojimaToNb,
    NbToKojima,
    RelToNbHw,
    RelToNbCk,
    NbToRelHw,
    NbToRelCk,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent or formula.
    Prove {
        #[arg(long)]
        logic: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ProofFormat,
        goal: String,
    },
    /// Check a proof tree in JSON form.
    CheckProof {
        #[arg(long)]
        logic: String,
        file: PathBuf,
    },
    /// Check a Hilbert derivation, or without a file, check that every axiom
    /// of the logic is derivable in its calculus.
    HilbertCheck {
        #[arg(long)]
        logic: String,
        file: Option<PathBuf>,
    },
    /// Derivability of the probe formulas in each logic.
    Matrix {
        /// Comma-separated logics; defaults to the 24 bimodal logics.
        #[arg(long)]
        logics: Option<String>,
        /// File with one probe formula per line.
        #[arg(long)]
        probes: Option<PathBuf>,
    },
    /// Evaluate a formula at a world, or check validity without `--world`.
    ModelEval {
        model: PathBuf,
        #[arg(long)]
        world: Option<String>,
        #[arg(long)]
        repair: bool,
        formula: String,
    },
    /// Check a model against a logic's frame conditions or a list of them.
    ModelCheck {
        model: PathBuf,
        #[arg(long)]
        logic: Option<String>,
        /// Comma-separated frame conditions, e.g. WInt1,CapBox.
        #[arg(long)]
        conditions: Option<String>,
        #[arg(long)]
        repair: bool,
    },
    /// Generate a random model.
    ModelRandom {
        #[arg(long)]
        logic: Option<String>,
        #[arg(long, value_enum, default_value = "nb")]
        kind: ModelKind,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Search for a countermodel with at most `--max` worlds.
    Countermodel {
        #[arg(long)]
        logic: String,
        #[arg(long, default_value_t = 3)]
        max: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        formula: String,
    },
    /// Finest filtration of a model through the subformulas of a formula.
    Filtrate {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "none")]
        closure: Closure,
        #[arg(long)]
        repair: bool,
        formula: String,
    },
    /// Translate between neighbourhood, Kojima and relational models.
    Transform {
        #[arg(long, value_enum)]
        kind: Translation,
        model: PathBuf,
    },
    /// Decide every row of a corpus file and compare with its labels.
    /// `builtin:distinctness`, `builtin:duality` and `builtin:corpus` name
    /// the shipped corpora.
    CorpusRun {
        corpus: String,
        /// Only run rows of these comma-separated logics.
        #[arg(long)]
        logic: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Logic(#[from] CalculusError),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("malformed input: {0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Transform(#[from] TransformError),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 3,
            CliError::Logic(_) => 4,
            CliError::Parse(_) => 5,
            CliError::Input(_) => 6,
            CliError::Io { .. } => 7,
            CliError::Transform(_) => 8,
        }
    }
}

impl From<SemanticsError> for CliError {
    fn from(e: SemanticsError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<HilbertError> for CliError {
    fn from(e: HilbertError) -> Self {
        match e {
            HilbertError::Logic(e) => CliError::Logic(e),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Yes,
    No,
    Inconclusive,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Yes => 0,
            Status::No => 1,
            Status::Inconclusive => 2,
        }
    }
}

/// Result of a command: the exit status, what to print, and an optional
/// artifact for `--out`.
struct Report {
    status: Status,
    text: String,
    json: Value,
    artifact: Option<String>,
}

impl Report {
    fn new(status: Status, text: String, json: Value) -> Self {
        Report {
            status,
            text,
            json,
            artifact: None,
        }
    }

    fn with_artifact(mut self, a: String) -> Self {
        self.artifact = Some(a);
        self
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn logic(s: &str) -> Result<LogicId, CliError> {
    Ok(s.parse()?)
}

fn logic_list(s: &str) -> Result<Vec<LogicId>, CliError> {
    s.split(',').map(|x| logic(x.trim())).collect()
}

fn goal(s: &str) -> Result<Sequent, CliError> {
    Ok(parse_sequent(s)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialise")
}

fn load_nb(path: &Path, repair: bool) -> Result<NbModel, CliError> {
    Ok(NbModel::from_json(&read_json(path)?, repair)?)
}

fn prove(l: &str, budget: usize, format: ProofFormat, g: &str) -> Result<Report, CliError> {
    let l = logic(l)?;
    let g = goal(g)?;
    let header = format!("logic: {l}\ngoal: {g}\n");
    match decide_with(&l, &g, SearchOptions { budget }) {
        Ok(Verdict::Derivable(t)) => {
            let rendered = match format {
                ProofFormat::Text => t.to_text(),
                ProofFormat::Latex => t.to_latex().map_err(|e| CliError::Input(e.to_string()))?,
                ProofFormat::Json => pretty(&t.to_json()),
            };
            let text = format!("{header}verdict: derivable\n\n{rendered}");
            let js = json!({"logic": l.name(), "goal": g.to_string(), "verdict": "derivable", "proof": t.to_json()});
            Ok(Report::new(Status::Yes, text, js).with_artifact(rendered))
        }
        Ok(Verdict::Underivable(stats)) => {
            let text = format!("{header}verdict: underivable ({} sequents expanded)\n", stats.nodes);
            let js = json!({"logic": l.name(), "goal": g.to_string(), "verdict": "underivable", "nodes": stats.nodes});
            Ok(Report::new(Status::No, text, js))
        }
        Err(e @ ProveError::BudgetExceeded { .. }) => {
            let js = json!({"logic": l.name(), "goal": g.to_string(), "verdict": "inconclusive", "reason": e.to_string()});
            Ok(Report::new(Status::Inconclusive, format!("{header}verdict: inconclusive ({e})\n"), js))
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn check_proof_file(l: &str, file: &Path) -> Result<Report, CliError> {
    let l = logic(l)?;
    let tree = ProofTree::from_json(&read_json(file)?).map_err(|e| CliError::Input(e.to_string()))?;
    let conclusion = tree.conclusion.to_string();
    Ok(match check_proof(&tree, &l) {
        Ok(()) => Report::new(
            Status::Yes,
            format!("valid {l} proof of {conclusion}\n"),
            json!({"logic": l.name(), "conclusion": conclusion, "valid": true}),
        ),
        Err(e) => Report::new(
            Status::No,
            format!("{e}\n"),
            json!({"logic": l.name(), "conclusion": conclusion, "valid": false, "error": e.to_string(), "path": e.path}),
        ),
    })
}

fn hilbert_check(l: &str, file: Option<&Path>) -> Result<Report, CliError> {
    let l = logic(l)?;
    let Some(file) = file else {
        let cases = axiom_provable_suite(&l)?;
        let mut text = String::new();
        let mut rows = Vec::new();
        let mut all = true;
        for c in &cases {
            let state = match &c.derivable {
                Ok(true) => "derivable".to_string(),
                Ok(false) => "UNDERIVABLE".to_string(),
                Err(e) => format!("inconclusive: {e}"),
            };
            all &= c.holds();
            text.push_str(&format!("{:<8} {}   {state}\n", c.schema.name(), c.conclusion));
            rows.push(json!({"schema": c.schema.name(), "conclusion": c.conclusion.to_string(), "holds": c.holds()}));
        }
        let status = if all { Status::Yes } else { Status::No };
        return Ok(Report::new(status, text, json!({"logic": l.name(), "cases": rows})));
    };
    let d = parse_derivation(&read(file)?)?;
    let theorem = d.theorem().map(|f| f.to_string());
    Ok(match check_hilbert(&d, &l) {
        Ok(()) => Report::new(
            Status::Yes,
            format!("valid {l} derivation of {}\n", theorem.clone().unwrap_or_default()),
            json!({"logic": l.name(), "theorem": theorem, "valid": true}),
        ),
        Err(HilbertError::Logic(e)) => return Err(CliError::Logic(e)),
        Err(e) => Report::new(
            Status::No,
            format!("{e}\n"),
            json!({"logic": l.name(), "theorem": theorem, "valid": false, "error": e.to_string()}),
        ),
    })
}

fn matrix(logics: Option<&str>, probes: Option<&Path>) -> Result<Report, CliError> {
    let logics = match logics {
        Some(s) => logic_list(s)?,
        None => LogicId::bimodal(),
    };
    let probes: Vec<Formula> = match probes {
        Some(p) => read(p)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_formula)
            .collect::<Result<_, _>>()?,
        None => default_probes(),
    };
    let m = match distinctness_matrix(&logics, &probes) {
        Ok(m) => m,
        Err(e @ ProveError::BudgetExceeded { .. }) => {
            return Ok(Report::new(Status::Inconclusive, format!("{e}\n"), json!({"error": e.to_string()})))
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let mut text = String::new();
    for (i, p) in probes.iter().enumerate() {
        text.push_str(&format!("# {i}: {p}\n"));
    }
    let mut rows = Vec::new();
    for (l, row) in logics.iter().zip(&m) {
        let cells: String = row.iter().map(|&d| if d { 'D' } else { '.' }).collect();
        text.push_str(&format!("{:<10} {cells}\n", l.name()));
        rows.push(json!({"logic": l.name(), "derivable": row}));
    }
    let mut same = Vec::new();
    for i in 0..logics.len() {
        for j in i + 1..logics.len() {
            if m[i] == m[j] {
                same.push(format!("{} {}", logics[i].name(), logics[j].name()));
            }
        }
    }
    if same.is_empty() {
        text.push_str("all logics separated\n");
    } else {
        text.push_str(&format!("not separated: {}\n", same.join(", ")));
    }
    let status = if same.is_empty() { Status::Yes } else { Status::No };
    let js = json!({"probes": probes.iter().map(|p| p.to_string()).collect::<Vec<_>>(), "rows": rows, "not_separated": same});
    Ok(Report::new(status, text, js))
}

fn model_eval(path: &Path, world: Option<&str>, repair: bool, formula: &str) -> Result<Report, CliError> {
    let m = load_nb(path, repair)?;
    let a = parse_formula(formula)?;
    let (holds, text, js) = match world {
        Some(w) => {
            let v = m.eval(w, &a)?;
            let text = format!("{w} {} {a}\n", if v { "forces" } else { "does not force" });
            (v, text, json!({"world": w, "formula": a.to_string(), "holds": v}))
        }
        None => {
            let t = m.truth_set(&a);
            let v = t == m.full();
            let text = format!(
                "{a} is {} (true at {})\n",
                if v { "valid" } else { "not valid" },
                m.format_set(t)
            );
            (v, text, json!({"formula": a.to_string(), "valid": v, "truth_set": m.set_labels(t)}))
        }
    };
    Ok(Report::new(if holds { Status::Yes } else { Status::No }, text, js))
}

fn parse_conditions(s: &str) -> Result<Conditions, CliError> {
    s.split(',')
        .map(|c| c.parse::<FrameCondition>().map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn model_check(path: &Path, l: Option<&str>, cs: Option<&str>, repair: bool) -> Result<Report, CliError> {
    let mut conds = Conditions::new();
    if let Some(l) = l {
        conds.extend(logic_frame_conditions(&logic(l)?)?);
    }
    if let Some(cs) = cs {
        conds.extend(parse_conditions(cs)?);
    }
    if l.is_none() && cs.is_none() {
        return Err(CliError::Usage("model-check needs --logic or --conditions".into()));
    }
    let m = load_nb(path, repair)?;
    let vs = check_frame(&m, &conds);
    let names: Vec<String> = conds.iter().map(|c| c.to_string()).collect();
    let mut text = format!("conditions: {}\n", names.join(", "));
    for v in &vs {
        text.push_str(&format!("{}\n", v.describe(&m)));
    }
    if vs.is_empty() {
        text.push_str("ok\n");
    }
    let js = json!({
        "conditions": names,
        "ok": vs.is_empty(),
        "violations": vs.iter().map(|v| v.describe(&m)).collect::<Vec<_>>(),
    });
    Ok(Report::new(if vs.is_empty() { Status::Yes } else { Status::No }, text, js))
}

fn model_random(l: Option<&str>, kind: ModelKind, size: usize, seed: u64) -> Result<Report, CliError> {
    if size == 0 || size > imodal::semantics::MAX_WORLDS {
        return Err(CliError::Usage(format!(
            "--size must be between 1 and {}",
            imodal::semantics::MAX_WORLDS
        )));
    }
    let model = match kind {
        ModelKind::Nb => {
            let l = logic(l.ok_or_else(|| CliError::Usage("--kind nb needs --logic".into()))?)?;
            random_model(&logic_frame_conditions(&l)?, size, seed).to_json()
        }
        ModelKind::Kojima => random_kojima(size, seed).to_json(),
        ModelKind::Rel => random_rel(size, false, seed).to_json(),
        ModelKind::RelCk => random_rel(size, true, seed).to_json(),
    };
    let body = pretty(&model);
    let text = format!("# seed {seed}\n{body}\n");
    Ok(Report::new(Status::Yes, text, json!({"seed": seed, "model": model})).with_artifact(body))
}

fn countermodel(l: &str, max: usize, budget: usize, formula: &str) -> Result<Report, CliError> {
    let l = logic(l)?;
    let a = parse_formula(formula)?;
    match countermodel_search(&l, &a, max)? {
        Some((m, w)) => {
            let body = pretty(&m.to_json());
            let text = format!("countermodel with {} worlds, refuted at {}\n{body}\n", m.size(), m.labels[w]);
            let js = json!({"logic": l.name(), "formula": a.to_string(), "found": true, "world": m.labels[w], "model": m.to_json()});
            Ok(Report::new(Status::Yes, text, js).with_artifact(body))
        }
        None => {
            // A derivable formula has no countermodel at all.
            let derivable = decide_with(&l, &Sequent::theorem(a.clone()), SearchOptions { budget })
                .map(|v| v.is_derivable())
                .unwrap_or(false);
            let (status, text) = if derivable {
                (Status::No, format!("{a} is derivable in {l}; no countermodel exists\n"))
            } else {
                (Status::Inconclusive, format!("no countermodel within {max} worlds\n"))
            };
            let js = json!({"logic": l.name(), "formula": a.to_string(), "found": false, "derivable": derivable, "max": max});
            Ok(Report::new(status, text, js))
        }
    }
}

fn filtrate(path: &Path, closure: Closure, repair: bool, formula: &str) -> Result<Report, CliError> {
    let m = load_nb(path, repair)?;
    let a = parse_formula(formula)?;
    let f = finest_filtration(&m, &default_phi(&a))?;
    let out = match closure {
        Closure::None => f.result.clone(),
        Closure::Supplementation => supplementation(&f),
        Closure::Intersection => intersection_closure(&f),
        Closure::QuasiFiltering => quasi_filtering(&f),
    };
    let body = pretty(&out.to_json());
    let text = format!("{} worlds filtered to {} classes\n{body}\n", m.size(), out.size());
    let js = json!({"classes": f.classes.len(), "model": out.to_json()});
    Ok(Report::new(Status::Yes, text, js).with_artifact(body))
}

fn transform(kind: Translation, path: &Path) -> Result<Report, CliError> {
    let v = read_json(path)?;
    let out = match kind {
        Translation::KojimaToNb => kojima_to_nb(&KojimaModel::from_json(&v)?)?.to_json(),
        Translation::NbToKojima => nb_to_kojima(&NbModel::from_json(&v, false)?)?.to_json(),
        Translation::RelToNbHw => rel_to_nb_hw(&RelModel::from_json(&v)?)?.to_json(),
        Translation::RelToNbCk => rel_to_nb_ck(&RelModel::from_json(&v)?)?.to_json(),
        Translation::NbToRelHw => nb_to_rel_hw(&NbModel::from_json(&v, false)?)?.to_json(),
        Translation::NbToRelCk => nb_to_rel_ck(&NbModel::from_json(&v, false)?)?.to_json(),
    };
    let body = pretty(&out);
    Ok(Report::new(Status::Yes, format!("{body}\n"), out).with_artifact(body))
}

fn corpus_rows(name: &str) -> Result<Vec<CorpusRow>, CliError> {
    let text = match name {
        "builtin:distinctness" => DISTINCTNESS_TSV.to_string(),
        "builtin:duality" => DUALITY_TSV.to_string(),
        "builtin:corpus" => CORPUS_TSV.to_string(),
        path => read(Path::new(path))?,
    };
    parse_corpus(&text).map_err(|e| CliError::Input(e.to_string()))
}

fn corpus_run(name: &str, logics: Option<&str>, budget: usize) -> Result<Report, CliError> {
    let mut rows = corpus_rows(name)?;
    if let Some(ls) = logics {
        let keep = logic_list(ls)?;
        rows.retain(|r| keep.contains(&r.logic));
    }
    let mut text = String::new();
    if rows.is_empty() {
        eprintln!("warning: corpus {name} has no rows to run");
    }
    let (mut pass, mut fail, mut unknown) = (0, 0, 0);
    let mut results = Vec::new();
    for r in &rows {
        let got = decide_with(&r.logic, &r.sequent, SearchOptions { budget }).map(|v| v.is_derivable());
        let label = |b: bool| if b { "D" } else { "U" };
        let (state, got_s) = match &got {
            Ok(d) if *d == r.expected => {
                pass += 1;
                ("pass", label(*d).to_string())
            }
            Ok(d) => {
                fail += 1;
                ("FAIL", label(*d).to_string())
            }
            Err(e) => {
                unknown += 1;
                ("inconclusive", e.to_string())
            }
        };
        text.push_str(&format!(
            "{state:<12} line {:<4} {:<10} {}   expected {} got {got_s}\n",
            r.line,
            r.logic.name(),
            r.sequent,
            label(r.expected)
        ));
        results.push(json!({
            "line": r.line, "logic": r.logic.name(), "sequent": r.sequent.to_string(),
            "expected": label(r.expected), "got": got_s, "status": state,
        }));
    }
    text.push_str(&format!("{pass} passed, {fail} failed, {unknown} inconclusive\n"));
    let status = if fail > 0 {
        Status::No
    } else if unknown > 0 {
        Status::Inconclusive
    } else {
        Status::Yes
    };
    let js = json!({"passed": pass, "failed": fail, "inconclusive": unknown, "rows": results});
    Ok(Report::new(status, text, js))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Prove { logic, budget, format, goal } => prove(logic, *budget, *format, goal),
        Command::CheckProof { logic, file } => check_proof_file(logic, file),
        Command::HilbertCheck { logic, file } => hilbert_check(logic, file.as_deref()),
        Command::Matrix { logics, probes } => matrix(logics.as_deref(), probes.as_deref()),
        Command::ModelEval { model, world, repair, formula } => {
            model_eval(model, world.as_deref(), *repair, formula)
        }
        Command::ModelCheck { model, logic, conditions, repair } => {
            model_check(model, logic.as_deref(), conditions.as_deref(), *repair)
        }
        Command::ModelRandom { logic, kind, size, seed } => model_random(logic.as_deref(), *kind, *size, *seed),
        Command::Countermodel { logic, max, budget, formula } => countermodel(logic, *max, *budget, formula),
        Command::Filtrate { model, closure, repair, formula } => filtrate(model, *closure, *repair, formula),
        Command::Transform { kind, model } => transform(*kind, model),
        Command::CorpusRun { corpus, logic, budget } => corpus_run(corpus, logic.as_deref(), *budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(3);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string(), "code": e.code()}));
            }
            eprintln!("error: {e}");
            return ExitCode::from(e.code());
        }
    };
    if let (Some(path), Some(body)) = (&cli.out, &report.artifact) {
        if let Err(source) = fs::write(path, format!("{body}\n")) {
            let e = CliError::Io {
                path: path.display().to_string(),
                source,
            };
            eprintln!("error: {e}");
            return ExitCode::from(e.code());
        }
    }
    if cli.json {
        println!("{}", pretty(&report.json));
    } else {
        print!("{}", report.text);
    }
    ExitCode::from(report.status.code())
}
