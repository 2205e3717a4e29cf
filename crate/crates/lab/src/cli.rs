//! Command-line definitions and dispatch.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cva_core::cva::{
    check_concurrency_rule, check_derived_neutral_props, check_hoare_skip, check_neutral_laws, check_seq_le_par,
    check_weak_exchange, Cva,
};
use cva_core::inference::{
    solve_inference, solve_inference_semijoin, Combines, InferenceProblem, Knowledgebase, Selector,
};
use cva_core::models::{build_model, relative_model, state_model, Model, ModelConfig, ModelKind, DEFAULT_CAP};
use cva_core::morphism::{
    check_morphism, check_quotient_equalities, identity_map, stutter_quotient, Level, Mode, MorphismCandidate,
};
use cva_core::ova::{check_adjunction, check_ova_axioms, check_strong_neutrality, Ova};
use cva_core::report::DEFAULT_SEED;
use cva_core::tuples::{check_tuple_system, ValueSet};
use cva_core::valuation::{gc_leq_under, Valuation};
use cva_core::{Budget, CheckReport, OpenSet, Topology};

use crate::codec::{encode_domain, encode_valuation, load_valuation, to_canonical_string, Codec};
use crate::error::{LabError, Result};
use crate::report::{comparison_json, report_json};
use crate::space::load_space;

#[derive(Parser, Debug)]
#[command(name = "cva-lab", version, about = "Check, evaluate and query concurrent valuation algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug)]
pub struct Opts {
    /// action, state, relative or db.
    #[arg(long, global = true, default_value = "state")]
    pub model: String,
    /// Space definition file.
    #[arg(long, global = true)]
    pub space: Option<PathBuf>,
    /// Number of values `k` (values 0..k-1) or a comma-separated list of names.
    #[arg(long, global = true, default_value = "2")]
    pub values: String,
    /// Length cap for universe enumeration.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long, global = true, env = "CVA_LAB_SEED", value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// Evaluated instances per sampled law.
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Seq,
    Par,
}

impl From<Op> for Selector {
    fn from(op: Op) -> Self {
        match op {
            Op::Seq => Selector::Seq,
            Op::Par => Selector::Par,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MorphismKind {
    StutterQuotient,
    Identity,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// OVA axioms and the restriction/extension adjunction.
    CheckOva {
        /// Only check this operator.
        #[arg(long, value_enum)]
        op: Option<Op>,
        /// Also check strong neutrality.
        #[arg(long)]
        strong: bool,
    },
    /// Weak exchange, neutral laws and the Hoare/Jones rules.
    CheckCva,
    /// Functoriality, flasqueness and gluing of the tuple system.
    CheckTupleSystem,
    /// Lax, colax or strong preservation of the structure by a map of algebras.
    CheckMorphism {
        #[arg(long, value_enum, default_value_t = MorphismKind::StutterQuotient)]
        kind: MorphismKind,
        /// lax, colax or strong.
        #[arg(long, default_value = "colax")]
        mode: String,
        /// seq, par, ova or cva.
        #[arg(long, default_value = "cva")]
        level: String,
    },
    /// Evaluates `<a> seq <b>` / `<a> par <b>` chains, left to right.
    Eval {
        #[arg(long)]
        expr: String,
    },
    /// `{p} a {q}`; `skip` and `run` stand for the neutral elements.
    Hoare {
        #[arg(long)]
        p: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        q: String,
    },
    /// `{p, r} a {g, q}`.
    Jones {
        #[arg(long)]
        p: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        q: String,
    },
    /// Whether `a ⪯ b`.
    Refine {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Projects the combination of a knowledgebase onto each query.
    Infer {
        /// Comma-separated valuation files.
        #[arg(long, value_delimiter = ',', required = true)]
        kb: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Op::Par)]
        op: Op,
        /// Atoms of a query, separated by commas or spaces; repeatable.
        #[arg(long, required = true)]
        query: Vec<String>,
        /// Use the reference oracle instead of semi-join elimination.
        #[arg(long)]
        naive: bool,
        /// Write one valuation file per query into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

/// Command result: the output object and whether every check held.
#[derive(Debug)]
pub struct Outcome {
    pub output: Value,
    pub success: bool,
}

struct Ctx {
    topology: Arc<Topology>,
    values: ValueSet,
    cap: usize,
    kind: ModelKind,
    budget: Budget,
}

impl Ctx {
    fn from_opts(o: &Opts) -> Result<Self> {
        let kind = ModelKind::parse(&o.model)?;
        let path = o.space.as_ref().ok_or_else(|| LabError::Usage("--space is required".into()))?;
        let topology = Arc::new(load_space(path)?);
        let values = match o.values.parse::<usize>() {
            Ok(k) => ValueSet::numeric(k)?,
            Err(_) => ValueSet::new(o.values.split(',').map(str::trim))?,
        };
        let budget = Budget::default().with_seed(o.seed.unwrap_or(DEFAULT_SEED)).with_samples(o.samples);
        Ok(Ctx { topology, values, cap: o.cap.unwrap_or(DEFAULT_CAP), kind, budget })
    }

    fn model(&self) -> Result<Model> {
        Ok(build_model(&ModelConfig::new(self.kind, self.topology.clone(), self.values.clone(), self.cap))?)
    }

    fn envelope(&self, command: &str, mut body: Value, success: bool) -> Outcome {
        body["command"] = json!(command);
        body["model"] = json!(self.kind.name());
        body["seed"] = json!(self.budget.seed);
        body["passed"] = json!(success);
        Outcome { output: body, success }
    }
}

/// The operations the CLI needs from a model, whether a CVA or a bare OVA.
trait Algebra<S: Codec>: Combines<S> {
    fn ts(&self) -> &S;
    fn ovas(&self) -> Vec<(Op, &Ova<S>)>;
    fn as_cva(&self) -> Option<&Cva<S>>;
}

impl<S: Codec> Algebra<S> for Cva<S> {
    fn ts(&self) -> &S {
        Cva::ts(self)
    }

    fn ovas(&self) -> Vec<(Op, &Ova<S>)> {
        vec![(Op::Seq, self.seq()), (Op::Par, self.par())]
    }

    fn as_cva(&self) -> Option<&Cva<S>> {
        Some(self)
    }
}

impl<S: Codec> Algebra<S> for Ova<S> {
    fn ts(&self) -> &S {
        Ova::ts(self)
    }

    fn ovas(&self) -> Vec<(Op, &Ova<S>)> {
        vec![(Op::Par, self)]
    }

    fn as_cva(&self) -> Option<&Cva<S>> {
        None
    }
}

macro_rules! with_model {
    ($model:expr, $m:ident => $body:expr) => {
        match $model {
            Model::Action($m) => $body,
            Model::State($m) => $body,
            Model::Relative($m) => $body,
            Model::Db($m) => $body,
        }
    };
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let cx = Ctx::from_opts(&cli.opts)?;
    match &cli.command {
        Command::CheckMorphism { kind, mode, level } => {
            check_morphism_cmd(&cx, *kind, Mode::parse(mode)?, Level::parse(level)?)
        }
        cmd => {
            let model = cx.model()?;
            with_model!(&model, m => run(&cx, m, cmd))
        }
    }
}

fn run<S: Codec, A: Algebra<S>>(cx: &Ctx, m: &A, cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::CheckOva { op, strong } => {
            let mut reports = Vec::new();
            for (which, ova) in m.ovas() {
                if op.is_some_and(|o| o != which) {
                    continue;
                }
                let mut r = check_ova_axioms(ova, &cx.budget);
                r.extend(check_adjunction(ova, &cx.budget));
                if *strong {
                    r.extend(check_strong_neutrality(ova));
                }
                reports.push(r);
            }
            if reports.is_empty() {
                return Err(LabError::Usage(format!("the {} model has no sequential operator", cx.kind)));
            }
            Ok(reports_outcome(cx, "check-ova", m.ts(), &reports))
        }
        Command::CheckCva => {
            let cva = m.as_cva().ok_or_else(|| LabError::Usage(format!("the {} model is not a CVA", cx.kind)))?;
            let b = &cx.budget;
            let mut reports = vec![
                check_weak_exchange(cva, b),
                check_neutral_laws(cva),
                check_derived_neutral_props(cva),
                check_concurrency_rule(cva, b),
                check_hoare_skip(cva, b),
            ];
            if cva.neutrals_coincide() {
                reports.push(check_seq_le_par(cva, b)?);
            }
            Ok(reports_outcome(cx, "check-cva", m.ts(), &reports))
        }
        Command::CheckTupleSystem => {
            let r = check_tuple_system(m.ts(), &cx.budget);
            Ok(reports_outcome(cx, "check-tuple-system", m.ts(), &[r]))
        }
        Command::CheckMorphism { .. } => unreachable!("handled before the model is built"),
        Command::Eval { expr } => eval_cmd(cx, m, expr),
        Command::Hoare { p, a, q } => {
            let cva = require_cva(cx, m)?;
            let [p, a, q] = operands(cx, cva, [p, a, q])?;
            let holds = cva.hoare(&p, &a, &q);
            Ok(cx.envelope("hoare", json!({"holds": holds}), holds))
        }
        Command::Jones { p, r, a, g, q } => {
            let cva = require_cva(cx, m)?;
            let [p, r, a, g, q] = operands(cx, cva, [p, r, a, g, q])?;
            let holds = cva.jones(&p, &r, &a, &g, &q);
            Ok(cx.envelope("jones", json!({"holds": holds}), holds))
        }
        Command::Refine { a, b } => {
            let (va, vb) = (load(cx, m.ts(), a)?, load(cx, m.ts(), b)?);
            let cmp = m.ovas()[0].1.comparison();
            let holds = gc_leq_under(m.ts(), &va, &vb, cmp);
            Ok(cx.envelope("refine", json!({"refines": holds, "comparison": comparison_json(cmp)}), holds))
        }
        Command::Infer { kb, op, query, naive, out } => infer_cmd(cx, m, kb, *op, query, *naive, out.as_deref()),
    }
}

fn load<S: Codec>(cx: &Ctx, ts: &S, path: &Path) -> Result<Valuation<S::Tuple>> {
    load_valuation(ts, &cx.values, path)
}

fn require_cva<'a, S: Codec, A: Algebra<S>>(cx: &Ctx, m: &'a A) -> Result<&'a Cva<S>> {
    m.as_cva().ok_or_else(|| LabError::Usage(format!("the {} model is not a CVA", cx.kind)))
}

/// Loads operand files; the keywords `skip` and `run` become the neutral
/// elements on the union of the loaded domains.
fn operands<S: Codec, const N: usize>(cx: &Ctx, cva: &Cva<S>, names: [&String; N]) -> Result<[Valuation<S::Tuple>; N]> {
    let mut loaded: Vec<Option<Valuation<S::Tuple>>> = Vec::with_capacity(N);
    for name in names {
        loaded.push(match name.as_str() {
            "skip" | "run" => None,
            path => Some(load(cx, cva.ts(), Path::new(path))?),
        });
    }
    let dom = loaded.iter().flatten().fold(OpenSet::EMPTY, |d, v| d.union(v.domain()));
    let mut out = Vec::with_capacity(N);
    for (name, v) in names.iter().zip(loaded) {
        out.push(match (v, name.as_str()) {
            (Some(v), _) => v,
            (None, "skip") => cva.skip(dom)?,
            (None, _) => cva.run(dom)?,
        });
    }
    Ok(out.try_into().unwrap_or_else(|_| unreachable!("one operand per name")))
}

fn reports_outcome<S: Codec>(cx: &Ctx, command: &str, ts: &S, reports: &[CheckReport<S::Tuple>]) -> Outcome {
    let encode = |v: &Valuation<S::Tuple>| encode_valuation(ts, &cx.values, v);
    let success = reports.iter().all(CheckReport::passed);
    let body = json!({"reports": reports.iter().map(|r| report_json(r, &encode)).collect::<Vec<_>>()});
    cx.envelope(command, body, success)
}

fn eval_cmd<S: Codec, A: Algebra<S>>(cx: &Ctx, m: &A, expr: &str) -> Result<Outcome> {
    let tokens: Vec<&str> = expr.split_whitespace().collect();
    if tokens.len() % 2 == 0 {
        return Err(LabError::Usage(format!("malformed expression `{expr}`: expected `<a> seq|par <b> ...`")));
    }
    let pick = |word: &str| -> Result<&Ova<S>> {
        let op = match word {
            "seq" => Op::Seq,
            "par" => Op::Par,
            _ => return Err(LabError::Usage(format!("unknown operator `{word}` (expected seq or par)"))),
        };
        Ok(m.select(op.into())?)
    };
    let mut acc = load(cx, m.ts(), Path::new(tokens[0]))?;
    for pair in tokens[1..].chunks(2) {
        let ova = pick(pair[0])?;
        acc = ova.combine(&acc, &load(cx, m.ts(), Path::new(pair[1]))?);
    }
    let v = encode_valuation(m.ts(), &cx.values, &acc);
    Ok(Outcome { output: v, success: true })
}

fn parse_query(topology: &Topology, q: &str) -> Result<OpenSet> {
    let atoms = q.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
    Ok(topology.open_set(atoms)?)
}

fn infer_cmd<S: Codec, A: Algebra<S>>(
    cx: &Ctx,
    m: &A,
    kb: &[PathBuf],
    op: Op,
    queries: &[String],
    naive: bool,
    out: Option<&Path>,
) -> Result<Outcome> {
    let items = kb.iter().map(|p| load(cx, m.ts(), p)).collect::<Result<Vec<_>>>()?;
    let queries = queries.iter().map(|q| parse_query(&cx.topology, q)).collect::<Result<Vec<_>>>()?;
    let problem = InferenceProblem::new(Knowledgebase::new(items, op.into()), queries)?;
    let answers = if naive {
        solve_inference(m, &problem)?
    } else {
        solve_inference_semijoin(m, &problem).map_err(|e| match e {
            cva_core::Error::Unsupported(msg) => LabError::Usage(format!("{msg}; use --naive")),
            other => other.into(),
        })?
    };
    let mut results = Vec::new();
    for (q, v) in &answers {
        let encoded = encode_valuation(m.ts(), &cx.values, v);
        if let Some(dir) = out {
            let name = cx.topology.names(*q).join("-");
            let path = dir.join(format!("query-{}.json", if name.is_empty() { "empty" } else { &name }));
            std::fs::write(&path, to_canonical_string(&encoded))
                .map_err(|source| LabError::Io { path: path.display().to_string(), source })?;
        }
        results.push(json!({"query": encode_domain(&cx.topology, *q), "valuation": encoded}));
    }
    let method = if naive { "naive" } else { "semijoin" };
    Ok(cx.envelope("infer", json!({"method": method, "results": results}), true))
}

fn check_morphism_cmd(cx: &Ctx, kind: MorphismKind, mode: Mode, level: Level) -> Result<Outcome> {
    let b = &cx.budget;
    match kind {
        MorphismKind::StutterQuotient => {
            let sigma = state_model(cx.topology.clone(), &cx.values, cx.cap)?;
            let rel = relative_model(cx.topology.clone(), &cx.values, cx.cap)?;
            let map = stutter_quotient;
            let cand = MorphismCandidate { name: "stutter-quotient".into(), source: &sigma, target: &rel, map: &map };
            let mut r = check_morphism(&cand, mode, level, b)?;
            r.extend(check_quotient_equalities(&sigma, &rel, b));
            Ok(reports_outcome(cx, "check-morphism", rel.ts(), &[r]))
        }
        MorphismKind::Identity => {
            let model = cx.model()?;
            with_model!(&model, m => identity_cmd(cx, m, mode, level))
        }
    }
}

fn identity_cmd<S: Codec, A: Algebra<S>>(cx: &Ctx, m: &A, mode: Mode, level: Level) -> Result<Outcome> {
    let cva = require_cva(cx, m)?;
    let map = identity_map::<S::Tuple>;
    let cand = MorphismCandidate { name: "identity".into(), source: cva, target: cva, map: &map };
    let r = check_morphism(&cand, mode, level, &cx.budget)?;
    Ok(reports_outcome(cx, "check-morphism", cva.ts(), &[r]))
}
