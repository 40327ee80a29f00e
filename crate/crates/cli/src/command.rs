//! Command dispatch: load or complete a system, run one computation, and
//! describe the outcome as a [`ReportDocument`].

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use gsb_core::{
    certify, complete, dim_filtration, free_submonoid_check, gkdim_report, infer_schemas, manturov,
    verify_gsb, word_problem, Alphabet, CompletionCaps, CompletionReport, CompositionKind,
    FreeCheckResult, GrowthClass, GrowthReport, ManturovSpec, Presentation, RewriteSystem, Validity,
    VerificationReport,
};
use serde_json::{json, Value};

use crate::cache::{parse_cache, write_cache, CachedSystem};
use crate::error::CliError;
use crate::presfile::{parse_presentation_file, serialize_presentation};
use crate::report::{digest, ReportDocument};
use crate::syntax::{parse_word, Letters, Span};

/// Nontrivial compositions listed individually in a verify report.
const LISTED_COMPOSITIONS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_deg: usize,
    pub max_rules: usize,
    pub max_rounds: usize,
    pub schema_bound: u32,
    pub step_budget: usize,
    pub max_states: usize,
}

impl Default for Caps {
    fn default() -> Self {
        let core = CompletionCaps::default();
        Caps {
            max_deg: core.max_deg,
            max_rules: core.max_rules,
            max_rounds: core.max_rounds,
            schema_bound: 10,
            step_budget: core.step_budget,
            max_states: gsb_core::DEFAULT_STATE_CAP,
        }
    }
}

impl Caps {
    fn validate(&self) -> Result<(), CliError> {
        let all = [
            self.max_deg,
            self.max_rules,
            self.max_rounds,
            self.schema_bound as usize,
            self.step_budget,
            self.max_states,
        ];
        if all.contains(&0) {
            return Err(CliError::Usage("caps must be positive".into()));
        }
        Ok(())
    }

    fn completion(&self) -> CompletionCaps {
        CompletionCaps {
            max_deg: self.max_deg,
            max_rules: self.max_rules,
            max_rounds: self.max_rounds,
            step_budget: self.step_budget,
        }
    }

    /// The caps that influence a cached system.
    fn key(&self) -> String {
        format!(
            "max_deg={} max_rules={} max_rounds={} schema_bound={} step_budget={}",
            self.max_deg, self.max_rules, self.max_rounds, self.schema_bound, self.step_budget
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Complete,
    Verify,
    Nf { word: String },
    Wp { left: String, right: String },
    Growth { census: usize },
    Gkdim,
    Filtration { n: usize },
    FreeCheck { generators: String },
    Manturov { n: usize, k: usize },
    Ore { sigma: String, delta: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Complete => "complete",
            Command::Verify => "verify",
            Command::Nf { .. } => "nf",
            Command::Wp { .. } => "wp",
            Command::Growth { .. } => "growth",
            Command::Gkdim => "gkdim",
            Command::Filtration { .. } => "filtration",
            Command::FreeCheck { .. } => "free-check",
            Command::Manturov { .. } => "manturov",
            Command::Ore { .. } => "ore",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandConfig {
    pub command: Command,
    /// Presentation (`.pres`) or cached system (`.gsb`); unused by
    /// `manturov` and `ore`.
    pub input: Option<PathBuf>,
    pub caps: Caps,
    /// Report destination; standard output when absent.
    pub output: Option<PathBuf>,
    /// Where `manturov` and `ore` write the generated presentation.
    pub emit: Option<PathBuf>,
    pub use_cache: bool,
    pub verbosity: u8,
    /// Echoed into the report.
    pub echo: Vec<String>,
}

impl CommandConfig {
    pub fn new(command: Command, input: Option<PathBuf>) -> Self {
        let mut echo = vec![command.name().to_string()];
        echo.extend(input.iter().map(|p| p.display().to_string()));
        CommandConfig {
            command,
            input,
            caps: Caps::default(),
            output: None,
            emit: None,
            use_cache: true,
            verbosity: 0,
            echo,
        }
    }

    fn log(&self, msg: impl AsRef<str>) {
        if self.verbosity > 0 {
            eprintln!("gsb: {}", msg.as_ref());
        }
    }
}

/// A rewrite system ready for queries, with how it was obtained.
struct Loaded {
    system: RewriteSystem,
    aliases: Option<Vec<String>>,
    pipeline: Value,
}

impl Loaded {
    fn display(&self) -> Alphabet {
        match &self.aliases {
            Some(a) => Alphabet::new(a).expect("aliases validated"),
            None => self.system.alphabet().clone(),
        }
    }

    fn letters<'a>(&'a self, display: &'a Alphabet) -> Letters<'a> {
        Letters::new(self.system.alphabet(), Some(display))
    }
}

struct Completed {
    system: RewriteSystem,
    report: CompletionReport,
    verification: VerificationReport,
    folded: usize,
}

/// Completion, schema folding and certification. A fold is kept only when
/// the folded system certifies.
fn complete_and_certify(pres: &Presentation, caps: &Caps) -> Result<Completed, CliError> {
    let (sys, report) = complete(pres, caps.completion())?;
    let (schemas, rest) = infer_schemas(sys.rules().to_vec());
    if !schemas.is_empty() {
        let folded = schemas.len();
        let candidate = RewriteSystem::new(sys.alphabet().clone(), sys.order().clone(), rest, schemas)
            .map(|s| s.with_step_budget(caps.step_budget));
        if let Ok(candidate) = candidate {
            if let Ok((certified, verification)) = certify(candidate, caps.schema_bound) {
                if verification.certified() {
                    return Ok(Completed {
                        system: certified,
                        report,
                        verification,
                        folded,
                    });
                }
            }
        }
    }
    let (system, verification) = certify(sys, caps.schema_bound)?;
    Ok(Completed {
        system,
        report,
        verification,
        folded: 0,
    })
}

fn status_name(report: &CompletionReport) -> &'static str {
    match report.status {
        gsb_core::CompletionStatus::Stabilized => "Stabilized",
        gsb_core::CompletionStatus::CapReached => "CapReached",
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

fn alias_table(names: &Alphabet, aliases: Option<&[String]>) -> Option<BTreeMap<String, String>> {
    aliases.map(|a| a.iter().cloned().zip(names.names().iter().cloned()).collect())
}

fn rules_json(sys: &RewriteSystem, display: &Alphabet) -> Value {
    json!({
        "rules": sys.rules().iter().map(|r| r.render(display, sys.order())).collect::<Vec<_>>(),
        "schemas": sys.schemas().iter().map(|s| s.render(display)).collect::<Vec<_>>(),
    })
}

fn load(cfg: &CommandConfig, doc: &mut ReportDocument) -> Result<Loaded, CliError> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("{} needs an input file", cfg.command.name())))?;
    let bytes = read(path)?;
    let digest_text = digest(&bytes);
    doc.input_digest = Some(digest_text.clone());
    let text = String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;

    if path.extension().is_some_and(|e| e == "gsb") {
        let cached = parse_cache(&text)?;
        doc.aliases = alias_table(cached.system.alphabet(), cached.aliases.as_deref());
        return Ok(Loaded {
            system: cached.system.with_step_budget(cfg.caps.step_budget),
            aliases: cached.aliases,
            pipeline: json!({ "source": "system file" }),
        });
    }

    let pres = parse_presentation_file(&text)?;
    doc.aliases = alias_table(pres.alphabet(), pres.aliases());
    let cache_path = path.with_extension("gsb");
    let caps_key = cfg.caps.key();
    if cfg.use_cache {
        if let Ok(cached_text) = std::fs::read_to_string(&cache_path) {
            match parse_cache(&cached_text) {
                Ok(c) if c.input_digest.as_deref() == Some(&digest_text) && c.caps.as_deref() == Some(&caps_key) => {
                    cfg.log(format!("using cached system {}", cache_path.display()));
                    return Ok(Loaded {
                        system: c.system.with_step_budget(cfg.caps.step_budget),
                        aliases: c.aliases,
                        pipeline: json!({ "source": "cache", "completion": c.completion }),
                    });
                }
                _ => cfg.log("cache is stale; recompleting"),
            }
        }
    }

    cfg.log("running completion");
    let done = complete_and_certify(&pres, &cfg.caps)?;
    let status = status_name(&done.report);
    if cfg.use_cache {
        let cached = CachedSystem {
            system: done.system.clone(),
            aliases: pres.aliases().map(<[String]>::to_vec),
            input_digest: Some(digest_text),
            caps: Some(caps_key),
            completion: Some(status.to_string()),
        };
        if let Err(e) = std::fs::write(&cache_path, write_cache(&cached)) {
            doc.warnings.push(format!("could not write {}: {e}", cache_path.display()));
        }
    }
    Ok(Loaded {
        system: done.system,
        aliases: pres.aliases().map(<[String]>::to_vec),
        pipeline: json!({
            "source": "completion",
            "completion": status,
            "cap": done.report.cap,
            "schemas_folded": done.folded,
        }),
    })
}

fn certification_warning(sys: &RewriteSystem, doc: &mut ReportDocument) {
    if sys.certified_bound().is_none() {
        doc.warnings.push("system is not certified; answers hold for the listed rules only".into());
    }
}

fn validity_json(v: &Validity) -> Value {
    match v {
        Validity::ExactForA => json!("ExactForA"),
        Validity::LowerBoundForA => json!("LowerBoundForA"),
        Validity::Sandwich { lower, upper } => json!({ "Sandwich": { "lower": lower, "upper": upper } }),
    }
}

fn classification_json(c: &GrowthClass) -> Value {
    match c {
        GrowthClass::FiniteDimensional(n) => json!({ "kind": "FiniteDimensional", "dimension": n.to_string() }),
        GrowthClass::Polynomial(d) => json!({ "kind": "Polynomial", "degree": d }),
        GrowthClass::Exponential => json!({ "kind": "Exponential" }),
    }
}

fn gkdim_json(g: &GrowthReport) -> Value {
    match g.gkdim() {
        Some(d) => json!(d),
        None => json!("infinity"),
    }
}

fn growth_json(g: &GrowthReport, with_counts: bool) -> Value {
    let mut v = json!({
        "classification": classification_json(&g.classification),
        "gkdim": gkdim_json(g),
        "validity": validity_json(&g.validity),
        "certified_bound": g.certified_bound,
        "automaton_states": g.automaton_states,
    });
    if with_counts {
        let obj = v.as_object_mut().expect("object");
        obj.insert(
            "counts".into(),
            json!(g.census.per_length.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        );
        obj.insert(
            "cumulative".into(),
            json!(g.census.cumulative.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        );
    }
    v
}

fn verification_json(v: &VerificationReport, display: &Alphabet, sys: &RewriteSystem) -> Value {
    let listed: Vec<Value> = v
        .nontrivial_records()
        .take(LISTED_COMPOSITIONS)
        .map(|r| {
            json!({
                "kind": match r.kind { CompositionKind::Intersection => "intersection", CompositionKind::Inclusion => "inclusion" },
                "ambiguity": display.render(&r.ambiguity),
                "remainder": r.remainder.as_ref().map(|p| p.render(display, sys.order())),
            })
        })
        .collect();
    json!({
        "schema_bound": v.schema_bound,
        "compositions": v.records.len(),
        "nontrivial_compositions": v.nontrivial.len(),
        "inconclusive_compositions": v.inconclusive.len(),
        "certified": v.certified(),
        "nontrivial": listed,
    })
}

fn run_complete(cfg: &CommandConfig, doc: &mut ReportDocument) -> Result<Value, CliError> {
    let path = cfg.input.as_ref().ok_or_else(|| CliError::Usage("complete needs an input file".into()))?;
    let bytes = read(path)?;
    let digest_text = digest(&bytes);
    doc.input_digest = Some(digest_text.clone());
    let text = String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;
    let pres = parse_presentation_file(&text)?;
    doc.aliases = alias_table(pres.alphabet(), pres.aliases());
    let display = pres.display_alphabet();
    cfg.log("running completion");
    let done = complete_and_certify(&pres, &cfg.caps)?;
    let cache_path = path.with_extension("gsb");
    let status = status_name(&done.report);
    let cached = CachedSystem {
        system: done.system.clone(),
        aliases: pres.aliases().map(<[String]>::to_vec),
        input_digest: Some(digest_text),
        caps: Some(cfg.caps.key()),
        completion: Some(status.to_string()),
    };
    let mut cache_written = Value::Null;
    if cfg.use_cache {
        match std::fs::write(&cache_path, write_cache(&cached)) {
            Ok(()) => cache_written = json!(cache_path.file_name().map(|n| n.to_string_lossy().into_owned())),
            Err(e) => doc.warnings.push(format!("could not write {}: {e}", cache_path.display())),
        }
    }
    certification_warning(&done.system, doc);
    let mut v = json!({
        "status": status,
        "cap": done.report.cap,
        "pending": done.report.pending,
        "rounds": done.report.history.len(),
        "rule_count_per_round": done.report.history,
        "added_rules": done.report.added.len(),
        "max_deg": done.report.max_deg,
        "schemas_folded": done.folded,
        "certified_bound": done.system.certified_bound(),
        "nontrivial_compositions": done.verification.nontrivial.len(),
        "cache": cache_written,
    });
    let obj = v.as_object_mut().expect("object");
    for (k, val) in rules_json(&done.system, &display).as_object().expect("object") {
        obj.insert(k.clone(), val.clone());
    }
    Ok(v)
}

fn run_manturov(n: usize, k: usize, cfg: &CommandConfig, doc: &mut ReportDocument) -> Result<Value, CliError> {
    let pres = manturov(ManturovSpec { n, k })?;
    let text = serialize_presentation(&pres);
    doc.input_digest = Some(digest(format!("manturov {n} {k}").as_bytes()));
    doc.aliases = alias_table(pres.alphabet(), pres.aliases());
    let (mut involutions, mut short, mut long) = (0, 0, 0);
    for (l, r) in pres.relations() {
        let len = l.degree().unwrap_or(0);
        if r.degree() == Some(0) {
            involutions += 1;
        } else if len == k + 1 {
            long += 1;
        } else {
            short += 1;
        }
    }
    if let Some(path) = &cfg.emit {
        std::fs::write(path, &text).map_err(|e| CliError::io(path, e))?;
    }
    Ok(json!({
        "generators": pres.alphabet().names(),
        "relations": {
            "involutions": involutions,
            "far_commutativity": short,
            "tetrahedron": long,
            "total": pres.relations().len(),
        },
        "presentation": text,
    }))
}

fn run_ore(sigma: &str, delta: &str, cfg: &CommandConfig, doc: &mut ReportDocument) -> Result<Value, CliError> {
    let stanza = format!("{}\nore sigma={sigma} delta={delta}\n", crate::presfile::HEADER);
    doc.input_digest = Some(digest(stanza.as_bytes()));
    let pres = parse_presentation_file(&stanza)?;
    let text = serialize_presentation(&pres);
    if let Some(path) = &cfg.emit {
        std::fs::write(path, &text).map_err(|e| CliError::io(path, e))?;
    }
    let done = complete_and_certify(&pres, &cfg.caps)?;
    let growth = gkdim_report(&done.system, 12, cfg.caps.max_states)?;
    doc.warnings.extend(growth.warnings.iter().cloned());
    let mut v = growth_json(&growth, false);
    let obj = v.as_object_mut().expect("object");
    obj.insert("status".into(), json!(status_name(&done.report)));
    obj.insert("presentation".into(), json!(text));
    for (k, val) in rules_json(&done.system, pres.alphabet()).as_object().expect("object") {
        obj.insert(k.clone(), val.clone());
    }
    Ok(v)
}

fn split_generators(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn dispatch(cfg: &CommandConfig, doc: &mut ReportDocument) -> Result<Value, CliError> {
    cfg.caps.validate()?;
    match &cfg.command {
        Command::Complete => return run_complete(cfg, doc),
        Command::Manturov { n, k } => return run_manturov(*n, *k, cfg, doc),
        Command::Ore { sigma, delta } => return run_ore(sigma, delta, cfg, doc),
        _ => {}
    }
    let loaded = load(cfg, doc)?;
    let display = loaded.display();
    let sys = &loaded.system;
    let arg = |text: &str| parse_word(text, Span::at(1, 1), loaded.letters(&display));
    let mut v = match &cfg.command {
        Command::Verify => {
            let report = verify_gsb(sys, cfg.caps.schema_bound)?;
            verification_json(&report, &display, sys)
        }
        Command::Nf { word } => {
            certification_warning(sys, doc);
            let w = arg(word)?;
            let nf = sys.normal_form_of_word(&w)?;
            json!({
                "word": display.render(&w),
                "normal_form": nf.render(&display, sys.order()),
                "canonical": sys.certified_bound().is_some(),
                "label": if sys.certified_bound().is_some() { "canonical" } else { "non-canonical" },
                "certified_bound": sys.certified_bound(),
            })
        }
        Command::Wp { left, right } => {
            certification_warning(sys, doc);
            let (u, w) = (arg(left)?, arg(right)?);
            let verdict = word_problem(sys, &u, &w)?;
            json!({
                "verdict": if verdict.equal { "equal" } else { "distinct" },
                "equal": verdict.equal,
                "left": display.render(&u),
                "right": display.render(&w),
                "normal_form_left": display.render(&verdict.normal_form_left),
                "normal_form_right": display.render(&verdict.normal_form_right),
                "certified_bound": verdict.certified_bound,
            })
        }
        Command::Growth { census } => {
            let g = gkdim_report(sys, *census, cfg.caps.max_states)?;
            doc.warnings.extend(g.warnings.iter().cloned());
            growth_json(&g, true)
        }
        Command::Gkdim => {
            let g = gkdim_report(sys, 0, cfg.caps.max_states)?;
            doc.warnings.extend(g.warnings.iter().cloned());
            growth_json(&g, false)
        }
        Command::Filtration { n } => {
            certification_warning(sys, doc);
            let t = dim_filtration(sys, *n, cfg.caps.max_states)?;
            let strs = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>();
            json!({
                "n": n,
                "counts": { "d_a": strs(&t.d_a), "d_tilde": strs(&t.d_tilde) },
                "equal": t.d_a == t.d_tilde,
            })
        }
        Command::FreeCheck { generators } => {
            certification_warning(sys, doc);
            let gens = split_generators(generators)
                .into_iter()
                .map(arg)
                .collect::<Result<Vec<_>, _>>()?;
            let aut = gsb_core::build_irr_automaton(
                &gsb_core::ForbiddenSet::from_system(sys),
                sys.alphabet().len(),
                cfg.caps.max_states,
            )?;
            let render_seq = |seq: &[usize]| seq.iter().map(|&i| display.render(&gens[i])).collect::<Vec<_>>();
            let exploratory = sys.certified_bound().is_none();
            let mut verdict = match free_submonoid_check(&aut, &gens)? {
                FreeCheckResult::Free => json!({ "verdict": "free" }),
                FreeCheckResult::NotCode { witness, left, right } => json!({
                    "verdict": "not_code",
                    "witness": display.render(&witness),
                    "factorizations": [render_seq(&left), render_seq(&right)],
                }),
                FreeCheckResult::LeavesIrr { witness, factors } => json!({
                    "verdict": "leaves_irr",
                    "witness": display.render(&witness),
                    "factors": render_seq(&factors),
                }),
            };
            verdict["exploratory"] = json!(exploratory);
            verdict
        }
        Command::Complete | Command::Manturov { .. } | Command::Ore { .. } => unreachable!("handled above"),
    };
    if let Some(obj) = v.as_object_mut() {
        obj.insert("pipeline".into(), loaded.pipeline.clone());
    }
    Ok(v)
}

/// Runs one command; failures are recorded in the report rather than
/// returned.
pub fn run_command(cfg: &CommandConfig) -> ReportDocument {
    let start = Instant::now();
    let mut doc = ReportDocument::new(cfg.echo.clone());
    match dispatch(cfg, &mut doc) {
        Ok(v) => doc.result = v,
        Err(e) => doc.fail(&e),
    }
    doc.timing_ms = start.elapsed().as_millis() as u64;
    doc
}

/// Runs a command, writes the report and returns the process exit code.
pub fn execute(cfg: &CommandConfig) -> i32 {
    let doc = run_command(cfg);
    let json = doc.to_json();
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("gsb: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{json}"),
    }
    if let Some(err) = &doc.error {
        eprintln!("gsb: {} ({})", err.message, err.code);
    }
    doc.exit_code
}
