use std::fmt::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use dgl_core::argue::{seeded_models, EquivDungModel, ExtensionSpec, NodeSet, RandomParams};
use dgl_core::chargen::{
    constant_names, cross_validate, generate, std_environment, std_interpretation, Family, FamilyReport,
    FormulaRequest, ValidateOptions, TARGET,
};
use dgl_core::check::{check_with_witness, matches, EnvDoc, Interpretation, Model};
use dgl_core::graph::{parse_object_graph, parse_skeleton_graph, AnnotatedGraph};
use dgl_core::ground::{eval_prop, ground_capped, induced_valuation, to_dimacs};
use dgl_core::syntax::{parse_formula, Formula};

use crate::error::{CliError, PARSE, SEMANTIC, VALIDATION_FAILED};
use crate::{Cli, Command, EnvSource, Format, FormulaSource};

/// What to print and the exit code to finish with.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::new(PARSE, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<AnnotatedGraph, CliError> {
    parse_object_graph(&read(path)?).map_err(|e| CliError::in_file(path, e, PARSE))
}

fn load_formula(src: &FormulaSource) -> Result<Formula, CliError> {
    let text = match (&src.formula, &src.expr) {
        (Some(p), _) => read(p)?,
        (None, Some(e)) => e.clone(),
        (None, None) => unreachable!("clap requires one source"),
    };
    Ok(parse_formula(&text)?)
}

fn load_env(src: &EnvSource, f: &Formula) -> Result<Interpretation, CliError> {
    let mut i = if src.std {
        std_interpretation(f)
    } else {
        Interpretation::new()
    };
    if let Some(p) = &src.env {
        let doc = EnvDoc::from_json(&read(p)?).map_err(|e| CliError::in_file(p, e, PARSE))?;
        i.extend(&doc.to_interpretation()?);
    }
    for (c, v) in &src.bind {
        i.set_constant(c, v);
    }
    Ok(i)
}

fn json_line(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn set_text(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Check { model, env, formula } => check(fmt, model, env, formula),
        Command::Extensions {
            model,
            spec,
            all,
            bound,
            lfp,
        } => extensions(fmt, model, *spec, *all, *bound as usize, *lfp),
        Command::Match { model, skeleton } => match_cmd(fmt, model, skeleton),
        Command::Validate {
            model,
            random,
            nodes,
            seed,
            families,
            mutant,
            propositional,
            bound,
        } => {
            let opts = ValidateOptions {
                bound: *bound as usize,
                mutant: *mutant,
                propositional: *propositional,
            };
            validate(fmt, model, *random, *nodes as usize, *seed, families, &opts)
        }
        Command::Generate {
            family,
            n,
            k,
            constants,
            split,
            mutant,
        } => generate_cmd(fmt, *family, *n, *k, constants, split, *mutant),
        Command::Env { max_arity, bind } => {
            let mut i = std_environment(*max_arity);
            for (c, v) in bind {
                i.set_constant(c, v);
            }
            Ok(Output::ok(EnvDoc::from_interpretation(&i).to_json() + "\n"))
        }
        Command::Ground {
            model,
            env,
            formula,
            output,
            map,
            prop,
            cap,
        } => ground_cmd(fmt, model, env, formula, output.as_deref(), map.as_deref(), *prop, *cap),
    }
}

fn check(fmt: Format, model: &Path, env: &EnvSource, formula: &FormulaSource) -> Result<Output, CliError> {
    let m = Model::new(load_graph(model)?);
    let f = load_formula(formula)?;
    let i = load_env(env, &f)?;
    let (verdict, witness) = check_with_witness(&m, &i, &f)?;
    Ok(Output::ok(match fmt {
        Format::Json => {
            let witness = witness.map(|w| {
                w.into_iter()
                    .map(|(var, value)| json!({"var": var, "value": value}))
                    .collect::<Vec<_>>()
            });
            json_line(&json!({"verdict": verdict, "witness": witness}))
        }
        Format::Text => {
            let mut s = format!("{verdict}\n");
            if let Some(w) = witness.filter(|w| !w.is_empty()) {
                let parts: Vec<String> = w.iter().map(|(x, v)| format!("{x}={v}")).collect();
                writeln!(s, "witness: {}", parts.join(", ")).unwrap();
            }
            s
        }
    }))
}

fn extensions(
    fmt: Format,
    model: &Path,
    spec: Option<ExtensionSpec>,
    all: bool,
    bound: usize,
    lfp: bool,
) -> Result<Output, CliError> {
    let m = EquivDungModel::new(load_graph(model)?)?;
    let names = |sets: Vec<NodeSet>| sets.into_iter().map(|s| m.set_names(s)).collect::<Vec<_>>();
    let listing = |label: &str, sets: &[Vec<String>], out: &mut String| {
        let body = if sets.is_empty() {
            "(none)".to_string()
        } else {
            sets.iter().map(|s| set_text(s)).collect::<Vec<_>>().join(" ")
        };
        writeln!(out, "{label}{body}").unwrap();
    };
    if all {
        let mut families = Vec::new();
        for s in ExtensionSpec::all() {
            families.push((s.to_string(), names(m.enumerate(s, bound)?)));
        }
        return Ok(Output::ok(match fmt {
            Format::Json => {
                let obj: serde_json::Map<String, serde_json::Value> =
                    families.into_iter().map(|(k, v)| (k, json!(v))).collect();
                json_line(&obj)
            }
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &families {
                    listing(&format!("{k}: "), v, &mut out);
                }
                out
            }
        }));
    }
    let sets = if lfp {
        names(m.grounded_via_lfp(bound)?)
    } else {
        names(m.enumerate(spec.expect("clap requires a spec"), bound)?)
    };
    Ok(Output::ok(match fmt {
        Format::Json => json_line(&sets),
        Format::Text => {
            let mut out = String::new();
            for s in &sets {
                writeln!(out, "{}", set_text(s)).unwrap();
            }
            if sets.is_empty() {
                listing("", &sets, &mut out);
            }
            out
        }
    }))
}

fn match_cmd(fmt: Format, model: &Path, skeleton: &Path) -> Result<Output, CliError> {
    let m = Model::new(load_graph(model)?);
    let skel = parse_skeleton_graph(&read(skeleton)?).map_err(|e| CliError::in_file(skeleton, e, PARSE))?;
    let tuples = matches(&m, &skel).map_err(|e| CliError::new(SEMANTIC, e))?;
    Ok(Output::ok(match fmt {
        Format::Json => json_line(&tuples),
        Format::Text => tuples.iter().map(|t| format!("({})\n", t.join(", "))).collect(),
    }))
}

fn parse_families(spec: &str) -> Result<Vec<Family>, CliError> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.to_ascii_lowercase().as_str() {
            "all" => out.extend(Family::all()),
            "lemmas" => out.extend(Family::LEMMAS),
            "extensions" => out.extend(Family::extensions()),
            _ => out.push(part.parse().map_err(|e| CliError::new(PARSE, e))?),
        }
    }
    if out.is_empty() {
        return Err(CliError::new(PARSE, "no families given"));
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|f| seen.insert(*f));
    Ok(out)
}

#[derive(Serialize)]
struct ModelReport {
    name: String,
    nodes: usize,
    families: Vec<FamilyReport>,
}

/// Counterexamples shown per failing family in text output.
const SHOWN: usize = 5;

fn validate(
    fmt: Format,
    files: &[std::path::PathBuf],
    random: Option<usize>,
    nodes: usize,
    seed: u64,
    families: &str,
    opts: &ValidateOptions,
) -> Result<Output, CliError> {
    let families = parse_families(families)?;
    let models: Vec<(String, EquivDungModel)> = match random {
        Some(count) => seeded_models(seed, count, RandomParams::up_to(nodes))
            .into_iter()
            .enumerate()
            .map(|(i, m)| (format!("random-{i}"), m))
            .collect(),
        None => files
            .iter()
            .map(|p| Ok((p.display().to_string(), EquivDungModel::new(load_graph(p)?)?)))
            .collect::<Result<_, CliError>>()?,
    };
    let mut reports = Vec::new();
    for (name, m) in &models {
        let fams = families
            .iter()
            .map(|&f| cross_validate(m, f, opts))
            .collect::<Result<Vec<_>, _>>()?;
        reports.push(ModelReport {
            name: name.clone(),
            nodes: m.len(),
            families: fams,
        });
    }
    let passed = reports.iter().all(|r| r.families.iter().all(FamilyReport::passed));
    let text = match fmt {
        Format::Json => json_line(&json!({
            "seed": random.map(|_| seed),
            "mutant": opts.mutant,
            "propositional": opts.propositional,
            "models": reports,
            "passed": passed,
        })),
        Format::Text => {
            let mut s = String::new();
            if random.is_some() {
                writeln!(s, "seed {seed}").unwrap();
            }
            for r in &reports {
                writeln!(s, "{} ({} nodes)", r.name, r.nodes).unwrap();
                for f in &r.families {
                    let verdict = if f.passed() { "PASS" } else { "FAIL" };
                    write!(s, "  {verdict} {} ({} cases", f.family, f.cases).unwrap();
                    if !f.passed() {
                        write!(s, ", {} mismatches", f.mismatches.len()).unwrap();
                    }
                    s.push_str(")\n");
                    for c in f.mismatches.iter().take(SHOWN) {
                        let blocks: Vec<String> = c.inputs.iter().map(|b| set_text(b)).collect();
                        writeln!(
                            s,
                            "    {}: expected {}, formula says {}{}",
                            blocks.join(" "),
                            c.expected,
                            c.got,
                            c.propositional.map(|p| format!(", grounding says {p}")).unwrap_or_default()
                        )
                        .unwrap();
                    }
                }
            }
            writeln!(s, "{}", if passed { "PASS" } else { "FAIL" }).unwrap();
            s
        }
    };
    Ok(Output {
        text,
        code: if passed { 0 } else { VALIDATION_FAILED },
    })
}

fn generate_cmd(
    fmt: Format,
    family: Family,
    n: usize,
    k: Option<usize>,
    constants: &[String],
    split: &[usize],
    mutant: bool,
) -> Result<Output, CliError> {
    let constants = match k {
        Some(k) => {
            let mut cs = Vec::new();
            if matches!(family, Family::Df | Family::Wdf) {
                cs.push(TARGET.to_string());
            }
            cs.extend(constant_names(k));
            cs
        }
        None => constants.to_vec(),
    };
    let req = FormulaRequest {
        family,
        n,
        constants,
        split: split.to_vec(),
        mutant,
    };
    let f = generate(&req)?;
    Ok(Output::ok(match fmt {
        Format::Json => json_line(&json!({
            "family": family.to_string(),
            "n": n,
            "constants": req.constants,
            "split": req.split,
            "size": f.size(),
            "formula": f.to_string(),
        })),
        Format::Text => format!("{f}\n"),
    }))
}

#[allow(clippy::too_many_arguments)]
fn ground_cmd(
    fmt: Format,
    model: &Path,
    env: &EnvSource,
    formula: &FormulaSource,
    output: Option<&Path>,
    map: Option<&Path>,
    prop: bool,
    cap: usize,
) -> Result<Output, CliError> {
    let m = Model::new(load_graph(model)?);
    let f = load_formula(formula)?;
    let i = load_env(env, &f)?;
    let p = ground_capped(&f, &m, &i, cap)?;
    let d = to_dimacs(&p);
    if let Some(path) = output {
        write(path, &d.text())?;
    }
    if let Some(path) = map {
        write(path, &(d.sidecar_json() + "\n"))?;
    }
    let atoms = p.vars();
    let v = induced_valuation(&m, &i, &atoms).map_err(|e| CliError::new(SEMANTIC, e))?;
    let verdict = eval_prop(&p, &v).expect("the induced valuation covers every atom");
    Ok(Output::ok(match fmt {
        Format::Json => json_line(&json!({
            "size": p.size(),
            "atoms": atoms,
            "num_vars": d.map.num_vars,
            "num_clauses": d.map.num_clauses,
            "verdict": verdict,
        })),
        Format::Text if prop => format!("{p}\n"),
        Format::Text if output.is_none() => d.text(),
        Format::Text => format!(
            "{} atoms, {} variables, {} clauses; true in the model: {verdict}\n",
            atoms.len(),
            d.map.num_vars,
            d.map.num_clauses
        ),
    }))
}
