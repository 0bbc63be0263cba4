use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use serde::Serialize;
use wpds::analyses::{
    check_correspondence, check_memory_safety, check_shape_balancedness, parse_cfg, LabelledWpds, Status, Verdict,
};
use wpds::fixpoint::{
    all_witnesses, parse_system, safe_kleene, semiring_header, system_from_json, PolynomialSystem, SolveOutcome,
    SystemJson,
};
use wpds::semiring::{BoolReach, IntMaxPlus, IntMinPlus, RatMaxTimes, Semiring, SemiringKind, Value};
use wpds::wautomata::{dump_semiring, from_post_star, from_pre_star, parse_dump, WAutomaton};
use wpds::wpds::{parse_wpds, reduce_regular_target, solve_post_star, solve_pre_star, WpdsDocument};

use crate::{CheckKind, Cli, Command, Format};

/// What to print and which exit code to use.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Runs `$f::<S>(args…)` for the semiring selected by `$kind`.
macro_rules! dispatch {
    ($kind:expr, $f:ident($($arg:expr),* $(,)?)) => {
        match $kind {
            SemiringKind::MinPlusInt => $f::<IntMinPlus>($($arg),*),
            SemiringKind::MaxPlusInt => $f::<IntMaxPlus>($($arg),*),
            SemiringKind::MaxTimesRat => $f::<RatMaxTimes>($($arg),*),
            SemiringKind::Bool => $f::<BoolReach>($($arg),*),
        }
    };
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Solve { file } => cmd_solve(cli, file),
        Command::Pre { file, target } => cmd_pre(cli, file, target),
        Command::Post { file, source } => cmd_post(cli, file, source.as_deref()),
        Command::Movp { dump, configuration } => cmd_movp(cli, dump, configuration),
        Command::Check { kind } => cmd_check(cli, kind),
    }
}

fn pick(cli: &Cli, declared: Option<SemiringKind>) -> SemiringKind {
    cli.semiring.or(declared).unwrap_or(SemiringKind::MinPlusInt)
}

fn require_not_dot(cli: &Cli, what: &str) -> Result<()> {
    if cli.format == Format::Dot {
        bail!("`--format dot` applies to automata, not to {what}");
    }
    Ok(())
}

// ---- solve ----

#[derive(Serialize)]
struct VarValue {
    var: String,
    value: String,
}

#[derive(Serialize)]
struct SolveReport {
    semiring: String,
    status: &'static str,
    /// Smallest witness component found by safe Kleene iteration.
    witness: Option<String>,
    /// All witness components, where the semiring supports finding them.
    witnesses: Vec<String>,
    values: Vec<VarValue>,
    evaluations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<Vec<String>>>,
}

fn cmd_solve(cli: &Cli, file: &Path) -> Result<Output> {
    require_not_dot(cli, "equation systems")?;
    let text = read(file)?;
    if text.trim_start().starts_with('{') {
        let sys: SystemJson = serde_json::from_str(&text).context("invalid JSON equation system")?;
        let declared = sys.semiring.parse().ok();
        return dispatch!(pick(cli, declared), solve_json(cli, &sys));
    }
    let declared = semiring_header(&text)?;
    dispatch!(pick(cli, declared), solve_text(cli, &text))
}

fn solve_text<S: Semiring>(cli: &Cli, text: &str) -> Result<Output> {
    let sys = parse_system::<S>(text)?;
    solve_system(cli, &sys)
}

fn solve_json<S: Semiring>(cli: &Cli, json: &SystemJson) -> Result<Output> {
    let sys = system_from_json::<S>(json)?;
    solve_system(cli, &sys)
}

fn solve_system<S: Semiring>(cli: &Cli, sys: &PolynomialSystem<S>) -> Result<Output> {
    let started = Instant::now();
    let (run, witnesses, values) = if S::EXACT_DIVERGENCE {
        let report = all_witnesses(sys)?;
        (report.run, report.witnesses, report.values)
    } else {
        let run = safe_kleene(sys);
        let (w, v) = match &run.outcome {
            SolveOutcome::GreatestFixedPoint(v) => (vec![], v.iter().cloned().map(Value::Finite).collect()),
            SolveOutcome::Witness { component } => (vec![*component], vec![]),
        };
        (run, w, v)
    };
    let elapsed = started.elapsed();
    let names = sys.names();
    let report = SolveReport {
        semiring: S::NAME.to_string(),
        status: match run.outcome {
            SolveOutcome::GreatestFixedPoint(_) => "fixed-point",
            SolveOutcome::Witness { .. } => "witness",
        },
        witness: match run.outcome {
            SolveOutcome::Witness { component } => Some(names[component].clone()),
            SolveOutcome::GreatestFixedPoint(_) => None,
        },
        witnesses: witnesses.iter().map(|&i| names[i].clone()).collect(),
        values: values
            .iter()
            .zip(names)
            .map(|(v, n)| VarValue {
                var: n.clone(),
                value: v.to_string(),
            })
            .collect(),
        evaluations: run.evaluations,
        trace: cli.trace.then(|| {
            run.trace
                .iterates
                .iter()
                .map(|ks| ks.iter().map(ToString::to_string).collect())
                .collect()
        }),
    };
    let code = if report.witness.is_some() { 2 } else { 0 };
    let text = match cli.format {
        Format::Json => json(&report),
        _ => {
            let mut out = String::new();
            if let Some(trace) = &report.trace {
                for (k, ks) in trace.iter().enumerate() {
                    let _ = writeln!(out, "ks{k} = ({})", ks.join(", "));
                }
                if !cli.deterministic {
                    let _ = writeln!(out, "elapsed: {} us", elapsed.as_micros());
                }
            }
            match &report.witness {
                Some(w) => {
                    let _ = writeln!(out, "witness: {w}");
                    if !report.witnesses.is_empty() {
                        let _ = writeln!(out, "witnesses: {}", report.witnesses.join(" "));
                    }
                }
                None => out.push_str("fixed point\n"),
            }
            for v in &report.values {
                let _ = writeln!(out, "{} = {}", v.var, v.value);
            }
            out
        }
    };
    Ok(Output { text, code })
}

// ---- pre / post ----

fn render_automaton<S: Semiring>(cli: &Cli, a: &WAutomaton<S>) -> String {
    match cli.format {
        Format::Text => a.to_string(),
        Format::Json => json(&a.to_json()),
        Format::Dot => a.to_dot(),
    }
}

fn load_wpds(file: &Path) -> Result<WpdsDocument> {
    Ok(parse_wpds(&read(file)?)?)
}

fn cmd_pre(cli: &Cli, file: &Path, targets: &[String]) -> Result<Output> {
    let mut doc = load_wpds(file)?;
    if !targets.is_empty() {
        doc.targets = targets
            .iter()
            .map(|t| doc.parse_pattern(t).with_context(|| format!("in --target `{t}`")))
            .collect::<Result<_>>()?;
    }
    if doc.targets.is_empty() {
        bail!("no target: add a `target` line or pass --target");
    }
    dispatch!(pick(cli, doc.semiring), pre_star(cli, &doc))
}

fn pre_star<S: Semiring>(cli: &Cli, doc: &WpdsDocument) -> Result<Output> {
    let wpds = doc.to_wpds::<S>()?.normalize();
    let a = match doc.targets.as_slice() {
        // A single empty-stack target needs no reduction.
        [t] if t.stack.is_empty() && !t.any_suffix => {
            let sol = solve_pre_star(&wpds, wpds.state(&t.state)?)?;
            from_pre_star(&wpds, &sol, &[])
        }
        _ => {
            let nfa = doc.target_automaton().expect("targets are non-empty");
            let red = reduce_regular_target(&wpds, &nfa)?;
            let sol = solve_pre_star(&red.wpds, red.target)?;
            from_pre_star(&red.wpds, &sol, &red.accepting_controls)
        }
    };
    Ok(Output::ok(render_automaton(cli, &a)))
}

fn cmd_post(cli: &Cli, file: &Path, source: Option<&str>) -> Result<Output> {
    let doc = load_wpds(file)?;
    let source = match source {
        Some(s) => doc.parse_pattern(s).with_context(|| format!("in --source `{s}`"))?,
        None => doc
            .source
            .clone()
            .context("no source: add a `source` line or pass --source")?,
    };
    if source.any_suffix || source.stack.len() != 1 {
        bail!("the source must be a control state and exactly one symbol");
    }
    let config = format!("{} {}", source.state, source.stack[0]);
    dispatch!(pick(cli, doc.semiring), post_star(cli, &doc, &config))
}

fn post_star<S: Semiring>(cli: &Cli, doc: &WpdsDocument, config: &str) -> Result<Output> {
    let wpds = doc.to_wpds::<S>()?.normalize();
    let source = wpds.parse_configuration(config)?;
    let sol = solve_post_star(&wpds, &source)?;
    Ok(Output::ok(render_automaton(cli, &from_post_star(&wpds, &sol))))
}

// ---- movp ----

#[derive(Serialize)]
struct MovpReport {
    configuration: String,
    weight: String,
}

fn cmd_movp(cli: &Cli, dump: &Path, configuration: &str) -> Result<Output> {
    require_not_dot(cli, "weights")?;
    let text = read(dump)?;
    let declared = match dump_semiring(&text) {
        Some(name) => Some(name.parse::<SemiringKind>()?),
        None => None,
    };
    dispatch!(pick(cli, declared), movp(cli, &text, configuration))
}

fn movp<S: Semiring>(cli: &Cli, text: &str, configuration: &str) -> Result<Output> {
    let a = parse_dump::<S>(text)?;
    let w = a.accepted_weight_str(configuration)?;
    let report = MovpReport {
        configuration: configuration.split_whitespace().collect::<Vec<_>>().join(" "),
        weight: w.to_string(),
    };
    Ok(Output::ok(match cli.format {
        Format::Json => json(&report),
        _ => format!("{}\n", report.weight),
    }))
}

// ---- check ----

fn verdict_code(vs: &[Verdict]) -> u8 {
    if vs.iter().all(|v| v.status == Status::Safe) {
        0
    } else {
        2
    }
}

fn render_verdicts(cli: &Cli, vs: &[Verdict], as_list: bool) -> String {
    match cli.format {
        Format::Json if as_list => json(&vs),
        Format::Json => json(&vs[0]),
        _ => vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
    }
}

fn initial_of(doc: &WpdsDocument, w: &LabelledWpds, initial: Option<&str>) -> Result<wpds::wpds::Configuration> {
    let text = match initial {
        Some(s) => s.to_string(),
        None => doc
            .source
            .as_ref()
            .map(ToString::to_string)
            .context("no initial configuration: add a `source` line or pass --initial")?,
    };
    Ok(w.parse_configuration(&text)?)
}

fn cmd_check(cli: &Cli, kind: &CheckKind) -> Result<Output> {
    require_not_dot(cli, "verdicts")?;
    if let Some(k) = cli.semiring.filter(|k| *k != SemiringKind::MinPlusInt) {
        bail!("checks use integer weights derived from tags; `--semiring {k}` does not apply");
    }
    let (verdicts, as_list) = match kind {
        CheckKind::Alloc { file, initial } => {
            let doc = load_wpds(file)?;
            let w = LabelledWpds::from_document(&doc)?;
            let start = initial_of(&doc, &w, initial.as_deref())?;
            (vec![check_memory_safety(&w, &start)?], false)
        }
        CheckKind::Corr { file, initial, label } => {
            let doc = load_wpds(file)?;
            let w = LabelledWpds::from_document(&doc)?;
            let start = initial_of(&doc, &w, initial.as_deref())?;
            let labels: Vec<String> = match label {
                Some(l) if !w.labels().contains(l) => bail!("unknown label `{l}`"),
                Some(l) => vec![l.clone()],
                None => w.labels().into_iter().collect(),
            };
            let vs = labels
                .iter()
                .map(|l| check_correspondence(&w, &start, l))
                .collect::<Result<Vec<_>, _>>()?;
            (vs, true)
        }
        CheckKind::Balance { file } => {
            let g = parse_cfg(&read(file)?)?;
            (vec![check_shape_balancedness(&g)?], false)
        }
    };
    Ok(Output {
        text: render_verdicts(cli, &verdicts, as_list),
        code: verdict_code(&verdicts),
    })
}
