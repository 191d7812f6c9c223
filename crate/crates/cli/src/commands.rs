//! The CLI verbs, independent of argument parsing.

use std::fmt::Write as _;
use std::time::Instant;

use circaut_core::classify::{
    edge_transitive_prime, is_normal_circulant, noncyclic_regular_sufficient, two_arc_classify, zhang_classify,
};
use circaut_core::graph::parse_graph_spec;
use circaut_core::oracle::{
    are_isomorphic, brute_force_aut, ci_counterexample, ci_graph_witness, ci_via_conjugacy, find_noncyclic_regular,
    is_ci_group, multiplier_isomorphism, symmetric_connection_sets,
};
use circaut_core::{aut, Adjacency, CirculantGraph, Error, Method, Result, SearchBudget, SolverConfig};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{ErrorBody, LineFailure, RunReport};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    InputError = 1,
    Mismatch = 2,
    Budget = 3,
}

pub fn status_of(e: &Error) -> Status {
    match e {
        Error::BudgetExceeded(_) | Error::UnsupportedOrder(_) => Status::Budget,
        Error::CrossCheckMismatch { .. }
        | Error::ClassificationViolation(_)
        | Error::DichotomyViolation(_)
        | Error::Internal(_) => Status::Mismatch,
        _ => Status::InputError,
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub json: bool,
    pub timing: bool,
    pub budget: SearchBudget,
}

/// What a verb produced: text for the terminal, JSON for `--json`, and an exit status.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub status: Status,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            status: Status::Success,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn show_set(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// Solves one graph; with `verify`, compares against the oracle group.
pub fn solve(x: &CirculantGraph, method: Method, verify: bool, options: &Options) -> Result<RunReport> {
    let start = Instant::now();
    let config = SolverConfig {
        method,
        budget: options.budget.clone(),
    };
    let solution = aut(x, &config)?;
    let group = solution.description.realize()?;
    if let Some(bad) = group.generators().iter().find(|g| !x.preserved_by(g.images())) {
        return Err(Error::Internal(format!("generator {bad:?} is not an automorphism of {x}")));
    }
    let mut report = RunReport::new(x, solution.method.name(), solution.description, &group);
    if verify {
        report.verified = match brute_force_aut(x, &options.budget) {
            Ok(truth) => Some(truth.same_group(&group)),
            Err(Error::BudgetExceeded(_)) => None,
            Err(e) => return Err(e),
        };
    }
    if options.timing {
        report.ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

pub fn cmd_aut(x: &CirculantGraph, method: Method, verify: bool, options: &Options) -> Result<Output> {
    let report = solve(x, method, verify, options)?;
    let mut text = report.render();
    if verify && report.verified.is_none() {
        text.push_str("verified: skipped, graph exceeds the oracle budget\n");
    }
    let status = if report.verified == Some(false) {
        Status::Mismatch
    } else {
        Status::Success
    };
    Ok(Output {
        text,
        json: to_value(&report),
        status,
    })
}

fn not_applicable() -> Value {
    Value::String("n/a".into())
}

/// Out-of-budget and precondition failures become "n/a"; other errors propagate.
fn or_not_applicable(r: Result<Value>) -> Result<Value> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::BudgetExceeded(_) | Error::UnsupportedOrder(_) | Error::Precondition(_)) => Ok(not_applicable()),
        Err(e) => Err(e),
    }
}

pub fn cmd_classify(x: &CirculantGraph, options: &Options) -> Result<Output> {
    let config = SolverConfig {
        method: Method::Auto,
        budget: options.budget.clone(),
    };
    let edge = if x.modulus().is_prime() {
        Value::Bool(edge_transitive_prime(x)?)
    } else {
        not_applicable()
    };
    let two_arc = two_arc_classify(x)?;
    let zhang = or_not_applicable(zhang_classify(x, &options.budget).map(|z| match z {
        Some(label) => Value::String(label.to_string()),
        None => Value::Null,
    }))?;
    let normal = or_not_applicable(is_normal_circulant(x, &config).map(Value::Bool))?;
    let prime = noncyclic_regular_sufficient(x);
    let witness = or_not_applicable(
        brute_force_aut(x, &options.budget)
            .and_then(|g| find_noncyclic_regular(&g))
            .map(|r| match r {
                Some(group) => to_value(&group.generators().iter().map(|g| g.images().to_vec()).collect::<Vec<_>>()),
                None => Value::Null,
            }),
    )?;
    let json = json!({
        "n": x.n(),
        "set": x.set(),
        "edge_transitive": edge,
        "two_arc": {"label": two_arc.label.to_string(), "detail": two_arc.detail},
        "zhang": zhang,
        "normal": normal,
        "regular_subgroup": {"gcd_prime": prime, "noncyclic": witness},
    });
    let mut text = String::new();
    let _ = writeln!(text, "X({}; {})", x.n(), show_set(x.set()));
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        other => other.to_string(),
    };
    let _ = writeln!(text, "edge-transitive (prime order): {}", plain(&edge));
    let _ = writeln!(text, "2-arc class: {} ({})", two_arc.label, two_arc.detail);
    let _ = writeln!(text, "both X and complement edge-transitive: {}", plain(&zhang));
    let _ = writeln!(text, "rotation group normal in Aut: {}", plain(&normal));
    match prime {
        Some(p) => {
            let _ = writeln!(text, "gcd criterion: prime {p} guarantees a noncyclic regular subgroup");
        }
        None => text.push_str("gcd criterion: gcd is 1, no conclusion\n"),
    }
    let found = match &witness {
        Value::Array(gens) => format!("found, {} generators", gens.len()),
        other => plain(other),
    };
    let _ = writeln!(text, "noncyclic regular subgroup: {found}");
    Ok(Output::ok(text, json))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiMode {
    Lookup,
    Exhaustive,
    Conjugacy,
}

impl CiMode {
    fn name(self) -> &'static str {
        match self {
            CiMode::Lookup => "lookup",
            CiMode::Exhaustive => "exhaustive",
            CiMode::Conjugacy => "conjugacy",
        }
    }
}

/// CI status of `Z_n` (or of one graph when `graph` is given).
///
/// The computed modes are compared with the classification of cyclic CI
/// groups; disagreement is a mismatch.
pub fn cmd_ci(n: usize, graph: Option<&CirculantGraph>, mode: CiMode, options: &Options) -> Result<Output> {
    let (dci, ci) = is_ci_group(n);
    let mut text = String::new();
    if let Some(x) = graph {
        let (is_ci, other) = match mode {
            CiMode::Lookup => {
                return Err(Error::Precondition("lookup mode classifies Z_n; drop --set".into()));
            }
            CiMode::Exhaustive => {
                let w = ci_graph_witness(x, &options.budget)?;
                (w.is_none(), w)
            }
            CiMode::Conjugacy => (ci_via_conjugacy(x, &options.budget)?, None),
        };
        let _ = writeln!(
            text,
            "X({}; {}) {} the CI property ({})",
            n,
            show_set(x.set()),
            if is_ci { "has" } else { "lacks" },
            mode.name()
        );
        if let Some(o) = &other {
            let _ = writeln!(text, "isomorphic to X({n}; {}) with no multiplier between them", show_set(o));
        }
        let json = json!({"n": n, "set": x.set(), "mode": mode.name(), "ci": is_ci, "other": other});
        let status = if ci && !is_ci { Status::Mismatch } else { Status::Success };
        return Ok(Output { text, json, status });
    }
    type Witness = Option<(Vec<usize>, Vec<usize>)>;
    let (computed, witness): (Option<bool>, Witness) = match mode {
        CiMode::Lookup => (None, None),
        CiMode::Exhaustive => {
            let w = ci_counterexample(n, &options.budget)?;
            (Some(w.is_none()), w)
        }
        CiMode::Conjugacy => {
            let mut failing = None;
            for set in symmetric_connection_sets(n) {
                let x = CirculantGraph::undirected(n, &set)?;
                if !ci_via_conjugacy(&x, &options.budget)? {
                    failing = Some((set, Vec::new()));
                    break;
                }
            }
            (Some(failing.is_none()), failing)
        }
    };
    let _ = writeln!(text, "Z_{n}: DCI {}, CI {} (classification)", yes_no(dci), yes_no(ci));
    match (mode, &witness) {
        (CiMode::Lookup, _) => {}
        (_, None) => {
            let _ = writeln!(text, "CI confirmed over all undirected circulants on {n} vertices ({})", mode.name());
        }
        (CiMode::Exhaustive, Some((s, t))) => {
            let _ = writeln!(
                text,
                "not CI: X({n}; {}) and X({n}; {}) are isomorphic but no multiplier maps one set to the other",
                show_set(s),
                show_set(t)
            );
        }
        (_, Some((s, _))) => {
            let _ = writeln!(text, "not CI: X({n}; {}) has n-cycles outside the class of the rotations", show_set(s));
        }
    }
    let witness_json = witness.as_ref().map(|(s, t)| match mode {
        CiMode::Exhaustive => json!({"set": s, "other": t}),
        _ => json!({"set": s}),
    });
    let json = json!({
        "n": n,
        "mode": mode.name(),
        "dci": dci,
        "ci": computed.unwrap_or(ci),
        "classification_ci": ci,
        "witness": witness_json,
    });
    let status = match computed {
        Some(c) if c != ci => Status::Mismatch,
        _ => Status::Success,
    };
    Ok(Output { text, json, status })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_iso(x: &CirculantGraph, y: &CirculantGraph, options: &Options) -> Result<Output> {
    let witness = are_isomorphic(x, y, &options.budget)?;
    let multiplier = multiplier_isomorphism(x, y);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "X({}; {}) and X({}; {}) are {}",
        x.n(),
        show_set(x.set()),
        y.n(),
        show_set(y.set()),
        if witness.is_some() { "isomorphic" } else { "not isomorphic" }
    );
    if let Some(a) = multiplier {
        let _ = writeln!(text, "multiplier: {a}");
    }
    if let Some(w) = &witness {
        let images: Vec<String> = w.images().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "witness: [{}]", images.join(" "));
    }
    let json = json!({
        "n": x.n(),
        "set": x.set(),
        "other": y.set(),
        "isomorphic": witness.is_some(),
        "multiplier": multiplier,
        "witness": witness.map(|w| w.images().to_vec()),
    });
    Ok(Output::ok(text, json))
}

/// One record per non-blank, non-comment line, in input order.
pub fn cmd_batch(contents: &str, method: Method, verify: bool, options: &Options) -> (Vec<Value>, Status) {
    let lines: Vec<(usize, &str)> = contents
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect();
    let results: Vec<(Value, bool)> = lines
        .par_iter()
        .map(|&(number, text)| {
            let outcome = parse_graph_spec(text, number)
                .and_then(|(n, set)| CirculantGraph::undirected(n, &set))
                .and_then(|x| solve(&x, method, verify, options));
            match outcome {
                Ok(report) => {
                    let mismatch = report.verified == Some(false);
                    (to_value(&report), mismatch)
                }
                Err(e) => (
                    to_value(&LineFailure {
                        line: number,
                        input: text.trim().to_string(),
                        error: ErrorBody::from(&e),
                    }),
                    matches!(status_of(&e), Status::Mismatch),
                ),
            }
        })
        .collect();
    let status = if results.iter().any(|(_, m)| *m) {
        Status::Mismatch
    } else {
        Status::Success
    };
    (results.into_iter().map(|(v, _)| v).collect(), status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_follow_the_exit_contract() {
        assert_eq!(status_of(&Error::BudgetExceeded("x".into())), Status::Budget);
        assert_eq!(status_of(&Error::UnsupportedOrder(64)), Status::Budget);
        assert_eq!(status_of(&Error::Internal("x".into())), Status::Mismatch);
        assert_eq!(status_of(&Error::Precondition("x".into())), Status::InputError);
    }

    #[test]
    fn batch_keeps_input_order() {
        let options = Options {
            json: true,
            timing: false,
            budget: SearchBudget::default(),
        };
        let text: String = (3..20).rev().map(|n| format!("{n};1,{}\n", n - 1)).collect();
        let (records, status) = cmd_batch(&text, Method::Auto, true, &options);
        assert_eq!(status, Status::Success);
        let ns: Vec<u64> = records.iter().map(|r| r["n"].as_u64().unwrap()).collect();
        assert_eq!(ns, (3..20).rev().collect::<Vec<u64>>());
    }
}
