//! Text and JSON rendering. The JSON schema is stable and golden-file
//! tested: classify emits {certificate, stats, trace, verdict} with
//! rationals as integers or "p/q" strings.

use anyhow::Result;
use cutoffgame_core::classify::{Certificate, Classifier, Verdict};
use cutoffgame_core::game::{Configuration, FiringTrace, Play, PlayOutcome, Termination};
use cutoffgame_core::graph::CoxeterGraph;
use cutoffgame_core::io::{config_to_json, rat_to_json};
use cutoffgame_core::minuscule::MinusculeWord;
use cutoffgame_core::oracle::{Exploration, OracleTag, OracleWitness};
use cutoffgame_core::roots::{Root, RootSet};
use serde_json::{json, Value};
use std::fmt::Write as _;

fn root_json(r: &Root) -> Value {
    Value::Array(r.coords.iter().map(rat_to_json).collect())
}

fn trace_json(t: &FiringTrace) -> Value {
    json!({
        "start": config_to_json(&t.start),
        "steps": t.steps.iter().map(|s| json!({
            "vertex": s.vertex,
            "amplitude": rat_to_json(&s.amplitude_before),
        })).collect::<Vec<_>>(),
        "end": config_to_json(&t.end),
    })
}

fn certificate_json(c: &Certificate) -> (Value, Option<Value>) {
    match c {
        Certificate::Witness(trace) => {
            let word = MinusculeWord::from_trace(trace);
            (
                json!({
                    "type": "witness",
                    "word": word.reflections,
                    "firing_order": word.firing_order(),
                    "amplitudes": word.amplitudes.iter().map(rat_to_json).collect::<Vec<_>>(),
                }),
                Some(trace_json(trace)),
            )
        }
        Certificate::ViolatedRoot(root) => (
            json!({
                "type": "violated_root",
                "root": root_json(root),
            }),
            None,
        ),
        Certificate::OrbitRep(rep) => (
            json!({
                "type": "orbit_representative",
                "configuration": config_to_json(rep),
            }),
            None,
        ),
        Certificate::Exhausted(note) => (
            json!({
                "type": "exhausted",
                "note": note,
            }),
            None,
        ),
    }
}

pub fn verdict_json(verdict: &Verdict, classifier: &Classifier, graph: &CoxeterGraph) -> Value {
    let (certificate, trace) = certificate_json(&verdict.certificate);
    json!({
        "verdict": verdict.tag.to_string(),
        "certificate": certificate,
        "trace": trace,
        "stats": {
            "graph_kind": graph.kind().to_string(),
            "vertices": graph.n_vertices(),
            "roots_enumerated": classifier.roots().len(),
            "enumeration_complete": classifier.roots().complete(),
        },
    })
}

pub fn verdict_text(verdict: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", verdict.tag);
    match &verdict.certificate {
        Certificate::Witness(trace) => {
            let word = MinusculeWord::from_trace(trace);
            let _ = writeln!(out, "witness word: {word}");
            let _ = writeln!(out, "firing order: {:?}", word.firing_order());
            let _ = writeln!(out, "end: {}", trace.end);
        }
        Certificate::ViolatedRoot(root) => {
            let _ = writeln!(out, "violated root: {root}");
        }
        Certificate::OrbitRep(rep) => {
            let _ = writeln!(out, "orbit representative: {rep}");
        }
        Certificate::Exhausted(note) => {
            let _ = writeln!(out, "evidence exhausted: {note}");
        }
    }
    out
}

pub fn play_text(p: &Play, graph: &CoxeterGraph) -> Result<String> {
    let mut out = String::new();
    let states = p.trace.states(graph)?;
    for (step, state) in p.trace.steps.iter().zip(states.iter().skip(1)) {
        let _ = writeln!(out, "fire {}: {}", step.vertex, state);
    }
    let _ = writeln!(out, "outcome: {} after {} moves", p.outcome, p.trace.len());
    if p.outcome == PlayOutcome::Loop {
        if let Some(start) = p.loop_start {
            let _ = writeln!(out, "cycle: revisits the configuration after move {start}");
        }
    }
    Ok(out)
}

pub fn play_json(p: &Play, _graph: &CoxeterGraph) -> Value {
    json!({
        "outcome": p.outcome.to_string(),
        "moves": p.trace.len(),
        "trace": trace_json(&p.trace),
        "loop_start": p.loop_start,
    })
}

fn termination_json(t: &Termination) -> Value {
    match t {
        Termination::Terminates { moves } => json!({
            "terminates": true,
            "moves": moves,
        }),
        Termination::DoesNotTerminate => json!({"terminates": false}),
        Termination::Unknown => json!({"terminates": null}),
    }
}

pub fn oracle_json(e: &Exploration, termination: &Termination) -> Value {
    let witness = match &e.verdict.witness {
        OracleWitness::Trace(t) => json!({"type": "trace", "trace": trace_json(t)}),
        OracleWitness::Cycle { lead_in, cycle } => json!({
            "type": "cycle",
            "lead_in": trace_json(lead_in),
            "cycle": trace_json(cycle),
        }),
        OracleWitness::None => Value::Null,
    };
    json!({
        "verdict": e.verdict.tag.to_string(),
        "outcome_set": {
            "can_win": e.outcome.can_win,
            "can_reach_forbidden": e.outcome.can_reach_forbidden,
            "can_loop": e.outcome.can_loop,
            "min_moves_to_win": e.outcome.min_moves_to_win,
            "min_moves_to_forbidden": e.outcome.min_moves_to_forbidden,
            "exhausted": e.outcome.exhausted,
            "states_explored": e.outcome.states_explored,
        },
        "usual_game": termination_json(termination),
        "witness": witness,
    })
}

pub fn oracle_text(e: &Exploration, termination: &Termination) -> String {
    let mut out = String::new();
    let o = &e.outcome;
    let _ = writeln!(out, "verdict: {}", e.verdict.tag);
    let _ = writeln!(out, "can_win: {}", o.can_win);
    let _ = writeln!(out, "can_reach_forbidden: {}", o.can_reach_forbidden);
    let _ = writeln!(out, "can_loop: {}", o.can_loop);
    let _ = writeln!(out, "min_moves_to_win: {:?}", o.min_moves_to_win);
    let _ = writeln!(
        out,
        "min_moves_to_forbidden: {:?}",
        o.min_moves_to_forbidden
    );
    let _ = writeln!(out, "states_explored: {}", o.states_explored);
    let _ = writeln!(out, "exhausted: {}", o.exhausted);
    match termination {
        Termination::Terminates { moves: Some(m) } => {
            let _ = writeln!(out, "usual game: terminates in {m} moves");
        }
        Termination::Terminates { moves: None } => {
            let _ = writeln!(out, "usual game: terminates");
        }
        Termination::DoesNotTerminate => {
            let _ = writeln!(out, "usual game: does not terminate");
        }
        Termination::Unknown => {
            let _ = writeln!(out, "usual game: unknown within the depth bound");
        }
    }
    match &e.verdict.witness {
        OracleWitness::Trace(t) => {
            let _ = writeln!(out, "witness script: {:?}", t.firing_order());
        }
        OracleWitness::Cycle { lead_in, cycle } => {
            let _ = writeln!(
                out,
                "witness script: {:?} then cycle {:?}",
                lead_in.firing_order(),
                cycle.firing_order()
            );
        }
        OracleWitness::None => {}
    }
    if e.verdict.tag == OracleTag::Unknown {
        let _ = writeln!(out, "note: raise --max-states / --max-depth for a verdict");
    }
    out
}

pub fn roots_json(rs: &RootSet) -> Value {
    json!({
        "roots": rs.iter().map(|(r, depth)| json!({
            "coords": root_json(r),
            "height": rat_to_json(&r.height()),
            "depth": depth,
        })).collect::<Vec<_>>(),
        "complete": rs.complete(),
        "count": rs.len(),
    })
}

pub fn witness_text(
    word: &MinusculeWord,
    v: &Configuration,
    graph: &CoxeterGraph,
    integral_ok: bool,
    relaxed_ok: bool,
) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "word: {word}");
    let _ = writeln!(out, "firing order: {:?}", word.firing_order());
    let mut current = v.clone();
    for &vertex in &word.firing_order() {
        let amp = current.amps[vertex].clone();
        let _ = writeln!(out, "fire {vertex} at amplitude {amp}");
        current = cutoffgame_core::game::fire(graph, &current, vertex)?;
    }
    let _ = writeln!(out, "dominant end: {current}");
    let _ = writeln!(out, "minuscule (integral): {integral_ok}");
    let _ = writeln!(out, "minuscule (non-integral): {relaxed_ok}");
    Ok(out)
}

pub fn witness_json(
    word: &MinusculeWord,
    v: &Configuration,
    graph: &CoxeterGraph,
    integral_ok: bool,
    relaxed_ok: bool,
) -> Result<Value> {
    let mut current = v.clone();
    for &vertex in &word.firing_order() {
        current = cutoffgame_core::game::fire(graph, &current, vertex)?;
    }
    Ok(json!({
        "word": word.reflections,
        "firing_order": word.firing_order(),
        "amplitudes": word.amplitudes.iter().map(rat_to_json).collect::<Vec<_>>(),
        "end": config_to_json(&current),
        "minuscule_integral": integral_ok,
        "minuscule_relaxed": relaxed_ok,
    }))
}

pub fn catalog_json(enumerated: &[Configuration], closed: &[Configuration]) -> Value {
    let diff_a: Vec<Value> = enumerated
        .iter()
        .filter(|v| !closed.contains(v))
        .map(config_to_json)
        .collect();
    let diff_b: Vec<Value> = closed
        .iter()
        .filter(|v| !enumerated.contains(v))
        .map(config_to_json)
        .collect();
    json!({
        "enumerated": enumerated.iter().map(config_to_json).collect::<Vec<_>>(),
        "closed_form": closed.iter().map(config_to_json).collect::<Vec<_>>(),
        "diff": {"enumerated_only": diff_a, "closed_form_only": diff_b},
        "equal": enumerated == closed,
    })
}

pub fn sweep_json(
    total: usize,
    agreed: usize,
    counts: &std::collections::BTreeMap<String, usize>,
    first_disagreement: Option<(&Configuration, cutoffgame_core::classify::Tag, OracleTag)>,
) -> Value {
    json!({
        "total": total,
        "agree": agreed,
        "counts": counts,
        "first_disagreement": first_disagreement.map(|(v, c, o)| json!({
            "configuration": config_to_json(v),
            "classifier": c.to_string(),
            "oracle": o.to_string(),
        })),
    })
}
