//! Text renderings. They carry the same verdicts and witness strings as the
//! JSON documents.

use std::fmt::Write;

use linmap::maps::{MapBody, ProofTrace, WitnessDoc};
use linmap::search::{SearchResult, Theorem1Report};
use linmap::{CheckReport, MapSpec};

fn witness_lines(out: &mut String, w: &WitnessDoc) {
    let (a, b) = (&w.inputs[0], &w.inputs[1]);
    match w.kind.as_str() {
        "additivity" => {
            let _ = writeln!(out, "witness: additivity u1 = {a}, u2 = {b}");
            let _ = writeln!(out, "  phi(u1 + u2)      = {}", w.lhs);
            let _ = writeln!(out, "  phi(u1) + phi(u2) = {}", w.rhs);
        }
        _ => {
            let _ = writeln!(out, "witness: homogeneity lambda = {a}, u = {b}");
            let _ = writeln!(out, "  phi(lambda u) = {}", w.lhs);
            let _ = writeln!(out, "  lambda phi(u) = {}", w.rhs);
        }
    }
}

pub fn report(r: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "property: {}", r.property);
    let _ = writeln!(out, "verdict: {}", r.verdict);
    let _ = writeln!(out, "pairs_checked: {}", r.pairs_checked);
    if let Some(w) = &r.witness {
        witness_lines(&mut out, &WitnessDoc::from(w));
    }
    out
}

pub fn trace(t: &ProofTrace) -> String {
    let mut out = format!("m = {}, n = {}, x = {}\n", t.m, t.n, t.x);
    for s in &t.steps {
        let mark = if s.equal { "ok" } else { "FAILS" };
        let _ = writeln!(out, "{:<28}  {} vs {}  {mark}", s.label, s.lhs, s.rhs);
    }
    out.push_str(if t.all_equal() {
        "all identities hold\n"
    } else {
        "some identity fails\n"
    });
    out
}

pub fn trace_json(t: &ProofTrace) -> serde_json::Value {
    serde_json::json!({
        "m": t.m.to_string(),
        "n": t.n.to_string(),
        "x": t.x.to_string(),
        "steps": t.steps.iter().map(|s| serde_json::json!({
            "label": s.label,
            "lhs": s.lhs.to_string(),
            "rhs": s.rhs.to_string(),
            "equal": s.equal,
        })).collect::<Vec<_>>(),
        "all_equal": t.all_equal(),
    })
}

fn orbit_table(out: &mut String, map: &MapSpec) {
    if let MapBody::OrbitTable(values) = map.body() {
        let orbits = map.domain().orbits().expect("finite domain");
        for (o, v) in orbits.iter().zip(values) {
            let _ = writeln!(out, "  {} -> {}", o.representative, v);
        }
    }
}

pub fn search(r: &SearchResult) -> String {
    let i = &r.instance;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "instance: {} {} -> {} ({} orbits, {} candidates, mode {})",
        i.field, i.domain_dim, i.codomain_dim, i.orbits, i.candidates, i.mode
    );
    let _ = writeln!(out, "homogeneous: {}", r.homogeneous_count);
    let _ = writeln!(out, "homogeneous_additive: {}", r.homogeneous_additive_count);
    let _ = writeln!(out, "non_additive: {}", r.non_additive_count());
    if let (Some(map), Some(report)) = (&r.witness_map, &r.witness_report) {
        out.push_str("first homogeneous non-additive map (orbit representative -> value):\n");
        orbit_table(&mut out, map);
        if let Some(w) = &report.witness {
            witness_lines(&mut out, &WitnessDoc::from(w));
        }
    }
    if !r.witnesses.is_empty() {
        let _ = writeln!(out, "all {} witnesses:", r.witnesses.len());
        for (k, map) in r.witnesses.iter().enumerate() {
            let _ = writeln!(out, "#{k}");
            orbit_table(&mut out, map);
        }
    }
    out
}

pub fn theorem1(r: &Theorem1Report) -> String {
    let c = &r.census;
    let mut out = String::new();
    let _ = writeln!(out, "instance: Fp:{} {} -> {}", r.p, r.domain_dim, r.codomain_dim);
    let _ = writeln!(out, "tables: {}", c.tables_total);
    let _ = writeln!(out, "additive: {} (linear maps: {})", c.additive, r.expected_additive);
    let _ = writeln!(out, "additive but not homogeneous: {}", c.additive_non_homogeneous);
    if let Some((_, report)) = &c.first_non_homogeneous {
        if let Some(w) = &report.witness {
            witness_lines(&mut out, &WitnessDoc::from(w));
        }
    }
    let _ = writeln!(out, "holds: {}", r.holds());
    out
}
