//! Plain-text output of the CLI. Everything here is deterministic so the
//! output can be diffed.

use std::fmt::Write as _;

use crate::conflict::ConflictSet;
use crate::policy::ActionVector;
use crate::resolution::Mediation;
use crate::willingness::WillingnessTable;

fn assignments(v: &ActionVector) -> String {
    v.actions
        .iter()
        .map(|(t, a)| format!("{t}={a}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn name_width<'a>(names: impl Iterator<Item = &'a str>) -> usize {
    names.map(str::len).max().unwrap_or(0)
}

pub fn render_conflicts(cs: &ConflictSet) -> String {
    let mut out = String::new();
    let w = name_width(cs.vectors.iter().map(|v| v.owner.as_str()));
    for v in &cs.vectors {
        let _ = writeln!(out, "{:<w$}  {}", v.owner.as_str(), assignments(v));
    }
    if cs.is_empty() {
        out.push_str("no conflicts\n");
    } else {
        let names: Vec<&str> = cs.conflicts.iter().map(|c| c.as_str()).collect();
        let _ = writeln!(out, "conflicts: {}", names.join(", "));
    }
    out
}

pub fn render_willingness(table: &WillingnessTable) -> String {
    let mut out = String::new();
    let wn =
        name_width(table.reports.iter().map(|r| r.negotiator.as_str())).max("negotiator".len());
    let wt = name_width(table.reports.iter().map(|r| r.target.as_str())).max("target".len());
    let _ = writeln!(
        out,
        "{:<wn$}  {:<wt$}  sensitivity  importance  willingness  class",
        "negotiator", "target"
    );
    for r in &table.reports {
        let _ = writeln!(
            out,
            "{:<wn$}  {:<wt$}  {:>11.2}  {:>10.2}  {:>11.2}  {}",
            r.negotiator.as_str(),
            r.target.as_str(),
            r.sensitivity,
            r.importance,
            r.willingness,
            r.class
        );
    }
    out
}

pub fn render_resolution(m: &Mediation) -> String {
    let mut out = String::new();
    if m.conflicts.is_empty() {
        out.push_str("no conflicts\n");
    }
    for c in &m.outcome.conflicts {
        let _ = writeln!(out, "{} -> {} ({})", c.target, c.action, c.branch);
        let w = name_width(c.decisions.iter().map(|d| d.negotiator.as_str()));
        for d in &c.decisions {
            let _ = writeln!(
                out,
                "  {:<w$}  preferred={}  willingness={:.2} {:<4}  {:<3}  {}",
                d.negotiator.as_str(),
                d.preferred,
                d.willingness,
                d.class.to_string(),
                d.rule.as_str(),
                if d.conceded { "concedes" } else { "holds" }
            );
        }
    }
    let _ = writeln!(out, "outcome: {}", assignments(&m.outcome.actions));
    out
}

pub fn render_vectors(rows: &[(&str, &ActionVector)]) -> String {
    let w = name_width(rows.iter().map(|(n, _)| *n));
    let mut out = String::new();
    for (name, v) in rows {
        let _ = writeln!(out, "{:<w$}  {}", name, assignments(v));
    }
    out
}
