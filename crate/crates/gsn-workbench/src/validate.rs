//! Structural rule engine for safety cases.
//!
//! `allowed_connection` encodes the fixed connection matrix; `validate`
//! runs every structural check (E1–E6) and the text-form lints (W3/W4 via
//! [`crate::lint`]), plus the development-status advice (W1/W2). All
//! findings are returned as data; nothing here fails.
//!
//! Diagnostics are emitted in deterministic order: by code, then by
//! subject id.

use std::collections::{BTreeMap, BTreeSet};

use crate::lint::semantic_lint;
use crate::model::{
    Decorator, DiagCode, Diagnostic, ElementKind, RelationshipKind, SafetyCase, Subject,
};

/// Options for [`validate_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Accept more than one root goal (zero roots is still an error).
    pub allow_multiple_roots: bool,
}

/// The structural connection matrix. Exactly ten of the 72 possible
/// (source kind, target kind, relationship kind) triples are allowed:
/// supported-by from goals to goals, strategies, and solutions and from
/// strategies to goals; in-context-of from goals and strategies to
/// contexts, assumptions, and justifications. Pure and total.
pub fn allowed_connection(
    source: ElementKind,
    target: ElementKind,
    rel: RelationshipKind,
) -> bool {
    use ElementKind::*;
    use RelationshipKind::*;
    matches!(
        (source, target, rel),
        (Goal, Goal, SupportedBy)
            | (Goal, Strategy, SupportedBy)
            | (Goal, Solution, SupportedBy)
            | (Strategy, Goal, SupportedBy)
            | (Goal, Context, InContextOf)
            | (Goal, Assumption, InContextOf)
            | (Goal, Justification, InContextOf)
            | (Strategy, Context, InContextOf)
            | (Strategy, Assumption, InContextOf)
            | (Strategy, Justification, InContextOf)
    )
}

/// Runs every check with default options.
pub fn validate(case: &SafetyCase) -> Vec<Diagnostic> {
    validate_with(case, &ValidateOptions::default())
}

/// Runs every check. An empty result means the case is fully valid.
pub fn validate_with(case: &SafetyCase, options: &ValidateOptions) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    // Kind lookup uses the first occurrence of each id; later duplicates
    // are reported by E2 and otherwise ignored.
    let mut kinds: BTreeMap<&str, ElementKind> = BTreeMap::new();
    let mut duplicates: BTreeSet<&str> = BTreeSet::new();
    for element in case.elements() {
        if kinds.insert(element.id(), element.kind()).is_some() {
            duplicates.insert(element.id());
        }
    }

    for id in &duplicates {
        out.push(Diagnostic::new(
            DiagCode::E2,
            Subject::Element(id.to_string()),
            format!("element id `{id}` is declared more than once"),
        ));
    }

    for rel in case.relationships() {
        let missing: Vec<&str> = [rel.source(), rel.target()]
            .into_iter()
            .filter(|id| !kinds.contains_key(id))
            .collect();
        if !missing.is_empty() {
            out.push(Diagnostic::new(
                DiagCode::E1,
                Subject::Relationship {
                    source: rel.source().to_string(),
                    target: rel.target().to_string(),
                },
                format!("relationship references unknown id(s): {}", missing.join(", ")),
            ));
            continue;
        }
        let (src, tgt) = (kinds[rel.source()], kinds[rel.target()]);
        if !allowed_connection(src, tgt, rel.kind()) {
            out.push(Diagnostic::new(
                DiagCode::E3,
                Subject::Relationship {
                    source: rel.source().to_string(),
                    target: rel.target().to_string(),
                },
                format!("{src} to {tgt} is not an allowed {} connection", rel.kind()),
            ));
        }
    }

    if let Some(cycle) = supported_by_cycle(case, &kinds) {
        let first = cycle.first().cloned().unwrap_or_default();
        out.push(Diagnostic::new(
            DiagCode::E4,
            Subject::Element(first),
            format!(
                "supported-by relationships form a cycle involving {}",
                cycle.join(", ")
            ),
        ));
    }

    let supported: BTreeSet<&str> = case
        .relationships()
        .iter()
        .filter(|r| r.kind() == RelationshipKind::SupportedBy)
        .map(|r| r.target())
        .collect();
    let roots: Vec<&str> = case
        .elements()
        .iter()
        .filter(|e| e.kind() == ElementKind::Goal && !supported.contains(e.id()))
        .map(|e| e.id())
        .collect();
    if roots.is_empty() {
        out.push(Diagnostic::new(
            DiagCode::E5,
            Subject::Case,
            "no root goal: every goal has an incoming supported-by edge (or there are no goals)",
        ));
    } else if roots.len() > 1 && !options.allow_multiple_roots {
        out.push(Diagnostic::new(
            DiagCode::E5,
            Subject::Case,
            format!("expected exactly one root goal, found {}: {}", roots.len(), roots.join(", ")),
        ));
    }

    // Outgoing edges per source id, for E6/W1/W2.
    let mut outgoing: BTreeMap<&str, Vec<(RelationshipKind, &str)>> = BTreeMap::new();
    for rel in case.relationships() {
        outgoing
            .entry(rel.source())
            .or_default()
            .push((rel.kind(), rel.target()));
    }

    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for element in case.elements() {
        if !seen.insert(element.id()) {
            continue; // duplicate declaration, already reported
        }
        let id = element.id();
        let edges = outgoing.get(id).map(Vec::as_slice).unwrap_or(&[]);
        match element.kind() {
            ElementKind::Solution
            | ElementKind::Context
            | ElementKind::Assumption
            | ElementKind::Justification => {
                if !edges.is_empty() {
                    out.push(Diagnostic::new(
                        DiagCode::E6,
                        Subject::Element(id.to_string()),
                        format!(
                            "{} `{id}` has {} outgoing relationship(s); it must be terminal",
                            element.kind(),
                            edges.len()
                        ),
                    ));
                }
            }
            ElementKind::Goal => {
                let has_support = edges
                    .iter()
                    .any(|(k, _)| *k == RelationshipKind::SupportedBy);
                if !has_support && !element.has_decorator(Decorator::Undeveloped) {
                    out.push(Diagnostic::new(
                        DiagCode::W1,
                        Subject::Element(id.to_string()),
                        format!("leaf goal `{id}` has no solution and is not marked undeveloped"),
                    ));
                }
            }
            ElementKind::Strategy => {
                let has_goal = edges.iter().any(|(k, t)| {
                    *k == RelationshipKind::SupportedBy
                        && kinds.get(t) == Some(&ElementKind::Goal)
                });
                if !has_goal && !element.has_decorator(Decorator::Undeveloped) {
                    out.push(Diagnostic::new(
                        DiagCode::W2,
                        Subject::Element(id.to_string()),
                        format!("strategy `{id}` has no supporting goal and is not marked undeveloped"),
                    ));
                }
            }
        }
        out.extend(semantic_lint(element));
    }

    out.sort_by(|a, b| {
        (a.code, a.subject.sort_key(), a.line).cmp(&(b.code, b.subject.sort_key(), b.line))
    });
    out.dedup();
    out
}

/// Elements involved in a supported-by cycle, in first-declaration order,
/// or `None` when the subgraph is acyclic. Nodes are peeled from both
/// ends (in-degree and out-degree); an element survives both peels only
/// if it lies on a cycle or on a path between cycles.
fn supported_by_cycle(
    case: &SafetyCase,
    kinds: &BTreeMap<&str, ElementKind>,
) -> Option<Vec<String>> {
    let edges: Vec<(&str, &str)> = case
        .relationships()
        .iter()
        .filter(|r| {
            r.kind() == RelationshipKind::SupportedBy
                && kinds.contains_key(r.source())
                && kinds.contains_key(r.target())
        })
        .map(|r| (r.source(), r.target()))
        .collect();
    if edges.is_empty() {
        return None;
    }

    let forward = peel(&edges, false);
    if forward.is_empty() {
        return None;
    }
    let backward = peel(&edges, true);
    let mut involved: Vec<String> = case
        .elements()
        .iter()
        .map(|e| e.id())
        .filter(|id| forward.contains(id) && backward.contains(id))
        .map(str::to_string)
        .collect();
    involved.dedup();
    Some(involved)
}

/// Kahn-style peel: repeatedly removes nodes whose in-degree (or
/// out-degree, when `reversed`) is zero and returns the survivors.
fn peel<'a>(edges: &[(&'a str, &'a str)], reversed: bool) -> BTreeSet<&'a str> {
    let mut degree: BTreeMap<&str, usize> = BTreeMap::new();
    let mut adjacency: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for &(src, tgt) in edges {
        let (from, to) = if reversed { (tgt, src) } else { (src, tgt) };
        degree.entry(from).or_insert(0);
        *degree.entry(to).or_insert(0) += 1;
        adjacency.entry(from).or_default().push(to);
    }
    let mut queue: Vec<&str> = degree
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(n, _)| *n)
        .collect();
    let mut remaining: BTreeSet<&str> = degree.keys().copied().collect();
    while let Some(node) = queue.pop() {
        remaining.remove(node);
        for &next in adjacency.get(node).into_iter().flatten() {
            let d = degree.get_mut(next).expect("node seen in edge list");
            *d -= 1;
            if *d == 0 && remaining.contains(next) {
                queue.push(next);
            }
        }
    }
    remaining
}
