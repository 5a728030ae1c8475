//! DOT rendering of safety cases.
//!
//! Shape vocabulary: goals are boxes, strategies parallelograms,
//! solutions circles, contexts rounded boxes, and assumptions and
//! justifications ellipses with a trailing `A`/`J` marker in the label.
//! Supported-by edges get a solid filled arrowhead, in-context-of edges a
//! hollow one; those arrowhead choices are conventional, not mandated.
//! Decorators are kept as plain-DOT label suffixes (`◇` undeveloped,
//! `▽` uninstantiated) and a doubled border for off-diagram elements.

use crate::model::{Decorator, Diagnostic, ElementKind, RelationshipKind, SafetyCase};
use crate::validate::validate;

/// Rendering options.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DotOptions {
    /// Label wrap width in characters; 0 disables wrapping.
    pub wrap: usize,
    /// Render even when the case has validation errors.
    pub force: bool,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions {
            wrap: 30,
            force: false,
        }
    }
}

/// DOT-language text for one safety case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotDocument(String);

impl DotDocument {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Number of emitted node statements.
    pub fn node_count(&self) -> usize {
        self.0.lines().filter(|l| l.contains("[shape=")).count()
    }

    /// Number of emitted edge statements.
    pub fn edge_count(&self) -> usize {
        self.0.lines().filter(|l| l.contains(" -> ")).count()
    }
}

impl std::fmt::Display for DotDocument {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DotError {
    #[error("case has {} validation error(s); rerun with force to render anyway", .0.iter().filter(|d| d.is_error()).count())]
    InvalidCase(Vec<Diagnostic>),
}

/// Renders a case to DOT. Unless `force` is set, the case must validate
/// with no E-codes. Output is deterministic: nodes in element order, then
/// edges in relationship order.
pub fn to_dot(case: &SafetyCase, options: &DotOptions) -> Result<DotDocument, DotError> {
    if !options.force {
        let diagnostics = validate(case);
        if diagnostics.iter().any(Diagnostic::is_error) {
            return Err(DotError::InvalidCase(diagnostics));
        }
    }

    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", graph_name(case.title())));
    for element in case.elements() {
        let shape = match element.kind() {
            ElementKind::Goal => "shape=box",
            ElementKind::Strategy => "shape=parallelogram",
            ElementKind::Solution => "shape=circle",
            ElementKind::Context => "shape=box, style=rounded",
            ElementKind::Assumption | ElementKind::Justification => "shape=ellipse",
        };
        let peripheries = if element.has_decorator(Decorator::OffDiagram) {
            ", peripheries=2"
        } else {
            ""
        };
        let label = node_label(element.id(), element, options.wrap);
        out.push_str(&format!(
            "  {} [{}{}, label=\"{}\"];\n",
            element.id(),
            shape,
            peripheries,
            label
        ));
    }
    for rel in case.relationships() {
        let arrowhead = match rel.kind() {
            RelationshipKind::SupportedBy => "normal",
            RelationshipKind::InContextOf => "empty",
        };
        out.push_str(&format!(
            "  {} -> {} [arrowhead={}];\n",
            rel.source(),
            rel.target(),
            arrowhead
        ));
    }
    out.push_str("}\n");
    Ok(DotDocument(out))
}

fn graph_name(title: &str) -> String {
    let name: String = title
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { '_' })
        .collect();
    if name.is_empty() || name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        format!("safety_case{}{}", if name.is_empty() { "" } else { "_" }, name)
    } else {
        name
    }
}

fn node_label(id: &str, element: &crate::model::GsnElement, wrap: usize) -> String {
    let mut lines = vec![id.to_string()];
    lines.extend(wrap_words(element.text(), wrap));

    let mut markers: Vec<&str> = Vec::new();
    match element.kind() {
        ElementKind::Assumption => markers.push("A"),
        ElementKind::Justification => markers.push("J"),
        _ => {}
    }
    for decorator in element.decorators() {
        match decorator {
            Decorator::Undeveloped => markers.push("\u{25c7}"),   // ◇
            Decorator::Uninstantiated => markers.push("\u{25bd}"), // ▽
            Decorator::OffDiagram => {}                            // doubled border instead
        }
    }
    if !markers.is_empty() {
        let last = lines.last_mut().expect("label has at least the id line");
        for marker in markers {
            last.push(' ');
            last.push_str(marker);
        }
    }

    lines
        .iter()
        .map(|l| escape(l))
        .collect::<Vec<_>>()
        .join("\\n")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Greedy word wrap; words longer than the width get their own line.
fn wrap_words(text: &str, width: usize) -> Vec<String> {
    if width == 0 {
        return vec![text.to_string()];
    }
    let mut lines = Vec::new();
    let mut line = String::new();
    for word in text.split_whitespace() {
        if line.is_empty() {
            line = word.to_string();
        } else if line.chars().count() + 1 + word.chars().count() <= width {
            line.push(' ');
            line.push_str(word);
        } else {
            lines.push(std::mem::take(&mut line));
            line = word.to_string();
        }
    }
    if !line.is_empty() {
        lines.push(line);
    }
    lines
}
