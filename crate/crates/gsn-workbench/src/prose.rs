//! The `.gsn.txt` structured-prose format: strict parsing, lenient
//! extraction from free-form model output, and serialization.
//!
//! # Grammar (strict, frozen)
//!
//! ```text
//! case "<title>"                      # optional header, first line
//! <ID>: <text> [undeveloped]         # element; trailing decorator tags
//! <ID> supportedBy <ID>{, <ID>}      # relationships, forward refs ok
//! <ID> inContextOf <ID>{, <ID>}
//! ```
//!
//! Blank lines and `#` comments are ignored. Parse findings use the
//! P-codes: P1 malformed line, P2 duplicate element id, P3 unresolved
//! relationship endpoint, P4 unknown decorator tag, P5 empty document.
//! In strict mode any finding is an error and no case is produced; in
//! lenient mode findings are warnings and a (possibly empty) case is
//! always produced.
//!
//! Serialization is bit-exact: LF line endings, a single space after the
//! element colon, one blank line before the relationship section, and
//! consecutive relationships that share a source and kind merged onto one
//! line so that parsing the output reproduces the input case exactly.
//!
//! # Lenient extraction rules (frozen)
//!
//! Applied line by line; lines may carry a `-`/`*`/`•` bullet prefix:
//!
//! 1. `<ID> <connector> <ids…>` records relationships from an explicit
//!    source (`supported by`/`supportedBy`/`in context of`/`inContextOf`,
//!    any capitalization);
//! 2. `<ID>[:.-] <text>` declares an element, and when bulleted under a
//!    pending connector also attaches it to that connector's owner;
//! 3. a bare connector line starts a child list for the nearest
//!    preceding element; subsequent id-only lines attach to it;
//! 4. anything else is reported as a P1 warning.
//!
//! Duplicate ids keep their first declaration (P2), unresolved or
//! self-referential edges are dropped (P3/P1), and duplicate edges are
//! kept once.

use std::fmt;
use std::sync::LazyLock;

use regex::Regex;

use crate::model::{
    ends_with_tag_shape, Decorator, DiagCode, Diagnostic, ElementKind, GsnElement, ModelError,
    Relationship, RelationshipKind, SafetyCase, Subject,
};

/// Raw text of a structured-prose file, line endings normalized to LF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProseDocument {
    text: String,
}

impl ProseDocument {
    pub fn from_text(text: impl Into<String>) -> Self {
        let text = text.into().replace("\r\n", "\n").replace('\r', "\n");
        ProseDocument { text }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// 1-based numbered lines.
    pub fn lines(&self) -> impl Iterator<Item = (usize, &str)> {
        self.text.lines().enumerate().map(|(i, l)| (i + 1, l))
    }
}

impl fmt::Display for ProseDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Result of a parse: the case (absent after strict errors) plus all
/// findings.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseOutcome {
    pub case: Option<SafetyCase>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseOutcome {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }
}

/// Errors from [`serialize`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SerializeError {
    #[error("case title may not contain double quotes or line breaks")]
    InvalidTitle,
    #[error("element `{id}` text contains a line break")]
    MultilineText { id: String },
}

// ─── strict parsing ─────────────────────────────────────────────────────────

/// Parses a structured-prose document. Any P-finding is an error and
/// suppresses the case.
pub fn parse_strict(doc: &ProseDocument) -> ParseOutcome {
    let mut diagnostics: Vec<Diagnostic> = Vec::new();
    let mut title = String::new();
    let mut elements: Vec<GsnElement> = Vec::new();
    // (line, source, kind, target), declaration order; resolved at the end.
    let mut pending: Vec<(usize, String, RelationshipKind, String)> = Vec::new();
    let mut saw_content = false;

    for (line_no, raw) in doc.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let first_content = !saw_content;
        saw_content = true;

        if first_content && (line == "case" || line.starts_with("case ")) {
            match parse_header(line) {
                Some(t) => title = t,
                None => diagnostics.push(p_error(
                    DiagCode::P1,
                    Subject::Document,
                    "malformed header: expected `case \"<title>\"`",
                    line_no,
                )),
            }
            continue;
        }

        if let Some((head, rest)) = line.split_once(':') {
            let id = head.trim();
            if !ElementKind::is_valid_id(id) {
                diagnostics.push(p_error(
                    DiagCode::P1,
                    Subject::Document,
                    format!("`{id}` is not a valid element id"),
                    line_no,
                ));
                continue;
            }
            let (text, decorators) =
                strip_decorators_strict(rest, id, line_no, &mut diagnostics);
            match GsnElement::new(id, text) {
                Ok(mut element) => {
                    for d in decorators {
                        element.add_decorator(d);
                    }
                    elements.push(element);
                }
                Err(err) => diagnostics.push(p_error(
                    DiagCode::P1,
                    Subject::Element(id.to_string()),
                    err.to_string(),
                    line_no,
                )),
            }
            continue;
        }

        match parse_relationship_line(line) {
            Ok((source, kind, targets)) => {
                for target in targets {
                    if target == source {
                        diagnostics.push(p_error(
                            DiagCode::P1,
                            Subject::Element(source.clone()),
                            ModelError::SelfLoop { id: source.clone() }.to_string(),
                            line_no,
                        ));
                        continue;
                    }
                    pending.push((line_no, source.clone(), kind, target));
                }
            }
            Err(message) => {
                diagnostics.push(p_error(DiagCode::P1, Subject::Document, message, line_no))
            }
        }
    }

    if !saw_content {
        diagnostics.push(Diagnostic::new(
            DiagCode::P5,
            Subject::Document,
            "empty document: no header, elements, or relationships",
        ));
    }

    let mut case = SafetyCase::new(title);
    for element in elements {
        if case.element(element.id()).is_some() {
            diagnostics.push(Diagnostic::new(
                DiagCode::P2,
                Subject::Element(element.id().to_string()),
                format!("element id `{}` is already declared", element.id()),
            ));
            continue;
        }
        case.push_element(element);
    }
    for (line_no, source, kind, target) in pending {
        let unresolved: Vec<&str> = [source.as_str(), target.as_str()]
            .into_iter()
            .filter(|id| case.element(id).is_none())
            .collect();
        if !unresolved.is_empty() {
            diagnostics.push(p_error(
                DiagCode::P3,
                Subject::Relationship {
                    source: source.clone(),
                    target: target.clone(),
                },
                format!("relationship endpoint(s) never declared: {}", unresolved.join(", ")),
                line_no,
            ));
            continue;
        }
        let rel = Relationship::new(source, target, kind).expect("endpoints pre-checked");
        case.push_relationship(rel);
    }

    let case = if diagnostics.is_empty() {
        Some(case)
    } else {
        None
    };
    ParseOutcome { case, diagnostics }
}

fn p_error(
    code: DiagCode,
    subject: Subject,
    message: impl Into<String>,
    line: usize,
) -> Diagnostic {
    Diagnostic::new(code, subject, message).at_line(line)
}

fn parse_header(line: &str) -> Option<String> {
    let rest = line.strip_prefix("case")?.trim_start();
    let inner = rest.strip_prefix('"')?.strip_suffix('"')?;
    if inner.contains('"') {
        return None;
    }
    Some(inner.to_string())
}

fn parse_relationship_line(
    line: &str,
) -> Result<(String, RelationshipKind, Vec<String>), String> {
    let (source, rest) = line
        .split_once(char::is_whitespace)
        .ok_or_else(|| "malformed line".to_string())?;
    if !ElementKind::is_valid_id(source) {
        return Err(format!("`{source}` is not a valid element id"));
    }
    let rest = rest.trim_start();
    let (keyword, targets_part) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| "relationship line lists no targets".to_string())?;
    let kind = match keyword {
        "supportedBy" => RelationshipKind::SupportedBy,
        "inContextOf" => RelationshipKind::InContextOf,
        other => return Err(format!("unknown relationship keyword `{other}`")),
    };
    let mut targets = Vec::new();
    for token in targets_part.split(',') {
        let id = token.trim();
        if id.is_empty() || !ElementKind::is_valid_id(id) {
            return Err(format!("`{}` is not a valid element id", token.trim()));
        }
        targets.push(id.to_string());
    }
    if targets.is_empty() {
        return Err("relationship line lists no targets".to_string());
    }
    Ok((source.to_string(), kind, targets))
}

/// Strips trailing decorator tags. Unknown tag-shaped suffixes produce P4
/// and are stripped as well so later tags are still recognized.
fn strip_decorators_strict(
    raw: &str,
    id: &str,
    line_no: usize,
    diagnostics: &mut Vec<Diagnostic>,
) -> (String, Vec<Decorator>) {
    let mut text = raw.trim().to_string();
    let mut decorators = Vec::new();
    while ends_with_tag_shape(&text) {
        let open = text.rfind('[').expect("tag shape has an opening bracket");
        let tag = text[open + 1..text.len() - 1].to_string();
        match Decorator::from_tag(&tag) {
            Some(d) => decorators.push(d),
            None => diagnostics.push(p_error(
                DiagCode::P4,
                Subject::Element(id.to_string()),
                format!("unknown decorator tag `[{tag}]`"),
                line_no,
            )),
        }
        text.truncate(open);
        text = text.trim_end().to_string();
    }
    (text, decorators)
}

// ─── lenient extraction ─────────────────────────────────────────────────────

static HEADER_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r#"^\s*case\s+"(.*)"\s*$"#).unwrap());

static ELEMENT_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^\s*([-*•]\s*)?((?:Sn|G|S|C|A|J)\d+)\s*[:.\-]\s*(.+?)\s*$").unwrap()
});

static EDGE_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^\s*(?:[-*•]\s*)?((?:Sn|G|S|C|A|J)\d+)\s+((?i:supported\s*by|in\s*context\s*of))\s*[:\-]?\s*(.*)$")
        .unwrap()
});

static CONNECTOR_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^\s*(?:[-*•]\s*)?((?i:supported\s*by|in\s*context\s*of))\s*[:\-]?\s*(.*)$")
        .unwrap()
});

static BARE_ID_RE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^\s*(?:[-*•]\s*)?((?:Sn|G|S|C|A|J)\d+)\s*[:.]?\s*$").unwrap()
});

static ID_TOKEN_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\b(?:Sn|G|S|C|A|J)\d+\b").unwrap());

fn connector_kind(text: &str) -> RelationshipKind {
    let folded: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase();
    if folded.starts_with("supported") {
        RelationshipKind::SupportedBy
    } else {
        RelationshipKind::InContextOf
    }
}

/// Extracts a safety case from free-form text. Always produces a case;
/// every finding is a warning.
pub fn parse_lenient(text: &str) -> ParseOutcome {
    let doc = ProseDocument::from_text(text);
    let mut diagnostics: Vec<Diagnostic> = Vec::new();
    let mut title = String::new();
    let mut elements: Vec<GsnElement> = Vec::new();
    let mut declared: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, String, RelationshipKind, String)> = Vec::new();
    let mut edge_seen: std::collections::BTreeSet<(String, String, RelationshipKind)> =
        std::collections::BTreeSet::new();
    let mut current: Option<String> = None;
    let mut pending: Option<(String, RelationshipKind)> = None;
    let mut saw_content = false;

    let mut add_edge = |line_no: usize,
                        source: &str,
                        kind: RelationshipKind,
                        target: &str,
                        diagnostics: &mut Vec<Diagnostic>,
                        edges: &mut Vec<(usize, String, RelationshipKind, String)>| {
        if source == target {
            diagnostics.push(
                Diagnostic::warning(
                    DiagCode::P1,
                    Subject::Element(source.to_string()),
                    ModelError::SelfLoop {
                        id: source.to_string(),
                    }
                    .to_string(),
                )
                .at_line(line_no),
            );
            return;
        }
        if edge_seen.insert((source.to_string(), target.to_string(), kind)) {
            edges.push((line_no, source.to_string(), kind, target.to_string()));
        }
    };

    for (line_no, raw) in doc.lines() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let first_content = !saw_content;
        saw_content = true;

        if first_content {
            if let Some(caps) = HEADER_RE.captures(raw) {
                title = caps[1].to_string();
                continue;
            }
        }

        if let Some(caps) = EDGE_RE.captures(raw) {
            let source = caps[1].to_string();
            let kind = connector_kind(&caps[2]);
            let targets: Vec<String> = ID_TOKEN_RE
                .find_iter(&caps[3])
                .map(|m| m.as_str().to_string())
                .collect();
            for target in &targets {
                add_edge(line_no, &source, kind, target, &mut diagnostics, &mut edges);
            }
            current = Some(source.clone());
            pending = Some((source, kind));
            continue;
        }

        if let Some(caps) = ELEMENT_RE.captures(raw) {
            let bulleted = caps.get(1).is_some();
            let id = caps[2].to_string();
            let raw_text = caps[3].to_string();
            if bulleted {
                if let Some((owner, kind)) = pending.clone() {
                    add_edge(line_no, &owner, kind, &id, &mut diagnostics, &mut edges);
                }
            } else {
                pending = None;
            }
            let (text, decorators) = strip_known_tags(&raw_text);
            match lenient_element(&id, &text) {
                Ok(mut element) => {
                    for d in decorators {
                        element.add_decorator(d);
                    }
                    if declared.iter().any(|d| d == &id) {
                        diagnostics.push(
                            Diagnostic::warning(
                                DiagCode::P2,
                                Subject::Element(id.clone()),
                                format!("element id `{id}` is already declared; keeping the first"),
                            )
                            .at_line(line_no),
                        );
                    } else {
                        declared.push(id.clone());
                        elements.push(element);
                    }
                    current = Some(id);
                }
                Err(err) => diagnostics.push(
                    Diagnostic::warning(DiagCode::P1, Subject::Element(id.clone()), err.to_string())
                        .at_line(line_no),
                ),
            }
            continue;
        }

        if let Some(caps) = CONNECTOR_RE.captures(raw) {
            let kind = connector_kind(&caps[1]);
            match current.clone() {
                Some(owner) => {
                    for m in ID_TOKEN_RE.find_iter(&caps[2]) {
                        add_edge(line_no, &owner, kind, m.as_str(), &mut diagnostics, &mut edges);
                    }
                    pending = Some((owner, kind));
                }
                None => diagnostics.push(
                    Diagnostic::warning(
                        DiagCode::P1,
                        Subject::Document,
                        "relationship line with no preceding element",
                    )
                    .at_line(line_no),
                ),
            }
            continue;
        }

        if let Some(caps) = BARE_ID_RE.captures(raw) {
            let id = caps[1].to_string();
            match pending.clone() {
                Some((owner, kind)) => {
                    add_edge(line_no, &owner, kind, &id, &mut diagnostics, &mut edges)
                }
                None => diagnostics.push(
                    Diagnostic::warning(
                        DiagCode::P1,
                        Subject::Element(id),
                        "identifier with no preceding relationship line",
                    )
                    .at_line(line_no),
                ),
            }
            continue;
        }

        pending = None;
        diagnostics.push(
            Diagnostic::warning(
                DiagCode::P1,
                Subject::Document,
                format!("unrecognized line: {}", truncate(trimmed, 60)),
            )
            .at_line(line_no),
        );
    }

    if !saw_content {
        diagnostics.push(Diagnostic::warning(
            DiagCode::P5,
            Subject::Document,
            "empty document",
        ));
    }

    let mut case = SafetyCase::new(title);
    for element in elements {
        case.push_element(element);
    }
    for (line_no, source, kind, target) in edges {
        let unresolved: Vec<&str> = [source.as_str(), target.as_str()]
            .into_iter()
            .filter(|id| case.element(id).is_none())
            .collect();
        if !unresolved.is_empty() {
            diagnostics.push(
                Diagnostic::warning(
                    DiagCode::P3,
                    Subject::Relationship {
                        source: source.clone(),
                        target: target.clone(),
                    },
                    format!(
                        "dropping relationship: endpoint(s) never declared: {}",
                        unresolved.join(", ")
                    ),
                )
                .at_line(line_no),
            );
            continue;
        }
        case.push_relationship(Relationship::new(source, target, kind).expect("pre-checked"));
    }

    ParseOutcome {
        case: Some(case),
        diagnostics,
    }
}

/// Builds an element from extracted text, retrying once with all
/// tag-shaped suffixes removed when the text ends with one.
fn lenient_element(id: &str, text: &str) -> Result<GsnElement, ModelError> {
    match GsnElement::new(id, text) {
        Err(ModelError::ReservedTextSuffix { .. }) => {
            let mut t = text.trim_end().to_string();
            while ends_with_tag_shape(&t) {
                let open = t.rfind('[').expect("tag shape has an opening bracket");
                t.truncate(open);
                t = t.trim_end().to_string();
            }
            GsnElement::new(id, t)
        }
        other => other,
    }
}

fn strip_known_tags(raw: &str) -> (String, Vec<Decorator>) {
    let mut text = raw.trim().to_string();
    let mut decorators = Vec::new();
    while ends_with_tag_shape(&text) {
        let open = text.rfind('[').expect("tag shape has an opening bracket");
        let tag = &text[open + 1..text.len() - 1];
        match Decorator::from_tag(tag) {
            Some(d) => {
                decorators.push(d);
                text.truncate(open);
                text = text.trim_end().to_string();
            }
            None => break,
        }
    }
    (text, decorators)
}

fn truncate(s: &str, max: usize) -> String {
    if s.chars().count() <= max {
        s.to_string()
    } else {
        let cut: String = s.chars().take(max).collect();
        format!("{cut}…")
    }
}

// ─── serialization ──────────────────────────────────────────────────────────

/// Serializes a case to structured prose. Output re-parses (strictly) to
/// an equal case; byte output is deterministic for equal inputs.
pub fn serialize(case: &SafetyCase) -> Result<ProseDocument, SerializeError> {
    let title = case.title();
    if title.contains('"') || title.contains('\n') || title.contains('\r') {
        return Err(SerializeError::InvalidTitle);
    }
    let mut out = String::new();
    out.push_str(&format!("case \"{title}\"\n"));
    for element in case.elements() {
        if element.text().contains('\n') {
            return Err(SerializeError::MultilineText {
                id: element.id().to_string(),
            });
        }
        out.push_str(element.id());
        out.push_str(": ");
        out.push_str(element.text());
        for decorator in element.decorators() {
            out.push_str(&format!(" [{}]", decorator.tag()));
        }
        out.push('\n');
    }
    if !case.relationships().is_empty() {
        out.push('\n');
        let mut group: Option<(&str, RelationshipKind)> = None;
        for rel in case.relationships() {
            let key = (rel.source(), rel.kind());
            if group == Some(key) {
                out.push_str(", ");
                out.push_str(rel.target());
            } else {
                if group.is_some() {
                    out.push('\n');
                }
                out.push_str(&format!(
                    "{} {} {}",
                    rel.source(),
                    rel.kind().keyword(),
                    rel.target()
                ));
                group = Some(key);
            }
        }
        out.push('\n');
    }
    Ok(ProseDocument::from_text(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Severity;

    fn strict(text: &str) -> ParseOutcome {
        parse_strict(&ProseDocument::from_text(text))
    }

    #[test]
    fn parses_elements_and_context_edge() {
        let outcome = strict(
            "G1: The map system is acceptably safe to operate.\nC1: Definition of the map system\nG1 inContextOf C1",
        );
        assert!(outcome.diagnostics.is_empty());
        let case = outcome.case.unwrap();
        assert_eq!(case.elements().len(), 2);
        assert_eq!(case.relationships().len(), 1);
        assert_eq!(case.relationships()[0].kind(), RelationshipKind::InContextOf);
    }

    #[test]
    fn empty_document_is_p5() {
        let outcome = strict("");
        assert_eq!(outcome.case, None);
        assert_eq!(outcome.diagnostics.len(), 1);
        assert_eq!(outcome.diagnostics[0].code, DiagCode::P5);
    }

    #[test]
    fn sn_prefix_wins_over_s() {
        let outcome = strict("Sn1: Execution of the safety rules");
        let case = outcome.case.unwrap();
        assert_eq!(case.elements()[0].kind(), ElementKind::Solution);
    }

    #[test]
    fn header_sets_title_and_round_trips() {
        let outcome = strict("case \"Demo\"\nG1: claim is held [undeveloped]");
        let case = outcome.case.unwrap();
        assert_eq!(case.title(), "Demo");
        assert!(case.elements()[0].has_decorator(Decorator::Undeveloped));
        let text = serialize(&case).unwrap();
        assert_eq!(
            text.as_str(),
            "case \"Demo\"\nG1: claim is held [undeveloped]\n"
        );
        assert_eq!(parse_strict(&text).case.unwrap(), case);
    }

    #[test]
    fn forward_references_resolve_and_unresolved_is_p3() {
        let ok = strict("G1: claim is held\nG1 supportedBy G2\nG2: sub claim is held");
        assert!(ok.case.is_some());
        let bad = strict("G1: claim is held\nG1 supportedBy G9");
        assert_eq!(bad.case, None);
        assert_eq!(bad.diagnostics[0].code, DiagCode::P3);
        assert_eq!(bad.diagnostics[0].line, Some(2));
    }

    #[test]
    fn duplicate_id_is_p2() {
        let outcome = strict("G1: claim is held\nG1: another claim is held");
        assert_eq!(outcome.case, None);
        assert!(outcome.diagnostics.iter().any(|d| d.code == DiagCode::P2));
    }

    #[test]
    fn unknown_decorator_is_p4() {
        let outcome = strict("G1: claim is held [undevelopd]");
        assert_eq!(outcome.case, None);
        assert!(outcome.diagnostics.iter().any(|d| d.code == DiagCode::P4));
    }

    #[test]
    fn malformed_lines_are_p1() {
        for text in [
            "not a line",
            "G1 frobs G2",
            "X1: bad prefix",
            "G1 supportedBy",
            "G1 supportedBy G1",
        ] {
            let outcome = strict(&format!("G9: anchor claim is held\n{text}"));
            assert!(
                outcome.diagnostics.iter().any(|d| d.code == DiagCode::P1),
                "expected P1 for {text:?}, got {:?}",
                outcome.diagnostics
            );
        }
    }

    #[test]
    fn crlf_input_is_normalized() {
        let outcome = strict("case \"x\"\r\nG1: claim is held\r\n");
        assert_eq!(outcome.case.unwrap().elements().len(), 1);
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let outcome = strict("# heading\n\nG1: claim is held\n\n# done\n");
        assert!(outcome.case.is_some());
    }

    #[test]
    fn multi_target_lines_expand_in_order() {
        let outcome = strict(
            "G1: claim is held\nG2: sub one is held\nG3: sub two is held\nG1 supportedBy G2, G3",
        );
        let case = outcome.case.unwrap();
        let pairs: Vec<(&str, &str)> = case
            .relationships()
            .iter()
            .map(|r| (r.source(), r.target()))
            .collect();
        assert_eq!(pairs, vec![("G1", "G2"), ("G1", "G3")]);
    }

    #[test]
    fn lenient_extracts_connector_lists() {
        let outcome = parse_lenient(
            "G1: Top claim\n  supported by: G2, S1\nG2: Sub claim\nS1: Argument over hazards",
        );
        let case = outcome.case.unwrap();
        assert_eq!(case.elements().len(), 3);
        assert_eq!(case.relationships().len(), 2);
        assert!(case
            .relationships()
            .iter()
            .all(|r| r.kind() == RelationshipKind::SupportedBy && r.source() == "G1"));
    }

    #[test]
    fn lenient_is_total_on_chatter() {
        let outcome = parse_lenient("Hello, here is your safety case!");
        let case = outcome.case.unwrap();
        assert!(case.elements().is_empty());
        assert_eq!(outcome.diagnostics.len(), 1);
        assert_eq!(outcome.diagnostics[0].code, DiagCode::P1);
        assert_eq!(outcome.diagnostics[0].severity, Severity::Warning);
    }

    #[test]
    fn lenient_reads_generation_style_output() {
        let text = "Sure! Here is the safety case in GSN format:\n\n\
                    - G1: Compliance with all relevant safety standards and regulations.\n\
                    - S1: Argument based on compliance evidence\n\
                    - G1 supported by S1\n\
                    - S1 supportedBy: G2\n\
                    - G2: Machine design adheres to safety standards\n";
        let outcome = parse_lenient(text);
        let case = outcome.case.unwrap();
        assert_eq!(
            case.element("G1").unwrap().text(),
            "Compliance with all relevant safety standards and regulations."
        );
        assert_eq!(case.elements().len(), 3);
        assert_eq!(case.relationships().len(), 2);
    }

    #[test]
    fn lenient_bulleted_children_attach_to_pending_connector() {
        let text = "G1: Top claim\nsupported by:\n- G2: First sub claim\n- Sn1: Test evidence\n";
        let outcome = parse_lenient(text);
        let case = outcome.case.unwrap();
        let pairs: Vec<(&str, &str)> = case
            .relationships()
            .iter()
            .map(|r| (r.source(), r.target()))
            .collect();
        assert_eq!(pairs, vec![("G1", "G2"), ("G1", "Sn1")]);
    }

    #[test]
    fn lenient_drops_unresolved_and_duplicate_edges() {
        let text = "G1: Top claim\nG1 supportedBy G2, G2, G9\nG2: Sub claim\n";
        let outcome = parse_lenient(text);
        let case = outcome.case.unwrap();
        assert_eq!(case.relationships().len(), 1);
        assert!(outcome.diagnostics.iter().any(|d| d.code == DiagCode::P3));
    }

    #[test]
    fn lenient_keeps_first_duplicate_declaration() {
        let outcome = parse_lenient("G1: first claim\nG1: second claim\n");
        let case = outcome.case.unwrap();
        assert_eq!(case.elements().len(), 1);
        assert_eq!(case.element("G1").unwrap().text(), "first claim");
        assert!(outcome.diagnostics.iter().any(|d| d.code == DiagCode::P2));
    }

    #[test]
    fn serialize_groups_consecutive_runs_only() {
        let mut case = SafetyCase::new("t");
        for (id, text) in [
            ("G1", "top claim is held"),
            ("G2", "sub claim is held"),
            ("C1", "Scope of the analysis"),
            ("G3", "third claim is held"),
        ] {
            case.push_element(GsnElement::new(id, text).unwrap());
        }
        for (s, t, k) in [
            ("G1", "G2", RelationshipKind::SupportedBy),
            ("G1", "C1", RelationshipKind::InContextOf),
            ("G1", "G3", RelationshipKind::SupportedBy),
        ] {
            case.push_relationship(Relationship::new(s, t, k).unwrap());
        }
        let text = serialize(&case).unwrap();
        assert!(text.as_str().contains("G1 supportedBy G2\n"));
        assert!(text.as_str().contains("G1 inContextOf C1\n"));
        assert!(text.as_str().contains("G1 supportedBy G3\n"));
        // Re-parsing preserves the original relationship order.
        assert_eq!(parse_strict(&text).case.unwrap(), case);
    }

    #[test]
    fn serialize_rejects_bad_titles() {
        let case = SafetyCase::new("has \"quotes\"");
        assert_eq!(serialize(&case), Err(SerializeError::InvalidTitle));
    }

    mod totality {
        use proptest::prelude::*;

        use crate::prose::{parse_lenient, parse_strict, ProseDocument};

        proptest! {
            #[test]
            fn parsing_never_panics(text in r"(?s).{0,400}") {
                let _ = parse_strict(&ProseDocument::from_text(text.clone()));
                let outcome = parse_lenient(&text);
                prop_assert!(outcome.case.is_some());
            }
        }
    }
}
