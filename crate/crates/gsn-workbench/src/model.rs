//! Core GSN domain types: element and relationship kinds, decorators,
//! elements, safety cases, and the diagnostic vocabulary shared by the
//! parser and the validator.
//!
//! All types are immutable after construction and contain no interior
//! mutability, so they can be shared freely across threads.

use std::collections::BTreeSet;
use std::fmt;

/// The six core GSN element kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementKind {
    Goal,
    Strategy,
    Solution,
    Context,
    Assumption,
    Justification,
}

impl ElementKind {
    /// Every kind, in canonical order.
    pub const ALL: [ElementKind; 6] = [
        ElementKind::Goal,
        ElementKind::Strategy,
        ElementKind::Solution,
        ElementKind::Context,
        ElementKind::Assumption,
        ElementKind::Justification,
    ];

    /// The id prefix for this kind (`G`, `S`, `Sn`, `C`, `A`, `J`).
    pub fn id_prefix(self) -> &'static str {
        match self {
            ElementKind::Goal => "G",
            ElementKind::Strategy => "S",
            ElementKind::Solution => "Sn",
            ElementKind::Context => "C",
            ElementKind::Assumption => "A",
            ElementKind::Justification => "J",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ElementKind::Goal => "goal",
            ElementKind::Strategy => "strategy",
            ElementKind::Solution => "solution",
            ElementKind::Context => "context",
            ElementKind::Assumption => "assumption",
            ElementKind::Justification => "justification",
        }
    }

    /// Derives the kind from an element id. The `Sn` prefix is tested
    /// before `S` so that solutions are never mistaken for strategies.
    /// The numeric suffix must be a positive integer.
    pub fn from_id(id: &str) -> Result<ElementKind, ModelError> {
        let bad = || ModelError::InvalidId { id: id.to_string() };
        let (kind, digits) = if let Some(rest) = id.strip_prefix("Sn") {
            (ElementKind::Solution, rest)
        } else if let Some(rest) = id.strip_prefix('G') {
            (ElementKind::Goal, rest)
        } else if let Some(rest) = id.strip_prefix('S') {
            (ElementKind::Strategy, rest)
        } else if let Some(rest) = id.strip_prefix('C') {
            (ElementKind::Context, rest)
        } else if let Some(rest) = id.strip_prefix('A') {
            (ElementKind::Assumption, rest)
        } else if let Some(rest) = id.strip_prefix('J') {
            (ElementKind::Justification, rest)
        } else {
            return Err(bad());
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        match digits.parse::<u64>() {
            Ok(n) if n >= 1 => Ok(kind),
            _ => Err(bad()),
        }
    }

    /// True when `id` is a well-formed element id of any kind.
    pub fn is_valid_id(id: &str) -> bool {
        ElementKind::from_id(id).is_ok()
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The two GSN relationship kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationshipKind {
    SupportedBy,
    InContextOf,
}

impl RelationshipKind {
    pub const ALL: [RelationshipKind; 2] =
        [RelationshipKind::SupportedBy, RelationshipKind::InContextOf];

    /// The keyword used on relationship lines in structured prose.
    pub fn keyword(self) -> &'static str {
        match self {
            RelationshipKind::SupportedBy => "supportedBy",
            RelationshipKind::InContextOf => "inContextOf",
        }
    }
}

impl fmt::Display for RelationshipKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Annotations that can decorate any GSN element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decorator {
    Undeveloped,
    Uninstantiated,
    OffDiagram,
}

impl Decorator {
    pub const ALL: [Decorator; 3] = [
        Decorator::Undeveloped,
        Decorator::Uninstantiated,
        Decorator::OffDiagram,
    ];

    /// The bracketed tag spelling used in structured prose.
    pub fn tag(self) -> &'static str {
        match self {
            Decorator::Undeveloped => "undeveloped",
            Decorator::Uninstantiated => "uninstantiated",
            Decorator::OffDiagram => "off-diagram",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Decorator> {
        Decorator::ALL.into_iter().find(|d| d.tag() == tag)
    }
}

/// Errors raised when constructing domain values.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid element id `{id}`: expected a kind prefix (G, S, Sn, C, A, J) followed by a positive integer")]
    InvalidId { id: String },
    #[error("element `{id}` has empty text")]
    EmptyText { id: String },
    #[error("element `{id}` text contains a line break")]
    MultilineText { id: String },
    #[error("element `{id}` text ends with a bracketed tag; trailing tags are reserved for decorators")]
    ReservedTextSuffix { id: String },
    #[error("relationship source and target are both `{id}`")]
    SelfLoop { id: String },
}

/// True when `text` ends with something shaped like a decorator tag
/// (`[lowercase-word]`), known or not.
pub(crate) fn ends_with_tag_shape(text: &str) -> bool {
    let t = text.trim_end();
    if !t.ends_with(']') {
        return false;
    }
    match t.rfind('[') {
        Some(open) => {
            let inner = &t[open + 1..t.len() - 1];
            !inner.is_empty()
                && inner.bytes().next().is_some_and(|b| b.is_ascii_lowercase())
                && inner.bytes().all(|b| b.is_ascii_lowercase() || b == b'-')
        }
        None => false,
    }
}

/// One GSN element. The kind is derived from the id prefix; the text is a
/// single non-empty line with surrounding whitespace trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsnElement {
    id: String,
    kind: ElementKind,
    text: String,
    decorators: BTreeSet<Decorator>,
}

impl GsnElement {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Result<Self, ModelError> {
        let id = id.into();
        let kind = ElementKind::from_id(&id)?;
        let text = text.into().trim().to_string();
        if text.is_empty() {
            return Err(ModelError::EmptyText { id });
        }
        if text.contains('\n') || text.contains('\r') {
            return Err(ModelError::MultilineText { id });
        }
        if ends_with_tag_shape(&text) {
            return Err(ModelError::ReservedTextSuffix { id });
        }
        Ok(GsnElement {
            id,
            kind,
            text,
            decorators: BTreeSet::new(),
        })
    }

    pub fn with_decorator(mut self, decorator: Decorator) -> Self {
        self.decorators.insert(decorator);
        self
    }

    pub fn add_decorator(&mut self, decorator: Decorator) {
        self.decorators.insert(decorator);
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn decorators(&self) -> impl Iterator<Item = Decorator> + '_ {
        self.decorators.iter().copied()
    }

    pub fn has_decorator(&self, decorator: Decorator) -> bool {
        self.decorators.contains(&decorator)
    }
}

/// A typed edge between two elements, identified by their ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relationship {
    source: String,
    target: String,
    kind: RelationshipKind,
}

impl Relationship {
    pub fn new(
        source: impl Into<String>,
        target: impl Into<String>,
        kind: RelationshipKind,
    ) -> Result<Self, ModelError> {
        let source = source.into();
        let target = target.into();
        ElementKind::from_id(&source)?;
        ElementKind::from_id(&target)?;
        if source == target {
            return Err(ModelError::SelfLoop { id: source });
        }
        Ok(Relationship {
            source,
            target,
            kind,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn kind(&self) -> RelationshipKind {
        self.kind
    }
}

/// A safety case: a titled, ordered collection of elements and
/// relationships. Global well-formedness (unique ids, resolvable
/// endpoints, legal connections) is checked by the validator rather than
/// enforced here, so that imperfect cases extracted from free-form text
/// can still be represented.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SafetyCase {
    title: String,
    elements: Vec<GsnElement>,
    relationships: Vec<Relationship>,
}

impl SafetyCase {
    pub fn new(title: impl Into<String>) -> Self {
        SafetyCase {
            title: title.into(),
            elements: Vec::new(),
            relationships: Vec::new(),
        }
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn set_title(&mut self, title: impl Into<String>) {
        self.title = title.into();
    }

    pub fn push_element(&mut self, element: GsnElement) {
        self.elements.push(element);
    }

    pub fn push_relationship(&mut self, relationship: Relationship) {
        self.relationships.push(relationship);
    }

    pub fn elements(&self) -> &[GsnElement] {
        &self.elements
    }

    pub fn relationships(&self) -> &[Relationship] {
        &self.relationships
    }

    /// First element with the given id, if any.
    pub fn element(&self, id: &str) -> Option<&GsnElement> {
        self.elements.iter().find(|e| e.id() == id)
    }

    /// The unique goal with no incoming supported-by edge, or `None` when
    /// zero or several candidates exist.
    pub fn root_of(&self) -> Option<&str> {
        let supported: BTreeSet<&str> = self
            .relationships
            .iter()
            .filter(|r| r.kind() == RelationshipKind::SupportedBy)
            .map(|r| r.target())
            .collect();
        let mut roots = self
            .elements
            .iter()
            .filter(|e| e.kind() == ElementKind::Goal && !supported.contains(e.id()))
            .map(|e| e.id());
        match (roots.next(), roots.next()) {
            (Some(root), None) => Some(root),
            _ => None,
        }
    }
}

/// Diagnostic severity. Errors make a case unusable for rendering and
/// generation; warnings are advice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
            Severity::Warning => f.write_str("warning"),
        }
    }
}

/// Diagnostic codes. E-codes are always errors and W-codes always
/// warnings; P-codes come from parsing and are errors in strict mode but
/// warnings in lenient mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagCode {
    /// Relationship endpoint references an unknown element id.
    E1,
    /// Duplicate element id.
    E2,
    /// Connection not allowed by the structural matrix.
    E3,
    /// Directed cycle in the supported-by subgraph.
    E4,
    /// Root-goal count differs from one.
    E5,
    /// Solution/context/assumption/justification with an outgoing relationship.
    E6,
    /// Leaf goal with no solution child and no `undeveloped` decorator.
    W1,
    /// Strategy with no supporting goal and no `undeveloped` decorator.
    W2,
    /// Goal/assumption/justification text does not read as a claim.
    W3,
    /// Context/solution text reads as a full clause instead of a noun phrase.
    W4,
    /// Malformed line.
    P1,
    /// Duplicate element declaration.
    P2,
    /// Unresolved relationship endpoint.
    P3,
    /// Unknown decorator tag.
    P4,
    /// Empty document.
    P5,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::E1 => "E1",
            DiagCode::E2 => "E2",
            DiagCode::E3 => "E3",
            DiagCode::E4 => "E4",
            DiagCode::E5 => "E5",
            DiagCode::E6 => "E6",
            DiagCode::W1 => "W1",
            DiagCode::W2 => "W2",
            DiagCode::W3 => "W3",
            DiagCode::W4 => "W4",
            DiagCode::P1 => "P1",
            DiagCode::P2 => "P2",
            DiagCode::P3 => "P3",
            DiagCode::P4 => "P4",
            DiagCode::P5 => "P5",
        }
    }

    /// The severity this code forces, if any. P-codes are mode-dependent.
    pub fn fixed_severity(self) -> Option<Severity> {
        match self {
            DiagCode::E1
            | DiagCode::E2
            | DiagCode::E3
            | DiagCode::E4
            | DiagCode::E5
            | DiagCode::E6 => Some(Severity::Error),
            DiagCode::W1 | DiagCode::W2 | DiagCode::W3 | DiagCode::W4 => Some(Severity::Warning),
            _ => None,
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a diagnostic is about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    /// The case as a whole.
    Case,
    /// A single element, by id.
    Element(String),
    /// A relationship, by endpoint ids.
    Relationship { source: String, target: String },
    /// The raw document (parse-level findings with no element to blame).
    Document,
}

impl Subject {
    /// Stable key used to order diagnostics with equal codes.
    pub(crate) fn sort_key(&self) -> String {
        match self {
            Subject::Case => String::new(),
            Subject::Document => String::new(),
            Subject::Element(id) => id.clone(),
            Subject::Relationship { source, target } => format!("{source}\u{1}{target}"),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Case => f.write_str("case"),
            Subject::Document => f.write_str("document"),
            Subject::Element(id) => f.write_str(id),
            Subject::Relationship { source, target } => write!(f, "{source} -> {target}"),
        }
    }
}

/// A single validator or parser finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagCode,
    pub severity: Severity,
    pub subject: Subject,
    pub message: String,
    /// 1-based line in the source document, for parser findings.
    pub line: Option<usize>,
}

impl Diagnostic {
    /// New diagnostic with the severity implied by the code. P-codes
    /// default to errors (the strict-parse reading); use [`Diagnostic::warning`]
    /// for the lenient reading.
    pub fn new(code: DiagCode, subject: Subject, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            severity: code.fixed_severity().unwrap_or(Severity::Error),
            subject,
            message: message.into(),
            line: None,
        }
    }

    /// New warning. Must not be used with E-codes.
    pub fn warning(code: DiagCode, subject: Subject, message: impl Into<String>) -> Self {
        debug_assert_ne!(code.fixed_severity(), Some(Severity::Error));
        Diagnostic {
            code,
            severity: Severity::Warning,
            subject,
            message: message.into(),
            line: None,
        }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(
                f,
                "{} {} (line {}): {} [{}]",
                self.code, self.severity, line, self.message, self.subject
            ),
            None => write!(
                f,
                "{} {}: {} [{}]",
                self.code, self.severity, self.message, self.subject
            ),
        }
    }
}
