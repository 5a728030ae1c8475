//! Shallow text-form lints for element statements.
//!
//! Goals, assumptions, and justifications should read as claims (a noun
//! phrase plus a verb phrase); contexts and solutions should be noun
//! phrases. Full grammatical analysis is out of scope, so the checks here
//! are frozen lexicon heuristics that only ever produce warnings:
//!
//! - a token is *verb-like* when it appears in [`AUX_AND_MODALS`] or
//!   [`COMMON_VERBS`], or when it ends in `-s`/`-ed` (four letters or
//!   more) or `-ing` (five or more) and is not listed in
//!   [`NOUN_EXCEPTIONS`];
//! - W3 flags a goal/assumption/justification whose text has fewer than
//!   two word tokens or no verb-like token;
//! - W4 flags a context/solution whose text contains an auxiliary or
//!   modal, which makes it read as a full clause;
//! - strategy texts are free-form and never flagged.
//!
//! Tokenization is lowercase, split on non-alphanumeric characters.

use crate::model::{DiagCode, Diagnostic, ElementKind, GsnElement, Subject};

/// Auxiliaries and modals. Any of these in a context or solution text
/// triggers W4; in claim positions they count as the required verb.
pub const AUX_AND_MODALS: &[&str] = &[
    "am", "are", "be", "been", "being", "can", "could", "did", "do", "does", "had", "has", "have",
    "is", "may", "might", "must", "shall", "should", "was", "were", "will", "would",
];

/// Common claim verbs seen in safety arguments, base and third-person
/// forms that the suffix rule alone would miss or that read better listed.
pub const COMMON_VERBS: &[&str] = &[
    "achieve", "achieves", "applies", "apply", "argue", "argues", "complies", "comply",
    "demonstrate", "demonstrates", "eliminate", "eliminates", "ensure", "ensures", "exist",
    "exists", "hold", "holds", "meet", "meets", "mitigate", "mitigates", "operate", "operates",
    "prevent", "prevents", "provide", "provides", "remain", "remains", "satisfies", "satisfy",
    "show", "shows", "support", "supports",
];

/// Tokens that end in a verb-ish suffix but are nouns or function words in
/// this domain, so the suffix rule must not count them.
pub const NOUN_EXCEPTIONS: &[&str] = &[
    "analyses", "analysis", "arguments", "assumptions", "basis", "cases", "components",
    "conditions", "contexts", "documents", "during", "engineering", "factors", "findings",
    "functions", "goals", "hazards", "justifications", "limits", "manuals", "microphones",
    "monitoring", "parameters", "procedures", "process", "processing", "recordings", "records",
    "regulations", "reports", "requirements", "results", "roads", "rules", "settings", "signals",
    "solutions", "standards", "statistics", "status", "strategies", "surfaces", "systems",
    "tests", "things", "this", "thus", "training", "vehicles",
];

fn tokens(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
        .collect()
}

fn in_sorted(list: &[&str], token: &str) -> bool {
    list.binary_search(&token).is_ok()
}

fn is_verb_like(token: &str) -> bool {
    if in_sorted(AUX_AND_MODALS, token) || in_sorted(COMMON_VERBS, token) {
        return true;
    }
    if in_sorted(NOUN_EXCEPTIONS, token) {
        return false;
    }
    let n = token.len();
    (n >= 4 && (token.ends_with('s') || token.ends_with("ed")))
        || (n >= 5 && token.ends_with("ing"))
}

/// Applies the W3/W4 text-form lints to a single element. Deterministic;
/// returns at most one diagnostic.
pub fn semantic_lint(element: &GsnElement) -> Vec<Diagnostic> {
    let toks = tokens(element.text());
    let mut out = Vec::new();
    match element.kind() {
        ElementKind::Goal | ElementKind::Assumption | ElementKind::Justification => {
            let has_verb = toks.iter().any(|t| is_verb_like(t));
            if toks.len() < 2 || !has_verb {
                out.push(Diagnostic::new(
                    DiagCode::W3,
                    Subject::Element(element.id().to_string()),
                    format!(
                        "{} text does not read as a claim; expected at least two words including a verb",
                        element.kind()
                    ),
                ));
            }
        }
        ElementKind::Context | ElementKind::Solution => {
            if let Some(aux) = toks.iter().find(|t| in_sorted(AUX_AND_MODALS, t)) {
                out.push(Diagnostic::new(
                    DiagCode::W4,
                    Subject::Element(element.id().to_string()),
                    format!(
                        "{} text reads as a full clause (contains `{aux}`); expected a noun phrase",
                        element.kind()
                    ),
                ));
            }
        }
        ElementKind::Strategy => {}
    }
    out
}
