//! The 19-question GSN proficiency battery and the session builder.
//!
//! Thirteen questions probe the structural and semantic rules and six ask
//! for small generated structures. Three of them carry the sample wording
//! from the source material ([`QuestionSource::Sourced`]); the rest are
//! reconstructions derived from the rule table and can be replaced with a
//! bank file (one `<category>|<question>` per line).

use std::fmt;
use std::str::FromStr;

use super::PipelineError;

/// Preparatory statement sent before the questions, pinning what "GSN"
/// means and asking for short answers.
pub const RQ1_PREPARATORY: &str = "You are an assistant that helps me answer questions about \
                                   Goal structuring notation (GSN). GSN always refers to Goal \
                                   Structuring Notation from this point. Your answers should be \
                                   concise and to the point. It should not be more than 2-3 lines";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuestionCategory {
    RuleStructural,
    RuleSemantic,
    Generation,
}

impl QuestionCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            QuestionCategory::RuleStructural => "rule-structural",
            QuestionCategory::RuleSemantic => "rule-semantic",
            QuestionCategory::Generation => "generation",
        }
    }

    /// True for the two rule-based categories.
    pub fn is_rule_based(self) -> bool {
        !matches!(self, QuestionCategory::Generation)
    }
}

impl fmt::Display for QuestionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QuestionCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rule-structural" => Ok(QuestionCategory::RuleStructural),
            "rule-semantic" => Ok(QuestionCategory::RuleSemantic),
            "generation" => Ok(QuestionCategory::Generation),
            other => Err(format!(
                "unknown question category `{other}` (expected rule-structural, rule-semantic, or generation)"
            )),
        }
    }
}

/// Whether a question's wording comes from the source material or was
/// reconstructed for this bank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuestionSource {
    Sourced,
    Reconstructed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Question {
    pub id: String,
    pub category: QuestionCategory,
    pub text: String,
    pub source: QuestionSource,
}

/// An ordered bank of proficiency questions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionBank {
    questions: Vec<Question>,
}

impl QuestionBank {
    /// The standard 19-question bank: 13 rule-based plus 6 generation-based.
    pub fn standard() -> Self {
        use QuestionCategory::*;
        use QuestionSource::*;
        let entries: [(&str, QuestionCategory, QuestionSource, &str); 19] = [
            (
                "rs1",
                RuleStructural,
                Sourced,
                "How many elements are present in a goal-structure and what are they? Can a parent element have multiple children?",
            ),
            (
                "rs2",
                RuleStructural,
                Reconstructed,
                "Which GSN elements can a goal be connected to, and by which relationship kinds?",
            ),
            (
                "rs3",
                RuleStructural,
                Reconstructed,
                "Can a strategy be connected directly to a solution?",
            ),
            (
                "rs4",
                RuleStructural,
                Reconstructed,
                "Which element kinds may an InContextOf relationship point to?",
            ),
            (
                "rs5",
                RuleStructural,
                Reconstructed,
                "Can a solution have outgoing connections to other GSN elements?",
            ),
            (
                "rs6",
                RuleStructural,
                Reconstructed,
                "What shape represents each of the six core GSN elements in a diagram?",
            ),
            (
                "rs7",
                RuleStructural,
                Reconstructed,
                "Which decorators can be applied to a GSN element and what does each of them mean?",
            ),
            (
                "sem1",
                RuleSemantic,
                Sourced,
                "Explain what a top-level claim is. Can it be supported by multiple sub-claims?",
            ),
            (
                "sem2",
                RuleSemantic,
                Reconstructed,
                "What textual form should the statement inside a goal element take?",
            ),
            (
                "sem3",
                RuleSemantic,
                Reconstructed,
                "What textual form should a context statement take?",
            ),
            (
                "sem4",
                RuleSemantic,
                Reconstructed,
                "How should the text of a strategy element be phrased?",
            ),
            (
                "sem5",
                RuleSemantic,
                Reconstructed,
                "How does an assumption differ from a justification in a goal structure?",
            ),
            (
                "sem6",
                RuleSemantic,
                Reconstructed,
                "Should a solution statement be a full sentence or a noun phrase?",
            ),
            (
                "gen1",
                Generation,
                Sourced,
                "Give me a sample goal element connected to 2 sub-goals",
            ),
            (
                "gen2",
                Generation,
                Reconstructed,
                "Give me a sample goal supported by a strategy that is further supported by two sub-goals.",
            ),
            (
                "gen3",
                Generation,
                Reconstructed,
                "Generate a sample goal element with two contexts attached.",
            ),
            (
                "gen4",
                Generation,
                Reconstructed,
                "Generate a sample strategy element with an assumption attached.",
            ),
            (
                "gen5",
                Generation,
                Reconstructed,
                "Give me a sample goal supported by a solution.",
            ),
            (
                "gen6",
                Generation,
                Reconstructed,
                "Generate a small goal structure that contains an undeveloped goal.",
            ),
        ];
        QuestionBank {
            questions: entries
                .into_iter()
                .map(|(id, category, source, text)| Question {
                    id: id.to_string(),
                    category,
                    text: text.to_string(),
                    source,
                })
                .collect(),
        }
    }

    /// Parses a user bank: one `<category>|<question>` per line, `#`
    /// comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<Self, PipelineError> {
        let mut questions = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (category, question) =
                line.split_once('|')
                    .ok_or_else(|| PipelineError::BankLine {
                        line: i + 1,
                        message: "expected `<category>|<question>`".to_string(),
                    })?;
            let category: QuestionCategory =
                category
                    .trim()
                    .parse()
                    .map_err(|message| PipelineError::BankLine {
                        line: i + 1,
                        message,
                    })?;
            let question = question.trim();
            if question.is_empty() {
                return Err(PipelineError::BankLine {
                    line: i + 1,
                    message: "question text is empty".to_string(),
                });
            }
            questions.push(Question {
                id: format!("q{:02}", questions.len() + 1),
                category,
                text: question.to_string(),
                source: QuestionSource::Reconstructed,
            });
        }
        Ok(QuestionBank { questions })
    }

    pub fn questions(&self) -> &[Question] {
        &self.questions
    }

    pub fn len(&self) -> usize {
        self.questions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.questions.is_empty()
    }

    /// Sub-bank with only the given category, preserving order.
    pub fn filter(&self, category: QuestionCategory) -> QuestionBank {
        QuestionBank {
            questions: self
                .questions
                .iter()
                .filter(|q| q.category == category)
                .cloned()
                .collect(),
        }
    }

    pub fn count(&self, category: QuestionCategory) -> usize {
        self.questions
            .iter()
            .filter(|q| q.category == category)
            .count()
    }
}

/// The prompts for one proficiency assessment: the preparatory statement
/// followed by every bank question, in bank order. The whole sequence is
/// meant to be sent within a single conversation so the preparatory
/// context stays in effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rq1Session {
    prompts: Vec<String>,
}

impl Rq1Session {
    pub fn prompts(&self) -> &[String] {
        &self.prompts
    }
}

/// Builds the assessment session for a bank. The bank must be non-empty.
pub fn build_rq1_session(bank: &QuestionBank) -> Result<Rq1Session, PipelineError> {
    if bank.is_empty() {
        return Err(PipelineError::EmptyQuestionBank);
    }
    let mut prompts = Vec::with_capacity(bank.len() + 1);
    prompts.push(RQ1_PREPARATORY.to_string());
    prompts.extend(bank.questions().iter().map(|q| q.text.clone()));
    Ok(Rq1Session { prompts })
}
