//! Prompt construction and experiment running.
//!
//! The four experiments vary what the prompt contains: experiments 2 and
//! 4 add a domain-knowledge paragraph, experiments 3 and 4 add a GSN
//! syntax block with a worked example. Each experiment runs `k`
//! independent completions of one identical prompt against a pluggable
//! endpoint and records everything in a [`RunManifest`] so runs can be
//! audited and replayed byte for byte.

mod client;
mod prompt;
mod questions;
mod runner;

pub use client::{
    write_replay_fixture, ClientDescriptor, ClientError, CompletionClient, HttpCompletionClient,
    ReplayClient, WireShape, LLM_API_KEY_VAR,
};
pub use prompt::{build_prompt, default_syntax_block, DOMAIN_SENTINEL, ROLE_LINE, SYNTAX_SENTINEL};
pub use questions::{
    build_rq1_session, Question, QuestionBank, QuestionCategory, QuestionSource, Rq1Session,
    RQ1_PREPARATORY,
};
pub use runner::{run_experiment, ParseSummary, RoundRecord, RunManifest, MANIFEST_VERSION};

use serde::{Deserialize, Serialize};

/// Pipeline-level failures. Per-round endpoint failures are not here:
/// they are recorded in the manifest instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("experiment number must be 1..=4, got {0}")]
    InvalidExperiment(u8),
    #[error("rounds_k must be at least 1")]
    ZeroRounds,
    #[error("system brief field `{0}` must not be empty")]
    EmptyBriefField(&'static str),
    #[error("experiment {0} requires a domain paragraph in the system brief")]
    MissingDomainParagraph(u8),
    #[error("seed label must not be empty and may only contain letters, digits, `_`, and `-`")]
    BadSeedLabel,
    #[error("question bank is empty")]
    EmptyQuestionBank,
    #[error("question bank line {line}: {message}")]
    BankLine { line: usize, message: String },
    #[error("cannot read system brief: {0}")]
    BriefFormat(String),
}

/// Experiment number, restricted to 1..=4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Experiment(u8);

impl Experiment {
    pub const ALL: [Experiment; 4] = [Experiment(1), Experiment(2), Experiment(3), Experiment(4)];

    pub fn new(number: u8) -> Result<Self, PipelineError> {
        if (1..=4).contains(&number) {
            Ok(Experiment(number))
        } else {
            Err(PipelineError::InvalidExperiment(number))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// Experiments 2 and 4 supply domain knowledge.
    pub fn includes_domain_knowledge(self) -> bool {
        matches!(self.0, 2 | 4)
    }

    /// Experiments 3 and 4 spell out GSN syntax.
    pub fn includes_syntax(self) -> bool {
        matches!(self.0, 3 | 4)
    }
}

impl TryFrom<u8> for Experiment {
    type Error = PipelineError;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Experiment::new(value)
    }
}

impl From<Experiment> for u8 {
    fn from(e: Experiment) -> u8 {
        e.0
    }
}

impl std::fmt::Display for Experiment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// What the prompt says about the system under argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemBrief {
    /// Short name used in the final instruction line.
    pub system_name: String,
    /// Answer to "what is the system".
    pub system_description: String,
    /// Answer to "what is the main objective".
    pub objective: String,
    /// Extra context for experiments 2 and 4.
    #[serde(default)]
    pub domain_paragraph: Option<String>,
}

impl SystemBrief {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.system_name.trim().is_empty() {
            return Err(PipelineError::EmptyBriefField("system_name"));
        }
        if self.system_description.trim().is_empty() {
            return Err(PipelineError::EmptyBriefField("system_description"));
        }
        if self.objective.trim().is_empty() {
            return Err(PipelineError::EmptyBriefField("objective"));
        }
        Ok(())
    }

    /// Reads a brief from TOML (`system_name`, `system_description`,
    /// `objective`, optional `domain_paragraph`).
    pub fn from_toml_str(text: &str) -> Result<Self, PipelineError> {
        let brief: SystemBrief =
            toml::from_str(text).map_err(|e| PipelineError::BriefFormat(e.to_string()))?;
        brief.validate()?;
        Ok(brief)
    }
}

/// A fully specified experiment: which prompt variant, how many rounds,
/// for which system, under what label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub rounds_k: u32,
    pub brief: SystemBrief,
    /// The GSN syntax block for experiments 3 and 4.
    pub syntax_block: String,
    /// Names the run's manifest and replay fixtures.
    pub seed_label: String,
}

impl ExperimentConfig {
    /// Standard configuration: four rounds and the bundled syntax block.
    pub fn standard(experiment: Experiment, brief: SystemBrief, seed_label: &str) -> Self {
        ExperimentConfig {
            experiment,
            rounds_k: 4,
            brief,
            syntax_block: default_syntax_block(),
            seed_label: seed_label.to_string(),
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.rounds_k == 0 {
            return Err(PipelineError::ZeroRounds);
        }
        self.brief.validate()?;
        if self.experiment.includes_domain_knowledge()
            && self
                .brief
                .domain_paragraph
                .as_deref()
                .map(str::trim)
                .unwrap_or("")
                .is_empty()
        {
            return Err(PipelineError::MissingDomainParagraph(self.experiment.number()));
        }
        if self.seed_label.is_empty()
            || !self
                .seed_label
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
        {
            return Err(PipelineError::BadSeedLabel);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brief() -> SystemBrief {
        SystemBrief {
            system_name: "demo system".to_string(),
            system_description: "A demo system".to_string(),
            objective: "Show the demo system is safe".to_string(),
            domain_paragraph: None,
        }
    }

    #[test]
    fn experiment_numbers_are_bounded() {
        assert!(Experiment::new(0).is_err());
        assert!(Experiment::new(5).is_err());
        assert_eq!(Experiment::new(3).unwrap().number(), 3);
    }

    #[test]
    fn inclusion_matrix() {
        let by_number: Vec<(u8, bool, bool)> = Experiment::ALL
            .into_iter()
            .map(|e| (e.number(), e.includes_domain_knowledge(), e.includes_syntax()))
            .collect();
        assert_eq!(
            by_number,
            vec![(1, false, false), (2, true, false), (3, false, true), (4, true, true)]
        );
    }

    #[test]
    fn experiment_two_requires_domain_paragraph() {
        let config = ExperimentConfig::standard(Experiment::new(2).unwrap(), brief(), "demo");
        assert_eq!(config.validate(), Err(PipelineError::MissingDomainParagraph(2)));

        let mut with_domain = brief();
        with_domain.domain_paragraph = Some("Domain facts.".to_string());
        let config = ExperimentConfig::standard(Experiment::new(2).unwrap(), with_domain, "demo");
        assert_eq!(config.validate(), Ok(()));
    }

    #[test]
    fn seed_labels_are_restricted() {
        let mut config = ExperimentConfig::standard(Experiment::new(1).unwrap(), brief(), "ok-1_2");
        assert_eq!(config.validate(), Ok(()));
        config.seed_label = "has space".to_string();
        assert_eq!(config.validate(), Err(PipelineError::BadSeedLabel));
    }

    #[test]
    fn brief_toml_round_trip() {
        let text = "system_name = \"X\"\nsystem_description = \"desc\"\nobjective = \"obj\"\n";
        let brief = SystemBrief::from_toml_str(text).unwrap();
        assert_eq!(brief.system_name, "X");
        assert_eq!(brief.domain_paragraph, None);
        assert!(SystemBrief::from_toml_str("system_name = \"X\"").is_err());
    }
}
