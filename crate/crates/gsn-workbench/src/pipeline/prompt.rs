//! Generation-prompt assembly.
//!
//! A prompt is a role statement followed by a question-and-answer block
//! (what a safety case is, the output format, the system, the objective),
//! optionally a domain-knowledge Q&A pair, optionally a GSN syntax block
//! with a worked example, and a final instruction. The domain pair and
//! syntax block each start with a fixed sentinel line so their presence
//! can be asserted by substring.

use super::ExperimentConfig;
use crate::{corpus, prose};

/// Opening role statement of every generation prompt.
pub const ROLE_LINE: &str = "You are a professional safety case developer assistant. I want you \
                             to create a safety case for the given system in Goal Structuring \
                             Notation (GSN) Format.";

const QA_INTRO: &str = "I will give you the following information in the form of Questions and Answers:";

const Q1: &str = "Question 1: What is a safety case?\nAnswer: A safety case is a structured \
                  argument, supported by evidence, intended to justify that a system is \
                  acceptably safe.";

const Q2: &str = "Question 2: What is the format of the safety case\nAnswer: I want you to \
                  generate a safety case in GSN Format";

const Q3_QUESTION: &str = "Question 3: What is the system for which you need to generate a safety case";

const Q4_QUESTION: &str = "Question 4: What is the main objective of the safety case";

/// First line of the domain-knowledge pair (experiments 2 and 4).
pub const DOMAIN_SENTINEL: &str =
    "Question 5: What additional domain knowledge should be considered";

/// First line of the syntax block (experiments 3 and 4).
pub const SYNTAX_SENTINEL: &str = "GSN syntax reference:";

/// The bundled GSN syntax block: connection rules, decorators, the line
/// format, and the map-system worked example.
pub fn default_syntax_block() -> String {
    let example = prose::serialize(&corpus::map_system().case)
        .expect("bundled worked example serializes");
    format!(
        "{SYNTAX_SENTINEL}\n\
         The six GSN element kinds and their id prefixes are: Goal (G), Strategy (S), \
         Solution (Sn), Context (C), Assumption (A), Justification (J).\n\
         Allowed connections:\n\
         - A goal may be supported by goals, strategies, and solutions.\n\
         - A strategy may be supported by goals.\n\
         - Goals and strategies may be placed in the context of contexts, assumptions, and justifications.\n\
         - Solutions, contexts, assumptions, and justifications have no outgoing connections.\n\
         Goal, assumption, and justification statements are claims (noun phrase plus verb \
         phrase); context and solution statements are noun phrases; a strategy briefly \
         describes the argument approach.\n\
         Elements may be marked [undeveloped], [uninstantiated], or [off-diagram].\n\
         Write one element per line as `ID: text`, then one relationship per line as \
         `ID supportedBy ID` or `ID inContextOf ID`.\n\
         Worked example:\n\n{example}"
    )
}

/// Builds the prompt for one experiment. Pure: equal configs give
/// byte-equal prompts.
pub fn build_prompt(config: &ExperimentConfig) -> Result<String, super::PipelineError> {
    config.validate()?;
    let brief = &config.brief;
    let mut sections: Vec<String> = vec![
        ROLE_LINE.to_string(),
        QA_INTRO.to_string(),
        Q1.to_string(),
        Q2.to_string(),
        format!("{Q3_QUESTION}\nAnswer: {}", brief.system_description),
        format!("{Q4_QUESTION}\nAnswer: {}", brief.objective),
    ];
    if config.experiment.includes_domain_knowledge() {
        let domain = brief
            .domain_paragraph
            .as_deref()
            .expect("validated: domain paragraph present");
        sections.push(format!("{DOMAIN_SENTINEL}\nAnswer: {domain}"));
    }
    if config.experiment.includes_syntax() {
        sections.push(config.syntax_block.clone());
    }
    sections.push(format!(
        "Create a top-level safety case for the {} in GSN format.",
        brief.system_name
    ));
    Ok(sections.join("\n\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::pipeline::Experiment;

    fn config(experiment: u8) -> ExperimentConfig {
        ExperimentConfig::standard(
            Experiment::new(experiment).unwrap(),
            corpus::ml_tnr_brief(),
            "ml-tnr",
        )
    }

    #[test]
    fn experiment_one_has_qa_but_no_extras() {
        let prompt = build_prompt(&config(1)).unwrap();
        assert!(prompt.starts_with(ROLE_LINE));
        assert!(prompt.contains("Question 1: What is a safety case?"));
        assert!(prompt.contains("Tire Noise Recognition"));
        assert!(!prompt.contains(DOMAIN_SENTINEL));
        assert!(!prompt.contains(SYNTAX_SENTINEL));
        assert!(prompt.ends_with("Create a top-level safety case for the ML algorithm in GSN format."));
    }

    #[test]
    fn experiment_three_has_syntax_only() {
        let prompt = build_prompt(&config(3)).unwrap();
        assert!(!prompt.contains(DOMAIN_SENTINEL));
        assert!(prompt.contains(SYNTAX_SENTINEL));
        assert!(prompt.contains("Worked example:"));
        assert!(prompt.contains("G1: The map system is acceptably safe to operate"));
    }

    #[test]
    fn experiment_four_has_both() {
        let prompt = build_prompt(&config(4)).unwrap();
        assert!(prompt.contains(DOMAIN_SENTINEL));
        assert!(prompt.contains(SYNTAX_SENTINEL));
    }

    #[test]
    fn prompts_are_deterministic() {
        assert_eq!(build_prompt(&config(4)).unwrap(), build_prompt(&config(4)).unwrap());
    }
}
