//! Experiment execution and the run manifest.
//!
//! Every round issues the identical prompt in a fresh completion (no
//! conversation carryover, so rounds stay independent). Rounds run
//! concurrently unless the client is single-flight; record order in the
//! manifest is always by round index. An endpoint failure in one round is
//! recorded in that round's record and the remaining rounds still run.

use std::sync::mpsc;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::{build_prompt, ClientDescriptor, CompletionClient, ExperimentConfig, PipelineError, SystemBrief};
use crate::prose::parse_lenient;

/// Manifest schema version.
pub const MANIFEST_VERSION: u32 = 1;

/// Counts from running the lenient extractor over one response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseSummary {
    pub elements: usize,
    pub relationships: usize,
    pub diagnostics: usize,
}

/// One round: the verbatim prompt, the raw response or the error, and
/// what the lenient extractor made of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: u32,
    pub prompt: String,
    pub response: Option<String>,
    pub error: Option<String>,
    pub parse_summary: Option<ParseSummary>,
    /// Unix epoch seconds; zero for deterministic (replay) clients.
    pub timestamp: u64,
}

/// Auditable record of one experiment run. Serialized as JSON with a
/// fixed field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub manifest_version: u32,
    pub experiment: u8,
    pub rounds_k: u32,
    pub seed_label: String,
    pub brief: SystemBrief,
    pub client: ClientDescriptor,
    pub rounds: Vec<RoundRecord>,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn has_round_errors(&self) -> bool {
        self.rounds.iter().any(|r| r.error.is_some())
    }
}

/// Runs one experiment: `rounds_k` completions of the identical prompt.
/// The returned manifest always has exactly `rounds_k` round records;
/// failed rounds carry an error instead of a response.
pub fn run_experiment(
    config: &ExperimentConfig,
    client: &dyn CompletionClient,
) -> Result<RunManifest, PipelineError> {
    config.validate()?;
    let prompt = build_prompt(config)?;
    let descriptor = client.descriptor();
    let deterministic = descriptor.deterministic;

    let run_round = |round: u32| -> RoundRecord {
        let outcome = client.complete(round, &prompt);
        let timestamp = if deterministic { 0 } else { epoch_seconds() };
        match outcome {
            Ok(response) => {
                let parsed = parse_lenient(&response);
                let case = parsed.case.as_ref().expect("lenient parse always yields a case");
                RoundRecord {
                    round,
                    prompt: prompt.clone(),
                    response: Some(response),
                    error: None,
                    parse_summary: Some(ParseSummary {
                        elements: case.elements().len(),
                        relationships: case.relationships().len(),
                        diagnostics: parsed.diagnostics.len(),
                    }),
                    timestamp,
                }
            }
            Err(error) => RoundRecord {
                round,
                prompt: prompt.clone(),
                response: None,
                error: Some(error.to_string()),
                parse_summary: None,
                timestamp,
            },
        }
    };

    let k = config.rounds_k;
    let mut rounds: Vec<RoundRecord> = if client.single_flight() || k == 1 {
        (1..=k).map(run_round).collect()
    } else {
        let (tx, rx) = mpsc::channel();
        let workers = (k as usize).min(8);
        let next = std::sync::atomic::AtomicU32::new(1);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                let tx = tx.clone();
                let next = &next;
                let run_round = &run_round;
                scope.spawn(move || loop {
                    let round = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if round > k {
                        break;
                    }
                    tx.send(run_round(round)).expect("collector outlives workers");
                });
            }
        });
        drop(tx);
        rx.into_iter().collect()
    };
    rounds.sort_by_key(|r| r.round);

    Ok(RunManifest {
        manifest_version: MANIFEST_VERSION,
        experiment: config.experiment.number(),
        rounds_k: k,
        seed_label: config.seed_label.clone(),
        brief: config.brief.clone(),
        client: descriptor,
        rounds,
    })
}

fn epoch_seconds() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::pipeline::{write_replay_fixture, ClientError, Experiment, ReplayClient};
    use serde_json::json;

    fn config(k: u32) -> ExperimentConfig {
        let mut c = ExperimentConfig::standard(
            Experiment::new(1).unwrap(),
            corpus::ml_tnr_brief(),
            "demo",
        );
        c.rounds_k = k;
        c
    }

    fn seeded_dir(rounds: &[u32]) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        for &round in rounds {
            write_replay_fixture(
                dir.path(),
                "demo",
                Experiment::new(1).unwrap(),
                round,
                &format!("G1: Claim {round} is held\nG1 supportedBy Sn1\nSn1: Evidence record\n"),
            )
            .unwrap();
        }
        dir
    }

    #[test]
    fn replay_run_is_deterministic() {
        let dir = seeded_dir(&[1, 2, 3, 4]);
        let client = ReplayClient::new(dir.path(), "demo", Experiment::new(1).unwrap());
        let first = run_experiment(&config(4), &client).unwrap();
        let second = run_experiment(&config(4), &client).unwrap();
        assert_eq!(first.to_json(), second.to_json());
        assert_eq!(first.rounds.len(), 4);
        assert!(first.rounds.iter().all(|r| r.timestamp == 0));
        assert!(!first.has_round_errors());
    }

    #[test]
    fn parse_summary_counts_extracted_elements() {
        let dir = tempfile::tempdir().unwrap();
        write_replay_fixture(dir.path(), "demo", Experiment::new(1).unwrap(), 1, "G1: Claim").unwrap();
        let client = ReplayClient::new(dir.path(), "demo", Experiment::new(1).unwrap());
        let manifest = run_experiment(&config(1), &client).unwrap();
        let summary = manifest.rounds[0].parse_summary.unwrap();
        assert_eq!(summary.elements, 1);
        assert_eq!(summary.relationships, 0);
    }

    #[test]
    fn missing_round_becomes_error_record() {
        let dir = seeded_dir(&[1, 2, 4]);
        let client = ReplayClient::new(dir.path(), "demo", Experiment::new(1).unwrap());
        let manifest = run_experiment(&config(4), &client).unwrap();
        assert_eq!(manifest.rounds.len(), 4);
        assert!(manifest.rounds[2].error.as_deref().unwrap().contains("round3"));
        assert!(manifest.rounds[2].response.is_none());
        assert!(manifest.rounds[0].error.is_none());
        assert!(manifest.has_round_errors());
    }

    #[test]
    fn manifest_json_round_trips_with_stable_key_order() {
        let dir = seeded_dir(&[1]);
        let client = ReplayClient::new(dir.path(), "demo", Experiment::new(1).unwrap());
        let manifest = run_experiment(&config(1), &client).unwrap();
        let json = manifest.to_json();
        let version_at = json.find("manifest_version").unwrap();
        let experiment_at = json.find("\"experiment\"").unwrap();
        let rounds_at = json.find("\"rounds\"").unwrap();
        assert!(version_at < experiment_at && experiment_at < rounds_at);
        assert_eq!(RunManifest::from_json(&json).unwrap(), manifest);
    }

    #[test]
    fn single_flight_clients_run_sequentially() {
        struct Sequential {
            calls: std::sync::Mutex<Vec<u32>>,
        }
        impl CompletionClient for Sequential {
            fn complete(&self, round: u32, _prompt: &str) -> Result<String, ClientError> {
                self.calls.lock().unwrap().push(round);
                Ok(format!("G1: Claim {round}"))
            }
            fn descriptor(&self) -> ClientDescriptor {
                ClientDescriptor {
                    kind: "scripted".to_string(),
                    deterministic: true,
                    params: json!({}),
                }
            }
            fn single_flight(&self) -> bool {
                true
            }
        }
        let client = Sequential {
            calls: std::sync::Mutex::new(Vec::new()),
        };
        let manifest = run_experiment(&config(3), &client).unwrap();
        assert_eq!(manifest.rounds.len(), 3);
        assert_eq!(*client.calls.lock().unwrap(), vec![1, 2, 3]);
    }
}
