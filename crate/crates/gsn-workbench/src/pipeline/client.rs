//! Completion endpoints: the HTTP client and the deterministic replay
//! client used for reproducible runs and tests.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::Experiment;

/// Environment variable holding the completion-endpoint credential.
pub const LLM_API_KEY_VAR: &str = "SCW_LLM_API_KEY";

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    #[error("no canned response at {0}")]
    MissingFixture(PathBuf),
    #[error("cannot read fixture {path}: {source}")]
    FixtureIo {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("endpoint returned HTTP status {0}")]
    Http(u16),
    #[error("cannot reach endpoint: {0}")]
    Transport(String),
    #[error("malformed endpoint response: {0}")]
    MalformedResponse(String),
    #[error("no completion endpoint configured")]
    NoEndpoint,
}

/// How the manifest describes the client that produced a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClientDescriptor {
    pub kind: String,
    /// Deterministic clients get zeroed timestamps in manifests.
    pub deterministic: bool,
    /// Opaque completion parameters, echoed verbatim.
    pub params: Value,
}

/// A completion endpoint. `round` is bookkeeping metadata: real endpoints
/// ignore it, the replay client uses it to pick its canned response.
/// Implementations must be safe for concurrent calls or report
/// `single_flight`, in which case the runner serializes rounds.
pub trait CompletionClient: Sync {
    fn complete(&self, round: u32, prompt: &str) -> Result<String, ClientError>;

    fn descriptor(&self) -> ClientDescriptor;

    fn single_flight(&self) -> bool {
        false
    }
}

/// Returns canned responses from a directory of text files named
/// `<seed_label>.exp<e>.round<r>.txt`.
#[derive(Debug, Clone)]
pub struct ReplayClient {
    dir: PathBuf,
    seed_label: String,
    experiment: Experiment,
}

impl ReplayClient {
    pub fn new(dir: impl Into<PathBuf>, seed_label: &str, experiment: Experiment) -> Self {
        ReplayClient {
            dir: dir.into(),
            seed_label: seed_label.to_string(),
            experiment,
        }
    }

    pub fn fixture_path(&self, round: u32) -> PathBuf {
        self.dir.join(format!(
            "{}.exp{}.round{}.txt",
            self.seed_label,
            self.experiment.number(),
            round
        ))
    }
}

impl CompletionClient for ReplayClient {
    fn complete(&self, round: u32, _prompt: &str) -> Result<String, ClientError> {
        let path = self.fixture_path(round);
        if !path.exists() {
            return Err(ClientError::MissingFixture(path));
        }
        std::fs::read_to_string(&path).map_err(|source| ClientError::FixtureIo { path, source })
    }

    fn descriptor(&self) -> ClientDescriptor {
        ClientDescriptor {
            kind: "replay".to_string(),
            deterministic: true,
            params: json!({}),
        }
    }
}

/// Wire shape for the HTTP endpoint: chat-style `messages` or a single
/// `prompt` string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WireShape {
    #[default]
    Chat,
    Prompt,
}

/// Posts JSON to a completion endpoint and reads back `{"text": ...}`.
/// The credential, when present, is sent as a bearer token.
pub struct HttpCompletionClient {
    endpoint: String,
    model: String,
    wire: WireShape,
    params: BTreeMap<String, Value>,
    api_key: Option<String>,
}

impl HttpCompletionClient {
    pub fn new(
        endpoint: &str,
        model: &str,
        wire: WireShape,
        params: BTreeMap<String, Value>,
    ) -> Result<Self, ClientError> {
        if endpoint.trim().is_empty() {
            return Err(ClientError::NoEndpoint);
        }
        Ok(HttpCompletionClient {
            endpoint: endpoint.to_string(),
            model: model.to_string(),
            wire,
            params,
            api_key: std::env::var(LLM_API_KEY_VAR).ok().filter(|k| !k.is_empty()),
        })
    }

    /// The JSON body sent for one prompt.
    pub fn request_body(&self, prompt: &str) -> Value {
        let mut body = match self.wire {
            WireShape::Chat => json!({
                "model": self.model,
                "messages": [{"role": "user", "content": prompt}],
            }),
            WireShape::Prompt => json!({
                "model": self.model,
                "prompt": prompt,
            }),
        };
        let object = body.as_object_mut().expect("body is an object");
        for (key, value) in &self.params {
            object.entry(key.clone()).or_insert_with(|| value.clone());
        }
        body
    }

    fn parse_response(value: &Value) -> Result<String, ClientError> {
        value
            .get("text")
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| {
                ClientError::MalformedResponse("expected a top-level string field `text`".to_string())
            })
    }
}

impl CompletionClient for HttpCompletionClient {
    fn complete(&self, _round: u32, prompt: &str) -> Result<String, ClientError> {
        let mut request = ureq::post(&self.endpoint);
        if let Some(key) = &self.api_key {
            request = request.header("Authorization", &format!("Bearer {key}"));
        }
        let mut response = request
            .send_json(self.request_body(prompt))
            .map_err(map_ureq_error)?;
        let value: Value = response
            .body_mut()
            .read_json()
            .map_err(|e| ClientError::MalformedResponse(e.to_string()))?;
        Self::parse_response(&value)
    }

    fn descriptor(&self) -> ClientDescriptor {
        ClientDescriptor {
            kind: match self.wire {
                WireShape::Chat => "http-chat".to_string(),
                WireShape::Prompt => "http-prompt".to_string(),
            },
            deterministic: false,
            params: json!({
                "endpoint": self.endpoint,
                "model": self.model,
                "params": Value::Object(self.params.clone().into_iter().collect()),
            }),
        }
    }
}

fn map_ureq_error(error: ureq::Error) -> ClientError {
    match error {
        ureq::Error::StatusCode(code) => ClientError::Http(code),
        other => ClientError::Transport(other.to_string()),
    }
}

/// Writes replay fixtures in the naming scheme [`ReplayClient`] expects.
pub fn write_replay_fixture(
    dir: &Path,
    seed_label: &str,
    experiment: Experiment,
    round: u32,
    text: &str,
) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!(
        "{seed_label}.exp{}.round{round}.txt",
        experiment.number()
    ));
    std::fs::write(&path, text)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::{Read, Write};
    use std::net::TcpListener;

    #[test]
    fn replay_client_reads_fixtures_by_round() {
        let dir = tempfile::tempdir().unwrap();
        let experiment = Experiment::new(1).unwrap();
        write_replay_fixture(dir.path(), "demo", experiment, 1, "G1: Claim").unwrap();
        let client = ReplayClient::new(dir.path(), "demo", experiment);
        assert_eq!(client.complete(1, "prompt").unwrap(), "G1: Claim");
        assert!(matches!(
            client.complete(2, "prompt"),
            Err(ClientError::MissingFixture(_))
        ));
        assert!(client.descriptor().deterministic);
    }

    #[test]
    fn chat_and_prompt_wire_shapes_differ() {
        let mut params = BTreeMap::new();
        params.insert("temperature".to_string(), json!(0.2));
        let chat =
            HttpCompletionClient::new("http://example.invalid", "m1", WireShape::Chat, params.clone())
                .unwrap();
        let body = chat.request_body("hello");
        assert_eq!(body["messages"][0]["content"], "hello");
        assert_eq!(body["temperature"], json!(0.2));
        assert!(body.get("prompt").is_none());

        let plain =
            HttpCompletionClient::new("http://example.invalid", "m1", WireShape::Prompt, params)
                .unwrap();
        let body = plain.request_body("hello");
        assert_eq!(body["prompt"], "hello");
        assert!(body.get("messages").is_none());
    }

    #[test]
    fn empty_endpoint_is_rejected() {
        assert!(matches!(
            HttpCompletionClient::new(" ", "m", WireShape::Chat, BTreeMap::new()),
            Err(ClientError::NoEndpoint)
        ));
    }

    /// One-shot HTTP server that answers any request with the given body.
    fn serve_once(status: &'static str, body: &'static str) -> String {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        std::thread::spawn(move || {
            let (mut stream, _) = listener.accept().unwrap();
            let mut buf = [0u8; 8192];
            let _ = stream.read(&mut buf);
            let response = format!(
                "HTTP/1.1 {status}\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{body}",
                body.len()
            );
            stream.write_all(response.as_bytes()).unwrap();
        });
        format!("http://{addr}")
    }

    #[test]
    fn http_client_reads_text_field() {
        let url = serve_once("200 OK", "{\"text\": \"G1: Claim\"}");
        let client =
            HttpCompletionClient::new(&url, "m1", WireShape::Chat, BTreeMap::new()).unwrap();
        assert_eq!(client.complete(1, "p").unwrap(), "G1: Claim");
    }

    #[test]
    fn http_client_surfaces_status_and_shape_errors() {
        let url = serve_once("500 Internal Server Error", "{}");
        let client =
            HttpCompletionClient::new(&url, "m1", WireShape::Chat, BTreeMap::new()).unwrap();
        assert!(matches!(client.complete(1, "p"), Err(ClientError::Http(500))));

        let url = serve_once("200 OK", "{\"message\": \"no text here\"}");
        let client =
            HttpCompletionClient::new(&url, "m1", WireShape::Chat, BTreeMap::new()).unwrap();
        assert!(matches!(
            client.complete(1, "p"),
            Err(ClientError::MalformedResponse(_))
        ));
    }
}
