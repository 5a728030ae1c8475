//! Cosine similarity between two documents.
//!
//! The default vectorizer is a deterministic term-frequency count
//! (lowercase, split on non-alphanumeric characters) over the union
//! vocabulary of the two documents; with count vectors the result lies in
//! [0, 1]. An external embedding provider can be plugged in instead, in
//! which case the result lies in [-1, 1]. Reports should say which
//! vectorizer produced a number.

use std::collections::BTreeMap;

use serde_json::{json, Value};

/// Environment variable holding the embedding-endpoint credential.
pub const EMBED_API_KEY_VAR: &str = "SCW_EMBED_API_KEY";

#[derive(Debug, thiserror::Error)]
pub enum CosineError {
    #[error("the {0} document has no tokens")]
    EmptyDocument(&'static str),
    #[error("provider returned vectors of different dimensions ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("provider returned a zero vector")]
    ZeroVector,
    #[error(transparent)]
    Provider(#[from] EmbedError),
}

#[derive(Debug, thiserror::Error)]
pub enum EmbedError {
    #[error("embedding endpoint returned HTTP status {0}")]
    Http(u16),
    #[error("cannot reach embedding endpoint: {0}")]
    Transport(String),
    #[error("malformed embedding response: {0}")]
    Malformed(String),
    #[error("no embedding endpoint configured")]
    NoEndpoint,
}

/// Sparse term-frequency vector. Counts are positive by construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TfVector(BTreeMap<String, u64>);

impl TfVector {
    pub fn of(text: &str) -> Self {
        let mut counts = BTreeMap::new();
        for token in tokenize(text) {
            *counts.entry(token).or_insert(0) += 1;
        }
        TfVector(counts)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, other: &TfVector) -> f64 {
        self.0
            .iter()
            .filter_map(|(token, count)| other.0.get(token).map(|c| (*count * *c) as f64))
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.0
            .values()
            .map(|c| (*c * *c) as f64)
            .sum::<f64>()
            .sqrt()
    }
}

fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
}

/// Which vectorizer to use for [`cosine_similarity`].
pub enum Vectorizer<'a> {
    TermFrequency,
    Embedding(&'a dyn EmbeddingProvider),
}

/// Cosine similarity between two documents under the chosen vectorizer.
pub fn cosine_similarity(
    doc_a: &str,
    doc_b: &str,
    vectorizer: Vectorizer<'_>,
) -> Result<f64, CosineError> {
    match vectorizer {
        Vectorizer::TermFrequency => cosine_tf(doc_a, doc_b),
        Vectorizer::Embedding(provider) => cosine_embedding(doc_a, doc_b, provider),
    }
}

/// Term-frequency cosine. Deterministic; result in [0, 1].
pub fn cosine_tf(doc_a: &str, doc_b: &str) -> Result<f64, CosineError> {
    let a = TfVector::of(doc_a);
    if a.is_empty() {
        return Err(CosineError::EmptyDocument("first"));
    }
    let b = TfVector::of(doc_b);
    if b.is_empty() {
        return Err(CosineError::EmptyDocument("second"));
    }
    Ok(a.dot(&b) / (a.norm() * b.norm()))
}

/// Produces one vector per input text, all of equal dimension.
pub trait EmbeddingProvider: Sync {
    fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, EmbedError>;
}

/// Embedding cosine via a provider. Result in [-1, 1].
pub fn cosine_embedding(
    doc_a: &str,
    doc_b: &str,
    provider: &dyn EmbeddingProvider,
) -> Result<f64, CosineError> {
    let vectors = provider.embed(&[doc_a, doc_b])?;
    if vectors.len() != 2 {
        return Err(
            EmbedError::Malformed(format!("expected 2 vectors, got {}", vectors.len())).into(),
        );
    }
    let (a, b) = (&vectors[0], &vectors[1]);
    if a.len() != b.len() {
        return Err(CosineError::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let norm_a = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let norm_b = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm_a == 0.0 || norm_b == 0.0 {
        return Err(CosineError::ZeroVector);
    }
    Ok(dot / (norm_a * norm_b))
}

/// HTTP embedding provider: POST `{"texts": [...]}`, read
/// `{"vectors": [[...], ...]}`. The credential, when present, is sent as
/// a bearer token.
pub struct HttpEmbeddingProvider {
    endpoint: String,
    api_key: Option<String>,
}

impl HttpEmbeddingProvider {
    pub fn new(endpoint: &str) -> Result<Self, EmbedError> {
        if endpoint.trim().is_empty() {
            return Err(EmbedError::NoEndpoint);
        }
        Ok(HttpEmbeddingProvider {
            endpoint: endpoint.to_string(),
            api_key: std::env::var(EMBED_API_KEY_VAR).ok().filter(|k| !k.is_empty()),
        })
    }
}

impl EmbeddingProvider for HttpEmbeddingProvider {
    fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, EmbedError> {
        let mut request = ureq::post(&self.endpoint);
        if let Some(key) = &self.api_key {
            request = request.header("Authorization", &format!("Bearer {key}"));
        }
        let mut response = request
            .send_json(json!({ "texts": texts }))
            .map_err(|e| match e {
                ureq::Error::StatusCode(code) => EmbedError::Http(code),
                other => EmbedError::Transport(other.to_string()),
            })?;
        let value: Value = response
            .body_mut()
            .read_json()
            .map_err(|e| EmbedError::Malformed(e.to_string()))?;
        let vectors = value
            .get("vectors")
            .and_then(Value::as_array)
            .ok_or_else(|| EmbedError::Malformed("expected array field `vectors`".to_string()))?;
        vectors
            .iter()
            .map(|row| {
                row.as_array()
                    .map(|xs| xs.iter().filter_map(Value::as_f64).collect::<Vec<f64>>())
                    .filter(|xs| Some(xs.len()) == row.as_array().map(Vec::len))
                    .ok_or_else(|| EmbedError::Malformed("vectors must be numeric arrays".to_string()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_documents_score_one() {
        let v = cosine_tf("safe system", "safe system").unwrap();
        assert!((v - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn disjoint_vocabularies_score_zero() {
        assert_eq!(cosine_tf("alpha beta", "gamma delta").unwrap(), 0.0);
    }

    #[test]
    fn repeated_token_fixture() {
        // Counts (2,1) vs (1,1): 3 / sqrt(5 * 2).
        let v = cosine_tf("safe safe system", "safe system").unwrap();
        assert!((v - 3.0 / 10f64.sqrt()).abs() <= 1e-12);
        assert!((v - 0.9487).abs() <= 1e-4);
    }

    #[test]
    fn tokenization_is_case_and_punctuation_insensitive() {
        let v = cosine_tf("Safe, SYSTEM!", "safe system").unwrap();
        assert!((v - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn empty_documents_are_rejected() {
        assert!(matches!(
            cosine_tf("...", "safe"),
            Err(CosineError::EmptyDocument("first"))
        ));
        assert!(matches!(
            cosine_tf("safe", "  "),
            Err(CosineError::EmptyDocument("second"))
        ));
    }

    #[test]
    fn duplicating_a_document_leaves_tf_cosine_unchanged() {
        let a = "the system is acceptably safe";
        let b = "hazards are mitigated by the system";
        let once = cosine_tf(a, b).unwrap();
        let doubled = cosine_tf(&format!("{a} {a}"), b).unwrap();
        assert!((once - doubled).abs() <= 1e-12);
    }

    #[test]
    fn tf_cosine_is_symmetric() {
        let a = "argument over identified hazards";
        let b = "hazards argument with evidence";
        assert!((cosine_tf(a, b).unwrap() - cosine_tf(b, a).unwrap()).abs() <= 1e-12);
    }

    struct Fixed(Vec<Vec<f64>>);

    impl EmbeddingProvider for Fixed {
        fn embed(&self, _texts: &[&str]) -> Result<Vec<Vec<f64>>, EmbedError> {
            Ok(self.0.clone())
        }
    }

    #[test]
    fn embedding_cosine_can_be_negative() {
        let provider = Fixed(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]);
        let v = cosine_embedding("a", "b", &provider).unwrap();
        assert!((v + 1.0).abs() <= 1e-12);
    }

    #[test]
    fn embedding_contract_violations_are_errors() {
        let provider = Fixed(vec![vec![1.0], vec![1.0, 2.0]]);
        assert!(matches!(
            cosine_embedding("a", "b", &provider),
            Err(CosineError::DimensionMismatch { .. })
        ));
        let provider = Fixed(vec![vec![0.0], vec![1.0]]);
        assert!(matches!(
            cosine_embedding("a", "b", &provider),
            Err(CosineError::ZeroVector)
        ));
    }

    #[test]
    fn http_provider_parses_vectors() {
        use std::io::{Read, Write};
        let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        std::thread::spawn(move || {
            let (mut stream, _) = listener.accept().unwrap();
            let mut buf = [0u8; 8192];
            let _ = stream.read(&mut buf);
            let body = "{\"vectors\": [[1.0, 0.0], [0.0, 1.0]]}";
            let response = format!(
                "HTTP/1.1 200 OK\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{body}",
                body.len()
            );
            stream.write_all(response.as_bytes()).unwrap();
        });
        let provider = HttpEmbeddingProvider::new(&format!("http://{addr}")).unwrap();
        let v = cosine_embedding("a", "b", &provider).unwrap();
        assert!(v.abs() <= 1e-12);
    }
}
