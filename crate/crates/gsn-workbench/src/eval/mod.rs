//! Measurement kit: Kendall's tau inter-rater agreement, cosine document
//! similarity, 1-5 rating ingestion and aggregation, the percent-based
//! grade mapping, and report tables.

mod cosine;
mod ratings;
mod report;
mod score;
mod tau;

pub use cosine::{
    cosine_embedding, cosine_similarity, cosine_tf, CosineError, EmbedError, EmbeddingProvider,
    HttpEmbeddingProvider, TfVector, Vectorizer, EMBED_API_KEY_VAR,
};
pub use ratings::{
    ingest_ratings, parse_ratings, IngestError, Measure, RatingRecord, RatingsError, RowError,
    RATINGS_HEADER,
};
pub use report::{emit_report, ReportFormat};
pub use score::{
    aggregate_ratings, display_2dp, grade_of, grade_with, known_discrepancy_footnote,
    nearest_integer, percent_of_score, round_half_up_2, EvalError, GradeScale, RoundingMode,
    ScoreRow, ScoreTable,
};
pub use tau::{kendalls_tau, TauError};
