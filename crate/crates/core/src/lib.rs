//! Co-speech gesture labeling toolkit.
//!
//! The crate turns plain dialogue text into gesture-labeled text and back,
//! grounded in a validated gesture ethogram:
//!
//! - [`ethogram`] — the three-layer gesture taxonomy (Intent → Sub-intent →
//!   Action), its file format, indices, and validation.
//! - [`annotation`] — gesture labels, the inline annotation grammar
//!   (`(id: A-97, description: spreading arms wide)`), sentence segmentation,
//!   and label validation against an ethogram.
//! - [`chain`] — the staged prompt orchestration (profile → theme/intent →
//!   keywords → gesture selection → reflection) against an abstract chat
//!   backend, with a deterministic scripted-replay backend for testing.
//! - [`dataset`] — building and persisting the text → labeled-text training
//!   dataset as line-delimited records, plus summary statistics.
//! - [`eval`] — the Partial Overlap metric over five emotion categories, with
//!   per-category, latency, and cost reporting.
//!
//! All text positions are measured in Unicode code points ("characters"), not
//! bytes, so annotations survive non-ASCII corpora.

pub mod annotation;
pub mod chain;
pub mod dataset;
pub mod diag;
pub mod ethogram;
pub mod eval;

pub use annotation::{AnnotatedText, CharSpan, GestureLabel, LabelId};
pub use chain::{ChainConfig, ChainRun, CharacterProfile, ChatBackend, ReflectionReport};
pub use dataset::{DatasetRecord, DatasetStats};
pub use diag::{Diagnostic, Severity};
pub use ethogram::{Ethogram, GestureEntry, GestureId, IntentCategory};
pub use eval::{EmotionCategory, EvalCase, EvalReport};
