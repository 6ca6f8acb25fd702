//! The three-layer co-speech gesture ethogram.
//!
//! Gestures are organized as Intent Layer (four fixed categories) →
//! Sub-intent Layer (free-form refinement) → Action Layer (the concrete
//! gesture entries). Every entry carries a canonical id like `A-15`
//! (category letter + ordinal) and a flat numeric alias assigned 1..N in
//! document order, because downstream model output refers to gestures by
//! bare number while the taxonomy uses prefixed ids.
//!
//! The file format is a single JSON document with a top-level `entries`
//! array; field names are normative (`id`, `name`, `sub_intent`,
//! `description`, `guideline`, `keywords`, `emotion`, optional `flat_id`).

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diag::Diagnostic;
use crate::eval::EmotionCategory;

/// The four fixed gesture motivation categories of the Intent Layer.
/// The code letters A..D follow the taxonomy's row order and are stable:
/// ids would otherwise change meaning between files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IntentCategory {
    InformationDisplay,
    ConcreteReinforcement,
    ToneReinforcement,
    ComfortBehaviors,
}

impl IntentCategory {
    pub const ALL: [IntentCategory; 4] = [
        IntentCategory::InformationDisplay,
        IntentCategory::ConcreteReinforcement,
        IntentCategory::ToneReinforcement,
        IntentCategory::ComfortBehaviors,
    ];

    pub fn code(self) -> char {
        match self {
            IntentCategory::InformationDisplay => 'A',
            IntentCategory::ConcreteReinforcement => 'B',
            IntentCategory::ToneReinforcement => 'C',
            IntentCategory::ComfortBehaviors => 'D',
        }
    }

    pub fn from_code(code: char) -> Option<Self> {
        match code.to_ascii_uppercase() {
            'A' => Some(IntentCategory::InformationDisplay),
            'B' => Some(IntentCategory::ConcreteReinforcement),
            'C' => Some(IntentCategory::ToneReinforcement),
            'D' => Some(IntentCategory::ComfortBehaviors),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IntentCategory::InformationDisplay => "Information Display",
            IntentCategory::ConcreteReinforcement => "Concrete Reinforcement",
            IntentCategory::ToneReinforcement => "Tone Reinforcement",
            IntentCategory::ComfortBehaviors => "Comfort Behaviors",
        }
    }
}

/// Canonical gesture id: category letter plus 1-based ordinal, e.g. `A-15`.
/// Ordinals within a category need not be contiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GestureId {
    pub category: IntentCategory,
    pub ordinal: u32,
}

impl fmt::Display for GestureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.category.code(), self.ordinal)
    }
}

impl FromStr for GestureId {
    type Err = EthogramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = || -> Option<GestureId> {
            let (letter, ordinal) = s.split_once('-')?;
            let mut chars = letter.chars();
            let code = chars.next()?;
            if chars.next().is_some() {
                return None;
            }
            let category = IntentCategory::from_code(code)?;
            let ordinal: u32 = ordinal.parse().ok()?;
            if ordinal == 0 {
                return None;
            }
            Some(GestureId { category, ordinal })
        };
        parse().ok_or_else(|| EthogramError::UnknownId(s.to_string()))
    }
}

/// A gesture id as written in annotations: either canonical (`A-97`) or the
/// bare flat alias (`97`). The category letter is kept verbatim so labels
/// written against a different taxonomy still parse; resolution against an
/// ethogram decides whether they mean anything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelId {
    Canonical { letter: char, ordinal: u32 },
    Flat(u64),
}

impl LabelId {
    pub fn canonical(id: GestureId) -> Self {
        LabelId::Canonical {
            letter: id.category.code(),
            ordinal: id.ordinal,
        }
    }
}

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelId::Canonical { letter, ordinal } => write!(f, "{letter}-{ordinal}"),
            LabelId::Flat(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for LabelId {
    type Err = EthogramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) {
            let n: u64 = s
                .parse()
                .map_err(|_| EthogramError::UnknownId(s.to_string()))?;
            return Ok(LabelId::Flat(n));
        }
        let (letter, ordinal) = s
            .split_once('-')
            .ok_or_else(|| EthogramError::UnknownId(s.to_string()))?;
        let mut chars = letter.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_alphabetic() => {
                let ordinal: u32 = ordinal
                    .parse()
                    .map_err(|_| EthogramError::UnknownId(s.to_string()))?;
                Ok(LabelId::Canonical {
                    letter: c.to_ascii_uppercase(),
                    ordinal,
                })
            }
            _ => Err(EthogramError::UnknownId(s.to_string())),
        }
    }
}

impl Serialize for LabelId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LabelId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One Action Layer gesture with its taxonomy position, usage guideline,
/// trigger keywords, and emotion category for evaluation clustering.
#[derive(Debug, Clone, PartialEq)]
pub struct GestureEntry {
    pub id: GestureId,
    /// Short imperative phrase, e.g. "Stretch Shoulders".
    pub name: String,
    /// Sub-intent Layer label (free-form).
    pub sub_intent: String,
    pub description: String,
    /// Usage guideline: context and emotion correlations.
    pub guideline: String,
    /// Lowercase trigger words/phrases. May be empty.
    pub keywords: Vec<String>,
    pub emotion_category: EmotionCategory,
    /// 1-based position in document order, unique across the ethogram.
    pub flat_id: u32,
}

impl GestureEntry {
    fn locus(&self, index: usize) -> String {
        format!("entries[{index}] (id {})", self.id)
    }
}

#[derive(Debug, Error)]
pub enum EthogramError {
    #[error("failed to read ethogram: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed ethogram document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("ethogram has no entries")]
    EmptyEthogram,
    #[error("{locus}: duplicate id `{id}`")]
    DuplicateId { locus: String, id: String },
    #[error("entries[{index}]: unknown category letter in id `{id}` (expected A-D)")]
    UnknownCategory { index: usize, id: String },
    #[error("entries[{index}]: malformed id `{id}` (expected `<letter>-<ordinal>`)")]
    MalformedId { index: usize, id: String },
    #[error("{locus}: field `{field}` must not be empty")]
    EmptyField { locus: String, field: String },
    #[error("{locus}: flat_id {found} does not match document position {expected}")]
    FlatIdMismatch {
        locus: String,
        found: u32,
        expected: u32,
    },
    #[error("unknown gesture id `{0}`")]
    UnknownId(String),
    #[error("keyword query must not be empty")]
    EmptyKeywordQuery,
}

/// The validated, indexed gesture collection.
///
/// Immutable after load; all lookups are read-only, so an `Ethogram` can be
/// shared freely across threads.
#[derive(Debug, Clone)]
pub struct Ethogram {
    entries: Vec<GestureEntry>,
    by_id: HashMap<(char, u32), usize>,
    by_flat: HashMap<u32, usize>,
    by_keyword: HashMap<String, Vec<usize>>,
}

impl PartialEq for Ethogram {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Ethogram {
    /// Build from entries, rejecting anything [`Ethogram::validate`] would
    /// flag.
    pub fn new(entries: Vec<GestureEntry>) -> Result<Self, EthogramError> {
        let ethogram = Self::from_entries_unchecked(entries);
        if let Some(diag) = ethogram.validate().into_iter().next() {
            return Err(diag_to_error(diag, &ethogram));
        }
        Ok(ethogram)
    }

    /// Build without validating. Exists so validation tooling and tests can
    /// construct deliberately broken ethograms; everything else should use
    /// [`Ethogram::new`] or [`load_ethogram`].
    pub fn from_entries_unchecked(entries: Vec<GestureEntry>) -> Self {
        let mut by_id = HashMap::new();
        let mut by_flat = HashMap::new();
        let mut by_keyword: HashMap<String, Vec<usize>> = HashMap::new();
        for (index, entry) in entries.iter().enumerate() {
            by_id
                .entry((entry.id.category.code(), entry.id.ordinal))
                .or_insert(index);
            by_flat.entry(entry.flat_id).or_insert(index);
            for keyword in &entry.keywords {
                let slot = by_keyword.entry(keyword.to_lowercase()).or_default();
                if !slot.contains(&index) {
                    slot.push(index);
                }
            }
        }
        Self {
            entries,
            by_id,
            by_flat,
            by_keyword,
        }
    }

    pub fn entries(&self) -> &[GestureEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Look up by id string: canonical form (`D-2`) or bare flat form (`97`).
    /// Both forms of the same entry return the identical entry.
    pub fn lookup(&self, id: &str) -> Result<&GestureEntry, EthogramError> {
        let label_id: LabelId = id.parse()?;
        self.lookup_label(&label_id)
            .ok_or_else(|| EthogramError::UnknownId(id.to_string()))
    }

    /// Resolve an annotation-level id reference, if it names an entry.
    pub fn lookup_label(&self, id: &LabelId) -> Option<&GestureEntry> {
        match id {
            LabelId::Canonical { letter, ordinal } => {
                IntentCategory::from_code(*letter)?;
                self.by_id
                    .get(&(letter.to_ascii_uppercase(), *ordinal))
                    .map(|&i| &self.entries[i])
            }
            LabelId::Flat(n) => {
                let n = u32::try_from(*n).ok()?;
                self.by_flat.get(&n).map(|&i| &self.entries[i])
            }
        }
    }

    /// All entries whose keyword list contains the token (whole-phrase,
    /// case-insensitive), in flat_id order. Empty token is a precondition
    /// violation.
    pub fn search_by_keyword(&self, token: &str) -> Result<Vec<&GestureEntry>, EthogramError> {
        let key = token.trim().to_lowercase();
        if key.is_empty() {
            return Err(EthogramError::EmptyKeywordQuery);
        }
        let mut hits: Vec<&GestureEntry> = self
            .by_keyword
            .get(&key)
            .map(|indices| indices.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default();
        hits.sort_by_key(|e| e.flat_id);
        Ok(hits)
    }

    /// Check every ethogram invariant. Returns an empty list exactly when
    /// they all hold; each diagnostic names the offending entry and field.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        if self.entries.is_empty() {
            diags.push(Diagnostic::error("entries", "ethogram has no entries"));
            return diags;
        }
        let mut seen_ids: HashMap<(char, u32), usize> = HashMap::new();
        let mut seen_flat: HashMap<u32, usize> = HashMap::new();
        for (index, entry) in self.entries.iter().enumerate() {
            let locus = entry.locus(index);
            for (field, value) in [
                ("name", &entry.name),
                ("sub_intent", &entry.sub_intent),
                ("description", &entry.description),
            ] {
                if value.trim().is_empty() {
                    diags.push(Diagnostic::error(
                        locus.clone(),
                        format!("field `{field}` must not be empty"),
                    ));
                }
            }
            let key = (entry.id.category.code(), entry.id.ordinal);
            if let Some(first) = seen_ids.insert(key, index) {
                diags.push(Diagnostic::error(
                    locus.clone(),
                    format!("duplicate id `{}` (first at entries[{first}])", entry.id),
                ));
            }
            if let Some(first) = seen_flat.insert(entry.flat_id, index) {
                diags.push(Diagnostic::error(
                    locus.clone(),
                    format!(
                        "duplicate flat_id {} (first at entries[{first}])",
                        entry.flat_id
                    ),
                ));
            }
            let expected_flat = index as u32 + 1;
            if entry.flat_id != expected_flat {
                diags.push(Diagnostic::error(
                    locus.clone(),
                    format!(
                        "flat_id {} breaks the contiguous 1..N document-order sequence (expected {expected_flat})",
                        entry.flat_id
                    ),
                ));
            }
            let mut seen_keywords = HashMap::new();
            for (ki, keyword) in entry.keywords.iter().enumerate() {
                if keyword.trim().is_empty() {
                    diags.push(Diagnostic::error(
                        locus.clone(),
                        format!("keywords[{ki}] is empty"),
                    ));
                } else if *keyword != keyword.to_lowercase() {
                    diags.push(Diagnostic::error(
                        locus.clone(),
                        format!("keywords[{ki}] `{keyword}` is not lowercase"),
                    ));
                } else if let Some(first) = seen_keywords.insert(keyword.clone(), ki) {
                    diags.push(Diagnostic::error(
                        locus.clone(),
                        format!("keywords[{ki}] duplicates keywords[{first}]"),
                    ));
                }
            }
        }
        diags
    }
}

fn diag_to_error(diag: Diagnostic, _ethogram: &Ethogram) -> EthogramError {
    // Surface the first validation failure as a typed load error. The
    // message already carries the locus.
    if diag.message.contains("duplicate id") || diag.message.contains("duplicate flat_id") {
        let id = diag
            .message
            .split('`')
            .nth(1)
            .unwrap_or_default()
            .to_string();
        EthogramError::DuplicateId {
            locus: diag.locus,
            id,
        }
    } else if diag.message.contains("must not be empty") || diag.message.contains("is empty") {
        let field = diag
            .message
            .split('`')
            .nth(1)
            .unwrap_or("keywords")
            .to_string();
        EthogramError::EmptyField {
            locus: diag.locus,
            field,
        }
    } else if diag.locus == "entries" {
        EthogramError::EmptyEthogram
    } else {
        EthogramError::EmptyField {
            locus: diag.locus,
            field: diag.message,
        }
    }
}

// ---------------------------------------------------------------------------
// File format

#[derive(Serialize, Deserialize)]
struct EthogramDoc {
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    id: String,
    name: String,
    sub_intent: String,
    description: String,
    guideline: String,
    keywords: Vec<String>,
    emotion: EmotionCategory,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    flat_id: Option<u32>,
}

/// Load and fully validate an ethogram from its JSON document form.
///
/// Keywords are normalized (trimmed, lowercased, deduplicated, empties
/// dropped). `flat_id` may be omitted and is then assigned in document
/// order; when present it must equal the entry's 1-based position, since
/// flat ids are required to be the contiguous document-order sequence.
pub fn load_ethogram_str(source: &str) -> Result<Ethogram, EthogramError> {
    let doc: EthogramDoc = serde_json::from_str(source)?;
    if doc.entries.is_empty() {
        return Err(EthogramError::EmptyEthogram);
    }
    let mut entries = Vec::with_capacity(doc.entries.len());
    for (index, raw) in doc.entries.into_iter().enumerate() {
        let expected_flat = index as u32 + 1;
        let id: GestureId = raw.id.parse().map_err(|_| {
            // Distinguish a bad letter from a structurally broken id for
            // friendlier messages.
            let well_formed = raw
                .id
                .split_once('-')
                .map(|(l, o)| l.chars().count() == 1 && o.chars().all(|c| c.is_ascii_digit()))
                .unwrap_or(false);
            if well_formed {
                EthogramError::UnknownCategory {
                    index,
                    id: raw.id.clone(),
                }
            } else {
                EthogramError::MalformedId {
                    index,
                    id: raw.id.clone(),
                }
            }
        })?;
        if let Some(found) = raw.flat_id {
            if found != expected_flat {
                return Err(EthogramError::FlatIdMismatch {
                    locus: format!("entries[{index}] (id {id})"),
                    found,
                    expected: expected_flat,
                });
            }
        }
        let mut keywords: Vec<String> = Vec::new();
        for keyword in raw.keywords {
            let normalized = keyword.trim().to_lowercase();
            if !normalized.is_empty() && !keywords.contains(&normalized) {
                keywords.push(normalized);
            }
        }
        entries.push(GestureEntry {
            id,
            name: raw.name,
            sub_intent: raw.sub_intent,
            description: raw.description,
            guideline: raw.guideline,
            keywords,
            emotion_category: raw.emotion,
            flat_id: expected_flat,
        });
    }
    Ethogram::new(entries)
}

/// Load from any reader (see [`load_ethogram_str`]).
pub fn load_ethogram(mut source: impl Read) -> Result<Ethogram, EthogramError> {
    let mut buf = String::new();
    source.read_to_string(&mut buf)?;
    load_ethogram_str(&buf)
}

pub fn load_ethogram_path(path: impl AsRef<Path>) -> Result<Ethogram, EthogramError> {
    let text = std::fs::read_to_string(path)?;
    load_ethogram_str(&text)
}

/// Serialize back to the document form, flat ids written explicitly.
/// `load_ethogram_str(render_ethogram(e)) == e` for every valid ethogram.
pub fn render_ethogram(ethogram: &Ethogram) -> String {
    let doc = EthogramDoc {
        entries: ethogram
            .entries()
            .iter()
            .map(|e| EntryDoc {
                id: e.id.to_string(),
                name: e.name.clone(),
                sub_intent: e.sub_intent.clone(),
                description: e.description.clone(),
                guideline: e.guideline.clone(),
                keywords: e.keywords.clone(),
                emotion: e.emotion_category,
                flat_id: Some(e.flat_id),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("ethogram doc serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(id: &str, flat: u32, name: &str) -> GestureEntry {
        GestureEntry {
            id: id.parse().unwrap(),
            name: name.to_string(),
            sub_intent: "Sub".to_string(),
            description: format!("{name} description"),
            guideline: format!("Use when {name} fits."),
            keywords: vec![],
            emotion_category: EmotionCategory::Joy,
            flat_id: flat,
        }
    }

    fn sample_doc() -> &'static str {
        r#"{
          "entries": [
            {"id": "A-1", "name": "Stretch Shoulders", "sub_intent": "Display Appearance",
             "description": "Roll the shoulders back to present posture.",
             "guideline": "Use when presenting appearance or confidence.",
             "keywords": ["posture"], "emotion": "special"},
            {"id": "A-2", "name": "Thumbs Down", "sub_intent": "Display Special Meaning",
             "description": "Turn a thumb downward to signal disapproval.",
             "guideline": "Use for rejection or disapproval.",
             "keywords": ["bad", "terrible"], "emotion": "anger"},
            {"id": "D-1", "name": "Rub or Pinch Fingers", "sub_intent": "Soothe Nervousness",
             "description": "Rub fingertips together.",
             "guideline": "Use in nervous or hesitant moments.",
             "keywords": ["nervous"], "emotion": "fear"},
            {"id": "D-2", "name": "Cover Eyes with Hands", "sub_intent": "Soothe Fear",
             "description": "Bring hands over the eyes.",
             "guideline": "Use when shielding from something frightening.",
             "keywords": ["scared", "terrible"], "emotion": "fear"}
          ]
        }"#
    }

    #[test]
    fn loads_and_indexes() {
        let e = load_ethogram_str(sample_doc()).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(e.lookup("A-1").unwrap().name, "Stretch Shoulders");
        assert_eq!(e.lookup("D-2").unwrap().name, "Cover Eyes with Hands");
        // flat alias: document order
        assert_eq!(e.lookup("1").unwrap().name, "Stretch Shoulders");
        assert_eq!(e.lookup("4").unwrap().name, "Cover Eyes with Hands");
        // canonical and flat forms agree
        assert_eq!(e.lookup("D-1").unwrap(), e.lookup("3").unwrap());
    }

    #[test]
    fn lookup_unknown_forms() {
        let e = load_ethogram_str(sample_doc()).unwrap();
        assert!(matches!(e.lookup("Z-9"), Err(EthogramError::UnknownId(_))));
        assert!(matches!(e.lookup("A-999"), Err(EthogramError::UnknownId(_))));
        assert!(matches!(e.lookup("97"), Err(EthogramError::UnknownId(_))));
        assert!(matches!(e.lookup(""), Err(EthogramError::UnknownId(_))));
    }

    #[test]
    fn empty_document_is_rejected() {
        let err = load_ethogram_str(r#"{"entries": []}"#).unwrap_err();
        assert!(matches!(err, EthogramError::EmptyEthogram));
    }

    #[test]
    fn duplicate_id_is_rejected_with_locus() {
        let doc = r#"{"entries": [
            {"id": "D-1", "name": "One", "sub_intent": "S", "description": "d",
             "guideline": "g", "keywords": [], "emotion": "joy"},
            {"id": "D-1", "name": "Two", "sub_intent": "S", "description": "d",
             "guideline": "g", "keywords": [], "emotion": "joy"}
        ]}"#;
        let err = load_ethogram_str(doc).unwrap_err();
        match err {
            EthogramError::DuplicateId { locus, id } => {
                assert_eq!(id, "D-1");
                assert!(locus.contains("entries[1]"), "locus was {locus}");
            }
            other => panic!("expected DuplicateId, got {other}"),
        }
    }

    #[test]
    fn unknown_category_letter_is_rejected() {
        let doc = r#"{"entries": [
            {"id": "E-1", "name": "One", "sub_intent": "S", "description": "d",
             "guideline": "g", "keywords": [], "emotion": "joy"}
        ]}"#;
        assert!(matches!(
            load_ethogram_str(doc).unwrap_err(),
            EthogramError::UnknownCategory { index: 0, .. }
        ));
    }

    #[test]
    fn empty_required_field_is_rejected() {
        let doc = r#"{"entries": [
            {"id": "A-1", "name": "", "sub_intent": "S", "description": "d",
             "guideline": "g", "keywords": [], "emotion": "joy"}
        ]}"#;
        assert!(matches!(
            load_ethogram_str(doc).unwrap_err(),
            EthogramError::EmptyField { .. }
        ));
    }

    #[test]
    fn explicit_flat_id_must_match_position() {
        let doc = r#"{"entries": [
            {"id": "A-1", "name": "One", "sub_intent": "S", "description": "d",
             "guideline": "g", "keywords": [], "emotion": "joy", "flat_id": 2}
        ]}"#;
        assert!(matches!(
            load_ethogram_str(doc).unwrap_err(),
            EthogramError::FlatIdMismatch { found: 2, expected: 1, .. }
        ));
    }

    #[test]
    fn malformed_json_reports_parse_error() {
        assert!(matches!(
            load_ethogram_str("{ not json").unwrap_err(),
            EthogramError::Parse(_)
        ));
    }

    #[test]
    fn keyword_search_is_case_insensitive_whole_phrase() {
        let e = load_ethogram_str(sample_doc()).unwrap();
        let hits = e.search_by_keyword("TERRIBLE").unwrap();
        assert_eq!(hits.len(), 2);
        // flat order
        assert_eq!(hits[0].id.to_string(), "A-2");
        assert_eq!(hits[1].id.to_string(), "D-2");
        assert!(e.search_by_keyword("terribl").unwrap().is_empty());
        assert!(matches!(
            e.search_by_keyword("  "),
            Err(EthogramError::EmptyKeywordQuery)
        ));
    }

    #[test]
    fn validate_flags_duplicate_flat_id() {
        let entries = vec![entry("A-1", 1, "One"), entry("A-2", 1, "Two")];
        let e = Ethogram::from_entries_unchecked(entries);
        let diags = e.validate();
        assert!(diags
            .iter()
            .any(|d| d.message.contains("duplicate flat_id 1")));
    }

    #[test]
    fn validate_flags_empty_name() {
        let mut bad = entry("A-1", 1, "One");
        bad.name = String::new();
        let e = Ethogram::from_entries_unchecked(vec![bad]);
        let diags = e.validate();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("`name`"));
    }

    #[test]
    fn validate_is_clean_for_loaded_fixture() {
        let e = load_ethogram_str(sample_doc()).unwrap();
        assert!(e.validate().is_empty());
    }

    #[test]
    fn render_round_trips() {
        let e = load_ethogram_str(sample_doc()).unwrap();
        let rendered = render_ethogram(&e);
        let reloaded = load_ethogram_str(&rendered).unwrap();
        assert_eq!(e, reloaded);
    }

    #[test]
    fn loader_normalizes_keywords() {
        let doc = r#"{"entries": [
            {"id": "A-1", "name": "One", "sub_intent": "S", "description": "d",
             "guideline": "g", "keywords": [" Excited ", "excited", ""], "emotion": "joy"}
        ]}"#;
        let e = load_ethogram_str(doc).unwrap();
        assert_eq!(e.entries()[0].keywords, vec!["excited".to_string()]);
        assert!(e.validate().is_empty());
    }

    #[test]
    fn unknown_document_key_is_rejected() {
        let doc = r#"{"entries": [
            {"id": "A-1", "name": "One", "sub_intent": "S", "description": "d",
             "guideline": "g", "keywords": [], "emotion": "joy", "keyword": []}
        ]}"#;
        assert!(matches!(
            load_ethogram_str(doc).unwrap_err(),
            EthogramError::Parse(_)
        ));
    }

    #[test]
    fn label_id_forms() {
        assert_eq!("A-97".parse::<LabelId>().unwrap().to_string(), "A-97");
        assert_eq!("a-97".parse::<LabelId>().unwrap().to_string(), "A-97");
        assert_eq!("9".parse::<LabelId>().unwrap().to_string(), "9");
        assert!("".parse::<LabelId>().is_err());
        assert!("A97".parse::<LabelId>().is_err());
        assert!("A-".parse::<LabelId>().is_err());
    }
}
