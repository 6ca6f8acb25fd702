//! Partial Overlap evaluation over emotion categories.
//!
//! Gesture labels are mapped through the ethogram to one of five emotion
//! categories, and predictions are scored against gold labels with
//!
//! ```text
//! partial_overlap = sum_i |pred_i ∩ gold_i| / sum_i |gold_i|
//! ```
//!
//! computed in exact rational arithmetic. The report also aggregates
//! per-category hits, per-case latency, and token cost.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annotation::GestureLabel;
use crate::ethogram::Ethogram;

/// The five emotion categories gesture labels are clustered into.
/// `Special` covers gestures with unique meanings that do not reduce
/// to a single emotion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmotionCategory {
    Joy,
    Anger,
    Sorrow,
    Fear,
    Special,
}

impl EmotionCategory {
    pub const ALL: [EmotionCategory; 5] = [
        EmotionCategory::Joy,
        EmotionCategory::Anger,
        EmotionCategory::Sorrow,
        EmotionCategory::Fear,
        EmotionCategory::Special,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EmotionCategory::Joy => "joy",
            EmotionCategory::Anger => "anger",
            EmotionCategory::Sorrow => "sorrow",
            EmotionCategory::Fear => "fear",
            EmotionCategory::Special => "special",
        }
    }
}

impl fmt::Display for EmotionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EmotionCategory {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "joy" => Ok(EmotionCategory::Joy),
            "anger" => Ok(EmotionCategory::Anger),
            "sorrow" => Ok(EmotionCategory::Sorrow),
            "fear" => Ok(EmotionCategory::Fear),
            "special" => Ok(EmotionCategory::Special),
            other => Err(EvalError::UnknownCategory(other.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("unknown emotion category `{0}`")]
    UnknownCategory(String),
    #[error("unknown gesture id `{0}`")]
    UnknownId(String),
    #[error("case {case}: unknown gesture id `{id}` in gold labels")]
    UnknownGoldId { case: usize, id: String },
    #[error("total gold label count is zero; the metric is undefined")]
    ZeroGold,
    #[error("gold has {gold} cases but predictions have {pred}")]
    CaseCountMismatch { gold: usize, pred: usize },
}

/// One evaluation unit: a text with its gold and predicted labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalCase {
    pub text: String,
    pub gold_labels: Vec<GestureLabel>,
    pub predicted_labels: Vec<GestureLabel>,
}

/// Map labels to the (deduplicated) set of emotion categories of the
/// ethogram entries they reference. Errors on the first unknown id.
pub fn map_to_categories(
    labels: &[GestureLabel],
    ethogram: &Ethogram,
) -> Result<BTreeSet<EmotionCategory>, EvalError> {
    let mut out = BTreeSet::new();
    for label in labels {
        match ethogram.lookup_label(&label.id) {
            Some(entry) => {
                out.insert(entry.emotion_category);
            }
            None => return Err(EvalError::UnknownId(label.id.to_string())),
        }
    }
    Ok(out)
}

/// Lenient variant for predicted labels: unknown ids map to no category
/// (they count as misses) and are returned for logging.
pub fn map_known_categories(
    labels: &[GestureLabel],
    ethogram: &Ethogram,
) -> (BTreeSet<EmotionCategory>, Vec<String>) {
    let mut out = BTreeSet::new();
    let mut unknown = Vec::new();
    for label in labels {
        match ethogram.lookup_label(&label.id) {
            Some(entry) => {
                out.insert(entry.emotion_category);
            }
            None => unknown.push(label.id.to_string()),
        }
    }
    (out, unknown)
}

/// The Partial Overlap metric over category-mapped cases:
/// sum of per-case intersection sizes divided by the total gold size,
/// as an exact rational. Errors when the total gold size is zero.
pub fn partial_overlap(
    cases: &[(BTreeSet<EmotionCategory>, BTreeSet<EmotionCategory>)],
) -> Result<Ratio<u64>, EvalError> {
    let mut hits: u64 = 0;
    let mut gold: u64 = 0;
    for (gold_set, pred_set) in cases {
        gold += gold_set.len() as u64;
        hits += gold_set.intersection(pred_set).count() as u64;
    }
    if gold == 0 {
        return Err(EvalError::ZeroGold);
    }
    Ok(Ratio::new(hits, gold))
}

/// Per-category tally: how many cases list the category in gold, and in
/// how many of those the prediction also contains it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryHits {
    pub gold_count: u64,
    pub hit_count: u64,
}

/// Latency aggregates over per-case wall-clock durations.
/// Percentiles use the nearest-rank method (no interpolation).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LatencyStats {
    pub mean: Duration,
    pub p50: Duration,
    pub p95: Duration,
}

impl LatencyStats {
    pub fn from_timings(timings: &[Duration]) -> Self {
        if timings.is_empty() {
            return Self::default();
        }
        let total: Duration = timings.iter().sum();
        let mean = total / timings.len() as u32;
        let mut sorted = timings.to_vec();
        sorted.sort();
        Self {
            mean,
            p50: nearest_rank(&sorted, 50),
            p95: nearest_rank(&sorted, 95),
        }
    }
}

fn nearest_rank(sorted: &[Duration], percentile: u64) -> Duration {
    debug_assert!(!sorted.is_empty());
    let n = sorted.len() as u64;
    let rank = (percentile * n).div_ceil(100).max(1);
    sorted[(rank - 1) as usize]
}

/// Token totals with declared per-token prices, kept as exact rationals
/// so cost accounting reproduces hand arithmetic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UsageTotals {
    pub tokens_in: u64,
    pub tokens_out: u64,
    /// Price per input token in currency units, numerator/denominator.
    pub price_in: Ratio<u64>,
    /// Price per output token in currency units, numerator/denominator.
    pub price_out: Ratio<u64>,
}

impl UsageTotals {
    /// Exact total cost in currency units.
    pub fn amount(&self) -> Ratio<u128> {
        let widen = |r: Ratio<u64>| Ratio::new(*r.numer() as u128, *r.denom() as u128);
        widen(self.price_in) * Ratio::from_integer(self.tokens_in as u128)
            + widen(self.price_out) * Ratio::from_integer(self.tokens_out as u128)
    }
}

/// Render a non-negative rational as a fixed-point decimal string,
/// rounding half away from zero.
pub fn decimal_string(value: Ratio<u128>, places: u32) -> String {
    let scale = 10u128.pow(places);
    let scaled = value * Ratio::from_integer(scale);
    // round half up
    let rounded = (scaled.numer() * 2 + scaled.denom()) / (scaled.denom() * 2);
    let whole = rounded / scale;
    let frac = rounded % scale;
    if places == 0 {
        format!("{whole}")
    } else {
        format!("{whole}.{frac:0width$}", width = places as usize)
    }
}

fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Evaluation results: the metric, its per-category breakdown, and the
/// latency/cost accounting for the run that produced the predictions.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub partial_overlap: Ratio<u64>,
    pub per_category: BTreeMap<EmotionCategory, CategoryHits>,
    pub n_cases: usize,
    pub latency: LatencyStats,
    pub cost: UsageTotals,
}

impl EvalReport {
    pub fn partial_overlap_f64(&self) -> f64 {
        ratio_to_f64(self.partial_overlap)
    }

    /// Structured (JSON) form of the report. The metric is carried both as
    /// an exact numerator/denominator pair and as a decimal.
    pub fn to_json(&self) -> serde_json::Value {
        let per_category: serde_json::Map<String, serde_json::Value> = self
            .per_category
            .iter()
            .map(|(cat, hits)| {
                (
                    cat.as_str().to_string(),
                    serde_json::json!({ "gold_count": hits.gold_count, "hit_count": hits.hit_count }),
                )
            })
            .collect();
        serde_json::json!({
            "partial_overlap": {
                "numerator": *self.partial_overlap.numer(),
                "denominator": *self.partial_overlap.denom(),
                "value": self.partial_overlap_f64(),
            },
            "per_category": per_category,
            "n_cases": self.n_cases,
            "latency_seconds": {
                "mean": self.latency.mean.as_secs_f64(),
                "p50": self.latency.p50.as_secs_f64(),
                "p95": self.latency.p95.as_secs_f64(),
            },
            "cost": {
                "tokens_in": self.cost.tokens_in,
                "tokens_out": self.cost.tokens_out,
                "amount": decimal_string(self.cost.amount(), 4),
            },
        })
    }

    /// Aligned plain-text table.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cases:            {}", self.n_cases);
        let _ = writeln!(
            out,
            "partial_overlap:  {:.4} ({}/{})",
            self.partial_overlap_f64(),
            self.partial_overlap.numer(),
            self.partial_overlap.denom()
        );
        let _ = writeln!(out, "per-category      gold   hits");
        for (cat, hits) in &self.per_category {
            let _ = writeln!(out, "  {:<14} {:>5} {:>6}", cat, hits.gold_count, hits.hit_count);
        }
        let _ = writeln!(
            out,
            "latency:          mean {:.4} s, p50 {:.4} s, p95 {:.4} s",
            self.latency.mean.as_secs_f64(),
            self.latency.p50.as_secs_f64(),
            self.latency.p95.as_secs_f64()
        );
        let _ = writeln!(
            out,
            "cost:             {} in, {} out, amount {}",
            self.cost.tokens_in,
            self.cost.tokens_out,
            decimal_string(self.cost.amount(), 4)
        );
        out
    }
}

/// Outcome of [`evaluate`]: the report plus any unknown predicted ids that
/// were mapped to no category (counted as misses).
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub report: EvalReport,
    pub unknown_predicted_ids: Vec<String>,
}

/// Score predicted labels against gold labels over an ethogram.
///
/// Gold labels must all resolve in the ethogram (error with the case index
/// otherwise). Unknown predicted ids map to no category and are reported in
/// the outcome. `timings` are per-case wall-clock durations; pass an empty
/// slice when no timing data exists.
pub fn evaluate(
    cases: &[EvalCase],
    ethogram: &Ethogram,
    timings: &[Duration],
    usage: UsageTotals,
) -> Result<Evaluation, EvalError> {
    let mut mapped = Vec::with_capacity(cases.len());
    let mut unknown_predicted = Vec::new();
    for (index, case) in cases.iter().enumerate() {
        let gold = map_to_categories(&case.gold_labels, ethogram).map_err(|e| match e {
            EvalError::UnknownId(id) => EvalError::UnknownGoldId { case: index, id },
            other => other,
        })?;
        let (pred, mut unknown) = map_known_categories(&case.predicted_labels, ethogram);
        for id in unknown.drain(..) {
            tracing::warn!(case = index, id = %id, "predicted gesture id not in ethogram; counted as a miss");
            unknown_predicted.push(id);
        }
        mapped.push((gold, pred));
    }

    let overlap = partial_overlap(&mapped)?;

    let mut per_category: BTreeMap<EmotionCategory, CategoryHits> = BTreeMap::new();
    for (gold, pred) in &mapped {
        for cat in gold {
            let slot = per_category.entry(*cat).or_default();
            slot.gold_count += 1;
            if pred.contains(cat) {
                slot.hit_count += 1;
            }
        }
    }

    Ok(Evaluation {
        report: EvalReport {
            partial_overlap: overlap,
            per_category,
            n_cases: cases.len(),
            latency: LatencyStats::from_timings(timings),
            cost: usage,
        },
        unknown_predicted_ids: unknown_predicted,
    })
}

/// Side-by-side comparison of two reports as an aligned text table.
pub fn compare_reports(a: &EvalReport, b: &EvalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<22} {:>10} {:>10} {:>10}", "metric", "a", "b", "delta");
    let row = |out: &mut String, name: &str, va: f64, vb: f64| {
        let _ = writeln!(out, "{:<22} {:>10.4} {:>10.4} {:>+10.4}", name, va, vb, vb - va);
    };
    row(
        &mut out,
        "partial_overlap",
        a.partial_overlap_f64(),
        b.partial_overlap_f64(),
    );
    let _ = writeln!(
        out,
        "{:<22} {:>10} {:>10} {:>+10}",
        "n_cases",
        a.n_cases,
        b.n_cases,
        b.n_cases as i64 - a.n_cases as i64
    );
    for cat in EmotionCategory::ALL {
        let ha = a.per_category.get(&cat).copied().unwrap_or_default();
        let hb = b.per_category.get(&cat).copied().unwrap_or_default();
        if ha == CategoryHits::default() && hb == CategoryHits::default() {
            continue;
        }
        let recall = |h: CategoryHits| {
            if h.gold_count == 0 {
                0.0
            } else {
                h.hit_count as f64 / h.gold_count as f64
            }
        };
        row(&mut out, &format!("recall[{cat}]"), recall(ha), recall(hb));
    }
    row(
        &mut out,
        "latency_mean_s",
        a.latency.mean.as_secs_f64(),
        b.latency.mean.as_secs_f64(),
    );
    let amount = |r: &EvalReport| {
        r.cost
            .amount()
            .to_f64()
            .unwrap_or(f64::NAN)
    };
    row(&mut out, "cost_amount", amount(a), amount(b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(cats: &[EmotionCategory]) -> BTreeSet<EmotionCategory> {
        cats.iter().copied().collect()
    }

    #[test]
    fn perfect_match_is_one() {
        use EmotionCategory::*;
        let cases = vec![(set(&[Joy]), set(&[Joy])), (set(&[Fear, Anger]), set(&[Fear, Anger]))];
        assert_eq!(partial_overlap(&cases).unwrap(), Ratio::new(3, 3));
        assert_eq!(partial_overlap(&cases).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn empty_predictions_score_zero() {
        use EmotionCategory::*;
        let cases = vec![(set(&[Joy]), set(&[])), (set(&[Sorrow]), set(&[]))];
        assert_eq!(partial_overlap(&cases).unwrap(), Ratio::new(0, 2));
    }

    #[test]
    fn hand_computed_two_thirds() {
        // gold [{joy}, {fear, special}], pred [{joy}, {fear}] -> (1+1)/(1+2)
        use EmotionCategory::*;
        let cases = vec![
            (set(&[Joy]), set(&[Joy])),
            (set(&[Fear, Special]), set(&[Fear])),
        ];
        let r = partial_overlap(&cases).unwrap();
        assert_eq!(r, Ratio::new(2, 3));
        assert!((ratio_to_f64(r) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn zero_gold_is_an_error() {
        let cases = vec![(set(&[]), set(&[EmotionCategory::Joy]))];
        assert!(matches!(partial_overlap(&cases), Err(EvalError::ZeroGold)));
        assert!(matches!(partial_overlap(&[]), Err(EvalError::ZeroGold)));
    }

    #[test]
    fn monotone_in_correct_predictions() {
        use EmotionCategory::*;
        let base = vec![(set(&[Joy, Fear]), set(&[Joy]))];
        let more = vec![(set(&[Joy, Fear]), set(&[Joy, Fear]))];
        let wrong = vec![(set(&[Joy, Fear]), set(&[Joy, Anger]))];
        let b = partial_overlap(&base).unwrap();
        assert!(partial_overlap(&more).unwrap() > b);
        assert_eq!(partial_overlap(&wrong).unwrap(), b);
    }

    #[test]
    fn latency_mean_matches_fixture() {
        let stats = LatencyStats::from_timings(&[
            Duration::from_millis(300),
            Duration::from_millis(500),
        ]);
        assert_eq!(stats.mean.as_secs_f64(), 0.4);
        assert_eq!(stats.p50, Duration::from_millis(300));
        assert_eq!(stats.p95, Duration::from_millis(500));
    }

    #[test]
    fn cost_amount_is_exact() {
        let usage = UsageTotals {
            tokens_in: 8000,
            tokens_out: 500,
            price_in: Ratio::new(3, 100_000),
            price_out: Ratio::new(4, 100_000),
        };
        // 8000 * 3/100000 + 500 * 4/100000 = 0.24 + 0.02 = 0.26
        assert_eq!(usage.amount(), Ratio::new(26, 100));
        assert_eq!(decimal_string(usage.amount(), 4), "0.2600");
    }

    #[test]
    fn decimal_string_rounds_half_up() {
        assert_eq!(decimal_string(Ratio::new(2, 3), 4), "0.6667");
        assert_eq!(decimal_string(Ratio::new(1, 8), 2), "0.13");
        assert_eq!(decimal_string(Ratio::from_integer(5), 0), "5");
        assert_eq!(decimal_string(Ratio::new(131, 200), 4), "0.6550");
    }

    #[test]
    fn compare_reports_shows_deltas() {
        let report = |overlap: Ratio<u64>| EvalReport {
            partial_overlap: overlap,
            per_category: BTreeMap::new(),
            n_cases: 231,
            latency: LatencyStats::default(),
            cost: UsageTotals::default(),
        };
        let a = report(Ratio::new(655, 1000));
        let b = report(Ratio::new(502, 1000));
        let table = compare_reports(&a, &b);
        assert!(table.contains("-0.1530"), "table was:\n{table}");
        let same = compare_reports(&a, &a);
        assert!(same.contains("+0.0000"), "table was:\n{same}");
    }
}
