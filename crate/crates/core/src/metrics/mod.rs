//! Evaluation protocols for tagging, NER, geolocation and COPA.
//!
//! All functions take gold and predicted values already parsed; scores come
//! back in full precision and are rounded only when rendered.

mod copa;
mod geo;
mod ner;
mod tagging;

pub use copa::{copa_accuracy, copa_select, positive_probability, CopaInstance, CopaPrediction, Question};
pub use geo::{
    centroid, centroid_baseline, geo_eval, haversine_km, median, GeoPair, GeoSummary, LatLon, EARTH_RADIUS_KM,
};
pub use ner::{extract_spans, sequence_span_counts, span_counts, span_f1, PrecisionRecallF1, Span, SpanCounts};
pub use tagging::{accuracy_percent, sequence_accuracy_counts, token_accuracy_counts, token_micro_f1, LabeledSequence};

/// Percentage with 0/0 defined as 0.
pub(crate) fn percent(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        100.0 * num as f64 / den as f64
    }
}
