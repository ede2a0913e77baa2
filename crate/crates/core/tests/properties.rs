use std::collections::HashSet;

use corpuskit_core::corpus::{
    build_dedup_index, count_words, dedup_corpus, normalize_sentence, sample_paragraphs, ReservoirSampler,
    SentenceRecord,
};
use corpuskit_core::metrics::{
    copa_select, geo_eval, haversine_km, span_f1, token_micro_f1, CopaPrediction, GeoPair, LabeledSequence, LatLon,
    EARTH_RADIUS_KM,
};
use corpuskit_core::stats::special::student_t_two_sided;
use corpuskit_core::stats::{compare_systems, significance_stars, t_test, RunScores, VarianceModel};
use corpuskit_core::tokenizer::{
    decode, encode, pre_tokenize, train_wordpiece, PreTokenizerConfig, Vocabulary, UNK_TOKEN,
};
use proptest::prelude::*;
use proptest::sample::select;
use statrs::distribution::{ContinuousCDF, StudentsT};

fn sentence() -> impl Strategy<Value = String> {
    let word = select(vec![
        "Dobar",
        "dan",
        "čovjek",
        "Čovjek",
        "s\u{30C}uma",
        "šuma",
        "kuća",
        "A",
        "a",
        "je.",
    ]);
    let sep = select(vec![" ", "  ", "\t", "\u{a0}"]);
    prop::collection::vec((word, sep), 0..4).prop_map(|parts| {
        let mut s = String::new();
        for (w, sep) in parts {
            s.push_str(sep);
            s.push_str(w);
        }
        s
    })
}

fn corpus() -> impl Strategy<Value = Vec<SentenceRecord>> {
    prop::collection::vec(sentence(), 0..60)
        .prop_map(|lines| lines.iter().filter_map(|l| normalize_sentence(l)).collect())
}

fn texts(records: &[SentenceRecord]) -> Vec<&str> {
    records.iter().map(SentenceRecord::text).collect()
}

fn coordinate() -> impl Strategy<Value = LatLon> {
    (-90.0f64..=90.0, -180.0f64..=180.0).prop_map(|(lat, lon)| LatLon { lat, lon })
}

fn bio_labels(n: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(select(vec!["O", "B-PER", "I-PER", "B-LOC", "I-LOC"]), n)
        .prop_map(|v| v.into_iter().map(String::from).collect())
}

fn labeled() -> impl Strategy<Value = Vec<LabeledSequence>> {
    prop::collection::vec(
        (1usize..10)
            .prop_flat_map(|n| (bio_labels(n), bio_labels(n)))
            .prop_map(|(gold, pred)| LabeledSequence {
                tokens: (0..gold.len()).map(|i| i.to_string()).collect(),
                gold,
                pred,
            }),
        0..6,
    )
}

fn sample() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(50.0f64..100.0, 2..10)
}

fn non_ascii_letters(s: &str) -> Vec<char> {
    let mut v: Vec<char> = s.chars().filter(|c| !c.is_ascii() && c.is_alphabetic()).collect();
    v.sort_unstable();
    v
}

fn unk_count(vocab: &Vocabulary, text: &str, config: &PreTokenizerConfig) -> usize {
    let unk = vocab.id(UNK_TOKEN).unwrap();
    encode(text, vocab, config).iter().filter(|&&id| id == unk).count()
}

fn croatian_text() -> impl Strategy<Value = String> {
    prop::collection::vec("[a-dčćšžđČŠ]{1,7}[,.!]?", 1..25).prop_map(|w| w.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dedup_output_is_an_idempotent_subsequence(reference in corpus(), input in corpus(), within: bool) {
        let index = build_dedup_index([("ref", reference)], 8).unwrap();
        let (kept, stats) = dedup_corpus(input.clone(), &index, within);
        let mut it = input.iter().map(SentenceRecord::text);
        prop_assert!(kept.iter().all(|k| it.any(|x| x == k.text())));
        prop_assert_eq!(stats.sentence_count + stats.removed_count, input.len() as u64);
        let (again, again_stats) = dedup_corpus(kept.clone(), &index, within);
        prop_assert_eq!(again_stats.removed_count, 0);
        prop_assert_eq!(texts(&again), texts(&kept));
    }

    #[test]
    fn precedence_keeps_each_sentence_in_one_output(corpora in prop::collection::vec(corpus(), 1..4), within: bool) {
        let mut outputs: Vec<HashSet<String>> = Vec::new();
        for (k, c) in corpora.iter().enumerate() {
            let refs: Vec<_> = corpora[..k].iter().map(|r| ("r", r.clone())).collect();
            let index = build_dedup_index(refs, 4).unwrap();
            let (kept, _) = dedup_corpus(c.clone(), &index, within);
            if within {
                let unique: HashSet<&str> = texts(&kept).into_iter().collect();
                prop_assert_eq!(unique.len(), kept.len());
            }
            outputs.push(kept.into_iter().map(SentenceRecord::into_text).collect());
        }
        for i in 0..outputs.len() {
            for j in i + 1..outputs.len() {
                prop_assert!(outputs[i].is_disjoint(&outputs[j]));
            }
        }
    }

    #[test]
    fn word_counts_add_over_concatenation(a in corpus(), b in corpus()) {
        let joined: Vec<SentenceRecord> = a.iter().chain(&b).cloned().collect();
        prop_assert_eq!(count_words(&joined), count_words(&a) + count_words(&b));
    }

    #[test]
    fn reservoir_ignores_chunking(items in prop::collection::vec(any::<u32>(), 0..200), cuts in prop::collection::vec(0usize..200, 0..5), k in 1usize..20, seed: u64) {
        let mut whole = ReservoirSampler::new(k, seed).unwrap();
        items.iter().for_each(|&x| whole.push(x));
        let mut bounds: Vec<usize> = cuts.into_iter().map(|c| c.min(items.len())).collect();
        bounds.sort_unstable();
        let mut chunked = ReservoirSampler::new(k, seed).unwrap();
        let mut start = 0;
        for end in bounds.into_iter().chain([items.len()]) {
            for &x in &items[start..end] {
                chunked.push(x);
            }
            start = end;
        }
        prop_assert_eq!(whole.into_sorted(), chunked.into_sorted());
    }

    #[test]
    fn paragraph_sample_ignores_chunking(records in corpus(), split in 0usize..60, k in 1usize..5, seed: u64) {
        let records: Vec<SentenceRecord> = records.into_iter().enumerate().map(|(i, r)| r.with_boundary(i % 3 == 0 && i > 0)).collect();
        let split = split.min(records.len());
        let direct = sample_paragraphs(records.clone(), k, seed).unwrap();
        let chained = sample_paragraphs(records[..split].iter().cloned().chain(records[split..].iter().cloned()), k, seed).unwrap();
        prop_assert_eq!(direct, chained);
    }

    #[test]
    fn tokenizer_round_trip_and_valid_ids(text in croatian_text(), extra in 0usize..40, lowercase: bool) {
        let config = PreTokenizerConfig { lowercase, ..PreTokenizerConfig::default() };
        let vocab = train_wordpiece(&[&text], 1000 + extra, &config, 1).unwrap();
        let ids = encode(&text, &vocab, &config);
        prop_assert!(ids.iter().all(|&id| (id as usize) < vocab.len()));
        let words = pre_tokenize(&text, &config);
        prop_assert!(ids.len() >= words.len());
        let decoded = decode(&ids, &vocab).unwrap();
        prop_assert_eq!(&decoded, &words.join(" "));
        prop_assert_eq!(non_ascii_letters(&decoded), non_ascii_letters(&words.join(" ")));
        // determinism
        prop_assert_eq!(&vocab, &train_wordpiece(&[&text], 1000 + extra, &config, 1).unwrap());
        prop_assert_eq!(ids, encode(&text, &vocab, &config));
    }

    #[test]
    fn diacritics_survive_small_vocabularies(text in croatian_text(), size in 0usize..30) {
        let config = PreTokenizerConfig::default();
        let floor = 5 + 25;
        let vocab = train_wordpiece(&[&text], floor + size, &config, 2).unwrap();
        let decoded = decode(&encode(&text, &vocab, &config), &vocab).unwrap();
        prop_assert_eq!(non_ascii_letters(&decoded), non_ascii_letters(&text));
    }

    #[test]
    fn larger_vocabularies_never_add_unknowns(train in croatian_text(), probe in croatian_text(), a in 0usize..40, b in 0usize..40) {
        let config = PreTokenizerConfig::default();
        let floor = 5 + 25;
        let (small, large) = (floor + a.min(b), floor + a.max(b));
        let vs = train_wordpiece(&[&train], small, &config, 1).unwrap();
        let vl = train_wordpiece(&[&train], large, &config, 1).unwrap();
        prop_assert!(unk_count(&vl, &probe, &config) <= unk_count(&vs, &probe, &config));
    }

    #[test]
    fn micro_f1_is_accuracy_and_in_range(data in labeled()) {
        let total: usize = data.iter().map(|s| s.gold.len()).sum();
        let correct: usize = data.iter().map(|s| s.gold.iter().zip(&s.pred).filter(|(g, p)| g == p).count()).sum();
        let acc = if total == 0 { 0.0 } else { 100.0 * correct as f64 / total as f64 };
        let f1 = token_micro_f1(&data).unwrap();
        prop_assert_eq!(f1, acc);
        prop_assert!((0.0..=100.0).contains(&f1));
    }

    #[test]
    fn span_f1_swaps_precision_and_recall(data in labeled()) {
        let swapped: Vec<LabeledSequence> = data
            .iter()
            .map(|s| LabeledSequence { tokens: s.tokens.clone(), gold: s.pred.clone(), pred: s.gold.clone() })
            .collect();
        let a = span_f1(&data).unwrap();
        let b = span_f1(&swapped).unwrap();
        prop_assert_eq!(a.precision, b.recall);
        prop_assert_eq!(a.recall, b.precision);
        prop_assert!((a.f1 - b.f1).abs() <= 1e-12);
        for v in [a.precision, a.recall, a.f1] {
            prop_assert!((0.0..=100.0).contains(&v));
        }
    }

    #[test]
    fn haversine_is_a_bounded_metric(a in coordinate(), b in coordinate(), c in coordinate()) {
        let d = |x, y| haversine_km(x, y).unwrap();
        let half = std::f64::consts::PI * EARTH_RADIUS_KM;
        prop_assert_eq!(d(a, b), d(b, a));
        prop_assert!(d(a, b) >= 0.0 && d(a, b).is_finite());
        prop_assert_eq!(d(a, a), 0.0);
        prop_assert!(d(a, b) <= half + 1e-9);
        prop_assert!(d(a, c) <= d(a, b) + d(b, c) + 1e-6);
    }

    #[test]
    fn geo_summary_ignores_order(pairs in prop::collection::vec((coordinate(), coordinate()), 1..30), rot in 0usize..30) {
        let mut pairs: Vec<GeoPair> = pairs.into_iter().map(|(gold, pred)| GeoPair { gold, pred }).collect();
        let a = geo_eval(&pairs).unwrap();
        pairs.reverse();
        let len = pairs.len();
        pairs.rotate_left(rot % len);
        let b = geo_eval(&pairs).unwrap();
        prop_assert_eq!(a.median_km, b.median_km);
        prop_assert!((a.mean_km - b.mean_km).abs() <= 1e-9 * a.mean_km.max(1.0));
        prop_assert!(a.median_km >= 0.0 && a.mean_km >= 0.0);
    }

    #[test]
    fn copa_depends_on_margins_only(l in prop::array::uniform4(-5.0f64..5.0), c in -20.0f64..20.0, up in 0.0f64..5.0) {
        let pred = CopaPrediction { idx: 0, choice1_logits: (l[0], l[1]), choice2_logits: (l[2], l[3]) };
        let shifted = CopaPrediction { choice1_logits: (l[0] + c, l[1] + c), ..pred };
        let margin1 = (l[1] - l[0]).abs();
        let margin2 = (l[3] - l[2]).abs();
        prop_assume!(((l[1] - l[0]) - (l[3] - l[2])).abs() > 1e-9 * (1.0 + margin1 + margin2));
        prop_assert_eq!(copa_select(&pred).unwrap(), copa_select(&shifted).unwrap());
        let boosted = CopaPrediction { choice1_logits: (l[0], l[1] + up), ..pred };
        if copa_select(&pred).unwrap() == 0 {
            prop_assert_eq!(copa_select(&boosted).unwrap(), 0);
        }
    }

    #[test]
    fn t_test_is_antisymmetric(a in sample(), b in sample(), pooled: bool) {
        let model = if pooled { VarianceModel::Pooled } else { VarianceModel::Welch };
        let ab = t_test(&a, &b, model).unwrap();
        let ba = t_test(&b, &a, model).unwrap();
        prop_assert_eq!(ab.t_statistic, -ba.t_statistic);
        prop_assert_eq!(ab.p_value, ba.p_value);
    }

    #[test]
    fn t_test_is_affine_invariant(a in sample(), b in sample(), k in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0], c in -100.0f64..100.0) {
        let f = |x: &Vec<f64>| x.iter().map(|v| k * v + c).collect::<Vec<_>>();
        let r = t_test(&a, &b, VarianceModel::Welch).unwrap();
        let s = t_test(&f(&a), &f(&b), VarianceModel::Welch).unwrap();
        prop_assert!((r.t_statistic.abs() - s.t_statistic.abs()).abs() <= 1e-8 * r.t_statistic.abs().max(1.0));
        prop_assert!((r.p_value - s.p_value).abs() <= 1e-9);
    }

    #[test]
    fn stars_never_increase_with_p(p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        let stars = |x| significance_stars(x).unwrap().matches('*').count();
        prop_assert!(stars(lo) >= stars(hi));
    }

    #[test]
    fn t_distribution_matches_reference(t in -40.0f64..40.0, df in 1.0f64..200.0) {
        let reference = 2.0 * StudentsT::new(0.0, 1.0, df).unwrap().sf(t.abs());
        prop_assert!((student_t_two_sided(t, df) - reference).abs() <= 1e-9);
    }

    #[test]
    fn ranking_ignores_input_order(scores in prop::collection::vec(prop::collection::vec(80.0f64..95.0, 1..5), 1..6), rot in 0usize..6, lower: bool) {
        let runs: Vec<RunScores> = scores.iter().enumerate().map(|(i, s)| RunScores::new(format!("sys{i}"), s.clone())).collect();
        let mut shuffled = runs.clone();
        shuffled.reverse();
        let len = shuffled.len();
        shuffled.rotate_left(rot % len);
        let a = compare_systems(&runs, !lower, VarianceModel::Welch).unwrap();
        let b = compare_systems(&shuffled, !lower, VarianceModel::Welch).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn star_boundaries_are_inclusive() {
    for (p, want) in [
        (0.0001, "****"),
        (0.001, "***"),
        (0.01, "**"),
        (0.05, "*"),
        (0.0500001, "ns"),
    ] {
        assert_eq!(significance_stars(p).unwrap(), want, "p = {p}");
    }
}
