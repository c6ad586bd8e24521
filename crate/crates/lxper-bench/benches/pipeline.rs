//! Benchmarks for the pipeline's hot paths: annotation, feature
//! extraction, correlation, selection, and training. Inputs come from the
//! corpus fixtures bundled with the core crate.

use std::path::PathBuf;

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use lxper_core::corpus::{load_text_corpus, load_word_list, GradedTextCorpus, GradedWordList};
use lxper_core::features::{extract_all, FeatureVector, RelationResource};
use lxper_core::model::{train, TrainingMeta};
use lxper_core::selection::{pearson, select_features};
use lxper_core::textproc::{annotate, AnalyzedText, ParseSource};
use lxper_core::FeatureCode;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../lxper-core/fixtures")
        .join(name)
}

struct Inputs {
    corpus: GradedTextCorpus,
    wordlist: GradedWordList,
    resource: RelationResource,
    analyzed: Vec<AnalyzedText>,
    matrix: Vec<FeatureVector>,
    grades: Vec<f64>,
}

fn load_inputs() -> Inputs {
    let corpus = load_text_corpus(&fixture("synthetic_corpus.jsonl")).unwrap();
    let (wordlist, _) = load_word_list(&fixture("synthetic_wordlist.tsv")).unwrap();
    let resource = RelationResource::load(&fixture("synthetic_relations.txt")).unwrap();
    let analyzed: Vec<AnalyzedText> = corpus
        .texts()
        .iter()
        .map(|t| annotate(&t.text, &ParseSource::Heuristic).unwrap())
        .collect();
    let matrix: Vec<FeatureVector> = analyzed
        .iter()
        .map(|a| extract_all(a, &wordlist, &resource).unwrap())
        .collect();
    let grades: Vec<f64> = corpus.texts().iter().map(|t| t.grade.value()).collect();
    Inputs {
        corpus,
        wordlist,
        resource,
        analyzed,
        matrix,
        grades,
    }
}

fn bench_pipeline(c: &mut Criterion) {
    let inputs = load_inputs();
    let longest = inputs
        .corpus
        .texts()
        .iter()
        .max_by_key(|t| t.text.len())
        .unwrap();

    c.bench_function("annotate_one_text", |b| {
        b.iter(|| annotate(black_box(&longest.text), &ParseSource::Heuristic).unwrap())
    });

    let analyzed = annotate(&longest.text, &ParseSource::Heuristic).unwrap();
    c.bench_function("extract_29_features", |b| {
        b.iter(|| extract_all(black_box(&analyzed), &inputs.wordlist, &inputs.resource).unwrap())
    });

    let series_x: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37).sin() * 5.0).collect();
    let series_y: Vec<f64> = (0..1000)
        .map(|i| (i as f64 * 0.37).sin() * 3.0 + (i % 7) as f64)
        .collect();
    c.bench_function("pearson_1000", |b| {
        b.iter(|| pearson(black_box(&series_x), black_box(&series_y)).unwrap())
    });

    c.bench_function("select_features_full_corpus", |b| {
        b.iter(|| select_features(black_box(&inputs.matrix), &inputs.grades, 0.05, 0.85).unwrap())
    });

    let codes: Vec<FeatureCode> = FeatureCode::ALL
        .iter()
        .copied()
        .filter(|c| !matches!(c.code(), "M3S" | "nSBr" | "nUE" | "aLCn"))
        .collect();
    let rows: Vec<Vec<f64>> = inputs
        .matrix
        .iter()
        .map(|v| codes.iter().map(|&c| v.get(c)).collect())
        .collect();
    c.bench_function("train_ols", |b| {
        b.iter(|| {
            train(
                black_box(&codes),
                black_box(&rows),
                &inputs.grades,
                TrainingMeta::default(),
            )
            .unwrap()
        })
    });

    c.bench_function("flesch_kincaid_corpus", |b| {
        b.iter(|| {
            inputs
                .analyzed
                .iter()
                .map(|a| lxper_core::baselines::flesch_kincaid(black_box(a)).unwrap())
                .sum::<f64>()
        })
    });
}

criterion_group!(benches, bench_pipeline);
criterion_main!(benches);
