//! Seeded synthetic graded corpus, word list, relation resource and
//! easy-word list. This is the documented generation procedure for the
//! committed files under `fixtures/`; a test asserts the committed bytes
//! match this generator, so the corpus is reproducible by construction.
//!
//! The construction plants signal deliberately:
//! - words per text, sentence length and the share of level C–F
//!   vocabulary all grow with the grade, so difficulty totals and ratios
//!   track grade tightly;
//! - grade-11 texts switch to short-spelled words with unchanged syllable
//!   counts, so letter density (which only the Coleman-Liau formula
//!   consumes) is not monotone between grades 10 and 12 while every
//!   feature of the 29-feature vector keeps its trend;
//! - names and a recurring topic noun give entity and chain features a
//!   presence with only mild grade signal.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

pub const CORPUS_FILE: &str = "synthetic_corpus.jsonl";
pub const WORDLIST_FILE: &str = "synthetic_wordlist.tsv";
pub const RELATIONS_FILE: &str = "synthetic_relations.txt";
pub const EASYWORDS_FILE: &str = "synthetic_easywords.txt";
pub const SELECTION_FIXTURE_FILE: &str = "reference_selection.tsv";

pub const FIXTURE_SEED: u64 = 20_240_817;
pub const TEXTS_PER_GRADE: usize = 16;
pub const GRADES: [f64; 7] = [7.0, 8.0, 9.0, 10.0, 11.0, 12.0, 12.5];

// Per-grade-bucket knobs, one entry per GRADES bucket.
/// Words per sentence, rising with grade.
const TARGET_WORDS_PER_SENTENCE: [f64; 7] = [9.0, 10.0, 11.0, 12.0, 12.5, 13.5, 14.0];
/// Words per text, linear in grade.
const TARGET_WORDS_PER_TEXT: [f64; 7] = [44.0, 54.0, 64.0, 74.0, 84.0, 94.0, 102.0];
/// Share of open noun slots filled from the level pools. Filled as an
/// exact per-sentence count, so difficulty ratios track the grade tightly.
const HARD_NOUN_SHARE: [f64; 7] = [0.10, 0.21, 0.32, 0.43, 0.54, 0.65, 0.70];
/// Probability that a hard draw uses the long entry of its pool.
const LONG_FRACTION: [f64; 7] = [0.45, 0.52, 0.60, 0.68, 0.76, 0.84, 0.90];
/// Probability that an adjective slot is filled, and that it is hard.
const ADJ_FILL: [f64; 7] = [0.30, 0.38, 0.46, 0.54, 0.62, 0.70, 0.74];
/// Probability that filler words use their long-spelled spelling. Every
/// pair below has identical syllable counts, so this knob moves letter
/// density alone; the grade-11 dip makes it non-monotone.
const LETTER_RICH: [f64; 7] = [0.50, 0.55, 0.60, 0.70, 0.12, 0.78, 0.82];

/// One-syllable nouns, (short-spelled, long-spelled).
const EASY_NOUNS: &[(&str, &str)] = &[
    ("cat", "school"),
    ("dog", "friend"),
    ("sun", "street"),
    ("map", "bridge"),
    ("cup", "breeze"),
    ("key", "branch"),
    ("egg", "church"),
    ("box", "wealth"),
    ("car", "growth"),
    ("pen", "strength"),
];
// Each level pool is (short, long) word pairs: same level, different
// syllable weight.
const C_NOUNS: &[(&str, &str)] = &[
    ("garden", "gardener"),
    ("market", "marketplace"),
    ("window", "windowsill"),
    ("teacher", "education"),
    ("journey", "travelling"),
    ("village", "villagery"),
];
const D_NOUNS: &[(&str, &str)] = &[
    ("outcome", "adventure"),
    ("insight", "discovery"),
    ("method", "obligation"),
    ("purpose", "astronomy"),
    ("pattern", "property"),
];
const E_NOUNS: &[(&str, &str)] = &[
    ("nuance", "hypothesis"),
    ("premise", "phenomenon"),
    ("paradox", "philosophy"),
    ("tenet", "methodology"),
];
const F_NOUNS: &[(&str, &str)] = &[
    ("axiom", "epistemology"),
    ("dogma", "jurisprudence"),
    ("ethos", "historiography"),
    ("canon", "institutionalism"),
];
/// One-syllable adjectives, (short-spelled, long-spelled).
const EASY_ADJS: &[(&str, &str)] = &[
    ("big", "great"),
    ("red", "small"),
    ("old", "short"),
    ("new", "young"),
    ("bad", "warm"),
];
const C_ADJS: &[(&str, &str)] = &[("useful", "cheerful"), ("simple", "basic")];
const D_ADJS: &[(&str, &str)] = &[("musical", "historic"), ("peaceful", "curious")];
const E_ADJS: &[(&str, &str)] = &[("systematic", "meticulous"), ("analytical", "ambitious")];
const F_ADJS: &[(&str, &str)] = &[
    ("paradigmatic", "ostentatious"),
    ("grandiloquent", "transcendental"),
];
const NAMES: &[&str] = &[
    "John", "Mary", "Tom", "Anna", "Peter", "Susan", "David", "Laura",
];
/// One-syllable verbs, (short-spelled, long-spelled).
const VERBS: &[(&str, &str)] = &[
    ("saw", "thought"),
    ("met", "brought"),
    ("got", "found"),
    ("ran", "kept"),
    ("did", "took"),
    ("sat", "made"),
];
const PREPS: &[&str] = &["in", "on", "near", "under", "during", "through"];

/// Relative weight of levels C/D/E/F within hard draws, per bucket.
const LEVEL_WEIGHTS: [[f64; 4]; 7] = [
    [0.85, 0.15, 0.00, 0.00],
    [0.65, 0.30, 0.05, 0.00],
    [0.50, 0.35, 0.15, 0.00],
    [0.35, 0.38, 0.22, 0.05],
    [0.25, 0.38, 0.27, 0.10],
    [0.18, 0.34, 0.31, 0.17],
    [0.12, 0.30, 0.34, 0.24],
];

fn pick<'a, R: Rng>(rng: &mut R, pool: &[&'a str]) -> &'a str {
    pool.choose(rng).expect("pools are non-empty")
}

fn pick_pair<'a, R: Rng>(rng: &mut R, pool: &[(&'a str, &'a str)], long: bool) -> &'a str {
    let &(short, long_word) = pool.choose(rng).expect("pools are non-empty");
    if long {
        long_word
    } else {
        short
    }
}

fn hard_noun<R: Rng>(rng: &mut R, bucket: usize) -> &'static str {
    let long = rng.gen_bool(LONG_FRACTION[bucket]);
    match pick_level(rng, bucket) {
        0 => pick_pair(rng, C_NOUNS, long),
        1 => pick_pair(rng, D_NOUNS, long),
        2 => pick_pair(rng, E_NOUNS, long),
        _ => pick_pair(rng, F_NOUNS, long),
    }
}

fn hard_adj<R: Rng>(rng: &mut R, bucket: usize) -> &'static str {
    let long = rng.gen_bool(LONG_FRACTION[bucket]);
    match pick_level(rng, bucket) {
        0 => pick_pair(rng, C_ADJS, long),
        1 => pick_pair(rng, D_ADJS, long),
        2 => pick_pair(rng, E_ADJS, long),
        _ => pick_pair(rng, F_ADJS, long),
    }
}

fn pick_level<R: Rng>(rng: &mut R, bucket: usize) -> usize {
    let weights = LEVEL_WEIGHTS[bucket];
    let draw: f64 = rng.gen();
    let mut acc = 0.0;
    for (level, &w) in weights.iter().enumerate() {
        acc += w;
        if draw < acc {
            return level;
        }
    }
    3
}

fn easy_noun<R: Rng>(rng: &mut R, bucket: usize) -> &'static str {
    let long = rng.gen_bool(LETTER_RICH[bucket]);
    pick_pair(rng, EASY_NOUNS, long)
}

fn easy_adj<R: Rng>(rng: &mut R, bucket: usize) -> &'static str {
    let long = rng.gen_bool(LETTER_RICH[bucket]);
    pick_pair(rng, EASY_ADJS, long)
}

fn verb<R: Rng>(rng: &mut R, bucket: usize) -> &'static str {
    let long = rng.gen_bool(LETTER_RICH[bucket]);
    pick_pair(rng, VERBS, long)
}

/// Append one sentence to `out`.
fn push_sentence<R: Rng>(out: &mut String, rng: &mut R, bucket: usize, topic: &str, name: &str) {
    let target = (TARGET_WORDS_PER_SENTENCE[bucket] + rng.gen_range(-1.0..=1.0)).round() as usize;

    // Lay the frame out first; noun slots are filled afterwards with an
    // exact hard-word count.
    enum Piece {
        Word(String),
        NounSlot,
    }
    let mut pieces: Vec<Piece> = Vec::new();
    let mut len = 0usize;
    let push_word = |pieces: &mut Vec<Piece>, len: &mut usize, w: String| {
        pieces.push(Piece::Word(w));
        *len += 1;
    };
    let push_slot = |pieces: &mut Vec<Piece>, len: &mut usize| {
        pieces.push(Piece::NounSlot);
        *len += 1;
    };

    if rng.gen_bool(0.35) {
        push_word(&mut pieces, &mut len, name.to_string());
    } else {
        push_word(&mut pieces, &mut len, "the".to_string());
        push_word(&mut pieces, &mut len, easy_noun(rng, bucket).to_string());
    }
    push_word(&mut pieces, &mut len, verb(rng, bucket).to_string());
    if rng.gen_bool(0.12 + 0.02 * bucket as f64) {
        // A name in object position is a proper noun mid-sentence.
        push_word(&mut pieces, &mut len, pick(rng, NAMES).to_string());
    } else {
        push_word(&mut pieces, &mut len, "the".to_string());
        if rng.gen_bool(ADJ_FILL[bucket]) {
            let adj = if rng.gen_bool(HARD_NOUN_SHARE[bucket]) {
                hard_adj(rng, bucket)
            } else {
                easy_adj(rng, bucket)
            };
            push_word(&mut pieces, &mut len, adj.to_string());
        }
        if rng.gen_bool(0.4) {
            push_word(&mut pieces, &mut len, topic.to_string());
        } else {
            push_slot(&mut pieces, &mut len);
        }
    }

    while len < target {
        push_word(&mut pieces, &mut len, pick(rng, PREPS).to_string());
        push_word(&mut pieces, &mut len, "the".to_string());
        if rng.gen_bool(ADJ_FILL[bucket] * 0.5) {
            let adj = if rng.gen_bool(HARD_NOUN_SHARE[bucket]) {
                hard_adj(rng, bucket)
            } else {
                easy_adj(rng, bucket)
            };
            push_word(&mut pieces, &mut len, adj.to_string());
        }
        push_slot(&mut pieces, &mut len);
    }

    // Fill the open noun slots with an exact hard-word count.
    let slots = pieces
        .iter()
        .filter(|p| matches!(p, Piece::NounSlot))
        .count();
    let mut hard_left =
        (slots as f64 * HARD_NOUN_SHARE[bucket] + rng.gen_range(0.0..1.0)).floor() as usize;
    let words: Vec<String> = pieces
        .into_iter()
        .map(|piece| match piece {
            Piece::Word(w) => w,
            Piece::NounSlot => {
                if hard_left > 0 {
                    hard_left -= 1;
                    hard_noun(rng, bucket).to_string()
                } else {
                    easy_noun(rng, bucket).to_string()
                }
            }
        })
        .collect();

    let mut sentence = words.join(" ");
    let first = sentence.remove(0).to_uppercase().to_string();
    let _ = write!(out, "{first}{sentence}. ");
}

fn build_text(bucket: usize, index: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(FIXTURE_SEED ^ (bucket as u64 * 10_007 + index as u64));
    let words_target = TARGET_WORDS_PER_TEXT[bucket] * (0.9 + 0.1 * (index % 3) as f64);
    let sentence_count =
        ((words_target / TARGET_WORDS_PER_SENTENCE[bucket]).round() as usize).clamp(3, 12);
    let topic = if rng.gen_bool(HARD_NOUN_SHARE[bucket]) {
        hard_noun(&mut rng, bucket)
    } else {
        easy_noun(&mut rng, bucket)
    };
    let name = pick(&mut rng, NAMES);
    let mut out = String::new();
    for _ in 0..sentence_count {
        push_sentence(&mut out, &mut rng, bucket, topic, name);
    }
    out.trim_end().to_string()
}

/// The corpus as line-delimited JSON records.
pub fn corpus_jsonl() -> String {
    use lxper_core::corpus::{Grade, GradedText, TextSource};
    let mut out = String::new();
    for (bucket, &grade) in GRADES.iter().enumerate() {
        for index in 0..TEXTS_PER_GRADE {
            let record = GradedText {
                id: format!("syn-{grade}-{index:02}"),
                grade: Grade::new(grade).expect("fixture grade in range"),
                source: match index % 3 {
                    0 => TextSource::Exam,
                    1 => TextSource::Textbook,
                    _ => TextSource::MockTest,
                },
                text: build_text(bucket, index),
            };
            out.push_str(&serde_json::to_string(&record).expect("record serializes"));
            out.push('\n');
        }
    }
    out
}

/// The graded word list covering the generator's pools.
pub fn wordlist_tsv() -> String {
    let mut lines: Vec<String> = Vec::new();
    for (i, &(short, long)) in EASY_NOUNS.iter().enumerate() {
        let level = if i % 2 == 0 { "A" } else { "B" };
        lines.push(format!("{short}\t{level}"));
        lines.push(format!("{long}\t{level}"));
    }
    for &(short, long) in EASY_ADJS {
        lines.push(format!("{short}\tA"));
        lines.push(format!("{long}\tA"));
    }
    for &(short, long) in VERBS {
        lines.push(format!("{short}\tB"));
        lines.push(format!("{long}\tB"));
    }
    for (level, nouns, adjs) in [
        ("C", C_NOUNS, C_ADJS),
        ("D", D_NOUNS, D_ADJS),
        ("E", E_NOUNS, E_ADJS),
        ("F", F_NOUNS, F_ADJS),
    ] {
        for &(short, long) in nouns {
            lines.push(format!("{short}\t{level}"));
            lines.push(format!("{long}\t{level}"));
        }
        for &(short, long) in adjs {
            lines.push(format!("{short}\t{level}"));
            lines.push(format!("{long}\t{level}"));
        }
    }
    for name in NAMES {
        lines.push(format!("{}\tU", name.to_lowercase()));
    }
    lines.sort();
    lines.push(String::new());
    lines.join("\n")
}

/// Synonym groups and hypernym edges over the generator's nouns.
pub fn relations_txt() -> String {
    concat!(
        "# synthetic relation resource\n",
        "syn:cat,dog,bird\n",
        "syn:street,bridge,road\n",
        "syn:journey,adventure\n",
        "syn:teacher,gardener\n",
        "syn:insight,nuance\n",
        "syn:growth,wealth\n",
        "hyp:cat\tanimal\n",
        "hyp:dog\tanimal\n",
        "hyp:garden\tproperty\n",
        "hyp:school\tbuilding\n",
        "hyp:church\tbuilding\n",
    )
    .to_string()
}

/// The easy-word list: function words plus the easy pools.
pub fn easywords_txt() -> String {
    let mut words: Vec<String> = Vec::new();
    for w in [
        "the", "a", "an", "and", "he", "she", "they", "it", "was", "were", "very", "much",
    ] {
        words.push(w.to_string());
    }
    for w in PREPS {
        words.push(w.to_string());
    }
    for &(short, long) in VERBS {
        words.push(short.to_string());
        words.push(long.to_string());
    }
    for &(short, long) in EASY_NOUNS {
        words.push(short.to_string());
        words.push(long.to_string());
    }
    for &(short, long) in EASY_ADJS {
        words.push(short.to_string());
        words.push(long.to_string());
    }
    words.sort();
    words.dedup();
    words.push(String::new());
    words.join("\n")
}

/// The reference selection fixture as a loadable selection table.
pub fn reference_selection_tsv() -> String {
    use lxper_core::selection::{finish_selection, significance_filter, SelectionTable};
    let report = super::published::report();
    let survivors = significance_filter(&report, 0.05);
    let result = finish_selection(
        &report,
        &survivors,
        &super::published::collinear_pairs(),
        0.05,
        0.85,
    );
    SelectionTable::build(&report, &result).to_tsv()
}
