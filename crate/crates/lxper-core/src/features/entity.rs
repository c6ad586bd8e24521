//! Entity mentions and unique-entity features.
//!
//! The default strategy is parse-based and deterministic: a mention is a
//! maximal NP whose head (the rightmost noun-tagged leaf) exists, and the
//! entity key is the lowercased head with a plural `s` stripped. Other
//! strategies (a recognizer-backed one, say) plug in via
//! [`EntityStrategy`].

use std::collections::BTreeSet;

use super::{exact_ratio, FeatureCode, FeatureError, FeatureVector};
use crate::textproc::{noun_lemma, AnalyzedText, ParseTree};

const HEAD_TAGS: &[&str] = &["NN", "NNS", "NNP", "NNPS"];

/// Entities found in a text.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EntityIndex {
    /// Distinct entity keys.
    pub entities: BTreeSet<String>,
    /// Total mention count.
    pub mentions: usize,
    /// Unique entities per sentence, in sentence order.
    pub per_sentence_unique: Vec<usize>,
}

/// A way of finding entity mentions in an annotated text.
pub trait EntityStrategy {
    fn index(&self, text: &AnalyzedText) -> EntityIndex;
}

/// The default strategy: maximal NPs keyed by their head noun.
#[derive(Debug, Clone, Copy, Default)]
pub struct NpHeadEntities;

impl EntityStrategy for NpHeadEntities {
    fn index(&self, text: &AnalyzedText) -> EntityIndex {
        let mut index = EntityIndex::default();
        for sentence in &text.sentences {
            let mut keys_here = BTreeSet::new();
            collect_maximal_np_heads(&sentence.tree, &mut |head_tag, head_text| {
                let key = noun_lemma(&head_text.to_lowercase(), head_tag);
                index.mentions += 1;
                keys_here.insert(key.clone());
                index.entities.insert(key);
            });
            index.per_sentence_unique.push(keys_here.len());
        }
        index
    }
}

/// Scan each sentence tree for maximal NPs and index their head nouns.
pub fn build_entity_index(text: &AnalyzedText) -> EntityIndex {
    NpHeadEntities.index(text)
}

/// Walk the tree; at each maximal NP (an NP not dominated by another NP)
/// report its head and do not look for nested NPs inside it.
fn collect_maximal_np_heads(tree: &ParseTree, report: &mut impl FnMut(&str, &str)) {
    match tree {
        ParseTree::Leaf { .. } => {}
        ParseTree::Node { children, .. } => {
            if tree.base_label() == "NP" {
                if let Some((tag, text)) = rightmost_noun_leaf(tree) {
                    report(tag, text);
                }
            } else {
                for child in children {
                    collect_maximal_np_heads(child, report);
                }
            }
        }
    }
}

fn rightmost_noun_leaf(tree: &ParseTree) -> Option<(&str, &str)> {
    tree.leaves()
        .filter(|(tag, _)| HEAD_TAGS.contains(tag))
        .last()
}

/// The three entity features.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntityFeatures {
    pub unique_entity_total: usize,
    pub mentions_per_sentence: f64,
    pub unique_per_sentence: f64,
}

impl EntityFeatures {
    pub fn write_into(&self, vector: &mut FeatureVector) {
        use FeatureCode::*;
        vector.set(UniqueEntityTotal, self.unique_entity_total as f64);
        vector.set(EntityMentionsPerSentence, self.mentions_per_sentence);
        vector.set(UniqueEntitiesPerSentence, self.unique_per_sentence);
    }
}

/// Derive nUE, aEM and aUE from an index.
pub fn entity_features(
    index: &EntityIndex,
    sentence_count: usize,
) -> Result<EntityFeatures, FeatureError> {
    if sentence_count == 0 {
        return Err(FeatureError::ZeroSentences);
    }
    let s = sentence_count as f64;
    Ok(EntityFeatures {
        unique_entity_total: index.entities.len(),
        mentions_per_sentence: exact_ratio(index.mentions as f64, s),
        unique_per_sentence: exact_ratio(index.entities.len() as f64, s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::{parse_tree_lines, tokenize, Sentence};

    fn text_from_trees(trees: &str) -> AnalyzedText {
        let trees = parse_tree_lines(trees).unwrap();
        let sentences: Vec<Sentence> = trees
            .into_iter()
            .map(|tree| {
                let surface: Vec<String> = tree.leaves().map(|(_, t)| t.to_string()).collect();
                Sentence {
                    tokens: tokenize(&surface.join(" ")),
                    tree,
                }
            })
            .collect();
        let word_count = sentences.iter().map(|s| s.word_tokens().count()).sum();
        AnalyzedText {
            noun_lemmas: vec![Vec::new(); sentences.len()],
            syllable_counts: vec![1; word_count],
            word_count,
            sentences,
        }
    }

    #[test]
    fn mentions_dedup_to_entities() {
        let text = text_from_trees(
            "(S (NP (NNP John)) (VP (VBD met) (NP (NNP John))))\n\
             (S (NP (NNP Mary)) (VP (VBD left)))",
        );
        let index = build_entity_index(&text);
        let keys: Vec<&str> = index.entities.iter().map(|s| s.as_str()).collect();
        assert_eq!(keys, vec!["john", "mary"]);
        assert_eq!(index.mentions, 3);
        assert_eq!(index.per_sentence_unique, vec![1, 1]);
    }

    #[test]
    fn text_without_nouns_has_no_entities() {
        let text = text_from_trees("(S (NP (PRP He)) (VP (VBD ran)))");
        let index = build_entity_index(&text);
        assert_eq!(index.entities.len(), 0);
        assert_eq!(index.mentions, 0);
    }

    #[test]
    fn repeating_a_sentence_doubles_mentions_only() {
        let one = text_from_trees("(S (NP (DT the) (NN cat)) (VP (VBD sat)))");
        let two = text_from_trees(
            "(S (NP (DT the) (NN cat)) (VP (VBD sat)))\n\
             (S (NP (DT the) (NN cat)) (VP (VBD sat)))",
        );
        let index_one = build_entity_index(&one);
        let index_two = build_entity_index(&two);
        assert_eq!(index_one.entities, index_two.entities);
        assert_eq!(index_two.mentions, 2 * index_one.mentions);
    }

    #[test]
    fn nested_np_counts_once_via_the_maximal_np() {
        // The inner NP (the mat) is dominated by the PP inside VP, which is
        // not an NP, so it is itself maximal: two mentions in total.
        let text = text_from_trees(
            "(S (NP (DT The) (NN cat)) (VP (VBD sat) (PP (IN on) (NP (DT the) (NN mat)))))",
        );
        let index = build_entity_index(&text);
        assert_eq!(index.mentions, 2);
        // A genuinely nested NP is absorbed by its parent NP.
        let nested =
            text_from_trees("(S (NP (NP (DT the) (NN cat)) (CC and) (NP (DT the) (NN dog))))");
        let index = build_entity_index(&nested);
        assert_eq!(index.mentions, 1);
        assert_eq!(
            index.entities.iter().next().map(|s| s.as_str()),
            Some("dog")
        );
    }

    #[test]
    fn plural_heads_share_a_key_with_singular_heads() {
        let text = text_from_trees(
            "(S (NP (NNS cats)) (VP (VBD slept)))\n(S (NP (NN cat)) (VP (VBD ran)))",
        );
        let index = build_entity_index(&text);
        assert_eq!(index.entities.len(), 1);
        assert_eq!(index.mentions, 2);
    }

    #[test]
    fn ratios_from_counts() {
        let index = EntityIndex {
            entities: ["john".to_string(), "mary".to_string()]
                .into_iter()
                .collect(),
            mentions: 3,
            per_sentence_unique: vec![1, 1],
        };
        let f = entity_features(&index, 2).unwrap();
        assert_eq!(f.unique_entity_total, 2);
        assert_eq!(f.mentions_per_sentence, 1.5);
        assert_eq!(f.unique_per_sentence, 1.0);
    }

    #[test]
    fn empty_index_is_all_zero() {
        let f = entity_features(&EntityIndex::default(), 4).unwrap();
        assert_eq!(f.unique_entity_total, 0);
        assert_eq!(f.mentions_per_sentence, 0.0);
        assert_eq!(f.unique_per_sentence, 0.0);
    }

    #[test]
    fn single_entity_mentioned_five_times() {
        let index = EntityIndex {
            entities: ["cat".to_string()].into_iter().collect(),
            mentions: 5,
            per_sentence_unique: vec![1],
        };
        let f = entity_features(&index, 1).unwrap();
        assert_eq!(f.unique_entity_total, 1);
        assert_eq!(f.mentions_per_sentence, 5.0);
        assert_eq!(f.unique_per_sentence, 1.0);
    }

    #[test]
    fn zero_sentences_is_an_error() {
        assert!(entity_features(&EntityIndex::default(), 0).is_err());
    }
}
