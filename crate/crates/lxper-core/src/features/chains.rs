//! Lexical chains over noun occurrences.
//!
//! A greedy single pass over nouns in document order: an occurrence
//! attaches to the most recently extended chain whose last member is
//! related to it (same lemma, shared synonym group, or a direct hypernym
//! edge in either direction), otherwise it opens a candidate chain.
//! Candidates that never reach two members are discarded.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use super::{exact_ratio, FeatureCode, FeatureError, FeatureFlag, FeatureVector};
use crate::textproc::AnalyzedText;

/// Synonym groups and hypernym edges used to relate noun lemmas.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RelationResource {
    groups: Vec<BTreeSet<String>>,
    group_index: BTreeMap<String, Vec<usize>>,
    hypernyms: BTreeMap<String, BTreeSet<String>>,
    /// Identifier of the loaded resource, carried into chain sets.
    pub resource_id: String,
}

impl RelationResource {
    /// An empty resource: only same-lemma links relate occurrences.
    pub fn empty() -> RelationResource {
        RelationResource {
            resource_id: "empty".to_string(),
            ..RelationResource::default()
        }
    }

    /// Load from a text file with `syn:lemma1,lemma2,...` and
    /// `hyp:child<TAB>parent` lines. Lemmas are lowercased; hypernym
    /// edges must be acyclic.
    pub fn load(path: &Path) -> Result<RelationResource, FeatureError> {
        let display = path.display().to_string();
        let content = std::fs::read_to_string(path)
            .map_err(|e| FeatureError::Io(display.clone(), e.to_string()))?;
        Self::parse(&content, &display)
    }

    pub fn parse(content: &str, origin: &str) -> Result<RelationResource, FeatureError> {
        let mut resource = RelationResource {
            resource_id: origin.to_string(),
            ..RelationResource::default()
        };
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |message: String| FeatureError::MalformedRelation {
                path: origin.to_string(),
                line: lineno + 1,
                message,
            };
            if let Some(rest) = line.strip_prefix("syn:") {
                let group: BTreeSet<String> = rest
                    .split(',')
                    .map(|w| w.trim().to_lowercase())
                    .filter(|w| !w.is_empty())
                    .collect();
                if group.len() < 2 {
                    return Err(malformed("synonym group needs at least two lemmas".into()));
                }
                let id = resource.groups.len();
                for lemma in &group {
                    resource
                        .group_index
                        .entry(lemma.clone())
                        .or_default()
                        .push(id);
                }
                resource.groups.push(group);
            } else if let Some(rest) = line.strip_prefix("hyp:") {
                let (child, parent) = rest
                    .split_once('\t')
                    .ok_or_else(|| malformed("expected hyp:child<TAB>parent".into()))?;
                let child = child.trim().to_lowercase();
                let parent = parent.trim().to_lowercase();
                if child.is_empty() || parent.is_empty() {
                    return Err(malformed("empty lemma in hypernym edge".into()));
                }
                resource.hypernyms.entry(child).or_default().insert(parent);
            } else {
                return Err(malformed("expected a syn: or hyp: line".into()));
            }
        }
        resource.check_acyclic()?;
        Ok(resource)
    }

    fn check_acyclic(&self) -> Result<(), FeatureError> {
        // Colors: 0 unvisited, 1 on the current path, 2 done.
        let mut color: BTreeMap<&str, u8> = BTreeMap::new();
        fn visit<'a>(
            node: &'a str,
            edges: &'a BTreeMap<String, BTreeSet<String>>,
            color: &mut BTreeMap<&'a str, u8>,
        ) -> Result<(), FeatureError> {
            match color.get(node) {
                Some(1) => return Err(FeatureError::HypernymCycle(node.to_string())),
                Some(2) => return Ok(()),
                _ => {}
            }
            color.insert(node, 1);
            if let Some(parents) = edges.get(node) {
                for parent in parents {
                    visit(parent, edges, color)?;
                }
            }
            color.insert(node, 2);
            Ok(())
        }
        for node in self.hypernyms.keys() {
            visit(node, &self.hypernyms, &mut color)?;
        }
        Ok(())
    }

    /// Are two lemmas related: same lemma, shared synonym group, or a
    /// direct hypernym edge in either direction?
    pub fn related(&self, a: &str, b: &str) -> bool {
        if a == b {
            return true;
        }
        if let (Some(ga), Some(gb)) = (self.group_index.get(a), self.group_index.get(b)) {
            if ga.iter().any(|id| gb.contains(id)) {
                return true;
            }
        }
        let edge = |child: &str, parent: &str| {
            self.hypernyms
                .get(child)
                .is_some_and(|parents| parents.contains(parent))
        };
        edge(a, b) || edge(b, a)
    }
}

/// One chain: (sentence index, noun lemma) members in document order.
pub type LexicalChain = Vec<(usize, String)>;

/// All chains found in a text.
#[derive(Debug, Clone, PartialEq)]
pub struct LexicalChainSet {
    pub chains: Vec<LexicalChain>,
    pub resource_id: String,
}

impl LexicalChainSet {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }
}

/// Run the greedy chainer over the text's noun occurrences.
pub fn build_lexical_chains(text: &AnalyzedText, resource: &RelationResource) -> LexicalChainSet {
    // Candidate chains, each remembering when it was last extended.
    struct Candidate {
        members: LexicalChain,
        last_extended: usize,
    }
    let mut candidates: Vec<Candidate> = Vec::new();

    let occurrences = text
        .noun_lemmas
        .iter()
        .enumerate()
        .flat_map(|(si, lemmas)| lemmas.iter().map(move |l| (si, l.as_str())));
    for (position, (sentence, lemma)) in occurrences.enumerate() {
        // Most recently extended chain first.
        let mut order: Vec<usize> = (0..candidates.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(candidates[i].last_extended));
        let attached = order.into_iter().find(|&i| {
            let last = &candidates[i]
                .members
                .last()
                .expect("chains are non-empty")
                .1;
            resource.related(last, lemma)
        });
        match attached {
            Some(i) => {
                candidates[i].members.push((sentence, lemma.to_string()));
                candidates[i].last_extended = position;
            }
            None => candidates.push(Candidate {
                members: vec![(sentence, lemma.to_string())],
                last_extended: position,
            }),
        }
    }

    LexicalChainSet {
        chains: candidates
            .into_iter()
            .filter(|c| c.members.len() >= 2)
            .map(|c| c.members)
            .collect(),
        resource_id: resource.resource_id.clone(),
    }
}

/// The three lexical chain features.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainFeatures {
    pub chain_total: usize,
    pub chains_per_word: f64,
    pub chains_per_noun_phrase: f64,
    pub per_noun_phrase_undefined: bool,
}

impl ChainFeatures {
    pub fn write_into(&self, vector: &mut FeatureVector) {
        use FeatureCode::*;
        vector.set(LexicalChainTotal, self.chain_total as f64);
        vector.set(LexicalChainsPerWord, self.chains_per_word);
        vector.set(LexicalChainsPerNounPhrase, self.chains_per_noun_phrase);
        if self.per_noun_phrase_undefined {
            vector.flag(FeatureFlag::ChainsPerNounPhraseUndefined);
        }
    }
}

/// Derive nLC, aLCw and aLCn. When the text has no noun phrases, aLCn is
/// reported as 0 and flagged.
pub fn lexical_chain_features(
    chains: &LexicalChainSet,
    word_count: usize,
    np_count: usize,
) -> Result<ChainFeatures, FeatureError> {
    if word_count == 0 {
        return Err(FeatureError::ZeroWords);
    }
    let n = chains.len() as f64;
    let per_noun_phrase_undefined = np_count == 0;
    Ok(ChainFeatures {
        chain_total: chains.len(),
        chains_per_word: exact_ratio(n, word_count as f64),
        chains_per_noun_phrase: if per_noun_phrase_undefined {
            0.0
        } else {
            exact_ratio(n, np_count as f64)
        },
        per_noun_phrase_undefined,
    })
}
