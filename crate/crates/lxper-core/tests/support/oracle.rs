//! Independent oracles: each takes a different computational route from
//! the implementation it checks.

use std::collections::BTreeMap;

use lxper_core::textproc::ParseTree;

/// Pearson correlation straight from the raw-moment definition
/// E[xy] − E[x]E[y] over the product of standard deviations. The library
/// uses a two-pass mean-centered form; this one-pass route is the checker.
pub fn pearson_definition(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sum_x: f64 = x.iter().sum();
    let sum_y: f64 = y.iter().sum();
    let sum_xy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let sum_xx: f64 = x.iter().map(|a| a * a).sum();
    let sum_yy: f64 = y.iter().map(|b| b * b).sum();
    let cov = sum_xy / n - (sum_x / n) * (sum_y / n);
    let var_x = sum_xx / n - (sum_x / n) * (sum_x / n);
    let var_y = sum_yy / n - (sum_y / n) * (sum_y / n);
    cov / (var_x * var_y).sqrt()
}

/// Exhaustive tree statistics via an explicit work stack (no recursion,
/// no label filtering): every internal node's base label and every leaf
/// tag is tallied.
pub struct TreeTally {
    pub constituents: BTreeMap<String, usize>,
    pub leaf_tags: BTreeMap<String, usize>,
    pub leaf_count: usize,
}

pub fn tally_tree(tree: &ParseTree) -> TreeTally {
    let mut tally = TreeTally {
        constituents: BTreeMap::new(),
        leaf_tags: BTreeMap::new(),
        leaf_count: 0,
    };
    let mut stack = vec![tree];
    while let Some(node) = stack.pop() {
        match node {
            ParseTree::Leaf { label, .. } => {
                *tally.leaf_tags.entry(label.clone()).or_insert(0) += 1;
                tally.leaf_count += 1;
            }
            ParseTree::Node { children, .. } => {
                *tally
                    .constituents
                    .entry(node.base_label().to_string())
                    .or_insert(0) += 1;
                stack.extend(children.iter());
            }
        }
    }
    tally
}

impl TreeTally {
    pub fn constituent(&self, label: &str) -> usize {
        self.constituents.get(label).copied().unwrap_or(0)
    }

    pub fn tags(&self, tags: &[&str]) -> usize {
        tags.iter()
            .map(|t| self.leaf_tags.get(*t).copied().unwrap_or(0))
            .sum()
    }
}

/// Population mean and standard deviation, computed directly.
pub fn mean_and_population_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}
