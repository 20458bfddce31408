use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rules::{RuleLabel, RuleName};
use crate::syntax::{parse_sequent, ParseError, Sequent};

/// A rule-labelled proof tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub rule: RuleLabel,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn new(conclusion: Sequent, rule: impl Into<RuleLabel>, premises: Vec<Derivation>) -> Self {
        Derivation {
            conclusion,
            rule: rule.into(),
            premises,
        }
    }

    pub fn axiom(conclusion: Sequent) -> Self {
        Derivation::new(conclusion, RuleName::Ax, vec![])
    }

    /// Longest chain of inference lines above the root; a leaf has height 0.
    pub fn height(&self) -> usize {
        self.premises
            .iter()
            .map(|p| 1 + p.height())
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Node at a path of premise indices from the root.
    pub fn at(&self, path: &[usize]) -> Option<&Derivation> {
        path.iter().try_fold(self, |d, &i| d.premises.get(i))
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&Derivation> {
        let mut out = vec![self];
        for p in &self.premises {
            out.extend(p.nodes());
        }
        out
    }

    pub fn to_node(&self) -> DerivationNode {
        DerivationNode {
            rule: self.rule.to_string(),
            conclusion: self.conclusion.print(),
            premises: self.premises.iter().map(Derivation::to_node).collect(),
        }
    }

    pub fn from_node(node: &DerivationNode) -> Result<Derivation, LoadError> {
        fn go(node: &DerivationNode, path: &mut Vec<usize>) -> Result<Derivation, LoadError> {
            let conclusion = parse_sequent(&node.conclusion).map_err(|source| LoadError::Sequent {
                path: path.clone(),
                source,
            })?;
            let mut premises = Vec::with_capacity(node.premises.len());
            for (i, p) in node.premises.iter().enumerate() {
                path.push(i);
                premises.push(go(p, path)?);
                path.pop();
            }
            Ok(Derivation {
                conclusion,
                rule: RuleLabel::parse(&node.rule),
                premises,
            })
        }
        go(node, &mut Vec::new())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_node()).expect("derivation nodes always serialize")
    }

    pub fn from_json(text: &str) -> Result<Derivation, LoadError> {
        let node: DerivationNode = serde_json::from_str(text)?;
        Derivation::from_node(&node)
    }

    /// Indented text rendering, conclusion first.
    pub fn render(&self) -> String {
        fn go(d: &Derivation, depth: usize, out: &mut String) {
            out.push_str(&"  ".repeat(depth));
            out.push_str(&format!("{}   [{}]\n", d.conclusion, d.rule));
            for p in &d.premises {
                go(p, depth + 1, out);
            }
        }
        let mut out = String::new();
        go(self, 0, &mut out);
        out
    }
}

pub fn height(d: &Derivation) -> usize {
    d.height()
}

/// On-disk form of a derivation node.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationNode {
    pub rule: String,
    pub conclusion: String,
    #[serde(default)]
    pub premises: Vec<DerivationNode>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed derivation JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad conclusion at path {path:?}: {source}")]
    Sequent {
        path: Vec<usize>,
        #[source]
        source: ParseError,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn height_counts_inference_lines() {
        let ax = Derivation::axiom(seq("A |- A"));
        assert_eq!(ax.height(), 0);
        let neg = Derivation::new(seq("~A, A |-"), RuleName::LNeg, vec![ax.clone()]);
        assert_eq!(neg.height(), 1);
        let pair = Derivation::new(
            seq("A, B |- A & B"),
            RuleName::RAnd,
            vec![ax, Derivation::new(seq("B |- ~~B"), RuleName::RNeg, vec![neg])],
        );
        assert_eq!(pair.height(), 3);
        assert_eq!(pair.size(), 5);
        assert_eq!(pair.at(&[1, 0]).unwrap().conclusion, seq("~A, A |-"));
        assert!(pair.at(&[2]).is_none());
    }

    #[test]
    fn json_rejects_unknown_keys() {
        let text = r#"{"rule": "Ax", "conclusion": "p |- p", "premises": [], "note": 1}"#;
        assert!(matches!(Derivation::from_json(text), Err(LoadError::Json(_))));
    }

    #[test]
    fn json_keeps_unknown_rule_names() {
        let text = r#"{"rule": "Wk", "conclusion": "B, ~A, A |-", "premises": []}"#;
        let d = Derivation::from_json(text).unwrap();
        assert_eq!(d.rule, RuleLabel::Unknown("Wk".into()));
    }

    #[test]
    fn json_reports_bad_sequent_path() {
        let text = r#"{"rule": "LNeg", "conclusion": "~A, A |-",
                       "premises": [{"rule": "Ax", "conclusion": "A |- & A"}]}"#;
        match Derivation::from_json(text) {
            Err(LoadError::Sequent { path, .. }) => assert_eq!(path, vec![0]),
            other => panic!("unexpected {other:?}"),
        }
    }
}
