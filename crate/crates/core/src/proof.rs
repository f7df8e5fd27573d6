//! Proof trees, their independent checker and renderers.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::calculus::{logic_rules, rule_instances, LogicId, RuleId, RuleSet};
use crate::formula::{parse_sequent, render_sequent, Sequent, Style};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: RuleId,
    pub children: Vec<ProofTree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid proof at node {}: {reason}", path_string(.path))]
pub struct ProofCheckError {
    /// Child indices from the root to the offending node.
    pub path: Vec<usize>,
    pub reason: String,
}

fn path_string(path: &[usize]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFormatError {
    #[error("rule {rule} has {premises} premises; at most five are supported in LaTeX")]
    TooManyPremises { rule: RuleId, premises: usize },
    #[error("malformed proof JSON: {0}")]
    Json(String),
}

impl ProofTree {
    pub fn leaf(conclusion: Sequent, rule: RuleId) -> Self {
        ProofTree {
            conclusion,
            rule,
            children: vec![],
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(|c| c.height()).max().unwrap_or(0)
    }

    /// Rules used anywhere in the tree.
    pub fn rules_used(&self) -> BTreeSet<RuleId> {
        let mut out = BTreeSet::new();
        self.collect_rules(&mut out);
        out
    }

    fn collect_rules(&self, out: &mut BTreeSet<RuleId>) {
        out.insert(self.rule);
        for c in &self.children {
            c.collect_rules(out);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rule": self.rule.name(),
            "conclusion": render_sequent(&self.conclusion, Style::Ascii),
            "children": self.children.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, ProofFormatError> {
        let err = |m: &str| ProofFormatError::Json(m.to_string());
        let rule = v
            .get("rule")
            .and_then(Value::as_str)
            .ok_or_else(|| err("missing \"rule\""))?;
        let rule = RuleId::from_name(rule).ok_or_else(|| err(&format!("unknown rule {rule}")))?;
        let concl = v
            .get("conclusion")
            .and_then(Value::as_str)
            .ok_or_else(|| err("missing \"conclusion\""))?;
        let conclusion =
            parse_sequent(concl).map_err(|e| err(&format!("bad conclusion {concl:?}: {e}")))?;
        let children = match v.get("children") {
            None => vec![],
            Some(Value::Array(cs)) => cs
                .iter()
                .map(ProofTree::from_json)
                .collect::<Result<_, _>>()?,
            Some(_) => return Err(err("\"children\" must be an array")),
        };
        Ok(ProofTree {
            conclusion,
            rule,
            children,
        })
    }

    /// Indented plain-text rendering, conclusion first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out
    }

    fn write_text(&self, indent: usize, out: &mut String) {
        out.push_str(&"  ".repeat(indent));
        out.push_str(&render_sequent(&self.conclusion, Style::Unicode));
        out.push_str(&format!("   [{}]\n", self.rule));
        for c in &self.children {
            c.write_text(indent + 1, out);
        }
    }

    /// A bussproofs `prooftree` environment.
    pub fn to_latex(&self) -> Result<String, ProofFormatError> {
        let mut out = String::from("\\begin{prooftree}\n");
        self.write_latex(&mut out)?;
        out.push_str("\\end{prooftree}\n");
        Ok(out)
    }

    fn write_latex(&self, out: &mut String) -> Result<(), ProofFormatError> {
        if self.children.is_empty() {
            out.push_str("\\AxiomC{}\n");
        }
        for c in &self.children {
            c.write_latex(out)?;
        }
        let inf = match self.children.len() {
            0 | 1 => "UnaryInfC",
            2 => "BinaryInfC",
            3 => "TrinaryInfC",
            4 => "QuaternaryInfC",
            5 => "QuinaryInfC",
            n => {
                return Err(ProofFormatError::TooManyPremises {
                    rule: self.rule,
                    premises: n,
                })
            }
        };
        out.push_str(&format!("\\RightLabel{{\\scriptsize {}}}\n", self.rule));
        out.push_str(&format!(
            "\\{inf}{{${}$}}\n",
            render_sequent(&self.conclusion, Style::Latex)
        ));
        Ok(())
    }
}

fn is_context_weakening(canonical: &Sequent, actual: &Sequent, conclusion: &Sequent) -> bool {
    canonical.succedent == actual.succedent
        && canonical.antecedent.is_subset(&actual.antecedent)
        && actual
            .antecedent
            .iter()
            .all(|f| canonical.antecedent.contains(f) || conclusion.antecedent.contains(f))
}

fn premises_match(rule: RuleId, canonical: &[Sequent], actual: &[Sequent], concl: &Sequent) -> bool {
    if canonical.len() != actual.len() {
        return false;
    }
    if rule.is_g3i() {
        // G3i premises may keep formulas of the conclusion as extra context.
        return canonical
            .iter()
            .zip(actual)
            .all(|(c, a)| is_context_weakening(c, a, concl));
    }
    let mut c = canonical.to_vec();
    let mut a = actual.to_vec();
    c.sort();
    a.sort();
    c == a
}

fn check_node(t: &ProofTree, rules: &RuleSet, path: &mut Vec<usize>) -> Result<(), ProofCheckError> {
    let fail = |path: &Vec<usize>, reason: String| ProofCheckError {
        path: path.clone(),
        reason,
    };
    if !rules.contains(&t.rule) {
        return Err(fail(path, format!("rule {} is not in the calculus", t.rule)));
    }
    let actual: Vec<Sequent> = t.children.iter().map(|c| c.conclusion.clone()).collect();
    let ok = rule_instances(rules, &t.conclusion)
        .iter()
        .filter(|i| i.rule == t.rule)
        .any(|i| premises_match(t.rule, &i.premises, &actual, &t.conclusion));
    if !ok {
        let reason = if t.children.is_empty() {
            format!("leaf {} is not an axiom", t.conclusion)
        } else {
            format!("not an instance of {}", t.rule)
        };
        return Err(fail(path, reason));
    }
    for (i, c) in t.children.iter().enumerate() {
        path.push(i);
        check_node(c, rules, path)?;
        path.pop();
    }
    Ok(())
}

/// Verifies that every node of `t` is an instance of a rule of `l`.
pub fn check_proof(t: &ProofTree, l: &LogicId) -> Result<(), ProofCheckError> {
    check_proof_rules(t, &logic_rules(l))
}

pub fn check_proof_rules(t: &ProofTree, rules: &RuleSet) -> Result<(), ProofCheckError> {
    check_node(t, rules, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Sequent {
        parse_sequent(x).unwrap()
    }

    fn mbox_proof() -> ProofTree {
        ProofTree {
            conclusion: s("=> [](p & q) -> []p"),
            rule: RuleId::Rimp,
            children: vec![ProofTree {
                conclusion: s("[](p & q) => []p"),
                rule: RuleId::Mbox,
                children: vec![ProofTree {
                    conclusion: s("p & q => p"),
                    rule: RuleId::Land,
                    children: vec![ProofTree::leaf(s("p, q => p"), RuleId::Init)],
                }],
            }],
        }
    }

    #[test]
    fn accepts_valid_proof() {
        let t = mbox_proof();
        assert!(check_proof(&t, &"box-EM".parse().unwrap()).is_ok());
        let err = check_proof(&t, &"box-E".parse().unwrap()).unwrap_err();
        assert_eq!(err.path, vec![0]);
    }

    #[test]
    fn rejects_non_axiom_leaf() {
        let t = ProofTree::leaf(s("p => q"), RuleId::Init);
        let err = check_proof(&t, &"E1".parse().unwrap()).unwrap_err();
        assert!(err.reason.contains("not an axiom"));
    }

    #[test]
    fn rejects_foreign_rule() {
        let t = ProofTree {
            conclusion: s("[]p, <>~p =>"),
            rule: RuleId::Int3,
            children: vec![ProofTree {
                conclusion: s("p, ~p =>"),
                rule: RuleId::Limp,
                children: vec![
                    ProofTree::leaf(s("p, ~p => p"), RuleId::Init),
                    ProofTree::leaf(s("p, false =>"), RuleId::Lbot),
                ],
            }],
        };
        assert!(check_proof(&t, &"E3".parse().unwrap()).is_ok());
        assert!(check_proof(&t, &"E1".parse().unwrap()).is_err());
    }

    #[test]
    fn accepts_kept_principal() {
        let t = ProofTree {
            conclusion: s("p & q => p"),
            rule: RuleId::Land,
            children: vec![ProofTree::leaf(s("p & q, p, q => p"), RuleId::Init)],
        };
        assert!(check_proof(&t, &"E1".parse().unwrap()).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let t = mbox_proof();
        assert_eq!(ProofTree::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn latex_shape() {
        let tex = mbox_proof().to_latex().unwrap();
        assert!(tex.starts_with("\\begin{prooftree}"));
        assert_eq!(tex.matches("UnaryInfC").count(), 4);
    }
}
