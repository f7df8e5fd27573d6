//! Shipped test corpora and the corpus file format.
//!
//! Corpus files are tab-separated `logic <TAB> sequent <TAB> D|U` rows; blank
//! lines and lines starting with `#` are ignored.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::calculus::LogicId;
use crate::formula::{parse_formula, parse_sequent, Formula, Sequent};

pub const DISTINCTNESS_TSV: &str = include_str!("../data/distinctness.tsv");
pub const DUALITY_TSV: &str = include_str!("../data/duality.tsv");
pub const CORPUS_TSV: &str = include_str!("../data/corpus.tsv");
const PROPOSITIONAL_TXT: &str = include_str!("../data/propositional.txt");
const FORMULAS_TXT: &str = include_str!("../data/formulas.txt");
const REGRESSION_TXT: &str = include_str!("../data/regression_formulas.txt");
const WHITELIST_TSV: &str = include_str!("../data/countermodel_whitelist.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("corpus line {line}: {reason}")]
pub struct CorpusError {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusRow {
    pub line: usize,
    pub logic: LogicId,
    pub sequent: Sequent,
    /// Whether the sequent is expected to be derivable.
    pub expected: bool,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn verdict(s: &str, line: usize) -> Result<bool, CorpusError> {
    match s.trim() {
        "D" => Ok(true),
        "U" => Ok(false),
        other => Err(CorpusError {
            line,
            reason: format!("expected D or U, found {other:?}"),
        }),
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusRow>, CorpusError> {
    content_lines(text)
        .map(|(line, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            if cols.len() != 3 {
                return Err(CorpusError {
                    line,
                    reason: format!("expected 3 tab-separated columns, found {}", cols.len()),
                });
            }
            let logic = cols[0].trim().parse::<LogicId>().map_err(|e| CorpusError {
                line,
                reason: e.to_string(),
            })?;
            let sequent = parse_sequent(cols[1]).map_err(|e| CorpusError {
                line,
                reason: e.to_string(),
            })?;
            Ok(CorpusRow {
                line,
                logic,
                sequent,
                expected: verdict(cols[2], line)?,
            })
        })
        .collect()
}

fn builtin(text: &str) -> Vec<CorpusRow> {
    parse_corpus(text).expect("shipped corpus parses")
}

pub fn distinctness_corpus() -> Vec<CorpusRow> {
    builtin(DISTINCTNESS_TSV)
}

pub fn duality_corpus() -> Vec<CorpusRow> {
    builtin(DUALITY_TSV)
}

pub fn labelled_corpus() -> Vec<CorpusRow> {
    builtin(CORPUS_TSV)
}

/// Every shipped labelled row.
pub fn full_corpus() -> Vec<CorpusRow> {
    let mut rows = distinctness_corpus();
    rows.extend(duality_corpus());
    rows.extend(labelled_corpus());
    rows
}

/// The 50 propositional formulas with their intuitionistic verdicts.
pub fn propositional_formulas() -> Vec<(Formula, bool)> {
    content_lines(PROPOSITIONAL_TXT)
        .map(|(line, l)| {
            let (v, f) = l.split_once('\t').expect("verdict and formula");
            (
                parse_formula(f).expect("shipped formula parses"),
                verdict(v, line).expect("shipped verdict"),
            )
        })
        .collect()
}

/// Modal formulas swept over every logic.
pub fn formula_pool() -> Vec<Formula> {
    content_lines(FORMULAS_TXT)
        .map(|(_, l)| parse_formula(l).expect("shipped formula parses"))
        .collect()
}

/// Underivable items with no countermodel within 3 worlds, each with the
/// size of its smallest countermodel.
pub fn countermodel_whitelist() -> Vec<(LogicId, Formula, usize)> {
    content_lines(WHITELIST_TSV)
        .map(|(_, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            (
                cols[0].parse().expect("whitelisted logic"),
                parse_formula(cols[1]).expect("whitelisted formula"),
                cols[2].trim().parse().expect("whitelist bound"),
            )
        })
        .collect()
}

/// Characteristic formulas separating the bimodal logics: the interaction
/// axioms, a consequence of the Int3 rule, and the monotonicity, C and N
/// axioms.
pub fn distinctness_probes() -> Vec<Formula> {
    formula_pool().into_iter().take(10).collect()
}

/// Largest formula size in the regression set.
pub const REGRESSION_SIZE_CAP: usize = 5;

/// All formulas over `p`, `q` and `⊥` with at most `REGRESSION_SIZE_CAP`
/// nodes and modal depth at most 2, ordered by size then structure.
pub fn generate_regression_formulas() -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![vec![]];
    by_size.push(vec![Formula::atom("p"), Formula::atom("q"), Formula::Bottom]);
    for k in 2..=REGRESSION_SIZE_CAP {
        let mut level = Vec::new();
        for a in &by_size[k - 1] {
            level.push(Formula::boxed(a.clone()));
            level.push(Formula::dia(a.clone()));
        }
        for i in 1..k - 1 {
            let j = k - 1 - i;
            for a in &by_size[i] {
                for b in &by_size[j] {
                    level.push(Formula::and(a.clone(), b.clone()));
                    level.push(Formula::or(a.clone(), b.clone()));
                    level.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        level.retain(|f| f.modal_depth() <= 2);
        by_size.push(level);
    }
    let mut seen = BTreeSet::new();
    by_size
        .into_iter()
        .flatten()
        .filter(|f| seen.insert(f.clone()))
        .collect()
}

/// The versioned regression set shipped in `data/regression_formulas.txt`.
pub fn regression_formulas() -> Vec<Formula> {
    content_lines(REGRESSION_TXT)
        .map(|(_, l)| parse_formula(l).expect("shipped formula parses"))
        .collect()
}
