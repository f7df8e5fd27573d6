//! Formula syntax: the AST, sequents, weights and the closure sets that bound
//! proof search.

mod parse;
mod render;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse, parse_formula, parse_sequent, ParseError, Parsed};
pub use render::{render, render_sequent, Style};

/// A propositional modal formula.
///
/// `⊤`, `¬A` and `A ↔ B` are not node kinds: they are the abbreviations
/// `⊥ → ⊥`, `A → ⊥` and `(A → B) ∧ (B → A)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Atom(String),
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Box::new(a))
    }

    pub fn dia(a: Formula) -> Formula {
        Formula::Dia(Box::new(a))
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bottom)
    }

    pub fn top() -> Formula {
        Formula::imp(Formula::Bottom, Formula::Bottom)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// Conjunction of a list, `⊤` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::top(),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Returns `A` when `self` is `A → ⊥`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(a, b) if **b == Formula::Bottom => Some(a),
            _ => None,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Imp(a, b) if **a == Formula::Bottom && **b == Formula::Bottom)
    }

    /// Immediate subterms.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Bottom => vec![],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => vec![l, r],
            Formula::Box(a) | Formula::Dia(a) => vec![a],
        }
    }

    pub fn weight(&self) -> usize {
        weight(self)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Nesting depth of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
            Formula::Box(a) | Formula::Dia(a) => 1 + a.modal_depth(),
        }
    }

    pub fn has_box(&self) -> bool {
        match self {
            Formula::Box(_) => true,
            _ => self.children().iter().any(|c| c.has_box()),
        }
    }

    pub fn has_dia(&self) -> bool {
        match self {
            Formula::Dia(_) => true,
            _ => self.children().iter().any(|c| c.has_dia()),
        }
    }

    pub fn is_modal_free(&self) -> bool {
        !self.has_box() && !self.has_dia()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Formula::Atom(p) = self {
            out.insert(p.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    fn variant_rank(&self) -> u8 {
        match self {
            Formula::Bottom => 0,
            Formula::Atom(_) => 1,
            Formula::And(..) => 2,
            Formula::Or(..) => 3,
            Formula::Imp(..) => 4,
            Formula::Box(_) => 5,
            Formula::Dia(_) => 6,
        }
    }

    fn structural_cmp(&self, other: &Formula) -> Ordering {
        match (self, other) {
            (Formula::Atom(a), Formula::Atom(b)) => a.cmp(b),
            (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d))
            | (Formula::Imp(a, b), Formula::Imp(c, d)) => {
                a.structural_cmp(c).then_with(|| b.structural_cmp(d))
            }
            (Formula::Box(a), Formula::Box(b)) | (Formula::Dia(a), Formula::Dia(b)) => {
                a.structural_cmp(b)
            }
            _ => self.variant_rank().cmp(&other.variant_rank()),
        }
    }
}

/// Canonical order: by weight, then structurally.
impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        weight(self)
            .cmp(&weight(other))
            .then_with(|| self.structural_cmp(other))
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Style::Ascii))
    }
}

/// `w(⊥)=0`, `w(p)=1`, binary connectives add one, modalities add two.
pub fn weight(f: &Formula) -> usize {
    match f {
        Formula::Bottom => 0,
        Formula::Atom(_) => 1,
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => weight(l) + weight(r) + 1,
        Formula::Box(a) | Formula::Dia(a) => weight(a) + 2,
    }
}

/// All subformulas of `f`, including `f` itself.
pub fn subformulas(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    collect_subformulas(f, &mut out);
    out
}

fn collect_subformulas(f: &Formula, out: &mut BTreeSet<Formula>) {
    if out.contains(f) {
        return;
    }
    out.insert(f.clone());
    for c in f.children() {
        collect_subformulas(c, out);
    }
}

/// Subformulas of `f` together with `¬C` for every strict subformula `C`.
pub fn negated_closure(f: &Formula) -> BTreeSet<Formula> {
    let subs = subformulas(f);
    let mut out = subs.clone();
    for c in subs.iter().filter(|c| *c != f) {
        out.insert(Formula::neg(c.clone()));
    }
    out
}

/// A sequent with a set antecedent and an optional succedent.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: BTreeSet<Formula>,
    pub succedent: Option<Formula>,
}

impl Sequent {
    pub fn new(antecedent: impl IntoIterator<Item = Formula>, succedent: Option<Formula>) -> Self {
        Sequent {
            antecedent: antecedent.into_iter().collect(),
            succedent,
        }
    }

    /// `⇒ f`.
    pub fn theorem(f: Formula) -> Self {
        Sequent::new([], Some(f))
    }

    /// Every formula occurring in the sequent.
    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(self.succedent.iter())
    }

    /// The formula `∧Γ → B`, with `∧Γ → ⊥` for an empty succedent.
    pub fn as_formula(&self) -> Formula {
        let rhs = self.succedent.clone().unwrap_or(Formula::Bottom);
        if self.antecedent.is_empty() {
            rhs
        } else {
            Formula::imp(Formula::conj(self.antecedent.iter().cloned()), rhs)
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_sequent(self, Style::Ascii))
    }
}
