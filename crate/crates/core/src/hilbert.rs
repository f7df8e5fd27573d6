//! Hilbert-style presentations: schema matching and derivation checking.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::calculus::{hilbert_axioms, CalculusError, LogicId};
use crate::formula::{parse_formula, Formula, ParseError, Sequent};
use crate::prover::{decide, ProveError, Verdict};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SchemaId {
    Imp1,
    Imp2,
    Or1,
    Or2,
    Or3,
    And1,
    And2,
    And3,
    Efq,
    Mbox,
    Cbox,
    Nbox,
    Mdiam,
    Ndiam,
    Kbox,
    Kdiam,
    DualBox,
    DualDiam,
    Int1a,
    Int1b,
    Int2a,
    Int2b,
    MP,
    REbox,
    REdiam,
    RMbox,
    RMdiam,
    Nec,
    Int3Rule,
}

use SchemaId as S;

impl SchemaId {
    pub const IL: [SchemaId; 9] = [
        S::Imp1,
        S::Imp2,
        S::Or1,
        S::Or2,
        S::Or3,
        S::And1,
        S::And2,
        S::And3,
        S::Efq,
    ];

    pub const ALL: [SchemaId; 29] = [
        S::Imp1,
        S::Imp2,
        S::Or1,
        S::Or2,
        S::Or3,
        S::And1,
        S::And2,
        S::And3,
        S::Efq,
        S::Mbox,
        S::Cbox,
        S::Nbox,
        S::Mdiam,
        S::Ndiam,
        S::Kbox,
        S::Kdiam,
        S::DualBox,
        S::DualDiam,
        S::Int1a,
        S::Int1b,
        S::Int2a,
        S::Int2b,
        S::MP,
        S::REbox,
        S::REdiam,
        S::RMbox,
        S::RMdiam,
        S::Nec,
        S::Int3Rule,
    ];

    pub fn name(self) -> &'static str {
        match self {
            S::Imp1 => "imp-1",
            S::Imp2 => "imp-2",
            S::Or1 => "or-1",
            S::Or2 => "or-2",
            S::Or3 => "or-3",
            S::And1 => "and-1",
            S::And2 => "and-2",
            S::And3 => "and-3",
            S::Efq => "efq",
            S::Mbox => "Mbox",
            S::Cbox => "Cbox",
            S::Nbox => "Nbox",
            S::Mdiam => "Mdiam",
            S::Ndiam => "Ndiam",
            S::Kbox => "Kbox",
            S::Kdiam => "Kdiam",
            S::DualBox => "DualBox",
            S::DualDiam => "DualDiam",
            S::Int1a => "Int1a",
            S::Int1b => "Int1b",
            S::Int2a => "Int2a",
            S::Int2b => "Int2b",
            S::MP => "MP",
            S::REbox => "REbox",
            S::REdiam => "REdiam",
            S::RMbox => "RMbox",
            S::RMdiam => "RMdiam",
            S::Nec => "Nec",
            S::Int3Rule => "Int3",
        }
    }

    pub fn is_rule(self) -> bool {
        matches!(
            self,
            S::MP | S::REbox | S::REdiam | S::RMbox | S::RMdiam | S::Nec | S::Int3Rule
        )
    }

    /// The axiom schema as a formula over the metavariables `A`, `B`, `C`.
    pub fn pattern(self) -> Option<Formula> {
        let (a, b, c) = (meta('A'), meta('B'), meta('C'));
        let f = Formula::imp;
        Some(match self {
            S::Imp1 => f(a.clone(), f(b, a)),
            S::Imp2 => f(
                f(a.clone(), f(b.clone(), c.clone())),
                f(f(a.clone(), b), f(a, c)),
            ),
            S::Or1 => f(a.clone(), Formula::or(a, b)),
            S::Or2 => f(b.clone(), Formula::or(a, b)),
            S::Or3 => f(
                f(a.clone(), c.clone()),
                f(f(b.clone(), c.clone()), f(Formula::or(a, b), c)),
            ),
            S::And1 => f(Formula::and(a.clone(), b), a),
            S::And2 => f(Formula::and(a, b.clone()), b),
            S::And3 => f(a.clone(), f(b.clone(), Formula::and(a, b))),
            S::Efq => f(Formula::Bottom, a),
            S::Mbox => f(
                Formula::boxed(Formula::and(a.clone(), b)),
                Formula::boxed(a),
            ),
            S::Cbox => f(
                Formula::and(Formula::boxed(a.clone()), Formula::boxed(b.clone())),
                Formula::boxed(Formula::and(a, b)),
            ),
            S::Nbox => Formula::boxed(Formula::top()),
            S::Mdiam => f(Formula::dia(a.clone()), Formula::dia(Formula::or(a, b))),
            S::Ndiam => Formula::neg(Formula::dia(Formula::Bottom)),
            S::Kbox => f(
                Formula::boxed(f(a.clone(), b.clone())),
                f(Formula::boxed(a), Formula::boxed(b)),
            ),
            S::Kdiam => f(
                Formula::boxed(f(a.clone(), b.clone())),
                f(Formula::dia(a), Formula::dia(b)),
            ),
            S::DualBox => Formula::iff(
                Formula::dia(a.clone()),
                Formula::neg(Formula::boxed(Formula::neg(a))),
            ),
            S::DualDiam => Formula::iff(
                Formula::boxed(a.clone()),
                Formula::neg(Formula::dia(Formula::neg(a))),
            ),
            S::Int1a => Formula::neg(Formula::and(
                Formula::boxed(Formula::top()),
                Formula::dia(Formula::Bottom),
            )),
            S::Int1b => Formula::neg(Formula::and(
                Formula::dia(Formula::top()),
                Formula::boxed(Formula::Bottom),
            )),
            S::Int2a => Formula::neg(Formula::and(
                Formula::boxed(a.clone()),
                Formula::dia(Formula::neg(a)),
            )),
            S::Int2b => Formula::neg(Formula::and(
                Formula::boxed(Formula::neg(a.clone())),
                Formula::dia(a),
            )),
            _ => return None,
        })
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemaId {
    type Err = HilbertError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s
            .trim()
            .trim_end_matches("-ax")
            .trim_end_matches("-rule")
            .replace('→', "imp")
            .replace('∨', "or")
            .replace('∧', "and");
        SchemaId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(&key))
            .ok_or_else(|| HilbertError::UnknownSchema(s.trim().to_string()))
    }
}

fn meta(c: char) -> Formula {
    Formula::Atom(c.to_string())
}

pub type Subst = BTreeMap<char, Formula>;

fn match_into(pat: &Formula, f: &Formula, sub: &mut Subst) -> bool {
    match (pat, f) {
        (Formula::Atom(m), _) => {
            let key = m.chars().next().expect("metavariable");
            match sub.get(&key) {
                Some(bound) => bound == f,
                None => {
                    sub.insert(key, f.clone());
                    true
                }
            }
        }
        (Formula::Bottom, Formula::Bottom) => true,
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Imp(a, b), Formula::Imp(c, d)) => {
            match_into(a, c, sub) && match_into(b, d, sub)
        }
        (Formula::Box(a), Formula::Box(b)) | (Formula::Dia(a), Formula::Dia(b)) => {
            match_into(a, b, sub)
        }
        _ => false,
    }
}

/// Matches an axiom schema against `f`, returning the metavariable assignment.
pub fn match_schema(s: SchemaId, f: &Formula) -> Option<Subst> {
    let pat = s.pattern()?;
    let mut sub = Subst::new();
    match_into(&pat, f, &mut sub).then_some(sub)
}

/// Replaces the metavariables of an axiom schema.
pub fn instantiate(s: SchemaId, sub: &Subst) -> Option<Formula> {
    fn go(f: &Formula, sub: &Subst) -> Formula {
        match f {
            Formula::Atom(m) => {
                let key = m.chars().next().unwrap();
                sub.get(&key).cloned().unwrap_or_else(|| f.clone())
            }
            Formula::Bottom => Formula::Bottom,
            Formula::And(a, b) => Formula::and(go(a, sub), go(b, sub)),
            Formula::Or(a, b) => Formula::or(go(a, sub), go(b, sub)),
            Formula::Imp(a, b) => Formula::imp(go(a, sub), go(b, sub)),
            Formula::Box(a) => Formula::boxed(go(a, sub)),
            Formula::Dia(a) => Formula::dia(go(a, sub)),
        }
    }
    s.pattern().map(|p| go(&p, sub))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom(SchemaId),
    /// A rule applied to earlier steps, given by 0-based position.
    Rule(SchemaId, Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HilbertDerivation {
    pub steps: Vec<Step>,
}

impl HilbertDerivation {
    pub fn theorem(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    /// Renders the derivation in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let just = match &s.justification {
                Justification::Axiom(id) => format!("ax:{id}"),
                Justification::Rule(id, ps) => {
                    let ps: Vec<String> = ps.iter().map(|p| (p + 1).to_string()).collect();
                    format!("rule:{id}({})", ps.join(","))
                }
            };
            out.push_str(&format!("{}. {} ; {}\n", i + 1, s.formula, just));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("unknown schema {0:?}")]
    UnknownSchema(String),
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: String },
    #[error(transparent)]
    Logic(#[from] CalculusError),
}

/// Parses `index. <formula> ; ax:<schema>` / `rule:<schema>(i,j,...)` lines.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_derivation(text: &str) -> Result<HilbertDerivation, HilbertError> {
    let mut steps = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let syntax = |reason: &str| HilbertError::Syntax {
            line,
            reason: reason.to_string(),
        };
        let (label, rest) = raw.split_once('.').ok_or_else(|| syntax("missing step index"))?;
        let index: usize = label
            .trim()
            .parse()
            .map_err(|_| syntax("step index is not a number"))?;
        if index != steps.len() + 1 {
            return Err(syntax("step indices must be consecutive from 1"));
        }
        let (formula, just) = rest
            .rsplit_once(';')
            .ok_or_else(|| syntax("missing ';' before justification"))?;
        let formula =
            parse_formula(formula.trim()).map_err(|source| HilbertError::Formula { line, source })?;
        let just = just.trim();
        let justification = if let Some(name) = just.strip_prefix("ax:") {
            Justification::Axiom(name.parse()?)
        } else if let Some(body) = just.strip_prefix("rule:") {
            let (name, args) = body
                .split_once('(')
                .ok_or_else(|| syntax("rule justification needs premise list"))?;
            let args = args
                .trim()
                .strip_suffix(')')
                .ok_or_else(|| syntax("unclosed premise list"))?;
            let mut premises = Vec::new();
            for a in args.split(',').map(str::trim).filter(|a| !a.is_empty()) {
                let i: usize = a.parse().map_err(|_| syntax("premise is not a number"))?;
                if i == 0 {
                    return Err(syntax("premise indices start at 1"));
                }
                premises.push(i - 1);
            }
            Justification::Rule(name.parse()?, premises)
        } else {
            return Err(syntax("justification must start with 'ax:' or 'rule:'"));
        };
        steps.push(Step {
            formula,
            justification,
        });
    }
    Ok(HilbertDerivation { steps })
}

fn split_imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Imp(a, b) => Some((a, b)),
        _ => None,
    }
}

fn check_rule(rule: SchemaId, premises: &[&Formula], concl: &Formula) -> Result<(), String> {
    let arity = match rule {
        S::MP | S::REbox | S::REdiam => 2,
        _ => 1,
    };
    if premises.len() != arity {
        return Err(format!(
            "{rule} takes {arity} premise(s), got {}",
            premises.len()
        ));
    }
    let bad = || Err(format!("conclusion does not follow by {rule}"));
    match rule {
        S::MP => {
            let ok = |a: &Formula, ab: &Formula| {
                split_imp(ab).is_some_and(|(x, y)| x == a && y == concl)
            };
            if ok(premises[0], premises[1]) || ok(premises[1], premises[0]) {
                Ok(())
            } else {
                bad()
            }
        }
        S::REbox | S::REdiam => {
            let wrap = |x: &Formula| {
                if rule == S::REbox {
                    Formula::boxed(x.clone())
                } else {
                    Formula::dia(x.clone())
                }
            };
            let (Some((a, b)), Some((c, d))) = (split_imp(premises[0]), split_imp(premises[1]))
            else {
                return Err(format!("{rule} premises must be implications"));
            };
            if a != d || b != c {
                return Err(format!("{rule} premises must be A -> B and B -> A"));
            }
            let fwd = Formula::imp(wrap(a), wrap(b));
            let bwd = Formula::imp(wrap(b), wrap(a));
            if *concl == fwd || *concl == bwd {
                Ok(())
            } else {
                bad()
            }
        }
        S::RMbox | S::RMdiam => {
            let Some((a, b)) = split_imp(premises[0]) else {
                return Err(format!("{rule} premise must be an implication"));
            };
            let expect = if rule == S::RMbox {
                Formula::imp(Formula::boxed(a.clone()), Formula::boxed(b.clone()))
            } else {
                Formula::imp(Formula::dia(a.clone()), Formula::dia(b.clone()))
            };
            if *concl == expect {
                Ok(())
            } else {
                bad()
            }
        }
        S::Nec => {
            if *concl == Formula::boxed(premises[0].clone()) {
                Ok(())
            } else {
                bad()
            }
        }
        S::Int3Rule => match premises[0].negated() {
            Some(Formula::And(a, b)) => {
                let expect = Formula::neg(Formula::and(
                    Formula::boxed((**a).clone()),
                    Formula::dia((**b).clone()),
                ));
                if *concl == expect {
                    Ok(())
                } else {
                    bad()
                }
            }
            _ => Err("Int3 premise must have the form ~(A & B)".into()),
        },
        _ => Err(format!("{rule} is an axiom, not a rule")),
    }
}

/// Checks every step of a derivation against the logic's Hilbert presentation.
pub fn check_hilbert(d: &HilbertDerivation, l: &LogicId) -> Result<(), HilbertError> {
    let allowed = hilbert_axioms(l)?;
    for (i, step) in d.steps.iter().enumerate() {
        let fail = |reason: String| HilbertError::Step {
            step: i + 1,
            reason,
        };
        if !l.admits(&step.formula) {
            return Err(fail(format!("formula is outside the language of {l}")));
        }
        match &step.justification {
            Justification::Axiom(id) => {
                if id.is_rule() {
                    return Err(fail(format!("{id} is a rule, not an axiom")));
                }
                if !allowed.contains(id) {
                    return Err(fail(format!("axiom {id} is not part of {l}")));
                }
                if match_schema(*id, &step.formula).is_none() {
                    return Err(fail(format!("formula is not an instance of {id}")));
                }
            }
            Justification::Rule(id, ps) => {
                if !id.is_rule() {
                    return Err(fail(format!("{id} is an axiom, not a rule")));
                }
                if !allowed.contains(id) {
                    return Err(fail(format!("rule {id} is not part of {l}")));
                }
                if let Some(p) = ps.iter().find(|&&p| p >= i) {
                    return Err(fail(format!(
                        "premise {} does not precede this step",
                        p + 1
                    )));
                }
                let premises: Vec<&Formula> = ps.iter().map(|&p| &d.steps[p].formula).collect();
                check_rule(*id, &premises, &step.formula).map_err(fail)?;
            }
        }
    }
    Ok(())
}

/// Outcome of checking one axiom or rule of a Hilbert presentation in the
/// corresponding sequent calculus.
#[derive(Debug, Clone)]
pub struct BridgeCase {
    pub schema: SchemaId,
    /// Sequents that must be derivable for the case to hold.
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
    pub derivable: Result<bool, ProveError>,
}

impl BridgeCase {
    pub fn holds(&self) -> bool {
        matches!(self.derivable, Ok(true))
    }
}

fn atoms3() -> Subst {
    Subst::from([
        ('A', Formula::atom("p")),
        ('B', Formula::atom("q")),
        ('C', Formula::atom("r")),
    ])
}

fn parsed(s: &str) -> Formula {
    parse_formula(s).expect("built-in formula")
}

/// Instances used to test a rule schema: theorem premises and the rule's
/// conclusion on them.
pub fn rule_bridge_instance(rule: SchemaId) -> Option<(Vec<Formula>, Formula)> {
    Some(match rule {
        S::REbox => (
            vec![parsed("p & q -> q & p"), parsed("q & p -> p & q")],
            parsed("[](p & q) -> [](q & p)"),
        ),
        S::REdiam => (
            vec![parsed("p & q -> q & p"), parsed("q & p -> p & q")],
            parsed("<>(p & q) -> <>(q & p)"),
        ),
        S::RMbox => (vec![parsed("p & q -> p")], parsed("[](p & q) -> []p")),
        S::RMdiam => (vec![parsed("p -> p | q")], parsed("<>p -> <>(p | q)")),
        S::Nec => (vec![parsed("p -> p")], parsed("[](p -> p)")),
        S::Int3Rule => (vec![parsed("~(p & ~p)")], parsed("~([]p & <>~p)")),
        _ => return None,
    })
}

/// Checks each axiom (and rule instance) of the logic's Hilbert presentation
/// for derivability in its sequent calculus.
pub fn axiom_provable_suite(l: &LogicId) -> Result<Vec<BridgeCase>, HilbertError> {
    let mut out = Vec::new();
    for id in hilbert_axioms(l)? {
        if id == S::MP {
            continue;
        }
        let (premises, concl) = if id.is_rule() {
            rule_bridge_instance(id).expect("every non-MP rule has a bridge instance")
        } else {
            (vec![], instantiate(id, &atoms3()).unwrap())
        };
        let premises: Vec<Sequent> = premises.into_iter().map(Sequent::theorem).collect();
        let conclusion = Sequent::theorem(concl);
        let mut derivable = Ok(true);
        for s in premises.iter().chain(std::iter::once(&conclusion)) {
            match decide(l, s) {
                Ok(Verdict::Derivable(_)) => {}
                Ok(Verdict::Underivable(_)) => {
                    derivable = Ok(false);
                    break;
                }
                Err(e) => {
                    derivable = Err(e);
                    break;
                }
            }
        }
        out.push(BridgeCase {
            schema: id,
            premises,
            conclusion,
            derivable,
        });
    }
    Ok(out)
}
