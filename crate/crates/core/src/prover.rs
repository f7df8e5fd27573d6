//! Terminating backward proof search for the registered calculi.
//!
//! Search runs over interned formulas with set antecedents. Invertible
//! propositional rules are applied eagerly; the remaining rules are tried as
//! alternatives. A branch fails when it revisits an ancestor sequent. Proved
//! sequents are cached, and so are failures that did not depend on a loop
//! through an ancestor above the failing node.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::calculus::{logic_rules, nonempty_subsets, LogicId, RuleId, RuleSet};
use crate::formula::{Formula, Sequent};
pub use crate::proof::{check_proof, check_proof_rules, ProofCheckError, ProofTree};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProveError {
    #[error("formula {formula} uses a modality outside the language of {logic}")]
    ModalityOutOfLanguage { logic: String, formula: String },
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Sequents expanded.
    pub nodes: usize,
    pub cache_hits: usize,
    pub loop_prunes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Derivable(ProofTree),
    Underivable(SearchStats),
}

impl Verdict {
    pub fn is_derivable(&self) -> bool {
        matches!(self, Verdict::Derivable(_))
    }

    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            Verdict::Derivable(t) => Some(t),
            Verdict::Underivable(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

type Id = u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Shape {
    Atom(u32),
    Bot,
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
    Box(Id),
    Dia(Id),
}

#[derive(Default)]
struct Arena {
    shapes: Vec<Shape>,
    index: HashMap<Shape, Id>,
    symbols: Vec<String>,
    symbol_index: HashMap<String, u32>,
}

impl Arena {
    fn mk(&mut self, s: Shape) -> Id {
        if let Some(&id) = self.index.get(&s) {
            return id;
        }
        let id = self.shapes.len() as Id;
        self.shapes.push(s);
        self.index.insert(s, id);
        id
    }

    fn intern(&mut self, f: &Formula) -> Id {
        let s = match f {
            Formula::Atom(p) => {
                let sym = match self.symbol_index.get(p) {
                    Some(&s) => s,
                    None => {
                        let s = self.symbols.len() as u32;
                        self.symbols.push(p.clone());
                        self.symbol_index.insert(p.clone(), s);
                        s
                    }
                };
                Shape::Atom(sym)
            }
            Formula::Bottom => Shape::Bot,
            Formula::And(a, b) => Shape::And(self.intern(a), self.intern(b)),
            Formula::Or(a, b) => Shape::Or(self.intern(a), self.intern(b)),
            Formula::Imp(a, b) => Shape::Imp(self.intern(a), self.intern(b)),
            Formula::Box(a) => Shape::Box(self.intern(a)),
            Formula::Dia(a) => Shape::Dia(self.intern(a)),
        };
        self.mk(s)
    }

    fn neg(&mut self, a: Id) -> Id {
        let bot = self.mk(Shape::Bot);
        self.mk(Shape::Imp(a, bot))
    }

    fn formula(&self, id: Id) -> Formula {
        match self.shapes[id as usize] {
            Shape::Atom(s) => Formula::Atom(self.symbols[s as usize].clone()),
            Shape::Bot => Formula::Bottom,
            Shape::And(a, b) => Formula::and(self.formula(a), self.formula(b)),
            Shape::Or(a, b) => Formula::or(self.formula(a), self.formula(b)),
            Shape::Imp(a, b) => Formula::imp(self.formula(a), self.formula(b)),
            Shape::Box(a) => Formula::boxed(self.formula(a)),
            Shape::Dia(a) => Formula::dia(self.formula(a)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Key {
    ante: Vec<Id>,
    succ: Option<Id>,
}

impl Key {
    fn new(mut ante: Vec<Id>, succ: Option<Id>) -> Key {
        ante.sort_unstable();
        ante.dedup();
        Key { ante, succ }
    }

    fn replace(&self, remove: Id, add: &[Id], succ: Option<Id>) -> Key {
        let mut ante: Vec<Id> = self.ante.iter().copied().filter(|&x| x != remove).collect();
        ante.extend_from_slice(add);
        Key::new(ante, succ)
    }

    fn with(&self, add: Id, succ: Option<Id>) -> Key {
        let mut ante = self.ante.clone();
        ante.push(add);
        Key::new(ante, succ)
    }
}

struct Inst {
    rule: RuleId,
    premises: Vec<Key>,
}

struct ProofNode {
    key: Key,
    rule: RuleId,
    children: Vec<usize>,
}

enum Res {
    Proved(usize),
    /// Failed; the payload is the shallowest ancestor depth whose loop check
    /// contributed to the failure (`usize::MAX` when none did).
    Failed(usize),
}

struct Search {
    arena: Arena,
    rules: [bool; 26],
    proved: HashMap<Key, usize>,
    refuted: HashSet<Key>,
    on_path: HashMap<Key, usize>,
    proofs: Vec<ProofNode>,
    stats: SearchStats,
    budget: usize,
}

impl Search {
    fn new(rules: &RuleSet, budget: usize) -> Self {
        let mut flags = [false; 26];
        for r in rules {
            flags[*r as usize] = true;
        }
        Search {
            arena: Arena::default(),
            rules: flags,
            proved: HashMap::new(),
            refuted: HashSet::new(),
            on_path: HashMap::new(),
            proofs: Vec::new(),
            stats: SearchStats::default(),
            budget,
        }
    }

    fn has(&self, r: RuleId) -> bool {
        self.rules[r as usize]
    }

    fn shape(&self, id: Id) -> Shape {
        self.arena.shapes[id as usize]
    }

    fn record(&mut self, key: Key, rule: RuleId, children: Vec<usize>) -> usize {
        let idx = self.proofs.len();
        self.proofs.push(ProofNode {
            key: key.clone(),
            rule,
            children,
        });
        self.proved.insert(key, idx);
        idx
    }

    fn axiom(&self, key: &Key) -> Option<RuleId> {
        if self.has(RuleId::Lbot) && key.ante.iter().any(|&a| self.shape(a) == Shape::Bot) {
            return Some(RuleId::Lbot);
        }
        if let Some(s) = key.succ {
            if self.has(RuleId::Init)
                && matches!(self.shape(s), Shape::Atom(_))
                && key.ante.binary_search(&s).is_ok()
            {
                return Some(RuleId::Init);
            }
        }
        None
    }

    fn invertible(&self, key: &Key) -> Option<Inst> {
        for &a in &key.ante {
            match self.shape(a) {
                Shape::And(l, r) if self.has(RuleId::Land) => {
                    return Some(Inst {
                        rule: RuleId::Land,
                        premises: vec![key.replace(a, &[l, r], key.succ)],
                    })
                }
                Shape::Or(l, r) if self.has(RuleId::Lor) => {
                    return Some(Inst {
                        rule: RuleId::Lor,
                        premises: vec![
                            key.replace(a, &[l], key.succ),
                            key.replace(a, &[r], key.succ),
                        ],
                    })
                }
                _ => {}
            }
        }
        match key.succ.map(|s| self.shape(s)) {
            Some(Shape::And(l, r)) if self.has(RuleId::Rand) => Some(Inst {
                rule: RuleId::Rand,
                premises: vec![
                    Key::new(key.ante.clone(), Some(l)),
                    Key::new(key.ante.clone(), Some(r)),
                ],
            }),
            Some(Shape::Imp(l, r)) if self.has(RuleId::Rimp) => Some(Inst {
                rule: RuleId::Rimp,
                premises: vec![key.with(l, Some(r))],
            }),
            _ => None,
        }
    }

    fn alternatives(&mut self, key: &Key) -> Vec<Inst> {
        use RuleId::*;
        let mut out = Vec::new();
        let boxes: Vec<Id> = key
            .ante
            .iter()
            .filter_map(|&a| match self.shape(a) {
                Shape::Box(x) => Some(x),
                _ => None,
            })
            .collect();
        let dias: Vec<Id> = key
            .ante
            .iter()
            .filter_map(|&a| match self.shape(a) {
                Shape::Dia(x) => Some(x),
                _ => None,
            })
            .collect();
        let succ = key.succ.map(|s| self.shape(s));
        let one = |ante: &[Id], succ: Option<Id>| Key::new(ante.to_vec(), succ);

        match succ {
            Some(Shape::Box(b)) => {
                if self.has(Nbox) {
                    out.push(Inst {
                        rule: Nbox,
                        premises: vec![one(&[], Some(b))],
                    });
                }
                for &a in &boxes {
                    if self.has(Mbox) {
                        out.push(Inst {
                            rule: Mbox,
                            premises: vec![one(&[a], Some(b))],
                        });
                    }
                    if self.has(Ebox) {
                        out.push(Inst {
                            rule: Ebox,
                            premises: vec![one(&[a], Some(b)), one(&[b], Some(a))],
                        });
                    }
                }
                if self.has(MboxC) && !boxes.is_empty() {
                    // Larger principal sets only weaken the premise.
                    out.push(Inst {
                        rule: MboxC,
                        premises: vec![one(&boxes, Some(b))],
                    });
                }
                if self.has(EboxC) {
                    for set in nonempty_subsets(&boxes) {
                        let mut ps = vec![one(&set, Some(b))];
                        ps.extend(set.iter().map(|&a| one(&[b], Some(a))));
                        out.push(Inst {
                            rule: EboxC,
                            premises: ps,
                        });
                    }
                }
            }
            Some(Shape::Dia(b)) => {
                for &a in &dias {
                    if self.has(Mdiam) {
                        out.push(Inst {
                            rule: Mdiam,
                            premises: vec![one(&[a], Some(b))],
                        });
                    }
                    if self.has(Ediam) {
                        out.push(Inst {
                            rule: Ediam,
                            premises: vec![one(&[a], Some(b)), one(&[b], Some(a))],
                        });
                    }
                    if self.has(Wrule) && !boxes.is_empty() {
                        let mut ante = boxes.clone();
                        ante.push(a);
                        out.push(Inst {
                            rule: Wrule,
                            premises: vec![one(&ante, Some(b))],
                        });
                    }
                }
            }
            _ => {}
        }
        for &d in &dias {
            if self.has(Ndiam) {
                out.push(Inst {
                    rule: Ndiam,
                    premises: vec![one(&[d], None)],
                });
            }
        }
        for &b in &dias {
            for &a in &boxes {
                let both = one(&[a, b], None);
                if self.has(Int3) {
                    out.push(Inst {
                        rule: Int3,
                        premises: vec![both.clone()],
                    });
                }
                if self.has(Int1a) {
                    out.push(Inst {
                        rule: Int1a,
                        premises: vec![one(&[], Some(a)), one(&[b], None)],
                    });
                }
                if self.has(Int1b) {
                    out.push(Inst {
                        rule: Int1b,
                        premises: vec![one(&[a], None), one(&[], Some(b))],
                    });
                }
                if self.has(Int2a) {
                    let na = self.arena.neg(a);
                    out.push(Inst {
                        rule: Int2a,
                        premises: vec![both.clone(), one(&[na], Some(b))],
                    });
                }
                if self.has(Int2b) {
                    let nb = self.arena.neg(b);
                    out.push(Inst {
                        rule: Int2b,
                        premises: vec![both.clone(), one(&[nb], Some(a))],
                    });
                }
            }
            if boxes.is_empty() {
                continue;
            }
            let mut all = boxes.clone();
            all.push(b);
            if self.has(Int3C) {
                out.push(Inst {
                    rule: Int3C,
                    premises: vec![one(&all, None)],
                });
            }
            if self.has(Int1bC) {
                out.push(Inst {
                    rule: Int1bC,
                    premises: vec![one(&boxes, None), one(&[], Some(b))],
                });
            }
            if self.has(Int2aC) || self.has(Int2bC) {
                for set in nonempty_subsets(&boxes) {
                    let mut with_b = set.clone();
                    with_b.push(b);
                    let main = one(&with_b, None);
                    if self.has(Int2aC) {
                        let mut ps = vec![main.clone()];
                        for &a in &set {
                            let na = self.arena.neg(a);
                            ps.push(one(&[na], Some(b)));
                        }
                        out.push(Inst {
                            rule: Int2aC,
                            premises: ps,
                        });
                    }
                    if self.has(Int2bC) {
                        let nb = self.arena.neg(b);
                        let mut ps = vec![main.clone()];
                        ps.extend(set.iter().map(|&a| one(&[nb], Some(a))));
                        out.push(Inst {
                            rule: Int2bC,
                            premises: ps,
                        });
                    }
                }
            }
        }
        if let Some(Shape::Or(l, r)) = succ {
            if self.has(Ror) {
                for side in [l, r] {
                    out.push(Inst {
                        rule: Ror,
                        premises: vec![Key::new(key.ante.clone(), Some(side))],
                    });
                }
            }
        }
        if self.has(Limp) {
            for &f in &key.ante {
                if let Shape::Imp(a, b) = self.shape(f) {
                    out.push(Inst {
                        rule: Limp,
                        premises: vec![
                            Key::new(key.ante.clone(), Some(a)),
                            key.replace(f, &[b], key.succ),
                        ],
                    });
                }
            }
        }
        out
    }

    fn try_inst(&mut self, inst: &Inst, depth: usize) -> Result<Result<Vec<usize>, usize>, ProveError> {
        let mut children = Vec::with_capacity(inst.premises.len());
        for p in &inst.premises {
            match self.search(p.clone(), depth + 1)? {
                Res::Proved(i) => children.push(i),
                Res::Failed(d) => return Ok(Err(d)),
            }
        }
        Ok(Ok(children))
    }

    fn search(&mut self, key: Key, depth: usize) -> Result<Res, ProveError> {
        if let Some(&i) = self.proved.get(&key) {
            self.stats.cache_hits += 1;
            return Ok(Res::Proved(i));
        }
        if self.refuted.contains(&key) {
            self.stats.cache_hits += 1;
            return Ok(Res::Failed(usize::MAX));
        }
        if let Some(&d) = self.on_path.get(&key) {
            self.stats.loop_prunes += 1;
            return Ok(Res::Failed(d));
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Err(ProveError::BudgetExceeded {
                budget: self.budget,
            });
        }
        if let Some(rule) = self.axiom(&key) {
            return Ok(Res::Proved(self.record(key, rule, vec![])));
        }
        self.on_path.insert(key.clone(), depth);
        let outcome = self.expand(&key, depth);
        self.on_path.remove(&key);
        match outcome? {
            Ok((rule, children)) => Ok(Res::Proved(self.record(key, rule, children))),
            Err(d) => {
                if d >= depth {
                    self.refuted.insert(key);
                }
                Ok(Res::Failed(d))
            }
        }
    }

    #[allow(clippy::type_complexity)]
    fn expand(&mut self, key: &Key, depth: usize) -> Result<Result<(RuleId, Vec<usize>), usize>, ProveError> {
        if let Some(inst) = self.invertible(key) {
            return Ok(self.try_inst(&inst, depth)?.map(|c| (inst.rule, c)));
        }
        let mut shallowest = usize::MAX;
        for inst in self.alternatives(key) {
            match self.try_inst(&inst, depth)? {
                Ok(children) => return Ok(Ok((inst.rule, children))),
                Err(d) => shallowest = shallowest.min(d),
            }
        }
        Ok(Err(shallowest))
    }

    fn sequent(&self, key: &Key) -> Sequent {
        Sequent::new(
            key.ante.iter().map(|&a| self.arena.formula(a)),
            key.succ.map(|s| self.arena.formula(s)),
        )
    }

    fn tree(&self, idx: usize) -> ProofTree {
        let node = &self.proofs[idx];
        ProofTree {
            conclusion: self.sequent(&node.key),
            rule: node.rule,
            children: node.children.iter().map(|&c| self.tree(c)).collect(),
        }
    }
}

const SEARCH_STACK: usize = 256 * 1024 * 1024;

/// Decides derivability of `goal` in the calculus with the given rules.
pub fn decide_rules(rules: &RuleSet, goal: &Sequent, opts: SearchOptions) -> Result<Verdict, ProveError> {
    let run = || {
        let mut s = Search::new(rules, opts.budget);
        let ante = goal.antecedent.iter().map(|f| s.arena.intern(f)).collect();
        let succ = goal.succedent.as_ref().map(|f| s.arena.intern(f));
        let key = Key::new(ante, succ);
        match s.search(key, 0)? {
            Res::Proved(i) => Ok(Verdict::Derivable(s.tree(i))),
            Res::Failed(_) => Ok(Verdict::Underivable(s.stats)),
        }
    };
    // Deep branches recurse far; run on a thread with a generous stack.
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(SEARCH_STACK)
            .spawn_scoped(scope, run)
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    })
}

/// Decides derivability of `goal` in logic `l` with the default budget.
pub fn decide(l: &LogicId, goal: &Sequent) -> Result<Verdict, ProveError> {
    decide_with(l, goal, SearchOptions::default())
}

pub fn decide_with(l: &LogicId, goal: &Sequent, opts: SearchOptions) -> Result<Verdict, ProveError> {
    if let Some(f) = goal.formulas().find(|f| !l.admits(f)) {
        return Err(ProveError::ModalityOutOfLanguage {
            logic: l.name(),
            formula: f.to_string(),
        });
    }
    decide_rules(&logic_rules(l), goal, opts)
}

/// Whether `⊢ f` is derivable, treating errors as an error.
pub fn is_theorem(l: &LogicId, f: &Formula) -> Result<bool, ProveError> {
    decide(l, &Sequent::theorem(f.clone())).map(|v| v.is_derivable())
}

/// `matrix[i][j]` records whether `⊢ probes[j]` is derivable in `logics[i]`.
pub fn distinctness_matrix(logics: &[LogicId], probes: &[Formula]) -> Result<Vec<Vec<bool>>, ProveError> {
    logics
        .par_iter()
        .map(|l| probes.iter().map(|p| is_theorem(l, p)).collect())
        .collect()
}

/// The probe formulas separating the 24 bimodal logics.
pub fn default_probes() -> Vec<Formula> {
    crate::corpus::distinctness_probes()
}

#[derive(Debug, Clone, Default)]
pub struct CutReport {
    pub checked: usize,
    /// Pairs whose premises were not both derivable.
    pub skipped: usize,
    /// Pairs `(Γ ⊢ A, Γ, A ⊢ B)` with both premises derivable but `Γ ⊢ B` not.
    pub violations: Vec<(Sequent, Sequent)>,
    pub inconclusive: usize,
}

impl CutReport {
    pub fn closed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the derivable sequents of `l` are closed under cut on the
/// given pairs.
pub fn cut_closure_test(l: &LogicId, pairs: &[(Sequent, Sequent)]) -> CutReport {
    let results: Vec<Option<Result<bool, ProveError>>> = pairs
        .par_iter()
        .map(|(left, right)| {
            let both = [left, right]
                .iter()
                .map(|s| decide(l, s).map(|v| v.is_derivable()))
                .collect::<Result<Vec<bool>, _>>();
            match both {
                Err(e) => Some(Err(e)),
                Ok(v) if v.iter().all(|&b| b) => {
                    let concl = Sequent {
                        antecedent: left.antecedent.clone(),
                        succedent: right.succedent.clone(),
                    };
                    Some(decide(l, &concl).map(|v| v.is_derivable()))
                }
                Ok(_) => None,
            }
        })
        .collect();
    let mut report = CutReport::default();
    for ((left, right), r) in pairs.iter().zip(results) {
        match r {
            None => report.skipped += 1,
            Some(Err(_)) => report.inconclusive += 1,
            Some(Ok(true)) => report.checked += 1,
            Some(Ok(false)) => {
                report.checked += 1;
                report.violations.push((left.clone(), right.clone()));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_sequent;

    fn run(logic: &str, goal: &str) -> bool {
        let l: LogicId = logic.parse().unwrap();
        let g = parse_sequent(goal).unwrap();
        let v = decide(&l, &g).unwrap();
        if let Verdict::Derivable(t) = &v {
            check_proof(t, &l).unwrap();
            assert_eq!(t.conclusion, g);
        }
        v.is_derivable()
    }

    #[test]
    fn spec_examples() {
        assert!(run("box-EM", "=> [](p & q) -> []p"));
        assert!(!run("E1", "~[]~p => <>p"));
        assert!(run("E2", "=> ~([]p & <>~p)"));
        assert!(run("CK", "=> ([]p & <>q) -> <>(p & q)"));
        assert!(!run("CK", "=> ~<>false"));
        assert!(run("HW", "=> ~<>false"));
        assert!(!run("custom:G3i,Mbox,Int2a,Int2b", "[]~p, <>(p & q) =>"));
    }

    #[test]
    fn propositional_basics() {
        assert!(run("custom:G3i", "=> p -> p"));
        assert!(run("custom:G3i", "=> ((p -> q) -> p) -> (p -> q) -> q"));
        assert!(!run("custom:G3i", "=> p | ~p"));
        assert!(run("custom:G3i", "=> ~~(p | ~p)"));
        assert!(!run("custom:G3i", "=> ((p -> q) -> p) -> p"));
        assert!(run("custom:G3i", "p & q => q & p"));
        assert!(run("custom:G3i", "p, ~p =>"));
    }

    #[test]
    fn rejects_foreign_modality() {
        let l: LogicId = "box-E".parse().unwrap();
        let g = parse_sequent("=> <>p").unwrap();
        assert!(matches!(
            decide(&l, &g),
            Err(ProveError::ModalityOutOfLanguage { .. })
        ));
    }

    #[test]
    fn budget_is_reported() {
        let g = parse_sequent("=> ((p -> q) -> p) -> p").unwrap();
        let r = decide_with(&"custom:G3i".parse().unwrap(), &g, SearchOptions { budget: 2 });
        assert!(matches!(r, Err(ProveError::BudgetExceeded { budget: 2 })));
    }
}
