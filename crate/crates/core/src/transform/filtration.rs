use std::collections::BTreeSet;

use super::TransformError;
use crate::formula::{subformulas, Formula};
use crate::semantics::{full_set, members, Family, NbModel, WorldSet};

/// A finest filtration of `source` through `phi`.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub source: NbModel,
    pub phi: Vec<Formula>,
    /// Source worlds of each class, in order of their first member.
    pub classes: Vec<WorldSet>,
    pub class_of: Vec<usize>,
    pub result: NbModel,
}

/// `sbf(goal) ∪ {□⊤, ◇⊥, ⊤, ⊥}`.
pub fn default_phi(goal: &Formula) -> BTreeSet<Formula> {
    let mut phi = subformulas(goal);
    phi.extend(subformulas(&Formula::boxed(Formula::top())));
    phi.extend(subformulas(&Formula::dia(Formula::Bottom)));
    phi
}

fn check_closed(phi: &BTreeSet<Formula>) -> Result<(), TransformError> {
    for f in phi {
        for c in f.children() {
            if !phi.contains(c) {
                return Err(TransformError::NotSubformulaClosed(c.clone()));
            }
        }
    }
    Ok(())
}

impl Filtration {
    /// `|α|`: classes of the members of `s`.
    pub fn image(&self, s: WorldSet) -> WorldSet {
        members(s).fold(0, |acc, w| acc | (1 << self.class_of[w]))
    }

    /// The source truth set of a `phi` formula, as a set of classes.
    pub fn class_truth(&self, f: &Formula) -> WorldSet {
        self.image(self.source.truth_set(f))
    }

    fn with_families(&self, nbox: Vec<Family>, ndiam: Vec<Family>) -> NbModel {
        NbModel {
            nbox,
            ndiam,
            ..self.result.clone()
        }
    }
}

pub fn finest_filtration(m: &NbModel, phi: &BTreeSet<Formula>) -> Result<Filtration, TransformError> {
    check_closed(phi)?;
    let phi: Vec<Formula> = phi.iter().cloned().collect();
    let truth: Vec<WorldSet> = phi.iter().map(|f| m.truth_set(f)).collect();
    let profile = |w: usize| -> Vec<bool> { truth.iter().map(|t| t & (1 << w) != 0).collect() };
    let mut reps: Vec<Vec<bool>> = Vec::new();
    let mut classes: Vec<WorldSet> = Vec::new();
    let mut class_of = Vec::with_capacity(m.size());
    for w in 0..m.size() {
        let p = profile(w);
        let c = match reps.iter().position(|r| *r == p) {
            Some(c) => c,
            None => {
                reps.push(p);
                classes.push(0);
                reps.len() - 1
            }
        };
        classes[c] |= 1 << w;
        class_of.push(c);
    }
    let k = classes.len();
    let fk = full_set(k);
    let image = |s: WorldSet| members(s).fold(0, |acc, w| acc | (1 << class_of[w]));
    let mut result = NbModel::discrete(k);
    result.labels = classes.iter().map(|&c| format!("[{}]", m.set_labels(c).join(","))).collect();
    for c in 0..k {
        let w = classes[c].trailing_zeros() as usize;
        result.up[c] = (0..k)
            .filter(|&d| reps[c].iter().zip(&reps[d]).all(|(a, b)| !a || *b))
            .fold(0, |acc, d| acc | (1 << d));
        result.val[c] = phi
            .iter()
            .zip(&truth)
            .filter_map(|(f, t)| match f {
                Formula::Atom(p) if t & (1 << w) != 0 => Some(p.clone()),
                _ => None,
            })
            .collect();
        let mut excluded = Family::EMPTY;
        for (f, t) in phi.iter().zip(&truth) {
            match f {
                Formula::Box(a) if t & (1 << w) != 0 => {
                    result.nbox[c].insert(image(m.truth_set(a)));
                }
                Formula::Dia(a) if t & (1 << w) != 0 => {
                    excluded.insert(fk & !image(m.truth_set(a)));
                }
                _ => {}
            }
        }
        result.ndiam[c] = Family::from_sets((0..=fk).filter(|&s| !excluded.contains(s)));
    }
    Ok(Filtration {
        source: m.clone(),
        phi,
        classes,
        class_of,
        result,
    })
}

/// Violations of the filtration clauses by `candidate`, which must live on
/// the classes of `f`.
pub fn check_filtration(f: &Filtration, candidate: &NbModel) -> Vec<String> {
    let m = &f.source;
    let k = f.classes.len();
    let fk = full_set(k);
    let mut out = Vec::new();
    if candidate.size() != k {
        out.push(format!("expected {k} classes, got {}", candidate.size()));
        return out;
    }
    for c in 0..k {
        let w = f.classes[c].trailing_zeros() as usize;
        for d in 0..k {
            let v = f.classes[d].trailing_zeros() as usize;
            let expected = f.phi.iter().all(|a| !m.eval_at(w, a) || m.eval_at(v, a));
            if candidate.leq(c, d) != expected {
                out.push(format!("order clause fails between {} and {}", candidate.labels[c], candidate.labels[d]));
            }
        }
        for a in &f.phi {
            match a {
                Formula::Box(b) => {
                    let lhs = candidate.nbox[c].contains(f.class_truth(b));
                    let rhs = m.nbox[w].contains(m.truth_set(b));
                    if lhs != rhs {
                        out.push(format!("box clause for {a} fails at {}", candidate.labels[c]));
                    }
                }
                Formula::Dia(b) => {
                    let lhs = candidate.ndiam[c].contains(fk & !f.class_truth(b));
                    let rhs = m.ndiam[w].contains(m.full() & !m.truth_set(b));
                    if lhs != rhs {
                        out.push(format!("diamond clause for {a} fails at {}", candidate.labels[c]));
                    }
                }
                Formula::Atom(p) => {
                    if candidate.val[c].contains(p) != m.val[w].contains(p) {
                        out.push(format!("valuation clause for {p} fails at {}", candidate.labels[c]));
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// `α ∉ ndiam°` iff `α` lies below some set outside `ndiam_f`.
fn supplemented_dia(f: &Filtration) -> Vec<Family> {
    let k = f.classes.len();
    let fk = full_set(k);
    (0..k)
        .map(|c| {
            let nd = &f.result.ndiam[c];
            let outside: Vec<WorldSet> = (0..=fk).filter(|&b| !nd.contains(b)).collect();
            Family::from_sets((0..=fk).filter(|&a| !outside.iter().any(|&b| a & !b == 0)))
        })
        .collect()
}

fn intersections(fam: &Family) -> Family {
    let mut out = *fam;
    loop {
        let items: Vec<WorldSet> = out.iter().collect();
        let mut grew = false;
        for &a in &items {
            for b in fam.iter() {
                grew |= out.insert(a & b);
            }
        }
        if !grew {
            return out;
        }
    }
}

pub fn supplementation(f: &Filtration) -> NbModel {
    let k = f.classes.len();
    let nbox = f
        .result
        .nbox
        .iter()
        .map(|fam| {
            let mut up = *fam;
            up.upward_closure(k);
            up
        })
        .collect();
    f.with_families(nbox, supplemented_dia(f))
}

pub fn intersection_closure(f: &Filtration) -> NbModel {
    let nbox = f.result.nbox.iter().map(intersections).collect();
    f.with_families(nbox, f.result.ndiam.clone())
}

pub fn quasi_filtering(f: &Filtration) -> NbModel {
    let k = f.classes.len();
    let nbox = f
        .result
        .nbox
        .iter()
        .map(|fam| {
            let mut up = intersections(fam);
            up.upward_closure(k);
            up
        })
        .collect();
    f.with_families(nbox, supplemented_dia(f))
}
