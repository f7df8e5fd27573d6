use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::TransformError;
use crate::formula::Formula;
use crate::semantics::{
    check_frame, common_json, family_json, full_set, logic_frame_conditions, members, parse_common,
    parse_families, random_preorder, Family, FrameCondition, NbModel, SemanticsError, WorldSet,
    DEFAULT_ATOMS, MAX_WORLDS,
};
use crate::calculus::LogicId;

/// A model with a single antitone, nonempty neighbourhood function.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KojimaModel {
    pub labels: Vec<String>,
    pub up: Vec<WorldSet>,
    pub nk: Vec<Family>,
    pub val: Vec<BTreeSet<String>>,
}

impl KojimaModel {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn world(&self, label: &str) -> Result<usize, SemanticsError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SemanticsError::UnknownWorld(label.to_string()))
    }

    pub fn truth_set(&self, f: &Formula) -> WorldSet {
        let n = self.size();
        let full = full_set(n);
        let collect = |pred: &dyn Fn(usize) -> bool| (0..n).filter(|&w| pred(w)).fold(0, |acc, w| acc | (1 << w));
        match f {
            Formula::Atom(p) => collect(&|w| self.val[w].contains(p)),
            Formula::Bottom => 0,
            Formula::And(a, b) => self.truth_set(a) & self.truth_set(b),
            Formula::Or(a, b) => self.truth_set(a) | self.truth_set(b),
            Formula::Imp(a, b) => {
                let bad = self.truth_set(a) & !self.truth_set(b) & full;
                collect(&|w| self.up[w] & bad == 0)
            }
            Formula::Box(a) => {
                let t = self.truth_set(a);
                collect(&|w| self.nk[w].iter().all(|s| s & !t == 0))
            }
            Formula::Dia(a) => {
                let t = self.truth_set(a);
                collect(&|w| self.nk[w].iter().all(|s| s & t != 0))
            }
        }
    }

    pub fn eval_at(&self, w: usize, f: &Formula) -> bool {
        self.truth_set(f) & (1 << w) != 0
    }

    pub fn eval(&self, w: &str, f: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.eval_at(self.world(w)?, f))
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for w in 0..self.size() {
            if self.nk[w].is_empty() {
                out.push(format!("nk is empty at {}", self.labels[w]));
            }
            for v in members(self.up[w]) {
                if !self.up[w] & self.up[v] != 0 {
                    out.push(format!("leq is not transitive at {}", self.labels[w]));
                }
                if !self.val[w].is_subset(&self.val[v]) {
                    out.push(format!("valuation is not hereditary from {} to {}", self.labels[w], self.labels[v]));
                }
                if !self.nk[v].is_subset(&self.nk[w]) {
                    out.push(format!("nk is not antitone from {} to {}", self.labels[w], self.labels[v]));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut obj = common_json(&self.labels, &self.up, &self.val);
        obj.insert("nk".into(), family_json(&self.labels, &self.nk));
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<KojimaModel, SemanticsError> {
        let base = parse_common(v)?;
        if base.labels.len() > MAX_WORLDS {
            return Err(SemanticsError::TooManyWorlds(base.labels.len()));
        }
        let nk = parse_families(v, "nk", &base.index, base.labels.len())?;
        let mut up = base.up;
        crate::semantics::close_preorder(&mut up);
        let m = KojimaModel {
            labels: base.labels,
            up,
            nk,
            val: base.val,
        };
        let errs = m.violations();
        if !errs.is_empty() {
            return Err(SemanticsError::Invariant(errs.join("; ")));
        }
        Ok(m)
    }
}

/// A random Kojima model over `size` worlds. Deterministic in `seed`.
pub fn random_kojima(size: usize, seed: u64) -> KojimaModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let up = random_preorder(&mut rng, size);
    let mut val = vec![BTreeSet::new(); size];
    for p in DEFAULT_ATOMS {
        let chosen: WorldSet = (0..size).filter(|_| rng.gen_bool(0.4)).fold(0, |a, w| a | (1 << w));
        for w in members(chosen).flat_map(|w| members(up[w])) {
            val[w].insert(p.to_string());
        }
    }
    let mut nk: Vec<Family> = (0..size)
        .map(|_| {
            let mut f = Family::EMPTY;
            for _ in 0..rng.gen_range(0..=2) {
                f.insert(rng.gen_range(0..(1u32 << size)));
            }
            f
        })
        .collect();
    // Antitone: a world inherits the neighbourhoods of its successors.
    for w in 0..size {
        for v in members(up[w]) {
            let f = nk[v];
            nk[w].union_with(&f);
        }
    }
    for w in 0..size {
        if nk[w].is_empty() {
            let s = rng.gen_range(1..(1u32 << size));
            for u in 0..size {
                if up[u] & (1 << w) != 0 {
                    nk[u].insert(s);
                }
            }
        }
    }
    KojimaModel {
        labels: (0..size).map(|i| format!("w{i}")).collect(),
        up,
        nk,
        val,
    }
}

fn hw_conditions() -> crate::semantics::Conditions {
    logic_frame_conditions(&LogicId::HW).expect("HW has frame conditions")
}

/// `nbox(w) = {α : ∪nk(w) ⊆ α}`, `ndiam(w) = {α : some β ∈ nk(w), β ⊆ α}`.
pub fn kojima_to_nb(m: &KojimaModel) -> Result<NbModel, TransformError> {
    let n = m.size();
    let full = full_set(n);
    let mut out = NbModel::discrete(n);
    out.labels = m.labels.clone();
    out.up = m.up.clone();
    out.val = m.val.clone();
    for w in 0..n {
        let join = m.nk[w].join();
        out.nbox[w] = Family::from_sets((0..=full).filter(|&a| join & !a == 0));
        let mut nd = m.nk[w];
        nd.upward_closure(n);
        out.ndiam[w] = nd;
    }
    super::ensure_frame(&out, &hw_conditions())?;
    Ok(out)
}

/// `nk(w) = {α ∈ ndiam(w) : α ⊆ ∩nbox(w)}`, for models of HW.
pub fn nb_to_kojima(m: &NbModel) -> Result<KojimaModel, TransformError> {
    let mut cs = hw_conditions();
    cs.insert(FrameCondition::CKIntBis);
    if let Some(v) = check_frame(m, &cs).first() {
        return Err(TransformError::Precondition(v.describe(m)));
    }
    let full = m.full();
    let nk = (0..m.size())
        .map(|w| {
            let meet = m.nbox[w].meet(full);
            Family::from_sets(m.ndiam[w].iter().filter(|a| a & !meet == 0))
        })
        .collect();
    let out = KojimaModel {
        labels: m.labels.clone(),
        up: m.up.clone(),
        nk,
        val: m.val.clone(),
    };
    let errs = out.violations();
    if !errs.is_empty() {
        return Err(TransformError::Invariant(errs.join("; ")));
    }
    Ok(out)
}
