use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::TransformError;
use crate::calculus::LogicId;
use crate::formula::Formula;
use crate::semantics::{
    check_frame, logic_frame_conditions, members, random_preorder, Family, NbModel,
    SemanticsError, WorldSet, DEFAULT_ATOMS, FALLIBLE_LABEL, MAX_WORLDS,
};

/// A relational model with an optional set of fallible worlds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelModel {
    pub labels: Vec<String>,
    /// `up[w]`: worlds `v` with `w ≤ v`, including `w`.
    pub up: Vec<FixedBitSet>,
    /// `rel[w]`: the R-successors of `w`.
    pub rel: Vec<FixedBitSet>,
    pub val: Vec<BTreeSet<String>>,
    pub fallible: FixedBitSet,
}

/// Memoised truth sets over a relational model.
pub struct RelEvaluator<'a> {
    m: &'a RelModel,
    memo: HashMap<Formula, FixedBitSet>,
}

impl RelEvaluator<'_> {
    pub fn truth_set(&mut self, f: &Formula) -> FixedBitSet {
        if let Some(t) = self.memo.get(f) {
            return t.clone();
        }
        let m = self.m;
        let n = m.size();
        let mut t = FixedBitSet::with_capacity(n);
        match f {
            Formula::Atom(p) => {
                for w in 0..n {
                    t.set(w, m.val[w].contains(p));
                }
            }
            Formula::Bottom => {}
            Formula::And(a, b) => {
                t = self.truth_set(a);
                t.intersect_with(&self.truth_set(b));
            }
            Formula::Or(a, b) => {
                t = self.truth_set(a);
                t.union_with(&self.truth_set(b));
            }
            Formula::Imp(a, b) => {
                let (ta, tb) = (self.truth_set(a), self.truth_set(b));
                for w in 0..n {
                    t.set(w, m.up[w].ones().all(|v| !ta[v] || tb[v]));
                }
            }
            Formula::Box(a) => {
                let ta = self.truth_set(a);
                let ok: Vec<bool> = (0..n).map(|v| m.rel[v].is_subset(&ta)).collect();
                for w in 0..n {
                    t.set(w, m.up[w].ones().all(|v| ok[v]));
                }
            }
            Formula::Dia(a) => {
                let ta = self.truth_set(a);
                let ok: Vec<bool> = (0..n).map(|v| !m.rel[v].is_disjoint(&ta)).collect();
                for w in 0..n {
                    t.set(w, m.up[w].ones().all(|v| ok[v]));
                }
            }
        }
        // Fallible worlds force every formula.
        t.union_with(&m.fallible);
        self.memo.insert(f.clone(), t.clone());
        t
    }

    pub fn eval_at(&mut self, w: usize, f: &Formula) -> bool {
        self.truth_set(f)[w]
    }
}

impl RelModel {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn world(&self, label: &str) -> Result<usize, SemanticsError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SemanticsError::UnknownWorld(label.to_string()))
    }

    pub fn evaluator(&self) -> RelEvaluator<'_> {
        RelEvaluator {
            m: self,
            memo: HashMap::new(),
        }
    }

    pub fn eval_at(&self, w: usize, f: &Formula) -> bool {
        self.evaluator().eval_at(w, f)
    }

    pub fn eval(&self, w: &str, f: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.eval_at(self.world(w)?, f))
    }

    pub fn has_fallible(&self) -> bool {
        self.fallible.ones().next().is_some()
    }

    /// Violations of the preorder, heredity and fallibility invariants.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for w in 0..self.size() {
            let lw = &self.labels[w];
            if !self.up[w][w] {
                out.push(format!("leq is not reflexive at {lw}"));
            }
            for v in self.up[w].ones() {
                if !self.up[v].is_subset(&self.up[w]) {
                    out.push(format!("leq is not transitive at {lw}"));
                }
                if !self.fallible[w] && !self.fallible[v] && !self.val[w].is_subset(&self.val[v]) {
                    out.push(format!("valuation is not hereditary from {lw} to {}", self.labels[v]));
                }
            }
            if self.fallible[w] {
                if !self.up[w].is_subset(&self.fallible) || !self.rel[w].is_subset(&self.fallible) {
                    out.push(format!("fallible world {lw} reaches a consistent world"));
                }
                if self.rel[w].ones().next().is_none() {
                    out.push(format!("fallible world {lw} has no R-successor"));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("worlds".into(), json!(self.labels));
        let pairs = |rel: &[FixedBitSet], skip_diag: bool| -> Vec<Value> {
            let mut out = Vec::new();
            for (w, succ) in rel.iter().enumerate() {
                for v in succ.ones() {
                    if !(skip_diag && v == w) {
                        out.push(json!([self.labels[w], self.labels[v]]));
                    }
                }
            }
            out
        };
        obj.insert("leq".into(), Value::Array(pairs(&self.up, true)));
        obj.insert("rel".into(), Value::Array(pairs(&self.rel, false)));
        let mut vmap = Map::new();
        for (w, atoms) in self.val.iter().enumerate() {
            vmap.insert(self.labels[w].clone(), json!(atoms));
        }
        obj.insert("val".into(), Value::Object(vmap));
        let fallible: Vec<&String> = self.fallible.ones().map(|w| &self.labels[w]).collect();
        obj.insert("fallible".into(), json!(fallible));
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<RelModel, SemanticsError> {
        let malformed = |m: &str| SemanticsError::Malformed(m.to_string());
        let obj = v.as_object().ok_or_else(|| malformed("model must be a JSON object"))?;
        let labels: Vec<String> = obj
            .get("worlds")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed("missing \"worlds\" array"))?
            .iter()
            .map(|w| w.as_str().map(str::to_string).ok_or_else(|| malformed("world labels must be strings")))
            .collect::<Result<_, _>>()?;
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(malformed(&format!("duplicate world {l:?}")));
            }
        }
        if labels.is_empty() {
            return Err(malformed("a model needs at least one world"));
        }
        let n = labels.len();
        let lookup = |l: &Value| -> Result<usize, SemanticsError> {
            let s = l.as_str().ok_or_else(|| malformed("world labels must be strings"))?;
            index.get(s).copied().ok_or_else(|| SemanticsError::UnknownWorld(s.to_string()))
        };
        let read_pairs = |key: &str| -> Result<Vec<FixedBitSet>, SemanticsError> {
            let mut out = vec![FixedBitSet::with_capacity(n); n];
            if let Some(ps) = obj.get(key) {
                for p in ps.as_array().ok_or_else(|| malformed("relations must be arrays of pairs"))? {
                    let pair = p
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| malformed("relation entries must be pairs"))?;
                    out[lookup(&pair[0])?].insert(lookup(&pair[1])?);
                }
            }
            Ok(out)
        };
        let mut up = read_pairs("leq")?;
        close_order(&mut up);
        let rel = read_pairs("rel")?;
        let mut val = vec![BTreeSet::new(); n];
        if let Some(vm) = obj.get("val").and_then(Value::as_object) {
            for (w, atoms) in vm {
                let i = lookup(&Value::String(w.clone()))?;
                for a in atoms.as_array().ok_or_else(|| malformed("valuations must be arrays"))? {
                    val[i].insert(a.as_str().ok_or_else(|| malformed("atoms must be strings"))?.to_string());
                }
            }
        }
        let mut fallible = FixedBitSet::with_capacity(n);
        if let Some(fs) = obj.get("fallible") {
            for w in fs.as_array().ok_or_else(|| malformed("\"fallible\" must be an array"))? {
                fallible.insert(lookup(w)?);
            }
        }
        let m = RelModel {
            labels,
            up,
            rel,
            val,
            fallible,
        };
        let errs = m.violations();
        if !errs.is_empty() {
            return Err(SemanticsError::Invariant(errs.join("; ")));
        }
        Ok(m)
    }
}

fn close_order(up: &mut [FixedBitSet]) {
    let n = up.len();
    for (w, u) in up.iter_mut().enumerate() {
        u.insert(w);
    }
    loop {
        let mut changed = false;
        for w in 0..n {
            let mut next = up[w].clone();
            for v in up[w].ones() {
                next.union_with(&up[v]);
            }
            if next != up[w] {
                up[w] = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

fn bits(n: usize, s: WorldSet) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for w in members(s) {
        b.insert(w);
    }
    b
}

/// A random relational model over `size` worlds, `fallible` of which are
/// fallible when `ck` is set. Deterministic in `seed`.
pub fn random_rel(size: usize, ck: bool, seed: u64) -> RelModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let up_sets = random_preorder(&mut rng, size);
    // Fallible worlds form a proper up-set, so some world stays consistent.
    let mut fallible_set: WorldSet = 0;
    if ck {
        let candidates: Vec<WorldSet> = crate::semantics::upsets(&up_sets)
            .into_iter()
            .filter(|&s| s != crate::semantics::full_set(size))
            .collect();
        fallible_set = candidates[rng.gen_range(0..candidates.len())];
    }
    let mut rel = Vec::with_capacity(size);
    for w in 0..size {
        let mut r = FixedBitSet::with_capacity(size);
        for v in 0..size {
            if rng.gen_bool(0.35) {
                r.insert(v);
            }
        }
        if fallible_set & (1 << w) != 0 {
            r.intersect_with(&bits(size, fallible_set));
            if r.ones().next().is_none() {
                let fs: Vec<usize> = members(fallible_set).collect();
                r.insert(fs[rng.gen_range(0..fs.len())]);
            }
        }
        rel.push(r);
    }
    let mut val = vec![BTreeSet::new(); size];
    for p in DEFAULT_ATOMS {
        let chosen: WorldSet = (0..size).filter(|_| rng.gen_bool(0.4)).fold(0, |a, w| a | (1 << w));
        for w in members(chosen).flat_map(|w| members(up_sets[w])) {
            val[w].insert(p.to_string());
        }
    }
    for w in members(fallible_set) {
        val[w].extend(DEFAULT_ATOMS.iter().map(|p| p.to_string()));
    }
    RelModel {
        labels: (0..size).map(|i| format!("w{i}")).collect(),
        up: up_sets.iter().map(|&s| bits(size, s)).collect(),
        rel,
        val,
        fallible: bits(size, fallible_set),
    }
}

fn conditions(l: LogicId) -> crate::semantics::Conditions {
    logic_frame_conditions(&l).expect("named logics have frame conditions")
}

fn precondition(m: &NbModel, l: LogicId) -> Result<(), TransformError> {
    if let Some(v) = check_frame(m, &conditions(l)).first() {
        return Err(TransformError::Precondition(v.describe(m)));
    }
    let errs = m.base_violations();
    if !errs.is_empty() {
        return Err(TransformError::Precondition(errs.join("; ")));
    }
    Ok(())
}

/// Neighbourhoods over the consistent worlds `keep` (indices into the source):
/// `nbox(w)` holds the sets covering `R(v) ∩ keep` for every `v ≥ w`, and
/// `ndiam(w)` the sets covering `R(v)` for some `v ≥ w`.
fn rel_to_nb(m: &RelModel, keep: &[usize]) -> Result<NbModel, TransformError> {
    let k = keep.len();
    if k > MAX_WORLDS {
        return Err(TransformError::TooManyWorlds(k));
    }
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    // R(v) restricted to consistent worlds, and whether R(v) was fully consistent.
    let image: Vec<(WorldSet, bool)> = (0..m.size())
        .map(|v| {
            let s = m.rel[v].ones().filter_map(|u| pos.get(&u)).fold(0, |a, &i| a | (1 << i));
            (s, m.rel[v].ones().all(|u| pos.contains_key(&u)))
        })
        .collect();
    let mut out = NbModel::discrete(k);
    let full = crate::semantics::full_set(k);
    for (i, &w) in keep.iter().enumerate() {
        out.labels[i] = m.labels[w].clone();
        out.val[i] = m.val[w].clone();
        out.up[i] = m.up[w].ones().filter_map(|v| pos.get(&v)).fold(0, |a, &j| a | (1 << j));
        let need = m.up[w].ones().fold(0, |a, v| a | image[v].0);
        out.nbox[i] = Family::from_sets((0..=full).filter(|&g| need & !g == 0));
        let mut nd = Family::EMPTY;
        for v in m.up[w].ones() {
            if image[v].1 {
                nd.insert(image[v].0);
            }
        }
        nd.upward_closure(k);
        out.ndiam[i] = nd;
    }
    Ok(out)
}

pub(crate) fn ensure_rel(m: &RelModel) -> Result<(), TransformError> {
    let errs = m.violations();
    if errs.is_empty() {
        Ok(())
    } else {
        Err(TransformError::Invariant(errs.join("; ")))
    }
}

pub fn rel_to_nb_hw(m: &RelModel) -> Result<NbModel, TransformError> {
    if m.has_fallible() {
        return Err(TransformError::FallibleInHw);
    }
    ensure_rel(m)?;
    let keep: Vec<usize> = (0..m.size()).collect();
    let out = rel_to_nb(m, &keep)?;
    super::ensure_frame(&out, &conditions(LogicId::HW))?;
    Ok(out)
}

pub fn rel_to_nb_ck(m: &RelModel) -> Result<NbModel, TransformError> {
    ensure_rel(m)?;
    let keep: Vec<usize> = (0..m.size()).filter(|&w| !m.fallible[w]).collect();
    if keep.is_empty() {
        return Err(TransformError::NoConsistentWorlds);
    }
    let out = rel_to_nb(m, &keep)?;
    super::ensure_frame(&out, &conditions(LogicId::CK))?;
    Ok(out)
}

fn pair_label(m: &NbModel, w: usize, a: WorldSet, with_f: bool) -> String {
    let mut items = m.set_labels(a);
    if with_f {
        items.push(FALLIBLE_LABEL.into());
    }
    format!("({},{{{}}})", m.labels[w], items.join(","))
}

struct PairWorld {
    base: Option<usize>,
    /// Source worlds in the second component, plus whether it contains `f`.
    alpha: WorldSet,
    with_f: bool,
}

fn build_pairs(m: &NbModel, worlds: Vec<PairWorld>) -> RelModel {
    let n = worlds.len();
    let mut labels = Vec::with_capacity(n);
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    let mut rel = vec![FixedBitSet::with_capacity(n); n];
    let mut val = Vec::with_capacity(n);
    let mut fallible = FixedBitSet::with_capacity(n);
    let all_atoms: BTreeSet<String> = m.val.iter().flatten().cloned().collect();
    for (i, x) in worlds.iter().enumerate() {
        match x.base {
            Some(w) => {
                labels.push(pair_label(m, w, x.alpha, x.with_f));
                val.push(m.val[w].clone());
            }
            None => {
                labels.push(format!("({FALLIBLE_LABEL},{{{FALLIBLE_LABEL}}})"));
                val.push(all_atoms.clone());
                fallible.insert(i);
            }
        }
        for (j, y) in worlds.iter().enumerate() {
            let leq = match (x.base, y.base) {
                (Some(w), Some(v)) => m.leq(w, v),
                (None, None) => true,
                _ => false,
            };
            up[i].set(j, leq);
            let r = match y.base {
                Some(v) => x.alpha & (1 << v) != 0,
                None => x.with_f,
            };
            rel[i].set(j, r);
        }
    }
    RelModel {
        labels,
        up,
        rel,
        val,
        fallible,
    }
}

/// Worlds `(w, α)` with `α ∈ ndiam(w)` and `α ⊆ ∩nbox(w)`.
fn standard_pairs(m: &NbModel, w: usize) -> Vec<PairWorld> {
    let meet = m.nbox[w].meet(m.full());
    m.ndiam[w]
        .iter()
        .filter(|a| a & !meet == 0)
        .map(|alpha| PairWorld {
            base: Some(w),
            alpha,
            with_f: false,
        })
        .collect()
}

pub fn nb_to_rel_hw(m: &NbModel) -> Result<RelModel, TransformError> {
    precondition(m, LogicId::HW)?;
    let worlds = (0..m.size()).flat_map(|w| standard_pairs(m, w)).collect();
    let out = build_pairs(m, worlds);
    ensure_rel(&out)?;
    Ok(out)
}

pub fn nb_to_rel_ck(m: &NbModel) -> Result<RelModel, TransformError> {
    precondition(m, LogicId::CK)?;
    let mut worlds = Vec::new();
    for w in 0..m.size() {
        if m.ndiam[w].is_empty() {
            worlds.push(PairWorld {
                base: Some(w),
                alpha: m.nbox[w].meet(m.full()),
                with_f: true,
            });
        } else {
            worlds.extend(standard_pairs(m, w));
        }
    }
    worlds.push(PairWorld {
        base: None,
        alpha: 0,
        with_f: true,
    });
    let out = build_pairs(m, worlds);
    ensure_rel(&out)?;
    Ok(out)
}

/// Indices of the worlds of a pair model built from source world `w`.
pub fn pairs_of(rel: &RelModel, source: &NbModel, w: usize) -> Vec<usize> {
    let prefix = format!("({},{{", source.labels[w]);
    (0..rel.size())
        .filter(|&i| rel.labels[i].starts_with(&prefix))
        .collect()
}
