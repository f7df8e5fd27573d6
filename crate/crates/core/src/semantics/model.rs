use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use super::SemanticsError;
use crate::formula::Formula;

/// Largest supported number of worlds in a neighbourhood model.
pub const MAX_WORLDS: usize = 10;

/// A set of worlds as a bitmask over world indices.
pub type WorldSet = u32;

/// A family of world sets, as a bitset indexed by the set's mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Family([u64; 16]);

impl Default for Family {
    fn default() -> Self {
        Family::EMPTY
    }
}

impl Family {
    pub const EMPTY: Family = Family([0; 16]);

    pub fn contains(&self, s: WorldSet) -> bool {
        self.0[(s >> 6) as usize] & (1u64 << (s & 63)) != 0
    }

    /// Inserts `s`, returning whether it was new.
    pub fn insert(&mut self, s: WorldSet) -> bool {
        let word = &mut self.0[(s >> 6) as usize];
        let bit = 1u64 << (s & 63);
        let new = *word & bit == 0;
        *word |= bit;
        new
    }

    pub fn remove(&mut self, s: WorldSet) {
        self.0[(s >> 6) as usize] &= !(1u64 << (s & 63));
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &Family) -> bool {
        let mut changed = false;
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            let n = *a | *b;
            changed |= n != *a;
            *a = n;
        }
        changed
    }

    pub fn is_subset(&self, other: &Family) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = WorldSet> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((i as u32) * 64 + b)
            })
        })
    }

    pub fn from_sets(sets: impl IntoIterator<Item = WorldSet>) -> Family {
        let mut f = Family::EMPTY;
        for s in sets {
            f.insert(s);
        }
        f
    }

    /// Closes the family under supersets within `full`.
    pub fn upward_closure(&mut self, n: usize) {
        for x in 0..n {
            let bit = 1u32 << x;
            for s in 0..(1u32 << n) {
                if s & bit == 0 && self.contains(s) {
                    self.insert(s | bit);
                }
            }
        }
    }

    /// Intersection of all members; `full` for the empty family.
    pub fn meet(&self, full: WorldSet) -> WorldSet {
        self.iter().fold(full, |acc, s| acc & s)
    }

    /// Union of all members.
    pub fn join(&self) -> WorldSet {
        self.iter().fold(0, |acc, s| acc | s)
    }
}

pub fn full_set(n: usize) -> WorldSet {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn members(s: WorldSet) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s & (1 << i) != 0)
}

/// A finite coupled neighbourhood model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NbModel {
    pub labels: Vec<String>,
    /// `up[w]`: the worlds `v` with `w ≤ v`.
    pub up: Vec<WorldSet>,
    pub nbox: Vec<Family>,
    pub ndiam: Vec<Family>,
    pub val: Vec<BTreeSet<String>>,
}

impl NbModel {
    /// A model over `n` worlds labelled `w0, w1, ...` with the discrete order
    /// and empty neighbourhoods and valuation.
    pub fn discrete(n: usize) -> NbModel {
        assert!((1..=MAX_WORLDS).contains(&n));
        NbModel {
            labels: (0..n).map(|i| format!("w{i}")).collect(),
            up: (0..n).map(|i| 1 << i).collect(),
            nbox: vec![Family::EMPTY; n],
            ndiam: vec![Family::EMPTY; n],
            val: vec![BTreeSet::new(); n],
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn full(&self) -> WorldSet {
        full_set(self.size())
    }

    pub fn world(&self, label: &str) -> Result<usize, SemanticsError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SemanticsError::UnknownWorld(label.to_string()))
    }

    pub fn leq(&self, w: usize, v: usize) -> bool {
        self.up[w] & (1 << v) != 0
    }

    /// `down[v]`: the worlds `w` with `w ≤ v`.
    pub fn down(&self, v: usize) -> WorldSet {
        (0..self.size())
            .filter(|&w| self.leq(w, v))
            .fold(0, |acc, w| acc | (1 << w))
    }

    /// Worlds above some member of `s`.
    pub fn up_closure(&self, s: WorldSet) -> WorldSet {
        members(s).fold(0, |acc, w| acc | self.up[w])
    }

    pub fn atom_set(&self, p: &str) -> WorldSet {
        (0..self.size())
            .filter(|&w| self.val[w].contains(p))
            .fold(0, |acc, w| acc | (1 << w))
    }

    /// `⌐α`: worlds none of whose successors lie in `α`.
    pub fn upset_complement(&self, a: WorldSet) -> WorldSet {
        (0..self.size())
            .filter(|&w| self.up[w] & a == 0)
            .fold(0, |acc, w| acc | (1 << w))
    }

    /// The truth set `[f]`.
    pub fn truth_set(&self, f: &Formula) -> WorldSet {
        let full = self.full();
        match f {
            Formula::Atom(p) => self.atom_set(p),
            Formula::Bottom => 0,
            Formula::And(a, b) => self.truth_set(a) & self.truth_set(b),
            Formula::Or(a, b) => self.truth_set(a) | self.truth_set(b),
            Formula::Imp(a, b) => {
                let bad = self.truth_set(a) & !self.truth_set(b) & full;
                (0..self.size())
                    .filter(|&w| self.up[w] & bad == 0)
                    .fold(0, |acc, w| acc | (1 << w))
            }
            Formula::Box(a) => {
                let t = self.truth_set(a);
                (0..self.size())
                    .filter(|&w| self.nbox[w].contains(t))
                    .fold(0, |acc, w| acc | (1 << w))
            }
            Formula::Dia(a) => {
                let c = full & !self.truth_set(a);
                (0..self.size())
                    .filter(|&w| !self.ndiam[w].contains(c))
                    .fold(0, |acc, w| acc | (1 << w))
            }
        }
    }

    pub fn eval_at(&self, w: usize, f: &Formula) -> bool {
        self.truth_set(f) & (1 << w) != 0
    }

    pub fn eval(&self, w: &str, f: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.eval_at(self.world(w)?, f))
    }

    pub fn valid(&self, f: &Formula) -> bool {
        self.truth_set(f) == self.full()
    }

    /// Violations of the base invariants: preorder, hereditary valuation, (hp).
    pub fn base_violations(&self) -> Vec<String> {
        let n = self.size();
        let mut out = Vec::new();
        for w in 0..n {
            if !self.leq(w, w) {
                out.push(format!("leq is not reflexive at {}", self.labels[w]));
            }
            for v in members(self.up[w]) {
                for u in members(self.up[v]) {
                    if !self.leq(w, u) {
                        out.push(format!(
                            "leq is not transitive: {} <= {} <= {}",
                            self.labels[w], self.labels[v], self.labels[u]
                        ));
                    }
                }
                if v == w {
                    continue;
                }
                if !self.val[w].is_subset(&self.val[v]) {
                    out.push(format!(
                        "valuation is not hereditary from {} to {}",
                        self.labels[w], self.labels[v]
                    ));
                }
                if !self.nbox[w].is_subset(&self.nbox[v]) {
                    out.push(format!(
                        "nbox is not monotone from {} to {}",
                        self.labels[w], self.labels[v]
                    ));
                }
                if !self.ndiam[v].is_subset(&self.ndiam[w]) {
                    out.push(format!(
                        "ndiam is not antitone from {} to {}",
                        self.labels[w], self.labels[v]
                    ));
                }
            }
        }
        out
    }

    /// Reflexive-transitive closure of the order.
    pub fn close_order(&mut self) {
        close_preorder(&mut self.up);
    }

    /// Enforces the base invariants by closing the order, the valuation
    /// upwards, `nbox` upwards and `ndiam` downwards along the order.
    pub fn repair(&mut self) {
        self.close_order();
        let n = self.size();
        for w in 0..n {
            for v in members(self.up[w]) {
                let vals = self.val[w].clone();
                self.val[v].extend(vals);
                let nb = self.nbox[w];
                self.nbox[v].union_with(&nb);
                let nd = self.ndiam[v];
                self.ndiam[w].union_with(&nd);
            }
        }
    }

    pub fn set_labels(&self, s: WorldSet) -> Vec<String> {
        members(s)
            .filter(|&i| i < self.size())
            .map(|i| self.labels[i].clone())
            .collect()
    }

    pub fn format_set(&self, s: WorldSet) -> String {
        format!("{{{}}}", self.set_labels(s).join(","))
    }

    pub fn to_json(&self) -> Value {
        let mut obj = common_json(&self.labels, &self.up, &self.val);
        obj.insert("nbox".into(), family_json(&self.labels, &self.nbox));
        obj.insert("ndiam".into(), family_json(&self.labels, &self.ndiam));
        Value::Object(obj)
    }

    /// Loads a model; the order is closed reflexively and transitively. With
    /// `repair`, invariant violations are fixed instead of rejected.
    pub fn from_json(v: &Value, repair: bool) -> Result<NbModel, SemanticsError> {
        let base = parse_common(v)?;
        if base.labels.iter().any(|l| l == FALLIBLE_LABEL) {
            return Err(SemanticsError::ReservedLabel(FALLIBLE_LABEL.into()));
        }
        if base.labels.len() > MAX_WORLDS {
            return Err(SemanticsError::TooManyWorlds(base.labels.len()));
        }
        let nbox = parse_families(v, "nbox", &base.index, base.labels.len())?;
        let ndiam = parse_families(v, "ndiam", &base.index, base.labels.len())?;
        let mut m = NbModel {
            labels: base.labels,
            up: base.up,
            nbox,
            ndiam,
            val: base.val,
        };
        m.close_order();
        if repair {
            m.repair();
        }
        let errs = m.base_violations();
        if !errs.is_empty() {
            return Err(SemanticsError::Invariant(errs.join("; ")));
        }
        Ok(m)
    }
}

/// Reserved world label for the fallible world of relational CK models.
pub const FALLIBLE_LABEL: &str = "f";

pub(crate) fn close_preorder(up: &mut [WorldSet]) {
    let n = up.len();
    for (w, u) in up.iter_mut().enumerate() {
        *u |= 1 << w;
    }
    loop {
        let mut changed = false;
        for w in 0..n {
            let next = members(up[w]).fold(up[w], |acc, v| acc | up[v]);
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

pub(crate) fn set_json(labels: &[String], s: WorldSet) -> Value {
    Value::Array(
        members(s)
            .filter(|&i| i < labels.len())
            .map(|i| Value::String(labels[i].clone()))
            .collect(),
    )
}

pub(crate) fn family_json(labels: &[String], fams: &[Family]) -> Value {
    let mut map = Map::new();
    for (w, fam) in fams.iter().enumerate() {
        let mut sets: Vec<WorldSet> = fam.iter().collect();
        sets.sort_by_key(|s| (s.count_ones(), *s));
        map.insert(
            labels[w].clone(),
            Value::Array(sets.into_iter().map(|s| set_json(labels, s)).collect()),
        );
    }
    Value::Object(map)
}

pub(crate) fn common_json(labels: &[String], up: &[WorldSet], val: &[BTreeSet<String>]) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("worlds".into(), json!(labels));
    let mut leq = Vec::new();
    for (w, &u) in up.iter().enumerate() {
        for v in members(u) {
            if v != w {
                leq.push(json!([labels[w], labels[v]]));
            }
        }
    }
    obj.insert("leq".into(), Value::Array(leq));
    let mut vmap = Map::new();
    for (w, atoms) in val.iter().enumerate() {
        vmap.insert(labels[w].clone(), json!(atoms));
    }
    obj.insert("val".into(), Value::Object(vmap));
    obj
}

pub(crate) struct CommonParts {
    pub labels: Vec<String>,
    pub index: BTreeMap<String, usize>,
    pub up: Vec<WorldSet>,
    pub val: Vec<BTreeSet<String>>,
}

fn malformed(msg: impl Into<String>) -> SemanticsError {
    SemanticsError::Malformed(msg.into())
}

pub(crate) fn parse_common(v: &Value) -> Result<CommonParts, SemanticsError> {
    let obj = v.as_object().ok_or_else(|| malformed("model must be a JSON object"))?;
    let worlds = obj
        .get("worlds")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing \"worlds\" array"))?;
    let mut labels = Vec::new();
    let mut index = BTreeMap::new();
    for w in worlds {
        let l = w
            .as_str()
            .ok_or_else(|| malformed("world labels must be strings"))?
            .to_string();
        if index.insert(l.clone(), labels.len()).is_some() {
            return Err(malformed(format!("duplicate world {l:?}")));
        }
        labels.push(l);
    }
    if labels.is_empty() {
        return Err(malformed("a model needs at least one world"));
    }
    if labels.len() > 32 {
        return Err(SemanticsError::TooManyWorlds(labels.len()));
    }
    let lookup = |l: &Value| -> Result<usize, SemanticsError> {
        let s = l.as_str().ok_or_else(|| malformed("world labels must be strings"))?;
        index
            .get(s)
            .copied()
            .ok_or_else(|| SemanticsError::UnknownWorld(s.to_string()))
    };
    let mut up: Vec<WorldSet> = vec![0; labels.len()];
    if let Some(pairs) = obj.get("leq") {
        for p in pairs.as_array().ok_or_else(|| malformed("\"leq\" must be an array"))? {
            let pair = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| malformed("\"leq\" entries must be pairs"))?;
            let (w, v) = (lookup(&pair[0])?, lookup(&pair[1])?);
            up[w] |= 1 << v;
        }
    }
    let mut val = vec![BTreeSet::new(); labels.len()];
    if let Some(vm) = obj.get("val") {
        let vm = vm.as_object().ok_or_else(|| malformed("\"val\" must be an object"))?;
        for (w, atoms) in vm {
            let i = lookup(&Value::String(w.clone()))?;
            for a in atoms
                .as_array()
                .ok_or_else(|| malformed("valuations must be arrays of atoms"))?
            {
                let a = a.as_str().ok_or_else(|| malformed("atoms must be strings"))?;
                val[i].insert(a.to_string());
            }
        }
    }
    Ok(CommonParts {
        labels,
        index,
        up,
        val,
    })
}

pub(crate) fn parse_set(v: &Value, index: &BTreeMap<String, usize>) -> Result<WorldSet, SemanticsError> {
    let arr = v.as_array().ok_or_else(|| malformed("world sets must be arrays"))?;
    let mut s = 0;
    for l in arr {
        let l = l.as_str().ok_or_else(|| malformed("world labels must be strings"))?;
        let i = index
            .get(l)
            .ok_or_else(|| SemanticsError::UnknownWorld(l.to_string()))?;
        s |= 1 << i;
    }
    Ok(s)
}

pub(crate) fn parse_families(
    v: &Value,
    key: &str,
    index: &BTreeMap<String, usize>,
    n: usize,
) -> Result<Vec<Family>, SemanticsError> {
    let mut out = vec![Family::EMPTY; n];
    if let Some(fm) = v.get(key) {
        let fm = fm
            .as_object()
            .ok_or_else(|| malformed(format!("\"{key}\" must be an object")))?;
        for (w, sets) in fm {
            let i = *index
                .get(w)
                .ok_or_else(|| SemanticsError::UnknownWorld(w.clone()))?;
            for s in sets
                .as_array()
                .ok_or_else(|| malformed(format!("\"{key}\" entries must be arrays of sets")))?
            {
                out[i].insert(parse_set(s, index)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn single_world_clauses() {
        let mut m = NbModel::discrete(1);
        m.val[0].insert("p".into());
        assert!(!m.eval_at(0, &f("[]p")));
        assert!(m.eval_at(0, &f("<>p")));
        assert!(m.eval_at(0, &f("<>false")));
        m.nbox[0].insert(1);
        assert!(m.eval_at(0, &f("[]p")));
    }

    fn chain() -> NbModel {
        let mut m = NbModel::discrete(2);
        m.up[0] = 0b11;
        m.val[1].insert("p".into());
        m
    }

    #[test]
    fn two_world_chain() {
        let m = chain();
        assert!(m.eval_at(0, &f("p -> p")));
        assert!(!m.eval_at(0, &f("~p")));
        assert_eq!(m.truth_set(&f("p")), 0b10);
        assert_eq!(m.truth_set(&Formula::Bottom), 0);
        assert_eq!(m.truth_set(&Formula::top()), 0b11);
    }

    #[test]
    fn upset_complements() {
        let m = chain();
        assert_eq!(m.upset_complement(0), 0b11);
        assert_eq!(m.upset_complement(0b11), 0);
        assert_eq!(m.upset_complement(0b10), 0);
        assert_eq!(m.upset_complement(0b01), 0b10);
    }

    #[test]
    fn validity() {
        let m = chain();
        assert!(m.valid(&Formula::top()));
        assert!(!m.valid(&Formula::Bottom));
        assert!(m.valid(&f("p -> p")));
    }

    #[test]
    fn json_round_trip() {
        let mut m = chain();
        m.nbox[0].insert(0b10);
        m.nbox[1].insert(0b10);
        m.ndiam[0].insert(0b11);
        let v = m.to_json();
        assert_eq!(NbModel::from_json(&v, false).unwrap(), m);
    }

    #[test]
    fn loader_rejects_and_repairs() {
        let v = serde_json::json!({
            "worlds": ["a", "b"],
            "leq": [["a", "b"]],
            "val": {"a": ["p"]},
            "nbox": {}, "ndiam": {}
        });
        assert!(matches!(
            NbModel::from_json(&v, false),
            Err(SemanticsError::Invariant(_))
        ));
        let m = NbModel::from_json(&v, true).unwrap();
        assert!(m.val[1].contains("p"));
        let bad = serde_json::json!({"worlds": ["f"]});
        assert!(matches!(
            NbModel::from_json(&bad, false),
            Err(SemanticsError::ReservedLabel(_))
        ));
        let unknown = serde_json::json!({"worlds": ["a"], "leq": [["a", "z"]]});
        assert!(matches!(
            NbModel::from_json(&unknown, false),
            Err(SemanticsError::UnknownWorld(_))
        ));
    }
}
