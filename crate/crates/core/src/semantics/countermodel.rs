use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{
    check_frame, full_set, logic_frame_conditions, members, saturate, Conditions,
    Family, NbModel, SemanticsError, WorldSet,
};
use crate::calculus::LogicId;
use crate::formula::{subformulas, Formula};

/// Largest world count the exhaustive search accepts.
pub const MAX_SEARCH_WORLDS: usize = 5;

fn encode(up: &[WorldSet], perm: &[usize]) -> u64 {
    let n = up.len();
    let mut code = 0u64;
    for w in 0..n {
        for v in 0..n {
            if up[w] & (1 << v) != 0 {
                code |= 1 << (perm[w] * n + perm[v]);
            }
        }
    }
    code
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_preorder(up: &[WorldSet]) -> bool {
    (0..up.len()).all(|w| up[w] & (1 << w) != 0 && members(up[w]).all(|v| up[v] & !up[w] == 0))
}

fn labelled_preorders(n: usize) -> Vec<Vec<WorldSet>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    for base in labelled_preorders(n - 1) {
        let k = n - 1;
        for down in 0..(1u32 << k) {
            for upk in 0..(1u32 << k) {
                let mut up = base.clone();
                for w in members(down) {
                    up[w] |= 1 << k;
                }
                up.push(upk | (1 << k));
                if is_preorder(&up) {
                    out.push(up);
                }
            }
        }
    }
    out
}

/// One representative of every preorder on `n` worlds up to relabelling.
pub fn preorders_up_to_iso(n: usize) -> Vec<Vec<WorldSet>> {
    let perms = permutations(n);
    let identity: Vec<usize> = (0..n).collect();
    let mut out: Vec<Vec<WorldSet>> = labelled_preorders(n)
        .into_iter()
        .filter(|up| {
            let code = encode(up, &identity);
            perms.iter().all(|p| encode(up, p) >= code)
        })
        .collect();
    out.sort();
    out
}

/// The up-closed subsets of the preorder.
pub fn upsets(up: &[WorldSet]) -> Vec<WorldSet> {
    (0..=full_set(up.len()))
        .filter(|&s| members(s).all(|w| up[w] & !s == 0))
        .collect()
}

fn partial_truth(
    f: &Formula,
    n: usize,
    up: &[WorldSet],
    atoms: &BTreeMap<String, WorldSet>,
    modal: &BTreeMap<Formula, WorldSet>,
) -> WorldSet {
    let full = full_set(n);
    match f {
        Formula::Atom(p) => atoms.get(p).copied().unwrap_or(0),
        Formula::Bottom => 0,
        Formula::And(a, b) => partial_truth(a, n, up, atoms, modal) & partial_truth(b, n, up, atoms, modal),
        Formula::Or(a, b) => partial_truth(a, n, up, atoms, modal) | partial_truth(b, n, up, atoms, modal),
        Formula::Imp(a, b) => {
            let bad = partial_truth(a, n, up, atoms, modal) & !partial_truth(b, n, up, atoms, modal) & full;
            (0..n).filter(|&w| up[w] & bad == 0).fold(0, |acc, w| acc | (1 << w))
        }
        Formula::Box(_) | Formula::Dia(_) => modal[f],
    }
}

struct Search<'a> {
    n: usize,
    up: &'a [WorldSet],
    upsets: &'a [WorldSet],
    cs: &'a Conditions,
    atoms: BTreeMap<String, WorldSet>,
    modal: &'a [Formula],
    goal: &'a Formula,
}

impl Search<'_> {
    fn dfs(
        &self,
        i: usize,
        sat: &NbModel,
        neg_box: &[Family],
        neg_dia: &[Family],
        values: &mut BTreeMap<Formula, WorldSet>,
    ) -> Option<NbModel> {
        let full = full_set(self.n);
        if i == self.modal.len() {
            let t = partial_truth(self.goal, self.n, self.up, &self.atoms, values);
            return (t != full).then(|| sat.clone());
        }
        let g = &self.modal[i];
        let (is_box, body) = match g {
            Formula::Box(b) => (true, b),
            Formula::Dia(b) => (false, b),
            _ => unreachable!("only modal formulas are assigned"),
        };
        let t = partial_truth(body, self.n, self.up, &self.atoms, values);
        for &truth in self.upsets {
            let mut next = sat.clone();
            let mut nb = neg_box.to_vec();
            let mut nd = neg_dia.to_vec();
            for w in 0..self.n {
                let holds = truth & (1 << w) != 0;
                match (is_box, holds) {
                    (true, true) => {
                        next.nbox[w].insert(t);
                    }
                    (true, false) => {
                        nb[w].insert(t);
                    }
                    (false, true) => {
                        nd[w].insert(full & !t);
                    }
                    (false, false) => {
                        next.ndiam[w].insert(full & !t);
                    }
                }
            }
            saturate(&mut next, self.cs);
            let consistent = (0..self.n).all(|w| {
                !next.nbox[w].iter().any(|s| nb[w].contains(s))
                    && !next.ndiam[w].iter().any(|s| nd[w].contains(s))
            });
            if !consistent {
                continue;
            }
            values.insert(g.clone(), truth);
            if let Some(m) = self.dfs(i + 1, &next, &nb, &nd, values) {
                return Some(m);
            }
            values.remove(g);
        }
        None
    }
}

fn search_size(cs: &Conditions, f: &Formula, n: usize) -> Option<NbModel> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let mut modal: Vec<Formula> = subformulas(f)
        .into_iter()
        .filter(|g| matches!(g, Formula::Box(_) | Formula::Dia(_)))
        .collect();
    modal.sort_by_key(|g| g.size());
    let mut jobs = Vec::new();
    for up in preorders_up_to_iso(n) {
        let ups = upsets(&up);
        let mut vals: Vec<Vec<WorldSet>> = vec![vec![]];
        for _ in &atoms {
            vals = vals
                .into_iter()
                .flat_map(|v| {
                    ups.iter().map(move |&s| {
                        let mut v = v.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        for v in vals {
            jobs.push((up.clone(), ups.clone(), v));
        }
    }
    jobs.par_iter().find_map_first(|(up, ups, val)| {
        let mut base = NbModel::discrete(n);
        base.up = up.clone();
        let mut amap = BTreeMap::new();
        for (p, &s) in atoms.iter().zip(val) {
            amap.insert(p.clone(), s);
            for w in members(s) {
                base.val[w].insert(p.clone());
            }
        }
        saturate(&mut base, cs);
        let search = Search {
            n,
            up,
            upsets: ups,
            cs,
            atoms: amap,
            modal: &modal,
            goal: f,
        };
        let empty = vec![Family::EMPTY; n];
        search.dfs(0, &base, &empty, &empty, &mut BTreeMap::new())
    })
}

/// Searches all models with at most `max_worlds` worlds satisfying the
/// logic's frame conditions for one refuting `f`.
///
/// `Ok(None)` means no countermodel exists within the bound; it says nothing
/// about larger models. Returned models are re-verified before returning.
pub fn countermodel_search(
    l: &LogicId,
    f: &Formula,
    max_worlds: usize,
) -> Result<Option<(NbModel, usize)>, SemanticsError> {
    let cs = logic_frame_conditions(l)?;
    if max_worlds > MAX_SEARCH_WORLDS {
        return Err(SemanticsError::TooManyWorlds(max_worlds));
    }
    for n in 1..=max_worlds {
        if let Some(m) = search_size(&cs, f, n) {
            let t = m.truth_set(f);
            let w = (0..n).find(|&w| t & (1 << w) == 0);
            let ok = check_frame(&m, &cs).is_empty() && m.base_violations().is_empty();
            match w {
                Some(w) if ok => return Ok(Some((m, w))),
                _ => {
                    return Err(SemanticsError::Invariant(
                        "countermodel search produced an unverified model".into(),
                    ))
                }
            }
        }
    }
    Ok(None)
}
