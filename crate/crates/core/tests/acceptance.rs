//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use imodal::calculus::{Base, LogicId, RuleId, RuleSet};
use imodal::corpus::{
    countermodel_whitelist, distinctness_corpus, duality_corpus, formula_pool, full_corpus,
    propositional_formulas, regression_formulas,
};
use imodal::formula::{parse_formula, subformulas, weight, Formula, Sequent};
use imodal::hilbert::axiom_provable_suite;
use imodal::prover::{
    cut_closure_test, decide, decide_rules, default_probes, distinctness_matrix, ProveError,
    SearchOptions,
};
use imodal::semantics::{
    check_frame, countermodel_search, logic_frame_conditions, random_formula, random_model,
    Conditions, FrameCondition, NbModel, WorldSet, DEFAULT_ATOMS,
};
use imodal::transform::{
    check_filtration, default_phi, finest_filtration, intersection_closure, kojima_to_nb,
    nb_to_kojima, nb_to_rel_ck, nb_to_rel_hw, pairs_of, quasi_filtering, random_kojima,
    random_rel, rel_to_nb_ck, rel_to_nb_hw, supplementation,
};

type Outcome = Result<String, String>;

fn f(s: &str) -> Formula {
    parse_formula(s).expect("built-in formula")
}

fn is_e2(l: &LogicId) -> bool {
    matches!(l, LogicId::Bimodal { base: Base::E2, .. })
}

fn conditions(cs: &[FrameCondition]) -> Conditions {
    cs.iter().copied().collect()
}

/// Every truth set must be an up-set.
fn hereditary(m: &NbModel, t: WorldSet) -> bool {
    (0..m.size()).all(|w| t & (1 << w) == 0 || m.up[w] & !t == 0)
}

/// A theorem-shaped item of the shipped corpora, with its prover verdict.
struct Item {
    logic: LogicId,
    formula: Formula,
    verdict: Result<bool, ProveError>,
}

/// Corpus rows, the modal pool and the propositional set, over every logic
/// whose language admits them.
fn corpus_items() -> Vec<Item> {
    let mut goals: Vec<(LogicId, Sequent)> = full_corpus()
        .into_iter()
        .map(|r| (r.logic, r.sequent))
        .collect();
    let pool: Vec<Formula> = formula_pool()
        .into_iter()
        .chain(propositional_formulas().into_iter().map(|(f, _)| f))
        .collect();
    for l in LogicId::all_named() {
        for a in pool.iter().filter(|a| l.admits(a)) {
            goals.push((l.clone(), Sequent::theorem(a.clone())));
        }
    }
    let mut seen = BTreeSet::new();
    goals.retain(|g| seen.insert(g.clone()));
    goals
        .into_par_iter()
        .map(|(logic, s)| Item {
            verdict: decide(&logic, &s).map(|v| v.is_derivable()),
            formula: s.as_formula(),
            logic,
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let mut goals = 0;
    let mut failures = Vec::new();
    for l in LogicId::all_named() {
        let cases = axiom_provable_suite(&l).map_err(|e| e.to_string())?;
        for c in cases {
            goals += 1 + c.premises.len();
            if !c.holds() {
                failures.push(format!("{} {}", l.name(), c.schema.name()));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{goals} goals over 38 logics"))
    } else {
        Err(failures.join(", "))
    }
}

fn criterion_2() -> Outcome {
    let logics = LogicId::bimodal();
    let probes = default_probes();
    let matrix = distinctness_matrix(&logics, &probes).map_err(|e| e.to_string())?;
    let mut clashes = Vec::new();
    for i in 0..logics.len() {
        for j in i + 1..logics.len() {
            if matrix[i] == matrix[j] {
                clashes.push(format!("{}={}", logics[i].name(), logics[j].name()));
            }
        }
    }
    // The shipped table, decided row by row.
    let mut mismatches = Vec::new();
    for row in distinctness_corpus() {
        let i = logics.iter().position(|l| *l == row.logic).ok_or("non-bimodal row")?;
        let j = probes
            .iter()
            .position(|p| Sequent::theorem(p.clone()) == row.sequent)
            .ok_or("row is not a probe")?;
        if matrix[i][j] != row.expected {
            mismatches.push(format!("line {}", row.line));
        }
    }
    if clashes.is_empty() && mismatches.is_empty() {
        Ok(format!("{} logics pairwise separated by {} probes", logics.len(), probes.len()))
    } else {
        Err(format!("identified: {clashes:?}; table mismatches: {mismatches:?}"))
    }
}

fn criterion_3() -> Outcome {
    // (a) Modal rules never change propositional verdicts.
    let g3i: RuleSet = RuleId::G3I.into_iter().collect();
    let props = propositional_formulas();
    let mut disagreements = Vec::new();
    for (a, label) in &props {
        let goal = Sequent::theorem(a.clone());
        let base = decide_rules(&g3i, &goal, SearchOptions::default())
            .map_err(|e| e.to_string())?
            .is_derivable();
        if base != *label {
            disagreements.push(format!("G3i on {a}"));
        }
        for l in LogicId::all_named() {
            if decide(&l, &goal).map_err(|e| e.to_string())?.is_derivable() != base {
                disagreements.push(format!("{} on {a}", l.name()));
            }
        }
    }

    // (b) Disjunction property on derivable theorems `⇒ A ∨ B`.
    let mut goals: Vec<(LogicId, Formula)> = full_corpus()
        .into_iter()
        .filter(|r| r.sequent.antecedent.is_empty())
        .filter_map(|r| r.sequent.succedent.map(|s| (r.logic, s)))
        .collect();
    let probes = default_probes();
    let mut extra: Vec<Formula> = formula_pool();
    extra.extend(props.iter().map(|(a, _)| a.clone()));
    for a in &probes {
        for b in &probes {
            extra.push(Formula::or(a.clone(), b.clone()));
        }
    }
    for l in LogicId::all_named() {
        for a in extra.iter().filter(|a| l.admits(a)) {
            goals.push((l.clone(), a.clone()));
        }
    }
    let disjunctive: Vec<(LogicId, Formula, Formula)> = goals
        .into_iter()
        .filter_map(|(l, g)| match g {
            Formula::Or(a, b) => Some((l, *a, *b)),
            _ => None,
        })
        .collect();
    let dp: Vec<Result<Option<String>, ProveError>> = disjunctive
        .par_iter()
        .map(|(l, a, b)| {
            let whole = Sequent::theorem(Formula::or(a.clone(), b.clone()));
            if !decide(l, &whole)?.is_derivable() {
                return Ok(None);
            }
            let left = decide(l, &Sequent::theorem(a.clone()))?.is_derivable();
            let right = decide(l, &Sequent::theorem(b.clone()))?.is_derivable();
            Ok(Some(if left || right { String::new() } else { format!("{} on {a} | {b}", l.name()) }))
        })
        .collect();
    let mut dp_checked = 0;
    let mut dp_fail = Vec::new();
    for r in dp {
        match r.map_err(|e| e.to_string())? {
            Some(s) if s.is_empty() => dp_checked += 1,
            Some(s) => dp_fail.push(s),
            None => {}
        }
    }

    // (c) The duality sequents.
    let duality = duality_corpus();
    let mut dual_logics = BTreeSet::new();
    let mut dual_fail = Vec::new();
    for row in &duality {
        dual_logics.insert(row.logic.clone());
        let v = decide(&row.logic, &row.sequent).map_err(|e| e.to_string())?;
        if row.expected || v.is_derivable() {
            dual_fail.push(format!("{} line {}", row.logic.name(), row.line));
        }
    }
    let mut expected_logics: BTreeSet<LogicId> = LogicId::bimodal().into_iter().collect();
    expected_logics.extend([LogicId::CK, LogicId::HW]);
    if dual_logics != expected_logics {
        dual_fail.push("duality corpus does not cover the bimodal logics, CK and HW".into());
    }

    if disagreements.is_empty() && dp_fail.is_empty() && dual_fail.is_empty() && dp_checked > 0 {
        Ok(format!(
            "(a) {} formulas x 38 logics agree with G3i; (b) {dp_checked} disjunctions; (c) {} duality rows underivable",
            props.len(),
            duality.len()
        ))
    } else {
        Err(format!("(a) {disagreements:?}; (b) {dp_fail:?} checked {dp_checked}; (c) {dual_fail:?}"))
    }
}

fn families() -> Vec<(&'static str, Vec<LogicId>)> {
    let base = |b: Base| {
        LogicId::bimodal()
            .into_iter()
            .filter(|l| matches!(l, LogicId::Bimodal { base, .. } if *base == b))
            .collect::<Vec<_>>()
    };
    vec![
        ("box", LogicId::box_family()),
        ("dia", LogicId::dia_family()),
        ("E1", base(Base::E1)),
        ("E2", base(Base::E2)),
        ("E3", base(Base::E3)),
        ("M1", base(Base::M1)),
        ("CK/HW", vec![LogicId::CK, LogicId::HW]),
    ]
}

/// A candidate cut: `Γ ⇒ A` and `Γ, A ⇒ B`, with `A` and `B` biased
/// towards formulas the premises can actually derive.
fn cut_candidate(rng: &mut ChaCha8Rng, l: &LogicId, theorems: &[Formula]) -> (Sequent, Sequent) {
    let lang = l.language();
    let atoms = ["p", "q"];
    let rf = |rng: &mut ChaCha8Rng, d: usize| random_formula(rng, &atoms, d, lang.boxes, lang.diamonds);
    let gamma: Vec<Formula> = (0..rng.gen_range(0..=2)).map(|_| rf(rng, 2)).collect();
    let pick = |rng: &mut ChaCha8Rng, g: &[Formula], fallback: Formula| {
        g.choose(rng).cloned().unwrap_or(fallback)
    };
    let a = match rng.gen_range(0..5) {
        0 => rf(rng, 2),
        1 => {
            let g = pick(rng, &gamma, Formula::top());
            Formula::or(g, rf(rng, 1))
        }
        2 => {
            let x = rf(rng, 1);
            Formula::imp(x, pick(rng, &gamma, Formula::top()))
        }
        3 => pick(rng, theorems, Formula::top()),
        _ => Formula::conj(gamma.iter().cloned()),
    };
    let b = match rng.gen_range(0..5) {
        0 | 1 => rf(rng, 2),
        2 => Formula::or(rf(rng, 1), a.clone()),
        3 => Formula::and(a.clone(), pick(rng, &gamma, Formula::top())),
        _ => {
            let y = rf(rng, 1);
            Formula::imp(Formula::imp(a.clone(), y.clone()), y)
        }
    };
    let left = Sequent::new(gamma.clone(), Some(a.clone()));
    let right = Sequent::new(gamma.into_iter().chain([a]), Some(b));
    (left, right)
}

fn criterion_4() -> Outcome {
    const PER_FAMILY: usize = 200;
    const MAX_ATTEMPTS: usize = 50_000;
    let mut summary = Vec::new();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (name, logics) in families() {
        let mut by_logic: BTreeMap<LogicId, Vec<(Sequent, Sequent)>> = BTreeMap::new();
        let theorems: BTreeMap<LogicId, Vec<Formula>> = logics
            .iter()
            .map(|l| {
                let ts = formula_pool()
                    .into_iter()
                    .filter(|a| l.admits(a) && matches!(imodal::prover::is_theorem(l, a), Ok(true)))
                    .collect();
                (l.clone(), ts)
            })
            .collect();
        let mut found = 0;
        let mut attempts = 0;
        while found < PER_FAMILY && attempts < MAX_ATTEMPTS {
            // Draw a batch, keep those with both premises derivable.
            let batch: Vec<(LogicId, (Sequent, Sequent))> = (0..64)
                .map(|i| {
                    let l = logics[(attempts + i) % logics.len()].clone();
                    let c = cut_candidate(&mut rng, &l, &theorems[&l]);
                    (l, c)
                })
                .collect();
            attempts += batch.len();
            let kept: Vec<(LogicId, (Sequent, Sequent))> = batch
                .into_par_iter()
                .filter(|(l, (left, right))| {
                    [left, right]
                        .iter()
                        .all(|s| matches!(decide(l, s).map(|v| v.is_derivable()), Ok(true)))
                })
                .collect();
            for (l, c) in kept {
                if found < PER_FAMILY {
                    by_logic.entry(l).or_default().push(c);
                    found += 1;
                }
            }
        }
        let mut checked = 0;
        for (l, pairs) in &by_logic {
            let report = cut_closure_test(l, pairs);
            checked += report.checked;
            for (left, right) in &report.violations {
                failures.push(format!("{}: {left} / {right}", l.name()));
            }
            if report.inconclusive > 0 {
                failures.push(format!("{}: {} inconclusive", l.name(), report.inconclusive));
            }
        }
        if found < PER_FAMILY {
            failures.push(format!("{name}: only {found} derivable pairs sampled"));
        }
        summary.push(format!("{name} {checked}"));
    }
    if failures.is_empty() {
        Ok(format!("cut-closed on {}", summary.join(", ")))
    } else {
        Err(failures.join("; "))
    }
}

fn random_models(l: &LogicId, count: u64, max_size: usize) -> Vec<NbModel> {
    let cs = logic_frame_conditions(l).expect("named logic");
    (0..count)
        .map(|seed| random_model(&cs, 1 + (seed as usize % max_size), seed))
        .collect()
}

fn criterion_5(items: &[Item]) -> Outcome {
    let logics = LogicId::all_named();
    let results: Vec<(usize, Vec<String>)> = logics
        .par_iter()
        .map(|l| {
            let models = random_models(l, 200, 4);
            let mine: Vec<&Item> = items.iter().filter(|i| i.logic == *l).collect();
            let mut checked = 0;
            let mut fails = Vec::new();
            for (k, m) in models.iter().enumerate() {
                for item in &mine {
                    let t = m.truth_set(&item.formula);
                    if !hereditary(m, t) {
                        fails.push(format!("{} model {k}: truth set of {} is not an up-set", l.name(), item.formula));
                    }
                    if matches!(item.verdict, Ok(true)) {
                        checked += 1;
                        if t != m.full() {
                            fails.push(format!("{} model {k}: {} not valid", l.name(), item.formula));
                        }
                    }
                }
            }
            (checked, fails)
        })
        .collect();
    let checked: usize = results.iter().map(|r| r.0).sum();
    let fails: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    if fails.is_empty() {
        Ok(format!("{checked} theorem/model pairs valid, all truth sets hereditary"))
    } else {
        Err(fails.into_iter().take(10).collect::<Vec<_>>().join("; "))
    }
}

fn criterion_6(items: &[Item]) -> Outcome {
    let whitelist = countermodel_whitelist();
    let targets: Vec<&Item> = items
        .iter()
        .filter(|i| !is_e2(&i.logic) && !matches!(i.logic, LogicId::Custom(_)))
        .filter(|i| matches!(i.verdict, Ok(false)))
        .collect();
    let results: Vec<Result<(), String>> = targets
        .par_iter()
        .map(|item| {
            let l = &item.logic;
            match countermodel_search(l, &item.formula, 3).map_err(|e| e.to_string())? {
                Some((m, w)) => {
                    let cs = logic_frame_conditions(l).map_err(|e| e.to_string())?;
                    let frame_ok = check_frame(&m, &cs).is_empty() && m.base_violations().is_empty();
                    if frame_ok && !m.eval_at(w, &item.formula) {
                        Ok(())
                    } else {
                        Err(format!("{}: unverified countermodel for {}", l.name(), item.formula))
                    }
                }
                None => match whitelist.iter().find(|(wl, wf, _)| wl == l && *wf == item.formula) {
                    // Whitelisted items must still be refuted at their recorded bound.
                    Some(&(_, _, bound)) => match countermodel_search(l, &item.formula, bound) {
                        Ok(Some(_)) => Ok(()),
                        _ => Err(format!("{}: no countermodel for {} within {bound} worlds", l.name(), item.formula)),
                    },
                    None => Err(format!("{}: no countermodel for {} within 3 worlds", l.name(), item.formula)),
                },
            }
        })
        .collect();
    let fails: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    if fails.is_empty() {
        Ok(format!(
            "{} underivable items refuted ({} whitelisted with a larger bound)",
            targets.len(),
            whitelist.len()
        ))
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_7() -> Outcome {
    use FrameCondition::*;
    let sources = [
        conditions(&[SuppBox, SuppDia, WInt1]),
        conditions(&[CapBox, WInt1]),
        conditions(&[SuppBox, SuppDia, CapBox, WInt1]),
        conditions(&[CapBox, WInt3]),
        conditions(&[WInt1, UnitBox, UnitDia]),
        conditions(&[WInt3, UnitBox]),
    ];
    let mut fails = Vec::new();
    let mut closures = 0;
    for i in 0..100u64 {
        let cs = &sources[i as usize % sources.len()];
        let m = random_model(cs, 1 + (i as usize % 5), 7000 + i);
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        let goal = random_formula(&mut rng, &DEFAULT_ATOMS, 3, true, true);
        let fl = finest_filtration(&m, &default_phi(&goal)).map_err(|e| e.to_string())?;
        let mut local = Vec::new();
        for a in &fl.phi {
            for w in 0..m.size() {
                if fl.result.eval_at(fl.class_of[w], a) != m.eval_at(w, a) {
                    local.push(format!("eval of {a} differs at {}", m.labels[w]));
                }
            }
        }
        local.extend(check_filtration(&fl, &fl.result));
        local.extend(fl.result.base_violations());
        // Preserved conditions.
        for c in [WInt1, WInt3, UnitBox, UnitDia] {
            let one = conditions(&[c]);
            if check_frame(&m, &one).is_empty() && !check_frame(&fl.result, &one).is_empty() {
                local.push(format!("{c} not preserved"));
            }
        }
        let has = |c: FrameCondition| check_frame(&m, &conditions(&[c])).is_empty();
        let supp = has(SuppBox) && has(SuppDia);
        let cap = has(CapBox);
        let closed = [
            ("supplementation", supplementation(&fl), conditions(&[SuppBox, SuppDia]), supp && has(WInt1), WInt1),
            ("intersection closure", intersection_closure(&fl), conditions(&[CapBox]), cap && has(WInt1), WInt1),
            ("quasi-filtering", quasi_filtering(&fl), conditions(&[SuppBox, SuppDia, CapBox]), supp && cap && has(WInt1), WInt1),
            ("intersection closure", intersection_closure(&fl), conditions(&[CapBox]), cap && has(WInt3), WInt3),
        ];
        for (name, out, advertised, hypothesis, kept) in closed {
            let v = check_frame(&out, &advertised);
            if !v.is_empty() {
                local.push(format!("{name}: {}", v[0].describe(&out)));
            }
            if hypothesis {
                closures += 1;
                local.extend(check_filtration(&fl, &out).into_iter().map(|e| format!("{name}: {e}")));
                local.extend(out.base_violations().into_iter().map(|e| format!("{name}: {e}")));
                if !check_frame(&out, &conditions(&[kept])).is_empty() {
                    local.push(format!("{name}: {kept} lost"));
                }
            }
        }
        if !local.is_empty() {
            fails.push(format!("pair {i} ({goal}): {}", local.join(", ")));
        }
    }
    if fails.is_empty() {
        Ok(format!("100 filtrations agree on phi; {closures} closures under their preservation hypotheses remain filtrations"))
    } else {
        Err(fails.into_iter().take(5).collect::<Vec<_>>().join("; "))
    }
}

/// Formulas whose value differs between two evaluations of the same world.
fn disagreements(
    regression: &[Formula],
    what: &str,
    mut lhs: impl FnMut(&Formula) -> bool,
    mut rhs: impl FnMut(&Formula) -> bool,
) -> Vec<String> {
    regression
        .iter()
        .filter(|a| lhs(a) != rhs(a))
        .take(1)
        .map(|a| format!("{what}: {a}"))
        .collect()
}

fn criterion_8() -> Outcome {
    let mut fails = Vec::new();
    let ck_axiom = f("[]p & <>q -> <>(p & q)");
    let no_dia_bot = f("~<>false");
    if !imodal::prover::is_theorem(&LogicId::CK, &ck_axiom).map_err(|e| e.to_string())? {
        fails.push("CK axiom underivable in CK".to_string());
    }
    for (k, m) in random_models(&LogicId::CK, 200, 4).iter().enumerate() {
        if !m.valid(&ck_axiom) {
            fails.push(format!("CK axiom fails on CK model {k}"));
        }
    }
    if imodal::prover::is_theorem(&LogicId::CK, &no_dia_bot).map_err(|e| e.to_string())? {
        fails.push("~<>false derivable in CK".into());
    }
    match countermodel_search(&LogicId::CK, &no_dia_bot, 3).map_err(|e| e.to_string())? {
        Some((m, w)) => {
            let cs = logic_frame_conditions(&LogicId::CK).map_err(|e| e.to_string())?;
            if !check_frame(&m, &cs).is_empty() || m.eval_at(w, &no_dia_bot) {
                fails.push("CK countermodel for ~<>false does not verify".into());
            }
        }
        None => fails.push("no CK countermodel for ~<>false within 3 worlds".into()),
    }
    if !imodal::prover::is_theorem(&LogicId::HW, &no_dia_bot).map_err(|e| e.to_string())? {
        fails.push("~<>false underivable in HW".into());
    }

    let reg = regression_formulas();
    let hw = logic_frame_conditions(&LogicId::HW).map_err(|e| e.to_string())?;
    let ck = logic_frame_conditions(&LogicId::CK).map_err(|e| e.to_string())?;
    let runs: Vec<Vec<String>> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let size = 1 + (seed as usize % 4);
            let mut out = Vec::new();
            let mut err = |what: &str, e: String| out.push(format!("{what} seed {seed}: {e}"));

            let km = random_kojima(size, seed);
            match kojima_to_nb(&km) {
                Ok(nb) => {
                    for w in 0..size {
                        let d = disagreements(&reg, "kojima_to_nb", |a| km.eval_at(w, a), |a| nb.eval_at(w, a));
                        d.into_iter().for_each(|e| err("kojima_to_nb", e));
                    }
                }
                Err(e) => err("kojima_to_nb", e.to_string()),
            }

            let src = random_model(&hw, size, 100 + seed);
            match nb_to_kojima(&src) {
                Ok(km) => {
                    for w in 0..size {
                        let d = disagreements(&reg, "nb_to_kojima", |a| src.eval_at(w, a), |a| km.eval_at(w, a));
                        d.into_iter().for_each(|e| err("nb_to_kojima", e));
                    }
                }
                Err(e) => err("nb_to_kojima", e.to_string()),
            }

            let rm = random_rel(size, false, 200 + seed);
            match rel_to_nb_hw(&rm) {
                Ok(nb) => {
                    let mut ev = rm.evaluator();
                    for w in 0..size {
                        let d = disagreements(&reg, "rel_to_nb_hw", |a| ev.eval_at(w, a), |a| nb.eval_at(w, a));
                        d.into_iter().for_each(|e| err("rel_to_nb_hw", e));
                    }
                }
                Err(e) => err("rel_to_nb_hw", e.to_string()),
            }

            let rm = random_rel(size, true, 300 + seed);
            match rel_to_nb_ck(&rm) {
                Ok(nb) => {
                    let mut ev = rm.evaluator();
                    for i in 0..nb.size() {
                        let w = rm.world(&nb.labels[i]).expect("consistent world kept");
                        let d = disagreements(&reg, "rel_to_nb_ck", |a| ev.eval_at(w, a), |a| nb.eval_at(i, a));
                        d.into_iter().for_each(|e| err("rel_to_nb_ck", e));
                    }
                }
                Err(e) => err("rel_to_nb_ck", e.to_string()),
            }

            // Neighbourhood to relational: for each source world w, w forces A
            // iff every pair (w, α) does iff some pair does.
            for (what, src, conv) in [
                ("nb_to_rel_hw", random_model(&hw, size, 400 + seed), nb_to_rel_hw as fn(&NbModel) -> _),
                ("nb_to_rel_ck", random_model(&ck, size, 500 + seed), nb_to_rel_ck),
            ] {
                match conv(&src) {
                    Ok(rel) => {
                        let mut ev = rel.evaluator();
                        for w in 0..size {
                            let pairs = pairs_of(&rel, &src, w);
                            if pairs.is_empty() {
                                err(what, format!("no pair worlds for {}", src.labels[w]));
                                continue;
                            }
                            for a in &reg {
                                let v = src.eval_at(w, a);
                                let all = pairs.iter().all(|&i| ev.eval_at(i, a));
                                let any = pairs.iter().any(|&i| ev.eval_at(i, a));
                                if v != all || v != any {
                                    err(what, format!("{a} at {}", src.labels[w]));
                                    break;
                                }
                            }
                        }
                    }
                    Err(e) => err(what, e.to_string()),
                }
            }
            out
        })
        .collect();
    fails.extend(runs.into_iter().flatten());
    if fails.is_empty() {
        Ok(format!(
            "CK axiom valid on 200 CK models; ~<>false separates CK and HW; 6 translations preserve {} formulas on 50 sources each",
            reg.len()
        ))
    } else {
        Err(fails.into_iter().take(10).collect::<Vec<_>>().join("; "))
    }
}

fn criterion_9(items: &[Item]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut fails = Vec::new();
    for _ in 0..10_000 {
        let depth = rng.gen_range(0..=5);
        let a = random_formula(&mut rng, &DEFAULT_ATOMS, depth, true, true);
        let neg = weight(&Formula::neg(a.clone()));
        if neg >= weight(&Formula::boxed(a.clone())) || neg >= weight(&Formula::dia(a.clone())) {
            fails.push(format!("negation of {a} is not lighter than its modalities"));
        }
        for s in subformulas(&a) {
            if s != a && weight(&s) >= weight(&a) {
                fails.push(format!("{s} is not lighter than {a}"));
            }
        }
    }
    let breaches: Vec<String> = items
        .iter()
        .filter_map(|i| i.verdict.as_ref().err().map(|e| format!("{} {}: {e}", i.logic.name(), i.formula)))
        .collect();
    fails.extend(breaches);
    if fails.is_empty() {
        Ok(format!("10000 random formulas; {} corpus goals decided within budget", items.len()))
    } else {
        Err(fails.into_iter().take(10).collect::<Vec<_>>().join("; "))
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let items = corpus_items();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("axiom bridge", Box::new(criterion_1)),
        ("lattice distinctness", Box::new(criterion_2)),
        ("conservativity, disjunction, duality", Box::new(criterion_3)),
        ("cut closure", Box::new(criterion_4)),
        ("soundness", Box::new(|| criterion_5(&items))),
        ("countermodels", Box::new(|| criterion_6(&items))),
        ("filtrations", Box::new(criterion_7)),
        ("CK/HW semantics", Box::new(criterion_8)),
        ("weight and termination", Box::new(|| criterion_9(&items))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 passed in {:.1}s", 9 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
