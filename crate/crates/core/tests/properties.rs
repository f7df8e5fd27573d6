use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use imodal::calculus::{logic_rules, rule_instances, LogicId, RuleId};
use imodal::formula::{
    negated_closure, parse_formula, parse_sequent, render, render_sequent, subformulas, weight,
    Formula, Sequent, Style,
};
use imodal::prover::{check_proof, decide, Verdict};
use imodal::semantics::{
    check_frame, countermodel_search, logic_frame_conditions, random_formula, random_model,
    saturate, NbModel,
};

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Bottom),
        prop::sample::select(vec!["p", "q", "r", "x1"]).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            inner.clone().prop_map(Formula::boxed),
            inner.prop_map(Formula::dia),
        ]
    })
}

fn arb_sequent() -> impl Strategy<Value = Sequent> {
    (
        prop::collection::vec(arb_formula(), 0..3),
        prop::option::of(arb_formula()),
    )
        .prop_map(|(ante, succ)| Sequent::new(ante, succ))
}

fn logic_at(i: usize) -> LogicId {
    LogicId::all_named()[i].clone()
}

/// A small random sequent in the language of `l`, biased towards modal
/// formulas so that modal and interaction rules apply.
fn random_sequent(l: &LogicId, seed: u64) -> Sequent {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lang = l.language();
    let atoms = ["p", "q"];
    let modal = |rng: &mut ChaCha8Rng| {
        let a = random_formula(rng, &atoms, 1, lang.boxes, lang.diamonds);
        match (lang.boxes, lang.diamonds, rng.gen_range(0..3)) {
            (true, _, 0) | (true, false, _) => Formula::boxed(a),
            (_, true, _) => Formula::dia(a),
            _ => a,
        }
    };
    let ante: Vec<Formula> = (0..rng.gen_range(0..=3)).map(|_| modal(&mut rng)).collect();
    let succ = match rng.gen_range(0..3) {
        0 => None,
        1 => Some(modal(&mut rng)),
        _ => Some(random_formula(&mut rng, &atoms, 2, lang.boxes, lang.diamonds)),
    };
    Sequent::new(ante, succ)
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(f in arb_formula()) {
        for style in [Style::Ascii, Style::Unicode] {
            prop_assert_eq!(parse_formula(&render(&f, style)).unwrap(), f.clone());
        }
    }

    #[test]
    fn sequent_render_then_parse_is_identity(s in arb_sequent()) {
        prop_assert_eq!(parse_sequent(&render_sequent(&s, Style::Ascii)).unwrap(), s);
    }

    #[test]
    fn weight_is_monotone_under_subterms(f in arb_formula()) {
        for s in subformulas(&f) {
            if s != f {
                prop_assert!(weight(&s) < weight(&f));
            }
        }
        let neg = weight(&Formula::neg(f.clone()));
        prop_assert!(neg < weight(&Formula::boxed(f.clone())));
        prop_assert!(neg < weight(&Formula::dia(f.clone())));
    }

    #[test]
    fn negated_closure_bounds(f in arb_formula()) {
        let subs = subformulas(&f);
        let closure = negated_closure(&f);
        prop_assert!(subs.is_subset(&closure));
        prop_assert!(closure.len() < 2 * subs.len());
        prop_assert!(subs.len() <= f.size());
        for c in &closure {
            prop_assert!(subs.contains(c) || c.negated().is_some_and(|d| subs.contains(d)));
        }
    }

    /// Each rule instance preserves validity in any single model of the logic.
    #[test]
    fn rule_instances_are_sound(li in 0usize..38, seed in any::<u64>(), mseed in any::<u64>(), size in 1usize..4) {
        let l = logic_at(li);
        let goal = random_sequent(&l, seed);
        let m = random_model(&logic_frame_conditions(&l).unwrap(), size, mseed);
        for inst in rule_instances(&logic_rules(&l), &goal) {
            if inst.premises.iter().all(|p| m.valid(&p.as_formula())) {
                prop_assert!(
                    m.valid(&goal.as_formula()),
                    "{} instance of {} is unsound on {:?}", inst.rule, goal, m.to_json()
                );
            }
        }
    }

    /// Every propositional connective of the goal gets its rule instance.
    #[test]
    fn rule_instances_are_exhaustive(s in arb_sequent()) {
        let rules = RuleId::G3I.into_iter().collect();
        let insts = rule_instances(&rules, &s);
        let has = |r: RuleId, f: &Formula| insts.iter().any(|i| i.rule == r && i.principal == vec![f.clone()]);
        for f in &s.antecedent {
            match f {
                Formula::And(..) => prop_assert!(has(RuleId::Land, f)),
                Formula::Or(..) => prop_assert!(has(RuleId::Lor, f)),
                Formula::Imp(..) => prop_assert!(has(RuleId::Limp, f)),
                Formula::Bottom => prop_assert!(has(RuleId::Lbot, f)),
                _ => {}
            }
        }
        match &s.succedent {
            Some(g @ Formula::And(..)) => prop_assert!(has(RuleId::Rand, g)),
            Some(g @ Formula::Imp(..)) => prop_assert!(has(RuleId::Rimp, g)),
            Some(Formula::Or(..)) => {
                prop_assert_eq!(insts.iter().filter(|i| i.rule == RuleId::Ror).count(), 2)
            }
            Some(g @ Formula::Atom(_)) if s.antecedent.contains(g) => prop_assert!(has(RuleId::Init, g)),
            _ => {}
        }
        for i in &insts {
            prop_assert_eq!(&i.conclusion, &s);
        }
    }

    /// Proofs returned by the prover pass the independent checker, and
    /// countermodels only exist for underivable goals.
    #[test]
    fn prover_agrees_with_checker_and_countermodels(li in 0usize..38, seed in any::<u64>()) {
        let l = logic_at(li);
        let goal = random_sequent(&l, seed);
        let derivable = match decide(&l, &goal).unwrap() {
            Verdict::Derivable(t) => {
                prop_assert_eq!(&t.conclusion, &goal);
                prop_assert!(check_proof(&t, &l).is_ok());
                true
            }
            Verdict::Underivable(_) => false,
        };
        if let Some((m, w)) = countermodel_search(&l, &goal.as_formula(), 2).unwrap() {
            prop_assert!(!derivable, "countermodel for derivable {} in {}", goal, l);
            prop_assert!(!m.eval_at(w, &goal.as_formula()));
        }
    }

    #[test]
    fn truth_sets_are_hereditary(li in 0usize..38, seed in any::<u64>(), size in 1usize..6, f in arb_formula()) {
        let l = logic_at(li);
        let m = random_model(&logic_frame_conditions(&l).unwrap(), size, seed);
        let t = m.truth_set(&f);
        for w in 0..m.size() {
            if t & (1 << w) != 0 {
                prop_assert_eq!(m.up[w] & !t, 0);
            }
        }
    }

    #[test]
    fn saturation_is_idempotent(li in 0usize..38, seed in any::<u64>(), size in 1usize..5) {
        let l = logic_at(li);
        let cs = logic_frame_conditions(&l).unwrap();
        let m = random_model(&cs, size, seed);
        prop_assert!(check_frame(&m, &cs).is_empty());
        prop_assert!(m.base_violations().is_empty());
        let mut again = m.clone();
        saturate(&mut again, &cs);
        prop_assert_eq!(&again, &m);
        prop_assert_eq!(NbModel::from_json(&m.to_json(), false).unwrap(), m);
    }
}
