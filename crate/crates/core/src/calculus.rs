//! Inference-rule catalogue, the logic registry and backward rule instances.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, Sequent};
use crate::hilbert::SchemaId;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    Init,
    Lbot,
    Land,
    Rand,
    Lor,
    Ror,
    Limp,
    Rimp,
    Ebox,
    Ediam,
    Mbox,
    Mdiam,
    Nbox,
    Ndiam,
    EboxC,
    MboxC,
    Int1a,
    Int1b,
    Int2a,
    Int2b,
    Int3,
    Int1bC,
    Int2aC,
    Int2bC,
    Int3C,
    Wrule,
}

use RuleId::*;

impl RuleId {
    pub const ALL: [RuleId; 26] = [
        Init, Lbot, Land, Rand, Lor, Ror, Limp, Rimp, Ebox, Ediam, Mbox, Mdiam, Nbox, Ndiam,
        EboxC, MboxC, Int1a, Int1b, Int2a, Int2b, Int3, Int1bC, Int2aC, Int2bC, Int3C, Wrule,
    ];

    pub const G3I: [RuleId; 8] = [Init, Lbot, Land, Rand, Lor, Ror, Limp, Rimp];

    pub fn name(self) -> &'static str {
        match self {
            Init => "init",
            Lbot => "Lbot",
            Land => "Land",
            Rand => "Rand",
            Lor => "Lor",
            Ror => "Ror",
            Limp => "Limp",
            Rimp => "Rimp",
            Ebox => "Ebox",
            Ediam => "Ediam",
            Mbox => "Mbox",
            Mdiam => "Mdiam",
            Nbox => "Nbox",
            Ndiam => "Ndiam",
            EboxC => "EboxC",
            MboxC => "MboxC",
            Int1a => "Int1a",
            Int1b => "Int1b",
            Int2a => "Int2a",
            Int2b => "Int2b",
            Int3 => "Int3",
            Int1bC => "Int1bC",
            Int2aC => "Int2aC",
            Int2bC => "Int2bC",
            Int3C => "Int3C",
            Wrule => "Wrule",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name().eq_ignore_ascii_case(s))
    }

    /// Rules whose conclusion may contain any number `n ≥ 1` of boxed
    /// principal formulas.
    pub fn is_nary(self) -> bool {
        matches!(self, EboxC | MboxC | Int1bC | Int2aC | Int2bC | Int3C | Wrule)
    }

    pub fn is_axiom(self) -> bool {
        matches!(self, Init | Lbot)
    }

    pub fn is_g3i(self) -> bool {
        RuleId::G3I.contains(&self)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type RuleSet = BTreeSet<RuleId>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Base {
    E1,
    E2,
    E3,
    M1,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum NExt {
    None,
    Nd,
    Nb,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum LogicId {
    BoxFamily { m: bool, c: bool, n: bool },
    DiaFamily { m: bool, n: bool },
    Bimodal { base: Base, c: bool, n: NExt },
    CK,
    HW,
    Custom(RuleSet),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("unknown logic {0:?}")]
    UnknownLogic(String),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("logic {0} has no Hilbert presentation")]
    NoHilbertTwin(String),
}

/// Which modalities a logic's language contains.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Language {
    pub boxes: bool,
    pub diamonds: bool,
}

impl LogicId {
    pub fn box_family() -> Vec<LogicId> {
        let mut out = Vec::new();
        for bits in 0..8u8 {
            let (m, c, n) = (bits & 1 != 0, bits & 2 != 0, bits & 4 != 0);
            out.push(LogicId::BoxFamily { m, c, n });
        }
        out
    }

    pub fn dia_family() -> Vec<LogicId> {
        let mut out = Vec::new();
        for bits in 0..4u8 {
            out.push(LogicId::DiaFamily {
                m: bits & 1 != 0,
                n: bits & 2 != 0,
            });
        }
        out
    }

    /// The 24 bimodal logics of the lattice.
    pub fn bimodal() -> Vec<LogicId> {
        let mut out = Vec::new();
        for base in [Base::E1, Base::E2, Base::E3, Base::M1] {
            for c in [false, true] {
                for n in [NExt::None, NExt::Nd, NExt::Nb] {
                    out.push(LogicId::Bimodal { base, c, n });
                }
            }
        }
        out
    }

    /// Every named logic: 12 monomodal, 24 bimodal, CK and HW.
    pub fn all_named() -> Vec<LogicId> {
        let mut out = LogicId::box_family();
        out.extend(LogicId::dia_family());
        out.extend(LogicId::bimodal());
        out.push(LogicId::CK);
        out.push(LogicId::HW);
        out
    }

    pub fn name(&self) -> String {
        match self {
            LogicId::BoxFamily { m, c, n } => format!(
                "box-E{}{}{}",
                if *m { "M" } else { "" },
                if *c { "C" } else { "" },
                if *n { "N" } else { "" }
            ),
            LogicId::DiaFamily { m, n } => format!(
                "dia-E{}{}",
                if *m { "M" } else { "" },
                if *n { "N" } else { "" }
            ),
            LogicId::Bimodal { base, c, n } => format!(
                "{:?}{}{}",
                base,
                if *c { "C" } else { "" },
                match n {
                    NExt::None => "",
                    NExt::Nd => "Nd",
                    NExt::Nb => "Nb",
                }
            ),
            LogicId::CK => "CK".into(),
            LogicId::HW => "HW".into(),
            LogicId::Custom(rules) => {
                let mut names: Vec<&str> = Vec::new();
                let g3i = RuleId::G3I.iter().all(|r| rules.contains(r));
                if g3i {
                    names.push("G3i");
                }
                for r in rules {
                    if !(g3i && r.is_g3i()) {
                        names.push(r.name());
                    }
                }
                format!("custom:{}", names.join(","))
            }
        }
    }

    pub fn language(&self) -> Language {
        match self {
            LogicId::BoxFamily { .. } => Language {
                boxes: true,
                diamonds: false,
            },
            LogicId::DiaFamily { .. } => Language {
                boxes: false,
                diamonds: true,
            },
            _ => Language {
                boxes: true,
                diamonds: true,
            },
        }
    }

    /// Whether the formula lies in the logic's language.
    pub fn admits(&self, f: &Formula) -> bool {
        let lang = self.language();
        (lang.boxes || !f.has_box()) && (lang.diamonds || !f.has_dia())
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for LogicId {
    type Err = CalculusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("custom:") {
            let rest = rest.trim().trim_start_matches('{').trim_end_matches('}');
            let mut rules = RuleSet::new();
            for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                if tok.eq_ignore_ascii_case("G3i") {
                    rules.extend(RuleId::G3I);
                } else {
                    rules.insert(
                        RuleId::from_name(tok)
                            .ok_or_else(|| CalculusError::UnknownRule(tok.to_string()))?,
                    );
                }
            }
            return Ok(LogicId::Custom(rules));
        }
        LogicId::all_named()
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| CalculusError::UnknownLogic(s.to_string()))
    }
}

/// The rule set of a logic's cut-free calculus.
pub fn logic_rules(l: &LogicId) -> RuleSet {
    let mut rules: RuleSet = RuleId::G3I.into_iter().collect();
    match l {
        LogicId::BoxFamily { m, c, n } => {
            rules.insert(match (m, c) {
                (false, false) => Ebox,
                (true, false) => Mbox,
                (false, true) => EboxC,
                (true, true) => MboxC,
            });
            if *n {
                rules.insert(Nbox);
            }
        }
        LogicId::DiaFamily { m, n } => {
            rules.insert(if *m { Mdiam } else { Ediam });
            if *n {
                rules.insert(Ndiam);
            }
        }
        LogicId::Bimodal { base, c, n } => {
            let extra: &[RuleId] = match (base, c) {
                (Base::E1, false) => &[Ebox, Ediam, Int1a, Int1b],
                (Base::E2, false) => &[Ebox, Ediam, Int2a, Int2b],
                (Base::E3, false) => &[Ebox, Ediam, Int3],
                (Base::M1, false) => &[Mbox, Mdiam, Int3],
                (Base::E1, true) => &[EboxC, Ediam, Int1a, Int1bC],
                (Base::E2, true) => &[EboxC, Ediam, Int2aC, Int2bC],
                (Base::E3, true) => &[EboxC, Ediam, Int3C],
                (Base::M1, true) => &[MboxC, Mdiam, Int3C],
            };
            rules.extend(extra);
            match n {
                NExt::None => {}
                NExt::Nd => {
                    rules.insert(Ndiam);
                }
                NExt::Nb => {
                    rules.insert(Ndiam);
                    rules.insert(Nbox);
                }
            }
        }
        LogicId::CK => rules.extend([MboxC, Mdiam, Nbox, Wrule]),
        LogicId::HW => rules.extend([MboxC, Mdiam, Nbox, Wrule, Int3C, Ndiam]),
        LogicId::Custom(set) => return set.clone(),
    }
    rules
}

/// The axioms and rules of the logic's Hilbert presentation.
pub fn hilbert_axioms(l: &LogicId) -> Result<BTreeSet<SchemaId>, CalculusError> {
    use SchemaId as S;
    let mut out: BTreeSet<SchemaId> = SchemaId::IL.into_iter().collect();
    out.insert(S::MP);
    match l {
        LogicId::BoxFamily { m, c, n } => {
            out.insert(S::REbox);
            for (on, ax) in [(m, S::Mbox), (c, S::Cbox), (n, S::Nbox)] {
                if *on {
                    out.insert(ax);
                }
            }
        }
        LogicId::DiaFamily { m, n } => {
            out.insert(S::REdiam);
            for (on, ax) in [(m, S::Mdiam), (n, S::Ndiam)] {
                if *on {
                    out.insert(ax);
                }
            }
        }
        LogicId::Bimodal { base, c, n } => {
            out.extend([S::REbox, S::REdiam]);
            match base {
                Base::E1 => out.extend([S::Int1a, S::Int1b]),
                Base::E2 => out.extend([S::Int2a, S::Int2b]),
                Base::E3 => {
                    out.insert(S::Int3Rule);
                }
                Base::M1 => out.extend([S::Mbox, S::Mdiam, S::Int3Rule]),
            }
            if *c {
                out.insert(S::Cbox);
            }
            match n {
                NExt::None => {}
                NExt::Nd => {
                    out.insert(S::Ndiam);
                }
                NExt::Nb => {
                    out.insert(S::Nbox);
                }
            }
        }
        LogicId::CK => out.extend([S::Kbox, S::Kdiam, S::Nec]),
        LogicId::HW => out.extend([S::Kbox, S::Kdiam, S::Nec, S::Ndiam]),
        LogicId::Custom(_) => return Err(CalculusError::NoHilbertTwin(l.name())),
    }
    Ok(out)
}

/// One backward application of a rule.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RuleInstance {
    pub rule: RuleId,
    pub conclusion: Sequent,
    pub premises: Vec<Sequent>,
    pub principal: Vec<Formula>,
}

fn seq(ante: impl IntoIterator<Item = Formula>, succ: Option<Formula>) -> Sequent {
    Sequent::new(ante, succ)
}

fn without(s: &Sequent, f: &Formula) -> BTreeSet<Formula> {
    let mut a = s.antecedent.clone();
    a.remove(f);
    a
}

/// Nonempty subsets of `items`, in binary counting order.
pub fn nonempty_subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    assert!(items.len() < 32, "too many principal candidates");
    (1u32..(1 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Enumerates every instance of an active rule whose conclusion is `goal`.
///
/// Premise contexts follow the G3i convention: left rules drop their
/// principal formula except in the left premise of `Limp`; modal and
/// interaction premises carry no context.
pub fn rule_instances(rules: &RuleSet, goal: &Sequent) -> Vec<RuleInstance> {
    let mut out = Vec::new();
    let succ = goal.succedent.as_ref();
    let boxes: Vec<&Formula> = goal
        .antecedent
        .iter()
        .filter_map(|f| match f {
            Formula::Box(a) => Some(&**a),
            _ => None,
        })
        .collect();
    let dias: Vec<&Formula> = goal
        .antecedent
        .iter()
        .filter_map(|f| match f {
            Formula::Dia(a) => Some(&**a),
            _ => None,
        })
        .collect();
    let mut push = |rule: RuleId, premises: Vec<Sequent>, principal: Vec<Formula>| {
        if rules.contains(&rule) {
            out.push(RuleInstance {
                rule,
                conclusion: goal.clone(),
                premises,
                principal,
            });
        }
    };

    if let Some(p @ Formula::Atom(_)) = succ {
        if goal.antecedent.contains(p) {
            push(Init, vec![], vec![p.clone()]);
        }
    }
    if goal.antecedent.contains(&Formula::Bottom) {
        push(Lbot, vec![], vec![Formula::Bottom]);
    }
    for f in &goal.antecedent {
        match f {
            Formula::And(a, b) => {
                let mut ante = without(goal, f);
                ante.insert((**a).clone());
                ante.insert((**b).clone());
                push(Land, vec![seq(ante, succ.cloned())], vec![f.clone()]);
            }
            Formula::Or(a, b) => {
                let mut l = without(goal, f);
                l.insert((**a).clone());
                let mut r = without(goal, f);
                r.insert((**b).clone());
                push(
                    Lor,
                    vec![seq(l, succ.cloned()), seq(r, succ.cloned())],
                    vec![f.clone()],
                );
            }
            Formula::Imp(a, b) => {
                let left = seq(goal.antecedent.clone(), Some((**a).clone()));
                let mut r = without(goal, f);
                r.insert((**b).clone());
                push(Limp, vec![left, seq(r, succ.cloned())], vec![f.clone()]);
            }
            _ => {}
        }
    }
    match succ {
        Some(g @ Formula::And(a, b)) => push(
            Rand,
            vec![
                seq(goal.antecedent.clone(), Some((**a).clone())),
                seq(goal.antecedent.clone(), Some((**b).clone())),
            ],
            vec![g.clone()],
        ),
        Some(g @ Formula::Or(a, b)) => {
            for side in [a, b] {
                push(
                    Ror,
                    vec![seq(goal.antecedent.clone(), Some((**side).clone()))],
                    vec![g.clone()],
                );
            }
        }
        Some(g @ Formula::Imp(a, b)) => {
            let mut ante = goal.antecedent.clone();
            ante.insert((**a).clone());
            push(Rimp, vec![seq(ante, Some((**b).clone()))], vec![g.clone()]);
        }
        _ => {}
    }

    // Modal rules with a boxed succedent.
    if let Some(g @ Formula::Box(b)) = succ {
        let b = &**b;
        for a in &boxes {
            let pr = vec![Formula::boxed((*a).clone()), g.clone()];
            push(
                Ebox,
                vec![
                    seq([(*a).clone()], Some(b.clone())),
                    seq([b.clone()], Some((*a).clone())),
                ],
                pr.clone(),
            );
            push(Mbox, vec![seq([(*a).clone()], Some(b.clone()))], pr);
        }
        push(Nbox, vec![seq([], Some(b.clone()))], vec![g.clone()]);
        for set in nonempty_subsets(&boxes) {
            let mut pr: Vec<Formula> = set.iter().map(|a| Formula::boxed((*a).clone())).collect();
            pr.push(g.clone());
            let main = seq(set.iter().map(|a| (*a).clone()), Some(b.clone()));
            let mut ps = vec![main.clone()];
            ps.extend(set.iter().map(|a| seq([b.clone()], Some((*a).clone()))));
            push(EboxC, ps, pr.clone());
            push(MboxC, vec![main], pr);
        }
    }
    if let Some(g @ Formula::Dia(b)) = succ {
        let b = &**b;
        for a in &dias {
            let pr = vec![Formula::dia((*a).clone()), g.clone()];
            push(
                Ediam,
                vec![
                    seq([(*a).clone()], Some(b.clone())),
                    seq([b.clone()], Some((*a).clone())),
                ],
                pr.clone(),
            );
            push(Mdiam, vec![seq([(*a).clone()], Some(b.clone()))], pr);
        }
        for set in nonempty_subsets(&boxes) {
            for d in &dias {
                let mut pr: Vec<Formula> =
                    set.iter().map(|a| Formula::boxed((*a).clone())).collect();
                pr.push(Formula::dia((*d).clone()));
                pr.push(g.clone());
                let mut ante: Vec<Formula> = set.iter().map(|a| (*a).clone()).collect();
                ante.push((*d).clone());
                push(Wrule, vec![seq(ante, Some(b.clone()))], pr);
            }
        }
    }
    for a in &dias {
        push(Ndiam, vec![seq([(*a).clone()], None)], vec![Formula::dia((*a).clone())]);
    }

    // Interaction rules.
    for a in &boxes {
        for b in &dias {
            let (a, b) = ((*a).clone(), (*b).clone());
            let pr = vec![Formula::boxed(a.clone()), Formula::dia(b.clone())];
            push(
                Int1a,
                vec![seq([], Some(a.clone())), seq([b.clone()], None)],
                pr.clone(),
            );
            push(
                Int1b,
                vec![seq([a.clone()], None), seq([], Some(b.clone()))],
                pr.clone(),
            );
            let both = seq([a.clone(), b.clone()], None);
            push(
                Int2a,
                vec![both.clone(), seq([Formula::neg(a.clone())], Some(b.clone()))],
                pr.clone(),
            );
            push(
                Int2b,
                vec![both.clone(), seq([Formula::neg(b.clone())], Some(a.clone()))],
                pr.clone(),
            );
            push(Int3, vec![both], pr);
        }
    }
    for set in nonempty_subsets(&boxes) {
        for b in &dias {
            let b = (*b).clone();
            let mut pr: Vec<Formula> = set.iter().map(|a| Formula::boxed((*a).clone())).collect();
            pr.push(Formula::dia(b.clone()));
            let aset: Vec<Formula> = set.iter().map(|a| (*a).clone()).collect();
            let mut with_b = aset.clone();
            with_b.push(b.clone());
            let main = seq(with_b, None);
            push(
                Int1bC,
                vec![seq(aset.clone(), None), seq([], Some(b.clone()))],
                pr.clone(),
            );
            let mut ps = vec![main.clone()];
            ps.extend(
                aset.iter()
                    .map(|a| seq([Formula::neg(a.clone())], Some(b.clone()))),
            );
            push(Int2aC, ps, pr.clone());
            let mut ps = vec![main.clone()];
            ps.extend(
                aset.iter()
                    .map(|a| seq([Formula::neg(b.clone())], Some(a.clone()))),
            );
            push(Int2bC, ps, pr.clone());
            push(Int3C, vec![main], pr);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_sequent;

    fn rules(rs: &[RuleId]) -> RuleSet {
        rs.iter().copied().collect()
    }

    #[test]
    fn named_logics_round_trip() {
        let all = LogicId::all_named();
        assert_eq!(all.len(), 38);
        assert_eq!(LogicId::bimodal().len(), 24);
        for l in all {
            assert_eq!(l.name().parse::<LogicId>().unwrap(), l);
        }
        assert!("E4".parse::<LogicId>().is_err());
    }

    #[test]
    fn custom_names() {
        let l: LogicId = "custom:{G3i,Mbox,Int2a,Int2b}".parse().unwrap();
        assert_eq!(logic_rules(&l).len(), 11);
        assert_eq!(l.name(), "custom:G3i,Mbox,Int2a,Int2b");
        assert!(matches!(
            "custom:G3i,Foo".parse::<LogicId>(),
            Err(CalculusError::UnknownRule(_))
        ));
    }

    #[test]
    fn registry_examples() {
        let g3i: RuleSet = RuleId::G3I.into_iter().collect();
        let with = |extra: &[RuleId]| {
            let mut s = g3i.clone();
            s.extend(extra);
            s
        };
        let e3: LogicId = "E3".parse().unwrap();
        assert_eq!(logic_rules(&e3), with(&[Ebox, Ediam, Int3]));
        assert_eq!(logic_rules(&LogicId::CK), with(&[MboxC, Mdiam, Nbox, Wrule]));
        assert_eq!(
            logic_rules(&LogicId::HW),
            with(&[MboxC, Mdiam, Nbox, Wrule, Int3C, Ndiam])
        );
        let e1cnb: LogicId = "E1CNb".parse().unwrap();
        assert_eq!(
            logic_rules(&e1cnb),
            with(&[EboxC, Ediam, Int1a, Int1bC, Ndiam, Nbox])
        );
    }

    #[test]
    fn hilbert_examples() {
        use SchemaId as S;
        let il: BTreeSet<SchemaId> = SchemaId::IL.into_iter().chain([S::MP]).collect();
        let with = |extra: &[SchemaId]| {
            let mut s = il.clone();
            s.extend(extra);
            s
        };
        assert_eq!(
            hilbert_axioms(&"E2".parse().unwrap()).unwrap(),
            with(&[S::REbox, S::REdiam, S::Int2a, S::Int2b])
        );
        assert_eq!(
            hilbert_axioms(&LogicId::CK).unwrap(),
            with(&[S::Kbox, S::Kdiam, S::Nec])
        );
        assert_eq!(
            hilbert_axioms(&"box-EMCN".parse().unwrap()).unwrap(),
            with(&[S::REbox, S::Mbox, S::Cbox, S::Nbox])
        );
        assert!(hilbert_axioms(&"custom:G3i".parse().unwrap()).is_err());
    }

    #[test]
    fn int3_instance() {
        let goal = parse_sequent("[]p, <>q => r").unwrap();
        let inst = rule_instances(&rules(&[Int3]), &goal);
        assert_eq!(inst.len(), 1);
        assert_eq!(inst[0].premises, vec![parse_sequent("p, q =>").unwrap()]);
    }

    #[test]
    fn ndiam_instance() {
        let goal = parse_sequent("<>false =>").unwrap();
        let inst = rule_instances(&rules(&[Ndiam]), &goal);
        assert_eq!(inst.len(), 1);
        assert_eq!(inst[0].premises, vec![parse_sequent("false =>").unwrap()]);
    }

    #[test]
    fn mboxc_instances() {
        let goal = parse_sequent("[]p, []q => [](p & q)").unwrap();
        let inst = rule_instances(&rules(&[MboxC]), &goal);
        assert_eq!(inst.len(), 3);
        assert!(inst
            .iter()
            .any(|i| i.premises == vec![parse_sequent("p, q => p & q").unwrap()]));
    }

    #[test]
    fn g3i_conventions() {
        let goal = parse_sequent("p -> q, p => q").unwrap();
        let inst = rule_instances(&rules(&[Limp]), &goal);
        assert_eq!(inst.len(), 1);
        assert_eq!(
            inst[0].premises,
            vec![
                parse_sequent("p -> q, p => p").unwrap(),
                parse_sequent("q, p => q").unwrap()
            ]
        );
        let goal = parse_sequent("=> p | q").unwrap();
        assert_eq!(rule_instances(&rules(&[Ror]), &goal).len(), 2);
    }
}
