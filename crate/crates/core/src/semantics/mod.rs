//! Finite coupled intuitionistic neighbourhood models.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::calculus::{Base, LogicId, NExt};

mod closure;
mod countermodel;
mod model;
mod random;

pub use closure::saturate;
pub use countermodel::{countermodel_search, preorders_up_to_iso, upsets};
pub use model::{full_set, members, Family, NbModel, WorldSet, FALLIBLE_LABEL, MAX_WORLDS};
pub(crate) use model::{
    close_preorder, common_json, family_json, parse_common, parse_families,
};
pub use random::{random_formula, random_model, random_preorder, DEFAULT_ATOMS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("models are limited to {MAX_WORLDS} worlds, got {0}")]
    TooManyWorlds(usize),
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("model violates its invariants: {0}")]
    Invariant(String),
    #[error("world label {0:?} is reserved")]
    ReservedLabel(String),
    #[error("no frame conditions are known for {0}")]
    NoFrameConditions(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FrameCondition {
    SuppBox,
    SuppDia,
    CapBox,
    UnitBox,
    UnitDia,
    WInt1,
    WInt2a,
    WInt2b,
    WInt3,
    CKInt,
    CKIntBis,
}

impl FrameCondition {
    pub const ALL: [FrameCondition; 11] = [
        FrameCondition::SuppBox,
        FrameCondition::SuppDia,
        FrameCondition::CapBox,
        FrameCondition::UnitBox,
        FrameCondition::UnitDia,
        FrameCondition::WInt1,
        FrameCondition::WInt2a,
        FrameCondition::WInt2b,
        FrameCondition::WInt3,
        FrameCondition::CKInt,
        FrameCondition::CKIntBis,
    ];
}

impl fmt::Display for FrameCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for FrameCondition {
    type Err = SemanticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FrameCondition::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| SemanticsError::Malformed(format!("unknown frame condition {s:?}")))
    }
}

pub type Conditions = BTreeSet<FrameCondition>;

/// A concrete failure of a frame condition at a world.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub condition: FrameCondition,
    pub world: usize,
    pub alpha: Option<WorldSet>,
    pub beta: Option<WorldSet>,
}

impl Violation {
    pub fn describe(&self, m: &NbModel) -> String {
        let mut s = format!("{} fails at {}", self.condition, m.labels[self.world]);
        if let Some(a) = self.alpha {
            s.push_str(&format!(" with alpha={}", m.format_set(a)));
        }
        if let Some(b) = self.beta {
            s.push_str(&format!(" beta={}", m.format_set(b)));
        }
        s
    }
}

fn witness(c: FrameCondition, m: &NbModel, w: usize) -> Option<(Option<WorldSet>, Option<WorldSet>)> {
    use FrameCondition::*;
    let n = m.size();
    let full = m.full();
    let nb = &m.nbox[w];
    let nd = &m.ndiam[w];
    match c {
        SuppBox | SuppDia => {
            let fam = if c == SuppBox { nb } else { nd };
            for a in fam.iter() {
                for x in 0..n {
                    let b = a | (1 << x);
                    if !fam.contains(b) {
                        return Some((Some(a), Some(b)));
                    }
                }
            }
            None
        }
        CapBox => {
            for a in nb.iter() {
                for b in nb.iter() {
                    if !nb.contains(a & b) {
                        return Some((Some(a), Some(b)));
                    }
                }
            }
            None
        }
        UnitBox => (!nb.contains(full)).then_some((Some(full), None)),
        UnitDia => (!nd.contains(full)).then_some((Some(full), None)),
        WInt1 => nb.iter().find(|&a| !nd.contains(a)).map(|a| (Some(a), None)),
        WInt2a => nb
            .iter()
            .find(|&a| !nd.contains(full & !m.upset_complement(a)))
            .map(|a| (Some(a), None)),
        WInt2b => (0..=full)
            .find(|&a| nb.contains(m.upset_complement(a)) && !nd.contains(full & !a))
            .map(|a| (Some(a), None)),
        WInt3 => {
            for a in nb.iter() {
                for b in 0..=full {
                    if a & !b == 0 && !nd.contains(b) {
                        return Some((Some(a), Some(b)));
                    }
                }
            }
            None
        }
        CKInt => {
            for a in nb.iter() {
                for b in nd.iter() {
                    if !nd.contains(a & b) {
                        return Some((Some(a), Some(b)));
                    }
                }
            }
            None
        }
        CKIntBis => {
            let meet = nb.meet(full);
            nd.iter()
                .find(|&a| !nd.iter().any(|b| b & !a == 0 && b & !meet == 0))
                .map(|a| (Some(a), None))
        }
    }
}

/// Every world-level violation of the given conditions.
pub fn check_frame(m: &NbModel, cs: &Conditions) -> Vec<Violation> {
    let mut out = Vec::new();
    for &c in cs {
        for w in 0..m.size() {
            if let Some((alpha, beta)) = witness(c, m, w) {
                out.push(Violation {
                    condition: c,
                    world: w,
                    alpha,
                    beta,
                });
            }
        }
    }
    out
}

pub fn satisfies(m: &NbModel, cs: &Conditions) -> bool {
    cs.iter()
        .all(|&c| (0..m.size()).all(|w| witness(c, m, w).is_none()))
}

/// The frame conditions characterising a named logic.
pub fn logic_frame_conditions(l: &LogicId) -> Result<Conditions, SemanticsError> {
    use FrameCondition::*;
    let mut cs = Conditions::new();
    match l {
        LogicId::BoxFamily { m, c, n } => {
            if *m {
                cs.insert(SuppBox);
            }
            if *c {
                cs.insert(CapBox);
            }
            if *n {
                cs.insert(UnitBox);
            }
        }
        LogicId::DiaFamily { m, n } => {
            if *m {
                cs.insert(SuppDia);
            }
            if *n {
                cs.insert(UnitDia);
            }
        }
        LogicId::Bimodal { base, c, n } => {
            match base {
                Base::E1 => {
                    cs.insert(WInt1);
                }
                Base::E2 => {
                    cs.insert(WInt2a);
                    cs.insert(WInt2b);
                }
                Base::E3 => {
                    cs.insert(WInt3);
                }
                Base::M1 => {
                    cs.extend([SuppBox, SuppDia, WInt1]);
                }
            }
            if *c {
                cs.insert(CapBox);
            }
            match n {
                NExt::None => {}
                NExt::Nd => {
                    cs.insert(UnitDia);
                }
                NExt::Nb => {
                    cs.extend([UnitBox, UnitDia]);
                }
            }
        }
        LogicId::CK => cs.extend([SuppBox, CapBox, UnitBox, SuppDia, CKInt]),
        LogicId::HW => cs.extend([SuppBox, CapBox, UnitBox, SuppDia, CKInt, WInt1]),
        LogicId::Custom(_) => return Err(SemanticsError::NoFrameConditions(l.name())),
    }
    Ok(cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use FrameCondition::*;

    fn conds(cs: &[FrameCondition]) -> Conditions {
        cs.iter().copied().collect()
    }

    #[test]
    fn registry_examples() {
        let get = |s: &str| logic_frame_conditions(&s.parse().unwrap()).unwrap();
        assert_eq!(get("E3"), conds(&[WInt3]));
        assert_eq!(
            get("M1Nb"),
            conds(&[SuppBox, SuppDia, UnitBox, UnitDia, WInt1])
        );
        assert_eq!(get("CK"), conds(&[SuppBox, CapBox, UnitBox, SuppDia, CKInt]));
        assert_eq!(
            get("HW"),
            conds(&[SuppBox, CapBox, UnitBox, SuppDia, CKInt, WInt1])
        );
        assert_eq!(get("box-EMC"), conds(&[SuppBox, CapBox]));
        assert_eq!(get("E2CNd"), conds(&[WInt2a, WInt2b, CapBox, UnitDia]));
        assert!(logic_frame_conditions(&"custom:G3i".parse().unwrap()).is_err());
    }

    #[test]
    fn check_frame_examples() {
        let mut m = NbModel::discrete(1);
        m.nbox[0].insert(1);
        assert!(check_frame(&m, &conds(&[SuppBox])).is_empty());
        let v = check_frame(&m, &conds(&[WInt3]));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].beta, Some(1));
        m.ndiam[0].insert(1);
        assert!(check_frame(&m, &conds(&[WInt1, WInt3])).is_empty());
    }

    #[test]
    fn supp_witness_on_two_worlds() {
        let mut m = NbModel::discrete(2);
        m.nbox[0].insert(0b01);
        let v = check_frame(&m, &conds(&[SuppBox]));
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].alpha, v[0].beta), (Some(0b01), Some(0b11)));
    }

    #[test]
    fn condition_names_parse() {
        for c in FrameCondition::ALL {
            assert_eq!(c.to_string().parse::<FrameCondition>().unwrap(), c);
        }
        assert!("wint9".parse::<FrameCondition>().is_err());
    }
}
