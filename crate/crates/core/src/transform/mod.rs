//! Model constructions: filtrations and their closures, and the translations
//! between neighbourhood, Kojima and relational models of CK and HW.

use thiserror::Error;

use crate::formula::Formula;
use crate::semantics::{check_frame, Conditions, NbModel, SemanticsError};

mod filtration;
mod kojima;
mod relational;

pub use filtration::{
    check_filtration, default_phi, finest_filtration, intersection_closure, quasi_filtering,
    supplementation, Filtration,
};
pub use kojima::{kojima_to_nb, nb_to_kojima, random_kojima, KojimaModel};
pub use relational::{
    nb_to_rel_ck, nb_to_rel_hw, pairs_of, random_rel, rel_to_nb_ck, rel_to_nb_hw, RelEvaluator,
    RelModel,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("the formula set is not closed under subformulas: {0} is missing")]
    NotSubformulaClosed(Formula),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("HW relational models have no fallible worlds")]
    FallibleInHw,
    #[error("the model has no consistent worlds")]
    NoConsistentWorlds,
    #[error("result would have {0} worlds, more than neighbourhood models support")]
    TooManyWorlds(usize),
    #[error("construction produced an invalid model: {0}")]
    Invariant(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Fails unless `m` satisfies the base invariants and `cs`.
pub(crate) fn ensure_frame(m: &NbModel, cs: &Conditions) -> Result<(), TransformError> {
    let mut errs = m.base_violations();
    errs.extend(check_frame(m, cs).iter().map(|v| v.describe(m)));
    if errs.is_empty() {
        Ok(())
    } else {
        Err(TransformError::Invariant(errs.join("; ")))
    }
}
