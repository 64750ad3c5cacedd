//! Finite-index equivalences on finite words and the two conditions that
//! make one recognize an ω-language: compatibility with concatenation
//! (condition (1), decided exactly) and with infinite products (condition
//! (2), searched within bounds). Also bounded Arnold and right congruences
//! of oracle languages.

mod arnold;
mod classifier;
mod condition1;
mod condition2;

pub use arnold::{
    arnold_classes_bounded, arnold_contexts, arnold_distinguish, arnold_equiv_bounded, right_congruence_bounded,
    right_distinguish, ArnoldContext, ArnoldPartition,
};
pub use classifier::{ClassId, Classifier};
pub use condition1::{
    check_condition1, check_with_monoid, lemma_repair, lemma_repair_with_budget, Condition1Violation, MachineMonoid,
    Repair, Side, DEFAULT_MONOID_BUDGET,
};
pub use condition2::{check_condition2_bounded, Condition2Bounds, Condition2Witness, WordSequence};
