//! Character theory of a built reflection group.

pub mod invariants;
pub mod modular;
pub mod molien;
pub mod table;

pub use invariants::{
    char_invariants, chi_of_s, exterior_power, exterior_powers, fake_degree,
    multiplicity_identities, power_traces, reflection_character, verify_lemma1, CharInvariants,
    Lemma1Entry, Lemma1Outcome, MultiplicityCheck,
};
pub use table::{inner_product, CharacterTable, ClassFunction, TableReport};

use crate::group::ReflectionGroup;

/// Invariant degrees, as recovered from the Molien series during the build.
pub fn degrees(group: &ReflectionGroup) -> Vec<u64> {
    group.degrees().to_vec()
}
