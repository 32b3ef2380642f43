//! Automorphisms of standard forms: data, generators, isomorphisms and
//! group actions.

mod actions;
mod datum;
mod endo;
mod generators;
mod iso;
mod singular;

pub use actions::{ga_action, gm_action_exists, nonextendable_family, NonextendableReport};
pub use datum::{
    compose_data, datum_offsets, datum_to_endo, datum_validate, endo_residual, lemma_violation,
    AutDatum,
};
pub use endo::AffineEndo3;
pub use generators::{classify_generators, delta, CyclicWitness, GeneratorReport, RotationWitness};
pub use iso::{iso_decide, IsoWitness};
pub use singular::{
    obstruction_compare, obstruction_compare_with, singular_values, Obstruction, ObstructionReport,
};
