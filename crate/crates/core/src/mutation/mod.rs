//! Mutations of exceptional collections, resolutions by a collection, and
//! exchange sequences between tilting bundles.

mod collection;
mod cyclic;
mod iw;
mod resolution;

pub use collection::{
    candidate_irreducibles, mutate_left, mutate_right, Collection, Direction, KIdentity, MutationStep, ShortExact,
};
pub use cyclic::{cyclic_composite, cyclic_tilt, cyclic_twist_orbit, LinePower, TwistImage};
pub use iw::{
    cyclic_definition, frozen_definition, iw_exchange, named_chain, realize, verify_iw_chain, ApproximationCertificate,
    ChainSpec, Clause, ClauseStatus, ExchangeSequence, FrozenDefinition, FrozenSet, IwChainReport, IwStepReport,
    LabeledObject, ModuleLabel, Setting, StepStatus, TiltingCache,
};
pub use resolution::{derive_resolution, ResolutionChain, ResolutionStep, Side, Term};
