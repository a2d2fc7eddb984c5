//! Borel-Bott-Weil cohomology on the compact spaces, restriction to LGr and
//! graded cohomology on the total spaces.

mod bbw;
mod family;
mod restrict;
mod total;

pub use bbw::{bbw_cohomology, euler_characteristic, CohomologyEntry, CohomologyTable};
pub use family::{
    affine_family_cohomology, direct_term, AffineWeightFamily, ExceptionalTerm, FamilyCohomology, StablePattern,
};
pub use restrict::{lgr_counterpart, restrict_lgr, RestrictionStatus, RestrictionVerdict};
pub use total::{
    punctured_pushforward, rep_dim, total_space_cohomology, Dim, GradedCohomology, PuncturedPushforward, SummandFamily,
};
