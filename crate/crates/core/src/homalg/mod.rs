//! Ext tables, certificates for exceptional, tilting and spherical claims,
//! and the map-rank oracle.

mod certify;
mod ext;
mod oracle;
mod spherical;

pub use certify::{
    check_collection, check_exceptional, check_tilting, hom_dimension, Certificate, PairTable, Verdict, Witness,
};
pub use ext::{
    euler_pairing, ext_table, ext_zero_section, full_collection, kclass_coordinates, kclass_equal, DimRange,
    ExtContext, ExtStatus, ExtTable,
};
pub use oracle::{
    composition_rank, quadric_mult_rank, quadric_sections, syzygy_composition_rank, OracleMode, RankFact,
};
pub use spherical::{check_spherical_zero_section, E2Entry, SpectralTable};
