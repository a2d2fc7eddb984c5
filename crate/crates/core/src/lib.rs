//! Exact sheaf cohomology, Ext tables and mutation bookkeeping for homogeneous
//! bundles on Gr(2,4), LGr(4), P^3 and the five-dimensional total spaces
//! Tot(S(-1)) and Tot(N) that sit on either side of the flop, plus the cyclic
//! family Tot(O(-n)) over P^{n-1}.

pub mod bundles;
pub mod cohomology;
mod decimal;
pub mod error;
pub mod homalg;
pub mod mutation;
pub mod repro;
pub mod weyl;

pub use error::{Error, Result};
