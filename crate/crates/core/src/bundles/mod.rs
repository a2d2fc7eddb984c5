//! Registered spaces and the calculus of homogeneous bundle classes.

mod class;
pub mod levi;
mod object;
mod parse;
mod space;

pub use class::{binomial, irreducible_name, BundleClass, IrredClass, KClass};
pub use object::{omega_p4, sigma, Construction, ExtensionObject, Object};
pub use parse::{parse_bundle_expr, parse_on, same_expr, same_object, Expr};
pub use space::Space;
