//! Exact construction of the finiteness system and prevariety membership
//! checks for the tabulated rays and cones.

pub mod poly;
pub mod system;
pub mod table;

pub use poly::{rat, Convention, LaurentPoly, MassPoly, Rational};
pub use system::{
    build_system, in_prevariety, in_prevariety_with, MassSpec, Membership, PolyKind, PolySystem,
    RationalExponent, SystemPoly, WeightVector, Witness, PREVARIETY_CONVENTION, VARIABLES,
};
pub use table::{check_weight, verify_table, verify_tables, RayTable, TableReport};
