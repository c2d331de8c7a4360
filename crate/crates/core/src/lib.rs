//! Classification of fractional powers of a Dehn twist about a nonseparating
//! curve through their combinatorial data sets.
//!
//! A side-preserving (SP) data set `((l, n), g0, (a, b); (k_i, n_i)...)` and a
//! side-exchanging (SE) data set `((l, 2n), g0, a; (k_i, n_i)...)` each encode
//! the rotation data of a cyclic action on a closed surface of genus `g`; the
//! fractional power they describe lives on the surface of genus `g + 1`.
//!
//! Modules:
//! - [`arith`]: divisors, units, inverses, cone-signature solver
//! - [`dataset`]: the record types, validation, genus, canonical forms
//! - [`enumerate`]: pruned and brute-force enumerators, exponent spectra
//! - [`relations`]: power/root decompositions and the explicit families
//! - [`laws`]: bound and parity predicates, audits over enumerations
//! - [`notation`]: parser for the `((l, n), g0, ...)` tuple notation

pub mod arith;
pub mod dataset;
pub mod enumerate;
pub mod error;
pub mod laws;
pub mod notation;
pub mod relations;

pub use dataset::{
    canonicalize_se, canonicalize_sp, genus_se, genus_sp, is_essential_se, is_essential_sp, validate_se, validate_sp,
    Condition, ConePair, DataSet, Exponent, Kind, SeDataSet, SpDataSet, ValidationReport,
};
pub use enumerate::{enumerate_oracle, enumerate_se, enumerate_sp, spectra, Exec, Filters, KindFilter, SpectraRow};
pub use error::{ArithError, DataSetError, EnumerateError, RelationError};
