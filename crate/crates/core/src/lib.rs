//! Exact-arithmetic verification toolkit for Prym varieties of the superelliptic
//! curves `y^p = x·u(x²)`.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`intpoly`]: integer polynomials, resultants, discriminants, reduction mod `q`
//!   and distinct-degree factorization, trinomial closed forms.
//! * [`signedperm`]: signed permutations `(ε, s)` acting on `{0, ±β_1, …, ±β_m}`,
//!   the groups `E_m`, `E_m^0`, `W(D_m)`, `2^m·G`, orbits and cycle-type censuses.
//! * [`fpmodule`]: `F_p`-valued function spaces on root sets, action matrices and
//!   commutant dimensions.
//! * [`prymcalc`]: genus, Prym dimension and eigenvalue multiplicity tables.
//! * [`galoiscert`]: the certificate engine: rule applications with replayable
//!   leaves plus Chebotarev sampling.

mod bigint_serde;
pub mod error;
pub mod fpmodule;
pub mod galoiscert;
pub mod intpoly;
pub mod primes;
pub mod prymcalc;
pub mod signedperm;

pub use error::{Error, Result};
pub use intpoly::IntPoly;
pub use prymcalc::FamilyParams;
pub use signedperm::{CycleType, GroupDescriptor, SignedPerm};
