//! Exact computational engine for finite Weyl groups and reductive groups.
//!
//! The crate is organised around a handful of interlocking layers:
//!
//! * [`exactlin`] — arbitrary-precision integer/rational linear algebra
//!   (Smith and Hermite normal forms, integral kernels, characteristic
//!   polynomials) and cyclotomic factorization of order polynomials.
//! * [`rootsys`] — Cartan matrices, root data of the familiar isogeny
//!   types, and root-system enumeration by reflection closure.
//! * [`coxeter`] — Weyl groups realized as permutation groups on their
//!   roots: words, descents, conjugacy classes, reflection subgroups,
//!   normalizers and double cosets.
//! * [`cosets`] — twisted rational structures `Wφ`: F-conjugacy classes,
//!   elliptic detection, twistings of Levi subgroups, torus order
//!   polynomials and the eigenvalues of φ on basic invariants.
//! * [`garside`] — the braid monoid of a finite Coxeter group as a
//!   Garside monoid: left-weighted normal forms, fractions, summit
//!   conjugacy graphs and (twisted) centralizer generators.
//! * [`semisimple`] — finite-order points of a maximal torus as vectors
//!   over ℚ/ℤ: centres, torsion subgroups, centralizers, quasi-isolated
//!   classes and extended-diagram centralizer types.
//!
//! All arithmetic is exact; no floating point is used anywhere.
//! Expensive scans are data-parallel when the `parallel` feature
//! (enabled by default) is active, with a sequential fallback otherwise.
//! Parallel code paths return the same canonical results as the
//! sequential ones.

pub mod budget;
pub mod cosets;
pub mod coxeter;
pub mod error;
pub mod exactlin;
pub mod garside;
pub(crate) mod par;
pub mod perm;
pub mod rootsys;
pub mod semisimple;

pub use budget::Budget;
pub use error::{Error, Result};
