//! An exact-arithmetic workbench for Legendrian contact homology
//! differential graded algebras over group rings.
//!
//! The pieces, bottom-up:
//!
//! - [`field`] — GF(q) arithmetic for prime powers q.
//! - [`ring`] — the coefficient ring Λ[H₁]: group rings over ℤ or GF(q).
//! - [`algebra`] — the free noncommutative algebra on graded Reeb-chord
//!   generators.
//! - [`dga`] — differentials, verification, stabilization, elementary
//!   automorphisms.
//! - [`grading`] — Maslov numbers and Conley–Zehnder degrees from capping
//!   data.
//! - [`augment`] — augmentations, specialization at group-ring points, and
//!   augmentation-variety point counts.
//! - [`linearize`] — twisted linear parts, homology over GF(q), and the
//!   fingerprint/compare machinery for distinguishing DGAs.
//! - [`fixtures`] — built-in DGAs: surfaces with knotted handles, fiber
//!   links, the knot–sphere link, the standard sphere.
//! - [`format`] — the line-oriented `.dga` text format.

pub mod algebra;
pub mod augment;
pub mod dga;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod format;
pub mod grading;
pub mod linearize;
pub mod matrix;
pub mod ring;

pub use algebra::{ChordClass, FreeAlgebra, GenId, Generator, NcPoly, PolyDegree, Word};
pub use augment::{
    augvar_count, augvar_member, augvar_system, enumerate_augmentations, specialize, AugVarCount,
    Augmentation, LaurentSystem, RhoPoint, DEFAULT_BUDGET,
};
pub use dga::{Dga, ElementaryAuto, GenCheck, VerifyFailure, VerifyReport};
pub use error::{Error, Result};
pub use field::FiniteField;
pub use format::{parse_dga, render_dga, Diagnostic, ParseError};
pub use grading::{chord_degree, maslov_of_loop, CappingRecord};
pub use linearize::{
    compare, fingerprint, homology_betti, linear_part, pure_mixed_betti, twist, BettiRecord,
    BettiTable, ChainComplexF, CompareOptions, CompareVerdict, Fingerprint, QFingerprint,
};
pub use matrix::FMatrix;
pub use ring::{Coeff, GroupRingElem, RingSpec};
