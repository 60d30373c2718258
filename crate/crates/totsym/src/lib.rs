//! Computation with totally symmetric sets in finite permutation groups.
//!
//! A *totally symmetric set* is a subset of a group in which every
//! permutation of the subset is realized by conjugation in the group. This
//! crate provides exact machinery for finding, verifying, and classifying
//! them at desk scale:
//!
//! - [`perm`] — permutations of `{1..n}` with cycle-notation I/O,
//! - [`group`] — finite permutation groups with exact composition tables,
//!   conjugacy classes, setwise stabilizers, orbits, and symmetric-group
//!   recognition,
//! - [`catalog`] — built-in named groups (cyclic, dihedral, symmetric,
//!   alternating, quaternion, direct products),
//! - [`tss`] — total-symmetry verification with re-checkable witness
//!   certificates, general group actions, and the collision-implies-collapse
//!   harness,
//! - [`search`] — exhaustive pruned enumeration of totally symmetric sets up
//!   to conjugacy,
//! - [`theorems`] — executable checks for the `(k+1)!` order bound, the
//!   classification of maximal totally symmetric sets in `S_n`, and Hölder's
//!   classification of homomorphisms `S_n → S_m` (including the outer
//!   automorphism of `S_6`),
//! - [`report`] — deterministic structured documents for all of the above.
//!
//! The composition convention is right-to-left everywhere: `compose(p, q)`
//! applies `q` first. Elements of a group are indexed in lexicographic
//! image-table order, so every enumeration is deterministic and id 0 is the
//! identity.

pub mod catalog;
pub mod group;
pub mod perm;
pub mod report;
pub mod search;
pub mod theorems;
pub mod tss;

pub use group::{ConjugacyClass, FiniteGroup, SubsetOrbitRecord};
pub use perm::{CycleType, Permutation};
pub use tss::{CandidateSet, FiniteAction, TssCertificate};
