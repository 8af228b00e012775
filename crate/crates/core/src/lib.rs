//! Exact Mukai-lattice arithmetic for Picard-rank-1 abelian and K3 surfaces,
//! with the lattice action of Fourier-Mukai transforms and the decision
//! procedures for when they induce isomorphisms of moduli spaces.
//!
//! ```
//! use fmlattice::{theorem_map, FmSetup, MukaiVector, SurfaceKind, TheoremCase};
//!
//! let setup = FmSetup::new(SurfaceKind::K3, 2, -1, 3).unwrap();
//! let verdict = theorem_map(&setup, &MukaiVector::new(1, 1, 3)).unwrap();
//! assert_eq!(verdict.case, TheoremCase::Fm);
//! assert_eq!(verdict.canonical_image(), Some(&MukaiVector::new(3, -1, 1)));
//! ```

pub mod abelian;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod general;
pub mod lattice;
pub mod matrix;
pub mod par;
pub mod sweep;
pub mod verify;

pub use abelian::{
    classify_section2, fm_abelian_h, g_transform_h, proof_bounds, CheckStatus, Hypothesis,
    ProofBounds, Section2Case, Section2Verdict,
};
pub use catalog::{
    enumerate_setups, example1_family, example2_k3, search_theorem_applicable, Example1, Example2,
    TraceStep,
};
pub use error::{Error, Result};
pub use general::{
    classify_appendix, lemma_deg_identity, reflection, theorem_map, DegIdentity, FmSetup,
    TheoremCase, TheoremVerdict,
};
pub use lattice::{Canonical, ChernData, MukaiVector, Surface, SurfaceKind};
pub use matrix::IntMatrix3;
pub use par::Exec;
