//! Properization of multi-agent relational structures.
//!
//! A relational structure (Kripke model) is *proper* when no two distinct
//! states are related by every agent's accessibility relation at once. This
//! crate turns any finite structure into a bisimilar proper one over the
//! carrier `X × X`, and does the same lazily for countably infinite
//! structures presented through an enumeration by the integers.
//!
//! Alongside the construction it provides what is needed to check it: a model
//! checker for the basic multi-agent epistemic language, a properness checker,
//! frame-property checkers and closures, a bounded-morphism verifier and a
//! partition-refinement bisimulation engine.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bisim;
pub mod formula;
pub mod lazy;
pub mod model;
pub mod morphism;
pub mod properize;
pub mod props;
pub mod semantics;

pub use bisim::{bisimilar, bounded_bisimilar, coarsest_bisimulation, Partition};
pub use formula::{Formula, ParseError};
pub use lazy::{
    explore, periodic_extension, properize_countable, Enumerated, LazyModel, PeriodicExtension, PeriodicState,
    ProperizedCountable, Window,
};
pub use model::{validate, Diagnostic, ModelError, RawModel, RelationalStructure, StateMap};
pub use morphism::{check_bounded_morphism, projection_map, MorphismReport, MorphismViolation};
pub use properize::{partition_blocks, properize_finite, ProductState, ProperizeError, ProperizedModel};
pub use props::{check_property, close_under, improper_witness, is_proper, FrameProperty, Violation};
pub use semantics::{extension, satisfies, SemanticsError};
