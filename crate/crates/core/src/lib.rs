//! Exact arithmetic for crossed products `A ⋊σα G` over finite coefficient
//! rings and finite groups, plus the rational quantum torus over `Z`.
//!
//! The crate is organised bottom-up: [`ring`] and [`group`] supply the
//! coefficient rings and groups, [`system`] assembles and validates crossed
//! systems, [`product`] implements element arithmetic, and [`analysis`] and
//! [`ideal`] compute centers, commutants and ideals. [`catalog`] builds the
//! standard example systems.

pub mod analysis;
pub mod catalog;
pub mod error;
pub mod group;
pub mod ideal;
pub mod limits;
pub mod product;
pub mod ring;
pub mod system;

pub use error::{AlgebraError, Result};
pub use group::{GPayload, Group, GroupElem, GroupKind};
pub use product::CrossedElem;
pub use ring::{Payload, Ring, RingAutomorphism, RingElem, RingKind};
pub use system::{build_standard, AlphaSpec, Condition, CrossedSystem, SigmaKernel, SigmaSpec, StandardKind, ValidationReport};
