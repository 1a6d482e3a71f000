//! Exact root-datum toolkit for quasi-constant (co)characters.
//!
//! The crate builds root data of reductive groups in Bourbaki coordinates
//! with exact rational arithmetic, and on top of that decides minuscule,
//! cominuscule, quasi-constant and orbitally `p`-close (co)characters,
//! classifies quasi-constant characters, implements the duality between
//! quasi-constant cocharacter and character rays, and computes the explicit
//! prime bounds for uniform principal purity.

pub mod error;
pub mod rational;
pub mod rootdata;
pub mod predicates;
pub mod weyl;
pub mod classify;
pub mod duality;
pub mod hasse;

pub use error::{Error, Result};
pub use rational::{QVector, Rat};
pub use rootdata::{
    CartanType, FactorSpec, Lattice, LatticeChoice, LatticeVector, Levi, RootDatum,
    RootSystemSpec, Side, VertexData,
};
pub use weyl::{GaloisAction, OrbitPartition};
pub use predicates::{OrbitContext, PredicateWitness, Verdict};
pub use classify::{BoxSearchReport, Classification, Classifier, FactorKind, Oracle};
pub use duality::{DualityReport, Ray};
pub use hasse::{BoundReport, HasseCertificate, TableRow};
