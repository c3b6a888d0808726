//! Finite, dimension-truncated computations with simplicial sets over a small
//! index category: nerves, Grothendieck constructions (classical and relative),
//! marked simplicial sets and localization, bar-construction homotopy colimits,
//! integral homology, and certificate-producing checks for the comparison maps
//! between them.
//!
//! Every object is degreewise finite and stored with dense integer ids per
//! degree. Constructions that are degreewise (limits, colimits, nerves,
//! relative nerves) are exact up to the truncation cap. Mapping spaces are
//! exact only under an explicit validity bound, which is enforced.

pub mod certcheck;
pub mod diagram;
pub mod error;
pub mod fincat;
pub mod fixtures;
pub mod groth_classic;
pub mod hocolim;
pub mod homology;
pub mod marked;
pub mod relnerve;
pub mod sset;
mod unionfind;

pub use certcheck::{Certificate, Verdict};
pub use diagram::{CatDiagram, MarkedDiagram, SSetDiagram};
pub use error::{Error, Result};
pub use fincat::{CatFunctor, FinCategory};
pub use marked::MarkedSSet;
pub use sset::{SimplicialMap, TruncSSet};
