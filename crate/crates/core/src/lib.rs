//! Fundamental quandles, N-quandle quotients and their groups for links and
//! spatial graphs.
//!
//! The pipeline reads a diagram ([`diagram`]), derives Wirtinger-style
//! presentations ([`presentation`]), enumerates cosets of peripheral
//! subgroups in the quotient group ([`coset_enum`]) and assembles the finite
//! N-quandle as explicit operation tables ([`quandle_build`]). The
//! [`catalog`] module records which links and graphs are known to have
//! finite N-quandles.

pub mod catalog;
pub mod coset_enum;
pub mod diagram;
pub mod freeword;
pub mod presentation;
pub mod quandle_build;

pub use coset_enum::{CosetTable, EnumerateError, EnumerationLimit, Strategy};
pub use diagram::{Diagram, DiagramError, NLabeling};
pub use freeword::{Alphabet, FreeWord, Generator, Letter, QuandleTerm};
pub use presentation::{GroupPresentation, QuandlePresentation, QuandleRelation};
pub use quandle_build::{build_n_quandle, FiniteQuandle, NQuandleBuild, Provenance};
