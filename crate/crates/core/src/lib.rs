//! Exact evaluation of sl_N webs and MOY graphs by colorings.
//!
//! * [`laurent`]: Laurent polynomials with big-integer coefficients, quantum integers and binomials.
//! * [`partitions`]: degrees of ordered set partitions and the identities built on them.
//! * [`web`]: slice presentations of webs, the text format, and equivalence moves.
//! * [`coloring`]: enumeration of colorings and their degrees.
//! * [`eval`]: closed and open evaluations, a transfer-matrix engine, relation checks.
//! * [`reduction`]: the rank-lowering expansion over cycle collections.
//! * [`corpus`]: the shipped example diagrams.

pub mod coloring;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod laurent;
pub mod partitions;
pub mod reduction;
pub mod web;

pub use error::{Error, Result};
pub use eval::{evaluate_closed, evaluate_dp, Evaluation};
pub use laurent::{qbinom, qfact, qint, HalfLaurent, LaurentPoly};
pub use web::{parse, serialize, WebDiagram};
