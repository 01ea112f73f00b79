//! Symbolic generator analysis for bounded derived categories of smooth
//! projective curves.
//!
//! Objects are modelled as formal graded sums of semistable pieces. On
//! top of that model the crate decides generator status from the
//! semistability criterion, runs a cited rule tree for the classical
//! generator question, checks semiorthogonality feasibility through the
//! Euler pairing, and tabulates generating-time upper bounds. An exact
//! genus-zero engine doubles as an independent oracle for the numerics.

pub mod dsl;
pub mod engine;
pub mod formal;
pub mod fuzz;
pub mod gentime;
pub mod numerics;
pub mod p1;
pub mod report;
pub mod selftest;
