//! A misère combinatorial game engine.
//!
//! The crate builds finite partizan games as hash-consed DAG nodes, solves
//! their misère outcomes, enumerates universes (sets of games closed under
//! sum, conjugation and taking options) up to a bound, decides comparison
//! and invertibility modulo a universe as bounded semi-decisions with
//! explicit witnesses, carries exact closed forms for the closure of
//! a = {.|2}, verifies integer witness functions for Q_Z-style quotients,
//! and estimates misère quotient monoids with presentation matching.

pub mod closed_forms;
pub mod compare;
pub mod game;
pub mod notation;
pub mod outcome;
pub mod presentation;
pub mod qz;
pub mod quotient;
pub mod universe;

pub use game::{constants, n_copies, sum, Game};
pub use notation::{parse, render, render_pretty, ParseError};
pub use outcome::{misere_outcome, Outcome};
