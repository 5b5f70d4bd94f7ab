//! Exact computation of the singular homology of one-dimensional arithmetic
//! schemes, by two independent routes: closed-form ray-class/relative-unit
//! descriptions and a zero-cycle generators-and-relations presentation. The
//! higher-level modules machine-check the exact sequences (Mayer-Vietoris,
//! Gysin) and the reciprocity isomorphisms at desk scale, all in exact
//! integer arithmetic.

pub mod abgrp;
pub mod cft;
pub mod classunit;
pub mod cycles;
pub mod error;
pub mod ffcurve;
pub mod finfield;
pub mod homology;
pub mod intfactor;
pub mod matrix;
pub mod numfield;
pub mod rayclass;
pub mod selftest;

pub use error::{Error, Result};
