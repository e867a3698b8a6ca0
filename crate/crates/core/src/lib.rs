//! Finite combinatorial models for the homotopy theory of small categories.
//!
//! Everything in this crate is pure computation on finite data: simplicial
//! sets in nondegenerate-cell presentation, finitely presented categories and
//! their saturations, exact integral homology through Smith normal form,
//! decision procedures for (Cisinski–)Dwyer inclusions, and the free-cell
//! filtrations of pushouts of monoids and categories. No IO happens here; the
//! `thomason-lab` crate carries file formats and the command line.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod category;
pub mod dwyer;
mod error;
pub mod filtration;
pub mod homology;
pub mod simplicial;

pub use error::{Error, Result};
