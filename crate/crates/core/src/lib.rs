//! Line arrangements with only triple points, built from the cuspidal cubic
//! over finite fields.
//!
//! The crate is `no_std` (it needs `alloc`) and purely algorithmic:
//!
//! - [`gf`]: arithmetic in GF(p^n) = `F_p[t]/(m(t))`.
//! - [`projplane`]: points and lines of P²(K), the cuspidal cubic
//!   `x³ = y²z` with its chord–tangent group law, and plane cubic fitting.
//! - [`arrange`]: the dual arrangements of cubic points and an exact audit of
//!   their singular points.
//! - [`triples`]: triple systems (rank-3 collinearity matroids), isomorphism
//!   and automorphism search.
//! - [`realize`]: realizability of a triple system over a small finite field
//!   and export of its realization ideal.
//!
//! File formats and the command-line front end live in the `cuspline` crate.
//!
//! ```
//! use cuspline_core::{arrange, gf::FieldCtx};
//!
//! let f9 = FieldCtx::new(3, 2, None).unwrap();
//! let l9 = arrange::build_char3(&f9).unwrap();
//! let spectrum = l9.audit().unwrap();
//! assert_eq!(spectrum.t(3), 12);
//! assert!(spectrum.only_triple_points());
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod linalg;

pub mod arrange;
pub mod gf;
pub mod projplane;
pub mod realize;
pub mod triples;

pub use error::{Error, Result};
