//! Enumeration of Chebyshev-Frolov lattice points in axis-parallel boxes.
//!
//! For `d = 2^n` the Chebyshev-Frolov lattice, with its coordinates permuted,
//! is generated by a block-recursive matrix
//!
//! ```text
//! A_0 = 1,    A_{n+1} = [ A_n   D_n A_n ]
//!                       [ A_n  -D_n A_n ]
//! ```
//!
//! where `D_n` is a positive diagonal matrix of permuted Chebyshev roots. The
//! recursion turns the box constraint `b <= A_n k <= c` into `d` nested
//! one-dimensional interval constraints, which is what [`stream`] walks.
//!
//! The crate is `no_std` + `alloc`. All transcendental functions go through
//! `libm`, so counts are reproducible across platforms whether or not the
//! `std` feature is enabled.
//!
//! ```
//! use frolov_core::{CubatureSpec, DiagLadder, Level};
//!
//! let level = Level::new(2).unwrap();
//! let ladder = DiagLadder::new(level);
//! let spec = CubatureSpec::new(level, 1024.0).unwrap();
//! let count = frolov_core::count_points(&ladder, &spec.standard_box()).unwrap();
//! assert_eq!(count, 1025);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
mod fmath;

pub mod cubature;
pub mod ladder;
pub mod level;
pub mod matrix;
pub mod recursive;
pub mod region;
pub mod roots;
pub mod shift;
pub mod split;
pub mod stream;
pub mod verify;

pub use cubature::{CubatureSpec, Estimate, Summation};
pub use error::Error;
pub use ladder::DiagLadder;
pub use level::Level;
pub use matrix::Matrix;
pub use recursive::enumerate_recursive;
pub use region::{AxisBox, LatticePoint, PointView};
pub use shift::{sample_shift, RandomShift};
pub use stream::{count_points, enumerate_stream, StreamError, StreamOptions};
