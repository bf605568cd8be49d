//! Group testing under a budget on positive responses.
//!
//! The library models pooled testing of `n` items of which at most `d` are
//! defective. A test asks whether a pool contains any defective; the answer
//! costs one test always and one unit of "yes budget" when positive. The
//! modules cover adaptive and staged strategies, non-adaptive designs and
//! their verification, deterministic constructions from linear codes,
//! randomized design sampling, closed-form bounds, and a conformance sweep
//! harness. The `gt` binary exposes all of it on the command line.
//!
//! Items and pools are 0-indexed inside the library; every external surface
//! (file formats aside, which are positional) reports 1-indexed identifiers.

#![forbid(unsafe_code)]

pub mod adaptive;
pub mod bits;
pub mod bounds;
pub mod combin;
pub mod config;
pub mod designs;
pub mod error;
pub mod gfcodes;
pub mod harness;
pub mod model;
pub mod pipeline;
pub mod verify;

pub use error::{Error, Result};
