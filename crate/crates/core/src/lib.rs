//! Pseudorandom generators built from random walks on the n-cube with a
//! balanced Hamiltonian cycle removed.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`graycode`] builds balanced cyclic Gray codes inductively
//!    (Construction B on transition sequences).
//! 2. [`cubefunc`] turns a Gray code into a Boolean map by removing the
//!    corresponding directed Hamiltonian cycle from the n-cube.
//! 3. [`markov`] derives the Markov matrix of the map's iteration graph,
//!    checks double stochasticity exactly and measures mixing time.
//! 4. [`prng`] walks the iteration graph `b` steps per output block.
//!
//! [`stats`] is a small statistical battery for the generated streams and
//! [`oracle`] holds brute-force checks for small cubes.

pub mod cubefunc;
pub mod error;
pub mod graycode;
pub mod markov;
pub mod oracle;
pub mod prng;
pub mod stats;

pub use error::{Error, Result};

/// Largest cube dimension handled anywhere in the crate.
pub const MAX_BITS: u32 = 16;

/// Parses a comma-separated list of decimal integers. Whitespace around
/// items is ignored; an empty input yields an empty list.
pub(crate) fn parse_decimal_list(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(pos, item)| {
            let item = item.trim();
            item.parse::<u64>()
                .map_err(|_| Error::Parse { reason: format!("item {} ({:?}) is not a decimal integer", pos + 1, item) })
        })
        .collect()
}

pub(crate) fn join_decimal<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for (k, item) in items.into_iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&item.to_string());
    }
    out
}
