//! Maslov numbers and Conley–Zehnder gradings from front-projection
//! capping data.
//!
//! A capping path for a Reeb chord runs along the front from the chord's
//! upper endpoint to its lower endpoint; all that the grading needs from it
//! is the number of cusps traversed downward and upward and the Morse index
//! of the chord's critical point.

use crate::error::{Error, Result};

/// Counted cusps of a capping path together with the Morse index (0, 1, or
/// 2) of the generating critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CappingRecord {
    pub down_cusps: u32,
    pub up_cusps: u32,
    pub morse_index: u8,
}

impl CappingRecord {
    pub fn new(down_cusps: u32, up_cusps: u32, morse_index: u8) -> Result<Self> {
        if morse_index > 2 {
            return Err(Error::InvalidGrading(format!(
                "Morse index {} out of range 0..=2",
                morse_index
            )));
        }
        Ok(CappingRecord {
            down_cusps,
            up_cusps,
            morse_index,
        })
    }
}

/// Maslov number of a front loop: downward cusps minus upward cusps.
pub fn maslov_of_loop(down_cusps: u32, up_cusps: u32) -> i64 {
    i64::from(down_cusps) - i64::from(up_cusps)
}

/// Conley–Zehnder degree of a chord from its capping record:
/// D − U + morse_index − 1.
pub fn chord_degree(rec: &CappingRecord) -> i64 {
    maslov_of_loop(rec.down_cusps, rec.up_cusps) + i64::from(rec.morse_index) - 1
}
