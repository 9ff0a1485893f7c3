//! Command implementations behind the `slocc` binary.

pub mod classify;
pub mod orbit;
pub mod records;
pub mod verify;
