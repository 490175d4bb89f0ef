//! Command layer, report serialization, and the theorem verification suite
//! sitting on top of `bjorth-core`.

pub mod commands;
pub mod corpus;
pub mod oracle;
pub mod report;
pub mod verify;
