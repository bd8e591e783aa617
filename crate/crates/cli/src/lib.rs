//! Verification campaigns and report assembly for the `antiramsey` binary.

pub mod harness;
