//! Authentication codes from combinatorial designs, robust (2,2)-threshold
//! schemes, and exact analysis of the attacks on both.

#![allow(clippy::result_large_err)]

pub mod authcode;
pub mod catalog;
pub mod designs;
pub mod distribution;
pub mod format;
pub mod oracle;
pub mod rational;
pub mod reproduce;
pub mod sample;
pub mod threshold;
pub mod transform;

pub use authcode::{AnalysisReport, AuthCode, CodeError};
pub use designs::{BaseBlocks, DesignError, EdfSpec, OrderedDesign};
pub use distribution::Distribution;
pub use rational::{rat, Rational};
pub use threshold::{Rule, ThresholdScheme};
