//! File formats, scenario reports and the scenarios behind the
//! `thomason-lab` command line.

pub mod corpus;
pub mod formats;
pub mod report;
pub mod scenarios;
