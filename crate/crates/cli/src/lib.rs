//! JSON formats, fixture library, report plumbing and selftest corpora for
//! the `simpl` command-line front end.

pub mod fixtures;
pub mod formats;
pub mod report;
pub mod selftest;
