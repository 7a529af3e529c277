//! Command-line front end for `hkit-core`: JSON wire formats, reports and
//! SVG pictures of planar arrangements.

pub mod cli;
pub mod json;
pub mod report;
pub mod svg;
