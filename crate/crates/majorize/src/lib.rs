//! File formats, configuration, the acceptance battery and the command-line
//! front end for [`majorize_core`].

pub mod battery;
pub mod cli;
pub mod config;
pub mod fixtures;
pub mod formats;
