//! File formats, corpus generation, DOT export and the command line for
//! [`proper_core`].

pub mod cli;
pub mod dot;
pub mod generate;
pub mod io;

pub use dot::{export_dot, DotOptions, Layout};
pub use generate::{gen_random, GenConfig, GenError};
pub use io::{load_model, model_to_json, parse_model, save_model, IoError};
