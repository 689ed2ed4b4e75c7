//! Document-driven front end for the `dbk` command.

pub mod json;
pub mod run;
pub mod schema;

pub use run::{build_space, run, Outcome};
pub use schema::{parse_document, Document, SchemaError};
