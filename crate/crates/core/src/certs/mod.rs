//! Certificates: the data model, its JSON form, an independent verifier, and
//! mutation operators for testing the verifier.

mod coverage;
mod json;
mod model;
mod mutate;
mod verify;

pub use coverage::coverage_check;
pub use json::{from_json, parse_certificate, serialize, to_json};
pub use model::*;
pub use mutate::{random_mutations, Mutation};
pub use verify::{verify, Rejection, Verdict};
