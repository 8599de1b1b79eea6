use std::fmt::Display;

use serde::Serialize;

/// Outcome of comparing two independently computed sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl Verification {
    pub fn compare<T: PartialEq + Display>(lhs: &T, rhs: &T) -> Self {
        Verification {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds: lhs == rhs,
        }
    }
}
