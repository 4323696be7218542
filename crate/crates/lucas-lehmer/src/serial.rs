//! Serialization helpers: big integers are written as decimal strings.

use rug::Integer;
use serde::Serializer;

/// Serialize an integer as its decimal string.
pub fn integer<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Serialize a slice of integers as decimal strings.
pub fn integers<S: Serializer>(v: &[Integer], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}
