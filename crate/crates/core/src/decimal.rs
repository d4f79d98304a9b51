//! Serde helpers: big counts and dfns serialize as plain strings.

use std::fmt::Display;

use serde::Serializer;

pub(crate) fn serialize<S: Serializer>(v: &num_bigint::BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn serialize_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
