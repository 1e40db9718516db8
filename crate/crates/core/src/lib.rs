pub mod arith;
pub mod catalog;
pub mod cocycle;
pub mod error;
pub mod pcgroup;
pub mod schur;

pub use error::{Error, Result};

pub(crate) fn serialize_biguint<S: serde::Serializer>(x: &num_bigint::BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
