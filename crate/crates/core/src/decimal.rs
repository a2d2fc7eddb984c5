//! Serializers writing integers of any size as decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serializer;

pub fn int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn opt<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

pub fn map<S: Serializer>(m: &BTreeMap<usize, BigInt>, s: S) -> Result<S::Ok, S::Error> {
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        out.serialize_entry(k, &v.to_string())?;
    }
    out.end()
}

pub fn opt_map<S: Serializer>(m: &Option<BTreeMap<usize, BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    match m {
        Some(m) => map(m, s),
        None => s.serialize_none(),
    }
}

pub fn pairs<S: Serializer>(v: &[(u64, BigInt)], s: S) -> Result<S::Ok, S::Error> {
    let mut out = s.serialize_seq(Some(v.len()))?;
    for (k, x) in v {
        out.serialize_element(&(k, x.to_string()))?;
    }
    out.end()
}

pub fn bounds<S: Serializer>(m: &BTreeMap<usize, (BigInt, BigInt)>, s: S) -> Result<S::Ok, S::Error> {
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, (lo, hi)) in m {
        out.serialize_entry(k, &(lo.to_string(), hi.to_string()))?;
    }
    out.end()
}
